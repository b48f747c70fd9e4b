//! The assembled arithmetic context of a global function field.
//!
//! [`FunctionField`] bundles everything the analytic layers consume: the
//! curve, its places up to a working degree bound, the divisor class group,
//! the class of every enumerated place, point counts, and the table of
//! effective-divisor counts per degree and class that drives non-trivial
//! L-polynomial coefficients.
//!
//! Conventions fixed here once and used everywhere downstream:
//!
//! * a base point `A₁` of degree one is chosen canonically (the place at
//!   infinity for hyperelliptic models, the first finite rational place for
//!   the projective line); every place `x` is recorded by the class of
//!   `x − deg(x)·A₁` in `Pic⁰`;
//! * the default working degree bound is `max(2g − 2, 4)`, enough for every
//!   L-polynomial coefficient plus cross-check headroom.

use crate::character::{character_group, UnramifiedCharacter};
use crate::curve::{enumerate_places, Curve, Place, PlaceSet};
use crate::error::{contract, Result};
use crate::picard::{class_group, degree_one_place, place_class, ClassGroupTable};

/// Analysis options shared by the library entry points and the CLI.
#[derive(Debug, Clone)]
pub struct Options {
    /// Working bound on place degrees; `None` selects `max(2g − 2, 4)`.
    pub max_place_degree: Option<u32>,
    /// Numeric tolerance for functional-equation residuals, temperedness
    /// window membership, and vanishing tests.
    pub tolerance: f64,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_place_degree: None, tolerance: crate::lfun::tolerances::DEFAULT_TOLERANCE }
    }
}

/// A global function field with all cached arithmetic data.
pub struct FunctionField {
    curve: Curve,
    places: PlaceSet,
    table: ClassGroupTable,
    /// `place_classes[i]` is the index in the class-group table of
    /// `[x_i − deg(x_i)·A₁]`.
    place_classes: Vec<u32>,
    /// `counts[d][c]` = number of effective divisors `D` of degree `d` with
    /// `[D − d·A₁] = c`.
    counts: Vec<Vec<u64>>,
    /// `n_points[n-1]` = number of points over the degree-`n` constant
    /// extension, for as many `n` as the model supports.
    n_points: Vec<u64>,
    /// Index into `places` of the canonical degree-one base point.
    a1: usize,
    tolerance: f64,
}

impl FunctionField {
    /// Assembles the full context for a curve.
    pub fn build(curve: Curve, opts: &Options) -> Result<FunctionField> {
        let genus = curve.genus();
        let d_max = opts.max_place_degree.unwrap_or_else(|| (2 * genus).saturating_sub(2).max(4));
        if (d_max as isize) < 2 * genus as isize - 2 {
            return Err(contract(
                "function_field",
                "max place degree must be at least 2g-2 to determine all L-polynomials",
            ));
        }
        let places = enumerate_places(&curve, d_max)?;
        let table = class_group(&curve)?;
        let a1 = {
            let a1_place = degree_one_place(&curve, &places.places)?.clone();
            places
                .places
                .iter()
                .position(|p| *p == a1_place)
                .expect("canonical degree-one place is enumerated")
        };

        let mut place_classes = Vec::with_capacity(places.places.len());
        for p in &places.places {
            place_classes.push(place_class(&curve, &table, p)?);
        }

        let counts = divisor_class_counts(&table, &places.places, &place_classes, d_max);

        let mut n_points = Vec::new();
        let mut n = 1;
        while let Ok(c) = curve.count_points(n) {
            n_points.push(c);
            n += 1;
            if n > d_max.max(2 * genus + 2) {
                break;
            }
        }
        if (n_points.len() as u32) < genus.max(1) {
            return Err(contract(
                "function_field",
                "not enough point counts available for the zeta numerator",
            ));
        }

        Ok(FunctionField {
            curve,
            places,
            table,
            place_classes,
            counts,
            n_points,
            a1,
            tolerance: opts.tolerance,
        })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn q(&self) -> u64 {
        self.curve.base().q()
    }

    pub fn ln_q(&self) -> f64 {
        (self.q() as f64).ln()
    }

    pub fn genus(&self) -> u32 {
        self.curve.genus()
    }

    /// Class number `h = #Pic⁰`.
    pub fn h(&self) -> u64 {
        self.table.h()
    }

    pub fn class_table(&self) -> &ClassGroupTable {
        &self.table
    }

    pub fn places(&self) -> &[Place] {
        &self.places.places
    }

    pub fn d_max(&self) -> u32 {
        self.places.d_max
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Index (into `places()`) and place of the canonical base point `A₁`.
    pub fn a1_index(&self) -> usize {
        self.a1
    }

    pub fn a1_place(&self) -> &Place {
        &self.places.places[self.a1]
    }

    /// Class of `[x − deg(x)·A₁]` for the `i`-th enumerated place.
    pub fn place_class_index(&self, i: usize) -> u32 {
        self.place_classes[i]
    }

    pub fn place_classes(&self) -> &[u32] {
        &self.place_classes
    }

    /// Effective-divisor class counts relative to the canonical `A₁`.
    pub fn divisor_counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    /// Point counts `N_n` for `n = 1, 2, …` as far as the model supports.
    pub fn point_counts(&self) -> &[u64] {
        &self.n_points
    }

    /// The full unramified character group (`2h` elements, trivial first).
    pub fn characters(&self) -> Vec<UnramifiedCharacter> {
        character_group(&self.table)
    }

    /// Effective-divisor class counts recomputed relative to an alternative
    /// degree-one base point, for base-point-independence checks.
    pub fn divisor_counts_for_base(&self, alt_a1: usize) -> Result<Vec<Vec<u64>>> {
        let alt = &self.places.places[alt_a1];
        if alt.degree != 1 {
            return Err(contract("function_field", "base point must have degree one"));
        }
        // [x − d·A₁'] = [x − d·A₁] − d·[A₁' − A₁].
        let shift = self.place_classes[alt_a1];
        let shifted: Vec<u32> = self
            .places
            .places
            .iter()
            .zip(&self.place_classes)
            .map(|(p, &c)| self.table.add(c, self.table.scalar(shift, -(p.degree as i64))))
            .collect();
        Ok(divisor_class_counts(&self.table, &self.places.places, &shifted, self.places.d_max))
    }
}

/// Unbounded-knapsack count of effective divisors by degree and class:
/// `counts[d][c]` = #{effective D : deg D = d, [D − d·A₁] = c}.
fn divisor_class_counts(
    table: &ClassGroupTable,
    places: &[Place],
    place_classes: &[u32],
    d_max: u32,
) -> Vec<Vec<u64>> {
    let h = table.h() as usize;
    let mut counts = vec![vec![0u64; h]; d_max as usize + 1];
    counts[0][table.identity() as usize] = 1;
    for (p, &pc) in places.iter().zip(place_classes) {
        let deg = p.degree as usize;
        // Ascending degree makes each place usable with unbounded multiplicity.
        let neg_pc = table.neg(pc);
        for d in deg..=d_max as usize {
            for c in 0..h {
                let prev = counts[d - deg][table.add(c as u32, neg_pc) as usize];
                counts[d][c] += prev;
            }
        }
    }
    counts
}
