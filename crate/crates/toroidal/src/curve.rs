//! Curve models over `F_q`, point counting, and places.
//!
//! Two models are supported: the projective line, and imaginary hyperelliptic
//! curves `y² + h(x)·y = f(x)` with `f` monic of odd degree `2g+1`, `deg h ≤ g`,
//! nonsingular, with a single rational place at infinity. Places of degree `d`
//! are Frobenius orbits of size exactly `d` of points over `F_{q^d}`; each
//! finite place is stored with its canonical (numerically least) orbit
//! representative and with enough fiber data — minimal polynomial of the
//! `x`-coordinate and, when the residue field is generated by the point, the
//! interpolated `y`-polynomial — for divisor-class arithmetic downstream.

use crate::error::{contract, guard, invariant, Result};
use crate::field::{FiniteField, FqElem, MAX_Q};
use crate::poly::FqPoly;
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub enum CurveKind {
    /// The projective line over `F_q` (genus 0).
    Rational,
    /// `y² + h(x)·y = f(x)`, imaginary model.
    Hyperelliptic { f: FqPoly, h: FqPoly },
}

#[derive(Debug, Clone)]
pub struct Curve {
    base: FiniteField,
    kind: CurveKind,
    genus: u32,
}

impl Curve {
    pub fn rational(base: FiniteField) -> Curve {
        Curve { base, kind: CurveKind::Rational, genus: 0 }
    }

    /// Validate and build an imaginary hyperelliptic model.
    pub fn hyperelliptic(base: FiniteField, f: FqPoly, h: FqPoly) -> Result<Curve> {
        const OP: &str = "Curve::hyperelliptic";
        if !f.is_monic() {
            return Err(contract(OP, "f must be monic"));
        }
        let df = f.deg();
        if df < 3 || df % 2 == 0 {
            return Err(contract(OP, format!("deg f = {df}; an odd degree ≥ 3 is required")));
        }
        let genus = ((df - 1) / 2) as u32;
        if h.deg() > genus as isize {
            return Err(contract(OP, format!("deg h = {} exceeds the genus {genus}", h.deg())));
        }
        if base.p() == 2 && h.is_zero() {
            return Err(contract(OP, "h = 0 is inseparable in characteristic 2"));
        }
        let curve = Curve { base, kind: CurveKind::Hyperelliptic { f, h }, genus };
        curve.check_nonsingular()?;
        Ok(curve)
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.kind, CurveKind::Rational)
    }

    /// Human-readable defining equation.
    pub fn equation(&self) -> String {
        match &self.kind {
            CurveKind::Rational => "P^1".to_string(),
            CurveKind::Hyperelliptic { f, h } => {
                if h.is_zero() {
                    format!("y^2 = {}", f.render(&self.base))
                } else {
                    format!("y^2 + ({})y = {}", h.render(&self.base), f.render(&self.base))
                }
            }
        }
    }

    /// Affine singular-point scan over every constant-field extension that
    /// could carry one (degrees up to `2g+1`), within the desk-scale guard.
    fn check_nonsingular(&self) -> Result<()> {
        const OP: &str = "Curve::hyperelliptic";
        let CurveKind::Hyperelliptic { f, h } = &self.kind else { return Ok(()) };
        let max_m = (2 * self.genus + 1) as u64;
        for m in 1..=max_m {
            let mut size: u64 = 1;
            for _ in 0..m {
                size = size.saturating_mul(self.base.q());
            }
            if size > MAX_Q {
                return Err(guard(
                    OP,
                    format!("nonsingularity scan needs q^{m} = {size} > 2^20"),
                ));
            }
            let (amb, emb) = self.base.extension(m as u32)?;
            let fe = f.embed(&emb);
            let he = h.embed(&emb);
            let fd = fe.derivative(&amb);
            let hd = he.derivative(&amb);
            for x in amb.elements() {
                let (fx, hx) = (fe.eval(x, &amb), he.eval(x, &amb));
                let (fdx, hdx) = (fd.eval(x, &amb), hd.eval(x, &amb));
                let singular = if amb.p() == 2 {
                    if !hx.is_zero() {
                        false
                    } else {
                        // y² = f(x) has the unique root √f(x).
                        let y = amb.sqrt(fx).expect("char-2 sqrt is total");
                        amb.add(amb.mul(hdx, y), fdx).is_zero()
                    }
                } else {
                    // F_y = 2y + h(x) = 0 pins y; then both F and F_x must vanish.
                    let y = amb.div(amb.neg(hx), amb.constant(2));
                    let fy = amb.sub(amb.add(amb.mul(y, y), amb.mul(hx, y)), fx);
                    let fxv = amb.sub(amb.mul(hdx, y), fdx);
                    fy.is_zero() && fxv.is_zero()
                };
                if singular {
                    return Err(contract(
                        OP,
                        format!(
                            "singular point over extension of degree {m} at x with encoding {}",
                            x.0
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Number of projective points over `F_{q^n}`.
    ///
    /// For the hyperelliptic model this is an affine enumeration plus the one
    /// point at infinity; `n` is capped at `2g+2` and by the field-size guard.
    /// The projective line uses the closed form `q^n + 1`.
    pub fn count_points(&self, n: u32) -> Result<u64> {
        const OP: &str = "Curve::count_points";
        if n == 0 {
            return Err(contract(OP, "n must be positive"));
        }
        let mut qn: u64 = 1;
        for _ in 0..n {
            qn = qn.saturating_mul(self.base.q());
            if qn > MAX_Q {
                return Err(guard(OP, format!("q^{n} exceeds the desk-scale bound 2^20")));
            }
        }
        match &self.kind {
            CurveKind::Rational => Ok(qn + 1),
            CurveKind::Hyperelliptic { f, h } => {
                if n > 2 * self.genus + 2 {
                    return Err(contract(
                        OP,
                        format!("n = {n} exceeds 2g+2 = {}", 2 * self.genus + 2),
                    ));
                }
                let (amb, emb) = self.base.extension(n)?;
                let fe = f.embed(&emb);
                let he = h.embed(&emb);
                let solver = YSolver::new(&amb);
                let mut affine: u64 = 0;
                for x in amb.elements() {
                    affine += solver.count(fe.eval(x, &amb), he.eval(x, &amb), &amb) as u64;
                }
                Ok(affine + 1)
            }
        }
    }
}

/// Per-x solver for `y² + c·y = d` over the ambient field.
///
/// Odd characteristic completes the square and uses the dlog-parity residue
/// test; characteristic 2 precomputes the fibers of the additive map
/// `z ↦ z² + z` once per field so each solve is a table lookup.
struct YSolver {
    /// char-2 only: image of `z ↦ z²+z` mapped to its two preimages.
    artin_schreier: Option<HashMap<u32, [FqElem; 2]>>,
}

impl YSolver {
    fn new(amb: &FiniteField) -> YSolver {
        if amb.p() != 2 {
            return YSolver { artin_schreier: None };
        }
        let mut map: HashMap<u32, [FqElem; 2]> = HashMap::new();
        for z in amb.elements() {
            let w = amb.add(amb.mul(z, z), z);
            let entry = map.entry(w.0).or_insert([z, z]);
            if entry[0] != z {
                entry[1] = z;
            }
        }
        YSolver { artin_schreier: Some(map) }
    }

    /// Number of solutions `y` of `y² + c·y = d`.
    fn count(&self, d: FqElem, c: FqElem, amb: &FiniteField) -> u32 {
        self.solutions(d, c, amb).len() as u32
    }

    /// The explicit solutions `y` of `y² + c·y = d`.
    fn solutions(&self, d: FqElem, c: FqElem, amb: &FiniteField) -> Vec<FqElem> {
        if let Some(map) = &self.artin_schreier {
            // characteristic 2
            if c.is_zero() {
                return vec![amb.sqrt(d).expect("char-2 sqrt is total")];
            }
            let c2 = amb.mul(c, c);
            let w = amb.div(d, c2);
            match map.get(&w.0) {
                None => Vec::new(),
                Some([z0, z1]) => {
                    let mut ys = vec![amb.mul(c, *z0), amb.mul(c, *z1)];
                    ys.sort();
                    ys.dedup();
                    ys
                }
            }
        } else {
            // complete the square: (y + c/2)² = d + c²/4
            let half = amb.inv(amb.constant(2));
            let shift = amb.mul(c, half);
            let rhs = amb.add(d, amb.mul(shift, shift));
            match amb.sqrt(rhs) {
                None => Vec::new(),
                Some(r) => {
                    let mut ys = vec![amb.sub(r, shift), amb.sub(amb.neg(r), shift)];
                    ys.sort();
                    ys.dedup();
                    ys
                }
            }
        }
    }
}

/// A closed point of the curve, i.e. a Frobenius orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Place {
    pub degree: u32,
    pub rep: PlaceRep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaceRep {
    /// The rational place at infinity (both models have exactly one).
    Infinite,
    /// Finite place of `P^1`: `u` is the monic irreducible minimal polynomial
    /// of the canonical representative `x` (encoding in `F_{q^d}`).
    RationalAffine { x: FqElem, u: FqPoly },
    /// Hyperelliptic place whose residue field is generated by the orbit
    /// representative `(x, y)`: `u = minpoly(x)` has degree `d` and `v` is the
    /// interpolation of `y` along the orbit (`v² + hv ≡ f mod u`).
    Split { x: FqElem, y: FqElem, u: FqPoly, v: FqPoly },
    /// Hyperelliptic place inert over the `x`-line: the `x`-coordinate
    /// generates only `F_{q^{d/2}}` and the fiber over `u = minpoly(x)`
    /// (degree `d/2`) is a single place of degree `d`.
    Inert { x: FqElem, y: FqElem, u: FqPoly },
}

impl Place {
    /// Deterministic sort key: degree, infinite place first, then the least
    /// coordinate tuple.
    pub fn sort_key(&self) -> (u32, u8, u32, u32) {
        match &self.rep {
            PlaceRep::Infinite => (self.degree, 0, 0, 0),
            PlaceRep::RationalAffine { x, .. } => (self.degree, 1, x.0, 0),
            PlaceRep::Split { x, y, .. } => (self.degree, 1, x.0, y.0),
            PlaceRep::Inert { x, y, .. } => (self.degree, 1, x.0, y.0),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.rep, PlaceRep::Infinite)
    }

    /// Short label such as `inf`, `deg2@x5` or `deg1@(2,1)`.
    pub fn label(&self) -> String {
        match &self.rep {
            PlaceRep::Infinite => "inf".to_string(),
            PlaceRep::RationalAffine { x, .. } => format!("deg{}@x{}", self.degree, x.0),
            PlaceRep::Split { x, y, .. } => format!("deg{}@({},{})", self.degree, x.0, y.0),
            PlaceRep::Inert { x, y, .. } => format!("deg{}i@({},{})", self.degree, x.0, y.0),
        }
    }
}

/// All places up to a degree bound, sorted deterministically.
#[derive(Debug, Clone)]
pub struct PlaceSet {
    pub places: Vec<Place>,
    pub d_max: u32,
}

impl PlaceSet {
    pub fn count_of_degree(&self, d: u32) -> usize {
        self.places.iter().filter(|p| p.degree == d).count()
    }

    pub fn of_degree(&self, d: u32) -> impl Iterator<Item = &Place> {
        self.places.iter().filter(move |p| p.degree == d)
    }
}

/// Enumerate all places of degree at most `d_max`.
///
/// Post-condition (checked): for every `n ≤ d_max` within the point-count
/// caps, `Σ_{d|n} d·a_d = N_n` where `a_d` is the number of places of degree
/// `d` — each point over `F_{q^n}` lies on exactly one orbit of size dividing
/// `n`.
pub fn enumerate_places(curve: &Curve, d_max: u32) -> Result<PlaceSet> {
    const OP: &str = "enumerate_places";
    let g = curve.genus();
    let cap = (2 * g + 2).max(4);
    if d_max == 0 || d_max > cap {
        return Err(contract(OP, format!("d_max = {d_max} outside 1..={cap}")));
    }
    let base = curve.base();
    let mut places: Vec<Place> = Vec::new();
    for d in 1..=d_max {
        let mut qd: u64 = 1;
        for _ in 0..d {
            qd = qd.saturating_mul(base.q());
            if qd > MAX_Q {
                return Err(guard(OP, format!("q^{d} exceeds the desk-scale bound 2^20")));
            }
        }
        let (amb, emb) = base.extension(d)?;
        let qpow = base.q() as i64;
        if d == 1 {
            places.push(Place { degree: 1, rep: PlaceRep::Infinite });
        }
        match curve.kind() {
            CurveKind::Rational => {
                for x in amb.elements() {
                    if let Some(orbit) = canonical_orbit_x(x, d, &amb, qpow) {
                        let u = minpoly(&orbit, &amb, &emb)?;
                        places.push(Place { degree: d, rep: PlaceRep::RationalAffine { x, u } });
                    }
                }
            }
            CurveKind::Hyperelliptic { f, h } => {
                let fe = f.embed(&emb);
                let he = h.embed(&emb);
                let solver = YSolver::new(&amb);
                for x in amb.elements() {
                    for y in solver.solutions(fe.eval(x, &amb), he.eval(x, &amb), &amb) {
                        let Some(e) = canonical_orbit_xy(x, y, d, &amb, qpow) else {
                            continue;
                        };
                        let x_orbit: Vec<FqElem> = orbit_of(x, &amb, qpow);
                        let place = if x_orbit.len() as u32 == d {
                            // Residue field generated by (x, y): interpolate y.
                            let u = minpoly(&x_orbit, &amb, &emb)?;
                            let nodes: Vec<(FqElem, FqElem)> = orbit_pairs(x, y, d, &amb, qpow);
                            let v_amb = FqPoly::interpolate(&nodes, &amb)
                                .ok_or_else(|| invariant(OP, "repeated interpolation node"))?;
                            let v = v_amb
                                .preimage(&emb)
                                .ok_or_else(|| invariant(OP, "interpolant not over the base"))?;
                            // v² + h·v ≡ f (mod u) must hold on the nose.
                            let lhs = v.mul(&v, base).add(&h.mul(&v, base), base);
                            if !lhs.sub(f, base).rem(&u, base).is_zero() {
                                return Err(invariant(OP, "interpolant violates the curve"));
                            }
                            Place { degree: d, rep: PlaceRep::Split { x, y, u, v } }
                        } else if 2 * x_orbit.len() as u32 == d {
                            let u = minpoly(&x_orbit, &amb, &emb)?;
                            Place { degree: d, rep: PlaceRep::Inert { x, y, u } }
                        } else {
                            return Err(invariant(
                                OP,
                                format!("x-orbit of size {e} under a degree-{d} point", e = x_orbit.len()),
                            ));
                        };
                        let _ = e;
                        places.push(place);
                    }
                }
            }
        }
    }
    places.sort_by_key(|p| p.sort_key());
    let set = PlaceSet { places, d_max };
    check_place_counts(curve, &set)?;
    Ok(set)
}

/// Orbit of `x` under `x ↦ x^q` inside the ambient field.
fn orbit_of(x: FqElem, amb: &FiniteField, qpow: i64) -> Vec<FqElem> {
    let mut orbit = vec![x];
    let mut cur = amb.pow(x, qpow);
    while cur != x {
        orbit.push(cur);
        cur = amb.pow(cur, qpow);
    }
    orbit
}

/// `Some(orbit)` iff `x` has orbit size exactly `d` and is its least member.
fn canonical_orbit_x(x: FqElem, d: u32, amb: &FiniteField, qpow: i64) -> Option<Vec<FqElem>> {
    let orbit = orbit_of(x, amb, qpow);
    if orbit.len() as u32 == d && orbit.iter().all(|&z| x <= z) {
        Some(orbit)
    } else {
        None
    }
}

/// Orbit size of `(x, y)` under coordinatewise `q`-power Frobenius when `(x,y)`
/// is the canonical (least, compared as `(x.0, y.0)`) member and the size is
/// exactly `d`; `None` otherwise.
fn canonical_orbit_xy(x: FqElem, y: FqElem, d: u32, amb: &FiniteField, qpow: i64) -> Option<u32> {
    let mut size = 1u32;
    let (mut cx, mut cy) = (amb.pow(x, qpow), amb.pow(y, qpow));
    while (cx, cy) != (x, y) {
        if (cx.0, cy.0) < (x.0, y.0) {
            return None;
        }
        size += 1;
        if size > d {
            return None;
        }
        cx = amb.pow(cx, qpow);
        cy = amb.pow(cy, qpow);
    }
    if size == d {
        Some(size)
    } else {
        None
    }
}

fn orbit_pairs(x: FqElem, y: FqElem, d: u32, amb: &FiniteField, qpow: i64) -> Vec<(FqElem, FqElem)> {
    let mut out = Vec::with_capacity(d as usize);
    let (mut cx, mut cy) = (x, y);
    for _ in 0..d {
        out.push((cx, cy));
        cx = amb.pow(cx, qpow);
        cy = amb.pow(cy, qpow);
    }
    out
}

/// `Π (X - x_i)` over an orbit, pulled back to the base field.
fn minpoly(orbit: &[FqElem], amb: &FiniteField, emb: &crate::field::Embedding) -> Result<FqPoly> {
    let mut prod = FqPoly::one();
    for &z in orbit {
        prod = prod.mul(&FqPoly::new(vec![amb.neg(z), FqElem::ONE]), amb);
    }
    prod.preimage(emb).ok_or_else(|| invariant("enumerate_places", "minpoly not over the base"))
}

/// The orbit–point identity `Σ_{d|n} d·a_d = N_n` for all reachable `n`.
fn check_place_counts(curve: &Curve, set: &PlaceSet) -> Result<()> {
    for n in 1..=set.d_max {
        if !curve.is_rational() && n > 2 * curve.genus() + 2 {
            break;
        }
        let nn = match curve.count_points(n) {
            Ok(v) => v,
            Err(_) => break, // out of guard range; nothing to check
        };
        let mut total: u64 = 0;
        for d in 1..=n {
            if n % d == 0 {
                total += d as u64 * set.count_of_degree(d) as u64;
            }
        }
        if total != nn {
            return Err(invariant(
                "enumerate_places",
                format!("degree-{n} orbit sum {total} != N_{n} = {nn}"),
            ));
        }
    }
    Ok(())
}
