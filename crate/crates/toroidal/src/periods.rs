//! Toroidal structure at the central point.
//!
//! A derivative family of Eisenstein series at an unramified `χ = (ω, T₀)` is
//! toroidal exactly when `L(χ, s + 1/2)` vanishes at `s = 0`, so everything
//! here is bookkeeping around central zeros: per-character vanishing orders
//! and their certificates, the total dimension count `(g − 1)·h + 1`,
//! normalized period values as Leibniz sums of central L-derivatives, the
//! classification of residual forms against split and nonsplit tori, and a
//! search for quadratic twists with nonvanishing central value backed by two
//! independent oracles (point counts and residue symbols).

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::character::{
    character_group, quadratic_characters, Chi2Type, QuasiCharacter, UnramifiedCharacter,
};
use crate::error::{contract, guard, invariant, Error, Result};
use crate::field::{FiniteField, FqElem};
use crate::function_field::FunctionField;
use crate::hecke::{binom, is_tempered};
use crate::lfun::{
    l_derivatives, l_value, numerator_from_counts, t_argument, tolerances, LTable, ZeroPair,
};
use crate::poly::FqPoly;
use crate::roots::{cpoly_eval, qpoly_to_cpoly, roots_with_multiplicity, CPoly, QPoly};

const HALF: Complex64 = Complex64 { re: 0.5, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Vanishing order of `L(χ, s + 1/2)` at `s = 0`: the multiplicity of the
/// central argument among the stored zeros of the `ω`-polynomial, or 0 when
/// the center is not a zero.
pub fn central_zero_order(ff: &FunctionField, lt: &LTable, chi: &QuasiCharacter) -> u32 {
    let poly = lt.poly_of(&chi.finite, ff);
    let t = t_argument(chi, HALF, ff.q());
    for &(z, m) in &poly.zeros {
        if (z - t).norm() <= tolerances::PAIR_MATCH {
            return m;
        }
    }
    0
}

/// Number of toroidal members of the derivative family at `χ`.
///
/// This is the vanishing order of `L(χ, s + 1/2)` at `s = 0`, except that a
/// self-dual point (`χ² = 1`) runs through the even-derivative family, so its
/// count is half of the (necessarily even) vanishing order. For odd `q` the
/// count is exact; for even `q` it certifies a lower bound — the dimension
/// report carries that caveat.
pub fn toroidal_order(ff: &FunctionField, lt: &LTable, chi: &QuasiCharacter) -> Result<u32> {
    match chi.chi2_type(ff.class_table(), ff.q(), ff.tolerance()) {
        Chi2Type::NormPlus | Chi2Type::NormMinus => Err(contract(
            "toroidal_order",
            "χ² is a norm power, so χ sits at a residual point; classify it with residue_toroidal",
        )),
        Chi2Type::One => {
            let m = central_zero_order(ff, lt, chi);
            if m % 2 != 0 {
                return Err(Error::TheoremViolation {
                    check: "even_multiplicity",
                    msg: format!("self-dual central zero has odd multiplicity {m}"),
                });
            }
            Ok(m / 2)
        }
        Chi2Type::Generic => Ok(central_zero_order(ff, lt, chi)),
    }
}

/// One certified toroidal family: the zero pair it comes from, the character
/// at the zero, and the number of independent members it contributes.
#[derive(Debug, Clone)]
pub struct ToroidalCertificate {
    /// Index into the table's pair list.
    pub pair_index: usize,
    /// The functional-equation orbit this certificate is built from.
    pub pair: ZeroPair,
    /// `χ = (ω, T₀)` at the zero, with `T₀ = τ·√q` snapped onto `|T₀| = 1`.
    pub chi: QuasiCharacter,
    /// The zero `τ` in the `T = q^{−s}` plane.
    pub tau: Complex64,
    /// Members contributed: the raw multiplicity for a cross pair, half of it
    /// for a self-paired zero.
    pub order: u32,
    /// Always true once constructed: certified against the eigenvalue
    /// windows at the small places.
    pub tempered: bool,
}

/// One certificate per zero pair, each checked against the temperedness
/// window.
pub fn toroidal_certificates(ff: &FunctionField, lt: &LTable) -> Result<Vec<ToroidalCertificate>> {
    let mut out = Vec::with_capacity(lt.pairs().len());
    for (pair_index, pair) in lt.pairs().iter().enumerate() {
        if pair.order == 0 {
            return Err(invariant("toroidal_certificates", "zero pair with order 0"));
        }
        let omega = lt.omegas()[pair.omega].clone();
        let t0 = pair.tau * (ff.q() as f64).sqrt();
        // The zero modulus puts |T₀| within tolerance of 1; snapping it onto
        // the circle keeps the shift test exactly at Re χ = 0.
        let chi = QuasiCharacter::from_t0(omega, t0 / t0.norm())?;
        let report = is_tempered(ff, &chi)?;
        if !report.tempered() {
            return Err(Error::TheoremViolation {
                check: "temperedness",
                msg: format!("central zero at τ = {} fails the eigenvalue window", pair.tau),
            });
        }
        out.push(ToroidalCertificate {
            pair_index,
            pair: pair.clone(),
            chi,
            tau: pair.tau,
            order: pair.order,
            tempered: true,
        });
    }
    Ok(out)
}

/// The dimension count together with its cross-checks.
#[derive(Debug, Clone)]
pub struct DimensionReport {
    /// Sum of zero-pair orders: the zero-induced dimension.
    pub dimension: u64,
    /// `(g − 1)·h + 1`.
    pub predicted: u64,
    pub pair_count: usize,
    /// Genus of the degree-`h` covering field — an independent route to the
    /// same number.
    pub cover_genus: u64,
    /// For even `q` the zero-induced count is certified only as a lower
    /// bound, though it must still match the formula here.
    pub lower_bound_caveat: bool,
}

/// Total dimension of the space of toroidal derivative families: the sum of
/// pair orders, which must equal `(g − 1)·h + 1` and agree with the covering
/// genus and the Hurwitz relation `2G − 2 = h·(2g − 2)`.
pub fn toroidal_dimension(ff: &FunctionField, lt: &LTable) -> Result<DimensionReport> {
    let dimension: u64 = lt.pairs().iter().map(|p| u64::from(p.order)).sum();
    let g = i64::from(ff.genus());
    let h = ff.h() as i64;
    let predicted = (g - 1) * h + 1;
    if predicted < 0 {
        // g = 0 forces h = 1, so a genuine input cannot reach this.
        return Err(invariant("toroidal_dimension", "negative predicted dimension"));
    }
    let predicted = predicted as u64;
    if dimension != predicted {
        return Err(Error::TheoremViolation {
            check: "dimension_formula",
            msg: format!(
                "sum of zero-pair orders is {dimension}, but (g−1)h+1 = {predicted} with g = {g}, h = {h}"
            ),
        });
    }
    let cover_genus = lt.cover().genus;
    if cover_genus != predicted {
        return Err(invariant(
            "toroidal_dimension",
            format!("cover genus {cover_genus} disagrees with the dimension {predicted}"),
        ));
    }
    if 2 * cover_genus as i64 - 2 != h * (2 * g - 2) {
        return Err(invariant(
            "toroidal_dimension",
            format!("cover genus {cover_genus} fails the Hurwitz relation 2G−2 = h(2g−2)"),
        ));
    }
    Ok(DimensionReport {
        dimension,
        predicted,
        pair_count: lt.pairs().len(),
        cover_genus,
        lower_bound_caveat: ff.q() % 2 == 0,
    })
}

/// `Σ_{j+k=n} n!/(j!·k!) · a_j · b_k`.
fn leibniz_sum(n: u32, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let mut acc = ZERO;
    for j in 0..=n {
        acc += binom(u64::from(n), u64::from(j)) * a[j as usize] * b[(n - j) as usize];
    }
    acc
}

/// `n`-th derivative of the normalized split-torus period at the identity:
/// `Σ_{j+k=n} n!/(j!k!) · L^{(j)}(χ, 1/2) · L^{(k)}(χ, 1/2)`.
///
/// The torus factor is identically 1 at the normalized point for every `s`,
/// so no torus-side derivatives enter; `n = 0` is the closed form
/// `L(χ, 1/2)²`.
pub fn split_period(
    ff: &FunctionField,
    lt: &LTable,
    chi: &QuasiCharacter,
    n: u32,
) -> Result<Complex64> {
    check_generic(ff, chi, "split_period")?;
    let derivs = l_derivatives(ff, lt, chi, HALF, n)?;
    Ok(leibniz_sum(n, &derivs, &derivs))
}

/// `n`-th derivative of the normalized period against the nonsplit torus of
/// the unramified quadratic `η`:
/// `Σ_{j+k=n} n!/(j!k!) · L^{(j)}(χ, 1/2) · L^{(k)}(χη, 1/2)`.
pub fn nonsplit_period(
    ff: &FunctionField,
    lt: &LTable,
    chi: &QuasiCharacter,
    eta: &UnramifiedCharacter,
    n: u32,
) -> Result<Complex64> {
    let table = ff.class_table();
    if eta.is_trivial() || !eta.square(table).is_trivial() {
        return Err(contract("nonsplit_period", "η must be a nontrivial quadratic character"));
    }
    let chi_eta = QuasiCharacter { finite: chi.finite.mul(eta, table), t0: chi.t0 };
    let a = l_derivatives(ff, lt, chi, HALF, n)?;
    let b = l_derivatives(ff, lt, &chi_eta, HALF, n)?;
    Ok(leibniz_sum(n, &a, &b))
}

/// Vanishing order at `s = 0` of the product of central L-factors behind a
/// period: `L(χ, s+1/2)²` for the split torus (`eta = None`), or
/// `L(χ, s+1/2)·L(χη, s+1/2)` for a nonsplit one. Period derivatives of
/// orders below this vanish; the one at this order does not.
pub fn period_vanishing_order(
    ff: &FunctionField,
    lt: &LTable,
    chi: &QuasiCharacter,
    eta: Option<&UnramifiedCharacter>,
) -> u32 {
    let m = central_zero_order(ff, lt, chi);
    match eta {
        None => 2 * m,
        Some(eta) => {
            let chi_eta =
                QuasiCharacter { finite: chi.finite.mul(eta, ff.class_table()), t0: chi.t0 };
            m + central_zero_order(ff, lt, &chi_eta)
        }
    }
}

/// `i`-th `s`-derivative at `s = 0` of the torus factor
/// `e(g, χ, s) = χ(det g)·‖det g‖^{s + 1/2}` at a group point whose
/// determinant has degree `det_degree` and degree-zero part in class
/// `det_class` (same convention as places: the class of `det g − deg·A₁`).
///
/// Since `‖det g‖ = q^{−det_degree}`, this is
/// `(ln‖det g‖)^i · χ(det g) · ‖det g‖^{1/2}`; at the identity it
/// degenerates to `1, 0, 0, …`, which is what lets [`split_period`] drop the
/// torus side entirely.
pub fn torus_factor_derivative(
    ff: &FunctionField,
    chi: &QuasiCharacter,
    det_class: u32,
    det_degree: i64,
    i: u32,
) -> Complex64 {
    let table = ff.class_table();
    let w = chi.finite.eval_class(table, det_class).value();
    let sign =
        if chi.finite.delta % 2 == 1 && det_degree.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
    let t0_pow = chi.t0.powi(det_degree as i32);
    let half_norm = (-0.5 * ff.ln_q() * det_degree as f64).exp();
    let ln_norm = -(det_degree as f64) * ff.ln_q();
    ln_norm.powi(i as i32) * w * sign * t0_pow * half_norm
}

/// `n!/(i!·j!·k!)` with `i + j + k = n`.
fn trinomial(n: u32, i: u32, j: u32) -> f64 {
    binom(u64::from(n), u64::from(i)) * binom(u64::from(n - i), u64::from(j))
}

/// Split-torus period derivative at a general group point: the full
/// three-way Leibniz sum including the torus-factor derivatives. With
/// `det_degree = 0` and the identity class it reduces to [`split_period`].
pub fn split_period_at(
    ff: &FunctionField,
    lt: &LTable,
    chi: &QuasiCharacter,
    det_class: u32,
    det_degree: i64,
    n: u32,
) -> Result<Complex64> {
    check_generic(ff, chi, "split_period_at")?;
    let derivs = l_derivatives(ff, lt, chi, HALF, n)?;
    let mut acc = ZERO;
    for i in 0..=n {
        let e_i = torus_factor_derivative(ff, chi, det_class, det_degree, i);
        for j in 0..=(n - i) {
            let k = n - i - j;
            acc += trinomial(n, i, j) * e_i * derivs[j as usize] * derivs[k as usize];
        }
    }
    Ok(acc)
}

fn check_generic(ff: &FunctionField, chi: &QuasiCharacter, op: &'static str) -> Result<()> {
    if chi.chi2_type(ff.class_table(), ff.q(), ff.tolerance()) != Chi2Type::Generic {
        return Err(contract(
            op,
            "χ² must avoid 1 and ‖·‖^{±1}: self-dual points go through the even-derivative \
             family and residual points through residue_toroidal",
        ));
    }
    Ok(())
}

/// Torus selector for residue classification: the split torus, or the
/// nonsplit torus cut out by an unramified quadratic character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusSelector {
    Split,
    Quadratic(UnramifiedCharacter),
}

impl TorusSelector {
    pub fn label(&self) -> String {
        match self {
            TorusSelector::Split => "split".to_string(),
            TorusSelector::Quadratic(eta) => eta.label(),
        }
    }
}

/// Whether the residual form attached to `ω` (with `ω² = 1`, sign twist
/// included) is toroidal for the selected torus.
///
/// Trivial `ω`: toroidal exactly for the split torus. Nontrivial `ω`:
/// toroidal exactly when the torus character differs from `ω` — the split
/// torus carries the trivial character, so it always qualifies there.
pub fn residue_toroidal(
    ff: &FunctionField,
    omega: &UnramifiedCharacter,
    torus: &TorusSelector,
) -> Result<bool> {
    let table = ff.class_table();
    if !omega.square(table).is_trivial() {
        return Err(contract("residue_toroidal", "ω must satisfy ω² = 1"));
    }
    if let TorusSelector::Quadratic(eta) = torus {
        if eta.is_trivial() || !eta.square(table).is_trivial() {
            return Err(contract(
                "residue_toroidal",
                "η must be a nontrivial quadratic character",
            ));
        }
    }
    if omega.is_trivial() {
        Ok(matches!(torus, TorusSelector::Split))
    } else {
        match torus {
            TorusSelector::Split => Ok(true),
            TorusSelector::Quadratic(eta) => Ok(eta != omega),
        }
    }
}

/// Residue classification of one `ω` over every searched torus.
#[derive(Debug, Clone)]
pub struct ResidueRow {
    pub omega: UnramifiedCharacter,
    /// Verdict for the split torus.
    pub split: bool,
    /// Verdict per unramified quadratic `η`, in group order.
    pub etas: Vec<(UnramifiedCharacter, bool)>,
    /// True when no searched torus falsifies toroidality; the falsifying
    /// quadratic character then has to come from a ramified extension, which
    /// is outside this search space.
    pub requires_ramified: bool,
}

/// The full residual classification: one row per `ω` with `ω² = 1`. No
/// residual form is toroidal for every torus, so each row should contain a
/// `false`; a row without one is flagged rather than silently accepted.
pub fn residue_matrix(ff: &FunctionField) -> Result<Vec<ResidueRow>> {
    let table = ff.class_table();
    let etas = quadratic_characters(table);
    let involutions: Vec<UnramifiedCharacter> = character_group(table)
        .into_iter()
        .filter(|w| w.square(table).is_trivial())
        .collect();
    let mut rows = Vec::with_capacity(involutions.len());
    for omega in involutions {
        let split = residue_toroidal(ff, &omega, &TorusSelector::Split)?;
        let mut all_true = split;
        let mut eta_cols = Vec::with_capacity(etas.len());
        for eta in &etas {
            let v = residue_toroidal(ff, &omega, &TorusSelector::Quadratic(eta.clone()))?;
            all_true = all_true && v;
            eta_cols.push((eta.clone(), v));
        }
        rows.push(ResidueRow { omega, split, etas: eta_cols, requires_ramified: all_true });
    }
    Ok(rows)
}

/// A candidate in the quadratic-twist search.
#[derive(Debug, Clone)]
pub enum TwistCandidate {
    /// An unramified quadratic character `(ω₂, δ)`.
    Unramified(UnramifiedCharacter),
    /// A rational-base quadratic cover `y² = d(x)`.
    RationalPoly(FqPoly),
}

/// The first candidate whose twisted central value stays away from zero.
#[derive(Debug, Clone)]
pub struct TwistWitness {
    pub candidate: TwistCandidate,
    /// `L(χ·χ_E, 1/2)`, with `|value|` above tolerance.
    pub value: Complex64,
}

/// Outcome of the twist search, with the full trace of candidates tried.
#[derive(Debug, Clone)]
pub struct TwistSearch {
    pub witness: Option<TwistWitness>,
    /// `(label, |L|)` for every candidate evaluated, in canonical order, up
    /// to and including the witness.
    pub searched: Vec<(String, f64)>,
    /// Odd `q`: some quadratic extension is guaranteed to work, though it may
    /// lie outside the searched subspace.
    pub guaranteed: bool,
    /// Set when no witness was found: why this does not refute non-vanishing.
    pub note: Option<String>,
}

/// Search for a quadratic twist with `|L(χ·χ_E, 1/2)|` above tolerance, at a
/// base point `χ = (ω, T₀)` on the critical line (`|T₀| = 1`).
///
/// Canonical candidate order: geometric unramified quadratic characters
/// (`δ = 0`) first, then — with `include_sign_twists` — the sign-twisted
/// ones, then, on an odd-`q` rational base, monic squarefree `d(x)` by
/// degree and coefficient encoding. The trivial twist is never a candidate.
/// Every rational candidate's polynomial is cross-checked against the
/// residue-symbol Euler product before its value is used.
pub fn twist_witness(
    ff: &FunctionField,
    lt: &LTable,
    chi: &QuasiCharacter,
    include_sign_twists: bool,
    max_poly_degree: u32,
) -> Result<TwistSearch> {
    let q = ff.q();
    let tol = ff.tolerance();
    if (chi.t0.norm() - 1.0).abs() > 1e-6 {
        return Err(contract(
            "twist_witness",
            "the base point must lie on the critical line (|T₀| = 1)",
        ));
    }
    if max_poly_degree > 5 {
        return Err(contract("twist_witness", "rational twist degrees above 5 are unsupported"));
    }
    let table = ff.class_table();
    let mut searched: Vec<(String, f64)> = Vec::new();
    let mut witness: Option<TwistWitness> = None;

    // Stage 1: unramified quadratic characters, δ = 0 block first.
    let quad: Vec<UnramifiedCharacter> = quadratic_characters(table)
        .into_iter()
        .filter(|c| include_sign_twists || c.delta % 2 == 0)
        .collect();
    let unramified_pool = quad.len();
    for eta in &quad {
        let twisted = QuasiCharacter { finite: chi.finite.mul(eta, table), t0: chi.t0 };
        let value = l_value(ff, lt, &twisted, HALF)?;
        searched.push((format!("unramified {}", eta.label()), value.norm()));
        if value.norm() > tol {
            witness =
                Some(TwistWitness { candidate: TwistCandidate::Unramified(eta.clone()), value });
            break;
        }
    }

    // Stage 2: rational-base quadratic covers y² = d(x), odd q only.
    let mut rational_pool = 0usize;
    if witness.is_none() && ff.curve().is_rational() && q % 2 == 1 {
        let base = ff.curve().base();
        let t = t_argument(chi, HALF, q);
        'outer: for deg in 1..=max_poly_degree {
            for d in monic_polys(base, deg)? {
                if !d.is_squarefree(base) {
                    continue;
                }
                rational_pool += 1;
                let twist = rational_twist_l(base, &d)?;
                verify_twist_polynomial(base, &d, &twist)?;
                let value = cpoly_eval(&twist.coeffs, t);
                searched.push((format!("d = {}", d.render(base)), value.norm()));
                if value.norm() > tol {
                    witness =
                        Some(TwistWitness { candidate: TwistCandidate::RationalPoly(d), value });
                    break 'outer;
                }
            }
        }
    }

    let note = if witness.is_none() {
        Some(format!(
            "no witness among {unramified_pool} unramified quadratic characters and \
             {rational_pool} squarefree monic d of degree ≤ {max_poly_degree}; the guarantee \
             ranges over all separable quadratic extensions, including ramified ones outside \
             this search space, so an exhausted search here is not a refutation"
        ))
    } else {
        None
    };
    Ok(TwistSearch { witness, searched, guaranteed: q % 2 == 1, note })
}

/// The L-polynomial of a rational-base quadratic twist, with exact
/// coefficients and certified zeros.
#[derive(Debug, Clone)]
pub struct TwistPolynomial {
    /// Exact integer coefficients, ascending in `T`.
    pub exact: QPoly,
    /// The same coefficients as complex numbers, for evaluation.
    pub coeffs: CPoly,
    /// Roots with multiplicity, all on `|T| = q^{−1/2}`.
    pub zeros: Vec<(Complex64, u32)>,
    /// Genus of the covering curve `y² = d(x)`: `⌊(deg d − 1)/2⌋`.
    pub genus: u32,
}

/// L-polynomial of the quadratic character of `F_q(x)(√d)` over the rational
/// field, as the zeta numerator of `y² = d(x)` from point counts over the
/// first `g` constant-field extensions. The identification
/// `ζ_E = ζ_F · L(χ_d, ·)` makes this the complete twisted L-function,
/// ramified conductor included.
pub fn rational_twist_l(base: &FiniteField, d: &FqPoly) -> Result<TwistPolynomial> {
    let q = base.q();
    if q % 2 == 0 {
        return Err(contract("rational_twist_l", "the base characteristic must be odd"));
    }
    let deg = d.deg();
    if !(1..=5).contains(&deg) {
        return Err(contract("rational_twist_l", "need 1 ≤ deg d ≤ 5"));
    }
    if !d.is_squarefree(base) {
        return Err(contract(
            "rational_twist_l",
            "d must be squarefree: the cover y² = d(x) is singular otherwise",
        ));
    }
    let genus = (deg as u32 - 1) / 2;
    let exact: QPoly = if genus == 0 {
        vec![BigRational::one()]
    } else {
        let counts = twist_point_counts(base, d, genus)?;
        numerator_from_counts(q, genus as usize, &counts)?
    };
    let coeffs = qpoly_to_cpoly(&exact);
    let zeros = roots_with_multiplicity(Some(&exact), &coeffs, tolerances::ZERO_CLUSTER_RADIUS)?;
    let target = (q as f64).powf(-0.5);
    for &(z, _) in &zeros {
        if (z.norm() - target).abs() >= tolerances::DEFAULT_TOLERANCE {
            return Err(Error::TheoremViolation {
                check: "riemann_hypothesis",
                msg: format!("twist zero at {z} is off the circle |T| = q^(-1/2)"),
            });
        }
    }
    Ok(TwistPolynomial { exact, coeffs, zeros, genus })
}

/// Point counts `N_1..N_g` of the smooth model of `y² = d(x)`.
fn twist_point_counts(base: &FiniteField, d: &FqPoly, genus: u32) -> Result<Vec<u64>> {
    let deg = d.deg() as u32;
    let mut counts = Vec::with_capacity(genus as usize);
    for n in 1..=genus {
        let (ext, emb) = base.extension(n)?;
        let de = d.embed(&emb);
        let mut total: u64 = 0;
        for x in ext.elements() {
            let v = de.eval(x, &ext);
            total += if v.is_zero() {
                1
            } else if ext.is_square(v) {
                2
            } else {
                0
            };
        }
        total += if deg % 2 == 1 {
            // Odd degree: one ramified point at infinity.
            1
        } else if ext.is_square(emb.apply(d.leading())) {
            // Even degree: two points at infinity, rational exactly when the
            // leading coefficient is a square in the extension.
            2
        } else {
            0
        };
        counts.push(total);
    }
    Ok(counts)
}

/// Cross-check a twist polynomial against the residue-symbol Euler product
/// through its full degree. The two routes never share code: one counts
/// points on the cover, the other multiplies local factors `(d | π)`.
pub fn verify_twist_polynomial(
    base: &FiniteField,
    d: &FqPoly,
    twist: &TwistPolynomial,
) -> Result<()> {
    let depth = (2 * twist.genus).max(2);
    let b = rational_twist_euler(base, d, depth)?;
    for (j, bj) in b.iter().enumerate() {
        let pj = twist.coeffs.get(j).copied().unwrap_or(ZERO);
        if (bj - pj).norm() > 1e-9 {
            return Err(invariant(
                "rational_twist_l",
                format!(
                    "point-count and residue-symbol routes disagree at degree {j} for d = {}",
                    d.render(base)
                ),
            ));
        }
    }
    Ok(())
}

/// The independent oracle for rational twists: series coefficients
/// `b₀..b_{d_max}` of the Euler product of the residue-symbol character
/// `(d | ·)` over monic irreducibles, including the infinite-place factor
/// (absent for odd `deg d`, split or inert for even `deg d` by whether the
/// leading coefficient is a square).
pub fn rational_twist_euler(base: &FiniteField, d: &FqPoly, d_max: u32) -> Result<Vec<Complex64>> {
    if base.q() % 2 == 0 {
        return Err(contract("rational_twist_euler", "odd characteristic only"));
    }
    if d.deg() < 1 {
        return Err(contract("rational_twist_euler", "need deg d ≥ 1"));
    }
    let mut b = vec![ZERO; d_max as usize + 1];
    b[0] = Complex64::new(1.0, 0.0);
    for pi in irreducibles_up_to(base, d_max)? {
        let e = pi.deg() as usize;
        let c = residue_symbol(base, d, &pi)?;
        if c == 0 {
            continue;
        }
        // Ascending in-place update folds in the whole geometric series of
        // the factor (1 − c·T^e)⁻¹.
        for j in e..b.len() {
            let add = c as f64 * b[j - e];
            b[j] += add;
        }
    }
    if d.deg() % 2 == 0 {
        let c_inf = if base.is_square(d.leading()) { 1.0 } else { -1.0 };
        for j in 1..b.len() {
            let add = c_inf * b[j - 1];
            b[j] += add;
        }
    }
    Ok(b)
}

/// The quadratic residue symbol `(d | π) ∈ {−1, 0, +1}` for a monic
/// irreducible `π`: the value of `d^{(q^{deg π} − 1)/2}` in the residue field.
fn residue_symbol(base: &FiniteField, d: &FqPoly, pi: &FqPoly) -> Result<i32> {
    let r = d.rem(pi, base);
    if r.is_zero() {
        return Ok(0);
    }
    let e = (base.q().pow(pi.deg() as u32) - 1) / 2;
    let s = r.powmod(e, pi, base);
    if s == FqPoly::one() {
        Ok(1)
    } else if s == FqPoly::constant(base.constant(-1)) {
        Ok(-1)
    } else {
        Err(invariant("residue_symbol", "residue power is not ±1"))
    }
}

/// All monic irreducibles of degree ≤ `d_max`, ascending by degree, by trial
/// division against the smaller ones.
fn irreducibles_up_to(base: &FiniteField, d_max: u32) -> Result<Vec<FqPoly>> {
    let mut irr: Vec<FqPoly> = Vec::new();
    for deg in 1..=d_max {
        for m in monic_polys(base, deg)? {
            let composite = irr
                .iter()
                .take_while(|p| (p.deg() as u32) * 2 <= deg)
                .any(|p| m.rem(p, base).is_zero());
            if !composite {
                irr.push(m);
            }
        }
    }
    Ok(irr)
}

/// All monic polynomials of the given degree, in canonical order (constant
/// coefficient fastest over the field's element encoding).
fn monic_polys(base: &FiniteField, deg: u32) -> Result<Vec<FqPoly>> {
    let q = base.q();
    let count = q
        .checked_pow(deg)
        .filter(|&c| c <= 1 << 20)
        .ok_or_else(|| {
            guard(
                "monic_polys",
                format!("enumerating {q}^{deg} monic polynomials exceeds the desk-scale bound"),
            )
        })?;
    let elems: Vec<FqElem> = base.elements().collect();
    if deg == 0 {
        return Ok(vec![FqPoly::one()]);
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut idx = vec![0usize; deg as usize];
    loop {
        let mut coeffs: Vec<FqElem> = idx.iter().map(|&i| elems[i]).collect();
        coeffs.push(FqElem::ONE);
        out.push(FqPoly::new(coeffs));
        let mut j = 0;
        while j < idx.len() {
            idx[j] += 1;
            if idx[j] < elems.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == idx.len() {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::field::FiniteField;
    use crate::function_field::Options;
    use crate::poly::FqPoly;

    fn build(curve: Curve) -> (FunctionField, LTable) {
        let ff = FunctionField::build(curve, &Options::default()).unwrap();
        let lt = LTable::build(&ff).unwrap();
        (ff, lt)
    }

    fn rational_f2() -> Curve {
        Curve::rational(FiniteField::new(2, 1).unwrap())
    }

    fn rational_f3() -> Curve {
        Curve::rational(FiniteField::new(3, 1).unwrap())
    }

    fn elliptic_f2() -> Curve {
        let k = FiniteField::new(2, 1).unwrap();
        let f = FqPoly::from_ints(&k, &[0, 0, 0, 1]);
        Curve::hyperelliptic(k, f, FqPoly::one()).unwrap()
    }

    fn elliptic_f4() -> Curve {
        let k = FiniteField::new(2, 2).unwrap();
        let f = FqPoly::from_ints(&k, &[0, 0, 0, 1]);
        Curve::hyperelliptic(k, f, FqPoly::one()).unwrap()
    }

    fn elliptic_f3() -> Curve {
        let k = FiniteField::new(3, 1).unwrap();
        let f = FqPoly::from_ints(&k, &[0, -1, 0, 1]);
        Curve::hyperelliptic(k, f, FqPoly::zero()).unwrap()
    }

    fn genus2_f3() -> Curve {
        let k = FiniteField::new(3, 1).unwrap();
        let f = FqPoly::from_ints(&k, &[1, 0, 0, 0, 0, 1]);
        Curve::hyperelliptic(k, f, FqPoly::zero()).unwrap()
    }

    fn trivial_chi(ff: &FunctionField, t0: Complex64) -> QuasiCharacter {
        QuasiCharacter { finite: UnramifiedCharacter::trivial(ff.class_table()), t0 }
    }

    /// Central finite differences of a complex-valued function of a real
    /// shift: order-pinned stencils used as the independent oracle for the
    /// period Leibniz sums.
    fn finite_difference(f: &dyn Fn(f64) -> Complex64, n: u32) -> Complex64 {
        match n {
            1 => {
                let d = 1e-5;
                (f(d) - f(-d)) / (2.0 * d)
            }
            2 => {
                let d = 1e-2;
                (-f(-2.0 * d) + 16.0 * f(-d) - 30.0 * f(0.0) + 16.0 * f(d) - f(2.0 * d))
                    / (12.0 * d * d)
            }
            3 => {
                let d = 4e-3;
                (f(-3.0 * d) / 8.0 - f(-2.0 * d) + 13.0 * f(-d) / 8.0 - 13.0 * f(d) / 8.0
                    + f(2.0 * d)
                    - f(3.0 * d) / 8.0)
                    / (d * d * d)
            }
            _ => unreachable!(),
        }
    }

    fn rel_close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-12)
    }

    #[test]
    fn rational_bases_have_no_toroidal_mass() {
        for (curve, even) in [(rational_f2(), true), (rational_f3(), false)] {
            let (ff, lt) = build(curve);
            let report = toroidal_dimension(&ff, &lt).unwrap();
            assert_eq!(report.dimension, 0);
            assert_eq!(report.predicted, 0);
            assert_eq!(report.pair_count, 0);
            assert_eq!(report.cover_genus, 0);
            assert_eq!(report.lower_bound_caveat, even);
            assert!(toroidal_certificates(&ff, &lt).unwrap().is_empty());
            let chi = trivial_chi(&ff, Complex64::new(0.0, 1.0));
            assert_eq!(toroidal_order(&ff, &lt, &chi).unwrap(), 0);
        }
    }

    #[test]
    fn elliptic_f2_has_one_simple_family() {
        let (ff, lt) = build(elliptic_f2());
        let report = toroidal_dimension(&ff, &lt).unwrap();
        assert_eq!(report.dimension, 1);
        assert_eq!(report.predicted, 1);
        assert!(report.lower_bound_caveat);
        let certs = toroidal_certificates(&ff, &lt).unwrap();
        assert_eq!(certs.len(), 1);
        let c = &certs[0];
        assert_eq!(c.order, 1);
        assert!(!c.pair.self_paired);
        assert!(c.tempered);
        assert_eq!(toroidal_order(&ff, &lt, &c.chi).unwrap(), c.order);
        // The zero at T₀ = i (τ = i/√2) is the certified point.
        let chi = trivial_chi(&ff, Complex64::new(0.0, 1.0));
        assert_eq!(toroidal_order(&ff, &lt, &chi).unwrap(), 1);
        assert_eq!(
            chi.chi2_type(ff.class_table(), ff.q(), ff.tolerance()),
            Chi2Type::Generic
        );
    }

    #[test]
    fn elliptic_f4_self_dual_family_counts_half() {
        let (ff, lt) = build(elliptic_f4());
        let report = toroidal_dimension(&ff, &lt).unwrap();
        assert_eq!(report.dimension, 1);
        let certs = toroidal_certificates(&ff, &lt).unwrap();
        assert_eq!(certs.len(), 1);
        assert!(certs[0].pair.self_paired);
        assert_eq!(certs[0].pair.raw_multiplicity, 2);
        assert_eq!(certs[0].order, 1);
        // Directly at the self-dual point: the (1 + 2T)² double zero counts
        // once through the even-derivative family.
        let chi = trivial_chi(&ff, Complex64::new(-1.0, 0.0));
        assert_eq!(
            chi.chi2_type(ff.class_table(), ff.q(), ff.tolerance()),
            Chi2Type::One
        );
        assert_eq!(central_zero_order(&ff, &lt, &chi), 2);
        assert_eq!(toroidal_order(&ff, &lt, &chi).unwrap(), 1);
    }

    #[test]
    fn genus2_dimension_is_h_plus_one() {
        let (ff, lt) = build(genus2_f3());
        assert_eq!(ff.h(), 10);
        let report = toroidal_dimension(&ff, &lt).unwrap();
        assert_eq!(report.dimension, 11);
        assert_eq!(report.cover_genus, 11);
        assert!(!report.lower_bound_caveat);
        let certs = toroidal_certificates(&ff, &lt).unwrap();
        assert_eq!(certs.iter().map(|c| u64::from(c.order)).sum::<u64>(), 11);
        assert!(certs.iter().all(|c| c.tempered && c.order >= 1));
    }

    #[test]
    fn split_period_matches_finite_differences() {
        let (ff, lt) = build(elliptic_f2());
        let chi = trivial_chi(&ff, Complex64::from_polar(2f64.powf(-0.13), 0.41));
        assert_eq!(
            chi.chi2_type(ff.class_table(), ff.q(), ff.tolerance()),
            Chi2Type::Generic
        );
        let closed = |s: f64| {
            let v = l_value(&ff, &lt, &chi, HALF + Complex64::new(s, 0.0)).unwrap();
            v * v
        };
        let p0 = split_period(&ff, &lt, &chi, 0).unwrap();
        assert!(rel_close(p0, closed(0.0), 1e-12));
        for n in 1..=3u32 {
            let pn = split_period(&ff, &lt, &chi, n).unwrap();
            let fd = finite_difference(&closed, n);
            assert!(
                rel_close(pn, fd, 1e-6),
                "order {n}: leibniz {pn} vs finite difference {fd}"
            );
        }
    }

    #[test]
    fn split_period_vanishing_ladder_at_a_simple_zero() {
        let (ff, lt) = build(elliptic_f2());
        let chi = trivial_chi(&ff, Complex64::new(0.0, 1.0));
        assert_eq!(period_vanishing_order(&ff, &lt, &chi, None), 2);
        assert!(split_period(&ff, &lt, &chi, 0).unwrap().norm() < 1e-9);
        assert!(split_period(&ff, &lt, &chi, 1).unwrap().norm() < 1e-9);
        let p2 = split_period(&ff, &lt, &chi, 2).unwrap();
        assert!(p2.norm() > 1e-9);
        let derivs = l_derivatives(&ff, &lt, &chi, HALF, 2).unwrap();
        assert!(rel_close(p2, 2.0 * derivs[1] * derivs[1], 1e-9));
    }

    #[test]
    fn nonsplit_period_is_the_sign_twisted_product() {
        let (ff, lt) = build(elliptic_f2());
        let table = ff.class_table();
        let sgn = UnramifiedCharacter::sign(table);
        // Generic point: the η = sgn period factors as L(χ)·L(χ·sgn), and the
        // second factor is the T ↦ −T evaluation of the same series.
        let chi = trivial_chi(&ff, Complex64::from_polar(1.0, 0.73));
        let v = nonsplit_period(&ff, &lt, &chi, &sgn, 0).unwrap();
        let first = l_value(&ff, &lt, &chi, HALF).unwrap();
        let negated = QuasiCharacter { finite: chi.finite.clone(), t0: -chi.t0 };
        let second = l_value(&ff, &lt, &negated, HALF).unwrap();
        assert!(rel_close(v, first * second, 1e-10));
        assert!(v.norm() > 1e-9);
        // Toroidal point: the first factor vanishes, hence so does the period.
        let toroidal = trivial_chi(&ff, Complex64::new(0.0, 1.0));
        let w = nonsplit_period(&ff, &lt, &toroidal, &sgn, 0).unwrap();
        assert!(w.norm() < 1e-9);
        assert_eq!(period_vanishing_order(&ff, &lt, &toroidal, Some(&sgn)), 2);
        // Guards: η must be a nontrivial involution.
        let trivial = UnramifiedCharacter::trivial(table);
        assert!(nonsplit_period(&ff, &lt, &chi, &trivial, 0).is_err());
        let order3 = UnramifiedCharacter { m: vec![1], delta: 0 };
        assert!(nonsplit_period(&ff, &lt, &chi, &order3, 0).is_err());
    }

    #[test]
    fn general_point_period_reduces_and_differentiates() {
        let (ff, lt) = build(elliptic_f2());
        let chi = trivial_chi(&ff, Complex64::from_polar(2f64.powf(-0.21), 1.1));
        let identity = ff.class_table().identity();
        for n in 0..=3u32 {
            let at_identity = split_period_at(&ff, &lt, &chi, identity, 0, n).unwrap();
            let plain = split_period(&ff, &lt, &chi, n).unwrap();
            assert!(rel_close(at_identity, plain, 1e-12), "order {n}");
        }
        // A point with ‖det g‖ = q^{−1}: the torus factor now contributes
        // ln-powers; check order 2 against a finite difference of the full
        // closed form e(s)·L(s + 1/2)².
        let q = ff.q() as f64;
        let e_factor = |s: f64| chi.t0 * q.powf(-(s + 0.5));
        let closed = |s: f64| {
            let v = l_value(&ff, &lt, &chi, HALF + Complex64::new(s, 0.0)).unwrap();
            e_factor(s) * v * v
        };
        let p2 = split_period_at(&ff, &lt, &chi, identity, 1, 2).unwrap();
        let fd = finite_difference(&closed, 2);
        assert!(rel_close(p2, fd, 1e-6), "general-point order 2: {p2} vs {fd}");
        assert!(rel_close(
            split_period_at(&ff, &lt, &chi, identity, 1, 0).unwrap(),
            torus_factor_derivative(&ff, &chi, identity, 1, 0)
                * split_period(&ff, &lt, &chi, 0).unwrap(),
            1e-12
        ));
    }

    #[test]
    fn torus_factor_carries_the_class_value() {
        let (ff, lt) = build(elliptic_f2());
        let table = ff.class_table();
        // ω of order 3: L ≡ 1, so the general-point period is exactly the
        // torus factor derivative; the divisor class enters through ω.
        let omega = UnramifiedCharacter { m: vec![1], delta: 0 };
        let chi = QuasiCharacter { finite: omega, t0: Complex64::from_polar(1.0, 0.37) };
        let nonzero_class =
            (0..ff.h() as u32).find(|&c| c != table.identity()).unwrap();
        for n in 0..=2u32 {
            let p = split_period_at(&ff, &lt, &chi, nonzero_class, 2, n).unwrap();
            let e_n = torus_factor_derivative(&ff, &chi, nonzero_class, 2, n);
            assert!(rel_close(p, e_n, 1e-12), "order {n}");
        }
        let w = chi.finite.eval_class(table, nonzero_class).value();
        assert!((w - Complex64::new(1.0, 0.0)).norm() > 0.5);
        let e_1 = torus_factor_derivative(&ff, &chi, nonzero_class, 2, 1);
        let ln_norm = -2.0 * ff.ln_q();
        let e_0 = torus_factor_derivative(&ff, &chi, nonzero_class, 2, 0);
        assert!(rel_close(e_1, ln_norm * e_0, 1e-12));
    }

    #[test]
    fn residue_classification_small_field() {
        let (ff, _lt) = build(elliptic_f2());
        let table = ff.class_table();
        let trivial = UnramifiedCharacter::trivial(table);
        let sgn = UnramifiedCharacter::sign(table);
        assert!(residue_toroidal(&ff, &trivial, &TorusSelector::Split).unwrap());
        assert!(!residue_toroidal(&ff, &trivial, &TorusSelector::Quadratic(sgn.clone())).unwrap());
        assert!(residue_toroidal(&ff, &sgn, &TorusSelector::Split).unwrap());
        assert!(!residue_toroidal(&ff, &sgn, &TorusSelector::Quadratic(sgn.clone())).unwrap());
        // Contracts: ω and η must both be involutions (η nontrivial).
        let order3 = UnramifiedCharacter { m: vec![1], delta: 0 };
        assert!(residue_toroidal(&ff, &order3, &TorusSelector::Split).is_err());
        assert!(residue_toroidal(&ff, &trivial, &TorusSelector::Quadratic(order3)).is_err());
        assert!(
            residue_toroidal(&ff, &trivial, &TorusSelector::Quadratic(trivial.clone())).is_err()
        );
        let rows = residue_matrix(&ff).unwrap();
        assert_eq!(rows.len(), 2);
        for row in &rows {
            assert!(!row.requires_ramified);
            assert!(row.split);
            assert!(row.etas.iter().any(|(_, v)| !v));
        }
    }

    #[test]
    fn residue_matrix_genus_two() {
        let (ff, _lt) = build(genus2_f3());
        let rows = residue_matrix(&ff).unwrap();
        // Pic⁰ ≅ Z/10 has one involution, so with the sign twist there are 4
        // self-dual ω and 3 nontrivial quadratic η.
        assert_eq!(rows.len(), 4);
        for row in &rows {
            assert_eq!(row.etas.len(), 3);
            assert!(!row.requires_ramified);
            if row.omega.is_trivial() {
                assert!(row.split);
                assert!(row.etas.iter().all(|(_, v)| !v));
            } else {
                assert!(row.split);
                for (eta, v) in &row.etas {
                    assert_eq!(*v, eta != &row.omega);
                }
            }
        }
    }

    #[test]
    fn rational_twist_polynomials_and_oracle() {
        let k3 = FiniteField::new(3, 1).unwrap();
        let to_ints = |p: &QPoly| -> Vec<i64> {
            p.iter().map(|c| (c.numer() / c.denom()).try_into().unwrap()).collect()
        };
        // d = x³ − x: the elliptic numerator 1 + 3T².
        let d_ell = FqPoly::from_ints(&k3, &[0, -1, 0, 1]);
        let tw = rational_twist_l(&k3, &d_ell).unwrap();
        assert_eq!(to_ints(&tw.exact), vec![1, 0, 3]);
        verify_twist_polynomial(&k3, &d_ell, &tw).unwrap();
        // Deep oracle agreement including the zero tail.
        let b = rational_twist_euler(&k3, &d_ell, 5).unwrap();
        for (j, bj) in b.iter().enumerate() {
            let expect = tw.coeffs.get(j).copied().unwrap_or(ZERO);
            assert!((bj - expect).norm() < 1e-9, "degree {j}");
        }
        // d = x: a rational cover, constant numerator.
        let d_x = FqPoly::from_ints(&k3, &[0, 1]);
        let tw_x = rational_twist_l(&k3, &d_x).unwrap();
        assert_eq!(to_ints(&tw_x.exact), vec![1]);
        assert!(tw_x.zeros.is_empty());
        verify_twist_polynomial(&k3, &d_x, &tw_x).unwrap();
        // d = x⁴ + 1: even degree with split infinity, again 1 + 3T².
        let d_even = FqPoly::from_ints(&k3, &[1, 0, 0, 0, 1]);
        let tw_even = rational_twist_l(&k3, &d_even).unwrap();
        assert_eq!(to_ints(&tw_even.exact), vec![1, 0, 3]);
        verify_twist_polynomial(&k3, &d_even, &tw_even).unwrap();
        // d = x⁵ + 1: the genus-2 numerator 1 + 9T⁴ with all zeros on the
        // critical circle.
        let d_g2 = FqPoly::from_ints(&k3, &[1, 0, 0, 0, 0, 1]);
        let tw_g2 = rational_twist_l(&k3, &d_g2).unwrap();
        assert_eq!(to_ints(&tw_g2.exact), vec![1, 0, 0, 0, 9]);
        assert_eq!(tw_g2.zeros.iter().map(|&(_, m)| m).sum::<u32>(), 4);
        let target = 3f64.powf(-0.5);
        assert!(tw_g2.zeros.iter().all(|(z, _)| (z.norm() - target).abs() < 1e-9));
        verify_twist_polynomial(&k3, &d_g2, &tw_g2).unwrap();
        // Contracts.
        assert!(rational_twist_l(&k3, &FqPoly::from_ints(&k3, &[0, 0, 1])).is_err());
        assert!(rational_twist_l(&k3, &FqPoly::from_ints(&k3, &[1, 0, 0, 0, 0, 0, 1])).is_err());
        let k2 = FiniteField::new(2, 1).unwrap();
        assert!(rational_twist_l(&k2, &FqPoly::from_ints(&k2, &[0, 1])).is_err());
    }

    #[test]
    fn twist_search_on_the_rational_base() {
        let (ff, lt) = build(rational_f3());
        let chi = trivial_chi(&ff, Complex64::new(0.0, 1.0));
        // Without sign twists there are no unramified candidates over a
        // trivial class group, and the first rational cover already works.
        let search = twist_witness(&ff, &lt, &chi, false, 4).unwrap();
        let w = search.witness.as_ref().expect("witness expected");
        match &w.candidate {
            TwistCandidate::RationalPoly(d) => {
                assert_eq!(d, &FqPoly::from_ints(ff.curve().base(), &[0, 1]));
            }
            other => panic!("expected a rational candidate, got {other:?}"),
        }
        assert!(w.value.norm() > 1e-9);
        assert_eq!(search.searched.len(), 1);
        assert!(search.guaranteed);
        assert!(search.note.is_none());
        // With sign twists the unramified stage goes first and wins.
        let with_sign = twist_witness(&ff, &lt, &chi, true, 4).unwrap();
        match &with_sign.witness.as_ref().unwrap().candidate {
            TwistCandidate::Unramified(eta) => assert_eq!(eta.delta, 1),
            other => panic!("expected the sign character, got {other:?}"),
        }
        // The base point must sit on the critical line.
        let off_line = trivial_chi(&ff, Complex64::new(0.0, 0.5));
        assert!(twist_witness(&ff, &lt, &off_line, false, 4).is_err());
    }

    #[test]
    fn cubic_twist_vanishes_centrally_at_i() {
        // At T₀ = i the twist by x³ − x vanishes centrally: 1 + 3(i/√3)² = 0.
        // A candidate like this would be skipped, never reported; here the
        // deg-1 covers come first in canonical order and already witness.
        let k3 = FiniteField::new(3, 1).unwrap();
        let d = FqPoly::from_ints(&k3, &[0, -1, 0, 1]);
        let tw = rational_twist_l(&k3, &d).unwrap();
        let t = Complex64::new(0.0, 1.0) * 3f64.powf(-0.5);
        assert!(cpoly_eval(&tw.coeffs, t).norm() < 1e-12);
        let (ff, lt) = build(rational_f3());
        let chi = trivial_chi(&ff, Complex64::new(0.0, 1.0));
        let search = twist_witness(&ff, &lt, &chi, false, 4).unwrap();
        assert!(search.witness.is_some());
    }

    #[test]
    fn none_found_report_on_a_nonrational_base() {
        let (ff, lt) = build(elliptic_f2());
        // At the toroidal point both unramified quadratic options die: there
        // is no δ = 0 involution over Z/3, and the sign twist lands on the
        // mirror zero of the even polynomial 1 + 2T².
        let chi = trivial_chi(&ff, Complex64::new(0.0, 1.0));
        let search = twist_witness(&ff, &lt, &chi, true, 4).unwrap();
        assert!(search.witness.is_none());
        assert_eq!(search.searched.len(), 1);
        assert!(search.searched[0].1 < 1e-9);
        assert!(!search.guaranteed);
        let note = search.note.as_ref().expect("none-found note expected");
        assert!(note.contains("not a refutation"));
        // Off the zero set the sign twist succeeds immediately.
        let generic = trivial_chi(&ff, Complex64::from_polar(1.0, 0.3));
        let ok = twist_witness(&ff, &lt, &generic, true, 4).unwrap();
        assert!(matches!(
            ok.witness.unwrap().candidate,
            TwistCandidate::Unramified(_)
        ));
    }

    #[test]
    fn toroidal_order_guards_residual_points() {
        let (ff, lt) = build(elliptic_f3());
        let table = ff.class_table();
        let omega = quadratic_characters(table)
            .into_iter()
            .find(|c| c.delta == 0)
            .expect("a δ=0 involution exists over Z/2 × Z/2");
        // χ = ω·‖·‖^{1/2}: a residual point.
        let chi = QuasiCharacter::from_s(omega, Complex64::new(0.5, 0.0), ff.q());
        assert!(matches!(
            toroidal_order(&ff, &lt, &chi),
            Err(Error::Contract { op: "toroidal_order", .. })
        ));
        assert!(matches!(
            split_period(&ff, &lt, &chi, 0),
            Err(Error::Contract { .. })
        ));
    }
}
