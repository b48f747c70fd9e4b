//! Hecke eigenvalues and the Jordan-block action on derivative bases.
//!
//! For an unramified quasi-character `χ` and a place `x` with `q_x = q^{deg x}`
//! the parity-dependent eigenvalue is
//! `λ_x^{(l)}(χ) = q_x^{1/2}·(χ⁻¹(π_x) + (−1)^l·χ(π_x))`; the even value is
//! written `λ_x` and the odd one `λ_x⁻`. The Hecke operator `Φ_x` acts on the
//! span of an Eisenstein (or residual) series and its first `n − 1`
//! s-derivatives by a lower-triangular matrix built from these two numbers
//! via the Leibniz rule; when `χ² = 1` the odd-derivative terms drop
//! (`λ⁻ = 0`) and a re-indexed even-derivative basis is used instead.
//!
//! Derivative spans are treated purely as coordinate spaces with the matrix
//! action as ground truth; no function-space model of automorphic forms is
//! kept. The temperedness criterion — `Re χ = 0` exactly when every
//! eigenvalue lies in the real window `[−2√q_x, 2√q_x]` — is checked from
//! both ends independently.

use crate::character::{Chi2Type, QuasiCharacter};
use crate::error::{contract, invariant, Result};
use crate::function_field::FunctionField;
use num_complex::Complex64;

/// Both parity eigenvalues of `Φ_x` at one place.
#[derive(Debug, Clone)]
pub struct EigenData {
    pub place_index: usize,
    pub degree: u32,
    /// `λ_x(χ)`: the even-parity value `q_x^{1/2}(χ⁻¹(π_x) + χ(π_x))`.
    pub lambda: Complex64,
    /// `λ_x⁻(χ)`: the odd-parity value `q_x^{1/2}(χ⁻¹(π_x) − χ(π_x))`.
    pub lambda_minus: Complex64,
}

/// `λ_x^{(l)}(χ)`, which depends only on the parity of `l`.
pub fn lambda(ff: &FunctionField, chi: &QuasiCharacter, place_index: usize, l: u32) -> Complex64 {
    let e = eigen_data(ff, chi, place_index);
    if l % 2 == 0 {
        e.lambda
    } else {
        e.lambda_minus
    }
}

pub fn eigen_data(ff: &FunctionField, chi: &QuasiCharacter, place_index: usize) -> EigenData {
    let table = ff.class_table();
    let place = &ff.places()[place_index];
    let class = ff.place_class_index(place_index);
    let value = chi.eval_place(table, class, place.degree);
    let value_inv = chi.inverse(table).eval_place(table, class, place.degree);
    let root_qx = (ff.q() as f64).powf(place.degree as f64 / 2.0);
    EigenData {
        place_index,
        degree: place.degree,
        lambda: root_qx * (value_inv + value),
        lambda_minus: root_qx * (value_inv - value),
    }
}

/// Which derivative family the Jordan matrix acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// `E(·,χ), E^{(1)}, …` for `χ²` away from `1` and `‖·‖^{±1}`.
    Eisenstein,
    /// Residual series at `χ² = ‖·‖^{±1}`.
    Residue,
    /// Re-indexed even derivatives `Ẽ^{(i)} = E^{(2i)}` for `χ² = 1`.
    EvenDerivative,
}

/// The action of `Φ_x` on the first `n` members of a derivative family.
#[derive(Debug, Clone)]
pub struct DerivativeBasisAction {
    pub n: usize,
    pub basis_kind: BasisKind,
    pub place_index: usize,
    /// Lower-triangular; `matrix[i][k]` is the coefficient of the `k`-th
    /// basis member in `Φ_x` applied to the `i`-th.
    pub matrix: Vec<Vec<Complex64>>,
}

pub(crate) fn binom(n: u64, k: u64) -> f64 {
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

/// Leibniz-rule matrix of `Φ_x` on the derivative span of length `n`.
///
/// `matrix[i][k] = C(i,k)·(ln q_x)^{i−k}·λ_x^{(i−k)}(χ)` for `k ≤ i`; the
/// even-derivative family re-indexes `i ↦ 2i`, where only even parities
/// survive. The family must match the position of `χ²`.
pub fn jordan_matrix(
    ff: &FunctionField,
    chi: &QuasiCharacter,
    place_index: usize,
    n: usize,
    kind: BasisKind,
) -> Result<DerivativeBasisAction> {
    const OP: &str = "jordan_matrix";
    if n == 0 {
        return Err(contract(OP, "dimension n must be positive"));
    }
    let t = chi.chi2_type(ff.class_table(), ff.q(), ff.tolerance());
    match kind {
        BasisKind::Eisenstein if t != Chi2Type::Generic => {
            return Err(contract(OP, "Eisenstein family requires χ² away from 1 and ‖·‖^{±1}"));
        }
        BasisKind::Residue if !matches!(t, Chi2Type::NormPlus | Chi2Type::NormMinus) => {
            return Err(contract(OP, "residual family requires χ² = ‖·‖^{±1}"));
        }
        BasisKind::EvenDerivative if t != Chi2Type::One => {
            return Err(contract(OP, "even-derivative family requires χ² = 1"));
        }
        _ => {}
    }
    let e = eigen_data(ff, chi, place_index);
    let ln_qx = e.degree as f64 * ff.ln_q();
    let zero = Complex64::new(0.0, 0.0);
    let mut matrix = vec![vec![zero; n]; n];
    for i in 0..n {
        for k in 0..=i {
            let (row, col) = match kind {
                BasisKind::EvenDerivative => (2 * i as u64, 2 * k as u64),
                _ => (i as u64, k as u64),
            };
            let lam = if (row - col) % 2 == 0 { e.lambda } else { e.lambda_minus };
            matrix[i][k] = binom(row, col) * ln_qx.powi((row - col) as i32) * lam;
        }
    }
    Ok(DerivativeBasisAction { n, basis_kind: kind, place_index, matrix })
}

/// Degree of the minimal polynomial of a single-eigenvalue lower-triangular
/// action: the nilpotency index of `M − λI`.
pub fn min_poly_degree(action: &DerivativeBasisAction) -> usize {
    let n = action.n;
    let lam = action.matrix[0][0];
    let mut nil = action.matrix.clone();
    for (i, row) in nil.iter_mut().enumerate() {
        row[i] -= lam;
    }
    let scale: f64 = action
        .matrix
        .iter()
        .flatten()
        .map(|c| c.norm())
        .fold(1.0, f64::max);
    let mut power = identity(n);
    for m in 1..=n {
        power = mat_mul(&power, &nil);
        if mat_norm(&power) < 1e-10 * scale.powi(m as i32) {
            return m;
        }
    }
    n
}

pub fn identity(n: usize) -> Vec<Vec<Complex64>> {
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn mat_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik.norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// Largest entry modulus.
pub fn mat_norm(m: &[Vec<Complex64>]) -> f64 {
    m.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Defect of the relation `E^{(1)} = (ln q)(2g−2)·E` under the `n = 2`
/// action: `Φ_x` maps the relation line into itself exactly when `λ⁻ = 0`,
/// and the returned defect is the leaked coefficient `(ln q_x)·λ_x⁻(χ)`.
pub fn linear_relation_defect(
    ff: &FunctionField,
    chi: &QuasiCharacter,
    place_index: usize,
) -> Complex64 {
    // In coordinates (E, E^{(1)}) the relation vector is r = E^{(1)} − c·E
    // with c = (ln q)(2g−2); Φ_x r − λ·r = (ln q_x · λ⁻)·E regardless of c,
    // so the defect is the subdiagonal matrix entry.
    let e = eigen_data(ff, chi, place_index);
    let ln_qx = e.degree as f64 * ff.ln_q();
    ln_qx * e.lambda_minus
}

/// One row of the temperedness window report.
#[derive(Debug, Clone)]
pub struct PlaceWindow {
    pub place_index: usize,
    pub degree: u32,
    pub lambda: Complex64,
    /// The bound `2·q_x^{1/2}`.
    pub bound: f64,
    /// Real within tolerance and `|λ| ≤ 2√q_x` within tolerance.
    pub inside: bool,
}

#[derive(Debug, Clone)]
pub struct TemperedReport {
    /// `Re χ = 0` within tolerance (from the stored shift).
    pub by_shift: bool,
    /// Every eigenvalue at a place of degree ≤ 3 lies in its real window.
    pub by_window: bool,
    pub per_place: Vec<PlaceWindow>,
}

impl TemperedReport {
    pub fn tempered(&self) -> bool {
        self.by_shift
    }
}

/// Computes `Re χ = 0` and the eigenvalue-window membership independently
/// and asserts their equivalence whenever the character is decisively on or
/// off the critical line (the two numeric criteria cannot distinguish shifts
/// smaller than the square root of the tolerance, so a narrow gray band is
/// reported without the cross-assertion).
pub fn is_tempered(ff: &FunctionField, chi: &QuasiCharacter) -> Result<TemperedReport> {
    let tol = ff.tolerance();
    let re = chi.re(ff.q());
    let by_shift = re.abs() <= tol;
    let mut per_place = Vec::new();
    for i in 0..ff.places().len() {
        let degree = ff.places()[i].degree;
        if degree > 3 {
            continue;
        }
        let e = eigen_data(ff, chi, i);
        let bound = 2.0 * (ff.q() as f64).powf(degree as f64 / 2.0);
        let inside = e.lambda.im.abs() <= tol * bound.max(1.0)
            && e.lambda.re.abs() <= bound + tol;
        per_place.push(PlaceWindow { place_index: i, degree, lambda: e.lambda, bound, inside });
    }
    let by_window = per_place.iter().all(|w| w.inside);
    let decisive = re.abs() <= tol || re.abs() >= 1e-3;
    if decisive && by_shift != by_window {
        return Err(invariant(
            "is_tempered",
            format!(
                "shift criterion (Re χ = {re}) and eigenvalue-window criterion disagree"
            ),
        ));
    }
    Ok(TemperedReport { by_shift, by_window, per_place })
}
