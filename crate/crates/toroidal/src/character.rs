//! Characters of the idele class group that are unramified at every place.
//!
//! A finite-order datum is a pair `(ω, δ)`: a character `ω` of the divisor
//! class group recorded as exponents against the invariant-factor generators,
//! and a sign twist `δ ∈ {0,1}` acting through `(−1)^{δ·deg}`. Values of the
//! finite part are exact roots of unity `e^{2πi·r}` with `r` rational, kept as
//! exact fractions until a complex number is demanded. A quasi-character
//! additionally carries the complex shift through its value `T₀` on a fixed
//! degree-one idele, i.e. `χ = (ω, δ)·‖·‖^{s}` with `T₀ = q^{−s}`.

use crate::error::{contract, Result};
use crate::picard::ClassGroupTable;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

/// An exact root of unity `e^{2πi·r}` with `r ∈ [0, 1)` rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity(Rational64);

impl RootOfUnity {
    pub fn one() -> RootOfUnity {
        RootOfUnity(Rational64::zero())
    }

    /// `e^{2πi·num/den}`.
    pub fn from_frac(num: i64, den: i64) -> RootOfUnity {
        assert!(den != 0);
        let mut r = Rational64::new(num, den);
        r -= r.floor();
        if r.is_negative() {
            r += Rational64::new(1, 1);
        }
        RootOfUnity(r)
    }

    /// The exact exponent `r` with value `e^{2πi·r}`.
    pub fn exponent(self) -> Rational64 {
        self.0
    }

    pub fn mul(self, other: RootOfUnity) -> RootOfUnity {
        let sum = self.0 + other.0;
        RootOfUnity::from_frac(*sum.numer(), *sum.denom())
    }

    pub fn inv(self) -> RootOfUnity {
        RootOfUnity::from_frac(-self.0.numer(), *self.0.denom())
    }

    pub fn pow(self, e: i64) -> RootOfUnity {
        RootOfUnity::from_frac(self.0.numer() * e, *self.0.denom())
    }

    pub fn is_one(self) -> bool {
        self.0.is_zero()
    }

    /// Multiplicative order.
    pub fn order(self) -> u64 {
        *self.0.denom() as u64
    }

    /// Exact real value for roots of order ≤ 2, `None` otherwise.
    pub fn as_real(self) -> Option<i64> {
        match (*self.0.numer(), *self.0.denom()) {
            (0, 1) => Some(1),
            (1, 2) => Some(-1),
            _ => None,
        }
    }

    pub fn value(self) -> Complex64 {
        if let Some(r) = self.as_real() {
            return Complex64::new(r as f64, 0.0);
        }
        let theta = 2.0 * std::f64::consts::PI * (*self.0.numer() as f64) / (*self.0.denom() as f64);
        Complex64::new(theta.cos(), theta.sin())
    }
}

/// A finite-order unramified character `(ω, δ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnramifiedCharacter {
    /// Exponents against the invariant-factor generators: `ω(g_j) = e^{2πi·m_j/d_j}`.
    pub m: Vec<u64>,
    /// Sign twist: values pick up `(−1)^{δ·deg x}`.
    pub delta: u8,
}

impl UnramifiedCharacter {
    pub fn trivial(table: &ClassGroupTable) -> UnramifiedCharacter {
        UnramifiedCharacter { m: vec![0; table.invariant_factors.len()], delta: 0 }
    }

    /// The sign character: trivial `ω`, `δ = 1`.
    pub fn sign(table: &ClassGroupTable) -> UnramifiedCharacter {
        UnramifiedCharacter { m: vec![0; table.invariant_factors.len()], delta: 1 }
    }

    pub fn is_trivial(&self) -> bool {
        self.delta == 0 && self.m.iter().all(|&x| x == 0)
    }

    pub fn omega_is_trivial(&self) -> bool {
        self.m.iter().all(|&x| x == 0)
    }

    /// `ω` evaluated on a divisor class, as an exact root of unity.
    pub fn eval_class(&self, table: &ClassGroupTable, class: u32) -> RootOfUnity {
        let mut acc = RootOfUnity::one();
        let logs = &table.logs[class as usize];
        for (j, (&mj, &dj)) in self.m.iter().zip(&table.invariant_factors).enumerate() {
            if mj != 0 {
                acc = acc.mul(RootOfUnity::from_frac((mj * logs[j]) as i64, dj as i64));
            }
        }
        acc
    }

    /// Full finite-part value on a place given its class and degree:
    /// `ω([x − deg·A₁])·(−1)^{δ·deg}`.
    pub fn eval_place(&self, table: &ClassGroupTable, class: u32, degree: u32) -> RootOfUnity {
        let mut acc = self.eval_class(table, class);
        if self.delta == 1 && degree % 2 == 1 {
            acc = acc.mul(RootOfUnity::from_frac(1, 2));
        }
        acc
    }

    pub fn mul(&self, other: &UnramifiedCharacter, table: &ClassGroupTable) -> UnramifiedCharacter {
        let m = self
            .m
            .iter()
            .zip(&other.m)
            .zip(&table.invariant_factors)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        UnramifiedCharacter { m, delta: (self.delta + other.delta) % 2 }
    }

    pub fn inv(&self, table: &ClassGroupTable) -> UnramifiedCharacter {
        let m = self
            .m
            .iter()
            .zip(&table.invariant_factors)
            .map(|(&a, &d)| if a == 0 { 0 } else { d - a })
            .collect();
        UnramifiedCharacter { m, delta: self.delta }
    }

    pub fn square(&self, table: &ClassGroupTable) -> UnramifiedCharacter {
        self.mul(self, table)
    }

    /// Multiplicative order of `(ω, δ)`.
    pub fn order(&self, table: &ClassGroupTable) -> u64 {
        let mut ord: u64 = if self.delta == 1 { 2 } else { 1 };
        for (&mj, &dj) in self.m.iter().zip(&table.invariant_factors) {
            let o = dj / dj.gcd(&mj.max(1));
            let o = if mj == 0 { 1 } else { o };
            ord = ord.lcm(&o);
        }
        ord
    }

    /// Order exactly 2?
    pub fn is_quadratic(&self, table: &ClassGroupTable) -> bool {
        !self.is_trivial() && self.square(table).is_trivial()
    }

    /// Canonical index in the [`character_group`] listing.
    pub fn index(&self, table: &ClassGroupTable) -> usize {
        let mut idx: usize = 0;
        let mut stride: usize = 1;
        for (&mj, &dj) in self.m.iter().zip(&table.invariant_factors) {
            idx += mj as usize * stride;
            stride *= dj as usize;
        }
        idx + self.delta as usize * stride
    }

    /// Short label such as `1`, `sgn`, `w[1,0]` or `sgn*w[2]`.
    pub fn label(&self) -> String {
        let omega = if self.omega_is_trivial() {
            String::new()
        } else {
            format!("w{:?}", self.m)
        };
        match (self.delta != 0, omega.is_empty()) {
            (false, true) => "1".to_string(),
            (true, true) => "sgn".to_string(),
            (false, false) => omega,
            (true, false) => format!("sgn*{omega}"),
        }
    }
}

/// All `2h` finite-order characters: the `δ = 0` block first (trivial `ω`
/// leading), then the `δ = 1` block in the same `ω` order.
pub fn character_group(table: &ClassGroupTable) -> Vec<UnramifiedCharacter> {
    let factors = &table.invariant_factors;
    let h: usize = factors.iter().map(|&d| d as usize).product::<usize>().max(1);
    let mut out = Vec::with_capacity(2 * h);
    for delta in 0..2u8 {
        let mut m = vec![0u64; factors.len()];
        loop {
            out.push(UnramifiedCharacter { m: m.clone(), delta });
            let mut j = 0;
            while j < m.len() {
                m[j] += 1;
                if m[j] < factors[j] {
                    break;
                }
                m[j] = 0;
                j += 1;
            }
            if j == m.len() {
                break;
            }
        }
    }
    out
}

/// All elements of order exactly 2 in the `(ω, δ)` group
/// (there are `2·#Pic⁰[2] − 1` of them).
pub fn quadratic_characters(table: &ClassGroupTable) -> Vec<UnramifiedCharacter> {
    character_group(table)
        .into_iter()
        .filter(|c| !c.is_trivial() && c.square(table).is_trivial())
        .collect()
}

/// How `χ²` sits relative to the norm: the cases that matter analytically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chi2Type {
    /// `χ² = 1` (self-dual at the center).
    One,
    /// `χ² = ‖·‖^{+1}`, i.e. `T₀² = q^{−1}`.
    NormPlus,
    /// `χ² = ‖·‖^{−1}`, i.e. `T₀² = q^{+1}`.
    NormMinus,
    Generic,
}

/// A quasi-character `(ω, δ)·‖·‖^s`, carried through its value `T₀ = q^{−s}`.
#[derive(Debug, Clone)]
pub struct QuasiCharacter {
    pub finite: UnramifiedCharacter,
    pub t0: Complex64,
}

impl QuasiCharacter {
    pub fn from_t0(finite: UnramifiedCharacter, t0: Complex64) -> Result<QuasiCharacter> {
        if t0.norm() == 0.0 || !t0.is_finite() {
            return Err(contract("QuasiCharacter::from_t0", "T0 must be finite and nonzero"));
        }
        Ok(QuasiCharacter { finite, t0 })
    }

    /// `(ω, δ)·‖·‖^s` via `T₀ = q^{−s}`.
    pub fn from_s(finite: UnramifiedCharacter, s: Complex64, q: u64) -> QuasiCharacter {
        let t0 = (-s * (q as f64).ln()).exp();
        QuasiCharacter { finite, t0 }
    }

    /// Finite-order character at the central normalization (`T₀ = 1`).
    pub fn finite_order(finite: UnramifiedCharacter) -> QuasiCharacter {
        QuasiCharacter { finite, t0: Complex64::new(1.0, 0.0) }
    }

    /// The shift `s₀` with `T₀ = q^{−s₀}` (principal branch).
    pub fn s0(&self, q: u64) -> Complex64 {
        -self.t0.ln() / (q as f64).ln()
    }

    /// `Re χ = Re s₀ = −log_q |T₀|`.
    pub fn re(&self, q: u64) -> f64 {
        -self.t0.norm().ln() / (q as f64).ln()
    }

    /// Value on the uniformizer of a place with the given class and degree.
    pub fn eval_place(&self, table: &ClassGroupTable, class: u32, degree: u32) -> Complex64 {
        self.finite.eval_place(table, class, degree).value() * self.t0.powi(degree as i32)
    }

    pub fn inverse(&self, table: &ClassGroupTable) -> QuasiCharacter {
        QuasiCharacter { finite: self.finite.inv(table), t0: 1.0 / self.t0 }
    }

    /// Classification of `χ²` with the given tolerance on `T₀²`.
    pub fn chi2_type(&self, table: &ClassGroupTable, q: u64, tol: f64) -> Chi2Type {
        if !self.finite.square(table).is_trivial() {
            return Chi2Type::Generic;
        }
        let t2 = self.t0 * self.t0;
        let close = |target: Complex64| (t2 - target).norm() <= tol * target.norm().max(1.0);
        if close(Complex64::new(1.0, 0.0)) {
            Chi2Type::One
        } else if close(Complex64::new(1.0 / q as f64, 0.0)) {
            Chi2Type::NormPlus
        } else if close(Complex64::new(q as f64, 0.0)) {
            Chi2Type::NormMinus
        } else {
            Chi2Type::Generic
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::field::FiniteField;
    use crate::picard::class_group;
    use crate::poly::FqPoly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn table_e_f2() -> ClassGroupTable {
        let k = FiniteField::new(2, 1).unwrap();
        let f = FqPoly::from_ints(&k, &[0, 0, 0, 1]);
        let h = FqPoly::from_ints(&k, &[1]);
        class_group(&Curve::hyperelliptic(k, f, h).unwrap()).unwrap()
    }

    fn table_e_f3() -> ClassGroupTable {
        let k = FiniteField::new(3, 1).unwrap();
        let f = FqPoly::from_ints(&k, &[0, -1, 0, 1]);
        class_group(&Curve::hyperelliptic(k, f, FqPoly::zero()).unwrap()).unwrap()
    }

    #[test]
    fn root_of_unity_arithmetic_is_exact() {
        let a = RootOfUnity::from_frac(1, 3);
        let b = RootOfUnity::from_frac(2, 3);
        assert!(a.mul(b).is_one());
        assert_eq!(a.pow(3), RootOfUnity::one());
        assert_eq!(a.inv(), b);
        assert_eq!(RootOfUnity::from_frac(7, 3), RootOfUnity::from_frac(1, 3));
        assert_eq!(RootOfUnity::from_frac(-1, 4), RootOfUnity::from_frac(3, 4));
        assert_eq!(RootOfUnity::from_frac(1, 2).as_real(), Some(-1));
        assert!((a.value() - Complex64::new(-0.5, 0.75f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn group_has_2h_characters_with_exact_duality() {
        let t = table_e_f2();
        let chars = character_group(&t);
        assert_eq!(chars.len(), 6);
        assert!(chars[0].is_trivial());
        // Multiplicativity on classes, exactly.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let chi = &chars[rng.gen_range(0..chars.len())];
            let a = rng.gen_range(0..t.elements.len() as u32);
            let b = rng.gen_range(0..t.elements.len() as u32);
            assert_eq!(
                chi.eval_class(&t, t.add(a, b)),
                chi.eval_class(&t, a).mul(chi.eval_class(&t, b))
            );
        }
        // Indices round-trip.
        for (i, c) in chars.iter().enumerate() {
            assert_eq!(c.index(&t), i);
        }
    }

    #[test]
    fn quadratic_counts_match_two_torsion() {
        // h = 3: only the sign character.
        let q = quadratic_characters(&table_e_f2());
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].label(), "sgn");
        // Z/2 × Z/2: 2·4 − 1 = 7.
        let q = quadratic_characters(&table_e_f3());
        assert_eq!(q.len(), 7);
    }

    #[test]
    fn sign_character_is_the_norm_at_i_pi_over_ln_q() {
        let t = table_e_f2();
        let q = 2u64;
        let s = Complex64::new(0.0, std::f64::consts::PI / (q as f64).ln());
        let chi = QuasiCharacter::from_s(UnramifiedCharacter::trivial(&t), s, q);
        assert!((chi.t0 - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        // Values on (class, degree) agree with the explicit sign character.
        let sgn = QuasiCharacter::finite_order(UnramifiedCharacter::sign(&t));
        for deg in 1..5 {
            let a = chi.eval_place(&t, t.identity(), deg);
            let b = sgn.eval_place(&t, t.identity(), deg);
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn chi2_classification() {
        let t = table_e_f2();
        let trivial = UnramifiedCharacter::trivial(&t);
        let q = 2u64;
        let tol = 1e-9;
        let one = QuasiCharacter::finite_order(trivial.clone());
        assert_eq!(one.chi2_type(&t, q, tol), Chi2Type::One);
        let sgn = QuasiCharacter::finite_order(UnramifiedCharacter::sign(&t));
        assert_eq!(sgn.chi2_type(&t, q, tol), Chi2Type::One);
        // ‖·‖^{1/2}: T0 = q^{-1/2} → χ² = ‖·‖, NormPlus.
        let half = QuasiCharacter::from_s(trivial.clone(), Complex64::new(0.5, 0.0), q);
        assert_eq!(half.chi2_type(&t, q, tol), Chi2Type::NormPlus);
        let neg_half = QuasiCharacter::from_s(trivial.clone(), Complex64::new(-0.5, 0.0), q);
        assert_eq!(neg_half.chi2_type(&t, q, tol), Chi2Type::NormMinus);
        // Toroidal point of the F_2 curve: T0 = i, χ² has T0² = −1: generic.
        let toroidal =
            QuasiCharacter::from_t0(trivial, Complex64::new(0.0, 1.0)).unwrap();
        assert_eq!(toroidal.chi2_type(&t, q, tol), Chi2Type::Generic);
        // A genuinely nontrivial ω² case.
        let t3 = table_e_f2();
        let chars = character_group(&t3);
        let omega = chars.iter().find(|c| c.delta == 0 && !c.omega_is_trivial()).unwrap();
        let qc = QuasiCharacter::finite_order(omega.clone());
        assert_eq!(qc.chi2_type(&t3, q, tol), Chi2Type::Generic); // ω has order 3
    }

    #[test]
    fn orders_and_inverses() {
        let t = table_e_f3();
        for c in character_group(&t) {
            let o = c.order(&t);
            assert!(o == 1 || o == 2); // the group is 2-torsion plus sign
            assert!(c.mul(&c.inv(&t), &t).is_trivial());
        }
        let t2 = table_e_f2();
        let orders: Vec<u64> = character_group(&t2).iter().map(|c| c.order(&t2)).collect();
        assert_eq!(orders, vec![1, 3, 3, 2, 6, 6]);
    }
}
