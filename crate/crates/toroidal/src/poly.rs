//! Dense univariate polynomials over a [`FiniteField`].
//!
//! Coefficients are stored ascending by degree with no trailing zeros, so the
//! zero polynomial is the empty vector. Every operation takes the owning
//! field as an explicit context argument; polynomials never carry a field
//! reference of their own.

use crate::field::{Embedding, FiniteField, FqElem};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(mut coeffs: Vec<FqElem>) -> FqPoly {
        while coeffs.last() == Some(&FqElem::ZERO) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn zero() -> FqPoly {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn one() -> FqPoly {
        FqPoly { coeffs: vec![FqElem::ONE] }
    }

    pub fn constant(c: FqElem) -> FqPoly {
        FqPoly::new(vec![c])
    }

    /// The monomial `c · X^d`.
    pub fn monomial(c: FqElem, d: usize) -> FqPoly {
        let mut coeffs = vec![FqElem::ZERO; d + 1];
        coeffs[d] = c;
        FqPoly::new(coeffs)
    }

    pub fn x() -> FqPoly {
        FqPoly::monomial(FqElem::ONE, 1)
    }

    /// Build from signed integer coefficients reduced into the field.
    pub fn from_ints(field: &FiniteField, ints: &[i64]) -> FqPoly {
        FqPoly::new(ints.iter().map(|&c| field.constant(c)).collect())
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> FqElem {
        self.coeffs.get(d).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree with the convention `deg 0 = -1`.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElem::ONE
    }

    pub fn add(&self, other: &FqPoly, k: &FiniteField) -> FqPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| k.add(self.coeff(i), other.coeff(i))).collect();
        FqPoly::new(coeffs)
    }

    pub fn neg(&self, k: &FiniteField) -> FqPoly {
        FqPoly::new(self.coeffs.iter().map(|&c| k.neg(c)).collect())
    }

    pub fn sub(&self, other: &FqPoly, k: &FiniteField) -> FqPoly {
        self.add(&other.neg(k), k)
    }

    pub fn mul(&self, other: &FqPoly, k: &FiniteField) -> FqPoly {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero();
        }
        let mut coeffs = vec![FqElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = k.add(coeffs[i + j], k.mul(a, b));
            }
        }
        FqPoly::new(coeffs)
    }

    pub fn scale(&self, c: FqElem, k: &FiniteField) -> FqPoly {
        FqPoly::new(self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    /// Euclidean division; the divisor may be any nonzero polynomial.
    pub fn divrem(&self, divisor: &FqPoly, k: &FiniteField) -> (FqPoly, FqPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.deg() < divisor.deg() {
            return (FqPoly::zero(), self.clone());
        }
        let lead_inv = k.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let dd = divisor.deg() as usize;
        let mut quot = vec![FqElem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = k.mul(rem[i], lead_inv);
            quot[i - dd] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = k.sub(rem[i - dd + j], k.mul(c, b));
            }
        }
        (FqPoly::new(quot), FqPoly::new(rem))
    }

    pub fn rem(&self, divisor: &FqPoly, k: &FiniteField) -> FqPoly {
        self.divrem(divisor, k).1
    }

    /// Exact quotient; panics if the division leaves a remainder (used only
    /// where divisibility is guaranteed by construction).
    pub fn div_exact(&self, divisor: &FqPoly, k: &FiniteField) -> FqPoly {
        let (q, r) = self.divrem(divisor, k);
        assert!(r.is_zero(), "div_exact with nonzero remainder");
        q
    }

    pub fn monic(&self, k: &FiniteField) -> FqPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(k.inv(self.leading()), k)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FqPoly, k: &FiniteField) -> FqPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Extended gcd: returns monic `g` and `(s, t)` with `s·a + t·b = g`.
    pub fn xgcd(&self, other: &FqPoly, k: &FiniteField) -> (FqPoly, FqPoly, FqPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FqPoly::one(), FqPoly::zero());
        let (mut t0, mut t1) = (FqPoly::zero(), FqPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, k);
            let s = s0.sub(&q.mul(&s1, k), k);
            let t = t0.sub(&q.mul(&t1, k), k);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (FqPoly::zero(), FqPoly::zero(), FqPoly::zero());
        }
        let c = k.inv(r0.leading());
        (r0.scale(c, k), s0.scale(c, k), t0.scale(c, k))
    }

    /// Formal derivative.
    pub fn derivative(&self, k: &FiniteField) -> FqPoly {
        if self.coeffs.len() <= 1 {
            return FqPoly::zero();
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| k.mul(k.constant((i + 1) as i64), c))
            .collect();
        FqPoly::new(coeffs)
    }

    pub fn eval(&self, x: FqElem, k: &FiniteField) -> FqElem {
        let mut acc = FqElem::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = k.add(k.mul(acc, x), c);
        }
        acc
    }

    /// `self^e mod m` (square-and-multiply).
    pub fn powmod(&self, e: u64, m: &FqPoly, k: &FiniteField) -> FqPoly {
        let mut base = self.rem(m, k);
        let mut acc = FqPoly::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k).rem(m, k);
            }
            base = base.mul(&base, k).rem(m, k);
            e >>= 1;
        }
        acc
    }

    /// Squarefree test via `gcd(f, f')`; in characteristic `p` a vanishing
    /// derivative means `f ∈ F_q[X^p]`, a `p`-th power up to constants, so the
    /// gcd criterion remains correct.
    pub fn is_squarefree(&self, k: &FiniteField) -> bool {
        if self.deg() <= 0 {
            return !self.is_zero();
        }
        let d = self.derivative(k);
        if d.is_zero() {
            return false;
        }
        self.gcd(&d, k).deg() == 0
    }

    /// Map coefficients through a subfield embedding.
    pub fn embed(&self, emb: &Embedding) -> FqPoly {
        FqPoly::new(self.coeffs.iter().map(|&c| emb.apply(c)).collect())
    }

    /// Pull coefficients back along an embedding; `None` if any coefficient
    /// lies outside the subfield.
    pub fn preimage(&self, emb: &Embedding) -> Option<FqPoly> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            coeffs.push(emb.preimage(c)?);
        }
        Some(FqPoly::new(coeffs))
    }

    /// Lagrange interpolation through distinct nodes; `None` on a repeated node.
    pub fn interpolate(points: &[(FqElem, FqElem)], k: &FiniteField) -> Option<FqPoly> {
        let mut acc = FqPoly::zero();
        for (i, &(xi, yi)) in points.iter().enumerate() {
            let mut num = FqPoly::constant(yi);
            let mut den = FqElem::ONE;
            for (j, &(xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                if xi == xj {
                    return None;
                }
                num = num.mul(&FqPoly::new(vec![k.neg(xj), FqElem::ONE]), k);
                den = k.mul(den, k.sub(xi, xj));
            }
            acc = acc.add(&num.scale(k.inv(den), k), k);
        }
        Some(acc)
    }

    /// Compact display such as `x^3 + 2x + 1`, with nonprime-field
    /// coefficients shown by their element encodings in brackets.
    pub fn render(&self, k: &FiniteField) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c == FqElem::ONE && d > 0 {
                String::new()
            } else if c.0 < k.p() || k.k() == 1 {
                format!("{}", c.0)
            } else {
                format!("[{}]", c.0)
            };
            let var = match d {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{d}"),
            };
            parts.push(format!("{coeff}{var}"));
        }
        parts.join(" + ")
    }
}
