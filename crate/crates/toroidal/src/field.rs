//! Finite fields `F_{p^k}` with full exp/log tables.
//!
//! Elements are stored as base-`p` digit encodings: the residue polynomial
//! `a_0 + a_1 t + … + a_{k-1} t^{k-1}` is the integer `Σ a_i p^i`, so every
//! integer in `0..q` is a valid element encoding and `0`/`1` encode the field
//! constants. The defining modulus is the lexicographically least monic
//! polynomial of degree `k` for which `t` is primitive; it is computed at
//! construction time, so two fields with the same `(p, k)` are always
//! identical. Primitivity of `t` makes discrete logs available for O(1)
//! multiplication, inversion, and quadratic-residue tests.

use std::collections::HashMap;

use crate::error::{contract, guard, invariant, Result};

/// Desk-scale guard: the largest permitted field size.
pub const MAX_Q: u64 = 1 << 20;

/// A field element, encoded as base-`p` digits packed into a `u32`.
///
/// Elements are only meaningful relative to the [`FiniteField`] that produced
/// them; all arithmetic goes through field methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field `F_{p^k}`, `q = p^k ≤ 2^20`.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u64,
    /// Non-leading coefficients of the monic modulus, ascending degree (length `k`).
    modulus: Vec<u32>,
    /// `exp[i]` encodes `t^i` for `i` in `0..q-1`.
    exp: Vec<u32>,
    /// `log[e]` for `e` in `1..q`; `log[0]` is a sentinel.
    log: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n` by trial division (`n ≤ 2^20`).
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- dense polynomial helpers over F_p used only during modulus search ---

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    // Reduce by the monic modulus.
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (j, &mj) in modulus[..k].iter().enumerate() {
            let idx = d - k + j;
            prod[idx] = (prod[idx] + c * (p as u64 - mj as u64)) % p as u64;
        }
    }
    prod.truncate(k);
    prod.iter().map(|&c| c as u32).collect()
}

fn poly_powmod_t(e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut base = vec![0u32; k];
    if k == 1 {
        // t ≡ -c0 mod (t + c0)
        base[0] = (p - modulus[0]) % p;
    } else {
        base[1] = 1;
    }
    let mut acc = vec![0u32; k];
    acc[0] = 1;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, modulus, p);
        }
        base = poly_mulmod(&base, &base, modulus, p);
        e >>= 1;
    }
    acc
}

fn is_one(v: &[u32]) -> bool {
    v.first() == Some(&1) && v[1..].iter().all(|&c| c == 0)
}

impl FiniteField {
    /// Construct `F_{p^k}`. `p` must be prime and `p^k ≤ 2^20`.
    pub fn new(p: u32, k: u32) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(contract("FiniteField::new", format!("p = {p} is not prime")));
        }
        if k == 0 {
            return Err(contract("FiniteField::new", "k must be at least 1"));
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q.saturating_mul(p as u64);
            if q > MAX_Q {
                return Err(guard(
                    "FiniteField::new",
                    format!("q = {p}^{k} exceeds the desk-scale bound 2^20"),
                ));
            }
        }
        let mut modulus = Self::least_primitive_modulus(p, k, q)?;
        let (exp, log) = Self::build_tables(p, k, q, &modulus)?;
        modulus.truncate(k as usize); // keep non-leading coefficients only
        Ok(FiniteField { p, k, q, modulus, exp, log })
    }

    /// The lexicographically least monic degree-`k` polynomial with `t`
    /// primitive. Primitivity of `t` forces irreducibility, so a single order
    /// test decides each candidate.
    fn least_primitive_modulus(p: u32, k: u32, q: u64) -> Result<Vec<u32>> {
        let factors = prime_factors(q - 1);
        let mut coeffs = vec![0u32; k as usize + 1];
        coeffs[k as usize] = 1;
        for enc in 0..q {
            // Candidate non-leading coefficients from the integer encoding.
            let mut e = enc;
            for c in coeffs[..k as usize].iter_mut() {
                *c = (e % p as u64) as u32;
                e /= p as u64;
            }
            if coeffs[0] == 0 {
                continue; // t would not be invertible
            }
            if !is_one(&poly_powmod_t(q - 1, &coeffs, p)) {
                continue;
            }
            if factors.iter().all(|&l| !is_one(&poly_powmod_t((q - 1) / l, &coeffs, p))) {
                return Ok(coeffs);
            }
        }
        Err(invariant(
            "FiniteField::new",
            format!("no primitive modulus found for p={p}, k={k}"),
        ))
    }

    fn build_tables(p: u32, k: u32, q: u64, modulus: &[u32]) -> Result<(Vec<u32>, Vec<u32>)> {
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut digits = vec![0u32; k as usize];
        digits[0] = 1;
        for i in 0..(q - 1) as usize {
            let enc = Self::encode(p, &digits);
            exp[i] = enc;
            if enc != 1 || i == 0 {
                log[enc as usize] = i as u32;
            } else {
                return Err(invariant(
                    "FiniteField::new",
                    format!("t has order {i} < q-1; modulus is not primitive"),
                ));
            }
            // digits *= t, reduced by the modulus
            let carry = digits[k as usize - 1];
            for j in (1..k as usize).rev() {
                digits[j] = digits[j - 1];
            }
            digits[0] = 0;
            if carry != 0 {
                for (j, &mj) in modulus[..k as usize].iter().enumerate() {
                    digits[j] = (digits[j] + carry * (p - mj)) % p;
                }
            }
        }
        // The cycle must close: t^(q-1) = 1.
        let mut closing = digits;
        closing[0] = (closing[0] + p - 1) % p;
        if closing.iter().any(|&c| c != 0) {
            return Err(invariant("FiniteField::new", "t^(q-1) != 1 after table build"));
        }
        Ok((exp, log))
    }

    fn encode(p: u32, digits: &[u32]) -> u32 {
        let mut enc: u64 = 0;
        for &d in digits.iter().rev() {
            enc = enc * p as u64 + d as u64;
        }
        enc as u32
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Non-leading coefficients of the monic defining modulus, ascending degree.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Decode an element into its base-`p` digit vector (length `k`).
    pub fn digits(&self, a: FqElem) -> Vec<u32> {
        let mut e = a.0;
        let mut out = vec![0u32; self.k as usize];
        for d in out.iter_mut() {
            *d = e % self.p;
            e /= self.p;
        }
        out
    }

    /// Element from base-`p` digits (ascending degree; may be shorter than `k`).
    pub fn from_digits(&self, digits: &[u32]) -> FqElem {
        let mut enc: u64 = 0;
        for &d in digits.iter().rev() {
            enc = enc * self.p as u64 + (d % self.p) as u64;
        }
        FqElem(enc as u32)
    }

    /// The constant `c mod p` as a field element.
    pub fn constant(&self, c: i64) -> FqElem {
        FqElem(c.rem_euclid(self.p as i64) as u32)
    }

    /// The residue of `t`, a primitive element by construction.
    pub fn t(&self) -> FqElem {
        if self.k == 1 {
            FqElem(self.exp[if self.q == 2 { 0 } else { 1 }])
        } else {
            FqElem(self.p)
        }
    }

    /// A fixed primitive element (a generator of the unit group): `t` itself,
    /// except in the degenerate field `F_2` where the unit group is trivial.
    pub fn primitive_element(&self) -> FqElem {
        if self.q == 2 {
            FqElem::ONE
        } else {
            FqElem(self.exp[1])
        }
    }

    /// Iterate over all `q` element encodings, `0..q`.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q as u32).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut enc: u32 = 0;
        let mut place: u32 = 1;
        while x != 0 || y != 0 {
            let d = (x % self.p + y % self.p) % self.p;
            enc += d * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        FqElem(enc)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut enc: u32 = 0;
        let mut place: u32 = 1;
        while x != 0 {
            let d = x % self.p;
            enc += if d == 0 { 0 } else { (self.p - d) * place };
            place *= self.p;
            x /= self.p;
        }
        FqElem(enc)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        let n = self.q - 1;
        let i = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % n;
        FqElem(self.exp[i as usize])
    }

    /// Multiplicative inverse. Panics on zero: eligibility is the caller's
    /// responsibility everywhere this is used.
    pub fn inv(&self, a: FqElem) -> FqElem {
        assert!(!a.is_zero(), "inverse of the zero element");
        let n = self.q - 1;
        let i = (n - self.log[a.0 as usize] as u64) % n;
        FqElem(self.exp[i as usize])
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> FqElem {
        self.mul(a, self.inv(b))
    }

    /// `a^e` for any signed exponent (`0^0 = 1`; negative exponents invert).
    pub fn pow(&self, a: FqElem, e: i64) -> FqElem {
        if a.is_zero() {
            assert!(e >= 0, "negative power of zero");
            return if e == 0 { FqElem::ONE } else { FqElem::ZERO };
        }
        let n = (self.q - 1) as i64;
        let i = (self.log[a.0 as usize] as i64 * (e % n)).rem_euclid(n);
        FqElem(self.exp[i as usize])
    }

    /// Discrete log base `t` of a nonzero element.
    pub fn dlog(&self, a: FqElem) -> u32 {
        assert!(!a.is_zero(), "discrete log of zero");
        self.log[a.0 as usize]
    }

    /// Arithmetic Frobenius `x ↦ x^p`.
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p as i64)
    }

    /// `x ↦ x^(p^j)`.
    pub fn frobenius_iter(&self, a: FqElem, j: u32) -> FqElem {
        let mut x = a;
        for _ in 0..(j % self.k.max(1)) {
            x = self.frobenius(x);
        }
        x
    }

    /// Absolute trace down to the prime field, returned as a digit in `0..p`.
    pub fn abs_trace(&self, a: FqElem) -> u32 {
        let mut acc = FqElem::ZERO;
        let mut x = a;
        for _ in 0..self.k {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        debug_assert!(acc.0 < self.p);
        acc.0
    }

    /// Quadratic-residue test for odd `q` (zero counts as a square).
    pub fn is_square(&self, a: FqElem) -> bool {
        if a.is_zero() {
            return true;
        }
        if self.p == 2 {
            return true;
        }
        self.log[a.0 as usize] % 2 == 0
    }

    /// A square root when one exists (odd `q`: even dlog; char 2: always).
    pub fn sqrt(&self, a: FqElem) -> Option<FqElem> {
        if a.is_zero() {
            return Some(FqElem::ZERO);
        }
        if self.p == 2 {
            return Some(self.pow(a, (self.q / 2) as i64));
        }
        let l = self.log[a.0 as usize] as u64;
        if l % 2 != 0 {
            return None;
        }
        Some(FqElem(self.exp[(l / 2) as usize]))
    }

    /// Build the extension `F_{q^d}` together with the embedding of `self`.
    pub fn extension(&self, d: u32) -> Result<(FiniteField, Embedding)> {
        let sup = FiniteField::new(self.p, self.k * d)?;
        let emb = Embedding::new(self, &sup)?;
        Ok((sup, emb))
    }
}

/// An embedding `F_{p^j} ↪ F_{p^m}` (`j | m`) as a full lookup table plus the
/// inverse partial map for pulling subfield values back down.
#[derive(Debug, Clone)]
pub struct Embedding {
    table: Vec<u32>,
    inverse: HashMap<u32, u32>,
    sub_q: u64,
}

impl Embedding {
    pub fn new(sub: &FiniteField, sup: &FiniteField) -> Result<Embedding> {
        if sub.p != sup.p {
            return Err(contract("Embedding::new", "different characteristics"));
        }
        if sup.k % sub.k != 0 {
            return Err(contract(
                "Embedding::new",
                format!("degree {} does not divide {}", sub.k, sup.k),
            ));
        }
        // Images of t_sub are the roots of the sub modulus inside the unique
        // subfield of order sub.q, i.e. among powers of c = t^((q_sup-1)/(q_sub-1)).
        // The numerically least root is the canonical choice.
        let mut root: Option<FqElem> = None;
        if sub.k > 1 || sub.q > 2 {
            let step = (sup.q - 1) / (sub.q - 1);
            let mut full_modulus: Vec<FqElem> =
                sub.modulus.iter().map(|&c| FqElem(c)).collect();
            full_modulus.push(FqElem::ONE);
            for j in 0..(sub.q - 1) {
                let y = FqElem(sup.exp[(j * step) as usize]);
                // Horner evaluation of the sub modulus at y inside sup.
                let mut acc = FqElem::ZERO;
                for &c in full_modulus.iter().rev() {
                    acc = sup.add(sup.mul(acc, y), c);
                }
                if acc.is_zero() {
                    root = Some(match root {
                        Some(r) if r <= y => r,
                        _ => y,
                    });
                }
            }
            if root.is_none() {
                return Err(invariant("Embedding::new", "sub modulus has no root upstairs"));
            }
        }
        let r = root.unwrap_or(FqElem::ZERO); // unused when k_sub == 1 && q_sub == 2
        let mut table = vec![0u32; sub.q as usize];
        for e in 0..sub.q as u32 {
            let digits = sub.digits(FqElem(e));
            let mut acc = FqElem::ZERO;
            for &d in digits.iter().rev() {
                acc = sup.add(sup.mul(acc, r), FqElem(d));
            }
            table[e as usize] = acc.0;
        }
        let emb = Embedding {
            inverse: table.iter().enumerate().map(|(e, &im)| (im, e as u32)).collect(),
            table,
            sub_q: sub.q,
        };
        emb.verify(sub, sup)?;
        Ok(emb)
    }

    /// Ring-homomorphism spot check: exhaustive for small subfields, sampled
    /// deterministically otherwise.
    fn verify(&self, sub: &FiniteField, sup: &FiniteField) -> Result<()> {
        let check = |a: FqElem, b: FqElem| -> bool {
            self.apply(sub.mul(a, b)) == sup.mul(self.apply(a), self.apply(b))
                && self.apply(sub.add(a, b)) == sup.add(self.apply(a), self.apply(b))
        };
        let ok = if sub.q <= 64 {
            sub.elements().all(|a| sub.elements().all(|b| check(a, b)))
        } else {
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
            (0..200).all(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = FqElem((state >> 33) as u32 % sub.q as u32);
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let b = FqElem((state >> 33) as u32 % sub.q as u32);
                check(a, b)
            })
        };
        if ok && self.apply(FqElem::ONE) == FqElem::ONE {
            Ok(())
        } else {
            Err(invariant("Embedding::new", "embedding is not a ring homomorphism"))
        }
    }

    pub fn apply(&self, a: FqElem) -> FqElem {
        FqElem(self.table[a.0 as usize])
    }

    /// Pull an ambient element back to the subfield if it lies in the image.
    pub fn preimage(&self, a: FqElem) -> Option<FqElem> {
        self.inverse.get(&a.0).copied().map(FqElem)
    }

    pub fn sub_q(&self) -> u64 {
        self.sub_q
    }
}
