//! Polynomial root extraction with exact multiplicities where possible.
//!
//! Two routes, per the crate's precision policy:
//!
//! * polynomials with rational coefficients go through Yun's squarefree
//!   decomposition over `Q` (exact gcds), so multiplicities are certified and
//!   only well-separated squarefree factors ever reach the numeric solver;
//! * genuinely complex polynomials (characters of order ≥ 3) use closed forms
//!   up to degree 2 and Durand–Kerner beyond, followed by clustering at a
//!   fixed radius; an ambiguous clustering (two centers closer than twice the
//!   radius) is reported as a precision failure rather than guessed.

use crate::error::{precision, Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Dense complex polynomial, ascending coefficients.
pub type CPoly = Vec<Complex64>;
/// Dense rational polynomial, ascending coefficients.
pub type QPoly = Vec<BigRational>;

pub fn cpoly_trim(p: &mut CPoly) {
    while p.last().is_some_and(|c| c.norm() == 0.0) {
        p.pop();
    }
}

pub fn cpoly_deg(p: &CPoly) -> isize {
    p.len() as isize - 1
}

pub fn cpoly_eval(p: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

pub fn cpoly_mul(a: &[Complex64], b: &[Complex64]) -> CPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The operator `D = −ln(q)·T·d/dT` realizing d/ds on `T = q^{−s}` series:
/// `c_m T^m ↦ −m·ln(q)·c_m T^m`.
pub fn d_op(p: &[Complex64], ln_q: f64) -> CPoly {
    p.iter()
        .enumerate()
        .map(|(m, &c)| c * Complex64::new(-(m as f64) * ln_q, 0.0))
        .collect()
}

// ---------- exact rational-polynomial helpers ----------

pub fn qpoly_from_bigints(ints: &[BigInt]) -> QPoly {
    ints.iter().map(|n| BigRational::from_integer(n.clone())).collect()
}

pub fn qpoly_trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn qpoly_deg(p: &QPoly) -> isize {
    p.len() as isize - 1
}

pub fn qpoly_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn qpoly_to_cpoly(p: &[BigRational]) -> CPoly {
    p.iter()
        .map(|c| Complex64::new(c.to_f64().expect("rational fits in f64"), 0.0))
        .collect()
}

fn qpoly_scale(p: &[BigRational], c: &BigRational) -> QPoly {
    p.iter().map(|a| a * c).collect()
}

pub fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn qpoly_derivative(p: &[BigRational]) -> QPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    p[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i as i64 + 1)))
        .collect()
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    assert!(!b.is_empty());
    let mut rem: QPoly = a.to_vec();
    qpoly_trim(&mut rem);
    if qpoly_deg(&rem) < qpoly_deg(&b.to_vec()) {
        return (Vec::new(), rem);
    }
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = &rem[i] / &lead;
        quot[i - db] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            let v = &rem[i - db + j] - &(bc * &c);
            rem[i - db + j] = v;
        }
    }
    rem.truncate(db);
    qpoly_trim(&mut rem);
    qpoly_trim(&mut quot);
    (quot, rem)
}

pub fn qpoly_div_exact(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let (q, r) = qpoly_divrem(a, b);
    assert!(r.is_empty(), "exact rational division failed");
    q
}

fn qpoly_monic(p: &[BigRational]) -> QPoly {
    match p.last() {
        None => Vec::new(),
        Some(l) => qpoly_scale(p, &(BigRational::one() / l)),
    }
}

pub fn qpoly_gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x: QPoly = a.to_vec();
    let mut y: QPoly = b.to_vec();
    qpoly_trim(&mut x);
    qpoly_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = qpoly_divrem(&x, &y);
        x = y;
        y = r;
    }
    qpoly_monic(&x)
}

/// Yun's squarefree decomposition over `Q`: returns `(factor, multiplicity)`
/// pairs with the factors squarefree and pairwise coprime. Constant input
/// yields an empty list.
pub fn yun_squarefree(f: &[BigRational]) -> Vec<(QPoly, u32)> {
    let mut f: QPoly = f.to_vec();
    qpoly_trim(&mut f);
    if qpoly_deg(&f) <= 0 {
        return Vec::new();
    }
    let fp = qpoly_derivative(&f);
    let mut c = qpoly_gcd(&f, &fp);
    let mut w = qpoly_div_exact(&f, &c);
    let mut out = Vec::new();
    let mut i = 1u32;
    while qpoly_deg(&w) > 0 {
        let y = qpoly_gcd(&w, &c);
        let z = qpoly_div_exact(&w, &y);
        if qpoly_deg(&z) > 0 {
            out.push((qpoly_monic(&z), i));
        }
        c = qpoly_div_exact(&c, &y);
        w = y;
        i += 1;
    }
    out
}

// ---------- numeric root extraction ----------

/// Roots of a complex polynomial of degree ≤ 2 in closed form.
fn closed_form_roots(p: &[Complex64]) -> Vec<Complex64> {
    match p.len() {
        0 | 1 => Vec::new(),
        2 => vec![-p[0] / p[1]],
        3 => {
            let (c, b, a) = (p[0], p[1], p[2]);
            let disc = (b * b - 4.0 * a * c).sqrt();
            // Pick the sign that avoids cancellation in the stable branch.
            let sgn = if (b.conj() * disc).re >= 0.0 { 1.0 } else { -1.0 };
            let qq = -0.5 * (b + sgn * disc);
            if qq.norm() == 0.0 {
                vec![Complex64::new(0.0, 0.0), -b / a]
            } else {
                vec![qq / a, c / qq]
            }
        }
        _ => unreachable!("closed form limited to degree 2"),
    }
}

/// Durand–Kerner simultaneous iteration; the input should be squarefree for
/// full accuracy, which every caller guarantees.
pub fn durand_kerner(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut p: CPoly = p.to_vec();
    cpoly_trim(&mut p);
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n <= 2 {
        return Ok(closed_form_roots(&p));
    }
    let lead = p[n];
    let monic: CPoly = p.iter().map(|&c| c / lead).collect();
    // Cauchy bound for the root radius.
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
            radius * seed * Complex64::new(angle.cos(), angle.sin())
        })
        .collect();
    for _ in 0..2000 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // Perturb coincident iterates.
                z[k] += Complex64::new(1e-6, 1e-6);
                continue;
            }
            let step = cpoly_eval(&monic, z[k]) / denom;
            z[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * radius.max(1.0) {
            return Ok(z);
        }
    }
    // Accept slower convergence if residuals are already tiny.
    if z.iter().all(|&r| cpoly_eval(&monic, r).norm() < 1e-10 * radius.max(1.0)) {
        return Ok(z);
    }
    Err(precision("durand_kerner", "root iteration did not converge"))
}

/// Greedy clustering at the given radius, with ambiguity detection: if two
/// resulting centers are closer than twice the radius the clustering is not
/// trustworthy and a precision failure is raised.
pub fn cluster_roots(roots: &[Complex64], radius: f64) -> Result<Vec<(Complex64, u32)>> {
    let mut sorted: Vec<Complex64> = roots.to_vec();
    sorted.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).expect("finite roots"));
    let mut clusters: Vec<(Complex64, u32)> = Vec::new();
    for &r in &sorted {
        match clusters.iter_mut().find(|(c, _)| (*c - r).norm() <= radius) {
            Some((c, m)) => {
                // Running mean keeps the center representative.
                *c = (*c * (*m as f64) + r) / (*m as f64 + 1.0);
                *m += 1;
            }
            None => clusters.push((r, 1)),
        }
    }
    for i in 0..clusters.len() {
        for j in (i + 1)..clusters.len() {
            if (clusters[i].0 - clusters[j].0).norm() < 2.0 * radius {
                return Err(Error::Precision {
                    op: "cluster_roots",
                    msg: format!(
                        "centers {:.3e} apart; cannot separate at radius {radius:.1e}",
                        (clusters[i].0 - clusters[j].0).norm()
                    ),
                });
            }
        }
    }
    clusters
        .sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).expect("finite centers"));
    Ok(clusters)
}

/// Roots with multiplicities: the exact route when rational coefficients are
/// available, the numeric clustering route otherwise.
pub fn roots_with_multiplicity(
    exact: Option<&QPoly>,
    numeric: &CPoly,
    radius: f64,
) -> Result<Vec<(Complex64, u32)>> {
    let mut out: Vec<(Complex64, u32)> = Vec::new();
    match exact {
        Some(q) => {
            for (factor, mult) in yun_squarefree(q) {
                let roots = durand_kerner(&qpoly_to_cpoly(&factor))?;
                for r in roots {
                    out.push((r, mult));
                }
            }
        }
        None => {
            let mut p = numeric.clone();
            cpoly_trim(&mut p);
            let raw = if cpoly_deg(&p) <= 2 {
                closed_form_roots(&p)
            } else {
                durand_kerner(&p)?
            };
            out = cluster_roots(&raw, radius)?;
        }
    }
    out.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).expect("finite roots"));
    Ok(out)
}
