//! End-to-end acceptance gate.
//!
//! Ten numbered checks, each printing exactly one verdict line; every
//! tolerance is pinned as a named constant next to the assertions that use
//! it. Run with `cargo test --test acceptance -- --nocapture` to see the
//! verdict lines.

use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use toroidal::character::{character_group, Chi2Type, QuasiCharacter, UnramifiedCharacter};
use toroidal::curve::Curve;
use toroidal::field::FiniteField;
use toroidal::function_field::{FunctionField, Options};
use toroidal::hecke::{
    eigen_data, is_tempered, jordan_matrix, mat_mul, mat_norm, min_poly_degree, BasisKind,
};
use toroidal::lfun::{
    epsilon_factor, euler_truncation, fe_residual_max, l_series, l_value, series_expansion, LTable,
};
use toroidal::periods::{
    nonsplit_period, period_vanishing_order, split_period, toroidal_certificates,
    toroidal_dimension, twist_witness, verify_twist_polynomial, TwistCandidate,
};
use toroidal::poly::FqPoly;

// Pinned tolerances and parameters.
const TOL_ORACLE: f64 = 1e-10; // divisor-sum vs Euler-product coefficients
const TOL_FE: f64 = 1e-9; // functional equation residual
const TOL_RH: f64 = 1e-9; // zero modulus against q^{-1/2}
const ZERO_SNAP: f64 = 1e-8; // radius for "this zero sits at +-q^{-1/2}"
const TOL_INT: f64 = 1e-6; // integrality of independently derived counts
const TOL_COMMUTE: f64 = 1e-10; // relative commutator norm
const TOL_LAMBDA_MINUS: f64 = 1e-10; // lambda-minus nonvanishing threshold
const TOL_WINDOW: f64 = 1e-9; // temperedness window slack
const TOL_VANISH: f64 = 1e-9; // period ladder vanishing
const TOL_FD_REL: f64 = 1e-6; // relative finite-difference agreement
const FD_STEP_1: f64 = 1e-5; // central difference step, first derivative
const FD_STEP_2: f64 = 4e-3; // five-point stencil step, second derivative
const FE_SAMPLES: u32 = 20;
const FE_SEED: u64 = 20260823;
const RUNTIME_BUDGET_SECS: f64 = 60.0;

struct Fixture {
    name: &'static str,
    expected_dimension: u64,
    ff: FunctionField,
    lt: LTable,
}

fn build(name: &'static str, expected_dimension: u64, curve: Curve) -> Fixture {
    let ff = FunctionField::build(curve, &Options::default()).unwrap();
    let lt = LTable::build(&ff).unwrap();
    Fixture { name, expected_dimension, ff, lt }
}

/// All six reference curves with their expected toroidal dimensions.
fn fixtures() -> Vec<Fixture> {
    let k2 = FiniteField::new(2, 1).unwrap();
    let k3 = FiniteField::new(3, 1).unwrap();
    let k4 = FiniteField::new(2, 2).unwrap();
    vec![
        build("P1/F2", 0, Curve::rational(k2.clone())),
        build("P1/F3", 0, Curve::rational(k3.clone())),
        build("E/F2: y^2+y=x^3", 1, {
            let f = FqPoly::from_ints(&k2, &[0, 0, 0, 1]);
            Curve::hyperelliptic(k2, f, FqPoly::one()).unwrap()
        }),
        build("E/F3: y^2=x^3-x", 1, {
            let f = FqPoly::from_ints(&k3, &[0, -1, 0, 1]);
            Curve::hyperelliptic(k3.clone(), f, FqPoly::zero()).unwrap()
        }),
        build("E/F4: y^2+y=x^3", 1, {
            let f = FqPoly::from_ints(&k4, &[0, 0, 0, 1]);
            Curve::hyperelliptic(k4, f, FqPoly::one()).unwrap()
        }),
        build("C2/F3: y^2=x^5+1", 11, {
            let f = FqPoly::from_ints(&k3, &[1, 0, 0, 0, 0, 1]);
            Curve::hyperelliptic(k3, f, FqPoly::zero()).unwrap()
        }),
    ]
}

fn verdict(name: &str, failures: Vec<String>) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("acceptance {name:<24} {status}");
    assert!(failures.is_empty(), "{name} failed:\n  {}", failures.join("\n  "));
}

/// Class number from raw point counts alone: exponentiate the count series
/// into the zeta series, clear the rational-field poles, and evaluate the
/// resulting numerator at `T = 1`. This route never touches the divisor
/// class group, so it is an independent oracle for `h`.
fn class_number_from_counts(q: u64, genus: u32, counts: &[u64]) -> f64 {
    let n = 2 * genus as usize;
    assert!(counts.len() >= n, "need point counts through degree 2g");
    let mut z = vec![0.0f64; n + 1];
    z[0] = 1.0;
    for r in 1..=n {
        let mut acc = 0.0;
        for d in 1..=r {
            acc += counts[d - 1] as f64 * z[r - d];
        }
        z[r] = acc / r as f64;
    }
    let a = 1.0 + q as f64;
    let b = q as f64;
    let mut total = 0.0;
    for r in 0..=n {
        let mut c = z[r];
        if r >= 1 {
            c -= a * z[r - 1];
        }
        if r >= 2 {
            c += b * z[r - 2];
        }
        total += c;
    }
    total
}

#[test]
fn c01_dimension_theorem() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for fx in fixtures() {
        let ff = &fx.ff;
        let g = ff.genus();
        // Independent class number from point counts; the group-enumeration
        // route must agree with it before it is allowed into the formula.
        let h_raw = class_number_from_counts(ff.q(), g, ff.point_counts());
        if (h_raw - h_raw.round()).abs() > TOL_INT {
            failures.push(format!("{}: point-count class number {h_raw} is not integral", fx.name));
            continue;
        }
        let h_independent = h_raw.round() as u64;
        if h_independent != ff.h() {
            failures.push(format!(
                "{}: class group says h = {}, point counts say {}",
                fx.name,
                ff.h(),
                h_independent
            ));
        }
        let predicted = (i64::from(g) - 1) * h_independent as i64 + 1;
        let dim = toroidal_dimension(ff, &fx.lt).unwrap();
        if dim.dimension != fx.expected_dimension
            || dim.predicted != fx.expected_dimension
            || predicted != fx.expected_dimension as i64
        {
            failures.push(format!(
                "{}: dimension {} / formula {} / expected {}",
                fx.name, dim.dimension, dim.predicted, fx.expected_dimension
            ));
        }
        if dim.cover_genus != dim.dimension {
            failures.push(format!(
                "{}: cover genus {} disagrees with dimension {}",
                fx.name, dim.cover_genus, dim.dimension
            ));
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    if elapsed >= RUNTIME_BUDGET_SECS {
        failures.push(format!("runtime {elapsed:.1}s exceeds {RUNTIME_BUDGET_SECS}s"));
    }
    verdict("01 dimension-theorem", failures);
}

#[test]
fn c02_oracle_equivalence() {
    let mut failures = Vec::new();
    for fx in fixtures() {
        let ff = &fx.ff;
        let table = ff.class_table();
        let depth = (2 * ff.genus()).max(2).min(ff.d_max());
        for c in character_group(table) {
            let chi = QuasiCharacter::finite_order(c.clone());
            let mut divisor = series_expansion(&l_series(&fx.lt, ff, &c), depth as usize);
            if c.delta % 2 == 1 {
                for (j, coeff) in divisor.iter_mut().enumerate() {
                    if j % 2 == 1 {
                        *coeff = -*coeff;
                    }
                }
            }
            let euler = euler_truncation(ff, &chi, depth).unwrap();
            let gap = divisor
                .iter()
                .zip(&euler)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            let exact_route = fx.lt.poly_of(&c, ff).exact.is_some();
            if exact_route && gap != 0.0 {
                failures.push(format!(
                    "{} char {}: exact-path coefficient gap {gap:.3e} (want exactly 0)",
                    fx.name,
                    c.label()
                ));
            } else if gap > TOL_ORACLE {
                failures.push(format!(
                    "{} char {}: coefficient gap {gap:.3e} > {TOL_ORACLE:.0e}",
                    fx.name,
                    c.label()
                ));
            }
        }
    }
    verdict("02 oracle-equivalence", failures);
}

#[test]
fn c03_functional_equation() {
    let mut failures = Vec::new();
    let s_probe = Complex64::new(0.0, 0.3);
    let half = Complex64::new(0.5, 0.0);
    for fx in fixtures() {
        let ff = &fx.ff;
        for omega in fx.lt.omegas() {
            let residual = fe_residual_max(ff, &fx.lt, omega, FE_SAMPLES, FE_SEED).unwrap();
            if residual > TOL_FE {
                failures.push(format!(
                    "{} char {}: residual {residual:.3e} > {TOL_FE:.0e} over {FE_SAMPLES} samples",
                    fx.name,
                    omega.label()
                ));
            }
            // The closed-form epsilon factor at a fixed offset: the defining
            // identity must close to the same tolerance.
            let chi = QuasiCharacter::finite_order(omega.clone());
            let left = l_value(ff, &fx.lt, &chi, half + s_probe).unwrap();
            let eps = epsilon_factor(ff, &chi, s_probe).unwrap();
            let right =
                l_value(ff, &fx.lt, &chi.inverse(ff.class_table()), half - s_probe).unwrap();
            let gap = (left - eps * right).norm() / left.norm().max(1.0);
            if gap > TOL_FE {
                failures.push(format!(
                    "{} char {}: epsilon identity off by {gap:.3e}",
                    fx.name,
                    omega.label()
                ));
            }
        }
    }
    verdict("03 functional-equation", failures);
}

#[test]
fn c04_zero_modulus() {
    let mut failures = Vec::new();
    for fx in fixtures() {
        let target = (fx.ff.q() as f64).powf(-0.5);
        for poly in fx.lt.polys() {
            for &(tau, mult) in &poly.zeros {
                let err = (tau.norm() - target).abs();
                if err > TOL_RH {
                    failures.push(format!(
                        "{} char index {}: zero {tau} (mult {mult}) off modulus by {err:.3e}",
                        fx.name, poly.omega_index
                    ));
                }
            }
        }
    }
    verdict("04 zero-modulus", failures);
}

#[test]
fn c05_even_multiplicity() {
    let mut failures = Vec::new();
    // The F_4 curve pins the concrete case: a double zero at tau = -1/2.
    let fixtures = fixtures();
    let f4 = fixtures.iter().find(|fx| fx.name.starts_with("E/F4")).unwrap();
    let principal = &f4.lt.polys()[0];
    match principal
        .zeros
        .iter()
        .find(|(tau, _)| (tau - Complex64::new(-0.5, 0.0)).norm() < ZERO_SNAP)
    {
        Some(&(_, mult)) if mult == 2 => {}
        Some(&(_, mult)) => {
            failures.push(format!("E/F4 zero at -1/2 has multiplicity {mult}, want exactly 2"))
        }
        None => failures.push("E/F4 principal polynomial has no zero at -1/2".to_string()),
    }
    // Suite-wide: every order-<=2 character with a zero at a self-dual point
    // +-q^{-1/2} must carry it with even multiplicity.
    for fx in &fixtures {
        let table = fx.ff.class_table();
        let r = (fx.ff.q() as f64).powf(-0.5);
        for poly in fx.lt.polys() {
            let omega = &fx.lt.omegas()[poly.omega_index];
            if !omega.square(table).is_trivial() {
                continue;
            }
            for &(tau, mult) in &poly.zeros {
                let self_dual = (tau - Complex64::new(r, 0.0)).norm() < ZERO_SNAP
                    || (tau - Complex64::new(-r, 0.0)).norm() < ZERO_SNAP;
                if self_dual && mult % 2 != 0 {
                    failures.push(format!(
                        "{} char {}: self-dual zero {tau} with odd multiplicity {mult}",
                        fx.name,
                        omega.label()
                    ));
                }
            }
        }
    }
    verdict("05 even-multiplicity", failures);
}

#[test]
fn c06_cover_identity() {
    let mut failures = Vec::new();
    let zero = BigInt::from(0u32);
    for fx in fixtures() {
        let ff = &fx.ff;
        // Construction already enforces that the complex product rounds to
        // integers within 1e-6; reaching this point certifies integrality.
        let cover = fx.lt.cover();
        let expected_genus = fx.expected_dimension;
        let degree = cover.coeffs.len() as u64 - 1;
        if cover.genus != expected_genus || degree != 2 * expected_genus {
            failures.push(format!(
                "{}: cover genus {} degree {degree}, want genus {expected_genus} degree {}",
                fx.name,
                cover.genus,
                2 * expected_genus
            ));
        }
        let at_one: BigInt = cover.coeffs.iter().cloned().sum();
        if at_one == zero {
            failures.push(format!("{}: cover numerator vanishes at T = 1", fx.name));
        }
        let q = BigInt::from(ff.q());
        let mut at_inv_q = BigInt::from(0u32);
        for (j, c) in cover.coeffs.iter().enumerate() {
            at_inv_q += c * q.pow((degree as usize - j) as u32);
        }
        if at_inv_q == zero {
            failures.push(format!("{}: cover numerator vanishes at T = 1/q", fx.name));
        }
    }
    verdict("06 cover-identity", failures);
}

#[test]
fn c07_hecke_structure() {
    let mut failures = Vec::new();
    for fx in fixtures() {
        let ff = &fx.ff;
        let table = ff.class_table();
        // Self-dual test characters (chi^2 = 1) and generic ones.
        let mut tested: Vec<QuasiCharacter> = character_group(table)
            .into_iter()
            .filter(|c| c.square(table).is_trivial())
            .map(QuasiCharacter::finite_order)
            .collect();
        tested.push(
            QuasiCharacter::from_t0(UnramifiedCharacter::trivial(table), Complex64::i()).unwrap(),
        );
        if fx.lt.omegas().len() > 1 {
            tested.push(
                QuasiCharacter::from_t0(
                    fx.lt.omegas()[1].clone(),
                    Complex64::new(0.0, 0.7).exp(),
                )
                .unwrap(),
            );
        }
        let places: Vec<usize> = (0..ff.places().len())
            .filter(|&i| ff.places()[i].degree <= 3)
            .collect();
        for chi in &tested {
            let kind = match chi.chi2_type(table, ff.q(), ff.tolerance()) {
                Chi2Type::One => BasisKind::EvenDerivative,
                Chi2Type::Generic => BasisKind::Eisenstein,
                // Norm-type characters route to the residue basis; the
                // single-block criterion below does not apply to them.
                _ => continue,
            };
            let self_dual = kind == BasisKind::EvenDerivative;
            let actions: Vec<_> = places
                .iter()
                .map(|&i| jordan_matrix(ff, chi, i, 3, kind).unwrap())
                .collect();
            for (a_pos, a) in actions.iter().enumerate() {
                for b in &actions[a_pos + 1..] {
                    let ab = mat_mul(&a.matrix, &b.matrix);
                    let ba = mat_mul(&b.matrix, &a.matrix);
                    let comm: f64 = ab
                        .iter()
                        .flatten()
                        .zip(ba.iter().flatten())
                        .map(|(x, y)| (x - y).norm())
                        .fold(0.0, f64::max);
                    let scale = 1.0 + mat_norm(&a.matrix) * mat_norm(&b.matrix);
                    if comm > TOL_COMMUTE * scale {
                        failures.push(format!(
                            "{}: actions at places {} and {} fail to commute ({comm:.3e})",
                            fx.name, a.place_index, b.place_index
                        ));
                    }
                }
            }
            let mut any_lambda_minus = false;
            for (&i, action) in places.iter().zip(&actions) {
                let data = eigen_data(ff, chi, i);
                let lm = data.lambda_minus.norm();
                if lm > 0.0 {
                    any_lambda_minus = true;
                }
                if self_dual {
                    if lm != 0.0 {
                        failures.push(format!(
                            "{}: chi^2 = 1 but lambda-minus = {lm:.3e} at place {i}",
                            fx.name
                        ));
                    }
                } else {
                    // Single Jordan block exactly when lambda-minus is
                    // nonzero at the place.
                    let single = min_poly_degree(action) == 3;
                    if single != (lm > TOL_LAMBDA_MINUS) {
                        failures.push(format!(
                            "{}: single-block {single} vs lambda-minus {lm:.3e} at place {i}",
                            fx.name
                        ));
                    }
                }
            }
            if !self_dual && !any_lambda_minus {
                failures.push(format!(
                    "{}: generic character {} has lambda-minus = 0 at every tested place",
                    fx.name,
                    chi.finite.label()
                ));
            }
        }
    }
    verdict("07 hecke-structure", failures);
}

#[test]
fn c08_temperedness() {
    let mut failures = Vec::new();
    let mut certified = 0usize;
    for fx in fixtures() {
        for cert in toroidal_certificates(&fx.ff, &fx.lt).unwrap() {
            certified += 1;
            if !cert.tempered {
                failures.push(format!("{} pair {}: certificate not tempered", fx.name, cert.pair_index));
                continue;
            }
            let report = is_tempered(&fx.ff, &cert.chi).unwrap();
            if !report.tempered() {
                failures.push(format!("{} pair {}: re-check not tempered", fx.name, cert.pair_index));
            }
            for window in &report.per_place {
                let ok = window.inside && window.lambda.re.abs() <= window.bound + TOL_WINDOW;
                if !ok {
                    failures.push(format!(
                        "{} pair {}: lambda {:.6} outside [-{b:.6}, {b:.6}] at place {}",
                        fx.name,
                        cert.pair_index,
                        window.lambda.re,
                        window.place_index,
                        b = window.bound
                    ));
                }
            }
        }
    }
    if certified == 0 {
        failures.push("no toroidal certificates were produced at all".to_string());
    }
    verdict("08 temperedness", failures);
}

#[test]
fn c09_period_derivatives() {
    let mut failures = Vec::new();
    let fixtures = fixtures();

    // Finite-difference agreement at points with no central zero.
    let fd_points = [("E/F2: y^2+y=x^3", 0.30f64), ("E/F3: y^2=x^3-x", 0.25f64)];
    for (name, angle) in fd_points {
        let fx = fixtures.iter().find(|fx| fx.name == name).unwrap();
        let chi = QuasiCharacter::from_t0(
            UnramifiedCharacter::trivial(fx.ff.class_table()),
            Complex64::new(0.0, angle).exp(),
        )
        .unwrap();
        let sq = |ds: f64| -> Complex64 {
            let s = Complex64::new(0.5 + ds, 0.0);
            let v = l_value(&fx.ff, &fx.lt, &chi, s).unwrap();
            v * v
        };
        let p1 = split_period(&fx.ff, &fx.lt, &chi, 1).unwrap();
        let fd1 = (sq(FD_STEP_1) - sq(-FD_STEP_1)) / (2.0 * FD_STEP_1);
        let rel1 = (p1 - fd1).norm() / p1.norm();
        if rel1 > TOL_FD_REL {
            failures.push(format!("{name}: first derivative off by {rel1:.3e} relative"));
        }
        let d = FD_STEP_2;
        let fd2 = (-sq(-2.0 * d) + 16.0 * sq(-d) - 30.0 * sq(0.0) + 16.0 * sq(d) - sq(2.0 * d))
            / (12.0 * d * d);
        let p2 = split_period(&fx.ff, &fx.lt, &chi, 2).unwrap();
        let rel2 = (p2 - fd2).norm() / p2.norm();
        if rel2 > TOL_FD_REL {
            failures.push(format!("{name}: second derivative off by {rel2:.3e} relative"));
        }
    }

    // Vanishing ladders at every central zero: orders below the product
    // vanishing order are zero, the order itself is not.
    let mut ladders = 0usize;
    for fx in &fixtures {
        let table = fx.ff.class_table();
        for cert in toroidal_certificates(&fx.ff, &fx.lt).unwrap() {
            let chi = &cert.chi;
            match chi.chi2_type(table, fx.ff.q(), fx.ff.tolerance()) {
                Chi2Type::Generic => {
                    ladders += 1;
                    let n = period_vanishing_order(&fx.ff, &fx.lt, chi, None);
                    for j in 0..n {
                        let p = split_period(&fx.ff, &fx.lt, chi, j).unwrap();
                        if p.norm() >= TOL_VANISH {
                            failures.push(format!(
                                "{} pair {}: split period order {j} = {:.3e}, expected < {TOL_VANISH:.0e}",
                                fx.name,
                                cert.pair_index,
                                p.norm()
                            ));
                        }
                    }
                    let top = split_period(&fx.ff, &fx.lt, chi, n).unwrap();
                    if top.norm() < TOL_VANISH {
                        failures.push(format!(
                            "{} pair {}: split period order {n} vanishes unexpectedly",
                            fx.name, cert.pair_index
                        ));
                    }
                }
                Chi2Type::One => {
                    // Self-dual central zero: the split closed form does not
                    // apply, but the nonsplit ladder against the sign
                    // character shows the same vanishing pattern.
                    ladders += 1;
                    let eta = UnramifiedCharacter::sign(table);
                    let n = period_vanishing_order(&fx.ff, &fx.lt, chi, Some(&eta));
                    for j in 0..n {
                        let p = nonsplit_period(&fx.ff, &fx.lt, chi, &eta, j).unwrap();
                        if p.norm() >= TOL_VANISH {
                            failures.push(format!(
                                "{} pair {}: nonsplit period order {j} = {:.3e}",
                                fx.name,
                                cert.pair_index,
                                p.norm()
                            ));
                        }
                    }
                    let top = nonsplit_period(&fx.ff, &fx.lt, chi, &eta, n).unwrap();
                    if top.norm() < TOL_VANISH {
                        failures.push(format!(
                            "{} pair {}: nonsplit period order {n} vanishes unexpectedly",
                            fx.name, cert.pair_index
                        ));
                    }
                }
                _ => {}
            }
        }
    }
    if ladders == 0 {
        failures.push("no central-zero ladders were exercised".to_string());
    }
    verdict("09 period-derivatives", failures);
}

#[test]
fn c10_twist_nonvanishing() {
    let mut failures = Vec::new();
    let k3 = FiniteField::new(3, 1).unwrap();
    let ff = FunctionField::build(Curve::rational(k3.clone()), &Options::default()).unwrap();
    let lt = LTable::build(&ff).unwrap();
    let table = ff.class_table();
    for k in 0..10u32 {
        let theta = 2.0 * std::f64::consts::PI * f64::from(k) / 10.0;
        let chi = QuasiCharacter::from_t0(
            UnramifiedCharacter::trivial(table),
            Complex64::new(0.0, theta).exp(),
        )
        .unwrap();
        let search = twist_witness(&ff, &lt, &chi, false, 4).unwrap();
        if !search.guaranteed {
            failures.push(format!("point {k}: odd-q guarantee flag missing"));
        }
        match search.witness {
            Some(witness) => {
                if witness.value.norm() <= ff.tolerance() {
                    failures.push(format!(
                        "point {k}: witness value {:.3e} at or below tolerance",
                        witness.value.norm()
                    ));
                }
                match witness.candidate {
                    TwistCandidate::RationalPoly(d) => {
                        // Re-run the independent point-count verification on
                        // the winning twist (the search already checks every
                        // candidate internally).
                        let twist = toroidal::periods::rational_twist_l(&k3, &d).unwrap();
                        if let Err(e) = verify_twist_polynomial(&k3, &d, &twist) {
                            failures.push(format!("point {k}: winner fails re-verification: {e}"));
                        }
                        if !d.is_squarefree(&k3) || d.deg() > 4 {
                            failures.push(format!(
                                "point {k}: winner {} outside the contracted search space",
                                d.render(&k3)
                            ));
                        }
                    }
                    TwistCandidate::Unramified(_) => failures.push(format!(
                        "point {k}: sign twists were excluded, witness should be rational"
                    )),
                }
            }
            None => {
                // A completed search without a witness is property-based
                // coverage, not a refutation - but on this base d = x always
                // gives |L| = 1, so reaching here means the search is broken.
                failures.push(format!(
                    "point {k}: no witness found; note: {}",
                    search.note.as_deref().unwrap_or("missing")
                ));
            }
        }
    }
    // One search with the sign twists admitted: the unramified stage runs
    // first and the known closed-form value sqrt(3)/4 appears.
    let chi =
        QuasiCharacter::from_t0(UnramifiedCharacter::trivial(table), Complex64::i()).unwrap();
    let search = twist_witness(&ff, &lt, &chi, true, 4).unwrap();
    match search.witness {
        Some(witness) => {
            let expected = 3f64.sqrt() / 4.0;
            if (witness.value.norm() - expected).abs() > TOL_FE {
                failures.push(format!(
                    "sign-twist witness value {:.9} differs from {expected:.9}",
                    witness.value.norm()
                ));
            }
            if !matches!(witness.candidate, TwistCandidate::Unramified(_)) {
                failures.push("sign-twist stage should have produced the witness".to_string());
            }
        }
        None => failures.push("sign-twist search found no witness".to_string()),
    }
    verdict("10 twist-nonvanishing", failures);
}
