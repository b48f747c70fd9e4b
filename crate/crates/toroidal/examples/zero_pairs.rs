//! Zeros of L-polynomials: certified multiplicities, the Riemann-hypothesis
//! modulus, functional-equation pairing, and the even-multiplicity theorem.
//!
//! Two curves make the point. Over `F_2`, `y² + y = x³` has a simple central
//! zero pair; over `F_4` the same equation degenerates to `(1 + 2T)²` whose
//! central zero at `τ = −1/2` must (and does) have multiplicity exactly 2,
//! because the trivial character is self-dual there.
//!
//! Run with `cargo run --example zero_pairs`.

use toroidal::curve::Curve;
use toroidal::field::FiniteField;
use toroidal::function_field::{FunctionField, Options};
use toroidal::lfun::LTable;
use toroidal::poly::FqPoly;

fn show(label: &str, p: u32, k: u32) -> toroidal::Result<()> {
    let base = FiniteField::new(p, k)?;
    let f = FqPoly::from_ints(&base, &[0, 0, 0, 1]);
    let curve = Curve::hyperelliptic(base, f, FqPoly::one())?;
    let ff = FunctionField::build(curve, &Options::default())?;
    let lt = LTable::build(&ff)?;
    let q_mod = (ff.q() as f64).powf(-0.5);

    println!("== {label}: {} over F_{} ==", ff.curve().equation(), ff.q());
    for poly in lt.polys() {
        let omega = &lt.omegas()[poly.omega_index];
        if poly.zeros.is_empty() {
            println!("L({}, T): no zeros (degree {})", omega.label(), poly.degree());
            continue;
        }
        println!("L({}, T) zeros:", omega.label());
        for &(z, m) in &poly.zeros {
            println!(
                "  tau = {:.9}{:+.9}i  multiplicity {}  | |tau| - q^(-1/2) | = {:.2e}",
                z.re,
                z.im,
                m,
                (z.norm() - q_mod).abs()
            );
        }
    }
    println!("functional-equation pairs:");
    for pair in lt.pairs() {
        println!(
            "  {} at {:.6}{:+.6}i  <->  {} at {:.6}{:+.6}i   raw multiplicity {}, pair order {}{}",
            lt.omegas()[pair.omega].label(),
            pair.tau.re,
            pair.tau.im,
            lt.omegas()[pair.partner_omega].label(),
            pair.partner_tau.re,
            pair.partner_tau.im,
            pair.raw_multiplicity,
            pair.order,
            if pair.self_paired { "  (self-paired: order = raw/2)" } else { "" }
        );
    }
    println!();
    Ok(())
}

fn main() -> toroidal::Result<()> {
    show("simple pair", 2, 1)?;
    show("double self-dual zero", 2, 2)?;
    Ok(())
}
