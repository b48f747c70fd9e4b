//! L-polynomials of unramified characters, with both computation routes.
//!
//! For `y² + y = x³` over `F_2`: the exact zeta numerator from point counts,
//! the L-polynomial of every `Pic⁰` character from class-weighted divisor
//! counts, the independent Euler-product cross-check, and the
//! functional-equation residual with its ε-factor.
//!
//! Run with `cargo run --example l_polynomials`.

use num_complex::Complex64;
use toroidal::character::QuasiCharacter;
use toroidal::curve::Curve;
use toroidal::field::FiniteField;
use toroidal::function_field::{FunctionField, Options};
use toroidal::lfun::{
    epsilon_factor, euler_truncation, fe_residual_max, l_series, l_value, series_expansion, LTable,
};
use toroidal::poly::FqPoly;

fn main() -> toroidal::Result<()> {
    let k = FiniteField::new(2, 1)?;
    let f = FqPoly::from_ints(&k, &[0, 0, 0, 1]);
    let curve = Curve::hyperelliptic(k, f, FqPoly::one())?;
    let ff = FunctionField::build(curve, &Options::default())?;
    let lt = LTable::build(&ff)?;

    println!("curve: {} (q = {}, g = {}, h = {})", ff.curve().equation(), ff.q(), ff.genus(), ff.h());
    println!();

    for poly in lt.polys() {
        let omega = &lt.omegas()[poly.omega_index];
        print!("L({}, T) coefficients:", omega.label());
        match &poly.exact {
            Some(exact) => {
                let ints: Vec<String> = exact.iter().map(|c| c.to_string()).collect();
                println!(" [{}] (exact)", ints.join(", "));
            }
            None => {
                let cs: Vec<String> = poly
                    .coeffs
                    .iter()
                    .map(|c| format!("{:.6}{:+.6}i", c.re, c.im))
                    .collect();
                println!(" [{}]", cs.join(", "));
            }
        }
    }
    println!();

    // Route 1: class-weighted divisor counts (what the table stores).
    // Route 2: truncated Euler product over the enumerated places.
    println!("divisor-sum vs Euler-product series for each character, through degree 4:");
    for omega in lt.omegas() {
        let chi = QuasiCharacter::finite_order(omega.clone());
        let divisor = series_expansion(&l_series(&lt, &ff, omega), 4);
        let euler = euler_truncation(&ff, &chi, 4)?;
        let gap = divisor
            .iter()
            .zip(&euler)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        println!("  {}: max coefficient gap {:.2e}", omega.label(), gap);
    }
    println!();

    println!("functional-equation residual over 20 sample points per character:");
    for omega in lt.omegas() {
        let r = fe_residual_max(&ff, &lt, omega, 20, 7)?;
        println!("  {}: {:.2e}", omega.label(), r);
    }
    println!();

    // A point evaluation with its ε-factor: L(χ, s) against the dual side.
    let omega = lt.omegas()[1].clone();
    let chi = QuasiCharacter::finite_order(omega);
    let s = Complex64::new(0.5, 0.3);
    let left = l_value(&ff, &lt, &chi, Complex64::new(0.5, 0.0) + s)?;
    let eps = epsilon_factor(&ff, &chi, s)?;
    let right = l_value(&ff, &lt, &chi.inverse(ff.class_table()), Complex64::new(0.5, 0.0) - s)?;
    println!("L(chi, 1/2 + s)            = {left:.9}");
    println!("eps(chi, s) L(1/chi, 1/2-s) = {:.9}", eps * right);
    Ok(())
}
