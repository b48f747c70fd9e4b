//! Toroidal periods of Eisenstein series: the split ladder and its zeros.
//!
//! The split-torus period of the `n`-th derivative Eisenstein family is the
//! Leibniz pairing `Σ C(n,j)·L⁽ʲ⁾(χ,½)·L⁽ⁿ⁻ʲ⁾(χ,½)`, i.e. the `n`-th
//! `s`-derivative of `L(χ,s)²` at the center. At a central zero of order `m`
//! the first `2m` rungs of the ladder vanish and the next one does not; away
//! from zeros the rung values match a finite-difference derivative of the
//! squared central value.
//!
//! Run with `cargo run --example periods`.

use num_complex::Complex64;
use toroidal::character::{QuasiCharacter, UnramifiedCharacter};
use toroidal::curve::Curve;
use toroidal::field::FiniteField;
use toroidal::function_field::{FunctionField, Options};
use toroidal::lfun::{l_value, LTable};
use toroidal::poly::FqPoly;
use toroidal::periods::{
    central_zero_order, nonsplit_period, period_vanishing_order, split_period, split_period_at,
};

fn main() -> toroidal::Result<()> {
    // y² + y = x³ over F₂: class number 3, central zeros at τ = ±i/√2.
    let k = FiniteField::new(2, 1)?;
    let f = FqPoly::from_ints(&k, &[0, 0, 0, 1]);
    let curve = Curve::hyperelliptic(k, f, FqPoly::one())?;
    let ff = FunctionField::build(curve, &Options::default())?;
    let lt = LTable::build(&ff)?;
    let table = ff.class_table();
    let q = ff.q();

    println!("curve: {}  (q = {}, g = {}, h = {})", ff.curve().equation(), q, ff.genus(), ff.h());

    // --- The vanishing ladder at a toroidal point -------------------------
    // T₀ = i puts the evaluation argument at τ = i/√2, a simple zero of the
    // trivial-character L-polynomial 1 + 2T².
    let at_zero = QuasiCharacter::from_t0(UnramifiedCharacter::trivial(table), Complex64::i())?;
    let m = central_zero_order(&ff, &lt, &at_zero);
    let n_vanish = period_vanishing_order(&ff, &lt, &at_zero, None);
    println!("\nat T0 = i: central zero order m = {}, split periods vanish through n = {}", m, n_vanish - 1);
    for n in 0..=n_vanish {
        let p = split_period(&ff, &lt, &at_zero, n)?;
        let verdict = if p.norm() < 1e-9 { "vanishes" } else { "nonzero" };
        println!("  split_period(n = {}) = {:>11.4e}{:>+11.4e}i  ({})", n, p.re, p.im, verdict);
    }

    // The nonsplit ladder against the sign character η: the period becomes
    // L(χ,½)·L(χη,½) and the vanishing order adds the orders of both factors.
    let eta = UnramifiedCharacter::sign(table);
    let n_nonsplit = period_vanishing_order(&ff, &lt, &at_zero, Some(&eta));
    println!("\nnonsplit ladder against eta = {} (vanishes through n = {}):", eta.label(), n_nonsplit - 1);
    for n in 0..=n_nonsplit {
        let p = nonsplit_period(&ff, &lt, &at_zero, &eta, n)?;
        let verdict = if p.norm() < 1e-9 { "vanishes" } else { "nonzero" };
        println!("  nonsplit_period(n = {}) = {:>11.4e}{:>+11.4e}i  ({})", n, p.re, p.im, verdict);
    }

    // --- Finite-difference cross-check away from the zeros ----------------
    // At T₀ = e^{0.3i} the center is not a zero; the first rung must agree
    // with a central difference of F(s) = L(χ,s)² across s = ½.
    let generic =
        QuasiCharacter::from_t0(UnramifiedCharacter::trivial(table), Complex64::new(0.0, 0.3).exp())?;
    let half = Complex64::new(0.5, 0.0);
    let step = 1e-5;
    let sq = |s: Complex64| -> toroidal::Result<Complex64> {
        let v = l_value(&ff, &lt, &generic, s)?;
        Ok(v * v)
    };
    let fd1 = (sq(half + step)? - sq(half - step)?) / (2.0 * step);
    let p1 = split_period(&ff, &lt, &generic, 1)?;
    println!("\nat T0 = exp(0.3i) (no central zero):");
    println!("  split_period(n = 1)     = {:.10}{:+.10}i", p1.re, p1.im);
    println!("  finite difference       = {:.10}{:+.10}i", fd1.re, fd1.im);
    println!("  relative gap            = {:.3e}", (p1 - fd1).norm() / p1.norm());

    // --- Periods over a shifted torus orbit -------------------------------
    // Moving the torus by a determinant class multiplies each rung by the
    // character value and a power of the uniformizer; the trinomial Leibniz
    // rule keeps the ladder consistent with the base-point one.
    let cls = ff.place_class_index(0);
    let deg = i64::from(ff.places()[0].degree);
    let shifted = split_period_at(&ff, &lt, &generic, cls, deg, 1)?;
    println!("\nfirst rung over the torus shifted by the class of {} (degree {}):", ff.places()[0].label(), deg);
    println!("  split_period_at(n = 1)  = {:.10}{:+.10}i", shifted.re, shifted.im);
    Ok(())
}
