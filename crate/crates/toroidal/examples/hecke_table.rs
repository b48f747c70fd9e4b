//! Hecke eigenvalues and the Jordan structure on derivative families.
//!
//! At a character `χ` and place `x`, the operator `Φ_x` acts on the span of
//! the Eisenstein derivative family by a lower-triangular Leibniz matrix
//! with the single eigenvalue `λ_x(χ)`. This example prints the eigenvalue
//! pair `(λ, λ⁻)` for small places, the Jordan matrix, its minimal-polynomial
//! degree (single-block criterion), the commutation of two such actions, and
//! the temperedness window of the toroidal point on `y² + y = x³ / F_2`.
//!
//! Run with `cargo run --example hecke_table`.

use num_complex::Complex64;
use toroidal::character::{QuasiCharacter, UnramifiedCharacter};
use toroidal::curve::Curve;
use toroidal::field::FiniteField;
use toroidal::function_field::{FunctionField, Options};
use toroidal::hecke::{
    eigen_data, is_tempered, jordan_matrix, linear_relation_defect, mat_mul, min_poly_degree,
    BasisKind,
};
use toroidal::poly::FqPoly;

fn main() -> toroidal::Result<()> {
    let k = FiniteField::new(2, 1)?;
    let f = FqPoly::from_ints(&k, &[0, 0, 0, 1]);
    let curve = Curve::hyperelliptic(k, f, FqPoly::one())?;
    let ff = FunctionField::build(curve, &Options::default())?;
    println!("curve: {}", ff.curve().equation());

    // The toroidal point: trivial finite part, T0 = i, where L(χ, 1/2) = 0.
    let chi = QuasiCharacter {
        finite: UnramifiedCharacter::trivial(ff.class_table()),
        t0: Complex64::new(0.0, 1.0),
    };

    println!();
    println!("eigenvalues at chi = (trivial, T0 = i):");
    println!("{:<14} {:>3} {:>24} {:>24}", "place", "deg", "lambda", "lambda_minus");
    for i in 0..ff.places().len() {
        let e = eigen_data(&ff, &chi, i);
        if e.degree > 3 {
            continue;
        }
        println!(
            "{:<14} {:>3} {:>24} {:>24}",
            ff.places()[i].label(),
            e.degree,
            format!("{:.6}{:+.6}i", e.lambda.re, e.lambda.im),
            format!("{:.6}{:+.6}i", e.lambda_minus.re, e.lambda_minus.im),
        );
    }

    // Jordan matrix of Φ at the first degree-one place, on a length-3 family.
    let action = jordan_matrix(&ff, &chi, 0, 3, BasisKind::Eisenstein)?;
    println!();
    println!("Jordan action of Phi at {} on (E, E', E''):", ff.places()[0].label());
    for row in &action.matrix {
        let cells: Vec<String> =
            row.iter().map(|z| format!("{:.4}{:+.4}i", z.re, z.im)).collect();
        println!("  [{}]", cells.join("  "));
    }
    println!(
        "minimal polynomial degree {} of {} (single block iff lambda_minus != 0)",
        min_poly_degree(&action),
        action.n
    );
    println!(
        "linear-relation defect at this place: {:.6e}",
        linear_relation_defect(&ff, &chi, 0).norm()
    );

    // Two places commute on the family.
    let other = jordan_matrix(&ff, &chi, 3, 3, BasisKind::Eisenstein)?;
    let ab = mat_mul(&action.matrix, &other.matrix);
    let ba = mat_mul(&other.matrix, &action.matrix);
    let defect = ab
        .iter()
        .zip(&ba)
        .flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).norm()))
        .fold(0.0f64, f64::max);
    println!("commutator norm with the action at {}: {:.2e}", ff.places()[3].label(), defect);

    // Temperedness: the certified window report.
    let report = is_tempered(&ff, &chi)?;
    println!();
    println!(
        "tempered: {} (critical-line shift criterion), window criterion: {}",
        report.tempered(),
        report.by_window
    );
    for w in &report.per_place {
        println!(
            "  {}: lambda {:.6}{:+.6}i in [-{b:.6}, {b:.6}] -> {}",
            ff.places()[w.place_index].label(),
            w.lambda.re,
            w.lambda.im,
            w.inside,
            b = w.bound,
        );
    }
    Ok(())
}
