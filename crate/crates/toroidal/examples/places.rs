//! Places of a function field: enumeration, degrees, and divisor classes.
//!
//! Builds `F_2(x, y)` with `y² + y = x³` and walks the places up to the
//! working degree bound: the point at infinity, the finite places as
//! Frobenius orbits, and the class of each place in `Pic⁰` relative to the
//! canonical degree-one base point.
//!
//! Run with `cargo run --example places`.

use toroidal::curve::Curve;
use toroidal::field::FiniteField;
use toroidal::function_field::{FunctionField, Options};
use toroidal::poly::FqPoly;

fn main() -> toroidal::Result<()> {
    let k = FiniteField::new(2, 1)?;
    let f = FqPoly::from_ints(&k, &[0, 0, 0, 1]);
    let curve = Curve::hyperelliptic(k, f, FqPoly::one())?;
    let ff = FunctionField::build(curve, &Options::default())?;

    println!("curve: {}", ff.curve().equation());
    println!(
        "q = {}, genus = {}, class number h = {}, places enumerated through degree {}",
        ff.q(),
        ff.genus(),
        ff.h(),
        ff.d_max()
    );
    println!();
    println!("point counts over constant extensions: {:?}", ff.point_counts());
    println!();
    println!("base point A1 = {} (all classes are relative to it)", ff.a1_place().label());
    println!();
    println!("{:<14} {:>6} {:>18}", "place", "degree", "class of x - d*A1");
    for (i, place) in ff.places().iter().enumerate() {
        println!("{:<14} {:>6} {:>18}", place.label(), place.degree, ff.place_class_index(i));
    }
    println!();
    for d in 1..=ff.d_max() {
        let n = ff.places().iter().filter(|p| p.degree == d).count();
        println!("degree {d}: {n} places");
    }
    Ok(())
}
