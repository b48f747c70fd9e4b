//! The divisor class group: Mumford coordinates, Cantor addition, and the
//! group structure.
//!
//! Works in the Jacobian of `y² = x⁵ + 1` over `F_3` (genus 2, h = 10):
//! adds two divisor classes in Mumford form, then shows the invariant-factor
//! decomposition of `Pic⁰` and the canonical class.
//!
//! Run with `cargo run --example class_group`.

use toroidal::curve::Curve;
use toroidal::field::FiniteField;
use toroidal::picard::{canonical_class, class_group, JacobianOps, Mumford};
use toroidal::poly::FqPoly;

fn main() -> toroidal::Result<()> {
    let k = FiniteField::new(3, 1)?;
    let f = FqPoly::from_ints(&k, &[1, 0, 0, 0, 0, 1]);
    let curve = Curve::hyperelliptic(k.clone(), f, FqPoly::zero())?;
    println!("curve: {}", curve.equation());

    let ops = JacobianOps::new(&curve).expect("hyperelliptic model");

    // The class of the affine point (0, 1): u = x, v = 1.
    let p = ops.reduce_pair(FqPoly::from_ints(&k, &[0, 1]), FqPoly::from_ints(&k, &[1]));
    // The class of (2, 0): a 2-torsion point since y = 0.
    let q = ops.reduce_pair(FqPoly::from_ints(&k, &[-2, 1]), FqPoly::zero());
    println!("P        = {}", p.render(&k));
    println!("Q        = {}", q.render(&k));
    println!("P + Q    = {}", ops.add(&p, &q).render(&k));
    println!("P - P    = {}", ops.add(&p, &ops.neg(&p)).render(&k));
    println!("2Q       = {} (Q is 2-torsion)", ops.add(&q, &q).render(&k));
    assert!(ops.add(&q, &q).is_identity());

    let table = class_group(&curve)?;
    println!();
    println!("class number h = {}", table.h());
    let factors: Vec<String> =
        table.invariant_factors.iter().map(|n| format!("Z/{n}")).collect();
    println!("Pic0 = {}", factors.join(" x "));
    println!("group exponent = {}", table.exponent());

    let m = table.index_of(&p).expect("enumerated class");
    println!();
    println!("index of [P]: {m}");
    println!("index of 2[P]: {}", table.scalar(m, 2));
    println!("order of [P]: {}", (1..).find(|&n| table.scalar(m, n) == table.identity()).unwrap());

    let (canon, degree) = canonical_class(&curve, &table)?;
    println!();
    println!(
        "canonical class: index {canon} at degree {degree} (2g - 2 = {})",
        2 * i64::from(curve.genus()) - 2
    );
    // The canonical class is a square in the class group: some class doubles
    // to it (here Pic is cut back to degree 0 through the base point).
    let square_root = (0..table.h() as u32).find(|&c| table.add(c, c) == canon);
    println!("a half of it: {:?}", square_root);

    let identity = Mumford::identity();
    println!();
    println!("identity element: {}", identity.render(&k));
    Ok(())
}
