//! The dimension theorem for the space of toroidal derivative families.
//!
//! For every bundled curve, the sum of central-zero pair orders must equal
//! `(g − 1)·h + 1`, independently matched by the genus of the degree-`h`
//! covering field via the Hurwitz relation `2G − 2 = h(2g − 2)`. Genus-0
//! fields have no toroidal mass; the genus-2 curve over `F_3` carries
//! `h + 1 = 11` families. On even-`q` curves the zero-induced count is
//! certified as a lower bound (and still matches exactly here).
//!
//! Run with `cargo run --example toroidal_dimension`.

use std::path::Path;

use toroidal::analysis::parse_spec;
use toroidal::function_field::{FunctionField, Options};
use toroidal::lfun::LTable;
use toroidal::periods::{toroidal_certificates, toroidal_dimension};

fn main() -> toroidal::Result<()> {
    let curves_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("curves");
    let specs = [
        "rational_f2.json",
        "rational_f3.json",
        "elliptic_f2.json",
        "elliptic_f3.json",
        "elliptic_f4.json",
        "genus2_f3.json",
    ];

    println!(
        "{:<22} {:>3} {:>3} {:>4} {:>9} {:>9} {:>11} {:>6}",
        "curve", "q", "g", "h", "dimension", "(g-1)h+1", "cover genus", "mode"
    );
    for name in specs {
        let text = std::fs::read_to_string(curves_dir.join(name))?;
        let spec = parse_spec(&text)?;
        let curve = spec.to_curve()?;
        let ff = FunctionField::build(curve, &Options::default())?;
        let lt = LTable::build(&ff)?;
        let dim = toroidal_dimension(&ff, &lt)?;
        println!(
            "{:<22} {:>3} {:>3} {:>4} {:>9} {:>9} {:>11} {:>6}",
            ff.curve().equation(),
            ff.q(),
            ff.genus(),
            ff.h(),
            dim.dimension,
            dim.predicted,
            dim.cover_genus,
            if dim.lower_bound_caveat { "lower" } else { "exact" }
        );

        let certs = toroidal_certificates(&ff, &lt)?;
        for cert in certs {
            println!(
                "    pair {}: omega {} at tau {:.6}{:+.6}i, order {}, tempered {}",
                cert.pair_index,
                lt.omegas()[cert.pair.omega].label(),
                cert.tau.re,
                cert.tau.im,
                cert.order,
                cert.tempered
            );
        }
    }
    Ok(())
}
