//! Support diagrams: shaded member cells, hatched unknown cells, and SVG
//! output for the same data.
//!
//! ```bash
//! cargo run --example support_plots > /tmp/plots.txt
//! ```

use tatekit::basefield::{FieldScalar, FieldSpec};
use tatekit::lattice::MonomialSubspace;
use tatekit::plot::{ascii_plot, svg_plot};
use tatekit::series::{BoundCertificate, Exponents, Prec, SliceRule, TruncatedSeries};

fn main() {
    // Half-plane of the standard lattice.
    let l = MonomialSubspace::standard(2, 0);
    println!("standard(0): members shaded");
    print!("{}", ascii_plot(&l, -3, 3));

    // A truncated series: stored coefficients are '#', the region past the
    // precision cutoffs is '?', certified-absent cells are '.'.
    let q = FieldSpec::Rationals;
    let s = TruncatedSeries::new(
        q.clone(),
        BoundCertificate {
            lo: vec![SliceRule::affine(0, 0, -1), SliceRule::constant(0)],
            hi: vec![Prec::Finite(2), Prec::Finite(3)],
        },
        vec![
            (Exponents(vec![0, 0]), FieldScalar::from_rational(1, 1)),
            (Exponents(vec![-1, 1]), FieldScalar::from_rational(1, 2)),
            (Exponents(vec![-2, 2]), FieldScalar::from_rational(1, 3)),
        ],
    )
    .unwrap();
    println!("diagonal series with a sloped certificate:");
    print!("{}", ascii_plot(&s, -4, 4));

    // The same picture as SVG.
    let svg = svg_plot(&s, -4, 4).unwrap();
    println!("SVG output: {} bytes (write it to a file to view)", svg.len());
    std::fs::write("/tmp/tatekit_support.svg", &svg).ok();
    println!("wrote /tmp/tatekit_support.svg");

    // Arity-1 objects fall back to a number line; SVG refuses them.
    let line = MonomialSubspace::one_dim(&[-3, -1], Some(2));
    print!("{}", ascii_plot(&line, -5, 5));
    println!("svg for arity 1: {:?}", svg_plot(&line, -5, 5).unwrap_err());
}
