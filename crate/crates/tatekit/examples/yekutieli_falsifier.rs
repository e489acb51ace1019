//! A twisted system of liftings that is a perfectly good coefficient field
//! but not a morphism of 2-Tate objects.
//!
//! The twist sends the generator family b_i = t1^i to b_i + t1^Q(i) t2.
//! When Q takes arbitrarily negative values, the images acquire t1-powers
//! below every bound at t2-degree 1, so no lattice contains them all.
//!
//! ```bash
//! cargo run --example yekutieli_falsifier
//! ```

use tatekit::basefield::FieldSpec;
use tatekit::liftings::{falsify_tate, falsify_with_q, LiftingSpec, QMap};
use tatekit::plot;
use tatekit::series::TruncatedSeries;

fn main() {
    let q = FieldSpec::Rationals;
    let radius = 6;

    // The twisted lifting on a single generator.
    let spec = LiftingSpec::twisted_family(QMap::NegIdentity, radius + 1);
    let b3 = TruncatedSeries::polynomial(q.clone(), &[(vec![3], 1)]);
    let image = spec.lift(&b3).unwrap();
    println!("lift(t1^3) = {}   (t2-precision 2)", image);
    println!("residue back: {}", image.residue().unwrap());

    // The union of the generator images shows the staircase: the t2-row 1
    // support descends one step left per generator.
    let mut union: Option<TruncatedSeries> = None;
    for i in 0..=radius + 1 {
        let b = TruncatedSeries::polynomial(q.clone(), &[(vec![i], 1)]);
        let l = spec.lift(&b).unwrap();
        union = Some(match union {
            None => l,
            Some(prev) => prev.add(&l).unwrap(),
        });
    }
    println!("union of generator images:");
    print!("{}", plot::ascii_plot(&union.unwrap(), -(radius + 1), radius + 1));

    // The falsifier: for every candidate lattice t1^-m there is a generator
    // whose image escapes it.
    match falsify_with_q(QMap::NegIdentity, &q, radius).unwrap() {
        tatekit::liftings::FalsifyVerdict::NotATateMorphism { witnesses } => {
            println!("Q(i) = -i: NOT_A_TATE_MORPHISM");
            for w in &witnesses {
                println!(
                    "  candidate t1^-{}: b_{} maps onto t1^{} t2^{}",
                    w.candidate_m, w.generator_index, w.escaping_exponent.0, w.escaping_exponent.1
                );
            }
        }
        other => panic!("expected a refutation, got {:?}", other),
    }

    // Bounded twists and the standard lifting stay plausible: the falsifier
    // is sound for refutation only.
    for (label, verdict) in [
        (
            "standard lifting",
            falsify_tate(&LiftingSpec::Standard, &q, radius).unwrap(),
        ),
        (
            "Q(i) = +i",
            falsify_with_q(QMap::PosIdentity, &q, radius).unwrap(),
        ),
    ] {
        println!("{}: {:?}", label, verdict);
    }
}
