//! The cubical endomorphism algebra: window transfers, the two ideal
//! classifiers and their agreement, and the decomposition I+ + I- = A.
//!
//! ```bash
//! cargo run --example operator_classification
//! ```

use tatekit::basefield::{FieldScalar, FieldSpec};
use tatekit::operator::OperatorExpr;
use tatekit::series::{Exponents, TruncatedSeries};

fn poly(terms: &[(Vec<i64>, i64)]) -> TruncatedSeries {
    TruncatedSeries::polynomial(FieldSpec::Rationals, terms)
}

fn show(name: &str, op: &OperatorExpr) {
    let tate = op.classify_tate(2);
    let yek = op.classify_yekutieli(2, 8);
    println!("{name}");
    println!("  tate     : {tate}");
    println!("  yekutieli: {yek}");
    assert!(yek.consistent_with(&tate), "the two routes must agree");
}

fn main() {
    // The good idempotents: P_i^+ projects onto nonnegative exponents of
    // one axis, and P_i^+ A lands in I_i^+.
    show("P1+ = Proj(1, 0)", &OperatorExpr::Proj(1, 0));
    show("P1- = CoProj(1, 0)", &OperatorExpr::CoProj(1, 0));

    // Multiplication by a monomial with a negative inner exponent escapes
    // every bound and kills nothing: outside all four ideals.
    show("MulBy(t1^-5)", &OperatorExpr::MulBy(poly(&[(vec![-5, 0], 1)])));

    // Multiplication by t2^3 maps each lattice into a lattice but the image
    // of the whole field is unbounded: still outside I2+.
    show("MulBy(t2^3)", &OperatorExpr::MulBy(poly(&[(vec![0, 3], 1)])));

    // Finite-rank operators sit in every ideal on every axis.
    let phi = vec![(Exponents(vec![0, 0]), FieldScalar::from_rational(1, 1))];
    show(
        "FiniteRank(read constant term, emit t1^-2 t2)",
        &OperatorExpr::FiniteRank(phi, poly(&[(vec![-2, 1], 1)])),
    );

    // The transfer is a symbolic pass: it reports per-axis output bounds as
    // functions of the input window indices.
    let f = OperatorExpr::Compose(vec![
        OperatorExpr::Proj(1, 0),
        OperatorExpr::MulBy(poly(&[(vec![-2, 0], 1)])),
    ]);
    let t = f.transfer(2);
    println!("transfer of P1+ . MulBy(t1^-2):");
    println!("  axis-1 bound for input index e1 = 3: {:?}", t.bounds[0].eval(3));
    println!("  axis-1 bound for input index e1 = -100: {:?}", t.bounds[0].eval(-100));
    show("P1+ . MulBy(t1^-2)", &f);

    // Application evaluates exactly; decomposition splits any operator into
    // a plus-bounded and a minus-bounded part on a chosen axis.
    let g = OperatorExpr::MulBy(poly(&[(vec![-1, 0], 1)]));
    let x = poly(&[(vec![0, 0], 1), (vec![1, 0], 1)]);
    let (gp, gm) = g.decompose(1);
    let y = g.apply(&x).unwrap();
    let yp = gp.apply(&x).unwrap();
    let ym = gm.apply(&x).unwrap();
    println!("MulBy(t1^-1) on 1 + t1: {}", y);
    println!("  plus part : {}", yp);
    println!("  minus part: {}", ym);
    assert_eq!(yp.add(&ym).unwrap().coeffs(), y.coeffs());
    println!("  pointwise sum identity holds");

    // Semantic cancellations are caught symbolically.
    let z = OperatorExpr::Sum(vec![
        OperatorExpr::Id,
        OperatorExpr::Scale(FieldScalar::from_rational(-1, 1)),
    ]);
    println!("Id - Id detected as the zero operator: {}", z.transfer(2).zero);
}
