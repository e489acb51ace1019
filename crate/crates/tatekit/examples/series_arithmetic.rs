//! Exact arithmetic in iterated Laurent series fields with certified
//! windows.
//!
//! ```bash
//! cargo run --example series_arithmetic
//! ```

use tatekit::basefield::FieldSpec;
use tatekit::series::{Exponents, TruncatedSeries};

fn main() {
    let q = FieldSpec::Rationals;

    // Polynomials are exactly known everywhere.
    let a = TruncatedSeries::polynomial(q.clone(), &[(vec![0], 1), (vec![1], 1)]);
    let b = TruncatedSeries::polynomial(q.clone(), &[(vec![0], 1), (vec![1], -1)]);
    println!("(1 + t1) * (1 - t1) = {}", a.mul(&b).unwrap());

    // Monomial arithmetic in two variables; t2 is the outermost variable.
    let m1 = TruncatedSeries::polynomial(q.clone(), &[(vec![-2, 3], 1)]);
    let m2 = TruncatedSeries::polynomial(q.clone(), &[(vec![5, -1], 1)]);
    println!("t1^-2 t2^3 * t1^5 t2^-1 = {}", m1.mul(&m2).unwrap());

    // Geometric series: invert 1 - t1 up to precision 4.
    let u = TruncatedSeries::polynomial(q.clone(), &[(vec![0], 1), (vec![1], -1)]);
    println!("1/(1 - t1) = {} + O(t1^4)", u.inv(&[4]).unwrap());

    // A genuinely two-dimensional inverse: 1/(t1 + t2). The lex-leading
    // term is t1 because the outer exponent dominates the order, and the
    // expansion descends along the diagonal.
    let s = TruncatedSeries::polynomial(q.clone(), &[(vec![1, 0], 1), (vec![0, 1], 1)]);
    let inv = s.inv(&[4, 4]).unwrap();
    println!("1/(t1 + t2) = {}   (window 4x4)", inv);
    let check = s.mul(&inv).unwrap();
    println!("  check: (t1 + t2) * that = {} on the window", check);

    // Certificates travel with every result and can carry sloped support
    // rules. A diagonal window times a monomial keeps its slope, shifted:
    let diag = TruncatedSeries::new(
        q.clone(),
        tatekit::series::BoundCertificate {
            lo: vec![
                tatekit::series::SliceRule::affine(0, 0, -1),
                tatekit::series::SliceRule::constant(0),
            ],
            hi: vec![tatekit::series::Prec::Finite(1), tatekit::series::Prec::Finite(4)],
        },
        (0..4)
            .map(|k| {
                (
                    Exponents(vec![-k, k]),
                    tatekit::basefield::FieldScalar::from_rational(1, 1),
                )
            })
            .collect(),
    )
    .unwrap();
    let shifted = diag
        .mul(&TruncatedSeries::polynomial(q.clone(), &[(vec![2, 0], 1)]))
        .unwrap();
    let rule = &shifted.cert().lo[0];
    println!(
        "  diagonal window times t1^2: t1-exponent >= {} + ({}) * t2-exponent",
        rule.base, rule.slope
    );

    // Valuations read off the lex-minimal exponent; the outer coordinate is
    // the canonical discrete valuation of the field.
    let v = TruncatedSeries::polynomial(
        q.clone(),
        &[(vec![-2, 3], 1), (vec![5, 3], 1), (vec![0, 4], 1)],
    );
    println!(
        "lex valuation of t1^-2 t2^3 + t1^5 t2^3 + t2^4 = {}",
        v.lex_valuation().unwrap()
    );

    // Residue and the standard lifting form a section pair.
    let w = TruncatedSeries::polynomial(
        q,
        &[(vec![0, 0], 3), (vec![1, 1], 1), (vec![0, 2], 1)],
    );
    println!("residue(3 + t1 t2 + t2^2) = {}", w.residue().unwrap());
    let one_plus = w.residue().unwrap();
    assert_eq!(one_plus.lift_std().residue().unwrap(), one_plus);
    println!("residue . lift_std = id holds");

    // Truncation is honest: coefficients beyond a cutoff are unknown, and
    // products shrink precision instead of inventing zeros.
    let exact = TruncatedSeries::polynomial(
        FieldSpec::Rationals,
        &[(vec![0], 1), (vec![3], 2)],
    );
    let truncated = exact.restrict(tatekit::series::BoundCertificate {
        lo: vec![tatekit::series::SliceRule::constant(0)],
        hi: vec![tatekit::series::Prec::Finite(2)],
    });
    let product = truncated.mul(&exact).unwrap();
    println!(
        "known-to-t1^2 series times exact one: certified window ends at {:?}",
        product.cert().hi[0]
    );
    assert!(product.coeff(&Exponents(vec![3])).is_none());
}
