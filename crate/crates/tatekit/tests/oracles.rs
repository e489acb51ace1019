//! Independent oracles for the derived expectations: brute-force
//! convolution against the certificate calculus, runtime falsification of
//! classifier witness families, and the rank-one span property.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use tatekit::basefield::{FieldScalar, FieldSpec};
use tatekit::operator::{OperatorExpr, Verdict};
use tatekit::series::{BoundCertificate, Exponents, Prec, SliceRule, TruncatedSeries};
use tatekit::suite::{sample_poly, sample_scalar};

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

/// Brute-force convolution of the stored tables, ignoring certificates.
fn convolve_tables(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
) -> BTreeMap<Exponents, FieldScalar> {
    let mut out: BTreeMap<Exponents, FieldScalar> = BTreeMap::new();
    for (ea, ca) in a.coeffs() {
        for (eb, cb) in b.coeffs() {
            let e = ea.add(eb);
            let v = ca.mul(cb).unwrap();
            let slot = out.entry(e).or_insert_with(|| q().zero());
            *slot = slot.add(&v).unwrap();
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Random series whose certificate carries a sloped lower-bound rule.
fn sample_sloped(rng: &mut ChaCha8Rng) -> TruncatedSeries {
    let slope = rng.gen_range(-2..=0i64);
    let base = rng.gen_range(-2..=1i64);
    let outer_lo = rng.gen_range(-2..=0i64);
    let outer_hi = outer_lo + rng.gen_range(2..=4i64);
    let inner_hi = rng.gen_range(1..=4i64);
    let cert = BoundCertificate {
        lo: vec![
            SliceRule::affine(outer_lo, base, slope),
            SliceRule::constant(outer_lo),
        ],
        hi: vec![Prec::Finite(inner_hi), Prec::Finite(outer_hi)],
    };
    let mut terms = Vec::new();
    for m in outer_lo..outer_hi {
        let bound = base + slope * m.max(outer_lo);
        if bound >= inner_hi {
            continue;
        }
        for _ in 0..rng.gen_range(0..=2) {
            let e = rng.gen_range(bound..inner_hi);
            terms.push((Exponents(vec![e, m]), sample_scalar(rng, &q())));
        }
    }
    TruncatedSeries::new(q(), cert, terms).expect("sampled sloped series")
}

#[test]
fn sloped_products_match_brute_force_convolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut checked = 0;
    for _ in 0..200 {
        let a = sample_sloped(&mut rng);
        let b = if rng.gen_bool(0.5) {
            sample_sloped(&mut rng)
        } else {
            sample_poly(&mut rng, &q(), 2, 2, -2..=2)
        };
        let p = match a.mul(&b) {
            Ok(p) => p,
            Err(_) => continue, // empty certified window is a legal refusal
        };
        checked += 1;
        assert!(p.certificate_holds(), "certificate violated");
        let oracle = convolve_tables(&a, &b);
        // every stored coefficient agrees with the full convolution
        for (e, c) in p.coeffs() {
            assert_eq!(oracle.get(e), Some(c), "coefficient mismatch at {}", e);
        }
        // everything certified but absent really is zero in the convolution
        for (e, c) in &oracle {
            if p.cert().contains(e) {
                assert_eq!(p.coeff(e), Some(c), "certified window lost {}", e);
            }
        }
    }
    assert!(checked >= 150, "too few products checked: {}", checked);
}

#[test]
fn mulby_witness_family_falsifies_at_window_12() {
    // classify_tate(MulBy(t1^-5)) reports OUT everywhere; the monomial
    // family t1^-d escapes every candidate bound within a window of 12
    let g = TruncatedSeries::polynomial(q(), &[(vec![-5, 0], 1)]);
    let op = OperatorExpr::MulBy(g);
    let flags = op.classify_tate(2);
    assert_eq!(flags.plus(1), Verdict::Out);
    let mut depths = Vec::new();
    for d in 0..12i64 {
        let x = TruncatedSeries::monomial(q(), Exponents(vec![-d, 0]), q().one());
        let y = op.apply(&x).unwrap();
        let min1 = y.coeffs().keys().map(|e| e.0[0]).min().unwrap();
        depths.push(min1);
    }
    // strictly decreasing: no constant bound survives the family
    for w in depths.windows(2) {
        assert!(w[1] < w[0]);
    }
    // and no input cutoff annihilates: all images nonzero upward too
    for d in 0..12i64 {
        let x = TruncatedSeries::monomial(q(), Exponents(vec![d, 0]), q().one());
        assert!(!op.apply(&x).unwrap().is_zero());
    }
}

#[test]
fn finite_rank_output_spans_payload() {
    // transfer(FiniteRank(phi, v)) is constant-bounded and kernel-witnessed;
    // the independent check: every output is a scalar multiple of v
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let phi = vec![
        (Exponents(vec![0, 0]), FieldScalar::from_rational(2, 1)),
        (Exponents(vec![1, -1]), FieldScalar::from_rational(1, 3)),
    ];
    let v = TruncatedSeries::polynomial(q(), &[(vec![-2, 1], 1), (vec![0, 0], 3)]);
    let op = OperatorExpr::FiniteRank(phi, v.clone());
    for _ in 0..100 {
        let x = sample_poly(&mut rng, &q(), 2, 3, -2..=2);
        let y = op.apply(&x).unwrap();
        if y.is_zero() {
            continue;
        }
        // recover the scalar from any nonzero coefficient of v
        let (e0, v0) = v.coeffs().iter().next().unwrap();
        let lambda = y.coeff(e0).expect("span witness").div(v0).unwrap();
        let scaled = v.scale(&lambda).unwrap();
        assert_eq!(y.coeffs(), scaled.coeffs(), "output leaves span(v)");
    }
    let t = op.transfer(2);
    assert!(t.kernels.iter().all(Option::is_some));
}

#[test]
fn meet_join_closed_on_sloped_tails() {
    use tatekit::lattice::{MonomialSubspace, Region};
    // half-line tails with different slopes meet into the class again
    let a = MonomialSubspace {
        arity: 2,
        below: Region::Zero,
        slices: BTreeMap::new(),
        tail_from: 0,
        tail: Region::HalfLine { base: 0, slope: -1 },
    };
    let b = MonomialSubspace {
        arity: 2,
        below: Region::Zero,
        slices: BTreeMap::new(),
        tail_from: 0,
        tail: Region::HalfLine { base: -4, slope: 0 },
    };
    let m = a.meet(&b).unwrap();
    let j = a.join(&b).unwrap();
    for a1 in -8..8i64 {
        for a2 in -2..10i64 {
            let e = Exponents(vec![a1, a2]);
            let ia = a.contains_exponent(&e);
            let ib = b.contains_exponent(&e);
            assert_eq!(m.contains_exponent(&e), ia && ib, "meet wrong at {}", e);
            assert_eq!(j.contains_exponent(&e), ia || ib, "join wrong at {}", e);
        }
    }
}

#[test]
fn slice_rule_pointwise_min_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let mut sample_rule = || {
            let mut r = SliceRule::affine(
                rng.gen_range(-3..=3),
                rng.gen_range(-4..=4),
                rng.gen_range(-2..=2),
            );
            r.below = rng.gen_range(-6..=6);
            for _ in 0..rng.gen_range(0..=3) {
                r.exceptions
                    .insert(rng.gen_range(-5..=5), rng.gen_range(-6..=6));
            }
            r
        };
        let a = sample_rule();
        let b = sample_rule();
        let m = a.pointwise_min(&b);
        for x in -25..=25i64 {
            assert_eq!(
                m.eval(x),
                a.eval(x).min(b.eval(x)),
                "min wrong at {} for {:?} vs {:?}",
                x,
                a,
                b
            );
        }
    }
}

#[test]
fn slice_rule_clamp_sound_and_tight() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let mut r = SliceRule::affine(
            rng.gen_range(-3..=3),
            rng.gen_range(-4..=4),
            rng.gen_range(-2..=2),
        );
        r.below = rng.gen_range(-6..=6);
        for _ in 0..rng.gen_range(0..=3) {
            r.exceptions
                .insert(rng.gen_range(-5..=5), rng.gen_range(-6..=6));
        }
        let c = rng.gen_range(-6..=6);
        let clamped = r.clamp_at_least(c);
        for x in -25..=25i64 {
            let truth = r.eval(x).max(c);
            let claim = clamped.eval(x);
            assert!(claim <= truth, "over-claim at {} for {:?} clamp {}", x, r, c);
            if x >= r.threshold {
                assert_eq!(claim, truth, "lost tightness at {} for {:?} clamp {}", x, r, c);
            }
        }
    }
}

#[test]
fn classifier_agreement_arity_three() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let spec = q();
    for _ in 0..60 {
        let f = tatekit::suite::sample_operator(&mut rng, &spec, 3, 2);
        let tate = f.classify_tate(3);
        let yek = f.classify_yekutieli(3, 8);
        assert!(
            yek.consistent_with(&tate),
            "n=3 disagreement: yek [{}] vs tate [{}] for {:?}",
            yek,
            tate,
            f
        );
    }
}

#[test]
fn join_absorbs_outer_standard() {
    use tatekit::lattice::{MonomialLattice, MonomialSubspace, Region, SliceVal};
    // join(L, standard(m)) = standard(m) where m is L's outer lower bound
    let mut slices = BTreeMap::new();
    slices.insert(
        -2,
        SliceVal::Sub {
            sub: MonomialSubspace::standard(1, 1),
        },
    );
    slices.insert(-1, SliceVal::Zero);
    let l = MonomialLattice::new(MonomialSubspace {
        arity: 2,
        below: Region::Zero,
        slices,
        tail_from: 0,
        tail: Region::Full,
    })
    .unwrap();
    let (m, _) = l.sandwich_standard();
    let std_m = MonomialLattice::standard(2, m);
    assert_eq!(l.join(&std_m).unwrap(), std_m);
    assert_eq!(l.meet(&std_m).unwrap(), l);
}
