//! Systems of liftings `k((t1)) -> k((t1))[[t2]]`: the standard coefficient
//! field, twisted liftings `b_i -> b_i + t1^Q(i) t2` on a finite monomial
//! generator family, and the falsifier showing a twisted lifting with `Q`
//! unbounded below does not extend to a morphism of 2-Tate objects.
//!
//! The finite generator list `b_i = t1^(d_i)` is the desk-scale surrogate
//! for a transcendence basis: the contradiction only needs `Q` to take
//! arbitrarily negative values on the tested range. Corrections live at
//! t2-degree one, so everything is computed to t2-precision 2.

use crate::basefield::FieldSpec;
use crate::series::{Exponents, SeriesError, TruncatedSeries};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftingError {
    #[error("element is not in the model generated by the listed monomials")]
    NotInGeneratedModel,
    #[error("lifting input must have arity 1")]
    ArityMismatch,
    #[error("the generator t1 must be unperturbed for this check")]
    PreconditionViolated,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Exponent map presets for the twisted family `b_i = t1^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum QMap {
    /// `Q(i) = -i`: unbounded below, the falsifier's target.
    NegIdentity,
    /// `Q(i) = +i`: bounded below, a harmless twist.
    PosIdentity,
    /// `Q(i) = 0`: constant perturbation exponent.
    Zero,
}

impl QMap {
    pub fn eval(self, i: i64) -> i64 {
        match self {
            QMap::NegIdentity => -i,
            QMap::PosIdentity => i,
            QMap::Zero => 0,
        }
    }
}

/// One generator `b = t1^exp` with its perturbation exponent; `perturbed`
/// is false exactly for the distinguished generator fixed by the lifting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub exp: i64,
    pub q: i64,
    pub perturbed: bool,
}

/// A system of liftings: the standard one, or a twisted one on a finite
/// monomial generator family (arity 2 only).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "UPPERCASE")]
pub enum LiftingSpec {
    Standard,
    Twisted { generators: Vec<Generator> },
}

impl LiftingSpec {
    /// The family `b_i = t1^i` for `0 <= i <= radius`, every generator
    /// perturbed.
    pub fn twisted_family(q: QMap, radius: i64) -> LiftingSpec {
        let generators = (0..=radius)
            .map(|i| Generator {
                exp: i,
                q: q.eval(i),
                perturbed: true,
            })
            .collect();
        LiftingSpec::Twisted { generators }
    }

    /// The same family with the distinguished generator `t1` left fixed,
    /// as the coefficient-field construction demands.
    pub fn twisted_family_fixing_t1(q: QMap, radius: i64) -> LiftingSpec {
        let generators = (0..=radius)
            .map(|i| Generator {
                exp: i,
                q: q.eval(i),
                perturbed: i != 1,
            })
            .collect();
        LiftingSpec::Twisted { generators }
    }

    fn generator_for(&self, exp: i64) -> Option<&Generator> {
        match self {
            LiftingSpec::Standard => None,
            LiftingSpec::Twisted { generators } => generators.iter().find(|g| g.exp == exp),
        }
    }

    /// Lift an arity-1 series into the 2-field, to t2-precision 2.
    ///
    /// Standard mode embeds the series t2-constantly. Twisted mode maps
    /// each monomial through the exponent dictionary: a listed generator
    /// `b = t1^d` goes to `b + t1^Q t2`; other exponents are decomposed as
    /// products of generators and lifted multiplicatively.
    pub fn lift(&self, a: &TruncatedSeries) -> Result<TruncatedSeries, LiftingError> {
        if a.arity() != 1 {
            return Err(LiftingError::ArityMismatch);
        }
        match self {
            LiftingSpec::Standard => Ok(a.lift_std()),
            LiftingSpec::Twisted { .. } => {
                let spec = a.spec().clone();
                let mut acc: Option<TruncatedSeries> = None;
                for (e, c) in a.coeffs() {
                    let lifted = self.lift_monomial(&spec, e.0[0])?;
                    let term = lifted.scale(c)?;
                    acc = Some(match acc {
                        None => term,
                        Some(prev) => prev.add(&term)?,
                    });
                }
                let out = match acc {
                    Some(s) => s,
                    None => a.lift_std(), // zero series
                };
                Ok(truncate_t2(&out, 2))
            }
        }
    }

    /// Lift a single monomial exponent through the dictionary.
    fn lift_monomial(
        &self,
        spec: &FieldSpec,
        exp: i64,
    ) -> Result<TruncatedSeries, LiftingError> {
        let factors = self.decompose_exponent(exp)?;
        let mut acc = TruncatedSeries::monomial(spec.clone(), Exponents(vec![0, 0]), spec.one());
        for f in factors {
            let g = self.generator_for(f).ok_or(LiftingError::NotInGeneratedModel)?;
            let mut terms = vec![(
                Exponents(vec![g.exp, 0]),
                spec.one(),
            )];
            if g.perturbed {
                terms.push((Exponents(vec![g.q, 1]), spec.one()));
            }
            let image = series_from_terms(spec, terms)?;
            acc = truncate_t2(&acc.mul(&image)?, 2);
        }
        Ok(acc)
    }

    /// The exponent dictionary: a listed generator is its own factorization;
    /// other exponents decompose greedily into listed generators.
    fn decompose_exponent(&self, exp: i64) -> Result<Vec<i64>, LiftingError> {
        if self.generator_for(exp).is_some() {
            return Ok(vec![exp]);
        }
        let mut exps: Vec<i64> = match self {
            LiftingSpec::Standard => return Err(LiftingError::NotInGeneratedModel),
            LiftingSpec::Twisted { generators } => generators
                .iter()
                .map(|g| g.exp)
                .filter(|&d| d > 0)
                .collect(),
        };
        exps.sort_unstable();
        exps.reverse();
        let mut rest = exp;
        let mut out = Vec::new();
        for d in exps {
            while rest >= d && rest > 0 {
                rest -= d;
                out.push(d);
            }
        }
        if rest != 0 {
            return Err(LiftingError::NotInGeneratedModel);
        }
        if out.is_empty() {
            // exponent 0 with no listed 1: the empty product
            return Ok(Vec::new());
        }
        Ok(out)
    }
}

fn series_from_terms(
    spec: &FieldSpec,
    terms: Vec<(Exponents, crate::basefield::FieldScalar)>,
) -> Result<TruncatedSeries, LiftingError> {
    let lo: Vec<i64> = (0..2)
        .map(|i| terms.iter().map(|(e, _)| e.0[i]).min().unwrap_or(0))
        .collect();
    Ok(TruncatedSeries::new(
        spec.clone(),
        crate::series::BoundCertificate::exact(lo),
        terms,
    )?)
}

/// Drop terms at or above the t2 cutoff, keeping the certificate exact
/// below it.
fn truncate_t2(s: &TruncatedSeries, cutoff: i64) -> TruncatedSeries {
    let terms: Vec<_> = s
        .coeffs()
        .iter()
        .filter(|(e, _)| e.0[1] < cutoff)
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();
    let lo: Vec<i64> = (0..2)
        .map(|i| {
            terms
                .iter()
                .map(|(e, _)| e.0[i])
                .min()
                .unwrap_or_else(|| s.cert().global_floor(i).unwrap_or(0))
        })
        .collect();
    let cert = crate::series::BoundCertificate {
        lo: lo.into_iter().map(crate::series::SliceRule::constant).collect(),
        hi: vec![
            crate::series::Prec::Unbounded,
            crate::series::Prec::Finite(cutoff),
        ],
    };
    TruncatedSeries::new(s.spec().clone(), cert, terms).expect("truncation certificate")
}

/// Outcome of the Tate-morphism falsifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FalsifyVerdict {
    /// Every tested generator image fits into this standard lattice index
    /// on t1 (a finite radius cannot certify an actual morphism).
    MorphismPlausible { containing_lattice: i64 },
    /// For every candidate lattice `t1^-m`, a generator whose image
    /// escapes it: the image contains the exponent `(q, 1)` with `q < -m`.
    NotATateMorphism {
        witnesses: Vec<FalsifyWitness>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FalsifyWitness {
    pub candidate_m: i64,
    pub generator_index: i64,
    pub escaping_exponent: (i64, i64),
}

/// Falsify with the preset family `b_i = t1^i` for `i <= radius + 1`.
pub fn falsify_with_q(
    q: QMap,
    field: &FieldSpec,
    radius: i64,
) -> Result<FalsifyVerdict, LiftingError> {
    falsify_tate(&LiftingSpec::twisted_family(q, radius + 1), field, radius)
}

/// Check whether the images of the standard-lattice generators can fit in a
/// single candidate lattice `t1^-m` for some `m <= radius`.
pub fn falsify_tate(
    spec: &LiftingSpec,
    field: &FieldSpec,
    radius: i64,
) -> Result<FalsifyVerdict, LiftingError> {
    assert!(radius >= 1, "radius must be at least 1");
    let gens: Vec<i64> = match spec {
        LiftingSpec::Standard => (0..=radius + 1).collect(),
        LiftingSpec::Twisted { generators } => generators
            .iter()
            .map(|g| g.exp)
            .filter(|&d| d <= radius + 1)
            .collect(),
    };
    // image supports of all tested generators
    let mut supports: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
    for &d in &gens {
        let b = TruncatedSeries::monomial(field.clone(), Exponents(vec![d]), field.one());
        let image = spec.lift(&b)?;
        supports.insert(d, image.coeffs().keys().map(|e| (e.0[0], e.0[1])).collect());
    }
    let mut witnesses = Vec::new();
    for m in 0..=radius {
        // find a generator whose image has a t1-exponent below -m
        let escape = supports.iter().find_map(|(&idx, supp)| {
            supp.iter()
                .find(|&&(a1, _)| a1 < -m)
                .map(|&(a1, a2)| FalsifyWitness {
                    candidate_m: m,
                    generator_index: idx,
                    escaping_exponent: (a1, a2),
                })
        });
        match escape {
            Some(w) => witnesses.push(w),
            None => {
                // this lattice contains every tested image
                return Ok(FalsifyVerdict::MorphismPlausible {
                    containing_lattice: m,
                });
            }
        }
    }
    Ok(FalsifyVerdict::NotATateMorphism { witnesses })
}

/// Whether the lifting agrees with the standard one on polynomials in the
/// distinguished generator `t1` alone, and fixes `t2` on monomial products.
pub fn fixes_rational_subfield(
    spec: &LiftingSpec,
    field: &FieldSpec,
    samples: i64,
) -> Result<bool, LiftingError> {
    if let LiftingSpec::Twisted { generators } = spec {
        match generators.iter().find(|g| g.exp == 1) {
            Some(g) if !g.perturbed => {}
            Some(_) => return Err(LiftingError::PreconditionViolated),
            None => return Err(LiftingError::PreconditionViolated),
        }
    }
    // polynomials in t1 are products of the unperturbed generator alone:
    // lift them through the t1-only dictionary and compare with standard
    for k in 0..samples.max(1) {
        let poly = TruncatedSeries::polynomial(
            field.clone(),
            &[(vec![k], 1), (vec![0], (k % 3) + 1)],
        );
        let lifted = match spec {
            LiftingSpec::Standard => spec.lift(&poly)?,
            LiftingSpec::Twisted { .. } => {
                let t1_only = LiftingSpec::Twisted {
                    generators: vec![Generator {
                        exp: 1,
                        q: 0,
                        perturbed: false,
                    }],
                };
                t1_only.lift(&poly)?
            }
        };
        let standard = poly.lift_std();
        // compare stored coefficients on the t2-window of the twisted lift
        for (e, c) in standard.coeffs() {
            if lifted.coeff(e) != Some(c) {
                return Ok(false);
            }
        }
        for (e, c) in lifted.coeffs() {
            if standard.coeff(e) != Some(c) {
                return Ok(false);
            }
        }
    }
    // the induced extension sends t2 to itself: check on monomial products
    // t1^a * t2^b, where the t2 factor is untouched by construction
    for a in 0..3i64 {
        for b in 0..3i64 {
            let t1_part = TruncatedSeries::monomial(
                field.clone(),
                Exponents(vec![a]),
                field.one(),
            );
            let lifted = match spec {
                LiftingSpec::Standard => spec.lift(&t1_part)?,
                LiftingSpec::Twisted { .. } => LiftingSpec::Twisted {
                    generators: vec![Generator {
                        exp: 1,
                        q: 0,
                        perturbed: false,
                    }],
                }
                .lift(&t1_part)?,
            };
            let t2_shift = lifted.shift(&Exponents(vec![0, b]));
            let expect = TruncatedSeries::monomial(
                field.clone(),
                Exponents(vec![a, b]),
                field.one(),
            );
            if t2_shift.coeff(&Exponents(vec![a, b])) != expect.coeff(&Exponents(vec![a, b])) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn standard_lift_is_section() {
        let a = TruncatedSeries::polynomial(q(), &[(vec![0], 1), (vec![3], 1)]);
        let lifted = LiftingSpec::Standard.lift(&a).unwrap();
        assert_eq!(lifted.residue().unwrap(), a);
    }

    #[test]
    fn twisted_lift_of_generator() {
        // b_i = t1^i, Q(i) = -i: lift(t1^2) = t1^2 + t1^-2 t2
        let spec = LiftingSpec::twisted_family(QMap::NegIdentity, 10);
        let a = TruncatedSeries::polynomial(q(), &[(vec![2], 1)]);
        let lifted = spec.lift(&a).unwrap();
        assert!(lifted.coeff(&Exponents(vec![2, 0])).unwrap().is_one());
        assert!(lifted.coeff(&Exponents(vec![-2, 1])).unwrap().is_one());
        assert_eq!(lifted.coeffs().len(), 2);
    }

    #[test]
    fn degenerate_twist_equals_standard() {
        // all perturbations absent: twisted = standard pointwise
        let spec = LiftingSpec::Twisted {
            generators: (0..=6)
                .map(|i| Generator {
                    exp: i,
                    q: 0,
                    perturbed: false,
                })
                .collect(),
        };
        let a = TruncatedSeries::polynomial(q(), &[(vec![0], 2), (vec![3], 1), (vec![5], 4)]);
        let twisted = spec.lift(&a).unwrap();
        let standard = LiftingSpec::Standard.lift(&a).unwrap();
        assert_eq!(twisted.coeffs(), standard.coeffs());
    }

    #[test]
    fn falsifier_negative_q() {
        let verdict = falsify_with_q(QMap::NegIdentity, &q(), 10).unwrap();
        match verdict {
            FalsifyVerdict::NotATateMorphism { witnesses } => {
                assert_eq!(witnesses.len(), 11);
                for w in &witnesses {
                    // witness index m+1 escapes candidate m
                    assert_eq!(w.generator_index, w.candidate_m + 1);
                    assert_eq!(w.escaping_exponent.1, 1);
                    assert!(w.escaping_exponent.0 < -w.candidate_m);
                }
            }
            other => panic!("expected refutation, got {:?}", other),
        }
    }

    #[test]
    fn falsifier_standard_and_positive_q() {
        let verdict = falsify_tate(&LiftingSpec::Standard, &q(), 10).unwrap();
        assert_eq!(
            verdict,
            FalsifyVerdict::MorphismPlausible {
                containing_lattice: 0
            }
        );
        let verdict = falsify_with_q(QMap::PosIdentity, &q(), 10).unwrap();
        assert_eq!(
            verdict,
            FalsifyVerdict::MorphismPlausible {
                containing_lattice: 0
            }
        );
    }

    #[test]
    fn falsifier_monotone_in_radius() {
        let spec = LiftingSpec::twisted_family(QMap::NegIdentity, 17);
        for r in [4, 8, 12, 16] {
            let verdict = falsify_tate(&spec, &q(), r).unwrap();
            assert!(matches!(verdict, FalsifyVerdict::NotATateMorphism { .. }));
        }
    }

    #[test]
    fn rational_subfield_fixed() {
        let spec = LiftingSpec::twisted_family_fixing_t1(QMap::NegIdentity, 8);
        assert!(fixes_rational_subfield(&spec, &q(), 5).unwrap());
        assert!(fixes_rational_subfield(&LiftingSpec::Standard, &q(), 5).unwrap());
        // perturbing t1 violates the precondition
        let bad = LiftingSpec::Twisted {
            generators: vec![Generator {
                exp: 1,
                q: -1,
                perturbed: true,
            }],
        };
        assert_eq!(
            fixes_rational_subfield(&bad, &q(), 3),
            Err(LiftingError::PreconditionViolated)
        );
    }

    #[test]
    fn unreachable_exponent_rejected() {
        // generators {0, 2, 3} cannot produce t1^1
        let spec = LiftingSpec::Twisted {
            generators: [0i64, 2, 3]
                .iter()
                .map(|&e| Generator {
                    exp: e,
                    q: -e,
                    perturbed: true,
                })
                .collect(),
        };
        let a = TruncatedSeries::polynomial(q(), &[(vec![1], 1)]);
        assert_eq!(spec.lift(&a), Err(LiftingError::NotInGeneratedModel));
        // and arity-2 inputs are refused outright
        let two = TruncatedSeries::polynomial(q(), &[(vec![0, 0], 1)]);
        assert_eq!(
            LiftingSpec::Standard.lift(&two),
            Err(LiftingError::ArityMismatch)
        );
    }

    #[test]
    fn section_property_all_specs() {
        let specs = vec![
            LiftingSpec::Standard,
            LiftingSpec::twisted_family(QMap::NegIdentity, 10),
            LiftingSpec::twisted_family(QMap::PosIdentity, 10),
            LiftingSpec::twisted_family(QMap::Zero, 10),
        ];
        for spec in specs {
            for k in 0..6i64 {
                let a = TruncatedSeries::polynomial(q(), &[(vec![k], 1), (vec![0], 1)]);
                let lifted = spec.lift(&a).unwrap();
                assert_eq!(
                    lifted.residue().unwrap().coeffs(),
                    a.coeffs(),
                    "section fails for {:?}",
                    spec
                );
            }
        }
    }
}
