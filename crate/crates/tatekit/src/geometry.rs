//! Desk-scale instances of the structure theory: Hensel/Cohen coefficient
//! fields for completions of `F_p[x]`, the smooth plane staircase, the cusp
//! with its Beilinson-vs-Tate lattice gap, and the open cover demonstrating
//! `V * V = K` for the natural topology.

use crate::basefield::{FieldError, FieldScalar, FieldSpec, PolyFp};
use crate::lattice::{MonomialLattice, MonomialSubspace, Region, SliceVal};
use crate::series::{Exponents, SeriesError, TruncatedSeries};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("generators are not coprime")]
    NotCoprime,
    #[error("target is not a standard-form lattice u^v k[[u]]")]
    NotStandardForm,
    #[error("precision must be at least 1")]
    BadPrecision,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

// ---------------------------------------------------------------------------
// Hensel / Cohen coefficient fields
// ---------------------------------------------------------------------------

/// The completion of `F_p[x]` at an irreducible `f`, with its coefficient
/// field located by Hensel lifting: `kappa = F_p[x]/(f)` embeds via the
/// root `a` of `f` with `a = x mod pi` and `f(a) = 0 mod pi^N`, `pi` the
/// class of `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionModel {
    pub p: u64,
    pub f: Vec<u64>,
    pub precision: u32,
    /// Image of the residue generator, as a pi-adic digit series over kappa.
    pub embedding: Vec<Vec<u64>>,
    /// Error valuations per Newton step (quadratic convergence: doubling).
    pub error_valuations: Vec<u32>,
}

impl CompletionModel {
    pub fn kappa(&self) -> Result<FieldSpec, FieldError> {
        if self.f.len() == 2 && self.f[0] == 0 {
            FieldSpec::finite_prime(self.p)
        } else {
            FieldSpec::finite_ext(self.p, self.f.clone())
        }
    }

    /// The embedded generator as an arity-1 series over kappa in pi.
    pub fn embedding_series(&self) -> Result<TruncatedSeries, GeometryError> {
        let spec = self.kappa()?;
        let mut terms = Vec::new();
        for (j, digit) in self.embedding.iter().enumerate() {
            let coeffs: Vec<i64> = digit.iter().map(|&c| c as i64).collect();
            let c = match &spec {
                FieldSpec::FinitePrime { .. } => {
                    FieldScalar::from_coeffs(spec.clone(), &coeffs[..coeffs.len().min(1)])?
                }
                _ => FieldScalar::from_coeffs(spec.clone(), &coeffs)?,
            };
            if !c.is_zero() {
                terms.push((Exponents(vec![j as i64]), c));
            }
        }
        let cert = crate::series::BoundCertificate {
            lo: vec![crate::series::SliceRule::constant(0)],
            hi: vec![crate::series::Prec::Finite(self.precision as i64)],
        };
        Ok(TruncatedSeries::new(spec, cert, terms)?)
    }
}

/// Newton/Hensel iteration for the coefficient field of the completion of
/// `F_p[x]` at `(f)`: finds `a` with `f(a) = 0 mod f^N` and `a = x mod f`.
pub fn hensel_coefficient_field(
    p: u64,
    f: &[u64],
    precision: u32,
) -> Result<CompletionModel, GeometryError> {
    if precision == 0 {
        return Err(GeometryError::BadPrecision);
    }
    // validates primality, monicity and irreducibility
    let _ = FieldSpec::finite_ext(p, f.to_vec()).or_else(|e| match e {
        FieldError::BadModulus if f == [0, 1] => FieldSpec::finite_prime(p),
        other => Err(other),
    });
    if f.len() < 2 || *f.last().unwrap() != 1 {
        return Err(GeometryError::Field(FieldError::BadModulus));
    }
    if !crate::basefield::poly_is_irreducible(f, p) {
        return Err(GeometryError::Field(FieldError::NotIrreducible));
    }
    // modulus f^N
    let mut modulus = vec![1u64];
    for _ in 0..precision {
        modulus = PolyFp::mul(&modulus, f, p);
    }
    let mut a = vec![0u64, 1]; // a_0 = x
    let mut error_valuations = Vec::new();
    loop {
        let fa = PolyFp::rem(&eval_poly(f, &a, p, &modulus), &modulus, p);
        let val = pi_valuation(&fa, f, p, precision);
        error_valuations.push(val);
        if val >= precision {
            break;
        }
        let dfa = PolyFp::rem(&eval_poly(&PolyFp::derivative(f, p), &a, p, &modulus), &modulus, p);
        let inv = PolyFp::inv_mod(&dfa, &modulus, p)?;
        let delta = PolyFp::rem(&PolyFp::mul(&fa, &inv, p), &modulus, p);
        a = PolyFp::sub(&a, &delta, p);
        if error_valuations.len() > 2 * precision as usize + 4 {
            break; // convergence is quadratic; this cannot happen
        }
    }
    // pi-adic digits of `a` with respect to the monomial section
    let mut digits = Vec::new();
    let mut rest = a.clone();
    for _ in 0..precision {
        let (quo, digit) = PolyFp::divrem(&rest, f, p);
        digits.push(digit);
        rest = quo;
    }
    Ok(CompletionModel {
        p,
        f: f.to_vec(),
        precision,
        embedding: digits,
        error_valuations,
    })
}

fn eval_poly(f: &[u64], a: &[u64], p: u64, modulus: &[u64]) -> Vec<u64> {
    // Horner evaluation of f at the polynomial a, mod the given modulus
    let mut acc: Vec<u64> = Vec::new();
    for &c in f.iter().rev() {
        acc = PolyFp::rem(&PolyFp::mul(&acc, a, p), modulus, p);
        acc = PolyFp::add(&acc, &[c], p);
    }
    acc
}

/// Largest `k <= cap` with `f^k` dividing `g` (the pi-adic valuation).
fn pi_valuation(g: &[u64], f: &[u64], p: u64, cap: u32) -> u32 {
    if g.is_empty() {
        return cap;
    }
    let mut rest = g.to_vec();
    let mut k = 0;
    while k < cap {
        let (quo, rem) = PolyFp::divrem(&rest, f, p);
        if !rem.is_empty() {
            break;
        }
        rest = quo;
        k += 1;
    }
    k
}

// ---------------------------------------------------------------------------
// Adelic staircases
// ---------------------------------------------------------------------------

/// The 1-local field attached to the flag `((0) > (f))` on the affine line:
/// `kappa((pi))` with `kappa = F_{p^deg f}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdeleLine {
    pub p: u64,
    pub f: Vec<u64>,
    pub residue_degree: usize,
    pub kappa: FieldSpec,
}

pub fn adele_line(p: u64, f: &[u64]) -> Result<AdeleLine, GeometryError> {
    let kappa = if f.len() == 2 && f[0] == 0 {
        FieldSpec::finite_prime(p)?
    } else {
        FieldSpec::finite_ext(p, f.to_vec())?
    };
    Ok(AdeleLine {
        p,
        f: f.to_vec(),
        residue_degree: f.len() - 1,
        kappa,
    })
}

impl AdeleLine {
    /// Build an arity-1 series over kappa in the uniformizer pi.
    pub fn series(&self, terms: &[(i64, i64)]) -> TruncatedSeries {
        let t: Vec<(Vec<i64>, i64)> = terms.iter().map(|&(e, c)| (vec![e], c)).collect();
        TruncatedSeries::polynomial(self.kappa.clone(), &t)
    }
}

impl fmt::Display for AdeleLine {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "flag ((0) > (f)) on A^1 over F{}: field F_{}^{}((pi)), O1 = kappa[[pi]], residue kappa",
            self.p, self.p, self.residue_degree
        )
    }
}

/// One step of a staircase diagram: a field, its ring of integers, and the
/// residue field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseStep {
    pub field: String,
    pub integers: String,
    pub residue: String,
}

/// The full staircase of the flag `((0) > (y) > (x,y))` on the affine plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdelePlane {
    pub base: FieldSpec,
    pub steps: Vec<StaircaseStep>,
}

/// Staircase of the smooth plane flag: `K = k((x))((y))`, `O1 = k((x))[[y]]`,
/// `k1 = k((x))`, `O2 = k[[x]]`, `k2 = k`, with residue and lifting wired to
/// the series operations.
pub fn adele_plane_smooth(base: FieldSpec) -> AdelePlane {
    AdelePlane {
        base,
        steps: vec![
            StaircaseStep {
                field: "k((x))((y))".into(),
                integers: "k((x))[[y]]".into(),
                residue: "k((x))".into(),
            },
            StaircaseStep {
                field: "k((x))".into(),
                integers: "k[[x]]".into(),
                residue: "k".into(),
            },
        ],
    }
}

impl AdelePlane {
    /// An element of `K = k((x))((y))` from integer terms `(a_x, a_y, c)`.
    pub fn element(&self, terms: &[(i64, i64, i64)]) -> TruncatedSeries {
        let t: Vec<(Vec<i64>, i64)> = terms.iter().map(|&(x, y, c)| (vec![x, y], c)).collect();
        TruncatedSeries::polynomial(self.base.clone(), &t)
    }
}

// ---------------------------------------------------------------------------
// The cusp and its lattice gap
// ---------------------------------------------------------------------------

/// The cusp model for the flag `((0) > (s^2-t^3) > (s,t))` on the plane:
/// normalization `k[[u]]` via `t -> u^2`, `s -> u^3`, value semigroup <2,3>.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspModel {
    pub generators: (u64, u64),
}

impl Default for CuspModel {
    fn default() -> Self {
        CuspModel { generators: (2, 3) }
    }
}

/// Verdict of the Beilinson-realizability check for `u^v k[[u]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CuspVerdict {
    /// Generated from an element with semigroup-supported expansion.
    Realizable { generator: String },
    /// Every element supported in the semigroup misses this valuation.
    Unrealizable { gap_witness: i64 },
}

impl CuspModel {
    pub fn gaps(&self) -> Vec<u64> {
        semigroup_gaps(&[self.generators.0, self.generators.1]).expect("coprime by construction")
    }

    /// Decide whether a standard-form u-lattice `u^v k[[u]]` arises from a
    /// Beilinson lattice of the cusp flag. Realizable exactly when `v` lies
    /// in the value semigroup; the single gap of <2,3> drives the
    /// counterexample.
    pub fn is_beilinson_realizable(
        &self,
        target: &MonomialLattice,
    ) -> Result<CuspVerdict, GeometryError> {
        if target.arity() != 1 {
            return Err(GeometryError::NotStandardForm);
        }
        let (m, big) = target.sandwich_standard();
        if m != big || !target.subspace().slices.is_empty() {
            return Err(GeometryError::NotStandardForm);
        }
        Ok(self.realizability_of_valuation(m))
    }

    /// The same decision on the raw valuation `v`.
    pub fn realizability_of_valuation(&self, v: i64) -> CuspVerdict {
        let (a, b) = (self.generators.0 as i64, self.generators.1 as i64);
        if v < 0 {
            // semigroup-supported elements have valuations >= 0
            return CuspVerdict::Unrealizable { gap_witness: v };
        }
        let gaps = self.gaps();
        if gaps.contains(&(v as u64)) {
            return CuspVerdict::Unrealizable { gap_witness: v };
        }
        // produce the monomial generator t^i s^j with 2i + 3j = v
        for j in 0..=(v / b).max(0) {
            let rest = v - j * b;
            if rest >= 0 && rest % a == 0 {
                let i = rest / a;
                return CuspVerdict::Realizable {
                    generator: format!("t^{} s^{}  (u^{})", i, j, v),
                };
            }
        }
        CuspVerdict::Unrealizable { gap_witness: v }
    }
}

/// Finite complement of the numerical semigroup generated by `gens`.
pub fn semigroup_gaps(gens: &[u64]) -> Result<Vec<u64>, GeometryError> {
    if gens.is_empty() {
        return Err(GeometryError::NotCoprime);
    }
    let mut g = 0u64;
    for &x in gens {
        g = gcd(g, x);
    }
    if g != 1 {
        return Err(GeometryError::NotCoprime);
    }
    let lo = *gens.iter().min().unwrap();
    let hi = *gens.iter().max().unwrap();
    if lo == 1 {
        return Ok(Vec::new());
    }
    // every integer >= (lo-1)(hi-1) is representable
    let bound = ((lo - 1) * (hi - 1)) as usize + 1;
    let mut reachable = vec![false; bound.max(1)];
    reachable[0] = true;
    for n in 1..reachable.len() {
        for &d in gens {
            let d = d as usize;
            if n >= d && reachable[n - d] {
                reachable[n] = true;
                break;
            }
        }
    }
    Ok(reachable
        .iter()
        .enumerate()
        .filter(|(_, &r)| !r)
        .map(|(n, _)| n as u64)
        .collect())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A monomial Tate lattice that is not a standard lattice: standard(0)
/// enlarged by a proper exceptional slice one step below.
pub fn tate_lattice_not_standard() -> MonomialLattice {
    let mut slices = BTreeMap::new();
    slices.insert(
        -1,
        SliceVal::Sub {
            sub: MonomialSubspace::standard(1, 2),
        },
    );
    MonomialLattice::new(MonomialSubspace {
        arity: 2,
        below: Region::Zero,
        slices,
        tail_from: 0,
        tail: Region::Full,
    })
    .expect("witness is a lattice")
}

// ---------------------------------------------------------------------------
// Parshin's open cover: V * V = K
// ---------------------------------------------------------------------------

/// A natural-topology open `V = sum_i U_i t2^i`: per-outer-exponent lower
/// bound on the inner exponent, FULL above a threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenProfile {
    /// `U_i` is the whole field for `i >= full_from`.
    pub full_from: i64,
    /// Below the threshold the bound is `base + slope * i` ...
    pub base: i64,
    pub slope: i64,
    /// ... except at finitely many listed exponents.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub exceptions: BTreeMap<i64, i64>,
}

impl OpenProfile {
    /// The profile `U_i = {a1 >= -|i|}` for `i < 0`, FULL for `i >= 0`.
    pub fn thinning() -> OpenProfile {
        OpenProfile {
            full_from: 0,
            base: 0,
            slope: 1,
            exceptions: BTreeMap::new(),
        }
    }

    pub fn bound(&self, outer: i64) -> Option<i64> {
        if outer >= self.full_from {
            return None; // FULL slice
        }
        Some(
            self.exceptions
                .get(&outer)
                .copied()
                .unwrap_or(self.base + self.slope * outer),
        )
    }

    pub fn contains(&self, e: &Exponents) -> bool {
        match self.bound(e.0[1]) {
            None => true,
            Some(b) => e.0[0] >= b,
        }
    }
}

/// One factorization exhibited by the cover demo.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFactorization {
    pub monomial: (i64, i64),
    pub factor_in_full: (i64, i64),
    pub factor_compensating: (i64, i64),
}

/// For every monomial in the box, factor it into two members of `V`: one
/// with the outer exponent in the FULL range, the other compensating.
pub fn parshin_cover(
    profile: &OpenProfile,
    box_lo: (i64, i64),
    box_hi: (i64, i64),
) -> Vec<CoverFactorization> {
    let mut out = Vec::new();
    for a in box_lo.0..=box_hi.0 {
        for b in box_lo.1..=box_hi.1 {
            let b1 = profile.full_from.max(b - profile.full_from);
            let b2 = b - b1;
            let a2 = profile.bound(b2).map_or(0, |bd| bd.max(0));
            let a1 = a - a2;
            let f1 = (a1, b1);
            let f2 = (a2, b2);
            debug_assert!(profile.contains(&Exponents(vec![f1.0, f1.1])));
            debug_assert!(profile.contains(&Exponents(vec![f2.0, f2.1])));
            out.push(CoverFactorization {
                monomial: (a, b),
                factor_in_full: f1,
                factor_compensating: f2,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hensel_p5_quadratic() {
        // f = x^2 - 2 = x^2 + 3 over F_5, N = 2: a = x + x*pi
        let model = hensel_coefficient_field(5, &[3, 0, 1], 2).unwrap();
        assert_eq!(model.embedding.len(), 2);
        assert_eq!(model.embedding[0], vec![0, 1]); // x
        assert_eq!(model.embedding[1], vec![0, 1]); // x * pi
        // oracle: expand (x + x f)^2 - 2 in F_5[x] and reduce mod f^2
        let p = 5;
        let f = [3u64, 0, 1];
        let f2 = PolyFp::mul(&f, &f, p);
        let a = PolyFp::add(&[0, 1], &PolyFp::mul(&[0, 1], &f, p), p);
        let fa = PolyFp::rem(
            &PolyFp::add(&PolyFp::mul(&a, &a, p), &[3], p),
            &f2,
            p,
        );
        assert!(fa.is_empty(), "a^2 - 2 != 0 mod f^2: {:?}", fa);
    }

    #[test]
    fn hensel_contract_various() {
        for (p, f, n) in [(5u64, vec![3u64, 0, 1], 8u32), (7, vec![4, 0, 1], 5), (3, vec![1, 2, 0, 1], 6)] {
            let model = hensel_coefficient_field(p, &f, n).unwrap();
            // reconstruct a from digits and verify f(a) = 0 mod f^n
            let mut a = Vec::new();
            let mut power = vec![1u64];
            let mut modulus = vec![1u64];
            for _ in 0..n {
                modulus = PolyFp::mul(&modulus, &f, p);
            }
            for digit in &model.embedding {
                a = PolyFp::add(&a, &PolyFp::mul(digit, &power, p), p);
                power = PolyFp::mul(&power, &f, p);
            }
            let fa = PolyFp::rem(&eval_poly(&f, &a, p, &modulus), &modulus, p);
            assert!(fa.is_empty(), "hensel failed for p={} f={:?}", p, f);
            // a = x mod pi
            assert_eq!(model.embedding[0], vec![0, 1]);
            // quadratic convergence: error valuation at least doubles
            let vals = &model.error_valuations;
            for w in vals.windows(2) {
                assert!(w[1] >= (2 * w[0]).min(n) || w[1] >= n);
            }
        }
    }

    #[test]
    fn hensel_base_cases() {
        // N = 1: no correction needed
        let model = hensel_coefficient_field(5, &[3, 0, 1], 1).unwrap();
        assert_eq!(model.embedding, vec![vec![0, 1]]);
        // reducible f rejected
        assert!(matches!(
            hensel_coefficient_field(5, &[4, 0, 1], 3),
            Err(GeometryError::Field(FieldError::NotIrreducible))
        ));
    }

    #[test]
    fn adele_line_examples() {
        let line = adele_line(5, &[3, 0, 1]).unwrap();
        assert_eq!(line.residue_degree, 2); // kappa = F_25
        let line2 = adele_line(2, &[0, 1]).unwrap();
        assert_eq!(line2.kappa, FieldSpec::finite_prime(2).unwrap());
        // round-trip: invert 1 - pi to precision 5
        let a = line2.series(&[(0, 1), (1, -1)]);
        let inv = a.inv(&[5]).unwrap();
        for k in 0..5 {
            assert!(inv.coeff(&Exponents(vec![k])).unwrap().is_one());
        }
    }

    #[test]
    fn adele_plane_staircase() {
        let plane = adele_plane_smooth(FieldSpec::Rationals);
        assert_eq!(plane.steps.len(), 2);
        // residue of x^-1 y + 1 at the first step is 1
        let e = plane.element(&[(-1, 1, 1), (0, 0, 1)]);
        let r = e.residue().unwrap();
        assert_eq!(r.coeffs().len(), 1);
        assert!(r.coeff(&Exponents(vec![0])).unwrap().is_one());
        // valuation of y^3 x^-2
        let v = plane.element(&[(-2, 3, 1)]).lex_valuation().unwrap();
        assert_eq!(v, Exponents(vec![-2, 3]));
        // section law at each step
        let k1_elem = TruncatedSeries::polynomial(FieldSpec::Rationals, &[(vec![2], 1)]);
        assert_eq!(k1_elem.lift_std().residue().unwrap(), k1_elem);
    }

    #[test]
    fn semigroup_gap_sets() {
        assert_eq!(semigroup_gaps(&[2, 3]).unwrap(), vec![1]);
        assert_eq!(semigroup_gaps(&[1]).unwrap(), Vec::<u64>::new());
        assert_eq!(semigroup_gaps(&[3, 5]).unwrap(), vec![1, 2, 4, 7]);
        assert_eq!(semigroup_gaps(&[2, 4]), Err(GeometryError::NotCoprime));
    }

    #[test]
    fn cusp_realizability() {
        let cusp = CuspModel::default();
        assert!(matches!(
            cusp.realizability_of_valuation(0),
            CuspVerdict::Realizable { .. }
        ));
        assert!(matches!(
            cusp.realizability_of_valuation(2),
            CuspVerdict::Realizable { .. }
        ));
        assert_eq!(
            cusp.realizability_of_valuation(1),
            CuspVerdict::Unrealizable { gap_witness: 1 }
        );
        // via the lattice interface
        let target = MonomialLattice::standard(1, 1);
        assert_eq!(
            cusp.is_beilinson_realizable(&target).unwrap(),
            CuspVerdict::Unrealizable { gap_witness: 1 }
        );
        let ok = MonomialLattice::standard(1, 2);
        assert!(matches!(
            cusp.is_beilinson_realizable(&ok).unwrap(),
            CuspVerdict::Realizable { .. }
        ));
        // non-standard targets are refused
        let fancy = MonomialLattice::new(MonomialSubspace::one_dim(&[0], Some(3))).unwrap();
        assert!(matches!(
            cusp.is_beilinson_realizable(&fancy),
            Err(GeometryError::NotStandardForm)
        ));
        let wrong_arity = MonomialLattice::standard(2, 0);
        assert!(matches!(
            cusp.is_beilinson_realizable(&wrong_arity),
            Err(GeometryError::NotStandardForm)
        ));
    }

    #[test]
    fn cusp_monotone_under_semigroup_shifts() {
        let cusp = CuspModel::default();
        for v in 0..10i64 {
            if let CuspVerdict::Realizable { .. } = cusp.realizability_of_valuation(v) {
                for s in [2i64, 3, 5] {
                    assert!(matches!(
                        cusp.realizability_of_valuation(v + s),
                        CuspVerdict::Realizable { .. }
                    ));
                }
            }
        }
    }

    #[test]
    fn gap_iff_unrealizable() {
        let cusp = CuspModel::default();
        let gaps = cusp.gaps();
        for v in 0..12u64 {
            let unreal = matches!(
                cusp.realizability_of_valuation(v as i64),
                CuspVerdict::Unrealizable { .. }
            );
            assert_eq!(unreal, gaps.contains(&v));
        }
    }

    #[test]
    fn strictness_witnesses() {
        // (a) a standard (Yekutieli) lattice that is not Beilinson-realizable
        let cusp = CuspModel::default();
        assert!(matches!(
            cusp.is_beilinson_realizable(&MonomialLattice::standard(1, 1))
                .unwrap(),
            CuspVerdict::Unrealizable { .. }
        ));
        // (b) a monomial Tate lattice that is not standard
        let witness = tate_lattice_not_standard();
        let (m, big) = witness.sandwich_standard();
        assert!(m < big, "witness must differ from every standard lattice");
        assert!(witness.subspace().is_lattice());
    }

    #[test]
    fn parshin_cover_box() {
        let profile = OpenProfile::thinning();
        // the example monomial t1^-9 t2^-4
        let fs = parshin_cover(&profile, (-9, -4), (-9, -4));
        assert_eq!(fs.len(), 1);
        let f = &fs[0];
        assert_eq!(
            (f.factor_in_full.0 + f.factor_compensating.0,
             f.factor_in_full.1 + f.factor_compensating.1),
            (-9, -4)
        );
        assert!(profile.contains(&Exponents(vec![f.factor_in_full.0, f.factor_in_full.1])));
        assert!(profile.contains(&Exponents(vec![
            f.factor_compensating.0,
            f.factor_compensating.1
        ])));
        // identity factorization exists for the unit monomial
        let unit = parshin_cover(&profile, (0, 0), (0, 0));
        let u = &unit[0];
        assert_eq!(
            (u.factor_in_full.0 + u.factor_compensating.0,
             u.factor_in_full.1 + u.factor_compensating.1),
            (0, 0)
        );
        // full 7x7 box around the origin: all 49 factorizations found
        let all = parshin_cover(&profile, (-3, -3), (3, 3));
        assert_eq!(all.len(), 49);
        for f in &all {
            assert!(profile.contains(&Exponents(vec![f.factor_in_full.0, f.factor_in_full.1])));
            assert!(profile.contains(&Exponents(vec![
                f.factor_compensating.0,
                f.factor_compensating.1
            ])));
            assert_eq!(
                (f.factor_in_full.0 + f.factor_compensating.0,
                 f.factor_in_full.1 + f.factor_compensating.1),
                f.monomial
            );
        }
    }
}
