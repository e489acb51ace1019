//! Monomially-spanned subspaces of `V(n) = k((t1))...((tn))` and the lattice
//! Grassmannian restricted to them: containment, meet, join, quotients, the
//! standard-lattice sandwich, and the lattice predicate.
//!
//! A subspace of arity n is described by finitely many exceptional slices on
//! the outermost exponent plus uniform regions below and above. Standard
//! lattices `standard(i) = tn^i * O1` are the special case with no
//! exceptional slices.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

use crate::series::Exponents;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("operands have different arities")]
    ArityMismatch,
    #[error("arity must be at least 1")]
    BadArity,
    #[error("big lattice does not contain the small one")]
    NotContained,
    #[error("subspace fails the lattice predicate: {0}")]
    NotALattice(LatticeDefect),
}

/// Reason a monomial subspace fails to be a Tate lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeDefect {
    /// No FULL tail: the quotient V/L would not be discrete (Ind).
    NoFullTail,
    /// Members at arbitrarily negative outer exponents: L would not be
    /// linearly compact (Pro).
    UnboundedBelow,
    /// An exceptional slice violates the conditions one level down.
    BadSlice,
}

impl fmt::Display for LatticeDefect {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeDefect::NoFullTail => write!(out, "no FULL tail"),
            LatticeDefect::UnboundedBelow => write!(out, "unbounded below"),
            LatticeDefect::BadSlice => write!(out, "bad exceptional slice"),
        }
    }
}

/// Uniform slice behaviour outside the exceptional window.
///
/// `HalfLine { base, slope }` assigns to outer exponent `j` the subspace of
/// one arity down spanned by monomials with leading exponent
/// `>= base + slope * j` (inner coordinates free).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Zero,
    Full,
    HalfLine { base: i64, slope: i64 },
}

/// Value of a single slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SliceVal {
    Zero,
    Full,
    Sub { sub: MonomialSubspace },
}

/// Recursive finite description of a monomially-spanned subspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialSubspace {
    pub arity: usize,
    /// Behaviour for outer exponents below every listed slice.
    pub below: Region,
    /// Exceptional slices, keyed by the outer exponent.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub slices: BTreeMap<i64, SliceVal>,
    /// First outer exponent governed by `tail`.
    pub tail_from: i64,
    pub tail: Region,
}

impl MonomialSubspace {
    /// The standard lattice `tn^i * O1`: full from `i`, zero below.
    pub fn standard(arity: usize, i: i64) -> MonomialSubspace {
        MonomialSubspace {
            arity,
            below: Region::Zero,
            slices: BTreeMap::new(),
            tail_from: i,
            tail: Region::Full,
        }
    }

    /// Everything.
    pub fn full(arity: usize) -> MonomialSubspace {
        MonomialSubspace {
            arity,
            below: Region::Full,
            slices: BTreeMap::new(),
            tail_from: 0,
            tail: Region::Full,
        }
    }

    /// Nothing.
    pub fn empty(arity: usize) -> MonomialSubspace {
        MonomialSubspace {
            arity,
            below: Region::Zero,
            slices: BTreeMap::new(),
            tail_from: 0,
            tail: Region::Zero,
        }
    }

    /// Arity-1 subspace from a finite member list plus an optional full tail.
    pub fn one_dim(extras: &[i64], full_from: Option<i64>) -> MonomialSubspace {
        let tail_from = full_from.unwrap_or_else(|| extras.iter().max().map_or(0, |m| m + 1));
        let mut slices = BTreeMap::new();
        for &e in extras {
            if e < tail_from {
                slices.insert(e, SliceVal::Full);
            }
        }
        let mut s = MonomialSubspace {
            arity: 1,
            below: Region::Zero,
            slices,
            tail_from,
            tail: if full_from.is_some() {
                Region::Full
            } else {
                Region::Zero
            },
        };
        s.canonicalize();
        s
    }

    /// The slice value at outer exponent `j` (resolving regions).
    pub fn slice_at(&self, j: i64) -> SliceVal {
        if let Some(v) = self.slices.get(&j) {
            return v.clone();
        }
        let region = if j >= self.tail_from {
            &self.tail
        } else if self
            .slices
            .keys()
            .next()
            .is_none_or(|&first| j < first)
        {
            &self.below
        } else {
            // gap inside the exceptional window defaults to the below region
            &self.below
        };
        match region {
            Region::Zero => SliceVal::Zero,
            Region::Full => SliceVal::Full,
            Region::HalfLine { base, slope } => {
                if self.arity == 1 {
                    SliceVal::Zero
                } else {
                    SliceVal::Sub {
                        sub: MonomialSubspace::standard(self.arity - 1, base + slope * j),
                    }
                }
            }
        }
    }

    /// Decide membership of a monomial exponent.
    pub fn contains_exponent(&self, e: &Exponents) -> bool {
        assert_eq!(e.arity(), self.arity, "exponent arity mismatch");
        let j = e.0[self.arity - 1];
        match self.slice_at(j) {
            SliceVal::Zero => false,
            SliceVal::Full => true,
            SliceVal::Sub { sub } => sub.contains_exponent(&Exponents(e.0[..self.arity - 1].to_vec())),
        }
    }

    /// Whether the subspace has no members at all.
    pub fn is_empty_space(&self) -> bool {
        if self.tail != Region::Zero || self.below != Region::Zero {
            return false;
        }
        self.slices.values().all(|v| match v {
            SliceVal::Zero => true,
            SliceVal::Full => false,
            SliceVal::Sub { sub } => sub.is_empty_space(),
        })
    }

    fn slice_is_full(v: &SliceVal) -> bool {
        match v {
            SliceVal::Full => true,
            SliceVal::Zero => false,
            SliceVal::Sub { sub } => sub.is_full_space(),
        }
    }

    fn is_full_space(&self) -> bool {
        if self.below != Region::Full || self.tail != Region::Full {
            return false;
        }
        self.slices.values().all(Self::slice_is_full)
    }

    /// Canonical form: collapse slice values that equal the governing
    /// region, shrink the window until boundary slices are informative.
    pub fn canonicalize(&mut self) {
        for v in self.slices.values_mut() {
            if let SliceVal::Sub { sub } = v {
                sub.canonicalize();
                if sub.is_empty_space() {
                    *v = SliceVal::Zero;
                } else if sub.is_full_space() {
                    *v = SliceVal::Full;
                }
            }
        }
        // drop slices at/above tail_from equal to the tail value, move
        // tail_from down over matching slices
        loop {
            let j = self.tail_from - 1;
            let matches_tail = match self.slices.get(&j) {
                Some(v) => self.region_matches(&self.tail, j, v),
                None => false,
            };
            if matches_tail {
                self.slices.remove(&j);
                self.tail_from = j;
            } else {
                break;
            }
        }
        let tail_from = self.tail_from;
        let tail = self.tail.clone();
        let below = self.below.clone();
        let keep: Vec<(i64, SliceVal)> = self
            .slices
            .iter()
            .filter(|(&j, v)| {
                if j >= tail_from {
                    !self.region_matches(&tail, j, v)
                } else {
                    !self.region_matches(&below, j, v)
                }
            })
            .map(|(&j, v)| (j, v.clone()))
            .collect();
        self.slices = keep.into_iter().collect();
        if self.below == self.tail && self.slices.is_empty() && !matches!(self.below, Region::HalfLine { .. }) {
            self.tail_from = 0;
        }
    }

    fn region_matches(&self, region: &Region, j: i64, v: &SliceVal) -> bool {
        match region {
            Region::Zero => matches!(v, SliceVal::Zero) || matches!(v, SliceVal::Sub { sub } if sub.is_empty_space()),
            Region::Full => Self::slice_is_full(v),
            Region::HalfLine { base, slope } => {
                if self.arity == 1 {
                    false
                } else {
                    let std = MonomialSubspace::standard(self.arity - 1, base + slope * j);
                    match v {
                        SliceVal::Sub { sub } => {
                            let mut s = sub.clone();
                            s.canonicalize();
                            s == std
                        }
                        _ => false,
                    }
                }
            }
        }
    }

    /// Outer exponents worth examining when comparing/merging descriptions.
    fn breakpoints(&self, other: &MonomialSubspace) -> Vec<i64> {
        let mut pts: Vec<i64> = self
            .slices
            .keys()
            .chain(other.slices.keys())
            .copied()
            .collect();
        pts.push(self.tail_from);
        pts.push(other.tail_from);
        let lo = pts.iter().copied().min().unwrap_or(0) - 1;
        let hi = pts.iter().copied().max().unwrap_or(0);
        // half-line tails with different slopes need the crossover range
        let mut extra_hi = hi;
        if let (
            Region::HalfLine { base: b1, slope: s1 },
            Region::HalfLine { base: b2, slope: s2 },
        ) = (&self.tail, &other.tail)
        {
            if s1 != s2 {
                let cross = (b2 - b1).div_euclid(s1 - s2);
                extra_hi = extra_hi.max(cross + 1);
            }
        }
        (lo..=extra_hi.max(lo + 1)).collect()
    }

    /// Containment of monomial sets, decided on descriptions.
    pub fn contains(&self, other: &MonomialSubspace) -> Result<bool, LatticeError> {
        if self.arity != other.arity {
            return Err(LatticeError::ArityMismatch);
        }
        // compare on all breakpoints plus symbolic tails/belows
        for j in self.breakpoints(other) {
            if !slice_contains(&self.slice_at(j), &other.slice_at(j)) {
                return Ok(false);
            }
        }
        // symbolic tail comparison for large j
        if !region_contains_region(&self.tail, &other.tail, self.arity, true) {
            return Ok(false);
        }
        if !region_contains_region(&self.below, &other.below, self.arity, false) {
            return Ok(false);
        }
        Ok(true)
    }

    /// Monomial intersection.
    pub fn meet(&self, other: &MonomialSubspace) -> Result<MonomialSubspace, LatticeError> {
        self.merge(other, true)
    }

    /// Monomial union.
    pub fn join(&self, other: &MonomialSubspace) -> Result<MonomialSubspace, LatticeError> {
        self.merge(other, false)
    }

    fn merge(&self, other: &MonomialSubspace, meet: bool) -> Result<MonomialSubspace, LatticeError> {
        if self.arity != other.arity {
            return Err(LatticeError::ArityMismatch);
        }
        let pts = self.breakpoints(other);
        let lo = *pts.first().unwrap();
        let hi = *pts.last().unwrap();
        let mut slices = BTreeMap::new();
        for j in lo..=hi {
            let v = merge_slices(&self.slice_at(j), &other.slice_at(j), meet)?;
            slices.insert(j, v);
        }
        let tail = merge_regions_tail(&self.tail, &other.tail, meet);
        let below = merge_regions_tail(&self.below, &other.below, meet);
        let mut out = MonomialSubspace {
            arity: self.arity,
            below,
            slices,
            tail_from: hi + 1,
            tail,
        };
        out.canonicalize();
        Ok(out)
    }

    /// The lattice predicate with the failing condition on refusal.
    pub fn lattice_defect(&self) -> Option<LatticeDefect> {
        if self.tail != Region::Full {
            return Some(LatticeDefect::NoFullTail);
        }
        if self.below != Region::Zero {
            return Some(LatticeDefect::UnboundedBelow);
        }
        for v in self.slices.values() {
            match v {
                SliceVal::Zero | SliceVal::Full => {}
                SliceVal::Sub { sub } => {
                    if sub.arity == 1 {
                        // must contain [M, inf) and be contained in [m, inf)
                        if sub.tail != Region::Full {
                            return Some(LatticeDefect::BadSlice);
                        }
                        if sub.below != Region::Zero {
                            return Some(LatticeDefect::BadSlice);
                        }
                    } else if sub.lattice_defect().is_some() {
                        return Some(LatticeDefect::BadSlice);
                    }
                }
            }
        }
        None
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_defect().is_none()
    }
}

fn slice_contains(a: &SliceVal, b: &SliceVal) -> bool {
    match (a, b) {
        (_, SliceVal::Zero) => true,
        (SliceVal::Full, _) => true,
        (SliceVal::Zero, SliceVal::Full) => false,
        (SliceVal::Zero, SliceVal::Sub { sub }) => sub.is_empty_space(),
        (SliceVal::Sub { sub }, SliceVal::Full) => sub.is_full_space(),
        (SliceVal::Sub { sub: sa }, SliceVal::Sub { sub: sb }) => {
            sa.contains(sb).unwrap_or(false)
        }
    }
}

/// Containment of two uniform regions for all `j` beyond the compared
/// breakpoints (tails: j -> +inf; belows: j -> -inf).
fn region_contains_region(a: &Region, b: &Region, arity: usize, toward_plus: bool) -> bool {
    match (a, b) {
        (_, Region::Zero) => true,
        (Region::Full, _) => true,
        (Region::Zero, _) => false,
        (Region::HalfLine { .. }, Region::Full) => false,
        (Region::HalfLine { base: b1, slope: s1 }, Region::HalfLine { base: b2, slope: s2 }) => {
            if arity == 1 {
                return true; // half-lines degenerate to Zero at arity 1
            }
            // need b1 + s1 j <= b2 + s2 j for all large (or small) j
            if toward_plus {
                s1 < s2 || (s1 == s2 && b1 <= b2)
            } else {
                s1 > s2 || (s1 == s2 && b1 <= b2)
            }
        }
    }
}

fn merge_slices(a: &SliceVal, b: &SliceVal, meet: bool) -> Result<SliceVal, LatticeError> {
    Ok(match (a, b) {
        (SliceVal::Zero, x) | (x, SliceVal::Zero) => {
            if meet {
                SliceVal::Zero
            } else {
                x.clone()
            }
        }
        (SliceVal::Full, x) | (x, SliceVal::Full) => {
            if meet {
                x.clone()
            } else {
                SliceVal::Full
            }
        }
        (SliceVal::Sub { sub: sa }, SliceVal::Sub { sub: sb }) => {
            let sub = if meet { sa.meet(sb)? } else { sa.join(sb)? };
            SliceVal::Sub { sub }
        }
    })
}

/// Merge two uniform regions, exact where the class is closed. Half-line
/// pairs with different slopes pick the asymptotically correct side; the
/// crossover range is covered by explicit breakpoint slices in `merge`.
fn merge_regions_tail(a: &Region, b: &Region, meet: bool) -> Region {
    match (a, b) {
        (Region::Zero, x) | (x, Region::Zero) => {
            if meet {
                Region::Zero
            } else {
                x.clone()
            }
        }
        (Region::Full, x) | (x, Region::Full) => {
            if meet {
                x.clone()
            } else {
                Region::Full
            }
        }
        (Region::HalfLine { base: b1, slope: s1 }, Region::HalfLine { base: b2, slope: s2 }) => {
            // for meet the pointwise max bound wins asymptotically, for join
            // the pointwise min
            let first_wins_plus = if meet { s1 > s2 } else { s1 < s2 };
            if s1 == s2 {
                let base = if meet { *b1.max(b2) } else { *b1.min(b2) };
                Region::HalfLine { base, slope: *s1 }
            } else if first_wins_plus {
                Region::HalfLine {
                    base: *b1,
                    slope: *s1,
                }
            } else {
                Region::HalfLine {
                    base: *b2,
                    slope: *s2,
                }
            }
        }
    }
}

/// A monomial subspace satisfying the lattice predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialLattice(MonomialSubspace);

impl MonomialLattice {
    pub fn new(mut subspace: MonomialSubspace) -> Result<MonomialLattice, LatticeError> {
        subspace.canonicalize();
        match subspace.lattice_defect() {
            None => Ok(MonomialLattice(subspace)),
            Some(d) => Err(LatticeError::NotALattice(d)),
        }
    }

    pub fn standard(arity: usize, i: i64) -> MonomialLattice {
        MonomialLattice(MonomialSubspace::standard(arity, i))
    }

    pub fn subspace(&self) -> &MonomialSubspace {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.arity
    }

    pub fn contains(&self, other: &MonomialLattice) -> Result<bool, LatticeError> {
        self.0.contains(&other.0)
    }

    /// Greatest monomial lattice contained in both.
    pub fn meet(&self, other: &MonomialLattice) -> Result<MonomialLattice, LatticeError> {
        MonomialLattice::new(self.0.meet(&other.0)?)
    }

    /// Least monomial lattice containing both.
    pub fn join(&self, other: &MonomialLattice) -> Result<MonomialLattice, LatticeError> {
        MonomialLattice::new(self.0.join(&other.0)?)
    }

    /// Minimal `M` and maximal `m` with `standard(M) <= L <= standard(m)`.
    pub fn sandwich_standard(&self) -> (i64, i64) {
        let s = &self.0;
        // minimal M: all slices at j >= M are full
        let mut big = s.tail_from;
        while big > s.tail_from - 64 {
            let j = big - 1;
            if MonomialSubspace::slice_is_full(&s.slice_at(j)) {
                big = j;
            } else {
                break;
            }
        }
        // maximal m: lowest j with a nonzero slice
        let mut small = big;
        let lowest_nonzero = s
            .slices
            .iter()
            .filter(|(_, v)| !matches!(v, SliceVal::Zero))
            .map(|(&j, _)| j)
            .min();
        if let Some(j) = lowest_nonzero {
            small = small.min(j);
        }
        small = small.min(s.tail_from);
        (small, big)
    }

    /// Graded quotient: per outer exponent, the pair of slice descriptors
    /// where the two lattices differ, with FULL/ZERO collapsed.
    pub fn quotient(
        &self,
        small: &MonomialLattice,
    ) -> Result<Vec<(i64, QuotientSlice)>, LatticeError> {
        if self.arity() != small.arity() {
            return Err(LatticeError::ArityMismatch);
        }
        if !self.contains(small)? {
            return Err(LatticeError::NotContained);
        }
        let pts = self.0.breakpoints(&small.0);
        let lo = *pts.first().unwrap();
        let hi = (*pts.last().unwrap()).max(self.0.tail_from.max(small.0.tail_from));
        let mut out = Vec::new();
        for j in lo..=hi {
            let big_v = self.0.slice_at(j);
            let small_v = small.0.slice_at(j);
            if slice_contains(&small_v, &big_v) {
                continue; // equal slices contribute nothing
            }
            out.push((
                j,
                QuotientSlice {
                    big: big_v,
                    small: small_v,
                },
            ));
        }
        Ok(out)
    }
}

impl fmt::Display for MonomialLattice {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, big) = self.sandwich_standard();
        write!(out, "lattice[std({}) .. std({})]", big, m)
    }
}

/// One graded slice of a lattice quotient `Lbig/Lsmall`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSlice {
    pub big: SliceVal,
    pub small: SliceVal,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std2(i: i64) -> MonomialLattice {
        MonomialLattice::standard(2, i)
    }

    #[test]
    fn standard_containment() {
        assert!(std2(0).contains(&std2(3)).unwrap());
        assert!(!std2(3).contains(&std2(0)).unwrap());
        assert!(std2(1).contains(&std2(1)).unwrap());
    }

    #[test]
    fn exceptional_slice_contained_in_standard() {
        // L with slice t1^2 k[[t1]] at outer exponent -1, window [-1,0) and
        // full tail from 0, inside standard(-1)
        let mut slices = BTreeMap::new();
        slices.insert(
            -1,
            SliceVal::Sub {
                sub: MonomialSubspace::standard(1, 2),
            },
        );
        let l = MonomialLattice::new(MonomialSubspace {
            arity: 2,
            below: Region::Zero,
            slices,
            tail_from: 0,
            tail: Region::Full,
        })
        .unwrap();
        assert!(std2(-1).contains(&l).unwrap());
        assert!(!l.contains(&std2(-1)).unwrap());
        // brute-force oracle over a 20x20 exponent box
        for a1 in -10..10i64 {
            for a2 in -10..10i64 {
                let e = Exponents(vec![a1, a2]);
                let in_l = l.subspace().contains_exponent(&e);
                let in_std = std2(-1).subspace().contains_exponent(&e);
                assert!(!in_l || in_std, "member of L outside standard(-1) at {e}");
            }
        }
    }

    #[test]
    fn meet_join_standard() {
        assert_eq!(std2(1).meet(&std2(3)).unwrap(), std2(3));
        assert_eq!(std2(1).join(&std2(3)).unwrap(), std2(1));
        let l = std2(2);
        assert_eq!(l.meet(&l).unwrap(), l);
        assert_eq!(l.join(&l).unwrap(), l);
    }

    #[test]
    fn sandwich_examples() {
        assert_eq!(std2(4).sandwich_standard(), (4, 4));
        // standard(0) plus a FULL slice at -2
        let mut slices = BTreeMap::new();
        slices.insert(-2, SliceVal::Full);
        let l = MonomialLattice::new(MonomialSubspace {
            arity: 2,
            below: Region::Zero,
            slices,
            tail_from: 0,
            tail: Region::Full,
        })
        .unwrap();
        let (m, big) = l.sandwich_standard();
        assert_eq!((m, big), (-2, 0));
        assert!(MonomialLattice::standard(2, m).contains(&l).unwrap());
        assert!(l.contains(&MonomialLattice::standard(2, big)).unwrap());
    }

    #[test]
    fn quotient_examples() {
        // quotient(standard(0), standard(2)) has slices at 0 and 1, both full
        let q = std2(0).quotient(&std2(2)).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q[0].0, 0);
        assert_eq!(q[1].0, 1);
        for (_, s) in &q {
            assert_eq!(s.big, SliceVal::Full);
            assert_eq!(s.small, SliceVal::Zero);
        }
        // quotient(L, L) is empty
        assert!(std2(1).quotient(&std2(1)).unwrap().is_empty());
        // quotient(standard(0), L') with one proper slice
        let mut slices = BTreeMap::new();
        slices.insert(
            0,
            SliceVal::Sub {
                sub: MonomialSubspace::standard(1, 3),
            },
        );
        let lp = MonomialLattice::new(MonomialSubspace {
            arity: 2,
            below: Region::Zero,
            slices,
            tail_from: 1,
            tail: Region::Full,
        })
        .unwrap();
        let q = std2(0).quotient(&lp).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].0, 0);
        assert_eq!(q[0].1.big, SliceVal::Full);
        assert_eq!(
            q[0].1.small,
            SliceVal::Sub {
                sub: MonomialSubspace::standard(1, 3)
            }
        );
    }

    #[test]
    fn lattice_predicate() {
        assert!(MonomialSubspace::standard(2, 5).is_lattice());
        // diagonal subspace: slice rule a1 >= -a2 for a2 >= 0, never FULL
        let diag = MonomialSubspace {
            arity: 2,
            below: Region::Zero,
            slices: BTreeMap::new(),
            tail_from: 0,
            tail: Region::HalfLine { base: 0, slope: -1 },
        };
        assert_eq!(diag.lattice_defect(), Some(LatticeDefect::NoFullTail));
        // membership sanity for the diagonal
        assert!(diag.contains_exponent(&Exponents(vec![-3, 3])));
        assert!(!diag.contains_exponent(&Exponents(vec![-4, 3])));
        assert!(!diag.contains_exponent(&Exponents(vec![0, -1])));
        // unbounded below
        let bad = MonomialSubspace {
            arity: 2,
            below: Region::Full,
            slices: BTreeMap::new(),
            tail_from: 0,
            tail: Region::Full,
        };
        assert_eq!(bad.lattice_defect(), Some(LatticeDefect::UnboundedBelow));
    }

    #[test]
    fn poset_laws_random() {
        // reflexive, antisymmetric on canonical descriptions, transitive
        let samples = sample_lattices();
        for a in &samples {
            assert!(a.contains(a).unwrap());
        }
        for a in &samples {
            for b in &samples {
                let ab = a.contains(b).unwrap();
                let ba = b.contains(a).unwrap();
                if ab && ba {
                    assert_eq!(a, b);
                }
                for c in &samples {
                    if ab && b.contains(c).unwrap() {
                        assert!(a.contains(c).unwrap());
                    }
                }
            }
        }
    }

    fn sample_lattices() -> Vec<MonomialLattice> {
        let mut out = vec![std2(-1), std2(0), std2(2)];
        let mut slices = BTreeMap::new();
        slices.insert(
            -1,
            SliceVal::Sub {
                sub: MonomialSubspace::standard(1, 1),
            },
        );
        out.push(
            MonomialLattice::new(MonomialSubspace {
                arity: 2,
                below: Region::Zero,
                slices: slices.clone(),
                tail_from: 0,
                tail: Region::Full,
            })
            .unwrap(),
        );
        slices.insert(
            -2,
            SliceVal::Sub {
                sub: MonomialSubspace::standard(1, 3),
            },
        );
        out.push(
            MonomialLattice::new(MonomialSubspace {
                arity: 2,
                below: Region::Zero,
                slices,
                tail_from: 0,
                tail: Region::Full,
            })
            .unwrap(),
        );
        out
    }

    #[test]
    fn meet_join_with_exceptional_slices() {
        let samples = sample_lattices();
        for a in &samples {
            for b in &samples {
                let m = a.meet(b).unwrap();
                let j = a.join(b).unwrap();
                assert!(a.contains(&m).unwrap());
                assert!(b.contains(&m).unwrap());
                assert!(j.contains(a).unwrap());
                assert!(j.contains(b).unwrap());
                // pointwise check on a box
                for a1 in -6..6i64 {
                    for a2 in -6..6i64 {
                        let e = Exponents(vec![a1, a2]);
                        let ia = a.subspace().contains_exponent(&e);
                        let ib = b.subspace().contains_exponent(&e);
                        assert_eq!(m.subspace().contains_exponent(&e), ia && ib);
                        assert_eq!(j.subspace().contains_exponent(&e), ia || ib);
                    }
                }
            }
        }
    }
}
