//! Iterated Laurent series `K = k((t1))...((tn))` as finite coefficient
//! tables with certified support and precision windows.
//!
//! `tn` is the outermost Laurent variable; the lexicographic order on
//! exponents takes the last coordinate as most significant, so the outer
//! coordinate of `lex_valuation` is the canonical discrete valuation and
//! the full tuple is the iterated one. Coefficients at or beyond a
//! precision cutoff are UNKNOWN, never zero.

use crate::basefield::{FieldError, FieldScalar, FieldSpec};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("operands belong to different field specs")]
    SpecMismatch,
    #[error("operands have different arities")]
    ArityMismatch,
    #[error("no output coefficient is certifiable")]
    EmptyPrecision,
    #[error("division by zero series")]
    DivisionByZero,
    #[error("leading slice is not a single certifiable monomial")]
    NonUnitLeading,
    #[error("series is zero")]
    ZeroSeries,
    #[error("leading term falls inside the unknown region")]
    IndeterminateLeading,
    #[error("series is not integral: certificate permits negative outer exponents")]
    NotIntegral,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// An exponent tuple `(a1, ..., an)`, one entry per variable `ti`.
///
/// Ordered lexicographically with the last coordinate most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Exponents(pub Vec<i64>);

impl Exponents {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        Exponents(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(out, "({})", body.join(","))
    }
}

/// Precision cutoff on one axis: exponents at or above a finite cutoff are
/// unknown; `Unbounded` marks an axis known everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prec {
    Finite(i64),
    Unbounded,
}

impl Prec {
    pub fn min(self, other: Prec) -> Prec {
        match (self, other) {
            (Prec::Unbounded, x) | (x, Prec::Unbounded) => x,
            (Prec::Finite(a), Prec::Finite(b)) => Prec::Finite(a.min(b)),
        }
    }

    pub fn shift(self, d: i64) -> Prec {
        match self {
            Prec::Unbounded => Prec::Unbounded,
            Prec::Finite(a) => Prec::Finite(a + d),
        }
    }

    pub fn allows(self, e: i64) -> bool {
        match self {
            Prec::Unbounded => true,
            Prec::Finite(h) => e < h,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Prec::Finite(h) => Some(h),
            Prec::Unbounded => None,
        }
    }
}

/// Lower-bound rule for one axis as a function of the next-outer exponent:
/// finitely many exceptional entries, a constant value below the threshold,
/// and an affine tail `base + slope * m` for `m >= threshold`.
///
/// The outermost axis carries a constant rule (slope 0, no exceptions).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceRule {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub exceptions: BTreeMap<i64, i64>,
    pub threshold: i64,
    pub base: i64,
    pub slope: i64,
    /// Constant bound for exponents below the threshold.
    pub below: i64,
}

impl SliceRule {
    pub fn constant(lo: i64) -> SliceRule {
        SliceRule {
            exceptions: BTreeMap::new(),
            threshold: 0,
            base: lo,
            slope: 0,
            below: lo,
        }
    }

    /// Affine tail from the threshold on, clamped at the threshold below it.
    pub fn affine(threshold: i64, base: i64, slope: i64) -> SliceRule {
        SliceRule {
            exceptions: BTreeMap::new(),
            threshold,
            base,
            slope,
            below: base + slope * threshold,
        }
    }

    /// Lower bound at outer exponent `m`.
    pub fn eval(&self, m: i64) -> i64 {
        if let Some(&v) = self.exceptions.get(&m) {
            return v;
        }
        if m >= self.threshold {
            self.base + self.slope * m
        } else {
            self.below
        }
    }

    pub fn is_constant(&self) -> bool {
        self.slope == 0 && self.exceptions.is_empty() && self.below == self.base
    }

    pub fn shift_value(&self, d: i64) -> SliceRule {
        SliceRule {
            exceptions: self.exceptions.iter().map(|(&m, &v)| (m, v + d)).collect(),
            threshold: self.threshold,
            base: self.base + d,
            slope: self.slope,
            below: self.below + d,
        }
    }

    /// Clamp the rule from below: pointwise `max(rule, c)`, exact at and
    /// above the threshold, never over-claiming below it.
    pub fn clamp_at_least(&self, c: i64) -> SliceRule {
        let mut exceptions: BTreeMap<i64, i64> = self
            .exceptions
            .iter()
            .map(|(&m, &v)| (m, v.max(c)))
            .collect();
        let below = self.below.max(c);
        let (threshold, base, slope) = if self.slope == 0 {
            (self.threshold, self.base.max(c), 0)
        } else if self.slope > 0 {
            // rising tail: exact exceptions until the tail reaches c
            let mut m = self.threshold;
            while self.base + self.slope * m < c && m - self.threshold < 10_000 {
                exceptions.entry(m).or_insert(c);
                m += 1;
            }
            if self.base + self.slope * m < c {
                // degenerate gap: fall back to a sound constant
                return SliceRule::constant(c);
            }
            (self.threshold, self.base, self.slope)
        } else {
            // falling tail: exact exceptions until the tail dips below c,
            // constant c from there on
            let mut m = self.threshold;
            while self.base + self.slope * m > c && m - self.threshold < 10_000 {
                exceptions.entry(m).or_insert(self.base + self.slope * m);
                m += 1;
            }
            if self.base + self.slope * m > c {
                return SliceRule::constant(c);
            }
            (m, c, 0)
        };
        let mut rule = SliceRule {
            exceptions,
            threshold,
            base,
            slope,
            below,
        };
        rule.normalize();
        rule
    }

    /// Pointwise minimum of two rules, exact for all outer exponents.
    pub fn pointwise_min(&self, other: &SliceRule) -> SliceRule {
        // Interesting breakpoints: all exceptions, both thresholds, and the
        // crossover of the two tails.
        let mut points: Vec<i64> = self
            .exceptions
            .keys()
            .chain(other.exceptions.keys())
            .copied()
            .collect();
        points.push(self.threshold);
        points.push(other.threshold);
        points.push(self.threshold.min(other.threshold) - 1);
        let hi_th = self.threshold.max(other.threshold);
        points.push(hi_th);
        if self.slope != other.slope {
            // crossover of base1 + s1 m = base2 + s2 m
            let num = other.base - self.base;
            let den = self.slope - other.slope;
            let cross = num.div_euclid(den);
            points.push(cross);
            points.push(cross + 1);
        }
        points.sort_unstable();
        points.dedup();
        // Tail: for m large the smaller-slope tail wins; equal slopes, the
        // smaller base.
        let (t_base, t_slope) = {
            let big = *points.last().unwrap() + 2;
            let a = (self.base + self.slope * big.max(self.threshold), self.slope);
            let b = (
                other.base + other.slope * big.max(other.threshold),
                other.slope,
            );
            // value at `big` plus slope determines the winning tail
            if a.0 < b.0 || (a.0 == b.0 && a.1 <= b.1) {
                (self.base, self.slope)
            } else {
                (other.base, other.slope)
            }
        };
        let threshold = hi_th.max(*points.last().unwrap() + 1);
        let mut exceptions = BTreeMap::new();
        let lo_pt = *points.first().unwrap();
        for m in lo_pt..=threshold {
            exceptions.insert(m, self.eval(m).min(other.eval(m)));
        }
        let mut rule = SliceRule {
            exceptions,
            threshold,
            base: t_base,
            slope: t_slope,
            below: self.below.min(other.below),
        };
        rule.normalize();
        rule
    }

    /// Remove exceptions that agree with the tail or below value and pull
    /// the threshold down as far as the exceptions allow.
    pub fn normalize(&mut self) {
        // Absorb exceptions lying on the affine tail directly above threshold
        // by extending the threshold downward.
        loop {
            let m = self.threshold - 1;
            match self.exceptions.get(&m) {
                Some(&v) if v == self.base + self.slope * m => {
                    self.exceptions.remove(&m);
                    self.threshold = m;
                }
                _ => break,
            }
        }
        let th = self.threshold;
        let base = self.base;
        let slope = self.slope;
        let below = self.below;
        self.exceptions.retain(|&m, &mut v| {
            let formula = if m >= th { base + slope * m } else { below };
            v != formula
        });
        if self.slope == 0 && self.below == self.base {
            self.threshold = 0;
        }
    }
}

/// Certified support and precision window of a truncated series.
///
/// `lo[i]` bounds axis `i+1` (1-based) from below as a function of the
/// exponent on axis `i+2`; the last entry is the constant outer bound.
/// `hi[i]` is the per-axis precision cutoff.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub lo: Vec<SliceRule>,
    pub hi: Vec<Prec>,
}

impl BoundCertificate {
    /// Rectangular window `prod [lo_i, hi_i)`.
    pub fn rectangular(lo: Vec<i64>, hi: Vec<Prec>) -> BoundCertificate {
        BoundCertificate {
            lo: lo.into_iter().map(SliceRule::constant).collect(),
            hi,
        }
    }

    /// Fully known window with the given lower corner.
    pub fn exact(lo: Vec<i64>) -> BoundCertificate {
        let n = lo.len();
        BoundCertificate::rectangular(lo, vec![Prec::Unbounded; n])
    }

    pub fn arity(&self) -> usize {
        self.lo.len()
    }

    /// Whether an exponent satisfies all lower bounds.
    pub fn above_lower_bounds(&self, e: &Exponents) -> bool {
        let n = self.arity();
        for i in 0..n {
            let bound = if i + 1 < n {
                self.lo[i].eval(e.0[i + 1])
            } else {
                self.lo[i].base
            };
            if e.0[i] < bound {
                return false;
            }
        }
        true
    }

    /// Whether an exponent lies strictly below every precision cutoff.
    pub fn within_precision(&self, e: &Exponents) -> bool {
        e.0.iter()
            .zip(&self.hi)
            .all(|(&a, h)| h.allows(a))
    }

    pub fn contains(&self, e: &Exponents) -> bool {
        self.above_lower_bounds(e) && self.within_precision(e)
    }

    /// Outer lower bound of the whole window on the outermost axis.
    pub fn outer_floor(&self) -> i64 {
        self.lo[self.arity() - 1].base
    }

    /// Global floor of axis `i`: minimum of the rule over outer exponents
    /// that can actually occur (bounded by the outer window). `None` when
    /// the axis is unbounded below over the reachable range.
    pub fn global_floor(&self, axis: usize) -> Option<i64> {
        let n = self.arity();
        if axis + 1 == n {
            return Some(self.lo[axis].base);
        }
        let rule = &self.lo[axis];
        // The outer coordinate m on axis+1 ranges over [floor, hi). With an
        // unbounded precision the affine tail decides boundedness.
        let outer_floor = self.global_floor(axis + 1)?;
        match self.hi[axis + 1] {
            Prec::Finite(h) => {
                let mut best: Option<i64> = None;
                for m in outer_floor..h {
                    let v = rule.eval(m);
                    best = Some(best.map_or(v, |b: i64| b.min(v)));
                }
                best.or(Some(rule.eval(outer_floor)))
            }
            Prec::Unbounded => {
                if rule.slope < 0 {
                    None
                } else {
                    let mut best = rule.base + rule.slope * rule.threshold.max(outer_floor);
                    for (&m, &v) in &rule.exceptions {
                        if m >= outer_floor {
                            best = best.min(v);
                        }
                    }
                    for m in outer_floor..=rule.threshold {
                        best = best.min(rule.eval(m));
                    }
                    Some(best)
                }
            }
        }
    }

    /// Componentwise intersection of known regions (for sums).
    pub fn intersect(&self, other: &BoundCertificate) -> BoundCertificate {
        let lo = self
            .lo
            .iter()
            .zip(&other.lo)
            .map(|(a, b)| a.pointwise_min(b))
            .collect();
        let hi = self
            .hi
            .iter()
            .zip(&other.hi)
            .map(|(&a, &b)| a.min(b))
            .collect();
        BoundCertificate { lo, hi }
    }

    /// Whether some exponent is certifiable (window nonempty on every axis).
    pub fn window_nonempty(&self) -> bool {
        let n = self.arity();
        for i in 0..n {
            match (self.global_floor(i), self.hi[i]) {
                (Some(f), Prec::Finite(h)) if f >= h => return false,
                (None, Prec::Finite(_)) => return false,
                _ => {}
            }
        }
        true
    }
}

/// A finitely supported series with a certificate for what the table means.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    spec: FieldSpec,
    n: usize,
    coeffs: BTreeMap<Exponents, FieldScalar>,
    cert: BoundCertificate,
}

impl TruncatedSeries {
    /// Zero series with the ambient certificate.
    pub fn zero(spec: FieldSpec, cert: BoundCertificate) -> TruncatedSeries {
        TruncatedSeries {
            spec,
            n: cert.arity(),
            coeffs: BTreeMap::new(),
            cert,
        }
    }

    /// Build from terms, dropping zero coefficients. Every exponent must lie
    /// in the certificate window.
    pub fn new(
        spec: FieldSpec,
        cert: BoundCertificate,
        terms: Vec<(Exponents, FieldScalar)>,
    ) -> Result<TruncatedSeries, SeriesError> {
        let n = cert.arity();
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if e.arity() != n {
                return Err(SeriesError::ArityMismatch);
            }
            if c.spec() != &spec {
                return Err(SeriesError::SpecMismatch);
            }
            if c.is_zero() {
                continue;
            }
            if !cert.contains(&e) {
                return Err(SeriesError::EmptyPrecision);
            }
            let slot = coeffs.entry(e).or_insert_with(|| spec.zero());
            *slot = slot.add(&c)?;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries {
            spec,
            n,
            coeffs,
            cert,
        })
    }

    /// Exactly known monomial `c * t^e`.
    pub fn monomial(spec: FieldSpec, e: Exponents, c: FieldScalar) -> TruncatedSeries {
        let cert = BoundCertificate::exact(e.0.clone());
        TruncatedSeries::new(spec, cert, vec![(e, c)]).expect("monomial certificate")
    }

    /// Exactly known polynomial from integer-coefficient terms.
    pub fn polynomial(spec: FieldSpec, terms: &[(Vec<i64>, i64)]) -> TruncatedSeries {
        let n = terms.first().map_or(1, |(e, _)| e.len());
        let mut lo = terms.first().map_or(vec![0i64; n], |(e, _)| e.clone());
        for (e, _) in terms {
            for (i, &a) in e.iter().enumerate() {
                lo[i] = lo[i].min(a);
            }
        }
        let cert = BoundCertificate::exact(lo);
        let terms = terms
            .iter()
            .map(|(e, c)| {
                (
                    Exponents(e.clone()),
                    FieldScalar::from_integer(spec.clone(), *c),
                )
            })
            .collect();
        TruncatedSeries::new(spec, cert, terms).expect("polynomial certificate")
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn cert(&self) -> &BoundCertificate {
        &self.cert
    }

    pub fn coeffs(&self) -> &BTreeMap<Exponents, FieldScalar> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: &Exponents) -> Option<&FieldScalar> {
        self.coeffs.get(e)
    }

    /// Machine check: every stored exponent satisfies the certificate.
    pub fn certificate_holds(&self) -> bool {
        self.coeffs.keys().all(|e| self.cert.contains(e))
    }

    /// Replace the certificate by a weaker one, dropping coefficients that
    /// fall outside its known region.
    pub fn restrict(&self, cert: BoundCertificate) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| cert.contains(e))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        TruncatedSeries {
            spec: self.spec.clone(),
            n: self.n,
            coeffs,
            cert,
        }
    }

    fn check_compat(&self, other: &TruncatedSeries) -> Result<(), SeriesError> {
        if self.spec != other.spec {
            return Err(SeriesError::SpecMismatch);
        }
        if self.n != other.n {
            return Err(SeriesError::ArityMismatch);
        }
        Ok(())
    }

    /// Coefficientwise sum on the intersection of the known regions.
    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_compat(other)?;
        let cert = self.cert.intersect(&other.cert);
        let mut coeffs = BTreeMap::new();
        for (e, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if !cert.contains(e) {
                continue;
            }
            let slot = coeffs.entry(e.clone()).or_insert_with(|| self.spec.zero());
            *slot = slot.add(c)?;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries {
            spec: self.spec.clone(),
            n: self.n,
            coeffs,
            cert,
        })
    }

    pub fn neg(&self) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| (e.clone(), c.neg()))
            .collect();
        TruncatedSeries {
            spec: self.spec.clone(),
            n: self.n,
            coeffs,
            cert: self.cert.clone(),
        }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldScalar) -> Result<TruncatedSeries, SeriesError> {
        if c.spec() != &self.spec {
            return Err(SeriesError::SpecMismatch);
        }
        let mut coeffs = BTreeMap::new();
        for (e, v) in &self.coeffs {
            let w = v.mul(c)?;
            if !w.is_zero() {
                coeffs.insert(e.clone(), w);
            }
        }
        Ok(TruncatedSeries {
            spec: self.spec.clone(),
            n: self.n,
            coeffs,
            cert: self.cert.clone(),
        })
    }

    /// Convolution product with exact certificate propagation.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_compat(other)?;
        let cert = mul_cert(&self.cert, &other.cert)?;
        if !cert.window_nonempty() {
            return Err(SeriesError::EmptyPrecision);
        }
        let mut coeffs: BTreeMap<Exponents, FieldScalar> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = ea.add(eb);
                if !cert.within_precision(&e) {
                    continue;
                }
                let prod = ca.mul(cb)?;
                let slot = coeffs.entry(e).or_insert_with(|| self.spec.zero());
                *slot = slot.add(&prod)?;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries {
            spec: self.spec.clone(),
            n: self.n,
            coeffs,
            cert,
        })
    }

    /// Lex-minimal exponent with nonzero coefficient.
    pub fn lex_valuation(&self) -> Result<Exponents, SeriesError> {
        let lead = self.coeffs.keys().next().ok_or(SeriesError::ZeroSeries)?;
        if self.unknown_corner_before(lead) {
            return Err(SeriesError::IndeterminateLeading);
        }
        Ok(lead.clone())
    }

    /// Whether some exponent in the unknown region could precede `lead` in
    /// lex order (sound approximation via the minimal unknown corners).
    fn unknown_corner_before(&self, lead: &Exponents) -> bool {
        let n = self.n;
        for i in 0..n {
            let h = match self.cert.hi[i] {
                Prec::Finite(h) => h,
                Prec::Unbounded => continue,
            };
            // Minimal corner of the unknown strip on axis i.
            let mut corner = Vec::with_capacity(n);
            let mut feasible = true;
            for j in 0..n {
                if j == i {
                    corner.push(h);
                } else {
                    match self.cert.global_floor(j) {
                        Some(f) => corner.push(f),
                        None => {
                            feasible = false;
                            break;
                        }
                    }
                }
            }
            if !feasible {
                // unbounded-below axis: unknown region reaches arbitrarily
                // far down in lex order
                return true;
            }
            let corner = Exponents(corner);
            if corner < *lead {
                return true;
            }
        }
        false
    }

    /// Inverse to the requested per-axis precision. Requires a certifiable
    /// monomial lex-leading term.
    ///
    /// Computed by factoring out the leading monomial and summing the
    /// geometric series of the lex-positive remainder; the iteration count
    /// is bounded a priori from the window extents, and the contract
    /// `self * inv = 1` is re-verified on the requested window.
    pub fn inv(&self, prec: &[i64]) -> Result<TruncatedSeries, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        if prec.len() != self.n {
            return Err(SeriesError::ArityMismatch);
        }
        let lead = match self.lex_valuation() {
            Ok(l) => l,
            Err(SeriesError::IndeterminateLeading) => return Err(SeriesError::NonUnitLeading),
            Err(e) => return Err(e),
        };
        let lead_coeff = self.coeffs[&lead].clone();
        let lead_inv = lead_coeff.inv()?;
        let neg_lead = Exponents(lead.0.iter().map(|a| -a).collect());
        // r = 1 - a / (c t^lead): every exponent of r is lex-positive.
        let shifted = self.shift(&neg_lead).scale(&lead_inv)?;
        let one = TruncatedSeries::monomial(
            self.spec.clone(),
            Exponents(vec![0; self.n]),
            self.spec.one(),
        );
        let r = one.sub(&shifted)?;
        // Work in the monoid generated by supp(r); the inverse on the shifted
        // window [.., prec_i - lead_i) is sum_k r^k restricted there. Bound
        // the number of rounds: factors whose most significant axis is j can
        // be used at most cap_j times before every descendant leaves the
        // window for good (lex order only grows).
        let window_hi: Vec<i64> = prec.iter().zip(&lead.0).map(|(&p, &l)| p + l).collect();
        let max_drop = r
            .coeffs
            .keys()
            .flat_map(|e| e.0.iter().map(|&a| (-a).max(0)))
            .max()
            .unwrap_or(0);
        let mut caps = vec![0i64; self.n];
        let mut outer_uses = 0i64;
        for j in (0..self.n).rev() {
            let cap = (window_hi[j] + outer_uses * max_drop).max(0) + 1;
            caps[j] = cap;
            outer_uses += cap;
        }
        let rounds: i64 = caps.iter().sum::<i64>() + 1;
        if rounds > 20_000 {
            return Err(SeriesError::EmptyPrecision);
        }
        // Lex-greatest point below every cutoff: exponents lex-above it can
        // never re-enter the window.
        let corner = Exponents(window_hi.iter().map(|&h| h - 1).collect());
        let prune = |s: &TruncatedSeries| -> TruncatedSeries {
            let coeffs: BTreeMap<Exponents, FieldScalar> = s
                .coeffs
                .iter()
                .filter(|(e, _)| **e <= corner)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect();
            TruncatedSeries {
                spec: s.spec.clone(),
                n: s.n,
                coeffs,
                cert: s.cert.clone(),
            }
        };
        let in_window = |e: &Exponents| e.0.iter().zip(&window_hi).all(|(&a, &h)| a < h);
        let mut acc: BTreeMap<Exponents, FieldScalar> = BTreeMap::new();
        acc.insert(Exponents(vec![0; self.n]), self.spec.one());
        let mut power = prune(&one);
        for _ in 0..rounds {
            power = prune(&power.mul(&r)?);
            if power.is_zero() {
                break;
            }
            for (e, c) in &power.coeffs {
                if !in_window(e) {
                    continue;
                }
                let slot = acc.entry(e.clone()).or_insert_with(|| self.spec.zero());
                *slot = slot.add(c)?;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        // Shift back and attach the certificate: requested cutoffs, lower
        // bounds fitted to the computed support.
        let terms: Result<Vec<_>, FieldError> = acc
            .into_iter()
            .map(|(e, c)| Ok((e.add(&neg_lead), c.mul(&lead_inv)?)))
            .collect();
        let terms = terms?;
        let mut lo = vec![i64::MAX; self.n];
        for (e, _) in &terms {
            for (i, &a) in e.0.iter().enumerate() {
                lo[i] = lo[i].min(a);
            }
        }
        for (i, l) in lo.iter_mut().enumerate() {
            if *l == i64::MAX {
                *l = -lead.0[i];
            }
        }
        let cert = BoundCertificate {
            lo: lo.into_iter().map(SliceRule::constant).collect(),
            hi: prec.iter().map(|&p| Prec::Finite(p)).collect(),
        };
        if !cert.window_nonempty() {
            return Err(SeriesError::EmptyPrecision);
        }
        let out = TruncatedSeries {
            spec: self.spec.clone(),
            n: self.n,
            coeffs: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            cert,
        };
        // Contract check: self * out = 1 exactly on the certified product
        // window, which must reach the requested cutoffs shifted by the
        // input's floor (it always does for exactly known inputs).
        let check = self.mul(&out)?;
        for (i, (h, &p)) in check.cert.hi.iter().zip(prec.iter()).enumerate() {
            let floor = self.cert.global_floor(i).unwrap_or(0).min(0);
            match h {
                Prec::Finite(hc) if *hc < p + floor => return Err(SeriesError::EmptyPrecision),
                _ => {}
            }
        }
        if !check.cert.within_precision(&Exponents(vec![0; self.n])) {
            return Err(SeriesError::EmptyPrecision);
        }
        let one_exp = Exponents(vec![0; self.n]);
        for (e, c) in check.coeffs() {
            if *e == one_exp {
                if !c.is_one() {
                    return Err(SeriesError::NonUnitLeading);
                }
            } else if !c.is_zero() {
                return Err(SeriesError::NonUnitLeading);
            }
        }
        Ok(out)
    }

    /// Multiply by the monomial `t^d` (exact shift of table and certificate).
    pub fn shift(&self, d: &Exponents) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| (e.add(d), c.clone()))
            .collect();
        let n = self.n;
        let mut lo = Vec::with_capacity(n);
        for i in 0..n {
            let rule = &self.cert.lo[i];
            let outer_shift = if i + 1 < n { d.0[i + 1] } else { 0 };
            // new_rule(m) = old_rule(m - outer_shift) + d_i
            let exceptions = rule
                .exceptions
                .iter()
                .map(|(&m, &v)| (m + outer_shift, v + d.0[i]))
                .collect();
            lo.push(SliceRule {
                exceptions,
                threshold: rule.threshold + outer_shift,
                base: rule.base + d.0[i] - rule.slope * outer_shift,
                slope: rule.slope,
                below: rule.below + d.0[i],
            });
        }
        let hi = self
            .cert
            .hi
            .iter()
            .zip(&d.0)
            .map(|(&h, &sh)| h.shift(sh))
            .collect();
        TruncatedSeries {
            spec: self.spec.clone(),
            n,
            coeffs,
            cert: BoundCertificate { lo, hi },
        }
    }

    /// The outer-exponent-zero slice as an (n-1)-variable series. Requires
    /// integrality: the certificate must force a nonnegative outer exponent.
    pub fn residue(&self) -> Result<TruncatedSeries, SeriesError> {
        if self.n < 1 {
            return Err(SeriesError::ArityMismatch);
        }
        if self.cert.outer_floor() < 0 {
            return Err(SeriesError::NotIntegral);
        }
        let n = self.n - 1;
        let mut lo: Vec<SliceRule> = self.cert.lo[..n].to_vec();
        if n > 0 {
            // the new outermost axis rule becomes the old rule evaluated at
            // outer exponent 0
            let v = self.cert.lo[n - 1].eval(0);
            lo[n - 1] = SliceRule::constant(v);
        }
        let hi = self.cert.hi[..n].to_vec();
        // The zero slice is only known if the outer cutoff exceeds 0.
        let known = self.cert.hi[self.n - 1].allows(0);
        let cert = BoundCertificate { lo, hi };
        let coeffs = if known {
            self.coeffs
                .iter()
                .filter(|(e, _)| e.0[self.n - 1] == 0)
                .map(|(e, c)| (Exponents(e.0[..n].to_vec()), c.clone()))
                .filter(|(e, _)| cert.contains(e))
                .collect()
        } else {
            BTreeMap::new()
        };
        Ok(TruncatedSeries {
            spec: self.spec.clone(),
            n,
            coeffs,
            cert,
        })
    }

    /// Standard lifting: embed an (n-1)-variable series as a series constant
    /// in the new outermost variable.
    pub fn lift_std(&self) -> TruncatedSeries {
        let n = self.n + 1;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                let mut v = e.0.clone();
                v.push(0);
                (Exponents(v), c.clone())
            })
            .collect();
        let mut lo = self.cert.lo.clone();
        lo.push(SliceRule::constant(0));
        let mut hi = self.cert.hi.clone();
        hi.push(Prec::Unbounded);
        TruncatedSeries {
            spec: self.spec.clone(),
            n,
            coeffs,
            cert: BoundCertificate { lo, hi },
        }
    }

    /// Render as a sum of monomials sorted lexicographically.
    pub fn pretty(&self, vars: &[&str]) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.coeffs {
            let mut factors = Vec::new();
            for (i, &a) in e.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let name = vars.get(i).copied().unwrap_or("t");
                if a == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{}^{}", name, a));
                }
            }
            let coeff = c.to_text();
            let term = if factors.is_empty() {
                coeff
            } else if c.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", coeff, factors.join("*"))
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["t1", "t2", "t3", "t4", "t5", "t6"];
        write!(out, "{}", self.pretty(&names[..self.n.min(6)]))
    }
}

/// Certificate of a product: precision cutoffs tighten so every contributing
/// pair is known; lower-bound rules combine by exact infimal convolution on
/// the certified window, with affine tails adding componentwise.
fn mul_cert(a: &BoundCertificate, b: &BoundCertificate) -> Result<BoundCertificate, SeriesError> {
    let n = a.arity();
    let mut hi = Vec::with_capacity(n);
    for i in 0..n {
        let h = match (a.hi[i], b.hi[i]) {
            (Prec::Unbounded, Prec::Unbounded) => Prec::Unbounded,
            (Prec::Finite(ha), hb) => {
                let fb = b.global_floor(i).ok_or(SeriesError::EmptyPrecision)?;
                let first = Prec::Finite(ha + fb);
                match hb {
                    Prec::Unbounded => first,
                    Prec::Finite(hb) => {
                        let fa = a.global_floor(i).ok_or(SeriesError::EmptyPrecision)?;
                        first.min(Prec::Finite(hb + fa))
                    }
                }
            }
            (Prec::Unbounded, Prec::Finite(hb)) => {
                let fa = a.global_floor(i).ok_or(SeriesError::EmptyPrecision)?;
                Prec::Finite(hb + fa)
            }
        };
        hi.push(h);
    }
    let mut lo = Vec::with_capacity(n);
    for i in 0..n {
        if i + 1 == n {
            lo.push(SliceRule::constant(a.lo[i].base + b.lo[i].base));
        } else {
            lo.push(convolve_rules(a, b, i, &hi)?);
        }
    }
    Ok(BoundCertificate { lo, hi })
}

/// Shift a rule in both coordinates: `r'(m) = r(m - dm) + dv`.
fn shift_rule(r: &SliceRule, dm: i64, dv: i64) -> SliceRule {
    let mut out = SliceRule {
        exceptions: r
            .exceptions
            .iter()
            .map(|(&m, &v)| (m + dm, v + dv))
            .collect(),
        threshold: r.threshold + dm,
        base: r.base + dv - r.slope * dm,
        slope: r.slope,
        below: r.below + dv,
    };
    out.normalize();
    out
}

/// Running minimum `r'(x) = min over m in [lo, x] of r(m)` (with `r'(x)` for
/// `x < lo` set to `r(lo)`), exact for all `x`.
fn running_min_rule(r: &SliceRule, lo: i64) -> SliceRule {
    let scan_hi = r
        .exceptions
        .keys()
        .last()
        .copied()
        .unwrap_or(r.threshold)
        .max(r.threshold)
        .max(lo);
    let mut exceptions = BTreeMap::new();
    let mut best = r.eval(lo);
    for m in lo..=scan_hi {
        best = best.min(r.eval(m));
        exceptions.insert(m, best);
    }
    let (threshold, base, slope) = if r.slope < 0 {
        // the affine tail keeps decreasing, so the running min follows it
        (scan_hi + 1, r.base.min(best - r.slope * scan_hi), r.slope)
    } else {
        (scan_hi + 1, best, 0)
    };
    let below = r.eval(lo);
    let mut rule = SliceRule {
        exceptions,
        threshold,
        base,
        slope,
        below,
    };
    rule.normalize();
    rule
}

/// Sound lower-bound rule for the support of a product on axis `i`: the
/// infimal convolution of the two rules over valid splits of the
/// axis-(i+1) coordinate, evaluated exactly on the certified output window.
fn convolve_rules(
    a: &BoundCertificate,
    b: &BoundCertificate,
    i: usize,
    hi_out: &[Prec],
) -> Result<SliceRule, SeriesError> {
    let ra = &a.lo[i];
    let rb = &b.lo[i];
    if ra.is_constant() && rb.is_constant() {
        return Ok(SliceRule::constant(ra.base + rb.base));
    }
    let fa = a.global_floor(i + 1).ok_or(SeriesError::EmptyPrecision)?;
    let fb = b.global_floor(i + 1).ok_or(SeriesError::EmptyPrecision)?;
    let ha = a.hi[i + 1];
    let hb = b.hi[i + 1];
    let out_lo = fa + fb;
    match hi_out[i + 1] {
        Prec::Finite(h) => {
            // Pointwise exact infimal convolution over the output window;
            // beyond it the additive affine tail keeps the rule total.
            let mut values = BTreeMap::new();
            for m in out_lo..h.max(out_lo + 1) {
                let lo_split = match hb {
                    Prec::Finite(hb) => fa.max(m - hb + 1),
                    Prec::Unbounded => fa,
                };
                let hi_split = match ha {
                    Prec::Finite(ha) => (ha - 1).min(m - fb),
                    Prec::Unbounded => m - fb,
                };
                let mut best: Option<i64> = None;
                for ma in lo_split..=hi_split {
                    let v = ra.eval(ma) + rb.eval(m - ma);
                    best = Some(best.map_or(v, |c: i64| c.min(v)));
                }
                if let Some(v) = best {
                    values.insert(m, v);
                }
            }
            let slope = ra.slope + rb.slope;
            let (last, last_v) = values
                .iter()
                .next_back()
                .map(|(&m, &v)| (m, v))
                .unwrap_or((out_lo, ra.eval(fa) + rb.eval(fb)));
            let below = values
                .values()
                .next()
                .copied()
                .unwrap_or(ra.eval(fa) + rb.eval(fb));
            let mut rule = SliceRule {
                threshold: last,
                base: last_v - slope * last,
                slope,
                exceptions: values,
                below,
            };
            rule.normalize();
            Ok(rule)
        }
        Prec::Unbounded => {
            // Both factors fully known on the outer axis. One side must be
            // constant (exact rectangular data); the result is the shifted
            // running minimum of the other rule.
            let (con, con_floor, var, var_floor) = if ra.is_constant() {
                (ra, fa, rb, fb)
            } else if rb.is_constant() {
                (rb, fb, ra, fa)
            } else {
                return Err(SeriesError::EmptyPrecision);
            };
            let runmin = running_min_rule(var, var_floor);
            Ok(shift_rule(&runmin, con_floor, con.base))
        }
    }
}
