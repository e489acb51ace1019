//! The cubical endomorphism algebra at desk scale: finitely presented
//! operators on `V(n)`, a symbolic window-transfer analysis, and two
//! independent ideal-membership classifiers.
//!
//! The Tate route reads membership in the two-sided ideals `I_i^+`/`I_i^-`
//! off the symbolic transfer: plus-bounded when the output bound on the
//! axis stays finite however deep the input goes, minus-bounded when some
//! input cutoff annihilates the operator. The Yekutieli route is an
//! independent implementation: it ramps actual monomial inputs through
//! standard-lattice refinements up to a search radius and reports IN/OUT
//! only where the observed pattern is decisive.

use crate::basefield::{FieldScalar, FieldSpec};
use crate::series::{BoundCertificate, Exponents, Prec, SeriesError, SliceRule, TruncatedSeries};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("operator and input have different arities")]
    ArityMismatch,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Finite expression tree of primitive endomorphisms of `V(n)`.
///
/// Axes are 1-based; `Proj(i, c)` keeps monomials with the axis-i exponent
/// `>= c`, `CoProj(i, c)` is its complement `Id - Proj(i, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorExpr {
    Id,
    Scale(FieldScalar),
    MulBy(TruncatedSeries),
    Proj(usize, i64),
    CoProj(usize, i64),
    /// `x -> phi(x) * v` for a finite read-off functional `phi`.
    FiniteRank(Vec<(Exponents, FieldScalar)>, TruncatedSeries),
    Sum(Vec<OperatorExpr>),
    /// Composition, applied right to left.
    Compose(Vec<OperatorExpr>),
}

impl OperatorExpr {
    /// Field spec of the first payload found, if any.
    pub fn infer_spec(&self) -> Option<FieldSpec> {
        match self {
            OperatorExpr::Scale(c) => Some(c.spec().clone()),
            OperatorExpr::MulBy(g) => Some(g.spec().clone()),
            OperatorExpr::FiniteRank(_, v) => Some(v.spec().clone()),
            OperatorExpr::Sum(list) | OperatorExpr::Compose(list) => {
                list.iter().find_map(OperatorExpr::infer_spec)
            }
            _ => None,
        }
    }

    /// Evaluate on a series; the result certificate is the concrete
    /// transfer of the input certificate.
    pub fn apply(&self, x: &TruncatedSeries) -> Result<TruncatedSeries, OperatorError> {
        match self {
            OperatorExpr::Id => Ok(x.clone()),
            OperatorExpr::Scale(c) => Ok(x.scale(c)?),
            OperatorExpr::MulBy(g) => {
                if g.arity() != x.arity() {
                    return Err(OperatorError::ArityMismatch);
                }
                Ok(g.mul(x)?)
            }
            OperatorExpr::Proj(axis, cutoff) => {
                let i = axis_index(*axis, x.arity())?;
                Ok(project(x, i, *cutoff, true))
            }
            OperatorExpr::CoProj(axis, cutoff) => {
                let i = axis_index(*axis, x.arity())?;
                Ok(project(x, i, *cutoff, false))
            }
            OperatorExpr::FiniteRank(phi, v) => {
                let mut weight = v.spec().zero();
                for (e, c) in phi {
                    if e.arity() != x.arity() {
                        return Err(OperatorError::ArityMismatch);
                    }
                    if !x.cert().within_precision(e) {
                        return Err(OperatorError::Series(SeriesError::EmptyPrecision));
                    }
                    if !x.cert().above_lower_bounds(e) {
                        continue; // certified absent
                    }
                    if let Some(xc) = x.coeff(e) {
                        let term = xc.mul(c).map_err(SeriesError::Field)?;
                        weight = weight.add(&term).map_err(SeriesError::Field)?;
                    }
                }
                Ok(v.scale(&weight)?)
            }
            OperatorExpr::Sum(terms) => {
                let mut acc: Option<TruncatedSeries> = None;
                for t in terms {
                    let y = t.apply(x)?;
                    acc = Some(match acc {
                        None => y,
                        Some(prev) => prev.add(&y)?,
                    });
                }
                Ok(acc
                    .unwrap_or_else(|| TruncatedSeries::zero(x.spec().clone(), x.cert().clone())))
            }
            OperatorExpr::Compose(factors) => {
                let mut cur = x.clone();
                for f in factors.iter().rev() {
                    cur = f.apply(&cur)?;
                }
                Ok(cur)
            }
        }
    }

    /// Flatten nested sums/compositions and merge multiplication-like
    /// siblings, so semantic cancellations (`g + (-g)`, zero payloads) are
    /// visible to the symbolic transfer.
    pub fn normalized(&self, n: usize) -> OperatorExpr {
        let spec = self.infer_spec().unwrap_or(FieldSpec::Rationals);
        self.normalize_rec(n, &spec)
    }

    fn normalize_rec(&self, n: usize, spec: &FieldSpec) -> OperatorExpr {
        match self {
            OperatorExpr::Sum(terms) => {
                let mut flat = Vec::new();
                for t in terms {
                    match t.normalize_rec(n, spec) {
                        OperatorExpr::Sum(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                let mut payload: Option<TruncatedSeries> = None;
                let mut rest = Vec::new();
                for t in flat {
                    match leaf_as_mul(&t, n, spec) {
                        Some(g) => {
                            payload = Some(match payload {
                                None => g,
                                Some(prev) => match prev.add(&g) {
                                    Ok(s) => s,
                                    Err(_) => {
                                        rest.push(OperatorExpr::MulBy(prev));
                                        g
                                    }
                                },
                            });
                        }
                        None => rest.push(t),
                    }
                }
                if let Some(g) = payload {
                    rest.insert(0, OperatorExpr::MulBy(g));
                }
                // complement identities: -Id + Proj = -CoProj and
                // -Id + CoProj = -Proj expose the hidden kernel/bound
                if rest.len() == 2 {
                    if let OperatorExpr::MulBy(g) = &rest[0] {
                        let is_minus_one = g.coeffs().len() == 1
                            && g.coeff(&Exponents(vec![0; n]))
                                .is_some_and(|c| c.add(&spec.one()).is_ok_and(|s| s.is_zero()));
                        if is_minus_one {
                            let flipped = match &rest[1] {
                                OperatorExpr::Proj(i, c) => Some(OperatorExpr::CoProj(*i, *c)),
                                OperatorExpr::CoProj(i, c) => Some(OperatorExpr::Proj(*i, *c)),
                                _ => None,
                            };
                            if let Some(f) = flipped {
                                let minus_one = rest.swap_remove(0);
                                return OperatorExpr::Compose(vec![minus_one, f]);
                            }
                        }
                    }
                }
                match rest.len() {
                    0 => OperatorExpr::Sum(Vec::new()),
                    1 => rest.into_iter().next().unwrap(),
                    _ => OperatorExpr::Sum(rest),
                }
            }
            OperatorExpr::Compose(factors) => {
                let mut flat = Vec::new();
                for f in factors {
                    match f.normalize_rec(n, spec) {
                        OperatorExpr::Compose(inner) => flat.extend(inner),
                        OperatorExpr::Id => {}
                        other => flat.push(other),
                    }
                }
                let mut merged: Vec<OperatorExpr> = Vec::new();
                for f in flat {
                    let as_mul = leaf_as_mul(&f, n, spec);
                    if let (Some(OperatorExpr::MulBy(prev)), Some(g)) =
                        (merged.last(), as_mul.as_ref())
                    {
                        if let Ok(p) = prev.mul(g) {
                            *merged.last_mut().unwrap() = OperatorExpr::MulBy(p);
                            continue;
                        }
                    }
                    match as_mul {
                        Some(g) => merged.push(OperatorExpr::MulBy(g)),
                        None => merged.push(f),
                    }
                }
                // distribute composition over sums so per-summand kernels
                // and ceilings stay visible (small trees only)
                if let Some(pos) = merged
                    .iter()
                    .position(|f| matches!(f, OperatorExpr::Sum(_)))
                {
                    let branch_count = merged
                        .iter()
                        .filter_map(|f| match f {
                            OperatorExpr::Sum(list) => Some(list.len()),
                            _ => None,
                        })
                        .product::<usize>();
                    if branch_count <= 64 {
                        if let OperatorExpr::Sum(parts) = merged[pos].clone() {
                            let expanded = parts
                                .into_iter()
                                .map(|p| {
                                    let mut factors = merged.clone();
                                    factors[pos] = p;
                                    OperatorExpr::Compose(factors).normalize_rec(n, spec)
                                })
                                .collect();
                            return OperatorExpr::Sum(expanded).normalize_rec(n, spec);
                        }
                    }
                }
                match merged.len() {
                    0 => OperatorExpr::Id,
                    1 => merged.into_iter().next().unwrap(),
                    _ => OperatorExpr::Compose(merged),
                }
            }
            other => other.clone(),
        }
    }

    /// Symbolic per-axis output-bound functions and kernel witnesses.
    pub fn transfer(&self, n: usize) -> WindowTransfer {
        transfer_rec(&self.normalized(n), n)
    }

    /// Tate-route ideal membership, decided from the symbolic transfer.
    pub fn classify_tate(&self, n: usize) -> IdealFlags {
        let t = self.transfer(n);
        let mut axes = Vec::with_capacity(n);
        for i in 0..n {
            let plus = if t.zero {
                AxisVerdict::decided(Verdict::In, Evidence::ZeroOperator)
            } else {
                match t.bounds[i].floor() {
                    Floor::Empty => AxisVerdict::decided(Verdict::In, Evidence::ZeroOperator),
                    Floor::Finite(b) => {
                        AxisVerdict::decided(Verdict::In, Evidence::ConstantBound { bound: b })
                    }
                    Floor::MinusInfinity => AxisVerdict::decided(
                        Verdict::Out,
                        Evidence::DepthFamily {
                            axis: i + 1,
                            expr: t.bounds[i].render(i + 1),
                        },
                    ),
                }
            };
            let minus = if t.zero {
                AxisVerdict::decided(Verdict::In, Evidence::ZeroOperator)
            } else {
                match t.kernels[i] {
                    Some(c) => {
                        AxisVerdict::decided(Verdict::In, Evidence::KernelCutoff { cutoff: c })
                    }
                    None => AxisVerdict::decided(
                        Verdict::Out,
                        Evidence::SurvivorFamily {
                            axis: i + 1,
                            expr: t.bounds[i].render(i + 1),
                        },
                    ),
                }
            };
            axes.push(AxisFlags { plus, minus });
        }
        IdealFlags { axes }
    }

    /// Yekutieli-route ideal membership at the given search radius.
    pub fn classify_yekutieli(&self, n: usize, radius: i64) -> IdealFlags {
        let spec = self.infer_spec().unwrap_or(FieldSpec::Rationals);
        let radius = radius.max(3);
        let axes = (0..n)
            .map(|s| yekutieli_axis(self, n, s, radius, &spec))
            .collect();
        IdealFlags { axes }
    }

    /// Split into a plus-bounded and a minus-bounded part on the given axis:
    /// `(Proj(axis,0) . f, CoProj(axis,0) . f)`.
    pub fn decompose(&self, axis: usize) -> (OperatorExpr, OperatorExpr) {
        (
            OperatorExpr::Compose(vec![OperatorExpr::Proj(axis, 0), self.clone()]),
            OperatorExpr::Compose(vec![OperatorExpr::CoProj(axis, 0), self.clone()]),
        )
    }
}

fn axis_index(axis: usize, n: usize) -> Result<usize, OperatorError> {
    if axis == 0 || axis > n {
        return Err(OperatorError::ArityMismatch);
    }
    Ok(axis - 1)
}

/// Id, Scale and MulBy viewed uniformly as multiplication operators.
fn leaf_as_mul(op: &OperatorExpr, n: usize, spec: &FieldSpec) -> Option<TruncatedSeries> {
    match op {
        OperatorExpr::MulBy(g) => Some(g.clone()),
        OperatorExpr::Id => Some(TruncatedSeries::monomial(
            spec.clone(),
            Exponents(vec![0; n]),
            spec.one(),
        )),
        OperatorExpr::Scale(c) => Some(TruncatedSeries::monomial(
            c.spec().clone(),
            Exponents(vec![0; n]),
            c.clone(),
        )),
        _ => None,
    }
}

fn project(x: &TruncatedSeries, i: usize, cutoff: i64, keep_above: bool) -> TruncatedSeries {
    let n = x.arity();
    let terms: Vec<(Exponents, FieldScalar)> = x
        .coeffs()
        .iter()
        .filter(|(e, _)| {
            if keep_above {
                e.0[i] >= cutoff
            } else {
                e.0[i] < cutoff
            }
        })
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();
    let mut lo = x.cert().lo.clone();
    let mut hi = x.cert().hi.clone();
    if keep_above {
        if i + 1 < n {
            lo[i] = lo[i].clamp_at_least(cutoff);
        } else {
            lo[i] = SliceRule::constant(lo[i].base.max(cutoff));
        }
    } else {
        // the removed part is exactly zero; when the cutoff sits at or below
        // the precision horizon the whole axis becomes known
        match hi[i] {
            Prec::Finite(h) if cutoff <= h => hi[i] = Prec::Unbounded,
            _ => {}
        }
    }
    let cert = BoundCertificate { lo, hi };
    TruncatedSeries::new(x.spec().clone(), cert, terms).expect("projection certificate")
}

// ---------------------------------------------------------------------------
// Symbolic window transfer
// ---------------------------------------------------------------------------

/// `min(hi, max(lo, e + shift))`: a monotone clamped-affine function of the
/// input window index `e`. `lo = None` means no floor, `hi = None` no cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clamp {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
    pub shift: i64,
}

impl Clamp {
    fn identity() -> Clamp {
        Clamp {
            lo: None,
            hi: None,
            shift: 0,
        }
    }

    fn constant(c: i64) -> Clamp {
        Clamp {
            lo: Some(c),
            hi: Some(c),
            shift: 0,
        }
    }

    fn eval(&self, e: i64) -> i64 {
        let mut v = e.saturating_add(self.shift);
        if let Some(lo) = self.lo {
            v = v.max(lo);
        }
        if let Some(hi) = self.hi {
            v = v.min(hi);
        }
        v
    }

    /// Value as `e -> -infinity`.
    fn floor(&self) -> Option<i64> {
        match (self.lo, self.hi) {
            (Some(lo), Some(hi)) => Some(lo.min(hi)),
            (Some(lo), None) => Some(lo),
            _ => None,
        }
    }

    /// Value as `e -> +infinity`.
    fn ceil(&self) -> Option<i64> {
        self.hi.map(|h| match self.lo {
            Some(l) => h.max(l),
            None => h,
        })
    }

    fn add(&self, d: i64) -> Clamp {
        Clamp {
            lo: self.lo.map(|v| v + d),
            hi: self.hi.map(|v| v + d),
            shift: self.shift + d,
        }
    }

    fn max_const(&self, c: i64) -> Clamp {
        Clamp {
            lo: Some(self.lo.map_or(c, |v| v.max(c))),
            hi: self.hi.map(|v| v.max(c)),
            shift: self.shift,
        }
    }

    /// `self(other(e))` (composition of monotone clamps is a clamp).
    fn compose(&self, other: &Clamp) -> Clamp {
        let lo = match other.floor() {
            Some(f) => Some(self.eval(f)),
            None => self.floor(),
        };
        let hi = match other.ceil() {
            Some(c) => Some(self.eval(c)),
            None => self.hi,
        };
        Clamp {
            lo,
            hi,
            shift: self.shift + other.shift,
        }
    }
}

/// Lower-bound function of one axis: pointwise minimum of clamped affines.
/// An empty set means the output is empty on this axis (zero operator).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisBound(pub Vec<Clamp>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Floor {
    Finite(i64),
    MinusInfinity,
    Empty,
}

impl AxisBound {
    fn identity() -> AxisBound {
        AxisBound(vec![Clamp::identity()])
    }

    /// Bound for an input certified at window index `e`; `None` = empty.
    pub fn eval(&self, e: i64) -> Option<i64> {
        self.0.iter().map(|c| c.eval(e)).min()
    }

    fn floor(&self) -> Floor {
        if self.0.is_empty() {
            return Floor::Empty;
        }
        let mut best: Option<i64> = None;
        for c in &self.0 {
            match c.floor() {
                None => return Floor::MinusInfinity,
                Some(f) => best = Some(best.map_or(f, |b: i64| b.min(f))),
            }
        }
        Floor::Finite(best.unwrap())
    }

    /// Whether the bound is a constant function of the input index.
    pub fn is_constant(&self) -> bool {
        !matches!(self.floor(), Floor::MinusInfinity)
    }

    fn add(&self, d: i64) -> AxisBound {
        AxisBound(self.0.iter().map(|c| c.add(d)).collect())
    }

    fn max_const(&self, k: i64) -> AxisBound {
        AxisBound(self.0.iter().map(|c| c.max_const(k)).collect())
    }

    fn min_with(&self, other: &AxisBound) -> AxisBound {
        let mut v = self.0.clone();
        v.extend(other.0.iter().copied());
        AxisBound::normalize(v)
    }

    fn compose(&self, inner: &AxisBound) -> AxisBound {
        let mut v = Vec::new();
        for a in &self.0 {
            for b in &inner.0 {
                v.push(a.compose(b));
            }
        }
        AxisBound::normalize(v)
    }

    fn normalize(mut v: Vec<Clamp>) -> AxisBound {
        v.sort_by_key(|c| (c.lo, c.hi, c.shift));
        v.dedup();
        if v.len() > 16 {
            // sound common weakening to keep terms bounded
            let lo = v
                .iter()
                .map(|c| c.lo)
                .reduce(|a, b| match (a, b) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    _ => None,
                })
                .flatten();
            let shift = v.iter().map(|c| c.shift).min().unwrap();
            v = vec![Clamp {
                lo,
                hi: None,
                shift,
            }];
        }
        AxisBound(v)
    }

    fn render(&self, axis: usize) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|c| {
                let core = if c.shift == 0 {
                    format!("e{}", axis)
                } else {
                    format!("e{}{:+}", axis, c.shift)
                };
                match (c.lo, c.hi) {
                    (None, None) => core,
                    (Some(l), None) => format!("max({}, {})", core, l),
                    (Some(l), Some(h)) if l == h => format!("{}", l),
                    (Some(l), Some(h)) => format!("min({}, max({}, {}))", h, core, l),
                    (None, Some(h)) => format!("min({}, {})", h, core),
                }
            })
            .collect();
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("min({})", parts.join(", "))
        }
    }
}

/// Symbolic window transfer: per-axis output-bound functions of the input
/// window indices, annihilating input cutoffs, constant output ceilings,
/// and the maximal upward shift (both used for zero detection).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowTransfer {
    pub zero: bool,
    pub bounds: Vec<AxisBound>,
    /// Minimal input cutoff annihilating the operator, per axis.
    pub kernels: Vec<Option<i64>>,
    /// Constant output ceiling per axis, when one exists.
    pub ceilings: Vec<Option<i64>>,
    /// Maximal amount the operator can raise an exponent, per axis.
    max_shift: Vec<Option<i64>>,
}

impl WindowTransfer {
    fn zero_op(n: usize) -> WindowTransfer {
        WindowTransfer {
            zero: true,
            bounds: vec![AxisBound(Vec::new()); n],
            kernels: vec![Some(i64::MIN / 4); n],
            ceilings: vec![Some(i64::MIN / 4); n],
            max_shift: vec![Some(0); n],
        }
    }

    fn identity(n: usize) -> WindowTransfer {
        WindowTransfer {
            zero: false,
            bounds: vec![AxisBound::identity(); n],
            kernels: vec![None; n],
            ceilings: vec![None; n],
            max_shift: vec![Some(0); n],
        }
    }

    /// Predicted output lower corner for a given input lower corner;
    /// `None` entries impose no constraint.
    pub fn predict(&self, input_lo: &[i64]) -> Vec<Option<i64>> {
        if self.zero {
            return vec![None; self.bounds.len()];
        }
        self.bounds
            .iter()
            .zip(input_lo)
            .map(|(b, &e)| b.eval(e))
            .collect()
    }

    fn detect_zero(self) -> WindowTransfer {
        if self.zero {
            return self;
        }
        let n = self.bounds.len();
        for i in 0..n {
            if let (Floor::Finite(f), Some(c)) = (self.bounds[i].floor(), self.ceilings[i]) {
                if f > c {
                    return WindowTransfer::zero_op(n);
                }
            }
        }
        self
    }
}

fn transfer_rec(op: &OperatorExpr, n: usize) -> WindowTransfer {
    match op {
        OperatorExpr::Id => WindowTransfer::identity(n),
        OperatorExpr::Scale(c) => {
            if c.is_zero() {
                WindowTransfer::zero_op(n)
            } else {
                WindowTransfer::identity(n)
            }
        }
        OperatorExpr::MulBy(g) => {
            if g.is_zero() {
                return WindowTransfer::zero_op(n);
            }
            let mut t = WindowTransfer::identity(n);
            for i in 0..n {
                let min_e = g.coeffs().keys().map(|e| e.0[i]).min().unwrap();
                let max_e = g.coeffs().keys().map(|e| e.0[i]).max().unwrap();
                t.bounds[i] = t.bounds[i].add(min_e);
                t.max_shift[i] = Some(max_e);
            }
            t
        }
        OperatorExpr::Proj(axis, cutoff) => {
            let mut t = WindowTransfer::identity(n);
            if let Ok(i) = axis_index(*axis, n) {
                t.bounds[i] = t.bounds[i].max_const(*cutoff);
            }
            t
        }
        OperatorExpr::CoProj(axis, cutoff) => {
            let mut t = WindowTransfer::identity(n);
            if let Ok(i) = axis_index(*axis, n) {
                t.kernels[i] = Some(*cutoff);
                t.ceilings[i] = Some(*cutoff - 1);
            }
            t.detect_zero()
        }
        OperatorExpr::FiniteRank(phi, v) => {
            if v.is_zero() || phi.is_empty() {
                return WindowTransfer::zero_op(n);
            }
            let mut t = WindowTransfer::identity(n);
            for i in 0..n {
                let lo = v.coeffs().keys().map(|e| e.0[i]).min().unwrap();
                let hi = v.coeffs().keys().map(|e| e.0[i]).max().unwrap();
                t.bounds[i] = AxisBound(vec![Clamp::constant(lo)]);
                t.ceilings[i] = Some(hi);
                t.max_shift[i] = None;
                let cut = phi.iter().map(|(e, _)| e.0[i]).max().unwrap() + 1;
                t.kernels[i] = Some(cut);
            }
            t
        }
        OperatorExpr::Sum(terms) => {
            if terms.is_empty() {
                return WindowTransfer::zero_op(n);
            }
            // merge same-axis indicator combinations exactly: a sum of
            // scaled projections on one axis is a diagonal step operator,
            // and its cancellations decide boundedness and kernels
            let (steps, rest) = split_step_terms(terms, n);
            let mut parts: Vec<WindowTransfer> = Vec::new();
            for (axis, group) in steps {
                parts.push(step_group_transfer(axis, &group, n));
            }
            parts.extend(rest.iter().map(|t| transfer_rec(t, n)));
            let mut acc = WindowTransfer::zero_op(n);
            for p in parts {
                if p.zero {
                    continue;
                }
                if acc.zero {
                    acc = p;
                    continue;
                }
                for i in 0..n {
                    acc.bounds[i] = acc.bounds[i].min_with(&p.bounds[i]);
                    acc.kernels[i] = match (acc.kernels[i], p.kernels[i]) {
                        (Some(a), Some(b)) => Some(a.max(b)),
                        _ => None,
                    };
                    acc.ceilings[i] = match (acc.ceilings[i], p.ceilings[i]) {
                        (Some(a), Some(b)) => Some(a.max(b)),
                        _ => None,
                    };
                    acc.max_shift[i] = match (acc.max_shift[i], p.max_shift[i]) {
                        (Some(a), Some(b)) => Some(a.max(b)),
                        _ => None,
                    };
                }
            }
            acc.detect_zero()
        }
        OperatorExpr::Compose(factors) => {
            let mut acc = WindowTransfer::identity(n);
            for f in factors.iter().rev() {
                let outer = transfer_rec(f, n);
                if outer.zero || acc.zero {
                    return WindowTransfer::zero_op(n);
                }
                let mut next = WindowTransfer::identity(n);
                for i in 0..n {
                    next.bounds[i] = outer.bounds[i].compose(&acc.bounds[i]);
                    // inner output entirely inside the outer kernel region
                    if let (Floor::Finite(f0), Some(w)) = (acc.bounds[i].floor(), outer.kernels[i])
                    {
                        if f0 >= w {
                            return WindowTransfer::zero_op(n);
                        }
                    }
                    // composite kernel: the inner kernel, or inputs the
                    // inner map sends into the outer kernel region
                    let via_outer = outer.kernels[i].and_then(|w| min_input_for(&acc.bounds[i], w));
                    next.kernels[i] = match (acc.kernels[i], via_outer) {
                        (Some(a), Some(b)) => Some(a.min(b)),
                        (Some(a), None) => Some(a),
                        (None, k) => k,
                    };
                    // ceilings: the outer's own, or the inner ceiling pushed
                    // through the outer's maximal upward shift
                    let lifted = match (acc.ceilings[i], outer.max_shift[i]) {
                        (Some(c), Some(d)) => Some(c + d),
                        _ => None,
                    };
                    next.ceilings[i] = match (outer.ceilings[i], lifted) {
                        (Some(a), Some(b)) => Some(a.min(b)),
                        (Some(a), None) => Some(a),
                        (None, b) => b,
                    };
                    next.max_shift[i] = match (acc.max_shift[i], outer.max_shift[i]) {
                        (Some(a), Some(b)) => Some(a + b),
                        _ => None,
                    };
                }
                acc = next.detect_zero();
                if acc.zero {
                    return acc;
                }
            }
            acc
        }
    }
}

/// A scaled indicator `scalar * 1_{[lo, hi)}` of an exponent interval
/// (missing ends are infinite).
struct StepTerm {
    scalar: FieldScalar,
    lo: Option<i64>,
    hi: Option<i64>,
}

/// Read an operator as a scaled interval indicator acting diagonally on a
/// single axis; `None` axis means a pure scalar.
fn as_step_term(op: &OperatorExpr, spec: &FieldSpec) -> Option<(Option<usize>, StepTerm)> {
    let one = || spec.one();
    match op {
        OperatorExpr::Id => Some((
            None,
            StepTerm {
                scalar: one(),
                lo: None,
                hi: None,
            },
        )),
        OperatorExpr::Scale(c) if c.spec() == spec => Some((
            None,
            StepTerm {
                scalar: c.clone(),
                lo: None,
                hi: None,
            },
        )),
        OperatorExpr::Proj(i, c) => Some((
            Some(*i),
            StepTerm {
                scalar: one(),
                lo: Some(*c),
                hi: None,
            },
        )),
        OperatorExpr::CoProj(i, c) => Some((
            Some(*i),
            StepTerm {
                scalar: one(),
                lo: None,
                hi: Some(*c),
            },
        )),
        OperatorExpr::MulBy(g) if g.spec() == spec && g.coeffs().len() == 1 => {
            let (e, c) = g.coeffs().iter().next().unwrap();
            if e.0.iter().all(|&a| a == 0) {
                Some((
                    None,
                    StepTerm {
                        scalar: c.clone(),
                        lo: None,
                        hi: None,
                    },
                ))
            } else {
                None
            }
        }
        OperatorExpr::Compose(factors) => {
            let mut axis: Option<usize> = None;
            let mut out = StepTerm {
                scalar: one(),
                lo: None,
                hi: None,
            };
            for f in factors {
                let (a, t) = as_step_term(f, spec)?;
                match (axis, a) {
                    (_, None) => {}
                    (None, Some(x)) => axis = Some(x),
                    (Some(x), Some(y)) if x == y => {}
                    _ => return None, // mixed axes do not stay diagonal
                }
                out.scalar = out.scalar.mul(&t.scalar).ok()?;
                out.lo = match (out.lo, t.lo) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    (x, None) => x,
                    (None, y) => y,
                };
                out.hi = match (out.hi, t.hi) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (x, None) => x,
                    (None, y) => y,
                };
            }
            Some((axis, out))
        }
        _ => None,
    }
}

/// Partition sum terms into same-axis step groups (merged exactly) and the
/// remaining operators. Pure scalars join the first axis group when one
/// exists, otherwise they stay unmerged.
fn split_step_terms(
    terms: &[OperatorExpr],
    n: usize,
) -> (Vec<(usize, Vec<StepTerm>)>, Vec<OperatorExpr>) {
    let spec = terms
        .iter()
        .find_map(OperatorExpr::infer_spec)
        .unwrap_or(FieldSpec::Rationals);
    let mut groups: std::collections::BTreeMap<usize, Vec<StepTerm>> =
        std::collections::BTreeMap::new();
    let mut scalars: Vec<(StepTerm, OperatorExpr)> = Vec::new();
    let mut rest = Vec::new();
    for t in terms {
        match as_step_term(t, &spec) {
            Some((Some(axis), st)) if axis >= 1 && axis <= n => {
                groups.entry(axis - 1).or_default().push(st);
            }
            Some((None, st)) => scalars.push((st, t.clone())),
            _ => rest.push(t.clone()),
        }
    }
    if let Some(first) = groups.keys().next().copied() {
        for (st, _) in scalars {
            groups.get_mut(&first).unwrap().push(st);
        }
    } else {
        rest.extend(scalars.into_iter().map(|(_, op)| op));
    }
    let mut merged = Vec::new();
    for (axis, group) in groups {
        if group.len() >= 2 {
            merged.push((axis, group));
        } else {
            // single indicators are handled by the primitive transfers
            rest.push(rebuild_step(axis, &group[0]));
        }
    }
    (merged, rest)
}

fn rebuild_step(axis0: usize, t: &StepTerm) -> OperatorExpr {
    let mut factors = vec![OperatorExpr::Scale(t.scalar.clone())];
    if let Some(lo) = t.lo {
        factors.push(OperatorExpr::Proj(axis0 + 1, lo));
    }
    if let Some(hi) = t.hi {
        factors.push(OperatorExpr::CoProj(axis0 + 1, hi));
    }
    OperatorExpr::Compose(factors)
}

/// Exact transfer of a sum of scaled indicators on one axis: evaluate the
/// step function per region; leading zero regions bound the output from
/// below, trailing zero regions give the kernel and ceiling.
fn step_group_transfer(axis0: usize, group: &[StepTerm], n: usize) -> WindowTransfer {
    let mut breaks: Vec<i64> = group
        .iter()
        .flat_map(|t| t.lo.into_iter().chain(t.hi))
        .collect();
    breaks.sort_unstable();
    breaks.dedup();
    // region starts: one below every breakpoint, then the breakpoints
    let mut starts = Vec::with_capacity(breaks.len() + 1);
    starts.push(breaks.first().map_or(0, |b| b - 1));
    starts.extend(breaks.iter().copied());
    let spec = group[0].scalar.spec().clone();
    let values: Vec<FieldScalar> = starts
        .iter()
        .map(|&s| {
            let mut acc = spec.zero();
            for t in group {
                let covers =
                    t.lo.is_none_or(|lo| lo <= s) && t.hi.is_none_or(|hi| hi > s);
                if covers {
                    acc = acc.add(&t.scalar).unwrap_or_else(|_| spec.zero());
                }
            }
            acc
        })
        .collect();
    if values.iter().all(FieldScalar::is_zero) {
        return WindowTransfer::zero_op(n);
    }
    let mut t = WindowTransfer::identity(n);
    // leading zero run: output vanishes below the first nonzero region
    let first_nonzero = values.iter().position(|v| !v.is_zero()).unwrap();
    if first_nonzero > 0 {
        let bound = starts[first_nonzero];
        t.bounds[axis0] = t.bounds[axis0].max_const(bound);
    }
    // trailing zero run: inputs above the last nonzero region die
    let last_nonzero = values.iter().rposition(|v| !v.is_zero()).unwrap();
    if last_nonzero + 1 < values.len() {
        let cutoff = starts[last_nonzero + 1];
        t.kernels[axis0] = Some(cutoff);
        t.ceilings[axis0] = Some(cutoff - 1);
    }
    t
}

/// Minimal input cutoff `c` with `bound(c) >= w`, if one exists.
fn min_input_for(bound: &AxisBound, w: i64) -> Option<i64> {
    let mut worst: i64 = i64::MIN / 4;
    for c in &bound.0 {
        if let Some(top) = c.ceil() {
            if top < w {
                return None;
            }
        }
        if let Some(l) = c.lo {
            if l >= w {
                continue; // this clamp reaches w for every input
            }
        }
        worst = worst.max(w - c.shift);
    }
    Some(worst)
}

// ---------------------------------------------------------------------------
// Ideal flags
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    In,
    Out,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::In => write!(out, "IN"),
            Verdict::Out => write!(out, "OUT"),
            Verdict::Unknown => write!(out, "UNKNOWN"),
        }
    }
}

/// Certificate or counterexample backing a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    ZeroOperator,
    /// Output bound independent of the input depth on this axis.
    ConstantBound { bound: i64 },
    /// Inputs supported at or above the cutoff are annihilated.
    KernelCutoff { cutoff: i64 },
    /// Symbolic bound depending on the input depth: the monomial family
    /// with axis exponent `-d` escapes every candidate bound.
    DepthFamily { axis: usize, expr: String },
    /// No annihilating cutoff: arbitrarily deep monomials keep nonzero
    /// images.
    SurvivorFamily { axis: usize, expr: String },
    /// Observed ramp of (input depth, image bound) pairs.
    Ramp { samples: Vec<(i64, Option<i64>)> },
    /// Observed survivors: (input exponent, a nonzero image exponent).
    Survivors { samples: Vec<(Vec<i64>, Vec<i64>)> },
    /// Refinement found: images stay inside this standard-lattice index.
    Refinement { lattice: i64 },
    /// Search exhausted without a decisive pattern.
    SearchExhausted { radius: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisVerdict {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl AxisVerdict {
    fn decided(verdict: Verdict, evidence: Evidence) -> AxisVerdict {
        AxisVerdict { verdict, evidence }
    }

    fn unknown(radius: i64) -> AxisVerdict {
        AxisVerdict {
            verdict: Verdict::Unknown,
            evidence: Evidence::SearchExhausted { radius },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisFlags {
    pub plus: AxisVerdict,
    pub minus: AxisVerdict,
}

/// Per-axis membership verdicts for the two-sided ideals `I_i^+`, `I_i^-`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFlags {
    pub axes: Vec<AxisFlags>,
}

impl IdealFlags {
    pub fn plus(&self, axis: usize) -> Verdict {
        self.axes[axis - 1].plus.verdict
    }

    pub fn minus(&self, axis: usize) -> Verdict {
        self.axes[axis - 1].minus.verdict
    }

    /// No definite verdict contradicts the other flags on any axis/sign.
    pub fn consistent_with(&self, other: &IdealFlags) -> bool {
        let ok = |x: Verdict, y: Verdict| {
            !matches!(
                (x, y),
                (Verdict::In, Verdict::Out) | (Verdict::Out, Verdict::In)
            )
        };
        self.axes
            .iter()
            .zip(&other.axes)
            .all(|(a, b)| ok(a.plus.verdict, b.plus.verdict) && ok(a.minus.verdict, b.minus.verdict))
    }

    pub fn has_unknown(&self) -> bool {
        self.axes.iter().any(|a| {
            matches!(a.plus.verdict, Verdict::Unknown)
                || matches!(a.minus.verdict, Verdict::Unknown)
        })
    }
}

impl fmt::Display for IdealFlags {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.axes.iter().enumerate() {
            if i > 0 {
                write!(out, "; ")?;
            }
            write!(
                out,
                "axis {}: I+ {} / I- {}",
                i + 1,
                a.plus.verdict,
                a.minus.verdict
            )?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Yekutieli route
// ---------------------------------------------------------------------------

/// Sample coordinates for the non-ramped axes: outer axes sweep a
/// refinement window, inner axes probe the whole slice including a spot
/// tied to the ramp depth.
fn side_samples(n: usize, s: usize, d: i64, radius: i64) -> Vec<Vec<i64>> {
    let outer_span = (radius / 2).max(4);
    let choices: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            if j == s {
                vec![0]
            } else if j > s {
                (-outer_span..=outer_span).collect()
            } else {
                let mut v: Vec<i64> = (-radius..=radius).collect();
                if !v.contains(&-d) {
                    v.push(-d);
                }
                v
            }
        })
        .collect();
    let mut out = vec![Vec::new()];
    for axis_choices in &choices {
        let mut next = Vec::new();
        for prefix in &out {
            for &c in axis_choices {
                let mut v = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn yekutieli_axis(
    op: &OperatorExpr,
    n: usize,
    s: usize,
    radius: i64,
    spec: &FieldSpec,
) -> AxisFlags {
    let monomial = |e: Vec<i64>| TruncatedSeries::monomial(spec.clone(), Exponents(e), spec.one());
    // Plus side: ramp the axis-s exponent downward; a refinement exists iff
    // the image bound on axis s stabilizes.
    let mut ramp: Vec<(i64, Option<i64>)> = Vec::new();
    let mut global_min: Option<i64> = None;
    let mut eval_failed = false;
    for d in 0..=radius {
        let mut level_min: Option<i64> = None;
        for mut coords in side_samples(n, s, d, radius) {
            coords[s] = -d;
            match op.apply(&monomial(coords)) {
                Ok(y) => {
                    if let Some(m) = y.coeffs().keys().map(|e| e.0[s]).min() {
                        level_min = Some(level_min.map_or(m, |c: i64| c.min(m)));
                    }
                }
                Err(_) => eval_failed = true,
            }
        }
        if let Some(m) = level_min {
            global_min = Some(global_min.map_or(m, |c: i64| c.min(m)));
        }
        ramp.push((d, level_min));
    }
    let plus = if eval_failed {
        AxisVerdict::unknown(radius)
    } else {
        let tail: Vec<Option<i64>> = ramp[ramp.len().saturating_sub(3)..]
            .iter()
            .map(|&(_, m)| m)
            .collect();
        let stable = tail.windows(2).all(|w| w[0] == w[1]);
        let decreasing = tail
            .windows(2)
            .all(|w| matches!((w[0], w[1]), (Some(a), Some(b)) if b < a));
        if stable {
            match global_min {
                Some(b) => AxisVerdict::decided(Verdict::In, Evidence::Refinement { lattice: b }),
                None => AxisVerdict::decided(Verdict::In, Evidence::ZeroOperator),
            }
        } else if decreasing {
            AxisVerdict::decided(Verdict::Out, Evidence::Ramp { samples: ramp })
        } else {
            AxisVerdict::unknown(radius)
        }
    };
    // Minus side: ramp upward and look for the level past which all sampled
    // inputs vanish.
    let top = radius + 2;
    let mut survivors: Vec<Option<(Vec<i64>, Vec<i64>)>> = Vec::new();
    let mut minus_eval_failed = false;
    for d in 0..=top {
        let mut found: Option<(Vec<i64>, Vec<i64>)> = None;
        for mut coords in side_samples(n, s, d, radius) {
            coords[s] = d;
            match op.apply(&monomial(coords.clone())) {
                Ok(y) => {
                    if let Some(e) = y.coeffs().keys().next() {
                        found = Some((coords, e.0.clone()));
                        break;
                    }
                }
                Err(_) => minus_eval_failed = true,
            }
        }
        survivors.push(found);
    }
    let minus = if minus_eval_failed {
        AxisVerdict::unknown(radius)
    } else {
        let first_clean = (0..survivors.len())
            .find(|&c| survivors[c..].iter().all(Option::is_none))
            .map(|c| c as i64);
        match first_clean {
            Some(c) if c <= radius => {
                AxisVerdict::decided(Verdict::In, Evidence::KernelCutoff { cutoff: c })
            }
            _ => {
                let last = &survivors[survivors.len() - 3..];
                if last.iter().all(Option::is_some) {
                    AxisVerdict::decided(
                        Verdict::Out,
                        Evidence::Survivors {
                            samples: survivors.iter().flatten().rev().take(3).cloned().collect(),
                        },
                    )
                } else {
                    AxisVerdict::unknown(radius)
                }
            }
        }
    };
    AxisFlags { plus, minus }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn poly(terms: &[(Vec<i64>, i64)]) -> TruncatedSeries {
        TruncatedSeries::polynomial(q(), terms)
    }

    #[test]
    fn apply_projection() {
        let x = poly(&[(vec![-2, 0], 1), (vec![0, 0], 3), (vec![5, 0], 1)]);
        let p = OperatorExpr::Proj(1, 0).apply(&x).unwrap();
        assert_eq!(p.coeffs().len(), 2);
        assert!(p.coeff(&Exponents(vec![-2, 0])).is_none());
        assert!(p.coeff(&Exponents(vec![0, 0])).is_some());
        assert!(p.certificate_holds());
    }

    #[test]
    fn apply_identity_and_mul() {
        let x = poly(&[(vec![0, -1], 1)]);
        assert_eq!(OperatorExpr::Id.apply(&x).unwrap(), x);
        let t2 = poly(&[(vec![0, 1], 1)]);
        let y = OperatorExpr::MulBy(t2).apply(&x).unwrap();
        assert!(y.coeff(&Exponents(vec![0, 0])).unwrap().is_one());
    }

    #[test]
    fn transfer_examples() {
        // Proj(1,0): constant bound 0 on axis 1, independent of the input
        let t = OperatorExpr::Proj(1, 0).transfer(2);
        assert!(matches!(t.bounds[0].floor(), Floor::Finite(0)));
        assert!(matches!(t.bounds[1].floor(), Floor::MinusInfinity));
        // MulBy(t1^-5): axis-1 bound is e1 - 5
        let g = poly(&[(vec![-5, 0], 1)]);
        let t = OperatorExpr::MulBy(g).transfer(2);
        assert_eq!(t.bounds[0].eval(3), Some(-2));
        assert!(matches!(t.bounds[0].floor(), Floor::MinusInfinity));
    }

    #[test]
    fn classify_tate_examples() {
        let f = OperatorExpr::Proj(1, 0).classify_tate(2);
        assert_eq!(f.plus(1), Verdict::In);
        assert_eq!(f.minus(1), Verdict::Out);
        assert_eq!(f.plus(2), Verdict::Out);
        let f = OperatorExpr::CoProj(1, 0).classify_tate(2);
        assert_eq!(f.minus(1), Verdict::In);
        assert_eq!(f.plus(1), Verdict::Out);
        let g = poly(&[(vec![-5, 0], 1)]);
        let f = OperatorExpr::MulBy(g).classify_tate(2);
        for axis in 1..=2 {
            assert_eq!(f.plus(axis), Verdict::Out);
            assert_eq!(f.minus(axis), Verdict::Out);
        }
    }

    #[test]
    fn finite_rank_in_all_ideals() {
        let phi = vec![(Exponents(vec![0, 0]), FieldScalar::from_integer(q(), 1))];
        let v = poly(&[(vec![-2, 1], 1)]);
        let f = OperatorExpr::FiniteRank(phi, v).classify_tate(2);
        for axis in 1..=2 {
            assert_eq!(f.plus(axis), Verdict::In);
            assert_eq!(f.minus(axis), Verdict::In);
        }
    }

    #[test]
    fn compose_projection_zero_detected() {
        let z = OperatorExpr::Compose(vec![OperatorExpr::Proj(1, 0), OperatorExpr::CoProj(1, 0)]);
        let t = z.transfer(2);
        assert!(t.zero);
        let f = z.classify_tate(2);
        for axis in 1..=2 {
            assert_eq!(f.plus(axis), Verdict::In);
            assert_eq!(f.minus(axis), Verdict::In);
        }
    }

    #[test]
    fn step_cancellation_bounds() {
        // CoProj(1,0) + Id - 2 CoProj(1,1) vanishes below axis-1 exponent 0:
        // the whole image is integral on axis 1
        let f = OperatorExpr::Sum(vec![
            OperatorExpr::Sum(vec![OperatorExpr::CoProj(1, 0), OperatorExpr::Id]),
            OperatorExpr::Compose(vec![
                OperatorExpr::Scale(FieldScalar::from_integer(q(), -2)),
                OperatorExpr::CoProj(1, 1),
            ]),
        ]);
        let flags = f.classify_tate(2);
        assert_eq!(flags.plus(1), Verdict::In);
        assert_eq!(flags.minus(1), Verdict::Out);
        let yek = f.classify_yekutieli(2, 8);
        assert!(yek.consistent_with(&flags));
        // Proj(1,0) - Proj(1,5) is supported on a bounded exponent band:
        // plus-bounded and killed by the cutoff 5
        let band = OperatorExpr::Sum(vec![
            OperatorExpr::Proj(1, 0),
            OperatorExpr::Compose(vec![
                OperatorExpr::Scale(FieldScalar::from_integer(q(), -1)),
                OperatorExpr::Proj(1, 5),
            ]),
        ]);
        let flags = band.classify_tate(2);
        assert_eq!(flags.plus(1), Verdict::In);
        assert_eq!(flags.minus(1), Verdict::In);
        let yek = band.classify_yekutieli(2, 8);
        assert!(yek.consistent_with(&flags));
    }

    #[test]
    fn sum_cancellation_detected() {
        let g = poly(&[(vec![1, 0], 2), (vec![0, 1], 5)]);
        let neg = g.neg();
        let z = OperatorExpr::Sum(vec![OperatorExpr::MulBy(g), OperatorExpr::MulBy(neg)]);
        assert!(z.transfer(2).zero);
        // identity minus identity
        let z2 = OperatorExpr::Sum(vec![
            OperatorExpr::Id,
            OperatorExpr::Scale(FieldScalar::from_integer(q(), -1)),
        ]);
        assert!(z2.transfer(2).zero);
    }

    #[test]
    fn decompose_sum_identity() {
        let g = poly(&[(vec![-1, 0], 1)]);
        let f = OperatorExpr::MulBy(g);
        let (fp, fm) = f.decompose(1);
        let x = poly(&[(vec![0, 0], 1), (vec![1, 0], 1)]);
        let y = f.apply(&x).unwrap();
        let yp = fp.apply(&x).unwrap();
        let ym = fm.apply(&x).unwrap();
        assert_eq!(yp.add(&ym).unwrap().coeffs(), y.coeffs());
        assert_eq!(fp.classify_tate(2).plus(1), Verdict::In);
        assert_eq!(fm.classify_tate(2).minus(1), Verdict::In);
    }

    #[test]
    fn yekutieli_matches_tate_on_primitives() {
        let ops = vec![
            OperatorExpr::Proj(2, 0),
            OperatorExpr::CoProj(2, 0),
            OperatorExpr::Proj(1, -1),
            OperatorExpr::CoProj(1, 2),
            OperatorExpr::MulBy(poly(&[(vec![0, 3], 1)])),
            OperatorExpr::MulBy(poly(&[(vec![-5, 0], 1)])),
            OperatorExpr::MulBy(poly(&[(vec![1, 0], 1), (vec![0, 1], 2)])),
            OperatorExpr::FiniteRank(
                vec![(Exponents(vec![0, 0]), FieldScalar::from_integer(q(), 1))],
                poly(&[(vec![-2, 1], 1)]),
            ),
            OperatorExpr::Compose(vec![
                OperatorExpr::Proj(1, 0),
                OperatorExpr::MulBy(poly(&[(vec![-2, 0], 1)])),
            ]),
            OperatorExpr::Sum(vec![OperatorExpr::Proj(1, 0), OperatorExpr::Id]),
        ];
        for op in ops {
            let yek = op.classify_yekutieli(2, 8);
            let tate = op.classify_tate(2);
            assert!(
                yek.consistent_with(&tate),
                "disagreement: yek [{}] vs tate [{}]",
                yek,
                tate
            );
            assert!(!yek.has_unknown(), "unknown verdict for {:?}", op);
        }
    }

    #[test]
    fn mulby_t2_cubed_yekutieli() {
        // image of standard(i) needs standard(i+3); image of V unbounded
        let op = OperatorExpr::MulBy(poly(&[(vec![0, 3], 1)]));
        let yek = op.classify_yekutieli(2, 8);
        assert_eq!(yek.plus(2), Verdict::Out);
        assert_eq!(yek.minus(2), Verdict::Out);
    }

    #[test]
    fn proj_outer_yekutieli_refines() {
        let yek = OperatorExpr::Proj(2, 0).classify_yekutieli(2, 8);
        assert_eq!(yek.plus(2), Verdict::In);
        assert_eq!(yek.minus(2), Verdict::Out);
    }
}
