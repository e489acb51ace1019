//! Deterministic property suites: seeded sampling, per-check reporting, and
//! the suite runner behind `suite run`. Identical configurations produce
//! byte-identical reports.

use crate::basefield::{FieldScalar, FieldSpec};
use crate::geometry::{self, CuspModel, CuspVerdict, OpenProfile};
use crate::lattice::{MonomialLattice, MonomialSubspace, Region, SliceVal};
use crate::liftings::{self, FalsifyVerdict, LiftingSpec, QMap};
use crate::operator::{OperatorExpr, Verdict};
use crate::series::{BoundCertificate, Exponents, Prec, TruncatedSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
}

/// Configuration shared by every suite; equal configs give identical output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub radius: i64,
    pub precision: i64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            samples: 200,
            radius: 8,
            precision: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckLine>,
}

impl Report {
    fn new(suite: &str, seed: u64) -> Report {
        Report {
            suite: suite.into(),
            seed,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(CheckLine {
            name: name.into(),
            passed,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite {} (seed {})\n", self.suite, self.seed));
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}: {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out.push_str(&format!(
            "{}: {}/{} checks passed\n",
            if self.passed() { "OK" } else { "VIOLATIONS" },
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        ));
        out
    }
}

/// Run one named suite, or `all`.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Vec<Report>, SuiteError> {
    match name {
        "ring" => Ok(vec![ring_suite(cfg)]),
        "lattice" => Ok(vec![lattice_suite(cfg)]),
        "cubical" => Ok(vec![cubical_suite(cfg)]),
        "agreement" => Ok(vec![agreement_suite(cfg)]),
        "transfer" => Ok(vec![transfer_suite(cfg)]),
        "liftings" => Ok(vec![liftings_suite(cfg)]),
        "geometry" => Ok(vec![geometry_suite(cfg)]),
        "all" => Ok(vec![
            ring_suite(cfg),
            lattice_suite(cfg),
            cubical_suite(cfg),
            agreement_suite(cfg),
            transfer_suite(cfg),
            liftings_suite(cfg),
            geometry_suite(cfg),
        ]),
        other => Err(SuiteError::UnknownSuite(other.into())),
    }
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

pub fn sample_scalar(rng: &mut ChaCha8Rng, spec: &FieldSpec) -> FieldScalar {
    match spec {
        FieldSpec::Rationals => {
            let num = rng.gen_range(-9..=9i64);
            let den = rng.gen_range(1..=4i64);
            FieldScalar::from_rational(num, den)
        }
        FieldSpec::FinitePrime { p } => {
            FieldScalar::from_integer(spec.clone(), rng.gen_range(0..*p) as i64)
        }
        FieldSpec::FiniteExt { p, f } => {
            let deg = f.len() - 1;
            let coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..*p) as i64).collect();
            FieldScalar::from_coeffs(spec.clone(), &coeffs).expect("sampled residue")
        }
    }
}

fn sample_nonzero_scalar(rng: &mut ChaCha8Rng, spec: &FieldSpec) -> FieldScalar {
    loop {
        let c = sample_scalar(rng, spec);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Exactly known random polynomial with exponents in a small box.
pub fn sample_poly(
    rng: &mut ChaCha8Rng,
    spec: &FieldSpec,
    n: usize,
    terms: usize,
    exp_range: std::ops::RangeInclusive<i64>,
) -> TruncatedSeries {
    let mut table: BTreeMap<Exponents, FieldScalar> = BTreeMap::new();
    for _ in 0..terms {
        let e = Exponents((0..n).map(|_| rng.gen_range(exp_range.clone())).collect());
        table.insert(e, sample_nonzero_scalar(rng, spec));
    }
    let terms: Vec<_> = table.into_iter().collect();
    if terms.is_empty() {
        return TruncatedSeries::monomial(spec.clone(), Exponents(vec![0; n]), spec.one());
    }
    let lo: Vec<i64> = (0..n)
        .map(|i| terms.iter().map(|(e, _)| e.0[i]).min().unwrap())
        .collect();
    TruncatedSeries::new(spec.clone(), BoundCertificate::exact(lo), terms)
        .expect("sampled polynomial")
}

/// Random series with a finite precision window of the given extent.
pub fn sample_truncated(
    rng: &mut ChaCha8Rng,
    spec: &FieldSpec,
    n: usize,
    window: i64,
) -> TruncatedSeries {
    let lo: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=0i64)).collect();
    let hi: Vec<Prec> = lo.iter().map(|&l| Prec::Finite(l + window)).collect();
    let cert = BoundCertificate::rectangular(lo.clone(), hi.clone());
    let count = rng.gen_range(1..=4usize);
    let mut terms = Vec::new();
    for _ in 0..count {
        let e = Exponents(
            lo.iter()
                .map(|&l| rng.gen_range(l..l + window))
                .collect(),
        );
        terms.push((e, sample_scalar(rng, spec)));
    }
    TruncatedSeries::new(spec.clone(), cert, terms).expect("sampled series")
}

/// Random operator expression; `depth` controls Sum/Compose nesting.
pub fn sample_operator(
    rng: &mut ChaCha8Rng,
    spec: &FieldSpec,
    n: usize,
    depth: usize,
) -> OperatorExpr {
    if depth > 0 && rng.gen_bool(0.6) {
        let a = sample_operator(rng, spec, n, depth - 1);
        let b = sample_operator(rng, spec, n, depth - 1);
        return if rng.gen_bool(0.5) {
            OperatorExpr::Sum(vec![a, b])
        } else {
            OperatorExpr::Compose(vec![a, b])
        };
    }
    match rng.gen_range(0..6u8) {
        0 => OperatorExpr::Id,
        1 => OperatorExpr::Scale(sample_nonzero_scalar(rng, spec)),
        2 => {
            let t = rng.gen_range(1..=2);
            OperatorExpr::MulBy(sample_poly(rng, spec, n, t, -2..=2))
        }
        3 => OperatorExpr::Proj(rng.gen_range(1..=n), rng.gen_range(-2..=2)),
        4 => OperatorExpr::CoProj(rng.gen_range(1..=n), rng.gen_range(-2..=2)),
        _ => {
            let reads = rng.gen_range(1..=2usize);
            let phi = (0..reads)
                .map(|_| {
                    (
                        Exponents((0..n).map(|_| rng.gen_range(-2..=2i64)).collect()),
                        sample_nonzero_scalar(rng, spec),
                    )
                })
                .collect();
            let vt = rng.gen_range(1..=2);
            let v = sample_poly(rng, spec, n, vt, -2..=2);
            OperatorExpr::FiniteRank(phi, v)
        }
    }
}

// ---------------------------------------------------------------------------
// Ring / valuation suite
// ---------------------------------------------------------------------------

fn ring_suite(cfg: &RunConfig) -> Report {
    let mut report = Report::new("ring", cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let specs = vec![
        FieldSpec::Rationals,
        FieldSpec::finite_prime(5).unwrap(),
        FieldSpec::finite_ext(5, vec![3, 0, 1]).unwrap(),
    ];
    // field axioms
    let mut failures = 0usize;
    for spec in &specs {
        for _ in 0..cfg.samples {
            let a = sample_scalar(&mut rng, spec);
            let b = sample_scalar(&mut rng, spec);
            let c = sample_scalar(&mut rng, spec);
            let assoc = a.add(&b).unwrap().add(&c).unwrap() == a.add(&b.add(&c).unwrap()).unwrap();
            let dist = a.mul(&b.add(&c).unwrap()).unwrap()
                == a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            let inv_ok = a.is_zero() || a.mul(&a.inv().unwrap()).unwrap().is_one();
            if !(assoc && dist && inv_ok) {
                failures += 1;
            }
        }
    }
    report.check(
        "field-axioms",
        failures == 0,
        format!("{} samples x {} fields, {} failures", cfg.samples, specs.len(), failures),
    );
    // Frobenius over the extension field
    let ext = &specs[2];
    let mut frob_fail = 0usize;
    for _ in 0..cfg.samples {
        let a = sample_scalar(&mut rng, ext);
        let b = sample_scalar(&mut rng, ext);
        let lhs = a.add(&b).unwrap().pow(5).unwrap();
        let rhs = a.pow(5).unwrap().add(&b.pow(5).unwrap()).unwrap();
        if lhs != rhs {
            frob_fail += 1;
        }
    }
    report.check(
        "frobenius",
        frob_fail == 0,
        format!("{} samples, {} failures", cfg.samples, frob_fail),
    );
    // series ring axioms on exact polynomials, n = 1..3
    let mut ring_fail = 0usize;
    for n in 1..=3usize {
        for _ in 0..cfg.samples / 2 {
            let spec = &specs[(rng.gen_range(0..specs.len() as u32)) as usize];
            let a = sample_poly(&mut rng, spec, n, 2, -2..=2);
            let b = sample_poly(&mut rng, spec, n, 2, -2..=2);
            let c = sample_poly(&mut rng, spec, n, 2, -2..=2);
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            // compare on the common certified window
            for (e, v) in lhs.coeffs() {
                if rhs.cert().contains(e) && rhs.coeff(e) != Some(v) {
                    ring_fail += 1;
                }
            }
            for (e, v) in rhs.coeffs() {
                if lhs.cert().contains(e) && lhs.coeff(e) != Some(v) {
                    ring_fail += 1;
                }
            }
            if !(lhs.certificate_holds() && rhs.certificate_holds()) {
                ring_fail += 1;
            }
        }
    }
    report.check(
        "series-distributivity",
        ring_fail == 0,
        format!("{} samples per arity, {} failures", cfg.samples / 2, ring_fail),
    );
    // inversion contract on monic-leading samples: nonnegative leads verify
    // the identity on the full window p, negative leads on the certified
    // product window
    let mut inv_fail = 0usize;
    let inv_trials = (cfg.samples / 2).max(20);
    for k in 0..inv_trials {
        let n = rng.gen_range(1..=2usize);
        let spec = FieldSpec::Rationals;
        let range = if k % 3 == 0 { -2..=2i64 } else { 0..=2i64 };
        let lead = Exponents((0..n).map(|_| rng.gen_range(range.clone())).collect());
        let tail = sample_poly(&mut rng, &spec, n, 2, 0..=2);
        // a = t^lead * (1 + t_outer * tail): monomial lex-leading term
        let one = TruncatedSeries::monomial(spec.clone(), Exponents(vec![0; n]), spec.one());
        let mut shift_up = vec![0i64; n];
        shift_up[n - 1] = 1;
        let a = one
            .add(&tail.shift(&Exponents(shift_up)))
            .unwrap()
            .shift(&lead);
        let prec: Vec<i64> = lead.0.iter().map(|&l| -l + cfg.precision.min(4)).collect();
        match a.inv(&prec) {
            Ok(b) => {
                let prod = a.mul(&b).unwrap();
                let one_e = Exponents(vec![0; n]);
                // exactly one stored coefficient: 1 at exponent 0
                let ok = prod.coeffs().len() == 1
                    && prod.coeff(&one_e).is_some_and(|c| c.is_one());
                if !ok {
                    inv_fail += 1;
                }
            }
            Err(_) => inv_fail += 1,
        }
    }
    report.check(
        "inversion-contract",
        inv_fail == 0,
        format!("{} inverses verified, {} failures", inv_trials, inv_fail),
    );
    // valuation additivity and ultrametric law
    let mut val_fail = 0usize;
    for _ in 0..cfg.samples {
        let n = rng.gen_range(1..=3usize);
        let a = sample_poly(&mut rng, &FieldSpec::Rationals, n, 2, -3..=3);
        let b = sample_poly(&mut rng, &FieldSpec::Rationals, n, 2, -3..=3);
        let va = a.lex_valuation().unwrap();
        let vb = b.lex_valuation().unwrap();
        let prod = a.mul(&b).unwrap();
        match prod.lex_valuation() {
            Ok(vp) => {
                if vp != va.add(&vb) {
                    val_fail += 1;
                }
            }
            Err(_) => val_fail += 1,
        }
        if let Ok(s) = a.add(&b) {
            if let Ok(vs) = s.lex_valuation() {
                let outer = vs.0[n - 1];
                if outer < va.0[n - 1].min(vb.0[n - 1]) {
                    val_fail += 1;
                }
            }
        }
    }
    report.check(
        "valuation-laws",
        val_fail == 0,
        format!(
            "{} pairs (additivity + ultrametric), {} failures",
            cfg.samples, val_fail
        ),
    );
    // residue / lift section and ring-map laws
    let mut res_fail = 0usize;
    for _ in 0..cfg.samples / 2 {
        let a = sample_poly(&mut rng, &FieldSpec::Rationals, 1, 2, 0..=3);
        let b = sample_poly(&mut rng, &FieldSpec::Rationals, 1, 2, 0..=3);
        if a.lift_std().residue().unwrap() != a {
            res_fail += 1;
        }
        let lhs = a.lift_std().mul(&b.lift_std()).unwrap();
        let rhs = a.mul(&b).unwrap().lift_std();
        if lhs.coeffs() != rhs.coeffs() {
            res_fail += 1;
        }
        // residue is a ring map on integral elements
        let a2 = sample_poly(&mut rng, &FieldSpec::Rationals, 2, 2, 0..=3);
        let b2 = sample_poly(&mut rng, &FieldSpec::Rationals, 2, 2, 0..=3);
        let r1 = a2.mul(&b2).unwrap().residue().unwrap();
        let r2 = a2.residue().unwrap().mul(&b2.residue().unwrap()).unwrap();
        for (e, v) in r1.coeffs() {
            if r2.cert().contains(e) && r2.coeff(e) != Some(v) {
                res_fail += 1;
            }
        }
    }
    report.check(
        "residue-lift-laws",
        res_fail == 0,
        format!("{} samples, {} failures", cfg.samples / 2, res_fail),
    );
    report
}

// ---------------------------------------------------------------------------
// Lattice suite
// ---------------------------------------------------------------------------

/// All arity-1 lattices with full tail from `c` and extras inside
/// `[lo, c)`, for `c` in `[lo, hi]`.
fn enumerate_line_lattices(lo: i64, hi: i64) -> Vec<MonomialSubspace> {
    let mut out = Vec::new();
    for c in lo..=hi {
        let slots: Vec<i64> = (lo..c).collect();
        let k = slots.len() as u32;
        for mask in 0..(1u32 << k) {
            let extras: Vec<i64> = slots
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &j)| j)
                .collect();
            out.push(MonomialSubspace::one_dim(&extras, Some(c)));
        }
    }
    out
}

/// All monomial lattices of arity 2 whose exceptional outer slices sit in
/// `slice_positions` and whose inner descriptions live inside `[lo, hi]`.
fn enumerate_plane_lattices(slice_positions: &[i64], lo: i64, hi: i64) -> Vec<MonomialLattice> {
    let line = enumerate_line_lattices(lo, hi);
    let mut slice_vals: Vec<SliceVal> = vec![SliceVal::Zero, SliceVal::Full];
    slice_vals.extend(line.into_iter().map(|sub| SliceVal::Sub { sub }));
    let tail_from = slice_positions.iter().max().map_or(0, |m| m + 1);
    let mut out = Vec::new();
    let mut stack: Vec<Vec<SliceVal>> = vec![Vec::new()];
    for _ in slice_positions {
        let mut next = Vec::new();
        for prefix in &stack {
            for v in &slice_vals {
                let mut p = prefix.clone();
                p.push(v.clone());
                next.push(p);
            }
        }
        stack = next;
    }
    for assignment in stack {
        let slices: BTreeMap<i64, SliceVal> = slice_positions
            .iter()
            .copied()
            .zip(assignment)
            .collect();
        let sub = MonomialSubspace {
            arity: 2,
            below: Region::Zero,
            slices,
            tail_from,
            tail: Region::Full,
        };
        if let Ok(l) = MonomialLattice::new(sub) {
            out.push(l);
        }
    }
    out.sort_by(|a, b| format!("{:?}", a).cmp(&format!("{:?}", b)));
    out.dedup();
    out
}

fn lattice_suite(cfg: &RunConfig) -> Report {
    let mut report = Report::new("lattice", cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let all = enumerate_plane_lattices(&[-1, 0], -2, 2);
    report.check(
        "enumeration",
        all.len() > 100,
        format!("{} monomial lattices in the window", all.len()),
    );
    // meet/join extremality against the full enumeration
    let pairs = 30usize;
    let mut extremal_fail = 0usize;
    for _ in 0..pairs {
        let a = &all[rng.gen_range(0..all.len())];
        let b = &all[rng.gen_range(0..all.len())];
        let m = a.meet(b).unwrap();
        let j = a.join(b).unwrap();
        if !(a.contains(&m).unwrap() && b.contains(&m).unwrap()) {
            extremal_fail += 1;
        }
        if !(j.contains(a).unwrap() && j.contains(b).unwrap()) {
            extremal_fail += 1;
        }
        for c in &all {
            if c.arity() != a.arity() {
                continue;
            }
            let below_both = a.contains(c).unwrap() && b.contains(c).unwrap();
            if below_both && !m.contains(c).unwrap() {
                extremal_fail += 1;
            }
            let above_both = c.contains(a).unwrap() && c.contains(b).unwrap();
            if above_both && !c.contains(&j).unwrap() {
                extremal_fail += 1;
            }
        }
    }
    report.check(
        "meet-join-extremality",
        extremal_fail == 0,
        format!(
            "{} pairs against {} candidates, {} failures",
            pairs,
            all.len(),
            extremal_fail
        ),
    );
    // sandwich containments for every enumerated lattice
    let mut sandwich_fail = 0usize;
    for l in &all {
        let (m, big) = l.sandwich_standard();
        let ok = MonomialLattice::standard(2, m).contains(l).unwrap()
            && l.contains(&MonomialLattice::standard(2, big)).unwrap()
            && m <= big;
        if !ok {
            sandwich_fail += 1;
        }
    }
    report.check(
        "sandwich",
        sandwich_fail == 0,
        format!("{} lattices, {} failures", all.len(), sandwich_fail),
    );
    // quotient grading: standard(i)/standard(j) has j - i full slices
    let mut quot_fail = 0usize;
    for i in -2..=1i64 {
        for j in i..=2i64 {
            let q = MonomialLattice::standard(2, i)
                .quotient(&MonomialLattice::standard(2, j))
                .unwrap();
            if q.len() != (j - i) as usize {
                quot_fail += 1;
            }
        }
    }
    report.check(
        "quotient-grading",
        quot_fail == 0,
        format!("standard pairs verified, {} failures", quot_fail),
    );
    // poset laws on a sampled triple set
    let mut poset_fail = 0usize;
    for _ in 0..60 {
        let a = &all[rng.gen_range(0..all.len())];
        let b = &all[rng.gen_range(0..all.len())];
        let c = &all[rng.gen_range(0..all.len())];
        if !a.contains(a).unwrap() {
            poset_fail += 1;
        }
        if a.contains(b).unwrap() && b.contains(a).unwrap() && a != b {
            poset_fail += 1;
        }
        if a.contains(b).unwrap() && b.contains(c).unwrap() && !a.contains(c).unwrap() {
            poset_fail += 1;
        }
    }
    report.check(
        "poset-laws",
        poset_fail == 0,
        format!("60 triples, {} failures", poset_fail),
    );
    report
}

// ---------------------------------------------------------------------------
// Cubical suite
// ---------------------------------------------------------------------------

/// Good-idempotent axiom report for one arity: commutativity, idempotence,
/// and the projected-ideal memberships, on sampled inputs and operators.
pub fn idempotent_suite(n: usize, cfg: &RunConfig) -> Report {
    let mut report = Report::new(&format!("idempotents-n{}", n), cfg.seed);
    let spec = FieldSpec::Rationals;
    idempotent_checks(&mut report, n, cfg, &spec);
    report
}

fn idempotent_checks(report: &mut Report, n: usize, cfg: &RunConfig, spec: &FieldSpec) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(n as u64));
    let count = cfg.samples.max(100);
    // commutativity and idempotence of the good idempotents
    let mut axiom_fail = 0usize;
    for _ in 0..count {
        let x = sample_poly(&mut rng, spec, n, 3, -3..=3);
        for i in 1..=n {
            let pi = OperatorExpr::Proj(i, 0);
            let pix = pi.apply(&x).unwrap();
            if pi.apply(&pix).unwrap().coeffs() != pix.coeffs() {
                axiom_fail += 1;
            }
            for j in 1..=n {
                let pj = OperatorExpr::Proj(j, 0);
                let ij = pi.apply(&pj.apply(&x).unwrap()).unwrap();
                let ji = pj.apply(&pi.apply(&x).unwrap()).unwrap();
                if ij.coeffs() != ji.coeffs() {
                    axiom_fail += 1;
                }
            }
        }
    }
    report.check(
        &format!("idempotent-axioms-n{}", n),
        axiom_fail == 0,
        format!("{} inputs, {} failures", count, axiom_fail),
    );
    // P_i^+ A in I_i^+ and P_i^- A in I_i^-
    let mut ideal_fail = 0usize;
    let ops = count / 2;
    for _ in 0..ops {
        let g = sample_operator(&mut rng, spec, n, 1);
        for i in 1..=n {
            let plus = OperatorExpr::Compose(vec![OperatorExpr::Proj(i, 0), g.clone()]);
            if plus.classify_tate(n).plus(i) != Verdict::In {
                ideal_fail += 1;
            }
            let minus = OperatorExpr::Compose(vec![OperatorExpr::CoProj(i, 0), g.clone()]);
            if minus.classify_tate(n).minus(i) != Verdict::In {
                ideal_fail += 1;
            }
        }
    }
    report.check(
        &format!("projected-ideals-n{}", n),
        ideal_fail == 0,
        format!("{} operators, {} failures", ops, ideal_fail),
    );
}

fn cubical_suite(cfg: &RunConfig) -> Report {
    let mut report = Report::new("cubical", cfg.seed);
    let spec = FieldSpec::Rationals;
    for n in [2usize, 3] {
        idempotent_checks(&mut report, n, cfg, &spec);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(100 + n as u64));
        let count = cfg.samples.max(100);
        // decompose sum identity
        let mut split_fail = 0usize;
        for _ in 0..count {
            let f = sample_operator(&mut rng, &spec, n, 1);
            let x = sample_poly(&mut rng, &spec, n, 2, -3..=3);
            let axis = rng.gen_range(1..=n);
            let (fp, fm) = f.decompose(axis);
            let (y, yp, ym) = match (f.apply(&x), fp.apply(&x), fm.apply(&x)) {
                (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                _ => continue,
            };
            if yp.add(&ym).unwrap().coeffs() != y.coeffs() {
                split_fail += 1;
            }
            if fp.classify_tate(n).plus(axis) != Verdict::In {
                split_fail += 1;
            }
            if fm.classify_tate(n).minus(axis) != Verdict::In {
                split_fail += 1;
            }
        }
        report.check(
            &format!("decompose-identity-n{}", n),
            split_fail == 0,
            format!("{} (f, x) pairs, {} failures", count, split_fail),
        );
        // two-sided ideal law: members stay members under composition with
        // arbitrary sampled operators, on either side and for either sign
        let mut law_fail = 0usize;
        let law_ops = count / 2;
        for _ in 0..law_ops {
            let g = sample_operator(&mut rng, &spec, n, 1);
            let h = sample_operator(&mut rng, &spec, n, 1);
            for i in 1..=n {
                let f_plus = OperatorExpr::Compose(vec![OperatorExpr::Proj(i, 0), g.clone()]);
                for side in [
                    OperatorExpr::Compose(vec![h.clone(), f_plus.clone()]),
                    OperatorExpr::Compose(vec![f_plus.clone(), h.clone()]),
                ] {
                    if side.classify_tate(n).plus(i) != Verdict::In {
                        law_fail += 1;
                    }
                }
                let f_minus = OperatorExpr::Compose(vec![OperatorExpr::CoProj(i, 0), g.clone()]);
                for side in [
                    OperatorExpr::Compose(vec![h.clone(), f_minus.clone()]),
                    OperatorExpr::Compose(vec![f_minus.clone(), h.clone()]),
                ] {
                    if side.classify_tate(n).minus(i) != Verdict::In {
                        law_fail += 1;
                    }
                }
            }
        }
        report.check(
            &format!("two-sided-law-n{}", n),
            law_fail == 0,
            format!("{} composed pairs per axis and sign, {} failures", law_ops, law_fail),
        );
    }
    report
}

// ---------------------------------------------------------------------------
// Agreement suite (the main theorem at desk scale)
// ---------------------------------------------------------------------------

fn agreement_suite(cfg: &RunConfig) -> Report {
    let mut report = Report::new("agreement", cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(7));
    let spec = FieldSpec::Rationals;
    let n = 2usize;
    let corpus = cfg.samples.max(200);
    let mut contradictions = 0usize;
    let mut unknowns = 0usize;
    let mut first_bad = String::new();
    for k in 0..corpus {
        let f = sample_operator(&mut rng, &spec, n, 1);
        let tate = f.classify_tate(n);
        let yek = f.classify_yekutieli(n, cfg.radius);
        if !yek.consistent_with(&tate) {
            contradictions += 1;
            if first_bad.is_empty() {
                first_bad = format!("#{}: yek [{}] vs tate [{}] for {:?}", k, yek, tate, f);
            }
        }
        if yek.has_unknown() {
            unknowns += 1;
        }
    }
    let unknown_limit = corpus / 20; // 5%
    report.check(
        "classifier-agreement",
        contradictions == 0,
        if contradictions == 0 {
            format!("{} operators, zero contradictions", corpus)
        } else {
            format!("{} contradictions; first: {}", contradictions, first_bad)
        },
    );
    report.check(
        "unknown-budget",
        unknowns <= unknown_limit,
        format!(
            "{} of {} operators with UNKNOWN (budget {})",
            unknowns, corpus, unknown_limit
        ),
    );
    report
}

// ---------------------------------------------------------------------------
// Transfer soundness suite
// ---------------------------------------------------------------------------

fn transfer_suite(cfg: &RunConfig) -> Report {
    let mut report = Report::new("transfer", cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(13));
    let spec = FieldSpec::Rationals;
    let trials = (cfg.samples * 5).max(1000);
    let mut violations = 0usize;
    let mut applied = 0usize;
    for _ in 0..trials {
        let n = rng.gen_range(1..=3usize);
        let f = sample_operator(&mut rng, &spec, n, 2);
        let x = sample_poly(&mut rng, &spec, n, 3, -3..=3);
        let y = match f.apply(&x) {
            Ok(y) => y,
            Err(_) => continue,
        };
        applied += 1;
        let t = f.transfer(n);
        let input_lo: Vec<i64> = (0..n)
            .map(|i| x.cert().global_floor(i).unwrap_or(0))
            .collect();
        let predicted = t.predict(&input_lo);
        for e in y.coeffs().keys() {
            for (i, p) in predicted.iter().enumerate() {
                if let Some(b) = p {
                    if e.0[i] < *b {
                        violations += 1;
                    }
                }
            }
        }
        if !y.certificate_holds() {
            violations += 1;
        }
    }
    report.check(
        "transfer-soundness",
        violations == 0,
        format!(
            "{} evaluations inside predicted windows, {} violations",
            applied, violations
        ),
    );
    report
}

// ---------------------------------------------------------------------------
// Liftings suite
// ---------------------------------------------------------------------------

fn liftings_suite(cfg: &RunConfig) -> Report {
    let mut report = Report::new("liftings", cfg.seed);
    let q = FieldSpec::Rationals;
    let neg = LiftingSpec::twisted_family(QMap::NegIdentity, 11);
    let verdict = liftings::falsify_tate(&neg, &q, 10).unwrap();
    let ok = match &verdict {
        FalsifyVerdict::NotATateMorphism { witnesses } => witnesses
            .iter()
            .all(|w| w.escaping_exponent.0 < -w.candidate_m && w.escaping_exponent.1 == 1),
        _ => false,
    };
    report.check(
        "falsifier-negative-q",
        ok,
        format!("Q(i) = -i at radius 10: {:?}", short_verdict(&verdict)),
    );
    let std_verdict = liftings::falsify_tate(&LiftingSpec::Standard, &q, 10).unwrap();
    report.check(
        "falsifier-standard",
        matches!(
            std_verdict,
            FalsifyVerdict::MorphismPlausible {
                containing_lattice: 0
            }
        ),
        format!("{:?}", short_verdict(&std_verdict)),
    );
    let pos_verdict = liftings::falsify_with_q(QMap::PosIdentity, &q, 10).unwrap();
    report.check(
        "falsifier-positive-q",
        matches!(pos_verdict, FalsifyVerdict::MorphismPlausible { .. }),
        format!("{:?}", short_verdict(&pos_verdict)),
    );
    // section property across specs and samples
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(21));
    let mut section_fail = 0usize;
    let samples = cfg.samples.max(50);
    for _ in 0..samples {
        let a = sample_poly(&mut rng, &q, 1, 2, 0..=6);
        for spec in [
            LiftingSpec::Standard,
            LiftingSpec::twisted_family(QMap::NegIdentity, 10),
            LiftingSpec::twisted_family(QMap::PosIdentity, 10),
        ] {
            match spec.lift(&a) {
                Ok(lifted) => {
                    if lifted.residue().unwrap().coeffs() != a.coeffs() {
                        section_fail += 1;
                    }
                }
                Err(_) => section_fail += 1,
            }
        }
    }
    report.check(
        "section-property",
        section_fail == 0,
        format!("{} samples x 3 specs, {} failures", samples, section_fail),
    );
    // degenerate twist equals standard
    let mut degen_fail = 0usize;
    let degenerate = LiftingSpec::Twisted {
        generators: (0..=8)
            .map(|i| liftings::Generator {
                exp: i,
                q: 0,
                perturbed: false,
            })
            .collect(),
    };
    for _ in 0..20 {
        let a = sample_poly(&mut rng, &q, 1, 2, 0..=6);
        let lhs = degenerate.lift(&a).unwrap();
        let rhs = LiftingSpec::Standard.lift(&a).unwrap();
        if lhs.coeffs() != rhs.coeffs() {
            degen_fail += 1;
        }
    }
    report.check(
        "degenerate-twist",
        degen_fail == 0,
        format!("20 samples, {} failures", degen_fail),
    );
    let fixing = LiftingSpec::twisted_family_fixing_t1(QMap::NegIdentity, 11);
    report.check(
        "rational-subfield-fixed",
        liftings::fixes_rational_subfield(&fixing, &q, 5).unwrap_or(false),
        "polynomials in the unperturbed generator".into(),
    );
    report
}

fn short_verdict(v: &FalsifyVerdict) -> String {
    match v {
        FalsifyVerdict::MorphismPlausible { containing_lattice } => {
            format!("MORPHISM_PLAUSIBLE(m={})", containing_lattice)
        }
        FalsifyVerdict::NotATateMorphism { witnesses } => {
            format!("NOT_A_TATE_MORPHISM({} witnesses)", witnesses.len())
        }
    }
}

// ---------------------------------------------------------------------------
// Geometry suite
// ---------------------------------------------------------------------------

fn geometry_suite(cfg: &RunConfig) -> Report {
    let mut report = Report::new("geometry", cfg.seed);
    // Hensel p=5, f = x^2 - 2, N = 8
    let model = geometry::hensel_coefficient_field(5, &[3, 0, 1], 8).unwrap();
    let ok = {
        use crate::basefield::PolyFp;
        let p = 5u64;
        let f = [3u64, 0, 1];
        let mut modulus = vec![1u64];
        for _ in 0..8 {
            modulus = PolyFp::mul(&modulus, &f, p);
        }
        let mut a: Vec<u64> = Vec::new();
        let mut power = vec![1u64];
        for digit in &model.embedding {
            a = PolyFp::add(&a, &PolyFp::mul(digit, &power, p), p);
            power = PolyFp::mul(&power, &f, p);
        }
        let a2 = PolyFp::rem(&PolyFp::mul(&a, &a, p), &modulus, p);
        PolyFp::sub(&a2, &[2], p).is_empty()
    };
    report.check(
        "hensel-sqrt2",
        ok,
        "a^2 = 2 mod pi^8 in the completion of F_5[x] at (x^2-2)".into(),
    );
    report.check(
        "semigroup-gaps",
        geometry::semigroup_gaps(&[2, 3]).unwrap() == vec![1]
            && geometry::semigroup_gaps(&[3, 5]).unwrap() == vec![1, 2, 4, 7],
        "gaps(2,3) = {1}, gaps(3,5) = {1,2,4,7}".into(),
    );
    let cusp = CuspModel::default();
    let v0 = cusp.realizability_of_valuation(0);
    let v1 = cusp.realizability_of_valuation(1);
    let v2 = cusp.realizability_of_valuation(2);
    report.check(
        "cusp-realizability",
        matches!(v0, CuspVerdict::Realizable { .. })
            && matches!(v2, CuspVerdict::Realizable { .. })
            && v1 == CuspVerdict::Unrealizable { gap_witness: 1 },
        "v=0,2 realizable; v=1 unrealizable with gap witness".to_string(),
    );
    let profile = OpenProfile::thinning();
    let cover = geometry::parshin_cover(&profile, (-3, -3), (3, 3));
    let cover_ok = cover.len() == 49
        && cover.iter().all(|f| {
            profile.contains(&Exponents(vec![f.factor_in_full.0, f.factor_in_full.1]))
                && profile.contains(&Exponents(vec![
                    f.factor_compensating.0,
                    f.factor_compensating.1,
                ]))
                && (f.factor_in_full.0 + f.factor_compensating.0,
                    f.factor_in_full.1 + f.factor_compensating.1)
                    == f.monomial
        });
    report.check(
        "parshin-cover",
        cover_ok,
        format!("{} factorizations in the 7x7 box", cover.len()),
    );
    let _ = cfg;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_run_green() {
        let cfg = RunConfig {
            samples: 40,
            ..RunConfig::default()
        };
        for name in ["ring", "lattice", "cubical", "agreement", "transfer", "liftings", "geometry"] {
            let reports = run_suite(name, &cfg).unwrap();
            for r in &reports {
                assert!(r.passed(), "suite {} failed:\n{}", name, r.render_text());
            }
        }
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(matches!(
            run_suite("nope", &RunConfig::default()),
            Err(SuiteError::UnknownSuite(_))
        ));
    }

    #[test]
    fn determinism() {
        let cfg = RunConfig {
            samples: 30,
            ..RunConfig::default()
        };
        let a = run_suite("all", &cfg).unwrap();
        let b = run_suite("all", &cfg).unwrap();
        let text_a: Vec<String> = a.iter().map(Report::render_text).collect();
        let text_b: Vec<String> = b.iter().map(Report::render_text).collect();
        assert_eq!(text_a, text_b);
    }
}
