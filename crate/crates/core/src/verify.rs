//! Sweeps that compare the closed forms against independent computations:
//! the lattice and definition counts for multiplicities, exhaustive search
//! for distances, the order bound, and certified witness supports.

use std::collections::HashMap;

use serde::Serialize;

use crate::agcode::{build_code, code_dimension, scaling_class, VerificationRecord};
use crate::curve::CurveContext;
use crate::distance::{hk_matches, park_distance, RegimeTag};
use crate::error::Result;
use crate::multiplicity::{mult_closed, mult_definition_oracle, mult_excess_form, mult_lattice_count, BasePoint};
use crate::orderbound::{segment_min_i2, segment_min_i3, BoundConfig, OrderBoundSolver};
use crate::search::{exact_dual_distance, exact_min_distance};
use crate::witness::build_witness_support;

const MAX_LISTED: usize = 50;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: usize,
    pub mismatched: usize,
    pub skipped: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) -> bool {
        self.checked += 1;
        if !ok {
            self.mismatched += 1;
        }
        ok
    }
}

#[derive(Debug, Default, Serialize)]
struct Mismatches(Vec<String>);

impl Mismatches {
    fn push(&mut self, msg: impl FnOnce() -> String) {
        if self.0.len() < MAX_LISTED {
            self.0.push(msg());
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MultReport {
    pub q: u32,
    pub lattice: Tally,
    pub excess_form: Tally,
    /// Skipped for q > 4.
    pub definition: Tally,
    pub mismatches: Vec<String>,
}

impl MultReport {
    pub fn mismatched(&self) -> usize {
        self.lattice.mismatched + self.excess_form.mismatched + self.definition.mismatched
    }
}

/// Closed form against the other three forms over a, b ∈ [−2q, 3(q+1)].
pub fn verify_multiplicities(q: u32) -> MultReport {
    let qi = q as i64;
    let shift = qi * qi - qi - 2;
    let (mut lattice, mut excess, mut definition) = (Tally::default(), Tally::default(), Tally::default());
    let mut bad = Mismatches::default();
    for a in -2 * qi..=3 * (qi + 1) {
        for b in -2 * qi..=3 * (qi + 1) {
            for point in [BasePoint::Pinf, BasePoint::P0] {
                let closed = mult_closed(qi, a, b, point);
                let l = mult_lattice_count(qi, a, b, point);
                if !lattice.record(l == closed) {
                    bad.push(|| format!("lattice ({a},{b}) {point:?}: {l} vs {closed}"));
                }
                let e = mult_excess_form(qi, a, b, point);
                if !excess.record(e == closed) {
                    bad.push(|| format!("excess ({a},{b}) {point:?}: {e} vs {closed}"));
                }
                match mult_definition_oracle(qi, a + shift, b, point) {
                    Ok(o) => {
                        if !definition.record(o == closed) {
                            bad.push(|| format!("definition ({a},{b}) {point:?}: {o} vs {closed}"));
                        }
                    }
                    Err(_) => definition.skipped += 1,
                }
            }
        }
    }
    MultReport { q, lattice, excess_form: excess, definition, mismatches: bad.0 }
}

#[derive(Clone, Debug)]
pub struct DistanceOptions {
    pub a_range: (i64, i64),
    pub b_range: (i64, i64),
    /// Exhaustive search only where the dual dimension is at most this.
    pub dual_dim_max: Option<usize>,
    /// Operation budget per exhaustive search; over-budget cells are skipped.
    pub budget: f64,
    pub witness: bool,
}

impl DistanceOptions {
    pub fn for_q(q: u32) -> Self {
        match q {
            2 => {
                DistanceOptions { a_range: (0, 12), b_range: (0, 12), dual_dim_max: None, budget: 1e10, witness: true }
            }
            3 => DistanceOptions {
                a_range: (0, 35),
                b_range: (0, 35),
                dual_dim_max: Some(14),
                budget: 1e12,
                witness: true,
            },
            _ => {
                let top = crate::agcode::full_space_degree(q as i64);
                DistanceOptions {
                    a_range: (0, top),
                    b_range: (0, q as i64 + 1),
                    dual_dim_max: None,
                    budget: 1e8,
                    witness: true,
                }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct DistanceRecord {
    #[serde(flatten)]
    pub record: VerificationRecord,
    pub regime: RegimeTag,
    pub d_witness: Option<i64>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DistanceReport {
    pub q: u32,
    /// Closed form equals exhaustive search.
    pub formula_vs_brute: Tally,
    /// Order bound at most the exhaustive distance.
    pub bound_vs_brute: Tally,
    /// Order bound at least the closed form on the high regime.
    pub bound_vs_formula: Tally,
    /// Certified support of size exactly the closed form.
    pub witness: Tally,
    /// Without exhaustive search: order bound = closed form = witness size.
    pub sandwich: Tally,
    pub out_of_scope: usize,
    pub mismatches: Vec<String>,
    #[serde(skip)]
    pub records: Vec<DistanceRecord>,
}

impl DistanceReport {
    pub fn mismatched(&self) -> usize {
        [self.formula_vs_brute, self.bound_vs_brute, self.bound_vs_formula, self.witness, self.sandwich]
            .iter()
            .map(|t| t.mismatched)
            .sum()
    }
}

pub fn verify_distances(curve: &CurveContext, opts: &DistanceOptions) -> Result<DistanceReport> {
    let q = curve.q();
    let qi = q as i64;
    let n = curve.n();
    let mut solver = OrderBoundSolver::new(curve, BoundConfig::for_q(q));
    let mut cache: HashMap<(i64, i64), Option<i64>> = HashMap::new();
    let mut report = DistanceReport {
        q,
        formula_vs_brute: Tally::default(),
        bound_vs_brute: Tally::default(),
        bound_vs_formula: Tally::default(),
        witness: Tally::default(),
        sandwich: Tally::default(),
        out_of_scope: 0,
        mismatches: Vec::new(),
        records: Vec::new(),
    };
    let mut bad = Mismatches::default();
    for a in opts.a_range.0..=opts.a_range.1 {
        for b in opts.b_range.0..=opts.b_range.1 {
            let k = code_dimension(qi, a, b);
            let dual_dim = n - k;
            let formula = park_distance(qi, a, b);
            let bound = if dual_dim > 0 { Some(solver.bound_value(a, b)?) } else { None };
            let wanted = dual_dim > 0 && opts.dual_dim_max.map_or(true, |m| dual_dim <= m);
            let brute = if wanted {
                *cache.entry(scaling_class(qi, a, b)).or_insert_with(|| {
                    let code = build_code(curve, a, b);
                    exact_dual_distance(curve.field(), &code.matrix, opts.budget).ok().map(|r| r.d as i64)
                })
            } else {
                None
            };
            if dual_dim > 0 && brute.is_none() {
                report.formula_vs_brute.skipped += 1;
                report.bound_vs_brute.skipped += 1;
            }
            if let (Some(d), Some(bd)) = (brute, bound) {
                if !report.bound_vs_brute.record(bd <= d) {
                    bad.push(|| format!("({a},{b}): order bound {bd} above exact distance {d}"));
                }
            }
            let mut d_witness = None;
            match (formula.d, formula.tag) {
                (None, _) => report.out_of_scope += 1,
                (Some(pd), tag) => {
                    if let Some(d) = brute {
                        if !report.formula_vs_brute.record(pd == d) {
                            bad.push(|| format!("({a},{b}) {tag:?}: formula {pd}, exact {d}"));
                        }
                    }
                    if let (RegimeTag::ParkHigh(_), Some(bd)) = (tag, bound) {
                        if !report.bound_vs_formula.record(bd >= pd) {
                            bad.push(|| format!("({a},{b}) {tag:?}: order bound {bd} below formula {pd}"));
                        }
                    }
                    if opts.witness {
                        let w = build_witness_support(curve, a, b);
                        let ok = matches!(&w, Ok(w) if w.certified && w.support.len() as i64 == pd);
                        if ok {
                            d_witness = Some(pd);
                        }
                        if !report.witness.record(ok) {
                            let why = w.err().map(|e| e.to_string()).unwrap_or_default();
                            bad.push(|| format!("({a},{b}) {tag:?}: no certified support of size {pd} {why}"));
                        }
                        if brute.is_none() {
                            let bd = bound.expect("in scope implies a nonzero dual");
                            if !report.sandwich.record(ok && bd == pd) {
                                bad.push(|| {
                                    format!("({a},{b}) {tag:?}: bound {bd}, formula {pd}, witness {d_witness:?}")
                                });
                            }
                        }
                    }
                }
            }
            report.records.push(DistanceRecord {
                record: VerificationRecord { q, a, b, k, dual_dim, d_formula: formula.d, d_bound: bound, d_brute: brute },
                regime: formula.tag,
                d_witness,
            });
        }
    }
    report.mismatches = bad.0;
    Ok(report)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct HkRecord {
    pub m: i64,
    pub n: i64,
    pub k: usize,
    pub labels: Vec<&'static str>,
    pub d_formula: i64,
    pub d_brute: Option<i64>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HkReport {
    pub q: u32,
    pub tally: Tally,
    /// Cells with no applicable formula.
    pub uncovered: usize,
    pub mismatches: Vec<String>,
    #[serde(skip)]
    pub records: Vec<HkRecord>,
}

/// Every formula value for m ∈ `m_range`, 0 ≤ n ≤ q, against the exhaustive
/// minimum distance of C(m, n) where its dimension is at most `k_max`.
pub fn verify_hk(curve: &CurveContext, m_range: (i64, i64), k_max: usize, budget: f64) -> Result<HkReport> {
    let q = curve.q();
    let qi = q as i64;
    let mut tally = Tally::default();
    let mut uncovered = 0;
    let mut bad = Mismatches::default();
    let mut records = Vec::new();
    let mut cache: HashMap<(i64, i64), Option<i64>> = HashMap::new();
    for m in m_range.0..=m_range.1 {
        for n in 0..=qi {
            let matches = hk_matches(qi, m, n)?;
            let Some(&(_, value)) = matches.first() else {
                uncovered += 1;
                continue;
            };
            let labels: Vec<&'static str> = matches.iter().map(|&(l, _)| l).collect();
            if matches.iter().any(|&(_, v)| v != value) {
                tally.record(false);
                bad.push(|| format!("({m},{n}): overlapping formulas disagree {matches:?}"));
                continue;
            }
            let k = code_dimension(qi, m, n);
            let brute = if k == 0 || k > k_max {
                None
            } else {
                *cache.entry(scaling_class(qi, m, n)).or_insert_with(|| {
                    let code = build_code(curve, m, n);
                    exact_min_distance(curve.field(), &code.matrix, budget).ok().map(|r| r.d as i64)
                })
            };
            match brute {
                Some(d) => {
                    if !tally.record(d == value) {
                        bad.push(|| format!("({m},{n}) {labels:?}: formula {value}, exact {d}"));
                    }
                }
                None => tally.skipped += 1,
            }
            records.push(HkRecord { m, n, k, labels, d_formula: value, d_brute: brute });
        }
    }
    Ok(HkReport { q, tally, uncovered, mismatches: bad.0, records })
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SegmentReport {
    pub q: u32,
    pub climb: Tally,
    pub plateau: Tally,
    pub mismatches: Vec<String>,
}

/// Both segment minima against their closed forms at every (a, b) in
/// [−2(q+1), q²(q+1)]² meeting the hypotheses, for both base points.
pub fn verify_segments(q: u32) -> SegmentReport {
    let qi = q as i64;
    let (mut climb, mut plateau) = (Tally::default(), Tally::default());
    let mut bad = Mismatches::default();
    for a in -2 * (qi + 1)..=qi * qi * (qi + 1) {
        for b in -2 * (qi + 1)..=qi * qi * (qi + 1) {
            for point in [BasePoint::Pinf, BasePoint::P0] {
                if let Ok(s) = segment_min_i2(qi, a, b, point) {
                    if !climb.record(s.min == s.closed_form) {
                        bad.push(|| format!("climb ({a},{b}) {point:?}: {} vs {}", s.min, s.closed_form));
                    }
                }
                if let Ok(s) = segment_min_i3(qi, a, b, point) {
                    if !plateau.record(s.min == s.closed_form) {
                        bad.push(|| format!("plateau ({a},{b}) {point:?}: {} vs {}", s.min, s.closed_form));
                    }
                }
            }
        }
    }
    SegmentReport { q, climb, plateau, mismatches: bad.0 }
}
