//! Sharpness certificates: explicit supports of minimum-weight dual words.
//!
//! A support S of size d carries a nonzero word of C(A, B)^⊥ exactly when the
//! columns of the generator matrix indexed by S are dependent. The supports
//! are assembled from zero sets of products of conics x² − αy and lines, and
//! then checked by elimination.

use serde::Serialize;

use crate::agcode::{build_code, dual_word_on_support};
use crate::curve::CurveContext;
use crate::distance::{classify_case, park_distance, HighCase, LowCase, RegimeTag};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::linalg::weight;
use crate::multiplicity::ShiftedParams;

type Point = (FieldElement, FieldElement);

/// σ(x, y) = (x/y, 1/y).
pub fn sigma(f: &FieldContext, (x, y): Point) -> Result<Point> {
    let inv = f.inv(y)?;
    Ok((f.mul(x, inv), inv))
}

/// ρ_a(x, y) = (ax, a²y) for a ∈ F_q^*.
pub fn rho(f: &FieldContext, a: FieldElement, (x, y): Point) -> Point {
    (f.mul(a, x), f.mul(f.mul(a, a), y))
}

/// Affine points with x ≠ 0 and y outside F_q: the ones the dihedral group
/// acts on freely.
pub fn is_orbit_eligible(f: &FieldContext, (x, y): Point) -> bool {
    !x.is_zero() && !f.is_in_subfield(y)
}

/// Orbit of P under the group generated by σ and the ρ_a, sorted.
pub fn dihedral_orbit(curve: &CurveContext, p: Point) -> Result<Vec<Point>> {
    let f = curve.field();
    if !curve.on_curve(p.0, p.1) {
        return Err(Error::Ineligible("point is not on the curve".into()));
    }
    if !is_orbit_eligible(f, p) {
        return Err(Error::Ineligible("orbit needs x != 0 and y outside F_q".into()));
    }
    let flipped = sigma(f, p)?;
    let mut orbit = Vec::new();
    for a in f.subfield_elements().into_iter().filter(|a| !a.is_zero()) {
        orbit.push(rho(f, a, p));
        orbit.push(rho(f, a, flipped));
    }
    orbit.sort_unstable();
    orbit.dedup();
    Ok(orbit)
}

/// x² − αy whose zeros are P0 twice and 2(q − 1) distinct points of D.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConicFunction {
    pub alpha: FieldElement,
    pub zero_points: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConicCensus {
    pub conics: Vec<ConicFunction>,
    /// Points with x ≠ 0 and y ∉ F_q.
    pub eligible_points: usize,
}

pub fn expected_conic_count(q: u32) -> usize {
    let q = q as usize;
    if q % 2 == 1 {
        (q * q - 1) / 2
    } else {
        (q * q + q) / 2
    }
}

pub fn expected_eligible_points(q: u32) -> usize {
    let q = q as usize;
    if q % 2 == 1 {
        q * q * q - q * q - q + 1
    } else {
        q * q * q - q
    }
}

fn zeros_in_d(curve: &CurveContext, pred: impl Fn(FieldElement, FieldElement) -> bool) -> Vec<usize> {
    curve.d_points().iter().enumerate().filter(|&(_, &(x, y))| pred(x, y)).map(|(i, _)| i).collect()
}

/// Scans every α ≠ 0 and keeps the conics with 2(q − 1) distinct zeros in D.
/// P0 is a double zero of every x² − αy, and the affine zeros have total
/// multiplicity 2q, so counting distinct points decides the shape.
pub fn enumerate_conics(curve: &CurveContext) -> ConicCensus {
    let f = curve.field();
    let q = curve.q() as usize;
    let conics = f
        .nonzero_elements()
        .filter_map(|alpha| {
            let zero_points = zeros_in_d(curve, |x, y| f.mul(x, x) == f.mul(alpha, y));
            (zero_points.len() == 2 * (q - 1)).then_some(ConicFunction { alpha, zero_points })
        })
        .collect();
    let eligible_points = curve.d_points().iter().filter(|&&p| is_orbit_eligible(f, p)).count();
    ConicCensus { conics, eligible_points }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum LineKind {
    /// y − βx, β ≠ 0: P0 and q points of D.
    ThroughP0,
    /// x − γ, γ ≠ 0: q points of D, the remaining intersection at P∞.
    ThroughPinf,
    /// y − δ: q + 1 points of D when Tr(δ) ≠ 0.
    Horizontal,
}

impl std::str::FromStr for LineKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "throughP0" | "through-p0" => Ok(LineKind::ThroughP0),
            "throughPinf" | "through-pinf" => Ok(LineKind::ThroughPinf),
            "horizontal" => Ok(LineKind::Horizontal),
            other => Err(format!("unknown line kind {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LineFunction {
    pub kind: LineKind,
    pub param: FieldElement,
    pub zero_points: Vec<usize>,
}

/// Lines of one kind whose zeros in D are distinct and as many as possible
/// (q, q and q + 1 points respectively).
pub fn enumerate_lines(curve: &CurveContext, kind: LineKind) -> Vec<LineFunction> {
    let f = curve.field();
    let q = curve.q() as usize;
    let full = if kind == LineKind::Horizontal { q + 1 } else { q };
    f.nonzero_elements()
        .filter_map(|t| {
            let zero_points = match kind {
                LineKind::ThroughP0 => zeros_in_d(curve, |x, y| y == f.mul(t, x)),
                LineKind::ThroughPinf => zeros_in_d(curve, |x, _| x == t),
                LineKind::Horizontal => zeros_in_d(curve, |_, y| y == t),
            };
            (zero_points.len() == full).then_some(LineFunction { kind, param: t, zero_points })
        })
        .collect()
}

/// One factor of a witness function.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "factor", rename_all = "camelCase")]
pub enum Factor {
    /// x itself, vanishing on the q − 1 points (0, v), v ≠ 0.
    X,
    Conic {
        alpha: FieldElement,
    },
    LineThroughP0 {
        beta: FieldElement,
    },
    Vertical {
        gamma: FieldElement,
    },
    Horizontal {
        delta: FieldElement,
    },
    /// y − m·x − δ with m ≠ 0 meeting the curve in q + 1 points of D.
    Secant {
        m: FieldElement,
        delta: FieldElement,
    },
    /// y − v − m·x through (0, v), contributing its other q points.
    AxisLine {
        v: FieldElement,
        m: FieldElement,
    },
    /// A single point (0, v).
    AxisPoint {
        v: FieldElement,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Recipe {
    pub regime: RegimeTag,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessSupport {
    pub d: usize,
    pub recipe: Recipe,
    pub support: Vec<usize>,
    pub certified: bool,
}

struct Candidate {
    factor: Factor,
    /// Points contributed to S.
    zeros: Vec<usize>,
    /// Points contributed to S plus points reserved without entering S.
    used: Vec<usize>,
}

struct Slot {
    candidates: Vec<Candidate>,
    count: usize,
}

fn plain(factor: Factor, zeros: Vec<usize>) -> Candidate {
    Candidate { factor, used: zeros.clone(), zeros }
}

fn axis_points(curve: &CurveContext) -> Vec<(FieldElement, usize)> {
    let f = curve.field();
    f.nonzero_elements().filter_map(|v| curve.d_index(FieldElement::ZERO, v).map(|i| (v, i))).collect()
}

fn axis_lines(curve: &CurveContext) -> Vec<Candidate> {
    let f = curve.field();
    let q = curve.q() as usize;
    let mut out = Vec::new();
    for (v, at) in axis_points(curve) {
        for m in f.nonzero_elements() {
            let zeros: Vec<usize> = zeros_in_d(curve, |x, y| !x.is_zero() && y == f.add(v, f.mul(m, x)));
            if zeros.len() == q {
                let mut used = zeros.clone();
                used.push(at);
                out.push(Candidate { factor: Factor::AxisLine { v, m }, zeros, used });
            }
        }
    }
    out
}

/// Factors of degree one with q + 1 simple zeros in D and none at P0 or P∞:
/// horizontals first, then slanted lines y = m·x + δ.
fn full_lines(curve: &CurveContext) -> Vec<Candidate> {
    let f = curve.field();
    let q = curve.q() as usize;
    let mut out: Vec<Candidate> = enumerate_lines(curve, LineKind::Horizontal)
        .into_iter()
        .map(|l| plain(Factor::Horizontal { delta: l.param }, l.zero_points))
        .collect();
    for m in f.nonzero_elements() {
        for delta in f.nonzero_elements() {
            let zeros = zeros_in_d(curve, |x, y| y == f.add(f.mul(m, x), delta));
            if zeros.len() == q + 1 {
                out.push(plain(Factor::Secant { m, delta }, zeros));
            }
        }
    }
    out
}

fn recipe_slots(curve: &CurveContext, a: i64, b: i64, tag: RegimeTag) -> Result<Vec<Slot>> {
    let q = curve.q() as i64;
    let lines = |kind, wrap: fn(FieldElement) -> Factor| -> Vec<Candidate> {
        enumerate_lines(curve, kind).into_iter().map(|l| plain(wrap(l.param), l.zero_points)).collect()
    };
    let slot = |candidates, count: i64| Slot { candidates, count: count as usize };
    let slots = match tag {
        RegimeTag::ParkHigh(HighCase::Four) => {
            let s = ShiftedParams::from_divisor(q, a, b).s();
            vec![slot(axis_lines(curve), s - 1)]
        }
        RegimeTag::ParkHigh(_) => {
            let p = ShiftedParams::from_divisor(q, a, b);
            let s = p.s();
            if s > q * q - q - 1 {
                return Err(Error::Ineligible(format!("a0 + b0 = {s} exceeds q^2 - q - 1")));
            }
            let (a1, b1) = (p.a1.min(s), p.b1.min(s));
            let conics: Vec<Candidate> = enumerate_conics(curve)
                .conics
                .into_iter()
                .map(|c| plain(Factor::Conic { alpha: c.alpha }, c.zero_points))
                .collect();
            let x_zeros: Vec<usize> = axis_points(curve).into_iter().map(|(_, i)| i).collect();
            let low = a1.min(b1);
            let mut slots = vec![slot(conics, low / 2), slot(vec![plain(Factor::X, x_zeros)], low % 2)];
            if a1 <= b1 {
                slots.push(slot(lines(LineKind::ThroughP0, |beta| Factor::LineThroughP0 { beta }), b1 - a1));
                slots.push(slot(full_lines(curve), s - b1));
            } else {
                slots.push(slot(lines(LineKind::ThroughPinf, |gamma| Factor::Vertical { gamma }), a1 - b1));
                slots.push(slot(full_lines(curve), s - a1));
            }
            slots
        }
        RegimeTag::ParkLow(case) => {
            let d = park_distance(q, a, b).d.expect("in scope");
            match case {
                LowCase::AxisPoints => {
                    let points =
                        axis_points(curve).into_iter().map(|(v, i)| plain(Factor::AxisPoint { v }, vec![i])).collect();
                    vec![slot(points, d)]
                }
                LowCase::LineThroughP0 => {
                    vec![slot(lines(LineKind::ThroughP0, |beta| Factor::LineThroughP0 { beta }), 1)]
                }
                LowCase::VerticalLine => {
                    vec![slot(lines(LineKind::ThroughPinf, |gamma| Factor::Vertical { gamma }), 1)]
                }
            }
        }
        RegimeTag::OutOfScope(reason) => {
            return Err(Error::Ineligible(format!("no closed form applies ({reason:?})")));
        }
    };
    Ok(slots)
}

type Accept<'f> = &'f mut dyn FnMut(&[(usize, usize)]) -> bool;

/// Depth-first choice of candidates with pairwise disjoint `used` sets, in
/// increasing candidate order within each slot. `accept` sees each complete
/// choice and stops the search by returning true.
struct Assignment<'a> {
    slots: &'a [Slot],
    occupied: Vec<bool>,
    chosen: Vec<(usize, usize)>,
    nodes: u64,
    budget: u64,
}

impl Assignment<'_> {
    fn run(&mut self, slot: usize, start: usize, left: usize, accept: Accept<'_>) -> bool {
        if left == 0 {
            if slot + 1 == self.slots.len() {
                return accept(&self.chosen);
            }
            let next = slot + 1;
            return self.run(next, 0, self.slots[next].count, accept);
        }
        let cands = &self.slots[slot].candidates;
        for c in start..cands.len() {
            if cands.len() - c < left {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            if cands[c].used.iter().any(|&p| self.occupied[p]) {
                continue;
            }
            for &p in &cands[c].used {
                self.occupied[p] = true;
            }
            self.chosen.push((slot, c));
            let done = self.run(slot, c + 1, left - 1, accept);
            self.chosen.pop();
            for &p in &cands[c].used {
                self.occupied[p] = false;
            }
            if done {
                return true;
            }
        }
        false
    }
}

pub const DEFAULT_WITNESS_BUDGET: u64 = 1 << 20;

pub fn build_witness_support(curve: &CurveContext, a: i64, b: i64) -> Result<WitnessSupport> {
    build_witness_support_with_budget(curve, a, b, DEFAULT_WITNESS_BUDGET)
}

/// A support of size park_distance(A, B) built from the factor recipe of the
/// regime, certified by a rank-deficiency check. Assignments whose zeros are
/// distinct but fail the check are skipped; running out of choices or of the
/// node budget is an error, never a smaller support.
pub fn build_witness_support_with_budget(curve: &CurveContext, a: i64, b: i64, budget: u64) -> Result<WitnessSupport> {
    let q = curve.q() as i64;
    let tag = classify_case(q, a, b);
    let slots = recipe_slots(curve, a, b, tag)?;
    let d = park_distance(q, a, b).d.expect("recipe implies a closed form") as usize;
    if d == 0 {
        return Err(Error::Ineligible("zero target weight".into()));
    }
    let code = build_code(curve, a, b);
    let mut found: Option<WitnessSupport> = None;
    let mut error: Option<Error> = None;
    let mut accept = |chosen: &[(usize, usize)]| -> bool {
        let mut support: Vec<usize> =
            chosen.iter().flat_map(|&(s, c)| slots[s].candidates[c].zeros.iter().copied()).collect();
        support.sort_unstable();
        if support.len() != d {
            error = Some(Error::WitnessExhausted(format!("recipe gives {} points, expected {d}", support.len())));
            return true;
        }
        match dual_word_on_support(curve, &code, &support) {
            Ok(Some(word)) if weight(&word) == d => {
                let factors = chosen.iter().map(|&(s, c)| slots[s].candidates[c].factor).collect();
                found = Some(WitnessSupport { d, recipe: Recipe { regime: tag, factors }, support, certified: true });
                true
            }
            Ok(_) => false,
            Err(e) => {
                error = Some(e);
                true
            }
        }
    };
    let mut search =
        Assignment { slots: &slots, occupied: vec![false; curve.n()], chosen: Vec::new(), nodes: 0, budget };
    search.run(0, 0, slots[0].count, &mut accept);
    if let Some(e) = error {
        return Err(e);
    }
    found.ok_or_else(|| {
        Error::WitnessExhausted(format!(
            "no certified support among the recipe's parameter choices after {} nodes",
            search.nodes
        ))
    })
}
