//! The multiplicities m_{P∞} and m_{P0} that drive the shift bound.
//!
//! Shifted arguments (a, b) stand for G = K + a·P∞ + b·P0 with
//! K = (2g − 2)·P∞. Raw arguments (A, B) stand for G = A·P∞ + B·P0.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rrspace::{monomial_basis, Monomial};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasePoint {
    Pinf,
    P0,
}

impl std::str::FromStr for BasePoint {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "pinf" | "inf" => Ok(BasePoint::Pinf),
            "p0" | "zero" => Ok(BasePoint::P0),
            other => Err(format!("unknown point {other:?}, expected pinf or p0")),
        }
    }
}

/// v = v0·(q+1) − v1 with 0 ≤ v1 ≤ q.
pub fn decompose_minus(q: i64, v: i64) -> (i64, i64) {
    let v1 = (-v).rem_euclid(q + 1);
    ((v + v1) / (q + 1), v1)
}

/// v = v0·(q+1) + v1 with 0 ≤ v1 ≤ q.
pub fn decompose_plus(q: i64, v: i64) -> (i64, i64) {
    (v.div_euclid(q + 1), v.rem_euclid(q + 1))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ShiftedParams {
    pub a: i64,
    pub b: i64,
    pub a0: i64,
    pub a1: i64,
    pub b0: i64,
    pub b1: i64,
    pub d_star: i64,
}

impl ShiftedParams {
    pub fn new(q: i64, a: i64, b: i64) -> Self {
        let (a0, a1) = decompose_minus(q, a);
        let (b0, b1) = decompose_minus(q, b);
        ShiftedParams { a, b, a0, a1, b0, b1, d_star: a + b }
    }

    /// From raw divisor coefficients.
    pub fn from_divisor(q: i64, big_a: i64, big_b: i64) -> Self {
        ShiftedParams::new(q, big_a - (q * q - q - 2), big_b)
    }

    pub fn s(&self) -> i64 {
        self.a0 + self.b0
    }

    fn swapped(&self) -> Self {
        ShiftedParams { a: self.b, b: self.a, a0: self.b0, a1: self.b1, b0: self.a0, b1: self.a1, d_star: self.d_star }
    }
}

fn closed(p: &ShiftedParams, q: i64) -> i64 {
    let s = p.s();
    if p.a1 < s {
        (s - p.a1) * (q + 1) - p.b1 + p.a1 * q
    } else if p.a1 <= s + q - 1 {
        p.a1 * (q + s - p.a1) - p.a1.min(p.b1)
    } else {
        0
    }
}

/// m_{P∞}(2g − 2 + a, b).
pub fn mult_pinf_closed(q: i64, a: i64, b: i64) -> i64 {
    closed(&ShiftedParams::new(q, a, b), q)
}

/// m_{P0}(2g − 2 + a, b); the mirror image of [`mult_pinf_closed`].
pub fn mult_p0_closed(q: i64, a: i64, b: i64) -> i64 {
    closed(&ShiftedParams::new(q, a, b).swapped(), q)
}

pub fn mult_closed(q: i64, a: i64, b: i64, point: BasePoint) -> i64 {
    match point {
        BasePoint::Pinf => mult_pinf_closed(q, a, b),
        BasePoint::P0 => mult_p0_closed(q, a, b),
    }
}

fn excess_form(p: &ShiftedParams, q: i64) -> i64 {
    let s = p.s();
    if p.a1 < s {
        p.d_star
    } else if p.a1 <= s + q - 1 {
        p.d_star + (p.a1 - s) * (q + 1 - p.a1) + (p.b1 - p.a1).max(0)
    } else {
        0
    }
}

/// The same multiplicities written relative to d* = a + b.
pub fn mult_excess_form(q: i64, a: i64, b: i64, point: BasePoint) -> i64 {
    let p = ShiftedParams::new(q, a, b);
    match point {
        BasePoint::Pinf => excess_form(&p, q),
        BasePoint::P0 => excess_form(&p.swapped(), q),
    }
}

fn lattice(p: &ShiftedParams, q: i64) -> i64 {
    let s = p.s();
    let mut count = 0;
    // First region: i1 < a1, j1 ≤ q − 1 + s − a1.
    for i1 in 0..p.a1.min(q + 1) {
        for j1 in 0..=(q - 1 + s - p.a1) {
            if j1 == 0 && i1 < p.b1 {
                continue;
            }
            count += 1;
        }
    }
    // Second region: a1 ≤ i1 ≤ q, j1 ≤ s − 1 − a1.
    for i1 in p.a1.max(0)..=q {
        for j1 in 0..=(s - 1 - p.a1) {
            if j1 == 0 && i1 < p.b1 {
                continue;
            }
            count += 1;
        }
    }
    count
}

/// Direct count of the index pairs in the two rectangles of the pole-order
/// argument, with pairs on j1 = 0 requiring i1 ≥ b1.
pub fn mult_lattice_count(q: i64, a: i64, b: i64, point: BasePoint) -> i64 {
    let p = ShiftedParams::new(q, a, b);
    match point {
        BasePoint::Pinf => lattice(&p, q),
        BasePoint::P0 => lattice(&p.swapped(), q),
    }
}

/// Pair count straight from the definition, restricted to monomials, at raw
/// arguments (A, B). For P∞: pole orders i ∈ [−B, A+1] of f ∈ L((A+1)P∞ + BP0)
/// such that some g ∈ L((A+1+B)P∞) makes f·g have pole order exactly A + 1 at
/// P∞ and at most B at P0. For P0 the roles of the points are exchanged.
pub fn mult_definition_oracle(q: i64, big_a: i64, big_b: i64, point: BasePoint) -> Result<i64> {
    if q > 4 {
        return Err(Error::OracleTooLarge(q as u32));
    }
    // Exchange the roles of the points by working with pole orders (at the
    // distinguished point, at the other point).
    let (top, other) = match point {
        BasePoint::Pinf => (big_a, big_b),
        BasePoint::P0 => (big_b, big_a),
    };
    let poles = |m: &Monomial| -> (i64, i64) {
        match point {
            BasePoint::Pinf => (m.pole_pinf(q), m.pole_p0(q)),
            BasePoint::P0 => (m.pole_p0(q), m.pole_pinf(q)),
        }
    };
    let (fa, fb, ga, gb) = match point {
        BasePoint::Pinf => (top + 1, other, top + 1 + other, 0),
        BasePoint::P0 => (other, top + 1, 0, top + 1 + other),
    };
    let fs: Vec<(i64, i64)> = monomial_basis(q, fa, fb).monomials.iter().map(poles).collect();
    let gs: Vec<(i64, i64)> = monomial_basis(q, ga, gb).monomials.iter().map(poles).collect();
    let mut hit = std::collections::BTreeSet::new();
    for &(f_top, f_other) in &fs {
        if f_top < -other || f_top > top + 1 {
            continue;
        }
        if gs.iter().any(|&(g_top, g_other)| f_top + g_top == top + 1 && f_other + g_other <= other) {
            hit.insert(f_top);
        }
    }
    Ok(hit.len() as i64)
}
