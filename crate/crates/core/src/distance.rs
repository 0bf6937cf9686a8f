//! Closed-form minimum distances.
//!
//! [`park_distance`] gives d(C(A, B)^⊥) for the two-point duals; [`hk_distance`]
//! gives d(C(m, n)) of the primal codes for 0 ≤ n ≤ q.

use serde::Serialize;

use crate::agcode::code_dimension;
use crate::curve::equiv_to_point_multiple;
use crate::error::{Error, Result};
use crate::multiplicity::{decompose_plus, ShiftedParams};
use crate::rrspace::rr_dim;

/// Case labels above the canonical degree.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HighCase {
    /// a1, b1 ≤ a0 + b0.
    #[serde(rename = "1")]
    One,
    /// b1 ≤ a0 + b0 < a1.
    #[serde(rename = "2")]
    Two,
    /// a1 ≤ a0 + b0 < b1.
    #[serde(rename = "2'")]
    TwoPrime,
    /// a0 + b0 < a1 ≤ b1 < q.
    #[serde(rename = "3")]
    Three,
    /// a0 + b0 < b1 ≤ a1 < q.
    #[serde(rename = "3'")]
    ThreePrime,
    /// a1 = b1 = q > a0 + b0.
    #[serde(rename = "4")]
    Four,
    /// Exactly one of a1, b1 equals q and both exceed a0 + b0.
    #[serde(rename = "maxForm")]
    MaxForm,
}

impl HighCase {
    pub const PRINTED: [HighCase; 6] =
        [HighCase::One, HighCase::Two, HighCase::TwoPrime, HighCase::Three, HighCase::ThreePrime, HighCase::Four];

    /// Whether the case's own hypothesis holds (several may hold at once).
    pub fn matches(self, q: i64, p: &ShiftedParams) -> bool {
        let s = p.s();
        let (a1, b1) = (p.a1, p.b1);
        match self {
            HighCase::One => a1 <= s && b1 <= s,
            HighCase::Two => b1 <= s && s < a1,
            HighCase::TwoPrime => a1 <= s && s < b1,
            HighCase::Three => s < a1 && a1 <= b1 && b1 < q,
            HighCase::ThreePrime => s < b1 && b1 <= a1 && a1 < q,
            HighCase::Four => s < a1 && s < b1 && a1 == q && b1 == q,
            HighCase::MaxForm => s < a1 && s < b1 && (a1 == q) != (b1 == q),
        }
    }

    /// The case's own formula.
    pub fn value(self, q: i64, p: &ShiftedParams) -> i64 {
        let s = p.s();
        match self {
            HighCase::One => p.d_star,
            HighCase::Two => p.d_star + p.a1 - s,
            HighCase::TwoPrime => p.d_star + p.b1 - s,
            HighCase::Three | HighCase::ThreePrime => p.d_star + p.a1 + p.b1 - 2 * s,
            HighCase::Four => p.d_star + q - s,
            HighCase::MaxForm => max_form(p),
        }
    }
}

/// Case labels below the canonical degree, named after the sharp word's support.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum LowCase {
    /// a0 + b0 ≤ q − 3: points on the line x = 0.
    AxisPoints,
    /// a0 + b0 = q − 2 with a1 = 0: a line through P0.
    LineThroughP0,
    /// a0 + b0 = q − 2 with b1 = 0: a vertical line.
    VerticalLine,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ScopeReason {
    /// L(G) = 0, so C(A, B) = 0 and its dual is the whole space.
    ZeroCode,
    /// C(A, B) is the whole space and its dual is zero.
    TrivialDual,
    /// Above the canonical degree with a0 + b0 > q² − q − 1, beyond the range
    /// the closed form is proved for (and where it is wrong for small q).
    BeyondProofRange,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "regime", content = "case", rename_all = "camelCase")]
pub enum RegimeTag {
    ParkHigh(HighCase),
    ParkLow(LowCase),
    OutOfScope(ScopeReason),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParkDistance {
    pub d: Option<i64>,
    #[serde(flatten)]
    pub tag: RegimeTag,
}

fn max_form(p: &ShiftedParams) -> i64 {
    let s = p.s();
    p.d_star + 0.max(p.a1 - s).max(p.b1 - s).max(p.a1 + p.b1 - 2 * s)
}

/// Regime and case of C(A, B)^⊥.
pub fn classify_case(q: i64, a: i64, b: i64) -> RegimeTag {
    let n = (q * q * q - 1) as usize;
    if rr_dim(q, a, b) == 0 {
        return RegimeTag::OutOfScope(ScopeReason::ZeroCode);
    }
    if code_dimension(q, a, b) == n {
        return RegimeTag::OutOfScope(ScopeReason::TrivialDual);
    }
    let k = q * q - q - 2;
    let deg = a + b;
    let eq = equiv_to_point_multiple(q, a, b);
    let high = deg > k + q || (k <= deg && !eq.equiv_s_pinf && !eq.equiv_t_p0);
    if high {
        let p = ShiftedParams::from_divisor(q, a, b);
        if p.s() > q * q - q - 1 {
            return RegimeTag::OutOfScope(ScopeReason::BeyondProofRange);
        }
        let case = HighCase::PRINTED.into_iter().find(|c| c.matches(q, &p)).unwrap_or(HighCase::MaxForm);
        RegimeTag::ParkHigh(case)
    } else {
        // Negative coefficients need no special treatment: multiplying by y
        // moves (A, B) to (A + q + 1, B − q − 1) and preserves a1, b1 and a0 + b0.
        let (a0, a1) = decompose_plus(q, a);
        let (b0, _) = decompose_plus(q, b);
        if a0 + b0 <= q - 3 {
            RegimeTag::ParkLow(LowCase::AxisPoints)
        } else if a1 == 0 {
            RegimeTag::ParkLow(LowCase::LineThroughP0)
        } else {
            RegimeTag::ParkLow(LowCase::VerticalLine)
        }
    }
}

/// d(C(A, B)^⊥) where a closed form applies.
pub fn park_distance(q: i64, a: i64, b: i64) -> ParkDistance {
    let tag = classify_case(q, a, b);
    let d = match tag {
        RegimeTag::ParkHigh(case) => {
            let p = ShiftedParams::from_divisor(q, a, b);
            Some(if case == HighCase::Four { case.value(q, &p) } else { max_form(&p) })
        }
        RegimeTag::ParkLow(_) => {
            let (a0, _) = decompose_plus(q, a);
            let (b0, _) = decompose_plus(q, b);
            Some(a0 + b0 + 2)
        }
        RegimeTag::OutOfScope(_) => None,
    };
    ParkDistance { d, tag }
}

/// m = a·q + b = (q² − ρ)·q + b with 0 ≤ b < q.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HkParams {
    pub m: i64,
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub rho: i64,
    pub in_i_tilde: bool,
    pub in_j: bool,
}

impl HkParams {
    pub fn new(q: i64, m: i64, n: i64) -> Self {
        let a = m.div_euclid(q);
        let b = m.rem_euclid(q);
        let in_i_tilde = b <= a || (b == q - 1 && (0..=q - 2).contains(&a)) || m == -1;
        let in_j = b + q * q <= a || (b == q - 1 && q * q - 2 <= a);
        HkParams { m, n, a, b, rho: q * q - a, in_i_tilde, in_j }
    }
}

/// Every primal formula whose range contains (m, n), as (label, value).
pub fn hk_matches(q: i64, m: i64, n: i64) -> Result<Vec<(&'static str, i64)>> {
    if !(0..=q).contains(&n) {
        return Err(Error::HkRange(n));
    }
    let h = HkParams::new(q, m, n);
    let (a, b, rho) = (h.a, h.b, h.rho);
    let q2 = q * q;
    let q3 = q2 * q;
    let mut out = Vec::new();
    if n == 0 {
        if b <= a && a <= (b + q2 - 1).min(q2 + q - 3) {
            if a <= b + q2 - q - 1 {
                out.push(("0-i", q3 - 1 - m));
            }
            if (1..=q).contains(&rho) && b <= q - rho {
                out.push(("0-ii", rho * q - 1));
            }
            if q2 - 1 <= a {
                out.push(("0-iii", q2 + q - a - 2));
            }
        }
    } else if n < q {
        if m >= 0 {
            if b <= a && a <= q - (n + 1) {
                out.push(("I", q3 - 1 - m));
            }
            if (b <= q - 2 && q2 - 1 <= a && a <= b + q2 - 1) || (b == q - 1 && q2 - 1 <= a && a <= q2 + q - (n + 3)) {
                out.push(("II", q2 + q - a - 2));
            }
            let iii = (b == 0 && q - n <= a && a <= q2 - (n + 1))
                || ((1..=q - 2).contains(&b) && b.max(q - n) <= a && a <= (b + q2 - (q + 1)).min(q2 - (n + 2)))
                || (b == q - 1 && q - (n + 1) <= a && a <= q2 - (n + 2));
            if iii {
                out.push(("III", q3 - 1 - (m + n)));
            }
        }
        if 1 <= b && n + 1 <= rho && rho + b <= q {
            out.push(("IV", rho * q - (n + 1)));
        }
        if rho <= n + 1 && q < rho + b {
            out.push(("V", rho * (q - 1) - (b - 1)));
        }
        if 2 <= rho && rho <= n && rho + b <= q {
            if n <= q - 2 || rho + b < q {
                out.push(("VI-1", rho * (q - 1)));
            } else {
                out.push(("VI-2", (rho - 1) * q));
            }
        }
    } else if h.in_i_tilde && !h.in_j {
        if (b <= q - 2 && b <= a && a <= b + q2 - q - 1) || (b == q - 1 && -1 <= a && a <= q2 - 3) {
            out.push(("A", q3 - q - m - 1));
        }
        if b + q2 - q <= a && a <= q2 - 2 {
            out.push(("B", (q2 - a - 1) * q));
        }
        if b <= q - 2 && q2 - 1 <= a && a <= b + q2 - 1 {
            out.push(("C", q2 + q - a - 2));
        }
    }
    Ok(out)
}

/// d(C(m, n)) for the primal code, when one of the formulas applies.
pub fn hk_distance(q: i64, m: i64, n: i64) -> Result<Option<i64>> {
    let matches = hk_matches(q, m, n)?;
    let Some(&(_, first)) = matches.first() else {
        return Ok(None);
    };
    if matches.iter().any(|&(_, v)| v != first) {
        return Err(Error::HkInconsistent { m, n, values: matches.iter().map(|&(_, v)| v).collect() });
    }
    Ok(Some(first))
}
