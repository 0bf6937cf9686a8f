//! Monomial bases of L(a·P∞ + b·P0).

use serde::Serialize;

use crate::curve::{CurveContext, RationalPoint};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::multiplicity::decompose_minus;

/// The function x^i y^j with 0 ≤ i ≤ q.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub i: i64,
    pub j: i64,
}

impl Monomial {
    pub fn new(i: i64, j: i64) -> Self {
        Monomial { i, j }
    }

    /// Pole order at P∞, i.e. −v_{P∞}.
    pub fn pole_pinf(self, q: i64) -> i64 {
        q * self.i + (q + 1) * self.j
    }

    /// Pole order at P0, i.e. −v_{P0}.
    pub fn pole_p0(self, q: i64) -> i64 {
        -(self.i + (q + 1) * self.j)
    }

    pub fn valuation_pinf(self, q: i64) -> i64 {
        -self.pole_pinf(q)
    }

    pub fn valuation_p0(self, q: i64) -> i64 {
        -self.pole_p0(q)
    }

    pub fn in_range(self, q: i64) -> bool {
        (0..=q).contains(&self.i)
    }
}

/// G = a·P∞ + b·P0.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoPointDivisor {
    pub a: i64,
    pub b: i64,
}

impl TwoPointDivisor {
    pub fn new(a: i64, b: i64) -> Self {
        TwoPointDivisor { a, b }
    }

    pub fn degree(self) -> i64 {
        self.a + self.b
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RRBasis {
    pub divisor: TwoPointDivisor,
    /// Sorted by pole order at P∞, strictly increasing.
    pub monomials: Vec<Monomial>,
}

impl RRBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
}

/// One row of the JSON basis export.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BasisEntry {
    pub i: i64,
    pub j: i64,
    pub pole_order_pinf: i64,
    pub pole_order_p0: i64,
}

fn j_range(q: i64, a: i64, b: i64, i: i64) -> (i64, i64) {
    let jmax = (a - q * i).div_euclid(q + 1);
    let jmin = -(b + i).div_euclid(q + 1);
    (jmin, jmax)
}

/// Monomials x^i y^j with q·i + (q+1)·j ≤ a and i + (q+1)·j ≥ −b.
pub fn monomial_basis(q: i64, a: i64, b: i64) -> RRBasis {
    let mut monomials = Vec::new();
    for i in 0..=q {
        let (jmin, jmax) = j_range(q, a, b, i);
        monomials.extend((jmin..=jmax).map(|j| Monomial::new(i, j)));
    }
    monomials.sort_by_key(|m| m.pole_pinf(q));
    RRBasis { divisor: TwoPointDivisor::new(a, b), monomials }
}

pub fn rr_dim(q: i64, a: i64, b: i64) -> usize {
    (0..=q)
        .map(|i| {
            let (jmin, jmax) = j_range(q, a, b, i);
            (jmax - jmin + 1).max(0) as usize
        })
        .sum()
}

pub fn basis_entries(q: i64, basis: &RRBasis) -> Vec<BasisEntry> {
    basis
        .monomials
        .iter()
        .map(|m| BasisEntry { i: m.i, j: m.j, pole_order_pinf: m.pole_pinf(q), pole_order_p0: m.pole_p0(q) })
        .collect()
}

/// L(K + a·P∞ + b·P0) described through the decompositions of a and b:
/// pairs (i, j) with 0 ≤ i ≤ q, j ≥ 0, i + j ≤ q − 2 + s, i ≥ a1 on the top
/// diagonal and i ≥ b1 on j = 0, where s = a0 + b0. Returned as monomials
/// x^i y^{j − b0}, sorted like [`monomial_basis`].
pub fn shifted_basis(q: i64, a: i64, b: i64) -> Vec<Monomial> {
    let (a0, a1) = decompose_minus(q, a);
    let (b0, b1) = decompose_minus(q, b);
    let top = q - 2 + a0 + b0;
    let mut out = Vec::new();
    for i in 0..=q {
        for j in 0..=(top - i).max(-1) {
            if i + j == top && i < a1 {
                continue;
            }
            if j == 0 && i < b1 {
                continue;
            }
            out.push(Monomial::new(i, j - b0));
        }
    }
    out.sort_by_key(|m| m.pole_pinf(q));
    out
}

/// x^i y^j at an affine point of D.
pub fn evaluate_monomial(curve: &CurveContext, m: Monomial, point: RationalPoint) -> Result<FieldElement> {
    let q = curve.q() as i64;
    if !m.in_range(q) {
        return Err(Error::MonomialRange { i: m.i, j: m.j });
    }
    match point {
        RationalPoint::Affine { x, y } if !y.is_zero() => {
            let f = curve.field();
            Ok(f.mul(f.pow(x, m.i as u64), f.pow_signed(y, m.j)?))
        }
        _ => Err(Error::NotInD),
    }
}
