//! The Hermitian curve y^q + y = x^{q+1} over F_{q²}.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::rrspace::Monomial;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum RationalPoint {
    Affine { x: FieldElement, y: FieldElement },
    Infinity,
}

impl RationalPoint {
    pub fn affine(x: FieldElement, y: FieldElement) -> Self {
        RationalPoint::Affine { x, y }
    }

    pub fn coords(self) -> Option<(FieldElement, FieldElement)> {
        match self {
            RationalPoint::Affine { x, y } => Some((x, y)),
            RationalPoint::Infinity => None,
        }
    }
}

/// Whether a·P∞ + b·P0 is linearly equivalent to a multiple of one point.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Equivalence {
    pub equiv_s_pinf: bool,
    pub equiv_t_p0: bool,
}

/// a·P∞ + b·P0 ~ s·P∞ iff (q+1) | b, and ~ t·P0 iff (q+1) | a, since the
/// class of P0 − P∞ has order q + 1.
pub fn equiv_to_point_multiple(q: i64, a: i64, b: i64) -> Equivalence {
    Equivalence { equiv_s_pinf: b.rem_euclid(q + 1) == 0, equiv_t_p0: a.rem_euclid(q + 1) == 0 }
}

#[derive(Clone, Debug)]
pub struct CurveContext {
    field: FieldContext,
    q: u32,
    points: Vec<RationalPoint>,
    d_points: Vec<(FieldElement, FieldElement)>,
    d_index: HashMap<(FieldElement, FieldElement), usize>,
}

impl CurveContext {
    pub fn new(q: u32) -> Result<Self> {
        let field = FieldContext::new(q)?;
        let points = enumerate_points(&field);
        let d_points: Vec<_> =
            points.iter().filter_map(|p| p.coords()).filter(|&(x, y)| !(x.is_zero() && y.is_zero())).collect();
        let d_index = d_points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        Ok(CurveContext { field, q, points, d_points, d_index })
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn genus(&self) -> i64 {
        let q = self.q as i64;
        q * (q - 1) / 2
    }

    /// Length of the codes, |D| = q³ − 1.
    pub fn n(&self) -> usize {
        self.d_points.len()
    }

    /// All q³ + 1 rational points, affine ones ordered by (x, y) index, then Infinity.
    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    /// The evaluation points, i.e. all affine points except P0, in canonical order.
    pub fn d_points(&self) -> &[(FieldElement, FieldElement)] {
        &self.d_points
    }

    pub fn d_point(&self, index: usize) -> Result<(FieldElement, FieldElement)> {
        self.d_points.get(index).copied().ok_or(Error::PointIndex(index))
    }

    pub fn d_index(&self, x: FieldElement, y: FieldElement) -> Option<usize> {
        self.d_index.get(&(x, y)).copied()
    }

    pub fn on_curve(&self, x: FieldElement, y: FieldElement) -> bool {
        let f = &self.field;
        f.add(f.pow(y, self.q as u64), y) == f.pow(x, self.q as u64 + 1)
    }

    pub fn valuation_pinf(&self, m: Monomial) -> Result<i64> {
        let q = self.q as i64;
        if m.in_range(q) {
            Ok(m.valuation_pinf(q))
        } else {
            Err(Error::MonomialRange { i: m.i, j: m.j })
        }
    }

    pub fn valuation_p0(&self, m: Monomial) -> Result<i64> {
        let q = self.q as i64;
        if m.in_range(q) {
            Ok(m.valuation_p0(q))
        } else {
            Err(Error::MonomialRange { i: m.i, j: m.j })
        }
    }

    pub fn equiv_to_point_multiple(&self, a: i64, b: i64) -> Equivalence {
        equiv_to_point_multiple(self.q as i64, a, b)
    }

    /// CSV rows `index,x,y` over all points; Infinity has x = y = −1.
    pub fn points_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "x", "y"]).expect("in-memory write");
        for (k, p) in self.points.iter().enumerate() {
            let (x, y) = match p.coords() {
                Some((x, y)) => (x.index() as i64, y.index() as i64),
                None => (-1, -1),
            };
            w.serialize((k, x, y)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory write")).expect("ascii")
    }
}

/// Affine solutions in (x, y) index order, followed by Infinity.
pub fn enumerate_points(field: &FieldContext) -> Vec<RationalPoint> {
    let q = field.q() as u64;
    let mut out = Vec::new();
    for x in field.elements() {
        let rhs = field.pow(x, q + 1);
        for y in field.elements() {
            if field.add(field.pow(y, q), y) == rhs {
                out.push(RationalPoint::affine(x, y));
            }
        }
    }
    out.push(RationalPoint::Infinity);
    out
}
