//! Evaluation codes C(a, b) on D and their Euclidean duals.

use serde::Serialize;

use crate::curve::CurveContext;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::FqMatrix;
use crate::rrspace::{monomial_basis, rr_dim, Monomial, TwoPointDivisor};

/// Generator matrix of C(a, b): one row per basis monomial of L(a·P∞ + b·P0).
#[derive(Clone, Debug)]
pub struct CodeMatrix {
    pub divisor: TwoPointDivisor,
    pub basis: Vec<Monomial>,
    pub matrix: FqMatrix,
}

/// Rows spanning C(a, b)^⊥.
#[derive(Clone, Debug)]
pub struct DualBasis {
    pub matrix: FqMatrix,
}

impl DualBasis {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// The JSON record written per verified cell.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct VerificationRecord {
    pub q: u32,
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    pub k: usize,
    pub dual_dim: usize,
    pub d_formula: Option<i64>,
    pub d_bound: Option<i64>,
    pub d_brute: Option<i64>,
}

pub fn build_code(curve: &CurveContext, a: i64, b: i64) -> CodeMatrix {
    let q = curve.q() as i64;
    let f = curve.field();
    let basis = monomial_basis(q, a, b).monomials;
    let n = curve.n();
    let (jmin, jmax) = basis.iter().fold((0, 0), |(lo, hi), m| (m.j.min(lo), m.j.max(hi)));

    // Per point: x^0..x^q and y^jmin..y^jmax.
    let mut matrix = FqMatrix::zeros(basis.len(), n);
    for (c, &(x, y)) in curve.d_points().iter().enumerate() {
        let xp: Vec<FieldElement> = (0..=q).map(|i| f.pow(x, i as u64)).collect();
        let yp: Vec<FieldElement> =
            (jmin..=jmax).map(|j| f.pow_signed(y, j).expect("points of D have y != 0")).collect();
        for (r, m) in basis.iter().enumerate() {
            matrix.set(r, c, f.mul(xp[m.i as usize], yp[(m.j - jmin) as usize]));
        }
    }
    CodeMatrix { divisor: TwoPointDivisor::new(a, b), basis, matrix }
}

pub fn code_rank(curve: &CurveContext, code: &CodeMatrix) -> usize {
    code.matrix.rank(curve.field())
}

pub fn dual_basis(curve: &CurveContext, code: &CodeMatrix) -> DualBasis {
    DualBasis { matrix: code.matrix.kernel(curve.field()) }
}

/// dim C(a, b) without elimination: l(G) − l(G − D), where D + P0 is the
/// zero divisor of x^{q²} − x, whose only pole is q³·P∞.
pub fn code_dimension(q: i64, a: i64, b: i64) -> usize {
    rr_dim(q, a, b) - rr_dim(q, a - q * q * q, b + 1)
}

/// Degree from which every C(a, b) is the full space: n + 2g − 1.
pub fn full_space_degree(q: i64) -> i64 {
    q * q * q - 1 + q * (q - 1) - 1
}

pub fn is_full_space(curve: &CurveContext, a: i64, b: i64) -> bool {
    let q = curve.q() as i64;
    if a + b >= full_space_degree(q) {
        return true;
    }
    code_rank(curve, &build_code(curve, a, b)) == curve.n()
}

/// Codes with equal keys are equal up to scaling every column by a nonzero
/// constant: (y) = (q+1)·P0 − (q+1)·P∞ and y has no zero on D, so
/// multiplication by y^k maps L(A·P∞ + B·P0) onto L((A + k(q+1))·P∞ + (B − k(q+1))·P0).
/// Weights, and so minimum distances of the code and its dual, depend only
/// on the key.
pub fn scaling_class(q: i64, a: i64, b: i64) -> (i64, i64) {
    (a + b, b.rem_euclid(q + 1))
}

/// A nonzero dual codeword supported inside `support`, if one exists.
pub fn dual_word_on_support(
    curve: &CurveContext,
    code: &CodeMatrix,
    support: &[usize],
) -> Result<Option<Vec<FieldElement>>> {
    let n = curve.n();
    if support.is_empty() {
        return Err(Error::Ineligible("empty support".into()));
    }
    if let Some(&bad) = support.iter().find(|&&s| s >= n) {
        return Err(Error::PointIndex(bad));
    }
    let mut sorted = support.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != support.len() {
        return Err(Error::Ineligible("repeated support index".into()));
    }
    let kernel = code.matrix.select_columns(support).kernel(curve.field());
    if kernel.rows() == 0 {
        return Ok(None);
    }
    let mut word = vec![FieldElement::ZERO; n];
    for (k, &s) in support.iter().enumerate() {
        word[s] = kernel.get(0, k);
    }
    Ok(Some(word))
}

/// Entries as field indices, one CSV line per row.
pub fn matrix_csv(m: &FqMatrix) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for r in 0..m.rows() {
        w.write_record(m.row(r).iter().map(|v| v.index().to_string())).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("ascii")
}
