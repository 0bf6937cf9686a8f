//! Exact minimum distance of small linear codes.
//!
//! Two exhaustive routes: enumerating all messages of a generator matrix, or
//! finding the smallest linearly dependent set of columns of a parity-check
//! matrix. Both are exact; the dispatcher picks the cheaper one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::linalg::{weight, FqMatrix};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Method {
    Messages,
    Supports,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    pub d: usize,
    pub method: Method,
}

/// Largest k with (q²)^k ≤ 2^26.
pub fn default_k_max(f: &FieldContext) -> usize {
    let mut k = 0;
    let mut total: u64 = 1;
    while total * f.order() as u64 <= 1 << 26 {
        total *= f.order() as u64;
        k += 1;
    }
    k
}

struct Tables<'a> {
    order: usize,
    add: &'a [u8],
    mul: &'a [u8],
    neg: &'a [u8],
    inv: &'a [u8],
}

impl<'a> Tables<'a> {
    fn new(f: &'a FieldContext) -> Self {
        Tables { order: f.order(), add: f.add_table(), mul: f.mul_table(), neg: f.neg_table(), inv: f.inv_table() }
    }

    #[inline(always)]
    fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline(always)]
    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.order + b as usize]
    }
}

fn raw_rows(m: &FqMatrix) -> Vec<Vec<u8>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|v| v.raw()).collect()).collect()
}

/// Minimum weight over all nonzero combinations of `rows`, by enumeration of
/// every message up to scalar multiples. Refuses codes of dimension above `k_max`.
pub fn min_distance_exhaustive(f: &FieldContext, rows: &FqMatrix, k_max: usize) -> Result<usize> {
    let basis = rows.row_basis(f);
    let k = basis.rows();
    if k == 0 {
        return Err(Error::OracleInfeasible("zero code has no minimum distance".into()));
    }
    if k > k_max {
        return Err(Error::OracleInfeasible(format!("dimension {k} exceeds k_max = {k_max}")));
    }
    Ok(enumerate_messages(f, &basis))
}

fn enumerate_messages(f: &FieldContext, basis: &FqMatrix) -> usize {
    let t = Tables::new(f);
    let n = basis.cols();
    let rows = raw_rows(basis);
    // multiples[r][c*n..(c+1)*n] = c·row_r
    let multiples: Vec<Vec<u8>> = rows
        .iter()
        .map(|row| {
            let t = &t;
            (0..t.order).flat_map(|c| row.iter().map(move |&v| t.mul(c as u8, v))).collect()
        })
        .collect();
    let mut walk = MessageWalk { t: &t, n, multiples, best: n, acc: vec![vec![0u8; n]; rows.len() + 1] };
    // Normalizing the first nonzero coefficient to 1 visits each line once.
    for (lead, row) in rows.iter().enumerate() {
        walk.acc[lead + 1].copy_from_slice(row);
        walk.extend(lead + 1);
    }
    walk.best
}

struct MessageWalk<'a> {
    t: &'a Tables<'a>,
    n: usize,
    multiples: Vec<Vec<u8>>,
    best: usize,
    /// acc[r] is the partial codeword before row r is added.
    acc: Vec<Vec<u8>>,
}

impl MessageWalk<'_> {
    fn extend(&mut self, r: usize) {
        let k = self.multiples.len();
        let n = self.n;
        if r == k {
            let w = self.acc[k].iter().filter(|&&v| v != 0).count();
            self.best = self.best.min(w);
            return;
        }
        for c in 0..self.t.order {
            let (prefix, tail) = self.acc.split_at_mut(r + 1);
            let m = &self.multiples[r][c * n..(c + 1) * n];
            let out = &mut tail[0];
            let mut w = 0;
            for ((o, &x), &y) in out.iter_mut().zip(prefix[r].iter()).zip(m) {
                *o = self.t.add(x, y);
                w += (*o != 0) as usize;
            }
            if r + 1 == k {
                self.best = self.best.min(w);
            } else {
                self.extend(r + 1);
            }
        }
    }
}

/// Size of the smallest linearly dependent set of columns of `parity`, which
/// is the minimum distance of the code it checks. `upper` is the weight of a
/// known codeword, if any; `None` is returned when no dependency exists.
pub fn min_dependent_columns(f: &FieldContext, parity: &FqMatrix, upper: Option<usize>) -> Option<usize> {
    let t = Tables::new(f);
    let basis = parity.row_basis(f);
    let r = basis.rows();
    let n = basis.cols();
    if r == n {
        return None;
    }
    if r == 0 {
        return Some(1);
    }
    let mut cols: Vec<u8> = Vec::with_capacity(n * r);
    for c in 0..n {
        for row in 0..r {
            cols.push(basis.get(row, c).raw());
        }
    }
    let best = upper.unwrap_or(r + 1).min(r + 1);
    let mut search = SupportSearch { t: &t, r, best, buffers: vec![vec![0u8; n * r]; best + 1] };
    search.descend(&cols, n, 0);
    Some(search.best)
}

struct SupportSearch<'a> {
    t: &'a Tables<'a>,
    r: usize,
    /// Smallest dependent set found so far; only smaller ones are sought.
    best: usize,
    buffers: Vec<Vec<u8>>,
}

impl SupportSearch<'_> {
    /// `reduced` holds `m` candidate columns (each of length r), reduced
    /// against the `depth` columns already chosen.
    fn descend(&mut self, reduced: &[u8], m: usize, depth: usize) {
        let r = self.r;
        if (0..m).any(|k| reduced[k * r..(k + 1) * r].iter().all(|&v| v == 0)) {
            self.best = self.best.min(depth + 1);
            return;
        }
        let t = self.t;
        let mut next = std::mem::take(&mut self.buffers[depth + 1]);
        for k in 0..m {
            if depth + 2 >= self.best {
                break;
            }
            let piv_col = &reduced[k * r..(k + 1) * r];
            let p = piv_col.iter().position(|&v| v != 0).expect("nonzero column");
            let inv = t.inv[piv_col[p] as usize];
            let rest = m - k - 1;
            for (slot, kk) in (k + 1..m).enumerate() {
                let src = &reduced[kk * r..(kk + 1) * r];
                let dst = &mut next[slot * r..(slot + 1) * r];
                let c = src[p];
                if c == 0 {
                    dst.copy_from_slice(src);
                } else {
                    let factor = t.neg[t.mul(c, inv) as usize];
                    for ((d, &x), &y) in dst.iter_mut().zip(src).zip(piv_col) {
                        *d = t.add(x, t.mul(factor, y));
                    }
                }
            }
            if rest > 0 {
                self.descend(&next[..rest * r], rest, depth + 1);
            }
        }
        self.buffers[depth + 1] = next;
    }
}

/// Rough operation counts used to choose a route.
pub fn message_cost(order: usize, k: usize, n: usize) -> f64 {
    let q2 = order as f64;
    (q2.powi(k as i32) - 1.0) / (q2 - 1.0) * n as f64
}

pub fn support_cost(n: usize, r: usize, upper: usize) -> f64 {
    let mut total = 0.0;
    let mut binom = 1.0;
    for t in 0..upper.saturating_sub(1) {
        total += binom * (n - t) as f64 * r as f64;
        binom = binom * (n - t) as f64 / (t + 1) as f64;
    }
    total
}

/// Exact minimum distance of the code generated by `generator`, by whichever
/// route is cheaper; refuses when both exceed `budget` operations.
pub fn exact_min_distance(f: &FieldContext, generator: &FqMatrix, budget: f64) -> Result<DistanceResult> {
    let basis = generator.row_basis(f);
    let k = basis.rows();
    let n = basis.cols();
    if k == 0 {
        return Err(Error::OracleInfeasible("zero code has no minimum distance".into()));
    }
    let upper = (0..k).map(|row| weight(basis.row(row))).min().expect("k > 0");
    let by_messages = message_cost(f.order(), k, n);
    let by_supports = support_cost(n, n - k, upper);
    if by_messages.min(by_supports) > budget {
        return Err(Error::OracleInfeasible(format!(
            "dimension {k}, length {n}: estimated cost {:.2e} over budget {budget:.2e}",
            by_messages.min(by_supports)
        )));
    }
    if by_messages <= by_supports {
        Ok(DistanceResult { d: enumerate_messages(f, &basis), method: Method::Messages })
    } else {
        let parity = basis.kernel(f);
        let d = min_dependent_columns(f, &parity, Some(upper)).unwrap_or(upper);
        Ok(DistanceResult { d, method: Method::Supports })
    }
}

/// Exact minimum distance of the dual of the code generated by `generator`.
pub fn exact_dual_distance(f: &FieldContext, generator: &FqMatrix, budget: f64) -> Result<DistanceResult> {
    exact_min_distance(f, &generator.kernel(f), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, FieldElement};

    fn brute(f: &FieldContext, g: &FqMatrix) -> usize {
        let k = g.rows();
        let n = g.cols();
        let mut best = n + 1;
        let total = f.order().pow(k as u32);
        for code in 1..total {
            let mut c = code;
            let mut word = vec![FieldElement::ZERO; n];
            for r in 0..k {
                let coef = f.element(c % f.order()).unwrap();
                c /= f.order();
                for (w, &v) in word.iter_mut().zip(g.row(r)) {
                    *w = f.add(*w, f.mul(coef, v));
                }
            }
            let w = weight(&word);
            if w > 0 {
                best = best.min(w);
            }
        }
        best
    }

    #[test]
    fn repetition_code() {
        let f = make_field(2).unwrap();
        let ones = FqMatrix::from_rows(7, vec![vec![FieldElement::ONE; 7]]);
        assert_eq!(min_distance_exhaustive(&f, &ones, 5).unwrap(), 7);
        assert_eq!(min_dependent_columns(&f, &ones.kernel(&f), None), Some(7));
    }

    #[test]
    fn refuses_above_k_max() {
        let f = make_field(2).unwrap();
        let id = FqMatrix::identity(6);
        assert!(matches!(min_distance_exhaustive(&f, &id, 5), Err(Error::OracleInfeasible(_))));
        assert_eq!(min_distance_exhaustive(&f, &id, 6).unwrap(), 1);
        assert_eq!(default_k_max(&f), 13);
        assert_eq!(default_k_max(&make_field(3).unwrap()), 8);
    }

    #[test]
    fn routes_agree_with_naive_enumeration() {
        let f = make_field(3).unwrap();
        let mut seed = 12345u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..40 {
            let k = 1 + (next() % 3) as usize;
            let n = k + 1 + (next() % 6) as usize;
            let rows: Vec<Vec<FieldElement>> =
                (0..k).map(|_| (0..n).map(|_| f.element((next() % 9) as usize).unwrap()).collect()).collect();
            let g = FqMatrix::from_rows(n, rows);
            if g.rank(&f) == 0 {
                continue;
            }
            let expected = brute(&f, &g);
            assert_eq!(min_distance_exhaustive(&f, &g, 8).unwrap(), expected);
            let basis = g.row_basis(&f);
            let parity = basis.kernel(&f);
            assert_eq!(min_dependent_columns(&f, &parity, None).unwrap_or(expected), expected);
            assert_eq!(exact_min_distance(&f, &g, 1e9).unwrap().d, expected);
        }
    }
}
