//! Dense matrices over F_{q²} with exact elimination.

use crate::field::{FieldContext, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix { rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<FieldElement>>) -> Self {
        let mut m = FqMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            m.row_mut(r).copy_from_slice(&row);
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FqMatrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, FieldElement::ONE);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [FieldElement] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> FqMatrix {
        let mut m = FqMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                m.set(r, k, self.get(r, c));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> FqMatrix {
        FqMatrix::from_rows(self.cols, rows.iter().map(|&r| self.row(r).to_vec()).collect())
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut m = FqMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c));
            }
        }
        m
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(FieldElement) -> FieldElement) -> FqMatrix {
        FqMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, f: &FieldContext) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&k| !self.get(k, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for v in self.row_mut(r) {
                *v = f.mul(*v, inv);
            }
            for k in 0..self.rows {
                let factor = self.get(k, c);
                if k == r || factor.is_zero() {
                    continue;
                }
                let neg = f.neg(factor);
                for cc in c..self.cols {
                    let v = f.add(self.get(k, cc), f.mul(neg, self.get(r, cc)));
                    self.set(k, cc, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &FieldContext) -> usize {
        self.clone().rref(f).len()
    }

    /// Linearly independent rows spanning the row space, in echelon form.
    pub fn row_basis(&self, f: &FieldContext) -> FqMatrix {
        let mut m = self.clone();
        let rank = m.rref(f).len();
        m.select_rows(&(0..rank).collect::<Vec<_>>())
    }

    /// Basis of {v : M·v = 0}, one vector per row.
    pub fn kernel(&self, f: &FieldContext) -> FqMatrix {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FqMatrix::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, FieldElement::ONE);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(m.get(r, fc)));
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &FieldContext, v: &[FieldElement]) -> Vec<FieldElement> {
        (0..self.rows).map(|r| dot(f, self.row(r), v)).collect()
    }
}

pub fn dot(f: &FieldContext, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter().zip(b).fold(FieldElement::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

pub fn weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn kernel_is_orthogonal_and_complementary() {
        let f = make_field(3).unwrap();
        let e = |i| f.element(i).unwrap();
        let m = FqMatrix::from_rows(4, vec![vec![e(1), e(2), e(0), e(5)], vec![e(2), e(4), e(0), e(1)]]);
        let k = m.kernel(&f);
        assert_eq!(m.rank(&f) + k.rows(), 4);
        for r in 0..k.rows() {
            assert!(m.mul_vec(&f, k.row(r)).iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn degenerate_shapes() {
        let f = make_field(2).unwrap();
        let empty = FqMatrix::zeros(0, 5);
        assert_eq!(empty.rank(&f), 0);
        assert_eq!(empty.kernel(&f).rows(), 5);
        let id = FqMatrix::identity(4);
        assert_eq!(id.rank(&f), 4);
        assert_eq!(id.kernel(&f).rows(), 0);
    }
}
