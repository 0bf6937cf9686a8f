//! Arithmetic in F_{q²} for a prime power q.
//!
//! Elements are stored as their serialization index: the coefficient vector
//! in the polynomial basis read as a little-endian radix-p integer. All
//! operations go through lookup tables built once from polynomial arithmetic
//! modulo the defining polynomial.

use crate::error::{Error, Result};

/// Largest supported q. Element indices fit in a byte up to q² = 256.
pub const MAX_Q: u32 = 16;

/// An element of F_{q²}, identified by its serialization index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, serde::Serialize)]
#[serde(transparent)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub(crate) fn raw(self) -> u8 {
        self.0
    }
}

/// Splits `q` into `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Polynomials over F_p as little-endian coefficient vectors.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (k, &c) in m.iter().enumerate() {
                    let t = &mut r[shift + k];
                    *t = (*t + p - (lead * c) % p) % p;
                }
            }
            r.pop();
        }
        trim(r)
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the
    /// radix-p digits of `code`.
    pub fn monic_from_code(mut code: u64, deg: usize, p: u32) -> Vec<u32> {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push((code % p as u64) as u32);
            code /= p as u64;
        }
        c.push(1);
        c
    }

    /// Irreducibility by trial division with every monic polynomial of
    /// degree at most half the degree.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        for d in 1..=n / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let g = monic_from_code(code, d, p);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// F_{q²} built on the lexicographically smallest irreducible polynomial.
#[derive(Clone, Debug)]
pub struct FieldContext {
    p: u32,
    e: u32,
    q: u32,
    order: usize,
    modulus: Vec<u32>,
    generator: FieldElement,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
}

/// Builds the context for F_{q²}.
pub fn make_field(q: u32) -> Result<FieldContext> {
    FieldContext::new(q)
}

impl FieldContext {
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(Error::UnsupportedQ(q));
        }
        let deg = 2 * e as usize;
        let order = (q * q) as usize;

        // Monic candidates are ranked by their lower coefficients read as a
        // radix-p integer with the constant term least significant.
        let modulus = (0..order as u64)
            .map(|code| poly::monic_from_code(code, deg, p))
            .find(|f| poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        let to_poly = |idx: usize| -> Vec<u32> {
            let mut c = Vec::with_capacity(deg);
            let mut v = idx;
            for _ in 0..deg {
                c.push((v % p as usize) as u32);
                v /= p as usize;
            }
            poly::trim(c)
        };
        let to_index = |c: &[u32]| -> usize { c.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize) };

        let polys: Vec<Vec<u32>> = (0..order).map(to_poly).collect();
        let mut add = vec![0u8; order * order];
        let mut mul = vec![0u8; order * order];
        for a in 0..order {
            for b in 0..order {
                let mut s = vec![0u32; deg];
                for (k, v) in s.iter_mut().enumerate() {
                    let x = polys[a].get(k).copied().unwrap_or(0);
                    let y = polys[b].get(k).copied().unwrap_or(0);
                    *v = (x + y) % p;
                }
                add[a * order + b] = to_index(&s) as u8;
                let prod = poly::rem(&poly::mul(&polys[a], &polys[b], p), &modulus, p);
                mul[a * order + b] = to_index(&prod) as u8;
            }
        }
        let mut neg = vec![0u8; order];
        let mut inv = vec![0u8; order];
        for a in 0..order {
            for b in 0..order {
                if add[a * order + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * order + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }

        let mut ctx = FieldContext {
            p,
            e,
            q,
            order,
            modulus,
            generator: FieldElement::ONE,
            add,
            mul,
            neg,
            inv,
            frob: Vec::new(),
        };
        ctx.frob = (0..order).map(|a| ctx.pow(FieldElement(a as u8), q as u64).0).collect();
        ctx.generator = (1..order)
            .map(|a| FieldElement(a as u8))
            .find(|&a| ctx.multiplicative_order(a) == order - 1)
            .expect("the multiplicative group is cyclic");
        Ok(ctx)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of elements, q².
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|a| FieldElement(a as u8))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.order).map(|a| FieldElement(a as u8))
    }

    /// The q elements of the subfield F_q.
    pub fn subfield_elements(&self) -> Vec<FieldElement> {
        self.elements().filter(|&a| self.is_in_subfield(a)).collect()
    }

    pub fn element(&self, index: usize) -> Result<FieldElement> {
        if index < self.order {
            Ok(FieldElement(index as u8))
        } else {
            Err(Error::ElementIndex { index, order: self.order })
        }
    }

    /// The element a + 0·t + ... for a in F_p.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u8)
    }

    /// Coefficient vector of length 2e in the polynomial basis.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let deg = 2 * self.e as usize;
        let mut v = a.index();
        (0..deg)
            .map(|_| {
                let c = (v % self.p as usize) as u32;
                v /= self.p as usize;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != 2 * self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidCoefficients);
        }
        let idx = coeffs.iter().rev().fold(0usize, |acc, &d| acc * self.p as usize + d as usize);
        Ok(FieldElement(idx as u8))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.index() * self.order + b.index()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElement(self.inv[a.index()]))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Power with a possibly negative exponent; negative powers of zero fail.
    pub fn pow_signed(&self, a: FieldElement, k: i64) -> Result<FieldElement> {
        if k >= 0 {
            Ok(self.pow(a, k as u64))
        } else {
            Ok(self.pow(self.inv(a)?, k.unsigned_abs()))
        }
    }

    /// a ↦ a^q.
    #[inline]
    pub fn frobenius_q(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.frob[a.index()])
    }

    /// a + a^q, which lies in F_q.
    pub fn trace_to_fq(&self, a: FieldElement) -> FieldElement {
        self.add(a, self.frobenius_q(a))
    }

    /// a^{q+1}, which lies in F_q.
    pub fn norm_to_fq(&self, a: FieldElement) -> FieldElement {
        self.mul(a, self.frobenius_q(a))
    }

    pub fn is_in_subfield(&self, a: FieldElement) -> bool {
        self.frobenius_q(a) == a
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> usize {
        if a.is_zero() {
            return 0;
        }
        let mut k = 1;
        let mut x = a;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub(crate) fn add_table(&self) -> &[u8] {
        &self.add
    }

    pub(crate) fn mul_table(&self) -> &[u8] {
        &self.mul
    }

    pub(crate) fn neg_table(&self) -> &[u8] {
        &self.neg
    }

    pub(crate) fn inv_table(&self) -> &[u8] {
        &self.inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_rejections() {
        assert_eq!(make_field(2).unwrap().order(), 4);
        assert_eq!(make_field(8).unwrap().order(), 64);
        assert!(matches!(make_field(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(make_field(1), Err(Error::NotPrimePower(1))));
        assert!(matches!(make_field(25), Err(Error::UnsupportedQ(25))));
    }

    #[test]
    fn modulus_is_smallest_irreducible() {
        // x^2 + x + 1 over F_2, x^2 + 1 over F_3.
        assert_eq!(make_field(2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(3).unwrap().modulus(), &[1, 0, 1]);
        for q in [4, 5, 7, 8, 9] {
            let f = make_field(q).unwrap();
            let p = f.characteristic();
            let deg = f.modulus().len() - 1;
            assert!(poly::is_irreducible(f.modulus(), p));
            let code = f.modulus()[..deg].iter().rev().fold(0u64, |a, &c| a * p as u64 + c as u64);
            for smaller in 0..code {
                assert!(!poly::is_irreducible(&poly::monic_from_code(smaller, deg, p), p));
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = make_field(q).unwrap();
            let g = f.generator();
            let n = f.order() as u64 - 1;
            assert_eq!(f.pow(g, n), FieldElement::ONE);
            for d in 1..n {
                if n % d == 0 {
                    assert_ne!(f.pow(g, d), FieldElement::ONE);
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_subfield() {
        let f = make_field(4).unwrap();
        assert_eq!(f.frobenius_q(FieldElement::ZERO), FieldElement::ZERO);
        assert_eq!(f.subfield_elements().len(), 4);
        let f = make_field(3).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius_q(f.frobenius_q(a)), a);
            assert_eq!(f.frobenius_q(a), f.pow(a, 3));
        }
    }

    #[test]
    fn trace_fibers_have_q_elements() {
        let f = make_field(3).unwrap();
        for t in f.subfield_elements() {
            assert_eq!(f.elements().filter(|&y| f.trace_to_fq(y) == t).count(), 3);
        }
        assert_eq!(f.norm_to_fq(FieldElement::ZERO), FieldElement::ZERO);
        for a in f.elements() {
            assert!(f.is_in_subfield(f.trace_to_fq(a)));
            assert!(f.is_in_subfield(f.norm_to_fq(a)));
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = make_field(4).unwrap();
        assert!(matches!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero)));
        for a in f.nonzero_elements() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        }
    }

    #[test]
    fn coefficient_round_trip() {
        let f = make_field(9).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        }
        assert!(f.from_coeffs(&[3, 0, 0, 0]).is_err());
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
    }
}
