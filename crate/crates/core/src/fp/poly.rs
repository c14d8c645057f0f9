//! Univariate polynomials over GF(p), coefficients low degree first.
//!
//! Only what the module decomposition needs: gcd arithmetic, minimal
//! polynomials of matrices, radicals, and a Berlekamp splitting step.

use super::{add_mod, inv_mod, mul_mod, sub_mod, Echelon, FpMatrix};
use crate::fp::echelon::SpanTracker;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(p: u32, mut coeffs: Vec<u32>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut f = Self { p, coeffs };
        f.trim();
        f
    }

    pub fn zero(p: u32) -> Self {
        Self { p, coeffs: vec![] }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u32, c: u32) -> Self {
        Self::new(p, vec![c])
    }

    /// The monomial `x`.
    pub fn x(p: u32) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0 as well, check `is_zero`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> u32 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p);
        Self::new(
            self.p,
            self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                add_mod(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *o.coeffs.get(i).unwrap_or(&0),
                    self.p,
                )
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                sub_mod(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *o.coeffs.get(i).unwrap_or(&0),
                    self.p,
                )
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut c = vec![0u32; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = add_mod(c[i + j], mul_mod(a, b, self.p), self.p);
            }
        }
        Self::new(self.p, c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Self::zero(p), self.clone());
        }
        let dl = d.coeffs.len();
        let inv = inv_mod(d.lead(), p);
        let mut quot = vec![0u32; rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dl - 1], inv, p);
            quot[k] = c;
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = sub_mod(rem[k + j], mul_mod(c, dc, p), p);
                }
            }
        }
        rem.truncate(dl - 1);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        self.mul(o).div_exact(&self.gcd(o)).monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64 % self.p as u64) as u32, self.p))
            .collect();
        Self::new(self.p, c)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// For `f = g(x^p)` returns `h` with `h^p = f` (Frobenius is the identity
    /// on GF(p) coefficients).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let c = self.coeffs.iter().step_by(p).copied().collect();
        Self::new(self.p, c)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Self {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.is_constant() {
            return Self::one(self.p);
        }
        let df = f.derivative();
        if df.is_zero() {
            return f.pth_root().radical();
        }
        let c = f.gcd(&df);
        let w = f.div_exact(&c);
        // Strip from c everything that w already accounts for; what is left
        // has only factors of multiplicity divisible by p.
        let mut rest = c;
        loop {
            let g = rest.gcd(&w);
            if g.is_constant() {
                break;
            }
            rest = rest.div_exact(&g);
        }
        if rest.is_constant() {
            w.monic()
        } else {
            w.mul(&rest.radical()).monic()
        }
    }

    /// Berlekamp: for a monic squarefree `f`, returns a proper monic factor
    /// or `None` when `f` is irreducible.
    pub fn berlekamp_factor(&self) -> Option<Self> {
        let f = self.monic();
        let n = f.degree();
        if n <= 1 {
            return None;
        }
        let p = self.p;
        // Rows of Q: x^{ip} mod f.
        let xp = Self::x(p).pow_mod(p as u64, &f);
        let mut rows = Vec::with_capacity(n);
        let mut cur = Self::one(p);
        for _ in 0..n {
            let mut r = cur.coeffs.clone();
            r.resize(n, 0);
            rows.push(r);
            cur = cur.mul(&xp).rem(&f);
        }
        let mut q = FpMatrix::from_rows(p, n, &rows);
        for i in 0..n {
            let v = sub_mod(q.get(i, i), 1, p);
            q.set(i, i, v);
        }
        // v (as row vector) with v (Q - I) = 0
        let kernel = q.left_nullspace();
        if kernel.rows() <= 1 {
            return None;
        }
        for r in 0..kernel.rows() {
            let v = Self::new(p, kernel.row(r).to_vec());
            if v.is_constant() {
                continue;
            }
            for s in 0..p {
                let g = f.gcd(&v.sub(&Self::constant(p, s)));
                if !g.is_constant() && g.degree() < n {
                    return Some(g);
                }
            }
        }
        unreachable!("Berlekamp subalgebra of dimension > 1 always splits");
    }

    /// True iff `self` is irreducible over GF(p).
    pub fn is_irreducible(&self) -> bool {
        if self.is_zero() || self.is_constant() {
            return false;
        }
        let f = self.monic();
        f.radical() == f && f.berlekamp_factor().is_none()
    }

    /// Splits `self = a * b` into coprime non-constant monic parts, if the
    /// polynomial has at least two distinct irreducible factors.
    pub fn coprime_split(&self) -> Option<(Self, Self)> {
        let rad = self.radical();
        let g = rad.berlekamp_factor()?;
        let mut a = Self::one(self.p);
        let mut t = self.monic();
        loop {
            let d = t.gcd(&g);
            if d.is_constant() {
                break;
            }
            a = a.mul(&d);
            t = t.div_exact(&d);
        }
        debug_assert!(!a.is_constant() && !t.is_constant());
        Some((a.monic(), t.monic()))
    }

    /// Evaluates the polynomial at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &FpMatrix) -> FpMatrix {
        let n = a.rows();
        let mut acc = FpMatrix::zeros(self.p, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            if c != 0 {
                acc.add_scaled(c, &FpMatrix::identity(self.p, n));
            }
        }
        acc
    }

    /// Evaluates at an element of an abstract algebra given by a
    /// multiplication closure, an identity and an addition.
    pub fn eval_with<T: Clone>(
        &self,
        x: &T,
        one: &T,
        zero: &T,
        mul: impl Fn(&T, &T) -> T,
        axpy: impl Fn(&mut T, u32, &T),
    ) -> T {
        let mut acc = zero.clone();
        for &c in self.coeffs.iter().rev() {
            acc = mul(&acc, x);
            if c != 0 {
                axpy(&mut acc, c, one);
            }
        }
        acc
    }
}

/// Minimal polynomial of a square matrix: the lcm of the local minimal
/// polynomials of enough standard basis vectors to cover the space.
pub fn minimal_polynomial(a: &FpMatrix) -> Poly {
    assert!(a.is_square());
    let p = a.prime();
    let n = a.rows();
    let mut mu = Poly::one(p);
    let mut covered = Echelon::new(p, n);
    for i in 0..n {
        if covered.is_full() {
            break;
        }
        let mut e = vec![0u32; n];
        e[i] = 1;
        if covered.contains(&e) {
            continue;
        }
        let mut krylov = SpanTracker::new(p, n);
        let mut v = e;
        loop {
            let red = krylov.reduce(&v);
            if red.remainder.iter().all(|&x| x == 0) {
                // v = A^d e = sum c_k A^k e  =>  x^d - sum c_k x^k
                let mut c: Vec<u32> = red.combination.iter().map(|&c| (p - c) % p).collect();
                c.push(1);
                mu = mu.lcm(&Poly::new(p, c));
                break;
            }
            krylov.insert(&v);
            covered.insert(v.clone());
            v = a.mul_vec(&v);
        }
    }
    mu
}

/// Minimal polynomial of an element of an abstract finite-dimensional
/// algebra whose elements are coordinate vectors; `mul_by` multiplies a
/// vector by the element.
pub fn minimal_polynomial_in_algebra(
    p: u32,
    one: &[u32],
    mul_by: impl Fn(&[u32]) -> Vec<u32>,
) -> Poly {
    let mut krylov = SpanTracker::new(p, one.len());
    let mut v = one.to_vec();
    loop {
        let red = krylov.reduce(&v);
        if red.remainder.iter().all(|&x| x == 0) {
            let mut c: Vec<u32> = red.combination.iter().map(|&c| (p - c) % p).collect();
            c.push(1);
            return Poly::new(p, c);
        }
        krylov.insert(&v);
        v = mul_by(&v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u32, c: &[u32]) -> Poly {
        Poly::new(p, c.to_vec())
    }

    #[test]
    fn div_rem_identity() {
        let p = 7;
        let a = poly(p, &[3, 0, 5, 1, 2]);
        let b = poly(p, &[1, 4, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree() || r.is_zero());
    }

    #[test]
    fn radical_of_powers() {
        let p = 2;
        // (x+1)^4 (x^2+x+1)
        let f = poly(p, &[1, 1]).pow_mod(4, &poly(p, &[0, 0, 0, 0, 0, 0, 0, 1]));
        let g = f.mul(&poly(p, &[1, 1, 1]));
        assert_eq!(g.radical(), poly(p, &[1, 1]).mul(&poly(p, &[1, 1, 1])));
        // x^3 over GF(3): f' = 0
        assert_eq!(poly(3, &[0, 0, 0, 1]).radical(), poly(3, &[0, 1]));
    }

    #[test]
    fn irreducibility_over_gf2_matches_enumeration() {
        // Brute force: a degree <= 4 polynomial over GF(2) is irreducible iff
        // no polynomial of degree 1..=deg/2 divides it.
        let p = 2;
        for bits in 2u32..32 {
            let c: Vec<u32> = (0..5).map(|i| (bits >> i) & 1).collect();
            let f = poly(p, &c);
            if f.is_constant() {
                continue;
            }
            let d = f.degree();
            let mut reducible = false;
            for gb in 2u32..(1 << (d / 2 + 1)) {
                let g = poly(p, &(0..5).map(|i| (gb >> i) & 1).collect::<Vec<_>>());
                if !g.is_constant() && g.degree() <= d / 2 && f.rem(&g).is_zero() {
                    reducible = true;
                }
            }
            assert_eq!(f.is_irreducible(), !reducible, "{f:?}");
        }
    }

    #[test]
    fn coprime_split_separates_factors() {
        let p = 3;
        let a = poly(p, &[1, 1]).mul(&poly(p, &[1, 1])); // (x+1)^2
        let b = poly(p, &[1, 0, 1]); // x^2+1 irreducible mod 3
        let (u, v) = a.mul(&b).coprime_split().unwrap();
        assert_eq!(u.mul(&v), a.mul(&b).monic());
        assert!(u.gcd(&v).is_constant());
        assert!(a.coprime_split().is_none());
    }

    #[test]
    fn minimal_polynomial_kills_matrix() {
        let p = 5;
        let a = FpMatrix::from_rows(
            p,
            4,
            &[
                vec![2, 1, 0, 0],
                vec![0, 2, 0, 0],
                vec![0, 0, 2, 0],
                vec![0, 0, 0, 3],
            ],
        );
        let mu = minimal_polynomial(&a);
        // (x-2)^2 (x-3)
        let expect = poly(p, &[3, 1]).mul(&poly(p, &[3, 1])).mul(&poly(p, &[2, 1]));
        assert_eq!(mu, expect);
        assert!(mu.eval_matrix(&a).is_zero());
    }
}
