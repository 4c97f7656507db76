//! Dense polynomials over F_p, coefficients low degree first.
//!
//! Only what the Frobenius scanner needs: reduction of integer polynomials,
//! gcd, modular exponentiation of x, and distinct-degree factorization.
//! Products go through `u128`, so any prime below 2^63 works.

use crate::primes::{mul_mod, pow_mod};

/// A polynomial over F_p with no trailing zero coefficients; the zero
/// polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        coeffs.iter_mut().for_each(|c| *c %= p);
        let mut poly = PolyFp { p, coeffs };
        poly.trim();
        poly
    }

    /// Reduces an integer polynomial mod p.
    pub fn from_integers(coeffs: &[i64], p: u64) -> Self {
        let reduced = coeffs
            .iter()
            .map(|&c| (c as i128).rem_euclid(p as i128) as u64)
            .collect();
        PolyFp::new(p, reduced)
    }

    pub fn x(p: u64) -> Self {
        PolyFp::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial at `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn sub(&self, other: &PolyFp) -> PolyFp {
        let p = self.p;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                if a >= b {
                    a - b
                } else {
                    a + (p - b)
                }
            })
            .collect();
        PolyFp::new(p, coeffs)
    }

    pub fn mul(&self, other: &PolyFp) -> PolyFp {
        if self.is_zero() || other.is_zero() {
            return PolyFp::new(self.p, Vec::new());
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        PolyFp::new(p, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &PolyFp) -> (PolyFp, PolyFp) {
        let p = self.p;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = self.inv(divisor.lead());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyFp::new(p, Vec::new()), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dd], inv_lead, p);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let t = mul_mod(c, d, p);
                rem[k + i] = (rem[k + i] + p - t) % p;
            }
        }
        rem.truncate(dd);
        (PolyFp::new(p, quot), PolyFp::new(p, rem))
    }

    pub fn rem(&self, divisor: &PolyFp) -> PolyFp {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> PolyFp {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.inv(self.lead());
        PolyFp::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&c| mul_mod(c, inv, self.p))
                .collect(),
        )
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &PolyFp) -> PolyFp {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> PolyFp {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect();
        PolyFp::new(p, coeffs)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &PolyFp) -> PolyFp {
        let mut base = self.rem(m);
        let mut acc = PolyFp::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

/// Factor degrees of a polynomial mod p, or the fact that it has a
/// repeated factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreePattern {
    /// Degrees of the irreducible factors, non-increasing.
    Squarefree(Vec<u32>),
    NotSquarefree,
}

/// Distinct-degree factorization of a monic integer polynomial mod p.
///
/// Returns `None` if f vanishes mod p or has degree < 1 there.
pub fn degree_pattern(coeffs: &[i64], p: u64) -> Option<DegreePattern> {
    let f = PolyFp::from_integers(coeffs, p);
    if f.degree().unwrap_or(0) == 0 {
        return None;
    }
    if !f.is_squarefree() {
        return Some(DegreePattern::NotSquarefree);
    }
    let x = PolyFp::x(p);
    let mut rest = f.monic();
    let mut frob = x.clone();
    let mut degrees = Vec::new();
    let mut d = 1u32;
    while let Some(deg) = rest.degree() {
        if deg < 2 * d as usize {
            if deg > 0 {
                degrees.push(deg as u32);
            }
            break;
        }
        // frob = x^(p^d) mod f
        frob = frob.pow_mod(p, &f);
        let g = rest.gcd(&frob.sub(&x));
        let gd = g.degree().unwrap_or(0);
        if gd > 0 {
            degrees.extend(std::iter::repeat_n(d, gd / d as usize));
            rest = rest.div_rem(&g).0;
        }
        d += 1;
    }
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    Some(DegreePattern::Squarefree(degrees))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[u64]) -> PolyFp {
        PolyFp::new(p, c.to_vec())
    }

    #[test]
    fn division_identity() {
        let p = 13;
        let a = poly(p, &[3, 0, 7, 1, 5, 2]);
        let b = poly(p, &[1, 4, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).sub(&a.sub(&r)), poly(p, &[]));
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_and_squarefree() {
        let p = 7;
        // (x+1)^2 (x+2)
        let f = poly(p, &[1, 1])
            .mul(&poly(p, &[1, 1]))
            .mul(&poly(p, &[2, 1]));
        assert!(!f.is_squarefree());
        assert_eq!(f.gcd(&f.derivative()), poly(p, &[1, 1]));
        assert!(poly(p, &[1, 0, 1]).is_squarefree());
    }

    #[test]
    fn fermat_for_x() {
        for p in [2u64, 3, 5, 101, (1 << 61) - 1] {
            let m = poly(p, &[3 % p, 1, 0, 0, 1]);
            let lhs = PolyFp::x(p).pow_mod(p, &m);
            let rhs = PolyFp::x(p)
                .pow_mod(1, &m)
                .mul(&PolyFp::x(p).pow_mod(p - 1, &m))
                .rem(&m);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn examples() {
        let f = [-1, -1, 0, 1];
        assert_eq!(
            degree_pattern(&f, 2),
            Some(DegreePattern::Squarefree(vec![3]))
        );
        assert_eq!(
            degree_pattern(&f, 5),
            Some(DegreePattern::Squarefree(vec![2, 1]))
        );
        assert_eq!(degree_pattern(&f, 23), Some(DegreePattern::NotSquarefree));
        assert_eq!(degree_pattern(&[0, 0, 0], 3), None);
    }

    #[test]
    fn large_prime() {
        // x^2 + 1 splits iff p = 1 mod 4.
        let p = (1u64 << 61) - 1; // 3 mod 4
        assert_eq!(
            degree_pattern(&[1, 0, 1], p),
            Some(DegreePattern::Squarefree(vec![2]))
        );
        let q = 4_611_686_018_427_387_847; // prime, 3 mod 4
        assert_eq!(
            degree_pattern(&[1, 0, 1], q),
            Some(DegreePattern::Squarefree(vec![2]))
        );
        let r = 1_000_000_009; // 1 mod 4
        assert_eq!(
            degree_pattern(&[1, 0, 1], r),
            Some(DegreePattern::Squarefree(vec![1, 1]))
        );
    }
}
