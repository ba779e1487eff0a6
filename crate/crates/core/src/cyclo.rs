//! Exact arithmetic in `Q(zeta_p)` for a prime `p`.
//!
//! Character values and inner products live here; there is no floating point
//! anywhere. Elements are stored in the power basis `zeta^0, ..., zeta^(p-2)`
//! with the relation `1 + zeta + ... + zeta^(p-1) = 0` applied eagerly, so
//! equality is coefficient-wise.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::is_prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycloError {
    NonPrime(u64),
    NotRational,
    OrderMismatch { left: u64, right: u64 },
}

impl fmt::Display for CycloError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycloError::NonPrime(p) => write!(f, "{p} is not prime"),
            CycloError::NotRational => write!(f, "value is not rational"),
            CycloError::OrderMismatch { left, right } => {
                write!(f, "mixed cyclotomic orders {left} and {right}")
            }
        }
    }
}

/// An element of `Q(zeta_p)` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycNum {
    p: u64,
    /// Length p-1: coefficients of zeta^0 ... zeta^(p-2).
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero(p: u64) -> CycNum {
        CycNum {
            p,
            coeffs: vec![BigRational::zero(); (p - 1) as usize],
        }
    }

    pub fn one(p: u64) -> CycNum {
        Self::from_int(p, 1)
    }

    pub fn from_int(p: u64, v: i64) -> CycNum {
        let mut out = Self::zero(p);
        out.coeffs[0] = BigRational::from_integer(BigInt::from(v));
        out
    }

    pub fn from_rational(p: u64, v: BigRational) -> CycNum {
        let mut out = Self::zero(p);
        out.coeffs[0] = v;
        out
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        debug_assert_eq!(self.p, other.p);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNum { p: self.p, coeffs }
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        debug_assert_eq!(self.p, other.p);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycNum { p: self.p, coeffs }
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        debug_assert_eq!(self.p, other.p);
        let p = self.p as usize;
        // Convolution with exponents mod p, then one reduction of zeta^(p-1).
        let mut raw = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % p;
                raw[k] += a * b;
            }
        }
        let mut out = CycNum::zero(self.p);
        let top = raw[p - 1].clone();
        for k in 0..p - 1 {
            out.coeffs[k] = &raw[k] - &top;
        }
        out
    }

    pub fn scale(&self, v: &BigRational) -> CycNum {
        CycNum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * v).collect(),
        }
    }

    /// Exact division by a positive integer scalar.
    pub fn div_int(&self, v: u64) -> CycNum {
        let r = BigRational::from_integer(BigInt::from(v));
        CycNum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c / &r).collect(),
        }
    }

    /// Image under `zeta -> zeta^(-1)` (complex conjugation on `Q(zeta_p)`).
    pub fn conj(&self) -> CycNum {
        let p = self.p as usize;
        let mut raw = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            let k = (p - i) % p;
            raw[k] = a.clone();
        }
        let mut out = CycNum::zero(self.p);
        let top = raw[p - 1].clone();
        for k in 0..p - 1 {
            out.coeffs[k] = &raw[k] - &top;
        }
        out
    }

    /// The rational value, if the element is rational.
    pub fn as_rational(&self) -> Result<BigRational, CycloError> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(CycloError::NotRational)
        }
    }

    /// The integer value, if the element is a rational integer.
    pub fn as_integer(&self) -> Result<BigInt, CycloError> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Ok(r.to_integer())
        } else {
            Err(CycloError::NotRational)
        }
    }

    /// Whether every coefficient is a rational integer (lies in `Z[zeta_p]`).
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

/// `zeta_p^k` in canonical form.
pub fn zeta_pow(p: u64, k: i64) -> Result<CycNum, CycloError> {
    if !is_prime(p) {
        return Err(CycloError::NonPrime(p));
    }
    let k = k.rem_euclid(p as i64) as u64;
    let mut out = CycNum::zero(p);
    if k == p - 1 {
        // Forced by 1 + zeta + ... + zeta^(p-1) = 0.
        for c in out.coeffs.iter_mut() {
            *c = -BigRational::one();
        }
    } else {
        out.coeffs[k as usize] = BigRational::one();
    }
    Ok(out)
}

/// `x * conj(x)` always has a nonnegative rational trace; used as a sanity
/// check in tests.
pub fn norm_trace(x: &CycNum) -> BigRational {
    let prod = x.mul(&x.conj());
    // Trace over Q of sum a_k zeta^k is (p-1) a_0 - (a_1 + ... + a_{p-2}).
    let p = prod.p;
    let mut tr = prod.coeffs[0].clone() * BigRational::from_integer(BigInt::from(p - 1));
    for c in &prod.coeffs[1..] {
        tr -= c;
    }
    tr
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_examples() {
        // zeta_3^0 = 1.
        assert_eq!(zeta_pow(3, 0).unwrap(), CycNum::from_int(3, 1));
        // zeta_2 = -1.
        assert_eq!(zeta_pow(2, 1).unwrap(), CycNum::from_int(2, -1));
        // zeta_3^2 = -1 - zeta.
        let z2 = zeta_pow(3, 2).unwrap();
        let m1 = BigRational::from_integer(BigInt::from(-1));
        assert_eq!(z2.coeffs(), &[m1.clone(), m1]);
        assert_eq!(zeta_pow(4, 1).unwrap_err(), CycloError::NonPrime(4));
    }

    #[test]
    fn conj_examples() {
        let z = zeta_pow(3, 1).unwrap();
        assert_eq!(z.conj(), zeta_pow(3, 2).unwrap());
        let five = CycNum::from_int(5, 5);
        assert_eq!(five.conj(), five);
        // 1 + zeta_5 + zeta_5^4 is conjugation-symmetric.
        let sym = CycNum::one(5)
            .add(&zeta_pow(5, 1).unwrap())
            .add(&zeta_pow(5, 4).unwrap());
        assert_eq!(sym.conj(), sym);
        // Involution, on a random-ish combination.
        let x = zeta_pow(7, 3).unwrap().add(
            &zeta_pow(7, 5)
                .unwrap()
                .scale(&BigRational::new(BigInt::from(2), BigInt::from(3))),
        );
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn rationality() {
        // 1 + zeta_3 + zeta_3^2 = 0.
        let s = CycNum::one(3)
            .add(&zeta_pow(3, 1).unwrap())
            .add(&zeta_pow(3, 2).unwrap());
        assert_eq!(s.as_rational().unwrap(), BigRational::zero());
        // Full orbit sum vanishes for any prime.
        for p in [2u64, 3, 5, 7] {
            let mut s = CycNum::zero(p);
            for k in 0..p {
                s = s.add(&zeta_pow(p, k as i64).unwrap());
            }
            assert!(s.is_zero());
        }
        assert_eq!(
            zeta_pow(3, 1).unwrap().as_rational().unwrap_err(),
            CycloError::NotRational
        );
    }

    #[test]
    fn ring_axioms_sampled() {
        let mut rng = crate::rng::SplitMix64::new(5);
        let p = 5u64;
        let rand_elem = |rng: &mut crate::rng::SplitMix64| {
            let mut x = CycNum::zero(p);
            for _ in 0..3 {
                let k = rng.below(p) as i64;
                let num = rng.below(19) as i64 - 9;
                x = x.add(
                    &zeta_pow(p, k)
                        .unwrap()
                        .scale(&BigRational::from_integer(BigInt::from(num))),
                );
            }
            x
        };
        for _ in 0..10_000 {
            let a = rand_elem(&mut rng);
            let b = rand_elem(&mut rng);
            let c = rand_elem(&mut rng);
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert!(norm_trace(&a) >= BigRational::zero());
        }
    }

    #[test]
    fn nontrivial_character_sums_vanish() {
        // For a nontrivial additive character of F_q realized through
        // zeta_pow, the full group sum is exactly zero. Realized here
        // directly on Z/p as the base case.
        for p in [2u64, 3, 5] {
            for b in 1..p {
                let mut s = CycNum::zero(p);
                for x in 0..p {
                    s = s.add(&zeta_pow(p, (b * x) as i64).unwrap());
                }
                assert!(s.is_zero());
            }
        }
    }
}
