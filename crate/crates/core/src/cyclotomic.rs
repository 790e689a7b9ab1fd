//! Exact arithmetic in the ring of integers `Z[zeta_p]` for an odd prime `p`.
//!
//! An element is a coefficient vector of length `p` over the powers
//! `1, zeta, ..., zeta^(p-1)`. Because `1 + zeta + ... + zeta^(p-1) = 0`, the
//! representation is made unique by forcing the last coefficient to zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CyclotomicInteger {
    p: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn zero(p: u32) -> Self {
        Self {
            p,
            coeffs: vec![0; p as usize],
        }
    }

    pub fn from_int(p: u32, v: i64) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = v;
        z
    }

    /// `zeta^k`, with `k` taken mod `p`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[k.rem_euclid(p as i64) as usize] = 1;
        z.canonicalize();
        z
    }

    /// Builds from arbitrary coefficients (length `p`) and canonicalises.
    pub fn from_coeffs(p: u32, coeffs: Vec<i64>) -> Self {
        assert_eq!(coeffs.len(), p as usize, "expected {p} coefficients");
        let mut z = Self { p, coeffs };
        z.canonicalize();
        z
    }

    /// `sum_j counts[j] * zeta^j`: the value of a character sum given how
    /// often each exponent occurs.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> Self {
        Self::from_coeffs(p, counts.to_vec())
    }

    fn canonicalize(&mut self) {
        let top = self.coeffs[self.p as usize - 1];
        if top != 0 {
            for c in &mut self.coeffs {
                *c -= top;
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Canonical coefficients; the last entry is always zero.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    /// Complex value under `zeta -> exp(2 pi i / p)`.
    pub fn embed(&self) -> Complex64 {
        let p = self.p as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| Complex64::from_polar(c as f64, std::f64::consts::TAU * j as f64 / p))
            .sum()
    }

    fn check_same_ring(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing Z[zeta_p] for different p");
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn add(self, rhs: Self) -> CyclotomicInteger {
        self.check_same_ring(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicInteger::from_coeffs(self.p, coeffs)
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn sub(self, rhs: Self) -> CyclotomicInteger {
        self.check_same_ring(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CyclotomicInteger::from_coeffs(self.p, coeffs)
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, rhs: Self) -> CyclotomicInteger {
        self.check_same_ring(rhs);
        let p = self.p as usize;
        let mut out = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        CyclotomicInteger::from_coeffs(self.p, out)
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for CyclotomicInteger {
            type Output = CyclotomicInteger;

            fn $method(self, rhs: Self) -> CyclotomicInteger {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (j, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            let mag = c.unsigned_abs();
            if wrote {
                write!(f, " {sign} ")?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            match (j, mag) {
                (0, m) => write!(f, "{m}")?,
                (j, 1) => write!(f, "z^{j}")?,
                (j, m) => write!(f, "{m}*z^{j}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
