//! Table-driven arithmetic in GF(p^m) for odd p.
//!
//! Elements are indices in `[0, p^m)` encoding the coefficient tuple
//! `(c_0, ..., c_{m-1})` of the polynomial basis as `sum c_i p^i`. The prime
//! subfield is therefore the index range `0..p`.
//!
//! Construction is deterministic: the modulus is the lexicographically
//! smallest monic irreducible polynomial by `(c_0, ..., c_{m-1})` and the
//! primitive element is the smallest index generating the multiplicative group.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly;

/// Largest field order we are willing to tabulate.
pub const MAX_ORDER: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FieldParams {
    pub p: u32,
    pub m: u32,
    pub r: u32,
}

impl FieldParams {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenPrime);
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if m == 0 {
            return Err(Error::DegreeTooSmall { m, min: 1 });
        }
        let r = p
            .checked_pow(m)
            .filter(|&r| r <= MAX_ORDER)
            .ok_or(Error::Overflow { p, m })?;
        Ok(Self {
            p: p as u32,
            m,
            r: r as u32,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A fully materialised finite field. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldContext {
    params: FieldParams,
    modulus: Vec<u32>,
    alpha: FieldElement,
    exp_table: Vec<u32>,
    log_table: Vec<u32>,
    trace_table: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

impl FieldContext {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        let params = FieldParams::new(p, m)?;
        let p = params.p as u64;
        let m = params.m as usize;
        let r = params.r as u64;

        let modulus = smallest_irreducible(p, m);
        let order = r - 1;
        let factors = prime_factors(order);
        let alpha_idx = (1..r)
            .find(|&idx| {
                let g = to_poly(idx, p, m);
                factors.iter().all(|&q| {
                    let h = poly::pow_mod_poly(&g, order / q, &modulus, p);
                    h != [1]
                })
            })
            .expect("a finite field always has a primitive element");

        let alpha_poly = to_poly(alpha_idx, p, m);
        let mut exp_table = Vec::with_capacity(order as usize);
        let mut log_table = vec![NO_LOG; r as usize];
        let mut cur: poly::Poly = vec![1];
        for k in 0..order {
            let idx = from_poly(&cur, p);
            debug_assert_eq!(log_table[idx as usize], NO_LOG);
            exp_table.push(idx as u32);
            log_table[idx as usize] = k as u32;
            cur = poly::mul_mod(&cur, &alpha_poly, &modulus, p);
        }

        let mut ctx = Self {
            params,
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            alpha: FieldElement(alpha_idx as u32),
            exp_table,
            log_table,
            trace_table: Vec::new(),
        };

        // Tr is F_p-linear, so the traces of the basis monomials determine it.
        let basis_traces: Vec<u64> = (0..m)
            .map(|j| {
                let xj = FieldElement(p.pow(j as u32) as u32);
                let t = ctx.frobenius_trace(xj);
                assert!(t.0 < params.p, "trace escaped the prime subfield");
                t.0 as u64
            })
            .collect();
        ctx.trace_table = (0..r)
            .map(|mut idx| {
                let mut t = 0u64;
                for &bt in &basis_traces {
                    t += (idx % p) * bt;
                    idx /= p;
                }
                (t % p) as u32
            })
            .collect();
        Ok(ctx)
    }

    /// `sum_{i<m} x^(p^i)` evaluated directly with field operations.
    pub fn frobenius_trace(&self, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut power = x;
        for _ in 0..self.params.m {
            acc = self.add(acc, power);
            power = self.pow(power, self.params.p as u64);
        }
        acc
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn p(&self) -> u32 {
        self.params.p
    }

    pub fn m(&self) -> u32 {
        self.params.m
    }

    pub fn order(&self) -> u32 {
        self.params.r
    }

    /// Monic modulus coefficients, lowest degree first (length `m + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp_table
    }

    pub fn trace_table(&self) -> &[u32] {
        &self.trace_table
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index < self.params.r as u64 {
            Ok(FieldElement(index as u32))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                order: self.params.r as u64,
            })
        }
    }

    /// Embeds `v mod p` into the field.
    pub fn prime_element(&self, v: u64) -> FieldElement {
        FieldElement((v % self.params.p as u64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.params.r).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.params.r).map(FieldElement)
    }

    /// Coefficients `(c_0, ..., c_{m-1})` of `x` in the polynomial basis.
    pub fn coefficients(&self, x: FieldElement) -> Vec<u32> {
        let p = self.params.p;
        let mut idx = x.0;
        (0..self.params.m)
            .map(|_| {
                let c = idx % p;
                idx /= p;
                c
            })
            .collect()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.digitwise(a, b, |x, y, p| (x + y) % p)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.digitwise(a, b, |x, y, p| (x + p - y) % p)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.sub(FieldElement::ZERO, a)
    }

    fn digitwise(
        &self,
        a: FieldElement,
        b: FieldElement,
        op: impl Fn(u32, u32, u32) -> u32,
    ) -> FieldElement {
        let p = self.params.p;
        if self.params.m == 1 {
            return FieldElement(op(a.0, b.0, p));
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.params.m {
            out += op(x % p, y % p, p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let order = self.exp_table.len() as u64;
        let k = (self.log_table[a.0 as usize] as u64 + self.log_table[b.0 as usize] as u64) % order;
        FieldElement(self.exp_table[k as usize])
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = self.exp_table.len() as u32;
        let k = (order - self.log_table[a.0 as usize]) % order;
        Ok(FieldElement(self.exp_table[k as usize]))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let order = self.exp_table.len() as u64;
        let k = (self.log_table[a.0 as usize] as u64 * (e % order)) % order;
        FieldElement(self.exp_table[k as usize])
    }

    /// Discrete logarithm to base `alpha`; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() {
            None
        } else {
            Some(self.log_table[a.0 as usize])
        }
    }

    /// `alpha^k`.
    pub fn exp(&self, k: u64) -> FieldElement {
        let order = self.exp_table.len() as u64;
        FieldElement(self.exp_table[(k % order) as usize])
    }

    /// Absolute trace onto the prime field, as a value in `0..p`.
    pub fn trace(&self, x: FieldElement) -> u32 {
        self.trace_table[x.0 as usize]
    }

    /// Quadratic character of the field, with the value 0 at 0.
    pub fn quadratic_char(&self, x: FieldElement) -> i64 {
        match self.log(x) {
            None => 0,
            Some(k) if k % 2 == 0 => 1,
            Some(_) => -1,
        }
    }

    /// Legendre symbol of a prime-field value.
    pub fn prime_quadratic_char(&self, v: u32) -> i64 {
        legendre_symbol(v as u64, self.params.p as u64)
    }

    /// The coset `alpha^i <alpha^n>` of the index-`n` subgroup.
    pub fn cyclotomic_class(&self, n: u64, i: u64) -> Result<Vec<FieldElement>> {
        let order = self.exp_table.len() as u64;
        if n <= 1 || !order.is_multiple_of(n) {
            return Err(Error::BadDivisor { n, order });
        }
        if i >= n {
            return Err(Error::BadClassIndex { index: i, n });
        }
        Ok((0..order / n).map(|k| self.exp(i + n * k)).collect())
    }

    /// Polynomial string for the modulus, e.g. `x^2 + 1`.
    pub fn modulus_string(&self) -> String {
        poly_to_string(&self.modulus)
    }

    /// Polynomial-basis string for an element, e.g. `x + 1`.
    pub fn element_string(&self, x: FieldElement) -> String {
        poly_to_string(&self.coefficients(x))
    }
}

fn poly_to_string(coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn to_poly(mut idx: u64, p: u64, m: usize) -> poly::Poly {
    let mut c = Vec::with_capacity(m);
    for _ in 0..m {
        c.push(idx % p);
        idx /= p;
    }
    poly::trim(c)
}

fn from_poly(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// First monic irreducible of degree `m` in lexicographic order of
/// `(c_0, ..., c_{m-1})`.
fn smallest_irreducible(p: u64, m: usize) -> poly::Poly {
    let mut coeffs = vec![0u64; m];
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
        // c_{m-1} varies fastest
        let mut pos = m;
        loop {
            assert!(
                pos > 0,
                "no irreducible polynomial of degree {m} over F_{p}"
            );
            pos -= 1;
            coeffs[pos] += 1;
            if coeffs[pos] < p {
                break;
            }
            coeffs[pos] = 0;
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Legendre symbol `(v / p)` by Euler's criterion.
pub fn legendre_symbol(v: u64, p: u64) -> i64 {
    let v = v % p;
    if v == 0 {
        return 0;
    }
    match poly::pow_mod(v, (p - 1) / 2, p) {
        1 => 1,
        x if x == p - 1 => -1,
        x => unreachable!("Euler criterion gave {x} mod {p}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldContext::new(2, 3).unwrap_err(), Error::EvenPrime);
        assert_eq!(FieldContext::new(9, 2).unwrap_err(), Error::NonPrime(9));
        assert_eq!(FieldContext::new(1, 2).unwrap_err(), Error::NonPrime(1));
        assert!(matches!(
            FieldContext::new(3, 40).unwrap_err(),
            Error::Overflow { .. }
        ));
        assert!(matches!(
            FieldContext::new(3, 0).unwrap_err(),
            Error::DegreeTooSmall { .. }
        ));
    }

    #[test]
    fn prime_field_gf3() {
        let f = FieldContext::new(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.alpha().index(), 2);
        assert_eq!(f.trace(f.prime_element(2)), 2);
    }

    #[test]
    fn gf9_structure() {
        let f = FieldContext::new(3, 2).unwrap();
        // x^2 + 1 is the first irreducible in (c0, c1) order
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.modulus_string(), "x^2 + 1");
        // x has order 4, x + 1 (index 4) is the first generator
        assert_eq!(f.alpha().index(), 4);
        let squares = f
            .nonzero_elements()
            .filter(|&x| f.quadratic_char(x) == 1)
            .count();
        assert_eq!(squares, 4);
        let kernel = f.elements().filter(|&x| f.trace(x) == 0).count();
        assert_eq!(kernel, 3);
    }

    #[test]
    fn gf125_trace_kernel() {
        let f = FieldContext::new(5, 3).unwrap();
        assert_eq!(f.elements().filter(|&x| f.trace(x) == 0).count(), 25);
    }

    #[test]
    fn trace_of_one_is_m() {
        for (p, m) in [(3, 2), (3, 4), (5, 3), (7, 2), (3, 3)] {
            let f = FieldContext::new(p, m).unwrap();
            assert_eq!(f.trace(FieldElement::ONE) as u64, m as u64 % p);
            assert_eq!(f.trace(FieldElement::ZERO), 0);
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = FieldContext::new(5, 2).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn alpha_has_full_order() {
        for (p, m) in [(3, 1), (3, 2), (3, 4), (5, 3), (7, 3)] {
            let f = FieldContext::new(p, m).unwrap();
            let order = f.order() as u64 - 1;
            // repeated multiplication
            let mut acc = FieldElement::ONE;
            for k in 1..=order {
                acc = f.mul(acc, f.alpha());
                if k < order {
                    assert_ne!(acc, FieldElement::ONE, "alpha^{k} = 1");
                }
            }
            assert_eq!(acc, FieldElement::ONE);
            assert_eq!(f.pow(f.alpha(), order), FieldElement::ONE);
        }
    }

    #[test]
    fn smallest_alpha_is_minimal_generator() {
        let f = FieldContext::new(5, 2).unwrap();
        let order = f.order() as u64 - 1;
        let generates = |g: FieldElement| {
            let mut seen = std::collections::HashSet::new();
            let mut acc = FieldElement::ONE;
            for _ in 0..order {
                seen.insert(acc);
                acc = f.mul(acc, g);
            }
            seen.len() as u64 == order
        };
        let first = f.nonzero_elements().find(|&g| generates(g)).unwrap();
        assert_eq!(first, f.alpha());
    }

    #[test]
    fn cyclotomic_classes() {
        let f = FieldContext::new(3, 2).unwrap();
        let squares: Vec<_> = f
            .nonzero_elements()
            .filter(|&x| f.quadratic_char(x) == 1)
            .collect();
        let mut c0 = f.cyclotomic_class(2, 0).unwrap();
        c0.sort();
        assert_eq!(c0, squares);
        assert_eq!(f.cyclotomic_class(8, 3).unwrap(), vec![f.pow(f.alpha(), 3)]);
        assert!(matches!(
            f.cyclotomic_class(3, 0),
            Err(Error::BadDivisor { .. })
        ));
        assert!(matches!(
            f.cyclotomic_class(1, 0),
            Err(Error::BadDivisor { .. })
        ));
        assert!(matches!(
            f.cyclotomic_class(4, 4),
            Err(Error::BadClassIndex { .. })
        ));

        let g = FieldContext::new(5, 2).unwrap();
        let a = g.cyclotomic_class(2, 0).unwrap();
        let b = g.cyclotomic_class(2, 1).unwrap();
        let mut all: Vec<_> = a.iter().chain(b.iter()).copied().collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 24);
        assert!(a.iter().all(|x| !b.contains(x)));
    }

    #[test]
    fn quadratic_character_values() {
        let f = FieldContext::new(3, 2).unwrap();
        assert_eq!(f.quadratic_char(FieldElement::ONE), 1);
        assert_eq!(f.quadratic_char(f.alpha()), -1);
        assert_eq!(f.quadratic_char(FieldElement::ZERO), 0);
        // prime subfield elements are squares in an even-degree extension
        assert_eq!(f.quadratic_char(f.prime_element(1)), 1);
        assert_eq!(f.quadratic_char(f.prime_element(2)), 1);
    }

    #[test]
    fn legendre_matches_square_enumeration() {
        for p in [3u64, 5, 7, 11, 13] {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for v in 1..p {
                let expected = if squares.contains(&v) { 1 } else { -1 };
                assert_eq!(legendre_symbol(v, p), expected);
            }
            assert_eq!(legendre_symbol(0, p), 0);
        }
    }

    #[test]
    fn element_strings() {
        let f = FieldContext::new(3, 2).unwrap();
        assert_eq!(f.element_string(f.alpha()), "x + 1");
        assert_eq!(f.element_string(FieldElement::ZERO), "0");
        assert_eq!(f.element_string(FieldElement(7)), "2x + 1");
    }
}
