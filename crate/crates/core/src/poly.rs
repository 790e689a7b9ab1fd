//! Dense polynomials over a prime field, coefficients stored lowest degree first.
//!
//! Only what the field builder needs: reduction, gcd and modular powering.

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Remainder of `a` modulo a nonzero `b`.
pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = r[dr] * lead_inv % p;
        let shift = dr - db;
        for (i, &c) in b.iter().enumerate().take(db + 1) {
            r[i + shift] = (r[i + shift] + p - factor * c % p) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, modulus, p)
}

pub(crate) fn pow_mod_poly(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Poly {
    let mut acc = rem(&[1], modulus, p);
    let mut b = rem(base, modulus, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, modulus, p);
        }
        b = mul_mod(&b, &b, modulus, p);
        exp >>= 1;
    }
    acc
}

/// Irreducibility of a monic polynomial of degree `m`: no common factor with
/// `x^(p^d) - x` for any `d <= m / 2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = match degree(f) {
        Some(d) => d,
        None => return false,
    };
    if m <= 1 {
        return m == 1;
    }
    let x: Poly = vec![0, 1];
    let mut frob = rem(&x, f, p);
    for _ in 1..=m / 2 {
        frob = pow_mod_poly(&frob, p, f, p);
        let g = gcd(f, &sub(&frob, &x, p), p);
        if degree(&g).is_some_and(|d| d > 0) {
            return false;
        }
    }
    true
}
