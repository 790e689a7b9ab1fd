//! Counting identities over GF(p^m), each evaluated in closed form and by
//! exhaustive enumeration.

use serde::Serialize;

use crate::charsum::{gaussian_period_closed_n2, SumPair};
use crate::cyclotomic::CyclotomicInteger;
use crate::error::{Error, Result};
use crate::field::{legendre_symbol, FieldContext, FieldElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountPair {
    pub closed: i64,
    pub brute: i64,
    pub matched: bool,
}

impl CountPair {
    pub fn new(closed: i64, brute: i64) -> Self {
        Self {
            closed,
            brute,
            matched: closed == brute,
        }
    }
}

fn ipow(p: u32, e: u32) -> i64 {
    (p as i64).pow(e)
}

/// `(-1)^(((p-1)/2) * k)`: `-1` only when `p = 3 (mod 4)` and `k` is odd.
fn quarter_sign(p: u32, k: u32) -> i64 {
    if p % 4 == 3 && k % 2 == 1 {
        -1
    } else {
        1
    }
}

fn exact_div(num: i64, den: i64) -> i64 {
    assert_eq!(num % den, 0, "{num} is not divisible by {den}");
    num / den
}

fn check_sign(i: i64) -> Result<()> {
    if i == 1 || i == -1 {
        Ok(())
    } else {
        Err(Error::BadSign(i))
    }
}

fn check_prime_value(ctx: &FieldContext, v: u32) -> Result<()> {
    if v < ctx.p() {
        Ok(())
    } else {
        Err(Error::PrimeValueOutOfRange {
            value: v as u64,
            p: ctx.p() as u64,
        })
    }
}

fn check_a_rho(ctx: &FieldContext, a: FieldElement, rho: u32) -> Result<()> {
    check_prime_value(ctx, rho)?;
    if a.is_zero() {
        return Err(Error::ZeroA);
    }
    if rho == 0 {
        return Err(Error::ZeroRho);
    }
    Ok(())
}

/// `Tr(a^{-1})` for nonzero `a`.
fn trace_of_inverse(ctx: &FieldContext, a: FieldElement) -> u32 {
    ctx.trace(ctx.inv(a).expect("nonzero"))
}

/// `#{a in F_r : Tr(a^2) = c}` in closed form.
pub fn t_c_closed(p: u32, m: u32, c: u32) -> i64 {
    let base = ipow(p, m - 1);
    let eta_c = legendre_symbol(c as u64, p as u64);
    match (m % 2 == 1, c == 0) {
        (true, true) => base,
        (true, false) => base + eta_c * quarter_sign(p, (m - 1) / 2) * ipow(p, (m - 1) / 2),
        (false, true) => base - quarter_sign(p, m / 2) * (p as i64 - 1) * ipow(p, (m - 2) / 2),
        (false, false) => base + quarter_sign(p, m / 2) * ipow(p, (m - 2) / 2),
    }
}

pub fn t_c(ctx: &FieldContext, c: u32) -> Result<CountPair> {
    check_prime_value(ctx, c)?;
    let brute = ctx
        .elements()
        .filter(|&a| ctx.trace(ctx.square(a)) == c)
        .count() as i64;
    Ok(CountPair::new(t_c_closed(ctx.p(), ctx.m(), c), brute))
}

/// `sum_{z != 0} sum_y sum_x zeta^(Tr(a z x^2 + y x) - z rho)` in closed form;
/// always a rational integer.
pub fn triple_char_sum_closed(ctx: &FieldContext, a: FieldElement, rho: u32) -> i64 {
    let (p, m) = (ctx.p(), ctx.m());
    let eta_a = ctx.quadratic_char(a);
    let eta_rho = ctx.prime_quadratic_char(rho);
    let t = trace_of_inverse(ctx, a);
    let eta_t = ctx.prime_quadratic_char(t);
    match (m % 2 == 0, t == 0) {
        (true, true) => quarter_sign(p, m / 2) * eta_a * ipow(p, (m + 2) / 2),
        (true, false) => {
            -quarter_sign(p, (m + 2) / 2) * eta_a * eta_t * eta_rho * ipow(p, (m + 2) / 2)
        }
        (false, true) => quarter_sign(p, (m - 1) / 2) * eta_a * eta_rho * ipow(p, (m + 3) / 2),
        (false, false) => -quarter_sign(p, (m - 1) / 2) * eta_a * eta_t * ipow(p, m.div_ceil(2)),
    }
}

pub fn triple_char_sum(ctx: &FieldContext, a: FieldElement, rho: u32) -> Result<SumPair> {
    check_a_rho(ctx, a, rho)?;
    let p = ctx.p();
    let mut counts = vec![0i64; p as usize];
    for z in 1..p {
        let az = ctx.mul(a, ctx.prime_element(z as u64));
        let shift = (z as u64 * rho as u64) % p as u64;
        for y in 0..p {
            let ye = ctx.prime_element(y as u64);
            for x in ctx.elements() {
                let arg = ctx.add(ctx.mul(az, ctx.square(x)), ctx.mul(ye, x));
                let e = (ctx.trace(arg) as u64 + p as u64 - shift) % p as u64;
                counts[e as usize] += 1;
            }
        }
    }
    let brute = CyclotomicInteger::from_exponent_counts(p, &counts);
    let closed = CyclotomicInteger::from_int(p, triple_char_sum_closed(ctx, a, rho));
    Ok(SumPair::new(brute, closed))
}

/// `#{x != 0 : Tr(x) = 0, Tr(a x^2) = rho}` for nonzero `a` and `rho`, closed form.
pub fn n_a_rho_closed(ctx: &FieldContext, a: FieldElement, rho: u32) -> i64 {
    let (p, m) = (ctx.p(), ctx.m());
    let eta_a = ctx.quadratic_char(a);
    let eta_rho = ctx.prime_quadratic_char(rho);
    let t = trace_of_inverse(ctx, a);
    let eta_t = ctx.prime_quadratic_char(t);
    let base = ipow(p, m - 2);
    match (m % 2 == 0, t == 0) {
        (true, true) => base + quarter_sign(p, m / 2) * eta_a * ipow(p, (m - 2) / 2),
        (true, false) => {
            base - quarter_sign(p, (m + 2) / 2) * eta_a * eta_t * eta_rho * ipow(p, (m - 2) / 2)
        }
        (false, true) => {
            base + quarter_sign(p, (m - 1) / 2) * eta_a * eta_rho * ipow(p, (m - 1) / 2)
        }
        (false, false) => {
            base - quarter_sign(p, (m - 1) / 2) * eta_a * eta_t * ipow(p, (m - 3) / 2)
        }
    }
}

/// `#{x != 0 : Tr(x) = 0, Tr(a x^2) = rho}` for any `rho`, by enumeration.
pub fn n_a_rho_brute(ctx: &FieldContext, a: FieldElement, rho: u32) -> i64 {
    ctx.nonzero_elements()
        .filter(|&x| ctx.trace(x) == 0 && ctx.trace(ctx.mul(a, ctx.square(x))) == rho)
        .count() as i64
}

pub fn n_a_rho(ctx: &FieldContext, a: FieldElement, rho: u32) -> Result<CountPair> {
    check_a_rho(ctx, a, rho)?;
    if ctx.m() < 2 {
        return Err(Error::DegreeTooSmall { m: ctx.m(), min: 2 });
    }
    Ok(CountPair::new(
        n_a_rho_closed(ctx, a, rho),
        n_a_rho_brute(ctx, a, rho),
    ))
}

/// `#{a != 0 : eta(a) = i, Tr(a^{-1}) = 0}` in closed form.
pub fn n_i_closed(p: u32, m: u32, i: i64) -> i64 {
    if m % 2 == 1 {
        return (ipow(p, m - 1) - 1) / 2;
    }
    let (eta0, eta1) = gaussian_period_closed_n2(p, m);
    let period = if i == 1 { eta0 } else { eta1 }
        .as_integer()
        .expect("order-two periods are integers for even m");
    // (r - 1) / (2p) + ((p - 1) / p) * period
    exact_div((ipow(p, m) - 1) / 2 + (p as i64 - 1) * period, p as i64)
}

pub fn n_i(ctx: &FieldContext, i: i64) -> Result<CountPair> {
    check_sign(i)?;
    let brute = ctx
        .nonzero_elements()
        .filter(|&a| ctx.quadratic_char(a) == i && trace_of_inverse(ctx, a) == 0)
        .count() as i64;
    Ok(CountPair::new(n_i_closed(ctx.p(), ctx.m(), i), brute))
}

/// `#{a != 0 : Tr(a^{-1}) != 0, Legendre(Tr(a^{-1})) = j}`; the trace is
/// balanced, so each class holds half of the `p^m - p^(m-1)` elements.
fn legendre_class_size(p: u32, m: u32) -> i64 {
    (ipow(p, m) - ipow(p, m - 1)) / 2
}

/// `#{a != 0 : eta(a) = i, Legendre(Tr(a^{-1})) = j}` in closed form. Rows with
/// `i = -1` come from the complement of the `i = 1` row inside the `j` class.
pub fn n_ij_closed(p: u32, m: u32, i: i64, j: i64) -> i64 {
    if i == -1 {
        return legendre_class_size(p, m) - n_ij_closed(p, m, 1, j);
    }
    let base = ipow(p, m - 1);
    let inner = if m.is_multiple_of(2) {
        base + quarter_sign(p, m / 2) * ipow(p, (m - 2) / 2)
    } else {
        base + j * quarter_sign(p, (m - 1) / 2) * ipow(p, (m - 1) / 2)
    };
    exact_div((p as i64 - 1) * inner, 4)
}

pub fn n_ij(ctx: &FieldContext, i: i64, j: i64) -> Result<CountPair> {
    check_sign(i)?;
    check_sign(j)?;
    let brute = ctx
        .nonzero_elements()
        .filter(|&a| {
            ctx.quadratic_char(a) == i && ctx.prime_quadratic_char(trace_of_inverse(ctx, a)) == j
        })
        .count() as i64;
    Ok(CountPair::new(n_ij_closed(ctx.p(), ctx.m(), i, j), brute))
}

/// `#{a != 0 : eta(a) * Legendre(Tr(a^{-1})) = i}` in closed form.
pub fn s_i_closed(p: u32, m: u32, i: i64) -> i64 {
    if m.is_multiple_of(2) {
        return legendre_class_size(p, m);
    }
    let half = (p as i64 - 1) / 2;
    half * (ipow(p, m - 1) + i * quarter_sign(p, (m - 1) / 2) * ipow(p, (m - 1) / 2))
}

pub fn s_i(ctx: &FieldContext, i: i64) -> Result<CountPair> {
    check_sign(i)?;
    let brute = ctx
        .nonzero_elements()
        .filter(|&a| {
            ctx.quadratic_char(a) * ctx.prime_quadratic_char(trace_of_inverse(ctx, a)) == i
        })
        .count() as i64;
    Ok(CountPair::new(s_i_closed(ctx.p(), ctx.m(), i), brute))
}
