//! Character sums over GF(p^m) evaluated exactly in `Z[zeta_p]`, next to the
//! closed forms they are checked against.

use num_complex::Complex64;
use serde::Serialize;

use crate::cyclotomic::CyclotomicInteger;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// A fourth root of unity, kept symbolic because `i` is not in `Z[zeta_p]`
/// when `p = 3 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FourthRoot {
    #[serde(rename = "+1")]
    One,
    #[serde(rename = "+i")]
    I,
    #[serde(rename = "-1")]
    MinusOne,
    #[serde(rename = "-i")]
    MinusI,
}

impl FourthRoot {
    /// `i^k`.
    pub fn i_pow(k: u64) -> Self {
        match k % 4 {
            0 => Self::One,
            1 => Self::I,
            2 => Self::MinusOne,
            _ => Self::MinusI,
        }
    }

    fn exponent(self) -> u64 {
        match self {
            Self::One => 0,
            Self::I => 1,
            Self::MinusOne => 2,
            Self::MinusI => 3,
        }
    }

    pub fn times(self, other: Self) -> Self {
        Self::i_pow(self.exponent() + other.exponent())
    }

    /// `+1` / `-1` as an integer, `None` for `+i` / `-i`.
    pub fn real_sign(self) -> Option<i64> {
        match self {
            Self::One => Some(1),
            Self::MinusOne => Some(-1),
            _ => None,
        }
    }

    pub fn embed(self) -> Complex64 {
        match self {
            Self::One => Complex64::new(1.0, 0.0),
            Self::I => Complex64::new(0.0, 1.0),
            Self::MinusOne => Complex64::new(-1.0, 0.0),
            Self::MinusI => Complex64::new(0.0, -1.0),
        }
    }
}

/// `unit * p^(half_power / 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosedGauss {
    pub p: u32,
    pub unit: FourthRoot,
    pub half_power: u32,
}

impl ClosedGauss {
    pub fn embed(&self) -> Complex64 {
        self.unit.embed() * (self.p as f64).powf(self.half_power as f64 / 2.0)
    }
}

/// Exact value `(rational + coefficient * unit * p^(half_power / 2)) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HalfSurd {
    pub rational: i64,
    pub coefficient: i64,
    pub unit: FourthRoot,
    pub p: u32,
    pub half_power: u32,
}

impl HalfSurd {
    /// The value as a rational integer, when it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if !self.half_power.is_multiple_of(2) {
            return None;
        }
        let sign = self.unit.real_sign()?;
        let numer =
            self.rational + self.coefficient * sign * (self.p as i64).pow(self.half_power / 2);
        (numer % 2 == 0).then_some(numer / 2)
    }

    pub fn embed(&self) -> Complex64 {
        let surd = (self.p as f64).powf(self.half_power as f64 / 2.0);
        (Complex64::new(self.rational as f64, 0.0)
            + self.unit.embed() * (self.coefficient as f64 * surd))
            / 2.0
    }

    /// `-1 - self`.
    pub fn complement(&self) -> Self {
        Self {
            rational: -2 - self.rational,
            coefficient: -self.coefficient,
            ..*self
        }
    }
}

/// An exact character sum computed two ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumPair {
    pub brute: CyclotomicInteger,
    pub closed: CyclotomicInteger,
    pub matched: bool,
}

impl SumPair {
    pub fn new(brute: CyclotomicInteger, closed: CyclotomicInteger) -> Self {
        let matched = brute == closed;
        Self {
            brute,
            closed,
            matched,
        }
    }
}

/// Canonical additive character `zeta_p^Tr(x)`.
pub fn additive_char(ctx: &FieldContext, x: FieldElement) -> CyclotomicInteger {
    CyclotomicInteger::zeta_pow(ctx.p(), ctx.trace(x) as i64)
}

/// Sums `weight(x) * zeta^Tr(f(x))` over the given elements by tallying
/// exponents first.
fn tally<I>(ctx: &FieldContext, terms: I) -> CyclotomicInteger
where
    I: IntoIterator<Item = (FieldElement, i64)>,
{
    let mut counts = vec![0i64; ctx.p() as usize];
    for (y, w) in terms {
        counts[ctx.trace(y) as usize] += w;
    }
    CyclotomicInteger::from_exponent_counts(ctx.p(), &counts)
}

/// `sum_{x in F_r} chi_1(a x)`.
pub fn orthogonality_sum(ctx: &FieldContext, a: FieldElement) -> CyclotomicInteger {
    tally(ctx, ctx.elements().map(|x| (ctx.mul(a, x), 1)))
}

/// `G(eta, chi_1) = sum_{x != 0} eta(x) chi_1(x)`.
pub fn gauss_sum_brute(ctx: &FieldContext) -> CyclotomicInteger {
    tally(
        ctx,
        ctx.nonzero_elements().map(|x| (x, ctx.quadratic_char(x))),
    )
}

/// Closed form of the quadratic Gauss sum over GF(p^m):
/// `(-1)^(m-1) * i^((p-1)^2 m / 4) * sqrt(p^m)`.
pub fn gauss_sum_closed(p: u32, m: u32) -> ClosedGauss {
    let p64 = p as u64;
    let quarter = (p64 - 1) * (p64 - 1) / 4;
    let sign_exp = if (m - 1) % 2 == 1 { 2 } else { 0 };
    ClosedGauss {
        p,
        unit: FourthRoot::i_pow(quarter * m as u64 + sign_exp),
        half_power: m,
    }
}

/// Closed form of the quadratic Gauss sum over the prime field:
/// `i^((p-1)^2 / 4) * sqrt(p)`.
pub fn prime_gauss_sum_closed(p: u32) -> ClosedGauss {
    let p64 = p as u64;
    ClosedGauss {
        p,
        unit: FourthRoot::i_pow((p64 - 1) * (p64 - 1) / 4),
        half_power: 1,
    }
}

/// `eta_i^(N, r) = sum over the class alpha^i <alpha^N> of chi_1`.
pub fn gaussian_period_brute(ctx: &FieldContext, n: u64, i: u64) -> Result<CyclotomicInteger> {
    let class = ctx.cyclotomic_class(n, i)?;
    Ok(tally(ctx, class.into_iter().map(|x| (x, 1))))
}

/// Order-two Gaussian periods `(eta_0, eta_1)` in closed form.
pub fn gaussian_period_closed_n2(p: u32, m: u32) -> (HalfSurd, HalfSurd) {
    let sign = if (m - 1).is_multiple_of(2) { 1 } else { -1 };
    let unit = if p % 4 == 1 {
        FourthRoot::One
    } else {
        FourthRoot::i_pow(m as u64)
    };
    let eta0 = HalfSurd {
        rational: -1,
        coefficient: sign,
        unit,
        p,
        half_power: m,
    };
    (eta0, eta0.complement())
}

/// `sum_{x in F_r} chi_1(a2 x^2 + a1 x + a0)` by enumeration and by completing
/// the square: `chi_1(a0 - a1^2 / (4 a2)) * eta(a2) * G(eta, chi_1)`.
pub fn quad_exponential_sum(
    ctx: &FieldContext,
    a2: FieldElement,
    a1: FieldElement,
    a0: FieldElement,
) -> Result<SumPair> {
    quad_exponential_sum_with(ctx, &gauss_sum_brute(ctx), a2, a1, a0)
}

/// As [`quad_exponential_sum`], reusing a precomputed Gauss sum.
pub fn quad_exponential_sum_with(
    ctx: &FieldContext,
    gauss: &CyclotomicInteger,
    a2: FieldElement,
    a1: FieldElement,
    a0: FieldElement,
) -> Result<SumPair> {
    if a2.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let brute = tally(
        ctx,
        ctx.elements().map(|x| {
            let quad = ctx.mul(a2, ctx.square(x));
            let lin = ctx.mul(a1, x);
            (ctx.add(ctx.add(quad, lin), a0), 1)
        }),
    );
    let four_a2 = ctx.mul(ctx.prime_element(4), a2);
    let shift = ctx.mul(ctx.square(a1), ctx.inv(four_a2)?);
    let closed = (&additive_char(ctx, ctx.sub(a0, shift)) * gauss).scale(ctx.quadratic_char(a2));
    Ok(SumPair::new(brute, closed))
}

/// The quadratic character restricted to the prime subfield is trivial for
/// even `m` and is the Legendre symbol for odd `m`.
pub fn eta_lift_check(ctx: &FieldContext) -> bool {
    (1..ctx.p()).all(|y| {
        let lifted = ctx.quadratic_char(ctx.prime_element(y as u64));
        if ctx.m().is_multiple_of(2) {
            lifted == 1
        } else {
            lifted == ctx.prime_quadratic_char(y)
        }
    })
}
