//! Minimal codewords: the Ashikhmin-Barg sufficient condition and an
//! exhaustive pairwise cover scan.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::code::{codeword, wd_closed, DefiningSet};
use crate::error::{Error, Result};
use crate::field::FieldContext;

pub const DEFAULT_SCAN_CAP: usize = 10_000;

/// Counterexample pairs listed in a report; the full count is always kept.
pub const MAX_LISTED_COUNTEREXAMPLES: usize = 20;

/// Support of a word as a bitset over coordinate positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support {
    len: usize,
    bits: Vec<u64>,
}

impl Support {
    pub fn positions(&self) -> Vec<usize> {
        (0..self.len)
            .filter(|&i| self.bits[i / 64] >> (i % 64) & 1 == 1)
            .collect()
    }

    pub fn size(&self) -> u32 {
        self.bits.iter().map(|b| b.count_ones()).sum()
    }

    /// `other` is a proper subset of `self`.
    pub fn properly_contains(&self, other: &Support) -> bool {
        self != other && self.bits.iter().zip(&other.bits).all(|(a, b)| b & !a == 0)
    }
}

pub fn support(word: &[u32]) -> Support {
    let mut bits = vec![0u64; word.len().div_ceil(64)];
    for (i, _) in word.iter().enumerate().filter(|(_, &s)| s != 0) {
        bits[i / 64] |= 1 << (i % 64);
    }
    Support {
        len: word.len(),
        bits,
    }
}

/// `w1` covers `w2` when the support of `w2` is a proper subset of that of `w1`.
pub fn covers(w1: &[u32], w2: &[u32]) -> Result<bool> {
    if w1.len() != w2.len() {
        return Err(Error::LengthMismatch(w1.len(), w2.len()));
    }
    Ok(support(w1).properly_contains(&support(w2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AbBound {
    pub w_min: u64,
    pub w_max: u64,
    pub holds: bool,
}

/// `w_min / w_max > (p - 1) / p` over the closed-form nonzero weights,
/// compared as `p w_min > (p - 1) w_max`.
pub fn ab_bound_check(p: u32, m: u32) -> Result<AbBound> {
    let wd = wd_closed(p, m)?;
    let w_min = wd
        .nonzero_weights()
        .min()
        .expect("code has nonzero weights");
    let w_max = wd
        .nonzero_weights()
        .max()
        .expect("code has nonzero weights");
    let p = p as u64;
    Ok(AbBound {
        w_min,
        w_max,
        holds: p * w_min > (p - 1) * w_max,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteVerdict {
    Checked(bool),
    Skipped,
}

impl Serialize for BruteVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Checked(b) => s.serialize_bool(*b),
            Self::Skipped => s.serialize_str("skipped"),
        }
    }
}

/// Outcome of the pairwise cover scan over distinct nonzero codewords.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverScan {
    pub distinct_nonzero_codewords: usize,
    pub distinct_supports: usize,
    /// Number of (covering, covered) support pairs.
    pub counterexample_count: usize,
    /// `(a_covering, a_covered)` as field indices of the smallest `a`
    /// producing each support, truncated to the first few.
    pub counterexamples: Vec<(u32, u32)>,
}

/// Groups the distinct nonzero codewords by support and tests every pair of
/// supports for proper containment.
pub fn cover_scan(ctx: &FieldContext, cap: usize) -> Result<CoverScan> {
    let d = DefiningSet::new(ctx)?;
    let mut words: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    for a in ctx.nonzero_elements() {
        let word = codeword(ctx, &d, a).symbols;
        if word.iter().any(|&s| s != 0) {
            words.entry(word).or_insert(a.index());
        }
    }
    if words.len() > cap {
        return Err(Error::TooLarge {
            count: words.len(),
            cap,
        });
    }
    let mut supports: BTreeMap<Support, u32> = BTreeMap::new();
    for (word, a) in &words {
        let rep = supports.entry(support(word)).or_insert(*a);
        *rep = (*rep).min(*a);
    }
    let supports: Vec<(Support, u32)> = supports.into_iter().collect();
    let mut pairs: Vec<(u32, u32)> = supports
        .par_iter()
        .flat_map_iter(|(outer, a_outer)| {
            supports
                .iter()
                .filter(move |(inner, _)| outer.properly_contains(inner))
                .map(move |(_, a_inner)| (*a_outer, *a_inner))
        })
        .collect();
    pairs.sort_unstable();
    let counterexample_count = pairs.len();
    pairs.truncate(MAX_LISTED_COUNTEREXAMPLES);
    Ok(CoverScan {
        distinct_nonzero_codewords: words.len(),
        distinct_supports: supports.len(),
        counterexample_count,
        counterexamples: pairs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub w_min: u64,
    pub w_max: u64,
    pub ab_bound_holds: bool,
    pub all_minimal_brute: BruteVerdict,
    pub scan: Option<CoverScan>,
}

impl MinimalityReport {
    /// A positive bound with a failed scan would contradict the bound.
    pub fn is_sound(&self) -> bool {
        !(self.ab_bound_holds && self.all_minimal_brute == BruteVerdict::Checked(false))
    }

    pub fn counterexamples(&self) -> &[(u32, u32)] {
        self.scan.as_ref().map_or(&[], |s| &s.counterexamples)
    }
}

/// Bound check plus the exhaustive scan, the latter reported as skipped when
/// the number of distinct codewords exceeds `cap`.
pub fn all_minimal_brute(ctx: &FieldContext, cap: usize) -> Result<MinimalityReport> {
    let bound = ab_bound_check(ctx.p(), ctx.m())?;
    let scan = match cover_scan(ctx, cap) {
        Ok(scan) => Some(scan),
        Err(Error::TooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    let verdict = scan.as_ref().map_or(BruteVerdict::Skipped, |s| {
        BruteVerdict::Checked(s.counterexample_count == 0)
    });
    Ok(MinimalityReport {
        w_min: bound.w_min,
        w_max: bound.w_max,
        ab_bound_holds: bound.holds,
        all_minimal_brute: verdict,
        scan,
    })
}
