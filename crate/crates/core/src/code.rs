//! The code `C_D = { (Tr(a x^2))_{x in D} : a in F_r }` over the trace-zero
//! defining set, its complete weight enumerator (by enumeration and in closed
//! form) and its weight distribution.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{legendre_symbol, FieldContext, FieldElement};

/// The nonzero trace-zero elements, ascending by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    elements: Vec<FieldElement>,
}

impl DefiningSet {
    pub fn new(ctx: &FieldContext) -> Result<Self> {
        check_degree(ctx.m())?;
        let elements = ctx
            .nonzero_elements()
            .filter(|&x| ctx.trace(x) == 0)
            .collect();
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn check_degree(m: u32) -> Result<()> {
    if m < 2 {
        Err(Error::DegreeTooSmall { m, min: 2 })
    } else {
        Ok(())
    }
}

/// Symbol counts `(k_0, ..., k_{p-1})` of a word, symbol `j` standing for `j in F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CompositionVector(Vec<u64>);

impl CompositionVector {
    pub fn of_symbols(p: u32, symbols: &[u32]) -> Self {
        let mut counts = vec![0u64; p as usize];
        for &s in symbols {
            counts[s as usize] += 1;
        }
        Self(counts)
    }

    /// The all-zero word of length `n`.
    pub fn zero_word(p: u32, n: u64) -> Self {
        let mut counts = vec![0u64; p as usize];
        counts[0] = n;
        Self(counts)
    }

    pub fn from_signed(counts: Vec<i64>) -> Result<Self> {
        counts
            .iter()
            .map(|&k| u64::try_from(k))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Self)
            .map_err(|_| Error::InvalidComposition(format!("negative count in {counts:?}")))
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn length(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Hamming weight: everything but the zero symbol.
    pub fn weight(&self) -> u64 {
        self.length() - self.0[0]
    }

    /// Composition of the word scaled by `c`: symbol `j` becomes `c j mod p`.
    pub fn scaled(&self, c: u64) -> Self {
        let p = self.0.len() as u64;
        let mut out = vec![0u64; p as usize];
        for (j, &k) in self.0.iter().enumerate() {
            out[(j as u64 * c % p) as usize] += k;
        }
        Self(out)
    }
}

impl fmt::Display for CompositionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, &k)| {
                if k == 1 {
                    format!("w{j}")
                } else {
                    format!("w{j}^{k}")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", terms.join("*"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub symbols: Vec<u32>,
    pub composition: CompositionVector,
}

/// The word `(Tr(a x^2))_{x in D}` in the order of `d`.
pub fn codeword(ctx: &FieldContext, d: &DefiningSet, a: FieldElement) -> Codeword {
    let symbols: Vec<u32> = d
        .elements()
        .iter()
        .map(|&x| ctx.trace(ctx.mul(a, ctx.square(x))))
        .collect();
    let composition = CompositionVector::of_symbols(ctx.p(), &symbols);
    Codeword {
        symbols,
        composition,
    }
}

/// Complete weight enumerator as a multiset of compositions, counted once
/// per `a in F_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CweTableRepr", try_from = "CweTableRepr")]
pub struct CweTable {
    pub p: u32,
    pub m: u32,
    pub n: u64,
    entries: BTreeMap<CompositionVector, u64>,
}

#[derive(Serialize, Deserialize)]
struct CweEntry {
    composition: CompositionVector,
    frequency: u64,
}

#[derive(Serialize, Deserialize)]
struct CweTableRepr {
    p: u32,
    m: u32,
    n: u64,
    entries: Vec<CweEntry>,
}

impl From<CweTable> for CweTableRepr {
    fn from(t: CweTable) -> Self {
        Self {
            p: t.p,
            m: t.m,
            n: t.n,
            entries: t
                .entries
                .into_iter()
                .map(|(composition, frequency)| CweEntry {
                    composition,
                    frequency,
                })
                .collect(),
        }
    }
}

impl TryFrom<CweTableRepr> for CweTable {
    type Error = Error;

    fn try_from(r: CweTableRepr) -> Result<Self> {
        let mut table = CweTable::empty(r.p, r.m, r.n);
        for e in r.entries {
            if e.composition.counts().len() != r.p as usize || e.composition.length() != r.n {
                return Err(Error::InvalidComposition(format!(
                    "{:?} does not fit p = {}, n = {}",
                    e.composition.counts(),
                    r.p,
                    r.n
                )));
            }
            table.insert(e.composition, e.frequency);
        }
        Ok(table)
    }
}

impl CweTable {
    pub fn empty(p: u32, m: u32, n: u64) -> Self {
        Self {
            p,
            m,
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, composition: CompositionVector, frequency: u64) {
        if frequency > 0 {
            *self.entries.entry(composition).or_insert(0) += frequency;
        }
    }

    pub fn merge(mut self, other: Self) -> Self {
        for (c, f) in other.entries {
            self.insert(c, f);
        }
        self
    }

    /// Entries in lexicographic order of the composition.
    pub fn entries(&self) -> impl Iterator<Item = (&CompositionVector, u64)> {
        self.entries.iter().map(|(c, &f)| (c, f))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn frequency(&self, composition: &CompositionVector) -> u64 {
        self.entries.get(composition).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// The table after multiplying every codeword by `c in F_p^*`.
    pub fn scaled(&self, c: u64) -> Self {
        let mut out = Self::empty(self.p, self.m, self.n);
        for (comp, f) in self.entries() {
            out.insert(comp.scaled(c), f);
        }
        out
    }

    /// `f w0^k0 w1^k1 ...` terms joined with `+`.
    pub fn to_polynomial_string(&self) -> String {
        self.entries()
            .map(|(c, f)| {
                if f == 1 {
                    c.to_string()
                } else {
                    format!("{f}*{c}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Enumerates every `a in F_r`. Work is split across the current rayon pool;
/// the result does not depend on the split.
pub fn cwe_brute(ctx: &FieldContext) -> Result<CweTable> {
    let d = DefiningSet::new(ctx)?;
    let squares: Vec<FieldElement> = d.elements().iter().map(|&x| ctx.square(x)).collect();
    let (p, m, n) = (ctx.p(), ctx.m(), d.len() as u64);
    let table = (0..ctx.order())
        .into_par_iter()
        .fold(
            || CweTable::empty(p, m, n),
            |mut acc, idx| {
                let a = ctx.element(idx as u64).expect("in range");
                let mut counts = vec![0u64; p as usize];
                for &sq in &squares {
                    counts[ctx.trace(ctx.mul(a, sq)) as usize] += 1;
                }
                acc.insert(CompositionVector(counts), 1);
                acc
            },
        )
        .reduce(|| CweTable::empty(p, m, n), CweTable::merge);
    Ok(table)
}

/// One row of the closed-form enumerator table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedRow {
    pub row: u8,
    pub composition: CompositionVector,
    pub frequency: u64,
    /// Zero-symbol count as tabulated in closed form.
    pub tabulated_zero_count: i64,
    /// Zero-symbol count forced by the length: `n - sum_{j != 0} k_j`.
    pub derived_zero_count: i64,
}

fn ipow(p: u32, e: u32) -> i64 {
    (p as i64).pow(e)
}

/// Rows of the closed-form enumerator (zero-frequency rows dropped). Row 5 is
/// the zero codeword.
pub fn closed_rows(p: u32, m: u32) -> Result<Vec<ClosedRow>> {
    check_degree(m)?;
    let n = ipow(p, m - 1) - 1;
    let base = ipow(p, m - 2);
    let pm1 = p as i64 - 1;
    let eta: Vec<i64> = (1..p)
        .map(|rho| legendre_symbol(rho as u64, p as u64))
        .collect();

    // (row, nonzero-symbol counts, tabulated k_0, frequency)
    let mut specs: Vec<(u8, Vec<i64>, i64, i64)> = Vec::new();
    if m.is_multiple_of(2) {
        let h = ipow(p, (m - 2) / 2);
        let half = ipow(p, m / 2);
        let pair_freq = (ipow(p, m) - ipow(p, m - 1)) / 2;
        specs.push((
            1,
            eta.iter().map(|e| base + e * h).collect(),
            base - 1,
            pair_freq,
        ));
        specs.push((
            2,
            eta.iter().map(|e| base - e * h).collect(),
            base - 1,
            pair_freq,
        ));
        specs.push((
            3,
            vec![base + h; eta.len()],
            base - 1 - pm1 * h,
            (half + 1) * (h - 1) / 2,
        ));
        specs.push((
            4,
            vec![base - h; eta.len()],
            base - 1 + pm1 * h,
            (half - 1) * (h + 1) / 2,
        ));
    } else {
        let h1 = ipow(p, (m - 1) / 2);
        let h3 = ipow(p, (m - 3) / 2);
        let pair_freq = (ipow(p, m - 1) - 1) / 2;
        let upper = pm1 / 2 * (ipow(p, m - 1) + h1);
        let lower = pm1 / 2 * (ipow(p, m - 1) - h1);
        specs.push((
            1,
            eta.iter().map(|e| base + e * h1).collect(),
            base - 1,
            pair_freq,
        ));
        specs.push((
            2,
            eta.iter().map(|e| base - e * h1).collect(),
            base - 1,
            pair_freq,
        ));
        specs.push((3, vec![base - h3; eta.len()], base + pm1 * h3, upper));
        specs.push((4, vec![base + h3; eta.len()], base - pm1 * h3, lower));
    }
    specs.push((5, vec![0; eta.len()], n, 1));

    specs
        .into_iter()
        .filter(|(_, _, _, freq)| *freq > 0)
        .map(|(row, nonzero, tabulated, freq)| {
            let derived = n - nonzero.iter().sum::<i64>();
            let mut counts = vec![derived];
            counts.extend(nonzero);
            Ok(ClosedRow {
                row,
                composition: CompositionVector::from_signed(counts)?,
                frequency: freq as u64,
                tabulated_zero_count: tabulated,
                derived_zero_count: derived,
            })
        })
        .collect()
}

/// Closed-form complete weight enumerator, zero counts derived from the length.
pub fn cwe_closed(p: u32, m: u32) -> Result<CweTable> {
    let n = (ipow(p, m - 1) - 1) as u64;
    let mut table = CweTable::empty(p, m, n);
    for row in closed_rows(p, m)? {
        table.insert(row.composition, row.frequency);
    }
    Ok(table)
}

/// Ordinary weight distribution `{weight: A_weight}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightDistribution(BTreeMap<u64, u64>);

impl WeightDistribution {
    pub fn insert(&mut self, weight: u64, frequency: u64) {
        if frequency > 0 {
            *self.0.entry(weight).or_insert(0) += frequency;
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.0.iter().map(|(&w, &f)| (w, f))
    }

    pub fn frequency(&self, weight: u64) -> u64 {
        self.0.get(&weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn nonzero_weights(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied().filter(|&w| w > 0)
    }

    /// `A_0 + A_w1 z^w1 + ...`.
    pub fn to_polynomial_string(&self) -> String {
        self.entries()
            .map(|(w, f)| match w {
                0 => f.to_string(),
                1 => format!("{f}z"),
                w => format!("{f}z^{w}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn weight_distribution(cwe: &CweTable) -> WeightDistribution {
    let mut wd = WeightDistribution::default();
    for (c, f) in cwe.entries() {
        wd.insert(c.weight(), f);
    }
    wd
}

/// Closed-form weight distribution: three nonzero weights plus `A_0`.
pub fn wd_closed(p: u32, m: u32) -> Result<WeightDistribution> {
    check_degree(m)?;
    let pm1 = p as i64 - 1;
    let base = ipow(p, m - 2);
    let rows: [(i64, i64); 4] = if m.is_multiple_of(2) {
        let h = ipow(p, (m - 2) / 2);
        let half = ipow(p, m / 2);
        [
            (pm1 * base, ipow(p, m) - ipow(p, m - 1)),
            (pm1 * (base + h), (half + 1) * (h - 1) / 2),
            (pm1 * (base - h), (half - 1) * (h + 1) / 2),
            (0, 1),
        ]
    } else {
        let h3 = ipow(p, (m - 3) / 2);
        let h1 = ipow(p, (m - 1) / 2);
        [
            (pm1 * base, ipow(p, m - 1) - 1),
            (pm1 * (base - h3), pm1 / 2 * (ipow(p, m - 1) + h1)),
            (pm1 * (base + h3), pm1 / 2 * (ipow(p, m - 1) - h1)),
            (0, 1),
        ]
    };
    let mut wd = WeightDistribution::default();
    for (w, f) in rows {
        wd.insert(w as u64, f as u64);
    }
    Ok(wd)
}

/// `log_p` of the number of distinct codewords.
pub fn code_dimension(ctx: &FieldContext) -> Result<u32> {
    let d = DefiningSet::new(ctx)?;
    let distinct: HashSet<Vec<u32>> = ctx
        .elements()
        .map(|a| codeword(ctx, &d, a).symbols)
        .collect();
    let mut count = distinct.len() as u64;
    let p = ctx.p() as u64;
    let mut k = 0;
    while count > 1 {
        assert_eq!(count % p, 0, "a linear code has p^k codewords");
        count /= p;
        k += 1;
    }
    Ok(k)
}
