//! Verification reports: every closed form compared with its exhaustive
//! counterpart for one `(p, m)`, and sweeps over grids of parameters.
//!
//! Reports are deterministic apart from the `timing_ms` fields: random
//! sampling uses a generator seeded from `(p, m)` and all maps are ordered.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::charsum::{
    eta_lift_check, gauss_sum_brute, gauss_sum_closed, gaussian_period_brute,
    gaussian_period_closed_n2, prime_gauss_sum_closed, quad_exponential_sum_with,
};
use crate::code::{
    closed_rows, code_dimension, cwe_brute, cwe_closed, wd_closed, weight_distribution, CweTable,
};
use crate::counting::{n_a_rho, n_i, n_ij, s_i, t_c, triple_char_sum};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement, FieldParams};
use crate::minimality::{all_minimal_brute, BruteVerdict, DEFAULT_SCAN_CAP};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Fields up to this order get the quadratic-sum identity checked for every
/// `(a2, a1, a0)`; larger ones get [`QUAD_SUM_SAMPLES`] random triples.
pub const QUAD_SUM_EXHAUSTIVE_MAX_R: u64 = 27;
pub const QUAD_SUM_SAMPLES: usize = 100;
/// Same split for the `(a, rho)` sweeps of the triple sum and `N_a(rho)`.
pub const PAIR_EXHAUSTIVE_MAX_R: u64 = 243;
pub const PAIR_SAMPLES: usize = 200;
/// Relative tolerance for comparisons through the complex embedding,
/// scaled by `sqrt(r)`.
pub const EMBED_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SWEEP_MAX_R: u64 = 2500;
pub const DEFAULT_GRID: [(u64, u32); 8] = [
    (3, 2),
    (3, 3),
    (3, 4),
    (3, 5),
    (5, 2),
    (5, 3),
    (7, 2),
    (7, 3),
];

const MAX_LISTED_MISMATCHES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectionId {
    Gauss,
    Periods,
    Lemma3,
    Lemma4,
    Lemma5,
    Sum3,
    Lemma6,
    Lemma7,
    Lemma8,
    Lemma9,
    Theorem1,
    Theorem2,
    Minimality,
}

impl SectionId {
    pub const ALL: [SectionId; 13] = [
        Self::Gauss,
        Self::Periods,
        Self::Lemma3,
        Self::Lemma4,
        Self::Lemma5,
        Self::Sum3,
        Self::Lemma6,
        Self::Lemma7,
        Self::Lemma8,
        Self::Lemma9,
        Self::Theorem1,
        Self::Theorem2,
        Self::Minimality,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Gauss => "gauss",
            Self::Periods => "periods",
            Self::Lemma3 => "lemma3",
            Self::Lemma4 => "lemma4",
            Self::Lemma5 => "lemma5",
            Self::Sum3 => "sum3",
            Self::Lemma6 => "lemma6",
            Self::Lemma7 => "lemma7",
            Self::Lemma8 => "lemma8",
            Self::Lemma9 => "lemma9",
            Self::Theorem1 => "theorem1",
            Self::Theorem2 => "theorem2",
            Self::Minimality => "minimality",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Self::Gauss => "quadratic Gauss sums: squaring law and closed form",
            Self::Periods => "order-two Gaussian periods",
            Self::Lemma3 => "quadratic exponential sums by completing the square",
            Self::Lemma4 => "quadratic character on the prime subfield",
            Self::Lemma5 => "t_c = #{a : Tr(a^2) = c}",
            Self::Sum3 => "triple character sum",
            Self::Lemma6 => "N_a(rho) symbol counts",
            Self::Lemma7 => "n_i = #{a : eta(a) = i, Tr(1/a) = 0}",
            Self::Lemma8 => "n_ij = #{a : eta(a) = i, Legendre(Tr(1/a)) = j}",
            Self::Lemma9 => "s_i = #{a : eta(a) Legendre(Tr(1/a)) = i}",
            Self::Theorem1 => "complete weight enumerator",
            Self::Theorem2 => "weight distribution",
            Self::Minimality => "minimal codewords",
        }
    }
}

impl fmt::Display for SectionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SectionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s.trim())
            .ok_or_else(|| Error::UnknownSection(s.to_string()))
    }
}

/// Parses a comma-separated section list; an empty string selects nothing.
pub fn parse_sections(s: &str) -> Result<Vec<SectionId>> {
    let mut ids: Vec<SectionId> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(SectionId::from_str)
        .collect::<Result<_>>()?;
    ids.sort();
    ids.dedup();
    Ok(ids)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoteKind {
    /// A stated property of the construction that the computation does not
    /// reproduce; never a failure.
    ClaimDiscrepancy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Note {
    pub kind: NoteKind,
    pub section: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Section {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub artifact_version: String,
    pub p: u32,
    pub m: u32,
    pub n: u64,
    pub sections: Vec<Section>,
    pub notes: Vec<Note>,
    pub overall: Status,
    pub timing_ms: BTreeMap<String, u64>,
}

impl VerificationReport {
    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn passed(&self) -> bool {
        self.overall != Status::Fail
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub sections: Vec<SectionId>,
    pub scan_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            sections: SectionId::ALL.to_vec(),
            scan_cap: DEFAULT_SCAN_CAP,
        }
    }
}

struct Outcome {
    status: Status,
    details: Value,
    notes: Vec<String>,
}

impl Outcome {
    fn new(ok: bool, details: Value) -> Self {
        Self {
            status: Status::from_bool(ok),
            details,
            notes: Vec::new(),
        }
    }
}

struct Verifier {
    ctx: FieldContext,
    rng: ChaCha8Rng,
    cwe: OnceCell<CweTable>,
    gauss: OnceCell<crate::CyclotomicInteger>,
}

/// Runs the requested sections for `(p, m)`. Parameter errors are returned;
/// mathematical mismatches are recorded as failed sections.
pub fn verify(p: u64, m: u32, opts: &VerifyOptions) -> Result<VerificationReport> {
    let params = FieldParams::new(p, m)?;
    if m < 2 {
        return Err(Error::DegreeTooSmall { m, min: 2 });
    }
    let seed = (params.p as u64) << 32 | m as u64;
    let mut v = Verifier {
        ctx: FieldContext::new(p, m)?,
        rng: ChaCha8Rng::seed_from_u64(seed),
        cwe: OnceCell::new(),
        gauss: OnceCell::new(),
    };

    let mut sections = Vec::new();
    let mut notes = Vec::new();
    let mut timing_ms = BTreeMap::new();
    for &id in &opts.sections {
        let start = Instant::now();
        let outcome = v.run(id, opts)?;
        timing_ms.insert(id.as_str().to_string(), start.elapsed().as_millis() as u64);
        notes.extend(outcome.notes.into_iter().map(|message| Note {
            kind: NoteKind::ClaimDiscrepancy,
            section: id.as_str().to_string(),
            message,
        }));
        sections.push(Section {
            name: id.as_str().to_string(),
            status: outcome.status,
            details: outcome.details,
        });
    }
    let overall = Status::from_bool(sections.iter().all(|s| s.status != Status::Fail));
    Ok(VerificationReport {
        artifact_version: ARTIFACT_VERSION.to_string(),
        p: params.p,
        m,
        n: (params.r / params.p) as u64 - 1,
        sections,
        notes,
        overall,
        timing_ms,
    })
}

fn embed_json(z: num_complex::Complex64) -> Value {
    json!([z.re, z.im])
}

impl Verifier {
    fn p(&self) -> u32 {
        self.ctx.p()
    }

    fn m(&self) -> u32 {
        self.ctx.m()
    }

    fn r(&self) -> u64 {
        self.ctx.order() as u64
    }

    fn cwe(&self) -> &CweTable {
        self.cwe
            .get_or_init(|| cwe_brute(&self.ctx).expect("degree checked on entry"))
    }

    fn gauss(&self) -> &crate::CyclotomicInteger {
        self.gauss.get_or_init(|| gauss_sum_brute(&self.ctx))
    }

    fn random_nonzero(&mut self) -> FieldElement {
        let idx = self.rng.gen_range(1..self.r());
        self.ctx.element(idx).expect("in range")
    }

    fn random_element(&mut self) -> FieldElement {
        let idx = self.rng.gen_range(0..self.r());
        self.ctx.element(idx).expect("in range")
    }

    fn run(&mut self, id: SectionId, opts: &VerifyOptions) -> Result<Outcome> {
        match id {
            SectionId::Gauss => self.gauss_section(),
            SectionId::Periods => self.periods_section(),
            SectionId::Lemma3 => self.quad_sum_section(),
            SectionId::Lemma4 => Ok(self.eta_lift_section()),
            SectionId::Lemma5 => self.t_c_section(),
            SectionId::Sum3 => self.triple_sum_section(),
            SectionId::Lemma6 => self.n_a_rho_section(),
            SectionId::Lemma7 => self.n_i_section(),
            SectionId::Lemma8 => self.n_ij_section(),
            SectionId::Lemma9 => self.s_i_section(),
            SectionId::Theorem1 => self.cwe_section(),
            SectionId::Theorem2 => self.wd_section(),
            SectionId::Minimality => self.minimality_section(opts.scan_cap),
        }
    }

    fn gauss_section(&self) -> Result<Outcome> {
        let prime = FieldContext::new(self.p() as u64, 1)?;
        let mut ok = true;
        let mut cases = Vec::new();
        for (label, ctx, closed) in [
            ("extension", &self.ctx, gauss_sum_closed(self.p(), self.m())),
            ("prime", &prime, prime_gauss_sum_closed(self.p())),
        ] {
            let brute = if std::ptr::eq(ctx, &self.ctx) {
                self.gauss().clone()
            } else {
                gauss_sum_brute(ctx)
            };
            let eta_minus_one = ctx.quadratic_char(ctx.neg(FieldElement::ONE));
            let r = ctx.order() as i64;
            let squared = (&brute * &brute).as_integer();
            let squaring_law = squared == Some(eta_minus_one * r);
            let error = (brute.embed() - closed.embed()).norm();
            let tolerance = EMBED_TOLERANCE * (r as f64).sqrt();
            ok &= squaring_law && error < tolerance;
            cases.push(json!({
                "field": label,
                "r": r,
                "brute": brute.to_string(),
                "eta_minus_one": eta_minus_one,
                "squaring_law": squaring_law,
                "closed": closed,
                "brute_embedded": embed_json(brute.embed()),
                "closed_embedded": embed_json(closed.embed()),
                "embedding_error": error,
                "tolerance": tolerance,
            }));
        }
        Ok(Outcome::new(ok, json!({ "cases": cases })))
    }

    fn periods_section(&self) -> Result<Outcome> {
        let e0 = gaussian_period_brute(&self.ctx, 2, 0)?;
        let e1 = gaussian_period_brute(&self.ctx, 2, 1)?;
        let sum_is_minus_one = (&e0 + &e1).as_integer() == Some(-1);
        let (c0, c1) = gaussian_period_closed_n2(self.p(), self.m());
        let closed_sum_is_minus_one = c0.complement() == c1;

        let (mode, agree, error) = if self.m().is_multiple_of(2) {
            let agree = c0.as_integer().is_some()
                && e0.as_integer() == c0.as_integer()
                && e1.as_integer() == c1.as_integer();
            ("exact", agree, 0.0)
        } else {
            let error = (e0.embed() - c0.embed())
                .norm()
                .max((e1.embed() - c1.embed()).norm());
            let tolerance = EMBED_TOLERANCE * (self.r() as f64).sqrt();
            ("embedded", error < tolerance, error)
        };

        let mut class_sizes = Vec::new();
        let mut partition = vec![0u32; self.r() as usize];
        for i in 0..2 {
            let class = self.ctx.cyclotomic_class(2, i)?;
            class_sizes.push(class.len());
            for x in class {
                partition[x.index() as usize] += 1;
            }
        }
        let partitions = partition[0] == 0 && partition[1..].iter().all(|&c| c == 1);

        let ok = sum_is_minus_one && closed_sum_is_minus_one && agree && partitions;
        Ok(Outcome::new(
            ok,
            json!({
                "brute": [e0.to_string(), e1.to_string()],
                "closed": [c0, c1],
                "comparison": mode,
                "agree": agree,
                "embedding_error": error,
                "sum_is_minus_one": sum_is_minus_one,
                "closed_sum_is_minus_one": closed_sum_is_minus_one,
                "class_sizes": class_sizes,
                "classes_partition": partitions,
            }),
        ))
    }

    fn quad_sum_section(&mut self) -> Result<Outcome> {
        let exhaustive = self.r() <= QUAD_SUM_EXHAUSTIVE_MAX_R;
        let triples: Vec<[FieldElement; 3]> = if exhaustive {
            let ctx = &self.ctx;
            ctx.nonzero_elements()
                .flat_map(|a2| {
                    ctx.elements()
                        .flat_map(move |a1| ctx.elements().map(move |a0| [a2, a1, a0]))
                })
                .collect()
        } else {
            (0..QUAD_SUM_SAMPLES)
                .map(|_| {
                    [
                        self.random_nonzero(),
                        self.random_element(),
                        self.random_element(),
                    ]
                })
                .collect()
        };
        let gauss = self.gauss().clone();
        let mut mismatches = Vec::new();
        let mut mismatch_count = 0;
        for &[a2, a1, a0] in &triples {
            let pair = quad_exponential_sum_with(&self.ctx, &gauss, a2, a1, a0)?;
            if !pair.matched {
                mismatch_count += 1;
                if mismatches.len() < MAX_LISTED_MISMATCHES {
                    mismatches.push(json!({
                        "a2": a2, "a1": a1, "a0": a0,
                        "brute": pair.brute.to_string(),
                        "closed": pair.closed.to_string(),
                    }));
                }
            }
        }
        Ok(Outcome::new(
            mismatch_count == 0,
            json!({
                "mode": if exhaustive { "exhaustive" } else { "sampled" },
                "checked": triples.len(),
                "mismatch_count": mismatch_count,
                "mismatches": mismatches,
            }),
        ))
    }

    fn eta_lift_section(&self) -> Outcome {
        let values: Vec<Value> = (1..self.p())
            .map(|y| {
                json!({
                    "y": y,
                    "eta": self.ctx.quadratic_char(self.ctx.prime_element(y as u64)),
                    "legendre": self.ctx.prime_quadratic_char(y),
                })
            })
            .collect();
        let ok = eta_lift_check(&self.ctx);
        Outcome::new(
            ok,
            json!({ "expected": if self.m().is_multiple_of(2) { "trivial" } else { "legendre" }, "values": values }),
        )
    }

    fn t_c_section(&self) -> Result<Outcome> {
        let rows: Vec<_> = (0..self.p())
            .map(|c| t_c(&self.ctx, c).map(|pair| (c, pair)))
            .collect::<Result<_>>()?;
        let total: i64 = rows.iter().map(|(_, pair)| pair.brute).sum();
        let ok = rows.iter().all(|(_, pair)| pair.matched) && total == self.r() as i64;
        let values: Vec<Value> = rows
            .iter()
            .map(|(c, pair)| json!({ "c": c, "closed": pair.closed, "brute": pair.brute }))
            .collect();
        Ok(Outcome::new(
            ok,
            json!({ "values": values, "total": total }),
        ))
    }

    fn pairs(&mut self) -> (bool, Vec<(FieldElement, u32)>) {
        let p = self.p();
        if self.r() <= PAIR_EXHAUSTIVE_MAX_R {
            let pairs = self
                .ctx
                .nonzero_elements()
                .flat_map(|a| (1..p).map(move |rho| (a, rho)))
                .collect();
            (true, pairs)
        } else {
            let pairs = (0..PAIR_SAMPLES)
                .map(|_| (self.random_nonzero(), self.rng.gen_range(1..p)))
                .collect();
            (false, pairs)
        }
    }

    fn triple_sum_section(&mut self) -> Result<Outcome> {
        let (exhaustive, pairs) = self.pairs();
        let mut mismatches = Vec::new();
        let mut mismatch_count = 0;
        let mut values = BTreeMap::new();
        for &(a, rho) in &pairs {
            let pair = triple_char_sum(&self.ctx, a, rho)?;
            *values
                .entry(pair.closed.as_integer().expect("integer"))
                .or_insert(0u64) += 1;
            if !pair.matched {
                mismatch_count += 1;
                if mismatches.len() < MAX_LISTED_MISMATCHES {
                    mismatches.push(json!({
                        "a": a, "rho": rho,
                        "brute": pair.brute.to_string(),
                        "closed": pair.closed.to_string(),
                    }));
                }
            }
        }
        let values: BTreeMap<String, u64> = values
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        Ok(Outcome::new(
            mismatch_count == 0,
            json!({
                "mode": if exhaustive { "exhaustive" } else { "sampled" },
                "checked": pairs.len(),
                "closed_value_histogram": values,
                "mismatch_count": mismatch_count,
                "mismatches": mismatches,
            }),
        ))
    }

    fn n_a_rho_section(&mut self) -> Result<Outcome> {
        let (exhaustive, pairs) = self.pairs();
        let mut mismatches = Vec::new();
        let mut mismatch_count = 0;
        let mut by_a: BTreeMap<FieldElement, Vec<(u32, i64)>> = BTreeMap::new();
        for &(a, rho) in &pairs {
            let pair = n_a_rho(&self.ctx, a, rho)?;
            by_a.entry(a).or_default().push((rho, pair.brute));
            if !pair.matched {
                mismatch_count += 1;
                if mismatches.len() < MAX_LISTED_MISMATCHES {
                    mismatches.push(json!({
                        "a": a, "rho": rho, "brute": pair.brute, "closed": pair.closed,
                    }));
                }
            }
        }

        // Row structure: constant in rho when m is even and Tr(1/a) = 0,
        // otherwise a function of Legendre(rho) alone.
        let mut structure_ok = true;
        if exhaustive {
            for (a, values) in &by_a {
                let t = self.ctx.trace(self.ctx.inv(*a)?);
                let mut by_class: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
                for &(rho, count) in values {
                    let class = if self.m().is_multiple_of(2) && t == 0 {
                        0
                    } else {
                        self.ctx.prime_quadratic_char(rho)
                    };
                    by_class.entry(class).or_default().push(count);
                }
                structure_ok &= by_class
                    .values()
                    .all(|v| v.windows(2).all(|w| w[0] == w[1]));
            }
        }
        Ok(Outcome::new(
            mismatch_count == 0 && structure_ok,
            json!({
                "mode": if exhaustive { "exhaustive" } else { "sampled" },
                "checked": pairs.len(),
                "row_structure": if exhaustive { json!(structure_ok) } else { json!("skipped") },
                "mismatch_count": mismatch_count,
                "mismatches": mismatches,
            }),
        ))
    }

    fn n_i_section(&self) -> Result<Outcome> {
        let n1 = n_i(&self.ctx, 1)?;
        let nm1 = n_i(&self.ctx, -1)?;
        let total_ok = n1.brute + nm1.brute == (self.r() / self.p() as u64) as i64 - 1;
        Ok(Outcome::new(
            n1.matched && nm1.matched && total_ok,
            json!({ "n_1": n1, "n_-1": nm1, "sum_matches_trace_kernel": total_ok }),
        ))
    }

    fn n_ij_section(&self) -> Result<Outcome> {
        let mut ok = true;
        let mut total = 0;
        let mut values = serde_json::Map::new();
        for (i, j) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let pair = n_ij(&self.ctx, i, j)?;
            ok &= pair.matched;
            total += pair.brute;
            values.insert(format!("n_{i},{j}"), json!(pair));
        }
        let expected_total = self.r() as i64 - (self.r() / self.p() as u64) as i64;
        ok &= total == expected_total;
        values.insert("total".into(), json!(total));
        Ok(Outcome::new(ok, Value::Object(values)))
    }

    fn s_i_section(&self) -> Result<Outcome> {
        let s1 = s_i(&self.ctx, 1)?;
        let sm1 = s_i(&self.ctx, -1)?;
        let expected_total = self.r() as i64 - (self.r() / self.p() as u64) as i64;
        let total_ok = s1.brute + sm1.brute == expected_total;
        let even_symmetric = self.m() % 2 == 1 || s1.brute == sm1.brute;
        Ok(Outcome::new(
            s1.matched && sm1.matched && total_ok && even_symmetric,
            json!({
                "s_1": s1,
                "s_-1": sm1,
                "sum_matches_nonzero_trace": total_ok,
                "even_degree_symmetry": even_symmetric,
            }),
        ))
    }

    fn cwe_section(&self) -> Result<Outcome> {
        let (p, m) = (self.p(), self.m());
        let brute = self.cwe();
        let closed = cwe_closed(p, m)?;
        let rows = closed_rows(p, m)?;
        let matched = *brute == closed;

        let closed_wd = wd_closed(p, m)?;
        let three_weight = brute
            .entries()
            .all(|(c, _)| closed_wd.frequency(c.weight()) > 0);
        let scaling_invariant = (1..p as u64).all(|c| brute.scaled(c) == *brute);
        let distinct_bound = brute.len() <= 2 * (p as usize - 1) + 3;
        let dimension = code_dimension(&self.ctx)?;

        let mut notes = Vec::new();
        if m % 2 == 1 {
            let fixed: Vec<String> = rows
                .iter()
                .filter(|r| r.tabulated_zero_count != r.derived_zero_count)
                .map(|r| {
                    format!(
                        "row {}: tabulated {}, derived {}",
                        r.row, r.tabulated_zero_count, r.derived_zero_count
                    )
                })
                .collect();
            notes.push(format!(
                "odd m: zero-symbol counts of closed rows 3-4 are derived as n - sum of nonzero \
                 counts with n = {}; the tabulated values are one too large ({})",
                brute.n,
                fixed.join("; ")
            ));
        }
        if dimension != m {
            notes.push(format!(
                "stated dimension is m = {m} but the code has dimension {dimension}"
            ));
        }

        let mut out = Outcome::new(
            matched && three_weight && scaling_invariant && distinct_bound,
            json!({
                "match": matched,
                "brute": brute,
                "closed": closed,
                "closed_rows": rows,
                "brute_polynomial": brute.to_polynomial_string(),
                "dimension": dimension,
                "three_weight": three_weight,
                "scaling_invariant": scaling_invariant,
                "distinct_compositions": brute.len(),
            }),
        );
        out.notes = notes;
        Ok(out)
    }

    fn wd_section(&self) -> Result<Outcome> {
        let brute = weight_distribution(self.cwe());
        let closed = wd_closed(self.p(), self.m())?;
        Ok(Outcome::new(
            brute == closed,
            json!({
                "match": brute == closed,
                "brute": brute,
                "closed": closed,
                "brute_polynomial": brute.to_polynomial_string(),
                "closed_polynomial": closed.to_polynomial_string(),
            }),
        ))
    }

    fn minimality_section(&self, cap: usize) -> Result<Outcome> {
        let report = all_minimal_brute(&self.ctx, cap)?;
        let m = self.m();
        let mut notes = Vec::new();
        if m >= 4 && !report.ab_bound_holds {
            notes.push(format!(
                "all nonzero codewords are claimed minimal for m >= 4, but the weight-ratio \
                 bound fails here: p*w_min = {} <= (p-1)*w_max = {}; exhaustive scan: {}",
                self.p() as u64 * report.w_min,
                (self.p() as u64 - 1) * report.w_max,
                verdict_text(report.all_minimal_brute)
            ));
        }
        if m >= 4 && report.all_minimal_brute == BruteVerdict::Checked(false) {
            notes.push(format!(
                "the claim that every nonzero codeword is minimal for m >= 4 fails: {} covering pairs",
                report.scan.as_ref().map_or(0, |s| s.counterexample_count)
            ));
        }
        let status = if !report.is_sound() {
            Status::Fail
        } else {
            Status::Pass
        };
        Ok(Outcome {
            status,
            details: json!({
                "report": report,
                "ab_verdict": report.ab_bound_holds,
                "brute_verdict": report.all_minimal_brute,
                "sound": report.is_sound(),
            }),
            notes,
        })
    }
}

fn verdict_text(v: BruteVerdict) -> &'static str {
    match v {
        BruteVerdict::Checked(true) => "all minimal",
        BruteVerdict::Checked(false) => "not all minimal",
        BruteVerdict::Skipped => "skipped",
    }
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepEntry {
    pub p: u64,
    pub m: u32,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub artifact_version: String,
    pub max_r: u64,
    pub entries: Vec<SweepEntry>,
    pub overall: Status,
    pub timing_ms: BTreeMap<String, u64>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.overall != Status::Fail
    }
}

/// Verifies every grid point with `p^m <= max_r`; larger points are skipped.
pub fn sweep(grid: &[(u64, u32)], max_r: u64, opts: &VerifyOptions) -> Result<SweepReport> {
    let start = Instant::now();
    let mut entries = Vec::with_capacity(grid.len());
    for &(p, m) in grid {
        let r = p.checked_pow(m);
        if r.is_none_or(|r| r > max_r) {
            entries.push(SweepEntry {
                p,
                m,
                status: Status::Skipped,
                reason: Some(format!("{p}^{m} exceeds the order cap {max_r}")),
                report: None,
            });
            continue;
        }
        let report = verify(p, m, opts)?;
        entries.push(SweepEntry {
            p,
            m,
            status: report.overall,
            reason: None,
            report: Some(report),
        });
    }
    let overall = Status::from_bool(entries.iter().all(|e| e.status != Status::Fail));
    let mut timing_ms = BTreeMap::new();
    timing_ms.insert("total".to_string(), start.elapsed().as_millis() as u64);
    Ok(SweepReport {
        artifact_version: ARTIFACT_VERSION.to_string(),
        max_r,
        entries,
        overall,
        timing_ms,
    })
}

/// Parses `P:M` items separated by commas. Either side may be an inclusive
/// range `a..b`; ranges over `p` keep only odd primes. An empty string is an
/// empty grid.
pub fn parse_grid(s: &str) -> Result<Vec<(u64, u32)>> {
    let mut grid = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (ps, ms) = item
            .split_once(':')
            .ok_or_else(|| Error::InvalidGrid(format!("expected P:M, got '{item}'")))?;
        let (p_lo, p_hi, p_range) = parse_range(ps)?;
        let (m_lo, m_hi, _) = parse_range(ms)?;
        for p in p_lo..=p_hi {
            if p_range && (p == 2 || !crate::field::is_prime(p)) {
                continue;
            }
            for m in m_lo..=m_hi {
                let m = u32::try_from(m)
                    .map_err(|_| Error::InvalidGrid(format!("degree {m} too large")))?;
                grid.push((p, m));
            }
        }
    }
    Ok(grid)
}

fn parse_range(s: &str) -> Result<(u64, u64, bool)> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| Error::InvalidGrid(format!("'{t}' is not a number")))
    };
    match s.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(Error::InvalidGrid(format!("empty range {s}")));
            }
            Ok((lo, hi, true))
        }
        None => {
            let v = num(s)?;
            Ok((v, v, false))
        }
    }
}

/// Removes every `timing_ms` field, leaving the deterministic part of a report.
pub fn strip_timing(value: &mut Value) {
    match value {
        Value::Object(map) => {
            map.remove("timing_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
