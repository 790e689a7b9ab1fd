//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use cwe_core::charsum::{
    gauss_sum_brute, gauss_sum_closed, gaussian_period_brute, gaussian_period_closed_n2,
    quad_exponential_sum_with,
};
use cwe_core::code::{
    cwe_brute, cwe_closed, wd_closed, weight_distribution, CompositionVector, CweTable,
};
use cwe_core::counting::{n_a_rho, n_i, n_ij, s_i, t_c, triple_char_sum};
use cwe_core::minimality::{ab_bound_check, all_minimal_brute, BruteVerdict, DEFAULT_SCAN_CAP};
use cwe_core::report::{self, strip_timing, VerifyOptions, DEFAULT_GRID};
use cwe_core::{FieldContext, FieldElement};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(p: u64, m: u32) -> FieldContext {
    FieldContext::new(p, m).expect("valid parameters")
}

fn grid() -> impl Iterator<Item = FieldContext> {
    DEFAULT_GRID.iter().map(|&(p, m)| field(p, m))
}

fn table(p: u32, m: u32, n: u64, rows: &[(&[i64], u64)]) -> CweTable {
    let mut t = CweTable::empty(p, m, n);
    for (counts, freq) in rows {
        t.insert(
            CompositionVector::from_signed(counts.to_vec()).unwrap(),
            *freq,
        );
    }
    t
}

fn example(p: u64, m: u32, expected: CweTable, weights: &str) -> Check {
    let start = Instant::now();
    let f = field(p, m);
    let brute = cwe_brute(&f).map_err(|e| e.to_string())?;
    let wd = weight_distribution(&brute);
    let elapsed = start.elapsed();
    ensure(brute == expected, || {
        format!("enumerator {}", brute.to_polynomial_string())
    })?;
    ensure(wd.to_polynomial_string() == weights, || {
        format!("weights {}", wd.to_polynomial_string())
    })?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })
}

fn criterion_1() -> Check {
    let expected = table(
        3,
        4,
        26,
        &[
            (&[26, 0, 0], 1),
            (&[14, 6, 6], 16),
            (&[8, 6, 12], 27),
            (&[8, 12, 6], 27),
            (&[2, 12, 12], 10),
        ],
    );
    example(3, 4, expected, "1 + 16z^12 + 54z^18 + 10z^24")
}

fn criterion_2() -> Check {
    let expected = table(
        5,
        3,
        24,
        &[
            (&[24, 0, 0, 0, 0], 1),
            (&[8, 4, 4, 4, 4], 60),
            (&[4, 10, 0, 0, 10], 12),
            (&[4, 0, 10, 10, 0], 12),
            (&[0, 6, 6, 6, 6], 40),
        ],
    );
    example(5, 3, expected, "1 + 60z^16 + 24z^20 + 40z^24")
}

fn criterion_3() -> Check {
    let start = Instant::now();
    for f in grid() {
        let (p, m) = (f.p(), f.m());
        let brute = cwe_brute(&f).map_err(|e| e.to_string())?;
        let closed = cwe_closed(p, m).map_err(|e| e.to_string())?;
        ensure(brute == closed, || {
            format!("enumerator mismatch at ({p},{m})")
        })?;
        let wd = wd_closed(p, m).map_err(|e| e.to_string())?;
        ensure(weight_distribution(&brute) == wd, || {
            format!("weight mismatch at ({p},{m})")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for f in grid() {
        let (p, m) = (f.p(), f.m());
        let at = |what: &str| format!("{what} mismatch at ({p},{m})");
        for c in 0..p {
            ensure(t_c(&f, c).map_err(|e| e.to_string())?.matched, || at("t_c"))?;
        }
        for i in [1, -1] {
            ensure(n_i(&f, i).map_err(|e| e.to_string())?.matched, || at("n_i"))?;
            ensure(s_i(&f, i).map_err(|e| e.to_string())?.matched, || at("s_i"))?;
            for j in [1, -1] {
                ensure(n_ij(&f, i, j).map_err(|e| e.to_string())?.matched, || {
                    at("n_ij")
                })?;
            }
        }
        let pairs: Vec<(FieldElement, u32)> = if f.order() <= 243 {
            f.nonzero_elements()
                .flat_map(|a| (1..p).map(move |rho| (a, rho)))
                .collect()
        } else {
            (0..200)
                .map(|_| {
                    (
                        f.element(rng.gen_range(1..f.order() as u64)).unwrap(),
                        rng.gen_range(1..p),
                    )
                })
                .collect()
        };
        for (a, rho) in pairs {
            ensure(
                n_a_rho(&f, a, rho).map_err(|e| e.to_string())?.matched,
                || at("N_a(rho)"),
            )?;
            ensure(
                triple_char_sum(&f, a, rho)
                    .map_err(|e| e.to_string())?
                    .matched,
                || at("triple sum"),
            )?;
        }
    }
    Ok(())
}

fn criterion_5() -> Check {
    let mut fields: Vec<(u64, u32)> = DEFAULT_GRID.to_vec();
    fields.extend([(3, 1), (5, 1), (7, 1)]);
    for (p, m) in fields {
        let f = field(p, m);
        let g = gauss_sum_brute(&f);
        let r = f.order() as i64;
        let eta = f.quadratic_char(f.neg(FieldElement::ONE));
        ensure((&g * &g).as_integer() == Some(eta * r), || {
            format!("squaring law at ({p},{m})")
        })?;
        let err = (g.embed() - gauss_sum_closed(p as u32, m).embed()).norm();
        ensure(err < 1e-9 * (r as f64).sqrt(), || {
            format!("closed form at ({p},{m}): error {err}")
        })?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    for f in grid() {
        let (p, m) = (f.p(), f.m());
        let e0 = gaussian_period_brute(&f, 2, 0).map_err(|e| e.to_string())?;
        let e1 = gaussian_period_brute(&f, 2, 1).map_err(|e| e.to_string())?;
        ensure((&e0 + &e1).as_integer() == Some(-1), || {
            format!("period sum at ({p},{m})")
        })?;
        let (c0, c1) = gaussian_period_closed_n2(p, m);
        let ok = if m % 2 == 0 {
            e0.as_integer().is_some()
                && e0.as_integer() == c0.as_integer()
                && e1.as_integer() == c1.as_integer()
        } else {
            let tol = 1e-9 * (f.order() as f64).sqrt();
            (e0.embed() - c0.embed()).norm() < tol && (e1.embed() - c1.embed()).norm() < tol
        };
        ensure(ok, || format!("period closed form at ({p},{m})"))?;
    }
    Ok(())
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in grid() {
        let g = gauss_sum_brute(&f);
        let r = f.order() as u64;
        let triples: Vec<[FieldElement; 3]> = if r <= 27 {
            let f = &f;
            f.nonzero_elements()
                .flat_map(|a2| {
                    f.elements()
                        .flat_map(move |a1| f.elements().map(move |a0| [a2, a1, a0]))
                })
                .collect()
        } else {
            (0..100)
                .map(|_| {
                    [
                        f.element(rng.gen_range(1..r)).unwrap(),
                        f.element(rng.gen_range(0..r)).unwrap(),
                        f.element(rng.gen_range(0..r)).unwrap(),
                    ]
                })
                .collect()
        };
        for [a2, a1, a0] in triples {
            let pair = quad_exponential_sum_with(&f, &g, a2, a1, a0).map_err(|e| e.to_string())?;
            ensure(pair.matched, || {
                format!("({},{}) at {a2:?} {a1:?} {a0:?}", f.p(), f.m())
            })?;
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    for (p, m) in [(3, 3), (3, 4), (3, 5), (5, 3)] {
        let r = all_minimal_brute(&field(p, m), DEFAULT_SCAN_CAP).map_err(|e| e.to_string())?;
        ensure(r.all_minimal_brute != BruteVerdict::Skipped, || {
            format!("scan skipped at ({p},{m})")
        })?;
        ensure(r.is_sound(), || {
            format!("bound holds but counterexample found at ({p},{m})")
        })?;
    }
    ensure(
        !ab_bound_check(3, 4).map_err(|e| e.to_string())?.holds,
        || "bound at (3,4)".into(),
    )?;
    let v = report::verify(3, 4, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    let section = v.section("minimality").ok_or("no minimality section")?;
    ensure(section.details["ab_verdict"] == false, || {
        "AB verdict not recorded".into()
    })?;
    ensure(section.details["brute_verdict"].is_boolean(), || {
        "empirical verdict not recorded".into()
    })?;
    ensure(v.passed(), || "minimality failed the run".into())
}

fn criterion_9() -> Check {
    for (p, m) in DEFAULT_GRID {
        let v = report::verify(p, m, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        ensure(v.passed(), || format!("report failed at ({p},{m})"))?;
        let has = |section: &str, needle: &str| {
            v.notes
                .iter()
                .any(|n| n.section == section && n.message.contains(needle))
        };
        if m == 2 {
            ensure(has("theorem1", "dimension 1"), || {
                format!("missing dimension note at ({p},{m})")
            })?;
        }
        if m % 2 == 1 {
            ensure(has("theorem1", "rows 3-4"), || {
                format!("missing row note at ({p},{m})")
            })?;
        }
    }
    Ok(())
}

fn sweep_json() -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cwe"))
        .arg("sweep")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("sweep exited with {}", out.status)
    })?;
    let mut v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    strip_timing(&mut v);
    Ok(v)
}

fn criterion_10() -> Check {
    let a = serde_json::to_string(&sweep_json()?).map_err(|e| e.to_string())?;
    let b = serde_json::to_string(&sweep_json()?).map_err(|e| e.to_string())?;
    ensure(a == b, || "sweep output differs between runs".into())?;
    ensure(a.len() > 1000 && !a.contains("timing_ms"), || {
        "unexpected sweep output".into()
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("(3,4) enumerator and weights", criterion_1),
        ("(5,3) enumerator and weights", criterion_2),
        ("enumerator and weight grid, brute = closed", criterion_3),
        ("counting identities over the grid", criterion_4),
        ("Gauss sum squaring law and closed form", criterion_5),
        ("order-two Gaussian periods", criterion_6),
        ("quadratic exponential sums", criterion_7),
        (
            "minimality bound soundness and empirical verdict",
            criterion_8,
        ),
        ("dimension and zero-count notes", criterion_9),
        ("sweep determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!(
                "criterion {:>2}: PASS  {name} ({:?})",
                i + 1,
                start.elapsed()
            ),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
