use std::collections::BTreeSet;

use proptest::prelude::*;

use cwe_core::code::{codeword, cwe_brute, wd_closed, DefiningSet};
use cwe_core::field::legendre_symbol;
use cwe_core::minimality::{ab_bound_check, all_minimal_brute, BruteVerdict, DEFAULT_SCAN_CAP};
use cwe_core::FieldContext;

const GRID: [(u64, u32); 8] = [
    (3, 2),
    (3, 3),
    (3, 4),
    (3, 5),
    (5, 2),
    (5, 3),
    (7, 2),
    (7, 3),
];

#[test]
fn trace_is_balanced_and_frobenius_invariant() {
    for (p, m) in GRID {
        let f = FieldContext::new(p, m).unwrap();
        let mut counts = vec![0u32; p as usize];
        for x in f.elements() {
            counts[f.trace(x) as usize] += 1;
            assert_eq!(f.trace(f.pow(x, p)), f.trace(x));
            assert_eq!(f.frobenius_trace(x).index(), f.trace(x));
        }
        assert!(counts.iter().all(|&c| c == f.order() / p as u32));
    }
}

#[test]
fn prime_subfield_character() {
    for (p, m) in GRID {
        let f = FieldContext::new(p, m).unwrap();
        for y in 1..p {
            let expected = if m % 2 == 0 { 1 } else { legendre_symbol(y, p) };
            assert_eq!(f.quadratic_char(f.prime_element(y)), expected);
        }
    }
}

#[test]
fn square_classes_partition() {
    let f = FieldContext::new(5, 2).unwrap();
    let c0: BTreeSet<_> = f.cyclotomic_class(2, 0).unwrap().into_iter().collect();
    let c1: BTreeSet<_> = f.cyclotomic_class(2, 1).unwrap().into_iter().collect();
    assert!(c0.is_disjoint(&c1));
    assert_eq!(c0.len() + c1.len(), 24);
}

#[test]
fn enumerator_structure() {
    for (p, m) in GRID {
        let f = FieldContext::new(p, m).unwrap();
        let t = cwe_brute(&f).unwrap();
        for c in 1..p {
            assert_eq!(t.scaled(c), t, "p={p} m={m} c={c}");
        }
        assert!(t.len() <= 2 * (p as usize - 1) + 3);
        let wd = wd_closed(p as u32, m).unwrap();
        assert!(wd.nonzero_weights().count() <= 3);
        assert!(t.entries().all(|(c, _)| wd.frequency(c.weight()) > 0));
        assert_eq!(t.total(), f.order() as u64);
    }
}

#[test]
fn construction_is_deterministic() {
    for (p, m) in GRID {
        let a = FieldContext::new(p, m).unwrap();
        let b = FieldContext::new(p, m).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.alpha(), b.alpha());
        assert_eq!(a.exp_table(), b.exp_table());
        assert_eq!(cwe_brute(&a).unwrap(), cwe_brute(&b).unwrap());
    }
}

#[test]
fn weight_ratio_bound_is_sound() {
    for (p, m) in [(3, 3), (3, 4), (3, 5), (5, 3)] {
        let f = FieldContext::new(p, m).unwrap();
        let report = all_minimal_brute(&f, DEFAULT_SCAN_CAP).unwrap();
        assert!(matches!(report.all_minimal_brute, BruteVerdict::Checked(_)));
        assert!(report.is_sound(), "p={p} m={m}");
    }
    let r = all_minimal_brute(&FieldContext::new(3, 4).unwrap(), DEFAULT_SCAN_CAP).unwrap();
    assert!(!r.ab_bound_holds);
    assert_eq!(r.all_minimal_brute, BruteVerdict::Checked(false));
    assert!(ab_bound_check(3, 6).unwrap().holds);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in 0u64..243, b in 0u64..243, c in 0u64..243) {
        let f = FieldContext::new(3, 5).unwrap();
        let (a, b, c) = (f.element(a).unwrap(), f.element(b).unwrap(), f.element(c).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), cwe_core::FieldElement::ONE);
        }
        prop_assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % 3);
    }

    #[test]
    fn codeword_scaling_by_prime_field(a in 1u64..125, k in 1u32..5) {
        let f = FieldContext::new(5, 3).unwrap();
        let d = DefiningSet::new(&f).unwrap();
        let a = f.element(a).unwrap();
        let w = codeword(&f, &d, a);
        let ka = f.mul(f.prime_element(k as u64), a);
        let scaled: Vec<u32> = w.symbols.iter().map(|s| s * k % 5).collect();
        prop_assert_eq!(codeword(&f, &d, ka).symbols, scaled);
        prop_assert_eq!(w.composition.weight(), codeword(&f, &d, ka).composition.weight());
    }
}
