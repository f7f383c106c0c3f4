//! Property tests for the syntax and frame invariants: printer/parser round
//! trips against an independent fully-parenthesized printer, substitution
//! laws, closure idempotence, upset preservation of truth sets, and the
//! validity-level closure properties (substitution and arrow necessitation).

use hl_core::parse::{parse_bi, parse_sto};
use hl_core::semantics::{frame_valid, Model, ValidOptions, Valuation, Validity};
use hl_core::sets::Relation;
use hl_core::syntax::{BiFormula, Formula};
use hl_core::frames::{sto_closure, Frame, StoFrame};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn sto_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => prop_oneof![Just("p"), Just("q"), Just("r")].prop_map(Formula::atom),
        1 => Just(Formula::Top),
        1 => Just(Formula::Bot),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::imp(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::sto(l, r)),
            inner.clone().prop_map(Formula::neg),
            inner.prop_map(Formula::boxed),
        ]
    })
}

fn bi_formula() -> impl Strategy<Value = BiFormula> {
    let leaf = prop_oneof![
        4 => prop_oneof![Just("p"), Just("q"), Just("r")].prop_map(BiFormula::atom),
        1 => Just(BiFormula::Top),
        1 => Just(BiFormula::Bot),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| BiFormula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| BiFormula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| BiFormula::imp(l, r)),
            inner.clone().prop_map(BiFormula::neg),
            inner.clone().prop_map(BiFormula::box_i),
            inner.prop_map(BiFormula::box_m),
        ]
    })
}

/// Independent printer: every composite fully parenthesized, definitional
/// connectives spelled out. Correct by construction, so it can serve as the
/// oracle for the minimal-parenthesis printer.
fn full_paren(f: &Formula) -> String {
    match f {
        Formula::Atom(p) => p.clone(),
        Formula::Top => "T".into(),
        Formula::Bot => "F".into(),
        Formula::And(l, r) => format!("({} & {})", full_paren(l), full_paren(r)),
        Formula::Or(l, r) => format!("({} | {})", full_paren(l), full_paren(r)),
        Formula::Imp(l, r) => format!("({} -> {})", full_paren(l), full_paren(r)),
        Formula::Sto(l, r) => format!("({} ~> {})", full_paren(l), full_paren(r)),
    }
}

fn full_paren_bi(f: &BiFormula) -> String {
    match f {
        BiFormula::Atom(p) => p.clone(),
        BiFormula::Top => "T".into(),
        BiFormula::Bot => "F".into(),
        BiFormula::And(l, r) => format!("({} & {})", full_paren_bi(l), full_paren_bi(r)),
        BiFormula::Or(l, r) => format!("({} | {})", full_paren_bi(l), full_paren_bi(r)),
        BiFormula::Imp(l, r) => format!("({} -> {})", full_paren_bi(l), full_paren_bi(r)),
        BiFormula::Neg(g) => format!("(~{})", full_paren_bi(g)),
        BiFormula::BoxI(g) => format!("([i]{})", full_paren_bi(g)),
        BiFormula::BoxM(g) => format!("([m]{})", full_paren_bi(g)),
    }
}

/// Random strict-implication frame: edges only upwards in the index order
/// keep the closure antisymmetric; the second relation is arbitrary before
/// its coherence closure.
fn sto_frame() -> impl Strategy<Value = StoFrame> {
    (1usize..=4).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(any::<bool>(), n * n),
            proptest::collection::vec(any::<bool>(), n * n),
        )
    })
    .prop_map(|(n, le_bits, sq_bits)| {
        let mut pre = Relation::identity(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if le_bits[i * n + j] {
                    pre.insert(i, j);
                }
            }
        }
        loop {
            let next = pre.union(&pre.compose(&pre));
            if next == pre {
                break;
            }
            pre = next;
        }
        let mut sq = Relation::empty(n);
        for i in 0..n {
            for j in 0..n {
                if sq_bits[i * n + j] {
                    sq.insert(i, j);
                }
            }
        }
        let worlds = (0..n).map(|i| format!("w{i}")).collect();
        sto_closure(worlds, pre, sq).expect("upward edges close to a poset")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_round_trip(f in sto_formula()) {
        prop_assert_eq!(&parse_sto(&f.to_string()).unwrap(), &f);
    }

    #[test]
    fn parser_agrees_with_full_paren_oracle(f in sto_formula()) {
        prop_assert_eq!(&parse_sto(&full_paren(&f)).unwrap(), &f);
    }

    #[test]
    fn bi_print_parse_round_trip(f in bi_formula()) {
        prop_assert_eq!(&parse_bi(&f.to_string()).unwrap(), &f);
        prop_assert_eq!(&parse_bi(&full_paren_bi(&f)).unwrap(), &f);
    }

    #[test]
    fn substitution_identity(f in sto_formula()) {
        prop_assert_eq!(&f.substitute(&BTreeMap::new()), &f);
        let id: BTreeMap<String, Formula> = ["p", "q", "r"]
            .iter()
            .map(|a| (a.to_string(), Formula::atom(a)))
            .collect();
        prop_assert_eq!(&f.substitute(&id), &f);
    }

    #[test]
    fn subformula_closure_idempotent(f in sto_formula()) {
        let subs = f.subformulas();
        let all: std::collections::BTreeSet<_> =
            subs.iter().flat_map(|s| s.subformulas()).collect();
        prop_assert_eq!(all, subs.into_iter().collect());
    }

    #[test]
    fn closure_is_idempotent_and_valid(f in sto_frame()) {
        // sto_closure output already validated by the constructor; closing
        // again changes nothing.
        let again = sto_closure(
            f.worlds().to_vec(),
            f.preceq().clone(),
            f.sqsubset().clone(),
        ).unwrap();
        prop_assert_eq!(again.sqsubset(), f.sqsubset());
    }

    #[test]
    fn truth_sets_are_upsets(f in sto_frame(), phi in sto_formula(), picks in proptest::collection::vec(any::<u16>(), 3)) {
        let ups = f.upsets();
        let mut map = BTreeMap::new();
        for (atom, pick) in ["p", "q", "r"].iter().zip(&picks) {
            map.insert(atom.to_string(), ups[*pick as usize % ups.len()]);
        }
        let pre = f.preceq().rows().to_vec();
        let model = Model::new(Frame::Sto(f), Valuation::new(map)).unwrap();
        let truth = model.truth_set(&phi).unwrap();
        for x in 0..pre.len() {
            if truth >> x & 1 == 1 {
                prop_assert_eq!(pre[x] & !truth, 0);
            }
        }
    }
}

proptest! {
    // The validity sweeps cost candidates^atoms per frame, so fewer cases.
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frame_validity_is_closed_under_substitution(
        f in sto_frame(),
        phi in sto_formula(),
        sub_p in sto_formula(),
        sub_q in sto_formula(),
    ) {
        let opts = ValidOptions::default();
        if frame_valid(&f, &phi, opts).unwrap().is_valid() {
            let mut map = BTreeMap::new();
            map.insert("p".to_string(), sub_p);
            map.insert("q".to_string(), sub_q);
            let instance = phi.substitute(&map);
            prop_assert!(frame_valid(&f, &instance, opts).unwrap().is_valid());
        }
    }

    #[test]
    fn arrow_necessitation_preserves_frame_validity(
        f in sto_frame(),
        a in sto_formula(),
        b in sto_formula(),
    ) {
        let opts = ValidOptions::default();
        if frame_valid(&f, &Formula::imp(a.clone(), b.clone()), opts).unwrap().is_valid() {
            let lifted = Formula::sto(a, b);
            prop_assert!(frame_valid(&f, &lifted, opts).unwrap().is_valid());
        }
    }

    #[test]
    fn reported_countervaluations_refute(f in sto_frame(), phi in sto_formula()) {
        let opts = ValidOptions::default();
        if let Validity::Refuted { valuation, world } =
            frame_valid(&f, &phi, opts).unwrap()
        {
            let model =
                Model::new(Frame::Sto(f), Valuation::new(valuation)).unwrap();
            let truth = model.truth_set(&phi).unwrap();
            prop_assert_eq!(truth >> world & 1, 0);
        }
    }
}
