use proptest::prelude::*;

use teamqueue::change::{contract_beliefs, parallel_contract, BeliefState, ContractionInput, SerialOperator};
use teamqueue::lab::{check_factoring, check_parity, check_pareto};
use teamqueue::{
    enumerate_tpos, minrank, parse_formula, stq, tq_aggregate, tq_membership, Aggregator, Formula, Profile,
    Proposition, Universe,
};

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        prop::sample::select(vec!["p", "q", "r"]).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

fn pqr() -> Universe {
    Universe::from_atoms(&["p", "q", "r"]).unwrap()
}

fn profile(worlds: usize, max_len: usize) -> impl Strategy<Value = Profile> {
    let tpos = enumerate_tpos(worlds).unwrap();
    prop::collection::vec(prop::sample::select(tpos), 1..=max_len).prop_map(|e| Profile::new(e).unwrap())
}

fn candidate(worlds: usize) -> impl Strategy<Value = teamqueue::Tpo> {
    prop::sample::select(enumerate_tpos(worlds).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printed_formulas_parse_back(f in formula()) {
        let printed = f.to_string();
        let back = parse_formula(&printed).unwrap();
        prop_assert_eq!(&back, &f, "{}", printed);
    }

    #[test]
    fn de_morgan(a in formula(), b in formula()) {
        let u = pqr();
        let lhs = u.models(&Formula::not(Formula::and(a.clone(), b.clone()))).unwrap();
        let rhs = u.models(&Formula::or(Formula::not(a.clone()), Formula::not(b.clone()))).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = u.models(&Formula::not(Formula::or(a.clone(), b.clone()))).unwrap();
        let rhs = u.models(&Formula::and(Formula::not(a), Formula::not(b))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn models_respect_connectives(a in formula(), b in formula()) {
        let u = pqr();
        let (ma, mb) = (u.models(&a).unwrap(), u.models(&b).unwrap());
        prop_assert_eq!(u.models(&Formula::and(a.clone(), b.clone())).unwrap(), ma & mb);
        prop_assert_eq!(u.models(&Formula::implies(a.clone(), b.clone())).unwrap(), !ma | mb);
        prop_assert_eq!(u.models(&Formula::iff(a, b)).unwrap(), (ma & mb) | (!ma & !mb));
    }

    #[test]
    fn stq_ignores_duplicates_and_order(p in profile(4, 3), dup in 0usize..3, rot in 0usize..3) {
        let entries = p.entries().to_vec();
        let mut doubled = entries.clone();
        doubled.push(entries[dup % entries.len()].clone());
        let mut rotated = entries.clone();
        rotated.rotate_left(rot % entries.len());
        let out = stq(&p);
        prop_assert_eq!(&stq(&Profile::new(doubled).unwrap()), &out);
        prop_assert_eq!(&stq(&Profile::new(rotated).unwrap()), &out);
    }

    #[test]
    fn stq_is_a_teamqueue_output_and_flattest(p in profile(4, 3)) {
        let out = stq(&p);
        let strategy = tq_membership(&p, &out).unwrap();
        prop_assert!(strategy.is_some());
        prop_assert_eq!(tq_aggregate(&p, &strategy.unwrap()).unwrap(), out.clone());
        prop_assert!(out.flatter_or_equal(&minrank(&p)));
    }

    #[test]
    fn factoring_witnesses_reproduce(p in profile(4, 3), t in candidate(4)) {
        let r = check_factoring(&p, &t).unwrap();
        prop_assert_eq!(r.passed, r.witness.is_none());
        prop_assert_eq!(r.passed, tq_membership(&p, &t).unwrap().is_some());
        if let Some(w) = r.witness {
            let s = w.set("S").unwrap();
            let target = t.min_set(s);
            let covered = p
                .iter()
                .map(|e| e.min_set(s))
                .filter(|m| m.is_subset(target))
                .fold(Proposition::empty(4), |a, m| a | m);
            prop_assert_ne!(covered, target);
        }
    }

    #[test]
    fn stq_passes_every_aggregator_check(p in profile(4, 3)) {
        let out = stq(&p);
        prop_assert!(check_factoring(&p, &out).unwrap().passed);
        prop_assert!(check_parity(&p, &out).unwrap().passed);
        for r in check_pareto(&p, &out).unwrap() {
            prop_assert!(r.passed, "{}", r.property);
        }
    }

    #[test]
    fn parallel_beliefs_are_the_union_of_serial_beliefs(
        t in candidate(4),
        members in prop::collection::vec(0u64..16, 1..=3),
        moderate in any::<bool>(),
    ) {
        let op = if moderate { SerialOperator::ModerateContraction } else { SerialOperator::NaturalContraction };
        let members: Vec<Proposition> = members.into_iter().map(|b| Proposition::from_bits(4, b).unwrap()).collect();
        let s = BeliefState::new(t);
        let input = ContractionInput::new(members.clone()).unwrap();
        for agg in [Aggregator::Stq, Aggregator::MinRank] {
            let out = parallel_contract(&s, &input, op, &agg).unwrap();
            let union = members
                .iter()
                .map(|&a| contract_beliefs(&s, a).unwrap())
                .fold(Proposition::empty(4), |x, y| x | y);
            prop_assert_eq!(out.beliefs(), union);
        }
    }
}
