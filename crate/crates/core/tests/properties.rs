use proptest::prelude::*;

use switchlearn::generate::random_restriction;
use switchlearn::word::DEFAULT_ENUMERATION_BUDGET;
use switchlearn::{
    all_words_up_to, learn_automaton, product_diff_search, Edge, GrayBoxOracle, LearnerConfig,
    MembershipOracle, ObservationTable, PolynomialVectorField, RestrictionAutomaton,
    SwitchedSystemSpec, WhiteBoxEquivalence, Word,
};

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 0..=max_len).prop_map(Word::from_symbols)
}

fn automaton() -> impl Strategy<Value = RestrictionAutomaton> {
    (any::<u64>(), 1usize..=3).prop_map(|(seed, n)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        random_restriction(&mut rng, 5, n)
    })
}

fn oracle(g: &RestrictionAutomaton) -> GrayBoxOracle {
    let fields = (1..=g.alphabet_size())
        .map(|p| PolynomialVectorField::new(p, vec![vec![0.0]]).unwrap())
        .collect();
    GrayBoxOracle::new(SwitchedSystemSpec::new(1, 0, 8, fields, g.clone()).unwrap())
}

proptest! {
    #[test]
    fn prefix_and_suffix_reassemble(w in word(3, 12), j in 0usize..=12) {
        let j = j.min(w.len());
        prop_assert_eq!(w.prefix(j).concat(&w.suffix_from(j)), w.clone());
        prop_assert_eq!(w.prefix(j).len() + w.suffix_from(j).len(), w.len());
    }

    #[test]
    fn display_round_trips(w in word(3, 12)) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn enumeration_is_prefix_closed_and_unique(n in 1usize..=3, m in 0usize..=6) {
        let words: Vec<Word> = all_words_up_to(n, m, DEFAULT_ENUMERATION_BUDGET).unwrap().collect();
        let set: std::collections::HashSet<&Word> = words.iter().collect();
        prop_assert_eq!(set.len(), words.len());
        prop_assert_eq!(words.len() as u64, (0..=m as u32).map(|k| (n as u64).pow(k)).sum::<u64>());
        for w in &words {
            for p in w.prefixes() {
                prop_assert!(set.contains(&p));
            }
        }
        for pair in words.windows(2) {
            prop_assert!(pair[0].shortlex_cmp(&pair[1]).is_lt());
        }
    }

    #[test]
    fn membership_is_prefix_closed(g in automaton(), w in word(3, 10)) {
        let w = Word::from_symbols(w.symbols().iter().map(|&s| 1 + (s - 1) % g.alphabet_size()).collect::<Vec<_>>());
        if g.accepts(&w) {
            for p in w.prefixes() {
                prop_assert!(g.accepts(&p));
            }
        }
    }

    #[test]
    fn table_repairs_keep_it_well_formed(g in automaton(), cex in word(3, 6)) {
        let o = oracle(&g);
        let mut table = ObservationTable::new(&o).unwrap();
        let cex = Word::from_symbols(cex.symbols().iter().map(|&s| 1 + (s - 1) % g.alphabet_size()).collect::<Vec<_>>());
        if !cex.is_empty() {
            table.add_counterexample(&cex, &o).unwrap();
        }
        for _ in 0..50 {
            prop_assert!(table.is_well_formed());
            if table.fix_closedness(&o).unwrap().is_none() && table.fix_consistency(&o).unwrap().is_none() {
                break;
            }
        }
        prop_assert!(table.is_closed().unwrap() && table.is_consistent().unwrap());
        // every cached entry agrees with a fresh query
        for q in table.prefixes().iter().cloned().chain(table.extensions()) {
            for r in table.suffixes() {
                let w = q.concat(r);
                prop_assert_eq!(table.entry(&w), Some(o.membership(&w).unwrap()));
            }
        }
    }

    #[test]
    fn counterexamples_are_genuine(g in automaton()) {
        let o = oracle(&g);
        let eq = WhiteBoxEquivalence { truth: &g, max_len: 8 };
        let (h, trace) = learn_automaton(&o, &eq, &LearnerConfig::default()).unwrap();
        let hyps: Vec<_> = trace.hypotheses().collect();
        for (hyp, cex) in hyps.iter().zip(trace.counterexamples()) {
            prop_assert!(cex.len() <= 8);
            prop_assert_ne!(hyp.accepts(cex), g.accepts(cex));
        }
        prop_assert!(product_diff_search(&h, &g, 8).is_none());
        prop_assert!(h.is_deterministic());
    }
}

#[test]
fn single_self_loop_learns_one_node() {
    let g = RestrictionAutomaton::with_indexed_nodes(1, 0, 2, vec![Edge::new(0, 0, 2)]).unwrap();
    let o = oracle(&g);
    let eq = WhiteBoxEquivalence {
        truth: &g,
        max_len: 8,
    };
    let (h, _) = learn_automaton(&o, &eq, &LearnerConfig::default()).unwrap();
    assert_eq!(h.node_count(), 1);
    assert_eq!(h.edges(), vec![Edge::new(0, 0, 2)]);
}
