mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use reebseq::complex::lattice::rank_over;
use reebseq::reeb::{Sign, SignedWord};
use reebseq::{betti_groups, build_e1, build_reeb_graph, compute_e2, SectionPipeline, pi1_generators, reduce_word, reeb_betti, Coefficients, IntegerMatrix};

fn random_base(r: &mut impl Rng, g: &reebseq::ReebGraph) -> usize {
    r.gen_range(0..g.vertices.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reduction_is_idempotent_and_confluent(seed in any::<u64>(), len in 0usize..40) {
        let mut r = common::rng(seed);
        let g = common::random_reeb_graph(&mut r);
        let base = random_base(&mut r, &g);
        let w = common::random_word(&mut r, &g, base, len);
        let once = reduce_word(&g, &w).unwrap();
        prop_assert!(once.word.is_reduced());
        prop_assert_eq!(&reduce_word(&g, &once.word).unwrap(), &once);
        prop_assert_eq!(&common::reduce_in_random_order(&mut r, &w), &once.word);
        prop_assert_eq!(once.run_length, once.word.run_length());
        prop_assert_eq!(g.word_end(&once.word).unwrap(), g.word_end(&w).unwrap());
    }

    #[test]
    fn a_word_times_its_inverse_is_trivial(seed in any::<u64>(), len in 0usize..30) {
        let mut r = common::rng(seed);
        let g = common::random_reeb_graph(&mut r);
        let base = random_base(&mut r, &g);
        let w = common::random_word(&mut r, &g, base, len);
        let loop_ = w.concat(&w.inverse(&g).unwrap(), &g).unwrap();
        prop_assert!(reduce_word(&g, &loop_).unwrap().word.letters.is_empty());
    }

    #[test]
    fn generators_are_independent_reduced_loops(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let g = common::random_reeb_graph(&mut r);
        let base = random_base(&mut r, &g);
        let gens = pi1_generators(&g, base).unwrap();
        let component = g.components();
        let reachable_edges = g.edges.iter().filter(|e| component[e.source] == component[base]).count();
        let reachable_vertices = component.iter().filter(|&&c| c == component[base]).count();
        prop_assert_eq!(gens.len(), reachable_edges + 1 - reachable_vertices);
        // Abelianized edge counts must have full rank.
        let mut m = IntegerMatrix::zeros(g.edges.len(), gens.len());
        for (j, w) in gens.iter().enumerate() {
            prop_assert_eq!(w.base, base);
            prop_assert_eq!(g.word_end(w).unwrap(), base);
            prop_assert!(w.is_reduced());
            prop_assert!(!w.letters.is_empty());
            for l in &w.letters {
                let d = if l.sign == Sign::Plus { 1 } else { -1 };
                m.set(l.edge, j, m.get(l.edge, j) + BigInt::from(d));
            }
        }
        prop_assert_eq!(rank_over(Coefficients::Rationals, &m), gens.len());
        let (b0, b1) = reeb_betti(&g);
        prop_assert_eq!(b0, component.iter().max().unwrap() + 1);
        if b0 == 1 {
            prop_assert_eq!(gens.len(), b1);
        }
    }

    #[test]
    fn reeb_graph_of_an_instance_keeps_components(seed in any::<u64>()) {
        let inst = common::random_instance(seed, 10);
        let g = build_reeb_graph(&inst).unwrap();
        let b0 = betti_groups(&inst.complex, 0, Coefficients::Integers)[0].free_rank;
        prop_assert_eq!(reeb_betti(&g).0, b0);
        let b1 = betti_groups(&g.to_complex(), 1, Coefficients::Integers)[1].free_rank;
        prop_assert_eq!(reeb_betti(&g).1, b1);
        let p = SectionPipeline::new(&inst, Coefficients::Integers).unwrap();
        let e2 = compute_e2(&build_e1(&p).unwrap()).unwrap();
        prop_assert_eq!(e2.degrees[0].critical.free_rank, reeb_betti(&g).0);
        prop_assert_eq!(e2.degrees[0].section.free_rank, reeb_betti(&g).1);
    }
}

#[test]
fn parsing_round_trips() {
    let w = SignedWord::parse(2, "0+ 3- 1+").unwrap();
    assert_eq!(w.to_string(), "@2 [0+ 3- 1+]");
    assert_eq!(w.run_length(), 3);
    assert!(SignedWord::parse(0, "0* 1+").is_err());
}
