mod support;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spectral_turan::embeddings::{enumerate_injective, Pattern};
use spectral_turan::hypergraph::{
    binomial, complete_graph, cycle_graph, petersen_graph, turan_edge_count, turan_hypergraph,
};
use spectral_turan::solver::{solve_lambda, SolverConfig};
use spectral_turan::Hypergraph;

use support::oracles::{brute_force_inj, pascal, power_method_radius, turan_count_by_enumeration};

fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, r: usize, p: f64) -> Hypergraph {
    let edges: Vec<Vec<usize>> = spectral_turan::hypergraph::combinations(n, r)
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect();
    Hypergraph::new(n, r, edges).unwrap()
}

fn inj_oracle(pattern: &Pattern, host: &Hypergraph) -> usize {
    brute_force_inj(pattern.q(), pattern.graph().edges(), host.n(), host.edges())
}

#[test]
fn headline_counts() {
    let c5 = Pattern::c5();
    let petersen = petersen_graph();
    assert_eq!(inj_oracle(&c5, &petersen), 120);
    assert_eq!(enumerate_injective(&c5, &petersen).unwrap().copies(), 12);
    assert_eq!(inj_oracle(&c5, c5.graph()), 10);
    assert_eq!(c5.aut_count(), 10);
    assert_eq!(turan_count_by_enumeration(5, 5, 10), 32);
    assert_eq!(turan_hypergraph(5, 5, 10).unwrap().edge_count(), 32);
}

#[test]
fn enumeration_matches_brute_force_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let patterns = [Pattern::k2(), Pattern::k3(), Pattern::c5()];
    for _ in 0..40 {
        let n = rng.gen_range(3..=7);
        let p = rng.gen_range(0.2..0.9);
        let h = random_hypergraph(&mut rng, n, 2, p);
        for pat in &patterns {
            let fast = enumerate_injective(pat, &h).unwrap().len();
            assert_eq!(fast, inj_oracle(pat, &h), "{h:?}");
        }
    }
}

#[test]
fn enumeration_matches_brute_force_on_hypergraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let tight_path = Pattern::new(Hypergraph::new(4, 3, [[0, 1, 2], [1, 2, 3]]).unwrap()).unwrap();
    let patterns = [Pattern::single_edge(3), tight_path];
    for _ in 0..30 {
        let n = rng.gen_range(4..=7);
        let p = rng.gen_range(0.2..0.8);
        let h = random_hypergraph(&mut rng, n, 3, p);
        for pat in &patterns {
            assert_eq!(enumerate_injective(pat, &h).unwrap().len(), inj_oracle(pat, &h));
        }
    }
}

#[test]
fn turan_counts_match_enumeration() {
    for m in 1..=6 {
        for q in 1..=m {
            for n in 0..=14 {
                let expected = turan_count_by_enumeration(m, q, n);
                assert_eq!(turan_edge_count(m, q, n), expected, "m={m} q={q} n={n}");
                // |T| m^q <= C(m,q) n^q
                assert!(expected * (m as u128).pow(q as u32) <= pascal(m, q) * (n as u128).pow(q as u32));
            }
        }
    }
    for n in 0..30 {
        for k in 0..=n {
            assert_eq!(binomial(n as u64, k as u64), pascal(n, k));
        }
    }
}

#[test]
fn solver_matches_power_method() {
    let cfg = SolverConfig::new(2.0);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut hosts = vec![complete_graph(6), cycle_graph(7).unwrap(), petersen_graph()];
    for _ in 0..25 {
        let n = rng.gen_range(3..=10);
        let p = rng.gen_range(0.2..0.8);
        hosts.push(random_hypergraph(&mut rng, n, 2, p));
    }
    for h in hosts {
        if h.is_empty() {
            continue;
        }
        let oracle = power_method_radius(h.n(), h.edges());
        let r = solve_lambda(&Pattern::k2(), &h, &cfg).unwrap();
        assert!((r.lambda - oracle).abs() <= 1e-8, "{h:?}: {} vs {oracle}", r.lambda);
    }
}
