mod common;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sepgamma::cycles::{count_cycles_by_length, enumerate_cycles};
use sepgamma::gamma::{
    classify_gamma2_zero, f_to_h, gamma1, gamma2, gamma_full_ordered, gamma_to_h, gamma_truncated_ordered,
    gamma_via_blocks_ordered, h_to_f, h_to_gamma, is_palindromic, polytope_dim,
};
use sepgamma::graph::io::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6};
use sepgamma::numeric::{binomial, pow2};
use sepgamma::random::{run_experiment, sample_er, to_csv, ExperimentConfig};
use sepgamma::triangulation::{
    enumerate_faces, enumerate_faces_with, is_face, is_polytope_edge, Caps, EdgeOrder, Mode, OrientedEdge,
};
use sepgamma::Graph;

use common::{brute_cycle_counts, naive_f_vector, random_connected};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1usize..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::sample::subsequence(pairs, 0..=len).prop_map(move |e| Graph::new(n, e).unwrap())
    })
}

fn connected(max_n: usize, max_extra: usize) -> impl Strategy<Value = Graph> {
    (2usize..=max_n, 0..=max_extra, any::<u64>()).prop_map(|(n, extra, seed)| {
        random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n, extra)
    })
}

fn ints(v: &[BigUint]) -> Vec<BigInt> {
    v.iter().cloned().map(BigInt::from).collect()
}

fn as_u64(v: &[BigUint]) -> Vec<u64> {
    v.iter().map(|x| u64::try_from(x).unwrap()).collect()
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in graph(8)) {
        let text = emit_graph6(&g).unwrap();
        let back = parse_graph6(&text).unwrap();
        prop_assert!(back.same_edge_set(&g));
        prop_assert_eq!(back.n(), g.n());
        let el = parse_edge_list(&emit_edge_list(&g)).unwrap();
        // an edge list cannot record trailing isolated vertices
        let sorted = |h: &Graph| { let mut e: Vec<_> = h.edges().collect(); e.sort_unstable(); e };
        prop_assert!(g.m() == 0 || sorted(&el) == sorted(&g));
    }

    #[test]
    fn cycle_counts_match_brute_force(g in graph(7)) {
        let lib = if g.n() >= 3 { count_cycles_by_length(&g, g.n()).unwrap() } else { Default::default() };
        let brute = brute_cycle_counts(&g);
        let lib: Vec<_> = lib.into_iter().filter(|e| e.1 > 0).collect();
        let brute: Vec<_> = brute.into_iter().collect();
        prop_assert_eq!(lib, brute);
    }

    #[test]
    fn faces_match_the_naive_oracle(g in connected(6, 3), seed in any::<u64>()) {
        prop_assume!(g.m() <= 8);
        let order = EdgeOrder::shuffled(g.m(), seed);
        let fast = enumerate_faces(&g, &order, Mode::Full).unwrap();
        prop_assert_eq!(as_u64(&fast.f), naive_f_vector(&g, &order));
    }

    #[test]
    fn f_vector_is_order_independent(g in graph(6), a in any::<u64>(), b in any::<u64>()) {
        let f = |s| enumerate_faces_with(&g, &EdgeOrder::shuffled(g.m(), s), Mode::UpTo(g.m()), Caps::default()).unwrap().f;
        prop_assert_eq!(f(a), f(b));
    }

    #[test]
    fn faces_and_nonfaces_are_complementary(g in graph(7), k in 1usize..=4, seed in any::<u64>()) {
        let rep = enumerate_faces_with(&g, &EdgeOrder::shuffled(g.m(), seed), Mode::UpTo(k), Caps::default()).unwrap();
        for l in 1..rep.f.len() {
            prop_assert_eq!(&rep.f[l] + &rep.nonfaces[l], pow2(l) * binomial(g.m(), l));
        }
    }

    #[test]
    fn polytope_edges_are_faces_of_every_triangulation(g in connected(6, 5), seed in any::<u64>()) {
        let order = EdgeOrder::shuffled(g.m(), seed);
        let cycles = if g.n() >= 3 { enumerate_cycles(&g, 4.min(g.n())).unwrap() } else { Vec::new() };
        let max_len = if g.n() >= 3 { 4.min(g.n()) } else { 4 };
        let all: Vec<OrientedEdge> = (0..2 * g.m()).map(OrientedEdge::from_index).collect();
        for (i, &a) in all.iter().enumerate() {
            for &b in &all[i + 1..] {
                if is_polytope_edge(&g, a, b) {
                    prop_assert!(is_face(&g, &order, &[a, b], &cycles, max_len).unwrap());
                }
            }
        }
    }

    #[test]
    fn gamma_invariants(g in connected(7, 6), seed in any::<u64>()) {
        let order = EdgeOrder::shuffled(g.m(), seed);
        let full = gamma_full_ordered(&g, &order, Caps::default()).unwrap();
        let d = polytope_dim(&g);
        prop_assert!(is_palindromic(&full.h));
        if d >= 2 {
            prop_assert_eq!(full.gamma_at(1), gamma1(&g));
        }
        prop_assert_eq!(full.gamma_at(2), gamma2(&g, &order).unwrap());
        prop_assert!(!full.gamma_at(2).is_negative());
        prop_assert_eq!(classify_gamma2_zero(&g).zero, full.gamma_at(2).is_zero());
        let blocks = gamma_via_blocks_ordered(&g, None, &order, Caps::default()).unwrap();
        prop_assert_eq!(&blocks.gamma, &full.gamma);
        for k in 0..=d / 2 {
            let t = gamma_truncated_ordered(&g, k, &order, Caps::default()).unwrap();
            prop_assert_eq!(&t.gamma[..], &full.gamma[..=k]);
        }
    }

    #[test]
    fn disconnected_gamma_is_a_product(a in connected(4, 3), b in connected(4, 3)) {
        let shift = a.n();
        let edges = a.edges().chain(b.edges().map(|(u, v)| (u + shift, v + shift)));
        let both = Graph::new(a.n() + b.n(), edges).unwrap();
        let ga = gamma_full_ordered(&a, &EdgeOrder::identity(a.m()), Caps::default()).unwrap().gamma;
        let gb = gamma_full_ordered(&b, &EdgeOrder::identity(b.m()), Caps::default()).unwrap().gamma;
        let mut prod = vec![BigInt::zero(); ga.len() + gb.len() - 1];
        for (i, x) in ga.iter().enumerate() {
            for (j, y) in gb.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let g = gamma_full_ordered(&both, &EdgeOrder::identity(both.m()), Caps::default()).unwrap();
        prod.resize(g.gamma.len(), BigInt::zero());
        prop_assert_eq!(g.gamma, prod);
        // the whole-graph face count is the join of the two complexes
        let f = enumerate_faces_with(&both, &EdgeOrder::identity(both.m()), Mode::UpTo(both.m()), Caps::default()).unwrap().f;
        prop_assert_eq!(trim(ints(&f)), trim(g.f));
    }

    #[test]
    fn transforms_round_trip(tail in proptest::collection::vec(-50i64..50, 0..4), extra in 0usize..4) {
        let gamma: Vec<BigInt> = std::iter::once(1).chain(tail).map(BigInt::from).collect();
        let d = 2 * (gamma.len() - 1) + extra;
        let h = gamma_to_h(&gamma, d);
        prop_assert!(is_palindromic(&h));
        let f = h_to_f(&h, d);
        prop_assert_eq!(f_to_h(&f, d).unwrap(), h.clone());
        let mut back = h_to_gamma(&h).unwrap();
        back.resize(gamma.len(), BigInt::zero());
        prop_assert_eq!(&back[..], &gamma[..]);
    }

    #[test]
    fn sampler_is_deterministic(n in 3usize..40, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = sample_er(n, p, seed);
        prop_assert_eq!(&g, &sample_er(n, p, seed));
        prop_assert!(g.edges().all(|(u, v)| u < v && v < n));
    }
}

#[test]
fn sample_records_are_consistent() {
    let cfg = ExperimentConfig::parse("beta=0.5 n=8,10,14 trials=6 k=3 seed=5").unwrap();
    let records = run_experiment(&cfg).unwrap();
    for r in &records {
        for l in 1..=cfg.k {
            assert_eq!(
                &r.faces[l - 1] + &r.nonfaces[l - 1],
                pow2(l) * binomial(r.edges, l),
                "n {} trial {}",
                r.n,
                r.trial
            );
        }
        let g = sample_er(r.n, cfg.p(r.n), r.seed);
        let cy = BigInt::from(g.cyclomatic_number());
        assert_eq!(r.gamma[1], BigInt::from(2) * &cy);
        let n1 = BigInt::from(r.nonfaces[1].clone());
        assert_eq!(r.gamma[2], BigInt::from(2) * &cy * (&cy + 2) - n1);
        let order = EdgeOrder::identity(g.m());
        let check = if r.n <= 10 {
            gamma_full_ordered(&g, &order, Caps::default()).unwrap()
        } else {
            gamma_via_blocks_ordered(&g, Some(cfg.k), &order, Caps::default()).unwrap()
        };
        for i in 0..=cfg.k {
            assert_eq!(r.gamma[i], check.gamma_at(i), "n {} trial {}", r.n, r.trial);
        }
        assert_eq!(r.cycles_of_length(3), brute_cycle_counts(&g).get(&3).copied().unwrap_or(0));
    }
}

#[test]
fn experiment_csv_is_schedule_independent() {
    let cfg = ExperimentConfig::parse("beta=0.7 n=20,30 trials=12 k=2 seed=3").unwrap();
    let a = to_csv(&run_experiment(&cfg).unwrap(), cfg.k);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| to_csv(&run_experiment(&cfg).unwrap(), cfg.k));
    assert_eq!(a, b);
}

/// Locked output of the first verified run. The closed-form γ of each
/// record is rechecked by truncated enumeration of the regenerated graph.
#[test]
fn golden_experiment() {
    let cfg = ExperimentConfig::parse("beta=0.5 n=16 trials=12 k=2 seed=2024").unwrap();
    let records = run_experiment(&cfg).unwrap();
    let csv = to_csv(&records, cfg.k);
    let golden = include_str!("data/er_beta0.5_n16_k2_seed2024.csv");
    assert_eq!(csv, golden);
    for r in &records {
        let g = sample_er(16, cfg.p(16), r.seed);
        let t = gamma_truncated_ordered(&g, 2, &EdgeOrder::shuffled(g.m(), r.seed), Caps::default()).unwrap();
        assert_eq!(r.gamma[..], t.gamma[..]);
    }
}

#[test]
fn mean_edge_count_is_binomial() {
    // 10^4 samples of G(30, 1/2): the mean must sit within four standard
    // errors of C(30,2)/2, the variance being C(30,2)/4
    let trials = 10_000;
    let total: usize = (0..trials).map(|i| sample_er(30, 0.5, 77 + i as u64).m()).sum();
    let mean = total as f64 / trials as f64;
    let se = (435.0f64 / 4.0 / trials as f64).sqrt();
    assert!((mean - 217.5).abs() < 4.0 * se, "mean {mean}");
}
