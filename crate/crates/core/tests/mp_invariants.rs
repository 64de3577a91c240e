//! Invariants of the numeric forward pass and the WL-hash mode on randomized
//! inputs, plus the encoding injectivity checks.

mod common;

use common::random_permutation;
use dhopc_core::coloring::{greedy_dhop_unique, Coloring};
use dhopc_core::features::{FeatureMatrix, UidScheme};
use dhopc_core::graph::Graph;
use dhopc_core::ilp::{encode_bipartite, write_bipartite, IlpInstance};
use dhopc_core::mp::{forward, forward_colored, EmbTables, GnnConfig, ParamSet};
use dhopc_core::rng::SplitMix64;
use dhopc_core::synth::er_graph;
use dhopc_core::wl::{
    distinguish, init_anonymous, init_colored, init_label_color, wl_hash, DistinguishScheme,
};

fn random_feats(n: usize, dim: usize, rng: &mut SplitMix64) -> FeatureMatrix {
    FeatureMatrix {
        scheme: UidScheme::None,
        seed: None,
        features: (0..n)
            .map(|_| (0..dim).map(|_| rng.next_signed_unit()).collect())
            .collect(),
    }
}

fn random_weighted_graph(n: usize, p: f64, rng: &mut SplitMix64) -> Graph {
    let base = er_graph(n, p, rng.next_u64()).unwrap();
    let edges = base
        .edges()
        .iter()
        .map(|e| (e.u, e.v, 2.0 * rng.next_signed_unit()))
        .collect();
    Graph::new(n, edges, None).unwrap()
}

#[test]
fn forward_is_permutation_equivariant_bit_exact() {
    let mut rng = SplitMix64::new(0xF0);
    for _ in 0..15 {
        let n = 2 + rng.next_below(20) as usize;
        let g = random_weighted_graph(n, 0.3, &mut rng);
        let cfg = GnnConfig {
            depth: 1 + rng.next_below(3) as usize,
            in_dim: 2,
            hidden_dim: 3,
            out_dim: 2,
        };
        let params = ParamSet::seeded(&cfg, 1, rng.next_u64()).unwrap();
        let feats = random_feats(n, 2, &mut rng);
        let out = forward(&g, &feats, &params, &cfg).unwrap();

        let pi = random_permutation(n, &mut rng);
        let edges_p: Vec<(usize, usize, f64)> =
            g.edges().iter().map(|e| (pi[e.u], pi[e.v], e.w)).collect();
        let gp = Graph::new(n, edges_p, None).unwrap();
        let mut feats_p = vec![Vec::new(); n];
        for v in 0..n {
            feats_p[pi[v]] = feats.features[v].clone();
        }
        let out_p = forward(
            &gp,
            &FeatureMatrix {
                scheme: UidScheme::None,
                seed: None,
                features: feats_p,
            },
            &params,
            &cfg,
        )
        .unwrap();
        for v in 0..n {
            assert_eq!(out[v], out_p[pi[v]], "n={n} v={v}");
        }
    }
}

#[test]
fn colored_forward_invariant_under_random_palette_bijections() {
    let mut rng = SplitMix64::new(0xC0105);
    for _ in 0..15 {
        let n = 3 + rng.next_below(15) as usize;
        let g = random_weighted_graph(n, 0.3, &mut rng);
        let (coloring, _) = greedy_dhop_unique(&g, 1).unwrap();
        let k = coloring.num_colors();
        let cfg = GnnConfig {
            depth: 2,
            in_dim: 1,
            hidden_dim: 3,
            out_dim: 1,
        };
        let params = ParamSet::seeded(&cfg, k, rng.next_u64()).unwrap();
        let feats = random_feats(n, 1, &mut rng);
        let out = forward_colored(&g, &coloring, &feats, &params, &cfg).unwrap();

        let sigma = random_permutation(k, &mut rng);
        let EmbTables::PerColor(tables) = &params.emb else {
            // k == 1 palettes degrade to a shared table; nothing to permute
            continue;
        };
        let mut rekeyed = tables.clone();
        for (c, t) in tables.iter().enumerate() {
            rekeyed[sigma[c]] = t.clone();
        }
        let recolored = Coloring::new(
            coloring.colors().iter().map(|&c| sigma[c]).collect(),
            coloring.d(),
        );
        let params2 = ParamSet {
            emb: EmbTables::PerColor(rekeyed),
            merges: params.merges.clone(),
        };
        let out2 = forward_colored(&g, &recolored, &feats, &params2, &cfg).unwrap();
        assert_eq!(out, out2);
    }
}

#[test]
fn wl_partition_never_coarsens() {
    let mut rng = SplitMix64::new(0x31);
    for _ in 0..10 {
        let n = 3 + rng.next_below(25) as usize;
        let g = er_graph(n, 0.2, rng.next_u64()).unwrap();
        let mut prev = wl_hash(&g, &init_anonymous(n), 0).unwrap();
        for r in 1..=6 {
            let cur = wl_hash(&g, &init_anonymous(n), r).unwrap();
            for u in 0..n {
                for v in 0..n {
                    if cur.node_hashes[u] == cur.node_hashes[v] {
                        assert_eq!(
                            prev.node_hashes[u], prev.node_hashes[v],
                            "round {r} merged nodes {u},{v}"
                        );
                    }
                }
            }
            prev = cur;
        }
    }
}

/// Distinguishing pairs: when color tokens separate two graphs, the
/// (label, color) tokens separate them too.
#[test]
fn label_color_mode_refines_color_mode_on_test_pairs() {
    let two_triangles = Graph::new(
        6,
        vec![
            (0, 1, 1.0),
            (1, 2, 1.0),
            (0, 2, 1.0),
            (3, 4, 1.0),
            (4, 5, 1.0),
            (3, 5, 1.0),
        ],
        None,
    )
    .unwrap();
    let c6 = common::cycle(6);
    let p6 = common::path(6);
    let star = {
        let edges = (1..6).map(|i| (0, i, 1.0)).collect();
        Graph::new(6, edges, None).unwrap()
    };
    let pairs = [
        (&two_triangles, &c6),
        (&p6, &c6),
        (&star, &p6),
        (&star, &c6),
    ];
    for (a, b) in pairs {
        for d in 1..=2 {
            let (ca, _) = greedy_dhop_unique(a, d).unwrap();
            let (cb, _) = greedy_dhop_unique(b, d).unwrap();
            for rounds in 1..=3 {
                let colored_separates = wl_hash(a, &init_colored(&ca), rounds).unwrap().graph_hash
                    != wl_hash(b, &init_colored(&cb), rounds).unwrap().graph_hash;
                if colored_separates {
                    let la = wl_hash(a, &init_label_color(a, &ca), rounds).unwrap();
                    let lb = wl_hash(b, &init_label_color(b, &cb), rounds).unwrap();
                    assert_ne!(la.graph_hash, lb.graph_hash, "d={d} rounds={rounds}");
                }
            }
        }
    }
}

#[test]
fn distinguish_separation_pair() {
    let two_triangles = Graph::new(
        6,
        vec![
            (0, 1, 1.0),
            (1, 2, 1.0),
            (0, 2, 1.0),
            (3, 4, 1.0),
            (4, 5, 1.0),
            (3, 5, 1.0),
        ],
        None,
    )
    .unwrap();
    let c6 = common::cycle(6);
    for rounds in 1..=4 {
        assert!(
            !distinguish(&two_triangles, &c6, DistinguishScheme::Anonymous, 1, rounds).unwrap()
        );
    }
    assert!(distinguish(&two_triangles, &c6, DistinguishScheme::LocalUid, 2, 2).unwrap());
}

#[test]
fn encode_bipartite_injective_under_coefficient_changes() {
    let base = IlpInstance {
        num_vars: 3,
        num_constraints: 2,
        objective: vec![1.0, 2.0, 3.0],
        rhs: vec![4.0, 5.0],
        entries: vec![(0, 0, 1.0), (0, 2, -2.0), (1, 1, 0.5)],
        integrality: None,
    };
    let reference = write_bipartite(&encode_bipartite(&base).unwrap());

    let mut c_changed = base.clone();
    c_changed.objective[1] = 7.0;
    let mut b_changed = base.clone();
    b_changed.rhs[0] = -4.0;
    let mut a_changed = base.clone();
    a_changed.entries[2] = (1, 1, 0.25);
    let mut a_moved = base.clone();
    a_moved.entries[2] = (1, 0, 0.5);

    for variant in [c_changed, b_changed, a_changed, a_moved] {
        let text = write_bipartite(&encode_bipartite(&variant).unwrap());
        assert_ne!(reference, text);
    }

    // triplet order is immaterial
    let mut reordered = base.clone();
    reordered.entries.reverse();
    let text = write_bipartite(&encode_bipartite(&reordered).unwrap());
    assert_eq!(reference, text);
}
