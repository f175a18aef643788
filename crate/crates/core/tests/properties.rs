use num::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use subtour::decomposition::{caratheodory_split, random_spanning_tree};
use subtour::laminar::{is_laminar, uncross};
use subtour::rational::ratio;
use subtour::reductions::{is_reduced, lift_point, preprocess, ReductionStatus};
use subtour::{Graph, QPoint, Rational, VertexSet};

/// Multigraph on `n` vertices from raw endpoint pairs, loops and parallels allowed.
fn multigraph(n: usize, raw: &[(usize, usize)]) -> Graph {
    let edges: Vec<(usize, usize)> = raw.iter().map(|&(u, v)| (u % n, v % n)).collect();
    Graph::new(n, &edges)
}

fn tree_average(g: &Graph, seed: u64, k: usize) -> QPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y = QPoint::zeros(g.m());
    let share = ratio(1, k as i64);
    for _ in 0..k {
        let t = random_spanning_tree(g, &mut rng);
        y = &y + &QPoint::indicator(g.m(), &t).scale(&share);
    }
    y
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qpoint_json_round_trip(nums in proptest::collection::vec((-50i64..50, 1i64..20), 0..12)) {
        let p = QPoint::new(nums.iter().map(|&(a, b)| ratio(a, b)).collect());
        let text = serde_json::to_string(&p).unwrap();
        let back: QPoint = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn edge_list_round_trip(n in 2usize..8, raw in proptest::collection::vec((0usize..8, 0usize..8), 0..14)) {
        let g = multigraph(n, &raw);
        let back = Graph::parse(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back.to_edge_list(), g.to_edge_list());
    }

    #[test]
    fn preprocessing_ends_reduced_or_infeasible(n in 3usize..8, raw in proptest::collection::vec((0usize..8, 0usize..8), 3..18)) {
        let g = multigraph(n, &raw);
        let (reduced, trace) = preprocess(&g);
        if trace.status == ReductionStatus::Reduced {
            prop_assert!(is_reduced(&reduced));
            // the zero point lifts to a point of the right length
            let lifted = lift_point(&trace, &QPoint::zeros(reduced.m())).unwrap();
            prop_assert_eq!(lifted.dim(), g.m());
        }
    }

    #[test]
    fn split_reconstructs_tree_averages(seed in any::<u64>(), k in 1usize..5, which in 0usize..3) {
        let g = [Graph::complete(4), Graph::complete(5), Graph::prism()][which].clone();
        let y = tree_average(&g, seed, k);
        let pieces = caratheodory_split(&g, &y).unwrap();
        prop_assert!(pieces.len() <= g.m() + 1);
        let mut total = Rational::zero();
        let mut sum = QPoint::zeros(g.m());
        for p in &pieces {
            prop_assert!(p.weight > Rational::zero());
            prop_assert!(g.is_spanning_tree(&p.tree));
            total += &p.weight;
            sum = &sum + &QPoint::indicator(g.m(), &p.tree).scale(&p.weight);
        }
        prop_assert_eq!(total, Rational::one());
        prop_assert_eq!(sum, y);
    }

    #[test]
    fn uncross_of_tree_tight_sets_is_laminar(seed in any::<u64>()) {
        // tight sets of a tree point are the vertex sets of its subtrees
        let g = Graph::complete(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_spanning_tree(&g, &mut rng);
        let x = QPoint::indicator(g.m(), &t);
        let tight: Vec<VertexSet> = (1u64..(1 << 5))
            .map(VertexSet::from_mask)
            .filter(|u| u.len() >= 2 && u.len() < 5)
            .filter(|u| x.sum_over(&g.induced_edges(u)) == Rational::from_integer((u.len() as i64 - 1).into()))
            .collect();
        let fam = uncross(&g, &tight, &x).unwrap();
        prop_assert!(is_laminar(&fam.sets));
    }
}
