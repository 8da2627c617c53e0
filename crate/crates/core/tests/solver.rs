use proptest::prelude::*;
use twinlab::numerics::certified_lower_bound;
use twinlab::randgen::{gnp, random_cograph, RandomGraphSpec};
use twinlab::solver::{brute_force_twin_width, exact_twin_width, greedy_sequence};
use twinlab::{verify_width, Trigraph};

fn graph_from_mask(n: usize, mask: u64) -> Trigraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 1..=n {
        for v in u + 1..=n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Trigraph::from_edge_list(n, &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_matches_brute_force(n in 2usize..=6, mask in any::<u64>()) {
        let g = graph_from_mask(n, mask);
        let r = exact_twin_width(&g, 1_000_000).unwrap();
        prop_assert!(r.exact);
        prop_assert_eq!(r.value, brute_force_twin_width(&g).unwrap());
        prop_assert!(verify_width(&g, &r.witness, r.value).unwrap());
        if r.value > 0 {
            prop_assert!(!verify_width(&g, &r.witness, r.value - 1).unwrap());
        }
    }

    #[test]
    fn greedy_width_is_an_upper_bound(n in 2usize..=7, mask in any::<u64>()) {
        let g = graph_from_mask(n, mask);
        let (seq, w) = greedy_sequence(&g);
        prop_assert!(verify_width(&g, &seq, w).unwrap());
        prop_assert!(w >= exact_twin_width(&g, 1_000_000).unwrap().value);
    }

    #[test]
    fn complement_invariance(n in 2usize..=7, mask in any::<u64>()) {
        let g = graph_from_mask(n, mask);
        let a = exact_twin_width(&g, 1_000_000).unwrap();
        let b = exact_twin_width(&g.complement().unwrap(), 1_000_000).unwrap();
        prop_assert!(a.exact && b.exact);
        prop_assert_eq!(a.value, b.value);
    }

    #[test]
    fn cographs_have_width_zero(n in 1usize..=10, seed in any::<u64>()) {
        let g = random_cograph(n, seed).unwrap();
        let r = exact_twin_width(&g, 1_000_000).unwrap();
        prop_assert!(r.exact);
        prop_assert_eq!(r.value, 0);
    }
}

#[test]
fn brute_force_examples() {
    assert_eq!(brute_force_twin_width(&Trigraph::complete(4)).unwrap(), 0);
    let c5 = Trigraph::from_edge_list(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
    assert_eq!(brute_force_twin_width(&c5).unwrap(), 2);
    let p4 = Trigraph::from_edge_list(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
    assert_eq!(brute_force_twin_width(&p4.complement().unwrap()).unwrap(), 1);
    assert!(brute_force_twin_width(&Trigraph::edgeless(7)).is_err());
}

#[test]
fn greedy_respects_certificate_on_g60() {
    let g = gnp(RandomGraphSpec::new(60, 0.5, 2024).unwrap()).unwrap();
    let (seq, w) = greedy_sequence(&g);
    assert!(verify_width(&g, &seq, w).unwrap());
    let mut certified_any = false;
    for b in 1..=20 {
        for d in 1..=30 {
            let c = certified_lower_bound(&g, b as f64, d as f64).unwrap();
            if c.certified {
                certified_any = true;
                assert!((w as f64) > c.certified_value.unwrap(), "b={b} d={d} w={w}");
            }
        }
    }
    assert!(certified_any);
}
