use proptest::prelude::*;

use majordex::bench::{measure, GeneratorId};
use majordex::colexgen::gen_colex;
use majordex::graygen::{gen1_gray, reconstruct};
use majordex::mcmahon::{alpha, compose, phi, psi, psi_inv, transposition};
use majordex::oracle::{brute_bounded, mahonian, transposition_distance};
use majordex::permgen::{gen_perm_major_with_codes, PermEmission};
use majordex::seqcore::{
    are_close, colex_cmp, difference_and_pivot, is_subexcedant, max_weight, weight, Difference,
};
use majordex::{BoundingSequence, Permutation, SubexcedantSeq};

fn subexcedant(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_n).prop_flat_map(|n| (0..n).map(|i| 0..=i).collect::<Vec<_>>())
}

fn permutation(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_n).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
}

fn weight_instance(max_n: usize) -> impl Strategy<Value = (usize, usize)> {
    (1..=max_n).prop_flat_map(|n| (0..=max_weight(n), Just(n)))
}

fn bounds() -> impl Strategy<Value = Vec<usize>> {
    (1..=6usize).prop_flat_map(|n| {
        prop::collection::vec(0..=3usize, n - 1).prop_map(|tail| {
            let mut b = vec![0];
            b.extend(tail.into_iter().map(|v| v + 1));
            b
        })
    })
}

proptest! {
    #[test]
    fn psi_round_trip(t in subexcedant(12)) {
        let seq = SubexcedantSeq::new(t.clone()).unwrap();
        let pi = psi(&seq);
        prop_assert_eq!(pi.major_index(), weight(&t));
        prop_assert_eq!(psi_inv(&pi).into_vec(), t);
    }

    #[test]
    fn psi_inv_round_trip(p in permutation(12)) {
        let pi = Permutation::new(p).unwrap();
        let code = psi_inv(&pi);
        prop_assert!(is_subexcedant(code.as_slice()));
        prop_assert_eq!(code.weight(), pi.major_index());
        prop_assert_eq!(psi(&code), pi);
    }

    #[test]
    fn closeness_is_symmetric(s in subexcedant(8), t in subexcedant(8)) {
        prop_assert_eq!(are_close(&s, &t), are_close(&t, &s));
    }

    #[test]
    fn difference_window_preserves_weight(s in subexcedant(9), t in subexcedant(9)) {
        if let Ok(Difference::Window(d)) = difference_and_pivot(&s, &t) {
            prop_assert_eq!(d.a.iter().sum::<i64>(), 0);
            prop_assert!(d.p >= 3);
            prop_assert!(s[d.p - 1] != t[d.p - 1]);
            prop_assert_eq!(&s[d.p..], &t[d.p..]);
        }
    }

    #[test]
    fn colex_cmp_is_antisymmetric(a in subexcedant(6), b in subexcedant(6)) {
        if a.len() == b.len() {
            prop_assert_eq!(colex_cmp(&a, &b), colex_cmp(&b, &a).reverse());
        }
    }

    #[test]
    fn transposition_distance_basics(p in permutation(10), a in 1..=10usize, b in 1..=10usize) {
        let n = p.len();
        let pi = Permutation::new(p.clone()).unwrap();
        prop_assert!(transposition_distance(&p, &p).unwrap() == 0);
        if a <= n && b <= n && a != b {
            let swapped = compose(&pi, &transposition(n, a, b).unwrap()).unwrap();
            prop_assert_eq!(transposition_distance(&p, swapped.as_slice()).unwrap(), 1);
            prop_assert_eq!(transposition_distance(swapped.as_slice(), &p).unwrap(), 1);
        }
    }

    #[test]
    fn alpha_is_an_involution((k, n) in weight_instance(20)) {
        let a = alpha(n, k).unwrap();
        prop_assert_eq!(compose(&a, &a).unwrap(), Permutation::identity(n));
    }

    #[test]
    fn phi_is_an_involution(j in 2..=20usize, sj in 0..20usize, i in 1..=25usize) {
        let sj = sj % (j - 1) + 1;
        prop_assert_eq!(phi(j, sj, phi(j, sj, i)), i);
    }

    #[test]
    fn mahonian_symmetry((k, n) in weight_instance(20)) {
        prop_assert_eq!(mahonian(n, k).unwrap(), mahonian(n, max_weight(n) - k).unwrap());
    }

    #[test]
    fn colex_matches_oracle(b in bounds(), k in 0..=18usize) {
        let bs = BoundingSequence::new(b).unwrap();
        let mut got = Vec::new();
        gen_colex(k, &bs, |c: &[usize]| got.push(c.to_vec()));
        prop_assert_eq!(got, brute_bounded(k, &bs));
    }

    #[test]
    fn reconstruct_matches_gen1((k, n) in weight_instance(9)) {
        let mut full = Vec::new();
        gen1_gray(k, n, |c: &[usize]| full.push(c.to_vec())).unwrap();
        let mut rebuilt = Vec::new();
        reconstruct(k, n, |c: &[usize]| rebuilt.push(c.to_vec())).unwrap();
        prop_assert_eq!(full.len() as u64, mahonian(n, k).unwrap());
        prop_assert_eq!(full, rebuilt);
    }

    #[test]
    fn perm_driver_tracks_psi((k, n) in weight_instance(9)) {
        let mut ok = true;
        gen_perm_major_with_codes(k, n, |s: &[usize], e: PermEmission<'_>| {
            ok &= psi(&SubexcedantSeq::new(s.to_vec()).unwrap()).as_slice() == e.sigma;
            ok &= e.step_transpositions <= 3;
        })
        .unwrap();
        prop_assert!(ok);
    }

    #[test]
    fn measured_objects_match_mahonian((k, n) in weight_instance(8)) {
        for g in GeneratorId::ALL {
            let stats = measure(g, k, n).unwrap();
            prop_assert_eq!(stats.objects, mahonian(n, k).unwrap());
            prop_assert!(stats.ratio.is_finite());
        }
    }
}

#[test]
fn gray2_never_exceeds_three_qterminal_calls() {
    for n in 1..=9 {
        for k in 0..=max_weight(n) {
            let stats = measure(GeneratorId::Gray2, k, n).unwrap();
            assert!(stats.max_qterminal_run <= 3, "n={n} k={k}: {}", stats.max_qterminal_run);
        }
    }
    // the four-node chain of S(11, 7) is present without pruning
    assert!(measure(GeneratorId::Gray1, 11, 7).unwrap().max_qterminal_run >= 4);
    assert!(measure(GeneratorId::Gray2, 11, 7).unwrap().max_qterminal_run <= 3);
}

#[test]
fn gray2_is_cheaper_than_gray1_when_qterminal_heavy() {
    for n in 6..=12 {
        let k = max_weight(n) - 2;
        let g1 = measure(GeneratorId::Gray1, k, n).unwrap();
        let g2 = measure(GeneratorId::Gray2, k, n).unwrap();
        assert!(g2.ratio <= g1.ratio, "n={n}: {} > {}", g2.ratio, g1.ratio);
    }
}
