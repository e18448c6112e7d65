use fermap::equiv::{
    apply_symmetry, equivalent, fingerprint, BraidDirection, Budget, Equivalence, LocalClifford, SymmetryOp, Witness,
};
use fermap::ttree::{canonical_mapping, pair_for_vacuum};
use fermap::{FermionQubitMapping, ProductState, TernaryTree};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_op(n: usize, rng: &mut ChaCha8Rng) -> SymmetryOp {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    match rng.gen_range(0..5) {
        0 => SymmetryOp::QubitSwap(perm),
        1 => SymmetryOp::LocalBasisChange {
            qubit: rng.gen_range(0..n),
            clifford: *LocalClifford::all().choose(rng).unwrap(),
        },
        2 => SymmetryOp::PairBraid {
            mode: rng.gen_range(0..n),
            direction: if rng.gen() { BraidDirection::Positive } else { BraidDirection::Negative },
        },
        3 => SymmetryOp::SignChange(rng.gen_range(0..2 * n)),
        _ => SymmetryOp::FermionSwap(perm),
    }
}

fn mapping(n: usize, rng: &mut ChaCha8Rng) -> FermionQubitMapping {
    let t = TernaryTree::random(n, rng);
    if rng.gen() {
        canonical_mapping(&t)
    } else {
        pair_for_vacuum(&t, &ProductState::random(n, rng)).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symmetries_preserve_validity_and_fingerprint(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = mapping(n, &mut rng);
        let fp = fingerprint(&m);
        let mut cur = m;
        for _ in 0..6 {
            cur = apply_symmetry(&cur, &random_op(n, &mut rng)).unwrap();
            prop_assert!(cur.is_validated() && cur.validate().is_ok());
            prop_assert_eq!(fingerprint(&cur), fp.clone());
        }
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(n in 1usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = mapping(n, &mut rng);
        let ops: Vec<SymmetryOp> = (0..rng.gen_range(0..6)).map(|_| random_op(n, &mut rng)).collect();
        let b = Witness(ops).replay(&a).unwrap();
        prop_assert!(equivalent(&a, &a, Budget::default()).unwrap().is_equivalent());
        for (x, y) in [(&a, &b), (&b, &a)] {
            match equivalent(x, y, Budget::default()).unwrap() {
                Equivalence::Equivalent(w) => {
                    let text = w.to_string();
                    let replayed = Witness::parse(&text).unwrap().replay(x).unwrap();
                    prop_assert_eq!(replayed.pairs(), y.pairs());
                }
                other => prop_assert!(false, "{:?}", other),
            }
        }
        // An unrelated mapping gets the same verdict in both directions.
        let c = mapping(n, &mut rng);
        let ab = equivalent(&a, &c, Budget::default()).unwrap().is_equivalent();
        let ba = equivalent(&c, &a, Budget::default()).unwrap().is_equivalent();
        prop_assert_eq!(ab, ba);
    }
}
