use proptest::prelude::*;

use spectral_walks::encoding::{canonical_int, decode_int, encode_int, encode_nat};
use spectral_walks::tree::{dipole_defect, dipole_value, words_up_to, DyadicTree, Word};

fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 0..=max_len).prop_map(|d| Word::binary(&d).unwrap())
}

proptest! {
    #[test]
    fn dipole_value_is_symmetric_and_equals_energy(x in arb_word(6), y in arb_word(6), extra in 0usize..2) {
        prop_assume!(!x.is_origin() && !y.is_origin());
        let depth = x.len().max(y.len()) + extra;
        let tree = DyadicTree::<i64>::new(depth).unwrap();
        let energy = tree.graph().energy_inner(&tree.dipole(&x).unwrap(), &tree.dipole(&y).unwrap()).unwrap();
        let value = dipole_value(&x, &y).unwrap();
        prop_assert_eq!(value, dipole_value(&y, &x).unwrap());
        prop_assert_eq!(value as i64, energy);
        prop_assert_eq!(value as usize, x.common_prefix_len(&y));
    }
}

#[test]
fn defect_vanishes_through_depth_seven() {
    for depth in 1..=7 {
        for x in words_up_to(depth, 2) {
            let defect = dipole_defect(&x, depth).unwrap();
            assert!(defect.values().iter().all(|v| *v == 0), "{x:?} at depth {depth}");
        }
    }
}

#[test]
fn prepending_is_the_sigma_map() {
    let mut words = vec![Word::origin()];
    words.extend(words_up_to(12, 2));
    for w in &words {
        let n = encode_nat(w).unwrap();
        assert_eq!(encode_nat(&w.prepend(0).unwrap()).unwrap(), 2 * n);
        assert_eq!(encode_nat(&w.prepend(1).unwrap()).unwrap(), 2 * n + 1);
    }
}

#[test]
fn integer_encoding_round_trips() {
    for w in words_up_to(12, 2) {
        assert_eq!(decode_int(encode_int(&w).unwrap()), canonical_int(&w).unwrap());
    }
    for n in -(1i64 << 11)..(1i64 << 11) {
        assert_eq!(encode_int(&decode_int(n)).unwrap(), n);
    }
}
