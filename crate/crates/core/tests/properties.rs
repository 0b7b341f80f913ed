use nc_hopf::cumulants::{
    classical_cumulants_from_moments, classical_moments_from_cumulants, free_cumulants_from_moments,
    free_moments_from_cumulants, MomentSequence,
};
use nc_hopf::hopf::{coproduct, counit_left, counit_right};
use nc_hopf::tree::{admissible_edge_cuts, hierarchy_tree, Tree};
use nc_hopf::{Alphabet, BarWord, Coefficient, Element, Letter, NonCrossingPartition, SetPartition, Variant, Word};
use proptest::prelude::*;

fn partition_from_rgs(rgs: &[usize]) -> SetPartition {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, &b) in rgs.iter().enumerate() {
        if b == blocks.len() {
            blocks.push(Vec::new());
        }
        blocks[b].push(i + 1);
    }
    SetPartition::new(blocks).unwrap()
}

/// Restricted growth strings give every set partition of `1..=n`.
fn set_partition(max_n: usize) -> impl Strategy<Value = SetPartition> {
    prop::collection::vec(any::<u32>(), 1..=max_n).prop_map(|raw| {
        let mut rgs = Vec::with_capacity(raw.len());
        let mut top = 0usize;
        for (i, r) in raw.iter().enumerate() {
            let b = if i == 0 { 0 } else { *r as usize % (top + 2) };
            top = top.max(b);
            rgs.push(b);
        }
        partition_from_rgs(&rgs)
    })
}

fn crosses(p: &SetPartition) -> bool {
    let label = |x: usize| p.blocks().iter().position(|b| b.contains(&x)).unwrap();
    let n = p.size();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    if label(a) == label(c) && label(b) == label(d) && label(a) != label(b) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u16..3, 1..=max_len).prop_map(|ls| Word::new(ls.into_iter().map(Letter).collect()).unwrap())
}

fn bar_word(max_parts: usize) -> impl Strategy<Value = BarWord<Word>> {
    prop::collection::vec(word(3), 0..=max_parts).prop_map(BarWord::new)
}

fn rational() -> impl Strategy<Value = Coefficient> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Coefficient::from_ratio(n, d))
}

proptest! {
    #[test]
    fn partition_text_round_trips(p in set_partition(9)) {
        let back: SetPartition = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(p.standardize(), p.clone());
    }

    #[test]
    fn noncrossing_test_matches_four_point_search(p in set_partition(8)) {
        prop_assert_eq!(p.is_noncrossing(), !crosses(&p));
        prop_assert_eq!(NonCrossingPartition::new(p.clone()).is_ok(), !crosses(&p));
    }

    #[test]
    fn restriction_standardizes_to_a_partition_of_the_subset(p in set_partition(8), mask in any::<u16>()) {
        let subset: Vec<usize> = (1..=p.size()).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let r = p.restrict(&subset);
        prop_assert_eq!(r.to_string().parse::<SetPartition>().unwrap(), r.clone());
        prop_assert_eq!(r.carrier(), subset.clone());
        prop_assert_eq!(r.standardize().size(), subset.len());
        if p.is_noncrossing() {
            prop_assert!(r.is_noncrossing());
        }
    }

    #[test]
    fn coproduct_is_counital_and_graded(b in bar_word(3)) {
        let x = Element::basis(b.clone());
        let d = coproduct(&b, Variant::Full);
        prop_assert_eq!(counit_left(&d), x.clone());
        prop_assert_eq!(counit_right(&d), x);
        for ((l, r), _) in &d {
            prop_assert_eq!(l.degree() + r.degree(), b.degree());
        }
    }

    #[test]
    fn half_coproducts_split_the_full_one(b in bar_word(3)) {
        let full = coproduct(&b, Variant::Full);
        let halves = &coproduct(&b, Variant::LeftPlus) + &coproduct(&b, Variant::RightPlus);
        prop_assert_eq!(halves, full.clone());
        let reduced = &coproduct(&b, Variant::Left) + &coproduct(&b, Variant::Right);
        prop_assert_eq!(reduced, coproduct(&b, Variant::Reduced));
    }

    #[test]
    fn coproduct_is_multiplicative(a in bar_word(2), b in bar_word(2)) {
        let lhs = coproduct(&a.concat(&b), Variant::Full);
        let rhs = coproduct(&a, Variant::Full).mul(&coproduct(&b, Variant::Full));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        let back: Coefficient = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn symbolic_coefficients_render_and_parse(a in rational(), b in rational(), e in 1u32..4) {
        let k = Coefficient::var("k1");
        let m = Coefficient::var("k2");
        let p = &(&a * &k.pow(e)) + &(&b * &m);
        let back: Coefficient = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn hierarchy_trees_render_and_parse(p in set_partition(8)) {
        prop_assume!(p.is_noncrossing());
        let l = NonCrossingPartition::new(p).unwrap();
        let t = hierarchy_tree(&l);
        prop_assert_eq!(t.degree(), l.as_set_partition().block_count());
        let back: Tree = t.to_string().parse().unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(admissible_edge_cuts(&t).len(), l.admissible_splits().len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn free_cumulants_invert_free_moments(vals in prop::collection::vec(rational(), 1..=5)) {
        let m = MomentSequence::from_positive(vals);
        let k = free_cumulants_from_moments(&m).unwrap();
        prop_assert_eq!(free_moments_from_cumulants(&k).unwrap(), m);
    }

    #[test]
    fn classical_cumulants_invert_moments(vals in prop::collection::vec(rational(), 1..=6)) {
        let m = MomentSequence::from_positive(vals);
        let c = classical_cumulants_from_moments(&m).unwrap();
        prop_assert_eq!(classical_moments_from_cumulants(&c).unwrap(), m);
    }
}

#[test]
fn alphabet_words_are_counted_exactly() {
    let a = Alphabet::generic(3);
    for n in 1..5 {
        assert_eq!(a.words(n).len(), 3usize.pow(n as u32));
    }
}
