mod oracle;

use proptest::prelude::*;
use rand::Rng;

use skein::generate::{random_grammar_tangle, random_input_specs, random_smoothing, random_type_a, seeded};
use skein::planar::DiscSpec;
use skein::tangle::Crossing;
use skein::{enumerate_smoothings, CrossingSign, LaurentPoly, OrientedSmoothing, Rational, SkeinElement, TangleDiagram};

fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, -6i64..=6), 0..6).prop_map(LaurentPoly::from_terms)
}

/// `sign * q^t * sum (-1)^j a_j q^{2j}` with `a_0, a_n > 0`.
fn alternating_strategy() -> impl Strategy<Value = LaurentPoly> {
    (
        prop::bool::ANY,
        -8i64..=8,
        prop::collection::vec(0i64..4, 0..5),
        1i64..4,
        1i64..4,
    )
        .prop_map(|(neg, t, mid, first, last)| {
            let mut a = vec![first];
            a.extend(mid);
            a.push(last);
            let s = if neg { -1 } else { 1 };
            LaurentPoly::from_terms(
                a.iter()
                    .enumerate()
                    .map(|(j, &c)| (s * if j % 2 == 0 { c } else { -c }, t + 2 * j as i64)),
            )
        })
}

fn random_element(rng: &mut impl Rng, spec: DiscSpec) -> SkeinElement {
    let basis = enumerate_smoothings(spec.strands(), spec.parity);
    let terms: Vec<_> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let s = basis[rng.gen_range(0..basis.len())].clone();
            let c = LaurentPoly::monomial(rng.gen_range(-3i64..=3), rng.gen_range(-4..=4));
            (s, c)
        })
        .collect();
    SkeinElement::normalize(spec.strands(), spec.parity, terms).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a - &a), &LaurentPoly::zero());
    }

    #[test]
    fn same_parity_sums_stay_alternating(p in alternating_strategy(), q in alternating_strategy()) {
        let cp = p.parity_class().unwrap().residue() as i64;
        let cq = q.parity_class().unwrap().residue() as i64;
        // shift q into the class of p
        let q = q.shift((cp - cq).rem_euclid(4));
        prop_assert_eq!(q.parity_class().unwrap(), p.parity_class().unwrap());
        let sum = &p + &q;
        if !sum.is_zero() {
            prop_assert!(sum.is_alternating(), "{} + {} = {}", p, q, sum);
            prop_assert_eq!(sum.parity_class().unwrap(), p.parity_class().unwrap());
        }
    }

    #[test]
    fn monomial_products_add_classes(p in alternating_strategy(), neg in prop::bool::ANY, e in -6i64..=6) {
        let m = LaurentPoly::monomial(if neg { -1 } else { 1 }, e);
        let prod = &p * &m;
        prop_assert!(prod.is_alternating());
        let expected = (p.parity_class().unwrap().residue() as i64
            + m.parity_class().unwrap().residue() as i64).rem_euclid(4);
        prop_assert_eq!(prod.parity_class().unwrap().residue() as i64, expected);
    }

    #[test]
    fn loop_multiplication_moves_leading_terms(p in alternating_strategy()) {
        let prod = &p * &LaurentPoly::loop_value();
        let (lo, hi) = p.leading_terms().unwrap();
        let (plo, phi) = prod.leading_terms().unwrap();
        prop_assert_eq!((plo.sign, &plo.magnitude, plo.exponent), (lo.sign, &lo.magnitude, lo.exponent - 1));
        prop_assert_eq!((phi.sign, &phi.magnitude, phi.exponent), (hi.sign, &hi.magnitude, hi.exponent + 1));
    }

    #[test]
    fn rotation_is_additive(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let d = rng.gen_range(1..=4);
        let specs = random_input_specs(&mut rng, d, 16);
        let diagram = random_type_a(&mut rng, &specs, 8);
        let sigmas: Vec<_> = specs.iter().map(|s| random_smoothing(&mut rng, s.strands(), s.parity)).collect();
        prop_assert!(skein::verify::check_additivity(&diagram, &sigmas).is_ok());
    }

    #[test]
    fn composition_matches_staged_action(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let d = rng.gen_range(1..=2);
        let inner_specs = random_input_specs(&mut rng, d, 8);
        let inner = random_type_a(&mut rng, &inner_specs, 3);
        let d = rng.gen_range(1..=2);
        let mut outer_specs = random_input_specs(&mut rng, d, 8);
        let i = rng.gen_range(0..outer_specs.len());
        outer_specs[i] = inner.out();
        let outer = random_type_a(&mut rng, &outer_specs, 3);
        let glued = outer.compose(i, &inner).unwrap();
        prop_assert!(glued.is_type_a());
        let inner_sigmas: Vec<_> = inner_specs.iter().map(|s| random_smoothing(&mut rng, s.strands(), s.parity)).collect();
        let mut outer_sigmas: Vec<_> = outer_specs.iter().map(|s| random_smoothing(&mut rng, s.strands(), s.parity)).collect();
        let mut all = outer_sigmas[..i].to_vec();
        all.extend(inner_sigmas.iter().cloned());
        all.extend(outer_sigmas[i + 1..].iter().cloned());
        outer_sigmas[i] = inner.apply(&inner_sigmas).unwrap();
        // the staged value may carry loops from the inner step
        let staged = outer.apply(&outer_sigmas).unwrap();
        let direct = glued.apply(&all).unwrap();
        prop_assert_eq!(direct.rotation_number(), staged.rotation_number());
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn operators_are_multilinear(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let specs = random_input_specs(&mut rng, 2, 10);
        let d = random_type_a(&mut rng, &specs, 4);
        let a = random_element(&mut rng, specs[0]);
        let b = random_element(&mut rng, specs[0]);
        let c = random_element(&mut rng, specs[1]);
        let sum = &a + &b;
        let lhs = SkeinElement::apply_operator(&d, &[&sum, &c]).unwrap();
        let rhs = &SkeinElement::apply_operator(&d, &[&a, &c]).unwrap()
            + &SkeinElement::apply_operator(&d, &[&b, &c]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn closed_tangles_match_oracle(seed in any::<u64>(), n in 1usize..=6) {
        let t = random_grammar_tangle(&mut seeded(seed), n, 1);
        let signs = t.effective_signs().unwrap();
        let (b0, b1) = (t.boundary()[0], t.boundary()[1]);
        let pd: Vec<[usize; 4]> = t
            .crossings()
            .iter()
            .map(|c| c.edges.map(|e| if e == b1 { b0 } else { e }))
            .collect();
        let positive: Vec<bool> = signs.iter().map(|s| *s == CrossingSign::Positive).collect();
        let expected = oracle::unnormalized_jones_signed(&pd, &positive, 0);
        let expected = LaurentPoly::from_terms(expected.iter().map(|(&e, &c)| (c, e)));
        let (jhat, j) = t.evaluate_link().unwrap();
        prop_assert_eq!(&jhat, &expected);
        prop_assert!(j.is_alternating(), "{}", j);

        // the same link written as a closed diagram
        let closed = TangleDiagram::new(
            0,
            pd.iter().zip(&signs).map(|(e, s)| Crossing { edges: *e, sign: Some(*s) }).collect(),
            vec![],
        ).unwrap();
        prop_assert_eq!(closed.evaluate_link().unwrap().0, expected);
    }

    #[test]
    fn relabelling_and_reprinting_preserve_value(seed in any::<u64>(), n in 1usize..=5, offset in 1usize..50) {
        let t = random_grammar_tangle(&mut seeded(seed), n, 3);
        let j = t.jones().unwrap();
        let shifted = TangleDiagram::new(
            t.k(),
            t.crossings().iter().map(|c| Crossing { edges: c.edges.map(|e| e * 7 + offset), sign: c.sign }).collect(),
            t.boundary().iter().map(|e| e * 7 + offset).collect(),
        ).unwrap();
        prop_assert_eq!(shifted.jones().unwrap(), j.clone());
        let reparsed: TangleDiagram = t.to_string().parse().unwrap();
        prop_assert_eq!(reparsed.jones().unwrap(), j.clone());
        let json = serde_json::to_string(&t).unwrap();
        let back: TangleDiagram = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, t);
        let jjson = serde_json::to_string(&j).unwrap();
        let jback: SkeinElement = serde_json::from_str(&jjson).unwrap();
        prop_assert_eq!(jback, j);
    }
}

#[test]
fn extreme_smoothings_bound_the_rotation() {
    for k in 1..=5 {
        for p in 0..2u8 {
            let (lo, hi) = (Rational::new(1 - k as i64, 2), Rational::new(k as i64 - 1, 2));
            assert_eq!(OrientedSmoothing::minimal(k, p).rotation_number(), lo);
            assert_eq!(OrientedSmoothing::maximal(k, p).rotation_number(), hi);
            for s in enumerate_smoothings(k, p) {
                let r = s.rotation_number();
                assert!(lo <= r && r <= hi, "{s}");
                assert_eq!(s.pairs().len(), k);
                assert_eq!(s.is_minimal(), r == lo);
                assert_eq!(s.is_maximal(), r == hi);
            }
        }
    }
}
