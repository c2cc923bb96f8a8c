//! Property sweeps for the description-tree calculus: every closure
//! operation is certified against direct evaluation by seeded random pairs,
//! and the majorant machinery is checked node by node.

use baire::poly::{Description, LengthFn};
use baire::sample;
use proptest::prelude::*;
use rand::Rng;

/// Independent reference for the function-argument substitution: evaluate a
/// tree with an arbitrary function in place of the length argument. Checked,
/// so oversized samples can be skipped instead of crashing the sweep.
fn eval_with_fn(
    t: &Description,
    g: &dyn Fn(u64) -> Option<u64>,
    n: u64,
) -> Option<u64> {
    let mut args = vec![n];
    for c in t.children() {
        args.push(g(eval_with_fn(c, g, n)?)?);
    }
    t.node().eval(&args).ok()
}

fn sample_points(r: &mut sample::SampleRng, k: usize) -> Vec<(LengthFn, u64)> {
    (0..k)
        .map(|_| (sample::gen_length_fn_bounded(r, 24), r.gen_range(0..=10u64)))
        .collect()
}

#[test]
fn sum_and_product_match_pointwise_arithmetic() {
    let mut r = sample::rng(201);
    for _ in 0..200 {
        let a = sample::gen_description(&mut r, 3);
        let b = sample::gen_description(&mut r, 3);
        let sum = a.sum(&b).unwrap();
        let product = a.product(&b).unwrap();
        for (l, n) in sample_points(&mut r, 4) {
            let va = a.eval(&l, n).unwrap();
            let vb = b.eval(&l, n).unwrap();
            assert_eq!(sum.eval(&l, n).unwrap(), va + vb);
            assert_eq!(product.eval(&l, n).unwrap(), va * vb);
        }
    }
}

#[test]
fn plus_wraps_with_the_length_argument() {
    let mut r = sample::rng(202);
    for _ in 0..200 {
        let t = sample::gen_description(&mut r, 3);
        let plus = t.plus();
        for (l, n) in sample_points(&mut r, 4) {
            assert_eq!(
                plus.eval(&l, n).unwrap(),
                l.eval(t.eval(&l, n).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn scalar_substitution_matches_composed_evaluation() {
    let mut r = sample::rng(203);
    let mut checked = 0u32;
    for _ in 0..200 {
        let p = sample::gen_description(&mut r, 3);
        let q = sample::gen_description_small(&mut r, 2);
        let Ok(composed) = p.subst_second(&q) else {
            continue; // coefficient blow-up beyond u64 in the surgery itself
        };
        for (l, n) in sample_points(&mut r, 4) {
            let inner = q.eval(&l, n).unwrap();
            let Ok(reference) = p.eval(&l, inner) else {
                continue; // the composed value itself exceeds u64
            };
            assert_eq!(
                composed.eval(&l, n).unwrap(),
                reference,
                "P(l, Q(l, n)) at n={n}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 500, "too many oversized samples: {checked}");
}

#[test]
fn function_substitution_matches_composed_evaluation() {
    // Multilinear samples: the expansion in the surgery is exponential in
    // node exponents, so squared nodes at both levels are out of desk scale.
    let mut r = sample::rng(204);
    let mut checked = 0u32;
    for _ in 0..200 {
        let p = sample::gen_description_small(&mut r, 2);
        let q = sample::gen_description_small(&mut r, 2);
        let Ok(composed) = p.subst_fn(&q) else {
            continue; // coefficient blow-up beyond u64 in the surgery itself
        };
        for (l, n) in sample_points(&mut r, 3) {
            let g = |x: u64| q.eval(&l, x).ok();
            let Some(reference) = eval_with_fn(&p, &g, n) else {
                continue;
            };
            assert_eq!(
                composed.eval(&l, n).ok(),
                Some(reference),
                "P(Q(l,·), n) at n={n}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 400, "too many oversized samples: {checked}");
}

#[test]
fn trees_denote_running_times() {
    // Monotone in n, and monotone under pointwise-larger length functions.
    let mut r = sample::rng(205);
    for _ in 0..150 {
        let t = sample::gen_description(&mut r, 3);
        let small = sample::gen_length_fn_bounded(&mut r, 16);
        // A pointwise dominating length function.
        let big = LengthFn::new(
            small.table().iter().map(|v| v + 3).collect(),
            small.tail(),
        )
        .unwrap();
        assert!(big.dominates_on(&small, 32));
        for n in 0..10u64 {
            let v_small_n = t.eval(&small, n).unwrap();
            let v_small_n1 = t.eval(&small, n + 1).unwrap();
            assert!(v_small_n1 >= v_small_n, "monotone in n");
            assert!(t.eval(&big, n).unwrap() >= v_small_n, "monotone in l");
        }
    }
}

#[test]
fn majorants_dominate_every_node_on_the_diagonal() {
    let mut r = sample::rng(206);
    for _ in 0..500 {
        let t = sample::gen_description(&mut r, 4);
        let m = t.majorant();
        assert_eq!(m.height, t.height());
        for n in [0u64, 1, 2, 5, 17, 64] {
            let pn = m.bound.eval(n).unwrap();
            assert!(pn >= n, "p(n) >= n");
            for node in t.nodes() {
                let diag = node.eval(&vec![n; node.arity()]).unwrap();
                assert!(pn >= diag, "p({n}) = {pn} < node diagonal {diag}");
            }
        }
    }
}

#[test]
fn majorant_iterates_form_a_chain() {
    let mut r = sample::rng(207);
    for _ in 0..200 {
        let t = sample::gen_description(&mut r, 3);
        let m = t.majorant();
        let l = sample::gen_length_fn_bounded(&mut r, 32);
        for n in [0u64, 3, 9] {
            let mut prev = m.iterate(&l, n, 0).unwrap();
            for i in 1..=m.height + 2 {
                let next = m.iterate(&l, n, i).unwrap();
                assert!(next >= prev, "p_{i} >= p_{}", i - 1);
                prev = next;
            }
        }
    }
}

proptest! {
    // Serde round trips are structural identities for any generated tree.
    #[test]
    fn description_serde_roundtrip(seed in 0u64..500) {
        let mut r = sample::rng(seed);
        let t = sample::gen_description(&mut r, 3);
        let json = serde_json::to_string(&t).unwrap();
        let back: Description = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn length_fn_eval_is_monotone(seed in 0u64..500) {
        let mut r = sample::rng(seed);
        let l = sample::gen_length_fn(&mut r, 32, 3);
        let mut prev = 0;
        for n in 0..40u64 {
            let v = l.eval(n).unwrap();
            prop_assert!(v >= prev);
            prev = v;
        }
    }
}
