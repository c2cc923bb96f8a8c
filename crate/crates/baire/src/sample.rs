//! Deterministic sample generators for property sweeps and calibration.
//!
//! Everything is driven by an explicit seed; repeated runs with the same
//! seed produce the same samples, machines, and traces. The generators stay
//! at desk scale on purpose: bounded description depth, bounded length
//! functions, small tables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::oracle::{Oracle, Pattern, TableOracle};
use crate::poly::{Description, LengthFn, MultiPoly, Tail, UniPoly};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gen_bits(r: &mut SampleRng, max_len: usize) -> BitString {
    let len = r.gen_range(0..=max_len);
    BitString::from_bits((0..len).map(|_| r.gen_bool(0.5)).collect())
}

pub fn gen_unipoly(r: &mut SampleRng, max_degree: usize, max_coef: u64) -> UniPoly {
    let degree = r.gen_range(0..=max_degree);
    UniPoly::from_coeffs((0..=degree).map(|_| r.gen_range(0..=max_coef)).collect())
}

/// A node polynomial with at least one term; exponents and coefficients stay
/// small so deep trees still evaluate within checked arithmetic.
pub fn gen_multipoly(r: &mut SampleRng, arity: usize) -> MultiPoly {
    let n_terms = r.gen_range(1..=3);
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let exps: Vec<u32> = (0..arity).map(|_| r.gen_range(0..=2)).collect();
        terms.push((exps, r.gen_range(1..=3u64)));
    }
    MultiPoly::new(arity, terms).expect("generated arity is consistent")
}

/// A description tree of height at most `max_depth` with at most two
/// children per node.
pub fn gen_description(r: &mut SampleRng, max_depth: usize) -> Description {
    let n_children = if max_depth == 0 { 0 } else { r.gen_range(0..=2) };
    let children: Vec<Description> = (0..n_children)
        .map(|_| gen_description(r, max_depth - 1))
        .collect();
    let node = gen_multipoly(r, children.len() + 1);
    Description::new(node, children).expect("generated arity is consistent")
}

/// A multilinear node polynomial (exponents at most one, tiny coefficients),
/// for sweeps whose values must never leave checked range.
pub fn gen_multipoly_small(r: &mut SampleRng, arity: usize) -> MultiPoly {
    let n_terms = r.gen_range(1..=2);
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let exps: Vec<u32> = (0..arity).map(|_| r.gen_range(0..=1)).collect();
        terms.push((exps, r.gen_range(1..=2u64)));
    }
    MultiPoly::new(arity, terms).expect("generated arity is consistent")
}

/// A small multilinear description tree; composition chains of these stay
/// far inside `u64`.
pub fn gen_description_small(r: &mut SampleRng, max_depth: usize) -> Description {
    let n_children = if max_depth == 0 { 0 } else { r.gen_range(0..=2) };
    let children: Vec<Description> = (0..n_children)
        .map(|_| gen_description_small(r, max_depth - 1))
        .collect();
    let node = gen_multipoly_small(r, children.len() + 1);
    Description::new(node, children).expect("generated arity is consistent")
}

/// A monotone length function bounded by `max_value` everywhere (constant
/// tail), as the majorant sweeps require.
pub fn gen_length_fn_bounded(r: &mut SampleRng, max_value: u64) -> LengthFn {
    let len = r.gen_range(1..=8);
    let mut table = Vec::with_capacity(len);
    let mut v = r.gen_range(0..=max_value / 2);
    for _ in 0..len {
        v = (v + r.gen_range(0..=max_value / 4)).min(max_value);
        table.push(v);
    }
    LengthFn::new(table, Tail::Constant).expect("generated table is monotone")
}

/// A monotone length function that may keep growing affinely.
pub fn gen_length_fn(r: &mut SampleRng, max_value: u64, max_slope: u64) -> LengthFn {
    let mut l = gen_length_fn_bounded(r, max_value);
    if r.gen_bool(0.5) {
        let slope = r.gen_range(1..=max_slope);
        l = LengthFn::new(l.table().to_vec(), Tail::Affine { slope })
            .expect("table already validated");
    }
    l
}

/// An arbitrary (usually non-monotone) table oracle with small support.
pub fn gen_table_oracle(r: &mut SampleRng, max_key_len: usize, max_val_len: usize) -> Oracle {
    let n = r.gen_range(0..=6);
    let entries = (0..n)
        .map(|_| (gen_bits(r, max_key_len), gen_bits(r, max_val_len)))
        .collect();
    Oracle::Table(TableOracle::new(entries, gen_bits(r, max_val_len)))
}

/// A length-monotone table oracle: all strings up to a small cover length
/// are listed with per-length equal answer lengths, non-decreasing in the
/// length; the default answers everything longer with a string at least as
/// long as the last covered class.
pub fn gen_reg_table_oracle(r: &mut SampleRng) -> Oracle {
    let cover = r.gen_range(1..=3usize);
    let mut entries = Vec::new();
    let mut answer_len = r.gen_range(0..=3usize);
    for len in 0..=cover {
        for s in BitString::all_of_length(len) {
            entries.push((s, gen_exact_len(r, answer_len)));
        }
        answer_len += r.gen_range(0..=3usize);
    }
    let default_len = answer_len + r.gen_range(0..=4usize);
    let default = gen_exact_len(r, default_len);
    Oracle::Table(TableOracle::new(entries, default))
}

fn gen_exact_len(r: &mut SampleRng, len: usize) -> BitString {
    BitString::from_bits((0..len).map(|_| r.gen_bool(0.5)).collect())
}

/// A length-monotone closed-form oracle.
pub fn gen_reg_pattern_oracle(r: &mut SampleRng) -> Oracle {
    match r.gen_range(0..4) {
        0 => Oracle::Pattern(Pattern::Doubling),
        1 => Oracle::Pattern(Pattern::Constant {
            value: gen_bits(r, 6),
        }),
        2 => Oracle::Pattern(Pattern::PadTo {
            len: r.gen_range(0..=8),
        }),
        _ => Oracle::Pattern(Pattern::Profile {
            lengths: gen_length_fn(r, 12, 2),
        }),
    }
}

/// A length-monotone oracle of either family.
pub fn gen_reg_oracle(r: &mut SampleRng) -> Oracle {
    if r.gen_bool(0.7) {
        gen_reg_table_oracle(r)
    } else {
        gen_reg_pattern_oracle(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::is_length_monotone;

    #[test]
    fn reg_generators_really_are_length_monotone() {
        let mut r = rng(7);
        for i in 0..200 {
            let o = gen_reg_oracle(&mut r);
            assert!(
                is_length_monotone(&o, 6).unwrap().passed(),
                "sample {i}: {o:?}"
            );
        }
    }

    #[test]
    fn descriptions_evaluate_within_bounds() {
        let mut r = rng(11);
        for _ in 0..200 {
            let t = gen_description(&mut r, 4);
            let l = gen_length_fn_bounded(&mut r, 64);
            for n in [0u64, 1, 7, 16] {
                t.eval(&l, n).expect("bounded samples stay in range");
            }
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let a: Vec<BitString> = {
            let mut r = rng(3);
            (0..10).map(|_| gen_bits(&mut r, 8)).collect()
        };
        let b: Vec<BitString> = {
            let mut r = rng(3);
            (0..10).map(|_| gen_bits(&mut r, 8)).collect()
        };
        assert_eq!(a, b);
    }
}
