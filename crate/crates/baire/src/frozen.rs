//! Frozen measurement constants and the bound shapes built from them.
//!
//! The constant factors in all time bounds are not derivable on paper for a
//! concrete instruction set, so they are *measured*: each constant is the
//! result of a documented worst-case fit over a seeded calibration sweep (see
//! [`crate::sample::calibrate`]), rounded up with a safety margin and frozen
//! here. The regression tests re-run the sweeps and assert that the frozen
//! values still dominate (and stay within the recorded margin), so any
//! change to the interpreter's cost accounting or to a machine's program
//! shows up as a test failure rather than as silent drift.

use crate::poly::{Description, MultiPoly, PolyError, UniPoly};

/// Step-count for the iterated-apply machine: `A (m + 1)^2`. The machine is
/// close to linear in the profile, so a quadratic with a small constant has
/// ample slack at every prefix.
pub const ITERATED_APPLY_A: u64 = 20;

pub fn iterated_apply_step_count() -> UniPoly {
    UniPoly::from_coeffs(vec![ITERATED_APPLY_A, 2 * ITERATED_APPLY_A, ITERATED_APPLY_A])
}

/// Running-time constant for the max-length machine's bound
/// `C (n + n l(n)) + C`.
pub const MAX_LENGTH_C: u64 = 234;

/// The description tree `C X0 + C X0 X1 + C` over a single `X0` leaf,
/// denoting `(l, n) -> C (n + n l(n)) + C`.
pub fn max_length_running_time() -> Description {
    let node = MultiPoly::new(
        2,
        vec![
            (vec![1, 0], MAX_LENGTH_C),
            (vec![1, 1], MAX_LENGTH_C),
            (vec![0, 0], MAX_LENGTH_C),
        ],
    )
    .expect("term arity is 2");
    Description::new(node, vec![Description::leaf(UniPoly::x())])
        .expect("arity matches one child")
}

/// Constant for the brute-force machine's restricted running time
/// `C l(l(3(n + 2))) + C`, valid on oracles whose size function spikes on
/// the tower values (there `l(l(3(n+2)))` dwarfs the `~2^(n+1)` enumeration).
pub const BRUTEFORCE_RESTRICTED_C: u64 = 520;

/// The tree `C X1 + C` over `X1` over the leaf `3 X0 + 6`.
pub fn bruteforce_restricted_time() -> Description {
    let leaf = Description::leaf(UniPoly::from_coeffs(vec![6, 3]));
    let mid = Description::new(
        MultiPoly::variable(2, 1).expect("X1 in arity 2"),
        vec![leaf],
    )
    .expect("one child");
    let root = MultiPoly::new(
        2,
        vec![(vec![0, 1], BRUTEFORCE_RESTRICTED_C), (vec![0, 0], BRUTEFORCE_RESTRICTED_C)],
    )
    .expect("term arity is 2");
    Description::new(root, vec![mid]).expect("one child")
}

/// Per-simulated-step overhead factor of the finite-revision clock. Its real
/// step-count is bounded by `K (p(m) + m + 1)^2` where `p` is the wrapped
/// step budget polynomial.
pub const CLOCK_REVISION_K: u64 = 2;

/// The constructed step-count for a finite-revision-clocked machine.
pub fn clock_revision_step_count(p: &UniPoly) -> Result<UniPoly, PolyError> {
    clocked_step_count(p, CLOCK_REVISION_K)
}

/// Overhead factor of the majorant clock, which additionally pays for its
/// probe phase (bounded by the same square since each of the `N` probes
/// writes at most `p(m)` zeros).
pub const CLOCK_MAJORANT_K: u64 = 8;

/// The constructed step-count for a majorant-clocked machine with majorant
/// height `height`.
pub fn clock_majorant_step_count(p: &UniPoly, height: u64) -> Result<UniPoly, PolyError> {
    clocked_step_count(p, CLOCK_MAJORANT_K.checked_mul(height + 1).ok_or(PolyError::Overflow)?)
}

fn clocked_step_count(p: &UniPoly, k: u64) -> Result<UniPoly, PolyError> {
    let base = p.add(&UniPoly::from_coeffs(vec![1, 1]))?;
    base.mul(&base)?.scale(k)
}

/// Running-time constant for the identity machine's bound `C (n + l(n)) + C`.
pub const IDENTITY_C: u64 = 40;

/// The tree `C X0 + C X1 + C` over a single `X0` leaf.
pub fn identity_running_time() -> Description {
    let node = MultiPoly::new(
        2,
        vec![
            (vec![1, 0], IDENTITY_C),
            (vec![0, 1], IDENTITY_C),
            (vec![0, 0], IDENTITY_C),
        ],
    )
    .expect("term arity is 2");
    Description::new(node, vec![Description::leaf(UniPoly::x())])
        .expect("arity matches one child")
}

/// Constant of the composition bound
/// `C (T(S(l,·), n) + S(l, T(S(l,·), n)) · T(S(l,·), n))`.
pub const COMPOSE_C: u64 = 2;

/// Evaluator for the composition bound of two component running times.
pub struct ComposeBound {
    outer_of_inner: Description,
    inner: Description,
}

impl ComposeBound {
    /// `t` bounds the outer machine, `s` the inner one.
    pub fn new(t: &Description, s: &Description) -> Result<Self, PolyError> {
        Ok(ComposeBound {
            outer_of_inner: t.subst_fn(s)?,
            inner: s.clone(),
        })
    }

    pub fn eval(&self, l: &crate::poly::LengthFn, n: u64) -> Result<u64, PolyError> {
        let e1 = self.outer_of_inner.eval(l, n)?;
        let e2 = self.inner.eval(l, e1)?;
        let prod = e2.checked_mul(e1).ok_or(PolyError::Overflow)?;
        let sum = e1.checked_add(prod).ok_or(PolyError::Overflow)?;
        sum.checked_mul(COMPOSE_C).ok_or(PolyError::Overflow)
    }
}

/// Constant for the brute-force machine's measured time on delayed-growth
/// class members: `time <= C (l(l(3(n+2))) + 1)`.
pub const BRUTEFORCE_CLASS_BUDGET_C: u64 = 520;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LengthFn;

    #[test]
    fn bound_shapes_evaluate() {
        let l = LengthFn::affine(0, 2);
        let t = max_length_running_time();
        assert_eq!(
            t.eval(&l, 3).unwrap(),
            MAX_LENGTH_C * (3 + 3 * 6) + MAX_LENGTH_C
        );
        let b = bruteforce_restricted_time();
        // l(l(3n+6)) with l = 2x at n = 1: l(l(9)) = l(18) = 36.
        assert_eq!(
            b.eval(&l, 1).unwrap(),
            BRUTEFORCE_RESTRICTED_C * 36 + BRUTEFORCE_RESTRICTED_C
        );
    }

    #[test]
    fn clock_step_count_shape() {
        let p = UniPoly::from_coeffs(vec![1, 2]); // 2m + 1
        let t = clock_revision_step_count(&p).unwrap();
        // K (p(m) + m + 1)^2 at m = 3: K (7 + 4)^2 = 121 K.
        assert_eq!(t.eval(3).unwrap(), CLOCK_REVISION_K * 121);
    }
}
