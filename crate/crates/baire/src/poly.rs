//! Multivariate polynomials with natural coefficients, description trees, and
//! polynomial majorants.
//!
//! A *description tree* is an ordered finite tree whose nodes are polynomials
//! in `N[X_0, ..., X_k]`, where `k` is the number of children of the node. A
//! tree denotes a functional taking a monotone length function `l` and a
//! natural number `n`: a leaf `t` denotes `(l, n) -> t(n)`, and an inner node
//! `t` with children denoting `P_1, ..., P_k` denotes
//!
//! ```text
//! (l, n) -> t(n, l(P_1(l, n)), ..., l(P_k(l, n)))
//! ```
//!
//! Because every coefficient is a natural number the denoted functional is
//! monotone in `n` and in `l`, which is exactly what makes these trees usable
//! as running-time bounds for oracle machines.
//!
//! The class of denotable functionals is closed under pointwise sum and
//! product ([`Description::sum`], [`Description::product`]), application of
//! the length argument ([`Description::plus`], denoting `(l, n) -> l(P(l,
//! n))`), and both compositions: substitution into the scalar argument
//! ([`Description::subst_second`], denoting `P(l, Q(l, n))`) and substitution
//! into the function argument ([`Description::subst_fn`], denoting `P(Q(l,
//! ·), n)`). No normal form is attempted; two trees are interchangeable
//! exactly when they evaluate equal, and the composition operators are
//! certified by evaluation-equality property tests rather than by structural
//! comparison.
//!
//! Every tree yields a [`Majorant`] `(N, p)`: `N` is the height of the tree
//! and `p` a univariate polynomial dominating every node on the diagonal,
//! with `p(n) >= n`. Iterating `p_0 = p(n)`, `p_{i+1} = p(max(n, l(p_i)))`
//! gives the bound `eval(T, l, n) <= p_N(l, n)` for monotone `l`. The bound
//! is cheap to evaluate and, unlike the tree itself, needs only one
//! polynomial and one number — this is what the clocking transformer uses to
//! pre-compute a step budget with a fixed number of oracle probes.
//!
//! All arithmetic is checked `u64`; overflow surfaces as
//! [`PolyError::Overflow`], never as wraparound.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::resources::Verdict;

/// Errors from polynomial construction and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("arithmetic overflow in polynomial arithmetic")]
    Overflow,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("length function table is empty")]
    EmptyTable,
    #[error("length function table decreases at index {0}")]
    NotMonotone(usize),
}

fn cadd(a: u64, b: u64) -> Result<u64, PolyError> {
    a.checked_add(b).ok_or(PolyError::Overflow)
}

fn cmul(a: u64, b: u64) -> Result<u64, PolyError> {
    a.checked_mul(b).ok_or(PolyError::Overflow)
}

fn cpow(a: u64, e: u32) -> Result<u64, PolyError> {
    a.checked_pow(e).ok_or(PolyError::Overflow)
}

// =============================================================================
// Univariate polynomials
// =============================================================================

/// A polynomial in one variable with natural coefficients, stored
/// degree-indexed with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniPoly {
    coeffs: Vec<u64>,
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: u64) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// The identity polynomial `X`.
    pub fn x() -> Self {
        UniPoly { coeffs: vec![0, 1] }
    }

    /// `c * X^e`.
    pub fn monomial(c: u64, e: u32) -> Self {
        if c == 0 {
            return UniPoly::zero();
        }
        let mut coeffs = vec![0; e as usize];
        coeffs.push(c);
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: u64) -> Result<u64, PolyError> {
        let mut acc: u64 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = cadd(cmul(acc, x)?, c)?;
        }
        Ok(acc)
    }

    /// Coefficient-wise maximum. For natural coefficients this dominates both
    /// polynomials pointwise on the naturals.
    pub fn max_coef(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &UniPoly, i: usize| p.coeffs.get(i).copied().unwrap_or(0);
        UniPoly::from_coeffs((0..n).map(|i| get(self, i).max(get(other, i))).collect())
    }

    pub fn add(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &UniPoly, i: usize| p.coeffs.get(i).copied().unwrap_or(0);
        let coeffs = (0..n)
            .map(|i| cadd(get(self, i), get(other, i)))
            .collect::<Result<_, _>>()?;
        Ok(UniPoly::from_coeffs(coeffs))
    }

    pub fn mul(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(UniPoly::zero());
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = cadd(coeffs[i + j], cmul(a, b)?)?;
            }
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }

    pub fn scale(&self, k: u64) -> Result<UniPoly, PolyError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| cmul(c, k))
            .collect::<Result<_, _>>()?;
        Ok(UniPoly::from_coeffs(coeffs))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 if c == 1 => "X".to_string(),
                1 => format!("{c}X"),
                _ if c == 1 => format!("X^{i}"),
                _ => format!("{c}X^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

// =============================================================================
// Multivariate polynomials
// =============================================================================

/// A polynomial in `N[X_0, ..., X_{arity-1}]`, stored as a map from exponent
/// vectors (length = arity) to nonzero natural coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl MultiPoly {
    /// Build from raw terms; zero-coefficient terms are dropped, duplicate
    /// exponent vectors are summed.
    pub fn new(arity: usize, terms: Vec<(Vec<u32>, u64)>) -> Result<Self, PolyError> {
        let mut map = BTreeMap::new();
        for (exps, coef) in terms {
            if exps.len() != arity {
                return Err(PolyError::ArityMismatch {
                    expected: arity,
                    got: exps.len(),
                });
            }
            if coef == 0 {
                continue;
            }
            let slot = map.entry(exps).or_insert(0u64);
            *slot = cadd(*slot, coef)?;
        }
        Ok(MultiPoly { arity, terms: map })
    }

    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: u64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0; arity], c);
        }
        MultiPoly { arity, terms }
    }

    /// The variable `X_i`.
    pub fn variable(arity: usize, i: usize) -> Result<Self, PolyError> {
        if i >= arity {
            return Err(PolyError::ArityMismatch {
                expected: arity,
                got: i + 1,
            });
        }
        let mut exps = vec![0; arity];
        exps[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, 1);
        Ok(MultiPoly { arity, terms })
    }

    /// Lift a univariate polynomial to an arity-1 node polynomial in `X_0`.
    pub fn from_unipoly(p: &UniPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (e, &c) in p.coeffs().iter().enumerate() {
            if c != 0 {
                terms.insert(vec![e as u32], c);
            }
        }
        MultiPoly { arity: 1, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &u64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, args: &[u64]) -> Result<u64, PolyError> {
        if args.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        let mut total: u64 = 0;
        for (exps, &coef) in &self.terms {
            let mut term = coef;
            for (i, &e) in exps.iter().enumerate() {
                if e != 0 {
                    term = cmul(term, cpow(args[i], e)?)?;
                }
            }
            total = cadd(total, term)?;
        }
        Ok(total)
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        let mut terms = self.terms.clone();
        for (exps, &coef) in &other.terms {
            let slot = terms.entry(exps.clone()).or_insert(0);
            *slot = cadd(*slot, coef)?;
        }
        Ok(MultiPoly {
            arity: self.arity,
            terms,
        })
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        let mut terms: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let exps: Vec<u32> = ea
                    .iter()
                    .zip(eb)
                    .map(|(&x, &y)| x.checked_add(y).ok_or(PolyError::Overflow))
                    .collect::<Result<_, _>>()?;
                let slot = terms.entry(exps).or_insert(0);
                *slot = cadd(*slot, cmul(ca, cb)?)?;
            }
        }
        Ok(MultiPoly {
            arity: self.arity,
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Result<MultiPoly, PolyError> {
        let mut acc = MultiPoly::constant(self.arity, 1);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Rename variables into a (possibly larger) arity: variable `i` becomes
    /// variable `var_map[i]`. The map must be injective.
    pub fn remap(&self, new_arity: usize, var_map: &[usize]) -> Result<MultiPoly, PolyError> {
        if var_map.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: var_map.len(),
            });
        }
        let mut terms = BTreeMap::new();
        for (exps, &coef) in &self.terms {
            let mut new_exps = vec![0u32; new_arity];
            for (i, &e) in exps.iter().enumerate() {
                let j = var_map[i];
                if j >= new_arity {
                    return Err(PolyError::ArityMismatch {
                        expected: new_arity,
                        got: j + 1,
                    });
                }
                new_exps[j] = e;
            }
            terms.insert(new_exps, coef);
        }
        Ok(MultiPoly {
            arity: new_arity,
            terms,
        })
    }

    /// Substitute a polynomial for every variable: `self(args[0], ...,
    /// args[arity-1])`. All arguments must share an arity, which becomes the
    /// arity of the result.
    pub fn substitute(&self, args: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if args.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        let out_arity = args.first().map(|a| a.arity).unwrap_or(0);
        let mut total = MultiPoly::zero(out_arity);
        for (exps, &coef) in &self.terms {
            let mut term = MultiPoly::constant(out_arity, coef);
            for (i, &e) in exps.iter().enumerate() {
                if e != 0 {
                    term = term.mul(&args[i].pow(e)?)?;
                }
            }
            total = total.add(&term)?;
        }
        Ok(total)
    }

    /// The univariate polynomial `q(n) = self(n, ..., n)`.
    pub fn diagonal(&self) -> UniPoly {
        let mut coeffs: Vec<u64> = Vec::new();
        for (exps, &coef) in &self.terms {
            let deg: u32 = exps.iter().sum();
            let deg = deg as usize;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            // Coefficients collapse additively on the diagonal; saturating is
            // fine here because the majorant only needs an upper bound, but we
            // keep it checked for honesty and let the caller see overflow.
            coeffs[deg] = coeffs[deg].saturating_add(coef);
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let vars: Vec<String> = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("X{i}")
                        } else {
                            format!("X{i}^{e}")
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else if *c == 1 {
                    vars.join("·")
                } else {
                    format!("{c}·{}", vars.join("·"))
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

// =============================================================================
// Length functions
// =============================================================================

/// Extension rule for a [`LengthFn`] past the end of its table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// Repeat the last table value forever.
    Constant,
    /// Grow by `slope` per step past the last table index.
    Affine { slope: u64 },
}

/// A finite, monotone stand-in for a length function `l: N -> N`: explicit
/// values on `0..table.len()` and a monotone tail rule beyond.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LengthFnRepr", into = "LengthFnRepr")]
pub struct LengthFn {
    table: Vec<u64>,
    tail: Tail,
}

#[derive(Serialize, Deserialize)]
struct LengthFnRepr {
    table: Vec<u64>,
    tail: Tail,
}

impl TryFrom<LengthFnRepr> for LengthFn {
    type Error = PolyError;
    fn try_from(r: LengthFnRepr) -> Result<Self, PolyError> {
        LengthFn::new(r.table, r.tail)
    }
}

impl From<LengthFn> for LengthFnRepr {
    fn from(l: LengthFn) -> Self {
        LengthFnRepr {
            table: l.table,
            tail: l.tail,
        }
    }
}

impl LengthFn {
    pub fn new(table: Vec<u64>, tail: Tail) -> Result<Self, PolyError> {
        if table.is_empty() {
            return Err(PolyError::EmptyTable);
        }
        for i in 1..table.len() {
            if table[i] < table[i - 1] {
                return Err(PolyError::NotMonotone(i));
            }
        }
        Ok(LengthFn { table, tail })
    }

    /// The constant function `n -> c`.
    pub fn constant(c: u64) -> Self {
        LengthFn {
            table: vec![c],
            tail: Tail::Constant,
        }
    }

    /// The identity function `n -> n`.
    pub fn identity() -> Self {
        LengthFn {
            table: vec![0],
            tail: Tail::Affine { slope: 1 },
        }
    }

    /// The affine function `n -> base + slope * n`.
    pub fn affine(base: u64, slope: u64) -> Self {
        LengthFn {
            table: vec![base],
            tail: Tail::Affine { slope },
        }
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn eval(&self, n: u64) -> Result<u64, PolyError> {
        let last_idx = (self.table.len() - 1) as u64;
        if n <= last_idx {
            return Ok(self.table[n as usize]);
        }
        let last = *self.table.last().expect("table is non-empty");
        match self.tail {
            Tail::Constant => Ok(last),
            Tail::Affine { slope } => cadd(last, cmul(slope, n - last_idx)?),
        }
    }

    /// Pointwise `self(n) >= other(n)` on a sampled prefix. Used by tests.
    pub fn dominates_on(&self, other: &LengthFn, upto: u64) -> bool {
        (0..=upto).all(|n| match (self.eval(n), other.eval(n)) {
            (Ok(a), Ok(b)) => a >= b,
            _ => false,
        })
    }
}

// =============================================================================
// Description trees
// =============================================================================

/// A description tree: an ordered tree of [`MultiPoly`] nodes where the arity
/// of each node is one more than its number of children.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DescriptionRepr", into = "DescriptionRepr")]
pub struct Description {
    node: MultiPoly,
    children: Vec<Description>,
}

/// Wire form: `{"poly": [{"exps": [...], "coef": c}, ...], "children": [...]}`.
#[derive(Serialize, Deserialize)]
struct DescriptionRepr {
    poly: Vec<TermRepr>,
    #[serde(default)]
    children: Vec<DescriptionRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    coef: u64,
}

impl TryFrom<DescriptionRepr> for Description {
    type Error = PolyError;
    fn try_from(r: DescriptionRepr) -> Result<Self, PolyError> {
        let children: Vec<Description> = r
            .children
            .into_iter()
            .map(Description::try_from)
            .collect::<Result<_, _>>()?;
        let arity = children.len() + 1;
        let node = MultiPoly::new(arity, r.poly.into_iter().map(|t| (t.exps, t.coef)).collect())?;
        Description::new(node, children)
    }
}

impl From<Description> for DescriptionRepr {
    fn from(d: Description) -> Self {
        DescriptionRepr {
            poly: d
                .node
                .terms
                .iter()
                .map(|(exps, &coef)| TermRepr {
                    exps: exps.clone(),
                    coef,
                })
                .collect(),
            children: d.children.into_iter().map(DescriptionRepr::from).collect(),
        }
    }
}

impl Description {
    /// Build a tree node; the node polynomial arity must be one more than the
    /// number of children.
    pub fn new(node: MultiPoly, children: Vec<Description>) -> Result<Self, PolyError> {
        if node.arity() != children.len() + 1 {
            return Err(PolyError::ArityMismatch {
                expected: children.len() + 1,
                got: node.arity(),
            });
        }
        Ok(Description { node, children })
    }

    /// A leaf denoting `(l, n) -> p(n)`.
    pub fn leaf(p: UniPoly) -> Self {
        Description {
            node: MultiPoly::from_unipoly(&p),
            children: vec![],
        }
    }

    pub fn zero() -> Self {
        Description::leaf(UniPoly::zero())
    }

    pub fn node(&self) -> &MultiPoly {
        &self.node
    }

    pub fn children(&self) -> &[Description] {
        &self.children
    }

    pub fn height(&self) -> u64 {
        self.children
            .iter()
            .map(|c| c.height() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.node_count()).sum::<usize>()
    }

    /// All node polynomials, root first.
    pub fn nodes(&self) -> Vec<&MultiPoly> {
        let mut out = vec![&self.node];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }

    /// Evaluate the denoted functional at `(l, n)`.
    pub fn eval(&self, l: &LengthFn, n: u64) -> Result<u64, PolyError> {
        let mut args = Vec::with_capacity(self.node.arity());
        args.push(n);
        for c in &self.children {
            args.push(l.eval(c.eval(l, n)?)?);
        }
        self.node.eval(&args)
    }

    /// Pointwise sum: the roots are merged, with the second root's child
    /// variables shifted past the first root's children and `X_0` shared.
    pub fn sum(&self, other: &Description) -> Result<Description, PolyError> {
        self.merge(other, MultiPoly::add)
    }

    /// Pointwise product, by the same root merge as [`Description::sum`].
    pub fn product(&self, other: &Description) -> Result<Description, PolyError> {
        self.merge(other, MultiPoly::mul)
    }

    fn merge(
        &self,
        other: &Description,
        op: fn(&MultiPoly, &MultiPoly) -> Result<MultiPoly, PolyError>,
    ) -> Result<Description, PolyError> {
        let k = self.children.len();
        let m = other.children.len();
        let arity = 1 + k + m;
        let left_map: Vec<usize> = (0..=k).collect();
        let mut right_map = vec![0usize];
        right_map.extend((1..=m).map(|j| k + j));
        let node = op(
            &self.node.remap(arity, &left_map)?,
            &other.node.remap(arity, &right_map)?,
        )?;
        let mut children = self.children.clone();
        children.extend(other.children.iter().cloned());
        Description::new(node, children)
    }

    /// The tree denoting `(l, n) -> l(P(l, n))`: a fresh root `X_1` over the
    /// whole tree.
    pub fn plus(&self) -> Description {
        Description {
            node: MultiPoly::variable(2, 1).expect("X_1 exists in arity 2"),
            children: vec![self.clone()],
        }
    }

    /// Substitution into the scalar argument: the result denotes
    /// `(l, n) -> P(l, Q(l, n))`.
    ///
    /// Every node polynomial of `self` has its `X_0` replaced by the root
    /// polynomial of `q`, and `q`'s children are adjoined as extra children of
    /// that node. At a leaf `p` this degenerates to the composition `p ∘ t_Q`
    /// with `q`'s children attached.
    pub fn subst_second(&self, q: &Description) -> Result<Description, PolyError> {
        let k = self.children.len();
        let m = q.children.len();
        let arity = 1 + k + m;
        let mut q_map = vec![0usize];
        q_map.extend((1..=m).map(|j| k + j));
        let q_root = q.node.remap(arity, &q_map)?;
        let mut args = Vec::with_capacity(k + 1);
        args.push(q_root);
        for i in 1..=k {
            args.push(MultiPoly::variable(arity, i)?);
        }
        let node = self.node.substitute(&args)?;
        let mut children: Vec<Description> = self
            .children
            .iter()
            .map(|c| c.subst_second(q))
            .collect::<Result<_, _>>()?;
        children.extend(q.children.iter().cloned());
        Description::new(node, children)
    }

    /// Substitution into the function argument: the result denotes
    /// `(l, n) -> P(Q(l, ·), n)`.
    ///
    /// Working bottom-up, each child value `V` of a node is replaced by a tree
    /// for `Q(l, V)` (via [`Description::subst_second`]), and the node
    /// polynomial is rebuilt pointwise from `n` and those trees using the
    /// sum/product closure. The construction is certified by the
    /// evaluation-equality property tests, not by structural comparison.
    pub fn subst_fn(&self, q: &Description) -> Result<Description, PolyError> {
        if self.children.is_empty() {
            return Ok(self.clone());
        }
        let composed: Vec<Description> = self
            .children
            .iter()
            .map(|c| c.subst_fn(q).and_then(|c2| q.subst_second(&c2)))
            .collect::<Result<_, _>>()?;
        let mut acc: Option<Description> = None;
        for (exps, &coef) in self.node.terms() {
            let mut term = Description::leaf(UniPoly::monomial(coef, exps[0]));
            for (i, &e) in exps.iter().enumerate().skip(1) {
                for _ in 0..e {
                    term = term.product(&composed[i - 1])?;
                }
            }
            acc = Some(match acc {
                None => term,
                Some(a) => a.sum(&term)?,
            });
        }
        Ok(acc.unwrap_or_else(Description::zero))
    }

    /// Extract the majorant `(N, p)`: `N` is the tree height and `p` the
    /// coefficient-wise maximum of all node diagonals `t(n, ..., n)`, further
    /// maximized with `X` so that `p(n) >= n`.
    pub fn majorant(&self) -> Majorant {
        let mut bound = UniPoly::x();
        for node in self.nodes() {
            bound = bound.max_coef(&node.diagonal());
        }
        Majorant {
            height: self.height(),
            bound,
        }
    }
}

impl fmt::Debug for Description {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.children.is_empty() {
            write!(f, "[{:?}]", self.node)
        } else {
            write!(f, "[{:?} over {:?}]", self.node, self.children)
        }
    }
}

// =============================================================================
// Majorants
// =============================================================================

/// A pair `(N, p)` bounding a description tree of height `N` whose node
/// diagonals are all dominated by `p`, with `p(n) >= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Majorant {
    pub height: u64,
    pub bound: UniPoly,
}

impl Majorant {
    /// The iterate `p_i(l, n)` defined by `p_0(l, n) = p(n)` and
    /// `p_{i+1}(l, n) = p(max(n, l(p_i(l, n))))`.
    ///
    /// The inner recursion feeds the full `p_i(l, n)` back into `l`; the
    /// iterates then form a pointwise non-decreasing chain for monotone `l`,
    /// and `p_N` dominates the originating tree.
    pub fn iterate(&self, l: &LengthFn, n: u64, i: u64) -> Result<u64, PolyError> {
        let mut value = self.bound.eval(n)?;
        for _ in 0..i {
            value = self.bound.eval(n.max(l.eval(value)?))?;
        }
        Ok(value)
    }
}

/// Check the majorant bound `eval(T, l, n) <= p_N(l, n)` for the tree's own
/// majorant, with `N` the tree height.
pub fn check_majorant_bound(t: &Description, l: &LengthFn, n: u64) -> Result<Verdict, PolyError> {
    let m = t.majorant();
    let lhs = t.eval(l, n)?;
    let rhs = m.iterate(l, n, m.height)?;
    if lhs <= rhs {
        Ok(Verdict::Pass)
    } else {
        Ok(Verdict::fail(
            n,
            format!("eval {} exceeds majorant iterate {}", lhs, rhs),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf_x0() -> Description {
        Description::leaf(UniPoly::x())
    }

    /// The tree `2*X_1` over a single `X_0` leaf, denoting `(l, n) -> 2 l(n)`.
    fn two_l_of_n() -> Description {
        let node = MultiPoly::new(2, vec![(vec![0, 1], 2)]).unwrap();
        Description::new(node, vec![leaf_x0()]).unwrap()
    }

    /// The tree `X_1 + X_2` over two `X_0` leaves, also denoting `2 l(n)`.
    fn l_plus_l() -> Description {
        let node = MultiPoly::new(3, vec![(vec![0, 1, 0], 1), (vec![0, 0, 1], 1)]).unwrap();
        Description::new(node, vec![leaf_x0(), leaf_x0()]).unwrap()
    }

    #[test]
    fn leaf_ignores_length_fn() {
        // X_0^2 + 1 at n = 3 is 10 regardless of l.
        let t = Description::leaf(UniPoly::from_coeffs(vec![1, 0, 1]));
        for l in [LengthFn::constant(0), LengthFn::identity(), LengthFn::affine(7, 3)] {
            assert_eq!(t.eval(&l, 3).unwrap(), 10);
        }
    }

    #[test]
    fn inner_node_applies_length_fn() {
        // 2*X_1 over X_0 with l(n) = n + 2 at n = 5: 2 * l(5) = 14.
        let l = LengthFn::affine(2, 1);
        assert_eq!(two_l_of_n().eval(&l, 5).unwrap(), 14);
    }

    #[test]
    fn the_two_classic_trees_agree() {
        let a = two_l_of_n();
        let b = l_plus_l();
        for l in [LengthFn::identity(), LengthFn::affine(1, 2), LengthFn::constant(5)] {
            for n in 0..20 {
                assert_eq!(a.eval(&l, n).unwrap(), b.eval(&l, n).unwrap());
            }
        }
    }

    #[test]
    fn sum_of_simple_leaves() {
        let t = leaf_x0().sum(&Description::leaf(UniPoly::constant(1))).unwrap();
        let l = LengthFn::identity();
        for n in 0..10 {
            assert_eq!(t.eval(&l, n).unwrap(), n + 1);
        }
    }

    #[test]
    fn sum_of_two_l_trees_matches_merged_form() {
        let single = Description::new(
            MultiPoly::variable(2, 1).unwrap(),
            vec![leaf_x0()],
        )
        .unwrap();
        let merged = single.sum(&single).unwrap();
        let reference = l_plus_l();
        for l in [LengthFn::identity(), LengthFn::affine(3, 2)] {
            for n in 0..16 {
                assert_eq!(merged.eval(&l, n).unwrap(), reference.eval(&l, n).unwrap());
            }
        }
    }

    #[test]
    fn product_examples() {
        let sq = leaf_x0().product(&leaf_x0()).unwrap();
        let l = LengthFn::identity();
        for n in 0..10 {
            assert_eq!(sq.eval(&l, n).unwrap(), n * n);
        }
        // Multiplying by the constant-1 leaf preserves the denotation.
        let lofn = Description::new(MultiPoly::variable(2, 1).unwrap(), vec![leaf_x0()]).unwrap();
        let t = lofn.product(&Description::leaf(UniPoly::constant(1))).unwrap();
        let l2 = LengthFn::affine(1, 3);
        for n in 0..10 {
            assert_eq!(t.eval(&l2, n).unwrap(), l2.eval(n).unwrap());
        }
    }

    #[test]
    fn plus_examples() {
        let t = leaf_x0().plus();
        let double = LengthFn::affine(0, 2);
        assert_eq!(t.eval(&double, 3).unwrap(), 6);
        // Applying twice with l(n) = n^2 at n = 2 gives l(l(2)) = 16.
        let tt = leaf_x0().plus().plus();
        let sq = LengthFn::new(vec![0, 1, 4, 9, 16], Tail::Constant).unwrap();
        assert_eq!(tt.eval(&sq, 2).unwrap(), 16);
    }

    #[test]
    fn subst_second_examples() {
        let lofn = Description::new(MultiPoly::variable(2, 1).unwrap(), vec![leaf_x0()]).unwrap();
        let q = Description::leaf(UniPoly::from_coeffs(vec![1, 1])); // n + 1
        let t = lofn.subst_second(&q).unwrap();
        // Denotes l(n + 1); with l(n) = 2n at n = 3 this is 8.
        let double = LengthFn::affine(0, 2);
        assert_eq!(t.eval(&double, 3).unwrap(), 8);
        // Substituting the identity leaf changes nothing semantically.
        let id = lofn.subst_second(&leaf_x0()).unwrap();
        for n in 0..12 {
            assert_eq!(id.eval(&double, n).unwrap(), lofn.eval(&double, n).unwrap());
        }
    }

    #[test]
    fn subst_fn_examples() {
        let lofn = Description::new(MultiPoly::variable(2, 1).unwrap(), vec![leaf_x0()]).unwrap();
        // Q denotes l(n) + 1.
        let q_node = MultiPoly::new(2, vec![(vec![0, 1], 1), (vec![0, 0], 1)]).unwrap();
        let q = Description::new(q_node, vec![leaf_x0()]).unwrap();
        let t = lofn.subst_fn(&q).unwrap();
        // Denotes P(Q(l,·), n) = Q(l, n) = l(n) + 1; with l = id at n = 3: 4.
        let id = LengthFn::identity();
        assert_eq!(t.eval(&id, 3).unwrap(), 4);
        // A leaf ignores the function argument entirely.
        let leaf = Description::leaf(UniPoly::from_coeffs(vec![2, 3]));
        let t2 = leaf.subst_fn(&q).unwrap();
        for n in 0..10 {
            assert_eq!(t2.eval(&id, n).unwrap(), leaf.eval(&id, n).unwrap());
        }
    }

    #[test]
    fn majorant_of_classic_tree() {
        let m = two_l_of_n().majorant();
        assert_eq!(m.height, 1);
        assert_eq!(m.bound, UniPoly::from_coeffs(vec![0, 2]));
        // Leaf majorant: height 0, coefficient-wise max with X.
        let m0 = Description::leaf(UniPoly::from_coeffs(vec![5])).majorant();
        assert_eq!(m0.height, 0);
        assert_eq!(m0.bound, UniPoly::from_coeffs(vec![5, 1]));
    }

    #[test]
    fn majorant_iterate_by_hand() {
        let m = Majorant {
            height: 1,
            bound: UniPoly::from_coeffs(vec![0, 2]),
        };
        let id = LengthFn::identity();
        // p_0 = p(3) = 6; p_1 = p(max(3, l(6))) = p(6) = 12.
        assert_eq!(m.iterate(&id, 3, 0).unwrap(), 6);
        assert_eq!(m.iterate(&id, 3, 1).unwrap(), 12);
    }

    #[test]
    fn majorant_bound_examples() {
        let id = LengthFn::identity();
        assert!(check_majorant_bound(&two_l_of_n(), &id, 3).unwrap().passed());
        let leaf = Description::leaf(UniPoly::from_coeffs(vec![3, 2]));
        assert!(check_majorant_bound(&leaf, &id, 9).unwrap().passed());
    }

    #[test]
    fn overflow_is_reported() {
        let t = Description::leaf(UniPoly::from_coeffs(vec![0, 0, u64::MAX]));
        assert_eq!(t.eval(&LengthFn::identity(), 3).unwrap_err(), PolyError::Overflow);
    }

    #[test]
    fn description_serde_roundtrip_and_validation() {
        let t = two_l_of_n();
        let json = serde_json::to_string(&t).unwrap();
        let back: Description = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        // An arity violation in the file is rejected on load.
        let bad = r#"{"poly": [{"exps": [0, 1], "coef": 2}], "children": []}"#;
        assert!(serde_json::from_str::<Description>(bad).is_err());
    }

    #[test]
    fn length_fn_validation() {
        assert!(LengthFn::new(vec![], Tail::Constant).is_err());
        assert!(LengthFn::new(vec![3, 2], Tail::Constant).is_err());
        let l = LengthFn::new(vec![1, 1, 4], Tail::Affine { slope: 2 }).unwrap();
        assert_eq!(l.eval(2).unwrap(), 4);
        assert_eq!(l.eval(5).unwrap(), 10);
    }
}
