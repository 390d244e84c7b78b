//! The label tree of a point `i` of the `k`-fold pumped solution, the map
//! `g^_i` it determines, and the cost estimators for computing it.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::permutation::{log10_factorial, Permutation};
use crate::pump::{iterated_size, pair, renumber_point_big};
use crate::solution::Solution;

pub const DEFAULT_MAX_DEPTH: u32 = 32;
/// Largest materialized key, in points.
pub const DEFAULT_MATERIALIZE_BOUND: usize = 1_000_000;
pub const DEFAULT_OP_SECONDS: f64 = 1e-9;
pub const DEFAULT_SEARCH_SECONDS: f64 = 1e-8;

/// Complete binary tree of labels. Node `a` has children `2a+1` and `2a+2`;
/// the root sits at level `k` and the leaves at level 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PumpTree {
    n: usize,
    k: u32,
    labels: Vec<BigUint>,
}

impl PumpTree {
    pub fn build(i: &BigUint, n: usize, k: u32) -> Result<Self> {
        Self::build_with_limit(i, n, k, DEFAULT_MAX_DEPTH)
    }

    pub fn build_with_limit(i: &BigUint, n: usize, k: u32, max_depth: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if k > max_depth {
            return Err(Error::DepthLimit { k, limit: max_depth });
        }
        check_point(i, n, k)?;
        let count = (1usize << (k + 1)) - 1;
        let mut labels = Vec::with_capacity(count);
        labels.push(i.clone());
        // moduli[l] = n^(2^l)
        let moduli: Vec<BigUint> = (0..k).map(|l| iterated_size(n, l)).collect();
        for a in 0..count {
            let level = k - node_depth(a);
            if level == 0 {
                continue;
            }
            let (left, right) = renumber_point_big(&moduli[level as usize - 1], &labels[a]);
            labels.push(left);
            labels.push(right);
        }
        Ok(PumpTree { n, k, labels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn depth(&self) -> u32 {
        self.k
    }

    pub fn root(&self) -> &BigUint {
        &self.labels[0]
    }

    pub fn label(&self, node: usize) -> &BigUint {
        &self.labels[node]
    }

    /// Labels of level `l`, left to right.
    pub fn level(&self, l: u32) -> &[BigUint] {
        let depth = self.k - l;
        let start = (1usize << depth) - 1;
        &self.labels[start..2 * start + 1]
    }

    /// Leaf labels, each in `1..=n`.
    pub fn leaves(&self) -> Vec<usize> {
        self.level(0)
            .iter()
            .map(|b| b.to_usize().expect("leaf labels are at most n"))
            .collect()
    }

    /// Indented rendering, one node per line, children below their parent.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_node(0, 0, &mut out);
        out
    }

    fn render_node(&self, node: usize, indent: usize, out: &mut String) {
        let level = self.k - node_depth(node);
        let _ = writeln!(out, "{:indent$}{} [level {level}]", "", self.labels[node], indent = indent * 2);
        if level > 0 {
            self.render_node(2 * node + 1, indent + 1, out);
            self.render_node(2 * node + 2, indent + 1, out);
        }
    }
}

fn node_depth(a: usize) -> u32 {
    usize::BITS - 1 - (a + 1).leading_zeros()
}

fn check_point(m: &BigUint, n: usize, k: u32) -> Result<()> {
    let size = iterated_size(n, k);
    if m.is_zero() || *m > size {
        return Err(Error::PointOutOfRange {
            point: m.to_string(),
            size: size.to_string(),
        });
    }
    Ok(())
}

/// The map `g^_i` of the `k`-fold pumped solution.
#[derive(Debug, Clone)]
pub struct LazyKey {
    tree: PumpTree,
    size: BigUint,
    leaf_maps: Vec<Permutation>,
    leaf_inverses: Vec<Permutation>,
    materialized: Option<(Permutation, Permutation)>,
}

impl LazyKey {
    pub fn new(base: &Solution, i: &BigUint, k: u32) -> Result<Self> {
        Self::from_tree(base, PumpTree::build(i, base.n(), k)?)
    }

    pub fn from_tree(base: &Solution, tree: PumpTree) -> Result<Self> {
        if tree.n() != base.n() {
            return Err(Error::SizeMismatch {
                expected: base.n(),
                found: tree.n(),
            });
        }
        let leaf_maps: Vec<Permutation> =
            tree.leaves().iter().map(|&a| base.sigma(a).clone()).collect();
        let leaf_inverses = leaf_maps.iter().map(Permutation::inverse).collect();
        Ok(LazyKey {
            size: iterated_size(tree.n(), tree.depth()),
            tree,
            leaf_maps,
            leaf_inverses,
            materialized: None,
        })
    }

    /// A key that also stores its full permutation.
    pub fn materialized(base: &Solution, i: &BigUint, k: u32, bound: usize) -> Result<Self> {
        let mut key = Self::new(base, i, k)?;
        key.materialize(bound)?;
        Ok(key)
    }

    pub fn tree(&self) -> &PumpTree {
        &self.tree
    }

    /// Number of points `n^(2^k)`.
    pub fn size(&self) -> &BigUint {
        &self.size
    }

    pub fn is_materialized(&self) -> bool {
        self.materialized.is_some()
    }

    pub fn permutation(&self) -> Option<&Permutation> {
        self.materialized.as_ref().map(|(p, _)| p)
    }

    /// Builds the full permutation bottom-up and keeps it. Returns the number
    /// of permutation builds, `2^k - 1`.
    pub fn materialize(&mut self, bound: usize) -> Result<usize> {
        let (perm, builds) = self.build_permutation(bound)?;
        let inverse = perm.inverse();
        self.materialized = Some((perm, inverse));
        Ok(builds)
    }

    /// Bottom-up construction: each pair of sibling permutations is combined
    /// into the pumped permutation of their parent.
    pub fn build_permutation(&self, bound: usize) -> Result<(Permutation, usize)> {
        let fits = self.size.to_usize().filter(|&s| s <= bound);
        if fits.is_none() {
            return Err(Error::MaterializationBound {
                size: self.size.to_string(),
                bound,
            });
        }
        if self.tree.depth() == 0 {
            return Ok((self.leaf_maps[0].clone(), 0));
        }
        let mut builds = 0;
        let mut level: Vec<Permutation> = self
            .leaf_maps
            .chunks(2)
            .map(|pq| {
                builds += 1;
                pair(&pq[0], &pq[1])
            })
            .collect::<Result<_>>()?;
        while level.len() > 1 {
            level = level
                .chunks(2)
                .map(|pq| {
                    builds += 1;
                    pair(&pq[0], &pq[1])
                })
                .collect::<Result<_>>()?;
        }
        Ok((level.pop().expect("root permutation"), builds))
    }

    /// `g^_i(m)`. Writing `m - 1` in base `n` with `2^k` digits, the tree
    /// recursion applies the leaf maps digit by digit, leftmost leaf first.
    pub fn eval(&self, m: &BigUint) -> Result<BigUint> {
        self.check(m)?;
        if let Some((p, _)) = &self.materialized {
            let x = m.to_usize().expect("materialized sizes fit usize");
            return Ok(BigUint::from(p.apply(x)));
        }
        Ok(self.eval_digits(m, &self.leaf_maps))
    }

    /// `g^_i^{-1}(m)`.
    pub fn eval_inverse(&self, m: &BigUint) -> Result<BigUint> {
        self.check(m)?;
        if let Some((_, inv)) = &self.materialized {
            let x = m.to_usize().expect("materialized sizes fit usize");
            return Ok(BigUint::from(inv.apply(x)));
        }
        Ok(self.eval_digits(m, &self.leaf_inverses))
    }

    /// Recursive evaluation following the tree literally; used to cross-check
    /// the digit form.
    pub fn eval_recursive(&self, m: &BigUint) -> Result<BigUint> {
        self.check(m)?;
        Ok(self.eval_node(0, m))
    }

    fn eval_node(&self, node: usize, m: &BigUint) -> BigUint {
        let level = self.tree.depth() - node_depth(node);
        if level == 0 {
            let leaf = node + 1 - (1usize << self.tree.depth());
            let x = m.to_usize().expect("leaf points are at most n");
            return BigUint::from(self.leaf_maps[leaf].apply(x));
        }
        let modulus = iterated_size(self.tree.n(), level - 1);
        let (j, l) = renumber_point_big(&modulus, m);
        let j2 = self.eval_node(2 * node + 1, &j);
        let l2 = self.eval_node(2 * node + 2, &l);
        modulus * (j2 - 1u32) + l2
    }

    fn check(&self, m: &BigUint) -> Result<()> {
        if m.is_zero() || *m > self.size {
            return Err(Error::PointOutOfRange {
                point: m.to_string(),
                size: self.size.to_string(),
            });
        }
        Ok(())
    }

    fn eval_digits(&self, m: &BigUint, maps: &[Permutation]) -> BigUint {
        let n = self.tree.n();
        let base = BigUint::from(n);
        let mut rest: BigUint = m - 1u32;
        let mut digits = vec![0usize; maps.len()];
        for d in digits.iter_mut().rev() {
            let (q, r) = rest.div_rem(&base);
            *d = r.to_usize().expect("digit below n");
            rest = q;
        }
        let mut out = BigUint::zero();
        for (d, p) in digits.into_iter().zip(maps) {
            out = out * n + (p.apply(d + 1) - 1);
        }
        out + BigUint::one()
    }
}

/// `count` seeded pseudo-random points of `1..=size`.
pub fn sample_points(size: &BigUint, count: usize, seed: u64) -> Vec<BigUint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // 64 spare bits keep the modulo bias negligible
    let bytes = (size.bits() as usize).div_ceil(8) + 8;
    let mut buf = vec![0u8; bytes];
    (0..count)
        .map(|_| {
            rng.fill_bytes(&mut buf);
            BigUint::from_bytes_le(&buf) % size + 1u32
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostConstants {
    pub op_seconds: f64,
    pub search_seconds: f64,
}

impl Default for CostConstants {
    fn default() -> Self {
        CostConstants {
            op_seconds: DEFAULT_OP_SECONDS,
            search_seconds: DEFAULT_SEARCH_SECONDS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostVariant {
    General,
    SmallI,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostEstimate {
    pub ops: BigUint,
    pub seconds: f64,
}

fn check_cost_args(n: usize, k: u32) -> Result<()> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!(
            "cost model needs n >= 2 and k >= 1, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// Operation count for computing one `g^_i` bottom-up.
///
/// General: `(2^(k+1) - 2) + sum_{l=1..k} 2^(k-l+1) n^(2^l)`.
/// Small `i`: `2 (sum_{l=1..k-1} 2 n^(2^l) + n^(2^k))`.
pub fn cost_model(n: usize, k: u32, variant: CostVariant, constants: &CostConstants) -> Result<CostEstimate> {
    check_cost_args(n, k)?;
    let two = BigUint::from(2u32);
    let ops = match variant {
        CostVariant::General => {
            let mut ops = two.pow(k + 1) - 2u32;
            for l in 1..=k {
                ops += two.pow(k - l + 1) * iterated_size(n, l);
            }
            ops
        }
        CostVariant::SmallI => {
            let mut inner = iterated_size(n, k);
            for l in 1..k {
                inner += &two * iterated_size(n, l);
            }
            inner * 2u32
        }
    };
    let seconds = big_to_f64(&ops) * constants.op_seconds;
    Ok(CostEstimate { ops, seconds })
}

fn big_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Time to compute `g^_i` for each of `solution_count` candidate base solutions.
pub fn attack_cost(n: usize, k: u32, solution_count: u64, constants: &CostConstants) -> Result<f64> {
    if solution_count == 0 {
        return Ok(0.0);
    }
    let one = cost_model(n, k, CostVariant::General, constants)?;
    Ok(solution_count as f64 * one.seconds)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSpace {
    /// `log10((n^(2^k))!)`.
    pub log10_permutations: f64,
    /// `log10` of the time to test every permutation.
    pub log10_seconds: f64,
}

/// Size of the symmetric group on `n^(2^k)` points, in `log10`.
pub fn search_space_log10(n: usize, k: u32, constants: &CostConstants) -> SearchSpace {
    let points = big_to_f64(&iterated_size(n, k));
    let log10_permutations = log10_factorial(points);
    SearchSpace {
        log10_permutations,
        log10_seconds: log10_permutations + constants.search_seconds.log10(),
    }
}
