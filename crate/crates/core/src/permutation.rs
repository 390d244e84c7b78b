//! Permutations of `{1..N}` in one-line form.
//!
//! Points are 1-based throughout. Composition follows function notation:
//! `p.compose(&q)` (also `&p * &q`) is the map `x -> p(q(x))`, so the right
//! factor is applied first.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::One;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Default cap on the number of elements visited by [`group_closure_order`].
pub const DEFAULT_CLOSURE_LIMIT: usize = 10_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

/// Rendering styles for [`Permutation::format`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermStyle {
    /// `2 3 4 1`
    OneLine,
    /// `(1,2,3,4)`; fixed points omitted, identity rendered as `()`.
    Compact,
    /// `(1,3)(2)(4)`; fixed points printed as 1-cycles.
    Verbose,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from its one-line images (`images[x-1]` is the image of `x`).
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y == 0 || y > n {
                return Err(Error::PointOutOfRange {
                    point: y.to_string(),
                    size: n.to_string(),
                });
            }
            if seen[y - 1] {
                return Err(Error::RepeatedPoint(y));
            }
            seen[y - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(Error::PointOutOfRange {
                        point: x.to_string(),
                        size: n.to_string(),
                    });
                }
                if seen[x - 1] {
                    return Err(Error::RepeatedPoint(x));
                }
                seen[x - 1] = true;
            }
            for (idx, &x) in cycle.iter().enumerate() {
                images[x - 1] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses either one-line notation (`"2 1 4 3"`, length must equal `n`)
    /// or cycle notation (`"(1,2)(3,4)"`, unlisted points fixed).
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        if text.contains('(') {
            let cycles = parse_cycles(text)?;
            Self::from_cycles(n, &cycles)
        } else {
            let images = text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if images.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: images.len(),
                });
            }
            Self::from_images(images)
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`. Panics when `x` is out of range.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        x.checked_sub(1).and_then(|i| self.images.get(i)).copied()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| y == i + 1)
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&y| self.images[y - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.size()];
        for (i, &y) in self.images.iter().enumerate() {
            images[y - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Disjoint cycles, each starting at its minimal element, sorted by that
    /// element. Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut multiplicities = BTreeMap::new();
        for c in self.cycles() {
            *multiplicities.entry(c.len()).or_insert(0) += 1;
        }
        CycleType {
            size: self.size(),
            multiplicities,
        }
    }

    pub fn format(&self, style: PermStyle) -> String {
        match style {
            PermStyle::OneLine => self
                .images
                .iter()
                .map(|y| y.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            PermStyle::Compact | PermStyle::Verbose => {
                let verbose = style == PermStyle::Verbose;
                let mut s = String::new();
                for c in self.cycles() {
                    if c.len() == 1 && !verbose {
                        continue;
                    }
                    s.push('(');
                    s.push_str(&c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                    s.push(')');
                }
                if s.is_empty() {
                    s.push_str("()");
                }
                s
            }
        }
    }

    /// Conjugates by a relabeling: the result maps `mu(x)` to `mu(self(x))`.
    pub fn relabel(&self, mu: &Permutation) -> Permutation {
        let mut images = vec![0; self.size()];
        for x in 1..=self.size() {
            images[mu.apply(x) - 1] = mu.apply(self.apply(x));
        }
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.size(), self.format(PermStyle::Compact))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(PermStyle::Compact))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on size mismatch; use [`Permutation::compose`] for a checked product.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutation sizes differ")
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text;
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        let Some(body) = rest.strip_prefix('(') else {
            return Err(Error::Parse(format!("expected '(' at {rest:?}")));
        };
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse("unterminated cycle".into()))?;
        let cycle = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad point {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = &body[close + 1..];
    }
    Ok(cycles)
}

/// Order of the subgroup of `Sym(N)` generated by `gens`, by breadth-first
/// closure. Fails once more than `limit` elements have been found.
pub fn group_closure_order(gens: &[Permutation], limit: usize) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    let n = first.size();
    if let Some(bad) = gens.iter().find(|g| g.size() != n) {
        return Err(Error::SizeMismatch {
            expected: n,
            found: bad.size(),
        });
    }
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g * &p;
            if !seen.contains(&q) {
                if seen.len() >= limit {
                    return Err(Error::ClosureLimit { limit });
                }
                seen.insert(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(seen.len())
}

/// Cycle type of a permutation of `{1..size}`: cycle length -> number of cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleType {
    size: usize,
    multiplicities: BTreeMap<usize, usize>,
}

impl CycleType {
    pub fn new(size: usize, multiplicities: BTreeMap<usize, usize>) -> Result<Self> {
        let mut multiplicities = multiplicities;
        multiplicities.retain(|_, c| *c > 0);
        if multiplicities.contains_key(&0) {
            return Err(Error::InvalidParameter("cycle length 0".into()));
        }
        let sum: usize = multiplicities.iter().map(|(d, c)| d * c).sum();
        if sum != size {
            return Err(Error::InconsistentCycleType { size, sum });
        }
        Ok(CycleType {
            size,
            multiplicities,
        })
    }

    /// Parses `"4^64"` or `"1^2,2^3"` (length^count, comma separated).
    /// A bare length means one cycle.
    pub fn parse(size: usize, text: &str) -> Result<Self> {
        let mut mult = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (d, c) = match part.split_once('^') {
                Some((d, c)) => (d.trim(), c.trim()),
                None => (part, "1"),
            };
            let d: usize = d
                .parse()
                .map_err(|_| Error::Parse(format!("bad cycle length {d:?}")))?;
            let c: usize = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad cycle count {c:?}")))?;
            *mult.entry(d).or_insert(0) += c;
        }
        Self::new(size, mult)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn multiplicities(&self) -> &BTreeMap<usize, usize> {
        &self.multiplicities
    }

    /// log10 of the number of permutations with this cycle type,
    /// `N! / prod_d (n_d! * d^n_d)`, via log-gamma.
    pub fn count_log10(&self) -> f64 {
        let mut ln = ln_gamma(self.size as f64 + 1.0);
        for (&d, &c) in &self.multiplicities {
            ln -= ln_gamma(c as f64 + 1.0) + c as f64 * (d as f64).ln();
        }
        ln / std::f64::consts::LN_10
    }

    /// Exact number of permutations with this cycle type.
    pub fn count_exact(&self) -> BigUint {
        let mut denom = BigUint::one();
        for (&d, &c) in &self.multiplicities {
            denom *= factorial(c) * BigUint::from(d).pow(c as u32);
        }
        factorial(self.size) / denom
    }

    /// All cycle types of `Sym(size)` (integer partitions of `size`).
    pub fn all(size: usize) -> Vec<CycleType> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        partitions(size, size, &mut current, &mut out);
        out.into_iter()
            .map(|parts| {
                let mut m = BTreeMap::new();
                for d in parts {
                    *m.entry(d).or_insert(0) += 1;
                }
                CycleType {
                    size,
                    multiplicities: m,
                }
            })
            .collect()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .multiplicities
            .iter()
            .map(|(d, c)| format!("{d}^{c}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

fn partitions(rem: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rem == 0 {
        out.push(current.clone());
        return;
    }
    for d in (1..=max.min(rem)).rev() {
        current.push(d);
        partitions(rem - d, d, current, out);
        current.pop();
    }
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// log10(n!) via log-gamma; accepts huge `n` as a float.
pub fn log10_factorial(n: f64) -> f64 {
    ln_gamma(n + 1.0) / std::f64::consts::LN_10
}
