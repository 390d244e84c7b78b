//! Finite set-theoretic solutions `(X, r)` with `r(x, y) = (sigma_x(y), gamma_y(x))`
//! on `X = {1..n}`, and the structural analyses run on them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::permutation::{group_closure_order, Permutation, DEFAULT_CLOSURE_LIMIT};

pub const DEFAULT_CLASS_CAP: usize = 1_000_000;
pub const DEFAULT_TABLE_MAX_STEPS: usize = 1 << 16;
pub const ISOMORPHISM_BRUTE_FORCE_LIMIT: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Solution {
    sigma: Vec<Permutation>,
    gamma: Vec<Permutation>,
}

/// Computes `gamma_y(x) = sigma^{-1}_{sigma_x(y)}(x)` for every `x, y`.
pub fn derive_gamma(sigma: &[Permutation]) -> Result<Vec<Permutation>> {
    let n = sigma.len();
    check_family_sizes(sigma)?;
    let inv: Vec<Permutation> = sigma.iter().map(Permutation::inverse).collect();
    (1..=n)
        .map(|y| {
            let images = (1..=n)
                .map(|x| inv[sigma[x - 1].apply(y) - 1].apply(x))
                .collect();
            Permutation::from_images(images).map_err(|_| Error::GammaNotBijective { y })
        })
        .collect()
}

fn check_family_sizes(family: &[Permutation]) -> Result<()> {
    let n = family.len();
    if n == 0 {
        return Err(Error::InvalidParameter("a solution needs n >= 1".into()));
    }
    for p in family {
        if p.size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: p.size(),
            });
        }
    }
    Ok(())
}

impl Solution {
    /// Builds the involutive solution determined by the sigma family.
    pub fn from_sigma(sigma: Vec<Permutation>) -> Result<Self> {
        let gamma = derive_gamma(&sigma)?;
        Ok(Solution { sigma, gamma })
    }

    /// Builds a solution from both families, asserting that `gamma` is the
    /// family derived from `sigma`.
    pub fn new(sigma: Vec<Permutation>, gamma: Vec<Permutation>) -> Result<Self> {
        let derived = derive_gamma(&sigma)?;
        if gamma.len() != derived.len() {
            return Err(Error::SizeMismatch {
                expected: derived.len(),
                found: gamma.len(),
            });
        }
        if let Some(y) = (0..derived.len()).find(|&y| derived[y] != gamma[y]) {
            return Err(Error::GammaMismatch { y: y + 1 });
        }
        Ok(Solution { sigma, gamma })
    }

    /// Accepts arbitrary bijective maps without any consistency check.
    /// The result need not be involutive or braided; see [`Solution::verify`].
    pub fn from_maps(sigma: Vec<Permutation>, gamma: Vec<Permutation>) -> Result<Self> {
        check_family_sizes(&sigma)?;
        if gamma.len() != sigma.len() {
            return Err(Error::SizeMismatch {
                expected: sigma.len(),
                found: gamma.len(),
            });
        }
        check_family_sizes(&gamma)?;
        Ok(Solution { sigma, gamma })
    }

    pub fn trivial(n: usize) -> Self {
        let id = Permutation::identity(n);
        Solution {
            sigma: vec![id.clone(); n],
            gamma: vec![id; n],
        }
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self, x: usize) -> &Permutation {
        &self.sigma[x - 1]
    }

    pub fn gamma(&self, y: usize) -> &Permutation {
        &self.gamma[y - 1]
    }

    pub fn sigmas(&self) -> &[Permutation] {
        &self.sigma
    }

    pub fn gammas(&self) -> &[Permutation] {
        &self.gamma
    }

    fn check_point(&self, x: usize) -> Result<()> {
        if x == 0 || x > self.n() {
            return Err(Error::PointOutOfRange {
                point: x.to_string(),
                size: self.n().to_string(),
            });
        }
        Ok(())
    }

    /// `r(x, y) = (sigma_x(y), gamma_y(x))`.
    pub fn apply_r(&self, x: usize, y: usize) -> Result<(usize, usize)> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(self.r(x, y))
    }

    #[inline]
    fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x - 1].apply(y), self.gamma[y - 1].apply(x))
    }

    /// Exhaustive check of involutivity and the three braiding identities.
    pub fn verify(&self) -> Verification {
        let n = self.n();
        let s = |x: usize, y: usize| self.sigma[x - 1].apply(y);
        let g = |x: usize, y: usize| self.gamma[x - 1].apply(y);

        let mut involutive = None;
        'inv: for x in 1..=n {
            for y in 1..=n {
                if s(s(x, y), g(y, x)) != x || g(g(y, x), s(x, y)) != y {
                    involutive = Some((x, y));
                    break 'inv;
                }
            }
        }

        let mut braided = None;
        'br: for x in 1..=n {
            for y in 1..=n {
                let sxy = s(x, y);
                let gyx = g(y, x);
                for z in 1..=n {
                    let identity = if s(x, s(y, z)) != s(sxy, s(gyx, z)) {
                        Some(BraidIdentity::SigmaProduct)
                    } else if g(y, g(x, z)) != g(gyx, g(sxy, z)) {
                        Some(BraidIdentity::GammaProduct)
                    } else if g(s(gyx, z), sxy) != s(g(s(y, z), x), g(z, y)) {
                        Some(BraidIdentity::Mixed)
                    } else {
                        None
                    };
                    if let Some(identity) = identity {
                        braided = Some(BraidWitness { x, y, z, identity });
                        break 'br;
                    }
                }
            }
        }

        Verification {
            nondegenerate: true,
            involutive_witness: involutive,
            braided_witness: braided,
        }
    }

    /// Pointwise check of `r12 r23 r12 = r23 r12 r23` on `X^3`.
    pub fn braid_relation_holds(&self) -> bool {
        let n = self.n();
        let r12 = |(a, b, c): (usize, usize, usize)| {
            let (p, q) = self.r(a, b);
            (p, q, c)
        };
        let r23 = |(a, b, c): (usize, usize, usize)| {
            let (p, q) = self.r(b, c);
            (a, p, q)
        };
        (1..=n)
            .cartesian_product(1..=n)
            .cartesian_product(1..=n)
            .all(|((a, b), c)| r12(r23(r12((a, b, c)))) == r23(r12(r23((a, b, c)))))
    }

    /// `D(x) = sigma_x^{-1}(x)`.
    pub fn diagonal(&self, x: usize) -> usize {
        self.sigma[x - 1].inverse().apply(x)
    }

    /// `D` as a permutation of `X`.
    pub fn diagonal_map(&self) -> Result<Permutation> {
        Permutation::from_images((1..=self.n()).map(|x| self.diagonal(x)).collect())
    }

    /// `D^{-1}(y) = gamma_y^{-1}(y)`.
    pub fn diagonal_inverse(&self, y: usize) -> usize {
        self.gamma[y - 1].inverse().apply(y)
    }

    /// Minimal `m` with `sigma_x sigma_{D(x)} ... sigma_{D^{m-1}(x)} = Id` for every `x`.
    pub fn class_of(&self, cap: usize) -> ClassResult {
        let n = self.n();
        let d: Vec<usize> = (1..=n).map(|x| self.diagonal(x)).collect();
        let mut products: Vec<Permutation> = self.sigma.clone();
        let mut cursor: Vec<usize> = d.clone();
        for m in 1..=cap {
            if products.iter().all(Permutation::is_identity) {
                return ClassResult::Finite(m);
            }
            for x in 0..n {
                products[x] = &products[x] * &self.sigma[cursor[x] - 1];
                cursor[x] = d[cursor[x] - 1];
            }
        }
        ClassResult::Exceeded
    }

    /// The word `x D(x) ... D^{m-1}(x)` for each `x`.
    pub fn frozen_words(&self, m: usize) -> Vec<Vec<usize>> {
        (1..=self.n())
            .map(|x| {
                let mut word = Vec::with_capacity(m);
                let mut cur = x;
                for _ in 0..m {
                    word.push(cur);
                    cur = self.diagonal(cur);
                }
                word
            })
            .collect()
    }

    /// Frozen elements of length `m`, where `m` must be 2 or the class.
    pub fn frozen_elements(&self, m: usize, class_cap: usize) -> Result<Vec<Vec<usize>>> {
        let class = self.class_of(class_cap);
        if m == 2 || class == ClassResult::Finite(m) {
            Ok(self.frozen_words(m))
        } else {
            Err(Error::InvalidFrozenLength {
                m,
                class: class.to_string(),
            })
        }
    }

    /// Quotient by `x ~ y iff sigma_x = sigma_y`.
    pub fn retract(&self) -> Result<Retraction> {
        let n = self.n();
        let mut index: HashMap<&Permutation, usize> = HashMap::new();
        let mut class_map = Vec::with_capacity(n);
        let mut reps = Vec::new();
        for x in 1..=n {
            let next = index.len() + 1;
            let c = *index.entry(&self.sigma[x - 1]).or_insert(next);
            if c == next {
                reps.push(x);
            }
            class_map.push(c);
        }
        let cls = |x: usize| class_map[x - 1];
        let m = reps.len();
        let mut sig = vec![vec![0usize; m]; m];
        let mut gam = vec![vec![0usize; m]; m];
        for x in 1..=n {
            for y in 1..=n {
                let (u, v) = self.r(x, y);
                let (cx, cy) = (cls(x) - 1, cls(y) - 1);
                for (table, row, col, val) in [(&mut sig, cx, cy, cls(u)), (&mut gam, cy, cx, cls(v))] {
                    let slot = &mut table[row][col];
                    if *slot == 0 {
                        *slot = val;
                    } else if *slot != val {
                        return Err(Error::RetractIllDefined { x, y });
                    }
                }
            }
        }
        let to_perms = |t: Vec<Vec<usize>>| -> Result<Vec<Permutation>> {
            t.into_iter()
                .map(|row| {
                    Permutation::from_images(row)
                        .map_err(|e| Error::NotASolution(format!("retraction map: {e}")))
                })
                .collect()
        };
        Ok(Retraction {
            solution: Solution::from_maps(to_perms(sig)?, to_perms(gam)?)?,
            class_map,
        })
    }

    /// Least `l` with `|Ret^l| = 1`, or irretractable when the retraction
    /// sequence stabilises above size 1.
    pub fn multipermutation_level(&self) -> Result<RetractLevel> {
        let mut current = self.clone();
        let mut level = 0;
        while current.n() > 1 {
            let next = current.retract()?.solution;
            if next.n() == current.n() {
                return Ok(RetractLevel::Irretractable);
            }
            current = next;
            level += 1;
        }
        Ok(RetractLevel::Level(level))
    }

    /// Orbits of the group generated by the sigma family, each sorted,
    /// ordered by minimal element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 1..=n {
            if orbit_of[start - 1] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = vec![start];
            orbit_of[start - 1] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for s in &self.sigma {
                    let y = s.apply(x);
                    if orbit_of[y - 1] == usize::MAX {
                        orbit_of[y - 1] = id;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            orbits.push(members);
        }
        orbits
    }

    pub fn is_indecomposable(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Column `l` holds every `sigma_{i_1} ... sigma_{i_l}(1)`; column 0 is `{1}`.
    /// Iteration stops at the first repeated column set.
    pub fn orbit_table(&self, max_steps: usize) -> OrbitTable {
        let mut columns: Vec<BTreeSet<usize>> = vec![BTreeSet::from([1])];
        let mut seen: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        seen.insert(columns[0].clone(), 0);
        for _ in 0..max_steps {
            let last = columns.last().unwrap();
            let next: BTreeSet<usize> = last
                .iter()
                .flat_map(|&x| self.sigma.iter().map(move |s| s.apply(x)))
                .collect();
            if let Some(&start) = seen.get(&next) {
                return OrbitTable {
                    columns,
                    cycle_start: Some(start),
                };
            }
            seen.insert(next.clone(), columns.len());
            columns.push(next);
        }
        OrbitTable {
            columns,
            cycle_start: None,
        }
    }

    /// First `l >= 1` whose column is all of `X`.
    pub fn condition_c(&self, max_steps: usize) -> Option<usize> {
        let table = self.orbit_table(max_steps);
        let n = self.n();
        let full = |c: &BTreeSet<usize>| c.len() == n;
        if let Some(l) = (1..table.columns.len()).find(|&l| full(&table.columns[l])) {
            return Some(l);
        }
        // column 0 recurs at the period when the cycle starts there
        match table.cycle_start {
            Some(0) if full(&table.columns[0]) => Some(table.columns.len()),
            _ => None,
        }
    }

    /// Every pair `(s, m)` shares some column of the orbit table.
    pub fn column_pair_condition(&self, max_steps: usize) -> bool {
        let n = self.n();
        let table = self.orbit_table(max_steps);
        let mut covered = vec![false; n * n];
        for col in &table.columns {
            for &s in col {
                for &m in col {
                    covered[(s - 1) * n + (m - 1)] = true;
                }
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// Defining relations `x y = sigma_x(y) gamma_y(x)` of the structure group,
    /// one per `{(x,y), r(x,y)}` pair with `r(x,y) != (x,y)`.
    pub fn structure_relations(&self) -> Vec<Relation> {
        let n = self.n();
        let mut out = Vec::new();
        for x in 1..=n {
            for y in 1..=n {
                let rhs = self.r(x, y);
                if (x, y) < rhs {
                    out.push(Relation { lhs: (x, y), rhs });
                }
            }
        }
        out
    }

    /// Whether `mu` carries `self` onto `other`.
    pub fn is_isomorphism(&self, other: &Solution, mu: &Permutation) -> bool {
        let n = self.n();
        if other.n() != n || mu.size() != n {
            return false;
        }
        (1..=n).cartesian_product(1..=n).all(|(x, y)| {
            let (u, v) = self.r(x, y);
            other.r(mu.apply(x), mu.apply(y)) == (mu.apply(u), mu.apply(v))
        })
    }

    /// Lexicographically first isomorphism `self -> other`, by brute force.
    pub fn find_isomorphism(&self, other: &Solution) -> Result<Option<Permutation>> {
        let n = self.n();
        if other.n() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: other.n(),
            });
        }
        if n > ISOMORPHISM_BRUTE_FORCE_LIMIT {
            return Err(Error::TooLarge {
                what: "isomorphism search",
                n,
                limit: ISOMORPHISM_BRUTE_FORCE_LIMIT,
            });
        }
        for images in (1..=n).permutations(n) {
            let mu = Permutation::from_images(images)?;
            if self.is_isomorphism(other, &mu) {
                return Ok(Some(mu));
            }
        }
        Ok(None)
    }

    /// The isomorphic solution obtained by renaming every point `x` to `mu(x)`.
    pub fn relabel(&self, mu: &Permutation) -> Solution {
        let n = self.n();
        let mut sigma = vec![Permutation::identity(n); n];
        let mut gamma = vec![Permutation::identity(n); n];
        for x in 1..=n {
            sigma[mu.apply(x) - 1] = self.sigma[x - 1].relabel(mu);
            gamma[mu.apply(x) - 1] = self.gamma[x - 1].relabel(mu);
        }
        Solution { sigma, gamma }
    }

    /// Order of the group generated by the sigma family.
    pub fn iyb_order(&self, limit: usize) -> Result<usize> {
        group_closure_order(&self.sigma, limit)
    }

    pub fn analyze(&self, opts: &AnalysisOptions) -> Result<AnalysisReport> {
        let v = self.verify();
        let class = self.class_of(opts.class_cap);
        let class_witness = match class {
            ClassResult::Finite(m) => Some(self.frozen_words(m)[0].clone()),
            ClassResult::Exceeded => None,
        };
        let iyb_order = match self.iyb_order(opts.closure_limit) {
            Ok(o) => Some(o),
            Err(Error::ClosureLimit { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(AnalysisReport {
            n: self.n(),
            nondegenerate: v.nondegenerate,
            involutive: v.involutive(),
            braided: v.braided(),
            class_m: class,
            class_witness,
            indecomposable: self.is_indecomposable(),
            retract_level: self.multipermutation_level()?,
            condition_c: self.condition_c(opts.table_max_steps),
            iyb_order,
        })
    }

    /// Serializes in the plain-text solution format: `n`, then the sigma
    /// family and the gamma family in one-line notation.
    pub fn to_file_string(&self, header: &[String]) -> String {
        let mut s = String::new();
        for h in header {
            s.push_str("# ");
            s.push_str(h);
            s.push('\n');
        }
        s.push_str(&format!("{}\n", self.n()));
        for p in self.sigma.iter().chain(&self.gamma) {
            s.push_str(&p.format(crate::permutation::PermStyle::OneLine));
            s.push('\n');
        }
        s
    }

    /// Parses the plain-text solution format. Lines starting with `#` and
    /// blank lines are ignored; the gamma block is optional and, when given,
    /// must match the derived family.
    pub fn parse_file(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let Some(&(first_line, first)) = lines.first() else {
            return Err(Error::ParseLine {
                line: 1,
                message: "empty solution file".into(),
            });
        };
        let n: usize = first.parse().map_err(|_| Error::ParseLine {
            line: first_line,
            message: format!("expected the size n, found {first:?}"),
        })?;
        if n == 0 {
            return Err(Error::ParseLine {
                line: first_line,
                message: "n must be positive".into(),
            });
        }
        let body = &lines[1..];
        if body.len() != n && body.len() != 2 * n {
            return Err(Error::ParseLine {
                line: body.last().map_or(first_line, |l| l.0),
                message: format!(
                    "expected {n} sigma lines (and optionally {n} gamma lines), found {} lines",
                    body.len()
                ),
            });
        }
        let perms = body
            .iter()
            .map(|&(line, text)| {
                Permutation::parse(text, n).map_err(|e| Error::ParseLine {
                    line,
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut perms = perms.into_iter();
        let sigma: Vec<Permutation> = perms.by_ref().take(n).collect();
        let gamma: Vec<Permutation> = perms.collect();
        if gamma.is_empty() {
            Solution::from_sigma(sigma)
        } else {
            Solution::new(sigma, gamma)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidIdentity {
    /// `sigma_x sigma_y = sigma_{sigma_x(y)} sigma_{gamma_y(x)}`
    SigmaProduct,
    /// `gamma_y gamma_x = gamma_{gamma_y(x)} gamma_{sigma_x(y)}`
    GammaProduct,
    /// the mixed identity linking both families on a triple
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub identity: BraidIdentity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    /// Always true: both families are stored as bijections.
    pub nondegenerate: bool,
    pub involutive_witness: Option<(usize, usize)>,
    pub braided_witness: Option<BraidWitness>,
}

impl Verification {
    pub fn involutive(&self) -> bool {
        self.involutive_witness.is_none()
    }

    pub fn braided(&self) -> bool {
        self.braided_witness.is_none()
    }

    pub fn is_solution(&self) -> bool {
        self.nondegenerate && self.involutive() && self.braided()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassResult {
    Finite(usize),
    Exceeded,
}

impl fmt::Display for ClassResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassResult::Finite(m) => write!(f, "{m}"),
            ClassResult::Exceeded => f.write_str("exceeded"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RetractLevel {
    Level(usize),
    Irretractable,
}

impl fmt::Display for RetractLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RetractLevel::Level(l) => write!(f, "{l}"),
            RetractLevel::Irretractable => f.write_str("irretractable"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Retraction {
    pub solution: Solution,
    /// `class_map[x-1]` is the 1-based class of `x`, numbered by first occurrence.
    pub class_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTable {
    /// Distinct columns in visiting order, starting with column 0 = `{1}`.
    pub columns: Vec<BTreeSet<usize>>,
    /// Index the sequence returns to after the last stored column, if a
    /// repeat was found within the step budget.
    pub cycle_start: Option<usize>,
}

impl OrbitTable {
    /// Column `l`, following the eventual period.
    pub fn column(&self, l: usize) -> Option<&BTreeSet<usize>> {
        if l < self.columns.len() {
            return Some(&self.columns[l]);
        }
        let start = self.cycle_start?;
        let period = self.columns.len() - start;
        Some(&self.columns[start + (l - start) % period])
    }

    /// Union of all columns: the forward orbit of 1.
    pub fn reach(&self) -> BTreeSet<usize> {
        self.columns.iter().flatten().copied().collect()
    }
}

/// A defining relation `lhs = rhs` between two-letter words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub lhs: (usize, usize),
    pub rhs: (usize, usize),
}

impl Relation {
    pub fn render(&self, label: impl Fn(usize) -> String) -> String {
        let word = |(a, b): (usize, usize)| {
            if a == b {
                format!("({})^2", label(a))
            } else {
                format!("{}{}", label(a), label(b))
            }
        };
        format!("{} = {}", word(self.lhs), word(self.rhs))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|x| format!("x{x}")))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AnalysisOptions {
    pub class_cap: usize,
    pub closure_limit: usize,
    pub table_max_steps: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            class_cap: DEFAULT_CLASS_CAP,
            closure_limit: DEFAULT_CLOSURE_LIMIT,
            table_max_steps: DEFAULT_TABLE_MAX_STEPS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub n: usize,
    pub nondegenerate: bool,
    pub involutive: bool,
    pub braided: bool,
    pub class_m: ClassResult,
    /// The frozen word of 1 at the class length; its sigma product is the identity.
    pub class_witness: Option<Vec<usize>>,
    pub indecomposable: bool,
    pub retract_level: RetractLevel,
    /// Witness column for condition (C), if it holds.
    pub condition_c: Option<usize>,
    /// `None` when the closure limit was hit.
    pub iyb_order: Option<usize>,
}

impl AnalysisReport {
    pub fn irretractable(&self) -> bool {
        self.retract_level == RetractLevel::Irretractable
    }

    pub fn to_text(&self) -> String {
        let witness = self
            .class_witness
            .as_ref()
            .map(|w| w.iter().map(|x| format!("sigma_{x}")).join(" "))
            .unwrap_or_else(|| "none".into());
        let lines = [
            format!("n: {}", self.n),
            format!("nondegenerate: {}", self.nondegenerate),
            format!("involutive: {}", self.involutive),
            format!("braided: {}", self.braided),
            format!("class_m: {}", self.class_m),
            format!("class_witness: {witness} = Id"),
            format!("indecomposable: {}", self.indecomposable),
            format!("retract_level: {}", self.retract_level),
            format!(
                "condition_C: {}",
                match self.condition_c {
                    Some(l) => format!("true (column {l})"),
                    None => "false".into(),
                }
            ),
            format!(
                "iyb_order: {}",
                self.iyb_order
                    .map_or_else(|| "exceeded".to_string(), |o| o.to_string())
            ),
        ];
        let mut s = lines.join("\n");
        s.push('\n');
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        json!({
            "n": self.n,
            "nondegenerate": self.nondegenerate,
            "involutive": self.involutive,
            "braided": self.braided,
            "class_m": match self.class_m {
                ClassResult::Finite(m) => json!(m),
                ClassResult::Exceeded => json!("exceeded"),
            },
            "class_witness": self.class_witness,
            "indecomposable": self.indecomposable,
            "retract_level": match self.retract_level {
                RetractLevel::Level(l) => json!(l),
                RetractLevel::Irretractable => json!("irretractable"),
            },
            "condition_C": self.condition_c.is_some(),
            "condition_C_column": self.condition_c,
            "iyb_order": match self.iyb_order {
                Some(o) => json!(o),
                None => json!("exceeded"),
            },
        })
    }
}
