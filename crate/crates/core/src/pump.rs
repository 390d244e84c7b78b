//! The pump-up construction: a solution on `X^2 = {T_i^k}` built from a
//! solution on `X`, with `T_i^k` renumbered as `n(i-1)+k`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::solution::{Relation, Solution};

/// Default cap on the number of `(x, y)` cells of a materialized pump.
pub const DEFAULT_PUMP_CELL_BOUND: usize = 1_000_000;

/// `T_i^k -> n(i-1)+k`.
pub fn renumber_pair(n: usize, i: usize, k: usize) -> Result<usize> {
    for v in [i, k] {
        if v == 0 || v > n {
            return Err(Error::PointOutOfRange {
                point: v.to_string(),
                size: n.to_string(),
            });
        }
    }
    Ok(pair_index(n, i, k))
}

/// Inverse of [`renumber_pair`]: `i = ceil(m/n)`, `k = m mod n` with 0 read as `n`.
pub fn renumber_point(n: usize, m: usize) -> Result<(usize, usize)> {
    if n == 0 || m == 0 || m > n * n {
        return Err(Error::PointOutOfRange {
            point: m.to_string(),
            size: (n * n).to_string(),
        });
    }
    Ok(split_index(n, m))
}

#[inline]
pub(crate) fn pair_index(n: usize, i: usize, k: usize) -> usize {
    n * (i - 1) + k
}

#[inline]
pub(crate) fn split_index(n: usize, m: usize) -> (usize, usize) {
    ((m - 1) / n + 1, (m - 1) % n + 1)
}

/// `n(i-1)+k` on arbitrary-precision labels.
pub fn renumber_pair_big(n: &BigUint, i: &BigUint, k: &BigUint) -> BigUint {
    n * (i - 1u32) + k
}

/// Splits `m` into `(ceil(m/n), m mod n)` with residue 0 read as `n`.
pub fn renumber_point_big(n: &BigUint, m: &BigUint) -> (BigUint, BigUint) {
    let (q, r) = (m - 1u32).div_rem(n);
    (q + 1u32, r + 1u32)
}

/// The permutation `T_j^l -> T_{p(j)}^{q(l)}` on `n^2` points.
pub fn pair(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    let n = p.size();
    if q.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: q.size(),
        });
    }
    let mut images = Vec::with_capacity(n * n);
    for j in 1..=n {
        let pj = p.apply(j);
        for l in 1..=n {
            images.push(pair_index(n, pj, q.apply(l)));
        }
    }
    Permutation::from_images(images)
}

/// Same as [`pair`], assembled from cycles: a `p`-cycle of length `a` and a
/// `q`-cycle of length `b` give `gcd(a, b)` cycles of length `lcm(a, b)`.
pub fn pair_by_cycles(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    let n = p.size();
    if q.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: q.size(),
        });
    }
    let mut cycles = Vec::new();
    for a in p.cycles() {
        for b in q.cycles() {
            let g = a.len().gcd(&b.len());
            let len = a.len().lcm(&b.len());
            for t in 0..g {
                cycles.push(
                    (0..len)
                        .map(|s| pair_index(n, a[s % a.len()], b[(t + s) % b.len()]))
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    Permutation::from_cycles(n * n, &cycles)
}

fn checked_pair(p: &Permutation, q: &Permutation) -> Permutation {
    let direct = pair(p, q).expect("families share a size");
    debug_assert_eq!(Ok(&direct), pair_by_cycles(p, q).as_ref());
    direct
}

/// `g_i^k(T_j^l) = T_{sigma_i(j)}^{sigma_k(l)}`.
pub fn g_of(s: &Solution, i: usize, k: usize) -> Result<Permutation> {
    renumber_pair(s.n(), i, k)?;
    Ok(checked_pair(s.sigma(i), s.sigma(k)))
}

/// `f_j^l(T_i^k) = T_{gamma_j(i)}^{gamma_l(k)}`.
pub fn f_of(s: &Solution, j: usize, l: usize) -> Result<Permutation> {
    renumber_pair(s.n(), j, l)?;
    Ok(checked_pair(s.gamma(j), s.gamma(l)))
}

/// `mu~(T_i^k) = T_{mu(i)}^{mu(k)}`.
pub fn lift_isomorphism(mu: &Permutation) -> Permutation {
    pair(mu, mu).expect("same permutation twice")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PumpedSolution {
    pub base: Solution,
    pub result: Solution,
}

impl PumpedSolution {
    pub fn base_n(&self) -> usize {
        self.base.n()
    }

    /// `T_i^k` for a renumbered point.
    pub fn label(&self, m: usize) -> String {
        let (i, k) = split_index(self.base_n(), m);
        format!("T_{i}^{k}")
    }
}

fn require_solution(s: &Solution) -> Result<()> {
    let v = s.verify();
    if let Some((x, y)) = v.involutive_witness {
        return Err(Error::NotASolution(format!("r is not involutive at ({x}, {y})")));
    }
    if let Some(w) = v.braided_witness {
        return Err(Error::NotASolution(format!(
            "braiding fails at ({}, {}, {})",
            w.x, w.y, w.z
        )));
    }
    Ok(())
}

/// Pumps a verified solution of size `n` to one of size `n^2`.
pub fn pump(s: &Solution) -> Result<PumpedSolution> {
    require_solution(s)?;
    Ok(PumpedSolution {
        base: s.clone(),
        result: pump_unchecked(s),
    })
}

fn pump_unchecked(s: &Solution) -> Solution {
    let n = s.n();
    let mut sigma = Vec::with_capacity(n * n);
    let mut gamma = Vec::with_capacity(n * n);
    for i in 1..=n {
        for k in 1..=n {
            sigma.push(checked_pair(s.sigma(i), s.sigma(k)));
            gamma.push(checked_pair(s.gamma(i), s.gamma(k)));
        }
    }
    Solution::from_maps(sigma, gamma).expect("pumped families have matching sizes")
}

/// Applies [`pump`] `k` times. Each step must keep the `N^2` cells of the
/// materialized result within `cell_bound`.
pub fn pump_iterate(s: &Solution, k: u32, cell_bound: usize) -> Result<Solution> {
    require_solution(s)?;
    let mut current = s.clone();
    for _ in 0..k {
        let size = current.n().checked_mul(current.n());
        let cells = size.and_then(|m| m.checked_mul(m));
        match cells {
            Some(c) if c <= cell_bound => current = pump_unchecked(&current),
            _ => {
                let big = BigUint::from(current.n()).pow(2);
                return Err(Error::MaterializationBound {
                    size: big.to_string(),
                    bound: cell_bound,
                });
            }
        }
    }
    Ok(current)
}

/// A two-letter word `T_a T_b` on renumbered points.
pub type Word = (usize, usize);

/// Either 0 or a difference `pos - neg` of two distinct words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signed {
    Zero,
    Diff { pos: Word, neg: Word },
}

impl Signed {
    pub fn diff(pos: Word, neg: Word) -> Self {
        if pos == neg {
            Signed::Zero
        } else {
            Signed::Diff { pos, neg }
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Signed::Zero => Signed::Zero,
            Signed::Diff { pos, neg } => Signed::Diff { pos: neg, neg: pos },
        }
    }

    /// Representative of `{self, -self}`.
    pub fn up_to_sign(self) -> Self {
        self.min(self.negate())
    }
}

/// Generator `C_ij^kl = T_{sigma_i(j)}^k T_{gamma_j(i)}^l - T_i^{sigma_k(l)} T_j^{gamma_l(k)}`.
pub fn frt_generator(s: &Solution, i: usize, j: usize, k: usize, l: usize) -> Signed {
    let n = s.n();
    let t = |a: usize, b: usize| pair_index(n, a, b);
    Signed::diff(
        (
            t(s.sigma(i).apply(j), k),
            t(s.gamma(j).apply(i), l),
        ),
        (
            t(i, s.sigma(k).apply(l)),
            t(j, s.gamma(l).apply(k)),
        ),
    )
}

/// One relation `T_i^k T_j^l = T_{sigma_i(j)}^{sigma_k(l)} T_{gamma_j(i)}^{gamma_l(k)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrtRecord {
    pub word: Word,
    pub image: Word,
}

/// Tally of the sign linking two generators that should agree up to sign.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SignTally {
    pub plus: usize,
    pub minus: usize,
    pub both_zero: usize,
    pub neither: usize,
}

impl SignTally {
    fn record(&mut self, a: Signed, b: Signed) {
        if a == Signed::Zero && b == Signed::Zero {
            self.both_zero += 1;
        } else if a == b {
            self.plus += 1;
        } else if a == b.negate() {
            self.minus += 1;
        } else {
            self.neither += 1;
        }
    }

    pub fn holds(&self) -> bool {
        self.neither == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrtReport {
    pub generators: usize,
    pub zero_generators: usize,
    /// Distinct nonzero generators modulo sign.
    pub nonzero_classes: usize,
    /// `C(n^2, 2)`.
    pub expected_classes: usize,
    pub swap_both_negates: bool,
    pub swap_one_negates: bool,
    pub fixed_left_sign: SignTally,
    pub fixed_right_sign: SignTally,
    pub fixed_both_zero: bool,
}

impl FrtReport {
    pub fn all_hold(&self) -> bool {
        self.swap_both_negates
            && self.swap_one_negates
            && self.fixed_left_sign.holds()
            && self.fixed_right_sign.holds()
            && self.fixed_both_zero
            && self.nonzero_classes == self.expected_classes
    }
}

/// Every word with its image under the pumped map, plus the symbolic report.
pub fn frt_relations(s: &Solution) -> Result<(Vec<FrtRecord>, FrtReport)> {
    require_solution(s)?;
    let n = s.n();
    let t = |a: usize, b: usize| pair_index(n, a, b);
    let r = |x: usize, y: usize| (s.sigma(x).apply(y), s.gamma(y).apply(x));
    let c = |i, j, k, l| frt_generator(s, i, j, k, l);

    let mut records = Vec::with_capacity(n.pow(4));
    let mut classes = BTreeSet::new();
    let mut zero_generators = 0;
    let mut swap_both = true;
    let mut swap_one = true;
    let mut left = SignTally::default();
    let mut right = SignTally::default();
    let mut fixed_both_zero = true;

    for i in 1..=n {
        for j in 1..=n {
            let (ri, rj) = r(i, j);
            for k in 1..=n {
                for l in 1..=n {
                    let (rk, rl) = r(k, l);
                    records.push(FrtRecord {
                        word: (t(i, k), t(j, l)),
                        image: (t(ri, rk), t(rj, rl)),
                    });
                    let base = c(i, j, k, l);
                    match base {
                        Signed::Zero => zero_generators += 1,
                        _ => {
                            classes.insert(base.up_to_sign());
                        }
                    }
                    swap_both &= c(ri, rj, rk, rl) == base.negate();
                    swap_one &= c(i, j, rk, rl) == c(ri, rj, k, l).negate();
                    let fixed_ij = (ri, rj) == (i, j);
                    let fixed_kl = (rk, rl) == (k, l);
                    if fixed_ij {
                        left.record(c(i, j, rk, rl), base);
                    }
                    if fixed_kl {
                        right.record(c(ri, rj, k, l), base);
                    }
                    if fixed_ij && fixed_kl {
                        fixed_both_zero &= base == Signed::Zero;
                    }
                }
            }
        }
    }
    let big_n = n * n;
    let report = FrtReport {
        generators: records.len(),
        zero_generators,
        nonzero_classes: classes.len(),
        expected_classes: big_n * (big_n - 1) / 2,
        swap_both_negates: swap_both,
        swap_one_negates: swap_one,
        fixed_left_sign: left,
        fixed_right_sign: right,
        fixed_both_zero,
    };
    Ok((records, report))
}

/// The nontrivial relations up to sign, each as `lhs = rhs` with `lhs < rhs`.
pub fn frt_relation_classes(s: &Solution) -> Result<Vec<Relation>> {
    let (records, _) = frt_relations(s)?;
    let mut out: BTreeSet<Relation> = BTreeSet::new();
    for rec in records {
        if rec.word < rec.image {
            out.insert(Relation {
                lhs: rec.word,
                rhs: rec.image,
            });
        }
    }
    Ok(out.into_iter().collect())
}

/// `n^{2^k}` as a big integer.
pub fn iterated_size(n: usize, k: u32) -> BigUint {
    let mut size = BigUint::from(n);
    for _ in 0..k {
        size = &size * &size;
    }
    size
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::solution::{ClassResult, RetractLevel};
    use proptest::prelude::*;

    fn perm(text: &str, n: usize) -> Permutation {
        Permutation::parse(text, n).unwrap()
    }

    #[test]
    fn renumber_examples() {
        assert_eq!(renumber_pair(4, 1, 1).unwrap(), 1);
        assert_eq!(renumber_pair(16, 7, 12).unwrap(), 108);
        assert_eq!(renumber_point(4, 16).unwrap(), (4, 4));
        assert_eq!(renumber_point(16, 108).unwrap(), (7, 12));
        assert!(renumber_pair(4, 5, 1).is_err());
        assert!(renumber_pair(4, 1, 0).is_err());
        assert!(renumber_point(4, 17).is_err());
        assert!(renumber_point(4, 0).is_err());

        let n = BigUint::from(16u32);
        let m = renumber_pair_big(&n, &BigUint::from(7u32), &BigUint::from(12u32));
        assert_eq!(m, BigUint::from(108u32));
        assert_eq!(
            renumber_point_big(&n, &BigUint::from(32u32)),
            (BigUint::from(2u32), BigUint::from(16u32))
        );
    }

    #[test]
    fn g_examples() {
        let s = catalog::four_point_irretractable();
        let g13 = g_of(&s, 1, 3).unwrap();
        assert_eq!(
            g13,
            perm("(1,7,9,15)(3,5,11,13)(2,6,10,14)(4,8,12,16)", 16)
        );
        // the same cycles written with T labels
        let t = |i, k| renumber_pair(4, i, k).unwrap();
        assert_eq!(g13.apply(t(1, 1)), t(2, 3));
        assert_eq!(g13.apply(t(2, 3)), t(3, 1));
        assert_eq!(g13.apply(t(3, 1)), t(4, 3));
        assert_eq!(g13.apply(t(4, 3)), t(1, 1));

        assert_eq!(
            g_of(&s, 4, 2).unwrap(),
            perm("(1,4,3,2)(5,16,7,14)(9,12,11,10)(13,8,15,6)", 16)
        );

        let g34 = g_of(&s, 3, 4).unwrap();
        let fixed: Vec<usize> = (1..=16).filter(|&m| g34.apply(m) == m).collect();
        assert_eq!(fixed, vec![t(2, 1), t(2, 3), t(4, 1), t(4, 3)]);

        let triv = Solution::trivial(3);
        assert!(g_of(&triv, 2, 3).unwrap().is_identity());
        assert!(f_of(&triv, 1, 1).unwrap().is_identity());
        assert!(g_of(&s, 5, 1).is_err());
    }

    #[test]
    fn pump_examples() {
        let c = pump(&catalog::cyclic_permutation(2)).unwrap().result;
        assert!(c.verify().is_solution());
        assert_eq!(c.orbits(), vec![vec![1, 4], vec![2, 3]]);
        assert_eq!(c.class_of(100), ClassResult::Finite(2));

        let p = pump(&catalog::four_point_irretractable()).unwrap().result;
        assert_eq!(p.n(), 16);
        assert!(p.verify().is_solution());
        assert_eq!(p.class_of(100), ClassResult::Finite(4));
        assert!(p.is_indecomposable());
        assert_eq!(p.multipermutation_level().unwrap(), RetractLevel::Irretractable);

        assert_eq!(pump(&Solution::trivial(3)).unwrap().result, Solution::trivial(9));

        assert!(matches!(
            pump(&catalog::non_braided_three()),
            Err(Error::NotASolution(_))
        ));
    }

    #[test]
    fn pumped_gamma_is_derived() {
        let p = pump(&catalog::four_point_irretractable()).unwrap().result;
        Solution::new(p.sigmas().to_vec(), p.gammas().to_vec()).unwrap();
    }

    #[test]
    fn pumped_labels() {
        let p = pump(&catalog::four_point_irretractable()).unwrap();
        assert_eq!(p.label(1), "T_1^1");
        assert_eq!(p.label(7), "T_2^3");
        assert_eq!(p.label(16), "T_4^4");
    }

    #[test]
    fn pump_iterate_examples() {
        let s = catalog::four_point_irretractable();
        assert_eq!(pump_iterate(&s, 1, DEFAULT_PUMP_CELL_BOUND).unwrap(), pump(&s).unwrap().result);
        let c2 = pump_iterate(&catalog::cyclic_permutation(2), 2, DEFAULT_PUMP_CELL_BOUND).unwrap();
        assert_eq!(c2.n(), 16);
        assert!(!c2.is_indecomposable());
        let big = pump_iterate(&s, 2, DEFAULT_PUMP_CELL_BOUND).unwrap();
        assert_eq!(big.n(), 256);
        assert!(matches!(
            pump_iterate(&s, 3, DEFAULT_PUMP_CELL_BOUND),
            Err(Error::MaterializationBound { .. })
        ));
        assert!(matches!(
            pump_iterate(&s, 2, 1000),
            Err(Error::MaterializationBound { .. })
        ));
    }

    #[test]
    fn frt_trivial_is_commutation() {
        let classes = frt_relation_classes(&Solution::trivial(2)).unwrap();
        assert_eq!(classes.len(), 6);
        for r in classes {
            assert_eq!(r.lhs, (r.rhs.1, r.rhs.0));
        }
    }

    #[test]
    fn frt_two_point_cycle() {
        let s = catalog::cyclic_permutation(2);
        let classes = frt_relation_classes(&s).unwrap();
        let mut expected = vec![
            ((1, 1), (4, 4)),
            ((1, 2), (3, 4)),
            ((2, 1), (4, 3)),
            ((1, 3), (2, 4)),
            ((2, 2), (3, 3)),
            ((3, 1), (4, 2)),
        ];
        expected.sort();
        let got: Vec<_> = classes.iter().map(|r| (r.lhs, r.rhs)).collect();
        assert_eq!(got, expected);
        assert_eq!(classes, pump(&s).unwrap().result.structure_relations());
    }

    #[test]
    fn frt_report_four_point() {
        let (records, report) = frt_relations(&catalog::four_point_irretractable()).unwrap();
        assert_eq!(records.len(), 256);
        assert_eq!(report.expected_classes, 120);
        assert_eq!(report.nonzero_classes, 120);
        assert!(report.all_hold(), "{report:?}");
        assert!(report.zero_generators > 0);
    }

    #[test]
    fn lift_examples() {
        assert!(lift_isomorphism(&Permutation::identity(3)).is_identity());
        assert_eq!(lift_isomorphism(&perm("(1,2)", 2)), perm("(1,4)(2,3)", 4));

        let s = catalog::four_point_irretractable();
        let mu = perm("(1,3,2)", 4);
        let t = s.relabel(&mu);
        assert!(s.is_isomorphism(&t, &mu));
        let (ps, pt) = (pump(&s).unwrap().result, pump(&t).unwrap().result);
        assert!(ps.is_isomorphism(&pt, &lift_isomorphism(&mu)));
    }

    #[test]
    fn iterated_sizes() {
        assert_eq!(iterated_size(4, 0), BigUint::from(4u32));
        assert_eq!(iterated_size(4, 2), BigUint::from(256u32));
        assert_eq!(iterated_size(4, 6), BigUint::from(2u32).pow(128));
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn cycle_shortcut_matches_direct(
            (p, q) in (1usize..9).prop_flat_map(|n| (arb_perm(n), arb_perm(n)))
        ) {
            prop_assert_eq!(pair(&p, &q).unwrap(), pair_by_cycles(&p, &q).unwrap());
        }

        #[test]
        fn renumber_round_trip(n in 1usize..50, i in 1usize..50, k in 1usize..50) {
            prop_assume!(i <= n && k <= n);
            let m = renumber_pair(n, i, k).unwrap();
            prop_assert!(m >= 1 && m <= n * n);
            prop_assert_eq!(renumber_point(n, m).unwrap(), (i, k));
        }

        #[test]
        fn big_renumber_matches_small(n in 1usize..40, m in 1usize..1600) {
            prop_assume!(m <= n * n);
            let (i, k) = renumber_point(n, m).unwrap();
            let nb = BigUint::from(n);
            prop_assert_eq!(
                renumber_point_big(&nb, &BigUint::from(m)),
                (BigUint::from(i), BigUint::from(k))
            );
        }

        #[test]
        fn pair_is_multiplicative(
            (p1, q1, p2, q2) in (1usize..7).prop_flat_map(|n| (arb_perm(n), arb_perm(n), arb_perm(n), arb_perm(n)))
        ) {
            let lhs = &pair(&p1, &q1).unwrap() * &pair(&p2, &q2).unwrap();
            prop_assert_eq!(lhs, pair(&(&p1 * &p2), &(&q1 * &q2)).unwrap());
        }
    }
}
