//! Exhaustive census of small solutions, up to relabelling.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::solution::{AnalysisOptions, AnalysisReport, ClassResult, Solution};

pub const DEFAULT_ENUMERATE_BOUND: usize = 4;

#[derive(Debug, Clone)]
pub struct CensusClass {
    /// Lexicographically least sigma family among all relabellings.
    pub canonical: Solution,
    /// Every enumerated solution isomorphic to `canonical`.
    pub members: Vec<Solution>,
    pub report: AnalysisReport,
}

impl CensusClass {
    /// `n! / |members|` by orbit-stabiliser.
    pub fn automorphism_count(&self) -> usize {
        let n = self.canonical.n();
        (1..=n).product::<usize>() / self.members.len()
    }
}

#[derive(Debug, Clone)]
pub struct SolutionCensus {
    pub n: usize,
    pub classes: Vec<CensusClass>,
}

impl SolutionCensus {
    pub fn total_count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    pub fn iso_count(&self) -> usize {
        self.classes.len()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Solution> {
        self.classes.iter().map(|c| &c.canonical)
    }

    pub fn solutions(&self) -> impl Iterator<Item = &Solution> {
        self.classes.iter().flat_map(|c| c.members.iter())
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "n: {}\ntotal: {}\niso: {}\n",
            self.n,
            self.total_count(),
            self.iso_count()
        );
        for (idx, c) in self.classes.iter().enumerate() {
            let r = &c.report;
            let _ = writeln!(
                s,
                "class {:03}: members={} automorphisms={} class_m={} indecomposable={} retract_level={} condition_C={} iyb_order={}",
                idx + 1,
                c.members.len(),
                c.automorphism_count(),
                r.class_m,
                r.indecomposable,
                r.retract_level,
                r.condition_c.is_some(),
                r.iyb_order.map_or_else(|| "exceeded".to_string(), |o| o.to_string()),
            );
        }
        s
    }

    /// Writes one solution file per class and `summary.txt` into `dir`.
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        for (idx, c) in self.classes.iter().enumerate() {
            let header = vec![
                format!("census n={} class {:03}", self.n, idx + 1),
                format!("members {}", c.members.len()),
            ];
            fs::write(
                dir.join(format!("n{}_class{:03}.sol", self.n, idx + 1)),
                c.canonical.to_file_string(&header),
            )?;
        }
        fs::write(dir.join("summary.txt"), self.summary())?;
        Ok(())
    }
}

/// Lexicographically least sigma family over all relabellings of `s`.
pub fn canonical_form(s: &Solution) -> Solution {
    let n = s.n();
    (1..=n)
        .permutations(n)
        .map(|images| s.relabel(&Permutation::from_images(images).expect("permutation")))
        .min_by(|a, b| a.sigmas().cmp(b.sigmas()))
        .expect("at least one relabelling")
}

pub fn enumerate_solutions(n: usize) -> Result<SolutionCensus> {
    enumerate_solutions_bounded(n, DEFAULT_ENUMERATE_BOUND)
}

/// All solutions on `{1..n}`: every sigma tuple whose derived gamma family
/// exists and which is braided.
pub fn enumerate_solutions_bounded(n: usize, bound: usize) -> Result<SolutionCensus> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if n > bound {
        return Err(Error::TooLarge {
            what: "enumeration",
            n,
            limit: bound,
        });
    }
    let perms: Vec<Permutation> = (1..=n)
        .permutations(n)
        .map(|v| Permutation::from_images(v).expect("permutation"))
        .collect();
    let mut classes: BTreeMap<Vec<Permutation>, Vec<Solution>> = BTreeMap::new();
    for tuple in (0..n).map(|_| perms.iter().cloned()).multi_cartesian_product() {
        let Ok(s) = Solution::from_sigma(tuple) else {
            continue;
        };
        if !s.verify().is_solution() {
            continue;
        }
        classes
            .entry(canonical_form(&s).sigmas().to_vec())
            .or_default()
            .push(s);
    }
    let opts = AnalysisOptions::default();
    let classes = classes
        .into_iter()
        .map(|(sigma, members)| {
            let canonical = Solution::from_sigma(sigma)?;
            let report = canonical.analyze(&opts)?;
            Ok(CensusClass {
                canonical,
                members,
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SolutionCensus { n, classes })
}

/// Predicates on a class's analysis report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusPredicate {
    Indecomposable,
    Irretractable,
    ConditionC,
    Class(usize),
}

impl CensusPredicate {
    pub fn holds(&self, r: &AnalysisReport) -> bool {
        match self {
            CensusPredicate::Indecomposable => r.indecomposable,
            CensusPredicate::Irretractable => r.irretractable(),
            CensusPredicate::ConditionC => r.condition_c.is_some(),
            CensusPredicate::Class(m) => r.class_m == ClassResult::Finite(*m),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "indecomposable" => Ok(CensusPredicate::Indecomposable),
            "irretractable" => Ok(CensusPredicate::Irretractable),
            "condition-c" => Ok(CensusPredicate::ConditionC),
            _ => s
                .strip_prefix("class=")
                .and_then(|m| m.parse().ok())
                .map(CensusPredicate::Class)
                .ok_or_else(|| Error::Parse(format!("unknown census filter {s:?}"))),
        }
    }
}

/// Keeps the classes satisfying every predicate.
pub fn census_filter(census: &SolutionCensus, predicates: &[CensusPredicate]) -> SolutionCensus {
    SolutionCensus {
        n: census.n,
        classes: census
            .classes
            .iter()
            .filter(|c| predicates.iter().all(|p| p.holds(&c.report)))
            .cloned()
            .collect(),
    }
}
