//! Small named solutions used as fixtures and CLI presets.

use crate::permutation::Permutation;
use crate::solution::Solution;

fn perms(n: usize, cycles: &[&str]) -> Vec<Permutation> {
    cycles
        .iter()
        .map(|c| Permutation::parse(c, n).expect("catalog permutation"))
        .collect()
}

/// Four points, indecomposable and irretractable, class 4.
pub fn four_point_irretractable() -> Solution {
    Solution::from_sigma(perms(4, &["(1,2,3,4)", "(2,1,4,3)", "(1,3)", "(2,4)"]))
        .expect("catalog solution")
}

/// Every `sigma_x` and `gamma_y` equal to the cycle `(1,2,...,n)`.
pub fn cyclic_permutation(n: usize) -> Solution {
    let cycle = if n == 1 {
        Permutation::identity(1)
    } else {
        Permutation::from_images((1..=n).map(|x| x % n + 1).collect()).expect("n-cycle")
    };
    Solution::from_sigma(vec![cycle; n]).expect("catalog solution")
}

/// Three points whose derived gamma family exists but which are not braided.
pub fn non_braided_three() -> Solution {
    Solution::from_sigma(perms(3, &NON_BRAIDED_THREE)).expect("catalog maps")
}

const NON_BRAIDED_THREE: [&str; 3] = ["(2,3)", "(2,3)", "(1,2,3)"];

pub fn by_name(name: &str) -> Option<Solution> {
    match name {
        "four-point" => Some(four_point_irretractable()),
        "cyclic-2" => Some(cyclic_permutation(2)),
        _ => None,
    }
}
