//! How many configurations a locally deterministic rectilinear system with a
//! single seed tile can build on an `n × n` surface, in the worst case.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::system::TileAssemblySystem;
use crate::transition::{build_with, BuildError, BuildOptions};
use crate::verify::{verify, Verdict, VerifyError};

fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// `2(2n-1)! / (n!(n-1)!) - 1`, exactly. Zero for `n = 0`.
pub fn worst_case_config_count(n: u64) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let num = factorial(2 * n - 1) * 2u32;
    let den = factorial(n) * factorial(n - 1);
    num / den - 1u32
}

/// The diamond-shaped fragment of Pascal's triangle whose decorations count
/// configurations: node `(a, b)` stands for `a` tiles up the west column and
/// `b` along the south row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondDecoration {
    /// `levels[d]` holds the decorations of the nodes at distance `d` from the
    /// root, ordered by `a`.
    pub levels: Vec<Vec<BigUint>>,
    pub total: BigUint,
}

pub fn diamond_enumeration(n: usize) -> DiamondDecoration {
    if n == 0 {
        return DiamondDecoration {
            levels: Vec::new(),
            total: BigUint::zero(),
        };
    }
    // grid[a][b], filled by merging the two parents at equal distance
    let mut grid: Vec<Vec<BigUint>> = alloc::vec![alloc::vec![BigUint::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            grid[a][b] = if a == 0 || b == 0 {
                BigUint::one()
            } else {
                &grid[a - 1][b] + &grid[a][b - 1]
            };
        }
    }
    let mut levels = Vec::new();
    let mut total = BigUint::zero();
    for d in 0..(2 * n - 1) {
        let lo = d.saturating_sub(n - 1);
        let hi = d.min(n - 1);
        let level: Vec<BigUint> = (lo..=hi).map(|a| grid[a][d - a].clone()).collect();
        for v in &level {
            total += v;
        }
        levels.push(level);
    }
    DiamondDecoration { levels, total }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("system is not a locally deterministic rectilinear system with a unique terminal assembly ({0})")]
    NotApplicable(Verdict),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// Number of states of the explicit transition system, for systems that
/// verify as `UniqueTerminal`.
pub fn explicit_config_count(
    sys: &TileAssemblySystem,
    n: usize,
    opts: BuildOptions,
) -> Result<BigUint, CountError> {
    let report = verify(sys, n)?;
    if report.verdict != Verdict::UniqueTerminal {
        return Err(CountError::NotApplicable(report.verdict));
    }
    Ok(BigUint::from(build_with(sys, n, opts)?.state_count()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use alloc::string::ToString;

    // Oracle: C(2n, n) - 1 by the multiplicative formula, a different
    // evaluation order from the factorial ratio.
    fn central_binomial_minus_one(n: u64) -> BigUint {
        let mut c = BigUint::one();
        for i in 1..=n {
            c = c * (n + i) / i;
        }
        c - 1u32
    }

    #[test]
    fn small_values() {
        let got: Vec<BigUint> = (1..=5).map(worst_case_config_count).collect();
        let want: Vec<BigUint> = [1u32, 5, 19, 69, 251].map(BigUint::from).to_vec();
        assert_eq!(got, want);
        assert_eq!(worst_case_config_count(0), BigUint::zero());
    }

    #[test]
    fn two_evaluation_orders_agree() {
        for n in 1..=40 {
            assert_eq!(worst_case_config_count(n), central_binomial_minus_one(n));
        }
        assert_eq!(worst_case_config_count(20).to_string(), "137846528819");
        // beyond 64 bits
        assert!(worst_case_config_count(40).bits() > 64);
    }

    #[test]
    fn diamond_shapes() {
        let d = diamond_enumeration(2);
        assert_eq!(d.levels, [[1u32].map(BigUint::from).to_vec(), [1u32, 1].map(BigUint::from).to_vec(), [2u32].map(BigUint::from).to_vec()]);
        assert_eq!(d.total, BigUint::from(5u32));
        let d = diamond_enumeration(3);
        let flat: Vec<Vec<u32>> = d
            .levels
            .iter()
            .map(|l| l.iter().map(|v| u32::try_from(v).unwrap()).collect())
            .collect();
        assert_eq!(flat, [alloc::vec![1], alloc::vec![1, 1], alloc::vec![1, 2, 1], alloc::vec![3, 3], alloc::vec![6]]);
        assert_eq!(d.total, BigUint::from(19u32));
    }

    #[test]
    fn diamond_matches_formula() {
        for n in 1..=12 {
            let d = diamond_enumeration(n);
            assert_eq!(d.total, worst_case_config_count(n as u64));
            for level in &d.levels {
                let rev: Vec<_> = level.iter().rev().cloned().collect();
                assert_eq!(level, &rev);
            }
        }
    }

    #[test]
    fn explicit_counts() {
        let sys = catalog::sierpinski();
        for n in 1..=5 {
            assert_eq!(
                explicit_config_count(&sys, n, BuildOptions::default()).unwrap(),
                worst_case_config_count(n as u64)
            );
        }
        let short = catalog::truncated_sierpinski();
        let c = explicit_config_count(&short, 4, BuildOptions::default()).unwrap();
        assert!(c < worst_case_config_count(4));
        assert!(matches!(
            explicit_config_count(&catalog::ambiguous_sierpinski(), 3, BuildOptions::default()),
            Err(CountError::NotApplicable(Verdict::NonUniqueTerminal))
        ));
    }
}
