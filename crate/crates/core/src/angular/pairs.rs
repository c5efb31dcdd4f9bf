use super::degeneracy::{degeneracy_unchecked, j_min, validate_total_spin};
use crate::numerics::{ExactRational, HalfInt};
use crate::{Error, Result};

/// One `(j1, j2)` sector of a bipartition, with the probability
/// `d^{j1}_n d^{j2}_{N-n} / d^J_N` of finding the subensembles in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubensemblePair {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub weight: ExactRational,
}

impl SubensemblePair {
    /// Qudit level `2 min(j1, j2) + 1`, the largest possible Schmidt rank.
    pub fn qudit_level(&self) -> u64 {
        (self.j1.min(self.j2).twice() + 1) as u64
    }
}

pub(crate) fn triangle(j: HalfInt, j1: HalfInt, j2: HalfInt) -> bool {
    (j1 - j2).abs() <= j && j <= j1 + j2 && (j1 + j2 - j).is_integer()
}

/// All subensemble pairs contributing to total spin `j` when `n` of the `total`
/// spins form subensemble 1, in ascending `(j1, j2)` order.
///
/// Pairs violating the triangle rule carry no weight and are left out.
pub fn allowed_pairs(j: HalfInt, total: u32, n: u32) -> Result<Vec<SubensemblePair>> {
    if n == 0 || n >= total {
        return Err(Error::InvalidSplit { n, total });
    }
    validate_total_spin(j, total)?;
    let d_total = ExactRational::from_biguint(&degeneracy_unchecked(j, total));
    let rest = total - n;
    let mut pairs = Vec::new();
    for t1 in (j_min(n).twice()..=n as i64).step_by(2) {
        let j1 = HalfInt::from_twice(t1);
        for t2 in (j_min(rest).twice()..=rest as i64).step_by(2) {
            let j2 = HalfInt::from_twice(t2);
            if !triangle(j, j1, j2) {
                continue;
            }
            let count = degeneracy_unchecked(j1, n) * degeneracy_unchecked(j2, rest);
            pairs.push(SubensemblePair { j1, j2, weight: &ExactRational::from_biguint(&count) / &d_total });
        }
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angular::degeneracy;
    use num_bigint::BigUint;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn summary(pairs: &[SubensemblePair]) -> Vec<(i64, i64, ExactRational)> {
        pairs.iter().map(|p| (p.j1.twice(), p.j2.twice(), p.weight.clone())).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(summary(&allowed_pairs(h(4), 4, 2).unwrap()), vec![(2, 2, ExactRational::one())]);
        let half = ExactRational::new(1, 2);
        assert_eq!(
            summary(&allowed_pairs(h(0), 4, 2).unwrap()),
            vec![(0, 0, half.clone()), (2, 2, half)]
        );
        // d^{1/2}_1 d^0_2 = d^{1/2}_1 d^1_2 = 1 and d^{1/2}_3 = 2
        let half = ExactRational::new(1, 2);
        assert_eq!(
            summary(&allowed_pairs(h(1), 3, 1).unwrap()),
            vec![(1, 0, half.clone()), (1, 2, half)]
        );
    }

    #[test]
    fn invalid_split() {
        assert!(matches!(allowed_pairs(h(0), 4, 0), Err(Error::InvalidSplit { .. })));
        assert!(matches!(allowed_pairs(h(0), 4, 4), Err(Error::InvalidSplit { .. })));
        assert!(allowed_pairs(h(1), 4, 2).is_err());
    }

    #[test]
    fn completeness_and_weights() {
        for total in 2..=60u32 {
            for t in (j_min(total).twice()..=total as i64).step_by(2) {
                let j = h(t);
                let d = degeneracy(j, total).unwrap();
                for n in 1..total {
                    let pairs = allowed_pairs(j, total, n).unwrap();
                    let count: BigUint = pairs
                        .iter()
                        .map(|p| degeneracy(p.j1, n).unwrap() * degeneracy(p.j2, total - n).unwrap())
                        .sum();
                    assert_eq!(count, d, "N={total} J={j} n={n}");
                    let w: ExactRational = pairs.iter().map(|p| p.weight.clone()).sum();
                    assert!(w.is_one());
                    for p in &pairs {
                        assert!(triangle(j, p.j1, p.j2));
                        assert!(p.j1.twice() <= n as i64 && p.j2.twice() <= (total - n) as i64);
                    }
                }
            }
        }
    }

    #[test]
    fn single_spin_weights_closed_form() {
        for total in 3..=60u32 {
            for t in (j_min(total).twice()..total as i64).step_by(2) {
                if t == 0 {
                    continue;
                }
                // (1/N) ((2J+2)/(2J+1)) (N/2 - J), with J = t/2
                let expected = ExactRational::new((t + 2) * (total as i64 - t), 2 * total as i64 * (t + 1));
                let pairs = allowed_pairs(h(t), total, 1).unwrap();
                let upper = pairs.iter().find(|p| p.j2.twice() == t + 1).unwrap();
                assert_eq!(upper.weight, expected);
            }
        }
    }
}
