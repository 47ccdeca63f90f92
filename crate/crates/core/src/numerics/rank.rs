use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::Rational;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Rank over the rationals of a dense matrix given as rows of exact
/// scalars. Float input is rejected: rank is not a continuous function of
/// the entries, so a floating estimate would be meaningless here.
pub fn rank_exact(rows: &[Vec<Scalar>]) -> Result<usize> {
    let exact = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| match s {
                    Scalar::Exact(r) => Ok(r.clone()),
                    Scalar::Float(_) => Err(Error::ExactRequired("rank_exact")),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rank_rational(&exact))
}

/// Rank of a rational matrix. Each row is first cleared of denominators,
/// then reduced by fraction-free (Bareiss) elimination over `BigInt`.
pub fn rank_rational(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let nrows = m.len();
    let ncols = m.iter().map(Vec::len).max().unwrap_or(0);
    for r in &mut m {
        r.resize(ncols, BigInt::zero());
    }

    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..nrows {
            let factor = m[r][col].clone();
            for c in col..ncols {
                let v = &pivot * &m[r][c] - &factor * &m[rank][c];
                // exact by Sylvester's identity
                m[r][c] = v / &prev_pivot;
            }
            for c in 0..col {
                m[r][c] = BigInt::zero();
            }
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::field::rat;

    fn ex(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Scalar::Exact(rat(v, 1))).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_exact(&ex(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(), 3);
        assert_eq!(rank_exact(&ex(&[&[0, 0, 0], &[0, 0, 0]])).unwrap(), 0);
        assert_eq!(rank_exact(&ex(&[&[1, 2, 3], &[2, 4, 6]])).unwrap(), 1);
        assert_eq!(rank_exact(&[]).unwrap(), 0);
    }

    #[test]
    fn rational_entries() {
        let m = vec![
            vec![rat(1, 2), rat(1, 3), rat(0, 1)],
            vec![rat(3, 2), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(-5, 7)],
        ];
        assert_eq!(rank_rational(&m), 2);
    }

    #[test]
    fn float_rejected() {
        let m = vec![vec![Scalar::Float(1.0)]];
        assert_eq!(rank_exact(&m), Err(Error::ExactRequired("rank_exact")));
    }
}
