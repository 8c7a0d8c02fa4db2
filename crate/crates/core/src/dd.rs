//! Double description (Motzkin) method for pointed polyhedral cones.
//!
//! Given `A` with full column rank, [`extreme_rays`] returns the extreme rays of
//! `{x : A x >= 0}`. All arithmetic is on primitive integer vectors, so rays
//! stay small and comparisons are exact.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// Extreme rays of the pointed cone `{x : row . x >= 0 for every row}`.
///
/// Errors with [`Error::Unbounded`] when the rows do not have full column
/// rank (the cone then contains a line).
pub fn extreme_rays(rows: &[Vec<Rational>]) -> Result<Vec<Vec<BigInt>>> {
    let Some(n) = rows.first().map(Vec::len) else {
        return Err(Error::Dimension("no constraint rows".into()));
    };
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("ragged constraint rows".into()));
    }
    let m = rows.len();
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| rational::primitive_integer(r))
        .collect();

    let basis = linalg::independent_subset(rows);
    if basis.len() < n {
        return Err(Error::Unbounded);
    }
    let basis_rows: Vec<Vec<Rational>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let inv = linalg::inverse(&basis_rows).expect("independent rows form an invertible matrix");

    let mut rays: Vec<Ray> = (0..n)
        .map(|j| {
            let col: Vec<Rational> = inv.iter().map(|r| r[j].clone()).collect();
            let mut zeros = FixedBitSet::with_capacity(m);
            for (k, &bi) in basis.iter().enumerate() {
                if k != j {
                    zeros.insert(bi);
                }
            }
            Ray {
                coords: rational::primitive_integer(&col),
                zeros,
            }
        })
        .collect();

    let mut in_basis = FixedBitSet::with_capacity(m);
    for &b in &basis {
        in_basis.insert(b);
    }

    for i in (0..m).filter(|&i| !in_basis.contains(i)) {
        let row = &int_rows[i];
        let vals: Vec<BigInt> = rays.iter().map(|r| int_dot(row, &r.coords)).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for (ray, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    ray.zeros.insert(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();

        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                if common.count_ones(..) + 2 < n {
                    continue;
                }
                let adjacent = !rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != q && common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                // vals[p] > 0 > vals[q]; the combination is tight on row i
                let mut coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(cq, cp)| &vals[p] * cq - &vals[q] * cp)
                    .collect();
                rational::normalize_integer(&mut coords);
                common.insert(i);
                created.push(Ray {
                    coords,
                    zeros: common,
                });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (k, mut ray) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                ray.zeros.insert(i);
            }
            next.push(ray);
        }
        next.extend(created);
        rays = next;
        log::trace!("dd: row {i}/{m}, {} rays", rays.len());
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ints;

    fn to_i64(rays: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
        rays.iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn positive_orthant() {
        let rows = vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])];
        let rays = to_i64(&extreme_rays(&rows).unwrap());
        assert_eq!(rays, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn square_cone() {
        // cone over the square [-1,1]^2 at height t: t - x >= 0, t + x >= 0, ...
        let rows = vec![
            ints(&[1, -1, 0]),
            ints(&[1, 1, 0]),
            ints(&[1, 0, -1]),
            ints(&[1, 0, 1]),
        ];
        let rays = to_i64(&extreme_rays(&rows).unwrap());
        assert_eq!(rays.len(), 4);
        for r in &rays {
            assert_eq!(r[0], 1);
            assert_eq!(r[1].abs(), 1);
            assert_eq!(r[2].abs(), 1);
        }
    }

    #[test]
    fn line_containing_cone_is_rejected() {
        let rows = vec![ints(&[1, 0]), ints(&[-1, 0])];
        assert_eq!(extreme_rays(&rows), Err(Error::Unbounded));
    }

    #[test]
    fn redundant_rows_are_harmless() {
        let rows = vec![
            ints(&[1, 0]),
            ints(&[0, 1]),
            ints(&[1, 1]),
            ints(&[2, 1]),
            ints(&[1, 0]),
        ];
        let rays = to_i64(&extreme_rays(&rows).unwrap());
        assert_eq!(rays, vec![vec![0, 1], vec![1, 0]]);
    }
}
