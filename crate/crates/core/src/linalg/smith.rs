//! Smith normal form by classical elimination.
//!
//! The pivot is always an entry of minimal nonzero absolute value; remainders
//! strictly shrink it, so the loop terminates. Row operations can be mirrored
//! onto a carry matrix, which is how the integrality solver transforms its
//! right-hand side without ever materializing the (possibly huge) left factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U · A · V = D` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith(a: &IntMatrix) -> SmithDecomposition {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    diagonalize(&mut d, Some(&mut u), Some(&mut v));
    SmithDecomposition { u, d, v }
}

/// Brings `work` to Smith form in place and returns its rank. Every row
/// operation is repeated on `row_carry` (same row count), every column
/// operation on `col_carry` (same column count).
pub(crate) fn diagonalize(
    work: &mut IntMatrix,
    mut row_carry: Option<&mut IntMatrix>,
    mut col_carry: Option<&mut IntMatrix>,
) -> usize {
    let (rows, cols) = (work.rows(), work.cols());
    let row_swap = |w: &mut IntMatrix, rc: &mut Option<&mut IntMatrix>, a, b| {
        w.swap_rows(a, b);
        if let Some(m) = rc.as_deref_mut() {
            m.swap_rows(a, b);
        }
    };
    let col_swap = |w: &mut IntMatrix, cc: &mut Option<&mut IntMatrix>, a, b| {
        w.swap_cols(a, b);
        if let Some(m) = cc.as_deref_mut() {
            m.swap_cols(a, b);
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_entry(work, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))))
        else {
            break;
        };
        row_swap(work, &mut row_carry, t, pi);
        col_swap(work, &mut col_carry, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if work[(i, t)].is_zero() {
                    continue;
                }
                let q = work[(i, t)].div_floor(&work[(t, t)]);
                work.sub_row_multiple(i, t, &q);
                if let Some(m) = row_carry.as_deref_mut() {
                    m.sub_row_multiple(i, t, &q);
                }
                clean &= work[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if work[(t, j)].is_zero() {
                    continue;
                }
                let q = work[(t, j)].div_floor(&work[(t, t)]);
                work.sub_col_multiple(j, t, &q);
                if let Some(m) = col_carry.as_deref_mut() {
                    m.sub_col_multiple(j, t, &q);
                }
                clean &= work[(t, j)].is_zero();
            }
            if clean {
                // Divisibility chain: fold an offending row into the pivot row.
                let pivot = work[(t, t)].clone();
                let bad = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !work[(i, j)].is_multiple_of(&pivot))
                });
                match bad {
                    None => break,
                    Some(i) => {
                        let minus_one = BigInt::from(-1);
                        work.sub_row_multiple(t, i, &minus_one);
                        if let Some(m) = row_carry.as_deref_mut() {
                            m.sub_row_multiple(t, i, &minus_one);
                        }
                        continue;
                    }
                }
            }
            // A remainder survived: move the smallest entry of the pivot
            // cross onto the diagonal and go again.
            let cross = std::iter::once((t, t))
                .chain((t + 1..rows).map(|i| (i, t)))
                .chain((t + 1..cols).map(|j| (t, j)));
            let (pi, pj) = min_entry(work, cross).expect("pivot cross is nonzero");
            row_swap(work, &mut row_carry, t, pi);
            col_swap(work, &mut col_carry, t, pj);
        }

        if work[(t, t)].is_negative() {
            work.negate_row(t);
            if let Some(m) = row_carry.as_deref_mut() {
                m.negate_row(t);
            }
        }
        t += 1;
    }
    t
}

fn min_entry(
    m: &IntMatrix,
    positions: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in positions {
        let x = &m[(i, j)];
        if x.is_zero() {
            continue;
        }
        let a = x.abs();
        if best.as_ref().map_or(true, |(_, b)| a < *b) {
            let one = a == BigInt::from(1);
            best = Some(((i, j), a));
            if one {
                break;
            }
        }
    }
    best.map(|(p, _)| p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let s = smith(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "U A V != D");
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j || i >= f.len() {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn two_by_two() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_and_rectangular() {
        let s = check(&IntMatrix::zeros(3, 2));
        assert!(s.d.is_zero());
        let s = check(&IntMatrix::from_rows(&[vec![6, 10, 15]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1)]);
        let s = check(&IntMatrix::from_rows(&[vec![4], vec![6], vec![0]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2)]);
        let s = check(&IntMatrix::zeros(0, 2));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is diagonal but not in Smith form.
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }
}
