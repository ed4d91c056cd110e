//! Row reduction over any exact field, used for inverses, kernels and the
//! small linear systems that show up throughout the crate.

use super::{FieldElement, Rational};
use num_traits::{One, Zero};
use std::fmt::Debug;

/// Exact field arithmetic needed by the elimination routines.
///
/// Field elements carry their field as runtime data, so constants are
/// produced from an existing value rather than from a type-level `zero()`.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_value(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn inverse(&self) -> Option<Self>;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        self.checked_inv()
    }
}

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns. Pivots are the first nonzero entry found scanning down each column.
pub fn row_reduce<T: Scalar>(rows: &mut [Vec<T>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero_value()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero_value() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = f.mul_ref(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub_ref(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let mut work = rows.to_vec();
    row_reduce(&mut work).len()
}

/// Solves `a · x = b` (with `a` given by rows). Returns `None` for an
/// inconsistent system; free variables are set to zero.
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let ncols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let zero = b.first()?.zero_like();
    let mut x = vec![zero; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][ncols].clone();
    }
    Some(x)
}

/// Basis of the right kernel `{x : a · x = 0}`, one vector per free column,
/// with that free coordinate set to one.
pub fn kernel<T: Scalar>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let Some(template) = a.first().and_then(|r| r.first()).cloned() else {
        return Vec::new();
    };
    let ncols = a[0].len();
    let mut work = a.to_vec();
    let pivots = row_reduce(&mut work);
    let zero = template.zero_like();
    let one = template.one_like();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![zero.clone(); ncols];
            v[free] = one.clone();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = zero.sub_ref(&work[r][free]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn rows(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn solve_unique_system() {
        let a = rows(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[rat(3), rat(5)]).unwrap();
        assert_eq!(x, vec![ratio(4, 5), ratio(7, 5)]);
    }

    #[test]
    fn inconsistent_system() {
        let a = rows(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, &[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = rows(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a), 1);
        let k = kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Rational = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
    }
}
