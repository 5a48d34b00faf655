//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::field::Q;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (dst, src) in m[i].iter_mut().zip(&pivot_row) {
                    *dst -= src * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

/// One solution of `a x = b`, free variables set to zero; `None` if the
/// system is inconsistent.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn solves_and_detects_inconsistency() {
        let a = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        let x = solve(&a, &[q(5), q(6)]).unwrap();
        assert_eq!(x, vec![q(-4), crate::field::q_frac(9, 2)]);
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(&a, &[q(1), q(3)]).is_none());
        assert_eq!(rank(&a), 1);
    }
}
