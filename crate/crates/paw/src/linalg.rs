//! Exact linear system solving by Gaussian elimination.

use num_traits::Zero;

use crate::rational::Rational;

/// Solves `a x = b` exactly for several right-hand sides sharing one matrix.
/// Each inner vector of `bs` is one right-hand side; the result is aligned
/// with it. The matrix is consumed; `None` means singular.
pub(crate) fn solve_multi(
    mut a: Vec<Vec<Rational>>,
    mut bs: Vec<Vec<Rational>>,
) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    for row in &a {
        assert_eq!(row.len(), n);
    }
    for b in &bs {
        assert_eq!(b.len(), n);
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        for b in &mut bs {
            b.swap(col, pivot);
        }
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &a[col][col];
            // Split borrow: the pivot row is read while row r is rewritten.
            let (top, bottom) = a.split_at_mut(col + 1);
            let pivot_row = &top[col];
            let row = &mut bottom[r - col - 1];
            for c in col..n {
                let delta = &factor * &pivot_row[c];
                row[c] -= delta;
            }
            for b in bs.iter_mut() {
                let delta = &factor * &b[col];
                b[r] -= delta;
            }
        }
    }
    let xs = bs
        .into_iter()
        .map(|b| {
            let mut x = vec![Rational::zero(); n];
            for col in (0..n).rev() {
                let mut acc = b[col].clone();
                for c in col + 1..n {
                    acc -= &a[col][c] * &x[c];
                }
                x[col] = acc / &a[col][col];
            }
            x
        })
        .collect();
    Some(xs)
}

/// Solves `a x = b` exactly. The matrix is consumed; `None` means singular.
pub(crate) fn solve(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Option<Vec<Rational>> {
    solve_multi(a, vec![b]).map(|mut xs| xs.pop().expect("one solution per rhs"))
}
