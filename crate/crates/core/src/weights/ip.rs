//! The IP property: the point `(1, ..., 1)` lies in the relative interior of
//! the convex hull of `{ u in Z_{>=0}^{d+1} : sum w_i u_i = w }`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::WeightVector;
use crate::Q;

/// Nonnegative integer solutions of `sum w_i u_i = w`, in lexicographic order.
pub fn newton_points(wv: &WeightVector) -> Vec<Vec<u64>> {
    fn rec(weights: &[u64], rest: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let i = cur.len();
        if i + 1 == weights.len() {
            if rest % weights[i] == 0 {
                cur.push(rest / weights[i]);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for u in 0..=rest / weights[i] {
            cur.push(u);
            rec(weights, rest - u * weights[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(wv.weights(), wv.degree(), &mut Vec::new(), &mut out);
    out
}

fn shifted(points: &[Vec<u64>]) -> Vec<Vec<Q>> {
    points
        .iter()
        .map(|p| p.iter().map(|&x| Q::from_integer(BigInt::from(x as i64 - 1))).collect())
        .collect()
}

/// Dimension of the affine span of the Newton points.
pub fn affine_rank(wv: &WeightVector) -> usize {
    rank(shifted(&newton_points(wv)))
}

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone() / pivot.clone();
            let (top, bottom) = rows.split_at_mut(i);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[r][c..]) {
                *x -= f.clone() * y.clone();
            }
        }
        r += 1;
    }
    r
}

/// Decides the IP property exactly.
///
/// The affine span must be the whole hyperplane `sum w_i u_i = w`, and there
/// must be weights `lambda_v >= 1` with `sum lambda_v (x_v - 1) = 0`; the
/// latter is a phase-one simplex feasibility problem in `mu = lambda - 1`.
pub fn ip_property(wv: &WeightVector) -> bool {
    let points = newton_points(wv);
    let vecs = shifted(&points);
    if rank(vecs.clone()) != wv.dim() {
        return false;
    }
    // the rows satisfy sum w_i row_i = 0, so one may be dropped
    let m = wv.dim();
    let a: Vec<Vec<Q>> = (0..m)
        .map(|i| vecs.iter().map(|v| v[i].clone()).collect())
        .collect();
    let b: Vec<Q> = a.iter().map(|row| -row.iter().cloned().sum::<Q>()).collect();
    phase_one_feasible(a, b)
}

/// Whether `A mu = b, mu >= 0` has a solution. Exact tableau simplex with
/// Bland's rule, so it terminates.
fn phase_one_feasible(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    for i in 0..m {
        if b[i].is_negative() {
            b[i] = -b[i].clone();
            for x in &mut a[i] {
                *x = -x.clone();
            }
        }
    }
    // columns: n originals, m artificials, rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..m).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut obj: Vec<Q> = (0..width)
        .map(|j| {
            if (n..n + m).contains(&j) {
                Q::zero()
            } else {
                t.iter().map(|row| row[j].clone()).sum()
            }
        })
        .collect();
    while let Some(enter) = (0..n).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = t[i][width - 1].clone() / t[i][enter].clone();
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // unbounded is impossible: the objective is bounded below by zero
        let (r, _) = leave.expect("phase one is bounded");
        let pivot = t[r][enter].clone();
        for x in &mut t[r] {
            *x = x.clone() / pivot.clone();
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= f.clone() * p.clone();
                }
            }
        }
        let f = obj[enter].clone();
        for (x, p) in obj.iter_mut().zip(&prow) {
            *x -= f.clone() * p.clone();
        }
        basis[r] = enter;
    }
    obj[width - 1].is_zero()
}
