use std::cmp::Ordering;

use crate::matrix::Matrix;
use crate::scalar::ConjField;

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Inertia of a Hermitian matrix by congruence elimination.
///
/// A nonzero diagonal pivot contributes its sign. When the remaining
/// diagonal vanishes but some `a[i][j] = b` does not, the block
/// `[[0, b], [conj b, 0]]` contributes one positive and one negative
/// eigenvalue and is eliminated as a whole.
pub fn hermitian_inertia<F: ConjField>(h: &Matrix<F>) -> Inertia {
    assert!(h.is_square(), "inertia of a non-square matrix");
    let n = h.rows();
    let mut a = h.to_rows();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut out = Inertia::default();
    while !alive.is_empty() {
        if let Some(pos) = alive.iter().position(|&i| !a[i][i].is_zero()) {
            let i = alive.swap_remove(pos);
            match a[i][i].real_sign() {
                Ordering::Greater => out.positive += 1,
                Ordering::Less => out.negative += 1,
                Ordering::Equal => unreachable!("nonzero self-adjoint pivot"),
            }
            let pinv = a[i][i].inv();
            for &r in &alive {
                if a[r][i].is_zero() {
                    continue;
                }
                let f = a[r][i].clone() * pinv.clone();
                for &c in &alive {
                    let delta = f.clone() * a[i][c].clone();
                    a[r][c] = a[r][c].clone() - delta;
                }
            }
            continue;
        }
        let pair = alive.iter().enumerate().find_map(|(pi, &i)| {
            alive[pi + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            out.zero += alive.len();
            break;
        };
        alive.retain(|&x| x != i && x != j);
        out.positive += 1;
        out.negative += 1;
        let b_inv = a[i][j].inv();
        let bbar_inv = a[i][j].conj().inv();
        let snapshot = a.clone();
        for &r in &alive {
            for &c in &alive {
                let delta = snapshot[r][i].clone() * bbar_inv.clone() * snapshot[j][c].clone()
                    + snapshot[r][j].clone() * b_inv.clone() * snapshot[i][c].clone();
                a[r][c] = a[r][c].clone() - delta;
            }
        }
    }
    out
}
