//! Exact linear algebra for polynomial spans.
use num_traits::Num;

/// Basis of the right nullspace of a dense `rows x cols` matrix, by
/// reduced row echelon form. Exact for exact fields.
pub fn nullspace<T: Num + Clone>(mut a: Vec<Vec<T>>, cols: usize) -> Vec<Vec<T>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = T::one() / a[r][c].clone();
        for v in a[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in c..cols {
                    let d = a[r][k].clone() * f.clone();
                    a[i][k] = a[i][k].clone() - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = T::zero() - a[i][f].clone();
            }
            v
        })
        .collect()
}

/// 2^61 - 1.
pub const MODULUS: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Rank over GF(2^61 - 1) of a sparse integer matrix given row by row as
/// (column, value) pairs. A lower bound for the rational rank; equal to it
/// when it reaches the number of rows.
pub fn rank_mod_p(rows: &[Vec<(usize, i64)>], cols: usize) -> usize {
    let to_mod = |v: i64| -> u64 { v.rem_euclid(MODULUS as i64) as u64 };
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            let mut dense = vec![0u64; cols];
            for &(c, v) in row {
                dense[c] = (dense[c] + to_mod(v)) % MODULUS;
            }
            dense
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = powmod(m[rank][c], MODULUS - 2);
        let pivot_row: Vec<u64> = m[rank].iter().map(|&v| mulmod(v, inv)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f != 0 {
                for k in c..cols {
                    if pivot_row[k] != 0 {
                        row[k] = (row[k] + MODULUS - mulmod(f, pivot_row[k])) % MODULUS;
                    }
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ns = nullspace(a.clone(), 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let s = row.iter().zip(&v).fold(q(0), |acc, (x, y)| acc + x * y);
                assert_eq!(s, q(0));
            }
        }
    }

    #[test]
    fn modular_rank() {
        let rows = vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)], vec![(2, -5)]];
        assert_eq!(rank_mod_p(&rows, 3), 2);
    }
}
