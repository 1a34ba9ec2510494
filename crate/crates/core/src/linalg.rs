//! Minimal exact linear algebra over a [`FieldScalar`] field: 3×3 matrices
//! and Gaussian elimination for rank and null spaces of small systems.

use crate::field::{FieldScalar, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3 {
    pub e: [[FieldScalar; 3]; 3],
}

impl Mat3 {
    pub fn new(e: [[FieldScalar; 3]; 3]) -> Self {
        Mat3 { e }
    }

    pub fn identity(spec: FieldSpec) -> Self {
        let mut e = zero_rows(spec);
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = FieldScalar::one(spec);
        }
        Mat3 { e }
    }

    pub fn from_columns(
        c0: &[FieldScalar; 3],
        c1: &[FieldScalar; 3],
        c2: &[FieldScalar; 3],
    ) -> Self {
        let cols = [c0, c1, c2];
        let spec = c0[0].spec();
        let mut e = zero_rows(spec);
        for i in 0..3 {
            for j in 0..3 {
                e[i][j] = cols[j][i].clone();
            }
        }
        Mat3 { e }
    }

    pub fn spec(&self) -> FieldSpec {
        self.e[0][0].spec()
    }

    pub fn det(&self) -> FieldScalar {
        let m = &self.e;
        let minor = |r: &[FieldScalar; 3], s: &[FieldScalar; 3], i: usize, j: usize| {
            &r[i] * &s[j] - &r[j] * &s[i]
        };
        &m[0][0] * &minor(&m[1], &m[2], 1, 2) - &m[0][1] * &minor(&m[1], &m[2], 0, 2)
            + &m[0][2] * &minor(&m[1], &m[2], 0, 1)
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let spec = self.spec();
        let mut e = zero_rows(spec);
        for (row, own) in e.iter_mut().zip(&self.e) {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = FieldScalar::zero(spec);
                for (a, other_row) in own.iter().zip(&other.e) {
                    acc = acc + a * &other_row[j];
                }
                *cell = acc;
            }
        }
        Mat3 { e }
    }

    pub fn apply(&self, v: &[FieldScalar; 3]) -> [FieldScalar; 3] {
        let spec = self.spec();
        let mut out = [
            FieldScalar::zero(spec),
            FieldScalar::zero(spec),
            FieldScalar::zero(spec),
        ];
        for (cell, row) in out.iter_mut().zip(&self.e) {
            let mut acc = FieldScalar::zero(spec);
            for (a, x) in row.iter().zip(v) {
                acc = acc + a * x;
            }
            *cell = acc;
        }
        out
    }

    pub fn transpose(&self) -> Mat3 {
        let mut e = zero_rows(self.spec());
        for (i, row) in e.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.e[j][i].clone();
            }
        }
        Mat3 { e }
    }

    /// Exact inverse via the adjugate; `None` for singular matrices.
    pub fn inverse(&self) -> Option<Mat3> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let m = &self.e;
        let cof = |i: usize, j: usize| {
            let r = [(i + 1) % 3, (i + 2) % 3];
            let c = [(j + 1) % 3, (j + 2) % 3];
            // rows/cols chosen cyclically, so no extra sign is needed
            &m[r[0]][c[0]] * &m[r[1]][c[1]] - &m[r[0]][c[1]] * &m[r[1]][c[0]]
        };
        let mut e = zero_rows(self.spec());
        for (i, row) in e.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                // adjugate = transposed cofactors
                *cell = &cof(j, i) / &det;
            }
        }
        Some(Mat3 { e })
    }

    pub fn scale(&self, s: &FieldScalar) -> Mat3 {
        let mut e = self.e.clone();
        for row in &mut e {
            for cell in row.iter_mut() {
                *cell = &*cell * s;
            }
        }
        Mat3 { e }
    }
}

fn zero_rows(spec: FieldSpec) -> [[FieldScalar; 3]; 3] {
    std::array::from_fn(|_| std::array::from_fn(|_| FieldScalar::zero(spec)))
}

/// Row-reduce `rows` in place (exact division by pivots), returning the rank.
pub fn row_reduce(rows: &mut [Vec<FieldScalar>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for cell in rows[rank].iter_mut() {
            *cell = &*cell / &p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (cell, p) in row.iter_mut().zip(&pivot_row) {
                    let delta = &f * p;
                    *cell = &*cell - &delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<FieldScalar>]) -> usize {
    let mut work = rows.to_vec();
    row_reduce(&mut work)
}

/// Basis of the right null space of the matrix given by `rows`.
pub fn null_space(
    rows: &[Vec<FieldScalar>],
    ncols: usize,
    spec: FieldSpec,
) -> Vec<Vec<FieldScalar>> {
    let mut work = rows.to_vec();
    let rank = row_reduce(&mut work);
    work.truncate(rank);
    // locate pivot columns of the reduced echelon form
    let mut pivot_col = Vec::with_capacity(rank);
    for row in &work {
        let c = row
            .iter()
            .position(|x| !x.is_zero())
            .expect("zero row after truncate");
        pivot_col.push(c);
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_col.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![FieldScalar::zero(spec); ncols];
        v[f] = FieldScalar::one(spec);
        for (r, &pc) in pivot_col.iter().enumerate() {
            v[pc] = -work[r][f].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn s(n: i64) -> FieldScalar {
        FieldScalar::from_int(FieldSpec::Rational, n)
    }

    fn m3(rows: [[i64; 3]; 3]) -> Mat3 {
        Mat3::new(rows.map(|r| r.map(s)))
    }

    #[test]
    fn det_and_inverse() {
        let m = m3([[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
        assert_eq!(m.det(), s(5)); // 2*(1) - 1*(0*1 - 3*1) + 0
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat3::identity(FieldSpec::Rational));
        assert_eq!(inv.mul(&m), Mat3::identity(FieldSpec::Rational));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = m3([[1, 2, 3], [2, 4, 6], [0, 1, 1]]);
        assert!(m.det().is_zero());
        assert!(m.inverse().is_none());
    }

    #[test]
    fn rank_of_small_systems() {
        let rows = vec![vec![s(1), s(2)], vec![s(2), s(4)], vec![s(0), s(1)]];
        assert_eq!(rank(&rows), 2);
        let rows = vec![vec![s(0), s(0)], vec![s(0), s(0)]];
        assert_eq!(rank(&rows), 0);
    }

    #[test]
    fn null_space_dimension() {
        // x + y + z = 0 has a 2-dimensional kernel
        let rows = vec![vec![s(1), s(1), s(1)]];
        let basis = null_space(&rows, 3, FieldSpec::Rational);
        assert_eq!(basis.len(), 2);
        for v in basis {
            let sum = v.iter().fold(s(0), |acc, x| acc + x.clone());
            assert!(sum.is_zero());
        }
    }
}
