//! Dense matrices over the Gaussian rationals with exact elimination.

use std::ops::Range;

use num::{Complex, One, Zero};

use super::scalar::{to_c64, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: Vec<Vec<Scalar>>,
    ncols: usize,
}

/// Result of forward elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Present for square matrices.
    pub determinant: Option<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            rows: vec![vec![Scalar::zero(); ncols]; nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                got: r.len(),
            });
        }
        Ok(Self { rows, ncols })
    }

    pub fn from_columns(nrows: usize, cols: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != nrows {
                return Err(Error::DimensionMismatch {
                    expected: nrows,
                    got: c.len(),
                });
            }
            for (i, v) in c.iter().enumerate() {
                m.rows[i][j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.nrows() != other.nrows() || self.ncols != other.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.nrows() * self.ncols,
                got: other.nrows() * other.ncols,
            });
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
            ncols: self.ncols,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                got: other.nrows(),
            });
        }
        let mut out = Self::zeros(self.nrows(), other.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.rows[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.rows[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                got: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.nrows(),
                got: self.ncols,
            });
        }
        let mut out = Self::identity(self.nrows());
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Self {
        Self {
            rows: self.rows[rows]
                .iter()
                .map(|r| r[cols.clone()].to_vec())
                .collect(),
            ncols: cols.len(),
        }
    }

    /// Drops one row and one column.
    pub fn minor(&self, row: usize, col: usize) -> Self {
        Self {
            rows: self
                .rows
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != row)
                .map(|(_, r)| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != col)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect(),
            ncols: self.ncols - 1,
        }
    }

    /// Whether every entry strictly above the diagonal blocks vanishes. Blocks
    /// are given by their start offsets plus the final end.
    pub fn is_block_lower_triangular(&self, offsets: &[usize]) -> bool {
        let block_of = |i: usize| offsets.partition_point(|&o| o <= i) - 1;
        self.rows.iter().enumerate().all(|(i, row)| {
            let bi = block_of(i);
            row.iter()
                .enumerate()
                .skip(offsets.get(bi + 1).copied().unwrap_or(self.ncols))
                .all(|(_, v)| v.is_zero())
        })
    }

    /// Forward elimination with partial pivoting on the first nonzero entry.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.rows.clone();
        let (nr, nc) = (self.nrows(), self.ncols);
        let mut det = Scalar::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..nc {
            if r == nr {
                break;
            }
            let Some(p) = (r..nr).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap(p, r);
                det = -det;
            }
            let pivot = m[r][c].clone();
            det *= &pivot;
            let inv = Scalar::one() / &pivot;
            let (top, bottom) = m.split_at_mut(r + 1);
            let prow = &top[r];
            for row in bottom.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] * &inv;
                for j in c..nc {
                    if !prow[j].is_zero() {
                        row[j] -= &f * &prow[j];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        let determinant = (nr == nc).then(|| if rank < nr { Scalar::zero() } else { det });
        Echelon {
            rank,
            pivots,
            determinant,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank
    }

    pub fn determinant(&self) -> Result<Scalar> {
        self.echelon().determinant.ok_or(Error::DimensionMismatch {
            expected: self.nrows(),
            got: self.ncols,
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.rows.clone();
        let (nr, nc) = (self.nrows(), self.ncols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..nc {
            if r == nr {
                break;
            }
            let Some(p) = (r..nr).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(p, r);
            let inv = Scalar::one() / &m[r][c];
            for v in m[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            let prow = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for j in c..nc {
                    if !prow[j].is_zero() {
                        row[j] -= &f * &prow[j];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (
            Self {
                rows: m,
                ncols: nc,
            },
            pivots,
        )
    }

    /// A basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.ncols];
                v[f] = Scalar::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.rows[i][f].clone();
                }
                v
            })
            .collect()
    }

    /// Inverse by Gauss–Jordan on `[A | I]`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.nrows();
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.ncols,
            });
        }
        let aug = Self {
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut row = r.clone();
                    row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
                    row
                })
                .collect(),
            ncols: 2 * n,
        };
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::NoSolution("matrix is singular".into()));
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    /// The unique solution of `A x = b` for square invertible `A`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.nrows();
        if !self.is_square() || b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        let aug = Self {
            rows: self
                .rows
                .iter()
                .zip(b)
                .map(|(r, v)| {
                    let mut row = r.clone();
                    row.push(v.clone());
                    row
                })
                .collect(),
            ncols: n + 1,
        };
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.get(n - 1).is_some_and(|&c| c >= n) {
            return Err(Error::NoSolution("matrix is singular".into()));
        }
        Ok(r.rows.iter().map(|row| row[n].clone()).collect())
    }

    pub fn to_c64(&self) -> Vec<Vec<Complex<f64>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(to_c64).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::scalar::{gaussian, rational, real};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| real(v, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_and_rank() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.determinant().unwrap(), real(18, 1));
        assert_eq!(a.rank(), 3);
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.determinant().unwrap(), real(0, 1));
        assert_eq!(s.rank(), 1);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), real(-1, 1));
        assert!(m(&[&[1, 2, 3]]).determinant().is_err());
    }

    #[test]
    fn kernel_and_solve() {
        let s = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = s.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(s.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[real(1, 1), real(2, 1)]).unwrap();
        assert_eq!(x, vec![real(1, 5), real(3, 5)]);
        assert!(m(&[&[1, 2], &[2, 4]]).solve(&[real(1, 1), real(0, 1)]).is_err());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn block_triangular_detection() {
        let a = m(&[&[1, 0, 0], &[5, 2, 3], &[1, 1, 1]]);
        assert!(a.is_block_lower_triangular(&[0, 1, 3]));
        assert!(!a.is_block_lower_triangular(&[0, 1, 2, 3]));
        assert!(a.is_block_lower_triangular(&[0, 3]));
    }

    #[test]
    fn gaussian_inverse() {
        let i = gaussian(rational(0, 1), rational(1, 1));
        let a = ExactMatrix::from_rows(vec![
            vec![real(1, 1), i.clone()],
            vec![-i.clone(), real(3, 1)],
        ])
        .unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ExactMatrix::identity(2));
        assert_eq!(a.determinant().unwrap(), real(2, 1));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec((-3i64..=3, -2i64..=2), n * n).prop_map(move |v| {
            ExactMatrix::from_rows(
                v.chunks(n)
                    .map(|r| r.iter().map(|&(a, b)| gaussian(rational(a, 1), rational(b, 2))).collect())
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(a in arb_matrix(4)) {
            prop_assert_eq!(a.rank() + a.kernel().len(), 4);
        }

        #[test]
        fn determinant_multiplicative(a in arb_matrix(3), b in arb_matrix(3)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
        }

        #[test]
        fn inverse_when_nonsingular(a in arb_matrix(3)) {
            match a.inverse() {
                Ok(inv) => prop_assert_eq!(inv.mul(&a).unwrap(), ExactMatrix::identity(3)),
                Err(_) => prop_assert!(a.determinant().unwrap().is_zero()),
            }
        }
    }
}
