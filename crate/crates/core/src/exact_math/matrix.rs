use crate::error::{Error, Result};
use crate::exact_math::fp::PrimeField;

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`solve_echelon`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonForm {
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Nonzero rows of the reduced row echelon form.
    pub row_space: Matrix,
    /// Rows span the right kernel `{x : M x = 0}`, in reduced echelon form.
    pub kernel: Matrix,
}

impl Matrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        let data = data.into_iter().map(|x| x % field.p()).collect();
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| x % field.p()));
        }
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let p = self.field.p() as u64;
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|r| {
                let s = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| acc + a as u64 * b as u64 % p);
                (s % p) as u32
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.data[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.data[i * self.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Solves `M x = b`; returns one solution if any exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let f = self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.data[r * (self.cols + 1) + c] = self.get(r, c);
            }
            aug.data[r * (self.cols + 1) + self.cols] = b[r] % f.p();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// Rank, kernel and row space of `m`, all in reduced echelon form.
pub fn solve_echelon(m: &Matrix) -> EchelonForm {
    let f = m.field;
    let mut red = m.clone();
    let pivots = red.rref_in_place();
    let rank = pivots.len();
    let row_space = Matrix {
        field: f,
        rows: rank,
        cols: m.cols,
        data: red.data[..rank * m.cols].to_vec(),
    };
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = Matrix::zeros(f, free.len(), m.cols);
    for (k, &fc) in free.iter().enumerate() {
        kernel.set(k, fc, 1);
        for (r, &pc) in pivots.iter().enumerate() {
            kernel.set(k, pc, f.neg(red.get(r, fc)));
        }
    }
    kernel.rref_in_place();
    EchelonForm {
        rank,
        pivots,
        row_space,
        kernel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn worked_examples() {
        let id = Matrix::identity(field(2), 3);
        let e = solve_echelon(&id);
        assert_eq!(e.rank, 3);
        assert_eq!(e.kernel.rows(), 0);

        let z = Matrix::zeros(field(3), 2, 4);
        let e = solve_echelon(&z);
        assert_eq!(e.rank, 0);
        assert_eq!(e.kernel.rows(), 4);

        // [[1,1],[2,2]] over F_3: second row is twice the first.
        let m = Matrix::from_rows(field(3), 2, &[vec![1, 1], vec![2, 2]]).unwrap();
        let e = solve_echelon(&m);
        assert_eq!(e.rank, 1);
        assert_eq!(e.row_space.to_rows(), vec![vec![1, 1]]);
        assert_eq!(e.kernel.to_rows(), vec![vec![1, 2]]);
    }

    #[test]
    fn field_mismatch() {
        let a = Matrix::identity(field(2), 2);
        let b = Matrix::identity(field(3), 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn solve_finds_solutions() {
        let m = Matrix::from_rows(field(5), 3, &[vec![1, 2, 0], vec![0, 1, 4]]).unwrap();
        let x = m.solve(&[3, 1]).unwrap();
        assert_eq!(m.apply(&x), vec![3, 1]);
        let singular = Matrix::from_rows(field(5), 2, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert!(singular.solve(&[1, 1]).is_none());
    }

    proptest! {
        #[test]
        fn rank_nullity(p in prop::sample::select(vec![2u32, 3, 5, 7]),
                        rows in 1usize..6, cols in 1usize..7,
                        seed in prop::collection::vec(0u32..7, 42)) {
            let f = field(p);
            let data: Vec<u32> = seed.iter().cycle().take(rows * cols).map(|x| x % p).collect();
            let m = Matrix::new(f, rows, cols, data).unwrap();
            let e = solve_echelon(&m);
            prop_assert_eq!(e.rank + e.kernel.rows(), cols);
            prop_assert!(e.rank <= rows.min(cols));
            for k in 0..e.kernel.rows() {
                prop_assert!(m.apply(e.kernel.row(k)).iter().all(|&x| x == 0));
            }
            // echelonizing twice changes nothing
            let again = solve_echelon(&e.row_space);
            prop_assert_eq!(again.row_space, e.row_space);
        }
    }
}
