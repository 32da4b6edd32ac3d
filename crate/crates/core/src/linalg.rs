//! Small dense real matrices: LU determinant and singular values.

use alloc::vec;
use alloc::vec::Vec;

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Matrix {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Matrix {
        let n = rows.len();
        let mut m = Matrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.n.max(1))
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn scale_row(&mut self, i: usize, k: f64) {
        for v in &mut self.data[i * self.n..(i + 1) * self.n] {
            *v *= k;
        }
    }

    pub fn scale_col(&mut self, j: usize, k: f64) {
        for i in 0..self.n {
            self.data[i * self.n + j] *= k;
        }
    }

    /// LU with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
                .unwrap();
            if a[piv * n + k] == 0.0 {
                return 0.0;
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k];
            det *= pivot;
            for i in k + 1..n {
                let f = a[i * n + k] / pivot;
                if f != 0.0 {
                    for j in k + 1..n {
                        a[i * n + j] -= f * a[k * n + j];
                    }
                }
            }
        }
        det
    }

    /// Singular values in decreasing order (one-sided Jacobi, which keeps
    /// small singular values accurate relative to the largest).
    pub fn singular_values(&self) -> Vec<f64> {
        let n = self.n;
        // columns of `a`, stored contiguously
        let mut cols: Vec<Vec<f64>> = (0..n)
            .map(|j| (0..n).map(|i| self.get(i, j)).collect())
            .collect();
        for _sweep in 0..60 {
            let mut rotated = false;
            for i in 0..n {
                for j in i + 1..n {
                    let (alpha, beta, gamma) = cols[i]
                        .iter()
                        .zip(&cols[j])
                        .fold((0.0, 0.0, 0.0), |(a, b, g), (x, y)| {
                            (a + x * x, b + y * y, g + x * y)
                        });
                    if gamma == 0.0 || gamma.abs() <= f64::EPSILON * libm::sqrt(alpha * beta) {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (2.0 * gamma);
                    let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                    let c = 1.0 / libm::sqrt(1.0 + t * t);
                    let s = c * t;
                    let (left, right) = cols.split_at_mut(j);
                    for (x, y) in left[i].iter_mut().zip(right[0].iter_mut()) {
                        let (xi, yj) = (*x, *y);
                        *x = c * xi - s * yj;
                        *y = s * xi + c * yj;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sv: Vec<f64> = cols
            .iter()
            .map(|c| libm::sqrt(c.iter().map(|x| x * x).sum::<f64>()))
            .collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }
}
