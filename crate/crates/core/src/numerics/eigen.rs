use num_complex::Complex64;

use crate::{Error, Result};

/// Cap on cyclic Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;

const HERMITIAN_TOLERANCE: f64 = 1e-14;
const CONVERGENCE_TOLERANCE: f64 = 1e-12;

/// Dense Hermitian matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validates shape and `a[i][j] == conj(a[j][i])` to within 1e-14.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { len: entries.len(), expected: dim * dim });
        }
        let m = HermitianMatrix { dim, entries };
        let dev = m.hermiticity_deviation();
        if dev > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian(dev));
        }
        Ok(m)
    }

    /// Builds from the upper triangle (`i <= j`) and mirrors it, so the
    /// result is Hermitian by construction. Diagonal imaginary parts are dropped.
    pub fn from_upper(dim: usize, mut upper: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(upper(i, i).re, 0.0);
            for j in i + 1..dim {
                let v = upper(i, j);
                entries[i * dim + j] = v;
                entries[j * dim + i] = v.conj();
            }
        }
        HermitianMatrix { dim, entries }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self::from_upper(diag.len(), |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_real_diagonal(&vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }
}

/// Eigen-decomposition with eigenvalues in descending order. Column `k` of
/// `vectors` (row-major, `dim x dim`) is the eigenvector for `values[k]`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Complex64>,
    dim: usize,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.vectors[i * self.dim + k]).collect()
    }

    /// `max |m - V diag(values) V^dagger|` entrywise.
    pub fn reconstruction_residual(&self, m: &HermitianMatrix) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += self.vectors[i * d + k] * self.values[k] * self.vectors[j * d + k].conj();
                }
                worst = worst.max((acc - m.get(i, j)).norm());
            }
        }
        worst
    }
}

fn off_diagonal_norm(a: &[Complex64], d: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..d {
        for j in i + 1..d {
            s += a[i * d + j].norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

/// Cyclic complex Jacobi diagonalization.
///
/// Each rotation first rephases column `q` so the pivot `a[p][q]` becomes
/// real, then applies an ordinary real Jacobi rotation in the `(p, q)` plane.
pub fn hermitian_eigen(m: &HermitianMatrix) -> Result<HermitianEigen> {
    let d = m.dim;
    let mut a = m.entries.clone();
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        v[i * d + i] = Complex64::new(1.0, 0.0);
    }
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let target = CONVERGENCE_TOLERANCE * 1e-2 * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, d);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            if off <= CONVERGENCE_TOLERANCE * scale {
                break;
            }
            return Err(Error::NoConvergence { sweeps, residual: off });
        }
        sweeps += 1;
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[p * d + q];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / r;
                let app = a[p * d + p].re;
                let aqq = a[q * d + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;

                for k in 0..d {
                    let akp = a[k * d + p];
                    let akq = a[k * d + q];
                    a[k * d + p] = akp * u_pp + akq * u_qp;
                    a[k * d + q] = akp * u_pq + akq * u_qq;
                }
                for k in 0..d {
                    let apk = a[p * d + k];
                    let aqk = a[q * d + k];
                    a[p * d + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[q * d + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[p * d + q] = Complex64::new(0.0, 0.0);
                a[q * d + p] = Complex64::new(0.0, 0.0);
                a[p * d + p].im = 0.0;
                a[q * d + q].im = 0.0;

                for k in 0..d {
                    let vkp = v[k * d + p];
                    let vkq = v[k * d + q];
                    v[k * d + p] = vkp * u_pp + vkq * u_qp;
                    v[k * d + q] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[j * d + j].re.total_cmp(&a[i * d + i].re));
    let values = order.iter().map(|&i| a[i * d + i].re).collect();
    let mut vectors = vec![Complex64::new(0.0, 0.0); d * d];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..d {
            vectors[row * d + col] = v[row * d + src];
        }
    }
    Ok(HermitianEigen { values, vectors, dim: d })
}

/// Real eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &HermitianMatrix) -> Result<Vec<f64>> {
    if m.dim == 1 {
        return Ok(vec![m.get(0, 0).re]);
    }
    hermitian_eigen(m).map(|e| e.values)
}
