// Copyright 2026 Fluxion Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra fixed at dimension 4.
//!
//! Two kernels back the whole crate: a matrix exponential via
//! scaling-and-squaring with a Padé(13) core (Higham 2005, SIAM J. Matrix
//! Anal. Appl. 26(4)) and an LU solve with partial pivoting plus one step
//! of iterative refinement. The dimension is fixed at 4 on purpose: the
//! generator of the amplitude dynamics is a 4×4 matrix and nothing larger
//! ever appears.
//!
//! The exponential deliberately avoids eigendecomposition: the generator
//! is non-Hermitian and may approach defective points at exceptional
//! parameter values, where Padé stays well-behaved.

// Index loops mirror the textbook formulations of the kernels.
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;
use thiserror::Error;

/// Fixed system dimension.
pub const DIM: usize = 4;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("non-finite entry in input")]
    NonFiniteInput,
    #[error("matrix is numerically singular (pivot {pivot:.3e} below threshold {threshold:.3e})")]
    SingularMatrix { pivot: f64, threshold: f64 },
}

/// 4×4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4 {
    entries: [[Complex64; DIM]; DIM],
}

/// Length-4 complex vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexVector4 {
    entries: [Complex64; DIM],
}

impl ComplexMatrix4 {
    pub fn zero() -> Self {
        Self {
            entries: [[ZERO; DIM]; DIM],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            m.entries[i][i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: [[Complex64; DIM]; DIM]) -> Self {
        Self { entries: rows }
    }

    pub fn diagonal(d: [Complex64; DIM]) -> Self {
        let mut m = Self::zero();
        for i in 0..DIM {
            m.entries[i][i] = d[i];
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                t.entries[i][j] = self.entries[j][i];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                let mut acc = ZERO;
                for k in 0..DIM {
                    acc += self.entries[i][k] * rhs.entries[k][j];
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &ComplexVector4) -> ComplexVector4 {
        let mut out = ComplexVector4::zero();
        for i in 0..DIM {
            let mut acc = ZERO;
            for k in 0..DIM {
                acc += self.entries[i][k] * v.entries[k];
            }
            out.entries[i] = acc;
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = *self;
        for i in 0..DIM {
            for j in 0..DIM {
                out.entries[i][j] += rhs.entries[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = *self;
        for i in 0..DIM {
            for j in 0..DIM {
                out.entries[i][j] -= rhs.entries[i][j];
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = *self;
        for i in 0..DIM {
            for j in 0..DIM {
                out.entries[i][j] *= factor;
            }
        }
        out
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        let mut out = *self;
        for i in 0..DIM {
            for j in 0..DIM {
                out.entries[i][j] *= factor;
            }
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for row in &self.entries {
            for e in row {
                m = m.max(e.norm());
            }
        }
        m
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn one_norm(&self) -> f64 {
        let mut m = 0.0f64;
        for j in 0..DIM {
            let mut col = 0.0;
            for i in 0..DIM {
                col += self.entries[i][j].norm();
            }
            m = m.max(col);
        }
        m
    }

    /// Frobenius norm of `self − rhs`; the tests' distance measure.
    pub fn fro_dist(&self, rhs: &Self) -> f64 {
        let mut acc = 0.0;
        for i in 0..DIM {
            for j in 0..DIM {
                acc += (self.entries[i][j] - rhs.entries[i][j]).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|e| e.re.is_finite() && e.im.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix4 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i][j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i][j]
    }
}

impl ComplexVector4 {
    pub fn zero() -> Self {
        Self {
            entries: [ZERO; DIM],
        }
    }

    pub fn from_entries(entries: [Complex64; DIM]) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[Complex64; DIM] {
        &self.entries
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = *self;
        for i in 0..DIM {
            out.entries[i] -= rhs.entries[i];
        }
        out
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.re.is_finite() && e.im.is_finite())
    }
}

impl std::ops::Index<usize> for ComplexVector4 {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.entries[i]
    }
}

impl std::ops::IndexMut<usize> for ComplexVector4 {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.entries[i]
    }
}

/// Padé(13,13) numerator coefficients, Higham (2005) eq. (10.33).
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// 1-norm threshold above which the argument is scaled, Higham Table 10.2.
const THETA_13: f64 = 5.371_920_351_148_152;

/// Compute `exp(scale · m)` by scaling-and-squaring with a Padé(13) core.
///
/// Accuracy: relative backward error at working precision for
/// `‖scale·m‖₁ ≤ 1e4`; the squaring count is derived from the 1-norm.
pub fn expm(m: &ComplexMatrix4, scale: f64) -> Result<ComplexMatrix4, LinalgError> {
    if !m.is_finite() || !scale.is_finite() {
        return Err(LinalgError::NonFiniteInput);
    }
    let a = m.scale_re(scale);
    let norm = a.one_norm();
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as u32
    } else {
        0
    };
    let a = a.scale_re(0.5f64.powi(squarings as i32));

    let a2 = a.matmul(&a);
    let a4 = a2.matmul(&a2);
    let a6 = a2.matmul(&a4);

    let c = |k: usize| Complex64::new(PADE13[k], 0.0);
    let eye = ComplexMatrix4::identity();

    // U = A·[A6·(b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I]
    let w1 = a6
        .scale(c(13))
        .add(&a4.scale(c(11)))
        .add(&a2.scale(c(9)));
    let w2 = w1
        .matmul(&a6)
        .add(&a6.scale(c(7)))
        .add(&a4.scale(c(5)))
        .add(&a2.scale(c(3)))
        .add(&eye.scale(c(1)));
    let u = a.matmul(&w2);

    // V = A6·(b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let z1 = a6
        .scale(c(12))
        .add(&a4.scale(c(10)))
        .add(&a2.scale(c(8)));
    let v = z1
        .matmul(&a6)
        .add(&a6.scale(c(6)))
        .add(&a4.scale(c(4)))
        .add(&a2.scale(c(2)))
        .add(&eye.scale(c(0)));

    // exp(A) ≈ (V − U)⁻¹ (V + U), then undo the scaling by squaring.
    let lu = LuFactors::factor(&v.sub(&u))?;
    let mut r = lu.solve_matrix(&v.add(&u));
    for _ in 0..squarings {
        r = r.matmul(&r);
    }
    Ok(r)
}

/// Solve `m · x = rhs` by partial-pivot LU with one refinement step.
///
/// The residual satisfies `‖m·x − rhs‖ ≤ 1e−10·‖rhs‖` for well-conditioned
/// systems; see the unit tests for the tested conditioning regimes.
pub fn solve(m: &ComplexMatrix4, rhs: &ComplexVector4) -> Result<ComplexVector4, LinalgError> {
    if !m.is_finite() || !rhs.is_finite() {
        return Err(LinalgError::NonFiniteInput);
    }
    let lu = LuFactors::factor(m)?;
    let mut x = lu.solve_vec(rhs);
    // One step of iterative refinement knocks the residual down to the
    // working-precision floor.
    let r = rhs.sub(&m.mul_vec(&x));
    let dx = lu.solve_vec(&r);
    for i in 0..DIM {
        x[i] += dx[i];
    }
    Ok(x)
}

/// 1-norm condition estimate `‖m‖₁·‖m⁻¹‖₁` via explicit inverse columns.
pub fn condition_estimate(m: &ComplexMatrix4) -> Result<f64, LinalgError> {
    let lu = LuFactors::factor(m)?;
    let inv = lu.solve_matrix(&ComplexMatrix4::identity());
    Ok(m.one_norm() * inv.one_norm())
}

/// Packed LU factorization with row permutation.
struct LuFactors {
    lu: [[Complex64; DIM]; DIM],
    perm: [usize; DIM],
}

impl LuFactors {
    fn factor(m: &ComplexMatrix4) -> Result<Self, LinalgError> {
        let scale = m.max_abs();
        if scale == 0.0 {
            return Err(LinalgError::SingularMatrix {
                pivot: 0.0,
                threshold: 0.0,
            });
        }
        let threshold = 1e-14 * scale;
        let mut lu = m.entries;
        let mut perm = [0usize; DIM];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i;
        }
        for col in 0..DIM {
            let mut best = col;
            let mut best_mag = lu[col][col].norm();
            for row in (col + 1)..DIM {
                let mag = lu[row][col].norm();
                if mag > best_mag {
                    best = row;
                    best_mag = mag;
                }
            }
            if best_mag < threshold {
                return Err(LinalgError::SingularMatrix {
                    pivot: best_mag,
                    threshold,
                });
            }
            if best != col {
                lu.swap(col, best);
                perm.swap(col, best);
            }
            let pivot = lu[col][col];
            for row in (col + 1)..DIM {
                let factor = lu[row][col] / pivot;
                lu[row][col] = factor;
                for j in (col + 1)..DIM {
                    let sub = factor * lu[col][j];
                    lu[row][j] -= sub;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    fn solve_vec(&self, b: &ComplexVector4) -> ComplexVector4 {
        let mut y = [ZERO; DIM];
        for i in 0..DIM {
            let mut acc = b.entries[self.perm[i]];
            for k in 0..i {
                acc -= self.lu[i][k] * y[k];
            }
            y[i] = acc;
        }
        let mut x = [ZERO; DIM];
        for i in (0..DIM).rev() {
            let mut acc = y[i];
            for k in (i + 1)..DIM {
                acc -= self.lu[i][k] * x[k];
            }
            x[i] = acc / self.lu[i][i];
        }
        ComplexVector4::from_entries(x)
    }

    fn solve_matrix(&self, b: &ComplexMatrix4) -> ComplexMatrix4 {
        let mut out = ComplexMatrix4::zero();
        for j in 0..DIM {
            let mut col = ComplexVector4::zero();
            for i in 0..DIM {
                col[i] = b.entries[i][j];
            }
            let x = self.solve_vec(&col);
            for i in 0..DIM {
                out.entries[i][j] = x[i];
            }
        }
        out
    }
}
