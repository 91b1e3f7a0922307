//! Square matrices over the base field, used for the linear subsemigroup.
//! Column i holds the coordinates of the image of the i-th generator, so
//! composition of linear maps corresponds to the matrix product literally.

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    field: Field,
    entries: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn zero(n: usize, field: Field) -> Matrix {
        Matrix { n, field, entries: vec![Scalar::zero(field); n * n] }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zero(n, field);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one(field);
        }
        m
    }

    pub fn from_fn(n: usize, field: Field, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut m = Matrix::zero(n, field);
        for r in 0..n {
            for c in 0..n {
                *m.at_mut(r, c) = f(r, c);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.n + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.entries[r * self.n + c]
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch { expected: self.n, got: other.n });
        }
        let mut out = Matrix::zero(self.n, self.field);
        for r in 0..self.n {
            for c in 0..self.n {
                let mut acc = Scalar::zero(self.field);
                for k in 0..self.n {
                    acc = acc.checked_add(&self.at(r, k).checked_mul(other.at(k, c))?)?;
                }
                *out.at_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, lambda: &Scalar) -> Result<Matrix> {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.checked_mul(lambda)?;
        }
        Ok(out)
    }

    /// Exact determinant by Gaussian elimination over the field.
    pub fn det(&self) -> Result<Scalar> {
        let mut m = self.clone();
        let mut det = Scalar::one(self.field);
        for col in 0..self.n {
            let pivot_row = (col..self.n).find(|&r| !m.at(r, col).is_zero());
            let Some(pivot_row) = pivot_row else {
                return Ok(Scalar::zero(self.field));
            };
            if pivot_row != col {
                for c in 0..self.n {
                    let a = m.at(pivot_row, c).clone();
                    let b = m.at(col, c).clone();
                    *m.at_mut(pivot_row, c) = b;
                    *m.at_mut(col, c) = a;
                }
                det = det.negate();
            }
            let pivot = m.at(col, col).clone();
            det = det.checked_mul(&pivot)?;
            let inv = pivot.inv()?;
            for r in col + 1..self.n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).checked_mul(&inv)?;
                for c in col..self.n {
                    let delta = factor.checked_mul(m.at(col, c))?;
                    *m.at_mut(r, c) = m.at(r, c).checked_sub(&delta)?;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss-Jordan elimination; `Singular` if none exists.
    pub fn inverse(&self) -> Result<Matrix> {
        let mut m = self.clone();
        let mut inv = Matrix::identity(self.n, self.field);
        for col in 0..self.n {
            let pivot_row = (col..self.n).find(|&r| !m.at(r, col).is_zero());
            let Some(pivot_row) = pivot_row else {
                return Err(Error::Singular);
            };
            if pivot_row != col {
                for c in 0..self.n {
                    m.entries.swap(pivot_row * self.n + c, col * self.n + c);
                    inv.entries.swap(pivot_row * self.n + c, col * self.n + c);
                }
            }
            let pivot_inv = m.at(col, col).inv()?;
            for c in 0..self.n {
                *m.at_mut(col, c) = m.at(col, c).checked_mul(&pivot_inv)?;
                *inv.at_mut(col, c) = inv.at(col, c).checked_mul(&pivot_inv)?;
            }
            for r in 0..self.n {
                if r == col || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in 0..self.n {
                    let dm = factor.checked_mul(m.at(col, c))?;
                    *m.at_mut(r, c) = m.at(r, c).checked_sub(&dm)?;
                    let di = factor.checked_mul(inv.at(col, c))?;
                    *inv.at_mut(r, c) = inv.at(r, c).checked_sub(&di)?;
                }
            }
        }
        Ok(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{} [", self.n, self.n)?;
        for r in 0..self.n {
            write!(f, "[")?;
            for c in 0..self.n {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
