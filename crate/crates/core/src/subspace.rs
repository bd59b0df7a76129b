//! Subspaces of `Scalar^n` held in reduced echelon form.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A linear subspace with an echelonized basis (pivot-leading-one rows of the
/// RREF of any spanning set). Two equal subspaces always carry identical bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Matrix::identity(ambient).image_subspace()
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() || ambient == 0 {
            return Subspace::zero(ambient);
        }
        let m = Matrix::from_rows(vectors, ambient);
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn as_columns(&self) -> Matrix {
        Matrix::from_columns(&self.basis, self.ambient)
    }

    fn check_ambient(&self, o: &Subspace) -> Result<()> {
        if self.ambient != o.ambient {
            return Err(Error::Dimension(format!(
                "subspaces live in spaces of dimension {} and {}",
                self.ambient, o.ambient
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows, self.ambient).rank() == self.dim()
    }

    pub fn contains_subspace(&self, o: &Subspace) -> Result<bool> {
        self.check_ambient(o)?;
        Ok(self.sum(o)?.dim() == self.dim())
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check_ambient(o)?;
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, v))
    }

    pub fn intersect(&self, o: &Subspace) -> Result<Subspace> {
        self.check_ambient(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // {A x : A x = B y}
        let a = self.as_columns();
        let b = o.as_columns();
        let k = a.hstack(&b.scale(&Scalar::from_int(-1))).kernel_basis();
        let vectors = k
            .basis()
            .iter()
            .map(|kv| a.mul_vec(&kv[..self.dim()]))
            .collect();
        Ok(Subspace::span(self.ambient, vectors))
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)).collect())
    }

    /// `{x : M x ∈ target}`.
    pub fn preimage(m: &Matrix, target: &Subspace) -> Subspace {
        assert_eq!(m.rows(), target.ambient);
        let n = m.cols();
        let t = target.as_columns().scale(&Scalar::from_int(-1));
        let k = m.hstack(&t).kernel_basis();
        Subspace::span(n, k.basis().iter().map(|v| v[..n].to_vec()).collect())
    }

    /// Restriction to a subset of coordinates (a coordinate projection).
    pub fn project(&self, coords: &[usize]) -> Subspace {
        Subspace::span(
            coords.len(),
            self.basis.iter().map(|v| coords.iter().map(|&c| v[c].clone()).collect()).collect(),
        )
    }

    /// Inclusion into a bigger space, placing coordinate `i` at `coords[i]`.
    pub fn embed(&self, ambient: usize, coords: &[usize]) -> Subspace {
        assert_eq!(coords.len(), self.ambient);
        let vectors = self
            .basis
            .iter()
            .map(|v| {
                let mut w = vec![Scalar::zero(); ambient];
                for (x, &c) in v.iter().zip(coords) {
                    w[c] = x.clone();
                }
                w
            })
            .collect();
        Subspace::span(ambient, vectors)
    }

    /// Vectors of `self`'s basis that extend a basis of `small` to a basis of
    /// `self`, chosen greedily in basis order. Requires `small ⊆ self`.
    pub fn complement_basis(&self, small: &Subspace) -> Result<Vec<Vec<Scalar>>> {
        quotient_dim(self, small)?;
        let mut acc = small.clone();
        let mut out = Vec::new();
        for v in &self.basis {
            if !acc.contains(v) {
                acc = acc.sum(&Subspace::span(self.ambient, vec![v.clone()]))?;
                out.push(v.clone());
            }
        }
        Ok(out)
    }
}

/// `dim big − dim small`, after verifying `small ⊆ big`.
pub fn quotient_dim(big: &Subspace, small: &Subspace) -> Result<usize> {
    if !big.contains_subspace(small)? {
        return Err(Error::Precondition(format!(
            "subspace of dimension {} is not contained in subspace of dimension {}",
            small.dim(),
            big.dim()
        )));
    }
    Ok(big.dim() - small.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    }

    #[test]
    fn intersect_examples() {
        let a = Subspace::span(2, vec![vec![Scalar::from_int(1), Scalar::from_int(2)]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let x = Subspace::span(2, vec![e(2, 0)]);
        let y = Subspace::span(2, vec![e(2, 1)]);
        assert!(x.intersect(&y).unwrap().is_zero());
        let p = Subspace::span(3, vec![e(3, 0), e(3, 1)]);
        let q = Subspace::span(3, vec![e(3, 1), e(3, 2)]);
        assert_eq!(p.intersect(&q).unwrap(), Subspace::span(3, vec![e(3, 1)]));
        assert!(matches!(p.intersect(&x), Err(Error::Dimension(_))));
    }

    #[test]
    fn quotient_examples() {
        let big = Subspace::span(3, vec![e(3, 0), e(3, 1)]);
        assert_eq!(quotient_dim(&big, &big).unwrap(), 0);
        assert_eq!(quotient_dim(&Subspace::full(3), &Subspace::zero(3)).unwrap(), 3);
        let small = Subspace::span(3, vec![e(3, 0)]);
        assert_eq!(quotient_dim(&big, &small).unwrap(), 1);
        assert!(matches!(quotient_dim(&small, &big), Err(Error::Precondition(_))));
    }

    #[test]
    fn dimension_formula() {
        let a = Subspace::span(4, vec![e(4, 0), e(4, 1), e(4, 2)]);
        let mut v = e(4, 0);
        v[3] = Scalar::one();
        let b = Subspace::span(4, vec![v, e(4, 1)]);
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.dim(), a.dim() + b.dim() - s.dim());
    }

    #[test]
    fn preimage_of_line() {
        let m = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        let t = Subspace::zero(2);
        assert_eq!(Subspace::preimage(&m, &t), Subspace::span(2, vec![e(2, 1)]));
    }
}
