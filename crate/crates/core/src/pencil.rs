//! Matrices whose entries are polynomials in the weight `α`, and the values of
//! `α` at which their rank drops.
//!
//! The rank profile of a polynomial matrix `P(α)` is read off a diagonal form
//! `U(α) P(α) V(α) = diag(s_1, …, s_r, 0, …)` reached with unimodular row and
//! column operations (Euclidean steps over `ℚ(i)[α]`). Since `U(α₀)` and
//! `V(α₀)` stay invertible at every point, `rank P(α₀)` is the number of `s_j`
//! not vanishing at `α₀`, so the exceptional set is exactly the root set of
//! `s_1 ⋯ s_r`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pencil {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

/// Where a pencil loses rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalSet {
    pub generic_rank: usize,
    /// Distinct rational weights with a rank drop, ascending.
    pub rational_roots: Vec<Scalar>,
    /// Squarefree monic remainder of the rank-drop polynomial after removing
    /// all rational roots; its (irrational or non-real) roots are also
    /// exceptional. Reported unevaluated.
    pub residual_factors: Vec<Poly>,
}

impl ExceptionalSet {
    pub fn empty(generic_rank: usize) -> Self {
        ExceptionalSet { generic_rank, rational_roots: Vec::new(), residual_factors: Vec::new() }
    }

    /// Whether `alpha` is a root of the rank-drop polynomial.
    pub fn contains(&self, alpha: &Scalar) -> bool {
        self.rational_roots.contains(alpha) || self.residual_factors.iter().any(|f| f.eval(alpha).is_zero())
    }
}

impl Pencil {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Pencil { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    /// The affine family `A + α·B`.
    pub fn affine(a: &Matrix, b: &Matrix) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::Dimension(format!(
                "pencil parts have shapes {:?} and {:?}",
                a.shape(),
                b.shape()
            )));
        }
        let (rows, cols) = a.shape();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(Poly::linear(a.get(i, j).clone(), b.get(i, j).clone()));
            }
        }
        Ok(Pencil { rows, cols, entries })
    }

    pub fn constant(a: &Matrix) -> Self {
        Pencil::affine(a, &Matrix::zeros(a.rows(), a.cols())).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn eval(&self, alpha: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).eval(alpha));
            }
        }
        m
    }

    pub fn mul(&self, o: &Pencil) -> Pencil {
        assert_eq!(self.cols, o.rows);
        let mut out = Pencil::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn vstack(&self, o: &Pencil) -> Pencil {
        assert_eq!(self.cols, o.cols);
        let mut entries = self.entries.clone();
        entries.extend(o.entries.iter().cloned());
        Pencil { rows: self.rows + o.rows, cols: self.cols, entries }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Pencil {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        Pencil { rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|p| p.degree().unwrap_or(0) == 0)
    }

    /// Nonzero diagonal entries (monic) of a unimodular diagonalization.
    pub fn diagonal_factors(&self) -> Vec<Poly> {
        let (r, c) = (self.rows, self.cols);
        let mut a: Vec<Vec<Poly>> = (0..r).map(|i| (0..c).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut diag = Vec::new();
        let mut t = 0;
        while t < r.min(c) {
            let Some((pi, pj)) = min_degree_entry(&a, t..r, t..c) else {
                break;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                let mut clean = true;
                for i in t + 1..r {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let (q, rem) = a[i][t].div_rem(&a[t][t]);
                    for j in t..c {
                        let sub = q.mul(&a[t][j]);
                        a[i][j] = a[i][j].sub(&sub);
                    }
                    clean &= rem.is_zero();
                }
                for j in t + 1..c {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let (q, rem) = a[t][j].div_rem(&a[t][t]);
                    for row in a.iter_mut().take(r).skip(t) {
                        let sub = q.mul(&row[t]);
                        row[j] = row[j].sub(&sub);
                    }
                    clean &= rem.is_zero();
                }
                if clean {
                    break;
                }
                // a remainder of smaller degree survives in row or column t
                let mut best: Option<(usize, usize, usize)> = None;
                for i in t + 1..r {
                    if let Some(d) = a[i][t].degree() {
                        if best.is_none_or(|b| d < b.0) {
                            best = Some((d, i, t));
                        }
                    }
                }
                for j in t + 1..c {
                    if let Some(d) = a[t][j].degree() {
                        if best.is_none_or(|b| d < b.0) {
                            best = Some((d, t, j));
                        }
                    }
                }
                let (_, bi, bj) = best.expect("unclean step leaves a nonzero remainder");
                if bj == t {
                    a.swap(t, bi);
                } else {
                    for row in a.iter_mut() {
                        row.swap(t, bj);
                    }
                }
            }
            diag.push(a[t][t].monic());
            t += 1;
        }
        diag
    }

    /// Rank over the rational-function field `ℚ(i)(α)`.
    pub fn generic_rank(&self) -> usize {
        self.diagonal_factors().len()
    }
}

fn min_degree_entry(
    a: &[Vec<Poly>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if let Some(d) = a[i][j].degree() {
                if best.is_none_or(|b| d < b.0) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Generic rank and the full rank-drop locus of a polynomial pencil.
pub fn pencil_exceptional_set(p: &Pencil) -> ExceptionalSet {
    let diag = p.diagonal_factors();
    let generic_rank = diag.len();
    let product = diag.iter().fold(Poly::constant(Scalar::one()), |acc, f| acc.mul(f));
    if product.degree().unwrap_or(0) == 0 {
        return ExceptionalSet::empty(generic_rank);
    }
    let sf = product.squarefree();
    let roots = sf.rational_roots();
    let mut residual = sf;
    for r in &roots {
        let lin = Poly::linear(-Scalar::from_rational(r.clone()), Scalar::one());
        residual = residual.div_rem(&lin).0;
    }
    let residual_factors = if residual.degree().unwrap_or(0) > 0 { vec![residual.monic()] } else { Vec::new() };
    ExceptionalSet {
        generic_rank,
        rational_roots: roots.into_iter().map(Scalar::from_rational).collect(),
        residual_factors,
    }
}

/// Union of several exceptional sets (generic rank is not meaningful for a
/// union and is reported as the sum).
pub fn union_exceptional(sets: &[ExceptionalSet]) -> ExceptionalSet {
    let mut roots: Vec<Scalar> = sets.iter().flat_map(|s| s.rational_roots.iter().cloned()).collect();
    roots.sort_by(|a, b| a.canonical_cmp(b));
    roots.dedup();
    let mut residual: Vec<Poly> = Vec::new();
    for f in sets.iter().flat_map(|s| s.residual_factors.iter()) {
        if !residual.contains(f) {
            residual.push(f.clone());
        }
    }
    ExceptionalSet {
        generic_rank: sets.iter().map(|s| s.generic_rank).sum(),
        rational_roots: roots,
        residual_factors: residual,
    }
}

/// Monic characteristic polynomial `det(α·I − M)`.
pub fn characteristic_polynomial(m: &Matrix) -> Result<Poly> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension(format!("characteristic polynomial of a {:?} matrix", m.shape())));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Poly::constant(Scalar::one()));
    }
    let p = Pencil::affine(&m.scale(&Scalar::from_int(-1)), &Matrix::identity(n))?;
    // unimodular operations change the determinant by a unit; both sides are monic
    Ok(p.diagonal_factors().iter().fold(Poly::constant(Scalar::one()), |acc, f| acc.mul(f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64) -> Scalar {
        Scalar::from_int(x)
    }

    #[test]
    fn constant_pencil_has_no_exceptions() {
        let e = pencil_exceptional_set(&Pencil::affine(&Matrix::identity(2), &Matrix::zeros(2, 2)).unwrap());
        assert_eq!(e.generic_rank, 2);
        assert!(e.rational_roots.is_empty() && e.residual_factors.is_empty());
    }

    #[test]
    fn diagonal_drop_at_zero() {
        let a = Matrix::diagonal(&[s(0), s(1)]);
        let b = Matrix::diagonal(&[s(1), s(0)]);
        let e = pencil_exceptional_set(&Pencil::affine(&a, &b).unwrap());
        assert_eq!(e.generic_rank, 2);
        assert_eq!(e.rational_roots, vec![s(0)]);
    }

    #[test]
    fn eigenvalues_of_a() {
        let a = Matrix::diagonal(&[s(1), s(2)]);
        let b = Matrix::identity(2).scale(&s(-1));
        let e = pencil_exceptional_set(&Pencil::affine(&a, &b).unwrap());
        assert_eq!(e.rational_roots, vec![s(1), s(2)]);
    }

    #[test]
    fn irrational_drop_is_residual() {
        // [[α, 2], [1, α]] has det α² − 2
        let a = Matrix::from_ints(&[&[0, 2], &[1, 0]]);
        let e = pencil_exceptional_set(&Pencil::affine(&a, &Matrix::identity(2)).unwrap());
        assert!(e.rational_roots.is_empty());
        assert_eq!(e.residual_factors.len(), 1);
        assert_eq!(e.residual_factors[0].to_string(), "1*a^2 + -2");
    }

    #[test]
    fn shape_mismatch_rejected() {
        assert!(Pencil::affine(&Matrix::identity(2), &Matrix::identity(3)).is_err());
    }

    #[test]
    fn charpoly_of_jordan_block() {
        let m = Matrix::from_rows(
            vec![vec![Scalar::from_ratio(1, 2), s(1)], vec![s(0), Scalar::from_ratio(1, 2)]],
            2,
        );
        let cp = characteristic_polynomial(&m).unwrap();
        let lin = Poly::linear(Scalar::from_ratio(-1, 2), s(1));
        assert_eq!(cp, lin.mul(&lin));
    }
}
