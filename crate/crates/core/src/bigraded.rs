//! Complexification of a model and its `(p, q)` splitting.
//!
//! The `(1,0)`-coframe is the `−i` eigenspace of `J` acting on 1-forms,
//! echelonized; the `(0,1)`-coframe is its complex conjugate. Complex
//! generators are numbered `φ_1..φ_m` (indices `0..m`) then `φ̄_1..φ̄_m`
//! (indices `m..2m`), and each `Λ^k` is ordered by increasing `p`, then
//! lexicographically, so every `Λ^{p,q}` is a contiguous coordinate block.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::exterior::{self, accumulate, binomial, wedge_mono, ExteriorAlgebra, Form, Mono};
use crate::matrix::Matrix;
use crate::model::Model;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct BigradedModel {
    m: usize,
    alg: ExteriorAlgebra,
    /// Row `a` holds the real coordinates of complex generator `a`.
    coframe: Matrix,
    to_real: Vec<Matrix>,
    from_real: Vec<Matrix>,
    d: Vec<Matrix>,
    theta: Vec<Scalar>,
    blocks: Vec<Vec<(usize, Range<usize>)>>,
    conj_map: Vec<Vec<(usize, Scalar)>>,
}

fn holo_mask(m: usize) -> Mono {
    (1 << m) - 1
}

fn holomorphic_coframe(model: &Model) -> Vec<Vec<Scalar>> {
    let n = model.dim;
    let shifted = model.j.add(&Matrix::identity(n).scale(&Scalar::i()));
    shifted.kernel_basis().basis().to_vec()
}

/// Real 2-form of `Σ_k coeffs[k] · de_k`.
fn d_of_one_form(model: &Model, coeffs: &[Scalar]) -> Form {
    let de = model.differential_images();
    let mut out = Form::new();
    for (k, c) in coeffs.iter().enumerate() {
        for (&mono, v) in &de[k] {
            accumulate(&mut out, mono, &(c * v));
        }
    }
    out
}

/// Coframe rows, complex algebra, and the two exterior-power changes of basis.
fn complexify(model: &Model) -> (usize, Matrix, ExteriorAlgebra, Vec<Matrix>, Vec<Matrix>) {
    let n = model.dim;
    let m = n / 2;
    let phi = holomorphic_coframe(model);
    assert_eq!(phi.len(), m, "J^2 = -1 forces an eigenspace of half dimension");
    let mut rows = phi.clone();
    rows.extend(phi.iter().map(|v| v.iter().map(Scalar::conj).collect::<Vec<_>>()));
    let coframe = Matrix::from_rows(rows, n);
    let inv = coframe.inverse().expect("coframe and its conjugate span the complexified dual");
    let real = model.algebra();
    let hm = holo_mask(m);
    let alg = ExteriorAlgebra::with_order(n, |mono| (mono & hm).count_ones());
    let gen_in_real: Vec<Form> = (0..n)
        .map(|a| {
            let mut f = Form::new();
            for k in 0..n {
                accumulate(&mut f, 1 << k, coframe.get(a, k));
            }
            f
        })
        .collect();
    let real_in_gen: Vec<Form> = (0..n)
        .map(|k| {
            let mut f = Form::new();
            for a in 0..n {
                accumulate(&mut f, 1 << a, inv.get(k, a));
            }
            f
        })
        .collect();
    let to_real = alg.induced_map(&gen_in_real, &real);
    let from_real = real.induced_map(&real_in_gen, &alg);
    (m, coframe, alg, to_real, from_real)
}

/// Complex generators `φ_a` whose differential has a `(0,2)` component.
pub(crate) fn integrability_witnesses(model: &Model) -> Vec<String> {
    let (m, coframe, alg, _, from_real) = complexify(model);
    let real = model.algebra();
    let mut out = Vec::new();
    for a in 0..m {
        let dphi = d_of_one_form(model, coframe.row(a));
        let c = from_real[2].mul_vec(&real.to_vec(&dphi, 2));
        let leak: Vec<String> = alg
            .to_form(&c, 2)
            .into_iter()
            .filter(|(mono, _)| mono & holo_mask(m) == 0)
            .map(|(mono, v)| format!("{v} on {}", complex_mono_name(mono, m)))
            .collect();
        if !leak.is_empty() {
            out.push(format!("d(phi{}) has (0,2)-component {}", a + 1, leak.join(" + ")));
        }
    }
    out
}

/// `phi1^phibar2` style label of a complex monomial.
pub fn complex_mono_name(mono: Mono, m: usize) -> String {
    if mono == 0 {
        return "1".into();
    }
    exterior::indices(mono)
        .iter()
        .map(|&a| if a < m { format!("phi{}", a + 1) } else { format!("phibar{}", a - m + 1) })
        .collect::<Vec<_>>()
        .join("^")
}

impl BigradedModel {
    pub fn new(model: &Model) -> Result<Self> {
        let n = model.dim;
        if n == 0 || n % 2 == 1 {
            return Err(Error::Model(format!("odd or zero dimension {n}")));
        }
        if model.j.mul(&model.j) != Matrix::identity(n).scale(&Scalar::from_int(-1)) {
            return Err(Error::Model("J^2 != -1".into()));
        }
        let leaks = integrability_witnesses(model);
        if !leaks.is_empty() {
            return Err(Error::Model(format!("not integrable: {}", leaks.join("; "))));
        }
        let (m, coframe, alg, to_real, from_real) = complexify(model);
        let real = model.algebra();

        let gen_images: Vec<Form> = (0..n)
            .map(|a| {
                let dg = d_of_one_form(model, coframe.row(a));
                alg.to_form(&from_real[2].mul_vec(&real.to_vec(&dg, 2)), 2)
            })
            .collect();
        let d = alg.derivation(&gen_images);
        let theta = from_real[1].mul_vec(&model.theta);

        let hm = holo_mask(m);
        let blocks = (0..=n)
            .map(|k| {
                let mut out: Vec<(usize, Range<usize>)> = Vec::new();
                for (i, &mono) in alg.basis(k).iter().enumerate() {
                    let p = (mono & hm).count_ones() as usize;
                    match out.last_mut() {
                        Some((lp, r)) if *lp == p => r.end = i + 1,
                        _ => out.push((p, i..i + 1)),
                    }
                }
                out
            })
            .collect();

        let conj_map = (0..=n)
            .map(|k| {
                alg.basis(k)
                    .iter()
                    .map(|&mono| {
                        let mut acc: Mono = 0;
                        let mut sign = 1;
                        for a in exterior::indices(mono) {
                            let b = if a < m { a + m } else { a - m };
                            let (mm, s) = wedge_mono(acc, 1 << b).unwrap();
                            acc = mm;
                            sign *= s;
                        }
                        (alg.position(acc), Scalar::from_int(sign))
                    })
                    .collect()
            })
            .collect();

        Ok(BigradedModel { m, alg, coframe, to_real, from_real, d, theta, blocks, conj_map })
    }

    /// Complex dimension `m = n/2`.
    pub fn complex_dim(&self) -> usize {
        self.m
    }

    pub fn real_dim(&self) -> usize {
        2 * self.m
    }

    pub fn algebra(&self) -> &ExteriorAlgebra {
        &self.alg
    }

    pub fn coframe(&self) -> &Matrix {
        &self.coframe
    }

    /// Complex exterior derivative `Λ^k → Λ^{k+1}` built as a derivation.
    pub fn d(&self, k: usize) -> &Matrix {
        &self.d[k]
    }

    /// `θ` in complex coordinates.
    pub fn theta(&self) -> &[Scalar] {
        &self.theta
    }

    pub fn theta_parts(&self) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut t10 = self.theta.clone();
        let mut t01 = self.theta.clone();
        for (i, &mono) in self.alg.basis(1).iter().enumerate() {
            if mono & holo_mask(self.m) != 0 {
                t01[i] = Scalar::zero();
            } else {
                t10[i] = Scalar::zero();
            }
        }
        (t10, t01)
    }

    pub fn to_real(&self, k: usize) -> &Matrix {
        &self.to_real[k]
    }

    pub fn from_real(&self, k: usize) -> &Matrix {
        &self.from_real[k]
    }

    pub fn dim(&self, k: usize) -> usize {
        self.alg.dim(k)
    }

    pub fn dim_pq(&self, p: usize, q: usize) -> usize {
        self.range(p, q).len()
    }

    /// Coordinates of `Λ^{p,q}` inside `Λ^{p+q}` (empty if out of range).
    pub fn range(&self, p: usize, q: usize) -> Range<usize> {
        self.blocks
            .get(p + q)
            .and_then(|b| b.iter().find(|(bp, _)| *bp == p))
            .map_or(0..0, |(_, r)| r.clone())
    }

    pub fn coords(&self, p: usize, q: usize) -> Vec<usize> {
        self.range(p, q).collect()
    }

    /// `p` of the `i`-th basis monomial of `Λ^k`.
    pub fn p_of(&self, k: usize, i: usize) -> usize {
        (self.alg.basis(k)[i] & holo_mask(self.m)).count_ones() as usize
    }

    /// Splits an operator `Λ^k → Λ^{k+1}` into the parts raising `p` by one
    /// and preserving `p`; any other component is returned as the remainder.
    pub fn split(&self, op: &Matrix, k: usize) -> (Matrix, Matrix, Matrix) {
        let mut del = Matrix::zeros(op.rows(), op.cols());
        let mut delbar = del.clone();
        let mut rest = del.clone();
        for i in 0..op.rows() {
            for j in 0..op.cols() {
                let v = op.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let (pt, ps) = (self.p_of(k + 1, i), self.p_of(k, j));
                let slot = if pt == ps + 1 {
                    &mut del
                } else if pt == ps {
                    &mut delbar
                } else {
                    &mut rest
                };
                slot.set(i, j, v.clone());
            }
        }
        (del, delbar, rest)
    }

    /// The real-structure involution: coefficientwise conjugation combined
    /// with `φ_a ↔ φ̄_a`. Maps `Λ^{p,q}` onto `Λ^{q,p}`.
    pub fn conj(&self, v: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); v.len()];
        for (i, c) in v.iter().enumerate() {
            let (t, s) = &self.conj_map[k][i];
            out[*t] = &c.conj() * s;
        }
        out
    }

    /// The complex structure acting on forms, `i^{q−p}` on `Λ^{p,q}`.
    pub fn complex_structure(&self, k: usize) -> Matrix {
        let diag: Vec<Scalar> = (0..self.dim(k))
            .map(|i| {
                let p = self.p_of(k, i) as i64;
                let q = k as i64 - p;
                Scalar::i().powi(q - p)
            })
            .collect();
        Matrix::diagonal(&diag)
    }

    /// Whether the derivation built on the complex coframe agrees with the
    /// real exterior derivative after changing basis back.
    pub fn reconstructs_real_differential(&self, model: &Model) -> bool {
        let d_real = model.d_matrices();
        (0..self.real_dim()).all(|k| self.to_real[k + 1].mul(&self.d[k]) == d_real[k].mul(&self.to_real[k]))
    }

    /// Embeds a `Λ^{p,q}` coordinate vector into `Λ^{p+q}`.
    pub fn embed(&self, p: usize, q: usize, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.range(p, q);
        assert_eq!(v.len(), r.len());
        let mut out = vec![Scalar::zero(); self.dim(p + q)];
        for (x, i) in v.iter().zip(r) {
            out[i] = x.clone();
        }
        out
    }

    pub fn expected_dim_pq(&self, p: usize, q: usize) -> usize {
        binomial(self.m, p) * binomial(self.m, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::builtin;

    #[test]
    fn bidegree_counts() {
        for name in ["torus2", "hopf_surface", "kodaira_thurston", "inoue_sm"] {
            let b = builtin(name).unwrap().bigraded().unwrap();
            for p in 0..=2 {
                for q in 0..=2 {
                    assert_eq!(b.dim_pq(p, q), b.expected_dim_pq(p, q));
                }
            }
            assert_eq!((0..=2).map(|p| b.dim_pq(p, 2 - p)).sum::<usize>(), 6);
        }
    }

    #[test]
    fn torus_counts() {
        let b = builtin("torus2").unwrap().bigraded().unwrap();
        assert_eq!(b.dim_pq(1, 0), 2);
        assert_eq!(b.dim_pq(1, 1), 4);
    }

    #[test]
    fn real_differential_is_reconstructed() {
        for name in ["torus2", "hopf_surface", "kodaira_thurston", "inoue_sm"] {
            let model = builtin(name).unwrap();
            let b = model.bigraded().unwrap();
            assert!(b.reconstructs_real_differential(&model), "{name}");
        }
    }

    #[test]
    fn hopf_d_splits_without_leak() {
        let b = builtin("hopf_surface").unwrap().bigraded().unwrap();
        for k in 0..4 {
            let (_, delbar, rest) = b.split(b.d(k), k);
            assert!(rest.is_zero());
            if k == 1 {
                // dbar of the (1,0) coframe: dbar(phi1) = -1/2 phi2^phibar2, dbar(phi2) = -1/2 phibar1^phi2
                assert!(!delbar.is_zero());
            }
        }
    }

    #[test]
    fn coframe_is_minus_i_eigenspace() {
        let model = builtin("hopf_surface").unwrap();
        let b = model.bigraded().unwrap();
        let row = b.coframe().row(0).to_vec();
        let jrow = model.j.mul_vec(&row);
        let expect: Vec<Scalar> = row.iter().map(|x| -(x * &Scalar::i())).collect();
        assert_eq!(jrow, expect);
        assert_eq!(row, vec![Scalar::one(), Scalar::i(), Scalar::zero(), Scalar::zero()]);
    }

    #[test]
    fn conjugation_is_involution_and_swaps_type() {
        let b = builtin("hopf_surface").unwrap().bigraded().unwrap();
        let r = b.range(2, 1);
        let mut v = vec![Scalar::zero(); b.dim(3)];
        v[r.start] = "1+2i".parse().unwrap();
        let c = b.conj(&v, 3);
        assert!(b.range(1, 2).contains(&c.iter().position(|x| !x.is_zero()).unwrap()));
        assert_eq!(b.conj(&c, 3), v);
    }

    #[test]
    fn non_integrable_structure_rejected() {
        // J e1 = e3, J e2 = e4 on the Kodaira-Thurston algebra: d(e2 + i e4) = i e1^e2 has a (0,2) part
        let mut model = builtin("kodaira_thurston").unwrap();
        let mut j = Matrix::zeros(4, 4);
        j.set(2, 0, Scalar::one());
        j.set(0, 2, Scalar::from_int(-1));
        j.set(3, 1, Scalar::one());
        j.set(1, 3, Scalar::from_int(-1));
        model.j = j;
        match model.bigraded() {
            Err(Error::Model(msg)) => assert!(msg.contains("(0,2)"), "{msg}"),
            other => panic!("expected integrability failure, got {other:?}"),
        }
    }
}
