//! The Frölicher spectral sequence with `L_α` coefficients.
//!
//! Filtration by holomorphic degree `p` on the double complex
//! `(Λ^{•,•}, ∂_{αθ}, ∂̄_{αθ})`. Pages are computed as explicit subquotients
//! `E_r^{p,q} = Z_r^{p,q} / B_r^{p,q}` inside `Λ^{p,q}`:
//!
//! * `Z_r`: `x ∈ Λ^{p,q}` with `∂̄x = 0` extending to a zig-zag
//!   `x = x_0, x_1, …, x_{r−1}`, `x_i ∈ Λ^{p+i,q−i}`, `∂x_{i−1} + ∂̄x_i = 0`;
//! * `B_r`: `∂u_1 + ∂̄z` where `u_i ∈ Λ^{p−i,q+i−1}` (`1 ≤ i ≤ r−1`),
//!   `∂̄u_{r−1} = 0` and `∂u_{i+1} + ∂̄u_i = 0`.
//!
//! Since `d_r` has bidegree `(r, 1−r)`, `E_{m+1} = E_∞` in complex
//! dimension `m`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::model::Model;
use crate::subspace::Subspace;
use crate::twisted::{bc_spaces, morse_novikov, TwistedOperators, Weight};

#[derive(Clone, Debug, Serialize)]
pub struct SpectralPage {
    pub r: usize,
    /// `dims[p][q] = dim E_r^{p,q}`.
    pub dims: Vec<Vec<usize>>,
    /// `Z_r^{p,q}` and `B_r^{p,q}` in `Λ^{p,q}` coordinates.
    #[serde(skip)]
    pub numerators: Vec<Vec<Subspace>>,
    #[serde(skip)]
    pub denominators: Vec<Vec<Subspace>>,
}

impl SpectralPage {
    /// `Σ_{p+q=k} dim E_r^{p,q}`.
    pub fn total(&self, k: usize) -> usize {
        let m = self.dims.len() - 1;
        (0..=m).filter(|&p| k >= p && k - p <= m).map(|p| self.dims[p][k - p]).sum()
    }
}

struct Bigraded<'a> {
    ops: &'a TwistedOperators,
    m: i64,
}

impl Bigraded<'_> {
    fn coords(&self, p: i64, q: i64) -> Vec<usize> {
        if p < 0 || q < 0 || p > self.m || q > self.m {
            return Vec::new();
        }
        self.ops.bigraded.coords(p as usize, q as usize)
    }

    fn dim(&self, (p, q): (i64, i64)) -> usize {
        self.coords(p, q).len()
    }

    /// `∂_{αθ}: Λ^{p,q} → Λ^{p+1,q}`.
    fn del(&self, p: i64, q: i64) -> Matrix {
        self.op(&self.ops.del, (p, q), (p + 1, q))
    }

    /// `∂̄_{αθ}: Λ^{p,q} → Λ^{p,q+1}`.
    fn delbar(&self, p: i64, q: i64) -> Matrix {
        self.op(&self.ops.delbar, (p, q), (p, q + 1))
    }

    fn op(&self, mats: &[Matrix], src: (i64, i64), dst: (i64, i64)) -> Matrix {
        let (rows, cols) = (self.coords(dst.0, dst.1), self.coords(src.0, src.1));
        if rows.is_empty() || cols.is_empty() {
            return Matrix::zeros(rows.len(), cols.len());
        }
        mats[(src.0 + src.1) as usize].select(&rows, &cols)
    }
}

/// Block matrix from `(row block, column block, matrix)` pieces.
fn assemble(row_dims: &[usize], col_dims: &[usize], pieces: Vec<(usize, usize, Matrix)>) -> Matrix {
    let offset = |dims: &[usize], i: usize| dims[..i].iter().sum::<usize>();
    let mut out = Matrix::zeros(row_dims.iter().sum(), col_dims.iter().sum());
    for (bi, bj, m) in pieces {
        assert_eq!(m.shape(), (row_dims[bi], col_dims[bj]));
        let (r0, c0) = (offset(row_dims, bi), offset(col_dims, bj));
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m.get(i, j).is_zero() {
                    out.set(r0 + i, c0 + j, m.get(i, j).clone());
                }
            }
        }
    }
    out
}

fn z_r(g: &Bigraded, p: i64, q: i64, r: usize) -> Subspace {
    let vars: Vec<(i64, i64)> = (0..r as i64).map(|i| (p + i, q - i)).collect();
    let col_dims: Vec<usize> = vars.iter().map(|&v| g.dim(v)).collect();
    let mut row_dims = vec![g.dim((p, q + 1))];
    let mut pieces = vec![(0, 0, g.delbar(p, q))];
    for i in 1..r {
        let (a, b) = vars[i];
        row_dims.push(g.dim((a, b + 1)));
        pieces.push((i, i - 1, g.del(a - 1, b + 1)));
        pieces.push((i, i, g.delbar(a, b)));
    }
    let k = assemble(&row_dims, &col_dims, pieces).kernel_basis();
    k.project(&(0..col_dims[0]).collect::<Vec<_>>())
}

fn b_r(g: &Bigraded, p: i64, q: i64, r: usize) -> Subspace {
    let here = g.dim((p, q));
    let boundary = g.delbar(p, q - 1).image_subspace();
    if r == 1 {
        return if g.dim((p, q - 1)) == 0 { Subspace::zero(here) } else { boundary };
    }
    // u_1 .. u_{r-1}
    let vars: Vec<(i64, i64)> = (1..r as i64).map(|i| (p - i, q + i - 1)).collect();
    let col_dims: Vec<usize> = vars.iter().map(|&v| g.dim(v)).collect();
    let last = vars.len() - 1;
    let (lp, lq) = vars[last];
    let mut row_dims = vec![g.dim((lp, lq + 1))];
    let mut pieces = vec![(0, last, g.delbar(lp, lq))];
    for i in 0..last {
        let (a, b) = vars[i];
        row_dims.push(g.dim((a, b + 1)));
        let row = row_dims.len() - 1;
        pieces.push((row, i + 1, g.del(a - 1, b + 1)));
        pieces.push((row, i, g.delbar(a, b)));
    }
    let chains = assemble(&row_dims, &col_dims, pieces).kernel_basis();
    let (a, b) = vars[0];
    let from_chains = Subspace::span(
        here,
        chains.basis().iter().map(|v| g.del(a, b).mul_vec(&v[..col_dims[0]])).collect(),
    );
    from_chains.sum(&if g.dim((p, q - 1)) == 0 { Subspace::zero(here) } else { boundary }).unwrap()
}

fn page(g: &Bigraded, r: usize) -> Result<SpectralPage> {
    let m = g.m as usize;
    let mut dims = vec![vec![0; m + 1]; m + 1];
    let mut numerators = vec![Vec::with_capacity(m + 1); m + 1];
    let mut denominators = vec![Vec::with_capacity(m + 1); m + 1];
    for p in 0..=m {
        for q in 0..=m {
            let z = z_r(g, p as i64, q as i64, r);
            let b = b_r(g, p as i64, q as i64, r);
            dims[p][q] = crate::subspace::quotient_dim(&z, &b)
                .map_err(|e| Error::Convention(format!("B_{r} not inside Z_{r} at ({p},{q}): {e}")))?;
            numerators[p].push(z);
            denominators[p].push(b);
        }
    }
    Ok(SpectralPage { r, dims, numerators, denominators })
}

/// Pages `E_1 … E_{min(r_max, m+1)}`; `E_{m+1}` is already `E_∞`.
pub fn pages(model: &Model, w: &Weight, r_max: usize) -> Result<Vec<SpectralPage>> {
    if r_max == 0 {
        return Err(Error::Precondition("r_max must be at least 1".into()));
    }
    let ops = TwistedOperators::new(model, w)?;
    pages_from(&ops, r_max)
}

pub fn pages_from(ops: &TwistedOperators, r_max: usize) -> Result<Vec<SpectralPage>> {
    let m = ops.bigraded.complex_dim();
    let g = Bigraded { ops, m: m as i64 };
    (1..=r_max.min(m + 1)).map(|r| page(&g, r)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Degeneration {
    pub page: usize,
    /// `Σ_{p+q=k} dim E_∞^{p,q}`, equal to the Morse–Novikov dimensions.
    pub abutment: Vec<usize>,
}

/// Smallest `r` with `E_r = E_∞`, after checking the abutment against the
/// twisted de Rham cohomology.
pub fn degeneration_page(model: &Model, w: &Weight) -> Result<Degeneration> {
    let ops = TwistedOperators::new(model, w)?;
    let all = pages_from(&ops, usize::MAX)?;
    let last = all.last().expect("at least E_1");
    let n = model.dim;
    let abutment: Vec<usize> = (0..=n).map(|k| last.total(k)).collect();
    let mn = morse_novikov(model, w)?.dims();
    if abutment != mn {
        return Err(Error::Convention(format!("E_inf totals {abutment:?} differ from twisted de Rham {mn:?}")));
    }
    let page = all.iter().find(|p| p.dims == last.dims).map_or(1, |p| p.r);
    Ok(Degeneration { page, abutment })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialExactness {
    pub holds: bool,
    /// `dim ker(d_1: E_1^{p,q} → E_1^{p+1,q})`.
    pub kernel_dim: usize,
    /// `dim im(d_1: E_1^{p−1,q} → E_1^{p,q})`.
    pub image_dim: usize,
}

/// Exactness of `d_1 = [∂_{αθ}]` on Dolbeault classes at `E_1^{p,q}`,
/// that is `E_2^{p,q} = 0`.
pub fn e1_partial_exactness(model: &Model, w: &Weight, p: usize, q: usize) -> Result<PartialExactness> {
    let ops = TwistedOperators::new(model, w)?;
    let m = ops.bigraded.complex_dim();
    if p > m || q > m {
        return Err(Error::Dimension(format!("bidegree ({p},{q}) outside 0..={m}")));
    }
    let g = Bigraded { ops: &ops, m: m as i64 };
    let (p, q) = (p as i64, q as i64);
    let b1 = b_r(&g, p, q, 1).dim();
    let kernel_dim = z_r(&g, p, q, 2).dim() - b1;
    let image_dim = b_r(&g, p, q, 2).dim() - b1;
    Ok(PartialExactness { holds: kernel_dim == image_dim, kernel_dim, image_dim })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExgenCheck {
    pub exact: bool,
    /// `h^{p−1,q}(L_α)` and `h^{q−1,p}(L_ᾱ)`, the two source summands.
    pub source_dims: (usize, usize),
    pub bott_chern_dim: usize,
    /// `dim H^{p+q}(L_α)`.
    pub target_dim: usize,
    /// Image of the source in `H_BC`, and kernel of `ν`.
    pub image_dim: usize,
    pub kernel_dim: usize,
}

/// Exactness at the middle of
/// `H_∂̄^{p−1,q}(L_α) ⊕ conj H_∂̄^{q−1,p}(L_ᾱ) → H_BC^{p,q}(L_α) → H^{p+q}(L_α)`,
/// the first map being `∂_{αθ} + ∂̄_{αθ}` and the second the tautological one.
/// The conjugate summand is realized by the real-structure involution, which
/// carries `∂̄_{ᾱθ}`-closed `(q−1,p)`-forms to `∂_{αθ}`-closed `(p,q−1)`-forms.
pub fn exgen_check(model: &Model, w: &Weight, p: usize, q: usize) -> Result<ExgenCheck> {
    let ops = TwistedOperators::new(model, w)?;
    let bar = Weight::new(w.alpha.conj());
    let ops_bar = if bar == *w { ops.clone() } else { TwistedOperators::new(model, &bar)? };
    let b = &ops.bigraded;
    let m = b.complex_dim();
    if p > m || q > m {
        return Err(Error::Dimension(format!("bidegree ({p},{q}) outside 0..={m}")));
    }
    let g = Bigraded { ops: &ops, m: m as i64 };
    let gb = Bigraded { ops: &ops_bar, m: m as i64 };
    let (pi, qi) = (p as i64, q as i64);
    let k = p + q;
    let here = b.dim_pq(p, q);

    let (cycles, boundaries) = bc_spaces(&ops, p, q)?;

    // ∂_{αθ} of ∂̄_{αθ}-closed (p−1,q)-forms
    let first_src = g.delbar(pi - 1, qi).kernel_basis();
    let first = first_src.map(&g.del(pi - 1, qi));
    // ∂̄_{αθ} of conjugates of ∂̄_{ᾱθ}-closed (q−1,p)-forms
    let second = if p + q == 0 || q == 0 {
        Subspace::zero(here)
    } else {
        let src = gb.delbar(qi - 1, pi).kernel_basis();
        let r_src = b.range(q - 1, p);
        let r_dst = b.range(p, q - 1);
        let conj: Vec<Vec<_>> = src
            .basis()
            .iter()
            .map(|v| {
                let mut full = vec![crate::scalar::Scalar::zero(); b.dim(k - 1)];
                for (x, i) in v.iter().zip(r_src.clone()) {
                    full[i] = x.clone();
                }
                b.conj(&full, k - 1)[r_dst.clone()].to_vec()
            })
            .collect();
        let conj = Subspace::span(r_dst.len(), conj);
        let del = g.del(pi, qi - 1);
        if !conj.basis().iter().all(|v| del.mul_vec(v).iter().all(|x| x.is_zero())) {
            return Err(Error::Convention(format!("conjugate summand is not del-closed at ({p},{q})")));
        }
        conj.map(&g.delbar(pi, qi - 1))
    };
    let image = first.sum(&second)?.sum(&boundaries)?;
    if !cycles.contains_subspace(&image)? {
        return Err(Error::Convention(format!("source does not map into Bott-Chern cycles at ({p},{q})")));
    }

    // Bott-Chern cycles that are d_{αθ}-exact
    let exact_full = if k == 0 { Subspace::zero(b.dim(0)) } else { ops.d[k - 1].image_subspace() };
    let pq_coords = b.coords(p, q);
    let exact_here = {
        let embedded = cycles.embed(b.dim(k), &pq_coords);
        embedded.intersect(&exact_full)?.project(&pq_coords)
    };

    let source_dims = (
        if p == 0 { 0 } else { dolbeault_dim(&g, pi - 1, qi) },
        if q == 0 { 0 } else { dolbeault_dim(&gb, qi - 1, pi) },
    );
    let target_dim = morse_novikov(model, w)?.entries[k].dim;
    let image_dim = image.dim() - boundaries.dim();
    let kernel_dim = exact_here.dim() - boundaries.dim();
    Ok(ExgenCheck {
        exact: image == exact_here,
        source_dims,
        bott_chern_dim: cycles.dim() - boundaries.dim(),
        target_dim,
        image_dim,
        kernel_dim,
    })
}

fn dolbeault_dim(g: &Bigraded, p: i64, q: i64) -> usize {
    z_r(g, p, q, 1).dim() - b_r(g, p, q, 1).dim()
}
