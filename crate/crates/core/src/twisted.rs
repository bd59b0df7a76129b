//! Cohomology twisted by the flat line bundle `L_α`.
//!
//! Sign convention: `d_{αθ} = d − α·θ∧`, `∂_{αθ} = ∂ − α·θ^{1,0}∧`,
//! `∂̄_{αθ} = ∂̄ − α·θ^{0,1}∧`. The opposite sign is the weight `−α`.
//! `I` acts on `Λ^{p,q}` by `i^{q−p}` and `d^c_{αθ} = I d_{αθ} I^{−1}`; the
//! constant `c` in `d_{αθ} d^c_{αθ} = c·∂_{αθ}∂̄_{αθ}` is measured once per
//! process (see [`ddc_constant`]).

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bigraded::BigradedModel;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::model::Model;
use crate::pencil::{pencil_exceptional_set, union_exceptional, ExceptionalSet, Pencil};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Weight {
    pub alpha: Scalar,
}

impl Weight {
    pub fn new(alpha: Scalar) -> Self {
        Weight { alpha }
    }

    pub fn untwisted() -> Self {
        Weight::new(Scalar::zero())
    }
}

impl From<Scalar> for Weight {
    fn from(alpha: Scalar) -> Self {
        Weight::new(alpha)
    }
}

impl From<i64> for Weight {
    fn from(a: i64) -> Self {
        Weight::new(Scalar::from_int(a))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.alpha)
    }
}

/// `d_{αθ}` on the real model, `Λ^k → Λ^{k+1}` for `k = 0..=n`.
pub fn mn_operators(model: &Model, w: &Weight) -> Vec<Matrix> {
    let alg = model.algebra();
    let wedge = alg.wedge_left(&model.theta_form(), 1);
    model.d_matrices().iter().zip(&wedge).map(|(d, t)| d.sub(&t.scale(&w.alpha))).collect()
}

/// `d_{αθ}|Λ^k` as the pencil `d − α·θ∧`.
pub fn mn_pencil(model: &Model, k: usize) -> Pencil {
    let alg = model.algebra();
    let wedge = alg.wedge_left(&model.theta_form(), 1);
    Pencil::affine(&model.d_matrices()[k], &wedge[k].scale(&Scalar::from_int(-1))).unwrap()
}

/// Untwisted pieces of the complex operators, from which any weight is an
/// affine combination.
#[derive(Clone, Debug)]
struct ComplexParts {
    del: Vec<Matrix>,
    delbar: Vec<Matrix>,
    theta10: Vec<Matrix>,
    theta01: Vec<Matrix>,
}

fn complex_parts(b: &BigradedModel) -> Result<ComplexParts> {
    let n = b.real_dim();
    let alg = b.algebra();
    let (t10, t01) = b.theta_parts();
    let theta10 = alg.wedge_left(&alg.to_form(&t10, 1), 1);
    let theta01 = alg.wedge_left(&alg.to_form(&t01, 1), 1);
    let mut del = Vec::with_capacity(n + 1);
    let mut delbar = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (a, bb, rest) = b.split(b.d(k), k);
        if !rest.is_zero() {
            return Err(Error::Model(format!("d has a component of bidegree other than (1,0), (0,1) in degree {k}")));
        }
        del.push(a);
        delbar.push(bb);
    }
    Ok(ComplexParts { del, delbar, theta10, theta01 })
}

/// All twisted operators of one weight on one model.
#[derive(Clone, Debug)]
pub struct TwistedOperators {
    pub weight: Weight,
    /// `d_{αθ}` in the real basis.
    pub d_real: Vec<Matrix>,
    pub bigraded: BigradedModel,
    /// `d_{αθ}`, `∂_{αθ}`, `∂̄_{αθ}`, `d^c_{αθ}` in the complex basis.
    pub d: Vec<Matrix>,
    pub del: Vec<Matrix>,
    pub delbar: Vec<Matrix>,
    pub dc: Vec<Matrix>,
}

fn assert_zero(m: &Matrix, what: &str, k: usize) -> Result<()> {
    if m.is_zero() {
        Ok(())
    } else {
        Err(Error::Convention(format!("{what} fails on degree {k}")))
    }
}

impl TwistedOperators {
    pub fn new(model: &Model, w: &Weight) -> Result<Self> {
        let b = model.bigraded()?;
        Self::with_bigraded(model, b, w)
    }

    pub fn with_bigraded(model: &Model, b: BigradedModel, w: &Weight) -> Result<Self> {
        let n = model.dim;
        let d_real = mn_operators(model, w);
        for k in 0..n {
            if !d_real[k + 1].mul(&d_real[k]).is_zero() {
                return Err(Error::Precondition(format!("d_(a theta)^2 != 0 on degree {k}; is theta closed?")));
            }
        }
        let parts = complex_parts(&b)?;
        let a = &w.alpha;
        let del: Vec<Matrix> = parts.del.iter().zip(&parts.theta10).map(|(x, t)| x.sub(&t.scale(a))).collect();
        let delbar: Vec<Matrix> = parts.delbar.iter().zip(&parts.theta01).map(|(x, t)| x.sub(&t.scale(a))).collect();
        let d: Vec<Matrix> = del.iter().zip(&delbar).map(|(x, y)| x.add(y)).collect();
        let dc = (0..=n)
            .map(|k| b.complex_structure(k + 1).mul(&d[k]).mul(&b.complex_structure(k).conj()))
            .collect();
        let ops = TwistedOperators { weight: w.clone(), d_real, bigraded: b, d, del, delbar, dc };
        ops.check_identities()?;
        Ok(ops)
    }

    /// Squares, anticommutators, `d = ∂ + ∂̄` against the real operator, and
    /// `d d^c = c ∂ ∂̄` with the calibrated `c`.
    pub fn check_identities(&self) -> Result<()> {
        let b = &self.bigraded;
        let n = b.real_dim();
        for k in 0..n {
            let back = b.to_real(k + 1).mul(&self.d[k]);
            if back != self.d_real[k].mul(b.to_real(k)) {
                return Err(Error::Convention(format!("complex d_(a theta) disagrees with the real one on degree {k}")));
            }
        }
        let c = ddc_constant()?;
        for k in 0..n {
            assert_zero(&self.del[k + 1].mul(&self.del[k]), "del^2 = 0", k)?;
            assert_zero(&self.delbar[k + 1].mul(&self.delbar[k]), "delbar^2 = 0", k)?;
            let anti = self.del[k + 1].mul(&self.delbar[k]).add(&self.delbar[k + 1].mul(&self.del[k]));
            assert_zero(&anti, "del delbar + delbar del = 0", k)?;
            let ddc = self.d[k + 1].mul(&self.dc[k]);
            let rhs = self.del[k + 1].mul(&self.delbar[k]).scale(&c);
            assert_zero(&ddc.sub(&rhs), "d d^c = c del delbar", k)?;
        }
        Ok(())
    }
}

fn measure_ddc_constant() -> Result<Scalar> {
    let model = crate::model::builtin("hopf_surface")?;
    let b = model.bigraded()?;
    let parts = complex_parts(&b)?;
    let del: Vec<Matrix> = parts.del.iter().zip(&parts.theta10).map(|(x, t)| x.sub(t)).collect();
    let delbar: Vec<Matrix> = parts.delbar.iter().zip(&parts.theta01).map(|(x, t)| x.sub(t)).collect();
    let d0 = del[0].add(&delbar[0]);
    let d1 = del[1].add(&delbar[1]);
    let dc0 = b.complex_structure(1).mul(&d0).mul(&b.complex_structure(0).conj());
    let lhs = d1.mul(&dc0);
    let rhs = del[1].mul(&delbar[0]);
    let (i, j) = (0..rhs.rows())
        .flat_map(|i| (0..rhs.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !rhs.get(i, j).is_zero())
        .ok_or_else(|| Error::Convention("del delbar vanishes on functions of the calibration model".into()))?;
    let c = lhs.get(i, j) / rhs.get(i, j);
    if lhs != rhs.scale(&c) {
        return Err(Error::Convention("d d^c is not proportional to del delbar on functions".into()));
    }
    let two_i = &Scalar::i() * &Scalar::from_int(2);
    if c != two_i && c != -two_i.clone() {
        return Err(Error::Convention(format!("d d^c = {c} del delbar, expected +-2i")));
    }
    Ok(c)
}

/// The constant `c` with `d d^c = c·∂∂̄`, measured on functions of the Hopf
/// fixture at `α = 1` the first time it is needed.
pub fn ddc_constant() -> Result<Scalar> {
    static C: OnceLock<Result<Scalar>> = OnceLock::new();
    C.get_or_init(measure_ddc_constant).clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CohomologyKind {
    #[serde(rename = "morse_novikov")]
    MorseNovikov,
    #[serde(rename = "dolbeault")]
    Dolbeault,
    #[serde(rename = "bott_chern")]
    BottChern,
}

/// One graded piece: degree `[k]` or bidegree `[p, q]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub index: Vec<usize>,
    pub dim: usize,
    /// Echelonized representatives of a basis of the quotient, as full
    /// coordinate vectors of `Λ^k` (real basis for Morse–Novikov, complex
    /// basis otherwise).
    pub representatives: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub kind: CohomologyKind,
    pub weight: Weight,
    pub entries: Vec<Entry>,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.dim).collect()
    }

    pub fn dim_at(&self, index: &[usize]) -> Option<usize> {
        self.entries.iter().find(|e| e.index == index).map(|e| e.dim)
    }

    /// Bigraded dimensions as a `(m+1) × (m+1)` table `[p][q]`.
    pub fn table(&self) -> Vec<Vec<usize>> {
        let m = self.entries.iter().map(|e| e.index[0]).max().unwrap_or(0);
        let mut t = vec![vec![0; m + 1]; m + 1];
        for e in &self.entries {
            t[e.index[0]][e.index[1]] = e.dim;
        }
        t
    }
}

fn quotient(index: Vec<usize>, cycles: &Subspace, boundaries: &Subspace, embed: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Result<Entry> {
    let reps = cycles
        .complement_basis(boundaries)
        .map_err(|e| Error::Convention(format!("boundaries are not cycles at {index:?}: {e}")))?;
    Ok(Entry { dim: reps.len(), representatives: reps.iter().map(|v| embed(v)).collect(), index })
}

fn identity_embed(v: &[Scalar]) -> Vec<Scalar> {
    v.to_vec()
}

/// `H^k` of `(Λ^•, d_{αθ})` for every `k`.
pub fn morse_novikov(model: &Model, w: &Weight) -> Result<CohomologyReport> {
    let n = model.dim;
    let d = mn_operators(model, w);
    let alg = model.algebra();
    let mut entries = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let cycles = d[k].kernel_basis();
        let boundaries = if k == 0 { Subspace::zero(alg.dim(0)) } else { d[k - 1].image_subspace() };
        entries.push(quotient(vec![k], &cycles, &boundaries, identity_embed)?);
    }
    Ok(CohomologyReport { kind: CohomologyKind::MorseNovikov, weight: w.clone(), entries })
}

pub(crate) fn block(b: &BigradedModel, m: &Matrix, src: (usize, usize), dst: (usize, usize)) -> Matrix {
    m.select(&b.coords(dst.0, dst.1), &b.coords(src.0, src.1))
}

/// `h^{p,q}(L_α) = dim ker ∂̄_{αθ}|Λ^{p,q} − rank ∂̄_{αθ}|Λ^{p,q−1}`.
pub fn dolbeault(model: &Model, w: &Weight) -> Result<CohomologyReport> {
    let ops = TwistedOperators::new(model, w)?;
    Ok(dolbeault_from(&ops))
}

pub fn dolbeault_from(ops: &TwistedOperators) -> CohomologyReport {
    let b = &ops.bigraded;
    let m = b.complex_dim();
    let mut entries = Vec::new();
    for p in 0..=m {
        for q in 0..=m {
            let k = p + q;
            let cycles = block(b, &ops.delbar[k], (p, q), (p, q + 1)).kernel_basis();
            let boundaries = if q == 0 {
                Subspace::zero(b.dim_pq(p, q))
            } else {
                block(b, &ops.delbar[k - 1], (p, q - 1), (p, q)).image_subspace()
            };
            let entry = quotient(vec![p, q], &cycles, &boundaries, |v| b.embed(p, q, v))
                .expect("delbar^2 = 0 was checked on construction");
            entries.push(entry);
        }
    }
    CohomologyReport { kind: CohomologyKind::Dolbeault, weight: ops.weight.clone(), entries }
}

/// Cycles `ker d ∩ ker d^c` and boundaries `im d d^c` inside `Λ^{p,q}`, in
/// `Λ^{p,q}` coordinates.
pub(crate) fn bc_spaces(ops: &TwistedOperators, p: usize, q: usize) -> Result<(Subspace, Subspace)> {
    let b = &ops.bigraded;
    let k = p + q;
    let cols = b.coords(p, q);
    let all_rows: Vec<usize> = (0..b.dim(k + 1)).collect();
    let stacked = ops.d[k].select(&all_rows, &cols).vstack(&ops.dc[k].select(&all_rows, &cols));
    let cycles = stacked.kernel_basis();
    let boundaries = if p == 0 || q == 0 {
        Subspace::zero(cols.len())
    } else {
        let ddc = ops.d[k - 1].mul(&ops.dc[k - 2]);
        let src = b.coords(p - 1, q - 1);
        let full_rows: Vec<usize> = (0..b.dim(k)).collect();
        let img = ddc.select(&full_rows, &src);
        for r in (0..b.dim(k)).filter(|r| !cols.contains(r)) {
            if img.row(r).iter().any(|x| !x.is_zero()) {
                return Err(Error::Convention(format!("d d^c does not map (p-1,q-1) into ({p},{q})")));
            }
        }
        img.select(&cols, &(0..src.len()).collect::<Vec<_>>()).image_subspace()
    };
    if !cycles.contains_subspace(&boundaries)? {
        return Err(Error::Convention(format!("im d d^c is not inside ker d and ker d^c at ({p},{q})")));
    }
    Ok((cycles, boundaries))
}

/// `H^{p,q}_{BC}(L_α) = (ker d_{αθ} ∩ ker d^c_{αθ}) / im d_{αθ} d^c_{αθ}` on `Λ^{p,q}`.
pub fn bott_chern(model: &Model, w: &Weight, p: usize, q: usize) -> Result<Entry> {
    let ops = TwistedOperators::new(model, w)?;
    bott_chern_from(&ops, p, q)
}

pub fn bott_chern_from(ops: &TwistedOperators, p: usize, q: usize) -> Result<Entry> {
    let m = ops.bigraded.complex_dim();
    if p > m || q > m {
        return Err(Error::Dimension(format!("bidegree ({p},{q}) outside 0..={m}")));
    }
    let (cycles, boundaries) = bc_spaces(ops, p, q)?;
    quotient(vec![p, q], &cycles, &boundaries, |v| ops.bigraded.embed(p, q, v))
}

pub fn bott_chern_all(model: &Model, w: &Weight) -> Result<CohomologyReport> {
    let ops = TwistedOperators::new(model, w)?;
    let m = ops.bigraded.complex_dim();
    let mut entries = Vec::new();
    for p in 0..=m {
        for q in 0..=m {
            entries.push(bott_chern_from(&ops, p, q)?);
        }
    }
    Ok(CohomologyReport { kind: CohomologyKind::BottChern, weight: w.clone(), entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DdcCheck {
    pub holds: bool,
    /// `dim (im d ∩ ker d^c ∩ Λ^{p,q})`.
    pub lhs_dim: usize,
    /// `dim (im d d^c ∩ Λ^{p,q})`.
    pub rhs_dim: usize,
    /// A form of bidegree `(p,q)` in the left side but not the right
    /// (complex basis of `Λ^{p+q}`).
    pub witness: Option<Vec<Scalar>>,
}

/// The `dd^c`-lemma at level `(p,q)`: `im d ∩ ker d^c = im d d^c` on `Λ^{p,q}`.
pub fn ddc_lemma_check(model: &Model, w: &Weight, p: usize, q: usize) -> Result<DdcCheck> {
    let ops = TwistedOperators::new(model, w)?;
    ddc_lemma_check_from(&ops, p, q)
}

pub fn ddc_lemma_check_from(ops: &TwistedOperators, p: usize, q: usize) -> Result<DdcCheck> {
    let b = &ops.bigraded;
    let k = p + q;
    let cols = b.coords(p, q);
    let all: usize = b.dim(k);
    let pq = Subspace::span(
        all,
        cols.iter()
            .map(|&c| {
                let mut v = vec![Scalar::zero(); all];
                v[c] = Scalar::one();
                v
            })
            .collect(),
    );
    let im_d = if k == 0 { Subspace::zero(all) } else { ops.d[k - 1].image_subspace() };
    let lhs = im_d.intersect(&ops.dc[k].kernel_basis())?.intersect(&pq)?;
    let im_ddc = if k < 2 { Subspace::zero(all) } else { ops.d[k - 1].mul(&ops.dc[k - 2]).image_subspace() };
    let rhs = im_ddc.intersect(&pq)?;
    let extra = lhs
        .complement_basis(&rhs)
        .map_err(|e| Error::Convention(format!("im d d^c not inside im d and ker d^c at ({p},{q}): {e}")))?;
    Ok(DdcCheck { holds: extra.is_empty(), lhs_dim: lhs.dim(), rhs_dim: rhs.dim(), witness: extra.into_iter().next() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MnClass {
    pub is_closed: bool,
    pub is_exact: bool,
    /// `η` with `d_{αθ} η = form`, when exact.
    pub primitive: Option<Vec<Scalar>>,
    /// Coordinates of the class against the representatives reported by
    /// [`morse_novikov`] in this degree, when closed.
    pub class: Option<Vec<Scalar>>,
}

/// Closedness and exactness of a `k`-form (real basis coordinates) for `d_{αθ}`.
pub fn mn_class(model: &Model, w: &Weight, k: usize, form: &[Scalar]) -> Result<MnClass> {
    let alg = model.algebra();
    if k > model.dim || form.len() != alg.dim(k) {
        return Err(Error::Dimension(format!("a {k}-form has {} coordinates, got {}", alg.dim(k), form.len())));
    }
    let d = mn_operators(model, w);
    let is_closed = d[k].mul_vec(form).iter().all(Scalar::is_zero);
    let primitive = if k == 0 { None } else { d[k - 1].solve(form) };
    let primitive = if k == 0 && form.iter().all(Scalar::is_zero) { Some(vec![]) } else { primitive };
    let class = if is_closed {
        let reps = &morse_novikov(model, w)?.entries[k].representatives;
        let dim_k = alg.dim(k);
        let mut cols: Vec<Vec<Scalar>> = reps.clone();
        if k > 0 {
            cols.extend(d[k - 1].image_subspace().basis().iter().cloned());
        }
        let sys = Matrix::from_columns(&cols, dim_k);
        let x = sys.solve(form).ok_or_else(|| Error::Convention("closed form outside cycles".into()))?;
        Some(x[..reps.len()].to_vec())
    } else {
        None
    };
    Ok(MnClass { is_closed, is_exact: primitive.is_some(), primitive, class })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Selector {
    /// Morse–Novikov `H^k`.
    Degree(usize),
    /// Dolbeault and Bott-Chern at `(p,q)`.
    Bidegree(usize, usize),
    AllDegrees,
    AllBidegrees,
    All,
}

struct ComplexPencils {
    b: BigradedModel,
    del: Vec<Pencil>,
    delbar: Vec<Pencil>,
}

fn complex_pencils(model: &Model) -> Result<ComplexPencils> {
    let b = model.bigraded()?;
    let parts = complex_parts(&b)?;
    let minus = Scalar::from_int(-1);
    let del = parts.del.iter().zip(&parts.theta10).map(|(x, t)| Pencil::affine(x, &t.scale(&minus)).unwrap()).collect();
    let delbar = parts.delbar.iter().zip(&parts.theta01).map(|(x, t)| Pencil::affine(x, &t.scale(&minus)).unwrap()).collect();
    Ok(ComplexPencils { b, del, delbar })
}

fn pblock(b: &BigradedModel, p: &Pencil, src: (usize, usize), dst: (usize, usize)) -> Pencil {
    p.select(&b.coords(dst.0, dst.1), &b.coords(src.0, src.1))
}

/// The pencils whose rank profile determines Dolbeault and Bott-Chern
/// dimensions at `(p,q)`.
fn bidegree_pencils(cp: &ComplexPencils, p: usize, q: usize) -> Vec<Pencil> {
    let b = &cp.b;
    let k = p + q;
    let mut out = vec![pblock(b, &cp.delbar[k], (p, q), (p, q + 1))];
    if q > 0 {
        out.push(pblock(b, &cp.delbar[k - 1], (p, q - 1), (p, q)));
    }
    // ker d ∩ ker d^c on Λ^{p,q} is ker ∂ ∩ ker ∂̄
    out.push(pblock(b, &cp.del[k], (p, q), (p + 1, q)).vstack(&pblock(b, &cp.delbar[k], (p, q), (p, q + 1))));
    if p > 0 && q > 0 {
        let ddbar = cp.del[k - 1].mul(&cp.delbar[k - 2]);
        out.push(pblock(b, &ddbar, (p - 1, q - 1), (p, q)));
    }
    out
}

/// Weights where a cohomology dimension selected by `sel` jumps.
pub fn exceptional_spectrum(model: &Model, sel: Selector) -> Result<ExceptionalSet> {
    let n = model.dim;
    let mut pencils = Vec::new();
    let degrees: Vec<usize> = match sel {
        Selector::Degree(k) if k > n => return Err(Error::Dimension(format!("degree {k} > {n}"))),
        Selector::Degree(k) => vec![k],
        Selector::AllDegrees | Selector::All => (0..=n).collect(),
        _ => vec![],
    };
    for &k in &degrees {
        pencils.push(mn_pencil(model, k));
        if k > 0 {
            pencils.push(mn_pencil(model, k - 1));
        }
    }
    let bidegrees: Vec<(usize, usize)> = match sel {
        Selector::Bidegree(p, q) => vec![(p, q)],
        Selector::AllBidegrees | Selector::All => {
            let m = n / 2;
            (0..=m).flat_map(|p| (0..=m).map(move |q| (p, q))).collect()
        }
        _ => vec![],
    };
    if !bidegrees.is_empty() {
        let cp = complex_pencils(model)?;
        let m = cp.b.complex_dim();
        for (p, q) in bidegrees {
            if p > m || q > m {
                return Err(Error::Dimension(format!("bidegree ({p},{q}) outside 0..={m}")));
            }
            pencils.extend(bidegree_pencils(&cp, p, q));
        }
    }
    let sets: Vec<ExceptionalSet> = pencils.iter().map(pencil_exceptional_set).collect();
    Ok(union_exceptional(&sets))
}

/// Morse–Novikov dimensions at a generic weight, read off the generic ranks.
pub fn generic_morse_novikov(model: &Model) -> Vec<usize> {
    let n = model.dim;
    let alg = model.algebra();
    let ranks: Vec<usize> = (0..=n).map(|k| mn_pencil(model, k).generic_rank()).collect();
    (0..=n).map(|k| alg.dim(k) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect()
}

/// Dolbeault dimensions `[p][q]` at a generic weight.
pub fn generic_dolbeault(model: &Model) -> Result<Vec<Vec<usize>>> {
    let cp = complex_pencils(model)?;
    let b = &cp.b;
    let m = b.complex_dim();
    let mut t = vec![vec![0; m + 1]; m + 1];
    for p in 0..=m {
        for q in 0..=m {
            let k = p + q;
            let out = pblock(b, &cp.delbar[k], (p, q), (p, q + 1)).generic_rank();
            let inc = if q > 0 { pblock(b, &cp.delbar[k - 1], (p, q - 1), (p, q)).generic_rank() } else { 0 };
            t[p][q] = b.dim_pq(p, q) - out - inc;
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::binomial;
    use crate::model::builtin;

    fn w(s: &str) -> Weight {
        Weight::new(s.parse().unwrap())
    }

    #[test]
    fn calibrated_constant() {
        assert_eq!(ddc_constant().unwrap(), &Scalar::i() * &Scalar::from_int(2));
    }

    #[test]
    fn mn_examples() {
        assert_eq!(morse_novikov(&builtin("torus2").unwrap(), &w("0")).unwrap().dims(), vec![1, 4, 6, 4, 1]);
        let hopf = builtin("hopf_surface").unwrap();
        assert_eq!(morse_novikov(&hopf, &w("1")).unwrap().dims(), vec![0; 5]);
        assert_eq!(morse_novikov(&hopf, &w("0")).unwrap().dims(), vec![1, 1, 0, 1, 1]);
    }

    #[test]
    fn representatives_are_cycles() {
        let hopf = builtin("hopf_surface").unwrap();
        let r = morse_novikov(&hopf, &w("0")).unwrap();
        let d = mn_operators(&hopf, &w("0"));
        for e in &r.entries {
            for v in &e.representatives {
                assert!(d[e.index[0]].mul_vec(v).iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn dolbeault_examples() {
        let t = dolbeault(&builtin("torus2").unwrap(), &w("0")).unwrap().table();
        for p in 0..=2 {
            for q in 0..=2 {
                assert_eq!(t[p][q], binomial(2, p) * binomial(2, q));
            }
        }
        let hopf = builtin("hopf_surface").unwrap();
        let t = dolbeault(&hopf, &w("0")).unwrap().table();
        assert_eq!(t, vec![vec![1, 1, 0], vec![0, 0, 0], vec![0, 1, 1]]);
        let t = dolbeault(&hopf, &w("7/3")).unwrap().table();
        assert!(t.iter().flatten().all(|&x| x == 0), "{t:?}");
    }

    #[test]
    fn bott_chern_examples() {
        assert_eq!(bott_chern(&builtin("torus2").unwrap(), &w("0"), 0, 0).unwrap().dim, 1);
        let hopf = builtin("hopf_surface").unwrap();
        let r = bott_chern_all(&hopf, &w("7/3")).unwrap();
        assert!(r.dims().iter().all(|&x| x == 0), "{:?}", r.dims());
    }

    #[test]
    fn ddc_examples() {
        let torus = builtin("torus2").unwrap();
        let hopf = builtin("hopf_surface").unwrap();
        for p in 0..=2 {
            for q in 0..=2 {
                assert!(ddc_lemma_check(&torus, &w("0"), p, q).unwrap().holds);
                assert!(ddc_lemma_check(&hopf, &w("7/3"), p, q).unwrap().holds);
            }
        }
    }

    #[test]
    fn mn_class_examples() {
        let torus = builtin("torus2").unwrap();
        let c = mn_class(&torus, &w("0"), 2, &torus.omega_vector()).unwrap();
        assert!(c.is_closed && !c.is_exact);
        let hopf = builtin("hopf_surface").unwrap();
        let c = mn_class(&hopf, &w("1"), 2, &hopf.omega_vector()).unwrap();
        assert!(c.is_closed && c.is_exact);
        let prim = c.primitive.unwrap();
        assert_eq!(mn_operators(&hopf, &w("1"))[1].mul_vec(&prim), hopf.omega_vector());
        let inoue = builtin("inoue_sm").unwrap();
        let c = mn_class(&inoue, &w("1"), 2, &inoue.omega_vector()).unwrap();
        assert!(c.is_closed && !c.is_exact);
    }

    #[test]
    fn spectrum_examples() {
        let torus = builtin("torus2").unwrap().with_theta(vec![1.into(), 0.into(), 0.into(), 0.into()]).unwrap();
        let s = exceptional_spectrum(&torus, Selector::Degree(0)).unwrap();
        assert_eq!(s.rational_roots, vec![Scalar::zero()]);
        assert!(s.residual_factors.is_empty());

        let hopf = builtin("hopf_surface").unwrap();
        let s = exceptional_spectrum(&hopf, Selector::AllDegrees).unwrap();
        assert!(s.contains(&Scalar::zero()));
        assert!(!s.contains(&Scalar::one()));

        let flat = builtin("kodaira_thurston").unwrap();
        let s = exceptional_spectrum(&flat, Selector::All).unwrap();
        assert!(s.rational_roots.is_empty() && s.residual_factors.is_empty());
    }

    #[test]
    fn generic_dims_match_random_weight() {
        let hopf = builtin("hopf_surface").unwrap();
        assert_eq!(generic_morse_novikov(&hopf), morse_novikov(&hopf, &w("13/7")).unwrap().dims());
        assert_eq!(generic_dolbeault(&hopf).unwrap(), dolbeault(&hopf, &w("13/7")).unwrap().table());
    }
}
