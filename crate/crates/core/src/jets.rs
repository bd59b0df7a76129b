//! Truncated power series, jet automorphisms and the resolvent of `t − λ`.
//!
//! An automorphism `u = (S_1, …, S_n)` of `ℂ[[X_1, …, X_n]]` fixing the
//! origin acts by `t(f) = f ∘ u`. It preserves the `X`-adic filtration, and on
//! homogeneous degree `d` its leading part is a finite matrix `T_d` (the
//! `d`-th symmetric power of the linear part). `t(x) − λx = y` is solved one
//! degree at a time:
//!
//! `(T_d − λ)·x_d = y_d − [t(x_0 + … + x_{d−1})]_d`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pencil::characteristic_polynomial;
use crate::poly::Poly;
use crate::scalar::Scalar;

pub const DEFAULT_CUTOFF: u32 = 8;

pub type MultiIndex = Vec<u32>;

fn total(i: &[u32]) -> u32 {
    i.iter().sum()
}

/// All multi-indices of `n` variables and total degree `d`, lexicographically
/// descending (`X_1^d` first).
pub fn monomials(n: usize, d: u32) -> Vec<MultiIndex> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            go(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// A power series in `n` variables modulo total degree `> cutoff`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    n: usize,
    cutoff: u32,
    coeffs: BTreeMap<MultiIndex, Scalar>,
}

impl TruncatedSeries {
    pub fn zero(n: usize, cutoff: u32) -> Self {
        TruncatedSeries { n, cutoff, coeffs: BTreeMap::new() }
    }

    pub fn constant(n: usize, cutoff: u32, c: Scalar) -> Self {
        Self::monomial(n, cutoff, vec![0; n], c)
    }

    pub fn one(n: usize, cutoff: u32) -> Self {
        Self::constant(n, cutoff, Scalar::one())
    }

    /// `X_i` (0-based).
    pub fn variable(n: usize, cutoff: u32, i: usize) -> Self {
        let mut idx = vec![0; n];
        idx[i] = 1;
        Self::monomial(n, cutoff, idx, Scalar::one())
    }

    pub fn monomial(n: usize, cutoff: u32, idx: MultiIndex, c: Scalar) -> Self {
        assert_eq!(idx.len(), n);
        let mut s = Self::zero(n, cutoff);
        s.add_term(idx, &c);
        s
    }

    /// Builds from `(multi-index, coefficient)` pairs; terms beyond the cutoff are dropped.
    pub fn from_terms(n: usize, cutoff: u32, terms: impl IntoIterator<Item = (MultiIndex, Scalar)>) -> Result<Self> {
        let mut s = Self::zero(n, cutoff);
        for (idx, c) in terms {
            if idx.len() != n {
                return Err(Error::Dimension(format!("multi-index {idx:?} for {n} variables")));
            }
            s.add_term(idx, &c);
        }
        Ok(s)
    }

    fn add_term(&mut self, idx: MultiIndex, c: &Scalar) {
        if total(&idx) > self.cutoff || c.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, idx: &[u32]) -> Scalar {
        self.coeffs.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.coeffs.iter()
    }

    /// Lowest total degree with a nonzero coefficient.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| total(k)).min()
    }

    /// The same series with a (possibly smaller) cutoff.
    pub fn truncate(&self, cutoff: u32) -> Self {
        let coeffs = self.coeffs.iter().filter(|(k, _)| total(k) <= cutoff).map(|(k, v)| (k.clone(), v.clone())).collect();
        TruncatedSeries { n: self.n, cutoff, coeffs }
    }

    pub fn homogeneous(&self, d: u32) -> Self {
        let coeffs = self.coeffs.iter().filter(|(k, _)| total(k) == d).map(|(k, v)| (k.clone(), v.clone())).collect();
        TruncatedSeries { n: self.n, cutoff: self.cutoff, coeffs }
    }

    /// Coordinates of the degree-`d` part in the [`monomials`] basis.
    pub fn degree_vector(&self, d: u32) -> Vec<Scalar> {
        monomials(self.n, d).iter().map(|m| self.coeff(m)).collect()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::Dimension(format!("series in {} and {} variables", self.n, o.n)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut s = Self::zero(self.n, self.cutoff.min(o.cutoff));
        for (k, v) in self.coeffs.iter().chain(&o.coeffs) {
            s.add_term(k.clone(), v);
        }
        Ok(s)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut s = Self::zero(self.n, self.cutoff);
        for (k, v) in &self.coeffs {
            s.add_term(k.clone(), &(v * c));
        }
        s
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut s = Self::zero(self.n, self.cutoff.min(o.cutoff));
        for (a, x) in &self.coeffs {
            for (b, y) in &o.coeffs {
                let idx: MultiIndex = a.iter().zip(b).map(|(i, j)| i + j).collect();
                s.add_term(idx, &(x * y));
            }
        }
        Ok(s)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n, self.cutoff);
        for _ in 0..e {
            acc = acc.mul(self).unwrap();
        }
        acc
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O({})", self.cutoff + 1);
        }
        let mut ordered: Vec<_> = self.coeffs.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| total(a).cmp(&total(b)).then_with(|| b.cmp(a)));
        let terms: Vec<String> = ordered
            .into_iter()
            .map(|(idx, c)| {
                let mono: Vec<String> = idx
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("X{}", i + 1) } else { format!("X{}^{e}", i + 1) })
                    .collect();
                if mono.is_empty() {
                    format!("{c}")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{} + O({})", terms.join(" + "), self.cutoff + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (k, v) in &self.coeffs {
            seq.serialize_element(&(k, v.to_string()))?;
        }
        seq.end()
    }
}

/// `u = (S_1, …, S_n)` with `S_i(0) = 0` and invertible linear part.
#[derive(Clone, Debug)]
pub struct JetAutomorphism {
    subs: Vec<TruncatedSeries>,
    linear: Matrix,
}

impl JetAutomorphism {
    pub fn new(subs: Vec<TruncatedSeries>) -> Result<Self> {
        let n = subs.len();
        for (i, s) in subs.iter().enumerate() {
            if s.vars() != n {
                return Err(Error::Dimension(format!("S{} has {} variables, expected {n}", i + 1, s.vars())));
            }
            if !s.coeff(&vec![0; n]).is_zero() {
                return Err(Error::Precondition(format!("S{} has a nonzero constant term", i + 1)));
            }
        }
        let mut linear = Matrix::zeros(n, n);
        for (i, s) in subs.iter().enumerate() {
            for j in 0..n {
                let mut e = vec![0; n];
                e[j] = 1;
                linear.set(i, j, s.coeff(&e));
            }
        }
        if linear.rank() < n {
            return Err(Error::Precondition("linear part is singular".into()));
        }
        Ok(JetAutomorphism { subs, linear })
    }

    /// `S_i = Σ_j L[i][j] X_j`.
    pub fn linear(l: &Matrix, cutoff: u32) -> Result<Self> {
        let n = l.rows();
        if l.cols() != n {
            return Err(Error::Dimension(format!("linear part must be square, got {:?}", l.shape())));
        }
        let subs = (0..n)
            .map(|i| {
                TruncatedSeries::from_terms(
                    n,
                    cutoff,
                    (0..n).map(|j| {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        (e, l.get(i, j).clone())
                    }),
                )
                .unwrap()
            })
            .collect();
        Self::new(subs)
    }

    /// `S_i = β_i X_i`.
    pub fn diagonal(betas: &[Scalar], cutoff: u32) -> Result<Self> {
        Self::linear(&Matrix::diagonal(betas), cutoff)
    }

    pub fn vars(&self) -> usize {
        self.subs.len()
    }

    pub fn substitutions(&self) -> &[TruncatedSeries] {
        &self.subs
    }

    /// `L = (∂S_i/∂X_j)(0)`.
    pub fn linear_part(&self) -> &Matrix {
        &self.linear
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.vars();
        (0..n).all(|i| (0..n).all(|j| i == j || self.linear.get(i, j).is_zero()))
    }

    /// Matrix of `t` on homogeneous polynomials of degree `d`, modulo higher
    /// degree, in the [`monomials`] basis.
    pub fn degree_matrix(&self, d: u32) -> Matrix {
        let n = self.vars();
        let lin: Vec<TruncatedSeries> = self.subs.iter().map(|s| s.homogeneous(1).truncate(d)).collect();
        let basis = monomials(n, d);
        let mut m = Matrix::zeros(basis.len(), basis.len());
        for (j, idx) in basis.iter().enumerate() {
            let f = TruncatedSeries::monomial(n, d, idx.clone(), Scalar::one());
            let img = substitute_with(&f, &lin);
            for (i, v) in img.degree_vector(d).into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// `P^{-1} ∘ u ∘ P` for the linear change of variables `X ↦ P X`.
    pub fn conjugate_linear(&self, p: &Matrix) -> Result<Self> {
        let n = self.vars();
        let pinv = p.inverse().ok_or_else(|| Error::Precondition("conjugating matrix is singular".into()))?;
        let cutoff = self.subs.iter().map(|s| s.cutoff()).min().unwrap_or(DEFAULT_CUTOFF);
        let lin_p = JetAutomorphism::linear(p, cutoff)?;
        // u ∘ P : X ↦ S(P X)
        let composed: Vec<TruncatedSeries> = self.subs.iter().map(|s| substitute_with(s, &lin_p.subs)).collect();
        let subs = (0..n)
            .map(|i| {
                let mut acc = TruncatedSeries::zero(n, cutoff);
                for (j, s) in composed.iter().enumerate() {
                    acc = acc.add(&s.scale(pinv.get(i, j))).unwrap();
                }
                acc
            })
            .collect();
        Self::new(subs)
    }
}

fn substitute_with(f: &TruncatedSeries, subs: &[TruncatedSeries]) -> TruncatedSeries {
    let n = f.vars();
    let cutoff = subs.iter().map(|s| s.cutoff()).fold(f.cutoff(), u32::min);
    let max_exp = f.terms().flat_map(|(k, _)| k.iter().copied()).max().unwrap_or(0);
    let powers: Vec<Vec<TruncatedSeries>> = subs
        .iter()
        .map(|s| {
            let s = s.truncate(cutoff);
            let mut v = vec![TruncatedSeries::one(n, cutoff)];
            for e in 1..=max_exp {
                let next = v[e as usize - 1].mul(&s).unwrap();
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = TruncatedSeries::zero(n, cutoff);
    for (idx, c) in f.terms() {
        let mut term = TruncatedSeries::constant(n, cutoff, c.clone());
        for (i, &e) in idx.iter().enumerate() {
            if e > 0 {
                term = term.mul(&powers[i][e as usize]).unwrap();
            }
        }
        out = out.add(&term).unwrap();
    }
    out
}

/// `t(f) = f ∘ u`, truncated at the smaller cutoff.
pub fn substitute(f: &TruncatedSeries, t: &JetAutomorphism) -> Result<TruncatedSeries> {
    if f.vars() != t.vars() {
        return Err(Error::Dimension(format!("series in {} variables, automorphism in {}", f.vars(), t.vars())));
    }
    Ok(substitute_with(f, &t.subs))
}

/// Eigenvalues of the linear part: rational ones with multiplicity, the rest
/// as factors of the characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eigenvalues {
    /// `(eigenvalue, algebraic multiplicity)`, ascending.
    pub rational: Vec<(Scalar, usize)>,
    pub residual_factors: Vec<Poly>,
}

impl Eigenvalues {
    pub fn distinct(&self) -> Vec<Scalar> {
        self.rational.iter().map(|(v, _)| v.clone()).collect()
    }
}

pub fn linear_eigenvalues(t: &JetAutomorphism) -> Result<Eigenvalues> {
    let mut chi = characteristic_polynomial(t.linear_part())?;
    let mut rational = Vec::new();
    for r in chi.rational_roots() {
        let lin = Poly::linear(-Scalar::from_rational(r.clone()), Scalar::one());
        let mut mult = 0;
        loop {
            let (q, rem) = chi.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            chi = q;
            mult += 1;
        }
        rational.push((Scalar::from_rational(r), mult));
    }
    let residual_factors = if chi.degree().unwrap_or(0) > 0 { vec![chi.monic()] } else { Vec::new() };
    Ok(Eigenvalues { rational, residual_factors })
}

/// The products `Π α_i^{k_i}` with `Σ k_i ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumMonoid {
    pub generators: Vec<Scalar>,
    pub bound: u32,
    /// Ascending, each with the exponent vector of smallest total degree
    /// (lexicographically largest among those) reaching it.
    pub elements: Vec<(Scalar, Vec<u32>)>,
}

impl SpectrumMonoid {
    pub fn new(generators: Vec<Scalar>, bound: u32) -> Self {
        let n = generators.len();
        let mut found: BTreeMap<Scalar, Vec<u32>> = BTreeMap::new();
        for d in 0..=bound {
            for exps in monomials(n, d) {
                let v = eval_exponents(&generators, &exps);
                found.entry(v).or_insert(exps);
            }
            if n == 0 {
                break;
            }
        }
        SpectrumMonoid { generators, bound, elements: found.into_iter().collect() }
    }

    pub fn values(&self) -> Vec<Scalar> {
        self.elements.iter().map(|(v, _)| v.clone()).collect()
    }
}

fn eval_exponents(gens: &[Scalar], exps: &[u32]) -> Scalar {
    gens.iter().zip(exps).fold(Scalar::one(), |acc, (g, &e)| &acc * &g.pow(e))
}

/// The monoid generated by the distinct eigenvalues of the linear part,
/// enumerated up to total exponent `bound`.
pub fn spectrum(t: &JetAutomorphism, bound: u32) -> Result<SpectrumMonoid> {
    let eig = linear_eigenvalues(t)?;
    if !eig.residual_factors.is_empty() {
        let f: Vec<String> = eig.residual_factors.iter().map(|p| p.to_string()).collect();
        return Err(Error::Unsupported(format!("non-rational eigenvalues, characteristic factor {}", f.join(", "))));
    }
    Ok(SpectrumMonoid::new(eig.distinct(), bound))
}

/// Solves `t(x) − λ·x = y` modulo degree `> cutoff`.
pub fn resolvent_solve(t: &JetAutomorphism, lambda: &Scalar, y: &TruncatedSeries, cutoff: u32) -> Result<TruncatedSeries> {
    let n = t.vars();
    if y.vars() != n {
        return Err(Error::Dimension(format!("series in {} variables, automorphism in {n}", y.vars())));
    }
    let cutoff = cutoff.min(y.cutoff());
    let subs: Vec<TruncatedSeries> = t.subs.iter().map(|s| s.truncate(cutoff)).collect();
    let mut x = TruncatedSeries::zero(n, cutoff);
    for d in 0..=cutoff {
        // contribution of the lower-degree part already found
        let tx = substitute_with(&x, &subs);
        let rhs: Vec<Scalar> = y.degree_vector(d).iter().zip(tx.degree_vector(d)).map(|(a, b)| a - &b).collect();
        let basis = monomials(n, d);
        let td = t.degree_matrix(d);
        let sys = td.sub(&Matrix::identity(basis.len()).scale(lambda));
        if sys.rank() < basis.len() {
            let witness = t.is_diagonal().then(|| {
                let diag: Vec<Scalar> = (0..n).map(|i| t.linear.get(i, i).clone()).collect();
                basis.iter().find(|idx| eval_exponents(&diag, idx) == *lambda).cloned()
            });
            return Err(Error::Singular { degree: d as usize, witness: witness.flatten() });
        }
        let sol = sys.solve(&rhs).expect("nonsingular square system");
        for (idx, c) in basis.into_iter().zip(sol) {
            x.add_term(idx, &c);
        }
    }
    Ok(x)
}

/// `t(x) − λx − y`, zero for a correct solution.
pub fn resolvent_residual(t: &JetAutomorphism, lambda: &Scalar, x: &TruncatedSeries, y: &TruncatedSeries) -> Result<TruncatedSeries> {
    substitute(x, t)?.sub(&x.scale(lambda))?.sub(y)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    /// Exponents over the monoid's generators.
    pub witness: Option<Vec<u32>>,
    /// Whether the verdict is proven. A partial non-membership only means no
    /// product within `searched_bound` matched.
    pub complete: bool,
    /// Per-generator exponent bound of the search.
    pub searched_bound: Vec<u32>,
}

/// Roots of unity in `ℚ(i)`: order of `g`, if finite.
fn unit_order(g: &Scalar) -> Option<u32> {
    (1..=4).find(|&k| g.pow(k).is_one())
}

/// Largest `k` with `ρ^k` still on the right side of `target`, for `ρ ≠ 1`
/// (norms squared, exact).
fn exponent_cap(rho: &crate::scalar::Rational, target: &crate::scalar::Rational) -> u32 {
    use num_traits::One;
    let one = crate::scalar::Rational::one();
    let mut k = 0;
    let mut acc = one.clone();
    loop {
        let next = &acc * rho;
        let still = if *rho < one { next >= *target } else { next <= *target };
        if !still {
            return k;
        }
        acc = next;
        k += 1;
    }
}

/// Decides `λ ∈ Δ`. Complete when all generators that are not roots of unity
/// have modulus on the same side of 1; otherwise a search up to the monoid's
/// bound, flagged partial.
pub fn monoid_member(lambda: &Scalar, s: &SpectrumMonoid) -> Membership {
    let gens = &s.generators;
    let k = gens.len();
    let done = |witness: Option<Vec<u32>>, complete: bool, bound: Vec<u32>| Membership {
        member: witness.is_some(),
        witness,
        complete,
        searched_bound: bound,
    };
    if lambda.is_one() {
        return done(Some(vec![0; k]), true, vec![0; k]);
    }
    if lambda.is_zero() {
        let w = gens.iter().position(Scalar::is_zero).map(|i| {
            let mut e = vec![0; k];
            e[i] = 1;
            e
        });
        return done(w, true, vec![1; k]);
    }
    let target = lambda.norm_sqr();
    let one = Scalar::one().norm_sqr();
    let mut caps = vec![0u32; k];
    let mut shrinking = false;
    let mut growing = false;
    let mut irregular = false;
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        if let Some(ord) = unit_order(g) {
            caps[i] = ord - 1;
            continue;
        }
        let rho = g.norm_sqr();
        if rho == one {
            irregular = true;
        } else if rho < one {
            shrinking = true;
            caps[i] = exponent_cap(&rho, &target);
        } else {
            growing = true;
            caps[i] = exponent_cap(&rho, &target);
        }
    }
    let complete = !irregular && !(shrinking && growing);
    if !complete {
        for (i, g) in gens.iter().enumerate() {
            if !g.is_zero() && unit_order(g).is_none() {
                caps[i] = s.bound;
            }
        }
    }
    let mut best: Option<Vec<u32>> = None;
    let mut exps = vec![0u32; k];
    search(gens, lambda, &caps, 0, Scalar::one(), &mut exps, &mut best, complete.then_some(&target));
    done(best, complete, caps)
}

#[allow(clippy::too_many_arguments)]
fn search(
    gens: &[Scalar],
    lambda: &Scalar,
    caps: &[u32],
    i: usize,
    acc: Scalar,
    exps: &mut Vec<u32>,
    best: &mut Option<Vec<u32>>,
    prune: Option<&crate::scalar::Rational>,
) {
    if i == gens.len() {
        if acc == *lambda {
            let better = match best {
                None => true,
                Some(b) => total(exps) < total(b),
            };
            if better {
                *best = Some(exps.clone());
            }
        }
        return;
    }
    let mut cur = acc;
    for e in 0..=caps[i] {
        exps[i] = e;
        search(gens, lambda, caps, i + 1, cur.clone(), exps, best, prune);
        cur = &cur * &gens[i];
        if cur.is_zero() {
            break;
        }
        if let Some(t) = prune {
            // with every modulus on one side of 1, partial products only move away
            let n = cur.norm_sqr();
            let one = Scalar::one().norm_sqr();
            let g = gens[i].norm_sqr();
            if (g < one && n < *t) || (g > one && n > *t) {
                break;
            }
        }
    }
    exps[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn u23() -> JetAutomorphism {
        JetAutomorphism::diagonal(&[s("1/2"), s("1/3")], 4).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let t = u23();
        let x1 = TruncatedSeries::variable(2, 4, 0);
        let x2 = TruncatedSeries::variable(2, 4, 1);
        assert_eq!(substitute(&x1, &t).unwrap(), x1.scale(&s("1/2")));
        let p = x1.mul(&x2).unwrap();
        assert_eq!(substitute(&p, &t).unwrap(), p.scale(&s("1/6")));
        let one = TruncatedSeries::one(2, 4);
        assert_eq!(substitute(&one, &t).unwrap(), one);
        assert!(substitute(&TruncatedSeries::one(3, 4), &t).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        let e = linear_eigenvalues(&u23()).unwrap();
        assert_eq!(e.rational, vec![(s("1/3"), 1), (s("1/2"), 1)]);
        let id = JetAutomorphism::linear(&Matrix::identity(3), 4).unwrap();
        assert_eq!(linear_eigenvalues(&id).unwrap().rational, vec![(s("1"), 3)]);
        let jordan = Matrix::from_rows(vec![vec![s("1/2"), s("1")], vec![s("0"), s("1/2")]], 2);
        let j = JetAutomorphism::linear(&jordan, 4).unwrap();
        assert_eq!(linear_eigenvalues(&j).unwrap().rational, vec![(s("1/2"), 2)]);
        assert!(JetAutomorphism::linear(&Matrix::zeros(2, 2), 4).is_err());
    }

    #[test]
    fn spectrum_examples() {
        let v = spectrum(&u23(), 2).unwrap().values();
        let expect: Vec<Scalar> = ["1/9", "1/6", "1/4", "1/3", "1/2", "1"].iter().map(|x| s(x)).collect();
        assert_eq!(v, expect);
        let id = JetAutomorphism::linear(&Matrix::identity(2), 4).unwrap();
        assert_eq!(spectrum(&id, 5).unwrap().values(), vec![s("1")]);
        let half = JetAutomorphism::diagonal(&[s("1/2")], 4).unwrap();
        assert_eq!(spectrum(&half, 3).unwrap().values(), vec![s("1/8"), s("1/4"), s("1/2"), s("1")]);
        let rot = Matrix::from_rows(vec![vec![s("0"), s("-2")], vec![s("1"), s("0")]], 2);
        let r = JetAutomorphism::linear(&rot, 4).unwrap();
        assert!(matches!(spectrum(&r, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn resolvent_examples() {
        let t = u23();
        let y = TruncatedSeries::monomial(2, 4, vec![1, 1], s("1"));
        let x = resolvent_solve(&t, &s("1/5"), &y, 4).unwrap();
        assert_eq!(x, TruncatedSeries::monomial(2, 4, vec![1, 1], s("-30")));
        assert!(resolvent_residual(&t, &s("1/5"), &x, &y).unwrap().is_zero());
        match resolvent_solve(&t, &s("1/6"), &y, 4) {
            Err(Error::Singular { degree: 2, witness: Some(w) }) => assert_eq!(w, vec![1, 1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn resolvent_at_zero_inverts() {
        let n = 2;
        let mut s1 = TruncatedSeries::variable(n, 5, 0).scale(&s("1/2"));
        s1 = s1.add(&TruncatedSeries::monomial(n, 5, vec![0, 2], s("3"))).unwrap();
        let s2 = TruncatedSeries::variable(n, 5, 1).scale(&s("1/3")).add(&TruncatedSeries::monomial(n, 5, vec![1, 1], s("-1"))).unwrap();
        let t = JetAutomorphism::new(vec![s1, s2]).unwrap();
        let y = TruncatedSeries::from_terms(n, 5, [(vec![1, 0], s("1")), (vec![0, 3], s("2/7")), (vec![0, 0], s("5"))]).unwrap();
        let x = resolvent_solve(&t, &Scalar::zero(), &y, 5).unwrap();
        assert_eq!(substitute(&x, &t).unwrap(), y);
    }

    #[test]
    fn membership_examples() {
        let m = SpectrumMonoid::new(vec![s("1/2"), s("1/3")], 4);
        let r = monoid_member(&s("1/12"), &m);
        assert!(r.member && r.complete);
        assert_eq!(r.witness, Some(vec![2, 1]));
        let r = monoid_member(&s("1/5"), &m);
        assert!(!r.member && r.complete);
        let r = monoid_member(&s("1"), &m);
        assert_eq!(r.witness, Some(vec![0, 0]));
        // far beyond the enumeration bound, still decided
        let r = monoid_member(&s("1/1296"), &m);
        assert_eq!(r.witness, Some(vec![4, 4]));
        let mixed = SpectrumMonoid::new(vec![s("1/2"), s("3")], 3);
        let r = monoid_member(&s("3/2"), &mixed);
        assert!(r.member && !r.complete);
        assert!(!monoid_member(&s("5"), &mixed).complete);
        let neg = SpectrumMonoid::new(vec![s("-1"), s("2")], 3);
        assert_eq!(monoid_member(&s("-8"), &neg).witness, Some(vec![1, 3]));
    }

    #[test]
    fn degree_matrix_is_symmetric_power() {
        let t = u23();
        assert_eq!(t.degree_matrix(2), Matrix::diagonal(&[s("1/4"), s("1/6"), s("1/9")]));
        assert_eq!(t.degree_matrix(0), Matrix::identity(1));
    }
}
