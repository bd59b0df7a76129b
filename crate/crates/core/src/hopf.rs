//! `H^q(M, Ω^p ⊗ L_α)` on a diagonal Hopf manifold `M = (ℂ^n∖0)/⟨t⟩`,
//! `t(z) = (β_1 z_1, …, β_n z_n)` with `0 < β_i < 1`.
//!
//! On the cover, `H^0(Ω^p)` has the monomial basis `z^I dz_J` with `I ≥ 0`
//! and `H^{n−1}(Ω^p)` the Laurent monomials `z^I dz_J` with `I ≤ −1`; all
//! other degrees vanish (`n ≥ 2`). Pullback by `t` is diagonal with
//! eigenvalue `β^I·β_J`, so `t − α` has kernel and cokernel of the same
//! finite dimension on each slot, and the long exact sequence
//!
//! `… → H^{q−1}(M̃) → H^{q−1}(M̃) → H^q(M, Ω^p⊗L_α) → H^q(M̃) → H^q(M̃) → …`
//!
//! gives `dim H^q = coker_{q−1} + ker_q`. Working with formal monomials
//! rather than convergent series is an assumption, standard for diagonal
//! contractions.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jets::{monoid_member, Membership, SpectrumMonoid};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfData {
    pub n: usize,
    pub beta: Vec<Scalar>,
    pub alpha: Scalar,
}

fn real_rational(s: &Scalar, what: &str) -> Result<Rational> {
    s.as_rational().cloned().ok_or_else(|| Error::Precondition(format!("{what} = {s} is not a real rational")))
}

impl HopfData {
    pub fn new(beta: Vec<Scalar>, alpha: Scalar) -> Result<Self> {
        let n = beta.len();
        if n < 2 {
            return Err(Error::Precondition(format!("need n >= 2 contraction eigenvalues, got {n}")));
        }
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        for (i, b) in beta.iter().enumerate() {
            let r = real_rational(b, &format!("beta{}", i + 1))?;
            if r <= zero || r >= one {
                return Err(Error::Precondition(format!("beta{} = {b} is not in (0,1)", i + 1)));
            }
        }
        if real_rational(&alpha, "alpha")? <= zero {
            return Err(Error::Precondition(format!("alpha = {alpha} must be positive")));
        }
        Ok(HopfData { n, beta, alpha })
    }

    pub fn with_alpha(&self, alpha: Scalar) -> Result<Self> {
        HopfData::new(self.beta.clone(), alpha)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    /// `I ≥ 0`, sections of the cover.
    Regular,
    /// `I ≤ −1`, the top nonvanishing degree `H^{n−1}` of the cover.
    Laurent,
}

/// `z^I dz_J`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MonomialForm {
    pub exponents: Vec<i64>,
    /// 0-based, increasing.
    pub forms: Vec<usize>,
    pub slot: Slot,
}

impl MonomialForm {
    pub fn eigenvalue(&self, beta: &[Scalar]) -> Scalar {
        let mut v = Scalar::one();
        for (b, &e) in beta.iter().zip(&self.exponents) {
            v = &v * &b.powi(e);
        }
        for &j in &self.forms {
            v = &v * &beta[j];
        }
        v
    }
}

impl fmt::Display for MonomialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z: Vec<String> = self.exponents.iter().enumerate().map(|(i, e)| format!("z{}^{e}", i + 1)).collect();
        let dz: Vec<String> = self.forms.iter().map(|j| format!("dz{}", j + 1)).collect();
        write!(f, "{}", z.join("*"))?;
        if !dz.is_empty() {
            write!(f, " {}", dz.join("^"))?;
        }
        Ok(())
    }
}

fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == p)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Largest `k` with `b^k ≥ target` (for `b < 1`).
fn cap_below(b: &Rational, target: &Rational) -> i64 {
    let mut k = 0;
    let mut acc = Rational::from_integer(1.into());
    while &acc * b >= *target {
        acc = &acc * b;
        k += 1;
    }
    k
}

/// Monomial forms of bidegree `(p, ·)` in `slot` whose eigenvalue is exactly `α`.
/// The search box is bounded by `β_i^{|K_i|}` against `α`, so it is complete.
pub fn eigenspace(h: &HopfData, p: usize, slot: Slot) -> Vec<MonomialForm> {
    let n = h.n;
    if p > n {
        return Vec::new();
    }
    let beta: Vec<Rational> = h.beta.iter().map(|b| b.as_rational().unwrap().clone()).collect();
    let alpha = h.alpha.as_rational().unwrap().clone();
    let one = Rational::from_integer(1.into());
    // K = I + 1_J is the total exponent; β^K = α.
    // Regular: K_i ≥ [i∈J], needs α ≤ 1. Laurent: K_i ≤ [i∈J] − 1, needs α ≥ 1.
    let (target, sign) = match slot {
        Slot::Regular if alpha <= one => (alpha.clone(), 1i64),
        Slot::Laurent if alpha >= one => (&one / &alpha, -1i64),
        _ => return Vec::new(),
    };
    let caps: Vec<i64> = beta.iter().map(|b| cap_below(b, &target)).collect();
    let mut out = Vec::new();
    for j in subsets(n, p) {
        let in_j: Vec<bool> = (0..n).map(|i| j.contains(&i)).collect();
        // magnitude of K_i, at least 1 where the slot forces it
        let lows: Vec<i64> = (0..n)
            .map(|i| match slot {
                Slot::Regular => in_j[i] as i64,
                Slot::Laurent => 1 - in_j[i] as i64,
            })
            .collect();
        let mut mags = lows.clone();
        enumerate(&beta, &target, &caps, &lows, 0, one.clone(), &mut mags, &mut |mags| {
            let exponents = (0..n).map(|i| sign * mags[i] - in_j[i] as i64).collect();
            out.push(MonomialForm { exponents, forms: j.clone(), slot });
        });
    }
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    beta: &[Rational],
    target: &Rational,
    caps: &[i64],
    lows: &[i64],
    i: usize,
    acc: Rational,
    mags: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    if i == beta.len() {
        if acc == *target {
            emit(mags);
        }
        return;
    }
    let mut cur = acc;
    for _ in 0..lows[i] {
        cur = &cur * &beta[i];
    }
    for k in lows[i]..=caps[i].max(lows[i]) {
        if cur < *target {
            break;
        }
        mags[i] = k;
        enumerate(beta, target, caps, lows, i + 1, cur.clone(), mags, emit);
        cur = &cur * &beta[i];
    }
    mags[i] = lows[i];
}

/// `dim H^q(M, Ω^p ⊗ L_α)` for `q = 0..=n`.
pub fn dolbeault_dims(h: &HopfData, p: usize) -> Vec<usize> {
    let n = h.n;
    let m0 = eigenspace(h, p, Slot::Regular).len();
    let m1 = eigenspace(h, p, Slot::Laurent).len();
    // (cover degree, multiplicity); kernel and cokernel of t − α coincide per slot
    let slots = [(0, m0), (n - 1, m1)];
    (0..=n)
        .map(|q| {
            slots.iter().map(|&(c, m)| if q == c || q == c + 1 { m } else { 0 }).sum()
        })
        .collect()
}

/// `[p][q]` table of all Dolbeault dimensions.
pub fn dolbeault_table(h: &HopfData) -> Vec<Vec<usize>> {
    (0..=h.n).map(|p| dolbeault_dims(h, p)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub alpha: Scalar,
    pub dims: Vec<Vec<usize>>,
    pub all_zero: bool,
    /// `α ∈ Δ(β)`.
    pub in_monoid: Membership,
    /// `α^{-1} ∈ Δ(β)`.
    pub in_inverse_monoid: Membership,
    /// Nonzero dimensions exactly when `α ∈ Δ ∪ Δ^{-1}`.
    pub consistent: bool,
    /// Nonzero dimensions only when `α ∈ Δ`.
    pub support_in_monoid: bool,
}

/// Dimensions and monoid membership over a grid of weights.
pub fn vanishing_scan(beta: &[Scalar], grid: &[Scalar], bound: u32) -> Result<Vec<ScanRow>> {
    let monoid = SpectrumMonoid::new(beta.to_vec(), bound);
    grid.iter()
        .map(|a| {
            let h = HopfData::new(beta.to_vec(), a.clone())?;
            let dims = dolbeault_table(&h);
            let all_zero = dims.iter().flatten().all(|&d| d == 0);
            let in_monoid = monoid_member(a, &monoid);
            let in_inverse_monoid = monoid_member(&a.inv().unwrap(), &monoid);
            debug_assert!(in_monoid.complete && in_inverse_monoid.complete);
            let consistent = !all_zero == (in_monoid.member || in_inverse_monoid.member);
            let support_in_monoid = all_zero || in_monoid.member;
            Ok(ScanRow { alpha: a.clone(), dims, all_zero, in_monoid, in_inverse_monoid, consistent, support_in_monoid })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn h(alpha: &str) -> HopfData {
        HopfData::new(vec![s("1/2"), s("1/3")], s(alpha)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(HopfData::new(vec![s("1/2")], s("1")).is_err());
        assert!(HopfData::new(vec![s("1/2"), s("1")], s("1")).is_err());
        assert!(HopfData::new(vec![s("1/2"), s("1/3")], s("0")).is_err());
        assert!(HopfData::new(vec![s("1/2"), &s("1/3") * &Scalar::i()], s("1")).is_err());
    }

    #[test]
    fn eigenspace_examples() {
        let e = eigenspace(&h("1"), 0, Slot::Regular);
        assert_eq!(e, vec![MonomialForm { exponents: vec![0, 0], forms: vec![], slot: Slot::Regular }]);
        assert!(eigenspace(&h("1"), 0, Slot::Laurent).is_empty());
        let e = eigenspace(&h("1"), 2, Slot::Laurent);
        assert_eq!(e, vec![MonomialForm { exponents: vec![-1, -1], forms: vec![0, 1], slot: Slot::Laurent }]);
        for f in eigenspace(&h("1/12"), 1, Slot::Regular) {
            assert_eq!(f.eigenvalue(&h("1").beta), s("1/12"));
        }
    }

    #[test]
    fn dims_examples() {
        assert_eq!(dolbeault_dims(&h("1"), 0), vec![1, 1, 0]);
        assert_eq!(dolbeault_dims(&h("1"), 2), vec![0, 1, 1]);
        for p in 0..=2 {
            assert_eq!(dolbeault_dims(&h("1/5"), p), vec![0, 0, 0]);
        }
    }

    #[test]
    fn serre_symmetry_at_trivial_weight() {
        let t = dolbeault_table(&h("1"));
        for p in 0..=2 {
            for q in 0..=2 {
                assert_eq!(t[p][q], t[2 - p][2 - q]);
            }
        }
    }

    #[test]
    fn higher_dimension_splice() {
        let h3 = HopfData::new(vec![s("1/2"), s("1/3"), s("1/5")], s("1")).unwrap();
        assert_eq!(dolbeault_dims(&h3, 0), vec![1, 1, 0, 0]);
        assert_eq!(dolbeault_dims(&h3, 3), vec![0, 0, 1, 1]);
    }

    #[test]
    fn scan_examples() {
        let beta = [s("1/2"), s("1/3")];
        let grid: Vec<Scalar> = ["1/2", "1/5", "1/6", "1/7", "1/12"].iter().map(|x| s(x)).collect();
        let rows = vanishing_scan(&beta, &grid, 8).unwrap();
        let nonzero: Vec<Scalar> = rows.iter().filter(|r| !r.all_zero).map(|r| r.alpha.clone()).collect();
        assert_eq!(nonzero, vec![s("1/2"), s("1/6"), s("1/12")]);
        assert!(rows.iter().all(|r| r.consistent && r.support_in_monoid));
        let one = vanishing_scan(&beta, &[s("1")], 8).unwrap();
        assert!(!one[0].all_zero);
        // weights above 1 pick up the Laurent slot
        let two = vanishing_scan(&beta, &[s("2")], 8).unwrap();
        assert!(!two[0].all_zero && two[0].consistent && !two[0].support_in_monoid);
    }
}
