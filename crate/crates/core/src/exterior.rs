//! Exterior algebras on finitely many generators with monomial bases.

use std::collections::{BTreeMap, HashMap};

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A wedge monomial `g_{a_1} ∧ ⋯ ∧ g_{a_k}` with `a_1 < ⋯ < a_k`, as a bitmask.
pub type Mono = u32;

/// Sparse form: monomial → coefficient.
pub type Form = BTreeMap<Mono, Scalar>;

pub fn degree(m: Mono) -> usize {
    m.count_ones() as usize
}

pub fn indices(m: Mono) -> Vec<usize> {
    (0..32).filter(|&i| m >> i & 1 == 1).collect()
}

/// `a ∧ b` as `(monomial, sign)`, or `None` if they share a generator.
pub fn wedge_mono(a: Mono, b: Mono) -> Option<(Mono, i64)> {
    if a & b != 0 {
        return None;
    }
    let swaps: u32 = indices(b).iter().map(|&j| (a >> (j + 1)).count_ones()).sum();
    Some((a | b, if swaps % 2 == 0 { 1 } else { -1 }))
}

pub fn wedge(x: &Form, y: &Form) -> Form {
    let mut out = Form::new();
    for (&a, ca) in x {
        for (&b, cb) in y {
            if let Some((m, s)) = wedge_mono(a, b) {
                let c = &(ca * cb) * &Scalar::from_int(s);
                accumulate(&mut out, m, &c);
            }
        }
    }
    out
}

pub fn accumulate(f: &mut Form, m: Mono, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let e = f.entry(m).or_default();
    *e += c;
    if e.is_zero() {
        f.remove(&m);
    }
}

pub fn generator(a: usize) -> Form {
    Form::from([(1 << a, Scalar::one())])
}

/// Graded monomial bases of `Λ(g_0, …, g_{n−1})`.
#[derive(Clone, Debug)]
pub struct ExteriorAlgebra {
    n: usize,
    degrees: Vec<Vec<Mono>>,
    position: HashMap<Mono, usize>,
}

impl ExteriorAlgebra {
    /// Basis ordered lexicographically by index tuple within each degree.
    pub fn new(n: usize) -> Self {
        Self::with_order(n, |_| 0u8)
    }

    /// Basis ordered by `key` first, then lexicographically.
    pub fn with_order<K: Ord>(n: usize, key: impl Fn(Mono) -> K) -> Self {
        assert!(n < 32, "at most 31 generators");
        let mut degrees = vec![Vec::new(); n + 1];
        for m in 0..(1u32 << n) {
            degrees[degree(m)].push(m);
        }
        let mut position = HashMap::new();
        for basis in degrees.iter_mut() {
            basis.sort_by(|&a, &b| key(a).cmp(&key(b)).then_with(|| indices(a).cmp(&indices(b))));
            for (i, &m) in basis.iter().enumerate() {
                position.insert(m, i);
            }
        }
        ExteriorAlgebra { n, degrees, position }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn dim(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, Vec::len)
    }

    pub fn basis(&self, k: usize) -> &[Mono] {
        self.degrees.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, m: Mono) -> usize {
        self.position[&m]
    }

    pub fn to_vec(&self, f: &Form, k: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim(k)];
        for (&m, c) in f {
            assert_eq!(degree(m), k, "form is not homogeneous of degree {k}");
            v[self.position(m)] = c.clone();
        }
        v
    }

    pub fn to_form(&self, v: &[Scalar], k: usize) -> Form {
        self.basis(k)
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&m, c)| (m, c.clone()))
            .collect()
    }

    fn operator(&self, shift: usize, image: impl Fn(Mono) -> Form) -> Vec<Matrix> {
        (0..=self.n)
            .map(|k| {
                let mut m = Matrix::zeros(self.dim(k + shift), self.dim(k));
                for (j, &mono) in self.basis(k).iter().enumerate() {
                    for (t, c) in image(mono) {
                        m.set(self.position(t), j, c);
                    }
                }
                m
            })
            .collect()
    }

    /// Applies the derivation with the given values on generators to a form.
    pub fn apply_derivation(&self, gen_images: &[Form], f: &Form) -> Form {
        let mut out = Form::new();
        for (&mono, c) in f {
            for (t, v) in self.derivation_on_mono(gen_images, mono) {
                accumulate(&mut out, t, &(c * &v));
            }
        }
        out
    }

    fn derivation_on_mono(&self, gen_images: &[Form], mono: Mono) -> Form {
        let idx = indices(mono);
        let mut out = Form::new();
        for (j, &a) in idx.iter().enumerate() {
            let prefix: Mono = idx[..j].iter().map(|&i| 1 << i).sum();
            let suffix: Mono = idx[j + 1..].iter().map(|&i| 1 << i).sum();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            for (&m, c) in &gen_images[a] {
                let Some((m1, s1)) = wedge_mono(prefix, m) else { continue };
                let Some((m2, s2)) = wedge_mono(m1, suffix) else { continue };
                accumulate(&mut out, m2, &(c * &Scalar::from_int(sign * s1 * s2)));
            }
        }
        out
    }

    /// Matrices `Λ^k → Λ^{k+1}` of the odd derivation determined by 2-form
    /// images of the generators.
    pub fn derivation(&self, gen_images: &[Form]) -> Vec<Matrix> {
        assert_eq!(gen_images.len(), self.n);
        self.operator(1, |mono| self.derivation_on_mono(gen_images, mono))
    }

    /// Left multiplication by a homogeneous form of degree `deg`.
    pub fn wedge_left(&self, f: &Form, deg: usize) -> Vec<Matrix> {
        self.operator(deg, |mono| wedge(f, &Form::from([(mono, Scalar::one())])))
    }

    /// Degree-preserving map induced by sending generator `a` to the 1-form
    /// `images[a]` of `target` (which must have the same number of generators).
    pub fn induced_map(&self, images: &[Form], target: &ExteriorAlgebra) -> Vec<Matrix> {
        assert_eq!(images.len(), self.n);
        (0..=self.n)
            .map(|k| {
                let mut m = Matrix::zeros(target.dim(k), self.dim(k));
                for (j, &mono) in self.basis(k).iter().enumerate() {
                    let mut acc = Form::from([(0, Scalar::one())]);
                    for a in indices(mono) {
                        acc = wedge(&acc, &images[a]);
                    }
                    for (t, c) in acc {
                        m.set(target.position(t), j, c);
                    }
                }
                m
            })
            .collect()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        // e1 ∧ e0 = −e0 ∧ e1
        assert_eq!(wedge_mono(0b10, 0b01), Some((0b11, -1)));
        assert_eq!(wedge_mono(0b01, 0b10), Some((0b11, 1)));
        assert_eq!(wedge_mono(0b01, 0b01), None);
        // e2 ∧ (e0 ∧ e1) = e0 ∧ e1 ∧ e2 (two transpositions)
        assert_eq!(wedge_mono(0b100, 0b011), Some((0b111, 1)));
    }

    #[test]
    fn basis_counts() {
        let a = ExteriorAlgebra::new(4);
        for k in 0..=4 {
            assert_eq!(a.dim(k), binomial(4, k));
        }
        assert_eq!(a.basis(2), &[0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
    }

    #[test]
    fn derivation_squares_to_zero_on_lie_algebra() {
        // su(2)-type: de0 = e1∧e2, de1 = e2∧e0, de2 = e0∧e1
        let a = ExteriorAlgebra::new(3);
        let mut imgs = vec![Form::new(); 3];
        imgs[0].insert(0b110, Scalar::one());
        imgs[1].insert(0b101, Scalar::from_int(-1));
        imgs[2].insert(0b011, Scalar::one());
        let d = a.derivation(&imgs);
        for k in 0..2 {
            assert!(d[k + 1].mul(&d[k]).is_zero());
        }
    }
}
