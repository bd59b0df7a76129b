//! Finite-dimensional invariant-form models.
//!
//! A model is a real Lie-algebra cochain complex: a coframe `e_1, …, e_n`
//! whose differentials are given by structure constants, together with an
//! almost-complex structure `J` acting on 1-forms, a Lee form `θ` and a
//! Hermitian form `ω`. Cohomology computed on a model is the cohomology of
//! this finite complex; it agrees with the cohomology of the underlying
//! manifold only under Nomizu/Hattori-type hypotheses, which are not checked.

use std::fmt;

use serde::Serialize;

use crate::bigraded::BigradedModel;
use crate::error::{Error, Result};
use crate::exterior::{self, accumulate, wedge, ExteriorAlgebra, Form};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// `de_target` contains `coeff · e_i ∧ e_j` (0-based, `i < j`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StructureTerm {
    pub target: usize,
    pub i: usize,
    pub j: usize,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub name: String,
    pub dim: usize,
    /// Sorted by `(target, i, j)`, no duplicates.
    pub structure: Vec<StructureTerm>,
    /// `J e_j = Σ_i J[i][j] e_i`.
    pub j: Matrix,
    pub theta: Vec<Scalar>,
    /// `(i, j, c)` with `i < j`, sorted: `ω = Σ c · e_i ∧ e_j`.
    pub omega: Vec<(usize, usize, Scalar)>,
    pub lck: bool,
}

pub const FIXTURES: [&str; 4] = ["torus2", "hopf_surface", "kodaira_thurston", "inoue_sm"];

fn st(target: usize, i: usize, j: usize, c: Scalar) -> StructureTerm {
    StructureTerm { target: target - 1, i: i - 1, j: j - 1, coeff: c }
}

/// `J` on a 4-dimensional coframe from the pairs `(a, b)` with `J e_a = e_b`.
fn complex_pairs(n: usize, pairs: &[(usize, usize)]) -> Matrix {
    let mut j = Matrix::zeros(n, n);
    for &(a, b) in pairs {
        j.set(b - 1, a - 1, Scalar::one());
        j.set(a - 1, b - 1, Scalar::from_int(-1));
    }
    j
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

/// Built-in fixtures by name.
pub fn builtin(name: &str) -> Result<Model> {
    let one = Scalar::one;
    let m = match name {
        "torus2" => Model {
            name: name.into(),
            dim: 4,
            structure: vec![],
            j: complex_pairs(4, &[(1, 2), (3, 4)]),
            theta: ints(&[0, 0, 0, 0]),
            omega: vec![(0, 1, one()), (2, 3, one())],
            lck: true,
        },
        // u(1) ⊕ su(2), the invariant model of S¹ × S³
        "hopf_surface" => Model {
            name: name.into(),
            dim: 4,
            structure: vec![st(2, 3, 4, one()), st(3, 2, 4, -one()), st(4, 2, 3, one())],
            j: complex_pairs(4, &[(1, 2), (3, 4)]),
            theta: ints(&[-1, 0, 0, 0]),
            omega: vec![(0, 1, one()), (2, 3, one())],
            lck: true,
        },
        "kodaira_thurston" => Model {
            name: name.into(),
            dim: 4,
            structure: vec![st(4, 1, 2, one())],
            j: complex_pairs(4, &[(1, 2), (3, 4)]),
            theta: ints(&[0, 0, 0, 0]),
            omega: vec![(0, 1, one()), (2, 3, one())],
            lck: false,
        },
        "inoue_sm" => inoue_sm(Scalar::one()),
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    Ok(m)
}

/// Solvable Lie algebra of an Inoue surface of type S_M, in the coframe
/// `e_1 = dx/y`, `e_4 = dy/y`, `e_2 + i e_3 = y^{1/2} e^{-i b s} dz`
/// (with `y = e^s`) on `H × ℂ`, rescaled so the real exponent is 1.
/// `rotation` is the ratio of the argument of the complex eigenvalue of
/// `M` to the log of its real eigenvalue; for an actual lattice it is
/// irrational, the fixture uses a rational representative.
pub fn inoue_sm(rotation: Scalar) -> Model {
    let half = Scalar::from_ratio(1, 2);
    Model {
        name: "inoue_sm".into(),
        dim: 4,
        structure: vec![
            st(1, 1, 4, Scalar::one()),
            st(2, 2, 4, -half.clone()),
            st(2, 3, 4, -rotation.clone()),
            st(3, 2, 4, rotation),
            st(3, 3, 4, -half),
        ],
        j: complex_pairs(4, &[(1, 4), (2, 3)]),
        theta: ints(&[0, 0, 0, 1]),
        omega: vec![(0, 3, Scalar::one()), (1, 2, Scalar::one())],
        lck: true,
    }
    .canonical()
}

impl Model {
    pub(crate) fn canonical(mut self) -> Self {
        self.structure.sort();
        self.omega.sort();
        self
    }

    pub fn algebra(&self) -> ExteriorAlgebra {
        ExteriorAlgebra::new(self.dim)
    }

    /// `de_k` for every generator, as 2-forms.
    pub fn differential_images(&self) -> Vec<Form> {
        let mut imgs = vec![Form::new(); self.dim];
        for t in &self.structure {
            accumulate(&mut imgs[t.target], (1 << t.i) | (1 << t.j), &t.coeff);
        }
        imgs
    }

    pub fn theta_form(&self) -> Form {
        let mut f = Form::new();
        for (k, c) in self.theta.iter().enumerate() {
            accumulate(&mut f, 1 << k, c);
        }
        f
    }

    pub fn omega_form(&self) -> Form {
        let mut f = Form::new();
        for (i, j, c) in &self.omega {
            accumulate(&mut f, (1 << i) | (1 << j), c);
        }
        f
    }

    /// Coordinates of `ω` in the lexicographic basis of `Λ²`.
    pub fn omega_vector(&self) -> Vec<Scalar> {
        self.algebra().to_vec(&self.omega_form(), 2)
    }

    /// Exterior derivative matrices `Λ^k → Λ^{k+1}`.
    pub fn d_matrices(&self) -> Vec<Matrix> {
        self.algebra().derivation(&self.differential_images())
    }

    /// The same model with a different (closed) Lee form.
    pub fn with_theta(&self, theta: Vec<Scalar>) -> Result<Model> {
        if theta.len() != self.dim {
            return Err(Error::Dimension(format!("theta has {} entries, model dimension is {}", theta.len(), self.dim)));
        }
        Ok(Model { theta, ..self.clone() })
    }

    /// Rewrites the model in the coframe `f_a = Σ_k g[a][k] e_k`.
    pub fn change_coframe(&self, g: &Matrix) -> Result<Model> {
        let n = self.dim;
        if g.shape() != (n, n) {
            return Err(Error::Dimension(format!("coframe change must be {n}×{n}")));
        }
        let h = g.inverse().ok_or_else(|| Error::Precondition("coframe change is singular".into()))?;
        let alg = self.algebra();
        // e_k = Σ_a h[k][a] f_a
        let e_in_f: Vec<Form> = (0..n)
            .map(|k| {
                let mut f = Form::new();
                for a in 0..n {
                    accumulate(&mut f, 1 << a, h.get(k, a));
                }
                f
            })
            .collect();
        let to_f = alg.induced_map(&e_in_f, &alg);
        let de = self.differential_images();
        let mut structure = Vec::new();
        for a in 0..n {
            let mut df = Form::new();
            for k in 0..n {
                for (&m, c) in &de[k] {
                    accumulate(&mut df, m, &(g.get(a, k) * c));
                }
            }
            let v = to_f[2].mul_vec(&alg.to_vec(&df, 2));
            for (m, c) in alg.to_form(&v, 2) {
                let idx = exterior::indices(m);
                structure.push(StructureTerm { target: a, i: idx[0], j: idx[1], coeff: c });
            }
        }
        let theta = (0..n)
            .map(|a| (0..n).map(|k| &self.theta[k] * h.get(k, a)).sum())
            .collect();
        let w = to_f[2].mul_vec(&self.omega_vector());
        let omega = alg
            .to_form(&w, 2)
            .into_iter()
            .map(|(m, c)| {
                let idx = exterior::indices(m);
                (idx[0], idx[1], c)
            })
            .collect();
        let j = h.transpose().mul(&self.j).mul(&g.transpose());
        Ok(Model { name: self.name.clone(), dim: n, structure, j, theta, omega, lck: self.lck }.canonical())
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn bigraded(&self) -> Result<BigradedModel> {
        BigradedModel::new(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Constraint {
    #[serde(rename = "dimension is even")]
    EvenDimension,
    #[serde(rename = "J^2 = -1")]
    ComplexStructure,
    #[serde(rename = "d^2 = 0")]
    DSquared,
    #[serde(rename = "d theta = 0")]
    ClosedLeeForm,
    #[serde(rename = "d omega = theta ^ omega")]
    LckCondition,
    #[serde(rename = "integrability")]
    Integrability,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Constraint::EvenDimension => "dimension is even",
            Constraint::ComplexStructure => "J^2 = -1",
            Constraint::DSquared => "d^2 = 0",
            Constraint::ClosedLeeForm => "d theta = 0",
            Constraint::LckCondition => "d omega = theta ^ omega",
            Constraint::Integrability => "integrability",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub constraint: Constraint,
    pub status: CheckStatus,
    /// Offending generators or entries when failed; reason when skipped.
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Failed)
    }

    pub fn get(&self, c: Constraint) -> &Check {
        self.checks.iter().find(|x| x.constraint == c).expect("every constraint is reported")
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Failed).collect()
    }
}

fn check(constraint: Constraint, witnesses: Vec<String>) -> Check {
    let status = if witnesses.is_empty() { CheckStatus::Passed } else { CheckStatus::Failed };
    Check { constraint, status, witnesses }
}

fn skipped(constraint: Constraint, why: &str) -> Check {
    Check { constraint, status: CheckStatus::Skipped, witnesses: vec![why.to_string()] }
}

fn validate(m: &Model) -> ValidationReport {
    let n = m.dim;
    let alg = m.algebra();
    let d = alg.derivation(&m.differential_images());
    let mut checks = Vec::new();

    checks.push(check(
        Constraint::EvenDimension,
        if n % 2 == 0 && n > 0 { vec![] } else { vec![format!("dim = {n}")] },
    ));

    let jj = m.j.mul(&m.j).add(&Matrix::identity(n));
    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !jj.get(a, b).is_zero() {
                bad.push(format!("(J^2 + 1)[{}][{}] = {}", a + 1, b + 1, jj.get(a, b)));
            }
        }
    }
    let j_ok = bad.is_empty();
    checks.push(check(Constraint::ComplexStructure, bad));

    let witnesses: Vec<String> = (0..n)
        .filter(|&k| {
            let v = alg.to_vec(&exterior::generator(k), 1);
            !d[2].mul_vec(&d[1].mul_vec(&v)).iter().all(Scalar::is_zero)
        })
        .map(|k| format!("e{}", k + 1))
        .collect();
    checks.push(check(Constraint::DSquared, witnesses));

    let dtheta = d[1].mul_vec(&m.theta);
    let witnesses = alg
        .to_form(&dtheta, 2)
        .iter()
        .map(|(mono, c)| format!("{} on {}", c, mono_name(*mono)))
        .collect();
    checks.push(check(Constraint::ClosedLeeForm, witnesses));

    if m.lck {
        let domega = d[2].mul_vec(&m.omega_vector());
        let tw = alg.to_vec(&wedge(&m.theta_form(), &m.omega_form()), 3);
        let diff: Vec<Scalar> = domega.iter().zip(&tw).map(|(a, b)| a - b).collect();
        let witnesses = alg
            .to_form(&diff, 3)
            .iter()
            .map(|(mono, c)| format!("{} on {}", c, mono_name(*mono)))
            .collect();
        checks.push(check(Constraint::LckCondition, witnesses));
    } else {
        checks.push(skipped(Constraint::LckCondition, "model not flagged lck"));
    }

    if j_ok && n % 2 == 0 {
        checks.push(check(Constraint::Integrability, crate::bigraded::integrability_witnesses(m)));
    } else {
        checks.push(skipped(Constraint::Integrability, "requires J^2 = -1"));
    }
    ValidationReport { checks }
}

/// `e1^e3` style label of a real monomial.
pub fn mono_name(m: exterior::Mono) -> String {
    if m == 0 {
        return "1".into();
    }
    exterior::indices(m).iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("^")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate() {
        for name in FIXTURES {
            let m = builtin(name).unwrap();
            let r = m.validate();
            assert!(r.passed(), "{name}: {:?}", r.failures());
        }
        assert_eq!(builtin("hopf_surface").unwrap().validate().get(Constraint::LckCondition).status, CheckStatus::Passed);
        assert_eq!(builtin("inoue_sm").unwrap().validate().get(Constraint::LckCondition).status, CheckStatus::Passed);
        assert_eq!(builtin("kodaira_thurston").unwrap().validate().get(Constraint::LckCondition).status, CheckStatus::Skipped);
    }

    #[test]
    fn unknown_fixture() {
        assert_eq!(builtin("k3"), Err(Error::UnknownFixture("k3".into())));
    }

    #[test]
    fn hopf_domega_component() {
        let m = builtin("hopf_surface").unwrap();
        let alg = m.algebra();
        let d = m.d_matrices();
        // d(e1^e2) = -e1^e3^e4
        let v = alg.to_vec(&Form::from([(0b0011, Scalar::one())]), 2);
        let dv = alg.to_form(&d[2].mul_vec(&v), 3);
        assert_eq!(dv, Form::from([(0b1101, Scalar::from_int(-1))]));
    }

    #[test]
    fn corrupt_model_reports_d_squared() {
        // de2 = e1^e2, de1 = e2^e3: d^2 e1 = e1^e2^e3 is the nonzero one
        let mut m = builtin("torus2").unwrap();
        m.structure = vec![st(1, 2, 3, Scalar::one()), st(2, 1, 2, Scalar::one())];
        let r = m.validate();
        let c = r.get(Constraint::DSquared);
        assert_eq!(c.status, CheckStatus::Failed);
        assert_eq!(c.witnesses, vec!["e1"]);
        // de1 = e2^e4, de2 = e1^e3: d^2 e2 = e2^e4^e3 != 0
        m.structure = vec![st(1, 2, 4, Scalar::one()), st(2, 1, 3, Scalar::one())];
        assert!(m.validate().get(Constraint::DSquared).witnesses.contains(&"e2".to_string()));
    }

    #[test]
    fn broken_j_skips_integrability() {
        let mut m = builtin("torus2").unwrap();
        m.j = Matrix::identity(4);
        let r = m.validate();
        assert_eq!(r.get(Constraint::ComplexStructure).status, CheckStatus::Failed);
        assert_eq!(r.get(Constraint::Integrability).status, CheckStatus::Skipped);
    }

    #[test]
    fn coframe_change_preserves_validity() {
        let m = builtin("hopf_surface").unwrap();
        // commutes with J: a complex-linear map on (e1,e2), (e3,e4)
        let g = Matrix::from_ints(&[&[2, 1, 0, 0], &[-1, 2, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let m2 = m.change_coframe(&g).unwrap();
        assert!(m2.validate().passed(), "{:?}", m2.validate().failures());
        assert_eq!(m2.j, m.j);
    }
}
