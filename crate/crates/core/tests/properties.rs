use proptest::prelude::*;
use twistcoh::format::{parse, serialize};
use twistcoh::jets::{
    linear_eigenvalues, monoid_member, monomials, resolvent_residual, resolvent_solve, spectrum, JetAutomorphism,
    TruncatedSeries,
};
use twistcoh::model::FIXTURES;
use twistcoh::pencil::characteristic_polynomial;
use twistcoh::twisted::{dolbeault, mn_pencil, morse_novikov};
use twistcoh::{builtin, pencil_exceptional_set, quotient_dim, Error, Matrix, Model, Scalar, Subspace, Weight};

fn rational() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=7).prop_map(|(p, q)| Scalar::from_ratio(p, q))
}

fn gaussian() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(a, b)| &a + &(&b * &Scalar::i()))
}

fn small_matrix(r: usize, c: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
        let rows = v.chunks(c).map(|ch| ch.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Matrix::from_rows(rows, c)
    })
}

fn fixture() -> impl Strategy<Value = Model> {
    proptest::sample::select(FIXTURES.to_vec()).prop_map(|n| builtin(n).unwrap())
}

/// `M − J M J` commutes with `J`; `None` when it happens to be singular.
fn j_commuting(model: &Model, m: &Matrix) -> Option<Matrix> {
    let j = &model.j;
    let g = m.sub(&j.mul(m).mul(j));
    g.inverse().map(|_| g)
}

fn euler(dims: &[usize]) -> i64 {
    dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pencil_rank_is_generic_off_the_exceptional_set(m in fixture(), a in gaussian()) {
        for k in 0..=m.dim {
            let p = mn_pencil(&m, k);
            let set = pencil_exceptional_set(&p);
            let r = p.eval(&a).rank();
            if set.contains(&a) {
                prop_assert!(r < set.generic_rank);
            } else {
                prop_assert_eq!(r, set.generic_rank);
            }
            for root in &set.rational_roots {
                prop_assert!(p.eval(root).rank() < set.generic_rank);
            }
        }
    }

    #[test]
    fn euler_characteristic_ignores_the_weight(m in fixture(), a in gaussian()) {
        let dims = morse_novikov(&m, &Weight::new(a)).unwrap().dims();
        let base = morse_novikov(&m, &Weight::untwisted()).unwrap().dims();
        prop_assert_eq!(euler(&dims), euler(&base));
    }

    #[test]
    fn dims_survive_complex_coframe_change(m in fixture(), g in small_matrix(4, 4), a in rational()) {
        let Some(g) = j_commuting(&m, &g) else { return Ok(()) };
        let m2 = m.change_coframe(&g).unwrap();
        prop_assert!(m2.validate().passed());
        let w = Weight::new(a);
        prop_assert_eq!(morse_novikov(&m, &w).unwrap().dims(), morse_novikov(&m2, &w).unwrap().dims());
        prop_assert_eq!(dolbeault(&m, &w).unwrap().table(), dolbeault(&m2, &w).unwrap().table());
        prop_assert!(m2.bigraded().unwrap().reconstructs_real_differential(&m2));
    }

    #[test]
    fn model_files_round_trip(m in fixture(), g in small_matrix(4, 4), th in proptest::collection::vec(gaussian(), 4)) {
        let m = match j_commuting(&m, &g) {
            Some(g) => m.change_coframe(&g).unwrap(),
            None => m,
        };
        let m = m.with_theta(th).unwrap();
        prop_assert_eq!(parse(&serialize(&m)).unwrap(), m);
    }

    #[test]
    fn rank_nullity_and_transpose(a in small_matrix(4, 6)) {
        let r = a.rank();
        prop_assert_eq!(r + a.kernel_basis().dim(), 6);
        prop_assert_eq!(r, a.transpose().rank());
        prop_assert_eq!(a.image_subspace().dim(), r);
    }

    #[test]
    fn subspace_dimension_formula(a in small_matrix(5, 3), b in small_matrix(5, 2)) {
        let u = a.image_subspace();
        let v = b.image_subspace();
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(s.contains_subspace(&u).unwrap());
        prop_assert!(u.contains_subspace(&i).unwrap());
        prop_assert_eq!(quotient_dim(&s, &u).unwrap(), s.dim() - u.dim());
        prop_assert_eq!(Subspace::preimage(&a, &u).dim(), 3);
    }
}

/// Distinct rationals in (0,1).
fn contracting(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::btree_set((1i64..=8, 2i64..=9).prop_filter("below 1", |(p, q)| p < q), n).prop_filter_map(
        "distinct values",
        |set| {
            let mut v: Vec<Scalar> = set.into_iter().map(|(p, q)| Scalar::from_ratio(p, q)).collect();
            v.sort_by(|a, b| a.canonical_cmp(b));
            v.dedup();
            (v.len() >= 2).then_some(v)
        },
    )
}

fn series(n: usize, d: u32) -> impl Strategy<Value = TruncatedSeries> {
    let idx: Vec<Vec<u32>> = (0..=d).flat_map(|k| monomials(n, k)).collect();
    proptest::collection::vec(-3i64..=3, idx.len()).prop_map(move |cs| {
        TruncatedSeries::from_terms(n, d, idx.iter().cloned().zip(cs.into_iter().map(Scalar::from_int))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn resolvent_solution_is_exact_and_unique(beta in contracting(2), x0 in series(2, 5), lam in rational()) {
        let d = 5;
        let t = JetAutomorphism::diagonal(&beta, d).unwrap();
        let y = resolvent_residual(&t, &lam, &x0, &TruncatedSeries::zero(2, d)).unwrap();
        match resolvent_solve(&t, &lam, &y, d) {
            Ok(x) => {
                prop_assert!(resolvent_residual(&t, &lam, &x, &y).unwrap().is_zero());
                prop_assert_eq!(x, x0);
            }
            Err(Error::Singular { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn singular_weights_are_monoid_points(beta in contracting(2), k in proptest::collection::vec(0u32..=3, 2), other in rational()) {
        let d = 6;
        let t = JetAutomorphism::diagonal(&beta, d).unwrap();
        let s = spectrum(&t, d).unwrap();
        let on = beta.iter().zip(&k).fold(Scalar::one(), |acc, (b, &e)| &acc * &b.pow(e));
        let y = TruncatedSeries::one(2, d);
        for lam in [on, other] {
            let mem = monoid_member(&lam, &s);
            prop_assert!(mem.complete);
            match resolvent_solve(&t, &lam, &y, d) {
                Err(Error::Singular { degree, witness }) => {
                    prop_assert!(mem.member);
                    let w = mem.witness.clone().unwrap();
                    prop_assert_eq!(w.iter().sum::<u32>() as usize, degree);
                    let idx = witness.unwrap();
                    let val = beta.iter().zip(&idx).fold(Scalar::one(), |acc, (b, &e)| &acc * &b.pow(e));
                    prop_assert_eq!(val, lam);
                }
                Ok(_) => {
                    let shallow = mem.witness.as_ref().map(|w| w.iter().sum::<u32>() <= d).unwrap_or(false);
                    prop_assert!(!shallow);
                }
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }

    #[test]
    fn conjugation_keeps_degree_spectra(beta in contracting(2), p in small_matrix(2, 2)) {
        if p.inverse().is_none() {
            return Ok(());
        }
        let t = JetAutomorphism::diagonal(&beta, 4).unwrap();
        let u = t.conjugate_linear(&p).unwrap();
        for d in 1..=3 {
            prop_assert_eq!(
                characteristic_polynomial(&t.degree_matrix(d)).unwrap(),
                characteristic_polynomial(&u.degree_matrix(d)).unwrap()
            );
        }
        let mut e = linear_eigenvalues(&u).unwrap().distinct();
        e.sort_by(|a, b| a.canonical_cmp(b));
        prop_assert_eq!(e, beta);
    }
}
