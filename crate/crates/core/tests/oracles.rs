use twistcoh::model::inoue_sm;
use twistcoh::twisted::{bott_chern_all, ddc_lemma_check, dolbeault, generic_dolbeault, generic_morse_novikov, mn_class, morse_novikov};
use twistcoh::{builtin, Scalar, Weight};

fn s(x: &str) -> Scalar {
    x.parse().unwrap()
}

// A nonzero character on an abelian Lie algebra kills all of its cohomology.
#[test]
fn torus_with_nontrivial_character_is_acyclic() {
    let m = builtin("torus2").unwrap().with_theta(vec![s("1"), s("0"), s("0"), s("-2")]).unwrap();
    for a in ["1", "-3/2", "1+i"] {
        assert_eq!(morse_novikov(&m, &Weight::new(s(a))).unwrap().dims(), vec![0; 5], "alpha {a}");
    }
    assert_eq!(generic_morse_novikov(&m), vec![0; 5]);
}

#[test]
fn untwisted_torus_is_kahler() {
    let m = builtin("torus2").unwrap();
    let bc = bott_chern_all(&m, &Weight::untwisted()).unwrap().table();
    assert_eq!(bc, dolbeault(&m, &Weight::untwisted()).unwrap().table());
    for p in 0..=2 {
        for q in 0..=2 {
            assert!(ddc_lemma_check(&m, &Weight::untwisted(), p, q).unwrap().holds);
        }
    }
}

#[test]
fn kodaira_thurston_untwisted_betti() {
    let m = builtin("kodaira_thurston").unwrap();
    assert_eq!(morse_novikov(&m, &Weight::untwisted()).unwrap().dims(), vec![1, 3, 4, 3, 1]);
    // theta = 0, so every weight is the untwisted one
    assert_eq!(generic_morse_novikov(&m), vec![1, 3, 4, 3, 1]);
    assert_eq!(generic_dolbeault(&m).unwrap(), dolbeault(&m, &Weight::untwisted()).unwrap().table());
}

#[test]
fn hopf_generic_dolbeault_vanishes() {
    let m = builtin("hopf_surface").unwrap();
    assert_eq!(generic_dolbeault(&m).unwrap(), vec![vec![0; 3]; 3]);
    assert_eq!(dolbeault(&m, &Weight::new(s("5/7"))).unwrap().table(), vec![vec![0; 3]; 3]);
}

#[test]
fn inoue_class_is_nonzero_for_several_rotations() {
    for c in ["0", "1/2", "2", "3/7"] {
        let m = inoue_sm(s(c));
        assert!(m.validate().passed(), "rotation {c}");
        let cl = mn_class(&m, &Weight::new(s("1")), 2, &m.omega_vector()).unwrap();
        assert!(cl.is_closed && !cl.is_exact, "rotation {c}");
    }
}
