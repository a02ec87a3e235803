use std::sync::Arc;

use tiltlab::arith::{Character, CyclotomicScalar, ExactMatrix};
use tiltlab::sl2::*;
use tiltlab::standard::{dual_weyl_module, weyl_module};

type S = CyclotomicScalar;

fn basis_vector(m: &UModule, i: usize) -> Vec<S> {
    (0..m.dim()).map(|j| if i == j { S::one(m.ell()) } else { S::zero(m.ell()) }).collect()
}

#[test]
fn weyl_modules_satisfy_relations() {
    for ell in [3u32, 5, 7] {
        for n in 0..=12 {
            let d = weyl_module(ell, n).unwrap();
            assert_eq!(d.dim(), n as usize + 1);
            let r = check_relations(&d);
            assert!(r.passed(), "Δ({n}) at ℓ={ell}: {:?}", r.failures);
            assert!(check_relations(&dual_weyl_module(ell, n).unwrap()).passed());
        }
    }
    assert!(check_relations(&UModule::trivial(3)).passed());
}

#[test]
fn corrupted_divided_power_is_detected() {
    let d = weyl_module(3, 4).unwrap();
    let e = d.generator_matrix(Generator::E);
    let f = d.generator_matrix(Generator::F);
    let fd = d.generator_matrix(Generator::FDiv);
    let zero = ExactMatrix::zeros(3, 5, 5);
    let bad = UModule::from_dense(3, &d.basis_weights(), &d.k_matrix(), [&e, &f, &zero, &fd]).unwrap();
    let r = check_relations(&bad);
    assert!(!r.passed());
    assert!(r.failed_relations().iter().any(|n| n.contains("E^(l)")), "{:?}", r.failures);
}

#[test]
fn tensor_products_satisfy_relations_and_multiply_characters() {
    for ell in [3u32, 5] {
        for (a, b) in [(1, 1), (3, 1), (2, 3), (4, 4), (5, 2)] {
            let m = weyl_module(ell, a).unwrap();
            let n = dual_weyl_module(ell, b).unwrap();
            let t = tensor_module(&m, &n).unwrap();
            let r = check_relations(&t);
            assert!(r.passed(), "Δ({a})⊗∇({b}) at ℓ={ell}: {:?}", r.failures);
            assert_eq!(t.character(), &m.character() * &n.character());
        }
    }
    let t = tensor_module(&weyl_module(3, 1).unwrap(), &weyl_module(3, 1).unwrap()).unwrap();
    assert_eq!(t.character(), &Character::weyl(2) + &Character::weyl(0));
}

#[test]
fn tensor_of_tensors_satisfies_relations() {
    let ell = 3;
    let d1 = weyl_module(ell, 1).unwrap();
    let mut t = d1.clone();
    for _ in 0..4 {
        t = tensor_module(&t, &d1).unwrap();
        assert!(check_relations(&t).passed());
    }
    let tt = tensor_module(&frobenius_twist(ell, 2).unwrap(), &weyl_module(ell, 4).unwrap()).unwrap();
    assert!(check_relations(&tt).passed());
}

#[test]
fn dual_reflects_character_and_double_dual_returns() {
    let ell = 5;
    let m = tensor_module(&weyl_module(ell, 3).unwrap(), &weyl_module(ell, 2).unwrap()).unwrap();
    let md = dual_module(&m);
    assert!(check_relations(&md).passed());
    assert_eq!(md.character(), m.character().reflect());
    assert_eq!(dual_module(&UModule::trivial(ell)), UModule::trivial(ell));
}

#[test]
fn frobenius_twists() {
    assert_eq!(frobenius_twist(3, 0).unwrap(), UModule::trivial(3));
    for a in 0..5 {
        let f = frobenius_twist(5, a).unwrap();
        assert_eq!(f.dim(), a as usize + 1);
        assert!(check_relations(&f).passed());
        assert!(f.k_matrix().is_identity());
    }
    assert!(frobenius_twist(3, -1).is_err());
}

#[test]
fn submodules_and_quotients_of_delta3() {
    let ell = 3;
    let d = Arc::new(weyl_module(ell, 3).unwrap());
    let (top, _) = submodule_generated(&d, &[basis_vector(&d, 0)]);
    assert_eq!(top.dim(), 4);
    let (low, incl) = submodule_generated(&d, &[basis_vector(&d, 2)]);
    assert_eq!(low.dim(), 2);
    assert!(incl.is_homomorphism());
    assert!(check_relations(&low).passed());
    let (zero, _) = submodule_generated(&d, &[vec![S::zero(ell); 4]]);
    assert!(zero.is_zero());

    let (q, proj) = quotient_module(&d, &incl).unwrap();
    assert_eq!(q.dim(), 2);
    assert!(proj.is_homomorphism());
    assert!(proj.compose(&incl).unwrap().is_zero());
    assert!(check_relations(&q).passed());
    assert_eq!(q.character(), Character::from_weights([3, -3]));

    let (q0, _) = quotient_module(&d, &UMorphism::zero(Arc::new(UModule::zero(ell)), d.clone())).unwrap();
    assert_eq!(*q0, *d);
    let (qa, _) = quotient_module(&d, &UMorphism::identity(d.clone())).unwrap();
    assert!(qa.is_zero());
}

#[test]
fn non_stable_subspace_is_rejected() {
    let d = Arc::new(weyl_module(3, 3).unwrap());
    let sub = GradedSubspace::from_columns([(3, ExactMatrix::identity(3, 1))]);
    assert!(!sub.is_stable(&d));
    assert!(quotient_by_graded(&d, &sub).is_err());
}

#[test]
fn json_round_trip() {
    let m = tensor_module(&weyl_module(5, 2).unwrap(), &frobenius_twist(5, 1).unwrap()).unwrap();
    let j = serde_json::to_string(&m.to_json()).unwrap();
    let back = UModule::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
    assert_eq!(back, m);
    assert_eq!(back.fingerprint(), m.fingerprint());
}

#[test]
fn kernel_image_cokernel_dimensions() {
    let ell = 3;
    let d = Arc::new(weyl_module(ell, 3).unwrap());
    let (_, incl) = submodule_generated(&d, &[basis_vector(&d, 2)]);
    let (_, proj) = quotient_module(&d, &incl).unwrap();
    let (k, _) = kernel(&proj);
    let (i, _) = image(&proj);
    let (c, _) = cokernel(&incl);
    assert_eq!((k.dim(), i.dim(), c.dim()), (2, 2, 2));
}
