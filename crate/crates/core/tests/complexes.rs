use std::sync::Arc;

use proptest::prelude::*;
use tiltlab::arith::{CyclotomicScalar, ExactMatrix};
use tiltlab::complexes::{
    is_minimal, minimalize, tensor_complexes, total_complex, BlockComplex, ChainComplex, DoubleComplex, Part,
};
use tiltlab::sl2::UMorphism;
use tiltlab::standard::{find_isomorphism, simple_module, weyl_module};
use tiltlab::Workbench;

fn wb3() -> Arc<Workbench> {
    Workbench::shared(3).unwrap()
}

/// Σ c_k φ_k over the basis of Hom(T(a), T(b)).
fn combination(wb: &Workbench, a: u32, b: u32, coeffs: &[i64]) -> Option<UMorphism> {
    let basis = wb.tilting_hom(a, b);
    let mut out = UMorphism::zero(wb.tilting(a), wb.tilting(b));
    for (phi, &c) in basis.iter().zip(coeffs.iter().cycle()) {
        out = out.add(&phi.scale(&CyclotomicScalar::from_int(wb.ell(), c)));
    }
    (!basis.is_empty()).then_some(out)
}

/// [T(a) → T(b)] in degrees 0, 1.
fn two_term(wb: &Workbench, a: u32, b: u32, phi: &UMorphism) -> BlockComplex {
    BlockComplex {
        ell: wb.ell(),
        start: 0,
        terms: vec![vec![Part::tilting(wb, a)], vec![Part::tilting(wb, b)]],
        diffs: vec![vec![vec![Some(phi.matrix.clone())]]],
    }
}

fn identity_complex(wb: &Workbench, n: u32, start: i64) -> BlockComplex {
    let d = wb.tilting(n).dim();
    BlockComplex {
        ell: wb.ell(),
        start,
        terms: vec![vec![Part::tilting(wb, n)], vec![Part::tilting(wb, n)]],
        diffs: vec![vec![vec![Some(ExactMatrix::identity(wb.ell(), d))]]],
    }
}

#[test]
fn cohomology_of_concentrated_and_contractible() {
    let m = Arc::new(weyl_module(3, 4).unwrap());
    let x = ChainComplex::concentrated(m.clone(), 0);
    let h = x.cohomology();
    assert_eq!(h.len(), 1);
    assert_eq!(h[&0].character(), m.character());

    let id = ChainComplex::new(3, 0, vec![m.clone(), m.clone()], vec![UMorphism::identity(m.clone())]).unwrap();
    assert!(id.nonzero_cohomology().is_empty());

    let wb = wb3();
    let (y, _) = minimalize(&identity_complex(&wb, 4, 0), false);
    assert!(y.terms.is_empty());
}

#[test]
fn surjection_onto_the_head_of_t3() {
    let wb = wb3();
    let phi = wb.tilting_hom(3, 1).iter().find(|f| f.is_surjective()).cloned().expect("T(3) ↠ T(1)");
    let x = two_term(&wb, 3, 1, &phi).to_chain_complex();
    let h = x.cohomology();
    assert!(h[&1].is_zero());
    let delta = Arc::new(weyl_module(3, 3).unwrap());
    assert!(find_isomorphism(&h[&0], &delta).is_some());
}

#[test]
fn minimalize_is_idempotent_and_keeps_minimal_complexes() {
    let wb = wb3();
    for n in [3, 4, 6, 7] {
        let c = wb.minimal_tilting_complex(&Arc::new(simple_module(3, n).unwrap())).unwrap();
        assert!(is_minimal(&c.complex));
        let (again, _) = minimalize(&c.complex, false);
        assert_eq!(again.label_multisets(), c.complex.label_multisets());
        assert_eq!(again.to_json(), c.complex.to_json());
    }
}

#[test]
fn witnesses_are_chain_maps_with_fg_identity() {
    let wb = wb3();
    let c = wb.minimal_tilting_complex(&Arc::new(simple_module(3, 3).unwrap())).unwrap();
    let x = c.complex.direct_sum(&identity_complex(&wb, 3, 0)).direct_sum(&identity_complex(&wb, 1, -1));
    assert!(!is_minimal(&x));
    let (y, w) = minimalize(&x, true);
    assert_eq!(y.label_multisets(), c.complex.label_multisets());
    let (f, g) = w.unwrap().as_morphisms(&x, &y);
    let (cx, cy) = (x.to_chain_complex(), y.to_chain_complex());
    let lo = y.degree_range().unwrap().0;
    for k in 0..f.len() {
        let i = lo + k as i64;
        let fg = f[k].compose(&g[k]).unwrap();
        assert_eq!(fg.matrix, ExactMatrix::identity(3, cy.term(i).dim()), "f ∘ g in degree {i}");
        assert!(f[k].is_homomorphism() && g[k].is_homomorphism());
        if k + 1 < f.len() {
            let lhs = f[k + 1].compose(&cx.differential(i)).unwrap();
            let rhs = cy.differential(i).compose(&f[k]).unwrap();
            assert_eq!(lhs.matrix, rhs.matrix, "f commutes with d in degree {i}");
            let lhs = g[k + 1].compose(&cy.differential(i)).unwrap();
            let rhs = cx.differential(i).compose(&g[k]).unwrap();
            assert_eq!(lhs.matrix, rhs.matrix, "g commutes with d in degree {i}");
        }
    }
}

#[test]
fn tensor_with_trivial_module_and_kunneth() {
    let wb = wb3();
    let c = wb.minimal_tilting_complex(&Arc::new(simple_module(3, 3).unwrap())).unwrap();
    let x = c.complex.to_chain_complex();
    let unit = ChainComplex::concentrated(Arc::new(simple_module(3, 0).unwrap()), 0);
    let xt = tensor_complexes(&x, &unit).unwrap();
    assert_eq!(xt.degree_range(), x.degree_range());
    let (lo, hi) = x.degree_range().unwrap();
    for i in lo..=hi {
        assert_eq!(xt.term(i).character(), x.term(i).character());
    }
    assert_eq!(xt.cohomology_characters(), x.cohomology_characters());

    let xx = tensor_complexes(&x, &x).unwrap();
    xx.check_square_zero().unwrap();
    let h = xx.nonzero_cohomology();
    assert_eq!(h.keys().copied().collect::<Vec<_>>(), vec![0]);
    assert_eq!(h[&0].dim(), 4);
}

#[test]
fn total_complex_examples() {
    let m = Arc::new(weyl_module(3, 2).unwrap());
    let n = Arc::new(simple_module(3, 2).unwrap());
    let head = tiltlab::standard::hom_space(&m, &n).into_iter().next().unwrap();

    // 1 × 2 grid: the row itself
    let row = DoubleComplex {
        ell: 3,
        origin: (0, 0),
        modules: vec![vec![m.clone(), n.clone()]],
        horizontal: vec![],
        vertical: vec![vec![head.clone()]],
    };
    let t = total_complex(&row).unwrap();
    let direct = ChainComplex::new(3, 0, vec![m.clone(), n.clone()], vec![head.clone()]).unwrap();
    assert_eq!(t.cohomology_characters(), direct.cohomology_characters());

    // 2 × 2 grid of identities is contractible
    let id = UMorphism::identity(m.clone());
    let square = DoubleComplex {
        ell: 3,
        origin: (0, 0),
        modules: vec![vec![m.clone(), m.clone()], vec![m.clone(), m.clone()]],
        horizontal: vec![vec![id.clone(), id.clone()]],
        vertical: vec![vec![id.clone()], vec![id.clone()]],
    };
    let t = total_complex(&square).unwrap();
    t.check_square_zero().unwrap();
    assert!(t.nonzero_cohomology().is_empty());

    let mut broken = square.clone();
    broken.vertical[1][0] = UMorphism::zero(m.clone(), m.clone());
    let err = total_complex(&broken).unwrap_err().to_string();
    assert!(err.contains("square at bidegree (0, 0)"), "{err}");
}

#[test]
fn json_round_trip() {
    let wb = wb3();
    let c = wb.minimal_tilting_complex(&Arc::new(simple_module(3, 6).unwrap())).unwrap();
    let j = c.complex.to_json();
    let text = serde_json::to_string(&j).unwrap();
    let back = BlockComplex::from_json(&wb, &serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.to_json(), j);
    assert_eq!(back.to_chain_complex().cohomology_characters(), c.complex.to_chain_complex().cohomology_characters());
}

fn assert_same_cohomology(x: &BlockComplex) {
    let (y, _) = minimalize(x, false);
    assert!(is_minimal(&y));
    let (hx, hy) = (x.to_chain_complex().nonzero_cohomology(), y.to_chain_complex().nonzero_cohomology());
    assert_eq!(hx, hy);
    assert_eq!(x.to_chain_complex().euler_character(), y.to_chain_complex().euler_character());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn minimalize_preserves_cohomology_of_cones(
        a in 0u32..7, b in 0u32..7, c in 0u32..7,
        coeffs in proptest::collection::vec(-2i64..=2, 1..4),
    ) {
        let wb = wb3();
        let mut x = BlockComplex::zero(3);
        if let Some(phi) = combination(&wb, a, b, &coeffs) {
            x = two_term(&wb, a, b, &phi);
        }
        x = x.direct_sum(&identity_complex(&wb, c, 0));
        x = x.direct_sum(&identity_complex(&wb, c, -1));
        assert_same_cohomology(&x);
    }

    #[test]
    fn tensor_of_two_term_complexes_squares_to_zero(
        a in 0u32..5, b in 0u32..5, c in 0u32..5, d in 0u32..5,
        s in proptest::collection::vec(-2i64..=2, 1..3),
        t in proptest::collection::vec(-2i64..=2, 1..3),
    ) {
        let wb = wb3();
        let (Some(f), Some(g)) = (combination(&wb, a, b, &s), combination(&wb, c, d, &t)) else {
            return Ok(());
        };
        let x = two_term(&wb, a, b, &f).to_chain_complex();
        let y = two_term(&wb, c, d, &g).to_chain_complex();
        let xy = tensor_complexes(&x, &y).unwrap();
        xy.check_square_zero().unwrap();
        prop_assert_eq!(xy.euler_character(), &x.euler_character() * &y.euler_character());
    }
}
