use std::sync::Arc;

use tiltlab::complexes::is_minimal;
use tiltlab::sl2::UModule;
use tiltlab::standard::{simple_module, weyl_module};
use tiltlab::Workbench;

fn labels(wb: &Workbench, m: UModule) -> Vec<(i64, Vec<u32>)> {
    let c = wb.minimal_tilting_complex(&Arc::new(m.clone())).unwrap();
    let x = &c.complex;
    assert!(is_minimal(x));
    let ch = x.to_chain_complex();
    let h = ch.nonzero_cohomology();
    assert_eq!(h.len(), 1);
    assert_eq!(h.get(&0), Some(&m.character()));
    x.label_multisets().into_iter().collect()
}

#[test]
fn fixed_points_at_three() {
    let wb = Workbench::with_disk_cache(3, None).unwrap();
    assert_eq!(labels(&wb, weyl_module(3, 3).unwrap()), vec![(0, vec![3]), (1, vec![1])]);
    assert_eq!(labels(&wb, simple_module(3, 3).unwrap()), vec![(-1, vec![1]), (0, vec![3]), (1, vec![1])]);
    assert_eq!(labels(&wb, simple_module(3, 1).unwrap()), vec![(0, vec![1])]);
}

#[test]
fn scan_simples() {
    for ell in [3u32, 5] {
        let wb = Workbench::with_disk_cache(ell, None).unwrap();
        for n in 0..=12 {
            let t = std::time::Instant::now();
            let l = labels(&wb, simple_module(ell, n).unwrap());
            eprintln!("ell={ell} L({n}): {:?} {:?}", l, t.elapsed());
        }
        for n in 0..=8 {
            let l = labels(&wb, weyl_module(ell, n).unwrap());
            eprintln!("ell={ell} Δ({n}): {:?}", l);
            let l = labels(&wb, tiltlab::standard::dual_weyl_module(ell, n).unwrap());
            eprintln!("ell={ell} ∇({n}): {:?}", l);
        }
    }
}

#[test]
fn tensor_of_minimal_complexes() {
    use tiltlab::complexes::{minimalize, tensor_tilting_complexes};
    use tiltlab::sl2::tensor_module;
    let wb = Workbench::with_disk_cache(3, None).unwrap();
    let l3 = Arc::new(simple_module(3, 3).unwrap());
    let l1 = Arc::new(simple_module(3, 1).unwrap());
    let c3 = wb.minimal_tilting_complex(&l3).unwrap().complex;
    let c1 = wb.minimal_tilting_complex(&l1).unwrap().complex;
    let t = tensor_tilting_complexes(&wb, &c3, &c1).unwrap();
    t.check_square_zero().unwrap();
    let (m, w) = minimalize(&t, true);
    let prod = Arc::new(tensor_module(&l3, &l1).unwrap());
    let direct = wb.minimal_tilting_complex(&prod).unwrap().complex;
    assert_eq!(m.label_multisets(), direct.label_multisets());
    let (f, g) = w.unwrap().as_morphisms(&t, &m);
    for (fi, gi) in f.iter().zip(&g) {
        assert!(fi.compose(gi).unwrap().matrix.is_identity());
    }
    let tt = tensor_tilting_complexes(&wb, &c3, &c3).unwrap();
    let h = tt.to_chain_complex().nonzero_cohomology();
    assert_eq!(h.keys().copied().collect::<Vec<_>>(), vec![0]);
    assert_eq!(h[&0].dim(), 4);
}
