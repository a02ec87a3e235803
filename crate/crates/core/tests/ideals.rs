use std::collections::BTreeSet;
use std::sync::Arc;

use tiltlab::ideals::{
    enumerate_tilt_ideals, generate_tilt_ideal, intersect_with_tilt, is_negligible_window, verify_bijection,
    verify_two_out_of_three, RepIdealHandle, TensorTable,
};
use tiltlab::sampling::{standard_module, Family};
use tiltlab::sl2::UModule;
use tiltlab::standard::simple_module;
use tiltlab::Workbench;

fn range(a: u32, b: u32) -> BTreeSet<u32> {
    (a..=b).collect()
}

#[test]
fn generated_ideals() {
    let wb = Workbench::with_disk_cache(3, None).unwrap();
    let table = TensorTable::new(&wb, 24).unwrap();
    assert_eq!(table.labels(3, 1), &[2, 2, 4]);
    assert_eq!(table.labels(2, 1), &[3]);
    assert_eq!(generate_tilt_ideal(&table, &[0], 12).unwrap().members, range(0, 12));
    assert_eq!(generate_tilt_ideal(&table, &[2], 12).unwrap().members, range(2, 12));
    assert_eq!(generate_tilt_ideal(&table, &[3], 12).unwrap().members, range(2, 12));
    assert!(generate_tilt_ideal(&table, &[13], 12).is_err());
}

#[test]
fn enumeration_and_primes() {
    for ell in [3u32, 5] {
        let wb = Workbench::with_disk_cache(ell, None).unwrap();
        let table = TensorTable::new(&wb, 24).unwrap();
        let ideals = enumerate_tilt_ideals(&table, 12).unwrap();
        let sets: Vec<_> = ideals.iter().map(|i| i.members.clone()).collect();
        let neg: BTreeSet<u32> = (0..=12).filter(|&n| is_negligible_window(n, ell)).collect();
        assert_eq!(sets, vec![BTreeSet::new(), neg, range(0, 12)]);
        assert!(ideals[0].is_prime_on_window(&table));
        assert!(ideals[1].is_prime_on_window(&table));
    }
}

#[test]
fn memberships() {
    let wb = Workbench::shared(3).unwrap();
    let table = TensorTable::new(&wb, 24).unwrap();
    let neg = RepIdealHandle::new(wb.clone(), generate_tilt_ideal(&table, &[2], 12).unwrap());
    let empty = RepIdealHandle::new(wb.clone(), generate_tilt_ideal(&table, &[], 12).unwrap());
    assert!(neg.contains(&wb.tilting(2)).unwrap());
    assert!(!neg.contains(&Arc::new(simple_module(3, 3).unwrap())).unwrap());
    assert!(empty.contains(&Arc::new(UModule::zero(3))).unwrap());
    assert!(!empty.contains(&Arc::new(UModule::trivial(3))).unwrap());
    assert_eq!(intersect_with_tilt(&neg).unwrap(), neg.ideal);
    assert!(neg.contains(&Arc::new(simple_module(3, 13).unwrap())).is_err());
}

#[test]
fn two_out_of_three_and_bijection() {
    let wb = Workbench::shared(3).unwrap();
    let table = TensorTable::new(&wb, 24).unwrap();
    let neg = RepIdealHandle::new(wb.clone(), generate_tilt_ideal(&table, &[2], 12).unwrap());
    let t = std::time::Instant::now();
    let r = verify_two_out_of_three(&neg, 40, 7).unwrap();
    eprintln!("{r:?} {:?}", t.elapsed());
    assert!(r.passed());
    let mut pool = Vec::new();
    for f in [Family::Simple, Family::Weyl, Family::Tilting] {
        for n in 0..=6 {
            pool.push(standard_module(&wb, f, n).unwrap());
        }
    }
    let rep = verify_bijection(&wb, 12, &pool).unwrap();
    eprintln!("{:?} {:?}", rep.failures, t.elapsed());
    assert!(rep.passed());
}
