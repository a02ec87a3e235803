use std::collections::BTreeSet;

use tiltlab::alcove::{
    build_root_system, dot_orbit, is_negligible_weight, is_p_regular, separating_hyperplane_count,
    steinberg_decompose, steinberg_twist_example, RootType,
};

#[test]
fn classical_counts_and_coxeter_numbers() {
    let cases = [
        ("A1", 1, 2),
        ("A2", 3, 3),
        ("A4", 10, 5),
        ("B2", 4, 4),
        ("B3", 9, 6),
        ("C3", 9, 6),
        ("D4", 12, 6),
        ("D5", 20, 8),
        ("E6", 36, 12),
        ("E7", 63, 18),
        ("E8", 120, 30),
        ("F4", 24, 12),
        ("G2", 6, 6),
    ];
    for (t, npos, h) in cases {
        let rs = build_root_system(t.parse().unwrap());
        assert_eq!(rs.positive_roots.len(), npos, "{t}");
        assert_eq!(rs.positive_coroots.len(), npos, "{t}");
        assert_eq!(rs.coxeter_number(), h, "{t}");
        let rho = rs.rho();
        for i in 0..rs.rank {
            let mut e = vec![0; rs.rank];
            e[i] = 1;
            assert_eq!(rs.pairing(&rho, &e), 1);
        }
    }
    assert!("H3".parse::<RootType>().is_err());
    assert!("E9".parse::<RootType>().is_err());
}

#[test]
fn worked_examples() {
    let a1 = build_root_system(RootType::A(1));
    let a2 = build_root_system(RootType::A(2));
    assert_eq!(separating_hyperplane_count(&a1, &[0], 3).unwrap(), 0);
    assert_eq!(separating_hyperplane_count(&a1, &[3], 3).unwrap(), 1);
    assert_eq!(separating_hyperplane_count(&a1, &[6], 3).unwrap(), 2);
    assert_eq!(separating_hyperplane_count(&a2, &[3, 3], 5).unwrap(), 1);
    assert!(!is_p_regular(&a1, &[2], 3));
    assert!(is_p_regular(&a1, &[3], 3));
    assert!(is_p_regular(&a2, &[3, 3], 5));
    assert_eq!(steinberg_decompose(&[7], 3), (vec![1], vec![2]));
    assert_eq!(steinberg_decompose(&[7, 3], 5), (vec![2, 3], vec![1, 0]));
    assert!(is_negligible_weight(&a1, &[2], 3));
    assert!(is_negligible_weight(&a2, &[2, 2], 5));
    assert!(!is_negligible_weight(&a2, &[1, 1], 5));
    let o: BTreeSet<Vec<i64>> = [0, 4, 6, 10, 12].iter().map(|&x| vec![x]).collect();
    assert_eq!(dot_orbit(&a1, &[0], 3, 14).unwrap(), o);
    let o: BTreeSet<Vec<i64>> = [2, 8, 14].iter().map(|&x| vec![x]).collect();
    assert_eq!(dot_orbit(&a1, &[2], 3, 14).unwrap(), o);
    assert_eq!(steinberg_twist_example(&a1, 3).unwrap().weight, vec![6]);
    assert_eq!(steinberg_twist_example(&a2, 5).unwrap().weight, vec![20, 20]);
    let e = steinberg_twist_example(&a1, 2).unwrap();
    assert_eq!((e.weight, e.p_regular), (vec![2], Some(true)));
}
