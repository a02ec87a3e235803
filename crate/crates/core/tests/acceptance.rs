use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tiltlab::alcove::{
    build_root_system, is_negligible_weight, is_p_regular, separating_hyperplane_count, steinberg_decompose,
    steinberg_twist_example, RootType,
};
use tiltlab::complexes::tensor_complexes;
use tiltlab::ideals::{
    enumerate_tilt_ideals, intersect_with_tilt, verify_bijection, verify_two_out_of_three, RepIdealHandle, TensorTable,
};
use tiltlab::sampling::{standard_module, Family, NamedModule, Sampler};
use tiltlab::sl2::{direct_sum, tensor_module, UModule};
use tiltlab::standard::simple_module;
use tiltlab::Workbench;

type Outcome = Result<String, String>;
type Labels = BTreeMap<i64, Vec<u32>>;
type Char = BTreeMap<i64, i64>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

fn sub_multiset(small: &[u32], big: &[u32]) -> bool {
    let mut rest = big.to_vec();
    small.iter().all(|x| match rest.iter().position(|y| y == x) {
        Some(i) => {
            rest.swap_remove(i);
            true
        }
        None => false,
    })
}

fn at(l: &Labels, i: i64) -> Vec<u32> {
    l.get(&i).cloned().unwrap_or_default()
}

fn cat(a: &[u32], b: &[u32]) -> Vec<u32> {
    sorted(a.iter().chain(b).copied().collect())
}

fn cmin_labels(wb: &Workbench, m: &Arc<UModule>) -> Result<Labels, String> {
    Ok(wb.minimal_tilting_complex(m).map_err(|e| e.to_string())?.complex.label_multisets())
}

fn random_standard(wb: &Workbench, rng: &mut ChaCha8Rng, max_n: u32) -> NamedModule {
    let f = Family::ALL[rng.gen_range(0..4)];
    standard_module(wb, f, rng.gen_range(0..=max_n)).unwrap()
}

// characters as weight → multiplicity

fn weyl_char(n: i64) -> Char {
    (0..=n).map(|k| (n - 2 * k, 1)).collect()
}

fn add_char(a: &mut Char, b: &Char, sign: i64) {
    for (w, m) in b {
        *a.entry(*w).or_default() += sign * m;
    }
    a.retain(|_, m| *m != 0);
}

fn mul_char(a: &Char, b: &Char) -> Char {
    let mut out = Char::new();
    for (x, m) in a {
        for (y, n) in b {
            *out.entry(x + y).or_default() += m * n;
        }
    }
    out.retain(|_, m| *m != 0);
    out
}

fn module_char(m: &UModule) -> Char {
    m.spaces().iter().filter(|s| s.1 > 0).map(|&(w, d)| (w, d as i64)).collect()
}

/// ch T(n) at ℓ: χ(n) when n < ℓ − 1 or n ≡ −1 mod ℓ, else χ(n) + χ(aℓ − b − 2) for n = aℓ + b.
fn tilting_char(ell: i64, n: i64) -> Char {
    let (a, b) = (n / ell, n % ell);
    let mut c = weyl_char(n);
    if a >= 1 && b != ell - 1 {
        add_char(&mut c, &weyl_char(a * ell - b - 2), 1);
    }
    c
}

/// Labels of a tilting character, peeled from the top weight down.
fn tilting_labels(ell: i64, mut c: Char) -> Vec<u32> {
    let mut out = Vec::new();
    while let Some((&top, &m)) = c.iter().next_back() {
        assert!(top >= 0 && m > 0, "not a tilting character");
        for _ in 0..m {
            out.push(top as u32);
            add_char(&mut c, &tilting_char(ell, top), -1);
        }
    }
    sorted(out)
}

fn c1_direct_sums() -> Outcome {
    let mut total = 0;
    for ell in [3u32, 5] {
        let wb = Workbench::shared(ell).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(101 + ell as u64);
        for _ in 0..30 {
            let (m, n) = (random_standard(&wb, &mut rng, 8), random_standard(&wb, &mut rng, 8));
            let sum = direct_sum(ell, &[m.module.clone(), n.module.clone()]).module;
            let (lm, ln, ls) = (cmin_labels(&wb, &m.module)?, cmin_labels(&wb, &n.module)?, cmin_labels(&wb, &sum)?);
            let lo = lm.keys().chain(ln.keys()).chain(ls.keys()).min().copied().unwrap_or(0);
            let hi = lm.keys().chain(ln.keys()).chain(ls.keys()).max().copied().unwrap_or(0);
            for i in lo..=hi {
                ensure(at(&ls, i) == cat(&at(&lm, i), &at(&ln, i)), || {
                    format!("ℓ={ell} {} ⊕ {} degree {i}: {:?} vs {:?} ⊎ {:?}", m.name, n.name, at(&ls, i), at(&lm, i), at(&ln, i))
                })?;
            }
            total += 1;
        }
    }
    Ok(format!("{total} pairs"))
}

fn c2_short_exact_sequences() -> Outcome {
    let wb = Workbench::shared(3).unwrap();
    let mut sampler = Sampler::new(202, 8);
    sampler.max_top = 12;
    let mut count = 0;
    for _ in 0..60 {
        let s = sampler.ses(&wb).map_err(|e| e.to_string())?;
        let (ca, cb, cc) = (module_char(&s.a), module_char(&s.b), module_char(&s.c));
        let mut ac = ca.clone();
        add_char(&mut ac, &cc, 1);
        ensure(ac == cb, || format!("{}: ch B ≠ ch A + ch C", s.description))?;
        let (a, b, c) = (cmin_labels(&wb, &s.a)?, cmin_labels(&wb, &s.b)?, cmin_labels(&wb, &s.c)?);
        for i in -8..=8 {
            ensure(sub_multiset(&at(&a, i), &cat(&at(&b, i), &at(&c, i - 1))), || format!("{}: A_{i}", s.description))?;
            ensure(sub_multiset(&at(&b, i), &cat(&at(&a, i), &at(&c, i))), || format!("{}: B_{i}", s.description))?;
            ensure(sub_multiset(&at(&c, i), &cat(&at(&a, i + 1), &at(&b, i))), || format!("{}: C_{i}", s.description))?;
        }
        count += 1;
    }
    Ok(format!("{count} sequences, 0 violations"))
}

fn c3_tensor_products() -> Outcome {
    let wb = Workbench::shared(3).unwrap();
    let ell = 3i64;
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut pairs = 0;
    while pairs < 20 {
        let (m, n) = (random_standard(&wb, &mut rng, 6), random_standard(&wb, &mut rng, 6));
        if m.module.dim() * n.module.dim() > 48 {
            continue;
        }
        let mn = Arc::new(tensor_module(&m.module, &n.module).unwrap());
        let (cm, cn) = (wb.minimal_tilting_complex(&m.module).unwrap(), wb.minimal_tilting_complex(&n.module).unwrap());
        let (lm, ln) = (cm.complex.label_multisets(), cn.complex.label_multisets());
        let mut bound = Labels::new();
        for (i, xs) in &lm {
            for (j, ys) in &ln {
                for &x in xs {
                    for &y in ys {
                        let prod = mul_char(&tilting_char(ell, x as i64), &tilting_char(ell, y as i64));
                        let e = bound.entry(i + j).or_default();
                        *e = cat(e, &tilting_labels(ell, prod));
                    }
                }
            }
        }
        let own = cmin_labels(&wb, &mn)?;
        for (i, v) in &own {
            ensure(sub_multiset(v, &at(&bound, *i)), || {
                format!("{} ⊗ {} degree {i}: {v:?} ⊄ {:?}", m.name, n.name, at(&bound, *i))
            })?;
        }
        let total = tensor_complexes(&cm.complex.to_chain_complex(), &cn.complex.to_chain_complex()).unwrap();
        let expected = mul_char(&module_char(&m.module), &module_char(&n.module));
        for (i, h) in total.cohomology_characters() {
            let h: Char = h.iter().filter(|e| e.1 != 0).collect();
            let want = if i == 0 { expected.clone() } else { Char::new() };
            ensure(h == want, || format!("{} ⊗ {}: H^{i} = {h:?}", m.name, n.name))?;
        }
        ensure(expected.values().sum::<i64>() as usize == m.module.dim() * n.module.dim(), || "dimension".into())?;
        pairs += 1;
    }
    Ok(format!("{pairs} pairs"))
}

/// dim H^i per weight from ranks of the dense differentials restricted by hand to weight spaces.
fn brute_cohomology(wb: &Workbench, m: &Arc<UModule>) -> Result<(Labels, BTreeMap<i64, Char>), String> {
    let c = wb.minimal_tilting_complex(m).map_err(|e| e.to_string())?;
    let x = c.complex.to_chain_complex();
    let (lo, hi) = x.degree_range().unwrap();
    let mut h = BTreeMap::new();
    for i in lo..=hi {
        let t = x.term(i);
        let (d, p) = (x.differential(i), x.differential(i - 1));
        let mut ch = Char::new();
        for &(w, dim) in t.spaces() {
            let idx: Vec<usize> = t.weight_range(w).collect();
            let out_idx: Vec<usize> = d.target.weight_range(w).collect();
            let in_idx: Vec<usize> = p.source.weight_range(w).collect();
            let rd = d.matrix.select_cols(&idx).select_rows(&out_idx).rank();
            let rp = p.matrix.select_rows(&idx).select_cols(&in_idx).rank();
            let k = dim as i64 - rd as i64 - rp as i64;
            if k != 0 {
                ch.insert(w, k);
            }
        }
        if !ch.is_empty() {
            h.insert(i, ch);
        }
        let whole = t.dim() as i64 - d.matrix.rank() as i64 - p.matrix.rank() as i64;
        ensure(whole == h.get(&i).map_or(0, |c| c.values().sum()), || format!("dense rank mismatch in degree {i}"))?;
    }
    Ok((c.complex.label_multisets(), h))
}

fn c4_fixed_points() -> Outcome {
    let wb = Workbench::shared(3).unwrap();
    let l3 = Arc::new(simple_module(3, 3).unwrap());
    let (labels, h) = brute_cohomology(&wb, &l3)?;
    let want: Labels = [(-1, vec![1]), (0, vec![3]), (1, vec![1])].into_iter().collect();
    ensure(labels == want, || format!("C_min(L(3)) = {labels:?}"))?;
    // L(3) = L(1)^[1]: weights ±3
    let ch: Char = [(3, 1), (-3, 1)].into_iter().collect();
    ensure(h.len() == 1 && h.get(&0) == Some(&ch), || format!("H(C_min(L(3))) = {h:?}"))?;

    let d3 = standard_module(&wb, Family::Weyl, 3).unwrap().module;
    let (labels, h) = brute_cohomology(&wb, &d3)?;
    let want: Labels = [(0, vec![3]), (1, vec![1])].into_iter().collect();
    ensure(labels == want, || format!("C_min(Δ(3)) = {labels:?}"))?;
    ensure(h.len() == 1 && h.get(&0) == Some(&weyl_char(3)), || format!("H(C_min(Δ(3))) = {h:?}"))?;
    Ok("C_min(L(3)) = [T(1)→T(3)→T(1)], C_min(Δ(3)) = [T(3)→T(1)]".into())
}

fn c5_ideal_lattice() -> Outcome {
    let w = 12u32;
    for ell in [3u32, 5] {
        let wb = Workbench::shared(ell).unwrap();
        let table = TensorTable::new(&wb, 2 * w).map_err(|e| e.to_string())?;
        let ideals = enumerate_tilt_ideals(&table, w).map_err(|e| e.to_string())?;
        let got: Vec<Vec<u32>> = ideals.iter().map(|i| i.members.iter().copied().collect()).collect();
        let want = vec![vec![], (ell - 1..=w).collect(), (0..=w).collect::<Vec<u32>>()];
        ensure(got == want, || format!("ℓ={ell}: {got:?}"))?;
        ensure(ideals[1].is_prime_on_window(&table), || format!("ℓ={ell}: negligible ideal not prime"))?;
    }
    Ok("3 ideals at ℓ = 3 and ℓ = 5, negligible ideal prime".into())
}

fn c6_bijection() -> Outcome {
    let wb = Workbench::shared(3).unwrap();
    let w = 12;
    let mut pool = Vec::new();
    for f in Family::ALL {
        for n in 0..=6 {
            pool.push(standard_module(&wb, f, n).unwrap());
        }
    }
    let r = verify_bijection(&wb, w, &pool).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.failures.join("; "))?;
    let table = TensorTable::new(&wb, 2 * w).unwrap();
    let ideals = enumerate_tilt_ideals(&table, w).unwrap();
    for i in &ideals {
        let h = RepIdealHandle::new(wb.clone(), i.clone());
        let back = intersect_with_tilt(&h).unwrap();
        ensure(back.members == i.members, || format!("⟨{}⟩ ∩ Tilt = {}", i.describe(), back.describe()))?;
    }
    ensure(r.separations.len() == ideals.len() * (ideals.len() - 1) / 2, || "missing separations".into())?;
    for s in &r.separations {
        let t = wb.tilting(s.witness);
        let find = |d: &str| ideals.iter().find(|i| i.describe() == d).unwrap().clone();
        let (a, b) = (RepIdealHandle::new(wb.clone(), find(&s.first)), RepIdealHandle::new(wb.clone(), find(&s.second)));
        ensure(a.contains(&t).unwrap() != b.contains(&t).unwrap(), || format!("T({}) does not separate", s.witness))?;
    }
    Ok(format!("{} ideals, pool of {}, {} checks", ideals.len(), pool.len(), r.checks))
}

fn c7_two_out_of_three() -> Outcome {
    let wb = Workbench::shared(3).unwrap();
    let w = 12;
    let table = TensorTable::new(&wb, 2 * w).unwrap();
    let mut summary = Vec::new();
    for i in enumerate_tilt_ideals(&table, w).unwrap().into_iter().filter(|i| i.is_proper()) {
        let r = verify_two_out_of_three(&RepIdealHandle::new(wb.clone(), i), 100, 707).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("⟨{}⟩: {:?}", r.ideal, r.violations))?;
        ensure(r.cases - r.skipped >= 100, || format!("⟨{}⟩: only {} decided cases", r.ideal, r.cases - r.skipped))?;
        summary.push(format!("⟨{}⟩ {} SES ({} with two members)", r.ideal, r.cases, r.decisive));
    }
    Ok(summary.join(", "))
}

// Euclidean root systems with exact rational coordinates

type Vector = Vec<Rational64>;

fn dot(a: &[Rational64], b: &[Rational64]) -> Rational64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn reflect(v: &[Rational64], a: &[Rational64]) -> Vector {
    let k = Rational64::from(2) * dot(v, a) / dot(a, a);
    v.iter().zip(a).map(|(x, y)| x - k * y).collect()
}

/// ⟨v, β∨⟩ = 2(v, β)/(β, β).
fn co(v: &[Rational64], b: &[Rational64]) -> Rational64 {
    Rational64::from(2) * dot(v, b) / dot(b, b)
}

struct Euclid {
    positive: Vec<Vector>,
    fundamental: Vec<Vector>,
}

impl Euclid {
    fn new(simple: Vec<Vec<i64>>) -> Self {
        let simple: Vec<Vector> = simple.iter().map(|v| v.iter().map(|&x| Rational64::from(x)).collect()).collect();
        let r = simple.len();
        let mut roots: Vec<Vector> = simple.clone();
        let mut i = 0;
        while i < roots.len() {
            for s in &simple {
                let x = reflect(&roots[i], s);
                if !roots.contains(&x) {
                    roots.push(x);
                }
            }
            i += 1;
        }
        // ω_i = Σ_k x_k α_k with ⟨ω_i, α_j∨⟩ = δ_ij: solve G x = e_i, G[j][k] = ⟨α_k, α_j∨⟩
        let mut fundamental = Vec::new();
        for target in 0..r {
            let mut m: Vec<Vector> = (0..r)
                .map(|j| {
                    let mut row: Vector = (0..r).map(|k| co(&simple[k], &simple[j])).collect();
                    row.push(Rational64::from((j == target) as i64));
                    row
                })
                .collect();
            for c in 0..r {
                let p = (c..r).find(|&i| m[i][c] != Rational64::from(0)).unwrap();
                m.swap(c, p);
                let piv = m[c][c];
                for x in m[c].iter_mut() {
                    *x /= piv;
                }
                for i in 0..r {
                    if i != c {
                        let f = m[i][c];
                        let rowc = m[c].clone();
                        for (x, y) in m[i].iter_mut().zip(rowc) {
                            *x -= f * y;
                        }
                    }
                }
            }
            let dim = simple[0].len();
            let mut w = vec![Rational64::from(0); dim];
            for k in 0..r {
                for (x, y) in w.iter_mut().zip(&simple[k]) {
                    *x += m[k][r] * y;
                }
            }
            fundamental.push(w);
        }
        let rho: Vector =
            (0..simple[0].len()).map(|d| fundamental.iter().map(|w| w[d]).sum()).collect();
        let positive = roots.into_iter().filter(|b| dot(b, &rho) > Rational64::from(0)).collect();
        Euclid { positive, fundamental }
    }

    fn shifted_pairings(&self, lambda: &[i64]) -> Vec<i64> {
        let dim = self.fundamental[0].len();
        let v: Vector = (0..dim)
            .map(|d| self.fundamental.iter().zip(lambda).map(|(w, &l)| w[d] * Rational64::from(l + 1)).sum())
            .collect();
        self.positive
            .iter()
            .map(|b| {
                let x = co(&v, b);
                assert!(x.is_integer());
                x.to_integer()
            })
            .collect()
    }
}

fn brute_d(e: &Euclid, lambda: &[i64], p: i64) -> i64 {
    let rho = e.shifted_pairings(&vec![0; lambda.len()]);
    let mut d = 0;
    for (a, b) in rho.iter().zip(e.shifted_pairings(lambda)) {
        for r in 1..=b / p + 1 {
            if *a < r * p && r * p < b {
                d += 1;
            }
        }
    }
    d
}

fn box_weights(rank: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|v| (0..=radius).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn c8_alcove() -> Outcome {
    let systems = [
        (RootType::A(1), vec![vec![1, -1]], 2),
        (RootType::A(2), vec![vec![1, -1, 0], vec![0, 1, -1]], 3),
        (RootType::B(2), vec![vec![1, -1], vec![0, 1]], 4),
        (RootType::G2, vec![vec![1, -1, 0], vec![-2, 1, 1]], 6),
    ];
    let mut checked = 0;
    for (kind, simple, h) in systems {
        let rs = build_root_system(kind);
        let e = Euclid::new(simple);
        ensure(e.positive.len() == rs.positive_roots.len(), || format!("{kind}: |Φ⁺|"))?;
        ensure(rs.coxeter_number() == h, || format!("{kind}: h"))?;
        for p in [2i64, 3, 5, 7] {
            for lambda in box_weights(rs.rank, 3 * p) {
                let pairs = e.shifted_pairings(&lambda);
                let d = separating_hyperplane_count(&rs, &lambda, p).unwrap();
                ensure(d == brute_d(&e, &lambda, p), || format!("{kind} p={p} λ={lambda:?}: d = {d}"))?;
                let regular = pairs.iter().all(|x| x % p != 0);
                ensure(is_p_regular(&rs, &lambda, p) == regular, || format!("{kind} p={p} λ={lambda:?}: regular"))?;
                let negligible = pairs.iter().max().copied().unwrap() >= p;
                ensure(is_negligible_weight(&rs, &lambda, p) == negligible, || {
                    format!("{kind} p={p} λ={lambda:?}: negligible")
                })?;
                let splits: Vec<(Vec<i64>, Vec<i64>)> = box_weights(rs.rank, p - 1)
                    .into_iter()
                    .filter(|l0| lambda.iter().zip(l0).all(|(l, z)| (l - z) % p == 0 && l >= z))
                    .map(|l0| {
                        let l1 = lambda.iter().zip(&l0).map(|(l, z)| (l - z) / p).collect();
                        (l0, l1)
                    })
                    .collect();
                ensure(splits.len() == 1 && splits[0] == steinberg_decompose(&lambda, p), || {
                    format!("{kind} p={p} λ={lambda:?}: Steinberg")
                })?;
                checked += 1;
            }
            if p >= h {
                let t = steinberg_twist_example(&rs, p).map_err(|e| e.to_string())?;
                let pairs = e.shifted_pairings(&t.weight);
                ensure(t.p_regular == Some(true) && pairs.iter().all(|x| x % p != 0), || format!("{kind} p={p}: twist regular"))?;
                ensure(t.negligible && pairs.iter().max().copied().unwrap() >= p, || format!("{kind} p={p}: twist negligible"))?;
            }
        }
    }
    Ok(format!("{checked} weights in A1, A2, B2, G2 at p = 2, 3, 5, 7"))
}

fn c9_cross_check() -> Outcome {
    let mut rows = Vec::new();
    let mut observations = Vec::new();
    for ell in [3u32, 5] {
        let wb = Workbench::shared(ell).unwrap();
        let l = ell as i64;
        for lambda in 0..=12u32 {
            let b = lambda as i64 + 1;
            if b % l == 0 {
                continue;
            }
            let d = (1..=b / l).filter(|r| r * l < b && r * l > 1).count() as i64;
            let m = Arc::new(simple_module(ell, lambda as i64).unwrap());
            let (gfd, _) = wb.filtration_dimensions(&m).map_err(|e| e.to_string())?;
            rows.push(format!("ℓ={ell} λ={lambda}: gfd {gfd} d {d}"));
            if gfd != d {
                ensure(lambda >= ell, || format!("ℓ={ell} λ={lambda}: gfd {gfd} ≠ d {d}"))?;
                observations.push(format!("ℓ={ell} λ={lambda}"));
            }
        }
    }
    for r in &rows {
        println!("    {r}");
    }
    Ok(format!("{} regular weights, {} mismatches observed", rows.len(), observations.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("direct sums", c1_direct_sums),
        ("short exact sequences", c2_short_exact_sequences),
        ("tensor products", c3_tensor_products),
        ("fixed points at ℓ = 3", c4_fixed_points),
        ("ideal lattice", c5_ideal_lattice),
        ("bijection", c6_bijection),
        ("two-out-of-three", c7_two_out_of_three),
        ("alcove combinatorics", c8_alcove),
        ("gfd against d", c9_cross_check),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {} [{name}]: PASS ({msg}; {secs:.1}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({msg}; {secs:.1}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
