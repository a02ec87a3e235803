//! Alcove combinatorics for simple root systems: separating hyperplanes, p-regularity,
//! Steinberg decomposition, negligibility and affine dot orbits. Weights are written in the
//! basis of fundamental weights, so every pairing ⟨λ, β∨⟩ is an integer combination.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::B(n) => write!(f, "B{n}"),
            RootType::C(n) => write!(f, "C{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E(n) => write!(f, "E{n}"),
            RootType::F4 => write!(f, "F4"),
            RootType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("invalid root system type {s:?}"));
        let (letter, rest) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: usize = rest.parse().map_err(|_| bad())?;
        let t = match letter.to_ascii_uppercase().as_str() {
            "A" if n >= 1 => RootType::A(n),
            "B" if n >= 2 => RootType::B(n),
            "C" if n >= 2 => RootType::C(n),
            "D" if n >= 3 => RootType::D(n),
            "E" if (6..=8).contains(&n) => RootType::E(n),
            "F" if n == 4 => RootType::F4,
            "G" if n == 2 => RootType::G2,
            _ => return Err(bad()),
        };
        Ok(t)
    }
}

impl RootType {
    pub fn rank(self) -> usize {
        match self {
            RootType::A(n) | RootType::B(n) | RootType::C(n) | RootType::D(n) | RootType::E(n) => n,
            RootType::F4 => 4,
            RootType::G2 => 2,
        }
    }

    /// Dynkin edges (0-based, Bourbaki numbering) and doubled squared root lengths.
    fn dynkin(self) -> (Vec<(usize, usize)>, Vec<i64>) {
        let n = self.rank();
        let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self {
            RootType::A(_) => (chain(n), vec![2; n]),
            RootType::B(_) => {
                let mut l = vec![4; n];
                l[n - 1] = 2;
                (chain(n), l)
            }
            RootType::C(_) => {
                let mut l = vec![2; n];
                l[n - 1] = 4;
                (chain(n), l)
            }
            RootType::D(_) => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                (e, vec![2; n])
            }
            RootType::E(_) => {
                let mut e = vec![(0, 2), (1, 3), (2, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                (e, vec![2; n])
            }
            RootType::F4 => (chain(4), vec![4, 4, 2, 2]),
            RootType::G2 => (chain(2), vec![2, 6]),
        }
    }

    /// `cartan[i][j] = ⟨α_i, α_j∨⟩ = 2(α_i, α_j)/(α_j, α_j)`.
    pub fn cartan(self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let (edges, len) = self.dynkin();
        let mut form = vec![vec![0i64; n]; n];
        for i in 0..n {
            form[i][i] = len[i];
        }
        for &(i, j) in &edges {
            let v = -len[i].max(len[j]) / 2;
            form[i][j] = v;
            form[j][i] = v;
        }
        (0..n).map(|i| (0..n).map(|j| 2 * form[i][j] / len[j]).collect()).collect()
    }
}

/// Positive roots of the system with Cartan matrix `c` (convention `c[i][j] = ⟨α_i, α_j∨⟩`),
/// in simple-root coordinates, by reflection closure of the simple roots.
fn positive_roots(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.into_iter().collect();
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let pair: i64 = (0..n).map(|j| b[j] * c[j][i]).sum();
            let mut r = b.clone();
            r[i] -= pair;
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
    pos.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    pos
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystemData {
    pub kind: RootType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Φ⁺ in simple-root coordinates.
    pub positive_roots: Vec<Vec<i64>>,
    /// Positive coroots in simple-coroot coordinates; ⟨λ, β∨⟩ = Σ c_i λ_i.
    pub positive_coroots: Vec<Vec<i64>>,
    /// The highest coroot α₀∨, the coroot of the highest short root.
    pub highest_coroot: Vec<i64>,
    /// Simple reflections acting on fundamental-weight coordinates: `s_i(λ) = M_i λ`.
    pub weyl_generators: Vec<Vec<Vec<i64>>>,
}

/// A weight in fundamental-weight coordinates.
pub type Weight = Vec<i64>;

impl RootSystemData {
    pub fn new(kind: RootType) -> Self {
        let cartan = kind.cartan();
        let rank = cartan.len();
        let positive_roots = positive_roots(&cartan);
        let dual: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| cartan[j][i]).collect()).collect();
        let positive_coroots = positive_roots_of_dual(&dual);
        let highest_coroot = positive_coroots.last().unwrap().clone();
        let weyl_generators = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| (0..rank).map(|k| i64::from(j == k) - if k == i { cartan[i][j] } else { 0 }).collect())
                    .collect()
            })
            .collect();
        RootSystemData { kind, rank, cartan, positive_roots, positive_coroots, highest_coroot, weyl_generators }
    }

    pub fn rho(&self) -> Weight {
        vec![1; self.rank]
    }

    pub fn pairing(&self, lambda: &[i64], coroot: &[i64]) -> i64 {
        lambda.iter().zip(coroot).map(|(a, b)| a * b).sum()
    }

    /// ⟨λ + ρ, β∨⟩ for every positive coroot β∨.
    pub fn shifted_pairings(&self, lambda: &[i64]) -> Vec<i64> {
        let shifted: Weight = lambda.iter().map(|x| x + 1).collect();
        self.positive_coroots.iter().map(|c| self.pairing(&shifted, c)).collect()
    }

    /// h = ⟨ρ, α₀∨⟩ + 1.
    pub fn coxeter_number(&self) -> i64 {
        self.pairing(&self.rho(), &self.highest_coroot) + 1
    }

    /// A simple root as a weight: its fundamental-weight coordinates are a row of the Cartan
    /// matrix.
    pub fn root_as_weight(&self, root: &[i64]) -> Weight {
        (0..self.rank).map(|j| (0..self.rank).map(|i| root[i] * self.cartan[i][j]).sum()).collect()
    }

    pub fn reflect(&self, i: usize, lambda: &[i64]) -> Weight {
        let m = &self.weyl_generators[i];
        (0..self.rank).map(|j| (0..self.rank).map(|k| m[j][k] * lambda[k]).sum()).collect()
    }

    /// The W-orbit of a weight under the linear action.
    pub fn weyl_orbit(&self, lambda: &[i64]) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::from([lambda.to_vec()]);
        let mut queue = VecDeque::from([lambda.to_vec()]);
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank {
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut v: Vec<Weight> = seen.into_iter().collect();
        v.sort();
        v
    }

    /// Whether a weight lies in the root lattice.
    pub fn in_root_lattice(&self, v: &[i64]) -> bool {
        // v = Cᵀ a in weight coordinates; solve for a over ℚ
        let n = self.rank;
        let mut m: Vec<Vec<Rational64>> = (0..n)
            .map(|j| {
                let mut row: Vec<Rational64> = (0..n).map(|i| Rational64::from(self.cartan[i][j])).collect();
                row.push(Rational64::from(v[j]));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r][col] != Rational64::from(0)).expect("Cartan matrix is invertible");
            m.swap(col, piv);
            let p = m[col][col];
            for x in m[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col && m[r][col] != Rational64::from(0) {
                    let f = m[r][col];
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        m.iter().all(|row| row[n].is_integer())
    }
}

pub fn build_root_system(kind: RootType) -> RootSystemData {
    RootSystemData::new(kind)
}

fn positive_roots_of_dual(dual: &[Vec<i64>]) -> Vec<Vec<i64>> {
    positive_roots(dual)
}

fn check_dominant(lambda: &[i64], rs: &RootSystemData) -> Result<()> {
    if lambda.len() != rs.rank {
        return Err(Error::Dimension(format!("weight has {} coordinates, rank is {}", lambda.len(), rs.rank)));
    }
    if lambda.iter().any(|&x| x < 0) {
        return Err(Error::InvalidArgument(format!("{lambda:?} is not dominant")));
    }
    Ok(())
}

/// d(λ): the number of hyperplanes {⟨x + ρ, β∨⟩ = rp}, β ∈ Φ⁺, r ≥ 1, strictly between 0 and λ.
pub fn separating_hyperplane_count(rs: &RootSystemData, lambda: &[i64], p: i64) -> Result<i64> {
    check_dominant(lambda, rs)?;
    if p < 1 {
        return Err(Error::InvalidArgument("p must be positive".into()));
    }
    let rho = rs.rho();
    let mut d = 0;
    for (c, b) in rs.positive_coroots.iter().zip(rs.shifted_pairings(lambda)) {
        let a = rs.pairing(&rho, c);
        if b > a {
            d += (b - 1).div_euclid(p) - a.div_euclid(p);
        }
    }
    Ok(d)
}

/// No ⟨λ + ρ, β∨⟩ with β ∈ Φ⁺ is divisible by p.
pub fn is_p_regular(rs: &RootSystemData, lambda: &[i64], p: i64) -> bool {
    rs.shifted_pairings(lambda).iter().all(|x| x.rem_euclid(p) != 0)
}

/// λ = λ₀ + pλ₁ with λ₀ p-restricted, coordinatewise.
pub fn steinberg_decompose(lambda: &[i64], p: i64) -> (Weight, Weight) {
    (lambda.iter().map(|x| x.rem_euclid(p)).collect(), lambda.iter().map(|x| x.div_euclid(p)).collect())
}

/// ⟨λ + ρ, α₀∨⟩ ≥ p.
pub fn is_negligible_weight(rs: &RootSystemData, lambda: &[i64], p: i64) -> bool {
    let shifted: Weight = lambda.iter().map(|x| x + 1).collect();
    rs.pairing(&shifted, &rs.highest_coroot) >= p
}

/// Dominant weights μ with ⟨μ, α₀∨⟩ ≤ bound.
pub fn dominant_box(rs: &RootSystemData, bound: i64) -> Vec<Weight> {
    let c = &rs.highest_coroot;
    let mut out = Vec::new();
    let mut cur = vec![0i64; rs.rank];
    fn rec(i: usize, left: i64, c: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if i == c.len() {
            out.push(cur.clone());
            return;
        }
        let mut x = 0;
        while x * c[i] <= left {
            cur[i] = x;
            rec(i + 1, left - x * c[i], c, cur, out);
            x += 1;
        }
        cur[i] = 0;
    }
    rec(0, bound, c, &mut cur, &mut out);
    out.sort();
    out
}

/// Dominant members of W_p • λ, W_p = W ⋉ pℤΦ, with ⟨μ, α₀∨⟩ ≤ bound.
pub fn dot_orbit(rs: &RootSystemData, lambda: &[i64], p: i64, bound: i64) -> Result<BTreeSet<Weight>> {
    check_dominant(lambda, rs)?;
    let shifted: Weight = lambda.iter().map(|x| x + 1).collect();
    let orbit = rs.weyl_orbit(&shifted);
    let mut out = BTreeSet::new();
    for mu in dominant_box(rs, bound) {
        let m: Weight = mu.iter().map(|x| x + 1).collect();
        let hit = orbit.iter().any(|x| {
            let diff: Vec<i64> = m.iter().zip(x).map(|(a, b)| a - b).collect();
            diff.iter().all(|d| d.rem_euclid(p) == 0)
                && rs.in_root_lattice(&diff.iter().map(|d| d / p).collect::<Vec<_>>())
        });
        if hit {
            out.insert(mu);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SteinbergTwist {
    pub kind: RootType,
    pub p: i64,
    pub weight: Weight,
    pub p_regular: Option<bool>,
    pub negligible: bool,
    pub note: Option<String>,
}

/// (p² − p)ρ, with its p-regularity (asserted for p ≥ h) and negligibility.
pub fn steinberg_twist_example(rs: &RootSystemData, p: i64) -> Result<SteinbergTwist> {
    let weight: Weight = vec![p * p - p; rs.rank];
    let negligible = is_negligible_weight(rs, &weight, p);
    let h = rs.coxeter_number();
    let (p_regular, note) = if p >= h {
        let r = is_p_regular(rs, &weight, p);
        if !r {
            return Err(Error::Construction(format!("(p²−p)ρ is not {p}-regular for {}", rs.kind)));
        }
        (Some(true), None)
    } else {
        (None, Some(format!("p = {p} < h = {h}: regularity not asserted")))
    };
    if !negligible {
        return Err(Error::Construction(format!("(p²−p)ρ is not negligible for {} at p = {p}", rs.kind)));
    }
    Ok(SteinbergTwist { kind: rs.kind, p, weight, p_regular, negligible, note })
}
