use serde::Serialize;

use crate::arith::{quantum_factorial, quantum_integer, CyclotomicScalar, ExactMatrix};

use super::module::{Generator, UModule};

type S = CyclotomicScalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub relation: String,
    /// Global index of a basis vector on which the relation fails.
    pub witness_column: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed_relations(&self) -> Vec<&str> {
        self.failures.iter().map(|f| f.relation.as_str()).collect()
    }
}

fn first_nonzero_column(m: &ExactMatrix) -> Option<usize> {
    (0..m.cols()).find(|&j| (0..m.rows()).any(|i| !m.get(i, j).is_zero()))
}

/// Verifies the defining relations of U_ζ(sl₂) with divided powers on `m`, exactly.
pub fn check_relations(m: &UModule) -> RelationReport {
    let ell = m.ell();
    let l = ell as i64;
    let mut report = RelationReport::default();
    // K-conjugation, checked densely so that a mis-graded action is caught.
    let k = m.k_matrix();
    let kinv = m.k_matrix_pow(-1);
    for (g, name, e) in [
        (Generator::E, "K E K^-1 = q^2 E", 2),
        (Generator::F, "K F K^-1 = q^-2 F", -2),
        (Generator::EDiv, "K E^(l) = E^(l) K", 0),
        (Generator::FDiv, "K F^(l) = F^(l) K", 0),
    ] {
        let x = m.generator_matrix(g);
        let diff = k.mul(&x).mul(&kinv).sub(&x.scale(&S::zeta_pow(ell, e)));
        if let Some(c) = first_nonzero_column(&diff) {
            report.failures.push(RelationFailure { relation: name.into(), witness_column: c });
        }
    }

    let mut record = |rel: &str, w: i64, diff: &ExactMatrix| {
        if let Some(c) = first_nonzero_column(diff) {
            report.failures.push(RelationFailure {
                relation: rel.to_string(),
                witness_column: m.offset(w).unwrap_or(0) + c,
            });
        }
    };

    let fact = quantum_factorial(l - 1, ell).inverse().expect("[l-1]! invertible");
    for &(w, d) in m.spaces() {
        // [E, F] = (K - K^-1)/(q - q^-1)
        let ef = m.act(Generator::E, w - 2).mul(&m.act(Generator::F, w));
        let fe = m.act(Generator::F, w + 2).mul(&m.act(Generator::E, w));
        let rhs = ExactMatrix::identity(ell, d).scale(&quantum_integer(w, ell));
        record("[E,F] = (K - K^-1)/(q - q^-1)", w, &ef.sub(&fe).sub(&rhs));

        record("E^l = 0", w, &m.power(Generator::E, ell, w));
        record("F^l = 0", w, &m.power(Generator::F, ell, w));

        let a = m.act(Generator::E, w + 2 * l).mul(&m.act(Generator::EDiv, w));
        let b = m.act(Generator::EDiv, w + 2).mul(&m.act(Generator::E, w));
        record("E E^(l) = E^(l) E", w, &a.sub(&b));
        let a = m.act(Generator::F, w - 2 * l).mul(&m.act(Generator::FDiv, w));
        let b = m.act(Generator::FDiv, w - 2).mul(&m.act(Generator::F, w));
        record("F F^(l) = F^(l) F", w, &a.sub(&b));

        // E F^(l) - F^(l) E = F^(l-1) [K; 1-l]
        let lhs = m
            .act(Generator::E, w - 2 * l)
            .mul(&m.act(Generator::FDiv, w))
            .sub(&m.act(Generator::FDiv, w + 2).mul(&m.act(Generator::E, w)));
        let c = &quantum_integer(w + 1 - l, ell) * &fact;
        let rhs = m.power(Generator::F, ell - 1, w).scale(&c);
        record("E F^(l) - F^(l) E = F^(l-1) [K; 1-l]", w, &lhs.sub(&rhs));

        // E^(l) F - F E^(l) = [K; l-1] E^(l-1)
        let lhs = m
            .act(Generator::EDiv, w - 2)
            .mul(&m.act(Generator::F, w))
            .sub(&m.act(Generator::F, w + 2 * l).mul(&m.act(Generator::EDiv, w)));
        let c = &quantum_integer(w + l - 1, ell) * &fact;
        let rhs = m.power(Generator::E, ell - 1, w).scale(&c);
        record("E^(l) F - F E^(l) = [K; l-1] E^(l-1)", w, &lhs.sub(&rhs));
    }
    report
}
