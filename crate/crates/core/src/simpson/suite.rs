use super::matrix::AMatrix;
#[cfg(test)]
use super::matrix::{is_zero_matrix, mat_mul};
use super::modules::{find_similarity, higgs_to_qdiff, qdiff_to_higgs, HiggsModule};
use super::PhiContext;
use crate::error::{Error, Result};
use crate::ring::RingDescriptor;
use crate::twisted::AElem;

/// The `x`-degree bound is doubled from `2p` up to `MAX_DEGREE_FACTOR · p`.
pub const MAX_DEGREE_FACTOR: usize = 8;

/// Degree bound on the entries of a similarity witness.
pub const SIMILARITY_DEGREE: usize = 2;

/// Outcome of `H ↦ A ⊗ H ↦ (A ⊗ H)^{Φ=1}` on one Higgs module.
#[derive(Clone, Debug)]
pub struct RoundtripReport {
    pub name: String,
    pub rank: usize,
    pub input: AMatrix,
    pub recovered: Option<AMatrix>,
    pub witness: Option<AMatrix>,
    pub degree_bound: usize,
    pub error: Option<String>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.witness.is_some()
    }
}

fn entry(ring: RingDescriptor, cs: &[i64]) -> AElem {
    AElem::from_i64s(ring, cs)
}

fn matrix(ring: RingDescriptor, r: usize, entries: &[(usize, usize, &[i64])]) -> AMatrix {
    let mut m = super::matrix::zero_matrix(ring, r);
    for &(i, j, cs) in entries {
        m[i][j] = entry(ring, cs);
    }
    m
}

/// Nilpotent Higgs fields of rank 1 to 3 with entries of `x′`-degree at most 2.
pub fn default_suite(ring: RingDescriptor) -> Vec<(String, HiggsModule)> {
    let cases: Vec<(&str, AMatrix)> = vec![
        ("rank1-zero", matrix(ring, 1, &[])),
        ("rank2-zero", matrix(ring, 2, &[])),
        ("rank2-E12", matrix(ring, 2, &[(0, 1, &[1])])),
        ("rank2-x'E12", matrix(ring, 2, &[(0, 1, &[0, 1])])),
        ("rank2-(1+x'^2)E12", matrix(ring, 2, &[(0, 1, &[1, 0, 1])])),
        ("rank2-conjugate", matrix(ring, 2, &[(0, 0, &[0, -1]), (0, 1, &[1]), (1, 0, &[0, 0, -1]), (1, 1, &[0, 1])])),
        ("rank3-E13", matrix(ring, 3, &[(0, 2, &[1])])),
        ("rank3-jordan", matrix(ring, 3, &[(0, 1, &[1]), (1, 2, &[1])])),
        ("rank3-mixed", matrix(ring, 3, &[(0, 1, &[0, 1]), (1, 2, &[1]), (0, 2, &[0, 0, 1])])),
    ];
    cases.into_iter().map(|(n, m)| (n.to_string(), HiggsModule::new(m).expect("square"))).collect()
}

/// Roundtrip with the degree bound doubled from `2p` until the invariants saturate.
pub fn roundtrip(ctx: &PhiContext, name: &str, h: &HiggsModule, seed: u64) -> RoundtripReport {
    let mut report = RoundtripReport {
        name: name.to_string(),
        rank: h.rank(),
        input: h.theta.clone(),
        recovered: None,
        witness: None,
        degree_bound: 0,
        error: None,
    };
    let m = match higgs_to_qdiff(ctx, h) {
        Ok(m) => m,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    let max = MAX_DEGREE_FACTOR * ctx.p();
    let mut bound = 2 * ctx.p();
    let recovered = loop {
        report.degree_bound = bound;
        match qdiff_to_higgs(ctx, &m, bound) {
            Err(Error::UnderSaturated { .. }) if bound < max => bound = (2 * bound).min(max),
            Err(e) => {
                report.error = Some(e.to_string());
                return report;
            }
            Ok(rec) => break rec,
        }
    };
    for degree in 0..=SIMILARITY_DEGREE {
        match find_similarity(&h.theta, &recovered.theta, degree, seed, 64) {
            Ok(Some(w)) => {
                report.witness = Some(w);
                break;
            }
            Ok(None) => {}
            Err(e) => {
                report.error = Some(e.to_string());
                break;
            }
        }
    }
    if report.witness.is_none() && report.error.is_none() {
        report.error = Some(format!("no similarity witness with entries of degree ≤ {SIMILARITY_DEGREE}"));
    }
    report.recovered = Some(recovered.theta);
    report
}

/// Runs [`default_suite`] over the ring of `ctx`, sorted by case name.
pub fn run_default_suite(ctx: &PhiContext, seed: u64) -> Result<Vec<RoundtripReport>> {
    let mut out: Vec<RoundtripReport> =
        default_suite(ctx.alg().ring()).iter().map(|(n, h)| roundtrip(ctx, n, h, seed)).collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}
