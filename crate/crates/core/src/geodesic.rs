//! Geodesic machinery on reductive spaces.
//!
//! The driving identity: the orbit t -> exp(tX)(p) is a geodesic for some
//! parameter iff <[X,Z]_m, X_m> = k <X_m, Z> for all Z in m, with a single
//! constant k. A space has the geodesic-orbit property when every X in m
//! admits a correction A in h making X + A satisfy the identity; the solver
//! below finds (A, k) by one exact linear solve. Surveys sample m and report
//! evidence, never proof: the quantifier runs over all of m.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::forms::{skew_defect, Signature};
use crate::homogeneous::ReductiveSpace;
use crate::lie::{Nilpotency, Subspace};
use crate::linalg::{unit_vec, vec_add, vec_is_zero, vec_sub, zero_vec, Mat};
use crate::rational::{rat_string, rat_to_f64, rat_vec_string, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeodesicError {
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is not in the complement m")]
    NotInComplement,
    #[error("subspace is not an ideal of the algebra")]
    NotAnIdeal,
    #[error("subspace is not a nilpotent ideal")]
    NotNilpotent,
    #[error("subspace ambient dimension {got} does not match algebra dimension {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("affine reparametrization is only defined for k != 0")]
    ZeroConstant,
}

/// Outcome of evaluating the geodesic identity for a fixed X in g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaCheck {
    /// L(Z) = k R(Z) holds on the whole m-basis for this unique k.
    Consistent { k: Rat },
    /// No constant works; `residual` is L - k R for the best k read off the
    /// first basis vector with R != 0.
    Inconsistent { k: Rat, residual: Vec<Rat> },
}

/// Evaluates L(Z) = <[X,Z]_m, X_m> against R(Z) = <X_m, Z> on the m-basis.
pub fn geodesic_lemma_residual(
    space: &ReductiveSpace,
    x: &[Rat],
) -> Result<LemmaCheck, GeodesicError> {
    if x.len() != space.dim() {
        return Err(GeodesicError::DimensionMismatch {
            expected: space.dim(),
            got: x.len(),
        });
    }
    let xm = space.project_m_coords(x);
    let md = space.m_dim();
    let mut lhs = Vec::with_capacity(md);
    let mut rhs = Vec::with_capacity(md);
    for j in 0..md {
        let w = space
            .algebra()
            .bracket(x, space.m_basis().row(j))
            .expect("validated dimensions");
        lhs.push(space.metric_eval(&space.project_m_coords(&w), &xm));
        rhs.push(space.metric_eval(&xm, &unit_vec(md, j)));
    }
    let Some(first) = rhs.iter().position(|r| !r.is_zero()) else {
        // R = 0 forces X_m = 0 (the metric is nondegenerate), hence L = 0.
        debug_assert!(vec_is_zero(&lhs));
        return Ok(LemmaCheck::Consistent { k: Rat::zero() });
    };
    let k = &lhs[first] / &rhs[first];
    let residual: Vec<Rat> = lhs
        .iter()
        .zip(&rhs)
        .map(|(l, r)| l - &k * r)
        .collect();
    if vec_is_zero(&residual) {
        Ok(LemmaCheck::Consistent { k })
    } else {
        Ok(LemmaCheck::Inconsistent { k, residual })
    }
}

/// A verified witness that exp(t(X + A)) traces a geodesic through the base
/// point: the identity holds exactly with constant k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodesicCertificate {
    /// The geodesic tangent vector X in m (g coordinates).
    #[serde(with = "rat_vec_string")]
    pub x: Vec<Rat>,
    /// The isotropy correction A in h (g coordinates).
    #[serde(with = "rat_vec_string")]
    pub a: Vec<Rat>,
    #[serde(with = "rat_string")]
    pub k: Rat,
    /// <X_m, X_m> = 0. Forced whenever k != 0.
    pub null_flag: bool,
}

impl GeodesicCertificate {
    /// Re-derives the certificate from scratch: checks the geodesic identity
    /// on every m-basis vector by direct bracket evaluation, independent of
    /// how (A, k) were produced. Returns None when the identity fails.
    pub fn verify(space: &ReductiveSpace, x: &[Rat], a: &[Rat], k: &Rat) -> Option<Self> {
        let xm_coords = space.m_coords(x)?;
        space.h_coords(a)?;
        let corrected = vec_add(x, a);
        for j in 0..space.m_dim() {
            let w = space
                .algebra()
                .bracket(&corrected, space.m_basis().row(j))
                .expect("validated dimensions");
            let left = space.metric_eval(&space.project_m_coords(&w), &xm_coords);
            let right = k * space.metric_eval(&xm_coords, &unit_vec(space.m_dim(), j));
            if left != right {
                return None;
            }
        }
        let norm = space.metric_eval(&xm_coords, &xm_coords);
        let null_flag = norm.is_zero();
        // Geodesic Lemma null clause: a reparametrized (k != 0) geodesic is
        // a null curve. A violation here contradicts the space invariants.
        assert!(
            k.is_zero() || null_flag,
            "certificate with k != 0 on a non-null vector: invariant violation"
        );
        Some(Self {
            x: x.to_vec(),
            a: a.to_vec(),
            k: k.clone(),
            null_flag,
        })
    }
}

/// Solves for a correction A in h and constant k making `xm` a geodesic
/// vector. The system is linear in (A, k) jointly; the returned solution is
/// the canonical particular one (free variables zero). None means no
/// solution exists, i.e. `xm` witnesses a geodesic-orbit failure.
pub fn solve_geodesic_vector(
    space: &ReductiveSpace,
    xm: &[Rat],
) -> Result<Option<GeodesicCertificate>, GeodesicError> {
    if xm.len() != space.dim() {
        return Err(GeodesicError::DimensionMismatch {
            expected: space.dim(),
            got: xm.len(),
        });
    }
    let Some(xm_coords) = space.m_coords(xm) else {
        return Err(GeodesicError::NotInComplement);
    };
    Ok(solve_in_m_coords(space, &xm_coords))
}

/// Core solve with X given in m-basis coordinates.
fn solve_in_m_coords(space: &ReductiveSpace, xm_coords: &[Rat]) -> Option<GeodesicCertificate> {
    let md = space.m_dim();
    let hd = space.h_dim();
    let x = space.m_vector(xm_coords);
    // Unknowns: h-coefficients of A, then k.
    let mut system = Mat::zeros(md, hd + 1);
    let mut rhs = Vec::with_capacity(md);
    for j in 0..md {
        let z = space.m_basis().row(j);
        for t in 0..hd {
            let w = space
                .algebra()
                .bracket(space.h_basis().row(t), z)
                .expect("validated dimensions");
            system[(j, t)] = space.metric_eval(&space.project_m_coords(&w), xm_coords);
        }
        system[(j, hd)] = -space.metric_eval(xm_coords, &unit_vec(md, j));
        let w = space.algebra().bracket(&x, z).expect("validated dimensions");
        rhs.push(-space.metric_eval(&space.project_m_coords(&w), xm_coords));
    }
    let solution = system.solve(&rhs)?;
    let (a_coords, k) = solution.split_at(hd);
    let a = space.h_vector(a_coords);
    let cert = GeodesicCertificate::verify(space, &x, &a, &k[0])
        .expect("solver output must satisfy the identity it solved");
    Some(cert)
}

/// Deterministic sampling plan for a geodesic-orbit survey.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub count: usize,
}

/// Aggregated survey outcome. A pass is evidence, not proof: the verdict
/// reads "no counterexample found" over the sampled vectors only.
#[derive(Debug, Clone, Serialize)]
pub struct GoReport {
    pub space_id: String,
    pub seed: u64,
    pub samples_tested: usize,
    /// m-basis coordinate vectors admitting no certificate.
    pub failures: Vec<FailedSample>,
    pub certificates: Vec<GeodesicCertificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FailedSample {
    #[serde(with = "rat_vec_string")]
    pub xm_coords: Vec<Rat>,
}

impl GoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Largest |k| across certificates is zero iff every geodesic found is
    /// affinely parametrized (k = 0 throughout, e.g. bi-invariant metrics).
    pub fn all_k_zero(&self) -> bool {
        self.certificates.iter().all(|c| c.k.is_zero())
    }
}

/// Runs the solver over all m-basis vectors, all pairwise basis sums, and
/// `count` seeded pseudo-random vectors with half-integer entries in
/// [-3, 3]. The report is a pure function of (space, id, sampler).
pub fn go_survey(space: &ReductiveSpace, space_id: &str, sampler: SamplerConfig) -> GoReport {
    let md = space.m_dim();
    let mut samples: Vec<Vec<Rat>> = Vec::new();
    for i in 0..md {
        samples.push(unit_vec(md, i));
    }
    for i in 0..md {
        for j in (i + 1)..md {
            samples.push(vec_add(&unit_vec(md, i), &unit_vec(md, j)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
    for _ in 0..sampler.count {
        let v: Vec<Rat> = (0..md)
            .map(|_| Rat::new(rng.gen_range(-6..=6).into(), 2.into()))
            .collect();
        samples.push(v);
    }

    let mut failures = Vec::new();
    let mut certificates = Vec::new();
    for xm_coords in &samples {
        match solve_in_m_coords(space, xm_coords) {
            Some(cert) => certificates.push(cert),
            None => failures.push(FailedSample {
                xm_coords: xm_coords.clone(),
            }),
        }
    }
    GoReport {
        space_id: space_id.to_string(),
        seed: sampler.seed,
        samples_tested: samples.len(),
        failures,
        certificates,
    }
}

/// Per-generator skewness outcome for the proof-internal check.
#[derive(Debug, Clone, Serialize)]
pub struct OrthoSkewCheck {
    pub zeta_index: usize,
    pub skew: bool,
}

/// Outcome of the two-step nilpotency criterion for a nilpotent ideal n.
#[derive(Debug, Clone, Serialize)]
pub struct TwoStepReport {
    /// n is contained in the complement m.
    pub hypothesis_n_in_m: bool,
    /// The metric restricted to [n,n] is positive or negative definite
    /// (degenerate restrictions fail the hypothesis).
    pub hypothesis_definite: bool,
    /// Signature of the restriction, when [n,n] lies in m.
    pub restriction_signature: Option<Signature>,
    pub derived_dim: usize,
    /// Nilpotency step of n as an algebra in its own right.
    pub nilpotency_step: usize,
    /// [n, [n,n]] = 0.
    pub conclusion_two_step: bool,
    /// ad(zeta) restricted to [n,n] is metric-skew, for each basis zeta of
    /// the orthocomplement of [n,n] in m intersected with n.
    pub skew_checks: Vec<OrthoSkewCheck>,
}

impl TwoStepReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypothesis_n_in_m && self.hypothesis_definite
    }
}

/// Evaluates the two-step criterion: when n sits in m and the metric
/// restricted to [n,n] is definite, n must be at most 2-step nilpotent.
/// The implication is asserted, not assumed.
pub fn two_step_criterion(
    space: &ReductiveSpace,
    n: &Subspace,
) -> Result<TwoStepReport, GeodesicError> {
    let alg = space.algebra();
    if n.ambient_dim() != alg.dim() {
        return Err(GeodesicError::AmbientMismatch {
            expected: alg.dim(),
            got: n.ambient_dim(),
        });
    }
    if !alg.is_ideal(n).expect("ambient checked") {
        return Err(GeodesicError::NotAnIdeal);
    }
    let restricted_algebra = alg
        .restrict_to_subalgebra(n)
        .expect("ideals are bracket-closed");
    let nilpotency_step = match restricted_algebra.nilpotency_step() {
        Nilpotency::Step(s) => s,
        Nilpotency::NotNilpotent => return Err(GeodesicError::NotNilpotent),
    };

    let derived = alg.product_subspace(n, n).expect("ambient checked");
    let conclusion_two_step = alg
        .product_subspace(n, &derived)
        .expect("ambient checked")
        .is_zero();

    let n_in_m = space.subspace_in_m_coords(n);
    let derived_in_m = space.subspace_in_m_coords(&derived);
    let hypothesis_n_in_m = n_in_m.is_some();
    let (restriction_signature, hypothesis_definite) = match &derived_in_m {
        Some(s) => {
            let sig = space
                .metric()
                .restrict(s)
                .expect("subspace lives in m")
                .signature();
            (Some(sig), sig.is_definite())
        }
        None => (None, false),
    };

    let mut skew_checks = Vec::new();
    if let (Some(n_m), Some(derived_m)) = (&n_in_m, &derived_in_m) {
        let restricted_metric = space
            .metric()
            .restrict(derived_m)
            .expect("subspace lives in m");
        let ortho = space
            .metric()
            .orthocomplement(derived_m)
            .expect("subspace lives in m");
        let zeta_space = ortho.intersect(n_m);
        for (zeta_index, zeta_m) in zeta_space.basis_vectors().enumerate() {
            let zeta_g = space.m_vector(zeta_m);
            let dd = derived_m.dim();
            let mut op = Mat::zeros(dd, dd);
            for j in 0..dd {
                let col_g = space.m_vector(derived_m.basis().row(j));
                let w = alg.bracket(&zeta_g, &col_g).expect("validated dimensions");
                let w_m = space
                    .m_coords(&w)
                    .expect("[n, [n,n]] stays in the ideal, hence in m");
                let coords = derived_m
                    .coords(&w_m)
                    .expect("[n, [n,n]] is contained in [n,n]");
                for (i, v) in coords.into_iter().enumerate() {
                    op[(i, j)] = v;
                }
            }
            let report = skew_defect(&op, &restricted_metric).expect("dimensions match");
            skew_checks.push(OrthoSkewCheck {
                zeta_index,
                skew: report.skew,
            });
        }
    }

    let report = TwoStepReport {
        hypothesis_n_in_m,
        hypothesis_definite,
        restriction_signature,
        derived_dim: derived.dim(),
        nilpotency_step,
        conclusion_two_step,
        skew_checks,
    };
    assert!(
        !report.hypotheses_hold() || report.conclusion_two_step,
        "two-step hypotheses hold but [n,[n,n]] != 0: this contradicts the theorem"
    );
    Ok(report)
}

/// Affine parameter s = e^{-k t} for a reparametrized (k != 0) geodesic.
/// Report annotation only: this is the single floating-point convenience in
/// the geodesic machinery.
pub fn reparametrize_null(k: &Rat, t: f64) -> Result<f64, GeodesicError> {
    if k.is_zero() {
        return Err(GeodesicError::ZeroConstant);
    }
    Ok((-rat_to_f64(k) * t).exp())
}
