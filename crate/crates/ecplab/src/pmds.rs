//! Schur-product bounds: the Product Singleton Bound and its equality case
//! (PMDS pairs), the Kneser-style dimension bound via stabilizers, the
//! structural consequences of equality, and the second-proof pipeline that
//! rederives the main theorem through PMDS machinery.

use thiserror::Error;

use crate::code::{CodeError, LinearCode, DEFAULT_DISTANCE_BUDGET};
use crate::ecp::{EcpError, EcpPair};
use crate::grs::{recognize_any, GrsError, GrsSpec, ProjPoint};

#[derive(Debug, Error)]
pub enum PmdsError {
    #[error("codes must be nonzero")]
    ZeroCode,
    #[error("hypotheses unmet: {0}")]
    HypothesesUnmet(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Grs(#[from] GrsError),
    #[error(transparent)]
    Ecp(#[from] EcpError),
}

/// Product Singleton Bound slack: max{1, n - dim A - dim B + 2} - d(A*B).
/// Nonnegative by the bound; zero exactly when (A, B) is a PMDS pair.
pub fn product_singleton_gap(a: &LinearCode, b: &LinearCode) -> Result<i64, PmdsError> {
    product_singleton_gap_with_budget(a, b, DEFAULT_DISTANCE_BUDGET)
}

pub fn product_singleton_gap_with_budget(
    a: &LinearCode,
    b: &LinearCode,
    budget: u64,
) -> Result<i64, PmdsError> {
    if a.dim() == 0 || b.dim() == 0 {
        return Err(PmdsError::ZeroCode);
    }
    let n = a.len() as i64;
    let prod = a.schur_product(b)?;
    let d = prod.min_distance_with_budget(budget)? as i64;
    let bound = 1i64.max(n - a.dim() as i64 - b.dim() as i64 + 2);
    Ok(bound - d)
}

/// Kneser-bound slack: dim(A*B) - dim A - dim B + dim St(A*B), where St is
/// the stabilizer of the product. Nonnegative by the bound.
pub fn kneser_slack(a: &LinearCode, b: &LinearCode) -> Result<i64, PmdsError> {
    if a.dim() == 0 || b.dim() == 0 {
        return Err(PmdsError::ZeroCode);
    }
    let prod = a.schur_product(b)?;
    let st = prod.stabilizer();
    Ok(prod.dim() as i64 - a.dim() as i64 - b.dim() as i64 + st.dim() as i64)
}

/// Conclusions that equality in the Product Singleton Bound forces.
#[derive(Clone, Debug)]
pub struct PmdsReport {
    pub mds_a: bool,
    pub mds_b: bool,
    pub mds_ab: bool,
    /// Set when both dimensions are at least 2: the three codes are GRS
    /// with a common evaluation sequence after normalization.
    pub shared_sequence: Option<bool>,
}

impl PmdsReport {
    pub fn all_hold(&self) -> bool {
        self.mds_a && self.mds_b && self.mds_ab && self.shared_sequence.unwrap_or(true)
    }
}

/// Check the structural consequences of a PMDS pair: A, B and A*B are MDS,
/// and (when both dimensions are at least 2) all three are GRS codes with a
/// common evaluation-point sequence.
///
/// Requires the equality case of the bound and n > dim A + dim B.
pub fn pmds_consequences(a: &LinearCode, b: &LinearCode) -> Result<PmdsReport, PmdsError> {
    pmds_consequences_with_budget(a, b, DEFAULT_DISTANCE_BUDGET)
}

pub fn pmds_consequences_with_budget(
    a: &LinearCode,
    b: &LinearCode,
    budget: u64,
) -> Result<PmdsReport, PmdsError> {
    let n = a.len();
    let gap = product_singleton_gap_with_budget(a, b, budget)?;
    if gap != 0 {
        return Err(PmdsError::HypothesesUnmet(format!("pair is not PMDS (gap {gap})")));
    }
    if n <= a.dim() + b.dim() {
        return Err(PmdsError::HypothesesUnmet(format!(
            "need n > dim A + dim B, got {n} <= {} + {}",
            a.dim(),
            b.dim()
        )));
    }
    let prod = a.schur_product(b)?;
    let report = PmdsReport {
        mds_a: a.is_mds()?,
        mds_b: b.is_mds()?,
        mds_ab: prod.is_mds()?,
        shared_sequence: if a.dim() >= 2 && b.dim() >= 2 {
            Some(shared_evaluation_sequence(&[a, b, &prod])?.is_some())
        } else {
            None
        },
    };
    Ok(report)
}

/// Recognize each code as GRS and compare evaluation sequences after
/// normalizing the same three positions to (0, 1, infinity). Sequences are
/// only unique up to that fractional-transformation action, so literal
/// comparison is valid exactly after this normalization. Returns the
/// common normalized sequence, or None.
pub fn shared_evaluation_sequence(
    codes: &[&LinearCode],
) -> Result<Option<Vec<ProjPoint>>, PmdsError> {
    let mut common: Option<Vec<ProjPoint>> = None;
    for c in codes {
        let Some(spec) = recognize_any(c)? else {
            return Ok(None);
        };
        let normalized = normalize_spec(&spec)?;
        match &common {
            None => common = Some(normalized.points().to_vec()),
            Some(seq) => {
                if seq != normalized.points() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(common)
}

fn normalize_spec(spec: &GrsSpec) -> Result<GrsSpec, PmdsError> {
    Ok(spec.normalize_at([0, 1, 2])?)
}

/// The links of the second proof of the main theorem, checked one by one
/// on a concrete code and verified pair.
#[derive(Clone, Debug)]
pub struct SecondProofVerdict {
    /// d(A*B) >= d(C dual) = n - 2t + 1
    pub distance_link: bool,
    /// equality in the Product Singleton Bound
    pub pmds_link: bool,
    /// A*B is MDS of dimension 2t
    pub product_mds_link: bool,
    /// A*B equals the dual of C
    pub product_is_dual_link: bool,
    /// A, B, A*B share an evaluation sequence
    pub shared_sequence_link: bool,
}

impl SecondProofVerdict {
    pub fn all_pass(&self) -> bool {
        self.distance_link
            && self.pmds_link
            && self.product_mds_link
            && self.product_is_dual_link
            && self.shared_sequence_link
    }
}

/// Re-run the second proof's chain of deductions on an [n, n-2t, 2t+1] MDS
/// code with a verified t-ECP. Requires 2 < t < n/2 - 1.
pub fn second_proof_check(c: &LinearCode, pair: &EcpPair) -> Result<SecondProofVerdict, PmdsError> {
    second_proof_check_with_budget(c, pair, DEFAULT_DISTANCE_BUDGET)
}

pub fn second_proof_check_with_budget(
    c: &LinearCode,
    pair: &EcpPair,
    budget: u64,
) -> Result<SecondProofVerdict, PmdsError> {
    let n = c.len();
    let t = pair.t();
    if !(2 < t && 2 * t + 2 < n) {
        return Err(PmdsError::HypothesesUnmet(format!(
            "need 2 < t < n/2 - 1, got t = {t}, n = {n}"
        )));
    }
    if c.dim() + 2 * t != n || !c.is_mds()? {
        return Err(PmdsError::HypothesesUnmet(format!(
            "need an [n, n-2t, 2t+1] MDS code, got [{n}, {}]",
            c.dim()
        )));
    }
    let rep = crate::ecp::verify_ecp_with_budget(pair.a(), pair.b(), c, t, budget)?;
    if !rep.is_ecp() {
        return Err(PmdsError::HypothesesUnmet("pair does not verify".into()));
    }
    let a = pair.a();
    let b = pair.b();
    let prod = a.schur_product(b)?;
    let d_prod = prod.min_distance_with_budget(budget)?;
    let distance_link = d_prod >= n - 2 * t + 1;
    let pmds_link = product_singleton_gap_with_budget(a, b, budget)? == 0;
    let product_mds_link = prod.dim() == 2 * t && prod.is_mds()?;
    let c_dual = crate::ecp::lift_to_field(a.spec(), c)?;
    let product_is_dual_link = prod.equals(&c_dual.dual())?;
    let shared_sequence_link = shared_evaluation_sequence(&[a, b, &prod])?.is_some();
    Ok(SecondProofVerdict {
        distance_link,
        pmds_link,
        product_mds_link,
        product_is_dual_link,
        shared_sequence_link,
    })
}

/// One row of the seeded random-pair corpus table.
#[derive(Clone, Debug)]
pub struct CorpusRow {
    pub id: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    pub d_ab: usize,
    pub bound: i64,
    pub gap: i64,
    pub slack: i64,
}

/// Generate `count` seeded random nonzero code pairs of length n and check
/// both bounds on each; returns the per-pair statistics in order.
pub fn corpus(
    spec: &crate::gf::Field,
    n: usize,
    count: usize,
    seed: u64,
    budget: u64,
) -> Result<Vec<CorpusRow>, PmdsError> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(seed);
    let q = spec.order();
    let mut rows = Vec::with_capacity(count);
    let random_code = |rng: &mut StdRng| loop {
        let k = rng.gen_range(1..=n);
        let gen: Vec<Vec<u64>> =
            (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
        let c = LinearCode::from_generator(crate::linalg::Matrix::from_rows(spec, gen));
        if c.dim() > 0 {
            return c;
        }
    };
    for id in 0..count {
        let a = random_code(&mut rng);
        let b = random_code(&mut rng);
        let prod = a.schur_product(&b)?;
        let d_ab = prod.min_distance_with_budget(budget)?;
        let bound = 1i64.max(n as i64 - a.dim() as i64 - b.dim() as i64 + 2);
        let gap = bound - d_ab as i64;
        let slack = kneser_slack(&a, &b)?;
        rows.push(CorpusRow { id, dim_a: a.dim(), dim_b: b.dim(), d_ab, bound, gap, slack });
    }
    Ok(rows)
}
