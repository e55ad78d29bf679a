//! Error-correcting pairs: the six pair conditions, the cubic-time
//! syndrome-free decoder, pair construction for GRS codes, a bounded pair
//! search, and the uniqueness check up to coordinatewise scaling.

use thiserror::Error;

use crate::code::{
    inner_product, star, weight, CodeError, LinearCode, DEFAULT_DISTANCE_BUDGET,
};
use crate::grs::{recognize_any, GrsError, GrsSpec};
use crate::linalg::{Matrix, Solve};

#[derive(Debug, Error)]
pub enum EcpError {
    #[error("codes have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("code field is not a subfield of the pair's field")]
    FieldMismatch,
    #[error("an error-correcting pair requires t >= 1")]
    TZero,
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("pair does not verify against the code")]
    NotVerified,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Grs(#[from] GrsError),
    #[error(transparent)]
    Field(#[from] crate::gf::GfError),
}

/// A candidate t-error-correcting pair (A, B) of codes of a common length
/// over a common field, possibly an extension of the target code's field.
#[derive(Clone, Debug)]
pub struct EcpPair {
    a: LinearCode,
    b: LinearCode,
    t: usize,
}

impl EcpPair {
    pub fn new(a: LinearCode, b: LinearCode, t: usize) -> Result<Self, EcpError> {
        if t == 0 {
            return Err(EcpError::TZero);
        }
        if a.len() != b.len() {
            return Err(EcpError::LengthMismatch(a.len(), b.len()));
        }
        if a.spec().as_ref() != b.spec().as_ref() {
            return Err(EcpError::FieldMismatch);
        }
        Ok(EcpPair { a, b, t })
    }

    pub fn a(&self) -> &LinearCode {
        &self.a
    }

    pub fn b(&self) -> &LinearCode {
        &self.b
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.len() == 0
    }

    pub fn verify(&self, c: &LinearCode) -> Result<EcpReport, EcpError> {
        verify_ecp(&self.a, &self.b, c, self.t)
    }
}

/// One boolean per pair condition plus the two aggregate verdicts.
///
/// The conditions: orthogonality of the pairwise products to the target
/// code, a dimension lower bound on A, dual-distance lower bounds on B and
/// A, and distance inequalities tying A and C to the length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EcpReport {
    pub e1: bool,
    pub e2: bool,
    pub e3: bool,
    pub e4: bool,
    pub e5: bool,
    pub e6: bool,
}

impl EcpReport {
    /// The standard verdict: conditions 1-4.
    pub fn is_ecp(&self) -> bool {
        self.e1 && self.e2 && self.e3 && self.e4
    }

    /// The variant verdict: conditions 1-3 with 5 and 6 replacing 4.
    pub fn is_ecp_variant(&self) -> bool {
        self.e1 && self.e2 && self.e3 && self.e5 && self.e6
    }
}

/// Lift `c` to `target`, which must be reachable from c's field by a chain
/// of extensions (identity included).
pub(crate) fn lift_to_field(
    target: &crate::gf::Field,
    c: &LinearCode,
) -> Result<LinearCode, EcpError> {
    if target.as_ref() == c.spec().as_ref() {
        return Ok(c.clone());
    }
    let mut chain = Vec::new();
    let mut cur = target.clone();
    loop {
        chain.push(cur.clone());
        match cur.base() {
            Some(b) if b.as_ref() == c.spec().as_ref() => break,
            Some(b) => cur = b.clone(),
            None => return Err(EcpError::FieldMismatch),
        }
    }
    let mut lifted = c.clone();
    for f in chain.iter().rev() {
        lifted = lifted.lift_to(f);
    }
    Ok(lifted)
}

pub fn verify_ecp(
    a: &LinearCode,
    b: &LinearCode,
    c: &LinearCode,
    t: usize,
) -> Result<EcpReport, EcpError> {
    verify_ecp_with_budget(a, b, c, t, DEFAULT_DISTANCE_BUDGET)
}

pub fn verify_ecp_with_budget(
    a: &LinearCode,
    b: &LinearCode,
    c: &LinearCode,
    t: usize,
    budget: u64,
) -> Result<EcpReport, EcpError> {
    if a.len() != b.len() {
        return Err(EcpError::LengthMismatch(a.len(), b.len()));
    }
    if a.len() != c.len() {
        return Err(EcpError::LengthMismatch(a.len(), c.len()));
    }
    if a.spec().as_ref() != b.spec().as_ref() {
        return Err(EcpError::FieldMismatch);
    }
    let f = a.spec().clone();
    let cl = lift_to_field(&f, c)?;
    let n = a.len();

    // e1: every pairwise product of basis vectors is orthogonal to C
    let mut e1 = true;
    'outer: for i in 0..a.dim() {
        for j in 0..b.dim() {
            let prod = star(&f, a.generator().row(i), b.generator().row(j))?;
            for l in 0..cl.dim() {
                if inner_product(&f, &prod, cl.generator().row(l)) != 0 {
                    e1 = false;
                    break 'outer;
                }
            }
        }
    }

    let e2 = a.dim() > t;
    // threshold conditions are decided by column independence, which stays
    // cheap even when the code side has too many words to enumerate
    let e3 = b.dual().min_distance_exceeds(t);
    let d_a = a.min_distance_with_budget(budget)?;
    let d_c = cl.min_distance_with_budget(budget)?;
    let e4 = d_a + d_c > n;
    let e5 = a.dual().min_distance_exceeds(1);
    let e6 = d_a + 2 * t > n;

    Ok(EcpReport { e1, e2, e3, e4, e5, e6 })
}

/// The standard pair for a GRS code: A = GRS_{t+1}(a, b'), B = GRS_t(a, 1)
/// with b' the dual multipliers and t = floor((n-k)/2).
///
/// When n - k is odd and infinity is among the points, A*B has dimension
/// 2t < n-k and its infinity coordinate tracks the coefficient of degree
/// 2t-1 while the dual tracks degree n-k-1, so the plain dual multipliers
/// do not embed it into the dual code. Absorbing a degree-one factor
/// (z - r) into A's multipliers, for r outside the point set, realigns the
/// top coefficient; if every finite point is used, the pair moves to a
/// quadratic extension where room exists (the definition allows pairs over
/// extensions).
pub fn build_ecp_for_grs(spec: &GrsSpec) -> Result<EcpPair, EcpError> {
    let n = spec.len();
    let k = spec.dim();
    let t = (n - k) / 2;
    if t == 0 {
        return Err(EcpError::TZero);
    }
    let odd = (n - k) % 2 == 1;
    let has_inf = spec.points().iter().any(|p| p.is_infinity());
    let mut spec = spec.clone();
    if odd && has_inf && spec.spec().order() < n as u64 {
        // n = q + 1: no free finite point; lift to the quadratic extension
        let ext = crate::gf::FieldSpec::extend(spec.spec(), 2)?;
        spec = spec.lift_to(&ext)?;
    }
    let f = spec.spec().clone();
    let dual = spec.dual_spec()?;
    let mut bp = dual.multipliers().to_vec();
    if odd && has_inf {
        let used: Vec<u64> = spec.points().iter().filter_map(|p| p.finite()).collect();
        let r = (0..f.order()).find(|x| !used.contains(x)).expect("free point exists");
        for (i, p) in spec.points().iter().enumerate() {
            if let Some(x) = p.finite() {
                bp[i] = f.mul(bp[i], f.sub(x, r));
            }
            // at infinity the factor contributes its leading coefficient, 1
        }
    }
    let a = GrsSpec::new(&f, spec.points().to_vec(), bp, t + 1)?;
    let b = GrsSpec::new(&f, spec.points().to_vec(), vec![1; n], t)?;
    EcpPair::new(a.code(), b.code(), t)
}

/// C = (A * B)^perp for an [n, t+1, n-t] MDS code A and an [n, t, n-t+1]
/// MDS code B; the pair (A, B) is then a t-ECP for C.
pub fn build_c_from_pair(a: &LinearCode, b: &LinearCode) -> Result<LinearCode, EcpError> {
    let n = a.len();
    if b.len() != n {
        return Err(EcpError::LengthMismatch(n, b.len()));
    }
    let t = b.dim();
    if t == 0 || a.dim() != t + 1 {
        return Err(EcpError::ParameterMismatch(format!(
            "need dim A = dim B + 1 >= 2, got {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    if !a.is_mds()? || !b.is_mds()? {
        return Err(EcpError::ParameterMismatch("A and B must be MDS".into()));
    }
    Ok(a.schur_product(b)?.dual())
}

/// Outcome of one decoding attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeOutcome {
    Decoded { codeword: Vec<u64>, error: Vec<u64> },
    Failure(FailureReason),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureReason {
    /// No nonzero kernel element exists for the received word.
    KernelEmpty,
    /// The erasure system on the candidate support has no unique solution.
    ErasureAmbiguous,
    /// The solved error vector has weight above t.
    WeightExceeded,
    /// The corrected word is not a codeword.
    NotInCode,
}

impl std::fmt::Display for FailureReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FailureReason::KernelEmpty => "kernel-empty",
            FailureReason::ErasureAmbiguous => "erasure-ambiguous",
            FailureReason::WeightExceeded => "weight-exceeded",
            FailureReason::NotInCode => "not-in-code",
        };
        f.write_str(s)
    }
}

/// Reusable decoding context: the kernel system's coefficient templates and
/// the parity check are computed once so a decode costs O(n * dimA * dimB)
/// field operations plus two small eliminations.
pub struct Decoder {
    field: crate::gf::Field,
    c: LinearCode,
    h: Matrix,
    ga: Matrix,
    /// pab[i * ka + j] = row i of B's generator star row j of A's generator
    pab: Vec<Vec<u64>>,
    ka: usize,
    kb: usize,
    t: usize,
    n: usize,
    /// order of the original code's field, for base-purity assertions when
    /// the pair lives over a proper extension
    base_order: u64,
}

impl Decoder {
    pub fn new(c: &LinearCode, pair: &EcpPair) -> Result<Decoder, EcpError> {
        if c.len() != pair.len() {
            return Err(EcpError::LengthMismatch(c.len(), pair.len()));
        }
        let f = pair.a.spec().clone();
        let base_order = c.spec().order();
        let cl = lift_to_field(&f, c)?;
        let ga = pair.a.generator().clone();
        let gb = pair.b.generator();
        let n = c.len();
        let (ka, kb) = (ga.rows(), gb.rows());
        let mut pab = Vec::with_capacity(ka * kb);
        for i in 0..kb {
            for j in 0..ka {
                pab.push(star(&f, gb.row(i), ga.row(j))?);
            }
        }
        let h = cl.parity_check();
        Ok(Decoder { field: f, c: cl, h, ga, pab, ka, kb, t: pair.t, n, base_order })
    }

    /// Decode a received word over the pair's field. If the word lies in
    /// the original base field, the returned codeword and error are
    /// asserted to lie there too.
    pub fn decode(&self, y: &[u64]) -> DecodeOutcome {
        assert_eq!(y.len(), self.n, "received word has wrong length");
        let f = &self.field;

        // kernel system: coefficients alpha of a vector x in A with
        // (x * y) orthogonal to B, one equation per B basis row
        let mut sys = Matrix::zero(f, self.kb, self.ka);
        for i in 0..self.kb {
            for j in 0..self.ka {
                let p = &self.pab[i * self.ka + j];
                let mut acc = 0u64;
                for l in 0..self.n {
                    acc = f.add(acc, f.mul(p[l], y[l]));
                }
                sys.set(i, j, acc);
            }
        }
        let kernel = sys.kernel();
        if kernel.rows() == 0 {
            return DecodeOutcome::Failure(FailureReason::KernelEmpty);
        }
        // deterministic choice: the first kernel basis vector in RREF order
        let x = self.ga.left_mul_vec(kernel.row(0));
        let j_set: Vec<usize> = (0..self.n).filter(|&l| x[l] == 0).collect();

        // erasure step: error supported on the zero set of x
        let syndrome = self.h.mul_vec(y);
        let hj = self.h.select_cols(&j_set);
        let ej = match hj.solve(&syndrome) {
            Solve::Unique(v) => v,
            _ => return DecodeOutcome::Failure(FailureReason::ErasureAmbiguous),
        };
        let mut e = vec![0u64; self.n];
        for (idx, &l) in j_set.iter().enumerate() {
            e[l] = ej[idx];
        }
        if weight(&e) > self.t {
            return DecodeOutcome::Failure(FailureReason::WeightExceeded);
        }
        let cw: Vec<u64> = (0..self.n).map(|l| f.sub(y[l], e[l])).collect();
        if !self.c.contains_word(&cw) {
            return DecodeOutcome::Failure(FailureReason::NotInCode);
        }
        if f.order() != self.base_order && y.iter().all(|&v| v < self.base_order) {
            assert!(
                cw.iter().chain(e.iter()).all(|&v| v < self.base_order),
                "decoded word escapes the base field"
            );
        }
        DecodeOutcome::Decoded { codeword: cw, error: e }
    }
}

/// One-shot decode; builds the context and decodes a single word.
pub fn ecp_decode(y: &[u64], c: &LinearCode, pair: &EcpPair) -> Result<DecodeOutcome, EcpError> {
    Ok(Decoder::new(c, pair)?.decode(y))
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(Box<EcpPair>),
    /// The search space was fully enumerated and holds no pair.
    FoundNone,
    /// The budget ran out before the space was exhausted.
    Exhausted,
}

/// Search for a t-ECP for C over extensions of degree at most `max_ext`.
///
/// When C is an [n, n-2t] MDS code the main theorem reduces the search to
/// GRS recognition: a pair exists over some extension exactly when C is
/// GRS over its own field, and then the standard construction produces
/// one. Otherwise a generic enumeration over candidate codes A runs up to
/// the budget; it is complete because for fixed A the best candidate B is
/// the full orthogonal complement of A * C (any valid B is a subcode of
/// it, and shrinking B only lowers its dual distance).
pub fn search_ecp(
    c: &LinearCode,
    t: usize,
    max_ext: usize,
    budget: u64,
) -> Result<SearchOutcome, EcpError> {
    if t == 0 {
        return Err(EcpError::TZero);
    }
    let n = c.len();
    if c.dim() + 2 * t == n && c.is_mds()? {
        return match recognize_any(c)? {
            Some(spec) => Ok(SearchOutcome::Found(Box::new(build_ecp_for_grs(&spec)?))),
            None => Ok(SearchOutcome::FoundNone),
        };
    }
    search_ecp_generic(c, t, max_ext, budget)
}

/// The brute-force fallback: enumerate every (t+1)-dimensional code A over
/// each extension, pair it with B = (A*C)^perp, and verify.
pub fn search_ecp_generic(
    c: &LinearCode,
    t: usize,
    max_ext: usize,
    budget: u64,
) -> Result<SearchOutcome, EcpError> {
    if t == 0 {
        return Err(EcpError::TZero);
    }
    let n = c.len();
    let mut spent = 0u64;
    for m in 1..=max_ext.max(1) {
        let cm = c.extend_scalars(m)?;
        let f = cm.spec().clone();
        let d_c = cm.min_distance()?;
        let mut found: Option<EcpPair> = None;
        let stopped = for_each_rref(&f, n, t + 1, &mut |ga| {
            spent += 1;
            if spent > budget {
                return false;
            }
            let a = LinearCode::from_generator(ga.clone());
            let d_a = a.min_distance().unwrap();
            if d_a + d_c <= n {
                return true; // e4 fails; keep enumerating
            }
            let b = a.schur_product(&cm).unwrap().dual();
            if b.dual().min_distance().unwrap() <= t {
                return true; // e3 fails
            }
            // e1 holds by construction, e2 by rank; record and stop
            found = Some(EcpPair::new(a, b, t).unwrap());
            false
        });
        if let Some(pair) = found {
            return Ok(SearchOutcome::Found(Box::new(pair)));
        }
        if stopped {
            // the only other stop reason is the budget
            return Ok(SearchOutcome::Exhausted);
        }
        // this extension fully enumerated without a pair; try the next
    }
    Ok(SearchOutcome::FoundNone)
}

/// Visit every full-rank r x n matrix in reduced row echelon form over the
/// field. The visitor returns false to stop early; the function returns
/// true when it was stopped.
fn for_each_rref(
    f: &crate::gf::Field,
    n: usize,
    r: usize,
    visit: &mut dyn FnMut(&Matrix) -> bool,
) -> bool {
    if r > n {
        return false;
    }
    let q = f.order();
    let mut pivots: Vec<usize> = (0..r).collect();
    loop {
        // free positions: to the right of the row's pivot, not a pivot col
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..n).filter(move |j| !pivots.contains(j)).map(move |j| (i, j))
            })
            .collect();
        let mut vals = vec![0u64; free.len()];
        loop {
            let mut m = Matrix::zero(f, r, n);
            for i in 0..r {
                m.set(i, pivots[i], 1);
            }
            for (idx, &(i, j)) in free.iter().enumerate() {
                m.set(i, j, vals[idx]);
            }
            if !visit(&m) {
                return true;
            }
            // odometer over the free values
            let mut pos = 0;
            loop {
                if pos == vals.len() {
                    break;
                }
                vals[pos] += 1;
                if vals[pos] < q {
                    break;
                }
                vals[pos] = 0;
                pos += 1;
            }
            if pos == vals.len() {
                break;
            }
        }
        // next pivot combination
        let mut i = r;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if pivots[i] + (r - i) < n {
                pivots[i] += 1;
                for j in i + 1..r {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Given two verified pairs for the same code, find the coordinatewise
/// scaling x with nonzero entries such that A' = x * A and B' = x^{-1} * B,
/// or None if no such scaling exists.
pub fn ecp_uniqueness_check(
    pair1: &EcpPair,
    pair2: &EcpPair,
    c: &LinearCode,
    t: usize,
) -> Result<Option<Vec<u64>>, EcpError> {
    if pair1.t != t || pair2.t != t {
        return Err(EcpError::ParameterMismatch("pairs have different t".into()));
    }
    if !pair1.verify(c)?.is_ecp() || !pair2.verify(c)?.is_ecp() {
        return Err(EcpError::NotVerified);
    }
    let f = pair1.a.spec().clone();
    if f.as_ref() != pair2.a.spec().as_ref() {
        return Err(EcpError::FieldMismatch);
    }
    let n = pair1.len();
    // x * A subset of A': one linear condition on x per (row of A's
    // generator, row of a parity check of A')
    let h = pair2.a.parity_check();
    let ga = pair1.a.generator();
    let mut rows = Vec::with_capacity(ga.rows() * h.rows());
    for i in 0..ga.rows() {
        for j in 0..h.rows() {
            rows.push((0..n).map(|l| f.mul(ga.get(i, l), h.get(j, l))).collect::<Vec<u64>>());
        }
    }
    let kernel = Matrix::from_rows(&f, rows).kernel();
    let dim = kernel.rows();
    if dim == 0 {
        return Ok(None);
    }
    // scan kernel combinations (first nonzero coefficient fixed to 1) for a
    // vector with all entries nonzero; generically dim = 1
    let q = f.order();
    let cap = 1u64 << 16;
    let mut count = 0u64;
    let mut coeffs = vec![0u64; dim];
    'combo: loop {
        count += 1;
        if count > cap {
            break;
        }
        // advance odometer first so we skip the all-zero combination
        let mut pos = 0;
        loop {
            if pos == dim {
                break 'combo;
            }
            coeffs[pos] += 1;
            if coeffs[pos] < q {
                break;
            }
            coeffs[pos] = 0;
            pos += 1;
        }
        if coeffs.iter().rev().find(|&&x| x != 0) != Some(&1) {
            continue; // normalize: leading coefficient 1, up to global scalar
        }
        let x = kernel.left_mul_vec(&coeffs);
        if x.iter().any(|&v| v == 0) {
            continue;
        }
        if scaled_code(&f, &pair1.a, &x)?.equals(&pair2.a)? {
            let xinv: Vec<u64> = x.iter().map(|&v| f.inv(v).unwrap()).collect();
            if scaled_code(&f, &pair1.b, &xinv)?.equals(&pair2.b)? {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}

/// The code x * C for a nonzero-entry vector x.
pub fn scaled_code(
    f: &crate::gf::Field,
    c: &LinearCode,
    x: &[u64],
) -> Result<LinearCode, EcpError> {
    let rows: Result<Vec<Vec<u64>>, CodeError> =
        (0..c.dim()).map(|i| star(f, c.generator().row(i), x)).collect();
    Ok(LinearCode::from_generator(Matrix::from_rows(f, rows?)))
}
