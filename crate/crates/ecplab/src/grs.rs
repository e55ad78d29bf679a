//! Generalized Reed-Solomon and generalized Cauchy codes, the projective
//! line with infinity, the GL(2) action on specs, and GRS recognition with
//! field-of-definition descent.
//!
//! Recognition normalizes recovered specs so that a_1 = 0, a_2 = 1,
//! a_{k+1} = infinity and the first Cauchy multiplier is 1, which makes
//! recovered specs canonical and directly comparable.

use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::gf::{Field, GfError};
use crate::linalg::Matrix;

#[derive(Debug, Error)]
pub enum GrsError {
    #[error("evaluation points are not pairwise distinct")]
    RepeatedPoints,
    #[error("column multipliers must be nonzero")]
    ZeroMultiplier,
    #[error("dimension {k} out of range for length {n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("length {n} exceeds q+1 = {max} for this field")]
    LengthExceedsField { n: usize, max: u64 },
    #[error("matrix is singular")]
    Singular,
    #[error("bracket [p,p] is undefined")]
    EqualPoints,
    #[error("code is not MDS; recognition is only defined for MDS inputs")]
    NotMds,
    #[error("recognition requires 2 <= k <= n-2, got k={k}, n={n}")]
    KOutsideRecognitionRange { k: usize, n: usize },
    #[error("trivial construction requires k in {{0, 1, n-1, n}}, got k={0}")]
    KNotTrivial(usize),
    #[error("[n,1] generator has a zero coordinate; code is not MDS")]
    ZeroCoordinate,
    #[error("code has no generator matrix over the base field")]
    NoBaseBasis,
    #[error("field has no base to descend to")]
    NoBaseField,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A point of the projective line over some field: a field element (by
/// index) or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(u64),
    Infinity,
}

impl ProjPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            ProjPoint::Finite(x) => Some(*x),
            ProjPoint::Infinity => None,
        }
    }
}

/// The bracket [p, q]: p - q for finite points, [inf, y] = 1, [x, inf] = -1.
pub fn bracket(spec: &Field, p: ProjPoint, q: ProjPoint) -> Result<u64, GrsError> {
    match (p, q) {
        (ProjPoint::Infinity, ProjPoint::Infinity) => Err(GrsError::EqualPoints),
        (ProjPoint::Finite(x), ProjPoint::Finite(y)) => {
            if x == y {
                Err(GrsError::EqualPoints)
            } else {
                Ok(spec.sub(x, y))
            }
        }
        (ProjPoint::Infinity, ProjPoint::Finite(_)) => Ok(1),
        (ProjPoint::Finite(_), ProjPoint::Infinity) => Ok(spec.neg(1)),
    }
}

/// The first n points of the projective line in the canonical enumeration
/// order: field elements by index, then infinity.
pub fn canonical_points(spec: &Field, n: usize) -> Result<Vec<ProjPoint>, GrsError> {
    let q = spec.order();
    if n as u64 > q + 1 {
        return Err(GrsError::LengthExceedsField { n, max: q + 1 });
    }
    Ok((0..n)
        .map(|i| if (i as u64) < q { ProjPoint::Finite(i as u64) } else { ProjPoint::Infinity })
        .collect())
}

fn check_points_distinct(a: &[ProjPoint]) -> Result<(), GrsError> {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] == a[j] {
                return Err(GrsError::RepeatedPoints);
            }
        }
    }
    Ok(())
}

/// The canonical description (a, b, k) of a GRS code: evaluation points,
/// column multipliers, dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsSpec {
    spec: Field,
    a: Vec<ProjPoint>,
    b: Vec<u64>,
    k: usize,
}

/// The (a, c, k) description of a generalized Cauchy code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchySpec {
    spec: Field,
    a: Vec<ProjPoint>,
    c: Vec<u64>,
    k: usize,
}

impl GrsSpec {
    pub fn new(spec: &Field, a: Vec<ProjPoint>, b: Vec<u64>, k: usize) -> Result<Self, GrsError> {
        let n = a.len();
        if b.len() != n {
            return Err(GrsError::Code(CodeError::LengthMismatch(n, b.len())));
        }
        if k > n {
            return Err(GrsError::KOutOfRange { k, n });
        }
        if n as u64 > spec.order() + 1 {
            return Err(GrsError::LengthExceedsField { n, max: spec.order() + 1 });
        }
        check_points_distinct(&a)?;
        if b.iter().any(|&x| x == 0) {
            return Err(GrsError::ZeroMultiplier);
        }
        Ok(GrsSpec { spec: spec.clone(), a, b, k })
    }

    /// GRS_k over the canonical points with all-ones multipliers.
    pub fn canonical(spec: &Field, n: usize, k: usize) -> Result<Self, GrsError> {
        Self::new(spec, canonical_points(spec, n)?, vec![1; n], k)
    }

    pub fn spec(&self) -> &Field {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.a
    }

    pub fn multipliers(&self) -> &[u64] {
        &self.b
    }

    /// The canonical generator matrix: row i is b * a^i, with the infinity
    /// column equal to (0, ..., 0, b_j)^T.
    pub fn generator(&self) -> Matrix {
        let n = self.len();
        let f = &self.spec;
        let mut g = Matrix::zero(f, self.k, n);
        for j in 0..n {
            match self.a[j] {
                ProjPoint::Finite(x) => {
                    let mut pw = 1u64;
                    for i in 0..self.k {
                        g.set(i, j, f.mul(self.b[j], pw));
                        pw = f.mul(pw, x);
                    }
                }
                ProjPoint::Infinity => {
                    if self.k > 0 {
                        g.set(self.k - 1, j, self.b[j]);
                    }
                }
            }
        }
        g
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::from_generator(self.generator())
    }

    /// The spec (a, b', n-k) of the dual code. The multiplier vector b' is
    /// obtained by solving the orthogonality conditions between the two
    /// canonical generators and verified to have nonzero entries.
    pub fn dual_spec(&self) -> Result<GrsSpec, GrsError> {
        let n = self.len();
        let kd = n - self.k;
        let f = &self.spec;
        if self.k == 0 || kd == 0 {
            return GrsSpec::new(f, self.a.clone(), vec![1; n], kd);
        }
        // rows of the dual's canonical generator with unknown multipliers x:
        // constraints sum_l x_l * u_il * v_jl = 0 where u is the b = 1
        // generator of dimension n-k and v is this spec's generator
        let ones = GrsSpec::new(f, self.a.clone(), vec![1; n], kd)?;
        let u = ones.generator();
        let v = self.generator();
        let mut rows = Vec::with_capacity(kd * self.k);
        for i in 0..kd {
            for j in 0..self.k {
                rows.push((0..n).map(|l| f.mul(u.get(i, l), v.get(j, l))).collect::<Vec<u64>>());
            }
        }
        let kernel = Matrix::from_rows(f, rows).kernel();
        if kernel.rows() != 1 {
            return Err(GrsError::Singular);
        }
        let bp = kernel.row(0).to_vec();
        if bp.iter().any(|&x| x == 0) {
            return Err(GrsError::ZeroMultiplier);
        }
        let dual = GrsSpec::new(f, self.a.clone(), bp, kd)?;
        debug_assert!(dual.code().equals(&self.code().dual()).unwrap());
        Ok(dual)
    }

    /// Transform the spec by a fractional transformation and scalar:
    /// c_i = phi(M, a_i), d_i = lambda * theta(M, a_i)^{k-1} * b_i. The
    /// generated code is unchanged.
    pub fn transform(&self, m: &Moebius, lambda: u64) -> Result<GrsSpec, GrsError> {
        if lambda == 0 {
            return Err(GrsError::ZeroMultiplier);
        }
        let f = &self.spec;
        let mut c = Vec::with_capacity(self.len());
        let mut d = Vec::with_capacity(self.len());
        let e = (self.k as u64).saturating_sub(1);
        for (i, &p) in self.a.iter().enumerate() {
            c.push(m.apply(p));
            let th = m.theta(p);
            d.push(f.mul(lambda, f.mul(f.pow(th, e), self.b[i])));
        }
        GrsSpec::new(f, c, d, self.k)
    }

    /// Normalize so the points at the three given 0-based positions become
    /// (0, 1, infinity); multipliers transform along.
    pub fn normalize_at(&self, positions: [usize; 3]) -> Result<GrsSpec, GrsError> {
        let src = [self.a[positions[0]], self.a[positions[1]], self.a[positions[2]]];
        let dst = [ProjPoint::Finite(0), ProjPoint::Finite(1), ProjPoint::Infinity];
        let m = Moebius::three_points(&self.spec, src, dst)?;
        self.transform(&m, 1)
    }

    /// Re-root the spec over an extension of its field; the constant
    /// embedding preserves element indices, so points and multipliers
    /// carry over unchanged.
    pub fn lift_to(&self, ext: &Field) -> Result<GrsSpec, GrsError> {
        if ext.base().map(|b| b.as_ref()) != Some(self.spec.as_ref()) {
            return Err(GrsError::NoBaseField);
        }
        GrsSpec::new(ext, self.a.clone(), self.b.clone(), self.k)
    }

    pub fn to_cauchy(&self) -> Result<CauchySpec, GrsError> {
        let f = &self.spec;
        let n = self.len();
        let k = self.k;
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let mut prod = self.b[i];
            for t in 0..k {
                if t == i {
                    continue;
                }
                prod = f.mul(prod, bracket(f, self.a[i], self.a[t])?);
            }
            c.push(prod);
        }
        Ok(CauchySpec { spec: f.clone(), a: self.a.clone(), c, k })
    }
}

impl CauchySpec {
    pub fn new(spec: &Field, a: Vec<ProjPoint>, c: Vec<u64>, k: usize) -> Result<Self, GrsError> {
        let n = a.len();
        if c.len() != n {
            return Err(GrsError::Code(CodeError::LengthMismatch(n, c.len())));
        }
        if k > n {
            return Err(GrsError::KOutOfRange { k, n });
        }
        check_points_distinct(&a)?;
        if c.iter().any(|&x| x == 0) {
            return Err(GrsError::ZeroMultiplier);
        }
        Ok(CauchySpec { spec: spec.clone(), a, c, k })
    }

    pub fn spec(&self) -> &Field {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.a
    }

    pub fn multipliers(&self) -> &[u64] {
        &self.c
    }

    /// Systematic generator (I_k | A) with A_ij = c_{k+j} / (c_i [a_{k+j}, a_i]).
    pub fn generator(&self) -> Result<Matrix, GrsError> {
        let f = &self.spec;
        let n = self.len();
        let k = self.k;
        let mut g = Matrix::zero(f, k, n);
        for i in 0..k {
            g.set(i, i, 1);
            for j in 0..n - k {
                let br = bracket(f, self.a[k + j], self.a[i])?;
                let denom = f.mul(self.c[i], br);
                let entry = f.mul(self.c[k + j], f.inv(denom)?);
                g.set(i, k + j, entry);
            }
        }
        Ok(g)
    }

    pub fn code(&self) -> Result<LinearCode, GrsError> {
        Ok(LinearCode::from_generator(self.generator()?))
    }

    pub fn to_grs(&self) -> Result<GrsSpec, GrsError> {
        let f = &self.spec;
        let n = self.len();
        let k = self.k;
        let mut b = Vec::with_capacity(n);
        for i in 0..n {
            let mut prod = 1u64;
            for t in 0..k {
                if t == i {
                    continue;
                }
                prod = f.mul(prod, bracket(f, self.a[i], self.a[t])?);
            }
            b.push(f.mul(self.c[i], f.inv(prod)?));
        }
        GrsSpec::new(f, self.a.clone(), b, k)
    }
}

/// A fractional transformation of the projective line, represented by a
/// 2x2 matrix (A, B; C, D) with nonzero determinant, canonicalized so the
/// first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moebius {
    spec: Field,
    m: [u64; 4], // A, B, C, D
}

impl Moebius {
    pub fn new(spec: &Field, m: [u64; 4]) -> Result<Self, GrsError> {
        let det = spec.sub(spec.mul(m[0], m[3]), spec.mul(m[1], m[2]));
        if det == 0 {
            return Err(GrsError::Singular);
        }
        let lead = m.iter().copied().find(|&x| x != 0).unwrap();
        let inv = spec.inv(lead)?;
        let canon = [
            spec.mul(m[0], inv),
            spec.mul(m[1], inv),
            spec.mul(m[2], inv),
            spec.mul(m[3], inv),
        ];
        Ok(Moebius { spec: spec.clone(), m: canon })
    }

    pub fn identity(spec: &Field) -> Self {
        Moebius { spec: spec.clone(), m: [1, 0, 0, 1] }
    }

    pub fn entries(&self) -> [u64; 4] {
        self.m
    }

    pub fn compose(&self, other: &Moebius) -> Moebius {
        let f = &self.spec;
        let a = &self.m;
        let b = &other.m;
        let prod = [
            f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])),
            f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
            f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])),
            f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3])),
        ];
        Moebius::new(f, prod).expect("product of nonsingular matrices")
    }

    pub fn inverse(&self) -> Moebius {
        let f = &self.spec;
        let [a, b, c, d] = self.m;
        Moebius::new(f, [d, f.neg(b), f.neg(c), a]).expect("nonsingular")
    }

    /// phi(M, z): (Az+B)/(Cz+D) with the projective case analysis.
    pub fn apply(&self, z: ProjPoint) -> ProjPoint {
        let f = &self.spec;
        let [a, b, c, d] = self.m;
        match z {
            ProjPoint::Finite(x) => {
                let den = f.add(f.mul(c, x), d);
                if den == 0 {
                    ProjPoint::Infinity
                } else {
                    let num = f.add(f.mul(a, x), b);
                    ProjPoint::Finite(f.mul(num, f.inv(den).unwrap()))
                }
            }
            ProjPoint::Infinity => {
                if c == 0 {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(f.mul(a, f.inv(c).unwrap()))
                }
            }
        }
    }

    /// theta(M, z): the scaling factor of the homogeneous action, Cz+D when
    /// nonzero and Az+B otherwise; C or A at infinity.
    pub fn theta(&self, z: ProjPoint) -> u64 {
        let f = &self.spec;
        let [a, b, c, d] = self.m;
        match z {
            ProjPoint::Finite(x) => {
                let den = f.add(f.mul(c, x), d);
                if den != 0 {
                    den
                } else {
                    f.add(f.mul(a, x), b)
                }
            }
            ProjPoint::Infinity => {
                if c != 0 {
                    c
                } else {
                    a
                }
            }
        }
    }

    /// The unique fractional transformation sending the `src` triple to the
    /// `dst` triple (each pairwise distinct).
    pub fn three_points(
        spec: &Field,
        src: [ProjPoint; 3],
        dst: [ProjPoint; 3],
    ) -> Result<Moebius, GrsError> {
        check_points_distinct(&src)?;
        check_points_distinct(&dst)?;
        let to_std_src = Self::to_standard(spec, src)?;
        let to_std_dst = Self::to_standard(spec, dst)?;
        Ok(to_std_dst.inverse().compose(&to_std_src))
    }

    /// The transformation sending (a1, a2, a3) to (0, 1, infinity).
    fn to_standard(spec: &Field, t: [ProjPoint; 3]) -> Result<Moebius, GrsError> {
        let f = spec;
        let m = match t {
            [ProjPoint::Infinity, ProjPoint::Finite(a2), ProjPoint::Finite(a3)] => {
                [0, f.sub(a2, a3), 1, f.neg(a3)]
            }
            [ProjPoint::Finite(a1), ProjPoint::Infinity, ProjPoint::Finite(a3)] => {
                [1, f.neg(a1), 1, f.neg(a3)]
            }
            [ProjPoint::Finite(a1), ProjPoint::Finite(a2), ProjPoint::Infinity] => {
                [1, f.neg(a1), 0, f.sub(a2, a1)]
            }
            [ProjPoint::Finite(a1), ProjPoint::Finite(a2), ProjPoint::Finite(a3)] => {
                let u = f.sub(a2, a3);
                let v = f.sub(a2, a1);
                [u, f.neg(f.mul(a1, u)), v, f.neg(f.mul(a3, v))]
            }
            _ => return Err(GrsError::RepeatedPoints),
        };
        Moebius::new(f, m)
    }
}

/// Recognize whether an MDS code with 2 <= k <= n-2 is GRS, returning the
/// normalized spec (a_1, a_2, a_{k+1}) = (0, 1, inf), c_1 = 1, or None.
///
/// The elimination follows the Cauchy-entry equations of the systematic
/// form; because the elimination can produce candidate values even for
/// non-GRS inputs, every entry is re-checked against the reconstructed
/// formula, and that consistency check is the decision procedure.
pub fn recognize_grs(c: &LinearCode) -> Result<Option<GrsSpec>, GrsError> {
    let n = c.len();
    let k = c.dim();
    if k < 2 || k + 2 > n {
        return Err(GrsError::KOutsideRecognitionRange { k, n });
    }
    if !c.is_mds()? {
        return Err(GrsError::NotMds);
    }
    let f = c.spec().clone();
    let g = c.generator(); // RREF; systematic (I_k | P) since C is MDS
    let p = |i: usize, j: usize| g.get(i, k + j); // 0-based into P, k x (n-k)
    let nk = n - k;

    // c_1 = 1; p_{i1} = c_{k+1} / c_i since a_{k+1} = inf
    let c_k1 = p(0, 0);
    let mut cm = vec![0u64; n]; // Cauchy multipliers
    cm[0] = 1;
    for i in 1..k {
        if p(i, 0) == 0 {
            return Ok(None);
        }
        cm[i] = f.mul(c_k1, f.inv(p(i, 0)).unwrap());
    }
    cm[k] = c_k1;

    let mut a = vec![ProjPoint::Infinity; n];
    a[0] = ProjPoint::Finite(0);
    a[1] = ProjPoint::Finite(1);
    a[k] = ProjPoint::Infinity;

    // ratios p_{1j}/p_{2j} determine a_{k+j}, then c_{k+j}
    for j in 1..nk {
        if p(0, j) == 0 || p(1, j) == 0 {
            return Ok(None);
        }
        let rho = f.mul(p(0, j), f.inv(p(1, j)).unwrap());
        // 1 - 1/a_{k+j} = rho / c_2
        let inv_a = f.sub(1, f.mul(rho, f.inv(cm[1]).unwrap()));
        if inv_a == 0 {
            return Ok(None); // would place a second point at infinity
        }
        let akj = f.inv(inv_a).unwrap();
        a[k + j] = ProjPoint::Finite(akj);
        cm[k + j] = f.mul(p(0, j), akj);
    }

    // remaining a_i from column k+2: a_i = a_{k+2} - c_{k+2} / (c_i p_{i2})
    let ProjPoint::Finite(ak2) = a[k + 1] else { return Ok(None) };
    for i in 2..k {
        if p(i, 1) == 0 {
            return Ok(None);
        }
        let denom = f.mul(cm[i], p(i, 1));
        a[i] = ProjPoint::Finite(f.sub(ak2, f.mul(cm[k + 1], f.inv(denom).unwrap())));
    }

    // decision: distinctness, nonzero multipliers, and full entry check
    if check_points_distinct(&a).is_err() || cm.iter().any(|&x| x == 0) {
        return Ok(None);
    }
    for i in 0..k {
        for j in 0..nk {
            let br = match bracket(&f, a[k + j], a[i]) {
                Ok(v) => v,
                Err(_) => return Ok(None),
            };
            let expect = f.mul(cm[k + j], f.inv(f.mul(cm[i], br)).unwrap());
            if p(i, j) != expect {
                return Ok(None);
            }
        }
    }

    let cauchy = CauchySpec::new(&f, a, cm, k)?;
    let spec = cauchy.to_grs()?;
    debug_assert!(spec.code().equals(c).unwrap());
    Ok(Some(spec))
}

/// GRS specs for the trivial dimensions k in {0, 1, n-1, n}.
pub fn trivial_grs(c: &LinearCode) -> Result<GrsSpec, GrsError> {
    let n = c.len();
    let k = c.dim();
    let f = c.spec();
    let a = canonical_points(f, n)?;
    if k == 0 {
        return GrsSpec::new(f, a, vec![1; n], 0);
    }
    if k == n {
        return GrsSpec::new(f, a, vec![1; n], n);
    }
    if k == 1 {
        let g = c.generator().row(0).to_vec();
        if g.iter().any(|&x| x == 0) {
            return Err(GrsError::ZeroCoordinate);
        }
        return GrsSpec::new(f, a, g, 1);
    }
    if k == n - 1 {
        let dual_spec = trivial_grs(&c.dual())?;
        return dual_spec.dual_spec();
    }
    Err(GrsError::KNotTrivial(k))
}

/// Recognition for any dimension: trivial constructions outside 2..=n-2,
/// the Cauchy elimination inside.
pub fn recognize_any(c: &LinearCode) -> Result<Option<GrsSpec>, GrsError> {
    let n = c.len();
    let k = c.dim();
    if k < 2 || k + 2 > n {
        match trivial_grs(c) {
            Ok(spec) => Ok(Some(spec)),
            Err(GrsError::ZeroCoordinate) => Ok(None),
            Err(e) => Err(e),
        }
    } else {
        recognize_grs(c)
    }
}

/// If a code over an extension field has a generator matrix over the base
/// field and is GRS, return its spec re-rooted over the base field.
pub fn descend_field(c: &LinearCode) -> Result<Option<GrsSpec>, GrsError> {
    let ext = c.spec();
    let base = ext.base().ok_or(GrsError::NoBaseField)?.clone();
    let g = c.generator();
    for r in 0..g.rows() {
        for col in 0..g.cols() {
            if !ext.in_base(g.get(r, col)) {
                return Err(GrsError::NoBaseBasis);
            }
        }
    }
    let Some(spec) = recognize_grs(c)? else {
        return Ok(None);
    };
    // the normalized spec is automatically defined over the base field;
    // indices are preserved by the constant-polynomial embedding
    let mut a = Vec::with_capacity(spec.len());
    for &pt in spec.points() {
        match pt {
            ProjPoint::Finite(x) => {
                assert!(ext.in_base(x), "recognized point escapes the base field");
                a.push(ProjPoint::Finite(x));
            }
            ProjPoint::Infinity => a.push(ProjPoint::Infinity),
        }
    }
    for &m in spec.multipliers() {
        assert!(ext.in_base(m), "recognized multiplier escapes the base field");
    }
    Ok(Some(GrsSpec::new(&base, a, spec.multipliers().to_vec(), spec.dim())?))
}
