//! Linear codes over a [`Field`] and the generic code operations: dual,
//! puncture/shorten, star products, minimum distance, MDS tests, stabilizer
//! and scalar extension.
//!
//! Coordinate-set conventions follow the source material: puncturing or
//! shortening AT a set `J` restricts codewords to the complement of `J`
//! (the columns indexed by `J` are deleted). Some textbooks use the
//! opposite convention. The zero code of length n is assigned minimum
//! distance n + 1 by convention so MDS predicates are total.

use thiserror::Error;

use crate::gf::{Field, FieldSpec, GfError};
use crate::linalg::Matrix;

/// Default cap on the number of codewords a distance enumeration may visit.
pub const DEFAULT_DISTANCE_BUDGET: u64 = 1 << 22;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("codes are over different field specs")]
    SpecMismatch,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("coordinate {0} out of range 1..={1}")]
    CoordinateOutOfRange(usize, usize),
    #[error("distance enumeration needs {needed} codewords, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A sorted set of 1-based coordinate indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    indices: Vec<usize>,
}

impl SupportSet {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self, CodeError> {
        indices.sort_unstable();
        indices.dedup();
        for &i in &indices {
            if i == 0 || i > n {
                return Err(CodeError::CoordinateOutOfRange(i, n));
            }
        }
        Ok(SupportSet { indices })
    }

    pub fn empty() -> Self {
        SupportSet { indices: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn is_disjoint(&self, other: &SupportSet) -> bool {
        self.indices.iter().all(|i| !other.contains(*i))
    }

    pub fn union(&self, other: &SupportSet) -> SupportSet {
        let mut v = self.indices.clone();
        v.extend(other.iter());
        v.sort_unstable();
        v.dedup();
        SupportSet { indices: v }
    }

    /// 0-based complement in 1..=n.
    fn complement_zero_based(&self, n: usize) -> Vec<usize> {
        (1..=n).filter(|i| !self.contains(*i)).map(|i| i - 1).collect()
    }
}

/// A length-n linear code stored by the RREF of a generator matrix, so two
/// equal codes have identical internal representations.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: Matrix, // RREF, full row rank
    n: usize,
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}] code over {}", self.n, self.dim(), self.spec())
    }
}

pub fn star(spec: &Field, x: &[u64], y: &[u64]) -> Result<Vec<u64>, CodeError> {
    if x.len() != y.len() {
        return Err(CodeError::LengthMismatch(x.len(), y.len()));
    }
    Ok(x.iter().zip(y).map(|(&a, &b)| spec.mul(a, b)).collect())
}

pub fn weight(v: &[u64]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

pub fn inner_product(spec: &Field, x: &[u64], y: &[u64]) -> u64 {
    debug_assert_eq!(x.len(), y.len());
    let mut acc = 0;
    for (&a, &b) in x.iter().zip(y) {
        acc = spec.add(acc, spec.mul(a, b));
    }
    acc
}

impl LinearCode {
    /// Code spanned by the rows of `gen`; dependent rows are dropped.
    pub fn from_generator(gen: Matrix) -> Self {
        let n = gen.cols();
        LinearCode { gen: gen.rref(), n }
    }

    pub fn zero_code(spec: &Field, n: usize) -> Self {
        LinearCode { gen: Matrix::zero(spec, 0, n), n }
    }

    pub fn full_space(spec: &Field, n: usize) -> Self {
        LinearCode { gen: Matrix::identity(spec, n), n }
    }

    pub fn spec(&self) -> &Field {
        self.gen.spec()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// The canonical (RREF) generator matrix.
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// A parity check matrix: generator of the dual.
    pub fn parity_check(&self) -> Matrix {
        self.dual().gen
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode { gen: self.gen.kernel().rref(), n: self.n }
    }

    pub fn contains_word(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.n);
        // reduce v against the RREF rows
        let f = self.spec();
        let mut v = v.to_vec();
        for r in 0..self.gen.rows() {
            let pc = (0..self.n).find(|&c| self.gen.get(r, c) != 0).unwrap();
            if v[pc] != 0 {
                let factor = v[pc];
                for c in 0..self.n {
                    let t = f.mul(factor, self.gen.get(r, c));
                    v[c] = f.sub(v[c], t);
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &LinearCode) -> Result<bool, CodeError> {
        self.check_compatible(other)?;
        Ok(self.gen.vstack(&other.gen).rank() == self.dim())
    }

    pub fn equals(&self, other: &LinearCode) -> Result<bool, CodeError> {
        self.check_compatible(other)?;
        Ok(self.gen == other.gen)
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<(), CodeError> {
        if self.spec().as_ref() != other.spec().as_ref() {
            return Err(CodeError::SpecMismatch);
        }
        if self.n != other.n {
            return Err(CodeError::LengthMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// True iff no coordinate is identically zero (equivalently d of the
    /// dual exceeds 1).
    pub fn is_nondegenerate(&self) -> bool {
        (0..self.n).all(|c| (0..self.dim()).any(|r| self.gen.get(r, c) != 0))
    }

    /// Exact minimum distance by exhaustive enumeration of codewords up to
    /// scalar multiples. The zero code gets n + 1 by convention.
    pub fn min_distance(&self) -> Result<usize, CodeError> {
        self.min_distance_with_budget(DEFAULT_DISTANCE_BUDGET)
    }

    pub fn min_distance_with_budget(&self, budget: u64) -> Result<usize, CodeError> {
        let k = self.dim();
        if k == 0 {
            return Ok(self.n + 1);
        }
        if k == self.n {
            return Ok(1);
        }
        let q = self.spec().order();
        let needed = count_projective(q, k);
        if needed > budget {
            return Err(CodeError::BudgetExceeded { needed, budget });
        }
        let f = self.spec().clone();
        let mut best = self.n + 1;
        // messages with first nonzero coordinate equal to 1; weight is
        // invariant under scaling
        let mut msg = vec![0u64; k];
        let mut word = vec![0u64; self.n];
        for lead in 0..k {
            msg.iter_mut().for_each(|m| *m = 0);
            msg[lead] = 1;
            loop {
                word.iter_mut().for_each(|w| *w = 0);
                for (r, &m) in msg.iter().enumerate().skip(lead) {
                    if m == 0 {
                        continue;
                    }
                    let row = self.gen.row(r);
                    for (c, &g) in row.iter().enumerate() {
                        word[c] = f.add(word[c], f.mul(m, g));
                    }
                }
                let w = weight(&word);
                if w < best {
                    best = w;
                    if best == 1 {
                        return Ok(1);
                    }
                }
                // odometer over coordinates after `lead`
                let mut pos = k - 1;
                loop {
                    if pos == lead {
                        break;
                    }
                    msg[pos] += 1;
                    if msg[pos] < q {
                        break;
                    }
                    msg[pos] = 0;
                    pos -= 1;
                }
                if pos == lead {
                    break;
                }
            }
        }
        Ok(best)
    }

    /// Decide whether the minimum distance exceeds `w` without enumerating
    /// codewords: d > w exactly when every w columns of a parity-check
    /// matrix are linearly independent. Cost grows with binomial(n, w), so
    /// this suits small thresholds on codes whose codeword count is huge.
    pub fn min_distance_exceeds(&self, w: usize) -> bool {
        if w == 0 {
            return true;
        }
        if w > self.n {
            // only the zero code (d = n + 1 by convention) can qualify
            return self.dim() == 0 && w <= self.n;
        }
        if self.dim() == 0 {
            return true;
        }
        let h = self.parity_check();
        let mut ok = true;
        for_each_combination(self.n, w, &mut |cols| {
            if ok && h.select_cols(cols).rank() < w {
                ok = false;
            }
        });
        ok
    }

    #[cfg(test)]
    pub(crate) fn min_distance_exceeds_oracle(&self, w: usize) -> bool {
        self.min_distance().unwrap() > w
    }

    pub fn is_mds(&self) -> Result<bool, CodeError> {
        let k = self.dim();
        if k == 0 || k == self.n {
            return Ok(true);
        }
        let q = self.spec().order();
        let dist_cost = count_projective(q, k);
        let minor_cost = binomial(self.n as u64, k as u64).saturating_mul((k * k * k) as u64);
        if dist_cost <= DEFAULT_DISTANCE_BUDGET && dist_cost <= minor_cost {
            self.is_mds_via_distance(DEFAULT_DISTANCE_BUDGET)
        } else {
            Ok(self.is_mds_via_minors())
        }
    }

    /// MDS by exact distance: d = n - k + 1.
    pub fn is_mds_via_distance(&self, budget: u64) -> Result<bool, CodeError> {
        Ok(self.min_distance_with_budget(budget)? == self.n - self.dim() + 1)
    }

    /// MDS by the column criterion: every k columns of a generator matrix
    /// are independent.
    pub fn is_mds_via_minors(&self) -> bool {
        let k = self.dim();
        if k == 0 || k == self.n {
            return true;
        }
        let mut ok = true;
        for_each_combination(self.n, k, &mut |cols| {
            if ok && self.gen.select_cols(cols).rank() != k {
                ok = false;
            }
        });
        ok
    }

    /// Restrict codewords to the complement of `J` (delete the columns of J).
    pub fn puncture(&self, j: &SupportSet) -> Result<LinearCode, CodeError> {
        self.check_set(j)?;
        let keep = j.complement_zero_based(self.n);
        Ok(LinearCode::from_generator(self.gen.select_cols(&keep)))
    }

    /// Codewords vanishing on `J`, restricted to the complement of `J`.
    pub fn shorten(&self, j: &SupportSet) -> Result<LinearCode, CodeError> {
        self.check_set(j)?;
        // coefficient vectors alpha with (alpha G)_J = 0
        let j_cols: Vec<usize> = j.iter().map(|i| i - 1).collect();
        let sub = self.gen.select_cols(&j_cols); // k x |J|
        let alphas = sub.transpose().kernel(); // rows: coefficient vectors
        let keep = j.complement_zero_based(self.n);
        let restricted = alphas.mul(&self.gen).select_cols(&keep);
        Ok(LinearCode::from_generator(restricted))
    }

    fn check_set(&self, j: &SupportSet) -> Result<(), CodeError> {
        for i in j.iter() {
            if i == 0 || i > self.n {
                return Err(CodeError::CoordinateOutOfRange(i, self.n));
            }
        }
        Ok(())
    }

    /// Span of all pairwise star products of basis rows.
    pub fn schur_product(&self, other: &LinearCode) -> Result<LinearCode, CodeError> {
        self.check_compatible(other)?;
        let f = self.spec();
        let mut rows = Vec::with_capacity(self.dim() * other.dim());
        for r in 0..self.dim() {
            for s in 0..other.dim() {
                rows.push(star(f, self.gen.row(r), other.gen.row(s))?);
            }
        }
        if rows.is_empty() {
            return Ok(LinearCode::zero_code(f, self.n));
        }
        Ok(LinearCode::from_generator(Matrix::from_rows(f, rows)))
    }

    /// The stabilizer St(C) = { x : x * C is contained in C }, computed as
    /// the kernel of the conditions "x * g is orthogonal to the dual basis"
    /// over all generator rows g.
    pub fn stabilizer(&self) -> LinearCode {
        let f = self.spec();
        let h = self.parity_check();
        let mut rows = Vec::new();
        for r in 0..self.dim() {
            let g = self.gen.row(r);
            for s in 0..h.rows() {
                let hrow = h.row(s);
                rows.push(
                    (0..self.n).map(|c| f.mul(g[c], hrow[c])).collect::<Vec<u64>>(),
                );
            }
        }
        if rows.is_empty() {
            return LinearCode::full_space(f, self.n);
        }
        let conditions = Matrix::from_rows(f, rows);
        LinearCode::from_generator(conditions.kernel())
    }

    /// The same generator matrix over GF(q^m); for m = 1 the code itself.
    pub fn extend_scalars(&self, m: usize) -> Result<LinearCode, CodeError> {
        if m == 1 {
            return Ok(self.clone());
        }
        let ext = FieldSpec::extend(self.spec(), m)?;
        Ok(self.lift_to(&ext))
    }

    /// Reinterpret the generator entries in `ext`, whose base field is this
    /// code's spec (indices are preserved by the constant-polynomial embed).
    pub fn lift_to(&self, ext: &Field) -> LinearCode {
        assert_eq!(
            ext.base().map(|b| b.as_ref()),
            Some(self.spec().as_ref()),
            "target field does not extend the code's field"
        );
        let rows = self.gen.row_vecs();
        LinearCode::from_generator(Matrix::from_rows(ext, rows))
    }

    /// Enumerate all codewords (including zero). Intended for desk-scale
    /// oracles; cost q^k.
    pub fn codewords(&self) -> Vec<Vec<u64>> {
        let k = self.dim();
        let q = self.spec().order();
        let total = q.pow(k as u32);
        let mut out = Vec::with_capacity(total as usize);
        let mut msg = vec![0u64; k];
        for _ in 0..total {
            out.push(self.gen.left_mul_vec(&msg));
            let mut pos = 0;
            while pos < k {
                msg[pos] += 1;
                if msg[pos] < q {
                    break;
                }
                msg[pos] = 0;
                pos += 1;
            }
        }
        out
    }
}

fn count_projective(q: u64, k: usize) -> u64 {
    // (q^k - 1) / (q - 1), saturating
    let mut acc: u64 = 0;
    for _ in 0..k {
        acc = match acc.checked_mul(q).and_then(|v| v.checked_add(1)) {
            Some(v) => v,
            None => return u64::MAX,
        };
    }
    acc
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u64::MAX,
        };
    }
    acc
}

/// Visit every k-subset of {0..n-1} in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            if idx[i] != i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break true;
            }
        };
        if !advanced {
            return;
        }
    }
}
