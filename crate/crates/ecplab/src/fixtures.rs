//! Concrete example and counterexample codes — the nucleus construction in
//! even characteristic, the complete 9-arc code over GF(9), and the
//! two-conics 8-arc — plus the desk-scale main-theorem harness.

use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::code::{CodeError, LinearCode, SupportSet};
use crate::ecp::{build_ecp_for_grs, DecodeOutcome, Decoder, EcpError, SearchOutcome};
use crate::gf::{Field, FieldSpec, GfError};
use crate::grs::{recognize_grs, GrsError, GrsSpec, ProjPoint};
use crate::linalg::Matrix;
use crate::pmds::PmdsError;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("the nucleus construction requires an even prime power q >= 8, got {0}")]
    BadNucleusField(u64),
    #[error("need 5 distinct elements")]
    PointsNotDistinct,
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Grs(#[from] GrsError),
    #[error(transparent)]
    Ecp(#[from] EcpError),
    #[error(transparent)]
    Pmds(#[from] PmdsError),
}

/// Outcome of running one fixture or harness item: the constructed
/// parameters and a named pass/fail list.
#[derive(Clone, Debug)]
pub struct FixtureReport {
    pub name: String,
    /// [n, k, d] of the constructed code, when one was constructed.
    pub params: Option<(usize, usize, usize)>,
    pub assertions: Vec<(String, bool)>,
    pub seed: Option<u64>,
}

impl FixtureReport {
    pub fn all_pass(&self) -> bool {
        self.assertions.iter().all(|(_, ok)| *ok)
    }

    /// One key=value line per field, stable across runs.
    pub fn records(&self) -> String {
        let mut out = String::new();
        writeln!(out, "fixture={}", self.name).unwrap();
        if let Some((n, k, d)) = self.params {
            writeln!(out, "params=[{n},{k},{d}]").unwrap();
        }
        if let Some(seed) = self.seed {
            writeln!(out, "seed={seed}").unwrap();
        }
        for (name, ok) in &self.assertions {
            writeln!(out, "assert.{name}={}", if *ok { "pass" } else { "FAIL" }).unwrap();
        }
        out
    }
}

/// The default evaluation 5-tuple for the nucleus code: the first five
/// powers of the multiplicative generator x of GF(8).
pub fn nucleus_default_points(f: &Field) -> [u64; 5] {
    let g = 2; // the polynomial x generates the multiplicative group of GF(8)
    let mut a = [0u64; 5];
    let mut cur = 1u64;
    for slot in &mut a {
        *slot = cur;
        cur = f.mul(cur, g);
    }
    a
}

/// The [7,3,5] MDS code whose first six columns lie on the conic
/// x0*x2 = x1^2 and whose seventh column is the nucleus of that conic.
/// Even characteristic only; the nucleus exists because every tangent of
/// the conic passes through one common point.
pub fn nucleus_code(f: &Field, a: &[u64; 5]) -> Result<LinearCode, FixtureError> {
    let q = f.order();
    if q < 8 || q % 2 != 0 {
        return Err(FixtureError::BadNucleusField(q));
    }
    for i in 0..5 {
        for j in i + 1..5 {
            if a[i] == a[j] {
                return Err(FixtureError::PointsNotDistinct);
            }
        }
    }
    let row0: Vec<u64> = vec![1, 1, 1, 1, 1, 0, 0];
    let mut row1: Vec<u64> = a.to_vec();
    row1.extend([0, 1]);
    let mut row2: Vec<u64> = a.iter().map(|&x| f.mul(x, x)).collect();
    row2.extend([1, 0]);
    Ok(LinearCode::from_generator(Matrix::from_rows(f, vec![row0, row1, row2])))
}

/// Full nucleus fixture run: parameters, MDS, non-recognition, and the two
/// GRS punctures.
pub fn nucleus_report() -> Result<FixtureReport, FixtureError> {
    let f = FieldSpec::make(2, 3)?;
    let a = nucleus_default_points(&f);
    let c = nucleus_code(&f, &a)?;
    let d = c.min_distance()?;
    let mut assertions = Vec::new();
    assertions.push(("params-7-3-5".into(), c.len() == 7 && c.dim() == 3 && d == 5));
    assertions.push(("is-mds".into(), c.is_mds()?));
    assertions.push(("not-grs".into(), recognize_grs(&c)?.is_none()));
    let i_set = SupportSet::new(vec![6, 7], 7)?;
    let j_set = SupportSet::new(vec![1, 2], 7)?;
    assertions.push(("puncture-67-grs".into(), recognize_grs(&c.puncture(&i_set)?)?.is_some()));
    assertions.push(("puncture-12-grs".into(), recognize_grs(&c.puncture(&j_set)?)?.is_some()));
    Ok(FixtureReport {
        name: "nucleus".into(),
        params: Some((c.len(), c.dim(), d)),
        assertions,
        seed: None,
    })
}

/// The field GF(9) = GF(3)[x]/(x^2 + 2x + 2), in which sigma = x satisfies
/// sigma^2 = sigma + 1.
pub fn glynn_field() -> Result<Field, FixtureError> {
    Ok(FieldSpec::with_modulus(3, &[2, 2, 1])?)
}

/// The [9,5,5] code over GF(9) dual to the displayed parity-check matrix
/// of the complete 9-arc; it is MDS but not GRS and admits no 2-ECP over
/// any extension.
pub fn glynn_code() -> Result<LinearCode, FixtureError> {
    let f = glynn_field()?;
    let sigma = f.elem_from_coeffs(&[0, 1]).idx();
    debug_assert_eq!(f.mul(sigma, sigma), f.add(sigma, 1));
    let s = |k: u64| f.pow(sigma, k);
    let h = Matrix::from_rows(
        &f,
        vec![
            vec![1, 0, 0, 0, 1, 1, 1, 1, 1],
            vec![0, 1, 0, 0, 1, s(5), s(4), s(1), s(2)],
            vec![0, 0, 1, 0, 1, s(4), s(1), s(3), s(5)],
            vec![0, 0, 0, 1, 1, s(1), s(7), s(6), s(4)],
        ],
    );
    Ok(LinearCode::from_generator(h).dual())
}

pub fn glynn_report() -> Result<FixtureReport, FixtureError> {
    let c = glynn_code()?;
    let d = c.min_distance()?;
    let mut assertions = Vec::new();
    assertions.push(("params-9-5-5".into(), c.len() == 9 && c.dim() == 5 && d == 5));
    assertions.push(("is-mds".into(), c.is_mds()?));
    assertions.push(("not-grs".into(), recognize_grs(&c)?.is_none()));
    let search = crate::ecp::search_ecp(&c, 2, 2, 1 << 20)?;
    assertions.push(("no-2-ecp".into(), matches!(search, SearchOutcome::FoundNone)));
    Ok(FixtureReport {
        name: "glynn".into(),
        params: Some((c.len(), c.dim(), d)),
        assertions,
        seed: None,
    })
}

/// All points of the projective plane over f, as normalized homogeneous
/// coordinate triples.
fn plane_points(f: &Field) -> Vec<[u64; 3]> {
    let q = f.order();
    let mut pts = Vec::new();
    for y in 0..q {
        for z in 0..q {
            pts.push([1, y, z]);
        }
    }
    for z in 0..q {
        pts.push([0, 1, z]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// Points of the pencil conic x*y + e*x*z + (-1-e)*y*z = 0.
fn conic_points(f: &Field, e: u64) -> Vec<[u64; 3]> {
    let fe = f.neg(f.add(1, e));
    plane_points(f)
        .into_iter()
        .filter(|p| {
            let xy = f.mul(p[0], p[1]);
            let xz = f.mul(p[0], p[2]);
            let yz = f.mul(p[1], p[2]);
            f.add(xy, f.add(f.mul(e, xz), f.mul(fe, yz))) == 0
        })
        .collect()
}

const PENCIL_BASE: [[u64; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];

/// Search for the two-conics 8-arc: two irreducible conics through four
/// common base points, two extra points on each, no three of the eight
/// collinear. Returns the [8,3,6] code with columns (P1, P2, base x4, P7,
/// P8), or None when the budgeted seeded search finds no witness (q too
/// small).
pub fn two_conics_arc(f: &Field, seed: u64) -> Result<Option<LinearCode>, FixtureError> {
    let q = f.order();
    if q % 2 == 0 || q < 7 {
        // the pencil members x*y + e*xz + (-1-e)*yz are irreducible only
        // when the associated symmetric matrix is nonsingular, which needs
        // odd characteristic
        return Ok(None);
    }
    let mut rng = StdRng::seed_from_u64(seed);
    // irreducible members: determinant of the symmetric matrix is
    // d*e*f/4 with d = 1, so e != 0 and -1-e != 0
    let candidates: Vec<u64> = (1..q).filter(|&e| f.add(1, e) != 0).collect();
    for _attempt in 0..500 {
        let e1 = candidates[rng.gen_range(0..candidates.len())];
        let e2 = candidates[rng.gen_range(0..candidates.len())];
        if e1 == e2 {
            continue;
        }
        let extra1: Vec<[u64; 3]> =
            conic_points(f, e1).into_iter().filter(|p| !PENCIL_BASE.contains(p)).collect();
        let extra2: Vec<[u64; 3]> =
            conic_points(f, e2).into_iter().filter(|p| !PENCIL_BASE.contains(p)).collect();
        if extra1.len() < 2 || extra2.len() < 2 {
            continue;
        }
        let p1 = extra1[rng.gen_range(0..extra1.len())];
        let p2 = extra1[rng.gen_range(0..extra1.len())];
        let p7 = extra2[rng.gen_range(0..extra2.len())];
        let p8 = extra2[rng.gen_range(0..extra2.len())];
        if p1 == p2 || p7 == p8 {
            continue;
        }
        let cols = [p1, p2, PENCIL_BASE[0], PENCIL_BASE[1], PENCIL_BASE[2], PENCIL_BASE[3], p7, p8];
        let rows: Vec<Vec<u64>> =
            (0..3).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let c = LinearCode::from_generator(Matrix::from_rows(f, rows));
        if c.dim() != 3 || !c.is_mds()? {
            continue; // some three of the eight points are collinear
        }
        let i_set = SupportSet::new(vec![7, 8], 8)?;
        let j_set = SupportSet::new(vec![1, 2], 8)?;
        if recognize_grs(&c)?.is_none()
            && recognize_grs(&c.puncture(&i_set)?)?.is_some()
            && recognize_grs(&c.puncture(&j_set)?)?.is_some()
        {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

pub fn two_conics_report(f: &Field, seed: u64) -> Result<FixtureReport, FixtureError> {
    let mut assertions = Vec::new();
    let (params, found) = match two_conics_arc(f, seed)? {
        Some(c) => {
            let d = c.min_distance()?;
            assertions.push(("params-8-3-6".into(), c.len() == 8 && c.dim() == 3 && d == 6));
            assertions.push(("is-mds".into(), c.is_mds()?));
            assertions.push(("not-grs".into(), recognize_grs(&c)?.is_none()));
            let i_set = SupportSet::new(vec![7, 8], 8)?;
            let j_set = SupportSet::new(vec![1, 2], 8)?;
            assertions
                .push(("puncture-78-grs".into(), recognize_grs(&c.puncture(&i_set)?)?.is_some()));
            assertions
                .push(("puncture-12-grs".into(), recognize_grs(&c.puncture(&j_set)?)?.is_some()));
            // the gluing hypothesis k <= n - |I u J| - 2 fails: 3 > 2
            assertions.push(("gluing-hypothesis-violated".into(), 3 > 8 - 4 - 2));
            (Some((c.len(), c.dim(), d)), true)
        }
        None => {
            assertions.push(("found".into(), false));
            (None, false)
        }
    };
    let _ = found;
    Ok(FixtureReport { name: "two-conics".into(), params, assertions, seed: Some(seed) })
}

fn random_grs(f: &Field, n: usize, k: usize, rng: &mut StdRng) -> Result<GrsSpec, FixtureError> {
    let q = f.order();
    let mut pool: Vec<ProjPoint> =
        (0..q).map(ProjPoint::Finite).chain(std::iter::once(ProjPoint::Infinity)).collect();
    for i in (1..pool.len()).rev() {
        pool.swap(i, rng.gen_range(0..=i));
    }
    let b: Vec<u64> = (0..n).map(|_| rng.gen_range(1..q)).collect();
    Ok(GrsSpec::new(f, pool[..n].to_vec(), b, k)?)
}

/// Desk-scale main-theorem verification for one (q, n, t) cell: sampled
/// GRS codes get pairs built, verified and decode-tested; recognition must
/// return a spec whose evaluation sequence also linearizes A and B; and
/// B = (A*C)^perp. For t = 1 a blanket sweep checks that random
/// [n, n-2, 3] MDS codes are all recognized.
pub fn main_theorem_harness(
    params: &[(u64, usize, usize)],
    seed: u64,
) -> Result<Vec<FixtureReport>, FixtureError> {
    let mut reports = Vec::new();
    for &(q, n, t) in params {
        let f = field_of_order(q)?;
        let mut rng = StdRng::seed_from_u64(seed ^ (q << 16) ^ (n as u64) << 8 ^ t as u64);
        let k = n - 2 * t;
        let mut assertions = Vec::new();
        let mut verified = true;
        let mut decoded = true;
        let mut recognized = true;
        let mut same_seq = true;
        let mut b_is_dual_product = true;
        let mut a_params_forced = true;
        for _ in 0..3 {
            let spec = random_grs(&f, n, k, &mut rng)?;
            let c = spec.code();
            let pair = build_ecp_for_grs(&spec)?;
            verified &= pair.verify(&c)?.is_ecp();
            // forced parameters of A: [n, t+1, n-t]
            a_params_forced &=
                pair.a().dim() == t + 1 && pair.a().min_distance()? == n - t;
            let dec = Decoder::new(&c, &pair)?;
            for _ in 0..10 {
                let msg: Vec<u64> = (0..k).map(|_| rng.gen_range(0..q)).collect();
                let cw = c.generator().left_mul_vec(&msg);
                let mut e = vec![0u64; n];
                let w = rng.gen_range(0..=t);
                let mut pos: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    pos.swap(i, rng.gen_range(0..=i));
                }
                for &p in pos.iter().take(w) {
                    e[p] = rng.gen_range(1..q);
                }
                let y: Vec<u64> = (0..n).map(|l| f.add(cw[l], e[l])).collect();
                decoded &= matches!(
                    dec.decode(&y),
                    DecodeOutcome::Decoded { codeword, error } if codeword == cw && error == e
                );
            }
            let rec = recognize_grs(&c)?;
            recognized &= rec.is_some();
            if let Some(rec) = rec {
                same_seq &= sequence_linearizes(&rec, &[pair.a(), pair.b(), &c])?;
            }
            b_is_dual_product &=
                pair.b().equals(&pair.a().schur_product(&c)?.dual())?;
        }
        assertions.push(("pairs-verify".into(), verified));
        assertions.push(("a-params-forced".into(), a_params_forced));
        assertions.push(("decode-sweep".into(), decoded));
        assertions.push(("recognized-grs".into(), recognized));
        assertions.push(("same-evaluation-sequence".into(), same_seq));
        assertions.push(("b-equals-dual-product".into(), b_is_dual_product));
        if t == 1 {
            let mut blanket = true;
            for _ in 0..10 {
                let spec = random_grs(&f, n, n - 2, &mut rng)?;
                blanket &= recognize_grs(&spec.code())?.is_some();
            }
            assertions.push(("t1-blanket-recognition".into(), blanket));
        }
        reports.push(FixtureReport {
            name: format!("main-theorem-q{q}-n{n}-t{t}"),
            params: Some((n, k, 2 * t + 1)),
            assertions,
            seed: Some(seed),
        });
    }
    Ok(reports)
}

/// Whether the recovered evaluation sequence of `spec` also linearizes
/// every code in `codes`: each must be a GRS code over those points for
/// some nonzero multiplier vector.
pub fn sequence_linearizes(
    spec: &GrsSpec,
    codes: &[&LinearCode],
) -> Result<bool, FixtureError> {
    let f = spec.spec();
    let n = spec.len();
    for c in codes {
        let k = c.dim();
        // multipliers x: the rows of GRS_k(a, x) must be orthogonal to a
        // parity check of C
        let ones = GrsSpec::new(f, spec.points().to_vec(), vec![1; n], k)?;
        let v = ones.generator();
        let h = c.parity_check();
        let mut rows = Vec::new();
        for i in 0..v.rows() {
            for j in 0..h.rows() {
                rows.push((0..n).map(|l| f.mul(v.get(i, l), h.get(j, l))).collect::<Vec<u64>>());
            }
        }
        let kernel = Matrix::from_rows(f, rows).kernel();
        let mut ok = false;
        for r in 0..kernel.rows() {
            let x = kernel.row(r);
            if x.iter().all(|&v| v != 0) {
                let cand = GrsSpec::new(f, spec.points().to_vec(), x.to_vec(), k)?;
                if cand.code().equals(c)? {
                    ok = true;
                    break;
                }
            }
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Construct a field of the given order (prime or prime power up to the
/// supported cap), choosing the canonical modulus.
pub fn field_of_order(q: u64) -> Result<Field, FixtureError> {
    for p in 2..=q {
        if q % p != 0 {
            continue;
        }
        let mut m = 0usize;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(FixtureError::Field(GfError::NotPrime(q)));
        }
        return Ok(FieldSpec::make(p, m)?);
    }
    Err(FixtureError::Field(GfError::NotPrime(q)))
}

/// The named fixture codes, for export in the code-file format. The
/// two-conics entry is present only when the seeded search succeeds.
pub fn exportable_codes(seed: u64) -> Result<Vec<(&'static str, LinearCode)>, FixtureError> {
    let f8 = FieldSpec::make(2, 3)?;
    let mut out = vec![
        ("nucleus", nucleus_code(&f8, &nucleus_default_points(&f8))?),
        ("glynn", glynn_code()?),
    ];
    let f11 = FieldSpec::make(11, 1)?;
    if let Some(c) = two_conics_arc(&f11, seed)? {
        out.push(("two-conics", c));
    }
    Ok(out)
}

/// Run every named fixture with the given seed, in a fixed order.
pub fn run_all(seed: u64) -> Result<Vec<FixtureReport>, FixtureError> {
    let mut reports = vec![nucleus_report()?, glynn_report()?];
    let f11 = FieldSpec::make(11, 1)?;
    reports.push(two_conics_report(&f11, seed)?);
    reports.extend(main_theorem_harness(&[(11, 9, 1), (11, 9, 2), (8, 7, 2)], seed)?);
    Ok(reports)
}
