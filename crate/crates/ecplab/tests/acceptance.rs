//! End-to-end acceptance suite. Each test covers one numbered criterion
//! and prints a single pass/fail line (visible with `--nocapture`).
//!
//! Every criterion function returns a deterministic report string; the
//! determinism criterion re-runs the others with the same seeds and
//! demands byte-equal reports.

use std::fmt::Write as _;
use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ecplab::code::{for_each_combination, LinearCode};
use ecplab::ecp::{build_ecp_for_grs, search_ecp, verify_ecp_with_budget, DecodeOutcome, Decoder, SearchOutcome};
use ecplab::fixtures::{
    field_of_order, glynn_report, nucleus_report, sequence_linearizes, two_conics_arc,
};
use ecplab::gf::{Field, FieldSpec};
use ecplab::grs::{recognize_grs, GrsSpec, ProjPoint};
use ecplab::linalg::Matrix;
use ecplab::{code::SupportSet, pmds};

fn record(rep: &mut String, name: &str, ok: bool) {
    writeln!(rep, "{name}={}", if ok { "pass" } else { "FAIL" }).unwrap();
}

fn conclude(number: u32, title: &str, rep: &str) {
    let ok = !rep.contains("FAIL");
    println!("criterion {number} ({title}): {}", if ok { "pass" } else { "fail" });
    assert!(ok, "criterion {number} report:\n{rep}");
}

fn random_grs(f: &Field, n: usize, k: usize, rng: &mut StdRng) -> GrsSpec {
    let q = f.order();
    let mut pool: Vec<ProjPoint> =
        (0..q).map(ProjPoint::Finite).chain(std::iter::once(ProjPoint::Infinity)).collect();
    for i in (1..pool.len()).rev() {
        pool.swap(i, rng.gen_range(0..=i));
    }
    let b: Vec<u64> = (0..n).map(|_| rng.gen_range(1..q)).collect();
    GrsSpec::new(f, pool[..n].to_vec(), b, k).unwrap()
}

fn random_code(f: &Field, n: usize, k: usize, rng: &mut StdRng) -> LinearCode {
    let q = f.order();
    loop {
        let rows: Vec<Vec<u64>> =
            (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
        let c = LinearCode::from_generator(Matrix::from_rows(f, rows));
        if c.dim() == k {
            return c;
        }
    }
}

// ---------------------------------------------------------------- criterion 1

fn crit1() -> String {
    let mut rep = String::new();
    let fields: Vec<Field> = vec![
        FieldSpec::make(5, 1).unwrap(),
        FieldSpec::make(7, 1).unwrap(),
        FieldSpec::make(2, 3).unwrap(),
        FieldSpec::make(3, 2).unwrap(),
        FieldSpec::make(11, 1).unwrap(),
        FieldSpec::make(13, 1).unwrap(),
    ];
    for f in &fields {
        let q = f.order();
        let mut ok = true;
        for a in 0..q {
            ok &= f.add(a, 0) == a && f.mul(a, 1) == a;
            ok &= f.add(a, f.neg(a)) == 0;
            if a != 0 {
                ok &= f.mul(a, f.inv(a).unwrap()) == 1;
            }
            // x^q = x
            ok &= f.pow(a, q) == a;
            for b in 0..q {
                ok &= f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
                for c in 0..q {
                    ok &= f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
                    ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
                    ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
                }
            }
        }
        record(&mut rep, &format!("axioms-gf{q}"), ok);
    }
    // GF(9) with sigma^2 = sigma + 1 is constructible
    let f9 = FieldSpec::with_modulus(3, &[2, 2, 1]).unwrap();
    let sigma = f9.elem_from_coeffs(&[0, 1]).idx();
    record(&mut rep, "gf9-sigma-squared-is-sigma-plus-one", f9.mul(sigma, sigma) == f9.add(sigma, 1));
    rep
}

// ---------------------------------------------------------------- criterion 2

fn crit2_fresh() -> String {
    let mut rep = String::new();
    let mut rng = StdRng::seed_from_u64(202);
    let qs = [5u64, 7, 8, 9, 11, 13];
    let mut violations = 0;
    for i in 0..50 {
        // keep the exhaustive enumeration within budget: (q^k - 1)/(q - 1)
        // codewords up to scale
        let (f, n, k) = loop {
            let q = qs[rng.gen_range(0..qs.len())];
            let n = rng.gen_range(2..=10.min(q as usize + 1));
            let k = rng.gen_range(1..=n);
            let mut cost = 1u64;
            let mut over = false;
            for _ in 0..k {
                cost = cost.saturating_mul(q);
                if cost > 1 << 21 {
                    over = true;
                    break;
                }
            }
            if !over {
                break (field_of_order(q).unwrap(), n, k);
            }
        };
        let spec = random_grs(&f, n, k, &mut rng);
        let d = spec.code().min_distance().unwrap();
        let ok = d == n - k + 1;
        if !ok {
            violations += 1;
        }
        writeln!(rep, "spec{i} q={} n={n} k={k} d={d}", f.order()).unwrap();
    }
    record(&mut rep, "mds-violations-zero", violations == 0);
    rep
}

// ---------------------------------------------------------------- criterion 3

const ECP_INSTANCES: [(u64, usize, usize); 3] = [(11, 9, 5), (8, 7, 3), (13, 12, 6)];

fn ecp_instance(q: u64, n: usize, k: usize, seed: u64) -> (LinearCode, ecplab::ecp::EcpPair) {
    let f = field_of_order(q).unwrap();
    let mut rng = StdRng::seed_from_u64(seed);
    let spec = random_grs(&f, n, k, &mut rng);
    let c = spec.code();
    let pair = build_ecp_for_grs(&spec).unwrap();
    (c, pair)
}

fn crit3_fresh() -> String {
    let mut rep = String::new();
    for &(q, n, k) in &ECP_INSTANCES {
        let t = (n - k) / 2;
        let (c, pair) = ecp_instance(q, n, k, 303);
        let r = verify_ecp_with_budget(pair.a(), pair.b(), &c, t, 1 << 25).unwrap();
        record(&mut rep, &format!("q{q}-n{n}-k{k}-e1"), r.e1);
        record(&mut rep, &format!("q{q}-n{n}-k{k}-e2"), r.e2);
        record(&mut rep, &format!("q{q}-n{n}-k{k}-e3"), r.e3);
        record(&mut rep, &format!("q{q}-n{n}-k{k}-e4"), r.e4);
    }
    rep
}

// ---------------------------------------------------------------- criterion 4

fn crit4_fresh() -> String {
    let mut rep = String::new();
    for &(q, n, k) in &ECP_INSTANCES {
        let t = (n - k) / 2;
        let f = field_of_order(q).unwrap();
        let mut rng = StdRng::seed_from_u64(404);
        let spec = random_grs(&f, n, k, &mut rng);
        let c = spec.code();
        let pair = build_ecp_for_grs(&spec).unwrap();
        let dec = Decoder::new(&c, &pair).unwrap();
        let g = c.generator();
        let mut decodes = 0u64;
        let mut failures = 0u64;
        for _ in 0..200 {
            let msg: Vec<u64> = (0..k).map(|_| rng.gen_range(0..q)).collect();
            let cw = g.left_mul_vec(&msg);
            let mut y = cw.clone();
            for w in 0..=t {
                for_each_combination(n, w, &mut |supp| {
                    // odometer over the (q-1)^w nonzero error values
                    let mut vals = vec![1u64; w];
                    loop {
                        for (i, &p) in supp.iter().enumerate() {
                            y[p] = f.add(cw[p], vals[i]);
                        }
                        decodes += 1;
                        let good = match dec.decode(&y) {
                            DecodeOutcome::Decoded { codeword, error } => {
                                codeword == cw
                                    && supp.iter().enumerate().all(|(i, &p)| error[p] == vals[i])
                                    && error.iter().filter(|&&e| e != 0).count() == w
                            }
                            DecodeOutcome::Failure(_) => false,
                        };
                        if !good {
                            failures += 1;
                        }
                        for &p in supp {
                            y[p] = cw[p];
                        }
                        let mut pos = w;
                        loop {
                            if pos == 0 {
                                break;
                            }
                            vals[pos - 1] += 1;
                            if vals[pos - 1] < q {
                                break;
                            }
                            vals[pos - 1] = 1;
                            pos -= 1;
                        }
                        if pos == 0 {
                            break;
                        }
                    }
                });
            }
        }
        writeln!(rep, "q{q}-n{n}-k{k} decodes={decodes}").unwrap();
        record(&mut rep, &format!("q{q}-n{n}-k{k}-zero-failures"), failures == 0);

        // cross-check against exhaustive nearest-codeword search
        let mut agree = true;
        for _ in 0..20 {
            let msg: Vec<u64> = (0..k).map(|_| rng.gen_range(0..q)).collect();
            let cw = g.left_mul_vec(&msg);
            let w = rng.gen_range(0..=t);
            let mut pos: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                pos.swap(i, rng.gen_range(0..=i));
            }
            let mut y = cw.clone();
            for &p in pos.iter().take(w) {
                y[p] = f.add(y[p], rng.gen_range(1..q));
            }
            let decoded = match dec.decode(&y) {
                DecodeOutcome::Decoded { codeword, .. } => codeword,
                DecodeOutcome::Failure(r) => panic!("unexpected decode failure: {r}"),
            };
            let (nearest, dist, ties) = nearest_codeword(&c, &y);
            agree &= decoded == nearest && ties == 1;
            agree &= y.iter().zip(&decoded).filter(|(a, b)| a != b).count() == dist;
        }
        record(&mut rep, &format!("q{q}-n{n}-k{k}-nearest-codeword-agrees"), agree);
    }
    rep
}

/// Exhaustive nearest-codeword search: the closest codeword to y, its
/// distance, and the number of codewords at that distance.
fn nearest_codeword(c: &LinearCode, y: &[u64]) -> (Vec<u64>, usize, usize) {
    let f = c.spec();
    let q = f.order();
    let k = c.dim();
    let n = c.len();
    let g = c.generator();
    let mut msg = vec![0u64; k];
    let mut best = vec![0u64; n];
    let mut best_d = usize::MAX;
    let mut ties = 0usize;
    loop {
        let cw = g.left_mul_vec(&msg);
        let d = y.iter().zip(&cw).filter(|(a, b)| a != b).count();
        if d < best_d {
            best = cw;
            best_d = d;
            ties = 1;
        } else if d == best_d {
            ties += 1;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                break;
            }
            msg[pos - 1] += 1;
            if msg[pos - 1] < q {
                break;
            }
            msg[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }
    (best, best_d, ties)
}

// ---------------------------------------------------------------- criterion 5

fn crit5_fresh() -> String {
    let mut rep = String::new();
    let mut rng = StdRng::seed_from_u64(505);
    let cells: [(usize, u64, usize); 3] = [(6, 7, 17), (8, 9, 17), (10, 11, 16)];
    for (n, q, count) in cells {
        let f = field_of_order(q).unwrap();
        let mut all_ok = true;
        for _ in 0..count {
            // rejection-sample an [n, n-2] MDS code (distance 3)
            let c = loop {
                let c = random_code(&f, n, n - 2, &mut rng);
                if c.is_mds().unwrap() {
                    break c;
                }
            };
            match recognize_grs(&c).unwrap() {
                Some(spec) => all_ok &= spec.code().equals(&c).unwrap(),
                None => all_ok = false,
            }
        }
        record(&mut rep, &format!("t1-recognition-n{n}-q{q}-all-{count}"), all_ok);
    }
    rep
}

// ---------------------------------------------------------------- criterion 6

fn crit6_fresh() -> String {
    let mut rep = String::new();
    let nuc = nucleus_report().unwrap();
    record(&mut rep, "nucleus-7-3-5", nuc.params == Some((7, 3, 5)));
    for (name, ok) in &nuc.assertions {
        record(&mut rep, &format!("nucleus-{name}"), *ok);
    }
    let gly = glynn_report().unwrap();
    record(&mut rep, "glynn-9-5-5", gly.params == Some((9, 5, 5)));
    for (name, ok) in &gly.assertions {
        record(&mut rep, &format!("glynn-{name}"), *ok);
    }
    rep
}

// ---------------------------------------------------------------- criterion 7

fn crit7_fresh() -> String {
    let mut rep = String::new();
    let mut rng = StdRng::seed_from_u64(707);
    let mut recognized = true;
    let mut same_seq = true;
    let mut b_dual = true;
    for i in 0..20 {
        let (q, t) = if i % 2 == 0 { (11u64, 2usize) } else { (13, 3) };
        let f = field_of_order(q).unwrap();
        let n = rng.gen_range(2 * t + 2..=12.min(q as usize + 1));
        let k = n - 2 * t;
        let spec = random_grs(&f, n, k, &mut rng);
        let c = spec.code();
        let pair = build_ecp_for_grs(&spec).unwrap();
        match recognize_grs(&c).unwrap() {
            Some(rec) => {
                same_seq &= sequence_linearizes(&rec, &[pair.a(), pair.b(), &c]).unwrap();
            }
            None => recognized = false,
        }
        b_dual &= pair.b().equals(&pair.a().schur_product(&c).unwrap().dual()).unwrap();
    }
    record(&mut rep, "round-trip-recognized-all-20", recognized);
    record(&mut rep, "round-trip-same-sequence", same_seq);
    record(&mut rep, "round-trip-b-equals-dual-product", b_dual);
    rep
}

// ---------------------------------------------------------------- criterion 8

fn crit8_fresh() -> String {
    let mut rep = String::new();
    for q in [5u64, 7, 11] {
        let f = field_of_order(q).unwrap();
        let mut rng = StdRng::seed_from_u64(808 + q);
        let n = 8;
        let mut gap_ok = true;
        let mut slack_ok = true;
        let mut pmds_checked = 0usize;
        let mut pmds_ok = true;
        for _ in 0..100 {
            let a = random_code(&f, n, rng.gen_range(1..=n), &mut rng);
            let b = random_code(&f, n, rng.gen_range(1..=n), &mut rng);
            let gap = pmds::product_singleton_gap(&a, &b).unwrap();
            let slack = pmds::kneser_slack(&a, &b).unwrap();
            gap_ok &= gap >= 0;
            slack_ok &= slack >= 0;
            if gap == 0 && n > a.dim() + b.dim() {
                pmds_checked += 1;
                pmds_ok &= pmds::pmds_consequences(&a, &b).unwrap().all_hold();
            }
        }
        record(&mut rep, &format!("gf{q}-gap-nonnegative-100"), gap_ok);
        record(&mut rep, &format!("gf{q}-slack-nonnegative-100"), slack_ok);
        writeln!(rep, "gf{q}-pmds-pairs-checked={pmds_checked}").unwrap();
        record(&mut rep, &format!("gf{q}-pmds-consequences"), pmds_ok);
    }
    rep
}

// ---------------------------------------------------------------- criterion 9

fn crit9_fresh() -> String {
    let mut rep = String::new();
    let f = field_of_order(11).unwrap();
    let mut rng = StdRng::seed_from_u64(909);
    let mut glue_ok = true;
    for _ in 0..20 {
        let n = rng.gen_range(8..=10usize);
        // the gluing hypothesis: 2 <= k <= n - |I u J| - 2 with |I u J| = 4
        let k = rng.gen_range(2..=n - 6);
        let spec = random_grs(&f, n, k, &mut rng);
        let c = spec.code();
        let i_set = SupportSet::new(vec![n - 1, n], n).unwrap();
        let j_set = SupportSet::new(vec![1, 2], n).unwrap();
        glue_ok &= recognize_grs(&c.puncture(&i_set).unwrap()).unwrap().is_some();
        glue_ok &= recognize_grs(&c.puncture(&j_set).unwrap()).unwrap().is_some();
        glue_ok &= recognize_grs(&c).unwrap().is_some();
    }
    record(&mut rep, "gluing-20-random-grs", glue_ok);

    // hypothesis necessity: both counterexamples have GRS punctures at
    // disjoint pairs yet are not GRS, with k > n - |I u J| - 2
    let f8 = FieldSpec::make(2, 3).unwrap();
    let nuc = ecplab::fixtures::nucleus_code(&f8, &ecplab::fixtures::nucleus_default_points(&f8))
        .unwrap();
    let i_set = SupportSet::new(vec![6, 7], 7).unwrap();
    let j_set = SupportSet::new(vec![1, 2], 7).unwrap();
    let nuc_demo = recognize_grs(&nuc.puncture(&i_set).unwrap()).unwrap().is_some()
        && recognize_grs(&nuc.puncture(&j_set).unwrap()).unwrap().is_some()
        && recognize_grs(&nuc).unwrap().is_none()
        && 3 > 7 - 4 - 2;
    record(&mut rep, "nucleus-violates-hypothesis-and-fails", nuc_demo);

    let arc = two_conics_arc(&f, 7).unwrap().expect("arc search succeeds over GF(11)");
    let i_set = SupportSet::new(vec![7, 8], 8).unwrap();
    let j_set = SupportSet::new(vec![1, 2], 8).unwrap();
    let arc_demo = recognize_grs(&arc.puncture(&i_set).unwrap()).unwrap().is_some()
        && recognize_grs(&arc.puncture(&j_set).unwrap()).unwrap().is_some()
        && recognize_grs(&arc).unwrap().is_none()
        && 3 > 8 - 4 - 2;
    record(&mut rep, "two-conics-violates-hypothesis-and-fails", arc_demo);
    rep
}

// ------------------------------------------------------------------ caching

macro_rules! cached {
    ($cache:ident, $fresh:ident) => {{
        static $cache: OnceLock<String> = OnceLock::new();
        $cache.get_or_init($fresh).as_str()
    }};
}

fn crit2() -> &'static str {
    cached!(C2, crit2_fresh)
}
fn crit3() -> &'static str {
    cached!(C3, crit3_fresh)
}
fn crit4() -> &'static str {
    cached!(C4, crit4_fresh)
}
fn crit5() -> &'static str {
    cached!(C5, crit5_fresh)
}
fn crit6() -> &'static str {
    cached!(C6, crit6_fresh)
}
fn crit7() -> &'static str {
    cached!(C7, crit7_fresh)
}
fn crit8() -> &'static str {
    cached!(C8, crit8_fresh)
}
fn crit9() -> &'static str {
    cached!(C9, crit9_fresh)
}

// -------------------------------------------------------------------- tests

#[test]
fn criterion_01_field_sanity() {
    conclude(1, "field sanity", &crit1());
}

#[test]
fn criterion_02_grs_codes_are_mds() {
    conclude(2, "GRS codes are MDS", crit2());
}

#[test]
fn criterion_03_ecp_verification() {
    conclude(3, "pair verification on the three instances", crit3());
}

#[test]
fn criterion_04_decoder_sweep() {
    conclude(4, "decoder sweep and nearest-codeword cross-check", crit4());
}

#[test]
fn criterion_05_t1_recognition() {
    conclude(5, "distance-3 MDS codes are GRS", crit5());
}

#[test]
fn criterion_06_counterexamples() {
    conclude(6, "nucleus and 9-arc counterexamples", crit6());
}

#[test]
fn criterion_07_main_theorem_round_trip() {
    conclude(7, "main theorem round trip", crit7());
}

#[test]
fn criterion_08_product_bounds() {
    conclude(8, "product Singleton and Kneser bounds", crit8());
}

#[test]
fn criterion_09_gluing() {
    conclude(9, "gluing and hypothesis necessity", crit9());
}

#[test]
fn criterion_10_determinism() {
    let mut rep = String::new();
    record(&mut rep, "crit2-byte-equal", crit2() == crit2_fresh());
    record(&mut rep, "crit3-byte-equal", crit3() == crit3_fresh());
    record(&mut rep, "crit4-byte-equal", crit4() == crit4_fresh());
    record(&mut rep, "crit5-byte-equal", crit5() == crit5_fresh());
    record(&mut rep, "crit6-byte-equal", crit6() == crit6_fresh());
    record(&mut rep, "crit7-byte-equal", crit7() == crit7_fresh());
    record(&mut rep, "crit8-byte-equal", crit8() == crit8_fresh());
    record(&mut rep, "crit9-byte-equal", crit9() == crit9_fresh());
    conclude(10, "determinism", &rep);
}

// The search completeness shortcut is cross-validated on tiny instances by
// full enumeration elsewhere; here we only pin the counterexample outcome.
#[test]
fn glynn_search_is_negative() {
    let c = ecplab::fixtures::glynn_code().unwrap();
    assert!(matches!(search_ecp(&c, 2, 2, 1 << 20).unwrap(), SearchOutcome::FoundNone));
}
