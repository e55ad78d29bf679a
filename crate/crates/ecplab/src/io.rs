//! Text formats for fields, elements, codes and evaluation specs.
//!
//! Everything is line-oriented and round-trips exactly: any file this
//! module writes parses back to an equal object. Coordinates in error
//! messages are 1-based.

use std::fmt::Write as _;

use thiserror::Error;

use crate::code::LinearCode;
use crate::gf::{Field, FieldSpec, GfError};
use crate::grs::{GrsError, GrsSpec, ProjPoint};
use crate::linalg::Matrix;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Grs(#[from] GrsError),
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Parse { line, msg: msg.into() })
}

/// `GF(p)` for prime fields, `GF(p^m; modulus=c0,...,cm)` for extensions,
/// nesting the base literal in place of `p` for towers.
pub fn format_field(f: &Field) -> String {
    match f.base() {
        None if f.degree() == 1 => format!("GF({})", f.characteristic()),
        None => format!(
            "GF({}^{}; modulus={})",
            f.characteristic(),
            f.degree(),
            f.modulus().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        ),
        Some(base) => format!(
            "GF({}^{}; modulus={})",
            format_field(base),
            f.degree(),
            f.modulus().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        ),
    }
}

/// Parse a field literal as produced by [`format_field`].
pub fn parse_field(s: &str) -> Result<Field, String> {
    let s = s.trim();
    let inner = s
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("expected GF(...), got `{s}`"))?;
    // split the base description from an optional "; modulus=..." tail,
    // skipping over any nested parentheses in a tower base literal
    let mut depth = 0usize;
    let mut semi = None;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ';' if depth == 0 => {
                semi = Some(i);
                break;
            }
            _ => {}
        }
    }
    let (head, modulus) = match semi {
        None => (inner, None),
        Some(i) => {
            let tail = inner[i + 1..].trim();
            let coeffs = tail
                .strip_prefix("modulus=")
                .ok_or_else(|| format!("expected `modulus=`, got `{tail}`"))?;
            let coeffs: Vec<u64> = coeffs
                .split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|e| format!("bad modulus coefficient `{t}`: {e}")))
                .collect::<Result<_, _>>()?;
            (&inner[..i], Some(coeffs))
        }
    };
    // the head is either `p`, `p^m`, or `<nested literal>^m`
    let mut depth = 0usize;
    let mut caret = None;
    for (i, ch) in head.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '^' if depth == 0 => {
                caret = Some(i);
                break;
            }
            _ => {}
        }
    }
    match caret {
        None => {
            if modulus.is_some() {
                return Err("modulus given without an extension degree".into());
            }
            let p: u64 = head.trim().parse().map_err(|e| format!("bad characteristic `{head}`: {e}"))?;
            FieldSpec::make(p, 1).map_err(|e| e.to_string())
        }
        Some(i) => {
            let base_str = head[..i].trim();
            let m: usize =
                head[i + 1..].trim().parse().map_err(|e| format!("bad degree `{}`: {e}", &head[i + 1..]))?;
            let modulus = modulus.ok_or("extension field literal must carry modulus=")?;
            if modulus.len() != m + 1 {
                return Err(format!("modulus has {} coefficients, expected {}", modulus.len(), m + 1));
            }
            if base_str.starts_with("GF(") {
                let base = parse_field(base_str)?;
                let f = FieldSpec::extend(&base, m).map_err(|e| e.to_string())?;
                if f.modulus() != modulus.as_slice() {
                    return Err(format!(
                        "tower modulus {:?} is not the canonical choice {:?}",
                        modulus,
                        f.modulus()
                    ));
                }
                Ok(f)
            } else {
                let p: u64 =
                    base_str.parse().map_err(|e| format!("bad characteristic `{base_str}`: {e}"))?;
                FieldSpec::with_modulus(p, &modulus).map_err(|e| e.to_string())
            }
        }
    }
}

/// `[c0,...,c_{m-1}]` — the coefficient tuple of the element over the
/// base field (base-field element indices).
pub fn format_element(f: &Field, idx: u64) -> String {
    let coeffs = f.elem(idx).coeffs();
    format!("[{}]", coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

pub fn parse_element(f: &Field, tok: &str) -> Result<u64, String> {
    let inner = tok
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| format!("expected element literal [c0,...], got `{tok}`"))?;
    let coeffs: Vec<u64> = inner
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| format!("bad coefficient `{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    if coeffs.len() != f.degree() {
        return Err(format!("element has {} coefficients, field degree is {}", coeffs.len(), f.degree()));
    }
    let base_order = f.base().map_or(f.characteristic(), |b| b.order());
    for &c in &coeffs {
        if c >= base_order {
            return Err(format!("coefficient {c} out of range for base field of order {base_order}"));
        }
    }
    Ok(f.elem_from_coeffs(&coeffs).idx())
}

pub fn format_vector(f: &Field, v: &[u64]) -> String {
    v.iter().map(|&x| format_element(f, x)).collect::<Vec<_>>().join(" ")
}

pub fn parse_vector(f: &Field, s: &str) -> Result<Vec<u64>, String> {
    s.split_whitespace().map(|tok| parse_element(f, tok)).collect()
}

/// Serialize a code: header `code n=<n> k=<k> field=<literal>`, then the
/// k rows of its generator matrix as element literals.
pub fn write_code(c: &LinearCode) -> String {
    let f = c.spec();
    let mut out = String::new();
    writeln!(out, "code n={} k={} field={}", c.len(), c.dim(), format_field(f)).unwrap();
    let g = c.generator();
    for i in 0..g.rows() {
        writeln!(out, "{}", format_vector(f, g.row(i))).unwrap();
    }
    out
}

fn parse_header<'a>(
    line: &'a str,
    lineno: usize,
    kind: &str,
) -> Result<(usize, usize, Field, &'a str), IoError> {
    let rest = match line.strip_prefix(kind) {
        Some(r) => r,
        None => return perr(lineno, format!("expected header starting with `{kind}`")),
    };
    let rest = rest.trim_start();
    let rest = match rest.strip_prefix("n=") {
        Some(r) => r,
        None => return perr(lineno, "expected `n=<n>` in header"),
    };
    let (n_str, rest) = match rest.split_once(char::is_whitespace) {
        Some(p) => p,
        None => return perr(lineno, "header truncated after n="),
    };
    let n: usize = match n_str.parse() {
        Ok(v) => v,
        Err(e) => return perr(lineno, format!("bad n `{n_str}`: {e}")),
    };
    let rest = rest.trim_start();
    let rest = match rest.strip_prefix("k=") {
        Some(r) => r,
        None => return perr(lineno, "expected `k=<k>` in header"),
    };
    let (k_str, rest) = match rest.split_once(char::is_whitespace) {
        Some(p) => p,
        None => return perr(lineno, "header truncated after k="),
    };
    let k: usize = match k_str.parse() {
        Ok(v) => v,
        Err(e) => return perr(lineno, format!("bad k `{k_str}`: {e}")),
    };
    let rest = rest.trim_start();
    let field_str = match rest.strip_prefix("field=") {
        Some(r) => r,
        None => return perr(lineno, "expected `field=<literal>` in header"),
    };
    let f = match parse_field(field_str) {
        Ok(f) => f,
        Err(msg) => return perr(lineno, msg),
    };
    Ok((n, k, f, field_str))
}

/// Parse a code file as written by [`write_code`]. Errors carry 1-based
/// line numbers.
pub fn parse_code(text: &str) -> Result<LinearCode, IoError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (lineno, header) = match lines.next() {
        Some(v) => v,
        None => return perr(1, "empty input"),
    };
    let (n, k, f, _) = parse_header(header.trim(), lineno + 1, "code")?;
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (lineno, line) = match lines.next() {
            Some(v) => v,
            None => return perr(text.lines().count(), format!("expected {k} generator rows")),
        };
        let row = match parse_vector(&f, line) {
            Ok(v) => v,
            Err(msg) => return perr(lineno + 1, msg),
        };
        if row.len() != n {
            return perr(lineno + 1, format!("row has {} entries, expected n={n}", row.len()));
        }
        rows.push(row);
    }
    if let Some((lineno, _)) = lines.next() {
        return perr(lineno + 1, "trailing content after generator rows");
    }
    let c = LinearCode::from_generator(Matrix::from_rows(&f, rows));
    if c.dim() != k {
        return perr(1, format!("generator rows span dimension {}, header says k={k}", c.dim()));
    }
    Ok(c)
}

fn format_point(f: &Field, p: &ProjPoint) -> String {
    match p {
        ProjPoint::Infinity => "inf".to_string(),
        ProjPoint::Finite(x) => format_element(f, *x),
    }
}

/// Serialize an evaluation spec: header `grs n=<n> k=<k> field=<literal>`,
/// then `a:` (points, `inf` allowed) and `b:` (nonzero multipliers).
pub fn write_grs(spec: &GrsSpec) -> String {
    let f = spec.spec();
    let mut out = String::new();
    writeln!(out, "grs n={} k={} field={}", spec.len(), spec.dim(), format_field(f)).unwrap();
    writeln!(
        out,
        "a: {}",
        spec.points().iter().map(|p| format_point(f, p)).collect::<Vec<_>>().join(" ")
    )
    .unwrap();
    writeln!(out, "b: {}", format_vector(f, spec.multipliers())).unwrap();
    out
}

/// Parse a spec file as written by [`write_grs`].
pub fn parse_grs(text: &str) -> Result<GrsSpec, IoError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (lineno, header) = match lines.next() {
        Some(v) => v,
        None => return perr(1, "empty input"),
    };
    let (n, k, f, _) = parse_header(header.trim(), lineno + 1, "grs")?;
    let (a_lineno, a_line) = match lines.next() {
        Some(v) => v,
        None => return perr(lineno + 2, "expected `a:` line"),
    };
    let a_body = match a_line.trim().strip_prefix("a:") {
        Some(r) => r,
        None => return perr(a_lineno + 1, "expected line starting with `a:`"),
    };
    let mut a = Vec::new();
    for tok in a_body.split_whitespace() {
        if tok == "inf" {
            a.push(ProjPoint::Infinity);
        } else {
            match parse_element(&f, tok) {
                Ok(x) => a.push(ProjPoint::Finite(x)),
                Err(msg) => return perr(a_lineno + 1, msg),
            }
        }
    }
    if a.len() != n {
        return perr(a_lineno + 1, format!("a has {} points, expected n={n}", a.len()));
    }
    let (b_lineno, b_line) = match lines.next() {
        Some(v) => v,
        None => return perr(a_lineno + 2, "expected `b:` line"),
    };
    let b_body = match b_line.trim().strip_prefix("b:") {
        Some(r) => r,
        None => return perr(b_lineno + 1, "expected line starting with `b:`"),
    };
    let b = match parse_vector(&f, b_body) {
        Ok(v) => v,
        Err(msg) => return perr(b_lineno + 1, msg),
    };
    if b.len() != n {
        return perr(b_lineno + 1, format!("b has {} multipliers, expected n={n}", b.len()));
    }
    if let Some((lineno, _)) = lines.next() {
        return perr(lineno + 1, "trailing content after b: line");
    }
    Ok(GrsSpec::new(&f, a, b, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn field_literal_roundtrip() {
        for f in [
            FieldSpec::make(7, 1).unwrap(),
            FieldSpec::make(2, 3).unwrap(),
            FieldSpec::with_modulus(3, &[2, 2, 1]).unwrap(),
            FieldSpec::extend(&FieldSpec::make(3, 1).unwrap(), 2).unwrap(),
            FieldSpec::extend(&FieldSpec::make(2, 3).unwrap(), 2).unwrap(),
        ] {
            let lit = format_field(&f);
            let g = parse_field(&lit).unwrap();
            assert_eq!(format_field(&g), lit);
            assert_eq!(g.order(), f.order());
            assert_eq!(g.modulus(), f.modulus());
        }
    }

    #[test]
    fn field_literal_rejects_garbage() {
        assert!(parse_field("GF(6)").is_err());
        assert!(parse_field("GF(2^3)").is_err());
        assert!(parse_field("GF(4^2; modulus=1,1,1)").is_err());
        assert!(parse_field("gf(7)").is_err());
        assert!(parse_field("GF(2^3; modulus=1,1)").is_err());
    }

    #[test]
    fn element_roundtrip_every_element() {
        let f = FieldSpec::extend(&FieldSpec::make(3, 1).unwrap(), 2).unwrap();
        for x in 0..f.order() {
            let lit = format_element(&f, x);
            assert_eq!(parse_element(&f, &lit).unwrap(), x);
        }
        assert!(parse_element(&f, "[3,0]").is_err());
        assert!(parse_element(&f, "[0]").is_err());
        assert!(parse_element(&f, "0").is_err());
    }

    #[test]
    fn code_file_roundtrip_random() {
        let f = FieldSpec::make(5, 1).unwrap();
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..20 {
            let n = rng.gen_range(1..8);
            let k = rng.gen_range(0..=n);
            let rows: Vec<Vec<u64>> =
                (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..5)).collect()).collect();
            let c = LinearCode::from_generator(Matrix::from_rows(&f, rows));
            let text = write_code(&c);
            let c2 = parse_code(&text).unwrap();
            assert!(c.equals(&c2).unwrap());
            // writing is canonical: a second round trip is byte-identical
            assert_eq!(write_code(&c2), text);
        }
    }

    #[test]
    fn code_file_errors_carry_line_numbers() {
        let bad_row = "code n=3 k=2 field=GF(5)\n[1] [0] [2]\n[1] [oops] [0]\n";
        match parse_code(bad_row) {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        let short = "code n=3 k=2 field=GF(5)\n[1] [0]\n[0] [1] [2]\n";
        match parse_code(short) {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad_header = "code n=3 kk=2 field=GF(5)\n";
        assert!(matches!(parse_code(bad_header), Err(IoError::Parse { line: 1, .. })));
    }

    #[test]
    fn grs_file_roundtrip() {
        let f = FieldSpec::make(7, 1).unwrap();
        let spec = GrsSpec::new(
            &f,
            vec![
                ProjPoint::Finite(0),
                ProjPoint::Finite(1),
                ProjPoint::Infinity,
                ProjPoint::Finite(3),
            ],
            vec![1, 2, 3, 4],
            2,
        )
        .unwrap();
        let text = write_grs(&spec);
        let spec2 = parse_grs(&text).unwrap();
        assert_eq!(spec2.points(), spec.points());
        assert_eq!(spec2.multipliers(), spec.multipliers());
        assert_eq!(spec2.dim(), 2);
        assert_eq!(write_grs(&spec2), text);
        assert!(spec.code().equals(&spec2.code()).unwrap());
    }

    #[test]
    fn grs_file_rejects_bad_multiplier() {
        let text = "grs n=3 k=1 field=GF(7)\na: [0] [1] inf\nb: [1] [0] [1]\n";
        assert!(matches!(parse_grs(text), Err(IoError::Grs(_))));
    }

    #[test]
    fn vector_roundtrip_extension_field() {
        let f = FieldSpec::make(2, 3).unwrap();
        let v = vec![0, 3, 7, 1];
        let s = format_vector(&f, &v);
        assert_eq!(parse_vector(&f, &s).unwrap(), v);
    }
}
