//! Plain-text model files.
//!
//! ```text
//! name: hopf_surface
//! dim: 4
//! lck: true
//! d: 2 <- 1 * 3 ^ 4
//! J:
//!   0 -1 0 0
//!   1 0 0 0
//!   0 0 0 -1
//!   0 0 1 0
//! theta: -1 0 0 0
//! omega: 1 ^ 2 : 1
//! ```
//!
//! Indices are 1-based. Scalars are `p`, `p/q` or Gaussian `a+bi`; decimals
//! are rejected. `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::model::{Model, StructureTerm};
use crate::scalar::Scalar;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn scalar(line: usize, s: &str) -> Result<Scalar> {
    s.parse::<Scalar>().map_err(|_| perr(line, format!("invalid scalar {s:?}")))
}

fn index(line: usize, s: &str, dim: usize) -> Result<usize> {
    let k: usize = s.trim().parse().map_err(|_| perr(line, format!("invalid index {s:?}")))?;
    if k == 0 || k > dim {
        return Err(perr(line, format!("index {k} out of range 1..={dim}")));
    }
    Ok(k - 1)
}

fn pair(line: usize, s: &str, dim: usize) -> Result<(usize, usize)> {
    let (a, b) = s.split_once('^').ok_or_else(|| perr(line, format!("expected i ^ j, got {s:?}")))?;
    let (i, j) = (index(line, a, dim)?, index(line, b, dim)?);
    if i >= j {
        return Err(perr(line, format!("need i < j in {s:?}")));
    }
    Ok((i, j))
}

pub fn parse(text: &str) -> Result<Model> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    // dim first, since every index check needs it
    let mut dim = None;
    for &(ln, l) in &lines {
        if let Some(v) = l.strip_prefix("dim:") {
            if dim.is_some() {
                return Err(perr(ln, "duplicate dim"));
            }
            let n: usize = v.trim().parse().map_err(|_| perr(ln, format!("invalid dim {:?}", v.trim())))?;
            if n == 0 || n > 16 {
                return Err(perr(ln, format!("dim {n} outside 1..=16")));
            }
            dim = Some(n);
        }
    }
    let n = dim.ok_or(Error::MissingField("dim"))?;

    let mut name = None;
    let mut lck = None;
    let mut structure = Vec::new();
    let mut seen = BTreeSet::new();
    let mut j = None;
    let mut theta = None;
    let mut omega: Vec<(usize, usize, Scalar)> = Vec::new();

    let mut it = lines.iter().peekable();
    while let Some(&(ln, l)) = it.next() {
        let (key, rest) = l.split_once(':').ok_or_else(|| perr(ln, format!("expected key: value, got {l:?}")))?;
        let rest = rest.trim();
        match key.trim() {
            "dim" => {}
            "name" => {
                if name.replace(rest.to_string()).is_some() {
                    return Err(perr(ln, "duplicate name"));
                }
            }
            "lck" => {
                let v = match rest {
                    "true" => true,
                    "false" => false,
                    _ => return Err(perr(ln, format!("lck must be true or false, got {rest:?}"))),
                };
                if lck.replace(v).is_some() {
                    return Err(perr(ln, "duplicate lck"));
                }
            }
            "d" => {
                let (k, rhs) = rest.split_once("<-").ok_or_else(|| perr(ln, "expected k <- c * i ^ j"))?;
                let target = index(ln, k, n)?;
                let (c, ij) = rhs.split_once('*').ok_or_else(|| perr(ln, "expected k <- c * i ^ j"))?;
                let coeff = scalar(ln, c.trim())?;
                let (i, jj) = pair(ln, ij, n)?;
                if !seen.insert((target, i, jj)) {
                    return Err(perr(ln, format!("duplicate structure triple d: {} <- * {} ^ {}", target + 1, i + 1, jj + 1)));
                }
                if !coeff.is_zero() {
                    structure.push(StructureTerm { target, i, j: jj, coeff });
                }
            }
            "J" => {
                if j.is_some() {
                    return Err(perr(ln, "duplicate J"));
                }
                if !rest.is_empty() {
                    return Err(perr(ln, "J rows go on the following lines"));
                }
                let mut rows = Vec::with_capacity(n);
                for _ in 0..n {
                    let &(rl, row) = it.next().ok_or_else(|| perr(ln, format!("J needs {n} rows")))?;
                    let vals = row.split_whitespace().map(|s| scalar(rl, s)).collect::<Result<Vec<_>>>()?;
                    if vals.len() != n {
                        return Err(perr(rl, format!("J row has {} entries, expected {n}", vals.len())));
                    }
                    rows.push(vals);
                }
                j = Some(Matrix::from_rows(rows, n));
            }
            "theta" => {
                let vals = rest.split_whitespace().map(|s| scalar(ln, s)).collect::<Result<Vec<_>>>()?;
                if vals.len() != n {
                    return Err(perr(ln, format!("theta has {} entries, expected {n}", vals.len())));
                }
                if theta.replace(vals).is_some() {
                    return Err(perr(ln, "duplicate theta"));
                }
            }
            "omega" => {
                let (ij, c) = rest.split_once(':').ok_or_else(|| perr(ln, "expected omega: i ^ j : c"))?;
                let (i, jj) = pair(ln, ij, n)?;
                if omega.iter().any(|(a, b, _)| (*a, *b) == (i, jj)) {
                    return Err(perr(ln, format!("duplicate omega entry {} ^ {}", i + 1, jj + 1)));
                }
                let c = scalar(ln, c.trim())?;
                if !c.is_zero() {
                    omega.push((i, jj, c));
                }
            }
            other => return Err(perr(ln, format!("unknown key {other:?}"))),
        }
    }

    Ok(Model {
        name: name.unwrap_or_else(|| "unnamed".into()),
        dim: n,
        structure,
        j: j.ok_or(Error::MissingField("J"))?,
        theta: theta.unwrap_or_else(|| vec![Scalar::zero(); n]),
        omega,
        lck: lck.unwrap_or(false),
    }
    .canonical())
}

pub fn serialize(m: &Model) -> String {
    let mut s = String::new();
    writeln!(s, "name: {}", m.name).unwrap();
    writeln!(s, "dim: {}", m.dim).unwrap();
    writeln!(s, "lck: {}", m.lck).unwrap();
    for t in &m.structure {
        writeln!(s, "d: {} <- {} * {} ^ {}", t.target + 1, t.coeff, t.i + 1, t.j + 1).unwrap();
    }
    writeln!(s, "J:").unwrap();
    for i in 0..m.dim {
        let row: Vec<String> = m.j.row(i).iter().map(|x| x.to_string()).collect();
        writeln!(s, "  {}", row.join(" ")).unwrap();
    }
    let th: Vec<String> = m.theta.iter().map(|x| x.to_string()).collect();
    writeln!(s, "theta: {}", th.join(" ")).unwrap();
    for (i, j, c) in &m.omega {
        writeln!(s, "omega: {} ^ {} : {}", i + 1, j + 1, c).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{builtin, FIXTURES};

    #[test]
    fn round_trip_fixtures() {
        for name in FIXTURES {
            let m = builtin(name).unwrap();
            assert_eq!(parse(&serialize(&m)).unwrap(), m, "{name}");
        }
    }

    #[test]
    fn zero_denominator_names_line() {
        let text = serialize(&builtin("torus2").unwrap()).replace("theta: 0 0 0 0", "theta: 1/0 0 0 0");
        let line = text.lines().position(|l| l.starts_with("theta")).unwrap() + 1;
        match parse(&text) {
            Err(Error::Parse { line: l, message }) => {
                assert_eq!(l, line);
                assert!(message.contains("1/0"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_j() {
        let text = "dim: 2\ntheta: 0 0\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e, Error::MissingField("J"));
        assert_eq!(e.to_string(), "missing field J");
    }

    #[test]
    fn rejects_bad_input() {
        let base = "dim: 2\nJ:\n0 -1\n1 0\n";
        assert!(matches!(parse(&format!("{base}d: 3 <- 1 * 1 ^ 2\n")), Err(Error::Parse { line: 5, .. })));
        assert!(matches!(parse(&format!("{base}d: 1 <- 1 * 1 ^ 2\nd: 1 <- 2 * 1 ^ 2\n")), Err(Error::Parse { line: 6, .. })));
        assert!(matches!(parse(&format!("{base}d: 1 <- 0.5 * 1 ^ 2\n")), Err(Error::Parse { line: 5, .. })));
        assert!(matches!(parse(&format!("{base}omega: 2 ^ 1 : 1\n")), Err(Error::Parse { line: 5, .. })));
    }

    #[test]
    fn gaussian_entries_survive() {
        let mut m = builtin("torus2").unwrap();
        m.theta[0] = "1/2-3/4i".parse().unwrap();
        assert_eq!(parse(&serialize(&m)).unwrap(), m);
    }
}
