//! State literals.
//!
//! ```text
//! state   := term ( '*' term )*            tensor product, party-wise
//! term    := json | named | '@' path
//! json    := {"dims":[d1,..,dk], "amps":[[re,im], ...]}
//! named   := "ghz:r=R,k=K"
//!          | "schmidt:[p1,p2,...]"
//!          | "epr:pair=(i,j),k=K"           parties 1-based
//!          | "product:k=K"                  |0…0⟩ with trivial local spaces
//! ```
//!
//! Norms must be 1 within [`LITERAL_NORM_TOL`]; states are never renormalized.

use num_complex::Complex64;
use serde::Deserialize;

use super::{LocalDims, PureState};
use crate::error::{Error, Result};

pub const LITERAL_NORM_TOL: f64 = 1e-8;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonState {
    dims: Vec<usize>,
    amps: Vec<[f64; 2]>,
}

fn perr(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

/// Splits at `sep` outside of brackets, returning `(offset, piece)` pairs.
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// Parses a state literal; see the module docs for the grammar.
pub fn parse_state(spec: &str) -> Result<PureState> {
    let mut acc: Option<PureState> = None;
    for (offset, piece) in split_top(spec, '*') {
        let lead = piece.len() - piece.trim_start().len();
        let term = parse_term(piece.trim(), offset + lead)?;
        acc = Some(match acc {
            None => term,
            Some(a) => a
                .tensor(&term)
                .map_err(|e| perr(offset + lead, e.to_string()))?,
        });
    }
    acc.ok_or_else(|| perr(0, "empty state literal"))
}

fn parse_term(s: &str, pos: usize) -> Result<PureState> {
    if s.is_empty() {
        return Err(perr(pos, "empty term"));
    }
    if s.starts_with('{') {
        return parse_json(s, pos);
    }
    if let Some(path) = s.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| perr(pos + 1, format!("cannot read {path:?}: {e}")))?;
        return parse_json(text.trim(), pos + 1);
    }
    let (name, args) = s
        .split_once(':')
        .ok_or_else(|| perr(pos, format!("expected NAME:ARGS or JSON, got {s:?}")))?;
    let apos = pos + name.len() + 1;
    match name.trim() {
        "ghz" => {
            let kv = key_values(args, apos)?;
            let r = get_usize(&kv, "r", apos)?;
            let k = get_usize(&kv, "k", apos)?;
            PureState::ghz(r, k).map_err(|e| perr(apos, e.to_string()))
        }
        "schmidt" => {
            let ps = parse_list(args.trim(), apos)?;
            PureState::from_schmidt_with_tolerance(&ps, LITERAL_NORM_TOL)
                .map_err(|e| perr(apos, e.to_string()))
        }
        "epr" => {
            let kv = key_values(args, apos)?;
            let k = get_usize(&kv, "k", apos)?;
            let (ppos, pair) = kv
                .iter()
                .find(|(_, key, _)| *key == "pair")
                .map(|(p, _, v)| (*p, *v))
                .ok_or_else(|| perr(apos, "missing key \"pair\""))?;
            let inner = pair
                .trim()
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| perr(ppos, "pair must look like (i,j)"))?;
            let ids: Vec<usize> = inner
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| perr(ppos, "pair entries must be integers"))?;
            match ids.as_slice() {
                [a, b] if *a >= 1 && *b >= 1 => PureState::epr_between(a - 1, b - 1, k)
                    .map_err(|e| perr(ppos, e.to_string())),
                _ => Err(perr(ppos, "pair must name two 1-based parties")),
            }
        }
        "product" => {
            let kv = key_values(args, apos)?;
            let k = get_usize(&kv, "k", apos)?;
            PureState::product_zero(k).map_err(|e| perr(apos, e.to_string()))
        }
        other => Err(perr(pos, format!("unknown state constructor {other:?}"))),
    }
}

fn key_values(args: &str, pos: usize) -> Result<Vec<(usize, &str, &str)>> {
    split_top(args, ',')
        .into_iter()
        .map(|(off, kv)| {
            kv.split_once('=')
                .map(|(k, v)| (pos + off, k.trim(), v.trim()))
                .ok_or_else(|| perr(pos + off, format!("expected key=value, got {kv:?}")))
        })
        .collect()
}

fn get_usize(kv: &[(usize, &str, &str)], key: &str, pos: usize) -> Result<usize> {
    let (p, _, v) = kv
        .iter()
        .find(|(_, k, _)| *k == key)
        .ok_or_else(|| perr(pos, format!("missing key {key:?}")))?;
    v.parse()
        .map_err(|_| perr(*p, format!("{key} must be a nonnegative integer, got {v:?}")))
}

fn parse_list(s: &str, pos: usize) -> Result<Vec<f64>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| perr(pos, "expected [p1,p2,...]"))?;
    split_top(inner, ',')
        .into_iter()
        .map(|(off, t)| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| perr(pos + 1 + off, format!("not a number: {:?}", t.trim())))
        })
        .collect()
}

fn parse_json(s: &str, pos: usize) -> Result<PureState> {
    let js: JsonState = serde_json::from_str(s).map_err(|e| {
        // serde_json reports 1-based line/column; map back to a byte offset.
        let offset: usize = s
            .lines()
            .take(e.line().saturating_sub(1))
            .map(|l| l.len() + 1)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        perr(pos + offset, e.to_string())
    })?;
    let dims = LocalDims::new(js.dims).map_err(|e| perr(pos, e.to_string()))?;
    let amps = js.amps.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    PureState::with_tolerance(dims, amps, LITERAL_NORM_TOL).map_err(|e| perr(pos, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_constructors() {
        assert_eq!(parse_state("ghz:r=2,k=3").unwrap(), PureState::ghz(2, 3).unwrap());
        assert_eq!(
            parse_state("schmidt:[0.9,0.1]").unwrap(),
            PureState::from_schmidt(&[0.9, 0.1]).unwrap()
        );
        assert_eq!(
            parse_state("epr:pair=(1,3),k=3").unwrap(),
            PureState::epr_between(0, 2, 3).unwrap()
        );
        assert_eq!(parse_state("product:k=3").unwrap().dims().as_slice(), &[1, 1, 1]);
    }

    #[test]
    fn json_literal() {
        let s = parse_state(r#"{"dims":[2,2],"amps":[[0.6,0],[0,0],[0,0],[0,0.8]]}"#).unwrap();
        assert_eq!(s.dims().as_slice(), &[2, 2]);
        assert!((s.amplitudes()[3].im - 0.8).abs() < 1e-15);
    }

    #[test]
    fn tensor_expression() {
        let s = parse_state("epr:pair=(1,2),k=3 * epr:pair=(2,3),k=3 * epr:pair=(1,3),k=3").unwrap();
        assert_eq!(s.dims().as_slice(), &[4, 4, 4]);
    }

    #[test]
    fn rejects_unnormalized_without_fixing() {
        let e = parse_state("schmidt:[0.9,0.2]").unwrap_err();
        assert!(matches!(e, Error::Parse { position: 8, .. }), "{e:?}");
        let e = parse_state(r#"{"dims":[2],"amps":[[1,0],[1,0]]}"#).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        // Within 1e-8 is accepted as given.
        assert!(parse_state("schmidt:[0.9,0.100000001]").is_ok());
    }

    #[test]
    fn error_positions() {
        match parse_state("ghz:r=2,k=x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 8),
            other => panic!("{other:?}"),
        }
        match parse_state("ghz:r=2,k=2 * bogus:x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 14),
            other => panic!("{other:?}"),
        }
        assert!(parse_state("").is_err());
        assert!(parse_state("schmidt:[0.5,zz]").is_err());
        assert!(parse_state("epr:pair=(1,1),k=2").is_err());
    }
}
