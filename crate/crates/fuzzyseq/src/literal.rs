//! Text literals for fuzzy numbers: `tri(a,b,c)`, `trap(a,b,c,e)`,
//! `crisp(x)` and `grid([[α,lo,hi],...])`.
//!
//! Formatting goes through the core `Display` impls, which print the same
//! syntax with shortest round-trip floats.

use fuzzyseq_core::{FuzzyError, FuzzyNumber, Interval, SampledGrid};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LiteralError {
    #[error(
        "unrecognised fuzzy literal `{0}` (expected tri(..), trap(..), crisp(..) or grid([...]))"
    )]
    Syntax(String),
    #[error("`{name}` takes {expected} numbers, got {got}")]
    Arity {
        name: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("not a number: `{0}`")]
    Number(String),
    #[error("grid level {0} must be [alpha, lo, hi] with lo <= hi")]
    GridLevel(usize),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

fn numbers(body: &str) -> Result<Vec<f64>, LiteralError> {
    body.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .map_err(|_| LiteralError::Number(t.to_string()))
        })
        .collect()
}

fn exactly<const N: usize>(name: &'static str, body: &str) -> Result<[f64; N], LiteralError> {
    let v = numbers(body)?;
    let got = v.len();
    v.try_into().map_err(|_| LiteralError::Arity {
        name,
        expected: N,
        got,
    })
}

pub fn parse_fuzzy(text: &str) -> Result<FuzzyNumber, LiteralError> {
    let s = text.trim();
    let syntax = || LiteralError::Syntax(s.to_string());
    let (name, rest) = s.split_once('(').ok_or_else(syntax)?;
    let body = rest.strip_suffix(')').ok_or_else(syntax)?;
    match name.trim() {
        "tri" => {
            let [a, b, c] = exactly("tri", body)?;
            Ok(FuzzyNumber::triangular(a, b, c)?)
        }
        "trap" => {
            let [a, b, c, e] = exactly("trap", body)?;
            Ok(FuzzyNumber::trapezoidal(a, b, c, e)?)
        }
        "crisp" => {
            let [x] = exactly("crisp", body)?;
            Ok(FuzzyNumber::crisp(x)?)
        }
        "grid" => {
            let rows: Vec<Vec<f64>> = serde_json::from_str(body).map_err(|_| syntax())?;
            let levels = rows
                .iter()
                .enumerate()
                .map(|(i, row)| match row.as_slice() {
                    &[a, lo, hi] => Interval::new(lo, hi)
                        .map(|iv| (a, iv))
                        .ok_or(LiteralError::GridLevel(i)),
                    _ => Err(LiteralError::GridLevel(i)),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SampledGrid::new(levels)?.into())
        }
        _ => Err(syntax()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_form() {
        assert_eq!(
            parse_fuzzy("tri(0, 1, 2)").unwrap(),
            FuzzyNumber::triangular(0.0, 1.0, 2.0).unwrap()
        );
        assert_eq!(
            parse_fuzzy(" trap(-1,0,0.5,2) ").unwrap(),
            FuzzyNumber::trapezoidal(-1.0, 0.0, 0.5, 2.0).unwrap()
        );
        assert_eq!(
            parse_fuzzy("crisp(7)").unwrap(),
            FuzzyNumber::crisp(7.0).unwrap()
        );
        let g = parse_fuzzy("grid([[0,0,4],[0.5,1,3],[1,2,2]])").unwrap();
        assert_eq!(g.alpha_cut(0.25).unwrap(), Interval::new(0.5, 3.5).unwrap());
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            parse_fuzzy("tri(0,1)"),
            Err(LiteralError::Arity {
                expected: 3,
                got: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_fuzzy("tri(0,x,2)"),
            Err(LiteralError::Number(_))
        ));
        assert!(matches!(
            parse_fuzzy("tri(2,1,0)"),
            Err(LiteralError::Fuzzy(_))
        ));
        assert!(matches!(
            parse_fuzzy("bell(0,1,2)"),
            Err(LiteralError::Syntax(_))
        ));
        assert!(matches!(
            parse_fuzzy("tri(0,1,2"),
            Err(LiteralError::Syntax(_))
        ));
        assert!(matches!(
            parse_fuzzy("grid([[0,1]])"),
            Err(LiteralError::GridLevel(0))
        ));
        assert!(parse_fuzzy("grid([[0,0,4],[0.5,1,3]])").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "tri(0,1,2)",
            "trap(-1.5,0,0.25,3)",
            "crisp(-7)",
            "grid([[0,0,4],[0.5,1,3],[1,2,2]])",
        ] {
            let x = parse_fuzzy(s).unwrap();
            assert_eq!(parse_fuzzy(&x.to_string()).unwrap(), x, "{s}");
        }
    }
}
