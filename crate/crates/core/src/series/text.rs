//! Line-oriented text form of series.
//!
//! ```text
//! # arity = 2
//! # degree = 3
//! 1,0 ; 1,0 ; 1/1 ; 0/1
//! ```
//!
//! Each data line is `m_j ; m_k ; re ; im` (bi-series) or `m ; re ; im`
//! (holomorphic series). Blank lines and other `#` lines are ignored.
//! Missing headers are inferred from the data.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::multi_index::{GradedOrder, MultiIndex};
use crate::scalar::{format_rational, parse_rational, CScalar};

use super::{BiSeries, HolSeries};

pub fn write_bi(s: &BiSeries) -> String {
    let mut out = format!("# arity = {}\n# degree = {}\n", s.arity(), s.degree());
    let o = s.order();
    for (j, k, c) in s.iter() {
        let _ = writeln!(
            out,
            "{} ; {} ; {} ; {}",
            o.index(j),
            o.index(k),
            format_rational(&c.re),
            format_rational(&c.im)
        );
    }
    out
}

pub fn write_hol(s: &HolSeries) -> String {
    let mut out = format!("# arity = {}\n# degree = {}\n", s.arity(), s.degree());
    let o = s.order();
    for (j, c) in s.iter() {
        let _ = writeln!(
            out,
            "{} ; {} ; {}",
            o.index(j),
            format_rational(&c.re),
            format_rational(&c.im)
        );
    }
    out
}

struct Parsed {
    arity: Option<usize>,
    degree: Option<u32>,
    rows: Vec<(usize, Vec<MultiIndex>, CScalar)>,
}

fn line_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn parse_lines(text: &str, fields: usize) -> Result<Parsed> {
    let mut p = Parsed {
        arity: None,
        degree: None,
        rows: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(h) = line.strip_prefix('#') {
            if let Some((key, val)) = h.split_once('=') {
                let val = val.trim();
                match key.trim() {
                    "arity" => p.arity = Some(val.parse().map_err(|_| line_err(ln, format!("bad arity {val:?}")))?),
                    "degree" => p.degree = Some(val.parse().map_err(|_| line_err(ln, format!("bad degree {val:?}")))?),
                    _ => {}
                }
            }
            continue;
        }
        let parts: Vec<&str> = line.split(';').map(str::trim).collect();
        if parts.len() != fields + 2 {
            return Err(line_err(
                ln,
                format!("expected {} fields separated by ';', found {}", fields + 2, parts.len()),
            ));
        }
        let idx = parts[..fields]
            .iter()
            .map(|f| MultiIndex::parse(f).map_err(|e| line_err(ln, e)))
            .collect::<Result<Vec<_>>>()?;
        let re = parse_rational(parts[fields]).map_err(|e| line_err(ln, e))?;
        let im = parse_rational(parts[fields + 1]).map_err(|e| line_err(ln, e))?;
        p.rows.push((ln, idx, CScalar::new(re, im)));
    }
    let arity = match (p.arity, p.rows.first()) {
        (Some(a), _) => a,
        (None, Some((_, idx, _))) => idx[0].arity(),
        (None, None) => return Err(Error::Parse("empty series without an arity header".into())),
    };
    if arity == 0 {
        return Err(Error::Parse("arity must be positive".into()));
    }
    for (ln, idx, _) in &p.rows {
        for m in idx {
            if m.arity() != arity {
                return Err(line_err(
                    *ln,
                    format!("index {m} has arity {}, expected {arity}", m.arity()),
                ));
            }
        }
    }
    if p.degree.is_none() {
        let d = p
            .rows
            .iter()
            .flat_map(|(_, idx, _)| idx.iter().map(MultiIndex::degree))
            .max()
            .unwrap_or(0);
        p.degree = Some(d);
    }
    p.arity = Some(arity);
    Ok(p)
}

/// Parses a bi-series; terms above the declared degree are an error.
pub fn parse_bi(text: &str) -> Result<BiSeries> {
    let p = parse_lines(text, 2)?;
    let (arity, degree) = (p.arity.unwrap(), p.degree.unwrap());
    let order = GradedOrder::new(arity, degree);
    let mut s = BiSeries::zero_in(&order, degree);
    for (ln, idx, c) in p.rows {
        let j = order.ordinal(&idx[0]).map_err(|e| line_err(ln, e))?;
        let k = order.ordinal(&idx[1]).map_err(|e| line_err(ln, e))?;
        s.add_at(j, k, &c);
    }
    Ok(s)
}

pub fn parse_hol(text: &str) -> Result<HolSeries> {
    let p = parse_lines(text, 1)?;
    let (arity, degree) = (p.arity.unwrap(), p.degree.unwrap());
    let order = GradedOrder::new(arity, degree);
    let mut s = HolSeries::zero_in(&order, degree);
    for (ln, idx, c) in p.rows {
        let j = order.ordinal(&idx[0]).map_err(|e| line_err(ln, e))?;
        s.add_at(j, &c);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::log1p_series;

    #[test]
    fn round_trip() {
        let s = log1p_series(&BiSeries::norm_sqr(2, 3)).unwrap();
        let text = write_bi(&s);
        assert_eq!(parse_bi(&text).unwrap(), s);
        assert_eq!(write_bi(&parse_bi(&text).unwrap()), text);
    }

    #[test]
    fn deterministic_layout() {
        let s = BiSeries::norm_sqr(2, 1);
        assert_eq!(
            write_bi(&s),
            "# arity = 2\n# degree = 1\n0,1 ; 0,1 ; 1/1 ; 0/1\n1,0 ; 1,0 ; 1/1 ; 0/1\n"
        );
    }

    #[test]
    fn infers_headers() {
        let s = parse_bi("1 ; 1 ; 1 ; 0\n2;2;-1/2;0\n").unwrap();
        assert_eq!(s.arity(), 1);
        assert_eq!(s.degree(), 2);
        assert_eq!(s.coeff(2, 2), CScalar::from_ratio(-1, 2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_bi("# degree = 2\n1 ; 1 ; 1 ; 0\n1 ; 1 ; x ; 0\n").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
        let e = parse_bi("# degree = 1\n\n2 ; 0 ; 1 ; 0\n").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
        let e = parse_bi("1,0 ; 1 ; 1 ; 0\n").unwrap_err();
        assert!(e.to_string().contains("line 1"), "{e}");
        assert!(parse_bi("1 ; 1 ; 1\n").is_err());
    }

    #[test]
    fn holomorphic_round_trip() {
        let h = HolSeries::univariate(&[crate::scalar::rat(1, 1), crate::scalar::rat(-2, 3)], 4);
        assert_eq!(parse_hol(&write_hol(&h)).unwrap(), h);
    }
}
