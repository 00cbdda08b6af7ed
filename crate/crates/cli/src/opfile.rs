//! Operator file parser.
//!
//! Structured text, one directive per line, `#` starts a comment:
//!
//! ```text
//! space lattice-l1
//! window -8 8
//! term
//! phi 0 1.0 0.0
//! vec 0 3.0 0.0
//! end
//! ```
//!
//! `phi` lines give the functional's sparse (index, re, im) entries, `vec`
//! the vector's; each `term`/`end` block is one rank-one summand.

use anyhow::{anyhow, bail, Context, Result};
use nucdet_core::num_complex::Complex64;
use nucdet_core::operator::{NuclearOperatorRep, RankOneTerm, SpaceTag};

#[derive(Debug)]
pub struct OperatorFile {
    pub operator: NuclearOperatorRep,
    pub window: Option<(i64, i64)>,
}

pub fn parse(text: &str) -> Result<OperatorFile> {
    let mut space = None;
    let mut window = None;
    let mut terms: Vec<RankOneTerm> = Vec::new();
    let mut open: Option<RankOneTerm> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let keyword = fields.next().unwrap();
        let rest: Vec<&str> = fields.collect();
        match keyword {
            "space" => {
                let tag = rest
                    .first()
                    .ok_or_else(|| anyhow!("line {line_no}: `space` needs a tag"))?;
                space = Some(
                    SpaceTag::parse(tag).map_err(|e| anyhow!("line {line_no}: {e}"))?,
                );
            }
            "window" => {
                if rest.len() != 2 {
                    bail!("line {line_no}: `window` needs two integer bounds");
                }
                let lo: i64 = rest[0]
                    .parse()
                    .with_context(|| format!("line {line_no}: bad window bound `{}`", rest[0]))?;
                let hi: i64 = rest[1]
                    .parse()
                    .with_context(|| format!("line {line_no}: bad window bound `{}`", rest[1]))?;
                if lo > hi {
                    bail!("line {line_no}: window [{lo}, {hi}] is empty");
                }
                window = Some((lo, hi));
            }
            "term" => {
                if open.is_some() {
                    bail!("line {line_no}: `term` before the previous block's `end`");
                }
                open = Some(RankOneTerm::new(Vec::new(), Vec::new()));
            }
            "phi" | "vec" => {
                let term = open
                    .as_mut()
                    .ok_or_else(|| anyhow!("line {line_no}: `{keyword}` outside a term block"))?;
                if rest.len() != 3 {
                    bail!("line {line_no}: `{keyword}` needs index, re, im");
                }
                let i: i64 = rest[0]
                    .parse()
                    .with_context(|| format!("line {line_no}: bad index `{}`", rest[0]))?;
                let re: f64 = rest[1]
                    .parse()
                    .with_context(|| format!("line {line_no}: bad value `{}`", rest[1]))?;
                let im: f64 = rest[2]
                    .parse()
                    .with_context(|| format!("line {line_no}: bad value `{}`", rest[2]))?;
                let entry = (i, Complex64::new(re, im));
                if keyword == "phi" {
                    term.functional.push(entry);
                } else {
                    term.vector.push(entry);
                }
            }
            "end" => {
                let term = open
                    .take()
                    .ok_or_else(|| anyhow!("line {line_no}: `end` without an open term"))?;
                terms.push(term);
            }
            other => bail!("line {line_no}: unknown directive `{other}`"),
        }
    }
    if open.is_some() {
        bail!("unterminated term block at end of file");
    }
    let space = space.ok_or_else(|| anyhow!("missing `space` directive"))?;
    let operator = NuclearOperatorRep::new(terms, space);
    if let (Some((lo, hi)), Some((slo, shi))) = (window, operator.support()) {
        if slo < lo || shi > hi {
            bail!("operator support [{slo}, {shi}] exceeds the declared window [{lo}, {hi}]");
        }
    }
    Ok(OperatorFile { operator, window })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rank_one_point_mass() {
        let f = parse("# c = 3\nspace lattice-l1\nwindow -8 8\nterm\nphi 0 1 0\nvec 0 3 0\nend\n")
            .unwrap();
        assert_eq!(f.operator.terms.len(), 1);
        assert_eq!(f.window, Some((-8, 8)));
        assert_eq!(f.operator.terms[0].vector[0].1.re, 3.0);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse("space lattice-l1\nterm\nphi zero 1 0\nend\n").unwrap_err();
        assert!(format!("{err:#}").contains("line 3"), "{err:#}");
    }

    #[test]
    fn rejects_support_outside_window() {
        let err = parse("space lattice-l1\nwindow -1 1\nterm\nphi 5 1 0\nvec 0 1 0\nend\n")
            .unwrap_err();
        assert!(err.to_string().contains("window"));
    }
}
