//! Line-based file formats and DOT export.
//!
//! ```text
//! poset                basis              basismap
//! elements: a b c      elements: a b      map: b0=x b1=y
//! covers: a<b b<c      rel: a<a a<b b<b
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::finposet::FinPoset;
use crate::idealcomp::AbstractBasis;
use crate::waybelow::BasisMap;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Meaningful lines with their 1-based line numbers.
fn lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn header(lines: &[(usize, &str)], expected: &str) -> Result<()> {
    match lines.first() {
        None => Err(parse_err(1, format!("empty input, expected `{expected}`"))),
        Some(&(n, l)) if l != expected => {
            Err(parse_err(n, format!("expected `{expected}`, found `{l}`")))
        }
        _ => Ok(()),
    }
}

/// The tokens after `key:` on line `k` of the meaningful lines, or `None`
/// when that line is absent.
fn field<'a>(lines: &[(usize, &'a str)], k: usize, key: &str) -> Result<Option<(usize, Vec<&'a str>)>> {
    let Some(&(n, l)) = lines.get(k) else {
        return Ok(None);
    };
    let rest = l
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| parse_err(n, format!("expected `{key}: ...`, found `{l}`")))?;
    Ok(Some((n, rest.split_whitespace().collect())))
}

fn pairs<'a>(n: usize, tokens: &[&'a str], sep: char) -> Result<Vec<(&'a str, &'a str)>> {
    tokens
        .iter()
        .map(|t| {
            t.split_once(sep)
                .filter(|(a, b)| !a.is_empty() && !b.is_empty())
                .ok_or_else(|| parse_err(n, format!("malformed pair `{t}`")))
        })
        .collect()
}

fn check_trailing(lines: &[(usize, &str)], used: usize) -> Result<()> {
    match lines.get(used) {
        Some(&(n, l)) => Err(parse_err(n, format!("unexpected line `{l}`"))),
        None => Ok(()),
    }
}

pub fn parse_poset(text: &str) -> Result<FinPoset> {
    let ls = lines(text);
    header(&ls, "poset")?;
    let (_, elements) = field(&ls, 1, "elements")?
        .ok_or_else(|| parse_err(ls[0].0 + 1, "missing `elements:` line"))?;
    let covers = match field(&ls, 2, "covers")? {
        Some((n, toks)) => pairs(n, &toks, '<')?,
        None => Vec::new(),
    };
    check_trailing(&ls, 3)?;
    FinPoset::from_covers(&elements, &covers)
}

pub fn emit_poset(p: &FinPoset) -> String {
    let covers: Vec<String> = p
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{}<{}", p.name(a), p.name(b)))
        .collect();
    format!(
        "poset\nelements: {}\ncovers: {}\n",
        p.names().join(" "),
        covers.join(" ")
    )
}

/// Hasse diagram, bottom to top, nodes in canonical order.
pub fn emit_dot(p: &FinPoset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for n in p.names() {
        let _ = writeln!(out, "  \"{}\";", escape(n));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", escape(p.name(a)), escape(p.name(b)));
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Parses an explicit relation; validation of the basis laws is left to
/// the caller so that counterexamples can be reported.
pub fn parse_basis(text: &str) -> Result<AbstractBasis> {
    let ls = lines(text);
    header(&ls, "basis")?;
    let (_, elements) = field(&ls, 1, "elements")?
        .ok_or_else(|| parse_err(ls[0].0 + 1, "missing `elements:` line"))?;
    let rel = match field(&ls, 2, "rel")? {
        Some((n, toks)) => pairs(n, &toks, '<')?,
        None => Vec::new(),
    };
    check_trailing(&ls, 3)?;
    AbstractBasis::from_pairs(&elements, &rel)
}

pub fn emit_basis(b: &AbstractBasis) -> String {
    let rel: Vec<String> = b
        .pairs()
        .into_iter()
        .map(|(x, y)| format!("{}<{}", b.name(x), b.name(y)))
        .collect();
    format!(
        "basis\nelements: {}\nrel: {}\n",
        b.names().join(" "),
        rel.join(" ")
    )
}

/// A basis map into `host`, as `label=element` pairs.
pub fn parse_basis_map(text: &str, host: &FinPoset) -> Result<BasisMap> {
    let ls = lines(text);
    header(&ls, "basismap")?;
    let (n, toks) = field(&ls, 1, "map")?
        .ok_or_else(|| parse_err(ls[0].0 + 1, "missing `map:` line"))?;
    check_trailing(&ls, 2)?;
    let mut labels = Vec::new();
    let mut into = Vec::new();
    for (label, elem) in pairs(n, &toks, '=')? {
        labels.push(label.to_string());
        into.push(host.index_of(elem)?);
    }
    let beta = BasisMap::new(labels, into)?;
    beta.fits(host)?;
    Ok(beta)
}

pub fn emit_basis_map(p: &FinPoset, beta: &BasisMap) -> String {
    let parts: Vec<String> = (0..beta.len())
        .map(|b| format!("{}={}", beta.label(b), p.name(beta.value(b))))
        .collect();
    format!("basismap\nmap: {}\n", parts.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_round_trip() {
        let text = "poset\nelements: a b c\ncovers: a<b b<c\n";
        let p = parse_poset(text).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(emit_poset(&p), text);
        assert_eq!(parse_poset(&emit_poset(&p)).unwrap(), p);
    }

    #[test]
    fn poset_without_covers_is_antichain() {
        let p = parse_poset("poset\nelements: a b\ncovers:\n").unwrap();
        assert!(!p.leq(0, 1) && !p.leq(1, 0));
        let q = parse_poset("# comment\nposet\nelements: a b\n").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn poset_errors_carry_line_numbers() {
        assert_eq!(
            parse_poset("poset\nelemnts: a\n"),
            Err(Error::Parse {
                line: 2,
                message: "expected `elements: ...`, found `elemnts: a`".into()
            })
        );
        assert!(matches!(parse_poset(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_poset("poset\nelements: a b\ncovers: a<\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_poset("poset\nelements: a b\ncovers: a<b b<a\n"),
            Err(Error::CycleDetected(_))
        ));
    }

    #[test]
    fn dot_output() {
        let p = parse_poset("poset\nelements: x\n").unwrap();
        assert_eq!(emit_dot(&p), "digraph poset {\n  rankdir=BT;\n  \"x\";\n}\n");
        let d = parse_poset("poset\nelements: bot a b top\ncovers: bot<a bot<b a<top b<top\n")
            .unwrap();
        let dot = emit_dot(&d);
        assert_eq!(dot.matches("->").count(), 4);
        assert_eq!(dot, emit_dot(&d));
    }

    #[test]
    fn basis_files() {
        let b = parse_basis("basis\nelements: a b\nrel: a<a a<b b<b\n").unwrap();
        assert!(b.is_reflexive());
        assert_eq!(parse_basis(&emit_basis(&b)).unwrap(), b);
        assert!(matches!(parse_basis(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn basis_map_files() {
        let p = FinPoset::chain(&["bot", "top"]).unwrap();
        let beta = parse_basis_map("basismap\nmap: 0=bot 1=top\n", &p).unwrap();
        assert_eq!(beta.images(), &[0, 1]);
        assert_eq!(emit_basis_map(&p, &beta), "basismap\nmap: 0=bot 1=top\n");
        assert!(matches!(
            parse_basis_map("basismap\nmap: 0=mid\n", &p),
            Err(Error::UnknownElement(_))
        ));
    }
}
