//! Design text format.
//!
//! ```text
//! # comment
//! v r k1 k2
//! <k1 treatments of block1, replicate 1>
//! ...
//! ```

use super::resolvable::ResolvableDesign;
use super::setting::DesignSetting;
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn numbers(line: usize, body: &str) -> Result<Vec<usize>> {
    body.split_whitespace()
        .map(|w| {
            w.parse::<usize>()
                .map_err(|_| Error::parse(line, format!("expected a non-negative integer, got {w:?}")))
        })
        .collect()
}

pub fn parse_design(text: &str) -> Result<ResolvableDesign> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty design file"))?;
    let h = numbers(hl, header)?;
    let [v, r, k1, k2] = h[..] else {
        return Err(Error::parse(hl, "header must be `v r k1 k2`"));
    };
    let setting = DesignSetting::new(v, r, k1, k2)?;
    let mut blocks = Vec::with_capacity(r);
    let mut last = hl;
    for (ln, body) in lines {
        if blocks.len() == r {
            return Err(Error::parse(ln, format!("more than r = {r} replicate lines")));
        }
        let b = numbers(ln, body)?;
        if b.len() != k1 {
            return Err(Error::parse(
                ln,
                format!("block1 must list k1 = {k1} treatments, found {}", b.len()),
            ));
        }
        if let Some(&t) = b.iter().find(|&&t| t == 0 || t > v) {
            return Err(Error::parse(ln, format!("treatment {t} outside 1..={v}")));
        }
        blocks.push(b);
        last = ln;
    }
    if blocks.len() != r {
        return Err(Error::parse(
            last + 1,
            format!("expected {r} replicate lines, found {}", blocks.len()),
        ));
    }
    ResolvableDesign::from_block1(setting, blocks)
}

pub fn format_design(d: &ResolvableDesign) -> String {
    let s = d.setting();
    let mut out = format!("{} {} {} {}\n", s.v(), s.r(), s.k1(), s.k2());
    for rep in d.replicates() {
        let words: Vec<String> = rep.block1().iter().map(usize::to_string).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ECD4: &str = "# ECD(4)\n9 4 6 3\n1 2 3 4 5 6\n1 2 3 4 7 8\n1 2 5 6 7 8  # last-but-one\n\n3 4 5 6 7 8\n";

    #[test]
    fn parses_with_comments() {
        let d = parse_design(ECD4).unwrap();
        assert_eq!(d.r(), 4);
        let text = format_design(&d);
        assert_eq!(parse_design(&text).unwrap(), d);
        assert_eq!(format_design(&parse_design(&text).unwrap()), text);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_design("9 4 6 3\n1 2 3 4 5 6\n1 2 x 4 7 8\n").unwrap_err();
        assert_eq!(err, Error::parse(3, "expected a non-negative integer, got \"x\""));
        let err = parse_design("9 4 6 3\n1 2 3 4 5 6\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_design("9 4 6\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(matches!(parse_design("9 4 7 3\n"), Err(Error::BadSetting(_))));
    }
}
