//! Line-oriented code files.
//!
//! ```text
//! # binary repetition code
//! field p=2 m=1
//! n=3
//! gen 1 1 1
//! ```
//!
//! Elements are written as their index in `[0, q)`. Text after `#` is ignored.

use std::fmt::Write as _;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::Field;

pub fn parse_code(text: &str) -> Result<LinearCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty code file"))?;
    let field: Field = header.parse().map_err(|e| Error::parse(line, format!("{e}")))?;

    let (line, len) = lines
        .next()
        .ok_or_else(|| Error::parse(line + 1, "missing `n=<length>` line"))?;
    let n: usize = len
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::parse(line, format!("expected `n=<length>`, found `{len}`")))?;

    let mut rows = Vec::new();
    for (line, text) in lines {
        let mut words = text.split_whitespace();
        if words.next() != Some("gen") {
            return Err(Error::parse(line, format!("expected `gen ...`, found `{text}`")));
        }
        let row = words
            .map(|w| {
                let idx: u32 = w
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad element `{w}`")))?;
                field
                    .element(idx)
                    .map_err(|e| Error::parse(line, format!("{e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::parse(
                line,
                format!("generator has {} entries, expected {n}", row.len()),
            ));
        }
        rows.push(row);
    }
    LinearCode::new(field, n, rows)
}

/// Canonical text: header, length, then the RREF generators.
pub fn write_code(code: &LinearCode) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", code.field());
    let _ = writeln!(s, "n={}", code.len());
    for row in code.generators() {
        let entries: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "gen {}", entries.join(" "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# rep code\nfield p=2 m=1\nn=3\ngen 1 1 1  # all ones\n";
        let c = parse_code(text).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(write_code(&c), "field p=2 m=1\nn=3\ngen 1 1 1\n");
        assert_eq!(parse_code(&write_code(&c)).unwrap(), c);

        let f4 = "field p=2 m=2 poly=1,1,1\nn=2\ngen 2 3\n";
        let c4 = parse_code(f4).unwrap();
        assert_eq!(write_code(&c4), "field p=2 m=2 poly=1,1,1\nn=2\ngen 1 2\n");
    }

    #[test]
    fn zero_code_has_no_generators() {
        let c = parse_code("field p=3 m=1\nn=2\ngen 0 0\n").unwrap();
        assert_eq!(c.dim(), 0);
        assert_eq!(write_code(&c), "field p=3 m=1\nn=2\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line_of = |t: &str| match parse_code(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of(""), 1);
        assert_eq!(line_of("field p=4 m=1\nn=2\n"), 1);
        assert_eq!(line_of("field p=2 m=1\nlength 2\n"), 2);
        assert_eq!(line_of("field p=2 m=1\n\nn=2\ngen 1 2\n"), 4);
        assert_eq!(line_of("field p=2 m=1\nn=2\ngen 1\n"), 3);
        assert_eq!(line_of("field p=2 m=1\nn=2\nrow 1 1\n"), 3);
        assert_eq!(line_of("# only a comment\n"), 1);
    }
}
