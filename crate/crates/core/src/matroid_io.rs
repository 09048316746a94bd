//! Plain-text matroid format.
//!
//! ```text
//! GROUND n      followed by n element names, one per line
//! RANK r
//! BASES m       followed by m lines of r names
//! ```
//!
//! `CIRCUITS m` may replace the `BASES` block, in which case bases are the
//! rank-sized sets containing none of the listed circuits. Lines starting
//! with `#` are comments. Output is canonical (bases ascending in ground-mask
//! order, names in ground order within a line), so write∘read is the identity
//! on canonical files.

use crate::error::{Error, Result};
use crate::matroid::ExplicitMatroid;
use crate::subset::{k_subsets_of, Subset};

/// Upper bound for reconstructing bases from a circuit list.
const CIRCUIT_INPUT_LIMIT: usize = 20;

pub fn write_matroid(m: &ExplicitMatroid) -> String {
    let mut out = String::new();
    out.push_str(&format!("GROUND {}\n", m.size()));
    for name in m.ground_names() {
        out.push_str(name);
        out.push('\n');
    }
    out.push_str(&format!("RANK {}\n", m.rank()));
    out.push_str(&format!("BASES {}\n", m.bases().len()));
    for b in m.bases() {
        out.push_str(&m.format_subset(*b));
        out.push('\n');
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }
    /// Next significant line with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            let t = line.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Some((i + 1, t));
            }
        }
        None
    }
    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next().ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unexpected end of input, expected {what}"),
        })
    }
}

fn parse_count(line: usize, text: &str, keyword: &str) -> Result<usize> {
    let rest = text.strip_prefix(keyword).ok_or_else(|| Error::Parse {
        line,
        msg: format!("expected `{keyword} <n>`, got `{text}`"),
    })?;
    rest.trim().parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad count in `{text}`"),
    })
}

pub fn read_matroid(text: &str) -> Result<ExplicitMatroid> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.expect("GROUND")?;
    let n = parse_count(ln, header, "GROUND")?;
    let mut ground = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, name) = lines.expect("element name")?;
        if name.split_whitespace().count() != 1 {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected a single element name, got `{name}`"),
            });
        }
        ground.push(name.to_string());
    }
    let (ln, rank_line) = lines.expect("RANK")?;
    let rank = parse_count(ln, rank_line, "RANK")?;
    let (ln, block) = lines.expect("BASES or CIRCUITS")?;

    let lookup = |line: usize, name: &str| -> Result<usize> {
        ground
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::Parse {
                line,
                msg: format!("unknown element `{name}`"),
            })
    };

    if let Ok(m) = parse_count(ln, block, "BASES") {
        let mut bases = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, row) = lines.expect("basis line")?;
            let mut s = Subset::EMPTY;
            for name in row.split_whitespace() {
                s = s.insert(lookup(ln, name)?);
            }
            if s.len() != rank {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("basis `{row}` does not have {rank} elements"),
                });
            }
            bases.push(s);
        }
        ExplicitMatroid::from_bases(ground, bases)
    } else {
        let m = parse_count(ln, block, "CIRCUITS")?;
        if n > CIRCUIT_INPUT_LIMIT {
            return Err(Error::TooLarge {
                op: "reading a CIRCUITS block",
                got: n,
                limit: CIRCUIT_INPUT_LIMIT,
            });
        }
        let mut circuits = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, row) = lines.expect("circuit line")?;
            let mut s = Subset::EMPTY;
            for name in row.split_whitespace() {
                s = s.insert(lookup(ln, name)?);
            }
            circuits.push(s);
        }
        let bases: Vec<Subset> = k_subsets_of(Subset::full(n), rank)
            .into_iter()
            .filter(|b| circuits.iter().all(|c| !c.is_subset_of(*b)))
            .collect();
        if bases.is_empty() {
            return Err(Error::NoBases);
        }
        ExplicitMatroid::from_bases(ground, bases)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_stable() {
        let m = ExplicitMatroid::uniform(2, 4);
        let text = write_matroid(&m);
        let back = read_matroid(&text).unwrap();
        assert!(m.equal(&back).unwrap());
        assert_eq!(write_matroid(&back), text);
    }

    #[test]
    fn circuits_block() {
        let text = "# a triangle\nGROUND 3\na\nb\nc\nRANK 2\nCIRCUITS 1\na b c\n";
        let m = read_matroid(text).unwrap();
        assert!(m.equal(&{
            let u = ExplicitMatroid::from_named_bases(
                &["a", "b", "c"],
                &[&["a", "b"], &["a", "c"], &["b", "c"]],
            )
            .unwrap();
            u
        })
        .unwrap());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "GROUND 2\na\nb\nRANK 1\nBASES 1\na c\n";
        match read_matroid(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
