//! Labelled-graph text format.
//!
//! ```text
//! GROUP Z            (or: GROUP Q+)
//! VERTICES n         followed by n vertex names
//! EDGES m            followed by m lines: name tail head [label]
//! ```
//!
//! Labels are integers in additive mode and `p/q` in multiplicative mode;
//! an omitted label is the identity. A loop line may end with `balanced`.

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::label::{GroupKind, GroupValue, LabelledGraph};

pub fn write_labelled_graph(lg: &LabelledGraph) -> String {
    let g = lg.graph();
    let mut out = String::new();
    out.push_str(&format!("GROUP {}\n", lg.kind().token()));
    out.push_str(&format!("VERTICES {}\n", g.n_vertices()));
    for v in g.vertices() {
        out.push_str(v);
        out.push('\n');
    }
    out.push_str(&format!("EDGES {}\n", g.n_edges()));
    for (i, e) in g.edges().iter().enumerate() {
        let mut line = format!("{} {} {}", e.name, g.vertices()[e.u], g.vertices()[e.v]);
        if e.is_loop() {
            if lg.is_loop_balanced(i) {
                line.push_str(" balanced");
            }
        } else if !lg.label(i).is_identity() {
            line.push(' ');
            line.push_str(&lg.label(i).render());
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn parse_value(kind: GroupKind, token: &str, line: usize) -> Result<GroupValue> {
    let bad = || Error::Parse {
        line,
        msg: format!("bad label `{token}`"),
    };
    match kind {
        GroupKind::Additive => token.parse::<i64>().map(GroupValue::Add).map_err(|_| bad()),
        GroupKind::Multiplicative => {
            let (p, q) = match token.split_once('/') {
                Some((p, q)) => (
                    p.parse::<i64>().map_err(|_| bad())?,
                    q.parse::<i64>().map_err(|_| bad())?,
                ),
                None => (token.parse::<i64>().map_err(|_| bad())?, 1),
            };
            GroupValue::multiplicative(p, q).map_err(|_| bad())
        }
    }
}

pub fn read_labelled_graph(text: &str) -> Result<LabelledGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut expect = |what: &str| {
        lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unexpected end of input, expected {what}"),
        })
    };
    let (ln, group_line) = expect("GROUP")?;
    let kind = match group_line.strip_prefix("GROUP").map(str::trim) {
        Some("Z") => GroupKind::Additive,
        Some("Q+") => GroupKind::Multiplicative,
        _ => {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected `GROUP Z` or `GROUP Q+`, got `{group_line}`"),
            })
        }
    };
    let (ln, vline) = expect("VERTICES")?;
    let n: usize = vline
        .strip_prefix("VERTICES")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| Error::Parse {
            line: ln,
            msg: format!("expected `VERTICES <n>`, got `{vline}`"),
        })?;
    let mut vertices = Vec::with_capacity(n);
    for _ in 0..n {
        let (_, name) = expect("vertex name")?;
        vertices.push(name.to_string());
    }
    let (ln, eline) = expect("EDGES")?;
    let m: usize = eline
        .strip_prefix("EDGES")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| Error::Parse {
            line: ln,
            msg: format!("expected `EDGES <m>`, got `{eline}`"),
        })?;
    let mut edges = Vec::with_capacity(m);
    let mut labels = Vec::new();
    let mut balanced_loops = Vec::new();
    for _ in 0..m {
        let (ln, row) = expect("edge line")?;
        let parts: Vec<&str> = row.split_whitespace().collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected `name tail head [label]`, got `{row}`"),
            });
        }
        let (name, tail, head) = (parts[0], parts[1], parts[2]);
        edges.push((name.to_string(), tail.to_string(), head.to_string()));
        if parts.len() == 4 {
            if tail == head {
                if parts[3] != "balanced" {
                    return Err(Error::Parse {
                        line: ln,
                        msg: format!("a loop takes `balanced`, not `{}`", parts[3]),
                    });
                }
                balanced_loops.push(name.to_string());
            } else {
                labels.push((name.to_string(), parse_value(kind, parts[3], ln)?));
            }
        }
    }
    let graph = Multigraph::new(vertices, edges)?;
    let mut lg = LabelledGraph::new(graph, kind, labels)?;
    for l in balanced_loops {
        lg.set_loop_balanced(&l)?;
    }
    Ok(lg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_byte_stable() {
        let text = "GROUP Q+\nVERTICES 3\nx\ny\nz\nEDGES 3\ne0 x y\ne1 y z 2/1\ne2 z x 1/2\n";
        let lg = read_labelled_graph(text).unwrap();
        assert_eq!(write_labelled_graph(&lg), text);
        assert!(lg.label_of("e0").unwrap().is_identity());
    }

    #[test]
    fn additive_and_loops() {
        let text = "GROUP Z\nVERTICES 2\na\nb\nEDGES 3\ne a b -3\nl a a balanced\nm b b\n";
        let lg = read_labelled_graph(text).unwrap();
        assert_eq!(lg.label_of("e").unwrap(), GroupValue::Add(-3));
        assert!(lg.is_loop_balanced(lg.graph().edge_index("l").unwrap()));
        assert!(!lg.is_loop_balanced(lg.graph().edge_index("m").unwrap()));
        assert_eq!(write_labelled_graph(&lg), text);
    }

    #[test]
    fn rejects_nonpositive_multiplicative() {
        let text = "GROUP Q+\nVERTICES 2\na\nb\nEDGES 1\ne a b -2/1\n";
        assert!(read_labelled_graph(text).is_err());
    }
}
