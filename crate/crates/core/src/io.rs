//! Text formats for graphs and representations.
//!
//! Both formats are line oriented and whitespace separated; `#` starts a
//! comment line. Writers emit vertices in sorted order so output is
//! byte-stable and diff-friendly.
//!
//! ```text
//! mir 1
//! vertex <id> <l1> <r1> [<l2> <r2> ...]
//! ```
//!
//! ```text
//! graph 1
//! vertex <id>          # isolated vertices only
//! edge <id> <id>
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::mir::{Interval, Mir};

pub fn write_mir(rep: &Mir) -> String {
    let mut out = String::from("mir 1\n");
    for (v, ivs) in rep.iter() {
        write!(out, "vertex {v}").unwrap();
        for iv in ivs {
            write!(out, " {} {}", iv.left, iv.right).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_mir(text: &str) -> Result<Mir> {
    let mut lines = meaningful_lines(text);
    expect_header(lines.next(), "mir")?;
    let mut assignment: BTreeMap<VertexId, Vec<Interval>> = BTreeMap::new();
    for (lineno, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", id, coords @ ..] => {
                if coords.is_empty() || coords.len() % 2 != 0 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("vertex {id}: expected an even, positive number of endpoints"),
                    });
                }
                let mut ivs = Vec::with_capacity(coords.len() / 2);
                for pair in coords.chunks(2) {
                    let l = parse_coord(pair[0], lineno)?;
                    let r = parse_coord(pair[1], lineno)?;
                    ivs.push(Interval::new(l, r));
                }
                if assignment.insert(VertexId::from(*id), ivs).is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("duplicate vertex {id}"),
                    });
                }
            }
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unrecognized directive: {line}"),
                })
            }
        }
    }
    Mir::new(assignment)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::from("graph 1\n");
    for v in g.vertices() {
        if g.degree(v) == 0 {
            writeln!(out, "vertex {v}").unwrap();
        }
    }
    for (a, b) in g.edges() {
        writeln!(out, "edge {a} {b}").unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = meaningful_lines(text);
    expect_header(lines.next(), "graph")?;
    let mut g = Graph::new();
    for (lineno, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", id] => g.add_vertex(VertexId::from(*id)),
            ["edge", a, b] => {
                let (a, b) = (VertexId::from(*a), VertexId::from(*b));
                g.add_vertex(a.clone());
                g.add_vertex(b.clone());
                g.add_edge(&a, &b).map_err(|e| Error::Parse {
                    line: lineno,
                    msg: e.to_string(),
                })?;
            }
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unrecognized directive: {line}"),
                })
            }
        }
    }
    Ok(g)
}

pub fn read_graph_file(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn read_mir_file(path: impl AsRef<Path>) -> Result<Mir> {
    parse_mir(&std::fs::read_to_string(path)?)
}

pub fn write_graph_file(path: impl AsRef<Path>, g: &Graph) -> Result<()> {
    Ok(std::fs::write(path, write_graph(g))?)
}

pub fn write_mir_file(path: impl AsRef<Path>, rep: &Mir) -> Result<()> {
    Ok(std::fs::write(path, write_mir(rep))?)
}

fn parse_coord(token: &str, line: usize) -> Result<i64> {
    token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad integer coordinate: {token}"),
    })
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn expect_header(line: Option<(usize, &str)>, kind: &str) -> Result<()> {
    match line {
        Some((_, l)) if l.split_whitespace().collect::<Vec<_>>() == [kind, "1"] => Ok(()),
        Some((line, l)) => Err(Error::Parse {
            line,
            msg: format!("expected header `{kind} 1`, found `{l}`"),
        }),
        None => Err(Error::Parse {
            line: 0,
            msg: format!("empty input, expected `{kind} 1` header"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn graph_round_trip_is_byte_stable() {
        let g = fixtures::c4();
        let text = write_graph(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(write_graph(&back), text);
    }

    #[test]
    fn mir_round_trip() {
        let rep = fixtures::c4_rep();
        let text = write_mir(&rep);
        assert_eq!(parse_mir(&text).unwrap(), rep);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let g = parse_graph("# a comment\ngraph 1\n\nvertex x\n# another\nedge a b\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn isolated_vertices_survive() {
        let mut g = Graph::new();
        g.add_vertex("lonely".into());
        let back = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(parse_graph("graph 2\n").is_err());
        assert!(parse_mir("mir 1\nvertex v 1\n").is_err());
        assert!(parse_mir("mir 1\nvertex v 1 2\nvertex v 3 4\n").is_err());
        assert!(parse_graph("graph 1\nedge a a\n").is_err());
    }
}
