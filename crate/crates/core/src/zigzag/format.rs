//! Text format for zig-zag witnesses.
//!
//! ```text
//! zigzag
//! functor cubic qplus
//! alphabet a
//! node FREE_MODULE 1
//! gen 1
//! output 1/2
//! trans a
//! 1/2
//! node GENERATED_MODULE 2
//! gen 1 1
//! output 1/2 0
//! trans a
//! 1/2 0
//! 0 1/2
//! node FREE_MODULE 1
//! ...
//! morphism 1 0
//! 1 0
//! morphism 1 2
//! 0 1
//! relate 1 1 1
//! x1 1
//! x2 1
//! ```
//!
//! Matrices are written row by row; a morphism into a node of dimension `d`
//! has `d` rows.

use super::{FunctorTag, Morphism, NodeKind, ZigZag, ZigZagNode};
use crate::automata::SemiringTag;
use crate::error::Result;
use crate::linalg::{fmt_rvec, RMat, RVec, Rat};
use crate::text::{content_lines, err, expect_keyword, parse_count, rational_row};

type Lines<'a> = [(usize, Vec<&'a str>)];

/// Rows of a matrix with no columns are not written at all.
fn parse_matrix(lines: &Lines, pos: &mut usize, header: usize, rows: usize, cols: usize) -> Result<RMat> {
    if cols == 0 {
        return Ok(RMat::zeros(rows, 0));
    }
    let mut out = Vec::with_capacity(rows);
    for r in 0..rows {
        let Some((line, toks)) = lines.get(*pos) else {
            return Err(err(header, format!("matrix has {r} rows, expected {rows}")));
        };
        out.push(rational_row(*line, toks, cols)?);
        *pos += 1;
    }
    Ok(RMat::from_rows(&out, cols))
}

fn parse_node(lines: &Lines, pos: &mut usize, alphabet: &[String]) -> Result<ZigZagNode> {
    let (line, toks) = (lines[*pos].0, &lines[*pos].1);
    let [_, kind, dim] = toks.as_slice() else {
        return Err(err(line, "expected 'node <kind> <dimension>'"));
    };
    let kind: NodeKind = kind.parse().map_err(|m: String| err(line, m))?;
    let dim = parse_count(line, &[dim], "dimension")?;
    *pos += 1;
    let mut generators = Vec::new();
    while let Some((l, t)) = lines.get(*pos).filter(|(_, t)| t[0] == "gen") {
        generators.push(rational_row(*l, &t[1..], dim)?);
        *pos += 1;
    }
    let (l, t) = expect_keyword(lines, *pos, "output")?;
    let out = rational_row(l, t, dim)?;
    *pos += 1;
    let mut trans = Vec::with_capacity(alphabet.len());
    for a in alphabet {
        let (l, t) = expect_keyword(lines, *pos, "trans")?;
        if t != [a.as_str()] {
            return Err(err(l, format!("expected 'trans {a}'")));
        }
        *pos += 1;
        trans.push(parse_matrix(lines, pos, l, dim, dim)?);
    }
    Ok(ZigZagNode { kind, dim, generators, out, trans })
}

pub fn parse_zigzag(text: &str) -> Result<ZigZag> {
    let lines = content_lines(text);
    match lines.first() {
        Some((_, t)) if t.as_slice() == ["zigzag"] => {}
        Some((l, _)) => return Err(err(*l, "expected 'zigzag'")),
        None => return Err(err(0, "empty witness file")),
    }
    let (line, toks) = expect_keyword(&lines, 1, "functor")?;
    let functor = match toks {
        ["ghat"] => FunctorTag::Ghat,
        ["cubic", tag] => FunctorTag::Cubic(tag.parse::<SemiringTag>().map_err(|m| err(line, m))?),
        _ => return Err(err(line, "expected 'functor ghat' or 'functor cubic <semiring>'")),
    };
    let (_, toks) = expect_keyword(&lines, 2, "alphabet")?;
    let alphabet: Vec<String> = toks.iter().map(|s| s.to_string()).collect();

    let mut pos = 3;
    let mut nodes = Vec::new();
    while lines.get(pos).is_some_and(|(_, t)| t[0] == "node") {
        nodes.push(parse_node(&lines, &mut pos, &alphabet)?);
    }
    let node_index = |line: usize, tok: &str| -> Result<usize> {
        let i = parse_count(line, &[tok], "node index")?;
        if i >= nodes.len() {
            return Err(err(line, format!("no node {i}")));
        }
        Ok(i)
    };

    let mut morphisms = Vec::new();
    while let Some((line, toks)) = lines.get(pos).filter(|(_, t)| t[0] == "morphism") {
        let [_, from, to] = toks.as_slice() else {
            return Err(err(*line, "expected 'morphism <from> <to>'"));
        };
        let (from, to) = (node_index(*line, from)?, node_index(*line, to)?);
        pos += 1;
        let matrix = parse_matrix(&lines, &mut pos, *line, nodes[to].dim, nodes[from].dim)?;
        morphisms.push(Morphism { from, to, matrix });
    }

    let mut relating = Vec::new();
    while let Some((line, toks)) = lines.get(pos).filter(|(_, t)| t[0] == "relate") {
        let Some(idx) = toks.get(1) else {
            return Err(err(*line, "expected 'relate <node> <entries>'"));
        };
        let i = node_index(*line, idx)?;
        relating.push((i, rational_row(*line, &toks[2..], nodes[i].dim)?));
        pos += 1;
    }

    let mut endpoint = |kw: &str| -> Result<RVec> {
        let (line, toks) = expect_keyword(&lines, pos, kw)?;
        pos += 1;
        let dim = if kw == "x1" { nodes.first() } else { nodes.last() }.map_or(toks.len(), |n| n.dim);
        rational_row(line, toks, dim)
    };
    let x1 = endpoint("x1")?;
    let x2 = endpoint("x2")?;
    if let Some((line, toks)) = lines.get(pos) {
        return Err(err(*line, format!("unexpected '{}'", toks[0])));
    }
    Ok(ZigZag { functor, alphabet, nodes, morphisms, relating, x1, x2 })
}

fn push_matrix(s: &mut String, m: &RMat) {
    if m.cols() == 0 {
        return;
    }
    for i in 0..m.rows() {
        s.push_str(&fmt_rvec(m.row(i)));
        s.push('\n');
    }
}

fn push_row(s: &mut String, head: &str, v: &[Rat]) {
    push_words(s, head, &fmt_rvec(v));
}

fn push_words(s: &mut String, head: &str, rest: &str) {
    s.push_str(head);
    if !rest.is_empty() {
        s.push(' ');
        s.push_str(rest);
    }
    s.push('\n');
}

/// Renders a witness in the format read by [`parse_zigzag`].
pub fn write_zigzag(z: &ZigZag) -> String {
    let mut s = format!("zigzag\nfunctor {}\n", z.functor);
    push_words(&mut s, "alphabet", &z.alphabet.join(" "));
    for node in &z.nodes {
        s.push_str(&format!("node {} {}\n", node.kind, node.dim));
        for g in &node.generators {
            push_row(&mut s, "gen", g);
        }
        push_row(&mut s, "output", &node.out);
        for (a, m) in z.alphabet.iter().zip(&node.trans) {
            s.push_str(&format!("trans {a}\n"));
            push_matrix(&mut s, m);
        }
    }
    for m in &z.morphisms {
        s.push_str(&format!("morphism {} {}\n", m.from, m.to));
        push_matrix(&mut s, &m.matrix);
    }
    for (i, v) in &z.relating {
        push_row(&mut s, &format!("relate {i}"), v);
    }
    push_row(&mut s, "x1", &z.x1);
    push_row(&mut s, "x2", &z.x2);
    s
}
