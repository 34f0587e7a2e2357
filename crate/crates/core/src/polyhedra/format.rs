//! Text format for polyhedra.
//!
//! ```text
//! hrep            vrep            pca
//! dim 2           dim 2           dim 2
//! ineq -1 0 0     point 0 0       gen 1/2 0
//! ineq 0 -1 0     dir 1 0         gen 0 1
//! ineq 1 1 1
//! ```
//!
//! An `ineq` line lists the normal `a` followed by the bound `b` of
//! `a . x <= b`.

use super::{HRep, PcaPolytope, VRep};
use crate::error::Result;
use crate::linalg::{fmt_rvec, is_nonneg, RVec};
use crate::text::{content_lines, err, expect_keyword, parse_count, rational_row};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolytopeFile {
    H(HRep),
    V(VRep),
    Pca(PcaPolytope),
}

pub fn parse_polytope(text: &str) -> Result<PolytopeFile> {
    let lines = content_lines(text);
    let Some((line, toks)) = lines.first() else {
        return Err(err(0, "empty polytope file"));
    };
    let kind = match toks.as_slice() {
        [k] if ["hrep", "vrep", "pca"].contains(k) => *k,
        _ => return Err(err(*line, "expected 'hrep', 'vrep' or 'pca'")),
    };
    let (line, toks) = expect_keyword(&lines, 1, "dim")?;
    let dim = parse_count(line, toks, "dimension")?;
    let mut ineqs = Vec::new();
    let mut points = Vec::new();
    let mut dirs = Vec::new();
    let mut gens: Vec<RVec> = Vec::new();
    for (line, toks) in &lines[2..] {
        let line = *line;
        match (kind, toks[0]) {
            ("hrep", "ineq") => {
                let row = rational_row(line, &toks[1..], dim + 1)?;
                ineqs.push((row[..dim].to_vec(), row[dim].clone()));
            }
            ("vrep", "point") => points.push(rational_row(line, &toks[1..], dim)?),
            ("vrep", "dir") => dirs.push(rational_row(line, &toks[1..], dim)?),
            ("pca", "gen") => {
                let g = rational_row(line, &toks[1..], dim)?;
                if !is_nonneg(&g) {
                    return Err(err(line, "generators must be nonnegative"));
                }
                gens.push(g);
            }
            (_, other) => return Err(err(line, format!("unexpected '{other}' in {kind} file"))),
        }
    }
    Ok(match kind {
        "hrep" => PolytopeFile::H(HRep::new(dim, ineqs)),
        "vrep" => PolytopeFile::V(VRep::new(dim, points, dirs)),
        _ => PolytopeFile::Pca(PcaPolytope::new(dim, gens)),
    })
}

pub fn write_polytope(p: &PolytopeFile) -> String {
    let mut s = String::new();
    match p {
        PolytopeFile::H(h) => {
            s.push_str(&format!("hrep\ndim {}\n", h.dim));
            for (a, b) in &h.ineqs {
                s.push_str(&format!("ineq {} {}\n", fmt_rvec(a), b));
            }
        }
        PolytopeFile::V(v) => {
            s.push_str(&format!("vrep\ndim {}\n", v.dim));
            for x in &v.points {
                s.push_str(&format!("point {}\n", fmt_rvec(x)));
            }
            for d in &v.directions {
                s.push_str(&format!("dir {}\n", fmt_rvec(d)));
            }
        }
        PolytopeFile::Pca(x) => {
            s.push_str(&format!("pca\ndim {}\n", x.dim));
            for g in &x.generators {
                s.push_str(&format!("gen {}\n", fmt_rvec(g)));
            }
        }
    }
    s
}
