//! Independent checker for zig-zag witnesses.
//!
//! Nothing here reuses the construction: carrier membership is decided
//! directly from the generators listed in the witness.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{FunctorTag, ZigZag, ZigZagNode};
use crate::automata::SemiringTag;
use crate::linalg::{concat, dot, in_span, independent, is_integral, is_nonneg, Echelon, Lattice, RMat, RVec, Rat};
use crate::polyhedra::{minimize, LpOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Shape,
    NodeWellFormed,
    MorphismCarrier,
    MorphismSquare,
    ChainCondition,
    Endpoints,
    TraceSanity,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Shape => "shape",
            Check::NodeWellFormed => "node",
            Check::MorphismCarrier => "morphism-carrier",
            Check::MorphismSquare => "morphism-square",
            Check::ChainCondition => "chain",
            Check::Endpoints => "endpoints",
            Check::TraceSanity => "trace",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub check: Check,
    pub subject: String,
    /// Empty when the check passed.
    pub failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn valid(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed())
    }

    /// Distinct failing check kinds, in report order.
    pub fn failing_checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        for r in self.failures() {
            if !out.contains(&r.check) {
                out.push(r.check);
            }
        }
        out
    }

    fn record(&mut self, check: Check, subject: impl Into<String>, failure: Option<String>) {
        self.results.push(CheckResult { check, subject: subject.into(), failure });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        if failed == 0 {
            return writeln!(f, "VALID ({} checks passed)", self.results.len());
        }
        writeln!(f, "INVALID ({failed} of {} checks failed)", self.results.len())?;
        for r in self.failures() {
            writeln!(f, "  {} {}: {}", r.check, r.subject, r.failure.as_deref().unwrap_or(""))?;
        }
        Ok(())
    }
}

/// How a list of generators determines a carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Span {
    Nat,
    Int,
    Linear,
    Cone,
    Subconvex,
}

fn span_of(functor: FunctorTag) -> Option<Span> {
    Some(match functor {
        FunctorTag::Cubic(SemiringTag::Nat) => Span::Nat,
        FunctorTag::Cubic(SemiringTag::Int) => Span::Int,
        FunctorTag::Cubic(SemiringTag::Q | SemiringTag::Real) => Span::Linear,
        FunctorTag::Cubic(SemiringTag::QPlus | SemiringTag::RPlus) => Span::Cone,
        FunctorTag::Cubic(SemiringTag::Unit) | FunctorTag::Ghat => Span::Subconvex,
        FunctorTag::Cubic(SemiringTag::Pca) => return None,
    })
}

/// Columns `g_i` of a standard-form system, one row per coordinate.
fn generator_rows(gens: &[RVec], dim: usize) -> Vec<RVec> {
    (0..dim).map(|i| gens.iter().map(|g| g[i].clone()).collect()).collect()
}

/// `min Σ λ_i` over `v = Σ λ_i g_i`, `λ >= 0`; `None` when infeasible.
fn gauge(gens: &[RVec], v: &[Rat]) -> Option<Rat> {
    match minimize(&vec![Rat::one(); gens.len()], &generator_rows(gens, v.len()), v) {
        LpOutcome::Optimal { value, .. } => Some(value),
        _ => None,
    }
}

/// Depth-first search for `v = Σ λ_i g_i` with natural `λ`; generators
/// must be nonnegative integer vectors.
fn nat_span_contains(gens: &[RVec], v: &[Rat]) -> bool {
    fn go(gens: &[RVec], i: usize, rem: RVec, dead: &mut HashSet<(usize, RVec)>) -> bool {
        if rem.iter().all(Zero::is_zero) {
            return true;
        }
        if i == gens.len() || dead.contains(&(i, rem.clone())) {
            return false;
        }
        let g = &gens[i];
        let most = g
            .iter()
            .zip(&rem)
            .filter(|(gj, _)| gj.is_positive())
            .map(|(gj, rj)| (rj / gj).floor())
            .min()
            .expect("generators are nonzero");
        let mut t = most;
        while !t.is_negative() {
            let next: RVec = rem.iter().zip(g).map(|(r, gj)| r - &t * gj).collect();
            if go(gens, i + 1, next, dead) {
                return true;
            }
            t -= Rat::one();
        }
        dead.insert((i, rem));
        false
    }
    if !is_integral(v) || !is_nonneg(v) {
        return false;
    }
    let gens: Vec<RVec> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
    go(&gens, 0, v.to_vec(), &mut HashSet::new())
}

fn contains(span: Span, gens: &[RVec], v: &[Rat]) -> bool {
    match span {
        Span::Nat => nat_span_contains(gens, v),
        Span::Int => is_integral(v) && Lattice::from_rows(gens, v.len()).contains(v),
        Span::Linear => in_span(gens, v),
        Span::Cone => gauge(gens, v).is_some(),
        Span::Subconvex => gauge(gens, v).is_some_and(|s| s <= Rat::one()),
    }
}

/// Ways in which a node can be unusable for the remaining checks.
fn node_shape_error(z: &ZigZag, node: &ZigZagNode, span: Span) -> Option<String> {
    let n = node.dim;
    if node.generators.iter().any(|g| g.len() != n) {
        return Some("generator of the wrong length".into());
    }
    if node.out.len() != n {
        return Some("output functional of the wrong length".into());
    }
    if node.trans.len() != z.alphabet.len() || node.trans.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Some("transition matrices do not match the alphabet and dimension".into());
    }
    if node.kind.is_pca() != (span == Span::Subconvex) {
        return Some(format!("{} does not fit functor {}", node.kind, z.functor));
    }
    match span {
        Span::Nat if !node.generators.iter().all(|g| is_integral(g) && is_nonneg(g)) => {
            Some("generators must be natural vectors".into())
        }
        Span::Int if !node.generators.iter().all(|g| is_integral(g)) => Some("generators must be integral".into()),
        Span::Subconvex if !node.generators.iter().all(|g| is_nonneg(g)) => {
            Some("generators must be nonnegative".into())
        }
        _ => None,
    }
}

/// Whether `(out . g, (M_a g)_a)` lies in `F(carrier)`.
fn coalgebra_failure(z: &ZigZag, node: &ZigZagNode, span: Span, g: &[Rat]) -> Option<String> {
    let o = dot(&node.out, g);
    let images: Vec<RVec> = node.trans.iter().map(|m| m.mul_vec(g)).collect();
    match z.functor {
        FunctorTag::Cubic(tag) => {
            if !tag.contains_scalar(&o) {
                return Some(format!("output {o} is not a scalar of {tag}"));
            }
            for (a, img) in z.alphabet.iter().zip(&images) {
                if !contains(span, &node.generators, img) {
                    return Some(format!("the {a}-successor leaves the carrier"));
                }
            }
            None
        }
        FunctorTag::Ghat => {
            if o.is_negative() {
                return Some(format!("negative output {o}"));
            }
            let mut total = o;
            for img in &images {
                match gauge(&node.generators, img) {
                    Some(s) => total += s,
                    None => return Some("a successor has infinite gauge".into()),
                }
            }
            (total > Rat::one()).then(|| format!("output plus successor gauges is {total} > 1"))
        }
    }
}

fn check_nodes(z: &ZigZag, span: Span, report: &mut Report) -> Vec<bool> {
    let mut ok = Vec::with_capacity(z.nodes.len());
    for (i, node) in z.nodes.iter().enumerate() {
        let mut failure = node_shape_error(z, node, span);
        let usable = failure.is_none();
        if failure.is_none() && node.kind.is_free() {
            let square = node.generators.len() == node.dim;
            if !independent(&node.generators, node.dim) || (node.kind.is_pca() && !square) {
                failure = Some(format!("{} needs a basis as generators", node.kind));
            }
        }
        if failure.is_none() {
            failure = node.generators.iter().find_map(|g| coalgebra_failure(z, node, span, g));
        }
        report.record(Check::NodeWellFormed, format!("node {i}"), failure);
        ok.push(usable);
    }
    ok
}

/// Structural problems that make the other checks meaningless.
fn structure_error(z: &ZigZag) -> Option<String> {
    let len = z.nodes.len();
    if len == 0 {
        return Some("no nodes".into());
    }
    if z.morphisms.len() != len - 1 {
        return Some(format!("{} nodes need {} morphisms, found {}", len, len - 1, z.morphisms.len()));
    }
    for i in 0..len - 1 {
        let between = z
            .morphisms
            .iter()
            .filter(|m| (m.from == i && m.to == i + 1) || (m.from == i + 1 && m.to == i))
            .count();
        if between != 1 {
            return Some(format!("nodes {i} and {} must be joined by exactly one morphism", i + 1));
        }
    }
    for (j, m) in z.morphisms.iter().enumerate() {
        if m.matrix.rows() != z.nodes[m.to].dim || m.matrix.cols() != z.nodes[m.from].dim {
            return Some(format!("morphism {j} has the wrong size"));
        }
    }
    let sinks = z.sinks();
    if let Some(m) = z.morphisms.iter().find(|m| sinks.contains(&m.from)) {
        return Some(format!("node {} has both incoming and outgoing arrows", m.from));
    }
    None
}

fn check_shape(z: &ZigZag, report: &mut Report) -> Option<Span> {
    let Some(span) = span_of(z.functor) else {
        report.record(Check::Shape, "functor", Some(format!("no zig-zags for functor {}", z.functor)));
        return None;
    };
    if let Some(e) = structure_error(z) {
        report.record(Check::Shape, "diagram", Some(e));
        return None;
    }
    report.record(Check::Shape, "diagram", None);
    for s in z.sinks() {
        let kind = z.nodes[s].kind;
        let failure = (!kind.is_free()).then(|| format!("node with incoming arrows is {kind}"));
        report.record(Check::Shape, format!("node {s} freeness"), failure);
    }
    let mut seen = HashSet::new();
    let sinks = z.sinks();
    let failure = z.relating.iter().find_map(|(i, _)| {
        if *i >= z.nodes.len() {
            Some(format!("relating element at missing node {i}"))
        } else if sinks.contains(i) {
            Some(format!("relating element at node {i}, which has incoming arrows"))
        } else if !seen.insert(*i) {
            Some(format!("two relating elements at node {i}"))
        } else {
            None
        }
    });
    report.record(Check::Shape, "relating positions", failure);
    Some(span)
}

fn check_morphisms(z: &ZigZag, span: Span, usable: &[bool], report: &mut Report) {
    for (j, m) in z.morphisms.iter().enumerate() {
        let subject = format!("morphism {j} ({} -> {})", m.from, m.to);
        if !usable[m.from] || !usable[m.to] {
            let e = Some("endpoint node is malformed".to_string());
            report.record(Check::MorphismCarrier, subject.clone(), e.clone());
            report.record(Check::MorphismSquare, subject, e);
            continue;
        }
        let (src, tgt) = (&z.nodes[m.from], &z.nodes[m.to]);
        let carrier = src
            .generators
            .iter()
            .position(|g| !contains(span, &tgt.generators, &m.matrix.mul_vec(g)))
            .map(|i| format!("image of generator {i} leaves the target carrier"));
        report.record(Check::MorphismCarrier, subject.clone(), carrier);
        let square = src.generators.iter().enumerate().find_map(|(i, g)| {
            let fg = m.matrix.mul_vec(g);
            if dot(&src.out, g) != dot(&tgt.out, &fg) {
                return Some(format!("outputs differ on generator {i}"));
            }
            src.trans.iter().zip(&tgt.trans).zip(&z.alphabet).find_map(|((ms, mt), a)| {
                (m.matrix.mul_vec(&ms.mul_vec(g)) != mt.mul_vec(&fg))
                    .then(|| format!("{a}-successors differ on generator {i}"))
            })
        });
        report.record(Check::MorphismSquare, subject, square);
    }
}

/// Image of the relating element of `from` in node `to`, if both exist.
fn pushed(z: &ZigZag, from: usize, to: usize) -> Option<RVec> {
    let m = z.morphisms.iter().find(|m| m.from == from && m.to == to)?;
    let v = z.relating_element(from)?;
    (v.len() == m.matrix.cols()).then(|| m.matrix.mul_vec(v))
}

fn check_chain(z: &ZigZag, span: Span, usable: &[bool], report: &mut Report) {
    let sinks = z.sinks();
    for i in (0..z.nodes.len()).filter(|i| !sinks.contains(i)) {
        let node = &z.nodes[i];
        let failure = match z.relating_element(i) {
            None => Some("missing relating element".to_string()),
            Some(v) if v.len() != node.dim => Some("relating element has the wrong length".into()),
            Some(v) if usable[i] && !contains(span, &node.generators, v) => {
                Some("relating element is not in the carrier".into())
            }
            Some(_) => None,
        };
        report.record(Check::ChainCondition, format!("node {i} element"), failure);
    }
    for &s in &sinks {
        let from: Vec<usize> = z.morphisms.iter().filter(|m| m.to == s).map(|m| m.from).collect();
        if from.len() < 2 {
            continue;
        }
        let images: Vec<Option<RVec>> = from.iter().map(|&p| pushed(z, p, s)).collect();
        let failure = if images.iter().any(Option::is_none) {
            Some("a neighbouring relating element is missing".to_string())
        } else if images.windows(2).any(|w| w[0] != w[1]) {
            Some(format!("images from nodes {from:?} disagree"))
        } else {
            None
        };
        report.record(Check::ChainCondition, format!("node {s} images"), failure);
    }
}

fn check_endpoint(z: &ZigZag, span: Span, usable: &[bool], which: usize, report: &mut Report) {
    let (idx, x, neighbour) = if which == 1 {
        (0, &z.x1, 1)
    } else {
        (z.nodes.len() - 1, &z.x2, z.nodes.len().wrapping_sub(2))
    };
    let node = &z.nodes[idx];
    let failure = if x.len() != node.dim {
        Some("wrong length".to_string())
    } else if usable[idx] && !contains(span, &node.generators, x) {
        Some("not in the endpoint carrier".into())
    } else if !z.sinks().contains(&idx) {
        match z.relating_element(idx) {
            Some(v) if v == x => None,
            Some(_) => Some("differs from the relating element at the end".into()),
            None => Some("no relating element at the end".into()),
        }
    } else {
        match pushed(z, neighbour, idx) {
            Some(v) if &v == x => None,
            Some(_) => Some("image of the neighbouring relating element differs".into()),
            None => Some("the neighbouring relating element is missing".into()),
        }
    };
    report.record(Check::Endpoints, format!("x{which}"), failure);
}

/// Compares the traces of `x1` and `x2` on all words up to the combined
/// dimension, through the span of the paired iterates.
fn trace_failure(z: &ZigZag) -> Option<String> {
    let (first, last) = (&z.nodes[0], &z.nodes[z.nodes.len() - 1]);
    if z.x1.len() != first.dim || z.x2.len() != last.dim {
        return Some("endpoint length mismatch".into());
    }
    let diff = concat(&first.out, &last.out.iter().map(|x| -x).collect::<RVec>());
    let maps: Vec<RMat> = first.trans.iter().zip(&last.trans).map(|(a, b)| a.block_diag(b)).collect();
    let start = concat(&z.x1, &z.x2);
    let mut seen = Echelon::default();
    let mut frontier = vec![start];
    for depth in 0..=(first.dim + last.dim) {
        let mut next = Vec::new();
        for v in frontier {
            if seen.contains(&v) {
                continue;
            }
            if !dot(&diff, &v).is_zero() {
                return Some(format!("traces differ on a word of length {depth}"));
            }
            seen.insert(&v);
            next.extend(maps.iter().map(|m| m.mul_vec(&v)));
        }
        frontier = next;
    }
    None
}

/// Checks every condition a zig-zag witness must satisfy and reports each
/// one separately.
pub fn verify_zigzag(z: &ZigZag) -> Report {
    let mut report = Report::default();
    let Some(span) = check_shape(z, &mut report) else {
        return report;
    };
    let usable = check_nodes(z, span, &mut report);
    check_morphisms(z, span, &usable, &mut report);
    check_chain(z, span, &usable, &mut report);
    check_endpoint(z, span, &usable, 1, &mut report);
    check_endpoint(z, span, &usable, 2, &mut report);
    let traces = if usable[0] && usable[z.nodes.len() - 1] {
        trace_failure(z)
    } else {
        Some("endpoint node is malformed".into())
    };
    report.record(Check::TraceSanity, "endpoints", traces);
    report
}
