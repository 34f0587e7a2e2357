//! Weighted automata as coalgebras `X -> S x X^A` on free carriers.
//!
//! States are configurations `x` (column vectors); the transition on letter
//! `a` is the matrix `M_a` whose column `j` is `c_a(e_j)`, and the output is
//! the row functional `out`.

mod format;

pub use format::{parse_automaton, write_automaton};

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{closure_under_maps, concat, dot, is_nonneg, sum, RMat, RVec, Rat, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemiringTag {
    Nat,
    Int,
    QPlus,
    Q,
    RPlus,
    Real,
    /// Cubic functor over `[0,1]`, carriers are simplices.
    Unit,
    /// The subcubic convex functor; carriers are simplices.
    Pca,
}

impl SemiringTag {
    pub const ALL: [SemiringTag; 8] = [
        SemiringTag::Nat,
        SemiringTag::Int,
        SemiringTag::QPlus,
        SemiringTag::Q,
        SemiringTag::RPlus,
        SemiringTag::Real,
        SemiringTag::Unit,
        SemiringTag::Pca,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemiringTag::Nat => "nat",
            SemiringTag::Int => "int",
            SemiringTag::QPlus => "qplus",
            SemiringTag::Q => "q",
            SemiringTag::RPlus => "rplus",
            SemiringTag::Real => "real",
            SemiringTag::Unit => "unit",
            SemiringTag::Pca => "pca",
        }
    }

    pub fn integral(self) -> bool {
        matches!(self, SemiringTag::Nat | SemiringTag::Int)
    }

    pub fn nonnegative(self) -> bool {
        !matches!(self, SemiringTag::Int | SemiringTag::Q | SemiringTag::Real)
    }

    /// The ring completion.
    pub fn completion(self) -> SemiringTag {
        match self {
            SemiringTag::Nat | SemiringTag::Int => SemiringTag::Int,
            SemiringTag::QPlus | SemiringTag::Q => SemiringTag::Q,
            _ => SemiringTag::Real,
        }
    }

    /// Coefficient ring used for closures of the completion.
    pub fn ring(self) -> Ring {
        if self.integral() {
            Ring::Z
        } else {
            Ring::Q
        }
    }

    /// Whether `x` is a scalar of the semiring.
    pub fn contains_scalar(self, x: &Rat) -> bool {
        if self.integral() && !x.is_integer() {
            return false;
        }
        if self.nonnegative() && x.is_negative() {
            return false;
        }
        if matches!(self, SemiringTag::Unit | SemiringTag::Pca) && *x > Rat::one() {
            return false;
        }
        true
    }

    /// Whether `x` lies in the free carrier on `x.len()` generators: `S^n`
    /// for the cubic tags, the simplex for `Unit` and `Pca`.
    pub fn carrier_contains(self, x: &[Rat]) -> bool {
        match self {
            SemiringTag::Unit | SemiringTag::Pca => is_nonneg(x) && sum(x) <= Rat::one(),
            _ => x.iter().all(|v| self.contains_scalar(v)),
        }
    }
}

impl fmt::Display for SemiringTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SemiringTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown semiring '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedAutomaton {
    tag: SemiringTag,
    alphabet: Vec<String>,
    out: RVec,
    trans: Vec<RMat>,
}

impl WeightedAutomaton {
    /// Builds an automaton, checking dimensions and the entry constraints of
    /// `tag`. `trans[i]` is the matrix of `alphabet[i]`.
    pub fn new(tag: SemiringTag, alphabet: Vec<String>, out: RVec, trans: Vec<RMat>) -> Result<Self> {
        let n = out.len();
        for (i, s) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(s) {
                return Err(Error::InvalidAutomaton(format!("duplicate symbol '{s}'")));
            }
        }
        if trans.len() != alphabet.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} symbols but {} transition matrices",
                alphabet.len(),
                trans.len()
            )));
        }
        for (s, m) in alphabet.iter().zip(&trans) {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "matrix of '{s}' is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let aut = WeightedAutomaton { tag, alphabet, out, trans };
        aut.check_entries()?;
        Ok(aut)
    }

    fn check_entries(&self) -> Result<()> {
        let tag = self.tag;
        let bad = |what: String| Err(Error::InvalidAutomaton(format!("{what} violates semiring {tag}")));
        let scalar_ok = |x: &Rat| {
            (!tag.integral() || x.is_integer()) && (!tag.nonnegative() || !x.is_negative())
        };
        for (j, o) in self.out.iter().enumerate() {
            if !tag.contains_scalar(o) {
                return bad(format!("output {j} = {o}"));
            }
        }
        for (s, m) in self.alphabet.iter().zip(&self.trans) {
            if let Some(x) = m.entries().find(|x| !scalar_ok(x)) {
                return bad(format!("entry {x} of '{s}'"));
            }
        }
        match tag {
            SemiringTag::Unit => {
                for (s, m) in self.alphabet.iter().zip(&self.trans) {
                    for j in 0..self.n() {
                        if sum(&m.col(j)) > Rat::one() {
                            return bad(format!("column {j} of '{s}' (sum exceeds 1)"));
                        }
                    }
                }
            }
            SemiringTag::Pca => {
                for j in 0..self.n() {
                    let total = self.trans.iter().fold(self.out[j].clone(), |acc, m| acc + sum(&m.col(j)));
                    if total > Rat::one() {
                        return bad(format!("state {j} (output plus column sums is {total})"));
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn tag(&self) -> SemiringTag {
        self.tag
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn out(&self) -> &[Rat] {
        &self.out
    }

    pub fn matrices(&self) -> &[RMat] {
        &self.trans
    }

    pub fn symbol_index(&self, a: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|s| s == a)
            .ok_or_else(|| Error::UnknownSymbol(a.to_string()))
    }

    pub fn matrix(&self, a: &str) -> Result<&RMat> {
        Ok(&self.trans[self.symbol_index(a)?])
    }

    /// Checks that `x` is a configuration of the free carrier.
    pub fn check_state(&self, x: &[Rat]) -> Result<()> {
        self.check_dim(x)?;
        if !self.tag.carrier_contains(x) {
            return Err(Error::Precondition(format!("state is not in the {} carrier", self.tag)));
        }
        Ok(())
    }

    fn check_dim(&self, x: &[Rat]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "state has length {}, automaton has {} states",
                x.len(),
                self.n()
            )));
        }
        Ok(())
    }

    /// `c_a(x) = M_a x`.
    pub fn step(&self, x: &[Rat], a: &str) -> Result<RVec> {
        self.check_dim(x)?;
        Ok(self.matrix(a)?.mul_vec(x))
    }

    pub fn output(&self, x: &[Rat]) -> Rat {
        dot(&self.out, x)
    }

    /// All trace values on words of length at most `depth`.
    pub fn trace(&self, x: &[Rat], depth: usize) -> Result<Trace> {
        self.check_dim(x)?;
        let mut entries = Vec::new();
        let mut layer: Vec<(Vec<usize>, RVec)> = vec![(Vec::new(), x.to_vec())];
        for len in 0..=depth {
            let mut next = Vec::new();
            for (w, y) in layer {
                entries.push((w.clone(), self.output(&y)));
                if len < depth {
                    for (i, m) in self.trans.iter().enumerate() {
                        let mut w2 = w.clone();
                        w2.push(i);
                        next.push((w2, m.mul_vec(&y)));
                    }
                }
            }
            layer = next;
        }
        Ok(Trace { alphabet: self.alphabet.clone(), depth, entries })
    }

    /// The same matrices read over the ring completion of the tag.
    pub fn extend_scalars(&self) -> WeightedAutomaton {
        WeightedAutomaton { tag: self.tag.completion(), ..self.clone() }
    }

    pub fn with_tag(&self, tag: SemiringTag) -> Result<WeightedAutomaton> {
        WeightedAutomaton::new(tag, self.alphabet.clone(), self.out.clone(), self.trans.clone())
    }
}

/// Trace values on all words up to a fixed length, in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    alphabet: Vec<String>,
    depth: usize,
    entries: Vec<(Vec<usize>, Rat)>,
}

impl Trace {
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Words are sequences of alphabet indices.
    pub fn get(&self, word: &[usize]) -> Option<&Rat> {
        self.entries.iter().find(|(w, _)| w == word).map(|(_, v)| v)
    }

    pub fn entries(&self) -> &[(Vec<usize>, Rat)] {
        &self.entries
    }

    pub fn word_string(&self, word: &[usize]) -> String {
        word_string(&self.alphabet, word)
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, v) in &self.entries {
            writeln!(f, "{}\t{}", self.word_string(w), v)?;
        }
        Ok(())
    }
}

/// Renders a word; the empty word is `ε`.
pub fn word_string(alphabet: &[String], word: &[usize]) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    let sep = if alphabet.iter().all(|s| s.chars().count() == 1) { "" } else { " " };
    word.iter().map(|&i| alphabet[i].as_str()).collect::<Vec<_>>().join(sep)
}

fn check_compatible(aut1: &WeightedAutomaton, aut2: &WeightedAutomaton) -> Result<()> {
    if aut1.tag != aut2.tag {
        return Err(Error::TagMismatch(aut1.tag, aut2.tag));
    }
    if aut1.alphabet != aut2.alphabet {
        return Err(Error::Precondition(format!(
            "alphabets differ: [{}] vs [{}]",
            aut1.alphabet.join(" "),
            aut2.alphabet.join(" ")
        )));
    }
    Ok(())
}

/// Paired maps `diag(M1_a, M2_a)`, one per letter.
pub fn paired_matrices(aut1: &WeightedAutomaton, aut2: &WeightedAutomaton) -> Vec<RMat> {
    aut1.trans.iter().zip(&aut2.trans).map(|(m1, m2)| m1.block_diag(m2)).collect()
}

/// The output-difference functional `(out1, -out2)`.
fn difference_functional(aut1: &WeightedAutomaton, aut2: &WeightedAutomaton) -> RVec {
    concat(&aut1.out, &aut2.out.iter().map(|x| -x).collect::<Vec<_>>())
}

/// The smallest submodule `Z` over the ring completion containing
/// `(x1, x2)` and closed under the paired transitions, with the common
/// restriction of both coalgebras to it.
#[derive(Debug, Clone)]
pub struct PairSubmodule {
    pub n1: usize,
    pub n2: usize,
    pub ring: Ring,
    pub generators: Vec<RVec>,
    /// `Out_d(y1, y2) = out1 . y1`, transitions `diag(M1_a, M2_a)`, over
    /// the completion tag.
    pub coalgebra: WeightedAutomaton,
}

pub fn pair_submodule(
    aut1: &WeightedAutomaton,
    x1: &[Rat],
    aut2: &WeightedAutomaton,
    x2: &[Rat],
) -> Result<PairSubmodule> {
    check_compatible(aut1, aut2)?;
    aut1.check_dim(x1)?;
    aut2.check_dim(x2)?;
    if let Equivalence::NotEquivalent { word } = equivalent(aut1, x1, aut2, x2)? {
        return Err(Error::NotEquivalent { word: word_string(&aut1.alphabet, &word) });
    }
    let ring = aut1.tag.ring();
    let maps = paired_matrices(aut1, aut2);
    let generators = closure_under_maps(&concat(x1, x2), &maps, ring);
    let diff = difference_functional(aut1, aut2);
    if generators.iter().any(|g| !dot(&diff, g).is_zero()) {
        return Err(Error::Internal("output functionals differ on the pair closure".into()));
    }
    let out = concat(&aut1.out, &vec![Rat::zero(); aut2.n()]);
    let coalgebra = WeightedAutomaton::new(aut1.tag.completion(), aut1.alphabet.clone(), out, maps)?;
    Ok(PairSubmodule { n1: aut1.n(), n2: aut2.n(), ring, generators, coalgebra })
}

/// Outcome of an equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    /// Basis of the rational pair closure, on which the output difference vanishes.
    Equivalent { basis: Vec<RVec> },
    /// Shortest, then alphabetically first, word with different trace values.
    NotEquivalent { word: Vec<usize> },
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

/// Decides trace equivalence of `x1` in `aut1` and `x2` in `aut2`.
pub fn equivalent(
    aut1: &WeightedAutomaton,
    x1: &[Rat],
    aut2: &WeightedAutomaton,
    x2: &[Rat],
) -> Result<Equivalence> {
    check_compatible(aut1, aut2)?;
    aut1.check_dim(x1)?;
    aut2.check_dim(x2)?;
    let maps = paired_matrices(aut1, aut2);
    let basis = closure_under_maps(&concat(x1, x2), &maps, Ring::Q);
    let diff = difference_functional(aut1, aut2);
    if basis.iter().all(|g| dot(&diff, g).is_zero()) {
        return Ok(Equivalence::Equivalent { basis });
    }
    let word = separating_word(aut1, x1, aut2, x2)
        .ok_or_else(|| Error::Internal("no separating word within the depth bound".into()))?;
    Ok(Equivalence::NotEquivalent { word })
}

/// Breadth-first search for a word of length at most `n1 + n2` on which the
/// traces differ.
pub fn separating_word(
    aut1: &WeightedAutomaton,
    x1: &[Rat],
    aut2: &WeightedAutomaton,
    x2: &[Rat],
) -> Option<Vec<usize>> {
    let depth = aut1.n() + aut2.n();
    let maps = paired_matrices(aut1, aut2);
    let diff = difference_functional(aut1, aut2);
    let mut queue = VecDeque::from([(Vec::new(), concat(x1, x2))]);
    while let Some((w, y)) = queue.pop_front() {
        if !dot(&diff, &y).is_zero() {
            return Some(w);
        }
        if w.len() < depth {
            for (i, m) in maps.iter().enumerate() {
                let mut w2 = w.clone();
                w2.push(i);
                queue.push_back((w2, m.mul_vec(&y)));
            }
        }
    }
    None
}
