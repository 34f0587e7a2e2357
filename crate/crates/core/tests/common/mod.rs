//! Seeded random instances shared by the integration tests.
#![allow(dead_code, unused_imports)]

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wazz::automata::{SemiringTag, WeightedAutomaton};
use wazz::linalg::{in_span, int, is_integral, is_nonneg, rat, sum, Lattice, RMat, RVec, Rat};
use wazz::polyhedra::{minimize, LpOutcome, PcaPolytope};

mod geometry;
mod suites;
mod witness;

pub use cones::*;
pub use geometry::*;
pub use suites::*;
pub use witness::*;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const LETTERS: [&str; 2] = ["a", "b"];

pub fn alphabet(k: usize) -> Vec<String> {
    LETTERS[..k].iter().map(|s| s.to_string()).collect()
}

/// Small nonnegative rational, zero about half the time.
pub fn sparse_nonneg(rng: &mut TestRng) -> Rat {
    if rng.gen_bool(0.5) {
        Rat::zero()
    } else {
        rat(rng.gen_range(1..=3), rng.gen_range(1..=3))
    }
}

pub fn signed(rng: &mut TestRng) -> Rat {
    let v = sparse_nonneg(rng);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// Nonnegative vector scaled so that its entries sum to at most `budget`.
pub fn subdistribution(rng: &mut TestRng, len: usize, budget: &Rat) -> RVec {
    let w: RVec = (0..len).map(|_| int(rng.gen_range(0..=3) * i64::from(rng.gen_bool(0.7)))).collect();
    let total = sum(&w);
    if total.is_zero() {
        return w;
    }
    let scale = budget * rat(rng.gen_range(1..=4), 4) / total;
    w.iter().map(|x| x * &scale).collect()
}

/// Entry of a random matrix or output for a tag without mass constraints.
fn entry(rng: &mut TestRng, tag: SemiringTag) -> Rat {
    match tag {
        SemiringTag::Nat => int(rng.gen_range(0..=2) * i64::from(rng.gen_bool(0.5))),
        SemiringTag::Int => int(rng.gen_range(-2..=2) * i64::from(rng.gen_bool(0.5))),
        SemiringTag::QPlus | SemiringTag::RPlus => sparse_nonneg(rng),
        SemiringTag::Q | SemiringTag::Real => signed(rng),
        SemiringTag::Unit | SemiringTag::Pca => unreachable!("mass-constrained tags are built column by column"),
    }
}

pub fn random_automaton(rng: &mut TestRng, tag: SemiringTag, n: usize, letters: usize) -> WeightedAutomaton {
    let mut out = Vec::with_capacity(n);
    let mut cols: Vec<Vec<RVec>> = vec![Vec::with_capacity(n); letters];
    for _ in 0..n {
        match tag {
            SemiringTag::Unit => {
                out.push(rat(rng.gen_range(0..=4), 4));
                for c in cols.iter_mut() {
                    c.push(subdistribution(rng, n, &Rat::one()));
                }
            }
            SemiringTag::Pca => {
                // Output and all successor columns share one unit of mass.
                let shares = subdistribution(rng, letters + 1, &Rat::one());
                out.push(shares[0].clone());
                for (a, c) in cols.iter_mut().enumerate() {
                    c.push(subdistribution(rng, n, &shares[a + 1]));
                }
            }
            _ => {
                out.push(entry(rng, tag));
                for c in cols.iter_mut() {
                    c.push((0..n).map(|_| entry(rng, tag)).collect());
                }
            }
        }
    }
    let trans = cols.iter().map(|c| RMat::from_cols(c, n)).collect();
    WeightedAutomaton::new(tag, alphabet(letters), out, trans).expect("generated automaton is valid")
}

pub fn random_state(rng: &mut TestRng, tag: SemiringTag, n: usize) -> RVec {
    match tag {
        SemiringTag::Unit | SemiringTag::Pca => subdistribution(rng, n, &Rat::one()),
        SemiringTag::Nat => (0..n).map(|_| int(rng.gen_range(0..=2))).collect(),
        SemiringTag::Int => (0..n).map(|_| int(rng.gen_range(-2..=2))).collect(),
        _ => (0..n).map(|_| entry(rng, tag)).collect(),
    }
}

/// Splits `v` into `parts` summands that stay in the semiring.
fn split_value(rng: &mut TestRng, tag: SemiringTag, v: &Rat, parts: usize) -> RVec {
    let mut out = vec![Rat::zero(); parts];
    if tag.integral() {
        let units = v.abs().to_integer();
        let mut k = num_bigint::BigInt::zero();
        while k < units {
            out[rng.gen_range(0..parts)] += Rat::one();
            k += 1;
        }
        if v.is_negative() {
            out.iter_mut().for_each(|x| *x = -x.clone());
        }
        return out;
    }
    let mut w: Vec<i64> = (0..parts).map(|_| rng.gen_range(0..=2)).collect();
    if w.iter().all(|&x| x == 0) {
        w[rng.gen_range(0..parts)] = 1;
    }
    let total: i64 = w.iter().sum();
    for (o, wi) in out.iter_mut().zip(w) {
        *o = v * rat(wi, total);
    }
    out
}

/// A vector `x` with `σ x = target`, where `σ e_k = e_{h[k]}`.
pub fn split_vector(rng: &mut TestRng, tag: SemiringTag, target: &[Rat], h: &[usize]) -> RVec {
    let mut x = vec![Rat::zero(); h.len()];
    for (j, v) in target.iter().enumerate() {
        let pre: Vec<usize> = (0..h.len()).filter(|&k| h[k] == j).collect();
        for (k, part) in pre.iter().zip(split_value(rng, tag, v, pre.len())) {
            x[*k] = part;
        }
    }
    x
}

/// Random surjection `{0..n} -> {0..m}`.
pub fn surjection(rng: &mut TestRng, n: usize, m: usize) -> Vec<usize> {
    let mut h: Vec<usize> = (0..m).collect();
    h.extend((m..n).map(|_| rng.gen_range(0..m)));
    h.shuffle(rng);
    h
}

/// An automaton on `n` states mapped onto `base` by the coordinate merge
/// `h`, which is then a coalgebra morphism.
pub fn split_automaton(rng: &mut TestRng, base: &WeightedAutomaton, n: usize) -> (WeightedAutomaton, Vec<usize>) {
    let h = surjection(rng, n, base.n());
    let out = h.iter().map(|&j| base.out()[j].clone()).collect();
    let trans = base
        .matrices()
        .iter()
        .map(|m| {
            let cols: Vec<RVec> = h.iter().map(|&j| split_vector(rng, base.tag(), &m.col(j), &h)).collect();
            RMat::from_cols(&cols, n)
        })
        .collect();
    let aut = WeightedAutomaton::new(base.tag(), base.alphabet().to_vec(), out, trans).expect("split stays valid");
    (aut, h)
}

pub struct Pair {
    pub a1: WeightedAutomaton,
    pub x1: RVec,
    pub a2: WeightedAutomaton,
    pub x2: RVec,
}

/// Two splits of one random automaton, started in states over a common
/// base state, so the pair is equivalent by construction.
pub fn equivalent_pair(rng: &mut TestRng, tag: SemiringTag, max_n: usize, max_letters: usize) -> Pair {
    let letters = rng.gen_range(1..=max_letters);
    let nb = rng.gen_range(1..=max_n);
    let base = random_automaton(rng, tag, nb, letters);
    let xb = random_state(rng, tag, nb);
    let (n1, n2) = (rng.gen_range(nb..=max_n), rng.gen_range(nb..=max_n));
    let (a1, h1) = split_automaton(rng, &base, n1);
    let (a2, h2) = split_automaton(rng, &base, n2);
    let x1 = split_vector(rng, tag, &xb, &h1);
    let x2 = split_vector(rng, tag, &xb, &h2);
    Pair { a1, x1, a2, x2 }
}

/// Pairs that are equivalent, nearly equivalent (one output changed) or
/// unrelated, in roughly equal shares.
pub fn mixed_pair(rng: &mut TestRng, tag: SemiringTag, max_n: usize, max_letters: usize) -> Pair {
    let mut p = equivalent_pair(rng, tag, max_n, max_letters);
    match rng.gen_range(0..3) {
        0 => p,
        1 => {
            let mut out = p.a2.out().to_vec();
            let j = rng.gen_range(0..out.len());
            out[j] = match tag {
                SemiringTag::Unit | SemiringTag::Pca => out[j].clone() / int(2),
                _ => out[j].clone() + Rat::one(),
            };
            p.a2 = WeightedAutomaton::new(tag, p.a2.alphabet().to_vec(), out, p.a2.matrices().to_vec()).unwrap();
            p
        }
        _ => {
            let k = p.a1.alphabet().len();
            let n = rng.gen_range(1..=max_n);
            p.a2 = random_automaton(rng, tag, n, k);
            p.x2 = random_state(rng, tag, n);
            p
        }
    }
}

/// Whether the traces agree on every word of length at most `depth`.
pub fn traces_agree(p: &Pair, depth: usize) -> bool {
    let t1 = p.a1.trace(&p.x1, depth).unwrap();
    let t2 = p.a2.trace(&p.x2, depth).unwrap();
    t1.entries() == t2.entries()
}

pub const CUBIC_TAGS: [SemiringTag; 7] = [
    SemiringTag::Nat,
    SemiringTag::Int,
    SemiringTag::QPlus,
    SemiringTag::Q,
    SemiringTag::RPlus,
    SemiringTag::Real,
    SemiringTag::Unit,
];

fn nat_span_contains(gens: &[RVec], v: &[Rat]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let Some((g, rest)) = gens.split_first() else {
        return false;
    };
    let mut rem = v.to_vec();
    loop {
        if nat_span_contains(rest, &rem) {
            return true;
        }
        rem = rem.iter().zip(g).map(|(r, x)| r - x).collect();
        if rem.iter().any(Signed::is_negative) || g.iter().all(Zero::is_zero) {
            return false;
        }
    }
}

/// Whether `v` is a combination of `gens` with coefficients allowed by
/// `tag`: natural, integer, rational, nonnegative, or subconvex for `Unit`.
pub fn semiring_span_contains(tag: SemiringTag, gens: &[RVec], v: &[Rat]) -> bool {
    match tag {
        SemiringTag::Nat => is_integral(v) && is_nonneg(v) && nat_span_contains(gens, v),
        SemiringTag::Int => is_integral(v) && Lattice::from_rows(gens, v.len()).contains(v),
        SemiringTag::Q | SemiringTag::Real => in_span(gens, v),
        SemiringTag::QPlus | SemiringTag::RPlus => {
            let rows: Vec<RVec> = (0..v.len()).map(|i| gens.iter().map(|g| g[i].clone()).collect()).collect();
            matches!(minimize(&vec![Rat::zero(); gens.len()], &rows, v), LpOutcome::Optimal { .. })
        }
        SemiringTag::Unit | SemiringTag::Pca => PcaPolytope::new(v.len(), gens.to_vec()).contains(v),
    }
}
