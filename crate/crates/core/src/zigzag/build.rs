//! Construction of spans for cubic functors and of the five-node `Ĝ` zig-zag.

use num_traits::One;

use super::{FunctorTag, Morphism, NodeKind, ZigZag, ZigZagNode};
use crate::automata::{pair_submodule, SemiringTag, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::hilbert::nat_restriction;
use crate::linalg::{concat, is_zero_vec, unit_vec, Lattice, RMat, RVec, Rat};
use crate::pca_functor::{pyramid_extension, reduce_invariant_set, LinearCoalgebra};
use crate::polyhedra::{cone_restriction, simplex_restriction, PcaPolytope, SimplexFamily};

fn check_pair(aut1: &WeightedAutomaton, aut2: &WeightedAutomaton) -> Result<()> {
    if aut1.tag() != aut2.tag() {
        return Err(Error::TagMismatch(aut1.tag(), aut2.tag()));
    }
    if aut1.alphabet() != aut2.alphabet() {
        return Err(Error::InvalidAutomaton("the automata have different alphabets".into()));
    }
    Ok(())
}

fn unit_vectors(n: usize) -> Vec<RVec> {
    (0..n).map(|i| unit_vec(n, i)).collect()
}

fn automaton_node(kind: NodeKind, aut: &WeightedAutomaton) -> ZigZagNode {
    ZigZagNode {
        kind,
        dim: aut.n(),
        generators: unit_vectors(aut.n()),
        out: aut.out().to_vec(),
        trans: aut.matrices().to_vec(),
    }
}

/// `[I 0]` or `[0 I]`: the projection of `Q^{n1+n2}` onto one factor.
fn projection(n1: usize, n2: usize, second: bool) -> RMat {
    let (rows, offset) = if second { (n2, n1) } else { (n1, 0) };
    let mut p = RMat::zeros(rows, n1 + n2);
    for i in 0..rows {
        p[(i, offset + i)] = Rat::one();
    }
    p
}

/// The span `(X1, c1) <- (W, d) -> (X2, c2)` with `W` the pair submodule
/// cut down to `X1 x X2`, relating `x1` and `x2`.
pub fn cubic_zigzag(aut1: &WeightedAutomaton, x1: &[Rat], aut2: &WeightedAutomaton, x2: &[Rat]) -> Result<ZigZag> {
    check_pair(aut1, aut2)?;
    let tag = aut1.tag();
    if tag == SemiringTag::Pca {
        return Err(Error::UnsupportedTag(tag));
    }
    aut1.check_state(x1)?;
    aut2.check_state(x2)?;
    let pair = pair_submodule(aut1, x1, aut2, x2)?;
    let (n1, n2) = (aut1.n(), aut2.n());
    let m = n1 + n2;
    let generators = match tag {
        SemiringTag::Nat => nat_restriction(&Lattice::from_rows(&pair.generators, m)),
        SemiringTag::Int | SemiringTag::Q | SemiringTag::Real => pair.generators.clone(),
        SemiringTag::QPlus | SemiringTag::RPlus => cone_restriction(&pair.generators, m),
        SemiringTag::Unit => simplex_restriction(&pair.generators, SimplexFamily::Product, n1, n2).generators,
        SemiringTag::Pca => unreachable!(),
    };
    let (free, generated) = if tag == SemiringTag::Unit {
        (NodeKind::FreePca, NodeKind::GeneratedPca)
    } else {
        (NodeKind::FreeModule, NodeKind::GeneratedModule)
    };
    let middle = ZigZagNode {
        kind: generated,
        dim: m,
        generators,
        out: pair.coalgebra.out().to_vec(),
        trans: pair.coalgebra.matrices().to_vec(),
    };
    Ok(ZigZag {
        functor: FunctorTag::Cubic(tag),
        alphabet: aut1.alphabet().to_vec(),
        nodes: vec![automaton_node(free, aut1), middle, automaton_node(free, aut2)],
        morphisms: vec![
            Morphism { from: 1, to: 0, matrix: projection(n1, n2, false) },
            Morphism { from: 1, to: 2, matrix: projection(n1, n2, true) },
        ],
        relating: vec![(1, concat(x1, x2))],
        x1: x1.to_vec(),
        x2: x2.to_vec(),
    })
}

/// `(Δ^{n1}, c1) -> (U1) <- (Z ∩ 2Δ^{k1+k2}, d) -> (U2) <- (Δ^{n2}, c2)`,
/// where the outer arrows collapse invariant zero-output coordinates and
/// `U1`, `U2` are pyramids.
pub fn ghat_zigzag(aut1: &WeightedAutomaton, x1: &[Rat], aut2: &WeightedAutomaton, x2: &[Rat]) -> Result<ZigZag> {
    check_pair(aut1, aut2)?;
    if aut1.tag() != SemiringTag::Pca {
        return Err(Error::UnsupportedTag(aut1.tag()));
    }
    aut1.check_state(x1)?;
    aut2.check_state(x2)?;
    let r1 = reduce_invariant_set(aut1)?;
    let r2 = reduce_invariant_set(aut2)?;
    let y1 = r1.f.mul_vec(x1);
    let y2 = r2.f.mul_vec(x2);
    let pair = pair_submodule(&r1.quotient, &y1, &r2.quotient, &y2)?;
    let (k1, k2) = (r1.quotient.n(), r2.quotient.n());
    let middle_gens = simplex_restriction(&pair.generators, SimplexFamily::Scaled, k1, k2).generators;

    let pyramid_node = |k: usize, quotient: &WeightedAutomaton, pi: &RMat| -> Result<ZigZagNode> {
        let mut gens = unit_vectors(k);
        gens.extend(middle_gens.iter().map(|g| pi.mul_vec(g)).filter(|g| !is_zero_vec(g)));
        gens.sort();
        gens.dedup();
        let y = PcaPolytope::new(k, gens);
        let cert = pyramid_extension(&y, &LinearCoalgebra::from(quotient))?;
        Ok(ZigZagNode {
            kind: NodeKind::FreePca,
            dim: k,
            generators: cert.polytope().generators,
            out: quotient.out().to_vec(),
            trans: quotient.matrices().to_vec(),
        })
    };
    let pi1 = projection(k1, k2, false);
    let pi2 = projection(k1, k2, true);
    let u1 = pyramid_node(k1, &r1.quotient, &pi1)?;
    let u2 = pyramid_node(k2, &r2.quotient, &pi2)?;
    let middle = ZigZagNode {
        kind: NodeKind::GeneratedPca,
        dim: k1 + k2,
        generators: middle_gens,
        out: pair.coalgebra.out().to_vec(),
        trans: pair.coalgebra.matrices().to_vec(),
    };
    Ok(ZigZag {
        functor: FunctorTag::Ghat,
        alphabet: aut1.alphabet().to_vec(),
        nodes: vec![
            automaton_node(NodeKind::FreePca, aut1),
            u1,
            middle,
            u2,
            automaton_node(NodeKind::FreePca, aut2),
        ],
        morphisms: vec![
            Morphism { from: 0, to: 1, matrix: r1.f },
            Morphism { from: 2, to: 1, matrix: pi1 },
            Morphism { from: 2, to: 3, matrix: pi2 },
            Morphism { from: 4, to: 3, matrix: r2.f },
        ],
        relating: vec![(0, x1.to_vec()), (2, concat(&y1, &y2)), (4, x2.to_vec())],
        x1: x1.to_vec(),
        x2: x2.to_vec(),
    })
}
