//! The subcubic convex functor `Ĝ` on positively convex algebras.
//!
//! For a compact PCA `X ⊆ R^n`, `ĜX` is the set of pairs `(o, φ)` with
//! `o >= 0` and `o + Σ_a μ_X(φ(a)) <= 1`, where `μ_X` is the gauge of `X`.
//! A coalgebra is represented by the linear extension of its structure map:
//! an output functional and one matrix per letter.

use num_traits::{One, Signed, Zero};

use crate::automata::{SemiringTag, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::linalg::{dot, is_nonneg, scale, solve, unit_vec, RMat, RVec, Rat};
use crate::polyhedra::{gauge, lp_feasible, minimize, Gauge, HRep, LpOutcome, PcaPolytope};

/// An element `(o, φ)` of `[0,1] × X^A`; `phi[i]` is the value at the
/// `i`-th letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhatElement {
    pub o: Rat,
    pub phi: Vec<RVec>,
}

/// Linear map `x ↦ (out . x, (M_a x)_a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCoalgebra {
    pub out: RVec,
    pub trans: Vec<RMat>,
}

impl LinearCoalgebra {
    pub fn new(out: RVec, trans: Vec<RMat>) -> Self {
        let n = out.len();
        assert!(trans.iter().all(|m| m.cols() == n), "LinearCoalgebra: matrix width");
        LinearCoalgebra { out, trans }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn apply(&self, x: &[Rat]) -> GhatElement {
        GhatElement { o: dot(&self.out, x), phi: self.trans.iter().map(|m| m.mul_vec(x)).collect() }
    }
}

impl From<&WeightedAutomaton> for LinearCoalgebra {
    fn from(aut: &WeightedAutomaton) -> Self {
        LinearCoalgebra::new(aut.out().to_vec(), aut.matrices().to_vec())
    }
}

/// `o >= 0` and `o + Σ_a μ_X(φ(a)) <= 1`.
pub fn ghat_member(x_set: &PcaPolytope, e: &GhatElement) -> bool {
    if e.o.is_negative() {
        return false;
    }
    let total = e
        .phi
        .iter()
        .fold(Gauge::Finite(e.o.clone()), |acc, v| acc + gauge(x_set, v));
    total <= Gauge::Finite(Rat::one())
}

/// Writes each `φ(a)` as `p_a x_a` with `x_a ∈ X` and `p_a = μ_X(φ(a))`;
/// `x_a = 0` when `φ(a) = 0`. `None` unless `e ∈ ĜX`.
pub fn ghat_decompose(x_set: &PcaPolytope, e: &GhatElement) -> Option<Vec<(Rat, RVec)>> {
    if !ghat_member(x_set, e) {
        return None;
    }
    let parts = e
        .phi
        .iter()
        .map(|v| match gauge(x_set, v) {
            Gauge::Finite(p) if p.is_zero() => (p, vec![Rat::zero(); x_set.dim]),
            Gauge::Finite(p) => {
                let x = scale(&p.recip(), v);
                (p, x)
            }
            Gauge::Infinite => unreachable!("members have finite gauges"),
        })
        .collect();
    Some(parts)
}

/// `Ĝf = id × (f ∘ -)`.
pub fn ghat_apply(f: &RMat, e: &GhatElement) -> GhatElement {
    GhatElement { o: e.o.clone(), phi: e.phi.iter().map(|v| f.mul_vec(v)).collect() }
}

/// The linear map agreeing with `values[i]` on the generator `i` of `x_set`.
///
/// When the generators do not span the space, the map is taken to vanish
/// on the coordinate directions left free by the generators.
pub fn linear_extension(x_set: &PcaPolytope, values: &[GhatElement]) -> Result<LinearCoalgebra> {
    let n = x_set.dim;
    let k = x_set.generators.len();
    if values.len() != k {
        return Err(Error::DimensionMismatch(format!("{k} generators but {} values", values.len())));
    }
    let letters = values.first().map_or(0, |v| v.phi.len());
    let m = values.first().and_then(|v| v.phi.first()).map_or(n, |p| p.len());
    if values.iter().any(|v| v.phi.len() != letters || v.phi.iter().any(|p| p.len() != m)) {
        return Err(Error::DimensionMismatch("values have inconsistent shapes".into()));
    }
    let gt = RMat::from_rows(&x_set.generators, n);
    let row = |target: RVec, what: String| -> Result<RVec> {
        if k == 0 {
            return Ok(vec![Rat::zero(); n]);
        }
        solve(&gt, &target).ok_or_else(|| Error::InconsistentValues(format!("no linear map matches the {what}")))
    };
    let out = row(values.iter().map(|v| v.o.clone()).collect(), "outputs".into())?;
    let mut trans = Vec::with_capacity(letters);
    for a in 0..letters {
        let rows: Vec<RVec> = (0..m)
            .map(|i| row(values.iter().map(|v| v.phi[a][i].clone()).collect(), format!("letter {a}, coordinate {i}")))
            .collect::<Result<_>>()?;
        trans.push(RMat::from_rows(&rows, n));
    }
    Ok(LinearCoalgebra::new(out, trans))
}

/// Whether `c(X) ⊆ ĜY`, checked on the generators of `X`.
pub fn is_ghat_coalgebra(x_set: &PcaPolytope, y_set: &PcaPolytope, c: &LinearCoalgebra) -> bool {
    assert_eq!(c.n(), x_set.dim, "is_ghat_coalgebra: dimension mismatch");
    x_set.generators.iter().all(|g| ghat_member(y_set, &c.apply(g)))
}

/// Largest `I` with `out_k = 0` and `supp(M_a e_k) ⊆ I` for all `k ∈ I`,
/// as a greatest fixpoint. Sorted.
pub fn invariant_zero_set(c: &LinearCoalgebra) -> Vec<usize> {
    let n = c.n();
    let mut inside: Vec<bool> = c.out.iter().map(Zero::is_zero).collect();
    loop {
        let mut changed = false;
        for k in 0..n {
            if inside[k] && c.trans.iter().any(|m| (0..n).any(|i| !inside[i] && !m[(i, k)].is_zero())) {
                inside[k] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..n).filter(|&k| inside[k]).collect()
}

/// Result of collapsing invariant zero-output coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Removed coordinates of the original automaton, sorted.
    pub removed: Vec<usize>,
    pub quotient: WeightedAutomaton,
    /// Coordinate map onto the kept coordinates (`k x n`).
    pub f: RMat,
}

/// Collapses invariant zero-output coordinates until none remain.
pub fn reduce_invariant_set(aut: &WeightedAutomaton) -> Result<Reduction> {
    if aut.tag() != SemiringTag::Pca {
        return Err(Error::UnsupportedTag(aut.tag()));
    }
    let n = aut.n();
    let mut current = aut.clone();
    let mut kept: Vec<usize> = (0..n).collect();
    loop {
        let i = invariant_zero_set(&LinearCoalgebra::from(&current));
        if i.is_empty() {
            break;
        }
        let keep: Vec<usize> = (0..current.n()).filter(|k| !i.contains(k)).collect();
        let out = keep.iter().map(|&k| current.out()[k].clone()).collect();
        let trans = current.matrices().iter().map(|m| m.select(&keep, &keep)).collect();
        current = WeightedAutomaton::new(SemiringTag::Pca, aut.alphabet().to_vec(), out, trans)?;
        kept = keep.iter().map(|&k| kept[k]).collect();
    }
    let mut f = RMat::zeros(kept.len(), n);
    for (row, &k) in kept.iter().enumerate() {
        f[(row, k)] = Rat::one();
    }
    let removed = (0..n).filter(|k| !kept.contains(k)).collect();
    Ok(Reduction { removed, quotient: current, f })
}

/// Normal vector `u > 0` of a pyramid `Y = {x >= 0 : <x, u> <= 1}` with
/// `X ⊆ Y` and `c(Y) ⊆ ĜY`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PyramidCert {
    pub u: RVec,
}

impl PyramidCert {
    /// The pyramid as a PCA generated by `e_j / u_j`.
    pub fn polytope(&self) -> PcaPolytope {
        PcaPolytope::pyramid(&self.u)
    }
}

/// The finite system `u >= 0`, `<g, u> <= 1` for the generators `g` of `X`,
/// and `out_j + Σ_a <M_a e_j, u> <= u_j` for every `j`.
pub fn pyramid_system(x_set: &PcaPolytope, c: &LinearCoalgebra) -> HRep {
    let n = c.n();
    let mut ineqs = Vec::new();
    for j in 0..n {
        ineqs.push((scale(&-Rat::one(), &unit_vec(n, j)), Rat::zero()));
    }
    for g in &x_set.generators {
        ineqs.push((g.clone(), Rat::one()));
    }
    for j in 0..n {
        let mut a = vec![Rat::zero(); n];
        for m in &c.trans {
            for (i, ai) in a.iter_mut().enumerate() {
                *ai += &m[(i, j)];
            }
        }
        a[j] -= Rat::one();
        ineqs.push((a, -c.out[j].clone()));
    }
    HRep::new(n, ineqs)
}

/// Embeds the coalgebra `(X, c)` into one on a pyramid, by solving the
/// fixed-point system of [`pyramid_system`] exactly.
pub fn pyramid_extension(x_set: &PcaPolytope, c: &LinearCoalgebra) -> Result<PyramidCert> {
    let n = c.n();
    if x_set.dim != n || c.trans.iter().any(|m| m.rows() != n) {
        return Err(Error::DimensionMismatch("pyramid_extension needs an endomorphism of the carrier space".into()));
    }
    if !x_set.generators.iter().all(|g| is_nonneg(g)) {
        return Err(Error::Precondition("carrier is not inside the nonnegative orthant".into()));
    }
    if let Some(j) = (0..n).find(|&j| !x_set.contains(&unit_vec(n, j))) {
        return Err(Error::Precondition(format!("carrier does not contain the corner e_{j}")));
    }
    let i = invariant_zero_set(c);
    if !i.is_empty() {
        return Err(Error::InvariantZeroSet(i));
    }
    if !is_ghat_coalgebra(x_set, x_set, c) {
        return Err(Error::Precondition("the structure map does not land in ĜX".into()));
    }
    let u = lp_feasible(&pyramid_system(x_set, c))
        .ok_or_else(|| Error::Internal("pyramid system is infeasible".into()))?;
    if !u.iter().all(|x| x.is_positive()) {
        return Err(Error::Internal("pyramid solution is not strictly positive".into()));
    }
    Ok(PyramidCert { u })
}

/// A preimage of `e ∈ ĜY` under `Ĝf`, where `f` maps the PCA `x_set` onto
/// `y_set`: write `φ(a) = p_a y_a` with `p_a = μ_Y(φ(a))`, pick `x_a ∈ X`
/// with `f x_a = y_a` by linear programming, and return `(o, a ↦ p_a x_a)`.
pub fn ghat_preimage(f: &RMat, x_set: &PcaPolytope, y_set: &PcaPolytope, e: &GhatElement) -> Option<GhatElement> {
    let k = x_set.generators.len();
    let images: Vec<RVec> = x_set.generators.iter().map(|g| f.mul_vec(g)).collect();
    let mut phi = Vec::with_capacity(e.phi.len());
    for (p, y) in ghat_decompose(y_set, e)? {
        if p.is_zero() {
            phi.push(vec![Rat::zero(); x_set.dim]);
            continue;
        }
        // λ >= 0, slack >= 0, Σ λ_i f(g_i) = y, Σ λ_i + slack = 1.
        let mut rows: Vec<RVec> = (0..f.rows())
            .map(|r| {
                let mut row: RVec = images.iter().map(|img| img[r].clone()).collect();
                row.push(Rat::zero());
                row
            })
            .collect();
        rows.push(vec![Rat::one(); k + 1]);
        let mut rhs = y;
        rhs.push(Rat::one());
        let LpOutcome::Optimal { x: lambda, .. } = minimize(&vec![Rat::zero(); k + 1], &rows, &rhs) else {
            return None;
        };
        let xa = x_set
            .generators
            .iter()
            .zip(&lambda)
            .fold(vec![Rat::zero(); x_set.dim], |acc, (g, l)| {
                acc.iter().zip(g).map(|(s, gi)| s + l * gi).collect()
            });
        phi.push(scale(&p, &xa));
    }
    Some(GhatElement { o: e.o.clone(), phi })
}
