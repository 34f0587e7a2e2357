//! Exact rational polyhedra: inequality and generator descriptions,
//! subconvex polytopes and their gauges, linear programming.

mod dd;
mod format;
mod lp;
mod restrict;

pub use dd::{cone_dd, dd_h_to_v, dd_v_to_h, ConeGenerators};
pub use format::{parse_polytope, write_polytope, PolytopeFile};
pub use lp::{lp_feasible, minimize, LpOutcome};
pub use restrict::{cone_restriction, simplex_restriction, SimplexFamily};

use std::fmt;
use std::ops::Add;

use num_traits::{One, Signed, Zero};

use crate::linalg::{concat, dot, is_nonneg, primitive, unit_vec, RVec, Rat};

/// `{x : a . x <= b for every (a, b)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub ineqs: Vec<(RVec, Rat)>,
}

impl HRep {
    pub fn new(dim: usize, ineqs: Vec<(RVec, Rat)>) -> Self {
        assert!(ineqs.iter().all(|(a, _)| a.len() == dim), "HRep: normal dimension");
        HRep { dim, ineqs }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.ineqs.iter().all(|(a, b)| dot(a, x) <= *b)
    }

    pub fn intersect(&self, other: &HRep) -> HRep {
        assert_eq!(self.dim, other.dim);
        HRep::new(self.dim, self.ineqs.iter().chain(&other.ineqs).cloned().collect())
    }

    /// Rows scaled to primitive integers, sorted and deduplicated.
    pub fn canonical(&self) -> HRep {
        let mut ineqs: Vec<(RVec, Rat)> = self
            .ineqs
            .iter()
            .map(|(a, b)| {
                let p = primitive(&concat(a, std::slice::from_ref(b)));
                (p[..self.dim].to_vec(), p[self.dim].clone())
            })
            .collect();
        ineqs.sort();
        ineqs.dedup();
        HRep::new(self.dim, ineqs)
    }
}

/// `conv(points) + cone(directions)`; empty when there are no points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRep {
    pub dim: usize,
    pub points: Vec<RVec>,
    pub directions: Vec<RVec>,
}

impl VRep {
    /// Builds a V-representation in canonical form: sorted points, primitive
    /// sorted directions, no duplicates.
    pub fn new(dim: usize, mut points: Vec<RVec>, directions: Vec<RVec>) -> Self {
        assert!(points.iter().chain(&directions).all(|p| p.len() == dim), "VRep: dimension");
        points.sort();
        points.dedup();
        let mut directions: Vec<RVec> = directions
            .iter()
            .map(|d| primitive(d))
            .filter(|d| d.iter().any(|x| !x.is_zero()))
            .collect();
        directions.sort();
        directions.dedup();
        VRep { dim, points, directions }
    }

    pub fn is_bounded(&self) -> bool {
        self.directions.is_empty()
    }

    /// Exact membership by linear programming.
    pub fn contains(&self, x: &[Rat]) -> bool {
        if self.points.is_empty() {
            return false;
        }
        let k = self.points.len() + self.directions.len();
        let mut rows: Vec<RVec> = (0..self.dim)
            .map(|i| self.points.iter().chain(&self.directions).map(|g| g[i].clone()).collect())
            .collect();
        let mut convex = vec![Rat::one(); self.points.len()];
        convex.resize(k, Rat::zero());
        rows.push(convex);
        let mut rhs = x.to_vec();
        rhs.push(Rat::one());
        matches!(minimize(&vec![Rat::zero(); k], &rows, &rhs), LpOutcome::Optimal { .. })
    }
}

/// Value of a gauge; `Infinite` when the point is outside every dilate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gauge {
    Finite(Rat),
    Infinite,
}

impl Gauge {
    pub fn is_finite(&self) -> bool {
        matches!(self, Gauge::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Gauge::Finite(v) => Some(v),
            Gauge::Infinite => None,
        }
    }

    pub fn scale(&self, p: &Rat) -> Gauge {
        assert!(!p.is_negative());
        match self {
            Gauge::Finite(v) => Gauge::Finite(v * p),
            Gauge::Infinite if p.is_zero() => Gauge::Finite(Rat::zero()),
            Gauge::Infinite => Gauge::Infinite,
        }
    }
}

impl Add for Gauge {
    type Output = Gauge;

    fn add(self, rhs: Gauge) -> Gauge {
        match (self, rhs) {
            (Gauge::Finite(a), Gauge::Finite(b)) => Gauge::Finite(a + b),
            _ => Gauge::Infinite,
        }
    }
}

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gauge::Finite(v) => write!(f, "{v}"),
            Gauge::Infinite => f.write_str("inf"),
        }
    }
}

/// Subconvex hull `{Σ λ_i g_i : λ >= 0, Σ λ_i <= 1}` of nonnegative generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcaPolytope {
    pub dim: usize,
    pub generators: Vec<RVec>,
}

impl PcaPolytope {
    pub fn new(dim: usize, generators: Vec<RVec>) -> Self {
        assert!(generators.iter().all(|g| g.len() == dim && is_nonneg(g)), "PcaPolytope: generators must be nonnegative vectors of the ambient dimension");
        PcaPolytope { dim, generators }
    }

    /// The standard simplex `Δ^n` with generators `e_1, ..., e_n`.
    pub fn simplex(n: usize) -> Self {
        PcaPolytope::new(n, (0..n).map(|i| unit_vec(n, i)).collect())
    }

    /// `{x >= 0 : <x, u> <= 1}` for strictly positive `u`, generated by `e_j / u_j`.
    pub fn pyramid(u: &[Rat]) -> Self {
        assert!(u.iter().all(|x| x.is_positive()), "pyramid needs a strictly positive vector");
        let n = u.len();
        PcaPolytope::new(n, (0..n).map(|i| unit_vec(n, i).iter().map(|x| x / &u[i]).collect()).collect())
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        gauge(self, x) <= Gauge::Finite(Rat::one())
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &PcaPolytope) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn to_vrep(&self) -> VRep {
        let mut points = self.generators.clone();
        points.push(vec![Rat::zero(); self.dim]);
        VRep::new(self.dim, points, Vec::new())
    }

    /// Intersection through the inequality descriptions of both polytopes.
    pub fn intersect(&self, other: &PcaPolytope) -> PcaPolytope {
        assert_eq!(self.dim, other.dim);
        let h = dd_v_to_h(&self.to_vrep()).intersect(&dd_v_to_h(&other.to_vrep()));
        let v = dd_h_to_v(&h);
        debug_assert!(v.is_bounded());
        let gens = v.points.into_iter().filter(|p| p.iter().any(|x| !x.is_zero())).collect();
        PcaPolytope::new(self.dim, gens)
    }
}

/// Minkowski functional `inf {t > 0 : x ∈ tX}`, computed as
/// `min {Σ c_i : x = Σ c_i g_i, c >= 0}`.
pub fn gauge(x_set: &PcaPolytope, x: &[Rat]) -> Gauge {
    assert_eq!(x.len(), x_set.dim, "gauge: dimension mismatch");
    if x.iter().all(Zero::is_zero) {
        return Gauge::Finite(Rat::zero());
    }
    let k = x_set.generators.len();
    let rows: Vec<RVec> = (0..x_set.dim)
        .map(|i| x_set.generators.iter().map(|g| g[i].clone()).collect())
        .collect();
    match minimize(&vec![Rat::one(); k], &rows, x) {
        LpOutcome::Optimal { value, .. } => Gauge::Finite(value),
        LpOutcome::Infeasible => Gauge::Infinite,
        LpOutcome::Unbounded => unreachable!("gauge objective is bounded below by zero"),
    }
}
