//! Intersections of a rational subspace with the nonnegative orthant and
//! with (products of) simplices.

use num_traits::{One, Zero};

use super::{cone_dd, dd_h_to_v, HRep, PcaPolytope};
use crate::linalg::{kernel_basis, primitive, unit_vec, RMat, RVec, Rat};

/// Normals `a` with `a . x = 0` exactly on `span(z)`, as inequality pairs.
fn subspace_equations(z: &[RVec], m: usize) -> Vec<RVec> {
    let normals = if z.is_empty() {
        (0..m).map(|i| unit_vec(m, i)).collect()
    } else {
        kernel_basis(&RMat::from_rows(z, m))
    };
    let mut out = Vec::new();
    for a in normals {
        out.push(a.iter().map(|x| -x).collect());
        out.push(a);
    }
    out
}

fn nonneg_constraints(m: usize) -> Vec<RVec> {
    (0..m).map(|i| unit_vec(m, i).iter().map(|x| -x).collect()).collect()
}

/// Generators of the convex cone `span(z) ∩ Q_+^m`: its extreme rays as
/// primitive integer vectors, plus `±l` for each lineality direction.
pub fn cone_restriction(z: &[RVec], m: usize) -> Vec<RVec> {
    let mut cons = nonneg_constraints(m);
    cons.extend(subspace_equations(z, m));
    let gens = cone_dd(&cons, m);
    let mut out = gens.rays;
    for l in gens.lineality {
        let l = primitive(&l);
        out.push(l.iter().map(|x| -x).collect());
        out.push(l);
    }
    out.sort();
    out
}

/// Which simplex-like region the subspace is intersected with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexFamily {
    /// `Δ^{n1} × Δ^{n2}`: each block sums to at most 1.
    Product,
    /// `2 Δ^{n1+n2}`: everything sums to at most 2.
    Scaled,
}

/// Vertices (other than 0) of the polytope `span(z) ∩ region`, as the
/// generators of a positively convex algebra.
pub fn simplex_restriction(z: &[RVec], family: SimplexFamily, n1: usize, n2: usize) -> PcaPolytope {
    let m = n1 + n2;
    let mut ineqs: Vec<(RVec, Rat)> = nonneg_constraints(m).into_iter().map(|a| (a, Rat::zero())).collect();
    match family {
        SimplexFamily::Product => {
            let block = |range: std::ops::Range<usize>| -> RVec {
                (0..m).map(|i| if range.contains(&i) { Rat::one() } else { Rat::zero() }).collect()
            };
            ineqs.push((block(0..n1), Rat::one()));
            ineqs.push((block(n1..m), Rat::one()));
        }
        SimplexFamily::Scaled => ineqs.push((vec![Rat::one(); m], Rat::from_integer(2.into()))),
    }
    ineqs.extend(subspace_equations(z, m).into_iter().map(|a| (a, Rat::zero())));
    let v = dd_h_to_v(&HRep::new(m, ineqs));
    assert!(v.is_bounded(), "simplex restriction must be bounded");
    let gens = v.points.into_iter().filter(|p| p.iter().any(|x| !x.is_zero())).collect();
    PcaPolytope::new(m, gens)
}
