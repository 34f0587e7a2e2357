//! Random polyhedra, polytopes and `Ĝ` elements.

use num_traits::{One, Zero};
use rand::Rng;

use super::{sparse_nonneg, subdistribution, TestRng};
use wazz::linalg::{add, int, rat, scale, RVec, Rat};
use wazz::pca_functor::GhatElement;
use wazz::polyhedra::{dd_h_to_v, dd_v_to_h, gauge, lp_feasible, Gauge, HRep, PcaPolytope};

/// Up to 8 inequalities in dimension `dim`, entries in `[-3, 3]`.
pub fn random_hrep(rng: &mut TestRng, dim: usize) -> HRep {
    let count = rng.gen_range(1..=8);
    let ineqs = (0..count)
        .map(|_| ((0..dim).map(|_| int(rng.gen_range(-3..=3))).collect(), int(rng.gen_range(-3..=3))))
        .collect();
    HRep::new(dim, ineqs)
}

/// Rational point with coordinates in `[-4, 4]` and small denominators.
pub fn random_point(rng: &mut TestRng, dim: usize) -> RVec {
    (0..dim).map(|_| rat(rng.gen_range(-12..=12), rng.gen_range(1..=3))).collect()
}

pub fn random_nonneg_point(rng: &mut TestRng, dim: usize) -> RVec {
    (0..dim).map(|_| sparse_nonneg(rng)).collect()
}

/// Subconvex hull of 1 to 4 random nonnegative generators; may be lower
/// dimensional.
pub fn random_pca_polytope(rng: &mut TestRng, dim: usize) -> PcaPolytope {
    let k = rng.gen_range(1..=4);
    let gens = (0..k)
        .map(|_| loop {
            let g = random_nonneg_point(rng, dim);
            if g.iter().any(|x| !x.is_zero()) {
                break g;
            }
        })
        .collect();
    PcaPolytope::new(dim, gens)
}

/// A point of `x_set`: a random subconvex combination of its generators.
pub fn point_in(rng: &mut TestRng, x_set: &PcaPolytope) -> RVec {
    let w = subdistribution(rng, x_set.generators.len(), &Rat::one());
    let mut v = vec![Rat::zero(); x_set.dim];
    for (c, g) in w.iter().zip(&x_set.generators) {
        v.iter_mut().zip(g).for_each(|(a, b)| *a += c * b);
    }
    v
}

/// An element `(o, φ)` built from shares of one unit of mass; about a
/// quarter of them are inflated past the budget.
pub fn random_ghat_element(rng: &mut TestRng, x_set: &PcaPolytope, letters: usize) -> GhatElement {
    let mut shares = subdistribution(rng, letters + 1, &Rat::one());
    if rng.gen_bool(0.25) {
        shares.iter_mut().for_each(|s| *s *= rat(3, 2));
    }
    let phi = shares[1..].iter().map(|p| point_in(rng, x_set).iter().map(|x| x * p).collect()).collect();
    GhatElement { o: shares[0].clone(), phi }
}

/// Membership agreement between random inequality systems and the result
/// of converting them to generators and back.
pub fn dd_round_trip(rng: &mut TestRng, systems: usize, points: usize) -> Result<(), String> {
    for _ in 0..systems {
        let dim = rng.gen_range(1..=4);
        let h = random_hrep(rng, dim);
        let v = dd_h_to_v(&h);
        let back = dd_v_to_h(&v);
        let mut sample: Vec<RVec> = (0..points).map(|_| random_point(rng, dim)).collect();
        sample.extend(v.points.iter().cloned());
        if let Some(p) = sample.iter().find(|p| h.contains(p) != back.contains(p)) {
            return Err(format!("{h:?} and {back:?} disagree at {p:?}"));
        }
        if v.points.is_empty() != lp_feasible(&h).is_none() {
            return Err(format!("emptiness of {h:?} decided differently"));
        }
    }
    Ok(())
}

/// Homogeneity, subadditivity, the intersection law and the membership
/// sandwich on random `(polytope, point)` instances.
pub fn gauge_laws(rng: &mut TestRng, rounds: usize) -> Result<(), String> {
    for _ in 0..rounds {
        let dim = rng.gen_range(1..=3);
        let x_set = random_pca_polytope(rng, dim);
        let y_set = random_pca_polytope(rng, dim);
        let x = random_nonneg_point(rng, dim);
        let y = random_nonneg_point(rng, dim);
        let (mx, my) = (gauge(&x_set, &x), gauge(&x_set, &y));
        let fail = |law: &str| Err(format!("{law} fails for {x_set:?} at {x:?}"));

        let p = rat(rng.gen_range(0..=5), rng.gen_range(1..=3));
        if gauge(&x_set, &scale(&p, &x)) != mx.scale(&p) {
            return fail("homogeneity");
        }
        if gauge(&x_set, &add(&x, &y)) > mx.clone() + my {
            return fail("subadditivity");
        }
        if gauge(&x_set.intersect(&y_set), &x) != mx.clone().max(gauge(&y_set, &x)) {
            return fail("the intersection law");
        }
        let inside = x_set.to_vrep().contains(&x);
        if (mx <= Gauge::Finite(Rat::one())) != inside || x_set.contains(&x) != inside {
            return fail("the membership sandwich");
        }
    }
    Ok(())
}
