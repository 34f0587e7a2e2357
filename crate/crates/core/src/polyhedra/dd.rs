//! Double description: conversion between inequality and generator
//! representations through the incremental cone algorithm.

use num_traits::{One, Signed, Zero};

use super::{HRep, VRep};
use crate::linalg::{dot, is_zero_vec, primitive, unit_vec, RVec, Rat};

/// Generators of the cone `{x : a . x <= 0 for all a}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGenerators {
    /// Basis of the largest linear subspace contained in the cone.
    pub lineality: Vec<RVec>,
    /// Extreme rays modulo the lineality space, as primitive integer vectors.
    pub rays: Vec<RVec>,
}

/// Incremental double description of a cone given by `constraints`,
/// processed in order.
///
/// The cone starts as the whole space, all lineality. A constraint that is
/// not identically zero on the lineality space turns one lineality vector
/// into a ray and projects everything else onto its hyperplane. Otherwise
/// the classical step combines adjacent pairs of rays on opposite sides;
/// adjacency is decided combinatorially from the sets of tight constraints.
pub fn cone_dd(constraints: &[RVec], dim: usize) -> ConeGenerators {
    let mut lineality: Vec<RVec> = (0..dim).map(|i| unit_vec(dim, i)).collect();
    let mut rays: Vec<RVec> = Vec::new();
    for (idx, a) in constraints.iter().enumerate() {
        assert_eq!(a.len(), dim, "cone_dd: constraint dimension");
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.remove(pos);
            let mut al = dot(a, &l);
            if al.is_positive() {
                l = l.iter().map(|x| -x).collect();
                al = -al;
            }
            let project = |v: &RVec| -> RVec {
                let f = dot(a, v) / &al;
                v.iter().zip(&l).map(|(x, y)| x - &f * y).collect()
            };
            lineality = lineality.iter().map(project).collect();
            rays = rays.iter().map(|r| primitive(&project(r))).collect();
            rays.push(primitive(&l));
            continue;
        }
        let processed = &constraints[..idx];
        let tight = |r: &RVec| -> Vec<bool> { processed.iter().map(|c| dot(c, r).is_zero()).collect() };
        let values: Vec<Rat> = rays.iter().map(|r| dot(a, r)).collect();
        let zsets: Vec<Vec<bool>> = rays.iter().map(tight).collect();
        let mut next: Vec<RVec> = Vec::new();
        for (r, v) in rays.iter().zip(&values) {
            if !v.is_positive() {
                next.push(r.clone());
            }
        }
        for (p, vp) in values.iter().enumerate().filter(|(_, v)| v.is_positive()) {
            for (n, vn) in values.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                let common: Vec<bool> = zsets[p].iter().zip(&zsets[n]).map(|(x, y)| *x && *y).collect();
                let blocked = (0..rays.len()).any(|o| {
                    o != p && o != n && common.iter().zip(&zsets[o]).all(|(c, z)| !*c || *z)
                });
                if blocked {
                    continue;
                }
                let new: RVec = rays[n]
                    .iter()
                    .zip(&rays[p])
                    .map(|(xn, xp)| vp * xn - vn * xp)
                    .collect();
                next.push(primitive(&new));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
    }
    rays.retain(|r| !is_zero_vec(r));
    rays.sort();
    rays.dedup();
    ConeGenerators { lineality, rays }
}

/// Generators of `{x : a . x <= b}`.
pub fn dd_h_to_v(h: &HRep) -> VRep {
    let d = h.dim;
    // Homogenize with t as the last coordinate; t >= 0 comes first.
    let mut cons: Vec<RVec> = vec![{
        let mut c = vec![Rat::zero(); d + 1];
        c[d] = -Rat::one();
        c
    }];
    for (a, b) in &h.ineqs {
        let mut c = a.clone();
        c.push(-b.clone());
        cons.push(c);
    }
    let gens = cone_dd(&cons, d + 1);
    let mut points = Vec::new();
    let mut directions = Vec::new();
    for r in &gens.rays {
        if r[d].is_positive() {
            points.push(r[..d].iter().map(|x| x / &r[d]).collect());
        } else {
            directions.push(r[..d].to_vec());
        }
    }
    for l in &gens.lineality {
        debug_assert!(l[d].is_zero());
        let l = primitive(&l[..d]);
        directions.push(l.iter().map(|x| -x).collect());
        directions.push(l);
    }
    if points.is_empty() {
        directions.clear();
    }
    VRep::new(d, points, directions)
}

/// Inequalities describing `conv(points) + cone(directions)`.
///
/// Valid inequalities `(a, b)` form the cone `{a . p <= b, a . d <= 0}`;
/// its generators give the description. Trivial rows `0 <= b` with `b >= 0`
/// are dropped; an empty point set yields the single row `0 <= -1`.
pub fn dd_v_to_h(v: &VRep) -> HRep {
    let d = v.dim;
    if v.points.is_empty() {
        return HRep::new(d, vec![(vec![Rat::zero(); d], -Rat::one())]);
    }
    let mut cons: Vec<RVec> = Vec::new();
    for p in &v.points {
        let mut c = p.clone();
        c.push(-Rat::one());
        cons.push(c);
    }
    for dir in &v.directions {
        let mut c = dir.clone();
        c.push(Rat::zero());
        cons.push(c);
    }
    let gens = cone_dd(&cons, d + 1);
    let mut rows: Vec<RVec> = gens.rays.clone();
    for l in &gens.lineality {
        let l = primitive(l);
        rows.push(l.iter().map(|x| -x).collect());
        rows.push(l);
    }
    let ineqs = rows
        .into_iter()
        .filter(|r| !(is_zero_vec(&r[..d]) && !r[d].is_negative()))
        .map(|r| (r[..d].to_vec(), r[d].clone()))
        .collect();
    HRep::new(d, ineqs)
}
