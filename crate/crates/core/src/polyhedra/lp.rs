//! Exact linear programming: a two-phase simplex method with Bland's rule
//! for standard-form problems, and Fourier–Motzkin elimination for small
//! feasibility questions.

use num_traits::{Signed, Zero};

use super::HRep;
use crate::linalg::{dot, kernel_basis, RMat, RVec, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: RVec, value: Rat },
    Infeasible,
    Unbounded,
}

/// Minimizes `c . x` subject to `A x = b`, `x >= 0`, where `A` has rows `a`.
pub fn minimize(c: &[Rat], a: &[RVec], b: &[Rat]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m, "minimize: right-hand side length");
    assert!(a.iter().all(|r| r.len() == n), "minimize: row length");

    // Tableau columns: n structural, m artificial, 1 right-hand side.
    let width = n + m + 1;
    let mut t: Vec<RVec> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r = vec![Rat::zero(); width];
        for j in 0..n {
            r[j] = if flip { -&row[j] } else { row[j].clone() };
        }
        r[n + i] = Rat::from_integer(1.into());
        r[width - 1] = if flip { -bi } else { bi.clone() };
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![Rat::zero(); n + m];
    for v in phase1.iter_mut().skip(n) {
        *v = Rat::from_integer(1.into());
    }
    if run_simplex(&mut t, &mut basis, &phase1, n + m) == Status::Unbounded {
        unreachable!("phase 1 is bounded below by zero");
    }
    let infeas: Rat = basis
        .iter()
        .enumerate()
        .filter(|(_, &bv)| bv >= n)
        .map(|(i, _)| t[i][width - 1].clone())
        .sum();
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
            } else {
                t.remove(i);
                basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    // Phase 2 over structural columns only.
    for row in t.iter_mut() {
        row.drain(n..n + m);
    }
    if run_simplex(&mut t, &mut basis, c, n) == Status::Unbounded {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        x[bv] = t[i].last().unwrap().clone();
    }
    let value = dot(c, &x);
    LpOutcome::Optimal { x, value }
}

#[derive(PartialEq, Eq)]
enum Status {
    Optimal,
    Unbounded,
}

fn pivot(t: &mut [RVec], basis: &mut [usize], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for v in t[row].iter_mut() {
        *v *= &inv;
    }
    let prow = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i != row && !r[col].is_zero() {
            let f = r[col].clone();
            for (v, p) in r.iter_mut().zip(&prow) {
                *v -= &f * p;
            }
        }
    }
    basis[row] = col;
}

/// Simplex iterations on columns `0..ncols` with Bland's rule.
fn run_simplex(t: &mut [RVec], basis: &mut [usize], cost: &[Rat], ncols: usize) -> Status {
    let rhs = t.first().map_or(0, |r| r.len() - 1);
    loop {
        // Reduced cost of column j: c_j - c_B . column_j.
        let entering = (0..ncols).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let z: Rat = basis.iter().enumerate().map(|(i, &bv)| &cost[bv] * &t[i][j]).sum();
            (&cost[j] - z).is_negative()
        });
        let Some(j) = entering else {
            return Status::Optimal;
        };
        let mut best: Option<(usize, Rat)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &t[i][rhs] / &t[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let Some((i, _)) = best else {
            return Status::Unbounded;
        };
        pivot(t, basis, i, j);
    }
}

/// A point of `{x : a . x <= b}`, preferring a vertex.
///
/// Up to eight variables the point comes from Fourier–Motzkin elimination
/// with back-substitution in variable order, taking the smallest admissible
/// value of each variable (the largest if unbounded below, zero if free).
/// Larger systems use the simplex method. The point is then moved along
/// the common kernel of its active constraints until it is a vertex, if the
/// region has one.
pub fn lp_feasible(h: &HRep) -> Option<RVec> {
    let x = if h.dim <= 8 {
        fourier_motzkin(&h.ineqs, h.dim)?
    } else {
        simplex_point(h)?
    };
    Some(purify(h, x))
}

fn simplex_point(h: &HRep) -> Option<RVec> {
    // x = p - q, a.p - a.q + s = b, all nonnegative.
    let d = h.dim;
    let k = h.ineqs.len();
    let rows: Vec<RVec> = h
        .ineqs
        .iter()
        .enumerate()
        .map(|(i, (a, _))| {
            let mut r: RVec = a.clone();
            r.extend(a.iter().map(|x| -x));
            let mut s = vec![Rat::zero(); k];
            s[i] = Rat::from_integer(1.into());
            r.extend(s);
            r
        })
        .collect();
    let b: RVec = h.ineqs.iter().map(|(_, b)| b.clone()).collect();
    match minimize(&vec![Rat::zero(); 2 * d + k], &rows, &b) {
        LpOutcome::Optimal { x, .. } => Some((0..d).map(|i| &x[i] - &x[d + i]).collect()),
        _ => None,
    }
}

/// Scales an inequality so that its first nonzero coefficient is `±1`.
fn normalize(a: &[Rat], b: &Rat) -> (RVec, Rat) {
    match a.iter().find(|x| !x.is_zero()) {
        Some(p) => {
            let s = p.abs().recip();
            (a.iter().map(|x| x * &s).collect(), b * &s)
        }
        None => (a.to_vec(), b.clone()),
    }
}

fn fourier_motzkin(ineqs: &[(RVec, Rat)], dim: usize) -> Option<RVec> {
    // systems[i] involves only variables 0..i.
    let mut systems: Vec<Vec<(RVec, Rat)>> = vec![Vec::new(); dim + 1];
    systems[dim] = ineqs.iter().map(|(a, b)| normalize(a, b)).collect();
    for v in (0..dim).rev() {
        let cur = &systems[v + 1];
        let mut next: Vec<(RVec, Rat)> = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (a, b) in cur {
            if a[v].is_positive() {
                pos.push((a, b));
            } else if a[v].is_negative() {
                neg.push((a, b));
            } else {
                next.push((a.clone(), b.clone()));
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let (sp, sn) = (-&an[v], ap[v].clone());
                let a: RVec = ap.iter().zip(an.iter()).map(|(x, y)| x * &sp + y * &sn).collect();
                let b = *bp * &sp + *bn * &sn;
                next.push(normalize(&a, &b));
            }
        }
        next.sort();
        next.dedup();
        systems[v] = next;
    }
    if systems[0].iter().any(|(_, b)| b.is_negative()) {
        return None;
    }
    let mut x = vec![Rat::zero(); dim];
    for v in 0..dim {
        let (mut lo, mut hi): (Option<Rat>, Option<Rat>) = (None, None);
        for (a, b) in &systems[v + 1] {
            if a[v].is_zero() {
                continue;
            }
            let rest: Rat = (0..v).map(|i| &a[i] * &x[i]).sum();
            let bound = (b - rest) / &a[v];
            if a[v].is_positive() {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            } else {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            }
        }
        x[v] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h,
            (None, None) => Rat::zero(),
        };
    }
    Some(x)
}

/// Moves a feasible point to a vertex when the region is pointed.
fn purify(h: &HRep, mut x: RVec) -> RVec {
    loop {
        let active: Vec<RVec> = h
            .ineqs
            .iter()
            .filter(|(a, b)| dot(a, &x) == *b)
            .map(|(a, _)| a.clone())
            .collect();
        let dirs = if active.is_empty() {
            (0..h.dim).map(|i| crate::linalg::unit_vec(h.dim, i)).collect()
        } else {
            kernel_basis(&RMat::from_rows(&active, h.dim))
        };
        let Some(d) = dirs.into_iter().next() else {
            return x;
        };
        let mut moved = false;
        for dir in [d.clone(), d.iter().map(|v| -v).collect::<RVec>()] {
            let step = h
                .ineqs
                .iter()
                .filter(|(a, _)| dot(a, &dir).is_positive())
                .map(|(a, b)| (b - dot(a, &x)) / dot(a, &dir))
                .min();
            if let Some(s) = step {
                x = x.iter().zip(&dir).map(|(xi, di)| xi + &s * di).collect();
                moved = true;
                break;
            }
        }
        if !moved {
            return x;
        }
    }
}
