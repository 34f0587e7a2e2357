//! Integer lattices in Hermite normal form, and module closures under a
//! family of linear maps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{is_integral, to_bigint, Echelon, RMat, RVec, Rat};

/// Coefficient ring of a closure computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Z,
    Q,
}

/// A subgroup of `Z^m`, stored by its row-style Hermite basis.
///
/// Subgroups of `Z^m` are free, so no torsion part is ever represented.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<RVec>,
    pivots: Vec<usize>,
}

/// Hermite form of a row set together with the unimodular transform that
/// produced it.
#[derive(Debug, Clone)]
pub struct HnfTransform {
    /// Nonzero HNF rows.
    pub basis: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    /// `transform[i]` combines the input rows into `basis[i]`.
    pub transform: Vec<Vec<BigInt>>,
    /// Basis of the integer left kernel `{x : x * rows = 0}`.
    pub kernel: Vec<Vec<BigInt>>,
}

fn axpy(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

/// Row-style Hermite normal form with transform. `rows` are integer vectors
/// of length `dim`.
pub fn hnf_with_transform(rows: &[Vec<BigInt>], dim: usize) -> HnfTransform {
    let k = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        if r == k {
            break;
        }
        loop {
            let Some(best) = (r..k)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()))
            else {
                break;
            };
            a.swap(r, best);
            u.swap(r, best);
            let mut done = true;
            for i in r + 1..k {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (ar, ai) = (a[r].clone(), &mut a[i]);
                axpy(ai, &q, &ar);
                let ur = u[r].clone();
                axpy(&mut u[i], &q, &ur);
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            a[r].iter_mut().for_each(|x| *x = -&*x);
            u[r].iter_mut().for_each(|x| *x = -&*x);
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            let ar = a[r].clone();
            axpy(&mut a[i], &q, &ar);
            let ur = u[r].clone();
            axpy(&mut u[i], &q, &ur);
        }
        pivots.push(c);
        r += 1;
    }
    let kernel = u.split_off(r);
    a.truncate(r);
    HnfTransform { basis: a, pivots, transform: u, kernel }
}

/// Hermite basis of the integer span of `rows`.
pub fn hnf(rows: &[RVec], dim: usize) -> Lattice {
    Lattice::from_rows(rows, dim)
}

impl Lattice {
    pub fn from_rows(rows: &[RVec], dim: usize) -> Lattice {
        let ints: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                assert!(r.len() == dim && is_integral(r), "lattice rows must be integral of length {dim}");
                r.iter().map(to_bigint).collect()
            })
            .collect();
        let h = hnf_with_transform(&ints, dim);
        Lattice {
            dim,
            basis: h.basis.into_iter().map(|r| r.into_iter().map(Rat::from_integer).collect()).collect(),
            pivots: h.pivots,
        }
    }

    pub fn full(dim: usize) -> Lattice {
        let rows: Vec<RVec> = (0..dim).map(|i| super::unit_vec(dim, i)).collect();
        Lattice::from_rows(&rows, dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> RMat {
        RMat::from_rows(&self.basis, self.dim)
    }

    /// Integer coordinates of `v` in the Hermite basis, if `v` is in the lattice.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim);
        if !is_integral(v) {
            return None;
        }
        let mut rest: Vec<BigInt> = v.iter().map(to_bigint).collect();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let piv = to_bigint(&row[p]);
            let (q, r) = rest[p].div_rem(&piv);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * to_bigint(y);
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some()
    }
}

/// Generating set of the smallest `ring`-submodule containing `start` and
/// closed under every map in `maps`.
///
/// Over `Q` the result is a linearly independent list of iterates, in the
/// breadth-first order they were discovered. Over `Z` it is a Hermite basis;
/// the loop stops once adding all images leaves the Hermite form unchanged.
pub fn closure_under_maps(start: &[Rat], maps: &[RMat], ring: Ring) -> Vec<RVec> {
    let dim = start.len();
    for m in maps {
        assert!(m.rows() == dim && m.cols() == dim, "closure_under_maps: map dimension mismatch");
    }
    match ring {
        Ring::Q => {
            let mut echelon = Echelon::default();
            let mut gens: Vec<RVec> = Vec::new();
            if echelon.insert(start) {
                gens.push(start.to_vec());
            }
            let mut next = 0;
            while next < gens.len() {
                let g = gens[next].clone();
                next += 1;
                for m in maps {
                    let img = m.mul_vec(&g);
                    if echelon.insert(&img) {
                        gens.push(img);
                    }
                }
            }
            gens
        }
        Ring::Z => {
            let mut lattice = Lattice::from_rows(&[start.to_vec()], dim);
            loop {
                let mut rows = lattice.basis.clone();
                for b in &lattice.basis {
                    for m in maps {
                        rows.push(m.mul_vec(b));
                    }
                }
                let next = Lattice::from_rows(&rows, dim);
                if next == lattice {
                    return lattice.basis;
                }
                lattice = next;
            }
        }
    }
}
