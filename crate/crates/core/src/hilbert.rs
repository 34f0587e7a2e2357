//! Hilbert bases of integer cones `{x in Z^k : x W >= 0}` and the
//! restriction of lattices to the nonnegative orthant.
//!
//! The cone splits as a lineality lattice `ker W` (contributing `±u` for
//! each basis vector `u`) plus preimages of the Hilbert basis of the pointed
//! monoid `Λ ∩ N^m`, where `Λ` is the row lattice of `W`. The latter is
//! computed by a completion procedure that imposes the sign constraints one
//! coordinate at a time.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::linalg::{hnf_with_transform, primitive, rref, to_bigint, HnfTransform, Lattice, RMat, RVec, Rat};

/// `x W >= 0` over `Z^k`, with `W` a `k x m` integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntConeSpec {
    pub w: RMat,
}

impl IntConeSpec {
    pub fn new(w: RMat) -> Self {
        assert!(w.entries().all(|x| x.is_integer()), "cone matrix must be integral");
        IntConeSpec { w }
    }

    pub fn k(&self) -> usize {
        self.w.rows()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.w.transpose().mul_vec(x).iter().all(|v| *v >= Rat::zero())
    }

    /// Image `x W`.
    pub fn image(&self, x: &[Rat]) -> RVec {
        self.w.transpose().mul_vec(x)
    }

    /// Whether the cone contains no line.
    pub fn is_pointed(&self) -> bool {
        crate::linalg::rank(&self.w) == self.k()
    }
}

/// Generators of the monoid `{x in Z^k : x W >= 0}`, sorted graded
/// lexicographically.
///
/// For a pointed cone this is the unique Hilbert basis. Otherwise it consists
/// of `±u` for a Hermite basis `u` of the lineality lattice plus one reduced
/// preimage per Hilbert basis element of the image monoid; no element is an
/// `N`-combination of the others.
pub fn hilbert_basis(spec: &IntConeSpec) -> Vec<RVec> {
    let k = spec.k();
    let m = spec.w.cols();
    let rows: Vec<Vec<BigInt>> = spec.w.row_vecs().iter().map(|r| r.iter().map(to_bigint).collect()).collect();
    let HnfTransform { basis, transform, kernel, .. } = hnf_with_transform(&rows, m);

    let image: Vec<RVec> = basis.iter().map(|r| r.iter().cloned().map(Rat::from_integer).collect()).collect();
    let lattice = Lattice::from_rows(&image, m);
    let kernel: Vec<RVec> = kernel.into_iter().map(|r| r.into_iter().map(Rat::from_integer).collect()).collect();
    let kernel = Lattice::from_rows(&kernel, k);

    let mut out = Vec::new();
    for u in kernel.basis() {
        out.push(u.clone());
        out.push(u.iter().map(|x| -x).collect());
    }
    // `lattice` was rebuilt from an HNF, so its basis coincides with `basis`.
    for y in orthant_hilbert_basis(&lattice) {
        let z = lattice.coordinates(&y).expect("Hilbert element lies in the lattice");
        let x: Vec<BigInt> = (0..k).map(|j| z.iter().zip(&transform).map(|(c, t)| c * &t[j]).sum()).collect();
        out.push(reduce_mod(&kernel, x));
    }
    sort_graded_lex(&mut out);
    out
}

/// Reduces `x` modulo `lattice` so that each pivot coordinate lies in
/// `[0, pivot)`.
fn reduce_mod(lattice: &Lattice, mut x: Vec<BigInt>) -> RVec {
    for (row, &p) in lattice.basis().iter().zip(lattice.pivots()) {
        let piv = to_bigint(&row[p]);
        let q = x[p].div_floor(&piv);
        for (xi, r) in x.iter_mut().zip(row) {
            *xi -= &q * to_bigint(r);
        }
    }
    x.into_iter().map(Rat::from_integer).collect()
}

pub fn sort_graded_lex(v: &mut [RVec]) {
    v.sort_by(|a, b| {
        let na: Rat = a.iter().map(|x| num_traits::Signed::abs(x)).sum();
        let nb: Rat = b.iter().map(|x| num_traits::Signed::abs(x)).sum();
        na.cmp(&nb).then_with(|| a.cmp(b))
    });
}

/// Generators of `Z ∩ N^m` as a commutative monoid, via [`hilbert_basis`]
/// on the coordinates of the Hermite basis of `Z`.
pub fn nat_restriction(z: &Lattice) -> Vec<RVec> {
    if z.rank() == 0 {
        return Vec::new();
    }
    let w = z.basis_matrix();
    let mut out: Vec<RVec> = hilbert_basis(&IntConeSpec::new(w.clone()))
        .iter()
        .map(|x| w.transpose().mul_vec(x))
        .collect();
    sort_graded_lex(&mut out);
    out
}

/// Generators of `span(z) ∩ Q_+^m` as a `Q_+`-semimodule: scale a basis of
/// the span to integer vectors and restrict the lattice they generate.
pub fn qplus_restriction_by_scaling(z: &[RVec], m: usize) -> Vec<RVec> {
    if z.is_empty() {
        return Vec::new();
    }
    let r = rref(&RMat::from_rows(z, m));
    let scaled: Vec<RVec> = r.matrix.row_vecs().into_iter().take(r.rank).map(|v| primitive(&v)).collect();
    nat_restriction(&Lattice::from_rows(&scaled, m))
}

/// Element of the lattice during lifting: coordinates `z` and image `z B`.
#[derive(Clone, PartialEq, Eq)]
struct Elem {
    z: Vec<i128>,
    x: Vec<i128>,
}

impl Elem {
    fn add(&self, other: &Elem) -> Elem {
        Elem { z: add_i128(&self.z, &other.z), x: add_i128(&self.x, &other.x) }
    }

    fn sub(&self, other: &Elem) -> Elem {
        let neg = |v: &[i128]| v.iter().map(|a| -a).collect::<Vec<_>>();
        Elem { z: add_i128(&self.z, &neg(&other.z)), x: add_i128(&self.x, &neg(&other.x)) }
    }

    fn is_zero(&self) -> bool {
        self.z.iter().all(|a| *a == 0)
    }
}

fn add_i128(a: &[i128], b: &[i128]) -> Vec<i128> {
    a.iter()
        .zip(b)
        .map(|(p, q)| p.checked_add(*q).expect("Hilbert basis entries overflow i128"))
        .collect()
}

/// `a` and `b` have the same sign and `|a| <= |b|`.
fn conformal(a: i128, b: i128) -> bool {
    a == 0 || (a.signum() == b.signum() && a.abs() <= b.abs())
}

/// The order used while cutting by column `col`: `g` lies below `s` on the
/// already lifted columns, is conformal to it on `col`, and also on `z`
/// while the lifted columns do not yet determine `z`.
fn below(g: &Elem, s: &Elem, lifted: &[usize], col: usize, with_z: bool) -> bool {
    conformal(g.x[col], s.x[col])
        && lifted.iter().all(|&c| g.x[c] <= s.x[c])
        && (!with_z || g.z.iter().zip(&s.z).all(|(a, b)| conformal(*a, *b)))
}

fn normal_form(mut s: Elem, g: &[Elem], lifted: &[usize], col: usize, with_z: bool) -> Option<Elem> {
    while !s.is_zero() {
        match g.iter().find(|h| below(h, &s, lifted, col, with_z)) {
            Some(h) => s = s.sub(h),
            None => return Some(s),
        }
    }
    None
}

/// Minimal nonzero elements of `lattice ∩ N^m`.
///
/// Project and lift: columns of the Hermite basis `B` are added one at a
/// time, pivots first, starting from `±e_i` in lattice coordinates. Each new
/// column is cut by a completion that adds the normal form of `f + g` for
/// every pair with opposite signs in that column, then drops the elements
/// that are negative there.
fn orthant_hilbert_basis(lattice: &Lattice) -> Vec<RVec> {
    let r = lattice.rank();
    if r == 0 {
        return Vec::new();
    }
    let b: Vec<Vec<i128>> = lattice
        .basis()
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| i128::try_from(c.to_integer()).expect("lattice entries fit in i128"))
                .collect()
        })
        .collect();
    let m = b[0].len();
    let unit = |i: usize, sign: i128| Elem {
        z: (0..r).map(|k| if k == i { sign } else { 0 }).collect(),
        x: b[i].iter().map(|c| sign * c).collect(),
    };
    let mut g: Vec<Elem> = (0..r).flat_map(|i| [unit(i, 1), unit(i, -1)]).collect();

    let pivots = lattice.pivots();
    let order: Vec<usize> = pivots.iter().copied().chain((0..m).filter(|c| !pivots.contains(c))).collect();
    for (stage, &col) in order.iter().enumerate() {
        let lifted = &order[..stage];
        // Pivots come first, so the lifted columns have rank `stage + 1`.
        let with_z = stage + 1 < r;
        let mut i = 0;
        while i < g.len() {
            for j in 0..i {
                if g[i].x[col].signum() * g[j].x[col].signum() < 0 {
                    let s = g[i].add(&g[j]);
                    if let Some(n) = normal_form(s, &g, lifted, col, with_z) {
                        g.push(n);
                    }
                }
            }
            i += 1;
        }
        g.retain(|e| e.x[col] >= 0);
        let lifted = &order[..=stage];
        let keep: Vec<bool> = g
            .iter()
            .map(|e| !g.iter().any(|h| h != e && below(h, e, lifted, col, with_z)))
            .collect();
        g = g.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
    }
    let mut out: Vec<RVec> = g
        .into_iter()
        .map(|e| e.x.into_iter().map(|c| Rat::from_integer(BigInt::from(c))).collect())
        .collect();
    sort_graded_lex(&mut out);
    out
}

/// Exhaustive oracle: cone points in `[-bound, bound]^k` that are minimal
/// for the order `y ≤ x iff yW ≤ xW` componentwise.
///
/// For a pointed cone this returns the Hilbert basis elements inside the box
/// (a reducible element is caught whenever one of its summands lies in the
/// box). For a cone with lines it returns every box point whose image is
/// zero or minimal; compare modulo the lineality space.
pub fn hilbert_bruteforce_oracle(spec: &IntConeSpec, bound: i64) -> Vec<RVec> {
    assert!(bound >= 1);
    let k = spec.k();
    let mut points: Vec<(RVec, RVec)> = Vec::new();
    let mut x = vec![-bound; k];
    loop {
        let v: RVec = x.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect();
        if x.iter().any(|&c| c != 0) && spec.contains(&v) {
            let img = spec.image(&v);
            points.push((v, img));
        }
        let mut i = 0;
        while i < k && x[i] == bound {
            x[i] = -bound;
            i += 1;
        }
        if i == k {
            break;
        }
        x[i] += 1;
    }
    let zero = Rat::zero();
    let mut out: Vec<RVec> = points
        .iter()
        .filter(|(_, img)| {
            img.iter().all(|c| *c == zero)
                || !points.iter().any(|(_, g)| {
                    g != img && g.iter().any(|c| *c != zero) && g.iter().zip(img.iter()).all(|(a, b)| a <= b)
                })
        })
        .map(|(v, _)| v.clone())
        .collect();
    sort_graded_lex(&mut out);
    out
}
