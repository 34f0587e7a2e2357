//! Exact rational and integer linear algebra.
//!
//! Everything here is dense and sized for desk-scale problems (a dozen
//! dimensions at most). Scalars are arbitrary-precision rationals, so no
//! operation ever rounds.

mod lattice;

pub use lattice::{closure_under_maps, hnf, hnf_with_transform, HnfTransform, Lattice, Ring};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar in canonical form.
pub type Rat = BigRational;

/// Dense rational (column) vector.
pub type RVec = Vec<Rat>;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rvec(entries: &[i64]) -> RVec {
    entries.iter().map(|&e| int(e)).collect()
}

pub fn zero_vec(n: usize) -> RVec {
    vec![Rat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> RVec {
    let mut v = zero_vec(n);
    v[i] = Rat::one();
    v
}

/// Parses a rational literal: optional sign, digits, optional `/` and a
/// positive denominator.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix(['-', '+']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid rational literal '{s}'"));
    }
    let numer: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational literal '{s}'"))?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(format!("invalid denominator in '{s}'"));
            }
            let d: BigInt = d.parse().map_err(|_| format!("invalid denominator in '{s}'"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in '{s}'"));
            }
            d
        }
    };
    Ok(Rat::new(numer, denom))
}

pub fn parse_rvec<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Result<RVec, String> {
    tokens.into_iter().map(parse_rat).collect()
}

pub fn fmt_rvec(v: &[Rat]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot: dimension mismatch");
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rat], b: &[Rat]) -> RVec {
    assert_eq!(a.len(), b.len(), "add: dimension mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RVec {
    assert_eq!(a.len(), b.len(), "sub: dimension mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(s: &Rat, a: &[Rat]) -> RVec {
    a.iter().map(|x| s * x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn is_nonneg(a: &[Rat]) -> bool {
    a.iter().all(|x| !x.is_negative())
}

pub fn is_integral(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_integer())
}

pub fn sum(a: &[Rat]) -> Rat {
    a.iter().fold(Rat::zero(), |acc, x| acc + x)
}

/// Concatenates two vectors (the pairing `(y1, y2)`).
pub fn concat(a: &[Rat], b: &[Rat]) -> RVec {
    a.iter().chain(b).cloned().collect()
}

/// Scales `v` by a positive factor so that it becomes a primitive integer
/// vector. The zero vector is returned unchanged.
pub fn primitive(v: &[Rat]) -> RVec {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect()
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: &[RVec], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "from_rows: ragged rows");
            data.extend(r.iter().cloned());
        }
        RMat { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[RVec], rows: usize) -> Self {
        RMat::from_rows(cols, rows).transpose()
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<RVec> = rows.iter().map(|r| rvec(r)).collect();
        RMat::from_rows(&rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> RVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<RVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<RVec> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> RMat {
        let mut t = RMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rat]) -> RVec {
        assert_eq!(x.len(), self.cols, "mul_vec: dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn mul(&self, other: &RMat) -> RMat {
        assert_eq!(self.cols, other.rows, "mul: dimension mismatch");
        let mut out = RMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &RMat) -> RMat {
        let mut out = RMat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RMat {
        let mut out = RMat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rat> {
        self.data.iter()
    }
}

impl std::ops::Index<(usize, usize)> for RMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", fmt_rvec(self.row(i)))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RMat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &RMat) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                let d = &factor * &a[(r, j)];
                a[(i, j)] -= d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Rref { matrix: a, pivots, rank }
}

pub fn rank(m: &RMat) -> usize {
    rref(m).rank
}

/// Basis of `{x : Mx = 0}`, one vector per free column.
pub fn kernel_basis(m: &RMat) -> Vec<RVec> {
    let Rref { matrix, pivots, .. } = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zero_vec(n);
            v[f] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -matrix[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// Some `x` with `Mx = b`, free variables set to zero; `None` if inconsistent.
pub fn solve(m: &RMat, b: &[Rat]) -> Option<RVec> {
    assert_eq!(m.rows(), b.len(), "solve: dimension mismatch");
    let n = m.cols();
    let mut aug = RMat::zeros(m.rows(), n + 1);
    for i in 0..m.rows() {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let Rref { matrix, pivots, .. } = rref(&aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = zero_vec(n);
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = matrix[(row, n)].clone();
    }
    Some(x)
}

/// Whether the vectors are linearly independent.
pub fn independent(vectors: &[RVec], dim: usize) -> bool {
    vectors.is_empty() || rank(&RMat::from_rows(vectors, dim)) == vectors.len()
}

/// Whether `v` lies in the rational span of `vectors`.
pub fn in_span(vectors: &[RVec], v: &[Rat]) -> bool {
    if vectors.is_empty() {
        return is_zero_vec(v);
    }
    solve(&RMat::from_cols(vectors, v.len()), v).is_some()
}

/// Incrementally maintained echelon basis, used to test span membership of
/// a growing set of vectors.
#[derive(Debug, Clone, Default)]
pub(crate) struct Echelon {
    rows: Vec<(usize, RVec)>,
}

impl Echelon {
    /// Reduces `v` against the stored rows; returns the residue.
    fn reduce(&self, v: &[Rat]) -> RVec {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    /// Inserts `v` if it is independent of the stored rows.
    pub(crate) fn insert(&mut self, v: &[Rat]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        let r: RVec = r.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    pub(crate) fn contains(&self, v: &[Rat]) -> bool {
        is_zero_vec(&self.reduce(v))
    }
}

pub(crate) fn to_bigint(x: &Rat) -> BigInt {
    debug_assert!(x.is_integer());
    x.to_integer()
}
