//! Exact linear algebra over a field passed as a value.
//!
//! A [`Field`] is an object that performs arithmetic on plain element values,
//! so the same routines serve the rationals and small prime fields.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{malformed, parameter, Error, Result};
use crate::exactpoly::Rat;

pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq + Eq + Ord;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Image of a rational; fails when the denominator is not invertible.
    fn from_rat(&self, r: &Rat) -> Result<Self::Elem>;
    /// A rational representative (the least nonnegative residue for `F_p`).
    fn to_rat(&self, a: &Self::Elem) -> Rat;
    /// All elements, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// Short name such as `"Q"` or `"F3"`.
    fn name(&self) -> String;

    fn order(&self) -> Option<u64> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }
    fn from_rat(&self, r: &Rat) -> Result<Rat> {
        Ok(r.clone())
    }
    fn to_rat(&self, a: &Rat) -> Rat {
        a.clone()
    }
    fn elements(&self) -> Option<Vec<Rat>> {
        None
    }
    fn name(&self) -> String {
        "Q".into()
    }
}

/// The prime field `F_p`, elements stored as residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Accepts primes below 2^31 so products fit in a `u64`.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) || !(2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(parameter(format!("{p} is not a supported prime")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if (*a).is_multiple_of(self.p) {
            return None;
        }
        let e = (*a as i64).extended_gcd(&(self.p as i64));
        Some(e.x.rem_euclid(self.p as i64) as u64)
    }
    fn is_zero(&self, a: &u64) -> bool {
        (*a).is_multiple_of(self.p)
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rat(&self, r: &Rat) -> Result<u64> {
        let p = BigInt::from(self.p);
        let reduce = |x: &BigInt| -> u64 { x.mod_floor(&p).to_u64().unwrap_or(0) };
        let num = reduce(r.numer());
        let den = reduce(r.denom());
        let inv = self
            .inv(&den)
            .ok_or_else(|| malformed(format!("{r} has a denominator divisible by {}", self.p)))?;
        Ok(self.mul(&num, &inv))
    }
    fn to_rat(&self, a: &u64) -> Rat {
        Rat::from_integer(BigInt::from(*a % self.p))
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn name(&self) -> String {
        format!("F{}", self.p)
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
}

/// Dense row-major matrix. A `rows x cols` matrix maps `F^cols -> F^rows`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Self { rows, cols, data: vec![e; rows * cols] }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// `rows` must all have length `cols`.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<Vec<E>>) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(malformed(format!("expected a {rows}x{cols} matrix")));
        }
        Ok(Self { rows, cols, data: data.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, e: E) {
        self.data[r * self.cols + c] = e;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<T>(&self, f: impl Fn(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "matrix shapes do not compose");
    Matrix::from_fn(a.rows, b.cols, |r, c| {
        (0..a.cols).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(a.get(r, k), b.get(k, c))))
    })
}

pub fn apply<F: Field>(field: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(m.cols, v.len(), "vector length does not match matrix");
    (0..m.rows)
        .map(|r| (0..m.cols).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(m.get(r, k), &v[k]))))
        .collect()
}

pub fn is_zero_matrix<F: Field>(field: &F, m: &Matrix<F::Elem>) -> bool {
    m.data.iter().all(|e| field.is_zero(e))
}

pub fn scale_matrix<F: Field>(field: &F, m: &Matrix<F::Elem>, s: &F::Elem) -> Matrix<F::Elem> {
    m.map(|e| field.mul(e, s))
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !field.is_zero(a.get(i, c))) else {
            continue;
        };
        if pr != r {
            for k in 0..a.cols {
                let t = a.get(r, k).clone();
                a.set(r, k, a.get(pr, k).clone());
                a.set(pr, k, t);
            }
        }
        let inv = field.inv(a.get(r, c)).expect("pivot is nonzero");
        for k in 0..a.cols {
            let v = field.mul(a.get(r, k), &inv);
            a.set(r, k, v);
        }
        for i in 0..a.rows {
            if i != r && !field.is_zero(a.get(i, c)) {
                let factor = a.get(i, c).clone();
                for k in 0..a.cols {
                    let v = field.sub(a.get(i, k), &field.mul(&factor, a.get(r, k)));
                    a.set(i, k, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).1.len()
}

/// Basis of the null space `{v : m v = 0}`.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (a, pivots) = rref(field, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); m.cols];
            v[fc] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(a.get(r, fc));
            }
            v
        })
        .collect()
}

pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let aug = Matrix::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m.get(r, c).clone()
        } else if c - n == r {
            field.one()
        } else {
            field.zero()
        }
    });
    let (red, pivots) = rref(field, &aug);
    if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
        return None;
    }
    Some(Matrix::from_fn(n, n, |r, c| red.get(r, c + n).clone()))
}

pub fn is_invertible<F: Field>(field: &F, m: &Matrix<F::Elem>) -> bool {
    m.rows == m.cols && rank(field, m) == m.rows
}

/// A subspace of `F^n`, stored as the nonzero rows of its reduced row echelon
/// form, which makes equality structural.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient: usize) -> Self {
        let id = Matrix::identity(field, ambient);
        Self { ambient, basis: id.row_vecs(), pivots: (0..ambient).collect() }
    }

    pub fn span<F: Field<Elem = E>>(field: &F, ambient: usize, vectors: &[Vec<E>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_fn(vectors.len(), ambient, |r, c| vectors[r][c].clone());
        let (red, pivots) = rref(field, &m);
        Self { ambient, basis: (0..pivots.len()).map(|r| red.row(r).to_vec()).collect(), pivots }
    }

    /// Span of the first `k` standard basis vectors.
    pub fn standard<F: Field<Elem = E>>(field: &F, ambient: usize, k: usize) -> Self {
        let id = Matrix::identity(field, ambient);
        Self { ambient, basis: id.row_vecs().into_iter().take(k).collect(), pivots: (0..k).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Option<Vec<E>> {
        let coords: Vec<E> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, row) in coords.iter().zip(&self.basis) {
            for (x, y) in rest.iter_mut().zip(row) {
                *x = field.sub(x, &field.mul(c, y));
            }
        }
        rest.iter().all(|x| field.is_zero(x)).then_some(coords)
    }

    /// Coordinates of the class of `v` modulo the subspace, in the basis of
    /// standard vectors at non-pivot positions.
    pub fn quotient_coordinates<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        let mut rest = v.to_vec();
        for (&p, row) in self.pivots.iter().zip(&self.basis) {
            let c = rest[p].clone();
            for (x, y) in rest.iter_mut().zip(row) {
                *x = field.sub(x, &field.mul(&c, y));
            }
        }
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).map(|c| rest[c].clone()).collect()
    }

    /// Standard basis vectors completing the echelon basis to a basis of `F^n`.
    pub fn complement_basis<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .map(|c| {
                let mut v = vec![field.zero(); self.ambient];
                v[c] = field.one();
                v
            })
            .collect()
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.coordinates(field, v).is_some()
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains(field, v))
    }

    pub fn sum<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(field, self.ambient, &vs)
    }

    pub fn intersection<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        // Solve sum a_i u_i = sum b_j w_j; the kernel of [U^T | -W^T] gives the a's.
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Self::zero(self.ambient);
        }
        let m = Matrix::from_fn(self.ambient, k + l, |r, c| {
            if c < k {
                self.basis[c][r].clone()
            } else {
                field.neg(&other.basis[c - k][r])
            }
        });
        let vs: Vec<Vec<E>> = kernel(field, &m)
            .into_iter()
            .map(|sol| {
                (0..self.ambient)
                    .map(|r| (0..k).fold(field.zero(), |acc, i| field.add(&acc, &field.mul(&sol[i], &self.basis[i][r]))))
                    .collect()
            })
            .collect();
        Self::span(field, self.ambient, &vs)
    }

    /// `m(self)` for `m: F^ambient -> F^rows`.
    pub fn image<F: Field<Elem = E>>(&self, field: &F, m: &Matrix<E>) -> Self {
        let vs: Vec<Vec<E>> = self.basis.iter().map(|v| apply(field, m, v)).collect();
        Self::span(field, m.rows(), &vs)
    }

    /// `m^{-1}(self)` for `m: F^cols -> F^ambient`.
    pub fn preimage<F: Field<Elem = E>>(&self, field: &F, m: &Matrix<E>) -> Self {
        // v maps into self iff its image is killed by the quotient map.
        let q = self.ambient - self.dim();
        if q == 0 {
            return Self::full(field, m.cols());
        }
        let cols: Vec<Vec<E>> = (0..m.cols()).map(|c| self.quotient_coordinates(field, &m.column(c))).collect();
        let qm = Matrix::from_fn(q, m.cols(), |r, c| cols[c][r].clone());
        Self::span(field, m.cols(), &kernel(field, &qm))
    }

    pub fn kernel_of<F: Field<Elem = E>>(field: &F, m: &Matrix<E>) -> Self {
        Self::span(field, m.cols(), &kernel(field, m))
    }

    pub fn image_of<F: Field<Elem = E>>(field: &F, m: &Matrix<E>) -> Self {
        Self::full(field, m.cols()).image(field, m)
    }
}

/// Number of subspaces of `F_q^n`.
pub fn count_subspaces(q: u64, n: usize) -> u128 {
    (0..=n).map(|k| gaussian_binomial(q as u128, n, k)).sum()
}

fn gaussian_binomial(q: u128, n: usize, k: usize) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32).saturating_sub(1));
    }
    num / den
}

/// Every subspace of `F^n` for a finite field, each exactly once.
pub fn enumerate_subspaces<F: Field>(field: &F, n: usize, budget: u128) -> Result<Vec<Subspace<F::Elem>>> {
    let elems = field
        .elements()
        .ok_or_else(|| Error::Precondition(format!("cannot enumerate subspaces over {}", field.name())))?;
    let needed = count_subspaces(elems.len() as u64, n);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // Free slots: row r, column c > pivots[r], c not a pivot.
            let slots: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let mut digits = vec![0usize; slots.len()];
            loop {
                let mut basis = vec![vec![field.zero(); n]; k];
                for (r, &p) in pivots.iter().enumerate() {
                    basis[r][p] = field.one();
                }
                for (&(r, c), &d) in slots.iter().zip(&digits) {
                    basis[r][c] = elems[d].clone();
                }
                out.push(Subspace { ambient: n, basis, pivots: pivots.clone() });
                if !increment(&mut digits, elems.len()) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Odometer step; returns false after the last configuration.
pub(crate) fn increment(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant by elimination.
pub fn det<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut d = field.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !field.is_zero(a.get(i, c))) else {
            return field.zero();
        };
        if pr != c {
            for k in 0..n {
                let t = a.get(c, k).clone();
                a.set(c, k, a.get(pr, k).clone());
                a.set(pr, k, t);
            }
            d = field.neg(&d);
        }
        let piv = a.get(c, c).clone();
        d = field.mul(&d, &piv);
        let inv = field.inv(&piv).expect("nonzero pivot");
        for i in (c + 1)..n {
            let factor = field.mul(a.get(i, c), &inv);
            if field.is_zero(&factor) {
                continue;
            }
            for k in c..n {
                let v = field.sub(a.get(i, k), &field.mul(&factor, a.get(c, k)));
                a.set(i, k, v);
            }
        }
    }
    d
}

/// Converts a rational matrix to a field matrix.
pub fn matrix_from_rat<F: Field>(field: &F, m: &Matrix<Rat>) -> Result<Matrix<F::Elem>> {
    let rows: Result<Vec<Vec<F::Elem>>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| field.from_rat(x)).collect())
        .collect();
    Matrix::from_rows(m.rows(), m.cols(), rows?)
}

pub fn matrix_to_rat<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Matrix<Rat> {
    m.map(|e| field.to_rat(e))
}

/// True if every entry is an integer in `0..p` (used when reading `F_p` data).
pub fn is_residue(r: &Rat, p: u64) -> bool {
    r.is_integer() && !r.is_negative() && r.to_integer() < BigInt::from(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, rat};

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.from_rat(&rat(1, 2)).unwrap(), 4);
        assert_eq!(f.from_int(-1), 6);
        assert!(f.from_rat(&rat(1, 7)).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn subspace_counts() {
        let f2 = PrimeField::new(2).unwrap();
        for n in 0..4 {
            let subs = enumerate_subspaces(&f2, n, 1 << 20).unwrap();
            assert_eq!(subs.len() as u128, count_subspaces(2, n));
            let mut sorted = subs.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), subs.len());
        }
        assert_eq!(count_subspaces(2, 2), 5);
        assert_eq!(count_subspaces(3, 2), 6);
        assert!(matches!(enumerate_subspaces(&f2, 3, 10), Err(Error::Budget { .. })));
    }

    #[test]
    fn kernel_image_preimage() {
        let q = Rationals;
        let m = Matrix::from_rows(2, 3, vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]]).unwrap();
        let k = Subspace::kernel_of(&q, &m);
        assert_eq!(k.dim(), 2);
        let im = Subspace::image_of(&q, &m);
        assert_eq!(im.dim(), 1);
        assert_eq!(Subspace::zero(2).preimage(&q, &m), k);
        assert_eq!(im.preimage(&q, &m).dim(), 3);
    }

    #[test]
    fn sum_and_intersection() {
        let q = Rationals;
        let a = Subspace::span(&q, 3, &[vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]);
        let b = Subspace::span(&q, 3, &[vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]]);
        let i = a.intersection(&q, &b);
        assert_eq!(i, Subspace::span(&q, 3, &[vec![int(0), int(5), int(0)]]));
        assert!(a.sum(&q, &b).is_full());
    }

    #[test]
    fn inverse_and_det() {
        let q = Rationals;
        let m = Matrix::from_rows(2, 2, vec![vec![int(2), int(1)], vec![int(1), int(1)]]).unwrap();
        let inv = inverse(&q, &m).unwrap();
        assert_eq!(mat_mul(&q, &m, &inv), Matrix::identity(&q, 2));
        assert_eq!(det(&q, &m), int(1));
        let s = Matrix::from_rows(2, 2, vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert!(inverse(&q, &s).is_none());
        assert_eq!(det(&q, &s), int(0));
    }

    #[test]
    fn quotient_coordinates_split_vector() {
        let q = Rationals;
        let u = Subspace::span(&q, 2, &[vec![int(1), int(1)]]);
        assert_eq!(u.quotient_coordinates(&q, &[int(3), int(5)]), vec![int(2)]);
        assert_eq!(u.coordinates(&q, &[int(3), int(3)]), Some(vec![int(3)]));
        assert_eq!(u.complement_basis(&q), vec![vec![int(0), int(1)]]);
    }
}
