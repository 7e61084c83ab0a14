//! Weight calculus for one-parameter subgroups of products of special linear
//! groups.
//!
//! A weight vector `γ = (γ_1 ≤ ... ≤ γ_p)` with `Σ γ_k = 0` describes a
//! (formal) one-parameter subgroup diagonal in the standard basis. For a
//! homomorphism `f: V -> W` the eigencoordinate `v_i^∨ ⊗ w_j` has weight
//! `γ_j - δ_i` and `μ(f, (δ, γ))` is the largest weight on the support of `f`.
//! Rational entries are allowed throughout.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{malformed, precondition, Error, Result};
use crate::exactpoly::{int, Rat};
use crate::linalg::{matrix_to_rat, Field, Matrix};
use crate::quiver::Quiver;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    entries: Vec<Rat>,
}

impl WeightVector {
    /// Checks that the entries ascend and sum to zero.
    pub fn new(entries: Vec<Rat>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(precondition("weight vector is not sorted ascending"));
        }
        if !entries.iter().sum::<Rat>().is_zero() {
            return Err(precondition("weight vector does not sum to zero"));
        }
        Ok(Self { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&e| int(e)).collect())
    }

    pub fn zero(p: usize) -> Self {
        Self { entries: alloc::vec![Rat::zero(); p] }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    /// Entry `k`, 1-based.
    pub fn at(&self, k: usize) -> &Rat {
        &self.entries[k - 1]
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Nonnegative multiples stay sorted.
    pub fn scale(&self, c: &Rat) -> Result<Self> {
        if c.is_negative() {
            return Err(precondition("weight vectors may only be scaled by c >= 0"));
        }
        Ok(Self { entries: self.entries.iter().map(|e| e * c).collect() })
    }

    /// Entrywise sum, i.e. the weights of the product of two commuting
    /// subgroups diagonal in the same basis.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(malformed("weight vectors of different dimensions"));
        }
        Self::new(self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect())
    }
}

/// `γ^{(j)} = (j-p, ..., j-p, j, ..., j)` with `j - p` repeated `j` times.
pub fn step_vector(p: usize, j: usize) -> Result<WeightVector> {
    if j > p {
        return Err(precondition(format!("step index {j} exceeds dimension {p}")));
    }
    let (lo, hi) = (int(j as i64 - p as i64), int(j as i64));
    Ok(WeightVector { entries: (1..=p).map(|k| if k <= j { lo.clone() } else { hi.clone() }).collect() })
}

/// `(1/p) γ^{(j)}`, the weight of the flag subgroup attached to `V^{(j)}`.
pub fn normalized_step(p: usize, j: usize) -> Result<WeightVector> {
    let s = step_vector(p, j)?;
    if p == 0 {
        return Ok(s);
    }
    s.scale(&Rat::new(1.into(), (p as i64).into()))
}

/// Coefficients `c_1, ..., c_{p-1}` (stored at index `k - 1`) with
/// `γ = Σ c_k γ^{(k)}`, namely `c_k = (γ_{k+1} - γ_k) / p`.
pub fn step_decompose(gamma: &WeightVector) -> Vec<Rat> {
    let p = Rat::from_integer((gamma.dim() as i64).into());
    gamma.entries.windows(2).map(|w| (&w[1] - &w[0]) / &p).collect()
}

/// Inverse of [`step_decompose`].
pub fn step_recompose(p: usize, coeffs: &[Rat]) -> Result<Vec<Rat>> {
    let mut out = alloc::vec![Rat::zero(); p];
    for (k, c) in coeffs.iter().enumerate() {
        let s = step_vector(p, k + 1)?;
        for (o, e) in out.iter_mut().zip(s.entries()) {
            *o += c * e;
        }
    }
    Ok(out)
}

/// A point of `Hom(V, W)` with `dim V = p`, `dim W = q`, stored as a `q x p`
/// matrix. Entry `(i, j)` (1-based, `i` source, `j` target) is the
/// coefficient of `v_i^∨ ⊗ w_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoint {
    matrix: Matrix<Rat>,
}

impl HomPoint {
    pub fn new(matrix: Matrix<Rat>) -> Self {
        Self { matrix }
    }

    pub fn from_int_rows(q: usize, p: usize, rows: &[&[i64]]) -> Result<Self> {
        let data = rows.iter().map(|r| r.iter().map(|&e| int(e)).collect()).collect();
        Ok(Self { matrix: Matrix::from_rows(q, p, data)? })
    }

    /// `(i, j)` support entries listed as 1-based (source, target).
    pub fn from_support(p: usize, q: usize, support: &[(usize, usize)]) -> Self {
        let mut m = Matrix::filled(q, p, Rat::zero());
        for &(i, j) in support {
            m.set(j - 1, i - 1, Rat::one());
        }
        Self { matrix: m }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<Rat> {
        &self.matrix
    }

    /// Coefficient of `v_i^∨ ⊗ w_j`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        self.matrix.get(j - 1, i - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.support().next().is_none()
    }

    /// Support as 1-based `(i, j)` pairs, ordered by `i` then `j`.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.source_dim())
            .flat_map(move |i| (1..=self.target_dim()).map(move |j| (i, j)))
            .filter(move |&(i, j)| !self.entry(i, j).is_zero())
    }

    /// `f(V^{(i)}) ⊂ W^{(j)}` for the standard flags.
    pub fn maps_flag(&self, i: usize, j: usize) -> bool {
        self.support().all(|(c, r)| c > i || r <= j)
    }

    /// `V^{(i)} ⊂ ker f`.
    pub fn kills_prefix(&self, i: usize) -> bool {
        self.support().all(|(c, _)| c > i)
    }

    /// `Im f ⊂ W^{(j)}`.
    pub fn image_in_prefix(&self, j: usize) -> bool {
        self.support().all(|(_, r)| r <= j)
    }
}

/// Weight `γ_j - δ_i` of the eigencoordinate `(i, j)`.
pub fn eigen_weight(i: usize, j: usize, delta: &WeightVector, gamma: &WeightVector) -> Rat {
    gamma.at(j) - delta.at(i)
}

/// `μ(f, (δ, γ))`: the largest weight on the support of `f`.
pub fn mu_hom(f: &HomPoint, delta: &WeightVector, gamma: &WeightVector) -> Result<Rat> {
    if delta.dim() != f.source_dim() || gamma.dim() != f.target_dim() {
        return Err(malformed("weight vector dimensions do not match the homomorphism"));
    }
    f.support()
        .map(|(i, j)| eigen_weight(i, j, delta, gamma))
        .max()
        .ok_or_else(|| Error::Degenerate("zero homomorphism has no Hilbert-Mumford weight".into()))
}

/// A tuple of homomorphisms along the arrows of a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuplePoint {
    quiver: Quiver,
    dims: Vec<usize>,
    homs: Vec<HomPoint>,
}

impl TuplePoint {
    pub fn new(quiver: Quiver, dims: Vec<usize>, homs: Vec<HomPoint>) -> Result<Self> {
        if dims.len() != quiver.n() {
            return Err(malformed(format!("{} dimensions for {} vertices", dims.len(), quiver.n())));
        }
        if homs.len() != quiver.arrows().len() {
            return Err(malformed("one homomorphism per arrow is required"));
        }
        for (a, f) in quiver.arrows().iter().zip(&homs) {
            if f.source_dim() != dims[a.tail - 1] || f.target_dim() != dims[a.head - 1] {
                return Err(malformed(format!("matrix for arrow {a} has the wrong shape")));
            }
        }
        Ok(Self { quiver, dims, homs })
    }

    /// Lifts field-valued maps to rationals. The support, which is all the
    /// weight calculus looks at, is preserved.
    pub fn from_field_maps<F: Field>(field: &F, quiver: Quiver, dims: Vec<usize>, maps: &[Matrix<F::Elem>]) -> Result<Self> {
        let homs = maps.iter().map(|m| HomPoint::new(matrix_to_rat(field, m))).collect();
        Self::new(quiver, dims, homs)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn homs(&self) -> &[HomPoint] {
        &self.homs
    }

    /// Every component nonzero, i.e. a point of the product of projective spaces.
    pub fn is_projective_point(&self) -> bool {
        self.homs.iter().all(|f| !f.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn validate(&self, dims: &[usize]) -> Result<()> {
        if self.0.len() != dims.len() {
            return Err(malformed("multi-index length does not match the vertex count"));
        }
        for (v, (&j, &p)) in self.0.iter().zip(dims).enumerate() {
            if j > p {
                return Err(precondition(format!("index {j} at vertex {} exceeds dimension {p}", v + 1)));
            }
        }
        Ok(())
    }

    /// Per-vertex weights `(1/p_i) γ^{(j_i)}`.
    pub fn weights(&self, dims: &[usize]) -> Result<Vec<WeightVector>> {
        self.validate(dims)?;
        self.0.iter().zip(dims).map(|(&j, &p)| normalized_step(p, j)).collect()
    }

    /// Vertices (1-based) where the index is neither `0` nor `p_i`.
    pub fn nontrivial_vertices(&self, dims: &[usize]) -> alloc::collections::BTreeSet<usize> {
        self.0
            .iter()
            .zip(dims)
            .enumerate()
            .filter(|(_, (&j, &p))| j != 0 && j != p)
            .map(|(v, _)| v + 1)
            .collect()
    }

    /// `f_a(V^{(j_t)}) ⊂ V^{(j_h)}` for every arrow.
    pub fn is_compatible(&self, point: &TuplePoint) -> bool {
        point
            .quiver
            .arrows()
            .iter()
            .zip(&point.homs)
            .all(|(a, f)| f.maps_flag(self.0[a.tail - 1], self.0[a.head - 1]))
    }
}

/// Weights of the eigencoordinates of an abstract factor, each a linear
/// functional of the vertex weight vector, with a flag telling whether the
/// point's coordinate there is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorTable {
    pub coords: Vec<FactorCoord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCoord {
    pub functional: Vec<Rat>,
    pub nonzero: bool,
}

impl FactorTable {
    pub fn mu(&self, lambda: &WeightVector) -> Result<Rat> {
        self.coords
            .iter()
            .filter(|c| c.nonzero)
            .map(|c| {
                if c.functional.len() != lambda.dim() {
                    return Err(malformed("factor functional has the wrong length"));
                }
                Ok(c.functional.iter().zip(lambda.entries()).map(|(a, b)| a * b).sum::<Rat>())
            })
            .try_fold(None::<Rat>, |best, w| {
                let w = w?;
                Ok(Some(match best {
                    Some(b) if b >= w => b,
                    _ => w,
                }))
            })?
            .ok_or_else(|| Error::Degenerate("factor point has no nonzero coordinate".into()))
    }
}

/// `Σ_i l_i μ(w_i, λ_i) + Σ_a b_a μ(f_a, (λ_{t(a)}, λ_{h(a)}))`.
pub fn mu_linearized(
    point: &TuplePoint,
    tables: &[Option<FactorTable>],
    lambda: &[WeightVector],
    l: &[Rat],
    b: &[Rat],
) -> Result<Rat> {
    let n = point.quiver.n();
    if lambda.len() != n || l.len() != n || tables.len() != n {
        return Err(malformed("per-vertex data must have one entry per vertex"));
    }
    if b.len() != point.homs.len() {
        return Err(malformed("one arrow coefficient per arrow is required"));
    }
    let mut total = Rat::zero();
    for v in 0..n {
        if l[v].is_zero() {
            continue;
        }
        let table = tables[v]
            .as_ref()
            .ok_or_else(|| malformed(format!("vertex {} has l != 0 but no factor table", v + 1)))?;
        total += &l[v] * table.mu(&lambda[v])?;
    }
    for ((a, f), ba) in point.quiver.arrows().iter().zip(&point.homs).zip(b) {
        total += ba * mu_hom(f, &lambda[a.tail - 1], &lambda[a.head - 1])?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagWeight {
    /// `Σ_a b_a (j_h/p_h - j_t/p_t)`.
    pub closed_form: Rat,
    pub exact_mu: Rat,
    pub equal: bool,
}

/// `Σ_a b_a (j_h/p_h - j_t/p_t)`, the weight a compatible flag would have if
/// no arrow dropped below it.
pub fn flag_closed_form(quiver: &Quiver, dims: &[usize], j: &MultiIndex, b: &[Rat]) -> Rat {
    let frac = |v: usize| -> Rat {
        if dims[v - 1] == 0 {
            Rat::zero()
        } else {
            Rat::new((j.0[v - 1] as i64).into(), (dims[v - 1] as i64).into())
        }
    };
    quiver.arrows().iter().zip(b).map(|(a, ba)| ba * (frac(a.head) - frac(a.tail))).sum()
}

/// Closed form and exact `μ` of the flag subgroup `λ^{j}`.
pub fn flag_weight(point: &TuplePoint, j: &MultiIndex, b: &[Rat]) -> Result<FlagWeight> {
    j.validate(&point.dims)?;
    if b.len() != point.homs.len() {
        return Err(malformed("one arrow coefficient per arrow is required"));
    }
    if !j.is_compatible(point) {
        return Err(precondition("flag is not compatible with the arrow maps"));
    }
    let closed_form = flag_closed_form(&point.quiver, &point.dims, j, b);
    let lambda = j.weights(&point.dims)?;
    let exact_mu = point
        .quiver
        .arrows()
        .iter()
        .zip(&point.homs)
        .zip(b)
        .map(|((a, f), ba)| Ok(ba * mu_hom(f, &lambda[a.tail - 1], &lambda[a.head - 1])?))
        .sum::<Result<Rat>>()?;
    let equal = exact_mu == closed_form;
    Ok(FlagWeight { closed_form, exact_mu, equal })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityReport {
    pub mu_first: Rat,
    pub mu_second: Rat,
    pub mu_product: Rat,
    pub additive: bool,
}

/// Compares `μ(λλ')` with `μ(λ) + μ(λ')` for two subgroups diagonal in the
/// same bases.
pub fn check_additivity(
    f: &HomPoint,
    delta: &WeightVector,
    gamma: &WeightVector,
    delta2: &WeightVector,
    gamma2: &WeightVector,
) -> Result<AdditivityReport> {
    let mu_first = mu_hom(f, delta, gamma)?;
    let mu_second = mu_hom(f, delta2, gamma2)?;
    let mu_product = mu_hom(f, &delta.add(delta2)?, &gamma.add(gamma2)?)?;
    let additive = mu_product == &mu_first + &mu_second;
    Ok(AdditivityReport { mu_first, mu_second, mu_product, additive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;
    use alloc::vec;

    fn wv(e: &[i64]) -> WeightVector {
        WeightVector::from_ints(e).unwrap()
    }

    fn nilpotent() -> HomPoint {
        HomPoint::from_support(3, 3, &[(2, 1), (3, 2)])
    }

    #[test]
    fn step_vectors() {
        assert_eq!(step_vector(3, 1).unwrap(), wv(&[-2, 1, 1]));
        assert_eq!(step_vector(3, 2).unwrap(), wv(&[-1, -1, 2]));
        assert_eq!(step_vector(2, 2).unwrap(), wv(&[0, 0]));
        assert!(step_vector(2, 3).is_err());
    }

    #[test]
    fn step_decomposition_examples() {
        assert_eq!(step_decompose(&wv(&[-1, -1, 2])), vec![int(0), int(1)]);
        assert_eq!(step_decompose(&wv(&[-2, 1, 1])), vec![int(1), int(0)]);
        let c = step_decompose(&wv(&[-5, 1, 4]));
        assert_eq!(c, vec![int(2), int(1)]);
        assert_eq!(step_recompose(3, &c).unwrap(), wv(&[-5, 1, 4]).entries());
        assert!(WeightVector::from_ints(&[1, -1]).is_err());
        assert!(WeightVector::from_ints(&[0, 1]).is_err());
    }

    #[test]
    fn mu_examples() {
        let f = nilpotent();
        assert_eq!(mu_hom(&f, &wv(&[-2, 1, 1]), &wv(&[-2, 1, 1])).unwrap(), int(0));
        assert_eq!(mu_hom(&f, &wv(&[-1, -1, 2]), &wv(&[-1, -1, 2])).unwrap(), int(0));
        assert_eq!(mu_hom(&f, &wv(&[-3, 0, 3]), &wv(&[-3, 0, 3])).unwrap(), int(-3));
        let g = HomPoint::from_support(2, 2, &[(2, 1)]);
        assert_eq!(mu_hom(&g, &wv(&[-1, 1]), &wv(&[-1, 1])).unwrap(), int(-2));
        let z = HomPoint::from_support(2, 2, &[]);
        assert!(matches!(mu_hom(&z, &wv(&[-1, 1]), &wv(&[-1, 1])), Err(Error::Degenerate(_))));
    }

    #[test]
    fn additivity_examples() {
        let f = nilpotent();
        let r = check_additivity(&f, &wv(&[-2, 1, 1]), &wv(&[-2, 1, 1]), &wv(&[-1, -1, 2]), &wv(&[-1, -1, 2])).unwrap();
        assert_eq!((r.mu_first, r.mu_second, r.mu_product), (int(0), int(0), int(-3)));
        assert!(!r.additive);
        let r = check_additivity(&f, &wv(&[-2, 1, 1]), &wv(&[-2, 1, 1]), &WeightVector::zero(3), &WeightVector::zero(3)).unwrap();
        assert!(r.additive);
        let d = HomPoint::from_support(2, 2, &[(1, 1), (2, 2)]);
        let r = check_additivity(&d, &wv(&[-1, 1]), &wv(&[-1, 1]), &wv(&[-1, 1]), &wv(&[-1, 1])).unwrap();
        assert_eq!((r.mu_first, r.mu_second, r.mu_product.clone()), (int(0), int(0), int(0)));
        assert!(r.additive);
    }

    fn arrow_point(f: HomPoint) -> TuplePoint {
        TuplePoint::new(Quiver::tree(2, &[(1, 2)]).unwrap(), vec![2, 2], vec![f]).unwrap()
    }

    #[test]
    fn linearized_examples() {
        let none = [None, None];
        let zero_l = [int(0), int(0)];
        let diag = arrow_point(HomPoint::from_support(2, 2, &[(1, 1), (2, 2)]));
        let triv = [WeightVector::zero(2), WeightVector::zero(2)];
        assert_eq!(mu_linearized(&diag, &none, &triv, &zero_l, &[int(1)]).unwrap(), int(0));
        let half = normalized_step(2, 1).unwrap();
        let lam = [half.clone(), half];
        assert_eq!(mu_linearized(&diag, &none, &lam, &zero_l, &[int(1)]).unwrap(), int(0));
        let low = arrow_point(HomPoint::from_support(2, 2, &[(1, 2)]));
        let lam = [WeightVector::zero(2), step_vector(2, 1).unwrap()];
        assert_eq!(mu_linearized(&low, &none, &lam, &zero_l, &[int(1)]).unwrap(), int(1));
        assert!(mu_linearized(&low, &none, &lam, &[int(1), int(0)], &[int(1)]).is_err());

        let table = FactorTable {
            coords: vec![
                FactorCoord { functional: vec![int(-1), int(0)], nonzero: true },
                FactorCoord { functional: vec![int(0), int(-1)], nonzero: false },
            ],
        };
        let tables = [Some(table), None];
        let lam = [step_vector(2, 1).unwrap(), WeightVector::zero(2)];
        // -(-1) from the factor plus the arrow term max(0 - (-1), 0 - 1) = 1.
        assert_eq!(mu_linearized(&low, &tables, &lam, &[rat(1, 2), int(0)], &[int(1)]).unwrap(), rat(3, 2));
    }

    #[test]
    fn flag_weight_examples() {
        let diag = arrow_point(HomPoint::from_support(2, 2, &[(1, 1), (2, 2)]));
        let w = flag_weight(&diag, &MultiIndex(vec![1, 1]), &[int(1)]).unwrap();
        assert_eq!((w.closed_form, w.exact_mu, w.equal), (int(0), int(0), true));
        let w = flag_weight(&diag, &MultiIndex(vec![0, 1]), &[int(1)]).unwrap();
        assert_eq!(w.closed_form, rat(1, 2));
        let w = flag_weight(&diag, &MultiIndex(vec![0, 0]), &[int(1)]).unwrap();
        assert_eq!((w.closed_form, w.exact_mu), (int(0), int(0)));
        assert!(flag_weight(&diag, &MultiIndex(vec![1, 0]), &[int(1)]).is_err());
    }
}
