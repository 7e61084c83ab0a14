//! Representations of quivers over a field and King stability.
//!
//! For dimension data `P̄` and arrow weights `b`,
//! `θ(U) = Σ_a b_a (dim U_{t(a)} / P̄_{t(a)} - dim U_{h(a)} / P̄_{h(a)})`,
//! and a representation of dimension `P̄` is semistable when every
//! subrepresentation has `θ ≤ 0`. Over a finite field all subrepresentations
//! can be listed, which gives an exact oracle; over the rationals a lattice
//! of kernels and images or random seeds supply candidates.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{malformed, parameter, precondition, Error, Result};
use crate::exactpoly::Rat;
use crate::linalg::{
    apply, det, enumerate_subspaces, increment, inverse, kernel, mat_mul, Field, Matrix, Rationals, Subspace,
};
use crate::quiver::Quiver;
use crate::weights::{flag_closed_form, HomPoint, MultiIndex, TuplePoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep<F: Field> {
    quiver: Quiver,
    field: F,
    dims: Vec<usize>,
    maps: Vec<Matrix<F::Elem>>,
}

/// One subspace per vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubRep<E> {
    pub spaces: Vec<Subspace<E>>,
}

impl<E: Clone + PartialEq> SubRep<E> {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    pub fn is_full(&self) -> bool {
        self.spaces.iter().all(Subspace::is_full)
    }

    /// `f_a(U_{t(a)}) ⊂ U_{h(a)}` for every arrow.
    pub fn is_closed<F: Field<Elem = E>>(&self, rep: &QuiverRep<F>) -> bool {
        rep.quiver.arrows().iter().zip(&rep.maps).all(|(a, m)| {
            self.spaces[a.tail - 1]
                .image(&rep.field, m)
                .is_subspace_of(&rep.field, &self.spaces[a.head - 1])
        })
    }
}

impl<F: Field> QuiverRep<F> {
    pub fn new(quiver: Quiver, field: F, dims: Vec<usize>, maps: Vec<Matrix<F::Elem>>) -> Result<Self> {
        if dims.len() != quiver.n() {
            return Err(malformed(format!("{} dimensions for {} vertices", dims.len(), quiver.n())));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(malformed("one matrix per arrow is required"));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.head - 1] || m.cols() != dims[a.tail - 1] {
                return Err(malformed(format!(
                    "matrix for arrow {a} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[a.head - 1],
                    dims[a.tail - 1]
                )));
            }
        }
        Ok(Self { quiver, field, dims, maps })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix<F::Elem>] {
        &self.maps
    }

    /// The maps as a point of `Π Hom`, lifted to rationals.
    pub fn to_tuple_point(&self) -> Result<TuplePoint> {
        TuplePoint::from_field_maps(&self.field, self.quiver.clone(), self.dims.clone(), &self.maps)
    }

    pub fn zero_subrep(&self) -> SubRep<F::Elem> {
        SubRep { spaces: self.dims.iter().map(|&d| Subspace::zero(d)).collect() }
    }

    pub fn full_subrep(&self) -> SubRep<F::Elem> {
        SubRep { spaces: self.dims.iter().map(|&d| Subspace::full(&self.field, d)).collect() }
    }

    fn check_subrep(&self, sub: &SubRep<F::Elem>) -> Result<()> {
        if sub.spaces.len() != self.dims.len()
            || sub.spaces.iter().zip(&self.dims).any(|(s, &d)| s.ambient() != d)
        {
            return Err(malformed("subrepresentation does not match the dimensions"));
        }
        if !sub.is_closed(self) {
            return Err(precondition("subspaces are not closed under the arrow maps"));
        }
        Ok(())
    }

    /// The subrepresentation as a representation, in the echelon bases.
    pub fn restrict(&self, sub: &SubRep<F::Elem>) -> Result<Self> {
        self.check_subrep(sub)?;
        let f = &self.field;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let (s, t) = (&sub.spaces[a.tail - 1], &sub.spaces[a.head - 1]);
                let cols: Vec<Vec<F::Elem>> = s
                    .basis()
                    .iter()
                    .map(|u| t.coordinates(f, &apply(f, m, u)).expect("closed subrepresentation"))
                    .collect();
                Matrix::from_columns(t.dim(), &cols)
            })
            .collect();
        Self::new(self.quiver.clone(), f.clone(), sub.dims(), maps)
    }

    /// The quotient by a subrepresentation, in the bases of standard vectors
    /// complementing the echelon pivots.
    pub fn quotient(&self, sub: &SubRep<F::Elem>) -> Result<Self> {
        self.check_subrep(sub)?;
        let f = &self.field;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let (s, t) = (&sub.spaces[a.tail - 1], &sub.spaces[a.head - 1]);
                let cols: Vec<Vec<F::Elem>> = s
                    .complement_basis(f)
                    .iter()
                    .map(|e| t.quotient_coordinates(f, &apply(f, m, e)))
                    .collect();
                Matrix::from_columns(t.ambient() - t.dim(), &cols)
            })
            .collect();
        let dims = sub.spaces.iter().map(|s| s.ambient() - s.dim()).collect();
        Self::new(self.quiver.clone(), f.clone(), dims, maps)
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(parts: &[Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| malformed("empty direct sum"))?;
        let (q, f) = (&first.quiver, &first.field);
        if parts.iter().any(|r| &r.quiver != q || &r.field != f) {
            return Err(malformed("direct sum of representations of different quivers or fields"));
        }
        let dims: Vec<usize> = (0..q.n()).map(|v| parts.iter().map(|r| r.dims[v]).sum()).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let mut m = Matrix::zeros(f, dims[a.head - 1], dims[a.tail - 1]);
                let (mut r0, mut c0) = (0, 0);
                for part in parts {
                    let pm = &part.maps[k];
                    for r in 0..pm.rows() {
                        for c in 0..pm.cols() {
                            m.set(r0 + r, c0 + c, pm.get(r, c).clone());
                        }
                    }
                    r0 += pm.rows();
                    c0 += pm.cols();
                }
                m
            })
            .collect();
        Self::new(q.clone(), f.clone(), dims, maps)
    }

    /// `f'_a = g_{h(a)} f_a g_{t(a)}^{-1}`.
    pub fn apply_group(&self, g: &[Matrix<F::Elem>]) -> Result<Self> {
        if g.len() != self.dims.len() {
            return Err(malformed("one group element per vertex is required"));
        }
        let f = &self.field;
        let mut inv = Vec::with_capacity(g.len());
        for (v, (gi, &d)) in g.iter().zip(&self.dims).enumerate() {
            if gi.rows() != d || gi.cols() != d {
                return Err(malformed(format!("group element at vertex {} has the wrong shape", v + 1)));
            }
            inv.push(inverse(f, gi).ok_or_else(|| precondition(format!("group element at vertex {} is singular", v + 1)))?);
        }
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| mat_mul(f, &mat_mul(f, &g[a.head - 1], m), &inv[a.tail - 1]))
            .collect();
        Self::new(self.quiver.clone(), f.clone(), self.dims.clone(), maps)
    }
}

impl QuiverRep<Rationals> {
    pub fn from_tuple_point(point: &TuplePoint) -> Result<Self> {
        let maps = point.homs().iter().map(|h| h.matrix().clone()).collect();
        Self::new(point.quiver().clone(), Rationals, point.dims().to_vec(), maps)
    }
}

/// `apply_group` on a point of `Π Hom` over the rationals.
pub fn apply_group_point(point: &TuplePoint, g: &[Matrix<Rat>]) -> Result<TuplePoint> {
    let r = QuiverRep::from_tuple_point(point)?.apply_group(g)?;
    TuplePoint::new(r.quiver.clone(), r.dims.clone(), r.maps.into_iter().map(HomPoint::new).collect())
}

fn check_king_data(q: &Quiver, pbar: &[usize], b: &[Rat]) -> Result<()> {
    if pbar.len() != q.n() {
        return Err(malformed("one entry of P̄ per vertex is required"));
    }
    if b.len() != q.arrows().len() {
        return Err(malformed("one arrow coefficient per arrow is required"));
    }
    if let Some(v) = pbar.iter().position(|&p| p == 0) {
        return Err(parameter(format!("P̄ must be positive, vertex {} has 0", v + 1)));
    }
    if let Some(k) = b.iter().position(|x| !x.is_positive()) {
        return Err(parameter(format!("arrow coefficient for {} must be positive", q.arrows()[k])));
    }
    Ok(())
}

fn frac(n: &Rat, d: usize) -> Rat {
    n / Rat::from_integer((d as i64).into())
}

/// `θ = Σ_a b_a (dims_t / P̄_t - dims_h / P̄_h)`; linear in `dims`.
pub fn theta_king(q: &Quiver, pbar: &[usize], b: &[Rat], dims: &[Rat]) -> Result<Rat> {
    check_king_data(q, pbar, b)?;
    if dims.len() != q.n() {
        return Err(malformed("one dimension per vertex is required"));
    }
    Ok(q.arrows()
        .iter()
        .zip(b)
        .map(|(a, ba)| ba * (frac(&dims[a.tail - 1], pbar[a.tail - 1]) - frac(&dims[a.head - 1], pbar[a.head - 1])))
        .sum())
}

pub fn theta_king_usize(q: &Quiver, pbar: &[usize], b: &[Rat], dims: &[usize]) -> Result<Rat> {
    let d: Vec<Rat> = dims.iter().map(|&x| Rat::from_integer((x as i64).into())).collect();
    theta_king(q, pbar, b, &d)
}

/// Exponents `s_i` of the character `Π det^{s_i}` matching `θ`:
/// `θ(U) = Σ_i s_i dim U_i`.
pub fn character_exponents(q: &Quiver, pbar: &[usize], b: &[Rat]) -> Result<Vec<Rat>> {
    check_king_data(q, pbar, b)?;
    let mut s = vec![Rat::zero(); q.n()];
    for (a, ba) in q.arrows().iter().zip(b) {
        s[a.tail - 1] += frac(ba, pbar[a.tail - 1]);
        s[a.head - 1] -= frac(ba, pbar[a.head - 1]);
    }
    Ok(s)
}

/// Smallest subrepresentation containing the seed vectors.
pub fn generated_subrep<F: Field>(rep: &QuiverRep<F>, seeds: &[Vec<Vec<F::Elem>>]) -> Result<SubRep<F::Elem>> {
    if seeds.len() != rep.dims.len() {
        return Err(malformed("one seed list per vertex is required"));
    }
    for (v, (s, &d)) in seeds.iter().zip(&rep.dims).enumerate() {
        if s.iter().any(|x| x.len() != d) {
            return Err(malformed(format!("seed vector at vertex {} has the wrong length", v + 1)));
        }
    }
    let f = &rep.field;
    let mut spaces: Vec<Subspace<F::Elem>> =
        seeds.iter().zip(&rep.dims).map(|(s, &d)| Subspace::span(f, d, s)).collect();
    loop {
        let mut changed = false;
        for (a, m) in rep.quiver.arrows().iter().zip(&rep.maps) {
            let img = spaces[a.tail - 1].image(f, m);
            let grown = spaces[a.head - 1].sum(f, &img);
            if grown.dim() != spaces[a.head - 1].dim() {
                spaces[a.head - 1] = grown;
                changed = true;
            }
        }
        if !changed {
            return Ok(SubRep { spaces });
        }
    }
}

fn product_size(lists: &[usize]) -> u128 {
    lists.iter().fold(1u128, |acc, &k| acc.saturating_mul(k as u128))
}

/// Every tuple drawn from the per-vertex lists that is closed under the maps
/// (or every tuple at all when `closed_only` is false).
fn tuples<F: Field>(
    rep: &QuiverRep<F>,
    lists: &[Vec<Subspace<F::Elem>>],
    budget: u128,
    closed_only: bool,
) -> Result<Vec<SubRep<F::Elem>>> {
    let needed = product_size(&lists.iter().map(Vec::len).collect::<Vec<_>>());
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let n = rep.dims.len();
    let f = &rep.field;
    // Arrows to check once vertex v (0-based) is assigned: both ends <= v.
    let checks: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            rep.quiver
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.tail.max(a.head) == v + 1)
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    fn rec<F: Field>(
        rep: &QuiverRep<F>,
        f: &F,
        lists: &[Vec<Subspace<F::Elem>>],
        checks: &[Vec<usize>],
        closed_only: bool,
        chosen: &mut Vec<usize>,
        out: &mut Vec<SubRep<F::Elem>>,
    ) {
        let v = chosen.len();
        if v == lists.len() {
            out.push(SubRep { spaces: chosen.iter().enumerate().map(|(w, &k)| lists[w][k].clone()).collect() });
            return;
        }
        for k in 0..lists[v].len() {
            chosen.push(k);
            let ok = !closed_only
                || checks[v].iter().all(|&ai| {
                    let a = rep.quiver.arrows()[ai];
                    let s = &lists[a.tail - 1][chosen[a.tail - 1]];
                    let t = &lists[a.head - 1][chosen[a.head - 1]];
                    s.image(f, &rep.maps[ai]).is_subspace_of(f, t)
                });
            if ok {
                rec(rep, f, lists, checks, closed_only, chosen, out);
            }
            chosen.pop();
        }
    }
    rec(rep, f, lists, &checks, closed_only, &mut chosen, &mut out);
    Ok(out)
}

fn all_subspaces<F: Field>(rep: &QuiverRep<F>, budget: u128) -> Result<Vec<Vec<Subspace<F::Elem>>>> {
    rep.dims.iter().map(|&d| enumerate_subspaces(&rep.field, d, budget)).collect()
}

/// Every subrepresentation of a representation over a finite field, zero and
/// full included, each exactly once.
pub fn enumerate_subreps_ff<F: Field>(rep: &QuiverRep<F>, budget: u128) -> Result<Vec<SubRep<F::Elem>>> {
    let lists = all_subspaces(rep, budget)?;
    tuples(rep, &lists, budget, true)
}

/// Per-vertex families of kernels and images of the arrow maps, closed under
/// images, preimages, sums and intersections.
pub fn lattice_families<F: Field>(rep: &QuiverRep<F>, budget: u128) -> Result<Vec<Vec<Subspace<F::Elem>>>> {
    let f = &rep.field;
    let mut fam: Vec<BTreeSet<Subspace<F::Elem>>> = rep
        .dims
        .iter()
        .map(|&d| BTreeSet::from([Subspace::zero(d), Subspace::full(f, d)]))
        .collect();
    for (a, m) in rep.quiver.arrows().iter().zip(&rep.maps) {
        fam[a.tail - 1].insert(Subspace::kernel_of(f, m));
        fam[a.head - 1].insert(Subspace::image_of(f, m));
    }
    loop {
        let before: usize = fam.iter().map(BTreeSet::len).sum();
        for (a, m) in rep.quiver.arrows().iter().zip(&rep.maps) {
            let imgs: Vec<_> = fam[a.tail - 1].iter().map(|s| s.image(f, m)).collect();
            fam[a.head - 1].extend(imgs);
            let pre: Vec<_> = fam[a.head - 1].iter().map(|s| s.preimage(f, m)).collect();
            fam[a.tail - 1].extend(pre);
        }
        for set in fam.iter_mut() {
            let items: Vec<_> = set.iter().cloned().collect();
            for (x, s) in items.iter().enumerate() {
                for t in &items[x + 1..] {
                    set.insert(s.sum(f, t));
                    set.insert(s.intersection(f, t));
                }
            }
        }
        let after: usize = fam.iter().map(BTreeSet::len).sum();
        if after as u128 > budget {
            return Err(Error::Budget { needed: after as u128, budget });
        }
        if after == before {
            break;
        }
    }
    Ok(fam.into_iter().map(|s| s.into_iter().collect()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// All subspaces of a finite field model; sound and complete.
    ExhaustiveFf,
    /// Candidates from the kernel/image lattice; instability is certified,
    /// stability only relative to the lattice.
    Lattice,
    /// Subrepresentations generated by random vectors; certifies instability only.
    Randomized { seed: u64, samples: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Stable,
    StrictlySemistable,
    Unstable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    Exhaustive,
    LatticeOnly,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<E> {
    pub status: Status,
    /// A subrepresentation attaining the maximal `θ`, for non-stable verdicts.
    pub witness: Option<SubRep<E>>,
    /// `θ` of the witness.
    pub theta: Option<Rat>,
    pub completeness: Completeness,
    /// Number of nontrivial proper candidates examined.
    pub candidates: usize,
}

fn verdict_from_max<E>(best: Option<(Rat, SubRep<E>)>, completeness: Completeness, candidates: usize) -> Verdict<E> {
    match best {
        Some((t, w)) if !t.is_negative() => Verdict {
            status: if t.is_zero() { Status::StrictlySemistable } else { Status::Unstable },
            witness: Some(w),
            theta: Some(t),
            completeness,
            candidates,
        },
        _ => Verdict { status: Status::Stable, witness: None, theta: None, completeness, candidates },
    }
}

/// Semistability of `rep` for `θ(P̄, b)`, with `P̄` given explicitly.
pub fn check_semistable_with<F: Field>(
    rep: &QuiverRep<F>,
    pbar: &[usize],
    b: &[Rat],
    mode: Mode,
    budget: u128,
) -> Result<Verdict<F::Elem>> {
    check_king_data(&rep.quiver, pbar, b)?;
    let (candidates, completeness) = match mode {
        Mode::ExhaustiveFf => {
            if rep.field.elements().is_none() {
                return Err(precondition("exhaustive mode requires a finite field"));
            }
            (enumerate_subreps_ff(rep, budget)?, Completeness::Exhaustive)
        }
        Mode::Lattice => (tuples(rep, &lattice_families(rep, budget)?, budget, true)?, Completeness::LatticeOnly),
        Mode::Randomized { seed, samples } => (random_subreps(rep, seed, samples)?, Completeness::Sampled),
    };
    let mut best: Option<(Rat, SubRep<F::Elem>)> = None;
    let mut count = 0;
    for sub in candidates {
        if sub.is_zero() || sub.is_full() {
            continue;
        }
        count += 1;
        let t = theta_king_usize(&rep.quiver, pbar, b, &sub.dims())?;
        if best.as_ref().is_none_or(|(bt, _)| t > *bt) {
            best = Some((t, sub));
        }
    }
    Ok(verdict_from_max(best, completeness, count))
}

/// Semistability of `rep` for `θ(P̄ = dims, b)`.
pub fn check_semistable<F: Field>(rep: &QuiverRep<F>, b: &[Rat], mode: Mode, budget: u128) -> Result<Verdict<F::Elem>> {
    check_semistable_with(rep, &rep.dims.clone(), b, mode, budget)
}

fn random_subreps<F: Field>(rep: &QuiverRep<F>, seed: u64, samples: usize) -> Result<Vec<SubRep<F::Elem>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = &rep.field;
    let mut out = BTreeSet::new();
    let n = rep.dims.len();
    for _ in 0..samples {
        let mut seeds: Vec<Vec<Vec<F::Elem>>> = vec![Vec::new(); n];
        let v = rng.gen_range(0..n);
        if rep.dims[v] == 0 {
            continue;
        }
        seeds[v].push((0..rep.dims[v]).map(|_| f.from_int(rng.gen_range(-3..=3))).collect());
        out.insert(generated_subrep(rep, &seeds)?);
    }
    Ok(out.into_iter().collect())
}

fn ensure_finite<F: Field>(rep: &QuiverRep<F>) -> Result<()> {
    if rep.field.elements().is_none() {
        Err(precondition("this operation needs a finite field"))
    } else {
        Ok(())
    }
}

/// Graded object of a Jordan-Hölder filtration: repeatedly split off a
/// maximal proper subrepresentation with `θ = 0` (largest total dimension,
/// then lexicographically largest dimension vector). Factors are returned
/// bottom-up and each is checked stable for the original `θ`.
pub fn gr_jordan_holder<F: Field>(rep: &QuiverRep<F>, b: &[Rat], budget: u128) -> Result<Vec<QuiverRep<F>>> {
    ensure_finite(rep)?;
    let pbar = rep.dims.clone();
    let v = check_semistable_with(rep, &pbar, b, Mode::ExhaustiveFf, budget)?;
    if v.status == Status::Unstable {
        return Err(precondition("representation is unstable"));
    }
    let mut factors = Vec::new();
    let mut current = rep.clone();
    loop {
        let subs = enumerate_subreps_ff(&current, budget)?;
        let mut best: Option<SubRep<F::Elem>> = None;
        for s in subs {
            if s.is_zero() || s.is_full() || !theta_king_usize(&current.quiver, &pbar, b, &s.dims())?.is_zero() {
                continue;
            }
            let key = |s: &SubRep<F::Elem>| (s.dims().iter().sum::<usize>(), s.dims());
            if best.as_ref().is_none_or(|bs| key(&s) > key(bs)) {
                best = Some(s);
            }
        }
        match best {
            None => {
                factors.push(current);
                break;
            }
            Some(s) => {
                factors.push(current.quotient(&s)?);
                current = current.restrict(&s)?;
            }
        }
    }
    factors.reverse();
    for fct in &factors {
        let v = check_semistable_with(fct, &pbar, b, Mode::ExhaustiveFf, budget)?;
        if v.status != Status::Stable || !theta_king_usize(&fct.quiver, &pbar, b, &fct.dims)?.is_zero() {
            return Err(precondition("a graded piece failed the stability check"));
        }
    }
    Ok(factors)
}

/// Whether an invertible intertwiner `ψ` with `φ'_a = ψ_h φ_a ψ_t^{-1}`
/// exists. Over a finite field the solution space of the linear intertwiner
/// equations is enumerated; over the rationals the determinant of a random
/// element of the solution space is tested at seeded sample points (a zero
/// polynomial of degree `D = Σ dims` vanishes on all of them, a nonzero one
/// survives a sample with probability at least `1/2`).
pub fn are_equivalent<F: Field>(r1: &QuiverRep<F>, r2: &QuiverRep<F>, budget: u128) -> Result<bool> {
    if r1.quiver != r2.quiver || r1.field != r2.field {
        return Err(malformed("representations of different quivers or fields"));
    }
    if r1.dims != r2.dims {
        return Ok(false);
    }
    let f = &r1.field;
    let dims = &r1.dims;
    let offsets: Vec<usize> = dims.iter().scan(0, |acc, &d| {
        let o = *acc;
        *acc += d * d;
        Some(o)
    }).collect();
    let unknowns: usize = dims.iter().map(|d| d * d).sum();
    if unknowns == 0 {
        return Ok(true);
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * dims[v] + c;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (k, a) in r1.quiver.arrows().iter().enumerate() {
        let (t, h) = (a.tail - 1, a.head - 1);
        let (phi, phi2) = (&r1.maps[k], &r2.maps[k]);
        for r in 0..dims[h] {
            for c in 0..dims[t] {
                let mut row = vec![f.zero(); unknowns];
                for kk in 0..dims[t] {
                    let x = var(t, kk, c);
                    row[x] = f.add(&row[x], phi2.get(r, kk));
                }
                for kk in 0..dims[h] {
                    let x = var(h, r, kk);
                    row[x] = f.sub(&row[x], phi.get(kk, c));
                }
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        Matrix::identity(f, unknowns).row_vecs()
    } else {
        kernel(f, &Matrix::from_rows(rows.len(), unknowns, rows)?)
    };
    if basis.is_empty() {
        return Ok(false);
    }
    let invertible = |coeffs: &[F::Elem]| -> bool {
        let x: Vec<F::Elem> = (0..unknowns)
            .map(|u| coeffs.iter().zip(&basis).fold(f.zero(), |acc, (c, bv)| f.add(&acc, &f.mul(c, &bv[u]))))
            .collect();
        dims.iter().enumerate().all(|(v, &d)| {
            let m = Matrix::from_fn(d, d, |r, c| x[var(v, r, c)].clone());
            !f.is_zero(&det(f, &m))
        })
    };
    if let Some(elems) = f.elements() {
        let needed = (elems.len() as u128).saturating_pow(basis.len() as u32);
        if needed > budget {
            return Err(Error::Budget { needed, budget });
        }
        let mut digits = vec![0usize; basis.len()];
        loop {
            let coeffs: Vec<F::Elem> = digits.iter().map(|&d| elems[d].clone()).collect();
            if invertible(&coeffs) {
                return Ok(true);
            }
            if !increment(&mut digits, elems.len()) {
                return Ok(false);
            }
        }
    }
    let degree: i64 = dims.iter().sum::<usize>() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..32 {
        let coeffs: Vec<F::Elem> = basis.iter().map(|_| f.from_int(rng.gen_range(-degree..=degree))).collect();
        if invertible(&coeffs) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlagSource {
    /// Flags adapted to the kernel/image lattice.
    LatticeAdapted,
    /// Flags adapted to every subspace tuple of a finite field model.
    ExhaustiveFf,
}

/// Hilbert-Mumford test on flag subgroups. Each subspace tuple `U` gives a
/// basis adapted to `U` and the flag `j = dim U`; on flags compatible with
/// the transformed maps the weight is `Σ_a b_a (j_h/p_h - j_t/p_t)`, and the
/// point is semistable iff no such weight is negative. The witness is the
/// subspace tuple of a minimal weight; `theta` reports minus that weight.
pub fn git_check<F: Field>(
    rep: &QuiverRep<F>,
    b: &[Rat],
    source: FlagSource,
    budget: u128,
) -> Result<Verdict<F::Elem>> {
    let pbar = rep.dims.clone();
    check_king_data(&rep.quiver, &pbar, b)?;
    let f = &rep.field;
    let (lists, completeness) = match source {
        FlagSource::ExhaustiveFf => {
            ensure_finite(rep)?;
            (all_subspaces(rep, budget)?, Completeness::Exhaustive)
        }
        FlagSource::LatticeAdapted => (lattice_families(rep, budget)?, Completeness::LatticeOnly),
    };
    let mut best: Option<(Rat, SubRep<F::Elem>)> = None;
    let mut count = 0;
    for u in tuples(rep, &lists, budget, false)? {
        if u.is_zero() || u.is_full() {
            continue;
        }
        let adapted: Vec<Matrix<F::Elem>> = u
            .spaces
            .iter()
            .map(|s| {
                let mut cols = s.basis().to_vec();
                cols.extend(s.complement_basis(f));
                Matrix::from_columns(s.ambient(), &cols)
            })
            .collect();
        let g: Vec<Matrix<F::Elem>> = adapted.iter().map(|m| inverse(f, m).expect("adapted basis")).collect();
        let moved = rep.apply_group(&g)?;
        let point = moved.to_tuple_point()?;
        let j = MultiIndex(u.dims());
        if !j.is_compatible(&point) {
            continue;
        }
        count += 1;
        let w = flag_closed_form(&rep.quiver, &pbar, &j, b);
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, u));
        }
    }
    Ok(verdict_from_max(best.map(|(w, u)| (-w, u)), completeness, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, rat};
    use crate::linalg::PrimeField;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn arrow_rep(d: (usize, usize), entries: Vec<Vec<u64>>) -> QuiverRep<PrimeField> {
        let q = Quiver::tree(2, &[(1, 2)]).unwrap();
        let m = Matrix::from_rows(d.1, d.0, entries).unwrap();
        QuiverRep::new(q, f2(), vec![d.0, d.1], vec![m]).unwrap()
    }

    const BIG: u128 = 1 << 20;

    #[test]
    fn theta_examples() {
        let q = Quiver::tree(2, &[(1, 2)]).unwrap();
        assert_eq!(theta_king_usize(&q, &[1, 1], &[int(1)], &[0, 1]).unwrap(), int(-1));
        assert_eq!(theta_king_usize(&q, &[2, 3], &[int(1)], &[2, 3]).unwrap(), int(0));
        assert_eq!(theta_king_usize(&q, &[2, 3], &[int(1)], &[0, 0]).unwrap(), int(0));
        assert!(theta_king_usize(&q, &[0, 3], &[int(1)], &[0, 0]).is_err());
    }

    #[test]
    fn character_examples() {
        let q = Quiver::tree(2, &[(1, 2)]).unwrap();
        assert_eq!(character_exponents(&q, &[2, 3], &[int(1)]).unwrap(), vec![rat(1, 2), rat(-1, 3)]);
        let p = Quiver::tree(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(character_exponents(&p, &[1, 1, 1], &[int(1), int(1)]).unwrap(), vec![int(1), int(0), int(-1)]);
    }

    #[test]
    fn generated_examples() {
        let q = Quiver::tree(3, &[(1, 2), (2, 3)]).unwrap();
        let id = Matrix::identity(&Rationals, 1);
        let rep = QuiverRep::new(q, Rationals, vec![1, 1, 1], vec![id.clone(), id]).unwrap();
        let s = generated_subrep(&rep, &[vec![vec![int(1)]], vec![], vec![]]).unwrap();
        assert_eq!(s.dims(), vec![1, 1, 1]);
        let s = generated_subrep(&rep, &[vec![], vec![], vec![vec![int(1)]]]).unwrap();
        assert_eq!(s.dims(), vec![0, 0, 1]);
        let s = generated_subrep(&rep, &[vec![], vec![], vec![]]).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_subreps_ff(&arrow_rep((1, 1), vec![vec![1]]), BIG).unwrap().len(), 3);
        assert_eq!(enumerate_subreps_ff(&arrow_rep((1, 1), vec![vec![0]]), BIG).unwrap().len(), 4);
        assert_eq!(enumerate_subreps_ff(&arrow_rep((1, 0), vec![]), BIG).unwrap().len(), 2);
    }

    #[test]
    fn semistability_examples() {
        let b = [int(1)];
        let v = check_semistable(&arrow_rep((1, 1), vec![vec![1]]), &b, Mode::ExhaustiveFf, BIG).unwrap();
        assert_eq!(v.status, Status::Stable);
        assert_eq!(v.completeness, Completeness::Exhaustive);
        let v = check_semistable(&arrow_rep((1, 1), vec![vec![0]]), &b, Mode::ExhaustiveFf, BIG).unwrap();
        assert_eq!(v.status, Status::Unstable);
        assert_eq!(v.witness.unwrap().dims(), vec![1, 0]);
        assert_eq!(v.theta, Some(int(1)));
        let id = arrow_rep((2, 2), vec![vec![1, 0], vec![0, 1]]);
        let v = check_semistable(&id, &b, Mode::ExhaustiveFf, BIG).unwrap();
        assert_eq!(v.status, Status::StrictlySemistable);
        assert_eq!(v.witness.unwrap().dims(), vec![1, 1]);
        assert!(check_semistable(&id, &b, Mode::ExhaustiveFf, 3).is_err());
    }

    #[test]
    fn gr_examples() {
        let b = [int(1)];
        let id = arrow_rep((2, 2), vec![vec![1, 0], vec![0, 1]]);
        let factors = gr_jordan_holder(&id, &b, BIG).unwrap();
        assert_eq!(factors.len(), 2);
        let simple = arrow_rep((1, 1), vec![vec![1]]);
        for fct in &factors {
            assert!(are_equivalent(fct, &simple, BIG).unwrap());
        }
        assert_eq!(gr_jordan_holder(&simple, &b, BIG).unwrap(), vec![simple.clone()]);
        assert!(gr_jordan_holder(&arrow_rep((1, 1), vec![vec![0]]), &b, BIG).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let q = Quiver::tree(2, &[(1, 2)]).unwrap();
        let one = |x: i64| {
            QuiverRep::new(q.clone(), Rationals, vec![1, 1], vec![Matrix::from_rows(1, 1, vec![vec![int(x)]]).unwrap()])
                .unwrap()
        };
        assert!(are_equivalent(&one(1), &one(2), BIG).unwrap());
        assert!(!are_equivalent(&one(1), &one(0), BIG).unwrap());
        assert!(are_equivalent(&one(3), &one(3), BIG).unwrap());
        let other = QuiverRep::new(q.clone(), Rationals, vec![1, 2], vec![Matrix::zeros(&Rationals, 2, 1)]).unwrap();
        assert!(!are_equivalent(&one(1), &other, BIG).unwrap());
    }

    #[test]
    fn group_examples() {
        let q = Quiver::tree(3, &[(1, 2), (2, 3)]).unwrap();
        let a = Matrix::from_rows(1, 1, vec![vec![int(5)]]).unwrap();
        let c = Matrix::from_rows(1, 1, vec![vec![int(7)]]).unwrap();
        let rep = QuiverRep::new(q, Rationals, vec![1, 1, 1], vec![a.clone(), c.clone()]).unwrap();
        let z = rat(3, 2);
        let g: Vec<_> = [int(1), z.clone(), z.clone()]
            .iter()
            .map(|x| Matrix::from_rows(1, 1, vec![vec![x.clone()]]).unwrap())
            .collect();
        let moved = rep.apply_group(&g).unwrap();
        assert_eq!(moved.maps()[0].get(0, 0), &(int(5) * &z));
        assert_eq!(moved.maps()[1], c);

        let one = QuiverRep::new(
            Quiver::tree(2, &[(1, 2)]).unwrap(),
            Rationals,
            vec![1, 1],
            vec![Matrix::from_rows(1, 1, vec![vec![int(1)]]).unwrap()],
        )
        .unwrap();
        let g = [Matrix::from_rows(1, 1, vec![vec![int(2)]]).unwrap(), Matrix::from_rows(1, 1, vec![vec![int(3)]]).unwrap()];
        assert_eq!(one.apply_group(&g).unwrap().maps()[0].get(0, 0), &rat(3, 2));
        let singular = [Matrix::from_rows(1, 1, vec![vec![int(0)]]).unwrap(), g[1].clone()];
        assert!(one.apply_group(&singular).is_err());
    }

    #[test]
    fn git_examples() {
        let b = [int(1)];
        let v = git_check(&arrow_rep((1, 1), vec![vec![1]]), &b, FlagSource::ExhaustiveFf, BIG).unwrap();
        assert_eq!(v.status, Status::Stable);
        assert_eq!(v.candidates, 1);
        let v = git_check(&arrow_rep((1, 1), vec![vec![0]]), &b, FlagSource::ExhaustiveFf, BIG).unwrap();
        assert_eq!(v.status, Status::Unstable);
        assert_eq!(v.witness.unwrap().dims(), vec![1, 0]);
    }

    #[test]
    fn lattice_mode_over_rationals() {
        let q = Quiver::tree(2, &[(1, 2)]).unwrap();
        let m = Matrix::from_rows(2, 2, vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        let rep = QuiverRep::new(q, Rationals, vec![2, 2], vec![m]).unwrap();
        let v = check_semistable(&rep, &[int(1)], Mode::Lattice, BIG).unwrap();
        assert_eq!(v.status, Status::Unstable);
        assert_eq!(v.completeness, Completeness::LatticeOnly);
        let g = git_check(&rep, &[int(1)], FlagSource::LatticeAdapted, BIG).unwrap();
        assert_eq!(g.status, Status::Unstable);
        let r = check_semistable(&rep, &[int(1)], Mode::Randomized { seed: 7, samples: 20 }, BIG).unwrap();
        assert_eq!(r.completeness, Completeness::Sampled);
    }
}
