//! Decomposition of weights into basic pieces.
//!
//! For a single arrow `f: V -> W` with weights `(δ, γ)`, [`decompose_pair`]
//! writes `(δ, γ)` as a nonnegative combination of three kinds of pieces:
//!
//! - pure `α_i`: `(δ^{(i)}, 0)`
//! - pure `β_j`: `(0, γ^{(j)})`
//! - paired `η_{i,j}`: `((1/p) δ^{(i)}, (1/q) γ^{(j)})`
//!
//! such that `μ` is additive along the decomposition and one eigencoordinate,
//! the witness, attains `μ` on every piece. [`couple_tree`] then glues
//! per-arrow decompositions into one over a whole tree.
//!
//! Internally every piece is written in step units: a pair `(i, j)` with
//! coefficient `η` stands for `η ((1/p) δ^{(i)}, (1/q) γ^{(j)})`. A pure piece
//! becomes a pair whose other endpoint is trivial (`0` or the full
//! dimension), chosen so that the pair stays compatible with `f`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{malformed, precondition, Error, Result};
use crate::exactpoly::Rat;
use crate::quiver::Quiver;
use crate::weights::{
    mu_hom, normalized_step, step_decompose, step_vector, HomPoint, MultiIndex, TuplePoint, WeightVector,
};

fn r(n: usize) -> Rat {
    Rat::from_integer((n as i64).into())
}

/// Marker indices of a nonzero homomorphism (all 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Markers {
    /// Smallest `i` with `f(V^{(i)}) ⊄ W^{(j0 - 1)}`.
    pub i0: usize,
    /// Smallest `j` with `Im f ⊂ W^{(j)}`.
    pub j0: usize,
    /// Smallest `i` with `V^{(i)} ⊄ ker f`.
    pub i0_prime: usize,
    /// Smallest `j` with `f(V^{(i0')}) ⊂ W^{(j)}`. Informational only.
    pub j0_prime: usize,
}

pub fn markers(f: &HomPoint) -> Result<Markers> {
    let support: Vec<(usize, usize)> = f.support().collect();
    if support.is_empty() {
        return Err(Error::Degenerate("markers of the zero homomorphism".into()));
    }
    let j0 = support.iter().map(|&(_, j)| j).max().unwrap_or(0);
    let i0_prime = support.iter().map(|&(i, _)| i).min().unwrap_or(0);
    let i0 = support.iter().filter(|&&(_, j)| j == j0).map(|&(i, _)| i).min().unwrap_or(0);
    let j0_prime = support.iter().filter(|&&(i, _)| i == i0_prime).map(|&(_, j)| j).max().unwrap_or(0);
    Ok(Markers { i0, j0, i0_prime, j0_prime })
}

/// The ladder of weight levels: rung `ι` pairs a `δ`-level with a
/// `γ`-level, both strictly increasing in `ι`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ladder {
    pub rungs: Vec<(Rat, Rat)>,
    /// Index of the rung maximizing `γ - δ` (topmost on ties).
    pub star: usize,
}

impl Ladder {
    pub fn star_value(&self) -> Rat {
        let (d, g) = &self.rungs[self.star];
        g - d
    }
}

fn levels(w: &WeightVector) -> Vec<Rat> {
    let mut v = w.entries().to_vec();
    v.dedup();
    v
}

fn level_of(levels: &[Rat], x: &Rat) -> usize {
    levels.iter().position(|l| l == x).expect("value is one of the levels")
}

pub fn ladder(f: &HomPoint, delta: &WeightVector, gamma: &WeightVector) -> Result<Ladder> {
    if f.is_zero() {
        return Err(Error::Degenerate("ladder of the zero homomorphism".into()));
    }
    if delta.dim() != f.source_dim() || gamma.dim() != f.target_dim() {
        return Err(malformed("weight vector dimensions do not match the homomorphism"));
    }
    let (dl, gl) = (levels(delta), levels(gamma));
    let g: BTreeSet<(usize, usize)> = f
        .support()
        .map(|(i, j)| (level_of(&dl, delta.at(i)), level_of(&gl, gamma.at(j))))
        .collect();
    let mut rungs = Vec::new();
    let mut k = g.iter().map(|&(_, s)| s).max().unwrap_or(0);
    loop {
        let h = g.iter().filter(|&&(_, s)| s == k).map(|&(e, _)| e).min().unwrap_or(0);
        rungs.push((dl[h].clone(), gl[k].clone()));
        match g.iter().filter(|&&(e, _)| e < h).map(|&(_, s)| s).max() {
            Some(next) => k = next,
            None => break,
        }
    }
    rungs.reverse();
    let mut star = 0;
    for (idx, (d, g)) in rungs.iter().enumerate() {
        let (bd, bg) = &rungs[star];
        if g - d >= bg - bd {
            star = idx;
        }
    }
    Ok(Ladder { rungs, star })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FillOrder {
    Ascending,
    Descending,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Triv1Split {
    pub pure_alpha: BTreeMap<usize, Rat>,
    pub pure_beta: BTreeMap<usize, Rat>,
    pub paired: BTreeMap<(usize, usize), Rat>,
}

fn check_coeffs(map: &BTreeMap<usize, Rat>, dim: usize, name: &str) -> Result<()> {
    for (&k, c) in map {
        if k == 0 || k >= dim.max(1) {
            return Err(malformed(format!("{name} index {k} outside 1..{dim}")));
        }
        if c.is_negative() {
            return Err(malformed(format!("{name} coefficient at {k} is negative")));
        }
    }
    Ok(())
}

/// Splits `Σ α_i (δ^{(i)}, 0) + Σ β_j (0, γ^{(j)})` into paired pieces by
/// water-filling the masses `p α_i` against `q β_j` in the given index
/// order. The heavier side keeps its leftover as pure pieces; the lighter
/// side is consumed completely. `compat` is checked on every pair formed.
pub fn triv1_split(
    alpha: &BTreeMap<usize, Rat>,
    p: usize,
    beta: &BTreeMap<usize, Rat>,
    q: usize,
    order: FillOrder,
    compat: impl Fn(usize, usize) -> bool,
) -> Result<Triv1Split> {
    check_coeffs(alpha, p, "alpha")?;
    check_coeffs(beta, q, "beta")?;
    let ordered = |m: &BTreeMap<usize, Rat>, scale: usize| -> Vec<(usize, Rat)> {
        let mut v: Vec<(usize, Rat)> =
            m.iter().filter(|(_, c)| !c.is_zero()).map(|(&k, c)| (k, c * r(scale))).collect();
        if order == FillOrder::Descending {
            v.reverse();
        }
        v
    };
    let mut a = ordered(alpha, p);
    let mut b = ordered(beta, q);
    let mut out = Triv1Split::default();
    let (mut ia, mut ib) = (0, 0);
    while ia < a.len() && ib < b.len() {
        let (i, j) = (a[ia].0, b[ib].0);
        let m = a[ia].1.clone().min(b[ib].1.clone());
        if !compat(i, j) {
            return Err(precondition(format!("pair ({i}, {j}) is not compatible")));
        }
        *out.paired.entry((i, j)).or_insert_with(Rat::zero) += &m;
        a[ia].1 -= &m;
        b[ib].1 -= &m;
        if a[ia].1.is_zero() {
            ia += 1;
        }
        if b[ib].1.is_zero() {
            ib += 1;
        }
    }
    for (i, mass) in a.into_iter().skip(ia).filter(|(_, m)| !m.is_zero()) {
        out.pure_alpha.insert(i, mass / r(p));
    }
    for (j, mass) in b.into_iter().skip(ib).filter(|(_, m)| !m.is_zero()) {
        out.pure_beta.insert(j, mass / r(q));
    }
    Ok(out)
}

/// One weighted piece of a pair decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub coeff: Rat,
    pub delta: WeightVector,
    pub gamma: WeightVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDecomposition {
    pub p: usize,
    pub q: usize,
    pub pure_alpha: BTreeMap<usize, Rat>,
    pub pure_beta: BTreeMap<usize, Rat>,
    pub paired: BTreeMap<(usize, usize), Rat>,
    /// Eigencoordinate `(i*, j*)` attaining `μ` on every piece.
    pub witness: (usize, usize),
    pub markers: Markers,
}

/// Step-unit pairs along one arrow: `(i, j) ↦ η` stands for
/// `η ((1/p) δ^{(i)}, (1/q) γ^{(j)})`; `i ∈ 0..=p`, `j ∈ 0..=q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepPairs {
    pub p: usize,
    pub q: usize,
    pub eta: BTreeMap<(usize, usize), Rat>,
}

impl PairDecomposition {
    pub fn is_empty(&self) -> bool {
        self.pure_alpha.is_empty() && self.pure_beta.is_empty() && self.paired.is_empty()
    }

    /// Nonzero pieces in a fixed order: pure alpha, pure beta, paired.
    pub fn pieces(&self) -> Result<Vec<Piece>> {
        let mut out = Vec::new();
        for (&i, c) in &self.pure_alpha {
            out.push(Piece { coeff: c.clone(), delta: step_vector(self.p, i)?, gamma: WeightVector::zero(self.q) });
        }
        for (&j, c) in &self.pure_beta {
            out.push(Piece { coeff: c.clone(), delta: WeightVector::zero(self.p), gamma: step_vector(self.q, j)? });
        }
        for (&(i, j), c) in &self.paired {
            out.push(Piece { coeff: c.clone(), delta: normalized_step(self.p, i)?, gamma: normalized_step(self.q, j)? });
        }
        Ok(out)
    }

    /// `Σ coeff · (δ-piece, γ-piece)`.
    pub fn reconstruct(&self) -> Result<(Vec<Rat>, Vec<Rat>)> {
        let mut d = vec![Rat::zero(); self.p];
        let mut g = vec![Rat::zero(); self.q];
        for piece in self.pieces()? {
            for (x, y) in d.iter_mut().zip(piece.delta.entries()) {
                *x += &piece.coeff * y;
            }
            for (x, y) in g.iter_mut().zip(piece.gamma.entries()) {
                *x += &piece.coeff * y;
            }
        }
        Ok((d, g))
    }

    pub fn reconstructs(&self, delta: &WeightVector, gamma: &WeightVector) -> bool {
        self.reconstruct()
            .map(|(d, g)| d == delta.entries() && g == gamma.entries())
            .unwrap_or(false)
    }

    /// Step-unit encoding; pure pieces get the trivial endpoint that keeps
    /// the pair compatible with `f`.
    pub fn step_pairs(&self) -> StepPairs {
        let j_star = self.witness.1;
        let mut eta = BTreeMap::new();
        let mut put = |k: (usize, usize), c: Rat| {
            *eta.entry(k).or_insert_with(Rat::zero) += c;
        };
        for (&i, c) in &self.pure_alpha {
            let j = if i < self.markers.i0_prime { 0 } else { self.q };
            put((i, j), c * r(self.p));
        }
        for (&j, c) in &self.pure_beta {
            let i = if j < j_star { 0 } else { self.p };
            put((i, j), c * r(self.q));
        }
        for (&k, c) in &self.paired {
            put(k, c.clone());
        }
        StepPairs { p: self.p, q: self.q, eta }
    }
}

fn restrict(map: &BTreeMap<usize, Rat>, lo: usize, hi: usize) -> BTreeMap<usize, Rat> {
    map.iter()
        .filter(|(&k, c)| k >= lo && k <= hi && !c.is_zero())
        .map(|(&k, c)| (k, c.clone()))
        .collect()
}

/// Decomposes `(δ, γ)` relative to `f` into pure and paired pieces.
pub fn decompose_pair(f: &HomPoint, delta: &WeightVector, gamma: &WeightVector) -> Result<PairDecomposition> {
    let lad = ladder(f, delta, gamma)?;
    let mk = markers(f)?;
    let (p, q) = (f.source_dim(), f.target_dim());
    let (d_star, g_star) = &lad.rungs[lad.star];
    let witness = f
        .support()
        .find(|&(i, j)| delta.at(i) == d_star && gamma.at(j) == g_star)
        .ok_or_else(|| precondition("ladder star has no support entry"))?;
    let (i_star, j_star) = witness;

    let alpha: BTreeMap<usize, Rat> = step_decompose(delta).into_iter().enumerate().map(|(k, c)| (k + 1, c)).collect();
    let beta: BTreeMap<usize, Rat> = step_decompose(gamma).into_iter().enumerate().map(|(k, c)| (k + 1, c)).collect();
    let compat = |i: usize, j: usize| f.maps_flag(i, j);

    let upper = triv1_split(
        &restrict(&alpha, i_star, p.saturating_sub(1)),
        p,
        &restrict(&beta, j_star, mk.j0.saturating_sub(1)),
        q,
        FillOrder::Ascending,
        compat,
    )?;
    let lower = triv1_split(
        &restrict(&alpha, mk.i0_prime, i_star.saturating_sub(1)),
        p,
        &restrict(&beta, 1, j_star.saturating_sub(1)),
        q,
        FillOrder::Descending,
        compat,
    )?;
    if !upper.pure_beta.is_empty() || !lower.pure_alpha.is_empty() {
        return Err(precondition("unbalanced block in the weight decomposition"));
    }

    let mut pure_alpha = restrict(&alpha, 1, mk.i0_prime.saturating_sub(1));
    pure_alpha.extend(upper.pure_alpha);
    let mut pure_beta = restrict(&beta, mk.j0, q);
    pure_beta.extend(lower.pure_beta);
    let mut paired = upper.paired;
    paired.extend(lower.paired);
    Ok(PairDecomposition { p, q, pure_alpha, pure_beta, paired, witness, markers: mk })
}

/// Basicness of the flag weight `γ^{j}` at a point: the nontrivial vertices
/// span a connected subquiver, every arrow maps the flags compatibly, and no
/// arrow has both `V^{(j_t)} ⊂ ker f_a` and `Im f_a ⊂ V^{(j_h)}`.
pub fn is_basic(j: &MultiIndex, point: &TuplePoint) -> Result<bool> {
    j.validate(point.dims())?;
    let support = j.nontrivial_vertices(point.dims());
    if support.is_empty() || point.quiver().components(&support).len() != 1 {
        return Ok(false);
    }
    if !j.is_compatible(point) {
        return Ok(false);
    }
    Ok(point.quiver().arrows().iter().zip(point.homs()).all(|(a, f)| {
        let (jt, jh) = (j.0[a.tail - 1], j.0[a.head - 1]);
        !(f.kills_prefix(jt) && f.image_in_prefix(jh))
    }))
}

/// Joint coefficients `η_{j}` over multi-indices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    pub dims: Vec<usize>,
    pub coeffs: BTreeMap<MultiIndex, Rat>,
}

fn is_trivial(x: usize, p: usize) -> bool {
    x == 0 || x == p
}

impl TreeDecomposition {
    /// Pairwise marginal along arrow `k`, ignoring pairs trivial at both ends.
    pub fn arrow_marginal(&self, quiver: &Quiver, k: usize) -> BTreeMap<(usize, usize), Rat> {
        let a = quiver.arrows()[k];
        let (pt, ph) = (self.dims[a.tail - 1], self.dims[a.head - 1]);
        let mut out = BTreeMap::new();
        for (j, c) in &self.coeffs {
            let (x, y) = (j.0[a.tail - 1], j.0[a.head - 1]);
            if is_trivial(x, pt) && is_trivial(y, ph) {
                continue;
            }
            *out.entry((x, y)).or_insert_with(Rat::zero) += c;
        }
        out
    }

    /// `Σ η_j (1/p_i) γ^{(j_i)}` at every vertex.
    pub fn reconstruct(&self) -> Result<Vec<Vec<Rat>>> {
        let mut out: Vec<Vec<Rat>> = self.dims.iter().map(|&p| vec![Rat::zero(); p]).collect();
        for (j, c) in &self.coeffs {
            for (v, w) in j.weights(&self.dims)?.iter().enumerate() {
                for (x, y) in out[v].iter_mut().zip(w.entries()) {
                    *x += c * y;
                }
            }
        }
        Ok(out)
    }

    fn insert(&mut self, j: MultiIndex, c: Rat) {
        if c.is_zero() {
            return;
        }
        *self.coeffs.entry(j).or_insert_with(Rat::zero) += c;
    }
}

fn vertex_marginal(pairs: &StepPairs, tail_side: bool) -> BTreeMap<usize, Rat> {
    let dim = if tail_side { pairs.p } else { pairs.q };
    let mut out = BTreeMap::new();
    for (&(i, j), c) in &pairs.eta {
        let x = if tail_side { i } else { j };
        if !is_trivial(x, dim) {
            *out.entry(x).or_insert_with(Rat::zero) += c;
        }
    }
    out
}

/// Couples per-arrow step pairs into one decomposition over the tree whose
/// pairwise marginals reproduce every input. The tree is rooted at
/// [`Quiver::find_leaf`] and arrows are processed breadth first, each new
/// vertex drawn conditionally on its already placed neighbour.
pub fn couple_tree(quiver: &Quiver, dims: &[usize], arrows: &[StepPairs]) -> Result<TreeDecomposition> {
    quiver.require_tree()?;
    if dims.len() != quiver.n() || arrows.len() != quiver.arrows().len() {
        return Err(malformed("per-vertex and per-arrow data must match the quiver"));
    }
    for (a, sp) in quiver.arrows().iter().zip(arrows) {
        if sp.p != dims[a.tail - 1] || sp.q != dims[a.head - 1] {
            return Err(malformed(format!("step pairs for arrow {a} have the wrong dimensions")));
        }
        for (&(i, j), c) in &sp.eta {
            if i > sp.p || j > sp.q {
                return Err(malformed(format!("pair ({i}, {j}) out of range on arrow {a}")));
            }
            if c.is_negative() {
                return Err(malformed(format!("negative coefficient on arrow {a}")));
            }
            if !c.is_zero() && is_trivial(i, sp.p) && is_trivial(j, sp.q) {
                return Err(malformed(format!("pair ({i}, {j}) on arrow {a} is trivial at both ends")));
            }
        }
    }
    for v in quiver.vertices() {
        let mut reference: Option<BTreeMap<usize, Rat>> = None;
        for k in quiver.incident(v) {
            let a = quiver.arrows()[k];
            let m = vertex_marginal(&arrows[k], a.tail == v);
            match &reference {
                None => reference = Some(m),
                Some(r0) if *r0 != m => {
                    return Err(precondition(format!("inconsistent marginals at vertex {v}")));
                }
                _ => {}
            }
        }
    }

    let mut td = TreeDecomposition { dims: dims.to_vec(), coeffs: BTreeMap::new() };
    if quiver.n() < 2 {
        return Ok(td);
    }
    let root = quiver.find_leaf()?;
    let order = quiver.bfs_arrows(root);
    let n = quiver.n();
    let mut atoms: Vec<(Vec<Option<usize>>, Rat)> = Vec::new();
    let mut visited: Vec<usize> = vec![root];
    for (step, &(k, u, w)) in order.iter().enumerate() {
        let a = quiver.arrows()[k];
        let oriented: Vec<(usize, usize, Rat)> = arrows[k]
            .eta
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(i, j), c)| if a.tail == u { (i, j, c.clone()) } else { (j, i, c.clone()) })
            .collect();
        let (pu, pw) = (dims[u - 1], dims[w - 1]);
        let same_type = |x: usize, pu: usize, pv: usize| if x == 0 || pu == 0 { 0 } else if x == pu { pv } else { x };
        if step == 0 {
            for (x, y, c) in oriented {
                let mut vals = vec![None; n];
                vals[u - 1] = Some(x);
                vals[w - 1] = Some(y);
                atoms.push((vals, c));
            }
            visited.push(w);
            continue;
        }
        let mut marg: BTreeMap<usize, Rat> = BTreeMap::new();
        for (x, _, c) in &oriented {
            if !is_trivial(*x, pu) {
                *marg.entry(*x).or_insert_with(Rat::zero) += c;
            }
        }
        let mut next = Vec::new();
        for (vals, c) in atoms {
            let x = vals[u - 1].expect("visited vertex is assigned");
            if is_trivial(x, pu) {
                let mut vals = vals;
                vals[w - 1] = Some(same_type(x, pu, pw));
                next.push((vals, c));
                continue;
            }
            let m = marg
                .get(&x)
                .cloned()
                .ok_or_else(|| precondition(format!("inconsistent marginals at vertex {u}")))?;
            for (_, y, eta) in oriented.iter().filter(|(x2, _, _)| *x2 == x) {
                let mut vals2 = vals.clone();
                vals2[w - 1] = Some(*y);
                next.push((vals2, &c * eta / &m));
            }
        }
        for (x, y, c) in oriented.iter().filter(|(x, _, _)| is_trivial(*x, pu)) {
            let mut vals = vec![None; n];
            for &v in &visited {
                vals[v - 1] = Some(same_type(*x, pu, dims[v - 1]));
            }
            vals[u - 1] = Some(*x);
            vals[w - 1] = Some(*y);
            next.push((vals, c.clone()));
        }
        atoms = next;
        visited.push(w);
    }
    for (vals, c) in atoms {
        let j: Vec<usize> = vals.into_iter().map(|v| v.expect("every vertex is assigned")).collect();
        td.insert(MultiIndex(j), c);
    }
    Ok(td)
}

/// Replaces every support element whose nontrivial vertices are disconnected
/// by its restrictions to the components; vertices hanging off a component
/// take the trivial type of the vertex they attach through. All-trivial
/// elements are dropped.
pub fn normalize_components(td: &TreeDecomposition, quiver: &Quiver) -> Result<TreeDecomposition> {
    quiver.require_tree()?;
    let dims = &td.dims;
    let mut out = TreeDecomposition { dims: dims.clone(), coeffs: BTreeMap::new() };
    for (j, c) in &td.coeffs {
        j.validate(dims)?;
        let support = j.nontrivial_vertices(dims);
        if support.is_empty() {
            continue;
        }
        let comps = quiver.components(&support);
        if comps.len() == 1 {
            out.insert(j.clone(), c.clone());
            continue;
        }
        for comp in comps {
            let attach = quiver.attachment(&comp);
            let vals: Vec<usize> = quiver
                .vertices()
                .map(|v| {
                    if comp.contains(&v) {
                        j.0[v - 1]
                    } else {
                        let a = attach[&v];
                        let full = j.0[a - 1] == dims[a - 1] && dims[a - 1] != 0;
                        if full { dims[v - 1] } else { 0 }
                    }
                })
                .collect();
            out.insert(MultiIndex(vals), c.clone());
        }
    }
    Ok(out)
}

/// Per-arrow decomposition of `λ` at `point`, coupled over the tree and
/// normalized. For a single vertex the step decomposition is returned.
pub fn decompose_tuple(point: &TuplePoint, lambda: &[WeightVector]) -> Result<TreeDecomposition> {
    let q = point.quiver();
    let dims = point.dims();
    if lambda.len() != q.n() || lambda.iter().zip(dims).any(|(l, &p)| l.dim() != p) {
        return Err(malformed("one weight vector of matching dimension per vertex is required"));
    }
    if q.n() == 1 {
        let mut td = TreeDecomposition { dims: dims.to_vec(), coeffs: BTreeMap::new() };
        for (k, c) in step_decompose(&lambda[0]).into_iter().enumerate() {
            td.insert(MultiIndex(vec![k + 1]), c * r(dims[0]));
        }
        return Ok(td);
    }
    let pairs: Vec<StepPairs> = q
        .arrows()
        .iter()
        .zip(point.homs())
        .map(|(a, f)| Ok(decompose_pair(f, &lambda[a.tail - 1], &lambda[a.head - 1])?.step_pairs()))
        .collect::<Result<_>>()?;
    normalize_components(&couple_tree(q, dims, &pairs)?, q)
}

/// `μ` of a decomposition term-by-term: `Σ η_j μ(point, λ^{j})` with
/// arrow coefficients `b`.
pub fn mu_along(point: &TuplePoint, td: &TreeDecomposition, b: &[Rat]) -> Result<Rat> {
    let mut total = Rat::zero();
    for (j, c) in &td.coeffs {
        let w = j.weights(point.dims())?;
        for ((a, f), ba) in point.quiver().arrows().iter().zip(point.homs()).zip(b) {
            total += c * ba * mu_hom(f, &w[a.tail - 1], &w[a.head - 1])?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int;

    fn wv(e: &[i64]) -> WeightVector {
        WeightVector::from_ints(e).unwrap()
    }

    fn map(entries: &[(usize, i64)]) -> BTreeMap<usize, Rat> {
        entries.iter().map(|&(k, c)| (k, int(c))).collect()
    }

    #[test]
    fn marker_examples() {
        let diag = HomPoint::from_support(2, 2, &[(1, 1), (2, 2)]);
        assert_eq!(markers(&diag).unwrap(), Markers { i0: 2, j0: 2, i0_prime: 1, j0_prime: 1 });
        let m = markers(&HomPoint::from_support(2, 2, &[(2, 1)])).unwrap();
        assert_eq!(m, Markers { i0: 2, j0: 1, i0_prime: 2, j0_prime: 1 });
        let m = markers(&HomPoint::from_support(2, 2, &[(1, 2)])).unwrap();
        assert_eq!(m, Markers { i0: 1, j0: 2, i0_prime: 1, j0_prime: 2 });
        assert!(markers(&HomPoint::from_support(2, 2, &[])).is_err());
    }

    #[test]
    fn ladder_examples() {
        let w = wv(&[-1, 1]);
        let diag = HomPoint::from_support(2, 2, &[(1, 1), (2, 2)]);
        let l = ladder(&diag, &w, &w).unwrap();
        assert_eq!(l.rungs, vec![(int(-1), int(-1)), (int(1), int(1))]);
        assert_eq!(l.star, 1);
        assert_eq!(l.star_value(), int(0));
        let l = ladder(&HomPoint::from_support(2, 2, &[(2, 1)]), &w, &w).unwrap();
        assert_eq!(l.rungs, vec![(int(1), int(-1))]);
        assert_eq!(l.star_value(), int(-2));
        let full = HomPoint::from_support(2, 2, &[(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(ladder(&full, &w, &w).unwrap().star_value(), int(2));
    }

    #[test]
    fn triv1_examples() {
        let yes = |_: usize, _: usize| true;
        let s = triv1_split(&map(&[(1, 1)]), 2, &map(&[(1, 1)]), 2, FillOrder::Ascending, yes).unwrap();
        assert_eq!(s.paired, BTreeMap::from([((1, 1), int(2))]));
        assert!(s.pure_alpha.is_empty() && s.pure_beta.is_empty());
        let s = triv1_split(&map(&[(1, 2)]), 2, &map(&[(1, 1)]), 2, FillOrder::Ascending, yes).unwrap();
        assert_eq!(s.paired, BTreeMap::from([((1, 1), int(2))]));
        assert_eq!(s.pure_alpha, map(&[(1, 1)]));
        let s = triv1_split(&map(&[(1, 3)]), 2, &BTreeMap::new(), 2, FillOrder::Ascending, yes).unwrap();
        assert_eq!(s.pure_alpha, map(&[(1, 3)]));
        assert!(s.paired.is_empty());
        assert!(triv1_split(&map(&[(2, 1)]), 2, &BTreeMap::new(), 2, FillOrder::Ascending, yes).is_err());
        assert!(triv1_split(&map(&[(1, 1)]), 2, &map(&[(1, 1)]), 2, FillOrder::Ascending, |_, _| false).is_err());
    }

    #[test]
    fn decompose_examples() {
        let w = wv(&[-1, 1]);
        let diag = HomPoint::from_support(2, 2, &[(1, 1), (2, 2)]);
        let d = decompose_pair(&diag, &w, &w).unwrap();
        assert_eq!(d.paired, BTreeMap::from([((1, 1), int(2))]));
        assert!(d.pure_alpha.is_empty() && d.pure_beta.is_empty());
        assert!(d.reconstructs(&w, &w));

        let g = HomPoint::from_support(2, 2, &[(2, 1)]);
        let d = decompose_pair(&g, &w, &w).unwrap();
        assert_eq!(d.witness, (2, 1));
        assert_eq!(d.pure_alpha, map(&[(1, 1)]));
        assert_eq!(d.pure_beta, map(&[(1, 1)]));
        assert!(d.paired.is_empty());
        let total: Rat = d
            .pieces()
            .unwrap()
            .iter()
            .map(|p| &p.coeff * mu_hom(&g, &p.delta, &p.gamma).unwrap())
            .sum();
        assert_eq!(total, int(-2));

        let z = WeightVector::zero(2);
        assert!(decompose_pair(&diag, &z, &z).unwrap().is_empty());
    }

    #[test]
    fn basic_examples() {
        let q = Quiver::tree(2, &[(1, 2)]).unwrap();
        let diag = HomPoint::from_support(2, 2, &[(1, 1), (2, 2)]);
        let pt = TuplePoint::new(q, vec![2, 2], vec![diag]).unwrap();
        assert!(is_basic(&MultiIndex(vec![1, 1]), &pt).unwrap());
        assert!(!is_basic(&MultiIndex(vec![1, 0]), &pt).unwrap());
        assert!(!is_basic(&MultiIndex(vec![0, 0]), &pt).unwrap());

        let path = Quiver::tree(3, &[(1, 2), (2, 3)]).unwrap();
        let id = HomPoint::from_support(2, 2, &[(1, 1), (2, 2)]);
        let pt = TuplePoint::new(path, vec![2, 2, 2], vec![id.clone(), id]).unwrap();
        assert!(!is_basic(&MultiIndex(vec![1, 0, 1]), &pt).unwrap());
    }

    fn pairs(p: usize, q: usize, e: &[((usize, usize), i64)]) -> StepPairs {
        StepPairs { p, q, eta: e.iter().map(|&(k, c)| (k, int(c))).collect() }
    }

    #[test]
    fn couple_examples() {
        let path = Quiver::tree(3, &[(1, 2), (2, 3)]).unwrap();
        let td = couple_tree(
            &path,
            &[2, 2, 2],
            &[pairs(2, 2, &[((1, 1), 2)]), pairs(2, 2, &[((1, 1), 2)])],
        )
        .unwrap();
        assert_eq!(td.coeffs, BTreeMap::from([(MultiIndex(vec![1, 1, 1]), int(2))]));

        let td = couple_tree(
            &path,
            &[2, 3, 2],
            &[pairs(2, 3, &[((1, 1), 1), ((0, 2), 1)]), pairs(3, 2, &[((1, 1), 1), ((2, 0), 1)])],
        )
        .unwrap();
        assert_eq!(
            td.coeffs,
            BTreeMap::from([(MultiIndex(vec![1, 1, 1]), int(1)), (MultiIndex(vec![0, 2, 0]), int(1))])
        );

        let single = Quiver::tree(2, &[(1, 2)]).unwrap();
        let sp = pairs(3, 2, &[((1, 1), 2), ((2, 2), 1)]);
        let td = couple_tree(&single, &[3, 2], core::slice::from_ref(&sp)).unwrap();
        assert_eq!(td.arrow_marginal(&single, 0), sp.eta);

        let err = couple_tree(&path, &[2, 2, 2], &[pairs(2, 2, &[((1, 1), 2)]), pairs(2, 2, &[((1, 1), 1)])]);
        assert!(matches!(err, Err(Error::Precondition(m)) if m.contains("vertex 2")));
    }

    #[test]
    fn normalize_examples() {
        let path = Quiver::tree(3, &[(1, 2), (2, 3)]).unwrap();
        let mut td = TreeDecomposition { dims: vec![2, 2, 2], coeffs: BTreeMap::new() };
        td.coeffs.insert(MultiIndex(vec![1, 0, 1]), int(3));
        td.coeffs.insert(MultiIndex(vec![0, 0, 0]), int(1));
        td.coeffs.insert(MultiIndex(vec![1, 1, 0]), int(5));
        let n = normalize_components(&td, &path).unwrap();
        assert_eq!(
            n.coeffs,
            BTreeMap::from([
                (MultiIndex(vec![0, 0, 1]), int(3)),
                (MultiIndex(vec![1, 0, 0]), int(3)),
                (MultiIndex(vec![1, 1, 0]), int(5)),
            ])
        );
    }
}
