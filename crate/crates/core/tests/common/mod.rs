//! Helpers shared by the integration tests: seeded generators and brute-force
//! oracles written directly from the definitions.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thetastab_core::exactpoly::{int, Rat, RatPoly};
use thetastab_core::kingrep::QuiverRep;
use thetastab_core::linalg::{Matrix, PrimeField};
use thetastab_core::quiver::Quiver;
use thetastab_core::weights::{HomPoint, WeightVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random oriented tree on `n` vertices with shuffled labels.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Quiver {
    let mut labels: Vec<usize> = (1..=n).collect();
    for k in (1..n).rev() {
        labels.swap(k, rng.gen_range(0..=k));
    }
    let mut pairs = Vec::new();
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        let (a, b) = (labels[parent], labels[v]);
        pairs.push(if rng.gen_bool(0.5) { (a, b) } else { (b, a) });
    }
    Quiver::tree(n, &pairs).expect("generated a tree")
}

/// Sorted integer vector of length `p` with entries near `[-m, m]`, sum zero.
pub fn random_weight(rng: &mut impl Rng, p: usize, m: i64) -> WeightVector {
    if p == 0 {
        return WeightVector::zero(0);
    }
    let mut v: Vec<i64> = (0..p - 1).map(|_| rng.gen_range(-m..=m)).collect();
    v.push(-v.iter().sum::<i64>());
    v.sort();
    WeightVector::from_ints(&v).unwrap()
}

/// Random nonzero `q x p` matrix with entries in `{-1, 0, 1}`.
pub fn random_hom(rng: &mut impl Rng, p: usize, q: usize) -> HomPoint {
    loop {
        let m = Matrix::from_fn(q, p, |_, _| int(rng.gen_range(-1..=1)));
        let f = HomPoint::new(m);
        if !f.is_zero() {
            return f;
        }
    }
}

/// All sorted vectors of length `p` with entries in `lo..=hi` and sum zero.
pub fn sorted_vectors(p: usize, lo: i64, hi: i64) -> Vec<WeightVector> {
    fn rec(p: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == p {
            if cur.iter().sum::<i64>() == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let start = cur.last().copied().unwrap_or(lo);
        for x in start..=hi {
            cur.push(x);
            rec(p, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(p, lo, hi, &mut Vec::new(), &mut out);
    out.into_iter().map(|v| WeightVector::from_ints(&v).unwrap()).collect()
}

/// All `q x p` 0/1 matrices except zero.
pub fn nonzero_01(p: usize, q: usize) -> Vec<HomPoint> {
    let cells = p * q;
    (1u32..(1 << cells))
        .map(|mask| {
            HomPoint::new(Matrix::from_fn(q, p, |r, c| int(((mask >> (r * p + c)) & 1) as i64)))
        })
        .collect()
}

/// Nonzero entries `(i, j)` (1-based source, target) read off the matrix.
pub fn support(f: &HomPoint) -> Vec<(usize, usize)> {
    let m = f.matrix();
    let mut out = Vec::new();
    for c in 0..m.cols() {
        for r in 0..m.rows() {
            if *m.get(r, c) != int(0) {
                out.push((c + 1, r + 1));
            }
        }
    }
    out
}

/// `f(V^{(i)}) ⊂ W^{(j)}`: the first `i` columns vanish below row `j`.
pub fn oracle_maps_flag(f: &HomPoint, i: usize, j: usize) -> bool {
    let m = f.matrix();
    (0..i).all(|c| (j..m.rows()).all(|r| *m.get(r, c) == int(0)))
}

pub fn oracle_kills_prefix(f: &HomPoint, i: usize) -> bool {
    oracle_maps_flag(f, i, 0)
}

pub fn oracle_image_in(f: &HomPoint, j: usize) -> bool {
    oracle_maps_flag(f, f.source_dim(), j)
}

/// `μ` straight from the definition: the largest exponent `γ_j - δ_i` over
/// nonvanishing coordinates.
pub fn oracle_mu(f: &HomPoint, delta: &[Rat], gamma: &[Rat]) -> Option<Rat> {
    support(f).into_iter().map(|(i, j)| &gamma[j - 1] - &delta[i - 1]).max()
}

/// Step vector written out by hand.
pub fn oracle_step(p: usize, j: usize) -> Vec<Rat> {
    (1..=p).map(|k| if k <= j { int(j as i64 - p as i64) } else { int(j as i64) }).collect()
}

/// Every representation over `F_2` of the three small trees used by the
/// GIT comparison, with all dimension vectors in `{1, 2}^n` and each arrow
/// weighting in the family.
pub fn f2_family() -> Vec<(QuiverRep<PrimeField>, Vec<Rat>)> {
    let f2 = PrimeField::new(2).unwrap();
    let shapes: Vec<(Quiver, Vec<Vec<Rat>>)> = vec![
        (Quiver::tree(2, &[(1, 2)]).unwrap(), vec![vec![int(1)]]),
        (Quiver::tree(3, &[(1, 2), (2, 3)]).unwrap(), vec![vec![int(1), int(1)], vec![int(1), int(2)]]),
        (Quiver::tree(3, &[(1, 2), (3, 2)]).unwrap(), vec![vec![int(1), int(1)], vec![int(1), int(2)]]),
    ];
    let mut out = Vec::new();
    for (q, bs) in shapes {
        let n = q.n();
        for code in 0..(1usize << n) {
            let dims: Vec<usize> = (0..n).map(|v| 1 + ((code >> v) & 1)).collect();
            let cells: Vec<(usize, usize)> = q.arrows().iter().map(|a| (dims[a.head - 1], dims[a.tail - 1])).collect();
            let total: usize = cells.iter().map(|(r, c)| r * c).sum();
            for mask in 0u64..(1 << total) {
                let mut bit = 0;
                let maps = cells
                    .iter()
                    .map(|&(r, c)| {
                        Matrix::from_fn(r, c, |_, _| {
                            let x = (mask >> bit) & 1;
                            bit += 1;
                            x
                        })
                    })
                    .collect();
                let rep = QuiverRep::new(q.clone(), f2, dims.clone(), maps).unwrap();
                for b in &bs {
                    out.push((rep.clone(), b.clone()));
                }
            }
        }
    }
    out
}

/// Every multi-index `0 <= j_i <= p_i`.
pub fn all_multi_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &p in dims {
        out = out.into_iter().flat_map(|v| (0..=p).map(move |x| {
            let mut w = v.clone();
            w.push(x);
            w
        })).collect();
    }
    out
}

/// Random polynomial of degree at most `deg` with small integer coefficients
/// and a positive leading coefficient.
pub fn random_positive_poly(rng: &mut impl Rng, deg: usize) -> RatPoly {
    let d = rng.gen_range(0..=deg);
    let mut c: Vec<Rat> = (0..d).map(|_| int(rng.gen_range(-3..=3))).collect();
    c.push(int(rng.gen_range(1..=3)));
    RatPoly::from_coeffs(c)
}

pub fn random_positive_rat(rng: &mut impl Rng) -> Rat {
    Rat::new(rng.gen_range(1..=6).into(), rng.gen_range(1..=4).into())
}

/// Uniform integer in `[0, x]` for a nonnegative integral `x`.
pub fn upto(rng: &mut impl Rng, x: &Rat) -> Rat {
    use num_traits::ToPrimitive;
    int(rng.gen_range(0..=x.to_integer().to_i64().unwrap()))
}
