//! Polynomial-valued stability calculus for representations in sheaves.
//!
//! Everything here works from numerical data only: Hilbert polynomials and
//! ranks of the sheaves and of candidate subsheaves. Verdicts are therefore
//! relative to the profiles a caller supplies.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Add;

use num_traits::{One, Signed, Zero};

use crate::error::{malformed, parameter, precondition, Result};
use crate::exactpoly::{positive_part, Rat, RatPoly};
use crate::quiver::{Arrow, BoundednessSlot, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafParams {
    quiver: Quiver,
    dim_x: usize,
    pbar: Vec<RatPoly>,
    ranks: Vec<Rat>,
    sigma: Vec<RatPoly>,
    b: Vec<Rat>,
}

impl SheafParams {
    /// Ranks are supplied with the Hilbert polynomials rather than read off
    /// their leading coefficients.
    pub fn new(
        quiver: Quiver,
        dim_x: usize,
        pbar: Vec<RatPoly>,
        ranks: Vec<Rat>,
        sigma: Vec<RatPoly>,
        b: Vec<Rat>,
    ) -> Result<Self> {
        let n = quiver.n();
        if pbar.len() != n || ranks.len() != n || sigma.len() != n {
            return Err(malformed("P̄, ranks and σ need one entry per vertex"));
        }
        if b.len() != quiver.arrows().len() {
            return Err(malformed("one arrow coefficient per arrow is required"));
        }
        if dim_x == 0 {
            return Err(parameter("dimX must be positive"));
        }
        for v in 0..n {
            if pbar[v].is_zero() {
                return Err(parameter(format!("P̄ at vertex {} is zero", v + 1)));
            }
            if !ranks[v].is_positive() {
                return Err(parameter(format!("rank at vertex {} must be positive", v + 1)));
            }
            if !sigma[v].is_positive() {
                return Err(parameter(format!("σ at vertex {} must be positive", v + 1)));
            }
            if sigma[v].degree().unwrap_or(0) + 1 > dim_x {
                return Err(parameter(format!("σ at vertex {} has degree above dimX - 1", v + 1)));
            }
        }
        if let Some(k) = b.iter().position(|x| !x.is_positive()) {
            return Err(parameter(format!("arrow coefficient for {} must be positive", quiver.arrows()[k])));
        }
        Ok(Self { quiver, dim_x, pbar, ranks, sigma, b })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }

    pub fn pbar(&self) -> &[RatPoly] {
        &self.pbar
    }

    pub fn ranks(&self) -> &[Rat] {
        &self.ranks
    }

    pub fn sigmas(&self) -> &[RatPoly] {
        &self.sigma
    }

    pub fn b(&self) -> &[Rat] {
        &self.b
    }

    /// `σ = Π σ_i`.
    pub fn sigma(&self) -> RatPoly {
        self.sigma.iter().fold(RatPoly::one(), |acc, s| &acc * s)
    }

    /// `σ̌_i = σ / σ_i`, as the product of the other factors.
    pub fn sigma_check(&self, i: usize) -> RatPoly {
        self.sigma
            .iter()
            .enumerate()
            .filter(|&(k, _)| k + 1 != i)
            .fold(RatPoly::one(), |acc, (_, s)| &acc * s)
    }
}

/// Hilbert polynomial and rank of a candidate subsheaf at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubProfile {
    pub hilbert: Vec<RatPoly>,
    pub ranks: Vec<Rat>,
}

impl SubProfile {
    pub fn zero(n: usize) -> Self {
        Self { hilbert: vec![RatPoly::zero(); n], ranks: vec![Rat::zero(); n] }
    }

    pub fn full(params: &SheafParams) -> Self {
        Self { hilbert: params.pbar.clone(), ranks: params.ranks.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.hilbert.iter().all(RatPoly::is_zero) && self.ranks.iter().all(Zero::is_zero)
    }
}

impl Add for &SubProfile {
    type Output = SubProfile;

    fn add(self, rhs: &SubProfile) -> SubProfile {
        SubProfile {
            hilbert: self.hilbert.iter().zip(&rhs.hilbert).map(|(a, b)| a + b).collect(),
            ranks: self.ranks.iter().zip(&rhs.ranks).map(|(a, b)| a + b).collect(),
        }
    }
}

fn check_profile(params: &SheafParams, prof: &SubProfile) -> Result<()> {
    let n = params.quiver.n();
    if prof.hilbert.len() != n || prof.ranks.len() != n {
        return Err(malformed(format!("profile has {} entries for {n} vertices", prof.hilbert.len())));
    }
    Ok(())
}

/// `Σ_a b_a [σ̌_t {P(F_t) - rk F_t (P_t - σ_t)/r_t} + σ̌_h {P(F_h) - rk F_h (P_h + σ_h)/r_h}]`.
pub fn theta_sheaf(params: &SheafParams, prof: &SubProfile) -> Result<RatPoly> {
    check_profile(params, prof)?;
    let brace = |v: usize, sign: i64| -> RatPoly {
        let k = v - 1;
        let shifted = if sign < 0 { &params.pbar[k] - &params.sigma[k] } else { &params.pbar[k] + &params.sigma[k] };
        let slope = shifted.scale(&(&prof.ranks[k] / &params.ranks[k]));
        &params.sigma_check(v) * &(&prof.hilbert[k] - &slope)
    };
    Ok(params
        .quiver
        .arrows()
        .iter()
        .zip(&params.b)
        .map(|(a, ba)| (brace(a.tail, -1) + brace(a.head, 1)).scale(ba))
        .sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    /// Torsion subsheaves with the given Hilbert polynomials (rank 0).
    Torsion(Vec<RatPoly>),
    /// Full sheaves on the tail side of `a0`, zero on the head side.
    SplitArrow(Arrow),
    /// The subrepresentation generated by a subsheaf `G` at `i0`.
    Boundedness { i0: usize, hilbert: RatPoly, rank: Rat },
}

pub fn special_profile(params: &SheafParams, kind: &SpecialKind) -> Result<SubProfile> {
    let q = &params.quiver;
    let full = SubProfile::full(params);
    let mut out = SubProfile::zero(q.n());
    match kind {
        SpecialKind::Torsion(polys) => {
            if polys.len() != q.n() {
                return Err(malformed("one torsion polynomial per vertex is required"));
            }
            out.hilbert = polys.clone();
        }
        SpecialKind::SplitArrow(a0) => {
            let (tail_side, _) = q.split_at_arrow(*a0)?;
            for v in tail_side {
                out.hilbert[v - 1] = full.hilbert[v - 1].clone();
                out.ranks[v - 1] = full.ranks[v - 1].clone();
            }
        }
        SpecialKind::Boundedness { i0, hilbert, rank } => {
            for (k, slot) in q.boundedness_split(*i0)?.into_iter().enumerate() {
                match slot {
                    BoundednessSlot::Zero => {}
                    BoundednessSlot::Full => {
                        out.hilbert[k] = full.hilbert[k].clone();
                        out.ranks[k] = full.ranks[k].clone();
                    }
                    BoundednessSlot::G => {
                        out.hilbert[k] = hilbert.clone();
                        out.ranks[k] = rank.clone();
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileStatus {
    NoViolation,
    Boundary,
    StrictViolation,
}

/// Verdict relative to the supplied subobject profiles only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileVerdict {
    pub status: ProfileStatus,
    /// Index of the lex-maximal profile, `None` for an empty list.
    pub witness: Option<usize>,
    pub theta: Option<RatPoly>,
}

pub fn semistable_profiles(params: &SheafParams, profiles: &[SubProfile]) -> Result<ProfileVerdict> {
    let full = SubProfile::full(params);
    let mut best: Option<(usize, RatPoly)> = None;
    for (k, prof) in profiles.iter().enumerate() {
        check_profile(params, prof)?;
        if prof.is_zero() || *prof == full {
            return Err(precondition(format!("profile {k} is trivial or full")));
        }
        let t = theta_sheaf(params, prof)?;
        if best.as_ref().is_none_or(|(_, bt)| t > *bt) {
            best = Some((k, t));
        }
    }
    Ok(match best {
        None => ProfileVerdict { status: ProfileStatus::NoViolation, witness: None, theta: None },
        Some((k, t)) => {
            let status = match t.signum() {
                Ordering::Less => ProfileStatus::NoViolation,
                Ordering::Equal => ProfileStatus::Boundary,
                Ordering::Greater => ProfileStatus::StrictViolation,
            };
            ProfileVerdict { status, witness: Some(k), theta: Some(t) }
        }
    })
}

/// Hilbert polynomials and ranks of a holomorphic triple `E_1 → E_2`, or of
/// a sub-triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleData {
    pub p1: RatPoly,
    pub r1: Rat,
    pub p2: RatPoly,
    pub r2: Rat,
}

/// `σ_2 (P(F_1) - rk F_1 (P_1 - σ_1)/r_1) + σ_1 (P(F_2) - rk F_2 (P_2 + σ_2)/r_2)`.
pub fn triple_theta(sigma1: &RatPoly, sigma2: &RatPoly, ambient: &TripleData, sub: &TripleData) -> Result<RatPoly> {
    if !ambient.r1.is_positive() || !ambient.r2.is_positive() {
        return Err(parameter("ambient ranks must be positive"));
    }
    if !sigma1.is_positive() || !sigma2.is_positive() {
        return Err(parameter("σ_1 and σ_2 must be positive"));
    }
    let first = &sub.p1 - &(&ambient.p1 - sigma1).scale(&(&sub.r1 / &ambient.r1));
    let second = &sub.p2 - &(&ambient.p2 + sigma2).scale(&(&sub.r2 / &ambient.r2));
    Ok(&(sigma2 * &first) + &(sigma1 * &second))
}

/// `τ = μ_2 + σ / r_2` on a curve with `σ_1 = σ_2 = σ`.
pub fn tau_from_sigma(mu2: &Rat, r2: &Rat, sigma: &Rat) -> Result<Rat> {
    if !sigma.is_positive() {
        return Err(parameter("σ must be positive"));
    }
    if !r2.is_positive() {
        return Err(parameter("rank must be positive"));
    }
    Ok(mu2 + sigma / r2)
}

pub fn sigma_from_tau(mu2: &Rat, r2: &Rat, tau: &Rat) -> Result<Rat> {
    if !r2.is_positive() {
        return Err(parameter("rank must be positive"));
    }
    let sigma = (tau - mu2) * r2;
    if !sigma.is_positive() {
        return Err(parameter("τ must exceed μ_2"));
    }
    Ok(sigma)
}

/// Degrees and ranks of a triple of vector bundles on a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveTriple {
    pub d1: Rat,
    pub r1: Rat,
    pub d2: Rat,
    pub r2: Rat,
}

/// `(k_1 + k_2)(μ_α(T') - μ_α(T))` for the α-slope
/// `μ_α = (deg_1 + deg_2 + α rk_1)/(rk_1 + rk_2)`, where `α` is fixed by
/// `μ_α(T) = τ`. A sub-triple destabilises iff this is positive.
pub fn tau_slope_excess(ambient: &CurveTriple, sub: &CurveTriple, tau: &Rat) -> Result<Rat> {
    if !ambient.r1.is_positive() || !ambient.r2.is_positive() {
        return Err(parameter("ambient ranks must be positive"));
    }
    let total_rank = &ambient.r1 + &ambient.r2;
    let alpha = (&total_rank * tau - &ambient.d1 - &ambient.d2) / &ambient.r1;
    let mu_alpha = (&ambient.d1 + &ambient.d2 + &alpha * &ambient.r1) / &total_rank;
    Ok(&sub.d1 + &sub.d2 + &alpha * &sub.r1 - (&sub.r1 + &sub.r2) * mu_alpha)
}

/// Numerical data for the sectional condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionalData {
    pub s: Vec<Rat>,
    pub b: Vec<Rat>,
    pub chi: Vec<Rat>,
    pub rk_e: Vec<Rat>,
    /// `dim(H_i ∩ H⁰(F_i))`; compatibility of the `H_i` with the maps is the caller's obligation.
    pub section_dims: Vec<Rat>,
    pub rk_f: Vec<Rat>,
}

/// `Σ_a b_a [š_t {d_t - rkF_t (χ_t - s_t)/rkE_t} + š_h {d_h - rkF_h (χ_h + s_h)/rkE_h}]`.
pub fn sectional_delta(q: &Quiver, data: &SectionalData) -> Result<Rat> {
    let n = q.n();
    if [&data.s, &data.chi, &data.rk_e, &data.section_dims, &data.rk_f].iter().any(|v| v.len() != n)
        || data.b.len() != q.arrows().len()
    {
        return Err(malformed("sectional data does not match the quiver"));
    }
    if let Some(v) = data.rk_e.iter().position(Zero::is_zero) {
        return Err(parameter(format!("rank at vertex {} is zero", v + 1)));
    }
    if let Some(v) = data.s.iter().position(|x| !x.is_positive()) {
        return Err(parameter(format!("s at vertex {} must be positive", v + 1)));
    }
    let check = |v: usize| -> Rat {
        data.s.iter().enumerate().filter(|&(k, _)| k + 1 != v).fold(Rat::one(), |acc, (_, x)| acc * x)
    };
    let brace = |v: usize, sign: i64| -> Rat {
        let k = v - 1;
        let shifted = if sign < 0 { &data.chi[k] - &data.s[k] } else { &data.chi[k] + &data.s[k] };
        check(v) * (&data.section_dims[k] - &data.rk_f[k] * shifted / &data.rk_e[k])
    };
    Ok(q.arrows().iter().zip(&data.b).map(|(a, ba)| ba * (brace(a.tail, -1) + brace(a.head, 1))).sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundednessBound {
    /// `C_{i0}`, so that `μ_max(E_{i0}) ≤ μ_{i0} + C_{i0}`.
    pub c: Rat,
    pub sigma_bar: Rat,
    pub sigma_check_bar: Rat,
    /// Degree of `Σ_{a∈A(i0)} b_a σ̌_{i0}`.
    pub check_degree: usize,
    /// Set when the coefficient read off for `σ̄` is zero.
    pub degenerate: bool,
}

pub fn boundedness_bound(params: &SheafParams, i0: usize) -> Result<BoundednessBound> {
    let q = &params.quiver;
    q.check_vertex(i0)?;
    let local: Rat = q.arrows().iter().zip(&params.b).filter(|(a, _)| a.touches(i0)).map(|(_, b)| b.clone()).sum();
    if local.is_zero() {
        return Err(precondition(format!("vertex {i0} has no arrows")));
    }
    let check = params.sigma_check(i0).scale(&local);
    let check_degree = check.degree().unwrap_or(0);
    let sigma_check_bar = check.leading_coeff();
    let total: Rat = params.b.iter().sum();
    let sigma_bar = params.sigma().scale(&total).coeff(check_degree + params.dim_x - 1);
    Ok(BoundednessBound {
        c: &sigma_bar / &sigma_check_bar,
        degenerate: sigma_bar.is_zero(),
        sigma_bar,
        sigma_check_bar,
        check_degree,
    })
}

fn factorial(n: usize) -> Rat {
    (1..=n).fold(Rat::one(), |acc, k| acc * Rat::from_integer((k as i64).into()))
}

/// `(rk-1)/(dimX! rk) [μ_max + C - 1 + m]₊^dimX + 1/(dimX! rk) [μ + C - 1 + m]₊^dimX`
/// with `C = rk(rk + dimX)/2`.
pub fn lps_bound(rk: u64, mu_max: &Rat, mu: &Rat, m: &Rat, dim_x: usize) -> Result<Rat> {
    if rk == 0 {
        return Err(parameter("rank must be at least 1"));
    }
    let rk_r = Rat::from_integer(rk.into());
    let c = &rk_r * (&rk_r + Rat::from_integer((dim_x as u64).into())) / Rat::from_integer(2.into());
    let shift = &c - Rat::one() + m;
    let pow = |t: Rat| (0..dim_x).fold(Rat::one(), |acc, _| acc * &t);
    let denom = factorial(dim_x) * &rk_r;
    Ok((&rk_r - Rat::one()) / &denom * pow(positive_part(&(mu_max + &shift)))
        + pow(positive_part(&(mu + &shift))) / denom)
}

/// Per-vertex numbers entering the Gieseker linearization at a fixed `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GiesekerData {
    pub p: Vec<Rat>,
    pub sigma_m: Vec<Rat>,
    pub r: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GiesekerL {
    pub l: Vec<Rat>,
    /// `α_{i,a}` keyed by vertex and arrow index; `l_i = Σ_{a∈A(i)} b_a α_{i,a}`.
    pub alpha: BTreeMap<(usize, usize), Rat>,
}

fn gieseker_shape(q: &Quiver, gd: &GiesekerData) -> Result<()> {
    let n = q.n();
    if gd.p.len() != n || gd.sigma_m.len() != n || gd.r.len() != n {
        return Err(malformed("Gieseker data needs one entry per vertex"));
    }
    Ok(())
}

pub fn gieseker_l(q: &Quiver, b: &[Rat], gd: &GiesekerData) -> Result<GiesekerL> {
    gieseker_shape(q, gd)?;
    if b.len() != q.arrows().len() {
        return Err(malformed("one arrow coefficient per arrow is required"));
    }
    for v in 0..q.n() {
        if !(gd.sigma_m[v].is_positive() && gd.p[v] > gd.sigma_m[v] && gd.r[v].is_positive()) {
            return Err(parameter(format!("vertex {} needs p > σ(m) > 0 and r > 0", v + 1)));
        }
    }
    let mut l = vec![Rat::zero(); q.n()];
    let mut alpha = BTreeMap::new();
    for (k, (a, ba)) in q.arrows().iter().zip(b).enumerate() {
        let (t, h) = (a.tail - 1, a.head - 1);
        let out = (&gd.p[t] - &gd.sigma_m[t]) / (&gd.r[t] * &gd.sigma_m[t]);
        let inc = (&gd.p[h] + &gd.sigma_m[h]) / (&gd.r[h] * &gd.sigma_m[h]);
        l[t] += ba * &out;
        l[h] += ba * &inc;
        alpha.insert((a.tail, k), out);
        alpha.insert((a.head, k), inc);
    }
    for (v, lv) in l.iter().enumerate() {
        let sum: Rat = q
            .arrows()
            .iter()
            .zip(b)
            .enumerate()
            .filter(|(_, (a, _))| a.touches(v + 1))
            .map(|(k, (_, ba))| ba * &alpha[&(v + 1, k)])
            .sum();
        debug_assert_eq!(&sum, lv);
    }
    Ok(GiesekerL { l, alpha })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowEnd {
    Tail,
    Head,
}

/// One vertex seen from one arrow end, with a flag index `j` and
/// `rk E^{(j)}`. `sigma_check_m` is `σ(m) / σ_i(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightInput {
    pub p: Rat,
    pub r: Rat,
    pub sigma_m: Rat,
    pub sigma_check_m: Rat,
    pub j: Rat,
    pub rk_ej: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightIdentities {
    /// `μ = p rk E^{(j)} - j r`.
    pub mu: Rat,
    pub ii_lhs: Rat,
    pub ii_rhs: Rat,
    /// The end's term in the weight sum, multiplied by `σ(m)`.
    pub iii_scaled: Rat,
    /// Minus the end's term of the rewritten inequality with `χ = p`, `rk E = r`.
    pub iv_negated: Rat,
}

pub fn gieseker_weight_identities(end: ArrowEnd, w: &WeightInput) -> Result<WeightIdentities> {
    if !w.p.is_positive() || !w.r.is_positive() || !w.sigma_m.is_positive() {
        return Err(parameter("p, r and σ(m) must be positive"));
    }
    if w.j.is_negative() || w.j > w.p {
        return Err(parameter("j must lie in [0, p]"));
    }
    let mu = &w.p * &w.rk_ej - &w.j * &w.r;
    let rs = &w.r * &w.sigma_m;
    let (coef, jterm, rk_term) = match end {
        ArrowEnd::Tail => ((&w.p - &w.sigma_m) / &rs, -(&w.j / &w.p), -(&w.rk_ej / &w.r)),
        ArrowEnd::Head => ((&w.p + &w.sigma_m) / &rs, &w.j / &w.p, &w.rk_ej / &w.r),
    };
    let ii_lhs = coef / &w.p * &mu + jterm;
    let ii_rhs = &w.p * &w.rk_ej / &rs + rk_term - &w.j / &w.sigma_m;
    let iii_scaled = &ii_lhs * &w.sigma_m * &w.sigma_check_m;
    let shifted = match end {
        ArrowEnd::Tail => &w.p - &w.sigma_m,
        ArrowEnd::Head => &w.p + &w.sigma_m,
    };
    let iv = &w.sigma_check_m * (&w.j - &w.rk_ej * shifted / &w.r);
    Ok(WeightIdentities { mu, ii_lhs, ii_rhs, iii_scaled, iv_negated: -iv })
}
