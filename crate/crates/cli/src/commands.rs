use std::collections::BTreeMap;
use std::fmt::Display;

use anyhow::{anyhow, bail, Result};
use thetastab_core::decomp::{decompose_pair, decompose_tuple, is_basic, mu_along};
use thetastab_core::exactpoly::{rat_to_string, Rat, RatPoly};
use thetastab_core::kingrep::{
    check_semistable_with, git_check as core_git_check, Completeness, gr_jordan_holder, FlagSource, Mode, QuiverRep, Status, SubRep,
    Verdict,
};
use thetastab_core::linalg::{Field, Matrix};
use thetastab_core::sheafcalc::{
    boundedness_bound, gieseker_l, lps_bound, sectional_delta, semistable_profiles, theta_sheaf, triple_theta,
    ProfileStatus,
};
use thetastab_core::weights::{check_additivity, flag_weight, mu_hom, TuplePoint};

use crate::instance::{AnyRep, Instance};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    TreeCheck,
    KingCheck,
    GitCheck,
    Gr,
    Decompose,
    Couple,
    Mu,
    FlagWeight,
    SheafTheta,
    Triple,
    Sectional,
    Gieseker,
    Bounds,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::TreeCheck => "tree-check",
            Command::KingCheck => "king-check",
            Command::GitCheck => "git-check",
            Command::Gr => "gr",
            Command::Decompose => "decompose",
            Command::Couple => "couple",
            Command::Mu => "mu",
            Command::FlagWeight => "flag-weight",
            Command::SheafTheta => "sheaf-theta",
            Command::Triple => "triple",
            Command::Sectional => "sectional",
            Command::Gieseker => "gieseker",
            Command::Bounds => "bounds",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeChoice {
    ExhaustiveFf,
    Lattice,
    Randomized,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub mode: Option<ModeChoice>,
    pub budget: u128,
    pub seed: Option<u64>,
    pub samples: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self { mode: None, budget: 1_000_000, seed: None, samples: 64 }
    }
}

pub fn run(cmd: Command, inst: &Instance, opts: &Options) -> Result<Report> {
    if opts.seed.is_some() && opts.mode != Some(ModeChoice::Randomized) {
        bail!("--seed is only used with --mode randomized");
    }
    let name = cmd.name();
    match cmd {
        Command::TreeCheck => Ok(tree_check(inst)),
        Command::KingCheck => with_rep(inst, |r| king_check(name, inst, r, opts)),
        Command::GitCheck => with_rep(inst, |r| git_check(name, inst, r, opts)),
        Command::Gr => with_rep(inst, |r| gr(name, inst, r, opts)),
        Command::Decompose => decompose(name, inst),
        Command::Couple => couple(name, inst),
        Command::Mu => mu(name, inst),
        Command::FlagWeight => flag(name, inst),
        Command::SheafTheta => sheaf_theta(name, inst),
        Command::Triple => triple(name, inst),
        Command::Sectional => sectional(name, inst),
        Command::Gieseker => gieseker(name, inst),
        Command::Bounds => bounds(name, inst),
    }
}

/// Runs `f` on the representation whatever its field.
fn with_rep(inst: &Instance, f: impl Fn(&dyn RepView) -> Result<Report>) -> Result<Report> {
    match inst.representation.as_ref().ok_or_else(|| anyhow!("this command needs a representation section"))? {
        AnyRep::Q(r) => f(r),
        AnyRep::Fp(r) => f(r),
    }
}

/// Field-erased view of a representation, enough for the report layer.
pub trait RepView {
    fn king(&self, pbar: &[usize], b: &[Rat], mode: Mode, budget: u128) -> Result<ErasedVerdict>;
    fn git(&self, b: &[Rat], source: FlagSource, budget: u128) -> Result<ErasedVerdict>;
    fn gr(&self, b: &[Rat], budget: u128) -> Result<Vec<(Vec<usize>, Vec<String>)>>;
    fn dims(&self) -> Vec<usize>;
    fn is_finite(&self) -> bool;
    fn point(&self) -> Result<TuplePoint>;
}

pub struct ErasedVerdict {
    pub status: Status,
    pub witness: Option<(Vec<usize>, String)>,
    pub theta: Option<Rat>,
    pub completeness: String,
    pub candidates: usize,
}

fn vector<F: Field>(field: &F, v: &[F::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| rat_to_string(&field.to_rat(x))).collect();
    format!("({})", parts.join(", "))
}

fn subrep_text<F: Field>(field: &F, s: &SubRep<F::Elem>) -> String {
    s.spaces
        .iter()
        .enumerate()
        .map(|(v, sp)| {
            let basis: Vec<String> = sp.basis().iter().map(|b| vector(field, b)).collect();
            format!("v{}: <{}>", v + 1, basis.join(", "))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn matrix_text<F: Field>(field: &F, m: &Matrix<F::Elem>) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|r| vector(field, m.row(r))).collect();
    format!("[{}]", rows.join(", "))
}

fn erase<F: Field>(field: &F, v: Verdict<F::Elem>) -> ErasedVerdict {
    ErasedVerdict {
        status: v.status,
        witness: v.witness.map(|w| (w.dims(), subrep_text(field, &w))),
        theta: v.theta,
        completeness: match v.completeness {
            Completeness::Exhaustive => "exhaustive",
            Completeness::LatticeOnly => "lattice-only",
            Completeness::Sampled => "sampled",
        }
        .into(),
        candidates: v.candidates,
    }
}

impl<F: Field + 'static> RepView for QuiverRep<F> {
    fn king(&self, pbar: &[usize], b: &[Rat], mode: Mode, budget: u128) -> Result<ErasedVerdict> {
        Ok(erase(self.field(), check_semistable_with(self, pbar, b, mode, budget)?))
    }

    fn git(&self, b: &[Rat], source: FlagSource, budget: u128) -> Result<ErasedVerdict> {
        Ok(erase(self.field(), core_git_check(self, b, source, budget)?))
    }

    fn gr(&self, b: &[Rat], budget: u128) -> Result<Vec<(Vec<usize>, Vec<String>)>> {
        Ok(gr_jordan_holder(self, b, budget)?
            .iter()
            .map(|f| {
                let maps = f
                    .quiver()
                    .arrows()
                    .iter()
                    .zip(f.maps())
                    .map(|(a, m)| format!("{a} {}", matrix_text(f.field(), m)))
                    .collect();
                (f.dims().to_vec(), maps)
            })
            .collect())
    }

    fn dims(&self) -> Vec<usize> {
        QuiverRep::dims(self).to_vec()
    }

    fn is_finite(&self) -> bool {
        self.field().elements().is_some()
    }

    fn point(&self) -> Result<TuplePoint> {
        Ok(self.to_tuple_point()?)
    }
}

fn list<T: Display>(xs: impl IntoIterator<Item = T>) -> String {
    format!("[{}]", xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn rat_list<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> String {
    list(xs.into_iter().map(rat_to_string))
}

fn sparse<K: Display>(m: impl IntoIterator<Item = (K, Rat)>) -> String {
    let parts: Vec<String> = m.into_iter().map(|(k, v)| format!("{k}: {}", rat_to_string(&v))).collect();
    format!("{{{}}}", parts.join(", "))
}

fn need<'a, T>(x: &'a Option<T>, what: &str) -> Result<&'a T> {
    x.as_ref().ok_or_else(|| anyhow!("this command needs {what}"))
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Stable => "stable",
        Status::StrictlySemistable => "strictly-semistable",
        Status::Unstable => "unstable",
    }
}

fn verdict_report(name: &str, v: ErasedVerdict) -> Report {
    let mut r = Report::new(name, status_text(v.status));
    r.violation = v.status == Status::Unstable;
    r.push("completeness", &v.completeness);
    r.push("candidates", v.candidates);
    if let Some(t) = &v.theta {
        r.push("theta", rat_to_string(t));
    }
    if let Some((dims, text)) = &v.witness {
        r.push("witness_dims", list(dims));
        r.push("witness", text);
    }
    r
}

fn tree_check(inst: &Instance) -> Report {
    let verdict = inst.quiver.validate_tree();
    let mut r = Report::new("tree-check", if verdict.is_tree { "tree" } else { "not-a-tree" })
        .field("vertices", inst.quiver.n())
        .field("arrows", list(inst.quiver.arrows()));
    if !verdict.diagnostic.is_empty() {
        r.push("diagnostic", &verdict.diagnostic);
    }
    if let Ok(leaf) = inst.quiver.find_leaf() {
        r.push("leaf", leaf);
    }
    r
}

fn king_check(name: &str, inst: &Instance, rep: &dyn RepView, opts: &Options) -> Result<Report> {
    let b = need(&inst.b, "b")?;
    let pbar = inst.pbar.clone().unwrap_or_else(|| rep.dims());
    let choice = opts.mode.unwrap_or(if rep.is_finite() { ModeChoice::ExhaustiveFf } else { ModeChoice::Lattice });
    let mode = match choice {
        ModeChoice::ExhaustiveFf => Mode::ExhaustiveFf,
        ModeChoice::Lattice => Mode::Lattice,
        ModeChoice::Randomized => Mode::Randomized { seed: opts.seed.unwrap_or(0), samples: opts.samples },
    };
    Ok(verdict_report(name, rep.king(&pbar, b, mode, opts.budget)?))
}

fn git_check(name: &str, inst: &Instance, rep: &dyn RepView, opts: &Options) -> Result<Report> {
    let b = need(&inst.b, "b")?;
    if inst.pbar.as_ref().is_some_and(|p| *p != rep.dims()) {
        bail!("git-check uses the dimension vector as P̄");
    }
    let choice = opts.mode.unwrap_or(if rep.is_finite() { ModeChoice::ExhaustiveFf } else { ModeChoice::Lattice });
    let source = match choice {
        ModeChoice::ExhaustiveFf => FlagSource::ExhaustiveFf,
        ModeChoice::Lattice => FlagSource::LatticeAdapted,
        ModeChoice::Randomized => bail!("git-check supports --mode exhaustive-ff or lattice"),
    };
    let mut r = verdict_report(name, rep.git(b, source, opts.budget)?);
    for (k, _) in r.fields.iter_mut() {
        if k == "candidates" {
            *k = "compatible_flags".into();
        }
    }
    Ok(r)
}

fn gr(name: &str, inst: &Instance, rep: &dyn RepView, opts: &Options) -> Result<Report> {
    let b = need(&inst.b, "b")?;
    let factors = rep.gr(b, opts.budget)?;
    let mut r = Report::new(name, if factors.len() == 1 { "stable" } else { "strictly-semistable" });
    r.push("factors", factors.len());
    for (k, (dims, maps)) in factors.iter().enumerate() {
        r.push(&format!("factor[{}]", k + 1), format!("dims {} maps {}", list(dims), maps.join("; ")));
    }
    Ok(r)
}

fn decompose(name: &str, inst: &Instance) -> Result<Report> {
    let pair = need(&inst.pair, "a pair section")?;
    let dec = decompose_pair(&pair.f, &pair.delta, &pair.gamma)?;
    let ok = dec.reconstructs(&pair.delta, &pair.gamma);
    let mk = &dec.markers;
    Ok(Report::new(name, if ok { "OK" } else { "FAILED" })
        .field("mu", rat_to_string(&mu_hom(&pair.f, &pair.delta, &pair.gamma)?))
        .field("witness", format!("({}, {})", dec.witness.0, dec.witness.1))
        .field("markers", format!("i0={} j0={} i0'={} j0'={}", mk.i0, mk.j0, mk.i0_prime, mk.j0_prime))
        .field("pure_alpha", sparse(dec.pure_alpha.clone()))
        .field("pure_beta", sparse(dec.pure_beta.clone()))
        .field("paired", sparse(dec.paired.iter().map(|(&(i, j), c)| (format!("({i},{j})"), c.clone()))))
        .field("reconstruction", if ok { "OK" } else { "FAILED" }))
}

fn tuple_mu(point: &TuplePoint, lambda: &[thetastab_core::weights::WeightVector], b: &[Rat]) -> Result<Rat> {
    let mut total = Rat::from_integer(0.into());
    for ((a, f), ba) in point.quiver().arrows().iter().zip(point.homs()).zip(b) {
        total += ba * mu_hom(f, &lambda[a.tail - 1], &lambda[a.head - 1])?;
    }
    Ok(total)
}

fn couple(name: &str, inst: &Instance) -> Result<Report> {
    let point = with_point(inst)?;
    let lambda = need(&inst.lambda, "lambda")?;
    let td = decompose_tuple(&point, lambda)?;
    let rebuilt = td.reconstruct()?;
    let ok = rebuilt.iter().zip(lambda).all(|(r, l)| r == l.entries());
    let coeffs = td.coeffs.iter().map(|(j, c)| (list(&j.0), c.clone()));
    let mut r = Report::new(name, if ok { "OK" } else { "FAILED" })
        .field("terms", td.coeffs.len())
        .field("coefficients", sparse(coeffs))
        .field("reconstruction", if ok { "OK" } else { "FAILED" });
    if let Some(b) = &inst.b {
        r.push("mu", rat_to_string(&tuple_mu(&point, lambda, b)?));
        r.push("mu_along", rat_to_string(&mu_along(&point, &td, b)?));
    }
    Ok(r)
}

fn with_point(inst: &Instance) -> Result<TuplePoint> {
    match need(&inst.representation, "a representation section")? {
        AnyRep::Q(r) => RepView::point(r),
        AnyRep::Fp(r) => RepView::point(r),
    }
}

fn mu(name: &str, inst: &Instance) -> Result<Report> {
    if let Some(pair) = &inst.pair {
        let first = mu_hom(&pair.f, &pair.delta, &pair.gamma)?;
        let mut r = Report::new(name, "OK");
        match &pair.second {
            None => {
                r.push("values", rat_to_string(&first));
                r.push("mu", rat_to_string(&first));
            }
            Some((d2, g2)) => {
                let rep = check_additivity(&pair.f, &pair.delta, &pair.gamma, d2, g2)?;
                r.push("values", rat_list([&rep.mu_first, &rep.mu_second, &rep.mu_product]));
                r.push("mu_first", rat_to_string(&rep.mu_first));
                r.push("mu_second", rat_to_string(&rep.mu_second));
                r.push("mu_product", rat_to_string(&rep.mu_product));
                r.push("additive", rep.additive);
            }
        }
        return Ok(r);
    }
    let point = with_point(inst)?;
    let lambda = need(&inst.lambda, "a pair section or lambda")?;
    let b = need(&inst.b, "b")?;
    let m = tuple_mu(&point, lambda, b)?;
    Ok(Report::new(name, "OK").field("values", rat_to_string(&m)).field("mu", rat_to_string(&m)))
}

fn flag(name: &str, inst: &Instance) -> Result<Report> {
    let point = with_point(inst)?;
    let j = need(&inst.multi_index, "multi_index")?;
    let b = need(&inst.b, "b")?;
    let w = flag_weight(&point, j, b)?;
    Ok(Report::new(name, if w.equal { "equal" } else { "strict" })
        .field("multi_index", list(&j.0))
        .field("closed_form", rat_to_string(&w.closed_form))
        .field("exact_mu", rat_to_string(&w.exact_mu))
        .field("basic", is_basic(j, &point)?))
}

fn sign_text(p: &RatPoly) -> &'static str {
    match p.signum() {
        std::cmp::Ordering::Less => "negative",
        std::cmp::Ordering::Equal => "zero",
        std::cmp::Ordering::Greater => "positive",
    }
}

fn sheaf_theta(name: &str, inst: &Instance) -> Result<Report> {
    let params = need(&inst.sheaf, "a sheaf section")?;
    let v = semistable_profiles(params, &inst.profiles)?;
    let verdict = match v.status {
        ProfileStatus::NoViolation => "no-violation",
        ProfileStatus::Boundary => "boundary",
        ProfileStatus::StrictViolation => "strict-violation",
    };
    let mut r = Report::new(name, verdict).field("scope", "relative to the supplied profiles");
    r.violation = v.status == ProfileStatus::StrictViolation;
    for (k, p) in inst.profiles.iter().enumerate() {
        r.push(&format!("theta[{k}]"), theta_sheaf(params, p)?);
    }
    if let (Some(w), Some(t)) = (v.witness, &v.theta) {
        r.push("witness", w);
        r.push("max_theta", t);
    }
    Ok(r)
}

fn triple(name: &str, inst: &Instance) -> Result<Report> {
    let t = need(&inst.triple, "a triple section")?;
    let theta = triple_theta(&t.sigma1, &t.sigma2, &t.ambient, &t.sub)?;
    let mut r = Report::new(name, sign_text(&theta)).field("theta", &theta);
    r.violation = theta.is_positive();
    Ok(r)
}

fn sectional(name: &str, inst: &Instance) -> Result<Report> {
    let data = need(&inst.sectional, "a sectional section")?;
    let delta = sectional_delta(&inst.quiver, data)?;
    let mut r = Report::new(name, sign_text(&RatPoly::constant(delta.clone()))).field("delta", rat_to_string(&delta));
    r.violation = delta > Rat::from_integer(0.into());
    Ok(r)
}

fn gieseker(name: &str, inst: &Instance) -> Result<Report> {
    let gd = need(&inst.gieseker, "a gieseker section")?;
    let b = need(&inst.b, "b")?;
    let g = gieseker_l(&inst.quiver, b, gd)?;
    let alpha: BTreeMap<String, Rat> = g
        .alpha
        .iter()
        .map(|(&(v, k), a)| (format!("({v}, {})", inst.quiver.arrows()[k]), a.clone()))
        .collect();
    Ok(Report::new(name, "OK").field("l", rat_list(&g.l)).field("alpha", sparse(alpha)))
}

fn bounds(name: &str, inst: &Instance) -> Result<Report> {
    if inst.bounds_i0.is_none() && inst.lps.is_none() {
        bail!("this command needs bounds.i0 or bounds.lps");
    }
    let mut r = Report::new(name, "OK");
    if let Some(i0) = inst.bounds_i0 {
        let params = need(&inst.sheaf, "a sheaf section for bounds.i0")?;
        let bb = boundedness_bound(params, i0)?;
        r.push("C", rat_to_string(&bb.c));
        r.push("slope_bound", format!("mu_max(E_{i0}) <= mu_{i0} + {}", rat_to_string(&bb.c)));
        r.push("degenerate", bb.degenerate);
        if bb.degenerate {
            r.verdict = "degenerate".into();
        }
    }
    if let Some(l) = &inst.lps {
        r.push("lps", rat_to_string(&lps_bound(l.rk, &l.mu_max, &l.mu, &l.m, l.dim_x)?));
    }
    Ok(r)
}
