//! Instance files: one JSON document per problem; each subcommand reads the
//! sections it needs.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use thetastab_core::exactpoly::{parse_rat, Rat, RatPoly};
use thetastab_core::kingrep::QuiverRep;
use thetastab_core::linalg::{Field, Matrix, PrimeField, Rationals};
use thetastab_core::quiver::{Arrow, Quiver};
use thetastab_core::sheafcalc::{GiesekerData, SectionalData, SheafParams, SubProfile, TripleData};
use thetastab_core::weights::{HomPoint, MultiIndex, WeightVector};

/// A number written either as a JSON integer or as a rational string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    fn to_rat(&self) -> Result<Rat> {
        match self {
            Num::Int(n) => Ok(Rat::from_integer((*n).into())),
            Num::Str(s) => Ok(parse_rat(s)?),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDto {
    pub n: usize,
    pub arrows: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDto {
    pub field: String,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<Num>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDto {
    pub f: Vec<Vec<Num>>,
    pub delta: Vec<Num>,
    pub gamma: Vec<Num>,
    pub delta2: Option<Vec<Num>>,
    pub gamma2: Option<Vec<Num>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafDto {
    pub dim_x: usize,
    pub pbar: Vec<Vec<Num>>,
    pub ranks: Vec<Num>,
    pub sigma: Vec<Vec<Num>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDto {
    pub hilbert: Vec<Vec<Num>>,
    pub ranks: Vec<Num>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDataDto {
    pub p1: Vec<Num>,
    pub r1: Num,
    pub p2: Vec<Num>,
    pub r2: Num,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDto {
    pub sigma1: Vec<Num>,
    pub sigma2: Vec<Num>,
    pub ambient: TripleDataDto,
    pub sub: TripleDataDto,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionalDto {
    pub s: Vec<Num>,
    pub chi: Vec<Num>,
    pub rk_e: Vec<Num>,
    pub section_dims: Vec<Num>,
    pub rk_f: Vec<Num>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GiesekerDto {
    pub p: Vec<Num>,
    pub sigma_m: Vec<Num>,
    pub r: Vec<Num>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LpsDto {
    pub rk: u64,
    pub mu_max: Num,
    pub mu: Num,
    pub m: Num,
    pub dim_x: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDto {
    pub i0: Option<usize>,
    pub lps: Option<LpsDto>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDto {
    pub quiver: QuiverDto,
    pub representation: Option<RepresentationDto>,
    pub b: Option<Vec<Num>>,
    pub pbar: Option<Vec<usize>>,
    pub pair: Option<PairDto>,
    pub multi_index: Option<Vec<usize>>,
    pub lambda: Option<Vec<Vec<Num>>>,
    pub sheaf: Option<SheafDto>,
    #[serde(default)]
    pub profiles: Vec<ProfileDto>,
    pub triple: Option<TripleDto>,
    pub sectional: Option<SectionalDto>,
    pub gieseker: Option<GiesekerDto>,
    pub bounds: Option<BoundsDto>,
}

#[derive(Clone, Debug)]
pub enum AnyRep {
    Q(QuiverRep<Rationals>),
    Fp(QuiverRep<PrimeField>),
}

#[derive(Clone, Debug)]
pub struct PairData {
    pub f: HomPoint,
    pub delta: WeightVector,
    pub gamma: WeightVector,
    pub second: Option<(WeightVector, WeightVector)>,
}

#[derive(Clone, Debug)]
pub struct TripleInput {
    pub sigma1: RatPoly,
    pub sigma2: RatPoly,
    pub ambient: TripleData,
    pub sub: TripleData,
}

#[derive(Clone, Debug)]
pub struct LpsInput {
    pub rk: u64,
    pub mu_max: Rat,
    pub mu: Rat,
    pub m: Rat,
    pub dim_x: usize,
}

/// A parsed and cross-checked instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub quiver: Quiver,
    pub representation: Option<AnyRep>,
    pub b: Option<Vec<Rat>>,
    pub pbar: Option<Vec<usize>>,
    pub pair: Option<PairData>,
    pub multi_index: Option<MultiIndex>,
    pub lambda: Option<Vec<WeightVector>>,
    pub sheaf: Option<SheafParams>,
    pub profiles: Vec<SubProfile>,
    pub triple: Option<TripleInput>,
    pub sectional: Option<SectionalData>,
    pub gieseker: Option<GiesekerData>,
    pub bounds_i0: Option<usize>,
    pub lps: Option<LpsInput>,
}

pub fn parse_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_instance_str(&text)
}

pub fn parse_instance_str(text: &str) -> Result<Instance> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let dto: InstanceDto = serde_path_to_error::deserialize(de)
        .map_err(|e| anyhow!("parse error at `{}`: {}", e.path(), e.inner()))?;
    validate(dto)
}

fn rats(xs: &[Num], what: &str) -> Result<Vec<Rat>> {
    xs.iter().map(|x| x.to_rat()).collect::<Result<_>>().with_context(|| format!("in {what}"))
}

fn poly(xs: &[Num], what: &str) -> Result<RatPoly> {
    Ok(RatPoly::from_coeffs(rats(xs, what)?))
}

fn polys(xss: &[Vec<Num>], what: &str) -> Result<Vec<RatPoly>> {
    xss.iter().map(|x| poly(x, what)).collect()
}

fn weight(xs: &[Num], what: &str) -> Result<WeightVector> {
    WeightVector::new(rats(xs, what)?).with_context(|| format!("{what} must be ascending with sum 0"))
}

fn parse_arrow_key(key: &str) -> Result<Arrow> {
    let (t, h) = key.split_once("->").ok_or_else(|| anyhow!("matrix key `{key}` is not of the form t->h"))?;
    let t = t.trim().parse().with_context(|| format!("matrix key `{key}`"))?;
    let h = h.trim().parse().with_context(|| format!("matrix key `{key}`"))?;
    Ok(Arrow { tail: t, head: h })
}

fn build_rep<F: Field>(field: F, quiver: &Quiver, dto: &RepresentationDto) -> Result<QuiverRep<F>> {
    if dto.dims.len() != quiver.n() {
        bail!("representation has {} dimensions for {} vertices", dto.dims.len(), quiver.n());
    }
    let mut by_arrow = BTreeMap::new();
    for (key, rows) in &dto.matrices {
        let a = parse_arrow_key(key)?;
        if quiver.arrow_index(a).is_none() {
            bail!("matrix given for {a}, which is not an arrow of the quiver");
        }
        by_arrow.insert(a, rows);
    }
    let mut maps = Vec::new();
    for &a in quiver.arrows() {
        let (r, c) = (dto.dims[a.head - 1], dto.dims[a.tail - 1]);
        let rows = match by_arrow.get(&a) {
            Some(rows) => *rows,
            None if r * c == 0 => {
                maps.push(Matrix::zeros(&field, r, c));
                continue;
            }
            None => bail!("missing matrix for arrow {a}"),
        };
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            bail!("matrix for arrow {a} must be {r}x{c}");
        }
        let mut data = Vec::with_capacity(r);
        for row in rows {
            let row: Vec<F::Elem> = row
                .iter()
                .map(|x| Ok(field.from_rat(&x.to_rat()?)?))
                .collect::<Result<_>>()
                .with_context(|| format!("matrix for arrow {a}"))?;
            data.push(row);
        }
        maps.push(if r == 0 { Matrix::zeros(&field, 0, c) } else { Matrix::from_rows(r, c, data)? });
    }
    Ok(QuiverRep::new(quiver.clone(), field, dto.dims.clone(), maps)?)
}

fn parse_field(name: &str) -> Result<Option<PrimeField>> {
    if name == "Q" {
        return Ok(None);
    }
    let p: u64 = name
        .strip_prefix('F')
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| anyhow!("unknown field `{name}`; use Q or Fp for a prime p"))?;
    Ok(Some(PrimeField::new(p)?))
}

fn validate(dto: InstanceDto) -> Result<Instance> {
    let arrows: Vec<Arrow> = dto.quiver.arrows.iter().map(|&[t, h]| Arrow { tail: t, head: h }).collect();
    let quiver = Quiver::new(dto.quiver.n, arrows).context("invalid quiver")?;

    let representation = match &dto.representation {
        None => None,
        Some(r) => Some(match parse_field(&r.field)? {
            None => AnyRep::Q(build_rep(Rationals, &quiver, r)?),
            Some(f) => AnyRep::Fp(build_rep(f, &quiver, r)?),
        }),
    };

    let b = dto.b.as_deref().map(|b| rats(b, "b")).transpose()?;
    if let Some(b) = &b {
        if b.len() != quiver.arrows().len() {
            bail!("b has {} entries for {} arrows", b.len(), quiver.arrows().len());
        }
    }
    if let Some(p) = &dto.pbar {
        if p.len() != quiver.n() {
            bail!("pbar has {} entries for {} vertices", p.len(), quiver.n());
        }
    }

    let pair = match &dto.pair {
        None => None,
        Some(p) => {
            let q = p.f.len();
            let cols = p.f.first().map_or(0, Vec::len);
            if p.f.iter().any(|r| r.len() != cols) {
                bail!("pair.f rows have different lengths");
            }
            let rows: Vec<Vec<Rat>> = p.f.iter().map(|r| rats(r, "pair.f")).collect::<Result<_>>()?;
            let f = HomPoint::new(Matrix::from_rows(q, cols, rows)?);
            let delta = weight(&p.delta, "pair.delta")?;
            let gamma = weight(&p.gamma, "pair.gamma")?;
            if delta.dim() != cols || gamma.dim() != q {
                bail!("pair.delta must have {cols} entries and pair.gamma {q}");
            }
            let second = match (&p.delta2, &p.gamma2) {
                (None, None) => None,
                (Some(d), Some(g)) => {
                    let (d, g) = (weight(d, "pair.delta2")?, weight(g, "pair.gamma2")?);
                    if d.dim() != cols || g.dim() != q {
                        bail!("pair.delta2 must have {cols} entries and pair.gamma2 {q}");
                    }
                    Some((d, g))
                }
                _ => bail!("pair.delta2 and pair.gamma2 must be given together"),
            };
            Some(PairData { f, delta, gamma, second })
        }
    };

    let multi_index = dto.multi_index.clone().map(MultiIndex);
    let lambda = match &dto.lambda {
        None => None,
        Some(ls) => {
            if ls.len() != quiver.n() {
                bail!("lambda needs one weight vector per vertex");
            }
            Some(
                ls.iter()
                    .enumerate()
                    .map(|(v, l)| weight(l, &format!("lambda at vertex {}", v + 1)))
                    .collect::<Result<_>>()?,
            )
        }
    };

    let sheaf = match &dto.sheaf {
        None => None,
        Some(s) => {
            let b = b.clone().ok_or_else(|| anyhow!("the sheaf section needs b"))?;
            Some(
                SheafParams::new(
                    quiver.clone(),
                    s.dim_x,
                    polys(&s.pbar, "sheaf.pbar")?,
                    rats(&s.ranks, "sheaf.ranks")?,
                    polys(&s.sigma, "sheaf.sigma")?,
                    b,
                )
                .context("invalid sheaf parameters")?,
            )
        }
    };
    let profiles = dto
        .profiles
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let prof = SubProfile { hilbert: polys(&p.hilbert, "profile")?, ranks: rats(&p.ranks, "profile")? };
            if prof.hilbert.len() != quiver.n() || prof.ranks.len() != quiver.n() {
                bail!("profile {k} needs one entry per vertex");
            }
            Ok(prof)
        })
        .collect::<Result<_>>()?;

    let triple = match &dto.triple {
        None => None,
        Some(t) => {
            let data = |d: &TripleDataDto, what: &str| -> Result<TripleData> {
                Ok(TripleData {
                    p1: poly(&d.p1, what)?,
                    r1: d.r1.to_rat()?,
                    p2: poly(&d.p2, what)?,
                    r2: d.r2.to_rat()?,
                })
            };
            Some(TripleInput {
                sigma1: poly(&t.sigma1, "triple.sigma1")?,
                sigma2: poly(&t.sigma2, "triple.sigma2")?,
                ambient: data(&t.ambient, "triple.ambient")?,
                sub: data(&t.sub, "triple.sub")?,
            })
        }
    };

    let sectional = match &dto.sectional {
        None => None,
        Some(s) => Some(SectionalData {
            s: rats(&s.s, "sectional.s")?,
            b: b.clone().ok_or_else(|| anyhow!("the sectional section needs b"))?,
            chi: rats(&s.chi, "sectional.chi")?,
            rk_e: rats(&s.rk_e, "sectional.rk_e")?,
            section_dims: rats(&s.section_dims, "sectional.section_dims")?,
            rk_f: rats(&s.rk_f, "sectional.rk_f")?,
        }),
    };
    let gieseker = match &dto.gieseker {
        None => None,
        Some(g) => Some(GiesekerData {
            p: rats(&g.p, "gieseker.p")?,
            sigma_m: rats(&g.sigma_m, "gieseker.sigma_m")?,
            r: rats(&g.r, "gieseker.r")?,
        }),
    };
    let (bounds_i0, lps) = match &dto.bounds {
        None => (None, None),
        Some(bd) => {
            let lps = match &bd.lps {
                None => None,
                Some(l) => Some(LpsInput {
                    rk: l.rk,
                    mu_max: l.mu_max.to_rat()?,
                    mu: l.mu.to_rat()?,
                    m: l.m.to_rat()?,
                    dim_x: l.dim_x,
                }),
            };
            (bd.i0, lps)
        }
    };

    Ok(Instance {
        quiver,
        representation,
        b,
        pbar: dto.pbar,
        pair,
        multi_index,
        lambda,
        sheaf,
        profiles,
        triple,
        sectional,
        gieseker,
        bounds_i0,
        lps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_king_instance() {
        let text = r#"{"quiver": {"n": 2, "arrows": [[1, 2]]},
            "representation": {"field": "F2", "dims": [1, 1], "matrices": {"1->2": [[1]]}},
            "b": ["1"]}"#;
        let inst = parse_instance_str(text).unwrap();
        match inst.representation.unwrap() {
            AnyRep::Fp(r) => assert_eq!(r.dims(), &[1, 1]),
            AnyRep::Q(_) => panic!("expected a finite field"),
        }
    }

    #[test]
    fn vertex_zero_is_rejected() {
        let err = parse_instance_str(r#"{"quiver": {"n": 2, "arrows": [[0, 2]]}}"#).unwrap_err();
        assert!(format!("{err:#}").contains("quiver"), "{err:#}");
    }

    #[test]
    fn shape_mismatch_names_the_arrow() {
        let text = r#"{"quiver": {"n": 2, "arrows": [[1, 2]]},
            "representation": {"field": "Q", "dims": [1, 2], "matrices": {"1->2": [["1"]]}}}"#;
        let err = parse_instance_str(text).unwrap_err();
        assert!(format!("{err:#}").contains("1->2"), "{err:#}");
    }

    #[test]
    fn parse_errors_carry_the_path() {
        let err = parse_instance_str(r#"{"quiver": {"n": "two", "arrows": []}}"#).unwrap_err();
        let msg = format!("{err:#}");
        assert!(msg.contains("quiver.n") && msg.contains("line 1"), "{msg}");
    }
}
