//! Virtual dimension of the stack of stable supermaps from SUSY curves with
//! Neveu-Schwarz and Ramond punctures into a smooth projective superscheme
//! `𝒴` of dimension `r|s`, in the class `beta = (1 - P) beta_0`.
//!
//! Two independent evaluations are provided:
//!
//! * [`vdim_closed`], the closed formula in `(g, n_NS, n_RR, r, s)` and the
//!   integrals `tau = int ch_1(T_Y)`, `phi_int = int ch_1(F_𝒴)` over `beta_0`;
//! * [`vdim_assembled`], `chi^S(phi^* T_𝒴) - chi^S(G_𝒳)`, where the first term
//!   comes from the Riemann-Roch engine in [`crate::grr`].
//!
//! The odd part of the closed formula is `-(1-g)(s-2) - ...`. A variant with
//! `(s+2)` in place of `(s-2)` appears in the closed form for projective
//! superspace targets; [`OddPartConvention::PrintedProjective`] reproduces it
//! so the resulting inconsistency can be demonstrated.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grr::{chi_super, pullback_tangent, SplitSupercurve, SuperEuler};
use crate::scalar::{frac, rat, rational_serde, Rational, SuperScalar};

/// Genus and puncture counts of the source SUSY curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuliParams {
    pub g: u32,
    #[serde(default)]
    pub n_ns: u32,
    #[serde(default)]
    pub n_rr: u32,
}

impl ModuliParams {
    pub fn new(g: u32, n_ns: u32, n_rr: u32) -> Self {
        Self { g, n_ns, n_rr }
    }

    fn one_minus_g(&self) -> Rational {
        rat(1 - self.g as i64)
    }

    fn half_rr(&self) -> Rational {
        frac(self.n_rr as i64, 2)
    }
}

impl fmt::Display for ModuliParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} n_ns={} n_rr={}", self.g, self.n_ns, self.n_rr)
    }
}

/// Target superscheme and curve class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TargetSpec {
    /// `P^{r|s}` with `beta_0 = d H`: `tau = d(r+1)`, `phi_int = -s d`.
    PSuper { r: u32, s: u32, d: u32 },
    /// Arbitrary `r|s` target given by its two integrals over `beta_0`.
    Custom {
        r: u32,
        s: u32,
        #[serde(with = "rational_serde")]
        tau: Rational,
        #[serde(with = "rational_serde")]
        phi_int: Rational,
    },
    /// A point, `r = s = 0` and `beta = 0`.
    Point,
}

impl TargetSpec {
    pub fn rank(&self) -> (u32, u32) {
        match *self {
            TargetSpec::PSuper { r, s, .. } | TargetSpec::Custom { r, s, .. } => (r, s),
            TargetSpec::Point => (0, 0),
        }
    }

    /// `int_{beta_0} ch_1(T_Y)`.
    pub fn tau(&self) -> Rational {
        match self {
            TargetSpec::PSuper { r, d, .. } => rat(*d as i64 * (*r as i64 + 1)),
            TargetSpec::Custom { tau, .. } => tau.clone(),
            TargetSpec::Point => Rational::zero(),
        }
    }

    /// `int_{beta_0} ch_1(F_𝒴)`.
    pub fn phi_int(&self) -> Rational {
        match self {
            TargetSpec::PSuper { s, d, .. } => rat(-(*s as i64) * *d as i64),
            TargetSpec::Custom { phi_int, .. } => phi_int.clone(),
            TargetSpec::Point => Rational::zero(),
        }
    }

    /// `int_{beta_0} [ch_1(T_Y) - ch_1(F_𝒴)]`.
    pub fn integral(&self) -> Rational {
        self.tau() - self.phi_int()
    }

    /// The equivalent [`TargetSpec::Custom`] description.
    pub fn to_custom(&self) -> TargetSpec {
        let (r, s) = self.rank();
        TargetSpec::Custom { r, s, tau: self.tau(), phi_int: self.phi_int() }
    }
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSpec::PSuper { r, s, d } => write!(f, "P^{{{r}|{s}}} d={d}"),
            TargetSpec::Custom { r, s, tau, phi_int } => {
                write!(f, "custom {r}|{s} tau={tau} phi_int={phi_int}")
            }
            TargetSpec::Point => write!(f, "point"),
        }
    }
}

/// The supercycle `beta = (1 - P) d beta_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperCycleClass {
    pub d: i64,
}

impl SuperCycleClass {
    /// Coefficient of `beta_0`, `(d, -d)` as `body + P soul`.
    pub fn coefficient(&self) -> SuperScalar {
        SuperScalar::from_minus_pair(rat(self.d), rat(self.d))
    }
}

/// Which odd part the closed formula uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OddPartConvention {
    /// `(1 - g)(s - 2)`, forced by `chi^S(phi^* T) - chi^S(G)`.
    #[default]
    Derived,
    /// `(1 - g)(s + 2)`, as printed in the projective-superspace closed form.
    PrintedProjective,
}

impl OddPartConvention {
    fn shift(self) -> i64 {
        match self {
            OddPartConvention::Derived => -2,
            OddPartConvention::PrintedProjective => 2,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            OddPartConvention::Derived => "(1-g)(s-2)",
            OddPartConvention::PrintedProjective => "(1-g)(s+2)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Properness {
    Proper,
    NotProper,
}

/// `chi^S(G_𝒳)` for the deformation sheaf of a punctured SUSY curve:
/// `h^0 = 0`, so this is `-h^1`.
pub fn chi_gauge(p: &ModuliParams) -> SuperEuler {
    let (g, ns, rr) = (rat(p.g as i64), rat(p.n_ns as i64), rat(p.n_rr as i64));
    let even = rat(3) - rat(3) * &g - &ns - &rr;
    let odd = rat(2) - rat(2) * &g - &ns - p.half_rr();
    SuperEuler::from_parts(even, odd)
}

/// Closed virtual-dimension formula with the derived odd part.
pub fn vdim_closed(p: &ModuliParams, t: &TargetSpec) -> SuperScalar {
    vdim_closed_with(p, t, OddPartConvention::Derived)
}

pub fn vdim_closed_with(p: &ModuliParams, t: &TargetSpec, conv: OddPartConvention) -> SuperScalar {
    let (r, s) = t.rank();
    let (r, s) = (rat(r as i64), rat(s as i64));
    let one_minus_g = p.one_minus_g();
    let ns = rat(p.n_ns as i64);
    let integral = t.integral();
    let even = (&r - rat(3)) * &one_minus_g
        + &ns
        + rat(p.n_rr as i64) * (rat(1) + &s / rat(2))
        + &integral;
    let odd = &one_minus_g * (&s + rat(conv.shift())) + &ns + p.half_rr() * (&r + rat(1)) + &integral;
    SuperScalar::new(even, -odd)
}

/// `chi^S(phi^* T_𝒴) - chi^S(G_𝒳)` through the Riemann-Roch engine.
pub fn vdim_assembled(p: &ModuliParams, t: &TargetSpec) -> Result<SuperScalar> {
    let curve = SplitSupercurve::susy(p.g, p.n_rr);
    if !curve.deg_l.is_integer() {
        return Err(Error::NonIntegralTwist(curve.deg_l.to_string()));
    }
    let tangent = pullback_tangent(&curve, t)?;
    let chi_t = chi_super(&curve, &tangent)?;
    Ok(chi_t.0 - chi_gauge(p).0)
}

/// `dim M^spin_{g,n_NS,n_RR}(P^r, d) = (r-3)(1-g) + n_NS + n_RR + d(r+1)`.
pub fn dim_spin_maps(p: &ModuliParams, r: u32, d: u32) -> Rational {
    (rat(r as i64) - rat(3)) * p.one_minus_g()
        + rat(p.n_ns as i64)
        + rat(p.n_rr as i64)
        + rat(d as i64 * (r as i64 + 1))
}

/// Dimension of the bosonic reduction for `P^{r|s}` targets,
/// `dim M^spin + s(d + n_RR/2)`.
pub fn bosonic_dimension(p: &ModuliParams, t: &TargetSpec) -> Result<Rational> {
    match *t {
        TargetSpec::PSuper { r, s, d } => {
            Ok(dim_spin_maps(p, r, d) + rat(s as i64) * (rat(d as i64) + p.half_rr()))
        }
        _ => Err(Error::UnsupportedTarget(format!(
            "bosonic dimension needs a projective superspace, got {t}"
        ))),
    }
}

/// Proper iff `s = 0` or `d = n_RR = 0`.
pub fn properness_hint(t: &TargetSpec, p: &ModuliParams) -> Result<Properness> {
    match *t {
        TargetSpec::PSuper { s, d, .. } => Ok(if s == 0 || (d == 0 && p.n_rr == 0) {
            Properness::Proper
        } else {
            Properness::NotProper
        }),
        _ => Err(Error::UnsupportedTarget(format!(
            "properness hint needs a projective superspace, got {t}"
        ))),
    }
}

/// JSON request: `{"params":{...},"target":{...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VdimRequest {
    pub params: ModuliParams,
    pub target: TargetSpec,
}

/// Everything the calculator knows about one `(params, target)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VdimReport {
    pub params: ModuliParams,
    pub target: TargetSpec,
    pub convention: OddPartConvention,
    pub closed: SuperScalar,
    pub assembled: Option<SuperScalar>,
    #[serde(with = "opt_rational")]
    pub bosonic_dimension: Option<Rational>,
    pub properness_hint: Option<Properness>,
    /// `None` when the assembled path is unavailable (odd `n_RR`).
    pub consistency: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

mod opt_rational {
    use super::*;
    use crate::scalar::RationalJson;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref().map(|r| RationalJson(r.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<RationalJson>::deserialize(d).map(|o| o.map(|r| r.0))
    }
}

impl VdimReport {
    pub fn evaluate(p: &ModuliParams, t: &TargetSpec, conv: OddPartConvention) -> Result<Self> {
        let closed = vdim_closed_with(p, t, conv);
        let mut warnings = Vec::new();
        let assembled = match vdim_assembled(p, t) {
            Ok(v) => Some(v),
            Err(Error::NonIntegralTwist(deg)) => {
                warnings.push(format!(
                    "n_rr = {} is odd: deg F = {deg} is not integral; closed formula evaluated over Q, assembled path skipped",
                    p.n_rr
                ));
                None
            }
            Err(e) => return Err(e),
        };
        let consistency = assembled.as_ref().map(|a| *a == closed);
        let (bosonic_dimension, properness_hint) = match t {
            TargetSpec::PSuper { .. } => (Some(bosonic_dimension(p, t)?), Some(properness_hint(t, p)?)),
            _ => (None, None),
        };
        Ok(Self {
            params: *p,
            target: t.clone(),
            convention: conv,
            closed,
            assembled,
            bosonic_dimension,
            properness_hint,
            consistency,
            warnings,
        })
    }

    /// Human-readable explanation of a failed consistency check.
    pub fn mismatch_note(&self) -> Option<String> {
        if self.consistency != Some(false) {
            return None;
        }
        let assembled = self.assembled.as_ref()?;
        Some(format!(
            "{} {}: closed formula with odd part {} gives {}, but chi^S(phi^*T) - chi^S(G) = {}; \
             the difference requires the odd part {} ({} reading rejected, {} reading accepted)",
            self.params,
            self.target,
            self.convention.describe(),
            self.closed,
            assembled,
            OddPartConvention::Derived.describe(),
            OddPartConvention::PrintedProjective.describe(),
            OddPartConvention::Derived.describe(),
        ))
    }
}

/// Values taken by each axis of an exhaustive sweep over `P^{r|s}` targets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRanges {
    pub g: Vec<u32>,
    pub n_ns: Vec<u32>,
    pub n_rr: Vec<u32>,
    pub r: Vec<u32>,
    pub s: Vec<u32>,
    pub d: Vec<u32>,
}

impl Default for SweepRanges {
    fn default() -> Self {
        Self {
            g: (0..=3).collect(),
            n_ns: (0..=4).collect(),
            n_rr: vec![0, 2, 4, 6],
            r: (1..=4).collect(),
            s: (0..=3).collect(),
            d: (0..=3).collect(),
        }
    }
}

impl SweepRanges {
    /// Points in the order `g, n_ns, n_rr, r, s, d` (last varies fastest).
    pub fn points(&self) -> Vec<(ModuliParams, TargetSpec)> {
        let mut out = Vec::new();
        for &g in &self.g {
            for &n_ns in &self.n_ns {
                for &n_rr in &self.n_rr {
                    for &r in &self.r {
                        for &s in &self.s {
                            for &d in &self.d {
                                out.push((ModuliParams::new(g, n_ns, n_rr), TargetSpec::PSuper { r, s, d }));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub checked: usize,
    pub failures: Vec<VdimReport>,
}

/// Evaluates every sweep point and collects the inconsistent ones.
pub fn consistency_sweep(ranges: &SweepRanges, conv: OddPartConvention) -> Result<SweepOutcome> {
    let mut failures = Vec::new();
    let points = ranges.points();
    for (p, t) in &points {
        let rep = VdimReport::evaluate(p, t, conv)?;
        if rep.consistency == Some(false) {
            failures.push(rep);
        }
    }
    Ok(SweepOutcome { checked: points.len(), failures })
}
