//! Split super vector bundles presented by formal Chern roots.
//!
//! A bundle `E = E_0 + E_1` of rank `r|s` is stored as the roots `a_i` of the
//! even part `E_0` and the roots `m_j` of the *even* bundle `P E_1`. Roots are
//! rational multiples of the degree-1 generator of the model, so they never
//! carry a `P` factor. The twisted roots of `E_1` itself would be `-P m_j`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chowring::{ChowModel, GradedElement};
use crate::error::{Error, Result};
use crate::scalar::{rat, rational_vec_serde, Rational, RationalJson, SuperScalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperBundle {
    model: ChowModel,
    even_roots: Vec<Rational>,
    odd_roots: Vec<Rational>,
}

impl SuperBundle {
    /// Roots are coefficients of the degree-1 generator. On a point every
    /// root must be zero.
    pub fn new(model: ChowModel, even_roots: Vec<Rational>, odd_roots: Vec<Rational>) -> Result<Self> {
        if model.top_degree() == 0 {
            if let Some(r) = even_roots.iter().chain(&odd_roots).find(|r| !r.is_zero()) {
                return Err(Error::InvalidRoot(format!(
                    "{model} has no degree-1 classes, got root {r}"
                )));
            }
        }
        Ok(Self { model, even_roots, odd_roots })
    }

    /// Bundle on a genus-`g` curve with roots `d_i w` and `e_j w`.
    pub fn on_curve(genus: u32, even_degs: &[i64], odd_degs: &[i64]) -> Self {
        Self {
            model: ChowModel::Curve { genus },
            even_roots: even_degs.iter().map(|&d| rat(d)).collect(),
            odd_roots: odd_degs.iter().map(|&d| rat(d)).collect(),
        }
    }

    pub fn zero(model: ChowModel) -> Self {
        Self { model, even_roots: vec![], odd_roots: vec![] }
    }

    /// The structure sheaf, rank 1|0 with root 0.
    pub fn trivial(model: ChowModel) -> Self {
        Self { model, even_roots: vec![Rational::zero()], odd_roots: vec![] }
    }

    /// Even line bundle with first Chern class `c * gen`.
    pub fn line(model: ChowModel, c: Rational) -> Result<Self> {
        Self::new(model, vec![c], vec![])
    }

    /// Odd line bundle `P M` where `M` has first Chern class `c * gen`.
    pub fn odd_line(model: ChowModel, c: Rational) -> Result<Self> {
        Self::new(model, vec![], vec![c])
    }

    pub fn model(&self) -> ChowModel {
        self.model
    }

    pub fn even_roots(&self) -> &[Rational] {
        &self.even_roots
    }

    pub fn odd_roots(&self) -> &[Rational] {
        &self.odd_roots
    }

    /// `(rk E_0, rk P E_1)`.
    pub fn rank(&self) -> (usize, usize) {
        (self.even_roots.len(), self.odd_roots.len())
    }

    pub fn even_degree(&self) -> Rational {
        self.even_roots.iter().sum()
    }

    pub fn odd_degree(&self) -> Rational {
        self.odd_roots.iter().sum()
    }

    fn root(&self, c: &Rational) -> GradedElement {
        GradedElement::degree_one(self.model, c.clone())
    }

    /// `ch(E) = sum_i e^(a_i) - P sum_j e^(m_j)`.
    pub fn chern_character(&self) -> GradedElement {
        let sum_exp = |roots: &[Rational]| {
            roots.iter().fold(GradedElement::zero(self.model), |acc, c| {
                acc.plus(&self.root(c).exp_nilpotent().expect("roots have degree 1"))
            })
        };
        let even = sum_exp(&self.even_roots);
        let odd = sum_exp(&self.odd_roots);
        even.minus(&odd.scale(&SuperScalar::pi()))
    }

    /// `c_t(E) = P^s prod_i (1 + a_i) / prod_j (1 + m_j)`; the degree-`i`
    /// coefficient is `c_i(E)`.
    pub fn chern_total(&self) -> GradedElement {
        let one = GradedElement::one(self.model);
        let prod = |roots: &[Rational]| {
            roots
                .iter()
                .fold(one.clone(), |acc, c| acc.times(&one.plus(&self.root(c))))
        };
        let denom = prod(&self.odd_roots)
            .series_invert()
            .expect("leading coefficient is 1");
        let parity = SuperScalar::pi().pow(self.odd_roots.len() as u32);
        prod(&self.even_roots).times(&denom).scale(&parity)
    }

    /// Degree-1 part of [`Self::chern_total`].
    pub fn c1(&self) -> SuperScalar {
        self.chern_total().coeff(1)
    }

    /// Multiplicative Todd class: `x / (1 - e^-x)` on each even root, and
    /// `ch sigma_1(L*) = 1 + e^-m` on each odd line.
    pub fn todd(&self) -> GradedElement {
        let one = GradedElement::one(self.model);
        let even = self
            .even_roots
            .iter()
            .fold(one.clone(), |acc, c| acc.times(&todd_even_factor(&self.root(c))));
        self.odd_roots.iter().fold(even, |acc, c| {
            let e = self.root(&-c).exp_nilpotent().expect("roots have degree 1");
            acc.times(&one.plus(&e))
        })
    }

    /// `ch sigma_1(E) = prod_j (1 + e^(m_j))` for a purely odd `E`.
    pub fn sigma1(&self) -> Result<GradedElement> {
        if !self.even_roots.is_empty() {
            let (even, odd) = self.rank();
            return Err(Error::NotPurelyOdd { even, odd });
        }
        let one = GradedElement::one(self.model);
        Ok(self.odd_roots.iter().fold(one.clone(), |acc, c| {
            let e = self.root(c).exp_nilpotent().expect("roots have degree 1");
            acc.times(&one.plus(&e))
        }))
    }

    pub fn dual(&self) -> Self {
        Self {
            model: self.model,
            even_roots: self.even_roots.iter().map(|c| -c).collect(),
            odd_roots: self.odd_roots.iter().map(|c| -c).collect(),
        }
    }

    pub fn pi_shift(&self) -> Self {
        Self {
            model: self.model,
            even_roots: self.odd_roots.clone(),
            odd_roots: self.even_roots.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        let cat = |a: &[Rational], b: &[Rational]| a.iter().chain(b).cloned().collect();
        Ok(Self {
            model: self.model,
            even_roots: cat(&self.even_roots, &other.even_roots),
            odd_roots: cat(&self.odd_roots, &other.odd_roots),
        })
    }

    /// Pairwise root sums; parities add, so odd (x) odd lands in the even part.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        let sums = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
            a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
        };
        let mut even_roots = sums(&self.even_roots, &other.even_roots);
        even_roots.extend(sums(&self.odd_roots, &other.odd_roots));
        let mut odd_roots = sums(&self.even_roots, &other.odd_roots);
        odd_roots.extend(sums(&self.odd_roots, &other.even_roots));
        Ok(Self { model: self.model, even_roots, odd_roots })
    }

    fn same_model(&self, other: &Self) -> Result<()> {
        if self.model == other.model {
            Ok(())
        } else {
            Err(Error::ModelMismatch {
                left: self.model.to_string(),
                right: other.model.to_string(),
            })
        }
    }
}

/// `[sum_{i>=1} (-x)^(i-1) / i!]^-1`, truncated in the model of `x`.
fn todd_even_factor(x: &GradedElement) -> GradedElement {
    let model = x.model();
    let minus_x = x.neg();
    let mut series = GradedElement::zero(model);
    let mut power = GradedElement::one(model);
    let mut factorial = rat(1);
    for i in 1..=(model.top_degree() as i64 + 1) {
        factorial *= rat(i);
        series = series.plus(&power.scale_rational(&(rat(1) / &factorial)));
        power = power.times(&minus_x);
    }
    series.series_invert().expect("leading coefficient is 1")
}

/// JSON form of a bundle. Either explicit roots, one list of degree-1
/// coefficients per root, or the curve shorthand of root degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BundleSpec {
    Roots {
        model: ChowModel,
        even_roots: Vec<Vec<RationalJson>>,
        odd_roots: Vec<Vec<RationalJson>>,
    },
    CurveDegrees {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        model: Option<ChowModel>,
        #[serde(with = "rational_vec_serde")]
        even_degs: Vec<Rational>,
        #[serde(with = "rational_vec_serde")]
        odd_degs: Vec<Rational>,
    },
}

impl BundleSpec {
    /// Builds the bundle, taking the model from `fallback` when the spec
    /// omits it.
    pub fn resolve(self, fallback: Option<ChowModel>) -> Result<SuperBundle> {
        match self {
            BundleSpec::Roots { model, even_roots, odd_roots } => {
                let flatten = |roots: Vec<Vec<RationalJson>>| -> Result<Vec<Rational>> {
                    roots
                        .into_iter()
                        .map(|mut r| match r.len() {
                            1 => Ok(r.remove(0).0),
                            n => Err(Error::InvalidRoot(format!(
                                "expected one degree-1 coefficient per root, got {n}"
                            ))),
                        })
                        .collect()
                };
                SuperBundle::new(model, flatten(even_roots)?, flatten(odd_roots)?)
            }
            BundleSpec::CurveDegrees { model, even_degs, odd_degs } => {
                let model = model.or(fallback).ok_or_else(|| {
                    Error::Malformed("bundle shorthand needs a curve model".into())
                })?;
                if !matches!(model, ChowModel::Curve { .. }) {
                    return Err(Error::Malformed(format!(
                        "degree shorthand is only for curve models, got {model}"
                    )));
                }
                SuperBundle::new(model, even_degs, odd_degs)
            }
        }
    }
}

impl From<&SuperBundle> for BundleSpec {
    fn from(b: &SuperBundle) -> Self {
        let wrap = |v: &[Rational]| v.iter().map(|c| vec![RationalJson(c.clone())]).collect();
        BundleSpec::Roots {
            model: b.model,
            even_roots: wrap(&b.even_roots),
            odd_roots: wrap(&b.odd_roots),
        }
    }
}

impl Serialize for SuperBundle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BundleSpec::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SuperBundle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        BundleSpec::deserialize(d)?
            .resolve(None)
            .map_err(serde::de::Error::custom)
    }
}
