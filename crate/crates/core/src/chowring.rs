//! Truncated graded rings `A(X) (x) Q[P]` for the three bosonic reductions the
//! engine works over: a point, a smooth projective curve of genus `g`, and
//! projective space `P^r`.
//!
//! Each model has one generator per degree, so an element is just a vector of
//! [`SuperScalar`] coefficients indexed by degree. Products drop everything
//! above the top degree; that truncation is exact, not an approximation.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rat, Rational, SuperScalar};

/// Which bosonic variety a ring element lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChowModel {
    /// `A(pt) = Q`.
    Point,
    /// Basis `{1, w}` with `w^2 = 0` and `w` the point class, `int w = 1`.
    Curve { genus: u32 },
    /// Basis `{1, h, ..., h^r}` with `h^(r+1) = 0` and `int h^r = 1`.
    #[serde(rename = "projspace")]
    ProjSpace { r: u32 },
}

impl ChowModel {
    pub fn top_degree(&self) -> usize {
        match *self {
            ChowModel::Point => 0,
            ChowModel::Curve { .. } => 1,
            ChowModel::ProjSpace { r } => r as usize,
        }
    }

    fn ensure_same(&self, other: &ChowModel) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModelMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for ChowModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChowModel::Point => write!(f, "point"),
            ChowModel::Curve { genus } => write!(f, "curve(g={genus})"),
            ChowModel::ProjSpace { r } => write!(f, "P^{r}"),
        }
    }
}

#[derive(Deserialize)]
struct RawElement {
    model: ChowModel,
    coeffs: Vec<SuperScalar>,
}

/// An element of a truncated graded ring, one coefficient per degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElement")]
pub struct GradedElement {
    model: ChowModel,
    coeffs: Vec<SuperScalar>,
}

impl TryFrom<RawElement> for GradedElement {
    type Error = Error;

    fn try_from(raw: RawElement) -> Result<Self> {
        GradedElement::from_coeffs(raw.model, raw.coeffs)
    }
}

impl GradedElement {
    /// Builds an element from per-degree coefficients. Shorter vectors are
    /// padded with zeros; longer ones are rejected.
    pub fn from_coeffs(model: ChowModel, mut coeffs: Vec<SuperScalar>) -> Result<Self> {
        let len = model.top_degree() + 1;
        if coeffs.len() > len {
            return Err(Error::Malformed(format!(
                "{} coefficients for {model}, which has top degree {}",
                coeffs.len(),
                model.top_degree()
            )));
        }
        coeffs.resize(len, SuperScalar::zero());
        Ok(Self { model, coeffs })
    }

    pub fn zero(model: ChowModel) -> Self {
        Self {
            model,
            coeffs: vec![SuperScalar::zero(); model.top_degree() + 1],
        }
    }

    pub fn constant(model: ChowModel, c: SuperScalar) -> Self {
        let mut e = Self::zero(model);
        e.coeffs[0] = c;
        e
    }

    pub fn one(model: ChowModel) -> Self {
        Self::constant(model, SuperScalar::one())
    }

    /// `c * gen^degree`; vanishes when `degree` exceeds the top degree.
    pub fn monomial(model: ChowModel, degree: usize, c: SuperScalar) -> Self {
        let mut e = Self::zero(model);
        if degree <= model.top_degree() {
            e.coeffs[degree] = c;
        }
        e
    }

    /// The degree-1 generator (`w` on a curve, `h` on `P^r`, zero on a point).
    pub fn generator(model: ChowModel) -> Self {
        Self::monomial(model, 1, SuperScalar::one())
    }

    /// `c * gen` for a rational `c`; the shape of every formal Chern root.
    pub fn degree_one(model: ChowModel, c: Rational) -> Self {
        Self::monomial(model, 1, SuperScalar::from_rational(c))
    }

    pub fn model(&self) -> ChowModel {
        self.model
    }

    pub fn coeffs(&self) -> &[SuperScalar] {
        &self.coeffs
    }

    /// Coefficient in `degree`, zero past the top.
    pub fn coeff(&self, degree: usize) -> SuperScalar {
        self.coeffs.get(degree).cloned().unwrap_or_else(SuperScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.model.ensure_same(&other.model)?;
        Ok(self.plus(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.model.ensure_same(&other.model)?;
        Ok(self.minus(other))
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    /// Multiplies every coefficient by a ring scalar.
    pub fn scale(&self, k: &SuperScalar) -> Self {
        self.map(|c| c * k)
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        self.map(|c| c.scale(k))
    }

    /// Truncated convolution product.
    pub fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.model.ensure_same(&other.model)?;
        Ok(self.times(other))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.model);
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }

    /// Multiplicative inverse through the truncated geometric series
    /// `c0^-1 * sum_k (-c0^-1 n)^k` with `n` the positive-degree part.
    pub fn series_invert(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].invert()?;
        let mut nil = self.clone();
        nil.coeffs[0] = SuperScalar::zero();
        let step = nil.scale(&(-&c0_inv));
        let mut term = Self::one(self.model);
        let mut acc = Self::one(self.model);
        for _ in 0..self.model.top_degree() {
            term = term.times(&step);
            acc = acc.plus(&term);
        }
        Ok(acc.scale(&c0_inv))
    }

    /// `sum_k x^k / k!` for `x` with vanishing degree-0 part.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotNilpotent(self.coeffs[0].to_string()));
        }
        let mut term = Self::one(self.model);
        let mut acc = Self::one(self.model);
        for k in 1..=self.model.top_degree() {
            term = term.times(self).scale_rational(&Rational::new(1.into(), k.into()));
            acc = acc.plus(&term);
        }
        Ok(acc)
    }

    /// Pushforward to a point: the top-degree coefficient.
    pub fn integrate(&self) -> SuperScalar {
        self.coeffs[self.model.top_degree()].clone()
    }

    pub(crate) fn plus(&self, other: &Self) -> Self {
        debug_assert_eq!(self.model, other.model);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self { model: self.model, coeffs }
    }

    pub(crate) fn minus(&self, other: &Self) -> Self {
        self.plus(&other.neg())
    }

    pub(crate) fn times(&self, other: &Self) -> Self {
        debug_assert_eq!(self.model, other.model);
        let top = self.model.top_degree();
        let mut coeffs = vec![SuperScalar::zero(); top + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(top + 1 - i).enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Self { model: self.model, coeffs }
    }

    fn map(&self, f: impl Fn(&SuperScalar) -> SuperScalar) -> Self {
        Self {
            model: self.model,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gen = match self.model {
            ChowModel::Curve { .. } => "w",
            _ => "h",
        };
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{gen}")?,
                _ => write!(f, "({c})*{gen}^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Todd class of `P^r`, `(h / (1 - e^-h))^(r+1)`, built from the inverse of
/// `sum_{i>=1} (-h)^(i-1)/i!`.
pub fn todd_projective_space(r: u32) -> GradedElement {
    let model = ChowModel::ProjSpace { r };
    let h = GradedElement::generator(model);
    let mut series = GradedElement::zero(model);
    let mut power = GradedElement::one(model);
    let mut factorial = rat(1);
    for i in 1..=(r as i64 + 1) {
        factorial *= rat(i);
        series = series.plus(&power.scale_rational(&(rat(1) / &factorial)));
        power = power.times(&h.neg());
    }
    series
        .series_invert()
        .expect("leading coefficient is 1")
        .pow(r + 1)
}
