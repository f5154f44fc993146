//! K-classes of a superscheme through their Chern character, together with the
//! twisted structures built from `sigma_1(N*)`: the map `j`, the product `*`
//! and the twisted character `ch^S`.
//!
//! A [`KClass`] is identified with its `ch` image. Over the regular projective
//! reductions handled here `ch` is injective after tensoring with `Q`, so two
//! classes are equal exactly when their images are.

use serde::{Deserialize, Serialize};

use crate::bundle::SuperBundle;
use crate::chowring::{ChowModel, GradedElement};
use crate::error::{Error, Result};
use crate::scalar::{rational_vec_serde, Rational, SuperScalar};

/// Conormal data of `X -> 𝒳`: the Chern roots of the even bundle `P N*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalData {
    pub model: ChowModel,
    #[serde(with = "rational_vec_serde")]
    pub normal_roots: Vec<Rational>,
}

impl NormalData {
    pub fn new(model: ChowModel, normal_roots: Vec<Rational>) -> Self {
        Self { model, normal_roots }
    }

    /// A bosonic superscheme: `N = 0`.
    pub fn bosonic(model: ChowModel) -> Self {
        Self::new(model, vec![])
    }

    /// Split supercurve `O = O_X + P L` over a genus-`g` curve: `N* = P L`.
    pub fn split_supercurve(genus: u32, deg_l: Rational) -> Self {
        Self::new(ChowModel::Curve { genus }, vec![deg_l])
    }

    /// `N*` as a purely odd bundle.
    pub fn conormal_bundle(&self) -> SuperBundle {
        SuperBundle::new(self.model, vec![], self.normal_roots.clone())
            .expect("normal roots are validated by the model")
    }

    /// `N` as a purely odd bundle.
    pub fn normal_bundle(&self) -> SuperBundle {
        self.conormal_bundle().dual()
    }

    /// `ch sigma_1(N*) = prod (1 + e^nu)`.
    pub fn sigma1_normal(&self) -> GradedElement {
        self.conormal_bundle()
            .sigma1()
            .expect("conormal bundle is purely odd")
    }

    fn sigma1_inverse(&self) -> GradedElement {
        // leading coefficient is 2^s
        self.sigma1_normal()
            .series_invert()
            .expect("sigma_1 has invertible leading term")
    }
}

/// A K-class, stored as its Chern character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClass {
    pub model: ChowModel,
    pub ch_image: GradedElement,
}

impl KClass {
    pub fn from_element(ch_image: GradedElement) -> Self {
        Self { model: ch_image.model(), ch_image }
    }

    pub fn of_bundle(e: &SuperBundle) -> Self {
        Self::from_element(e.chern_character())
    }

    pub fn one(model: ChowModel) -> Self {
        Self::from_element(GradedElement::one(model))
    }

    /// Ordinary product (tensor product of bundles).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_element(self.ch_image.ring_mul(&other.ch_image)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_element(self.ch_image.add(&other.ch_image)?))
    }

    fn check(&self, nd: &NormalData) -> Result<()> {
        if self.model == nd.model {
            Ok(())
        } else {
            Err(Error::ModelMismatch {
                left: self.model.to_string(),
                right: nd.model.to_string(),
            })
        }
    }
}

/// `j(x) = x * sigma_1(N*)`; on bundles `j(cl E) = cl(E_bos) sigma_1(N*)`.
pub fn j_map(x: &KClass, nd: &NormalData) -> Result<KClass> {
    x.check(nd)?;
    Ok(KClass::from_element(x.ch_image.times(&nd.sigma1_normal())))
}

/// `x * y = x . y . sigma_1(N*)^-1`, with unit `sigma_1(N*)`.
pub fn star_product(x: &KClass, y: &KClass, nd: &NormalData) -> Result<KClass> {
    x.check(nd)?;
    y.check(nd)?;
    Ok(KClass::from_element(
        x.ch_image.times(&y.ch_image).times(&nd.sigma1_inverse()),
    ))
}

/// `ch^S(x) = ch(x . sigma_1(N*)^-1)`.
pub fn ch_twisted(x: &KClass, nd: &NormalData) -> Result<GradedElement> {
    x.check(nd)?;
    Ok(x.ch_image.times(&nd.sigma1_inverse()))
}

/// `f_S^!` along the structure morphism to a point: the constant class `y`
/// pulled back and made into an element of `KS(𝒳)`, i.e. `y . sigma_1(N*)`.
pub fn pullback_from_point(y: &SuperScalar, nd: &NormalData) -> KClass {
    KClass::from_element(GradedElement::constant(nd.model, y.clone()).times(&nd.sigma1_normal()))
}

/// `i_!^S` for the embedding of the bosonic reduction; `i_*` is the identity
/// on graded rings so the image keeps its Chern character.
pub fn pushforward_from_reduction(x: &KClass) -> KClass {
    x.clone()
}

/// `td(-cl^S N) = td(cl^S N)^-1`, computed from the Todd class of `N`.
pub fn todd_of_minus_normal(nd: &NormalData) -> GradedElement {
    nd.normal_bundle()
        .todd()
        .series_invert()
        .expect("Todd class has invertible leading term")
}
