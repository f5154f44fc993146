//! Riemann-Roch on split supercurves of dimension 1|1.
//!
//! For `𝒳` with `O_𝒳 = O_X + P L` over a genus-`g` curve, a locally free sheaf
//! `E` is determined, up to the classes that matter here, by its restriction
//! `U = E / J E` to `X`. The associated graded sheaf is
//!
//! ```text
//! gr E = [U_0 + L (x) M_1] + P [M_1 + L (x) U_0],    M_1 = P U_1
//! ```
//!
//! and `chi^S(E) = chi(gr_+) - P chi(gr_-)`. [`chi_super`] obtains it by
//! integrating `ch(gr E) td(T_X)`; [`rr_oracle`] obtains it from ordinary
//! Riemann-Roch on each line summand. [`check_sgrr`] compares the two.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bundle::SuperBundle;
use crate::chowring::ChowModel;
use crate::error::{Error, Result};
use crate::ktheory::NormalData;
use crate::modulidim::TargetSpec;
use crate::scalar::{frac, rat, rational_serde, Rational, SuperScalar};

/// Split supercurve `O_𝒳 = O_X + P L` over a curve of genus `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSupercurve {
    pub genus: u32,
    #[serde(with = "rational_serde")]
    pub deg_l: Rational,
}

impl SplitSupercurve {
    pub fn new(genus: u32, deg_l: Rational) -> Self {
        Self { genus, deg_l }
    }

    /// SUSY curve with `n_rr` Ramond punctures: `deg L = g - 1 + n_rr/2`.
    /// Odd `n_rr` yields a half-integral degree, which the sheaf-level
    /// operations below reject.
    pub fn susy(genus: u32, n_rr: u32) -> Self {
        Self::new(genus, rat(genus as i64 - 1) + frac(n_rr as i64, 2))
    }

    pub fn model(&self) -> ChowModel {
        ChowModel::Curve { genus: self.genus }
    }

    /// Conormal data of `X` in `𝒳`: `N* = P L`.
    pub fn normal_data(&self) -> NormalData {
        NormalData::split_supercurve(self.genus, self.deg_l.clone())
    }

    /// Tangent bundle of the reduction, a line bundle of degree `2 - 2g`.
    pub fn tangent_of_reduction(&self) -> SuperBundle {
        SuperBundle::line(self.model(), rat(2 - 2 * self.genus as i64))
            .expect("curve models admit degree-1 roots")
    }

    fn check(&self, u: &SuperBundle) -> Result<()> {
        if u.model() != self.model() {
            return Err(Error::ModelMismatch {
                left: self.model().to_string(),
                right: u.model().to_string(),
            });
        }
        if !self.deg_l.is_integer() {
            return Err(Error::NonIntegralTwist(self.deg_l.to_string()));
        }
        Ok(())
    }
}

/// Super Euler characteristic `chi(x_+) - P chi(x_-)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SuperEuler(pub SuperScalar);

impl SuperEuler {
    pub fn from_parts(even: Rational, odd: Rational) -> Self {
        Self(SuperScalar::new(even, -odd))
    }

    pub fn even(&self) -> Rational {
        self.0.body.clone()
    }

    pub fn odd(&self) -> Rational {
        -self.0.soul.clone()
    }

    pub fn is_integral(&self) -> bool {
        self.0.is_integral()
    }
}

impl Default for SuperEuler {
    fn default() -> Self {
        Self(SuperScalar::zero())
    }
}

impl fmt::Display for SuperEuler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The split bundle `gr E` on `X` for `E` with restriction `u` to `X`.
pub fn gr_module(curve: &SplitSupercurve, u: &SuperBundle) -> Result<SuperBundle> {
    curve.check(u)?;
    let l = &curve.deg_l;
    let mut even = u.even_roots().to_vec();
    even.extend(u.odd_roots().iter().map(|e| e + l));
    let mut odd = u.odd_roots().to_vec();
    odd.extend(u.even_roots().iter().map(|d| d + l));
    SuperBundle::new(u.model(), even, odd)
}

/// `chi^S(E) = int ch(gr E) td(T_X)`.
pub fn chi_super(curve: &SplitSupercurve, u: &SuperBundle) -> Result<SuperEuler> {
    let gr = gr_module(curve, u)?;
    let integrand = gr
        .chern_character()
        .ring_mul(&curve.tangent_of_reduction().todd())?;
    Ok(SuperEuler(integrand.integrate()))
}

/// Closed form `(1 - g) ch_0 + deg ch_1` of [`chi_super`], where `deg ch_1`
/// is the `Q[P]`-valued coefficient of `w`.
pub fn chi_closed_form(curve: &SplitSupercurve, u: &SuperBundle) -> Result<SuperEuler> {
    let ch = gr_module(curve, u)?.chern_character();
    let one_minus_g = rat(1 - curve.genus as i64);
    Ok(SuperEuler(ch.coeff(0).scale(&one_minus_g) + ch.coeff(1)))
}

/// Componentwise Riemann-Roch `chi(M) = deg M + 1 - g` over the line summands
/// of `gr E`, read directly off `u`.
pub fn rr_oracle(curve: &SplitSupercurve, u: &SuperBundle) -> Result<SuperEuler> {
    curve.check(u)?;
    let chi_line = |deg: Rational| deg + rat(1 - curve.genus as i64);
    let l = &curve.deg_l;
    // even part of gr: U_0 and L (x) M_1; odd part: M_1 and L (x) U_0
    let even: Rational = u.even_roots().iter().map(|d| chi_line(d.clone())).sum::<Rational>()
        + u.odd_roots().iter().map(|e| chi_line(e + l)).sum::<Rational>();
    let odd: Rational = u.odd_roots().iter().map(|e| chi_line(e.clone())).sum::<Rational>()
        + u.even_roots().iter().map(|d| chi_line(d + l)).sum::<Rational>();
    Ok(SuperEuler::from_parts(even, odd))
}

/// True iff the Todd-class route and the componentwise route agree exactly.
pub fn check_sgrr(curve: &SplitSupercurve, u: &SuperBundle) -> Result<bool> {
    Ok(chi_super(curve, u)? == rr_oracle(curve, u)?)
}

/// Restriction of `phi^* T_𝒴` to the reduction of the source curve: rank
/// `r|s`, even part of degree `tau`, and `P`-shifted odd part of degree
/// `mu = -int ch_1(F_𝒴)`. The degree sits on the first root of each part;
/// on a curve only rank and total degree enter any characteristic class.
pub fn pullback_tangent(curve: &SplitSupercurve, target: &TargetSpec) -> Result<SuperBundle> {
    let (r, s) = target.rank();
    let tau = target.tau();
    let mu = -target.phi_int();
    if r == 0 && (s > 0 || !tau.is_zero()) {
        return Err(Error::InvalidRank(format!(
            "target of rank {r}|{s} needs an even direction (tau = {tau})"
        )));
    }
    if s == 0 && !mu.is_zero() {
        return Err(Error::InvalidRank(format!(
            "target of rank {r}|0 cannot carry odd degree {mu}"
        )));
    }
    let spread = |n: u32, total: Rational| -> Vec<Rational> {
        (0..n)
            .map(|i| if i == 0 { total.clone() } else { Rational::zero() })
            .collect()
    };
    SuperBundle::new(curve.model(), spread(r, tau), spread(s, mu))
}

/// `chi^S` through the twisted character: `int ch^S(x) td(cl^S T_𝒳)` with
/// `x = cl(gr E)` and `td(cl^S T_𝒳) = td(T_X) td(N)`, the odd factor taken
/// from the Todd class of the normal bundle rather than from `sigma_1`.
pub fn chi_twisted_route(curve: &SplitSupercurve, u: &SuperBundle) -> Result<SuperEuler> {
    use crate::ktheory::{ch_twisted, KClass};
    let gr = gr_module(curve, u)?;
    let nd = curve.normal_data();
    let td_super = curve
        .tangent_of_reduction()
        .todd()
        .ring_mul(&nd.normal_bundle().todd())?;
    let integrand = ch_twisted(&KClass::of_bundle(&gr), &nd)?.ring_mul(&td_super)?;
    Ok(SuperEuler(integrand.integrate()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(g: u32, l: i64) -> SplitSupercurve {
        SplitSupercurve::new(g, rat(l))
    }

    fn roots(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn gr_module_examples() {
        for g in 0..4u32 {
            let c = SplitSupercurve::susy(g, 0);
            let gl = g as i64 - 1;
            let o = SuperBundle::trivial(c.model());
            let gr = gr_module(&c, &o).unwrap();
            assert_eq!(gr.even_roots(), roots(&[0]).as_slice());
            assert_eq!(gr.odd_roots(), roots(&[gl]).as_slice());

            let gr = gr_module(&c, &o.pi_shift()).unwrap();
            assert_eq!(gr.even_roots(), roots(&[gl]).as_slice());
            assert_eq!(gr.odd_roots(), roots(&[0]).as_slice());
        }
        let c = curve(2, 1);
        let gr = gr_module(&c, &SuperBundle::on_curve(2, &[2], &[3])).unwrap();
        assert_eq!(gr.even_roots(), roots(&[2, 4]).as_slice());
        assert_eq!(gr.odd_roots(), roots(&[3, 3]).as_slice());
    }

    #[test]
    fn gr_module_errors() {
        let c = SplitSupercurve::susy(2, 1);
        let u = SuperBundle::trivial(c.model());
        assert!(matches!(gr_module(&c, &u), Err(Error::NonIntegralTwist(_))));
        assert!(matches!(chi_super(&c, &u), Err(Error::NonIntegralTwist(_))));
        assert!(matches!(rr_oracle(&c, &u), Err(Error::NonIntegralTwist(_))));
        let c = curve(2, 1);
        let u = SuperBundle::trivial(ChowModel::Curve { genus: 1 });
        assert!(matches!(gr_module(&c, &u), Err(Error::ModelMismatch { .. })));
    }

    #[test]
    fn chi_super_examples() {
        for g in 0..6u32 {
            let c = SplitSupercurve::susy(g, 0);
            let one_minus_g = 1 - g as i64;
            let o = SuperBundle::trivial(c.model());
            assert_eq!(chi_super(&c, &o).unwrap(), SuperEuler::from_parts(rat(one_minus_g), rat(0)));
            assert_eq!(
                chi_super(&c, &o.pi_shift()).unwrap().0,
                SuperScalar::from_ints(0, -one_minus_g)
            );
        }
    }

    #[test]
    fn rr_oracle_examples() {
        let c = SplitSupercurve::susy(3, 0);
        assert_eq!(rr_oracle(&c, &SuperBundle::trivial(c.model())).unwrap().0, SuperScalar::from_ints(-2, 0));
        assert_eq!(rr_oracle(&c, &SuperBundle::zero(c.model())).unwrap(), SuperEuler::default());
        for d in -5..=5 {
            // even {d}, odd {d + g - 1}: (d + 1 - g) - P d
            let u = SuperBundle::on_curve(3, &[d], &[]);
            assert_eq!(rr_oracle(&c, &u).unwrap().0, SuperScalar::from_ints(d - 2, -d));
        }
    }

    #[test]
    fn check_sgrr_examples() {
        for g in 0..4u32 {
            let c = SplitSupercurve::susy(g, 0);
            assert!(check_sgrr(&c, &SuperBundle::trivial(c.model())).unwrap());
            for d in -5..=5 {
                let u = SuperBundle::on_curve(g, &[d], &[]);
                assert!(check_sgrr(&c, &u).unwrap());
                // bosonic piece: chi(O(d)) = d + 1 - g
                assert_eq!(chi_super(&c, &u).unwrap().even(), rat(d + 1 - g as i64));
            }
        }
    }

    #[test]
    fn twisted_route_matches() {
        let c = curve(2, 3);
        let u = SuperBundle::on_curve(2, &[1, -4], &[2]);
        assert_eq!(chi_twisted_route(&c, &u).unwrap(), chi_super(&c, &u).unwrap());
        assert_eq!(chi_closed_form(&c, &u).unwrap(), chi_super(&c, &u).unwrap());
    }

    #[test]
    fn pullback_tangent_examples() {
        let c = SplitSupercurve::susy(0, 0);
        let t = TargetSpec::PSuper { r: 2, s: 3, d: 2 };
        let b = pullback_tangent(&c, &t).unwrap();
        assert_eq!(b.rank(), (2, 3));
        assert_eq!(b.even_degree(), rat(6));
        assert_eq!(b.odd_degree(), rat(6));

        let t = TargetSpec::Custom { r: 1, s: 1, tau: rat(2), phi_int: rat(-1) };
        assert_eq!(chi_super(&c, &pullback_tangent(&c, &t).unwrap()).unwrap().0, SuperScalar::from_ints(4, -4));

        let bad = TargetSpec::Custom { r: 0, s: 2, tau: rat(0), phi_int: rat(0) };
        assert!(matches!(pullback_tangent(&c, &bad), Err(Error::InvalidRank(_))));
        let bad = TargetSpec::Custom { r: 2, s: 0, tau: rat(0), phi_int: rat(3) };
        assert!(matches!(pullback_tangent(&c, &bad), Err(Error::InvalidRank(_))));
        assert_eq!(pullback_tangent(&c, &TargetSpec::Point).unwrap().rank(), (0, 0));
    }

    #[test]
    fn pullback_tangent_point_like_targets() {
        // tau = mu = 0: chi^S = (1-g)(r - P s) + (n_rr/2)(s - P r)
        for g in 0..4u32 {
            for n_rr in [0u32, 2, 4] {
                let c = SplitSupercurve::susy(g, n_rr);
                for (r, s) in [(1u32, 0u32), (2, 1), (3, 3)] {
                    let t = TargetSpec::PSuper { r, s, d: 0 };
                    let chi = chi_super(&c, &pullback_tangent(&c, &t).unwrap()).unwrap();
                    let (g, h, r, s) = (g as i64, n_rr as i64 / 2, r as i64, s as i64);
                    assert_eq!(chi.0, SuperScalar::from_ints((1 - g) * r + h * s, -(1 - g) * s - h * r));
                }
            }
        }
    }
}
