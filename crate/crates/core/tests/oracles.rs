//! Frozen reference values computed by hand or from closed-form oracles that
//! share no code with the engine.

use sgrr_core::chowring::todd_projective_space;
use sgrr_core::grr::{chi_super, pullback_tangent, rr_oracle};
use sgrr_core::modulidim::{bosonic_dimension, chi_gauge, properness_hint, vdim_assembled, vdim_closed};
use sgrr_core::scalar::{frac, rat, Rational};
use sgrr_core::{
    ChowModel, Error, GradedElement, ModuliParams, Properness, SplitSupercurve, SuperBundle, SuperEuler,
    SuperScalar, TargetSpec,
};

fn ss(a: i64, b: i64) -> SuperScalar {
    SuperScalar::from_ints(a, b)
}

#[test]
fn even_line_todd_is_bernoulli_series() {
    // x / (1 - e^-x) = 1 + x/2 + x^2/12 - x^4/720 + ...
    let model = ChowModel::ProjSpace { r: 4 };
    let td = SuperBundle::line(model, rat(1)).unwrap().todd();
    let want = [frac(1, 1), frac(1, 2), frac(1, 12), frac(0, 1), frac(-1, 720)];
    for (i, w) in want.iter().enumerate() {
        assert_eq!(td.coeff(i), SuperScalar::from_rational(w.clone()), "degree {i}");
    }
}

#[test]
fn projective_plane_todd_class() {
    // (h / (1 - e^-h))^3 = 1 + 3/2 h + h^2 on P^2
    let td = todd_projective_space(2);
    let want = GradedElement::from_coeffs(
        ChowModel::ProjSpace { r: 2 },
        vec![ss(1, 0), SuperScalar::from_rational(frac(3, 2)), ss(1, 0)],
    )
    .unwrap();
    assert_eq!(td, want);
}

#[test]
fn odd_line_todd_is_one_plus_exp_of_dual() {
    // td(P M) = ch sigma_1(M*) = 1 + e^-m on a curve: 2 - m w
    let model = ChowModel::Curve { genus: 2 };
    let td = SuperBundle::odd_line(model, rat(3)).unwrap().todd();
    assert_eq!(td, GradedElement::from_coeffs(model, vec![ss(2, 0), ss(-3, 0)]).unwrap());
}

#[test]
fn hand_computed_virtual_dimensions() {
    let cases = [
        // (g, n_ns, n_rr, r, s, d, body, soul)
        (0, 0, 0, 3, 0, 1, 4, -2),
        (0, 0, 0, 1, 1, 1, 1, -2),
        (2, 1, 2, 2, 1, 1, 9, -9),
        (1, 0, 0, 1, 0, 0, 0, 0),
        (0, 0, 0, 1, 0, 0, -2, 2),
    ];
    for (g, n_ns, n_rr, r, s, d, body, soul) in cases {
        let p = ModuliParams::new(g, n_ns, n_rr);
        let t = TargetSpec::PSuper { r, s, d };
        assert_eq!(vdim_closed(&p, &t), ss(body, soul), "{p} {t}");
        assert_eq!(vdim_assembled(&p, &t).unwrap(), ss(body, soul), "{p} {t}");
    }
    let p = ModuliParams::new(2, 1, 2);
    let t = TargetSpec::PSuper { r: 2, s: 1, d: 1 };
    assert_eq!(bosonic_dimension(&p, &t).unwrap(), rat(9));
    assert_eq!(properness_hint(&t, &p).unwrap(), Properness::NotProper);
}

#[test]
fn gauge_term_with_punctures() {
    // 3 - 3g - n_ns - n_rr  -  P (2 - 2g - n_ns - n_rr/2)
    for g in 0..=4i64 {
        for n_ns in 0..=3i64 {
            for n_rr in [0i64, 2, 4] {
                let got = chi_gauge(&ModuliParams::new(g as u32, n_ns as u32, n_rr as u32));
                let even = 3 - 3 * g - n_ns - n_rr;
                let odd = 2 - 2 * g - n_ns - n_rr / 2;
                assert_eq!(got, SuperEuler::from_parts(rat(even), rat(odd)));
            }
        }
    }
}

#[test]
fn pulled_back_tangent_euler_characteristic_sweep() {
    // componentwise: even = r(1-g) + s n/2 + tau + mu, odd = s(1-g) + r n/2 + tau + mu
    let mut checked = 0;
    for g in 0..=3i64 {
        for n_rr in [0i64, 2, 4, 6] {
            let curve = SplitSupercurve::susy(g as u32, n_rr as u32);
            assert_eq!(curve.deg_l, rat(g - 1 + n_rr / 2));
            for r in 0..=4i64 {
                for s in 0..=3i64 {
                    for tau in -6..=6i64 {
                        for mu in -6..=6i64 {
                            let t = TargetSpec::Custom {
                                r: r as u32,
                                s: s as u32,
                                tau: rat(tau),
                                phi_int: rat(-mu),
                            };
                            let bundle = pullback_tangent(&curve, &t);
                            let invalid = (r == 0 && (s > 0 || tau != 0)) || (s == 0 && mu != 0);
                            if invalid {
                                assert!(matches!(bundle, Err(Error::InvalidRank(_))), "{t}");
                                continue;
                            }
                            let bundle = bundle.unwrap();
                            let half = n_rr / 2;
                            let even = r * (1 - g) + s * half + tau + mu;
                            let odd = s * (1 - g) + r * half + tau + mu;
                            let want = SuperEuler::from_parts(rat(even), rat(odd));
                            assert_eq!(chi_super(&curve, &bundle).unwrap(), want, "g={g} n_rr={n_rr} {t}");
                            assert_eq!(rr_oracle(&curve, &bundle).unwrap(), want);
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn structure_sheaf_of_susy_curve() {
    // O = O_X + P L with deg L = g - 1: chi = (1 - g) - P (deg L + 1 - g)
    for g in 0..=5u32 {
        let curve = SplitSupercurve::susy(g, 0);
        let chi = chi_super(&curve, &SuperBundle::trivial(curve.model())).unwrap();
        let one_minus_g = rat(1 - g as i64);
        assert_eq!(chi, SuperEuler::from_parts(one_minus_g, Rational::from_integer(0.into())));
    }
}
