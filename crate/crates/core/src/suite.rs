//! Seeded randomized identity suites.
//!
//! Every suite draws its cases from a ChaCha8 stream seeded with the caller's
//! seed, so a report is reproducible from `(seed, cases)` alone. When a case
//! fails, it is shrunk greedily (drop roots, move degrees toward zero, lower
//! the genus or dimension) and the smallest failing case is reported.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bundle::SuperBundle;
use crate::chowring::{ChowModel, GradedElement};
use crate::error::Result;
use crate::grr::{check_sgrr, chi_closed_form, chi_super, chi_twisted_route, SplitSupercurve};
use crate::ktheory::{
    ch_twisted, j_map, pullback_from_point, pushforward_from_reduction, star_product,
    todd_of_minus_normal, KClass, NormalData,
};
use crate::scalar::{rat, Rational, SuperScalar};

/// Outcome of one suite run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    /// Smallest failing case found, if any.
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.passed == self.cases
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}/{} (seed {})", self.name, self.passed, self.cases, self.seed)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  minimal counterexample: {c}")?;
        }
        Ok(())
    }
}

trait Shrink: Sized {
    fn candidates(&self) -> Vec<Self>;
}

fn minimize<C: Shrink + Clone>(mut case: C, fails: impl Fn(&C) -> bool) -> C {
    'outer: loop {
        for cand in case.candidates() {
            if fails(&cand) {
                case = cand;
                continue 'outer;
            }
        }
        return case;
    }
}

fn shrink_ints(v: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut w = v.to_vec();
        w.remove(i);
        out.push(w);
    }
    for i in 0..v.len() {
        if v[i] != 0 {
            let mut w = v.to_vec();
            w[i] -= v[i].signum();
            out.push(w);
        }
    }
    out
}

/// Roots of one bundle as integer multiples of the generator.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RootCase {
    even: Vec<i64>,
    odd: Vec<i64>,
}

impl RootCase {
    fn random(rng: &mut ChaCha8Rng, max_rank: usize) -> Self {
        let (r, s) = (rng.gen_range(0..=max_rank), rng.gen_range(0..=max_rank));
        let mut roots = |n: usize| (0..n).map(|_| rng.gen_range(-5..=5)).collect::<Vec<i64>>();
        let even = roots(r);
        Self { even, odd: roots(s) }
    }

    fn bundle(&self, model: ChowModel) -> SuperBundle {
        let conv = |v: &[i64]| v.iter().map(|&x| rat(x)).collect::<Vec<Rational>>();
        SuperBundle::new(model, conv(&self.even), conv(&self.odd)).expect("curve or P^r model")
    }

    fn candidates(&self) -> Vec<Self> {
        let mut out: Vec<Self> = shrink_ints(&self.even)
            .into_iter()
            .map(|even| Self { even, odd: self.odd.clone() })
            .collect();
        out.extend(
            shrink_ints(&self.odd)
                .into_iter()
                .map(|odd| Self { even: self.even.clone(), odd }),
        );
        out
    }
}

/// Three bundles and conormal roots on a common model.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IdentityCase {
    model: ChowModel,
    bundles: [RootCase; 3],
    normal: Vec<i64>,
}

impl IdentityCase {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        let model = if rng.gen_bool(0.5) {
            ChowModel::Curve { genus: rng.gen_range(0..=3) }
        } else {
            ChowModel::ProjSpace { r: rng.gen_range(1..=4) }
        };
        let bundles = [
            RootCase::random(rng, 3),
            RootCase::random(rng, 3),
            RootCase::random(rng, 2),
        ];
        let normal = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(-5..=5)).collect();
        Self { model, bundles, normal }
    }

    fn bundle(&self, i: usize) -> SuperBundle {
        self.bundles[i].bundle(self.model)
    }

    fn normal_data(&self) -> NormalData {
        NormalData::new(self.model, self.normal.iter().map(|&x| rat(x)).collect())
    }

    fn kclass(&self, i: usize) -> KClass {
        KClass::of_bundle(&self.bundle(i))
    }
}

impl Shrink for IdentityCase {
    fn candidates(&self) -> Vec<Self> {
        let mut out = Vec::new();
        match self.model {
            ChowModel::Curve { genus } if genus > 0 => {
                out.push(Self { model: ChowModel::Curve { genus: genus - 1 }, ..self.clone() })
            }
            ChowModel::ProjSpace { r } if r > 1 => {
                out.push(Self { model: ChowModel::ProjSpace { r: r - 1 }, ..self.clone() })
            }
            _ => {}
        }
        for i in 0..3 {
            for b in self.bundles[i].candidates() {
                let mut c = self.clone();
                c.bundles[i] = b;
                out.push(c);
            }
        }
        for normal in shrink_ints(&self.normal) {
            out.push(Self { normal, ..self.clone() });
        }
        out
    }
}

impl fmt::Display for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "model={}", self.model)?;
        for (i, b) in self.bundles.iter().enumerate() {
            write!(f, " E{}=(even {:?}, odd {:?})", i + 1, b.even, b.odd)?;
        }
        write!(f, " conormal={:?}", self.normal)
    }
}

type Identity = fn(&IdentityCase) -> Result<bool>;

fn pi_power(n: usize) -> SuperScalar {
    SuperScalar::pi().pow(n as u32)
}

fn whitney(c: &IdentityCase) -> Result<bool> {
    let (e, f) = (c.bundle(0), c.bundle(1));
    Ok(e.direct_sum(&f)?.chern_total() == e.chern_total().ring_mul(&f.chern_total())?)
}

fn ch_additive(c: &IdentityCase) -> Result<bool> {
    let (e, f) = (c.bundle(0), c.bundle(1));
    Ok(e.direct_sum(&f)?.chern_character() == e.chern_character().add(&f.chern_character())?)
}

fn ch_multiplicative(c: &IdentityCase) -> Result<bool> {
    let (e, f) = (c.bundle(0), c.bundle(1));
    Ok(e.tensor(&f)?.chern_character() == e.chern_character().ring_mul(&f.chern_character())?)
}

fn ch_parity_shift(c: &IdentityCase) -> Result<bool> {
    let e = c.bundle(0);
    Ok(e.pi_shift().chern_character() == e.chern_character().scale(&-SuperScalar::pi()))
}

fn c1_parity_rules(c: &IdentityCase) -> Result<bool> {
    let e = c.bundle(0);
    let (r, s) = e.rank();
    let shift_ok = e.pi_shift().c1() == -(e.c1() * pi_power(r + s));
    let lines_ok = e
        .even_roots()
        .iter()
        .map(|x| SuperBundle::line(c.model, x.clone()))
        .chain(e.odd_roots().iter().map(|x| SuperBundle::odd_line(c.model, x.clone())))
        .map(|l| l.map(|l| l.dual().c1() == -l.c1()))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    Ok(shift_ok && lines_ok)
}

fn todd_multiplicative(c: &IdentityCase) -> Result<bool> {
    let (e, f) = (c.bundle(0), c.bundle(1));
    Ok(e.direct_sum(&f)?.todd() == e.todd().ring_mul(&f.todd())?)
}

fn todd_of_odd_is_sigma1_of_dual(c: &IdentityCase) -> Result<bool> {
    let odd = SuperBundle::new(c.model, vec![], c.bundle(0).odd_roots().to_vec())?;
    Ok(odd.todd() == odd.dual().sigma1()?)
}

fn j_is_a_ring_morphism(c: &IdentityCase) -> Result<bool> {
    let nd = c.normal_data();
    let (x, y) = (c.kclass(0), c.kclass(1));
    let lhs = star_product(&j_map(&x, &nd)?, &j_map(&y, &nd)?, &nd)?;
    Ok(lhs == j_map(&x.mul(&y)?, &nd)?)
}

fn ch_twisted_multiplicative(c: &IdentityCase) -> Result<bool> {
    let nd = c.normal_data();
    let (x, y) = (c.kclass(0), c.kclass(1));
    let lhs = ch_twisted(&star_product(&x, &y, &nd)?, &nd)?;
    Ok(lhs == ch_twisted(&x, &nd)?.ring_mul(&ch_twisted(&y, &nd)?)?)
}

fn star_ring_axioms(c: &IdentityCase) -> Result<bool> {
    let nd = c.normal_data();
    let (x, y, z) = (c.kclass(0), c.kclass(1), c.kclass(2));
    let unit = KClass::from_element(nd.sigma1_normal());
    let assoc = star_product(&star_product(&x, &y, &nd)?, &z, &nd)?
        == star_product(&x, &star_product(&y, &z, &nd)?, &nd)?;
    let comm = star_product(&x, &y, &nd)? == star_product(&y, &x, &nd)?;
    let unital = star_product(&x, &unit, &nd)? == x;
    Ok(assoc && comm && unital)
}

fn twisted_pushforward(c: &IdentityCase) -> Result<bool> {
    let nd = c.normal_data();
    let x = c.kclass(0);
    let lhs = ch_twisted(&pushforward_from_reduction(&x), &nd)?;
    Ok(lhs == x.ch_image.ring_mul(&todd_of_minus_normal(&nd))?)
}

fn twisted_pullback_from_point(c: &IdentityCase) -> Result<bool> {
    let nd = c.normal_data();
    let y = c.bundle(0).chern_character().coeff(0);
    let lhs = ch_twisted(&pullback_from_point(&y, &nd), &nd)?;
    Ok(lhs == GradedElement::constant(c.model, y))
}

/// Name and check of every characteristic-class identity suite.
const IDENTITIES: &[(&str, Identity)] = &[
    ("whitney-sum", whitney),
    ("ch-additive", ch_additive),
    ("ch-tensor-multiplicative", ch_multiplicative),
    ("ch-parity-shift", ch_parity_shift),
    ("c1-parity-and-dual", c1_parity_rules),
    ("todd-multiplicative", todd_multiplicative),
    ("todd-odd-equals-ch-sigma1-dual", todd_of_odd_is_sigma1_of_dual),
    ("j-ring-morphism", j_is_a_ring_morphism),
    ("ch-twisted-multiplicative", ch_twisted_multiplicative),
    ("star-ring-axioms", star_ring_axioms),
    ("ch-twisted-pushforward", twisted_pushforward),
    ("ch-twisted-pullback-from-point", twisted_pullback_from_point),
];

fn run_suite<C: Shrink + Clone + fmt::Display>(
    name: &str,
    seed: u64,
    cases: usize,
    gen: impl Fn(&mut ChaCha8Rng) -> C,
    check: impl Fn(&C) -> Result<bool>,
) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fails = |c: &C| !matches!(check(c), Ok(true));
    let mut passed = 0;
    let mut first_failure = None;
    for _ in 0..cases {
        let case = gen(&mut rng);
        if fails(&case) {
            first_failure.get_or_insert(case);
        } else {
            passed += 1;
        }
    }
    let counterexample = first_failure.map(|c| {
        let small = minimize(c, fails);
        match check(&small) {
            Err(e) => format!("{small} (error: {e})"),
            _ => small.to_string(),
        }
    });
    SuiteReport { name: name.to_string(), seed, cases, passed, counterexample }
}

/// Names of the identity suites, in the order [`run_identities`] runs them.
pub fn identity_names() -> Vec<&'static str> {
    IDENTITIES.iter().map(|(name, _)| *name).collect()
}

/// Runs one identity suite. Each suite derives its own stream from `seed`
/// and its position in [`identity_names`].
pub fn run_identity(index: usize, seed: u64, cases: usize) -> SuiteReport {
    let (name, check) = IDENTITIES[index];
    let sub_seed = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut rep = run_suite(name, sub_seed, cases, IdentityCase::random, check);
    rep.seed = seed;
    rep
}

/// Runs every identity suite.
pub fn run_identities(seed: u64, cases: usize) -> Vec<SuiteReport> {
    (0..IDENTITIES.len()).map(|i| run_identity(i, seed, cases)).collect()
}

/// A split supercurve and the restriction `U` of a sheaf on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrrCase {
    pub genus: u32,
    pub deg_l: i64,
    pub even: Vec<i64>,
    pub odd: Vec<i64>,
}

impl GrrCase {
    /// Genus at most 3, ranks at most 3|3, degrees in -5..=5.
    pub fn random(rng: &mut ChaCha8Rng) -> Self {
        let genus = rng.gen_range(0..=3);
        let deg_l = rng.gen_range(-5..=5);
        let RootCase { even, odd } = RootCase::random(rng, 3);
        Self { genus, deg_l, even, odd }
    }

    pub fn curve(&self) -> SplitSupercurve {
        SplitSupercurve::new(self.genus, rat(self.deg_l))
    }

    pub fn bundle(&self) -> SuperBundle {
        SuperBundle::on_curve(self.genus, &self.even, &self.odd)
    }

    /// Todd-class route vs componentwise route, plus the closed form and the
    /// twisted-character route for the same instance.
    pub fn check(&self) -> Result<bool> {
        let (c, u) = (self.curve(), self.bundle());
        let lhs = chi_super(&c, &u)?;
        Ok(check_sgrr(&c, &u)?
            && chi_closed_form(&c, &u)? == lhs
            && chi_twisted_route(&c, &u)? == lhs)
    }
}

impl Shrink for GrrCase {
    fn candidates(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.genus > 0 {
            out.push(Self { genus: self.genus - 1, ..self.clone() });
        }
        if self.deg_l != 0 {
            out.push(Self { deg_l: self.deg_l - self.deg_l.signum(), ..self.clone() });
        }
        let rc = RootCase { even: self.even.clone(), odd: self.odd.clone() };
        out.extend(rc.candidates().into_iter().map(|r| Self { even: r.even, odd: r.odd, ..self.clone() }));
        out
    }
}

impl fmt::Display for GrrCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g={} deg_L={} U=(even {:?}, odd {:?})",
            self.genus, self.deg_l, self.even, self.odd
        )
    }
}

/// Draws the GRR instances for `(seed, cases)` without checking them.
pub fn grr_cases(seed: u64, cases: usize) -> Vec<GrrCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases).map(|_| GrrCase::random(&mut rng)).collect()
}

/// Randomized super Riemann-Roch suite on split supercurves.
pub fn run_grr(seed: u64, cases: usize) -> SuiteReport {
    run_suite("super-grr", seed, cases, GrrCase::random, GrrCase::check)
}
