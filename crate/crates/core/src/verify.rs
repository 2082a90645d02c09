//! Seeded randomized suites checking the algebraic identities exactly.
//!
//! Each suite draws random polynomial forms from its own seeded stream, so a
//! failing identity is reproduced by rerunning with the printed seed.

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::coeff::{coordinate_names, int, rational, Poly};
use crate::descent::{
    decompose_double, decompose_single, hodge_components, hodge_components_double, proj_p, proj_q,
    projector_commutator, DescentPair,
};
use crate::exterior::{
    codifferential, codifferential_sign, exterior_derivative, flat, hodge, laplace_beltrami,
    lie_derivative, principal_symbol, wave_operator, wedge, Form, FrameVector, Metric,
};
use crate::random::{self, SuiteRng};

/// Hodge star implementation under test.
pub type HodgeFn = fn(&Form, &Metric) -> Form;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    pub seed: u64,
    pub trials: usize,
    /// Largest total degree of random polynomial coefficients.
    pub max_degree: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 3, 4, 5],
            seed: 0,
            trials: 200,
            max_degree: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub scope: String,
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl IdentityResult {
    fn new(name: &str, scope: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            scope: scope.into(),
            checked: 0,
            failed: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub dims: Vec<usize>,
    pub identities: Vec<IdentityResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(IdentityResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityResult> {
        self.identities.iter().filter(|r| !r.passed())
    }
}

fn stream(seed: u64, salt: u64) -> SuiteRng {
    random::rng(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn show(w: &Form) -> String {
    w.render(&coordinate_names(w.dim()))
}

fn signatures(m: usize) -> impl Iterator<Item = Metric> {
    (0u32..1 << m).map(move |mask| Metric::from_negative_mask(m, mask).expect("valid signature"))
}

fn scope(dims: &[usize], what: &str) -> String {
    let list: Vec<String> = dims.iter().map(usize::to_string).collect();
    format!("m in {{{}}}, {what}", list.join(","))
}

fn sign_power(k: usize) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed(w: &Form, sign: i8) -> Form {
    if sign > 0 {
        w.clone()
    } else {
        -w
    }
}

/// `⋆⋆w = (−1)^{p(m−p)+s} w` for every signature.
pub fn duality(cfg: &SuiteConfig, hodge: HodgeFn) -> IdentityResult {
    let mut r = IdentityResult::new("hodge.duality", scope(&cfg.dims, "all signatures"));
    let mut rng = stream(cfg.seed, 1);
    for &m in &cfg.dims {
        for g in signatures(m) {
            for _ in 0..cfg.trials {
                let (p, w) = random::any_homogeneous(&mut rng, m, cfg.max_degree);
                let twice = hodge(&hodge(&w, &g), &g);
                let expected = signed(&w, sign_power(p * (m - p) + g.negative_index()));
                r.check(twice == expected, || {
                    format!("metric {g}, w = {}: got {}", show(&w), show(&twice))
                });
            }
        }
    }
    r
}

/// `□w = −(dδ + δd)w` for every signature.
pub fn wave_laplace(cfg: &SuiteConfig) -> IdentityResult {
    let mut r = IdentityResult::new("wave.laplace_beltrami", scope(&cfg.dims, "all signatures"));
    let mut rng = stream(cfg.seed, 2);
    for &m in &cfg.dims {
        for g in signatures(m) {
            for _ in 0..cfg.trials {
                let (_, w) = random::any_homogeneous(&mut rng, m, cfg.max_degree + 1);
                let wave = wave_operator(&w, &g);
                let lb = laplace_beltrami(&w, &g);
                r.check(wave == -&lb, || {
                    format!(
                        "metric {g}, w = {}: □w = {}, Δw = {}",
                        show(&w),
                        show(&wave),
                        show(&lb)
                    )
                });
            }
        }
    }
    r
}

/// `δ = ⋆d⋆` on every degree for the Lorentzian metric of four dimensions.
pub fn codifferential_lorentzian(cfg: &SuiteConfig) -> IdentityResult {
    let mut r = IdentityResult::new("codifferential.lorentzian_sign", "m = 4, s = 3");
    let g = Metric::lorentzian();
    for p in 0..=4 {
        r.check(codifferential_sign(&g, p) == 1, || {
            format!("prefactor at p = {p} is -1")
        });
    }
    let mut rng = stream(cfg.seed, 3);
    for _ in 0..cfg.trials {
        let w = random::mixed_form(&mut rng, 4, cfg.max_degree + 1);
        let delta = codifferential(&w, &g);
        let direct = hodge(&exterior_derivative(&hodge(&w, &g)), &g);
        r.check(delta == direct, || format!("w = {}", show(&w)));
    }
    r
}

/// `δδ = 0` for every signature.
pub fn codifferential_nilpotent(cfg: &SuiteConfig) -> IdentityResult {
    let mut r = IdentityResult::new(
        "codifferential.nilpotent",
        scope(&cfg.dims, "all signatures"),
    );
    let mut rng = stream(cfg.seed, 4);
    for &m in &cfg.dims {
        for g in signatures(m) {
            for _ in 0..cfg.trials {
                let w = random::mixed_form(&mut rng, m, cfg.max_degree + 1);
                let twice = codifferential(&codifferential(&w, &g), &g);
                r.check(twice.is_zero(), || format!("metric {g}, w = {}", show(&w)));
            }
        }
    }
    r
}

/// `dd = 0`.
pub fn exterior_nilpotent(cfg: &SuiteConfig) -> IdentityResult {
    let mut r = IdentityResult::new("exterior.nilpotent", scope(&cfg.dims, "mixed degrees"));
    let mut rng = stream(cfg.seed, 5);
    for &m in &cfg.dims {
        for _ in 0..cfg.trials {
            let w = random::mixed_form(&mut rng, m, cfg.max_degree + 1);
            let dd = exterior_derivative(&exterior_derivative(&w));
            r.check(dd.is_zero(), || format!("w = {}", show(&w)));
        }
    }
    r
}

fn random_metric(rng: &mut SuiteRng, m: usize) -> Metric {
    Metric::from_negative_mask(m, rng.gen_range(0..1u32 << m)).expect("valid signature")
}

/// `L_Z ⋆w = ⋆L_Z w` for constant `Z`.
pub fn lie_hodge(cfg: &SuiteConfig, hodge: HodgeFn) -> IdentityResult {
    let mut r = IdentityResult::new(
        "lie.hodge_commute",
        scope(&cfg.dims, "random signature and Z"),
    );
    let mut rng = stream(cfg.seed, 6);
    for &m in &cfg.dims {
        for _ in 0..cfg.trials {
            let g = random_metric(&mut rng, m);
            let z = random::constant_vector(&mut rng, m);
            let w = random::mixed_form(&mut rng, m, cfg.max_degree + 1);
            let lhs = lie_derivative(&z, &hodge(&w, &g));
            let rhs = hodge(&lie_derivative(&z, &w), &g);
            r.check(lhs == rhs, || format!("metric {g}, w = {}", show(&w)));
        }
    }
    r
}

/// Random pair `(X, ξ)` with `ξ(X) = 1`.
fn random_pair(rng: &mut SuiteRng, m: usize) -> DescentPair {
    let x = random::constant_vector(rng, m);
    // pick an axis where X is nonzero and solve ξ(X) = 1 for that component
    let pivot = (0..m)
        .find(|&a| !x.component(a).is_zero())
        .expect("nonzero vector");
    let mut comps: Vec<_> = (0..m).map(|_| rational(rng.gen_range(-2..=2), 1)).collect();
    comps[pivot] = int(0);
    let rest = FrameVector::new(comps.clone()).pair(&x);
    comps[pivot] = (int(1) - rest) / x.component(pivot);
    DescentPair::new(x, FrameVector::new(comps), "X").expect("dual by construction")
}

/// Random metric pair `ξ = X♭ / g(X, X)` with non-null `X`.
fn random_metric_pair(rng: &mut SuiteRng, g: &Metric) -> DescentPair {
    loop {
        let x = random::constant_vector(rng, g.dim());
        if let Ok(pair) = DescentPair::metric(x, g, "X") {
            return pair;
        }
    }
}

/// Resolution of identity, idempotence, mutual annihilation and the wedge laws.
pub fn projector_algebra(cfg: &SuiteConfig) -> Vec<IdentityResult> {
    let dims = &cfg.dims;
    let mut resolution = IdentityResult::new("projector.resolution", scope(dims, "random pairs"));
    let mut idempotent = IdentityResult::new("projector.idempotent", scope(dims, "random pairs"));
    let mut annihilate = IdentityResult::new("projector.annihilation", scope(dims, "random pairs"));
    let mut wedge_law = IdentityResult::new("projector.wedge", scope(dims, "random pairs"));
    let mut rng = stream(cfg.seed, 7);
    for &m in dims {
        for _ in 0..cfg.trials {
            let pair = random_pair(&mut rng, m);
            let w = random::mixed_form(&mut rng, m, cfg.max_degree);
            let v = random::mixed_form(&mut rng, m, cfg.max_degree);
            let p = |f: &Form| proj_p(&pair, f).expect("same dimension");
            let q = |f: &Form| proj_q(&pair, f).expect("same dimension");
            let wedge = |a: &Form, b: &Form| wedge(a, b).expect("same dimension");
            let (pw, qw) = (p(&w), q(&w));
            let describe = || format!("X = {:?}, w = {}", pair.vector().components(), show(&w));

            resolution.check(&pw + &qw == w, describe);
            idempotent.check(p(&pw) == pw && q(&qw) == qw, describe);
            annihilate.check(p(&qw).is_zero() && q(&pw).is_zero(), describe);

            let (pv, qv) = (p(&v), q(&v));
            let wv = wedge(&w, &v);
            let split = &(&wedge(&pw, &qv) + &wedge(&qw, &pv)) + &wedge(&qw, &qv);
            let derivation = &wedge(&pw, &qv) + &wedge(&qw, &pv);
            let ok = wv == split && p(&wv) == derivation && q(&wv) == wedge(&qw, &qv);
            wedge_law.check(ok, || format!("w = {}, v = {}", show(&w), show(&v)));
        }
    }
    vec![resolution, idempotent, annihilate, wedge_law]
}

/// `[P_i, P_j] = ξ^j(X_i) ε_{ξ^i} i_{X_j} − ξ^i(X_j) ε_{ξ^j} i_{X_i}` for random
/// pairs, and `[P_Y, P_Z] = 0` for biorthogonal ones.
pub fn projector_commutators(cfg: &SuiteConfig) -> Vec<IdentityResult> {
    let mut general = IdentityResult::new("projector.commutator", scope(&cfg.dims, "random pairs"));
    let mut commute = IdentityResult::new(
        "projector.biorthogonal_commute",
        scope(&cfg.dims, "coordinate-like pairs"),
    );
    let mut rng = stream(cfg.seed, 8);
    for &m in &cfg.dims {
        for _ in 0..cfg.trials {
            let a = random_pair(&mut rng, m);
            let b = random_pair(&mut rng, m);
            let w = random::mixed_form(&mut rng, m, cfg.max_degree);
            let report =
                projector_commutator(&a, &b, std::slice::from_ref(&w)).expect("same dimension");
            general.check(report.holds(), || format!("w = {}", show(&w)));

            let (y, z) = biorthogonal_pairs(&mut rng, m);
            let report =
                projector_commutator(&y, &z, std::slice::from_ref(&w)).expect("same dimension");
            commute.check(report.projectors_commute(), || format!("w = {}", show(&w)));
        }
    }
    vec![general, commute]
}

/// Two coordinate pairs on distinct random axes.
fn biorthogonal_pairs(rng: &mut SuiteRng, m: usize) -> (DescentPair, DescentPair) {
    let i = rng.gen_range(0..m);
    let j = (i + rng.gen_range(1..m)) % m;
    (DescentPair::coordinate(m, i), DescentPair::coordinate(m, j))
}

/// `⋆ = P⋆Q + Q⋆P` for metric pairs.
pub fn hodge_off_diagonal(cfg: &SuiteConfig, hodge: HodgeFn) -> IdentityResult {
    let mut r = IdentityResult::new(
        "projector.hodge_off_diagonal",
        scope(&cfg.dims, "metric pairs"),
    );
    let mut rng = stream(cfg.seed, 9);
    for &m in &cfg.dims {
        for _ in 0..cfg.trials {
            let g = random_metric(&mut rng, m);
            let pair = random_metric_pair(&mut rng, &g);
            let w = random::mixed_form(&mut rng, m, cfg.max_degree);
            let p = |f: &Form| proj_p(&pair, f).expect("same dimension");
            let q = |f: &Form| proj_q(&pair, f).expect("same dimension");
            let star = |f: &Form| hodge(f, &g);
            let split = &p(&star(&q(&w))) + &q(&star(&p(&w)));
            r.check(split == star(&w), || {
                format!("metric {g}, w = {}", show(&w))
            });
        }
    }
    r
}

/// Decompositions recompose, and the Hodge components of `⋆w` agree with the
/// decomposition of `⋆w` itself.
pub fn descent_components(cfg: &SuiteConfig, hodge: HodgeFn) -> Vec<IdentityResult> {
    let dims: Vec<usize> = cfg.dims.iter().copied().filter(|&m| m >= 2).collect();
    let mut recompose = IdentityResult::new("descent.recompose", scope(&dims, "single and double"));
    let mut single = IdentityResult::new("descent.hodge_single", scope(&dims, "metric pairs"));
    let mut double = IdentityResult::new("descent.hodge_double", scope(&dims, "coordinate pairs"));
    let mut rng = stream(cfg.seed, 10);
    for &m in &dims {
        for _ in 0..cfg.trials {
            let g = random_metric(&mut rng, m);
            let (_, w) = random::any_homogeneous(&mut rng, m, cfg.max_degree);
            let star = hodge(&w, &g);

            let pair = random_metric_pair(&mut rng, &g);
            let d = decompose_single(&pair, &w).expect("same dimension");
            let (y, z) = biorthogonal_pairs(&mut rng, m);
            let dd = decompose_double(&y, &z, &w).expect("biorthogonal pairs");
            recompose.check(d.recompose() == w && dd.recompose() == w, || {
                format!("w = {}", show(&w))
            });

            let expected = decompose_single(&pair, &star).expect("same dimension");
            let got = hodge_components(&pair, &w, &g).expect("metric pair");
            single.check(
                got.scalar_part == expected.scalar_part && got.vector_part == expected.vector_part,
                || format!("metric {g}, w = {}", show(&w)),
            );

            let expected = decompose_double(&y, &z, &star).expect("biorthogonal pairs");
            let got = hodge_components_double(&y, &z, &w, &g).expect("metric pairs");
            double.check(got.parts == expected.parts, || {
                format!("metric {g}, w = {}", show(&w))
            });
        }
    }
    vec![recompose, single, double]
}

/// The principal symbol of the wave operator is the inverse metric on differentials.
pub fn principal_symbol_metric(cfg: &SuiteConfig) -> IdentityResult {
    let mut r = IdentityResult::new(
        "wave.principal_symbol",
        scope(&cfg.dims, "random signature"),
    );
    let mut rng = stream(cfg.seed, 11);
    for &m in &cfg.dims {
        for _ in 0..cfg.trials {
            let g = random_metric(&mut rng, m);
            let f = random::poly(&mut rng, m, cfg.max_degree + 1, 3);
            let h = random::poly(&mut rng, m, cfg.max_degree + 1, 3);
            let mut expected = Poly::zero(m);
            for a in 0..m {
                let term = &f.partial(a).expect("axis") * &h.partial(a).expect("axis");
                expected = if g.sign(a) > 0 {
                    &expected + &term
                } else {
                    &expected - &term
                };
            }
            let got = principal_symbol(&g, &f, &h);
            r.check(got == expected, || format!("metric {g}, f = {f}, h = {h}"));
        }
    }
    r
}

/// `X♭` of a random vector contracted with itself is `g(X, X)`.
pub fn flat_norm(cfg: &SuiteConfig) -> IdentityResult {
    let mut r = IdentityResult::new("metric.flat_norm", scope(&cfg.dims, "random signature"));
    let mut rng = stream(cfg.seed, 12);
    for &m in &cfg.dims {
        for _ in 0..cfg.trials {
            let g = random_metric(&mut rng, m);
            let x = random::constant_vector(&mut rng, m);
            let xi = FrameVector::from_one_form(&flat(&x, &g)).expect("constant 1-form");
            r.check(xi.pair(&x) == g.inner(&x, &x), || {
                format!("metric {g}, X = {:?}", x.components())
            });
        }
    }
    r
}

/// Runs every suite.
pub fn run(cfg: &SuiteConfig, hodge: HodgeFn) -> SuiteReport {
    let mut identities = vec![
        duality(cfg, hodge),
        codifferential_lorentzian(cfg),
        codifferential_nilpotent(cfg),
        exterior_nilpotent(cfg),
        wave_laplace(cfg),
        principal_symbol_metric(cfg),
        lie_hodge(cfg, hodge),
        flat_norm(cfg),
    ];
    identities.extend(projector_algebra(cfg));
    identities.extend(projector_commutators(cfg));
    identities.push(hodge_off_diagonal(cfg, hodge));
    identities.extend(descent_components(cfg, hodge));
    SuiteReport {
        seed: cfg.seed,
        trials: cfg.trials,
        dims: cfg.dims.clone(),
        identities,
    }
}
