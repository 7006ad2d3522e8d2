//! Randomized verification suites run by `siegel-char verify`.
//!
//! * A: homomorphism `chi(M1 M2) = chi(M1) chi(M2)` on random word pairs
//! * B: `chi = 1` on random elements of `Gamma_g(4,8)`
//! * C: numeric transformation checks on random `(M, tau)`
//! * D: `chi` constant over even `m` versus membership in `Gamma_g(4,8)`
//! * E: congruences of `Phi` under `m -> m + 2 Delta` and `m -> M' o m`
//!
//! Every suite draws from its own ChaCha8 stream seeded from the run seed,
//! so a report is a pure function of the configuration.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::character::{chi, is_chi_constant_over_even, phi_full, phi_level2};
use crate::characteristic::{act, enumerate_all_mod2, Characteristic};
use crate::error::{Error, Result};
use crate::io::{characteristic_to_json, matrix_to_json};
use crate::symplectic::{
    random_igusa48, random_near_miss, random_word, seeded_rng, word_to_matrix, SymplecticMatrix,
};
use crate::theta::{
    even_pairs, verify_character_with, verify_igusa_product_with, NumericOptions, SiegelPoint,
};

/// Numeric checks use at most this many samples when `g >= 3`.
pub const NUMERIC_CAP_G3: usize = 5;
/// Word length cap for the numeric suite.
pub const NUMERIC_WORD_LENGTH: usize = 4;
/// Below this the numeric suite cannot pass in binary64.
pub const ATTAINABLE_TOL: f64 = 1e-12;
const MAX_RECORDED_FAILURES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub g: usize,
    pub seed: u64,
    pub trials: usize,
    pub word_length: usize,
    pub tol: f64,
    pub tail_tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            g: 1,
            seed: 42,
            trials: 100,
            word_length: 8,
            tol: crate::theta::DEFAULT_TOL,
            tail_tol: crate::theta::DEFAULT_TAIL_TOL,
        }
    }
}

impl RunConfig {
    /// Rejects configurations no suite can run with. A `tol` at or below
    /// `tail_tol` is accepted and makes suite C report `TooTight`.
    pub fn validate(&self) -> Result<()> {
        if self.g == 0 {
            return Err(Error::BadShape("g must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::BadShape("trials must be at least 1".into()));
        }
        if self.tail_tol.is_nan() || self.tail_tol <= 0.0 {
            return Err(Error::NonPositiveTolerance(self.tail_tol));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::NonPositiveTolerance(self.tol));
        }
        Ok(())
    }

    pub fn is_too_tight(&self) -> bool {
        self.tol <= self.tail_tol || self.tol < ATTAINABLE_TOL
    }

    fn rng_for(&self, suite: u64) -> rand_chacha::ChaCha8Rng {
        seeded_rng(
            self.seed
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(suite),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub description: String,
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Value>,
}

impl SuiteResult {
    fn new(name: &str, description: &str) -> Self {
        Self {
            name: name.into(),
            description: description.into(),
            checks: 0,
            passed: 0,
            failed: 0,
            ok: true,
            diagnostic: None,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> Value) {
        self.checks += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.ok = false;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(detail());
            }
        }
    }

    fn error(&mut self, e: Error) {
        self.record(false, || json!({ "error": e.to_string() }));
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub suites: Vec<SuiteResult>,
    pub ok: bool,
}

fn random_level2<R: Rng + ?Sized>(g: usize, max_len: usize, rng: &mut R) -> SymplecticMatrix {
    let len = rng.random_range(0..=max_len);
    word_to_matrix(&random_word(g, len, rng))
}

fn random_characteristic<R: Rng + ?Sized>(g: usize, bound: i64, rng: &mut R) -> Characteristic {
    let flat: Vec<i64> = (0..2 * g)
        .map(|_| rng.random_range(-bound..=bound))
        .collect();
    Characteristic::from_flat(&flat).expect("g >= 1")
}

pub fn suite_homomorphism(cfg: &RunConfig) -> SuiteResult {
    let mut res = SuiteResult::new("A", "chi(M1 M2) = chi(M1) chi(M2) on random word pairs");
    let mut rng = cfg.rng_for(1);
    let chars = enumerate_all_mod2(cfg.g);
    for _ in 0..cfg.trials {
        let m1 = random_level2(cfg.g, cfg.word_length, &mut rng);
        let m2 = random_level2(cfg.g, cfg.word_length, &mut rng);
        let prod = m1.multiply(&m2).expect("same degree");
        let bad = chars.iter().find(|m| {
            let lhs = chi(m, &prod).expect("level 2");
            let rhs = chi(m, &m1).expect("level 2") * chi(m, &m2).expect("level 2");
            lhs != rhs
        });
        res.record(bad.is_none(), || {
            json!({
                "m1": matrix_to_json(&m1),
                "m2": matrix_to_json(&m2),
                "m": characteristic_to_json(bad.unwrap()),
            })
        });
    }
    res
}

pub fn suite_triviality(cfg: &RunConfig) -> SuiteResult {
    let mut res = SuiteResult::new("B", "chi_m = 1 on random elements of Gamma_g(4,8)");
    let mut rng = cfg.rng_for(2);
    let chars = enumerate_all_mod2(cfg.g);
    for _ in 0..cfg.trials {
        let m = random_igusa48(cfg.g, &mut rng);
        let ok = m.is_igusa48() && chars.iter().all(|c| chi(c, &m).expect("level 2").is_one());
        res.record(ok, || json!({ "matrix": matrix_to_json(&m) }));
    }
    res
}

pub fn suite_numeric(cfg: &RunConfig) -> SuiteResult {
    let mut res = SuiteResult::new(
        "C",
        "theta_m(M tau) / (det^(1/2) theta_m(tau) chi_m(M)) independent of m; same for theta products",
    );
    let mut rng = cfg.rng_for(3);
    let samples = if cfg.g >= 3 {
        cfg.trials.min(NUMERIC_CAP_G3)
    } else {
        cfg.trials
    };
    let opts = NumericOptions {
        tail_tol: cfg.tail_tol,
        ..NumericOptions::default()
    };
    let max_len = cfg.word_length.min(NUMERIC_WORD_LENGTH);
    let pairs = even_pairs(cfg.g);
    for _ in 0..samples {
        let m = random_level2(cfg.g, max_len, &mut rng);
        let tau = SiegelPoint::random(cfg.g, &mut rng);
        match verify_character_with(&m, &tau, cfg.tol, &opts) {
            Ok(rep) => res.record(rep.passed, || {
                json!({ "check": "character", "matrix": matrix_to_json(&m),
                        "tau": crate::io::siegel_point_to_json(&tau), "report": rep })
            }),
            Err(e) => res.error(e),
        }
        match verify_igusa_product_with(&pairs, &m, &tau, cfg.tol, &opts) {
            Ok(rep) => res.record(rep.passed, || {
                json!({ "check": "product", "matrix": matrix_to_json(&m),
                        "tau": crate::io::siegel_point_to_json(&tau), "report": rep })
            }),
            Err(e) => res.error(e),
        }
    }
    if !res.ok && cfg.is_too_tight() {
        res.diagnostic = Some(format!(
            "TooTight: tol = {:e} is below the attainable precision (tail_tol = {:e}, floor {:e})",
            cfg.tol, cfg.tail_tol, ATTAINABLE_TOL
        ));
    }
    res
}

pub fn suite_equivalence(cfg: &RunConfig) -> SuiteResult {
    let mut res = SuiteResult::new(
        "D",
        "chi constant over even m <=> M in Gamma_g(4,8), on words, Gamma_g(4,8) samples and near misses",
    );
    let mut rng = cfg.rng_for(4);
    let mut pool = Vec::with_capacity(3 * cfg.trials);
    for _ in 0..cfg.trials {
        pool.push(("word", random_level2(cfg.g, cfg.word_length, &mut rng)));
        pool.push(("igusa48", random_igusa48(cfg.g, &mut rng)));
        pool.push(("near_miss", random_near_miss(cfg.g, &mut rng)));
    }
    let mut negated = 0usize;
    for (source, m) in &pool {
        let constant = is_chi_constant_over_even(m).expect("level 2");
        let member = m.is_igusa48();
        let minus_member = m.negate().is_igusa48();
        if constant != member && minus_member {
            negated += 1;
        }
        res.record(constant == member, || {
            json!({
                "source": source,
                "matrix": matrix_to_json(m),
                "chi_constant": constant,
                "igusa48": member,
                "minus_igusa48": minus_member,
            })
        });
    }
    if res.failed > 0 {
        res.diagnostic = Some(format!(
            "{} discrepancies, {} of them with -M in Gamma_g(4,8) (chi cannot separate M from -M)",
            res.failed, negated
        ));
    }
    res
}

pub fn suite_congruences(cfg: &RunConfig) -> SuiteResult {
    let mut res = SuiteResult::new(
        "E",
        "Phi_m = Phi_(m+2 Delta), Phi_(M' o m) = Phi_m mod 1, and the level-2 Phi equals the full Phi",
    );
    let mut rng = cfg.rng_for(5);
    for _ in 0..cfg.trials {
        let m_mat = random_level2(cfg.g, cfg.word_length, &mut rng);
        let other = random_level2(cfg.g, cfg.word_length, &mut rng);
        let m = random_characteristic(cfg.g, 3, &mut rng);
        let shift = random_characteristic(cfg.g, 3, &mut rng);
        let base = phi_level2(&m, &m_mat).expect("level 2");
        let shifted = phi_level2(&m.shifted(&shift), &m_mat).expect("level 2");
        let moved = phi_level2(&act(&other, &m).expect("same degree"), &m_mat).expect("level 2");
        let full = phi_full(&m, &m_mat).expect("same degree");
        let ok = base == shifted && base == moved && base == full;
        res.record(ok, || {
            json!({
                "matrix": matrix_to_json(&m_mat),
                "other": matrix_to_json(&other),
                "m": characteristic_to_json(&m),
                "shift": characteristic_to_json(&shift),
                "phi": base.to_string(),
                "phi_shifted": shifted.to_string(),
                "phi_moved": moved.to_string(),
                "phi_full": full.to_string(),
            })
        });
    }
    res
}

/// Runs all suites (in parallel) and assembles the report.
pub fn run_all(cfg: &RunConfig, timestamp: Option<u64>) -> Result<VerifyReport> {
    cfg.validate()?;
    let runners: [fn(&RunConfig) -> SuiteResult; 5] = [
        suite_homomorphism,
        suite_triviality,
        suite_numeric,
        suite_equivalence,
        suite_congruences,
    ];
    let suites: Vec<SuiteResult> = runners.par_iter().map(|f| f(cfg)).collect();
    let ok = suites.iter().all(|s| s.ok);
    Ok(VerifyReport {
        config: *cfg,
        timestamp,
        suites,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(g: usize, trials: usize) -> RunConfig {
        RunConfig {
            g,
            trials,
            ..RunConfig::default()
        }
    }

    #[test]
    fn exact_suites_pass() {
        for g in 1..=2 {
            let c = cfg(g, 20);
            for s in [
                suite_homomorphism(&c),
                suite_triviality(&c),
                suite_congruences(&c),
            ] {
                assert!(s.ok, "{s:?}");
                assert_eq!(s.checks, 20);
            }
        }
    }

    #[test]
    fn equivalence_discrepancies_are_negated_members() {
        let s = suite_equivalence(&cfg(1, 60));
        for f in &s.failures {
            assert_eq!(f["minus_igusa48"], json!(true), "{f}");
        }
    }

    #[test]
    fn numeric_suite_small() {
        let s = suite_numeric(&cfg(1, 5));
        assert!(s.ok, "{s:?}");
        assert_eq!(s.checks, 10);
    }

    #[test]
    fn too_tight_diagnostic() {
        let c = RunConfig {
            tol: 1e-15,
            ..cfg(1, 3)
        };
        assert!(c.validate().is_ok());
        let s = suite_numeric(&c);
        assert!(!s.ok);
        assert!(s.diagnostic.unwrap().starts_with("TooTight"));
    }

    #[test]
    fn invalid_configs() {
        assert!(cfg(1, 0).validate().is_err());
        assert!(RunConfig {
            tail_tol: 0.0,
            ..cfg(1, 1)
        }
        .validate()
        .is_err());
        assert!(RunConfig { g: 0, ..cfg(1, 1) }.validate().is_err());
    }

    #[test]
    fn report_is_deterministic() {
        let c = cfg(1, 8);
        let a = serde_json::to_string(&run_all(&c, None).unwrap()).unwrap();
        let b = serde_json::to_string(&run_all(&c, None).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
