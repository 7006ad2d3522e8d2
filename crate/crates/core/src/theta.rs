//! Theta constants by truncated lattice sums, the action of `Sp(g, Z)` on
//! the Siegel upper half-space, and numeric checks of the transformation
//! formula in which the unknown multiplier `a(M)` cancels.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::character::{chi, phi_full};
use crate::characteristic::{act, Characteristic};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::symplectic::SymplecticMatrix;

pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
pub const DEFAULT_TOL: f64 = 1e-6;
/// Characteristics with `|theta_m(tau)|` below this are not divided by.
pub const THETA_FLOOR: f64 = 1e-4;
const SYMMETRY_TOL: f64 = 1e-12;
const MAX_CONDITION: f64 = 1e12;

/// A point of the Siegel upper half-space `H_g`.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPoint {
    tau: DMatrix<Complex64>,
    lambda_min: f64,
}

impl SiegelPoint {
    /// Checks symmetry (to 1e-12, relative to the largest entry) and
    /// positive definiteness of the imaginary part.
    pub fn new(tau: DMatrix<Complex64>) -> Result<Self> {
        let g = tau.nrows();
        if g == 0 || tau.ncols() != g {
            return Err(Error::BadShape(
                "tau must be a non-empty square matrix".into(),
            ));
        }
        if tau.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotUpperHalfSpace("non-finite entry".into()));
        }
        let scale = tau.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for i in 0..g {
            for j in i + 1..g {
                if (tau[(i, j)] - tau[(j, i)]).norm() > SYMMETRY_TOL * scale {
                    return Err(Error::NotUpperHalfSpace(format!(
                        "tau is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let im = DMatrix::from_fn(g, g, |i, j| 0.5 * (tau[(i, j)].im + tau[(j, i)].im));
        let lambda_min = SymmetricEigen::new(im)
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if lambda_min.is_nan() || lambda_min <= 0.0 {
            return Err(Error::NotUpperHalfSpace(format!(
                "Im(tau) is not positive definite (smallest eigenvalue {lambda_min:e})"
            )));
        }
        Ok(Self { tau, lambda_min })
    }

    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let g = re.len();
        if im.len() != g || re.iter().chain(im).any(|r| r.len() != g) {
            return Err(Error::BadShape("re and im must both be g x g".into()));
        }
        Self::new(DMatrix::from_fn(g, g, |i, j| {
            Complex64::new(re[i][j], im[i][j])
        }))
    }

    /// `i * I_g`.
    pub fn scalar_i(g: usize) -> Self {
        Self::new(DMatrix::from_fn(g, g, |i, j| {
            Complex64::new(0.0, if i == j { 1.0 } else { 0.0 })
        }))
        .expect("i*I is in H_g")
    }

    /// Real part uniform in `[-1/2, 1/2]`, imaginary part
    /// `0.6 I + 0.2 B t(B)` with `B` uniform in `[-1, 1]`.
    pub fn random<R: Rng + ?Sized>(g: usize, rng: &mut R) -> Self {
        let mut re = DMatrix::<f64>::zeros(g, g);
        for i in 0..g {
            for j in i..g {
                let x = rng.random_range(-0.5..=0.5);
                re[(i, j)] = x;
                re[(j, i)] = x;
            }
        }
        let b = DMatrix::<f64>::from_fn(g, g, |_, _| rng.random_range(-1.0..=1.0));
        let im = &b * b.transpose() * 0.2 + DMatrix::<f64>::identity(g, g) * 0.6;
        let tau = DMatrix::from_fn(g, g, |i, j| {
            Complex64::new(re[(i, j)], 0.5 * (im[(i, j)] + im[(j, i)]))
        });
        Self::new(tau).expect("random point is in H_g")
    }

    pub fn degree(&self) -> usize {
        self.tau.nrows()
    }

    pub fn tau(&self) -> &DMatrix<Complex64> {
        &self.tau
    }

    /// Smallest eigenvalue of `Im(tau)`.
    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn re_rows(&self) -> Vec<Vec<f64>> {
        let g = self.degree();
        (0..g)
            .map(|i| (0..g).map(|j| self.tau[(i, j)].re).collect())
            .collect()
    }

    pub fn im_rows(&self) -> Vec<Vec<f64>> {
        let g = self.degree();
        (0..g)
            .map(|i| (0..g).map(|j| self.tau[(i, j)].im).collect())
            .collect()
    }
}

/// Smallest box radius `R` such that every lattice vector outside
/// `[-R, R]^g + m'/2` contributes less than `tail_tol` in total.
///
/// Uses `|exp(pi i t(v) tau v)| <= exp(-pi lambda |v|^2)` and bounds the
/// complement of the box by `g * t(R) * S^{g-1}`, where `t(R)` is the
/// one-dimensional two-sided tail beyond `R + 1/2` and
/// `S <= 1 + 1/sqrt(lambda)` the full one-dimensional sum.
pub fn truncation_radius(lambda_min: f64, g: usize, tail_tol: f64) -> usize {
    let s = 1.0 + 1.0 / lambda_min.sqrt();
    let bound = |r: f64| {
        let x = r + 0.5;
        let q = (-2.0 * PI * lambda_min * x).exp();
        let tail = 2.0 * (-PI * lambda_min * x * x).exp() / (1.0 - q);
        g as f64 * tail * s.powi(g as i32 - 1)
    };
    let mut r = 1usize;
    while bound(r as f64) >= tail_tol {
        r += 1;
    }
    r
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::NonPositiveTolerance(tol));
    }
    Ok(())
}

/// `theta_m(tau) = sum_p exp(pi i [t(p + m'/2) tau (p + m'/2) + 2 t(p + m'/2) m''/2])`,
/// truncated so that the discarded tail stays below `tail_tol`.
pub fn theta_constant(m: &Characteristic, tau: &SiegelPoint, tail_tol: f64) -> Result<Complex64> {
    check_tol(tail_tol)?;
    let g = tau.degree();
    if m.degree() != g {
        return Err(Error::DegreeMismatch {
            left: g,
            right: m.degree(),
        });
    }
    let radius = truncation_radius(tau.lambda_min, g, tail_tol) as i64;
    Ok(theta_sum(m, tau, radius))
}

/// The truncated sum at a fixed radius.
///
/// Writing `m' = 2q + r` with `r` in `{0,1}^g` and re-indexing `k = p + q`,
/// every lattice vector is `v = k + r/2` and the linear phase
/// `exp(pi i t(v) m'')` reduces to `i^{2 t(k) m'' + t(r) m''}`, which only
/// depends on `m''` mod 4.
pub fn theta_sum(m: &Characteristic, tau: &SiegelPoint, radius: i64) -> Complex64 {
    let g = tau.degree();
    let two = BigInt::from(2);
    let four = BigInt::from(4);
    let r: Vec<f64> = m
        .prime()
        .iter()
        .map(|x| x.mod_floor(&two).to_f64().unwrap() * 0.5)
        .collect();
    let r_int: Vec<i64> = m
        .prime()
        .iter()
        .map(|x| x.mod_floor(&two).to_i64().unwrap())
        .collect();
    let mpp: Vec<i64> = m
        .double_prime()
        .iter()
        .map(|x| x.mod_floor(&four).to_i64().unwrap())
        .collect();
    let base_phase: i64 = r_int.iter().zip(&mpp).map(|(a, b)| a * b).sum();

    let tr: Vec<f64> = tau.tau.iter().map(|z| z.re).collect();
    let ti: Vec<f64> = tau.tau.iter().map(|z| z.im).collect();
    // column-major storage: (i, j) at i + j * g
    let at = |v: &[f64], i: usize, j: usize| v[i + j * g];

    let quarter_turns = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];

    let side = (2 * radius + 1) as usize;
    let total = side.pow(g as u32);
    let mut k = vec![0i64; g];
    let mut v = vec![0f64; g];
    let mut sum = Complex64::new(0.0, 0.0);
    for idx in 0..total {
        let mut rest = idx;
        for i in 0..g {
            k[i] = (rest % side) as i64 - radius;
            rest /= side;
            v[i] = k[i] as f64 + r[i];
        }
        let mut q_re = 0.0;
        let mut q_im = 0.0;
        for i in 0..g {
            q_re += at(&tr, i, i) * v[i] * v[i];
            q_im += at(&ti, i, i) * v[i] * v[i];
            for j in i + 1..g {
                q_re += 2.0 * at(&tr, i, j) * v[i] * v[j];
                q_im += 2.0 * at(&ti, i, j) * v[i] * v[j];
            }
        }
        let lin: i64 = k.iter().zip(&mpp).map(|(a, b)| a * b).sum();
        let phase = quarter_turns[(2 * lin + base_phase).rem_euclid(4) as usize];
        let magnitude = (-PI * q_im).exp();
        sum += phase * Complex64::from_polar(magnitude, PI * q_re);
    }
    sum
}

fn to_complex_matrix(m: &IntMatrix) -> DMatrix<Complex64> {
    let n = m.size();
    DMatrix::from_fn(n, n, |i, j| {
        Complex64::new(m.get(i, j).to_f64().unwrap_or(f64::INFINITY), 0.0)
    })
}

fn max_row_sum(m: &DMatrix<Complex64>) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `c tau + d` and its inverse, with a condition check.
fn factor(
    mat: &SymplecticMatrix,
    tau: &SiegelPoint,
) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    if mat.degree() != tau.degree() {
        return Err(Error::DegreeMismatch {
            left: mat.degree(),
            right: tau.degree(),
        });
    }
    let c = to_complex_matrix(mat.c());
    let d = to_complex_matrix(mat.d());
    let f = &c * &tau.tau + d;
    let inv = f
        .clone()
        .try_inverse()
        .ok_or(Error::SingularFactor(f64::INFINITY))?;
    let cond = max_row_sum(&f) * max_row_sum(&inv);
    if !cond.is_finite() || cond > MAX_CONDITION {
        return Err(Error::SingularFactor(cond));
    }
    Ok((f, inv))
}

/// `M tau = (a tau + b)(c tau + d)^{-1}`, re-symmetrized.
pub fn mobius(mat: &SymplecticMatrix, tau: &SiegelPoint) -> Result<SiegelPoint> {
    let (_, inv) = factor(mat, tau)?;
    let a = to_complex_matrix(mat.a());
    let b = to_complex_matrix(mat.b());
    let num = &a * &tau.tau + b;
    let out = num * inv;
    let sym = (&out + out.transpose()) * Complex64::new(0.5, 0.0);
    SiegelPoint::new(sym)
}

/// Principal square root of `det(c tau + d)`, argument in `(-pi/2, pi/2]`.
pub fn det_sqrt_factor(mat: &SymplecticMatrix, tau: &SiegelPoint) -> Result<Complex64> {
    Ok(principal_sqrt(det_factor(mat, tau)?))
}

/// `det(c tau + d)`.
pub fn det_factor(mat: &SymplecticMatrix, tau: &SiegelPoint) -> Result<Complex64> {
    let (f, _) = factor(mat, tau)?;
    Ok(f.determinant())
}

fn principal_sqrt(z: Complex64) -> Complex64 {
    // -0.0 imaginary parts would select the branch at -pi/2
    let z = Complex64::new(z.re, if z.im == 0.0 { 0.0 } else { z.im });
    z.sqrt()
}

/// Complex number in `{"re": .., "im": ..}` form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<JsonComplex> for Complex64 {
    fn from(z: JsonComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Outcome of a numeric transformation check.
///
/// `ratios[k]` is the raw quotient for `m_list[k]` and `normalized[k]` the
/// same quotient divided by the exact prediction; the normalized values
/// must agree, and their common value `estimated_unit` is the multiplier
/// (`a(M)` or, for theta products, `a(M)^2`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub m_list: Vec<Vec<i64>>,
    pub ratios: Vec<JsonComplex>,
    pub normalized: Vec<JsonComplex>,
    pub estimated_unit: JsonComplex,
    /// The unit is checked to be a root of unity of this order.
    pub unit_order: u32,
    pub max_deviation: f64,
    pub modulus_error: f64,
    pub power_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl VerificationReport {
    fn assemble(
        m_list: Vec<Vec<i64>>,
        ratios: Vec<Complex64>,
        normalized: Vec<Complex64>,
        unit_order: u32,
        power_slack: f64,
        tol: f64,
    ) -> Self {
        let mut max_deviation: f64 = 0.0;
        for (i, x) in normalized.iter().enumerate() {
            for y in &normalized[i + 1..] {
                max_deviation = max_deviation.max((x - y).norm());
            }
        }
        let unit = normalized.iter().sum::<Complex64>() / normalized.len() as f64;
        let modulus_error = (unit.norm() - 1.0).abs();
        let power_error = (unit.powu(unit_order) - 1.0).norm();
        let finite =
            max_deviation.is_finite() && modulus_error.is_finite() && power_error.is_finite();
        let passed = finite
            && max_deviation <= tol
            && modulus_error <= tol
            && power_error <= power_slack * tol;
        Self {
            m_list,
            ratios: ratios.into_iter().map(Into::into).collect(),
            normalized: normalized.into_iter().map(Into::into).collect(),
            estimated_unit: unit.into(),
            unit_order,
            max_deviation,
            modulus_error,
            power_error,
            tolerance: tol,
            passed,
        }
    }
}

/// Tuning knobs for the numeric checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    pub tail_tol: f64,
    pub floor: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        Self {
            tail_tol: DEFAULT_TAIL_TOL,
            floor: THETA_FLOOR,
        }
    }
}

fn flat(m: &Characteristic) -> Vec<i64> {
    m.to_i64s().unwrap_or_default()
}

/// `theta_m(M tau) / (det(c tau + d)^{1/2} theta_m(tau) chi_m(M))` must be
/// the same for every even `m`.
pub fn verify_character(
    mat: &SymplecticMatrix,
    tau: &SiegelPoint,
    tol: f64,
) -> Result<VerificationReport> {
    verify_character_with(mat, tau, tol, &NumericOptions::default())
}

pub fn verify_character_with(
    mat: &SymplecticMatrix,
    tau: &SiegelPoint,
    tol: f64,
    opts: &NumericOptions,
) -> Result<VerificationReport> {
    check_tol(tol)?;
    mat.require_level2()?;
    let image = mobius(mat, tau)?;
    // one branch for every characteristic
    let root = det_sqrt_factor(mat, tau)?;
    let evens = crate::characteristic::enumerate_even_mod2(tau.degree());
    let rows = evens
        .par_iter()
        .map(|m| -> Result<Option<(Vec<i64>, Complex64, Complex64)>> {
            let before = theta_constant(m, tau, opts.tail_tol)?;
            if before.norm() <= opts.floor {
                return Ok(None);
            }
            let after = theta_constant(m, &image, opts.tail_tol)?;
            let r = after / (root * before);
            let s = r / chi(m, mat)?.to_complex();
            Ok(Some((flat(m), r, s)))
        })
        .collect::<Result<Vec<_>>>()?;
    finish(rows, 8, 8.0, tol)
}

fn finish(
    rows: Vec<Option<(Vec<i64>, Complex64, Complex64)>>,
    unit_order: u32,
    power_slack: f64,
    tol: f64,
) -> Result<VerificationReport> {
    let rows: Vec<_> = rows.into_iter().flatten().collect();
    if rows.len() < 2 {
        return Err(Error::TooFewUsable { usable: rows.len() });
    }
    let mut m_list = Vec::new();
    let mut ratios = Vec::new();
    let mut normalized = Vec::new();
    for (m, r, s) in rows {
        m_list.push(m);
        ratios.push(r);
        normalized.push(s);
    }
    Ok(VerificationReport::assemble(
        m_list,
        ratios,
        normalized,
        unit_order,
        power_slack,
        tol,
    ))
}

/// For any `M` in `Sp(g, Z)`:
/// `theta_{M o m}(M tau) / (e(Phi_m(M)) det(c tau + d)^{1/2} theta_m(tau))`
/// must not depend on `m`. Odd characteristics are skipped.
pub fn verify_transformation_general(
    mat: &SymplecticMatrix,
    m_set: &[Characteristic],
    tau: &SiegelPoint,
    tol: f64,
) -> Result<VerificationReport> {
    verify_transformation_general_with(mat, m_set, tau, tol, &NumericOptions::default())
}

pub fn verify_transformation_general_with(
    mat: &SymplecticMatrix,
    m_set: &[Characteristic],
    tau: &SiegelPoint,
    tol: f64,
    opts: &NumericOptions,
) -> Result<VerificationReport> {
    check_tol(tol)?;
    let image = mobius(mat, tau)?;
    let root = det_sqrt_factor(mat, tau)?;
    let rows = m_set
        .par_iter()
        .filter(|m| m.is_even())
        .map(|m| -> Result<Option<(Vec<i64>, Complex64, Complex64)>> {
            let before = theta_constant(m, tau, opts.tail_tol)?;
            if before.norm() <= opts.floor {
                return Ok(None);
            }
            let target = act(mat, m)?;
            let after = theta_constant(&target, &image, opts.tail_tol)?;
            let r = after / (root * before);
            let s = r / phi_full(m, mat)?.exp().to_complex();
            Ok(Some((flat(m), r, s)))
        })
        .collect::<Result<Vec<_>>>()?;
    finish(rows, 8, 8.0, tol)
}

/// For `psi = theta_m theta_n`:
/// `psi(M tau) / (det(c tau + d) psi(tau) chi_m(M) chi_n(M))` must not
/// depend on the pair. No square root is involved, so the common value
/// `a(M)^2` is a fourth root of unity.
pub fn verify_igusa_product(
    pairs: &[(Characteristic, Characteristic)],
    mat: &SymplecticMatrix,
    tau: &SiegelPoint,
    tol: f64,
) -> Result<VerificationReport> {
    verify_igusa_product_with(pairs, mat, tau, tol, &NumericOptions::default())
}

pub fn verify_igusa_product_with(
    pairs: &[(Characteristic, Characteristic)],
    mat: &SymplecticMatrix,
    tau: &SiegelPoint,
    tol: f64,
    opts: &NumericOptions,
) -> Result<VerificationReport> {
    check_tol(tol)?;
    mat.require_level2()?;
    let image = mobius(mat, tau)?;
    let det = det_factor(mat, tau)?;
    let mut distinct: Vec<&Characteristic> = pairs
        .iter()
        .flat_map(|(m, n)| [m, n])
        .filter(|m| m.is_even())
        .collect();
    distinct.sort();
    distinct.dedup();
    let values = distinct
        .par_iter()
        .map(|m| -> Result<(Complex64, Complex64, Complex64)> {
            Ok((
                theta_constant(m, tau, opts.tail_tol)?,
                theta_constant(m, &image, opts.tail_tol)?,
                chi(m, mat)?.to_complex(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let lookup = |m: &Characteristic| {
        distinct
            .binary_search(&m)
            .map(|k| values[k])
            .expect("characteristic was collected")
    };
    let rows = pairs
        .iter()
        .filter(|(m, n)| m.is_even() && n.is_even())
        .map(|(m, n)| {
            let (tm, tm_image, chi_m) = lookup(m);
            let (tn, tn_image, chi_n) = lookup(n);
            if tm.norm() <= opts.floor || tn.norm() <= opts.floor {
                return None;
            }
            let r = tm_image * tn_image / (det * tm * tn);
            let s = r / (chi_m * chi_n);
            let mut label = flat(m);
            label.extend(flat(n));
            Some((label, r, s))
        })
        .collect();
    finish(rows, 4, 1.0, tol)
}

/// Every unordered pair (with repetition) of even characteristics in `{0,1}^{2g}`.
pub fn even_pairs(g: usize) -> Vec<(Characteristic, Characteristic)> {
    let evens = crate::characteristic::enumerate_even_mod2(g);
    let mut out = Vec::new();
    for (i, m) in evens.iter().enumerate() {
        for n in &evens[i..] {
            out.push((m.clone(), n.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{generator, GeneratorKind};

    fn ch(v: &[i64]) -> Characteristic {
        Characteristic::from_flat(v).unwrap()
    }

    /// Independent 1-D oracle: symmetric summation of `exp(-pi (p + s)^2)`
    /// with sign `(-1)^{...}` applied term by term.
    fn oracle_g1_at_i(mp: i64, mpp: i64, radius: i64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for p in -radius..=radius {
            let v = p as f64 + mp as f64 / 2.0;
            let arg = Complex64::new(0.0, PI) * (Complex64::new(0.0, v * v) + v * mpp as f64);
            s += arg.exp();
        }
        s
    }

    #[test]
    fn classical_value_at_i() {
        let tau = SiegelPoint::scalar_i(1);
        let oracle = oracle_g1_at_i(0, 0, 12);
        assert!((oracle.re - 1.086434811213).abs() < 1e-12);
        let t = theta_constant(&ch(&[0, 0]), &tau, 1e-12).unwrap();
        assert!((t - oracle).norm() < 1e-12);
        let t10 = theta_constant(&ch(&[1, 0]), &tau, 1e-12).unwrap();
        let t01 = theta_constant(&ch(&[0, 1]), &tau, 1e-12).unwrap();
        assert!((t10 - t01).norm() < 1e-12);
        assert!((t10.re - 0.913579138156).abs() < 1e-11);
        assert!((t10 - oracle_g1_at_i(1, 0, 12)).norm() < 1e-12);
        assert!(theta_constant(&ch(&[1, 1]), &tau, 1e-12).unwrap().norm() < 1e-12);
    }

    #[test]
    fn theta_rejects_bad_input() {
        let tau = SiegelPoint::scalar_i(1);
        assert_eq!(
            theta_constant(&ch(&[0, 0]), &tau, 0.0),
            Err(Error::NonPositiveTolerance(0.0))
        );
        assert!(matches!(
            theta_constant(&ch(&[0, 0, 0, 0]), &tau, 1e-12),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            SiegelPoint::from_parts(&[vec![0.0]], &[vec![-1.0]]),
            Err(Error::NotUpperHalfSpace(_))
        ));
        assert!(matches!(
            SiegelPoint::from_parts(
                &[vec![0.0, 0.1], vec![0.2, 0.0]],
                &[vec![1.0, 0.0], vec![0.0, 1.0]]
            ),
            Err(Error::NotUpperHalfSpace(_))
        ));
    }

    #[test]
    fn truncation_converges() {
        let mut rng = crate::symplectic::seeded_rng(11);
        for g in 1..=2 {
            for _ in 0..5 {
                let tau = SiegelPoint::random(g, &mut rng);
                let r = truncation_radius(tau.lambda_min(), g, 1e-12) as i64;
                for m in crate::characteristic::enumerate_even_mod2(g) {
                    let a = theta_sum(&m, &tau, r);
                    let b = theta_sum(&m, &tau, 2 * r);
                    assert!((a - b).norm() < 1e-12, "g={g} m={m}");
                }
            }
        }
    }

    #[test]
    fn mobius_examples() {
        let tau = SiegelPoint::scalar_i(1);
        let id = SymplecticMatrix::identity(1);
        assert_eq!(mobius(&id, &tau).unwrap().tau(), tau.tau());
        let c11 = generator(GeneratorKind::C, 1, 1, 1).unwrap();
        let z = mobius(&c11, &tau).unwrap().tau()[(0, 0)];
        assert!((z - Complex64::new(0.4, 0.2)).norm() < 1e-15);
    }

    #[test]
    fn det_sqrt_examples() {
        let tau = SiegelPoint::scalar_i(1);
        let id = SymplecticMatrix::identity(1);
        assert_eq!(
            det_sqrt_factor(&id, &tau).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let b11 = generator(GeneratorKind::B, 1, 1, 1).unwrap();
        assert_eq!(
            det_sqrt_factor(&b11, &tau).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let c11 = generator(GeneratorKind::C, 1, 1, 1).unwrap();
        let r = det_sqrt_factor(&c11, &tau).unwrap();
        assert!((r - Complex64::new(1.272019649514069, 0.7861513777574233)).norm() < 1e-12);
        // -I gives det = 1 in even degree and -1 in odd degree
        let minus = SymplecticMatrix::identity(1).negate();
        assert_eq!(
            det_sqrt_factor(&minus, &tau).unwrap(),
            Complex64::new(0.0, 1.0)
        );
    }

    #[test]
    fn verify_identity_and_b11() {
        let tau = SiegelPoint::scalar_i(1);
        let rep = verify_character(&SymplecticMatrix::identity(1), &tau, 1e-6).unwrap();
        assert!(rep.passed);
        assert!(rep
            .normalized
            .iter()
            .all(|s| (Complex64::from(*s) - 1.0).norm() < 1e-12));
        let b11 = generator(GeneratorKind::B, 1, 1, 1).unwrap();
        let rep = verify_character(&b11, &tau, 1e-6).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.m_list.len(), 3);
        let t = SymplecticMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(matches!(
            verify_character(&t, &tau, 1e-6),
            Err(Error::NotLevel2(_))
        ));
    }

    #[test]
    fn verify_general_outside_level2() {
        let tau = SiegelPoint::scalar_i(1);
        let all = crate::characteristic::enumerate_all_mod2(1);
        for rows in [
            vec![vec![0, 1], vec![-1, 0]],
            vec![vec![1, 1], vec![0, 1]],
            vec![vec![1, 0], vec![1, 1]],
            vec![vec![2, 1], vec![1, 1]],
        ] {
            let m = SymplecticMatrix::from_rows(&rows).unwrap();
            let rep = verify_transformation_general(&m, &all, &tau, 1e-6).unwrap();
            assert!(rep.passed, "{rows:?}: {rep:?}");
        }
    }

    #[test]
    fn too_few_usable() {
        let tau = SiegelPoint::scalar_i(1);
        let id = SymplecticMatrix::identity(1);
        let err = verify_transformation_general(&id, &[ch(&[0, 0]), ch(&[1, 1])], &tau, 1e-6);
        assert_eq!(err, Err(Error::TooFewUsable { usable: 1 }));
    }

    #[test]
    fn product_check_b11() {
        let tau = SiegelPoint::scalar_i(1);
        let b11 = generator(GeneratorKind::B, 1, 1, 1).unwrap();
        let rep = verify_igusa_product(&even_pairs(1), &b11, &tau, 1e-6).unwrap();
        assert!(rep.passed, "{rep:?}");
        let unit = Complex64::from(rep.estimated_unit);
        assert!((unit.powu(4) - 1.0).norm() < 1e-6);
    }
}
