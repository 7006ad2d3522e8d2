//! The character `chi_m` of `Gamma_g(2)` attached to a theta characteristic.
//!
//! Everything here is exact. Values of `chi_m` are eighth roots of unity,
//! stored as exponents `k` mod 8 of `e(k/8)`. The additive encoding is
//! fixed once: `(-1)^A` contributes `4A` and `e(-B/4)` contributes `-2B`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::characteristic::{
    delta, enumerate_all_mod2, enumerate_even_mod2, sign_shift_exponent, solve_preimage,
    Characteristic,
};
use crate::error::{Error, Result};
use crate::matrix::{bilinear, dot, vec_add, vec_sub};
use crate::symplectic::{Generator, GeneratorKind, GeneratorWord, SymplecticMatrix};

/// `e(k/8)` for `k` in `0..8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EighthRoot(u8);

const ROOT_NAMES: [&str; 8] = [
    "1",
    "\u{03b6}\u{2088}",
    "i",
    "i\u{03b6}\u{2088}",
    "\u{2212}1",
    "\u{2212}\u{03b6}\u{2088}",
    "\u{2212}i",
    "\u{2212}i\u{03b6}\u{2088}",
];

impl EighthRoot {
    pub const ONE: Self = Self(0);
    pub const I: Self = Self(2);
    pub const MINUS_ONE: Self = Self(4);
    pub const MINUS_I: Self = Self(6);

    pub fn new(k: i64) -> Self {
        Self(k.rem_euclid(8) as u8)
    }

    pub fn from_big(k: &BigInt) -> Self {
        Self(
            k.mod_floor(&BigInt::from(8))
                .to_u8()
                .expect("residue fits in u8"),
        )
    }

    /// `(-1)^s`.
    pub fn sign(s: u8) -> Self {
        Self::new(4 * (s as i64 & 1))
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn pow(self, e: i64) -> Self {
        Self::new(self.0 as i64 * e.rem_euclid(8))
    }

    pub fn inverse(self) -> Self {
        Self::new(-(self.0 as i64))
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Human-readable name among `1, ζ₈, i, iζ₈, −1, −ζ₈, −i, −iζ₈`.
    pub fn name(self) -> &'static str {
        ROOT_NAMES[self.0 as usize]
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::PI * self.0 as f64 / 4.0)
    }
}

impl Mul for EighthRoot {
    type Output = Self;

    // exponents add
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.0 as i64 + rhs.0 as i64)
    }
}

impl std::iter::Product for EighthRoot {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |a, b| a * b)
    }
}

impl fmt::Display for EighthRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A class in `(1/8)Z / Z`, stored as `t` with value `t/8`, `t` in `0..8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RationalMod1(u8);

impl RationalMod1 {
    pub fn from_eighths(t: &BigInt) -> Self {
        Self(EighthRoot::from_big(t).0)
    }

    pub fn eighths(self) -> u8 {
        self.0
    }

    /// `e(t/8)`.
    pub fn exp(self) -> EighthRoot {
        EighthRoot(self.0)
    }
}

impl fmt::Display for RationalMod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/8", self.0)
    }
}

/// `Phi_m(M)` as an exact element of `(1/8)Z`: `eighths / 8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phi {
    pub eighths: BigInt,
}

impl Phi {
    pub fn class(&self) -> RationalMod1 {
        RationalMod1::from_eighths(&self.eighths)
    }
}

/// Full transformation phase, valid for every `M` in `Sp(g, Z)`:
///
/// `-1/8 (t(m') t(b)d m' + t(m'') t(a)c m'' - 2 t(m') t(b)c m'' - 2 t((a t(b))_0) (d m' - c m''))`
pub fn phi_full_exact(m: &Characteristic, mat: &SymplecticMatrix) -> Result<Phi> {
    check(m, mat)?;
    let (a, b, c, d) = (mat.a(), mat.b(), mat.c(), mat.d());
    let (mp, mpp) = (m.prime(), m.double_prime());
    let btd = &b.transpose() * d;
    let atc = &a.transpose() * c;
    let btc = &b.transpose() * c;
    let ab = mat.ab_diag();
    let lin = vec_sub(&d.mul_vec(mp), &c.mul_vec(mpp));
    let inner: BigInt = bilinear(mp, &btd, mp) + bilinear(mpp, &atc, mpp)
        - 2 * bilinear(mp, &btc, mpp)
        - 2 * dot(&ab, &lin);
    Ok(Phi { eighths: -inner })
}

pub fn phi_full(m: &Characteristic, mat: &SymplecticMatrix) -> Result<RationalMod1> {
    Ok(phi_full_exact(m, mat)?.class())
}

/// Phase simplified for `Gamma_g(2)`:
/// `-1/8 (t(m') t(b)d m' + t(m'') t(a)c m'' - 2 t((a t(b))_0) d m')`.
pub fn phi_level2_exact(m: &Characteristic, mat: &SymplecticMatrix) -> Result<Phi> {
    check(m, mat)?;
    mat.require_level2()?;
    let (a, b, c, d) = (mat.a(), mat.b(), mat.c(), mat.d());
    let (mp, mpp) = (m.prime(), m.double_prime());
    let btd = &b.transpose() * d;
    let atc = &a.transpose() * c;
    let inner: BigInt =
        bilinear(mp, &btd, mp) + bilinear(mpp, &atc, mpp) - 2 * dot(&mat.ab_diag(), &d.mul_vec(mp));
    Ok(Phi { eighths: -inner })
}

pub fn phi_level2(m: &Characteristic, mat: &SymplecticMatrix) -> Result<RationalMod1> {
    Ok(phi_level2_exact(m, mat)?.class())
}

fn check(m: &Characteristic, mat: &SymplecticMatrix) -> Result<()> {
    if m.degree() != mat.degree() {
        return Err(Error::DegreeMismatch {
            left: mat.degree(),
            right: m.degree(),
        });
    }
    Ok(())
}

/// Intermediate quantities of one evaluation of `chi_m(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiEvaluation {
    pub value: EighthRoot,
    pub phi: RationalMod1,
    /// `t(m') Delta'' mod 2`.
    pub delta_sign: u8,
    /// `n` with `M o n = m`.
    pub preimage: Characteristic,
    /// `Delta = (n - m) / 2`.
    pub delta: Characteristic,
}

/// `chi_m(M) = e(Phi_m(M)) (-1)^{t(m') Delta''}` with `m + 2 Delta = n`, `M o n = m`.
///
/// Defined for every `m`, odd ones included.
pub fn chi_detailed(m: &Characteristic, mat: &SymplecticMatrix) -> Result<ChiEvaluation> {
    let phi = phi_level2(m, mat)?;
    let preimage = solve_preimage(mat, m)?;
    let delta = delta(m, &preimage)?;
    let delta_sign = sign_shift_exponent(m, &delta);
    Ok(ChiEvaluation {
        value: phi.exp() * EighthRoot::sign(delta_sign),
        phi,
        delta_sign,
        preimage,
        delta,
    })
}

pub fn chi(m: &Characteristic, mat: &SymplecticMatrix) -> Result<EighthRoot> {
    Ok(chi_detailed(m, mat)?.value)
}

fn small(x: &BigInt, modulus: i64) -> i64 {
    x.mod_floor(&BigInt::from(modulus))
        .to_i64()
        .expect("residue fits")
}

/// Closed-form value of `chi_m` on a generator.
pub fn chi_generator(m: &Characteristic, gen: &Generator) -> Result<EighthRoot> {
    let g = m.degree();
    Generator::new(gen.kind, gen.i, gen.j, g)?;
    let (i, j) = (gen.i - 1, gen.j - 1);
    let mp = |k: usize| small(&m.prime()[k], 8);
    let mpp = |k: usize| small(&m.double_prime()[k], 8);
    let exponent = match gen.kind {
        // (-1)^{m'_i m''_j}
        GeneratorKind::A => 4 * (mp(i) * mpp(j)),
        // (-1)^{m'_i} e(-(m'_i)^2 / 4)
        GeneratorKind::B if i == j => 4 * mp(i) - 2 * mp(i) * mp(i),
        // (-1)^{m'_i m'_j}
        GeneratorKind::B => 4 * (mp(i) * mp(j)),
        // e(-(m''_i)^2 / 4)
        GeneratorKind::C if i == j => -2 * mpp(i) * mpp(i),
        // (-1)^{m''_i m''_j}
        GeneratorKind::C => 4 * (mpp(i) * mpp(j)),
    };
    Ok(EighthRoot::new(exponent))
}

/// Product of the generator values along a word.
pub fn chi_word(m: &Characteristic, w: &GeneratorWord) -> Result<EighthRoot> {
    if m.degree() != w.degree() {
        return Err(Error::DegreeMismatch {
            left: w.degree(),
            right: m.degree(),
        });
    }
    w.letters()
        .iter()
        .map(|l| Ok(chi_generator(m, &l.generator)?.pow(l.exponent)))
        .product()
}

/// Generator multiplicities modulo what `chi` can see: `p_ij`, `q_ij`,
/// `r_ij` (`i < j`) mod 2 and `q_ii`, `r_ii` mod 4. Indices are 0-based;
/// off-diagonal `q`, `r` entries live in the strict upper triangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianExponents {
    pub g: usize,
    pub p: Vec<Vec<u8>>,
    pub q_diag: Vec<u8>,
    pub q_off: Vec<Vec<u8>>,
    pub r_diag: Vec<u8>,
    pub r_off: Vec<Vec<u8>>,
}

impl AbelianExponents {
    pub fn zero(g: usize) -> Self {
        Self {
            g,
            p: vec![vec![0; g]; g],
            q_diag: vec![0; g],
            q_off: vec![vec![0; g]; g],
            r_diag: vec![0; g],
            r_off: vec![vec![0; g]; g],
        }
    }

    /// Sums the letter exponents of a word per generator, reduced.
    pub fn from_word(w: &GeneratorWord) -> Self {
        let mut e = Self::zero(w.degree());
        for l in w.letters() {
            e.add_letter(&l.generator, l.exponent);
        }
        e
    }

    pub fn add_letter(&mut self, gen: &Generator, exponent: i64) {
        let (i, j) = (gen.i - 1, gen.j - 1);
        let bump2 = |x: &mut u8| *x = (*x as i64 + exponent).rem_euclid(2) as u8;
        let bump4 = |x: &mut u8| *x = (*x as i64 + exponent).rem_euclid(4) as u8;
        match gen.kind {
            GeneratorKind::A => bump2(&mut self.p[i][j]),
            GeneratorKind::B if i == j => bump4(&mut self.q_diag[i]),
            GeneratorKind::B => bump2(&mut self.q_off[i][j]),
            GeneratorKind::C if i == j => bump4(&mut self.r_diag[i]),
            GeneratorKind::C => bump2(&mut self.r_off[i][j]),
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero(self.g)
    }

    /// A word realising these exponents, `prod A^p prod B^q prod C^r`.
    #[allow(clippy::needless_range_loop)]
    pub fn to_word(&self) -> GeneratorWord {
        let g = self.g;
        let mut tuples = Vec::new();
        for i in 0..g {
            for j in 0..g {
                if self.p[i][j] != 0 {
                    tuples.push((GeneratorKind::A, i + 1, j + 1, self.p[i][j] as i64));
                }
            }
        }
        for (kind, diag, off) in [
            (GeneratorKind::B, &self.q_diag, &self.q_off),
            (GeneratorKind::C, &self.r_diag, &self.r_off),
        ] {
            for i in 0..g {
                for j in i..g {
                    let e = if i == j { diag[i] } else { off[i][j] };
                    if e != 0 {
                        tuples.push((kind, i + 1, j + 1, e as i64));
                    }
                }
            }
        }
        GeneratorWord::from_tuples(g, &tuples).expect("indices in range")
    }
}

/// `(-1)^A e(-B/4)` with
/// `A = sum p_ij m'_i m''_j + sum_{i<=j} q_ij m'_i m'_j + sum_{i<j} r_ij m''_i m''_j`
/// and `B = sum q_ii (m'_i)^2 + sum r_ii (m''_i)^2`.
#[allow(clippy::needless_range_loop)]
pub fn closed_form_eval(m: &Characteristic, e: &AbelianExponents) -> Result<EighthRoot> {
    let g = e.g;
    if m.degree() != g {
        return Err(Error::DegreeMismatch {
            left: g,
            right: m.degree(),
        });
    }
    let mp: Vec<i64> = m.prime().iter().map(|x| small(x, 8)).collect();
    let mpp: Vec<i64> = m.double_prime().iter().map(|x| small(x, 8)).collect();
    let mut a = 0i64;
    let mut b = 0i64;
    for i in 0..g {
        for j in 0..g {
            a += e.p[i][j] as i64 * mp[i] * mpp[j];
        }
        a += e.q_diag[i] as i64 * mp[i] * mp[i];
        b += e.q_diag[i] as i64 * mp[i] * mp[i] + e.r_diag[i] as i64 * mpp[i] * mpp[i];
        for j in i + 1..g {
            a += e.q_off[i][j] as i64 * mp[i] * mp[j] + e.r_off[i][j] as i64 * mpp[i] * mpp[j];
        }
    }
    Ok(EighthRoot::new(4 * a - 2 * b))
}

fn unit(g: usize, k: usize) -> Vec<BigInt> {
    (0..g).map(|i| BigInt::from((i == k) as i64)).collect()
}

fn probe(prime: Vec<BigInt>, double_prime: Vec<BigInt>) -> Characteristic {
    Characteristic::new(prime, double_prime).expect("probe halves match")
}

/// Residual exponent that must be `0` or `4`; returns the sign bit.
fn sign_bit(residual: i64, what: &str) -> Result<u8> {
    match residual.rem_euclid(8) {
        0 => Ok(0),
        4 => Ok(1),
        r => Err(Error::InterpolationInconsistent(format!(
            "{what}: residual exponent {r} is not a sign"
        ))),
    }
}

/// Recovers the abelianization exponents of `M` by evaluating `chi` at
/// probe characteristics and inverting `(-1)^A e(-B/4)`.
pub fn extract_abelian_exponents(mat: &SymplecticMatrix) -> Result<AbelianExponents> {
    mat.require_level2()?;
    let g = mat.degree();
    let zero = vec![BigInt::from(0); g];
    let mut e = AbelianExponents::zero(g);
    let mut probes = Vec::new();

    // m = (e_i; 0): exponent 2 q_ii
    for i in 0..g {
        let m = probe(unit(g, i), zero.clone());
        let k = chi(&m, mat)?.exponent() as i64;
        if k % 2 != 0 {
            return Err(Error::InterpolationInconsistent(format!(
                "probe {m} gave odd exponent {k}"
            )));
        }
        e.q_diag[i] = (k / 2).rem_euclid(4) as u8;
        probes.push(m);
    }
    // m = (0; e_i): exponent -2 r_ii
    for i in 0..g {
        let m = probe(zero.clone(), unit(g, i));
        let k = chi(&m, mat)?.exponent() as i64;
        if k % 2 != 0 {
            return Err(Error::InterpolationInconsistent(format!(
                "probe {m} gave odd exponent {k}"
            )));
        }
        e.r_diag[i] = (-k / 2).rem_euclid(4) as u8;
        probes.push(m);
    }
    // m = (e_i; e_j): 4 (p_ij + q_ii) - 2 (q_ii + r_jj)
    for i in 0..g {
        for j in 0..g {
            let m = probe(unit(g, i), unit(g, j));
            let k = chi(&m, mat)?.exponent() as i64;
            let known = 2 * e.q_diag[i] as i64 - 2 * e.r_diag[j] as i64;
            e.p[i][j] = sign_bit(k - known, &format!("p[{}][{}]", i + 1, j + 1))?;
            probes.push(m);
        }
    }
    // m = (e_i + e_j; 0) and (0; e_i + e_j), i < j
    for i in 0..g {
        for j in i + 1..g {
            let pair = vec_add(&unit(g, i), &unit(g, j));
            let m = probe(pair.clone(), zero.clone());
            let k = chi(&m, mat)?.exponent() as i64;
            let known = 2 * (e.q_diag[i] as i64 + e.q_diag[j] as i64);
            e.q_off[i][j] = sign_bit(k - known, &format!("q[{}][{}]", i + 1, j + 1))?;
            probes.push(m);

            let m = probe(zero.clone(), pair);
            let k = chi(&m, mat)?.exponent() as i64;
            let known = -2 * (e.r_diag[i] as i64 + e.r_diag[j] as i64);
            e.r_off[i][j] = sign_bit(k - known, &format!("r[{}][{}]", i + 1, j + 1))?;
            probes.push(m);
        }
    }

    for m in &probes {
        if closed_form_eval(m, &e)? != chi(m, mat)? {
            return Err(Error::InterpolationInconsistent(format!(
                "reconstruction disagrees at probe {m}"
            )));
        }
    }
    Ok(e)
}

/// Characteristics in `{0,1}^{2g}` where the closed form disagrees with `chi`.
pub fn closed_form_residuals(
    mat: &SymplecticMatrix,
    e: &AbelianExponents,
) -> Result<Vec<Characteristic>> {
    let mut bad = Vec::new();
    for m in enumerate_all_mod2(mat.degree()) {
        if closed_form_eval(&m, e)? != chi(&m, mat)? {
            bad.push(m);
        }
    }
    Ok(bad)
}

/// `chi_m(M) chi_n(M)`, the multiplier of `theta_m theta_n`.
pub fn igusa_product_character(
    m: &Characteristic,
    n: &Characteristic,
    mat: &SymplecticMatrix,
) -> Result<EighthRoot> {
    Ok(chi(m, mat)? * chi(n, mat)?)
}

/// Whether `chi_m(M)` is the same for every even `m` in `{0,1}^{2g}`.
pub fn is_chi_constant_over_even(mat: &SymplecticMatrix) -> Result<bool> {
    mat.require_level2()?;
    let mut values = enumerate_even_mod2(mat.degree())
        .into_iter()
        .map(|m| chi(&m, mat));
    let first = values.next().expect("g >= 1 has even characteristics")?;
    for v in values {
        if v? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{generator, word_to_matrix};

    fn ch(v: &[i64]) -> Characteristic {
        Characteristic::from_flat(v).unwrap()
    }

    fn gen(kind: GeneratorKind, i: usize, j: usize, g: usize) -> SymplecticMatrix {
        generator(kind, i, j, g).unwrap()
    }

    fn m5221() -> SymplecticMatrix {
        SymplecticMatrix::from_rows(&[vec![5, 2], vec![2, 1]]).unwrap()
    }

    #[test]
    fn eighth_root_group_law() {
        assert_eq!(EighthRoot::I * EighthRoot::I, EighthRoot::MINUS_ONE);
        assert_eq!(EighthRoot::new(3).pow(8), EighthRoot::ONE);
        assert_eq!(EighthRoot::new(3).pow(-1), EighthRoot::new(5));
        assert_eq!(
            EighthRoot::new(3).inverse() * EighthRoot::new(3),
            EighthRoot::ONE
        );
        assert_eq!(EighthRoot::new(-2).name(), "\u{2212}i");
        let z = EighthRoot::new(2).to_complex();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn phi_full_examples() {
        let b11 = gen(GeneratorKind::B, 1, 1, 1);
        let c11 = gen(GeneratorKind::C, 1, 1, 1);
        for m in [ch(&[1, 0]), ch(&[3, -7]), ch(&[0, 0])] {
            assert_eq!(
                phi_full(&m, &SymplecticMatrix::identity(1))
                    .unwrap()
                    .eighths(),
                0
            );
        }
        // -(1/8)(2 - 4) = 1/4
        let p = phi_full_exact(&ch(&[1, 0]), &b11).unwrap();
        assert_eq!(p.eighths, BigInt::from(2));
        assert_eq!(p.class().eighths(), 2);
        // -(1/8)(2) = -1/4 = 3/4
        assert_eq!(phi_full(&ch(&[0, 1]), &c11).unwrap().eighths(), 6);
    }

    #[test]
    fn phi_level2_examples() {
        assert_eq!(
            phi_level2(&ch(&[1, 1, 0, 1]), &SymplecticMatrix::identity(2))
                .unwrap()
                .eighths(),
            0
        );
        // -(1/8)(2 - 20) = 9/4 = 1/4 mod 1
        let p = phi_level2_exact(&ch(&[1, 0]), &m5221()).unwrap();
        assert_eq!(p.eighths, BigInt::from(18));
        assert_eq!(p.class().eighths(), 2);
        let t = SymplecticMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(matches!(
            phi_level2(&ch(&[1, 0]), &t),
            Err(Error::NotLevel2(_))
        ));
    }

    #[test]
    fn chi_examples() {
        let b11 = gen(GeneratorKind::B, 1, 1, 1);
        let c11 = gen(GeneratorKind::C, 1, 1, 1);
        assert_eq!(
            chi(&Characteristic::zero(1), &b11).unwrap(),
            EighthRoot::ONE
        );
        assert_eq!(
            chi(&Characteristic::zero(1), &m5221()).unwrap(),
            EighthRoot::ONE
        );
        assert_eq!(chi(&ch(&[1, 0]), &b11).unwrap(), EighthRoot::I);

        let ev = chi_detailed(&ch(&[1, 0]), &m5221()).unwrap();
        assert_eq!(ev.value, EighthRoot::I);
        assert_eq!(ev.preimage, ch(&[-25, -12]));
        assert_eq!(ev.delta, ch(&[-13, -6]));
        assert_eq!(ev.delta_sign, 0);
        assert_eq!(
            ev.value,
            chi(&ch(&[1, 0]), &b11).unwrap() * chi(&ch(&[1, 0]), &c11).unwrap()
        );
        assert!(matches!(
            chi(&ch(&[1, 0, 0, 0]), &b11),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn chi_generator_examples() {
        let b11 = Generator::new(GeneratorKind::B, 1, 1, 1).unwrap();
        let c11 = Generator::new(GeneratorKind::C, 1, 1, 1).unwrap();
        let a12 = Generator::new(GeneratorKind::A, 1, 2, 2).unwrap();
        assert_eq!(chi_generator(&ch(&[1, 0]), &b11).unwrap(), EighthRoot::I);
        assert_eq!(
            chi_generator(&ch(&[0, 1]), &c11).unwrap(),
            EighthRoot::MINUS_I
        );
        assert_eq!(
            chi_generator(&ch(&[1, 0, 0, 1]), &a12).unwrap(),
            EighthRoot::MINUS_ONE
        );
        let bad = Generator {
            kind: GeneratorKind::B,
            i: 2,
            j: 1,
        };
        assert!(matches!(
            chi_generator(&ch(&[1, 0, 0, 1]), &bad),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn diagonal_a_generator_matches_direct_delta() {
        // For A_ii the sign term alone produces the value; Phi vanishes.
        for g in 1..=3 {
            for i in 1..=g {
                let mat = gen(GeneratorKind::A, i, i, g);
                for m in enumerate_all_mod2(g) {
                    let ev = chi_detailed(&m, &mat).unwrap();
                    assert_eq!(ev.phi.eighths(), 0);
                    let expected = small(&(&m.prime()[i - 1] * &m.double_prime()[i - 1]), 2);
                    assert_eq!(ev.delta_sign as i64, expected);
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let m = ch(&[1, 0]);
        assert_eq!(
            closed_form_eval(&m, &AbelianExponents::zero(1)).unwrap(),
            EighthRoot::ONE
        );
        let mut e = AbelianExponents::zero(1);
        e.q_diag[0] = 1;
        assert_eq!(closed_form_eval(&m, &e).unwrap(), EighthRoot::I);
        e.r_diag[0] = 1;
        assert_eq!(closed_form_eval(&m, &e).unwrap(), EighthRoot::I);
        assert!(closed_form_eval(&ch(&[1, 0, 0, 0]), &e).is_err());
    }

    #[test]
    fn chi_word_examples() {
        let m = ch(&[1, 0]);
        assert_eq!(
            chi_word(&m, &GeneratorWord::empty(1)).unwrap(),
            EighthRoot::ONE
        );
        let w = GeneratorWord::from_tuples(
            1,
            &[(GeneratorKind::B, 1, 1, 1), (GeneratorKind::C, 1, 1, 1)],
        )
        .unwrap();
        assert_eq!(chi_word(&m, &w).unwrap(), EighthRoot::I);
        assert_eq!(
            chi_word(&m, &w).unwrap(),
            chi(&m, &word_to_matrix(&w)).unwrap()
        );
    }

    #[test]
    fn extraction_examples() {
        assert!(extract_abelian_exponents(&SymplecticMatrix::identity(3))
            .unwrap()
            .is_zero());
        let e = extract_abelian_exponents(&gen(GeneratorKind::B, 1, 1, 1)).unwrap();
        let mut expected = AbelianExponents::zero(1);
        expected.q_diag[0] = 1;
        assert_eq!(e, expected);
        let t = SymplecticMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(matches!(
            extract_abelian_exponents(&t),
            Err(Error::NotLevel2(_))
        ));
    }

    #[test]
    fn extraction_of_each_generator() {
        for g in 1..=3 {
            for gen in Generator::all(g) {
                let mut expected = AbelianExponents::zero(g);
                expected.add_letter(&gen, 1);
                let got = extract_abelian_exponents(&gen.matrix(g)).unwrap();
                assert_eq!(got, expected, "{gen}");
                assert!(closed_form_residuals(&gen.matrix(g), &got)
                    .unwrap()
                    .is_empty());
                assert_eq!(word_to_matrix(&expected.to_word()), gen.matrix(g));
            }
        }
    }

    #[test]
    fn product_character_examples() {
        let b11 = gen(GeneratorKind::B, 1, 1, 1);
        let z = Characteristic::zero(1);
        assert_eq!(
            igusa_product_character(&z, &z, &b11).unwrap(),
            EighthRoot::ONE
        );
        assert_eq!(
            igusa_product_character(&ch(&[1, 0]), &ch(&[0, 1]), &b11).unwrap(),
            EighthRoot::I
        );
        let m = ch(&[1, 0]);
        let sq = igusa_product_character(&m, &m, &b11).unwrap();
        assert_eq!(sq, chi(&m, &b11).unwrap().pow(2));
        assert_eq!(sq.exponent() % 2, 0);
    }

    #[test]
    fn constant_over_even_examples() {
        assert!(is_chi_constant_over_even(&SymplecticMatrix::identity(2)).unwrap());
        assert!(!is_chi_constant_over_even(&gen(GeneratorKind::B, 1, 1, 1)).unwrap());
        let b4 = gen(GeneratorKind::B, 1, 1, 1).pow(4);
        assert!(is_chi_constant_over_even(&b4).unwrap());
    }

    #[test]
    fn minus_identity_is_constant_but_not_igusa48() {
        // -I acts trivially on H_g and chi_m(-I) = (-1)^{t(m') m''}.
        for g in 1..=3 {
            let minus = SymplecticMatrix::identity(g).negate();
            assert!(is_chi_constant_over_even(&minus).unwrap());
            assert!(!minus.is_igusa48());
            for m in enumerate_all_mod2(g) {
                let expected = if m.is_even() {
                    EighthRoot::ONE
                } else {
                    EighthRoot::MINUS_ONE
                };
                assert_eq!(chi(&m, &minus).unwrap(), expected);
            }
        }
    }
}
