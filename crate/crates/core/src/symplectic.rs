//! Integral symplectic matrices, congruence-subgroup membership and the
//! standard generators of the level-2 principal congruence subgroup.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, IntVector};

/// An element of `Sp(g, Z)` in block form `(a b; c d)`.
///
/// The symplectic relations are checked when the value is built, so every
/// downstream formula may rely on them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix {
    g: usize,
    full: IntMatrix,
    a: IntMatrix,
    b: IntMatrix,
    c: IntMatrix,
    d: IntMatrix,
}

/// The diagonal of a square matrix arranged as a vector, `(s)_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagonalVector(pub IntVector);

impl DiagonalVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }
}

/// Returns `(s)_0`.
pub fn diag_vector(s: &IntMatrix) -> DiagonalVector {
    DiagonalVector(s.diagonal())
}

/// Same as [`diag_vector`] for a matrix given as rows; rejects non-square input.
pub fn diag_vector_of_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<DiagonalVector> {
    IntMatrix::from_rows(rows)
        .map(|m| diag_vector(&m))
        .ok_or_else(|| Error::BadShape("matrix is not square".into()))
}

impl SymplecticMatrix {
    /// Validates a `2g x 2g` integer matrix.
    pub fn new(full: IntMatrix) -> Result<Self> {
        let n = full.size();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::BadShape(format!(
                "dimension {n} is not a positive even number"
            )));
        }
        let g = n / 2;
        let a = full.block(0, 0, g);
        let b = full.block(0, g, g);
        let c = full.block(g, 0, g);
        let d = full.block(g, g, g);

        let at_d = &a * &d.transpose();
        let bt_c = &b * &c.transpose();
        if &at_d - &bt_c != IntMatrix::identity(g) {
            return Err(Error::NotSymplectic("a*t(d) - b*t(c) != I".into()));
        }
        if !(&a * &b.transpose()).is_symmetric() {
            return Err(Error::NotSymplectic("a*t(b) is not symmetric".into()));
        }
        if !(&c * &d.transpose()).is_symmetric() {
            return Err(Error::NotSymplectic("c*t(d) is not symmetric".into()));
        }
        Ok(Self {
            g,
            full,
            a,
            b,
            c,
            d,
        })
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let m = IntMatrix::from_rows(rows)
            .ok_or_else(|| Error::BadShape("matrix is not square".into()))?;
        Self::new(m)
    }

    /// Builds from blocks without revalidating; callers guarantee the
    /// relations (block-diagonal generators, exact inverses).
    fn from_blocks_unchecked(a: IntMatrix, b: IntMatrix, c: IntMatrix, d: IntMatrix) -> Self {
        let full = IntMatrix::from_blocks(&a, &b, &c, &d);
        let g = a.size();
        let m = Self {
            g,
            full,
            a,
            b,
            c,
            d,
        };
        debug_assert!(Self::new(m.full.clone()).is_ok());
        m
    }

    pub fn identity(g: usize) -> Self {
        Self::from_blocks_unchecked(
            IntMatrix::identity(g),
            IntMatrix::zeros(g),
            IntMatrix::zeros(g),
            IntMatrix::identity(g),
        )
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.g
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.full
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn c(&self) -> &IntMatrix {
        &self.c
    }

    pub fn d(&self) -> &IntMatrix {
        &self.d
    }

    /// `(a t(b))_0`.
    pub fn ab_diag(&self) -> IntVector {
        (&self.a * &self.b.transpose()).diagonal()
    }

    /// `(c t(d))_0`.
    pub fn cd_diag(&self) -> IntVector {
        (&self.c * &self.d.transpose()).diagonal()
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.g != other.g {
            return Err(Error::DegreeMismatch {
                left: self.g,
                right: other.g,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        Self::new(&self.full * &other.full)
    }

    /// `M^{-1} = (t(d) -t(b); -t(c) t(a))`.
    pub fn inverse(&self) -> Self {
        let inv = Self::from_blocks_unchecked(
            self.d.transpose(),
            -&self.b.transpose(),
            -&self.c.transpose(),
            self.a.transpose(),
        );
        debug_assert_eq!(&self.full * &inv.full, IntMatrix::identity(2 * self.g));
        inv
    }

    pub fn negate(&self) -> Self {
        Self::from_blocks_unchecked(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.g);
        for _ in 0..e.unsigned_abs() {
            acc = Self::from_blocks_unchecked_full(&acc.full * &base.full);
        }
        acc
    }

    fn from_blocks_unchecked_full(full: IntMatrix) -> Self {
        let g = full.size() / 2;
        let m = Self {
            g,
            a: full.block(0, 0, g),
            b: full.block(0, g, g),
            c: full.block(g, 0, g),
            d: full.block(g, g, g),
            full,
        };
        debug_assert!(Self::new(m.full.clone()).is_ok());
        m
    }

    /// `M1 M2 M1^{-1} M2^{-1}`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let p = &(&self.full * &other.full) * &self.inverse().full;
        Ok(Self::from_blocks_unchecked_full(&p * &other.inverse().full))
    }

    /// `M = I mod 2`.
    pub fn is_level2(&self) -> bool {
        self.level_violation(2).is_none()
    }

    /// `M = I mod 4`.
    pub fn is_level4(&self) -> bool {
        self.level_violation(4).is_none()
    }

    /// Membership in `Gamma_g(4,8)`: `M = I mod 4` and `(a t(b))_0 = (c t(d))_0 = 0 mod 8`.
    pub fn is_igusa48(&self) -> bool {
        let eight = BigInt::from(8);
        self.is_level4()
            && self.ab_diag().iter().all(|x| x.is_multiple_of(&eight))
            && self.cd_diag().iter().all(|x| x.is_multiple_of(&eight))
    }

    /// Describes the first entry breaking `M = I mod level`, if any.
    pub fn level_violation(&self, level: u32) -> Option<String> {
        let id = IntMatrix::identity(2 * self.g);
        self.full
            .first_incongruence(&id, &BigInt::from(level))
            .map(|(i, j)| {
                format!(
                    "matrix not \u{2261} I mod {level} (entry ({}, {}) = {})",
                    i + 1,
                    j + 1,
                    self.full.get(i, j)
                )
            })
    }

    pub fn require_level2(&self) -> Result<()> {
        match self.level_violation(2) {
            None => Ok(()),
            Some(msg) => Err(Error::NotLevel2(msg)),
        }
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.full.rows()
    }
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sp{}{:?}", self.g, self.full)
    }
}

/// Letter kinds of the generating set of `Gamma_g(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    A,
    B,
    C,
}

impl GeneratorKind {
    pub fn symbol(self) -> char {
        match self {
            GeneratorKind::A => 'A',
            GeneratorKind::B => 'B',
            GeneratorKind::C => 'C',
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "A" | "a" => Some(GeneratorKind::A),
            "B" | "b" => Some(GeneratorKind::B),
            "C" | "c" => Some(GeneratorKind::C),
            _ => None,
        }
    }
}

/// One generator `X_ij` with 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub i: usize,
    pub j: usize,
}

impl Generator {
    pub fn new(kind: GeneratorKind, i: usize, j: usize, g: usize) -> Result<Self> {
        let ok = match kind {
            GeneratorKind::A => (1..=g).contains(&i) && (1..=g).contains(&j),
            GeneratorKind::B | GeneratorKind::C => i >= 1 && i <= j && j <= g,
        };
        if ok {
            Ok(Self { kind, i, j })
        } else {
            Err(Error::IndexOutOfRange {
                kind: kind.symbol(),
                i,
                j,
                g,
            })
        }
    }

    /// Every generator for degree `g`: `A_ij` for all `i, j`, then `B_ij`
    /// and `C_ij` for `i <= j`.
    pub fn all(g: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for i in 1..=g {
            for j in 1..=g {
                out.push(Self {
                    kind: GeneratorKind::A,
                    i,
                    j,
                });
            }
        }
        for kind in [GeneratorKind::B, GeneratorKind::C] {
            for i in 1..=g {
                for j in i..=g {
                    out.push(Self { kind, i, j });
                }
            }
        }
        out
    }

    /// `X_ij^e` in closed form.
    pub fn power(&self, g: usize, e: i64) -> SymplecticMatrix {
        let (i, j) = (self.i - 1, self.j - 1);
        let e_big = BigInt::from(e);
        match self.kind {
            GeneratorKind::A => {
                let mut a = IntMatrix::identity(g);
                let mut d = IntMatrix::identity(g);
                if i == j {
                    let s = if e.rem_euclid(2) == 0 {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    };
                    a.set(i, i, s.clone());
                    d.set(i, i, s);
                } else {
                    // a = I + 2e E_ij, t(a)^{-1} = I - 2e E_ji
                    a.set(i, j, BigInt::from(2) * &e_big);
                    d.set(j, i, BigInt::from(-2) * &e_big);
                }
                SymplecticMatrix::from_blocks_unchecked(
                    a,
                    IntMatrix::zeros(g),
                    IntMatrix::zeros(g),
                    d,
                )
            }
            GeneratorKind::B | GeneratorKind::C => {
                let mut s = IntMatrix::zeros(g);
                let two_e = BigInt::from(2) * &e_big;
                s.set(i, j, two_e.clone());
                s.set(j, i, two_e);
                let (b, c) = if self.kind == GeneratorKind::B {
                    (s, IntMatrix::zeros(g))
                } else {
                    (IntMatrix::zeros(g), s)
                };
                SymplecticMatrix::from_blocks_unchecked(
                    IntMatrix::identity(g),
                    b,
                    c,
                    IntMatrix::identity(g),
                )
            }
        }
    }

    pub fn matrix(&self, g: usize) -> SymplecticMatrix {
        self.power(g, 1)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.kind.symbol(), self.i, self.j)
    }
}

/// The generator `A_ij`, `B_ij` or `C_ij` of `Gamma_g(2)` (1-based indices).
pub fn generator(kind: GeneratorKind, i: usize, j: usize, g: usize) -> Result<SymplecticMatrix> {
    Ok(Generator::new(kind, i, j, g)?.matrix(g))
}

/// A generator raised to an integer power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

/// A word over the generators, read left to right as a matrix product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    g: usize,
    letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn new(g: usize, letters: Vec<Letter>) -> Result<Self> {
        if g == 0 {
            return Err(Error::BadShape("degree must be positive".into()));
        }
        for l in &letters {
            Generator::new(l.generator.kind, l.generator.i, l.generator.j, g)?;
        }
        Ok(Self { g, letters })
    }

    /// Builds from `(kind, i, j, exponent)` tuples.
    pub fn from_tuples(g: usize, tuples: &[(GeneratorKind, usize, usize, i64)]) -> Result<Self> {
        let letters = tuples
            .iter()
            .map(|&(kind, i, j, exponent)| {
                Ok(Letter {
                    generator: Generator::new(kind, i, j, g)?,
                    exponent,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, letters)
    }

    pub fn empty(g: usize) -> Self {
        Self {
            g,
            letters: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.g
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("{}^{}", l.generator, l.exponent))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Ordered product of the letters of `w`.
pub fn word_to_matrix(w: &GeneratorWord) -> SymplecticMatrix {
    let g = w.g;
    let mut acc = IntMatrix::identity(2 * g);
    for l in &w.letters {
        acc = &acc * l.generator.power(g, l.exponent).as_matrix();
    }
    SymplecticMatrix::from_blocks_unchecked_full(acc)
}

/// Uniform letters with exponents in `{-1, +1}`.
pub fn random_word<R: Rng + ?Sized>(g: usize, length: usize, rng: &mut R) -> GeneratorWord {
    let alphabet = Generator::all(g);
    let letters = (0..length)
        .map(|_| Letter {
            generator: alphabet[rng.random_range(0..alphabet.len())],
            exponent: if rng.random_bool(0.5) { 1 } else { -1 },
        })
        .collect();
    GeneratorWord { g, letters }
}

/// Deterministic seeded PRNG used throughout (ChaCha8 seeded from a `u64`).
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word_seeded(g: usize, length: usize, seed: u64) -> GeneratorWord {
    random_word(g, length, &mut seeded_rng(seed))
}

/// `M1 M2 M1^{-1} M2^{-1}`.
pub fn commutator(m1: &SymplecticMatrix, m2: &SymplecticMatrix) -> Result<SymplecticMatrix> {
    m1.commutator(m2)
}

/// A random element of `Gamma_g(4,8)`.
///
/// Product of one to four factors, each a commutator of two random
/// `Gamma_g(2)` words, a fourth power of a `B`/`C` generator or a square
/// of an `A` generator, optionally conjugated by a random word.
pub fn random_igusa48<R: Rng + ?Sized>(g: usize, rng: &mut R) -> SymplecticMatrix {
    let factors = rng.random_range(1..=4);
    let mut acc = SymplecticMatrix::identity(g);
    let alphabet = Generator::all(g);
    for _ in 0..factors {
        let factor = match rng.random_range(0..3) {
            0 => {
                let l1 = rng.random_range(1..=4);
                let l2 = rng.random_range(1..=4);
                let w1 = word_to_matrix(&random_word(g, l1, rng));
                let w2 = word_to_matrix(&random_word(g, l2, rng));
                w1.commutator(&w2).expect("same degree")
            }
            _ => {
                let gen = alphabet[rng.random_range(0..alphabet.len())];
                let sign = if rng.random_bool(0.5) { 1 } else { -1 };
                let e = if gen.kind == GeneratorKind::A { 2 } else { 4 };
                gen.power(g, sign * e)
            }
        };
        let factor = if rng.random_bool(0.5) {
            let len = rng.random_range(1..=3);
            let h = word_to_matrix(&random_word(g, len, rng));
            SymplecticMatrix::from_blocks_unchecked_full(
                &(h.as_matrix() * factor.as_matrix()) * h.inverse().as_matrix(),
            )
        } else {
            factor
        };
        acc = SymplecticMatrix::from_blocks_unchecked_full(acc.as_matrix() * factor.as_matrix());
    }
    debug_assert!(acc.is_igusa48());
    acc
}

pub fn random_igusa48_seeded(g: usize, seed: u64) -> SymplecticMatrix {
    random_igusa48(g, &mut seeded_rng(seed))
}

/// Matrices that satisfy `M = I mod 4` but miss `Gamma_g(4,8)`: a squared
/// diagonal `B_ii` or `C_ii` (diagonal entry 4 mod 8) times an element of
/// `Gamma_g(4,8)`.
pub fn random_near_miss<R: Rng + ?Sized>(g: usize, rng: &mut R) -> SymplecticMatrix {
    let i = rng.random_range(1..=g);
    let kind = if rng.random_bool(0.5) {
        GeneratorKind::B
    } else {
        GeneratorKind::C
    };
    let sign = if rng.random_bool(0.5) { 1 } else { -1 };
    let sq = Generator { kind, i, j: i }.power(g, 2 * sign);
    let x = random_igusa48(g, rng);
    let m = if rng.random_bool(0.5) {
        sq.as_matrix() * x.as_matrix()
    } else {
        x.as_matrix() * sq.as_matrix()
    };
    SymplecticMatrix::from_blocks_unchecked_full(m)
}

impl From<&SymplecticMatrix> for IntMatrix {
    fn from(m: &SymplecticMatrix) -> Self {
        m.full.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(rows: &[Vec<i64>]) -> Result<SymplecticMatrix> {
        SymplecticMatrix::from_rows(rows)
    }

    fn b11() -> SymplecticMatrix {
        generator(GeneratorKind::B, 1, 1, 1).unwrap()
    }

    fn c11() -> SymplecticMatrix {
        generator(GeneratorKind::C, 1, 1, 1).unwrap()
    }

    #[test]
    fn make_matrix_examples() {
        for g in 1..=3 {
            assert!(SymplecticMatrix::new(IntMatrix::identity(2 * g)).is_ok());
        }
        assert_eq!(sp(&[vec![1, 2], vec![0, 1]]).unwrap(), b11());
        let t = sp(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(!t.is_level2());
        assert!(sp(&[vec![1, 0], vec![1, 1]]).is_ok());
        assert!(matches!(
            sp(&[vec![2, 0], vec![0, 2]]),
            Err(Error::NotSymplectic(_))
        ));
        assert!(matches!(
            SymplecticMatrix::new(IntMatrix::identity(3)),
            Err(Error::BadShape(_))
        ));
        assert!(matches!(
            sp(&[vec![1, 2, 3], vec![1, 2]]),
            Err(Error::BadShape(_))
        ));
    }

    #[test]
    fn diag_vector_examples() {
        assert_eq!(
            diag_vector_of_rows(&[vec![1, 0], vec![0, 1]]).unwrap().0,
            vec![BigInt::from(1), BigInt::from(1)]
        );
        assert_eq!(
            diag_vector_of_rows(&[vec![0, 2], vec![2, 0]]).unwrap().0,
            vec![BigInt::from(0), BigInt::from(0)]
        );
        assert_eq!(
            diag_vector_of_rows(&[vec![5, 2], vec![2, 1]]).unwrap().0,
            vec![BigInt::from(5), BigInt::from(1)]
        );
        assert!(diag_vector_of_rows(&[vec![5, 2]]).is_err());
    }

    #[test]
    fn multiply_and_inverse() {
        let p = b11().multiply(&c11()).unwrap();
        assert_eq!(p, sp(&[vec![5, 2], vec![2, 1]]).unwrap());
        assert_eq!(
            p.multiply(&p.inverse()).unwrap(),
            SymplecticMatrix::identity(1)
        );
        let a12 = Generator::new(GeneratorKind::A, 1, 2, 2).unwrap();
        for e in [1, 3, -2] {
            let prod = a12.power(2, e).multiply(&a12.power(2, -e)).unwrap();
            assert_eq!(prod, SymplecticMatrix::identity(2));
        }
        let err = b11().multiply(&SymplecticMatrix::identity(2)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 1, right: 2 });
    }

    #[test]
    fn membership_examples() {
        let id = SymplecticMatrix::identity(2);
        assert!(id.is_level2() && id.is_level4() && id.is_igusa48());
        let b = b11();
        assert!(b.is_level2() && !b.is_level4() && !b.is_igusa48());
        let b4 = sp(&[vec![1, 8], vec![0, 1]]).unwrap();
        assert!(b4.is_level2() && b4.is_level4() && b4.is_igusa48());
        assert_eq!(b.pow(4), b4);
        let b2 = b.pow(2);
        assert!(b2.is_level4() && !b2.is_igusa48());
    }

    #[test]
    fn generator_examples() {
        assert_eq!(b11(), sp(&[vec![1, 2], vec![0, 1]]).unwrap());
        assert_eq!(c11(), sp(&[vec![1, 0], vec![2, 1]]).unwrap());
        assert_eq!(
            generator(GeneratorKind::A, 1, 1, 1).unwrap(),
            sp(&[vec![-1, 0], vec![0, -1]]).unwrap()
        );
        assert!(matches!(
            generator(GeneratorKind::B, 2, 1, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(generator(GeneratorKind::A, 2, 1, 2).is_ok());
        assert!(generator(GeneratorKind::C, 1, 3, 2).is_err());
        for g in 1..=3 {
            for gen in Generator::all(g) {
                let m = gen.matrix(g);
                assert!(
                    SymplecticMatrix::new(m.as_matrix().clone()).is_ok(),
                    "{gen}"
                );
                assert!(m.is_level2());
                if gen.kind == GeneratorKind::C {
                    let b = Generator {
                        kind: GeneratorKind::B,
                        ..gen
                    }
                    .matrix(g);
                    assert_eq!(m.as_matrix(), &b.as_matrix().transpose());
                }
                for e in -3..=3 {
                    assert_eq!(gen.power(g, e), m.pow(e), "{gen}^{e}");
                }
            }
        }
    }

    #[test]
    fn word_examples() {
        assert_eq!(
            word_to_matrix(&GeneratorWord::empty(2)),
            SymplecticMatrix::identity(2)
        );
        let w = GeneratorWord::from_tuples(
            1,
            &[(GeneratorKind::B, 1, 1, 1), (GeneratorKind::C, 1, 1, 1)],
        )
        .unwrap();
        assert_eq!(word_to_matrix(&w), sp(&[vec![5, 2], vec![2, 1]]).unwrap());
        let w = GeneratorWord::from_tuples(2, &[(GeneratorKind::A, 1, 2, 1)]).unwrap();
        assert_eq!(
            word_to_matrix(&w),
            sp(&[
                vec![1, 2, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, -2, 1]
            ])
            .unwrap()
        );
        assert!(GeneratorWord::from_tuples(1, &[(GeneratorKind::A, 1, 2, 1)]).is_err());
    }

    #[test]
    fn commutator_examples() {
        let b = b11();
        assert_eq!(b.commutator(&b).unwrap(), SymplecticMatrix::identity(1));
        assert!(commutator(&b, &c11()).unwrap().is_igusa48());
    }

    #[test]
    fn random_word_is_deterministic() {
        let w1 = random_word_seeded(3, 20, 7);
        let w2 = random_word_seeded(3, 20, 7);
        assert_eq!(w1, w2);
        assert_eq!(w1.len(), 20);
        assert!(w1.letters().iter().all(|l| l.exponent.abs() == 1));
        assert_ne!(w1, random_word_seeded(3, 20, 8));
    }

    #[test]
    fn near_misses_are_level4_but_not_igusa48() {
        let mut rng = seeded_rng(3);
        for g in 1..=3 {
            for _ in 0..40 {
                let m = random_near_miss(g, &mut rng);
                assert!(m.is_level4());
                assert!(!m.is_igusa48());
            }
        }
    }
}
