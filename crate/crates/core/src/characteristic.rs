//! Theta characteristics `m = (m', m'')` in `Z^{2g}` and the affine action
//! of `Sp(g, Z)` on them.
//!
//! Characteristics are never reduced mod 2 implicitly: the character
//! formula needs the exact integer offset between a characteristic and its
//! preimage, which depends on the representative.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{dot, vec_add, vec_sub, IntVector};
use crate::symplectic::SymplecticMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Characteristic {
    prime: IntVector,
    double_prime: IntVector,
}

impl Characteristic {
    pub fn new(prime: IntVector, double_prime: IntVector) -> Result<Self> {
        if prime.len() != double_prime.len() || prime.is_empty() {
            return Err(Error::BadShape(format!(
                "characteristic halves have lengths {} and {}",
                prime.len(),
                double_prime.len()
            )));
        }
        Ok(Self {
            prime,
            double_prime,
        })
    }

    /// From a flat vector of `2g` entries: first `g` are `m'`, last `g` are `m''`.
    pub fn from_flat<T: Into<BigInt> + Clone>(flat: &[T]) -> Result<Self> {
        if flat.is_empty() || !flat.len().is_multiple_of(2) {
            return Err(Error::BadShape(format!(
                "characteristic needs an even positive length, got {}",
                flat.len()
            )));
        }
        let g = flat.len() / 2;
        let v: IntVector = flat.iter().cloned().map(Into::into).collect();
        Self::new(v[..g].to_vec(), v[g..].to_vec())
    }

    pub fn zero(g: usize) -> Self {
        Self {
            prime: vec![BigInt::zero(); g],
            double_prime: vec![BigInt::zero(); g],
        }
    }

    pub fn degree(&self) -> usize {
        self.prime.len()
    }

    pub fn prime(&self) -> &[BigInt] {
        &self.prime
    }

    pub fn double_prime(&self) -> &[BigInt] {
        &self.double_prime
    }

    pub fn to_flat(&self) -> IntVector {
        self.prime
            .iter()
            .chain(&self.double_prime)
            .cloned()
            .collect()
    }

    /// Flat entries as `i64`, or `None` on overflow.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.prime
            .iter()
            .chain(&self.double_prime)
            .map(|x| x.to_i64())
            .collect()
    }

    pub fn parity(&self) -> Parity {
        if dot(&self.prime, &self.double_prime).is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// Representative with entries in `{0, 1}`.
    pub fn reduce_mod2(&self) -> Self {
        let two = BigInt::from(2);
        let r = |v: &[BigInt]| v.iter().map(|x| x.mod_floor(&two)).collect();
        Self {
            prime: r(&self.prime),
            double_prime: r(&self.double_prime),
        }
    }

    pub fn congruent_mod2(&self, other: &Self) -> bool {
        self.reduce_mod2() == other.reduce_mod2()
    }

    /// `self + 2 n`.
    pub fn shifted(&self, n: &Self) -> Self {
        let twice = |v: &[BigInt]| v.iter().map(|x| x * 2).collect::<Vec<_>>();
        Self {
            prime: vec_add(&self.prime, &twice(&n.prime)),
            double_prime: vec_add(&self.double_prime, &twice(&n.double_prime)),
        }
    }

    fn check_degree(&self, g: usize) -> Result<()> {
        if self.degree() != g {
            return Err(Error::DegreeMismatch {
                left: g,
                right: self.degree(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[BigInt]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({};{})", j(&self.prime), j(&self.double_prime))
    }
}

pub fn parity(m: &Characteristic) -> Parity {
    m.parity()
}

/// All `4^g` characteristics with entries in `{0, 1}`, lexicographic in
/// the flat order `(m', m'')`.
pub fn enumerate_all_mod2(g: usize) -> Vec<Characteristic> {
    let n = 2 * g;
    (0u64..1 << n)
        .map(|bits| {
            let flat: Vec<i64> = (0..n).map(|k| ((bits >> (n - 1 - k)) & 1) as i64).collect();
            Characteristic::from_flat(&flat).expect("non-empty")
        })
        .collect()
}

/// The `2^{g-1}(2^g + 1)` even characteristics with entries in `{0, 1}`.
pub fn enumerate_even_mod2(g: usize) -> Vec<Characteristic> {
    enumerate_all_mod2(g)
        .into_iter()
        .filter(Characteristic::is_even)
        .collect()
}

/// `M o m = (d m' - c m'' + (c t(d))_0 ; -b m' + a m'' + (a t(b))_0)`, exact over Z.
pub fn act(m_mat: &SymplecticMatrix, m: &Characteristic) -> Result<Characteristic> {
    m.check_degree(m_mat.degree())?;
    let top = vec_add(
        &vec_sub(
            &m_mat.d().mul_vec(&m.prime),
            &m_mat.c().mul_vec(&m.double_prime),
        ),
        &m_mat.cd_diag(),
    );
    let bottom = vec_add(
        &vec_sub(
            &m_mat.a().mul_vec(&m.double_prime),
            &m_mat.b().mul_vec(&m.prime),
        ),
        &m_mat.ab_diag(),
    );
    Characteristic::new(top, bottom)
}

/// The unique `n` with `M o n = m`, by the block-transpose inverse of the
/// affine action:
///
/// ```text
/// n'  = t(a) m' + t(c) m'' - t(a) (c t(d))_0 - t(c) (a t(b))_0
/// n'' = t(b) m' + t(d) m'' - t(b) (c t(d))_0 - t(d) (a t(b))_0
/// ```
pub fn solve_preimage(m_mat: &SymplecticMatrix, m: &Characteristic) -> Result<Characteristic> {
    m.check_degree(m_mat.degree())?;
    let at = m_mat.a().transpose();
    let bt = m_mat.b().transpose();
    let ct = m_mat.c().transpose();
    let dt = m_mat.d().transpose();
    let cd = m_mat.cd_diag();
    let ab = m_mat.ab_diag();

    let linear = |x: &crate::matrix::IntMatrix, y: &crate::matrix::IntMatrix| {
        vec_add(&x.mul_vec(&m.prime), &y.mul_vec(&m.double_prime))
    };
    let offset = |x: &crate::matrix::IntMatrix, y: &crate::matrix::IntMatrix| {
        vec_add(&x.mul_vec(&cd), &y.mul_vec(&ab))
    };
    let n = Characteristic::new(
        vec_sub(&linear(&at, &ct), &offset(&at, &ct)),
        vec_sub(&linear(&bt, &dt), &offset(&bt, &dt)),
    )?;
    debug_assert_eq!(&act(m_mat, &n)?, m, "preimage check failed");
    Ok(n)
}

/// `Delta = (n - m) / 2`; fails if `n` and `m` differ mod 2.
pub fn delta(m: &Characteristic, n: &Characteristic) -> Result<Characteristic> {
    n.check_degree(m.degree())?;
    let diff = vec_sub(&n.to_flat(), &m.to_flat());
    if let Some(pos) = diff.iter().position(|x| x.is_odd()) {
        return Err(Error::ParityMismatch(pos));
    }
    let half: Vec<BigInt> = diff.into_iter().map(|x| x / 2).collect();
    Characteristic::from_flat(&half)
}

/// Exponent `t(m') n'' mod 2` of the sign in `theta_{m+2n} = (-1)^{t(m') n''} theta_m`.
pub fn sign_shift_exponent(m: &Characteristic, n: &Characteristic) -> u8 {
    if dot(&m.prime, &n.double_prime).is_odd() {
        1
    } else {
        0
    }
}
