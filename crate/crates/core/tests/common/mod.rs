#![allow(dead_code)]

use rand::Rng;
use siegel_char::matrix::IntMatrix;
use siegel_char::symplectic::{random_word, seeded_rng};
use siegel_char::{word_to_matrix, SymplecticMatrix};

pub fn ch(v: &[i64]) -> siegel_char::Characteristic {
    siegel_char::Characteristic::from_flat(v).unwrap()
}

pub fn level2_word_matrix<R: Rng + ?Sized>(
    g: usize,
    max_len: usize,
    rng: &mut R,
) -> SymplecticMatrix {
    let len = rng.random_range(0..=max_len);
    word_to_matrix(&random_word(g, len, rng))
}

/// Random element of the full `Sp(g, Z)` (not only level 2): a product of
/// `J`, elementary translations `(I S; 0 I)` / `(I 0; S I)` with `S`
/// symmetric of entries in `{0, 1}` and block-diagonal `(U, t(U)^{-1})`
/// with `U` an elementary unimodular matrix.
pub fn random_sp<R: Rng + ?Sized>(g: usize, len: usize, rng: &mut R) -> SymplecticMatrix {
    let mut acc = IntMatrix::identity(2 * g);
    for _ in 0..len {
        let step = match rng.random_range(0..4) {
            0 => {
                let z = IntMatrix::zeros(g);
                let i = IntMatrix::identity(g);
                IntMatrix::from_blocks(&z, &i, &(-&i), &z)
            }
            k @ (1 | 2) => {
                let i = rng.random_range(0..g);
                let j = rng.random_range(0..g);
                let mut s = IntMatrix::zeros(g);
                let v = if rng.random_bool(0.5) { 1 } else { -1 };
                s.set(i, j, v.into());
                s.set(j, i, v.into());
                let id = IntMatrix::identity(g);
                let z = IntMatrix::zeros(g);
                if k == 1 {
                    IntMatrix::from_blocks(&id, &s, &z, &id)
                } else {
                    IntMatrix::from_blocks(&id, &z, &s, &id)
                }
            }
            _ => {
                let mut u = IntMatrix::identity(g);
                let mut d = IntMatrix::identity(g);
                let i = rng.random_range(0..g);
                let j = rng.random_range(0..g);
                if i == j {
                    u.set(i, i, (-1).into());
                    d.set(i, i, (-1).into());
                } else {
                    u.set(i, j, 1.into());
                    d.set(j, i, (-1).into());
                }
                let z = IntMatrix::zeros(g);
                IntMatrix::from_blocks(&u, &z, &z, &d)
            }
        };
        acc = &acc * &step;
    }
    SymplecticMatrix::new(acc).expect("product of symplectic steps")
}

pub fn random_char<R: Rng + ?Sized>(
    g: usize,
    bound: i64,
    rng: &mut R,
) -> siegel_char::Characteristic {
    let flat: Vec<i64> = (0..2 * g)
        .map(|_| rng.random_range(-bound..=bound))
        .collect();
    siegel_char::Characteristic::from_flat(&flat).unwrap()
}

pub fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    seeded_rng(seed)
}
