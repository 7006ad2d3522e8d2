//! Exact computation of the character `chi_m` of the level-2 Siegel
//! modular group `Gamma_g(2)` attached to a theta characteristic `m`,
//! together with numeric theta constants used to cross-check every exact
//! value against the theta transformation formula.
//!
//! The exact layer ([`symplectic`], [`characteristic`], [`character`])
//! works over arbitrary-precision integers. The numeric layer ([`theta`])
//! uses binary64 complex arithmetic and never feeds back into the exact
//! layer.

pub mod character;
pub mod characteristic;
pub mod error;
pub mod io;
pub mod matrix;
pub mod suites;
pub mod symplectic;
pub mod theta;

pub use character::{
    chi, chi_detailed, chi_generator, chi_word, closed_form_eval, extract_abelian_exponents,
    igusa_product_character, is_chi_constant_over_even, phi_full, phi_level2, AbelianExponents,
    EighthRoot, RationalMod1,
};
pub use characteristic::{
    act, delta, enumerate_all_mod2, enumerate_even_mod2, sign_shift_exponent, solve_preimage,
    Characteristic, Parity,
};
pub use error::{Error, Result};
pub use symplectic::{
    commutator, diag_vector, generator, random_igusa48, random_word, word_to_matrix, Generator,
    GeneratorKind, GeneratorWord, SymplecticMatrix,
};
pub use theta::{
    det_sqrt_factor, mobius, theta_constant, verify_character, verify_igusa_product,
    verify_transformation_general, SiegelPoint, VerificationReport,
};
