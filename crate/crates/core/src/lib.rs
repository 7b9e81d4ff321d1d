//! Exact computer algebra for the twist quantization of the Witt algebra's
//! triangular Lie bialgebra structure `r = L_0 ⊗ L_i`, and for the Hopf
//! structures it induces on the restricted enveloping algebra of the Witt
//! algebra in odd characteristic `p`.
//!
//! Modules, bottom up:
//! - [`exactnum`]: big integers, rationals, `𝔽_p`, and the integral coefficients `C(a, k, l)`, `N(a, k, l)`.
//! - [`algebra`]: sparse linear combinations, tensor powers, t-polynomials.
//! - [`uwitt`]: U(W) over ℚ in the PBW basis.
//! - [`hopf0`]: the twist, the deformed coproduct and antipode, and their verifiers.
//! - [`ucdp`]: the restricted enveloping algebra `U_c(𝔇)` over `𝔽_p`.
//! - [`hopfp`]: the characteristic-p Hopf families and the Radford subalgebra.
//! - [`report`], [`json`], [`text`]: verification records and serialization.

pub mod algebra;
pub mod exactnum;
pub mod hopf;
pub mod hopf0;
pub mod hopfp;
pub mod json;
pub mod report;
pub mod text;
pub mod ucdp;
pub mod uwitt;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by {l}! is not exact for a = {a}, k = {k}")]
    InexactDivision { a: String, k: String, l: u32 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("characteristic {0} is not supported (restricted monomials are packed for p <= 13)")]
    UnsupportedModulus(u32),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("series inversion needs a truncation order")]
    NotTruncated,
    #[error("leading coefficient of the series is not the unit")]
    NonUnitLeading,
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("index {index} outside {range}")]
    IndexOutOfRange { index: i64, range: String },
    #[error("routes disagree: {0}")]
    Mismatch(String),
    #[error("parameter i must be nonzero")]
    ZeroI,
    #[error("malformed document: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
