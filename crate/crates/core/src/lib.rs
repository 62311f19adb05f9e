//! Combinatorics on finite words and its application to the length of
//! finite-dimensional matrix algebras.
//!
//! * [`word`] and [`automaton`]: words, fractional powers, subword complexity.
//! * [`structure`]: `(q, p, t)` decompositions and profile shape.
//! * [`powers`]: periods, exponents, power avoidance, total-complexity bound.
//! * [`linalg`]: exact arithmetic over `GF(p)`.
//! * [`algebra`]: lengths of generating sets, irreducible words.
//! * [`bounds`]: closed-form length bounds and their comparisons.
//! * [`oracles`]: brute-force reference implementations.
//! * [`verify`]: exhaustive and sampled theorem sweeps.

pub mod algebra;
pub mod automaton;
pub mod bounds;
pub mod linalg;
pub mod oracles;
pub mod powers;
pub mod structure;
pub mod verify;
pub mod word;

pub use algebra::{GeneratorSet, LengthTrace, LiwResult};
pub use bounds::{BestMain, BoundReport, Rational};
pub use linalg::{FMatrix, PrimeField, SpanBasis};
pub use powers::{Exponent, MaxExponent, TcReport};
pub use structure::{Equivalence, ProfileShape, QptDecomposition};
pub use word::{Alphabet, ComplexityProfile, FracExponent, Word};
