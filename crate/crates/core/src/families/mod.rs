//! Explicit QSP families: additive (Types 1, 1bis, 2, 3), multiplicative
//! binomials X^{p^{n'}} − X^a, and Mersenne divisor counting.

pub mod additive;
pub mod mersenne;
pub mod multiplicative;

pub use additive::{
    gen_type1, gen_type2, gen_type3, match_type1, match_type2, FamilyInstance, FamilySpec,
};
pub use mersenne::{
    heuristic_density, mersenne_divisor_count, mersenne_formula, mersenne_sparse_enumerate,
    DivisorCount, HeuristicPrediction, SparseDivisor,
};
pub use multiplicative::{
    gen_mult, verify_binomial, BinomialReport, MultFamily, MultiplicativeQsp,
};
