//! Exact computation in the bisimple monogenic orthodox semigroups
//! `O(ν,μ)(a,b)`: reduced forms, multiplication, Green's relations, the band
//! of idempotents, bicyclic decompositions, an independent congruence-closure
//! oracle and eggbox/band diagram emitters.

pub mod arith;
pub mod error;
pub mod green;
pub mod oracle;
pub mod render;
pub mod structure;
pub mod verify;
pub mod word;

pub use arith::{
    inverses_within, is_idempotent, is_inverse_pair, multiply, natural_le, order_of, power,
    reduce_word,
};
pub use error::{Error, Result};
pub use word::{parse_word, ExtNat, FreeWord, Letter, Params, ReducedWord, WordType};
