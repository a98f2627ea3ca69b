//! Flags, cocharacters and the parabolic/Levi/limit machinery for `GL_n`.

mod cocharacter;
mod flag;

pub use cocharacter::{canonical_weights, flag_to_cocharacter, Cocharacter, LeviConjugation};
pub use flag::Flag;
