//! Infinite LSP words: morphism basis, fragility calculus, and the
//! automaton-based S-adic characterization.
//!
//! An *LSP word* is a (finite or infinite) word all of whose left special
//! factors are prefixes: whenever `au` and `bu` both occur for two distinct
//! letters `a ≠ b`, the factor `u` must be a prefix. Finite LSP words are
//! exactly the words whose suffix automaton has the minimal number of states,
//! and exactly the prefixes of infinite LSP words.
//!
//! The crate provides, at desk scale and with independently implemented
//! cross-checking oracles:
//!
//! - [`words`]: words and alphabets, classical reference words (Fibonacci,
//!   k-bonacci, the ξ family), fixed-point prefixes, and a brute-force
//!   left-special-factor scan;
//! - [`lsp`]: two independent finite-word LSP oracles — a left-special
//!   frontier scan with witness extraction, and a hand-rolled suffix
//!   automaton;
//! - [`morphisms`]: bLSP morphisms (the endomorphisms with a fixed letter α
//!   and `f(β) = f(γ)β` otherwise), their bijection with rooted labeled
//!   trees, restrictions (R-bLSP morphisms), enumeration, and the breaking
//!   test;
//! - [`fragility`]: the fragility calculus — detecting fragilities in
//!   prefixes, fragilities associated with a morphism, and the
//!   breaking / propagated / not-propagated trichotomy;
//! - [`automaton`]: the deterministic automaton over (alphabet, fragility
//!   set) states whose reversal recognizes the directive words of LSP words,
//!   with lasso-based recognition of eventually periodic directives;
//! - [`sadic`]: desubstitution of LSP prefixes, extraction of fitted
//!   directive prefixes, and generation of directed words;
//! - [`preserve`]: the exact classification of LSP-preserving nonerasing
//!   endomorphisms (compositions of left episturmian morphisms with a
//!   permutation, or powers of an LSP periodic root), plus an empirical
//!   counterexample search;
//! - [`decompose`]: bounded refutation of two-word decompositions.

pub mod automaton;
pub mod decompose;
pub mod fragility;
pub mod lsp;
pub mod morphisms;
pub mod preserve;
pub mod sadic;
pub mod words;

use std::fmt;

/// Iteration budget for prefix generators: after this many consecutive
/// non-growing rounds the generator reports [`Error::NoGrowth`].
pub const STALL_BOUND: usize = 64;

/// Largest alphabet accepted by the morphism enumerators.
pub const MAX_ENUM_ALPHABET: usize = 6;

/// Largest alphabet accepted by the automaton builder (the state count
/// explodes beyond three letters).
pub const MAX_AUTOMATON_ALPHABET: usize = 4;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A symbol outside `a..=z` was used as a letter.
    #[error("invalid letter {0:?}: letters are lowercase ASCII")]
    InvalidLetter(char),
    /// An alphabet or ordering word repeated a letter.
    #[error("duplicate letter {0:?}")]
    DuplicateLetter(char),
    /// A morphism was constructed with no domain letters.
    #[error("morphism has an empty domain")]
    EmptyDomain,
    /// An enumeration or construction bound was exceeded.
    #[error("alphabet has {0} letters, above the supported bound {1}")]
    AlphabetTooLarge(usize, usize),
    /// `named_word` did not recognize the requested name.
    #[error("unknown named word {0:?}")]
    UnknownName(String),
    /// The seed letter is not prolongable under the morphism.
    #[error("morphism image of {0:?} does not begin with {0:?}")]
    NotProlongable(char),
    /// A prefix generator stalled below the requested length.
    #[error("prefix generation stalled below the requested length")]
    NoGrowth,
    /// A word contained a letter the morphism is not defined on.
    #[error("letter {0:?} is outside the morphism domain")]
    LetterOutsideDomain(char),
    /// Two morphisms do not chain (codomain of one outside domain of other).
    #[error("morphism domains do not chain")]
    DomainMismatch,
    /// The morphism is not bLSP.
    #[error("morphism is not bLSP")]
    NotBlsp,
    /// The morphism is not R-bLSP (no bLSP morphism restricts to it).
    #[error("morphism is not R-bLSP")]
    NotRblsp,
    /// A fragility triple mentions letters outside the morphism domain.
    #[error("triple letters are outside the morphism domain")]
    TripleOutsideDomain,
    /// Desubstitution found a letter with two distinct in-block
    /// predecessors; the input is not a prefix of any infinite LSP word.
    #[error("not an LSP prefix: letter {0:?} has two distinct predecessors")]
    NotLspPrefix(char),
    /// The word is too short to desubstitute.
    #[error("word is too short to desubstitute")]
    TooShort,
    /// The directive word has an empty period where one is required.
    #[error("directive word is not eventually periodic (empty period)")]
    NotEventuallyPeriodic,
    /// The directive word fails the structural alphabet-fitting check.
    #[error("directive word is not alphabet-fitted")]
    NotFitted,
    /// Consecutive directive morphisms do not chain during generation.
    #[error("directive morphisms do not chain")]
    ChainMismatch,
    /// An operation that needs a nonempty word received an empty one.
    #[error("word is empty")]
    EmptyWord,
    /// A periodicity check received a non-primitive root.
    #[error("word is not primitive")]
    NotPrimitive,
    /// The morphism is not an endomorphism.
    #[error("morphism is not an endomorphism")]
    NotEndomorphism,
    /// The morphism does not permute its domain.
    #[error("morphism is not a permutation")]
    NotPermutation,
    /// A textual input failed to parse.
    #[error("invalid {what}: {detail}")]
    Parse {
        /// What kind of input was being parsed.
        what: &'static str,
        /// Human-readable description of the problem.
        detail: String,
    },
}

impl Error {
    pub(crate) fn parse(what: &'static str, detail: impl fmt::Display) -> Self {
        Error::Parse {
            what,
            detail: detail.to_string(),
        }
    }
}

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

pub use automaton::{build, export_dot, recognize, transition, Automaton, AutomatonState};
pub use decompose::{search_two_word_decomposition, DecompositionQuery};
pub use fragility::{
    associated_fragilities, classify, frag_image, fragility_triples, fragility_triples_within,
    Classification, FragTriple, FragilityWitness,
};
pub use lsp::{is_lsp, is_lsp_sa, suffix_automaton_states, LspVerdict, SuffixAutomatonStats};
pub use morphisms::{enumerate_blsp, enumerate_rblsp, is_breaking, Morphism, RootedTree};
pub use preserve::{
    find_counterexample, in_l_star_perm, necessary_condition_cn, periodic_word_is_lsp,
    preserves_lsp, primitive_root, sweep_ternary, Membership, PreservationVerdict, SweepOutcome,
};
pub use sadic::{
    desubstitute, fitted_directive_prefix, generate, is_lsp_by_theorem, DesubStep, DirectiveWord,
};
pub use words::{
    fixed_point_prefix, left_special_factors, named_word, Alphabet, Letter, NamedWord,
    PrefixStream, Word,
};
