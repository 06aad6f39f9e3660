//! Words over lowercase alphabets, classical reference words, and the
//! brute-force left-special-factor scan.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::morphisms::Morphism;
use crate::sadic::DirectiveWord;
use crate::{Error, Result, STALL_BOUND};

/// A letter is a lowercase ASCII byte (`b'a'..=b'z'`).
pub type Letter = u8;

/// Returns true when `x` is a valid letter.
pub fn is_letter(x: Letter) -> bool {
    x.is_ascii_lowercase()
}

pub(crate) fn letter_char(x: Letter) -> char {
    x as char
}

/// An ordered set of distinct letters.
///
/// The order is the construction order; it fixes the slot layout of bracket
/// notation (`[a, ab, -]`) and every canonical tie-break in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet(Vec<Letter>);

impl Alphabet {
    /// Builds an alphabet from distinct letters, keeping their order.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        let mut seen = BTreeSet::new();
        for &x in &letters {
            if !is_letter(x) {
                return Err(Error::InvalidLetter(x as char));
            }
            if !seen.insert(x) {
                return Err(Error::DuplicateLetter(x as char));
            }
        }
        Ok(Alphabet(letters))
    }

    /// The alphabet `a, b, c, …` of the first `k` letters.
    pub fn first_n(k: usize) -> Result<Self> {
        if k > 26 {
            return Err(Error::AlphabetTooLarge(k, 26));
        }
        Alphabet::new((0..k as u8).map(|i| b'a' + i))
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when the alphabet has no letters.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The letters in alphabet order.
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Membership test.
    pub fn contains(&self, x: Letter) -> bool {
        self.0.contains(&x)
    }

    /// Slot index of `x`, if present.
    pub fn index_of(&self, x: Letter) -> Option<usize> {
        self.0.iter().position(|&y| y == x)
    }

    /// The letters as a set.
    pub fn as_set(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Alphabet::new(s.bytes())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.0 {
            write!(f, "{}", x as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({})", self)
    }
}

/// A finite word over lowercase letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word after validating every letter.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        for &x in &letters {
            if !is_letter(x) {
                return Err(Error::InvalidLetter(x as char));
            }
        }
        Ok(Word(letters))
    }

    /// A one-letter word.
    pub fn single(x: Letter) -> Self {
        debug_assert!(is_letter(x));
        Word(vec![x])
    }

    /// Builds a word from letters already known to be valid.
    pub(crate) fn from_raw(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&x| is_letter(x)));
        Word(letters)
    }

    /// Length in letters.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the empty word.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The letters as a slice.
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Letter at position `i`.
    pub fn get(&self, i: usize) -> Option<Letter> {
        self.0.get(i).copied()
    }

    /// First letter.
    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    /// Last letter.
    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// The length-`n` prefix (the whole word when `n ≥ len`).
    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    /// The set of letters occurring in the word.
    pub fn alphabet(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }

    /// Appends a letter.
    pub fn push(&mut self, x: Letter) {
        debug_assert!(is_letter(x));
        self.0.push(x);
    }

    /// Appends another word.
    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// True when `self` is a prefix of `other`.
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// True when the word occurs in `other` as a factor.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        if self.is_empty() {
            return true;
        }
        other.0.windows(self.0.len()).any(|win| win == self.0)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::from_letters(s.bytes())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.0 {
            write!(f, "{}", x as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl std::ops::Index<usize> for Word {
    type Output = Letter;

    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

/// All left special factors of `w` of length `1..=max_len`.
///
/// A factor `u` is left special when `au` and `bu` both occur in `w` for two
/// distinct letters `a ≠ b`. The scan is deliberately brute force: it is the
/// reference oracle the optimized checkers are tested against. `max_len` is
/// clamped to `|w|`; the empty factor is never reported.
pub fn left_special_factors(w: &Word, max_len: usize) -> BTreeSet<Word> {
    let s = w.letters();
    let n = s.len();
    let max_len = max_len.min(n);
    let mut out = BTreeSet::new();
    for len in 1..=max_len {
        let mut preds: HashMap<&[Letter], BTreeSet<Letter>> = HashMap::new();
        for i in 1..=(n - len) {
            preds.entry(&s[i..i + len]).or_default().insert(s[i - 1]);
        }
        for (factor, set) in preds {
            if set.len() >= 2 {
                out.insert(Word(factor.to_vec()));
            }
        }
    }
    out
}

/// Length-`n` prefix of the fixed point `lim fᵏ(seed)`.
///
/// Requires `f(seed)` to begin with `seed`; longer calls extend shorter
/// results letter for letter. Reports [`Error::NoGrowth`] when [`STALL_BOUND`]
/// consecutive iterations fail to lengthen the word before reaching `n`.
pub fn fixed_point_prefix(f: &Morphism, seed: Letter, n: usize) -> Result<Word> {
    let image = f
        .image(seed)
        .ok_or(Error::LetterOutsideDomain(seed as char))?;
    if image.first() != Some(seed) {
        return Err(Error::NotProlongable(seed as char));
    }
    let mut w = Word::single(seed);
    let mut stall = 0usize;
    while w.len() < n {
        let next = f.apply_capped(&w, n)?;
        if next.len() == w.len() {
            stall += 1;
            if stall >= STALL_BOUND {
                return Err(Error::NoGrowth);
            }
        } else {
            stall = 0;
        }
        w = next;
    }
    Ok(w.prefix(n))
}

/// Names of the reference words used across tests and the CLI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedWord {
    /// Fixed point of `a ↦ ab, b ↦ a`.
    Fibonacci,
    /// Fixed point of `L_{a₁} ∘ ⋯ ∘ L_{aₖ}` over the first `k` letters;
    /// `kbonacci(3)` is the Tribonacci word.
    Kbonacci(usize),
    /// Fixed point of `λ_abc ∘ λ_bca ∘ λ_cab` (starts with `a`).
    XiA,
    /// Fixed point of `λ_bca ∘ λ_cab ∘ λ_abc` (starts with `b`).
    XiB,
    /// Fixed point of `λ_cab ∘ λ_abc ∘ λ_bca` (starts with `c`).
    XiC,
    /// `λ_acb` applied to the Fibonacci word.
    GOfF,
}

impl FromStr for NamedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "fibonacci" => return Ok(NamedWord::Fibonacci),
            "tribonacci" => return Ok(NamedWord::Kbonacci(3)),
            "xi_a" => return Ok(NamedWord::XiA),
            "xi_b" => return Ok(NamedWord::XiB),
            "xi_c" => return Ok(NamedWord::XiC),
            "g_of_F" | "g_of_f" => return Ok(NamedWord::GOfF),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("kbonacci(").and_then(|r| r.strip_suffix(')')) {
            let k: usize = rest
                .parse()
                .map_err(|_| Error::UnknownName(s.to_string()))?;
            return Ok(NamedWord::Kbonacci(k));
        }
        Err(Error::UnknownName(s.to_string()))
    }
}

/// The permutation `a ↦ b, b ↦ c, c ↦ a` relating the ξ words
/// (`π(ξ_a) = ξ_b`, `π(ξ_b) = ξ_c`, `π(ξ_c) = ξ_a`).
pub fn xi_rotation() -> Morphism {
    Morphism::perm(&[(b'a', b'b'), (b'b', b'c'), (b'c', b'a')])
        .expect("fixed three-letter rotation is a permutation")
}

/// The three-morphism composition whose fixed point is the requested ξ word,
/// together with its seed letter.
pub fn xi_morphism(seed: Letter) -> Result<(Morphism, Letter)> {
    let lam = |order: &str| Morphism::lambda(&order.parse::<Word>().expect("fixed order word"));
    let (outer, mid, inner) = match seed {
        b'a' => ("abc", "bca", "cab"),
        b'b' => ("bca", "cab", "abc"),
        b'c' => ("cab", "abc", "bca"),
        _ => return Err(Error::UnknownName(format!("xi_{}", seed as char))),
    };
    let f = Morphism::compose(&lam(outer)?, &Morphism::compose(&lam(mid)?, &lam(inner)?)?)?;
    Ok((f, seed))
}

/// Length-`n` prefix of a named reference word.
pub fn named_word(name: &NamedWord, n: usize) -> Result<Word> {
    match name {
        NamedWord::Fibonacci => {
            let f = Morphism::new([
                (b'a', "ab".parse::<Word>()?),
                (b'b', "a".parse::<Word>()?),
            ])?;
            fixed_point_prefix(&f, b'a', n)
        }
        NamedWord::Kbonacci(k) => {
            if !(2..=26).contains(k) {
                return Err(Error::UnknownName(format!("kbonacci({k})")));
            }
            let alphabet = Alphabet::first_n(*k)?;
            let mut f = Morphism::l(alphabet.letters()[*k - 1], &alphabet)?;
            for i in (0..*k - 1).rev() {
                f = Morphism::compose(&Morphism::l(alphabet.letters()[i], &alphabet)?, &f)?;
            }
            fixed_point_prefix(&f, b'a', n)
        }
        NamedWord::XiA | NamedWord::XiB | NamedWord::XiC => {
            let seed = match name {
                NamedWord::XiA => b'a',
                NamedWord::XiB => b'b',
                _ => b'c',
            };
            let (f, seed) = xi_morphism(seed)?;
            fixed_point_prefix(&f, seed, n)
        }
        NamedWord::GOfF => {
            let g = Morphism::lambda(&"acb".parse::<Word>()?)?;
            let fib = named_word(&NamedWord::Fibonacci, n)?;
            Ok(g.apply(&fib)?.prefix(n))
        }
    }
}

/// Incremental prefix generator: a generation rule plus the longest prefix
/// computed so far. Extending never changes letters already produced.
pub struct PrefixStream {
    rule: Rule,
    cache: Word,
}

enum Rule {
    FixedPoint { f: Morphism, seed: Letter },
    Image { f: Morphism, inner: Box<PrefixStream> },
    Directive(DirectiveWord),
}

impl PrefixStream {
    /// Stream of prefixes of `lim fᵏ(seed)`.
    pub fn fixed_point(f: Morphism, seed: Letter) -> Self {
        PrefixStream {
            rule: Rule::FixedPoint { f, seed },
            cache: Word::empty(),
        }
    }

    /// Stream applying `f` to another stream.
    pub fn image(f: Morphism, inner: PrefixStream) -> Self {
        PrefixStream {
            rule: Rule::Image {
                f,
                inner: Box::new(inner),
            },
            cache: Word::empty(),
        }
    }

    /// Stream of prefixes of the word directed by `d`.
    pub fn directive(d: DirectiveWord) -> Self {
        PrefixStream {
            rule: Rule::Directive(d),
            cache: Word::empty(),
        }
    }

    /// The length-`n` prefix, reusing previously computed letters.
    pub fn prefix(&mut self, n: usize) -> Result<Word> {
        if self.cache.len() < n {
            let extended = match &mut self.rule {
                Rule::FixedPoint { f, seed } => fixed_point_prefix(f, *seed, n)?,
                Rule::Image { f, inner } => {
                    // A nonerasing image of an n-letter prefix is at least
                    // n letters long, so the inner stream never needs more.
                    let base = inner.prefix(n)?;
                    f.apply(&base)?.prefix(n)
                }
                Rule::Directive(d) => crate::sadic::generate(d, n)?,
            };
            debug_assert!(self.cache.is_prefix_of(&extended));
            self.cache = extended;
        }
        Ok(self.cache.prefix(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn alphabet_rejects_bad_letters() {
        assert_eq!(
            Alphabet::new(*b"aA").unwrap_err(),
            Error::InvalidLetter('A')
        );
        assert_eq!(
            Alphabet::new(*b"aba").unwrap_err(),
            Error::DuplicateLetter('a')
        );
    }

    #[test]
    fn left_special_factors_of_reference_words() {
        // "baa": the factor "a" follows both b and a.
        assert_eq!(
            left_special_factors(&w("baa"), 3),
            BTreeSet::from([w("a")])
        );
        // "abaa": "a" is left special (after b and a), nothing longer is.
        assert_eq!(
            left_special_factors(&w("abaa"), 4),
            BTreeSet::from([w("a")])
        );
        assert!(left_special_factors(&w(""), 5).is_empty());
        assert!(left_special_factors(&w("aaaa"), 2).is_empty());
    }

    #[test]
    fn fibonacci_prefix() {
        assert_eq!(
            named_word(&NamedWord::Fibonacci, 13).unwrap(),
            w("abaababaabaab")
        );
    }

    #[test]
    fn tribonacci_prefix() {
        assert_eq!(named_word(&NamedWord::Kbonacci(3), 7).unwrap(), w("abacaba"));
    }

    #[test]
    fn xi_a_prefix() {
        assert_eq!(
            named_word(&NamedWord::XiA, 11).unwrap(),
            w("ababcababca")
        );
    }

    #[test]
    fn xi_variants_start_with_their_letter() {
        assert_eq!(named_word(&NamedWord::XiB, 1).unwrap(), w("b"));
        assert_eq!(named_word(&NamedWord::XiC, 1).unwrap(), w("c"));
    }

    #[test]
    fn g_of_f_prefix() {
        assert_eq!(named_word(&NamedWord::GOfF, 4).unwrap(), w("aacb"));
    }

    #[test]
    fn fixed_point_stalls_on_identity() {
        let id = Morphism::new([(b'a', w("a"))]).unwrap();
        assert_eq!(fixed_point_prefix(&id, b'a', 5).unwrap_err(), Error::NoGrowth);
    }

    #[test]
    fn fixed_point_rejects_unprolongable_seed() {
        let f = Morphism::new([(b'a', w("ba")), (b'b', w("a"))]).unwrap();
        assert_eq!(
            fixed_point_prefix(&f, b'a', 5).unwrap_err(),
            Error::NotProlongable('a')
        );
    }

    #[test]
    fn fixed_point_prefixes_are_monotone() {
        let name = NamedWord::Fibonacci;
        let long = named_word(&name, 144).unwrap();
        for n in [1, 2, 3, 5, 21, 89] {
            assert_eq!(named_word(&name, n).unwrap(), long.prefix(n));
        }
    }

    #[test]
    fn named_word_parses() {
        assert_eq!("tribonacci".parse::<NamedWord>().unwrap(), NamedWord::Kbonacci(3));
        assert_eq!("kbonacci(4)".parse::<NamedWord>().unwrap(), NamedWord::Kbonacci(4));
        assert!("frobnicate".parse::<NamedWord>().is_err());
    }

    #[test]
    fn prefix_stream_extends_consistently() {
        let f = Morphism::new([(b'a', w("ab")), (b'b', w("a"))]).unwrap();
        let mut stream = PrefixStream::fixed_point(f, b'a');
        let p5 = stream.prefix(5).unwrap();
        let p13 = stream.prefix(13).unwrap();
        assert_eq!(p5, p13.prefix(5));
        assert_eq!(p13, w("abaababaabaab"));
    }
}
