//! Directive words: generating a word from a sequence of morphisms,
//! recovering the sequence by desubstitution, and the automaton-backed LSP
//! decision for eventually periodic directives.
//!
//! A directive word `f₁ f₂ f₃ ⋯` names the word `lim f₁(f₂(⋯fₘ(αₘ₊₁)⋯))`
//! where `αₘ₊₁` is the shared first letter of the images of `fₘ₊₁`.
//! Desubstitution inverts one level: it cuts a word before every occurrence
//! of its first letter and reads each block as the image of the letter the
//! block ends with.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::automaton::{build, recognize, AutomatonState};
use crate::morphisms::Morphism;
use crate::words::{Alphabet, Letter, Word};
use crate::{Error, Result, STALL_BOUND};

/// An eventually periodic (or finite) sequence of morphisms.
///
/// The sequence is `preperiod ++ period ++ period ++ ⋯`; an empty period
/// makes the directive finite, which [`generate`] accepts but the
/// periodicity-based operations reject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectiveWord {
    preperiod: Vec<Morphism>,
    period: Vec<Morphism>,
}

impl DirectiveWord {
    /// Builds a directive from its preperiodic and periodic parts.
    pub fn new(preperiod: Vec<Morphism>, period: Vec<Morphism>) -> Self {
        DirectiveWord { preperiod, period }
    }

    /// The preperiodic part.
    pub fn preperiod(&self) -> &[Morphism] {
        &self.preperiod
    }

    /// The periodic part (empty for a finite directive).
    pub fn period(&self) -> &[Morphism] {
        &self.period
    }

    /// The 1-based `i`-th morphism of the infinite sequence, `None` past the
    /// end of a finite directive.
    pub fn morphism_at(&self, i: usize) -> Option<&Morphism> {
        let idx = i.checked_sub(1)?;
        if idx < self.preperiod.len() {
            Some(&self.preperiod[idx])
        } else if self.period.is_empty() {
            None
        } else {
            Some(&self.period[(idx - self.preperiod.len()) % self.period.len()])
        }
    }

    /// The directive of the one-level-deeper word: drops the first morphism
    /// (rotating the period when the preperiod is empty). `None` when there
    /// is no morphism to drop.
    pub fn shift(&self) -> Option<DirectiveWord> {
        if !self.preperiod.is_empty() {
            Some(DirectiveWord::new(
                self.preperiod[1..].to_vec(),
                self.period.clone(),
            ))
        } else if !self.period.is_empty() {
            let mut period = self.period.clone();
            period.rotate_left(1);
            Some(DirectiveWord::new(Vec::new(), period))
        } else {
            None
        }
    }

    /// Union of the domains and codomains of all morphisms.
    pub fn alphabet(&self) -> BTreeSet<Letter> {
        self.preperiod
            .iter()
            .chain(&self.period)
            .flat_map(|f| {
                let mut letters = f.domain();
                letters.extend(f.codomain());
                letters
            })
            .collect()
    }

    /// Parses the textual form `pre: <m> … ; period: <m> …`.
    ///
    /// Either section may be omitted or left empty; morphisms use bracket
    /// notation, separated by whitespace. Without an explicit `ambient`
    /// alphabet the slots of each morphism are inferred from its images.
    pub fn parse(text: &str, ambient: Option<&Alphabet>) -> Result<Self> {
        let mut preperiod = Vec::new();
        let mut period = Vec::new();
        let mut seen_pre = false;
        let mut seen_period = false;
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, items, seen) = if let Some(rest) = part.strip_prefix("pre:") {
                (&mut preperiod, rest, &mut seen_pre)
            } else if let Some(rest) = part.strip_prefix("period:") {
                (&mut period, rest, &mut seen_period)
            } else {
                return Err(Error::parse(
                    "directive",
                    format!("expected `pre:` or `period:` section, got {part:?}"),
                ));
            };
            if *seen {
                return Err(Error::parse("directive", "duplicate section".to_string()));
            }
            *seen = true;
            for token in items.split_whitespace() {
                key.push(Morphism::parse_bracket(token, ambient)?);
            }
        }
        if !seen_pre && !seen_period {
            return Err(Error::parse("directive", format!("no sections in {text:?}")));
        }
        Ok(DirectiveWord::new(preperiod, period))
    }
}

impl fmt::Display for DirectiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pre:")?;
        for m in &self.preperiod {
            write!(f, " {m}")?;
        }
        write!(f, " ; period:")?;
        for m in &self.period {
            write!(f, " {m}")?;
        }
        Ok(())
    }
}

/// One desubstitution level: `morphism` applied to `inner` reproduces the
/// word the step was extracted from (minus the final block, for the
/// conservative variant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesubStep {
    /// The extracted R-bLSP morphism.
    pub morphism: Morphism,
    /// The desubstituted word, one letter per block.
    pub inner: Word,
}

/// Block decomposition before every occurrence of the first letter, plus the
/// parent map read off consecutive letters. A parent conflict proves the
/// word is no prefix of any LSP word, naming the conflicted letter.
fn split_blocks(w: &Word) -> Result<(Letter, Vec<(usize, usize)>)> {
    let s = w.letters();
    if s.is_empty() {
        return Err(Error::TooShort);
    }
    let alpha = s[0];
    let starts: Vec<usize> = (0..s.len()).filter(|&i| s[i] == alpha).collect();
    let mut blocks = Vec::with_capacity(starts.len());
    for (j, &start) in starts.iter().enumerate() {
        let end = starts.get(j + 1).copied().unwrap_or(s.len());
        blocks.push((start, end));
    }
    let mut parent = [0u8; 26];
    for &(start, end) in &blocks {
        for i in start + 1..end {
            let (x, y) = (s[i - 1], s[i]);
            let slot = &mut parent[(y - b'a') as usize];
            if *slot == 0 {
                *slot = x;
            } else if *slot != x {
                return Err(Error::NotLspPrefix(y as char));
            }
        }
    }
    Ok((alpha, blocks))
}

fn step_from_blocks(w: &Word, blocks: &[(usize, usize)]) -> Result<DesubStep> {
    let s = w.letters();
    let mut images: BTreeMap<Letter, Word> = BTreeMap::new();
    let mut inner = Word::empty();
    for &(start, end) in blocks {
        let block = Word::from_letters(s[start..end].iter().copied())?;
        let last = block.last().expect("blocks are nonempty");
        match images.get(&last) {
            None => {
                images.insert(last, block);
            }
            Some(prev) => {
                // Parent consistency forces equal blocks for equal last
                // letters; see split_blocks.
                debug_assert_eq!(prev, &block);
            }
        }
        inner.push(last);
    }
    let morphism = Morphism::new(images)?;
    debug_assert!(morphism.is_rblsp());
    Ok(DesubStep { morphism, inner })
}

/// Desubstitutes one level: cuts `w` before each occurrence of its first
/// letter and reads every block (the final one included) as the image of its
/// last letter. On success `morphism.apply(&inner)` reproduces `w` exactly.
///
/// Errors: [`Error::TooShort`] for the empty word, and
/// [`Error::NotLspPrefix`] when two occurrences of a letter have different
/// predecessors inside blocks, which certifies that `w` is not a prefix of
/// any LSP word.
pub fn desubstitute(w: &Word) -> Result<DesubStep> {
    let (_, blocks) = split_blocks(w)?;
    step_from_blocks(w, &blocks)
}

/// Like [`desubstitute`], but drops the final block (unless it is the only
/// one): the last block may be a truncated image, and including it would
/// pollute the extracted domain when steps are chained. The parent-conflict
/// check still covers the final block. On success `morphism.apply(&inner)`
/// reproduces `w` with the final block removed.
pub(crate) fn desubstitute_conservative(w: &Word) -> Result<DesubStep> {
    let (_, blocks) = split_blocks(w)?;
    if blocks.len() <= 1 {
        return step_from_blocks(w, &blocks);
    }
    step_from_blocks(w, &blocks[..blocks.len() - 1])
}

/// Chain of morphisms extracted by repeated conservative desubstitution, at
/// most `depth` long.
///
/// The chain stops early when the word is exhausted or when a step extracts
/// the identity on a single letter (the word has collapsed to a power of one
/// letter, and every further step would repeat that identity).
pub fn fitted_directive_prefix(w: &Word, depth: usize) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    let mut cur = w.clone();
    for _ in 0..depth {
        if cur.is_empty() {
            break;
        }
        let step = desubstitute_conservative(&cur)?;
        let single_identity = step.morphism.size() == 1;
        out.push(step.morphism);
        if single_identity {
            break;
        }
        cur = step.inner;
    }
    Ok(out)
}

/// Length-`n` prefix of the word directed by `d`.
///
/// For growing depth `m`, the candidate prefix is `f₁(⋯fₘ(seed)⋯)` with the
/// seed letter taken from the next morphism's images (or from `fₘ` itself at
/// the end of a finite directive); every level is capped at `n` letters,
/// which cannot change the first `n` letters because morphisms are
/// nonerasing. A letter falling outside the next domain makes the chain
/// incoherent ([`Error::ChainMismatch`]); [`crate::STALL_BOUND`] consecutive
/// depths without net growth give [`Error::NoGrowth`]. A finite directive
/// may return fewer than `n` letters.
pub fn generate(d: &DirectiveWord, n: usize) -> Result<Word> {
    if d.morphism_at(1).is_none() {
        return Err(Error::parse("directive", "no morphisms to generate from".to_string()));
    }
    if n == 0 {
        return Ok(Word::empty());
    }
    let mut best = Word::empty();
    let mut stall = 0usize;
    let mut m = 1usize;
    loop {
        let seed = match d.morphism_at(m + 1).or_else(|| d.morphism_at(m)) {
            Some(f) => f.first().ok_or(Error::ChainMismatch)?,
            None => unreachable!("morphism_at(1) exists and m ≥ 1"),
        };
        let mut word = Word::single(seed);
        for j in (1..=m).rev() {
            let f = d.morphism_at(j).expect("j ≤ m and morphism_at(m) exists");
            word = f.apply_capped(&word, n).map_err(|e| match e {
                Error::LetterOutsideDomain(_) => Error::ChainMismatch,
                other => other,
            })?;
        }
        if word.len() >= n {
            return Ok(word.prefix(n));
        }
        if word.len() <= best.len() {
            stall += 1;
            if stall >= STALL_BOUND {
                return Err(Error::NoGrowth);
            }
        } else {
            stall = 0;
            best = word;
        }
        if d.morphism_at(m + 1).is_none() {
            // Finite directive exhausted before reaching n letters.
            return Ok(best);
        }
        m += 1;
    }
}

/// Decides whether the word directed by the eventually periodic directive
/// `d` is LSP, by recognition in the fragility-transition automaton over the
/// directive's own alphabet.
///
/// Preconditions checked: the period must be nonempty
/// ([`Error::NotEventuallyPeriodic`]) and the directive must be fitted —
/// each domain must equal the letters produced one level deeper,
/// `domain(fᵢ) = alph(fᵢ₊₁(domain(fᵢ₊₂)))` for every position, wrapping
/// inside the period ([`Error::NotFitted`]).
///
/// Returns the verdict together with the start states witnessing it.
pub fn is_lsp_by_theorem(d: &DirectiveWord) -> Result<(bool, Vec<AutomatonState>)> {
    if d.period().is_empty() {
        return Err(Error::NotEventuallyPeriodic);
    }
    for i in 1..=(d.preperiod().len() + d.period().len()) {
        let f_i = d.morphism_at(i).expect("within preperiod + period");
        let f_next = d.morphism_at(i + 1).expect("period is nonempty");
        let mut produced = BTreeSet::new();
        for x in d.morphism_at(i + 2).expect("period is nonempty").domain() {
            match f_next.image(x) {
                Some(image) => produced.extend(image.alphabet()),
                None => return Err(Error::NotFitted),
            }
        }
        if f_i.domain() != produced {
            return Err(Error::NotFitted);
        }
    }
    let alphabet = Alphabet::new(d.alphabet())?;
    let aut = build(&alphabet)?;
    let starts = recognize(&aut, d)?;
    let states: Vec<AutomatonState> = starts
        .into_iter()
        .map(|i| aut.states()[i].clone())
        .collect();
    Ok((!states.is_empty(), states))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{named_word, NamedWord};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn m(s: &str) -> Morphism {
        s.parse().unwrap()
    }

    fn lambda(order: &str) -> Morphism {
        Morphism::lambda(&order.parse().unwrap()).unwrap()
    }

    fn l(x: u8) -> Morphism {
        Morphism::l(x, &"ab".parse().unwrap()).unwrap()
    }

    #[test]
    fn desubstitute_reference_examples() {
        let fib = named_word(&NamedWord::Fibonacci, 13).unwrap();
        let step = desubstitute(&fib).unwrap();
        assert_eq!(step.morphism.to_string(), "[a,ab]");
        assert_eq!(step.inner, w("babbabab"));

        let step = desubstitute(&w("aacbaaacb")).unwrap();
        assert_eq!(step.morphism.to_string(), "[a,acb,-]");
        assert_eq!(step.inner, w("abaab"));

        let step = desubstitute(&w("aaaa")).unwrap();
        assert_eq!(step.morphism.to_string(), "[a]");
        assert_eq!(step.inner, w("aaaa"));

        let step = desubstitute(&w("ab")).unwrap();
        assert_eq!(step.morphism.to_string(), "[-,ab]");
        assert_eq!(step.inner, w("b"));
    }

    #[test]
    fn desubstitute_certifies_non_lsp_prefixes() {
        assert_eq!(desubstitute(&w("baa")).unwrap_err(), Error::NotLspPrefix('a'));
        assert_eq!(desubstitute(&w("")).unwrap_err(), Error::TooShort);
    }

    #[test]
    fn desubstitute_roundtrips() {
        for text in ["ab", "aaaa", "aacbaaacb", "abaababaabaab", "abcabcab", "acbacacb"] {
            let word = w(text);
            let step = desubstitute(&word).unwrap();
            assert_eq!(step.morphism.apply(&step.inner).unwrap(), word, "{text}");
            assert!(step.morphism.is_rblsp(), "{text}");
        }
    }

    #[test]
    fn conservative_variant_drops_the_final_block() {
        let word = w("abcabcabcabcabcab");
        let greedy = desubstitute(&word).unwrap();
        assert_eq!(greedy.morphism.domain(), BTreeSet::from([b'b', b'c']));
        let careful = desubstitute_conservative(&word).unwrap();
        assert_eq!(careful.morphism.to_string(), "[-,-,abc]");
        assert_eq!(careful.inner, w("ccccc"));
        assert_eq!(
            careful.morphism.apply(&careful.inner).unwrap(),
            w("abcabcabcabcabc")
        );
        // With a single block there is nothing safe to drop.
        let single = desubstitute_conservative(&w("ab")).unwrap();
        assert_eq!(single.morphism.to_string(), "[-,ab]");
        assert_eq!(single.inner, w("b"));
    }

    #[test]
    fn fitted_prefix_of_the_fibonacci_word() {
        let fib = named_word(&NamedWord::Fibonacci, 200).unwrap();
        let chain = fitted_directive_prefix(&fib, 3).unwrap();
        let texts: Vec<String> = chain.iter().map(|f| f.to_string()).collect();
        assert_eq!(texts, ["[a,ab]", "[ba,b]", "[a,ab]"]);
    }

    #[test]
    fn fitted_prefix_stops_on_single_letter_identity() {
        let chain = fitted_directive_prefix(&w("aaaa"), 5).unwrap();
        let texts: Vec<String> = chain.iter().map(|f| f.to_string()).collect();
        assert_eq!(texts, ["[a]"]);
        assert!(fitted_directive_prefix(&w(""), 4).unwrap().is_empty());
    }

    #[test]
    fn generate_reference_prefixes() {
        let fib_directive = DirectiveWord::new(vec![], vec![l(b'a'), l(b'b')]);
        assert_eq!(generate(&fib_directive, 8).unwrap(), w("abaababa"));
        let xi = DirectiveWord::new(vec![], vec![lambda("abc"), lambda("bca"), lambda("cab")]);
        assert_eq!(generate(&xi, 11).unwrap(), w("ababcababca"));
    }

    #[test]
    fn generate_matches_named_words_on_long_prefixes() {
        let fib_directive = DirectiveWord::new(vec![], vec![l(b'a'), l(b'b')]);
        assert_eq!(
            generate(&fib_directive, 300).unwrap(),
            named_word(&NamedWord::Fibonacci, 300).unwrap()
        );
        let xi = DirectiveWord::new(vec![], vec![lambda("abc"), lambda("bca"), lambda("cab")]);
        assert_eq!(
            generate(&xi, 300).unwrap(),
            named_word(&NamedWord::XiA, 300).unwrap()
        );
    }

    #[test]
    fn generate_error_cases() {
        let stuck = DirectiveWord::new(vec![], vec![m("[a]")]);
        assert_eq!(generate(&stuck, 5).unwrap_err(), Error::NoGrowth);
        let mismatched = DirectiveWord::new(vec![], vec![m("[a]"), m("[-,b]")]);
        assert_eq!(generate(&mismatched, 5).unwrap_err(), Error::ChainMismatch);
        assert!(generate(&DirectiveWord::new(vec![], vec![]), 5).is_err());
    }

    #[test]
    fn generate_handles_finite_directives() {
        let finite = DirectiveWord::new(vec![m("[a,ab]")], vec![]);
        assert_eq!(generate(&finite, 10).unwrap(), w("a"));
    }

    #[test]
    fn directive_indexing_and_shift() {
        let d = DirectiveWord::new(vec![m("[a,ab]")], vec![m("[ba,b]"), m("[a,ab]")]);
        assert_eq!(d.morphism_at(1), Some(&m("[a,ab]")));
        assert_eq!(d.morphism_at(2), Some(&m("[ba,b]")));
        assert_eq!(d.morphism_at(3), Some(&m("[a,ab]")));
        assert_eq!(d.morphism_at(4), Some(&m("[ba,b]")));
        assert_eq!(d.morphism_at(0), None);
        let s = d.shift().unwrap();
        assert_eq!(s.preperiod(), &[] as &[Morphism]);
        assert_eq!(s.morphism_at(1), Some(&m("[ba,b]")));
        let s2 = s.shift().unwrap();
        assert_eq!(s2.period(), &[m("[a,ab]"), m("[ba,b]")]);
    }

    #[test]
    fn directive_text_roundtrip() {
        let d = DirectiveWord::new(vec![m("[a,ab]")], vec![m("[ba,b]"), m("[a,ab]")]);
        let text = d.to_string();
        assert_eq!(text, "pre: [a,ab] ; period: [ba,b] [a,ab]");
        assert_eq!(DirectiveWord::parse(&text, None).unwrap(), d);
        let periodic_only = DirectiveWord::parse("period: [a,ab]", None).unwrap();
        assert_eq!(periodic_only.preperiod(), &[] as &[Morphism]);
        assert!(DirectiveWord::parse("nonsense", None).is_err());
    }

    #[test]
    fn theorem_decider_accepts_classical_directives() {
        let fib = DirectiveWord::new(vec![], vec![l(b'a'), l(b'b')]);
        let (lsp, states) = is_lsp_by_theorem(&fib).unwrap();
        assert!(lsp);
        assert_eq!(states.len(), 1);
        assert!(states[0].frag.is_empty());

        let xi = DirectiveWord::new(vec![], vec![lambda("abc"), lambda("bca"), lambda("cab")]);
        let (lsp, states) = is_lsp_by_theorem(&xi).unwrap();
        assert!(lsp);
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].type_letter(), Some(b'a'));
    }

    #[test]
    fn theorem_decider_rejects_a_breaking_prefix() {
        let abc: Alphabet = "abc".parse().unwrap();
        let d = DirectiveWord::new(
            vec![lambda("acb"), lambda("acb")],
            vec![
                Morphism::l(b'a', &abc).unwrap(),
                Morphism::l(b'b', &abc).unwrap(),
                Morphism::l(b'c', &abc).unwrap(),
            ],
        );
        let (lsp, states) = is_lsp_by_theorem(&d).unwrap();
        assert!(!lsp);
        assert!(states.is_empty());
    }

    #[test]
    fn theorem_decider_validates_input_shape() {
        let finite = DirectiveWord::new(vec![m("[a,ab]")], vec![]);
        assert_eq!(
            is_lsp_by_theorem(&finite).unwrap_err(),
            Error::NotEventuallyPeriodic
        );
        let unfitted = DirectiveWord::new(vec![], vec![m("[ba,-]")]);
        assert_eq!(is_lsp_by_theorem(&unfitted).unwrap_err(), Error::NotFitted);
    }
}
