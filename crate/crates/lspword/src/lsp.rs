//! Deciding whether a finite word is LSP.
//!
//! A word is LSP when all of its left special factors are prefixes (a factor
//! `u` is left special when `au` and `bu` both occur for distinct letters
//! `a ≠ b`). Two independent deciders live here: a frontier scan that walks
//! prefixes and inspects their one-letter extensions, and a suffix-automaton
//! size criterion. They share no code, which lets each serve as an oracle
//! for the other.

use crate::words::{Letter, Word};

/// Outcome of the frontier LSP check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LspVerdict {
    /// True when every left special factor is a prefix.
    pub lsp: bool,
    /// A shortest non-prefix left special factor (lexicographically least
    /// among the shortest) when the word is not LSP.
    pub witness: Option<Word>,
}

/// Frontier LSP check.
///
/// Left special factors are closed under removing letters from the right, so
/// a length-`ℓ+1` left special factor always extends a length-`ℓ` one. The
/// scan keeps the occurrence list of the current prefix and examines the
/// predecessor sets of its one-letter extensions: if an extension other than
/// the prefix itself is left special, that extension is a shortest witness;
/// if no extension is left special, nothing longer can be and the word is
/// LSP; otherwise the prefix grows by one letter.
pub fn is_lsp(w: &Word) -> LspVerdict {
    let s = w.letters();
    let n = s.len();
    let mut occs: Vec<usize> = (0..n).collect();
    let mut ell = 0usize;
    loop {
        let mut preds = [0u32; 26];
        for &i in &occs {
            if i + ell < n && i >= 1 {
                let e = (s[i + ell] - b'a') as usize;
                preds[e] |= 1 << (s[i - 1] - b'a');
            }
        }
        let special: Vec<Letter> = (0u8..26)
            .filter(|&e| preds[e as usize].count_ones() >= 2)
            .map(|e| e + b'a')
            .collect();
        if special.is_empty() {
            return LspVerdict { lsp: true, witness: None };
        }
        // Some extension occurred, so the prefix has a next letter.
        let cont = s[ell];
        if let Some(&bad) = special.iter().find(|&&e| e != cont) {
            let mut witness = w.prefix(ell);
            witness.push(bad);
            return LspVerdict { lsp: false, witness: Some(witness) };
        }
        occs.retain(|&i| i + ell < n && s[i + ell] == cont);
        ell += 1;
    }
}

/// Size report of the suffix automaton of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuffixAutomatonStats {
    /// Number of states of the minimal suffix automaton.
    pub states: usize,
    /// Length of the word it was built from.
    pub word_len: usize,
}

impl SuffixAutomatonStats {
    /// True when the automaton has the least possible size, `word_len + 1`.
    pub fn is_minimal(&self) -> bool {
        self.states == self.word_len + 1
    }
}

/// Minimal suffix automaton, built online one letter at a time.
struct SuffixAutomaton {
    len: Vec<usize>,
    link: Vec<isize>,
    next: Vec<[i32; 26]>,
    last: usize,
}

impl SuffixAutomaton {
    fn new() -> Self {
        SuffixAutomaton {
            len: vec![0],
            link: vec![-1],
            next: vec![[-1; 26]],
            last: 0,
        }
    }

    fn add_state(&mut self, len: usize, link: isize, next: [i32; 26]) -> usize {
        self.len.push(len);
        self.link.push(link);
        self.next.push(next);
        self.len.len() - 1
    }

    fn extend(&mut self, c: usize) {
        let cur = self.add_state(self.len[self.last] + 1, -1, [-1; 26]);
        let mut p = self.last as isize;
        while p >= 0 && self.next[p as usize][c] < 0 {
            self.next[p as usize][c] = cur as i32;
            p = self.link[p as usize];
        }
        if p < 0 {
            self.link[cur] = 0;
        } else {
            let q = self.next[p as usize][c] as usize;
            if self.len[p as usize] + 1 == self.len[q] {
                self.link[cur] = q as isize;
            } else {
                let clone = self.add_state(self.len[p as usize] + 1, self.link[q], self.next[q]);
                while p >= 0 && self.next[p as usize][c] == q as i32 {
                    self.next[p as usize][c] = clone as i32;
                    p = self.link[p as usize];
                }
                self.link[q] = clone as isize;
                self.link[cur] = clone as isize;
            }
        }
        self.last = cur;
    }

    fn states(&self) -> usize {
        self.len.len()
    }
}

/// Builds the minimal suffix automaton of `w` and reports its size.
pub fn suffix_automaton_states(w: &Word) -> SuffixAutomatonStats {
    let mut sam = SuffixAutomaton::new();
    for &x in w.letters() {
        sam.extend((x - b'a') as usize);
    }
    SuffixAutomatonStats {
        states: sam.states(),
        word_len: w.len(),
    }
}

/// Suffix-automaton LSP check: a word is LSP exactly when its minimal suffix
/// automaton has `|w| + 1` states, the least possible number.
pub fn is_lsp_sa(w: &Word) -> bool {
    suffix_automaton_states(w).is_minimal()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn frontier_reference_verdicts() {
        assert_eq!(is_lsp(&w("")), LspVerdict { lsp: true, witness: None });
        assert_eq!(is_lsp(&w("abaa")), LspVerdict { lsp: true, witness: None });
        assert_eq!(
            is_lsp(&w("baa")),
            LspVerdict { lsp: false, witness: Some(w("a")) }
        );
        assert_eq!(
            is_lsp(&w("aaacacb")),
            LspVerdict { lsp: false, witness: Some(w("ac")) }
        );
    }

    #[test]
    fn witness_is_a_non_prefix_left_special_factor() {
        for text in ["baa", "aaacacb", "abb", "cabac", "ababbaba"] {
            let word = w(text);
            let verdict = is_lsp(&word);
            assert!(!verdict.lsp, "{text}");
            let witness = verdict.witness.unwrap();
            assert!(!witness.is_prefix_of(&word), "{text}: witness must not be a prefix");
            let specials = crate::words::left_special_factors(&word, word.len());
            assert!(specials.contains(&witness), "{text}: witness is left special");
        }
    }

    #[test]
    fn suffix_automaton_reference_sizes() {
        assert_eq!(suffix_automaton_states(&w("")).states, 1);
        assert_eq!(suffix_automaton_states(&w("aab")).states, 4);
        assert_eq!(suffix_automaton_states(&w("abb")).states, 5);
    }

    #[test]
    fn suffix_automaton_size_bounds() {
        for text in ["a", "ab", "abb", "abaab", "aaaaaa", "abcabc", "babbab"] {
            let stats = suffix_automaton_states(&w(text));
            let n = stats.word_len;
            assert!(stats.states >= n + 1, "{text}");
            assert!(stats.states <= (2 * n).saturating_sub(1).max(n + 1), "{text}");
        }
    }

    #[test]
    fn deciders_agree_on_small_binary_words() {
        for len in 0..=8u32 {
            for code in 0..(1u32 << len) {
                let letters: Vec<u8> = (0..len)
                    .map(|i| if code & (1 << i) != 0 { b'b' } else { b'a' })
                    .collect();
                let word = Word::from_letters(letters).unwrap();
                assert_eq!(is_lsp(&word).lsp, is_lsp_sa(&word), "{word}");
            }
        }
    }

    #[test]
    fn lsp_prefix_closure_on_a_known_lsp_word() {
        // The Fibonacci word is LSP; so is every prefix.
        let fib = crate::words::named_word(&crate::words::NamedWord::Fibonacci, 89).unwrap();
        for n in 0..=fib.len() {
            assert!(is_lsp(&fib.prefix(n)).lsp, "prefix of length {n}");
        }
    }
}
