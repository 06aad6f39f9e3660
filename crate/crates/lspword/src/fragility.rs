//! Fragility triples: detection in finite words and the image calculus for
//! R-bLSP morphisms.
//!
//! A word has an `(a,b,c)`-fragility (for pairwise distinct letters) when
//! some word `u` satisfies: `ua` is a prefix, and `βub`, `γuc` are factors
//! for two distinct letters `β ≠ γ`. Because `ua` must be a prefix, the stem
//! `u` is itself a prefix, which the detector exploits. A triple is stored
//! canonically with `b < c`; swapping `b` and `c` (together with `β` and
//! `γ`) describes the same fragility.
//!
//! For an R-bLSP morphism the calculus answers two questions: which
//! fragilities the morphism creates by itself ([`associated_fragilities`]),
//! and what each existing fragility of the preimage becomes in the image
//! ([`classify`]). A morphism that *breaks* one of the preimage's
//! fragilities cannot map an LSP word carrying it to an LSP word;
//! [`frag_image`] returns `None` in that case.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use crate::morphisms::{is_breaking, Morphism};
use crate::words::{is_letter, Letter, Word};
use crate::{Error, Result};

/// A fragility type `(a, b, c)`: pairwise distinct letters, stored with
/// `b < c` since the roles of `b` and `c` are symmetric.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FragTriple {
    a: Letter,
    b: Letter,
    c: Letter,
}

impl FragTriple {
    /// Builds a canonical triple from pairwise distinct letters.
    pub fn new(a: Letter, b: Letter, c: Letter) -> Result<Self> {
        for x in [a, b, c] {
            if !is_letter(x) {
                return Err(Error::InvalidLetter(x as char));
            }
        }
        if a == b || a == c || b == c {
            return Err(Error::parse(
                "fragility triple",
                format!(
                    "letters must be pairwise distinct, got ({},{},{})",
                    a as char, b as char, c as char
                ),
            ));
        }
        let (b, c) = if b < c { (b, c) } else { (c, b) };
        Ok(FragTriple { a, b, c })
    }

    /// The distinguished letter `a` (the one following the stem).
    pub fn a(&self) -> Letter {
        self.a
    }

    /// The smaller of the two symmetric letters.
    pub fn b(&self) -> Letter {
        self.b
    }

    /// The larger of the two symmetric letters.
    pub fn c(&self) -> Letter {
        self.c
    }

    /// The three letters in `(a, b, c)` order.
    pub fn letters(&self) -> [Letter; 3] {
        [self.a, self.b, self.c]
    }
}

impl fmt::Display for FragTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a as char, self.b as char, self.c as char)
    }
}

impl fmt::Debug for FragTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FragTriple{self}")
    }
}

/// Evidence that a word carries a fragility: the stem `u` and the two
/// distinct predecessor letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragilityWitness {
    /// The fragility type.
    pub triple: FragTriple,
    /// The stem `u`: `u·a` is a prefix and `β·u·b`, `γ·u·c` are factors.
    pub stem: Word,
    /// Predecessor of the occurrence of `u·b`.
    pub beta: Letter,
    /// Predecessor of the occurrence of `u·c`, distinct from `beta`.
    pub gamma: Letter,
}

impl fmt::Display for FragilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} with stem \"{}\" via {},{}",
            self.triple, self.stem, self.beta as char, self.gamma as char
        )
    }
}

/// All fragility types of `w`, each with its shortest stem.
///
/// The result is sorted by triple; ties in evidence are broken
/// deterministically (shortest stem first, then smallest `β`, then smallest
/// `γ`).
pub fn fragility_triples(w: &Word) -> Vec<FragilityWitness> {
    fragility_triples_within(w, usize::MAX)
}

/// Like [`fragility_triples`], but only reports fragilities whose stem has
/// length at most `max_stem`.
pub fn fragility_triples_within(w: &Word, max_stem: usize) -> Vec<FragilityWitness> {
    let s = w.letters();
    let n = s.len();
    let mut found: BTreeMap<FragTriple, FragilityWitness> = BTreeMap::new();
    // Occurrence positions of the current stem; the stem is always a prefix
    // of w, so position 0 stays in the list throughout.
    let mut occs: Vec<usize> = (0..n).collect();
    let mut ell = 0usize;
    while ell < n && ell <= max_stem {
        let a = s[ell];
        // preds[x] = set of predecessors of occurrences of stem·x.
        let mut preds = [0u32; 26];
        for &i in &occs {
            if i >= 1 && i + ell < n {
                preds[(s[i + ell] - b'a') as usize] |= 1 << (s[i - 1] - b'a');
            }
        }
        for b in 0u8..26 {
            let mb = preds[b as usize];
            if mb == 0 || b + b'a' == a {
                continue;
            }
            for c in (b + 1)..26 {
                let mc = preds[c as usize];
                if mc == 0 || c + b'a' == a {
                    continue;
                }
                if (mb | mc).count_ones() < 2 {
                    continue;
                }
                let triple = FragTriple::new(a, b + b'a', c + b'a')
                    .expect("letters are distinct by construction");
                if !found.contains_key(&triple) {
                    let (beta, gamma) =
                        first_distinct_pair(mb, mc).expect("the union has two letters");
                    found.insert(
                        triple,
                        FragilityWitness { triple, stem: w.prefix(ell), beta, gamma },
                    );
                }
            }
        }
        occs.retain(|&i| i + ell < n && s[i + ell] == a);
        if occs.len() <= 1 {
            // Only the prefix occurrence remains; it has no predecessor, so
            // no longer stem can produce a fragility.
            break;
        }
        ell += 1;
    }
    found.into_values().collect()
}

/// Smallest `(β, γ)` in lexicographic order with `β` in the first mask, `γ`
/// in the second, and `β ≠ γ`.
fn first_distinct_pair(mask_b: u32, mask_c: u32) -> Option<(Letter, Letter)> {
    for beta in 0u8..26 {
        if mask_b & (1 << beta) == 0 {
            continue;
        }
        for gamma in 0u8..26 {
            if gamma != beta && mask_c & (1 << gamma) != 0 {
                return Some((beta + b'a', gamma + b'a'));
            }
        }
    }
    None
}

/// The fragilities an R-bLSP morphism creates in any image, regardless of
/// the preimage: all canonical `(α, b, c)` where `α` is the shared first
/// letter of the images and `b`, `c` are codomain letters with different
/// parents in the tree behind the morphism. Their stems are empty.
pub fn associated_fragilities(f: &Morphism) -> Result<BTreeSet<FragTriple>> {
    let (alpha, parent) = f.rblsp_parents().ok_or(Error::NotRblsp)?;
    let letters: Vec<Letter> = parent.keys().copied().collect();
    let mut out = BTreeSet::new();
    for (i, &b) in letters.iter().enumerate() {
        for &c in &letters[i + 1..] {
            if parent[&b] != parent[&c] {
                out.insert(FragTriple::new(alpha, b, c).expect("distinct letters"));
            }
        }
    }
    Ok(out)
}

/// What becomes of one preimage fragility under an R-bLSP morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// The morphism maps words carrying this fragility outside the LSP
    /// words: the images of `b` and `c` agree strictly longer than the
    /// images of `a` and `b`.
    Breaking,
    /// The fragility survives as the given triple of the image.
    Propagated(FragTriple),
    /// The fragility leaves no trace in the image.
    NotPropagated,
}

/// Classifies the fate of the fragility `t` under the R-bLSP morphism `f`.
///
/// For a non-breaking triple, the candidate image fragility is read off at
/// the first position where the `α`-extended images `f(a)α`, `f(b)α`,
/// `f(c)α` stop sharing a common prefix; none of the three is a prefix of
/// another, so all three have a letter there. The fragility propagates
/// exactly when those three letters are pairwise distinct.
pub fn classify(f: &Morphism, t: &FragTriple) -> Result<Classification> {
    let (alpha, _) = f.rblsp_parents().ok_or(Error::NotRblsp)?;
    if is_breaking(f, t)? {
        return Ok(Classification::Breaking);
    }
    let extended = |x: Letter| {
        let mut w = f.image(x).expect("checked by is_breaking").clone();
        w.push(alpha);
        w
    };
    let x = extended(t.a());
    let y = extended(t.b());
    let z = extended(t.c());
    let p = (0..x.len().min(y.len()).min(z.len()))
        .take_while(|&i| x[i] == y[i] && x[i] == z[i])
        .count();
    let (xa, yb, zc) = (x[p], y[p], z[p]);
    if xa != yb && xa != zc && yb != zc {
        Ok(Classification::Propagated(
            FragTriple::new(xa, yb, zc).expect("pairwise distinct"),
        ))
    } else {
        Ok(Classification::NotPropagated)
    }
}

/// The fragility set of the image of a word whose fragility set is `frag`,
/// under the R-bLSP morphism `f`: the morphism's own associated fragilities
/// plus every propagated triple. Returns `None` when `f` breaks one of the
/// triples in `frag` (no LSP image is possible then).
pub fn frag_image(
    f: &Morphism,
    frag: &BTreeSet<FragTriple>,
) -> Result<Option<BTreeSet<FragTriple>>> {
    let mut out = associated_fragilities(f)?;
    for t in frag {
        match classify(f, t)? {
            Classification::Breaking => return Ok(None),
            Classification::Propagated(t2) => {
                out.insert(t2);
            }
            Classification::NotPropagated => {}
        }
    }
    Ok(Some(out))
}
