//! LSP preservation for nonerasing endomorphisms.
//!
//! An endomorphism preserves the LSP property exactly when it belongs to
//! `ℒ*Perm ∪ 𝒫_LSP`: either a chain of `L_α` morphisms followed by a letter
//! permutation, or a morphism sending every letter to a power of one common
//! primitive word whose infinite repetition is LSP. The membership decision
//! here is purely syntactic (greedy peeling plus a root check); empirical
//! probing with [`find_counterexample`] is a separate cross-check and never
//! the decision.
//!
//! For morphisms between different alphabets only a necessary condition is
//! known: membership in `S_R-bLSP * 𝒰 ∪ 𝒫_LSP`, where `𝒰` holds the
//! morphisms whose images use every codomain letter at most once overall.
//! [`necessary_condition_cn`] implements that membership test without any
//! if-and-only-if claim.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::lsp::is_lsp;
use crate::morphisms::{enumerate_rblsp, Morphism};
use crate::words::{fixed_point_prefix, Alphabet, Letter, Word};
use crate::{Error, Result};

/// Shortest `v` with `u = v^k`; its length divides `|u|`.
pub fn primitive_root(u: &Word) -> Result<Word> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    let s = u.letters();
    let n = s.len();
    for p in 1..=n {
        if n % p == 0 && (p..n).all(|i| s[i] == s[i - p]) {
            return Ok(u.prefix(p));
        }
    }
    unreachable!("the full length always divides itself")
}

/// True when the periodic word `u^ω` is LSP, for primitive `u`.
///
/// Only factors of length at most `|u|` need checking: a longer factor of
/// `u^ω` occurs at a single phase (`u` being primitive, by Fine and Wilf),
/// so it extends uniquely to the left and cannot be left special. Each
/// length is scanned over all `|u|` phases inside the window `u³`.
pub fn periodic_word_is_lsp(u: &Word) -> Result<bool> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    if primitive_root(u)? != *u {
        return Err(Error::NotPrimitive);
    }
    let p = u.len();
    let mut window = Word::empty();
    for _ in 0..3 {
        window.extend_from(u);
    }
    let s = window.letters();
    for len in 1..=p {
        let mut preds: HashMap<&[Letter], u32> = HashMap::new();
        for phase in 0..p {
            let factor = &s[phase..phase + len];
            let pred = u.letters()[(phase + p - 1) % p];
            *preds.entry(factor).or_default() |= 1 << (pred - b'a');
        }
        for (factor, mask) in preds {
            if mask.count_ones() >= 2 && factor != &s[..len] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Decomposition of `f` as `L_{α₁} ∘ ⋯ ∘ L_{αₘ} ∘ π`, or `None`.
///
/// Peeling is greedy and needs no backtracking: the shared first letter of
/// the images, when it exists, is unique, and it is the only possible `α`.
/// Each peel parses every image into blocks `α` and `αβ` (β ≠ α), emitting
/// `α` and `β` respectively. A peel that does not shrink the total image
/// size means every image is a power of `α`; such a morphism is not in the
/// family (members' images end in pairwise distinct letters), so the search
/// stops rather than looping.
pub fn in_l_star_perm(f: &Morphism) -> Option<(Vec<Letter>, Morphism)> {
    let domain = f.domain();
    let mut peeled = Vec::new();
    let mut cur = f.clone();
    loop {
        if cur.images().all(|(_, w)| w.len() == 1) {
            let targets: BTreeSet<Letter> = cur.images().map(|(_, w)| w[0]).collect();
            return (targets == domain).then_some((peeled, cur));
        }
        let alpha = cur.first()?;
        let mut pairs = Vec::new();
        for (x, w) in cur.images() {
            let s = w.letters();
            let mut parsed = Vec::new();
            let mut i = 0;
            while i < s.len() {
                if s[i] != alpha {
                    return None;
                }
                if i + 1 < s.len() && s[i + 1] != alpha {
                    parsed.push(s[i + 1]);
                    i += 2;
                } else {
                    parsed.push(alpha);
                    i += 1;
                }
            }
            pairs.push((x, Word::from_raw(parsed)));
        }
        let g = Morphism::new(pairs).ok()?;
        if g.size() >= cur.size() {
            return None;
        }
        peeled.push(alpha);
        cur = g;
    }
}

/// The common primitive root when every image is a power of one primitive
/// word whose infinite repetition is LSP.
fn plsp_root(f: &Morphism) -> Result<Option<Word>> {
    let first_image = f.images().next().expect("morphisms have nonempty domains").1;
    let root = primitive_root(first_image)?;
    for (_, w) in f.images() {
        if w.len() % root.len() != 0
            || !w.letters().chunks(root.len()).all(|c| c == root.letters())
        {
            return Ok(None);
        }
    }
    if periodic_word_is_lsp(&root)? {
        Ok(Some(root))
    } else {
        Ok(None)
    }
}

/// Which preserving family an endomorphism belongs to, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `L_{α₁} ∘ ⋯ ∘ L_{αₘ} ∘ π` for a permutation `π`.
    LStarPerm {
        /// The peeled letters `α₁, …, αₘ`, outermost first.
        letters: Vec<Letter>,
        /// The final permutation.
        permutation: Morphism,
    },
    /// Every image is a power of `root`, with `root^ω` LSP.
    PLsp {
        /// The common primitive root.
        root: Word,
    },
    /// Outside both families: the morphism does not preserve LSP.
    Neither,
}

/// Verdict of [`preserves_lsp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationVerdict {
    /// True exactly when `membership` is not [`Membership::Neither`].
    pub preserves: bool,
    /// The family membership underlying the verdict.
    pub membership: Membership,
    /// For a non-preserver: an LSP probe prefix and a non-prefix left
    /// special factor of its image, when the search finds one.
    pub counterexample: Option<(Word, Word)>,
}

/// Decides whether the nonerasing endomorphism `f` preserves the LSP
/// property, by membership in `ℒ*Perm ∪ 𝒫_LSP`.
pub fn preserves_lsp(f: &Morphism) -> Result<PreservationVerdict> {
    if !f.is_endomorphism() {
        return Err(Error::NotEndomorphism);
    }
    if let Some((letters, permutation)) = in_l_star_perm(f) {
        return Ok(PreservationVerdict {
            preserves: true,
            membership: Membership::LStarPerm { letters, permutation },
            counterexample: None,
        });
    }
    if let Some(root) = plsp_root(f)? {
        return Ok(PreservationVerdict {
            preserves: true,
            membership: Membership::PLsp { root },
            counterexample: None,
        });
    }
    Ok(PreservationVerdict {
        preserves: false,
        membership: Membership::Neither,
        counterexample: find_counterexample(f),
    })
}

/// Probe stages: prefix length and whether the extended constructions are
/// included. Short prefixes go first because most failures show up within a
/// few dozen letters; the last stage adds iterated-`L` words at length 2000.
const PROBE_STAGES: [(usize, bool); 3] = [(60, false), (600, false), (2000, true)];

/// Searches for an LSP word whose image under `f` is not LSP.
///
/// Probes are LSP-word prefixes over the domain of `f`, in a fixed order:
/// unary words, fragility-carrying words (a path-shaped basis morphism
/// applied to a Tribonacci-style word, one per ordered letter triple),
/// Fibonacci-style words over each ordered letter pair, Tribonacci-style and
/// ξ-style words per ordered triple, and `L`-images of the pair words; a
/// final stage adds iterated `L`-images at longer length. Subset
/// constructions use at most the first four domain letters, so for larger
/// alphabets the search is best-effort: `None` means no counterexample was
/// found, never that `f` preserves.
pub fn find_counterexample(f: &Morphism) -> Option<(Word, Word)> {
    let domain = f.domain();
    for &(len, extended) in &PROBE_STAGES {
        for probe in probe_corpus(&domain, len, extended).iter() {
            let image = match f.apply(probe) {
                Ok(image) => image,
                Err(_) => continue,
            };
            let verdict = is_lsp(&image);
            if !verdict.lsp {
                return Some((probe.clone(), verdict.witness.expect("non-LSP has a witness")));
            }
        }
    }
    None
}

type CorpusKey = (Vec<Letter>, usize, bool);

fn probe_corpus(domain: &BTreeSet<Letter>, len: usize, extended: bool) -> Arc<Vec<Word>> {
    static CACHE: OnceLock<Mutex<HashMap<CorpusKey, Arc<Vec<Word>>>>> = OnceLock::new();
    let key: CorpusKey = (domain.iter().copied().collect(), len, extended);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("corpus cache").get(&key) {
        return hit.clone();
    }
    let built = Arc::new(build_corpus(&key.0, len, extended));
    cache
        .lock()
        .expect("corpus cache")
        .entry(key)
        .or_insert(built)
        .clone()
}

fn ordered_pairs(letters: &[Letter]) -> Vec<(Letter, Letter)> {
    let mut out = Vec::new();
    for &x in letters {
        for &y in letters {
            if x != y {
                out.push((x, y));
            }
        }
    }
    out
}

fn ordered_triples(letters: &[Letter]) -> Vec<(Letter, Letter, Letter)> {
    let mut out = Vec::new();
    for &x in letters {
        for &y in letters {
            for &z in letters {
                if x != y && x != z && y != z {
                    out.push((x, y, z));
                }
            }
        }
    }
    out
}

/// Fibonacci-style word over `{x, y}`: fixed point of `x ↦ xy, y ↦ x`.
fn pair_fibonacci(x: Letter, y: Letter, len: usize) -> Word {
    let f = Morphism::new([
        (x, Word::from_raw(vec![x, y])),
        (y, Word::single(x)),
    ])
    .expect("two distinct letters");
    fixed_point_prefix(&f, x, len).expect("the pair morphism grows from its seed")
}

/// Tribonacci-style word over `{x, y, z}`: fixed point of `L_x ∘ L_y ∘ L_z`.
fn triple_tribonacci(x: Letter, y: Letter, z: Letter, len: usize) -> Word {
    let alphabet = Alphabet::new([x, y, z]).expect("three distinct letters");
    let f = Morphism::compose(
        &Morphism::l(x, &alphabet).expect("member letter"),
        &Morphism::compose(
            &Morphism::l(y, &alphabet).expect("member letter"),
            &Morphism::l(z, &alphabet).expect("member letter"),
        )
        .expect("composable"),
    )
    .expect("composable");
    fixed_point_prefix(&f, x, len).expect("the composition grows from its seed")
}

/// ξ-style word: fixed point of `λ_{xyz} ∘ λ_{yzx} ∘ λ_{zxy}`.
fn triple_xi(x: Letter, y: Letter, z: Letter, len: usize) -> Word {
    let lam = |a: Letter, b: Letter, c: Letter| {
        Morphism::lambda(&Word::from_raw(vec![a, b, c])).expect("distinct letters")
    };
    let f = Morphism::compose(
        &lam(x, y, z),
        &Morphism::compose(&lam(y, z, x), &lam(z, x, y)).expect("composable"),
    )
    .expect("composable");
    fixed_point_prefix(&f, x, len).expect("the ξ composition grows from its seed")
}

/// Fragility-carrying probe: `λ_{xyz}` applied to the Tribonacci-style word
/// over the same letters. The result is LSP with an `(x, y, z)`-fragility.
fn fragile_probe(x: Letter, y: Letter, z: Letter, len: usize) -> Word {
    let lam = Morphism::lambda(&Word::from_raw(vec![x, y, z])).expect("distinct letters");
    lam.apply(&triple_tribonacci(x, y, z, len))
        .expect("letters stay inside the λ domain")
        .prefix(len)
}

fn build_corpus(domain: &[Letter], len: usize, extended: bool) -> Vec<Word> {
    // Pair and triple constructions are capped to the first four letters;
    // beyond that the corpus (and so the search) is best-effort.
    let capped: Vec<Letter> = domain.iter().copied().take(4).collect();
    let mut probes = Vec::new();
    for &x in domain {
        probes.push(Word::from_raw(vec![x; len]));
    }
    for (x, y, z) in ordered_triples(&capped) {
        probes.push(fragile_probe(x, y, z, len));
    }
    for (x, y) in ordered_pairs(&capped) {
        probes.push(pair_fibonacci(x, y, len));
    }
    for (x, y, z) in ordered_triples(&capped) {
        probes.push(triple_tribonacci(x, y, z, len));
    }
    for (x, y, z) in ordered_triples(&capped) {
        probes.push(triple_xi(x, y, z, len));
    }
    for (x, y) in ordered_pairs(&capped) {
        for &z in &capped {
            if z != x && z != y {
                let alphabet = Alphabet::new([x, y, z]).expect("distinct letters");
                let l = Morphism::l(z, &alphabet).expect("member letter");
                let probe = l
                    .apply(&pair_fibonacci(x, y, len))
                    .expect("pair letters are in the L domain")
                    .prefix(len);
                probes.push(probe);
            }
        }
    }
    if extended {
        for (x, y, z) in ordered_triples(&capped) {
            let alphabet = Alphabet::new([x, y, z]).expect("distinct letters");
            let l = Morphism::l(x, &alphabet).expect("member letter");
            let mut probe = triple_tribonacci(x, y, z, len);
            for _ in 0..8 {
                probe = l.apply(&probe).expect("endomorphism").prefix(len);
                probes.push(probe.clone());
            }
        }
    }
    probes
}

/// Necessary condition for LSP preservation by a morphism between possibly
/// different alphabets: membership in `S_R-bLSP * 𝒰 ∪ 𝒫_LSP`.
///
/// `𝒰` holds the morphisms whose images, concatenated, use every letter at
/// most once. The search peels R-bLSP morphisms over the codomain letters
/// from the outside (each peel factors every image over the candidate's
/// image code, which is unambiguous because the shared first letter marks
/// block starts); peels that do not shrink the total size are skipped, so
/// the recursion terminates. This is only necessary — a `true` answer does
/// not assert preservation.
pub fn necessary_condition_cn(f: &Morphism) -> Result<bool> {
    fn in_u(f: &Morphism) -> bool {
        let mut seen = BTreeSet::new();
        f.images()
            .flat_map(|(_, w)| w.letters().iter().copied())
            .all(|x| seen.insert(x))
    }
    fn peel(f: &Morphism, g: &Morphism) -> Option<Morphism> {
        let alpha = g.first()?;
        let mut pairs = Vec::new();
        for (x, w) in f.images() {
            let s = w.letters();
            if s.first() != Some(&alpha) {
                return None;
            }
            let mut parsed = Vec::new();
            let mut start = 0;
            for i in 1..=s.len() {
                if i == s.len() || s[i] == alpha {
                    let block = &s[start..i];
                    let letter = *block.last().expect("blocks are nonempty");
                    match g.image(letter) {
                        Some(image) if image.letters() == block => parsed.push(letter),
                        _ => return None,
                    }
                    start = i;
                }
            }
            pairs.push((x, Word::from_raw(parsed)));
        }
        Morphism::new(pairs).ok()
    }
    fn search(f: &Morphism, candidates: &[Morphism], memo: &mut HashSet<Morphism>) -> bool {
        if in_u(f) {
            return true;
        }
        if !memo.insert(f.clone()) {
            return false;
        }
        for g in candidates {
            if let Some(inner) = peel(f, g) {
                if inner.size() < f.size() && search(&inner, candidates, memo) {
                    return true;
                }
            }
        }
        false
    }
    if plsp_root(f)?.is_some() {
        return Ok(true);
    }
    let ambient = Alphabet::new(f.codomain())?;
    let candidates = enumerate_rblsp(&ambient)?;
    Ok(search(f, &candidates, &mut HashSet::new()))
}

/// Result of the exhaustive preservation sweep.
#[derive(Clone, Debug, Default)]
pub struct SweepOutcome {
    /// Number of endomorphisms examined.
    pub total: usize,
    /// Verdicts in the `ℒ*Perm` family.
    pub l_star_perm: usize,
    /// Verdicts in the `𝒫_LSP` family.
    pub p_lsp: usize,
    /// Verdicts outside both families.
    pub neither: usize,
    /// Preserving verdicts contradicted by a corpus failure (must be empty).
    pub preserving_corpus_failures: Vec<(Morphism, Word, Word)>,
    /// Non-preserving verdicts without a found counterexample (must be
    /// empty for the sweep to count as consistent).
    pub missing_counterexamples: Vec<Morphism>,
}

impl SweepOutcome {
    /// Number of preserving endomorphisms.
    pub fn preserving(&self) -> usize {
        self.l_star_perm + self.p_lsp
    }

    /// True when every verdict was confirmed empirically: no preserving
    /// morphism failed a probe, and every non-preserver has an explicit
    /// counterexample.
    pub fn consistent(&self) -> bool {
        self.preserving_corpus_failures.is_empty() && self.missing_counterexamples.is_empty()
    }
}

/// All nonempty words over `letters` of length at most `max_len`, shortest
/// first, lexicographic within a length.
fn words_up_to(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &x in letters {
                let mut e = w.clone();
                e.push(x);
                out.push(e.clone());
                next.push(e);
            }
        }
        frontier = next;
    }
    out
}

/// Sweeps every nonerasing endomorphism of `{a, b, c}` with image lengths at
/// most `max_image_len`, deciding preservation syntactically and
/// cross-checking each verdict empirically: preserving morphisms must pass
/// the whole probe corpus, and non-preservers must yield an explicit
/// counterexample.
pub fn sweep_ternary(max_image_len: usize) -> Result<SweepOutcome> {
    if max_image_len == 0 {
        return Err(Error::EmptyWord);
    }
    let letters = [b'a', b'b', b'c'];
    let images = words_up_to(&letters, max_image_len);
    let k = images.len();
    let total = k * k * k;

    enum Item {
        LStarPerm,
        PLsp,
        NeitherFound,
        NeitherMissing(Morphism),
        PreservingButFails(Morphism, Word, Word),
    }

    let items: Vec<Item> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let f = Morphism::new([
                (b'a', images[idx / (k * k)].clone()),
                (b'b', images[(idx / k) % k].clone()),
                (b'c', images[idx % k].clone()),
            ])
            .expect("three letters, nonempty images");
            let verdict = preserves_lsp(&f).expect("ternary endomorphisms are valid inputs");
            if verdict.preserves {
                if let Some((probe, witness)) = find_counterexample(&f) {
                    return Item::PreservingButFails(f, probe, witness);
                }
                match verdict.membership {
                    Membership::LStarPerm { .. } => Item::LStarPerm,
                    Membership::PLsp { .. } => Item::PLsp,
                    Membership::Neither => unreachable!("preserving verdicts have a family"),
                }
            } else if verdict.counterexample.is_some() {
                Item::NeitherFound
            } else {
                Item::NeitherMissing(f)
            }
        })
        .collect();

    let mut outcome = SweepOutcome { total, ..SweepOutcome::default() };
    for item in items {
        match item {
            Item::LStarPerm => outcome.l_star_perm += 1,
            Item::PLsp => outcome.p_lsp += 1,
            Item::NeitherFound => outcome.neither += 1,
            Item::NeitherMissing(f) => {
                outcome.neither += 1;
                outcome.missing_counterexamples.push(f);
            }
            Item::PreservingButFails(f, probe, witness) => {
                match preserves_lsp(&f).expect("already decided").membership {
                    Membership::LStarPerm { .. } => outcome.l_star_perm += 1,
                    Membership::PLsp { .. } => outcome.p_lsp += 1,
                    Membership::Neither => unreachable!(),
                }
                outcome.preserving_corpus_failures.push((f, probe, witness));
            }
        }
    }
    Ok(outcome)
}
