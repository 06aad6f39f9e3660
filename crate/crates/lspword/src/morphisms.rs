//! Nonerasing morphisms between free monoids.
//!
//! Besides the generic machinery (application, composition, bracket
//! notation), this module implements the basis morphisms of LSP theory.
//! A *bLSP morphism* over an alphabet `A` is an endomorphism whose images
//! spell the root-to-vertex paths of a rooted tree labeled by `A`; an
//! *R-bLSP morphism* is the restriction of a bLSP morphism to a subset of
//! its domain, with the codomain shrunk to the letters actually produced.
//! Those families drive the fragility calculus and the directive-word
//! machinery in the rest of the crate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::fragility::FragTriple;
use crate::words::{is_letter, Alphabet, Letter, Word};
use crate::{Error, Result, MAX_ENUM_ALPHABET};

/// A nonerasing morphism, stored as the map from domain letters to images.
///
/// Equality, ordering, and hashing all derive from that map; the codomain is
/// always recomputed from the images.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    images: BTreeMap<Letter, Word>,
}

impl Morphism {
    /// Builds a morphism from `(letter, image)` pairs.
    ///
    /// Every image must be nonempty, domain letters must be distinct, and at
    /// least one pair is required.
    pub fn new(pairs: impl IntoIterator<Item = (Letter, Word)>) -> Result<Self> {
        let mut images = BTreeMap::new();
        for (x, w) in pairs {
            if !is_letter(x) {
                return Err(Error::InvalidLetter(x as char));
            }
            if w.is_empty() {
                return Err(Error::EmptyWord);
            }
            if images.insert(x, w).is_some() {
                return Err(Error::DuplicateLetter(x as char));
            }
        }
        if images.is_empty() {
            return Err(Error::EmptyDomain);
        }
        Ok(Morphism { images })
    }

    /// The identity on `alphabet`.
    pub fn identity(alphabet: &Alphabet) -> Result<Self> {
        Morphism::new(alphabet.letters().iter().map(|&x| (x, Word::single(x))))
    }

    /// The morphism `L_α` on `alphabet`: `α ↦ α` and `β ↦ αβ` for `β ≠ α`.
    pub fn l(alpha: Letter, alphabet: &Alphabet) -> Result<Self> {
        if !alphabet.contains(alpha) {
            return Err(Error::LetterOutsideDomain(alpha as char));
        }
        Morphism::new(alphabet.letters().iter().map(|&x| {
            let image = if x == alpha {
                Word::single(alpha)
            } else {
                Word::from_raw(vec![alpha, x])
            };
            (x, image)
        }))
    }

    /// The morphism `λ_{a₁⋯aₖ}`: it sends `aᵢ` to the prefix `a₁⋯aᵢ`.
    ///
    /// `order` must list distinct letters; they form the domain.
    pub fn lambda(order: &Word) -> Result<Self> {
        if order.alphabet().len() != order.len() {
            return Err(Error::parse("lambda order", format!("repeated letter in {order}")));
        }
        Morphism::new(
            order
                .letters()
                .iter()
                .enumerate()
                .map(|(i, &x)| (x, order.prefix(i + 1))),
        )
    }

    /// A permutation morphism from `(letter, letter)` pairs.
    pub fn perm(pairs: &[(Letter, Letter)]) -> Result<Self> {
        let f = Morphism::new(pairs.iter().map(|&(x, y)| (x, Word::single(y))))?;
        let targets: BTreeSet<Letter> = pairs.iter().map(|&(_, y)| y).collect();
        if targets != f.domain() {
            return Err(Error::NotPermutation);
        }
        Ok(f)
    }

    /// The composition `outer ∘ inner` (first `inner`, then `outer`).
    pub fn compose(outer: &Morphism, inner: &Morphism) -> Result<Self> {
        let pairs = inner
            .images
            .iter()
            .map(|(&x, w)| Ok((x, outer.apply(w)?)))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(pairs)
    }

    /// The restriction to a nonempty subset of the domain.
    pub fn restrict(&self, keep: &BTreeSet<Letter>) -> Result<Self> {
        for &x in keep {
            if !self.images.contains_key(&x) {
                return Err(Error::LetterOutsideDomain(x as char));
            }
        }
        Morphism::new(keep.iter().map(|&x| (x, self.images[&x].clone())))
    }

    /// The set of letters with an image.
    pub fn domain(&self) -> BTreeSet<Letter> {
        self.images.keys().copied().collect()
    }

    /// The set of letters occurring in some image.
    pub fn codomain(&self) -> BTreeSet<Letter> {
        self.images.values().flat_map(|w| w.alphabet()).collect()
    }

    /// The image of one letter.
    pub fn image(&self, x: Letter) -> Option<&Word> {
        self.images.get(&x)
    }

    /// Iterates over `(letter, image)` pairs in letter order.
    pub fn images(&self) -> impl Iterator<Item = (Letter, &Word)> {
        self.images.iter().map(|(&x, w)| (x, w))
    }

    /// Applies the morphism to a word.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Vec::with_capacity(w.len());
        for &x in w.letters() {
            let image = self
                .image(x)
                .ok_or(Error::LetterOutsideDomain(x as char))?;
            out.extend_from_slice(image.letters());
        }
        Ok(Word::from_raw(out))
    }

    /// Applies the morphism, truncating the output to `cap` letters.
    ///
    /// Input letters that can no longer contribute to the truncated output
    /// are not inspected.
    pub fn apply_capped(&self, w: &Word, cap: usize) -> Result<Word> {
        let mut out = Vec::with_capacity(cap.min(4 * w.len() + 4));
        for &x in w.letters() {
            if out.len() >= cap {
                break;
            }
            let image = self
                .image(x)
                .ok_or(Error::LetterOutsideDomain(x as char))?;
            out.extend_from_slice(image.letters());
        }
        out.truncate(cap);
        Ok(Word::from_raw(out))
    }

    /// The first letter shared by every image, if there is one.
    pub fn first(&self) -> Option<Letter> {
        let alpha = self.images.values().next()?.first()?;
        self.images
            .values()
            .all(|w| w.first() == Some(alpha))
            .then_some(alpha)
    }

    /// Total length of all images.
    pub fn size(&self) -> usize {
        self.images.values().map(Word::len).sum()
    }

    /// Length of the longest image.
    pub fn max_image_len(&self) -> usize {
        self.images.values().map(Word::len).max().unwrap_or(0)
    }

    /// True when every image stays inside the domain alphabet.
    pub fn is_endomorphism(&self) -> bool {
        self.codomain().is_subset(&self.domain())
    }

    /// Root letter and parent map of the tree behind an R-bLSP morphism,
    /// or `None` when the morphism is not R-bLSP.
    ///
    /// The returned map assigns a parent to every non-root codomain letter.
    pub(crate) fn rblsp_parents(&self) -> Option<(Letter, BTreeMap<Letter, Letter>)> {
        let alpha = self.first()?;
        let mut parent: BTreeMap<Letter, Letter> = BTreeMap::new();
        for (x, w) in &self.images {
            // The shared first letter must occur exactly once per image, and
            // each image must end with its own preimage letter.
            if w.letters().iter().filter(|&&y| y == alpha).count() != 1 {
                return None;
            }
            if w.last() != Some(*x) {
                return None;
            }
            for pair in w.letters().windows(2) {
                match parent.insert(pair[1], pair[0]) {
                    Some(prev) if prev != pair[0] => return None,
                    _ => {}
                }
            }
        }
        // Consistency forces every letter to occur at most once per image, so
        // each image spells the root-to-vertex path of the tree assembled
        // above; no separate acyclicity check is needed.
        Some((alpha, parent))
    }

    /// True when the morphism is the restriction of some bLSP morphism, with
    /// its codomain shrunk to the letters actually produced.
    pub fn is_rblsp(&self) -> bool {
        self.rblsp_parents().is_some()
    }

    /// True when the images spell the root-to-vertex paths of a rooted tree
    /// on the whole domain (the bLSP property).
    pub fn is_blsp(&self) -> bool {
        self.is_rblsp() && self.codomain() == self.domain()
    }

    /// The rooted tree whose root-to-vertex paths the images spell.
    pub fn to_tree(&self) -> Result<RootedTree> {
        if !self.is_blsp() {
            return Err(Error::NotBlsp);
        }
        let (root, parent) = self.rblsp_parents().expect("checked by is_blsp");
        RootedTree::new(root, parent)
    }

    /// The bLSP morphism of a rooted tree: each vertex maps to the word
    /// spelled along the path from the root to it.
    pub fn from_tree(tree: &RootedTree) -> Self {
        let images = tree
            .vertices()
            .into_iter()
            .map(|v| {
                let path = tree.path_from_root(v).expect("vertex of the same tree");
                (v, path)
            })
            .collect();
        Morphism { images }
    }

    /// Bracket notation with one slot per letter of `ambient`, `-` marking
    /// letters outside the domain.
    pub fn to_bracket(&self, ambient: &Alphabet) -> Result<String> {
        for &x in self.images.keys() {
            if !ambient.contains(x) {
                return Err(Error::LetterOutsideDomain(x as char));
            }
        }
        let slots: Vec<String> = ambient
            .letters()
            .iter()
            .map(|&x| match self.image(x) {
                Some(w) => w.to_string(),
                None => "-".to_string(),
            })
            .collect();
        Ok(format!("[{}]", slots.join(",")))
    }

    /// Parses bracket notation such as `[a,ab]` or `[ba,-]`.
    ///
    /// With an explicit `ambient` alphabet the slots follow its order.
    /// Without one, the slots are matched to the letters occurring in the
    /// images, in sorted order, which requires the slot count to equal the
    /// number of distinct letters used.
    pub fn parse_bracket(s: &str, ambient: Option<&Alphabet>) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse("morphism", format!("expected [image,…], got {s:?}")))?;
        let mut slots: Vec<Option<Word>> = Vec::new();
        for token in inner.split(',') {
            let token = token.trim();
            match token {
                "-" => slots.push(None),
                "" => {
                    return Err(Error::parse("morphism", format!("empty image slot in {s:?}")))
                }
                _ => slots.push(Some(token.parse()?)),
            }
        }
        let letters: Vec<Letter> = match ambient {
            Some(a) => {
                if a.len() != slots.len() {
                    return Err(Error::parse(
                        "morphism",
                        format!("{} slots for alphabet {a}", slots.len()),
                    ));
                }
                a.letters().to_vec()
            }
            None => {
                let used: BTreeSet<Letter> = slots
                    .iter()
                    .flatten()
                    .flat_map(|w| w.alphabet())
                    .collect();
                if used.len() != slots.len() {
                    return Err(Error::parse(
                        "morphism",
                        format!(
                            "{} slots but {} distinct letters; pass an explicit alphabet",
                            slots.len(),
                            used.len()
                        ),
                    ));
                }
                used.into_iter().collect()
            }
        };
        Morphism::new(
            letters
                .into_iter()
                .zip(slots)
                .filter_map(|(x, slot)| slot.map(|w| (x, w))),
        )
    }
}

impl FromStr for Morphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Morphism::parse_bracket(s, None)
    }
}

impl fmt::Display for Morphism {
    /// Bracket notation over the sorted union of domain and codomain.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut union = self.domain();
        union.extend(self.codomain());
        let ambient = Alphabet::new(union).expect("letters are validated at construction");
        let text = self
            .to_bracket(&ambient)
            .expect("the domain is inside the union");
        write!(f, "{text}")
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({self})")
    }
}

/// A rooted tree on a set of letters, stored as a parent map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: Letter,
    parent: BTreeMap<Letter, Letter>,
}

impl RootedTree {
    /// Builds a tree, checking that every parent is a vertex and that every
    /// vertex reaches the root.
    pub fn new(root: Letter, parent: BTreeMap<Letter, Letter>) -> Result<Self> {
        if !is_letter(root) {
            return Err(Error::InvalidLetter(root as char));
        }
        let mut vertices: BTreeSet<Letter> = parent.keys().copied().collect();
        vertices.insert(root);
        if parent.contains_key(&root) {
            return Err(Error::parse("rooted tree", format!("root {} has a parent", root as char)));
        }
        for (&child, &par) in &parent {
            if !is_letter(child) {
                return Err(Error::InvalidLetter(child as char));
            }
            if !vertices.contains(&par) {
                return Err(Error::parse(
                    "rooted tree",
                    format!("parent {} is not a vertex", par as char),
                ));
            }
        }
        let tree = RootedTree { root, parent };
        for &v in &vertices {
            if tree.walk_to_root(v).is_none() {
                return Err(Error::parse(
                    "rooted tree",
                    format!("vertex {} does not reach the root", v as char),
                ));
            }
        }
        Ok(tree)
    }

    /// The root letter.
    pub fn root(&self) -> Letter {
        self.root
    }

    /// All vertices (the root plus every child in the parent map).
    pub fn vertices(&self) -> BTreeSet<Letter> {
        let mut v: BTreeSet<Letter> = self.parent.keys().copied().collect();
        v.insert(self.root);
        v
    }

    /// The parent of `v`, or `None` for the root or a non-vertex.
    pub fn parent_of(&self, v: Letter) -> Option<Letter> {
        self.parent.get(&v).copied()
    }

    /// Path from `v` up to the root, or `None` if a cycle or missing parent
    /// prevents reaching it within the vertex count.
    fn walk_to_root(&self, v: Letter) -> Option<Vec<Letter>> {
        let bound = self.parent.len() + 1;
        let mut path = vec![v];
        let mut cur = v;
        while cur != self.root {
            cur = *self.parent.get(&cur)?;
            path.push(cur);
            if path.len() > bound {
                return None;
            }
        }
        Some(path)
    }

    /// The word spelled from the root down to `v`, both endpoints included.
    pub fn path_from_root(&self, v: Letter) -> Result<Word> {
        if v != self.root && !self.parent.contains_key(&v) {
            return Err(Error::LetterOutsideDomain(v as char));
        }
        let mut path = self
            .walk_to_root(v)
            .expect("validated tree reaches its root");
        path.reverse();
        Ok(Word::from_raw(path))
    }
}

/// All bLSP morphisms over `alphabet`, i.e. one per rooted tree on its
/// letters. There are `k^(k-1)` of them for `k` letters.
pub fn enumerate_blsp(alphabet: &Alphabet) -> Result<Vec<Morphism>> {
    let k = alphabet.len();
    if k == 0 {
        return Err(Error::EmptyDomain);
    }
    if k > MAX_ENUM_ALPHABET {
        return Err(Error::AlphabetTooLarge(k, MAX_ENUM_ALPHABET));
    }
    let mut letters: Vec<Letter> = alphabet.letters().to_vec();
    letters.sort_unstable();
    let mut out = Vec::new();
    for &root in &letters {
        let others: Vec<Letter> = letters.iter().copied().filter(|&x| x != root).collect();
        let mut idx = vec![0usize; others.len()];
        let mut exhausted = false;
        while !exhausted {
            let parent: BTreeMap<Letter, Letter> = others
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, letters[idx[i]]))
                .collect();
            // Cyclic parent assignments fail tree validation and are skipped.
            if let Ok(tree) = RootedTree::new(root, parent) {
                out.push(Morphism::from_tree(&tree));
            }
            exhausted = true;
            for i in (0..idx.len()).rev() {
                idx[i] += 1;
                if idx[i] < k {
                    exhausted = false;
                    break;
                }
                idx[i] = 0;
            }
        }
    }
    Ok(out)
}

/// All R-bLSP morphisms over `alphabet`: restrictions of bLSP morphisms to
/// every nonempty subset of the domain, without duplicates, in sorted order.
pub fn enumerate_rblsp(alphabet: &Alphabet) -> Result<Vec<Morphism>> {
    let base = enumerate_blsp(alphabet)?;
    let mut letters: Vec<Letter> = alphabet.letters().to_vec();
    letters.sort_unstable();
    let mut seen = BTreeSet::new();
    for g in &base {
        for mask in 1u32..(1 << letters.len()) {
            let subset: BTreeSet<Letter> = letters
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask & (1 << i) != 0)
                .map(|(_, &x)| x)
                .collect();
            seen.insert(g.restrict(&subset)?);
        }
    }
    Ok(seen.into_iter().collect())
}

fn lcp_len(u: &Word, v: &Word) -> usize {
    u.letters()
        .iter()
        .zip(v.letters())
        .take_while(|(x, y)| x == y)
        .count()
}

/// True when `f` breaks the fragility triple `(a, b, c)`: the images of `b`
/// and `c` agree on a strictly longer prefix than the images of `a` and `b`
/// do. The comparison is symmetric in `b` and `c`.
pub fn is_breaking(f: &Morphism, t: &FragTriple) -> Result<bool> {
    let (a, b, c) = (t.a(), t.b(), t.c());
    for x in [a, b, c] {
        if f.image(x).is_none() {
            return Err(Error::TripleOutsideDomain);
        }
    }
    let fa = f.image(a).expect("checked");
    let fb = f.image(b).expect("checked");
    let fc = f.image(c).expect("checked");
    Ok(lcp_len(fb, fc) > lcp_len(fa, fb))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn m(s: &str) -> Morphism {
        s.parse().unwrap()
    }

    fn abc() -> Alphabet {
        "abc".parse().unwrap()
    }

    #[test]
    fn bracket_roundtrip() {
        for text in ["[a,ab]", "[ba,b]", "[ba,-]", "[-,ab]", "[a]", "[bca,-,-]", "[a,ab,abc]"] {
            let f = m(text);
            assert_eq!(f.to_string(), text, "roundtrip of {text}");
        }
    }

    #[test]
    fn bracket_needs_alphabet_when_slots_are_ambiguous() {
        assert!("[ba]".parse::<Morphism>().is_err());
        let f = Morphism::parse_bracket("[ba,-]", Some(&"ab".parse().unwrap())).unwrap();
        assert_eq!(f.image(b'a'), Some(&w("ba")));
        assert_eq!(f.image(b'b'), None);
    }

    #[test]
    fn lambda_images_follow_the_order_word() {
        assert_eq!(Morphism::lambda(&w("abc")).unwrap().to_string(), "[a,ab,abc]");
        assert_eq!(Morphism::lambda(&w("acb")).unwrap().to_string(), "[a,acb,ac]");
        assert_eq!(Morphism::lambda(&w("bac")).unwrap().to_string(), "[ba,b,bac]");
        assert_eq!(Morphism::lambda(&w("bca")).unwrap().to_string(), "[bca,b,bc]");
        assert_eq!(Morphism::lambda(&w("cab")).unwrap().to_string(), "[ca,cab,c]");
        assert_eq!(Morphism::lambda(&w("cba")).unwrap().to_string(), "[cba,cb,c]");
    }

    #[test]
    fn l_morphism_images() {
        assert_eq!(Morphism::l(b'a', &abc()).unwrap().to_string(), "[a,ab,ac]");
        assert_eq!(Morphism::l(b'b', &abc()).unwrap().to_string(), "[ba,b,bc]");
        assert_eq!(Morphism::l(b'c', &abc()).unwrap().to_string(), "[ca,cb,c]");
    }

    #[test]
    fn composition_of_three_lambdas() {
        let f = Morphism::compose(
            &Morphism::lambda(&w("abc")).unwrap(),
            &Morphism::compose(
                &Morphism::lambda(&w("bca")).unwrap(),
                &Morphism::lambda(&w("cab")).unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(f.image(b'a'), Some(&w("ababcababca")));
        assert_eq!(f.image(b'b'), Some(&w("ababcababcaab")));
        assert_eq!(f.image(b'c'), Some(&w("ababc")));
    }

    #[test]
    fn blsp_counts_match_rooted_tree_counts() {
        // k^(k-1) rooted labeled trees on k vertices.
        for (k, count) in [(1, 1), (2, 2), (3, 9), (4, 64), (5, 625), (6, 7776)] {
            let alphabet = Alphabet::first_n(k).unwrap();
            assert_eq!(enumerate_blsp(&alphabet).unwrap().len(), count, "k = {k}");
        }
        assert!(matches!(
            enumerate_blsp(&Alphabet::first_n(7).unwrap()),
            Err(Error::AlphabetTooLarge(7, _))
        ));
    }

    #[test]
    fn binary_rblsp_family() {
        let all = enumerate_rblsp(&"ab".parse().unwrap()).unwrap();
        let texts: Vec<String> = all.iter().map(|f| f.to_string()).collect();
        assert_eq!(texts, ["[a]", "[ba,-]", "[-,ab]", "[-,b]", "[a,ab]", "[ba,b]"]);
    }

    #[test]
    fn ternary_rblsp_count() {
        // 15 singleton-domain + 21 pair-domain + 9 full-domain restrictions.
        assert_eq!(enumerate_rblsp(&abc()).unwrap().len(), 45);
    }

    #[test]
    fn rblsp_detection() {
        for good in ["[a,ab]", "[ba,b]", "[bca,-,-]", "[ca,cab,c]", "[-,ab]", "[a]"] {
            assert!(m(good).is_rblsp(), "{good} is R-bLSP");
        }
        // Image not ending in its own letter; two occurrences of the shared
        // first letter; no shared first letter; inconsistent parents.
        for bad in ["[ab,-]", "[aba,-]", "[a,ba]", "[ab,abcacb,abc]"] {
            assert!(!m(bad).is_rblsp(), "{bad} is not R-bLSP");
        }
    }

    #[test]
    fn blsp_needs_full_codomain() {
        assert!(m("[a,ab]").is_blsp());
        assert!(m("[ba,b]").is_blsp());
        assert!(!m("[ba,-]").is_blsp());
        assert!(!m("[a,ab,-]").is_blsp());
    }

    #[test]
    fn tree_correspondence_roundtrips() {
        for k in 1..=4 {
            let alphabet = Alphabet::first_n(k).unwrap();
            for f in enumerate_blsp(&alphabet).unwrap() {
                let tree = f.to_tree().unwrap();
                assert_eq!(Morphism::from_tree(&tree), f);
            }
        }
    }

    #[test]
    fn tree_of_lambda_is_a_path() {
        let tree = Morphism::lambda(&w("bca")).unwrap().to_tree().unwrap();
        assert_eq!(tree.root(), b'b');
        assert_eq!(tree.parent_of(b'c'), Some(b'b'));
        assert_eq!(tree.parent_of(b'a'), Some(b'c'));
        assert_eq!(tree.path_from_root(b'a').unwrap(), w("bca"));
    }

    #[test]
    fn cyclic_parent_maps_are_rejected() {
        let parent = BTreeMap::from([(b'b', b'c'), (b'c', b'b')]);
        assert!(RootedTree::new(b'a', parent).is_err());
    }

    #[test]
    fn breaking_reference_values() {
        let t = FragTriple::new(b'a', b'b', b'c').unwrap();
        assert!(is_breaking(&Morphism::lambda(&w("acb")).unwrap(), &t).unwrap());
        assert!(is_breaking(&Morphism::lambda(&w("abc")).unwrap(), &t).unwrap());
        assert!(!is_breaking(&Morphism::l(b'a', &abc()).unwrap(), &t).unwrap());
        assert!(!is_breaking(&Morphism::l(b'b', &abc()).unwrap(), &t).unwrap());
        assert_eq!(
            is_breaking(&m("[a,ab]"), &t),
            Err(Error::TripleOutsideDomain)
        );
    }

    #[test]
    fn apply_and_cap() {
        let f = m("[ab,a]");
        assert_eq!(f.apply(&w("aba")).unwrap(), w("abaab"));
        assert_eq!(f.apply_capped(&w("aba"), 4).unwrap(), w("abaa"));
        assert_eq!(
            f.apply(&w("abc")).unwrap_err(),
            Error::LetterOutsideDomain('c')
        );
    }

    #[test]
    fn first_and_size() {
        assert_eq!(m("[a,ab]").first(), Some(b'a'));
        assert_eq!(m("[ab,a]").first(), Some(b'a'));
        assert_eq!(m("[a,ba]").first(), None);
        assert_eq!(m("[a,ab,abc]").size(), 6);
    }

    #[test]
    fn permutations_are_validated() {
        let pi = Morphism::perm(&[(b'a', b'b'), (b'b', b'c'), (b'c', b'a')]).unwrap();
        assert_eq!(pi.apply(&w("abc")).unwrap(), w("bca"));
        assert_eq!(
            Morphism::perm(&[(b'a', b'b'), (b'b', b'b')]),
            Err(Error::NotPermutation)
        );
    }

    #[test]
    fn restriction_keeps_selected_images() {
        let g = m("[ba,b]");
        let r = g.restrict(&BTreeSet::from([b'a'])).unwrap();
        assert_eq!(r.to_string(), "[ba,-]");
        assert_eq!(r.codomain(), BTreeSet::from([b'a', b'b']));
    }
}
