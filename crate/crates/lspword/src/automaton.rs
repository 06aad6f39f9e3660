//! The fragility-transition automaton over a fixed ambient alphabet.
//!
//! States pair a subalphabet with a set of fragility triples over it; the
//! labels are all R-bLSP morphisms over the ambient alphabet. A transition
//! `q --f--> q'` exists when the domain of `f` is exactly the subalphabet of
//! `q` and `f` breaks none of the fragilities of `q`; then `q'` carries the
//! codomain of `f` and the image fragility set. A directive word is accepted
//! when an infinite run through the automaton matches its morphisms from the
//! outermost inward, which [`recognize`] decides with a greatest-fixpoint
//! computation over the eventual period.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::fragility::{frag_image, FragTriple};
use crate::morphisms::{enumerate_rblsp, Morphism};
use crate::sadic::DirectiveWord;
use crate::words::{Alphabet, Letter};
use crate::{Error, Result, MAX_AUTOMATON_ALPHABET};

/// A state: a subalphabet together with the fragility triples carried over
/// it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AutomatonState {
    /// The letters of the words this state describes.
    pub alphabet: BTreeSet<Letter>,
    /// The fragility types those words carry.
    pub frag: BTreeSet<FragTriple>,
}

impl AutomatonState {
    /// Builds a state, checking that every triple stays inside the
    /// subalphabet.
    pub fn new(alphabet: BTreeSet<Letter>, frag: BTreeSet<FragTriple>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::EmptyDomain);
        }
        for t in &frag {
            if t.letters().iter().any(|x| !alphabet.contains(x)) {
                return Err(Error::TripleOutsideDomain);
            }
        }
        Ok(AutomatonState { alphabet, frag })
    }

    /// A fragility-free state over `alphabet`.
    pub fn fragility_free(alphabet: BTreeSet<Letter>) -> Result<Self> {
        AutomatonState::new(alphabet, BTreeSet::new())
    }

    /// When the fragility set consists of all canonical triples led by one
    /// letter `x` (one per pair of the remaining letters), returns `x`.
    pub fn type_letter(&self) -> Option<Letter> {
        let x = self.frag.iter().next()?.a();
        let others: Vec<Letter> = self
            .alphabet
            .iter()
            .copied()
            .filter(|&y| y != x)
            .collect();
        let mut expected = BTreeSet::new();
        for (i, &b) in others.iter().enumerate() {
            for &c in &others[i + 1..] {
                expected.insert(FragTriple::new(x, b, c).ok()?);
            }
        }
        (self.frag == expected).then_some(x)
    }

    /// Short description of the fragility component.
    pub fn frag_summary(&self) -> String {
        if self.frag.is_empty() {
            "∅".to_string()
        } else if let Some(x) = self.type_letter() {
            format!("type {}", x as char)
        } else {
            self.frag
                .iter()
                .map(FragTriple::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl fmt::Display for AutomatonState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{")?;
        for &x in &self.alphabet {
            write!(f, "{}", x as char)?;
        }
        write!(f, "}}, {})", self.frag_summary())
    }
}

/// Transition target for state `q` under the R-bLSP morphism `f`, if any.
///
/// `Ok(None)` means no edge: the domain of `f` differs from the subalphabet
/// of `q`, or `f` breaks one of its fragilities. A non-R-bLSP morphism is an
/// error rather than a missing edge.
pub fn transition(q: &AutomatonState, f: &Morphism) -> Result<Option<AutomatonState>> {
    if !f.is_rblsp() {
        return Err(Error::NotRblsp);
    }
    if f.domain() != q.alphabet {
        return Ok(None);
    }
    match frag_image(f, &q.frag)? {
        None => Ok(None),
        Some(frag) => Ok(Some(AutomatonState::new(f.codomain(), frag)?)),
    }
}

/// The fragility-transition automaton: every reachable state, every R-bLSP
/// label, and the transition table.
pub struct Automaton {
    alphabet: Alphabet,
    states: Vec<AutomatonState>,
    labels: Vec<Morphism>,
    delta: BTreeMap<(usize, usize), usize>,
}

impl Automaton {
    /// The ambient alphabet.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// States in construction order: the fragility-free seeds (one per
    /// nonempty subalphabet), then discovered states in search order.
    pub fn states(&self) -> &[AutomatonState] {
        &self.states
    }

    /// All R-bLSP morphisms over the ambient alphabet, sorted.
    pub fn labels(&self) -> &[Morphism] {
        &self.labels
    }

    /// Index of a state.
    pub fn state_index(&self, q: &AutomatonState) -> Option<usize> {
        self.states.iter().position(|s| s == q)
    }

    /// Index of a label morphism.
    pub fn label_index(&self, f: &Morphism) -> Option<usize> {
        self.labels.binary_search(f).ok()
    }

    /// Transition by state and label index.
    pub fn step_by_index(&self, state: usize, label: usize) -> Option<usize> {
        self.delta.get(&(state, label)).copied()
    }

    /// Transition by state index and morphism.
    pub fn step(&self, state: usize, f: &Morphism) -> Option<usize> {
        self.step_by_index(state, self.label_index(f)?)
    }

    /// All transitions `(from, label, to)` in deterministic order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, &Morphism, usize)> {
        self.delta
            .iter()
            .map(move |(&(q, l), &t)| (q, &self.labels[l], t))
    }

    /// Number of transitions.
    pub fn transition_count(&self) -> usize {
        self.delta.len()
    }
}

/// Builds the automaton over `alphabet` by closure from the fragility-free
/// seed states, one per nonempty subalphabet.
pub fn build(alphabet: &Alphabet) -> Result<Automaton> {
    let k = alphabet.len();
    if k == 0 {
        return Err(Error::EmptyDomain);
    }
    if k > MAX_AUTOMATON_ALPHABET {
        return Err(Error::AlphabetTooLarge(k, MAX_AUTOMATON_ALPHABET));
    }
    let labels = enumerate_rblsp(alphabet)?;
    let mut sorted: Vec<Letter> = alphabet.letters().to_vec();
    sorted.sort_unstable();

    let mut states: Vec<AutomatonState> = Vec::new();
    let mut index: HashMap<AutomatonState, usize> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for mask in 1u32..(1 << k) {
        let subset: BTreeSet<Letter> = sorted
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &x)| x)
            .collect();
        let seed = AutomatonState::fragility_free(subset)?;
        index.insert(seed.clone(), states.len());
        queue.push_back(states.len());
        states.push(seed);
    }

    let mut delta = BTreeMap::new();
    while let Some(qi) = queue.pop_front() {
        for (li, f) in labels.iter().enumerate() {
            let q = states[qi].clone();
            if let Some(target) = transition(&q, f)? {
                let ti = match index.get(&target) {
                    Some(&ti) => ti,
                    None => {
                        let ti = states.len();
                        index.insert(target.clone(), ti);
                        states.push(target);
                        queue.push_back(ti);
                        ti
                    }
                };
                delta.insert((qi, li), ti);
            }
        }
    }
    Ok(Automaton {
        alphabet: alphabet.clone(),
        states,
        labels,
        delta,
    })
}

/// Start states from which the automaton accepts the directive word `d`.
///
/// A run consumes the directive from the outermost morphism inward, so the
/// period is folded right to left: `Φ(q) = δ(…δ(q, r_p)…, r_1)` for the
/// period `r_1 ⋯ r_p`. States compatible with infinitely many period
/// repetitions form the greatest fixpoint of the image map of `Φ`, computed
/// by iterating from the full state set (each iteration shrinks the set).
/// The preperiod is then folded the same way. Directive morphisms that are
/// not labels simply produce no successor. The directive is accepted exactly
/// when the result is nonempty.
pub fn recognize(aut: &Automaton, d: &DirectiveWord) -> Result<BTreeSet<usize>> {
    if d.period().is_empty() {
        return Err(Error::NotEventuallyPeriodic);
    }
    let step_set = |xs: &BTreeSet<usize>, f: &Morphism| -> BTreeSet<usize> {
        match aut.label_index(f) {
            None => BTreeSet::new(),
            Some(li) => xs
                .iter()
                .filter_map(|&q| aut.step_by_index(q, li))
                .collect(),
        }
    };
    let phi = |xs: &BTreeSet<usize>| -> BTreeSet<usize> {
        let mut cur = xs.clone();
        for f in d.period().iter().rev() {
            cur = step_set(&cur, f);
        }
        cur
    };
    let mut x: BTreeSet<usize> = (0..aut.states().len()).collect();
    loop {
        let next = phi(&x);
        if next == x {
            break;
        }
        x = next;
    }
    for f in d.preperiod().iter().rev() {
        x = step_set(&x, f);
    }
    Ok(x)
}

/// Graphviz rendering of the automaton: one node per state, one edge per
/// transition, labels in bracket notation over the ambient alphabet.
pub fn export_dot(aut: &Automaton) -> String {
    let mut out = String::from("digraph fragility_transitions {\n  rankdir=LR;\n  node [shape=box];\n");
    for (i, q) in aut.states().iter().enumerate() {
        out.push_str(&format!("  q{i} [label=\"{q}\"];\n"));
    }
    for (from, label, to) in aut.transitions() {
        let text = label
            .to_bracket(aut.alphabet())
            .expect("labels live over the ambient alphabet");
        out.push_str(&format!("  q{from} -> q{to} [label=\"{text}\"];\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Morphism {
        s.parse().unwrap()
    }

    fn t(a: u8, b: u8, c: u8) -> FragTriple {
        FragTriple::new(a, b, c).unwrap()
    }

    fn lambda(order: &str) -> Morphism {
        Morphism::lambda(&order.parse().unwrap()).unwrap()
    }

    fn ternary() -> Automaton {
        build(&"abc".parse().unwrap()).unwrap()
    }

    fn state_of(aut: &Automaton, letters: &str, frag: &[FragTriple]) -> usize {
        let q = AutomatonState::new(
            letters.bytes().collect(),
            frag.iter().copied().collect(),
        )
        .unwrap();
        aut.state_index(&q).unwrap()
    }

    #[test]
    fn binary_automaton_shape() {
        let aut = build(&"ab".parse().unwrap()).unwrap();
        assert_eq!(aut.states().len(), 3);
        assert_eq!(aut.transition_count(), 6);
        let edges: BTreeSet<(String, String, String)> = aut
            .transitions()
            .map(|(q, f, r)| {
                (
                    aut.states()[q].to_string(),
                    f.to_bracket(aut.alphabet()).unwrap(),
                    aut.states()[r].to_string(),
                )
            })
            .collect();
        let expect: BTreeSet<(String, String, String)> = [
            ("({a}, ∅)", "[a,-]", "({a}, ∅)"),
            ("({a}, ∅)", "[ba,-]", "({ab}, ∅)"),
            ("({b}, ∅)", "[-,b]", "({b}, ∅)"),
            ("({b}, ∅)", "[-,ab]", "({ab}, ∅)"),
            ("({ab}, ∅)", "[a,ab]", "({ab}, ∅)"),
            ("({ab}, ∅)", "[ba,b]", "({ab}, ∅)"),
        ]
        .iter()
        .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
        .collect();
        assert_eq!(edges, expect);
    }

    #[test]
    fn ternary_automaton_shape() {
        let aut = ternary();
        assert_eq!(aut.states().len(), 10);
        assert_eq!(aut.transition_count(), 66);
        // Every state is fragility-free or carries exactly one type.
        let mut free = 0;
        let mut typed = Vec::new();
        for q in aut.states() {
            if q.frag.is_empty() {
                free += 1;
            } else {
                typed.push(q.type_letter().expect("typed state"));
            }
        }
        typed.sort_unstable();
        assert_eq!(free, 7);
        assert_eq!(typed, vec![b'a', b'b', b'c']);
    }

    #[test]
    fn ternary_out_degrees() {
        let aut = ternary();
        for (i, q) in aut.states().iter().enumerate() {
            let degree = aut.transitions().filter(|&(from, _, _)| from == i).count();
            let expected = match (q.alphabet.len(), q.frag.is_empty()) {
                (1, true) => 5,
                (2, true) => 7,
                (3, true) => 9,
                (3, false) => 7,
                other => panic!("unexpected state shape {other:?}"),
            };
            assert_eq!(degree, expected, "state {q}");
        }
    }

    #[test]
    fn typed_states_connect_as_expected() {
        let aut = ternary();
        let type_a = state_of(&aut, "abc", &[t(b'a', b'b', b'c')]);
        let type_b = state_of(&aut, "abc", &[t(b'b', b'a', b'c')]);
        let type_c = state_of(&aut, "abc", &[t(b'c', b'a', b'b')]);
        // The two λ of a type break it: no outgoing edge from its state.
        assert_eq!(aut.step(type_a, &lambda("abc")), None);
        assert_eq!(aut.step(type_a, &lambda("acb")), None);
        assert_eq!(aut.step(type_b, &lambda("bca")), None);
        assert_eq!(aut.step(type_c, &lambda("cab")), None);
        // Other λ morphisms move between types.
        assert_eq!(aut.step(type_c, &lambda("abc")), Some(type_a));
        assert_eq!(aut.step(type_a, &lambda("cab")), Some(type_c));
        assert_eq!(aut.step(type_a, &lambda("bca")), Some(type_b));
        // L morphisms keep every full-alphabet state in place.
        let la = Morphism::l(b'a', aut.alphabet()).unwrap();
        for q in [type_a, type_b, type_c] {
            assert_eq!(aut.step(q, &la), Some(q));
        }
    }

    #[test]
    fn transition_respects_domains() {
        let q = AutomatonState::fragility_free([b'a', b'b'].into()).unwrap();
        assert_eq!(transition(&q, &m("[a]")).unwrap(), None);
        assert_eq!(transition(&q, &m("[ab,a]")), Err(Error::NotRblsp));
    }

    #[test]
    fn singleton_state_reaches_typed_state() {
        let aut = ternary();
        let from = state_of(&aut, "a", &[]);
        let type_b = state_of(&aut, "abc", &[t(b'b', b'a', b'c')]);
        let f = Morphism::parse_bracket("[bca,-,-]", Some(aut.alphabet())).unwrap();
        assert_eq!(aut.step(from, &f), Some(type_b));
    }

    #[test]
    fn recognize_periodic_l_directive() {
        let aut = ternary();
        let d = DirectiveWord::new(
            vec![],
            vec![
                Morphism::l(b'a', aut.alphabet()).unwrap(),
                Morphism::l(b'b', aut.alphabet()).unwrap(),
                Morphism::l(b'c', aut.alphabet()).unwrap(),
            ],
        );
        let starts = recognize(&aut, &d).unwrap();
        let full: BTreeSet<usize> = (0..aut.states().len())
            .filter(|&i| aut.states()[i].alphabet.len() == 3)
            .collect();
        assert_eq!(starts, full);
    }

    #[test]
    fn recognize_xi_directive() {
        let aut = ternary();
        let d = DirectiveWord::new(
            vec![],
            vec![lambda("abc"), lambda("bca"), lambda("cab")],
        );
        let starts = recognize(&aut, &d).unwrap();
        let type_a = state_of(&aut, "abc", &[t(b'a', b'b', b'c')]);
        assert_eq!(starts, BTreeSet::from([type_a]));
    }

    #[test]
    fn recognize_rejects_repeated_lambda_prefix() {
        let aut = ternary();
        let d = DirectiveWord::new(
            vec![lambda("acb"), lambda("acb")],
            vec![
                Morphism::l(b'a', aut.alphabet()).unwrap(),
                Morphism::l(b'b', aut.alphabet()).unwrap(),
                Morphism::l(b'c', aut.alphabet()).unwrap(),
            ],
        );
        assert!(recognize(&aut, &d).unwrap().is_empty());
    }

    #[test]
    fn recognize_needs_a_period() {
        let aut = ternary();
        let d = DirectiveWord::new(vec![lambda("abc")], vec![]);
        assert_eq!(recognize(&aut, &d), Err(Error::NotEventuallyPeriodic));
    }

    #[test]
    fn dot_export_is_deterministic_and_complete() {
        let aut = build(&"ab".parse().unwrap()).unwrap();
        let dot = export_dot(&aut);
        assert_eq!(dot, export_dot(&aut));
        assert_eq!(dot.matches(" -> ").count(), 6);
        assert_eq!(dot.matches("label=").count(), 3 + 6);
        assert!(dot.contains("[ba,-]"));
    }

    #[test]
    fn alphabet_size_is_bounded() {
        assert!(matches!(
            build(&"abcde".parse().unwrap()),
            Err(Error::AlphabetTooLarge(5, _))
        ));
    }
}
