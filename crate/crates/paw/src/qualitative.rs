//! Qualitative decision procedures: almost-sure safety, limit safety, and
//! positive reachability, each with a lasso witness when the answer allows
//! one.
//!
//! Almost-sure safety depends only on which transitions are possible, not
//! on their probabilities, so it is decided on a graph of state supports:
//! a word keeps all mass inside the accepting set forever exactly when its
//! letters walk the support of the initial distribution through subsets of
//! the accepting set without ever leaking. Such an infinite walk exists in
//! the finite support graph exactly when a cycle is reachable, and
//! unrolling path plus cycle yields a lasso witness whose total length is
//! at most `2^|Q|`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::Signed;

use crate::automaton::ProbAutomaton;
use crate::graph::sccs;
use crate::word::{LassoWord, Word};

/// The no-leak support graph of an automaton: nodes are supports (subsets
/// of the accepting set), edges are labelled by symbols whose image stays
/// inside the accepting set. Built lazily from the initial support; when
/// the initial distribution already touches a rejecting state there are no
/// nodes at all.
#[derive(Clone, Debug)]
pub struct SupportGraph {
    nodes: Vec<BTreeSet<usize>>,
    edges: Vec<Vec<(usize, usize)>>,
    initial: Option<usize>,
}

impl SupportGraph {
    /// All reachable no-leak supports, the initial one first.
    pub fn nodes(&self) -> &[BTreeSet<usize>] {
        &self.nodes
    }

    /// Outgoing edges of a node as `(symbol index, target node)` pairs.
    pub fn edges(&self, node: usize) -> &[(usize, usize)] {
        &self.edges[node]
    }

    /// The node holding the initial support, unless that support already
    /// leaks.
    pub fn initial(&self) -> Option<usize> {
        self.initial
    }
}

/// Builds the no-leak support graph reachable from the initial support.
pub fn noleak_subset_graph(a: &ProbAutomaton) -> SupportGraph {
    let accepting = a.accepting();
    let start = a.initial().support();
    if !start.is_subset(accepting) {
        return SupportGraph {
            nodes: Vec::new(),
            edges: Vec::new(),
            initial: None,
        };
    }

    let mut nodes = vec![start.clone()];
    let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    let mut index: HashMap<BTreeSet<usize>, usize> = [(start, 0)].into_iter().collect();
    let mut queue: VecDeque<usize> = [0].into();

    while let Some(i) = queue.pop_front() {
        for s in 0..a.alphabet().len() {
            let mut target = BTreeSet::new();
            for &from in &nodes[i] {
                for to in 0..a.n_states() {
                    if a.entry(s, from, to).is_positive() {
                        target.insert(to);
                    }
                }
            }
            if !target.is_subset(accepting) {
                continue;
            }
            let j = match index.get(&target) {
                Some(&j) => j,
                None => {
                    let j = nodes.len();
                    index.insert(target.clone(), j);
                    nodes.push(target);
                    edges.push(Vec::new());
                    queue.push_back(j);
                    j
                }
            };
            edges[i].push((s, j));
        }
    }

    SupportGraph {
        nodes,
        edges,
        initial: Some(0),
    }
}

/// Decides whether some infinite word keeps the automaton inside its
/// accepting set with probability 1, returning a lasso witness when one
/// exists.
///
/// The answer is yes exactly when the no-leak support graph has a cycle
/// reachable from the initial support. The witness walks the shortest path
/// to the nearest on-cycle node and then a shortest cycle through it; its
/// prefix and period together never exceed `2^|Q|` letters.
pub fn decide_almost_safety(a: &ProbAutomaton) -> (bool, Option<LassoWord>) {
    let g = noleak_subset_graph(a);
    let Some(start) = g.initial else {
        return (false, None);
    };
    let n = g.nodes.len();
    let adj: Vec<Vec<usize>> = g
        .edges
        .iter()
        .map(|es| es.iter().map(|&(_, j)| j).collect())
        .collect();

    let mut on_cycle = vec![false; n];
    for comp in sccs(n, &adj) {
        if comp.len() >= 2 || adj[comp[0]].contains(&comp[0]) {
            for &v in &comp {
                on_cycle[v] = true;
            }
        }
    }

    // Shortest path from the initial node to the nearest on-cycle node.
    // Interior nodes of that path are never on a cycle themselves, which
    // keeps path plus cycle within the number of supports.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue: VecDeque<usize> = [start].into();
    let mut target = None;
    if on_cycle[start] {
        target = Some(start);
    }
    'outer: while let Some(i) = queue.pop_front() {
        if target.is_some() {
            break;
        }
        for &(s, j) in g.edges(i) {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            parent[j] = Some((i, s));
            if on_cycle[j] {
                target = Some(j);
                break 'outer;
            }
            queue.push_back(j);
        }
    }
    let Some(t) = target else {
        return (false, None);
    };

    let mut prefix_syms = Vec::new();
    let mut cur = t;
    while let Some((prev, s)) = parent[cur] {
        prefix_syms.push(s);
        cur = prev;
    }
    prefix_syms.reverse();

    // Shortest cycle through t: breadth-first from t, stopping at the
    // first edge that returns to it.
    let mut back: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[t] = true;
    let mut queue: VecDeque<usize> = [t].into();
    let mut closing = None;
    'search: while let Some(i) = queue.pop_front() {
        for &(s, j) in g.edges(i) {
            if j == t {
                closing = Some((i, s));
                break 'search;
            }
            if !seen[j] {
                seen[j] = true;
                back[j] = Some((i, s));
                queue.push_back(j);
            }
        }
    }
    let (mut cur, last) = closing.expect("an on-cycle node closes a cycle");
    let mut period_syms = vec![last];
    while let Some((prev, s)) = back[cur] {
        period_syms.push(s);
        cur = prev;
    }
    period_syms.reverse();

    let token = |s: &usize| a.alphabet()[*s].clone();
    let witness = LassoWord::new(
        Word::from_tokens(prefix_syms.iter().map(token)),
        Word::from_tokens(period_syms.iter().map(token)),
    )
    .expect("cycles are nonempty");
    (true, Some(witness))
}

/// Decides whether the supremum over words of the safety value is 1. For
/// safety this coincides with almost-sure safety: values arbitrarily close
/// to 1 force a word reaching 1, so the procedure and witness are shared
/// with [`decide_almost_safety`].
pub fn decide_limit_safety(a: &ProbAutomaton) -> (bool, Option<LassoWord>) {
    decide_almost_safety(a)
}

/// Decides whether some word reaches the accepting set with positive
/// probability, with a witness lasso built from a shortest positive path.
/// Over an empty alphabet there are no infinite words, so the answer is no
/// regardless of the initial distribution.
pub fn decide_positive_reachability(a: &ProbAutomaton) -> (bool, Option<LassoWord>) {
    if a.alphabet().is_empty() {
        return (false, None);
    }
    let n = a.n_states();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    let mut target = None;
    for q in a.initial().support() {
        seen[q] = true;
        queue.push_back(q);
        if a.is_accepting(q) {
            target = Some(q);
        }
    }
    'outer: while let Some(q) = queue.pop_front() {
        if target.is_some() {
            break;
        }
        for s in 0..a.alphabet().len() {
            for to in 0..n {
                if seen[to] || !a.entry(s, q, to).is_positive() {
                    continue;
                }
                seen[to] = true;
                parent[to] = Some((q, s));
                if a.is_accepting(to) {
                    target = Some(to);
                    break 'outer;
                }
                queue.push_back(to);
            }
        }
    }
    let Some(t) = target else {
        return (false, None);
    };
    let mut syms = Vec::new();
    let mut cur = t;
    while let Some((prev, s)) = parent[cur] {
        syms.push(s);
        cur = prev;
    }
    syms.reverse();
    let witness = LassoWord::new(
        Word::from_tokens(syms.iter().map(|&s| a.alphabet()[s].clone())),
        Word::from_tokens([a.alphabet()[0].clone()]),
    )
    .expect("period is one letter");
    (true, Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Condition, Distribution};
    use crate::evaluator::eval_lasso;
    use crate::rational::rat;

    fn two_letter(
        rows_a: [[i64; 3]; 3],
        rows_b: [[i64; 3]; 3],
        accepting: &[usize],
    ) -> ProbAutomaton {
        let to_matrix = |rows: [[i64; 3]; 3]| {
            rows.iter()
                .map(|r| {
                    let total: i64 = r.iter().sum();
                    r.iter().map(|&x| rat(x, total)).collect()
                })
                .collect()
        };
        ProbAutomaton::new(
            vec!["p".into(), "q".into(), "r".into()],
            vec!["a".to_string(), "b".to_string()],
            Distribution::point(3, 0),
            vec![to_matrix(rows_a), to_matrix(rows_b)],
            accepting.iter().copied().collect(),
        )
    }

    #[test]
    fn leaking_under_every_letter_is_hopeless() {
        // Both letters: p moves mass to r, and r is rejecting.
        let a = two_letter(
            [[1, 0, 1], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 1], [0, 1, 0], [0, 0, 1]],
            &[0, 1],
        );
        let (yes, witness) = decide_almost_safety(&a);
        assert!(!yes);
        assert!(witness.is_none());
    }

    #[test]
    fn a_safe_letter_gives_a_witness_that_evaluates_to_one() {
        // Letter a leaks, letter b swaps p and q harmlessly.
        let a = two_letter(
            [[1, 0, 1], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
            &[0, 1],
        );
        let (yes, witness) = decide_almost_safety(&a);
        assert!(yes);
        let w = witness.unwrap();
        assert_eq!(
            eval_lasso(&a, Condition::Safety, &w).unwrap(),
            rat(1, 1),
            "witness {w}"
        );
        assert!(w.prefix().len() + w.period().len() <= 1 << 3);
    }

    #[test]
    fn support_growth_can_force_a_leak() {
        // Letter a spreads p over p and q; from q letter a leaks to r.
        // Letter b maps everything back to p, so cycling through b is safe.
        let grow = two_letter(
            [[1, 1, 0], [0, 1, 1], [0, 0, 1]],
            [[1, 0, 0], [1, 0, 0], [0, 0, 1]],
            &[0, 1],
        );
        let (yes, witness) = decide_almost_safety(&grow);
        assert!(yes);
        let w = witness.unwrap();
        assert_eq!(eval_lasso(&grow, Condition::Safety, &w).unwrap(), rat(1, 1));
        // The graph must know that the grown support {p, q} leaks under a.
        let g = noleak_subset_graph(&grow);
        let grown: BTreeSet<usize> = [0, 1].into_iter().collect();
        let grown_node = g.nodes().iter().position(|s| *s == grown).unwrap();
        assert!(g.edges(grown_node).iter().all(|&(s, _)| s != 0));
    }

    #[test]
    fn initial_leak_means_no_and_no_graph() {
        let a = two_letter(
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            &[1, 2],
        );
        let g = noleak_subset_graph(&a);
        assert_eq!(g.initial(), None);
        assert!(g.nodes().is_empty());
        assert_eq!(decide_almost_safety(&a), (false, None));
    }

    #[test]
    fn encoder_supports_have_no_safe_moves() {
        let p = crate::pcp::PcpInstance::from_digit_strings(2, &[("a", "1", "1")]).unwrap();
        let enc = crate::pcp::encoder_automaton(&p, crate::pcp::Morphism::First);
        let g = noleak_subset_graph(&enc);
        assert_eq!(g.nodes().len(), 1);
        assert!(g.edges(0).is_empty());
        assert_eq!(decide_almost_safety(&enc).0, false);
    }

    #[test]
    fn limit_safety_delegates_to_almost_safety() {
        let a = two_letter(
            [[1, 0, 1], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
            &[0, 1],
        );
        assert_eq!(decide_limit_safety(&a), decide_almost_safety(&a));
    }

    #[test]
    fn positive_reachability_walks_a_positive_path() {
        // Reaching r needs letter a from q, and q needs letter b from p.
        let a = two_letter(
            [[1, 0, 0], [0, 0, 1], [0, 0, 1]],
            [[0, 1, 0], [0, 1, 0], [0, 0, 1]],
            &[2],
        );
        let (yes, witness) = decide_positive_reachability(&a);
        assert!(yes);
        let w = witness.unwrap();
        let v = eval_lasso(&a, Condition::Reachability, &w).unwrap();
        assert!(v > rat(0, 1), "witness {w} gave {v}");
    }

    #[test]
    fn initial_mass_on_the_target_counts_at_time_zero() {
        let a = two_letter(
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            &[0],
        );
        let (yes, witness) = decide_positive_reachability(&a);
        assert!(yes);
        let w = witness.unwrap();
        assert!(w.prefix().is_empty());
        assert_eq!(eval_lasso(&a, Condition::Reachability, &w).unwrap(), rat(1, 1));
    }

    #[test]
    fn unreachable_targets_are_refused() {
        // r is only reachable from q, and q is unreachable.
        let a = two_letter(
            [[1, 0, 0], [0, 0, 1], [0, 0, 1]],
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            &[2],
        );
        assert_eq!(decide_positive_reachability(&a), (false, None));
    }

    #[test]
    fn empty_alphabet_has_no_words_at_all() {
        let a = ProbAutomaton::new(
            vec!["only".into()],
            Vec::new(),
            Distribution::point(1, 0),
            Vec::new(),
            [0].into_iter().collect(),
        );
        assert_eq!(decide_almost_safety(&a).0, false);
        assert_eq!(decide_positive_reachability(&a), (false, None));
    }
}
