//! Closure operations on probabilistic automata.
//!
//! These are the building blocks the gadget constructions are assembled
//! from: constant-valued automata, convex mixtures, a reject-absorbing
//! normal form, complementation of absorbing safety automata, and the
//! synchronous product. Each operation documents the value law it
//! satisfies; the laws are exercised by the property tests.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::automaton::{Distribution, ProbAutomaton};
use crate::error::{Error, Result};
use crate::rational::{one_minus, Rational};

/// An automaton whose value is `value` on every infinite word, under every
/// acceptance condition that is not degenerate for it.
///
/// Two states, `acc` (accepting) and `rej`, both absorbing under every
/// symbol; the initial distribution puts `value` on `acc`. Safety,
/// reachability, Buchi, co-Buchi and limit-average all evaluate to `value`
/// on every lasso word over `alphabet`.
pub fn constant_automaton(value: &Rational, alphabet: &[String]) -> Result<ProbAutomaton> {
    if value.is_negative() || value > &Rational::one() {
        return Err(Error::ValueOutOfRange(value.clone()));
    }
    let n = 2;
    let identity: Vec<Vec<Rational>> = (0..n)
        .map(|from| {
            (0..n)
                .map(|to| {
                    if from == to {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let matrices = vec![identity; alphabet.len()];
    let initial = Distribution::from_masses(vec![value.clone(), one_minus(value)]);
    Ok(ProbAutomaton::new(
        vec!["acc".to_string(), "rej".to_string()],
        alphabet.to_vec(),
        initial,
        matrices,
        [0].into_iter().collect(),
    ))
}

/// The convex mixture of automata over a shared alphabet.
///
/// The parts are `(weight, automaton)` pairs; weights must be nonnegative
/// and sum to 1. The mixture runs all parts side by side and splits the
/// initial mass by weight, so for every condition and every word,
/// `value(mix) = sum_i weight_i * value(part_i)`. State `q` of part `i` is
/// renamed to `i.q`.
pub fn convex_combine(parts: &[(Rational, ProbAutomaton)]) -> Result<ProbAutomaton> {
    if parts.is_empty() {
        return Err(Error::BadWeights);
    }
    let alphabet = parts[0].1.alphabet().to_vec();
    let mut total = Rational::zero();
    for (w, a) in parts {
        if w.is_negative() {
            return Err(Error::BadWeights);
        }
        if a.alphabet() != alphabet.as_slice() {
            return Err(Error::AlphabetMismatch);
        }
        total += w;
    }
    if !total.is_one() {
        return Err(Error::BadWeights);
    }

    let n: usize = parts.iter().map(|(_, a)| a.n_states()).sum();
    let mut states = Vec::with_capacity(n);
    let mut initial = Vec::with_capacity(n);
    let mut accepting = BTreeSet::new();
    let mut matrices: Vec<Vec<Vec<Rational>>> =
        vec![vec![vec![Rational::zero(); n]; n]; alphabet.len()];

    let mut offset = 0;
    for (i, (w, a)) in parts.iter().enumerate() {
        for q in 0..a.n_states() {
            states.push(format!("{i}.{}", a.state_name(q)));
            initial.push(w * a.initial().get(q));
            if a.is_accepting(q) {
                accepting.insert(offset + q);
            }
        }
        for (s, m) in matrices.iter_mut().enumerate() {
            for from in 0..a.n_states() {
                for to in 0..a.n_states() {
                    m[offset + from][offset + to] = a.entry(s, from, to).clone();
                }
            }
        }
        offset += a.n_states();
    }

    Ok(ProbAutomaton::new(
        states,
        alphabet,
        Distribution::from_masses(initial),
        matrices,
        accepting,
    ))
}

/// The same automaton with every non-accepting state made absorbing.
///
/// Under the safety condition this changes no value: a run is lost the
/// moment it leaves the accepting set, and freezing it there only rewrites
/// history that no longer matters. The result is one `absorbing` step away
/// from the normal form [`complement_absorbing_safety`] needs.
pub fn make_reject_absorbing(a: &ProbAutomaton) -> ProbAutomaton {
    let rejecting: BTreeSet<usize> = (0..a.n_states())
        .filter(|q| !a.is_accepting(*q))
        .collect();
    a.with_states_absorbing(&rejecting)
}

/// The safety complement of an absorbing safety automaton.
///
/// The input is first normalized with [`make_reject_absorbing`]; the result
/// must then be absorbing (almost all mass is eventually trapped in
/// absorbing states under every word), otherwise `Error::NotAbsorbing`.
/// The returned automaton swaps acceptance on the absorbing states and
/// accepts all transient ones, so under safety its value on every lasso
/// word is one minus the input's.
pub fn complement_absorbing_safety(a: &ProbAutomaton) -> Result<ProbAutomaton> {
    let frozen = make_reject_absorbing(a);
    if !frozen.classify().is_absorbing {
        return Err(Error::NotAbsorbing);
    }
    let absorbing = frozen.absorbing_states();
    let accepting: BTreeSet<usize> = (0..frozen.n_states())
        .filter(|q| absorbing.contains(q) != frozen.is_accepting(*q))
        .collect();
    Ok(frozen.with_accepting(accepting))
}

/// The synchronous product of two automata over the same alphabet.
///
/// State `(p, q)` is named `p,q`; the accepting set is the product of the
/// factors' accepting sets, so under safety the product's value on every
/// lasso word is the product of the factors' values.
pub fn product(a: &ProbAutomaton, b: &ProbAutomaton) -> Result<ProbAutomaton> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let (na, nb) = (a.n_states(), b.n_states());
    let n = na * nb;
    let pair = |p: usize, q: usize| p * nb + q;

    let mut states = Vec::with_capacity(n);
    let mut initial = Vec::with_capacity(n);
    let mut accepting = BTreeSet::new();
    for p in 0..na {
        for q in 0..nb {
            states.push(format!("{},{}", a.state_name(p), b.state_name(q)));
            initial.push(a.initial().get(p) * b.initial().get(q));
            if a.is_accepting(p) && b.is_accepting(q) {
                accepting.insert(pair(p, q));
            }
        }
    }

    let mut matrices = Vec::with_capacity(a.alphabet().len());
    for s in 0..a.alphabet().len() {
        let mut m = vec![vec![Rational::zero(); n]; n];
        for p in 0..na {
            for q in 0..nb {
                for p2 in 0..na {
                    let left = a.entry(s, p, p2);
                    if left.is_zero() {
                        continue;
                    }
                    for q2 in 0..nb {
                        let right = b.entry(s, q, q2);
                        if right.is_zero() {
                            continue;
                        }
                        m[pair(p, q)][pair(p2, q2)] = left * right;
                    }
                }
            }
        }
        matrices.push(m);
    }

    Ok(ProbAutomaton::new(
        states,
        a.alphabet().to_vec(),
        Distribution::from_masses(initial),
        matrices,
        accepting,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Condition;
    use crate::evaluator::eval_lasso;
    use crate::rational::rat;
    use crate::word::LassoWord;

    fn alphabet(tokens: &[&str]) -> Vec<String> {
        tokens.iter().map(|t| t.to_string()).collect()
    }

    /// A leaky safety automaton over {a, b}: `a` keeps 3/4 at the accepting
    /// state and leaks 1/4 to a rejecting sink, `b` keeps everything.
    fn leaky() -> ProbAutomaton {
        ProbAutomaton::new(
            vec!["ok".into(), "bad".into()],
            alphabet(&["a", "b"]),
            Distribution::point(2, 0),
            vec![
                vec![
                    vec![rat(3, 4), rat(1, 4)],
                    vec![rat(0, 1), rat(1, 1)],
                ],
                vec![
                    vec![rat(1, 1), rat(0, 1)],
                    vec![rat(0, 1), rat(1, 1)],
                ],
            ],
            [0].into_iter().collect(),
        )
    }

    #[test]
    fn constant_is_constant_under_every_condition() {
        let c = constant_automaton(&rat(2, 7), &alphabet(&["a", "b"])).unwrap();
        let w = LassoWord::parse("a b ; b a").unwrap();
        for cond in Condition::ALL {
            assert_eq!(eval_lasso(&c, cond, &w).unwrap(), rat(2, 7), "{cond}");
        }
    }

    #[test]
    fn constant_rejects_out_of_range_values() {
        assert_eq!(
            constant_automaton(&rat(3, 2), &alphabet(&["a"])),
            Err(Error::ValueOutOfRange(rat(3, 2)))
        );
        assert_eq!(
            constant_automaton(&rat(-1, 2), &alphabet(&["a"])),
            Err(Error::ValueOutOfRange(rat(-1, 2)))
        );
    }

    #[test]
    fn convex_combine_mixes_values_linearly() {
        let parts = vec![
            (rat(1, 3), constant_automaton(&rat(1, 2), &alphabet(&["a"])).unwrap()),
            (rat(2, 3), constant_automaton(&rat(1, 8), &alphabet(&["a"])).unwrap()),
        ];
        let mix = convex_combine(&parts).unwrap();
        let w = LassoWord::parse("; a").unwrap();
        // 1/3 * 1/2 + 2/3 * 1/8 = 1/4
        assert_eq!(eval_lasso(&mix, Condition::Safety, &w).unwrap(), rat(1, 4));
        assert_eq!(mix.state_name(0), "0.acc");
        assert_eq!(mix.state_name(2), "1.acc");
    }

    #[test]
    fn convex_combine_checks_weights_and_alphabets() {
        let a = constant_automaton(&rat(1, 2), &alphabet(&["a"])).unwrap();
        let b = constant_automaton(&rat(1, 2), &alphabet(&["b"])).unwrap();
        assert_eq!(
            convex_combine(&[(rat(1, 2), a.clone()), (rat(1, 3), a.clone())]),
            Err(Error::BadWeights)
        );
        assert_eq!(
            convex_combine(&[(rat(1, 2), a.clone()), (rat(1, 2), b)]),
            Err(Error::AlphabetMismatch)
        );
        assert_eq!(convex_combine(&[]), Err(Error::BadWeights));
        assert!(convex_combine(&[(rat(1, 1), a)]).is_ok());
    }

    #[test]
    fn reject_absorbing_preserves_safety_values() {
        let a = leaky();
        let frozen = make_reject_absorbing(&a);
        for lasso in ["a ; b", "; a", "b a a ; a b"] {
            let w = LassoWord::parse(lasso).unwrap();
            assert_eq!(
                eval_lasso(&a, Condition::Safety, &w).unwrap(),
                eval_lasso(&frozen, Condition::Safety, &w).unwrap(),
                "{lasso}"
            );
        }
    }

    /// Leaks toward the rejecting sink under both symbols, so the frozen
    /// form is absorbing and complementation applies.
    fn draining() -> ProbAutomaton {
        ProbAutomaton::new(
            vec!["ok".into(), "bad".into()],
            alphabet(&["a", "b"]),
            Distribution::point(2, 0),
            vec![
                vec![
                    vec![rat(3, 4), rat(1, 4)],
                    vec![rat(0, 1), rat(1, 1)],
                ],
                vec![
                    vec![rat(1, 2), rat(1, 2)],
                    vec![rat(0, 1), rat(1, 1)],
                ],
            ],
            [0].into_iter().collect(),
        )
    }

    #[test]
    fn complement_flips_safety_values() {
        let a = draining();
        let comp = complement_absorbing_safety(&a).unwrap();
        for lasso in ["a ; b", "a a ; a", "; b"] {
            let w = LassoWord::parse(lasso).unwrap();
            let v = eval_lasso(&a, Condition::Safety, &w).unwrap();
            let vc = eval_lasso(&comp, Condition::Safety, &w).unwrap();
            assert_eq!(v + vc, rat(1, 1), "{lasso}");
        }
    }

    #[test]
    fn complement_is_an_involution_on_values() {
        let a = draining();
        let twice = complement_absorbing_safety(&complement_absorbing_safety(&a).unwrap()).unwrap();
        let w = LassoWord::parse("a a ; b").unwrap();
        assert_eq!(
            eval_lasso(&a, Condition::Safety, &w).unwrap(),
            eval_lasso(&twice, Condition::Safety, &w).unwrap()
        );
    }

    #[test]
    fn complement_requires_an_absorbing_normal_form() {
        // A fair-coin flipper never settles: both states accepting, so
        // make_reject_absorbing freezes nothing and no mass is absorbed.
        let flip = ProbAutomaton::new(
            vec!["h".into(), "t".into()],
            alphabet(&["a"]),
            Distribution::point(2, 0),
            vec![vec![
                vec![rat(1, 2), rat(1, 2)],
                vec![rat(1, 2), rat(1, 2)],
            ]],
            [0, 1].into_iter().collect(),
        );
        assert_eq!(complement_absorbing_safety(&flip), Err(Error::NotAbsorbing));
    }

    #[test]
    fn product_multiplies_safety_values() {
        let a = leaky();
        let b = constant_automaton(&rat(1, 3), &alphabet(&["a", "b"])).unwrap();
        let p = product(&a, &b).unwrap();
        let w = LassoWord::parse("a a ; b").unwrap();
        // leaky value (3/4)^2 = 9/16, times 1/3.
        assert_eq!(eval_lasso(&p, Condition::Safety, &w).unwrap(), rat(3, 16));
        assert_eq!(p.state_name(0), "ok,acc");
    }

    #[test]
    fn product_rejects_mismatched_alphabets() {
        let a = constant_automaton(&rat(1, 2), &alphabet(&["a"])).unwrap();
        let b = constant_automaton(&rat(1, 2), &alphabet(&["b"])).unwrap();
        assert_eq!(product(&a, &b), Err(Error::AlphabetMismatch));
    }

    #[test]
    fn product_initial_mass_is_the_product_measure() {
        let a = constant_automaton(&rat(1, 2), &alphabet(&["a"])).unwrap();
        let b = constant_automaton(&rat(1, 3), &alphabet(&["a"])).unwrap();
        let p = product(&a, &b).unwrap();
        assert_eq!(p.initial().get(0), &rat(1, 6));
        assert_eq!(p.initial().total(), rat(1, 1));
    }
}
