//! Exact acceptance values of ultimately periodic words.
//!
//! Reading `u v^ω` turns the automaton into a finite Markov chain over
//! (phase, state) pairs, one phase per letter of the period. Every question
//! about the infinite run reduces to absorption into the bottom strongly
//! connected components of that chain, plus a stationary distribution inside
//! each, all solved in exact rational arithmetic.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::automaton::{Condition, Distribution, ProbAutomaton, ScaledDist};
use crate::error::Result;
use crate::graph;
use crate::linalg;
use crate::rational::{big_gcd, one_minus, reduced_ratio, Rational};
use crate::word::LassoWord;

/// The Markov chain induced by one automaton reading one lasso word.
///
/// Node `phase * n + state` is "the automaton is in `state` and the next
/// letter is position `phase` of the period". The entry distribution is the
/// state distribution after the prefix, placed at phase 0.
pub struct PeriodicChain {
    n_states: usize,
    period_len: usize,
    /// Over nodes, in scaled integer form; the prefix of a long word can make
    /// these numbers enormous, so no rational arithmetic touches them.
    entry_scaled: ScaledDist,
    entry: OnceLock<Distribution>,
    /// Phase to index into `matrices`.
    phase_syms: Vec<usize>,
    /// Matrices of the distinct symbols appearing in the period.
    matrices: Vec<Vec<Vec<Rational>>>,
    bsccs: Vec<Bscc>,
    /// Numerators per bottom component over one denominator.
    absorption_scaled: OnceLock<(Vec<BigInt>, BigInt)>,
    absorption: OnceLock<Vec<Rational>>,
}

/// A bottom strongly connected component of a [`PeriodicChain`].
pub struct Bscc {
    nodes: Vec<usize>,
    stationary: OnceLock<Vec<Rational>>,
}

impl Bscc {
    /// Chain nodes of the component, ascending.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    /// Automaton states the component projects to.
    pub fn states(&self, chain: &PeriodicChain) -> BTreeSet<usize> {
        self.nodes.iter().map(|&u| chain.node_state(u)).collect()
    }

    /// The stationary distribution of the chain restricted to this
    /// component, aligned with [`Bscc::nodes`]. Long-run visit frequencies
    /// follow it almost surely, whether or not the restriction is aperiodic.
    pub fn stationary(&self, chain: &PeriodicChain) -> &[Rational] {
        self.stationary.get_or_init(|| {
            let k = self.nodes.len();
            let mut pos = vec![usize::MAX; chain.n_nodes()];
            for (i, &u) in self.nodes.iter().enumerate() {
                pos[u] = i;
            }
            // Balance equations for all but the last node (they are linearly
            // dependent), then the normalization row.
            let mut mat = vec![vec![Rational::zero(); k]; k];
            for (i, &u) in self.nodes.iter().enumerate() {
                for (v, p) in chain.successors(u) {
                    let j = pos[v];
                    assert_ne!(j, usize::MAX, "component is not closed");
                    if j < k - 1 {
                        mat[j][i] += p;
                    }
                }
            }
            for (j, row) in mat.iter_mut().enumerate().take(k - 1) {
                row[j] -= Rational::one();
            }
            for c in mat[k - 1].iter_mut() {
                *c = Rational::one();
            }
            let mut rhs = vec![Rational::zero(); k];
            rhs[k - 1] = Rational::one();
            linalg::solve(mat, rhs).expect("irreducible component has a unique stationary row")
        })
    }
}

impl PeriodicChain {
    /// Builds the chain of `a` reading `lasso`. Costs one finite run over the
    /// prefix plus work polynomial in (period length × states).
    pub fn build(a: &ProbAutomaton, lasso: &LassoWord) -> Result<PeriodicChain> {
        let n = a.n_states();
        let entry_states =
            a.run_scaled(ScaledDist::from_distribution(a.initial()), lasso.prefix())?;

        let mut sym_ids: Vec<usize> = Vec::new();
        let mut phase_syms = Vec::with_capacity(lasso.period().len());
        for tok in lasso.period().iter() {
            let s = a
                .symbol_index(tok)
                .ok_or_else(|| crate::error::Error::UnknownSymbol(tok.to_string()))?;
            let local = match sym_ids.iter().position(|&t| t == s) {
                Some(i) => i,
                None => {
                    sym_ids.push(s);
                    sym_ids.len() - 1
                }
            };
            phase_syms.push(local);
        }
        let matrices: Vec<_> = sym_ids.iter().map(|&s| a.matrix(s).clone()).collect();

        let period_len = phase_syms.len();
        let n_nodes = period_len * n;
        let mut nums = entry_states.nums;
        nums.resize(n_nodes, BigInt::zero());
        let entry_scaled = ScaledDist {
            nums,
            den: entry_states.den,
        };

        let mut chain = PeriodicChain {
            n_states: n,
            period_len,
            entry_scaled,
            entry: OnceLock::new(),
            phase_syms,
            matrices,
            bsccs: Vec::new(),
            absorption_scaled: OnceLock::new(),
            absorption: OnceLock::new(),
        };

        let adj: Vec<Vec<usize>> = (0..n_nodes)
            .map(|u| chain.successors(u).into_iter().map(|(v, _)| v).collect())
            .collect();
        let mut bottoms: Vec<Vec<usize>> = graph::sccs(n_nodes, &adj)
            .into_iter()
            .filter(|comp| {
                comp.iter()
                    .all(|&u| adj[u].iter().all(|v| comp.binary_search(v).is_ok()))
            })
            .collect();
        bottoms.sort_by_key(|comp| comp[0]);
        chain.bsccs = bottoms
            .into_iter()
            .map(|nodes| Bscc {
                nodes,
                stationary: OnceLock::new(),
            })
            .collect();
        Ok(chain)
    }

    pub fn n_nodes(&self) -> usize {
        self.period_len * self.n_states
    }

    pub fn period_len(&self) -> usize {
        self.period_len
    }

    pub fn node(&self, phase: usize, state: usize) -> usize {
        phase * self.n_states + state
    }

    pub fn node_phase(&self, node: usize) -> usize {
        node / self.n_states
    }

    pub fn node_state(&self, node: usize) -> usize {
        node % self.n_states
    }

    /// Distribution over nodes after the prefix, at phase 0.
    pub fn entry(&self) -> &Distribution {
        self.entry.get_or_init(|| self.entry_scaled.to_distribution())
    }

    /// Bottom components, ordered by smallest node.
    pub fn bsccs(&self) -> &[Bscc] {
        &self.bsccs
    }

    fn successors(&self, node: usize) -> Vec<(usize, &Rational)> {
        let state = node % self.n_states;
        let phase = node / self.n_states;
        let next = (phase + 1) % self.period_len;
        self.matrices[self.phase_syms[phase]][state]
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(to, p)| (next * self.n_states + to, p))
            .collect()
    }

    /// Probability, from the entry distribution, of ending up in each bottom
    /// component. Aligned with [`PeriodicChain::bsccs`]; sums to the total
    /// entry mass.
    pub fn absorption_probabilities(&self) -> &[Rational] {
        self.absorption.get_or_init(|| {
            let (nums, den) = self.absorption_scaled();
            nums.iter()
                .map(|v| reduced_ratio(v.clone(), den.clone()))
                .collect()
        })
    }

    /// As [`PeriodicChain::absorption_probabilities`] but in scaled integer
    /// form, so sums over components stay reduction-free.
    fn absorption_scaled(&self) -> &(Vec<BigInt>, BigInt) {
        self.absorption_scaled.get_or_init(|| {
            let n = self.n_nodes();
            let k = self.bsccs.len();
            let mut member: Vec<Option<usize>> = vec![None; n];
            for (b, comp) in self.bsccs.iter().enumerate() {
                for &u in &comp.nodes {
                    member[u] = Some(b);
                }
            }
            let transient: Vec<usize> = (0..n).filter(|&u| member[u].is_none()).collect();
            let t = transient.len();
            let mut pos = vec![usize::MAX; n];
            for (i, &u) in transient.iter().enumerate() {
                pos[u] = i;
            }

            // From each transient node, hit probabilities per component:
            // (I - P restricted to transients) X = P into each component.
            let hit = if t > 0 {
                let mut mat = vec![vec![Rational::zero(); t]; t];
                for (i, row) in mat.iter_mut().enumerate() {
                    row[i] = Rational::one();
                }
                let mut rhs = vec![vec![Rational::zero(); t]; k];
                for (i, &u) in transient.iter().enumerate() {
                    for (v, p) in self.successors(u) {
                        match member[v] {
                            None => mat[i][pos[v]] -= p,
                            Some(b) => rhs[b][i] += p,
                        }
                    }
                }
                linalg::solve_multi(mat, rhs).expect("transient part loses mass, so nonsingular")
            } else {
                vec![Vec::new(); k]
            };

            // The hit probabilities are small; bring them over a common
            // denominator so the huge entry numerators only meet integers.
            let mut hit_den = BigInt::one();
            for col in &hit {
                for h in col {
                    let g = BigInt::from(big_gcd(hit_den.magnitude(), h.denom().magnitude()));
                    hit_den = &hit_den / g * h.denom();
                }
            }
            let hit_scaled: Vec<Vec<BigInt>> = hit
                .iter()
                .map(|col| {
                    col.iter()
                        .map(|h| h.numer() * (&hit_den / h.denom()))
                        .collect()
                })
                .collect();

            let entry = &self.entry_scaled;
            let mut out = vec![BigInt::zero(); k];
            for u in 0..n {
                let e = &entry.nums[u];
                if e.is_zero() {
                    continue;
                }
                match member[u] {
                    Some(b) => out[b] += e * &hit_den,
                    None => {
                        for (b, col) in hit_scaled.iter().enumerate() {
                            let h = &col[pos[u]];
                            if !h.is_zero() {
                                out[b] += e * h;
                            }
                        }
                    }
                }
            }
            (out, &entry.den * hit_den)
        })
    }
}

/// Exact probability that `a` accepts `lasso` under `condition`.
///
/// The automaton is taken at face value; run [`ProbAutomaton::validate`]
/// first if it comes from outside.
pub fn eval_lasso(a: &ProbAutomaton, condition: Condition, lasso: &LassoWord) -> Result<Rational> {
    match condition {
        Condition::Reachability => reach_value(a, a.accepting().clone(), lasso),
        Condition::Safety => {
            // A run stays inside the accepting set iff it never reaches the
            // complement.
            let complement: BTreeSet<usize> =
                (0..a.n_states()).filter(|q| !a.is_accepting(*q)).collect();
            Ok(one_minus(&reach_value(a, complement, lasso)?))
        }
        Condition::Buchi => {
            let chain = PeriodicChain::build(a, lasso)?;
            Ok(component_mass(&chain, |b| {
                !b.states(&chain).is_disjoint(a.accepting())
            }))
        }
        Condition::CoBuchi => {
            let chain = PeriodicChain::build(a, lasso)?;
            Ok(component_mass(&chain, |b| {
                b.states(&chain).is_subset(a.accepting())
            }))
        }
        Condition::LimitAvg => {
            let chain = PeriodicChain::build(a, lasso)?;
            let absorb = chain.absorption_probabilities();
            let mut value = Rational::zero();
            for (b, p) in chain.bsccs().iter().zip(absorb) {
                if p.is_zero() {
                    continue;
                }
                let pi = b.stationary(&chain);
                let freq: Rational = b
                    .nodes()
                    .iter()
                    .zip(pi)
                    .filter(|(u, _)| a.is_accepting(chain.node_state(**u)))
                    .map(|(_, w)| w)
                    .sum();
                value += p * freq;
            }
            Ok(value)
        }
    }
}

/// Probability of ever visiting `targets`, time 0 included.
fn reach_value(a: &ProbAutomaton, targets: BTreeSet<usize>, lasso: &LassoWord) -> Result<Rational> {
    // Freezing the targets turns "ever visit" into "be absorbed next to":
    // mass that touches a target can no longer leave it, also during the
    // prefix run.
    let frozen = a.with_states_absorbing(&targets);
    let chain = PeriodicChain::build(&frozen, lasso)?;
    Ok(component_mass(&chain, |b| {
        !b.states(&chain).is_disjoint(&targets)
    }))
}

fn component_mass(chain: &PeriodicChain, want: impl Fn(&Bscc) -> bool) -> Rational {
    let (nums, den) = chain.absorption_scaled();
    let total: BigInt = chain
        .bsccs()
        .iter()
        .zip(nums)
        .filter(|(b, _)| want(b))
        .map(|(_, v)| v)
        .sum();
    reduced_ratio(total, den.clone())
}
