//! The automaton model: states, one stochastic matrix per symbol, an initial
//! distribution, an accepting set, and the acceptance conditions.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{big_gcd, reduced_ratio, Rational};
use crate::word::Word;

/// How an accepting set is read on an infinite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// Every visited state accepts, from time 0 on.
    Safety,
    /// Some visited state accepts, time 0 included.
    Reachability,
    /// Accepting states are visited infinitely often.
    Buchi,
    /// From some point on only accepting states are visited.
    CoBuchi,
    /// Limit average of the per-step acceptance reward.
    LimitAvg,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::Safety,
        Condition::Reachability,
        Condition::Buchi,
        Condition::CoBuchi,
        Condition::LimitAvg,
    ];

    /// The token used in files and on the command line.
    pub fn token(self) -> &'static str {
        match self {
            Condition::Safety => "safety",
            Condition::Reachability => "reach",
            Condition::Buchi => "buchi",
            Condition::CoBuchi => "cobuchi",
            Condition::LimitAvg => "limitavg",
        }
    }

    pub fn from_token(tok: &str) -> Option<Condition> {
        Condition::ALL.into_iter().find(|c| c.token() == tok)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A (sub-)distribution over the states of one automaton, dense by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    mass: Vec<Rational>,
}

impl Distribution {
    pub fn zero(n: usize) -> Self {
        Distribution {
            mass: vec![Rational::zero(); n],
        }
    }

    /// Point mass on state `i`.
    pub fn point(n: usize, i: usize) -> Self {
        let mut d = Distribution::zero(n);
        d.mass[i] = Rational::one();
        d
    }

    pub fn from_masses(mass: Vec<Rational>) -> Self {
        Distribution { mass }
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.mass[i]
    }

    pub fn set(&mut self, i: usize, v: Rational) {
        self.mass[i] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> {
        self.mass.iter()
    }

    pub fn total(&self) -> Rational {
        self.mass.iter().sum()
    }

    /// States carrying nonzero mass.
    pub fn support(&self) -> BTreeSet<usize> {
        self.mass
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn mass_in(&self, states: &BTreeSet<usize>) -> Rational {
        states.iter().map(|&i| &self.mass[i]).sum()
    }

    /// Zeroes all mass outside `states`.
    pub fn restricted_to(&self, states: &BTreeSet<usize>) -> Distribution {
        let mut d = Distribution::zero(self.len());
        for &i in states {
            d.mass[i] = self.mass[i].clone();
        }
        d
    }
}

/// A probabilistic automaton over a finite alphabet.
///
/// The state and alphabet orders are fixed at construction and all indices
/// refer to them. Construction only checks shapes; whether the matrices are
/// stochastic and the initial masses sum to 1 is the business of
/// [`ProbAutomaton::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbAutomaton {
    states: Vec<String>,
    alphabet: Vec<String>,
    initial: Distribution,
    /// `matrices[symbol][from][to]`
    matrices: Vec<Vec<Vec<Rational>>>,
    accepting: BTreeSet<usize>,
}

impl ProbAutomaton {
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        initial: Distribution,
        matrices: Vec<Vec<Vec<Rational>>>,
        accepting: BTreeSet<usize>,
    ) -> Self {
        let n = states.len();
        assert_eq!(initial.len(), n, "initial distribution has wrong length");
        assert_eq!(matrices.len(), alphabet.len(), "one matrix per symbol");
        for m in &matrices {
            assert_eq!(m.len(), n, "matrix has wrong row count");
            for row in m {
                assert_eq!(row.len(), n, "matrix row has wrong length");
            }
        }
        if let Some(&q) = accepting.iter().next_back() {
            assert!(q < n, "accepting state out of range");
        }
        ProbAutomaton {
            states,
            alphabet,
            initial,
            matrices,
            accepting,
        }
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, i: usize) -> &str {
        &self.states[i]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn symbol_index(&self, token: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == token)
    }

    pub fn initial(&self) -> &Distribution {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    /// The matrix of `symbol`, by index into the alphabet.
    pub fn matrix(&self, symbol: usize) -> &Vec<Vec<Rational>> {
        &self.matrices[symbol]
    }

    pub fn entry(&self, symbol: usize, from: usize, to: usize) -> &Rational {
        &self.matrices[symbol][from][to]
    }

    /// The same automaton with a different accepting set.
    pub fn with_accepting(&self, accepting: BTreeSet<usize>) -> ProbAutomaton {
        let mut a = self.clone();
        if let Some(&q) = accepting.iter().next_back() {
            assert!(q < a.n_states(), "accepting state out of range");
        }
        a.accepting = accepting;
        a
    }

    /// The same automaton with every state in `states` made absorbing: the
    /// rows of those states are replaced by self-loops under every symbol.
    pub fn with_states_absorbing(&self, states: &BTreeSet<usize>) -> ProbAutomaton {
        let mut a = self.clone();
        for m in &mut a.matrices {
            for &q in states {
                for (to, entry) in m[q].iter_mut().enumerate() {
                    *entry = if to == q {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                }
            }
        }
        a
    }

    /// Structural defects: rows not summing to 1, negative entries, initial
    /// mass not summing to 1. The report is empty exactly when the automaton
    /// is well formed.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for (s, m) in self.matrices.iter().enumerate() {
            for (from, row) in m.iter().enumerate() {
                let mut sum = Rational::zero();
                for (to, entry) in row.iter().enumerate() {
                    if entry.is_negative() {
                        issues.push(ValidationIssue::NegativeEntry {
                            symbol: self.alphabet[s].clone(),
                            from: self.states[from].clone(),
                            to: self.states[to].clone(),
                            value: entry.clone(),
                        });
                    }
                    sum += entry;
                }
                if !sum.is_one() {
                    issues.push(ValidationIssue::RowSum {
                        symbol: self.alphabet[s].clone(),
                        state: self.states[from].clone(),
                        sum,
                    });
                }
            }
        }
        for (q, m) in self.initial.iter().enumerate() {
            if m.is_negative() {
                issues.push(ValidationIssue::NegativeInitial {
                    state: self.states[q].clone(),
                    value: m.clone(),
                });
            }
        }
        let total = self.initial.total();
        if !total.is_one() {
            issues.push(ValidationIssue::InitialSum { sum: total });
        }
        ValidationReport { issues }
    }

    /// One step of the forward equation: the distribution after reading
    /// `symbol` from `d`.
    pub fn step(&self, d: &Distribution, symbol: &str) -> Result<Distribution> {
        let s = self
            .symbol_index(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        Ok(self.step_indexed(d, s))
    }

    fn step_indexed(&self, d: &Distribution, symbol: usize) -> Distribution {
        assert_eq!(d.len(), self.n_states());
        let m = &self.matrices[symbol];
        let mut out = Distribution::zero(self.n_states());
        for (from, mass) in d.mass.iter().enumerate() {
            if mass.is_zero() {
                continue;
            }
            for (to, p) in m[from].iter().enumerate() {
                if !p.is_zero() {
                    out.mass[to] += mass * p;
                }
            }
        }
        out
    }

    /// The distribution after reading the whole finite word from the initial
    /// distribution.
    ///
    /// Internally this runs on integer numerators over one common
    /// denominator, with per-run matrix powers folded as a balanced product
    /// tree, so run-length-compressed words with runs in the millions stay
    /// fast: there is no rational reduction until the very end.
    pub fn run_finite(&self, w: &Word) -> Result<Distribution> {
        self.run_from(self.initial.clone(), w)
    }

    /// As [`ProbAutomaton::run_finite`] but starting from `d`.
    pub fn run_from(&self, d: Distribution, w: &Word) -> Result<Distribution> {
        assert_eq!(d.len(), self.n_states());
        Ok(self.run_scaled(ScaledDist::from_distribution(&d), w)?.to_distribution())
    }

    /// Scaled integer core of [`ProbAutomaton::run_from`].
    pub(crate) fn run_scaled(&self, start: ScaledDist, w: &Word) -> Result<ScaledDist> {
        if w.is_empty() {
            return Ok(start);
        }
        let mut by_symbol: Vec<Option<(Vec<Vec<BigInt>>, BigInt)>> =
            vec![None; self.alphabet.len()];
        let mut mats: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(w.runs().len());
        let mut den = start.den;
        for (tok, count) in w.runs() {
            let s = self
                .symbol_index(tok)
                .ok_or_else(|| Error::UnknownSymbol(tok.clone()))?;
            if by_symbol[s].is_none() {
                by_symbol[s] = Some(self.integer_matrix(s));
            }
            let (num_mat, d) = by_symbol[s].as_ref().expect("just filled");
            mats.push(int_mat_pow(num_mat, *count));
            let count = u32::try_from(*count).expect("run length fits u32");
            den *= d.pow(count);
        }
        // Balanced fold: multiplying neighbours of similar size keeps the
        // bignum multiplications subquadratic overall.
        while mats.len() > 1 {
            mats = fold_adjacent(mats);
        }
        let product = mats.pop().expect("word is nonempty");
        let n = self.n_states();
        let mut nums = vec![BigInt::zero(); n];
        for (i, v) in start.nums.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for (j, p) in product[i].iter().enumerate() {
                if !p.is_zero() {
                    nums[j] += v * p;
                }
            }
        }
        Ok(ScaledDist { nums, den })
    }

    /// The matrix of `symbol` as integer numerators over one denominator.
    fn integer_matrix(&self, symbol: usize) -> (Vec<Vec<BigInt>>, BigInt) {
        let m = &self.matrices[symbol];
        let mut den = BigInt::one();
        for row in m {
            for e in row {
                let g = BigInt::from(big_gcd(den.magnitude(), e.denom().magnitude()));
                den = &den / g * e.denom();
            }
        }
        let nums = m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.numer() * (&den / e.denom()))
                    .collect()
            })
            .collect();
        (nums, den)
    }

    /// Accepting mass after the whole finite word: the acceptance probability
    /// of `w` read as a finite word.
    pub fn finite_acceptance(&self, w: &Word) -> Result<Rational> {
        Ok(self.run_finite(w)?.mass_in(&self.accepting))
    }

    /// States whose row is the identity under every symbol.
    pub fn absorbing_states(&self) -> BTreeSet<usize> {
        (0..self.n_states())
            .filter(|&q| {
                self.matrices
                    .iter()
                    .all(|m| m[q][q].is_one())
            })
            .collect()
    }

    /// Absorption structure relative to [`ProbAutomaton::absorbing_states`].
    pub fn classify(&self) -> Classification {
        let absorbing = self.absorbing_states();
        let is_absorbing = (0..self.n_states())
            .filter(|q| !absorbing.contains(q))
            .all(|q| {
                self.matrices.iter().all(|m| {
                    absorbing
                        .iter()
                        .any(|&c| m[q][c].is_positive())
                })
            });
        let is_acceptance_absorbing = self.accepting.is_subset(&absorbing);
        Classification {
            is_absorbing,
            is_acceptance_absorbing,
        }
    }
}

/// A distribution as integer numerators over one shared denominator. This is
/// the working form of every long computation; it becomes a [`Distribution`]
/// again with a single reduction per entry at the end.
pub(crate) struct ScaledDist {
    pub(crate) nums: Vec<BigInt>,
    pub(crate) den: BigInt,
}

impl ScaledDist {
    pub(crate) fn from_distribution(d: &Distribution) -> ScaledDist {
        let mut den = BigInt::one();
        for m in d.iter() {
            let g = BigInt::from(big_gcd(den.magnitude(), m.denom().magnitude()));
            den = &den / g * m.denom();
        }
        let nums = d.iter().map(|m| m.numer() * (&den / m.denom())).collect();
        ScaledDist { nums, den }
    }

    pub(crate) fn to_distribution(&self) -> Distribution {
        Distribution::from_masses(
            self.nums
                .iter()
                .map(|n| reduced_ratio(n.clone(), self.den.clone()))
                .collect(),
        )
    }
}

fn int_mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for (j, bkj) in b[k].iter().enumerate() {
                if !bkj.is_zero() {
                    out[i][j] += aik * bkj;
                }
            }
        }
    }
    out
}

fn int_mat_pow(m: &[Vec<BigInt>], mut e: usize) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let mut result: Option<Vec<Vec<BigInt>>> = None;
    let mut base = m.to_vec();
    loop {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => int_mat_mul(&r, &base),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = int_mat_mul(&base, &base);
    }
    result.unwrap_or_else(|| {
        let mut id = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in id.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        id
    })
}

/// One level of the balanced product fold, preserving order.
fn fold_adjacent(mats: Vec<Vec<Vec<BigInt>>>) -> Vec<Vec<Vec<BigInt>>> {
    let mut out = Vec::with_capacity(mats.len().div_ceil(2));
    let mut iter = mats.into_iter();
    while let Some(a) = iter.next() {
        match iter.next() {
            Some(b) => out.push(int_mat_mul(&a, &b)),
            None => out.push(a),
        }
    }
    out
}

/// Result of [`ProbAutomaton::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Every non-absorbing state moves into the absorbing set with positive
    /// probability under every symbol.
    pub is_absorbing: bool,
    /// The accepting set consists of absorbing states.
    pub is_acceptance_absorbing: bool,
}

/// One structural defect found by validation.
#[derive(Clone, Debug, PartialEq)]
pub enum ValidationIssue {
    RowSum {
        symbol: String,
        state: String,
        sum: Rational,
    },
    NegativeEntry {
        symbol: String,
        from: String,
        to: String,
        value: Rational,
    },
    NegativeInitial {
        state: String,
        value: Rational,
    },
    InitialSum {
        sum: Rational,
    },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::RowSum { symbol, state, sum } => {
                write!(f, "row sum {sum} != 1 at ({symbol}, {state})")
            }
            ValidationIssue::NegativeEntry {
                symbol,
                from,
                to,
                value,
            } => write!(
                f,
                "negative entry {value} at ({symbol}, {from} -> {to})"
            ),
            ValidationIssue::NegativeInitial { state, value } => {
                write!(f, "negative initial mass {value} at {state}")
            }
            ValidationIssue::InitialSum { sum } => {
                write!(f, "initial mass {sum} != 1")
            }
        }
    }
}

/// All structural defects of one automaton; empty means well formed.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ValidationReport {
    issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn issues(&self) -> &[ValidationIssue] {
        &self.issues
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for issue in &self.issues {
            writeln!(f, "{issue}")?;
        }
        Ok(())
    }
}
