//! Monte Carlo estimation and exact truncation bounds, as independent
//! cross-checks of the evaluator.
//!
//! Simulation works in floating point and is only statistical evidence;
//! the truncation bounds are exact rationals that sandwich the true value
//! from both sides at every horizon.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Condition, ProbAutomaton};
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::word::LassoWord;

/// A Monte Carlo estimate, with the master seed it was produced from.
#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub trials: usize,
    pub standard_error: f64,
    pub seed: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// The per-trial generator: trials are independent streams derived from
/// the master seed, so results do not depend on evaluation order.
fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(trial as u64)))
}

fn sample_index(rng: &mut ChaCha8Rng, cumulative: &[f64]) -> usize {
    let u: f64 = rng.gen();
    cumulative
        .iter()
        .position(|&c| u < c)
        .unwrap_or(cumulative.len() - 1)
}

/// Estimates the value of a lasso word by simulating `trials` runs of
/// `horizon` steps each.
///
/// Safety and reachability are scored exactly on the truncated run
/// (violated / hit within the horizon). The three tail conditions are
/// scored on the final window of one period times the state count: a
/// quantity that converges to the true value as the horizon grows but is a
/// heuristic at any fixed horizon. The horizon must cover at least one
/// full unrolling of the lasso.
pub fn simulate(
    a: &ProbAutomaton,
    condition: Condition,
    w: &LassoWord,
    trials: usize,
    horizon: usize,
    seed: u64,
) -> Result<Estimate> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let needed = w.prefix().len() + w.period().len();
    if horizon < needed {
        return Err(Error::HorizonTooShort { horizon, needed });
    }

    let syms = |word: &crate::word::Word| -> Result<Vec<usize>> {
        word.iter()
            .map(|t| {
                a.symbol_index(t)
                    .ok_or_else(|| Error::UnknownSymbol(t.to_string()))
            })
            .collect()
    };
    let prefix = syms(w.prefix())?;
    let period = syms(w.period())?;
    let letter = |t: usize| {
        if t < prefix.len() {
            prefix[t]
        } else {
            period[(t - prefix.len()) % period.len()]
        }
    };

    let n = a.n_states();
    let cumulative_row = |masses: &mut dyn Iterator<Item = f64>| -> Vec<f64> {
        let mut acc = 0.0;
        masses
            .map(|m| {
                acc += m;
                acc
            })
            .collect()
    };
    let initial_cum = cumulative_row(&mut a.initial().iter().map(to_f64));
    let mut rows = vec![vec![Vec::new(); n]; a.alphabet().len()];
    for (s, row_set) in rows.iter_mut().enumerate() {
        for (from, row) in row_set.iter_mut().enumerate() {
            *row = cumulative_row(&mut (0..n).map(|to| to_f64(a.entry(s, from, to))));
        }
    }

    let accepting: Vec<bool> = (0..n).map(|q| a.is_accepting(q)).collect();
    let window = (period.len() * n).clamp(1, horizon + 1);
    let window_start = horizon + 1 - window;

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let mut state = sample_index(&mut rng, &initial_cum);
        let sample: f64 = match condition {
            Condition::Safety => {
                let mut ok = accepting[state];
                let mut t = 0;
                while ok && t < horizon {
                    state = sample_index(&mut rng, &rows[letter(t)][state]);
                    ok = accepting[state];
                    t += 1;
                }
                if ok {
                    1.0
                } else {
                    0.0
                }
            }
            Condition::Reachability => {
                let mut hit = accepting[state];
                let mut t = 0;
                while !hit && t < horizon {
                    state = sample_index(&mut rng, &rows[letter(t)][state]);
                    hit = accepting[state];
                    t += 1;
                }
                if hit {
                    1.0
                } else {
                    0.0
                }
            }
            Condition::Buchi | Condition::CoBuchi | Condition::LimitAvg => {
                let mut in_window = 0usize;
                let mut window_all = true;
                let mut window_any = false;
                for t in 0..=horizon {
                    if t >= window_start {
                        if accepting[state] {
                            in_window += 1;
                            window_any = true;
                        } else {
                            window_all = false;
                        }
                    }
                    if t < horizon {
                        state = sample_index(&mut rng, &rows[letter(t)][state]);
                    }
                }
                match condition {
                    Condition::Buchi => {
                        if window_any {
                            1.0
                        } else {
                            0.0
                        }
                    }
                    Condition::CoBuchi => {
                        if window_all {
                            1.0
                        } else {
                            0.0
                        }
                    }
                    _ => in_window as f64 / window as f64,
                }
            }
        };
        sum += sample;
        sum_sq += sample * sample;
    }

    let mean = sum / trials as f64;
    let standard_error = if trials > 1 {
        let variance = (sum_sq - sum * sum / trials as f64) / (trials as f64 - 1.0);
        (variance.max(0.0) / trials as f64).sqrt()
    } else {
        0.0
    };
    Ok(Estimate {
        mean,
        trials,
        standard_error,
        seed,
    })
}

/// Exact lower and upper bounds on the value after truncating the word at
/// `n` letters. The lower bounds are nondecreasing in `n`, the upper
/// bounds nonincreasing, and the true value always lies between them.
///
/// Supported for safety (lower: mass already locked in accepting absorbing
/// states, upper: mass that has not yet left the accepting set) and
/// reachability (lower: mass that has touched the target, upper: one minus
/// the mass that can no longer reach it). The three tail conditions have
/// no horizon-monotone bounds of this form.
pub fn truncation_bounds(
    a: &ProbAutomaton,
    condition: Condition,
    w: &LassoWord,
    n: usize,
) -> Result<(Rational, Rational)> {
    let letters: Vec<usize> = {
        let unrolled = w.take(n);
        unrolled
            .iter()
            .map(|t| {
                a.symbol_index(t)
                    .ok_or_else(|| Error::UnknownSymbol(t.to_string()))
            })
            .collect::<Result<_>>()?
    };

    match condition {
        Condition::Safety => {
            let accepting = a.accepting();
            let absorbing = a.absorbing_states();
            let mut alive: Vec<Rational> = (0..a.n_states())
                .map(|q| {
                    if accepting.contains(&q) {
                        a.initial().get(q).clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            for &s in &letters {
                let mut next = vec![Rational::zero(); a.n_states()];
                for from in accepting {
                    if alive[*from].is_zero() {
                        continue;
                    }
                    for to in accepting {
                        let p = a.entry(s, *from, *to);
                        if !p.is_zero() {
                            next[*to] += &alive[*from] * p;
                        }
                    }
                }
                alive = next;
            }
            let upper: Rational = alive.iter().sum();
            let lower: Rational = accepting
                .iter()
                .filter(|q| absorbing.contains(*q))
                .map(|q| alive[*q].clone())
                .sum();
            Ok((lower, upper))
        }
        Condition::Reachability => {
            // Freeze the target, then track the mass split among target,
            // states that can still reach it, and states that no longer
            // can.
            let frozen = a.with_states_absorbing(a.accepting());
            let hopeless = unreachable_from(&frozen);
            let mut d = frozen.initial().clone();
            for &s in &letters {
                let mut next = vec![Rational::zero(); frozen.n_states()];
                for from in 0..frozen.n_states() {
                    let mass = d.get(from);
                    if mass.is_zero() {
                        continue;
                    }
                    for to in 0..frozen.n_states() {
                        let p = frozen.entry(s, from, to);
                        if !p.is_zero() {
                            next[to] += mass * p;
                        }
                    }
                }
                d = crate::automaton::Distribution::from_masses(next);
            }
            let lower = d.mass_in(frozen.accepting());
            let lost: Rational = hopeless.iter().map(|&q| d.get(q).clone()).sum();
            let upper = Rational::one() - lost;
            Ok((lower, upper))
        }
        other => Err(Error::UnsupportedCondition(other)),
    }
}

/// States from which no letter sequence can put positive mass on the
/// accepting set: the complement of the backward closure of the accepting
/// set under positive transitions of any symbol.
fn unreachable_from(a: &ProbAutomaton) -> Vec<usize> {
    use num_traits::Signed;
    let n = a.n_states();
    let mut can = vec![false; n];
    let mut stack: Vec<usize> = a.accepting().iter().copied().collect();
    for &q in &stack {
        can[q] = true;
    }
    while let Some(q) = stack.pop() {
        for from in 0..n {
            if can[from] {
                continue;
            }
            let feeds = (0..a.alphabet().len()).any(|s| a.entry(s, from, q).is_positive());
            if feeds {
                can[from] = true;
                stack.push(from);
            }
        }
    }
    (0..n).filter(|&q| !can[q]).collect()
}
