//! The limit gadget pair, witness sequences for it, and the embedding that
//! turns an acceptance-absorbing reachability automaton into a limit
//! instance.
//!
//! The pair is a two-sided coin game over the letters `a`, `b` and the end
//! marker `$`. Words are structured into blocks `a^n b`; the left side wins
//! a block by surviving every coin flip in it, the right side loses one by
//! failing every flip. For bias `x` above one half the combined value on a
//! suitable block sequence comes arbitrarily close to 1 without reaching
//! it, which is what makes the pair separate limit questions from exact
//! threshold questions.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::automaton::{Distribution, ProbAutomaton};
use crate::error::{Error, Result};
use crate::pcp::MARKER;
use crate::rational::{one_minus, reduced_ratio, Rational};
use crate::word::{LassoWord, Word};

/// The coin letter: one flip of the current block.
pub const COIN: &str = "a";
/// The block separator letter.
pub const SEPARATOR: &str = "b";
/// The probe letter closing one embedded sub-block, see
/// [`embed_limit_reduction`].
pub const PROBE: &str = "#";

/// The two-sided coin game for a bias `x`, with the convex combination the
/// limit questions are asked about.
#[derive(Clone, Debug)]
pub struct LimitPair {
    x: Rational,
    left: ProbAutomaton,
    right: ProbAutomaton,
    combined: ProbAutomaton,
}

impl LimitPair {
    pub fn x(&self) -> &Rational {
        &self.x
    }

    /// Wins when some block survives every flip; reaching `win` is the
    /// reachability target.
    pub fn left(&self) -> &ProbAutomaton {
        &self.left
    }

    /// Wins on the end marker unless some earlier block failed every flip.
    pub fn right(&self) -> &ProbAutomaton {
        &self.right
    }

    /// The even mixture of the two sides.
    pub fn combined(&self) -> &ProbAutomaton {
        &self.combined
    }
}

fn identity_rows(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
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
        .collect()
}

fn game_alphabet() -> Vec<String> {
    vec![COIN.to_string(), SEPARATOR.to_string(), MARKER.to_string()]
}

/// Builds the coin game pair for a bias `x` in (0, 1).
///
/// On a structured lasso `(a^n1 b ... a^ni b $, $)` the left side's value
/// is `1 - prod_k (1 - x^nk)`, the right side's is
/// `prod_k (1 - (1-x)^nk)`, and the combined automaton averages the two;
/// [`pair_value`] computes that closed form.
pub fn limit_pair(x: &Rational) -> Result<LimitPair> {
    if !x.is_positive() || x >= &Rational::one() {
        return Err(Error::XOutOfRange(x.clone()));
    }
    let alphabet = game_alphabet();
    let n = 4;

    // Left: play, burn, win, lose. Surviving a whole block at play lets the
    // separator promote to win; one failed flip burns the block.
    let (play, burn, win, _lose) = (0, 1, 2, 3);
    let mut coin = identity_rows(n);
    coin[play] = vec![
        x.clone(),
        one_minus(x),
        Rational::zero(),
        Rational::zero(),
    ];
    let mut sep = identity_rows(n);
    sep[play] = vec![
        Rational::zero(),
        Rational::zero(),
        Rational::one(),
        Rational::zero(),
    ];
    sep[burn] = vec![
        Rational::one(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
    ];
    let mut end = identity_rows(n);
    for q in [play, burn] {
        end[q] = vec![
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
        ];
    }
    let left = ProbAutomaton::new(
        vec!["play".into(), "burn".into(), "win".into(), "lose".into()],
        alphabet.clone(),
        Distribution::point(n, play),
        vec![coin, sep, end],
        [win].into_iter().collect(),
    );

    // Right: risk, safe, done, out. Failing a whole block at risk lets the
    // separator drop to out; one successful flip is safe for the block.
    let (risk, safe, done, _out) = (0, 1, 2, 3);
    let mut coin = identity_rows(n);
    coin[risk] = vec![
        one_minus(x),
        x.clone(),
        Rational::zero(),
        Rational::zero(),
    ];
    let mut sep = identity_rows(n);
    sep[risk] = vec![
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::one(),
    ];
    sep[safe] = vec![
        Rational::one(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
    ];
    let mut end = identity_rows(n);
    for q in [risk, safe] {
        end[q] = vec![
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
        ];
    }
    let right = ProbAutomaton::new(
        vec!["risk".into(), "safe".into(), "done".into(), "out".into()],
        alphabet,
        Distribution::point(n, risk),
        vec![coin, sep, end],
        [done].into_iter().collect(),
    );

    let half = reduced_ratio(BigInt::one(), BigInt::from(2));
    let combined = crate::combinators::convex_combine(&[
        (half.clone(), left.clone()),
        (half, right.clone()),
    ])?;
    Ok(LimitPair {
        x: x.clone(),
        left,
        right,
        combined,
    })
}

/// The structured lasso `(a^n1 b ... a^ni b $, $)` for a block profile.
/// Every block must be nonempty.
pub fn structured_word(ns: &[usize]) -> LassoWord {
    assert!(!ns.is_empty(), "need at least one block");
    let mut prefix = Word::empty();
    for &n in ns {
        assert!(n > 0, "blocks must be nonempty");
        prefix.push_run(COIN, n);
        prefix.push(SEPARATOR);
    }
    prefix.push(MARKER);
    LassoWord::new(prefix, Word::from_tokens([MARKER])).unwrap()
}

/// Numerator of `prod_k (base^nk - top^nk)` over the denominator
/// `base^(sum nk)`, built incrementally in integers.
fn survival_product(top: &BigInt, base: &BigInt, ns: &[usize]) -> (BigInt, BigInt) {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for &n in ns {
        let bn = base.pow(n as u32);
        num *= &bn - top.pow(n as u32);
        den *= bn;
    }
    (num, den)
}

/// The combined pair value on the structured word for a block profile:
/// `1/2 (1 - prod_k (1 - x^nk)) + 1/2 prod_k (1 - (1-x)^nk)`.
pub fn pair_value(x: &Rational, ns: &[usize]) -> Rational {
    let p = x.numer();
    let q = x.denom();
    let co = q - p;
    let (left_num, den) = survival_product(p, q, ns);
    let (right_num, _) = survival_product(&co, q, ns);
    reduced_ratio(&den - left_num + right_num, BigInt::from(2) * den)
}

/// A certified block profile for [`witness_word`]: blocks
/// `nk = ceil(log_{1/x} k) + shift` for `k = 1..=len`, where the shift is
/// the smallest value whose profile drives the left survival product at or
/// below `eps` while keeping the right failure sum at or below `2 eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSequence {
    pub x: Rational,
    pub eps: Rational,
    pub shift: usize,
    pub ns: Vec<usize>,
}

impl WitnessSequence {
    /// The structured lasso word for this profile. Its combined pair value
    /// is at least `1 - (3/2) eps`, strictly above `1 - 2 eps`.
    pub fn word(&self) -> LassoWord {
        structured_word(&self.ns)
    }

    /// Rechecks the two exact certificate bounds from scratch:
    /// `prod_k (1 - x^nk) <= eps` and `sum_k (1-x)^nk <= 2 eps`.
    pub fn verify(&self) -> bool {
        if self.ns.is_empty() || self.ns.iter().any(|&n| n == 0) {
            return false;
        }
        let p = self.x.numer();
        let q = self.x.denom();
        let (num, den) = survival_product(p, q, &self.ns);
        if &num * self.eps.denom() > self.eps.numer() * &den {
            return false;
        }
        failure_sum_within(&one_minus(&self.x), &self.ns, &(&self.eps + &self.eps))
    }
}

/// Exactly decides `sum_k y^nk <= bound` for a rational `y`, keeping the
/// running sum over the single denominator `q^max(nk)`.
fn failure_sum_within(y: &Rational, ns: &[usize], bound: &Rational) -> bool {
    let p = y.numer();
    let q = y.denom();
    let mut num = BigInt::zero();
    let mut exp = 0usize;
    for &n in ns {
        if n > exp {
            num *= q.pow((n - exp) as u32);
            exp = n;
        }
        num += p.pow(n as u32) * q.pow((exp - n) as u32);
    }
    num * bound.denom() <= bound.numer() * q.pow(exp as u32)
}

/// Builds the smallest-shift certified block profile for a bias
/// `x` in (1/2, 1) and a tolerance `eps` in (0, 1).
///
/// For each candidate shift the profile grows until the left survival
/// product first drops to `eps` or below, decided exactly; the shift is
/// accepted if the right failure sum is still at or below `2 eps`. All
/// comparisons are exact, with a floating-point prefilter so that the big
/// integer product is only compared near the boundary.
pub fn witness_sequence(x: &Rational, eps: &Rational) -> Result<WitnessSequence> {
    let half = reduced_ratio(BigInt::one(), BigInt::from(2));
    if x <= &half || x >= &Rational::one() {
        return Err(Error::XNotAboveHalf(x.clone()));
    }
    if !eps.is_positive() || eps >= &Rational::one() {
        return Err(Error::EpsilonOutOfRange(eps.clone()));
    }
    let p = x.numer().clone();
    let q = x.denom().clone();
    let co = &q - &p;
    let x_f = x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap();
    let ln_x = x_f.ln();
    let ln_eps = (eps.numer().to_f64().unwrap() / eps.denom().to_f64().unwrap()).ln();
    let two_eps = eps + eps;

    for shift in 1usize.. {
        // Exact running state of the survival product num/den and the
        // failure sum (over denominator q^exp), plus a float estimate of
        // ln(product) used to skip exact comparisons far from eps.
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut sum_num = BigInt::zero();
        let mut sum_exp = 0usize;
        let mut ln_product = 0f64;
        let mut ns: Vec<usize> = Vec::new();

        // ceil(log_{1/x} k) maintained incrementally: the smallest m with
        // x^m <= 1/k, compared exactly as p^m * k <= q^m.
        let mut m = 0usize;
        let mut p_pow = BigInt::one();
        let mut q_pow = BigInt::one();

        let mut k: u64 = 0;
        let found = loop {
            k += 1;
            while &p_pow * k > q_pow {
                m += 1;
                p_pow *= &p;
                q_pow *= &q;
            }
            let n = m + shift;
            ns.push(n);

            let qn = q.pow(n as u32);
            num *= &qn - p.pow(n as u32);
            den *= qn;
            if n > sum_exp {
                sum_num *= q.pow((n - sum_exp) as u32);
                sum_exp = n;
            }
            sum_num += co.pow(n as u32) * q.pow((sum_exp - n) as u32);

            ln_product += (-((n as f64) * ln_x).exp()).ln_1p();
            // Exact stop test, only taken near (or past) the boundary.
            if ln_product <= ln_eps + 0.01
                && &num * eps.denom() <= eps.numer() * &den
            {
                break &sum_num * two_eps.denom()
                    <= two_eps.numer() * q.pow(sum_exp as u32);
            }
        };
        if found {
            return Ok(WitnessSequence {
                x: x.clone(),
                eps: eps.clone(),
                shift,
                ns,
            });
        }
    }
    unreachable!()
}

/// The certified witness lasso for a bias and tolerance: the structured
/// word of [`witness_sequence`], whose combined pair value exceeds
/// `1 - 2 eps`.
pub fn witness_word(x: &Rational, eps: &Rational) -> Result<LassoWord> {
    Ok(witness_sequence(x, eps)?.word())
}

/// Embeds an acceptance-absorbing reachability automaton into the coin
/// game: each flip becomes a sub-block `a w #` that runs a fresh copy of
/// `b` on `w`, and the probe letter `#` reads off acceptance as the flip
/// outcome. On words whose sub-blocks all use the same `w`, the result
/// behaves exactly like the pair with bias equal to `b`'s acceptance
/// probability of `w`.
///
/// The input must be acceptance-absorbing and its alphabet must avoid the
/// four game letters. Ill-formed words (game letters inside a sub-block,
/// or sub-block letters outside one) drain to the rejecting sinks.
pub fn embed_limit_reduction(b: &ProbAutomaton) -> Result<ProbAutomaton> {
    if !b.classify().is_acceptance_absorbing {
        return Err(Error::NotAcceptanceAbsorbing);
    }
    for sym in b.alphabet() {
        if [COIN, SEPARATOR, MARKER, PROBE].contains(&sym.as_str()) {
            return Err(Error::AlphabetCollision(sym.clone()));
        }
    }

    let nb = b.n_states();
    let n = 2 * nb + 8;
    // Skeleton states first, then the left and right copies of b.
    let (play, burn, win, lose) = (0, 1, 2, 3);
    let (risk, safe, done, out) = (4, 5, 6, 7);
    let lcopy = |q: usize| 8 + q;
    let rcopy = |q: usize| 8 + nb + q;

    let mut states: Vec<String> = [
        "play", "burn", "win", "lose", "risk", "safe", "done", "out",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for q in 0..nb {
        states.push(format!("L.{}", b.state_name(q)));
    }
    for q in 0..nb {
        states.push(format!("R.{}", b.state_name(q)));
    }

    let mut alphabet = b.alphabet().to_vec();
    alphabet.extend(
        [COIN, SEPARATOR, MARKER, PROBE]
            .iter()
            .map(|s| s.to_string()),
    );

    let mut matrices = Vec::with_capacity(alphabet.len());

    // Inner letters: run b inside the copies. A hub holding mass between
    // sub-blocks (play, risk) sees them only on ill-formed words and
    // drains; burn and safe ride out the rest of their block unchanged.
    for s in 0..b.alphabet().len() {
        let mut m = identity_rows(n);
        m[play] = unit_row(n, lose);
        m[risk] = unit_row(n, out);
        for q in 0..nb {
            m[lcopy(q)] = embed_row(n, b, s, q, lcopy);
            m[rcopy(q)] = embed_row(n, b, s, q, rcopy);
        }
        matrices.push(m);
    }

    // Coin: enter a fresh copy of b; burn and safe tolerate the letter.
    let mut coin = identity_rows(n);
    coin[play] = spread_row(n, b, lcopy);
    coin[risk] = spread_row(n, b, rcopy);
    for q in 0..nb {
        coin[lcopy(q)] = unit_row(n, lose);
        coin[rcopy(q)] = unit_row(n, out);
    }
    matrices.push(coin);

    // Separator: block boundary on the skeleton, ill-formed in a copy.
    let mut sep = identity_rows(n);
    sep[play] = unit_row(n, win);
    sep[burn] = unit_row(n, play);
    sep[risk] = unit_row(n, out);
    sep[safe] = unit_row(n, risk);
    for q in 0..nb {
        sep[lcopy(q)] = unit_row(n, lose);
        sep[rcopy(q)] = unit_row(n, out);
    }
    matrices.push(sep);

    // End marker: settles both sides.
    let mut end = identity_rows(n);
    end[play] = unit_row(n, lose);
    end[burn] = unit_row(n, lose);
    end[risk] = unit_row(n, done);
    end[safe] = unit_row(n, done);
    for q in 0..nb {
        end[lcopy(q)] = unit_row(n, lose);
        end[rcopy(q)] = unit_row(n, out);
    }
    matrices.push(end);

    // Probe: read off acceptance as the flip outcome. An accepted flip
    // keeps the left side in play and moves the right side to safety.
    let mut probe = identity_rows(n);
    for q in [play, burn] {
        probe[q] = if q == burn {
            unit_row(n, burn)
        } else {
            unit_row(n, lose)
        };
    }
    probe[risk] = unit_row(n, out);
    probe[safe] = unit_row(n, safe);
    for q in 0..nb {
        probe[lcopy(q)] = unit_row(n, if b.is_accepting(q) { play } else { burn });
        probe[rcopy(q)] = unit_row(n, if b.is_accepting(q) { safe } else { risk });
    }
    matrices.push(probe);

    let mut initial = vec![Rational::zero(); n];
    let half = reduced_ratio(BigInt::one(), BigInt::from(2));
    initial[play] = half.clone();
    initial[risk] = half;

    Ok(ProbAutomaton::new(
        states,
        alphabet,
        Distribution::from_masses(initial),
        matrices,
        [win, done].into_iter().collect(),
    ))
}

fn unit_row(n: usize, to: usize) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); n];
    row[to] = Rational::one();
    row
}

/// Row of an embedded copy under an inner letter: b's own row, laid into
/// the copy's slot.
fn embed_row(
    n: usize,
    b: &ProbAutomaton,
    symbol: usize,
    from: usize,
    slot: impl Fn(usize) -> usize,
) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); n];
    for to in 0..b.n_states() {
        row[slot(to)] = b.entry(symbol, from, to).clone();
    }
    row
}

/// Row entering a fresh copy of b: its initial distribution in the copy's
/// slot.
fn spread_row(n: usize, b: &ProbAutomaton, slot: impl Fn(usize) -> usize) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); n];
    for q in 0..b.n_states() {
        row[slot(q)] = b.initial().get(q).clone();
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Condition;
    use crate::combinators::constant_automaton;
    use crate::evaluator::eval_lasso;
    use crate::rational::rat;

    fn lasso(text: &str) -> LassoWord {
        LassoWord::parse(text).unwrap()
    }

    #[test]
    fn left_side_survives_blocks() {
        let pair = limit_pair(&rat(3, 4)).unwrap();
        // One block of two flips, never separated again: survive both.
        assert_eq!(
            eval_lasso(pair.left(), Condition::Reachability, &lasso("a a b ; a")).unwrap(),
            rat(9, 16)
        );
    }

    #[test]
    fn right_side_fails_blocks() {
        let pair = limit_pair(&rat(3, 4)).unwrap();
        assert_eq!(
            eval_lasso(pair.right(), Condition::Reachability, &lasso("a b $ ; $")).unwrap(),
            rat(3, 4)
        );
    }

    #[test]
    fn combined_matches_the_closed_form() {
        let x = rat(2, 3);
        let pair = limit_pair(&x).unwrap();
        for ns in [vec![1], vec![2, 1], vec![1, 3, 2]] {
            let w = structured_word(&ns);
            assert_eq!(
                eval_lasso(pair.combined(), Condition::Reachability, &w).unwrap(),
                pair_value(&x, &ns),
                "{ns:?}"
            );
        }
    }

    #[test]
    fn pair_value_at_even_bias_is_one_half() {
        for ns in [vec![1], vec![3, 1, 4], vec![2, 2, 2, 2]] {
            assert_eq!(pair_value(&rat(1, 2), &ns), rat(1, 2), "{ns:?}");
        }
    }

    #[test]
    fn pair_rejects_biases_outside_the_unit_interval() {
        for x in [rat(0, 1), rat(1, 1), rat(3, 2), rat(-1, 2)] {
            assert!(matches!(limit_pair(&x), Err(Error::XOutOfRange(_))), "{x}");
        }
    }

    #[test]
    fn witness_sequence_is_certified_and_small() {
        let ws = witness_sequence(&rat(3, 4), &rat(1, 4)).unwrap();
        // One single-flip block already works: survival 1/4 <= eps and
        // failure sum 1/4 <= 2 eps.
        assert_eq!(ws.shift, 1);
        assert_eq!(ws.ns, vec![1]);
        assert!(ws.verify());
        let v = eval_lasso(
            limit_pair(&rat(3, 4)).unwrap().combined(),
            Condition::Reachability,
            &ws.word(),
        )
        .unwrap();
        assert!(v > rat(1, 2));
    }

    #[test]
    fn witness_sequence_grows_blocks_logarithmically() {
        let ws = witness_sequence(&rat(2, 3), &rat(1, 4)).unwrap();
        assert_eq!(ws.shift, 1);
        assert_eq!(ws.ns, vec![1, 3]);
        assert!(ws.verify());
        let value = pair_value(&rat(2, 3), &ws.ns);
        assert_eq!(value, rat(19, 27));
        assert!(value > rat(1, 2));
    }

    #[test]
    fn witness_words_beat_the_tolerance() {
        for (x, eps) in [(rat(3, 4), rat(1, 8)), (rat(9, 10), rat(1, 8))] {
            let ws = witness_sequence(&x, &eps).unwrap();
            assert!(ws.verify(), "x={x} eps={eps}");
            let v = pair_value(&x, &ws.ns);
            assert!(v > one_minus(&(&eps + &eps)), "x={x} eps={eps} value={v}");
        }
    }

    #[test]
    fn witness_sequence_checks_its_ranges() {
        assert!(matches!(
            witness_sequence(&rat(1, 2), &rat(1, 4)),
            Err(Error::XNotAboveHalf(_))
        ));
        assert!(matches!(
            witness_sequence(&rat(1, 4), &rat(1, 4)),
            Err(Error::XNotAboveHalf(_))
        ));
        assert!(matches!(
            witness_sequence(&rat(3, 4), &rat(1, 1)),
            Err(Error::EpsilonOutOfRange(_))
        ));
        assert!(matches!(
            witness_sequence(&rat(3, 4), &rat(0, 1)),
            Err(Error::EpsilonOutOfRange(_))
        ));
    }

    #[test]
    fn tampered_witnesses_fail_verification() {
        let mut ws = witness_sequence(&rat(3, 4), &rat(1, 8)).unwrap();
        assert!(ws.verify());
        ws.ns.pop();
        assert!(!ws.verify());
    }

    #[test]
    fn embedding_a_constant_mimics_the_pair() {
        let b = constant_automaton(&rat(3, 4), &["t".to_string()]).unwrap();
        let a = embed_limit_reduction(&b).unwrap();
        assert_eq!(a.n_states(), 12);
        // Two empty-word flips, one block: the pair at bias 3/4 on ns=[2].
        assert_eq!(
            eval_lasso(&a, Condition::Reachability, &lasso("a # a # b $ ; $")).unwrap(),
            pair_value(&rat(3, 4), &[2])
        );
        assert_eq!(pair_value(&rat(3, 4), &[2]), rat(3, 4));
    }

    /// A two-state automaton over `t` that accepts exactly the words
    /// containing `t`: acceptance-absorbing with initial mass off the
    /// target.
    fn needs_t() -> ProbAutomaton {
        ProbAutomaton::new(
            vec!["wait".into(), "got".into()],
            vec!["t".to_string()],
            Distribution::point(2, 0),
            vec![vec![
                vec![rat(0, 1), rat(1, 1)],
                vec![rat(0, 1), rat(1, 1)],
            ]],
            [1].into_iter().collect(),
        )
    }

    #[test]
    fn embedding_routes_flips_by_acceptance() {
        let a = embed_limit_reduction(&needs_t()).unwrap();
        // A flip that runs t is accepted: certain win on one block.
        assert_eq!(
            eval_lasso(&a, Condition::Reachability, &lasso("a t # b $ ; $")).unwrap(),
            rat(1, 1)
        );
        // An empty flip is rejected: the left side burns, the right side
        // stays at risk and the separator puts it out.
        assert_eq!(
            eval_lasso(&a, Condition::Reachability, &lasso("a # b $ ; $")).unwrap(),
            rat(0, 1)
        );
    }

    #[test]
    fn ill_formed_words_drain() {
        let a = embed_limit_reduction(&needs_t()).unwrap();
        // Separator while inside the embedded copy.
        assert_eq!(
            eval_lasso(&a, Condition::Reachability, &lasso("a t b $ ; $")).unwrap(),
            rat(0, 1)
        );
        // Inner letter outside a sub-block.
        assert_eq!(
            eval_lasso(&a, Condition::Reachability, &lasso("t a # b $ ; $")).unwrap(),
            rat(0, 1)
        );
    }

    #[test]
    fn embedding_checks_its_preconditions() {
        // Accepting state not absorbing.
        let bad = ProbAutomaton::new(
            vec!["p".into(), "q".into()],
            vec!["t".to_string()],
            Distribution::point(2, 0),
            vec![vec![
                vec![rat(0, 1), rat(1, 1)],
                vec![rat(1, 1), rat(0, 1)],
            ]],
            [1].into_iter().collect(),
        );
        assert!(matches!(
            embed_limit_reduction(&bad),
            Err(Error::NotAcceptanceAbsorbing)
        ));
        let clash = constant_automaton(&rat(1, 2), &[COIN.to_string()]).unwrap();
        assert!(matches!(
            embed_limit_reduction(&clash),
            Err(Error::AlphabetCollision(s)) if s == COIN
        ));
    }
}
