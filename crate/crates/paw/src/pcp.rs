//! Post correspondence instances, the digit-fraction encoding, and the
//! automata gadgets built from it.
//!
//! A correspondence instance consists of two morphisms mapping instance
//! symbols to digit strings over a base `k`. The encoding sends a digit
//! string to the rational obtained by reading it as a fraction in base `k`
//! (see [`digit_fraction`]); the encoder automata track that fraction for
//! either morphism with probabilities, and the gadgets combine encoders so
//! that a threshold question about the gadget's value answers whether the
//! instance has a solution.

use std::collections::{HashSet, VecDeque};

use num_traits::{One, Signed, Zero};

use crate::automaton::{Condition, Distribution, ProbAutomaton};
use crate::combinators::{
    complement_absorbing_safety, constant_automaton, convex_combine, product,
};
use crate::error::{Error, Result};
use crate::rational::{one_minus, pow, rat, Rational};
use crate::word::Word;

/// End-of-input marker appended to the instance alphabet by every gadget.
pub const MARKER: &str = "$";

/// Reserved symbols that may not appear in an instance alphabet; the
/// constructions in this module and in [`crate::limit`] claim them.
pub const RESERVED_SYMBOLS: [&str; 2] = ["$", "#"];

/// Largest supported digit base. Bases up to 10 keep every digit a single
/// character, which keeps the text format for instances unambiguous.
pub const MAX_BASE: u32 = 10;

/// Selects one of the two morphisms of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Morphism {
    First,
    Second,
}

/// A Post correspondence instance: a digit base and, per symbol, the two
/// morphism images as digit strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcpInstance {
    base: u32,
    symbols: Vec<String>,
    images: Vec<(Vec<u32>, Vec<u32>)>,
}

impl PcpInstance {
    /// Builds an instance from `(symbol, first image, second image)` triples.
    ///
    /// The base must lie in `2..=10`, symbols must be distinct and must not
    /// collide with [`RESERVED_SYMBOLS`], and every digit must be below the
    /// base. Images with a leading zero are accepted but logged: the
    /// fraction encoding is not injective on them, so gadget thresholds may
    /// report spurious matches.
    pub fn new(base: u32, pairs: Vec<(String, Vec<u32>, Vec<u32>)>) -> Result<Self> {
        if base < 2 {
            return Err(Error::BaseTooSmall);
        }
        if base > MAX_BASE {
            return Err(Error::BaseTooLarge(base));
        }
        let mut symbols = Vec::with_capacity(pairs.len());
        let mut images = Vec::with_capacity(pairs.len());
        for (symbol, first, second) in pairs {
            if RESERVED_SYMBOLS.contains(&symbol.as_str()) {
                return Err(Error::AlphabetCollision(symbol));
            }
            if symbols.contains(&symbol) {
                return Err(Error::DuplicateSymbol(symbol));
            }
            for image in [&first, &second] {
                for &digit in image {
                    if digit >= base {
                        return Err(Error::DigitOutOfRange { digit, base });
                    }
                }
                if image.first() == Some(&0) {
                    log::warn!(
                        "image for `{symbol}` has a leading zero; \
                         the fraction encoding is not injective on it"
                    );
                }
            }
            symbols.push(symbol);
            images.push((first, second));
        }
        Ok(PcpInstance {
            base,
            symbols,
            images,
        })
    }

    /// Convenience constructor from digit strings, e.g. `("a", "1", "10")`.
    /// An image written `-` is empty.
    pub fn from_digit_strings(base: u32, pairs: &[(&str, &str, &str)]) -> Result<Self> {
        let parse = |text: &str| -> Result<Vec<u32>> {
            if text == "-" {
                return Ok(Vec::new());
            }
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::DigitOutOfRange { digit: u32::MAX, base })
                })
                .collect()
        };
        let mut triples = Vec::with_capacity(pairs.len());
        for (symbol, first, second) in pairs {
            triples.push((symbol.to_string(), parse(first)?, parse(second)?));
        }
        PcpInstance::new(base, triples)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    /// The image of one symbol under the chosen morphism.
    pub fn image(&self, morphism: Morphism, symbol: &str) -> Result<&[u32]> {
        let i = self
            .symbols
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        Ok(match morphism {
            Morphism::First => &self.images[i].0,
            Morphism::Second => &self.images[i].1,
        })
    }

    /// The image of a whole word: the concatenation of its letters' images.
    pub fn apply(&self, morphism: Morphism, w: &Word) -> Result<Vec<u32>> {
        let mut digits = Vec::new();
        for token in w.iter() {
            digits.extend_from_slice(self.image(morphism, token)?);
        }
        Ok(digits)
    }

    /// The length of the longest image across both morphisms.
    pub fn max_image_len(&self) -> usize {
        self.images
            .iter()
            .flat_map(|(a, b)| [a.len(), b.len()])
            .max()
            .unwrap_or(0)
    }

    /// Whether `w` is a solution: nonempty with equal images.
    pub fn is_solution(&self, w: &Word) -> bool {
        !w.is_empty()
            && match (self.apply(Morphism::First, w), self.apply(Morphism::Second, w)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            }
    }

    /// The gadget alphabet: the instance symbols followed by the marker.
    pub fn marked_alphabet(&self) -> Vec<String> {
        let mut alphabet = self.symbols.clone();
        alphabet.push(MARKER.to_string());
        alphabet
    }
}

/// Reads a digit string as a fraction: the last digit contributes at the
/// first position behind the point, so `digit_fraction("10") = 1/4` in
/// base 2. Equivalently, appending a digit `d` maps `x` to `(x + d) / k`.
pub fn digit_fraction(digits: &[u32], base: u32) -> Rational {
    let k = Rational::from_integer(base.into());
    let mut acc = Rational::zero();
    for &d in digits {
        acc = (acc + Rational::from_integer(d.into())) / &k;
    }
    acc
}

/// The fraction encoding of the image of `w` under the chosen morphism.
pub fn image_fraction(p: &PcpInstance, morphism: Morphism, w: &Word) -> Result<Rational> {
    Ok(digit_fraction(&p.apply(morphism, w)?, p.base()))
}

/// The per-letter scale `base^(-len(image))`: reading one more letter
/// shrinks the weight of everything already read by this factor, which is
/// what makes [`image_fraction`] satisfy the recurrence
/// `fraction(w sigma) = fraction(sigma) + fraction(w) * scale(sigma)`.
pub fn image_scale(p: &PcpInstance, morphism: Morphism, symbol: &str) -> Result<Rational> {
    let len = p.image(morphism, symbol)?.len();
    Ok(pow(&rat(1, p.base() as i64), len as u64))
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

/// The four-state encoder automaton for one morphism of an instance.
///
/// States `track`, `carry`, `out`, `hit`; accepting all but `out`. While
/// reading instance symbols, half the mass drains to `out` each step and
/// the split between `track` and `carry` follows the image fraction: after
/// a marker-free word `w` the distribution is
/// `(2^-|w| (1 - f), 2^-|w| f, 1 - 2^-|w|, 0)` with `f` the image fraction
/// of `w`. The marker reveals the split: it sends `track` to `out` and
/// `carry` to the accepting sink `hit`, so under safety the value of
/// `(w $, $)` is `2^-|w|` times the image fraction of `w`.
pub fn encoder_automaton(p: &PcpInstance, morphism: Morphism) -> ProbAutomaton {
    let n = 4;
    let (track, carry, hit) = (0, 1, 3);
    let half = rat(1, 2);
    let alphabet = p.marked_alphabet();
    let mut matrices = Vec::with_capacity(alphabet.len());
    for symbol in p.symbols() {
        let f = image_fraction(p, morphism, &Word::from_tokens([symbol.as_str()])).unwrap();
        let s = image_scale(p, morphism, symbol).unwrap();
        let mut m = identity_rows(n);
        m[track] = vec![
            &half * one_minus(&f),
            &half * &f,
            half.clone(),
            Rational::zero(),
        ];
        m[carry] = vec![
            &half * (one_minus(&f) - &s),
            &half * (&f + &s),
            half.clone(),
            Rational::zero(),
        ];
        matrices.push(m);
    }
    let mut marker = identity_rows(n);
    marker[track] = vec![
        Rational::zero(),
        Rational::zero(),
        Rational::one(),
        Rational::zero(),
    ];
    marker[carry] = vec![
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::one(),
    ];
    matrices.push(marker);
    ProbAutomaton::new(
        vec![
            "track".to_string(),
            "carry".to_string(),
            "out".to_string(),
            "hit".to_string(),
        ],
        alphabet,
        Distribution::point(n, track),
        matrices,
        [track, carry, hit].into_iter().collect(),
    )
}

/// A deterministic safety automaton whose value is 1 on marker-free words
/// and 0 on words containing the marker.
pub fn marker_free_automaton(p: &PcpInstance) -> ProbAutomaton {
    let alphabet = p.marked_alphabet();
    let mut matrices = Vec::with_capacity(alphabet.len());
    for _ in p.symbols() {
        matrices.push(identity_rows(2));
    }
    let mut marker = identity_rows(2);
    marker[0] = vec![Rational::zero(), Rational::one()];
    matrices.push(marker);
    ProbAutomaton::new(
        vec!["clean".to_string(), "seen".to_string()],
        alphabet,
        Distribution::point(2, 0),
        matrices,
        [0].into_iter().collect(),
    )
}

/// A deterministic reachability automaton whose value is 1 exactly on words
/// containing the marker; its accepting sink makes it acceptance-absorbing.
pub fn marker_reach_automaton(p: &PcpInstance) -> ProbAutomaton {
    marker_free_automaton(p).with_accepting([1].into_iter().collect())
}

/// The decay automaton: mass `damping` survives each instance symbol with
/// probability `base^(-2 (z + 1))` where `z` is the longest image length,
/// and is locked in on the marker. Under safety its value on `(w $, $)` is
/// `damping * base^(-2 (z + 1) |w|)`; on marker-free words it is 0.
///
/// Every image must be nonempty: the decay rate must undercut the product
/// of the two per-letter scales, which a zero-length image would break.
pub fn decay_automaton(p: &PcpInstance, damping: &Rational) -> Result<ProbAutomaton> {
    if !damping.is_positive() || damping > &Rational::one() {
        return Err(Error::BadDamping(damping.clone()));
    }
    for symbol in p.symbols() {
        if p.image(Morphism::First, symbol)?.is_empty()
            || p.image(Morphism::Second, symbol)?.is_empty()
        {
            return Err(Error::EmptyImage(symbol.clone()));
        }
    }
    let z = p.max_image_len();
    let survive = pow(&rat(1, p.base() as i64), 2 * (z as u64 + 1));
    let n = 3;
    let (live, done, lost) = (0, 1, 2);
    let alphabet = p.marked_alphabet();
    let mut matrices = Vec::with_capacity(alphabet.len());
    for _ in p.symbols() {
        let mut m = identity_rows(n);
        m[live] = vec![survive.clone(), Rational::zero(), one_minus(&survive)];
        matrices.push(m);
    }
    let mut marker = identity_rows(n);
    marker[live] = vec![Rational::zero(), Rational::one(), Rational::zero()];
    matrices.push(marker);
    let mut initial = vec![Rational::zero(); n];
    initial[live] = damping.clone();
    initial[lost] = one_minus(damping);
    Ok(ProbAutomaton::new(
        vec!["live".to_string(), "done".to_string(), "lost".to_string()],
        alphabet,
        Distribution::from_masses(initial),
        matrices,
        [live, done].into_iter().collect(),
    ))
}

/// A gadget automaton bundled with the threshold and condition that make it
/// a decision instance, plus the named components it was assembled from.
#[derive(Clone, Debug)]
pub struct GadgetBundle {
    pub kind: String,
    pub automaton: ProbAutomaton,
    pub condition: Condition,
    pub threshold: Rational,
    pub components: Vec<(String, ProbAutomaton)>,
}

/// The equality gadget: an even mixture of the first encoder, the safety
/// complement of the second encoder, and the marker-free automaton, with
/// threshold 1/3 under safety.
///
/// On a lasso `(w $, $)` with `w` marker-free its value is
/// `1/3 + (1/3) 2^-|w| (f1(w) - f2(w))` with `f_i` the image fractions, so
/// the value hits the threshold exactly on encoding matches; marker-free
/// words evaluate to 2/3. The instance is solvable if and only if some
/// nonempty `w` brings the value to exactly 1/3.
pub fn equality_gadget(p: &PcpInstance) -> Result<GadgetBundle> {
    let first = encoder_automaton(p, Morphism::First);
    let second = encoder_automaton(p, Morphism::Second);
    let second_complement = complement_absorbing_safety(&second)?;
    let marker_free = marker_free_automaton(p);
    let third = rat(1, 3);
    let automaton = convex_combine(&[
        (third.clone(), first.clone()),
        (third.clone(), second_complement.clone()),
        (third.clone(), marker_free.clone()),
    ])?;
    Ok(GadgetBundle {
        kind: "equality".to_string(),
        automaton,
        condition: Condition::Safety,
        threshold: third,
        components: vec![
            ("encoder-first".to_string(), first),
            ("encoder-second-complement".to_string(), second_complement),
            ("marker-free".to_string(), marker_free),
        ],
    })
}

/// The value gadget: threshold 1/8 under safety, strict on the solvable
/// side.
///
/// Two opposed encoder mixtures are multiplied, which turns the encoding
/// difference into a quadratic penalty below 1/4; mixing with a damped
/// decay automaton adds a reward that beats the penalty exactly when some
/// word matches. On `(w $, $)` with `w` marker-free the value is
/// `1/8 - d^2/8 + r^|w|/8` where `d = 2^-|w| (f1(w) - f2(w))` and `r` is
/// the decay rate, so the instance is solvable if and only if some lasso
/// word evaluates strictly above 1/8; marker-free words evaluate to 1/8.
pub fn value_gadget(p: &PcpInstance) -> Result<GadgetBundle> {
    let half = rat(1, 2);
    let first = encoder_automaton(p, Morphism::First);
    let second = encoder_automaton(p, Morphism::Second);
    let diff_left = convex_combine(&[
        (half.clone(), first.clone()),
        (half.clone(), complement_absorbing_safety(&second)?),
    ])?;
    let diff_right = convex_combine(&[
        (half.clone(), second),
        (half.clone(), complement_absorbing_safety(&first)?),
    ])?;
    let diff_product = product(&diff_left, &diff_right)?;
    let decay = decay_automaton(p, &rat(1, 4))?;
    let automaton = convex_combine(&[
        (half.clone(), diff_product.clone()),
        (half, decay.clone()),
    ])?;
    Ok(GadgetBundle {
        kind: "value".to_string(),
        automaton,
        condition: Condition::Safety,
        threshold: rat(1, 8),
        components: vec![
            ("difference-left".to_string(), diff_left),
            ("difference-right".to_string(), diff_right),
            ("difference-product".to_string(), diff_product),
            ("decay".to_string(), decay),
        ],
    })
}

/// Moves a threshold instance `(automaton, from)` to an equivalent one with
/// threshold `to`, by mixing with a constant automaton. Values move by an
/// affine map that fixes the order relative to the threshold: strictly
/// above, exactly at, and strictly below are each preserved.
pub fn rescale(a: &ProbAutomaton, from: &Rational, to: &Rational) -> Result<ProbAutomaton> {
    for t in [from, to] {
        if !(t.is_positive() && t < &Rational::one()) {
            return Err(Error::ThresholdOutOfRange(t.clone()));
        }
    }
    if from == to {
        return Ok(a.clone());
    }
    let alphabet = a.alphabet().to_vec();
    if to < from {
        let keep = to / from;
        convex_combine(&[
            (keep.clone(), a.clone()),
            (one_minus(&keep), constant_automaton(&Rational::zero(), &alphabet)?),
        ])
    } else {
        let keep = one_minus(to) / one_minus(from);
        convex_combine(&[
            (keep.clone(), a.clone()),
            (one_minus(&keep), constant_automaton(&Rational::one(), &alphabet)?),
        ])
    }
}

/// Searches for the shortest solution word of length at most `max_len`, by
/// breadth-first search over overhang configurations; among equally short
/// solutions the one first in symbol order wins. Returns `None` when no
/// solution exists within the bound.
pub fn solve_bounded(p: &PcpInstance, max_len: usize) -> Option<Word> {
    // A configuration after reading w: the images agree on their common
    // prefix and one side is ahead by an overhang of digits. Words whose
    // images diverge earlier can never become solutions and are dropped.
    type State = (Morphism, Vec<u32>);
    let start: State = (Morphism::First, Vec::new());
    let mut seen: HashSet<State> = [start.clone()].into_iter().collect();
    let mut queue: VecDeque<(State, Vec<usize>)> = VecDeque::new();
    queue.push_back((start, Vec::new()));
    while let Some(((ahead, overhang), word)) = queue.pop_front() {
        if word.len() == max_len {
            continue;
        }
        for (i, _symbol) in p.symbols().iter().enumerate() {
            let (first_img, second_img) = &p.images[i];
            // Extend the longer side's overhang by its image and compare
            // with the shorter side's image.
            let (mut long, short): (Vec<u32>, &[u32]) = match ahead {
                Morphism::First => {
                    let mut long = overhang.clone();
                    long.extend_from_slice(first_img);
                    (long, second_img)
                }
                Morphism::Second => {
                    let mut long = overhang.clone();
                    long.extend_from_slice(second_img);
                    (long, first_img)
                }
            };
            let next: State = if long.len() >= short.len() {
                if !long.starts_with(short) {
                    continue;
                }
                long.drain(..short.len());
                if long.is_empty() {
                    (Morphism::First, long)
                } else {
                    (ahead, long)
                }
            } else {
                if !short.starts_with(&long) {
                    continue;
                }
                let flipped = match ahead {
                    Morphism::First => Morphism::Second,
                    Morphism::Second => Morphism::First,
                };
                (flipped, short[long.len()..].to_vec())
            };
            let mut word = word.clone();
            word.push(i);
            if next.1.is_empty() {
                return Some(Word::from_tokens(
                    word.iter().map(|&i| p.symbols[i].as_str()),
                ));
            }
            if seen.insert(next.clone()) {
                queue.push_back((next, word));
            }
        }
    }
    None
}
