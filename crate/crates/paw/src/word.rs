//! Finite words and lasso words.
//!
//! A [`Word`] is a finite sequence of alphabet symbols. Symbols are plain
//! string tokens; a word does not know about any particular automaton and is
//! resolved against one when used. Internally the sequence is stored as runs
//! of equal symbols, so words like `a^100000 b` stay small and the evaluator
//! can exploit the run structure. None of that is visible in the API: two
//! words are equal exactly when they spell the same symbol sequence.
//!
//! A [`LassoWord`] is an ultimately periodic infinite word `u v^omega`,
//! given by a finite prefix `u` and a nonempty period `v`.

use std::fmt;

use crate::error::{Error, Result};

/// A finite symbol sequence.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word {
    runs: Vec<(String, usize)>,
    len: usize,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut w = Word::empty();
        for t in tokens {
            w.push(t.into());
        }
        w
    }

    /// Parses a whitespace-separated token list; the empty string is the
    /// empty word.
    pub fn parse(text: &str) -> Self {
        Word::from_tokens(text.split_whitespace())
    }

    pub fn push(&mut self, token: impl Into<String>) {
        self.push_run(token, 1);
    }

    /// Appends `count` copies of `token`.
    pub fn push_run(&mut self, token: impl Into<String>, count: usize) {
        if count == 0 {
            return;
        }
        let token = token.into();
        self.len += count;
        if let Some((last, n)) = self.runs.last_mut() {
            if *last == token {
                *n += count;
                return;
            }
        }
        self.runs.push((token, count));
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Maximal runs of equal symbols, in order.
    pub fn runs(&self) -> &[(String, usize)] {
        &self.runs
    }

    /// The symbols one by one.
    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.runs
            .iter()
            .flat_map(|(tok, n)| std::iter::repeat(tok.as_str()).take(*n))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for (tok, n) in &other.runs {
            w.push_run(tok.clone(), *n);
        }
        w
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for tok in self.iter() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{tok}")?;
            first = false;
        }
        Ok(())
    }
}

/// An ultimately periodic word `u v^omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoWord {
    prefix: Word,
    period: Word,
}

impl LassoWord {
    /// Errors if the period is empty.
    pub fn new(prefix: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(LassoWord { prefix, period })
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// Parses `u ; v`: two token lists split at the first `;`.
    pub fn parse(text: &str) -> Result<Self> {
        match text.split_once(';') {
            None => Err(Error::EmptyPeriod),
            Some((u, v)) => LassoWord::new(Word::parse(u), Word::parse(v)),
        }
    }

    /// The same infinite word with the first period symbol folded into the
    /// prefix and the period rotated by one. Every acceptance value is
    /// invariant under this.
    pub fn rotated(&self) -> LassoWord {
        let mut tokens = self.period.iter();
        let head = tokens.next().expect("period is nonempty").to_string();
        let mut period = Word::from_tokens(tokens);
        period.push(head.clone());
        let mut prefix = self.prefix.clone();
        prefix.push(head);
        LassoWord { prefix, period }
    }

    /// Symbols at positions `0..n` of the infinite word.
    pub fn take(&self, n: usize) -> Word {
        let mut w = Word::empty();
        let mut remaining = n;
        for tok in self.prefix.iter() {
            if remaining == 0 {
                return w;
            }
            w.push(tok);
            remaining -= 1;
        }
        while remaining > 0 {
            for tok in self.period.iter() {
                if remaining == 0 {
                    return w;
                }
                w.push(tok);
                remaining -= 1;
            }
        }
        w
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            write!(f, "; {}", self.period)
        } else {
            write!(f, "{} ; {}", self.prefix, self.period)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs_collapse_but_sequence_is_preserved() {
        let mut w = Word::empty();
        w.push("a");
        w.push_run("a", 2);
        w.push("b");
        w.push_run("b", 0);
        w.push("a");
        assert_eq!(w.len(), 5);
        assert_eq!(w.runs().len(), 3);
        assert_eq!(
            w.iter().collect::<Vec<_>>(),
            vec!["a", "a", "a", "b", "a"]
        );
        assert_eq!(w, Word::from_tokens(["a", "a", "a", "b", "a"]));
    }

    #[test]
    fn parse_and_display_are_inverse() {
        let w = Word::parse("a b b $");
        assert_eq!(w.to_string(), "a b b $");
        assert_eq!(Word::parse(""), Word::empty());
        assert_eq!(Word::parse("  "), Word::empty());
    }

    #[test]
    fn concat_appends() {
        let u = Word::parse("a a");
        let v = Word::parse("a b");
        let uv = u.concat(&v);
        assert_eq!(uv, Word::parse("a a a b"));
        assert_eq!(uv.runs().len(), 2);
    }

    #[test]
    fn lasso_needs_a_period() {
        assert_eq!(
            LassoWord::new(Word::empty(), Word::empty()),
            Err(Error::EmptyPeriod)
        );
        assert!(LassoWord::parse("a b ;").is_err());
        assert!(LassoWord::parse("a b").is_err());
        let w = LassoWord::parse("; a").unwrap();
        assert!(w.prefix().is_empty());
        assert_eq!(w.period(), &Word::parse("a"));
        assert_eq!(w.to_string(), "; a");
    }

    #[test]
    fn rotation_spells_the_same_word() {
        let w = LassoWord::parse("a ; b c").unwrap();
        let r = w.rotated();
        assert_eq!(r.prefix(), &Word::parse("a b"));
        assert_eq!(r.period(), &Word::parse("c b"));
        assert_eq!(w.take(9), r.take(9));
    }

    #[test]
    fn take_unrolls_the_period() {
        let w = LassoWord::parse("a ; b c").unwrap();
        assert_eq!(w.take(0), Word::empty());
        assert_eq!(w.take(4), Word::parse("a b c b"));
    }
}
