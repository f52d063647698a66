//! A pair of automata whose combined value can be pushed arbitrarily close
//! to 1 but never reaches it, together with certified witness words, and
//! the wrapper that plants the same behavior around any automaton.
//!
//! Run with: cargo run --example limit_witness

use paw::combinators::constant_automaton;
use paw::limit::{embed_limit_reduction, limit_pair, pair_value, witness_sequence};
use paw::rational::decimal_string;
use paw::{eval_lasso, rat, Condition, LassoWord, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = rat(3, 4);
    let pair = limit_pair(&x)?;

    for eps in [rat(1, 4), rat(1, 8), rat(1, 32)] {
        let ws = witness_sequence(&x, &eps)?;
        assert!(ws.verify());
        let word = ws.word();
        let letters = word.prefix().len() + word.period().len();
        let value = eval_lasso(pair.combined(), Condition::Reachability, &word)?;
        println!(
            "eps {:>4}: {:>5} blocks, {:>6} letters, value {} > 1 - 2 eps",
            eps.to_string(),
            ws.ns.len(),
            letters,
            decimal_string(&value),
        );
    }

    // The wrapper plays the same game, spending one flip of the wrapped
    // automaton per coin toss. Wrapping the constant 3/4 reproduces the
    // plain pair exactly: flips are empty, so each one is coin then probe.
    let wrapped = embed_limit_reduction(&constant_automaton(&rat(3, 4), &["t".to_string()])?)?;
    let ns = [1, 2, 3];
    let mut prefix = Word::parse("");
    for &n in &ns {
        for _ in 0..n {
            prefix.push("a");
            prefix.push("#");
        }
        prefix.push("b");
    }
    prefix.push("$");
    let word = LassoWord::new(prefix, Word::parse("$"))?;
    let value = eval_lasso(&wrapped, Condition::Reachability, &word)?;
    println!("wrapped constant on blocks {ns:?}: value {value}");
    assert_eq!(value, pair_value(&x, &ns));
    Ok(())
}
