//! Build the equality gadget for a solvable correspondence instance and
//! watch it sit exactly on its threshold for the encoded solution.
//!
//! Run with: cargo run --example equality_gadget

use paw::pcp::{solve_bounded, equality_gadget, PcpInstance};
use paw::{eval_lasso, LassoWord, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = PcpInstance::from_digit_strings(
        3,
        &[("a", "1", "111"), ("b", "10111", "10"), ("c", "10", "0")],
    )?;
    let gadget = equality_gadget(&inst)?;
    println!(
        "gadget: {} states, condition {}, threshold {}",
        gadget.automaton.n_states(),
        gadget.condition.token(),
        gadget.threshold
    );

    let solution = solve_bounded(&inst, 4).expect("this instance has a four-letter solution");
    println!("bounded solver found the match: {solution}");

    // A candidate is presented as the lasso (w $, $): spell the word, then
    // raise the end marker forever.
    let marker = Word::parse("$");
    let on_match = LassoWord::new(solution.concat(&marker), marker.clone())?;
    let v = eval_lasso(&gadget.automaton, gadget.condition, &on_match)?;
    println!("value on {on_match}  = {v}  (threshold hit: the images agree)");

    let near_miss = LassoWord::new(Word::parse("b a a $"), marker)?;
    let v = eval_lasso(&gadget.automaton, gadget.condition, &near_miss)?;
    println!("value on {near_miss}  = {v}  (off the threshold: no match)");
    Ok(())
}
