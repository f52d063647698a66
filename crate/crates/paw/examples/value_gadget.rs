//! The value gadget turns "does a match exist" into "does any word score
//! above 1/8", and rescale moves that threshold anywhere strictly inside
//! the unit interval.
//!
//! Run with: cargo run --example value_gadget

use paw::pcp::{rescale, solve_bounded, value_gadget, PcpInstance};
use paw::{eval_lasso, rat, LassoWord, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = PcpInstance::from_digit_strings(2, &[("a", "1", "1")])?;
    let gadget = value_gadget(&inst)?;
    println!("condition {}, threshold {}", gadget.condition.token(), gadget.threshold);

    let solution = solve_bounded(&inst, 1).expect("the single letter is already a match");
    let marker = Word::parse("$");
    let on_match = LassoWord::new(solution.concat(&marker), marker)?;
    let v = eval_lasso(&gadget.automaton, gadget.condition, &on_match)?;
    println!("match scores       {v}  (above the threshold)");

    let silent = LassoWord::parse("; a")?;
    let v = eval_lasso(&gadget.automaton, gadget.condition, &silent)?;
    println!("marker-free scores {v}    (the threshold itself, never exceeded)");

    // The same separation, moved to one half.
    let moved = rescale(&gadget.automaton, &gadget.threshold, &rat(1, 2))?;
    let v = eval_lasso(&moved, gadget.condition, &on_match)?;
    println!("after rescaling the threshold to 1/2 the match scores {v}");
    Ok(())
}
