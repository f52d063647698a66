//! Qualitative questions need no thresholds: almost-sure safety, limit
//! safety and positive reachability, each answered with a witness that can
//! be checked by evaluation.
//!
//! Run with: cargo run --example almost_safety

use paw::pcp::{
    encoder_automaton, marker_free_automaton, marker_reach_automaton, Morphism, PcpInstance,
};
use paw::qualitative::{
    decide_almost_safety, decide_limit_safety, decide_positive_reachability,
};
use paw::{eval_lasso, Condition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = PcpInstance::from_digit_strings(2, &[("a", "1", "1")])?;

    // Marker-free words keep this automaton safe forever.
    let free = marker_free_automaton(&inst);
    let (yes, witness) = decide_almost_safety(&free);
    println!("marker automaton almost-surely safe: {yes}");
    if let Some(w) = witness {
        let v = eval_lasso(&free, Condition::Safety, &w)?;
        println!("  witness {w} evaluates to {v}");
    }

    // The encoder halves its safe mass on every letter: no word is safe
    // with probability one, and none get arbitrarily close either.
    let enc = encoder_automaton(&inst, Morphism::First);
    let (almost, _) = decide_almost_safety(&enc);
    let (limit, _) = decide_limit_safety(&enc);
    println!("encoder almost-surely safe: {almost}, safe in the limit: {limit}");

    // Reaching the marker tracker positively is easy: any word with $.
    let reach = marker_reach_automaton(&inst);
    let (yes, witness) = decide_positive_reachability(&reach);
    println!("marker positively reachable: {yes}");
    if let Some(w) = witness {
        let v = eval_lasso(&reach, Condition::Reachability, &w)?;
        println!("  witness {w} evaluates to {v}");
    }
    Ok(())
}
