//! Two independent checks on the exact evaluator: Monte Carlo sampling
//! converges to the exact value, and finite-horizon truncation bounds
//! squeeze it from both sides.
//!
//! Run with: cargo run --example simulate_vs_exact

use paw::mc::{simulate, truncation_bounds};
use paw::pcp::{equality_gadget, PcpInstance};
use paw::rational::to_f64;
use paw::{eval_lasso, LassoWord};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = PcpInstance::from_digit_strings(2, &[("a", "1", "1")])?;
    let gadget = equality_gadget(&inst)?;
    let w = LassoWord::parse("a $ ; $")?;

    let exact = eval_lasso(&gadget.automaton, gadget.condition, &w)?;
    println!("exact value {exact} = {:.6}", to_f64(&exact));

    println!("sampling:");
    for trials in [100, 1_000, 10_000] {
        let est = simulate(&gadget.automaton, gadget.condition, &w, trials, 64, 7)?;
        println!(
            "  {trials:>6} trials: mean {:.4}, standard error {:.4}",
            est.mean, est.standard_error
        );
    }

    println!("truncation:");
    for n in [0, 2, 4, 8, 12] {
        let (lo, hi) = truncation_bounds(&gadget.automaton, gadget.condition, &w, n)?;
        println!("  horizon {n:>2}: [{:.6}, {:.6}]", to_f64(&lo), to_f64(&hi));
    }
    Ok(())
}
