//! Evaluate one automaton under all five acceptance conditions.
//!
//! Run with: cargo run --example eval_conditions

use paw::{eval_lasso, rat, Condition, Distribution, LassoWord, ProbAutomaton};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A two-state chain: from `cold`, the letter `go` flips a fair coin
    // between staying cold and warming up for good; `rest` changes nothing.
    let a = ProbAutomaton::new(
        vec!["cold".into(), "warm".into()],
        vec!["go".to_string(), "rest".to_string()],
        Distribution::point(2, 0),
        vec![
            vec![vec![rat(1, 2), rat(1, 2)], vec![rat(0, 1), rat(1, 1)]],
            vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]],
        ],
        [1].into_iter().collect(),
    );
    assert!(a.validate().is_empty());

    for text in ["go ; rest", "; go", "go go ; rest"] {
        let w = LassoWord::parse(text)?;
        println!("word  {w}");
        for c in Condition::ALL {
            println!("  {:<8} {}", c.token(), eval_lasso(&a, c, &w)?);
        }
    }
    Ok(())
}
