//! One line per acceptance criterion; exits nonzero if any fails.

use sumfree_cli::suite::{run_named, NAMES};

fn main() {
    let seed = 20_240_601;
    let bits = sumfree_lp::DEFAULT_BITS;
    let mut failed = Vec::new();
    println!("\nrunning {} acceptance criteria", NAMES.len());
    for name in NAMES {
        let c = run_named(name, seed, bits).expect("known criterion");
        println!("{}", c.line());
        if !c.passed {
            failed.push(name);
        }
    }
    if failed.is_empty() {
        println!("\nacceptance: {} passed; 0 failed\n", NAMES.len());
    } else {
        println!("\nacceptance: {} passed; {} failed ({})\n", NAMES.len() - failed.len(), failed.len(), failed.join(", "));
        std::process::exit(1);
    }
}
