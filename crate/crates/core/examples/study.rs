//! Prints the refinement study for the quartic bump on (-1, 1)².
//!
//! cargo run --release -p bfs-core --example study -- 10

use bfs_core::functions::{quartic, quartic_load, QUARTIC_EXACT};
use bfs_core::{convergence_study, Domain, GaussRule, Quantity, StudyConfig};

fn main() -> Result<(), bfs_core::Error> {
    let finest: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let (v, f) = (quartic(), quartic_load());
    let report = convergence_study(&StudyConfig {
        domain: Domain::symmetric_unit(),
        field: &v,
        load: &f,
        exact: QUARTIC_EXACT,
        levels: 1..=finest,
        rules: GaussRule::ALL.to_vec(),
    })?;
    for rule in GaussRule::ALL {
        println!("{}-point rule", rule.num_points());
        for q in Quantity::ALL {
            let errs = report.errors(rule, q);
            let orders = report.observed_orders(rule, q);
            print!("  {:>5}", q.name());
            for (l, e) in &errs {
                print!(" L{l}:{e:.3e}");
            }
            println!();
            print!("  {:>5}", "p");
            for (l, p) in &orders {
                print!(" {l}->{}:{p:.2}", l + 1);
            }
            println!();
        }
    }
    Ok(())
}
