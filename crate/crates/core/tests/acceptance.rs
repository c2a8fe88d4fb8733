//! One line per acceptance criterion; exits nonzero if any fails.

use torelli::acceptance::{report_line, run_one, TITLES};

fn main() {
    let quick = std::env::var_os("TORELLI_QUICK").is_some();
    let mut failed = 0;
    for id in 1..=TITLES.len() {
        let o = run_one(id, quick);
        println!("{}", report_line(&o));
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {} of {} criteria pass", TITLES.len() - failed, TITLES.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
