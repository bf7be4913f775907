//! Acceptance criteria 1-10, one line per criterion. Exits non-zero if any
//! criterion fails.

use ncforest::classes::Catalog;
use ncforest::oracle::DEFAULT_CAP;
use ncforest::singularity::SingularityConfig;
use ncforest::verify::{run_or_fail, Context, Suite};

fn main() {
    let catalog = Catalog::new(80);
    let ctx = Context::new(&catalog, SingularityConfig::default(), DEFAULT_CAP);
    let mut failed = Vec::new();
    for suite in Suite::ALL {
        let check = run_or_fail(suite, &ctx);
        println!("{}", check.line());
        if !check.pass {
            for d in &check.details {
                println!("    {d}");
            }
            failed.push(suite.number());
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
