//! Runs every reproduction criterion and prints one line per criterion.

use mbs_core::verify::CRITERIA;

#[test]
fn acceptance() {
    println!();
    let mut failed = Vec::new();
    for c in CRITERIA.iter() {
        let out = c.run();
        println!("{}", out.line());
        if !out.passed {
            failed.push(out.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
