//! Run the built-in property suites.
fn main() -> knnrgg::Result<()> {
    for r in knnrgg::selfcheck::run_all(1)? {
        println!("{:24} cases {:6} violations {}", r.name, r.cases, r.violations);
    }
    Ok(())
}
