//! Print the full closed-form versus numerical check table.

use timeslit::validation::{run_validation, ValidationOptions};

fn main() -> timeslit::Result<()> {
    let report = run_validation(&ValidationOptions::default())?;
    println!("{report}");
    Ok(())
}
