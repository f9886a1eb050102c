//! Matrices from each easy class and the proposition that certifies them.
//!
//! cargo run --example quick_affirm_classes

use gmf::conjecture::{frobenius_konig, quick_affirm};
use gmf::matrix::ComplexMatrix;
use gmf::random::{random_psd_seeded, PsdMode};

fn main() -> gmf::Result<()> {
    let fixtures: Vec<(&str, ComplexMatrix)> = [
        ("generic", PsdMode::Generic),
        ("rank1", PsdMode::Rank1),
        ("rank1diag", PsdMode::Rank1diag),
        ("nonneg", PsdMode::Nonneg),
        ("zerocol", PsdMode::Zerocol),
    ]
    .into_iter()
    .map(|(name, mode)| (name, random_psd_seeded(5, mode, 3)))
    .collect();
    for (name, a) in &fixtures {
        let r = quick_affirm(a)?;
        let qa = r.details.quick_affirm.as_ref().unwrap();
        println!("{name:<10} {:?}", r.verdict);
        if let Some(b) = &qa.zero_block {
            println!("{:<10} zero block rows {:?} cols {:?}", "", b.rows, b.cols);
        }
    }

    // For PSD input a vanishing diagonal product forces a zero row, so the
    // matching test matters for general support patterns.
    let pattern = ComplexMatrix::from_real_rows(&[
        vec![1.0, 1.0, 1.0, 1.0],
        vec![1.0, 0.0, 0.0, 1.0],
        vec![1.0, 0.0, 0.0, 0.0],
        vec![1.0, 0.0, 0.0, 1.0],
    ])?;
    match frobenius_konig(&pattern, 0.0) {
        Some(b) => println!("\npattern: zero block rows {:?} cols {:?}", b.rows, b.cols),
        None => println!("\npattern: perfect matching exists"),
    }
    Ok(())
}
