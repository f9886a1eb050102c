//! Numerical check of dbar^G_chi(A) <= per(A) over every subgroup of S_n.
//!
//! cargo run --release --example verify_conjecture [-- N SEED]

use gmf::conjecture::verify_conjecture_numeric;
use gmf::perm::{all_subgroups, PermGroup};
use gmf::random::{random_psd_seeded, PsdMode};

fn main() -> gmf::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    let a = random_psd_seeded(n, PsdMode::Generic, seed);
    let groups = all_subgroups(&PermGroup::symmetric(n)?)?;
    let r = verify_conjecture_numeric(&a, &groups)?;
    let num = r.details.numeric.as_ref().unwrap();
    println!("n = {n}, {} subgroups, {} (G, chi) pairs", groups.len(), num.margins.len());
    println!("per(A) = {:.6}, verdict {:?}", num.permanent.re, r.verdict);

    let mut rows: Vec<_> = num.margins.iter().collect();
    rows.sort_by(|x, y| x.margin.total_cmp(&y.margin));
    println!("closest pairs:");
    for row in rows.iter().take(5) {
        println!("  {:<24} {:<6} dbar {:.6}  margin {:.3e}", row.group, row.character, row.normalized_gmf.re, row.margin);
    }
    Ok(())
}
