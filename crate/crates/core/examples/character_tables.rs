//! Character tables computed by Dixon's method, checked against the
//! Murnaghan-Nakayama rule for S_n.
//!
//! cargo run --example character_tables [-- GROUP]

use std::sync::Arc;

use gmf::characters::{character_table, sn_irreducible, Partition};
use gmf::perm::PermGroup;

fn main() -> gmf::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "S_4".into());
    let g = Arc::new(PermGroup::named(&name)?);
    let t = character_table(&g)?;

    print!("{:<8}", "");
    for k in 0..g.num_classes() {
        print!("{:>14}", g.class_representative(k).to_string());
    }
    println!();
    for chi in &t.characters {
        print!("{:<8}", chi.label());
        for z in chi.class_values() {
            if z.im.abs() < 1e-12 {
                print!("{:>14}", format!("{:.4}", z.re));
            } else {
                print!("{:>14}", format!("{:.3}{:+.3}i", z.re, z.im));
            }
        }
        println!();
    }
    println!(
        "\ndegrees {:?}, orthogonality {:.1e}, column {:.1e}, snap shift {:.1e}",
        t.degrees(),
        t.orthogonality_residual,
        t.column_residual,
        t.max_snap_shift
    );

    if g.order() as u128 == gmf::numeric::factorial(g.degree()) {
        println!("\nMurnaghan-Nakayama rows:");
        for p in Partition::all(g.degree()) {
            let chi = sn_irreducible(&p)?;
            let found = t.characters.iter().any(|c| c.class_values() == chi.class_values());
            println!("  {:<14} degree {:>3}  in Dixon table: {found}", format!("{:?}", p.parts()), p.hook_length_degree());
        }
    }
    Ok(())
}
