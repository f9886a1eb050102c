//! Splits dbar^G_chi(A) into det(A), the constant-sequence term and the
//! remaining orbit sum, and prints how well the pieces add up.
//!
//! cargo run --example decomposition_identity

use std::sync::Arc;

use gmf::characters::character_table;
use gmf::decomposition::{decompose, decompose_linear, permanent_expansion};
use gmf::perm::PermGroup;
use gmf::random::{random_psd_seeded, PsdMode};

fn main() -> gmf::Result<()> {
    let a = random_psd_seeded(4, PsdMode::Generic, 7);

    for name in ["S_4", "A_4", "D_4"] {
        let g = Arc::new(PermGroup::named(name)?);
        for chi in &character_table(&g)?.characters {
            let r = decompose(&a, &g, chi)?;
            println!(
                "{name:>4} {:<6} dbar {:>12.6} = det {:>9.6} + delta {:>10.6} + rest {:>12.6}   residual {:.1e}  orbits {}/{}",
                chi.label(),
                r.lhs_normalized_gmf.re,
                r.det_term.re,
                r.delta_term,
                r.residual_sum,
                r.relative_residual,
                r.orbits_in_omega,
                r.orbits_total,
            );
        }
    }

    // cheaper per-orbit formula for linear characters
    let c4 = Arc::new(PermGroup::cyclic(4)?);
    let chi = character_table(&c4)?.characters[1].clone();
    let (coset, linear) = (decompose(&a, &c4, &chi)?, decompose_linear(&a, &c4, &chi)?);
    println!("\nC_4 {}: coset formula {:.12}, linear formula {:.12}", chi.label(), coset.residual_sum, linear.residual_sum);

    let e = permanent_expansion(&a)?;
    println!(
        "\nper(A) = {:.6}: det {:.6} + first column {:.6} + last column {:.6} + rest {:.6} (residual {:.1e})",
        e.permanent.re, e.det_term.re, e.first_column_term, e.last_column_term, e.remaining_sum, e.relative_residual
    );
    Ok(())
}
