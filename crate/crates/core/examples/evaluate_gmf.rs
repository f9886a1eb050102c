//! Permanent, determinant and immanants of one matrix as generalized matrix
//! functions over S_4, plus a few subgroups.
//!
//! cargo run --example evaluate_gmf

use std::sync::Arc;

use gmf::characters::{character_table, sn_irreducible, Partition};
use gmf::gmf::{gmf, hadamard_product, permanent_ryser};
use gmf::matrix::determinant;
use gmf::perm::PermGroup;
use gmf::random::{random_psd_seeded, PsdMode};

fn main() -> gmf::Result<()> {
    let a = random_psd_seeded(4, PsdMode::Generic, 1);
    let s4 = Arc::new(PermGroup::symmetric(4)?);

    println!("per(A)  = {:.6}", permanent_ryser(&a)?);
    println!("det(A)  = {:.6}", determinant(&a)?);
    println!("h(A)    = {:.6}", hadamard_product(&a)?);
    println!("\nimmanants of S_4 (normalized):");
    for p in Partition::all(4) {
        let chi = sn_irreducible(&p)?;
        let v = gmf(&a, &s4, &chi)?;
        println!("  {:<12} degree {:>2}  dbar = {:.6}", format!("{:?}", p.parts()), v.chi_degree, v.normalized.re);
    }

    for name in ["A_4", "D_4", "Klein", "C_4"] {
        let g = Arc::new(PermGroup::named(name)?);
        println!("\n{name} (order {}):", g.order());
        for chi in &character_table(&g)?.characters {
            let v = gmf(&a, &g, chi)?;
            println!("  {:<8} dbar = {:.6}", chi.label(), v.normalized.re);
        }
    }
    Ok(())
}
