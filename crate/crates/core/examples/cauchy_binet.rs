//! The Cauchy-Binet expansion of d((AB)[alpha|beta]) over Omega, and the
//! Omega sum for dbar(A) compared with direct evaluation.
//!
//! cargo run --example cauchy_binet

use std::sync::Arc;

use gmf::characters::character_table;
use gmf::decomposition::{cauchy_binet_check, gmf_via_omega};
use gmf::gmf::gmf;
use gmf::perm::{PermGroup, SequenceGamma};
use gmf::random::{random_complex_matrix, random_psd_seeded, rng, PsdMode};

fn main() -> gmf::Result<()> {
    let mut r = rng(3);
    let (a, b) = (random_complex_matrix(3, &mut r), random_complex_matrix(3, &mut r));
    let s3 = Arc::new(PermGroup::symmetric(3)?);
    let id = SequenceGamma::identity(3);
    for chi in &character_table(&s3)?.characters {
        let res = cauchy_binet_check(&a, &b, &s3, chi, &id, &id)?;
        println!("S_3 {:<6} alpha = beta = (1,2,3): relative residual {res:.2e}", chi.label());
    }
    let alpha = SequenceGamma::from_one_based(&[1, 1, 2])?;
    let chi = &character_table(&s3)?.characters[0];
    println!("principal, alpha = (1,1,2): {:.2e}", cauchy_binet_check(&a, &b, &s3, chi, &alpha, &id)?);

    let p = random_psd_seeded(4, PsdMode::Generic, 5);
    let d4 = Arc::new(PermGroup::dihedral(4)?);
    println!();
    for chi in &character_table(&d4)?.characters {
        let direct = gmf(&p, &d4, chi)?.normalized;
        let omega = gmf_via_omega(&p, &d4, chi)?;
        println!("D_4 {:<6} direct {:.10}  via Omega {:.10}", chi.label(), direct.re, omega.re);
    }
    Ok(())
}
