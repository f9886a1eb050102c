//! Orbits of a group on sequences, their stabilizers, the Omega set, and the
//! coset representatives of G in S_n.
//!
//! cargo run --example orbits_and_cosets

use gmf::characters::CharacterFn;
use gmf::decomposition::compute_omega;
use gmf::perm::{orbit_decomposition, right_coset_reps_in_sn, PermGroup};
use std::sync::Arc;

fn main() -> gmf::Result<()> {
    let a3 = Arc::new(PermGroup::alternating(3)?);
    println!("A_3 on Gamma_(3,3):");
    for o in orbit_decomposition(&a3, 3, 1_000)? {
        let stab: Vec<String> = o.stabilizer_perms(&a3).iter().map(|p| p.to_string()).collect();
        println!("  rep {:?}  orbit size {}  stabilizer {{{}}}", o.representative.to_one_based(), o.len(), stab.join(", "));
    }

    println!("\ncoset representatives of A_3 in S_3: {:?}", right_coset_reps_in_sn(&a3)?.iter().map(|p| p.to_string()).collect::<Vec<_>>());

    let s3 = Arc::new(PermGroup::symmetric(3)?);
    for chi in [CharacterFn::principal(&s3), CharacterFn::sign(&s3)] {
        let omega = compute_omega(&s3, &chi, 3)?;
        println!(
            "\nOmega for S_3, {}: {} of {} sequences, representatives {:?}",
            chi.label(),
            omega.members.len(),
            omega.total_sequences,
            omega.representatives.iter().map(|g| g.to_one_based()).collect::<Vec<_>>()
        );
    }
    Ok(())
}
