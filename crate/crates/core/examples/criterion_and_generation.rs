//! The entry-size criterion on a random matrix, and members of its class
//! generated by shrinking the Cholesky columns 2..n.
//!
//! cargo run --example criterion_and_generation

use gmf::conjecture::{class_bound, criterion_check, generate_class, m_n};
use gmf::random::{random_psd_seeded, PsdMode};

fn main() -> gmf::Result<()> {
    for n in 4..=7 {
        println!("M_{n} = {}", m_n(n)?);
    }

    let base = random_psd_seeded(5, PsdMode::Generic, 12);
    let r = criterion_check(&base)?;
    let crit = r.details.criterion.as_ref().expect("n > 3");
    println!(
        "\nbase: verdict {:?}, eps_n = {:.3e}, max |L_kj| (j > 1) = {:.3e}",
        r.verdict, crit.epsilon.eps_n, crit.max_off_first_column
    );

    let bound = class_bound(&base)?;
    println!("admissible lambda in (0, {:.3e}]", bound.lambda_max);
    for frac in [1.0, 0.5, 0.01] {
        let lambdas = vec![bound.lambda_max * frac; 4];
        let member = generate_class(&base, &lambdas)?;
        let r = criterion_check(&member)?;
        let c = r.details.criterion.as_ref().expect("n > 3");
        println!(
            "lambda = {frac:>4} * max: verdict {:?}, max |L_kj| / eps_n = {:.4}, bound {:.6}",
            r.verdict,
            c.max_off_first_column / c.epsilon.eps_n,
            c.bound_nonprincipal
        );
    }
    Ok(())
}
