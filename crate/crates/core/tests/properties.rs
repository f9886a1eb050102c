use std::sync::Arc;

use gmf::characters::{character_table, CharacterFn};
use gmf::conjecture::congruence_scale;
use gmf::decomposition::gmf_via_omega;
use gmf::gmf::{gmf, hadamard_product, permanent_naive, permanent_ryser};
use gmf::matrix::{determinant, permutation_matrix, ComplexMatrix};
use gmf::numeric::rel_err;
use gmf::perm::{all_subgroups, PermGroup};
use gmf::random::{random_complex_matrix, random_psd_seeded, random_scalars, rng, PsdMode};
use gmf::Complex64;
use proptest::prelude::*;

fn groups(n: usize) -> Vec<Arc<PermGroup>> {
    let mut g = vec![Arc::new(PermGroup::symmetric(n).unwrap()), Arc::new(PermGroup::cyclic(n).unwrap())];
    if n >= 3 {
        g.push(Arc::new(PermGroup::alternating(n).unwrap()));
        g.push(Arc::new(PermGroup::dihedral(n).unwrap()));
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn principal_and_sign_of_sn(n in 1usize..=6, seed in any::<u64>()) {
        let a = random_complex_matrix(n, &mut rng(seed));
        let sn = Arc::new(PermGroup::symmetric(n).unwrap());
        let per = gmf(&a, &sn, &CharacterFn::principal(&sn)).unwrap().value;
        prop_assert!(rel_err(per, permanent_ryser(&a).unwrap()) < 1e-10);
        prop_assert!(rel_err(per, permanent_naive(&a).unwrap()) < 1e-10);
        let det = gmf(&a, &sn, &CharacterFn::sign(&sn)).unwrap().value;
        prop_assert!(rel_err(det, determinant(&a).unwrap()) < 1e-10);
    }

    #[test]
    fn regular_character_gives_hadamard(n in 2usize..=5, seed in any::<u64>()) {
        // sum_chi chi(e) d_chi(A) = |G| h(A)
        let a = random_complex_matrix(n, &mut rng(seed));
        for g in groups(n) {
            let table = character_table(&g).unwrap();
            let mut total = Complex64::new(0.0, 0.0);
            for chi in &table.characters {
                total += chi.degree() * gmf(&a, &g, chi).unwrap().value;
            }
            let want = hadamard_product(&a).unwrap() * g.order() as f64;
            prop_assert!(rel_err(total, want) < 1e-9, "{}", g.label());
        }
    }

    #[test]
    fn invariant_under_group_similarity(n in 2usize..=5, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let a = random_complex_matrix(n, &mut rng(seed));
        for g in groups(n) {
            let h = &g.elements()[pick.index(g.order())];
            let p = permutation_matrix(h, n).unwrap();
            let b = p.matmul(&a).matmul(&p.conj_transpose());
            for chi in &character_table(&g).unwrap().characters {
                let x = gmf(&a, &g, chi).unwrap().value;
                let y = gmf(&b, &g, chi).unwrap().value;
                prop_assert!(rel_err(x, y) < 1e-10);
            }
        }
    }

    #[test]
    fn schur_and_small_n_dominance(n in 2usize..=3, seed in any::<u64>()) {
        // the conjecture is a theorem for n <= 3
        let a = random_psd_seeded(n, PsdMode::Generic, seed);
        let det = determinant(&a).unwrap().re;
        let per = permanent_ryser(&a).unwrap().re;
        for g in all_subgroups(&PermGroup::symmetric(n).unwrap()).unwrap() {
            for chi in &character_table(&g).unwrap().characters {
                let d = gmf(&a, &g, chi).unwrap().normalized;
                prop_assert!(d.im.abs() < 1e-9 * (1.0 + d.norm()));
                prop_assert!(d.re >= det - 1e-9 * (1.0 + det.abs()));
                prop_assert!(d.re <= per + 1e-9 * (1.0 + per.abs()));
            }
        }
    }

    #[test]
    fn omega_sum_and_congruence(n in 2usize..=4, seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_psd_seeded(n, PsdMode::Generic, seed);
        let c = random_scalars(n, &mut r);
        let b = congruence_scale(&a, &c).unwrap();
        let factor: f64 = c.iter().map(|z| z.norm_sqr()).product();
        for g in groups(n) {
            for chi in &character_table(&g).unwrap().characters {
                let direct = gmf(&a, &g, chi).unwrap().normalized;
                prop_assert!(rel_err(direct, gmf_via_omega(&a, &g, chi).unwrap()) < 1e-9);
                let scaled = gmf(&b, &g, chi).unwrap().normalized;
                prop_assert!(rel_err(scaled, direct * factor) < 1e-9);
            }
        }
    }
}

#[test]
fn permanent_of_structured_matrices() {
    // per(J_n) = n!, per(I) = 1, per of a 0/1 derangement pattern is the derangement count
    let mut fact = 1.0;
    for n in 1..=10usize {
        fact *= n as f64;
        let ones = ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(1.0, 0.0));
        assert!(rel_err(permanent_ryser(&ones).unwrap(), Complex64::new(fact, 0.0)) < 1e-12);
        assert_eq!(permanent_ryser(&ComplexMatrix::identity(n)).unwrap(), Complex64::new(1.0, 0.0));
    }
    let derangements = [1.0, 0.0, 1.0, 2.0, 9.0, 44.0, 265.0, 1854.0, 14833.0];
    for (n, &d) in derangements.iter().enumerate().skip(1) {
        let m = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(if i == j { 0.0 } else { 1.0 }, 0.0));
        assert!(rel_err(permanent_ryser(&m).unwrap(), Complex64::new(d, 0.0)) < 1e-12, "n = {n}");
    }
}
