use subord_core::fock::{
    build_model, check_freeness, check_vacuum_projection, partition_monomial_vector,
    vacuum, vacuum_moment, FockBasis,
};
use subord_core::identities::{fock_agreement, with_order};
use subord_core::ncseries::words_up_to;
use subord_core::random::{random_distribution, rng_from_seed};
use subord_core::{boxright, enumerate_nc, point_mass, Colouring, Rational, Word};

#[test]
fn vacuum_moments_match_subordination_and_marginals() {
    let mut rng = rng_from_seed(2024);
    for trial in 0..6 {
        let k = 1 + trial % 2;
        let mu = with_order(&random_distribution(&mut rng, k, 3).unwrap(), 4).unwrap();
        let nu = with_order(&random_distribution(&mut rng, k, 3).unwrap(), 4).unwrap();
        let at4 = fock_agreement(&mu, &nu, 4, 4).unwrap();
        assert_eq!(at4.c, None);
        assert_eq!(at4.a, None);
        assert_eq!(at4.b, None);
        let at5 = fock_agreement(&mu, &nu, 4, 5).unwrap();
        assert_eq!(at4.moments, at5.moments);
    }
}

#[test]
fn first_vacuum_moment_is_first_cumulant() {
    let mut rng = rng_from_seed(5);
    let mu = random_distribution(&mut rng, 2, 3).unwrap();
    let nu = random_distribution(&mut rng, 2, 3).unwrap();
    let model = build_model(&mu, &nu, 3).unwrap();
    for i in 1..=2 {
        let w = Word::new(&[i], 2).unwrap();
        assert_eq!(
            vacuum_moment(&model.c, &w).unwrap(),
            mu.r_series().coeff(&w).unwrap()
        );
    }
}

#[test]
fn point_mass_model() {
    let one = point_mass(1, 4, &Rational::from_integer(1.into())).unwrap();
    let model = build_model(&one, &one, 4).unwrap();
    for w in words_up_to(1, 4) {
        assert_eq!(vacuum_moment(&model.c, &w).unwrap(), Rational::from_integer(1.into()));
    }
    assert_eq!(boxright(&one, &one).unwrap(), one);
}

#[test]
fn projection_and_freeness_on_random_models() {
    let mut rng = rng_from_seed(77);
    for k in 1..=2 {
        let mu = random_distribution(&mut rng, k, 3).unwrap();
        let nu = random_distribution(&mut rng, k, 3).unwrap();
        let model = build_model(&mu, &nu, 4).unwrap();
        let mut probes = vec![model.t.clone()];
        probes.extend(model.a.iter().cloned());
        probes.extend(model.c.iter().cloned());
        assert_eq!(check_vacuum_projection(&model.p_omega, &probes).unwrap(), Ok(()));
        assert_eq!(check_freeness(&model, 4).unwrap(), None);
    }
}

#[test]
fn partition_monomials_index_the_expansion() {
    let basis = FockBasis::new(2, 4).unwrap();
    for n in 1..=4 {
        for letters in words_up_to(2, n).into_iter().filter(|w| w.len() == n) {
            for pi in enumerate_nc(n).unwrap() {
                let outer = pi.outer_blocks();
                for c in Colouring::all(pi.len()) {
                    let plain =
                        partition_monomial_vector(&basis, &letters, &pi, &c, false).unwrap();
                    assert_eq!(plain, vacuum());
                    let projected =
                        partition_monomial_vector(&basis, &letters, &pi, &c, true).unwrap();
                    let outer_ones = outer.iter().all(|&b| c.colour(b) == 1);
                    assert_eq!(projected == vacuum(), outer_ones, "{letters} {pi} {c:?}");
                }
            }
        }
    }
}
