mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn log_inverts_exp(f in series()) {
        check_log_exp(&f)?;
    }

    #[test]
    fn exp_routes_agree(f in series()) {
        check_exp_routes(&f)?;
    }

    #[test]
    fn plethysm_is_associative(f in sym(4, false), g in sym(4, false), h in sym(4, true)) {
        check_associative(&f, &g, &h)?;
    }

    #[test]
    fn plethysm_distributes(f1 in sym(4, false), f2 in sym(4, false), g in sym(4, true)) {
        check_distributive(&f1, &f2, &g)?;
    }

    #[test]
    fn laplacian_preserves_degree(hbar in -1i32..=2, mu in partition(6), c in lpoly(true)) {
        check_laplacian_degree(hbar, &mu, &c)?;
    }

    #[test]
    fn exp_laplacian_iteration_bound(f in series()) {
        check_exp_laplacian_bound(&f)?;
    }
}

#[test]
fn characters_are_orthonormal() {
    characters_orthonormal(8).unwrap();
}

#[test]
fn schur_basis_round_trips() {
    schur_round_trip(8).unwrap();
}

#[test]
fn dimension_is_hook_length_count() {
    dimensions_are_hook_counts(6).unwrap();
}
