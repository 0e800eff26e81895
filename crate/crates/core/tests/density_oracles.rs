//! Density invariants checked against brute force over all subcomplexes.

use num_traits::{One, Zero};
use proptest::prelude::*;
use randcx_core::catalog;
use randcx_core::density::{
    balance, density_profile, induced_density_domain, mu_from_average_degrees, mu_from_l_formula,
    reduced_density_domain, Balance, Membership, DEFAULT_VERTEX_CAP,
};
use randcx_core::measure::subcomplexes_between;
use randcx_core::rational::{int, ratio};
use randcx_core::{Complex, Rational};

fn arb_complex(max_vertex: u32, max_facets: usize, max_size: usize) -> impl Strategy<Value = Complex> {
    prop::collection::vec(prop::collection::btree_set(1..=max_vertex, 1..=max_size), 1..=max_facets)
        .prop_map(|facets| Complex::from_facets(facets.into_iter().map(|f| f.into_iter().collect::<Vec<_>>())).unwrap())
}

fn nu_of(t: &Complex, r: usize) -> Vec<Rational> {
    density_profile(t, r).unwrap().nu().to_vec()
}

fn nonempty_subcomplexes(s: &Complex) -> Vec<Complex> {
    subcomplexes_between(&Complex::empty(), s).unwrap().into_iter().filter(|t| !t.is_empty()).collect()
}

/// Membership in `⋂_T μ(T)` over every nonempty subcomplex `T`.
fn brute_membership(all: &[Vec<Rational>], alpha: &[Rational]) -> Membership {
    let mut result = Membership::Inside;
    for nu in all {
        let v: Rational = nu.iter().zip(alpha).map(|(a, b)| a * b).sum();
        if v > Rational::one() {
            return Membership::Outside;
        }
        if v == Rational::one() {
            result = Membership::Boundary;
        }
    }
    result
}

fn grid() -> Vec<[Rational; 2]> {
    let mut points = Vec::new();
    for a in 0..=12 {
        for b in 0..=12 {
            points.push([ratio(a, 4), ratio(b, 4)]);
        }
    }
    points
}

/// Balancedness from the definition: compare `ν(T)` with `ν(S)` for every subcomplex `T`.
fn brute_balance(s: &Complex, r: usize) -> (bool, bool) {
    let whole = nu_of(s, r);
    let mut balanced = true;
    let mut strict = true;
    for t in nonempty_subcomplexes(s) {
        let nu = nu_of(&t, r);
        if nu.iter().zip(&whole).any(|(a, b)| a > b) {
            balanced = false;
        }
        if t != *s && !nu.iter().zip(&whole).any(|(a, b)| a < b) {
            strict = false;
        }
    }
    (balanced, balanced && strict)
}

fn small_corpus() -> Vec<Complex> {
    vec![
        catalog::simplex_boundary(2),
        catalog::simplex_boundary(3),
        catalog::simplex_boundary(4),
        catalog::full_simplex(2),
        catalog::s_t(3),
        catalog::s_t(4),
        catalog::rp2_six(),
    ]
}

#[test]
fn corpus_balance_agrees_with_definition() {
    for s in small_corpus() {
        let r = s.dim() as usize;
        let b = balance(&s, r, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!((b.is_balanced(), b.is_strictly_balanced()), brute_balance(&s, r), "{:?}", s.facets());
    }
}

#[test]
fn witness_of_unbalanced_disc_is_denser() {
    let disc = catalog::unbalanced_disc();
    let Balance::Unbalanced { witness } = balance(&disc, 2, DEFAULT_VERTEX_CAP).unwrap() else {
        panic!("disc should be unbalanced");
    };
    let sub = disc.induced(&witness).unwrap();
    let (v, vi) = (8i64, 4i64);
    let (sv, svi) = (7i64, 4i64);
    assert_eq!(density_profile(&disc, 2).unwrap().mu(1).unwrap(), ratio(v, 2 * v + vi - 3));
    assert_eq!(density_profile(&disc, 2).unwrap().mu(2).unwrap(), ratio(v, v + vi - 2));
    assert_eq!(density_profile(&sub, 2).unwrap().mu(1).unwrap(), ratio(sv, 2 * sv + svi - 3));
    assert_eq!(density_profile(&sub, 2).unwrap().mu(2).unwrap(), ratio(sv, sv + svi - 2));
    assert!(nu_of(&sub, 2).iter().zip(nu_of(&disc, 2)).all(|(a, b)| *a > b));
}

#[test]
fn surfaces_satisfy_edge_face_relation() {
    for s in [catalog::simplex_boundary(3), catalog::rp2_six(), catalog::torus_seven()] {
        let p = density_profile(&s, 2).unwrap();
        assert_eq!(int(3) * p.mu(1).unwrap(), int(2) * p.mu(2).unwrap());
        let chi = int(s.euler_characteristic());
        assert_eq!(p.mu(1).unwrap(), ratio(1, 3) + &chi / int(s.num_faces(1) as i64));
        assert_eq!(p.mu(2).unwrap(), ratio(1, 2) + &chi / int(s.num_faces(2) as i64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduced_domain_matches_all_subcomplexes(s in arb_complex(5, 4, 3)) {
        let r = 2;
        let all: Vec<Vec<Rational>> = nonempty_subcomplexes(&s).iter().map(|t| nu_of(t, r)).collect();
        let reduced = reduced_density_domain(&s, r, DEFAULT_VERTEX_CAP).unwrap();
        let unreduced = induced_density_domain(&s, r, DEFAULT_VERTEX_CAP).unwrap();
        for point in grid() {
            let expected = brute_membership(&all, &point);
            prop_assert_eq!(reduced.membership(&point).unwrap(), expected);
            prop_assert_eq!(unreduced.membership(&point).unwrap(), expected);
        }
    }

    #[test]
    fn subcomplexes_are_sparser_than_induced(s in arb_complex(5, 4, 3)) {
        for t in nonempty_subcomplexes(&s) {
            let induced = s.induced(t.vertices()).unwrap();
            for (a, b) in nu_of(&t, 2).iter().zip(nu_of(&induced, 2)) {
                prop_assert!(*a <= b);
            }
        }
    }

    #[test]
    fn induced_balance_matches_definition(s in arb_complex(6, 4, 3)) {
        let r = s.dim() as usize;
        let b = balance(&s, r, DEFAULT_VERTEX_CAP).unwrap();
        prop_assert_eq!((b.is_balanced(), b.is_strictly_balanced()), brute_balance(&s, r));
        if let Some(w) = b.witness() {
            let nu_w = nu_of(&s.induced(w).unwrap(), r);
            let nu_s = nu_of(&s, r);
            match b {
                Balance::Unbalanced { .. } => prop_assert!(nu_w.iter().zip(&nu_s).any(|(a, b)| a > b)),
                _ => prop_assert_eq!(nu_w, nu_s),
            }
        }
    }

    #[test]
    fn three_way_mu_agreement(s in arb_complex(8, 7, 3)) {
        prop_assume!(s.dim() == 2);
        let direct = density_profile(&s, 2).unwrap();
        let (mu1, mu2) = mu_from_l_formula(&s).unwrap();
        prop_assert_eq!(direct.mu(1).unwrap(), mu1);
        prop_assert_eq!(direct.mu(2).unwrap(), mu2);
        prop_assert_eq!(mu_from_average_degrees(&s, 2).unwrap(), direct);
    }

    #[test]
    fn average_degree_profile_matches_in_every_dimension(s in arb_complex(7, 5, 4), extra in 0usize..2) {
        let r = s.dim() as usize + extra;
        prop_assert_eq!(mu_from_average_degrees(&s, r).unwrap(), density_profile(&s, r).unwrap());
    }

    #[test]
    fn pruning_keeps_no_dominated_constraint(s in arb_complex(6, 5, 3)) {
        let d = reduced_density_domain(&s, 2, DEFAULT_VERTEX_CAP).unwrap();
        for (i, a) in d.constraints.iter().enumerate() {
            prop_assert!(!a.nu.iter().all(Zero::is_zero));
            for b in &d.constraints[i + 1..] {
                prop_assert!(a.nu != b.nu);
                prop_assert!(!a.nu.iter().zip(&b.nu).all(|(x, y)| x <= y));
                prop_assert!(!a.nu.iter().zip(&b.nu).all(|(x, y)| x >= y));
            }
        }
    }
}
