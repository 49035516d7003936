mod common;

use std::collections::BTreeSet;

use common::{alg, q, CORPUS, NAKAYAMA, RUNNING};
use tautilt_core::decompose::{is_brick, is_isomorphic};
use tautilt_core::rep::{direct_sum, Representation};
use tautilt_core::stability::{
    brick_of_slot, brick_slate, fac_contains, is_hom_orthogonal, is_semistable_bruteforce, is_semistable_hom,
    is_stable_bruteforce, minimal_torsion_contains, pairing, semibrick_to_pair, submodule_dim_vectors, theta_of_pair,
    theta_of_slot, verify_facm_theorem, BrickSlate,
};
use tautilt_core::verify::Analysis;
use tautilt_core::{intmat, Error, Limits, Module, TauPair, TauTilting};

fn analysis(text: &str) -> Analysis {
    Analysis::run(alg(text), Limits::default(), 0).unwrap()
}

fn slate_named<'a>(an: &Analysis, slates: &'a [BrickSlate], name: &str) -> &'a BrickSlate {
    slates
        .iter()
        .find(|s| an.tt.pair_name(&s.pair) == name)
        .unwrap_or_else(|| panic!("no pair named {name}"))
}

fn pair_named(an: &Analysis, name: &str) -> TauPair {
    an.graph
        .nodes
        .iter()
        .find(|p| an.tt.pair_name(p) == name)
        .unwrap()
        .clone()
}

fn names(tt: &TauTilting, bricks: &[&Module]) -> Vec<String> {
    let mut out: Vec<String> = bricks
        .iter()
        .map(|b| {
            tt.registry()
                .lookup(b)
                .unwrap()
                .map_or_else(|| "?".into(), |id| tt.name(id))
        })
        .collect();
    out.sort();
    out
}

#[test]
fn thetas() {
    let mut tt = TauTilting::new(alg(RUNNING), 0);
    let top = tt.top().unwrap();
    assert_eq!(
        theta_of_pair(&tt, &top, &[q(1), q(1), q(1)]).unwrap(),
        vec![q(1), q(1), q(1)]
    );
    assert_eq!(theta_of_slot(&tt, &top, 2), vec![q(1), q(1), q(0)]);
    let bottom = tt.bottom();
    assert_eq!(
        theta_of_pair(&tt, &bottom, &[q(1), q(1), q(1)]).unwrap(),
        vec![q(-1), q(-1), q(-1)]
    );
    assert!(matches!(
        theta_of_pair(&tt, &top, &[q(1), q(0), q(1)]),
        Err(Error::NonPositiveWeight)
    ));
    assert_eq!(pairing(&[q(1), q(-2), q(3)], &[1, 1, 1]), q(2));
}

#[test]
fn hom_criterion() {
    let mut tt = TauTilting::new(alg(RUNNING), 0);
    let a = tt.algebra().clone();
    let rigid = tt.top().unwrap().remove_summand(2);
    assert!(is_semistable_hom(&tt, &Representation::zero(a.quiver().clone()), &rigid).unwrap());
    assert!(is_semistable_hom(&tt, &a.simple(2), &rigid).unwrap());
    assert!(!is_semistable_hom(&tt, &a.simple(0), &rigid).unwrap());
}

#[test]
fn submodule_lattices() {
    let a = alg(RUNNING);
    for i in 0..3 {
        let s = a.simple(i);
        let expected: BTreeSet<Vec<usize>> = [vec![0; 3], s.dims().to_vec()].into_iter().collect();
        assert_eq!(submodule_dim_vectors(&s, 2).unwrap(), expected);
    }
    let expected: BTreeSet<Vec<usize>> = [vec![0, 0, 0], vec![0, 1, 0], vec![1, 1, 0]].into_iter().collect();
    assert_eq!(submodule_dim_vectors(&a.projective(0), 3).unwrap(), expected);

    let s1 = a.simple(0);
    let doubled = direct_sum(&[s1.clone(), s1]);
    let expected: BTreeSet<Vec<usize>> = (0..3).map(|k| vec![k, 0, 0]).collect();
    assert_eq!(submodule_dim_vectors(&doubled, 2).unwrap(), expected);

    assert!(matches!(
        submodule_dim_vectors(&doubled, 4),
        Err(Error::UnsupportedPrime(4))
    ));
    let big = direct_sum(&vec![a.simple(1); 15]);
    assert!(matches!(
        submodule_dim_vectors(&big, 2),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn brute_force_semistability() {
    let a = alg(RUNNING);
    for m in [a.projective(0), a.simple(1), a.injective(1)] {
        assert!(is_semistable_bruteforce(&m, &vec![q(0); 3], 2).unwrap());
    }
    let theta = [q(1), q(1), q(0)];
    assert!(is_semistable_bruteforce(&a.simple(2), &theta, 2).unwrap());
    assert!(is_stable_bruteforce(&a.simple(2), &theta, 2).unwrap());
    assert!(!is_semistable_bruteforce(&a.projective(0), &theta, 2).unwrap());
    // 1\2 against θ = (1,-1,0): the socle pairs to -1, so stable
    let theta = [q(1), q(-1), q(0)];
    assert!(is_stable_bruteforce(&a.projective(0), &theta, 5).unwrap());
    // S(1) + S(2) is semistable but not stable for θ = 0
    let sum = direct_sum(&[a.simple(0), a.simple(1)]);
    assert!(!is_stable_bruteforce(&sum, &vec![q(0); 3], 2).unwrap());
}

#[test]
fn bricks_of_slots() {
    let mut tt = TauTilting::new(alg(RUNNING), 0);
    let a = tt.algebra().clone();
    let top = tt.top().unwrap();
    for r in 0..3 {
        let b = brick_of_slot(&mut tt, &top, r, 30).unwrap();
        assert!(is_isomorphic(&b, &a.simple(r), 0).unwrap());
    }
    let row2 = tt
        .pair_from_modules(
            &direct_sum(&[a.projective(0), a.projective(1), a.simple(1)]),
            &Representation::zero(a.quiver().clone()),
        )
        .unwrap();
    let slate = brick_slate(&mut tt, &row2, 30).unwrap();
    assert_eq!(names(&tt, &slate.b_plus()), vec!["1", "2\\3"]);

    let mut tt = TauTilting::new(alg(NAKAYAMA), 0);
    let n = tt.algebra().clone();
    let pair = tt
        .pair_from_modules(
            &direct_sum(&[n.projective(0), n.simple(0)]),
            &Representation::zero(n.quiver().clone()),
        )
        .unwrap();
    let slate = brick_slate(&mut tt, &pair, 30).unwrap();
    let plus = slate.b_plus();
    assert_eq!(plus.len(), 1);
    assert!(is_isomorphic(plus[0], &n.projective(0), 0).unwrap());
}

#[test]
fn slates_of_the_running_example() {
    let an = analysis(RUNNING);
    let slates = an.slates().unwrap();
    assert_eq!(slates.len(), 12);

    let top = slate_named(&an, &slates, "(1\\2 + 2\\3 + 3, 0)");
    assert_eq!(top.x_matrix, intmat::identity(3));
    assert_eq!(top.d_matrix, intmat::identity(3));

    let row4 = slate_named(&an, &slates, "(2\\3 + 3, 1\\2)");
    let mut positive: Vec<Vec<i64>> = row4.b_plus().iter().map(|b| b.dim_vector()).collect();
    positive.sort();
    assert_eq!(positive, vec![vec![0, 0, 1], vec![0, 1, 0]]);
    assert_eq!(row4.signs().iter().filter(|&&s| s == -1).count(), 1);

    let bottom = slate_named(&an, &slates, "(0, 1\\2 + 2\\3 + 3)");
    assert!(bottom.b_plus().is_empty());
    assert_eq!(bottom.signs(), vec![-1; 3]);
    let mut dims: Vec<Vec<i64>> = bottom.bricks.iter().map(|b| b.dim_vector()).collect();
    dims.sort();
    assert_eq!(dims, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);

    let shifted = slate_named(&an, &slates, "(3, 1\\2 + 2\\3)");
    assert_eq!(names(&an.tt, &shifted.b_plus()), vec!["3"]);

    for slate in &slates {
        let g = an.tt.g_matrix(&slate.pair).unwrap();
        let c = an.tt.c_matrix(&slate.pair).unwrap();
        assert_eq!(c, intmat::mul(&slate.x_matrix, &slate.d_matrix));
        assert_eq!(
            intmat::mul(&intmat::mul(&intmat::transpose(&g), &slate.x_matrix), &slate.d_matrix),
            intmat::identity(3)
        );
        assert!(slate.bricks.iter().all(is_brick));
    }
}

#[test]
fn torsion_membership() {
    let an = analysis(RUNNING);
    let a = an.tt.algebra().clone();
    let row2 = pair_named(&an, "(1\\2 + 2\\3 + 2, 0)");
    let m = an.tt.m_module(&row2.m);
    assert!(fac_contains(&an.tt, &row2, &m).unwrap());
    assert!(fac_contains(&an.tt, &row2, &a.simple(0)).unwrap());
    assert!(!fac_contains(&an.tt, &row2, &a.simple(2)).unwrap());

    let s1 = a.simple(0);
    let p2 = a.projective(1);
    assert!(minimal_torsion_contains(&[&s1, &p2], &a.projective(0)).unwrap());
    assert!(!minimal_torsion_contains(&[&a.simple(2)], &s1).unwrap());
    assert!(minimal_torsion_contains(&[&s1], &direct_sum(&[s1.clone(), s1.clone()])).unwrap());
    assert!(minimal_torsion_contains(&[], &Representation::zero(a.quiver().clone())).unwrap());
    assert!(!minimal_torsion_contains(&[], &s1).unwrap());
}

#[test]
fn fac_equals_minimal_torsion_class() {
    for (_, text) in CORPUS {
        let mut an = analysis(text);
        let probes = an.probes().unwrap();
        for slate in an.slates().unwrap() {
            let report = verify_facm_theorem(&an.tt, &slate, &probes).unwrap();
            assert!(report.passed(), "{}", an.tt.pair_name(&slate.pair));
            assert!(report.probes_checked >= probes.len());
            assert!(is_hom_orthogonal(&slate.b_plus()).unwrap());
        }
    }
}

#[test]
fn semibricks_locate_pairs() {
    let an = analysis(RUNNING);
    let a = an.tt.algebra().clone();
    let slates = an.slates().unwrap();
    let name = |k: Option<usize>| an.tt.pair_name(&slates[k.unwrap()].pair);

    let k = semibrick_to_pair(&a.simples(), &slates, 0).unwrap();
    assert_eq!(name(k), "(1\\2 + 2\\3 + 3, 0)");
    let k = semibrick_to_pair(&[a.projective(1)], &slates, 0).unwrap();
    assert_eq!(name(k), "(2\\3 + 2, 1\\2)");
    let k = semibrick_to_pair(&[], &slates, 0).unwrap();
    assert_eq!(name(k), "(0, 1\\2 + 2\\3 + 3)");
    assert!(matches!(
        semibrick_to_pair(&[a.projective(0), a.simple(1)], &slates, 0),
        Err(Error::NotHomOrthogonal)
    ));
}
