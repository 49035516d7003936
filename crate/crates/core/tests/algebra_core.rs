mod common;

use common::{alg, q, LOOP, POINT, RUNNING};
use tautilt_core::algebra::{nakayama_on_map, ProjMap};
use tautilt_core::decompose::is_isomorphic;
use tautilt_core::rep::hom_dim;
use tautilt_core::{BoundQuiver, Error};

#[test]
fn path_bases() {
    let a = alg(RUNNING);
    let names: Vec<String> = a.basis().iter().map(|p| a.path_name(p)).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(sorted, vec!["a", "b", "e1", "e2", "e3"]);
    assert_eq!(a.dim(), 5);
    assert_eq!(alg(POINT).dim(), 1);
    assert_eq!(alg(LOOP).dim(), 4);
}

#[test]
fn parse_errors() {
    assert!(matches!(
        BoundQuiver::parse("vertices 2\narrow a 1 -> 2"),
        Err(Error::Syntax { line: 2, .. })
    ));
    assert!(matches!(
        BoundQuiver::parse("vertices 2\narrow a: 1 -> 1"),
        Err(Error::NotAdmissible(_))
    ));
    assert!(matches!(
        BoundQuiver::parse("vertices 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation a - b"),
        Err(Error::NonParallelRelation { line: 4 })
    ));
}

#[test]
fn comments_and_coefficients() {
    let text = "# square\nvertices 4\narrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\nrelation a*b - 2 c*d\n";
    let a = BoundQuiver::parse(text).unwrap();
    assert_eq!(a.dim(), 4 + 4 + 1);
}

#[test]
fn projectives() {
    let a = alg(RUNNING);
    assert_eq!(a.projective(0).dims(), &[1, 1, 0]);
    assert!(is_isomorphic(&a.projective(2), &a.simple(2), 0).unwrap());
    assert_eq!(alg(POINT).projective(0).dims(), &[1]);
    assert_eq!(alg(LOOP).projective(1).dims(), &[0, 2]);
}

#[test]
fn injectives() {
    let a = alg(RUNNING);
    assert_eq!(a.injective(1).dims(), &[1, 1, 0]);
    assert!(is_isomorphic(&a.injective(0), &a.simple(0), 0).unwrap());
    assert_eq!(alg(POINT).injective(0).dims(), &[1]);
}

#[test]
fn projective_dimensions_add_up() {
    for text in [RUNNING, LOOP, POINT, common::NAKAYAMA, common::A3] {
        let a = alg(text);
        let total: usize = a.projectives().iter().map(|p| p.total_dim()).sum();
        assert_eq!(total, a.dim());
        for i in 0..a.n() {
            let top = a.projective(i).top().module;
            assert!(is_isomorphic(&top, &a.simple(i), 0).unwrap());
            let soc = a.injective(i).socle().module;
            assert!(is_isomorphic(&soc, &a.simple(i), 0).unwrap());
        }
    }
}

#[test]
fn nakayama_functor_on_maps() {
    let a = alg(RUNNING);
    let id = ProjMap::identity(&a, &[0]);
    let nu = nakayama_on_map(&a, &id);
    assert!(nu.is_isomorphism());
    assert_eq!(nu.source().dims(), a.injective(0).dims());

    let zero = ProjMap::zero(&a, &[1], &[0]);
    assert!(nakayama_on_map(&a, &zero).is_zero());

    // P(2) -> P(1) given by the arrow a
    let alpha = ProjMap::new(&a, vec![1], vec![0], vec![vec![vec![q(1)]]]).unwrap();
    let nu = nakayama_on_map(&a, &alpha);
    assert_eq!(nu.source().dims(), &[1, 1, 0]);
    assert_eq!(nu.target().dims(), &[1, 0, 0]);
    assert_eq!(nu.rank_vector(), vec![1, 0, 0]);
    assert_eq!(hom_dim(&a.injective(1), &a.injective(0)).unwrap(), 1);

    assert!(matches!(
        ProjMap::new(&a, vec![1], vec![0], vec![vec![vec![q(1), q(2)]]]),
        Err(Error::NotProjectiveMap(_))
    ));
}

#[test]
fn text_round_trip() {
    for (_, text) in common::CORPUS {
        let a = alg(text);
        let b = BoundQuiver::parse(&a.to_text()).unwrap();
        assert_eq!(a.dim(), b.dim());
        for i in 0..a.n() {
            assert_eq!(a.projective(i).dims(), b.projective(i).dims());
        }
    }
}
