mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use openopen_core::clubfilter::{
    aaa_closure, canonical_cj, check_condition3, check_condition3_hyperspace, check_omega_chain,
    close_under_intersections, hyperspace_filter_element, parse_filter, product_filter_element, verify_condition3,
    BbbStrategy, CjSource, Condition3, FilterElement,
};
use openopen_core::game::{run_game, Game, Player, Position, Strategy as GameStrategy};
use openopen_core::registry::StrategyRegistry;
use openopen_core::spaces::{vietoris, ClopenSet, Cylinder, Region, Space};
use openopen_core::strategies::CantorPlayerOne;
use proptest::prelude::*;

fn cantor() -> Space {
    Space::cantor()
}

fn exp() -> Space {
    Space::parse("exp(cantor)").unwrap()
}

fn j(coords: &[u32]) -> BTreeSet<u32> {
    coords.iter().copied().collect()
}

fn el(space: &Space, sets: Vec<Region>) -> FilterElement {
    FilterElement::new(space, sets, vec!["test".into()]).unwrap()
}

fn set_of(p: &FilterElement) -> BTreeSet<Region> {
    p.sets().iter().cloned().collect()
}

#[test]
fn canonical_cj_examples() {
    let c = cantor();
    let p = canonical_cj(&c, &j(&[0]), 1).unwrap();
    assert_eq!(
        set_of(&p),
        [Region::cyl(&[]), Region::cyl(&[(0, 0)]), Region::cyl(&[(0, 1)])].into()
    );
    assert_eq!(p.sets()[0], Region::cyl(&[]), "coarse first");
    assert_eq!(canonical_cj(&c, &j(&[0, 1]), 2).unwrap().len(), 9);
    assert_eq!(
        set_of(&canonical_cj(&c, &j(&[]), 3).unwrap()),
        [Region::cyl(&[])].into()
    );
}

#[test]
fn condition3_examples() {
    let c = cantor();
    let p = canonical_cj(&c, &j(&[0]), 1).unwrap();
    let v = Region::cyl(&[(1, 1)]);
    let r = check_condition3(&p, &v).unwrap();
    assert!(r.witness().is_some());
    assert!(verify_condition3(&p, &v, &r).unwrap());
    // W_{0↦0} is itself a valid witness
    let only = el(&c, vec![Region::cyl(&[(0, 0)])]);
    assert_eq!(
        check_condition3(&only, &v).unwrap().witness(),
        Some(&Region::cyl(&[(0, 0)]))
    );

    let lone = el(&c, vec![Region::cyl(&[(1, 0)])]);
    let r = check_condition3(&lone, &v).unwrap();
    assert!(matches!(&r, Condition3::Counterexample(pairs) if pairs.len() == 1));
    assert!(verify_condition3(&lone, &v, &r).unwrap());

    let r = check_condition3(&p, &Region::cyl(&[])).unwrap();
    assert_eq!(r.witness(), Some(&p.sets()[0]));
}

/// First `W ∈ P` (in element order) all of whose `P`-subsets meet `V`,
/// decided by point enumeration.
fn brute_condition3(p: &FilterElement, v: &ClopenSet, coords: &[u32]) -> Option<Region> {
    let pts: Vec<BTreeSet<u32>> = p.sets().iter().map(|r| common::region_points(r, coords)).collect();
    let vp = common::points(v, coords);
    (0..pts.len())
        .find(|&w| pts.iter().filter(|u| u.is_subset(&pts[w])).all(|u| !u.is_disjoint(&vp)))
        .map(|w| p.sets()[w].clone())
}

fn arb_cyl(coords: Vec<u32>) -> impl proptest::strategy::Strategy<Value = Cylinder> {
    proptest::collection::btree_map(prop::sample::select(coords), any::<bool>(), 0..=3)
        .prop_map(|m| Cylinder::from_pairs(m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn condition3_matches_brute_force(
        members in proptest::collection::vec(arb_cyl(vec![0, 1, 2]), 1..6),
        v in proptest::collection::vec(arb_cyl(vec![0, 1, 2]), 1..3),
    ) {
        let c = cantor();
        let p = el(&c, members.into_iter().map(Region::cylinder).collect());
        let v = ClopenSet::normalize(v);
        let r = check_condition3(&p, &Region::Clopen(v.clone())).unwrap();
        prop_assert_eq!(r.witness().cloned(), brute_condition3(&p, &v, &[0, 1, 2]));
        prop_assert!(verify_condition3(&p, &Region::Clopen(v), &r).unwrap());
    }

    #[test]
    fn cj_always_has_a_witness(
        jset in proptest::collection::btree_set(0u32..4, 0..=4),
        v in arb_cyl(vec![0, 1, 2, 3, 4, 5]),
    ) {
        let c = cantor();
        let p = canonical_cj(&c, &jset, jset.len()).unwrap();
        let v = Region::cylinder(v);
        let r = check_condition3(&p, &v).unwrap();
        prop_assert!(r.witness().is_some());
        prop_assert!(verify_condition3(&p, &v, &r).unwrap());
    }
}

#[test]
fn omega_chain_examples() {
    let c = cantor();
    let a = canonical_cj(&c, &j(&[0]), 1).unwrap();
    let b = canonical_cj(&c, &j(&[0, 1]), 2).unwrap();
    assert!(check_omega_chain(&[a.clone(), b.clone()]).unwrap());
    assert!(!check_omega_chain(&[b, a.clone()]).unwrap());
    assert!(check_omega_chain(&[a.clone(), a]).unwrap());
}

#[test]
fn club_strategy_first_moves() {
    let c = cantor();
    let src = Arc::new(CjSource::new(c.clone(), j(&[]), 2).unwrap());
    let mut p1 = BbbStrategy::new(src);
    let mut g = Game::new(c.clone(), 3, 0, p1.name(), "human").unwrap();
    g.play_strategy(&mut p1).unwrap();
    assert_eq!(g.transcript().a(0).unwrap().sets(), &[Region::cyl(&[])]);
    g.play(Player::Two, vec![Region::cyl(&[(0, 1)])]).unwrap();
    g.play_strategy(&mut p1).unwrap();
    let pos_hist = g.transcript().moves.clone();
    let pos = Position::new(&c, &pos_hist, 3);
    let p0 = p1.elements(&pos).unwrap()[0].1.clone();
    assert!(p0.contains(&Region::cyl(&[(0, 1)])).unwrap());
    assert_eq!(g.transcript().a(1).unwrap().sets(), &[p0.sets()[0].clone()]);
    g.play(Player::Two, vec![Region::cyl(&[(1, 0)])]).unwrap();
    g.play_strategy(&mut p1).unwrap();
    assert!(g.transcript().a(2).unwrap().len() <= 4);
}

#[test]
fn club_strategy_is_legal_and_chains_over_many_games() {
    let c = cantor();
    for seed in 0..20 {
        let (mut p1, mut p2) = StrategyRegistry::with_defaults()
            .build_pair("club-p1:cj::2", "random-p2:1", &c)
            .unwrap();
        let t = run_game(p1.as_mut(), p2.as_mut(), &c, 6, seed).unwrap();
        t.validate().unwrap();
        let src = parse_filter("cj::2", &c, &StrategyRegistry::with_defaults()).unwrap();
        let mut club = BbbStrategy::new(src);
        let pos = Position::new(&c, &t.moves, 6);
        let chain: Vec<FilterElement> = club.elements(&pos).unwrap().iter().map(|(_, p)| p.clone()).collect();
        assert!(check_omega_chain(&chain).unwrap());
    }
}

#[test]
fn strategy_closure_examples() {
    let c = cantor();
    let sigma = CantorPlayerOne::new();
    let out = aaa_closure(&c, &[Region::cyl(&[(0, 1)])], &sigma, 1, 1, 1).unwrap();
    for r in [Region::cyl(&[]), Region::cyl(&[(0, 0)]), Region::cyl(&[(0, 1)])] {
        assert!(out.contains(&r).unwrap(), "{r}");
    }
    let empty = aaa_closure(&c, &[], &sigma, 1, 1, 1).unwrap();
    assert_eq!(set_of(&empty), [Region::cyl(&[])].into());
}

#[test]
fn strategy_closure_is_intersection_closed() {
    let c = cantor();
    let sigma = CantorPlayerOne::new();
    let r0 = [Region::cyl(&[(0, 1)]), Region::cyl(&[(2, 0)])];
    let out = aaa_closure(&c, &r0, &sigma, 2, 2, 1).unwrap();
    for a in out.sets() {
        for b in out.sets() {
            let m = c.intersect(a, b).unwrap();
            if c.is_nonempty(&m).unwrap() {
                assert!(out.contains(&m).unwrap(), "{a} ∩ {b}");
            }
        }
    }
    assert!(out.intersection_gap().unwrap().is_none());
}

#[test]
fn product_element_examples() {
    let p = Space::parse("product(cantor,cantor)").unwrap();
    let c = cantor();
    let p0 = el(&c, vec![Region::cyl(&[]), Region::cyl(&[(3, 1)])]);
    let p1 = el(&c, vec![Region::cyl(&[])]);
    let whole = Region::Box(vec![Region::cyl(&[]), Region::cyl(&[])]);
    let out = product_filter_element(&p, &[p0.clone(), p1.clone()], &[0].into()).unwrap();
    assert_eq!(
        set_of(&out),
        [
            whole.clone(),
            Region::Box(vec![Region::cyl(&[(3, 1)]), Region::cyl(&[])])
        ]
        .into()
    );
    let none = product_filter_element(&p, &[p0.clone(), p1.clone()], &BTreeSet::new()).unwrap();
    assert_eq!(set_of(&none), [whole.clone()].into());
    let singles = product_filter_element(&p, &[p1.clone(), p1.clone()], &[0, 1].into()).unwrap();
    assert_eq!(set_of(&singles), [whole].into());

    // restricting to a factor lands inside that factor's element
    let q1 = canonical_cj(&c, &j(&[0, 1]), 1).unwrap();
    let both = product_filter_element(&p, &[p0.clone(), q1.clone()], &[0, 1].into()).unwrap();
    for r in both.sets() {
        let Region::Box(fs) = r else { panic!("box expected") };
        assert!(p0.contains(&fs[0]).unwrap());
        assert!(q1.contains(&fs[1]).unwrap());
    }
}

#[test]
fn hyperspace_element_examples() {
    let h = exp();
    let c = cantor();
    let whole = el(&c, vec![Region::cyl(&[])]);
    let ps = hyperspace_filter_element(&h, &whole, 2).unwrap();
    assert_eq!(set_of(&ps), [Region::vietoris([Region::cyl(&[])])].into());

    let p = close_under_intersections(canonical_cj(&c, &j(&[0]), 1).unwrap()).unwrap();
    let ps = hyperspace_filter_element(&h, &p, 1).unwrap();
    assert_eq!(
        set_of(&ps),
        [
            Region::vietoris([Region::cyl(&[])]),
            Region::vietoris([Region::cyl(&[(0, 0)])]),
            Region::vietoris([Region::cyl(&[(0, 1)])]),
        ]
        .into()
    );

    let ps1 = hyperspace_filter_element(&h, &whole, 2).unwrap();
    let v = Region::vietoris([Region::cyl(&[])]);
    assert_eq!(check_condition3_hyperspace(&ps1, &v).unwrap().witness(), Some(&v));

    let ps2 = hyperspace_filter_element(&h, &p, 2).unwrap();
    let v = Region::vietoris([Region::cyl(&[(1, 0)]), Region::cyl(&[(1, 1)])]);
    match check_condition3_hyperspace(&ps2, &v).unwrap() {
        Condition3::Witness {
            w,
            points: Some(points),
            ..
        } => {
            let (Region::Vietoris(wb), Region::Vietoris(vb)) = (&w, &v) else {
                unreachable!()
            };
            assert!(vietoris::contains_finite_set(&c, wb, &points).unwrap());
            assert!(vietoris::contains_finite_set(&c, vb, &points).unwrap());
        }
        other => panic!("{other:?}"),
    }

    let lone = el(&h, vec![Region::vietoris([Region::cyl(&[(1, 0)])])]);
    let r = check_condition3_hyperspace(&lone, &Region::vietoris([Region::cyl(&[(1, 1)])])).unwrap();
    assert!(matches!(r, Condition3::Counterexample(_)));
}

#[test]
fn hyperspace_element_requires_intersection_closed_input() {
    let h = exp();
    let c = cantor();
    let open = el(&c, vec![Region::cyl(&[(0, 1)]), Region::cyl(&[(1, 1)])]);
    assert!(hyperspace_filter_element(&h, &open, 2).is_err());
}

#[test]
fn filter_json_round_trip() {
    let c = cantor();
    let p = canonical_cj(&c, &j(&[0, 2]), 2).unwrap();
    let back = FilterElement::from_json(&p.to_json()).unwrap();
    assert!(back.same_family(&p).unwrap());
    assert_eq!(back.provenance(), p.provenance());
}

#[test]
fn filter_descriptors() {
    let reg = StrategyRegistry::with_defaults();
    let c = cantor();
    for d in ["cj:0,1:2", "aaa:cantor-p1:1:1:1"] {
        let src = parse_filter(d, &c, &reg).unwrap();
        let out = src.extend(&[Region::cyl(&[(3, 0)])]).unwrap();
        assert!(out.contains(&Region::cyl(&[(3, 0)])).unwrap(), "{d}");
    }
    let p = Space::parse("product(cantor,cantor)").unwrap();
    assert!(parse_filter("prod(cj:0:1,cj:1:1)", &p, &reg).is_ok());
    assert!(parse_filter("exp(cj:0:1):2", &exp(), &reg).is_ok());
    assert!(parse_filter("exp(cj:0:1):2", &c, &reg).is_err());
    assert!(parse_filter("bogus", &c, &reg).is_err());
}

#[test]
fn club_strategy_over_products_and_hyperspaces_is_legal() {
    let reg = StrategyRegistry::with_defaults();
    for (space, p1) in [
        ("product(cantor,cantor)", "club-p1:prod(cj::1,cj::1)"),
        ("exp(cantor)", "club-p1:exp(cj::1):2"),
    ] {
        let s = Space::parse(space).unwrap();
        for seed in 0..5 {
            let (mut a, mut b) = reg.build_pair(p1, "random-p2:1", &s).unwrap();
            let t = run_game(a.as_mut(), b.as_mut(), &s, 3, seed).unwrap();
            t.validate().unwrap();
        }
    }
}

#[test]
fn club_strategy_rejects_the_wrong_turn() {
    let c = cantor();
    let src = Arc::new(CjSource::new(c.clone(), j(&[0]), 1).unwrap());
    let mut p1: Box<dyn GameStrategy> = Box::new(BbbStrategy::new(src));
    let mut g = Game::new(c, 1, 0, "club", "human").unwrap();
    g.play_strategy(p1.as_mut()).unwrap();
    assert!(g.play_strategy(p1.as_mut()).is_err());
}
