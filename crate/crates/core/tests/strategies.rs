mod common;

use std::collections::BTreeSet;

use num_rational::BigRational;
use openopen_core::game::{adjudicate, run_game, Game, Player, Strategy, TestFamily};
use openopen_core::registry::StrategyRegistry;
use openopen_core::spaces::{ClopenSet, Region, Space};
use openopen_core::strategies::{
    touched_summands, untouched_witness, CantorPlayerOne, DiagonalPlayerTwo, MeasurePlayerTwo, Scripted, SumPlayerTwo,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cantor() -> Space {
    Space::cantor()
}

fn cyls(sets: &[&[(u32, u8)]]) -> Vec<Region> {
    sets.iter().map(|s| Region::cyl(s)).collect()
}

#[test]
fn cantor_player_one_follows_the_index_set() {
    let mut g = Game::new(cantor(), 3, 0, "cantor-p1", "human").unwrap();
    let mut p1 = CantorPlayerOne::new();
    g.play_strategy(&mut p1).unwrap();
    assert_eq!(g.transcript().a(0).unwrap().sets(), &cyls(&[&[]])[..]);
    g.play(Player::Two, cyls(&[&[(5, 1)]])).unwrap();
    g.play_strategy(&mut p1).unwrap();
    assert_eq!(g.transcript().a(1).unwrap().sets(), &cyls(&[&[(5, 0)], &[(5, 1)]])[..]);
    g.play(Player::Two, cyls(&[&[(5, 0), (7, 1)], &[(5, 1)]])).unwrap();
    g.play_strategy(&mut p1).unwrap();
    let a2: BTreeSet<Region> = g.transcript().a(2).unwrap().sets().iter().cloned().collect();
    let want: BTreeSet<Region> = cyls(&[
        &[(5, 0), (7, 0)],
        &[(5, 0), (7, 1)],
        &[(5, 1), (7, 0)],
        &[(5, 1), (7, 1)],
    ])
    .into_iter()
    .collect();
    assert_eq!(a2, want);
}

#[test]
fn cantor_player_one_truncation_caps_the_index_set() {
    let c = cantor();
    let (mut p1, mut p2) = StrategyRegistry::with_defaults()
        .build_pair("cantor-p1:trunc:3", "random-p2:2", &c)
        .unwrap();
    let t = run_game(p1.as_mut(), p2.as_mut(), &c, 6, 5).unwrap();
    for a in t.player_one_moves() {
        assert!(a.len() <= 8);
    }
}

fn diagonal_game(pre: Vec<Vec<Region>>) -> (DiagonalPlayerTwo, openopen_core::game::Transcript) {
    let c = cantor();
    let mut p1 = Scripted::new(Player::One, pre.clone(), "inline");
    let mut p2 = DiagonalPlayerTwo::new(pre.clone()).unwrap();
    let t = run_game(&mut p1, &mut p2, &c, pre.len(), 0).unwrap();
    (p2, t)
}

#[test]
fn diagonal_examples() {
    let (d, t) = diagonal_game(vec![cyls(&[&[]]), cyls(&[&[(0, 1)]])]);
    assert_eq!(d.alpha(), 1);
    assert_eq!(t.b(0).unwrap().sets(), &cyls(&[&[(1, 1)]])[..]);
    assert_eq!(t.b(1).unwrap().sets(), &cyls(&[&[(0, 1), (1, 1)]])[..]);
    let w = d.witness();
    assert_eq!(w, Region::cyl(&[(1, 0)]));
    for b in t.player_two_moves() {
        for v in b.sets() {
            assert!(!cantor().meets(v, &w).unwrap());
        }
    }
    let (d, t) = diagonal_game(vec![cyls(&[&[(2, 0)]])]);
    assert_eq!(d.alpha(), 0);
    assert_eq!(t.b(0).unwrap().sets(), &cyls(&[&[(2, 0), (0, 1)]])[..]);
}

#[test]
fn diagonal_rejects_a_player_one_that_deviates() {
    let c = cantor();
    let mut p1 = CantorPlayerOne::new();
    let mut p2 = DiagonalPlayerTwo::new(vec![cyls(&[&[(3, 1)]])]).unwrap();
    assert!(run_game(&mut p1, &mut p2, &c, 1, 0).is_err());
}

fn random_precommit(rng: &mut ChaCha8Rng, rounds: usize) -> Vec<Vec<Region>> {
    let coords: Vec<u32> = (0..6).collect();
    (0..rounds)
        .map(|_| {
            let n = rng.gen_range(1..=3);
            (0..n)
                .map(|_| Region::cylinder(common::random_cylinder(rng, &coords)))
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn diagonal_witness_is_never_met(seed in any::<u64>(), rounds in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pre = random_precommit(&mut rng, rounds);
        let (d, t) = diagonal_game(pre);
        let w = d.witness();
        let tf = TestFamily::new("witness", [w.clone(), Region::cyl(&[])]);
        let cert = adjudicate(&cantor(), &t.player_two_moves(), &tf, 0).unwrap();
        prop_assert_eq!(cert.failing(), Some(&w));
        for b in t.player_two_moves() {
            for v in b.sets() {
                prop_assert!(!cantor().meets(v, &w).unwrap());
            }
        }
    }
}

#[test]
fn measure_first_reply_is_small() {
    let c = cantor();
    let mut g = Game::new(c.clone(), 1, 3, "human", "measure-p2").unwrap();
    g.play(Player::One, cyls(&[&[]])).unwrap();
    let mut p2 = MeasurePlayerTwo::default();
    g.play_strategy(&mut p2).unwrap();
    let b = g.transcript().b(0).unwrap();
    assert_eq!(b.len(), 1);
    let mu = c.measure(&b.sets()[0]).unwrap();
    assert!(mu <= BigRational::new(1.into(), 8.into()));
    assert!(mu < p2.round_budget(0));
}

#[test]
fn measure_total_stays_below_half() {
    let c = cantor();
    for seed in 0..4 {
        let (mut p1, mut p2) = StrategyRegistry::with_defaults()
            .build_pair("cantor-p1:trunc:10", "measure-p2", &c)
            .unwrap();
        let t = run_game(p1.as_mut(), p2.as_mut(), &c, 6, seed).unwrap();
        let union = ClopenSet::normalize(
            t.player_two_moves()
                .iter()
                .flat_map(|b| b.sets().to_vec())
                .flat_map(|v| v.as_clopen().unwrap().cylinders().to_vec()),
        );
        assert!(union.measure() < BigRational::new(1.into(), 2.into()));
        let w = union.complement_witness().unwrap();
        assert!(!ClopenSet::cylinder(w).meets(&union));
    }
}

#[test]
fn sum_player_two_leaves_a_summand_untouched() {
    let s = Space::parse("sum(10,cantor)").unwrap();
    let mut p1 = StrategyRegistry::with_defaults()
        .build("random-p1:2", Player::One, &s)
        .unwrap();
    let mut p2 = SumPlayerTwo;
    let t = run_game(p1.as_mut(), &mut p2, &s, 2, 4).unwrap();
    let bs: Vec<Vec<Region>> = t.player_two_moves().iter().map(|b| b.sets().to_vec()).collect();
    let touched = touched_summands(&s, &bs).unwrap();
    assert!(touched.len() <= 4);
    let lowest = (0..10).find(|k| !touched.contains(k)).unwrap();
    let w = untouched_witness(&s, &touched).unwrap().unwrap();
    assert_eq!(w, Region::sum([(lowest, Region::cyl(&[]))]));
    let tf = TestFamily::new("per-summand", (0..10).map(|k| Region::sum([(k, Region::cyl(&[]))])));
    assert!(!adjudicate(&s, &t.player_two_moves(), &tf, 0).unwrap().passed());
}

#[test]
fn sum_player_two_answers_the_whole_space_in_summand_zero() {
    let s = Space::parse("sum(10,cantor)").unwrap();
    let mut g = Game::new(s.clone(), 1, 0, "human", "sum-p2").unwrap();
    g.play(Player::One, vec![s.whole()]).unwrap();
    g.play_strategy(&mut SumPlayerTwo).unwrap();
    let b = g.transcript().b(0).unwrap();
    assert_eq!(touched_summands(&s, [b.sets()]).unwrap(), BTreeSet::from([0]));
}

#[test]
fn registry_lists_and_rejects() {
    let r = StrategyRegistry::with_defaults();
    let names: Vec<&str> = r.list().iter().map(|i| i.name).collect();
    for n in [
        "cantor-p1",
        "club-p1",
        "diagonal-p2",
        "measure-p2",
        "random-p1",
        "random-p2",
        "scripted",
        "sum-p2",
    ] {
        assert!(names.contains(&n), "{n}");
    }
    let c = cantor();
    assert!(r.build("nope", Player::One, &c).is_err());
    assert!(r.build("cantor-p1", Player::Two, &c).is_err());
    assert!(r.build_pair("cantor-p1", "diagonal-p2", &c).is_err());
}

#[test]
fn strategies_are_deterministic_per_seed() {
    let c = cantor();
    let run = |seed| {
        let (mut p1, mut p2) = StrategyRegistry::with_defaults()
            .build_pair("random-p1:3", "random-p2:2", &c)
            .unwrap();
        run_game(p1.as_mut(), p2.as_mut(), &c, 4, seed).unwrap().moves
    };
    assert_eq!(run(1), run(1));
    let s: Box<dyn Strategy> = Box::new(MeasurePlayerTwo::default());
    assert_eq!(s.name(), s.clone_box().name());
}
