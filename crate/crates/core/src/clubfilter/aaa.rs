use super::element::{intersection_closure, FilterElement};
use crate::error::{Error, Result};
use crate::game::{round_rng, subsets_of_size, MoveFamily, Player, Position, Strategy};
use crate::spaces::{Region, Space};

/// Bounded closure of `r0` under pairwise intersection and under `sigma`
/// applied to every sequence of at most `seqlen` subfamilies of size at most
/// `arity`, repeated `depth` times. Histories fed to `sigma` need not be
/// legal games.
pub fn aaa_closure(
    space: &Space,
    r0: &[Region],
    sigma: &dyn Strategy,
    depth: usize,
    arity: usize,
    seqlen: usize,
) -> Result<FilterElement> {
    if depth == 0 {
        return Err(Error::config("closure depth must be at least 1"));
    }
    if sigma.player() != Player::One {
        return Err(Error::config(format!("{} is not a Player I strategy", sigma.name())));
    }
    let cap = space.caps().closure;
    let mut r = FilterElement::new(space, r0.iter().cloned(), Vec::new())?;
    let mut trace = vec![format!(
        "closure sigma={} depth={depth} arity={arity} seqlen={seqlen} |R_0|={}",
        sigma.name(),
        r.len()
    )];
    for level in 1..=depth {
        let subfamilies = canonical_subfamilies(r.sets(), arity);
        let calls: u128 = (0..=seqlen as u32).map(|l| (subfamilies.len() as u128).pow(l)).sum();
        if calls > cap as u128 {
            return Err(Error::CapExceeded {
                what: "closure sequences",
                limit: cap,
                actual: calls.min(usize::MAX as u128) as usize,
            });
        }
        let mut outputs = Vec::new();
        let mut history = Vec::new();
        let mut sigma = sigma.clone_box();
        apply_all(space, sigma.as_mut(), &subfamilies, seqlen, &mut history, &mut outputs)?;
        let mut next = r.clone();
        for o in outputs {
            next.insert(o)?;
        }
        r = intersection_closure(next, cap)?;
        trace.push(format!("|R_{level}|={}", r.len()));
    }
    let mut out = FilterElement::new(space, r.sets().iter().cloned(), trace)?;
    out.push_provenance("intersection-closed");
    Ok(out)
}

/// Nonempty subfamilies of at most `arity` members, by size and then
/// lexicographically in canonical member order.
fn canonical_subfamilies(sets: &[Region], arity: usize) -> Vec<Vec<Region>> {
    let idx: Vec<u32> = (0..sets.len() as u32).collect();
    let mut out = Vec::new();
    for k in 1..=arity.min(sets.len()) {
        for choice in subsets_of_size(&idx, k) {
            out.push(choice.iter().map(|&i| sets[i as usize].clone()).collect());
        }
    }
    out
}

fn apply_all(
    space: &Space,
    sigma: &mut dyn Strategy,
    subfamilies: &[Vec<Region>],
    remaining: usize,
    history: &mut Vec<MoveFamily>,
    outputs: &mut Vec<Region>,
) -> Result<()> {
    let round = history.len() / 2;
    let pos = Position::new(space, history, round + 1);
    let a = sigma.next_move(&pos, &mut round_rng(0, round, Player::One))?;
    outputs.extend(a.iter().cloned());
    if remaining == 0 {
        return Ok(());
    }
    history.push(MoveFamily::new(Player::One, a));
    for f in subfamilies {
        history.push(MoveFamily::new(Player::Two, f.iter().cloned()));
        apply_all(space, sigma, subfamilies, remaining - 1, history, outputs)?;
        history.pop();
    }
    history.pop();
    Ok(())
}
