use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::spaces::{Region, Space};

use super::family::first_unrefined;
use super::{MoveFamily, Player, Transcript};

/// What a strategy sees: the space and the full history `A_0, B_0, A_1, …`.
/// Player II additionally finds the current `A_n` as the last entry.
#[derive(Clone, Copy, Debug)]
pub struct Position<'a> {
    pub space: &'a Space,
    pub history: &'a [MoveFamily],
    pub rounds_n: usize,
}

impl<'a> Position<'a> {
    pub fn new(space: &'a Space, history: &'a [MoveFamily], rounds_n: usize) -> Self {
        Position {
            space,
            history,
            rounds_n,
        }
    }

    /// Index of the round being played.
    pub fn round(&self) -> usize {
        self.history.len() / 2
    }

    pub fn to_move(&self) -> Player {
        if self.history.len().is_multiple_of(2) {
            Player::One
        } else {
            Player::Two
        }
    }

    /// `A_0, A_1, …` played so far.
    pub fn player_one_moves(&self) -> impl Iterator<Item = &'a MoveFamily> {
        self.history.iter().step_by(2)
    }

    /// `B_0, B_1, …` played so far.
    pub fn player_two_moves(&self) -> impl Iterator<Item = &'a MoveFamily> {
        self.history.iter().skip(1).step_by(2)
    }

    /// The family Player II must answer, if it is Player II's turn.
    pub fn current_a(&self) -> Option<&'a MoveFamily> {
        match self.to_move() {
            Player::Two => self.history.last(),
            Player::One => None,
        }
    }
}

/// A strategy for one player. Output is validated by the engine, never
/// trusted.
pub trait Strategy: Send {
    fn name(&self) -> String;

    fn player(&self) -> Player;

    fn next_move(&mut self, pos: &Position<'_>, rng: &mut ChaCha8Rng) -> Result<Vec<Region>>;

    fn clone_box(&self) -> Box<dyn Strategy>;

    /// The full move list of a strategy committed to before play, if any.
    fn precommitted(&self) -> Option<Vec<Vec<Region>>> {
        None
    }
}

impl Clone for Box<dyn Strategy> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

/// Per-move generator: the master seed picks the key, `(round, player)` the
/// stream, so moves are reproducible independently of each other.
pub fn round_rng(seed: u64, round: usize, player: Player) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = match player {
        Player::One => 0,
        Player::Two => 1,
    };
    rng.set_stream((round as u64) * 2 + p);
    rng
}

/// A game in progress. Every move is checked before it is recorded, so the
/// underlying transcript is always legal.
#[derive(Clone, Debug)]
pub struct Game {
    transcript: Transcript,
}

impl Game {
    pub fn new(space: Space, rounds_n: usize, seed: u64, p1: impl Into<String>, p2: impl Into<String>) -> Result<Self> {
        if rounds_n == 0 {
            return Err(Error::config("round budget must be at least 1"));
        }
        Ok(Game {
            transcript: Transcript::new(space, seed, rounds_n, p1.into(), p2.into()),
        })
    }

    pub fn space(&self) -> &Space {
        &self.transcript.space
    }

    pub fn seed(&self) -> u64 {
        self.transcript.seed
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn into_transcript(self) -> Transcript {
        self.transcript
    }

    pub fn round(&self) -> usize {
        self.transcript.moves.len() / 2
    }

    pub fn is_finished(&self) -> bool {
        self.transcript.moves.len() >= 2 * self.transcript.rounds_n
    }

    pub fn to_move(&self) -> Option<Player> {
        if self.is_finished() {
            None
        } else {
            Some(self.position().to_move())
        }
    }

    pub fn position(&self) -> Position<'_> {
        Position::new(&self.transcript.space, &self.transcript.moves, self.transcript.rounds_n)
    }

    /// Checks a candidate move without recording it.
    pub fn check(&self, player: Player, sets: Vec<Region>) -> Result<MoveFamily> {
        let round = self.round();
        if self.to_move() != Some(player) {
            return Err(Error::IllegalMove {
                round,
                player,
                detail: if self.is_finished() {
                    "game is finished".into()
                } else {
                    "not this player's turn".into()
                },
            });
        }
        let fam = MoveFamily::validated(player, sets, self.space(), round)?;
        if player == Player::Two {
            let a = self.transcript.moves.last().expect("Player I moved first");
            let missing = first_unrefined(self.space(), a.sets(), fam.sets()).map_err(|e| Error::IllegalMove {
                round,
                player,
                detail: e.to_string(),
            })?;
            if let Some(i) = missing {
                return Err(Error::IllegalMove {
                    round,
                    player,
                    detail: format!("no chosen set refines {}", a.sets()[i]),
                });
            }
        }
        Ok(fam)
    }

    pub fn play(&mut self, player: Player, sets: Vec<Region>) -> Result<()> {
        let fam = self.check(player, sets)?;
        self.transcript.moves.push(fam);
        Ok(())
    }

    /// Asks `s` for the next move and records it.
    pub fn play_strategy(&mut self, s: &mut dyn Strategy) -> Result<()> {
        let player = self.to_move().ok_or_else(|| Error::config("game is finished"))?;
        if s.player() != player {
            return Err(Error::strategy(s.name(), format!("asked to move for {player}")));
        }
        let mut rng = round_rng(self.seed(), self.round(), player);
        let sets = s.next_move(&self.position(), &mut rng)?;
        self.play(player, sets)
    }
}

/// Plays `rounds_n` complete rounds of `s1` against `s2`.
pub fn run_game(
    s1: &mut dyn Strategy,
    s2: &mut dyn Strategy,
    space: &Space,
    rounds_n: usize,
    seed: u64,
) -> Result<Transcript> {
    if s1.player() != Player::One || s2.player() != Player::Two {
        return Err(Error::config(format!(
            "{} must be a Player I strategy and {} a Player II strategy",
            s1.name(),
            s2.name()
        )));
    }
    let mut game = Game::new(space.clone(), rounds_n, seed, s1.name(), s2.name())?;
    while !game.is_finished() {
        game.play_strategy(s1)?;
        game.play_strategy(s2)?;
    }
    Ok(game.into_transcript())
}
