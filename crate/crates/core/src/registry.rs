//! Named constructors for strategies and dense-open oracles, selected by
//! descriptor strings such as `random-p2:1` or `graph:1,0`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use crate::clubfilter::{parse_filter, BbbStrategy};
use crate::descriptor::parse_num;
use crate::error::{Error, Result};
use crate::game::{Player, Strategy};
use crate::ku::{parse_handle, parse_permutation, DenseOpenOracle, GraphComplement, HoleOracle};
use crate::spaces::Space;
use crate::strategies::{
    CantorPlayerOne, DiagonalPlayerTwo, MeasurePlayerTwo, RandomPlayerOne, RandomPlayerTwo, Scripted, SumPlayerTwo,
};

type StrategyFactory = Arc<dyn Fn(&str, Player, &Space, &StrategyRegistry) -> Result<Box<dyn Strategy>> + Send + Sync>;

struct StrategyEntry {
    player: Option<Player>,
    usage: &'static str,
    factory: StrategyFactory,
}

/// Strategy constructors keyed by the descriptor's leading name.
pub struct StrategyRegistry {
    entries: BTreeMap<&'static str, StrategyEntry>,
}

/// One row of [`StrategyRegistry::list`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StrategyInfo {
    pub name: &'static str,
    pub player: Option<Player>,
    pub usage: &'static str,
}

fn no_args(name: &str, args: &str) -> Result<()> {
    if args.is_empty() {
        Ok(())
    } else {
        Err(Error::config(format!("{name} takes no arguments, got `{args}`")))
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::with_defaults()
    }
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register<F>(&mut self, name: &'static str, player: Option<Player>, usage: &'static str, factory: F)
    where
        F: Fn(&str, Player, &Space, &StrategyRegistry) -> Result<Box<dyn Strategy>> + Send + Sync + 'static,
    {
        self.entries.insert(
            name,
            StrategyEntry {
                player,
                usage,
                factory: Arc::new(factory),
            },
        );
    }

    pub fn with_defaults() -> Self {
        let mut r = StrategyRegistry::empty();
        r.register(
            "cantor-p1",
            Some(Player::One),
            "cantor-p1[:trunc:<cap>]",
            |args, _, _, _| {
                if args.is_empty() {
                    return Ok(Box::new(CantorPlayerOne::new()));
                }
                match args.strip_prefix("trunc:") {
                    Some(cap) => Ok(Box::new(CantorPlayerOne::truncating(parse_num(cap, "coordinate cap")?))),
                    None => Err(Error::config(format!("cantor-p1: unknown option `{args}`"))),
                }
            },
        );
        r.register(
            "club-p1",
            Some(Player::One),
            "club-p1:<filter>",
            |args, _, space, reg| {
                let source = parse_filter(args, space, reg)?;
                Ok(Box::new(BbbStrategy::new(source)))
            },
        );
        r.register("diagonal-p2", Some(Player::Two), "diagonal-p2[:<script>]", |args, _, space, _| {
            if args.is_empty() {
                return Err(Error::config(
                    "diagonal-p2 needs the precommitted sequence: pass diagonal-p2:<script> or pair it with scripted:<path>",
                ));
            }
            let script = Scripted::load(Player::One, Path::new(args), space)?;
            Ok(Box::new(DiagonalPlayerTwo::new(script.moves().to_vec())?))
        });
        r.register(
            "measure-p2",
            Some(Player::Two),
            "measure-p2[:<offset>]",
            |args, _, _, _| {
                if args.is_empty() {
                    Ok(Box::new(MeasurePlayerTwo::default()))
                } else {
                    Ok(Box::new(MeasurePlayerTwo::new(parse_num(args, "offset")?)))
                }
            },
        );
        r.register("sum-p2", Some(Player::Two), "sum-p2", |args, _, _, _| {
            no_args("sum-p2", args)?;
            Ok(Box::new(SumPlayerTwo))
        });
        r.register("random-p2", Some(Player::Two), "random-p2:<k>", |args, _, _, _| {
            Ok(Box::new(RandomPlayerTwo::new(parse_num(args, "random-p2 extension")?)))
        });
        r.register("random-p1", Some(Player::One), "random-p1:<k>", |args, _, _, _| {
            Ok(Box::new(RandomPlayerOne::new(parse_num(args, "random-p1 size")?)))
        });
        r.register("scripted", None, "scripted:<path>", |args, player, space, _| {
            Ok(Box::new(Scripted::load(player, Path::new(args), space)?))
        });
        r
    }

    /// Builds the strategy named by `desc` for `player`.
    pub fn build(&self, desc: &str, player: Player, space: &Space) -> Result<Box<dyn Strategy>> {
        let desc = desc.trim();
        let (name, args) = desc.split_once(':').unwrap_or((desc, ""));
        let entry = self
            .entries
            .get(name)
            .ok_or_else(|| Error::config(format!("unknown strategy `{name}`")))?;
        if let Some(p) = entry.player {
            if p != player {
                return Err(Error::config(format!("{name} plays as {p}, not {player}")));
            }
        }
        (entry.factory)(args, player, space, self)
    }

    /// Builds both players. A bare `diagonal-p2` takes its precommitted
    /// sequence from a scripted Player I.
    pub fn build_pair(&self, p1: &str, p2: &str, space: &Space) -> Result<(Box<dyn Strategy>, Box<dyn Strategy>)> {
        let s1 = self.build(p1, Player::One, space)?;
        let s2 = if p2.trim() == "diagonal-p2" {
            let moves = s1
                .precommitted()
                .ok_or_else(|| Error::config("bare diagonal-p2 needs a precommitted Player I (scripted:<path>)"))?;
            Box::new(DiagonalPlayerTwo::new(moves)?) as Box<dyn Strategy>
        } else {
            self.build(p2, Player::Two, space)?
        };
        Ok((s1, s2))
    }

    pub fn list(&self) -> Vec<StrategyInfo> {
        self.entries
            .iter()
            .map(|(name, e)| StrategyInfo {
                name,
                player: e.player,
                usage: e.usage,
            })
            .collect()
    }
}

/// One row of [`OracleRegistry::list`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OracleInfo {
    pub name: &'static str,
    pub usage: &'static str,
}

/// Dense-open oracles by descriptor: `diag`, `graph:<images>`,
/// `nd:<handle>`, `hole`.
#[derive(Clone, Copy, Debug, Default)]
pub struct OracleRegistry;

impl OracleRegistry {
    pub fn build(&self, desc: &str) -> Result<Arc<dyn DenseOpenOracle>> {
        let (name, args) = desc.split_once(':').unwrap_or((desc, ""));
        match name {
            "diag" => {
                no_args(name, args)?;
                Ok(Arc::new(GraphComplement::off_diagonal()))
            }
            "graph" => Ok(Arc::new(GraphComplement::new(parse_permutation(args)?))),
            "nd" => Ok(Arc::from(parse_handle(args)?)),
            "hole" => {
                no_args(name, args)?;
                Ok(Arc::new(HoleOracle))
            }
            _ => Err(Error::config(format!("unknown oracle `{desc}`"))),
        }
    }

    pub fn list(&self) -> Vec<OracleInfo> {
        vec![
            OracleInfo {
                name: "diag",
                usage: "diag: complement of the diagonal (or of {(x, {x})} over exp(cantor))",
            },
            OracleInfo {
                name: "graph",
                usage: "graph:<i0,i1,...>: complement of the graph of a coordinate permutation",
            },
            OracleInfo {
                name: "nd",
                usage: "nd:diag|empty|graph:<images>: complement of a closed nowhere dense set",
            },
            OracleInfo {
                name: "hole",
                usage: "hole: complement of W_{0↦0} × W_{0↦0} (open, not dense)",
            },
        ]
    }
}
