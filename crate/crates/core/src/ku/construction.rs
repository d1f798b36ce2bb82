use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::{MoveFamily, Player, Position, Strategy, Transcript};
use crate::spaces::{region_to_json, ClopenSet, Region, Space};

use super::oracle::{check_refinement, clopen, DenseOpenOracle};

#[derive(Clone, Debug)]
pub struct KuConfig {
    pub rounds: usize,
    pub branching: usize,
    /// Defaults to the space's branch cap.
    pub max_branches: Option<usize>,
    pub seed: u64,
}

impl KuConfig {
    pub fn new(rounds: usize, branching: usize, seed: u64) -> Self {
        KuConfig {
            rounds,
            branching,
            max_branches: None,
            seed,
        }
    }
}

/// One member `Q` of a `W_n` together with Player II's answer `B_n(Q)`.
#[derive(Clone, Debug)]
pub struct KuCell {
    pub q: Region,
    pub b: Vec<Region>,
    pub explored: bool,
}

/// The partition of a parent cell `q` at depth `depth`, built against
/// Player I's move `a` in `Y`.
#[derive(Clone, Debug)]
pub struct KuNode {
    pub depth: usize,
    pub path: Vec<usize>,
    pub q: Region,
    pub a: Vec<Region>,
    pub cells: Vec<KuCell>,
    /// `(cell index, subtree)` for each explored cell.
    pub children: Vec<(usize, KuNode)>,
}

/// A root-to-leaf path: the cells `Q_0 ⊇ Q_1 ⊇ …` and the `Y`-side
/// history `A_0, B_0(Q_0), A_1, …`.
#[derive(Clone, Debug)]
pub struct KuBranch {
    pub path: Vec<usize>,
    pub qs: Vec<Region>,
    pub history: Vec<MoveFamily>,
}

#[derive(Clone, Debug)]
pub struct KuResult {
    pub x: Space,
    pub y: Space,
    pub oracle: String,
    pub strategy: String,
    pub rounds: usize,
    pub branching: usize,
    pub max_branches: usize,
    pub seed: u64,
    pub root: KuNode,
    pub pruned: Vec<String>,
    /// `X` minus the union of the last level: the part of `X` no explored
    /// branch reaches.
    pub p_report: ClopenSet,
}

fn path_stream(path: &[usize]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &i in path.iter().chain(std::iter::once(&usize::MAX)) {
        for byte in (i as u64).to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

pub(crate) fn path_rng(seed: u64, path: &[usize]) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path_stream(path));
    rng
}

struct Builder<'a> {
    y: &'a Space,
    oracle: &'a dyn DenseOpenOracle,
    cfg: &'a KuConfig,
    max_branches: usize,
    leaves: usize,
    pruned: Vec<String>,
}

impl Builder<'_> {
    fn node(
        &mut self,
        q: Region,
        history: &mut Vec<MoveFamily>,
        path: Vec<usize>,
        mut strategy: Box<dyn Strategy>,
    ) -> Result<KuNode> {
        let depth = history.len() / 2;
        let pos = Position::new(self.y, history, self.cfg.rounds);
        let mut rng = path_rng(self.cfg.seed, &path);
        let a = strategy.next_move(&pos, &mut rng)?;
        let a = MoveFamily::validated(Player::One, a, self.y, depth)?;
        let targets = a
            .sets()
            .iter()
            .map(|u| self.y.canonical_refinement(u))
            .collect::<Result<Vec<_>>>()?;

        let mut cells = self.partition(&q, &targets)?;
        let want = self.cfg.branching.min(cells.len());
        let room = self.max_branches.saturating_sub(self.leaves);
        let take = want.min(room + 1).max(1);
        self.leaves += take - 1;
        for (i, cell) in cells.iter_mut().enumerate() {
            cell.explored = i < take;
            if i >= take && i < want {
                self.pruned
                    .push(format!("{path:?}/{i}: branch cap {} reached", self.max_branches));
            }
        }

        let mut children = Vec::new();
        if depth + 1 < self.cfg.rounds {
            for (i, cell) in cells.iter().take(take).enumerate() {
                let cell = cell.clone();
                history.push(a.clone());
                history.push(MoveFamily::new(Player::Two, cell.b.clone()));
                let mut child_path = path.clone();
                child_path.push(i);
                let child = self.node(cell.q.clone(), history, child_path, strategy.clone_box());
                history.truncate(history.len() - 2);
                children.push((i, child?));
            }
        }
        Ok(KuNode {
            depth,
            path,
            q,
            a: a.sets().to_vec(),
            cells,
            children,
        })
    }

    /// Splits `q` into cells, each refined by the oracle against every
    /// target at once. Pieces are taken as the first cylinder of what is
    /// left, so the cells are pairwise disjoint and cover `q`.
    fn partition(&self, q: &Region, targets: &[Region]) -> Result<Vec<KuCell>> {
        let name = self.oracle.name();
        let mut rest = clopen(&name, q)?.clone();
        let limit = self.y.caps().closure;
        let mut cells = Vec::new();
        while let Some(c) = rest.first_cylinder().cloned() {
            if cells.len() >= limit {
                return Err(Error::CapExceeded {
                    what: "partition cells",
                    limit,
                    actual: cells.len() + 1,
                });
            }
            let piece = Region::cylinder(c);
            let out = self.oracle.refine(self.y, &piece, targets)?;
            check_refinement(self.oracle, self.y, &piece, targets, &out)?;
            let (q_star, b) = out;
            rest = rest.difference(clopen(&name, &q_star)?);
            cells.push(KuCell {
                q: q_star,
                b,
                explored: false,
            });
        }
        Ok(cells)
    }
}

/// Builds the tree of partitions `W_0, W_1, …` of the Cantor cube `x`,
/// exploring the first `branching` cells of every partition.
pub fn run_ku_construction(
    x: &Space,
    y: &Space,
    oracle: &dyn DenseOpenOracle,
    s_i: &dyn Strategy,
    cfg: &KuConfig,
) -> Result<KuResult> {
    if !x.is_cantor() {
        return Err(Error::config(format!("X must be a Cantor cube, got {x}")));
    }
    if s_i.player() != Player::One {
        return Err(Error::config(format!("{} is not a Player I strategy", s_i.name())));
    }
    if cfg.rounds == 0 || cfg.branching == 0 {
        return Err(Error::config("rounds and branching must be at least 1"));
    }
    let max_branches = cfg.max_branches.unwrap_or(y.caps().branches);
    if max_branches == 0 {
        return Err(Error::config("max branches must be at least 1"));
    }
    let mut b = Builder {
        y,
        oracle,
        cfg,
        max_branches,
        leaves: 1,
        pruned: Vec::new(),
    };
    let root = b.node(x.whole(), &mut Vec::new(), Vec::new(), s_i.clone_box())?;
    let mut covered = ClopenSet::empty();
    for branch in branches_of(&root, y) {
        covered = covered.union(clopen(&oracle.name(), branch.qs.last().expect("nonempty branch"))?);
    }
    Ok(KuResult {
        x: x.clone(),
        y: y.clone(),
        oracle: oracle.name(),
        strategy: s_i.name(),
        rounds: cfg.rounds,
        branching: cfg.branching,
        max_branches,
        seed: cfg.seed,
        root,
        pruned: b.pruned,
        p_report: ClopenSet::whole().difference(&covered),
    })
}

fn branches_of(root: &KuNode, _y: &Space) -> Vec<KuBranch> {
    fn walk(node: &KuNode, qs: &mut Vec<Region>, history: &mut Vec<MoveFamily>, out: &mut Vec<KuBranch>) {
        let a = MoveFamily::new(Player::One, node.a.clone());
        let children: std::collections::BTreeMap<usize, &KuNode> = node.children.iter().map(|(i, n)| (*i, n)).collect();
        for (i, cell) in node.cells.iter().enumerate().filter(|(_, c)| c.explored) {
            qs.push(cell.q.clone());
            history.push(a.clone());
            history.push(MoveFamily::new(Player::Two, cell.b.clone()));
            match children.get(&i) {
                Some(child) => walk(child, qs, history, out),
                None => {
                    let mut path = node.path.clone();
                    path.push(i);
                    out.push(KuBranch {
                        path,
                        qs: qs.clone(),
                        history: history.clone(),
                    });
                }
            }
            qs.pop();
            history.truncate(history.len() - 2);
        }
    }
    let mut out = Vec::new();
    walk(root, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

impl KuResult {
    pub fn branches(&self) -> Vec<KuBranch> {
        branches_of(&self.root, &self.y)
    }

    /// All nodes at `depth` in exploration order.
    pub fn nodes_at(&self, depth: usize) -> Vec<&KuNode> {
        fn walk<'a>(n: &'a KuNode, depth: usize, out: &mut Vec<&'a KuNode>) {
            if n.depth == depth {
                out.push(n);
            } else {
                for (_, c) in &n.children {
                    walk(c, depth, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, depth, &mut out);
        out
    }

    /// The explored part of `W_n`.
    pub fn w(&self, n: usize) -> Vec<&KuCell> {
        self.nodes_at(n)
            .into_iter()
            .flat_map(|node| node.cells.iter())
            .collect()
    }

    /// Support of every region in the tree.
    pub fn support(&self) -> BTreeSet<u32> {
        fn walk(n: &KuNode, x: &Space, y: &Space, out: &mut BTreeSet<u32>) {
            out.extend(x.support(&n.q));
            for a in &n.a {
                out.extend(y.support(a));
            }
            for c in &n.cells {
                out.extend(x.support(&c.q));
                for b in &c.b {
                    out.extend(y.support(b));
                }
            }
            for (_, ch) in &n.children {
                walk(ch, x, y, out);
            }
        }
        let mut out = BTreeSet::new();
        walk(&self.root, &self.x, &self.y, &mut out);
        out
    }

    pub fn to_json(&self) -> Value {
        fn node_json(n: &KuNode) -> Value {
            let children: Vec<Value> = n.children.iter().map(|(_, c)| node_json(c)).collect();
            json!({
                "depth": n.depth,
                "path": n.path,
                "Q": region_to_json(&n.q),
                "A": n.a.iter().map(region_to_json).collect::<Vec<_>>(),
                "W": n.cells.iter().map(|c| json!({
                    "Q": region_to_json(&c.q),
                    "B": c.b.iter().map(region_to_json).collect::<Vec<_>>(),
                    "explored": c.explored,
                })).collect::<Vec<_>>(),
                "children": children,
            })
        }
        json!({
            "x": self.x.to_string(),
            "y": self.y.to_string(),
            "oracle": self.oracle,
            "p1": self.strategy,
            "rounds": self.rounds,
            "branching": self.branching,
            "maxBranches": self.max_branches,
            "seed": self.seed,
            "tree": node_json(&self.root),
            "pruned": self.pruned,
            "pReport": region_to_json(&Region::Clopen(self.p_report.clone())),
        })
    }
}

/// One failed audit item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditFailure {
    pub kind: &'static str,
    pub path: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct KuAudit {
    pub boxes_checked: usize,
    pub partitions_checked: usize,
    pub branches_checked: usize,
    pub failures: Vec<AuditFailure>,
}

impl KuAudit {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "boxesChecked": self.boxes_checked,
            "partitionsChecked": self.partitions_checked,
            "branchesChecked": self.branches_checked,
            "failures": self.failures.iter().map(|f| json!({
                "kind": f.kind, "path": f.path, "detail": f.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Re-checks the finished tree independently of how it was built: every
/// box lies in `E`, cells nest, each partition is a disjoint cover of its
/// parent, and every branch is a legal `Y`-side transcript.
pub fn audit(result: &KuResult, oracle: &dyn DenseOpenOracle) -> Result<KuAudit> {
    let mut rep = KuAudit::default();
    let x = &result.x;
    let y = &result.y;
    let mut stack = vec![&result.root];
    while let Some(node) = stack.pop() {
        let mut found: Vec<(&'static str, String)> = Vec::new();
        let mut fail = |kind, detail: String| found.push((kind, detail));
        let mut union = ClopenSet::empty();
        for (i, cell) in node.cells.iter().enumerate() {
            let q = clopen(&result.oracle, &cell.q)?;
            if !q.is_nonempty() || !x.subset(&cell.q, &node.q)? {
                fail(
                    "nesting",
                    format!("cell {i} {} is not a nonempty part of {}", cell.q, node.q),
                );
            }
            if union.meets(q) {
                fail("antichain", format!("cell {i} {} overlaps an earlier cell", cell.q));
            }
            union = union.union(q);
            if cell.b.len() != node.a.len() {
                fail(
                    "box",
                    format!("cell {i} answers {} of {} sets", cell.b.len(), node.a.len()),
                );
            }
            for v in &cell.b {
                rep.boxes_checked += 1;
                if !oracle.contains_box(y, &cell.q, v)? {
                    fail("box", format!("{} × {v} is not inside E", cell.q));
                }
            }
        }
        rep.partitions_checked += 1;
        if !x.same_points(&Region::Clopen(union), &node.q)? {
            fail("antichain", format!("cells do not cover {}", node.q));
        }
        rep.failures
            .extend(found.into_iter().map(|(kind, detail)| AuditFailure {
                kind,
                path: node.path.clone(),
                detail,
            }));
        for (i, child) in &node.children {
            if child.q != node.cells[*i].q {
                rep.failures.push(AuditFailure {
                    kind: "nesting",
                    path: child.path.clone(),
                    detail: format!("subtree root {} differs from its cell {}", child.q, node.cells[*i].q),
                });
            }
            stack.push(child);
        }
    }
    for branch in result.branches() {
        rep.branches_checked += 1;
        let mut t = Transcript::new(
            y.clone(),
            result.seed,
            result.rounds,
            result.strategy.clone(),
            result.oracle.clone(),
        );
        t.moves = branch.history.clone();
        if let Err(e) = t.validate() {
            rep.failures.push(AuditFailure {
                kind: "legality",
                path: branch.path.clone(),
                detail: e.to_string(),
            });
        }
    }
    Ok(rep)
}
