use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::regions::{Letter, NodeLabel, RegionWord, SymbolicGame, WordMoves};

/// Why a branch stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafKind {
    Losing,
    /// Same label as the ancestor with this node id.
    Repeat(usize),
    /// No letter can fire from any tuple.
    Deadlock,
    /// Every tuple's automaton has died: no extension can violate the specification.
    Empty,
}

/// One choice of the controller: an optional controllable letter and, per required
/// environment group, the children for each reset choice (positions in `children`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSet {
    pub ctrl: Option<usize>,
    pub groups: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct SynthNode {
    pub label: Arc<NodeLabel>,
    pub parent: Option<usize>,
    pub letter: Option<Letter>,
    pub leaf: Option<LeafKind>,
    pub children: Vec<(Letter, usize)>,
    pub options: Vec<ActionSet>,
}

/// Either the explicit game tree or the graph sharing nodes with equal labels; in the
/// graph no node is a repeat leaf and edges may point backwards.
#[derive(Debug, Clone)]
pub struct SynthTree {
    pub nodes: Vec<SynthNode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("node budget of {0} exceeded")]
pub struct Capped(pub usize);

/// Children (letter and label) of one node and its valid action sets over them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expansion {
    pub children: Vec<(Letter, NodeLabel)>,
    pub options: Vec<(Option<usize>, Vec<Vec<usize>>)>,
}

type Group = (usize, Vec<crate::grid::Region>, Vec<crate::grid::Region>);

fn group_of(l: &Letter) -> Group {
    (l.action, l.ctrl.clone(), l.plant.clone())
}

/// Valid action sets of `label`; `None` when nothing can fire.
pub fn expand(game: &SymbolicGame, label: &NodeLabel) -> Option<Expansion> {
    let moves: Vec<Arc<WordMoves>> = label.words.iter().map(|w| game.word_moves(label.location, w)).collect();
    if moves.iter().all(|m| m.moves.is_empty()) {
        return None;
    }
    let ctrl: BTreeSet<&Letter> = moves.iter().flat_map(|m| m.moves.iter()).map(|m| &m.letter).filter(|l| game.is_controllable(l)).collect();
    let mut exp = Expansion::default();
    let mut index: BTreeMap<(Letter, NodeLabel), usize> = BTreeMap::new();
    let mut child = |letter: &Letter, label: NodeLabel, exp: &mut Expansion| -> usize {
        *index.entry((letter.clone(), label.clone())).or_insert_with(|| {
            exp.children.push((letter.clone(), label));
            exp.children.len() - 1
        })
    };
    for s in std::iter::once(None).chain(ctrl.iter().map(|c| Some(*c))) {
        let mut required: BTreeMap<Group, Vec<usize>> = BTreeMap::new();
        let mut ctrl_words: BTreeSet<RegionWord> = BTreeSet::new();
        let mut ctrl_target = None;
        let mut valid = true;
        for (wi, wm) in moves.iter().enumerate() {
            let mut env: BTreeMap<Group, usize> = BTreeMap::new();
            for m in wm.moves.iter().filter(|m| !game.is_controllable(&m.letter)) {
                let f = env.entry(group_of(&m.letter)).or_insert(m.first);
                *f = (*f).min(m.first);
            }
            if let Some(cm) = s.and_then(|c| wm.moves.iter().find(|m| &m.letter == c)) {
                ctrl_words.extend(cm.words.iter().cloned());
                ctrl_target = Some(cm.target);
                for (g, first) in env {
                    if first <= cm.last {
                        required.entry(g).or_default().push(wi);
                    }
                }
            } else if !env.is_empty() {
                for g in env.into_keys() {
                    required.entry(g).or_default().push(wi);
                }
            } else if wm.moves.iter().any(|m| game.is_controllable(&m.letter)) {
                valid = false;
                break;
            }
        }
        if !valid {
            continue;
        }
        let c = s.map(|c| child(c, NodeLabel { location: ctrl_target.unwrap(), words: ctrl_words }, &mut exp));
        let mut groups = Vec::new();
        for (g, words) in required {
            let mut variants: BTreeMap<&Letter, NodeLabel> = BTreeMap::new();
            for wi in words {
                for m in moves[wi].moves.iter().filter(|m| group_of(&m.letter) == g) {
                    variants
                        .entry(&m.letter)
                        .or_insert_with(|| NodeLabel { location: m.target, words: BTreeSet::new() })
                        .words
                        .extend(m.words.iter().cloned());
                }
            }
            groups.push(variants.into_iter().map(|(l, n)| child(l, n, &mut exp)).collect());
        }
        exp.options.push((c, groups));
    }
    Some(exp)
}

struct Builder<'a> {
    game: &'a SymbolicGame,
    budget: usize,
    count: AtomicUsize,
    parallel_depth: usize,
}

/// Local subtree: node 0 is the root, `leaf` repeats refer to path positions.
struct Local {
    nodes: Vec<(SynthNode, Option<usize>)>,
}

fn label_hash(l: &NodeLabel) -> u64 {
    let mut h = DefaultHasher::new();
    l.hash(&mut h);
    h.finish()
}

impl Builder<'_> {
    fn build(&self, label: Arc<NodeLabel>, letter: Option<Letter>, path: &[(u64, Arc<NodeLabel>)]) -> Result<Local, Capped> {
        if self.count.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Capped(self.budget));
        }
        let leaf_node = |kind: LeafKind, repeat: Option<usize>| Local {
            nodes: vec![(
                SynthNode { label: label.clone(), parent: None, letter: letter.clone(), leaf: Some(kind), children: vec![], options: vec![] },
                repeat,
            )],
        };
        if self.game.is_losing(&label) {
            return Ok(leaf_node(LeafKind::Losing, None));
        }
        if label.words.is_empty() {
            return Ok(leaf_node(LeafKind::Empty, None));
        }
        let h = label_hash(&label);
        if let Some(pos) = path.iter().position(|(ph, pl)| *ph == h && **pl == *label) {
            return Ok(leaf_node(LeafKind::Repeat(0), Some(pos)));
        }
        let Some(exp) = expand(self.game, &label) else {
            return Ok(leaf_node(LeafKind::Deadlock, None));
        };
        let mut next_path = path.to_vec();
        next_path.push((h, label.clone()));
        let build_child = |(l, c): &(Letter, NodeLabel)| self.build(Arc::new(c.clone()), Some(l.clone()), &next_path);
        let subtrees: Vec<Local> = if path.len() < self.parallel_depth {
            exp.children.par_iter().map(build_child).collect::<Result<_, _>>()?
        } else {
            exp.children.iter().map(build_child).collect::<Result<_, _>>()?
        };
        let mut nodes = vec![(
            SynthNode { label, parent: None, letter, leaf: None, children: vec![], options: vec![] },
            None,
        )];
        let mut roots = Vec::with_capacity(subtrees.len());
        for sub in subtrees {
            let off = nodes.len();
            roots.push(off);
            for (mut n, rep) in sub.nodes {
                n.parent = Some(n.parent.map_or(0, |p| p + off));
                n.children.iter_mut().for_each(|c| c.1 += off);
                nodes.push((n, rep));
            }
        }
        nodes[0].0.children = exp.children.into_iter().map(|(l, _)| l).zip(roots).collect();
        nodes[0].0.options = exp.options.into_iter().map(|(ctrl, groups)| ActionSet { ctrl, groups }).collect();
        Ok(Local { nodes })
    }
}

/// Unfolds the game from its initial label, cutting branches at losing, repeated,
/// deadlocked and automaton-free labels.
pub fn build_tree(game: &SymbolicGame, budget: usize, threads: usize) -> Result<SynthTree, Capped> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .stack_size(256 << 20)
        .build()
        .expect("thread pool");
    let builder = Builder { game, budget, count: AtomicUsize::new(0), parallel_depth: if threads > 1 { 8 } else { 0 } };
    let local = pool.install(|| builder.build(Arc::new(game.initial_label()), None, &[]))?;
    let mut nodes: Vec<SynthNode> = Vec::with_capacity(local.nodes.len());
    let mut repeats = Vec::new();
    for (i, (n, rep)) in local.nodes.into_iter().enumerate() {
        if let Some(pos) = rep {
            repeats.push((i, pos));
        }
        nodes.push(n);
    }
    for (i, pos) in repeats {
        let mut depth = 0;
        let mut a = i;
        while let Some(p) = nodes[a].parent {
            a = p;
            depth += 1;
        }
        let mut anc = i;
        for _ in 0..(depth - pos) {
            anc = nodes[anc].parent.unwrap();
        }
        nodes[i].leaf = Some(LeafKind::Repeat(anc));
    }
    Ok(SynthTree { nodes })
}

/// Explores the distinct labels reachable from the initial label breadth first; equal
/// labels share one node.
pub fn build_graph(game: &SymbolicGame, budget: usize, threads: usize) -> Result<SynthTree, Capped> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool");
    pool.install(|| {
        let root = Arc::new(game.initial_label());
        let mut ids: HashMap<Arc<NodeLabel>, usize> = HashMap::from([(root.clone(), 0)]);
        let mut nodes = vec![SynthNode { label: root, parent: None, letter: None, leaf: None, children: vec![], options: vec![] }];
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let expansions: Vec<Option<Option<Expansion>>> = frontier
                .par_iter()
                .map(|&i| {
                    let label = &nodes[i].label;
                    if game.is_losing(label) || label.words.is_empty() {
                        None
                    } else {
                        Some(expand(game, label))
                    }
                })
                .collect();
            let mut next = Vec::new();
            for (&i, e) in frontier.iter().zip(expansions) {
                let exp = match e {
                    None => {
                        nodes[i].leaf = Some(if nodes[i].label.words.is_empty() { LeafKind::Empty } else { LeafKind::Losing });
                        continue;
                    }
                    Some(None) => {
                        nodes[i].leaf = Some(LeafKind::Deadlock);
                        continue;
                    }
                    Some(Some(exp)) => exp,
                };
                let mut children = Vec::with_capacity(exp.children.len());
                for (letter, label) in exp.children {
                    let label = Arc::new(label);
                    let id = match ids.get(&label) {
                        Some(id) => *id,
                        None => {
                            if nodes.len() >= budget {
                                return Err(Capped(budget));
                            }
                            let id = nodes.len();
                            ids.insert(label.clone(), id);
                            nodes.push(SynthNode { label, parent: Some(i), letter: Some(letter.clone()), leaf: None, children: vec![], options: vec![] });
                            next.push(id);
                            id
                        }
                    };
                    children.push((letter, id));
                }
                nodes[i].children = children;
                nodes[i].options = exp.options.into_iter().map(|(ctrl, groups)| ActionSet { ctrl, groups }).collect();
            }
            frontier = next;
        }
        Ok(SynthTree { nodes })
    })
}

impl SynthTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn depth(&self) -> usize {
        let mut d = vec![0usize; self.nodes.len()];
        for i in 0..self.nodes.len() {
            if let Some(p) = self.nodes[i].parent {
                d[i] = d[p] + 1;
            }
        }
        d.into_iter().max().unwrap_or(0)
    }

    pub fn count(&self, kind: fn(&LeafKind) -> bool) -> usize {
        self.nodes.iter().filter(|n| n.leaf.as_ref().is_some_and(kind)).count()
    }
}
