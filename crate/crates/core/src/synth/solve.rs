use super::tree::{LeafKind, SynthTree};

/// Chosen action set at a winning node, with the reset variant picked per group, as
/// positions in the node's children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Choice {
    pub option: usize,
    pub ctrl: Option<usize>,
    pub groups: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub winning: Vec<bool>,
    /// Per node, the choice made when the node is winning and internal.
    pub strategy: Vec<Option<Choice>>,
}

impl Solution {
    pub fn root_winning(&self) -> bool {
        self.winning[0]
    }
}

fn choose(tree: &SynthTree, win: &[bool], i: usize) -> Option<Choice> {
    let n = &tree.nodes[i];
    let ok = |pos: usize| win[n.children[pos].1];
    n.options.iter().enumerate().find_map(|(k, o)| {
        if o.ctrl.is_some_and(|c| !ok(c)) {
            return None;
        }
        let groups = o.groups.iter().map(|v| v.iter().copied().find(|c| ok(*c))).collect::<Option<Vec<_>>>()?;
        Some(Choice { option: k, ctrl: o.ctrl, groups })
    })
}

/// Greatest fixpoint of the safety game: losing leaves lose; repeats copy their
/// ancestor; an internal node wins when some action set has only winning children.
pub fn solve(tree: &SynthTree) -> Solution {
    let mut win: Vec<bool> = tree.nodes.iter().map(|n| n.leaf != Some(LeafKind::Losing)).collect();
    loop {
        let mut changed = false;
        for i in (0..tree.nodes.len()).rev() {
            if !win[i] {
                continue;
            }
            let keep = match tree.nodes[i].leaf {
                Some(LeafKind::Repeat(a)) => win[a],
                Some(_) => true,
                None => choose(tree, &win, i).is_some(),
            };
            if !keep {
                win[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let strategy = (0..tree.nodes.len())
        .map(|i| if win[i] && tree.nodes[i].leaf.is_none() { choose(tree, &win, i) } else { None })
        .collect();
    Solution { winning: win, strategy }
}
