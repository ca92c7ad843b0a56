//! Game-tree construction over node labels, safety solving, controller extraction and
//! bounded closed-loop verification.
mod extract;
mod solve;
mod tree;
mod verify;

use std::time::Instant;

pub use extract::extract_controller;
pub use solve::{solve, Choice, Solution};
pub use tree::{build_graph, build_tree, expand, ActionSet, Capped, Expansion, LeafKind, SynthNode, SynthTree};
pub use verify::{closed_loop_words, verify_controller, VerifyReport};

use crate::logic::Formula;
use crate::ocata::{merge_bound, translate, TranslateError};
use crate::plant::{Granularity, Sts, StsError};
use crate::regions::SymbolicGame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    Realisable,
    Unrealisable,
    ResourceCapped,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Realisable => "REALISABLE",
            Verdict::Unrealisable => "UNREALISABLE",
            Verdict::ResourceCapped => "RESOURCE-CAPPED",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthOptions {
    pub node_budget: usize,
    pub threads: usize,
    /// Overrides the per-location interval bound.
    pub merge_bound: Option<usize>,
    /// Unfold the explicit tree instead of sharing equal labels.
    pub explicit_tree: bool,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions { node_budget: 1_000_000, threads: 1, merge_bound: None, explicit_tree: false }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SynthError {
    #[error("invalid plant: {0}")]
    Plant(#[from] StsError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error("controller clock `{0}` clashes with a plant clock")]
    ClockClash(String),
}

#[derive(Debug, Clone)]
pub struct SynthResult {
    pub verdict: Verdict,
    pub nodes: usize,
    /// Longest distance from the root in the explored structure.
    pub depth: usize,
    pub losing_leaves: usize,
    pub repeat_leaves: usize,
    pub merge_bound: usize,
    pub controller: Option<Sts>,
    pub seconds: f64,
}

pub fn game(plant: &Sts, phi: &Formula, mu: &Granularity, options: &SynthOptions) -> Result<SymbolicGame, SynthError> {
    plant.validate_plant()?;
    if let Some(c) = mu.clocks.iter().find(|c| plant.clocks.contains(c)) {
        return Err(SynthError::ClockClash(c.clone()));
    }
    let neg = Formula::not(phi.clone());
    let ocata = translate(&neg, &plant.alphabet())?;
    let bound = merge_bound(&neg, options.merge_bound);
    Ok(SymbolicGame::new(plant.clone(), ocata, mu.clone(), bound))
}

/// Decides whether a `mu`-granular controller makes every plant-accepted closed-loop
/// word satisfy `phi`, and extracts one when it does.
pub fn synthesise(plant: &Sts, phi: &Formula, mu: &Granularity, options: &SynthOptions) -> Result<SynthResult, SynthError> {
    let start = Instant::now();
    let g = game(plant, phi, mu, options)?;
    let built = if options.explicit_tree {
        build_tree(&g, options.node_budget, options.threads)
    } else {
        build_graph(&g, options.node_budget, options.threads)
    };
    let tree = match built {
        Ok(t) => t,
        Err(Capped(n)) => {
            return Ok(SynthResult {
                verdict: Verdict::ResourceCapped,
                nodes: n,
                depth: 0,
                losing_leaves: 0,
                repeat_leaves: 0,
                merge_bound: g.bound,
                controller: None,
                seconds: start.elapsed().as_secs_f64(),
            })
        }
    };
    let sol = solve(&tree);
    let controller = extract_controller(&g, &tree, &sol);
    Ok(SynthResult {
        verdict: if sol.root_winning() { Verdict::Realisable } else { Verdict::Unrealisable },
        nodes: tree.len(),
        depth: tree.depth(),
        losing_leaves: tree.count(|k| *k == LeafKind::Losing),
        repeat_leaves: tree.count(|k| matches!(k, LeafKind::Repeat(_))),
        merge_bound: g.bound,
        controller,
        seconds: start.elapsed().as_secs_f64(),
    })
}
