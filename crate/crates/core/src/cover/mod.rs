//! Biclique covers: the recursive construction and its supporting passes.

mod base;
mod build;
mod merge;
mod verify;

pub use base::base_case_cover;
pub use build::{boundary_recursion, build_cover, stage1_cover, Side};
pub use merge::merge_pass;
pub use verify::{verify_cover, VerificationReport};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const COVER_SCHEMA_VERSION: u32 = 1;

/// How a block came about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockTag {
    /// A set containing a whole cell, times the points in that cell.
    Contains,
    /// Emitted by the small-instance fallback.
    Base,
    /// Emitted while handling points that lie on a cut.
    Boundary,
}

/// A complete bipartite block `A x B` with `A` from `P` and `B` from `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    pub tag: BlockTag,
}

impl Block {
    /// Sorts and deduplicates both sides.
    pub fn new(mut a: Vec<usize>, mut b: Vec<usize>, tag: BlockTag) -> Self {
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        Block { a, b, tag }
    }

    pub fn cost(&self) -> u64 {
        (self.a.len() + self.b.len()) as u64
    }

    pub fn edge_count(&self) -> u64 {
        self.a.len() as u64 * self.b.len() as u64
    }

    fn sort_key(&self) -> (Option<usize>, Option<usize>) {
        (self.a.first().copied(), self.b.first().copied())
    }
}

/// A list of blocks with stored cost `sum(|A_i| + |B_i|)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicliqueCover {
    pub blocks: Vec<Block>,
    pub cost_j: u64,
}

impl BicliqueCover {
    pub fn empty() -> Self {
        BicliqueCover { blocks: Vec::new(), cost_j: 0 }
    }

    /// Builds a canonical cover; blocks with an empty side are dropped.
    pub fn from_blocks(blocks: Vec<Block>) -> Self {
        let mut blocks: Vec<Block> = blocks.into_iter().filter(|b| !b.a.is_empty() && !b.b.is_empty()).collect();
        canonicalize(&mut blocks);
        let cost_j = blocks.iter().map(Block::cost).sum();
        BicliqueCover { blocks, cost_j }
    }

    pub fn recomputed_cost(&self) -> u64 {
        self.blocks.iter().map(Block::cost).sum()
    }

    /// Number of distinct pairs covered, counting overlaps once.
    pub fn covered_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .blocks
            .iter()
            .flat_map(|b| b.a.iter().flat_map(move |&p| b.b.iter().map(move |&q| (p, q))))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CoverDoc {
            schema_version: Some(COVER_SCHEMA_VERSION),
            blocks: self.blocks.clone(),
            cost_j: self.cost_j,
        })
        .expect("cover serializes")
    }

    /// Parses a cover document; the stored cost is kept as written.
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: CoverDoc = serde_json::from_str(s)?;
        if let Some(v) = doc.schema_version {
            if v != COVER_SCHEMA_VERSION {
                return Err(Error::invalid(format!("unsupported cover schemaVersion {v}")));
            }
        }
        Ok(BicliqueCover { blocks: doc.blocks, cost_j: doc.cost_j })
    }
}

#[derive(Serialize, Deserialize)]
struct CoverDoc {
    #[serde(rename = "schemaVersion", default, skip_serializing_if = "Option::is_none")]
    schema_version: Option<u32>,
    blocks: Vec<Block>,
    #[serde(rename = "costJ")]
    cost_j: u64,
}

/// Sorts blocks by (min A, min B), then by full contents.
pub fn canonicalize(blocks: &mut [Block]) {
    blocks.sort_by(|x, y| {
        x.sort_key()
            .cmp(&y.sort_key())
            .then_with(|| x.a.cmp(&y.a))
            .then_with(|| x.b.cmp(&y.b))
            .then_with(|| x.tag.cmp(&y.tag))
    });
}

/// Which side the recursion partitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideRule {
    /// Partition the side with more points.
    #[default]
    Auto,
    #[serde(rename = "p")]
    AlwaysP,
    #[serde(rename = "q")]
    AlwaysQ,
    /// Q-side when `n >= m^d2`, P-side when `m >= n^d1`, otherwise as `Auto`.
    Regime,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct CoverConfig {
    pub r: usize,
    pub base_threshold: usize,
    pub max_depth: usize,
    pub side_rule: SideRule,
    /// Free-form family label carried into reports.
    pub family: Option<String>,
}

impl Default for CoverConfig {
    fn default() -> Self {
        CoverConfig {
            r: 4,
            base_threshold: 16,
            max_depth: 64,
            side_rule: SideRule::Auto,
            family: None,
        }
    }
}

impl CoverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.r < 2 {
            return Err(Error::invalid(format!("r must be at least 2, got {}", self.r)));
        }
        if self.base_threshold < 4 {
            return Err(Error::invalid(format!(
                "baseThreshold must be at least 4, got {}",
                self.base_threshold
            )));
        }
        if self.max_depth < 1 {
            return Err(Error::invalid("maxDepth must be at least 1"));
        }
        Ok(())
    }
}
