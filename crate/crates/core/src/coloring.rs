//! Partitions of `[m]` into color blocks and the gadgets built from them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::subset::{ColorSet, VertexSubset};

/// Largest `m` accepted by [`minimum_coloring`].
pub const MINIMUM_COLORING_MAX_VERTICES: usize = 16;

/// An ordered partition `α = (α_1, ..., α_r)` of `[m]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    m: usize,
    blocks: Vec<VertexSubset>,
    /// `color_of[j - 1]` is the block index (1-based) containing `j`.
    color_of: Vec<usize>,
}

impl Partition {
    pub fn new(m: usize, blocks: Vec<VertexSubset>) -> Result<Self> {
        let universe = VertexSubset::full(m);
        let mut seen = VertexSubset::EMPTY;
        let mut color_of = vec![0; m];
        for (c, &b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::PartitionMismatch(format!(
                    "block {} is empty",
                    c + 1
                )));
            }
            if !b.is_subset(universe) {
                let v = b.difference(universe).iter().next().unwrap_or(0);
                return Err(Error::PartitionMismatch(format!(
                    "vertex {v} is outside [1, {m}]"
                )));
            }
            if !b.is_disjoint(seen) {
                let v = b.intersection(seen).iter().next().unwrap_or(0);
                return Err(Error::PartitionMismatch(format!(
                    "vertex {v} appears in two blocks"
                )));
            }
            seen = seen.union(b);
            for j in b.iter() {
                color_of[j - 1] = c + 1;
            }
        }
        if seen != universe {
            let v = universe.difference(seen).iter().next().unwrap_or(0);
            return Err(Error::PartitionMismatch(format!(
                "vertex {v} is in no block"
            )));
        }
        Ok(Partition {
            m,
            blocks,
            color_of,
        })
    }

    /// `{{1}, ..., {m}}`.
    pub fn trivial(m: usize) -> Self {
        Partition::new(m, (1..=m).map(VertexSubset::singleton).collect())
            .expect("singletons partition [m]")
    }

    /// Builds a partition from a color vector (`colors[j-1]` in `1..=r`).
    pub fn from_colors(colors: &[usize]) -> Result<Self> {
        let r = colors.iter().copied().max().unwrap_or(0);
        let mut blocks = vec![VertexSubset::EMPTY; r];
        for (j, &c) in colors.iter().enumerate() {
            if c == 0 {
                return Err(Error::ColorOutOfRange { color: 0, r });
            }
            blocks[c - 1] = blocks[c - 1].with(j + 1);
        }
        Partition::new(colors.len(), blocks)
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    /// Number of blocks `r`.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[VertexSubset] {
        &self.blocks
    }

    /// `α_i` for `i` in `1..=r`.
    pub fn block(&self, i: usize) -> VertexSubset {
        self.blocks[i - 1]
    }

    /// Block index of vertex `j`.
    pub fn color_of(&self, j: usize) -> usize {
        self.color_of[j - 1]
    }

    pub fn colors(&self) -> &[usize] {
        &self.color_of
    }

    pub fn all_colors(&self) -> ColorSet {
        ColorSet::full(self.blocks.len())
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Parses `blocks 1 | 2 4 | 3 5` (the leading keyword is optional).
    pub fn parse(m: usize, text: &str) -> Result<Self> {
        let mut body = None;
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if body.is_some() {
                return Err(Error::Parse {
                    line: k + 1,
                    msg: "more than one partition line".into(),
                });
            }
            body = Some((
                k + 1,
                line.strip_prefix("blocks").unwrap_or(line).to_string(),
            ));
        }
        let (line, body) = body.ok_or(Error::Parse {
            line: 0,
            msg: "empty partition".into(),
        })?;
        let mut blocks = Vec::new();
        for chunk in body.split('|') {
            let mut b = VertexSubset::EMPTY;
            for t in chunk.split_whitespace() {
                let v: usize = t.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad vertex `{t}`"),
                })?;
                if v == 0 || v > m {
                    return Err(Error::PartitionMismatch(format!(
                        "vertex {v} is outside [1, {m}]"
                    )));
                }
                if b.contains(v) {
                    return Err(Error::PartitionMismatch(format!(
                        "vertex {v} repeated in a block"
                    )));
                }
                b = b.with(v);
            }
            blocks.push(b);
        }
        Partition::new(m, blocks)
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|j| j.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("blocks {}", parts.join(" | "))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// JSON form: `{"m": 4, "blocks": [[1, 3], [2, 4]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub m: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl From<&Partition> for PartitionJson {
    fn from(p: &Partition) -> Self {
        PartitionJson {
            m: p.m,
            blocks: p.blocks.iter().map(|b| b.to_vec()).collect(),
        }
    }
}

impl TryFrom<PartitionJson> for Partition {
    type Error = Error;

    fn try_from(j: PartitionJson) -> Result<Self> {
        let mut blocks = Vec::with_capacity(j.blocks.len());
        for b in &j.blocks {
            if let Some(&v) = b.iter().find(|&&v| v == 0 || v > j.m) {
                return Err(Error::PartitionMismatch(format!(
                    "vertex {v} is outside [1, {}]",
                    j.m
                )));
            }
            blocks.push(VertexSubset::from_elements(b.iter().copied()));
        }
        Partition::new(j.m, blocks)
    }
}

fn check_matches(k: &SimplicialComplex, alpha: &Partition) -> Result<()> {
    if alpha.m != k.vertex_count() {
        return Err(Error::PartitionMismatch(format!(
            "partition covers [{}] but the complex has {} vertices",
            alpha.m,
            k.vertex_count()
        )));
    }
    Ok(())
}

/// First edge with both endpoints in one block, as `(block, u, v)`.
pub fn degenerate_witness(
    k: &SimplicialComplex,
    alpha: &Partition,
) -> Result<Option<(usize, usize, usize)>> {
    check_matches(k, alpha)?;
    Ok(k.edges()
        .into_iter()
        .find(|&(u, v)| alpha.color_of(u) == alpha.color_of(v))
        .map(|(u, v)| (alpha.color_of(u), u, v)))
}

/// Checks the 1-skeleton criterion and the per-face criterion `|σ ∩ α_i| ≤ 1`;
/// the two agree on any downward-closed family.
pub fn is_nondegenerate(k: &SimplicialComplex, alpha: &Partition) -> Result<bool> {
    let by_edges = degenerate_witness(k, alpha)?.is_none();
    let by_faces = k
        .faces()
        .iter()
        .all(|&s| alpha.blocks.iter().all(|&b| s.intersection(b).len() <= 1));
    assert_eq!(
        by_edges, by_faces,
        "edge and face criteria must agree on a simplicial complex"
    );
    Ok(by_edges)
}

/// Returns an error naming the offending edge if `α` is degenerate for `K`.
pub fn require_nondegenerate(k: &SimplicialComplex, alpha: &Partition) -> Result<()> {
    match degenerate_witness(k, alpha)? {
        None => Ok(()),
        Some((block, u, v)) => Err(Error::DegeneratePartition { block, u, v }),
    }
}

/// Colors vertices `1..=m` in order, each with the smallest color unused by
/// its lower-indexed neighbours.
pub fn greedy_coloring(k: &SimplicialComplex) -> Partition {
    let m = k.vertex_count();
    let mut colors = vec![0usize; m];
    for j in 1..=m {
        let used: Vec<usize> = k
            .neighbours(j)
            .iter()
            .filter(|&n| n < j)
            .map(|n| colors[n - 1])
            .collect();
        colors[j - 1] = (1..).find(|c| !used.contains(c)).unwrap();
    }
    Partition::from_colors(&colors).expect("greedy colors are contiguous")
}

/// A proper coloring of the 1-skeleton with the fewest colors; among those,
/// the lexicographically smallest color vector.
pub fn minimum_coloring(k: &SimplicialComplex) -> Result<Partition> {
    let m = k.vertex_count();
    if m > MINIMUM_COLORING_MAX_VERTICES {
        return Err(Error::VertexBudgetExceeded {
            requested: m,
            cap: MINIMUM_COLORING_MAX_VERTICES,
        });
    }
    if m == 0 {
        return Partition::new(0, Vec::new());
    }
    let adj: Vec<VertexSubset> = (1..=m).map(|j| k.neighbours(j)).collect();
    for r in 1..=m {
        let mut colors = vec![0usize; m];
        if color_dfs(&adj, r, 0, 0, &mut colors) {
            return Partition::from_colors(&colors);
        }
    }
    unreachable!("m colors always suffice")
}

/// Assigns colors to vertices in index order, smallest color first. New colors
/// are opened one at a time, so the first success is lexicographically least.
fn color_dfs(adj: &[VertexSubset], r: usize, v: usize, used: usize, colors: &mut [usize]) -> bool {
    if v == adj.len() {
        return true;
    }
    let limit = (used + 1).min(r);
    for c in 1..=limit {
        let clash = adj[v].iter().any(|n| n <= v && colors[n - 1] == c);
        if clash {
            continue;
        }
        colors[v] = c;
        if color_dfs(adj, r, v + 1, used.max(c), colors) {
            return true;
        }
    }
    colors[v] = 0;
    false
}

/// `ω^α_L`: union of the blocks with index in `L`.
pub fn omega_l(alpha: &Partition, l: ColorSet) -> Result<VertexSubset> {
    let r = alpha.block_count();
    if let Some(color) = l.iter().find(|&c| c > r) {
        return Err(Error::ColorOutOfRange { color, r });
    }
    Ok(l.iter()
        .fold(VertexSubset::EMPTY, |acc, i| acc.union(alpha.block(i))))
}

/// `I_α(σ)`: the colors met by `σ`.
pub fn colors_of(alpha: &Partition, sigma: VertexSubset) -> ColorSet {
    sigma
        .iter()
        .fold(ColorSet::EMPTY, |acc, j| acc.with(alpha.color_of(j)))
}

/// `κ(i, L) = (−1)^{#{l ∈ L : l < i}}`.
pub fn kappa(i: usize, l: ColorSet) -> Result<i64> {
    if !l.contains(i) {
        return Err(Error::NotAMember { color: i });
    }
    Ok(kappa_unchecked(i, l))
}

/// Sign parity of `#{l ∈ L : l < i}`; defined for any `i`, member or not.
pub fn kappa_unchecked(i: usize, l: ColorSet) -> i64 {
    if l.count_below(i).is_multiple_of(2) {
        1
    } else {
        -1
    }
}
