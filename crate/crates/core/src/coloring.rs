//! Greedy d-hop unique coloring and its validity checkers.
//!
//! A coloring is *d-hop unique* when every vertex sees pairwise-distinct
//! colors across its d-hop neighborhood. Such a coloring is exactly a proper
//! coloring of the 2d-th power graph, which is how the greedy constructor
//! works: materialize every N_2d(v) by bounded BFS, color vertices in
//! nonincreasing deg_2d order (ties broken by ascending id) with the smallest
//! color absent from already-colored 2d-hop neighbors. The palette never
//! exceeds Δ_2d + 1.
//!
//! Two independent checkers are provided on purpose: [`is_dhop_unique`] scans
//! BFS neighborhoods directly, while [`is_proper_khop`] goes through the
//! power graph. Their agreement is itself a tested equivalence.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{khop_neighbor_sets, power_graph, BfsScratch, Graph, NodeId};

pub type ColorId = usize;

/// Dense node-to-color assignment. `num_colors` is always one more than the
/// largest color actually used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<ColorId>,
    num_colors: usize,
    d: usize,
}

impl Coloring {
    /// Wraps a color vector, deriving the palette size. `d` records the hop
    /// count the coloring targets (0 for unconstrained hand-made palettes).
    pub fn new(colors: Vec<ColorId>, d: usize) -> Self {
        let num_colors = colors.iter().max().map_or(0, |&c| c + 1);
        Coloring {
            colors,
            num_colors,
            d,
        }
    }

    pub fn colors(&self) -> &[ColorId] {
        &self.colors
    }

    pub fn color(&self, v: NodeId) -> ColorId {
        self.colors[v]
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    fn check_covers(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.num_nodes() {
            return Err(Error::validation(format!(
                "coloring covers {} nodes, graph has {}",
                self.colors.len(),
                g.num_nodes()
            )));
        }
        Ok(())
    }
}

/// Palette statistics against the Δ_2d + 1 guarantee.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColoringStats {
    pub num_colors: usize,
    pub delta_2d: usize,
    pub bound: usize,
    pub within_bound: bool,
    #[serde(with = "duration_secs")]
    pub build_time: Duration,
}

mod duration_secs {
    use super::Duration;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

/// Greedy d-hop unique coloring.
///
/// Vertices are processed in nonincreasing deg_2d order with ascending-id
/// tie-break; each receives the smallest color not used by an already-colored
/// vertex of its 2d-hop neighborhood. The result always passes
/// [`is_dhop_unique`] and uses at most Δ_2d + 1 colors.
pub fn greedy_dhop_unique(g: &Graph, d: usize) -> Result<(Coloring, ColoringStats)> {
    if d == 0 {
        return Err(Error::validation("hop count d must be >= 1".to_string()));
    }
    let start = Instant::now();
    let n = g.num_nodes();

    let neighborhoods = khop_neighbor_sets(g, 2 * d);
    let delta_2d = neighborhoods.iter().map(Vec::len).max().unwrap_or(0);

    let mut order: Vec<NodeId> = (0..n).collect();
    order.sort_by(|&a, &b| {
        neighborhoods[b]
            .len()
            .cmp(&neighborhoods[a].len())
            .then(a.cmp(&b))
    });

    const UNCOLORED: usize = usize::MAX;
    let mut colors = vec![UNCOLORED; n];
    // forbidden[c] == stamp marks color c as used in the current neighborhood
    let mut forbidden = vec![0u32; delta_2d + 2];
    let mut stamp = 0u32;
    for &v in &order {
        stamp += 1;
        for &u in &neighborhoods[v] {
            let c = colors[u];
            if c != UNCOLORED {
                forbidden[c] = stamp;
            }
        }
        let mut c = 0;
        while forbidden[c] == stamp {
            c += 1;
        }
        colors[v] = c;
    }

    let coloring = Coloring::new(colors, d);
    let stats = ColoringStats {
        num_colors: coloring.num_colors(),
        delta_2d,
        bound: delta_2d + 1,
        within_bound: coloring.num_colors() <= delta_2d + 1,
        build_time: start.elapsed(),
    };
    Ok((coloring, stats))
}

/// True iff any two distinct vertices within distance `k` have different
/// colors, i.e. the coloring is proper on the k-th power graph. This route
/// deliberately goes through [`power_graph`]; the direct neighborhood scan
/// lives in [`is_dhop_unique`].
pub fn is_proper_khop(g: &Graph, c: &Coloring, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::validation("hop count must be >= 1".to_string()));
    }
    c.check_covers(g)?;
    let p = power_graph(g, k)?;
    Ok(is_proper(&p, c))
}

/// Properness of a coloring on an explicit graph: no edge joins equal colors.
/// Useful when the caller already materialized a power graph.
pub fn is_proper(g: &Graph, c: &Coloring) -> bool {
    g.edges().iter().all(|e| c.color(e.u) != c.color(e.v))
}

/// First witness that a coloring fails d-hop uniqueness: a center whose
/// d-hop ball holds two vertices of one color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DhopViolation {
    pub center: NodeId,
    pub first: NodeId,
    pub second: NodeId,
    pub color: ColorId,
}

/// Scans every vertex's closed d-hop ball directly (bounded BFS, no power
/// graph) and reports the first repeated color. The center belongs to its own
/// ball: uniqueness must hold on B_d(v), not just N_d(v), or the equivalence
/// with 2d-hop properness breaks on adjacent pairs without a common neighbor.
/// Centers are scanned in ascending id order and ball members in ascending id
/// order within a center, so the witness is deterministic.
pub fn find_dhop_violation(g: &Graph, c: &Coloring, d: usize) -> Result<Option<DhopViolation>> {
    if d == 0 {
        return Err(Error::validation("hop count d must be >= 1".to_string()));
    }
    c.check_covers(g)?;
    let n = g.num_nodes();
    let mut scratch = BfsScratch::new(n);
    // first_holder[color] = (stamp, member that used it) for the current center
    let mut first_holder = vec![(0u32, 0usize); c.num_colors().max(1)];
    let mut members = Vec::new();
    for center in 0..n {
        members.clear();
        members.push(center);
        scratch.bounded_bfs(g, center, d, |node, _| members.push(node));
        members.sort_unstable();
        let stamp = center as u32 + 1;
        for &m in &members {
            let color = c.color(m);
            let (seen_stamp, holder) = first_holder[color];
            if seen_stamp == stamp {
                return Ok(Some(DhopViolation {
                    center,
                    first: holder,
                    second: m,
                    color,
                }));
            }
            first_holder[color] = (stamp, m);
        }
    }
    Ok(None)
}

/// True iff every vertex's closed d-hop ball is rainbow. Checked directly
/// from BFS neighborhoods; the independent counterpart of
/// [`is_proper_khop`]`(g, c, 2d)`.
pub fn is_dhop_unique(g: &Graph, c: &Coloring, d: usize) -> Result<bool> {
    Ok(find_dhop_violation(g, c, d)?.is_none())
}

// ---------------------------------------------------------------------------
// JSON file format
// ---------------------------------------------------------------------------

pub const COLORING_SCHEMA: &str = "dhopc.coloring/1";

#[derive(Debug, Serialize, Deserialize)]
pub struct ColoringFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub d: u64,
    pub num_colors: u64,
    pub colors: Vec<u64>,
}

impl ColoringFile {
    pub fn from_coloring(c: &Coloring) -> Self {
        ColoringFile {
            schema: Some(COLORING_SCHEMA.to_string()),
            d: c.d() as u64,
            num_colors: c.num_colors() as u64,
            colors: c.colors().iter().map(|&c| c as u64).collect(),
        }
    }

    pub fn into_coloring(self) -> Result<Coloring> {
        crate::io::check_schema(self.schema.as_deref(), COLORING_SCHEMA)?;
        // colors are dense 0-based ids, so every id is below the node count
        let n = self.colors.len() as u64;
        if let Some(&bad) = self.colors.iter().find(|&&c| c >= n) {
            return Err(Error::validation(format!(
                "color id {bad} is not dense for {n} nodes"
            )));
        }
        let colors: Vec<usize> = self.colors.iter().map(|&c| c as usize).collect();
        let coloring = Coloring::new(colors, self.d as usize);
        if coloring.num_colors() as u64 != self.num_colors {
            return Err(Error::validation(format!(
                "num_colors is {}, but colors imply {}",
                self.num_colors,
                coloring.num_colors()
            )));
        }
        Ok(coloring)
    }
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let file: ColoringFile =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("coloring file: {e}")))?;
    file.into_coloring()
}

pub fn write_coloring(c: &Coloring) -> String {
    crate::io::to_pretty_json(&ColoringFile::from_coloring(c))
}
