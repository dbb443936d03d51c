//! Explicit carpet graphs and breadth-first distances.
//!
//! The graph is the union, over every copy-index sequence, of the unit square
//! whose corners are the four words with that sequence. Copies that share a
//! side share the embedded points of that side, so merging vertices by point
//! performs the gluing.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::lattice::{carpet_side, pow3, LatticePoint};
use crate::word::{XLetter, YLetter};

/// Default cap on the level accepted by [`AdjacencyGraph::build`].
pub const DEFAULT_ORACLE_LEVEL_CAP: usize = 6;

/// Hop distances fit in 16 bits while the diameter `2 * 3^(n-1)` does.
const HARD_LEVEL_LIMIT: usize = 10;

pub type Hops = u16;

#[derive(Debug, Clone)]
pub struct AdjacencyGraph {
    level: usize,
    points: Vec<LatticePoint>,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    // dense (side+1)^2 grid, row-major by y, vertex id + 1 (0 = not a vertex)
    grid: Vec<u32>,
}

impl AdjacencyGraph {
    pub fn build(level: usize) -> Result<Self> {
        Self::build_with_cap(level, DEFAULT_ORACLE_LEVEL_CAP)
    }

    pub fn build_with_cap(level: usize, max_level: usize) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        let max = max_level.min(HARD_LEVEL_LIMIT);
        if level > max {
            return Err(Error::LevelCap { level, max });
        }
        let side = carpet_side(level);
        let width = (side + 1) as usize;
        let cell = |p: LatticePoint| p.y as usize * width + p.x as usize;

        let squares = 1usize << (3 * (level - 1));
        let mut present = vec![false; width * width];
        let mut bottom_left = Vec::with_capacity(squares);
        let mut digits = vec![0u8; level - 1];
        for suffix in 0..squares {
            let mut rest = suffix;
            for d in digits.iter_mut() {
                *d = (rest & 7) as u8;
                rest >>= 3;
            }
            let mut base = LatticePoint::ORIGIN;
            for (i, &d) in digits.iter().enumerate() {
                let v = XLetter::new(d).unwrap().vector();
                let s = pow3(i);
                base = base.offset(s * v.x, s * v.y);
            }
            for y in YLetter::ALL {
                present[cell(base.offset(y.vector().x, y.vector().y))] = true;
            }
            bottom_left.push(base);
        }

        // ids in point order (x major, then y), the same order as VertexTable
        let mut grid = vec![0u32; width * width];
        let mut points = Vec::new();
        for x in 0..width {
            for y in 0..width {
                if present[y * width + x] {
                    points.push(LatticePoint::new(x as i64, y as i64));
                    grid[y * width + x] = points.len() as u32;
                }
            }
        }

        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(4 * squares);
        for base in bottom_left {
            let corners = YLetter::ALL.map(|y| grid[cell(base.offset(y.vector().x, y.vector().y))] - 1);
            for i in 0..4 {
                let (u, v) = (corners[i], corners[(i + 1) % 4]);
                edges.push((u.min(v), u.max(v)));
            }
        }
        edges.sort_unstable();
        edges.dedup();

        let mut degree = vec![0u32; points.len()];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(points.len() + 1);
        let mut total = 0u32;
        offsets.push(0);
        for d in &degree {
            total += d;
            offsets.push(total);
        }
        let mut fill: Vec<u32> = offsets[..points.len()].to_vec();
        let mut targets = vec![0u32; total as usize];
        for &(u, v) in &edges {
            targets[fill[u as usize] as usize] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize] as usize] = u;
            fill[v as usize] += 1;
        }
        for v in 0..points.len() {
            targets[offsets[v] as usize..offsets[v + 1] as usize].sort_unstable();
        }

        Ok(AdjacencyGraph { level, points, offsets, targets, grid })
    }

    #[inline]
    pub fn level(&self) -> usize {
        self.level
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    #[inline]
    pub fn point(&self, id: usize) -> LatticePoint {
        self.points[id]
    }

    #[inline]
    pub fn neighbors(&self, id: usize) -> &[u32] {
        &self.targets[self.offsets[id] as usize..self.offsets[id + 1] as usize]
    }

    pub fn id_of(&self, p: LatticePoint) -> Option<usize> {
        let side = carpet_side(self.level);
        if p.x < 0 || p.y < 0 || p.x > side || p.y > side {
            return None;
        }
        match self.grid[(p.y * (side + 1) + p.x) as usize] {
            0 => None,
            i => Some(i as usize - 1),
        }
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u, v as usize)))
            .filter(|&(u, v)| u < v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }
}

/// Reusable buffers for repeated searches over one graph.
#[derive(Debug, Clone)]
pub struct BfsScratch {
    dist: Vec<Hops>,
    queue: VecDeque<u32>,
}

impl BfsScratch {
    pub fn new(g: &AdjacencyGraph) -> Self {
        BfsScratch { dist: vec![Hops::MAX; g.vertex_count()], queue: VecDeque::with_capacity(g.vertex_count()) }
    }

    pub fn distances(&self) -> &[Hops] {
        &self.dist
    }
}

/// Fills `scratch` with hop distances from `source` and returns them.
pub fn bfs_into<'a>(g: &AdjacencyGraph, source: usize, scratch: &'a mut BfsScratch) -> &'a [Hops] {
    let BfsScratch { dist, queue } = scratch;
    dist.fill(Hops::MAX);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source as u32);
    while let Some(u) = queue.pop_front() {
        let next = dist[u as usize] + 1;
        for &v in g.neighbors(u as usize) {
            if dist[v as usize] == Hops::MAX {
                dist[v as usize] = next;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn bfs_from(g: &AdjacencyGraph, source: usize) -> Vec<Hops> {
    let mut scratch = BfsScratch::new(g);
    bfs_into(g, source, &mut scratch);
    scratch.dist
}

/// Sum of distances from `source` to every vertex.
pub fn row_sum(g: &AdjacencyGraph, source: usize, scratch: &mut BfsScratch) -> u64 {
    bfs_into(g, source, scratch).iter().map(|&d| u64::from(d)).sum()
}

/// Sum of row sums over a range of sources: twice the contribution of those
/// sources to the Wiener index.
pub fn rows_total(g: &AdjacencyGraph, sources: Range<usize>) -> u128 {
    let mut scratch = BfsScratch::new(g);
    sources.map(|s| u128::from(row_sum(g, s, &mut scratch))).sum()
}

/// Half the sum of all ordered-pair distances.
pub fn oracle_wiener(g: &AdjacencyGraph) -> u128 {
    rows_total(g, 0..g.vertex_count()) / 2
}
