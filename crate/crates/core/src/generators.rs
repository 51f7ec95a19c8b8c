//! Synthetic graph generators for benchmark corpora.

use std::io::{BufWriter, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::RngStream;

/// Connection radius `0.55 · √(ln n / n)` for a random geometric graph.
pub fn rgg_radius(n: usize) -> f64 {
    let n = n.max(2) as f64;
    0.55 * (n.ln() / n).sqrt()
}

/// Random geometric graph on the unit square: `n` uniform points, an edge
/// between every pair closer than the radius.
///
/// Points are numbered cell by cell over a grid of radius-sized cells in
/// row-major order, so ids follow spatial locality. Neighborhoods are found
/// on demand, which lets [`Rgg::write_metis`] emit graphs far larger than
/// their adjacency would take in memory.
#[derive(Clone, Debug)]
pub struct Rgg {
    points: Vec<(f64, f64)>,
    radius: f64,
    cells_per_side: usize,
    /// Points of cell `c` are `cell_start[c]..cell_start[c + 1]`.
    cell_start: Vec<usize>,
}

impl Rgg {
    pub fn new(n: usize, seed: u64) -> Self {
        Self::with_radius(n, rgg_radius(n), seed)
    }

    pub fn with_radius(n: usize, radius: f64, seed: u64) -> Self {
        let mut rng = RngStream::new(seed);
        let cells_per_side = ((1.0 / radius).floor() as usize).clamp(1, 1 << 15);
        let cell_of = |x: f64, y: f64| {
            let cx = ((x * cells_per_side as f64) as usize).min(cells_per_side - 1);
            let cy = ((y * cells_per_side as f64) as usize).min(cells_per_side - 1);
            cy * cells_per_side + cx
        };
        let mut keyed: Vec<(usize, (f64, f64))> = (0..n)
            .map(|_| {
                let p = (rng.unit(), rng.unit());
                (cell_of(p.0, p.1), p)
            })
            .collect();
        keyed.sort_by_key(|&(c, _)| c);

        let cells = cells_per_side * cells_per_side;
        let mut cell_start = vec![0usize; cells + 1];
        for &(c, _) in &keyed {
            cell_start[c + 1] += 1;
        }
        for c in 0..cells {
            cell_start[c + 1] += cell_start[c];
        }
        Self {
            points: keyed.into_iter().map(|(_, p)| p).collect(),
            radius,
            cells_per_side,
            cell_start,
        }
    }

    pub fn node_count(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Neighbors of `v` in ascending order, written into `out`.
    pub fn neighbors_into(&self, v: usize, out: &mut Vec<NodeId>) {
        out.clear();
        let (x, y) = self.points[v];
        let side = self.cells_per_side as isize;
        let cx = ((x * side as f64) as isize).min(side - 1);
        let cy = ((y * side as f64) as isize).min(side - 1);
        let r2 = self.radius * self.radius;
        for ny in (cy - 1).max(0)..=(cy + 1).min(side - 1) {
            for nx in (cx - 1).max(0)..=(cx + 1).min(side - 1) {
                let c = (ny * side + nx) as usize;
                for u in self.cell_start[c]..self.cell_start[c + 1] {
                    if u == v {
                        continue;
                    }
                    let (ux, uy) = self.points[u];
                    let (dx, dy) = (ux - x, uy - y);
                    if dx * dx + dy * dy < r2 {
                        out.push(u as NodeId);
                    }
                }
            }
        }
        out.sort_unstable();
    }

    pub fn edge_count(&self) -> usize {
        let mut buf = Vec::new();
        let mut half_degrees = 0;
        for v in 0..self.node_count() {
            self.neighbors_into(v, &mut buf);
            half_degrees += buf.len();
        }
        half_degrees / 2
    }

    pub fn to_graph(&self) -> Graph {
        let mut buf = Vec::new();
        let mut edges = Vec::new();
        for v in 0..self.node_count() {
            self.neighbors_into(v, &mut buf);
            edges.extend(
                buf.iter()
                    .filter(|&&u| (u as usize) > v)
                    .map(|&u| (v as NodeId, u)),
            );
        }
        Graph::unweighted(self.node_count(), edges)
    }

    /// Writes the graph in METIS format without materializing it.
    pub fn write_metis<W: Write>(&self, out: W) -> Result<()> {
        let mut out = BufWriter::new(out);
        writeln!(out, "{} {}", self.node_count(), self.edge_count())?;
        let mut buf = Vec::new();
        let mut line = String::new();
        for v in 0..self.node_count() {
            self.neighbors_into(v, &mut buf);
            line.clear();
            for (i, &u) in buf.iter().enumerate() {
                if i > 0 {
                    line.push(' ');
                }
                line.push_str(&(u + 1).to_string());
            }
            writeln!(out, "{line}")?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Erdős–Rényi `G(n, p)`: every pair independently with probability `p`.
/// Pairs are skipped geometrically, so the cost is proportional to `n + m`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidConfig(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut edges = Vec::new();
    if p > 0.0 && n > 1 {
        let mut rng = RngStream::new(seed);
        let log_q = (1.0 - p).ln();
        // walk the pairs (v, w) with w < v in row-major order
        let mut v: usize = 1;
        let mut w: i64 = -1;
        while v < n {
            let skip = if p >= 1.0 {
                0
            } else {
                ((1.0 - rng.unit()).ln() / log_q).floor() as i64
            };
            w += 1 + skip;
            while v < n && w >= v as i64 {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((w as NodeId, v as NodeId));
            }
        }
    }
    Ok(Graph::unweighted(n, edges))
}

/// `rows × cols` grid with 4-neighborhoods, numbered row by row.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| (r * cols + c) as NodeId;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::unweighted(rows * cols, edges)
}
