//! METIS graph streaming and partition files.
//!
//! The reader never materialises the whole graph: it hands out batches of
//! `delta` consecutive nodes with their adjacency lists, converting the
//! 1-based file ids to 0-based global ids on the way.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Cursor, Read, Seek, SeekFrom, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{BlockId, Graph, NodeId, Weight};
use crate::partition::PartitionState;

/// A byte source that can optionally be restarted from the beginning.
pub trait StreamSource: BufRead {
    fn restart(&mut self) -> Result<()>;
}

impl StreamSource for BufReader<File> {
    fn restart(&mut self) -> Result<()> {
        self.seek(SeekFrom::Start(0))?;
        Ok(())
    }
}

impl<T: AsRef<[u8]>> StreamSource for Cursor<T> {
    fn restart(&mut self) -> Result<()> {
        self.set_position(0);
        Ok(())
    }
}

/// Wraps a reader that can only be consumed once (pipes, stdin).
pub struct NonSeekable<R>(pub R);

impl<R: Read> Read for NonSeekable<R> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        self.0.read(buf)
    }
}

impl<R: BufRead> BufRead for NonSeekable<R> {
    fn fill_buf(&mut self) -> io::Result<&[u8]> {
        self.0.fill_buf()
    }

    fn consume(&mut self, amt: usize) {
        self.0.consume(amt)
    }
}

impl<R: BufRead> StreamSource for NonSeekable<R> {
    fn restart(&mut self) -> Result<()> {
        Err(Error::RestreamUnsupported)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub n: usize,
    pub m: usize,
    pub edge_weights: bool,
    pub node_weights: bool,
}

impl Header {
    fn parse(text: &str, line: usize) -> Result<Self> {
        let err = |message: String| Error::Parse { line, message };
        let fields: Vec<&str> = text.split_ascii_whitespace().collect();
        if fields.len() < 2 || fields.len() > 4 {
            return Err(err(format!(
                "expected 'n m [fmt [ncon]]', got '{}'",
                text.trim()
            )));
        }
        let count = |s: &str, what: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("{what} must be a non-negative integer, got '{s}'")))
        };
        let n = count(fields[0], "node count")?;
        let m = count(fields[1], "edge count")?;
        let (node_weights, edge_weights) = match fields.get(2).copied() {
            None => (false, false),
            Some(fmt) => match fmt.trim_start_matches('0') {
                "" => (false, false),
                "1" => (false, true),
                "10" => (true, false),
                "11" => (true, true),
                _ => return Err(err(format!("unsupported format flag '{fmt}'"))),
            },
        };
        if let Some(ncon) = fields.get(3) {
            if *ncon != "1" {
                return Err(err(format!(
                    "only one node constraint is supported, got '{ncon}'"
                )));
            }
        }
        Ok(Self {
            n,
            m,
            edge_weights,
            node_weights,
        })
    }
}

/// A window of consecutive stream nodes with their adjacency (global ids).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Batch {
    first: usize,
    weights: Vec<Weight>,
    offsets: Vec<usize>,
    adjacency: Vec<(NodeId, Weight)>,
}

impl Batch {
    pub fn first_global_id(&self) -> usize {
        self.first
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Global id one past the last node of the batch.
    pub fn end_global_id(&self) -> usize {
        self.first + self.len()
    }

    pub fn contains(&self, global: usize) -> bool {
        global >= self.first && global < self.end_global_id()
    }

    pub fn node_weight(&self, i: usize) -> Weight {
        self.weights[i]
    }

    pub fn total_weight(&self) -> Weight {
        self.weights.iter().sum()
    }

    /// Adjacency of the `i`-th node of the batch, sorted by neighbor id.
    pub fn neighbors(&self, i: usize) -> &[(NodeId, Weight)] {
        &self.adjacency[self.offsets[i]..self.offsets[i + 1]]
    }

    /// `(global id, node weight, adjacency)` for every node in stream order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Weight, &[(NodeId, Weight)])> + '_ {
        (0..self.len()).map(move |i| (self.first + i, self.weights[i], self.neighbors(i)))
    }

    /// Builds a batch directly; used by tests and in-memory drivers.
    pub fn from_nodes<I>(first: usize, nodes: I) -> Self
    where
        I: IntoIterator<Item = (Weight, Vec<(NodeId, Weight)>)>,
    {
        let mut batch = Batch {
            first,
            offsets: vec![0],
            ..Default::default()
        };
        for (w, adj) in nodes {
            batch.weights.push(w);
            batch.adjacency.extend(adj);
            batch.offsets.push(batch.adjacency.len());
        }
        batch
    }
}

/// Sequential reader over a METIS file yielding fixed-size batches.
pub struct GraphStream<S = BufReader<File>> {
    source: S,
    header: Header,
    delta: usize,
    cursor: usize,
    pass_index: u32,
    line_no: usize,
    line: String,
    total_node_weight: Weight,
    directed_entries: usize,
}

/// Opens a METIS file for streaming with batches of `delta` nodes.
pub fn open_stream(path: impl AsRef<Path>, delta: usize) -> Result<GraphStream> {
    let file = File::open(path)?;
    GraphStream::new(BufReader::with_capacity(1 << 16, file), delta)
}

impl GraphStream<Cursor<Vec<u8>>> {
    /// Streams METIS text held in memory.
    pub fn from_bytes(bytes: Vec<u8>, delta: usize) -> Result<Self> {
        GraphStream::new(Cursor::new(bytes), delta)
    }
}

impl<S: StreamSource> GraphStream<S> {
    pub fn new(source: S, delta: usize) -> Result<Self> {
        if delta == 0 {
            return Err(Error::InvalidConfig(
                "buffer size must be at least 1".into(),
            ));
        }
        let mut stream = Self {
            source,
            header: Header {
                n: 0,
                m: 0,
                edge_weights: false,
                node_weights: false,
            },
            delta,
            cursor: 0,
            pass_index: 1,
            line_no: 0,
            line: String::new(),
            total_node_weight: 0,
            directed_entries: 0,
        };
        stream.read_header()?;
        stream.total_node_weight = if stream.header.node_weights {
            stream.scan_node_weights()?
        } else {
            stream.header.n as Weight
        };
        Ok(stream)
    }

    pub fn header(&self) -> Header {
        self.header
    }

    pub fn node_count(&self) -> usize {
        self.header.n
    }

    pub fn edge_count(&self) -> usize {
        self.header.m
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// c(V). For node-weighted inputs this is gathered by a scan at open time.
    pub fn total_node_weight(&self) -> Weight {
        self.total_node_weight
    }

    /// Next global node id to be emitted.
    pub fn cursor(&self) -> usize {
        self.cursor
    }

    /// 1-based index of the current pass.
    pub fn pass_index(&self) -> u32 {
        self.pass_index
    }

    /// Number of batches per pass, `⌈n / δ⌉`.
    pub fn batch_count(&self) -> usize {
        self.header.n.div_ceil(self.delta)
    }

    pub fn at_end_of_pass(&self) -> bool {
        self.cursor >= self.header.n
    }

    /// Reads the next line that is not a comment; `None` at end of input.
    fn next_content_line(&mut self) -> Result<Option<()>> {
        loop {
            self.line.clear();
            if self.source.read_line(&mut self.line)? == 0 {
                return Ok(None);
            }
            self.line_no += 1;
            if !self.line.starts_with('%') {
                return Ok(Some(()));
            }
        }
    }

    fn read_header(&mut self) -> Result<()> {
        self.line_no = 0;
        loop {
            if self.next_content_line()?.is_none() {
                return Err(Error::Parse {
                    line: self.line_no,
                    message: "missing header line".into(),
                });
            }
            if !self.line.trim().is_empty() {
                break;
            }
        }
        self.header = Header::parse(&self.line, self.line_no)?;
        Ok(())
    }

    fn scan_node_weights(&mut self) -> Result<Weight> {
        let mut total = 0;
        for _ in 0..self.header.n {
            if self.next_content_line()?.is_none() {
                break;
            }
            let first = self.line.split_ascii_whitespace().next().unwrap_or("");
            total += parse_num(first, self.line_no, "node weight")?;
        }
        self.source.restart().map_err(|_| {
            Error::InvalidConfig("node-weighted input must come from a seekable source".into())
        })?;
        self.read_header()?;
        Ok(total)
    }

    /// Next batch of `min(δ, remaining)` nodes, or `None` at the end of a pass.
    pub fn next_batch(&mut self) -> Result<Option<Batch>> {
        let n = self.header.n;
        if self.cursor >= n {
            return Ok(None);
        }
        let count = self.delta.min(n - self.cursor);
        let mut batch = Batch {
            first: self.cursor,
            weights: Vec::with_capacity(count),
            offsets: Vec::with_capacity(count + 1),
            adjacency: Vec::new(),
        };
        batch.offsets.push(0);
        for _ in 0..count {
            if self.next_content_line()?.is_none() {
                return Err(Error::Truncated {
                    what: "adjacency lines",
                    expected: n,
                    found: self.cursor,
                });
            }
            let weight = self.parse_node_line(&mut batch.adjacency)?;
            batch.weights.push(weight);
            batch.offsets.push(batch.adjacency.len());
            self.cursor += 1;
        }
        self.directed_entries += batch.adjacency.len();
        if self.cursor == n && self.directed_entries != 2 * self.header.m {
            log::warn!(
                "header declares {} edges but adjacency lists hold {} entries",
                self.header.m,
                self.directed_entries
            );
        }
        Ok(Some(batch))
    }

    /// Parses the current line as the adjacency of node `self.cursor`,
    /// appending to `out`. Returns the node weight.
    fn parse_node_line(&mut self, out: &mut Vec<(NodeId, Weight)>) -> Result<Weight> {
        let line = self.line_no;
        let n = self.header.n;
        let node = self.cursor;
        let mut tokens = self.line.split_ascii_whitespace();
        let weight = if self.header.node_weights {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line,
                message: "missing node weight".into(),
            })?;
            parse_num(tok, line, "node weight")?
        } else {
            1
        };
        let start = out.len();
        while let Some(tok) = tokens.next() {
            let id = parse_num(tok, line, "neighbor id")? as usize;
            if id == 0 || id > n {
                return Err(Error::Parse {
                    line,
                    message: format!("neighbor id {id} outside [1, {n}]"),
                });
            }
            let w = if self.header.edge_weights {
                let tok = tokens.next().ok_or_else(|| Error::Parse {
                    line,
                    message: format!("missing weight for neighbor {id}"),
                })?;
                parse_num(tok, line, "edge weight")?
            } else {
                1
            };
            if id - 1 == node {
                log::warn!("line {line}: dropping self-loop on node {id}");
                continue;
            }
            if w == 0 {
                return Err(Error::Parse {
                    line,
                    message: "edge weights must be positive".into(),
                });
            }
            out.push(((id - 1) as NodeId, w));
        }
        merge_sorted(out, start);
        Ok(weight)
    }

    /// Restarts the stream at node 0 for another pass.
    pub fn rewind(&mut self) -> Result<()> {
        if !self.at_end_of_pass() {
            return Err(Error::RewindMidPass {
                cursor: self.cursor,
            });
        }
        self.source.restart()?;
        self.read_header()?;
        self.cursor = 0;
        self.directed_entries = 0;
        self.pass_index += 1;
        Ok(())
    }
}

/// Sorts `adj[start..]` by neighbor and merges duplicates by weight sum.
fn merge_sorted(adj: &mut Vec<(NodeId, Weight)>, start: usize) {
    let tail = &mut adj[start..];
    if tail.windows(2).all(|w| w[0].0 < w[1].0) {
        return;
    }
    tail.sort_unstable_by_key(|&(u, _)| u);
    let mut write = start;
    for read in start..adj.len() {
        let entry = adj[read];
        if write > start && adj[write - 1].0 == entry.0 {
            adj[write - 1].1 += entry.1;
        } else {
            adj[write] = entry;
            write += 1;
        }
    }
    adj.truncate(write);
}

fn parse_num(tok: &str, line: usize, what: &str) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what} '{tok}'"),
    })
}

/// Parses a whole METIS document into memory.
pub fn parse_metis(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.starts_with('%'));
    let header = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((no, l)) => break Header::parse(l, no)?,
            None => {
                return Err(Error::Parse {
                    line: 0,
                    message: "missing header line".into(),
                })
            }
        }
    };
    let mut node_weights = Vec::with_capacity(header.n);
    let mut edges = Vec::new();
    for v in 0..header.n {
        let Some((no, l)) = lines.next() else {
            return Err(Error::Truncated {
                what: "adjacency lines",
                expected: header.n,
                found: v,
            });
        };
        let nums = l
            .split_ascii_whitespace()
            .map(|t| parse_num(t, no, "number"))
            .collect::<Result<Vec<_>>>()?;
        let mut rest = &nums[..];
        if header.node_weights {
            let (&w, tail) = rest.split_first().ok_or_else(|| Error::Parse {
                line: no,
                message: "missing node weight".into(),
            })?;
            node_weights.push(w);
            rest = tail;
        } else {
            node_weights.push(1);
        }
        let stride = if header.edge_weights { 2 } else { 1 };
        if rest.len() % stride != 0 {
            return Err(Error::Parse {
                line: no,
                message: "dangling neighbor without weight".into(),
            });
        }
        for pair in rest.chunks(stride) {
            let u = pair[0] as usize;
            if u == 0 || u > header.n {
                return Err(Error::Parse {
                    line: no,
                    message: format!("neighbor id {u} outside [1, {}]", header.n),
                });
            }
            let w = if header.edge_weights { pair[1] } else { 1 };
            // Each edge appears on both endpoint lines; keep one copy.
            if u - 1 > v {
                edges.push((v as NodeId, (u - 1) as NodeId, w));
            }
        }
    }
    Ok(Graph::from_edges(node_weights, edges))
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_metis(&std::fs::read_to_string(path)?)
}

/// Writes `graph` in METIS format, emitting weight flags only when needed.
pub fn write_metis<W: Write>(graph: &Graph, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    let n = graph.node_count();
    let node_weights = graph.node_weights().iter().any(|&w| w != 1);
    let edge_weights = (0..n).any(|v| graph.neighbor_weights(v).iter().any(|&w| w != 1));
    write!(out, "{} {}", n, graph.edge_count())?;
    match (node_weights, edge_weights) {
        (false, false) => {}
        (false, true) => write!(out, " 1")?,
        (true, false) => write!(out, " 10")?,
        (true, true) => write!(out, " 11")?,
    }
    writeln!(out)?;
    let mut line = String::new();
    for v in 0..n {
        line.clear();
        if node_weights {
            line.push_str(&graph.node_weight(v).to_string());
        }
        for (u, w) in graph.neighbors(v) {
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(&(u + 1).to_string());
            if edge_weights {
                line.push(' ');
                line.push_str(&w.to_string());
            }
        }
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(())
}

/// One 0-based block id per line, line `i` for global node `i`.
pub fn write_assignment<W: Write>(assignment: &[BlockId], out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for b in assignment {
        writeln!(out, "{b}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_partition(state: &PartitionState, path: impl AsRef<Path>) -> Result<()> {
    let assignment = state.assignment()?;
    write_assignment(&assignment, File::create(path)?)
}

/// Reads a partition file of exactly `n` block ids, each in `[0, k)`.
pub fn read_assignment<R: BufRead>(input: R, n: usize, k: u32) -> Result<Vec<BlockId>> {
    let mut out = Vec::with_capacity(n);
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() && out.len() == n {
            continue;
        }
        if out.len() == n {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("more than {n} block ids"),
            });
        }
        let block: BlockId = text.parse().map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("invalid block id '{text}'"),
        })?;
        if block >= k {
            return Err(Error::InvalidBlock { block, k });
        }
        out.push(block);
    }
    if out.len() != n {
        return Err(Error::Truncated {
            what: "block ids",
            expected: n,
            found: out.len(),
        });
    }
    Ok(out)
}

pub fn load_partition(path: impl AsRef<Path>, n: usize, k: u32) -> Result<Vec<BlockId>> {
    read_assignment(BufReader::new(File::open(path)?), n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stream(text: &str, delta: usize) -> GraphStream<Cursor<Vec<u8>>> {
        GraphStream::from_bytes(text.as_bytes().to_vec(), delta).unwrap()
    }

    #[test]
    fn triangle_header() {
        let s = stream("3 3\n2 3\n1 3\n1 2\n", 2);
        assert_eq!(s.node_count(), 3);
        assert_eq!(s.edge_count(), 3);
        assert!(!s.header().edge_weights && !s.header().node_weights);
        assert_eq!(s.batch_count(), 2);
    }

    #[test]
    fn weighted_edge_header() {
        let mut s = stream("2 1 1\n2 5\n1 5\n", 2);
        assert!(s.header().edge_weights);
        let b = s.next_batch().unwrap().unwrap();
        assert_eq!(b.neighbors(0), &[(1, 5)]);
        assert_eq!(b.neighbors(1), &[(0, 5)]);
    }

    #[test]
    fn isolated_node() {
        let mut s = stream("1 0\n\n", 1);
        let b = s.next_batch().unwrap().unwrap();
        assert_eq!(b.len(), 1);
        assert!(b.neighbors(0).is_empty());
        assert!(s.next_batch().unwrap().is_none());
    }

    #[test]
    fn batches_and_rewind() {
        let mut s = stream("% comment\n3 3\n2 3\n% mid comment\n1 3\n1 2\n", 2);
        assert!(matches!(
            s.rewind(),
            Err(Error::RewindMidPass { cursor: 0 })
        ));
        let b = s.next_batch().unwrap().unwrap();
        assert_eq!(b.first_global_id(), 0);
        assert_eq!(b.neighbors(0), &[(1, 1), (2, 1)]);
        assert_eq!(b.neighbors(1), &[(0, 1), (2, 1)]);
        let b = s.next_batch().unwrap().unwrap();
        assert_eq!(b.first_global_id(), 2);
        assert_eq!(b.len(), 1);
        assert!(s.next_batch().unwrap().is_none());
        assert_eq!(s.pass_index(), 1);
        s.rewind().unwrap();
        assert_eq!(s.pass_index(), 2);
        let b = s.next_batch().unwrap().unwrap();
        assert_eq!(b.first_global_id(), 0);
    }

    #[test]
    fn whole_graph_in_one_batch() {
        let mut s = stream("3 3\n2 3\n1 3\n1 2\n", 3);
        assert_eq!(s.next_batch().unwrap().unwrap().len(), 3);
        assert!(s.next_batch().unwrap().is_none());
    }

    #[test]
    fn parse_errors() {
        let bad = |t: &str| GraphStream::from_bytes(t.as_bytes().to_vec(), 1).err();
        assert!(matches!(bad("3\n"), Some(Error::Parse { line: 1, .. })));
        assert!(matches!(bad("3 3 7\n"), Some(Error::Parse { .. })));
        assert!(matches!(bad("-3 3\n"), Some(Error::Parse { .. })));
        assert!(matches!(bad(""), Some(Error::Parse { .. })));

        let mut s = stream("2 1\n3\n1\n", 2);
        assert!(matches!(s.next_batch(), Err(Error::Parse { line: 2, .. })));

        let mut s = stream("3 1\n2\n1\n", 5);
        assert!(matches!(
            s.next_batch(),
            Err(Error::Truncated {
                expected: 3,
                found: 2,
                ..
            })
        ));
    }

    #[test]
    fn duplicates_merge_and_loops_drop() {
        let mut s = stream("2 1 1\n2 1 2 4 1 9\n1 5\n", 2);
        let b = s.next_batch().unwrap().unwrap();
        assert_eq!(b.neighbors(0), &[(1, 5)]);
    }

    #[test]
    fn node_weights_are_totalled() {
        let s = stream("2 1 11\n3 2 4\n5 1 4\n", 1);
        assert_eq!(s.total_node_weight(), 8);
        let mut s = s;
        assert_eq!(s.next_batch().unwrap().unwrap().node_weight(0), 3);
    }

    #[test]
    fn non_seekable_cannot_rewind() {
        let src = NonSeekable(Cursor::new(b"1 0\n\n".to_vec()));
        let mut s = GraphStream::new(src, 1).unwrap();
        s.next_batch().unwrap();
        assert!(s.next_batch().unwrap().is_none());
        assert!(matches!(s.rewind(), Err(Error::RestreamUnsupported)));
    }

    #[test]
    fn partition_file_round_trip() {
        let mut buf = Vec::new();
        write_assignment(&[0, 1, 1], &mut buf).unwrap();
        assert_eq!(buf, b"0\n1\n1\n");
        assert_eq!(read_assignment(&buf[..], 3, 2).unwrap(), vec![0, 1, 1]);
        assert!(matches!(
            read_assignment(&b"0\n1\n"[..], 3, 2),
            Err(Error::Truncated {
                expected: 3,
                found: 2,
                ..
            })
        ));
        assert!(matches!(
            read_assignment(&b"0\n2\n1\n"[..], 3, 2),
            Err(Error::InvalidBlock { block: 2, k: 2 })
        ));
    }

    #[test]
    fn unassigned_state_cannot_be_written() {
        let dir = tempfile::tempdir().unwrap();
        let state = PartitionState::new(2, 2, 2);
        assert!(matches!(
            write_partition(&state, dir.path().join("p")),
            Err(Error::Unassigned(0))
        ));
    }

    #[test]
    fn write_then_parse() {
        let g = Graph::from_edges(vec![1, 2, 1], [(0, 1, 3), (1, 2, 1)]);
        let mut buf = Vec::new();
        write_metis(&g, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "3 2 11\n1 2 3\n2 1 3 3 1\n1 2 1\n"
        );
        assert_eq!(parse_metis(std::str::from_utf8(&buf).unwrap()).unwrap(), g);
    }
}
