// SPDX-License-Identifier: Apache-2.0
//! Graph storage (CSR), loaders, the random generator and 1D vertex ownership.

use std::fmt;
use std::io::BufRead;
use std::ops::Range;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;

/// Index of a vertex, `0 <= id < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One direction of adjacency in compressed sparse row form.
#[derive(Debug, Clone, PartialEq)]
struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Option<Vec<f64>>,
}

impl Adjacency {
    /// Counting-sort build; edges sharing a source keep their input order.
    fn build(n: usize, edges: impl Iterator<Item = (u32, u32, f64)> + Clone, weighted: bool) -> Self {
        let mut offsets = vec![0usize; n + 1];
        let mut m = 0usize;
        for (s, _, _) in edges.clone() {
            offsets[s as usize + 1] += 1;
            m += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; m];
        let mut weights = if weighted { Some(vec![0.0f64; m]) } else { None };
        for (s, t, w) in edges {
            let slot = cursor[s as usize];
            cursor[s as usize] += 1;
            targets[slot] = t;
            if let Some(ws) = weights.as_mut() {
                ws[slot] = w;
            }
        }
        Adjacency { offsets, targets, weights }
    }

    fn reversed(&self, n: usize) -> Self {
        let weights = self.weights.as_deref();
        let edges = (0..n).flat_map(move |s| {
            (self.offsets[s]..self.offsets[s + 1])
                .map(move |e| (self.targets[e], s as u32, weights.map_or(1.0, |w| w[e])))
        });
        Adjacency::build(n, edges, self.weights.is_some())
    }

    #[inline]
    fn range(&self, v: usize) -> Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }
}

/// Immutable multigraph in CSR form with an optional, lazily built transpose.
#[derive(Debug)]
pub struct Graph {
    n: usize,
    directed: bool,
    out: Adjacency,
    inc: OnceLock<Adjacency>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        let inc = OnceLock::new();
        if let Some(a) = self.inc.get() {
            let _ = inc.set(a.clone());
        }
        Graph { n: self.n, directed: self.directed, out: self.out.clone(), inc }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.directed == other.directed && self.out == other.out
    }
}

impl Graph {
    /// Builds a graph from an edge list. For undirected graphs every non-loop edge
    /// is mirrored; a self-loop is stored once.
    pub fn from_edges(n: usize, edges: &[(u32, u32, f64)], directed: bool, weighted: bool) -> Result<Self, GraphError> {
        if n > u32::MAX as usize {
            return Err(GraphError::Validation(format!("vertex count {n} exceeds u32 range")));
        }
        for &(s, t, w) in edges {
            if s as usize >= n || t as usize >= n {
                return Err(GraphError::Validation(format!("edge ({s}, {t}) out of range for n = {n}")));
            }
            if weighted && !(w.is_finite() && w >= 0.0) {
                return Err(GraphError::Validation(format!("edge ({s}, {t}) has invalid weight {w}")));
            }
        }
        let unit = |w: f64| if weighted { w } else { 1.0 };
        let out = if directed {
            Adjacency::build(n, edges.iter().map(|&(s, t, w)| (s, t, unit(w))), weighted)
        } else {
            let mirrored = edges.iter().flat_map(move |&(s, t, w)| {
                let fwd = std::iter::once((s, t, unit(w)));
                let back = (s != t).then_some((t, s, unit(w)));
                fwd.chain(back)
            });
            Adjacency::build(n, mirrored, weighted)
        };
        Ok(Graph { n, directed, out, inc: OnceLock::new() })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out.targets.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.out.weights.is_some()
    }

    pub fn out_offsets(&self) -> &[usize] {
        &self.out.offsets
    }

    pub fn out_targets(&self) -> &[u32] {
        &self.out.targets
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.out.weights.as_deref()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out.range(v.index()).len()
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[u32] {
        &self.out.targets[self.out.range(v.index())]
    }

    /// Out-edges of `v` as `(target, weight)`; unweighted graphs report weight 1.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        let r = self.out.range(v.index());
        let ws = self.out.weights.as_deref();
        r.map(move |e| (VertexId(self.out.targets[e]), ws.map_or(1.0, |w| w[e])))
    }

    /// Builds the in-adjacency if it has not been built yet.
    pub fn ensure_transpose(&self) {
        self.in_adjacency();
    }

    pub fn has_transpose(&self) -> bool {
        self.inc.get().is_some()
    }

    fn in_adjacency(&self) -> &Adjacency {
        self.inc.get_or_init(|| if self.directed { self.out.reversed(self.n) } else { self.out.clone() })
    }

    /// In-neighbors of `v` (sources of edges into `v`), in ascending source order.
    pub fn in_neighbors(&self, v: VertexId) -> &[u32] {
        let inc = self.in_adjacency();
        &inc.targets[inc.range(v.index())]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adjacency().range(v.index()).len()
    }

    /// All directed edges as `(source, target, weight)` in CSR order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        (0..self.n as u32).flat_map(move |s| self.out_edges(VertexId(s)).map(move |(t, w)| (s, t.0, w)))
    }

    /// Checks the CSR laws and, for undirected graphs, mirror symmetry.
    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |msg: String| Err(GraphError::Validation(msg));
        let o = &self.out.offsets;
        if o.len() != self.n + 1 || o[0] != 0 || o[self.n] != self.out.targets.len() {
            return bad("offset array bounds are inconsistent".into());
        }
        if o.windows(2).any(|w| w[0] > w[1]) {
            return bad("offsets are not monotone".into());
        }
        if let Some(t) = self.out.targets.iter().find(|&&t| t as usize >= self.n) {
            return bad(format!("target {t} out of range"));
        }
        if let Some(ws) = &self.out.weights {
            if ws.len() != self.out.targets.len() {
                return bad("weight array length differs from target array".into());
            }
            if let Some(w) = ws.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
                return bad(format!("invalid weight {w}"));
            }
        }
        if !self.directed {
            let mut fwd: Vec<(u32, u32, u64)> = self.edges().map(|(s, t, w)| (s, t, w.to_bits())).collect();
            let mut back: Vec<(u32, u32, u64)> = fwd.iter().map(|&(s, t, w)| (t, s, w)).collect();
            fwd.sort_unstable();
            back.sort_unstable();
            if fwd != back {
                return bad("undirected graph is missing mirror edges".into());
            }
        }
        Ok(())
    }
}

/// Returns a graph whose out-adjacency is `g`'s in-adjacency.
pub fn transpose(g: &Graph) -> Graph {
    let out = if g.directed { g.out.reversed(g.n) } else { g.out.clone() };
    let inc = OnceLock::new();
    let _ = inc.set(g.out.clone());
    Graph { n: g.n, directed: g.directed, out, inc }
}

fn parse_field<T: FromStr>(tok: &str, line: usize, what: &str) -> Result<T, GraphError> {
    tok.parse().map_err(|_| GraphError::Parse { line, msg: format!("invalid {what} '{tok}'") })
}

fn parse_weight(tok: &str, line: usize) -> Result<f64, GraphError> {
    let w: f64 = parse_field(tok, line, "weight")?;
    if !w.is_finite() {
        return Err(GraphError::Parse { line, msg: format!("non-finite weight '{tok}'") });
    }
    if w < 0.0 {
        return Err(GraphError::Validation(format!("line {line}: negative weight {w}")));
    }
    Ok(w)
}

/// Reads a whitespace-separated `u v [w]` edge list; `#` starts a comment line.
pub fn load_edge_list<R: BufRead>(reader: R, directed: bool, weighted: bool) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut max_id: Option<u32> = None;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        if !(2..=3).contains(&toks.len()) {
            return Err(GraphError::Parse {
                line: lineno,
                msg: format!("expected 'u v' or 'u v w', got {} fields", toks.len()),
            });
        }
        let u: u32 = parse_field(toks[0], lineno, "vertex id")?;
        let v: u32 = parse_field(toks[1], lineno, "vertex id")?;
        if u == u32::MAX || v == u32::MAX {
            return Err(GraphError::Parse { line: lineno, msg: "vertex id too large".into() });
        }
        let w = match toks.get(2) {
            Some(tok) => parse_weight(tok, lineno)?,
            None if weighted => return Err(GraphError::Parse { line: lineno, msg: "missing weight".into() }),
            None => 1.0,
        };
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v, if weighted { w } else { 1.0 }));
    }
    let n = max_id.map_or(0, |m| m as usize + 1);
    Graph::from_edges(n, &edges, directed, weighted)
}

/// Reads the DIMACS shortest-path format (`c`, `p sp n m`, `a u v w`, 1-based ids).
pub fn load_dimacs<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(GraphError::Format(format!("line {lineno}: duplicate problem line")));
                }
                if toks.len() != 4 || toks[1] != "sp" {
                    return Err(GraphError::Format(format!("line {lineno}: expected 'p sp <n> <m>'")));
                }
                let n: usize = parse_field(toks[2], lineno, "vertex count")?;
                let m: usize = parse_field(toks[3], lineno, "arc count")?;
                if n >= u32::MAX as usize {
                    return Err(GraphError::Format(format!("line {lineno}: vertex count too large")));
                }
                header = Some((n, m));
                edges.reserve(m.min(1 << 24));
            }
            Some("a") => {
                let Some((n, _)) = header else {
                    return Err(GraphError::Format(format!("line {lineno}: arc before problem line")));
                };
                if toks.len() != 4 {
                    return Err(GraphError::Parse { line: lineno, msg: "expected 'a u v w'".into() });
                }
                let u: usize = parse_field(toks[1], lineno, "vertex id")?;
                let v: usize = parse_field(toks[2], lineno, "vertex id")?;
                for id in [u, v] {
                    if id == 0 || id > n {
                        return Err(GraphError::Format(format!("line {lineno}: vertex id {id} outside [1, {n}]")));
                    }
                }
                let w = parse_weight(toks[3], lineno)?;
                edges.push(((u - 1) as u32, (v - 1) as u32, w));
            }
            Some(other) => return Err(GraphError::Parse { line: lineno, msg: format!("unknown line type '{other}'") }),
        }
    }
    let (n, m) = header.ok_or_else(|| GraphError::Format("missing problem line".into()))?;
    if m != edges.len() {
        return Err(GraphError::Format(format!("problem line declares {m} arcs but {} were read", edges.len())));
    }
    Graph::from_edges(n, &edges, true, true)
}

/// Erdős–Rényi G(n, p) without self-loops. Weights are uniform on `[lo, hi]`.
/// The output depends only on the arguments.
pub fn generate_random(
    n: usize,
    p: f64,
    seed: u64,
    weight_range: (f64, f64),
    directed: bool,
) -> Result<Graph, GraphError> {
    let (lo, hi) = weight_range;
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::Validation(format!("edge probability {p} not in [0, 1]")));
    }
    if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi) {
        return Err(GraphError::Validation(format!("invalid weight range [{lo}, {hi}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        let first = if directed { 0 } else { u + 1 };
        for v in first..n as u32 {
            if u == v {
                continue;
            }
            if rng.random::<f64>() < p {
                let w = lo + (hi - lo) * rng.random::<f64>();
                edges.push((u, v, w));
            }
        }
    }
    Graph::from_edges(n, &edges, directed, true)
}

/// How vertices are assigned to ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Policy {
    /// Contiguous ranges whose sizes differ by at most one.
    #[default]
    Block,
    /// `owner(v) = v mod R`.
    Cyclic,
}

impl FromStr for Policy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "block" => Ok(Policy::Block),
            "cyclic" => Ok(Policy::Cyclic),
            _ => Err(format!("unknown distribution policy '{s}'")),
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Policy::Block => "block",
            Policy::Cyclic => "cyclic",
        })
    }
}

/// 1D vertex ownership across `ranks` simulated ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Distribution {
    ranks: usize,
    policy: Policy,
}

impl Default for Distribution {
    fn default() -> Self {
        Distribution { ranks: 1, policy: Policy::Block }
    }
}

impl Distribution {
    pub fn new(ranks: usize, policy: Policy) -> Result<Self, GraphError> {
        if ranks == 0 {
            return Err(GraphError::Validation("rank count must be at least 1".into()));
        }
        Ok(Distribution { ranks, policy })
    }

    pub fn ranks(&self) -> usize {
        self.ranks
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    /// Rank owning `v` in a graph of `n` vertices.
    #[inline]
    pub fn owner(&self, v: VertexId, n: usize) -> usize {
        let v = v.index();
        debug_assert!(v < n, "vertex {v} out of range for n = {n}");
        match self.policy {
            Policy::Cyclic => v % self.ranks,
            Policy::Block => {
                let q = n / self.ranks;
                let r = n % self.ranks;
                let big = r * (q + 1);
                if v < big {
                    v / (q + 1)
                } else {
                    r + (v - big) / q
                }
            }
        }
    }

    /// Vertex range of `rank` under the block policy.
    pub fn block_range(&self, rank: usize, n: usize) -> Range<usize> {
        let q = n / self.ranks;
        let r = n % self.ranks;
        let start = rank * q + rank.min(r);
        let len = q + usize::from(rank < r);
        start..start + len
    }
}
