//! Vertex-colored weighted digraphs and the tree families summed over by
//! the exact cumulant formulas.
//!
//! All graphs here live on vertices `1, …, n` and carry:
//!
//! * a color per vertex — **black** vertices are decorated by measure
//!   atoms `≤ u₀` ("small"), **white** vertices by atoms `> u₀` ("big"),
//!   and **red** vertices by arbitrary atoms;
//! * a rational weight per directed edge.
//!
//! The weight function of a graph `G` at a decoration `x` is
//!
//! ```text
//! f_G(x) = ∏_{(i→j) ∈ E}  1 / (x_j − x_i + w_{ij}) ,
//! ```
//!
//! evaluated by [`eval_f`].
//!
//! Three graph families appear in the cumulant machinery:
//!
//! * **Non-crossing alternating trees** ([`enumerate_nca_trees`]): trees on
//!   `1..n` whose every edge `(a, b)` with `a < b` joins a black `a` to a
//!   white `b`, drawn without crossings when the vertices sit on a line.
//!   There are `C_{n−1}` of them (Catalan), each containing the edge
//!   `(1, n)`; edge weights are the label differences `b − a`.
//! * **Caterpillars** ([`enumerate_caterpillars`]): one for each subset of
//!   `{2, …, n}` of spine vertices together with `1`.  The black spine
//!   `b_1 = 1 < b_2 < … < b_ℓ` is joined by spine edges
//!   `(b_i, b_{i+1})`, and every non-spine vertex `v` with
//!   `b_i < v < b_{i+1}` hangs red off `b_i` (with `b_{ℓ+1} = n + 1`).
//!   There are `2^{n−1}` of them; edge weights are again label
//!   differences.
//! * **Spines and multi-spines** ([`enumerate_spines`],
//!   [`enumerate_multispines`]): orderings of a vertex set into one
//!   directed path, and partitions of `1..n` into vertex-disjoint directed
//!   paths.  These index the expansion of the pairwise interaction product
//!   `Θ` (see [`crate::cumulants::theta_via_multispines`]); the weight of
//!   an edge `(i → j)` there is the multiplicity `a_i` of its source.

use itertools::Itertools;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// Vertex color, determining which measure atoms may decorate the vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    /// Decorated by atoms `≤ u₀`.
    Black,
    /// Decorated by any atom.
    Red,
    /// Decorated by atoms `> u₀`.
    White,
}

impl Color {
    fn as_str(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::Red => "red",
            Color::White => "white",
        }
    }

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "black" => Ok(Color::Black),
            "red" => Ok(Color::Red),
            "white" => Ok(Color::White),
            other => Err(Error::InvalidGraph(format!("unknown color {other:?}"))),
        }
    }
}

/// A directed edge between 1-based vertices, with a rational weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: Rational,
}

/// A vertex-colored weighted digraph on vertices `1, …, n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDigraph {
    n: usize,
    colors: Vec<Color>,
    edges: Vec<Edge>,
}

impl ColoredDigraph {
    /// Validates and builds a graph.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidGraph`] if `colors` does not have length `n`, an
    /// edge endpoint is out of range, an edge is a self-loop, or two edges
    /// join the same pair of vertices (in either direction).
    pub fn new(n: usize, colors: Vec<Color>, edges: Vec<Edge>) -> Result<Self> {
        if colors.len() != n {
            return Err(Error::InvalidGraph(format!(
                "expected {n} colors, got {}",
                colors.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for e in &edges {
            if e.from == 0 || e.from > n || e.to == 0 || e.to > n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) leaves the vertex range 1..={n}",
                    e.from, e.to
                )));
            }
            if e.from == e.to {
                return Err(Error::InvalidGraph(format!("self-loop at {}", e.from)));
            }
            let key = (e.from.min(e.to), e.from.max(e.to));
            if !seen.insert(key) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge between {} and {}",
                    key.0, key.1
                )));
            }
        }
        Ok(Self { n, colors, edges })
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Color of the 1-based vertex `v`.
    pub fn color(&self, v: usize) -> Color {
        self.colors[v - 1]
    }

    /// All vertex colors, indexed by `vertex − 1`.
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of black vertices.
    pub fn black_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Color::Black).count()
    }

    /// `true` if the underlying undirected graph is a tree on all `n`
    /// vertices (connected with `n − 1` edges).
    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.n {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            if parent[v] != v {
                let root = find(parent, parent[v]);
                parent[v] = root;
            }
            parent[v]
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.from - 1), find(&mut parent, e.to - 1));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    /// Serializes to `{"n": …, "colors": […], "edges": [[i, j, "w"], …]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let dto = GraphJson {
            n: self.n,
            colors: self.colors.iter().map(|c| c.as_str().to_string()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| (e.from, e.to, format_rational(&e.weight)))
                .collect(),
        };
        serde_json::to_value(dto).expect("graph serialization cannot fail")
    }

    /// Parses the JSON produced by [`Self::to_json`], revalidating.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidGraph`] for malformed JSON or an invalid graph.
    pub fn from_json(json: &str) -> Result<Self> {
        let dto: GraphJson = serde_json::from_str(json)
            .map_err(|e| Error::InvalidGraph(format!("malformed JSON: {e}")))?;
        let colors = dto
            .colors
            .iter()
            .map(|s| Color::from_str(s))
            .collect::<Result<Vec<_>>>()?;
        let edges = dto
            .edges
            .iter()
            .map(|(from, to, w)| {
                Ok(Edge {
                    from: *from,
                    to: *to,
                    weight: parse_rational(w)
                        .map_err(|e| Error::InvalidGraph(e.to_string()))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dto.n, colors, edges)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    colors: Vec<String>,
    edges: Vec<(usize, usize, String)>,
}

/// Evaluates the weight function
/// `f_G(x) = ∏_{(i→j)} 1 / (x_j − x_i + w_{ij})` at the decoration
/// `values` (indexed by `vertex − 1`).
///
/// # Errors
///
/// * [`Error::InvalidInput`] if `values` does not decorate every vertex.
/// * [`Error::ZeroDenominator`] naming the first edge whose denominator
///   vanishes.
pub fn eval_f(graph: &ColoredDigraph, values: &[Rational]) -> Result<Rational> {
    if values.len() != graph.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "expected {} decoration values, got {}",
            graph.vertex_count(),
            values.len()
        )));
    }
    let mut product = Rational::from_integer(1.into());
    for e in graph.edges() {
        let den = &values[e.to - 1] - &values[e.from - 1] + &e.weight;
        if den.is_zero() {
            return Err(Error::ZeroDenominator {
                from: e.from,
                to: e.to,
            });
        }
        product /= den;
    }
    Ok(product)
}

/// `true` if no two edges cross when the vertices are laid out in order on
/// a line: there are no edges `(v_1, v_3)` and `(v_2, v_4)` with
/// `v_1 < v_2 < v_3 < v_4`.
pub fn is_noncrossing(graph: &ColoredDigraph) -> bool {
    let spans: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .map(|e| (e.from.min(e.to), e.from.max(e.to)))
        .collect();
    for (k, &(a1, b1)) in spans.iter().enumerate() {
        for &(a2, b2) in &spans[k + 1..] {
            if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
                return false;
            }
        }
    }
    true
}

/// `true` if `graph` is a non-crossing alternating tree: a tree whose
/// every edge goes from a smaller black vertex to a larger white vertex,
/// with label-difference weights, no crossings, and (for `n = 1`) a single
/// black vertex.
pub fn is_nca_tree(graph: &ColoredDigraph) -> bool {
    let n = graph.vertex_count();
    if n == 1 {
        return graph.edges().is_empty() && graph.color(1) == Color::Black;
    }
    if !graph.is_tree() || !is_noncrossing(graph) {
        return false;
    }
    for e in graph.edges() {
        if e.from >= e.to
            || graph.color(e.from) != Color::Black
            || graph.color(e.to) != Color::White
            || e.weight != int(e.to as i64 - e.from as i64)
        {
            return false;
        }
    }
    true
}

/// All non-crossing alternating trees on `1..n`, in a deterministic order.
///
/// # Panics
///
/// Panics if `n == 0`; the families are indexed by `n ≥ 1`.
pub fn enumerate_nca_trees(n: usize) -> Vec<ColoredDigraph> {
    assert!(n >= 1, "tree families are indexed by n >= 1");
    // A tree on the interval {lo, …, hi} is either the single black vertex
    // (lo == hi), or splits at some `mid`: a tree on {lo, …, mid−1}, a tree
    // on {mid, …, hi}, and the edge (lo, hi), which turns `hi` white.
    struct Parts {
        edges: Vec<(usize, usize)>,
        white: Vec<usize>,
    }
    fn build(lo: usize, hi: usize) -> Vec<Parts> {
        if lo == hi {
            return vec![Parts {
                edges: Vec::new(),
                white: Vec::new(),
            }];
        }
        let mut out = Vec::new();
        for mid in lo + 1..=hi {
            for left in build(lo, mid - 1) {
                for right in build(mid, hi) {
                    let mut edges = left.edges.clone();
                    edges.extend(right.edges.iter().copied());
                    edges.push((lo, hi));
                    let mut white = left.white.clone();
                    white.extend(right.white.iter().copied());
                    if !white.contains(&hi) {
                        white.push(hi);
                    }
                    out.push(Parts { edges, white });
                }
            }
        }
        out
    }
    build(1, n)
        .into_iter()
        .map(|parts| {
            let mut colors = vec![Color::Black; n];
            for &w in &parts.white {
                colors[w - 1] = Color::White;
            }
            let edges = parts
                .edges
                .into_iter()
                .map(|(a, b)| Edge {
                    from: a,
                    to: b,
                    weight: int(b as i64 - a as i64),
                })
                .collect();
            ColoredDigraph::new(n, colors, edges).expect("construction yields valid graphs")
        })
        .collect()
}

/// A caterpillar graph: a black spine `1 = b_1 < … < b_ℓ` with red fan
/// vertices hanging off the spine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caterpillar {
    graph: ColoredDigraph,
    black: Vec<usize>,
}

impl Caterpillar {
    /// The underlying colored digraph.
    pub fn graph(&self) -> &ColoredDigraph {
        &self.graph
    }

    /// The spine `b_1 = 1 < b_2 < … < b_ℓ`.
    pub fn black(&self) -> &[usize] {
        &self.black
    }
}

/// All `2^{n−1}` caterpillars on `1..n`: one per spine set
/// `B = {1} ∪ S` with `S ⊆ {2, …, n}`.  Spine edges join consecutive
/// spine vertices; each non-spine `v` with `b_i < v < b_{i+1}` hangs off
/// `b_i` (where `b_{ℓ+1} = n + 1`).  All weights are label differences.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn enumerate_caterpillars(n: usize) -> Vec<Caterpillar> {
    assert!(n >= 1, "caterpillars are indexed by n >= 1");
    let mut out = Vec::with_capacity(1 << (n - 1));
    for mask in 0u64..(1 << (n - 1)) {
        let mut black = vec![1usize];
        for v in 2..=n {
            if mask >> (v - 2) & 1 == 1 {
                black.push(v);
            }
        }
        let mut edges = Vec::with_capacity(n - 1);
        for w in black.windows(2) {
            edges.push(Edge {
                from: w[0],
                to: w[1],
                weight: int(w[1] as i64 - w[0] as i64),
            });
        }
        for (idx, &b) in black.iter().enumerate() {
            let next = black.get(idx + 1).copied().unwrap_or(n + 1);
            for v in b + 1..next {
                edges.push(Edge {
                    from: b,
                    to: v,
                    weight: int(v as i64 - b as i64),
                });
            }
        }
        let mut colors = vec![Color::Red; n];
        for &b in &black {
            colors[b - 1] = Color::Black;
        }
        let graph =
            ColoredDigraph::new(n, colors, edges).expect("construction yields valid graphs");
        out.push(Caterpillar { graph, black });
    }
    out
}

/// All orderings of `vertices` into a single directed path (spines); the
/// result has `k!` entries for `k` vertices.
pub fn enumerate_spines(vertices: &[usize]) -> Vec<Vec<usize>> {
    let k = vertices.len();
    vertices.iter().copied().permutations(k).collect()
}

/// A partition of `1..n` into vertex-disjoint directed paths, stored with
/// paths sorted by their head vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSpine {
    paths: Vec<Vec<usize>>,
}

impl MultiSpine {
    /// The directed paths, each a sequence of vertices, sorted by head.
    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    /// Total number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    /// The consecutive-vertex edges `(i → j)` of all paths.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0], w[1])))
            .collect()
    }

    /// The digraph with one edge per consecutive path pair `(i → j)`,
    /// weighted by the source multiplicity `a_i` (`a` is indexed by
    /// `vertex − 1`); all vertices red.
    ///
    /// # Panics
    ///
    /// Panics if `a` is shorter than the vertex count.
    pub fn digraph(&self, a: &[Rational]) -> ColoredDigraph {
        let n = self.vertex_count();
        let edges = self
            .edge_pairs()
            .into_iter()
            .map(|(i, j)| Edge {
                from: i,
                to: j,
                weight: a[i - 1].clone(),
            })
            .collect();
        ColoredDigraph::new(n, vec![Color::Red; n], edges)
            .expect("paths give valid graphs")
    }
}

/// All ways to arrange `1..n` into vertex-disjoint directed paths
/// (multi-spines).  Counts for `n = 1, 2, 3, 4, …`: 1, 3, 13, 73, ….
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn enumerate_multispines(n: usize) -> Vec<MultiSpine> {
    assert!(n >= 1, "multi-spines are indexed by n >= 1");
    // Insert vertex k into every arrangement of 1..k−1: as its own new
    // path, or at any of the len+1 positions of an existing path.  Each
    // arrangement arises exactly once (remove the largest vertex to find
    // its unique parent).
    let mut arrangements: Vec<Vec<Vec<usize>>> = vec![vec![vec![1]]];
    for k in 2..=n {
        let mut next = Vec::new();
        for arr in &arrangements {
            let mut with_new = arr.clone();
            with_new.push(vec![k]);
            next.push(with_new);
            for (p, path) in arr.iter().enumerate() {
                for pos in 0..=path.len() {
                    let mut grown = arr.clone();
                    grown[p].insert(pos, k);
                    next.push(grown);
                }
            }
        }
        arrangements = next;
    }
    arrangements
        .into_iter()
        .map(|mut paths| {
            paths.sort_by_key(|p| p[0]);
            MultiSpine { paths }
        })
        .collect()
}

/// Iterates over all decorations of `graph` by `atoms`: black vertices
/// range over atoms `≤ u₀`, white vertices over atoms `> u₀`, red
/// vertices over all atoms.  Each item is a value vector indexed by
/// `vertex − 1`.
pub fn decorations<'a>(
    graph: &'a ColoredDigraph,
    atoms: &'a [Rational],
    u0: &'a Rational,
) -> impl Iterator<Item = Vec<Rational>> + 'a {
    let candidates: Vec<Vec<Rational>> = graph
        .colors()
        .iter()
        .map(|color| {
            atoms
                .iter()
                .filter(|x| match color {
                    Color::Black => *x <= u0,
                    Color::White => *x > u0,
                    Color::Red => true,
                })
                .cloned()
                .collect()
        })
        .collect();
    candidates
        .into_iter()
        .map(|c| c.into_iter())
        .multi_cartesian_product()
}
