//! Undirected graphs, proper colourings, and the triangle-full
//! 4-clique-free transformation.

use crate::{Error, Result};
use std::collections::BTreeSet;

/// A finite undirected graph without self-loops, vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph; edges are normalised to `(min, max)` and
    /// deduplicated, self-loops are rejected.
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Contract(format!("self-loop at vertex {u}")));
            }
            if u >= vertices || v >= vertices {
                return Err(Error::Contract(format!(
                    "edge ({u},{v}) out of range ({vertices} vertices)"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            vertices,
            edges: set,
        })
    }

    /// Number of vertices.
    pub fn vertices(&self) -> usize {
        self.vertices
    }

    /// The normalised edge list.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Adjacency test.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Open neighbourhood: the vertices adjacent to `v`.
    pub fn open_neighbourhood(&self, v: usize) -> Vec<usize> {
        (0..self.vertices).filter(|&u| self.adjacent(u, v)).collect()
    }

    /// Closed neighbourhood: `v` together with its adjacent vertices.
    pub fn closed_neighbourhood(&self, v: usize) -> Vec<usize> {
        let mut n = self.open_neighbourhood(v);
        n.push(v);
        n.sort_unstable();
        n
    }

    /// Vertex degree.
    pub fn degree(&self, v: usize) -> usize {
        self.open_neighbourhood(v).len()
    }

    /// True when the graph is connected (vacuously for ≤ 1 vertices).
    pub fn is_connected(&self) -> bool {
        if self.vertices <= 1 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        crate::graph::reachable(&adj, 0).count() == self.vertices
    }

    /// True when some `k` vertices are pairwise adjacent.
    pub fn has_clique(&self, k: usize) -> bool {
        fn extend(g: &Graph, clique: &mut Vec<usize>, start: usize, k: usize) -> bool {
            if clique.len() == k {
                return true;
            }
            for v in start..g.vertices {
                if clique.iter().all(|&u| g.adjacent(u, v)) {
                    clique.push(v);
                    if extend(g, clique, v + 1, k) {
                        return true;
                    }
                    clique.pop();
                }
            }
            false
        }
        extend(self, &mut Vec::new(), 0, k)
    }

    /// True when every vertex belongs to a triangle.
    pub fn is_triangle_full(&self) -> bool {
        (0..self.vertices).all(|v| {
            let n = self.open_neighbourhood(v);
            n.iter()
                .any(|&u| n.iter().any(|&w| u < w && self.adjacent(u, w)))
        })
    }

    /// Parses the edge-list format: one `u v` pair per line; blank lines
    /// and `#` comments are skipped. Vertices are implicit (0..=max).
    pub fn parse_edges(text: &str) -> Result<Graph> {
        let mut pairs = Vec::new();
        let mut max_v = 0usize;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize> {
                tok.ok_or(Error::Parse {
                    line: i + 1,
                    message: "expected `u v`".into(),
                })?
                .parse()
                .map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("bad vertex in `{line}`"),
                })
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("trailing tokens in `{line}`"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("self-loop at vertex {u}"),
                });
            }
            max_v = max_v.max(u).max(v);
            pairs.push((u, v));
        }
        if pairs.is_empty() {
            return Err(Error::Parse {
                line: 1,
                message: "empty edge list".into(),
            });
        }
        Graph::new(max_v + 1, pairs)
    }

    /// Serialises to the edge-list format.
    pub fn to_edges(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// A proper colouring: adjacent vertices receive different colours.
/// Colours are `0..k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Colouring(pub Vec<usize>);

impl Colouring {
    /// Number of colours actually used (max + 1).
    pub fn colours(&self) -> usize {
        self.0.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Validates properness against a graph.
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.0.len() == g.vertices() && g.edges().all(|(u, v)| self.0[u] != self.0[v])
    }

    /// The identity colouring with one colour per vertex.
    pub fn trivial(g: &Graph) -> Colouring {
        Colouring((0..g.vertices()).collect())
    }
}

/// Backtracking search for a proper `k`-colouring, branching on vertices
/// in descending degree order. Returns `None` exactly when no proper
/// `k`-colouring exists.
pub fn graph_colouring(g: &Graph, k: usize) -> Option<Colouring> {
    if k == 0 {
        return (g.vertices() == 0).then(|| Colouring(Vec::new()));
    }
    let mut order: Vec<usize> = (0..g.vertices()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colour = vec![usize::MAX; g.vertices()];

    fn assign(g: &Graph, order: &[usize], colour: &mut Vec<usize>, pos: usize, k: usize) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        // Symmetry breaking: never introduce colour c before c-1 exists.
        let used = colour
            .iter()
            .filter(|&&c| c != usize::MAX)
            .copied()
            .max()
            .map_or(0, |m| m + 1);
        for c in 0..k.min(used + 1) {
            if g.open_neighbourhood(v).iter().all(|&u| colour[u] != c) {
                colour[v] = c;
                if assign(g, order, colour, pos + 1, k) {
                    return true;
                }
                colour[v] = usize::MAX;
            }
        }
        false
    }

    if assign(g, &order, &mut colour, 0, k) {
        Some(Colouring(colour))
    } else {
        None
    }
}

/// The Moser spindle: 7 vertices, 11 edges, triangle-full, 4-clique-free
/// and not 3-colourable. Used as the fixed target when the input of
/// [`triangle_full_transform`] already contains a 4-clique.
pub fn moser_spindle() -> Graph {
    Graph::new(
        7,
        [
            (0, 1),
            (0, 2),
            (1, 2),
            (1, 3),
            (2, 3),
            (0, 4),
            (0, 5),
            (4, 5),
            (4, 6),
            (5, 6),
            (3, 6),
        ],
    )
    .expect("spindle is well-formed")
}

/// Turns any graph into a triangle-full 4-clique-free graph that is
/// 3-colourable iff the input is: each vertex is expanded into a triangle
/// `(v,0),(v,1),(v,2)` and the original edges connect the layer-0 copies.
/// Inputs containing a 4-clique are not 3-colourable, so they map to the
/// fixed non-3-colourable spindle.
pub fn triangle_full_transform(g: &Graph) -> Graph {
    if g.has_clique(4) {
        return moser_spindle();
    }
    let n = g.vertices();
    let id = |v: usize, layer: usize| v * 3 + layer;
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        edges.push((id(u, 0), id(v, 0)));
    }
    for v in 0..n {
        edges.push((id(v, 0), id(v, 1)));
        edges.push((id(v, 0), id(v, 2)));
        edges.push((id(v, 1), id(v, 2)));
    }
    Graph::new(3 * n, edges).expect("transform is well-formed")
}
