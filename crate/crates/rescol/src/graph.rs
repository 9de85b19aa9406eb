//! Colored undirected graph model.
//!
//! A [`ColoredGraph`] is a simple undirected graph together with a total
//! assignment of a color (node type) to every node. Colors model diversity
//! of implementations: an attacker exploiting one vulnerability can only
//! compromise nodes of a single color. The graph is immutable after
//! construction; everything downstream (robustness checkers, the consensus
//! engine, graph growth) reads it concurrently without synchronization.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Node sets are bitmasks in a `u64`; larger graphs are rejected up front.
pub const MAX_NODES: usize = 64;

/// Color indices are small integers; a graph cannot use more distinct colors
/// than it has nodes, so this bound costs nothing.
pub const MAX_COLOR: usize = 64;

/// Index of a node, dense in `[0, n)` and stable for the graph's lifetime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

/// Index of a node type in the color set `[0, color_count)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Color(pub usize);

#[derive(Error, Debug)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("graphs with more than {MAX_NODES} nodes are not supported (got {0})")]
    TooLarge(usize),
    #[error("edge endpoint {endpoint} out of range for {n} nodes")]
    EndpointOutOfRange { endpoint: usize, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("coloring has {got} entries, expected {expected}")]
    ColoringLength { got: usize, expected: usize },
    #[error("declared color count {declared} is smaller than a used color index {used}")]
    ColorCountTooSmall { declared: usize, used: usize },
    #[error("color index {0} exceeds the supported maximum of {MAX_COLOR}")]
    ColorTooLarge(usize),
    #[error("node {0} out of range for {1} nodes")]
    InvalidNode(usize, usize),
    #[error("set operation on an empty node set")]
    EmptySet,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

/// A subset of the nodes of one graph, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeSet(pub u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn singleton(v: NodeId) -> Self {
        NodeSet(1u64 << v.0)
    }

    /// All nodes `[0, n)`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_NODES);
        if n == 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.0 >> v.0 & 1 == 1
    }

    pub fn insert(&mut self, v: NodeId) {
        self.0 |= 1u64 << v.0;
    }

    pub fn remove(&mut self, v: NodeId) {
        self.0 &= !(1u64 << v.0);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(&self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_disjoint(&self, other: NodeSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(&self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<NodeId> {
        if self.0 == 0 {
            None
        } else {
            Some(NodeId(self.0.trailing_zeros() as usize))
        }
    }

    pub fn iter(&self) -> NodeSetIter {
        NodeSetIter(self.0)
    }
}

impl FromIterator<NodeId> for NodeSet {
    fn from_iter<T: IntoIterator<Item = NodeId>>(iter: T) -> Self {
        let mut s = NodeSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

pub struct NodeSetIter(u64);

impl Iterator for NodeSetIter {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(NodeId(v))
    }
}

impl IntoIterator for NodeSet {
    type Item = NodeId;
    type IntoIter = NodeSetIter;

    fn into_iter(self) -> NodeSetIter {
        self.iter()
    }
}

impl IntoIterator for &NodeSet {
    type Item = NodeId;
    type IntoIter = NodeSetIter;

    fn into_iter(self) -> NodeSetIter {
        self.iter()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

// Serialized as a plain sorted list of node indices.
impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v.0)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for NodeSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = NodeSet;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a list of node indices below {MAX_NODES}")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<NodeSet, A::Error> {
                let mut s = NodeSet::EMPTY;
                while let Some(idx) = seq.next_element::<usize>()? {
                    if idx >= MAX_NODES {
                        return Err(serde::de::Error::custom(format!(
                            "node index {idx} exceeds the supported maximum of {MAX_NODES}"
                        )));
                    }
                    s.insert(NodeId(idx));
                }
                Ok(s)
            }
        }
        deserializer.deserialize_seq(V)
    }
}

/// Undirected simple graph with a total coloring of its nodes.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    color_count: usize,
    colors: Vec<Color>,
    adj: Vec<NodeSet>,
}

impl ColoredGraph {
    /// Builds a graph from an edge list, normalizing it: duplicate edges and
    /// both orientations of the same pair collapse into one stored edge.
    pub fn new(
        n: usize,
        edges: &[(usize, usize)],
        colors: Vec<usize>,
    ) -> Result<ColoredGraph, GraphError> {
        let color_count = colors.iter().copied().max().map_or(1, |c| c + 1);
        Self::with_color_count(n, edges, colors, color_count)
    }

    /// As [`ColoredGraph::new`] but with an explicit color-set size, so a
    /// color set larger than the colors actually used is representable.
    pub fn with_color_count(
        n: usize,
        edges: &[(usize, usize)],
        colors: Vec<usize>,
        color_count: usize,
    ) -> Result<ColoredGraph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_NODES {
            return Err(GraphError::TooLarge(n));
        }
        if colors.len() != n {
            return Err(GraphError::ColoringLength {
                got: colors.len(),
                expected: n,
            });
        }
        for &c in &colors {
            if c >= color_count {
                return Err(GraphError::ColorCountTooSmall {
                    declared: color_count,
                    used: c,
                });
            }
            if c >= MAX_COLOR {
                return Err(GraphError::ColorTooLarge(c));
            }
        }
        let mut adj = vec![NodeSet::EMPTY; n];
        for &(a, b) in edges {
            if a >= n {
                return Err(GraphError::EndpointOutOfRange { endpoint: a, n });
            }
            if b >= n {
                return Err(GraphError::EndpointOutOfRange { endpoint: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adj[a].insert(NodeId(b));
            adj[b].insert(NodeId(a));
        }
        Ok(ColoredGraph {
            n,
            color_count,
            colors: colors.into_iter().map(Color).collect(),
            adj,
        })
    }

    /// Complete graph on `n` nodes with the given coloring.
    pub fn complete(n: usize, colors: Vec<usize>) -> Result<ColoredGraph, GraphError> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        ColoredGraph::new(n, &edges, colors)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Size of the declared color set; may exceed the number of colors used.
    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.n).map(NodeId)
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.n)
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        v.0 < self.n
    }

    pub fn color(&self, v: NodeId) -> Color {
        self.colors[v.0]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Open neighborhood `N(v)`.
    pub fn neighbors(&self, v: NodeId) -> NodeSet {
        self.adj[v.0]
    }

    /// Closed neighborhood `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: NodeId) -> Result<NodeSet, GraphError> {
        if !self.contains_node(v) {
            return Err(GraphError::InvalidNode(v.0, self.n));
        }
        Ok(self.adj[v.0].union(NodeSet::singleton(v)))
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v.0].len()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adj[a.0].contains(b)
    }

    /// Edges, each once, smaller endpoint first, lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in self.adj[i].iter() {
                if j.0 > i {
                    out.push((i, j.0));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// True iff all nodes of the (nonempty) set share one color. A singleton
    /// counts as mono-chromatic; with any size threshold of at least two a
    /// singleton fails the size test anyway, so this convention never flips
    /// a robustness verdict in the supported parameter range.
    pub fn is_mono_chromatic(&self, s: NodeSet) -> Result<bool, GraphError> {
        let mut iter = s.iter();
        let first = iter.next().ok_or(GraphError::EmptySet)?;
        let c = self.color(first);
        Ok(iter.all(|v| self.color(v) == c))
    }

    /// Partitions `s` by color; empty classes are omitted. Classes come out
    /// ordered by color index, each class a sub-bitmask of `s`.
    pub fn color_classes(&self, s: NodeSet) -> Vec<(Color, NodeSet)> {
        let mut classes: Vec<(Color, NodeSet)> = Vec::new();
        for v in s.iter() {
            let c = self.color(v);
            match classes.iter_mut().find(|(cc, _)| *cc == c) {
                Some((_, set)) => set.insert(v),
                None => classes.push((c, NodeSet::singleton(v))),
            }
        }
        classes.sort_by_key(|(c, _)| *c);
        classes
    }

    /// Number of distinct colors present in `s`.
    pub fn distinct_colors_in(&self, s: NodeSet) -> usize {
        let mut seen = BTreeSet::new();
        for v in s.iter() {
            seen.insert(self.color(v));
        }
        seen.len()
    }

    /// Same topology, every node color 0. Realizes the classical (one-color)
    /// robustness notions through the colored checkers.
    pub fn recolor_uniform(&self) -> ColoredGraph {
        ColoredGraph {
            n: self.n,
            color_count: 1,
            colors: vec![Color(0); self.n],
            adj: self.adj.clone(),
        }
    }

    /// Same topology with a replacement coloring.
    pub fn recolor(&self, colors: Vec<usize>) -> Result<ColoredGraph, GraphError> {
        let color_count = colors.iter().copied().max().map_or(1, |c| c + 1);
        if colors.len() != self.n {
            return Err(GraphError::ColoringLength {
                got: colors.len(),
                expected: self.n,
            });
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= MAX_COLOR) {
            return Err(GraphError::ColorTooLarge(c));
        }
        Ok(ColoredGraph {
            n: self.n,
            color_count,
            colors: colors.into_iter().map(Color).collect(),
            adj: self.adj.clone(),
        })
    }

    /// New graph with one extra node adjacent to exactly `neighbors`.
    pub fn with_attached_node(
        &self,
        neighbors: NodeSet,
        new_color: Color,
    ) -> Result<ColoredGraph, GraphError> {
        if self.n + 1 > MAX_NODES {
            return Err(GraphError::TooLarge(self.n + 1));
        }
        if !neighbors.is_subset(self.all_nodes()) {
            let bad = neighbors.difference(self.all_nodes()).first().unwrap();
            return Err(GraphError::InvalidNode(bad.0, self.n));
        }
        let mut colors: Vec<usize> = self.colors.iter().map(|c| c.0).collect();
        colors.push(new_color.0);
        let mut edges = self.edges();
        for v in neighbors.iter() {
            edges.push((v.0, self.n));
        }
        let color_count = self.color_count.max(new_color.0 + 1);
        ColoredGraph::with_color_count(self.n + 1, &edges, colors, color_count)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ColoredGraph, GraphError> {
        let text = fs::read_to_string(path)?;
        let file: GraphFile = serde_json::from_str(&text)?;
        file.into_graph()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), GraphError> {
        fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphFile::from_graph(self)).expect("graph serialization")
    }

    pub fn from_json(text: &str) -> Result<ColoredGraph, GraphError> {
        let file: GraphFile = serde_json::from_str(text)?;
        file.into_graph()
    }
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredGraph")
            .field("n", &self.n)
            .field("color_count", &self.color_count)
            .field("colors", &self.colors.iter().map(|c| c.0).collect::<Vec<_>>())
            .field("edges", &self.edges())
            .finish()
    }
}

/// On-disk graph format. `color_count` is optional on input (defaulting to
/// the largest used color plus one) so that unused colors stay representable.
#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    color_count: Option<usize>,
    colors: Vec<usize>,
    edges: Vec<[usize; 2]>,
}

impl GraphFile {
    fn from_graph(g: &ColoredGraph) -> GraphFile {
        GraphFile {
            n: g.n,
            color_count: Some(g.color_count),
            colors: g.colors.iter().map(|c| c.0).collect(),
            edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    fn into_graph(self) -> Result<ColoredGraph, GraphError> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        match self.color_count {
            Some(cc) => ColoredGraph::with_color_count(self.n, &edges, self.colors, cc),
            None => ColoredGraph::new(self.n, &edges, self.colors),
        }
    }
}

impl Serialize for ColoredGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphFile::from_graph(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ColoredGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = GraphFile::deserialize(deserializer)?;
        file.into_graph().map_err(serde::de::Error::custom)
    }
}

/// Rainbow K5: the smallest mono-chromatic robust graph, also the seed of
/// the constructive growth recipe.
pub fn k5_rainbow() -> ColoredGraph {
    ColoredGraph::complete(5, vec![0, 1, 2, 3, 4]).unwrap()
}
