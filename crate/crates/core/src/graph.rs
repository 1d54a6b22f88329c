//! Undirected simple graphs, node feature matrices, and their text formats.
//!
//! Edge lists are whitespace-separated `u v` lines with 0-based ids; anything
//! after a `#` is ignored. Feature files hold one whitespace-separated row of
//! reals per node, in node order.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Undirected simple graph with sorted neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    n: usize,
    /// Canonical edges `(u, v)` with `u < v`, sorted and unique.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from unordered pairs. Reversed and repeated pairs
    /// collapse to a single edge; self-loops and out-of-range ids are errors.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::NodeOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Returns the graph with node `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                what: "permutation length",
                expected: self.n,
                actual: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n {
                return Err(Error::NodeOutOfRange { id: p, n: self.n });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::DuplicateNode(p));
            }
        }
        Graph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Component label per node; labels are assigned in order of the
    /// smallest node id in each component.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn num_components(&self) -> usize {
        self.components().0
    }

    /// A graph with at most one node is considered connected.
    pub fn is_connected(&self) -> bool {
        self.num_components() <= 1
    }

    pub(crate) fn check_node(&self, id: usize) -> Result<()> {
        if id < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { id, n: self.n })
        }
    }

    /// Canonical edge-list text: a comment header, then one `u v` line per
    /// edge with `u < v`, in sorted order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 * self.edges.len() + 32);
        let _ = writeln!(out, "# nodes {} edges {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn save_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_edge_list()).map_err(|e| Error::io(path, e))
    }
}

/// Parses edge-list text. `source` only labels error messages.
pub fn parse_edge_list(text: &str, n_override: Option<usize>, source: &Path) -> Result<Graph> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = line.split_whitespace();
        let Some(first) = tokens.next() else {
            continue;
        };
        let second = tokens
            .next()
            .ok_or_else(|| Error::parse(source, line_no, "expected two node ids"))?;
        if tokens.next().is_some() {
            return Err(Error::parse(
                source,
                line_no,
                "expected exactly two node ids",
            ));
        }
        let parse_id = |tok: &str| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(source, line_no, format!("invalid node id {tok:?}")))
        };
        let (u, v) = (parse_id(first)?, parse_id(second)?);
        if u == v {
            return Err(Error::parse(
                source,
                line_no,
                format!("self-loop on node {u}"),
            ));
        }
        if let Some(n) = n_override {
            if u.max(v) >= n {
                return Err(Error::parse(
                    source,
                    line_no,
                    format!("node id {} out of range for {n} nodes", u.max(v)),
                ));
            }
        }
        pairs.push((u, v));
    }
    let n =
        n_override.unwrap_or_else(|| pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, pairs)
}

pub fn load_edge_list(path: impl AsRef<Path>, n_override: Option<usize>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text, n_override, path)
}

/// Dense row-major `rows x cols` matrix of finite reals, one row per node.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl FeatureMatrix {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "feature values",
                expected: rows * cols,
                actual: values.len(),
            });
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(
                "feature matrix contains non-finite entries".into(),
            ));
        }
        Ok(FeatureMatrix { rows, cols, values })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                what: "feature row width",
                expected: cols,
                actual: rows[bad].len(),
            });
        }
        FeatureMatrix::new(rows.len(), cols, rows.concat())
    }

    /// `rows x cols` matrix with every row equal to `row`.
    pub fn constant(rows: usize, row: &[f64]) -> Result<Self> {
        let values = (0..rows).flat_map(|_| row.iter().copied()).collect();
        FeatureMatrix::new(rows, row.len(), values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// New matrix made of the given rows, in the given order.
    pub fn select_rows(&self, ids: &[usize]) -> Result<Self> {
        let mut values = Vec::with_capacity(ids.len() * self.cols);
        for &i in ids {
            if i >= self.rows {
                return Err(Error::NodeOutOfRange {
                    id: i,
                    n: self.rows,
                });
            }
            values.extend_from_slice(self.row(i));
        }
        Ok(FeatureMatrix {
            rows: ids.len(),
            cols: self.cols,
            values,
        })
    }

    /// Rows are written with Rust's shortest round-trip float formatting.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:?}")).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

pub fn parse_features(text: &str, n: usize, source: &Path) -> Result<FeatureMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut cols = None;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| match tok.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                _ => Err(Error::parse(
                    source,
                    line_no,
                    format!("invalid feature value {tok:?}"),
                )),
            })
            .collect::<Result<Vec<f64>>>()?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => {
                return Err(Error::parse(
                    source,
                    line_no,
                    format!("ragged row: expected {c} values, found {}", row.len()),
                ));
            }
            Some(_) => {}
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::parse(
            source,
            text.lines().count(),
            format!("expected {n} feature rows, found {}", rows.len()),
        ));
    }
    FeatureMatrix::new(rows.len(), cols.unwrap_or(0), rows.concat())
}

pub fn load_features(path: impl AsRef<Path>, n: usize) -> Result<FeatureMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_features(&text, n, path)
}

/// Counts the non-empty lines of a feature file, i.e. its node count.
pub fn count_feature_rows(path: impl AsRef<Path>) -> Result<usize> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text.lines().filter(|l| !l.trim().is_empty()).count())
}

/// A raw dataset re-indexed to dense ids `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Converted {
    pub graph: Graph,
    pub features: Option<FeatureMatrix>,
    /// Raw id of each dense node.
    pub ids: Vec<String>,
    /// Pairs naming an id absent from the content file.
    pub dropped_unknown: usize,
    pub dropped_self_loops: usize,
}

impl Converted {
    /// `dense raw` per line.
    pub fn mapping_text(&self) -> String {
        self.ids
            .iter()
            .enumerate()
            .map(|(k, id)| format!("{k}\t{id}\n"))
            .collect()
    }
}

/// Converts raw id pairs (the first two whitespace tokens of each line,
/// arbitrary strings) into a canonical graph.
///
/// With `content`, node order follows its rows: each row is a raw id, then
/// numeric features, then an optional non-numeric label which is discarded.
/// Pairs naming ids missing from the content are dropped. Without it, ids are
/// numbered in order of first appearance. Self-loops are always dropped.
pub fn convert_raw(pairs_text: &str, content: Option<&str>, source: &Path) -> Result<Converted> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut ids = Vec::new();
    let mut features = None;

    if let Some(text) = content {
        let mut rows = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let Some((&id, rest)) = tokens.split_first() else {
                continue;
            };
            let numeric = match rest.last() {
                Some(last) if last.parse::<f64>().is_err() => &rest[..rest.len() - 1],
                _ => rest,
            };
            let row = numeric
                .iter()
                .map(|tok| match tok.parse::<f64>() {
                    Ok(x) if x.is_finite() => Ok(x),
                    _ => Err(Error::parse(
                        source,
                        line_no,
                        format!("invalid feature value {tok:?}"),
                    )),
                })
                .collect::<Result<Vec<f64>>>()?;
            if index.insert(id.to_string(), ids.len()).is_some() {
                return Err(Error::parse(
                    source,
                    line_no,
                    format!("duplicate id {id:?} in content"),
                ));
            }
            if rows
                .first()
                .is_some_and(|r: &Vec<f64>| r.len() != row.len())
            {
                return Err(Error::parse(source, line_no, "ragged feature row"));
            }
            ids.push(id.to_string());
            rows.push(row);
        }
        features = Some(FeatureMatrix::from_rows(&rows)?);
    }

    let fixed = content.is_some();
    let mut pairs = Vec::new();
    let (mut dropped_unknown, mut dropped_self_loops) = (0, 0);
    for (idx, line) in pairs_text.lines().enumerate() {
        let mut tokens = line.split_whitespace();
        let Some(a) = tokens.next() else {
            continue;
        };
        let b = tokens
            .next()
            .ok_or_else(|| Error::parse(source, idx + 1, "expected two node ids"))?;
        if a == b {
            dropped_self_loops += 1;
            continue;
        }
        let mut lookup = |raw: &str| -> Option<usize> {
            if let Some(&k) = index.get(raw) {
                return Some(k);
            }
            if fixed {
                return None;
            }
            index.insert(raw.to_string(), ids.len());
            ids.push(raw.to_string());
            Some(ids.len() - 1)
        };
        match (lookup(a), lookup(b)) {
            (Some(u), Some(v)) => pairs.push((u, v)),
            _ => dropped_unknown += 1,
        }
    }
    Ok(Converted {
        graph: Graph::from_edges(ids.len(), pairs)?,
        features,
        ids,
        dropped_unknown,
        dropped_self_loops,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomModel {
    ErdosRenyi,
}

/// Seeded random graph. For Erdős–Rényi every pair `u < v` is visited in
/// lexicographic order and kept with probability `p`.
pub fn gen_random(model: RandomModel, n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        RandomModel::ErdosRenyi => {
            let mut pairs = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen::<f64>() < p {
                        pairs.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, pairs)
        }
    }
}

/// Symmetric boolean matrix over an ordered node subset, stored as sorted
/// row lists of subset positions. The diagonal is always false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachMatrix {
    rows: Vec<Vec<usize>>,
}

impl ReachMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].binary_search(&j).is_ok()
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    /// Unordered true pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn to_dense(&self) -> Vec<Vec<bool>> {
        let k = self.rows.len();
        let mut dense = vec![vec![false; k]; k];
        for (i, row) in self.rows.iter().enumerate() {
            for &j in row {
                dense[i][j] = true;
            }
        }
        dense
    }
}

/// Which pairs of `subset` are joined by a walk of length 2 or 3 in `g`.
///
/// Frontier expansion from each subset node: hop-2 nodes are the union of
/// neighbor lists of its neighbors, hop-3 nodes one more hop out. Work per
/// node is bounded by the sum of squared degrees around it.
pub fn walk_reachability(g: &Graph, subset: &[usize]) -> Result<ReachMatrix> {
    const NONE: usize = usize::MAX;
    let mut position = vec![NONE; g.n()];
    for (k, &v) in subset.iter().enumerate() {
        g.check_node(v)?;
        if position[v] != NONE {
            return Err(Error::DuplicateNode(v));
        }
        position[v] = k;
    }

    // stamp[x] == tag marks x as seen for the current source
    let mut hop2_stamp = vec![NONE; g.n()];
    let mut hit_stamp = vec![NONE; g.n()];
    let mut hop2 = Vec::new();
    let mut rows = Vec::with_capacity(subset.len());

    for (k, &u) in subset.iter().enumerate() {
        hop2.clear();
        let mut row = Vec::new();
        let mut hit = |x: usize, row: &mut Vec<usize>| {
            if x != u && position[x] != NONE && hit_stamp[x] != k {
                hit_stamp[x] = k;
                row.push(position[x]);
            }
        };
        for &a in g.neighbors(u) {
            for &b in g.neighbors(a) {
                if hop2_stamp[b] != k {
                    hop2_stamp[b] = k;
                    hop2.push(b);
                    hit(b, &mut row);
                }
            }
        }
        for &b in &hop2 {
            for &c in g.neighbors(b) {
                hit(c, &mut row);
            }
        }
        row.sort_unstable();
        rows.push(row);
    }
    Ok(ReachMatrix { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, n: Option<usize>) -> Result<Graph> {
        parse_edge_list(text, n, Path::new("test"))
    }

    #[test]
    fn parses_simple_edge_list() {
        let g = parse("0 1\n1 2", None).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn reversed_duplicate_collapses() {
        let g = parse("0 1\n1 0\n0 1\n", None).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = parse("# header\n\n0 3 # trailing\n  \n2 1\n", None).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), &[(0, 3), (1, 2)]);
    }

    #[test]
    fn override_adds_isolated_nodes() {
        let g = parse("0 1\n", Some(5)).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.degree(4), 0);
    }

    #[test]
    fn rejects_bad_lines_with_line_numbers() {
        let err = parse("0 1\n1 x\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse("0 1\n\n2\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse("0 1 2\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse("0 1\n4 4\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse("0 1\n1 7\n", Some(5)).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn from_edges_validates() {
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::NodeOutOfRange { id: 3, n: 3 })
        ));
        assert!(matches!(
            Graph::from_edges(3, [(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
    }

    #[test]
    fn features_parse_and_validate() {
        let x = parse_features("1.0 0.0\n1.0 0.0\n1.0 0.0\n", 3, Path::new("f")).unwrap();
        assert_eq!((x.rows(), x.cols()), (3, 2));
        assert_eq!(x.row(2), &[1.0, 0.0]);

        let empty = parse_features("", 0, Path::new("f")).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 0));

        let err = parse_features("1 2\n3\n", 2, Path::new("f")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_features("1 2\n3 y\n", 2, Path::new("f")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(parse_features("1 2\n", 2, Path::new("f")).is_err());
        assert!(parse_features("1 nan\n", 1, Path::new("f")).is_err());
    }

    #[test]
    fn feature_text_round_trips() {
        let x = FeatureMatrix::from_rows(&[vec![0.1, -2.5e-12], vec![3.0, 1.0 / 3.0]]).unwrap();
        let back = parse_features(&x.to_text(), 2, Path::new("f")).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn random_graph_extremes_and_determinism() {
        let g = gen_random(RandomModel::ErdosRenyi, 5, 0.0, 7).unwrap();
        assert_eq!((g.n(), g.num_edges()), (5, 0));
        let g = gen_random(RandomModel::ErdosRenyi, 5, 1.0, 7).unwrap();
        assert_eq!(g.num_edges(), 10);
        let a = gen_random(RandomModel::ErdosRenyi, 16, 0.5, 1).unwrap();
        let b = gen_random(RandomModel::ErdosRenyi, 16, 0.5, 1).unwrap();
        assert_eq!(a, b);
        assert!(gen_random(RandomModel::ErdosRenyi, 5, 1.5, 7).is_err());
        assert!(gen_random(RandomModel::ErdosRenyi, 5, -0.1, 7).is_err());
    }

    #[test]
    fn reachability_small_cases() {
        // path 0-1-2
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let r = walk_reachability(&path, &[0, 2]).unwrap();
        assert!(r.get(0, 1) && r.get(1, 0));
        assert!(!r.get(0, 0));

        let isolated = Graph::empty(2);
        let r = walk_reachability(&isolated, &[0, 1]).unwrap();
        assert!(!r.get(0, 1));

        let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = walk_reachability(&triangle, &[0, 1]).unwrap();
        assert!(r.get(0, 1));

        assert!(matches!(
            walk_reachability(&path, &[0, 3]),
            Err(Error::NodeOutOfRange { .. })
        ));
        assert!(matches!(
            walk_reachability(&path, &[0, 0]),
            Err(Error::DuplicateNode(0))
        ));
    }

    #[test]
    fn adjacent_pair_is_reachable_by_length_three_walk() {
        // u-v-u-v is a walk of length 3 whenever u and v are adjacent
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(walk_reachability(&g, &[0, 1]).unwrap().get(0, 1));
    }

    #[test]
    fn distance_four_is_not_reachable() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let r = walk_reachability(&g, &[0, 3, 4]).unwrap();
        assert!(r.get(0, 1));
        assert!(!r.get(0, 2));
    }

    #[test]
    fn relabel_and_components() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.num_components(), 2);
        let h = g.relabel(&[3, 2, 1, 0]).unwrap();
        assert_eq!(h.edges(), &[(0, 1), (2, 3)]);
        assert!(g.relabel(&[0, 0, 1, 2]).is_err());
        assert!(Graph::empty(1).is_connected());
        assert!(Graph::empty(0).is_connected());
    }

    #[test]
    fn convert_without_content_numbers_by_first_appearance() {
        let raw = "35\t1033\n35\t103482\n1033\t35\n7\t7\n";
        let c = convert_raw(raw, None, Path::new("cites")).unwrap();
        assert_eq!(c.ids, vec!["35", "1033", "103482"]);
        assert_eq!(c.graph.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(c.dropped_self_loops, 1);
        assert!(c.features.is_none());
        assert_eq!(c.mapping_text(), "0\t35\n1\t1033\n2\t103482\n");
    }

    #[test]
    fn convert_with_content_follows_row_order() {
        let content = "b 1 0 Theory\na 0 1 Theory\nc 1 1 Rule_Learning\n";
        let c = convert_raw("a b\nc a\na zz\n", Some(content), Path::new("x")).unwrap();
        assert_eq!(c.ids, vec!["b", "a", "c"]);
        assert_eq!(c.graph.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(c.dropped_unknown, 1);
        let x = c.features.unwrap();
        assert_eq!((x.rows(), x.cols()), (3, 2));
        assert_eq!(x.row(1), &[0.0, 1.0]);
        assert!(convert_raw("a\n", None, Path::new("x")).is_err());
        assert!(convert_raw("", Some("a 1\na 2\n"), Path::new("x")).is_err());
    }
}
