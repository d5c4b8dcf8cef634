//! Exact quadratic-time HDBSCAN over planar points.
//!
//! Pipeline: core distances, mutual reachability, Prim MST, single-linkage
//! hierarchy (ties merged together so the result does not depend on input
//! order), condensed tree, excess-of-mass selection with an epsilon floor.
//! Selection follows the reference `hdbscan` package with
//! `allow_single_cluster = true`.

use std::collections::BTreeSet;

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MIN_DISTANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HdbscanParams {
    pub min_cluster_size: usize,
    pub min_samples: usize,
    pub epsilon: f64,
}

impl HdbscanParams {
    pub fn validate(&self) -> Result<()> {
        if self.min_cluster_size < 2 {
            return Err(Error::InvalidInput("min_cluster_size must be at least 2".into()));
        }
        if self.min_samples < 1 {
            return Err(Error::InvalidInput("min_samples must be at least 1".into()));
        }
        if !(self.epsilon >= 0.0) || !self.epsilon.is_finite() {
            return Err(Error::InvalidInput("epsilon must be finite and non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterResult {
    /// Cluster index per input point; `None` is noise.
    pub labels: Vec<Option<usize>>,
    pub clusters: Vec<Vec<usize>>,
    pub centroids: Vec<Vector2<f64>>,
}

impl ClusterResult {
    pub fn noise(&self) -> Vec<usize> {
        (0..self.labels.len()).filter(|&i| self.labels[i].is_none()).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.clusters.iter().map(Vec::len).collect()
    }
}

fn dist(a: &Vector2<f64>, b: &Vector2<f64>) -> f64 {
    (a - b).norm()
}

/// Distance to the `k`-th nearest point, counting the point itself.
pub fn core_distances(points: &[Vector2<f64>], k: usize) -> Vec<f64> {
    let k = k.clamp(1, points.len());
    points
        .iter()
        .map(|p| {
            let mut d: Vec<f64> = points.iter().map(|q| dist(p, q)).collect();
            d.sort_by(f64::total_cmp);
            d[k - 1]
        })
        .collect()
}

pub fn mutual_reachability(points: &[Vector2<f64>], core: &[f64]) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = dist(&points[i], &points[j]).max(core[i]).max(core[j]);
            m[i][j] = d;
            m[j][i] = d;
        }
    }
    m
}

/// Prim's algorithm on a dense symmetric matrix; returns `n - 1` edges.
pub fn minimum_spanning_tree(weights: &[Vec<f64>]) -> Vec<(usize, usize, f64)> {
    let n = weights.len();
    if n == 0 {
        return Vec::new();
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut from = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    in_tree[0] = true;
    for j in 1..n {
        best[j] = weights[0][j];
    }
    for _ in 1..n {
        let mut next = usize::MAX;
        for j in 0..n {
            if !in_tree[j] && (next == usize::MAX || best[j] < best[next]) {
                next = j;
            }
        }
        in_tree[next] = true;
        edges.push((from[next], next, best[next]));
        for j in 0..n {
            if !in_tree[j] && weights[next][j] < best[j] {
                best[j] = weights[next][j];
                from[j] = next;
            }
        }
    }
    edges
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Dendrogram node; ids below the point count are leaves.
struct Merge {
    children: Vec<usize>,
    distance: f64,
    size: usize,
}

fn single_linkage(n: usize, mut edges: Vec<(usize, usize, f64)>) -> Vec<Merge> {
    edges.sort_by(|a, b| a.2.total_cmp(&b.2));
    // node id currently representing each point's component
    let mut comp = DisjointSet::new(n);
    let mut node_of_root: Vec<usize> = (0..n).collect();
    let mut size_of = vec![1usize; n];
    let mut merges = Vec::new();
    let mut i = 0;
    while i < edges.len() {
        let w = edges[i].2;
        let mut j = i;
        while j < edges.len() && edges[j].2 == w {
            j += 1;
        }
        // Components joined by this weight level, keyed by their new root.
        let before: Vec<(usize, usize)> = edges[i..j]
            .iter()
            .flat_map(|&(a, b, _)| [a, b])
            .map(|p| (p, comp.find(p)))
            .collect();
        for &(a, b, _) in &edges[i..j] {
            comp.union(a, b);
        }
        let mut groups: std::collections::BTreeMap<usize, BTreeSet<usize>> = Default::default();
        for (p, old_root) in before {
            groups.entry(comp.find(p)).or_default().insert(old_root);
        }
        for (new_root, old_roots) in groups {
            let children: Vec<usize> = old_roots.iter().map(|&r| node_of_root[r]).collect();
            let size = old_roots.iter().map(|&r| size_of[r]).sum();
            let id = n + merges.len();
            merges.push(Merge {
                children,
                distance: w,
                size,
            });
            node_of_root[new_root] = id;
            size_of[new_root] = size;
        }
        i = j;
    }
    merges
}

#[derive(Debug, Clone, Copy)]
struct CondensedEdge {
    parent: usize,
    /// Point index, or cluster id offset by the point count.
    child: usize,
    lambda: f64,
    size: usize,
}

struct CondensedTree {
    edges: Vec<CondensedEdge>,
    cluster_count: usize,
    birth: Vec<f64>,
    parent: Vec<Option<usize>>,
}

fn lambda_of(d: f64) -> f64 {
    1.0 / d.max(MIN_DISTANCE)
}

fn condense(n: usize, merges: &[Merge], min_cluster_size: usize) -> CondensedTree {
    let node_size = |id: usize| if id < n { 1 } else { merges[id - n].size };
    let mut tree = CondensedTree {
        edges: Vec::new(),
        cluster_count: 1,
        birth: vec![0.0],
        parent: vec![None],
    };
    if n == 1 {
        tree.edges.push(CondensedEdge {
            parent: 0,
            child: 0,
            lambda: f64::INFINITY,
            size: 1,
        });
        return tree;
    }
    let root = n + merges.len() - 1;
    // (dendrogram node, owning cluster)
    let mut stack = vec![(root, 0usize)];
    while let Some((node, cluster)) = stack.pop() {
        if node < n {
            tree.edges.push(CondensedEdge {
                parent: cluster,
                child: node,
                lambda: f64::INFINITY,
                size: 1,
            });
            continue;
        }
        let m = &merges[node - n];
        let lambda = lambda_of(m.distance);
        let big: Vec<usize> = m
            .children
            .iter()
            .copied()
            .filter(|&c| node_size(c) >= min_cluster_size)
            .collect();
        for &c in m.children.iter().filter(|&&c| node_size(c) < min_cluster_size) {
            for p in leaves(n, merges, c) {
                tree.edges.push(CondensedEdge {
                    parent: cluster,
                    child: p,
                    lambda,
                    size: 1,
                });
            }
        }
        if big.len() == 1 {
            stack.push((big[0], cluster));
        } else {
            for c in big {
                let id = tree.cluster_count;
                tree.cluster_count += 1;
                tree.birth.push(lambda);
                tree.parent.push(Some(cluster));
                tree.edges.push(CondensedEdge {
                    parent: cluster,
                    child: n + id,
                    lambda,
                    size: node_size(c),
                });
                stack.push((c, id));
            }
        }
    }
    tree
}

fn leaves(n: usize, merges: &[Merge], node: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![node];
    while let Some(x) = stack.pop() {
        if x < n {
            out.push(x);
        } else {
            stack.extend(merges[x - n].children.iter().copied());
        }
    }
    out
}

fn is_descendant(tree: &CondensedTree, mut c: usize, ancestor: usize) -> bool {
    while let Some(p) = tree.parent[c] {
        if p == ancestor {
            return true;
        }
        c = p;
    }
    false
}

fn sorted_sum(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    v.iter().sum()
}

fn select_clusters(n: usize, tree: &CondensedTree, epsilon: f64) -> BTreeSet<usize> {
    let k = tree.cluster_count;
    // Terms are summed in sorted order so the totals do not depend on input order.
    let mut terms: Vec<Vec<f64>> = vec![Vec::new(); k];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); k];
    for e in &tree.edges {
        let lambda = if e.lambda.is_finite() { e.lambda } else { 1.0 / MIN_DISTANCE };
        terms[e.parent].push((lambda - tree.birth[e.parent]) * e.size as f64);
        if e.child >= n {
            children[e.parent].push(e.child - n);
        }
    }
    let mut stability: Vec<f64> = terms.iter_mut().map(|t| sorted_sum(t)).collect();
    // Children always have larger ids than their parents.
    let mut selected = vec![false; k];
    for c in (0..k).rev() {
        let mut sub: Vec<f64> = children[c].iter().map(|&s| stability[s]).collect();
        let subtree = sorted_sum(&mut sub);
        if subtree > stability[c] {
            stability[c] = subtree;
        } else {
            selected[c] = true;
            let mut stack = children[c].clone();
            while let Some(s) = stack.pop() {
                selected[s] = false;
                stack.extend(children[s].iter().copied());
            }
        }
    }
    let eom: BTreeSet<usize> = (0..k).filter(|&c| selected[c]).collect();
    if epsilon == 0.0 || k == 1 || (eom.len() == 1 && eom.contains(&0)) {
        return eom;
    }
    let eps_of = |c: usize| 1.0 / tree.birth[c];
    let mut out = BTreeSet::new();
    let mut processed = BTreeSet::new();
    for &leaf in &eom {
        if eps_of(leaf) < epsilon {
            if processed.contains(&leaf) {
                continue;
            }
            let mut c = leaf;
            let chosen = loop {
                let p = tree.parent[c].expect("non-root cluster");
                if p == 0 || eps_of(p) > epsilon {
                    break p;
                }
                c = p;
            };
            out.insert(chosen);
            processed.extend((0..k).filter(|&s| is_descendant(tree, s, chosen)));
        } else {
            out.insert(leaf);
        }
    }
    let nested: Vec<usize> = out
        .iter()
        .copied()
        .filter(|&c| out.iter().any(|&a| a != c && is_descendant(tree, c, a)))
        .collect();
    for c in nested {
        out.remove(&c);
    }
    out
}

/// Runs the full pipeline on ground positions.
pub fn hdbscan_cluster(points: &[Vector2<f64>], params: &HdbscanParams) -> Result<ClusterResult> {
    params.validate()?;
    if points.is_empty() {
        return Err(Error::InvalidInput("cannot cluster an empty point set".into()));
    }
    if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(Error::InvalidInput("non-finite point".into()));
    }
    let n = points.len();
    if n < params.min_cluster_size {
        return Ok(ClusterResult {
            labels: vec![None; n],
            clusters: Vec::new(),
            centroids: Vec::new(),
        });
    }
    let core = core_distances(points, params.min_samples);
    let mst = minimum_spanning_tree(&mutual_reachability(points, &core));
    let merges = single_linkage(n, mst);
    let tree = condense(n, &merges, params.min_cluster_size);
    let selected = select_clusters(n, &tree, params.epsilon);

    let mut raw_label: Vec<Option<usize>> = vec![None; n];
    let root_max_lambda = tree
        .edges
        .iter()
        .filter(|e| e.parent == 0)
        .map(|e| e.lambda)
        .fold(0.0, f64::max);
    for e in tree.edges.iter().filter(|e| e.child < n) {
        let mut c = e.parent;
        let owner = loop {
            if selected.contains(&c) {
                break Some(c);
            }
            match tree.parent[c] {
                Some(p) => c = p,
                None => break None,
            }
        };
        raw_label[e.child] = match owner {
            Some(0) => {
                let keep = if params.epsilon > 0.0 {
                    e.lambda >= 1.0 / params.epsilon
                } else {
                    e.lambda >= root_max_lambda
                };
                keep.then_some(0)
            }
            other => other,
        };
    }

    // Renumber by smallest member index so labels are order-canonical.
    let mut order: Vec<usize> = Vec::new();
    for l in raw_label.iter().flatten() {
        if !order.contains(l) {
            order.push(*l);
        }
    }
    let labels: Vec<Option<usize>> = raw_label
        .iter()
        .map(|l| l.map(|c| order.iter().position(|&o| o == c).unwrap()))
        .collect();
    let mut clusters = vec![Vec::new(); order.len()];
    for (i, l) in labels.iter().enumerate() {
        if let Some(c) = l {
            clusters[*c].push(i);
        }
    }
    let centroids = clusters
        .iter()
        .map(|m| m.iter().map(|&i| points[i]).sum::<Vector2<f64>>() / m.len() as f64)
        .collect();
    Ok(ClusterResult {
        labels,
        clusters,
        centroids,
    })
}
