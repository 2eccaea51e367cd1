use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::{MetricError, PathCriterion};
use crate::network::{Adjacency, Network, NodeId};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Path {
    pub nodes: Vec<NodeId>,
    /// Under the criterion the path was computed with.
    pub length: f64,
}

impl Path {
    pub fn from(&self) -> &NodeId {
        &self.nodes[0]
    }

    pub fn to(&self) -> &NodeId {
        self.nodes.last().expect("paths are never empty")
    }

    pub fn hops(&self) -> usize {
        self.nodes.len() - 1
    }
}

/// Every path-based metric from one all-sources pass.
#[derive(Debug, Clone, PartialEq)]
pub struct PathAnalysis {
    pub criterion: PathCriterion,
    /// Farthest finite distance per node; 0 for nodes that reach nothing.
    pub eccentricity: Vec<f64>,
    pub diameter: f64,
    /// A pair at diameter distance, smallest `(from, to)` first; `None` without edges.
    pub diameter_path: Option<Path>,
    /// `None` when no pair of distinct nodes is connected.
    pub average_path_length: Option<f64>,
    /// Fraction of shortest paths through each node, over pairs not involving it.
    pub betweenness: Vec<f64>,
    /// Longest shortest paths, descending, ties by `(from, to)`.
    pub longest: Vec<Path>,
    /// Ordered pairs `s != t` with no path, counted once per unordered pair when undirected.
    pub unreachable_pairs: usize,
}

impl PathAnalysis {
    pub fn warnings(&self) -> Vec<String> {
        if self.unreachable_pairs == 0 {
            return Vec::new();
        }
        vec![format!(
            "{} node pairs are not connected; they are excluded from eccentricity and average path length",
            self.unreachable_pairs
        )]
    }
}

fn close(a: f64, b: f64) -> bool {
    a.is_finite() && b.is_finite() && (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

fn check(net: &Network, criterion: PathCriterion) -> Result<bool, MetricError> {
    if criterion == PathCriterion::Time {
        return Err(MetricError::TimeCriterionUnsupported);
    }
    if !net.represents_paths() {
        return Err(MetricError::PathMetricNotApplicable);
    }
    Ok(criterion == PathCriterion::Weight)
}

#[derive(Clone, Copy, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Reusable single-source shortest path state.
struct Search {
    dist: Vec<f64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    settled: Vec<bool>,
    /// Nodes in the order they were settled (non-decreasing distance).
    order: Vec<usize>,
    queue: VecDeque<usize>,
    heap: BinaryHeap<Reverse<Entry>>,
}

impl Search {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![f64::INFINITY; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            settled: vec![false; n],
            order: Vec::with_capacity(n),
            queue: VecDeque::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn run(&mut self, adj: &Adjacency, source: usize, weighted: bool) {
        for &u in &self.order {
            self.dist[u] = f64::INFINITY;
            self.sigma[u] = 0.0;
            self.delta[u] = 0.0;
            self.settled[u] = false;
        }
        self.order.clear();
        self.dist[source] = 0.0;
        self.sigma[source] = 1.0;
        if weighted {
            self.dijkstra(adj, source)
        } else {
            self.bfs(adj, source)
        }
    }

    fn bfs(&mut self, adj: &Adjacency, source: usize) {
        self.queue.push_back(source);
        self.settled[source] = true;
        while let Some(u) = self.queue.pop_front() {
            self.order.push(u);
            let next = self.dist[u] + 1.0;
            for (v, _) in adj.neighbors(u) {
                if !self.settled[v] {
                    self.settled[v] = true;
                    self.dist[v] = next;
                    self.queue.push_back(v);
                }
                if self.dist[v] == next {
                    self.sigma[v] += self.sigma[u];
                }
            }
        }
    }

    fn dijkstra(&mut self, adj: &Adjacency, source: usize) {
        // Every node that gets a finite distance is eventually settled, so `order`
        // lists all the state `run` has to reset next time.
        self.heap.push(Reverse(Entry(0.0, source)));
        while let Some(Reverse(Entry(d, u))) = self.heap.pop() {
            if self.settled[u] || d > self.dist[u] {
                continue;
            }
            self.settled[u] = true;
            self.order.push(u);
            for (v, w) in adj.neighbors(u) {
                if self.settled[v] {
                    continue;
                }
                let nd = d + w;
                if close(nd, self.dist[v]) {
                    self.sigma[v] += self.sigma[u];
                } else if nd < self.dist[v] {
                    self.dist[v] = nd;
                    self.sigma[v] = self.sigma[u];
                    self.heap.push(Reverse(Entry(nd, v)));
                }
            }
        }
    }

    /// Brandes dependency accumulation; predecessors are found by rescanning in-arcs.
    fn accumulate(&mut self, incoming: &Adjacency, weighted: bool) {
        for &w in self.order.iter().rev() {
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for (v, weight) in incoming.neighbors(w) {
                let step = if weighted { weight } else { 1.0 };
                if self.dist[v].is_finite()
                    && self.dist[v] < self.dist[w]
                    && close(self.dist[v] + step, self.dist[w])
                {
                    self.delta[v] += self.sigma[v] * coeff;
                }
            }
        }
    }
}

/// Candidate for the longest-paths list: larger distance first, then smaller `(s, t)`.
#[derive(Clone, Copy, PartialEq)]
struct Far {
    dist: f64,
    s: usize,
    t: usize,
}

fn far_order(a: &Far, b: &Far) -> Ordering {
    b.dist.total_cmp(&a.dist).then((a.s, a.t).cmp(&(b.s, b.t)))
}

#[derive(Default)]
struct Partial {
    eccentricity: Vec<f64>,
    dependency: Vec<f64>,
    dist_sum: f64,
    pairs: usize,
    unreachable: usize,
    far: Vec<Far>,
}

fn chunk_size(n: usize) -> usize {
    32.max(n.div_ceil(256))
}

/// Lexicographically smallest shortest path from `s` to `t`, or `None` when unreachable.
fn witness(
    net: &Network,
    out: &Adjacency,
    incoming: &Adjacency,
    s: usize,
    t: usize,
    weighted: bool,
) -> Option<Path> {
    let mut back = Search::new(net.v());
    back.run(incoming, t, weighted);
    let to_t = &back.dist;
    if !to_t[s].is_finite() {
        return None;
    }
    let mut nodes = vec![s];
    let mut cur = s;
    while cur != t {
        cur = out
            .neighbors(cur)
            .find(|&(v, w)| {
                let step = if weighted { w } else { 1.0 };
                to_t[v] < to_t[cur] && close(step + to_t[v], to_t[cur])
            })
            .map(|(v, _)| v)
            .expect("a finite distance has a next hop");
        nodes.push(cur);
    }
    Some(Path {
        nodes: nodes.into_iter().map(|i| net.id(i).clone()).collect(),
        length: to_t[s],
    })
}

/// All path metrics in one pass over every source. Sources are processed in
/// fixed-size chunks and reduced in chunk order, so the result does not depend
/// on how many worker threads run.
pub fn analyze_paths(
    net: &Network,
    criterion: PathCriterion,
    k: usize,
) -> Result<PathAnalysis, MetricError> {
    let weighted = check(net, criterion)?;
    let n = net.v();
    let out = net.out_adjacency();
    let incoming = net.in_adjacency();
    let directed = net.is_directed();
    let keep = k.max(1);

    let chunks: Vec<(usize, usize)> = (0..n)
        .step_by(chunk_size(n).max(1))
        .map(|start| (start, (start + chunk_size(n)).min(n)))
        .collect();
    let partials: Vec<Partial> = chunks
        .par_iter()
        .map(|&(start, end)| {
            let mut search = Search::new(n);
            let mut p = Partial {
                dependency: vec![0.0; n],
                ..Partial::default()
            };
            for s in start..end {
                search.run(&out, s, weighted);
                let mut ecc = 0.0f64;
                let mut local: Vec<Far> = Vec::new();
                for t in 0..n {
                    if t == s {
                        continue;
                    }
                    let d = search.dist[t];
                    if !d.is_finite() {
                        if directed || t > s {
                            p.unreachable += 1;
                        }
                        continue;
                    }
                    ecc = ecc.max(d);
                    p.dist_sum += d;
                    p.pairs += 1;
                    if directed || t > s {
                        local.push(Far { dist: d, s, t });
                    }
                }
                p.eccentricity.push(ecc);
                local.sort_by(far_order);
                local.truncate(keep);
                p.far.extend(local);

                search.accumulate(&incoming, weighted);
                for &w in &search.order {
                    if w != s {
                        p.dependency[w] += search.delta[w];
                    }
                }
            }
            p.far.sort_by(far_order);
            p.far.truncate(keep);
            p
        })
        .collect();

    let mut eccentricity = Vec::with_capacity(n);
    let mut raw = vec![0.0; n];
    let (mut dist_sum, mut pairs, mut unreachable) = (0.0, 0usize, 0usize);
    let mut far = Vec::new();
    for p in partials {
        eccentricity.extend(p.eccentricity);
        for (acc, d) in raw.iter_mut().zip(&p.dependency) {
            *acc += d;
        }
        dist_sum += p.dist_sum;
        pairs += p.pairs;
        unreachable += p.unreachable;
        far.extend(p.far);
    }
    far.sort_by(far_order);
    far.truncate(keep);

    let betweenness = if n < 3 {
        vec![0.0; n]
    } else {
        let norm = ((n - 1) * (n - 2)) as f64;
        raw.into_iter().map(|b| b / norm).collect()
    };
    let longest: Vec<Path> = far
        .iter()
        .map(|f| witness(net, &out, &incoming, f.s, f.t, weighted).expect("finite pair"))
        .collect();
    let diameter = eccentricity.iter().copied().fold(0.0, f64::max);
    Ok(PathAnalysis {
        criterion,
        eccentricity,
        diameter,
        diameter_path: longest.first().cloned(),
        average_path_length: (pairs > 0).then(|| dist_sum / pairs as f64),
        betweenness,
        longest: longest.into_iter().take(k).collect(),
        unreachable_pairs: unreachable,
    })
}

fn index(net: &Network, id: &NodeId) -> Result<usize, MetricError> {
    net.index_of(id)
        .ok_or_else(|| MetricError::UnknownNode(id.clone()))
}

/// Shortest path from `from` to `to`; among equally short ones, the smallest node-id sequence.
pub fn shortest_path(
    net: &Network,
    from: &NodeId,
    to: &NodeId,
    criterion: PathCriterion,
) -> Result<Path, MetricError> {
    let weighted = check(net, criterion)?;
    let (s, t) = (index(net, from)?, index(net, to)?);
    witness(
        net,
        &net.out_adjacency(),
        &net.in_adjacency(),
        s,
        t,
        weighted,
    )
    .ok_or_else(|| MetricError::Unreachable(from.clone(), to.clone()))
}

pub fn eccentricity(
    net: &Network,
    node: &NodeId,
    criterion: PathCriterion,
) -> Result<f64, MetricError> {
    let weighted = check(net, criterion)?;
    let s = index(net, node)?;
    let mut search = Search::new(net.v());
    search.run(&net.out_adjacency(), s, weighted);
    Ok(search
        .dist
        .iter()
        .copied()
        .filter(|d| d.is_finite())
        .fold(0.0, f64::max))
}

/// Largest eccentricity with a witness path.
pub fn diameter(net: &Network, criterion: PathCriterion) -> Result<(f64, Path), MetricError> {
    let analysis = analyze_paths(net, criterion, 1)?;
    let path = analysis.diameter_path.ok_or(MetricError::EmptyEdgeSet)?;
    Ok((analysis.diameter, path))
}

pub fn average_path_length(net: &Network, criterion: PathCriterion) -> Result<f64, MetricError> {
    analyze_paths(net, criterion, 0)?
        .average_path_length
        .ok_or(MetricError::NoFinitePairs)
}

pub fn betweenness(net: &Network, criterion: PathCriterion) -> Result<Vec<f64>, MetricError> {
    Ok(analyze_paths(net, criterion, 0)?.betweenness)
}

pub fn top_k_longest_min_paths(
    net: &Network,
    k: usize,
    criterion: PathCriterion,
) -> Result<Vec<Path>, MetricError> {
    Ok(analyze_paths(net, criterion, k)?.longest)
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: PathCriterion = PathCriterion::Hops;

    fn net(n: usize, edges: &[(usize, usize, f64)]) -> Network {
        Network::from_index_edges(n, edges, false, true)
    }

    fn path_graph(n: usize) -> Network {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1.0)).collect();
        net(n, &edges)
    }

    fn k(n: usize) -> Network {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j, 1.0));
            }
        }
        net(n, &edges)
    }

    fn bridge() -> Network {
        net(
            6,
            &[
                (0, 1, 1.0),
                (1, 2, 1.0),
                (0, 2, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
                (3, 5, 1.0),
                (2, 3, 1.0),
            ],
        )
    }

    fn ids(p: &Path) -> Vec<i64> {
        p.nodes
            .iter()
            .map(|id| match id {
                NodeId::Int(i) => *i,
                NodeId::Text(_) => panic!("text id"),
            })
            .collect()
    }

    #[test]
    fn shortest_path_examples() {
        let p3 = path_graph(3);
        let p = shortest_path(&p3, &0.into(), &2.into(), H).unwrap();
        assert_eq!((ids(&p), p.length), (vec![0, 1, 2], 2.0));
        let p = shortest_path(&p3, &1.into(), &1.into(), H).unwrap();
        assert_eq!((ids(&p), p.length), (vec![1], 0.0));

        // a=0, b=1, c=2, d=3; a-b-c costs 4, a-d-c costs 2.
        let square = net(4, &[(0, 1, 2.0), (1, 2, 2.0), (2, 3, 1.0), (3, 0, 1.0)]);
        let p = shortest_path(&square, &0.into(), &2.into(), PathCriterion::Weight).unwrap();
        assert_eq!((ids(&p), p.length), (vec![0, 3, 2], 2.0));
        // By hops both routes tie; the smaller id sequence wins.
        assert_eq!(
            ids(&shortest_path(&square, &0.into(), &2.into(), H).unwrap()),
            [0, 1, 2]
        );
    }

    #[test]
    fn errors() {
        let bike = Network::from_index_edges(2, &[(0, 1, 1.0)], true, false);
        assert_eq!(
            analyze_paths(&bike, H, 1).unwrap_err(),
            MetricError::PathMetricNotApplicable
        );
        assert_eq!(
            analyze_paths(&path_graph(2), PathCriterion::Time, 1).unwrap_err(),
            MetricError::TimeCriterionUnsupported
        );
        let d = Network::from_index_edges(2, &[(0, 1, 1.0)], true, true);
        assert_eq!(
            shortest_path(&d, &1.into(), &0.into(), H).unwrap_err(),
            MetricError::Unreachable(1.into(), 0.into())
        );
        assert_eq!(
            average_path_length(&net(3, &[]), H).unwrap_err(),
            MetricError::NoFinitePairs
        );
    }

    #[test]
    fn eccentricity_examples() {
        assert_eq!(eccentricity(&path_graph(3), &0.into(), H).unwrap(), 2.0);
        assert_eq!(eccentricity(&path_graph(3), &1.into(), H).unwrap(), 1.0);
        assert_eq!(eccentricity(&k(4), &2.into(), H).unwrap(), 1.0);
    }

    #[test]
    fn diameter_examples() {
        let (d, p) = diameter(&path_graph(4), H).unwrap();
        assert_eq!((d, ids(&p)), (3.0, vec![0, 1, 2, 3]));
        assert_eq!(diameter(&k(4), H).unwrap().0, 1.0);
        assert_eq!(diameter(&bridge(), H).unwrap().0, 3.0);
    }

    #[test]
    fn average_path_length_examples() {
        assert!((average_path_length(&path_graph(3), H).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(average_path_length(&k(4), H).unwrap(), 1.0);
        let two = net(4, &[(0, 1, 1.0), (2, 3, 1.0)]);
        assert_eq!(average_path_length(&two, H).unwrap(), 1.0);
        assert_eq!(analyze_paths(&two, H, 1).unwrap().unreachable_pairs, 4);
        assert!((average_path_length(&bridge(), H).unwrap() - 1.8).abs() < 1e-15);
    }

    #[test]
    fn betweenness_examples() {
        assert_eq!(betweenness(&path_graph(3), H).unwrap(), [0.0, 1.0, 0.0]);
        assert_eq!(betweenness(&k(4), H).unwrap(), [0.0; 4]);
        let b = betweenness(&bridge(), H).unwrap();
        assert!((b[2] - 0.6).abs() < 1e-12 && (b[3] - 0.6).abs() < 1e-12);
        assert_eq!(betweenness(&path_graph(2), H).unwrap(), [0.0, 0.0]);
    }

    #[test]
    fn top_k_examples() {
        let top = top_k_longest_min_paths(&path_graph(4), 1, H).unwrap();
        assert_eq!(ids(&top[0]), [0, 1, 2, 3]);
        let top = top_k_longest_min_paths(&k(3), 3, H).unwrap();
        assert_eq!(top.len(), 3);
        assert!(top.iter().all(|p| p.length == 1.0));
        let top = top_k_longest_min_paths(&bridge(), 2, H).unwrap();
        assert_eq!(top.iter().map(|p| p.length).collect::<Vec<_>>(), [3.0, 3.0]);
        assert_eq!(ids(&top[0]), [0, 2, 3, 4]);
        assert_eq!(ids(&top[1]), [0, 2, 3, 5]);
    }

    #[test]
    fn directed_pairs_are_ordered() {
        let d = Network::from_index_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)], true, true);
        let a = analyze_paths(&d, H, 5).unwrap();
        assert_eq!(a.eccentricity, [2.0, 1.0, 0.0]);
        assert_eq!(a.betweenness, [0.0, 0.5, 0.0]);
        assert_eq!(a.unreachable_pairs, 3);
        assert_eq!(a.longest.len(), 3);
    }
}
