//! Brute-force reference computations for small graphs.
//!
//! Everything here is deliberately naive: simple-path enumeration, Floyd-Warshall
//! and exhaustive partition search. None of it shares code with `netboard-core`,
//! so the test suites can use it as an independent check of the optimized paths.
//!
//! Graphs are given as `n` plus a list of `(u, v, weight)` edges over `0..n`.

/// A small graph in edge-list form.
#[derive(Debug, Clone)]
pub struct SmallGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
    pub directed: bool,
}

impl SmallGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>, directed: bool) -> Self {
        Self { n, edges, directed }
    }

    pub fn unweighted(n: usize, edges: &[(usize, usize)], directed: bool) -> Self {
        Self::new(
            n,
            edges.iter().map(|&(u, v)| (u, v, 1.0)).collect(),
            directed,
        )
    }

    /// Arc list: both directions for undirected graphs.
    fn arcs(&self) -> Vec<(usize, usize, f64)> {
        let mut arcs = Vec::new();
        for &(u, v, w) in &self.edges {
            arcs.push((u, v, w));
            if !self.directed {
                arcs.push((v, u, w));
            }
        }
        arcs
    }

    fn arc_cost(&self, w: f64, weighted: bool) -> f64 {
        if weighted {
            w
        } else {
            1.0
        }
    }
}

/// All-pairs distances; `f64::INFINITY` marks unreachable pairs.
pub fn floyd_warshall(g: &SmallGraph, weighted: bool) -> Vec<Vec<f64>> {
    let n = g.n;
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (u, v, w) in g.arcs() {
        let c = g.arc_cost(w, weighted);
        if c < d[u][v] {
            d[u][v] = c;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let alt = d[i][k] + d[k][j];
                if alt < d[i][j] {
                    d[i][j] = alt;
                }
            }
        }
    }
    d
}

/// Every simple path from `s` to `t`, as node sequences.
pub fn simple_paths(g: &SmallGraph, s: usize, t: usize) -> Vec<(Vec<usize>, f64)> {
    fn dfs(
        adj: &[Vec<(usize, f64)>],
        t: usize,
        path: &mut Vec<usize>,
        cost: f64,
        seen: &mut [bool],
        out: &mut Vec<(Vec<usize>, f64)>,
    ) {
        let u = *path.last().unwrap();
        if u == t {
            out.push((path.clone(), cost));
            return;
        }
        for &(v, c) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                path.push(v);
                dfs(adj, t, path, cost + c, seen, out);
                path.pop();
                seen[v] = false;
            }
        }
    }
    let mut adj = vec![Vec::new(); g.n];
    for (u, v, w) in g.arcs() {
        adj[u].push((v, w));
    }
    let mut seen = vec![false; g.n];
    seen[s] = true;
    let mut out = Vec::new();
    let mut path = vec![s];
    dfs(&adj, t, &mut path, 0.0, &mut seen, &mut out);
    out
}

/// Shortest paths between `s` and `t` by enumeration of all simple paths.
pub fn all_shortest_paths(g: &SmallGraph, s: usize, t: usize, weighted: bool) -> Vec<Vec<usize>> {
    let costed: Vec<(Vec<usize>, f64)> = simple_paths(g, s, t)
        .into_iter()
        .map(|(p, c)| {
            let cost = if weighted { c } else { (p.len() - 1) as f64 };
            (p, cost)
        })
        .collect();
    let best = costed.iter().map(|(_, c)| *c).fold(f64::INFINITY, f64::min);
    costed
        .into_iter()
        .filter(|(_, c)| (*c - best).abs() < 1e-9)
        .map(|(p, _)| p)
        .collect()
}

/// Betweenness as the fraction of shortest paths through each node, averaged over
/// the (s, t) pairs not involving it. Ordered pairs for directed graphs, unordered otherwise.
pub fn betweenness(g: &SmallGraph, weighted: bool) -> Vec<f64> {
    let n = g.n;
    let mut bc = vec![0.0; n];
    if n < 3 {
        return bc;
    }
    for s in 0..n {
        for t in 0..n {
            if s == t || (!g.directed && t < s) {
                continue;
            }
            let paths = all_shortest_paths(g, s, t, weighted);
            if paths.is_empty() {
                continue;
            }
            let total = paths.len() as f64;
            for (v, b) in bc.iter_mut().enumerate() {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count() as f64;
                *b += through / total;
            }
        }
    }
    let pairs = if g.directed {
        ((n - 1) * (n - 2)) as f64
    } else {
        ((n - 1) * (n - 2) / 2) as f64
    };
    bc.iter().map(|b| b / pairs).collect()
}

/// Eccentricity per node over finite distances only.
pub fn eccentricities(dist: &[Vec<f64>]) -> Vec<f64> {
    dist.iter()
        .map(|row| {
            row.iter()
                .filter(|d| d.is_finite())
                .fold(0.0_f64, |a, &b| a.max(b))
        })
        .collect()
}

pub fn diameter(dist: &[Vec<f64>]) -> f64 {
    eccentricities(dist).into_iter().fold(0.0, f64::max)
}

/// Mean of finite distances over ordered pairs s != t, or `None` when there are none.
pub fn average_path_length(dist: &[Vec<f64>]) -> Option<f64> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for (i, row) in dist.iter().enumerate() {
        for (j, d) in row.iter().enumerate() {
            if i != j && d.is_finite() {
                sum += d;
                count += 1;
            }
        }
    }
    (count > 0).then(|| sum / count as f64)
}

/// Newman modularity computed straight from the definition
/// `Q = 1/(2m) * sum_ij (A_ij - k_i k_j / 2m) delta(c_i, c_j)` on the undirected view.
pub fn modularity(g: &SmallGraph, labels: &[usize]) -> f64 {
    let n = g.n;
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v, w) in &g.edges {
        if u == v {
            continue;
        }
        a[u][v] += w;
        a[v][u] += w;
    }
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Maximum modularity over every set partition of the nodes (restricted growth strings).
/// Feasible up to n = 10 or so.
pub fn max_modularity(g: &SmallGraph) -> (f64, Vec<usize>) {
    let n = g.n;
    let mut best = (f64::NEG_INFINITY, vec![0; n]);
    let mut labels = vec![0usize; n];
    fn rec(
        i: usize,
        used: usize,
        g: &SmallGraph,
        labels: &mut Vec<usize>,
        best: &mut (f64, Vec<usize>),
    ) {
        if i == labels.len() {
            let q = modularity(g, labels);
            if q > best.0 {
                *best = (q, labels.clone());
            }
            return;
        }
        for c in 0..=used {
            labels[i] = c;
            rec(
                i + 1,
                if c == used { used + 1 } else { used },
                g,
                labels,
                best,
            );
        }
    }
    if n == 0 {
        return (0.0, Vec::new());
    }
    labels[0] = 0;
    rec(1, 1, g, &mut labels, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_betweenness_middle_is_one() {
        let g = SmallGraph::unweighted(3, &[(0, 1), (1, 2)], false);
        assert_eq!(betweenness(&g, false), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn two_triangles_max_modularity() {
        let g = SmallGraph::unweighted(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
            false,
        );
        let (q, labels) = max_modularity(&g);
        assert!((q - 5.0 / 14.0).abs() < 1e-12);
        assert_eq!(labels, vec![0, 0, 0, 1, 1, 1]);
    }
}
