use std::collections::VecDeque;

use crate::plane::ProjectivePlane;

/// A bipartite graph with `left` and `right` vertex classes; `adj[i]` lists
/// the right neighbours of left vertex `i`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    pub adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, mut adj: Vec<Vec<usize>>) -> Self {
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        BipartiteGraph { left, right, adj }
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    /// Right neighbours of the left vertices, transposed.
    pub fn right_adj(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.right];
        for (i, a) in self.adj.iter().enumerate() {
            for &j in a {
                out[j].push(i);
            }
        }
        out
    }

    /// Adjacency lists on `left + right` vertices, right vertices offset by
    /// `left`.
    pub fn undirected(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.left + self.right];
        for (i, a) in self.adj.iter().enumerate() {
            for &j in a {
                out[i].push(self.left + j);
                out[self.left + j].push(i);
            }
        }
        out
    }

    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        (
            self.adj.iter().map(Vec::len).collect(),
            self.right_adj().iter().map(Vec::len).collect(),
        )
    }
}

/// Points on the left, lines on the right.
pub fn incidence_graph(plane: &ProjectivePlane) -> BipartiteGraph {
    let adj = plane
        .points()
        .map(|p| plane.lines_through(p).iter().map(|l| l.index()).collect())
        .collect();
    BipartiteGraph::new(plane.num_points(), plane.num_lines(), adj)
}

/// Length of a shortest cycle, or `None` for a forest.
pub fn girth(g: &BipartiteGraph) -> Option<usize> {
    let adj = g.undirected();
    let mut best: Option<usize> = None;
    for s in 0..adj.len() {
        let mut dist = vec![usize::MAX; adj.len()];
        let mut parent = vec![usize::MAX; adj.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Side-preserving isomorphism test by backtracking, with vertices of `a`
/// mapped in breadth-first order and candidates filtered by degree and by
/// adjacency to the already mapped vertices.
pub fn is_isomorphic(a: &BipartiteGraph, b: &BipartiteGraph) -> bool {
    if a.left != b.left || a.right != b.right || a.num_edges() != b.num_edges() {
        return false;
    }
    let (mut da_l, mut da_r) = a.degrees();
    let (mut db_l, mut db_r) = b.degrees();
    let (dal, dar) = (da_l.clone(), da_r.clone());
    let (dbl, dbr) = (db_l.clone(), db_r.clone());
    da_l.sort_unstable();
    da_r.sort_unstable();
    db_l.sort_unstable();
    db_r.sort_unstable();
    if da_l != db_l || da_r != db_r {
        return false;
    }
    let ua = a.undirected();
    let ub = b.undirected();
    let n = ua.len();
    let deg_a: Vec<usize> = dal.iter().chain(&dar).copied().collect();
    let deg_b: Vec<usize> = dbl.iter().chain(&dbr).copied().collect();
    let side = |v: usize, left: usize| v >= left;

    // BFS order over every component of `a`.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in &ua[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let b_adj: Vec<Vec<bool>> = (0..n)
        .map(|u| {
            let mut row = vec![false; n];
            for &w in &ub[u] {
                row[w] = true;
            }
            row
        })
        .collect();

    struct Search<'s> {
        order: &'s [usize],
        ua: &'s [Vec<usize>],
        b_adj: &'s [Vec<bool>],
        deg_a: &'s [usize],
        deg_b: &'s [usize],
        left: usize,
        map: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn extend(&mut self, k: usize, side: &dyn Fn(usize, usize) -> bool) -> bool {
            let Some(&u) = self.order.get(k) else {
                return true;
            };
            let n = self.map.len();
            for v in 0..n {
                if self.used[v]
                    || side(u, self.left) != side(v, self.left)
                    || self.deg_a[u] != self.deg_b[v]
                {
                    continue;
                }
                // Adjacency to mapped vertices must be preserved both ways.
                let consistent = (0..k).all(|i| {
                    let w = self.order[i];
                    let adj_a = self.ua[u].contains(&w);
                    adj_a == self.b_adj[v][self.map[w]]
                });
                if !consistent {
                    continue;
                }
                self.map[u] = v;
                self.used[v] = true;
                if self.extend(k + 1, side) {
                    return true;
                }
                self.used[v] = false;
                self.map[u] = usize::MAX;
            }
            false
        }
    }

    let mut search = Search {
        order: &order,
        ua: &ua,
        b_adj: &b_adj,
        deg_a: &deg_a,
        deg_b: &deg_b,
        left: a.left,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    search.extend(0, &side)
}
