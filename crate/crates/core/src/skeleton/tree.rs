//! Rooted tree with constant-time LCA (Euler tour and sparse table) and
//! logarithmic level-ancestor queries (binary lifting).

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    /// Label of the edge to the parent, as supplied by the caller.
    pub parent_edge: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    pub children: Vec<Vec<usize>>,
    first: Vec<usize>,
    euler: Vec<usize>,
    sparse: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
}

impl RootedTree {
    /// `edges` holds `(u, v, label)`; the graph must be a tree on `0..n`.
    pub fn new(n: usize, root: usize, edges: &[(usize, usize, usize)]) -> RootedTree {
        let mut adj = vec![Vec::new(); n];
        for &(u, v, l) in edges {
            adj[u].push((v, l));
            adj[v].push((u, l));
        }
        let mut parent = vec![None; n];
        let mut parent_edge = vec![None; n];
        let mut depth = vec![0; n];
        let mut children = vec![Vec::new(); n];
        let mut first = vec![usize::MAX; n];
        let mut euler = Vec::with_capacity(2 * n);

        let mut visited = vec![false; n];
        visited[root] = true;
        first[root] = 0;
        euler.push(root);
        let mut stack = vec![(root, 0usize)];
        while let Some((x, i)) = stack.last_mut() {
            let x = *x;
            if *i < adj[x].len() {
                let (y, l) = adj[x][*i];
                *i += 1;
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = Some(x);
                    parent_edge[y] = Some(l);
                    depth[y] = depth[x] + 1;
                    children[x].push(y);
                    first[y] = euler.len();
                    euler.push(y);
                    stack.push((y, 0));
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    euler.push(p);
                }
            }
        }
        assert!(visited.iter().all(|&v| v), "tree must be connected");

        let mut sparse = vec![euler.clone()];
        let mut width = 1;
        while 2 * width <= euler.len() {
            let prev = sparse.last().unwrap();
            let row = (0..=euler.len() - 2 * width)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + width]);
                    if depth[a] <= depth[b] {
                        a
                    } else {
                        b
                    }
                })
                .collect();
            sparse.push(row);
            width *= 2;
        }

        let levels = usize::BITS as usize - n.leading_zeros() as usize;
        let mut up = vec![(0..n).map(|v| parent[v].unwrap_or(v)).collect::<Vec<_>>()];
        for k in 1..levels.max(1) {
            let prev = &up[k - 1];
            up.push((0..n).map(|v| prev[prev[v]]).collect());
        }

        RootedTree { root, parent, parent_edge, depth, children, first, euler, sparse, up }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn lca(&self, a: usize, b: usize) -> usize {
        let (mut l, mut r) = (self.first[a], self.first[b]);
        if l > r {
            std::mem::swap(&mut l, &mut r);
        }
        let k = (usize::BITS - (r - l + 1).leading_zeros() - 1) as usize;
        let (x, y) = (self.sparse[k][l], self.sparse[k][r + 1 - (1 << k)]);
        if self.depth[x] <= self.depth[y] {
            x
        } else {
            y
        }
    }

    /// Ancestor of `v` at depth `d` (which must not exceed `depth[v]`).
    pub fn ancestor_at_depth(&self, v: usize, d: usize) -> usize {
        let mut diff = self.depth[v] - d;
        let mut x = v;
        let mut k = 0;
        while diff > 0 {
            if diff & 1 == 1 {
                x = self.up[k][x];
            }
            diff >>= 1;
            k += 1;
        }
        x
    }

    pub fn is_ancestor(&self, a: usize, v: usize) -> bool {
        self.depth[a] <= self.depth[v] && self.ancestor_at_depth(v, self.depth[a]) == a
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        self.depth[a] + self.depth[b] - 2 * self.depth[self.lca(a, b)]
    }

    /// Whether `x` lies on the path between `a` and `b`.
    pub fn on_path(&self, x: usize, a: usize, b: usize) -> bool {
        (self.is_ancestor(x, a) || self.is_ancestor(x, b)) && self.is_ancestor(self.lca(a, b), x)
    }

    /// Neighbour of `from` on the path to `to`; `None` when they coincide.
    pub fn step_toward(&self, from: usize, to: usize) -> Option<usize> {
        if from == to {
            None
        } else if self.is_ancestor(from, to) {
            Some(self.ancestor_at_depth(to, self.depth[from] + 1))
        } else {
            self.parent[from]
        }
    }

    /// Label of the tree edge between two adjacent vertices.
    pub fn edge_between(&self, a: usize, b: usize) -> usize {
        if self.parent[b] == Some(a) {
            self.parent_edge[b].expect("child has a parent edge")
        } else {
            debug_assert_eq!(self.parent[a], Some(b));
            self.parent_edge[a].expect("child has a parent edge")
        }
    }

    /// Vertices of the path from `a` to `b`, inclusive.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let c = self.lca(a, b);
        let mut left = Vec::new();
        let mut x = a;
        while x != c {
            left.push(x);
            x = self.parent[x].expect("below lca");
        }
        left.push(c);
        let mut right = Vec::new();
        let mut y = b;
        while y != c {
            right.push(y);
            y = self.parent[y].expect("below lca");
        }
        left.extend(right.into_iter().rev());
        left
    }

    /// Euler tour length, exposed for tests.
    pub fn euler_len(&self) -> usize {
        self.euler.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_lca(t: &RootedTree, mut a: usize, mut b: usize) -> usize {
        while t.depth[a] > t.depth[b] {
            a = t.parent[a].unwrap();
        }
        while t.depth[b] > t.depth[a] {
            b = t.parent[b].unwrap();
        }
        while a != b {
            a = t.parent[a].unwrap();
            b = t.parent[b].unwrap();
        }
        a
    }

    #[test]
    fn lca_matches_naive_on_a_caterpillar() {
        // 0-1-2-3-4 spine with leaves 5..9 hanging off the spine.
        let mut edges: Vec<(usize, usize, usize)> = (0..4).map(|i| (i, i + 1, i)).collect();
        for i in 0..5 {
            edges.push((i, i + 5, 10 + i));
        }
        for root in [0, 2, 7] {
            let t = RootedTree::new(10, root, &edges);
            assert_eq!(t.euler_len(), 19);
            for a in 0..10 {
                for b in 0..10 {
                    assert_eq!(t.lca(a, b), naive_lca(&t, a, b));
                    let p = t.path(a, b);
                    assert_eq!(p.len(), t.distance(a, b) + 1);
                    for x in 0..10 {
                        assert_eq!(t.on_path(x, a, b), p.contains(&x));
                    }
                    if a != b {
                        let s = t.step_toward(a, b).unwrap();
                        assert_eq!(s, p[1]);
                        let l = t.edge_between(a, s);
                        assert!(edges.iter().any(|&(u, v, ll)| ll == l && ((u, v) == (a, s) || (v, u) == (a, s))));
                    }
                }
            }
        }
    }

    #[test]
    fn single_vertex() {
        let t = RootedTree::new(1, 0, &[]);
        assert_eq!(t.lca(0, 0), 0);
        assert_eq!(t.step_toward(0, 0), None);
    }
}
