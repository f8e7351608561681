use alloc::vec::Vec;

/// Disjoint sets over `0..n` with union by rank and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: alloc::vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            core::cmp::Ordering::Less => self.parent[ra] = rb,
            core::cmp::Ordering::Greater => self.parent[rb] = ra,
            core::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// True when the 1-based `edges` form a spanning tree on `vertex_count` vertices.
pub fn is_spanning_tree(vertex_count: usize, edges: &[(usize, usize)]) -> bool {
    if edges.len() + 1 != vertex_count {
        return false;
    }
    let mut uf = UnionFind::new(vertex_count);
    edges.iter().all(|&(u, v)| {
        u >= 1 && v >= 1 && u <= vertex_count && v <= vertex_count && uf.union(u - 1, v - 1)
    })
}
