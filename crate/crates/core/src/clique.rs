//! Exact maximum clique by branch and bound with a greedy-colouring bound.
//! Graphs here are small (tens to a few hundred vertices).

#[derive(Debug, Clone)]
pub struct BitGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitGraph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn from_fn(n: usize, edge: impl Fn(usize, usize) -> bool) -> Self {
        let mut g = BitGraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i * self.words + j / 64] |= 1 << (j % 64);
        self.adj[j * self.words + i / 64] |= 1 << (i % 64);
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Size of a maximum clique.
    pub fn max_clique_size(&self) -> usize {
        self.max_clique().len()
    }

    /// One maximum clique, vertices ascending.
    pub fn max_clique(&self) -> Vec<usize> {
        if self.n == 0 {
            return Vec::new();
        }
        let mut cand = vec![0u64; self.words];
        for v in 0..self.n {
            cand[v / 64] |= 1 << (v % 64);
        }
        let mut best = Vec::new();
        let mut current = Vec::new();
        self.expand(&mut current, cand, &mut best);
        best.sort_unstable();
        best
    }

    fn expand(&self, current: &mut Vec<usize>, mut cand: Vec<u64>, best: &mut Vec<usize>) {
        let (order, colours) = self.colour_sort(&cand);
        for idx in (0..order.len()).rev() {
            if current.len() + colours[idx] <= best.len() {
                return;
            }
            let v = order[idx];
            current.push(v);
            let next: Vec<u64> = cand.iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if current.len() > best.len() {
                    *best = current.clone();
                }
            } else {
                self.expand(current, next, best);
            }
            current.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
    }

    // Greedy colouring of the candidate set. Returns vertices in colour
    // order and, for each, the number of colours used up to it.
    fn colour_sort(&self, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.to_vec();
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut colour = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = first_bit(&avail) {
                avail[v / 64] &= !(1 << (v % 64));
                for (a, b) in avail.iter_mut().zip(self.row(v)) {
                    *a &= !b;
                }
                uncoloured[v / 64] &= !(1 << (v % 64));
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(n: usize, edges: &[(usize, usize)]) -> usize {
        let adj = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
        (0u32..1 << n)
            .filter(|mask| {
                (0..n).all(|i| {
                    (i + 1..n).all(|j| mask & (1 << i) == 0 || mask & (1 << j) == 0 || adj(i, j))
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_graphs() {
        assert_eq!(BitGraph::new(0).max_clique_size(), 0);
        assert_eq!(BitGraph::new(3).max_clique_size(), 1);
        let tri = BitGraph::from_fn(4, |i, j| j < 3 || i == 3);
        assert_eq!(tri.max_clique(), vec![0, 1, 2]);
    }

    #[test]
    fn wide_graph_crosses_word_boundary() {
        let g = BitGraph::from_fn(130, |i, j| i % 2 == 0 && j % 2 == 0 && j < 20 || (i == 63 && j == 64));
        assert_eq!(g.max_clique_size(), 10);
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(n in 0usize..9, bits in proptest::collection::vec(any::<bool>(), 36)) {
            let mut edges = Vec::new();
            let mut it = bits.iter();
            for i in 0..n {
                for j in i + 1..n {
                    if *it.next().unwrap() {
                        edges.push((i, j));
                    }
                }
            }
            let g = BitGraph::from_fn(n, |a, b| edges.contains(&(a, b)));
            let clique = g.max_clique();
            prop_assert_eq!(clique.len(), brute(n, &edges));
            for (x, &a) in clique.iter().enumerate() {
                for &b in &clique[x + 1..] {
                    prop_assert!(edges.contains(&(a, b)));
                }
            }
        }
    }
}
