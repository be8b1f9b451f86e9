//! Folded core graphs of finitely generated subgroups of a free group.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use crate::words::{push_reduced, Letter, Word};

/// Incremental Stallings folding. Vertices are merged with union-find;
/// adjacency maps of merged vertices are combined and any label clash queues
/// a further merge.
#[derive(Clone, Debug)]
pub struct Folder {
    parent: Vec<usize>,
    adj: Vec<BTreeMap<Letter, usize>>,
}

impl Default for Folder {
    fn default() -> Self {
        Folder::new()
    }
}

impl Folder {
    pub fn new() -> Folder {
        Folder { parent: vec![0], adj: vec![BTreeMap::new()] }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn new_vertex(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.adj.push(BTreeMap::new());
        self.parent.len() - 1
    }

    /// Adds a loop at the basepoint reading `w` and folds.
    pub fn add_loop(&mut self, w: &Word) {
        if w.is_identity() {
            return;
        }
        let mut pending = Vec::new();
        let mut at = 0;
        let n = w.len();
        for (k, &l) in w.letters().iter().enumerate() {
            let next = if k + 1 == n { 0 } else { self.new_vertex() };
            self.link(at, l, next, &mut pending);
            at = next;
        }
        self.settle(pending);
    }

    fn link(&mut self, u: usize, l: Letter, v: usize, pending: &mut Vec<(usize, usize)>) {
        let (u, v) = (self.find(u), self.find(v));
        if let Some(&w) = self.adj[u].get(&l) {
            pending.push((v, w));
        } else if let Some(&x) = self.adj[v].get(&l.inverse()) {
            pending.push((u, x));
        } else {
            self.adj[u].insert(l, v);
            self.adj[v].insert(l.inverse(), u);
        }
    }

    fn settle(&mut self, mut pending: Vec<(usize, usize)>) {
        while let Some((a, b)) = pending.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, gone) = (a.min(b), a.max(b));
            self.parent[gone] = keep;
            let moved = std::mem::take(&mut self.adj[gone]);
            for (l, t) in moved {
                match self.adj[keep].get(&l) {
                    Some(&t2) => pending.push((t, t2)),
                    None => {
                        self.adj[keep].insert(l, t);
                    }
                }
            }
        }
    }

    /// Whether `w` reads a closed path at the basepoint of the current graph.
    pub fn contains(&mut self, w: &Word) -> bool {
        let mut at = self.find(0);
        for &l in w.letters() {
            match self.adj[at].get(&l) {
                Some(&t) => at = self.find(t),
                None => return false,
            }
        }
        at == self.find(0)
    }

    /// Prunes hanging trees and renumbers vertices by breadth-first search
    /// in letter order, so equal graphs are isomorphic graphs.
    pub fn finish(mut self) -> CoreGraph {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|v| self.find(v)).collect();
        let mut adj: Vec<BTreeMap<Letter, usize>> = vec![BTreeMap::new(); n];
        for v in 0..n {
            if roots[v] != v {
                continue;
            }
            for (&l, &t) in &self.adj[v] {
                adj[v].insert(l, roots[t]);
            }
        }
        let base = roots[0];
        let mut alive: Vec<bool> = (0..n).map(|v| roots[v] == v).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| alive[v] && v != base && adj[v].len() <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] || v == base || adj[v].len() > 1 {
                continue;
            }
            alive[v] = false;
            let edges = std::mem::take(&mut adj[v]);
            for (l, t) in edges {
                adj[t].remove(&l.inverse());
                if t != base && adj[t].len() <= 1 {
                    stack.push(t);
                }
            }
        }

        let mut number = vec![usize::MAX; n];
        let mut order = vec![base];
        number[base] = 0;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &t in adj[v].values() {
                if number[t] == usize::MAX {
                    number[t] = order.len();
                    order.push(t);
                }
            }
            i += 1;
        }
        let adj = order
            .iter()
            .map(|&v| adj[v].iter().map(|(&l, &t)| (l, number[t])).collect())
            .collect();
        CoreGraph { adj }
    }
}

/// A folded core graph with basepoint `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoreGraph {
    adj: Vec<BTreeMap<Letter, usize>>,
}

impl CoreGraph {
    /// Folds the wedge of loops spelling `generators`. Identity generators
    /// are skipped.
    pub fn build<'a, I: IntoIterator<Item = &'a Word>>(generators: I) -> CoreGraph {
        let mut f = Folder::new();
        for g in generators {
            f.add_loop(g);
        }
        f.finish()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Edges `(source, positive letter, target)`.
    pub fn edges(&self) -> Vec<(usize, Letter, usize)> {
        let mut out = Vec::new();
        for (v, m) in self.adj.iter().enumerate() {
            for (&l, &t) in m {
                if l.is_positive() {
                    out.push((v, l, t));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Rank of the subgroup: `E - V + 1`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn is_trivial(&self) -> bool {
        self.edge_count() == 0
    }

    pub fn contains(&self, w: &Word) -> bool {
        let mut at = 0;
        for &l in w.letters() {
            match self.adj[at].get(&l) {
                Some(&t) => at = t,
                None => return false,
            }
        }
        at == 0
    }

    /// Tree paths from the basepoint, found by BFS in letter order.
    fn tree(&self, skip_z: bool) -> (Vec<Option<(usize, Letter)>>, Vec<usize>) {
        let n = self.adj.len();
        let mut via: Vec<Option<(usize, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut order = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for (&l, &t) in &self.adj[v] {
                if (skip_z && l.is_z()) || seen[t] {
                    continue;
                }
                seen[t] = true;
                via[t] = Some((v, l));
                order.push(t);
                queue.push_back(t);
            }
        }
        (via, order)
    }

    fn path_to(via: &[Option<(usize, Letter)>], mut v: usize) -> Word {
        let mut rev = Vec::new();
        while let Some((p, l)) = via[v] {
            rev.push(l);
            v = p;
        }
        rev.reverse();
        Word::from_letters(rev)
    }

    /// Free basis read off a BFS spanning tree: one loop per non-tree edge.
    pub fn basis(&self) -> Vec<Word> {
        let (via, _) = self.tree(false);
        let mut out = Vec::new();
        for (u, l, v) in self.edges() {
            if via[v] == Some((u, l)) || via[u] == Some((v, l.inverse())) {
                continue;
            }
            let mut buf = Self::path_to(&via, u).into_letters();
            push_reduced(&mut buf, l);
            for &x in Self::path_to(&via, v).inverse().letters() {
                push_reduced(&mut buf, x);
            }
            out.push(Word::from_letters(buf));
        }
        out
    }

    /// Looks for a vertex with a `z`-loop reachable from the basepoint along
    /// `z`-free edges. Returns `g` such that `g⁻¹ z g` is in the subgroup,
    /// where `g⁻¹` labels a shortest such path (ties broken by letter order).
    pub fn find_z_conjugate(&self) -> Option<Word> {
        let (via, order) = self.tree(true);
        let z = Letter::z();
        let v = order.into_iter().find(|&v| self.adj[v].get(&z) == Some(&v))?;
        Some(Self::path_to(&via, v).inverse())
    }

    /// Graphviz rendering; one edge per positive letter.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph core {\n  0 [shape=doublecircle];\n");
        for (u, l, v) in self.edges() {
            let _ = writeln!(s, "  {u} -> {v} [label=\"{l}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Whether any generator contains the letter `z`.
pub fn involves_z<'a, I: IntoIterator<Item = &'a Word>>(generators: I) -> bool {
    generators.into_iter().any(Word::contains_z)
}
