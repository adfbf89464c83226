//! Stallings graphs: finitely generated subgroups of a free group as folded,
//! based core graphs.
//!
//! A graph over an alphabet of rank `n` stores, for every vertex, one slot
//! per letter code (`2n` slots). An edge `p --x--> q` occupies slot `x` at
//! `p` and slot `x^-1` at `q`. After folding every slot holds at most one
//! target, so a graph is a partial deterministic automaton and membership is
//! a path walk from the base vertex (always vertex 0).

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Debug, Clone)]
pub struct SubgroupGraph {
    rank: usize,
    /// `adj[v][code]` is the endpoint of the edge leaving `v` with that letter.
    adj: Vec<Vec<Option<usize>>>,
    generators: Vec<Word>,
}

/// Two graphs are equal when they are label-isomorphic as based graphs.
/// Vertices are always numbered canonically, so this is plain structural
/// equality of adjacency tables.
impl PartialEq for SubgroupGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.adj == other.adj
    }
}

impl Eq for SubgroupGraph {}

struct Folder {
    parent: Vec<usize>,
    adj: Vec<BTreeMap<Letter, usize>>,
    pending: Vec<Pending>,
}

enum Pending {
    Edge(usize, Letter, usize),
    Merge(usize, usize),
}

impl Folder {
    fn new() -> Self {
        let mut f = Folder {
            parent: Vec::new(),
            adj: Vec::new(),
            pending: Vec::new(),
        };
        f.add_vertex();
        f
    }

    fn add_vertex(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.adj.push(BTreeMap::new());
        self.parent.len() - 1
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn add_edge(&mut self, from: usize, letter: Letter, to: usize) {
        self.pending.push(Pending::Edge(from, letter, to));
        self.drain();
    }

    fn attach(&mut self, from: usize, letter: Letter, to: usize) {
        match self.adj[from].get(&letter).copied() {
            Some(existing) => {
                let existing = self.find(existing);
                if existing != to {
                    self.pending.push(Pending::Merge(existing, to));
                }
            }
            None => {
                self.adj[from].insert(letter, to);
            }
        }
    }

    fn drain(&mut self) {
        while let Some(op) = self.pending.pop() {
            match op {
                Pending::Edge(a, l, b) => {
                    let a = self.find(a);
                    let b = self.find(b);
                    self.attach(a, l, b);
                    let a = self.find(a);
                    let b = self.find(b);
                    self.attach(b, l.inverse(), a);
                }
                Pending::Merge(x, y) => {
                    let x = self.find(x);
                    let y = self.find(y);
                    if x == y {
                        continue;
                    }
                    // Keep the smaller index as representative so the base stays 0.
                    let (keep, gone) = if x < y { (x, y) } else { (y, x) };
                    self.parent[gone] = keep;
                    let moved = std::mem::take(&mut self.adj[gone]);
                    for (l, target) in moved {
                        self.pending.push(Pending::Edge(keep, l, target));
                    }
                }
            }
        }
    }

    fn finish(mut self, rank: usize, generators: Vec<Word>) -> SubgroupGraph {
        let n = self.parent.len();
        let mut adj = vec![vec![None; 2 * rank]; n];
        for (v, row) in adj.iter_mut().enumerate() {
            if self.find(v) != v {
                continue;
            }
            let entries: Vec<(Letter, usize)> = self.adj[v].iter().map(|(l, t)| (*l, *t)).collect();
            for (l, t) in entries {
                row[l.code()] = Some(self.find(t));
            }
        }
        let alive: Vec<bool> = (0..n).map(|v| self.find(v) == v).collect();
        SubgroupGraph::from_raw(rank, adj, alive, generators)
    }
}

impl SubgroupGraph {
    /// Removes non-base vertices of degree at most one, then renumbers
    /// vertices canonically.
    fn from_raw(
        rank: usize,
        mut adj: Vec<Vec<Option<usize>>>,
        mut alive: Vec<bool>,
        generators: Vec<Word>,
    ) -> Self {
        let degree = |adj: &Vec<Vec<Option<usize>>>, v: usize| adj[v].iter().flatten().count();
        let mut queue: VecDeque<usize> = (1..adj.len())
            .filter(|&v| alive[v] && degree(&adj, v) <= 1)
            .collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] || degree(&adj, v) > 1 {
                continue;
            }
            alive[v] = false;
            for code in 0..2 * rank {
                if let Some(t) = adj[v][code].take() {
                    adj[t][code ^ 1] = None;
                    if t != 0 && alive[t] && degree(&adj, t) <= 1 {
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut g = SubgroupGraph {
            rank,
            adj,
            generators,
        };
        g.canonicalize_from(0);
        g
    }

    /// Renumbers the component of `base` by breadth-first search with
    /// letters visited in code order; `base` becomes vertex 0.
    fn canonicalize_from(&mut self, base: usize) {
        let mut order = vec![usize::MAX; self.adj.len()];
        let mut seq = vec![base];
        order[base] = 0;
        let mut i = 0;
        while i < seq.len() {
            let v = seq[i];
            for code in 0..2 * self.rank {
                if let Some(t) = self.adj[v][code] {
                    if order[t] == usize::MAX {
                        order[t] = seq.len();
                        seq.push(t);
                    }
                }
            }
            i += 1;
        }
        let adj = seq
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .map(|slot| slot.map(|t| order[t]))
                    .collect()
            })
            .collect();
        self.adj = adj;
    }

    /// Folded core graph of the subgroup generated by `words`.
    pub fn build(words: &[Word], alphabet: &Alphabet) -> Result<Self> {
        for w in words {
            if w.max_generator().is_some_and(|g| g >= alphabet.rank()) {
                return Err(Error::AlphabetMismatch(format!(
                    "word uses generator outside alphabet of rank {}",
                    alphabet.rank()
                )));
            }
        }
        Ok(Self::build_unchecked(words, alphabet.rank()))
    }

    pub(crate) fn build_unchecked(words: &[Word], rank: usize) -> Self {
        let mut folder = Folder::new();
        for w in words {
            if w.is_empty() {
                continue;
            }
            let letters = w.letters();
            let mut current = 0;
            for (i, &l) in letters.iter().enumerate() {
                let next = if i + 1 == letters.len() {
                    0
                } else {
                    folder.add_vertex()
                };
                folder.add_edge(current, l, next);
                current = next;
            }
        }
        folder.finish(rank, words.to_vec())
    }

    /// Folds an arbitrary labeled graph given as `(src, letter, dst)` edges.
    pub fn from_edges(
        rank: usize,
        vertex_count: usize,
        base: usize,
        edges: &[(usize, Letter, usize)],
    ) -> Result<Self> {
        if base >= vertex_count.max(1) {
            return Err(Error::Malformed(format!("base vertex {base} out of range")));
        }
        let mut folder = Folder::new();
        for _ in 1..vertex_count {
            folder.add_vertex();
        }
        for &(s, l, t) in edges {
            if s >= vertex_count || t >= vertex_count || l.generator() >= rank {
                return Err(Error::Malformed(format!(
                    "edge {s} {} {t} out of range",
                    l.code()
                )));
            }
            folder.add_edge(s, l, t);
        }
        // Move the requested base to vertex 0 before trimming.
        let mut g = folder.finish_unordered(rank, base);
        let basis = g.basis().1;
        g.generators = basis;
        Ok(g)
    }

    pub fn rank_of_alphabet(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of (positively oriented) edges.
    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|slots| slots.iter().step_by(2).flatten().count())
            .sum()
    }

    /// Canonical adjacency table, usable as a hash key.
    pub fn clone_adjacency(&self) -> Vec<Vec<Option<usize>>> {
        self.adj.clone()
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn target(&self, vertex: usize, letter: Letter) -> Option<usize> {
        self.adj[vertex][letter.code()]
    }

    /// Edges `(src, letter, dst)` with positive letters, in canonical order.
    pub fn edges(&self) -> Vec<(usize, Letter, usize)> {
        let mut out = Vec::new();
        for (v, slots) in self.adj.iter().enumerate() {
            for code in (0..2 * self.rank).step_by(2) {
                if let Some(t) = slots[code] {
                    out.push((v, Letter::from_code(code), t));
                }
            }
        }
        out
    }

    /// End vertex of the path labeled `w` from `start`, if the path exists.
    pub fn walk(&self, start: usize, w: &Word) -> Option<usize> {
        let mut v = start;
        for &l in w.letters() {
            if l.generator() >= self.rank {
                return None;
            }
            v = self.adj[v][l.code()]?;
        }
        Some(v)
    }

    /// Whether `w` lies in the subgroup.
    pub fn contains(&self, w: &Word) -> bool {
        self.walk(0, w) == Some(0)
    }

    /// Breadth-first spanning tree: for every vertex, the tree path from the base.
    fn tree_paths(&self) -> (Vec<Word>, Vec<Vec<bool>>) {
        let n = self.vertex_count();
        let mut path: Vec<Option<Word>> = vec![None; n];
        let mut in_tree = vec![vec![false; 2 * self.rank]; n];
        path[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for code in 0..2 * self.rank {
                if let Some(t) = self.adj[v][code] {
                    if path[t].is_none() {
                        let l = Letter::from_code(code);
                        path[t] = Some(path[v].as_ref().unwrap() * &Word::letter(l));
                        in_tree[v][code] = true;
                        in_tree[t][code ^ 1] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        (
            path.into_iter().map(|p| p.unwrap_or_default()).collect(),
            in_tree,
        )
    }

    /// Rank of the subgroup and a free basis read off the spanning-tree complement.
    pub fn basis(&self) -> (usize, Vec<Word>) {
        let (path, in_tree) = self.tree_paths();
        let mut basis = Vec::new();
        for (v, t, code) in self.non_tree_edges(&in_tree) {
            let l = Word::letter(Letter::from_code(code));
            basis.push(&(&path[v] * &l) * &path[t].inverse());
        }
        let rank = self.edge_count() + 1 - self.vertex_count();
        debug_assert_eq!(rank, basis.len());
        (rank, basis)
    }

    fn non_tree_edges(&self, in_tree: &[Vec<bool>]) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (v, slots) in self.adj.iter().enumerate() {
            for code in (0..2 * self.rank).step_by(2) {
                if let Some(t) = slots[code] {
                    if !in_tree[v][code] {
                        out.push((v, t, code));
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Rewrites a member `w` as a word in the basis returned by [`basis`],
    /// with basis element `i` as generator `i`.
    ///
    /// [`basis`]: SubgroupGraph::basis
    pub fn express(&self, w: &Word) -> Option<Word> {
        if !self.contains(w) {
            return None;
        }
        let (_, in_tree) = self.tree_paths();
        let index: BTreeMap<(usize, usize), usize> = self
            .non_tree_edges(&in_tree)
            .into_iter()
            .enumerate()
            .map(|(i, (v, _, code))| ((v, code), i))
            .collect();
        let mut v = 0;
        let mut out = Vec::new();
        for &l in w.letters() {
            let t = self.adj[v][l.code()]?;
            if !in_tree[v][l.code()] {
                if l.is_inverse() {
                    out.push(Letter::new(index[&(t, l.code() ^ 1)], true));
                } else {
                    out.push(Letter::new(index[&(v, l.code())], false));
                }
            }
            v = t;
        }
        Some(Word::from_letters(out))
    }

    /// Core graph of the conjugacy class: also trims a hanging base path.
    pub fn cyclic_core(&self) -> SubgroupGraph {
        let n = self.vertex_count();
        let mut adj = self.adj.clone();
        let mut alive = vec![true; n];
        let degree = |adj: &Vec<Vec<Option<usize>>>, v: usize| adj[v].iter().flatten().count();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree(&adj, v) <= 1).collect();
        let mut remaining = n;
        while let Some(v) = queue.pop_front() {
            if !alive[v] || degree(&adj, v) > 1 || remaining == 1 {
                continue;
            }
            alive[v] = false;
            remaining -= 1;
            for code in 0..2 * self.rank {
                if let Some(t) = adj[v][code].take() {
                    adj[t][code ^ 1] = None;
                    if alive[t] && degree(&adj, t) <= 1 {
                        queue.push_back(t);
                    }
                }
            }
        }
        let base = (0..n).find(|&v| alive[v]).unwrap_or(0);
        let mut keep = SubgroupGraph {
            rank: self.rank,
            adj,
            generators: self.generators.clone(),
        };
        // Least canonical numbering over all choices of base vertex.
        let mut best: Option<SubgroupGraph> = None;
        for start in (0..n).filter(|&v| alive[v]) {
            let mut candidate = keep.clone();
            candidate.canonicalize_from(start);
            if best.as_ref().is_none_or(|b| candidate.adj < b.adj) {
                best = Some(candidate);
            }
        }
        keep.canonicalize_from(base);
        best.unwrap_or(keep)
    }

    /// The fiber product of `self` and `other`, restricted to the component
    /// of the pair of base vertices and trimmed to its core.
    pub fn intersect(&self, other: &SubgroupGraph) -> Result<SubgroupGraph> {
        if self.rank != other.rank {
            return Err(Error::AlphabetMismatch(
                "graphs over different alphabets".into(),
            ));
        }
        let mut index = BTreeMap::new();
        let mut pairs = vec![(0, 0)];
        index.insert((0, 0), 0);
        let mut adj: Vec<Vec<Option<usize>>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let slots: Vec<Option<usize>> = (0..2 * self.rank)
                .map(|code| {
                    let (p2, q2) = (self.adj[p][code]?, other.adj[q][code]?);
                    Some(*index.entry((p2, q2)).or_insert_with(|| {
                        pairs.push((p2, q2));
                        pairs.len() - 1
                    }))
                })
                .collect();
            adj.push(slots);
            i += 1;
        }
        let alive = vec![true; adj.len()];
        let mut g = SubgroupGraph::from_raw(self.rank, adj, alive, Vec::new());
        g.generators = g.basis().1;
        Ok(g)
    }

    /// Whether the subgroup is malnormal: every component of the fiber
    /// product with itself other than the diagonal is a tree.
    pub fn is_malnormal(&self) -> bool {
        let n = self.vertex_count();
        let mut component = vec![usize::MAX; n * n];
        let id = |p: usize, q: usize| p * n + q;
        for start in 0..n * n {
            let (p0, q0) = (start / n, start % n);
            if p0 == q0 || component[start] != usize::MAX {
                continue;
            }
            // The diagonal is closed under edges, so off-diagonal components avoid it.
            let mut vertices = 0usize;
            let mut half_edges = 0usize;
            let mut stack = vec![(p0, q0)];
            component[start] = start;
            while let Some((p, q)) = stack.pop() {
                vertices += 1;
                for code in 0..2 * self.rank {
                    if let (Some(p2), Some(q2)) = (self.adj[p][code], self.adj[q][code]) {
                        half_edges += 1;
                        if component[id(p2, q2)] == usize::MAX {
                            component[id(p2, q2)] = start;
                            stack.push((p2, q2));
                        }
                    }
                }
            }
            if half_edges / 2 >= vertices {
                return false;
            }
        }
        true
    }

    /// Whether two graphs are label-isomorphic as based graphs.
    pub fn is_isomorphic(&self, other: &SubgroupGraph) -> bool {
        self == other
    }
}

impl Folder {
    fn finish_unordered(mut self, rank: usize, base: usize) -> SubgroupGraph {
        let base = self.find(base);
        let n = self.parent.len();
        // Swap the base into slot 0 by relabeling.
        let relabel = |v: usize| {
            if v == base {
                0
            } else if v == 0 {
                base
            } else {
                v
            }
        };
        let mut adj = vec![vec![None; 2 * rank]; n];
        let mut alive = vec![false; n];
        for v in 0..n {
            if self.find(v) != v {
                continue;
            }
            alive[relabel(v)] = true;
            let entries: Vec<(Letter, usize)> = self.adj[v].iter().map(|(l, t)| (*l, *t)).collect();
            for (l, t) in entries {
                let t = self.find(t);
                adj[relabel(v)][l.code()] = Some(relabel(t));
            }
        }
        // Drop components not containing the base.
        let mut reach = vec![false; n];
        let mut stack = vec![0];
        reach[0] = true;
        while let Some(v) = stack.pop() {
            for t in adj[v].iter().flatten() {
                if !reach[*t] {
                    reach[*t] = true;
                    stack.push(*t);
                }
            }
        }
        for v in 0..n {
            if !reach[v] {
                alive[v] = false;
                adj[v].iter_mut().for_each(|s| *s = None);
            }
        }
        SubgroupGraph::from_raw(rank, adj, alive, Vec::new())
    }
}

/// Writes the graph as `src label dst` lines, preceded by a `gens` line.
pub fn format_graph(graph: &SubgroupGraph, alphabet: &Alphabet) -> String {
    let mut out = format!("gens {alphabet}\n");
    for (s, l, t) in graph.edges() {
        out.push_str(&format!("{s} {} {t}\n", alphabet.name(l.generator())));
    }
    out
}

/// Reads an edge-list graph. Lines are `gens <names>` (optional when an
/// alphabet is supplied), `base <n>` (default 0), `src label dst`, blank or
/// `#` comments. A label may carry `^-1` to reverse the edge.
pub fn parse_graph(text: &str, alphabet: Option<&Alphabet>) -> Result<(Alphabet, SubgroupGraph)> {
    let mut declared: Option<Alphabet> = None;
    let mut base = 0usize;
    let mut raw_edges: Vec<(usize, String, usize)> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "gens" => declared = Some(Alphabet::new(fields[1..].iter().copied())?),
            "base" if fields.len() == 2 => {
                base = fields[1]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad base line `{line}`")))?
            }
            _ if fields.len() == 3 => {
                let parse_vertex = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad vertex `{s}` in `{line}`")))
                };
                raw_edges.push((
                    parse_vertex(fields[0])?,
                    fields[1].to_string(),
                    parse_vertex(fields[2])?,
                ));
            }
            _ => return Err(Error::Parse(format!("unrecognized graph line `{line}`"))),
        }
    }
    let alphabet = match (declared, alphabet) {
        (Some(a), _) => a,
        (None, Some(a)) => a.clone(),
        (None, None) => {
            let mut names: Vec<String> = Vec::new();
            for (_, label, _) in &raw_edges {
                let name = label.split('^').next().unwrap_or_default().to_string();
                if !names.contains(&name) {
                    names.push(name);
                }
            }
            Alphabet::new(names)?
        }
    };
    let mut edges = Vec::new();
    let mut vertex_count = base + 1;
    for (s, label, t) in raw_edges {
        let letters = alphabet.parse_letters(&label)?;
        if letters.len() != 1 {
            return Err(Error::Parse(format!(
                "edge label `{label}` must be a single letter"
            )));
        }
        vertex_count = vertex_count.max(s + 1).max(t + 1);
        edges.push((s, letters[0], t));
    }
    let graph = SubgroupGraph::from_edges(alphabet.rank(), vertex_count, base, &edges)?;
    Ok((alphabet, graph))
}

impl fmt::Display for SubgroupGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, l, t) in self.edges() {
            writeln!(f, "{s} g{} {t}", l.generator())?;
        }
        Ok(())
    }
}
