//! Reference model of a wiring diagram computed straight from the swap
//! word: faces are maximal time intervals of a gap between two adjacent
//! positions. Shares no code with the library's cell complex.

use std::collections::HashMap;

/// 0-based tracks of a word.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seg {
    pub wire: usize,
    /// First and last time of the segment.
    pub t0: usize,
    pub t1: usize,
    /// Face on the other side.
    pub neighbor: usize,
}

#[derive(Debug, Clone)]
pub struct OFace {
    /// Gap `g` lies between positions `g - 1` and `g`; `0` is the top
    /// region and `n` the bottom one.
    pub gap: usize,
    pub open: Option<usize>,
    pub close: Option<usize>,
    /// Any time at which the face exists.
    pub time: usize,
    pub upper: Vec<Seg>,
    pub lower: Vec<Seg>,
}

impl OFace {
    pub fn bounded(&self) -> bool {
        self.open.is_some() && self.close.is_some()
    }

    pub fn sides(&self) -> Option<usize> {
        self.bounded().then(|| self.upper.len() + self.lower.len())
    }

    /// Upper chain left to right, then lower chain right to left.
    pub fn walk(&self) -> Vec<&Seg> {
        self.upper.iter().chain(self.lower.iter().rev()).collect()
    }

    pub fn wires(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.upper.iter().chain(&self.lower).map(|s| s.wire).collect();
        w.sort_unstable();
        w.dedup();
        w
    }
}

pub struct Model {
    pub n: usize,
    pub word: Word,
    /// `at[t][p]`: wire at position `p` after `t` swaps.
    pub at: Vec<Vec<usize>>,
    /// `pos[t][w]`: position of wire `w` after `t` swaps.
    pub pos: Vec<Vec<usize>>,
    pub faces: Vec<OFace>,
    /// `(gap, index)` to face.
    ids: HashMap<(usize, usize), usize>,
}

impl Model {
    pub fn new(n: usize, word: &[usize]) -> Model {
        let total = word.len();
        let mut at = vec![(0..n).collect::<Vec<_>>()];
        for &t in word {
            let mut next = at.last().unwrap().clone();
            next.swap(t, t + 1);
            at.push(next);
        }
        let pos: Vec<Vec<usize>> = at
            .iter()
            .map(|a| {
                let mut p = vec![0; n];
                for (i, &w) in a.iter().enumerate() {
                    p[w] = i;
                }
                p
            })
            .collect();

        // Swaps splitting gap g happen on track g - 1.
        let splits = |g: usize| -> Vec<usize> {
            if g == 0 || g == n {
                return Vec::new();
            }
            (0..total).filter(|&s| word[s] == g - 1).collect()
        };
        let mut faces = Vec::new();
        let mut ids = HashMap::new();
        for g in 0..=n {
            let s = splits(g);
            for j in 0..=s.len() {
                let open = j.checked_sub(1).map(|i| s[i]);
                let close = s.get(j).copied();
                ids.insert((g, j), faces.len());
                faces.push(OFace { gap: g, open, close, time: open.map_or(0, |a| a + 1), upper: vec![], lower: vec![] });
            }
        }
        let mut m = Model { n, word: word.to_vec(), at, pos, faces, ids };
        for f in 0..m.faces.len() {
            let (g, open, close) = (m.faces[f].gap, m.faces[f].open, m.faces[f].close);
            let (start, end) = (open.map_or(0, |a| a + 1), close.unwrap_or(total));
            if g >= 1 {
                m.faces[f].upper = m.chain(g - 1, g - 1, start, end);
            }
            if g < n {
                m.faces[f].lower = m.chain(g, g + 1, start, end);
            }
        }
        m
    }

    /// Face of gap `g` at time `t`.
    pub fn face_at(&self, g: usize, t: usize) -> usize {
        let j = if g == 0 || g == self.n { 0 } else { self.word[..t].iter().filter(|&&x| x == g - 1).count() };
        self.ids[&(g, j)]
    }

    /// Runs of the wire at position `p` over times `start..=end`, with the
    /// face of `other_gap` beside each run.
    fn chain(&self, p: usize, other_gap: usize, start: usize, end: usize) -> Vec<Seg> {
        let mut out: Vec<Seg> = Vec::new();
        for t in start..=end {
            let w = self.at[t][p];
            match out.last_mut() {
                Some(s) if s.wire == w => s.t1 = t,
                _ => out.push(Seg { wire: w, t0: t, t1: t, neighbor: self.face_at(other_gap, t) }),
            }
        }
        out
    }

    pub fn bounded(&self) -> impl Iterator<Item = (usize, &OFace)> {
        self.faces.iter().enumerate().filter(|(_, f)| f.bounded())
    }

    /// Whether face `f` lies above wire `w`.
    pub fn above(&self, f: usize, w: usize) -> bool {
        let face = &self.faces[f];
        self.pos[face.time][w] >= face.gap
    }

    /// Wires crossed by `w`, in order.
    pub fn local_sequence(&self, w: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for s in 0..self.word.len() {
            let t = self.word[s];
            if self.at[s][t] == w {
                out.push(self.at[s][t + 1]);
            } else if self.at[s][t + 1] == w {
                out.push(self.at[s][t]);
            }
        }
        out
    }

    pub fn census(&self) -> HashMap<usize, usize> {
        let mut c = HashMap::new();
        for (_, f) in self.bounded() {
            *c.entry(f.sides().unwrap()).or_default() += 1;
        }
        c
    }

    pub fn ge5(&self) -> Vec<usize> {
        self.bounded().filter(|(_, f)| f.sides().unwrap() >= 5).map(|(i, _)| i).collect()
    }

    /// Subarrangement on the wires with `keep[w]`, its wires ordered by
    /// initial position.
    pub fn induced(&self, keep: &[bool]) -> (Model, Vec<usize>) {
        let wires: Vec<usize> = (0..self.n).filter(|&w| keep[w]).collect();
        let mut word = Vec::new();
        for s in 0..self.word.len() {
            let t = self.word[s];
            if keep[self.at[s][t]] && keep[self.at[s][t + 1]] {
                word.push((0..t).filter(|&p| keep[self.at[s][p]]).count());
            }
        }
        (Model::new(wires.len(), &word), wires)
    }

    /// Critical flags in the induced subarrangement of the unique
    /// (>=5)-gon `p`: the number of its edges next to an unbounded cell.
    pub fn criticality(&self, p: usize) -> usize {
        let wires = self.faces[p].wires();
        let mut keep = vec![false; self.n];
        for &w in &wires {
            keep[w] = true;
        }
        let (sub, map) = self.induced(&keep);
        let q = sub.containing(&map, self, p);
        sub.faces[q].walk().iter().filter(|s| !sub.faces[s.neighbor].bounded()).count()
    }

    /// Face of this subarrangement (wires `map` of `full`) containing face
    /// `f` of `full`.
    pub fn containing(&self, map: &[usize], full: &Model, f: usize) -> usize {
        let hits: Vec<usize> = (0..self.faces.len())
            .filter(|&q| (0..self.n).all(|w| self.above(q, w) == full.above(f, map[w])))
            .collect();
        assert_eq!(hits.len(), 1, "a face lies in exactly one region");
        hits[0]
    }

    /// Vertex/edge/face incidence graph: `(dimension, adjacency)`.
    pub fn incidence(&self) -> (Vec<u8>, Vec<Vec<usize>>) {
        let nv = self.word.len();
        let nf = self.faces.len();
        let mut dims = vec![0u8; nv];
        dims.extend(std::iter::repeat_n(2u8, nf));
        let mut adj = vec![Vec::new(); nv + nf];
        let mut edges: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for (f, face) in self.faces.iter().enumerate() {
            for s in face.upper.iter().chain(&face.lower) {
                let key = (s.wire, s.t0, s.t1);
                let e = *edges.entry(key).or_insert_with(|| {
                    dims.push(1);
                    adj.push(Vec::new());
                    let e = adj.len() - 1;
                    // Vertex before t0 and the one after t1, if any.
                    let ends = [s.t0.checked_sub(1), (s.t1 < nv).then_some(s.t1)];
                    for v in ends.into_iter().flatten() {
                        adj[e].push(v);
                        adj[v].push(e);
                    }
                    e
                });
                adj[e].push(nv + f);
                adj[nv + f].push(e);
            }
        }
        (dims, adj)
    }
}

/// Naive backtracking isomorphism test of two incidence graphs.
pub fn isomorphic(a: &(Vec<u8>, Vec<Vec<usize>>), b: &(Vec<u8>, Vec<Vec<usize>>)) -> bool {
    let (da, aa) = a;
    let (db, ab) = b;
    if da.len() != db.len() {
        return false;
    }
    let key = |d: &[u8], adj: &[Vec<usize>], v: usize| (d[v], adj[v].len());
    let mut ka: Vec<_> = (0..da.len()).map(|v| key(da, aa, v)).collect();
    let mut kb: Vec<_> = (0..db.len()).map(|v| key(db, ab, v)).collect();
    ka.sort_unstable();
    kb.sort_unstable();
    if ka != kb {
        return false;
    }
    // Breadth-first order of `a` from a node of dimension 2.
    let root = (0..da.len()).find(|&v| da[v] == 2).unwrap();
    let mut order = vec![root];
    let mut seen = vec![false; da.len()];
    seen[root] = true;
    let mut i = 0;
    while i < order.len() {
        for &u in &aa[order[i]] {
            if !seen[u] {
                seen[u] = true;
                order.push(u);
            }
        }
        i += 1;
    }
    if order.len() != da.len() {
        return false;
    }
    let mut map = vec![usize::MAX; da.len()];
    let mut used = vec![false; db.len()];
    fn go(
        i: usize,
        order: &[usize],
        a: (&[u8], &[Vec<usize>]),
        b: (&[u8], &[Vec<usize>]),
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        // Candidates: unused neighbors of the image of a mapped neighbor.
        let anchor = a.1[v].iter().find(|&&u| map[u] != usize::MAX).copied();
        let candidates: Vec<usize> = match anchor {
            Some(u) => b.1[map[u]].clone(),
            None => (0..b.0.len()).collect(),
        };
        for c in candidates {
            if used[c] || b.0[c] != a.0[v] || b.1[c].len() != a.1[v].len() {
                continue;
            }
            let consistent = a.1[v].iter().filter(|&&u| map[u] != usize::MAX).all(|&u| b.1[c].contains(&map[u]))
                && b.1[c].iter().filter(|&&x| used[x]).count() == a.1[v].iter().filter(|&&u| map[u] != usize::MAX).count();
            if !consistent {
                continue;
            }
            map[v] = c;
            used[c] = true;
            if go(i + 1, order, a, b, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[c] = false;
        }
        false
    }
    go(0, &order, (da, aa), (db, ab), &mut map, &mut used)
}

/// Every reduced word of the reverse permutation on `n` elements, by
/// depth-first search over inversions.
pub fn all_words(n: usize) -> Vec<Word> {
    fn go(perm: &mut Vec<usize>, word: &mut Word, left: usize, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(word.clone());
            return;
        }
        for t in 0..perm.len() - 1 {
            if perm[t] < perm[t + 1] {
                perm.swap(t, t + 1);
                word.push(t);
                go(perm, word, left - 1, out);
                word.pop();
                perm.swap(t, t + 1);
            }
        }
    }
    let mut out = Vec::new();
    if n == 1 {
        return vec![vec![]];
    }
    go(&mut (0..n).collect(), &mut Vec::new(), n * (n - 1) / 2, &mut out);
    out
}
