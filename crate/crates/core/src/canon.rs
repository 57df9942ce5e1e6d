//! Canonical certificates of cell decompositions.
//!
//! The certificate is the lexicographically smallest encoding of the
//! vertex/edge/face incidence graph (unbounded cells included) over all
//! labelings reachable by individualization and refinement. Colors start
//! as (dimension, optional wire label) and are refined by the sorted
//! multiset of neighbor colors; ties are broken by individualizing each
//! member of the first smallest non-singleton color class in turn. Two
//! arrangements get equal certificates iff their cell decompositions are
//! isomorphic, which covers reflections and wire relabelings.

use std::fmt;

use crate::complex::CellComplex;
use crate::wiring::WiringDiagram;

/// A total, deterministic encoding of an arrangement's incidence structure.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCertificate(Vec<u32>);

impl CanonicalCertificate {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Short stable fingerprint for display (FNV-1a over the code).
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &x in &self.0 {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        h
    }
}

impl fmt::Debug for CanonicalCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCertificate({:016x}, len {})", self.fingerprint(), self.0.len())
    }
}

/// Incidence graph: cells are nodes, incidences are undirected edges.
#[derive(Debug, Clone)]
pub struct IncidenceGraph {
    /// Initial attribute of each node: `(dimension, label)`.
    attrs: Vec<(u32, u32)>,
    adj: Vec<Vec<usize>>,
    counts: [usize; 3],
}

impl IncidenceGraph {
    /// Unlabeled incidence graph of a complex.
    pub fn from_complex(c: &CellComplex) -> IncidenceGraph {
        Self::build(c, None)
    }

    /// Incidence graph whose edges carry `labels[wire]`, so only
    /// label-preserving isomorphisms survive.
    pub fn labeled(c: &CellComplex, labels: &[u32]) -> IncidenceGraph {
        Self::build(c, Some(labels))
    }

    fn build(c: &CellComplex, labels: Option<&[u32]>) -> IncidenceGraph {
        let (nv, ne, nf) = (c.crossings().len(), c.edges().len(), c.faces().len());
        let total = nv + ne + nf;
        let mut attrs = Vec::with_capacity(total);
        attrs.extend(std::iter::repeat_n((0, 0), nv));
        for e in c.edges() {
            attrs.push((1, labels.map_or(0, |l| l[e.wire] + 1)));
        }
        attrs.extend(std::iter::repeat_n((2, 0), nf));
        let mut adj = vec![Vec::new(); total];
        let mut link = |a: usize, b: usize| {
            adj[a].push(b);
            adj[b].push(a);
        };
        for (i, e) in c.edges().iter().enumerate() {
            let en = nv + i;
            for v in [e.start, e.end].into_iter().flatten() {
                link(en, v);
            }
            link(en, nv + ne + e.left_face);
            link(en, nv + ne + e.right_face);
        }
        IncidenceGraph { attrs, adj, counts: [nv, ne, nf] }
    }

    pub fn len(&self) -> usize {
        self.attrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attrs.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn attr(&self, v: usize) -> (u32, u32) {
        self.attrs[v]
    }

    /// Ranks of `keys`: equal keys share a color, colors follow key order.
    fn rank<K: Ord + Clone>(keys: &[K]) -> (Vec<u32>, usize) {
        let mut sorted: Vec<K> = keys.to_vec();
        sorted.sort();
        sorted.dedup();
        let colors = keys.iter().map(|k| sorted.binary_search(k).expect("present") as u32).collect();
        (colors, sorted.len())
    }

    /// Refines `colors` to the coarsest equitable coloring finer than it.
    fn refine(&self, colors: &mut Vec<u32>) {
        let mut classes = {
            let mut c = colors.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        let mut sig: Vec<(u32, Vec<u32>)> = vec![(0, Vec::new()); self.len()];
        loop {
            for (v, s) in sig.iter_mut().enumerate() {
                s.0 = colors[v];
                s.1.clear();
                s.1.extend(self.adj[v].iter().map(|&u| colors[u]));
                s.1.sort_unstable();
            }
            let (next, count) = Self::rank(&sig);
            *colors = next;
            if count == classes {
                return;
            }
            classes = count;
        }
    }

    fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
        let keys: Vec<(u32, bool)> = colors.iter().enumerate().map(|(u, &c)| (c, u != v)).collect();
        Self::rank(&keys).0
    }

    /// Encoding of the graph under the discrete labeling `colors`.
    fn code(&self, colors: &[u32]) -> Vec<u32> {
        let n = self.len();
        let mut inverse = vec![0usize; n];
        for (v, &c) in colors.iter().enumerate() {
            inverse[c as usize] = v;
        }
        let mut code = Vec::with_capacity(4 + 3 * n + self.adj.iter().map(Vec::len).sum::<usize>());
        code.extend(self.counts.iter().map(|&c| c as u32));
        code.push(n as u32);
        for &v in &inverse {
            let (dim, label) = self.attrs[v];
            code.push(dim);
            code.push(label);
        }
        for &v in &inverse {
            let mut nb: Vec<u32> = self.adj[v].iter().map(|&u| colors[u]).collect();
            nb.sort_unstable();
            code.push(nb.len() as u32);
            code.extend(nb);
        }
        code
    }

    fn search(&self, mut colors: Vec<u32>, best: &mut Option<Vec<u32>>) {
        self.refine(&mut colors);
        let mut sizes = vec![0usize; self.len()];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = sizes
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s > 1)
            .min_by_key(|&(c, &s)| (s, c))
            .map(|(c, _)| c as u32);
        match target {
            None => {
                let code = self.code(&colors);
                if best.as_ref().is_none_or(|b| code < *b) {
                    *best = Some(code);
                }
            }
            Some(cell) => {
                for v in 0..self.len() {
                    if colors[v] == cell {
                        self.search(Self::individualize(&colors, v), best);
                    }
                }
            }
        }
    }

    pub fn certificate(&self) -> CanonicalCertificate {
        let (colors, _) = Self::rank(&self.attrs);
        let mut best = None;
        self.search(colors, &mut best);
        CanonicalCertificate(best.unwrap_or_default())
    }
}

pub fn canonical_form(d: &WiringDiagram) -> CanonicalCertificate {
    complex_certificate(&CellComplex::build(d))
}

pub fn complex_certificate(c: &CellComplex) -> CanonicalCertificate {
    IncidenceGraph::from_complex(c).certificate()
}

/// Certificate that also pins wire labels: `labels[w]` names wire `w`.
pub fn labeled_certificate(d: &WiringDiagram, labels: &[u32]) -> CanonicalCertificate {
    IncidenceGraph::labeled(&CellComplex::build(d), labels).certificate()
}

pub fn isomorphic(d1: &WiringDiagram, d2: &WiringDiagram) -> bool {
    d1.n() == d2.n() && canonical_form(d1) == canonical_form(d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wiring::validate_wiring;

    #[test]
    fn reflections_share_certificates() {
        let d = validate_wiring(4, &[2, 1, 3, 2, 1, 3]).unwrap();
        let c = canonical_form(&d);
        assert_eq!(canonical_form(&d.mirror_vertical()), c);
        assert_eq!(canonical_form(&d.mirror_horizontal()), c);
        assert!(isomorphic(&d, &d));
    }

    #[test]
    fn sizes_differ() {
        let d3 = validate_wiring(3, &[1, 2, 1]).unwrap();
        let d4 = validate_wiring(4, &[2, 1, 3, 2, 1, 3]).unwrap();
        assert!(!isomorphic(&d3, &d4));
    }

    #[test]
    fn labels_restrict_isomorphism() {
        let d = validate_wiring(3, &[1, 2, 1]).unwrap();
        let e = validate_wiring(3, &[2, 1, 2]).unwrap();
        assert!(isomorphic(&d, &e));
        // Vertical mirror maps wire i to wire 2 - i.
        assert_eq!(labeled_certificate(&d, &[0, 1, 2]), labeled_certificate(&e, &[2, 1, 0]));

        // Four lines have a small symmetry group, so most relabelings differ.
        let d4 = validate_wiring(4, &[2, 1, 3, 2, 1, 3]).unwrap();
        let mut certs = Vec::new();
        for a in 0..4u32 {
            for b in (0..4u32).filter(|&b| b != a) {
                for c in (0..4u32).filter(|&c| c != a && c != b) {
                    certs.push(labeled_certificate(&d4, &[a, b, c, 6 - a - b - c]));
                }
            }
        }
        assert_eq!(certs.len(), 24);
        certs.sort();
        certs.dedup();
        assert!(certs.len() > 1 && 24 % certs.len() == 0);
    }
}
