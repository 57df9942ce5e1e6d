//! Cell complex of a wiring diagram, built by a single left-to-right sweep.
//!
//! Between consecutive positions sits a *gap*; gap `j` (0-based, `0..=n`)
//! lies below position `j - 1` and above position `j`. Gaps 0 and `n` are
//! the unbounded top and bottom faces. A swap on track `t` closes the face
//! in gap `t + 1` and opens a new one. A face is bounded iff it was both
//! opened and closed by a swap.
//!
//! Face ids are dense and follow sweep order: the `n + 1` initial gaps get
//! `0..=n`, and the face opened by step `s` gets `n + 1 + s`.
//!
//! Every wire is directed left to right; its left half-plane is the region
//! above it. An edge therefore has its `left_face` above and `right_face`
//! below.

use crate::wiring::{WireId, WiringDiagram};

pub type FaceId = usize;
pub type EdgeId = usize;

/// A crossing `v_{p,q}`; `upper` is the wire on top just before the swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub step: usize,
    /// 0-based track.
    pub track: usize,
    pub upper: WireId,
    pub lower: WireId,
}

/// A maximal piece of a wire between consecutive crossings. A missing
/// endpoint means the piece is a ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub wire: WireId,
    /// Position of the piece along its wire, `0..n`.
    pub index: usize,
    pub start: Option<usize>,
    pub end: Option<usize>,
    pub left_face: FaceId,
    pub right_face: FaceId,
}

impl Edge {
    pub fn is_ray(&self) -> bool {
        self.start.is_none() || self.end.is_none()
    }

    /// The face on the other side of `f`.
    pub fn twin(&self, f: FaceId) -> FaceId {
        if self.left_face == f {
            self.right_face
        } else {
            debug_assert_eq!(self.right_face, f);
            self.left_face
        }
    }

    /// Whether `f` lies above the edge.
    pub fn has_above(&self, f: FaceId) -> bool {
        self.left_face == f
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub gap: usize,
    /// Step that opened the face, `None` if it reaches `x = -inf`.
    pub open: Option<usize>,
    /// Step that closed the face, `None` if it reaches `x = +inf`.
    pub close: Option<usize>,
    /// Edges bounding the face from above, left to right.
    pub upper: Vec<EdgeId>,
    /// Edges bounding the face from below, left to right.
    pub lower: Vec<EdgeId>,
}

impl Face {
    pub fn is_bounded(&self) -> bool {
        self.open.is_some() && self.close.is_some()
    }

    /// Boundary walk: the upper chain left to right, then the lower chain
    /// right to left. For a bounded face this is a closed clockwise cycle.
    pub fn boundary(&self) -> Vec<EdgeId> {
        let mut b = self.upper.clone();
        b.extend(self.lower.iter().rev());
        b
    }

    /// Number of sides; `None` for unbounded faces.
    pub fn side_count(&self) -> Option<usize> {
        self.is_bounded().then(|| self.upper.len() + self.lower.len())
    }
}

/// Vertices, edges and faces of a simple arrangement, with twin data.
#[derive(Debug, Clone)]
pub struct CellComplex {
    diagram: WiringDiagram,
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    /// Crossing steps along each wire, left to right.
    wire_crossings: Vec<Vec<usize>>,
}

impl CellComplex {
    pub fn build(diagram: &WiringDiagram) -> CellComplex {
        let n = diagram.n();
        let steps = diagram.len();
        let mut pos: Vec<WireId> = (0..n).collect();
        let mut piece = vec![0usize; n];
        let mut gap_face: Vec<FaceId> = (0..=n).collect();
        let mut faces: Vec<Face> = (0..=n)
            .map(|gap| Face { id: gap, gap, open: None, close: None, upper: Vec::new(), lower: Vec::new() })
            .collect();
        let placeholder = Edge { wire: 0, index: 0, start: None, end: None, left_face: 0, right_face: 0 };
        let mut edges = vec![placeholder; n * n];
        let mut crossings = Vec::with_capacity(steps);
        let mut wire_crossings = vec![Vec::with_capacity(n.saturating_sub(1)); n];

        let open_edge = |edges: &mut Vec<Edge>, faces: &mut Vec<Face>, wire: WireId, index: usize, start: Option<usize>, above: FaceId, below: FaceId| {
            let id = wire * n + index;
            edges[id] = Edge { wire, index, start, end: None, left_face: above, right_face: below };
            faces[above].lower.push(id);
            faces[below].upper.push(id);
        };

        for (p, &w) in pos.iter().enumerate() {
            open_edge(&mut edges, &mut faces, w, 0, None, gap_face[p], gap_face[p + 1]);
        }

        for (step, &t) in diagram.tracks().iter().enumerate() {
            let (u, l) = (pos[t], pos[t + 1]);
            crossings.push(Crossing { step, track: t, upper: u, lower: l });
            wire_crossings[u].push(step);
            wire_crossings[l].push(step);
            edges[u * n + piece[u]].end = Some(step);
            edges[l * n + piece[l]].end = Some(step);
            piece[u] += 1;
            piece[l] += 1;

            let gap = t + 1;
            faces[gap_face[gap]].close = Some(step);
            let id = faces.len();
            faces.push(Face { id, gap, open: Some(step), close: None, upper: Vec::new(), lower: Vec::new() });
            gap_face[gap] = id;

            pos.swap(t, t + 1);
            open_edge(&mut edges, &mut faces, l, piece[l], Some(step), gap_face[t], gap_face[t + 1]);
            open_edge(&mut edges, &mut faces, u, piece[u], Some(step), gap_face[t + 1], gap_face[t + 2]);
        }

        CellComplex { diagram: diagram.clone(), crossings, edges, faces, wire_crossings }
    }

    pub fn diagram(&self) -> &WiringDiagram {
        &self.diagram
    }

    pub fn n(&self) -> usize {
        self.diagram.n()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    /// Edge `index` of wire `wire`.
    pub fn edge_id(&self, wire: WireId, index: usize) -> EdgeId {
        wire * self.n() + index
    }

    /// Crossing steps along `wire`, left to right.
    pub fn wire_crossings(&self, wire: WireId) -> &[usize] {
        &self.wire_crossings[wire]
    }

    /// Edges of `wire`, left to right.
    pub fn wire_edges(&self, wire: WireId) -> impl Iterator<Item = EdgeId> + '_ {
        let n = self.n();
        (0..n).map(move |i| wire * n + i)
    }

    pub fn bounded_faces(&self) -> impl Iterator<Item = &Face> + '_ {
        self.faces.iter().filter(|f| f.is_bounded())
    }

    /// Wires carrying an edge of `f`, in boundary order.
    pub fn face_wires(&self, f: FaceId) -> Vec<WireId> {
        self.faces[f].boundary().iter().map(|&e| self.edges[e].wire).collect()
    }

    /// `V - E + F` with rays counted as edges. Adding one vertex at infinity
    /// closes the rays and gives the sphere value 2, so this is always 1.
    pub fn euler_characteristic(&self) -> i64 {
        self.crossings.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Checks twin consistency and that every bounded boundary is a single
    /// closed cycle. Returns a description of the first violation.
    pub fn check_integrity(&self) -> Result<(), String> {
        for (id, e) in self.edges.iter().enumerate() {
            if e.left_face == e.right_face {
                return Err(format!("edge {id} has the same face on both sides"));
            }
            if !self.faces[e.left_face].lower.contains(&id) || !self.faces[e.right_face].upper.contains(&id) {
                return Err(format!("edge {id} is missing from an adjacent face"));
            }
        }
        for f in &self.faces {
            for &e in &f.upper {
                if self.edges[e].right_face != f.id {
                    return Err(format!("face {} lists edge {e} above it, but the edge disagrees", f.id));
                }
            }
            for &e in &f.lower {
                if self.edges[e].left_face != f.id {
                    return Err(format!("face {} lists edge {e} below it, but the edge disagrees", f.id));
                }
            }
            if !f.is_bounded() {
                continue;
            }
            let b = f.boundary();
            if b.len() < 3 {
                return Err(format!("bounded face {} has {} sides", f.id, b.len()));
            }
            for i in 0..b.len() {
                let (e1, e2) = (&self.edges[b[i]], &self.edges[b[(i + 1) % b.len()]]);
                let shared = [e1.start, e1.end]
                    .iter()
                    .flatten()
                    .any(|v| e2.start == Some(*v) || e2.end == Some(*v));
                if !shared {
                    return Err(format!("face {} boundary breaks between edges {} and {}", f.id, b[i], b[(i + 1) % b.len()]));
                }
            }
        }
        Ok(())
    }
}
