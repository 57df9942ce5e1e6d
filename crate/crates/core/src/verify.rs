//! Invariant suites run over every wiring diagram of a given size.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{counting_report, critical_edges, face_census, find_unique_ge5, im_membership, triangle_adjacency, ImMembership};
use crate::complex::{CellComplex, FaceId};
use crate::embedding::GridEmbedding;
use crate::enumerate::enumerate_simple;
use crate::error::EnumerationError;
use crate::wiring::{WireId, WiringDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// `1 + n(n-3)/2` bounded faces.
    BoundedCells,
    /// Twin consistency, closed boundaries, `V - E + F = 1`.
    Integrity,
    /// `p3 = n - k`, `p4 = k + n(n-5)/2` with exactly one (>=5)-gon.
    CountingTheorem,
    /// In Im: `p3 = n - k` and `P` is an `n`-gon.
    ImTriangles,
    /// In Im: every non-critical edge of `P` bounds a triangle.
    NonCriticalEdgesBoundTriangles,
    /// In Im: every triangle shares an edge with `P`.
    TrianglesTouchPolygon,
    /// Every wire carries an edge of a triangle.
    WiresTouchTriangles,
    /// A bounded (>=4)-gon has at most two critical edges.
    AtMostTwoCriticalEdges,
    /// Triangular regions with an uncrossed side contain triangles on the
    /// other two sides.
    TriangularRegions,
    /// Uncrossed edges of (>=5)-gonal regions force (>=5)-gons.
    PolygonalRegions,
    /// No two triangles share an edge.
    TrianglesDisjointEdges,
    /// Deleting a wire keeps the crossing order of the others.
    InducedOrder,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::BoundedCells,
        Suite::Integrity,
        Suite::CountingTheorem,
        Suite::ImTriangles,
        Suite::NonCriticalEdgesBoundTriangles,
        Suite::TrianglesTouchPolygon,
        Suite::WiresTouchTriangles,
        Suite::AtMostTwoCriticalEdges,
        Suite::TriangularRegions,
        Suite::PolygonalRegions,
        Suite::TrianglesDisjointEdges,
        Suite::InducedOrder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BoundedCells => "bounded-cells",
            Suite::Integrity => "integrity",
            Suite::CountingTheorem => "counting-theorem",
            Suite::ImTriangles => "im-triangles",
            Suite::NonCriticalEdgesBoundTriangles => "noncritical-edges-bound-triangles",
            Suite::TrianglesTouchPolygon => "triangles-touch-polygon",
            Suite::WiresTouchTriangles => "wires-touch-triangles",
            Suite::AtMostTwoCriticalEdges => "at-most-two-critical-edges",
            Suite::TriangularRegions => "triangular-regions",
            Suite::PolygonalRegions => "polygonal-regions",
            Suite::TrianglesDisjointEdges => "triangles-disjoint-edges",
            Suite::InducedOrder => "induced-order",
        }
    }

    /// `None` when the suite does not apply to the diagram.
    pub fn check(self, ctx: &Context) -> Option<Result<(), String>> {
        match self {
            Suite::BoundedCells => (ctx.n() >= 3).then(|| bounded_cells(ctx)),
            Suite::Integrity => Some(integrity(ctx)),
            Suite::CountingTheorem => ctx.unique_ge5.map(|p| counting_theorem(ctx, p)),
            Suite::ImTriangles => ctx.polygon_in_im().map(|p| im_triangles(ctx, p)),
            Suite::NonCriticalEdgesBoundTriangles => ctx.polygon_in_im().map(|p| noncritical_edges(ctx, p)),
            Suite::TrianglesTouchPolygon => ctx.polygon_in_im().map(|p| triangles_touch(ctx, p)),
            Suite::WiresTouchTriangles => (ctx.n() >= 3).then(|| wires_touch_triangles(ctx)),
            Suite::AtMostTwoCriticalEdges => Some(at_most_two_critical(ctx)),
            Suite::TriangularRegions => (ctx.n() >= 3).then(|| triangular_regions(ctx)),
            Suite::PolygonalRegions => (ctx.n() >= 5).then(|| polygonal_regions(ctx)),
            Suite::TrianglesDisjointEdges => Some(triangles_disjoint(ctx)),
            Suite::InducedOrder => (ctx.n() >= 2).then(|| induced_order(ctx)),
        }
    }
}

/// Data shared by the suites for one diagram.
#[derive(Debug, Clone)]
pub struct Context {
    pub complex: CellComplex,
    pub embedding: GridEmbedding,
    pub unique_ge5: Option<FaceId>,
    pub im: ImMembership,
}

impl Context {
    pub fn new(d: &WiringDiagram) -> Context {
        let complex = CellComplex::build(d);
        let embedding = GridEmbedding::new(&complex);
        let unique_ge5 = find_unique_ge5(&complex).ok().flatten();
        let im = im_membership(&complex);
        Context { complex, embedding, unique_ge5, im }
    }

    pub fn n(&self) -> usize {
        self.complex.n()
    }

    pub fn diagram(&self) -> &WiringDiagram {
        self.complex.diagram()
    }

    fn polygon_in_im(&self) -> Option<FaceId> {
        match self.im {
            ImMembership::Member { polygon } => Some(polygon),
            _ => None,
        }
    }

    fn is_triangle(&self, f: FaceId) -> bool {
        self.complex.face(f).side_count() == Some(3)
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bounded_cells(ctx: &Context) -> Result<(), String> {
    let n = ctx.n();
    let found = ctx.complex.bounded_faces().count();
    let expected = 1 + n * (n - 3) / 2;
    ensure(found == expected, || format!("{found} bounded faces, expected {expected}"))
}

fn integrity(ctx: &Context) -> Result<(), String> {
    ctx.complex.check_integrity()?;
    let chi = ctx.complex.euler_characteristic();
    ensure(chi == 1, || format!("V - E + F = {chi}"))
}

fn counting_theorem(ctx: &Context, p: FaceId) -> Result<(), String> {
    let k = crate::analysis::criticality_of(&ctx.complex, p).k;
    let r = counting_report(&ctx.complex, &face_census(&ctx.complex), k);
    ensure(r.pass, || {
        format!("k = {k}: p3 = {} (expected {}), p4 = {} (expected {})", r.observed_p3, r.expected_p3, r.observed_p4, r.expected_p4)
    })
}

fn im_triangles(ctx: &Context, p: FaceId) -> Result<(), String> {
    let n = ctx.n();
    let sides = ctx.complex.face(p).side_count().expect("bounded");
    ensure(sides == n, || format!("P has {sides} sides, expected {n}"))?;
    let k = critical_edges(&ctx.complex, p).expect("bounded").iter().filter(|e| e.1).count();
    let p3 = face_census(&ctx.complex).triangles();
    ensure(p3 + k == n, || format!("{p3} triangles with k = {k}, expected {}", n - k))
}

fn noncritical_edges(ctx: &Context, p: FaceId) -> Result<(), String> {
    for (e, critical) in critical_edges(&ctx.complex, p).expect("bounded") {
        let twin = ctx.complex.edge(e).twin(p);
        ensure(critical || ctx.is_triangle(twin), || format!("non-critical edge on wire {} borders face {twin}, not a triangle", ctx.complex.edge(e).wire + 1))?;
    }
    Ok(())
}

fn triangles_touch(ctx: &Context, p: FaceId) -> Result<(), String> {
    for f in ctx.complex.bounded_faces().filter(|f| f.side_count() == Some(3)) {
        let touches = f.boundary().iter().any(|&e| ctx.complex.edge(e).twin(f.id) == p);
        ensure(touches, || format!("triangle {} shares no edge with P", f.id))?;
    }
    Ok(())
}

fn wires_touch_triangles(ctx: &Context) -> Result<(), String> {
    let lists = triangle_adjacency(&ctx.complex);
    match lists.iter().position(|l| l.is_empty()) {
        Some(w) => Err(format!("wire {} touches no triangle", w + 1)),
        None => Ok(()),
    }
}

/// Wires adjacent to exactly one triangle.
pub fn wires_with_one_triangle(c: &CellComplex) -> Vec<WireId> {
    triangle_adjacency(c).iter().enumerate().filter(|(_, l)| l.len() == 1).map(|(w, _)| w).collect()
}

fn at_most_two_critical(ctx: &Context) -> Result<(), String> {
    for f in ctx.complex.bounded_faces().filter(|f| f.side_count().is_some_and(|s| s >= 4)) {
        let count = critical_edges(&ctx.complex, f.id).expect("bounded").iter().filter(|e| e.1).count();
        ensure(count <= 2, || format!("face {} has {count} critical edges", f.id))?;
    }
    Ok(())
}

fn adjacent_in(seq: &[WireId], x: WireId, y: WireId) -> bool {
    let i = seq.iter().position(|&w| w == x).expect("crossing exists");
    let j = seq.iter().position(|&w| w == y).expect("crossing exists");
    i.abs_diff(j) == 1
}

fn triangular_regions(ctx: &Context) -> Result<(), String> {
    let n = ctx.n();
    let d = ctx.diagram();
    let seqs = d.local_sequences();
    let triangles: Vec<&crate::complex::Face> = ctx.complex.bounded_faces().filter(|f| f.side_count() == Some(3)).collect();
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                let trio = [p, q, r];
                let sub = d.induced(&trio).expect("distinct wires");
                let sub_c = CellComplex::build(&sub.diagram);
                let region = sub_c.bounded_faces().next().expect("three wires bound a triangle").id;
                // Triangles of the full arrangement inside the region.
                let inside: Vec<&&crate::complex::Face> = triangles
                    .iter()
                    .filter(|f| ctx.embedding.face_containing_in(&sub, &sub_c, ctx.embedding.witness(f.id)) == Ok(region))
                    .collect();
                for (side, others) in [(r, [p, q]), (q, [p, r]), (p, [q, r])] {
                    if !adjacent_in(&seqs[side], others[0], others[1]) {
                        continue;
                    }
                    for l in others {
                        let found = inside.iter().any(|f| ctx.complex.face_wires(f.id).contains(&l));
                        ensure(found, || {
                            format!("region of wires {}, {}, {} (side {} uncrossed) has no triangle on wire {}", p + 1, q + 1, r + 1, side + 1, l + 1)
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn polygonal_regions(ctx: &Context) -> Result<(), String> {
    let n = ctx.n();
    let d = ctx.diagram();
    let seqs = d.local_sequences();
    let c = &ctx.complex;
    for mask in 0u32..1 << n {
        if mask.count_ones() < 5 {
            continue;
        }
        let keep: Vec<WireId> = (0..n).filter(|&w| mask >> w & 1 == 1).collect();
        let sub = d.induced(&keep).expect("non-empty");
        let sub_c = CellComplex::build(&sub.diagram);
        let sub_seqs = sub.diagram.local_sequences();
        for q in sub_c.bounded_faces().filter(|f| f.side_count().is_some_and(|s| s >= 5)) {
            let boundary = q.boundary();
            let len = boundary.len();
            for i in 0..len {
                let w_edge = sub_c.edge(boundary[i]);
                let wire = sub.wires[w_edge.wire];
                let (s, e) = (w_edge.start.expect("bounded"), w_edge.end.expect("bounded"));
                let ends = [sub.wires[other_wire(&sub_c, s, w_edge.wire)], sub.wires[other_wire(&sub_c, e, w_edge.wire)]];
                if !adjacent_in(&seqs[wire], ends[0], ends[1]) {
                    continue;
                }
                for j in [(i + len - 1) % len, (i + 1) % len] {
                    let q_edge = sub_c.edge(boundary[j]);
                    let found = ge5_along(ctx, &sub, &sub_c, &sub_seqs, q.id, q_edge);
                    ensure(found, || {
                        format!(
                            "wires {:?}: edge on wire {} of a {}-gonal region is uncrossed, but its neighbor on wire {} has no (>=5)-gon subarc",
                            keep.iter().map(|w| w + 1).collect::<Vec<_>>(),
                            wire + 1,
                            len,
                            sub.wires[q_edge.wire] + 1
                        )
                    })?;
                }
            }
        }
    }
    let _ = c;
    Ok(())
}

/// The wire crossing `wire` at step `s` of `c`.
fn other_wire(c: &CellComplex, s: usize, wire: WireId) -> WireId {
    let x = c.crossings()[s];
    if x.upper == wire {
        x.lower
    } else {
        x.upper
    }
}

/// Whether some full-arrangement edge inside the region edge `q_edge`
/// borders, on the side of region `q`, a (>=5)-gon lying in `q`.
fn ge5_along(
    ctx: &Context,
    sub: &crate::wiring::InducedSubarrangement,
    sub_c: &CellComplex,
    sub_seqs: &[Vec<WireId>],
    q: FaceId,
    q_edge: &crate::complex::Edge,
) -> bool {
    let c = &ctx.complex;
    let wire = sub.wires[q_edge.wire];
    let seq = &ctx.diagram().local_sequences()[wire];
    let _ = sub_seqs;
    let pos = |s: Option<usize>| {
        s.map(|s| {
            let other = sub.wires[other_wire(sub_c, s, q_edge.wire)];
            seq.iter().position(|&w| w == other).expect("crossing exists")
        })
    };
    let lo = pos(q_edge.start).map_or(0, |i| i + 1);
    let hi = pos(q_edge.end).map_or(c.n() - 1, |i| i);
    let above = q_edge.has_above(q);
    (lo..=hi).any(|idx| {
        let e = c.edge(c.edge_id(wire, idx));
        let f = if above { e.left_face } else { e.right_face };
        c.face(f).side_count().is_some_and(|s| s >= 5)
            && ctx.embedding.face_containing_in(sub, sub_c, ctx.embedding.witness(f)) == Ok(q)
    })
}

fn triangles_disjoint(ctx: &Context) -> Result<(), String> {
    for e in ctx.complex.edges() {
        ensure(!(ctx.is_triangle(e.left_face) && ctx.is_triangle(e.right_face)), || {
            format!("triangles {} and {} share an edge on wire {}", e.left_face, e.right_face, e.wire + 1)
        })?;
    }
    Ok(())
}

fn induced_order(ctx: &Context) -> Result<(), String> {
    let d = ctx.diagram();
    let seqs = d.local_sequences();
    for drop in 0..d.n() {
        let keep: Vec<WireId> = (0..d.n()).filter(|&w| w != drop).collect();
        let sub = d.induced(&keep).expect("non-empty");
        for (cw, child_seq) in sub.diagram.local_sequences().iter().enumerate() {
            let expected: Vec<WireId> = seqs[sub.wires[cw]].iter().copied().filter(|&w| w != drop).collect();
            let got: Vec<WireId> = child_seq.iter().map(|&w| sub.wires[w]).collect();
            ensure(got == expected, || format!("deleting wire {} reorders wire {}", drop + 1, sub.wires[cw] + 1))?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// 1-based swap sequence.
    pub swaps: Vec<usize>,
    pub n: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs every suite on one diagram.
pub fn check_diagram(d: &WiringDiagram) -> Vec<(Suite, Option<Result<(), String>>)> {
    let ctx = Context::new(d);
    Suite::ALL.iter().map(|&s| (s, s.check(&ctx))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub diagrams: usize,
    pub suites: Vec<SuiteResult>,
    /// A diagram with a wire adjacent to exactly one triangle, and the wire
    /// (1-based).
    pub one_triangle_wire: Option<(Vec<usize>, usize)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn first_failure(&self) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| !s.passed())
    }

    /// Fixed-width pass/fail table.
    pub fn table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n = {}, {} diagrams", self.n, self.diagrams).unwrap();
        for s in &self.suites {
            let status = if s.passed() { "pass" } else { "FAIL" };
            writeln!(out, "{:<36} {:>9} {status}", s.name, s.checked).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone)]
struct Partial {
    diagrams: usize,
    checked: Vec<usize>,
    failures: Vec<Option<Counterexample>>,
    one_triangle: Option<(Vec<usize>, usize)>,
}

impl Partial {
    fn new() -> Partial {
        Partial { diagrams: 0, checked: vec![0; Suite::ALL.len()], failures: vec![None; Suite::ALL.len()], one_triangle: None }
    }

    fn add(&mut self, d: &WiringDiagram) {
        let ctx = Context::new(d);
        self.diagrams += 1;
        for (i, s) in Suite::ALL.iter().enumerate() {
            if let Some(res) = s.check(&ctx) {
                self.checked[i] += 1;
                if let (Err(detail), None) = (res, &self.failures[i]) {
                    self.failures[i] = Some(Counterexample { swaps: d.tracks_one_based(), n: d.n(), detail });
                }
            }
        }
        if self.one_triangle.is_none() {
            if let Some(&w) = wires_with_one_triangle(&ctx.complex).first() {
                self.one_triangle = Some((d.tracks_one_based(), w + 1));
            }
        }
    }

    /// `self` covers words before `later`'s.
    fn merge(mut self, later: Partial) -> Partial {
        self.diagrams += later.diagrams;
        for i in 0..self.checked.len() {
            self.checked[i] += later.checked[i];
            if self.failures[i].is_none() {
                self.failures[i] = later.failures[i].clone();
            }
        }
        if self.one_triangle.is_none() {
            self.one_triangle = later.one_triangle;
        }
        self
    }
}

/// Runs every suite over all wiring diagrams with `n` wires. Reported
/// counterexamples are the lexicographically first failing words.
pub fn verify_n(n: usize) -> Result<VerifyReport, EnumerationError> {
    if n == 0 || n > 6 {
        return Err(EnumerationError::SuitesTooLarge(n));
    }
    let stream = enumerate_simple(n, None, false)?;
    let parts: Vec<Partial> = stream
        .chunks()
        .into_par_iter()
        .map(|chunk| {
            let mut p = Partial::new();
            for d in chunk {
                p.add(&d);
            }
            p
        })
        .collect();
    let total = parts.into_iter().fold(Partial::new(), Partial::merge);
    let suites = Suite::ALL
        .iter()
        .zip(total.checked)
        .zip(total.failures)
        .map(|((s, checked), counterexample)| SuiteResult { name: s.name(), checked, counterexample })
        .collect();
    Ok(VerifyReport { n, diagrams: total.diagrams, suites, one_triangle_wire: total.one_triangle })
}
