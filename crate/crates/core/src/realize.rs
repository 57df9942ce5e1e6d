//! Straight-line realizations of arrangements in Im.
//!
//! For `n >= RECURSION_THRESHOLD` a wire `b` whose edge on the big polygon
//! `P` sits between two other non-critical edges (on wires `a` and `c`) is
//! removed, the rest is realized recursively, and `b` is put back as a line
//! through the corner `a* ∩ c*`, pushed slightly into `P*`. Smaller inputs
//! go to a seeded randomized search with exact verification.
//!
//! Wire labels follow the usual convention: `a`, `b`, `c` are directed so
//! that `P` lies on their left, and `x_l` is the `l`-th wire crossed by `x`.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{critical_edges, im_membership, ImMembership};
use crate::canon::labeled_certificate;
use crate::complex::{CellComplex, EdgeId, FaceId};
use crate::error::RealizeError;
use crate::lines::{big, lines_to_diagram, Line, LineArrangement, Rational};
use crate::wiring::{WireId, WiringDiagram};

/// Smallest `n` handled by wire insertion instead of the base search.
pub const RECURSION_THRESHOLD: usize = 7;

/// One of the four regions cut out by the directed wires `a` and `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Region {
    /// Left of both; contains `P`.
    R1,
    /// Right of `a`, left of `c`.
    R2,
    /// Right of both.
    R3,
    /// Left of `a`, right of `c`.
    R4,
}

/// Insertion frame for the wire `b`. Labels are stored 0-based:
/// `a_labels[l - 1]` is `a_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizerState {
    pub diagram: WiringDiagram,
    pub polygon: FaceId,
    /// Edges `a'`, `b'`, `c'` of `P`, consecutive counterclockwise.
    pub edges: [EdgeId; 3],
    pub a: WireId,
    pub b: WireId,
    pub c: WireId,
    pub a_labels: Vec<WireId>,
    pub b_labels: Vec<WireId>,
    pub c_labels: Vec<WireId>,
    pub k: usize,
    pub t: usize,
    pub r: usize,
    /// Triangles across `a'`, `b'` and `c'` from `P`.
    pub triangles: [FaceId; 3],
    /// Regions visited by each wire other than `a`, `b`, `c`, sorted.
    pub regions: Vec<Option<[Region; 3]>>,
    /// `a_1, ..., a_{k-r-1}`.
    pub h: Vec<WireId>,
}

impl RealizerState {
    /// `a_l` with 1-based `l`.
    pub fn a_(&self, l: usize) -> WireId {
        self.a_labels[l - 1]
    }

    pub fn b_(&self, l: usize) -> WireId {
        self.b_labels[l - 1]
    }

    pub fn c_(&self, l: usize) -> WireId {
        self.c_labels[l - 1]
    }

    /// Re-checks every structural identity of the frame.
    pub fn check(&self) -> Result<(), String> {
        let n = self.diagram.n();
        let (k, t, r) = (self.k, self.t, self.r);
        let ensure = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
        ensure(self.a_(k) == self.c && self.b_(t) == self.a && self.c_(r) == self.a, "k, t, r are not the crossing indices")?;
        ensure((3..n).contains(&k), "3 <= k <= n-1 fails")?;
        ensure((2..=n - 3).contains(&t), "2 <= t <= n-3 fails")?;
        ensure((1..=n - 3).contains(&r), "1 <= r <= n-3 fails")?;
        ensure(r <= t && t < k, "r <= t <= k-1 fails")?;
        ensure(self.a_(k - 1) == self.b, "A is not formed by a and a_{k-1} = b")?;
        ensure(self.b_(t + 1) == self.c, "B is not formed by b_t = a and b_{t+1} = c")?;
        ensure(self.c_(r + 1) == self.b, "C is not formed by c and c_{r+1} = b")?;
        for j in 1..t {
            ensure(self.b_(t - j) == self.a_(k - 1 - j), "the left relabeling b_{t-j} = a_{k-1-j} fails")?;
            if j < r {
                ensure(self.b_(t - j) == self.c_(r - j), "the left relabeling b_{t-j} = c_{r-j} fails")?;
            }
        }
        for i in 1..=n - t - 2 {
            ensure(self.b_(t + 1 + i) == self.c_(r + 1 + i), "the right relabeling b_{t+1+i} = c_{r+1+i} fails")?;
            if i < n - k {
                ensure(self.b_(t + 1 + i) == self.a_(k + i), "the right relabeling b_{t+1+i} = a_{k+i} fails")?;
            }
        }
        ensure(self.h.len() == k - r - 1, "H has the wrong size")?;
        for l in 1..k - r {
            ensure(self.h[l - 1] == self.a_(l), "H is not a[1, k-r-1]")?;
            ensure(self.c_(n + r - k + l) == self.a_(l), "H is not c[n+r-k+1, n-1] in order")?;
        }
        for (w, regions) in self.regions.iter().enumerate() {
            if let Some(regions) = regions {
                ensure(regions.contains(&Region::R1), &format!("wire {} misses R1", w + 1))?;
            }
        }
        Ok(())
    }

    /// Wires of `H` that `b` crosses before `a`, derived from `b`'s
    /// crossing order.
    pub fn h_before_a(&self) -> Vec<WireId> {
        self.h.iter().copied().filter(|w| self.b_labels[..self.t - 1].contains(w)).collect()
    }
}

/// Crossing order of `wire` when directed so that `f` is on its left.
fn labels(c: &CellComplex, seqs: &[Vec<WireId>], e: EdgeId, f: FaceId) -> Vec<WireId> {
    let wire = c.edge(e).wire;
    let mut s = seqs[wire].clone();
    if !c.edge(e).has_above(f) {
        s.reverse();
    }
    s
}

fn polygon_of(c: &CellComplex) -> Result<FaceId, RealizeError> {
    match im_membership(c) {
        ImMembership::Member { polygon } => Ok(polygon),
        other => Err(RealizeError::NotInIm(format!("{other:?}"))),
    }
}

/// Every frame of `d` that satisfies all invariants, in boundary order.
pub fn insertion_frames(d: &WiringDiagram) -> Result<Vec<RealizerState>, RealizeError> {
    let c = CellComplex::build(d);
    let p = polygon_of(&c)?;
    let flags = critical_edges(&c, p).expect("P is bounded");
    let n = flags.len();
    let seqs = d.local_sequences();
    let mut frames = Vec::new();
    let mut first_error = None;
    for i in 0..n {
        // The boundary walk is clockwise, so counterclockwise order reverses it.
        let trio = [flags[(i + 2) % n], flags[(i + 1) % n], flags[i]];
        if trio.iter().any(|&(_, critical)| critical) {
            continue;
        }
        let edges = trio.map(|(e, _)| e);
        let [a, b, cw] = edges.map(|e| c.edge(e).wire);
        let a_labels = labels(&c, &seqs, edges[0], p);
        let b_labels = labels(&c, &seqs, edges[1], p);
        let c_labels = labels(&c, &seqs, edges[2], p);
        let pos = |s: &[WireId], w: WireId| s.iter().position(|&x| x == w).expect("wires cross") + 1;
        let (k, t, r) = (pos(&a_labels, cw), pos(&b_labels, a), pos(&c_labels, a));
        let triangles = edges.map(|e| c.edge(e).twin(p));
        let mut regions = vec![None; d.n()];
        for (w, slot) in regions.iter_mut().enumerate() {
            if w == a || w == b || w == cw {
                continue;
            }
            let on_a = if pos(&a_labels, w) < k { [Region::R1, Region::R2] } else { [Region::R3, Region::R4] };
            let on_c = if pos(&c_labels, w) < r { [Region::R2, Region::R3] } else { [Region::R1, Region::R4] };
            let mut visited: Vec<Region> = on_a.iter().chain(on_c.iter()).copied().collect();
            visited.sort();
            visited.dedup();
            if visited.len() == 3 {
                *slot = Some([visited[0], visited[1], visited[2]]);
            } else {
                first_error.get_or_insert(format!("wire {} crosses a and c inconsistently", w + 1));
            }
        }
        let h = a_labels[..k.saturating_sub(r + 1)].to_vec();
        let state = RealizerState {
            diagram: d.clone(),
            polygon: p,
            edges,
            a,
            b,
            c: cw,
            a_labels,
            b_labels,
            c_labels,
            k,
            t,
            r,
            triangles,
            regions,
            h,
        };
        let tri_ok = triangles.iter().all(|&f| c.face(f).side_count() == Some(3));
        match state.check() {
            Ok(()) if tri_ok => frames.push(state),
            Ok(()) => {
                first_error.get_or_insert("a non-critical edge of P does not bound a triangle".to_string());
            }
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    if frames.is_empty() {
        return Err(match first_error {
            Some(e) => RealizeError::InvalidFrame(e),
            None => RealizeError::NoConsecutiveTriple,
        });
    }
    Ok(frames)
}

/// The first valid insertion frame of `d`.
pub fn select_insertion_frame(d: &WiringDiagram) -> Result<RealizerState, RealizeError> {
    Ok(insertion_frames(d)?.remove(0))
}

/// How one level of the recursion was realized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Base { attempts: usize },
    Insertion { b: WireId, k: usize, t: usize, r: usize, slope_perturbed: bool, halvings: u32 },
}

/// One realized diagram of the recursion, outermost first.
#[derive(Debug, Clone)]
pub struct TraceLevel {
    pub diagram: WiringDiagram,
    /// `wires[i]`: wire of the input diagram that became wire `i` here.
    pub wires: Vec<WireId>,
    /// Line `i` realizes wire `i` of `diagram`.
    pub lines: LineArrangement,
    pub step: Step,
}

#[derive(Debug, Clone)]
pub struct Realization {
    /// Line `i` realizes wire `i` of the input.
    pub lines: LineArrangement,
    pub trace: Vec<TraceLevel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealizeOptions {
    pub seed: u64,
    pub threshold: usize,
    /// Attempts per base-case search.
    pub base_budget: usize,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions { seed: 0, threshold: RECURSION_THRESHOLD, base_budget: 200_000 }
    }
}

/// Whether `la` (line `i` for wire `i`) generates the same labeled cell
/// decomposition as `d`.
pub fn realizes(d: &WiringDiagram, la: &LineArrangement) -> bool {
    if la.len() != d.n() {
        return false;
    }
    let ld = lines_to_diagram(la);
    let target: Vec<u32> = (0..d.n() as u32).collect();
    let got: Vec<u32> = ld.wire_lines.iter().map(|&l| l as u32).collect();
    labeled_certificate(d, &target) == labeled_certificate(&ld.diagram, &got)
}

pub fn realize_im(d: &WiringDiagram, seed: u64) -> Result<Realization, RealizeError> {
    realize_with(d, &RealizeOptions { seed, ..RealizeOptions::default() })
}

pub fn realize_with(d: &WiringDiagram, opts: &RealizeOptions) -> Result<Realization, RealizeError> {
    polygon_of(&CellComplex::build(d))?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut trace = Vec::new();
    let lines = realize_level(d, (0..d.n()).collect(), opts, &mut rng, &mut trace)?;
    trace.reverse();
    Ok(Realization { lines, trace })
}

fn realize_level(
    d: &WiringDiagram,
    wires: Vec<WireId>,
    opts: &RealizeOptions,
    rng: &mut ChaCha8Rng,
    trace: &mut Vec<TraceLevel>,
) -> Result<LineArrangement, RealizeError> {
    let frames = if d.n() >= opts.threshold {
        match insertion_frames(d) {
            Ok(f) => f,
            Err(RealizeError::NoConsecutiveTriple) => Vec::new(),
            Err(e) => return Err(e),
        }
    } else {
        Vec::new()
    };
    if frames.is_empty() {
        let (lines, attempts) = base_case(d, rng, opts.base_budget)?;
        let lines = orient(d, lines);
        trace.push(TraceLevel { diagram: d.clone(), wires, lines: lines.clone(), step: Step::Base { attempts } });
        return Ok(lines);
    }
    let mut last_error = None;
    for frame in frames {
        let keep: Vec<WireId> = (0..d.n()).filter(|&w| w != frame.b).collect();
        let sub = d.induced(&keep).expect("kept wires exist");
        if !im_membership(&CellComplex::build(&sub.diagram)).is_member() {
            last_error = Some(RealizeError::InvalidFrame(format!("deleting wire {} leaves Im", frame.b + 1)));
            continue;
        }
        let sub_wires: Vec<WireId> = sub.wires.iter().map(|&w| wires[w]).collect();
        let depth = trace.len();
        let child = realize_level(&sub.diagram, sub_wires, opts, rng, trace)?;
        match insert(&frame, &sub.wires, &child) {
            Ok((lines, step)) => {
                let lines = orient(d, lines);
                trace.push(TraceLevel { diagram: d.clone(), wires, lines: lines.clone(), step });
                return Ok(lines);
            }
            Err(e) => {
                trace.truncate(depth);
                last_error = Some(e);
            }
        }
    }
    Err(last_error.expect("at least one frame was tried"))
}

/// Applies `(x, y) -> (-x, y)`.
/// Applies whichever reflection of the plane makes line `i` cross the others
/// in the order wire `i` does, keeping the input when none does.
fn orient(d: &WiringDiagram, la: LineArrangement) -> LineArrangement {
    let target = d.local_sequences();
    let identity: Vec<usize> = (0..d.n()).collect();
    for (flip_slope, flip_intercept) in [(false, false), (false, true), (true, false), (true, true)] {
        let lines: Vec<Line> = la
            .lines()
            .iter()
            .map(|l| {
                let m = if flip_slope { -&l.slope } else { l.slope.clone() };
                let b = if flip_intercept { -&l.intercept } else { l.intercept.clone() };
                Line::new(m, b)
            })
            .collect();
        let candidate = LineArrangement::new(lines).expect("reflections keep the arrangement simple");
        let ld = lines_to_diagram(&candidate);
        if ld.wire_lines == identity && ld.diagram.local_sequences() == target {
            return candidate;
        }
    }
    la
}

fn reflect_x(lines: &[Line]) -> Vec<Line> {
    lines.iter().map(|l| Line::new(-&l.slope, l.intercept.clone())).collect()
}

/// Applies the shear that makes direction `q` vertical.
fn shear(lines: &[Line], q: &Rational) -> Vec<Line> {
    lines
        .iter()
        .map(|l| {
            let f = q / (q - &l.slope);
            Line::new(&l.slope * &f, &l.intercept * &f)
        })
        .collect()
}

/// Position of the single descent in `s`, if it is increasing up to one
/// cyclic wrap.
fn wrap_point(s: &[Rational]) -> Option<Option<usize>> {
    let descents: Vec<usize> = (0..s.len() - 1).filter(|&i| s[i] >= s[i + 1]).collect();
    match descents.as_slice() {
        [] => Some(None),
        [j] if s[s.len() - 1] < s[0] && s[*j] != s[*j + 1] => Some(Some(*j)),
        _ => None,
    }
}

/// Rational strictly between `lo` and `hi` avoiding `avoid` and `reject`,
/// preferring the midpoint. The flag tells whether the midpoint was rejected.
fn pick_between(lo: &Rational, hi: &Rational, avoid: &[Rational], reject: impl Fn(&Rational) -> bool) -> Option<(Rational, bool)> {
    for den in 2..=64i64 {
        for num in 1..den {
            let s = lo + (hi - lo) * big(num, den);
            if !avoid.contains(&s) && !reject(&s) {
                return Some((s, num * 2 != den));
            }
        }
    }
    None
}

/// Re-inserts wire `frame.b` into the realization `child` of the diagram
/// without it. `kept[i]` is the wire of `frame.diagram` drawn by child
/// line `i`.
fn insert(frame: &RealizerState, kept: &[WireId], child: &LineArrangement) -> Result<(LineArrangement, Step), RealizeError> {
    let fail = |s: String| RealizeError::InsertionFailed(s);
    let n = frame.diagram.n();
    let child_of = |w: WireId| kept.iter().position(|&x| x == w).expect("kept wire");

    // Normalize so the slopes of a*, H*, c* increase.
    let chain: Vec<usize> =
        std::iter::once(frame.a).chain(frame.h.iter().copied()).chain(std::iter::once(frame.c)).map(child_of).collect();
    let mut lines: Vec<Line> = child.lines().to_vec();
    let slopes = |ls: &[Line]| chain.iter().map(|&i| ls[i].slope.clone()).collect::<Vec<_>>();
    if wrap_point(&slopes(&lines)).is_none() {
        lines = reflect_x(&lines);
    }
    let s = slopes(&lines);
    match wrap_point(&s) {
        None => return Err(fail("the slopes of a*, H*, c* are not cyclically monotone".into())),
        Some(None) => {}
        Some(Some(_)) => {
            let all: Vec<Rational> = lines.iter().map(|l| l.slope.clone()).collect();
            let (q, _) = pick_between(&s[s.len() - 1], &s[0], &all, |q| q.is_zero())
                .ok_or_else(|| fail("no shear direction available".into()))?;
            lines = shear(&lines, &q);
        }
    }
    let m = slopes(&lines);
    if m.windows(2).any(|w| w[0] >= w[1]) {
        return Err(fail("slope monotonicity m_0 < ... < m_{k-r} fails".into()));
    }
    let child = LineArrangement::new(lines.clone())?;

    // Which side of each line P* lies on, from the child's own sweep.
    let ld = lines_to_diagram(&child);
    let cc = CellComplex::build(&ld.diagram);
    let p = polygon_of(&cc)?;
    let mut p_above = vec![false; lines.len()];
    for &e in &cc.face(p).boundary() {
        p_above[ld.wire_lines[cc.edge(e).wire]] = cc.edge(e).has_above(p);
    }
    let on_p_side = |l: usize, x: &Rational, y: &Rational| {
        let s = lines[l].side(x, y);
        if p_above[l] {
            s > 0
        } else {
            s < 0
        }
    };

    // Index formula versus b's actual crossing order.
    let (k, t) = (frame.k, frame.t);
    let expected: Vec<WireId> = frame.h[k - t - 1..].to_vec();
    if frame.h_before_a() != expected {
        return Err(fail("the bracketing slopes disagree with b's crossing order".into()));
    }

    let (ia, ic) = (child_of(frame.a), child_of(frame.c));
    let (vx, vy) = lines[ia].meet(&lines[ic]).expect("a* and c* cross");
    let vertices: Vec<(Rational, Rational)> =
        child.crossings().into_iter().filter(|x| !(x.x == vx && x.y == vy)).map(|x| (x.x, x.y)).collect();
    let all_slopes: Vec<Rational> = lines.iter().map(|l| l.slope.clone()).collect();
    let hits_vertex = |s: &Rational| {
        let line = Line::through(s.clone(), &vx, &vy);
        vertices.iter().any(|(x, y)| line.side(x, y) == 0)
    };
    let (sigma, perturbed) = pick_between(&m[k - t - 1], &m[k - t], &all_slopes, hits_vertex)
        .ok_or_else(|| fail("no admissible slope between the bracketing slopes".into()))?;
    let through_v = Line::through(sigma.clone(), &vx, &vy);
    let offset = vertices
        .iter()
        .map(|(x, y)| (y - through_v.y_at(x)).abs())
        .min()
        .unwrap_or_else(Rational::one);
    let mut delta = offset / big(2, 1);

    let target_b = frame.b_labels.clone();
    for halvings in 0..=64u32 {
        for sign in [1i64, -1] {
            let shift = &delta * big(sign, 1);
            let d_star = Line::new(sigma.clone(), &through_v.intercept + &shift);
            let (ax, ay) = d_star.meet(&lines[ia]).expect("distinct slopes");
            let (cx, cy) = d_star.meet(&lines[ic]).expect("distinct slopes");
            if !on_p_side(ic, &ax, &ay) || !on_p_side(ia, &cx, &cy) {
                continue;
            }
            // Direct d* from its crossing with a* to its crossing with c*.
            let forward = cx > ax;
            let mut order: Vec<(Rational, WireId)> = (0..lines.len())
                .map(|i| {
                    let (x, _) = d_star.meet(&lines[i]).expect("distinct slopes");
                    (if forward { x } else { -x }, kept[i])
                })
                .collect();
            order.sort();
            let got: Vec<WireId> = order.into_iter().map(|(_, w)| w).collect();
            if got != target_b {
                continue;
            }
            let mut full: Vec<Option<Line>> = vec![None; n];
            for (i, l) in lines.iter().enumerate() {
                full[kept[i]] = Some(l.clone());
            }
            full[frame.b] = Some(d_star);
            let la = match LineArrangement::new(full.into_iter().map(|l| l.expect("every wire drawn")).collect()) {
                Ok(la) => la,
                Err(_) => continue,
            };
            if realizes(&frame.diagram, &la) {
                let step = Step::Insertion { b: frame.b, k, t, r: frame.r, slope_perturbed: perturbed, halvings };
                return Ok((la, step));
            }
        }
        delta /= big(2, 1);
    }
    Err(fail(format!("no translation of d* reproduced wire {}", frame.b + 1)))
}

fn small_rational(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Rational {
    let v = rng.gen_range(lo..hi);
    big((v * 1000.0).round() as i64, 1000)
}

/// Randomized search: lines tangent to a perturbed circle in the cyclic
/// order of `P`, falling back to unconstrained random lines.
fn base_case(d: &WiringDiagram, rng: &mut ChaCha8Rng, budget: usize) -> Result<(LineArrangement, usize), RealizeError> {
    let n = d.n();
    let c = CellComplex::build(d);
    let p = polygon_of(&c)?;
    let cycle = c.face_wires(p);
    let target: Vec<u32> = (0..n as u32).collect();
    let target = labeled_certificate(d, &target);
    for attempt in 1..=budget {
        let mut lines = Vec::with_capacity(n);
        if attempt % 8 == 0 {
            for _ in 0..n {
                lines.push(Line::new(small_rational(rng, -8.0, 8.0), small_rational(rng, -8.0, 8.0)));
            }
        } else {
            let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
            angles.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
            let reversed = attempt % 2 == 0;
            let jitter = if attempt % 4 < 2 { 0.0 } else { 0.5 };
            let mut slots = vec![Line::new(Rational::zero(), Rational::zero()); n];
            let mut ok = true;
            for (i, theta) in angles.into_iter().enumerate() {
                let t = big(((theta / 2.0).tan() * 1000.0).round() as i64, 1000);
                let denom = Rational::one() + &t * &t;
                let (cs, sn) = ((Rational::one() - &t * &t) / &denom, (&t * big(2, 1)) / &denom);
                if sn.is_zero() {
                    ok = false;
                    break;
                }
                let radius = if jitter > 0.0 { small_rational(rng, 1.0 - jitter, 1.0 + jitter) } else { Rational::one() };
                let wire = if reversed { cycle[n - 1 - i] } else { cycle[i] };
                slots[wire] = Line::new(-&cs / &sn, radius / &sn);
            }
            if !ok {
                continue;
            }
            lines = slots;
        }
        let Ok(la) = LineArrangement::new(lines) else { continue };
        let ld = lines_to_diagram(&la);
        let got: Vec<u32> = ld.wire_lines.iter().map(|&l| l as u32).collect();
        if labeled_certificate(&ld.diagram, &got) == target {
            return Ok((la, attempt));
        }
    }
    Err(RealizeError::BaseCaseExhausted { n, attempts: budget })
}
