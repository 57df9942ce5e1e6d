//! Wiring diagrams: the combinatorial encoding of a simple Euclidean
//! arrangement as a sequence of adjacent transpositions.
//!
//! Wires are numbered `0..n` internally and start in identity order, wire 0
//! on top. A swap on track `t` exchanges the wires sitting at positions `t`
//! and `t + 1` (both 0-based). Every unordered pair of wires crosses exactly
//! once, so a valid swap sequence is a reduced word for the order-reversing
//! permutation and has length `n(n-1)/2`.
//!
//! The text format and every user-facing message are 1-based: line 1 holds
//! `n`, line 2 the space-separated track positions in `[1, n-1]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{ParseError, ParseErrorKind, WiringError};

/// Identifier of a wire (pseudoline), 0-based.
pub type WireId = usize;

/// A validated simple wiring diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WiringDiagram {
    n: usize,
    /// 0-based tracks.
    swaps: Vec<usize>,
    /// `(upper, lower)` wires involved in each swap, read before the swap.
    pairs: Vec<(WireId, WireId)>,
}

/// Number of crossings in a simple arrangement of `n` pseudolines.
pub const fn crossing_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Validates a swap sequence given with 1-based track positions.
pub fn validate_wiring(n: usize, swaps: &[usize]) -> Result<WiringDiagram, WiringError> {
    if n == 0 {
        return Err(WiringError::NoWires);
    }
    for (step, &t) in swaps.iter().enumerate() {
        if t == 0 || t >= n {
            return Err(WiringError::TrackOutOfRange { step: step + 1, track: t, n });
        }
    }
    let expected = crossing_count(n);
    if swaps.len() != expected {
        return Err(WiringError::WrongLength { expected, found: swaps.len() });
    }
    let zero_based: Vec<usize> = swaps.iter().map(|t| t - 1).collect();
    WiringDiagram::from_tracks(n, zero_based)
}

impl WiringDiagram {
    /// Builds a diagram from 0-based tracks. Lengths are checked here too, so
    /// this is the single validation path.
    pub fn from_tracks(n: usize, swaps: Vec<usize>) -> Result<Self, WiringError> {
        if n == 0 {
            return Err(WiringError::NoWires);
        }
        let expected = crossing_count(n);
        if swaps.len() != expected {
            return Err(WiringError::WrongLength { expected, found: swaps.len() });
        }
        let mut order: Vec<WireId> = (0..n).collect();
        let mut pairs = Vec::with_capacity(swaps.len());
        for (step, &t) in swaps.iter().enumerate() {
            if t + 1 >= n {
                return Err(WiringError::TrackOutOfRange { step: step + 1, track: t + 1, n });
            }
            let (u, l) = (order[t], order[t + 1]);
            // Wires start sorted, so a pair that already crossed is inverted.
            if u > l {
                let (a, b) = (l.min(u), l.max(u));
                return Err(WiringError::DoubleCross { pair: (a + 1, b + 1), step: step + 1 });
            }
            pairs.push((u, l));
            order.swap(t, t + 1);
        }
        Ok(WiringDiagram { n, swaps, pairs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based tracks.
    pub fn tracks(&self) -> &[usize] {
        &self.swaps
    }

    /// 1-based tracks, as in the text format.
    pub fn tracks_one_based(&self) -> Vec<usize> {
        self.swaps.iter().map(|t| t + 1).collect()
    }

    /// `(upper, lower)` wire pair of every swap, in sweep order.
    pub fn pairs(&self) -> &[(WireId, WireId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    /// Wire order (top to bottom) after the first `steps` swaps.
    pub fn order_after(&self, steps: usize) -> Vec<WireId> {
        let mut order: Vec<WireId> = (0..self.n).collect();
        for &t in &self.swaps[..steps] {
            order.swap(t, t + 1);
        }
        order
    }

    /// Step at which wires `a` and `b` cross.
    pub fn crossing_step(&self, a: WireId, b: WireId) -> Option<usize> {
        self.pairs
            .iter()
            .position(|&(u, l)| (u == a && l == b) || (u == b && l == a))
    }

    /// For every wire, the other wires in the order it crosses them
    /// (left to right).
    pub fn local_sequences(&self) -> Vec<Vec<WireId>> {
        let mut seqs = vec![Vec::with_capacity(self.n.saturating_sub(1)); self.n];
        for &(u, l) in &self.pairs {
            seqs[u].push(l);
            seqs[l].push(u);
        }
        seqs
    }

    /// Reflection through the horizontal axis: track `t` becomes `n - t`
    /// (1-based), the order of swaps is kept.
    pub fn mirror_vertical(&self) -> WiringDiagram {
        let swaps = self.swaps.iter().map(|&t| self.n - 2 - t).collect();
        WiringDiagram::from_tracks(self.n, swaps).expect("reflection of a valid diagram")
    }

    /// Reflection through the vertical axis: the swap sequence is read
    /// backwards.
    pub fn mirror_horizontal(&self) -> WiringDiagram {
        let swaps = self.swaps.iter().rev().copied().collect();
        WiringDiagram::from_tracks(self.n, swaps).expect("reflection of a valid diagram")
    }

    /// Smallest word of the commutation class: swaps on tracks at distance
    /// at least two commute without changing the arrangement.
    pub fn commutation_normal_form(&self) -> WiringDiagram {
        let len = self.swaps.len();
        let mut used = vec![false; len];
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            // A pending swap can move to the front iff no earlier pending
            // swap touches an adjacent or equal track.
            let mut best: Option<usize> = None;
            for i in 0..len {
                if used[i] {
                    continue;
                }
                let t = self.swaps[i];
                let blocked = (0..i).any(|j| !used[j] && self.swaps[j].abs_diff(t) <= 1);
                if !blocked && best.is_none_or(|b| t < self.swaps[b]) {
                    best = Some(i);
                }
            }
            let i = best.expect("some pending swap is always movable");
            used[i] = true;
            out.push(self.swaps[i]);
        }
        WiringDiagram::from_tracks(self.n, out).expect("commuting swaps preserve validity")
    }

    /// Minimum over the commutation class and the two reflections. Equal
    /// keys imply isomorphic arrangements; the converse does not hold.
    pub fn symmetry_key(&self) -> WiringDiagram {
        let v = self.mirror_vertical();
        let h = self.mirror_horizontal();
        let vh = v.mirror_horizontal();
        [self, &v, &h, &vh]
            .into_iter()
            .map(|d| d.commutation_normal_form())
            .min()
            .expect("four candidates")
    }

    /// Keeps the given wires. Tracks are re-indexed among the kept wires and
    /// kept wires are renumbered in increasing order.
    pub fn induced(&self, keep: &[WireId]) -> Result<InducedSubarrangement, WiringError> {
        let mut wires: Vec<WireId> = keep.to_vec();
        wires.sort_unstable();
        wires.dedup();
        if wires.is_empty() {
            return Err(WiringError::EmptySubset);
        }
        if let Some(&w) = wires.iter().find(|&&w| w >= self.n) {
            return Err(WiringError::WireOutOfRange { wire: w + 1, n: self.n });
        }
        let mut child_of = vec![usize::MAX; self.n];
        for (i, &w) in wires.iter().enumerate() {
            child_of[w] = i;
        }
        let mut order: Vec<WireId> = (0..self.n).collect();
        let mut swaps = Vec::with_capacity(crossing_count(wires.len()));
        let mut steps = Vec::with_capacity(crossing_count(wires.len()));
        for (step, &t) in self.swaps.iter().enumerate() {
            let (u, l) = (order[t], order[t + 1]);
            if child_of[u] != usize::MAX && child_of[l] != usize::MAX {
                let kept_above = order[..t].iter().filter(|&&w| child_of[w] != usize::MAX).count();
                swaps.push(kept_above);
                steps.push(step);
            }
            order.swap(t, t + 1);
        }
        let diagram = WiringDiagram::from_tracks(wires.len(), swaps)
            .expect("a subsequence of a simple diagram is simple");
        Ok(InducedSubarrangement { diagram, wires, steps })
    }
}

/// Subarrangement obtained by keeping some wires, with the correspondence
/// back to the parent diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubarrangement {
    pub diagram: WiringDiagram,
    /// `wires[i]` is the parent wire that became child wire `i`.
    pub wires: Vec<WireId>,
    /// `steps[s]` is the parent step of child step `s`.
    pub steps: Vec<usize>,
}

impl InducedSubarrangement {
    /// Child wire of a parent wire, if kept.
    pub fn child_wire(&self, parent: WireId) -> Option<WireId> {
        self.wires.binary_search(&parent).ok()
    }

    /// Child step of a parent step, if the crossing survives.
    pub fn child_step(&self, parent_step: usize) -> Option<usize> {
        self.steps.binary_search(&parent_step).ok()
    }
}

impl fmt::Display for WiringDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        let mut first = true;
        for t in &self.swaps {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{}", t + 1)?;
            first = false;
        }
        writeln!(f)
    }
}

impl FromStr for WiringDiagram {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate();
        let (_, first) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or(ParseError { line: 1, column: 1, kind: ParseErrorKind::Empty })?;
        let first_line = s.lines().position(|l| !l.trim().is_empty()).unwrap_or(0) + 1;
        let n_col = first.len() - first.trim_start().len() + 1;
        let n: usize = first.trim().parse().map_err(|_| ParseError {
            line: first_line,
            column: n_col,
            kind: ParseErrorKind::BadInteger(first.trim().to_string()),
        })?;

        let (swap_line, body) = match lines.next() {
            Some((i, l)) => (i + 1, l),
            None => (first_line + 1, ""),
        };
        if let Some((i, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(ParseError {
                line: i + 1,
                column: extra.len() - extra.trim_start().len() + 1,
                kind: ParseErrorKind::TrailingInput,
            });
        }

        let mut tokens = Vec::new();
        let mut col = 0;
        for tok in body.split_whitespace() {
            let start = body[col..].find(tok).map(|o| o + col).unwrap_or(col);
            col = start + tok.len();
            let value: usize = tok.parse().map_err(|_| ParseError {
                line: swap_line,
                column: start + 1,
                kind: ParseErrorKind::BadInteger(tok.to_string()),
            })?;
            tokens.push((start + 1, value));
        }
        let swaps: Vec<usize> = tokens.iter().map(|&(_, v)| v).collect();
        validate_wiring(n, &swaps).map_err(|e| {
            let column = match &e {
                WiringError::TrackOutOfRange { step, .. } | WiringError::DoubleCross { step, .. } => {
                    tokens[step - 1].0
                }
                WiringError::WrongLength { .. } => body.trim_end().len() + 1,
                WiringError::NoWires => {
                    return ParseError { line: first_line, column: n_col, kind: ParseErrorKind::Invalid(e) }
                }
                _ => 1,
            };
            ParseError { line: swap_line, column, kind: ParseErrorKind::Invalid(e) }
        })
    }
}
