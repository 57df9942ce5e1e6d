//! Self-dual necklaces and the arrangements built from them.
//!
//! A self-dual necklace has `2m` beads colored 0/1 with `beads[i] !=
//! beads[i + m]`. Bead `j` sits on edge `j` of a centrally symmetric convex
//! `2m`-gon (a zonogon), listed counterclockwise. Each edge is extended to
//! a line, and in every pair of parallel lines `(i, i + m)` the line `i + m`
//! is turned slightly about its edge midpoint so that the pair crosses. The
//! pair crosses *ahead* of the edge whose bead is 1, i.e. in the direction
//! that edge points when the polygon is walked counterclockwise.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::analysis::{im_membership, ImMembership};
use crate::complex::CellComplex;
use crate::error::NecklaceError;
use crate::lines::{big, lines_to_diagram, Line, LineArrangement, LineDiagram, Rational};
use crate::wiring::WiringDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SelfDualNecklace {
    beads: Vec<u8>,
}

impl SelfDualNecklace {
    pub fn new(beads: Vec<u8>) -> Result<SelfDualNecklace, NecklaceError> {
        if beads.is_empty() || beads.len() % 2 == 1 || beads.iter().any(|&b| b > 1) {
            let s: String = beads.iter().map(|b| b.to_string()).collect();
            return Err(NecklaceError::BadBitstring(s));
        }
        let m = beads.len() / 2;
        if let Some(i) = (0..m).find(|&i| beads[i] == beads[i + m]) {
            return Err(NecklaceError::NotSelfDual(i, i + m));
        }
        Ok(SelfDualNecklace { beads })
    }

    /// Necklace whose first half is `half`; the second half is its
    /// complement.
    pub fn from_half(half: &[u8]) -> SelfDualNecklace {
        let mut beads = half.to_vec();
        beads.extend(half.iter().map(|b| 1 - b));
        SelfDualNecklace { beads }
    }

    pub fn m(&self) -> usize {
        self.beads.len() / 2
    }

    pub fn beads(&self) -> &[u8] {
        &self.beads
    }

    /// Bead `i` moves to position `i + k`.
    pub fn rotate(&self, k: usize) -> SelfDualNecklace {
        let len = self.beads.len();
        let beads = (0..len).map(|i| self.beads[(i + len - k % len) % len]).collect();
        SelfDualNecklace { beads }
    }

    /// Bead `i` moves to position `-i`.
    pub fn reflect(&self) -> SelfDualNecklace {
        let len = self.beads.len();
        let beads = (0..len).map(|i| self.beads[(len - i) % len]).collect();
        SelfDualNecklace { beads }
    }

    /// Swaps the two colors. For a self-dual necklace this equals rotation
    /// by `m`, so the result is always in the same dihedral orbit.
    pub fn complement(&self) -> SelfDualNecklace {
        SelfDualNecklace { beads: self.beads.iter().map(|b| 1 - b).collect() }
    }

    /// Lexicographic minimum over the `4m` rotations and reflections.
    pub fn canonical(&self) -> SelfDualNecklace {
        let len = self.beads.len();
        let reflected = self.reflect();
        (0..len)
            .flat_map(|k| [self.rotate(k), reflected.rotate(k)])
            .min()
            .expect("non-empty")
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }
}

impl fmt::Display for SelfDualNecklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.beads {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for SelfDualNecklace {
    type Err = NecklaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let beads: Option<Vec<u8>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect();
        match beads {
            Some(b) => SelfDualNecklace::new(b),
            None => Err(NecklaceError::BadBitstring(s.to_string())),
        }
    }
}

fn totient(mut k: u64) -> u64 {
    let mut phi = k;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            while k % p == 0 {
                k /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if k > 1 {
        phi -= phi / k;
    }
    phi
}

/// Number of self-dual necklaces with `2m` beads up to rotation and
/// reflection, by the closed formula.
pub fn q_formula(m: u64) -> BigUint {
    assert!(m >= 1, "m must be positive");
    let two = BigUint::from(2u32);
    let sum: BigUint = (1..=m)
        .filter(|k| k % 2 == 1 && m % k == 0)
        .map(|k| BigUint::from(totient(k)) * two.pow((m / k) as u32))
        .sum();
    let (rotations, rem) = sum.div_rem(&BigUint::from(2 * m));
    debug_assert!(rem.is_zero());
    let total = two.pow(((m - 1) / 2) as u32) + rotations;
    let (q, rem) = total.div_rem(&two);
    debug_assert!(rem.is_zero());
    q
}

/// One canonical representative per dihedral orbit, sorted.
pub fn enumerate_selfdual(m: usize) -> Vec<SelfDualNecklace> {
    assert!((1..=24).contains(&m), "m must be in 1..=24");
    let mut out: Vec<SelfDualNecklace> = (0u32..1 << m)
        .map(|bits| {
            let half: Vec<u8> = (0..m).map(|i| ((bits >> (m - 1 - i)) & 1) as u8).collect();
            SelfDualNecklace::from_half(&half)
        })
        .filter(SelfDualNecklace::is_canonical)
        .collect();
    out.sort();
    out
}

/// Shape parameters of the zonogon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZonogonConfig {
    /// Slopes of the edge directions, strictly increasing.
    pub slopes: Vec<Rational>,
    /// Horizontal extent of each edge.
    pub lengths: Vec<Rational>,
    pub max_halvings: u32,
}

impl ZonogonConfig {
    /// Slopes `0, 1, ..., m - 1` and unit horizontal lengths.
    pub fn standard(m: usize) -> ZonogonConfig {
        ZonogonConfig {
            slopes: (0..m as i64).map(|s| big(s, 1)).collect(),
            lengths: vec![big(1, 1); m],
            max_halvings: 64,
        }
    }

    fn check(&self, m: usize) -> Result<(), NecklaceError> {
        if self.slopes.len() != m || self.lengths.len() != m {
            return Err(NecklaceError::BadDirections(format!("expected {m} slopes and lengths")));
        }
        if self.slopes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(NecklaceError::BadDirections("slopes must increase strictly".into()));
        }
        if self.lengths.iter().any(|l| !l.is_positive()) {
            return Err(NecklaceError::BadDirections("lengths must be positive".into()));
        }
        Ok(())
    }
}

/// Everything produced while building the arrangement of a necklace.
#[derive(Debug, Clone)]
pub struct ZonogonConstruction {
    pub necklace: SelfDualNecklace,
    pub config: ZonogonConfig,
    /// Vertices of the zonogon, counterclockwise; edge `j` runs from
    /// vertex `j` to vertex `j + 1`.
    pub vertices: Vec<(Rational, Rational)>,
    /// Tilt magnitude that passed verification.
    pub epsilon: Rational,
    pub halvings: u32,
    /// Line `j` extends edge `j`.
    pub lines: LineArrangement,
    pub wiring: LineDiagram,
}

impl ZonogonConstruction {
    pub fn diagram(&self) -> &WiringDiagram {
        &self.wiring.diagram
    }

    /// Midpoint of edge `j`.
    pub fn midpoint(&self, j: usize) -> (Rational, Rational) {
        let len = self.vertices.len();
        let (a, b) = (&self.vertices[j], &self.vertices[(j + 1) % len]);
        let half = big(1, 2);
        ((&a.0 + &b.0) * &half, (&a.1 + &b.1) * &half)
    }
}

fn zonogon(config: &ZonogonConfig) -> Vec<(Rational, Rational)> {
    let m = config.slopes.len();
    let dirs: Vec<(Rational, Rational)> =
        (0..m).map(|i| (config.lengths[i].clone(), &config.lengths[i] * &config.slopes[i])).collect();
    let half = big(1, 2);
    let mut v = (Rational::zero(), Rational::zero());
    for d in &dirs {
        v.0 -= &d.0 * &half;
        v.1 -= &d.1 * &half;
    }
    let mut out = Vec::with_capacity(2 * m);
    for j in 0..2 * m {
        out.push(v.clone());
        let (dx, dy) = &dirs[j % m];
        if j < m {
            v = (&v.0 + dx, &v.1 + dy);
        } else {
            v = (&v.0 - dx, &v.1 - dy);
        }
    }
    out
}

/// Builds the arrangement of `c` on the standard zonogon.
pub fn build_arrangement(c: &SelfDualNecklace) -> Result<(LineArrangement, WiringDiagram), NecklaceError> {
    let z = build_with(c, &ZonogonConfig::standard(c.m()))?;
    Ok((z.lines, z.wiring.diagram))
}

pub fn build_with(c: &SelfDualNecklace, config: &ZonogonConfig) -> Result<ZonogonConstruction, NecklaceError> {
    let m = c.m();
    if m < 3 {
        return Err(NecklaceError::TooSmall(m));
    }
    config.check(m)?;
    let vertices = zonogon(config);
    let mut z = ZonogonConstruction {
        necklace: c.clone(),
        config: config.clone(),
        vertices,
        epsilon: Rational::one(),
        halvings: 0,
        lines: LineArrangement::new(vec![Line::new(Rational::zero(), Rational::zero())]).expect("one line"),
        wiring: LineDiagram { diagram: WiringDiagram::from_tracks(1, vec![]).expect("one wire"), wire_lines: vec![0] },
    };
    let mids: Vec<(Rational, Rational)> = (0..2 * m).map(|j| z.midpoint(j)).collect();
    let mut reason = String::new();
    for halvings in 0..=config.max_halvings {
        let eps = Rational::one() / big(2, 1).pow(halvings as i32);
        match attempt(c, config, &mids, &eps) {
            Ok((lines, wiring)) => {
                z.epsilon = eps;
                z.halvings = halvings;
                z.lines = lines;
                z.wiring = wiring;
                return Ok(z);
            }
            Err(r) => reason = r,
        }
    }
    Err(NecklaceError::EpsilonExhausted { halvings: config.max_halvings, reason })
}

fn attempt(
    c: &SelfDualNecklace,
    config: &ZonogonConfig,
    mids: &[(Rational, Rational)],
    eps: &Rational,
) -> Result<(LineArrangement, LineDiagram), String> {
    let m = c.m();
    let mut lines: Vec<Line> = (0..2 * m).map(|j| Line::through(config.slopes[j % m].clone(), &mids[j].0, &mids[j].1)).collect();
    for i in 0..m {
        let j = i + m;
        let gap = &lines[i].intercept - &lines[j].intercept;
        // Crossing abscissa relative to the pivot is `gap / delta`.
        let ahead_of_i = c.beads()[i] == 1;
        let delta = if gap.is_positive() == ahead_of_i { eps.clone() } else { -eps.clone() };
        lines[j] = Line::through(&config.slopes[i] + delta, &mids[j].0, &mids[j].1);
    }
    for i in 0..m {
        let (x, _) = lines[i].meet(&lines[i + m]).ok_or("a parallel pair survived the tilt")?;
        let ahead_of_i = x > mids[i].0;
        let ahead_of_opposite = x < mids[i + m].0;
        if ahead_of_i != (c.beads()[i] == 1) || ahead_of_opposite != (c.beads()[i + m] == 1) {
            return Err(format!("pair ({i}, {}) crosses on the wrong side", i + m));
        }
    }
    let la = LineArrangement::new(lines).map_err(|e| e.to_string())?;
    let wiring = lines_to_diagram(&la);
    let complex = CellComplex::build(&wiring.diagram);
    match im_membership(&complex) {
        ImMembership::Member { polygon } if complex.face(polygon).side_count() == Some(2 * m) => Ok((la, wiring)),
        other => Err(format!("the arrangement is not in Im: {other:?}")),
    }
}
