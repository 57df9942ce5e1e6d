//! Exhaustive generation of simple wiring diagrams for small `n`.
//!
//! Raw words are produced by backtracking in lexicographic order; a swap on
//! track `t` is allowed iff the two wires there have not crossed yet, which
//! (starting from the identity) means they are still in increasing order.
//! Deduplication groups words by [`CanonicalCertificate`], using the
//! commutation class and the two reflections only to skip obviously equal
//! words before certificates are computed.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::analysis::{find_unique_ge5, im_membership};
use crate::canon::{canonical_form, CanonicalCertificate};
use crate::complex::CellComplex;
use crate::error::EnumerationError;
use crate::wiring::{crossing_count, WiringDiagram};

/// Largest `n` accepted by the enumerator.
pub const MAX_WIRES: usize = 7;

/// Optional restriction of the enumerated diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    /// Exactly one bounded face with at least five sides.
    OneGe5,
    /// Membership in the family Im.
    Im,
}

impl Filter {
    pub fn accepts(self, d: &WiringDiagram) -> bool {
        let c = CellComplex::build(d);
        match self {
            Filter::OneGe5 => matches!(find_unique_ge5(&c), Ok(Some(_))),
            Filter::Im => im_membership(&c).is_member(),
        }
    }
}

/// Lazy depth-first iterator over all reduced words of the reversal.
#[derive(Debug, Clone)]
pub struct ReducedWords {
    n: usize,
    total: usize,
    order: Vec<usize>,
    word: Vec<usize>,
    next: Vec<usize>,
    floor: usize,
    done: bool,
}

impl ReducedWords {
    pub fn new(n: usize) -> ReducedWords {
        Self::with_prefix(n, &[]).expect("the empty prefix is valid")
    }

    /// Words starting with `prefix` (0-based tracks); `None` if the prefix
    /// itself double-crosses a pair.
    pub fn with_prefix(n: usize, prefix: &[usize]) -> Option<ReducedWords> {
        let total = crossing_count(n);
        let mut order: Vec<usize> = (0..n).collect();
        for &t in prefix {
            if t + 1 >= n || order[t] > order[t + 1] || prefix.len() > total {
                return None;
            }
            order.swap(t, t + 1);
        }
        let mut next = vec![0; total + 1];
        next[prefix.len()] = 0;
        Some(ReducedWords {
            n,
            total,
            order,
            word: prefix.to_vec(),
            next,
            floor: prefix.len(),
            done: false,
        })
    }

    fn undo(&mut self) {
        let t = self.word.pop().expect("non-empty");
        self.order.swap(t, t + 1);
    }
}

impl Iterator for ReducedWords {
    type Item = WiringDiagram;

    fn next(&mut self) -> Option<WiringDiagram> {
        while !self.done {
            let depth = self.word.len();
            if depth == self.total {
                let d = WiringDiagram::from_tracks(self.n, self.word.clone()).expect("reduced word");
                if depth == self.floor {
                    self.done = true;
                } else {
                    self.undo();
                }
                return Some(d);
            }
            let start = self.next[depth];
            match (start..self.n - 1).find(|&t| self.order[t] < self.order[t + 1]) {
                Some(t) => {
                    self.next[depth] = t + 1;
                    self.order.swap(t, t + 1);
                    self.word.push(t);
                    self.next[depth + 1] = 0;
                }
                None if depth == self.floor => self.done = true,
                None => self.undo(),
            }
        }
        None
    }
}

/// Number of reduced words, by memoized counting over permutations.
pub fn count_words(n: usize) -> u128 {
    fn go(order: &mut Vec<u8>, memo: &mut HashMap<Vec<u8>, u128>) -> u128 {
        if let Some(&c) = memo.get(order.as_slice()) {
            return c;
        }
        let mut total = 0;
        let mut any = false;
        for t in 0..order.len().saturating_sub(1) {
            if order[t] < order[t + 1] {
                any = true;
                order.swap(t, t + 1);
                total += go(order, memo);
                order.swap(t, t + 1);
            }
        }
        let count = if any { total } else { 1 };
        memo.insert(order.clone(), count);
        count
    }
    let mut order: Vec<u8> = (0..n as u8).collect();
    go(&mut order, &mut HashMap::new())
}

/// Configuration of an enumeration run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationStream {
    pub n: usize,
    pub filter: Option<Filter>,
    pub dedup: bool,
}

pub fn enumerate_simple(n: usize, filter: Option<Filter>, dedup: bool) -> Result<EnumerationStream, EnumerationError> {
    if n == 0 || n > MAX_WIRES {
        return Err(EnumerationError::NTooLarge(n));
    }
    Ok(EnumerationStream { n, filter, dedup })
}

/// One isomorphism class found by deduplication.
#[derive(Debug, Clone)]
pub struct IsomorphismClass {
    pub certificate: CanonicalCertificate,
    /// Lexicographically smallest word of the class.
    pub representative: WiringDiagram,
    /// Number of raw words in the class.
    pub words: usize,
}

impl EnumerationStream {
    /// Raw words passing the filter, lazily and in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = WiringDiagram> {
        let filter = self.filter;
        ReducedWords::new(self.n).filter(move |d| filter.is_none_or(|f| f.accepts(d)))
    }

    fn prefixes(&self) -> Vec<Vec<usize>> {
        let depth = crossing_count(self.n).min(3);
        let mut out = vec![Vec::new()];
        for _ in 0..depth {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..self.n - 1)
                        .map(move |t| {
                            let mut q = p.clone();
                            q.push(t);
                            q
                        })
                        .collect::<Vec<_>>()
                })
                .filter(|p| ReducedWords::with_prefix(self.n, p).is_some())
                .collect();
        }
        out
    }

    /// Unfiltered raw words split by a short prefix; concatenating the
    /// chunks in order gives lexicographic order.
    pub fn chunks(&self) -> Vec<ReducedWords> {
        self.prefixes()
            .iter()
            .map(|p| ReducedWords::with_prefix(self.n, p).expect("valid prefix"))
            .collect()
    }

    /// Raw words passing the filter, computed in parallel by prefix. The
    /// result is identical to [`EnumerationStream::iter`].
    pub fn collect_raw(&self) -> Vec<WiringDiagram> {
        let filter = self.filter;
        self.chunks()
            .into_par_iter()
            .map(|chunk| chunk.filter(|d| filter.is_none_or(|f| f.accepts(d))).collect::<Vec<_>>())
            .flatten()
            .collect()
    }

    /// Isomorphism classes among the filtered words, sorted by certificate.
    pub fn classes(&self) -> Vec<IsomorphismClass> {
        let mut by_key: BTreeMap<WiringDiagram, (WiringDiagram, usize)> = BTreeMap::new();
        for d in self.iter() {
            let entry = by_key.entry(d.symmetry_key()).or_insert_with(|| (d.clone(), 0));
            entry.1 += 1;
        }
        let keyed: Vec<(WiringDiagram, usize)> = by_key.into_values().collect();
        let certified: Vec<(CanonicalCertificate, WiringDiagram, usize)> = keyed
            .into_par_iter()
            .map(|(d, count)| (canonical_form(&d), d, count))
            .collect();
        let mut classes: BTreeMap<CanonicalCertificate, IsomorphismClass> = BTreeMap::new();
        for (cert, d, count) in certified {
            let class = classes.entry(cert.clone()).or_insert_with(|| IsomorphismClass {
                certificate: cert,
                representative: d.clone(),
                words: 0,
            });
            class.words += count;
            if d < class.representative {
                class.representative = d;
            }
        }
        classes.into_values().collect()
    }

    /// The diagrams this configuration emits: raw words, or one
    /// representative per class when deduplicating.
    pub fn diagrams(&self) -> Vec<WiringDiagram> {
        if self.dedup {
            self.classes().into_iter().map(|c| c.representative).collect()
        } else {
            self.collect_raw()
        }
    }

    pub fn count(&self) -> u128 {
        match (self.dedup, self.filter) {
            (false, None) => count_words(self.n),
            (false, Some(_)) => self.collect_raw().len() as u128,
            (true, _) => self.classes().len() as u128,
        }
    }
}
