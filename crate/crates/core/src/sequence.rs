//! Lazy fuzzy-number sequences and the generalized difference operator.
//!
//! Indices are 1-based. `(Δ⁰X)_k = X_k`, `(Δ¹X)_k = X_k − X_{k+1}` with
//! interval subtraction, and `Δ^m = Δ¹ ∘ Δ^{m−1}`, so `(Δ^m X)_k` reads
//! exactly the terms `X_k, …, X_{k+m}`.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::fuzzy::FuzzyNumber;
use crate::math;

/// Index from which representative indices are searched; far enough out that
/// the small-index coincidences of the reference sequences (1 is a cube and a
/// square) are irrelevant.
pub const REPRESENTATIVE_BASE: u64 = 1_000_000;

/// A deterministic map `k ↦ X_k` for `k >= 1`.
pub trait FuzzySequence {
    fn term(&self, k: u64) -> FuzzyNumber;

    /// An index whose Δ^m value belongs to the sequence's dominant index
    /// class; used to derive a limit candidate.
    fn representative_index(&self, _m: u32) -> u64 {
        REPRESENTATIVE_BASE
    }
}

impl<S: FuzzySequence + ?Sized> FuzzySequence for &S {
    fn term(&self, k: u64) -> FuzzyNumber {
        (**self).term(k)
    }
    fn representative_index(&self, m: u32) -> u64 {
        (**self).representative_index(m)
    }
}

impl<S: FuzzySequence + ?Sized> FuzzySequence for Box<S> {
    fn term(&self, k: u64) -> FuzzyNumber {
        (**self).term(k)
    }
    fn representative_index(&self, m: u32) -> u64 {
        (**self).representative_index(m)
    }
}

impl<S: FuzzySequence + ?Sized> FuzzySequence for Arc<S> {
    fn term(&self, k: u64) -> FuzzyNumber {
        (**self).term(k)
    }
    fn representative_index(&self, m: u32) -> u64 {
        (**self).representative_index(m)
    }
}

/// Collapses `terms` (X_k … X_{k+m}) in place to `(Δ^m X)_k`.
fn collapse(terms: &mut Vec<FuzzyNumber>) -> FuzzyNumber {
    while terms.len() > 1 {
        for i in 0..terms.len() - 1 {
            terms[i] = terms[i].sub(&terms[i + 1]);
        }
        terms.pop();
    }
    terms.pop().expect("non-empty window")
}

/// `Δ^m X` as a sequence in its own right.
#[derive(Debug, Clone)]
pub struct Difference<S> {
    inner: S,
    order: u32,
}

impl<S: FuzzySequence> Difference<S> {
    pub fn new(inner: S, order: u32) -> Self {
        Difference { inner, order }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }

    /// Streams `(k, (Δ^m X)_k)` over `range`, evaluating each `X_k` once.
    pub fn window(&self, range: RangeInclusive<u64>) -> DifferenceWindow<'_, S> {
        DifferenceWindow::new(&self.inner, self.order, range)
    }
}

impl<S: FuzzySequence> FuzzySequence for Difference<S> {
    fn term(&self, k: u64) -> FuzzyNumber {
        let mut terms: Vec<FuzzyNumber> = (k..=k + u64::from(self.order))
            .map(|j| self.inner.term(j))
            .collect();
        collapse(&mut terms)
    }

    fn representative_index(&self, m: u32) -> u64 {
        self.inner.representative_index(m + self.order)
    }
}

/// Sliding window of the last `m + 1` raw terms; O(m) memory regardless of
/// how far out the range sits.
pub struct DifferenceWindow<'a, S: ?Sized> {
    seq: &'a S,
    order: u32,
    next: u64,
    end: u64,
    done: bool,
    raw: VecDeque<FuzzyNumber>,
    scratch: Vec<FuzzyNumber>,
}

impl<'a, S: FuzzySequence + ?Sized> DifferenceWindow<'a, S> {
    pub fn new(seq: &'a S, order: u32, range: RangeInclusive<u64>) -> Self {
        let (start, end) = range.into_inner();
        assert!(start >= 1, "sequences are indexed from 1");
        DifferenceWindow {
            seq,
            order,
            next: start,
            end,
            done: start > end,
            raw: VecDeque::with_capacity(order as usize + 1),
            scratch: Vec::with_capacity(order as usize + 1),
        }
    }
}

impl<S: FuzzySequence + ?Sized> Iterator for DifferenceWindow<'_, S> {
    type Item = (u64, FuzzyNumber);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let k = self.next;
        let width = self.order as usize + 1;
        if self.raw.is_empty() {
            for j in 0..width as u64 {
                self.raw.push_back(self.seq.term(k + j));
            }
        } else {
            self.raw.pop_front();
            self.raw.push_back(self.seq.term(k + u64::from(self.order)));
        }
        let value = if self.order == 0 {
            self.raw[0].clone()
        } else {
            self.scratch.clear();
            self.scratch.extend(self.raw.iter().cloned());
            collapse(&mut self.scratch)
        };
        if k == self.end {
            self.done = true;
        } else {
            self.next = k + 1;
        }
        Some((k, value))
    }
}

/// Index classes usable in rule-based sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexClass {
    Cube,
    Square,
    Even,
    All,
}

impl IndexClass {
    pub fn contains(&self, k: u64) -> bool {
        match self {
            IndexClass::Cube => math::is_cube(k),
            IndexClass::Square => math::is_square(k),
            IndexClass::Even => k.is_multiple_of(2),
            IndexClass::All => true,
        }
    }

    /// Classes of density zero.
    pub fn is_sparse(&self) -> bool {
        matches!(self, IndexClass::Cube | IndexClass::Square)
    }

    pub fn name(&self) -> &'static str {
        match self {
            IndexClass::Cube => "cube",
            IndexClass::Square => "square",
            IndexClass::Even => "even",
            IndexClass::All => "all",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "cube" => Some(IndexClass::Cube),
            "square" => Some(IndexClass::Square),
            "even" => Some(IndexClass::Even),
            "all" => Some(IndexClass::All),
            _ => None,
        }
    }
}

impl fmt::Display for IndexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub class: IndexClass,
    pub value: FuzzyNumber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleError {
    Empty,
    /// The last rule must use the `all` class.
    MissingTerminalAll,
}

impl fmt::Display for RuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleError::Empty => f.write_str("rule list is empty"),
            RuleError::MissingTerminalAll => {
                f.write_str("the last rule must have indexClass \"all\"")
            }
        }
    }
}

impl core::error::Error for RuleError {}

/// First-match-wins list of `(index class, value)` rules ending in `all`.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleSequence {
    rules: Vec<Rule>,
}

impl RuleSequence {
    pub fn new(rules: Vec<Rule>) -> Result<Self, RuleError> {
        match rules.last() {
            None => Err(RuleError::Empty),
            Some(r) if r.class != IndexClass::All => Err(RuleError::MissingTerminalAll),
            Some(_) => Ok(RuleSequence { rules }),
        }
    }

    pub fn constant(value: FuzzyNumber) -> Self {
        RuleSequence {
            rules: alloc::vec![Rule {
                class: IndexClass::All,
                value
            }],
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    fn rule_for(&self, k: u64) -> &Rule {
        self.rules
            .iter()
            .find(|r| r.class.contains(k))
            .expect("terminal all rule")
    }
}

impl FuzzySequence for RuleSequence {
    fn term(&self, k: u64) -> FuzzyNumber {
        self.rule_for(k).value.clone()
    }

    /// Smallest even `k >= 10⁶` whose window `k..=k+m` avoids every sparse class in use.
    fn representative_index(&self, m: u32) -> u64 {
        let sparse: Vec<IndexClass> = self
            .rules
            .iter()
            .map(|r| r.class)
            .filter(IndexClass::is_sparse)
            .collect();
        let mut k = REPRESENTATIVE_BASE;
        while (k..=k + u64::from(m)).any(|j| sparse.iter().any(|c| c.contains(j))) {
            k += 2;
        }
        k
    }
}

/// A finite table of terms, extended periodically: `X_k = terms[(k − 1) mod n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedSequence {
    terms: Vec<FuzzyNumber>,
}

impl TabulatedSequence {
    pub fn new(terms: Vec<FuzzyNumber>) -> Option<Self> {
        if terms.is_empty() {
            None
        } else {
            Some(TabulatedSequence { terms })
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl FuzzySequence for TabulatedSequence {
    fn term(&self, k: u64) -> FuzzyNumber {
        self.terms[((k - 1) % self.terms.len() as u64) as usize].clone()
    }

    fn representative_index(&self, _m: u32) -> u64 {
        1
    }
}
