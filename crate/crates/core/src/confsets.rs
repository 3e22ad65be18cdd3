//! Terminator sets and the configuration-indexed memo table.
//!
//! A [`ConfSet`] pairs an unsorted item list with a boolean membership table
//! of length `n_conf`. The table is only materialized once a set holds two
//! elements, and it is taken from (and returned to) a per-run [`SetPool`], so
//! creating an empty or singleton set costs O(1) and a union costs
//! O(|other|).

use std::rc::Rc;

use crate::error::{Error, Result};
use crate::metrics::Metrics;

/// Frozen terminator set as stored in the memo table and returned by engines.
pub type Terminators = Rc<[usize]>;

/// Recycles membership tables within one run.
#[derive(Debug)]
pub struct SetPool {
    capacity: usize,
    free: Vec<Vec<bool>>,
    allocated: usize,
}

impl SetPool {
    pub fn new(capacity: usize) -> SetPool {
        SetPool { capacity, free: Vec::new(), allocated: 0 }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Number of membership tables allocated so far.
    pub fn allocated(&self) -> usize {
        self.allocated
    }

    fn take(&mut self) -> Vec<bool> {
        self.free.pop().unwrap_or_else(|| {
            self.allocated += 1;
            vec![false; self.capacity]
        })
    }

    fn give(&mut self, table: Vec<bool>) {
        debug_assert!(table.iter().all(|&b| !b));
        self.free.push(table);
    }
}

#[derive(Debug, Clone, Copy)]
pub enum SetKind {
    Empty,
    Singleton(usize),
}

#[derive(Debug, Clone)]
pub struct ConfSet {
    items: Vec<usize>,
    member: Option<Vec<bool>>,
    capacity: usize,
}

impl ConfSet {
    pub fn make(kind: SetKind, capacity: usize) -> Result<ConfSet> {
        match kind {
            SetKind::Empty => Ok(ConfSet::empty(capacity)),
            SetKind::Singleton(i) => ConfSet::singleton(i, capacity),
        }
    }

    pub fn empty(capacity: usize) -> ConfSet {
        ConfSet { items: Vec::new(), member: None, capacity }
    }

    pub fn singleton(index: usize, capacity: usize) -> Result<ConfSet> {
        if index >= capacity {
            return Err(Error::IndexOutOfRange { index, capacity });
        }
        Ok(ConfSet { items: vec![index], member: None, capacity })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        match &self.member {
            Some(m) => m.get(index).copied().unwrap_or(false),
            None => self.items.first() == Some(&index),
        }
    }

    /// Adds `index`; returns whether it was new.
    pub fn insert(&mut self, index: usize, pool: &mut SetPool) -> Result<bool> {
        if index >= self.capacity {
            return Err(Error::IndexOutOfRange { index, capacity: self.capacity });
        }
        if self.contains(index) {
            return Ok(false);
        }
        if self.member.is_none() && !self.items.is_empty() {
            let mut table = pool.take();
            for &i in &self.items {
                table[i] = true;
            }
            self.member = Some(table);
        }
        if let Some(m) = &mut self.member {
            m[index] = true;
        }
        self.items.push(index);
        Ok(true)
    }

    /// `self := self ∪ other`, charging one element operation per item of `other`.
    pub fn union_into(&mut self, other: &ConfSet, pool: &mut SetPool, metrics: &mut Metrics) -> Result<()> {
        if other.capacity != self.capacity {
            return Err(Error::CapacityMismatch(self.capacity, other.capacity));
        }
        self.union_items(&other.items, pool, metrics)
    }

    pub fn union_items(&mut self, other: &[usize], pool: &mut SetPool, metrics: &mut Metrics) -> Result<()> {
        metrics.union_elem_ops += other.len() as u64;
        for &i in other {
            self.insert(i, pool)?;
        }
        Ok(())
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.items
    }

    /// Hands the membership table back to the pool, keeping only the items.
    pub fn freeze(mut self, pool: &mut SetPool) -> Terminators {
        if let Some(mut table) = self.member.take() {
            for &i in &self.items {
                table[i] = false;
            }
            pool.give(table);
        }
        self.items.into()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Undef,
    Visited,
    MemoD(usize),
    MemoN(Terminators),
}

impl Entry {
    fn slot(&self) -> usize {
        match self {
            Entry::Undef => 0,
            Entry::Visited => 1,
            Entry::MemoD(_) => 2,
            Entry::MemoN(_) => 3,
        }
    }

    pub fn name(&self) -> &'static str {
        ENTRY_NAMES[self.slot()]
    }
}

const ENTRY_NAMES: [&str; 4] = ["Undef", "Visited", "MemoD", "MemoN"];

/// Transition counts between entry kinds, indexed `[from][to]` in the order
/// Undef, Visited, MemoD, MemoN.
pub type TransitionCounts = [[u64; 4]; 4];

/// Dense memo table indexed by configuration.
#[derive(Debug, Clone)]
pub struct ConfTable {
    entries: Vec<Entry>,
    transitions: TransitionCounts,
}

impl ConfTable {
    pub fn new(n_conf: usize) -> ConfTable {
        ConfTable { entries: vec![Entry::Undef; n_conf], transitions: [[0; 4]; 4] }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> &Entry {
        &self.entries[index]
    }

    /// Stores `entry`, rejecting any transition other than
    /// Undef→Visited, Undef→MemoD, Visited→Undef, Visited→MemoD and Visited→MemoN.
    pub fn set(&mut self, index: usize, entry: Entry) -> Result<()> {
        let from = self.entries[index].slot();
        let to = entry.slot();
        let legal = matches!((from, to), (0, 1) | (0, 2) | (1, 0) | (1, 2) | (1, 3));
        if !legal {
            return Err(Error::IllegalTransition { index, from: ENTRY_NAMES[from], to: ENTRY_NAMES[to] });
        }
        self.transitions[from][to] += 1;
        self.entries[index] = entry;
        Ok(())
    }

    pub fn transitions(&self) -> &TransitionCounts {
        &self.transitions
    }

    pub fn all_undef(&self) -> bool {
        self.entries.iter().all(|e| *e == Entry::Undef)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Entry)> {
        self.entries.iter().enumerate()
    }
}
