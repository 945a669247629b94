//! Deterministic coset enumeration for presentations whose generators are
//! all involutions.
//!
//! The enumerator is deduction-driven: defining one table entry triggers
//! scans of every relator through the new edge, and scans that close with a
//! single gap push further deductions. When the deduction queue drains, the
//! first undefined entry in scan order is defined. Since every generator is
//! an involution, each column is its own inverse and setting `c·g = d` also
//! sets `d·g = c`.

use crate::error::{Error, Result};
use crate::groups::{GenSym, Presentation, Word};
use std::collections::HashMap;
use std::collections::VecDeque;

const UNDEF: u32 = u32::MAX;

/// Result of an enumeration run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TcStatus {
    /// The table closed; the subgroup has this index.
    Complete { index: usize },
    /// The coset limit was reached; the run is inconclusive.
    LimitExceeded,
}

/// A standardized coset table: live cosets renumbered by first appearance
/// in a breadth-first scan from the subgroup coset.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub status: TcStatus,
    pub generators: Vec<GenSym>,
    /// `table[c][g]` is the coset `c · generators[g]`; present only when
    /// complete.
    pub table: Vec<Vec<u32>>,
}

impl CosetTable {
    /// Index of the subgroup when the enumeration completed.
    pub fn index(&self) -> Option<usize> {
        match self.status {
            TcStatus::Complete { index } => Some(index),
            TcStatus::LimitExceeded => None,
        }
    }

    /// Traces a word from a coset through the completed table.
    pub fn trace(&self, start: usize, w: &Word) -> Result<usize> {
        let lookup: HashMap<GenSym, usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i))
            .collect();
        let mut c = start;
        for g in &w.0 {
            let col = *lookup
                .get(g)
                .ok_or_else(|| Error::Domain(format!("{g} is not a table generator")))?;
            c = self.table[c][col] as usize;
        }
        Ok(c)
    }
}

struct Enumerator {
    num_gens: usize,
    /// Flat table, `coset * num_gens + gen`.
    table: Vec<u32>,
    parent: Vec<u32>,
    /// Relators by generator: `(relator id, position)` pairs.
    relators: Vec<Vec<u16>>,
    occurrences: Vec<Vec<(u32, u32)>>,
    deductions: Vec<(u32, u16)>,
    coincidences: VecDeque<(u32, u32)>,
    max_cosets: usize,
}

impl Enumerator {
    fn find(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let up = self.parent[self.parent[c as usize] as usize];
            self.parent[c as usize] = up;
            c = up;
        }
        c
    }

    fn get(&self, c: u32, g: u16) -> u32 {
        self.table[c as usize * self.num_gens + g as usize]
    }

    fn entry(&mut self, c: u32, g: u16) -> &mut u32 {
        &mut self.table[c as usize * self.num_gens + g as usize]
    }

    fn live_count(&self) -> usize {
        self.parent
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p as usize == i)
            .count()
    }

    fn new_coset(&mut self) -> Option<u32> {
        if self.parent.len() >= self.max_cosets {
            return None;
        }
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.table.extend(std::iter::repeat_n(UNDEF, self.num_gens));
        Some(id)
    }

    /// Sets `c·g = d` (and `d·g = c`) and records the deductions.
    fn set_edge(&mut self, c: u32, g: u16, d: u32) {
        *self.entry(c, g) = d;
        *self.entry(d, g) = c;
        self.deductions.push((c, g));
        if d != c {
            self.deductions.push((d, g));
        }
    }

    /// Declares two cosets equal and merges tables until stable.
    fn coincide(&mut self, a: u32, b: u32) {
        self.coincidences.push_back((a, b));
        while let Some((a, b)) = self.coincidences.pop_front() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop as usize] = keep;
            for g in 0..self.num_gens as u16 {
                let image = self.get(drop, g);
                if image == UNDEF {
                    continue;
                }
                let image = self.find(image);
                let existing = self.get(keep, g);
                if existing == UNDEF {
                    self.set_edge(keep, g, image);
                } else {
                    let existing = self.find(existing);
                    if existing != image {
                        self.coincidences.push_back((existing, image));
                    }
                }
            }
        }
    }

    /// Scans a relator rotated to start at `pos` from the coset `c`: walks
    /// forward and backward as far as the table allows, closing a single
    /// gap by deduction and reporting a full-circle mismatch as a
    /// coincidence.
    fn scan_anchored(&mut self, c: u32, rel_id: u32, pos: u32) {
        let len = self.relators[rel_id as usize].len();
        let at = |me: &Self, k: usize| me.relators[rel_id as usize][(pos as usize + k) % len];
        let mut i = 0usize;
        let mut f = self.find(c);
        while i < len {
            let g = at(self, i);
            let next = self.get(f, g);
            if next == UNDEF {
                break;
            }
            f = self.find(next);
            i += 1;
        }
        if i == len {
            let home = self.find(c);
            if f != home {
                self.coincide(f, home);
            }
            return;
        }
        let mut j = len;
        let mut b = self.find(c);
        while j > i + 1 {
            let g = at(self, j - 1);
            let prev = self.get(b, g);
            if prev == UNDEF {
                break;
            }
            b = self.find(prev);
            j -= 1;
        }
        if j == i + 1 {
            // exactly one gap: f · rel[i] = b
            let g = at(self, i);
            self.set_edge(f, g, b);
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, g)) = self.deductions.pop() {
            if self.parent[c as usize] != c {
                // dead coset; coincide re-queued its surviving image
                continue;
            }
            let count = self.occurrences[g as usize].len();
            for k in 0..count {
                let (rel_id, pos) = self.occurrences[g as usize][k];
                self.scan_anchored(c, rel_id, pos);
            }
        }
    }
}

/// Runs coset enumeration for the subgroup generated by the given words.
/// `max_cosets` bounds the total number of cosets ever defined; hitting the
/// bound yields `LimitExceeded`, never a wrong order.
pub fn todd_coxeter(
    presentation: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::Domain("max_cosets must be positive".into()));
    }
    let generators = presentation.generators.clone();
    let num_gens = generators.len();
    let lookup: HashMap<GenSym, u16> = generators
        .iter()
        .enumerate()
        .map(|(i, &g)| (g, i as u16))
        .collect();
    let to_indices = |w: &Word| -> Result<Vec<u16>> {
        w.0.iter()
            .map(|g| {
                lookup
                    .get(g)
                    .copied()
                    .ok_or_else(|| Error::Domain(format!("{g} is not a generator")))
            })
            .collect()
    };
    let mut relators: Vec<Vec<u16>> = Vec::new();
    for r in &presentation.relators {
        let idx = to_indices(&r.reduced())?;
        if !idx.is_empty() {
            relators.push(idx);
        }
    }
    let mut occurrences: Vec<Vec<(u32, u32)>> = vec![Vec::new(); num_gens];
    for (rid, rel) in relators.iter().enumerate() {
        for (pos, &g) in rel.iter().enumerate() {
            occurrences[g as usize].push((rid as u32, pos as u32));
        }
    }
    let mut e = Enumerator {
        num_gens,
        table: vec![UNDEF; num_gens],
        parent: vec![0],
        relators,
        occurrences,
        deductions: Vec::new(),
        coincidences: VecDeque::new(),
        max_cosets,
    };

    // the subgroup coset is fixed by the subgroup generators: trace each
    // word from coset 0, defining cosets along the way, and close the loop
    for w in subgroup {
        let idx = to_indices(&w.reduced())?;
        if idx.is_empty() {
            continue;
        }
        let mut c = 0u32;
        for (k, &g) in idx.iter().enumerate() {
            let c_live = e.find(c);
            let next = e.get(c_live, g);
            if next != UNDEF {
                c = e.find(next);
            } else if k + 1 == idx.len() {
                let home = e.find(0);
                e.set_edge(c_live, g, home);
                c = home;
            } else {
                let Some(new) = e.new_coset() else {
                    return Ok(CosetTable {
                        status: TcStatus::LimitExceeded,
                        generators,
                        table: Vec::new(),
                    });
                };
                e.set_edge(c_live, g, new);
                c = new;
            }
            e.process_deductions();
        }
        let end = e.find(c);
        let home = e.find(0);
        if end != home {
            e.coincide(end, home);
            e.process_deductions();
        }
    }

    // main loop: fill the first undefined entry in scan order
    let mut cursor: u32 = 0;
    loop {
        e.process_deductions();
        // advance to the next live coset with an undefined entry
        let mut found = None;
        let mut c = cursor;
        while (c as usize) < e.parent.len() {
            if e.find(c) == c {
                if let Some(g) = (0..e.num_gens as u16).find(|&g| {
                    e.get(c, g) == UNDEF
                }) {
                    found = Some((c, g));
                    break;
                }
            }
            c += 1;
        }
        cursor = c;
        match found {
            None => break,
            Some((c, g)) => {
                let Some(new) = e.new_coset() else {
                    return Ok(CosetTable {
                        status: TcStatus::LimitExceeded,
                        generators,
                        table: Vec::new(),
                    });
                };
                e.set_edge(c, g, new);
            }
        }
    }

    // standardize: renumber live cosets by breadth-first discovery from 0
    let live = e.live_count();
    let mut number: HashMap<u32, u32> = HashMap::new();
    let mut order: Vec<u32> = Vec::with_capacity(live);
    let root = e.find(0);
    number.insert(root, 0);
    order.push(root);
    let mut head = 0usize;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for g in 0..num_gens as u16 {
            let d = e.find(e.get(c, g));
            if !number.contains_key(&d) {
                number.insert(d, order.len() as u32);
                order.push(d);
            }
        }
    }
    debug_assert_eq!(order.len(), live);
    let table: Vec<Vec<u32>> = order
        .iter()
        .map(|&c| {
            (0..num_gens as u16)
                .map(|g| number[&e.find(e.get(c, g))])
                .collect()
        })
        .collect();
    Ok(CosetTable {
        status: TcStatus::Complete { index: live },
        generators,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{stated_presentation, PresVariant};

    fn trivial() -> Vec<Word> {
        Vec::new()
    }

    #[test]
    fn weighted_top_group_orders() {
        let p = stated_presentation(4, 3, PresVariant::Full).unwrap();
        let t = todd_coxeter(&p, &trivial(), 100_000).unwrap();
        assert_eq!(t.index(), Some(48));

        let p = stated_presentation(5, 4, PresVariant::Full).unwrap();
        let t = todd_coxeter(&p, &trivial(), 100_000).unwrap();
        assert_eq!(t.index(), Some(240));
    }

    #[test]
    fn sigma_subgroup_has_index_two() {
        let p = stated_presentation(4, 3, PresVariant::Full).unwrap();
        let subgroup: Vec<Word> = (1..4).map(|i| Word(vec![GenSym::sigma(i)])).collect();
        let t = todd_coxeter(&p, &subgroup, 100_000).unwrap();
        assert_eq!(t.index(), Some(2));
    }

    #[test]
    fn classical_group_is_inconclusive() {
        let p = stated_presentation(4, 1, PresVariant::Full).unwrap();
        let t = todd_coxeter(&p, &trivial(), 20_000).unwrap();
        assert_eq!(t.status, TcStatus::LimitExceeded);
    }

    #[test]
    fn table_is_closed_and_deterministic() {
        let p = stated_presentation(4, 3, PresVariant::Full).unwrap();
        let t1 = todd_coxeter(&p, &trivial(), 100_000).unwrap();
        let t2 = todd_coxeter(&p, &trivial(), 100_000).unwrap();
        assert_eq!(t1.table, t2.table);
        // closure under all relators
        for r in &p.relators {
            for c in 0..t1.table.len() {
                assert_eq!(t1.trace(c, r).unwrap(), c);
            }
        }
    }

    #[test]
    fn oriented_group_has_half_order() {
        let p = stated_presentation(4, 3, PresVariant::Oriented).unwrap();
        let t = todd_coxeter(&p, &trivial(), 100_000).unwrap();
        assert_eq!(t.index(), Some(24));
    }
}

