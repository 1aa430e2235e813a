//! Observation tables `(Q, R, T)`: prefix-closed access words `Q`,
//! suffix-closed experiments `R`, and membership bits `T` over
//! `(Q ∪ Q·P)·R`.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::automaton::Row;
use crate::error::{Error, Result};
use crate::oracle::MembershipOracle;
use crate::word::{Symbol, Word};

/// `row(prefix · symbol)` matches no row of `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosednessWitness {
    pub prefix: Word,
    pub symbol: Symbol,
}

impl ClosednessWitness {
    pub fn word(&self) -> Word {
        self.prefix.push(self.symbol)
    }
}

/// `row(first) = row(second)` but `T(first·symbol·suffix)` differs from
/// `T(second·symbol·suffix)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyWitness {
    pub first: Word,
    pub second: Word,
    pub symbol: Symbol,
    pub suffix: Word,
}

impl ConsistencyWitness {
    /// The distinguishing experiment `symbol · suffix` added to `R`.
    pub fn experiment(&self) -> Word {
        self.suffix.prepend(self.symbol)
    }
}

#[derive(Clone, Debug)]
pub struct ObservationTable {
    alphabet_size: usize,
    prefixes: Vec<Word>,
    prefix_set: HashSet<Word>,
    suffixes: Vec<Word>,
    /// Membership answers keyed by the full word; doubles as the query cache.
    entries: HashMap<Word, bool>,
}

impl ObservationTable {
    /// `Q = R = {λ}` with `T` filled over `{λ} ∪ P`.
    pub fn new<O: MembershipOracle + ?Sized>(oracle: &O) -> Result<Self> {
        let alphabet_size = oracle.alphabet_size();
        if alphabet_size == 0 {
            return Err(Error::InvalidArgument("alphabet must be nonempty".into()));
        }
        let mut table = ObservationTable {
            alphabet_size,
            prefixes: vec![Word::empty()],
            prefix_set: HashSet::from([Word::empty()]),
            suffixes: vec![Word::empty()],
            entries: HashMap::new(),
        };
        table.fill(oracle)?;
        Ok(table)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// `Q` in insertion order.
    pub fn prefixes(&self) -> &[Word] {
        &self.prefixes
    }

    /// `R` in insertion order.
    pub fn suffixes(&self) -> &[Word] {
        &self.suffixes
    }

    /// `Q·P \ Q` in scan order (`Q` insertion order, then symbols ascending).
    pub fn extensions(&self) -> Vec<Word> {
        self.prefixes
            .iter()
            .flat_map(|q| (1..=self.alphabet_size).map(move |p| q.push(p)))
            .filter(|w| !self.prefix_set.contains(w))
            .collect()
    }

    pub fn contains_prefix(&self, w: &Word) -> bool {
        self.prefix_set.contains(w)
    }

    /// Number of distinct words whose membership is recorded.
    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, w: &Word) -> Option<bool> {
        self.entries.get(w).copied()
    }

    fn in_domain(&self, w: &Word) -> bool {
        self.prefix_set.contains(w)
            || (!w.is_empty() && self.prefix_set.contains(&w.prefix(w.len() - 1)))
    }

    /// Queries every missing entry of `(Q ∪ Q·P)·R`; returns how many new
    /// queries were issued.
    pub fn fill<O: MembershipOracle + ?Sized>(&mut self, oracle: &O) -> Result<usize> {
        let mut issued = 0;
        let rows: Vec<Word> = self
            .prefixes
            .iter()
            .cloned()
            .chain(self.extensions())
            .collect();
        for u in &rows {
            for r in &self.suffixes {
                let w = u.concat(r);
                if let Entry::Vacant(slot) = self.entries.entry(w) {
                    let bit = oracle.membership(slot.key())?;
                    slot.insert(bit);
                    issued += 1;
                }
            }
        }
        Ok(issued)
    }

    /// `(T(w·r))` over `R`, for `w ∈ Q ∪ Q·P`.
    pub fn row(&self, w: &Word) -> Result<Row> {
        if !self.in_domain(w) {
            return Err(Error::Table(format!("{w} is not in Q ∪ Q·P")));
        }
        self.suffixes
            .iter()
            .map(|r| {
                let key = w.concat(r);
                self.entries
                    .get(&key)
                    .copied()
                    .ok_or_else(|| Error::Table(format!("missing entry T({key})")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Row)
    }

    /// First `(q, p)` in scan order whose row matches no row of `Q`.
    pub fn closedness_witness(&self) -> Result<Option<ClosednessWitness>> {
        let q_rows = self
            .prefixes
            .iter()
            .map(|q| self.row(q))
            .collect::<Result<HashSet<_>>>()?;
        for q in &self.prefixes {
            for p in 1..=self.alphabet_size {
                let w = q.push(p);
                if !self.prefix_set.contains(&w) && !q_rows.contains(&self.row(&w)?) {
                    return Ok(Some(ClosednessWitness {
                        prefix: q.clone(),
                        symbol: p,
                    }));
                }
            }
        }
        Ok(None)
    }

    pub fn is_closed(&self) -> Result<bool> {
        Ok(self.closedness_witness()?.is_none())
    }

    /// Pairs are scanned with the later-inserted element outermost, newest
    /// first, and its earlier partner in insertion order; then symbols
    /// ascending, then `R` in insertion order.
    pub fn consistency_witness(&self) -> Result<Option<ConsistencyWitness>> {
        let rows = self
            .prefixes
            .iter()
            .map(|q| self.row(q))
            .collect::<Result<Vec<_>>>()?;
        for j in (0..self.prefixes.len()).rev() {
            for i in 0..j {
                if rows[i] != rows[j] {
                    continue;
                }
                let (first, second) = (&self.prefixes[i], &self.prefixes[j]);
                for p in 1..=self.alphabet_size {
                    let (a, b) = (first.push(p), second.push(p));
                    for r in &self.suffixes {
                        let ta = self.lookup(&a.concat(r))?;
                        let tb = self.lookup(&b.concat(r))?;
                        if ta != tb {
                            return Ok(Some(ConsistencyWitness {
                                first: first.clone(),
                                second: second.clone(),
                                symbol: p,
                                suffix: r.clone(),
                            }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_consistent(&self) -> Result<bool> {
        Ok(self.consistency_witness()?.is_none())
    }

    fn lookup(&self, w: &Word) -> Result<bool> {
        self.entries
            .get(w)
            .copied()
            .ok_or_else(|| Error::Table(format!("missing entry T({w})")))
    }

    /// Moves the first unmatched extension into `Q` and refills. Returns the
    /// witness that was repaired, or `None` if the table was already closed.
    pub fn fix_closedness<O: MembershipOracle + ?Sized>(
        &mut self,
        oracle: &O,
    ) -> Result<Option<ClosednessWitness>> {
        let Some(witness) = self.closedness_witness()? else {
            return Ok(None);
        };
        self.insert_prefix(witness.word());
        self.fill(oracle)?;
        Ok(Some(witness))
    }

    /// Adds the distinguishing experiment `p · r` to `R` and refills.
    pub fn fix_consistency<O: MembershipOracle + ?Sized>(
        &mut self,
        oracle: &O,
    ) -> Result<Option<ConsistencyWitness>> {
        let Some(witness) = self.consistency_witness()? else {
            return Ok(None);
        };
        let experiment = witness.experiment();
        debug_assert!(!self.suffixes.contains(&experiment));
        self.suffixes.push(experiment);
        self.fill(oracle)?;
        Ok(Some(witness))
    }

    /// Adds `w` and all of its nonempty prefixes to `Q` (shortest first) and
    /// refills.
    pub fn add_counterexample<O: MembershipOracle + ?Sized>(
        &mut self,
        w: &Word,
        oracle: &O,
    ) -> Result<()> {
        if w.is_empty() {
            return Err(Error::Table(
                "the empty word cannot be a counterexample".into(),
            ));
        }
        w.check_alphabet(self.alphabet_size)?;
        for prefix in w.prefixes().skip(1) {
            self.insert_prefix(prefix);
        }
        self.fill(oracle)?;
        Ok(())
    }

    fn insert_prefix(&mut self, w: Word) {
        if self.prefix_set.insert(w.clone()) {
            self.prefixes.push(w);
        }
    }

    /// `Q` is prefix-closed and `R` is suffix-closed.
    pub fn is_well_formed(&self) -> bool {
        let suffix_set: HashSet<&Word> = self.suffixes.iter().collect();
        self.prefixes
            .iter()
            .all(|q| q.prefixes().all(|p| self.prefix_set.contains(&p)))
            && self
                .suffixes
                .iter()
                .all(|r| (0..=r.len()).all(|j| suffix_set.contains(&r.suffix_from(j))))
    }

    /// Text grid: a header of `R`, the rows of `Q`, a separator, then the
    /// rows of `Q·P \ Q`. Each section is listed in length-lexicographic
    /// order.
    pub fn render(&self) -> String {
        let mut upper = self.prefixes.clone();
        upper.sort_by(Word::shortlex_cmp);
        let mut lower = self.extensions();
        lower.sort_by(Word::shortlex_cmp);

        let label_width = upper
            .iter()
            .chain(&lower)
            .map(|w| w.to_string().chars().count())
            .max()
            .unwrap_or(1);
        let headers: Vec<String> = self.suffixes.iter().map(Word::to_string).collect();
        let widths: Vec<usize> = headers.iter().map(|h| h.chars().count().max(1)).collect();

        let pad = |s: &str, width: usize| {
            let len = s.chars().count();
            format!("{s}{}", " ".repeat(width.saturating_sub(len)))
        };
        let rule = {
            let mut line = "-".repeat(label_width + 1);
            for w in &widths {
                line.push('+');
                line.push_str(&"-".repeat(w + 2));
            }
            line
        };
        let render_row = |out: &mut String, w: &Word| {
            let _ = write!(out, "{} ", pad(&w.to_string(), label_width));
            for (r, width) in self.suffixes.iter().zip(&widths) {
                let bit = match self.entries.get(&w.concat(r)) {
                    Some(true) => "1",
                    Some(false) => "0",
                    None => "?",
                };
                let _ = write!(out, "| {} ", pad(bit, *width));
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
        };

        let mut out = String::new();
        let _ = write!(out, "{} ", " ".repeat(label_width));
        for (h, width) in headers.iter().zip(&widths) {
            let _ = write!(out, "| {} ", pad(h, *width));
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');
        for w in &upper {
            render_row(&mut out, w);
        }
        out.push_str(&rule);
        out.push('\n');
        for w in &lower {
            render_row(&mut out, w);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::oracle::GrayBoxOracle;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn oracle() -> GrayBoxOracle {
        GrayBoxOracle::new(catalog::three_mode_system())
    }

    /// Table after the counterexample "12" has been processed.
    fn third_table(o: &GrayBoxOracle) -> ObservationTable {
        let mut t = ObservationTable::new(o).unwrap();
        t.fix_closedness(o).unwrap();
        t.add_counterexample(&w("12"), o).unwrap();
        t
    }

    #[test]
    fn first_table_is_open_but_consistent() {
        let o = oracle();
        let t = ObservationTable::new(&o).unwrap();
        assert_eq!(t.entry_count(), 4);
        assert_eq!(
            t.closedness_witness().unwrap(),
            Some(ClosednessWitness {
                prefix: Word::empty(),
                symbol: 2
            })
        );
        assert!(t.is_consistent().unwrap());
        assert_eq!(t.row(&w("2")).unwrap(), Row(vec![false]));
    }

    #[test]
    fn closedness_fix() {
        let o = oracle();
        let mut t = ObservationTable::new(&o).unwrap();
        let fixed = t.fix_closedness(&o).unwrap().unwrap();
        assert_eq!(fixed.word(), w("2"));
        assert_eq!(t.prefixes(), &[w("λ"), w("2")]);
        assert!(t.is_closed().unwrap());
        assert!(t.is_consistent().unwrap());
        assert_eq!(t.row(&Word::empty()).unwrap(), Row(vec![true]));
        // nothing more to repair
        let snapshot = t.render();
        assert!(t.fix_closedness(&o).unwrap().is_none());
        assert!(t.fix_consistency(&o).unwrap().is_none());
        assert_eq!(t.render(), snapshot);
    }

    #[test]
    fn counterexample_then_consistency_fix() {
        let o = oracle();
        let mut t = third_table(&o);
        assert_eq!(t.prefixes(), &[w("λ"), w("2"), w("1"), w("12")]);
        assert!(t.is_closed().unwrap());
        let witness = t.consistency_witness().unwrap().unwrap();
        assert_eq!(
            witness,
            ConsistencyWitness {
                first: w("1"),
                second: w("12"),
                symbol: 2,
                suffix: Word::empty()
            }
        );
        t.fix_consistency(&o).unwrap();
        assert_eq!(t.suffixes(), &[w("λ"), w("2")]);
        assert!(t.is_closed().unwrap());
        assert!(t.is_consistent().unwrap());
        assert_eq!(t.row(&w("1")).unwrap(), Row(vec![true, true]));
        assert_eq!(t.row(&w("2")).unwrap(), Row(vec![false, false]));
        assert!(t.is_well_formed());
    }

    #[test]
    fn counterexample_prefixes_and_idempotence() {
        let o = oracle();
        let mut t = ObservationTable::new(&o).unwrap();
        t.fix_closedness(&o).unwrap();
        t.add_counterexample(&w("121"), &o).unwrap();
        assert_eq!(t.prefixes(), &[w("λ"), w("2"), w("1"), w("12"), w("121")]);
        let before = (t.prefixes().to_vec(), t.entry_count());
        let queries = o.stats().membership_queries;
        t.add_counterexample(&w("12"), &o).unwrap();
        assert_eq!((t.prefixes().to_vec(), t.entry_count()), before);
        assert_eq!(o.stats().membership_queries, queries);
        assert!(t.add_counterexample(&Word::empty(), &o).is_err());
    }

    #[test]
    fn row_outside_domain() {
        let o = oracle();
        let t = ObservationTable::new(&o).unwrap();
        assert!(t.row(&w("11")).is_err());
    }

    #[test]
    fn render_layout() {
        let o = oracle();
        let mut t = third_table(&o);
        t.fix_consistency(&o).unwrap();
        let text = t.render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "    | λ | 2");
        assert_eq!(lines[2], "λ   | 1 | 0");
        assert_eq!(lines[5], "12  | 1 | 0");
        assert_eq!(lines[7], "3   | 0 | 0");
        assert_eq!(lines.last().unwrap(), &"123 | 0 | 0");
    }
}
