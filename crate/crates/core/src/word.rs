//! Finite words over the subsystem alphabet `{1, …, N}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A subsystem index. Indices are 1-based everywhere outside of internal
/// adjacency tables.
pub type Symbol = usize;

/// Default cap on the number of words [`all_words_up_to`] may enumerate.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 20_000_000;

/// A finite sequence of subsystem indices. The empty word is written `λ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: impl Into<Vec<Symbol>>) -> Self {
        Word(symbols.into())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The first `j` symbols.
    pub fn prefix(&self, j: usize) -> Word {
        Word(self.0[..j.min(self.0.len())].to_vec())
    }

    /// The symbols from position `j` on, so that
    /// `w == w.prefix(j).concat(&w.suffix_from(j))`.
    pub fn suffix_from(&self, j: usize) -> Word {
        Word(self.0[j.min(self.0.len())..].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.0);
        symbols.extend_from_slice(&other.0);
        Word(symbols)
    }

    /// `self · p`
    pub fn push(&self, p: Symbol) -> Word {
        let mut symbols = self.0.clone();
        symbols.push(p);
        Word(symbols)
    }

    /// `p · self`
    pub fn prepend(&self, p: Symbol) -> Word {
        let mut symbols = Vec::with_capacity(self.len() + 1);
        symbols.push(p);
        symbols.extend_from_slice(&self.0);
        Word(symbols)
    }

    /// All prefixes from `λ` up to and including the word itself.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(move |j| self.prefix(j))
    }

    pub fn check_alphabet(&self, alphabet_size: usize) -> Result<()> {
        match self.0.iter().find(|&&p| p == 0 || p > alphabet_size) {
            Some(&symbol) => Err(Error::InvalidSymbol {
                symbol,
                alphabet_size,
            }),
            None => Ok(()),
        }
    }

    /// Length-then-lexicographic ordering, the order in which
    /// [`all_words_up_to`] yields words.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }
}

impl fmt::Display for Word {
    /// `λ` for the empty word; digits run together when every symbol is a
    /// single digit ("121"), otherwise symbols are separated by dots.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("λ");
        }
        let sep = if self.0.iter().all(|&p| p < 10) {
            ""
        } else {
            "."
        };
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "λ" || s == "lambda" {
            return Ok(Word::empty());
        }
        let bad = || Error::Parse(format!("invalid word {s:?}"));
        let symbols = if s.contains('.') {
            s.split('.')
                .map(|t| t.parse::<Symbol>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as Symbol).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(symbols))
    }
}

/// Number of words of length `0..=max_len` over `alphabet_size` symbols,
/// saturating at `u64::MAX`.
pub fn count_words_up_to(alphabet_size: usize, max_len: usize) -> u64 {
    let n = alphabet_size as u64;
    let mut total: u64 = 0;
    let mut layer: u64 = 1;
    for len in 0..=max_len {
        total = total.saturating_add(layer);
        if len < max_len {
            layer = layer.saturating_mul(n);
        }
    }
    total
}

/// Enumerates `λ` followed by every word of length `1..=max_len` in
/// length-then-lexicographic order.
///
/// Fails with [`Error::EnumerationBudget`] before yielding anything when the
/// total count exceeds `budget`.
pub fn all_words_up_to(alphabet_size: usize, max_len: usize, budget: u64) -> Result<WordStream> {
    if alphabet_size == 0 {
        return Err(Error::InvalidArgument(
            "alphabet size must be at least 1".into(),
        ));
    }
    let total = count_words_up_to(alphabet_size, max_len);
    if total > budget {
        return Err(Error::EnumerationBudget {
            required: total,
            budget,
        });
    }
    Ok(WordStream {
        alphabet_size,
        max_len,
        current: Some(Vec::new()),
    })
}

/// Iterator returned by [`all_words_up_to`].
#[derive(Clone, Debug)]
pub struct WordStream {
    alphabet_size: usize,
    max_len: usize,
    current: Option<Vec<Symbol>>,
}

impl WordStream {
    fn advance(&self, word: &[Symbol]) -> Option<Vec<Symbol>> {
        let mut next = word.to_vec();
        // odometer increment within the current length
        for i in (0..next.len()).rev() {
            if next[i] < self.alphabet_size {
                next[i] += 1;
                return Some(next);
            }
            next[i] = 1;
        }
        if word.len() < self.max_len {
            Some(vec![1; word.len() + 1])
        } else {
            None
        }
    }
}

impl Iterator for WordStream {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let word = self.current.take()?;
        self.current = self.advance(&word);
        Some(Word(word))
    }
}
