//! Word redressing (right reversing).
//!
//! A signed word is rewritten by replacing every factor `x^-1 y` with
//! `(x\y)(y\x)^-1` until it has the shape `P N^-1`. Applied to `u^-1 v`
//! this yields the word complements `u\v = P` and `v\u = N`.
//!
//! Redressing need not terminate for an arbitrary complemented
//! presentation, so every computation carries a cell budget.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::words::{inverse_of, ComplementTable, Gen, Letter, Word};

/// Default bound on the number of elementary `x^-1 y` replacements.
pub const DEFAULT_MAX_CELLS: usize = 1_000_000;

/// Redressing over a fixed complement table.
#[derive(Debug, Clone, Copy)]
pub struct Reversing<'a> {
    table: &'a ComplementTable,
    max_cells: usize,
}

impl<'a> Reversing<'a> {
    pub fn new(table: &'a ComplementTable) -> Self {
        Reversing {
            table,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }

    pub fn with_max_cells(table: &'a ComplementTable, max_cells: usize) -> Self {
        Reversing { table, max_cells }
    }

    pub fn table(&self) -> &'a ComplementTable {
        self.table
    }

    pub fn max_cells(&self) -> usize {
        self.max_cells
    }

    /// Reverses `w` into `num · den^-1`, returning `(num, den)`.
    ///
    /// Fails with `NotComplemented` if a required letter complement is
    /// missing and with `ResourceLimit` when the cell budget runs out.
    pub fn split(&self, w: &[Letter]) -> Result<(Word, Word)> {
        // `done` always has the shape P N^-1.
        let mut done: Vec<Letter> = Vec::with_capacity(w.len());
        let mut todo: VecDeque<Letter> = w.iter().copied().collect();
        let mut cells = 0usize;
        while let Some(l) = todo.pop_front() {
            if l.inverse {
                done.push(l);
                continue;
            }
            match done.last() {
                Some(top) if top.inverse => {
                    let x = top.gen;
                    let y = l.gen;
                    done.pop();
                    if x == y {
                        continue;
                    }
                    cells += 1;
                    if cells > self.max_cells {
                        return Err(Error::limit("reversing cells", self.max_cells));
                    }
                    let (xy, yx) = match (self.table.get(x, y), self.table.get(y, x)) {
                        (Some(a), Some(b)) => (a, b),
                        _ => {
                            let a = self.table.alphabet();
                            return Err(Error::NotComplemented {
                                x: a.name(x).to_string(),
                                y: a.name(y).to_string(),
                                count: 0,
                            });
                        }
                    };
                    // x^-1 y -> (x\y) (y\x)^-1, pushed back in front of the rest.
                    for &g in yx.iter() {
                        todo.push_front(Letter::neg(g));
                    }
                    for &g in xy.iter().rev() {
                        todo.push_front(Letter::pos(g));
                    }
                }
                _ => done.push(l),
            }
        }
        let split_at = done.iter().position(|l| l.inverse).unwrap_or(done.len());
        let num = done[..split_at].iter().map(|l| l.gen).collect();
        let den = done[split_at..].iter().rev().map(|l| l.gen).collect();
        Ok((num, den))
    }

    /// `(u\v, v\u)`.
    pub fn complement(&self, u: &[Gen], v: &[Gen]) -> Result<(Word, Word)> {
        let mut w = inverse_of(u);
        w.extend(v.iter().copied().map(Letter::pos));
        self.split(&w)
    }

    /// `u\v` alone.
    pub fn under(&self, u: &[Gen], v: &[Gen]) -> Result<Word> {
        Ok(self.complement(u, v)?.0)
    }

    /// `u ∨ v = u(u\v)`.
    pub fn right_lcm(&self, u: &[Gen], v: &[Gen]) -> Result<Word> {
        let (uv, _) = self.complement(u, v)?;
        let mut out = u.to_vec();
        out.extend(uv);
        Ok(out)
    }

    /// `u` left-divides `v`, decided as `v\u = ε`.
    pub fn left_divides(&self, u: &[Gen], v: &[Gen]) -> Result<bool> {
        Ok(self.complement(v, u)?.0.is_empty())
    }

    /// `u\v = ε` and `v\u = ε`.
    ///
    /// On a verified Garside structure this decides equality in the monoid.
    /// Without that certificate a `true` is still sound, while a `false`
    /// only indicates that redressing failed to identify the two words.
    pub fn positive_equal(&self, u: &[Gen], v: &[Gen]) -> Result<bool> {
        let (a, b) = self.complement(u, v)?;
        Ok(a.is_empty() && b.is_empty())
    }
}

/// Left complements `(v/u, u/v)` computed in the mirrored table: the inputs
/// are reversed, complemented on the right, and reversed back.
///
/// `mirror` must be the complement table of the mirrored presentation.
pub fn left_complement(mirror: &Reversing<'_>, u: &[Gen], v: &[Gen]) -> Result<(Word, Word)> {
    let ru: Word = u.iter().rev().copied().collect();
    let rv: Word = v.iter().rev().copied().collect();
    let (a, b) = mirror.complement(&ru, &rv)?;
    Ok((a.into_iter().rev().collect(), b.into_iter().rev().collect()))
}
