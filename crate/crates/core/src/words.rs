//! Generators, positive and signed words, monoid presentations and
//! complement tables, together with the line-oriented text format used to
//! store presentations on disk.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A generator, interned as a dense index into its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(pub u16);

impl Gen {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A positive word: a finite sequence of generators, possibly empty.
pub type Word = Vec<Gen>;

/// A generator together with an exponent sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: Gen) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: Gen) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

/// A word over generators and their formal inverses.
pub type SignedWord = Vec<Letter>;

/// Embeds a positive word into the signed words.
pub fn positive(w: &[Gen]) -> SignedWord {
    w.iter().copied().map(Letter::pos).collect()
}

/// The formal inverse `w^{-1}` of a positive word.
pub fn inverse_of(w: &[Gen]) -> SignedWord {
    w.iter().rev().copied().map(Letter::neg).collect()
}

/// The formal inverse of a signed word.
pub fn inverse_signed(w: &[Letter]) -> SignedWord {
    w.iter().rev().map(|l| l.inv()).collect()
}

/// Removes every adjacent `g g^-1` and `g^-1 g` pair.
pub fn free_reduce(w: &[Letter]) -> SignedWord {
    let mut out: SignedWord = Vec::with_capacity(w.len());
    for &l in w {
        match out.last() {
            Some(&top) if top.gen == l.gen && top.inverse != l.inverse => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// Reverses a positive word letter by letter.
pub fn reversed(w: &[Gen]) -> Word {
    w.iter().rev().copied().collect()
}

/// `w` repeated `k` times.
pub fn power(w: &[Gen], k: usize) -> Word {
    let mut out = Vec::with_capacity(w.len() * k);
    for _ in 0..k {
        out.extend_from_slice(w);
    }
    out
}

/// Ordered set of generator names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Gen>,
}

fn valid_token(name: &str) -> bool {
    !name.is_empty()
        && !name.chars().any(char::is_whitespace)
        && !name.contains('=')
        && !name.contains('^')
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut alphabet = Alphabet::default();
        for name in names {
            alphabet.push(name.as_ref())?;
        }
        Ok(alphabet)
    }

    /// `x1, …, xn`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Alphabet::new(&names).expect("indexed names are valid and distinct")
    }

    pub fn push(&mut self, name: &str) -> Result<Gen> {
        if !valid_token(name) {
            return Err(Error::InvalidParams(format!("invalid generator name `{name}`")));
        }
        if self.index.contains_key(name) {
            return Err(Error::InvalidParams(format!("duplicate generator `{name}`")));
        }
        if self.names.len() >= u16::MAX as usize {
            return Err(Error::limit("generators", u16::MAX as usize));
        }
        let g = Gen(self.names.len() as u16);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), g);
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g.idx()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, name: &str) -> Option<Gen> {
        self.index.get(name).copied()
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.names.len()).map(|i| Gen(i as u16))
    }

    pub fn gen(&self, name: &str) -> Result<Gen> {
        self.get(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Parses whitespace-separated generator tokens. `ε` and `1` stand for
    /// the empty word when they are not generator names.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let trimmed = text.trim();
        if (trimmed == "ε" || trimmed == "1") && self.get(trimmed).is_none() {
            return Ok(Vec::new());
        }
        trimmed.split_whitespace().map(|t| self.gen(t)).collect()
    }

    /// Like [`Alphabet::parse_word`], accepting a `^-1` suffix for inverses.
    pub fn parse_signed(&self, text: &str) -> Result<SignedWord> {
        let trimmed = text.trim();
        if (trimmed == "ε" || trimmed == "1") && self.get(trimmed).is_none() {
            return Ok(Vec::new());
        }
        trimmed
            .split_whitespace()
            .map(|t| match t.strip_suffix("^-1") {
                Some(base) => self.gen(base).map(Letter::neg),
                None => self.gen(t).map(Letter::pos),
            })
            .collect()
    }

    pub fn format_word(&self, w: &[Gen]) -> String {
        let parts: Vec<&str> = w.iter().map(|&g| self.name(g)).collect();
        parts.join(" ")
    }

    pub fn format_signed(&self, w: &[Letter]) -> String {
        let parts: Vec<String> = w
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", self.name(l.gen))
                } else {
                    self.name(l.gen).to_string()
                }
            })
            .collect();
        parts.join(" ")
    }
}

/// A positive relation `lhs = rhs`; neither side is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Result<Self> {
        if lhs.is_empty() || rhs.is_empty() {
            return Err(Error::EmptyRelationSide);
        }
        Ok(Relation { lhs, rhs })
    }

    pub fn is_length_preserving(&self) -> bool {
        self.lhs.len() == self.rhs.len()
    }

    /// The same relation with its two sides ordered canonically.
    pub fn normalized(&self) -> Relation {
        if self.lhs <= self.rhs {
            self.clone()
        } else {
            Relation {
                lhs: self.rhs.clone(),
                rhs: self.lhs.clone(),
            }
        }
    }
}

/// A monoid presentation `⟨A : R⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relations: Vec<Relation>) -> Result<Self> {
        let n = alphabet.len();
        for r in &relations {
            if r.lhs.is_empty() || r.rhs.is_empty() {
                return Err(Error::EmptyRelationSide);
            }
            if let Some(g) = r.lhs.iter().chain(&r.rhs).find(|g| g.idx() >= n) {
                return Err(Error::UnknownGenerator(format!("#{}", g.0)));
            }
        }
        Ok(Presentation { alphabet, relations })
    }

    /// Builds a presentation from generator names and textual relations.
    pub fn from_strs(gens: &[&str], relations: &[(&str, &str)]) -> Result<Self> {
        let alphabet = Alphabet::new(gens)?;
        let relations = relations
            .iter()
            .map(|(l, r)| Relation::new(alphabet.parse_word(l)?, alphabet.parse_word(r)?))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(alphabet, relations)
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    /// True when every relation has sides of equal length.
    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(Relation::is_length_preserving)
    }

    /// Every relation reversed letter by letter; left divisibility in `self`
    /// becomes right divisibility in the mirror.
    pub fn mirror(&self) -> Presentation {
        Presentation {
            alphabet: self.alphabet.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    lhs: reversed(&r.lhs),
                    rhs: reversed(&r.rhs),
                })
                .collect(),
        }
    }

    /// Relation multiset with sides ordered, for order-insensitive comparison.
    pub fn relation_set(&self) -> Vec<Relation> {
        let mut rels: Vec<Relation> = self.relations.iter().map(Relation::normalized).collect();
        rels.sort_by(|a, b| (&a.lhs, &a.rhs).cmp(&(&b.lhs, &b.rhs)));
        rels
    }

    /// Parses the presentation text format:
    ///
    /// ```text
    /// # comment
    /// gens: x y
    /// rel: x y x = y x y
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet: Option<Alphabet> = None;
        let mut relations = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let indent = raw.len() - raw.trim_start().len();
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |column: usize, message: String| Error::Syntax {
                line: line_no,
                column,
                message,
            };
            if let Some(rest) = line.strip_prefix("gens:") {
                if alphabet.is_some() {
                    return Err(syntax(indent + 1, "duplicate `gens:` line".into()));
                }
                let mut a = Alphabet::default();
                for token in rest.split_whitespace() {
                    let col = indent + raw.trim_start().find(token).unwrap_or(0) + 1;
                    a.push(token).map_err(|e| syntax(col, e.to_string()))?;
                }
                alphabet = Some(a);
            } else if let Some(rest) = line.strip_prefix("rel:") {
                let a = alphabet
                    .as_ref()
                    .ok_or_else(|| syntax(indent + 1, "`rel:` before `gens:`".into()))?;
                let mut sides = rest.split('=');
                let (lhs, rhs) = match (sides.next(), sides.next(), sides.next()) {
                    (Some(l), Some(r), None) => (l, r),
                    _ => {
                        return Err(syntax(
                            indent + 5,
                            "expected exactly one `=` in relation".into(),
                        ))
                    }
                };
                let lhs = parse_side(a, lhs)?;
                let rhs = parse_side(a, rhs)?;
                relations.push(Relation::new(lhs, rhs)?);
            } else {
                return Err(syntax(
                    indent + 1,
                    format!("unrecognised line `{line}`"),
                ));
            }
        }
        let alphabet = alphabet.ok_or(Error::Syntax {
            line: text.lines().count().max(1),
            column: 1,
            message: "missing `gens:` line".into(),
        })?;
        Presentation::new(alphabet, relations)
    }

    /// Serialises into the text format accepted by [`Presentation::parse`].
    pub fn format(&self) -> String {
        let mut out = String::new();
        out.push_str("gens:");
        for name in self.alphabet.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for r in &self.relations {
            out.push_str("rel: ");
            out.push_str(&self.alphabet.format_word(&r.lhs));
            out.push_str(" = ");
            out.push_str(&self.alphabet.format_word(&r.rhs));
            out.push('\n');
        }
        out
    }
}

fn parse_side(a: &Alphabet, text: &str) -> Result<Word> {
    let w = text
        .split_whitespace()
        .map(|t| a.gen(t))
        .collect::<Result<Word>>()?;
    if w.is_empty() {
        return Err(Error::EmptyRelationSide);
    }
    Ok(w)
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

/// The letter-level complement `x\y` of a complemented presentation.
///
/// `x\x = ε` is implicit; every other ordered pair has an entry once the
/// table is total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementTable {
    alphabet: Alphabet,
    entries: Vec<Option<Word>>,
}

impl ComplementTable {
    /// An empty (partial) table over `alphabet`.
    pub fn empty(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        ComplementTable {
            alphabet,
            entries: vec![None; n * n],
        }
    }

    /// Reads `x\y` and `y\x` off the unique relation `x… = y…` of every pair.
    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        let n = p.rank();
        let mut counts = vec![0usize; n * n];
        let mut table = ComplementTable::empty(p.alphabet.clone());
        for r in &p.relations {
            let (x, y) = (r.lhs[0], r.rhs[0]);
            if x == y {
                return Err(Error::NotComplemented {
                    x: p.alphabet.name(x).to_string(),
                    y: p.alphabet.name(y).to_string(),
                    count: 1,
                });
            }
            counts[x.idx() * n + y.idx()] += 1;
            counts[y.idx() * n + x.idx()] += 1;
            table.set(x, y, r.lhs[1..].to_vec());
            table.set(y, x, r.rhs[1..].to_vec());
        }
        for x in p.alphabet.gens() {
            for y in p.alphabet.gens().filter(|&y| y > x) {
                let c = counts[x.idx() * n + y.idx()];
                if c != 1 {
                    return Err(Error::NotComplemented {
                        x: p.alphabet.name(x).to_string(),
                        y: p.alphabet.name(y).to_string(),
                        count: c,
                    });
                }
            }
        }
        Ok(table)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    /// `x\y`; `None` when the entry is missing.
    #[inline]
    pub fn get(&self, x: Gen, y: Gen) -> Option<&[Gen]> {
        if x == y {
            return Some(&[]);
        }
        self.entries[x.idx() * self.rank() + y.idx()].as_deref()
    }

    pub fn set(&mut self, x: Gen, y: Gen, w: Word) {
        let n = self.rank();
        self.entries[x.idx() * n + y.idx()] = Some(w);
    }

    /// True when every ordered pair of distinct generators has an entry.
    pub fn is_total(&self) -> bool {
        let n = self.rank();
        (0..n).all(|x| (0..n).all(|y| x == y || self.entries[x * n + y].is_some()))
    }

    /// Re-emits one relation `x(x\y) = y(y\x)` per unordered pair.
    pub fn to_presentation(&self) -> Presentation {
        let mut relations = Vec::new();
        for x in self.alphabet.gens() {
            for y in self.alphabet.gens().filter(|&y| y > x) {
                if let (Some(u), Some(v)) = (self.get(x, y), self.get(y, x)) {
                    let mut lhs = vec![x];
                    lhs.extend_from_slice(u);
                    let mut rhs = vec![y];
                    rhs.extend_from_slice(v);
                    relations.push(Relation { lhs, rhs });
                }
            }
        }
        Presentation {
            alphabet: self.alphabet.clone(),
            relations,
        }
    }

    /// Complement table of the mirrored presentation, when it is complemented.
    pub fn mirror(&self) -> Result<ComplementTable> {
        ComplementTable::from_presentation(&self.to_presentation().mirror())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MCHI: &str = "gens: x y z\nrel: x z x y = y z x x\nrel: y z x x z = z x y z x\nrel: z x y z x = x z x y z";

    #[test]
    fn parses_braid_presentation() {
        let p = Presentation::parse("gens: x y\nrel: x y x = y x y").unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.alphabet.names(), &["x", "y"]);
    }

    #[test]
    fn parses_mchi_and_skips_comments() {
        let text = format!("# M_chi\n\n{MCHI}\n");
        let p = Presentation::parse(&text).unwrap();
        assert_eq!(p.rank(), 3);
        assert_eq!(p.relations.len(), 3);
        assert_eq!(p.alphabet.format_word(&p.relations[0].rhs), "y z x x");
    }

    #[test]
    fn rejects_missing_gens_line() {
        let err = Presentation::parse("rel: x = y").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }), "{err:?}");
    }

    #[test]
    fn rejects_unknown_generator_and_empty_side() {
        assert_eq!(
            Presentation::parse("gens: x y\nrel: x w = y").unwrap_err(),
            Error::UnknownGenerator("w".into())
        );
        assert_eq!(
            Presentation::parse("gens: x y\nrel: x y = ").unwrap_err(),
            Error::EmptyRelationSide
        );
    }

    #[test]
    fn reports_syntax_position() {
        let err = Presentation::parse("gens: x y\n  bogus").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 2,
                column: 3,
                message: "unrecognised line `bogus`".into()
            }
        );
        let err = Presentation::parse("gens: x y\nrel: x = y = x").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
    }

    #[test]
    fn braid_complement_table() {
        let p = Presentation::parse("gens: x y\nrel: x y x = y x y").unwrap();
        let t = ComplementTable::from_presentation(&p).unwrap();
        let a = &p.alphabet;
        let (x, y) = (a.gen("x").unwrap(), a.gen("y").unwrap());
        assert_eq!(a.format_word(t.get(x, y).unwrap()), "y x");
        assert_eq!(a.format_word(t.get(y, x).unwrap()), "x y");
        assert_eq!(t.get(x, x).unwrap(), &[] as &[Gen]);
    }

    #[test]
    fn mchi_complement_table() {
        let p = Presentation::parse(MCHI).unwrap();
        let t = ComplementTable::from_presentation(&p).unwrap();
        let a = &p.alphabet;
        let g = |s: &str| a.gen(s).unwrap();
        let c = |u: &str, v: &str| a.format_word(t.get(g(u), g(v)).unwrap());
        assert_eq!(c("x", "y"), "z x y");
        assert_eq!(c("y", "x"), "z x x");
        assert_eq!(c("y", "z"), "z x x z");
        assert_eq!(c("z", "y"), "x y z x");
        assert_eq!(c("z", "x"), "x y z x");
        assert_eq!(c("x", "z"), "z x y z");
    }

    #[test]
    fn not_complemented_when_pair_repeats() {
        let p = Presentation::from_strs(
            &["s1", "s2", "t1", "t2"],
            &[
                ("t2 s1", "s1 s2"),
                ("s1 s2", "s2 t2"),
                ("s1 t1", "s2 s1"),
                ("s2 s1", "t1 s2"),
            ],
        )
        .unwrap();
        let err = ComplementTable::from_presentation(&p).unwrap_err();
        assert!(matches!(err, Error::NotComplemented { .. }));
    }

    #[test]
    fn table_round_trip_reproduces_relations() {
        let p = Presentation::parse(MCHI).unwrap();
        let t = ComplementTable::from_presentation(&p).unwrap();
        assert_eq!(t.to_presentation().relation_set(), p.relation_set());
    }

    #[test]
    fn mirror_reverses_relations() {
        let p = Presentation::parse("gens: x y z\nrel: x z x y = y z x x").unwrap();
        let m = p.mirror();
        assert_eq!(m.alphabet.format_word(&m.relations[0].lhs), "y x z x");
        assert_eq!(m.alphabet.format_word(&m.relations[0].rhs), "x x z y");
        assert_eq!(m.mirror(), p);
        let b = Presentation::parse("gens: x y\nrel: x y x = y x y").unwrap();
        assert_eq!(b.mirror(), b);
    }

    #[test]
    fn free_reduction() {
        let a = Alphabet::new(&["x", "y"]).unwrap();
        let w = a.parse_signed("x x^-1").unwrap();
        assert!(free_reduce(&w).is_empty());
        let w = a.parse_signed("x y^-1 y x").unwrap();
        assert_eq!(a.format_signed(&free_reduce(&w)), "x x");
        assert!(free_reduce(&[]).is_empty());
        let w = a.parse_signed("x y y^-1 x^-1 y").unwrap();
        assert_eq!(a.format_signed(&free_reduce(&w)), "y");
    }

    #[test]
    fn signed_word_parsing() {
        let a = Alphabet::new(&["x1", "x2"]).unwrap();
        let w = a.parse_signed("x1 x2 x1^-1").unwrap();
        assert_eq!(w.len(), 3);
        assert!(w[2].inverse);
        assert_eq!(a.format_signed(&w), "x1 x2 x1^-1");
        assert!(a.parse_signed("x3").is_err());
        assert!(a.parse_signed("ε").unwrap().is_empty());
    }
}
