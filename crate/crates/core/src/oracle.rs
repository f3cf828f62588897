//! Brute-force ground truth for small monoid presentations.
//!
//! A [`Ball`] holds every positive word of length at most `radius`,
//! partitioned into congruence classes by closing the relations under
//! union-find. Relations are applied inside a wider shell of
//! `radius + slack` letters so that non length-preserving rewrites can pass
//! over the rim. For length-preserving presentations the partition is exact;
//! otherwise it is in-ball evidence only ([`Ball::is_exact`]).
//!
//! Words are stored implicitly: a word of length `n` over `k` letters has
//! id `offset(n) + Σ wᵢ·k^(n-1-i)`, so ids are in shortlex order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::error::{Error, Result};
use crate::words::{Gen, Presentation, Relation, Word};

/// Default bound on the number of words enumerated by a ball.
pub const DEFAULT_MAX_BALL: usize = 20_000_000;

/// Query failures that are not errors in the presentation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("word of length {0} lies outside the ball")]
    OutOfBall(usize),
    #[error("no common multiple inside the ball")]
    NoneInBall,
    #[error("{} maximal candidates", .0.len())]
    NotUnique(Vec<u32>),
}

/// Which side a cancellativity failure is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `a·u ≈ a·v` with `u ≉ v`.
    Left,
    /// `u·a ≈ v·a` with `u ≉ v`.
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellativityWitness {
    pub side: Side,
    pub a: Word,
    pub u: Word,
    pub v: Word,
}

/// Congruence classes of all words up to a given length.
#[derive(Debug)]
pub struct Ball {
    k: usize,
    radius: usize,
    exact: bool,
    offsets: Vec<usize>,
    class: Vec<u32>,
    class_min: Vec<usize>,
    member_start: Vec<u32>,
    member_ids: Vec<u32>,
    descendants: Mutex<HashMap<u32, Arc<Vec<u64>>>>,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut i: u32) -> u32 {
        while self.parent[i as usize] != i {
            let p = self.parent[i as usize];
            self.parent[i as usize] = self.parent[p as usize];
            i = p;
        }
        i
    }

    // The smaller id becomes the root, so roots are shortlex minima.
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb as usize] = ra;
        } else if rb < ra {
            self.parent[ra as usize] = rb;
        }
    }
}

fn word_value(w: &[Gen], k: usize) -> usize {
    w.iter().fold(0usize, |acc, g| acc * k + g.idx())
}

/// Default slack: twice the largest length imbalance of a relation.
pub fn default_slack(p: &Presentation) -> usize {
    2 * p
        .relations
        .iter()
        .map(|r| r.lhs.len().abs_diff(r.rhs.len()))
        .max()
        .unwrap_or(0)
}

impl Ball {
    /// Builds the ball of the given radius with the default slack and size bound.
    pub fn new(p: &Presentation, radius: usize) -> Result<Self> {
        Ball::build(p, radius, default_slack(p), DEFAULT_MAX_BALL)
    }

    pub fn build(p: &Presentation, radius: usize, slack: usize, max_words: usize) -> Result<Self> {
        if radius == 0 {
            return Err(Error::InvalidParams("ball radius must be at least 1".into()));
        }
        let k = p.rank().max(1);
        let full = radius + slack;
        let mut offsets = Vec::with_capacity(full + 2);
        let mut total = 0usize;
        let mut layer = 1usize;
        for _ in 0..=full {
            offsets.push(total);
            total = total
                .checked_add(layer)
                .filter(|&t| t <= max_words)
                .ok_or_else(|| Error::limit("ball words", max_words))?;
            layer = layer.saturating_mul(k);
        }
        offsets.push(total);

        let pow: Vec<usize> = (0..=full).map(|e| k.saturating_pow(e as u32)).collect();
        let mut uf = UnionFind::new(total);
        for rel in &p.relations {
            let (l, r) = (&rel.lhs, &rel.rhs);
            let (lv, rv) = (word_value(l, k), word_value(r, k));
            for n in l.len()..=full {
                let rest = n - l.len();
                let n2 = rest + r.len();
                if n2 > full {
                    break;
                }
                for a in 0..=rest {
                    let c = rest - a;
                    for pv in 0..pow[a] {
                        let base1 = (pv * pow[l.len()] + lv) * pow[c];
                        let base2 = (pv * pow[r.len()] + rv) * pow[c];
                        for sv in 0..pow[c] {
                            uf.union(
                                (offsets[n] + base1 + sv) as u32,
                                (offsets[n2] + base2 + sv) as u32,
                            );
                        }
                    }
                }
            }
        }

        let inner = offsets[radius + 1];
        let mut class = vec![0u32; inner];
        let mut class_min = Vec::new();
        let mut root_to_class: HashMap<u32, u32> = HashMap::new();
        for (id, slot) in class.iter_mut().enumerate() {
            let root = uf.find(id as u32);
            *slot = *root_to_class.entry(root).or_insert_with(|| {
                class_min.push(id);
                (class_min.len() - 1) as u32
            });
        }
        let nclasses = class_min.len();
        let mut member_start = vec![0u32; nclasses + 1];
        for &c in &class {
            member_start[c as usize + 1] += 1;
        }
        for i in 0..nclasses {
            member_start[i + 1] += member_start[i];
        }
        let mut fill = member_start.clone();
        let mut member_ids = vec![0u32; inner];
        for (id, &c) in class.iter().enumerate() {
            member_ids[fill[c as usize] as usize] = id as u32;
            fill[c as usize] += 1;
        }

        Ok(Ball {
            k,
            radius,
            exact: p.is_homogeneous(),
            offsets,
            class,
            class_min,
            member_start,
            member_ids,
            descendants: Mutex::new(HashMap::new()),
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// True when classes are exact congruence classes of the monoid.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn class_count(&self) -> usize {
        self.class_min.len()
    }

    fn id_of(&self, w: &[Gen]) -> std::result::Result<usize, OracleError> {
        if w.len() > self.radius {
            return Err(OracleError::OutOfBall(w.len()));
        }
        Ok(self.offsets[w.len()] + word_value(w, self.k))
    }

    fn decode(&self, id: usize) -> Word {
        let len = self.offsets.partition_point(|&o| o <= id) - 1;
        let mut v = id - self.offsets[len];
        let mut w = vec![Gen(0); len];
        for i in (0..len).rev() {
            w[i] = Gen((v % self.k) as u16);
            v /= self.k;
        }
        w
    }

    pub fn class_of(&self, w: &[Gen]) -> std::result::Result<u32, OracleError> {
        Ok(self.class[self.id_of(w)?])
    }

    /// Shortlex-least member of a class.
    pub fn rep(&self, c: u32) -> Word {
        self.decode(self.class_min[c as usize])
    }

    pub fn members(&self, c: u32) -> Vec<Word> {
        let (s, e) = (
            self.member_start[c as usize] as usize,
            self.member_start[c as usize + 1] as usize,
        );
        self.member_ids[s..e]
            .iter()
            .map(|&id| self.decode(id as usize))
            .collect()
    }

    fn member_count(&self, c: u32) -> usize {
        (self.member_start[c as usize + 1] - self.member_start[c as usize]) as usize
    }

    pub fn equal(&self, u: &[Gen], v: &[Gen]) -> std::result::Result<bool, OracleError> {
        Ok(self.class_of(u)? == self.class_of(v)?)
    }

    /// Classes of all prefixes of all members of `c`, including `ε` and `c`.
    pub fn prefix_classes(&self, c: u32) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for m in self.members(c) {
            for i in 0..=m.len() {
                out.insert(self.class[self.offsets[i] + word_value(&m[..i], self.k)]);
            }
        }
        out
    }

    /// Classes of all suffixes of all members of `c`, including `ε` and `c`.
    pub fn suffix_classes(&self, c: u32) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for m in self.members(c) {
            for i in 0..=m.len() {
                let s = &m[i..];
                out.insert(self.class[self.offsets[s.len()] + word_value(s, self.k)]);
            }
        }
        out
    }

    /// `∃d: u·d ≈ v`, by exhaustion over the members of the class of `v`.
    pub fn left_divides(&self, u: &[Gen], v: &[Gen]) -> std::result::Result<bool, OracleError> {
        let cu = self.class_of(u)?;
        Ok(self.prefix_classes(self.class_of(v)?).contains(&cu))
    }

    /// `∃d: d·u ≈ v`.
    pub fn right_divides(&self, u: &[Gen], v: &[Gen]) -> std::result::Result<bool, OracleError> {
        let cu = self.class_of(u)?;
        Ok(self.suffix_classes(self.class_of(v)?).contains(&cu))
    }

    fn successor(&self, c: u32, g: usize) -> Option<u32> {
        let m = self.class_min[c as usize];
        let len = self.offsets.partition_point(|&o| o <= m) - 1;
        if len + 1 > self.radius {
            return None;
        }
        let id = self.offsets[len + 1] + (m - self.offsets[len]) * self.k + g;
        Some(self.class[id])
    }

    /// Bitset of the classes of all right multiples of `c` inside the ball.
    pub fn descendants(&self, c: u32) -> Arc<Vec<u64>> {
        if let Some(d) = self.descendants.lock().unwrap().get(&c) {
            return d.clone();
        }
        let mut bits = vec![0u64; self.class_count().div_ceil(64)];
        let mut stack = vec![c];
        bits[c as usize / 64] |= 1 << (c % 64);
        while let Some(x) = stack.pop() {
            for g in 0..self.k {
                if let Some(y) = self.successor(x, g) {
                    let (w, b) = (y as usize / 64, y % 64);
                    if bits[w] & (1 << b) == 0 {
                        bits[w] |= 1 << b;
                        stack.push(y);
                    }
                }
            }
        }
        let d = Arc::new(bits);
        self.descendants.lock().unwrap().insert(c, d.clone());
        d
    }

    /// Minimal common right multiples of `u` and `v` found inside the ball,
    /// sorted by class id. More than one element means no unique right lcm.
    pub fn lcm_set(&self, u: &[Gen], v: &[Gen]) -> std::result::Result<Vec<u32>, OracleError> {
        let du = self.descendants(self.class_of(u)?);
        let dv = self.descendants(self.class_of(v)?);
        let common: Vec<u64> = du.iter().zip(dv.iter()).map(|(a, b)| a & b).collect();
        let has = |c: u32| common[c as usize / 64] & (1 << (c % 64)) != 0;
        // a common multiple is minimal unless it is d·g for a common multiple d
        let mut above = vec![0u64; common.len()];
        for (w, &bits) in common.iter().enumerate() {
            let mut bits = bits;
            while bits != 0 {
                let d = (w * 64 + bits.trailing_zeros() as usize) as u32;
                bits &= bits - 1;
                for g in 0..self.k {
                    if let Some(s) = self.successor(d, g) {
                        if has(s) && s != d {
                            above[s as usize / 64] |= 1 << (s % 64);
                        }
                    }
                }
            }
        }
        let mut minimal = Vec::new();
        for (w, (&c, &a)) in common.iter().zip(&above).enumerate() {
            let mut bits = c & !a;
            while bits != 0 {
                minimal.push((w * 64 + bits.trailing_zeros() as usize) as u32);
                bits &= bits - 1;
            }
        }
        if minimal.is_empty() {
            return Err(OracleError::NoneInBall);
        }
        Ok(minimal)
    }

    fn maximal_common(
        &self,
        common: BTreeSet<u32>,
        divisors: impl Fn(u32) -> BTreeSet<u32>,
    ) -> std::result::Result<u32, OracleError> {
        let maximal: Vec<u32> = common
            .iter()
            .copied()
            .filter(|&d| {
                !common
                    .iter()
                    .any(|&e| e != d && divisors(e).contains(&d))
            })
            .collect();
        match maximal.as_slice() {
            [one] => Ok(*one),
            _ => Err(OracleError::NotUnique(maximal)),
        }
    }

    /// Greatest common right divisor, when unique.
    pub fn right_gcd(&self, u: &[Gen], v: &[Gen]) -> std::result::Result<u32, OracleError> {
        let su = self.suffix_classes(self.class_of(u)?);
        let sv = self.suffix_classes(self.class_of(v)?);
        let common: BTreeSet<u32> = su.intersection(&sv).copied().collect();
        self.maximal_common(common, |c| self.suffix_classes(c))
    }

    /// Greatest common left divisor, when unique.
    pub fn left_gcd(&self, u: &[Gen], v: &[Gen]) -> std::result::Result<u32, OracleError> {
        let pu = self.prefix_classes(self.class_of(u)?);
        let pv = self.prefix_classes(self.class_of(v)?);
        let common: BTreeSet<u32> = pu.intersection(&pv).copied().collect();
        self.maximal_common(common, |c| self.prefix_classes(c))
    }

    fn class_of_slice(&self, w: &[Gen]) -> u32 {
        self.class[self.offsets[w.len()] + word_value(w, self.k)]
    }

    /// First failure of cancellativity, scanning classes in shortlex order of
    /// their least members. Within a class, left failures are preferred.
    pub fn find_cancellativity_witness(&self) -> Option<CancellativityWitness> {
        for c in 0..self.class_count() as u32 {
            if self.member_count(c) < 2 {
                continue;
            }
            let members = self.members(c);
            for side in [Side::Left, Side::Right] {
                // fixed factor class -> set of classes of the remaining factor
                let mut seen: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
                for m in &members {
                    for i in 1..m.len() {
                        let (a, rest) = match side {
                            Side::Left => (&m[..i], &m[i..]),
                            Side::Right => (&m[m.len() - i..], &m[..m.len() - i]),
                        };
                        seen.entry(self.class_of_slice(a))
                            .or_default()
                            .insert(self.class_of_slice(rest));
                    }
                }
                if let Some((&a, rest)) = seen.iter().find(|(_, s)| s.len() >= 2) {
                    let mut it = rest.iter();
                    let (u, v) = (*it.next().unwrap(), *it.next().unwrap());
                    return Some(CancellativityWitness {
                        side,
                        a: self.rep(a),
                        u: self.rep(u),
                        v: self.rep(v),
                    });
                }
            }
        }
        None
    }
}

/// Completes a length-preserving presentation into a complemented one by
/// reading each pair's unique minimal common right multiple off a ball.
///
/// The result is only a candidate: callers confirm it with the criterion
/// and by checking that each presentation's relations hold in the other.
pub fn complete_by_lcm(p: &Presentation, radius: usize) -> Result<Presentation> {
    if !p.is_homogeneous() {
        return Err(Error::InvalidParams(
            "lcm completion needs a length-preserving presentation".into(),
        ));
    }
    let ball = Ball::build(p, radius, 0, DEFAULT_MAX_BALL)?;
    let gens: Vec<Gen> = p.alphabet.gens().collect();
    let mut relations = Vec::new();
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            let name = |g: Gen| p.alphabet.name(g).to_string();
            let set = ball.lcm_set(&[x], &[y]).map_err(|e| match e {
                OracleError::NoneInBall => Error::limit("lcm completion radius", radius),
                _ => Error::NotComplemented {
                    x: name(x),
                    y: name(y),
                    count: 0,
                },
            })?;
            if set.len() != 1 {
                return Err(Error::NotComplemented {
                    x: name(x),
                    y: name(y),
                    count: set.len(),
                });
            }
            let members = ball.members(set[0]);
            let pick = |g: Gen| members.iter().find(|m| m[0] == g).cloned().unwrap();
            relations.push(Relation::new(pick(x), pick(y))?);
        }
    }
    Presentation::new(p.alphabet.clone(), relations)
}
