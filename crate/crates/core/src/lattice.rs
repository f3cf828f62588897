//! The finite lattice of simple elements (left divisors of `Δ`).
//!
//! Simples get dense ids in breadth-first order from `1` (id 0), so each
//! representative is the shortlex-least word of its element. Left-side
//! operations are derived from right-side ones through `s ↦ Δ/s`, which is
//! the inverse of `s ↦ s\Δ` on simples.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::criterion::{check_normed, GarsideStructure};
use crate::error::{Error, Result};
use crate::words::{Gen, Word};

/// Dense id of a simple element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SimpleId(pub u32);

impl SimpleId {
    pub const ONE: SimpleId = SimpleId(0);

    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

const NONE: u32 = u32::MAX;

/// Default bound on the number of simples.
pub const DEFAULT_MAX_SIMPLES: usize = 100_000;

#[derive(Debug, Clone)]
pub struct SimpleLattice {
    structure: GarsideStructure,
    reps: Vec<Word>,
    delta: SimpleId,
    rank: usize,
    next: Vec<u32>,
    rcomp: Vec<u32>,
    lcomp: Vec<u32>,
    phi: Vec<u32>,
    phi_tilde: Vec<u32>,
    under: Vec<u32>,
    join: Vec<u32>,
    meet: Vec<u32>,
    down: Vec<Vec<u64>>,
}

impl SimpleLattice {
    pub fn build(structure: &GarsideStructure) -> Result<Self> {
        SimpleLattice::build_with_limit(structure, DEFAULT_MAX_SIMPLES)
    }

    pub fn build_with_limit(structure: &GarsideStructure, max_simples: usize) -> Result<Self> {
        let rev = structure.reversing();
        let delta_word = &structure.delta;
        let rank = structure.table.rank();
        let weights = check_normed(&structure.presentation).weights;
        let weight = |w: &[Gen]| -> u64 {
            weights
                .as_ref()
                .map_or(0, |ws| w.iter().map(|g| ws[g.idx()]).sum())
        };

        let mut reps: Vec<Word> = vec![vec![]];
        let mut buckets: HashMap<u64, Vec<u32>> = HashMap::from([(0, vec![0])]);
        let mut next: Vec<u32> = vec![NONE; rank];
        let mut head = 0;
        while head < reps.len() {
            let s = reps[head].clone();
            for x in 0..rank {
                let mut sx = s.clone();
                sx.push(Gen(x as u16));
                if !rev.left_divides(&sx, delta_word)? {
                    continue;
                }
                let key = weight(&sx);
                let mut found = None;
                for &t in buckets.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
                    if rev.positive_equal(&reps[t as usize], &sx)? {
                        found = Some(t);
                        break;
                    }
                }
                let id = match found {
                    Some(t) => t,
                    None => {
                        if reps.len() >= max_simples {
                            return Err(Error::limit("simples", max_simples));
                        }
                        let id = reps.len() as u32;
                        reps.push(sx);
                        buckets.entry(key).or_default().push(id);
                        next.extend(std::iter::repeat_n(NONE, rank));
                        id
                    }
                };
                next[head * rank + x] = id;
            }
            head += 1;
        }
        let n = reps.len();
        if n.checked_mul(n).is_none_or(|nn| nn > 64_000_000) {
            return Err(Error::limit("simples for pair tables", 8000));
        }

        let mut lat = SimpleLattice {
            structure: structure.clone(),
            reps,
            delta: SimpleId::ONE,
            rank,
            next,
            rcomp: vec![],
            lcomp: vec![],
            phi: vec![],
            phi_tilde: vec![],
            under: vec![],
            join: vec![],
            meet: vec![],
            down: vec![],
        };
        lat.delta = lat
            .locate(delta_word)
            .ok_or_else(|| Error::NotVerified("Δ is not reached from its atoms".into()))?;

        let not_simple = |w: &Word| {
            Error::NotVerified(format!(
                "{} is not simple",
                structure.table.alphabet().format_word(w)
            ))
        };
        let mut rcomp = Vec::with_capacity(n);
        for s in &lat.reps {
            let c = rev.under(s, delta_word)?;
            rcomp.push(lat.locate(&c).ok_or_else(|| not_simple(&c))?.0);
        }
        let mut lcomp = vec![NONE; n];
        for (s, &r) in rcomp.iter().enumerate() {
            lcomp[r as usize] = s as u32;
        }
        if lcomp.contains(&NONE) {
            return Err(Error::NotVerified("s ↦ s\\Δ is not a bijection".into()));
        }
        let phi: Vec<u32> = (0..n).map(|s| rcomp[rcomp[s] as usize]).collect();
        let phi_tilde: Vec<u32> = (0..n).map(|s| lcomp[lcomp[s] as usize]).collect();

        let mut under = vec![NONE; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = rev.under(&lat.reps[a], &lat.reps[b])?;
                under[a * n + b] = lat.locate(&c).ok_or_else(|| not_simple(&c))?.0;
            }
        }
        let words = n.div_ceil(64);
        let mut down = vec![vec![0u64; words]; n];
        for (s, d) in down.iter_mut().enumerate() {
            for t in 0..n {
                if under[s * n + t] == 0 {
                    d[t / 64] |= 1 << (t % 64);
                }
            }
        }
        let mut join = vec![NONE; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut w = lat.reps[a].clone();
                w.extend(&lat.reps[under[a * n + b] as usize]);
                join[a * n + b] = lat.locate(&w).ok_or_else(|| not_simple(&w))?.0;
            }
        }
        let size = |d: &[u64]| d.iter().map(|w| w.count_ones()).sum::<u32>();
        let mut meet = vec![NONE; n * n];
        for a in 0..n {
            for b in a..n {
                let mut best = (0u32, 0u32);
                for (wi, (da, db)) in down[a].iter().zip(&down[b]).enumerate() {
                    let mut bits = da & db;
                    while bits != 0 {
                        let t = wi * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let sz = size(&down[t]);
                        if sz > best.0 {
                            best = (sz, t as u32);
                        }
                    }
                }
                meet[a * n + b] = best.1;
                meet[b * n + a] = best.1;
            }
        }

        lat.rcomp = rcomp;
        lat.lcomp = lcomp;
        lat.phi = phi;
        lat.phi_tilde = phi_tilde;
        lat.under = under;
        lat.down = down;
        lat.join = join;
        lat.meet = meet;
        Ok(lat)
    }

    pub fn structure(&self) -> &GarsideStructure {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ids(&self) -> impl Iterator<Item = SimpleId> {
        (0..self.reps.len() as u32).map(SimpleId)
    }

    pub fn delta(&self) -> SimpleId {
        self.delta
    }

    pub fn rep(&self, s: SimpleId) -> &[Gen] {
        &self.reps[s.idx()]
    }

    pub fn format(&self, s: SimpleId) -> String {
        if s == SimpleId::ONE {
            return "1".into();
        }
        self.structure.table.alphabet().format_word(self.rep(s))
    }

    /// The simple `s·x`, when it is simple.
    pub fn step(&self, s: SimpleId, x: Gen) -> Option<SimpleId> {
        let v = self.next[s.idx() * self.rank + x.idx()];
        (v != NONE).then_some(SimpleId(v))
    }

    /// The simple represented by `w`, if `w` left-divides `Δ`.
    pub fn locate(&self, w: &[Gen]) -> Option<SimpleId> {
        let mut s = SimpleId::ONE;
        for &x in w {
            s = self.step(s, x)?;
        }
        Some(s)
    }

    pub fn atom(&self, x: Gen) -> SimpleId {
        self.step(SimpleId::ONE, x).expect("atoms are simple")
    }

    /// `s\Δ`.
    pub fn rcomp(&self, s: SimpleId) -> SimpleId {
        SimpleId(self.rcomp[s.idx()])
    }

    /// `Δ/s`.
    pub fn lcomp(&self, s: SimpleId) -> SimpleId {
        SimpleId(self.lcomp[s.idx()])
    }

    /// `φ(s)`, with `sΔ = Δφ(s)`.
    pub fn phi(&self, s: SimpleId) -> SimpleId {
        SimpleId(self.phi[s.idx()])
    }

    /// `φ̃(s)`, with `Δs = φ̃(s)Δ`.
    pub fn phi_tilde(&self, s: SimpleId) -> SimpleId {
        SimpleId(self.phi_tilde[s.idx()])
    }

    /// `a\b`.
    pub fn under(&self, a: SimpleId, b: SimpleId) -> SimpleId {
        SimpleId(self.under[a.idx() * self.len() + b.idx()])
    }

    pub fn join(&self, a: SimpleId, b: SimpleId) -> SimpleId {
        SimpleId(self.join[a.idx() * self.len() + b.idx()])
    }

    pub fn meet(&self, a: SimpleId, b: SimpleId) -> SimpleId {
        SimpleId(self.meet[a.idx() * self.len() + b.idx()])
    }

    /// `a ≼ b`.
    pub fn left_divides(&self, a: SimpleId, b: SimpleId) -> bool {
        self.down[b.idx()][a.idx() / 64] & (1 << (a.idx() % 64)) != 0
    }

    /// `c` is a right divisor of `s`.
    pub fn right_divides(&self, c: SimpleId, s: SimpleId) -> bool {
        self.left_divides(self.lcomp(s), self.lcomp(c))
    }

    /// Greatest common right divisor.
    pub fn right_gcd(&self, a: SimpleId, b: SimpleId) -> SimpleId {
        self.rcomp(self.join(self.lcomp(a), self.lcomp(b)))
    }

    /// `s/c`, the simple `q` with `q·c = s`, for a right divisor `c` of `s`.
    pub fn right_quotient(&self, s: SimpleId, c: SimpleId) -> SimpleId {
        self.under(self.lcomp(s), self.lcomp(c))
    }

    /// `a·b` when the product is simple.
    pub fn product(&self, a: SimpleId, b: SimpleId) -> Option<SimpleId> {
        let mut s = a;
        for &x in self.rep(b) {
            s = self.step(s, x)?;
        }
        Some(s)
    }

    /// Hasse diagram of left divisibility: `s → s·x` for each atom `x`.
    pub fn hasse_edges(&self) -> Vec<(SimpleId, Gen, SimpleId)> {
        let mut out = Vec::new();
        for s in self.ids() {
            for x in 0..self.rank {
                if let Some(t) = self.step(s, Gen(x as u16)) {
                    out.push((s, Gen(x as u16), t));
                }
            }
        }
        out
    }

    pub fn export_dot(&self) -> String {
        let a = self.structure.table.alphabet();
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
        for s in self.ids() {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", s.0, self.format(s));
        }
        for (s, x, t) in self.hasse_edges() {
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", s.0, t.0, a.name(x));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Dump<'a> {
            simples: Vec<String>,
            delta: u32,
            join: Vec<&'a [u32]>,
            meet: Vec<&'a [u32]>,
            phi: &'a [u32],
            phi_tilde: &'a [u32],
        }
        let n = self.len();
        let dump = Dump {
            simples: self.ids().map(|s| self.format(s)).collect(),
            delta: self.delta.0,
            join: self.join.chunks(n).collect(),
            meet: self.meet.chunks(n).collect(),
            phi: &self.phi,
            phi_tilde: &self.phi_tilde,
        };
        serde_json::to_string(&dump).expect("lattice serializes")
    }
}
