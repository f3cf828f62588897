//! Right greedy normal forms and the word problem in the group of fractions.
//!
//! A positive element is written `a_p ⋯ a_1` where `a_1` is its maximal
//! simple right divisor, `a_2` the one of what remains, and so on. A
//! fraction is written `a_p ⋯ a_1 · b_1^-1 ⋯ b_q^-1` with the two sides
//! sharing no right divisor.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{SimpleId, SimpleLattice};
use crate::words::{inverse_of, Gen, Letter, SignedWord, Word};

/// Normal form of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    /// `a_p, …, a_1`, left to right.
    pub numerator: Vec<SimpleId>,
    /// `b_1, …, b_q`, in the order their inverses are written.
    pub denominator: Vec<SimpleId>,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.numerator.is_empty() && self.denominator.is_empty()
    }

    /// Checks every defining condition of the normal form.
    pub fn check_chain(&self, l: &SimpleLattice) -> std::result::Result<(), String> {
        if self.numerator.iter().chain(&self.denominator).any(|&s| s == SimpleId::ONE) {
            return Err("identity entry".into());
        }
        if let (Some(&a1), Some(&b1)) = (self.numerator.last(), self.denominator.first()) {
            if l.right_gcd(a1, b1) != SimpleId::ONE {
                return Err(format!("a_1 = {} and b_1 = {} share a right divisor", l.format(a1), l.format(b1)));
            }
        }
        for w in self.numerator.windows(2) {
            if !pair_is_normal(l, w[0], w[1]) {
                return Err(format!("numerator pair {} | {} not normal", l.format(w[0]), l.format(w[1])));
            }
        }
        for w in self.denominator.windows(2) {
            if !pair_is_normal(l, w[1], w[0]) {
                return Err(format!("denominator pair {} | {} not normal", l.format(w[0]), l.format(w[1])));
            }
        }
        Ok(())
    }

    /// The element as a signed word over the atoms.
    pub fn to_signed(&self, l: &SimpleLattice) -> SignedWord {
        let mut out: SignedWord = self
            .numerator
            .iter()
            .flat_map(|&s| l.rep(s).iter().copied().map(Letter::pos))
            .collect();
        for &b in &self.denominator {
            out.extend(inverse_of(l.rep(b)));
        }
        out
    }

    /// `a_p | … | a_1 ~ b_1 | … | b_q`.
    pub fn format(&self, l: &SimpleLattice) -> String {
        let side = |v: &[SimpleId]| v.iter().map(|&s| l.format(s)).collect::<Vec<_>>().join(" | ");
        if self.denominator.is_empty() {
            if self.numerator.is_empty() {
                return "1".into();
            }
            return side(&self.numerator);
        }
        format!("{} ~ {}", side(&self.numerator), side(&self.denominator))
    }
}

/// `b` is the maximal simple right divisor of `a·b`.
pub fn pair_is_normal(l: &SimpleLattice, a: SimpleId, b: SimpleId) -> bool {
    l.right_gcd(a, l.lcomp(b)) == SimpleId::ONE
}

/// `(s·x) ∧̃ Δ` together with the simple `q` such that `s·x = q·((s·x) ∧̃ Δ)`.
pub fn absorb(l: &SimpleLattice, s: SimpleId, x: Gen) -> (SimpleId, SimpleId) {
    let ax = l.atom(x);
    let c = l.right_gcd(s, l.lcomp(ax));
    let t = l.product(c, ax).expect("c right-divides Δ/x");
    (t, l.right_quotient(s, c))
}

/// Splits `w` as `rest · tail` with `tail = w ∧̃ Δ`.
pub fn head_tail(l: &SimpleLattice, w: &[Gen]) -> (SimpleId, Word) {
    let mut rest = Word::new();
    let mut s = SimpleId::ONE;
    for &x in w {
        let (t, q) = absorb(l, s, x);
        rest.extend_from_slice(l.rep(q));
        s = t;
    }
    (s, rest)
}

/// Normal form `a_p, …, a_1` of a positive word; empty for the identity.
pub fn positive_normal_form(l: &SimpleLattice, w: &[Gen]) -> Vec<SimpleId> {
    let mut out = Vec::new();
    let mut cur = w.to_vec();
    while !cur.is_empty() {
        let (t, rest) = head_tail(l, &cur);
        out.push(t);
        cur = rest;
    }
    out.reverse();
    out
}

/// Word of a sequence of simples.
pub fn expand(l: &SimpleLattice, simples: &[SimpleId]) -> Word {
    simples.iter().flat_map(|&s| l.rep(s).iter().copied()).collect()
}

/// Greatest common right divisor of two positive words, peeled one simple
/// at a time from the right.
pub fn right_gcd(l: &SimpleLattice, u: &[Gen], v: &[Gen]) -> Word {
    let (g, _, _) = cancel_right_gcd(l, u, v);
    g
}

/// `(g, u/g, v/g)` with `g` the right gcd of `u` and `v`.
fn cancel_right_gcd(l: &SimpleLattice, u: &[Gen], v: &[Gen]) -> (Word, Word, Word) {
    let mut gcd: Vec<SimpleId> = Vec::new();
    let mut u = u.to_vec();
    let mut v = v.to_vec();
    loop {
        let (tu, mut ru) = head_tail(l, &u);
        let (tv, mut rv) = head_tail(l, &v);
        let m = l.right_gcd(tu, tv);
        if m == SimpleId::ONE {
            break;
        }
        gcd.push(m);
        ru.extend_from_slice(l.rep(l.right_quotient(tu, m)));
        rv.extend_from_slice(l.rep(l.right_quotient(tv, m)));
        u = ru;
        v = rv;
    }
    gcd.reverse();
    (expand(l, &gcd), u, v)
}

/// Normal form of the element represented by a signed word.
pub fn fraction_normal_form(l: &SimpleLattice, w: &[Letter]) -> Result<NormalForm> {
    let rev = l.structure().reversing();
    let (num, den) = rev.split(w)?;
    let (_, num, den) = cancel_right_gcd(l, &num, &den);
    let numerator = positive_normal_form(l, &num);
    let mut denominator = positive_normal_form(l, &den);
    denominator.reverse();
    Ok(NormalForm { numerator, denominator })
}

/// Equality in the group of fractions.
pub fn word_problem(l: &SimpleLattice, w1: &[Letter], w2: &[Letter]) -> Result<bool> {
    Ok(fraction_normal_form(l, w1)? == fraction_normal_form(l, w2)?)
}

/// `w` commutes with every atom.
pub fn is_central(l: &SimpleLattice, w: &[Gen]) -> bool {
    (0..l.rank()).all(|i| {
        let x = Gen(i as u16);
        let mut wx = w.to_vec();
        wx.push(x);
        let mut xw = vec![x];
        xw.extend_from_slice(w);
        positive_normal_form(l, &wx) == positive_normal_form(l, &xw)
    })
}

/// Self-check run on produced normal forms.
pub fn checked(l: &SimpleLattice, nf: NormalForm) -> Result<NormalForm> {
    nf.check_chain(l).map_err(Error::NotVerified)?;
    Ok(nf)
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids = |v: &[SimpleId]| v.iter().map(|s| s.0.to_string()).collect::<Vec<_>>().join(" | ");
        write!(f, "{} ~ {}", ids(&self.numerator), ids(&self.denominator))
    }
}
