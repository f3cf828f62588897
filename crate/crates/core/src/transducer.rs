//! Finite transducer reading a positive word and tracking its maximal simple
//! right divisor.
//!
//! States are simples. Reading `x` from state `s` moves to
//! `T(s, x) = ((Δ/(Δ/x))\(Δ/s))\Δ` and emits a word `o` with
//! `s·x = o·T(s, x)`.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{SimpleId, SimpleLattice};
use crate::words::{Gen, Word};

#[derive(Debug, Clone)]
pub struct Transducer {
    rank: usize,
    states: Vec<String>,
    atom_names: Vec<String>,
    delta: SimpleId,
    transition: Vec<SimpleId>,
    output: Vec<Word>,
}

/// Result of reading a word from the initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub final_state: SimpleId,
    pub emitted: Word,
}

impl Transducer {
    /// Fills both tables and checks `rep(s)·x = output(s,x)·rep(T(s,x))`
    /// by redressing for every pair.
    pub fn build(l: &SimpleLattice) -> Result<Self> {
        let rank = l.rank();
        let rev = l.structure().reversing();
        let mut transition = Vec::with_capacity(l.len() * rank);
        let mut output = Vec::with_capacity(l.len() * rank);
        for s in l.ids() {
            let ds = l.lcomp(s);
            for i in 0..rank {
                let x = Gen(i as u16);
                let ax = l.atom(x);
                let t = l.rcomp(l.under(l.lcomp(l.lcomp(ax)), ds));
                if !l.right_divides(ax, t) {
                    return Err(broken(l, s, x, "x does not right-divide T(s,x)"));
                }
                let c = l.right_quotient(t, ax);
                if !l.right_divides(c, s) {
                    return Err(broken(l, s, x, "T(s,x)/x does not right-divide s"));
                }
                let o = l.rep(l.right_quotient(s, c)).to_vec();
                let mut lhs = l.rep(s).to_vec();
                lhs.push(x);
                let mut rhs = o.clone();
                rhs.extend_from_slice(l.rep(t));
                if !rev.positive_equal(&lhs, &rhs)? {
                    return Err(broken(l, s, x, "s·x differs from output·T(s,x)"));
                }
                transition.push(t);
                output.push(o);
            }
        }
        let alphabet = l.structure().table.alphabet();
        Ok(Transducer {
            rank,
            states: l.ids().map(|s| l.format(s)).collect(),
            atom_names: alphabet.names().to_vec(),
            delta: l.delta(),
            transition,
            output,
        })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn delta(&self) -> SimpleId {
        self.delta
    }

    pub fn transition(&self, s: SimpleId, x: Gen) -> SimpleId {
        self.transition[s.idx() * self.rank + x.idx()]
    }

    pub fn output(&self, s: SimpleId, x: Gen) -> &[Gen] {
        &self.output[s.idx() * self.rank + x.idx()]
    }

    pub fn run(&self, w: &[Gen]) -> Run {
        let mut s = SimpleId::ONE;
        let mut emitted = Word::new();
        for &x in w {
            emitted.extend_from_slice(self.output(s, x));
            s = self.transition(s, x);
        }
        Run { final_state: s, emitted }
    }

    /// Normal form `a_p, …, a_1` by repeated runs on the emitted word.
    pub fn normal_form(&self, w: &[Gen]) -> Result<Vec<SimpleId>> {
        let mut out = Vec::new();
        let mut cur = w.to_vec();
        let cap = w.len();
        while !cur.is_empty() {
            if out.len() >= cap {
                return Err(Error::limit("transducer passes", cap));
            }
            let r = self.run(&cur);
            out.push(r.final_state);
            cur = r.emitted;
        }
        out.reverse();
        Ok(out)
    }

    fn label(&self, w: &[Gen]) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        w.iter().map(|g| self.atom_names[g.idx()].as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph transducer {\n  rankdir=LR;\n  start [shape=point];\n");
        for (i, name) in self.states.iter().enumerate() {
            let shape = if i == 0 { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  s{i} [label=\"{name}\", shape={shape}];");
        }
        out.push_str("  start -> s0;\n");
        for s in 0..self.states.len() {
            for x in 0..self.rank {
                let k = s * self.rank + x;
                let _ = writeln!(
                    out,
                    "  s{} -> s{} [label=\"{} / {}\"];",
                    s,
                    self.transition[k].0,
                    self.atom_names[x],
                    self.label(&self.output[k])
                );
            }
        }
        out.push_str("}\n");
        out
    }

    /// `{states, transitions: [[state, atom, state, "label"]]}`.
    pub fn to_json(&self) -> String {
        let mut transitions = Vec::new();
        for s in 0..self.states.len() {
            for x in 0..self.rank {
                let k = s * self.rank + x;
                let label = self.output[k].iter().map(|g| self.atom_names[g.idx()].as_str()).collect::<Vec<_>>().join(" ");
                transitions.push(json!([s, self.atom_names[x], self.transition[k].0, label]));
            }
        }
        let v: Value = json!({ "states": self.states, "transitions": transitions });
        serde_json::to_string_pretty(&v).expect("json")
    }
}

fn broken(l: &SimpleLattice, s: SimpleId, x: Gen, what: &str) -> Error {
    let a = l.structure().table.alphabet();
    Error::NotVerified(format!("transducer at ({}, {}): {what}", l.format(s), a.name(x)))
}
