//! Garsidity check for complemented presentations: normedness, the cube
//! condition on letters, Adjan graphs and Garside element verification.

use std::collections::{HashMap, HashSet};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::reversing::{Reversing, DEFAULT_MAX_CELLS};
use crate::words::{power, ComplementTable, Gen, Presentation, Word};

/// Result of the weight search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normedness {
    /// Positive integer weights balancing every relation, when they exist.
    pub weights: Option<Vec<u64>>,
    /// Why no positive weights exist.
    pub witness: Option<String>,
}

impl Normedness {
    pub fn is_normed(&self) -> bool {
        self.weights.is_some()
    }
}

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Finds strictly positive weights `w` with `w(lhs) = w(rhs)` for every relation.
///
/// Length-preserving presentations get the all-ones vector; otherwise the
/// balance equations are solved exactly and the remaining inequalities
/// `w ≥ 1` are decided by Fourier–Motzkin elimination.
pub fn check_normed(p: &Presentation) -> Normedness {
    let n = p.rank();
    if p.is_homogeneous() {
        return Normedness {
            weights: Some(vec![1; n]),
            witness: None,
        };
    }
    let rows: Vec<Vec<i64>> = p
        .relations
        .iter()
        .map(|r| {
            let mut row = vec![0i64; n];
            r.lhs.iter().for_each(|g| row[g.idx()] += 1);
            r.rhs.iter().for_each(|g| row[g.idx()] -= 1);
            row
        })
        .collect();

    for (i, row) in rows.iter().enumerate() {
        let pos = row.iter().any(|&c| c > 0);
        let neg = row.iter().any(|&c| c < 0);
        if pos != neg {
            let terms: Vec<String> = row
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(g, &c)| format!("{}·w({})", c.abs(), p.alphabet.name(Gen(g as u16))))
                .collect();
            return Normedness {
                weights: None,
                witness: Some(format!("relation {} forces {} = 0", i + 1, terms.join(" + "))),
            };
        }
    }

    match positive_kernel_vector(&rows, n) {
        Some(w) => Normedness {
            weights: Some(w),
            witness: None,
        },
        None => Normedness {
            weights: None,
            witness: Some("no strictly positive weights balance the relations".into()),
        },
    }
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, k);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for k in 0..m.len() {
            if k != r && !m[k][c].is_zero() {
                let f = m[k][c].clone();
                let pivot_row = m[r].clone();
                for (v, pv) in m[k].iter_mut().zip(pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Constraint `Σ coef·y ≥ rhs` over the free variables.
#[derive(Clone, Debug)]
struct Ineq {
    coef: Vec<Q>,
    rhs: Q,
}

fn positive_kernel_vector(rows: &[Vec<i64>], n: usize) -> Option<Vec<u64>> {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&c| q(c)).collect()).collect();
    let pivots = rref(&mut m, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nf = free.len();
    if nf == 0 {
        return None;
    }
    // w_free ≥ 1 and w_pivot = -Σ m[r][f] w_f ≥ 1
    let mut ineqs: Vec<Ineq> = (0..nf)
        .map(|j| {
            let mut coef = vec![Q::zero(); nf];
            coef[j] = Q::one();
            Ineq { coef, rhs: Q::one() }
        })
        .collect();
    for row in &m {
        ineqs.push(Ineq {
            coef: free.iter().map(|&f| -row[f].clone()).collect(),
            rhs: Q::one(),
        });
    }

    // eliminate variables nf-1, …, 1, remembering the systems for back substitution
    let mut stages = vec![ineqs.clone()];
    for v in (1..nf).rev() {
        let cur = stages.last().unwrap();
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for ie in cur {
            if ie.coef[v].is_positive() {
                lower.push(ie.clone());
            } else if ie.coef[v].is_negative() {
                upper.push(ie.clone());
            } else {
                rest.push(ie.clone());
            }
        }
        for lo in &lower {
            for up in &upper {
                let (a, b) = (lo.coef[v].clone(), -up.coef[v].clone());
                let coef: Vec<Q> = lo
                    .coef
                    .iter()
                    .zip(&up.coef)
                    .map(|(x, y)| x * &b + y * &a)
                    .collect();
                rest.push(Ineq {
                    coef,
                    rhs: &lo.rhs * &b + &up.rhs * &a,
                });
            }
        }
        stages.push(rest);
    }

    let mut y: Vec<Q> = vec![Q::zero(); nf];
    for v in 0..nf {
        let sys = &stages[nf - 1 - v];
        let mut lo: Option<Q> = None;
        let mut hi: Option<Q> = None;
        for ie in sys {
            let c = &ie.coef[v];
            if c.is_zero() {
                continue;
            }
            let known: Q = (0..v).map(|k| &ie.coef[k] * &y[k]).sum();
            let bound = (&ie.rhs - known) / c;
            if c.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        let val = lo.unwrap_or_else(Q::one);
        if hi.is_some_and(|h| val > h) {
            return None;
        }
        y[v] = val;
    }

    let mut w = vec![Q::zero(); n];
    for (j, &f) in free.iter().enumerate() {
        w[f] = y[j].clone();
    }
    for (row, &pc) in m.iter().zip(&pivots) {
        w[pc] = -free
            .iter()
            .zip(&y)
            .map(|(&f, yv)| &row[f] * yv)
            .sum::<Q>();
    }
    if w.iter().any(|v| !v.is_positive()) {
        return None;
    }
    let denom = w
        .iter()
        .fold(BigInt::one(), |acc, v| num::integer::lcm(acc, v.denom().clone()));
    let ints: Vec<BigInt> = w.iter().map(|v| (v * Q::from_integer(denom.clone())).to_integer()).collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |acc, v| num::integer::gcd(acc, v.clone()));
    ints.iter().map(|v| (v / &g).to_u64()).collect()
}

/// `((x\y)\(x\z))\((y\x)\(y\z)) = ε`.
pub fn cube_condition(rev: &Reversing<'_>, x: Gen, y: Gen, z: Gen) -> Result<bool> {
    let (xy, yx) = rev.complement(&[x], &[y])?;
    let xz = rev.under(&[x], &[z])?;
    let yz = rev.under(&[y], &[z])?;
    let left = rev.under(&xy, &xz)?;
    let right = rev.under(&yx, &yz)?;
    Ok(rev.under(&left, &right)?.is_empty())
}

/// Cube condition on all triples of pairwise distinct letters; returns the
/// lexicographically first failing triple.
pub fn check_coherence(table: &ComplementTable, max_cells: usize) -> Result<Option<[Gen; 3]>> {
    let rev = Reversing::with_max_cells(table, max_cells);
    let n = table.rank() as u16;
    let triples: Vec<[Gen; 3]> = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| [Gen(a), Gen(b), Gen(c)])))
        .filter(|[a, b, c]| a != b && b != c && a != c)
        .collect();
    let results: Vec<Result<bool>> = triples
        .par_iter()
        .map(|&[x, y, z]| cube_condition(&rev, x, y, z))
        .collect();
    for (t, r) in triples.into_iter().zip(results) {
        if !r? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Left and right Adjan graphs of a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjanGraphs {
    /// `{first(lhs), first(rhs)}` per relation.
    pub left: Vec<(Gen, Gen)>,
    /// `{last(lhs), last(rhs)}` per relation.
    pub right: Vec<(Gen, Gen)>,
    pub rank: usize,
}

/// True when the multigraph has no cycle; loops and parallel edges count.
fn forest(rank: usize, edges: &[(Gen, Gen)]) -> bool {
    let mut parent: Vec<usize> = (0..rank).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a.idx()), find(&mut parent, b.idx()));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

impl AdjanGraphs {
    pub fn left_acyclic(&self) -> bool {
        forest(self.rank, &self.left)
    }

    pub fn right_acyclic(&self) -> bool {
        forest(self.rank, &self.right)
    }
}

pub fn adjan_graphs(p: &Presentation) -> AdjanGraphs {
    AdjanGraphs {
        left: p.relations.iter().map(|r| (r.lhs[0], r.rhs[0])).collect(),
        right: p
            .relations
            .iter()
            .map(|r| (*r.lhs.last().unwrap(), *r.rhs.last().unwrap()))
            .collect(),
        rank: p.rank(),
    }
}

/// Outcome of checking a candidate Garside element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaStatus {
    /// Left and right divisors coincide; carries the permutation `x ↦ φ(x)`
    /// of the atoms defined by `xΔ = Δφ(x)`.
    Verified(Vec<Gen>),
    AtomsMissing(Vec<Gen>),
    NotDivisorClosedEqual(String),
    ResourceLimit,
}

impl DeltaStatus {
    pub fn is_verified(&self) -> bool {
        matches!(self, DeltaStatus::Verified(_))
    }
}

/// Checks that `delta` is a Garside element.
///
/// Every atom must left-divide `delta`, and for every atom `x` the product
/// `x·delta` must equal `delta·φ(x)` for a letter `φ(x)`, with `φ` a
/// permutation. Then conjugation by `delta` permutes the atoms, so it maps
/// left divisors of `delta` onto right divisors and both sets coincide.
pub fn verify_garside_element(table: &ComplementTable, delta: &[Gen], max_cells: usize) -> DeltaStatus {
    match quasi_central(table, delta, max_cells) {
        Ok(s) => s,
        Err(_) => DeltaStatus::ResourceLimit,
    }
}

fn quasi_central(table: &ComplementTable, delta: &[Gen], max_cells: usize) -> Result<DeltaStatus> {
    let rev = Reversing::with_max_cells(table, max_cells);
    let atoms: Vec<Gen> = table.alphabet().gens().collect();
    let mut missing = Vec::new();
    for &x in &atoms {
        if !rev.left_divides(&[x], delta)? {
            missing.push(x);
        }
    }
    if !missing.is_empty() {
        return Ok(DeltaStatus::AtomsMissing(missing));
    }
    let name = |g: Gen| table.alphabet().name(g).to_string();
    let mut phi = Vec::with_capacity(atoms.len());
    for &x in &atoms {
        let mut xd = vec![x];
        xd.extend_from_slice(delta);
        let (q, r) = rev.complement(delta, &xd)?;
        if !r.is_empty() || q.len() != 1 {
            return Ok(DeltaStatus::NotDivisorClosedEqual(format!(
                "{}·Δ is not Δ times an atom",
                name(x)
            )));
        }
        phi.push(q[0]);
    }
    let mut seen = vec![false; atoms.len()];
    for &g in &phi {
        if std::mem::replace(&mut seen[g.idx()], true) {
            return Ok(DeltaStatus::NotDivisorClosedEqual(format!(
                "conjugation by Δ sends two atoms to {}",
                name(g)
            )));
        }
    }
    Ok(DeltaStatus::Verified(phi))
}

/// Left divisors of `delta` by closure from `ε`, deduplicated by redressing.
pub fn left_divisors(table: &ComplementTable, delta: &[Gen], max_cells: usize, max_count: usize) -> Result<Vec<Word>> {
    let rev = Reversing::with_max_cells(table, max_cells);
    let atoms: Vec<Gen> = table.alphabet().gens().collect();
    let mut found: Vec<Word> = vec![vec![]];
    let mut frontier = 0;
    while frontier < found.len() {
        let s = found[frontier].clone();
        frontier += 1;
        for &x in &atoms {
            let mut sx = s.clone();
            sx.push(x);
            if !rev.left_divides(&sx, delta)? {
                continue;
            }
            let mut known = false;
            for t in &found {
                if t.len() == sx.len() && rev.positive_equal(t, &sx)? {
                    known = true;
                    break;
                }
            }
            if !known {
                if found.len() >= max_count {
                    return Err(Error::limit("divisors", max_count));
                }
                found.push(sx);
            }
        }
    }
    Ok(found)
}

/// Checks the Garside element by enumerating its divisors: the right
/// divisors are the complements `s\Δ` of the left divisors `s`, and each of
/// them must again be a left divisor.
pub fn verify_by_enumeration(table: &ComplementTable, delta: &[Gen], max_cells: usize, max_count: usize) -> Result<DeltaStatus> {
    let rev = Reversing::with_max_cells(table, max_cells);
    let divisors = left_divisors(table, delta, max_cells, max_count)?;
    let missing: Vec<Gen> = table
        .alphabet()
        .gens()
        .filter(|x| !divisors.iter().any(|d| d.as_slice() == [*x]))
        .collect();
    if !missing.is_empty() {
        return Ok(DeltaStatus::AtomsMissing(missing));
    }
    for s in &divisors {
        let c = rev.under(s, delta)?;
        if !rev.left_divides(&c, delta)? {
            return Ok(DeltaStatus::NotDivisorClosedEqual(format!(
                "right divisor {} is not a left divisor",
                table.alphabet().format_word(&c)
            )));
        }
    }
    match quasi_central(table, delta, max_cells)? {
        DeltaStatus::Verified(phi) => Ok(DeltaStatus::Verified(phi)),
        other => Ok(other),
    }
}

/// Tuning for [`garside_report`].
#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub max_cells: usize,
    /// Bound on the powers of the atom lcm tried as candidates.
    pub max_power: usize,
    /// Bound on the closure of the atoms under complement.
    pub max_closure: usize,
    /// A presentation of the same monoid whose Adjan graphs are checked
    /// for cancellativity in place of the input's.
    pub cancellativity_source: Option<Presentation>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_cells: DEFAULT_MAX_CELLS,
            max_power: 8,
            max_closure: 5000,
            cancellativity_source: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Garside,
    NotGarside,
    Inconclusive,
}

/// Machine-readable outcome of the criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GarsideReport {
    pub complemented: bool,
    pub normed: bool,
    pub weights: Vec<u64>,
    pub coherent: bool,
    pub failing_triple: Option<[String; 3]>,
    pub adjan_left: bool,
    pub adjan_right: bool,
    pub garside_element: Option<String>,
    /// Which argument establishes cancellativity: `"adjan"`,
    /// `"adjan-source"`, `"garside-element"` or `"none"`.
    pub cancellativity: String,
    pub verdict: Verdict,
    pub reason: String,
    #[serde(skip)]
    pub delta: Option<Word>,
    #[serde(skip)]
    pub phi: Option<Vec<Gen>>,
    /// The verdict stopped at a budget rather than a mathematical fact.
    #[serde(skip)]
    pub hit_limit: bool,
}

impl GarsideReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut s = String::new();
        s.push_str(&format!("complemented: {}\n", yn(self.complemented)));
        s.push_str(&format!("normed: {}", yn(self.normed)));
        if self.normed {
            let w: Vec<String> = self.weights.iter().map(u64::to_string).collect();
            s.push_str(&format!(" (weights {})", w.join(" ")));
        }
        s.push('\n');
        s.push_str(&format!("coherent: {}", yn(self.coherent)));
        if let Some(t) = &self.failing_triple {
            s.push_str(&format!(" (fails on {} {} {})", t[0], t[1], t[2]));
        }
        s.push('\n');
        s.push_str(&format!("adjan left acyclic: {}\n", yn(self.adjan_left)));
        s.push_str(&format!("adjan right acyclic: {}\n", yn(self.adjan_right)));
        if let Some(d) = &self.garside_element {
            s.push_str(&format!("garside element: {d}\n"));
        }
        s.push_str(&format!("cancellativity: {}\n", self.cancellativity));
        let v = match self.verdict {
            Verdict::Garside => "garside",
            Verdict::NotGarside => "not garside",
            Verdict::Inconclusive => "inconclusive",
        };
        s.push_str(&format!("verdict: {v}\n"));
        if !self.reason.is_empty() {
            s.push_str(&format!("reason: {}\n", self.reason));
        }
        s
    }
}

/// Closure of the atoms under `\`, deduplicated by redressing within
/// classes of equal weight.
fn complement_closure(rev: &Reversing<'_>, weights: Option<&[u64]>, max: usize) -> Result<Vec<Word>> {
    let weight = |w: &[Gen]| -> u64 {
        weights.map_or(0, |ws| w.iter().map(|g| ws[g.idx()]).sum())
    };
    let mut set: Vec<Word> = rev.table().alphabet().gens().map(|g| vec![g]).collect();
    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut seen: HashSet<Word> = set.iter().cloned().collect();
    for (i, w) in set.iter().enumerate() {
        buckets.entry(weight(w)).or_default().push(i);
    }
    let mut i = 0;
    while i < set.len() {
        for j in 0..=i {
            for (a, b) in [(i, j), (j, i)] {
                let c = rev.under(&set[a], &set[b])?;
                if c.is_empty() || !seen.insert(c.clone()) {
                    continue;
                }
                let key = weight(&c);
                let mut known = false;
                for &k in buckets.get(&key).map(Vec::as_slice).unwrap_or(&[]) {
                    if rev.positive_equal(&set[k], &c)? {
                        known = true;
                        break;
                    }
                }
                if !known {
                    if set.len() >= max {
                        return Err(Error::limit("complement closure", max));
                    }
                    buckets.entry(key).or_default().push(set.len());
                    set.push(c);
                }
            }
        }
        i += 1;
    }
    Ok(set)
}

fn lcm_all(rev: &Reversing<'_>, words: &[Word]) -> Result<Word> {
    let mut acc: Word = Vec::new();
    for w in words {
        acc = rev.right_lcm(&acc, w)?;
    }
    Ok(acc)
}

/// Candidate Garside elements in the order they are tried.
pub fn candidate_deltas(table: &ComplementTable, opts: &CheckOptions) -> Result<Vec<Word>> {
    let rev = Reversing::with_max_cells(table, opts.max_cells);
    let atoms: Vec<Word> = table.alphabet().gens().map(|g| vec![g]).collect();
    let v1 = lcm_all(&rev, &atoms)?;
    let mut out = vec![v1.clone()];
    let weights = check_normed(&table.to_presentation()).weights;
    if let Ok(closure) = complement_closure(&rev, weights.as_deref(), opts.max_closure) {
        out.push(lcm_all(&rev, &closure)?);
    }
    for k in 2..=opts.max_power {
        out.push(power(&v1, k));
    }
    Ok(out)
}

/// Runs the criterion on `p`, optionally with a given Garside element.
pub fn garside_report(p: &Presentation, candidate: Option<&[Gen]>, opts: &CheckOptions) -> GarsideReport {
    let adjan = adjan_graphs(p);
    let mut report = GarsideReport {
        complemented: false,
        normed: false,
        weights: vec![],
        coherent: false,
        failing_triple: None,
        adjan_left: adjan.left_acyclic(),
        adjan_right: adjan.right_acyclic(),
        garside_element: None,
        cancellativity: "none".into(),
        verdict: Verdict::Inconclusive,
        reason: String::new(),
        delta: None,
        phi: None,
        hit_limit: false,
    };
    let table = match ComplementTable::from_presentation(p) {
        Ok(t) => t,
        Err(e) => {
            report.verdict = Verdict::NotGarside;
            report.reason = e.to_string();
            return report;
        }
    };
    report.complemented = true;

    let normed = check_normed(p);
    report.normed = normed.is_normed();
    report.weights = normed.weights.clone().unwrap_or_default();

    match check_coherence(&table, opts.max_cells) {
        Ok(None) => report.coherent = true,
        Ok(Some(t)) => {
            let names = t.map(|g| p.alphabet.name(g).to_string());
            report.reason = format!("cube condition fails on ({}, {}, {})", names[0], names[1], names[2]);
            report.failing_triple = Some(names);
            report.verdict = Verdict::NotGarside;
            return report;
        }
        Err(e) => {
            report.hit_limit = e.is_resource_limit();
            report.reason = format!("coherence: {e}");
            return report;
        }
    }

    let candidates = match candidate {
        Some(c) => Ok(vec![c.to_vec()]),
        None => candidate_deltas(&table, opts),
    };
    let candidates = match candidates {
        Ok(c) => c,
        Err(e) => {
            report.hit_limit = e.is_resource_limit();
            report.reason = format!("candidate search: {e}");
            return report;
        }
    };
    let mut last = None;
    for c in candidates {
        let status = verify_garside_element(&table, &c, opts.max_cells);
        if let DeltaStatus::Verified(phi) = status {
            report.garside_element = Some(p.alphabet.format_word(&c));
            report.delta = Some(c);
            report.phi = Some(phi);
            break;
        }
        last = Some(status);
    }

    if report.adjan_left && report.adjan_right {
        report.cancellativity = "adjan".into();
    } else if let Some(src) = &opts.cancellativity_source {
        let g = adjan_graphs(src);
        if g.left_acyclic() && g.right_acyclic() {
            report.cancellativity = "adjan-source".into();
        }
    }
    if report.cancellativity == "none" && report.normed && report.delta.is_some() {
        report.cancellativity = "garside-element".into();
    }

    if !report.normed {
        report.reason = format!("not normed: {}", normed.witness.unwrap_or_default());
    } else if report.delta.is_none() {
        report.reason = match last {
            Some(DeltaStatus::AtomsMissing(m)) => format!(
                "no Garside element found; atoms missing: {}",
                p.alphabet.format_word(&m)
            ),
            Some(DeltaStatus::NotDivisorClosedEqual(why)) => format!("no Garside element found; {why}"),
            Some(DeltaStatus::ResourceLimit) => {
                report.hit_limit = true;
                "no Garside element found within the cell budget".into()
            }
            _ => "no Garside element found".into(),
        };
    } else {
        report.verdict = Verdict::Garside;
    }
    report
}

/// A presentation together with a checked Garside element.
#[derive(Debug, Clone)]
pub struct GarsideStructure {
    pub presentation: Presentation,
    pub table: ComplementTable,
    pub delta: Word,
    /// Conjugation by `Δ` on atoms: `xΔ = Δφ(x)`.
    pub phi_atoms: Vec<Gen>,
    /// True when the criterion did not certify the structure and results
    /// rest on the quasi-centrality check of `Δ` alone.
    pub best_effort: bool,
    pub max_cells: usize,
}

impl GarsideStructure {
    /// Runs the criterion and keeps the structure only on a Garside verdict.
    pub fn verify(p: &Presentation, candidate: Option<&[Gen]>, opts: &CheckOptions) -> Result<Self> {
        let report = garside_report(p, candidate, opts);
        GarsideStructure::from_report(p, &report, opts.max_cells)
    }

    /// The structure certified by a report already computed for `p`.
    pub fn from_report(p: &Presentation, report: &GarsideReport, max_cells: usize) -> Result<Self> {
        if report.verdict != Verdict::Garside {
            if report.hit_limit {
                return Err(Error::limit("reversing cells", max_cells));
            }
            return Err(Error::NotVerified(report.reason.clone()));
        }
        Ok(GarsideStructure {
            presentation: p.clone(),
            table: ComplementTable::from_presentation(p)?,
            delta: report.delta.clone().unwrap(),
            phi_atoms: report.phi.clone().unwrap(),
            best_effort: false,
            max_cells,
        })
    }

    /// Accepts `delta` after checking only that it is quasi-central.
    /// Equalities found by redressing remain sound; inequalities may not be.
    pub fn assume(p: &Presentation, delta: &[Gen], max_cells: usize) -> Result<Self> {
        let table = ComplementTable::from_presentation(p)?;
        match verify_garside_element(&table, delta, max_cells) {
            DeltaStatus::Verified(phi) => Ok(GarsideStructure {
                presentation: p.clone(),
                table,
                delta: delta.to_vec(),
                phi_atoms: phi,
                best_effort: true,
                max_cells,
            }),
            DeltaStatus::ResourceLimit => Err(Error::limit("reversing cells", max_cells)),
            other => Err(Error::NotVerified(format!("{other:?}"))),
        }
    }

    pub fn reversing(&self) -> Reversing<'_> {
        Reversing::with_max_cells(&self.table, self.max_cells)
    }
}
