//! Presentations of torus link monoids and related families.

use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::{Ball, DEFAULT_MAX_BALL};
use crate::words::{
    free_reduce, inverse_signed, power, Alphabet, ComplementTable, Gen, Letter, Presentation,
    Relation, SignedWord, Word,
};

/// Parameters of the `(p, q)` torus link with `q = pα + β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusParams {
    p: usize,
    q: usize,
    alpha: usize,
    beta: usize,
    gcd: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl TorusParams {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p < 2 || q < p {
            return Err(Error::InvalidParams(format!(
                "torus parameters need 2 <= p <= q, got p={p}, q={q}"
            )));
        }
        Ok(TorusParams {
            p,
            q,
            alpha: q / p,
            beta: q % p,
            gcd: gcd(p, q),
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn gcd(&self) -> usize {
        self.gcd
    }

    pub fn divides(&self) -> bool {
        self.beta == 0
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::indexed("x", self.p)
    }

    /// `x_m`, with the subscript reduced into `[1, p]`.
    fn x(&self, m: i64) -> Gen {
        Gen((m - 1).rem_euclid(self.p as i64) as u16)
    }

    /// `x_1 ⋯ x_p`.
    pub fn cycle(&self) -> Word {
        (0..self.p as u16).map(Gen).collect()
    }

    /// The cyclic shift `x_i x_{i+1} ⋯ x_{i-1}` of the product of atoms.
    pub fn shifted_cycle(&self, i: usize) -> Word {
        (0..self.p).map(|k| self.x((i + k) as i64)).collect()
    }

    /// `(x_1 ⋯ x_p)^{q/gcd(p,q)}`.
    pub fn garside_element(&self) -> Word {
        power(&self.cycle(), self.q / self.gcd)
    }
}

impl fmt::Display for TorusParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// `(x_1⋯x_p)^z · x_{e+1}⋯x_p · (x_1⋯x_p)^ℓ · x_{1+p−β}⋯x_{e−1+p−β}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WWord {
    pub z: usize,
    pub e: usize,
    pub l: usize,
    pub params: TorusParams,
}

impl WWord {
    pub fn expand(&self) -> Word {
        let t = &self.params;
        let (p, b) = (t.p as i64, t.beta as i64);
        let e = self.e as i64;
        let mut w = power(&t.cycle(), self.z);
        w.extend((e + 1..=p).map(|m| t.x(m)));
        w.extend(power(&t.cycle(), self.l));
        w.extend((1 + p - b..=e - 1 + p - b).map(|m| t.x(m)));
        w
    }
}

/// `w_{z,e,ℓ}`, where `ℓ` may be `-1` when `e = 0` (then the word is a plain power).
fn w_word(t: &TorusParams, z: usize, e: usize, l: i64) -> Word {
    if e == 0 {
        let n = z as i64 + 1 + l;
        return power(&t.cycle(), n.max(0) as usize);
    }
    WWord {
        z,
        e,
        l: l as usize,
        params: *t,
    }
    .expand()
}

/// The defining presentation of the torus link monoid.
///
/// For `p | q` this is the chain `Π_1^k = Π_2^k = ⋯ = Π_p^k` of cyclic
/// shifts, `k = q/p`. Otherwise it has `β − 1` relations of the form
/// `Π^{α+1} = x_e⋯x_p Π^α x_{p−β+1}⋯x_{e−1+p−β}` and `p − β` relations
/// `Π^α x_i = x_{β+i} Π^α`.
pub fn torus_presentation(t: TorusParams) -> Presentation {
    let (p, a, b) = (t.p, t.alpha, t.beta);
    let mut relations = Vec::new();
    if t.divides() {
        for i in 1..p {
            relations.push(Relation {
                lhs: power(&t.shifted_cycle(i), a),
                rhs: power(&t.shifted_cycle(i + 1), a),
            });
        }
    } else {
        let pa = power(&t.cycle(), a);
        for e in 2..=b {
            let mut rhs: Word = (e..=p).map(|m| t.x(m as i64)).collect();
            rhs.extend(&pa);
            rhs.extend((p - b + 1..=e - 1 + p - b).map(|m| t.x(m as i64)));
            relations.push(Relation {
                lhs: power(&t.cycle(), a + 1),
                rhs,
            });
        }
        for i in 1..=p - b {
            let mut lhs = pa.clone();
            lhs.push(t.x(i as i64));
            let mut rhs = vec![t.x((b + i) as i64)];
            rhs.extend(&pa);
            relations.push(Relation { lhs, rhs });
        }
    }
    Presentation {
        alphabet: t.alphabet(),
        relations,
    }
}

/// `x_i \ x_j` for the torus link monoid, 1-based subscripts.
fn torus_complement(t: &TorusParams, i: usize, j: usize) -> Word {
    if t.divides() {
        return power(&t.shifted_cycle(i), t.alpha)[1..].to_vec();
    }
    let (a, b) = (t.alpha as i64, t.beta);
    let (s, e) = ((i - 1) / b, (i - 1) % b + 1);
    let (tt, f) = ((j - 1) / b, (j - 1) % b + 1);
    let (si, ti) = (s as i64, tt as i64);
    let sa = s * t.alpha;
    let ta = tt * t.alpha;
    let letter = |offset: i64, f: usize| t.x(offset * b as i64 + f as i64);
    let cat = |mut w: Word, rest: Word| {
        w.extend(rest);
        w
    };
    match (e == 1, f == 1) {
        (true, true) => {
            if ti < si {
                w_word(t, ta, 0, a - 1)
            } else {
                cat(w_word(t, sa, 1, a - 1), vec![letter(ti - si - 1, 1)])
            }
        }
        (false, true) => {
            if ti < si {
                w_word(t, ta, 0, a - 1)
            } else if ti <= si + 1 {
                w_word(t, sa, e, a)
            } else {
                let w = cat(w_word(t, sa, e, a), w_word(t, 0, 0, a - 2));
                cat(w, vec![letter(ti - si - 2, 1)])
            }
        }
        (true, false) => {
            if si < ti {
                cat(w_word(t, sa, 1, a - 1), vec![letter(ti - si - 1, f)])
            } else if si <= ti + 1 {
                w_word(t, sa, 1, (ti - si + 1) * a)
            } else {
                w_word(t, ta, 0, 2 * a - 1)
            }
        }
        (false, false) => {
            if ti < si - 1 {
                w_word(t, ta, 0, 2 * a - 1)
            } else if ti == si - 1 || ti == si {
                w_word(t, sa, e, a)
            } else if ti == si + 1 {
                cat(w_word(t, sa, e, a), w_word(t, 0, 0, a - 1))
            } else {
                let w = cat(w_word(t, sa, e, a), w_word(t, 0, 0, a - 2));
                cat(w, vec![letter(ti - si - 2, f)])
            }
        }
    }
}

/// The complement table of the torus link monoid on `x_1, …, x_p`.
pub fn torus_complement_table(t: TorusParams) -> ComplementTable {
    let alphabet = t.alphabet();
    let mut table = ComplementTable::empty(alphabet);
    for i in 1..=t.p {
        for j in 1..=t.p {
            if i != j {
                table.set(t.x(i as i64), t.x(j as i64), torus_complement(&t, i, j));
            }
        }
    }
    table
}

/// Outcome of checking a complement table against the defining presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checked: usize,
    /// Relations longer than the ball radius, not checked.
    pub skipped: usize,
    /// The first relation that does not hold, as text.
    pub failure: Option<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that each relation of `table` holds in the monoid of the defining
/// presentation and conversely, on balls of radius `depth`.
pub fn validate_table(table: &ComplementTable, t: TorusParams, depth: usize) -> Result<ValidationReport> {
    validate_table_with_limit(table, t, depth, DEFAULT_MAX_BALL)
}

pub fn validate_table_with_limit(
    table: &ComplementTable,
    t: TorusParams,
    depth: usize,
    max_ball: usize,
) -> Result<ValidationReport> {
    let defining = torus_presentation(t);
    let induced = table.to_presentation();
    let mut report = ValidationReport {
        checked: 0,
        skipped: 0,
        failure: None,
    };
    for (source, target) in [(&induced, &defining), (&defining, &induced)] {
        let ball = Ball::build(target, depth, 0, max_ball)?;
        for r in &source.relations {
            match ball.equal(&r.lhs, &r.rhs) {
                Ok(true) => report.checked += 1,
                Ok(false) => {
                    report.failure = Some(format!(
                        "{} = {}",
                        source.alphabet.format_word(&r.lhs),
                        source.alphabet.format_word(&r.rhs)
                    ));
                    return Ok(report);
                }
                Err(_) => report.skipped += 1,
            }
        }
    }
    Ok(report)
}

/// `τ(i) = i + p − β` for `i ≤ β`, `i − β` otherwise, as a 1-based map.
pub fn tau_permutation(t: TorusParams) -> Vec<usize> {
    (1..=t.p)
        .map(|i| if i <= t.beta { i + t.p - t.beta } else { i - t.beta })
        .collect()
}

/// Order of a permutation given as a 1-based image vector.
pub fn permutation_order(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] - 1;
            len += 1;
        }
        order = order / gcd(order, len) * len;
    }
    order
}

/// Least `h > 0` with `x_i Π^h = Π^h x_i` for all `i`, from the exponent
/// picked up along each orbit of `τ`.
pub fn minimal_commuting_power(t: TorusParams) -> usize {
    let tau = tau_permutation(t);
    let inc = |i: usize| if i <= t.beta { t.alpha + 1 } else { t.alpha };
    let mut seen = vec![false; t.p];
    let mut h = 1;
    for start in 1..=t.p {
        if seen[start - 1] {
            continue;
        }
        let mut sum = 0;
        let mut i = start;
        while !seen[i - 1] {
            seen[i - 1] = true;
            sum += inc(i);
            i = tau[i - 1];
        }
        h = h / gcd(h, sum) * sum;
    }
    h
}

/// A braid word on `strands` strands; letters are `(i, inverse)` with `1 ≤ i < strands`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, bool)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, bool)>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidParams("a braid needs at least 2 strands".into()));
        }
        if let Some(&(i, _)) = letters.iter().find(|(i, _)| *i == 0 || *i >= strands) {
            return Err(Error::InvalidParams(format!(
                "crossing index {i} out of range for {strands} strands"
            )));
        }
        Ok(BraidWord { strands, letters })
    }

    /// `(σ_1 ⋯ σ_{p−1})^q`.
    pub fn torus(p: usize, q: usize) -> Result<Self> {
        let letters = (0..q).flat_map(|_| (1..p).map(|i| (i, false))).collect();
        BraidWord::new(p, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, bool)] {
        &self.letters
    }

    /// `self · other`.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend(&other.letters);
        BraidWord {
            strands: self.strands.max(other.strands),
            letters,
        }
    }
}

/// Image of `w` under the right action of `b` on the free group `F(x_1, …, x_n)`.
pub fn braid_act(b: &BraidWord, w: &[Letter]) -> SignedWord {
    let mut cur = free_reduce(w);
    for &(j, inverse) in &b.letters {
        let xj = Gen((j - 1) as u16);
        let xk = Gen(j as u16);
        let image = |g: Gen| -> SignedWord {
            let (p, n) = (Letter::pos, Letter::neg);
            match (inverse, g) {
                (false, g) if g == xj => vec![p(xj), p(xk), n(xj)],
                (false, g) if g == xk => vec![p(xj)],
                (true, g) if g == xj => vec![p(xk)],
                (true, g) if g == xk => vec![n(xk), p(xj), p(xk)],
                (_, g) => vec![p(g)],
            }
        };
        let mut next = Vec::with_capacity(cur.len() + 4);
        for l in &cur {
            let im = image(l.gen);
            if l.inverse {
                next.extend(inverse_signed(&im));
            } else {
                next.extend(im);
            }
        }
        cur = free_reduce(&next);
    }
    cur
}

/// A group presentation: relations are equalities of signed words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub alphabet: Alphabet,
    pub relations: Vec<(SignedWord, SignedWord)>,
}

impl GroupPresentation {
    pub fn format(&self) -> String {
        let mut out = format!("gens: {}\n", self.alphabet.names().join(" "));
        for (l, r) in &self.relations {
            out.push_str(&format!(
                "grel: {} = {}\n",
                self.alphabet.format_signed(l),
                self.alphabet.format_signed(r)
            ));
        }
        out
    }
}

/// `⟨x_1, …, x_n : x_i = x_i • b⟩`, with trivial relations dropped.
pub fn artin_link_presentation(b: &BraidWord) -> GroupPresentation {
    let alphabet = Alphabet::indexed("x", b.strands);
    let relations = alphabet
        .gens()
        .filter_map(|g| {
            let lhs = vec![Letter::pos(g)];
            let rhs = braid_act(b, &lhs);
            (rhs != lhs).then_some((lhs, rhs))
        })
        .collect();
    GroupPresentation { alphabet, relations }
}

struct ArcUnion {
    parent: Vec<usize>,
}

impl ArcUnion {
    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
    }
}

/// The Wirtinger monoid of the closure of a positive braid.
///
/// Strands run downwards and the strand entering a crossing `σ_i` from
/// position `i` passes over. Each crossing contributes `x_i x_j = x_k x_i`
/// with `x_i` the over-arc, `x_j` the incoming and `x_k` the outgoing
/// under-arc.
pub fn wirtinger_monoid(b: &BraidWord) -> Result<Presentation> {
    if let Some(pos) = b.letters.iter().position(|&(_, inv)| inv) {
        return Err(Error::NonPositiveBraid(pos));
    }
    let n = b.strands;
    let mut arcs = ArcUnion {
        parent: (0..n).collect(),
    };
    let mut cur: Vec<usize> = (0..n).collect();
    let mut crossings = Vec::with_capacity(b.letters.len());
    for &(i, _) in &b.letters {
        let over = cur[i - 1];
        let incoming = cur[i];
        let outgoing = arcs.fresh();
        cur[i] = over;
        cur[i - 1] = outgoing;
        crossings.push((over, incoming, outgoing));
    }
    for (pos, &arc) in cur.iter().enumerate() {
        arcs.union(arc, pos);
    }

    let mut names: Vec<Option<u16>> = vec![None; arcs.parent.len()];
    let mut count = 0u16;
    let mut gen_of = |arcs: &mut ArcUnion, a: usize| {
        let r = arcs.find(a);
        *names[r].get_or_insert_with(|| {
            count += 1;
            count - 1
        })
    };
    // name arcs in order of first use by a crossing
    let mut relations = Vec::with_capacity(crossings.len());
    for &(over, incoming, outgoing) in &crossings {
        let o = Gen(gen_of(&mut arcs, over));
        let i = Gen(gen_of(&mut arcs, incoming));
        let k = Gen(gen_of(&mut arcs, outgoing));
        relations.push(Relation {
            lhs: vec![o, i],
            rhs: vec![k, o],
        });
    }
    Presentation::new(Alphabet::indexed("x", count as usize), relations)
}

/// `⟨x, y : xy²x·(yx)^k y·xy²x = (yx)^k y·xy²x·(yx)^k y⟩`.
pub fn mk22_presentation(k: usize) -> Presentation {
    let alphabet = Alphabet::new(&["x", "y"]).unwrap();
    let (x, y) = (Gen(0), Gen(1));
    let xyyx = vec![x, y, y, x];
    let yxk = power(&[y, x], k);
    let mut lhs = xyyx.clone();
    lhs.extend(&yxk);
    lhs.push(y);
    lhs.extend(&xyyx);
    let mut rhs = yxk.clone();
    rhs.push(y);
    rhs.extend(&xyyx);
    rhs.extend(&yxk);
    rhs.push(y);
    Presentation {
        alphabet,
        relations: vec![Relation { lhs, rhs }],
    }
}

/// A bijection `a → b` of generators under which the two presentations
/// define the same congruence on words up to `radius` letters.
///
/// Brute force over all bijections; meant for small alphabets only.
pub fn isomorphism_up_to_renaming(
    a: &Presentation,
    b: &Presentation,
    radius: usize,
) -> Result<Option<Vec<Gen>>> {
    let n = a.rank();
    if n != b.rank() {
        return Ok(None);
    }
    if n > 10 {
        return Err(Error::limit("isomorphism search alphabet", 10));
    }
    let ba = Ball::build(a, radius, 0, DEFAULT_MAX_BALL)?;
    let bb = Ball::build(b, radius, 0, DEFAULT_MAX_BALL)?;
    if ba.class_count() != bb.class_count() {
        return Ok(None);
    }
    // the congruence of `a`, as the non-trivial classes
    let classes: Vec<Vec<Word>> = (0..ba.class_count() as u32)
        .map(|c| ba.members(c))
        .filter(|m| m.len() > 1)
        .collect();
    let mut perm: Vec<u16> = (0..n as u16).collect();
    let holds = |perm: &[u16]| {
        classes.iter().all(|members| {
            let image = |w: &Word| -> Word { w.iter().map(|g| Gen(perm[g.idx()])).collect() };
            let c0 = bb.class_of(&image(&members[0])).unwrap();
            members[1..]
                .iter()
                .all(|m| bb.class_of(&image(m)).unwrap() == c0)
        })
    };
    // Heap's algorithm
    let mut c = vec![0usize; n];
    if holds(&perm) {
        return Ok(Some(perm.into_iter().map(Gen).collect()));
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if holds(&perm) {
                return Ok(Some(perm.into_iter().map(Gen).collect()));
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(None)
}
