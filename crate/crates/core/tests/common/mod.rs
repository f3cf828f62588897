#![allow(dead_code)]

use garside_core::criterion::{CheckOptions, GarsideStructure};
use garside_core::generators::{torus_complement_table, TorusParams};
use garside_core::lattice::SimpleLattice;
use garside_core::{Gen, Presentation, Word};
use rand::Rng;

pub fn fixture(name: &str) -> Presentation {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    Presentation::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn torus(p: usize, q: usize) -> (TorusParams, Presentation) {
    let t = TorusParams::new(p, q).unwrap();
    (t, torus_complement_table(t).to_presentation())
}

pub fn lattice(p: &Presentation, delta: Option<&str>) -> SimpleLattice {
    let d = delta.map(|s| p.alphabet.parse_word(s).unwrap());
    let s = GarsideStructure::verify(p, d.as_deref(), &CheckOptions::default()).unwrap();
    SimpleLattice::build(&s).unwrap()
}

pub fn torus_lattice(p: usize, q: usize) -> SimpleLattice {
    let (t, pres) = torus(p, q);
    let s = GarsideStructure::verify(&pres, Some(&t.garside_element()), &CheckOptions::default()).unwrap();
    SimpleLattice::build(&s).unwrap()
}

/// Named verified structures used across the suites.
pub fn fixtures() -> Vec<(&'static str, SimpleLattice)> {
    vec![
        ("braid", lattice(&fixture("braid.pres"), None)),
        ("Mchi", lattice(&fixture("Mchi.pres"), None)),
        ("A23", torus_lattice(2, 3)),
        ("A34", torus_lattice(3, 4)),
        ("A46", torus_lattice(4, 6)),
        ("W34", lattice(&fixture("W34c.pres"), Some("x1 x4 x7"))),
    ]
}

pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| Gen(rng.gen_range(0..rank) as u16)).collect()
}

/// Every word of length exactly `n` over `rank` letters.
pub fn words_of_length(rank: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..rank).map(move |g| {
                    let mut v = w.clone();
                    v.push(Gen(g as u16));
                    v
                })
            })
            .collect();
    }
    out
}

pub fn words_up_to(rank: usize, n: usize) -> Vec<Word> {
    (0..=n).flat_map(|k| words_of_length(rank, k)).collect()
}

/// Applies relation `r` (in either direction) at the first position where it fits
/// at or after `start`, wrapping around.
pub fn rewrite_once(p: &Presentation, w: &[Gen], r: usize, flip: bool, start: usize) -> Option<Word> {
    let rel = &p.relations[r];
    let (from, to) = if flip { (&rel.rhs, &rel.lhs) } else { (&rel.lhs, &rel.rhs) };
    if from.len() > w.len() {
        return None;
    }
    let slots = w.len() - from.len() + 1;
    (0..slots).map(|k| (start + k) % slots).find(|&i| w[i..i + from.len()] == from[..]).map(|i| {
        let mut out = w[..i].to_vec();
        out.extend_from_slice(to);
        out.extend_from_slice(&w[i + from.len()..]);
        out
    })
}
