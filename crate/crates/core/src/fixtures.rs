//! Named rings and seeded random modules.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraSpec, ArtinAlgebra, RingElement};
use crate::error::{Error, Result};
use crate::linalg::DEFAULT_PRIME;
use crate::module::{ModulePresentation, ModuleRep};

/// Declared invariants of a catalog ring, re-verified whenever it is built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureMeta {
    pub name: String,
    pub length: usize,
    pub socle_length: usize,
    pub gorenstein: bool,
    pub ci_codim: Option<usize>,
    pub tags: Vec<String>,
}

struct Entry {
    name: &'static str,
    vars: &'static [&'static str],
    relations: &'static [&'static str],
    /// Adds every monomial of this degree as a relation (`S/n^h`).
    max_power: Option<usize>,
    cap: usize,
    ci_codim: Option<usize>,
    length: usize,
    socle_length: usize,
}

const CATALOG: &[Entry] = &[
    Entry { name: "field", vars: &[], relations: &[], max_power: None, cap: 1, ci_codim: Some(0), length: 1, socle_length: 1 },
    Entry { name: "dual_numbers", vars: &["x"], relations: &["x^2"], max_power: None, cap: 3, ci_codim: Some(1), length: 2, socle_length: 1 },
    Entry { name: "x_pow2", vars: &["x"], relations: &["x^2"], max_power: None, cap: 3, ci_codim: Some(1), length: 2, socle_length: 1 },
    Entry { name: "x_cubed", vars: &["x"], relations: &["x^3"], max_power: None, cap: 4, ci_codim: Some(1), length: 3, socle_length: 1 },
    Entry { name: "x_pow3", vars: &["x"], relations: &["x^3"], max_power: None, cap: 4, ci_codim: Some(1), length: 3, socle_length: 1 },
    Entry { name: "x_pow4", vars: &["x"], relations: &["x^4"], max_power: None, cap: 5, ci_codim: Some(1), length: 4, socle_length: 1 },
    Entry { name: "x_pow5", vars: &["x"], relations: &["x^5"], max_power: None, cap: 6, ci_codim: Some(1), length: 5, socle_length: 1 },
    Entry { name: "m2_e1", vars: &["x"], relations: &[], max_power: Some(2), cap: 3, ci_codim: Some(1), length: 2, socle_length: 1 },
    Entry { name: "m2_e2", vars: &["x", "y"], relations: &[], max_power: Some(2), cap: 3, ci_codim: None, length: 3, socle_length: 2 },
    Entry { name: "m2_e3", vars: &["x", "y", "z"], relations: &[], max_power: Some(2), cap: 3, ci_codim: None, length: 4, socle_length: 3 },
    Entry { name: "m2_e4", vars: &["x", "y", "z", "w"], relations: &[], max_power: Some(2), cap: 3, ci_codim: None, length: 5, socle_length: 4 },
    Entry { name: "s_n2_e3", vars: &["x", "y", "z"], relations: &[], max_power: Some(2), cap: 3, ci_codim: None, length: 4, socle_length: 3 },
    Entry { name: "s_n3_e5", vars: &["a", "b", "c", "d", "e"], relations: &[], max_power: Some(3), cap: 4, ci_codim: None, length: 21, socle_length: 15 },
    Entry { name: "ci_x2_y2", vars: &["x", "y"], relations: &["x^2", "y^2"], max_power: None, cap: 3, ci_codim: Some(2), length: 4, socle_length: 1 },
    Entry {
        name: "gor_m3",
        vars: &["x", "y", "z"],
        relations: &["x*y", "x*z", "y*z", "x^2-y^2", "y^2-z^2"],
        max_power: None,
        cap: 4,
        ci_codim: None,
        length: 5,
        socle_length: 1,
    },
    Entry { name: "nongor_m3", vars: &["x", "y"], relations: &["x^2", "x*y", "y^3"], max_power: None, cap: 4, ci_codim: None, length: 4, socle_length: 2 },
];

/// Rings referenced in the literature whose presentations must come from a user file.
const RESERVED: &[&str] = &["js_gorenstein_m4", "js_sharp_m3"];

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}

pub fn reserved_names() -> &'static [&'static str] {
    RESERVED
}

pub fn builtin_spec(name: &str) -> Result<AlgebraSpec> {
    builtin_spec_with_prime(name, DEFAULT_PRIME)
}

pub fn builtin_spec_with_prime(name: &str, prime: u32) -> Result<AlgebraSpec> {
    if RESERVED.contains(&name) {
        return Err(Error::Input(format!(
            "ring '{name}' is a reserved slot; load its presentation from a user file"
        )));
    }
    let e = CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Input(format!("unknown catalog ring '{name}'")))?;
    let mut spec = AlgebraSpec::new(prime, e.vars, e.relations, e.cap);
    if let Some(h) = e.max_power {
        spec.relations.extend(monomials(e.vars, h));
    }
    spec.ci_codim = e.ci_codim;
    Ok(spec)
}

/// All monomials of degree `h` in `vars`, as relation strings.
fn monomials(vars: &[&str], h: usize) -> Vec<String> {
    fn go(vars: &[&str], h: usize, from: usize, acc: &mut Vec<String>, out: &mut Vec<String>) {
        if h == 0 {
            out.push(acc.join("*"));
            return;
        }
        for i in from..vars.len() {
            acc.push(vars[i].to_string());
            go(vars, h - 1, i, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(vars, h, 0, &mut Vec::new(), &mut out);
    out
}

/// Builds a catalog ring and checks its declared invariants against the computed ones.
pub fn builtin_ring(name: &str) -> Result<(Arc<ArtinAlgebra>, FixtureMeta)> {
    builtin_ring_with_prime(name, DEFAULT_PRIME)
}

pub fn builtin_ring_with_prime(name: &str, prime: u32) -> Result<(Arc<ArtinAlgebra>, FixtureMeta)> {
    let spec = builtin_spec_with_prime(name, prime)?;
    let e = CATALOG.iter().find(|e| e.name == name).expect("checked above");
    let algebra = ArtinAlgebra::build(&spec)?;
    if algebra.length() != e.length || algebra.socle_length() != e.socle_length {
        return Err(Error::Internal(format!(
            "catalog ring {name}: declared (ℓ, r) = ({}, {}), computed ({}, {})",
            e.length,
            e.socle_length,
            algebra.length(),
            algebra.socle_length()
        )));
    }
    let meta = FixtureMeta {
        name: name.to_string(),
        length: algebra.length(),
        socle_length: algebra.socle_length(),
        gorenstein: algebra.is_gorenstein(),
        ci_codim: algebra.ci_codim(),
        tags: algebra.class_tags().into_iter().map(String::from).collect(),
    };
    Ok((Arc::new(algebra), meta))
}

/// A random element of `m`: each basis monomial of positive degree gets a
/// coefficient with probability one half.
fn random_radical_element(algebra: &ArtinAlgebra, rng: &mut ChaCha8Rng) -> RingElement {
    let p = algebra.field().modulus();
    let unit = algebra.unit_index();
    let coords = (0..algebra.length())
        .map(|i| {
            if i == unit || rng.gen_bool(0.5) {
                0
            } else {
                rng.gen_range(1..p)
            }
        })
        .collect();
    RingElement(coords)
}

/// Presentation with `gens` generators and `rels` relations whose entries lie in `m`,
/// so the presentation is minimal and `ν = gens`.
pub fn random_module(algebra: &ArtinAlgebra, seed: u64, gens: usize, rels: usize) -> Result<ModulePresentation> {
    if gens == 0 || gens > 4 || rels > 6 {
        return Err(Error::Input(format!(
            "random modules need 1 ≤ gens ≤ 4 and rels ≤ 6, got {gens} and {rels}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let relations = (0..rels)
        .map(|_| {
            (0..gens)
                .map(|_| {
                    if rng.gen_bool(1.0 / 3.0) {
                        algebra.zero()
                    } else {
                        random_radical_element(algebra, &mut rng)
                    }
                })
                .collect()
        })
        .collect();
    Ok(ModulePresentation {
        name: format!("rand_{seed}_{gens}x{rels}"),
        gens,
        relations,
    })
}

/// `count` random modules with shapes drawn from the seed.
pub fn random_corpus(algebra: &Arc<ArtinAlgebra>, seed: u64, count: usize) -> Result<Vec<(String, ModuleRep)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let s: u64 = rng.gen();
            let gens = rng.gen_range(1..=3);
            let rels = rng.gen_range(0..=4);
            let p = random_module(algebra, s, gens, rels)?;
            let m = ModuleRep::realize(algebra, &p)?;
            Ok((p.name, m))
        })
        .collect()
}
