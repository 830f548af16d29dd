//! Executable checks over (ring, modules, steps) instances.
//!
//! Inequalities between lengths are exact per-degree facts and are always
//! asserted on every degree that was reached. Statements about growth
//! classes are asserted only when every class involved is conclusive;
//! otherwise the verdict is `Inconclusive`, which never counts as a pass.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{ArtinAlgebra, IdealSubspace};
use crate::error::{Error, Result};
use crate::fixtures::{builtin_ring_with_prime, random_corpus};
use crate::growth::{class_of_table, GrowthTag};
use crate::homology::{table_from_resolution, HomologyKind, HomologyTable};
use crate::linalg::DEFAULT_PRIME;
use crate::module::ModuleRep;
use crate::resolution::{syzygy, verify_resolution, FreeResolution, Resolver};

pub const SCHEMA: &str = "modcx/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Violated,
    Inconclusive,
    NotApplicable,
}

impl Verdict {
    /// Joins the verdicts of independent parts of one check.
    fn join(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Violated, _) | (_, Violated) => Violated,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (Holds, _) | (_, Holds) => Holds,
            _ => NotApplicable,
        }
    }
}

/// Identifies an instance well enough to regenerate it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub ring: String,
    pub m: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub check: String,
    pub verdict: Verdict,
    pub instance: Instance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub witness: String,
}

struct Subject {
    name: String,
    module: ModuleRep,
    dual: usize,
    res: OnceLock<std::result::Result<Arc<FreeResolution>, String>>,
}

/// Modules over one ring together with cached resolutions and homology tables.
pub struct Lab {
    ring: String,
    algebra: Arc<ArtinAlgebra>,
    resolver: Resolver,
    steps: usize,
    subjects: Vec<Subject>,
    tables: Mutex<HashMap<(usize, usize, HomologyKind), Arc<HomologyTable>>>,
    fault: Option<usize>,
}

/// Index of the residue field in every lab.
pub const K: usize = 0;
/// Index of the ring itself.
pub const FREE: usize = 2;
/// Index of the injective hull of the residue field.
pub const HULL: usize = 4;

type Outcome = (Verdict, Option<usize>, String);

fn holds(w: impl Into<String>) -> Outcome {
    (Verdict::Holds, None, w.into())
}

fn not_applicable(w: impl Into<String>) -> Outcome {
    (Verdict::NotApplicable, None, w.into())
}

fn inconclusive(w: impl Into<String>) -> Outcome {
    (Verdict::Inconclusive, None, w.into())
}

fn violated(degree: Option<usize>, w: impl Into<String>) -> Outcome {
    (Verdict::Violated, degree, w.into())
}

fn join(a: Outcome, b: Outcome) -> Outcome {
    let v = a.0.join(b.0);
    if v == a.0 && (v != b.0 || a.0 != Verdict::NotApplicable) {
        let w = if b.2.is_empty() { a.2 } else { format!("{}; {}", a.2, b.2) };
        (v, a.1, w)
    } else {
        let w = if a.2.is_empty() { b.2 } else { format!("{}; {}", a.2, b.2) };
        (v, b.1, w)
    }
}

/// `x ∈ {y - 1, y}` for complexities; undecidable slack in the infinite case.
fn within_one_below(x: GrowthTag, y: GrowthTag) -> Option<bool> {
    use GrowthTag::*;
    match (x, y) {
        (Inconclusive, _) | (_, Inconclusive) => None,
        (Infinite, Infinite) => Some(true),
        (_, Infinite) => None,
        (Infinite, _) => Some(false),
        _ => {
            let (a, b) = (rank(x), rank(y));
            Some(a == b || a + 1 == b)
        }
    }
}

fn rank(t: GrowthTag) -> u32 {
    match t {
        GrowthTag::Zero => 0,
        GrowthTag::Polynomial(d) => d,
        _ => u32::MAX,
    }
}

fn min_tag(a: GrowthTag, b: GrowthTag) -> GrowthTag {
    match a.compare(b) {
        Some(std::cmp::Ordering::Greater) => b,
        Some(_) => a,
        None => GrowthTag::Inconclusive,
    }
}

impl Lab {
    pub fn new(ring: &str, algebra: Arc<ArtinAlgebra>, steps: usize) -> Lab {
        let resolver = Resolver::new(algebra.clone());
        let mut lab = Lab {
            ring: ring.to_string(),
            algebra: algebra.clone(),
            resolver,
            steps,
            subjects: Vec::new(),
            tables: Mutex::new(HashMap::new()),
            fault: None,
        };
        lab.add_module("k", ModuleRep::residue_field(&algebra));
        lab.add_module("R", ModuleRep::free(&algebra, 1));
        lab.add_module("E", ModuleRep::injective_hull(&algebra));
        lab
    }

    /// Corrupts the Ext tables with source `i` (test hook).
    pub fn inject_fault(&mut self, i: usize) {
        self.fault = Some(i);
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.algebra
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn name(&self, i: usize) -> &str {
        &self.subjects[i].name
    }

    pub fn module(&self, i: usize) -> &ModuleRep {
        &self.subjects[i].module
    }

    pub fn dual_index(&self, i: usize) -> usize {
        self.subjects[i].dual
    }

    /// Adds a module and its Matlis dual; returns the module's index.
    pub fn add_module(&mut self, name: &str, module: ModuleRep) -> usize {
        let i = self.subjects.len();
        let dual = module.matlis_dual();
        self.subjects.push(Subject {
            name: name.to_string(),
            module,
            dual: i + 1,
            res: OnceLock::new(),
        });
        self.subjects.push(Subject {
            name: format!("{name}^v"),
            module: dual,
            dual: i,
            res: OnceLock::new(),
        });
        i
    }

    pub fn resolution(&self, i: usize) -> Result<Arc<FreeResolution>> {
        self.subjects[i]
            .res
            .get_or_init(|| {
                self.resolver
                    .resolve(&self.subjects[i].module, self.steps)
                    .map(Arc::new)
                    .map_err(|e| e.to_string())
            })
            .clone()
            .map_err(Error::Internal)
    }

    pub fn table(&self, src: usize, tgt: usize, kind: HomologyKind) -> Result<Arc<HomologyTable>> {
        let key = (src, tgt, kind);
        if let Some(t) = self.tables.lock().expect("table cache poisoned").get(&key) {
            return Ok(t.clone());
        }
        let res = self.resolution(src)?;
        let mut t = table_from_resolution(&res, &self.subjects[tgt].module, kind, self.steps)?
            .with_pair(self.name(src), self.name(tgt));
        if self.fault == Some(src) && kind == HomologyKind::Ext {
            let last = t.lengths.len() - 1;
            t.lengths[last] += 1_000_000;
            t.gens[last] += 1_000_000;
        }
        let t = Arc::new(t);
        self.tables.lock().expect("table cache poisoned").insert(key, t.clone());
        Ok(t)
    }

    fn ext(&self, src: usize, tgt: usize) -> Result<Arc<HomologyTable>> {
        self.table(src, tgt, HomologyKind::Ext)
    }

    /// `cxx(src, tgt)`.
    pub fn cxx(&self, src: usize, tgt: usize) -> Result<GrowthTag> {
        Ok(class_of_table(&*self.ext(src, tgt)?)?.tag)
    }

    pub fn cx(&self, m: usize) -> Result<GrowthTag> {
        self.cxx(m, K)
    }

    pub fn px(&self, m: usize) -> Result<GrowthTag> {
        self.cxx(K, m)
    }

    fn verdict(&self, check: &str, m: usize, n: Option<usize>, outcome: Result<Outcome>) -> CheckVerdict {
        let (verdict, degree, witness) = match outcome {
            Ok(o) => o,
            Err(Error::Internal(msg)) if msg.contains("budget") => inconclusive(msg),
            Err(e) => violated(None, format!("internal failure: {e}")),
        };
        CheckVerdict {
            check: check.to_string(),
            verdict,
            instance: Instance {
                ring: self.ring.clone(),
                m: self.name(m).to_string(),
                n: n.map(|n| self.name(n).to_string()),
                steps: self.steps,
            },
            degree,
            witness,
        }
    }

    fn ideal_colength_for(&self, n: usize) -> usize {
        let module = self.module(n);
        module.annihilator_ideal(&module.radical_submodule()).colength
    }

    /// `ℓ(Ext^i(M,N)) ≤ ℓ(N)·b_i(M)`, and `cxx(M,N) ≤ min(cx M, px N)` when conclusive.
    pub fn check_upper_bound(&self, m: usize, n: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let t = self.ext(m, n)?;
            let res = self.resolution(m)?;
            let b = res.betti();
            let ln = self.module(n).length() as u128;
            for i in 0..=t.steps.min(res.steps()) {
                if t.lengths[i] as u128 > ln * b[i] as u128 {
                    return Ok(violated(
                        Some(i),
                        format!("ℓ(Ext^{i}) = {} > ℓ(N)·b_{i} = {}", t.lengths[i], ln * b[i] as u128),
                    ));
                }
            }
            let (cxx, cxm, pxn) = (self.cxx(m, n)?, self.cx(m)?, self.px(n)?);
            let bound = min_tag(cxm, pxn);
            let per_degree = format!("per-degree bound holds through degree {}", t.steps.min(res.steps()));
            match cxx.compare(bound) {
                Some(std::cmp::Ordering::Greater) => Ok(violated(
                    None,
                    format!("cxx = {cxx} exceeds min(cx M, px N) = min({cxm}, {pxn})"),
                )),
                _ => Ok(holds(per_degree)),
            }
        };
        self.verdict("upper_bound", m, Some(n), run())
    }

    /// `ℓ(Ext^i(M,N)) ≥ ℓ(N)·b_i − ℓ(R/I)·ν(N)·(b_{i−1} + b_i)` with `I = ann(mN)`.
    pub fn check_lower_bound(&self, m: usize, n: usize) -> CheckVerdict {
        let module = self.module(n);
        let ideal = module.annihilator_ideal(&module.radical_submodule());
        self.check_lower_bound_with(m, n, &ideal)
    }

    /// The same bound for a supplied ideal `I`, which must satisfy `(Im)N = 0`.
    pub fn check_lower_bound_with(&self, m: usize, n: usize, ideal: &IdealSubspace) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let module = self.module(n);
            if !module.ideal_kills(ideal, &module.radical_submodule()) {
                return Ok(not_applicable("supplied ideal I does not satisfy (Im)N = 0"));
            }
            let t = self.ext(m, n)?;
            let res = self.resolution(m)?;
            let b = res.betti();
            let ln = module.length() as i128;
            let nu = module.min_gens() as i128;
            let c = ideal.colength as i128;
            for i in 0..=t.steps.min(res.steps()) {
                let prev = if i == 0 { 0 } else { b[i - 1] as i128 };
                let bound = ln * b[i] as i128 - c * nu * (prev + b[i] as i128);
                if (t.lengths[i] as i128) < bound {
                    return Ok(violated(
                        Some(i),
                        format!("ℓ(Ext^{i}) = {} < bound {bound} (ℓ(R/I) = {c})", t.lengths[i]),
                    ));
                }
            }
            Ok(holds(format!("ℓ(R/I) = {c}; holds through degree {}", t.steps.min(res.steps()))))
        };
        self.verdict("lower_bound", m, Some(n), run())
    }

    fn equal_classes(&self, label: &str, a: GrowthTag, b: GrowthTag) -> Outcome {
        if !a.is_conclusive() || !b.is_conclusive() {
            return inconclusive(format!("{label}: {a} vs {b}"));
        }
        if a == b {
            holds(format!("{label}: {a} = {b}"))
        } else {
            violated(None, format!("{label}: {a} ≠ {b}"))
        }
    }

    fn slack_classes(&self, label: &str, a: GrowthTag, b: GrowthTag) -> Outcome {
        match within_one_below(a, b) {
            Some(true) => holds(format!("{label}: {a} ∈ {{{b}-1, {b}}}")),
            Some(false) => violated(None, format!("{label}: {a} ∉ {{{b}-1, {b}}}")),
            None => inconclusive(format!("{label}: {a} vs {b} (slack undecidable)")),
        }
    }

    /// Branches on `ℓ(N)` against `2·ℓ(R/I)·ν(N)` and `2·ℓ(R/I)·ν(N^∨)`.
    pub fn check_case_3_4(&self, m: usize, n: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let ln = self.module(n).length();
            let c = self.ideal_colength_for(n);
            let nu = self.module(n).min_gens();
            let nu_dual = self.module(self.dual_index(n)).min_gens();
            let first = match ln.cmp(&(2 * c * nu)) {
                std::cmp::Ordering::Greater => self.equal_classes("cxx(M,N) vs cx M", self.cxx(m, n)?, self.cx(m)?),
                std::cmp::Ordering::Equal => self.slack_classes("cxx(M,N) vs cx M", self.cxx(m, n)?, self.cx(m)?),
                std::cmp::Ordering::Less => not_applicable(""),
            };
            let second = match ln.cmp(&(2 * c * nu_dual)) {
                std::cmp::Ordering::Greater => self.equal_classes("cxx(N,M) vs px M", self.cxx(n, m)?, self.px(m)?),
                std::cmp::Ordering::Equal => self.slack_classes("cxx(N,M) vs px M", self.cxx(n, m)?, self.px(m)?),
                std::cmp::Ordering::Less => not_applicable(""),
            };
            let mut out = join(first, second);
            if out.0 == Verdict::NotApplicable {
                out.2 = format!("ℓ(N) = {ln} ≤ 2·{c}·min(ν(N), ν(N^∨)) = 2·{c}·min({nu}, {nu_dual})");
            }
            Ok(out)
        };
        self.verdict("case_3_4", m, Some(n), run())
    }

    /// Modules with `m²N = 0`, branching on `ℓ(mN)` against `ν(N)`.
    pub fn check_case_3_5(&self, m: usize, n: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let filt = self.module(n).radical_filtration();
            if filt.get(2).copied().unwrap_or(0) != 0 {
                return Ok(not_applicable("m²N ≠ 0"));
            }
            let a = filt.get(1).copied().unwrap_or(0);
            let nu = self.module(n).min_gens();
            Ok(match a.cmp(&nu) {
                std::cmp::Ordering::Greater => self.equal_classes("cxx(M,N) vs cx M", self.cxx(m, n)?, self.cx(m)?),
                std::cmp::Ordering::Less => self.equal_classes("cxx(N,M) vs px M", self.cxx(n, m)?, self.px(m)?),
                std::cmp::Ordering::Equal => join(
                    self.slack_classes("cxx(M,N) vs cx M", self.cxx(m, n)?, self.cx(m)?),
                    self.slack_classes("cxx(N,M) vs px M", self.cxx(n, m)?, self.px(m)?),
                ),
            })
        };
        self.verdict("case_3_5", m, Some(n), run())
    }

    /// `Ext^i(X, Y) = 0` for every reached `1 ≤ i`, with at least one such degree.
    fn ext_vanishes(&self, src: usize, tgt: usize) -> Result<bool> {
        let t = self.ext(src, tgt)?;
        Ok(t.steps >= 1 && t.lengths[1..].iter().all(|&l| l == 0))
    }

    /// `m²N = 0`: over a complete intersection `cx N = px N = cxx(N,N) < ∞`;
    /// otherwise `px N = ∞ ∧ cx N = cxx(N,N)` or `cx N = ∞ ∧ px N = cxx(N,N)`.
    /// When `cxx(N,N) = 0`, `N` is free or injective. Complete-intersection status
    /// is the declared metadata.
    pub fn check_cor_3_6(&self, n: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            if self.module(n).radical_filtration().get(2).copied().unwrap_or(0) != 0 {
                return Ok(not_applicable("m²N ≠ 0"));
            }
            let (cx, px, cxx) = (self.cx(n)?, self.px(n)?, self.cxx(n, n)?);
            let self_orthogonal = cxx == GrowthTag::Zero || self.ext_vanishes(n, n)?;
            let free_or_injective = match self_orthogonal {
                true if self.module(n).is_free() || self.module(n).is_injective() => {
                    holds("Ext(N,N) eventually zero and N is free or injective")
                }
                true => return Ok(violated(None, "Ext(N,N) eventually zero but N is neither free nor injective")),
                false => not_applicable(""),
            };
            let classes = format!("cx N = {cx}, px N = {px}, cxx(N,N) = {cxx}");
            if !(cx.is_conclusive() && px.is_conclusive() && cxx.is_conclusive()) {
                return Ok(join(inconclusive(classes), free_or_injective));
            }
            let inf = GrowthTag::Infinite;
            let ok = if self.algebra.ci_codim().is_some() {
                cx == px && px == cxx && cxx != inf
            } else {
                (px == inf && cx == cxx) || (cx == inf && px == cxx)
            };
            let relation = if ok { holds(classes) } else { violated(None, classes) };
            Ok(join(relation, free_or_injective))
        };
        self.verdict("cor_3_6", n, None, run())
    }

    fn classes_in(&self, label: &str, a: GrowthTag, b: GrowthTag, allowed: &[GrowthTag]) -> Outcome {
        let eq = self.equal_classes(label, a, b);
        if eq.0 == Verdict::Holds && !allowed.contains(&a) {
            return violated(None, format!("{label}: class {a} outside the allowed set"));
        }
        eq
    }

    /// `2r > l`: Betti ratio bound and `cxx(M,R) = cx M ∈ {0, ∞}`.
    pub fn check_p1_5_6(&self, m: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let (l, r) = (self.algebra.length() as u128, self.algebra.socle_length() as u128);
            if 2 * r <= l {
                return Ok(not_applicable(format!("2r = {} ≤ l = {l}", 2 * r)));
            }
            let res = self.resolution(m)?;
            let b = res.betti();
            for i in 1..b.len().saturating_sub(1) {
                if (b[i + 1] as u128) * (l - r) < r * b[i] as u128 {
                    return Ok(violated(
                        Some(i),
                        format!("b_{} = {} < (r/(l-r))·b_{i} = {r}/{}·{}", i + 1, b[i + 1], l - r, b[i]),
                    ));
                }
            }
            Ok(self.classes_in(
                "cxx(M,R) vs cx M",
                self.cxx(m, FREE)?,
                self.cx(m)?,
                &[GrowthTag::Zero, GrowthTag::Infinite],
            ))
        };
        self.verdict("P1_5_6", m, None, run())
    }

    /// Non-Gorenstein, `m² = 0` or (`m³ = 0 ≠ m²` and `2r > l − 2`).
    pub fn check_p1_5_8(&self, m: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let alg = &self.algebra;
            let (l, r) = (alg.length(), alg.socle_length());
            if alg.is_gorenstein() {
                return Ok(not_applicable("ring is Gorenstein"));
            }
            let allowed: &[GrowthTag] = if alg.m_power_vanishes(2) {
                &[GrowthTag::Zero, GrowthTag::Infinite]
            } else if alg.m_power_vanishes(3) && 2 * r + 2 > l {
                &[GrowthTag::Zero, GrowthTag::Polynomial(1), GrowthTag::Infinite]
            } else {
                return Ok(not_applicable("needs m² = 0, or m³ = 0 with 2r > l - 2"));
            };
            Ok(self.classes_in("cxx(M,R) vs cx M", self.cxx(m, FREE)?, self.cx(m)?, allowed))
        };
        self.verdict("P1_5_8", m, None, run())
    }

    /// Gorenstein with `m³ = 0`: `cxx(M,M) = cx M`.
    pub fn check_p2_5_10(&self, m: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            if !(self.algebra.is_gorenstein() && self.algebra.m_power_vanishes(3)) {
                return Ok(not_applicable("needs a Gorenstein ring with m³ = 0"));
            }
            Ok(self.equal_classes("cxx(M,M) vs cx M", self.cxx(m, m)?, self.cx(m)?))
        };
        self.verdict("P2_5_10", m, None, run())
    }

    /// `m³ = 0 ≠ m²` and `cxx(M,M) = 0` (or `Ext(M,M)` zero on every reached degree ≥ 1):
    /// `cxx(M,R) = cx M ∈ {0, 1, ∞}`.
    pub fn check_5_11(&self, m: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let alg = &self.algebra;
            if !(alg.m_power_vanishes(3) && !alg.m_power_vanishes(2)) {
                return Ok(not_applicable("needs m³ = 0 ≠ m²"));
            }
            let cxx_mm = self.cxx(m, m)?;
            if cxx_mm != GrowthTag::Zero && !self.ext_vanishes(m, m)? {
                return Ok(match cxx_mm {
                    GrowthTag::Inconclusive => inconclusive("cxx(M,M) inconclusive"),
                    t => not_applicable(format!("cxx(M,M) = {t}")),
                });
            }
            Ok(self.classes_in(
                "cxx(M,R) vs cx M",
                self.cxx(m, FREE)?,
                self.cx(m)?,
                &[GrowthTag::Zero, GrowthTag::Polynomial(1), GrowthTag::Infinite],
            ))
        };
        self.verdict("5_11", m, None, run())
    }

    /// `ℓ(Ext^i(M,N)) = ℓ(Tor_i(M,N^∨))`, and `cx M = px M^∨` when conclusive.
    pub fn check_duality(&self, m: usize, n: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let ext = self.ext(m, n)?;
            let tor = self.table(m, self.dual_index(n), HomologyKind::Tor)?;
            for i in 0..=ext.steps.min(tor.steps) {
                if ext.lengths[i] != tor.lengths[i] {
                    return Ok(violated(
                        Some(i),
                        format!("ℓ(Ext^{i}(M,N)) = {} ≠ ℓ(Tor_{i}(M,N^v)) = {}", ext.lengths[i], tor.lengths[i]),
                    ));
                }
            }
            let (cx, px_dual) = (self.cx(m)?, self.px(self.dual_index(m))?);
            let per_degree = holds(format!("lengths agree through degree {}", ext.steps.min(tor.steps)));
            if cx.is_conclusive() && px_dual.is_conclusive() && cx != px_dual {
                return Ok(violated(None, format!("cx M = {cx} ≠ px M^v = {px_dual}")));
            }
            Ok(per_degree)
        };
        self.verdict("duality", m, Some(n), run())
    }

    /// (AAR): `cxx(M,R) = 0 = cxx(M,M)` ⇒ `cx M = 0`, and its finite form (AR):
    /// `Ext^{≥1}(M, R ⊕ M)` vanishing on every reached degree forces `M` free.
    /// Asserted over rings with `m³ = 0` or a declared complete intersection.
    pub fn check_aar_witness(&self, m: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            if !(self.algebra.m_power_vanishes(3) || self.algebra.ci_codim().is_some()) {
                return Ok(not_applicable("ring outside m³ = 0 and complete intersections"));
            }
            let (to_r, to_m) = (self.cxx(m, FREE)?, self.cxx(m, m)?);
            let asymptotic = match (to_r, to_m) {
                (GrowthTag::Zero, GrowthTag::Zero) => match self.cx(m)? {
                    GrowthTag::Zero => holds("cxx(M,R) = cxx(M,M) = 0 and cx M = 0"),
                    GrowthTag::Inconclusive => inconclusive("cxx(M,R) = cxx(M,M) = 0, cx M inconclusive"),
                    t => violated(None, format!("cxx(M,R) = cxx(M,M) = 0 but cx M = {t}")),
                },
                (a, b) if a.is_conclusive() && b.is_conclusive() => not_applicable(""),
                _ => inconclusive(format!("cxx(M,R) = {to_r}, cxx(M,M) = {to_m}")),
            };
            let finite = if !(self.ext_vanishes(m, FREE)? && self.ext_vanishes(m, m)?) {
                not_applicable("")
            } else if self.module(m).is_free() {
                holds("Ext vanishes on reached degrees and M is free")
            } else {
                violated(None, "violated at truncation: Ext(M,R) and Ext(M,M) vanish on every reached degree but M is not free")
            };
            let mut out = join(asymptotic, finite);
            if out.0 == Verdict::NotApplicable {
                out.2 = format!("cxx(M,R) = {to_r}, cxx(M,M) = {to_m}");
            }
            Ok(out)
        };
        self.verdict("AAR_witness", m, None, run())
    }

    /// Complete intersection facts, asserted against the declared codimension.
    pub fn check_ci_2_8(&self, m: usize, n: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let Some(c) = self.algebra.ci_codim() else {
                return Ok(not_applicable("no declared complete-intersection codimension"));
            };
            let (cxx_mm, cx_m, px_m) = (self.cxx(m, m)?, self.cx(m)?, self.px(m)?);
            let (cxx_mn, cxx_nm, cx_n) = (self.cxx(m, n)?, self.cxx(n, m)?, self.cx(n)?);
            let all = [cxx_mm, cx_m, px_m, cxx_mn, cxx_nm, cx_n];
            if !all.iter().all(|t| t.is_conclusive()) {
                return Ok(inconclusive(format!("classes {all:?}")));
            }
            let codim = if c == 0 { GrowthTag::Zero } else { GrowthTag::Polynomial(c as u32) };
            if !(cxx_mm == cx_m && cx_m == px_m) {
                return Ok(violated(None, format!("cxx(M,M) = {cxx_mm}, cx M = {cx_m}, px M = {px_m}")));
            }
            if cx_m.compare(codim) == Some(std::cmp::Ordering::Greater) {
                return Ok(violated(None, format!("cx M = {cx_m} exceeds codim {c}")));
            }
            if cxx_mn != cxx_nm {
                return Ok(violated(None, format!("cxx(M,N) = {cxx_mn} ≠ cxx(N,M) = {cxx_nm}")));
            }
            if cxx_mn.compare(min_tag(cx_m, cx_n)) == Some(std::cmp::Ordering::Greater) {
                return Ok(violated(None, format!("cxx(M,N) = {cxx_mn} > min({cx_m}, {cx_n})")));
            }
            if rank(cx_m) as i64 + rank(cx_n) as i64 - c as i64 > rank(cxx_mn) as i64 {
                return Ok(violated(None, format!("cx M + cx N - codim = {cx_m} + {cx_n} - {c} > cxx(M,N) = {cxx_mn}")));
            }
            Ok(holds(format!("classes cx M = {cx_m}, cxx(M,N) = {cxx_mn}, codim {c}")))
        };
        self.verdict("CI_2_8", m, Some(n), run())
    }

    /// ν- and ℓ-sequences of `Ext(M,N)` have the same class when both are conclusive.
    pub fn check_nu_ell(&self, m: usize, n: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let t = self.ext(m, n)?;
            for i in 0..=t.steps {
                if t.gens[i] > t.lengths[i] {
                    return Ok(violated(Some(i), format!("ν = {} > ℓ = {}", t.gens[i], t.lengths[i])));
                }
            }
            match class_of_table(&t) {
                Ok(c) if c.tag.is_conclusive() => Ok(holds(format!("class {}", c.tag))),
                Ok(_) => Ok(inconclusive("ν-class inconclusive")),
                Err(Error::Internal(msg)) => Ok(violated(None, msg)),
                Err(e) => Err(e),
            }
        };
        self.verdict("nu_ell", m, Some(n), run())
    }

    /// `ℓ(Ext^i(M,k)) = ℓ(Tor_i(M,k)) = b_i(M)`.
    pub fn check_betti_cross(&self, m: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let res = self.resolution(m)?;
            let ext = self.ext(m, K)?;
            let tor = self.table(m, K, HomologyKind::Tor)?;
            for i in 0..=res.steps().min(ext.steps).min(tor.steps) {
                let b = res.betti()[i];
                if ext.lengths[i] != b || tor.lengths[i] != b {
                    return Ok(violated(
                        Some(i),
                        format!("b_{i} = {b}, ℓ(Ext) = {}, ℓ(Tor) = {}", ext.lengths[i], tor.lengths[i]),
                    ));
                }
            }
            Ok(holds(format!("agree through degree {}", res.steps())))
        };
        self.verdict("betti_cross", m, None, run())
    }

    /// Minimality, complex property and exactness of the computed resolution.
    pub fn check_resolution(&self, m: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let res = self.resolution(m)?;
            let v = verify_resolution(&res);
            if v.passed() {
                Ok(holds(format!("verified through step {} of {}", res.steps(), res.requested_steps())))
            } else {
                Ok(violated(None, format!("{v:?}")))
            }
        };
        self.verdict("resolution", m, None, run())
    }

    /// Matlis numerics: lengths, generators versus socles, and filtrations.
    pub fn check_matlis(&self, m: usize) -> CheckVerdict {
        let run = || -> Result<Outcome> {
            let module = self.module(m);
            let dual = self.module(self.dual_index(m));
            let soc = module.socle_submodule().length();
            let soc_dual = dual.socle_submodule().length();
            if dual.length() != module.length() {
                return Ok(violated(None, format!("ℓ(M^v) = {} ≠ ℓ(M) = {}", dual.length(), module.length())));
            }
            if dual.min_gens() != soc || soc_dual != module.min_gens() {
                return Ok(violated(
                    None,
                    format!("ν(M^v) = {}, ℓ(Soc M) = {soc}, ℓ(Soc M^v) = {soc_dual}, ν(M) = {}", dual.min_gens(), module.min_gens()),
                ));
            }
            let bidual = dual.matlis_dual();
            if bidual.radical_filtration() != module.radical_filtration()
                || bidual.socle_filtration() != module.socle_filtration()
            {
                return Ok(violated(None, "bidual filtrations differ"));
            }
            let rad = module.radical_filtration();
            let soc_filt = dual.socle_filtration();
            for (j, &s) in soc_filt.iter().enumerate() {
                let r = rad.get(j).copied().unwrap_or(0);
                if s != module.length() - r {
                    return Ok(violated(Some(j), format!("ℓ(Soc^{j} M^v) = {s} ≠ ℓ(M) - ℓ(m^{j} M) = {}", module.length() - r)));
                }
            }
            Ok(holds(format!("ℓ = {}, ν = {}, ℓ(Soc) = {soc}", module.length(), module.min_gens())))
        };
        self.verdict("matlis", m, None, run())
    }

    /// Every module-level check on `m`.
    pub fn module_checks(&self, m: usize) -> Vec<CheckVerdict> {
        vec![
            self.check_resolution(m),
            self.check_betti_cross(m),
            self.check_matlis(m),
            self.check_cor_3_6(m),
            self.check_p1_5_6(m),
            self.check_p1_5_8(m),
            self.check_p2_5_10(m),
            self.check_5_11(m),
            self.check_aar_witness(m),
        ]
    }

    /// Every pair-level check on `(m, n)`.
    pub fn pair_checks(&self, m: usize, n: usize) -> Vec<CheckVerdict> {
        vec![
            self.check_upper_bound(m, n),
            self.check_lower_bound(m, n),
            self.check_duality(m, n),
            self.check_nu_ell(m, n),
            self.check_case_3_4(m, n),
            self.check_case_3_5(m, n),
            self.check_ci_2_8(m, n),
        ]
    }
}

/// What a suite runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: String,
    pub seed: u64,
    pub steps: usize,
    pub prime: u32,
    pub modules_per_ring: usize,
    pub rings: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inject_fault: bool,
}

impl SuiteConfig {
    /// Built-in suites: "paper" covers the ring classes of the theorems, "corpus" a broader mix.
    pub fn named(suite: &str, seed: u64, steps: usize) -> Result<SuiteConfig> {
        let (rings, count): (&[&str], usize) = match suite {
            "paper" => (
                &["m2_e2", "m2_e3", "m2_e4", "nongor_m3", "gor_m3", "x_cubed", "ci_x2_y2", "dual_numbers"],
                20,
            ),
            "corpus" => (
                &["dual_numbers", "x_cubed", "x_pow4", "m2_e2", "m2_e3", "ci_x2_y2", "nongor_m3"],
                10,
            ),
            other => return Err(Error::Input(format!("unknown suite '{other}' (expected paper or corpus)"))),
        };
        Ok(SuiteConfig {
            suite: suite.to_string(),
            seed,
            steps,
            prime: DEFAULT_PRIME,
            modules_per_ring: count,
            rings: rings.iter().map(|s| s.to_string()).collect(),
            inject_fault: false,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub holds: usize,
    pub violated: usize,
    pub inconclusive: usize,
    pub not_applicable: usize,
}

impl Counts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Holds => self.holds += 1,
            Verdict::Violated => self.violated += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
            Verdict::NotApplicable => self.not_applicable += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSummary {
    pub name: String,
    pub length: usize,
    pub socle_length: usize,
    pub tags: Vec<String>,
    pub modules: usize,
    pub pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: String,
    pub suite: String,
    pub seed: u64,
    pub config: SuiteConfig,
    pub rings: Vec<RingSummary>,
    pub totals: Counts,
    pub per_check: BTreeMap<String, Counts>,
    pub verdicts: Vec<CheckVerdict>,
}

impl CheckReport {
    pub fn violations(&self) -> impl Iterator<Item = &CheckVerdict> {
        self.verdicts.iter().filter(|v| v.verdict == Verdict::Violated)
    }

    pub fn assemble(config: SuiteConfig, rings: Vec<RingSummary>, verdicts: Vec<CheckVerdict>) -> CheckReport {
        let mut totals = Counts::default();
        let mut per_check: BTreeMap<String, Counts> = BTreeMap::new();
        for v in &verdicts {
            totals.add(v.verdict);
            per_check.entry(v.check.clone()).or_default().add(v.verdict);
        }
        CheckReport {
            schema: SCHEMA.to_string(),
            suite: config.suite.clone(),
            seed: config.seed,
            config,
            rings,
            totals,
            per_check,
            verdicts,
        }
    }
}

/// Builds the lab for one catalog ring of a suite.
pub fn suite_lab(config: &SuiteConfig, ring: &str, ring_index: usize) -> Result<(Lab, Vec<usize>)> {
    let (algebra, _) = builtin_ring_with_prime(ring, config.prime)?;
    lab_for(config, ring, algebra, Vec::new(), ring_index)
}

/// The distinguished modules k, R, E, k⊕R, Ω¹k, then `extra`, then a corpus seeded
/// from the suite seed and the ring's position.
pub fn lab_for(
    config: &SuiteConfig,
    ring: &str,
    algebra: Arc<ArtinAlgebra>,
    extra: Vec<(String, ModuleRep)>,
    ring_index: usize,
) -> Result<(Lab, Vec<usize>)> {
    let mut lab = Lab::new(ring, algebra.clone(), config.steps);
    let mut tested = vec![K, FREE, HULL];
    if !algebra.is_field() {
        let k = ModuleRep::residue_field(&algebra);
        tested.push(lab.add_module("k+R", k.direct_sum(&ModuleRep::free(&algebra, 1))?));
        tested.push(lab.add_module("syz1(k)", syzygy(&k, 1)));
    }
    for (name, m) in extra {
        if !m.same_algebra(&ModuleRep::residue_field(&algebra)) {
            return Err(Error::AlgebraMismatch(format!("module {name} is not over ring {ring}")));
        }
        tested.push(lab.add_module(&name, m));
    }
    let ring_seed = config.seed.wrapping_add((ring_index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for (name, m) in random_corpus(&algebra, ring_seed, config.modules_per_ring)? {
        tested.push(lab.add_module(&name, m));
    }
    if config.inject_fault {
        lab.inject_fault(*tested.last().expect("k is always tested"));
    }
    Ok((lab, tested))
}

/// Runs every applicable check of a lab over its tested modules; pairs each
/// module with k, R, E and the next tested module.
pub fn run_lab(lab: &Lab, tested: &[usize]) -> Vec<CheckVerdict> {
    let jobs: Vec<(usize, Option<usize>)> = tested
        .iter()
        .enumerate()
        .flat_map(|(j, &m)| {
            let next = tested[(j + 1) % tested.len()];
            let mut partners = vec![K, FREE, HULL];
            if !partners.contains(&next) {
                partners.push(next);
            }
            std::iter::once((m, None)).chain(partners.into_iter().map(move |n| (m, Some(n))))
        })
        .collect();
    jobs.par_iter()
        .map(|&(m, n)| match n {
            None => lab.module_checks(m),
            Some(n) => lab.pair_checks(m, n),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn run_suite(config: &SuiteConfig) -> Result<CheckReport> {
    let labs = config
        .rings
        .iter()
        .enumerate()
        .map(|(i, r)| suite_lab(config, r, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(run_labs(config, &labs))
}

/// Runs prepared labs in parallel and assembles the report in lab order.
pub fn run_labs(config: &SuiteConfig, labs: &[(Lab, Vec<usize>)]) -> CheckReport {
    let results: Vec<(RingSummary, Vec<CheckVerdict>)> = labs
        .par_iter()
        .map(|(lab, tested)| {
            let verdicts = run_lab(lab, tested);
            let summary = RingSummary {
                name: lab.ring.clone(),
                length: lab.algebra.length(),
                socle_length: lab.algebra.socle_length(),
                tags: lab.algebra.class_tags().into_iter().map(String::from).collect(),
                modules: tested.len(),
                pairs: verdicts.iter().filter(|v| v.check == "upper_bound").count(),
            };
            (summary, verdicts)
        })
        .collect();
    let (rings, verdicts): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    CheckReport::assemble(config.clone(), rings, verdicts.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::builtin_ring;

    fn lab(ring: &str, steps: usize) -> Lab {
        let (alg, _) = builtin_ring(ring).unwrap();
        Lab::new(ring, alg, steps)
    }

    #[test]
    fn upper_bound_is_tight_for_the_residue_field() {
        let l = lab("m2_e2", 12);
        let v = l.check_upper_bound(K, K);
        assert_eq!(v.verdict, Verdict::Holds, "{v:?}");
        let t = l.table(K, K, HomologyKind::Ext).unwrap();
        assert_eq!(t.lengths, l.resolution(K).unwrap().betti()[..=12].to_vec());
    }

    #[test]
    fn lower_bound_over_square_zero_ring() {
        let l = lab("m2_e2", 12);
        let v = l.check_lower_bound(K, FREE);
        assert_eq!(v.verdict, Verdict::Holds, "{v:?}");
        let t = l.table(K, FREE, HomologyKind::Ext).unwrap();
        for i in 1..=12 {
            assert_eq!(t.lengths[i], 3 << (i - 1));
        }
    }

    #[test]
    fn square_zero_modules_relate_their_classes() {
        let l = lab("m2_e3", 8);
        for i in [FREE, HULL, K] {
            let v = l.check_cor_3_6(i);
            assert_eq!(v.verdict, Verdict::Holds, "{v:?}");
        }
        assert!(l.check_cor_3_6(HULL).witness.contains("free or injective"));
        let l = lab("ci_x2_y2", 10);
        let v = l.check_cor_3_6(K);
        assert_eq!(v.verdict, Verdict::Holds, "{v:?}");
        assert_eq!(l.check_cor_3_6(FREE).verdict, Verdict::NotApplicable);
    }

    #[test]
    fn aar_over_radical_cube_zero() {
        let l = lab("nongor_m3", 12);
        let v = l.check_aar_witness(FREE);
        assert_eq!(v.verdict, Verdict::Holds, "{v:?}");
        assert_eq!(l.check_aar_witness(K).verdict, Verdict::NotApplicable);
        assert_eq!(lab("x_pow5", 6).check_aar_witness(FREE).verdict, Verdict::Holds);
        assert_eq!(lab("x_pow5", 6).check_aar_witness(K).verdict, Verdict::NotApplicable);
    }

    #[test]
    fn class_level_examples() {
        let l = lab("m2_e2", 20);
        let v = l.check_p1_5_6(K);
        assert_eq!(v.verdict, Verdict::Holds, "{v:?}");
        assert_eq!(l.cx(K).unwrap(), GrowthTag::Infinite);

        let l = lab("x_cubed", 20);
        assert_eq!(l.check_p2_5_10(K).verdict, Verdict::Holds);
        assert_eq!(l.cx(K).unwrap(), GrowthTag::Polynomial(1));

        let l = lab("ci_x2_y2", 20);
        let v = l.check_ci_2_8(K, HULL);
        assert_eq!(v.verdict, Verdict::Holds, "{v:?}");
        assert_eq!(l.cx(K).unwrap(), GrowthTag::Polynomial(2));
    }

    #[test]
    fn duality_and_crosschecks_hold_on_a_random_module() {
        let (alg, _) = builtin_ring("nongor_m3").unwrap();
        let mut l = Lab::new("nongor_m3", alg.clone(), 10);
        let (name, m) = random_corpus(&alg, 3, 1).unwrap().pop().unwrap();
        let i = l.add_module(&name, m);
        for n in [K, FREE, HULL, i] {
            for v in l.pair_checks(i, n) {
                assert_ne!(v.verdict, Verdict::Violated, "{v:?}");
            }
        }
        for v in l.module_checks(i).into_iter().chain(l.module_checks(i + 1)) {
            assert_ne!(v.verdict, Verdict::Violated, "{v:?}");
        }
    }

    #[test]
    fn fault_injection_is_caught() {
        let mut cfg = SuiteConfig::named("corpus", 1, 6).unwrap();
        cfg.rings = vec!["m2_e2".into()];
        cfg.modules_per_ring = 1;
        assert_eq!(run_suite(&cfg).unwrap().totals.violated, 0);
        cfg.inject_fault = true;
        let report = run_suite(&cfg).unwrap();
        assert!(report.violations().any(|v| v.check == "upper_bound"));
    }

    #[test]
    fn suites_are_deterministic() {
        let mut cfg = SuiteConfig::named("corpus", 42, 8).unwrap();
        cfg.rings.truncate(3);
        cfg.modules_per_ring = 3;
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.totals.violated, 0, "{:?}", a.violations().collect::<Vec<_>>());
        assert!(SuiteConfig::named("nope", 0, 1).is_err());
    }

    #[test]
    fn supplied_ideals_are_validated() {
        let l = lab("m2_e2", 10);
        let alg = l.algebra().clone();
        let m = alg.ideal_closure(&alg.maximal_ideal_generators());
        let v = l.check_lower_bound_with(K, FREE, &m);
        assert_eq!(v.verdict, Verdict::Holds, "{v:?}");
        let whole = alg.ideal_closure(&[alg.one()]);
        assert_eq!(l.check_lower_bound_with(K, FREE, &whole).verdict, Verdict::NotApplicable);
        assert_eq!(l.check_lower_bound_with(K, K, &whole).verdict, Verdict::Holds);
    }

    #[test]
    fn empty_suites_give_empty_reports() {
        let mut cfg = SuiteConfig::named("corpus", 0, 4).unwrap();
        cfg.rings.clear();
        let r = run_suite(&cfg).unwrap();
        assert!(r.verdicts.is_empty() && r.rings.is_empty());
        assert_eq!(r.schema, SCHEMA);
    }

    #[test]
    fn verdicts_join() {
        use Verdict::*;
        assert_eq!(Holds.join(Violated), Violated);
        assert_eq!(Inconclusive.join(Holds), Inconclusive);
        assert_eq!(NotApplicable.join(Holds), Holds);
        assert_eq!(NotApplicable.join(NotApplicable), NotApplicable);
    }
}
