//! Polynomial growth classes of integer sequences.
//!
//! A class is asserted only with evidence. The primary route is an exact
//! integer linear recurrence fitted to the tail of the sequence; the
//! recurrence is extended with big integers and tested by finite
//! differences and ratios. When those numeric tests are not decisive the
//! class is read off the characteristic polynomial: a minimal integer
//! recurrence whose roots are all roots of unity grows like `i^(m-1)` for
//! `m` the largest root multiplicity, and otherwise (Kronecker) it has a
//! root of modulus > 1 and grows exponentially.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{ext_table, HomologyTable};
use crate::module::ModuleRep;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthConfig {
    pub max_order: usize,
    pub guard: usize,
    pub horizon: usize,
    pub window: usize,
    /// Ratio threshold `1 + num/den` for geometric growth.
    pub epsilon: (u32, u32),
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig {
            max_order: 6,
            guard: 4,
            horizon: 1000,
            window: 200,
            epsilon: (1, 16),
        }
    }
}

/// `x_i = Σ_j c_j x_{i-j}` for `i ≥ start + order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceModel {
    pub order: usize,
    pub coefficients: Vec<i64>,
    pub start: usize,
}

impl RecurrenceModel {
    /// Whether the model reproduces `seq` from its start on.
    pub fn reproduces(&self, seq: &[u64]) -> bool {
        (self.start + self.order..seq.len()).all(|i| {
            let mut acc = BigInt::zero();
            for (j, &c) in self.coefficients.iter().enumerate() {
                acc += BigInt::from(c) * BigInt::from(seq[i - 1 - j]);
            }
            acc == BigInt::from(seq[i])
        })
    }

    /// Continues the sequence to `len` terms.
    pub fn extend(&self, seq: &[u64], len: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = seq.iter().map(|&v| BigInt::from(v)).collect();
        while out.len() < len {
            let i = out.len();
            let mut acc = BigInt::zero();
            for (j, &c) in self.coefficients.iter().enumerate() {
                acc += BigInt::from(c) * &out[i - 1 - j];
            }
            out.push(acc);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", content = "degree")]
pub enum GrowthTag {
    Zero,
    Polynomial(u32),
    Infinite,
    Inconclusive,
}

impl GrowthTag {
    pub fn is_conclusive(self) -> bool {
        self != GrowthTag::Inconclusive
    }

    /// Complexity as a rank: 0, d, or `u32::MAX` for infinite.
    fn rank(self) -> Option<u32> {
        match self {
            GrowthTag::Zero => Some(0),
            GrowthTag::Polynomial(d) => Some(d),
            GrowthTag::Infinite => Some(u32::MAX),
            GrowthTag::Inconclusive => None,
        }
    }

    /// Ordering of complexities; `None` if either side is inconclusive.
    pub fn compare(self, other: GrowthTag) -> Option<Ordering> {
        Some(self.rank()?.cmp(&other.rank()?))
    }
}

impl fmt::Display for GrowthTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthTag::Zero => write!(f, "0"),
            GrowthTag::Polynomial(d) => write!(f, "{d}"),
            GrowthTag::Infinite => write!(f, "inf"),
            GrowthTag::Inconclusive => write!(f, "?"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub length: usize,
    pub method: String,
    pub recurrence: Option<RecurrenceModel>,
    pub difference_order: Option<usize>,
    /// Smallest and largest successive ratio over the tested window, as decimals.
    pub ratio_range: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthClass {
    pub tag: GrowthTag,
    pub evidence: Evidence,
}

impl GrowthClass {
    fn new(tag: GrowthTag, length: usize, method: &str) -> Self {
        GrowthClass {
            tag,
            evidence: Evidence {
                length,
                method: method.into(),
                recurrence: None,
                difference_order: None,
                ratio_range: None,
            },
        }
    }
}

fn rat(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Solves `a x = b` over the rationals; one particular solution if consistent.
fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>, n: usize) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for k in c..n {
            a[r][k] = &a[r][k] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for k in c..n {
                    let t = &factor * &a[r][k];
                    a[i][k] -= t;
                }
                let t = &factor * &b[r];
                b[i] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = b[row].clone();
    }
    Some(x)
}

/// Minimal-order integer recurrence valid on a tail with at least `guard`
/// equations to spare beyond those determining it.
pub fn detect_recurrence(seq: &[u64], max_order: usize) -> Option<RecurrenceModel> {
    detect_with_guard(seq, max_order, GrowthConfig::default().guard)
}

fn detect_with_guard(seq: &[u64], max_order: usize, guard: usize) -> Option<RecurrenceModel> {
    let len = seq.len();
    let limit = max_order.min(len.saturating_sub(guard) / 2);
    for m in 1..=limit {
        for start in 0..=(len - 2 * m - guard) {
            let rows: Vec<Vec<BigRational>> = (start + m..len)
                .map(|i| (1..=m).map(|j| rat(seq[i - j])).collect())
                .collect();
            let rhs: Vec<BigRational> = (start + m..len).map(|i| rat(seq[i])).collect();
            let Some(sol) = solve_rational(rows, rhs, m) else { continue };
            if !sol.iter().all(|v| v.is_integer()) {
                continue;
            }
            let coefficients: Option<Vec<i64>> = sol.iter().map(|v| v.to_integer().to_i64()).collect();
            let Some(coefficients) = coefficients else { continue };
            if coefficients[m - 1] == 0 {
                continue;
            }
            let model = RecurrenceModel { order: m, coefficients, start };
            if model.reproduces(seq) {
                return Some(model);
            }
        }
    }
    None
}

pub fn classify(seq: &[u64]) -> GrowthClass {
    classify_with(seq, &GrowthConfig::default())
}

/// Signed entry point; negative entries are rejected.
pub fn classify_signed(seq: &[i64]) -> Result<GrowthClass> {
    if let Some(pos) = seq.iter().position(|&v| v < 0) {
        return Err(Error::Input(format!("negative entry {} at index {pos}", seq[pos])));
    }
    Ok(classify(&seq.iter().map(|&v| v as u64).collect::<Vec<_>>()))
}

pub fn classify_with(seq: &[u64], cfg: &GrowthConfig) -> GrowthClass {
    let len = seq.len();
    let trailing_zeros = seq.iter().rev().take_while(|&&v| v == 0).count();
    if trailing_zeros >= cfg.guard {
        return GrowthClass::new(GrowthTag::Zero, len, "eventually zero");
    }
    match detect_with_guard(seq, cfg.max_order, cfg.guard) {
        Some(model) => classify_recurrence(seq, model, cfg),
        None => classify_heuristic(seq),
    }
}

fn classify_recurrence(seq: &[u64], model: RecurrenceModel, cfg: &GrowthConfig) -> GrowthClass {
    let len = seq.len();
    let ext = model.extend(seq, cfg.horizon.max(len + cfg.window + 1));
    let mut class = GrowthClass::new(GrowthTag::Inconclusive, len, "recurrence");
    class.evidence.recurrence = Some(model.clone());
    if ext.iter().any(Signed::is_negative) {
        class.evidence.method = "recurrence extension turns negative".into();
        return class;
    }
    let window = &ext[ext.len() - cfg.window..];
    if window.iter().all(Zero::is_zero) {
        class.tag = GrowthTag::Zero;
        return class;
    }
    // smallest d with Δ^d vanishing on the window
    let mut diff: Vec<BigInt> = window.to_vec();
    for d in 1..=model.order {
        diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
        if diff.iter().all(Zero::is_zero) {
            class.tag = GrowthTag::Polynomial(d as u32);
            class.evidence.difference_order = Some(d);
            class.evidence.method = "recurrence + finite differences".into();
            return class;
        }
    }
    let (num, den) = (BigInt::from(cfg.epsilon.0 + cfg.epsilon.1), BigInt::from(cfg.epsilon.1));
    let geometric = window
        .windows(2)
        .all(|w| w[0].is_positive() && &w[1] * &den >= &w[0] * &num);
    class.evidence.ratio_range = ratio_range(window);
    if geometric {
        class.tag = GrowthTag::Infinite;
        class.evidence.method = "recurrence + geometric ratios".into();
        return class;
    }
    class.tag = characteristic_class(&model);
    class.evidence.method = "recurrence + characteristic roots".into();
    class
}

fn ratio_range(window: &[BigInt]) -> Option<(String, String)> {
    let ratios: Vec<f64> = window
        .windows(2)
        .filter(|w| w[0].is_positive())
        .map(|w| {
            let r = BigRational::new(w[1].clone(), w[0].clone());
            r.to_f64().unwrap_or(f64::INFINITY)
        })
        .collect();
    if ratios.is_empty() {
        return None;
    }
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Some((format!("{lo:.6}"), format!("{hi:.6}")))
}

/// No recurrence: only decisive geometric growth is called.
fn classify_heuristic(seq: &[u64]) -> GrowthClass {
    let len = seq.len();
    let mut class = GrowthClass::new(GrowthTag::Inconclusive, len, "no recurrence");
    if len < 16 {
        return class;
    }
    let tail: Vec<BigInt> = seq[len - 9..].iter().map(|&v| BigInt::from(v)).collect();
    class.evidence.ratio_range = ratio_range(&tail);
    let decisive = tail
        .windows(2)
        .all(|w| w[0].is_positive() && &w[1] * BigInt::from(2) >= &w[0] * BigInt::from(3));
    if decisive {
        class.tag = GrowthTag::Infinite;
        class.evidence.method = "no recurrence; ratios ≥ 3/2 over the last 8 terms".into();
    }
    class
}

// polynomials over Q, lowest degree first

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = trim(a.clone());
    let b = trim(b.clone());
    let lead = b.last().expect("division by zero polynomial").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            let t = &factor * c;
            r[shift + i] -= t;
        }
        r = trim(r);
    }
    r
}

fn poly_div(a: &Poly, b: &Poly) -> Poly {
    let mut r = trim(a.clone());
    let b = trim(b.clone());
    let lead = b.last().unwrap().clone();
    if r.len() < b.len() {
        return vec![];
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            let t = &factor * c;
            r[shift + i] -= t;
        }
        q[shift] = factor;
        r = trim(r);
    }
    q
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().cloned().unwrap_or_else(BigRational::one);
    a.iter().map(|c| c / &lead).collect()
}

fn derivative(p: &Poly) -> Poly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// `t^e mod m`.
fn power_mod(e: u64, m: &Poly) -> Poly {
    let mut result: Poly = vec![BigRational::one()];
    let mut base: Poly = poly_rem(&vec![BigRational::zero(), BigRational::one()], m);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem(&poly_mul(&result, &base), m);
        }
        base = poly_rem(&poly_mul(&base, &base), m);
        e >>= 1;
    }
    result
}

/// Exact class of a minimal recurrence from its characteristic polynomial.
fn characteristic_class(model: &RecurrenceModel) -> GrowthTag {
    let m = model.order;
    let mut p: Poly = vec![BigRational::zero(); m + 1];
    p[m] = BigRational::one();
    for (j, &c) in model.coefficients.iter().enumerate() {
        p[m - 1 - j] = BigRational::from_integer(BigInt::from(-c));
    }
    let g = poly_gcd(&p, &derivative(&p));
    let squarefree = poly_div(&p, &g);
    // every root of unity of degree ≤ 6 over Q has order dividing 2520
    let mut t_pow = power_mod(2520, &squarefree);
    if !t_pow.is_empty() {
        t_pow[0] -= BigRational::one();
    }
    if !trim(t_pow).is_empty() {
        return GrowthTag::Infinite;
    }
    let mut power = squarefree.clone();
    let mut mult = 1;
    while !poly_rem(&power, &p).is_empty() {
        power = poly_mul(&power, &squarefree);
        mult += 1;
    }
    GrowthTag::Polynomial(mult)
}

/// Mode of [`combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    /// `a·x_{i+1} + b·x_i`
    Sum,
    /// `a·x_{i+1} - b·x_i`, requires `a > b > 0`
    Diff,
}

pub fn combine(x: &[u64], a: u64, b: u64, mode: Combine) -> Result<Vec<u64>> {
    if mode == Combine::Diff && !(a > b && b > 0) {
        return Err(Error::Input(format!("difference mode needs a > b > 0, got a={a}, b={b}")));
    }
    x.windows(2)
        .enumerate()
        .map(|(i, w)| {
            let hi = (a as u128) * (w[1] as u128);
            let lo = (b as u128) * (w[0] as u128);
            let v = match mode {
                Combine::Sum => Some(hi + lo),
                Combine::Diff => hi.checked_sub(lo),
            };
            v.and_then(|v| u64::try_from(v).ok())
                .ok_or_else(|| Error::Input(format!("combined term {i} is negative or overflows")))
        })
        .collect()
}

/// Class of the ν-sequence of `Ext(M,N)`, cross-checked against the length sequence.
pub fn cx_pair(m: &ModuleRep, n: &ModuleRep, steps: usize) -> Result<GrowthClass> {
    let table = ext_table(m, n, steps)?;
    class_of_table(&table)
}

/// ν-class of a table, failing if the ℓ-class conclusively disagrees.
pub fn class_of_table(table: &HomologyTable) -> Result<GrowthClass> {
    let by_gens = classify(&table.gens);
    let by_length = classify(&table.lengths);
    if by_gens.tag.is_conclusive() && by_length.tag.is_conclusive() && by_gens.tag != by_length.tag {
        return Err(Error::Internal(format!(
            "ν-class {} and ℓ-class {} disagree; gens {:?}, lengths {:?}",
            by_gens.tag, by_length.tag, table.gens, table.lengths
        )));
    }
    Ok(by_gens)
}

/// `cx M = cx(M, k)`.
pub fn cx_mod(m: &ModuleRep, steps: usize) -> Result<GrowthClass> {
    cx_pair(m, &ModuleRep::residue_field(m.algebra()), steps)
}

/// `px N = cx(k, N)`.
pub fn px_mod(n: &ModuleRep, steps: usize) -> Result<GrowthClass> {
    cx_pair(&ModuleRep::residue_field(n.algebra()), n, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tag(seq: &[u64]) -> GrowthTag {
        classify(seq).tag
    }

    #[test]
    fn recurrence_examples() {
        let pow2: Vec<u64> = (0..10).map(|i| 1 << i).collect();
        let m = detect_recurrence(&pow2, 6).unwrap();
        assert_eq!((m.order, m.coefficients.clone()), (1, vec![2]));
        let ones = vec![1u64; 12];
        assert_eq!(detect_recurrence(&ones, 6).unwrap().coefficients, vec![1]);
        let lin: Vec<u64> = (0..12).map(|i| i + 1).collect();
        let m = detect_recurrence(&lin, 6).unwrap();
        assert_eq!((m.order, m.coefficients), (2, vec![2, -1]));
    }

    #[test]
    fn recurrence_needs_guard_terms() {
        // four terms cannot support an order-1 claim with four spare equations
        assert!(detect_recurrence(&[1, 2, 4, 8], 6).is_none());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(tag(&[0; 10]), GrowthTag::Zero);
        assert_eq!(tag(&[5, 0, 0, 0, 0, 0, 0]), GrowthTag::Zero);
        let lin: Vec<u64> = (1..=20).collect();
        assert_eq!(tag(&lin), GrowthTag::Polynomial(2));
        assert_eq!(tag(&[7; 20]), GrowthTag::Polynomial(1));
        let pow2: Vec<u64> = (0..20).map(|i| 1 << i).collect();
        assert_eq!(tag(&pow2), GrowthTag::Infinite);
    }

    #[test]
    fn quasi_polynomials_use_roots_of_unity() {
        let periodic: Vec<u64> = (0..20).map(|i| if i % 2 == 0 { 1 } else { 3 }).collect();
        assert_eq!(tag(&periodic), GrowthTag::Polynomial(1));
        let c = classify(&periodic);
        assert_eq!(c.evidence.method, "recurrence + characteristic roots");
        // i/2 rounded down plus parity: quasi-linear
        let quasi: Vec<u64> = (0..24).map(|i| i / 2 + (i % 2) * 5).collect();
        assert_eq!(tag(&quasi), GrowthTag::Polynomial(2));
        // alternating growth 1,1,2,2,4,4: ratios alternate 1 and 2
        let alt: Vec<u64> = (0..24).map(|i| 1 << (i / 2)).collect();
        assert_eq!(tag(&alt), GrowthTag::Infinite);
    }

    #[test]
    fn without_recurrence_only_decisive_growth_is_called() {
        // factorial-like growth has no short recurrence
        let mut fact = vec![1u64];
        for i in 1..18u64 {
            fact.push(fact[fact.len() - 1] * i.min(9));
        }
        assert_eq!(tag(&fact[..10]), GrowthTag::Inconclusive);
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61];
        assert_eq!(tag(&primes), GrowthTag::Inconclusive);
        let short: Vec<u64> = (0..7).map(|i| [1, 3, 8, 21, 55, 144, 377][i]).collect();
        assert_eq!(tag(&short), GrowthTag::Inconclusive);
    }

    #[test]
    fn negative_entries_are_input_errors() {
        assert!(matches!(classify_signed(&[1, -2, 3]), Err(Error::Input(_))));
        assert_eq!(classify_signed(&[0; 8]).unwrap().tag, GrowthTag::Zero);
    }

    #[test]
    fn combine_examples() {
        let pow2: Vec<u64> = (0..12).map(|i| 1 << i).collect();
        let s = combine(&pow2, 1, 1, Combine::Sum).unwrap();
        assert_eq!(s, (0..11).map(|i| 3u64 << i).collect::<Vec<_>>());
        let lin: Vec<u64> = (0..12).collect();
        assert_eq!(combine(&lin, 2, 1, Combine::Diff).unwrap(), (2..13).collect::<Vec<u64>>());
        assert_eq!(combine(&[4; 6], 2, 1, Combine::Diff).unwrap(), vec![4; 5]);
        assert!(combine(&[4, 1], 2, 1, Combine::Diff).is_err());
        assert!(combine(&[1, 2], 1, 2, Combine::Diff).is_err());
    }

    #[test]
    fn tag_order() {
        use GrowthTag::*;
        assert_eq!(Zero.compare(Polynomial(1)), Some(Ordering::Less));
        assert_eq!(Infinite.compare(Polynomial(9)), Some(Ordering::Greater));
        assert_eq!(Inconclusive.compare(Zero), None);
    }

    /// A recurrence-generated family with known complexity.
    #[derive(Clone, Debug)]
    enum Family {
        /// positive-coefficient polynomial of degree d-1
        Poly(Vec<u64>),
        /// c·r^i, r ≥ 2
        Geometric(u64, u64),
        /// period-p pattern times (i+1)^(d-1)
        Quasi(Vec<u64>, u32),
        /// (i+1)·r^i
        PolyGeom(u64),
    }

    impl Family {
        fn term(&self, i: u64) -> u64 {
            match self {
                Family::Poly(c) => c.iter().rev().fold(0, |acc, &a| acc * (i + 1) + a),
                Family::Geometric(c, r) => c * r.pow(i as u32),
                Family::Quasi(pat, d) => pat[(i as usize) % pat.len()] * (i + 1).pow(d - 1),
                Family::PolyGeom(r) => (i + 1) * r.pow(i as u32),
            }
        }

        fn complexity(&self) -> GrowthTag {
            match self {
                Family::Poly(c) => GrowthTag::Polynomial(c.len() as u32),
                Family::Quasi(_, d) => GrowthTag::Polynomial(*d),
                _ => GrowthTag::Infinite,
            }
        }

        fn seq(&self, len: usize) -> Vec<u64> {
            (0..len as u64).map(|i| self.term(i)).collect()
        }
    }

    fn family() -> impl Strategy<Value = Family> {
        prop_oneof![
            proptest::collection::vec(1u64..6, 1..=4).prop_map(Family::Poly),
            (1u64..5, 2u64..4).prop_map(|(c, r)| Family::Geometric(c, r)),
            (proptest::collection::vec(1u64..6, 2..=3), 1u32..=2).prop_map(|(p, d)| Family::Quasi(p, d)),
            (2u64..4).prop_map(Family::PolyGeom),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn families_classify_to_their_complexity(f in family()) {
            prop_assert_eq!(tag(&f.seq(24)), f.complexity());
        }

        #[test]
        fn scaling_and_shifting_preserve_class(f in family(), c in 1u64..7, drop in 0usize..4) {
            let s = f.seq(26);
            let scaled: Vec<u64> = s.iter().map(|v| v * c).collect();
            prop_assert_eq!(tag(&scaled), f.complexity());
            prop_assert_eq!(tag(&s[drop..]), f.complexity());
        }

        #[test]
        fn sums_and_dominant_differences_preserve_class(f in family(), a in 1u64..5, b in 1u64..5) {
            let s = f.seq(26);
            let sum = combine(&s, a, b, Combine::Sum).unwrap();
            prop_assert_eq!(tag(&sum), f.complexity());
            if a > b {
                if let Ok(diff) = combine(&s, a, b, Combine::Diff) {
                    prop_assert_eq!(tag(&diff), f.complexity());
                }
            }
        }

        #[test]
        fn differences_lose_at_most_one_degree(coeffs in proptest::collection::vec(1u64..6, 2..=4)) {
            let f = Family::Poly(coeffs.clone());
            let s = f.seq(24);
            let diff: Vec<u64> = s.windows(2).map(|w| w[1] - w[0]).collect();
            let GrowthTag::Polynomial(d) = tag(&diff) else { panic!("expected polynomial") };
            prop_assert!(d + 1 >= coeffs.len() as u32);
        }
    }
}
