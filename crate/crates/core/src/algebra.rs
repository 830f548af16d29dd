//! Artinian local algebras `k[x_1..x_n] / (I + m^cap)` realized as finite
//! dimensional algebras with one multiplication matrix per variable.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Matrix, PrimeField};
use crate::poly::{Exponents, Polynomial};

/// User-facing description of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub prime: u32,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub cap: usize,
    /// User-asserted complete-intersection codimension; never inferred.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci_codim: Option<usize>,
}

impl AlgebraSpec {
    pub fn new(prime: u32, vars: &[&str], relations: &[&str], cap: usize) -> Self {
        AlgebraSpec {
            prime,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            relations: relations.iter().map(|s| s.to_string()).collect(),
            cap,
            ci_codim: None,
        }
    }

    pub fn with_ci_codim(mut self, codim: usize) -> Self {
        self.ci_codim = Some(codim);
        self
    }
}

/// An element of the algebra, as coordinates in its monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingElement(pub Vec<u32>);

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// An ideal, stored as a k-subspace of the algebra.
#[derive(Clone, Debug)]
pub struct IdealSubspace {
    /// Columns form a basis of the ideal.
    pub basis: Matrix,
    /// `ℓ(R/I)`.
    pub colength: usize,
}

impl IdealSubspace {
    pub fn length(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains(&self, a: &RingElement) -> bool {
        let mut span = EchelonBasis::new(self.basis.field(), self.basis.rows());
        for c in self.basis.columns() {
            span.insert(&c);
        }
        span.contains(&a.0)
    }
}

/// A finite-dimensional local algebra over GF(p).
#[derive(Clone, Debug)]
pub struct ArtinAlgebra {
    spec: AlgebraSpec,
    field: PrimeField,
    basis: Vec<Exponents>,
    actions: Vec<Matrix>,
    basis_ops: Vec<Matrix>,
    m_powers: Vec<Matrix>,
    socle: Matrix,
    edim: usize,
}

struct MonomialSpace {
    /// Monomials of degree < cap, highest degree first.
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

impl MonomialSpace {
    fn new(nvars: usize, cap: usize) -> Self {
        let mut monomials = Vec::new();
        for d in (0..cap).rev() {
            let mut deg = Vec::new();
            push_monomials(nvars, d, &mut vec![0; nvars], 0, &mut deg);
            deg.sort_by(|a, b| b.cmp(a));
            monomials.extend(deg);
        }
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialSpace { monomials, index }
    }

    fn dim(&self) -> usize {
        self.monomials.len()
    }

    fn shift(&self, v: &[u32], var: usize) -> Vec<u32> {
        let mut out = vec![0; v.len()];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut e = self.monomials[i].clone();
            e[var] += 1;
            if let Some(&j) = self.index.get(&e) {
                out[j] = c;
            }
        }
        out
    }

    fn embed(&self, poly: &Polynomial, field: PrimeField) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for (e, c) in poly.terms() {
            if let Some(&j) = self.index.get(e) {
                v[j] = field.add(v[j], field.from_i128(c));
            }
        }
        v
    }
}

fn push_monomials(nvars: usize, remaining: usize, cur: &mut Vec<u32>, var: usize, out: &mut Vec<Exponents>) {
    if var + 1 == nvars {
        cur[var] = remaining as u32;
        out.push(cur.clone());
        cur[var] = 0;
        return;
    }
    if nvars == 0 {
        if remaining == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in 0..=remaining {
        cur[var] = e as u32;
        push_monomials(nvars, remaining - e, cur, var + 1, out);
    }
    cur[var] = 0;
}

/// The ideal generated by the relations inside `k[x]/m^cap`, as an echelon basis.
fn relation_ideal(space: &MonomialSpace, relations: &[Polynomial], field: PrimeField, nvars: usize) -> EchelonBasis {
    let mut ideal = EchelonBasis::new(field, space.dim());
    let mut queue: Vec<Vec<u32>> = relations.iter().map(|r| space.embed(r, field)).collect();
    while let Some(v) = queue.pop() {
        if ideal.insert(&v) {
            for j in 0..nvars {
                queue.push(space.shift(&v, j));
            }
        }
    }
    ideal
}

fn quotient_dimension(relations: &[Polynomial], field: PrimeField, nvars: usize, cap: usize) -> usize {
    let space = MonomialSpace::new(nvars, cap);
    let ideal = relation_ideal(&space, relations, field, nvars);
    space.dim() - ideal.dim()
}

/// Span of `gens` closed under the given operators.
pub(crate) fn action_closure(field: PrimeField, dim: usize, actions: &[Matrix], gens: &[Vec<u32>]) -> Matrix {
    let mut span = EchelonBasis::new(field, dim);
    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut queue: Vec<Vec<u32>> = gens.to_vec();
    while let Some(v) = queue.pop() {
        if span.insert(&v) {
            for a in actions {
                queue.push(a.mul_vec(&v));
            }
            found.push(v);
        }
    }
    Matrix::from_columns(field, dim, &found)
}

/// Span of the images of `sub` under every operator.
pub(crate) fn radical_of(field: PrimeField, dim: usize, actions: &[Matrix], sub: &Matrix) -> Matrix {
    if sub.cols() == 0 || actions.is_empty() {
        return Matrix::zeros(field, dim, 0);
    }
    let images: Vec<Matrix> = actions.iter().map(|a| a.mul(sub)).collect();
    let mut all = images[0].clone();
    for m in &images[1..] {
        all = all.hstack(m);
    }
    all.column_basis()
}

/// Intersection of the kernels of the given operators.
pub(crate) fn common_kernel(field: PrimeField, dim: usize, actions: &[Matrix]) -> Matrix {
    if actions.is_empty() {
        return Matrix::identity(field, dim);
    }
    let mut stacked = actions[0].clone();
    for a in &actions[1..] {
        stacked = stacked.vstack(a);
    }
    stacked.kernel_basis()
}

impl ArtinAlgebra {
    /// Builds `k[x]/(I + m^cap)` and certifies that `m^cap ⊆ I` already.
    pub fn build(spec: &AlgebraSpec) -> Result<ArtinAlgebra> {
        let field = PrimeField::new(spec.prime)?;
        if spec.cap == 0 {
            return Err(Error::Input("cap must be at least 1".into()));
        }
        for (i, v) in spec.vars.iter().enumerate() {
            if v.is_empty() || !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Input(format!("invalid variable name '{v}'")));
            }
            if spec.vars[..i].contains(v) {
                return Err(Error::Input(format!("duplicate variable name '{v}'")));
            }
        }
        let nvars = spec.vars.len();
        let mut relations = Vec::with_capacity(spec.relations.len());
        for r in &spec.relations {
            let poly = Polynomial::parse(r, &spec.vars)?;
            if field.from_i128(poly.constant_term()) != 0 {
                return Err(Error::Input(format!("relation '{r}' has a nonzero constant term")));
            }
            relations.push(poly);
        }

        let dim_cap = quotient_dimension(&relations, field, nvars, spec.cap);
        let dim_next = quotient_dimension(&relations, field, nvars, spec.cap + 1);
        if dim_cap != dim_next {
            return Err(Error::CapTooSmall { degree: spec.cap });
        }

        let space = MonomialSpace::new(nvars, spec.cap);
        let ideal = relation_ideal(&space, &relations, field, nvars);
        // standard monomials, lowest degree first
        let mut standard: Vec<usize> = (0..space.dim()).filter(|&i| !ideal.is_pivot(i)).collect();
        standard.sort_by_key(|&i| space.monomials[i].iter().sum::<u32>());
        let basis: Vec<Exponents> = standard.iter().map(|&i| space.monomials[i].clone()).collect();
        let position: HashMap<usize, usize> = standard.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let l = basis.len();

        let coords = |v: &mut Vec<u32>| -> Vec<u32> {
            ideal.reduce(v);
            let mut out = vec![0; l];
            for (i, &c) in v.iter().enumerate() {
                if c != 0 {
                    out[position[&i]] = c;
                }
            }
            out
        };

        let mut actions = Vec::with_capacity(nvars);
        for j in 0..nvars {
            let cols: Vec<Vec<u32>> = standard
                .iter()
                .map(|&i| {
                    let mut e = vec![0; space.dim()];
                    e[i] = 1;
                    let mut shifted = space.shift(&e, j);
                    coords(&mut shifted)
                })
                .collect();
            actions.push(Matrix::from_columns(field, l, &cols));
        }

        for a in 0..nvars {
            for b in a + 1..nvars {
                if actions[a].mul(&actions[b]) != actions[b].mul(&actions[a]) {
                    return Err(Error::Internal(format!(
                        "multiplication by {} and {} do not commute",
                        spec.vars[a], spec.vars[b]
                    )));
                }
            }
        }

        let basis_ops: Vec<Matrix> = basis
            .iter()
            .map(|e| {
                let mut op = Matrix::identity(field, l);
                for (j, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        op = actions[j].mul(&op);
                    }
                }
                op
            })
            .collect();

        let mut m_powers = vec![Matrix::identity(field, l)];
        loop {
            let next = radical_of(field, l, &actions, m_powers.last().unwrap());
            let done = next.cols() == 0;
            m_powers.push(next);
            if done {
                break;
            }
        }
        let socle = common_kernel(field, l, &actions);
        let m_len = m_powers.get(1).map_or(0, Matrix::cols);
        let m2_len = m_powers.get(2).map_or(0, Matrix::cols);

        Ok(ArtinAlgebra {
            spec: spec.clone(),
            field,
            basis,
            actions,
            basis_ops,
            m_powers,
            socle,
            edim: m_len - m2_len,
        })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.actions.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.spec.vars
    }

    /// `ℓ(R)`.
    pub fn length(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Exponents] {
        &self.basis
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis.iter().map(|e| self.monomial_label(e)).collect()
    }

    fn monomial_label(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(&self.spec.vars)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Multiplication by each variable on the basis.
    pub fn var_actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Multiplication by each basis monomial on the basis.
    pub fn basis_operators(&self) -> &[Matrix] {
        &self.basis_ops
    }

    pub fn unit_index(&self) -> usize {
        0
    }

    pub fn one(&self) -> RingElement {
        let mut v = vec![0; self.length()];
        v[0] = 1;
        RingElement(v)
    }

    pub fn zero(&self) -> RingElement {
        RingElement(vec![0; self.length()])
    }

    pub fn variable(&self, j: usize) -> RingElement {
        RingElement(self.actions[j].column(0))
    }

    pub fn cap(&self) -> usize {
        self.spec.cap
    }

    /// `ℓ(Soc R)`.
    pub fn socle_length(&self) -> usize {
        self.socle.cols()
    }

    pub fn edim(&self) -> usize {
        self.edim
    }

    /// `ℓ(m^j)` for `j = 0 ..` until it reaches zero (inclusive).
    pub fn m_power_lengths(&self) -> Vec<usize> {
        self.m_powers.iter().map(Matrix::cols).collect()
    }

    /// Smallest `j` with `m^j = 0`.
    pub fn loewy_length(&self) -> usize {
        self.m_powers.len() - 1
    }

    pub fn m_power_vanishes(&self, j: usize) -> bool {
        j >= self.loewy_length()
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle_length() == 1
    }

    pub fn ci_codim(&self) -> Option<usize> {
        self.spec.ci_codim
    }

    pub fn is_field(&self) -> bool {
        self.length() == 1
    }

    pub fn element(&self, coords: Vec<u32>) -> Result<RingElement> {
        if coords.len() != self.length() {
            return Err(Error::Input(format!(
                "ring element has {} coordinates, algebra has length {}",
                coords.len(),
                self.length()
            )));
        }
        let p = self.field.modulus();
        Ok(RingElement(coords.into_iter().map(|c| c % p).collect()))
    }

    /// Image of a polynomial in the basis.
    pub fn normal_form(&self, poly: &Polynomial) -> Result<RingElement> {
        if poly.nvars() != self.nvars() {
            return Err(Error::Input("polynomial uses a different variable list".into()));
        }
        let f = self.field;
        let mut out = vec![0; self.length()];
        for (e, c) in poly.terms() {
            let mut v = self.one().0;
            for (j, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    v = self.actions[j].mul_vec(&v);
                }
            }
            let c = f.from_i128(c);
            for (o, x) in out.iter_mut().zip(v) {
                *o = f.add(*o, f.mul(c, x));
            }
        }
        Ok(RingElement(out))
    }

    pub fn parse_element(&self, src: &str) -> Result<RingElement> {
        self.normal_form(&Polynomial::parse(src, &self.spec.vars)?)
    }

    /// Operator of multiplication by `a` on the regular representation.
    pub fn multiplication_operator(&self, a: &RingElement) -> Matrix {
        operator_from_basis(&self.basis_ops, a, self.field, self.length())
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement(self.multiplication_operator(a).mul_vec(&b.0))
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = self.field;
        RingElement(a.0.iter().zip(&b.0).map(|(&x, &y)| f.add(x, y)).collect())
    }

    /// Whether `a` lies in the maximal ideal (its unit coordinate vanishes).
    pub fn in_maximal_ideal(&self, a: &RingElement) -> bool {
        a.0[self.unit_index()] == 0
    }

    /// `m^j` as an ideal; `m^0 = R`.
    pub fn radical_power(&self, j: usize) -> IdealSubspace {
        let basis = self
            .m_powers
            .get(j)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.length(), 0));
        self.ideal_from_basis(basis)
    }

    /// Variables forming a minimal generating set of `m` (independent modulo `m^2`).
    pub fn maximal_ideal_generators(&self) -> Vec<RingElement> {
        let mut span = EchelonBasis::new(self.field, self.length());
        if let Some(m2) = self.m_powers.get(2) {
            for c in m2.columns() {
                span.insert(&c);
            }
        }
        (0..self.nvars())
            .map(|j| self.variable(j))
            .filter(|v| span.insert(&v.0))
            .collect()
    }

    pub fn socle_ideal(&self) -> IdealSubspace {
        self.ideal_from_basis(self.socle.clone())
    }

    /// Smallest ideal containing `gens`.
    pub fn ideal_closure(&self, gens: &[RingElement]) -> IdealSubspace {
        let g: Vec<Vec<u32>> = gens.iter().map(|a| a.0.clone()).collect();
        let basis = action_closure(self.field, self.length(), &self.actions, &g);
        self.ideal_from_basis(basis)
    }

    pub(crate) fn ideal_from_basis(&self, basis: Matrix) -> IdealSubspace {
        let colength = self.length() - basis.cols();
        IdealSubspace { basis, colength }
    }

    /// Class tags used by the fixture catalog and the check suites.
    pub fn class_tags(&self) -> Vec<&'static str> {
        let l = self.length();
        let r = self.socle_length();
        let mut tags = Vec::new();
        if self.m_power_vanishes(2) {
            tags.push("m2-zero");
        }
        if self.m_power_vanishes(3) {
            tags.push("m3-zero");
        }
        if 2 * r > l {
            tags.push("2r>l");
        }
        if 2 * r + 2 > l {
            tags.push("2r>l-2");
        }
        if self.is_gorenstein() {
            tags.push("gorenstein");
        }
        tags
    }
}

pub(crate) fn operator_from_basis(ops: &[Matrix], a: &RingElement, field: PrimeField, dim: usize) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (op, &c) in ops.iter().zip(&a.0) {
        out.add_scaled(op, c);
    }
    out
}

impl fmt::Display for ArtinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({})[{}]/({}) + m^{}",
            self.field.modulus(),
            self.spec.vars.join(","),
            self.spec.relations.join(", "),
            self.spec.cap
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(vars: &[&str], rels: &[&str], cap: usize) -> ArtinAlgebra {
        ArtinAlgebra::build(&AlgebraSpec::new(101, vars, rels, cap)).unwrap()
    }

    #[test]
    fn dual_numbers() {
        let r = build(&["x"], &["x^2"], 3);
        assert_eq!(r.length(), 2);
        assert_eq!(r.basis_labels(), vec!["1", "x"]);
        assert!(r.is_gorenstein());
    }

    #[test]
    fn square_zero_plane() {
        let r = build(&["x", "y"], &["x^2", "x*y", "y^2"], 3);
        assert_eq!(r.length(), 3);
        assert_eq!(r.basis_labels(), vec!["1", "x", "y"]);
        assert_eq!(r.socle_length(), 2);
        assert_eq!(r.socle_ideal().length(), r.radical_power(1).length());
        assert_eq!(r.edim(), 2);
    }

    #[test]
    fn killing_the_variable_gives_the_field() {
        let r = build(&["x"], &["x"], 2);
        assert_eq!(r.length(), 1);
        assert!(r.is_field());
        assert_eq!(r.socle_length(), 1);
    }

    #[test]
    fn cap_too_small_is_reported() {
        let err = ArtinAlgebra::build(&AlgebraSpec::new(101, &["x", "y"], &["x^2"], 3)).unwrap_err();
        assert!(matches!(err, Error::CapTooSmall { degree: 3 }));
    }

    #[test]
    fn rejects_constant_terms_and_duplicates() {
        assert!(ArtinAlgebra::build(&AlgebraSpec::new(101, &["x"], &["x^2 + 1"], 3)).is_err());
        assert!(ArtinAlgebra::build(&AlgebraSpec::new(101, &["x", "x"], &["x^2"], 3)).is_err());
        assert!(ArtinAlgebra::build(&AlgebraSpec::new(101, &["x"], &["x^2"], 0)).is_err());
    }

    #[test]
    fn normal_forms() {
        let r = build(&["x"], &["x^2"], 3);
        assert_eq!(r.parse_element("1").unwrap(), r.one());
        assert!(r.parse_element("x^2").unwrap().is_zero());
        let s = build(&["x", "y"], &["x^2", "y^2"], 3);
        let v = s.parse_element("(x+y)^2").unwrap();
        let xy = s.parse_element("x*y").unwrap();
        assert_eq!(v, s.add(&xy, &xy));
        assert!(!xy.is_zero());
    }

    #[test]
    fn multiplication() {
        let r = build(&["x"], &["x^3"], 4);
        let x = r.variable(0);
        assert_eq!(r.mul(&x, &r.one()), x);
        assert_eq!(r.mul(&x, &x), r.parse_element("x^2").unwrap());
        let m2 = build(&["x", "y"], &["x^2", "x*y", "y^2"], 3);
        let (a, b) = (m2.variable(0), m2.variable(1));
        assert!(m2.mul(&a, &b).is_zero());
    }

    #[test]
    fn radical_powers_of_ci() {
        let r = build(&["x", "y"], &["x^2", "y^2"], 3);
        assert_eq!(r.m_power_lengths(), vec![4, 3, 1, 0]);
        assert_eq!(r.radical_power(0).length(), 4);
        assert_eq!(r.radical_power(3).length(), 0);
        assert_eq!(r.radical_power(7).length(), 0);
    }

    #[test]
    fn socle_of_truncated_line() {
        let r = build(&["x"], &["x^3"], 4);
        let soc = r.socle_ideal();
        assert_eq!(soc.length(), 1);
        assert!(soc.contains(&r.parse_element("x^2").unwrap()));
        assert!(r.is_gorenstein());
    }

    #[test]
    fn ideal_closure_examples() {
        let r = build(&["x", "y"], &["x^2", "y^2"], 3);
        assert_eq!(r.ideal_closure(&[r.one()]).colength, 0);
        assert_eq!(r.ideal_closure(&[]).colength, 4);
        let i = r.ideal_closure(&[r.variable(0)]);
        assert_eq!(i.length(), 2);
        assert_eq!(i.colength, 2);
        assert!(i.contains(&r.parse_element("x*y").unwrap()));
    }

    #[test]
    fn non_graded_gorenstein_ring() {
        let r = build(&["x", "y", "z"], &["x*y", "x*z", "y*z", "x^2-y^2", "y^2-z^2"], 4);
        assert_eq!(r.length(), 5);
        assert_eq!(r.socle_length(), 1);
        assert_eq!(r.m_power_lengths(), vec![5, 4, 1, 0]);
    }
}
