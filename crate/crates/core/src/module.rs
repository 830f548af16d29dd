//! Finitely generated modules over an [`ArtinAlgebra`], realized as k-spaces
//! with commuting nilpotent variable actions.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{action_closure, common_kernel, operator_from_basis, radical_of, ArtinAlgebra, IdealSubspace, RingElement};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Matrix, PrimeField};

/// A presentation `R^s -> R^t -> M -> 0`, one relation per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub name: String,
    pub gens: usize,
    pub relations: Vec<Vec<RingElement>>,
}

/// Textual presentation as it appears in session files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub gens: usize,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

impl PresentationSpec {
    pub fn resolve(&self, name: &str, algebra: &ArtinAlgebra) -> Result<ModulePresentation> {
        let mut relations = Vec::with_capacity(self.relations.len());
        for (i, row) in self.relations.iter().enumerate() {
            if row.len() != self.gens {
                return Err(Error::Input(format!(
                    "module {name}: relation {i} has {} entries, expected {}",
                    row.len(),
                    self.gens
                )));
            }
            let parsed = row
                .iter()
                .map(|s| algebra.parse_element(s))
                .collect::<Result<Vec<_>>>()?;
            relations.push(parsed);
        }
        Ok(ModulePresentation {
            name: name.to_string(),
            gens: self.gens,
            relations,
        })
    }
}

/// A stable subspace of a module; columns of `basis` span it.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub basis: Matrix,
}

impl Submodule {
    pub fn length(&self) -> usize {
        self.basis.cols()
    }
}

/// A module as a k-space with variable actions and distinguished generators.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    algebra: Arc<ArtinAlgebra>,
    actions: Vec<Matrix>,
    generators: Matrix,
    dim: usize,
    nu: usize,
}

/// Coordinates with respect to a basis of a subspace, via an invertible square minor.
pub(crate) struct Coordinates {
    rows: Vec<usize>,
    inverse: Matrix,
}

impl Coordinates {
    pub(crate) fn new(basis: &Matrix) -> Coordinates {
        let f = basis.field();
        let d = basis.cols();
        let rows = basis.transpose().pivot_columns();
        debug_assert_eq!(rows.len(), d, "basis columns are not independent");
        let minor = basis.transpose().select_columns(&rows).transpose();
        let (r, _) = minor.hstack(&Matrix::identity(f, d)).rref();
        let idx: Vec<usize> = (d..2 * d).collect();
        Coordinates {
            rows,
            inverse: r.select_columns(&idx),
        }
    }

    pub(crate) fn of(&self, v: &[u32]) -> Vec<u32> {
        let picked: Vec<u32> = self.rows.iter().map(|&r| v[r]).collect();
        self.inverse.mul_vec(&picked)
    }
}

impl ModuleRep {
    /// Assembles a module from raw parts, checking shapes and commutativity.
    pub fn from_parts(algebra: Arc<ArtinAlgebra>, actions: Vec<Matrix>, generators: Matrix) -> Result<ModuleRep> {
        let dim = generators.rows();
        if actions.len() != algebra.nvars() {
            return Err(Error::Input(format!(
                "module has {} actions but the algebra has {} variables",
                actions.len(),
                algebra.nvars()
            )));
        }
        if actions.iter().any(|a| a.rows() != dim || a.cols() != dim) {
            return Err(Error::Input("action matrices do not match module dimension".into()));
        }
        for i in 0..actions.len() {
            for j in i + 1..actions.len() {
                if actions[i].mul(&actions[j]) != actions[j].mul(&actions[i]) {
                    return Err(Error::Internal("module actions do not commute".into()));
                }
            }
        }
        Ok(Self::assemble(algebra, actions, generators))
    }

    fn assemble(algebra: Arc<ArtinAlgebra>, actions: Vec<Matrix>, generators: Matrix) -> ModuleRep {
        let dim = generators.rows();
        let field = algebra.field();
        let radical = radical_of(field, dim, &actions, &Matrix::identity(field, dim));
        let nu = dim - radical.cols();
        ModuleRep {
            algebra,
            actions,
            generators,
            dim,
            nu,
        }
    }

    /// `coker(R^s -> R^t)`.
    pub fn realize(algebra: &Arc<ArtinAlgebra>, presentation: &ModulePresentation) -> Result<ModuleRep> {
        let l = algebra.length();
        let t = presentation.gens;
        let field = algebra.field();
        for row in &presentation.relations {
            if row.len() != t {
                return Err(Error::Input(format!(
                    "module {}: relation row has {} entries, expected {t}",
                    presentation.name,
                    row.len()
                )));
            }
            if row.iter().any(|a| a.0.len() != l) {
                return Err(Error::Input(format!(
                    "module {}: relation entry does not belong to the algebra",
                    presentation.name
                )));
            }
        }
        let free_actions = free_actions(algebra, t);
        let rows: Vec<Vec<u32>> = presentation
            .relations
            .iter()
            .map(|row| row.iter().flat_map(|a| a.0.iter().copied()).collect())
            .collect();
        let relation_space = action_closure(field, t * l, &free_actions, &rows);
        let gens: Vec<Vec<u32>> = (0..t)
            .map(|g| {
                let mut v = vec![0; t * l];
                v[g * l + algebra.unit_index()] = 1;
                v
            })
            .collect();
        Ok(quotient(algebra, t * l, &free_actions, &relation_space, &gens))
    }

    pub fn free(algebra: &Arc<ArtinAlgebra>, rank: usize) -> ModuleRep {
        let l = algebra.length();
        let field = algebra.field();
        let gens: Vec<Vec<u32>> = (0..rank)
            .map(|g| {
                let mut v = vec![0; rank * l];
                v[g * l + algebra.unit_index()] = 1;
                v
            })
            .collect();
        Self::assemble(
            algebra.clone(),
            free_actions(algebra, rank),
            Matrix::from_columns(field, rank * l, &gens),
        )
    }

    pub fn residue_field(algebra: &Arc<ArtinAlgebra>) -> ModuleRep {
        let field = algebra.field();
        let actions = vec![Matrix::zeros(field, 1, 1); algebra.nvars()];
        Self::assemble(algebra.clone(), actions, Matrix::identity(field, 1))
    }

    /// `E = R^∨`, the injective hull of the residue field.
    pub fn injective_hull(algebra: &Arc<ArtinAlgebra>) -> ModuleRep {
        Self::free(algebra, 1).matlis_dual()
    }

    pub fn zero(algebra: &Arc<ArtinAlgebra>) -> ModuleRep {
        let field = algebra.field();
        let actions = vec![Matrix::zeros(field, 0, 0); algebra.nvars()];
        Self::assemble(algebra.clone(), actions, Matrix::zeros(field, 0, 0))
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn same_algebra(&self, other: &ModuleRep) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra.spec() == other.algebra.spec()
    }

    pub fn var_actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Distinguished generators as columns.
    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    /// `ℓ(M)`.
    pub fn length(&self) -> usize {
        self.dim
    }

    /// `ν(M) = ℓ(M/mM)`.
    pub fn min_gens(&self) -> usize {
        self.nu
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Multiplication by every basis monomial of the algebra.
    pub fn basis_operators(&self) -> Vec<Matrix> {
        let field = self.field();
        self.algebra
            .basis()
            .iter()
            .map(|e| {
                let mut op = Matrix::identity(field, self.dim);
                for (j, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        op = self.actions[j].mul(&op);
                    }
                }
                op
            })
            .collect()
    }

    pub fn element_operator(&self, a: &RingElement) -> Matrix {
        operator_from_basis(&self.basis_operators(), a, self.field(), self.dim)
    }

    pub fn radical_submodule(&self) -> Submodule {
        let f = self.field();
        Submodule {
            basis: radical_of(f, self.dim, &self.actions, &Matrix::identity(f, self.dim)),
        }
    }

    pub fn socle_submodule(&self) -> Submodule {
        Submodule {
            basis: common_kernel(self.field(), self.dim, &self.actions),
        }
    }

    /// `ℓ(m^j M)` for `j = 0..` until zero (inclusive).
    pub fn radical_filtration(&self) -> Vec<usize> {
        let f = self.field();
        let mut cur = Matrix::identity(f, self.dim);
        let mut out = vec![self.dim];
        while cur.cols() > 0 {
            cur = radical_of(f, self.dim, &self.actions, &cur);
            out.push(cur.cols());
        }
        out
    }

    /// `ℓ(Soc^j M)` where `Soc^j M = (0 :_M m^j)`, for `j = 0..` until it fills `M`.
    pub fn socle_filtration(&self) -> Vec<usize> {
        let f = self.field();
        let ops = self.basis_operators();
        let mut out = vec![0];
        let mut j = 1;
        while *out.last().unwrap() < self.dim {
            let ideal = self.algebra.radical_power(j);
            let gens: Vec<Matrix> = ideal
                .basis
                .columns()
                .into_iter()
                .map(|a| operator_from_basis(&ops, &RingElement(a), f, self.dim))
                .collect();
            out.push(common_kernel(f, self.dim, &gens).cols());
            j += 1;
        }
        out
    }

    /// A minimal generating set: the distinguished generators first, then
    /// standard basis vectors, each kept only if independent modulo `mM`.
    pub fn minimal_generators(&self) -> Matrix {
        let f = self.field();
        let mut span = EchelonBasis::new(f, self.dim);
        for c in self.radical_submodule().basis.columns() {
            span.insert(&c);
        }
        let mut chosen = Vec::new();
        let candidates = self
            .generators
            .columns()
            .into_iter()
            .chain((0..self.dim).map(|i| unit_vector(self.dim, i)));
        for v in candidates {
            if span.insert(&v) {
                chosen.push(v);
            }
        }
        Matrix::from_columns(f, self.dim, &chosen)
    }

    /// Columns `b·g` for every generator `g` and basis monomial `b`, ordered by generator.
    pub fn cover_matrix(&self, gens: &Matrix) -> Matrix {
        cover_columns(&self.basis_operators(), gens, self.field(), self.dim)
    }

    /// The Matlis dual: the k-dual space with transposed actions.
    pub fn matlis_dual(&self) -> ModuleRep {
        let actions: Vec<Matrix> = self.actions.iter().map(Matrix::transpose).collect();
        let field = self.field();
        let dual = Self::assemble(
            self.algebra.clone(),
            actions,
            Matrix::zeros(field, self.dim, 0),
        );
        let gens = dual.minimal_generators();
        ModuleRep { generators: gens, ..dual }
    }

    /// `{a ∈ R : a·S = 0}`.
    pub fn annihilator_ideal(&self, sub: &Submodule) -> IdealSubspace {
        let f = self.field();
        let l = self.algebra.length();
        let ops = self.basis_operators();
        let cols: Vec<Vec<u32>> = ops
            .iter()
            .map(|op| {
                let img = op.mul(&sub.basis);
                (0..img.rows())
                    .flat_map(|r| img.row(r).to_vec())
                    .collect::<Vec<u32>>()
            })
            .collect();
        let map = Matrix::from_columns(f, self.dim * sub.basis.cols(), &cols);
        let basis = if map.rows() == 0 {
            Matrix::identity(f, l)
        } else {
            map.kernel_basis()
        };
        self.algebra.ideal_from_basis(basis)
    }

    /// Whether `I·S = 0` for the given ideal.
    pub fn ideal_kills(&self, ideal: &IdealSubspace, sub: &Submodule) -> bool {
        let ops = self.basis_operators();
        let f = self.field();
        ideal.basis.columns().iter().all(|a| {
            let op = operator_from_basis(&ops, &RingElement(a.clone()), f, self.dim);
            op.mul(&sub.basis).is_zero()
        })
    }

    pub fn is_free(&self) -> bool {
        let l = self.algebra.length();
        if self.dim != self.nu * l {
            return false;
        }
        self.cover_matrix(&self.minimal_generators()).rank() == self.nu * l
    }

    pub fn is_injective(&self) -> bool {
        self.matlis_dual().is_free()
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> Result<ModuleRep> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch("direct sum of modules over different algebras".into()));
        }
        let f = self.field();
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| Matrix::block_diagonal(f, &[a, b]))
            .collect();
        let gens = Matrix::block_diagonal(f, &[&self.generators, &other.generators]);
        Ok(Self::assemble(self.algebra.clone(), actions, gens))
    }

    /// The submodule spanned by `basis` (assumed stable) as a module in its own right.
    pub fn submodule_module(&self, sub: &Submodule) -> ModuleRep {
        restrict(&self.algebra, &self.actions, &sub.basis)
    }

    /// `M / S` for a stable subspace.
    pub fn quotient_module(&self, sub: &Submodule) -> ModuleRep {
        let gens = self.generators.columns();
        quotient(&self.algebra, self.dim, &self.actions, &sub.basis, &gens)
    }

    /// Whether the subspace is stable under all actions.
    pub fn is_stable(&self, basis: &Matrix) -> bool {
        let mut span = EchelonBasis::new(self.field(), self.dim);
        for c in basis.columns() {
            span.insert(&c);
        }
        self.actions
            .iter()
            .all(|a| a.mul(basis).columns().iter().all(|c| span.contains(c)))
    }
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Variable actions on `R^rank`, coordinates ordered (generator, basis monomial).
pub(crate) fn free_actions(algebra: &ArtinAlgebra, rank: usize) -> Vec<Matrix> {
    let f = algebra.field();
    algebra
        .var_actions()
        .iter()
        .map(|a| {
            let blocks: Vec<&Matrix> = std::iter::repeat_n(a, rank).collect();
            Matrix::block_diagonal(f, &blocks)
        })
        .collect()
}

/// Columns `op_b · g` ordered generator-major.
pub(crate) fn cover_columns(ops: &[Matrix], gens: &Matrix, field: PrimeField, dim: usize) -> Matrix {
    let l = ops.len();
    let images: Vec<Matrix> = ops.iter().map(|op| op.mul(gens)).collect();
    let mut out = Matrix::zeros(field, dim, gens.cols() * l);
    for (b, img) in images.iter().enumerate() {
        for g in 0..gens.cols() {
            for r in 0..dim {
                out.set(r, g * l + b, img.get(r, g));
            }
        }
    }
    out
}

fn restrict(algebra: &Arc<ArtinAlgebra>, actions: &[Matrix], basis: &Matrix) -> ModuleRep {
    let f = algebra.field();
    let d = basis.cols();
    if d == 0 {
        return ModuleRep::zero(algebra);
    }
    let coords = Coordinates::new(basis);
    let new_actions: Vec<Matrix> = actions
        .iter()
        .map(|a| {
            let img = a.mul(basis);
            let cols: Vec<Vec<u32>> = img.columns().iter().map(|c| coords.of(c)).collect();
            Matrix::from_columns(f, d, &cols)
        })
        .collect();
    let m = ModuleRep::assemble(algebra.clone(), new_actions, Matrix::zeros(f, d, 0));
    let gens = m.minimal_generators();
    ModuleRep { generators: gens, ..m }
}

fn quotient(
    algebra: &Arc<ArtinAlgebra>,
    dim: usize,
    actions: &[Matrix],
    sub: &Matrix,
    gens: &[Vec<u32>],
) -> ModuleRep {
    let f = algebra.field();
    let mut span = EchelonBasis::new(f, dim);
    for c in sub.columns() {
        span.insert(&c);
    }
    let keep: Vec<usize> = (0..dim).filter(|&i| !span.is_pivot(i)).collect();
    let project = |v: &[u32]| -> Vec<u32> {
        let mut w = v.to_vec();
        span.reduce(&mut w);
        keep.iter().map(|&i| w[i]).collect()
    };
    let d = keep.len();
    let new_actions: Vec<Matrix> = actions
        .iter()
        .map(|a| {
            let cols: Vec<Vec<u32>> = keep
                .iter()
                .map(|&i| project(&a.mul_vec(&unit_vector(dim, i))))
                .collect();
            Matrix::from_columns(f, d, &cols)
        })
        .collect();
    let gen_cols: Vec<Vec<u32>> = gens.iter().map(|g| project(g)).collect();
    ModuleRep::assemble(algebra.clone(), new_actions, Matrix::from_columns(f, d, &gen_cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;

    fn ring(vars: &[&str], rels: &[&str], cap: usize) -> Arc<ArtinAlgebra> {
        Arc::new(ArtinAlgebra::build(&AlgebraSpec::new(101, vars, rels, cap)).unwrap())
    }

    fn m2_e2() -> Arc<ArtinAlgebra> {
        ring(&["x", "y"], &["x^2", "x*y", "y^2"], 3)
    }

    #[test]
    fn free_and_residue_field() {
        let r = m2_e2();
        let m = ModuleRep::realize(&r, &ModulePresentation { name: "R".into(), gens: 1, relations: vec![] }).unwrap();
        assert_eq!(m.length(), 3);
        assert_eq!(m.min_gens(), 1);
        let k = ModuleRep::realize(
            &r,
            &ModulePresentation {
                name: "k".into(),
                gens: 1,
                relations: vec![vec![r.variable(0)], vec![r.variable(1)]],
            },
        )
        .unwrap();
        assert_eq!((k.length(), k.min_gens()), (1, 1));
        let f3 = ModuleRep::free(&r, 3);
        assert_eq!((f3.length(), f3.min_gens()), (9, 3));
    }

    #[test]
    fn cyclic_module_killed_by_x() {
        let r = m2_e2();
        let spec = PresentationSpec { gens: 1, relations: vec![vec!["x".into()]] };
        let m = ModuleRep::realize(&r, &spec.resolve("M", &r).unwrap()).unwrap();
        assert_eq!(m.length(), 2);
        assert_eq!(m.min_gens(), 1);
        assert_eq!(m.radical_submodule().length(), 1);
    }

    #[test]
    fn radical_and_socle() {
        let r = ring(&["x"], &["x^3"], 4);
        let m = ModuleRep::free(&r, 1);
        assert_eq!(m.radical_submodule().length(), 2);
        assert_eq!(m.socle_submodule().length(), 1);
        let k = ModuleRep::residue_field(&r);
        let k3 = k.direct_sum(&k).unwrap().direct_sum(&k).unwrap();
        assert_eq!(k3.radical_submodule().length(), 0);
        assert_eq!(k3.socle_submodule().length(), 3);
    }

    #[test]
    fn matlis_dual_numerics() {
        let r = m2_e2();
        let e = ModuleRep::injective_hull(&r);
        assert_eq!(e.length(), 3);
        assert_eq!(e.min_gens(), 2);
        assert!(e.is_injective());
        assert!(!e.is_free());
        let k = ModuleRep::residue_field(&r);
        let kd = k.matlis_dual();
        assert_eq!((kd.length(), kd.min_gens()), (1, 1));
    }

    #[test]
    fn annihilators() {
        let r = m2_e2();
        let m = ModuleRep::free(&r, 1);
        let zero = Submodule { basis: Matrix::zeros(r.field(), 3, 0) };
        assert_eq!(m.annihilator_ideal(&zero).colength, 0);
        let full = Submodule { basis: Matrix::identity(r.field(), 3) };
        assert_eq!(m.annihilator_ideal(&full).length(), 0);
        // ann(mR) = Soc R = m over a square-zero ring
        let ann = m.annihilator_ideal(&m.radical_submodule());
        assert_eq!(ann.length(), 2);
        assert!(m.ideal_kills(&ann, &m.radical_submodule()));
    }

    #[test]
    fn freeness() {
        let r = ring(&["x"], &["x^2"], 3);
        assert!(ModuleRep::free(&r, 2).is_free());
        let k = ModuleRep::residue_field(&r);
        assert!(!k.is_free());
        let s = ModuleRep::free(&r, 1).direct_sum(&k).unwrap();
        assert_eq!((s.length(), s.min_gens()), (3, 2));
        let field = ring(&["x"], &["x"], 2);
        let kf = ModuleRep::residue_field(&field);
        assert!(kf.is_free() && kf.is_injective());
    }

    #[test]
    fn filtrations_of_bidual_agree() {
        let r = ring(&["x", "y"], &["x^2", "y^2"], 3);
        let spec = PresentationSpec { gens: 2, relations: vec![vec!["x".into(), "y".into()]] };
        let m = ModuleRep::realize(&r, &spec.resolve("M", &r).unwrap()).unwrap();
        let bidual = m.matlis_dual().matlis_dual();
        assert_eq!(m.radical_filtration(), bidual.radical_filtration());
        assert_eq!(m.socle_filtration(), bidual.socle_filtration());
    }
}
