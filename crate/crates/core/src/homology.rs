//! Truncated Ext and Tor tables.
//!
//! Tables are assembled from the compressed resolution: every degree is a
//! sum of a contribution of the explicit part and shifted copies of the
//! residue field's table, weighted by the split counts. Both length and
//! minimal number of generators are additive, so the sum is exact.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{operator_from_basis, RingElement};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::ModuleRep;
use crate::resolution::{FreeResolution, Resolver, RingMatrix};

/// Cap on the dimension of any Hom or tensor complex term.
pub const HOMOLOGY_BUDGET: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HomologyKind {
    Ext,
    Tor,
}

impl HomologyKind {
    pub fn label(self) -> &'static str {
        match self {
            HomologyKind::Ext => "ext",
            HomologyKind::Tor => "tor",
        }
    }
}

/// Lengths and generator counts of `Ext^i(M,N)` or `Tor_i(M,N)` for `i = 0..=steps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub kind: HomologyKind,
    pub pair: [String; 2],
    pub requested_steps: usize,
    pub steps: usize,
    pub lengths: Vec<u64>,
    pub gens: Vec<u64>,
}

impl HomologyTable {
    pub fn truncated(&self) -> bool {
        self.steps < self.requested_steps
    }

    pub fn with_pair(mut self, m: &str, n: &str) -> Self {
        self.pair = [m.to_string(), n.to_string()];
        self
    }

    pub fn to_csv(&self) -> String {
        let k = self.kind.label();
        let mut out = format!("i,{k}_length,{k}_gens\n");
        for (i, (l, g)) in self.lengths.iter().zip(&self.gens).enumerate() {
            let _ = writeln!(out, "{i},{l},{g}");
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Piece {
    length: u64,
    gens: u64,
}

/// Ring elements acting on a fixed coefficient module.
struct Coefficients<'a> {
    module: &'a ModuleRep,
    ops: Vec<Matrix>,
    cache: HashMap<Vec<u32>, Matrix>,
}

impl<'a> Coefficients<'a> {
    fn new(module: &'a ModuleRep) -> Self {
        Coefficients {
            module,
            ops: module.basis_operators(),
            cache: HashMap::new(),
        }
    }

    fn dim(&self) -> usize {
        self.module.length()
    }

    fn op(&mut self, a: &RingElement) -> Option<&Matrix> {
        if a.0.iter().all(|&c| c == 0) {
            return None;
        }
        let (ops, module) = (&self.ops, self.module);
        Some(
            self.cache
                .entry(a.0.clone())
                .or_insert_with(|| operator_from_basis(ops, a, module.field(), module.length())),
        )
    }

    /// `Hom(D, N)`: `N^rows -> N^cols`, block `(t, s)` acting by `d_{s,t}`.
    fn hom_map(&mut self, d: &RingMatrix) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(self.module.field(), d.cols * n, d.rows * n);
        for s in 0..d.rows {
            for t in 0..d.cols {
                if let Some(op) = self.op(d.get(s, t)) {
                    place(&mut out, op, t * n, s * n);
                }
            }
        }
        out
    }

    /// `D ⊗ N`: `N^cols -> N^rows`, block `(s, t)` acting by `d_{s,t}`.
    fn tensor_map(&mut self, d: &RingMatrix) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(self.module.field(), d.rows * n, d.cols * n);
        for s in 0..d.rows {
            for t in 0..d.cols {
                if let Some(op) = self.op(d.get(s, t)) {
                    place(&mut out, op, s * n, t * n);
                }
            }
        }
        out
    }

    /// Length and `ν` of `ker(outgoing) / im(incoming)` inside `N^blocks`.
    fn subquotient(&self, blocks: usize, outgoing: Option<&Matrix>, incoming: Option<&Matrix>) -> Piece {
        let n = self.dim();
        let f = self.module.field();
        let total = blocks * n;
        if total == 0 {
            return Piece::default();
        }
        let kernel = match outgoing {
            Some(m) if m.rows() > 0 => m.kernel_basis(),
            _ => Matrix::identity(f, total),
        };
        let image = incoming.filter(|m| m.cols() > 0).map(|m| m.column_basis());
        let im_dim = image.as_ref().map_or(0, Matrix::cols);
        let mut span: Vec<Vec<u32>> = image.as_ref().map_or_else(Vec::new, Matrix::columns);
        for col in kernel.columns() {
            for a in self.module.var_actions() {
                let mut out = vec![0; total];
                let mut nonzero = false;
                for blk in 0..blocks {
                    let piece = &col[blk * n..(blk + 1) * n];
                    if piece.iter().any(|&c| c != 0) {
                        out[blk * n..(blk + 1) * n].copy_from_slice(&a.mul_vec(piece));
                        nonzero = true;
                    }
                }
                if nonzero && out.iter().any(|&c| c != 0) {
                    span.push(out);
                }
            }
        }
        let radical_plus_image = if span.is_empty() {
            0
        } else {
            Matrix::from_columns(f, total, &span).rank()
        };
        let k = kernel.cols();
        Piece {
            length: (k - im_dim) as u64,
            gens: (k - radical_plus_image) as u64,
        }
    }
}

fn place(out: &mut Matrix, block: &Matrix, r0: usize, c0: usize) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let v = block.get(r, c);
            if v != 0 {
                out.set(r0 + r, c0 + c, v);
            }
        }
    }
}

/// Contribution of the explicit part in degree `i`, or `None` past the budget.
fn explicit_piece(res: &FreeResolution, n: &ModuleRep, kind: HomologyKind, i: usize) -> Option<Piece> {
    let ln = n.length();
    let mut coef = Coefficients::new(n);
    if i == 0 {
        let q0 = res.explicit_rank(0);
        let d1 = res.differential(1);
        if (q0.max(d1.cols)) * ln > HOMOLOGY_BUDGET {
            return None;
        }
        return Some(match kind {
            HomologyKind::Ext => {
                let out = coef.hom_map(&d1);
                coef.subquotient(q0, Some(&out), None)
            }
            HomologyKind::Tor => {
                let inc = coef.tensor_map(&d1);
                coef.subquotient(q0, None, Some(&inc))
            }
        });
    }
    let d = res.differential(i);
    let e = res.kernel_differential(i);
    if d.rows.max(d.cols).max(e.cols) * ln > HOMOLOGY_BUDGET {
        return None;
    }
    let mid = d.cols;
    Some(match kind {
        HomologyKind::Ext => {
            let inc = coef.hom_map(&d);
            let out = coef.hom_map(&e);
            coef.subquotient(mid, Some(&out), Some(&inc))
        }
        HomologyKind::Tor => {
            let out = coef.tensor_map(&d);
            let inc = coef.tensor_map(&e);
            coef.subquotient(mid, Some(&out), Some(&inc))
        }
    })
}

/// Table of a resolved module against `n`, up to `steps` (or less if truncated).
pub fn table_from_resolution(
    res: &FreeResolution,
    n: &ModuleRep,
    kind: HomologyKind,
    steps: usize,
) -> Result<HomologyTable> {
    if !res.module().same_algebra(n) {
        return Err(Error::AlgebraMismatch("modules live over different algebras".into()));
    }
    let reach = steps.min(res.steps());
    let residue = match res.residue() {
        Some(k) => Some(table_from_resolution(k, n, kind, reach)?),
        None => None,
    };
    let pieces: Vec<Option<Piece>> = (0..=reach)
        .into_par_iter()
        .map(|i| explicit_piece(res, n, kind, i))
        .collect();

    let mut lengths: Vec<u64> = Vec::new();
    let mut gens: Vec<u64> = Vec::new();
    'degrees: for (i, piece) in pieces.into_iter().enumerate() {
        let Some(p) = piece else { break };
        let mut acc = (Some(p.length), Some(p.gens));
        let mut weights = vec![(res.split_count(0), i)];
        weights.extend((1..i).map(|j| (res.split_count(j), i - j)));
        for (c, deg) in weights {
            if c == 0 {
                continue;
            }
            // without a separate residue table this is the residue field's own
            // resolution, whose split summands recurse into the table itself
            let (kl, kg) = match &residue {
                Some(t) if deg <= t.steps => (t.lengths[deg], t.gens[deg]),
                Some(_) => break 'degrees,
                None => (lengths[deg], gens[deg]),
            };
            let c = c as u64;
            acc.0 = acc.0.and_then(|a| c.checked_mul(kl).and_then(|t| a.checked_add(t)));
            acc.1 = acc.1.and_then(|a| c.checked_mul(kg).and_then(|t| a.checked_add(t)));
        }
        match acc {
            (Some(l), Some(g)) => {
                lengths.push(l);
                gens.push(g);
            }
            _ => break,
        }
    }
    if lengths.is_empty() {
        return Err(Error::Internal("homology budget exhausted in degree 0".into()));
    }
    Ok(HomologyTable {
        kind,
        pair: [String::new(), String::new()],
        requested_steps: steps,
        steps: lengths.len() - 1,
        lengths,
        gens,
    })
}

pub fn ext_table(m: &ModuleRep, n: &ModuleRep, steps: usize) -> Result<HomologyTable> {
    let res = Resolver::new(m.algebra().clone()).resolve(m, steps)?;
    table_from_resolution(&res, n, HomologyKind::Ext, steps)
}

pub fn tor_table(m: &ModuleRep, n: &ModuleRep, steps: usize) -> Result<HomologyTable> {
    let res = Resolver::new(m.algebra().clone()).resolve(m, steps)?;
    table_from_resolution(&res, n, HomologyKind::Tor, steps)
}

/// Bass numbers `μ^i(M) = ℓ(Ext^i(k, M))`.
pub fn bass_numbers(m: &ModuleRep, steps: usize) -> Result<Vec<u64>> {
    let k = ModuleRep::residue_field(m.algebra());
    Ok(ext_table(&k, m, steps)?.lengths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraSpec, ArtinAlgebra};
    use crate::module::PresentationSpec;
    use std::sync::Arc;

    fn ring(vars: &[&str], rels: &[&str], cap: usize) -> Arc<ArtinAlgebra> {
        Arc::new(ArtinAlgebra::build(&AlgebraSpec::new(101, vars, rels, cap)).unwrap())
    }

    fn cyclic(r: &Arc<ArtinAlgebra>, rels: &[&str]) -> ModuleRep {
        let spec = PresentationSpec {
            gens: 1,
            relations: rels.iter().map(|s| vec![s.to_string()]).collect(),
        };
        ModuleRep::realize(r, &spec.resolve("M", r).unwrap()).unwrap()
    }

    fn rings() -> Vec<Arc<ArtinAlgebra>> {
        vec![
            ring(&["x", "y"], &["x^2", "x*y", "y^2"], 3),
            ring(&["x", "y"], &["x^2", "y^2"], 3),
            ring(&["x", "y"], &["x^2", "x*y", "y^3"], 4),
            ring(&["x"], &["x^3"], 4),
        ]
    }

    fn modules(r: &Arc<ArtinAlgebra>) -> Vec<ModuleRep> {
        let second = if r.nvars() > 1 { "y" } else { "x^2" };
        vec![
            ModuleRep::residue_field(r),
            cyclic(r, &["x"]),
            cyclic(r, &[second]),
            ModuleRep::injective_hull(r),
            ModuleRep::free(r, 1),
            ModuleRep::residue_field(r).direct_sum(&cyclic(r, &["x"])).unwrap(),
        ]
    }

    // oracle: the same complex without any splitting
    fn unsplit(m: &ModuleRep, n: &ModuleRep, kind: HomologyKind, steps: usize) -> Vec<u64> {
        let res = Resolver::new(m.algebra().clone()).resolve_unsplit(m, steps).unwrap();
        let t = table_from_resolution(&res, n, kind, steps).unwrap();
        assert_eq!(t.steps, steps);
        t.lengths
    }

    #[test]
    fn ext_and_tor_against_k_give_betti_numbers() {
        for r in rings() {
            let k = ModuleRep::residue_field(&r);
            for m in modules(&r) {
                let res = Resolver::new(r.clone()).resolve(&m, 8).unwrap();
                let ext = table_from_resolution(&res, &k, HomologyKind::Ext, 8).unwrap();
                let tor = table_from_resolution(&res, &k, HomologyKind::Tor, 8).unwrap();
                assert_eq!(ext.lengths, res.betti(), "{r}");
                assert_eq!(tor.lengths, res.betti(), "{r}");
                assert_eq!(ext.gens, ext.lengths);
            }
        }
    }

    #[test]
    fn compressed_tables_match_unsplit_complexes() {
        for r in rings() {
            let ns = modules(&r);
            for m in &ns {
                for n in &ns {
                    for kind in [HomologyKind::Ext, HomologyKind::Tor] {
                        let res = Resolver::new(r.clone()).resolve(m, 4).unwrap();
                        let t = table_from_resolution(&res, n, kind, 4).unwrap();
                        assert_eq!(t.lengths, unsplit(m, n, kind, 4), "{kind:?} over {r}");
                        assert!(t.lengths.iter().zip(&t.gens).all(|(l, g)| l >= g));
                    }
                }
            }
        }
    }

    #[test]
    fn ext_k_k_over_x_cubed() {
        let r = ring(&["x"], &["x^3"], 4);
        let k = ModuleRep::residue_field(&r);
        let t = ext_table(&k, &k, 12).unwrap();
        assert_eq!(t.lengths, vec![1; 13]);
    }

    #[test]
    fn free_source_has_only_hom() {
        for r in rings() {
            for n in modules(&r) {
                let t = ext_table(&ModuleRep::free(&r, 1), &n, 5).unwrap();
                let mut expected = vec![0; 6];
                expected[0] = n.length() as u64;
                assert_eq!(t.lengths, expected);
                let t = tor_table(&ModuleRep::free(&r, 1), &n, 5).unwrap();
                assert_eq!(t.lengths, expected);
            }
        }
    }

    #[test]
    fn tor_against_injective_hull_is_dual_to_ext_against_ring() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"], 3);
        let k = ModuleRep::residue_field(&r);
        let e = ModuleRep::injective_hull(&r);
        let tor = tor_table(&k, &e, 10).unwrap();
        let ext = ext_table(&k, &ModuleRep::free(&r, 1), 10).unwrap();
        assert_eq!(tor.lengths, ext.lengths);
        // Ext^0(k,R) = Soc R; in degree i ≥ 1 the Hom complex gives 2·b_i - b_{i-1}
        let expected: Vec<u64> = (0..=10).map(|i| if i == 0 { 2 } else { 3 << (i - 1) }).collect();
        assert_eq!(ext.lengths, expected);
    }

    #[test]
    fn bass_numbers_of_self_injective_and_residue() {
        let r = ring(&["x"], &["x^2"], 3);
        assert_eq!(bass_numbers(&ModuleRep::free(&r, 1), 6).unwrap(), vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            bass_numbers(&ModuleRep::free(&r, 1), 6).unwrap(),
            unsplit(&ModuleRep::residue_field(&r), &ModuleRep::free(&r, 1), HomologyKind::Ext, 6)
        );
        for r in rings() {
            let k = ModuleRep::residue_field(&r);
            let e = ModuleRep::injective_hull(&r);
            let b = bass_numbers(&e, 6).unwrap();
            assert_eq!(b, vec![1, 0, 0, 0, 0, 0, 0]);
            let res = Resolver::new(r.clone()).resolve(&k, 6).unwrap();
            assert_eq!(bass_numbers(&k, 6).unwrap(), res.betti());
        }
    }

    #[test]
    fn csv_layout() {
        let t = HomologyTable {
            kind: HomologyKind::Ext,
            pair: ["M".into(), "N".into()],
            requested_steps: 1,
            steps: 1,
            lengths: vec![3, 2],
            gens: vec![1, 2],
        };
        assert_eq!(t.to_csv(), "i,ext_length,ext_gens\n0,3,1\n1,2,2\n");
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = ring(&["x"], &["x^2"], 3);
        let b = ring(&["x"], &["x^3"], 4);
        assert!(matches!(
            ext_table(&ModuleRep::residue_field(&a), &ModuleRep::residue_field(&b), 2),
            Err(Error::AlgebraMismatch(_))
        ));
    }
}
