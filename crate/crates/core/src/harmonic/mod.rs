//! Harmonic spaces of the invariant complex and the invariants built from them.

mod lefschetz;
mod obstructions;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::GeometryError;
use crate::exact::{kernel_intersection, GaussScalar, Matrix};
use crate::forms::{real, Basis, Bidegree, BlockOperator, Component, Form, Geometry, GMatrix};
use crate::model::LieModel;

pub use lefschetz::{
    hard_lefschetz, hodge_index, hodge_riemann_check, intersection_matrix, primitive_decomposition, CohomologyLefschetz,
    HodgeIndex, HodgeRiemann, LefschetzMap, LefschetzReport, PrimitiveDecomposition, PrimitiveSummand,
};
pub use obstructions::{
    ak_nonexistence_report, holomorphic_forms, mu_bar_cohomology, obstruction_report, AkNonexistenceReport, AkVerdict,
    HolomorphicForms, ObstructionReport,
};

/// Which operators must annihilate a form for it to count as harmonic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Harmonicity {
    /// All four components of `d` and their adjoints.
    D,
    MuBar,
    DelBar,
    Del,
    Mu,
    /// `ker(Δ_∂̄ + Δ_μ)`.
    DelBarMu,
    /// `ker(Δ_∂ + Δ_μ̄)`.
    DelMuBar,
}

/// Matrices of `op` leaving `A^{pq}`, stacked over their targets.
pub(crate) fn source_blocks(op: &BlockOperator, pq: Bidegree) -> Vec<GMatrix> {
    op.blocks().filter(|((s, _), _)| *s == pq).map(|(_, b)| b.clone()).collect()
}

/// Common kernel on `A^{pq}` of several operators, as coefficient vectors.
pub(crate) fn block_kernel(
    basis: &Basis,
    ops: &[&BlockOperator],
    pq: Bidegree,
) -> Result<Vec<Vec<GaussScalar>>, GeometryError> {
    let mut blocks: Vec<GMatrix> = ops.iter().flat_map(|op| source_blocks(op, pq)).collect();
    blocks.push(Matrix::zeros(0, basis.dim(pq)));
    let refs: Vec<&GMatrix> = blocks.iter().collect();
    Ok(kernel_intersection(&refs)?)
}

pub(crate) fn check_bidegree(geo: &Geometry, (p, q): Bidegree) -> Result<(), GeometryError> {
    let m = geo.m();
    if p > m || q > m {
        return Err(GeometryError::BidegreeOutOfRange { p, q, m });
    }
    Ok(())
}

fn eightfold(geo: &Geometry) -> Vec<&BlockOperator> {
    Component::ALL.iter().flat_map(|&c| [geo.component(c), geo.component_adjoint(c)]).collect()
}

pub(crate) fn laplacian_sums(geo: &Geometry) -> (BlockOperator, BlockOperator) {
    let first = geo.component_laplacian(Component::DelBar).add(&geo.component_laplacian(Component::Mu));
    let second = geo.component_laplacian(Component::Del).add(&geo.component_laplacian(Component::MuBar));
    (first, second)
}

/// Coefficient vectors on `A^{pq}` of a basis of the harmonic space.
pub(crate) fn harmonic_vectors(
    geo: &Geometry,
    which: Harmonicity,
    pq: Bidegree,
) -> Result<Vec<Vec<GaussScalar>>, GeometryError> {
    check_bidegree(geo, pq)?;
    let basis = geo.basis();
    let single = |c: Component| block_kernel(basis, &[geo.component(c), geo.component_adjoint(c)], pq);
    match which {
        Harmonicity::D => block_kernel(basis, &eightfold(geo), pq),
        Harmonicity::MuBar => single(Component::MuBar),
        Harmonicity::DelBar => single(Component::DelBar),
        Harmonicity::Del => single(Component::Del),
        Harmonicity::Mu => single(Component::Mu),
        Harmonicity::DelBarMu => block_kernel(basis, &[&laplacian_sums(geo).0], pq),
        Harmonicity::DelMuBar => block_kernel(basis, &[&laplacian_sums(geo).1], pq),
    }
}

/// Basis of the `which`-harmonic invariant forms of bidegree `pq`.
pub fn harmonic_basis(geo: &Geometry, which: Harmonicity, pq: Bidegree) -> Result<Vec<Form>, GeometryError> {
    let basis = geo.basis();
    Ok(harmonic_vectors(geo, which, pq)?.iter().map(|v| Form::from_block(basis, pq, v)).collect())
}

/// Coordinates of `v` in the span of `columns`, if it lies there.
pub(crate) fn coordinates(
    rows: usize,
    columns: &[Vec<GaussScalar>],
    v: &[GaussScalar],
) -> Result<Option<Vec<GaussScalar>>, GeometryError> {
    if columns.is_empty() {
        return Ok(v.iter().all(num_traits::Zero::is_zero).then(Vec::new));
    }
    Ok(Matrix::from_columns(rows, columns).solve(v)?)
}

/// Checks on the diamond that only make sense for almost Kähler models.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiamondFlags {
    /// `ℓ^{p,q} = ℓ^{q,p} = ℓ^{m-p,m-q} = ℓ^{m-q,m-p}`.
    pub duality_ok: bool,
    /// `⋆` maps each harmonic basis of `A^{p,q}` into the harmonic space of `A^{m-q,m-p}`.
    pub star_ok: bool,
    /// `Σ_{p+q=k} ℓ^{p,q} ≤ b^k`.
    pub bounds_ok: bool,
    /// `ℓ^{k,k} ≥ 1` for `k ≤ m`.
    pub diagonal_ok: bool,
    /// Every power `ω^k` is `d`-harmonic.
    pub omega_powers_harmonic: bool,
    /// `ℓ^{p,q} ≠ 0` with `p ≠ q` implies `b^{p+q} ≥ 2` for even and `≥ 3` for
    /// odd `p + q`. This parity assignment fails on the 2-torus.
    pub off_diagonal_betti_as_stated: bool,
    /// `ℓ^{p,q} ≠ 0` with `p ≠ q` implies `b^{p+q} ≥ 3` for even `p + q`
    /// (`ℓ^{p,q} + ℓ^{q,p} + ℓ^{k,k}`) and `≥ 2` for odd.
    pub off_diagonal_betti_ok: bool,
    /// Hard Lefschetz isomorphisms on harmonics and monotonicity along diagonals.
    pub lefschetz_ok: bool,
}

/// The numbers `ℓ^{p,q}` with the Betti numbers of the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub m: usize,
    /// `ell[p][q] = ℓ^{p,q}`.
    pub ell: Vec<Vec<usize>>,
    pub betti: Vec<usize>,
    pub almost_kahler: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<DiamondFlags>,
}

impl Diamond {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.ell[p][q]
    }

    /// Entries of total degree `k`, `p` descending.
    pub fn row(&self, k: usize) -> Vec<usize> {
        let m = self.m;
        (k.saturating_sub(m)..=k.min(m)).rev().map(|p| self.ell[p][k - p]).collect()
    }

    fn duality_ok(&self) -> bool {
        let m = self.m;
        (0..=m).all(|p| {
            (0..=m).all(|q| {
                let v = self.ell[p][q];
                v == self.ell[q][p] && v == self.ell[m - p][m - q] && v == self.ell[m - q][m - p]
            })
        })
    }

    fn bounds_ok(&self) -> bool {
        (0..=2 * self.m).all(|k| self.row(k).iter().sum::<usize>() <= self.betti[k])
    }

    fn diagonal_ok(&self) -> bool {
        (0..=self.m).all(|k| self.ell[k][k] >= 1)
    }

    /// Whether `b^{p+q} ≥ need(p + q even)` wherever an off-diagonal `ℓ^{p,q}` is nonzero.
    fn off_diagonal_betti(&self, need: impl Fn(bool) -> usize) -> bool {
        let m = self.m;
        (0..=m).all(|p| (0..=m).all(|q| p == q || self.ell[p][q] == 0 || self.betti[p + q] >= need((p + q) % 2 == 0)))
    }
}

pub fn betti(model: &LieModel) -> Vec<usize> {
    real::betti(model)
}

pub fn ell_diamond(geo: &Geometry) -> Result<Diamond, GeometryError> {
    let m = geo.m();
    let bidegrees = geo.basis().bidegrees();
    // ℓ^{p,q} is dim ker(Δ_∂̄ + Δ_μ); on almost Kähler models this equals the
    // cheaper eightfold kernel
    let first = (!geo.is_almost_kahler()).then(|| laplacian_sums(geo).0);
    let dims: Vec<(Bidegree, usize)> = bidegrees
        .par_iter()
        .map(|&pq| {
            let n = match &first {
                Some(lap) => block_kernel(geo.basis(), &[lap], pq)?.len(),
                None => harmonic_vectors(geo, Harmonicity::D, pq)?.len(),
            };
            Ok((pq, n))
        })
        .collect::<Result<_, GeometryError>>()?;
    let mut ell = vec![vec![0; m + 1]; m + 1];
    for ((p, q), n) in dims {
        ell[p][q] = n;
    }
    let mut diamond =
        Diamond { m, ell, betti: betti(geo.model()), almost_kahler: geo.is_almost_kahler(), flags: None };
    if diamond.almost_kahler {
        let lefschetz = hard_lefschetz(geo)?;
        diamond.flags = Some(DiamondFlags {
            duality_ok: diamond.duality_ok(),
            star_ok: star_preserves_harmonics(geo)?,
            bounds_ok: diamond.bounds_ok(),
            diagonal_ok: diamond.diagonal_ok(),
            omega_powers_harmonic: omega_powers_harmonic(geo),
            off_diagonal_betti_as_stated: diamond.off_diagonal_betti(|even| if even { 2 } else { 3 }),
            off_diagonal_betti_ok: diamond.off_diagonal_betti(|even| if even { 3 } else { 2 }),
            lefschetz_ok: lefschetz.maps.iter().all(|f| f.iso) && lefschetz.monotone,
        });
    }
    Ok(diamond)
}

/// `⋆` sends `H_d^{p,q}` into `H_d^{m-q,m-p}`.
pub fn star_preserves_harmonics(geo: &Geometry) -> Result<bool, GeometryError> {
    let m = geo.m();
    let basis = geo.basis();
    for (p, q) in basis.bidegrees() {
        let target = (m - q, m - p);
        let tgt = harmonic_vectors(geo, Harmonicity::D, target)?;
        for v in harmonic_vectors(geo, Harmonicity::D, (p, q))? {
            let image = geo.apply(geo.star(), &Form::from_block(basis, (p, q), &v));
            if !image.sub(&image.component(target)).is_zero() {
                return Ok(false);
            }
            if coordinates(basis.dim(target), &tgt, &image.block_vector(basis, target))?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `ω^k` is killed by all components of `d` and their adjoints for `0 ≤ k ≤ m`.
pub fn omega_powers_harmonic(geo: &Geometry) -> bool {
    let ops = eightfold(geo);
    (0..=geo.m()).all(|k| {
        let w = geo.omega().power(k);
        ops.iter().all(|op| geo.apply(op, &w).is_zero())
    })
}

/// The three descriptions of `H_d^{p,q}` compared on one bidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceCheck {
    pub bidegree: Bidegree,
    pub eightfold: usize,
    pub del_bar_mu: usize,
    pub del_mu_bar: usize,
    /// Each basis of one space is annihilated by the operators defining the others.
    pub containments_ok: bool,
}

impl EquivalenceCheck {
    pub fn holds(&self) -> bool {
        self.containments_ok && self.eightfold == self.del_bar_mu && self.eightfold == self.del_mu_bar
    }
}

/// Compares the eightfold kernel with `ker(Δ_∂̄ + Δ_μ)` and `ker(Δ_∂ + Δ_μ̄)` on every bidegree.
pub fn harmonic_equivalence(geo: &Geometry) -> Result<Vec<EquivalenceCheck>, GeometryError> {
    let basis = geo.basis();
    let (first, second) = laplacian_sums(geo);
    let ops = eightfold(geo);
    basis
        .bidegrees()
        .par_iter()
        .map(|&pq| {
            let e = block_kernel(basis, &ops, pq)?;
            let a = block_kernel(basis, &[&first], pq)?;
            let b = block_kernel(basis, &[&second], pq)?;
            let kills = |op: &BlockOperator, vs: &[Vec<GaussScalar>]| {
                vs.iter().all(|v| geo.apply(op, &Form::from_block(basis, pq, v)).is_zero())
            };
            let containments_ok = kills(&first, &e)
                && kills(&second, &e)
                && ops.iter().all(|op| kills(op, &a) && kills(op, &b));
            Ok(EquivalenceCheck {
                bidegree: pq,
                eightfold: e.len(),
                del_bar_mu: a.len(),
                del_mu_bar: b.len(),
                containments_ok,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::catalog;

    fn geo(name: &str) -> Geometry {
        Geometry::new(&catalog(name).unwrap()).unwrap()
    }

    fn rows(d: &Diamond) -> Vec<Vec<usize>> {
        (0..=2 * d.m).map(|k| d.row(k)).collect()
    }

    #[test]
    fn torus_harmonics_are_everything() {
        let g = geo("torus4");
        for pq in g.basis().bidegrees() {
            assert_eq!(harmonic_basis(&g, Harmonicity::D, pq).unwrap().len(), g.basis().dim(pq));
        }
    }

    #[test]
    fn kodaira_thurston_diamond() {
        let g = geo("kodaira_thurston");
        assert_eq!(harmonic_basis(&g, Harmonicity::D, (1, 1)).unwrap().len(), 3);
        let d = ell_diamond(&g).unwrap();
        assert_eq!(rows(&d), vec![vec![1], vec![1, 1], vec![0, 3, 0], vec![1, 1], vec![1]]);
        assert_eq!(d.betti, vec![1, 3, 4, 3, 1]);
        let f = d.flags.unwrap();
        assert!(f.duality_ok && f.star_ok && f.bounds_ok && f.diagonal_ok);
        assert!(f.omega_powers_harmonic && f.off_diagonal_betti_ok && f.lefschetz_ok);
    }

    #[test]
    fn torus_and_filiform_diamonds() {
        let d = ell_diamond(&geo("torus4")).unwrap();
        assert_eq!(rows(&d), vec![vec![1], vec![2, 2], vec![1, 4, 1], vec![2, 2], vec![1]]);
        let d = ell_diamond(&geo("filiform4_Jprime")).unwrap();
        assert_eq!(rows(&d), vec![vec![1], vec![0, 0], vec![0, 2, 0], vec![0, 0], vec![1]]);
        assert_eq!(d.betti, vec![1, 2, 2, 2, 1]);
        assert!(d.flags.is_some());
    }

    #[test]
    fn non_kahler_diamond_has_no_flags() {
        let g = geo("h5_J");
        let d = ell_diamond(&g).unwrap();
        assert!(d.flags.is_none());
        assert_eq!(d.betti[1], 4);
        // every holomorphic 1-form is Δ_∂̄ + Δ_μ harmonic
        assert_eq!(d.get(1, 0), 3);
        assert_eq!(harmonic_basis(&g, Harmonicity::DelBarMu, (1, 0)).unwrap().len(), 3);
    }

    #[test]
    fn off_diagonal_betti_parity() {
        let f = ell_diamond(&geo("torus2")).unwrap().flags.unwrap();
        // ℓ^{1,0} = 1 while b¹ = 2
        assert!(!f.off_diagonal_betti_as_stated);
        assert!(f.off_diagonal_betti_ok);
        let f = ell_diamond(&geo("torus4")).unwrap().flags.unwrap();
        assert!(f.off_diagonal_betti_as_stated && f.off_diagonal_betti_ok);
    }

    #[test]
    fn out_of_range_bidegree() {
        let g = geo("torus2");
        assert!(matches!(
            harmonic_basis(&g, Harmonicity::D, (2, 0)),
            Err(GeometryError::BidegreeOutOfRange { p: 2, q: 0, m: 1 })
        ));
    }

    #[test]
    fn laplacian_kernels_agree_with_eightfold_kernel() {
        for name in ["torus2", "torus4", "kodaira_thurston", "filiform4_Jprime"] {
            for c in harmonic_equivalence(&geo(name)).unwrap() {
                assert!(c.holds(), "{name} {c:?}");
            }
        }
    }

    #[test]
    fn betti_poincare_duality() {
        for name in crate::model::catalog_names() {
            let b = betti(&catalog(name).unwrap());
            let n = b.len() - 1;
            assert!((0..=n).all(|k| b[k] == b[n - k]), "{name} {b:?}");
        }
    }
}
