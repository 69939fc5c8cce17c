use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::GeometryError;
use crate::exact::{hermitian_signature, symmetric_signature, GaussScalar, Inertia, Matrix, Rational};
use crate::exterior::Mask;
use crate::forms::real::{self, RealForm};
use crate::forms::{Bidegree, Form, Geometry};
use crate::model::LieModel;

use super::{check_bidegree, coordinates, harmonic_vectors, Harmonicity};

/// `L^{m-k}: H_d^{p,k-p} → H_d^{p+m-k,m-p}` restricted to harmonic bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzMap {
    pub k: usize,
    pub source: Bidegree,
    pub target: Bidegree,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    /// Every image is again `d`-harmonic.
    pub lands_in_harmonics: bool,
    pub iso: bool,
}

/// `L^{m-k}: H^k → H^{2m-k}` on de Rham cohomology of the invariant complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyLefschetz {
    pub k: usize,
    pub betti: usize,
    pub rank: usize,
    pub iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    pub maps: Vec<LefschetzMap>,
    /// `ℓ^{p,q} ≤ ℓ^{p+1,q+1}` whenever `p + q + 2 ≤ m`.
    pub monotone: bool,
    pub cohomology: Vec<CohomologyLefschetz>,
}

fn require_almost_kahler(geo: &Geometry, what: &'static str) -> Result<(), GeometryError> {
    if geo.is_almost_kahler() {
        Ok(())
    } else {
        Err(GeometryError::NotAlmostKahler(what))
    }
}

pub fn hard_lefschetz(geo: &Geometry) -> Result<LefschetzReport, GeometryError> {
    require_almost_kahler(geo, "hard Lefschetz")?;
    let m = geo.m();
    let basis = geo.basis();
    let mut maps = Vec::new();
    let mut ell = vec![vec![0; m + 1]; m + 1];
    for k in 0..=m {
        let power = geo.omega().power(m - k);
        for p in 0..=k {
            let source = (p, k - p);
            let target = (p + m - k, m - p);
            let src = harmonic_vectors(geo, Harmonicity::D, source)?;
            let tgt = harmonic_vectors(geo, Harmonicity::D, target)?;
            ell[source.0][source.1] = src.len();
            ell[target.0][target.1] = tgt.len();
            let mut coords = Vec::new();
            let mut lands = true;
            for v in &src {
                let image = Form::from_block(basis, source, v).wedge(&power);
                match coordinates(basis.dim(target), &tgt, &image.block_vector(basis, target))? {
                    Some(c) => coords.push(c),
                    None => lands = false,
                }
            }
            let rank = if lands && !coords.is_empty() && !tgt.is_empty() {
                Matrix::from_columns(tgt.len(), &coords).rank()
            } else {
                0
            };
            let iso = lands && rank == src.len() && rank == tgt.len();
            maps.push(LefschetzMap {
                k,
                source,
                target,
                source_dim: src.len(),
                target_dim: tgt.len(),
                rank,
                lands_in_harmonics: lands,
                iso,
            });
        }
    }
    let monotone = (0..=m).all(|p| (0..=m).all(|q| p + q + 2 > m || ell[p][q] <= ell[p + 1][q + 1]));
    let cohomology = (0..=m).map(|k| cohomology_lefschetz(geo.model(), k)).collect();
    Ok(LefschetzReport { maps, monotone, cohomology })
}

fn to_vector(form: &RealForm, monomials: &[Mask]) -> Vec<Rational> {
    monomials.iter().map(|mask| form.get(mask).cloned().unwrap_or_else(Rational::zero)).collect()
}

fn from_vector(v: &[Rational], monomials: &[Mask]) -> RealForm {
    monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(&mask, c)| (mask, c.clone())).collect()
}

fn cohomology_lefschetz(model: &LieModel, k: usize) -> CohomologyLefschetz {
    let n = model.dim();
    let m = n / 2;
    let betti = real::betti(model)[k];
    let power = real::power(&real::fundamental_form(model), m - k);
    let src = real::basis(n, k);
    let tgt = real::basis(n, n - k);
    let closed = real::d_matrix(model, k).kernel();
    let images: Vec<Vec<Rational>> =
        closed.iter().map(|v| to_vector(&real::wedge(&from_vector(v, &src), &power), &tgt)).collect();
    let exact = real::d_matrix(model, n - k - 1);
    let exact_cols: Vec<Vec<Rational>> = (0..exact.cols()).map(|c| exact.column(c)).collect();
    let rank_of = |cols: &[Vec<Rational>]| if cols.is_empty() { 0 } else { Matrix::from_columns(tgt.len(), cols).rank() };
    let base = rank_of(&exact_cols);
    let all: Vec<Vec<Rational>> = exact_cols.iter().chain(&images).cloned().collect();
    let rank = rank_of(&all) - base;
    CohomologyLefschetz { k, betti, rank, iso: rank == betti }
}

/// Coefficient vectors on `A^{pq}` of the primitive harmonic forms.
fn primitive_vectors(geo: &Geometry, pq: Bidegree) -> Result<Vec<Vec<GaussScalar>>, GeometryError> {
    let basis = geo.basis();
    let harmonic = harmonic_vectors(geo, Harmonicity::D, pq)?;
    let (p, q) = pq;
    if p == 0 || q == 0 || harmonic.is_empty() {
        return Ok(harmonic);
    }
    let tgt = (p - 1, q - 1);
    let images: Vec<Vec<GaussScalar>> = harmonic
        .iter()
        .map(|v| geo.apply(geo.lambda(), &Form::from_block(basis, pq, v)).block_vector(basis, tgt))
        .collect();
    let weights = Matrix::from_columns(basis.dim(tgt), &images).kernel();
    Ok(weights
        .iter()
        .map(|w| {
            let mut out = vec![GaussScalar::zero(); basis.dim(pq)];
            for (c, h) in w.iter().zip(&harmonic) {
                for (o, x) in out.iter_mut().zip(h) {
                    *o += &(c * x);
                }
            }
            out
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitiveSummand {
    /// Power of `L` applied to the primitive piece.
    pub j: usize,
    pub primitive: Bidegree,
    pub dim: usize,
}

/// `H_d^{p,q} = ⊕_j L^j(P^{p-j,q-j})` with `P` the primitive harmonic forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitiveDecomposition {
    pub bidegree: Bidegree,
    pub ell: usize,
    pub summands: Vec<PrimitiveSummand>,
    pub total: usize,
    /// The summands together span the harmonic space.
    pub spans: bool,
    pub orthogonal: bool,
}

pub fn primitive_decomposition(geo: &Geometry, pq: Bidegree) -> Result<PrimitiveDecomposition, GeometryError> {
    require_almost_kahler(geo, "primitive decomposition")?;
    check_bidegree(geo, pq)?;
    let basis = geo.basis();
    let alg = geo.algebra();
    let harmonic = harmonic_vectors(geo, Harmonicity::D, pq)?;
    let (p, q) = pq;
    let mut summands = Vec::new();
    let mut pieces: Vec<Vec<Form>> = Vec::new();
    for j in 0..=p.min(q) {
        let prim = (p - j, q - j);
        let power = geo.omega().power(j);
        let forms: Vec<Form> =
            primitive_vectors(geo, prim)?.iter().map(|v| Form::from_block(basis, prim, v).wedge(&power)).collect();
        let vectors: Vec<Vec<GaussScalar>> = forms.iter().map(|f| f.block_vector(basis, pq)).collect();
        let dim = if vectors.is_empty() { 0 } else { Matrix::from_columns(basis.dim(pq), &vectors).rank() };
        summands.push(PrimitiveSummand { j, primitive: prim, dim });
        pieces.push(forms);
    }
    let total = summands.iter().map(|s| s.dim).sum();
    let all: Vec<Vec<GaussScalar>> = pieces.iter().flatten().map(|f| f.block_vector(basis, pq)).collect();
    let mut spans = all.len() >= harmonic.len();
    for v in &all {
        spans &= coordinates(basis.dim(pq), &harmonic, v)?.is_some();
    }
    if !all.is_empty() {
        spans &= Matrix::from_columns(basis.dim(pq), &all).rank() == harmonic.len();
    }
    let mut orthogonal = true;
    for (a, xs) in pieces.iter().enumerate() {
        for ys in &pieces[a + 1..] {
            orthogonal &= xs.iter().all(|x| ys.iter().all(|y| alg.inner(x, y).is_zero()));
        }
    }
    Ok(PrimitiveDecomposition { bidegree: pq, ell: harmonic.len(), summands, total, spans, orthogonal })
}

/// The form `(α, β) ↦ i^{p-q} (-1)^{k(k-1)/2} ∫ α ∧ β̄ ∧ ω^{m-k}` on primitive harmonics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeRiemann {
    pub bidegree: Bidegree,
    pub primitive_dim: usize,
    /// The factor `(-1)^{k(k-1)/2}`.
    pub sign: i32,
    pub inertia: Inertia,
    pub positive_definite: bool,
}

pub fn hodge_riemann_check(geo: &Geometry, pq: Bidegree) -> Result<HodgeRiemann, GeometryError> {
    require_almost_kahler(geo, "Hodge-Riemann check")?;
    check_bidegree(geo, pq)?;
    let (p, q) = pq;
    let m = geo.m();
    let k = p + q;
    if k > m {
        return Err(GeometryError::BidegreeOutOfRange { p, q, m });
    }
    let basis = geo.basis();
    let alg = geo.algebra();
    let forms: Vec<Form> = primitive_vectors(geo, pq)?.iter().map(|v| Form::from_block(basis, pq, v)).collect();
    let sign = if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
    let factor = GaussScalar::i_pow(p as i64 - q as i64).scale(&Rational::from_integer(sign.into()));
    let power = geo.omega().power(m - k);
    let n = forms.len();
    let h = Matrix::from_fn(n, n, |i, j| &factor * &alg.top(&forms[j].wedge(&forms[i].conj()).wedge(&power)));
    let inertia = hermitian_signature(&h)?;
    Ok(HodgeRiemann { bidegree: pq, primitive_dim: n, sign, inertia, positive_definite: inertia.is_positive_definite() })
}

/// Signature of the cup product on `H²` of a 4-dimensional almost Kähler model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeIndex {
    pub b2_plus: usize,
    pub b2_minus: usize,
    pub ell11: usize,
    /// `ℓ^{1,1} = b₂⁻ + 1` and `b₂⁺ ≥ 1`.
    pub relation_ok: bool,
    pub integrable: bool,
    pub ell20: usize,
    /// A non-integrable structure has `ℓ^{2,0} = ℓ^{0,2} = 0`.
    pub non_integrable_vanishing_ok: bool,
}

/// `Q(h_i, h_j) = ∫ h_i ∧ h_j` for real 2-forms, against the volume `ω²/2`.
pub fn intersection_matrix(model: &LieModel, reps: &[RealForm]) -> Matrix<Rational> {
    let n = model.dim();
    let m = n / 2;
    let mut factorial = Rational::one();
    for j in 2..=m {
        factorial *= Rational::from_integer((j as i64).into());
    }
    let vol = real::top_coefficient(&real::power(&real::fundamental_form(model), m), n) / factorial;
    Matrix::from_fn(reps.len(), reps.len(), |i, j| real::top_coefficient(&real::wedge(&reps[i], &reps[j]), n) / &vol)
}

/// Real harmonic 2-forms `ker d ∩ ker d*` in the frame metric.
pub fn real_harmonic_two_forms(model: &LieModel) -> Vec<RealForm> {
    let n = model.dim();
    let d2 = real::d_matrix(model, 2);
    let d1t = real::d_matrix(model, 1).transpose();
    let monomials = real::basis(n, 2);
    Matrix::vstack(&[&d2, &d1t])
        .expect("both act on 2-forms")
        .kernel()
        .iter()
        .map(|v| from_vector(v, &monomials))
        .collect()
}

pub fn hodge_index(geo: &Geometry) -> Result<HodgeIndex, GeometryError> {
    if geo.model().dim() != 4 {
        return Err(GeometryError::NotFourDimensional("Hodge index"));
    }
    require_almost_kahler(geo, "Hodge index")?;
    let reps = real_harmonic_two_forms(geo.model());
    let inertia = symmetric_signature(&intersection_matrix(geo.model(), &reps))?;
    if inertia.zero != 0 {
        return Err(GeometryError::Internal("intersection form on H² is degenerate".into()));
    }
    let ell11 = harmonic_vectors(geo, Harmonicity::D, (1, 1))?.len();
    let ell20 = harmonic_vectors(geo, Harmonicity::D, (2, 0))?.len();
    let integrable = geo.structure().integrable;
    Ok(HodgeIndex {
        b2_plus: inertia.plus,
        b2_minus: inertia.minus,
        ell11,
        relation_ok: ell11 == inertia.minus + 1 && inertia.plus >= 1,
        integrable,
        ell20,
        non_integrable_vanishing_ok: integrable || ell20 == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::catalog;

    fn geo(name: &str) -> Geometry {
        Geometry::new(&catalog(name).unwrap()).unwrap()
    }

    #[test]
    fn kodaira_thurston_lefschetz() {
        let r = hard_lefschetz(&geo("kodaira_thurston")).unwrap();
        let one = r.maps.iter().find(|f| f.source == (1, 0)).unwrap();
        assert_eq!((one.target, one.source_dim, one.target_dim, one.rank), ((2, 1), 1, 1, 1));
        assert!(r.maps.iter().all(|f| f.iso) && r.monotone);
        let h1 = &r.cohomology[1];
        assert_eq!(h1.betti, 3);
        assert!(!h1.iso);
    }

    #[test]
    fn torus_lefschetz_everywhere() {
        let r = hard_lefschetz(&geo("torus6")).unwrap();
        assert!(r.maps.iter().all(|f| f.iso) && r.monotone);
        assert!(r.cohomology.iter().all(|c| c.iso));
    }

    #[test]
    fn lefschetz_needs_almost_kahler() {
        assert!(matches!(hard_lefschetz(&geo("h5_J")), Err(GeometryError::NotAlmostKahler(_))));
    }

    #[test]
    fn primitive_pieces() {
        let d = primitive_decomposition(&geo("kodaira_thurston"), (1, 1)).unwrap();
        assert_eq!(d.summands.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![2, 1]);
        assert!(d.total == 3 && d.spans && d.orthogonal);
        let d = primitive_decomposition(&geo("torus4"), (1, 1)).unwrap();
        assert_eq!(d.summands.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![3, 1]);
        let d = primitive_decomposition(&geo("torus4"), (2, 1)).unwrap();
        assert_eq!(d.summands[0].dim, 0);
        assert_eq!(d.total, d.ell);
    }

    #[test]
    fn hodge_riemann_on_kodaira_thurston() {
        let g = geo("kodaira_thurston");
        for pq in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let r = hodge_riemann_check(&g, pq).unwrap();
            assert!(r.positive_definite, "{pq:?} {r:?}");
        }
        let r = hodge_riemann_check(&g, (1, 1)).unwrap();
        assert_eq!((r.primitive_dim, r.sign), (2, -1));
        assert!(hodge_riemann_check(&g, (2, 1)).is_err());
    }

    #[test]
    fn hodge_index_values() {
        let r = hodge_index(&geo("kodaira_thurston")).unwrap();
        assert_eq!((r.b2_plus, r.b2_minus, r.ell11, r.relation_ok), (2, 2, 3, true));
        assert_eq!(r.ell20, 0);
        assert!(r.non_integrable_vanishing_ok);
        let r = hodge_index(&geo("torus4")).unwrap();
        assert_eq!((r.b2_plus, r.b2_minus, r.ell11, r.relation_ok), (3, 3, 4, true));
        let r = hodge_index(&geo("filiform4_Jprime")).unwrap();
        assert_eq!((r.b2_plus, r.b2_minus, r.ell11, r.relation_ok), (1, 1, 2, true));
        assert!(matches!(hodge_index(&geo("torus6")), Err(GeometryError::NotFourDimensional(_))));
    }

    #[test]
    fn intersection_form_ignores_exact_perturbations() {
        let model = catalog("kodaira_thurston").unwrap();
        let reps = real_harmonic_two_forms(&model);
        let q = intersection_matrix(&model, &reps);
        let exact = real::generator_differentials(&model).into_iter().find(|f| !f.is_empty()).unwrap();
        let shifted: Vec<RealForm> = reps
            .iter()
            .enumerate()
            .map(|(n, h)| {
                let mut out = h.clone();
                crate::exterior::add_scaled(&mut out, &exact, &Rational::from_integer((n as i64 + 1).into()));
                out
            })
            .collect();
        assert_eq!(intersection_matrix(&model, &shifted), q);
    }
}
