use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::GeometryError;
use crate::exact::{Field, GaussScalar, Matrix, ParamPoly, Rational};
use crate::forms::real::{self, RealForm};
use crate::forms::{Bidegree, Component, Form, Geometry};
use crate::operators::{laplacian_symmetry_witness, LaplacianWitness};

use super::{block_kernel, check_bidegree, harmonic_vectors, Harmonicity};

/// Holomorphic `p`-forms `ker ∂̄ ∩ A^{p,0}`, which do not depend on the metric.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolomorphicForms {
    pub p: usize,
    pub basis: Vec<Form>,
    /// For almost Kähler models: whether the space equals `H_d^{p,0}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equals_harmonic: Option<bool>,
}

pub fn holomorphic_forms(geo: &Geometry, p: usize) -> Result<HolomorphicForms, GeometryError> {
    check_bidegree(geo, (p, 0))?;
    let basis = geo.basis();
    let vectors = block_kernel(basis, &[geo.component(Component::DelBar)], (p, 0))?;
    let equals_harmonic = if geo.is_almost_kahler() && p == 1 {
        let harmonic = harmonic_vectors(geo, Harmonicity::D, (1, 0))?;
        let db = geo.component(Component::DelBar);
        let inside = harmonic.iter().all(|v| geo.apply(db, &Form::from_block(basis, (1, 0), v)).is_zero());
        Some(inside && harmonic.len() == vectors.len())
    } else {
        None
    };
    Ok(HolomorphicForms {
        p,
        basis: vectors.iter().map(|v| Form::from_block(basis, (p, 0), v)).collect(),
        equals_harmonic,
    })
}

/// `dim ker μ̄ / im μ̄` on `A^{p,q}`.
pub fn mu_bar_cohomology(geo: &Geometry, pq: Bidegree) -> Result<usize, GeometryError> {
    check_bidegree(geo, pq)?;
    let basis = geo.basis();
    let mb = geo.component(Component::MuBar);
    let kernel = block_kernel(basis, &[mb], pq)?.len();
    let (p, q) = pq;
    let image = if q >= 2 && p < geo.m() {
        mb.block((p + 1, q - 2), pq).map_or(0, Matrix::rank)
    } else {
        0
    };
    Ok(kernel - image)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AkVerdict {
    /// Every candidate symplectic form compatible with `J` is degenerate.
    NoInvariantAlmostKahler,
    Inconclusive,
    /// There are no holomorphic 1-forms, so the argument says nothing.
    Vacuous,
}

/// Searches the closed `J`-invariant real 2-forms `ω_t = Σ tᵢwᵢ` for one that
/// could be almost Kähler. If `L_t` sends every holomorphic 1-form into `im ∂̄`
/// for all `t`, hard Lefschetz forces `L_t α = 0`, and the survivors are
/// checked for degeneracy through `ω_t^m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AkNonexistenceReport {
    pub verdict: AkVerdict,
    pub statement: String,
    /// Closed `J`-invariant real 2-forms `w_i`, written in the complex coframe.
    pub closed_invariant_forms: Vec<Form>,
    pub holomorphic_one_forms: usize,
    /// Dimension of the parameters `t` for which `L_t Ω¹ ⊂ im ∂̄`.
    pub lands_in_image_dim: usize,
    /// Basis, in `t` coordinates, of the parameters with `L_t Ω¹ = 0`.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "rational_rows")]
    pub annihilating: Option<Vec<Vec<Rational>>>,
    /// The surviving family `Σ uⱼ Ωⱼ`, one form per parameter `uⱼ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<Form>>,
    /// `ω_u^m` divided by the volume form, as a polynomial in the `uⱼ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_power: Option<ParamPoly>,
}

fn rational_rows<S: serde::Serializer>(rows: &Option<Vec<Vec<Rational>>>, s: S) -> Result<S::Ok, S::Error> {
    let text: Option<Vec<Vec<String>>> =
        rows.as_ref().map(|rows| rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect());
    text.serialize(s)
}

/// Closed real 2-forms with `w(JX, JY) = w(X, Y)`.
fn closed_invariant_real_forms(geo: &Geometry) -> Vec<RealForm> {
    let model = geo.model();
    let n = model.dim();
    let j = model.j();
    let pairs = real::basis(n, 2);
    let index = |mask: u32| {
        let bits: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).collect();
        (bits[0], bits[1])
    };
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for &target in &pairs {
        let (c, e) = index(target);
        let row = pairs
            .iter()
            .map(|&var| {
                let (a, b) = index(var);
                let mut x = &j[(a, c)] * &j[(b, e)] - &j[(b, c)] * &j[(a, e)];
                if var == target {
                    x -= Rational::one();
                }
                x
            })
            .collect();
        rows.push(row);
    }
    let invariance = Matrix::from_rows(pairs.len(), rows);
    let d2 = real::d_matrix(model, 2);
    Matrix::vstack(&[&invariance, &d2])
        .expect("both act on 2-forms")
        .kernel()
        .iter()
        .map(|v| pairs.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(&k, c)| (k, c.clone())).collect())
        .collect()
}

/// Real and imaginary parts of complex linear conditions `Σ_i t_i c_i = 0`.
fn split_rows(coeffs: &[Vec<GaussScalar>]) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for row in coeffs {
        out.push(row.iter().map(|c| c.re.clone()).collect());
        out.push(row.iter().map(|c| c.im.clone()).collect());
    }
    out
}

fn unit_vectors<F: Field>(n: usize) -> Vec<Vec<F>> {
    (0..n).map(|k| (0..n).map(|j| if j == k { F::one() } else { F::zero() }).collect()).collect()
}

fn real_kernel(cols: usize, rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return unit_vectors(cols);
    }
    Matrix::from_rows(cols, rows).kernel()
}

pub fn ak_nonexistence_report(geo: &Geometry) -> Result<AkNonexistenceReport, GeometryError> {
    let basis = geo.basis();
    let alg = geo.algebra();
    let m = geo.m();
    let w: Vec<Form> = closed_invariant_real_forms(geo).iter().map(|f| alg.from_real(f)).collect();
    let omega1 = holomorphic_forms(geo, 1)?.basis;
    let mut report = AkNonexistenceReport {
        verdict: AkVerdict::Vacuous,
        statement: "test vacuous: no holomorphic 1-forms".into(),
        closed_invariant_forms: w.clone(),
        holomorphic_one_forms: omega1.len(),
        lands_in_image_dim: 0,
        annihilating: None,
        family: None,
        top_power: None,
    };
    if omega1.is_empty() {
        return Ok(report);
    }
    let r = w.len();
    let target = (2, 1);
    // with m = 1 the products ω_t ∧ α vanish for degree reasons
    let target_dim = if m >= 2 { basis.dim(target) } else { 0 };
    // left null vectors y of ∂̄: A^{2,0} → A^{2,1}; v ∈ im ∂̄ iff y·v = 0 for all y
    let left_null = match geo.component(Component::DelBar).block((2, 0), target) {
        Some(b) => b.transpose().kernel(),
        None => unit_vectors(target_dim),
    };
    let products: Vec<Vec<Vec<GaussScalar>>> = if m >= 2 {
        omega1.iter().map(|alpha| w.iter().map(|wi| wi.wedge(alpha).block_vector(basis, target)).collect()).collect()
    } else {
        Vec::new()
    };
    let mut image_conditions = Vec::new();
    let mut zero_conditions = Vec::new();
    for per_alpha in &products {
        for y in &left_null {
            image_conditions.push(
                per_alpha.iter().map(|v| y.iter().zip(v).fold(GaussScalar::zero(), |acc, (a, b)| &acc + &(a * b))).collect(),
            );
        }
        for row in 0..target_dim {
            zero_conditions.push(per_alpha.iter().map(|v| v[row].clone()).collect::<Vec<_>>());
        }
    }
    let t1 = real_kernel(r, split_rows(&image_conditions));
    report.lands_in_image_dim = t1.len();
    if t1.len() < r {
        report.verdict = AkVerdict::Inconclusive;
        report.statement =
            "inconclusive: some closed invariant forms send holomorphic 1-forms outside im ∂̄".into();
        return Ok(report);
    }
    let t2 = real_kernel(r, split_rows(&zero_conditions));
    let family: Vec<Form> = t2
        .iter()
        .map(|tau| {
            tau.iter()
                .zip(&w)
                .fold(Form::zero(m), |acc, (c, wi)| acc.add(&wi.scale(&GaussScalar::real(c.clone()))))
        })
        .collect();
    let top = top_power(geo, &family);
    report.annihilating = Some(t2);
    report.family = Some(family);
    if top.is_zero() {
        report.verdict = AkVerdict::NoInvariantAlmostKahler;
        report.statement =
            "no invariant almost Kähler structure compatible with J: every candidate ω has ω^m ≡ 0".into();
    } else {
        report.verdict = AkVerdict::Inconclusive;
        report.statement = "inconclusive: a nondegenerate family survives".into();
    }
    report.top_power = Some(top);
    Ok(report)
}

/// `(Σ uⱼ Ωⱼ)^m` against the volume form, expanded over multisets of indices.
fn top_power(geo: &Geometry, family: &[Form]) -> ParamPoly {
    let m = geo.m();
    let vars: Vec<String> = (1..=family.len()).map(|j| format!("u{j}")).collect();
    let mut total = ParamPoly::zero(&vars);
    if family.is_empty() {
        return total;
    }
    let mut factorial = vec![GaussScalar::one()];
    for k in 1..=m {
        factorial.push(&factorial[k - 1] * &GaussScalar::from(k as i64));
    }
    for combo in (0..family.len()).combinations_with_replacement(m) {
        let wedge = combo.iter().fold(Form::one(m), |acc, &j| acc.wedge(&family[j]));
        let c = geo.algebra().top(&wedge);
        if c.is_zero() {
            continue;
        }
        let mut multinomial = factorial[m].clone();
        let mut monomial = ParamPoly::constant(&vars, GaussScalar::one());
        for (_, group) in &combo.iter().chunk_by(|&&j| j) {
            multinomial = &multinomial / &factorial[group.count()];
        }
        for &j in &combo {
            monomial = &monomial * &ParamPoly::var(&vars, j);
        }
        total = &total + &monomial.scale(&(&multinomial * &c));
    }
    total
}

/// Metric-free and metric-dependent obstructions to an invariant almost Kähler structure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionReport {
    pub model: String,
    pub almost_kahler: bool,
    pub integrable: bool,
    /// `dim Ω^p` for `p = 0..=m`.
    pub hol_dims: Vec<usize>,
    pub betti1: usize,
    /// `2 dim Ω¹ ≤ b¹`.
    pub cor45_ok: bool,
    /// `dim Ω¹ > dim Ω² + 1`; reported, not an obstruction.
    pub chen_hypothesis: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub laplacian_witness: Option<LaplacianWitness>,
    pub ak_nonexistence: AkNonexistenceReport,
}

impl ObstructionReport {
    /// True when some check rules out a compatible invariant almost Kähler structure.
    pub fn fires(&self) -> bool {
        !self.cor45_ok
            || self.laplacian_witness.is_some()
            || self.ak_nonexistence.verdict == AkVerdict::NoInvariantAlmostKahler
    }
}

pub fn obstruction_report(geo: &Geometry) -> Result<ObstructionReport, GeometryError> {
    let m = geo.m();
    let hol_dims = (0..=m).map(|p| Ok(holomorphic_forms(geo, p)?.basis.len())).collect::<Result<Vec<_>, GeometryError>>()?;
    let betti1 = real::betti(geo.model())[1];
    let dim1 = hol_dims.get(1).copied().unwrap_or(0);
    let dim2 = hol_dims.get(2).copied().unwrap_or(0);
    Ok(ObstructionReport {
        model: geo.model().name().to_string(),
        almost_kahler: geo.is_almost_kahler(),
        integrable: geo.structure().integrable,
        hol_dims,
        betti1,
        cor45_ok: 2 * dim1 <= betti1,
        chen_hypothesis: dim1 > dim2 + 1,
        laplacian_witness: laplacian_symmetry_witness(geo)?,
        ak_nonexistence: ak_nonexistence_report(geo)?,
    })
}
