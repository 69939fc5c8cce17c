use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{GeometryError, ModelError};
use crate::exact::{hermitian_signature, Field, GaussScalar, Matrix, Rational};
use crate::exterior::{self, subsets, Mask, Sparse};
use crate::model::LieModel;

use super::basis::{Basis, Bidegree};
use super::form::Form;
use super::operator::{BlockOperator, GMatrix};
use super::real::RealForm;

/// The complexified invariant exterior algebra of an almost Hermitian model,
/// with its (1,0)-coframe, Hermitian Gram matrices and volume form.
///
/// The holomorphic frame is `A_k = X_{g_k} - i J X_{g_k}`; `a_k` is the dual
/// coframe of `(A_1..A_m, Ā_1..Ā_m)`.
#[derive(Clone, Debug)]
pub struct BigradedAlgebra {
    basis: Basis,
    frame: Vec<usize>,
    v: GMatrix,
    t: GMatrix,
    generator_d: Vec<Sparse<GaussScalar>>,
    gram1: GMatrix,
    grams: BTreeMap<Bidegree, GMatrix>,
    gram_invs: BTreeMap<Bidegree, GMatrix>,
    omega: Form,
    vol: Form,
    vol_top: GaussScalar,
}

fn gauss(r: &Rational) -> GaussScalar {
    GaussScalar::real(r.clone())
}

/// Frame generators chosen greedily: `X_r` is kept when `X_r - iJX_r` is
/// independent of the vectors kept so far.
fn greedy_frame(model: &LieModel) -> Vec<usize> {
    let n = model.dim();
    let mut chosen: Vec<Vec<GaussScalar>> = Vec::new();
    let mut frame = Vec::new();
    for r in 0..n {
        if frame.len() == model.half_dim() {
            break;
        }
        let cand = holomorphic_vector(model, r);
        let mut trial = chosen.clone();
        trial.push(cand.clone());
        if Matrix::from_rows(n, trial).rank() == chosen.len() + 1 {
            chosen.push(cand);
            frame.push(r + 1);
        }
    }
    frame
}

/// `X_r - i J X_r` in frame coordinates (0-based `r`).
fn holomorphic_vector(model: &LieModel, r: usize) -> Vec<GaussScalar> {
    let n = model.dim();
    (0..n)
        .map(|k| {
            let re = if k == r { Rational::one() } else { Rational::zero() };
            GaussScalar::new(re, -model.j()[(k, r)].clone())
        })
        .collect()
}

impl BigradedAlgebra {
    pub fn build(model: &LieModel) -> Result<Self, GeometryError> {
        let n = model.dim();
        let m = model.half_dim();
        let frame = match model.holomorphic_frame() {
            Some(f) => f.to_vec(),
            None => greedy_frame(model),
        };
        if frame.len() != m || frame.iter().any(|&g| g == 0 || g > n) {
            return Err(ModelError::EigenspaceDefect(frame).into());
        }
        let jc = Matrix::from_fn(n, n, |r, c| gauss(&model.j()[(r, c)]));
        let mut columns: Vec<Vec<GaussScalar>> = frame.iter().map(|&g| holomorphic_vector(model, g - 1)).collect();
        for col in &columns {
            let image = jc.mul_vec(col);
            if image.iter().zip(col).any(|(x, y)| *x != GaussScalar::i() * y.clone()) {
                return Err(ModelError::EigenspaceDefect(frame).into());
            }
        }
        let conj: Vec<Vec<GaussScalar>> = columns.iter().map(|c| c.iter().map(Field::conj).collect()).collect();
        columns.extend(conj);
        let v = Matrix::from_columns(n, &columns);
        let t = v.inverse().ok_or_else(|| ModelError::EigenspaceDefect(frame.clone()))?;

        // brackets of frame vectors E_h = V[:, h]
        let mut generator_d = vec![Sparse::new(); n];
        for h1 in 0..n {
            for h2 in h1 + 1..n {
                let mut bracket = vec![GaussScalar::zero(); n];
                for i in 0..n {
                    for l in 0..n {
                        let vv = v[(i, h1)].clone() * v[(l, h2)].clone();
                        if vv.is_zero() {
                            continue;
                        }
                        for (k, b) in bracket.iter_mut().enumerate() {
                            let c = model.c(i, l, k);
                            if !c.is_zero() {
                                *b += &vv.scale(c);
                            }
                        }
                    }
                }
                for (g, dg) in generator_d.iter_mut().enumerate() {
                    let val = (0..n).fold(GaussScalar::zero(), |acc, k| acc + t[(g, k)].clone() * bracket[k].clone());
                    exterior::accumulate(dg, (1 << h1) | (1 << h2), -val);
                }
            }
        }

        let gram1 = Matrix::from_fn(n, n, |a, b| {
            (0..n).fold(GaussScalar::zero(), |acc, j| acc + t[(a, j)].clone() * t[(b, j)].conj())
        });
        for a in 0..m {
            for b in m..n {
                if !gram1[(a, b)].is_zero() {
                    return Err(GeometryError::Internal(format!(
                        "coframe vectors a{} and a{}~ are not orthogonal",
                        a + 1,
                        b - m + 1
                    )));
                }
            }
        }

        let basis = Basis::new(m);
        let (grams, gram_invs) = block_grams(&basis, &gram1)?;

        let mut omega_terms = Sparse::new();
        for h1 in 0..n {
            for h2 in h1 + 1..n {
                let mut val = GaussScalar::zero();
                for a in 0..n {
                    for b in 0..n {
                        let j = &model.j()[(b, a)];
                        if !j.is_zero() {
                            val += &(v[(a, h1)].clone() * v[(b, h2)].clone()).scale(j);
                        }
                    }
                }
                exterior::accumulate(&mut omega_terms, (1 << h1) | (1 << h2), val);
            }
        }
        let omega = Form::from_sparse(m, omega_terms);
        let factorial: i64 = (1..=m as i64).product();
        let vol = omega.power(m).scale(&GaussScalar::ratio(1, factorial));
        let vol_top = vol.coefficient(basis.top());
        if vol_top.is_zero() {
            return Err(ModelError::DegenerateForm.into());
        }
        Ok(BigradedAlgebra { basis, frame, v, t, generator_d, gram1, grams, gram_invs, omega, vol, vol_top })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn m(&self) -> usize {
        self.basis.m()
    }

    /// 1-based frame generators of the holomorphic frame.
    pub fn frame(&self) -> &[usize] {
        &self.frame
    }

    /// `V[j][h]`: the `X_j` component of the `h`-th complex frame vector.
    pub fn frame_matrix(&self) -> &GMatrix {
        &self.v
    }

    /// `T = V⁻¹`; row `g` expresses the coframe form `θ_g` in the `x_j`.
    pub fn coframe_matrix(&self) -> &GMatrix {
        &self.t
    }

    /// `dθ_g` for every complex generator.
    pub fn generator_differentials(&self) -> &[Sparse<GaussScalar>] {
        &self.generator_d
    }

    /// `⟨θ_a, θ_b⟩` for complex generators.
    pub fn coframe_gram(&self) -> &GMatrix {
        &self.gram1
    }

    /// `G[r][c] = ⟨e_c, e_r⟩` on the basis of `A^{pq}`, so `⟨α, β⟩ = β^H G α`.
    pub fn gram(&self, pq: Bidegree) -> &GMatrix {
        &self.grams[&pq]
    }

    pub fn gram_inverse(&self, pq: Bidegree) -> &GMatrix {
        &self.gram_invs[&pq]
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    /// `vol = ω^m / m!`.
    pub fn vol(&self) -> &Form {
        &self.vol
    }

    pub fn zero(&self) -> Form {
        Form::zero(self.m())
    }

    pub fn d(&self, form: &Form) -> Form {
        Form::from_sparse(self.m(), exterior::derivation(&self.generator_d, form.terms()))
    }

    /// Coefficient of `vol` in the top-degree part of `form`.
    pub fn top(&self, form: &Form) -> GaussScalar {
        form.coefficient(self.basis.top()) / self.vol_top.clone()
    }

    pub fn inner(&self, alpha: &Form, beta: &Form) -> GaussScalar {
        let mut total = GaussScalar::zero();
        for pq in alpha.bidegrees() {
            let a = alpha.block_vector(&self.basis, pq);
            let b = beta.block_vector(&self.basis, pq);
            let ga = self.gram(pq).mul_vec(&a);
            for (x, y) in b.iter().zip(ga) {
                total += &(x.conj() * y);
            }
        }
        total
    }

    /// Rewrites a real form `Σ c_R x_R` in the complex coframe.
    pub fn from_real(&self, form: &RealForm) -> Form {
        let n = 2 * self.m();
        let x: Vec<Sparse<GaussScalar>> = (0..n)
            .map(|j| {
                let mut s = Sparse::new();
                for g in 0..n {
                    exterior::accumulate(&mut s, 1 << g, self.v[(j, g)].clone());
                }
                s
            })
            .collect();
        let mut out = Sparse::new();
        for (&mask, c) in form {
            let mut term = Sparse::from([(0, GaussScalar::real(c.clone()))]);
            for j in exterior::bits(mask) {
                term = exterior::wedge_forms(&term, &x[j]);
            }
            exterior::add_scaled(&mut out, &term, &GaussScalar::one());
        }
        Form::from_sparse(self.m(), out)
    }

    /// Operator sending `A^{p,q}` to its images under `f`, split into the
    /// bidegrees the images land in.
    pub fn operator_from(&self, degree: Option<i32>, f: impl Fn(&Form) -> Form) -> BlockOperator {
        let mut op = BlockOperator::zero(self.m(), degree);
        for src in self.basis.bidegrees() {
            let images: Vec<Form> =
                self.basis.block(src).iter().map(|&mask| f(&Form::monomial(self.m(), mask, GaussScalar::one()))).collect();
            let mut targets: Vec<Bidegree> = images.iter().flat_map(Form::bidegrees).collect();
            targets.sort_unstable();
            targets.dedup();
            for tgt in targets {
                let cols: Vec<Vec<GaussScalar>> = images.iter().map(|im| im.block_vector(&self.basis, tgt)).collect();
                op.add_block(src, tgt, Matrix::from_columns(self.basis.dim(tgt), &cols));
            }
        }
        op.prune()
    }

    /// The differential split into its components of bidegree
    /// `(-1,2)`, `(0,1)`, `(1,0)`, `(2,-1)`: `[μ̄, ∂̄, ∂, μ]`.
    pub fn differential_components(&self) -> [BlockOperator; 4] {
        let d = self.operator_from(Some(1), |f| self.d(f));
        let mut parts: [BlockOperator; 4] = std::array::from_fn(|_| BlockOperator::zero(self.m(), Some(1)));
        for (&((p, q), (r, s)), b) in d.blocks() {
            let k = match (r as i64 - p as i64, s as i64 - q as i64) {
                (-1, 2) => 0,
                (0, 1) => 1,
                (1, 0) => 2,
                (2, -1) => 3,
                other => unreachable!("differential has shift {other:?}"),
            };
            parts[k].add_block((p, q), (r, s), b.clone());
        }
        parts
    }

    /// `L(η) = ω ∧ η`.
    pub fn lefschetz(&self) -> BlockOperator {
        self.operator_from(Some(2), |f| self.omega.wedge(f))
    }

    /// `𝕀` acting on `A^{p,q}` by `i^{p-q}`.
    pub fn weight(&self) -> BlockOperator {
        BlockOperator::diagonal(&self.basis, 0, |(p, q)| GaussScalar::i_pow(p as i64 - q as i64))
    }

    pub fn weight_inverse(&self) -> BlockOperator {
        BlockOperator::diagonal(&self.basis, 0, |(p, q)| GaussScalar::i_pow(q as i64 - p as i64))
    }

    /// Hilbert-space adjoint: `A* = G_s⁻¹ A^H G_t` on each block `s → t`.
    pub fn adjoint(&self, op: &BlockOperator) -> BlockOperator {
        let mut out = BlockOperator::zero(self.m(), op.degree().map(|d| -d));
        for (&(s, t), a) in op.blocks() {
            let adj = self.gram_inverse(s).mul(&a.adjoint()).mul(self.gram(t));
            out.add_block(t, s, adj);
        }
        out.prune()
    }

    /// Hodge star `A^{p,q} → A^{m-q,m-p}` from `α ∧ ⋆β̄ = ⟨α, β⟩ vol`.
    ///
    /// The pairing `A^{p,q} × A^{m-p,m-q} → ℂ` pairs complementary monomials
    /// only, so the defining system is solved monomial by monomial.
    pub fn hodge_star(&self) -> BlockOperator {
        let m = self.m();
        let top = self.basis.top();
        let mut op = BlockOperator::zero(m, None);
        for (a, b) in self.basis.bidegrees() {
            // γ ∈ A^{a,b}; conj γ ∈ A^{b,a}; ⋆γ ∈ A^{m-b,m-a}
            let (p, q) = (b, a);
            let tgt = (m - p, m - q);
            let g = self.gram((p, q));
            let sigma = if (a * b) % 2 == 1 { -GaussScalar::one() } else { GaussScalar::one() };
            let mut mat = Matrix::zeros(self.basis.dim(tgt), self.basis.dim((a, b)));
            for (s, &mask) in self.basis.block((a, b)).iter().enumerate() {
                let low = mask & ((1 << m) - 1);
                let r = self.basis.position((mask >> m) | (low << m));
                for (u, &eu) in self.basis.block((p, q)).iter().enumerate() {
                    let fv = top ^ eu;
                    let (_, eps) = exterior::wedge(eu, fv).expect("complementary monomials");
                    let mut y = sigma.clone() * g[(r, u)].clone() * self.vol_top.clone();
                    if eps < 0 {
                        y = -y;
                    }
                    mat[(self.basis.position(fv), s)] = y;
                }
            }
            op.add_block((a, b), tgt, mat);
        }
        op.prune()
    }
}

type GramTables = (BTreeMap<Bidegree, GMatrix>, BTreeMap<Bidegree, GMatrix>);

/// Gram matrices of every block from the coframe Gram matrix. Cross terms
/// between (1,0) and (0,1) generators vanish, so each entry factors into a
/// holomorphic and an antiholomorphic minor.
fn block_grams(basis: &Basis, gram1: &GMatrix) -> Result<GramTables, GeometryError> {
    let m = basis.m();
    let idx: Vec<usize> = (0..m).collect();
    let minors = |offset: usize, k: usize| -> BTreeMap<(Mask, Mask), GaussScalar> {
        let subs = subsets(&idx, k);
        let mut out = BTreeMap::new();
        for &i in &subs {
            for &j in &subs {
                let ii: Vec<usize> = exterior::bits(i).collect();
                let jj: Vec<usize> = exterior::bits(j).collect();
                let det = Matrix::from_fn(k, k, |r, c| gram1[(ii[r] + offset, jj[c] + offset)].clone()).determinant();
                out.insert((i, j), det);
            }
        }
        out
    };
    let holo: Vec<_> = (0..=m).map(|k| minors(0, k)).collect();
    let anti: Vec<_> = (0..=m).map(|k| minors(m, k)).collect();
    let low = (1 << m) - 1;
    let mut grams = BTreeMap::new();
    let mut invs = BTreeMap::new();
    for pq in basis.bidegrees() {
        let block = basis.block(pq);
        let g = Matrix::from_fn(block.len(), block.len(), |r, c| {
            let (er, ec) = (block[r], block[c]);
            holo[pq.0][&(ec & low, er & low)].clone() * anti[pq.1][&(ec >> m, er >> m)].clone()
        });
        let inertia = hermitian_signature(&g)?;
        if !inertia.is_positive_definite() {
            return Err(GeometryError::DegenerateGram { p: pq.0, q: pq.1 });
        }
        let inv = g.inverse().ok_or(GeometryError::DegenerateGram { p: pq.0, q: pq.1 })?;
        grams.insert(pq, g);
        invs.insert(pq, inv);
    }
    Ok((grams, invs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::catalog;

    fn g(s: &str) -> GaussScalar {
        s.parse().unwrap()
    }

    fn alg(name: &str) -> BigradedAlgebra {
        BigradedAlgebra::build(&catalog(name).unwrap()).unwrap()
    }

    #[test]
    fn coframe_is_dual_to_frame() {
        for name in ["kodaira_thurston", "h5_J", "filiform4_J", "torus6"] {
            let a = alg(name);
            let n = 2 * a.m();
            assert_eq!(a.coframe_matrix().mul(a.frame_matrix()), Matrix::identity(n));
        }
    }

    #[test]
    fn filiform_coframe() {
        // a = (x1 + i x2) / 2, b = (x3 + i x4) / 2
        let a = alg("filiform4_J");
        assert_eq!(a.frame(), &[1, 3]);
        let t = a.coframe_matrix();
        assert_eq!(t[(0, 0)], g("1/2"));
        assert_eq!(t[(0, 1)], g("1/2i"));
        assert_eq!(t[(1, 2)], g("1/2"));
        assert_eq!(t[(1, 3)], g("1/2i"));
    }

    #[test]
    fn h5_coframe_is_dual_to_the_chosen_frame() {
        // A = X5 + iX6, B = X1 - iX2, C = X3 + iX4
        let a = alg("h5_J");
        let v = a.frame_matrix();
        assert_eq!((v[(4, 0)].clone(), v[(5, 0)].clone()), (g("1"), g("i")));
        assert_eq!((v[(0, 1)].clone(), v[(1, 1)].clone()), (g("1"), g("-i")));
        assert_eq!((v[(2, 2)].clone(), v[(3, 2)].clone()), (g("1"), g("i")));
    }

    #[test]
    fn block_dimensions() {
        let a = alg("torus4");
        assert_eq!(a.basis().dim((1, 1)), 4);
        let a = alg("kodaira_thurston");
        assert_eq!(a.basis().dim((1, 0)), 2);
    }

    #[test]
    fn volume_matches_frame_orientation() {
        for name in ["torus4", "kodaira_thurston", "filiform4_Jprime", "h5_J", "torus6"] {
            let model = catalog(name).unwrap();
            let a = BigradedAlgebra::build(&model).unwrap();
            let n = model.dim();
            let frame_top = RealForm::from([((1 << n) - 1, Rational::one())]);
            assert_eq!(a.from_real(&frame_top), *a.vol(), "{name}");
        }
    }

    #[test]
    fn fundamental_form_is_real_pure_and_matches_real_form() {
        for name in ["kodaira_thurston", "filiform4_J", "h5_J"] {
            let model = catalog(name).unwrap();
            let a = BigradedAlgebra::build(&model).unwrap();
            let w = a.omega();
            assert_eq!(w.pure_bidegree(), Some((1, 1)));
            assert_eq!(&w.conj(), w);
            assert_eq!(a.from_real(&crate::forms::real::fundamental_form(&model)), *w);
        }
    }

    #[test]
    fn complex_differential_matches_real_one() {
        for name in ["kodaira_thurston", "filiform4_J", "h5_J"] {
            let model = catalog(name).unwrap();
            let a = BigradedAlgebra::build(&model).unwrap();
            for j in 0..model.dim() {
                let xj = RealForm::from([(1 << j, Rational::one())]);
                let dx = crate::forms::real::d(&model, &xj);
                assert_eq!(a.d(&a.from_real(&xj)), a.from_real(&dx), "{name} x{}", j + 1);
            }
        }
    }

    #[test]
    fn gram_of_coframe() {
        // |a|² = 1/2 for a = (x1 + i x2)/2 with x orthonormal
        let a = alg("kodaira_thurston");
        assert_eq!(a.gram((1, 0)), &Matrix::identity(2).scale(&g("1/2")));
        assert_eq!(a.gram((1, 1)), &Matrix::identity(4).scale(&g("1/4")));
    }

    #[test]
    fn hodge_star_defining_equation() {
        for name in ["kodaira_thurston", "h5_J"] {
            let a = alg(name);
            let star = a.hodge_star();
            let basis = a.basis().clone();
            let m = a.m();
            for pq in basis.bidegrees() {
                for &ea in basis.block(pq) {
                    for &eb in basis.block(pq) {
                        let alpha = Form::monomial(m, ea, GaussScalar::one());
                        let beta = Form::monomial(m, eb, g("1-i"));
                        let lhs = a.top(&alpha.wedge(&star.apply(&basis, &beta.conj())));
                        assert_eq!(lhs, a.inner(&alpha, &beta), "{name} {pq:?}");
                    }
                }
            }
        }
    }
}
