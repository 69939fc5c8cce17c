//! Real invariant forms in the frame coframe `x_1..x_{2m}`.

use num_traits::Zero;

use crate::exact::{Matrix, Rational};
use crate::exterior::{self, subsets, Mask, Sparse};
use crate::model::LieModel;

pub type RealForm = Sparse<Rational>;

/// `dx_k = -Σ_{i<j} c^k_{ij} x_i ∧ x_j`, i.e. `dα(X, Y) = -α([X, Y])`.
pub fn generator_differentials(model: &LieModel) -> Vec<RealForm> {
    let n = model.dim();
    let mut out = vec![RealForm::new(); n];
    for b in model.brackets() {
        exterior::accumulate(&mut out[b.k], (1 << b.i) | (1 << b.j), -b.c);
    }
    out
}

pub fn d(model: &LieModel, form: &RealForm) -> RealForm {
    exterior::derivation(&generator_differentials(model), form)
}

pub fn wedge(a: &RealForm, b: &RealForm) -> RealForm {
    exterior::wedge_forms(a, b)
}

pub fn power(a: &RealForm, k: usize) -> RealForm {
    exterior::power(a, k)
}

/// `ω(X, Y) = ⟨JX, Y⟩`, so `ω = Σ_{a<b} J[b][a] x_a ∧ x_b`.
pub fn fundamental_form(model: &LieModel) -> RealForm {
    let n = model.dim();
    let mut out = RealForm::new();
    for a in 0..n {
        for b in a + 1..n {
            exterior::accumulate(&mut out, (1 << a) | (1 << b), model.j()[(b, a)].clone());
        }
    }
    out
}

/// Monomials `x_I` of degree `k`, lexicographic in `I`.
pub fn basis(dim: usize, k: usize) -> Vec<Mask> {
    subsets(&(0..dim).collect::<Vec<_>>(), k)
}

/// Matrix of `d: Λ^k → Λ^{k+1}` in the monomial bases of [`basis`].
pub fn d_matrix(model: &LieModel, k: usize) -> Matrix<Rational> {
    let n = model.dim();
    let src = basis(n, k);
    let tgt = basis(n, k + 1);
    let dg = generator_differentials(model);
    let mut m = Matrix::zeros(tgt.len(), src.len());
    for (c, &mask) in src.iter().enumerate() {
        let image = exterior::derivation(&dg, &RealForm::from([(mask, Rational::from_integer(1.into()))]));
        for (w, v) in image {
            let r = tgt.binary_search_by(|probe| lex_cmp(*probe, w)).expect("degree k+1 monomial");
            m[(r, c)] = v;
        }
    }
    m
}

/// Lexicographic order of the ascending index lists of two equal-degree masks.
fn lex_cmp(a: Mask, b: Mask) -> std::cmp::Ordering {
    exterior::bits(a).cmp(exterior::bits(b))
}

/// Betti numbers of the invariant complex, `b^k = dim ker d_k - rank d_{k-1}`.
pub fn betti(model: &LieModel) -> Vec<usize> {
    let n = model.dim();
    let ranks: Vec<usize> = (0..=n).map(|k| if k < n { d_matrix(model, k).rank() } else { 0 }).collect();
    (0..=n)
        .map(|k| {
            let dim = basis(n, k).len();
            dim - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }
        })
        .collect()
}

/// Coefficient of `x_1 ∧ … ∧ x_n`.
pub fn top_coefficient(form: &RealForm, dim: usize) -> Rational {
    form.get(&((1 << dim) - 1)).cloned().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::catalog;

    #[test]
    fn kodaira_thurston_real_differentials() {
        let m = catalog("kodaira_thurston").unwrap();
        let dg = generator_differentials(&m);
        // [X1,X2] = -X3 gives dx3 = x1 ∧ x2
        assert_eq!(dg[2], RealForm::from([(0b0011, Rational::from_integer(1.into()))]));
        assert!(dg[0].is_empty() && dg[1].is_empty() && dg[3].is_empty());
        let omega = fundamental_form(&m);
        assert!(d(&m, &omega).is_empty());
        assert_eq!(top_coefficient(&power(&omega, 2), 4), Rational::from_integer(2.into()));
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(betti(&catalog("kodaira_thurston").unwrap()), vec![1, 3, 4, 3, 1]);
        assert_eq!(betti(&catalog("torus4").unwrap()), vec![1, 4, 6, 4, 1]);
        assert_eq!(betti(&catalog("filiform4_J").unwrap()), vec![1, 2, 2, 2, 1]);
        assert_eq!(betti(&catalog("h5_J").unwrap())[1], 4);
    }

    #[test]
    fn d_squares_to_zero() {
        for name in ["kodaira_thurston", "filiform4_J", "h5_J"] {
            let m = catalog(name).unwrap();
            for k in 0..m.dim() - 1 {
                assert!(d_matrix(&m, k + 1).mul(&d_matrix(&m, k)).is_zero(), "{name} {k}");
            }
        }
    }
}
