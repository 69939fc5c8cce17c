use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{Matrix, Rational};
use crate::forms::real::{self, RealForm};

use super::LieModel;

/// Exact structural checks on a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub jacobi_ok: bool,
    /// First failing frame triple `(i, j, k)`, 1-based.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobi_violation: Option<(usize, usize, usize)>,
    pub acs_ok: bool,
    pub compatible_ok: bool,
    pub integrable: bool,
    pub almost_kahler: bool,
    pub nilpotent: bool,
}

impl StructureReport {
    /// True when the bigraded calculus can be built on the model.
    pub fn is_almost_hermitian(&self) -> bool {
        self.jacobi_ok && self.acs_ok && self.compatible_ok
    }
}

pub fn validate(model: &LieModel) -> StructureReport {
    let jacobi_violation = jacobi_violation(model);
    let acs_ok = squares_to_minus_one(model.j());
    let compatible_ok = is_orthogonal(model.j());
    let integrable = acs_ok && Nijenhuis::of(model).is_zero();
    let almost_kahler = jacobi_violation.is_none() && acs_ok && compatible_ok && {
        let omega = real::fundamental_form(model);
        real::d(model, &omega).is_empty() && !real::power(&omega, model.half_dim()).is_empty()
    };
    StructureReport {
        jacobi_ok: jacobi_violation.is_none(),
        jacobi_violation,
        acs_ok,
        compatible_ok,
        integrable,
        almost_kahler,
        nilpotent: lower_central_length(model).is_some(),
    }
}

fn jacobi_violation(model: &LieModel) -> Option<(usize, usize, usize)> {
    let n = model.dim();
    let e = |i| model.basis_vector(i);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = model.bracket(&model.bracket(&e(i), &e(j)), &e(k));
                let b = model.bracket(&model.bracket(&e(j), &e(k)), &e(i));
                let c = model.bracket(&model.bracket(&e(k), &e(i)), &e(j));
                if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                    return Some((i + 1, j + 1, k + 1));
                }
            }
        }
    }
    None
}

fn squares_to_minus_one(j: &Matrix<Rational>) -> bool {
    let n = j.rows();
    j.mul(j) == Matrix::identity(n).scale(&-Rational::one())
}

/// `J` preserves the frame metric iff `JᵀJ = 1`.
fn is_orthogonal(j: &Matrix<Rational>) -> bool {
    j.transpose().mul(j) == Matrix::identity(j.rows())
}

/// Number of steps until the lower central series reaches zero, if it does.
pub(crate) fn lower_central_length(model: &LieModel) -> Option<usize> {
    let n = model.dim();
    let mut current: Vec<Vec<Rational>> = (0..n).map(|i| model.basis_vector(i)).collect();
    for step in 1..=n + 1 {
        if current.is_empty() {
            return Some(step - 1);
        }
        let mut next = Vec::new();
        for i in 0..n {
            for v in &current {
                next.push(model.bracket(&model.basis_vector(i), v));
            }
        }
        let spanned = Matrix::from_rows(n, next).rref();
        let rank = spanned.pivots.len();
        if rank == current.len() {
            return None;
        }
        current = (0..rank).map(|r| spanned.reduced.row(r).to_vec()).collect();
    }
    None
}

/// The Nijenhuis tensor `N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]` on frame pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Nijenhuis {
    dim: usize,
    values: Vec<Vec<Rational>>,
}

impl Nijenhuis {
    pub fn of(model: &LieModel) -> Self {
        let n = model.dim();
        let mut values = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let x = model.basis_vector(a);
                let y = model.basis_vector(b);
                let jx = model.apply_j(&x);
                let jy = model.apply_j(&y);
                let t1 = model.bracket(&jx, &jy);
                let t2 = model.apply_j(&model.bracket(&jx, &y));
                let t3 = model.apply_j(&model.bracket(&x, &jy));
                let t4 = model.bracket(&x, &y);
                values.push((0..n).map(|k| &t1[k] - &t2[k] - &t3[k] - &t4[k]).collect());
            }
        }
        Nijenhuis { dim: n, values }
    }

    /// `N(X_a, X_b)` in frame coordinates (0-based).
    pub fn value(&self, a: usize, b: usize) -> &[Rational] {
        &self.values[a * self.dim + b]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(Zero::is_zero))
    }

    /// The real 2-form `(X, Y) ↦ x_k(N(X, Y))`.
    pub fn dual(&self, k: usize) -> RealForm {
        let mut out = RealForm::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let c = &self.value(a, b)[k];
                if !c.is_zero() {
                    out.insert((1 << a) | (1 << b), c.clone());
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::catalog;

    #[test]
    fn torus_flags() {
        let r = validate(&catalog("torus4").unwrap());
        assert!(r.jacobi_ok && r.acs_ok && r.compatible_ok && r.integrable && r.almost_kahler && r.nilpotent);
    }

    #[test]
    fn kodaira_thurston_flags() {
        let r = validate(&catalog("kodaira_thurston").unwrap());
        assert!(r.jacobi_ok && r.almost_kahler && r.nilpotent);
        assert!(!r.integrable);
    }

    #[test]
    fn h5_is_integrable_but_not_almost_kahler() {
        let r = validate(&catalog("h5_J").unwrap());
        assert!(r.jacobi_ok && r.integrable && r.nilpotent);
        assert!(!r.almost_kahler);
    }

    #[test]
    fn filiform_structures() {
        let j = validate(&catalog("filiform4_J").unwrap());
        assert!(!j.integrable && !j.almost_kahler);
        let jp = validate(&catalog("filiform4_Jprime").unwrap());
        assert!(!jp.integrable && jp.almost_kahler);
        assert_eq!(lower_central_length(&catalog("filiform4_J").unwrap()), Some(3));
    }

    #[test]
    fn jacobi_violation_is_reported() {
        use crate::model::Bracket;
        let one = Rational::one();
        // [X1,X2]=X3, [X2,X3]=X1, [X3,X1]=X1 is not a Lie algebra
        let br = vec![
            Bracket { i: 0, j: 1, k: 2, c: one.clone() },
            Bracket { i: 1, j: 2, k: 0, c: one.clone() },
            Bracket { i: 2, j: 0, k: 0, c: one.clone() },
        ];
        let j = catalog("torus4").unwrap().j().clone();
        let m = LieModel::new("bad", 4, &br, j).unwrap();
        let r = validate(&m);
        assert!(!r.jacobi_ok);
        assert_eq!(r.jacobi_violation, Some((1, 2, 3)));
    }

    #[test]
    fn nijenhuis_symmetries() {
        for name in ["kodaira_thurston", "filiform4_J", "filiform4_Jprime", "h5_J"] {
            let m = catalog(name).unwrap();
            let nj = Nijenhuis::of(&m);
            let n = m.dim();
            for a in 0..n {
                for b in 0..n {
                    let ab = nj.value(a, b);
                    let ba = nj.value(b, a);
                    assert!(ab.iter().zip(ba).all(|(x, y)| (x + y).is_zero()));
                    // N(JX, Y) = -J N(X, Y), expanded on the frame
                    let jx = m.apply_j(&m.basis_vector(a));
                    let mut lhs = vec![Rational::zero(); n];
                    for (c, coeff) in jx.iter().enumerate() {
                        for (k, v) in nj.value(c, b).iter().enumerate() {
                            lhs[k] += coeff * v;
                        }
                    }
                    let rhs = m.apply_j(ab);
                    assert!(lhs.iter().zip(&rhs).all(|(x, y)| (x + y).is_zero()), "{name}");
                }
            }
        }
        assert!(!Nijenhuis::of(&catalog("filiform4_J").unwrap()).is_zero());
        assert!(Nijenhuis::of(&catalog("torus6").unwrap()).is_zero());
    }
}
