//! Built-in models.
//!
//! | name               | dim | brackets                                   | J                          |
//! |--------------------|-----|--------------------------------------------|----------------------------|
//! | `torus{2m}`        | 2m  | none                                       | `JX_{2k-1} = X_{2k}`       |
//! | `kodaira_thurston` | 4   | `[X1,X2] = -X3`                            | `JX1 = X4`, `JX2 = X3`     |
//! | `filiform4_J`      | 4   | `[X1,X2] = X3`, `[X1,X3] = X4`             | `JX1 = X2`, `JX3 = X4`     |
//! | `filiform4_Jprime` | 4   | as above                                   | `JX1 = X4`, `JX2 = X3`     |
//! | `h5_J`             | 6   | `[X1,X3] = [X2,X4] = X5`, `[X1,X4] = -[X2,X3] = X6` | `JX1 = X2`, `JX3 = -X4`, `JX5 = -X6` |
//!
//! `h5_J` orders its holomorphic frame as `X5 - iJX5, X1 - iJX1, X3 - iJX3`,
//! so the coframe `(a1, a2, a3)` is the dual of `(X5 + iX6, X1 - iX2, X3 + iX4)`.

use crate::error::ModelError;
use crate::exact::{Field, Matrix, Rational};

use super::{Bracket, LieModel};

pub fn catalog_names() -> Vec<&'static str> {
    vec!["torus2", "torus4", "torus6", "kodaira_thurston", "filiform4_J", "filiform4_Jprime", "h5_J"]
}

/// `J` with `J X_a = s X_b` and `J X_b = -s X_a` for each `(a, b, s)`, 1-based.
fn acs(dim: usize, pairs: &[(usize, usize, i64)]) -> Matrix<Rational> {
    let mut j = Matrix::zeros(dim, dim);
    for &(a, b, s) in pairs {
        let s = Rational::from_i64(s);
        j[(b - 1, a - 1)] = s.clone();
        j[(a - 1, b - 1)] = -s;
    }
    j
}

fn br(i: usize, j: usize, k: usize, c: i64) -> Bracket {
    Bracket { i: i - 1, j: j - 1, k: k - 1, c: Rational::from_i64(c) }
}

pub fn catalog(name: &str) -> Result<LieModel, ModelError> {
    let unknown = || ModelError::UnknownCatalog(name.to_string());
    if let Some(n) = name.strip_prefix("torus") {
        let dim: usize = n.parse().map_err(|_| unknown())?;
        if dim == 0 || dim % 2 != 0 || dim > 12 {
            return Err(unknown());
        }
        let pairs: Vec<_> = (0..dim / 2).map(|k| (2 * k + 1, 2 * k + 2, 1)).collect();
        return LieModel::new(name, dim, &[], acs(dim, &pairs));
    }
    match name {
        "kodaira_thurston" => {
            LieModel::new(name, 4, &[br(1, 2, 3, -1)], acs(4, &[(1, 4, 1), (2, 3, 1)]))
        }
        "filiform4_J" => LieModel::new(
            name,
            4,
            &[br(1, 2, 3, 1), br(1, 3, 4, 1)],
            acs(4, &[(1, 2, 1), (3, 4, 1)]),
        ),
        "filiform4_Jprime" => LieModel::new(
            name,
            4,
            &[br(1, 2, 3, 1), br(1, 3, 4, 1)],
            acs(4, &[(1, 4, 1), (2, 3, 1)]),
        ),
        "h5_J" => Ok(LieModel::new(
            name,
            6,
            &[br(1, 3, 5, 1), br(2, 4, 5, 1), br(1, 4, 6, 1), br(2, 3, 6, -1)],
            acs(6, &[(1, 2, 1), (3, 4, -1), (5, 6, -1)]),
        )?
        .with_holomorphic_frame(vec![5, 1, 3])),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn every_entry_loads() {
        for name in catalog_names() {
            let m = catalog(name).unwrap();
            assert_eq!(m.name(), name);
        }
        assert!(catalog("torus3").is_err());
        assert!(catalog("nope").is_err());
    }

    #[test]
    fn kodaira_thurston_shape() {
        let m = catalog("kodaira_thurston").unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.brackets().len(), 1);
        assert_eq!(*m.c(0, 1, 2), -Rational::one());
        assert!(m.c(1, 0, 2).is_one());
    }

    #[test]
    fn h5_structure() {
        let m = catalog("h5_J").unwrap();
        assert_eq!(m.dim(), 6);
        assert_eq!(m.holomorphic_frame(), Some(&[5, 1, 3][..]));
        // J X3 = -X4
        assert_eq!(m.j()[(3, 2)], -Rational::one());
        assert!(m.j()[(2, 3)].is_one());
        assert!(m.c(0, 2, 5).is_zero());
    }
}
