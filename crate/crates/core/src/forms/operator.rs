use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::GeometryError;
use crate::exact::{GaussScalar, Matrix};

use super::basis::{Basis, Bidegree};
use super::form::Form;

pub type GMatrix = Matrix<GaussScalar>;

/// Linear operator on the bigraded algebra, stored as one matrix per pair of
/// (source, target) bidegrees. Missing blocks are zero.
///
/// `degree` is the total degree shift; it is `None` for operators such as
/// the Hodge star that do not shift degree uniformly.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOperator {
    m: usize,
    degree: Option<i32>,
    blocks: BTreeMap<(Bidegree, Bidegree), GMatrix>,
}

/// First basis vector on which two operators disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Difference {
    pub source: Bidegree,
    pub column: usize,
}

impl BlockOperator {
    pub fn zero(m: usize, degree: Option<i32>) -> Self {
        BlockOperator { m, degree, blocks: BTreeMap::new() }
    }

    /// Identity on every block of the algebra.
    pub fn identity(basis: &Basis) -> Self {
        Self::diagonal(basis, 0, |_| GaussScalar::one())
    }

    /// `f(p, q)` times the identity on each `A^{p,q}`.
    pub fn diagonal(basis: &Basis, degree: i32, f: impl Fn(Bidegree) -> GaussScalar) -> Self {
        let mut op = Self::zero(basis.m(), Some(degree));
        for pq in basis.bidegrees() {
            let n = basis.dim(pq);
            op.add_block(pq, pq, Matrix::identity(n).scale(&f(pq)));
        }
        op.prune()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> Option<i32> {
        self.degree
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(Bidegree, Bidegree), &GMatrix)> {
        self.blocks.iter()
    }

    pub fn block(&self, source: Bidegree, target: Bidegree) -> Option<&GMatrix> {
        self.blocks.get(&(source, target))
    }

    /// Adds `mat` into the block `source → target`.
    pub fn add_block(&mut self, source: Bidegree, target: Bidegree, mat: GMatrix) {
        match self.blocks.get_mut(&(source, target)) {
            Some(existing) => *existing = existing.add(&mat),
            None => {
                self.blocks.insert((source, target), mat);
            }
        }
    }

    /// Drops blocks that are identically zero.
    pub fn prune(mut self) -> Self {
        self.blocks.retain(|_, b| !b.is_zero());
        self
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BlockOperator) -> BlockOperator {
        let degree = match (self.degree, other.degree) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let mut out = BlockOperator::zero(self.m, degree);
        for (&(s, t), b) in &other.blocks {
            for (&(t2, u), a) in self.blocks.range((t, (0, 0))..) {
                if t2 != t {
                    break;
                }
                out.add_block(s, u, a.mul(b));
            }
        }
        out.prune()
    }

    pub fn add(&self, other: &BlockOperator) -> BlockOperator {
        let degree = if self.degree == other.degree { self.degree } else { None };
        let mut out = BlockOperator { m: self.m, degree, blocks: self.blocks.clone() };
        for (&(s, t), b) in &other.blocks {
            out.add_block(s, t, b.clone());
        }
        out.prune()
    }

    pub fn scale(&self, c: &GaussScalar) -> BlockOperator {
        let blocks = self.blocks.iter().map(|(k, b)| (*k, b.scale(c))).collect();
        BlockOperator { m: self.m, degree: self.degree, blocks }.prune()
    }

    pub fn neg(&self) -> BlockOperator {
        self.scale(&-GaussScalar::one())
    }

    pub fn sub(&self, other: &BlockOperator) -> BlockOperator {
        self.add(&other.neg())
    }

    /// Graded commutator `[A, B] = AB - (-1)^{deg A · deg B} BA`.
    pub fn commutator(&self, other: &BlockOperator) -> Result<BlockOperator, GeometryError> {
        let (Some(a), Some(b)) = (self.degree, other.degree) else {
            return Err(GeometryError::InhomogeneousOperator);
        };
        let ab = self.compose(other);
        let ba = other.compose(self);
        Ok(if (a * b).rem_euclid(2) == 1 { ab.add(&ba) } else { ab.sub(&ba) })
    }

    pub fn apply(&self, basis: &Basis, form: &Form) -> Form {
        let mut out = Form::zero(self.m);
        for pq in form.bidegrees() {
            let v = form.block_vector(basis, pq);
            for (&(_, t), b) in self.blocks.range((pq, (0, 0))..=(pq, (usize::MAX, usize::MAX))) {
                out = out.add(&Form::from_block(basis, t, &b.mul_vec(&v)));
            }
        }
        out
    }

    /// First disagreement with `other`, scanning source bidegrees by total
    /// degree, then `q`, and columns in basis order.
    pub fn first_difference(&self, other: &BlockOperator, basis: &Basis) -> Option<Difference> {
        let diff = self.sub(other);
        for src in basis.bidegrees() {
            let mut cols: Vec<usize> = diff
                .blocks
                .iter()
                .filter(|((s, _), _)| *s == src)
                .filter_map(|(_, b)| (0..b.cols()).find(|&c| b.column(c).iter().any(|x| !x.is_zero())))
                .collect();
            cols.sort_unstable();
            if let Some(&column) = cols.first() {
                return Some(Difference { source: src, column });
            }
        }
        None
    }

    /// Blockwise equality, treating missing blocks as zero.
    pub fn same_as(&self, other: &BlockOperator) -> bool {
        self.sub(other).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussScalar {
        s.parse().unwrap()
    }

    fn shift(basis: &Basis, dp: usize) -> BlockOperator {
        // sends the first basis vector of A^{p,q} to the first of A^{p+dp,q}
        let mut op = BlockOperator::zero(basis.m(), Some(dp as i32));
        for (p, q) in basis.bidegrees() {
            if p + dp <= basis.m() {
                let t = (p + dp, q);
                let mut b = Matrix::zeros(basis.dim(t), basis.dim((p, q)));
                b[(0, 0)] = GaussScalar::one();
                op.add_block((p, q), t, b);
            }
        }
        op
    }

    #[test]
    fn composition_and_commutators() {
        let basis = Basis::new(2);
        let id = BlockOperator::identity(&basis);
        let s = shift(&basis, 1);
        assert!(id.compose(&s).same_as(&s));
        assert!(s.compose(&id).same_as(&s));
        assert_eq!(s.compose(&s).degree(), Some(2));
        // [id, s] = 0 since id has degree 0
        assert!(id.commutator(&s).unwrap().is_zero());
        // odd-odd commutator is the anticommutator
        let ss = s.commutator(&s).unwrap();
        assert!(ss.same_as(&s.compose(&s).scale(&g("2"))));
    }

    #[test]
    fn apply_and_difference() {
        let basis = Basis::new(2);
        let s = shift(&basis, 1);
        let one = Form::one(2);
        assert_eq!(s.apply(&basis, &one), Form::a(2, 1));
        let z = BlockOperator::zero(2, Some(1));
        let d = s.first_difference(&z, &basis).unwrap();
        assert_eq!(d, Difference { source: (0, 0), column: 0 });
        assert!(s.first_difference(&s, &basis).is_none());
    }

    #[test]
    fn inhomogeneous_commutator_is_rejected() {
        let basis = Basis::new(1);
        let a = BlockOperator::zero(1, None);
        assert!(a.commutator(&BlockOperator::identity(&basis)).is_err());
    }
}
