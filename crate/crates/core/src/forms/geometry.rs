use num_traits::Zero;
use serde::Serialize;

use crate::error::{GeometryError, ModelError};
use crate::exact::GaussScalar;
use crate::model::{validate, LieModel, Nijenhuis, StructureReport};

use super::algebra::BigradedAlgebra;
use super::basis::Basis;
use super::form::Form;
use super::operator::BlockOperator;

/// The four pieces of `d = μ̄ + ∂̄ + ∂ + μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    MuBar,
    DelBar,
    Del,
    Mu,
}

impl Component {
    pub const ALL: [Component; 4] = [Component::MuBar, Component::DelBar, Component::Del, Component::Mu];

    pub fn shift(self) -> (i32, i32) {
        match self {
            Component::MuBar => (-1, 2),
            Component::DelBar => (0, 1),
            Component::Del => (1, 0),
            Component::Mu => (2, -1),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Component::MuBar => "μ̄",
            Component::DelBar => "∂̄",
            Component::Del => "∂",
            Component::Mu => "μ",
        }
    }

    pub fn conjugate(self) -> Component {
        match self {
            Component::MuBar => Component::Mu,
            Component::DelBar => Component::Del,
            Component::Del => Component::DelBar,
            Component::Mu => Component::MuBar,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Outcome of one of the seven bidegree pieces of `d² = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
    /// Some summand is a nonzero operator, so the relation is a real cancellation.
    pub nontrivial: bool,
}

/// Scalar `λ` with `(μ̄ + μ)(x_k) = λ · x_k∘N` for every frame 1-form, if one exists.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NijenhuisFit {
    pub scalar: Option<GaussScalar>,
    pub consistent: bool,
}

/// Everything built from an almost Hermitian model: the bigraded algebra, the
/// components of `d` and their adjoints, the Hodge star and the Lefschetz triple.
#[derive(Clone, Debug)]
pub struct Geometry {
    model: LieModel,
    structure: StructureReport,
    algebra: BigradedAlgebra,
    components: [BlockOperator; 4],
    adjoints: [BlockOperator; 4],
    d: BlockOperator,
    d_adjoint: BlockOperator,
    star: BlockOperator,
    l: BlockOperator,
    lambda: BlockOperator,
    relations: Vec<RelationCheck>,
}

impl Geometry {
    pub fn new(model: &LieModel) -> Result<Self, GeometryError> {
        let structure = validate(model);
        if let Some((i, j, k)) = structure.jacobi_violation {
            return Err(ModelError::Jacobi(i, j, k).into());
        }
        if !structure.acs_ok {
            return Err(ModelError::NotAlmostComplex.into());
        }
        if !structure.compatible_ok {
            return Err(ModelError::NotCompatible.into());
        }
        let algebra = BigradedAlgebra::build(model)?;
        let components = algebra.differential_components();
        let adjoints = std::array::from_fn(|k| algebra.adjoint(&components[k]));
        let d = components.iter().fold(BlockOperator::zero(algebra.m(), Some(1)), |acc, c| acc.add(c));
        let d_adjoint = algebra.adjoint(&d);
        let star = algebra.hodge_star();
        let l = algebra.lefschetz();
        let lambda = algebra.adjoint(&l);
        let relations = d_squared_relations(&components);
        if let Some(bad) = relations.iter().find(|r| !r.holds) {
            return Err(GeometryError::Internal(format!("d² relation {} fails", bad.relation)));
        }
        Ok(Geometry {
            model: model.clone(),
            structure,
            algebra,
            components,
            adjoints,
            d,
            d_adjoint,
            star,
            l,
            lambda,
            relations,
        })
    }

    pub fn model(&self) -> &LieModel {
        &self.model
    }

    pub fn structure(&self) -> &StructureReport {
        &self.structure
    }

    pub fn is_almost_kahler(&self) -> bool {
        self.structure.almost_kahler
    }

    pub fn algebra(&self) -> &BigradedAlgebra {
        &self.algebra
    }

    pub fn basis(&self) -> &Basis {
        self.algebra.basis()
    }

    pub fn m(&self) -> usize {
        self.algebra.m()
    }

    pub fn component(&self, c: Component) -> &BlockOperator {
        &self.components[c.index()]
    }

    pub fn component_adjoint(&self, c: Component) -> &BlockOperator {
        &self.adjoints[c.index()]
    }

    pub fn d(&self) -> &BlockOperator {
        &self.d
    }

    pub fn d_adjoint(&self) -> &BlockOperator {
        &self.d_adjoint
    }

    pub fn star(&self) -> &BlockOperator {
        &self.star
    }

    pub fn l(&self) -> &BlockOperator {
        &self.l
    }

    pub fn lambda(&self) -> &BlockOperator {
        &self.lambda
    }

    /// `H = [L, Λ]`.
    pub fn h(&self) -> BlockOperator {
        self.l.commutator(&self.lambda).expect("L and Λ have a degree")
    }

    pub fn weight(&self) -> BlockOperator {
        self.algebra.weight()
    }

    pub fn weight_inverse(&self) -> BlockOperator {
        self.algebra.weight_inverse()
    }

    pub fn omega(&self) -> &Form {
        self.algebra.omega()
    }

    pub fn d_squared_relations(&self) -> &[RelationCheck] {
        &self.relations
    }

    pub fn adjoint(&self, op: &BlockOperator) -> BlockOperator {
        self.algebra.adjoint(op)
    }

    /// `Δ_δ = δδ* + δ*δ`.
    pub fn laplacian(&self, delta: &BlockOperator) -> BlockOperator {
        let adj = self.adjoint(delta);
        delta.compose(&adj).add(&adj.compose(delta))
    }

    pub fn component_laplacian(&self, c: Component) -> BlockOperator {
        let (delta, adj) = (self.component(c), self.component_adjoint(c));
        delta.compose(adj).add(&adj.compose(delta))
    }

    pub fn apply(&self, op: &BlockOperator, form: &Form) -> Form {
        op.apply(self.basis(), form)
    }

    /// Compares `(μ̄ + μ)(x_k)` with the dual Nijenhuis 2-forms `x_k∘N`.
    pub fn nijenhuis_fit(&self) -> NijenhuisFit {
        let n = self.model.dim();
        let nij = Nijenhuis::of(&self.model);
        let mu = self.component(Component::MuBar).add(self.component(Component::Mu));
        let mut scalar: Option<GaussScalar> = None;
        let mut consistent = true;
        for k in 0..n {
            let xk = crate::forms::real::RealForm::from([(1 << k, crate::exact::Rational::from_integer(1.into()))]);
            let lhs = self.apply(&mu, &self.algebra.from_real(&xk));
            let rhs = self.algebra.from_real(&nij.dual(k));
            match (lhs.is_zero(), rhs.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => {
                    consistent = false;
                    continue;
                }
                _ => {}
            }
            let (&mask, r) = rhs.terms().iter().next().expect("nonzero");
            let lambda = lhs.coefficient(mask) / r.clone();
            if lambda.is_zero() || rhs.scale(&lambda) != lhs {
                consistent = false;
                continue;
            }
            match &scalar {
                Some(s) if *s != lambda => consistent = false,
                Some(_) => {}
                None => scalar = Some(lambda),
            }
        }
        NijenhuisFit { scalar, consistent }
    }
}

fn d_squared_relations(c: &[BlockOperator; 4]) -> Vec<RelationCheck> {
    let [mb, db, dd, mu] = c;
    let terms: Vec<(&str, Vec<(&BlockOperator, &BlockOperator)>)> = vec![
        ("μ̄² = 0", vec![(mb, mb)]),
        ("μ̄∂̄ + ∂̄μ̄ = 0", vec![(mb, db), (db, mb)]),
        ("μ̄∂ + ∂μ̄ + ∂̄² = 0", vec![(mb, dd), (dd, mb), (db, db)]),
        ("μμ̄ + ∂∂̄ + ∂̄∂ + μ̄μ = 0", vec![(mu, mb), (dd, db), (db, dd), (mb, mu)]),
        ("μ∂̄ + ∂̄μ + ∂² = 0", vec![(mu, db), (db, mu), (dd, dd)]),
        ("μ∂ + ∂μ = 0", vec![(mu, dd), (dd, mu)]),
        ("μ² = 0", vec![(mu, mu)]),
    ];
    terms
        .into_iter()
        .map(|(name, pairs)| {
            let products: Vec<BlockOperator> = pairs.iter().map(|(a, b)| a.compose(b)).collect();
            let nontrivial = products.iter().any(|p| !p.is_zero());
            let sum = products.iter().fold(BlockOperator::zero(mb.m(), Some(2)), |acc, p| acc.add(p));
            RelationCheck { relation: name.to_string(), holds: sum.is_zero(), nontrivial }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Matrix;
    use crate::model::catalog;

    fn g(s: &str) -> GaussScalar {
        s.parse().unwrap()
    }

    fn geo(name: &str) -> Geometry {
        Geometry::new(&catalog(name).unwrap()).unwrap()
    }

    #[test]
    fn torus_has_zero_differential() {
        let t = geo("torus4");
        assert!(t.d().is_zero());
        assert!(t.d_squared_relations().iter().all(|r| r.holds && !r.nontrivial));
    }

    #[test]
    fn filiform_differentials() {
        let f = geo("filiform4_J");
        let m = 2;
        let (a, b) = (Form::a(m, 1), Form::a(m, 2));
        let (ab_, bb_) = (Form::a_bar(m, 1), Form::a_bar(m, 2));
        let half_over_i = g("-1/2i");
        let ap = |c: Component, x: &Form| f.apply(f.component(c), x);
        // μ̄b = (1/2i) ā b̄
        assert_eq!(ap(Component::MuBar, &b), ab_.wedge(&bb_).scale(&half_over_i));
        // ∂̄b = (1/2i)(a b̄ − b ā) − i a ā
        let expected = a.wedge(&bb_).sub(&b.wedge(&ab_)).scale(&half_over_i).sub(&a.wedge(&ab_).scale(&g("i")));
        assert_eq!(ap(Component::DelBar, &b), expected);
        // ∂b = (1/2i) a b
        assert_eq!(ap(Component::Del, &b), a.wedge(&b).scale(&half_over_i));
        assert!(ap(Component::Mu, &b).is_zero());
        for c in Component::ALL {
            assert!(ap(c, &a).is_zero());
        }
        let mixed = &f.d_squared_relations()[4];
        assert!(mixed.holds && mixed.nontrivial, "{mixed:?}");
    }

    #[test]
    fn h5_first_coframe_differential() {
        // with the true dual coframe, da = ∂a = -2 b c
        let h = geo("h5_J");
        let a = Form::a(3, 1);
        let bc = Form::a(3, 2).wedge(&Form::a(3, 3));
        let da = h.algebra().d(&a);
        assert_eq!(da, bc.scale(&g("-2")));
        assert_eq!(h.apply(h.component(Component::Del), &a), da);
        assert!(h.component(Component::MuBar).is_zero() && h.component(Component::Mu).is_zero());
    }

    #[test]
    fn conjugation_intertwines_components() {
        for name in ["kodaira_thurston", "filiform4_J", "h5_J"] {
            let geo = geo(name);
            let basis = geo.basis().clone();
            for pq in basis.bidegrees() {
                for &mask in basis.block(pq) {
                    let x = Form::monomial(geo.m(), mask, g("2-i"));
                    for c in Component::ALL {
                        let lhs = geo.apply(geo.component(c), &x.conj()).conj();
                        let rhs = geo.apply(geo.component(c.conjugate()), &x);
                        assert_eq!(lhs, rhs, "{name} {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn sl2_relations() {
        for name in ["torus4", "kodaira_thurston", "filiform4_Jprime", "h5_J"] {
            let geo = geo(name);
            let basis = geo.basis().clone();
            let h = geo.h();
            let expected = BlockOperator::diagonal(&basis, 0, |(p, q)| {
                GaussScalar::from(p as i64 + q as i64 - geo.m() as i64)
            });
            assert!(h.same_as(&expected), "{name}");
            let two = g("2");
            assert!(h.commutator(geo.l()).unwrap().same_as(&geo.l().scale(&two)));
            assert!(h.commutator(geo.lambda()).unwrap().same_as(&geo.lambda().scale(&-two)));
        }
    }

    #[test]
    fn star_squares_to_sign_and_lambda_is_conjugated_l() {
        for name in ["kodaira_thurston", "h5_J", "torus6"] {
            let geo = geo(name);
            let basis = geo.basis().clone();
            let ss = geo.star().compose(geo.star());
            let sign = BlockOperator::diagonal(&basis, 0, |(p, q)| GaussScalar::from(if (p + q) % 2 == 0 { 1 } else { -1 }));
            assert!(ss.same_as(&sign), "{name}");
            // Λ = ⋆⁻¹ L ⋆
            let star_inv = sign.compose(geo.star());
            assert!(star_inv.compose(geo.l()).compose(geo.star()).same_as(geo.lambda()), "{name}");
        }
    }

    #[test]
    fn star_of_omega_powers() {
        let geo = geo("h5_J");
        let w = geo.omega();
        // ⋆ω^k = k!/(m−k)! ω^{m−k} with m = 3
        assert_eq!(geo.apply(geo.star(), &Form::one(3)), w.power(3).scale(&g("1/6")));
        assert_eq!(geo.apply(geo.star(), w), w.power(2).scale(&g("1/2")));
        let kt = super::tests::geo("kodaira_thurston");
        assert_eq!(kt.apply(kt.star(), kt.omega()), *kt.omega());
    }

    #[test]
    fn adjoint_pairing_and_star_formulas() {
        for name in ["kodaira_thurston", "filiform4_J", "h5_J"] {
            let geo = geo(name);
            let basis = geo.basis().clone();
            for c in Component::ALL {
                let delta = geo.component(c);
                let adj = geo.component_adjoint(c);
                for (&(s, t), blk) in delta.blocks() {
                    // ⟨δα, β⟩ = ⟨α, δ*β⟩ on basis pairs
                    for (ca, &ea) in basis.block(s).iter().enumerate() {
                        let alpha = Form::monomial(geo.m(), ea, GaussScalar::from(1));
                        let da = Form::from_block(&basis, t, &blk.column(ca));
                        for &eb in basis.block(t) {
                            let beta = Form::monomial(geo.m(), eb, g("1+i"));
                            assert_eq!(geo.algebra().inner(&da, &beta), geo.algebra().inner(&alpha, &geo.apply(adj, &beta)));
                        }
                    }
                }
                // δ̄* = −⋆δ⋆
                let conj_adj = geo.component_adjoint(c.conjugate());
                let via_star = geo.star().compose(delta).compose(geo.star()).neg();
                assert!(conj_adj.same_as(&via_star), "{name} {c:?}");
                assert!(geo.adjoint(adj).same_as(delta));
            }
        }
    }

    #[test]
    fn integrability_matches_vanishing_mu() {
        for name in ["torus4", "kodaira_thurston", "filiform4_J", "filiform4_Jprime", "h5_J"] {
            let geo = geo(name);
            let mu_zero = geo.component(Component::Mu).is_zero() && geo.component(Component::MuBar).is_zero();
            assert_eq!(mu_zero, geo.structure().integrable, "{name}");
        }
    }

    #[test]
    fn nijenhuis_scalar_is_uniform() {
        let fit = geo("filiform4_J").nijenhuis_fit();
        assert!(fit.consistent);
        assert!(fit.scalar.is_some());
        let kt = geo("kodaira_thurston").nijenhuis_fit();
        assert!(kt.consistent);
        assert_eq!(kt.scalar, fit.scalar);
        assert_eq!(geo("torus4").nijenhuis_fit(), NijenhuisFit { scalar: None, consistent: true });
    }

    #[test]
    fn weight_operator() {
        let geo = geo("kodaira_thurston");
        let w = geo.weight();
        let basis = geo.basis();
        assert_eq!(w.block((1, 1), (1, 1)).unwrap(), &Matrix::identity(4));
        assert_eq!(w.block((2, 0), (2, 0)).unwrap(), &Matrix::identity(1).scale(&g("-1")));
        assert!(w.compose(&geo.weight_inverse()).same_as(&BlockOperator::identity(basis)));
        // ⋆ 𝕀⁻¹ ∂ 𝕀 ⋆ = i ∂̄*
        let lhs = geo.star().compose(&geo.weight_inverse()).compose(geo.component(Component::Del)).compose(&w).compose(geo.star());
        assert!(lhs.same_as(&geo.component_adjoint(Component::DelBar).scale(&g("i"))));
    }
}
