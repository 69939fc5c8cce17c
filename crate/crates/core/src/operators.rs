//! Graded commutators, Laplacians and the almost Kähler identity ledger.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::GeometryError;
use crate::exact::GaussScalar;
use crate::forms::{Bidegree, BlockOperator, Component, Form, Geometry};

/// Result of checking one identity, possibly a chain `A = B = C`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LedgerEntry {
    pub id: &'static str,
    pub statement: &'static str,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// A basis form on which the two sides of a failing equation differ.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// Which equation of the chain failed, counted from 0.
    pub link: usize,
    pub bidegree: Bidegree,
    pub form: Form,
    pub lhs: Form,
    pub rhs: Form,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityLedger {
    pub model: String,
    pub almost_kahler: bool,
    pub entries: Vec<LedgerEntry>,
    pub d_squared: Vec<crate::forms::RelationCheck>,
}

impl IdentityLedger {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds) && self.d_squared.iter().all(|r| r.holds)
    }

    pub fn entry(&self, id: &str) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.id == id)
    }
}

/// Identifiers of the ledger entries, in report order.
pub const IDENTITY_IDS: [&str; 21] = [
    "lefschetz_mu",
    "dual_lefschetz_mu_adjoint",
    "lefschetz_del",
    "dual_lefschetz_del_adjoint",
    "lefschetz_mu_adjoint",
    "dual_lefschetz_mu",
    "lefschetz_del_adjoint",
    "dual_lefschetz_del",
    "dual_lefschetz_d",
    "mu_bar_mu_adjoint",
    "mu_mu_bar_adjoint",
    "mu_bar_del_adjoint",
    "mu_del_bar_adjoint",
    "del_del_bar_adjoint",
    "del_bar_del_adjoint",
    "laplacian_mu_split",
    "laplacian_balance",
    "laplacian_d_expansion",
    "lefschetz_laplacians",
    "dual_lefschetz_laplacians",
    "star_adjoints",
];

struct Ops<'a> {
    geo: &'a Geometry,
    mb: &'a BlockOperator,
    db: &'a BlockOperator,
    dd: &'a BlockOperator,
    mu: &'a BlockOperator,
    mb_s: &'a BlockOperator,
    db_s: &'a BlockOperator,
    dd_s: &'a BlockOperator,
    mu_s: &'a BlockOperator,
    l: &'a BlockOperator,
    lam: &'a BlockOperator,
}

fn c(a: &BlockOperator, b: &BlockOperator) -> BlockOperator {
    a.commutator(b).expect("homogeneous operators")
}

fn i() -> GaussScalar {
    GaussScalar::i()
}

fn mi() -> GaussScalar {
    -GaussScalar::i()
}

impl Ops<'_> {
    fn zero(&self) -> BlockOperator {
        BlockOperator::zero(self.geo.m(), None)
    }

    fn lap(&self, comp: Component) -> BlockOperator {
        self.geo.component_laplacian(comp)
    }

    /// The chain of operators asserted equal by identity `id`.
    fn sides(&self, id: &str) -> Vec<(BlockOperator, BlockOperator)> {
        let Ops { geo, mb, db, dd, mu, mb_s, db_s, dd_s, mu_s, l, lam } = self;
        match id {
            "lefschetz_mu" => vec![(c(l, mb), self.zero()), (c(l, mu), self.zero())],
            "dual_lefschetz_mu_adjoint" => vec![(c(lam, mb_s), self.zero()), (c(lam, mu_s), self.zero())],
            "lefschetz_del" => vec![(c(l, db), self.zero()), (c(l, dd), self.zero())],
            "dual_lefschetz_del_adjoint" => vec![(c(lam, db_s), self.zero()), (c(lam, dd_s), self.zero())],
            "lefschetz_mu_adjoint" => vec![(c(l, mb_s), mu.scale(&i())), (c(l, mu_s), mb.scale(&mi()))],
            "dual_lefschetz_mu" => vec![(c(lam, mb), mu_s.scale(&i())), (c(lam, mu), mb_s.scale(&mi()))],
            "lefschetz_del_adjoint" => vec![(c(l, db_s), dd.scale(&mi())), (c(l, dd_s), db.scale(&i()))],
            "dual_lefschetz_del" => vec![(c(lam, db), dd_s.scale(&mi())), (c(lam, dd), db_s.scale(&i()))],
            "dual_lefschetz_d" => {
                let rhs = geo
                    .star()
                    .compose(&geo.weight_inverse())
                    .compose(geo.d())
                    .compose(&geo.weight())
                    .compose(geo.star());
                vec![(c(lam, geo.d()), rhs)]
            }
            "mu_bar_mu_adjoint" => vec![(c(mb, mu_s), self.zero())],
            "mu_mu_bar_adjoint" => vec![(c(mu, mb_s), self.zero())],
            "mu_bar_del_adjoint" => vec![(c(mb, dd_s), c(db, mu_s))],
            "mu_del_bar_adjoint" => vec![(c(mu, db_s), c(dd, mb_s))],
            "del_del_bar_adjoint" => vec![(c(dd, db_s), c(mb_s, db).add(&c(mu, dd_s)))],
            "del_bar_del_adjoint" => vec![(c(db, dd_s), c(mu_s, dd).add(&c(mb, db_s)))],
            "laplacian_mu_split" => {
                let lhs = geo.laplacian(&mb.add(mu));
                vec![(lhs, self.lap(Component::MuBar).add(&self.lap(Component::Mu)))]
            }
            "laplacian_balance" => vec![(
                self.lap(Component::DelBar).add(&self.lap(Component::Mu)),
                self.lap(Component::Del).add(&self.lap(Component::MuBar)),
            )],
            "laplacian_d_expansion" => {
                let inner = self
                    .lap(Component::DelBar)
                    .add(&self.lap(Component::Mu))
                    .add(&c(mb, dd_s))
                    .add(&c(mu, db_s))
                    .add(&c(dd, db_s))
                    .add(&c(db, dd_s));
                vec![(geo.laplacian(geo.d()), inner.scale(&GaussScalar::from(2)))]
            }
            "lefschetz_laplacians" => chain(vec![
                c(l, &self.lap(Component::DelBar)),
                c(l, &self.lap(Component::MuBar)),
                c(l, &self.lap(Component::Del)).neg(),
                c(l, &self.lap(Component::Mu)).neg(),
                c(db, dd).scale(&mi()),
                c(mb, mu).scale(&i()),
            ]),
            "dual_lefschetz_laplacians" => chain(vec![
                c(lam, &self.lap(Component::DelBar)),
                c(lam, &self.lap(Component::MuBar)),
                c(lam, &self.lap(Component::Del)).neg(),
                c(lam, &self.lap(Component::Mu)).neg(),
                c(db_s, dd_s).scale(&mi()),
                c(mb_s, mu_s).scale(&i()),
            ]),
            "star_adjoints" => {
                let s = geo.star();
                let conj = |x: &BlockOperator| s.compose(x).compose(s).neg();
                vec![((*mb_s).clone(), conj(mu)), ((*db_s).clone(), conj(dd)), ((*dd_s).clone(), conj(db)), ((*mu_s).clone(), conj(mb))]
            }
            other => unreachable!("unknown identity {other}"),
        }
    }
}

fn chain(ops: Vec<BlockOperator>) -> Vec<(BlockOperator, BlockOperator)> {
    ops.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
}

pub fn statement(id: &str) -> &'static str {
    match id {
        "lefschetz_mu" => "[L,μ̄] = [L,μ] = 0",
        "dual_lefschetz_mu_adjoint" => "[Λ,μ̄*] = [Λ,μ*] = 0",
        "lefschetz_del" => "[L,∂̄] = [L,∂] = 0",
        "dual_lefschetz_del_adjoint" => "[Λ,∂̄*] = [Λ,∂*] = 0",
        "lefschetz_mu_adjoint" => "[L,μ̄*] = iμ, [L,μ*] = -iμ̄",
        "dual_lefschetz_mu" => "[Λ,μ̄] = iμ*, [Λ,μ] = -iμ̄*",
        "lefschetz_del_adjoint" => "[L,∂̄*] = -i∂, [L,∂*] = i∂̄",
        "dual_lefschetz_del" => "[Λ,∂̄] = -i∂*, [Λ,∂] = i∂̄*",
        "dual_lefschetz_d" => "[Λ,d] = ⋆𝕀⁻¹d𝕀⋆",
        "mu_bar_mu_adjoint" => "[μ̄,μ*] = 0",
        "mu_mu_bar_adjoint" => "[μ,μ̄*] = 0",
        "mu_bar_del_adjoint" => "[μ̄,∂*] = [∂̄,μ*]",
        "mu_del_bar_adjoint" => "[μ,∂̄*] = [∂,μ̄*]",
        "del_del_bar_adjoint" => "[∂,∂̄*] = [μ̄*,∂̄] + [μ,∂*]",
        "del_bar_del_adjoint" => "[∂̄,∂*] = [μ*,∂] + [μ̄,∂̄*]",
        "laplacian_mu_split" => "Δ_{μ̄+μ} = Δ_μ̄ + Δ_μ",
        "laplacian_balance" => "Δ_∂̄ + Δ_μ = Δ_∂ + Δ_μ̄",
        "laplacian_d_expansion" => "Δ_d = 2(Δ_∂̄ + Δ_μ + [μ̄,∂*] + [μ,∂̄*] + [∂,∂̄*] + [∂̄,∂*])",
        "lefschetz_laplacians" => "[L,Δ_∂̄] = [L,Δ_μ̄] = -[L,Δ_∂] = -[L,Δ_μ] = -i[∂̄,∂] = i[μ̄,μ]",
        "dual_lefschetz_laplacians" => "[Λ,Δ_∂̄] = [Λ,Δ_μ̄] = -[Λ,Δ_∂] = -[Λ,Δ_μ] = -i[∂̄*,∂*] = i[μ̄*,μ*]",
        "star_adjoints" => "μ̄* = -⋆μ⋆, ∂̄* = -⋆∂⋆, ∂* = -⋆∂̄⋆, μ* = -⋆μ̄⋆",
        other => unreachable!("unknown identity {other}"),
    }
}

fn check(ops: &Ops<'_>, id: &'static str) -> LedgerEntry {
    let geo = ops.geo;
    let basis = geo.basis();
    let mut witness = None;
    for (link, (lhs, rhs)) in ops.sides(id).into_iter().enumerate() {
        if let Some(diff) = lhs.first_difference(&rhs, basis) {
            let form = Form::from_block(basis, diff.source, &unit(basis.dim(diff.source), diff.column));
            witness = Some(Witness {
                link,
                bidegree: diff.source,
                lhs: geo.apply(&lhs, &form),
                rhs: geo.apply(&rhs, &form),
                form,
            });
            break;
        }
    }
    LedgerEntry { id, statement: statement(id), holds: witness.is_none(), witness }
}

fn unit(n: usize, k: usize) -> Vec<GaussScalar> {
    use num_traits::{One, Zero};
    (0..n).map(|j| if j == k { GaussScalar::one() } else { GaussScalar::zero() }).collect()
}

/// Checks every identity of [`IDENTITY_IDS`] as an exact blockwise equation.
/// Failures are returned as data with a witness form.
pub fn verify_identities(geo: &Geometry) -> IdentityLedger {
    let ops = Ops {
        geo,
        mb: geo.component(Component::MuBar),
        db: geo.component(Component::DelBar),
        dd: geo.component(Component::Del),
        mu: geo.component(Component::Mu),
        mb_s: geo.component_adjoint(Component::MuBar),
        db_s: geo.component_adjoint(Component::DelBar),
        dd_s: geo.component_adjoint(Component::Del),
        mu_s: geo.component_adjoint(Component::Mu),
        l: geo.l(),
        lam: geo.lambda(),
    };
    let entries = IDENTITY_IDS.par_iter().map(|id| check(&ops, id)).collect();
    IdentityLedger {
        model: geo.model().name().to_string(),
        almost_kahler: geo.is_almost_kahler(),
        entries,
        d_squared: geo.d_squared_relations().to_vec(),
    }
}

/// Which of the two Laplacian sums kills the witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaplacianWitness {
    pub bidegree: Bidegree,
    pub form: Form,
    /// `true` if the form lies in `ker(Δ_∂̄ + Δ_μ)` but not `ker(Δ_∂ + Δ_μ̄)`.
    pub in_first_kernel: bool,
}

/// A pure form harmonic for one of `Δ_∂̄ + Δ_μ`, `Δ_∂ + Δ_μ̄` but not the other.
/// On an almost Kähler model the two sums coincide, so a witness shows the
/// metric of the model is not almost Kähler.
pub fn laplacian_symmetry_witness(geo: &Geometry) -> Result<Option<LaplacianWitness>, GeometryError> {
    use crate::exact::kernel_intersection;
    let first = geo.component_laplacian(Component::DelBar).add(&geo.component_laplacian(Component::Mu));
    let second = geo.component_laplacian(Component::Del).add(&geo.component_laplacian(Component::MuBar));
    let basis = geo.basis();
    for pq in basis.bidegrees() {
        let n = basis.dim(pq);
        let zero = crate::exact::Matrix::zeros(0, n);
        let stacked = |op: &BlockOperator| -> Vec<crate::GMatrix> {
            op.blocks().filter(|((s, _), _)| *s == pq).map(|(_, b)| b.clone()).collect()
        };
        for (a, b, in_first) in [(&first, &second, true), (&second, &first, false)] {
            let mut blocks = stacked(a);
            blocks.push(zero.clone());
            let refs: Vec<&crate::GMatrix> = blocks.iter().collect();
            for v in kernel_intersection(&refs)? {
                let form = Form::from_block(basis, pq, &v);
                if !geo.apply(b, &form).is_zero() {
                    return Ok(Some(LaplacianWitness { bidegree: pq, form, in_first_kernel: in_first }));
                }
            }
        }
    }
    Ok(None)
}
