use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::exact::{Field, GaussScalar};
use crate::exterior::{self, Mask, Sparse};

use super::basis::{bidegree, monomial_name, parse_monomial, Basis, Bidegree};

/// A complex invariant form in the coframe `a_1..a_m, ā_1..ā_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    m: usize,
    terms: Sparse<GaussScalar>,
}

impl Form {
    pub fn zero(m: usize) -> Self {
        Form { m, terms: Sparse::new() }
    }

    pub fn one(m: usize) -> Self {
        Form::monomial(m, 0, GaussScalar::one())
    }

    pub fn monomial(m: usize, mask: Mask, c: GaussScalar) -> Self {
        let mut terms = Sparse::new();
        exterior::accumulate(&mut terms, mask, c);
        Form { m, terms }
    }

    /// The (1,0)-generator `a_k` (`k` is 1-based).
    pub fn a(m: usize, k: usize) -> Self {
        Form::monomial(m, 1 << (k - 1), GaussScalar::one())
    }

    /// The (0,1)-generator `ā_k` (`k` is 1-based).
    pub fn a_bar(m: usize, k: usize) -> Self {
        Form::monomial(m, 1 << (k - 1 + m), GaussScalar::one())
    }

    pub fn from_sparse(m: usize, mut terms: Sparse<GaussScalar>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        Form { m, terms }
    }

    /// Form with coefficient vector `v` on the basis of `A^{pq}`.
    pub fn from_block(basis: &Basis, pq: Bidegree, v: &[GaussScalar]) -> Self {
        let mut terms = Sparse::new();
        for (&mask, c) in basis.block(pq).iter().zip(v) {
            exterior::accumulate(&mut terms, mask, c.clone());
        }
        Form { m: basis.m(), terms }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &Sparse<GaussScalar> {
        &self.terms
    }

    pub fn coefficient(&self, mask: Mask) -> GaussScalar {
        self.terms.get(&mask).cloned().unwrap_or_else(GaussScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Bidegrees with a nonzero component, ascending.
    pub fn bidegrees(&self) -> Vec<Bidegree> {
        let mut out: Vec<Bidegree> = self.terms.keys().map(|&k| bidegree(self.m, k)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The single bidegree of a nonzero pure form.
    pub fn pure_bidegree(&self) -> Option<Bidegree> {
        match self.bidegrees().as_slice() {
            [pq] => Some(*pq),
            _ => None,
        }
    }

    pub fn component(&self, pq: Bidegree) -> Form {
        let terms = self
            .terms
            .iter()
            .filter(|(&k, _)| bidegree(self.m, k) == pq)
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        Form { m: self.m, terms }
    }

    /// Coefficients of the `A^{pq}` component on the canonical basis.
    pub fn block_vector(&self, basis: &Basis, pq: Bidegree) -> Vec<GaussScalar> {
        basis.block(pq).iter().map(|&mask| self.coefficient(mask)).collect()
    }

    pub fn conj(&self) -> Form {
        let m = self.m;
        let mut terms = Sparse::new();
        for (&mask, c) in &self.terms {
            let (p, q) = bidegree(m, mask);
            let low = mask & ((1 << m) - 1);
            let swapped = (mask >> m) | (low << m);
            let c = c.conj();
            terms.insert(swapped, if (p * q) % 2 == 1 { -c } else { c });
        }
        Form { m, terms }
    }

    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.m, other.m, "forms over different algebras");
        Form { m: self.m, terms: exterior::wedge_forms(&self.terms, &other.terms) }
    }

    pub fn power(&self, k: usize) -> Form {
        Form { m: self.m, terms: exterior::power(&self.terms, k) }
    }

    pub fn scale(&self, s: &GaussScalar) -> Form {
        let mut out = Sparse::new();
        exterior::add_scaled(&mut out, &self.terms, s);
        Form { m: self.m, terms: out }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut terms = self.terms.clone();
        exterior::add_scaled(&mut terms, &other.terms, &GaussScalar::one());
        Form { m: self.m, terms }
    }

    pub fn sub(&self, other: &Form) -> Form {
        let mut terms = self.terms.clone();
        exterior::add_scaled(&mut terms, &other.terms, &-GaussScalar::one());
        Form { m: self.m, terms }
    }

    /// JSON object `{"p,q": {"a1^a2~": "coef"}}`.
    pub fn to_json_map(&self) -> BTreeMap<String, BTreeMap<String, String>> {
        let mut out: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for (&mask, c) in &self.terms {
            let (p, q) = bidegree(self.m, mask);
            out.entry(format!("{p},{q}")).or_default().insert(monomial_name(self.m, mask), c.to_string());
        }
        out
    }

    /// Parses the JSON layout of [`Form::to_json_map`]; the `p,q` keys are
    /// checked against the monomials they contain.
    pub fn from_json_str(m: usize, text: &str) -> Result<Form, String> {
        let raw: BTreeMap<String, BTreeMap<String, String>> =
            serde_json::from_str(text).map_err(|e| e.to_string())?;
        let mut terms = Sparse::new();
        for (key, monomials) in raw {
            let (p, q) = key
                .split_once(',')
                .and_then(|(p, q)| Some((p.trim().parse::<usize>().ok()?, q.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| format!("bidegree key {key:?} is not of the form \"p,q\""))?;
            for (name, coef) in monomials {
                let (mask, sign) =
                    parse_monomial(m, &name).ok_or_else(|| format!("{key}: bad monomial {name:?}"))?;
                if bidegree(m, mask) != (p, q) {
                    return Err(format!("{key}: monomial {name:?} has a different bidegree"));
                }
                let c: GaussScalar = coef.parse().map_err(|e| format!("{key}.{name}: {e}"))?;
                exterior::accumulate(&mut terms, mask, if sign < 0 { -c } else { c });
            }
        }
        Ok(Form { m, terms })
    }
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_map().serialize(s)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&mask, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let name = monomial_name(self.m, mask);
            if c.is_one() {
                write!(f, "{name}")?;
            } else if mask == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c}) {name}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussScalar {
        s.parse().unwrap()
    }

    #[test]
    fn conjugation_is_an_involution_with_signs() {
        let m = 2;
        let a1 = Form::a(m, 1);
        let b2 = Form::a_bar(m, 2);
        assert_eq!(a1.conj(), Form::a_bar(m, 1));
        // conj(a1 ∧ ā2) = ā1 ∧ a2 = -a2 ∧ ā1
        let f = a1.wedge(&b2).scale(&g("i"));
        let expected = Form::a(m, 2).wedge(&Form::a_bar(m, 1)).scale(&g("i"));
        assert_eq!(f.conj(), expected);
        assert_eq!(f.conj().conj(), f);
    }

    #[test]
    fn graded_commutativity() {
        let m = 2;
        let x = Form::a(m, 1).add(&Form::a_bar(m, 2));
        let y = Form::a(m, 2).wedge(&Form::a_bar(m, 1));
        assert_eq!(x.wedge(&y), y.wedge(&x));
        let z = Form::a_bar(m, 1);
        assert_eq!(x.wedge(&z), z.wedge(&x).scale(&g("-1")));
    }

    #[test]
    fn json_round_trip() {
        let m = 2;
        let f = Form::a(m, 1).scale(&g("1/2i")).add(&Form::a(m, 2).wedge(&Form::a_bar(m, 1)));
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"1,0":{"a1":"1/2i"},"1,1":{"a2^a1~":"1"}}"#);
        assert_eq!(Form::from_json_str(m, &text).unwrap(), f);
        assert!(Form::from_json_str(m, r#"{"2,0":{"a1":"1"}}"#).is_err());
        let swapped = Form::from_json_str(m, r#"{"1,1":{"a1~^a2":"1"}}"#).unwrap();
        assert_eq!(swapped, f.component((1, 1)).scale(&g("-1")));
    }

    #[test]
    fn display() {
        let m = 2;
        assert_eq!(Form::a(m, 1).to_string(), "a1");
        assert_eq!(Form::zero(m).to_string(), "0");
        assert_eq!(Form::a(m, 1).scale(&g("-1/2")).to_string(), "(-1/2) a1");
    }
}
