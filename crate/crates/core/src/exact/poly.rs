//! Multivariate polynomials with Gaussian-rational coefficients in named parameters.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use super::scalar::GaussScalar;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, GaussScalar>,
}

impl ParamPoly {
    pub fn zero(vars: &[String]) -> Self {
        ParamPoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: GaussScalar) -> Self {
        let mut p = Self::zero(vars);
        p.insert(vec![0; vars.len()], c);
        p
    }

    /// The polynomial consisting of the single variable `vars[k]`.
    pub fn var(vars: &[String], k: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[k] = 1;
        let mut p = Self::zero(vars);
        p.insert(e, GaussScalar::one());
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn insert(&mut self, e: Monomial, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussScalar) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            out.insert(e.clone(), v * c);
        }
        out
    }

    /// Evaluates at a point given in variable order.
    pub fn eval(&self, point: &[GaussScalar]) -> GaussScalar {
        assert_eq!(point.len(), self.vars.len(), "evaluation point has wrong arity");
        let mut acc = GaussScalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = &t * x;
                }
            }
            acc += &t;
        }
        acc
    }

    fn check_vars(&self, other: &ParamPoly) {
        assert_eq!(self.vars, other.vars, "polynomials over different parameter lists");
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, o: &ParamPoly) -> ParamPoly {
        self.check_vars(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, o: &ParamPoly) -> ParamPoly {
        self + &(-o)
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&-GaussScalar::one())
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, o: &ParamPoly) -> ParamPoly {
        self.check_vars(o);
        let mut out = ParamPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "({c})*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl Serialize for ParamPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        vec!["s".into(), "t".into()]
    }

    #[test]
    fn square_of_binomial() {
        let v = vars();
        let s = ParamPoly::var(&v, 0);
        let t = ParamPoly::var(&v, 1);
        let p = &s + &t;
        let sq = &p * &p;
        let two_st = (&s * &t).scale(&GaussScalar::from(2));
        let expected = &(&(&s * &s) + &two_st) + &(&t * &t);
        assert_eq!(sq, expected);
        assert_eq!(sq.degree(), Some(2));
        assert!((&sq - &sq).is_zero());
    }

    #[test]
    fn display() {
        let v = vars();
        let p = &ParamPoly::var(&v, 0).scale(&GaussScalar::i()) + &ParamPoly::constant(&v, 3.into());
        assert_eq!(p.to_string(), "(i)*s + 3");
        assert_eq!(ParamPoly::zero(&v).to_string(), "0");
    }
}
