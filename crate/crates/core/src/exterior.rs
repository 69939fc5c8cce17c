//! Bitmask monomials of an exterior algebra on at most 32 generators.
//!
//! A monomial is the ascending wedge of the generators whose bits are set.
//! Sparse forms map monomials to nonzero coefficients.

use std::collections::BTreeMap;

use crate::exact::Field;

pub type Mask = u32;

/// Sparse exterior form; absent monomials have coefficient zero.
pub type Sparse<F> = BTreeMap<Mask, F>;

pub fn degree(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// Generator indices of `mask`, ascending.
pub fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&k| mask & (1 << k) != 0)
}

/// `u ∧ v = sign · (u | v)`, or `None` when the monomials share a generator.
pub fn wedge(u: Mask, v: Mask) -> Option<(Mask, i64)> {
    if u & v != 0 {
        return None;
    }
    let mut swaps = 0u32;
    for j in bits(v) {
        swaps += (u >> (j + 1)).count_ones();
    }
    Some((u | v, if swaps % 2 == 0 { 1 } else { -1 }))
}

/// All `k`-subsets of `indices` as masks, in lexicographic order of the
/// ascending index lists.
pub fn subsets(indices: &[usize], k: usize) -> Vec<Mask> {
    use itertools::Itertools;
    indices.iter().copied().combinations(k).map(|c| c.iter().fold(0, |m, &i| m | (1 << i))).collect()
}

/// Adds `c` to the coefficient of `mask`, dropping it if the sum vanishes.
pub fn accumulate<F: Field>(form: &mut Sparse<F>, mask: Mask, c: F) {
    if c.is_zero() {
        return;
    }
    match form.entry(mask) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get().clone() + c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

pub fn add_scaled<F: Field>(acc: &mut Sparse<F>, form: &Sparse<F>, s: &F) {
    for (&mask, c) in form {
        accumulate(acc, mask, c.clone() * s.clone());
    }
}

pub fn wedge_forms<F: Field>(a: &Sparse<F>, b: &Sparse<F>) -> Sparse<F> {
    let mut out = Sparse::new();
    for (&u, x) in a {
        for (&v, y) in b {
            if let Some((w, sign)) = wedge(u, v) {
                let c = x.clone() * y.clone();
                accumulate(&mut out, w, if sign < 0 { -c } else { c });
            }
        }
    }
    out
}

/// `a^k` under the wedge product; `a^0 = 1`.
pub fn power<F: Field>(a: &Sparse<F>, k: usize) -> Sparse<F> {
    let mut out = Sparse::from([(0, F::one())]);
    for _ in 0..k {
        out = wedge_forms(&out, a);
    }
    out
}

/// Extends generator differentials `dg[g]` to a degree-1 derivation:
/// `d(g1 ∧ … ∧ gk) = Σ_s (-1)^(s-1) g1 ∧ … ∧ d(gs) ∧ … ∧ gk`.
pub fn derivation<F: Field>(dg: &[Sparse<F>], form: &Sparse<F>) -> Sparse<F> {
    let mut out = Sparse::new();
    for (&mask, c) in form {
        for (s, g) in bits(mask).enumerate() {
            let left = mask & ((1 << g) - 1);
            let right = mask & !((2 << g) - 1);
            let sign = if s % 2 == 0 { c.clone() } else { -c.clone() };
            for (&u, x) in &dg[g] {
                let Some((ur, s1)) = wedge(u, right) else { continue };
                let Some((w, s2)) = wedge(left, ur) else { continue };
                let v = sign.clone() * x.clone();
                accumulate(&mut out, w, if s1 * s2 < 0 { -v } else { v });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn wedge_signs() {
        // e0 ∧ e1 = +e01, e1 ∧ e0 = -e01
        assert_eq!(wedge(0b01, 0b10), Some((0b11, 1)));
        assert_eq!(wedge(0b10, 0b01), Some((0b11, -1)));
        assert_eq!(wedge(0b01, 0b01), None);
        // e1 ∧ e02 = -e012
        assert_eq!(wedge(0b010, 0b101), Some((0b111, -1)));
    }

    #[test]
    fn lexicographic_subsets() {
        assert_eq!(subsets(&[0, 1, 2], 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(subsets(&[0, 1], 0), vec![0]);
    }

    #[test]
    fn derivation_on_a_two_step_algebra() {
        // dg2 = g0 ∧ g1, other generators closed
        let dg = vec![Sparse::new(), Sparse::new(), Sparse::from([(0b011, q(1))])];
        // d(g1 ∧ g2) = -g1 ∧ g0 ∧ g1 = 0 ; d(g2 ∧ g3) = g0 g1 g3
        let f = Sparse::from([(0b0110, q(1))]);
        assert!(derivation(&dg, &f).is_empty());
        let mut dg4 = dg.clone();
        dg4.push(Sparse::new());
        let f = Sparse::from([(0b1100, q(1))]);
        assert_eq!(derivation(&dg4, &f), Sparse::from([(0b1011, q(1))]));
        // d(g3 ∧ g2) = -d(g2 ∧ g3)
        let f = Sparse::from([(0b1100, q(-1))]);
        assert_eq!(derivation(&dg4, &f), Sparse::from([(0b1011, q(-1))]));
    }

    #[test]
    fn power_of_symplectic_form() {
        let w = Sparse::from([(0b0011, q(1)), (0b1100, q(1))]);
        assert_eq!(power(&w, 2), Sparse::from([(0b1111, q(2))]));
        assert!(power(&w, 3).is_empty());
    }
}
