//! Canonical monomial bases of the blocks `A^{p,q}`.
//!
//! Complex generators are numbered `0..2m`: `g < m` is the (1,0)-form
//! `a_{g+1}`, `g ≥ m` its conjugate `ā_{g-m+1}`. The basis of `A^{p,q}` lists
//! `a_I ∧ ā_J` lexicographically in `I`, then in `J`.

use crate::exterior::{bits, subsets, Mask};

pub type Bidegree = (usize, usize);

#[derive(Clone, Debug)]
pub struct Basis {
    m: usize,
    blocks: Vec<Vec<Mask>>,
    position: Vec<u32>,
}

impl Basis {
    pub fn new(m: usize) -> Self {
        let idx: Vec<usize> = (0..m).collect();
        let mut blocks = Vec::with_capacity((m + 1) * (m + 1));
        let mut position = vec![0u32; 1 << (2 * m)];
        for p in 0..=m {
            let holo = subsets(&idx, p);
            for q in 0..=m {
                let anti = subsets(&idx, q);
                let mut block = Vec::with_capacity(holo.len() * anti.len());
                for &i in &holo {
                    for &j in &anti {
                        let mask = i | (j << m);
                        position[mask as usize] = block.len() as u32;
                        block.push(mask);
                    }
                }
                blocks.push(block);
            }
        }
        Basis { m, blocks, position }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn block(&self, (p, q): Bidegree) -> &[Mask] {
        &self.blocks[p * (self.m + 1) + q]
    }

    pub fn dim(&self, pq: Bidegree) -> usize {
        self.block(pq).len()
    }

    /// Position of a monomial inside its own block.
    pub fn position(&self, mask: Mask) -> usize {
        self.position[mask as usize] as usize
    }

    pub fn bidegree(&self, mask: Mask) -> Bidegree {
        bidegree(self.m, mask)
    }

    /// All bidegrees ordered by total degree, then by `q`.
    pub fn bidegrees(&self) -> Vec<Bidegree> {
        let m = self.m;
        let mut out: Vec<Bidegree> = (0..=m).flat_map(|p| (0..=m).map(move |q| (p, q))).collect();
        out.sort_by_key(|&(p, q)| (p + q, q));
        out
    }

    pub fn top(&self) -> Mask {
        ((1u64 << (2 * self.m)) - 1) as Mask
    }
}

pub fn bidegree(m: usize, mask: Mask) -> Bidegree {
    let low = mask & ((1 << m) - 1);
    (low.count_ones() as usize, (mask >> m).count_ones() as usize)
}

/// `a1^a2~` style name of a monomial; `1` for the constant.
pub fn monomial_name(m: usize, mask: Mask) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    bits(mask)
        .map(|g| if g < m { format!("a{}", g + 1) } else { format!("a{}~", g - m + 1) })
        .collect::<Vec<_>>()
        .join("^")
}

/// Inverse of [`monomial_name`], accepting generators in any order and
/// returning the sign needed to sort them.
pub fn parse_monomial(m: usize, name: &str) -> Option<(Mask, i64)> {
    if name == "1" {
        return Some((0, 1));
    }
    let mut mask: Mask = 0;
    let mut sign = 1;
    for tok in name.split('^') {
        let (digits, bar) = match tok.strip_suffix('~') {
            Some(d) => (d, true),
            None => (tok, false),
        };
        let k: usize = digits.strip_prefix('a')?.parse().ok()?;
        if k == 0 || k > m {
            return None;
        }
        let g = if bar { k - 1 + m } else { k - 1 };
        let (w, s) = crate::exterior::wedge(mask, 1 << g)?;
        mask = w;
        sign *= s;
    }
    Some((mask, sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_dimensions_and_order() {
        let b = Basis::new(2);
        assert_eq!(b.dim((1, 1)), 4);
        assert_eq!(b.dim((2, 2)), 1);
        // a1ā1, a1ā2, a2ā1, a2ā2
        assert_eq!(b.block((1, 1)), &[0b0101, 0b1001, 0b0110, 0b1010]);
        assert_eq!(b.position(0b0110), 2);
        assert_eq!(b.bidegree(0b0110), (1, 1));
        assert_eq!(b.bidegrees()[1..3], [(1, 0), (0, 1)]);
        let b3 = Basis::new(3);
        assert_eq!(b3.dim((1, 2)), 9);
        assert_eq!(b3.top(), 0b111111);
    }

    #[test]
    fn names_round_trip() {
        let m = 3;
        for mask in 0..64u32 {
            let name = monomial_name(m, mask);
            assert_eq!(parse_monomial(m, &name), Some((mask, 1)), "{name}");
        }
        assert_eq!(monomial_name(2, 0b0101), "a1^a1~");
        assert_eq!(parse_monomial(2, "a1~^a1"), Some((0b0101, -1)));
        assert_eq!(parse_monomial(2, "a1^a1"), None);
        assert_eq!(parse_monomial(2, "a3"), None);
    }
}
