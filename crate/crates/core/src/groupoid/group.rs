use std::collections::VecDeque;

use crate::error::{input, Result};
use crate::perm::PermGroup;

/// An abstract finite group given by its multiplication table. Element 0 is
/// the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self {
            n: 1,
            table: vec![0],
            inv: vec![0],
        }
    }

    /// Validates a row-major table: identity at 0, Latin square, associative.
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self> {
        if n == 0 || table.len() != n * n {
            return input(format!("group table of order {n} needs {} entries", n * n));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return input("group table entry out of range");
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return input("element 0 is not the identity");
            }
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[table[a * n + b] as usize] = true;
                col[table[b * n + a] as usize] = true;
            }
            if row.iter().chain(&col).any(|&x| !x) {
                return input("group table is not a Latin square");
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    let bc = table[b * n + c] as usize;
                    if table[ab * n + c] != table[a * n + bc] {
                        return input("group table is not associative");
                    }
                }
            }
        }
        Ok(Self::from_table_unchecked(n, table))
    }

    pub(crate) fn from_table_unchecked(n: usize, table: Vec<u32>) -> Self {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        Self { n, table, inv }
    }

    pub fn from_perm_group(g: &PermGroup) -> Self {
        let n = g.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(g.mul(a, b) as u32);
            }
        }
        Self::from_table_unchecked(n, table)
    }

    pub fn order(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(a, x);
            k += 1;
        }
        k
    }

    /// Sorted element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut h: Vec<usize> = (0..self.n).map(|a| self.element_order(a)).collect();
        h.sort_unstable();
        h
    }

    pub fn closure_of(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A generating set chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for a in 0..self.n {
            if span.len() == self.n {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.closure_of(&gens);
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// True iff `phi` (indexed by elements of `self`) is a homomorphism into
    /// `target`.
    pub fn is_hom_into(&self, target: &FiniteGroup, phi: &[u32]) -> bool {
        if phi.len() != self.n || phi.iter().any(|&x| x as usize >= target.n) {
            return false;
        }
        let gens = self.generators();
        // phi(g x) = phi(g) phi(x) for generators g and all x forces a homomorphism.
        gens.iter().all(|&g| {
            (0..self.n).all(|x| {
                phi[self.mul(g, x)] as usize == target.mul(phi[g] as usize, phi[x] as usize)
            })
        })
    }

    /// Exact isomorphism test: order-profile filter, then a search over
    /// images of a generating set, each extended along the Cayley graph.
    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.find_isomorphism(other).is_some()
    }

    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<u32>> {
        if self.n != other.n || self.order_profile() != other.order_profile() {
            return None;
        }
        let gens = self.generators();
        let orders: Vec<usize> = gens.iter().map(|&g| self.element_order(g)).collect();
        let candidates: Vec<Vec<usize>> = orders
            .iter()
            .map(|&o| (0..other.n).filter(|&b| other.element_order(b) == o).collect())
            .collect();
        let mut images = vec![0usize; gens.len()];
        self.search_iso(other, &gens, &candidates, 0, &mut images)
    }

    fn search_iso(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        depth: usize,
        images: &mut Vec<usize>,
    ) -> Option<Vec<u32>> {
        if depth == gens.len() {
            return self.extend_hom(other, gens, images);
        }
        for &c in &candidates[depth] {
            images[depth] = c;
            if let Some(phi) = self.search_iso(other, gens, candidates, depth + 1, images) {
                return Some(phi);
            }
        }
        None
    }

    /// Extends generator images to a bijective homomorphism, if one exists.
    fn extend_hom(&self, other: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<u32>> {
        const UNSET: u32 = u32::MAX;
        let mut phi = vec![UNSET; self.n];
        phi[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&g, &gi) in gens.iter().zip(images) {
                let y = self.mul(g, x);
                let img = other.mul(gi, phi[x] as usize) as u32;
                if phi[y] == UNSET {
                    phi[y] = img;
                    queue.push_back(y);
                } else if phi[y] != img {
                    return None;
                }
            }
        }
        let mut hit = vec![false; other.n];
        for &v in &phi {
            if hit[v as usize] {
                return None;
            }
            hit[v as usize] = true;
        }
        Some(phi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        FiniteGroup::from_table(n, table).unwrap()
    }

    fn klein() -> FiniteGroup {
        let table = (0..4u32)
            .flat_map(|a| (0..4u32).map(move |b| a ^ b))
            .collect();
        FiniteGroup::from_table(4, table).unwrap()
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroup::from_table(2, vec![1, 0, 0, 1]).is_err());
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn isomorphism_distinguishes_c4_v4() {
        assert!(!cyclic(4).is_isomorphic(&klein()));
        assert!(klein().is_isomorphic(&klein()));
        assert!(cyclic(6).is_isomorphic(&cyclic(6)));
    }

    #[test]
    fn s3_not_isomorphic_to_c6() {
        let s3 = PermGroup::from_strings(3, &["(0 1)", "(0 1 2)"]).unwrap();
        let s3 = FiniteGroup::from_perm_group(&s3);
        assert!(!s3.is_abelian());
        assert!(!s3.is_isomorphic(&cyclic(6)));
        // a relabeled copy is isomorphic
        let perm = [0usize, 3, 5, 1, 4, 2];
        let mut table = vec![0u32; 36];
        for a in 0..6 {
            for b in 0..6 {
                table[perm[a] * 6 + perm[b]] = perm[s3.mul(a, b)] as u32;
            }
        }
        let relabeled = FiniteGroup::from_table(6, table).unwrap();
        let phi = s3.find_isomorphism(&relabeled).unwrap();
        assert!(s3.is_hom_into(&relabeled, &phi));
    }

    #[test]
    fn generators_generate() {
        let g = cyclic(6);
        assert_eq!(g.closure_of(&g.generators()).len(), 6);
        assert_eq!(g.element_order(1), 6);
        assert_eq!(FiniteGroup::trivial().generators(), Vec::<usize>::new());
    }
}
