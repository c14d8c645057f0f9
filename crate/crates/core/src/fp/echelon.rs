use super::{axpy, inv_mod, scale_in_place, FpMatrix};

/// An incrementally maintained subspace of `GF(p)^dim` in reduced row
/// echelon form. Every stored row has a leading 1 and zeros in every other
/// row's pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    pivot_of_col: Vec<usize>,
}

/// Outcome of reducing a vector against an [`Echelon`] with provenance
/// tracking: the remainder and the combination of inserted vectors that was
/// subtracted.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub remainder: Vec<u32>,
    pub combination: Vec<u32>,
}

const NONE: usize = usize::MAX;

impl Echelon {
    pub fn new(p: u32, dim: usize) -> Self {
        Self {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_of_col: vec![NONE; dim],
        }
    }

    pub fn from_rows<I: IntoIterator<Item = Vec<u32>>>(p: u32, dim: usize, rows: I) -> Self {
        let mut e = Self::new(p, dim);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Subtracts the span from `v`; returns the coefficients used, one per
    /// stored row (in storage order).
    pub fn reduce(&self, v: &mut [u32]) -> Vec<u32> {
        let mut coeffs = vec![0u32; self.rows.len()];
        for (i, (row, &c)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let f = v[c];
            if f != 0 {
                coeffs[i] = f;
                axpy(v, self.p - f, row, self.p);
            }
        }
        coeffs
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` with respect to the stored rows, if `v` lies in the
    /// span. Because the rows are fully reduced these are just the entries of
    /// `v` in the pivot columns.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut w = v.to_vec();
        for (row, &f) in self.rows.iter().zip(&coords) {
            if f != 0 {
                axpy(&mut w, self.p - f, row, self.p);
            }
        }
        w.iter().all(|&x| x == 0).then_some(coords)
    }

    /// Inserts `v`; returns false if it was already in the span.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        self.push_reduced(v).is_some()
    }

    /// Inserts an already reduced vector; returns its storage index.
    fn push_reduced(&mut self, mut v: Vec<u32>) -> Option<usize> {
        let lead = v.iter().position(|&x| x != 0)?;
        let inv = inv_mod(v[lead], self.p);
        scale_in_place(&mut v, inv, self.p);
        for row in self.rows.iter_mut() {
            let f = row[lead];
            if f != 0 {
                axpy(row, self.p - f, &v, self.p);
            }
        }
        self.pivot_of_col[lead] = self.rows.len();
        self.rows.push(v);
        self.pivots.push(lead);
        Some(self.rows.len() - 1)
    }

    /// Rows sorted by pivot column: the canonical reduced echelon basis.
    pub fn sorted_rows(&self) -> Vec<Vec<u32>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        order.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    pub fn sorted_pivots(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    pub fn to_matrix(&self) -> FpMatrix {
        FpMatrix::from_rows(self.p, self.dim, &self.sorted_rows())
    }

    pub fn pivot_row_for_column(&self, c: usize) -> Option<usize> {
        match self.pivot_of_col[c] {
            NONE => None,
            i => Some(i),
        }
    }
}

/// An [`Echelon`] that also remembers how every stored row is expressed in
/// terms of the vectors that were inserted, so that a vector in the span can
/// be written as a combination of the originals.
#[derive(Clone, Debug)]
pub struct SpanTracker {
    ech: Echelon,
    /// `combos[i]` expresses stored row `i` in terms of the originals.
    combos: Vec<Vec<u32>>,
    originals: usize,
}

impl SpanTracker {
    pub fn new(p: u32, dim: usize) -> Self {
        Self {
            ech: Echelon::new(p, dim),
            combos: Vec::new(),
            originals: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    /// Reduces `v`. If the remainder is zero, `combination` writes `v` in
    /// terms of the originals inserted so far.
    pub fn reduce(&self, v: &[u32]) -> Reduction {
        let p = self.ech.p;
        let mut rem = v.to_vec();
        let coeffs = self.ech.reduce(&mut rem);
        let mut combination = vec![0u32; self.originals];
        for (c, combo) in coeffs.iter().zip(&self.combos) {
            if *c != 0 {
                axpy(&mut combination[..combo.len()], *c, combo, p);
            }
        }
        Reduction {
            remainder: rem,
            combination,
        }
    }

    /// Inserts `v` as a new original if it is independent; returns its
    /// original index.
    pub fn insert(&mut self, v: &[u32]) -> Option<usize> {
        let p = self.ech.p;
        let red = self.reduce(v);
        if red.remainder.iter().all(|&x| x == 0) {
            return None;
        }
        let idx = self.originals;
        self.originals += 1;
        // remainder = v - sum(combination_k * original_k)
        let mut combo: Vec<u32> = red.combination.iter().map(|&c| (p - c) % p).collect();
        combo.push(1);
        let lead = red.remainder.iter().position(|&x| x != 0).unwrap();
        let inv = inv_mod(red.remainder[lead], p);
        scale_in_place(&mut combo, inv, p);
        // Eliminating the new pivot from older rows changes their combos too.
        let mut rem = red.remainder;
        scale_in_place(&mut rem, inv, p);
        for (row, old_combo) in self.ech.rows.iter_mut().zip(self.combos.iter_mut()) {
            let f = row[lead];
            if f != 0 {
                axpy(row, p - f, &rem, p);
                old_combo.resize(idx + 1, 0);
                axpy(old_combo, p - f, &combo, p);
            }
        }
        self.ech.pivot_of_col[lead] = self.ech.rows.len();
        self.ech.rows.push(rem);
        self.ech.pivots.push(lead);
        self.combos.push(combo);
        Some(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_reconstruct_vector() {
        let p = 5;
        let e = Echelon::from_rows(p, 4, vec![vec![1, 2, 0, 3], vec![0, 1, 4, 1]]);
        let v = vec![2, 4 + 3, 12, 6 + 3]; // 2*r0 + 3*r1 before reduction
        let v: Vec<u32> = v.into_iter().map(|x| x % p).collect();
        let coords = e.coordinates(&v).unwrap();
        let mut back = vec![0u32; 4];
        for (row, c) in e.rows().iter().zip(&coords) {
            axpy(&mut back, *c, row, p);
        }
        assert_eq!(back, v);
        assert!(e.coordinates(&[0, 0, 0, 1]).is_none());
    }

    #[test]
    fn tracker_expresses_dependent_vector() {
        let p = 3;
        let mut t = SpanTracker::new(p, 3);
        let a = vec![1, 1, 0];
        let b = vec![0, 1, 2];
        assert_eq!(t.insert(&a), Some(0));
        assert_eq!(t.insert(&b), Some(1));
        // 2a + b = (2, 0, 2)
        let red = t.reduce(&[2, 0, 2]);
        assert!(red.remainder.iter().all(|&x| x == 0));
        assert_eq!(red.combination, vec![2, 1]);
        assert_eq!(t.insert(&[2, 0, 2]), None);
    }
}
