//! Finite-dimensional modules over `GF(p)G` for permutation groups `G`,
//! given by matrices of the generators acting on column vectors.

mod decompose;
mod hom;
mod induction;
mod json;
mod projectivity;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{input, Result};
use crate::fp::{self, FpMatrix};
use crate::perm::PermGroup;

pub use decompose::{
    decompose, is_isomorphic, same_multiset, split_injection, Certificate, Decomposition,
    Indecomposable, Summand, DEFAULT_SEED,
};
pub use hom::{hom_dim, hom_space, hom_space_naive};
pub use induction::{conjugate, induce, mackey_terms, restrict, Induction};
pub use json::ModuleJson;
pub use projectivity::{
    factoring_subspace, factoring_subspace_via_counit, is_projective, is_relatively_projective,
    is_relatively_projective_by_summands, relative_trace, vertex, Vertex,
};

/// A left `GF(p)G`-module. Element matrices are computed on demand along
/// the Cayley graph of the generators and memoized.
#[derive(Clone)]
pub struct FpModule {
    group: Arc<PermGroup>,
    p: u32,
    dim: usize,
    action: Vec<FpMatrix>,
    cache: Arc<Vec<OnceLock<FpMatrix>>>,
}

impl fmt::Debug for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FpModule")
            .field("group_order", &self.group.order())
            .field("p", &self.p)
            .field("dim", &self.dim)
            .finish()
    }
}

impl FpModule {
    /// Validates that the matrices are invertible and define a group action.
    pub fn new(group: Arc<PermGroup>, p: u32, dim: usize, action: Vec<FpMatrix>) -> Result<Self> {
        fp::check_prime(p)?;
        if action.len() != group.generators().len() {
            return input(format!(
                "{} action matrices for {} generators",
                action.len(),
                group.generators().len()
            ));
        }
        for a in &action {
            if a.prime() != p || a.rows() != dim || a.cols() != dim {
                return input("action matrices must be square of equal size over GF(p)");
            }
            if !a.is_invertible() {
                return input("action matrix is not invertible");
            }
        }
        let m = Self::from_action_unchecked(group, p, dim, action);
        m.check_relations()?;
        Ok(m)
    }

    pub(crate) fn from_action_unchecked(group: Arc<PermGroup>, p: u32, dim: usize, action: Vec<FpMatrix>) -> Self {
        let cache = Arc::new((0..group.order()).map(|_| OnceLock::new()).collect());
        Self {
            group,
            p,
            dim,
            action,
            cache,
        }
    }

    /// Builds a module from one matrix per group element (indexed like
    /// `group.elements()`), checking multiplicativity.
    pub fn from_element_matrices(group: Arc<PermGroup>, p: u32, dim: usize, mats: Vec<FpMatrix>) -> Result<Self> {
        if mats.len() != group.order() {
            return input("need one matrix per group element");
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if mats[a].mul(&mats[b]) != mats[group.mul(a, b)] {
                    return input("element matrices are not multiplicative");
                }
            }
        }
        let action = group.generator_indices().iter().map(|&g| mats[g].clone()).collect();
        let m = Self::from_action_unchecked(group, p, dim, action);
        for (g, mat) in mats.into_iter().enumerate() {
            let _ = m.cache[g].set(mat);
        }
        Ok(m)
    }

    pub fn zero(group: Arc<PermGroup>, p: u32) -> Self {
        let action = vec![FpMatrix::zeros(p, 0, 0); group.generators().len()];
        Self::from_action_unchecked(group, p, 0, action)
    }

    pub fn trivial(group: Arc<PermGroup>, p: u32) -> Self {
        let action = vec![FpMatrix::identity(p, 1); group.generators().len()];
        Self::from_action_unchecked(group, p, 1, action)
    }

    /// The regular module `kG` with basis the group elements in order.
    pub fn regular(group: Arc<PermGroup>, p: u32) -> Self {
        let n = group.order();
        let action = group
            .generator_indices()
            .iter()
            .map(|&g| {
                let mut m = FpMatrix::zeros(p, n, n);
                for x in 0..n {
                    m.set(group.mul(g, x), x, 1);
                }
                m
            })
            .collect();
        Self::from_action_unchecked(group, p, n, action)
    }

    /// The permutation module on the points `0..degree`.
    pub fn natural_permutation(group: Arc<PermGroup>, p: u32) -> Self {
        let n = group.degree();
        let action = group
            .generators()
            .iter()
            .map(|g| {
                let mut m = FpMatrix::zeros(p, n, n);
                for x in 0..n {
                    m.set(g.apply(x as u32) as usize, x, 1);
                }
                m
            })
            .collect();
        Self::from_action_unchecked(group, p, n, action)
    }

    /// `g ↦ sign(g)`, for odd `p`.
    pub fn sign(group: Arc<PermGroup>, p: u32) -> Self {
        let action = group
            .generators()
            .iter()
            .map(|g| {
                let odd = g.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
                FpMatrix::scalar(p, 1, if odd { p - 1 } else { 1 })
            })
            .collect();
        Self::from_action_unchecked(group, p, 1, action)
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }
    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    /// Matrices of the generators, in the order of `group().generators()`.
    pub fn action(&self) -> &[FpMatrix] {
        &self.action
    }

    /// The matrix of group element `g` (an index into `group().elements()`).
    pub fn element_action(&self, g: usize) -> &FpMatrix {
        if let Some(m) = self.cache[g].get() {
            return m;
        }
        // Walk the Cayley-graph path back to a cached element, then fill forward.
        let mut path = Vec::new();
        let mut x = g;
        while x != 0 && self.cache[x].get().is_none() {
            path.push(x);
            x = self.group.word_step(x).unwrap().0;
        }
        if x == 0 {
            let _ = self.cache[0].get_or_init(|| FpMatrix::identity(self.p, self.dim));
        }
        for &y in path.iter().rev() {
            let (prev, s) = self.group.word_step(y).unwrap();
            let m = self.action[s].mul(self.cache[prev].get().unwrap());
            let _ = self.cache[y].set(m);
        }
        self.cache[g].get().unwrap()
    }

    /// Checks `ρ(s)ρ(g) = ρ(sg)` for every generator `s` and element `g`.
    fn check_relations(&self) -> Result<()> {
        for g in 0..self.group.order() {
            for (s, &gs) in self.group.generator_indices().iter().enumerate() {
                let sg = self.group.mul(gs, g);
                if self.action[s].mul(self.element_action(g)) != *self.element_action(sg) {
                    return input("action matrices do not satisfy the group relations");
                }
            }
        }
        Ok(())
    }

    /// Same elements and the same generator list, so action matrices
    /// correspond slot by slot.
    pub fn same_group(&self, other: &FpModule) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
            || (self.group.same_group(&other.group) && self.group.generators() == other.group.generators())
    }

    pub(crate) fn check_compatible(&self, other: &FpModule) -> Result<()> {
        if self.p != other.p {
            return input(format!("modules over GF({}) and GF({})", self.p, other.p));
        }
        if !self.same_group(other) {
            return input("modules over different groups");
        }
        Ok(())
    }

    /// True iff `f` (a `dim N × dim M` matrix) is a module map `self → n`.
    pub fn is_hom_to(&self, n: &FpModule, f: &FpMatrix) -> bool {
        f.rows() == n.dim
            && f.cols() == self.dim
            && self
                .action
                .iter()
                .zip(&n.action)
                .all(|(a, b)| f.mul(a) == b.mul(f))
    }

    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        self.check_compatible(other)?;
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Self::from_action_unchecked(self.group.clone(), self.p, self.dim + other.dim, action))
    }

    pub fn direct_sum_all(group: Arc<PermGroup>, p: u32, parts: &[&FpModule]) -> Result<FpModule> {
        let mut acc = FpModule::zero(group, p);
        for m in parts {
            acc = acc.direct_sum(m)?;
        }
        Ok(acc)
    }

    /// The contragredient module `g ↦ ρ(g^{-1})^T`.
    pub fn dual(&self) -> FpModule {
        let action = self
            .group
            .generator_indices()
            .iter()
            .map(|&g| self.element_action(self.group.inv(g)).transpose())
            .collect();
        Self::from_action_unchecked(self.group.clone(), self.p, self.dim, action)
    }

    /// The same module in the basis given by the columns of `basis`.
    pub fn change_basis(&self, basis: &FpMatrix) -> Result<FpModule> {
        let inv = basis.inverse().ok_or_else(|| crate::Error::Input("change of basis is singular".into()))?;
        let action = self.action.iter().map(|a| inv.mul(&a.mul(basis))).collect();
        Ok(Self::from_action_unchecked(self.group.clone(), self.p, self.dim, action))
    }

    /// The module with the same matrices viewed over an equal group object.
    pub fn with_group(&self, group: Arc<PermGroup>) -> Result<FpModule> {
        if !self.group.same_group(&group) || self.group.generators() != group.generators() {
            return input("groups differ");
        }
        Ok(Self::from_action_unchecked(group, self.p, self.dim, self.action.clone()))
    }

    /// `[U | W]` with `W` made of unit vectors completing the columns of `u`.
    fn completed_basis(&self, u: &FpMatrix) -> Result<FpMatrix> {
        if u.rows() != self.dim || u.rank() != u.cols() {
            return input("subspace basis must have independent columns of the module's dimension");
        }
        let ech = fp::Echelon::from_rows(self.p, self.dim, u.transpose().row_vectors());
        let pivots = ech.sorted_pivots();
        let extra: Vec<Vec<u32>> = (0..self.dim)
            .filter(|c| !pivots.contains(c))
            .map(|c| {
                let mut e = vec![0; self.dim];
                e[c] = 1;
                e
            })
            .collect();
        let w = FpMatrix::from_columns(self.p, self.dim, &extra);
        Ok(FpMatrix::hstack(&[u, &w]))
    }

    /// Blocks of the action in the basis `[U | W]`; fails unless `U` is
    /// invariant.
    fn invariant_blocks(&self, u: &FpMatrix) -> Result<Vec<FpMatrix>> {
        let b = self.completed_basis(u)?;
        let inv = b.inverse().expect("completed basis is invertible");
        let (a, c) = (u.cols(), self.dim - u.cols());
        let blocks: Vec<FpMatrix> = self.action.iter().map(|s| inv.mul(&s.mul(&b))).collect();
        if blocks.iter().any(|t| !t.block(a, 0, c, a).is_zero()) {
            return input("subspace is not a submodule");
        }
        Ok(blocks)
    }

    /// The submodule spanned by the columns of `u`, in that basis.
    pub fn submodule(&self, u: &FpMatrix) -> Result<FpModule> {
        let a = u.cols();
        let action = self.invariant_blocks(u)?.iter().map(|t| t.block(0, 0, a, a)).collect();
        Ok(Self::from_action_unchecked(self.group.clone(), self.p, a, action))
    }

    /// The quotient by the submodule spanned by the columns of `u`.
    pub fn quotient(&self, u: &FpMatrix) -> Result<FpModule> {
        let (a, c) = (u.cols(), self.dim - u.cols());
        let action = self.invariant_blocks(u)?.iter().map(|t| t.block(a, a, c, c)).collect();
        Ok(Self::from_action_unchecked(self.group.clone(), self.p, c, action))
    }

    /// `Σ_{x ∈ X} ρ(x)` for a set of element indices.
    pub fn sum_of(&self, elements: &[usize]) -> FpMatrix {
        let mut acc = FpMatrix::zeros(self.p, self.dim, self.dim);
        for &x in elements {
            acc.add_scaled(1, self.element_action(x));
        }
        acc
    }
}

impl PartialEq for FpModule {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.dim == other.dim && self.same_group(other) && self.action == other.action
    }
}

/// Splits `m` along `M = U ⊕ W` given by column bases of `U` and `W`.
/// Returns the two summands and `P = [U | W]`.
pub(crate) fn split_along(m: &FpModule, u: &FpMatrix, w: &FpMatrix) -> (FpModule, FpModule, FpMatrix) {
    let pmat = FpMatrix::hstack(&[u, w]);
    let pinv = pmat.inverse().expect("complementary submodules");
    let (a, b) = (u.cols(), w.cols());
    let mut left = Vec::with_capacity(m.action.len());
    let mut right = Vec::with_capacity(m.action.len());
    for s in &m.action {
        let t = pinv.mul(&s.mul(&pmat));
        debug_assert!(t.block(0, a, a, b).is_zero() && t.block(a, 0, b, a).is_zero());
        left.push(t.block(0, 0, a, a));
        right.push(t.block(a, a, b, b));
    }
    (
        FpModule::from_action_unchecked(m.group.clone(), m.p, a, left),
        FpModule::from_action_unchecked(m.group.clone(), m.p, b, right),
        pmat,
    )
}

#[cfg(test)]
mod tests;
