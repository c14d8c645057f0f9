use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{hom_space, split_along, FpModule};
use crate::error::{Error, Result};
use crate::fp::{minimal_polynomial, Echelon, FpMatrix};

pub const DEFAULT_SEED: u64 = 0;

/// Why a module is indecomposable: `End(M)` has a nilpotent ideal of the
/// given dimension whose quotient is the field of `p^residue_degree`
/// elements. That ideal is then the Jacobson radical and `End(M)` is local.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub end_dim: usize,
    pub radical_dim: usize,
    pub residue_degree: usize,
}

/// A module together with a certified local endomorphism ring.
#[derive(Clone, Debug)]
pub struct Indecomposable {
    module: FpModule,
    certificate: Certificate,
    radical: Echelon,
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub indecomposable: Indecomposable,
    pub multiplicity: usize,
}

impl Summand {
    pub fn module(&self) -> &FpModule {
        self.indecomposable.module()
    }
}

/// `change_of_basis^{-1} ρ(g) change_of_basis` is the block sum of the
/// summand modules, each repeated by its multiplicity.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    pub change_of_basis: FpMatrix,
}

enum Analysis {
    Split(FpMatrix, FpMatrix),
    Local(Indecomposable),
    Inconclusive,
}

fn random_element(e: &[FpMatrix], rng: &mut ChaCha8Rng) -> FpMatrix {
    let p = e[0].prime();
    let mut acc = FpMatrix::zeros(p, e[0].rows(), e[0].cols());
    for f in e {
        let c = rng.gen_range(0..p);
        if c != 0 {
            acc.add_scaled(c, f);
        }
    }
    acc
}

fn columns_of_nullspace(a: &FpMatrix) -> FpMatrix {
    a.nullspace().transpose()
}

/// Splits along the primary decomposition of `f` when its minimal
/// polynomial has two coprime factors.
fn fitting_split(f: &FpMatrix) -> Option<(FpMatrix, FpMatrix)> {
    let mu = minimal_polynomial(f);
    let (a, b) = mu.coprime_split()?;
    Some((
        columns_of_nullspace(&a.eval_matrix(f)),
        columns_of_nullspace(&b.eval_matrix(f)),
    ))
}

/// Two-sided ideal of the algebra spanned by `e` generated by `gens`.
fn ideal_closure(e: &[FpMatrix], gens: Vec<FpMatrix>) -> (Echelon, Vec<FpMatrix>) {
    let p = e[0].prime();
    let n = e[0].rows();
    let mut ech = Echelon::new(p, n * n);
    let mut mats = Vec::new();
    let mut queue = VecDeque::new();
    for g in gens {
        if ech.insert(g.flatten()) {
            queue.push_back(mats.len());
            mats.push(g);
        }
    }
    while let Some(i) = queue.pop_front() {
        for f in e {
            for prod in [f.mul(&mats[i]), mats[i].mul(f)] {
                if ech.insert(prod.flatten()) {
                    queue.push_back(mats.len());
                    mats.push(prod);
                }
            }
        }
    }
    (ech, mats)
}

/// True iff the span of `mats` acts nilpotently on `GF(p)^n`, tested by the
/// descending chain `V ⊇ NV ⊇ N²V ⊇ …`.
fn acts_nilpotently(p: u32, n: usize, mats: &[FpMatrix]) -> bool {
    let mut current: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            e
        })
        .collect();
    loop {
        if current.is_empty() {
            return true;
        }
        let mut next = Echelon::new(p, n);
        for m in mats {
            for v in &current {
                next.insert(m.mul_vec(v));
            }
        }
        if next.rank() == current.len() {
            return false;
        }
        current = next.rows().to_vec();
    }
}

fn certify(m: &FpModule, e: &[FpMatrix], rng: &mut ChaCha8Rng) -> Analysis {
    let p = m.prime();
    let mut gens = Vec::new();
    for f in e {
        let mu = minimal_polynomial(f);
        if mu.coprime_split().is_some() {
            let (u, w) = fitting_split(f).unwrap();
            return Analysis::Split(u, w);
        }
        let q = mu.radical();
        let nil = q.eval_matrix(f);
        if !nil.is_zero() {
            gens.push(nil);
        }
    }
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let c = e[i].mul(&e[j]).sub(&e[j].mul(&e[i]));
            if !c.is_zero() {
                gens.push(c);
            }
        }
    }
    let (radical, mats) = if gens.is_empty() {
        (Echelon::new(p, m.dim() * m.dim()), Vec::new())
    } else {
        ideal_closure(e, gens)
    };
    if radical.rank() >= e.len() || !acts_nilpotently(p, m.dim(), &mats) {
        return Analysis::Inconclusive;
    }
    let degree = e.len() - radical.rank();
    let local = |radical| {
        Analysis::Local(Indecomposable {
            module: m.clone(),
            certificate: Certificate {
                end_dim: e.len(),
                radical_dim: mats.len(),
                residue_degree: degree,
            },
            radical,
        })
    };
    if degree == 1 {
        return local(radical);
    }
    // E/N is commutative and reduced; it is a field iff some element
    // generates a subfield of full degree.
    let tries = e.len() + 8 * degree;
    for t in 0..tries {
        let x = if t < e.len() { e[t].clone() } else { random_element(e, rng) };
        let mu = minimal_polynomial(&x);
        if mu.coprime_split().is_some() {
            let (u, w) = fitting_split(&x).unwrap();
            return Analysis::Split(u, w);
        }
        if mu.radical().degree() == degree {
            return local(radical);
        }
    }
    Analysis::Inconclusive
}

/// Budget: basis elements and 8 random elements of `End(M)`, then the
/// certificate, then `64 · dim End(M)` random elements, then the certificate
/// once more.
fn analyse(m: &FpModule, rng: &mut ChaCha8Rng) -> Result<Analysis> {
    let e = hom_space(m, m)?;
    if e.len() == 1 {
        return Ok(Analysis::Local(Indecomposable {
            module: m.clone(),
            certificate: Certificate {
                end_dim: 1,
                radical_dim: 0,
                residue_degree: 1,
            },
            radical: Echelon::new(m.prime(), m.dim() * m.dim()),
        }));
    }
    for f in &e {
        if let Some((u, w)) = fitting_split(f) {
            return Ok(Analysis::Split(u, w));
        }
    }
    for _ in 0..8 {
        if let Some((u, w)) = fitting_split(&random_element(&e, rng)) {
            return Ok(Analysis::Split(u, w));
        }
    }
    match certify(m, &e, rng) {
        Analysis::Inconclusive => {}
        done => return Ok(done),
    }
    for _ in 0..64 * e.len() {
        if let Some((u, w)) = fitting_split(&random_element(&e, rng)) {
            return Ok(Analysis::Split(u, w));
        }
    }
    match certify(m, &e, rng) {
        Analysis::Inconclusive => Err(Error::Undecided(format!(
            "no splitting and no locality certificate for a module of dimension {} (End of dimension {})",
            m.dim(),
            e.len()
        ))),
        done => Ok(done),
    }
}

impl Indecomposable {
    /// `Some` iff the module is indecomposable; `Undecided` if the budget
    /// runs out.
    pub fn certify(m: &FpModule, seed: u64) -> Result<Option<Self>> {
        if m.dim() == 0 {
            return Ok(None);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match analyse(m, &mut rng)? {
            Analysis::Local(ind) => Ok(Some(ind)),
            _ => Ok(None),
        }
    }

    pub fn module(&self) -> &FpModule {
        &self.module
    }
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// True iff the endomorphism `f` is invertible, i.e. not in the radical.
    pub fn is_unit(&self, f: &FpMatrix) -> bool {
        !self.radical.contains(&f.flatten())
    }

    /// `(ι, π)` with `π ι = id`, `ι: self → n`, if `self` is a summand of `n`.
    /// Exact: the non-units of a local ring form a subspace, so it suffices
    /// to test products of basis maps.
    pub fn split_injection_into(&self, n: &FpModule) -> Result<Option<(FpMatrix, FpMatrix)>> {
        let to = hom_space(&self.module, n)?;
        if to.is_empty() {
            return Ok(None);
        }
        let from = hom_space(n, &self.module)?;
        for f in &to {
            for g in &from {
                let u = g.mul(f);
                if self.is_unit(&u) {
                    let inv = u.inverse().expect("units of End are invertible");
                    return Ok(Some((f.clone(), inv.mul(g))));
                }
            }
        }
        Ok(None)
    }

    pub fn is_summand_of(&self, n: &FpModule) -> Result<bool> {
        Ok(self.split_injection_into(n)?.is_some())
    }

    /// An isomorphism `self → other`, if one exists.
    pub fn isomorphism_to(&self, other: &Indecomposable) -> Result<Option<FpMatrix>> {
        if self.dim() != other.dim() || self.certificate != other.certificate {
            return Ok(None);
        }
        Ok(self.split_injection_into(&other.module)?.map(|(f, _)| f))
    }

    pub fn is_isomorphic_to(&self, other: &Indecomposable) -> Result<bool> {
        Ok(self.isomorphism_to(other)?.is_some())
    }
}

/// `(ι, π)` with `π ι = id_m` when `m` is a summand of `n`.
pub fn split_injection(m: &Indecomposable, n: &FpModule) -> Result<Option<(FpMatrix, FpMatrix)>> {
    m.split_injection_into(n)
}

/// Krull-Schmidt decomposition. Summands are grouped into isomorphism
/// classes; copies are rewritten in the basis of the first representative.
pub fn decompose(m: &FpModule, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = m.prime();
    let mut stack = vec![(m.clone(), FpMatrix::identity(p, m.dim()))];
    let mut pieces: Vec<(Indecomposable, FpMatrix)> = Vec::new();
    while let Some((piece, basis)) = stack.pop() {
        if piece.dim() == 0 {
            continue;
        }
        match analyse(&piece, &mut rng)? {
            Analysis::Split(u, w) => {
                let (mu, mw, _) = split_along(&piece, &u, &w);
                stack.push((mw, basis.mul(&w)));
                stack.push((mu, basis.mul(&u)));
            }
            Analysis::Local(ind) => pieces.push((ind, basis)),
            Analysis::Inconclusive => unreachable!(),
        }
    }
    let mut classes: Vec<(Indecomposable, Vec<FpMatrix>)> = Vec::new();
    'pieces: for (ind, basis) in pieces {
        for (rep, bases) in classes.iter_mut() {
            if let Some(phi) = rep.isomorphism_to(&ind)? {
                bases.push(basis.mul(&phi));
                continue 'pieces;
            }
        }
        classes.push((ind, vec![basis]));
    }
    classes.sort_by_key(|(rep, _)| rep.dim());
    let blocks: Vec<&FpMatrix> = classes.iter().flat_map(|(_, b)| b.iter()).collect();
    let change_of_basis = if blocks.is_empty() {
        FpMatrix::zeros(p, 0, 0)
    } else {
        FpMatrix::hstack(&blocks)
    };
    let summands = classes
        .into_iter()
        .map(|(indecomposable, bases)| Summand {
            indecomposable,
            multiplicity: bases.len(),
        })
        .collect();
    Ok(Decomposition {
        summands,
        change_of_basis,
    })
}

impl Decomposition {
    /// Dimensions of all indecomposable summands with repetition, ascending.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .summands
            .iter()
            .flat_map(|s| std::iter::repeat(s.indecomposable.dim()).take(s.multiplicity))
            .collect();
        d.sort_unstable();
        d
    }

    pub fn num_indecomposables(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.num_indecomposables() == 1
    }

    /// Exact check of the block structure against the original module.
    pub fn verify(&self, m: &FpModule) -> bool {
        let p = m.prime();
        let Some(inv) = self.change_of_basis.inverse() else {
            return m.dim() == 0;
        };
        let parts: Vec<&FpModule> = self
            .summands
            .iter()
            .flat_map(|s| std::iter::repeat(s.module()).take(s.multiplicity))
            .collect();
        let Ok(sum) = FpModule::direct_sum_all(m.group().clone(), p, &parts) else {
            return false;
        };
        m.action()
            .iter()
            .zip(sum.action())
            .all(|(a, b)| inv.mul(&a.mul(&self.change_of_basis)) == *b)
    }

    /// Multiplicity of the class of `x` among the summands.
    pub fn multiplicity_of(&self, x: &Indecomposable) -> Result<usize> {
        for s in &self.summands {
            if s.indecomposable.is_isomorphic_to(x)? {
                return Ok(s.multiplicity);
            }
        }
        Ok(0)
    }
}

/// Equality of the multisets of isomorphism classes.
pub fn same_multiset(a: &Decomposition, b: &Decomposition) -> Result<bool> {
    if a.dims() != b.dims() || a.summands.len() != b.summands.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.summands.len()];
    for s in &a.summands {
        let mut found = false;
        for (j, t) in b.summands.iter().enumerate() {
            if !used[j]
                && s.multiplicity == t.multiplicity
                && s.indecomposable.is_isomorphic_to(&t.indecomposable)?
            {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Looks for an invertible map in `Hom(m, n)`: basis elements, then seeded
/// random combinations, then (for small spaces over GF(2) or GF(3)) every
/// combination; otherwise compares decompositions.
pub fn is_isomorphic(m: &FpModule, n: &FpModule) -> Result<bool> {
    m.check_compatible(n)?;
    if m.dim() != n.dim() {
        return Ok(false);
    }
    if m.dim() == 0 {
        return Ok(true);
    }
    let h = hom_space(m, n)?;
    if h.is_empty() {
        return Ok(false);
    }
    if hom_space(m, m)?.len() != h.len() || hom_space(n, n)?.len() != h.len() {
        return Ok(false);
    }
    if h.iter().any(|f| f.is_invertible()) {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..64 {
        if random_element(&h, &mut rng).is_invertible() {
            return Ok(true);
        }
    }
    let p = m.prime();
    let d = m.dim() as u64;
    let combos = (p as u64).saturating_pow(h.len() as u32);
    if h.len() <= 12 && p <= 3 && combos.saturating_mul(d * d * d) <= 4_000_000_000 {
        let mut coeffs = vec![0u32; h.len()];
        for _ in 1..combos {
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < p {
                    break;
                }
                *c = 0;
            }
            let mut f = FpMatrix::zeros(p, n.dim(), m.dim());
            for (c, b) in coeffs.iter().zip(&h) {
                if *c != 0 {
                    f.add_scaled(*c, b);
                }
            }
            if f.is_invertible() {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    same_multiset(&decompose(m, DEFAULT_SEED)?, &decompose(n, DEFAULT_SEED)?)
}
