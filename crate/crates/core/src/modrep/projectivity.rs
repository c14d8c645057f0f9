use super::{decompose, hom_space, FpModule, Indecomposable, Induction, DEFAULT_SEED};
use crate::error::{input, Error, Result};
use crate::fp::{Echelon, FpMatrix};
use crate::perm::{p_subgroups_up_to_conjugacy, sylow, SubgroupEmbedding};

/// `Tr_X^G(f) = Σ_{t ∈ G/X} ρ_n(t) f ρ_m(t^{-1})`.
pub fn relative_trace(m: &FpModule, n: &FpModule, x: &SubgroupEmbedding, f: &FpMatrix) -> Result<FpMatrix> {
    m.check_compatible(n)?;
    if !x.ambient().same_group(m.group()) {
        return input(format!("{} is not a subgroup of the module's group", x.tag()));
    }
    Ok(Induction::new(x).trace(m, n, f))
}

fn whole(m: &FpModule) -> SubgroupEmbedding {
    SubgroupEmbedding::whole(m.group().clone(), "G")
}

/// Coordinates (in the reduced echelon basis of `Hom_G(m, n)`) of
/// `Tr_X^G(f)` are its entries at the pivot positions, a linear functional
/// `f ↦ ⟨f, K⟩` with `K` computed once per pivot.
struct TraceFunctionals {
    kernels: Vec<FpMatrix>,
}

impl TraceFunctionals {
    fn new(m: &FpModule, n: &FpModule, x: &SubgroupEmbedding, pivots: &[usize]) -> Self {
        let p = m.prime();
        let (dm, dn) = (m.dim(), n.dim());
        let g = x.ambient();
        let reps = x.left_coset_reps();
        let kernels = pivots
            .iter()
            .map(|&pos| {
                let (a, b) = (pos / dm, pos % dm);
                // K[i][j] = Σ_t ρ_n(t)[a][i] ρ_m(t^{-1})[j][b]
                let mut k = FpMatrix::zeros(p, dn, dm);
                for &t in &reps {
                    let left = n.element_action(t).row(a).to_vec();
                    let right = m.element_action(g.inv(t)).column(b);
                    for (i, &l) in left.iter().enumerate() {
                        if l == 0 {
                            continue;
                        }
                        let row = k.row_mut(i);
                        for (j, &r) in right.iter().enumerate() {
                            row[j] = ((row[j] as u64 + l as u64 * r as u64) % p as u64) as u32;
                        }
                    }
                }
                k
            })
            .collect();
        Self { kernels }
    }

    fn apply(&self, f: &FpMatrix) -> Vec<u32> {
        let p = f.prime() as u64;
        self.kernels
            .iter()
            .map(|k| {
                let s: u64 = f.data().iter().zip(k.data()).map(|(&a, &b)| a as u64 * b as u64 % p).sum();
                (s % p) as u32
            })
            .collect()
    }

    /// Image of `Hom_k(m, n)` (all matrices) under the functionals.
    fn image_of_all(&self, dn: usize, dm: usize, into: &mut Echelon) {
        for i in 0..dn {
            for j in 0..dm {
                let v: Vec<u32> = self.kernels.iter().map(|k| k.get(i, j)).collect();
                into.insert(v);
                if into.is_full() {
                    return;
                }
            }
        }
    }
}

fn coords_to_maps(basis: &[FpMatrix], coords: &Echelon) -> Vec<FpMatrix> {
    coords
        .sorted_rows()
        .into_iter()
        .map(|c| {
            let mut f = FpMatrix::zeros(basis[0].prime(), basis[0].rows(), basis[0].cols());
            for (x, b) in c.iter().zip(basis) {
                if *x != 0 {
                    f.add_scaled(*x, b);
                }
            }
            f
        })
        .collect()
}

fn canonical(maps: Vec<FpMatrix>, p: u32, rows: usize, cols: usize) -> Vec<FpMatrix> {
    Echelon::from_rows(p, rows * cols, maps.into_iter().map(|f| f.flatten()))
        .sorted_rows()
        .into_iter()
        .map(|r| FpMatrix::from_data(p, rows, cols, r).unwrap())
        .collect()
}

/// Maps `m → n` factoring through a module induced from some `X` in the
/// family, computed as `Σ_X Tr_X^G(Hom_X(m, n))`. Reduced echelon basis.
pub fn factoring_subspace(m: &FpModule, n: &FpModule, family: &[SubgroupEmbedding]) -> Result<Vec<FpMatrix>> {
    let hom = hom_space(m, n)?;
    if hom.is_empty() || family.is_empty() {
        return Ok(Vec::new());
    }
    let p = m.prime();
    let (dm, dn) = (m.dim(), n.dim());
    let ech = Echelon::from_rows(p, dm * dn, hom.iter().map(|f| f.flatten()));
    // sorted_rows order matches `hom`; pivots in the same order
    let pivots = ech.sorted_pivots();
    let mut image = Echelon::new(p, hom.len());
    for x in family {
        if !x.ambient().same_group(m.group()) {
            return input(format!("{} is not a subgroup of the module's group", x.tag()));
        }
        if x.order() == m.group().order() {
            return Ok(hom);
        }
        let tf = TraceFunctionals::new(m, n, x, &pivots);
        if x.order() == 1 {
            tf.image_of_all(dn, dm, &mut image);
        } else {
            let ind = Induction::new(x);
            let local = hom_space(&ind.restrict(m)?, &ind.restrict(n)?)?;
            for f in &local {
                image.insert(tf.apply(f));
                if image.is_full() {
                    break;
                }
            }
        }
        if image.is_full() {
            return Ok(hom);
        }
    }
    Ok(canonical(coords_to_maps(&hom, &image), p, dn, dm))
}

/// The same subspace computed literally: images of
/// `Hom_G(m, Ind_X Res_X n) → Hom_G(m, n)` under the counit.
pub fn factoring_subspace_via_counit(
    m: &FpModule,
    n: &FpModule,
    family: &[SubgroupEmbedding],
) -> Result<Vec<FpMatrix>> {
    m.check_compatible(n)?;
    let mut maps = Vec::new();
    for x in family {
        let ind = Induction::new(x);
        let irn = ind.induce(&ind.restrict(n)?)?;
        let eps = ind.counit(n);
        for psi in hom_space(m, &irn)? {
            maps.push(eps.mul(&psi));
        }
    }
    Ok(canonical(maps, m.prime(), n.dim(), m.dim()))
}

/// Projectivity: the restriction to a Sylow `p`-subgroup `P` is free, i.e.
/// the norm element `Σ_{x ∈ P} x` acts with rank `dim / |P|`.
pub fn is_projective(m: &FpModule) -> Result<bool> {
    let p = sylow(&whole(m), m.prime())?;
    if m.dim() % p.order() != 0 {
        return Ok(false);
    }
    let norm = m.sum_of(p.elements());
    Ok(norm.rank() * p.order() == m.dim())
}

/// Higman's criterion: `id_m ∈ Tr_D^G(End_D(m))`.
pub fn is_relatively_projective(m: &FpModule, d: &SubgroupEmbedding) -> Result<bool> {
    if !d.ambient().same_group(m.group()) {
        return input(format!("{} is not a subgroup of the module's group", d.tag()));
    }
    if m.dim() == 0 || d.order() == m.group().order() {
        return Ok(true);
    }
    if d.order() == 1 {
        return is_projective(m);
    }
    let f = factoring_subspace(m, m, std::slice::from_ref(d))?;
    let id = FpMatrix::identity(m.prime(), m.dim()).flatten();
    let ech = Echelon::from_rows(m.prime(), m.dim() * m.dim(), f.into_iter().map(|x| x.flatten()));
    Ok(ech.contains(&id))
}

/// `m | Ind_D Res_D m`, decided from the two decompositions.
pub fn is_relatively_projective_by_summands(m: &FpModule, d: &SubgroupEmbedding, seed: u64) -> Result<bool> {
    let ind = Induction::new(d);
    let big = ind.induce(&ind.restrict(m)?)?;
    let dm = decompose(m, seed)?;
    let db = decompose(&big, seed)?;
    for s in &dm.summands {
        if db.multiplicity_of(&s.indecomposable)? < s.multiplicity {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct Vertex {
    /// Vertex as a subgroup of the module's group.
    pub subgroup: SubgroupEmbedding,
    /// An indecomposable module over the vertex with `m | Ind source`.
    pub source: Indecomposable,
}

/// Smallest `p`-subgroup `Q` (up to conjugacy, inside a Sylow subgroup)
/// with `m` relatively `Q`-projective, and a source over it.
pub fn vertex(m: &Indecomposable) -> Result<Vertex> {
    let module = m.module();
    let s = sylow(&whole(module), module.prime())?;
    let mut candidates = p_subgroups_up_to_conjugacy(&s)?;
    candidates.reverse();
    for q in candidates {
        if !is_relatively_projective(module, &q)? {
            continue;
        }
        let ind = Induction::new(&q);
        let res = decompose(&ind.restrict(module)?, DEFAULT_SEED)?;
        for summand in &res.summands {
            let up = ind.induce(summand.module())?;
            if m.is_summand_of(&up)? {
                return Ok(Vertex {
                    subgroup: q,
                    source: summand.indecomposable.clone(),
                });
            }
        }
        return Err(Error::TheoremViolation(format!(
            "relatively {}-projective module has no source",
            q.tag()
        )));
    }
    Err(Error::TheoremViolation("module is not relatively projective to a Sylow subgroup".into()))
}
