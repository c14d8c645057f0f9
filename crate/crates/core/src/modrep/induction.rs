use super::FpModule;
use crate::error::{input, Result};
use crate::fp::FpMatrix;
use crate::perm::{double_cosets, SubgroupEmbedding};

/// Induction and restriction along `H ≤ G` with fixed left coset
/// representatives `t_0 = 1 < t_1 < …` (each the least element of its coset).
/// `Ind M` has basis `t_i ⊗ m_j`, ordered coset-major.
#[derive(Clone, Debug)]
pub struct Induction {
    sub: SubgroupEmbedding,
    reps: Vec<usize>,
    coset_of: Vec<u32>,
}

impl Induction {
    pub fn new(sub: &SubgroupEmbedding) -> Self {
        let g = sub.ambient();
        let reps = sub.left_coset_reps();
        let mut coset_of = vec![u32::MAX; g.order()];
        for (i, &t) in reps.iter().enumerate() {
            for &h in sub.elements() {
                coset_of[g.mul(t, h)] = i as u32;
            }
        }
        Self {
            sub: sub.clone(),
            reps,
            coset_of,
        }
    }

    pub fn subgroup(&self) -> &SubgroupEmbedding {
        &self.sub
    }
    pub fn coset_reps(&self) -> &[usize] {
        &self.reps
    }
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    fn check_source(&self, m: &FpModule) -> Result<()> {
        if !m.group().same_group(self.sub.group()) {
            return input(format!("module is not over the subgroup {}", self.sub.tag()));
        }
        Ok(())
    }

    fn check_target(&self, n: &FpModule) -> Result<()> {
        if !n.group().same_group(self.sub.ambient()) {
            return input(format!("module is not over the ambient group of {}", self.sub.tag()));
        }
        Ok(())
    }

    /// `Ind_H^G m`: `g t_i = t_j h` puts `ρ(h)` in block `(j, i)`.
    pub fn induce(&self, m: &FpModule) -> Result<FpModule> {
        self.check_source(m)?;
        let g = self.sub.ambient();
        let (p, d, k) = (m.prime(), m.dim(), self.index());
        let action = g
            .generator_indices()
            .iter()
            .map(|&s| {
                let mut a = FpMatrix::zeros(p, k * d, k * d);
                for (i, &t) in self.reps.iter().enumerate() {
                    let x = g.mul(s, t);
                    let j = self.coset_of[x] as usize;
                    let h = g.mul(g.inv(self.reps[j]), x);
                    let local = self.sub.to_local(h).expect("coset bookkeeping");
                    a.set_block(j * d, i * d, m.element_action(local));
                }
                a
            })
            .collect();
        Ok(FpModule::from_action_unchecked(g.clone(), p, k * d, action))
    }

    /// `Ind(f)`: one copy of `f` per coset.
    pub fn induce_map(&self, f: &FpMatrix) -> FpMatrix {
        let k = self.index();
        let mut out = FpMatrix::zeros(f.prime(), k * f.rows(), k * f.cols());
        for i in 0..k {
            out.set_block(i * f.rows(), i * f.cols(), f);
        }
        out
    }

    pub fn restrict(&self, n: &FpModule) -> Result<FpModule> {
        self.check_target(n)?;
        let action = self
            .sub
            .group()
            .generator_indices()
            .iter()
            .map(|&s| n.element_action(self.sub.to_ambient(s)).clone())
            .collect();
        Ok(FpModule::from_action_unchecked(
            self.sub.group().clone(),
            n.prime(),
            n.dim(),
            action,
        ))
    }

    /// Unit of `Ind ⊣ Res`: `m → Res Ind m`, `x ↦ 1 ⊗ x`.
    pub fn unit(&self, m: &FpModule) -> FpMatrix {
        let d = m.dim();
        let mut out = FpMatrix::zeros(m.prime(), self.index() * d, d);
        out.set_block(0, 0, &FpMatrix::identity(m.prime(), d));
        out
    }

    /// Counit of `Ind ⊣ Res`: `Ind Res n → n`, `t_i ⊗ x ↦ t_i x`.
    pub fn counit(&self, n: &FpModule) -> FpMatrix {
        let d = n.dim();
        let mut out = FpMatrix::zeros(n.prime(), d, self.index() * d);
        for (i, &t) in self.reps.iter().enumerate() {
            out.set_block(0, i * d, n.element_action(t));
        }
        out
    }

    /// Unit of `Res ⊣ Ind`: `n → Ind Res n`, `x ↦ Σ_i t_i ⊗ t_i^{-1} x`.
    pub fn unit_right(&self, n: &FpModule) -> FpMatrix {
        let g = self.sub.ambient();
        let d = n.dim();
        let mut out = FpMatrix::zeros(n.prime(), self.index() * d, d);
        for (i, &t) in self.reps.iter().enumerate() {
            out.set_block(i * d, 0, n.element_action(g.inv(t)));
        }
        out
    }

    /// Counit of `Res ⊣ Ind`: `Res Ind m → m`, projection onto `1 ⊗ m`.
    pub fn counit_right(&self, m: &FpModule) -> FpMatrix {
        let d = m.dim();
        let mut out = FpMatrix::zeros(m.prime(), d, self.index() * d);
        out.set_block(0, 0, &FpMatrix::identity(m.prime(), d));
        out
    }

    /// `Σ_i ρ_n(t_i) f ρ_m(t_i^{-1})` for an `H`-map `f: Res m → Res n`.
    pub fn trace(&self, m: &FpModule, n: &FpModule, f: &FpMatrix) -> FpMatrix {
        let g = self.sub.ambient();
        let mut out = FpMatrix::zeros(f.prime(), f.rows(), f.cols());
        for &t in &self.reps {
            let term = n.element_action(t).mul(&f.mul(m.element_action(g.inv(t))));
            out.add_scaled(1, &term);
        }
        out
    }
}

pub fn induce(m: &FpModule, sub: &SubgroupEmbedding) -> Result<FpModule> {
    Induction::new(sub).induce(m)
}

pub fn restrict(n: &FpModule, sub: &SubgroupEmbedding) -> Result<FpModule> {
    Induction::new(sub).restrict(n)
}

/// `conj_g m`: a module over `D` becomes a module over `gDg^{-1}` with
/// `x` acting as `g^{-1} x g`.
pub fn conjugate(m: &FpModule, d: &SubgroupEmbedding, g: usize) -> Result<(SubgroupEmbedding, FpModule)> {
    if !m.group().same_group(d.group()) {
        return input(format!("module is not over {}", d.tag()));
    }
    let amb = d.ambient();
    let gd = d.conjugate(g);
    let ginv = amb.inv(g);
    let action = gd
        .group()
        .generator_indices()
        .iter()
        .map(|&s| {
            let y = gd.to_ambient(s);
            let x = amb.mul(amb.mul(ginv, y), g);
            m.element_action(d.to_local(x).expect("conjugate lies in D")).clone()
        })
        .collect();
    let module = FpModule::from_action_unchecked(gd.group().clone(), m.prime(), m.dim(), action);
    Ok((gd, module))
}

/// The summands `Ind_{K ∩ gHg^{-1}}^K conj_g Res_{g^{-1}Kg ∩ H}^H m`, one per
/// double coset `KgH`, as modules over `K`.
pub fn mackey_terms(m: &FpModule, h: &SubgroupEmbedding, k: &SubgroupEmbedding) -> Result<Vec<FpModule>> {
    let g = h.ambient();
    let mut out = Vec::new();
    for dc in double_cosets(k, h)? {
        let rep = dc.rep;
        let l = &dc.intersection;
        let pulled = l.conjugate(g.inv(rep));
        let res = restrict(m, &pulled.relative_to(h)?)?;
        let (pushed, conj) = conjugate(&res, &pulled, rep)?;
        out.push(induce(&conj, &pushed.relative_to(k)?)?);
    }
    Ok(out)
}
