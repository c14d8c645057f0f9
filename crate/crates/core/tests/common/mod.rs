#![allow(dead_code)]

use std::sync::Arc;

use green_core::catalog::all_subgroups;
use green_core::fp::FpMatrix;
use green_core::modrep::{induce, FpModule};
use green_core::perm::{PermGroup, SubgroupEmbedding};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_invertible(p: u32, n: usize, rng: &mut ChaCha8Rng) -> FpMatrix {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
        let q = FpMatrix::from_data(p, n, n, data).unwrap();
        if q.is_invertible() {
            return q;
        }
    }
}

/// A direct sum of permutation modules on coset spaces, their augmentation
/// kernels and norm quotients, duals and (for odd `p`) the sign module,
/// in a random basis. Dimension at most `max_dim`.
pub fn random_module(g: &Arc<PermGroup>, subs: &[SubgroupEmbedding], p: u32, max_dim: usize, rng: &mut ChaCha8Rng) -> FpModule {
    let target = rng.gen_range(1..=max_dim);
    let mut parts: Vec<FpModule> = Vec::new();
    let mut dim = 0;
    let mut attempts = 0;
    while dim < target && attempts < 50 {
        attempts += 1;
        let room = target - dim;
        let part = match rng.gen_range(0..6) {
            0 => FpModule::trivial(g.clone(), p),
            1 if p > 2 => FpModule::sign(g.clone(), p),
            kind => {
                let fits: Vec<&SubgroupEmbedding> = subs.iter().filter(|s| s.index() <= room + 1).collect();
                let s = fits[rng.gen_range(0..fits.len())];
                let perm = induce(&FpModule::trivial(s.group().clone(), p), s).unwrap();
                let n = perm.dim();
                let cut = match kind {
                    2 | 3 if n > 1 => {
                        let aug: Vec<Vec<u32>> = (1..n)
                            .map(|i| {
                                let mut v = vec![0; n];
                                v[0] = 1;
                                v[i] = p - 1;
                                v
                            })
                            .collect();
                        perm.submodule(&FpMatrix::from_columns(p, n, &aug)).unwrap()
                    }
                    4 if n > 1 => perm.quotient(&FpMatrix::from_columns(p, n, &[vec![1; n]])).unwrap(),
                    _ => perm,
                };
                if kind == 3 {
                    cut.dual()
                } else {
                    cut
                }
            }
        };
        if part.dim() == 0 || part.dim() > room {
            continue;
        }
        dim += part.dim();
        parts.push(part);
    }
    if parts.is_empty() {
        parts.push(FpModule::trivial(g.clone(), p));
    }
    let refs: Vec<&FpModule> = parts.iter().collect();
    let sum = FpModule::direct_sum_all(g.clone(), p, &refs).unwrap();
    let q = random_invertible(p, sum.dim(), rng);
    sum.change_basis(&q).unwrap()
}

/// Subgroups of `g` together with their own subgroup lists, cached per group.
pub struct SubgroupLattice {
    pub subgroups: Vec<SubgroupEmbedding>,
    pub local: Vec<Vec<SubgroupEmbedding>>,
}

impl SubgroupLattice {
    pub fn new(g: &Arc<PermGroup>) -> Self {
        let subgroups = all_subgroups(g);
        let local = subgroups.iter().map(|s| all_subgroups(s.group())).collect();
        Self { subgroups, local }
    }
}
