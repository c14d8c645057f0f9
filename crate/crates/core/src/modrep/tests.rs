use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::catalog::{group, subgroup};
use crate::perm::{normalizer, sylow, SubgroupEmbedding};

fn whole(g: &Arc<PermGroup>) -> SubgroupEmbedding {
    SubgroupEmbedding::whole(g.clone(), "G")
}

/// Every element of `End(M)` (at most `p^dim End` of them) that is idempotent.
fn idempotents(m: &FpModule) -> usize {
    let e = hom_space(m, m).unwrap();
    let p = m.prime();
    let total = (p as usize).pow(e.len() as u32);
    assert!(total <= 1 << 16, "oracle too large");
    let mut count = 0;
    for code in 0..total {
        let mut c = code;
        let mut f = FpMatrix::zeros(p, m.dim(), m.dim());
        for b in &e {
            f.add_scaled((c % p as usize) as u32, b);
            c /= p as usize;
        }
        if f.mul(&f) == f {
            count += 1;
        }
    }
    count
}

fn random_module(g: &Arc<PermGroup>, p: u32, seed: u64) -> FpModule {
    // A random submodule-free construction: permutation module on a random
    // coset space twisted by a random change of basis, plus a direct summand.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subs = crate::catalog::all_subgroups(g);
    let s = &subs[rng.gen_range(0..subs.len())];
    let base = if s.index() <= 8 {
        induce(&FpModule::trivial(s.group().clone(), p), s).unwrap()
    } else {
        FpModule::trivial(g.clone(), p)
    };
    let n = base.dim();
    let q = loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
        let q = FpMatrix::from_data(p, n, n, data).unwrap();
        if q.is_invertible() {
            break q;
        }
    };
    base.change_basis(&q).unwrap()
}

#[test]
fn element_actions_are_multiplicative() {
    let g = group("S4").unwrap();
    let m = induce(
        &FpModule::trivial(subgroup(&g, &["(0 1 2 3)"], "C4").unwrap().group().clone(), 3),
        &subgroup(&g, &["(0 1 2 3)"], "C4").unwrap(),
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let a = rng.gen_range(0..g.order());
        let b = rng.gen_range(0..g.order());
        assert_eq!(m.element_action(a).mul(m.element_action(b)), *m.element_action(g.mul(a, b)));
    }
}

#[test]
fn rejects_bad_actions() {
    let g = group("S3").unwrap();
    let bad = vec![FpMatrix::identity(2, 1), FpMatrix::zeros(2, 1, 1)];
    assert!(FpModule::new(g.clone(), 2, 1, bad).is_err());
    // (0 1) ↦ 1, (0 1 2) ↦ 2 over GF(3): (0 1 2) has order 3 but 2 has order 2
    let bad = vec![FpMatrix::identity(3, 1), FpMatrix::scalar(3, 1, 2)];
    assert!(FpModule::new(g, 3, 1, bad).is_err());
}

#[test]
fn basic_hom_dimensions() {
    let s3 = group("S3").unwrap();
    let k = FpModule::trivial(s3.clone(), 2);
    assert_eq!(hom_dim(&k, &k).unwrap(), 1);
    let reg = FpModule::regular(s3.clone(), 2);
    assert_eq!(hom_dim(&reg, &reg).unwrap(), 6);
    let c2 = group("C2").unwrap();
    let k2 = FpModule::trivial(c2.clone(), 2);
    let kc2 = FpModule::regular(c2, 2);
    let h = hom_space(&k2, &kc2).unwrap();
    assert_eq!(h.len(), 1);
    assert_eq!(h[0], FpMatrix::from_rows(2, 1, &[vec![1], vec![1]]));
}

#[test]
fn spinning_matches_naive_hom() {
    for (name, p) in [("S3", 2), ("S3", 3), ("D8", 2), ("A4", 3)] {
        let g = group(name).unwrap();
        for seed in 0..4 {
            let m = random_module(&g, p, seed);
            let n = random_module(&g, p, seed + 100);
            assert_eq!(hom_space(&m, &n).unwrap(), hom_space_naive(&m, &n).unwrap(), "{name} {seed}");
        }
    }
}

#[test]
fn induction_from_trivial_subgroup_is_regular() {
    let g = group("S3").unwrap();
    let one = SubgroupEmbedding::trivial(g.clone(), "1");
    let ind = induce(&FpModule::trivial(one.group().clone(), 2), &one).unwrap();
    assert_eq!(ind.dim(), 6);
    assert!(is_isomorphic(&ind, &FpModule::regular(g.clone(), 2)).unwrap());
    let same = induce(&FpModule::trivial(g.clone(), 2), &whole(&g)).unwrap();
    assert_eq!(same, FpModule::trivial(g, 2));
}

#[test]
fn induced_from_c2_in_s3() {
    let g = group("S3").unwrap();
    let c2 = subgroup(&g, &["(0 1)"], "C2").unwrap();
    let m = induce(&FpModule::trivial(c2.group().clone(), 2), &c2).unwrap();
    assert_eq!(m.dim(), 3);
    let d = decompose(&m, 0).unwrap();
    assert!(d.verify(&m));
    assert_eq!(d.dims(), vec![1, 2]);
    assert!(is_isomorphic(d.summands[0].module(), &FpModule::trivial(g, 2)).unwrap());
    for s in &d.summands {
        assert_eq!(idempotents(s.module()), 2);
    }
}

#[test]
fn adjunction_identities() {
    for (gname, hgens, p) in [("S3", vec!["(0 1)"], 2), ("S4", vec!["(0 1 2 3)", "(0 2)"], 3), ("A4", vec!["(0 1)(2 3)"], 2)] {
        let g = group(gname).unwrap();
        let h = subgroup(&g, &hgens, "H").unwrap();
        let ind = Induction::new(&h);
        let n = random_module(&g, p, 7);
        let m = ind.restrict(&random_module(&g, p, 8)).unwrap();
        let im = ind.induce(&m).unwrap();
        let rn = ind.restrict(&n).unwrap();
        let irn = ind.induce(&rn).unwrap();
        // module maps
        assert!(m.is_hom_to(&ind.restrict(&im).unwrap(), &ind.unit(&m)));
        assert!(irn.is_hom_to(&n, &ind.counit(&n)));
        assert!(n.is_hom_to(&irn, &ind.unit_right(&n)));
        assert!(ind.restrict(&im).unwrap().is_hom_to(&m, &ind.counit_right(&m)));
        // triangle identities for Ind ⊣ Res
        let ind_res_im = Induction::new(&h);
        let lhs = ind_res_im.counit(&im).mul(&ind.induce_map(&ind.unit(&m)));
        assert!(lhs.is_identity());
        let rhs = ind.counit(&n).mul(&ind.unit(&rn));
        assert!(rhs.is_identity());
        // triangle identities for Res ⊣ Ind
        let a = ind.counit_right(&rn).mul(&ind.unit_right(&n));
        assert!(a.is_identity());
        let b = ind.induce_map(&ind.counit_right(&m)).mul(&ind.unit_right(&im));
        assert!(b.is_identity());
        // ε ∘ η' = [G:H]
        let c = ind.counit(&n).mul(&ind.unit_right(&n));
        assert_eq!(c, FpMatrix::scalar(p, n.dim(), (ind.index() as u32) % p));
    }
}

#[test]
fn frobenius_reciprocity_dimensions() {
    let g = group("S4").unwrap();
    let h = subgroup(&g, &["(0 1 2 3)", "(0 2)"], "D8").unwrap();
    for seed in 0..3 {
        let n = random_module(&g, 2, seed);
        let m = restrict(&random_module(&g, 2, seed + 9), &h).unwrap();
        let im = induce(&m, &h).unwrap();
        let rn = restrict(&n, &h).unwrap();
        assert_eq!(hom_dim(&im, &n).unwrap(), hom_dim(&m, &rn).unwrap());
        assert_eq!(hom_dim(&n, &im).unwrap(), hom_dim(&rn, &m).unwrap());
    }
}

#[test]
fn c2_regular_module_by_characteristic() {
    let c2 = group("C2").unwrap();
    let reg3 = FpModule::regular(c2.clone(), 3);
    let d = decompose(&reg3, 0).unwrap();
    assert_eq!(d.dims(), vec![1, 1]);
    assert_eq!(d.summands.len(), 2);
    assert_eq!(idempotents(&reg3), 4);
    let triv = FpModule::trivial(c2.clone(), 3);
    let sign = FpModule::sign(c2.clone(), 3);
    assert!(!is_isomorphic(&triv, &sign).unwrap());
    let reg2 = FpModule::regular(c2, 2);
    let d = decompose(&reg2, 0).unwrap();
    assert_eq!(d.dims(), vec![2]);
    assert_eq!(idempotents(&reg2), 2);
    assert_eq!(d.summands[0].indecomposable.certificate().radical_dim, 1);
}

#[test]
fn regular_s3_mod_2() {
    let g = group("S3").unwrap();
    let reg = FpModule::regular(g.clone(), 2);
    let d = decompose(&reg, 0).unwrap();
    assert!(d.verify(&reg));
    assert_eq!(d.dims(), vec![2, 2, 2]);
    let mut mults: Vec<usize> = d.summands.iter().map(|s| s.multiplicity).collect();
    mults.sort_unstable();
    assert_eq!(mults, vec![1, 2]);
    for s in &d.summands {
        assert_eq!(idempotents(s.module()), 2);
    }
}

#[test]
fn krull_schmidt_across_seeds() {
    let g = group("D8").unwrap();
    for base in 0..3 {
        let m = random_module(&g, 2, base);
        let m = m.direct_sum(&random_module(&g, 2, base + 50)).unwrap();
        let first = decompose(&m, 0).unwrap();
        assert!(first.verify(&m));
        for seed in 1..4 {
            let other = decompose(&m, seed).unwrap();
            assert!(other.verify(&m));
            assert!(same_multiset(&first, &other).unwrap());
        }
    }
}

#[test]
fn relative_projectivity_examples() {
    let c2 = group("C2").unwrap();
    let k = FpModule::trivial(c2.clone(), 2);
    let one = SubgroupEmbedding::trivial(c2.clone(), "1");
    assert!(!is_relatively_projective(&k, &one).unwrap());
    assert!(!is_relatively_projective_by_summands(&k, &one, 0).unwrap());
    assert!(is_relatively_projective(&k, &whole(&c2)).unwrap());
    for name in ["S3", "D8", "A4"] {
        let g = group(name).unwrap();
        let p = sylow(&whole(&g), 2).unwrap();
        for seed in 0..3 {
            let m = random_module(&g, 2, seed);
            assert!(is_relatively_projective(&m, &p).unwrap());
        }
    }
}

#[test]
fn higman_agrees_with_summand_test() {
    for name in ["S3", "D8", "A4"] {
        let g = group(name).unwrap();
        let subs = crate::catalog::all_subgroups(&g);
        for seed in 0..2 {
            let m = random_module(&g, 2, seed + 20);
            for s in subs.iter().filter(|s| s.order() <= 4) {
                assert_eq!(
                    is_relatively_projective(&m, s).unwrap(),
                    is_relatively_projective_by_summands(&m, s, 0).unwrap(),
                    "{name} {} seed {seed}",
                    s.tag()
                );
            }
        }
    }
}

#[test]
fn factoring_through_trivial_subgroup() {
    let c2 = group("C2").unwrap();
    let k = FpModule::trivial(c2.clone(), 2);
    let one = SubgroupEmbedding::trivial(c2.clone(), "1");
    assert!(factoring_subspace(&k, &k, &[one.clone()]).unwrap().is_empty());
    assert!(factoring_subspace_via_counit(&k, &k, &[one]).unwrap().is_empty());
    assert_eq!(factoring_subspace(&k, &k, &[whole(&c2)]).unwrap().len(), 1);
    assert!(factoring_subspace(&k, &k, &[]).unwrap().is_empty());
}

#[test]
fn trace_image_equals_counit_image() {
    for name in ["S3", "D8", "A4"] {
        let g = group(name).unwrap();
        let subs = crate::catalog::all_subgroups(&g);
        for seed in 0..2 {
            let m = random_module(&g, 2, seed + 30);
            let n = random_module(&g, 2, seed + 40);
            for s in &subs {
                let fam = [s.clone()];
                assert_eq!(
                    factoring_subspace(&m, &n, &fam).unwrap(),
                    factoring_subspace_via_counit(&m, &n, &fam).unwrap(),
                    "{name} {}",
                    s.tag()
                );
            }
        }
    }
}

#[test]
fn vertices_of_small_modules() {
    let g = group("S3").unwrap();
    let reg = FpModule::regular(g.clone(), 2);
    let d = decompose(&reg, 0).unwrap();
    for s in &d.summands {
        let v = vertex(&s.indecomposable).unwrap();
        assert_eq!(v.subgroup.order(), 1);
    }
    for name in ["S3", "D8", "A4", "S4"] {
        let g = group(name).unwrap();
        let k = Indecomposable::certify(&FpModule::trivial(g.clone(), 2), 0).unwrap().unwrap();
        let v = vertex(&k).unwrap();
        let p = sylow(&whole(&g), 2).unwrap();
        assert_eq!(v.subgroup.order(), p.order(), "{name}");
        assert!(k.is_summand_of(&induce(v.source.module(), &v.subgroup).unwrap()).unwrap());
    }
}

#[test]
fn conjugation_by_normalizer_elements() {
    let g = group("S4").unwrap();
    let d = subgroup(&g, &["(0 1 2 3)"], "C4").unwrap();
    let m = restrict(&random_module(&g, 2, 3), &d).unwrap();
    // conjugating by an element of D gives an isomorphic module
    let x = d.to_ambient(1);
    let (dd, cm) = conjugate(&m, &d, x).unwrap();
    assert!(dd.same_subgroup(&d));
    let cm = cm.with_group(m.group().clone()).unwrap_or(cm);
    assert!(is_isomorphic(&cm, &m).unwrap());
    // vertex of a conjugate is the conjugate vertex
    let nd = normalizer(&d);
    assert!(nd.order() >= d.order());
    let k = FpModule::trivial(d.group().clone(), 2);
    let g1 = 5;
    let (d1, k1) = conjugate(&k, &d, g1).unwrap();
    assert_eq!(k1.dim(), 1);
    assert!(d1.is_conjugate_to(&d));
}

#[test]
fn mackey_formula_small() {
    let g = group("S4").unwrap();
    let h = subgroup(&g, &["(0 1 2 3)", "(0 2)"], "D8").unwrap();
    let k = subgroup(&g, &["(0 1 2)"], "C3").unwrap();
    let m = restrict(&random_module(&g, 2, 11), &h).unwrap();
    let lhs = restrict(&induce(&m, &h).unwrap(), &k).unwrap();
    let terms = mackey_terms(&m, &h, &k).unwrap();
    let refs: Vec<&FpModule> = terms.iter().collect();
    let rhs = FpModule::direct_sum_all(lhs.group().clone(), 2, &refs).unwrap();
    assert!(same_multiset(&decompose(&lhs, 0).unwrap(), &decompose(&rhs, 0).unwrap()).unwrap());
}

#[test]
fn module_json_round_trip() {
    let g = group("A4").unwrap();
    let m = random_module(&g, 3, 5);
    let j = ModuleJson::emit(&m);
    let text = serde_json::to_string(&j).unwrap();
    let back: ModuleJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back, j);
    assert_eq!(back.parse(Some(g.clone())).unwrap(), m);
    assert_eq!(back.parse(None).unwrap().action(), m.action());
    let mut broken = j.clone();
    broken.action.insert("0".into(), vec![0; m.dim() * m.dim()]);
    assert!(broken.parse(None).is_err());
}
