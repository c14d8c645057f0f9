use super::*;
use crate::catalog::{degenerate_scenario, group, scenario, subgroup};
use crate::fp::Echelon;
use crate::modrep::{hom_space, Indecomposable};

fn sc(name: &str) -> Scenario {
    Scenario::new(&scenario(name).unwrap()).unwrap()
}

fn classified(m: &FpModule) -> Classified {
    Classified::new(Indecomposable::certify(m, 0).unwrap().expect("indecomposable")).unwrap()
}

/// Span of every composite `m → Ind_X Res_X n → n` over all pairs of
/// maps, by enumeration of both hom spaces.
fn factorizations_by_enumeration(m: &FpModule, n: &FpModule, x: &SubgroupEmbedding) -> usize {
    let ind = Induction::new(x);
    let mid = ind.induce(&ind.restrict(n).unwrap()).unwrap();
    let into = hom_space(m, &mid).unwrap();
    let out = hom_space(&mid, n).unwrap();
    let p = m.prime();
    let combos = |basis: &[FpMatrix], rows: usize, cols: usize| -> Vec<FpMatrix> {
        let total = (p as usize).pow(basis.len() as u32);
        (0..total)
            .map(|mut code| {
                let mut f = FpMatrix::zeros(p, rows, cols);
                for b in basis {
                    f.add_scaled((code % p as usize) as u32, b);
                    code /= p as usize;
                }
                f
            })
            .collect()
    };
    let mut span = Echelon::new(p, m.dim() * n.dim());
    for f in combos(&into, mid.dim(), m.dim()) {
        for g in combos(&out, n.dim(), mid.dim()) {
            span.insert(g.mul(&f).flatten());
        }
    }
    span.rank()
}

#[test]
fn factoring_through_trivial_subgroup_of_c2() {
    let g = group("C2").unwrap();
    let k = FpModule::trivial(g.clone(), 2);
    let one = SubgroupEmbedding::trivial(g, "1");
    assert_eq!(factorizations_by_enumeration(&k, &k, &one), 0);
    assert!(factoring_subspace(&k, &k, &[one.clone()]).unwrap().is_empty());
    assert_eq!(quotient_hom_dim(&k, &k, &[one]).unwrap(), 1);
}

#[test]
fn quotient_dims_over_s3() {
    let s = sc("S3_C2_C2");
    let k = FpModule::trivial(s.g.clone(), 2);
    let one = SubgroupEmbedding::trivial(s.g.clone(), "1");
    assert_eq!(factorizations_by_enumeration(&k, &k, &one), 0);
    assert_eq!(quotient_hom_dim(&k, &k, s.x_over_g()).unwrap(), 1);
    assert_eq!(quotient_hom_dim(&k, &k, &[]).unwrap(), 1);
    let whole = SubgroupEmbedding::whole(s.g.clone(), "G");
    let reg = FpModule::regular(s.g.clone(), 2);
    assert_eq!(quotient_hom_dim(&reg, &k, &[whole]).unwrap(), 0);
    // the regular module is induced from 1, so everything into it factors
    assert_eq!(quotient_hom_dim(&k, &reg, &[one.clone()]).unwrap(), 0);
    assert_eq!(quotient_hom_dim(&reg, &reg, &[one]).unwrap(), 0);
}

#[test]
fn factoring_dims_agree_with_enumeration() {
    let g = group("S3").unwrap();
    let c2 = subgroup(&g, &["(0 1)"], "C2").unwrap();
    let perm = FpModule::natural_permutation(g.clone(), 2);
    let k = FpModule::trivial(g.clone(), 2);
    for (m, n) in [(&k, &perm), (&perm, &k), (&perm, &perm)] {
        for x in [&c2, &SubgroupEmbedding::trivial(g.clone(), "1")] {
            let fast = factoring_subspace(m, n, std::slice::from_ref(x)).unwrap().len();
            assert_eq!(fast, factorizations_by_enumeration(m, n, x));
        }
    }
}

#[test]
fn x_object_examples() {
    let s = sc("S3_C2_C2");
    let g = s.g.clone();
    let k = classified(&FpModule::trivial(g.clone(), 2));
    let sylow = s.d.clone();
    assert!(is_x_object(&k.module, &[sylow]).unwrap());
    assert!(!is_x_object(&k.module, &[]).unwrap());
    let simple = decompose(&FpModule::regular(g.clone(), 2), 0)
        .unwrap()
        .summands
        .into_iter()
        .find(|s| s.multiplicity == 2)
        .unwrap()
        .indecomposable;
    let one = [SubgroupEmbedding::trivial(g, "1")];
    assert!(is_x_object(&simple, &one).unwrap());
    assert!(is_x_object_by_summands(&simple, &one).unwrap());
    assert!(!is_x_object(&k.module, &one).unwrap());
    assert!(!is_x_object_by_summands(&k.module, &one).unwrap());
}

#[test]
fn s3_trivial_modules_correspond() {
    let s = sc("S3_C2_C2");
    assert!(s.normalizer_condition);
    let n = classified(&FpModule::trivial(s.h.group().clone(), 2));
    let up = correspondent_up(&n, &s, 0).unwrap();
    assert!(up.module.is_trivial());
    assert_eq!(up.discarded, vec![2]);
    let down = correspondent_down(&up.module, &s, 0).unwrap();
    assert!(down.module.is_trivial());
    assert!(down.discarded.is_empty());
}

#[test]
fn a5_trivial_modules_correspond() {
    let s = sc("A5_A4_V4");
    assert!(s.normalizer_condition);
    assert_eq!(s.x_over_g().len(), 1);
    assert_eq!(s.x_over_g()[0].order(), 1);
    let n = classified(&FpModule::trivial(s.h.group().clone(), 2));
    let up = correspondent_up(&n, &s, 0).unwrap();
    assert!(up.module.is_trivial());
    // 5 points: k plus a projective 4-dimensional summand
    assert_eq!(up.discarded, vec![4]);
}

#[test]
fn correspondents_reject_ineligible_inputs() {
    let s = sc("S3_C2_C2");
    let reg = classified(&FpModule::regular(s.h.group().clone(), 2));
    assert!(matches!(correspondent_up(&reg, &s, 0), Err(Error::Input(_))));
    let k = classified(&FpModule::trivial(s.h.group().clone(), 2));
    assert!(matches!(correspondent_down(&k, &s, 0), Err(Error::Input(_))));
}

#[test]
fn test_modules_over_cyclic_defect_group() {
    let s = sc("S4_D8_C4");
    let labels: Vec<String> = s.d_test_modules().unwrap().into_iter().map(|(l, _)| l).collect();
    assert_eq!(labels, ["k_D", "kD", "Omega(k_D)", "Omega^-1(k_D)", "J2", "J3"]);
    for (_, m) in s.d_test_modules().unwrap() {
        assert!(Indecomposable::certify(&m, 0).unwrap().is_some() || m.dim() == 4);
    }
}

#[test]
fn degenerate_scenario_is_identity() {
    let s = Scenario::new(&degenerate_scenario()).unwrap();
    assert!(s.is_degenerate());
    let r = verify_scenario(&s, 0).unwrap();
    assert!(r.families.x.is_empty());
    assert_eq!(r.verdicts.identity_correspondence, Some(true));
    assert!(r.passed(), "{:?}", r.failures);
    assert_eq!(r.correspondence_pairs.len(), r.indecomposables_h.len());
}

#[test]
fn s3_report() {
    let r = verify_scenario(&sc("S3_C2_C2"), 0).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    assert_eq!(r.correspondence_pairs.len(), 1);
    let pair = &r.correspondence_pairs[0];
    assert!(r.entry_h(&pair.h).unwrap().trivial);
    assert!(r.entry_g(&pair.g).unwrap().trivial);
    assert!(r.ff_table.iter().all(|row| row.equal));
    let json = serde_json::to_string(&r).unwrap();
    let back: GreenReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
}
