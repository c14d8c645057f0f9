use std::sync::Arc;

use super::*;
use crate::groupoid::{group_groupoid, subgroup_functor};
use crate::perm::{double_cosets, x_y_u_families, PermGroup, SubgroupEmbedding};

struct Chain {
    h: SubgroupEmbedding,
    d: SubgroupEmbedding,
    i: GroupoidFunctor,
    j: GroupoidFunctor,
}

fn chain(degree: usize, g: &[&str], h: &[&str], d: &[&str]) -> Chain {
    let gg = Arc::new(PermGroup::from_strings(degree, g).unwrap());
    let sub = |gens: &[&str], tag: &str| {
        let perms: Vec<_> = gens.iter().map(|s| crate::perm::Perm::parse(degree, s).unwrap()).collect();
        SubgroupEmbedding::from_perms(gg.clone(), &perms, tag).unwrap()
    };
    let h = sub(h, "H");
    let d = sub(d, "D");
    let g_gpd = group_groupoid(&gg);
    let i = subgroup_functor(&h, &g_gpd).unwrap();
    let d_in_h = d.relative_to(&h).unwrap();
    let j = subgroup_functor(&d_in_h, i.domain()).unwrap();
    Chain { h, d, i, j }
}

fn s3() -> Chain {
    chain(3, &["(0 1)", "(0 1 2)"], &["(0 1)"], &["(0 1)"])
}

fn s4() -> Chain {
    chain(4, &["(0 1)", "(0 1 2 3)"], &["(0 1 2 3)", "(0 2)"], &["(0 1 2 3)"])
}

fn a5() -> Chain {
    chain(
        5,
        &["(0 1 2 3 4)", "(2 3 4)"],
        &["(0 1)(2 3)", "(0 1 2)"],
        &["(0 1)(2 3)", "(0 2)(1 3)"],
    )
}

#[test]
fn whole_group_has_empty_boundary() {
    let c = s3();
    let id_g = GroupoidFunctor::identity(c.i.codomain());
    let gh = GroupoidFunctor::compose(&c.i, &c.j).unwrap();
    let p = partial(&id_g, &gh, &gh).unwrap();
    assert_eq!(p.boundary.num_objects(), 0);
    assert!(p.embedding.is_equivalence());
}

#[test]
fn s3_boundary_of_c2() {
    let c = s3();
    let p = partial(&c.i, &c.j, &c.j).unwrap();
    // (C2/C2/S3) has 6 objects in two components; one meets the H-part.
    assert_eq!(p.over_g.num_objects(), 6);
    assert_eq!(p.boundary.num_components(), 1);
    assert_eq!(p.boundary_stabilizers(), vec![1]);
    assert_eq!(p.boundary.num_objects(), 4);
    assert!(p.embedding.is_full() && p.embedding.is_faithful());
    p.boundary_inclusion.validate_exhaustively().unwrap();
    p.pr1_to_h.validate_exhaustively().unwrap();
}

#[test]
fn boundary_components_match_families() {
    for c in [s3(), s4(), a5()] {
        let fam = x_y_u_families(&c.h, &c.d).unwrap();
        let id_h = GroupoidFunctor::identity(c.i.domain());
        let dd = partial(&c.i, &c.j, &c.j).unwrap();
        let hd = partial(&c.i, &id_h, &c.j).unwrap();
        let hh = partial(&c.i, &id_h, &id_h).unwrap();
        assert!(matches_family(&boundary_components(&dd, &c.d, &c.d), &fam.x));
        assert!(matches_family(&boundary_components(&hd, &c.h, &c.d), &fam.y));
        assert!(matches_family(&boundary_components(&hh, &c.h, &c.h), &fam.u));
    }
}

#[test]
fn boundary_objects_count_double_cosets() {
    // each component has |E||F| / |E ∩ gFg^-1| objects
    let c = s4();
    let p = partial(&c.i, &c.j, &c.j).unwrap();
    let comps = boundary_components(&p, &c.d, &c.d);
    let dc = double_cosets(&c.d, &c.d).unwrap();
    for comp in &comps {
        let m = dc.iter().find(|x| x.rep == comp.coset_rep).unwrap();
        assert_eq!(comp.objects, m.size);
        assert_eq!(comp.stabilizer_order, m.intersection.order());
    }
}

#[test]
fn geography_holds() {
    for c in [s3(), s4(), a5()] {
        let r = geography_check(&c.i, &c.j, &c.j).unwrap();
        assert!(r.holds);
        assert_eq!(r.source.boundary.num_objects(), r.functor.domain().num_objects());
    }
}

#[test]
fn tricky_factorization_commutes() {
    for c in [s3(), s4()] {
        let r = tricky_factorization(&c.i, &c.j).unwrap();
        assert!(r.holds);
        assert!(r.h_part_objects > 0);
        r.u.validate_exhaustively().unwrap();
    }
}

#[test]
fn diagonal_is_functorial() {
    let c = s4();
    let id_h = GroupoidFunctor::identity(c.i.domain());
    let id_d = GroupoidFunctor::identity(c.j.domain());
    let dd = partial(&c.i, &c.j, &c.j).unwrap();
    let hd = partial(&c.i, &id_h, &c.j).unwrap();
    let hh = partial(&c.i, &id_h, &id_h).unwrap();
    let a = diagonal_functor(&dd, &hd, &c.j, &id_d).unwrap();
    let b = diagonal_functor(&hd, &hh, &id_h, &c.j).unwrap();
    let ab = diagonal_functor(&dd, &hh, &c.j, &c.j).unwrap();
    assert_eq!(GroupoidFunctor::compose(&b, &a).unwrap(), ab);
    let id = diagonal_functor(&dd, &dd, &id_d, &id_d).unwrap();
    assert!(id.is_isomorphism());
}

#[test]
fn diagonal_rejects_noncommuting_data() {
    let c = s4();
    let id_h = GroupoidFunctor::identity(c.i.domain());
    let dd = partial(&c.i, &c.j, &c.j).unwrap();
    let hh = partial(&c.i, &id_h, &id_h).unwrap();
    assert!(diagonal_functor(&hh, &dd, &id_h, &id_h).is_err());
}
