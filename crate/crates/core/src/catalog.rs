//! Named small groups and the standard `D ≤ H ≤ G` scenarios.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::perm::{Perm, PermGroup, SubgroupEmbedding};

/// Degree and generators of a catalog group.
pub fn group_spec(name: &str) -> Option<(usize, &'static [&'static str])> {
    let spec: (usize, &'static [&'static str]) = match name {
        "C2" => (2, &["(0 1)"]),
        "C3" => (3, &["(0 1 2)"]),
        "C4" => (4, &["(0 1 2 3)"]),
        "V4" => (4, &["(0 1)(2 3)", "(0 2)(1 3)"]),
        "C6" => (6, &["(0 1 2 3 4 5)"]),
        "S3" => (3, &["(0 1)", "(0 1 2)"]),
        "D8" => (4, &["(0 1 2 3)", "(0 2)"]),
        "A4" => (4, &["(0 1)(2 3)", "(0 1 2)"]),
        "S4" => (4, &["(0 1)", "(0 1 2 3)"]),
        "A5" => (5, &["(0 1 2 3 4)", "(2 3 4)"]),
        _ => return None,
    };
    Some(spec)
}

pub const GROUP_NAMES: [&str; 10] = ["C2", "C3", "C4", "V4", "C6", "S3", "D8", "A4", "S4", "A5"];

pub fn group(name: &str) -> Result<Arc<PermGroup>> {
    let (degree, gens) = group_spec(name).ok_or_else(|| crate::Error::Input(format!("unknown group {name}")))?;
    Ok(Arc::new(PermGroup::from_strings(degree, gens)?))
}

pub fn subgroup(g: &Arc<PermGroup>, gens: &[impl AsRef<str>], tag: &str) -> Result<SubgroupEmbedding> {
    let perms = gens
        .iter()
        .map(|s| Perm::parse(g.degree(), s.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    SubgroupEmbedding::from_perms(g.clone(), &perms, tag)
}

/// A chain `D ≤ H ≤ G` of permutation groups with a prime, as written in
/// scenario files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub name: String,
    pub p: u32,
    pub degree: usize,
    pub generators_g: Vec<String>,
    pub generators_h: Vec<String>,
    pub generators_d: Vec<String>,
}

impl ScenarioConfig {
    pub fn new(name: &str, p: u32, degree: usize, g: &[&str], h: &[&str], d: &[&str]) -> Self {
        let own = |x: &[&str]| x.iter().map(|s| s.to_string()).collect();
        Self {
            name: name.into(),
            p,
            degree,
            generators_g: own(g),
            generators_h: own(h),
            generators_d: own(d),
        }
    }

    /// Builds `G` and the embeddings of `H` and `D` into it.
    pub fn groups(&self) -> Result<(Arc<PermGroup>, SubgroupEmbedding, SubgroupEmbedding)> {
        if !crate::fp::is_prime(self.p) {
            return input(format!("{} is not prime", self.p));
        }
        let g = Arc::new(PermGroup::from_strings(self.degree, &self.generators_g)?);
        let h = subgroup(&g, &self.generators_h, "H")?;
        let d = subgroup(&g, &self.generators_d, "D")?;
        if !d.is_contained_in(&h) {
            return input("D is not contained in H");
        }
        Ok((g, h, d))
    }
}

/// `(S3, C2, C2)`, `(S4, D8, C4)`, `(S4, D8, D8)` and `(A5, A4, V4)`, all at
/// `p = 2`.
pub fn scenarios() -> Vec<ScenarioConfig> {
    vec![
        ScenarioConfig::new("S3_C2_C2", 2, 3, &["(0 1)", "(0 1 2)"], &["(0 1)"], &["(0 1)"]),
        ScenarioConfig::new(
            "S4_D8_C4",
            2,
            4,
            &["(0 1)", "(0 1 2 3)"],
            &["(0 1 2 3)", "(0 2)"],
            &["(0 1 2 3)"],
        ),
        ScenarioConfig::new(
            "S4_D8_D8",
            2,
            4,
            &["(0 1)", "(0 1 2 3)"],
            &["(0 1 2 3)", "(0 2)"],
            &["(0 1 2 3)", "(0 2)"],
        ),
        ScenarioConfig::new(
            "A5_A4_V4",
            2,
            5,
            &["(0 1 2 3 4)", "(2 3 4)"],
            &["(0 1)(2 3)", "(0 1 2)"],
            &["(0 1)(2 3)", "(0 2)(1 3)"],
        ),
    ]
}

pub fn scenario(name: &str) -> Result<ScenarioConfig> {
    scenarios()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| crate::Error::Input(format!("unknown scenario {name}")))
}

/// `H = G = D = S3` at `p = 2`.
pub fn degenerate_scenario() -> ScenarioConfig {
    let s3 = ["(0 1)", "(0 1 2)"];
    ScenarioConfig::new("S3_S3_S3", 2, 3, &s3, &s3, &s3)
}

/// Every subgroup of `g`, found by closing joins of cyclic subgroups.
/// Sorted by order, then by element list.
pub fn all_subgroups(g: &Arc<PermGroup>) -> Vec<SubgroupEmbedding> {
    let n = g.order();
    let mut found: std::collections::BTreeSet<Vec<usize>> = Default::default();
    let cyclic: std::collections::BTreeSet<Vec<usize>> = (0..n).map(|x| g.closure_of(&[x])).collect();
    let mut frontier: Vec<Vec<usize>> = cyclic.iter().cloned().collect();
    found.extend(cyclic.iter().cloned());
    while let Some(s) = frontier.pop() {
        for c in &cyclic {
            if c.iter().all(|x| s.binary_search(x).is_ok()) {
                continue;
            }
            let gens: Vec<usize> = s.iter().chain(c).copied().collect();
            let j = g.closure_of(&gens);
            if found.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    let mut subs: Vec<Vec<usize>> = found.into_iter().collect();
    subs.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    subs.into_iter()
        .enumerate()
        .map(|(i, elems)| SubgroupEmbedding::new(g.clone(), elems, format!("S{i}")).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let orders: Vec<usize> = GROUP_NAMES.iter().map(|n| group(n).unwrap().order()).collect();
        assert_eq!(orders, vec![2, 3, 4, 4, 6, 6, 8, 12, 24, 60]);
    }

    #[test]
    fn subgroup_counts() {
        // S3: 1 + 3 + 1 + 1; S4 has 30 subgroups; A4 has 10; D8 has 10.
        assert_eq!(all_subgroups(&group("S3").unwrap()).len(), 6);
        assert_eq!(all_subgroups(&group("S4").unwrap()).len(), 30);
        assert_eq!(all_subgroups(&group("A4").unwrap()).len(), 10);
        assert_eq!(all_subgroups(&group("D8").unwrap()).len(), 10);
        assert_eq!(all_subgroups(&group("C6").unwrap()).len(), 4);
    }

    #[test]
    fn scenarios_are_chains() {
        for s in scenarios().into_iter().chain([degenerate_scenario()]) {
            let (g, h, d) = s.groups().unwrap();
            assert!(d.is_contained_in(&h));
            assert_eq!(h.ambient().order(), g.order());
        }
    }
}
