use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::FpModule;
use crate::error::{input, Result};
use crate::fp::FpMatrix;
use crate::perm::PermGroup;

/// The group a module lives over: degree and generators in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRef {
    pub degree: usize,
    pub generators: Vec<String>,
}

/// Module file: `action` maps a generator index to the row-major entries of
/// its matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub p: u32,
    pub group_ref: GroupRef,
    pub dim: usize,
    pub action: BTreeMap<String, Vec<u32>>,
}

impl ModuleJson {
    pub fn emit(m: &FpModule) -> Self {
        let g = m.group();
        Self {
            p: m.prime(),
            group_ref: GroupRef {
                degree: g.degree(),
                generators: g.generators().iter().map(|x| x.to_string()).collect(),
            },
            dim: m.dim(),
            action: m
                .action()
                .iter()
                .enumerate()
                .map(|(i, a)| (i.to_string(), a.flatten()))
                .collect(),
        }
    }

    /// Rebuilds the module, validating the action. `group` is reused when
    /// it has the referenced generators.
    pub fn parse(&self, group: Option<Arc<PermGroup>>) -> Result<FpModule> {
        let group = match group {
            Some(g)
                if g.degree() == self.group_ref.degree
                    && g.generators().iter().map(|x| x.to_string()).eq(self.group_ref.generators.iter().cloned()) =>
            {
                g
            }
            Some(_) => return input("module file refers to a different group"),
            None => Arc::new(PermGroup::from_strings(self.group_ref.degree, &self.group_ref.generators)?),
        };
        let n = group.generators().len();
        if self.action.len() != n {
            return input(format!("{} action entries for {n} generators", self.action.len()));
        }
        let mut action = Vec::with_capacity(n);
        for i in 0..n {
            let entries = self
                .action
                .get(&i.to_string())
                .ok_or_else(|| crate::Error::Parse(format!("missing action for generator {i}")))?;
            if entries.iter().any(|&x| x >= self.p) {
                return Err(crate::Error::Parse("matrix entry out of range".into()));
            }
            action.push(FpMatrix::from_data(self.p, self.dim, self.dim, entries.clone())?);
        }
        FpModule::new(group, self.p, self.dim, action)
    }
}
