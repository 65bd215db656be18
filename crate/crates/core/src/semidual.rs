//! Dualizing modules, bounded semidualizing checks, the dagger dual and the
//! free / dualizing / non-trivial classification.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::ArtinAlgebra;
use crate::error::Result;
use crate::module::{hom_module, FDModule, Hom};
use crate::resolution::{ext_dim, homothety_map};

/// `Hom_k(A, k)`, the dualizing module of an artinian algebra.
pub fn dualizing_module(a: &Arc<ArtinAlgebra>) -> FDModule {
    FDModule::regular(a).matlis_dual()
}

/// `C† = Hom(C, D)` with its basis maps.
pub fn dagger_hom(c: &FDModule) -> Result<Hom> {
    hom_module(c, &dualizing_module(c.algebra()))
}

pub fn dagger(c: &FDModule) -> Result<FDModule> {
    Ok(dagger_hom(c)?.module)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Free,
    Dualizing,
    Nontrivial,
    NotSemidualizing,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Free => "free",
            Classification::Dualizing => "dualizing",
            Classification::Nontrivial => "nontrivial",
            Classification::NotSemidualizing => "not_semidualizing",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtFailure {
    pub degree: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidualizingReport {
    pub module_dim: usize,
    pub min_generators: usize,
    pub homothety_iso: bool,
    /// `Ext^i(C, C)` was computed for `1 ≤ i ≤ ext_checked_to`.
    pub ext_checked_to: usize,
    pub ext_dims: Vec<usize>,
    pub first_failure: Option<ExtFailure>,
    /// Vanishing holds in every degree, not only up to the bound: the
    /// module is free or its Matlis dual is free.
    pub exact_vanishing: bool,
    pub classification: Classification,
    pub dagger_min_generators: Option<usize>,
    /// Set for a dualizing module over a Gorenstein algebra, which is also free.
    pub also_free: bool,
    pub bound: usize,
}

impl SemidualizingReport {
    pub fn is_semidualizing(&self) -> bool {
        self.classification != Classification::NotSemidualizing
    }

    /// Whether the verdict rests on a bounded Ext computation.
    pub fn is_bounded(&self) -> bool {
        self.is_semidualizing() && !self.exact_vanishing
    }
}

fn is_free(c: &FDModule) -> bool {
    c.dim() == c.algebra().dim() && c.is_cyclic()
}

/// Homothety decided exactly, `Ext^i(C, C) = 0` checked for `1 ≤ i ≤ n`.
pub fn is_semidualizing(c: &FDModule, n: usize) -> Result<SemidualizingReport> {
    let (_, homothety_iso) = homothety_map(c)?;
    let mut report = SemidualizingReport {
        module_dim: c.dim(),
        min_generators: c.min_generators(),
        homothety_iso,
        ext_checked_to: 0,
        ext_dims: Vec::new(),
        first_failure: None,
        exact_vanishing: false,
        classification: Classification::NotSemidualizing,
        dagger_min_generators: None,
        also_free: false,
        bound: n,
    };
    if !homothety_iso {
        return Ok(report);
    }
    for i in 1..=n {
        let dim = ext_dim(c, c, i)?;
        report.ext_dims.push(dim);
        report.ext_checked_to = i;
        if dim != 0 {
            report.first_failure = Some(ExtFailure { degree: i, dim });
            return Ok(report);
        }
    }
    report.exact_vanishing = is_free(c) || is_free(&c.matlis_dual());
    let dag = dagger(c)?;
    let dag_mu = dag.min_generators();
    report.dagger_min_generators = Some(dag_mu);
    let free = c.is_cyclic();
    let dualizing = dag_mu <= 1;
    report.classification = match (free, dualizing) {
        (_, true) => Classification::Dualizing,
        (true, false) => Classification::Free,
        (false, false) => Classification::Nontrivial,
    };
    report.also_free = free && dualizing;
    Ok(report)
}

/// The semidualizing check together with the cyclicity tests: a cyclic
/// semidualizing module is free, and one whose dagger dual is cyclic is
/// dualizing.
pub fn classify(c: &FDModule, n: usize) -> Result<SemidualizingReport> {
    is_semidualizing(c, n)
}
