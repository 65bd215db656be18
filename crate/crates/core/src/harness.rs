//! Mechanical verification of both directions of the characterization of
//! rings with a semidualizing module that is neither free nor dualizing,
//! as serializable condition reports.
//!
//! Conditions carry the numbering of the characterization: in the forward
//! direction (from `Q, I1, I2` to a module) they are `1` to `5`, in the
//! backward direction (from `R, C` to `Q, I1, I2`) they are `1` to `7`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{quotient_algebra, AlgebraMap, AlgebraSummary, ArtinAlgebra, Ideal, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::module::{hom_module, is_isomorphic, tensor_module, FDModule, IsoResult};
use crate::resolution::{bass_numbers, betti_numbers, ext, ext_dim, tor_dim};
use crate::semidual::{classify, dualizing_module, Classification, SemidualizingReport};
use crate::tate::{gdim, CompleteResolution, GDimension};
use crate::trivext::{build_q, QConstruction};

/// Random trials spent on each isomorphism search.
pub const ISO_TRIALS: usize = 64;

/// Betti prefix length compared when an isomorphism search is inconclusive.
pub const ROUNDTRIP_BETTI_DEPTH: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
    Roundtrip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Verified for every degree up to the entry's bound.
    CertifiedUpTo,
    Unknown,
}

/// Data needed to replay a failing computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, i64>,
}

impl Witness {
    fn new(description: impl Into<String>) -> Self {
        Witness {
            description: description.into(),
            data: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: impl TryInto<i64>) -> Self {
        self.data
            .insert(key.to_string(), value.try_into().unwrap_or(i64::MAX));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConditionEntry {
    fn pass(id: &str, note: impl Into<String>) -> Self {
        ConditionEntry {
            id: id.into(),
            status: Status::Pass,
            bound: None,
            witness: None,
            note: Some(note.into()),
        }
    }

    fn bounded(id: &str, bound: usize, note: impl Into<String>) -> Self {
        ConditionEntry {
            id: id.into(),
            status: Status::CertifiedUpTo,
            bound: Some(bound),
            witness: None,
            note: Some(note.into()),
        }
    }

    fn fail(id: &str, witness: Witness) -> Self {
        ConditionEntry {
            id: id.into(),
            status: Status::Fail,
            bound: None,
            witness: Some(witness),
            note: None,
        }
    }

    fn unknown(id: &str, note: impl Into<String>) -> Self {
        ConditionEntry {
            id: id.into(),
            status: Status::Unknown,
            bound: None,
            witness: None,
            note: Some(note.into()),
        }
    }

    fn prefixed(mut self, prefix: &str) -> Self {
        self.id = format!("{prefix}.{}", self.id);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// No entry failed and none is unknown; bounded entries may be present.
    Pass,
    Fail,
    /// Nothing failed but some entry is unknown.
    Inconclusive,
}

impl Verdict {
    /// `0` pass, `1` fail, `2` inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub algebra: Option<AlgebraSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_dims: Option<[usize; 2]>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifacts {
    pub dims: BTreeMap<String, usize>,
    pub betti_prefixes: BTreeMap<String, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub direction: Direction,
    pub bound: usize,
    pub inputs: Inputs,
    pub conditions: Vec<ConditionEntry>,
    pub artifacts: Artifacts,
    pub verdict: Verdict,
}

impl ConditionReport {
    fn new(direction: Direction, bound: usize, inputs: Inputs) -> Self {
        ConditionReport {
            direction,
            bound,
            inputs,
            conditions: Vec::new(),
            artifacts: Artifacts::default(),
            verdict: Verdict::Pass,
        }
    }

    fn push(&mut self, entry: ConditionEntry) {
        self.conditions.push(entry);
    }

    fn finish(mut self) -> Self {
        let statuses: Vec<Status> = self.conditions.iter().map(|c| c.status).collect();
        self.verdict = if statuses.contains(&Status::Fail) {
            Verdict::Fail
        } else if statuses.contains(&Status::Unknown) {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        self
    }

    pub fn entry(&self, id: &str) -> Option<&ConditionEntry> {
        self.conditions.iter().find(|c| c.id == id)
    }

    /// Whether the entry exists and did not fail or stay unknown.
    pub fn holds(&self, id: &str) -> bool {
        self.entry(id)
            .is_some_and(|c| matches!(c.status, Status::Pass | Status::CertifiedUpTo))
    }
}

fn cyclic_quotient(q: &Arc<ArtinAlgebra>, ideal: &Ideal) -> Result<FDModule> {
    FDModule::regular(q).quotient_by_ideal_action(ideal)
}

/// Tate Tor and Tate Ext of `(x, y)` on `|i| ≤ n`, or the first nonzero group.
fn tate_vanishing(cr: &CompleteResolution, y: &FDModule, n: usize, label: &str) -> Result<Option<Witness>> {
    let n = n as i64;
    for i in -n..=n {
        for (kind, dim) in [("Tor", cr.tate_tor_dim(y, i)?), ("Ext", cr.tate_ext_dim(y, i)?)] {
            if dim != 0 {
                return Ok(Some(
                    Witness::new(format!("Tate {kind} of {label} is nonzero"))
                        .with("degree", i)
                        .with("dim", dim),
                ));
            }
        }
    }
    Ok(None)
}

/// Ideal equality `I1 ∩ I2 = I1 I2`, decided exactly.
fn intersection_is_product(i1: &Ideal, i2: &Ideal) -> Result<(bool, usize, usize)> {
    let inter = i1.intersection(i2)?;
    let prod = i1.product(i2)?;
    Ok((inter.same_as(&prod)?, inter.dim(), prod.dim()))
}

/// Outcome of [`forward_check`].
#[derive(Clone, Debug)]
pub struct ForwardOutcome {
    pub report: ConditionReport,
    /// `Q/(I1 + I2)`, when the sum is proper.
    pub r: Option<QuotientAlgebra>,
    /// `Hom_{Q/I2}(Q/(I1+I2), Q/I2)` as a module over [`ForwardOutcome::r`].
    pub c: Option<FDModule>,
    pub classification: Option<SemidualizingReport>,
}

/// Checks conditions (1) to (5) for `(Q, I1, I2)` at bound `n` and builds
/// the candidate semidualizing module over `Q/(I1 + I2)`.
pub fn forward_check(q: &Arc<ArtinAlgebra>, i1: &Ideal, i2: &Ideal, n: usize) -> Result<ForwardOutcome> {
    if !Arc::ptr_eq(q, i1.algebra()) && **q != **i1.algebra()
        || !Arc::ptr_eq(q, i2.algebra()) && **q != **i2.algebra()
    {
        return Err(Error::MixedAlgebras);
    }
    if n == 0 {
        return Err(Error::PreconditionViolated("the bound must be at least 1".into()));
    }
    let inputs = Inputs {
        algebra: Some(q.summary()),
        module_dim: None,
        ideal_dims: Some([i1.dim(), i2.dim()]),
    };
    let mut rep = ConditionReport::new(Direction::Forward, n, inputs);
    let dims = &mut rep.artifacts.dims;
    dims.insert("Q".into(), q.dim());
    dims.insert("I1".into(), i1.dim());
    dims.insert("I2".into(), i2.dim());

    let socle = q.socle().dim();
    rep.push(if socle == 1 {
        ConditionEntry::pass("Q_gorenstein", "socle of Q has dimension 1")
    } else {
        ConditionEntry::fail(
            "Q_gorenstein",
            Witness::new("Q is not Gorenstein").with("socle_dim", socle),
        )
    });

    let x = cyclic_quotient(q, i1)?;
    let y = cyclic_quotient(q, i2)?;
    let sum = i1.sum(i2)?;
    rep.artifacts.dims.insert("I1+I2".into(), sum.dim());

    // (1)
    let r = if sum.is_proper() {
        let qa = quotient_algebra(&sum)?;
        rep.artifacts.dims.insert("R".into(), qa.algebra.dim());
        rep.push(ConditionEntry::pass(
            "1",
            format!("R = Q/(I1+I2) has dimension {}", qa.algebra.dim()),
        ));
        Some(qa)
    } else {
        rep.push(ConditionEntry::fail("1", Witness::new("I1 + I2 = Q")));
        None
    };

    // (2)
    let mut gor = Vec::new();
    for (name, ideal) in [("Q/I1", i1), ("Q/I2", i2)] {
        if !ideal.is_proper() {
            gor.push(None);
            continue;
        }
        let qa = quotient_algebra(ideal)?;
        gor.push(Some((name, qa.algebra.socle().dim())));
    }
    rep.push(match (&gor[0], &gor[1]) {
        (Some(_), Some((_, s2))) if *s2 > 1 => ConditionEntry::pass(
            "2",
            format!("Q/I2 has socle dimension {s2}; Cohen-Macaulay is automatic (artinian)"),
        ),
        (Some(_), Some((_, s2))) => ConditionEntry::fail(
            "2",
            Witness::new("Q/I2 is Gorenstein").with("socle_dim", *s2),
        ),
        _ => ConditionEntry::fail("2", Witness::new("I1 or I2 is the unit ideal")),
    });

    // (3)
    rep.push(match CompleteResolution::new(&x, n + 1) {
        Ok(cr) => match tate_vanishing(&cr, &y, n, "(Q/I1, Q/I2)")? {
            None => ConditionEntry::bounded(
                "3",
                n,
                format!("Tate Tor and Ext of (Q/I1, Q/I2) vanish for |i| <= {n}"),
            ),
            Some(w) => ConditionEntry::fail("3", w),
        },
        Err(Error::NotTotallyReflexive(why)) => ConditionEntry::fail(
            "3",
            Witness::new(format!("Q/I1 is not totally reflexive over Q: {why}")),
        ),
        Err(e) => return Err(e),
    });

    // (4)
    let mut non_cyclic = None;
    for c in 0..=n {
        let module = if c == 0 {
            hom_module(&x, &y)?.module
        } else {
            ext(&x, &y, c)?
        };
        let mu = module.min_generators();
        if mu >= 2 {
            non_cyclic = Some((c, mu));
            break;
        }
    }
    rep.push(match non_cyclic {
        Some((c, mu)) => {
            ConditionEntry::pass("4", format!("Ext^{c}(Q/I1, Q/I2) needs {mu} generators"))
        }
        None => ConditionEntry::fail(
            "4",
            Witness::new("Ext^c(Q/I1, Q/I2) is cyclic for every c up to the bound").with("bound", n),
        ),
    });

    // (5)
    let mut tor_fail = None;
    for i in 1..=n {
        let dim = tor_dim(&x, &y, i)?;
        if dim != 0 {
            tor_fail = Some(Witness::new("Tor(Q/I1, Q/I2) is nonzero").with("degree", i).with("dim", dim));
            break;
        }
    }
    let (equal, di, dp) = intersection_is_product(i1, i2)?;
    rep.artifacts.dims.insert("I1∩I2".into(), di);
    rep.artifacts.dims.insert("I1I2".into(), dp);
    rep.push(match (tor_fail, equal) {
        (Some(w), _) => ConditionEntry::fail("5", w),
        (None, false) => ConditionEntry::fail(
            "5",
            Witness::new("I1 ∩ I2 differs from I1 I2")
                .with("intersection_dim", di)
                .with("product_dim", dp),
        ),
        (None, true) => ConditionEntry::bounded(
            "5",
            n,
            format!("Tor_i(Q/I1, Q/I2) = 0 for 1 <= i <= {n}; I1 ∩ I2 = I1 I2 exactly"),
        ),
    });

    rep.artifacts
        .betti_prefixes
        .insert("Q/I1".into(), betti_numbers(&x, n));
    rep.artifacts
        .betti_prefixes
        .insert("Q/I2".into(), betti_numbers(&y, n));

    let mut c_module = None;
    let mut classification = None;
    if let Some(qa) = &r {
        let rq = cyclic_quotient(q, &sum)?;
        let c = hom_module(&rq, &y)?.module.descend(qa)?;
        let report = classify(&c, n)?;
        rep.artifacts.dims.insert("C".into(), c.dim());
        rep.artifacts
            .betti_prefixes
            .insert("C".into(), betti_numbers(&c, n));
        let note = format!(
            "C = Hom_(Q/I2)(R, Q/I2), g = gdim = 0 (artinian); dim {}, {} generators, {}",
            c.dim(),
            report.min_generators,
            report.classification
        );
        rep.push(match report.classification {
            Classification::Nontrivial => ConditionEntry::bounded("semidualizing", n, note),
            other => ConditionEntry::fail(
                "semidualizing",
                Witness::new(format!("C classifies as {other}"))
                    .with("dim", c.dim())
                    .with("generators", report.min_generators),
            ),
        });
        c_module = Some(c);
        classification = Some(report);
    }
    Ok(ForwardOutcome {
        report: rep.finish(),
        r,
        c: c_module,
        classification,
    })
}

/// Outcome of [`backward_construct`].
#[derive(Clone, Debug)]
pub struct BackwardOutcome {
    pub report: ConditionReport,
    pub construction: QConstruction,
    /// The identification `R → Q/(I1 + I2)` of condition (1), when it holds.
    pub identification: Option<AlgebraMap>,
    pub r_quotient: QuotientAlgebra,
}

/// Builds `Q, I1, I2` from a non-Gorenstein `R` and a non-trivial
/// semidualizing `C`, then checks conditions (1) to (7) and the Bass
/// number comparison at bound `n`.
pub fn backward_construct(
    r: &Arc<ArtinAlgebra>,
    c: &FDModule,
    n: usize,
    seed: u64,
) -> Result<BackwardOutcome> {
    if n == 0 {
        return Err(Error::PreconditionViolated("the bound must be at least 1".into()));
    }
    let qc = build_q(r, c, n)?;
    let q = qc.q.clone();
    let (i1, i2) = (qc.i1.clone(), qc.i2.clone());
    let inputs = Inputs {
        algebra: Some(r.summary()),
        module_dim: Some(c.dim()),
        ideal_dims: None,
    };
    let mut rep = ConditionReport::new(Direction::Backward, n, inputs);
    {
        let dims = &mut rep.artifacts.dims;
        dims.insert("R".into(), r.dim());
        dims.insert("C".into(), c.dim());
        dims.insert("Cdagger".into(), qc.cdagger.module.dim());
        dims.insert("D".into(), qc.d.dim());
        dims.insert("Q".into(), q.dim());
        dims.insert("I1".into(), i1.dim());
        dims.insert("I2".into(), i2.dim());
    }
    let socle = q.socle().dim();
    rep.push(if socle == 1 {
        ConditionEntry::pass("Q_gorenstein", "socle of Q has dimension 1")
    } else {
        ConditionEntry::fail("Q_gorenstein", Witness::new("Q is not Gorenstein").with("socle_dim", socle))
    });

    let x = cyclic_quotient(&q, &i1)?;
    let y = cyclic_quotient(&q, &i2)?;
    let sum = i1.sum(&i2)?;
    rep.artifacts.dims.insert("I1+I2".into(), sum.dim());
    let qa = quotient_algebra(&sum)?;

    // (1)
    let r_block = qc.blocks()[0].clone();
    let cols: Vec<SparseVec> = r_block
        .map(|k| qa.projection.sparse_column(k))
        .collect();
    let matrix = crate::linalg::Matrix::from_sparse_columns(q.field(), qa.algebra.dim(), &cols);
    let identification = match AlgebraMap::new(r.clone(), qa.algebra.clone(), matrix) {
        Ok(map) if map.is_isomorphism() => {
            rep.push(ConditionEntry::pass(
                "1",
                "the R-block of Q maps isomorphically onto Q/(I1+I2) as algebras",
            ));
            Some(map)
        }
        Ok(_) => {
            rep.push(ConditionEntry::fail(
                "1",
                Witness::new("R → Q/(I1+I2) is not bijective")
                    .with("dim_R", r.dim())
                    .with("dim_quotient", qa.algebra.dim()),
            ));
            None
        }
        Err(e) => {
            rep.push(ConditionEntry::fail(
                "1",
                Witness::new(format!("R → Q/(I1+I2) is not an algebra map: {e}")),
            ));
            None
        }
    };

    // (2)
    let qa1 = quotient_algebra(&i1)?;
    let qa2 = quotient_algebra(&i2)?;
    let (s1, s2) = (qa1.algebra.socle().dim(), qa2.algebra.socle().dim());
    rep.push(if s1 > 1 && s2 > 1 {
        ConditionEntry::pass(
            "2",
            format!("socle dimensions {s1} and {s2}; Cohen-Macaulay is automatic (artinian)"),
        )
    } else {
        ConditionEntry::fail(
            "2",
            Witness::new("a quotient Q/I_j is Gorenstein")
                .with("socle_dim_Q/I1", s1)
                .with("socle_dim_Q/I2", s2),
        )
    });

    // (3)
    let mut tate_fail = None;
    for (src, tgt, label) in [(&x, &y, "(Q/I1, Q/I2)"), (&y, &x, "(Q/I2, Q/I1)")] {
        match CompleteResolution::new(src, n + 1) {
            Ok(cr) => {
                if let Some(w) = tate_vanishing(&cr, tgt, n, label)? {
                    tate_fail = Some(w);
                    break;
                }
            }
            Err(Error::NotTotallyReflexive(why)) => {
                tate_fail = Some(Witness::new(format!("first module of {label} is not totally reflexive: {why}")));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    rep.push(match tate_fail {
        None => ConditionEntry::bounded(
            "3",
            n,
            format!("Tate Tor and Ext vanish in both orders for |i| <= {n}"),
        ),
        Some(w) => ConditionEntry::fail("3", w),
    });

    // (4)
    let h12 = hom_module(&x, &y)?.module;
    let h21 = hom_module(&y, &x)?.module;
    let (mu12, mu21) = (h12.min_generators(), h21.min_generators());
    let dims_ok = h12.dim() == qc.cdagger.module.dim() && h21.dim() == c.dim();
    rep.push(if mu12 >= 2 && mu21 >= 2 && dims_ok {
        ConditionEntry::pass(
            "4",
            format!(
                "Hom(Q/I1, Q/I2) has dim {} and {mu12} generators, Hom(Q/I2, Q/I1) has dim {} and {mu21} generators",
                h12.dim(),
                h21.dim()
            ),
        )
    } else {
        ConditionEntry::fail(
            "4",
            Witness::new("a Hom module is cyclic or has the wrong dimension")
                .with("dim_hom_12", h12.dim())
                .with("generators_hom_12", mu12)
                .with("dim_hom_21", h21.dim())
                .with("generators_hom_21", mu21)
                .with("dim_Cdagger", qc.cdagger.module.dim())
                .with("dim_C", c.dim()),
        )
    });

    // (5)
    let mut fail5 = None;
    'degrees: for i in 1..=n {
        for (name, dim) in [
            ("Ext(Q/I1, Q/I2)", ext_dim(&x, &y, i)?),
            ("Ext(Q/I2, Q/I1)", ext_dim(&y, &x, i)?),
            ("Tor(Q/I1, Q/I2)", tor_dim(&x, &y, i)?),
        ] {
            if dim != 0 {
                fail5 = Some(Witness::new(format!("{name} is nonzero")).with("degree", i).with("dim", dim));
                break 'degrees;
            }
        }
    }
    let (equal, di, dp) = intersection_is_product(&i1, &i2)?;
    rep.artifacts.dims.insert("I1∩I2".into(), di);
    rep.artifacts.dims.insert("I1I2".into(), dp);
    rep.push(match (fail5, equal) {
        (Some(w), _) => ConditionEntry::fail("5", w),
        (None, false) => ConditionEntry::fail(
            "5",
            Witness::new("I1 ∩ I2 differs from I1 I2")
                .with("intersection_dim", di)
                .with("product_dim", dp),
        ),
        (None, true) => ConditionEntry::bounded(
            "5",
            n,
            format!("Ext both orders and Tor vanish for 1 <= i <= {n}; I1 ∩ I2 = I1 I2 exactly (dim {di})"),
        ),
    });

    // (6)
    let rq = cyclic_quotient(&q, &sum)?;
    let mut fail6 = None;
    for (name, qa_j) in [("Q/I1", &qa1), ("Q/I2", &qa2)] {
        if let GDimension::NotCertified { witness, .. } = gdim(&rq.descend(qa_j)?, n)? {
            fail6 = Some(Witness::new(format!("R over {name}: {witness}")));
            break;
        }
    }
    rep.push(match fail6 {
        None => ConditionEntry::bounded("6", n, "R is totally reflexive over Q/I1 and Q/I2, so gdim = 0"),
        Some(w) => ConditionEntry::fail("6", w),
    });

    // (7)
    let d1 = FDModule::from_ideal(&i1);
    let d2 = FDModule::from_ideal(&i2);
    let mut entry7 = None;
    for (name, dj, qa_j) in [("I1", &d1, &qa1), ("I2", &d2, &qa2)] {
        let over = dj.descend(qa_j)?;
        let dual = dualizing_module(&qa_j.algebra);
        match is_isomorphic(&over, &dual, ISO_TRIALS, seed)? {
            IsoResult::Yes(_) => {}
            IsoResult::No(why) => {
                entry7 = Some(ConditionEntry::fail(
                    "7",
                    Witness::new(format!("{name} is not the dualizing module of its quotient: {why}")),
                ));
                break;
            }
            IsoResult::Unknown => {
                entry7 = Some(ConditionEntry::unknown(
                    "7",
                    format!("no isomorphism found between {name} and the dualizing module of Q/{name}"),
                ));
            }
        }
    }
    if entry7.as_ref().is_none_or(|e| e.status != Status::Fail) {
        let t = tensor_module(&d1, &d2)?.module.descend(&qa)?;
        rep.artifacts.dims.insert("D1⊗D2".into(), t.dim());
        let iso = match &identification {
            Some(map) => is_isomorphic(&t.restrict_scalars(map)?, &qc.d, ISO_TRIALS, seed)?,
            None => IsoResult::Unknown,
        };
        match iso {
            IsoResult::No(why) => {
                entry7 = Some(ConditionEntry::fail("7", Witness::new(format!("D1 ⊗ D2 is not D: {why}"))));
            }
            IsoResult::Unknown if entry7.is_none() => {
                entry7 = Some(ConditionEntry::unknown("7", "no isomorphism D1 ⊗ D2 → D found"));
            }
            _ => {}
        }
    }
    if entry7.as_ref().is_none_or(|e| e.status != Status::Fail) {
        for i in 1..=n {
            let dim = tor_dim(&d1, &d2, i)?;
            if dim != 0 {
                entry7 = Some(ConditionEntry::fail(
                    "7",
                    Witness::new("Tor(D1, D2) is nonzero").with("degree", i).with("dim", dim),
                ));
                break;
            }
        }
    }
    rep.push(entry7.unwrap_or_else(|| {
        ConditionEntry::bounded(
            "7",
            n,
            format!("I_j is dualizing for Q/I_j, D1 ⊗ D2 ≅ D with a witness, Tor_i(D1, D2) = 0 for 1 <= i <= {n}"),
        )
    }));

    // Bass numbers of Q/I2 over itself against those of C† over R
    let b_q2 = bass_numbers(&FDModule::regular(&qa2.algebra), n);
    let b_cd = bass_numbers(&qc.cdagger.module, n);
    rep.push(if b_q2 == b_cd {
        ConditionEntry::bounded("bass", n, format!("Bass numbers agree: {b_q2:?}"))
    } else {
        let first = (0..=n).find(|&i| b_q2[i] != b_cd[i]).unwrap_or(0);
        ConditionEntry::fail(
            "bass",
            Witness::new("Bass numbers of Q/I2 and of C† differ")
                .with("degree", first)
                .with("Q/I2", b_q2[first])
                .with("Cdagger", b_cd[first]),
        )
    });

    let bp = &mut rep.artifacts.betti_prefixes;
    bp.insert("Q/I1".into(), betti_numbers(&x, n));
    bp.insert("Q/I2".into(), betti_numbers(&y, n));
    bp.insert("C".into(), betti_numbers(c, n));
    bp.insert("Cdagger".into(), betti_numbers(&qc.cdagger.module, n));

    Ok(BackwardOutcome {
        report: rep.finish(),
        construction: qc,
        identification,
        r_quotient: qa,
    })
}

/// Compares a recovered module with the expected one: an isomorphism
/// witness passes, a certificate of non-isomorphism fails, and an
/// inconclusive search is reported as unknown when dimension, generator
/// count, Betti prefix and classification all agree.
fn compare_recovered(
    id: &str,
    recovered: &FDModule,
    expected: &FDModule,
    classification: Option<Classification>,
    seed: u64,
) -> Result<ConditionEntry> {
    let (dr, de) = (recovered.dim(), expected.dim());
    let (mr, me) = (recovered.min_generators(), expected.min_generators());
    let mismatch = |why: String| {
        ConditionEntry::fail(
            id,
            Witness::new(why)
                .with("dim_recovered", dr)
                .with("dim_expected", de)
                .with("generators_recovered", mr)
                .with("generators_expected", me),
        )
    };
    if classification != Some(Classification::Nontrivial) {
        return Ok(mismatch(format!(
            "recovered module classifies as {}",
            classification.map_or("nothing".to_string(), |c| c.to_string())
        )));
    }
    Ok(match is_isomorphic(recovered, expected, ISO_TRIALS, seed)? {
        IsoResult::Yes(_) => ConditionEntry::pass(
            id,
            format!("isomorphism witness found (dim {dr}, {mr} generators)"),
        ),
        IsoResult::No(why) => mismatch(why),
        IsoResult::Unknown => {
            let br = betti_numbers(recovered, ROUNDTRIP_BETTI_DEPTH);
            let be = betti_numbers(expected, ROUNDTRIP_BETTI_DEPTH);
            if dr == de && mr == me && br == be {
                ConditionEntry::unknown(
                    id,
                    format!("invariants agree (dim {dr}, {mr} generators, Betti {br:?}) but no witness; needs manual review"),
                )
            } else {
                mismatch(format!("invariants differ: Betti {br:?} vs {be:?}"))
            }
        }
    })
}

/// Backward construction followed by the forward check on its output.
/// The forward module over `Q/I2` is compared with `C†`, and the forward
/// module with the ideals swapped is compared with `C`.
pub fn roundtrip(r: &Arc<ArtinAlgebra>, c: &FDModule, n: usize, seed: u64) -> Result<ConditionReport> {
    let back = backward_construct(r, c, n, seed)?;
    let qc = &back.construction;
    let mut rep = ConditionReport::new(Direction::Roundtrip, n, back.report.inputs.clone());
    rep.artifacts = back.report.artifacts.clone();
    for e in &back.report.conditions {
        rep.push(e.clone().prefixed("backward"));
    }
    let fwd = forward_check(&qc.q, &qc.i1, &qc.i2, n)?;
    for e in &fwd.report.conditions {
        rep.push(e.clone().prefixed("forward"));
    }
    let swapped = forward_check(&qc.q, &qc.i2, &qc.i1, n)?;
    for e in &swapped.report.conditions {
        rep.push(e.clone().prefixed("swapped"));
    }
    for (id, outcome, expected) in [
        ("dagger_recovered", &fwd, &qc.cdagger.module),
        ("module_recovered", &swapped, c),
    ] {
        let entry = match (&outcome.c, &back.identification) {
            (Some(found), Some(map)) => {
                let over_r = found.restrict_scalars(map)?;
                let cls = outcome.classification.as_ref().map(|r| r.classification);
                compare_recovered(id, &over_r, expected, cls, seed)?
            }
            _ => ConditionEntry::fail(id, Witness::new("no module was produced to compare")),
        };
        if let Some(found) = &outcome.c {
            rep.artifacts
                .dims
                .insert(format!("{id}.dim"), found.dim());
        }
        rep.push(entry);
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    fn alg(vars: &[&str], rels: &[&str]) -> Arc<ArtinAlgebra> {
        Arc::new(ArtinAlgebra::from_monomial_quotient(PrimeField::default(), vars, rels).unwrap())
    }

    #[test]
    fn verdict_rules() {
        let mut r = ConditionReport::new(Direction::Forward, 2, Inputs::default());
        r.push(ConditionEntry::bounded("1", 2, "x"));
        assert_eq!(r.clone().finish().verdict, Verdict::Pass);
        r.push(ConditionEntry::unknown("2", "x"));
        assert_eq!(r.clone().finish().verdict, Verdict::Inconclusive);
        r.push(ConditionEntry::fail("3", Witness::new("w")));
        assert_eq!(r.finish().verdict.exit_code(), 1);
    }

    #[test]
    fn gorenstein_quotients_fail_condition_two() {
        let q = alg(&["x", "s"], &["x^2", "s^2"]);
        let i1 = Ideal::span(&q, &[vec![(q.index_of_label("x").unwrap() as u32, 1)]]);
        let i2 = Ideal::span(&q, &[vec![(q.index_of_label("s").unwrap() as u32, 1)]]);
        let out = forward_check(&q, &i1, &i2, 3).unwrap();
        assert_eq!(out.report.entry("2").unwrap().status, Status::Fail);
        assert_eq!(out.report.entry("4").unwrap().status, Status::Fail);
        assert_eq!(out.report.verdict, Verdict::Fail);
    }

    #[test]
    fn backward_rejects_dualizing() {
        let e3 = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert!(matches!(
            backward_construct(&e3, &dualizing_module(&e3), 3, 0),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
