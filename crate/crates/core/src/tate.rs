//! Totally reflexive modules, complete resolutions spliced from a minimal
//! resolution and the dual of a resolution of `M* = Hom(M, A)`, Tate
//! homology and cohomology on a symmetric window, and G-dimension.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel_of_columns, rank_of, SparseVec};
use crate::module::{hom_module, subquotient_module, FDModule};
use crate::resolution::{
    biduality_map, ext_dim, minimal_free_resolution, power_action, FreeMap, FreeResolution,
};

/// Witness that a module is not totally reflexive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReflexivityWitness {
    /// `M → M**` is not bijective.
    Biduality,
    /// `Ext^degree(M, A) ≠ 0`, or `Ext^degree(M*, A) ≠ 0` when `of_dual`.
    Ext { of_dual: bool, degree: usize, dim: usize },
}

impl std::fmt::Display for ReflexivityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReflexivityWitness::Biduality => f.write_str("biduality map is not an isomorphism"),
            ReflexivityWitness::Ext { of_dual, degree, dim } => write!(
                f,
                "dim Ext^{degree}({}, A) = {dim}",
                if *of_dual { "M*" } else { "M" }
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Reflexivity {
    /// Biduality holds and both Ext families vanish for `1 ≤ i ≤ bound`.
    CertifiedUpTo { bound: usize },
    No { witness: ReflexivityWitness },
}

impl Reflexivity {
    pub fn is_certified(&self) -> bool {
        matches!(self, Reflexivity::CertifiedUpTo { .. })
    }
}

/// Checks `Ext^i(M, A) = 0` for `1 ≤ i ≤ n`, then the biduality map
/// `M → M**`, then `Ext^i(M*, A) = 0` for `1 ≤ i ≤ n`.
pub fn is_totally_reflexive(m: &FDModule, n: usize) -> Result<Reflexivity> {
    if n == 0 {
        return Err(Error::PreconditionViolated("the bound must be at least 1".into()));
    }
    let a = FDModule::regular(m.algebra());
    let ext_witness = |x: &FDModule, of_dual: bool| -> Result<Option<ReflexivityWitness>> {
        for i in 1..=n {
            let dim = ext_dim(x, &a, i)?;
            if dim != 0 {
                return Ok(Some(ReflexivityWitness::Ext { of_dual, degree: i, dim }));
            }
        }
        Ok(None)
    };
    if let Some(witness) = ext_witness(m, false)? {
        return Ok(Reflexivity::No { witness });
    }
    let (_, iso) = biduality_map(m, &a)?;
    if !iso {
        return Ok(Reflexivity::No {
            witness: ReflexivityWitness::Biduality,
        });
    }
    let dual = hom_module(m, &a)?.module;
    if let Some(witness) = ext_witness(&dual, true)? {
        return Ok(Reflexivity::No { witness });
    }
    Ok(Reflexivity::CertifiedUpTo { bound: n })
}

/// G-dimension over an artinian base, where finiteness forces the value 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GDimension {
    Finite { value: usize, certified_to: usize },
    NotCertified { bound: usize, witness: ReflexivityWitness },
}

pub fn gdim(m: &FDModule, n: usize) -> Result<GDimension> {
    Ok(match is_totally_reflexive(m, n)? {
        Reflexivity::CertifiedUpTo { bound } => GDimension::Finite {
            value: 0,
            certified_to: bound,
        },
        Reflexivity::No { witness } => GDimension::NotCertified { bound: n, witness },
    })
}

/// A totally acyclic complex `T_n → ... → T_{-n}` with `T_i = P_i` for
/// `0 ≤ i ≤ n` and `T_{-j-1} = (P'_j)*`, where `P` and `P'` are minimal
/// resolutions of `M` and `M*`.
#[derive(Clone, Debug)]
pub struct CompleteResolution {
    algebra: Arc<ArtinAlgebra>,
    window: usize,
    positive: FreeResolution,
    dual_side: FreeResolution,
    /// `∂_0 : T_0 → T_{-1}`.
    splice: FreeMap,
    /// `∂_{-j}` for `j = 1, ..., window - 1`.
    negative: Vec<FreeMap>,
}

impl CompleteResolution {
    /// Builds the window after certifying total reflexivity to degree `n`,
    /// then checks exactness of the complex and of its dual.
    pub fn new(m: &FDModule, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::PreconditionViolated("the window must be at least 1".into()));
        }
        if let Reflexivity::No { witness } = is_totally_reflexive(m, n)? {
            return Err(Error::NotTotallyReflexive(witness.to_string()));
        }
        let cr = Self::splice(m, n)?;
        cr.check_exact()?;
        cr.check_dual_exact()?;
        Ok(cr)
    }

    fn splice(m: &FDModule, n: usize) -> Result<Self> {
        let alg = m.algebra().clone();
        let d = alg.dim();
        let positive = minimal_free_resolution(m, n);
        let hom = hom_module(m, &FDModule::regular(&alg))?;
        let dual_side = minimal_free_resolution(&hom.module, n - 1);
        let gens = positive.augmentation_generators();
        let dual_gens = dual_side.augmentation_generators();
        let cols = gens
            .iter()
            .map(|&j| {
                let mut col: SparseVec = Vec::new();
                for (k, &g) in dual_gens.iter().enumerate() {
                    for (a, x) in hom.basis_map(g).sparse_column(j) {
                        col.push(((k * d) as u32 + a, x));
                    }
                }
                col
            })
            .collect();
        let splice = FreeMap {
            src: gens.len(),
            tgt: dual_gens.len(),
            cols,
        };
        let negative = (1..n).map(|j| dual_side.differential(j).transpose(d)).collect();
        Ok(CompleteResolution {
            algebra: alg,
            window: n,
            positive,
            dual_side,
            splice,
            negative,
        })
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.algebra
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// The resolution of `M` forming the non-negative part.
    pub fn positive_part(&self) -> &FreeResolution {
        &self.positive
    }

    /// The resolution of `M*` whose dual forms the negative part.
    pub fn dual_resolution(&self) -> &FreeResolution {
        &self.dual_side
    }

    /// Rank of `T_i` for `-window ≤ i ≤ window`.
    pub fn rank(&self, i: i64) -> usize {
        let n = self.window as i64;
        assert!((-n..=n).contains(&i), "degree {i} outside the window");
        if i >= 0 {
            self.positive.ranks()[i as usize]
        } else {
            self.dual_side.ranks()[(-i - 1) as usize]
        }
    }

    /// `∂_i : T_i → T_{i-1}` for `-window < i ≤ window`.
    pub fn differential(&self, i: i64) -> &FreeMap {
        let n = self.window as i64;
        assert!(i > -n && i <= n, "differential {i} outside the window");
        match i {
            0 => &self.splice,
            i if i > 0 => self.positive.differential(i as usize),
            i => &self.negative[(-i - 1) as usize],
        }
    }

    fn interior(&self) -> std::ops::Range<i64> {
        let n = self.window as i64;
        -n + 1..n
    }

    /// Exactness of `T` at every interior degree.
    pub fn check_exact(&self) -> Result<()> {
        let alg = &*self.algebra;
        let f = alg.field();
        let d = alg.dim();
        for i in self.interior() {
            let out = rank_of(f, self.rank(i - 1) * d, &self.differential(i).fp_columns(alg));
            let inc = rank_of(f, self.rank(i) * d, &self.differential(i + 1).fp_columns(alg));
            if self.rank(i) * d != out + inc {
                return Err(Error::InvalidMap(format!("complete resolution not exact at {i}")));
            }
        }
        Ok(())
    }

    /// Exactness of `Hom(T, A)` at every interior degree.
    pub fn check_dual_exact(&self) -> Result<()> {
        let alg = &*self.algebra;
        let f = alg.field();
        let d = alg.dim();
        for i in self.interior() {
            let out = self.differential(i + 1).transpose(d);
            let inc = self.differential(i).transpose(d);
            let r_out = rank_of(f, self.rank(i + 1) * d, &out.fp_columns(alg));
            let r_in = rank_of(f, self.rank(i) * d, &inc.fp_columns(alg));
            if self.rank(i) * d != r_out + r_in {
                return Err(Error::InvalidMap(format!("dual complex not exact at {i}")));
            }
        }
        Ok(())
    }

    fn check_degree(&self, i: i64) -> Result<()> {
        let needed = i.unsigned_abs() as usize + 1;
        if needed > self.window {
            return Err(Error::WindowTooSmall {
                degree: i,
                needed,
                cap: self.window,
            });
        }
        Ok(())
    }

    /// `dim H_i(T ⊗ X)`.
    pub fn tate_tor_dim(&self, x: &FDModule, i: i64) -> Result<usize> {
        self.check_degree(i)?;
        let nx = x.dim();
        let f = self.algebra.field();
        let out = rank_of(f, self.rank(i - 1) * nx, &self.differential(i).tensor_columns(x));
        let inc = rank_of(f, self.rank(i) * nx, &self.differential(i + 1).tensor_columns(x));
        Ok(self.rank(i) * nx - out - inc)
    }

    /// `H_i(T ⊗ X)` as a module.
    pub fn tate_tor(&self, x: &FDModule, i: i64) -> Result<FDModule> {
        self.check_degree(i)?;
        let nx = x.dim();
        let f = self.algebra.field();
        let cycles = kernel_of_columns(f, self.rank(i - 1) * nx, &self.differential(i).tensor_columns(x));
        let boundaries = self.differential(i + 1).tensor_columns(x);
        let (module, _) = subquotient_module(
            &self.algebra,
            self.rank(i) * nx,
            |a, v| power_action(x, a, v),
            &boundaries,
            &cycles,
        );
        Ok(module)
    }

    /// `dim H^i(Hom(T, X))`.
    pub fn tate_ext_dim(&self, x: &FDModule, i: i64) -> Result<usize> {
        self.check_degree(i)?;
        let nx = x.dim();
        let f = self.algebra.field();
        let out = rank_of(f, self.rank(i + 1) * nx, &self.differential(i + 1).hom_columns(x));
        let inc = rank_of(f, self.rank(i) * nx, &self.differential(i).hom_columns(x));
        Ok(self.rank(i) * nx - out - inc)
    }

    /// `H^i(Hom(T, X))` as a module.
    pub fn tate_ext(&self, x: &FDModule, i: i64) -> Result<FDModule> {
        self.check_degree(i)?;
        let nx = x.dim();
        let f = self.algebra.field();
        let cycles =
            kernel_of_columns(f, self.rank(i + 1) * nx, &self.differential(i + 1).hom_columns(x));
        let boundaries = self.differential(i).hom_columns(x);
        let (module, _) = subquotient_module(
            &self.algebra,
            self.rank(i) * nx,
            |a, v| power_action(x, a, v),
            &boundaries,
            &cycles,
        );
        Ok(module)
    }
}

/// Complete resolution of `m` on the window `n`.
pub fn complete_resolution(m: &FDModule, n: usize) -> Result<CompleteResolution> {
    CompleteResolution::new(m, n)
}

fn window_for(i: i64, cap: usize) -> Result<usize> {
    let needed = i.unsigned_abs() as usize + 1;
    if needed > cap {
        return Err(Error::WindowTooSmall { degree: i, needed, cap });
    }
    Ok(needed)
}

/// `dim \hat{Tor}_i(M, X)`, building the smallest window that covers `i`
/// as long as it does not exceed `cap`.
pub fn tate_tor_dim(m: &FDModule, x: &FDModule, i: i64, cap: usize) -> Result<usize> {
    CompleteResolution::new(m, window_for(i, cap)?)?.tate_tor_dim(x, i)
}

pub fn tate_tor(m: &FDModule, x: &FDModule, i: i64, cap: usize) -> Result<FDModule> {
    CompleteResolution::new(m, window_for(i, cap)?)?.tate_tor(x, i)
}

/// `dim \hat{Ext}^i(M, X)`, with the same window rule as [`tate_tor_dim`].
pub fn tate_ext_dim(m: &FDModule, x: &FDModule, i: i64, cap: usize) -> Result<usize> {
    CompleteResolution::new(m, window_for(i, cap)?)?.tate_ext_dim(x, i)
}

pub fn tate_ext(m: &FDModule, x: &FDModule, i: i64, cap: usize) -> Result<FDModule> {
    CompleteResolution::new(m, window_for(i, cap)?)?.tate_ext(x, i)
}

/// Rank of `ν : Hom(M, A) ⊗ X → Hom(M, X)`, `ψ ⊗ x ↦ (m ↦ ψ(m) x)`,
/// measured inside the space of all `F_p`-linear maps `M → X`.
pub fn evaluation_image_dim(m: &FDModule, x: &FDModule) -> Result<usize> {
    let alg = m.algebra();
    let hom = hom_module(m, &FDModule::regular(alg))?;
    let (nm, nx) = (m.dim(), x.dim());
    let mut vecs: Vec<SparseVec> = Vec::new();
    for psi in hom.basis_maps() {
        for v in 0..nx {
            let mut acc = crate::linalg::Accumulator::new(alg.field(), nm * nx);
            for c in 0..nm {
                for (a, s) in psi.sparse_column(c) {
                    for (w, y) in x.action(a as usize).sparse_column(v) {
                        acc.add((w as usize * nm + c) as u32, alg.field().mul(s, y) as u64);
                    }
                }
            }
            vecs.push(acc.take());
        }
    }
    Ok(rank_of(alg.field(), nm * nx, &vecs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ideal;
    use crate::linalg::PrimeField;
    use crate::module::is_isomorphic;
    use crate::resolution::tor_dim;

    fn alg(vars: &[&str], rels: &[&str]) -> Arc<ArtinAlgebra> {
        Arc::new(ArtinAlgebra::from_monomial_quotient(PrimeField::default(), vars, rels).unwrap())
    }

    #[test]
    fn reflexivity_examples() {
        let e3 = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let free = FDModule::free(&e3, 2);
        assert_eq!(
            is_totally_reflexive(&free, 3).unwrap(),
            Reflexivity::CertifiedUpTo { bound: 3 }
        );
        match is_totally_reflexive(&FDModule::residue_field(&e3), 3).unwrap() {
            Reflexivity::No { witness } => assert!(matches!(
                witness,
                ReflexivityWitness::Ext { of_dual: false, degree: 1, .. }
            )),
            other => panic!("{other:?}"),
        }
        match gdim(&FDModule::residue_field(&e3), 3).unwrap() {
            GDimension::NotCertified { witness, .. } => {
                assert!(matches!(witness, ReflexivityWitness::Ext { .. }))
            }
            other => panic!("{other:?}"),
        }
        let e2 = alg(&["x"], &["x^2"]);
        for m in [
            FDModule::residue_field(&e2),
            FDModule::from_ideal(&Ideal::maximal(&e2)),
            FDModule::regular(&e2),
        ] {
            assert!(is_totally_reflexive(&m, 4).unwrap().is_certified());
            assert!(matches!(gdim(&m, 4).unwrap(), GDimension::Finite { value: 0, .. }));
        }
    }

    #[test]
    fn residue_field_over_e2_is_periodic() {
        let e2 = alg(&["x"], &["x^2"]);
        let cr = complete_resolution(&FDModule::residue_field(&e2), 4).unwrap();
        for i in -4..=4 {
            assert_eq!(cr.rank(i), 1);
        }
        for i in -3..=4 {
            assert_eq!(cr.differential(i).cols, vec![vec![(1, 1)]]);
        }
    }

    #[test]
    fn free_modules_have_no_tate_groups() {
        let e3 = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let a = FDModule::regular(&e3);
        let k = FDModule::residue_field(&e3);
        let cr = complete_resolution(&a, 3).unwrap();
        for i in -2..=2 {
            assert_eq!(cr.tate_tor_dim(&k, i).unwrap(), 0);
            assert_eq!(cr.tate_ext_dim(&k, i).unwrap(), 0);
        }
        assert!(matches!(
            cr.tate_tor_dim(&k, 3),
            Err(Error::WindowTooSmall { degree: 3, needed: 4, cap: 3 })
        ));
    }

    #[test]
    fn non_reflexive_is_rejected() {
        let e3 = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert!(matches!(
            complete_resolution(&FDModule::residue_field(&e3), 2),
            Err(Error::NotTotallyReflexive(_))
        ));
    }

    #[test]
    fn agrees_with_tor_in_positive_degrees() {
        let a = alg(&["x", "y"], &["x^2", "y^2"]);
        let k = FDModule::residue_field(&a);
        let m = FDModule::from_ideal(&Ideal::span(&a, &[vec![(1, 1)]]));
        let cr = complete_resolution(&k, 4).unwrap();
        for i in 1..=3 {
            assert_eq!(cr.tate_tor_dim(&m, i).unwrap(), tor_dim(&k, &m, i as usize).unwrap());
            assert_eq!(
                cr.tate_tor(&m, i).unwrap().dim(),
                cr.tate_tor_dim(&m, i).unwrap()
            );
        }
        assert_eq!(tate_ext_dim(&k, &m, -2, 8).unwrap(), cr.tate_ext_dim(&m, -2).unwrap());
    }

    #[test]
    fn tate_ext_zero_is_hom_modulo_evaluation() {
        let a = alg(&["x", "y"], &["x^2", "y^2"]);
        let k = FDModule::residue_field(&a);
        let m = FDModule::from_ideal(&Ideal::span(&a, &[vec![(1, 1)]]));
        for (src, tgt) in [(&k, &m), (&m, &k), (&k, &k)] {
            let h = hom_module(src, tgt).unwrap().module.dim();
            let nu = evaluation_image_dim(src, tgt).unwrap();
            let t0 = complete_resolution(src, 2).unwrap().tate_ext_dim(tgt, 0).unwrap();
            assert_eq!(h, nu + t0);
        }
    }

    #[test]
    fn dual_of_cyclic_is_annihilator() {
        let e3 = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let i = Ideal::span(&e3, &[vec![(1, 1)]]);
        let m = FDModule::regular(&e3).quotient_by_ideal_action(&i).unwrap();
        let dual = hom_module(&m, &FDModule::regular(&e3)).unwrap().module;
        let ann = FDModule::from_ideal(&FDModule::from_ideal(&i).annihilator());
        assert!(is_isomorphic(&dual, &ann, 20, 1).unwrap().is_yes());
    }
}
