//! Trivial extensions `A ⋉ M` and the iterated construction
//! `Q = (R ⋉ C) ⋉ Hom_R(R ⋉ C, D)` with its ideals `I1` and `I2`.

use std::ops::Range;
use std::sync::Arc;

use crate::algebra::{AlgebraMap, ArtinAlgebra, Ideal};
use crate::error::{Error, Result};
use crate::linalg::{sparse_axpy, Accumulator, Matrix, SparseVec, Subspace};
use crate::module::{hom_module, FDModule, Hom, ModuleMap};
use crate::semidual::{classify, dagger_hom, dualizing_module, Classification};

/// `A ⋉ M` with basis `[A | M]`.
#[derive(Clone, Debug)]
pub struct TrivialExtension {
    pub base: Arc<ArtinAlgebra>,
    pub module: FDModule,
    pub result: Arc<ArtinAlgebra>,
    /// `a ↦ (a, 0)`.
    pub epsilon: AlgebraMap,
    /// `(a, m) ↦ a`.
    pub tau: AlgebraMap,
    /// `0 ⊕ M`.
    pub kernel_ideal: Ideal,
}

pub fn trivial_extension(a: &Arc<ArtinAlgebra>, m: &FDModule) -> Result<TrivialExtension> {
    let labels = (0..m.dim()).map(|k| format!("m{k}")).collect();
    trivial_extension_labeled(a, m, labels)
}

/// Like [`trivial_extension`], with labels for the module block.
pub fn trivial_extension_labeled(
    a: &Arc<ArtinAlgebra>,
    m: &FDModule,
    module_labels: Vec<String>,
) -> Result<TrivialExtension> {
    if !Arc::ptr_eq(a, m.algebra()) && **a != **m.algebra() {
        return Err(Error::MixedAlgebras);
    }
    let f = a.field();
    let (d, n) = (a.dim(), m.dim());
    let t = d + n;
    let mut mult = vec![Vec::new(); t * t];
    for i in 0..d {
        for j in 0..d {
            mult[i * t + j] = a.mult_basis(i, j).clone();
        }
        for k in 0..n {
            let img: SparseVec = m
                .action(i)
                .sparse_column(k)
                .into_iter()
                .map(|(r, x)| ((d + r as usize) as u32, x))
                .collect();
            mult[i * t + d + k] = img.clone();
            mult[(d + k) * t + i] = img;
        }
    }
    let mut labels = a.labels().to_vec();
    labels.extend(module_labels);
    let result = Arc::new(ArtinAlgebra::from_sparse_table(f, labels, mult)?);
    let mut eps = Matrix::zeros(f, t, d);
    let mut tau = Matrix::zeros(f, d, t);
    for i in 0..d {
        eps.set(i, i, 1);
        tau.set(i, i, 1);
    }
    let epsilon = AlgebraMap::new(a.clone(), result.clone(), eps)?;
    let tau = AlgebraMap::new(result.clone(), a.clone(), tau)?;
    let ker: Vec<SparseVec> = (d..t).map(|k| vec![(k as u32, 1)]).collect();
    let kernel_ideal = Ideal::from_subspace(&result, Subspace::span(f, t, &ker))?;
    Ok(TrivialExtension {
        base: a.clone(),
        module: m.clone(),
        result,
        epsilon,
        tau,
        kernel_ideal,
    })
}

/// The data of `Q = (R ⋉ C) ⋉ Hom_R(R ⋉ C, D)`.
///
/// The basis of `Q` is ordered in four blocks `[R | C | C† | D]`, where
/// `C†` carries the basis of [`QConstruction::cdagger`].
#[derive(Clone, Debug)]
pub struct QConstruction {
    pub r: Arc<ArtinAlgebra>,
    pub c: FDModule,
    pub d: FDModule,
    pub cdagger: Hom,
    /// `R1 = R ⋉ C`.
    pub r1: TrivialExtension,
    /// `Hom_R(R1, D)` computed directly.
    pub d1_generic: Hom,
    /// The verified `R`-isomorphism `C† ⊕ D → Hom_R(R1, D)`.
    pub psi: ModuleMap,
    /// `R1 ⋉ (C† ⊕ D)`, whose result is `Q`.
    pub q_ext: TrivialExtension,
    pub q: Arc<ArtinAlgebra>,
    pub i1: Ideal,
    pub i2: Ideal,
}

impl QConstruction {
    /// Index ranges of the four blocks `R`, `C`, `C†`, `D` in `Q`.
    pub fn blocks(&self) -> [Range<usize>; 4] {
        let (d, c, h) = (self.r.dim(), self.c.dim(), self.cdagger.module.dim());
        let e = self.d.dim();
        [0..d, d..d + c, d + c..d + c + h, d + c + h..d + c + h + e]
    }

    /// The span of the `D` block.
    pub fn d_block_ideal(&self) -> Result<Ideal> {
        let f = self.q.field();
        let vecs: Vec<SparseVec> = self.blocks()[3].clone().map(|k| vec![(k as u32, 1)]).collect();
        Ideal::from_subspace(&self.q, Subspace::span(f, self.q.dim(), &vecs))
    }
}

fn block_ideal(q: &Arc<ArtinAlgebra>, ranges: &[Range<usize>]) -> Result<Ideal> {
    let vecs: Vec<SparseVec> = ranges
        .iter()
        .flat_map(|r| r.clone())
        .map(|k| vec![(k as u32, 1)])
        .collect();
    Ideal::from_subspace(q, Subspace::span(q.field(), q.dim(), &vecs))
}

/// Builds `Q` from a non-Gorenstein `R` and a non-trivial semidualizing
/// `C` (checked to degree `n`), verifying every identification on the way.
pub fn build_q(r: &Arc<ArtinAlgebra>, c: &FDModule, n: usize) -> Result<QConstruction> {
    if r.is_gorenstein() {
        return Err(Error::PreconditionViolated("the base ring is Gorenstein".into()));
    }
    let report = classify(c, n)?;
    if report.classification != Classification::Nontrivial {
        return Err(Error::PreconditionViolated(format!(
            "the module classifies as {}, not nontrivial",
            report.classification
        )));
    }
    build_q_unchecked(r, c)
}

/// [`build_q`] without the classification precondition.
pub fn build_q_unchecked(r: &Arc<ArtinAlgebra>, c: &FDModule) -> Result<QConstruction> {
    let f = r.field();
    let d = dualizing_module(r);
    let cdag = dagger_hom(c)?;
    let (dr, nc, h, nd) = (r.dim(), c.dim(), cdag.module.dim(), d.dim());

    let c_labels = (0..nc).map(|k| format!("c{k}")).collect();
    let r1 = trivial_extension_labeled(r, c, c_labels)?;
    let r1_over_r = FDModule::regular(&r1.result).restrict_scalars(&r1.epsilon)?;
    let generic = hom_module(&r1_over_r, &d)?;
    if generic.module.dim() != h + nd {
        return Err(Error::InvalidMap(format!(
            "Hom_R(R1, D) has dimension {} instead of {}",
            generic.module.dim(),
            h + nd
        )));
    }

    // (φ, e) ↦ ((s, x) ↦ s·e + φ(x))
    let split = cdag.module.direct_sum(&d)?;
    let psi_map = |coords: &[u32]| -> Matrix {
        let phi = cdag.element_map(&coords[..h]);
        let e: SparseVec = crate::linalg::sparse_from_dense(&coords[h..]);
        let mut out = Matrix::zeros(f, nd, dr + nc);
        for i in 0..dr {
            for (row, x) in d.apply(i, &e) {
                out.set(row as usize, i, x);
            }
        }
        for k in 0..nc {
            for row in 0..nd {
                out.set(row, dr + k, phi.get(row, k));
            }
        }
        out
    };
    let mut psi_cols = Vec::with_capacity(h + nd);
    for b in 0..h + nd {
        let mut coords = vec![0; h + nd];
        coords[b] = 1;
        let coords_in_generic = generic.coords_of(&psi_map(&coords)).ok_or_else(|| {
            Error::InvalidMap("explicit map does not land in Hom_R(R1, D)".into())
        })?;
        psi_cols.push(crate::linalg::sparse_from_dense(&coords_in_generic));
    }
    let psi_matrix = Matrix::from_sparse_columns(f, h + nd, &psi_cols);
    let psi = ModuleMap::new(split.clone(), generic.module.clone(), psi_matrix.clone())?;
    if !psi.is_isomorphism() {
        return Err(Error::InvalidMap("C† ⊕ D → Hom_R(R1, D) is not bijective".into()));
    }

    // R1 acts on C† ⊕ D by (s, x)·(φ, e) = (sφ, φ(x) + s e)
    let r1_alg = r1.result.clone();
    let mut formula_action = Vec::with_capacity(dr + nc);
    for s in 0..dr + nc {
        let mut m = Matrix::zeros(f, h + nd, h + nd);
        if s < dr {
            let a = cdag.module.action(s);
            for i in 0..h {
                for j in 0..h {
                    m.set(i, j, a.get(i, j));
                }
            }
            let b = d.action(s);
            for i in 0..nd {
                for j in 0..nd {
                    m.set(h + i, h + j, b.get(i, j));
                }
            }
        } else {
            let k = s - dr;
            for l in 0..h {
                let phi = cdag.basis_map(l);
                for row in 0..nd {
                    m.set(h + row, l, phi.get(row, k));
                }
            }
        }
        formula_action.push(m);
    }
    let formula = FDModule::new(r1_alg.clone(), formula_action)?;

    // the generic action (s·g)(x) = g(s x) in the coordinates of Hom_R(R1, D)
    let mut generic_action = Vec::with_capacity(dr + nc);
    for s in 0..dr + nc {
        let ls = r1_alg.left_mult_matrix(s);
        let cols: Vec<SparseVec> = generic
            .basis_maps()
            .iter()
            .map(|g| {
                let comp = g.mul(&ls).expect("shapes agree");
                let coords = generic
                    .coords_of(&comp)
                    .expect("precomposition with an R-linear map is R-linear");
                crate::linalg::sparse_from_dense(&coords)
            })
            .collect();
        generic_action.push(Matrix::from_sparse_columns(f, h + nd, &cols));
    }
    let generic_r1 = FDModule::new(r1_alg.clone(), generic_action)?;
    ModuleMap::new(formula.clone(), generic_r1, psi_matrix).map_err(|_| {
        Error::InvalidMap("the explicit R1-action differs from the one on Hom_R(R1, D)".into())
    })?;

    let mut labels: Vec<String> = (0..h).map(|k| format!("f{k}")).collect();
    labels.extend((0..nd).map(|k| format!("d{k}")));
    let q_ext = trivial_extension_labeled(&r1_alg, &formula, labels)?;
    let q = q_ext.result.clone();

    let construction = QConstruction {
        r: r.clone(),
        c: c.clone(),
        d: d.clone(),
        cdagger: cdag,
        r1,
        d1_generic: generic,
        psi,
        q_ext,
        q: q.clone(),
        i1: Ideal::zero(&q),
        i2: Ideal::zero(&q),
    };
    check_four_component_formula(&construction)?;
    if !q.is_gorenstein() {
        return Err(Error::InvalidMap("Q is not Gorenstein".into()));
    }
    let [_, cb, fb, db] = construction.blocks();
    let i1 = block_ideal(&q, &[fb.clone(), db.clone()])?;
    let i2 = block_ideal(&q, &[cb, db])?;
    Ok(QConstruction {
        i1,
        i2,
        ..construction
    })
}

/// Compares the multiplication of `Q` with
/// `(r,c,φ,e)(r',c',φ',e') = (rr', rc'+r'c, rφ'+r'φ, φ'(c)+φ(c')+re'+r'e)`
/// on every pair of basis elements.
fn check_four_component_formula(qc: &QConstruction) -> Result<()> {
    let q = &qc.q;
    let f = q.field();
    let [rb, cb, fb, db] = qc.blocks();
    let split = |v: &[(u32, u32)], r: &Range<usize>| -> SparseVec {
        v.iter()
            .filter(|e| r.contains(&(e.0 as usize)))
            .map(|&(i, x)| (i - r.start as u32, x))
            .collect()
    };
    let shift = |v: SparseVec, r: &Range<usize>| -> SparseVec {
        v.into_iter().map(|(i, x)| (i + r.start as u32, x)).collect()
    };
    let h = fb.len();
    let phi_of = |phi: &SparseVec, c: &SparseVec| -> SparseVec {
        let mut coords = vec![0; h];
        for &(i, x) in phi {
            coords[i as usize] = x;
        }
        qc.cdagger.element_map(&coords).apply_sparse(c)
    };
    let act = |m: &FDModule, r: &SparseVec, v: &SparseVec| -> SparseVec {
        let mut acc = Accumulator::new(f, m.dim());
        for &(i, x) in r {
            acc.add_scaled(x, &m.apply(i as usize, v));
        }
        acc.take()
    };
    for a in 0..q.dim() {
        for b in a..q.dim() {
            let (u, v) = (vec![(a as u32, 1)], vec![(b as u32, 1)]);
            let (r, c, phi, e) = (split(&u, &rb), split(&u, &cb), split(&u, &fb), split(&u, &db));
            let (r2, c2, phi2, e2) = (split(&v, &rb), split(&v, &cb), split(&v, &fb), split(&v, &db));
            let rr = qc.r.mul(&r, &r2);
            let cc = sparse_axpy(&f, &act(&qc.c, &r, &c2), 1, &act(&qc.c, &r2, &c));
            let ff = sparse_axpy(
                &f,
                &act(&qc.cdagger.module, &r, &phi2),
                1,
                &act(&qc.cdagger.module, &r2, &phi),
            );
            let mut ee = sparse_axpy(&f, &phi_of(&phi2, &c), 1, &phi_of(&phi, &c2));
            ee = sparse_axpy(&f, &ee, 1, &act(&qc.d, &r, &e2));
            ee = sparse_axpy(&f, &ee, 1, &act(&qc.d, &r2, &e));
            let mut expected = rr;
            expected.extend(shift(cc, &cb));
            expected.extend(shift(ff, &fb));
            expected.extend(shift(ee, &db));
            if expected != *q.mult_basis(a, b) {
                return Err(Error::InvalidMap(format!(
                    "Q multiplication disagrees with the four-component formula at ({}, {})",
                    q.labels()[a],
                    q.labels()[b]
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    fn alg(vars: &[&str], rels: &[&str]) -> Arc<ArtinAlgebra> {
        Arc::new(ArtinAlgebra::from_monomial_quotient(PrimeField::default(), vars, rels).unwrap())
    }

    #[test]
    fn trivial_extension_examples() {
        let e3 = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let z = trivial_extension(&e3, &FDModule::zero(&e3)).unwrap();
        assert_eq!(*z.result, *e3);
        let t = trivial_extension(&e3, &dualizing_module(&e3)).unwrap();
        assert_eq!(t.result.dim(), 6);
        assert!(t.result.is_gorenstein());
        let e2 = alg(&["x"], &["x^2"]);
        let t = trivial_extension(&e2, &FDModule::residue_field(&e2)).unwrap();
        assert_eq!(t.result.dim(), 3);
        assert_eq!(t.result.socle().dim(), 2);
        let sq = t.kernel_ideal.product(&t.kernel_ideal).unwrap();
        assert_eq!(sq.dim(), 0);
        let id = t.epsilon.compose(&t.tau).unwrap();
        assert_eq!(*id.matrix(), Matrix::identity(PrimeField::default(), 2));
    }

    #[test]
    fn build_q_rejects_dualizing() {
        let e3 = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert!(matches!(
            build_q(&e3, &dualizing_module(&e3), 3),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
