//! Finite-dimensional modules over an [`ArtinAlgebra`].
//!
//! A module of dimension `n` is stored as one `n × n` action matrix per
//! basis element of the algebra.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraMap, ArtinAlgebra, Ideal, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{
    kernel_of_columns, kernel_with_free_columns, sparse_scale, Accumulator, Echelon, Matrix, PrimeField, SparseVec,
    Subspace,
};

#[derive(Clone, Debug)]
pub struct FDModule {
    algebra: Arc<ArtinAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
    fingerprint: u64,
}

impl PartialEq for FDModule {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.dim == other.dim
            && *self.algebra == *other.algebra
            && self.action == other.action
    }
}

impl Eq for FDModule {}

fn fingerprint(algebra: &ArtinAlgebra, dim: usize, action: &[Matrix]) -> u64 {
    let mut h = DefaultHasher::new();
    algebra.fingerprint().hash(&mut h);
    dim.hash(&mut h);
    for m in action {
        for i in 0..m.rows() {
            m.row(i).hash(&mut h);
        }
    }
    h.finish()
}

pub(crate) fn same_algebra(a: &Arc<ArtinAlgebra>, b: &Arc<ArtinAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FDModule {
    /// Builds a module from one action matrix per basis element and
    /// checks the module axioms.
    pub fn new(algebra: Arc<ArtinAlgebra>, action: Vec<Matrix>) -> Result<Self> {
        let dim = action.first().map_or(0, |m| m.rows());
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        let m = Self::build(algebra, dim, action);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn build(algebra: Arc<ArtinAlgebra>, dim: usize, action: Vec<Matrix>) -> Self {
        let fingerprint = fingerprint(&algebra, dim, &action);
        FDModule {
            algebra,
            dim,
            action,
            fingerprint,
        }
    }

    /// Checks `ρ_1 = id` and `ρ_i ρ_j = Σ_k c_ij^k ρ_k`.
    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let f = a.field();
        for (i, m) in self.action.iter().enumerate() {
            if m.rows() != self.dim || m.cols() != self.dim || m.field() != f {
                return Err(Error::InvalidModule(format!(
                    "action matrix {i} has the wrong shape"
                )));
            }
        }
        if self.action[0] != Matrix::identity(f, self.dim) {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in i..a.dim() {
                let lhs = self.action[i].mul(&self.action[j])?;
                let rhs = self.combination(a.mult_basis(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "actions of {} and {} are incompatible with the multiplication",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Action matrix of the algebra element with coordinates `v`.
    pub fn combination(&self, v: &[(u32, u32)]) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.dim, self.dim);
        for &(k, x) in v {
            out = out.add(&self.action[k as usize].scale(x));
        }
        out
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// `e_a · v`.
    pub fn apply(&self, a: usize, v: &[(u32, u32)]) -> SparseVec {
        self.action[a].apply_sparse(v)
    }

    pub fn regular(algebra: &Arc<ArtinAlgebra>) -> Self {
        let action = (0..algebra.dim())
            .map(|i| algebra.left_mult_matrix(i))
            .collect();
        Self::build(algebra.clone(), algebra.dim(), action)
    }

    pub fn residue_field(algebra: &Arc<ArtinAlgebra>) -> Self {
        let f = algebra.field();
        let action = (0..algebra.dim())
            .map(|i| {
                if i == 0 {
                    Matrix::identity(f, 1)
                } else {
                    Matrix::zeros(f, 1, 1)
                }
            })
            .collect();
        Self::build(algebra.clone(), 1, action)
    }

    pub fn zero(algebra: &Arc<ArtinAlgebra>) -> Self {
        let f = algebra.field();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect();
        Self::build(algebra.clone(), 0, action)
    }

    /// Free module `A^r`.
    pub fn free(algebra: &Arc<ArtinAlgebra>, r: usize) -> Self {
        let reg = Self::regular(algebra);
        (1..r).fold(
            if r == 0 { Self::zero(algebra) } else { reg.clone() },
            |acc, _| acc.direct_sum(&reg).expect("same algebra"),
        )
    }

    /// The ideal `I` as a module, on its reduced echelon basis.
    pub fn from_ideal(ideal: &Ideal) -> Self {
        let a = ideal.algebra();
        let reg = Self::regular(a);
        let (m, _) = subquotient_module(
            a,
            a.dim(),
            |i, v| reg.apply(i, v),
            &[],
            ideal.basis(),
        );
        m
    }

    /// `M / IM`.
    pub fn quotient_by_ideal_action(&self, ideal: &Ideal) -> Result<Self> {
        if !same_algebra(&self.algebra, ideal.algebra()) {
            return Err(Error::MixedAlgebras);
        }
        let im: Vec<SparseVec> = ideal
            .basis()
            .iter()
            .flat_map(|a| (0..self.dim as u32).map(move |j| (a, j)))
            .map(|(a, j)| self.combination(a).sparse_column(j as usize))
            .collect();
        Ok(self.quotient(&Subspace::span(self.field(), self.dim, &im)).0)
    }

    /// Quotient by a submodule given as a subspace.
    pub fn quotient(&self, sub: &Subspace) -> (Self, Subquotient) {
        subquotient_module(
            &self.algebra,
            self.dim,
            |i, v| self.apply(i, v),
            sub.basis(),
            &unit_vectors(self.dim),
        )
    }

    /// A submodule given by spanning vectors; fails if they do not span a
    /// submodule.
    pub fn submodule(&self, gens: &[SparseVec]) -> Result<(Self, Subquotient)> {
        let space = Subspace::span(self.field(), self.dim, gens);
        for v in space.basis() {
            for &g in self.algebra.generators() {
                if !space.contains(&self.apply(g, v)) {
                    return Err(Error::InvalidModule("vectors do not span a submodule".into()));
                }
            }
        }
        Ok(subquotient_module(
            &self.algebra,
            self.dim,
            |i, v| self.apply(i, v),
            &[],
            space.basis(),
        ))
    }

    /// The submodule generated by the given vectors.
    pub fn generated_submodule(&self, gens: &[SparseVec]) -> (Self, Subquotient) {
        let vecs: Vec<SparseVec> = gens
            .iter()
            .flat_map(|g| (0..self.algebra.dim()).map(move |i| (i, g)))
            .map(|(i, g)| self.apply(i, g))
            .collect();
        let space = Subspace::span(self.field(), self.dim, &vecs);
        subquotient_module(
            &self.algebra,
            self.dim,
            |i, v| self.apply(i, v),
            &[],
            space.basis(),
        )
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::MixedAlgebras);
        }
        let n = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(self.field(), n, n);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(Self::build(self.algebra.clone(), n, action))
    }

    /// `M ⊗_k N` over `A ⊗_k B`, where `target` is
    /// [`ArtinAlgebra::external_tensor`] of the two algebras.
    pub fn outer(&self, other: &Self, target: &Arc<ArtinAlgebra>) -> Result<Self> {
        let (da, db) = (self.algebra.dim(), other.algebra.dim());
        let expected = ArtinAlgebra::external_tensor(&self.algebra, &other.algebra)?;
        if **target != expected {
            return Err(Error::MixedAlgebras);
        }
        let f = self.field();
        let (n1, n2) = (self.dim, other.dim);
        let mut action = Vec::with_capacity(da * db);
        for i in 0..da {
            for j in 0..db {
                let (a, b) = (&self.action[i], &other.action[j]);
                let mut m = Matrix::zeros(f, n1 * n2, n1 * n2);
                for r1 in 0..n1 {
                    for c1 in 0..n1 {
                        let x = a.get(r1, c1);
                        if x == 0 {
                            continue;
                        }
                        for r2 in 0..n2 {
                            for c2 in 0..n2 {
                                let y = b.get(r2, c2);
                                if y != 0 {
                                    m.set(r1 * n2 + r2, c1 * n2 + c2, f.mul(x, y));
                                }
                            }
                        }
                    }
                }
                action.push(m);
            }
        }
        Ok(Self::build(target.clone(), n1 * n2, action))
    }

    /// Restriction of scalars along an algebra map `A → B`, for a module
    /// over `B`.
    pub fn restrict_scalars(&self, map: &AlgebraMap) -> Result<Self> {
        if !same_algebra(map.target(), &self.algebra) {
            return Err(Error::MixedAlgebras);
        }
        let src = map.source();
        let action = (0..src.dim())
            .map(|a| self.combination(&map.apply(&[(a as u32, 1)])))
            .collect();
        Ok(Self::build(src.clone(), self.dim, action))
    }

    /// A module over `A` annihilated by `I`, viewed over `A/I`.
    pub fn descend(&self, quotient: &QuotientAlgebra) -> Result<Self> {
        let q = &quotient.algebra;
        for j in 0..self.algebra.dim() {
            let img = quotient.projection.sparse_column(j);
            let lifted: SparseVec = img
                .iter()
                .map(|&(k, x)| (quotient.lifts[k as usize] as u32, x))
                .collect();
            let diff = crate::linalg::sparse_axpy(
                &self.field(),
                &[(j as u32, 1)],
                self.field().neg(1),
                &lifted,
            );
            if !self.combination(&diff).is_zero() {
                return Err(Error::InvalidModule(
                    "module is not annihilated by the ideal".into(),
                ));
            }
        }
        let action = quotient
            .lifts
            .iter()
            .map(|&l| self.action[l].clone())
            .collect();
        Ok(Self::build(q.clone(), self.dim, action))
    }

    /// `Hom_k(M, k)` with the transposed action.
    pub fn matlis_dual(&self) -> Self {
        let action = self.action.iter().map(Matrix::transpose).collect();
        Self::build(self.algebra.clone(), self.dim, action)
    }

    fn m_times(&self) -> Vec<SparseVec> {
        self.algebra
            .generators()
            .iter()
            .flat_map(|&g| (0..self.dim).map(move |j| (g, j)))
            .map(|(g, j)| self.action[g].sparse_column(j))
            .collect()
    }

    /// `m·M` as a subspace.
    pub fn m_submodule(&self) -> Subspace {
        Subspace::span(self.field(), self.dim, &self.m_times())
    }

    /// Indices of standard basis vectors forming a minimal generating set:
    /// the lexicographically first completion of a basis of `mM`.
    pub fn generator_indices(&self) -> Vec<usize> {
        let mut e = Echelon::new(self.field(), self.dim);
        for v in self.m_times() {
            e.insert(&v);
        }
        (0..self.dim)
            .filter(|&j| e.insert(&[(j as u32, 1)]))
            .collect()
    }

    /// `μ(M) = dim M/mM`.
    pub fn min_generators(&self) -> usize {
        self.dim - self.m_submodule().dim()
    }

    pub fn is_cyclic(&self) -> bool {
        self.min_generators() <= 1
    }

    pub fn annihilator(&self) -> Ideal {
        let n2 = self.dim * self.dim;
        let cols: Vec<SparseVec> = self
            .action
            .iter()
            .map(|m| {
                (0..self.dim)
                    .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
                    .filter_map(|(i, j)| {
                        let x = m.get(i, j);
                        (x != 0).then_some(((i * self.dim + j) as u32, x))
                    })
                    .collect()
            })
            .collect();
        let ker = kernel_of_columns(self.field(), n2, &cols);
        let space = Subspace::span(self.field(), self.algebra.dim(), &ker);
        Ideal::from_subspace(&self.algebra, space).expect("annihilators are ideals")
    }

    /// Socle `{v : m v = 0}`, as a subspace.
    pub fn socle(&self) -> Subspace {
        let gens = self.algebra.generators();
        let n = self.dim;
        let cols: Vec<SparseVec> = (0..n)
            .map(|j| {
                let mut v = Vec::new();
                for (t, &g) in gens.iter().enumerate() {
                    for (i, x) in self.action[g].sparse_column(j) {
                        v.push(((t * n) as u32 + i, x));
                    }
                }
                v
            })
            .collect();
        let ker = kernel_of_columns(self.field(), gens.len() * n, &cols);
        Subspace::span(self.field(), n, &ker)
    }
}

fn unit_vectors(n: usize) -> Vec<SparseVec> {
    (0..n as u32).map(|i| vec![(i, 1)]).collect()
}

/// Coordinates on a subquotient `U/V` of some ambient space.
///
/// The basis of `U/V` consists of vectors reduced modulo `V` and put in
/// reduced echelon form among themselves.
#[derive(Clone, Debug)]
pub struct Subquotient {
    field: PrimeField,
    ambient: usize,
    v_rows: Vec<SparseVec>,
    basis: Vec<SparseVec>,
    slot: Vec<u32>,
}

impl Subquotient {
    pub fn new(field: PrimeField, ambient: usize, v: &[SparseVec], u: &[SparseVec]) -> Self {
        let vspace = Subspace::span(field, ambient, v);
        let mut e = Echelon::new(field, ambient);
        for row in vspace.basis() {
            e.insert(row);
        }
        let reduced: Vec<SparseVec> = u.iter().map(|x| e.reduce(x)).collect();
        let q = Subspace::span(field, ambient, &reduced);
        let mut slot = vec![u32::MAX; ambient];
        for (k, &c) in q.pivots().iter().enumerate() {
            slot[c as usize] = k as u32;
        }
        Subquotient {
            field,
            ambient,
            v_rows: vspace.basis().to_vec(),
            basis: q.basis().to_vec(),
            slot,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Representatives in the ambient space of the basis of `U/V`.
    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn killed(&self) -> &[SparseVec] {
        &self.v_rows
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field, self.ambient);
        for r in &self.v_rows {
            e.insert(r);
        }
        e
    }

    /// Coordinates of the class of `u`, assuming `u ∈ U`.
    pub fn coords(&self, u: &[(u32, u32)]) -> SparseVec {
        let mut e = self.echelon();
        self.coords_with(&mut e, u)
    }

    fn coords_with(&self, e: &mut Echelon, u: &[(u32, u32)]) -> SparseVec {
        let r = e.reduce(u);
        let mut out: SparseVec = r
            .into_iter()
            .filter_map(|(c, x)| {
                let s = self.slot[c as usize];
                (s != u32::MAX).then_some((s, x))
            })
            .collect();
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    /// Coordinates of many vectors, reusing one echelon form.
    pub fn coords_many(&self, us: &[SparseVec]) -> Vec<SparseVec> {
        let mut e = self.echelon();
        us.iter().map(|u| self.coords_with(&mut e, u)).collect()
    }

    /// Lifts coordinates back to the ambient space.
    pub fn lift(&self, coords: &[(u32, u32)]) -> SparseVec {
        let mut acc = Accumulator::new(self.field, self.ambient);
        for &(k, x) in coords {
            acc.add_scaled(x, &self.basis[k as usize]);
        }
        acc.take()
    }
}

/// Builds `U/V` as a module, where `act` is the action on the ambient
/// space, `U` is spanned by `u` and `V ⊆ U` by `v`; both must be submodules.
pub fn subquotient_module(
    algebra: &Arc<ArtinAlgebra>,
    ambient: usize,
    act: impl Fn(usize, &[(u32, u32)]) -> SparseVec,
    v: &[SparseVec],
    u: &[SparseVec],
) -> (FDModule, Subquotient) {
    let f = algebra.field();
    let sq = Subquotient::new(f, ambient, v, u);
    let n = sq.dim();
    let mut e = sq.echelon();
    let action = (0..algebra.dim())
        .map(|a| {
            if a == 0 {
                return Matrix::identity(f, n);
            }
            let cols: Vec<SparseVec> = sq
                .basis
                .iter()
                .map(|b| sq.coords_with(&mut e, &act(a, b)))
                .collect();
            Matrix::from_sparse_columns(f, n, &cols)
        })
        .collect();
    (FDModule::build(algebra.clone(), n, action), sq)
}

/// A module homomorphism, checked against every basis element on
/// construction.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: FDModule,
    target: FDModule,
    matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: FDModule, target: FDModule, matrix: Matrix) -> Result<Self> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::MixedAlgebras);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::InvalidMap(format!(
                "matrix is {}x{} but the map goes from dimension {} to {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        for a in 0..source.algebra().dim() {
            let lhs = matrix.mul(source.action(a))?;
            let rhs = target.action(a).mul(&matrix)?;
            if lhs != rhs {
                return Err(Error::InvalidMap(format!(
                    "does not commute with {}",
                    source.algebra().labels()[a]
                )));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(m: &FDModule) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(m.field(), m.dim()),
        }
    }

    pub fn source(&self) -> &FDModule {
        &self.source
    }

    pub fn target(&self) -> &FDModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.rank() == self.source.dim()
    }

    pub fn compose(&self, after: &ModuleMap) -> Result<ModuleMap> {
        ModuleMap::new(
            self.source.clone(),
            after.target.clone(),
            after.matrix.mul(&self.matrix)?,
        )
    }

    /// The Matlis dual map `N^∨ → M^∨`.
    pub fn matlis_dual(&self) -> ModuleMap {
        ModuleMap {
            source: self.target.matlis_dual(),
            target: self.source.matlis_dual(),
            matrix: self.matrix.transpose(),
        }
    }
}

/// `Hom_A(M, N)` together with the maps its basis stands for.
#[derive(Clone, Debug)]
pub struct Hom {
    pub module: FDModule,
    source: FDModule,
    target: FDModule,
    maps: Vec<Matrix>,
    free_cols: Vec<u32>,
}

fn vectorize(f: &Matrix) -> SparseVec {
    let c = f.cols();
    let mut out = Vec::new();
    for i in 0..f.rows() {
        for (j, &x) in f.row(i).iter().enumerate() {
            if x != 0 {
                out.push(((i * c + j) as u32, x));
            }
        }
    }
    out
}

fn unvectorize(field: PrimeField, rows: usize, cols: usize, v: &[(u32, u32)]) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for &(k, x) in v {
        m.set(k as usize / cols, k as usize % cols, x);
    }
    m
}

impl Hom {
    pub fn source(&self) -> &FDModule {
        &self.source
    }

    pub fn target(&self) -> &FDModule {
        &self.target
    }

    /// The `k`-th basis map, as a `dim N × dim M` matrix.
    pub fn basis_map(&self, k: usize) -> &Matrix {
        &self.maps[k]
    }

    pub fn basis_maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn element_map(&self, coords: &[u32]) -> Matrix {
        let f = self.module.field();
        let mut out = Matrix::zeros(f, self.target.dim(), self.source.dim());
        for (k, &c) in coords.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.maps[k].scale(c));
            }
        }
        out
    }

    /// Coordinates of a homomorphism given as a matrix, or `None` when the
    /// matrix is not a homomorphism.
    pub fn coords_of(&self, f: &Matrix) -> Option<Vec<u32>> {
        if f.rows() != self.target.dim() || f.cols() != self.source.dim() {
            return None;
        }
        let v = vectorize(f);
        let mut coords = vec![0u32; self.free_cols.len()];
        let mut k = 0;
        for &(c, x) in &v {
            while k < self.free_cols.len() && self.free_cols[k] < c {
                k += 1;
            }
            if k < self.free_cols.len() && self.free_cols[k] == c {
                coords[k] = x;
            }
        }
        (self.element_map(&coords) == *f).then_some(coords)
    }
}

/// `Hom_A(M, N)` as the solution space of the intertwining equations for
/// the algebra generators, with action `(a·f)(m) = a·f(m)`.
pub fn hom_module(m: &FDModule, n: &FDModule) -> Result<Hom> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::MixedAlgebras);
    }
    let a = m.algebra().clone();
    let f = a.field();
    let (nm, nn) = (m.dim(), n.dim());
    let gens = a.generators();
    let neq = gens.len() * nn * nm;
    let mut acc = Accumulator::new(f, neq.max(1));
    let mut cols = Vec::with_capacity(nn * nm);
    for r in 0..nn {
        for k in 0..nm {
            for (t, &g) in gens.iter().enumerate() {
                let base = t * nn * nm;
                let rm = m.action(g);
                for c in 0..nm {
                    let x = rm.get(k, c);
                    if x != 0 {
                        acc.add((base + r * nm + c) as u32, x as u64);
                    }
                }
                let rn = n.action(g);
                for r2 in 0..nn {
                    let y = rn.get(r2, r);
                    if y != 0 {
                        acc.add((base + r2 * nm + k) as u32, f.neg(y) as u64);
                    }
                }
            }
            cols.push(acc.take());
        }
    }
    let (ker, free_cols) = kernel_with_free_columns(f, neq, &cols);
    let maps: Vec<Matrix> = ker.iter().map(|v| unvectorize(f, nn, nm, v)).collect();
    let h = maps.len();
    let action = (0..a.dim())
        .map(|i| {
            if i == 0 {
                return Matrix::identity(f, h);
            }
            let cols: Vec<SparseVec> = maps
                .iter()
                .map(|phi| {
                    let comp = n.action(i).mul(phi).expect("shapes agree");
                    let v = vectorize(&comp);
                    read_free(&v, &free_cols)
                })
                .collect();
            Matrix::from_sparse_columns(f, h, &cols)
        })
        .collect();
    Ok(Hom {
        module: FDModule::build(a, h, action),
        source: m.clone(),
        target: n.clone(),
        maps,
        free_cols,
    })
}

fn read_free(v: &[(u32, u32)], free_cols: &[u32]) -> SparseVec {
    let mut out = Vec::new();
    let mut k = 0;
    for &(c, x) in v {
        while k < free_cols.len() && free_cols[k] < c {
            k += 1;
        }
        if k < free_cols.len() && free_cols[k] == c {
            out.push((k as u32, x));
        }
    }
    out
}

/// `M ⊗_A N` as a quotient of `M ⊗_k N`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: FDModule,
    left_dim: usize,
    right_dim: usize,
    quotient: Subquotient,
}

impl Tensor {
    /// Coordinates of the class of `u ⊗ v`.
    pub fn pure(&self, u: &[(u32, u32)], v: &[(u32, u32)]) -> SparseVec {
        let f = self.module.field();
        let mut w = Vec::with_capacity(u.len() * v.len());
        for &(i, x) in u {
            for &(j, y) in v {
                w.push((i * self.right_dim as u32 + j, f.mul(x, y)));
            }
        }
        self.quotient.coords(&w)
    }

    /// Pairs `(i, j)` such that the classes of `e_i ⊗ e_j` form the basis.
    pub fn basis_pairs(&self) -> Vec<(usize, usize)> {
        self.quotient
            .basis()
            .iter()
            .map(|b| {
                let c = b[0].0 as usize;
                (c / self.right_dim, c % self.right_dim)
            })
            .collect()
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }
}

pub fn tensor_module(m: &FDModule, n: &FDModule) -> Result<Tensor> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::MixedAlgebras);
    }
    let a = m.algebra().clone();
    let f = a.field();
    let (nm, nn) = (m.dim(), n.dim());
    let mut rels = Vec::new();
    for &g in a.generators() {
        let (rm, rn) = (m.action(g), n.action(g));
        for i in 0..nm {
            let ci = rm.sparse_column(i);
            for j in 0..nn {
                let cj = rn.sparse_column(j);
                let mut v: SparseVec = ci.iter().map(|&(k, x)| (k * nn as u32 + j as u32, x)).collect();
                let w: SparseVec = cj
                    .iter()
                    .map(|&(l, y)| (i as u32 * nn as u32 + l, f.neg(y)))
                    .collect();
                v = crate::linalg::sparse_axpy(&f, &sort(v), 1, &sort(w));
                if !v.is_empty() {
                    rels.push(v);
                }
            }
        }
    }
    let act = |i: usize, v: &[(u32, u32)]| -> SparseVec {
        let mut acc = Accumulator::new(f, nm * nn);
        for &(c, x) in v {
            let (p, q) = (c as usize / nn, c as usize % nn);
            for (k, y) in m.action(i).sparse_column(p) {
                acc.add(k * nn as u32 + q as u32, f.mul(x, y) as u64);
            }
        }
        acc.take()
    };
    let (module, quotient) = subquotient_module(&a, nm * nn, act, &rels, &unit_vectors(nm * nn));
    Ok(Tensor {
        module,
        left_dim: nm,
        right_dim: nn,
        quotient,
    })
}

fn sort(mut v: SparseVec) -> SparseVec {
    v.sort_unstable_by_key(|e| e.0);
    v
}

/// Outcome of a randomized isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoResult {
    Yes(ModuleMap),
    No(String),
    Unknown,
}

impl IsoResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoResult::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoResult::No(_))
    }

    pub fn status(&self) -> IsoStatus {
        match self {
            IsoResult::Yes(_) => IsoStatus::Yes,
            IsoResult::No(_) => IsoStatus::No,
            IsoResult::Unknown => IsoStatus::Unknown,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoStatus {
    Yes,
    No,
    Unknown,
}

/// Betti prefix length compared by [`is_isomorphic`].
pub const ISO_BETTI_DEPTH: usize = 3;

/// Semi-decision for `M ≅ N`. Cheap invariants certify "no"; otherwise
/// random elements of `Hom(M, N)` are tried for invertibility.
pub fn is_isomorphic(m: &FDModule, n: &FDModule, trials: usize, seed: u64) -> Result<IsoResult> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::MixedAlgebras);
    }
    if m.dim() != n.dim() {
        return Ok(IsoResult::No(format!("dimensions differ: {} vs {}", m.dim(), n.dim())));
    }
    let (mu_m, mu_n) = (m.min_generators(), n.min_generators());
    if mu_m != mu_n {
        return Ok(IsoResult::No(format!(
            "minimal numbers of generators differ: {mu_m} vs {mu_n}"
        )));
    }
    let (am, an) = (m.annihilator().dim(), n.annihilator().dim());
    if am != an {
        return Ok(IsoResult::No(format!("annihilator dimensions differ: {am} vs {an}")));
    }
    if m.dim() == 0 {
        return Ok(IsoResult::Yes(ModuleMap::identity(m)));
    }
    let hom = hom_module(m, n)?;
    if hom.module.dim() == 0 {
        return Ok(IsoResult::No("Hom(M, N) is zero".into()));
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let coords: Vec<u32> = (0..hom.module.dim())
            .map(|_| rng.gen_range(0..f.p()))
            .collect();
        let phi = hom.element_map(&coords);
        if phi.rank() == m.dim() {
            return Ok(IsoResult::Yes(ModuleMap::new(m.clone(), n.clone(), phi)?));
        }
    }
    let bm = crate::resolution::betti_numbers(m, ISO_BETTI_DEPTH);
    let bn = crate::resolution::betti_numbers(n, ISO_BETTI_DEPTH);
    if bm != bn {
        return Ok(IsoResult::No(format!("Betti numbers differ: {bm:?} vs {bn:?}")));
    }
    Ok(IsoResult::Unknown)
}

/// Scales every entry of a sparse vector, exposed for callers building
/// linear combinations of module elements.
pub fn scale(f: &PrimeField, c: u32, v: &[(u32, u32)]) -> SparseVec {
    sparse_scale(f, c, v)
}
