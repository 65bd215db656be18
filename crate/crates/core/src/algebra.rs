//! Artinian local commutative algebras over `F_p` and their ideals.
//!
//! An algebra is stored by its structure constants with the unit at basis
//! index 0 and the remaining basis vectors spanning the maximal ideal.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Accumulator, Matrix, PrimeField, SparseVec, Subspace};

#[derive(Clone, Debug)]
pub struct ArtinAlgebra {
    field: PrimeField,
    labels: Vec<String>,
    mult: Vec<SparseVec>,
    generators: Vec<usize>,
    hilbert: Vec<usize>,
    fingerprint: u64,
}

impl PartialEq for ArtinAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.field == other.field
            && self.mult == other.mult
    }
}

impl Eq for ArtinAlgebra {}

impl fmt::Display for ArtinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algebra over F_{} of dimension {} with basis [{}]",
            self.field.p(),
            self.dim(),
            self.labels.join(", ")
        )
    }
}

/// Summary numbers of an algebra, serializable for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub p: u32,
    pub dim: usize,
    pub embedding_dim: usize,
    pub socle_dim: usize,
    pub gorenstein: bool,
    pub loewy_length: usize,
    pub hilbert_function: Vec<usize>,
}

/// A monomial given by its exponent vector.
pub type Exponents = Vec<u32>;

/// Parses a monomial such as `x^2*y` or `1` over the given variables.
pub fn parse_monomial(vars: &[String], s: &str) -> Result<Exponents> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut exps = vec![0u32; vars.len()];
    if compact == "1" {
        return Ok(exps);
    }
    if compact.is_empty() {
        return Err(Error::NotMonomial(s.to_string()));
    }
    for factor in compact.split('*') {
        let (name, power) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: u32 = e.parse().map_err(|_| Error::NotMonomial(s.to_string()))?;
                (n, e)
            }
            None => (factor, 1),
        };
        let Some(v) = vars.iter().position(|x| x == name) else {
            return Err(Error::NotMonomial(s.to_string()));
        };
        exps[v] += power;
    }
    Ok(exps)
}

fn monomial_label(vars: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn combine_labels(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", _) => b.to_string(),
        (_, "1") => a.to_string(),
        _ => format!("{a}*{b}"),
    }
}

impl ArtinAlgebra {
    /// The quotient of a polynomial ring by a monomial ideal.
    pub fn from_monomial_quotient(
        field: PrimeField,
        vars: &[&str],
        relations: &[&str],
    ) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.trim().to_string()).collect();
        let rels: Vec<Exponents> = relations
            .iter()
            .map(|r| parse_monomial(&vars, r))
            .collect::<Result<_>>()?;
        Self::from_monomial_exponents(field, &vars, &rels)
    }

    pub fn from_monomial_exponents(
        field: PrimeField,
        vars: &[String],
        relations: &[Exponents],
    ) -> Result<Self> {
        let n = vars.len();
        if relations.iter().any(|r| r.iter().all(|&e| e == 0)) {
            return Err(Error::NotLocal("the relation 1 kills the ring".into()));
        }
        let mut bounds = Vec::with_capacity(n);
        for (v, name) in vars.iter().enumerate() {
            let pure = relations
                .iter()
                .filter(|r| r.iter().enumerate().all(|(w, &e)| w == v || e == 0))
                .map(|r| r[v])
                .min();
            match pure {
                Some(b) => bounds.push(b),
                None => return Err(Error::NotZeroDimensional(name.clone())),
            }
        }
        let divides = |r: &Exponents, m: &[u32]| r.iter().zip(m).all(|(a, b)| a <= b);
        let mut standard: Vec<Exponents> = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            if !relations.iter().any(|r| divides(r, &cur)) {
                standard.push(cur.clone());
            }
            let mut k = 0;
            while k < n {
                cur[k] += 1;
                if cur[k] < bounds[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        standard.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let index: HashMap<&Exponents, usize> =
            standard.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let d = standard.len();
        let mut mult = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                let prod: Exponents = standard[i]
                    .iter()
                    .zip(&standard[j])
                    .map(|(a, b)| a + b)
                    .collect();
                if let Some(&k) = index.get(&prod) {
                    mult[i * d + j] = vec![(k as u32, 1)];
                }
            }
        }
        let labels = standard.iter().map(|m| monomial_label(vars, m)).collect();
        Self::from_sparse_table(field, labels, mult)
    }

    /// Builds and exhaustively validates an algebra from a dense table
    /// `table[i][j]` = coordinates of `e_i e_j`.
    pub fn from_structure_constants(
        field: PrimeField,
        table: &[Vec<Vec<i64>>],
        unit_index: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let d = table.len();
        if d == 0 {
            return Err(Error::DimensionMismatch("empty structure table".into()));
        }
        if unit_index >= d {
            return Err(Error::DimensionMismatch(format!(
                "unit index {unit_index} out of range for dimension {d}"
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != d || row.iter().any(|v| v.len() != d) {
                return Err(Error::DimensionMismatch(format!(
                    "structure table row {i} is not {d} x {d}"
                )));
            }
        }
        let labels = match labels {
            Some(l) if l.len() == d => l,
            Some(l) => {
                return Err(Error::DimensionMismatch(format!(
                    "{} labels for dimension {}",
                    l.len(),
                    d
                )))
            }
            None => (0..d).map(|i| format!("e{i}")).collect(),
        };
        let order: Vec<usize> = std::iter::once(unit_index)
            .chain((0..d).filter(|&i| i != unit_index))
            .collect();
        let mut pos = vec![0; d];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let raw: Vec<SparseVec> = (0..d * d)
            .map(|ij| {
                let v = &table[ij / d][ij % d];
                v.iter()
                    .enumerate()
                    .filter_map(|(k, &x)| {
                        let x = field.from_i64(x);
                        (x != 0).then_some((k as u32, x))
                    })
                    .collect()
            })
            .collect();
        validate_table(&field, d, &raw, unit_index)?;
        let mut mult = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut v: SparseVec = raw[i * d + j]
                    .iter()
                    .map(|&(k, x)| (pos[k as usize] as u32, x))
                    .collect();
                v.sort_unstable_by_key(|e| e.0);
                mult[pos[i] * d + pos[j]] = v;
            }
        }
        let labels = order.iter().map(|&i| labels[i].clone()).collect();
        Self::from_sparse_table(field, labels, mult)
    }

    /// Validates a sparse table whose unit sits at index 0.
    pub fn from_sparse_table(
        field: PrimeField,
        labels: Vec<String>,
        mult: Vec<SparseVec>,
    ) -> Result<Self> {
        let d = labels.len();
        if d == 0 || mult.len() != d * d {
            return Err(Error::DimensionMismatch(format!(
                "{} products for {} basis elements",
                mult.len(),
                d
            )));
        }
        if mult.iter().flatten().any(|&(k, _)| k as usize >= d) {
            return Err(Error::DimensionMismatch("product index out of range".into()));
        }
        validate_table(&field, d, &mult, 0)?;
        Self::assemble(field, labels, mult)
    }

    fn assemble(field: PrimeField, labels: Vec<String>, mult: Vec<SparseVec>) -> Result<Self> {
        let d = labels.len();
        for i in 0..d {
            for j in 1..d {
                if mult[i * d + j].first().is_some_and(|e| e.0 == 0) {
                    return Err(Error::NotLocal(
                        "basis elements other than the unit do not span an ideal".into(),
                    ));
                }
            }
        }
        let mut alg = ArtinAlgebra {
            field,
            labels,
            mult,
            generators: Vec::new(),
            hilbert: Vec::new(),
            fingerprint: 0,
        };
        let m2_vecs: Vec<SparseVec> = (1..d)
            .flat_map(|i| (i..d).map(move |j| (i, j)))
            .map(|(i, j)| alg.mult[i * d + j].clone())
            .collect();
        let m2 = Subspace::span(field, d, &m2_vecs);
        alg.generators = m2
            .complement_columns()
            .into_iter()
            .filter(|&c| c != 0)
            .map(|c| c as usize)
            .collect();
        let mut hilbert = vec![1];
        let mut power = Subspace::span(
            field,
            d,
            &(1..d as u32).map(|i| vec![(i, 1)]).collect::<Vec<_>>(),
        );
        while power.dim() > 0 {
            let next_vecs: Vec<SparseVec> = power
                .basis()
                .iter()
                .flat_map(|v| alg.generators.iter().map(move |&g| (g, v)))
                .map(|(g, v)| alg.mul_basis_vec(g, v))
                .collect();
            let next = Subspace::span(field, d, &next_vecs);
            if next.dim() == power.dim() {
                return Err(Error::NotLocal("maximal ideal is not nilpotent".into()));
            }
            hilbert.push(power.dim() - next.dim());
            power = next;
        }
        alg.hilbert = hilbert;
        let mut h = DefaultHasher::new();
        field.p().hash(&mut h);
        alg.mult.hash(&mut h);
        alg.fingerprint = h.finish();
        Ok(alg)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        let compact: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        self.labels.iter().position(|l| *l == compact)
    }

    /// Coordinates of `e_i e_j`.
    #[inline]
    pub fn mult_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim() + j]
    }

    /// Basis indices whose span is a complement of `m^2` in `m`; they
    /// generate `m` as an ideal and the algebra as a `k`-algebra.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn embedding_dim(&self) -> usize {
        self.generators.len()
    }

    /// Smallest `L` with `m^L = 0`.
    pub fn loewy_length(&self) -> usize {
        self.hilbert.len()
    }

    /// Dimensions of `m^k / m^(k+1)`.
    pub fn hilbert_function(&self) -> &[usize] {
        &self.hilbert
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn unit(&self) -> SparseVec {
        vec![(0, 1)]
    }

    /// `e_i · v`.
    pub fn mul_basis_vec(&self, i: usize, v: &[(u32, u32)]) -> SparseVec {
        let mut acc = Accumulator::new(self.field, self.dim());
        for &(j, x) in v {
            acc.add_scaled(x, self.mult_basis(i, j as usize));
        }
        acc.take()
    }

    pub fn mul(&self, a: &[(u32, u32)], b: &[(u32, u32)]) -> SparseVec {
        let mut acc = Accumulator::new(self.field, self.dim());
        for &(i, x) in a {
            for &(j, y) in b {
                acc.add_scaled(self.field.mul(x, y), self.mult_basis(i as usize, j as usize));
            }
        }
        acc.take()
    }

    /// Matrix of multiplication by `e_i`.
    pub fn left_mult_matrix(&self, i: usize) -> Matrix {
        let d = self.dim();
        let cols: Vec<SparseVec> = (0..d).map(|j| self.mult_basis(i, j).clone()).collect();
        Matrix::from_sparse_columns(self.field, d, &cols)
    }

    pub fn socle(self: &Arc<Self>) -> Ideal {
        let d = self.dim();
        let g = self.generators.len();
        let cols: Vec<SparseVec> = (0..d)
            .map(|j| {
                let mut v = Vec::new();
                for (t, &gi) in self.generators.iter().enumerate() {
                    for &(k, x) in self.mult_basis(gi, j) {
                        v.push(((t * d) as u32 + k, x));
                    }
                }
                v
            })
            .collect();
        let ker = crate::linalg::kernel_of_columns(self.field, g * d, &cols);
        Ideal {
            algebra: self.clone(),
            space: Subspace::span(self.field, d, &ker),
        }
    }

    pub fn is_gorenstein(self: &Arc<Self>) -> bool {
        self.socle().dim() == 1
    }

    pub fn summary(self: &Arc<Self>) -> AlgebraSummary {
        let socle_dim = self.socle().dim();
        AlgebraSummary {
            p: self.field.p(),
            dim: self.dim(),
            embedding_dim: self.embedding_dim(),
            socle_dim,
            gorenstein: socle_dim == 1,
            loewy_length: self.loewy_length(),
            hilbert_function: self.hilbert.clone(),
        }
    }

    /// `A ⊗_k B` with basis index `i * dim B + j` for `e_i ⊗ f_j`.
    pub fn external_tensor(a: &ArtinAlgebra, b: &ArtinAlgebra) -> Result<Self> {
        if a.field != b.field {
            return Err(Error::MixedAlgebras);
        }
        let f = a.field;
        let (da, db) = (a.dim(), b.dim());
        let d = da * db;
        let mut mult = vec![Vec::new(); d * d];
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    for l in 0..db {
                        let mut v: SparseVec = Vec::new();
                        for &(u, x) in a.mult_basis(i, k) {
                            for &(w, y) in b.mult_basis(j, l) {
                                v.push((u * db as u32 + w, f.mul(x, y)));
                            }
                        }
                        v.sort_unstable_by_key(|e| e.0);
                        mult[(i * db + j) * d + k * db + l] = v;
                    }
                }
            }
        }
        let labels = a
            .labels
            .iter()
            .flat_map(|x| b.labels.iter().map(move |y| combine_labels(x, y)))
            .collect();
        Self::from_sparse_table(f, labels, mult)
    }

    /// The same algebra with basis reordered: new index `k` is old index
    /// `order[k]`. The unit must stay first.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let d = self.dim();
        let mut seen = vec![false; d];
        if order.len() != d || order.first() != Some(&0) {
            return Err(Error::DimensionMismatch("invalid basis permutation".into()));
        }
        for &o in order {
            if o >= d || seen[o] {
                return Err(Error::DimensionMismatch("invalid basis permutation".into()));
            }
            seen[o] = true;
        }
        let mut pos = vec![0; d];
        for (k, &o) in order.iter().enumerate() {
            pos[o] = k;
        }
        let mut mult = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut v: SparseVec = self
                    .mult_basis(i, j)
                    .iter()
                    .map(|&(k, x)| (pos[k as usize] as u32, x))
                    .collect();
                v.sort_unstable_by_key(|e| e.0);
                mult[pos[i] * d + pos[j]] = v;
            }
        }
        let labels = order.iter().map(|&o| self.labels[o].clone()).collect();
        Self::from_sparse_table(self.field, labels, mult)
    }

    /// Dense structure table `table[i][j][k]`, as accepted by
    /// [`ArtinAlgebra::from_structure_constants`].
    pub fn structure_table(&self) -> Vec<Vec<Vec<i64>>> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = vec![0i64; d];
                        for &(k, x) in self.mult_basis(i, j) {
                            v[k as usize] = x as i64;
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }
}

fn validate_table(f: &PrimeField, d: usize, mult: &[SparseVec], unit: usize) -> Result<()> {
    for i in 0..d {
        for j in i + 1..d {
            if mult[i * d + j] != mult[j * d + i] {
                return Err(Error::NotCommutative(i, j));
            }
        }
    }
    for j in 0..d {
        if mult[unit * d + j] != vec![(j as u32, 1)] {
            return Err(Error::NotUnital(unit));
        }
    }
    let mut acc = Accumulator::new(*f, d);
    for i in 0..d {
        for j in 0..d {
            let ij = &mult[i * d + j];
            for k in 0..d {
                for &(t, x) in ij {
                    acc.add_scaled(x, &mult[t as usize * d + k]);
                }
                let left = acc.take();
                for &(t, x) in &mult[j * d + k] {
                    acc.add_scaled(x, &mult[i * d + t as usize]);
                }
                let right = acc.take();
                if left != right {
                    return Err(Error::NotAssociative(i, j, k));
                }
            }
        }
    }
    Ok(())
}

/// An ideal, stored as a subspace in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Ideal {
    algebra: Arc<ArtinAlgebra>,
    space: Subspace,
}

impl Ideal {
    pub fn zero(algebra: &Arc<ArtinAlgebra>) -> Self {
        Ideal {
            algebra: algebra.clone(),
            space: Subspace::zero(algebra.field(), algebra.dim()),
        }
    }

    pub fn maximal(algebra: &Arc<ArtinAlgebra>) -> Self {
        let gens: Vec<SparseVec> = (1..algebra.dim() as u32).map(|i| vec![(i, 1)]).collect();
        Ideal {
            algebra: algebra.clone(),
            space: Subspace::span(algebra.field(), algebra.dim(), &gens),
        }
    }

    /// The ideal generated by the given elements.
    pub fn span(algebra: &Arc<ArtinAlgebra>, generators: &[SparseVec]) -> Self {
        let d = algebra.dim();
        let vecs: Vec<SparseVec> = generators
            .iter()
            .flat_map(|g| (0..d).map(move |i| (i, g)))
            .map(|(i, g)| algebra.mul_basis_vec(i, g))
            .collect();
        Ideal {
            algebra: algebra.clone(),
            space: Subspace::span(algebra.field(), d, &vecs),
        }
    }

    /// Wraps a subspace after checking it is closed under multiplication.
    pub fn from_subspace(algebra: &Arc<ArtinAlgebra>, space: Subspace) -> Result<Self> {
        if space.ambient_dim() != algebra.dim() {
            return Err(Error::DimensionMismatch("subspace of the wrong ambient".into()));
        }
        for v in space.basis() {
            for &g in algebra.generators() {
                if !space.contains(&algebra.mul_basis_vec(g, v)) {
                    return Err(Error::NotAnIdeal(format!(
                        "not closed under multiplication by {}",
                        algebra.labels()[g]
                    )));
                }
            }
        }
        Ok(Ideal {
            algebra: algebra.clone(),
            space,
        })
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.algebra
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[SparseVec] {
        self.space.basis()
    }

    pub fn is_proper(&self) -> bool {
        self.space.pivots().first() != Some(&0)
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        Ok(Ideal {
            algebra: self.algebra.clone(),
            space: self.space.sum(&other.space),
        })
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let vecs: Vec<SparseVec> = self
            .basis()
            .iter()
            .flat_map(|a| other.basis().iter().map(move |b| (a, b)))
            .map(|(a, b)| self.algebra.mul(a, b))
            .collect();
        Ok(Ideal {
            algebra: self.algebra.clone(),
            space: Subspace::span(self.algebra.field(), self.algebra.dim(), &vecs),
        })
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        Ok(Ideal {
            algebra: self.algebra.clone(),
            space: self.space.intersection(&other.space),
        })
    }

    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.space.contains_subspace(&other.space))
    }

    pub fn same_as(&self, other: &Ideal) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.contains(other)?)
    }
}

/// `A/I` with the projection and a choice of basis lifts.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: Arc<ArtinAlgebra>,
    /// `dim(A/I) × dim(A)` matrix of the projection.
    pub projection: Matrix,
    /// Basis index in `A` lifting each basis element of `A/I`.
    pub lifts: Vec<usize>,
}

pub fn quotient_algebra(ideal: &Ideal) -> Result<QuotientAlgebra> {
    if !ideal.is_proper() {
        return Err(Error::ImproperIdeal);
    }
    let a = ideal.algebra();
    let f = a.field();
    let d = a.dim();
    let lifts: Vec<usize> = ideal
        .space()
        .complement_columns()
        .into_iter()
        .map(|c| c as usize)
        .collect();
    let mut slot = vec![u32::MAX; d];
    for (k, &c) in lifts.iter().enumerate() {
        slot[c] = k as u32;
    }
    let project = |v: &[(u32, u32)]| -> SparseVec {
        ideal
            .space()
            .reduce(v)
            .into_iter()
            .map(|(c, x)| (slot[c as usize], x))
            .collect()
    };
    let q = lifts.len();
    let mut mult = vec![Vec::new(); q * q];
    for (i, &ci) in lifts.iter().enumerate() {
        for (j, &cj) in lifts.iter().enumerate() {
            mult[i * q + j] = project(a.mult_basis(ci, cj));
        }
    }
    let labels = lifts.iter().map(|&c| a.labels()[c].clone()).collect();
    let alg = ArtinAlgebra::from_sparse_table(f, labels, mult)?;
    let cols: Vec<SparseVec> = (0..d as u32).map(|j| project(&[(j, 1)])).collect();
    Ok(QuotientAlgebra {
        algebra: Arc::new(alg),
        projection: Matrix::from_sparse_columns(f, q, &cols),
        lifts,
    })
}

/// A unital algebra homomorphism, checked on every pair of basis elements.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<ArtinAlgebra>,
    target: Arc<ArtinAlgebra>,
    matrix: Matrix,
}

impl AlgebraMap {
    pub fn new(source: Arc<ArtinAlgebra>, target: Arc<ArtinAlgebra>, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::InvalidMap("matrix shape does not match the algebras".into()));
        }
        if matrix.sparse_column(0) != target.unit() {
            return Err(Error::InvalidMap("unit is not preserved".into()));
        }
        let cols = matrix.sparse_columns();
        for i in 0..source.dim() {
            for j in i..source.dim() {
                let lhs = matrix.apply_sparse(source.mult_basis(i, j));
                let rhs = target.mul(&cols[i], &cols[j]);
                if lhs != rhs {
                    return Err(Error::InvalidMap(format!(
                        "product of basis elements {i} and {j} is not preserved"
                    )));
                }
            }
        }
        Ok(AlgebraMap {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &Arc<ArtinAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ArtinAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[(u32, u32)]) -> SparseVec {
        self.matrix.apply_sparse(v)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.matrix.rank() == self.source.dim()
    }

    pub fn compose(&self, after: &AlgebraMap) -> Result<AlgebraMap> {
        AlgebraMap::new(
            self.source.clone(),
            after.target.clone(),
            after.matrix.mul(&self.matrix)?,
        )
    }
}
