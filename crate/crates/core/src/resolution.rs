//! Minimal free resolutions, Ext and Tor, Betti and Bass numbers, and the
//! canonical maps (homothety, biduality, evaluation).
//!
//! A free module `A^b` has coordinates `g * dim A + j` for `e_j` in the
//! `g`-th summand. Resolutions are cached per module and extended on
//! demand, so asking for more degrees reuses the work already done.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{
    kernel_with_free_columns, rank_of, Accumulator, Echelon, Matrix, PrimeField, SparseVec,
};
use crate::module::{hom_module, same_algebra, subquotient_module, tensor_module, FDModule, Hom, ModuleMap};

/// `e_a · v` for `v` in a free module.
pub fn free_mul(alg: &ArtinAlgebra, acc: &mut Accumulator, a: usize, v: &[(u32, u32)]) -> SparseVec {
    let d = alg.dim() as u32;
    for &(idx, x) in v {
        let (g, j) = (idx / d, idx % d);
        for &(k, c) in alg.mult_basis(a, j as usize) {
            acc.add(g * d + k, (x as u64 * c as u64) % alg.field().p() as u64);
        }
    }
    acc.take()
}

/// An `A`-linear map `A^src → A^tgt`, stored as the images of the
/// generators of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMap {
    pub src: usize,
    pub tgt: usize,
    pub cols: Vec<SparseVec>,
}

impl FreeMap {
    /// Entry `(r, k)`: the `r`-th component of the image of generator `k`.
    pub fn entry(&self, d: usize, r: usize, k: usize) -> SparseVec {
        let lo = (r * d) as u32;
        let hi = lo + d as u32;
        self.cols[k]
            .iter()
            .filter(|e| e.0 >= lo && e.0 < hi)
            .map(|&(i, x)| (i - lo, x))
            .collect()
    }

    /// The dual map `Hom(A^tgt, A) → Hom(A^src, A)`: the transpose matrix.
    pub fn transpose(&self, d: usize) -> FreeMap {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.tgt];
        for (k, col) in self.cols.iter().enumerate() {
            for &(idx, x) in col {
                let (r, j) = (idx as usize / d, idx as usize % d);
                cols[r].push(((k * d + j) as u32, x));
            }
        }
        FreeMap {
            src: self.tgt,
            tgt: self.src,
            cols,
        }
    }

    /// Columns of the underlying `F_p`-linear map, indexed `k * d + a`.
    pub fn fp_columns(&self, alg: &ArtinAlgebra) -> Vec<SparseVec> {
        let d = alg.dim();
        let mut acc = Accumulator::new(alg.field(), self.tgt * d);
        let mut out = Vec::with_capacity(self.src * d);
        for col in &self.cols {
            for a in 0..d {
                out.push(free_mul(alg, &mut acc, a, col));
            }
        }
        out
    }

    /// Columns of `map ⊗ N : N^src → N^tgt`, indexed `k * dim N + v`.
    #[allow(clippy::needless_range_loop)]
    pub fn tensor_columns(&self, n: &FDModule) -> Vec<SparseVec> {
        let alg = n.algebra();
        let d = alg.dim();
        let nn = n.dim();
        let f = alg.field();
        let act: Vec<Vec<SparseVec>> = (0..d)
            .map(|j| n.action(j).sparse_columns())
            .collect();
        let mut acc = Accumulator::new(f, (self.tgt * nn).max(1));
        let mut out = Vec::with_capacity(self.src * nn);
        for col in &self.cols {
            for v in 0..nn {
                for &(idx, x) in col {
                    let (r, j) = (idx as usize / d, idx as usize % d);
                    for &(w, y) in &act[j][v] {
                        acc.add((r * nn) as u32 + w, f.mul(x, y) as u64);
                    }
                }
                out.push(acc.take());
            }
        }
        out
    }

    /// Columns of `Hom(map, N) : N^tgt → N^src`.
    pub fn hom_columns(&self, n: &FDModule) -> Vec<SparseVec> {
        self.transpose(n.algebra().dim()).tensor_columns(n)
    }

    /// Composite `self ∘ first`.
    pub fn after(&self, first: &FreeMap, alg: &ArtinAlgebra) -> FreeMap {
        let d = alg.dim();
        let mut acc = Accumulator::new(alg.field(), self.tgt * d);
        let cols = first
            .cols
            .iter()
            .map(|col| {
                for &(idx, x) in col {
                    let (r, j) = (idx as usize / d, idx as usize % d);
                    let img = free_mul(alg, &mut Accumulator::new(alg.field(), self.tgt * d), j, &self.cols[r]);
                    acc.add_scaled(x, &img);
                }
                acc.take()
            })
            .collect();
        FreeMap {
            src: first.src,
            tgt: self.tgt,
            cols,
        }
    }

    /// Whether every entry lies in the maximal ideal.
    pub fn is_minimal(&self, d: usize) -> bool {
        self.cols
            .iter()
            .all(|c| c.iter().all(|&(idx, _)| !(idx as usize).is_multiple_of(d)))
    }
}

/// A syzygy module `Ω^i ⊂ F_{i-1}` as a subspace in free-column normal form.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub basis: Vec<SparseVec>,
    pub free_cols: Vec<u32>,
    pub ambient: usize,
}

impl Syzygy {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A truncated minimal free resolution `F_N → ... → F_0 → M`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    module: FDModule,
    ranks: Vec<usize>,
    gens0: Vec<usize>,
    diffs: Vec<Arc<FreeMap>>,
    syz: Vec<Arc<Syzygy>>,
}

impl FreeResolution {
    pub fn new(module: &FDModule) -> Self {
        let gens0 = module.generator_indices();
        FreeResolution {
            module: module.clone(),
            ranks: vec![gens0.len()],
            gens0,
            diffs: Vec::new(),
            syz: Vec::new(),
        }
    }

    fn alg(&self) -> &Arc<ArtinAlgebra> {
        self.module.algebra()
    }

    pub fn module(&self) -> &FDModule {
        &self.module
    }

    /// Number of differentials computed so far.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Basis indices of `M` hit by the generators of `F_0`.
    pub fn augmentation_generators(&self) -> &[usize] {
        &self.gens0
    }

    /// `∂_i : F_i → F_{i-1}` for `1 ≤ i ≤ length`.
    pub fn differential(&self, i: usize) -> &FreeMap {
        &self.diffs[i - 1]
    }

    /// The augmentation as an `F_p`-matrix `F_0 → M`.
    pub fn augmentation(&self) -> Matrix {
        let d = self.alg().dim();
        let n = self.module.dim();
        let cols: Vec<SparseVec> = self
            .gens0
            .iter()
            .flat_map(|&g| (0..d).map(move |a| (g, a)))
            .map(|(g, a)| self.module.action(a).sparse_column(g))
            .collect();
        Matrix::from_sparse_columns(self.alg().field(), n, &cols)
    }

    /// `Ω^i ⊂ F_{i-1}` for `i ≥ 1`.
    pub fn syzygy(&mut self, i: usize) -> Arc<Syzygy> {
        assert!(i >= 1);
        while self.syz.len() < i {
            let j = self.syz.len() + 1;
            self.extend_to(j - 1);
            let alg = self.alg().clone();
            let d = alg.dim();
            let f = alg.field();
            let (rows, cols) = if j == 1 {
                let cols: Vec<SparseVec> = self
                    .gens0
                    .iter()
                    .flat_map(|&g| (0..d).map(move |a| (g, a)))
                    .map(|(g, a)| self.module.action(a).sparse_column(g))
                    .collect();
                (self.module.dim(), cols)
            } else {
                let map = &self.diffs[j - 2];
                (map.tgt * d, map.fp_columns(&alg))
            };
            let (basis, free_cols) = kernel_with_free_columns(f, rows, &cols);
            self.syz.push(Arc::new(Syzygy {
                basis,
                free_cols,
                ambient: cols.len(),
            }));
        }
        self.syz[i - 1].clone()
    }

    /// Extends the resolution so that `∂_1, ..., ∂_n` exist.
    pub fn extend_to(&mut self, n: usize) {
        while self.length() < n {
            let i = self.length() + 1;
            let k = self.syzygy(i);
            let gens = minimal_generators_of_syzygy(self.alg(), &k);
            self.ranks.push(gens.len());
            self.diffs.push(Arc::new(FreeMap {
                src: gens.len(),
                tgt: self.ranks[i - 1],
                cols: gens.into_iter().map(|g| k.basis[g].clone()).collect(),
            }));
        }
    }

    /// A copy truncated to `n` differentials.
    pub fn truncated(&self, n: usize) -> FreeResolution {
        let n = n.min(self.length());
        FreeResolution {
            module: self.module.clone(),
            ranks: self.ranks[..=n].to_vec(),
            gens0: self.gens0.clone(),
            diffs: self.diffs[..n].to_vec(),
            syz: self.syz[..self.syz.len().min(n)].to_vec(),
        }
    }

    /// Checks `∂∂ = 0`, minimality, exactness at degrees `1..length-1`,
    /// surjectivity of the augmentation and `ker ε = im ∂_1`.
    pub fn validate(&self) -> Result<()> {
        let alg = self.alg().clone();
        let d = alg.dim();
        let f = alg.field();
        let n = self.module.dim();
        let eps = self.augmentation();
        if eps.rank() != n {
            return Err(Error::InvalidMap("augmentation is not surjective".into()));
        }
        let mut ranks_fp = Vec::new();
        for i in 1..=self.length() {
            let map = self.differential(i);
            if !map.is_minimal(d) {
                return Err(Error::InvalidMap(format!("∂_{i} has a unit entry")));
            }
            if i == 1 {
                for col in map.fp_columns(&alg) {
                    if !eps.apply_sparse(&col).is_empty() {
                        return Err(Error::InvalidMap("ε∘∂_1 ≠ 0".into()));
                    }
                }
            } else {
                let comp = self.differential(i - 1).after(map, &alg);
                if comp.cols.iter().any(|c| !c.is_empty()) {
                    return Err(Error::InvalidMap(format!("∂_{}∘∂_{} ≠ 0", i - 1, i)));
                }
            }
            ranks_fp.push(rank_of(f, map.tgt * d, &map.fp_columns(&alg)));
        }
        if let Some(&r1) = ranks_fp.first() {
            if d * self.ranks[0] - n != r1 {
                return Err(Error::InvalidMap("ker ε ≠ im ∂_1".into()));
            }
        }
        for i in 1..self.length() {
            let ker = d * self.ranks[i] - ranks_fp[i - 1];
            if ker != ranks_fp[i] {
                return Err(Error::InvalidMap(format!("not exact at degree {i}")));
            }
        }
        Ok(())
    }
}

/// Chooses generators of a syzygy modulo `m·Ω`: the lexicographically
/// first completion, in syzygy coordinates, of a basis of `m·Ω`.
fn minimal_generators_of_syzygy(alg: &ArtinAlgebra, k: &Syzygy) -> Vec<usize> {
    let dim = k.dim();
    if dim == 0 {
        return Vec::new();
    }
    let mut slot = vec![u32::MAX; k.ambient];
    for (t, &c) in k.free_cols.iter().enumerate() {
        slot[c as usize] = (dim - 1 - t) as u32;
    }
    let f = alg.field();
    let mut e = Echelon::new(f, dim);
    let mut acc = Accumulator::new(f, k.ambient);
    for v in &k.basis {
        for &g in alg.generators() {
            let w = free_mul(alg, &mut acc, g, v);
            let mut c: SparseVec = w
                .into_iter()
                .filter_map(|(i, x)| {
                    let s = slot[i as usize];
                    (s != u32::MAX).then_some((s, x))
                })
                .collect();
            c.sort_unstable_by_key(|e| e.0);
            e.insert(&c);
        }
    }
    (0..dim).filter(|&t| !e.is_pivot(dim - 1 - t)).collect()
}

type Shared = Arc<Mutex<FreeResolution>>;

fn cache() -> &'static Mutex<HashMap<u64, Vec<Shared>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<Shared>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The cached resolution object of `m`.
pub fn shared_resolution(m: &FDModule) -> Shared {
    let mut map = cache().lock().expect("resolution cache poisoned");
    let bucket = map.entry(m.fingerprint()).or_default();
    for r in bucket.iter() {
        if r.lock().expect("resolution poisoned").module() == m {
            return r.clone();
        }
    }
    let r = Arc::new(Mutex::new(FreeResolution::new(m)));
    bucket.push(r.clone());
    r
}

/// Drops every cached resolution.
pub fn clear_cache() {
    cache().lock().expect("resolution cache poisoned").clear();
}

fn with_resolution<T>(m: &FDModule, f: impl FnOnce(&mut FreeResolution) -> T) -> T {
    let shared = shared_resolution(m);
    let mut guard = shared.lock().expect("resolution poisoned");
    f(&mut guard)
}

/// Minimal free resolution of `m` with `n` differentials.
pub fn minimal_free_resolution(m: &FDModule, n: usize) -> FreeResolution {
    with_resolution(m, |r| {
        r.extend_to(n);
        r.truncated(n)
    })
}

/// `(b_0, ..., b_n)`.
pub fn betti_numbers(m: &FDModule, n: usize) -> Vec<usize> {
    with_resolution(m, |r| {
        r.extend_to(n);
        r.ranks()[..=n].to_vec()
    })
}

/// `(μ^0, ..., μ^n)` with `μ^i = dim Ext^i(k, M)`, computed as the Betti
/// numbers of the Matlis dual.
pub fn bass_numbers(m: &FDModule, n: usize) -> Vec<usize> {
    betti_numbers(&m.matlis_dual(), n)
}

fn check_same(m: &FDModule, n: &FDModule) -> Result<()> {
    if same_algebra(m.algebra(), n.algebra()) {
        Ok(())
    } else {
        Err(Error::MixedAlgebras)
    }
}

/// `Tor_i(M, N) = H_i(F ⊗ N)` as a module.
pub fn tor(m: &FDModule, n: &FDModule, i: usize) -> Result<FDModule> {
    check_same(m, n)?;
    let res = minimal_free_resolution(m, i + 1);
    let alg = m.algebra().clone();
    let f = alg.field();
    let nn = n.dim();
    let ambient = res.ranks()[i] * nn;
    let cycles = if i == 0 {
        (0..ambient as u32).map(|c| vec![(c, 1)]).collect()
    } else {
        let map = res.differential(i);
        crate::linalg::kernel_of_columns(f, map.tgt * nn, &map.tensor_columns(n))
    };
    let boundaries = res.differential(i + 1).tensor_columns(n);
    let (module, _) = subquotient_module(
        &alg,
        ambient,
        |a, v| power_action(n, a, v),
        &boundaries,
        &cycles,
    );
    Ok(module)
}

/// `Ext^i(M, N) = H^i(Hom(F, N))` as a module.
pub fn ext(m: &FDModule, n: &FDModule, i: usize) -> Result<FDModule> {
    check_same(m, n)?;
    let res = minimal_free_resolution(m, i + 1);
    let alg = m.algebra().clone();
    let f = alg.field();
    let nn = n.dim();
    let ambient = res.ranks()[i] * nn;
    let delta = res.differential(i + 1).hom_columns(n);
    let cycles = crate::linalg::kernel_of_columns(f, res.ranks()[i + 1] * nn, &delta);
    let boundaries = if i == 0 {
        Vec::new()
    } else {
        res.differential(i).hom_columns(n)
    };
    let (module, _) = subquotient_module(
        &alg,
        ambient,
        |a, v| power_action(n, a, v),
        &boundaries,
        &cycles,
    );
    Ok(module)
}

/// Componentwise action on `N^r`.
pub(crate) fn power_action(n: &FDModule, a: usize, v: &[(u32, u32)]) -> SparseVec {
    let nn = n.dim() as u32;
    let mut by_block: Vec<(u32, SparseVec)> = Vec::new();
    for &(idx, x) in v {
        let (b, w) = (idx / nn, idx % nn);
        match by_block.last_mut() {
            Some((bb, part)) if *bb == b => part.push((w, x)),
            _ => by_block.push((b, vec![(w, x)])),
        }
    }
    let mut out = Vec::new();
    for (b, part) in by_block {
        for (w, x) in n.apply(a, &part) {
            out.push((b * nn + w, x));
        }
    }
    out
}

/// `dim Tor_i(M, N)` by dimension shifting.
///
/// With `F = F_{i-1}`, `K = Ω^i(X) ⊂ F`, a presentation `Y = G/L` with
/// `G = A^μ(Y)`, the group is `(K⊗G ∩ F⊗L) / im(K⊗L)` inside `F⊗G`, so no
/// differential beyond `∂_{i-1}` of `X` is needed.
pub fn tor_dim(m: &FDModule, n: &FDModule, i: usize) -> Result<usize> {
    check_same(m, n)?;
    if i == 0 {
        return Ok(tensor_module(m, n)?.module.dim());
    }
    let (x, y) = if n.min_generators() <= m.min_generators() {
        (m, n)
    } else {
        (n, m)
    };
    let alg = m.algebra().clone();
    let d = alg.dim();
    let f = alg.field();
    let (b, k, kgens) = with_resolution(x, |r| {
        let k = r.syzygy(i);
        let kgens = (r.length() >= i).then(|| r.differential(i).cols.clone());
        (r.ranks()[i - 1], k, kgens)
    });
    if k.dim() == 0 {
        return Ok(0);
    }
    let (c, l, lgens) = with_resolution(y, |r| {
        r.extend_to(1);
        (r.ranks()[0], r.syzygy(1), r.differential(1).cols.clone())
    });
    if l.dim() == 0 {
        return Ok(0);
    }
    let total = b * c * d;
    let mut sum = Echelon::new(f, total);
    for v in &k.basis {
        for t in 0..c {
            let w: SparseVec = v
                .iter()
                .map(|&(idx, z)| {
                    let (s, j) = (idx as usize / d, idx as usize % d);
                    (((s * c + t) * d + j) as u32, z)
                })
                .collect();
            sum.insert(&w);
        }
    }
    for s in 0..b {
        for v in &l.basis {
            let w: SparseVec = v
                .iter()
                .map(|&(idx, z)| {
                    let (t, j) = (idx as usize / d, idx as usize % d);
                    (((s * c + t) * d + j) as u32, z)
                })
                .collect();
            sum.insert(&w);
        }
    }
    let rank_sum = sum.rank();
    drop(sum);
    let (left, right): (&[SparseVec], &[SparseVec]) = match &kgens {
        Some(g) if g.len() * l.dim() < k.dim() * lgens.len() => (g, &l.basis),
        _ => (&k.basis, &lgens),
    };
    let mut kl = Echelon::new(f, total);
    let mut acc = Accumulator::new(f, total);
    for u in left {
        for v in right {
            for &(i1, x1) in u {
                let (s, a) = (i1 as usize / d, i1 as usize % d);
                for &(i2, x2) in v {
                    let (t, bb) = (i2 as usize / d, i2 as usize % d);
                    let base = ((s * c + t) * d) as u32;
                    let coef = f.mul(x1, x2);
                    for &(j, z) in alg.mult_basis(a, bb) {
                        acc.add(base + j, f.mul(coef, z) as u64);
                    }
                }
            }
            kl.insert(&acc.take());
        }
    }
    Ok(c * k.dim() + b * l.dim() - rank_sum - kl.rank())
}

/// `dim Ext^i(M, N) = dim Tor_i(M, N^∨)`.
pub fn ext_dim(m: &FDModule, n: &FDModule, i: usize) -> Result<usize> {
    check_same(m, n)?;
    if i == 0 {
        return Ok(hom_module(m, n)?.module.dim());
    }
    tor_dim(m, &n.matlis_dual(), i)
}

/// The homothety `A → Hom(C, C)`, `r ↦ (c ↦ rc)`, and whether it is an
/// isomorphism.
pub fn homothety_map(c: &FDModule) -> Result<(ModuleMap, bool)> {
    let alg = c.algebra();
    let h = hom_module(c, c)?;
    let cols: Vec<SparseVec> = (0..alg.dim())
        .map(|j| {
            let coords = h.coords_of(c.action(j)).expect("multiplication is linear");
            crate::linalg::sparse_from_dense(&coords)
        })
        .collect();
    let mat = Matrix::from_sparse_columns(alg.field(), h.module.dim(), &cols);
    let map = ModuleMap::new(FDModule::regular(alg), h.module.clone(), mat)?;
    let iso = map.is_isomorphism();
    Ok((map, iso))
}

/// The biduality map `M → Hom(Hom(M, B), B)`, `m ↦ (φ ↦ φ(m))`.
pub fn biduality_map(m: &FDModule, b: &FDModule) -> Result<(ModuleMap, bool)> {
    check_same(m, b)?;
    let f = m.field();
    let h = hom_module(m, b)?;
    let hh = hom_module(&h.module, b)?;
    let nh = h.module.dim();
    let cols: Vec<SparseVec> = (0..m.dim())
        .map(|j| {
            let mut ev = Matrix::zeros(f, b.dim(), nh);
            for k in 0..nh {
                let phi = h.basis_map(k);
                for r in 0..b.dim() {
                    ev.set(r, k, phi.get(r, j));
                }
            }
            let coords = hh.coords_of(&ev).expect("evaluation is linear");
            crate::linalg::sparse_from_dense(&coords)
        })
        .collect();
    let mat = Matrix::from_sparse_columns(f, hh.module.dim(), &cols);
    let map = ModuleMap::new(m.clone(), hh.module.clone(), mat)?;
    let iso = map.is_isomorphism();
    Ok((map, iso))
}

/// Whether `c ⊗ φ ↦ φ(c)` induces `C ⊗ Hom(C, D) ≅ D`.
pub fn evaluation_iso_check(c: &FDModule, cdag: &Hom, d: &FDModule) -> Result<bool> {
    if cdag.source() != c || cdag.target() != d {
        return Err(Error::PreconditionViolated(
            "the second argument must be Hom(C, D)".into(),
        ));
    }
    let t = tensor_module(c, &cdag.module)?;
    if t.module.dim() != d.dim() {
        return Ok(false);
    }
    let cols: Vec<SparseVec> = t
        .basis_pairs()
        .into_iter()
        .map(|(i, k)| cdag.basis_map(k).sparse_column(i))
        .collect();
    Ok(rank_of(c.field(), d.dim(), &cols) == d.dim())
}

/// Helper for tests and reports: `dim_k` of the homology of
/// `N^a --g--> N^b --h--> N^c` at the middle, given column lists.
pub fn middle_homology_dim(
    f: PrimeField,
    mid_dim: usize,
    into_mid: &[SparseVec],
    out_of_mid: &[SparseVec],
    out_dim: usize,
) -> usize {
    let r_in = rank_of(f, mid_dim, into_mid);
    let r_out = rank_of(f, out_dim, out_of_mid);
    mid_dim - r_out - r_in
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    fn alg(vars: &[&str], rels: &[&str]) -> Arc<ArtinAlgebra> {
        Arc::new(ArtinAlgebra::from_monomial_quotient(fp(), vars, rels).unwrap())
    }

    fn e2() -> Arc<ArtinAlgebra> {
        alg(&["x"], &["x^2"])
    }

    fn e3() -> Arc<ArtinAlgebra> {
        alg(&["x", "y"], &["x^2", "x*y", "y^2"])
    }

    #[test]
    fn betti_examples() {
        let a = e3();
        assert_eq!(betti_numbers(&FDModule::regular(&a), 3), vec![1, 0, 0, 0]);
        assert_eq!(betti_numbers(&FDModule::residue_field(&a), 3), vec![1, 2, 4, 8]);
        let d = FDModule::regular(&a).matlis_dual();
        assert_eq!(betti_numbers(&d, 1)[0], 2);
        assert_eq!(betti_numbers(&FDModule::residue_field(&e2()), 6), vec![1; 7]);
    }

    #[test]
    fn resolutions_validate() {
        let a = e3();
        let r = minimal_free_resolution(&FDModule::residue_field(&a), 4);
        r.validate().unwrap();
        let r = minimal_free_resolution(&FDModule::regular(&a).matlis_dual(), 3);
        r.validate().unwrap();
    }

    #[test]
    fn ext_tor_degree_zero() {
        let a = e3();
        let k = FDModule::residue_field(&a);
        let d = FDModule::regular(&a).matlis_dual();
        assert_eq!(ext(&d, &k, 0).unwrap().dim(), hom_module(&d, &k).unwrap().module.dim());
        assert_eq!(tor(&d, &k, 0).unwrap().dim(), tensor_module(&d, &k).unwrap().module.dim());
        assert_eq!(tor(&k, &d, 0).unwrap().dim(), tor_dim(&k, &d, 0).unwrap());
    }

    #[test]
    fn ext_tor_over_e3() {
        let a = e3();
        let k = FDModule::residue_field(&a);
        assert_eq!(tor(&k, &k, 1).unwrap().dim(), 2);
        assert_eq!(ext(&k, &k, 1).unwrap().dim(), 2);
        assert_eq!(tor_dim(&k, &k, 1).unwrap(), 2);
        assert_eq!(ext_dim(&k, &k, 1).unwrap(), 2);
        let r = FDModule::regular(&a);
        for i in 1..4 {
            assert_eq!(tor(&r, &k, i).unwrap().dim(), 0);
            assert_eq!(tor_dim(&k, &r, i).unwrap(), 0);
            assert_eq!(tor_dim(&k, &k, i).unwrap(), 1 << i);
        }
    }

    #[test]
    fn fast_and_module_tor_agree() {
        let a = e3();
        let k = FDModule::residue_field(&a);
        let d = FDModule::regular(&a).matlis_dual();
        let x = FDModule::from_ideal(&crate::algebra::Ideal::span(&a, &[vec![(1, 1)]]));
        let mods = [k, d, x];
        for m in &mods {
            for n in &mods {
                for i in 1..4 {
                    assert_eq!(tor(m, n, i).unwrap().dim(), tor_dim(m, n, i).unwrap());
                    assert_eq!(ext(m, n, i).unwrap().dim(), ext_dim(m, n, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn bass_examples() {
        let a = e3();
        let d = FDModule::regular(&a).matlis_dual();
        assert_eq!(bass_numbers(&d, 3), vec![1, 0, 0, 0]);
        assert_eq!(bass_numbers(&FDModule::regular(&a), 0), vec![2]);
        assert_eq!(bass_numbers(&FDModule::regular(&e2()), 2), vec![1, 0, 0]);
        let k = FDModule::residue_field(&a);
        let r = FDModule::regular(&a);
        for i in 0..3 {
            assert_eq!(bass_numbers(&r, 2)[i], ext(&k, &r, i).unwrap().dim());
        }
    }

    #[test]
    fn homothety_examples() {
        let a = e3();
        assert!(homothety_map(&FDModule::regular(&a)).unwrap().1);
        assert!(!homothety_map(&FDModule::residue_field(&a)).unwrap().1);
        assert!(homothety_map(&FDModule::regular(&a).matlis_dual()).unwrap().1);
    }

    #[test]
    fn biduality_examples() {
        let a = e3();
        let r = FDModule::regular(&a);
        assert!(biduality_map(&r, &r).unwrap().1);
        let (map, iso) = biduality_map(&FDModule::residue_field(&a), &r).unwrap();
        assert!(!iso);
        assert_eq!(map.target().dim(), 4);
    }

    #[test]
    fn evaluation_examples() {
        let a = e3();
        let r = FDModule::regular(&a);
        let d = r.matlis_dual();
        let h = hom_module(&r, &d).unwrap();
        assert!(evaluation_iso_check(&r, &h, &d).unwrap());
        let h = hom_module(&d, &d).unwrap();
        assert!(evaluation_iso_check(&d, &h, &d).unwrap());
        assert!(evaluation_iso_check(&r, &h, &d).is_err());
    }
}
