#![allow(dead_code)]

pub mod oracle;
pub mod props;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semidual_core::linalg::{SparseVec, Subspace};
use semidual_core::{ArtinAlgebra, FDModule, PrimeField};

pub const MAX_DIM: usize = 8;

/// Monomial presentations of small local algebras, all of dimension at most 8.
pub const SMALL: &[(&[&str], &[&str])] = &[
    (&["x"], &["x^2"]),
    (&["x"], &["x^3"]),
    (&["x"], &["x^4"]),
    (&["x", "y"], &["x^2", "x*y", "y^2"]),
    (&["x", "y"], &["x^2", "y^2"]),
    (&["x", "y"], &["x^2", "x*y", "y^3"]),
    (&["x", "y"], &["x^3", "x*y", "y^2"]),
    (&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"]),
    (&["x", "y", "z"], &["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"]),
    (&["x", "y", "z"], &["x^2", "y^2", "z^2"]),
];

/// Complete intersections of pure powers, hence Gorenstein.
pub const GORENSTEIN: &[(&[&str], &[&str])] = &[
    (&["x"], &["x^2"]),
    (&["x"], &["x^3"]),
    (&["x"], &["x^5"]),
    (&["x", "y"], &["x^2", "y^2"]),
    (&["x", "y"], &["x^2", "y^3"]),
    (&["x", "y"], &["x^2", "y^4"]),
    (&["x", "y", "z"], &["x^2", "y^2", "z^2"]),
];

pub fn fp() -> PrimeField {
    PrimeField::default()
}

pub fn monomial(vars: &[&str], rels: &[&str]) -> Arc<ArtinAlgebra> {
    Arc::new(ArtinAlgebra::from_monomial_quotient(fp(), vars, rels).unwrap())
}

pub fn small(i: usize) -> Arc<ArtinAlgebra> {
    let (v, r) = SMALL[i % SMALL.len()];
    monomial(v, r)
}

pub fn gorenstein(i: usize) -> Arc<ArtinAlgebra> {
    let (v, r) = GORENSTEIN[i % GORENSTEIN.len()];
    monomial(v, r)
}

pub fn e2() -> Arc<ArtinAlgebra> {
    monomial(&["x"], &["x^2"])
}

pub fn e3() -> Arc<ArtinAlgebra> {
    monomial(&["x", "y"], &["x^2", "x*y", "y^2"])
}

pub fn e3_st() -> Arc<ArtinAlgebra> {
    monomial(&["s", "t"], &["s^2", "s*t", "t^2"])
}

pub fn e9_monomial() -> Arc<ArtinAlgebra> {
    monomial(
        &["x", "y", "s", "t"],
        &["x^2", "x*y", "y^2", "s^2", "s*t", "t^2"],
    )
}

/// `R = E3 ⊗ E3` and `C = D_A ⊗ B`.
pub fn flagship() -> (Arc<ArtinAlgebra>, FDModule) {
    let (a, b) = (e3(), e3_st());
    let r = Arc::new(ArtinAlgebra::external_tensor(&a, &b).unwrap());
    let c = FDModule::regular(&a)
        .matlis_dual()
        .outer(&FDModule::regular(&b), &r)
        .unwrap();
    (r, c)
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> SparseVec {
    let p = fp().p();
    let mut v = Vec::new();
    for i in 0..n as u32 {
        if rng.gen_bool(0.5) {
            v.push((i, rng.gen_range(1..p)));
        }
    }
    v
}

/// A quotient of `A` or `A^2` by relations in the maximal ideal, sometimes
/// replaced by its Matlis dual, of dimension at most [`MAX_DIM`].
pub fn random_module(a: &Arc<ArtinAlgebra>, rng: &mut ChaCha8Rng) -> FDModule {
    let max_rank = (MAX_DIM / a.dim()).clamp(1, 2);
    let r = rng.gen_range(1..=max_rank);
    let free = FDModule::free(a, r);
    let n = free.dim();
    let d = a.dim() as u32;
    let gens: Vec<SparseVec> = (0..rng.gen_range(0..=2))
        .map(|_| {
            let mut v = random_vector(rng, n);
            v.retain(|e| e.0 % d != 0);
            v
        })
        .collect();
    let (_, sub) = free.generated_submodule(&gens);
    let (m, _) = free.quotient(&Subspace::span(fp(), n, sub.basis()));
    if rng.gen_bool(0.3) {
        m.matlis_dual()
    } else {
        m
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_element(rng: &mut ChaCha8Rng, a: &ArtinAlgebra) -> SparseVec {
    random_vector(rng, a.dim())
}
