//! Property bodies shared by the property suite and the acceptance runner.
//! Each takes an algebra index and a seed and builds its own instance.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use semidual_core::linalg::sparse_axpy;
use semidual_core::module::{hom_module, is_isomorphic, tensor_module};
use semidual_core::resolution::{betti_numbers, ext, ext_dim, tor, tor_dim};
use semidual_core::tate::CompleteResolution;
use semidual_core::trivext::trivial_extension;
use semidual_core::{FDModule, Matrix};

use super::{gorenstein, random_element, random_module, rng, small, MAX_DIM};

pub const CASES: u32 = 100;
pub const HOMOLOGY_DEGREE: usize = 3;
pub const TATE_WINDOW: usize = 3;
/// Largest Ext group compared with the dual Tor group up to isomorphism
/// rather than by dimension alone.
pub const ISO_CHECK_DIM: usize = 16;

pub type PropFn = fn(usize, u64) -> Result<(), TestCaseError>;

pub const ALL: &[(&str, PropFn)] = &[
    ("tor symmetry", tor_symmetry),
    ("matlis double dual", matlis_double_dual),
    ("generators of a tensor product", tensor_generators),
    ("betti numbers are tor with k", betti_is_tor_with_residue_field),
    ("ext and tor exchanged by matlis duality", ext_tor_matlis_exchange),
    ("trivial extension axioms", trivial_extension_axioms),
    ("square of the module block", module_block_squares_to_zero),
    ("tate groups of free modules", tate_vanishes_on_free_modules),
    ("tate agrees with ordinary homology", tate_agrees_over_gorenstein),
];

pub fn instance() -> impl Strategy<Value = (usize, u64)> {
    (0usize..64, any::<u64>())
}

pub fn tor_symmetry(idx: usize, seed: u64) -> Result<(), TestCaseError> {
    let a = small(idx);
    let mut r = rng(seed);
    let (m, n) = (random_module(&a, &mut r), random_module(&a, &mut r));
    for i in 0..=HOMOLOGY_DEGREE {
        let mn = tor(&m, &n, i).unwrap().dim();
        let nm = tor(&n, &m, i).unwrap().dim();
        prop_assert_eq!(mn, nm, "degree {}", i);
        prop_assert_eq!(tor_dim(&m, &n, i).unwrap(), mn, "degree {}", i);
    }
    Ok(())
}

pub fn matlis_double_dual(idx: usize, seed: u64) -> Result<(), TestCaseError> {
    let a = small(idx);
    let mut r = rng(seed);
    let m = random_module(&a, &mut r);
    let dd = m.matlis_dual().matlis_dual();
    prop_assert_eq!(dd.dim(), m.dim());
    prop_assert!(is_isomorphic(&m, &dd, 64, seed).unwrap().is_yes());
    let d = m.matlis_dual();
    prop_assert_eq!(d.annihilator().dim(), m.annihilator().dim());
    prop_assert_eq!(d.socle().dim(), m.min_generators());
    Ok(())
}

pub fn tensor_generators(idx: usize, seed: u64) -> Result<(), TestCaseError> {
    let a = small(idx);
    let mut r = rng(seed);
    let (m, n) = (random_module(&a, &mut r), random_module(&a, &mut r));
    let t = tensor_module(&m, &n).unwrap();
    prop_assert_eq!(t.module.min_generators(), m.min_generators() * n.min_generators());
    Ok(())
}

pub fn betti_is_tor_with_residue_field(idx: usize, seed: u64) -> Result<(), TestCaseError> {
    let a = small(idx);
    let mut r = rng(seed);
    let m = random_module(&a, &mut r);
    let k = FDModule::residue_field(&a);
    let b = betti_numbers(&m, HOMOLOGY_DEGREE);
    for (i, &bi) in b.iter().enumerate() {
        prop_assert_eq!(tor(&m, &k, i).unwrap().dim(), bi, "degree {}", i);
        prop_assert_eq!(ext(&m, &k, i).unwrap().dim(), bi, "degree {}", i);
    }
    Ok(())
}

pub fn ext_tor_matlis_exchange(idx: usize, seed: u64) -> Result<(), TestCaseError> {
    let a = small(idx);
    let mut r = rng(seed);
    let (m, n) = (random_module(&a, &mut r), random_module(&a, &mut r));
    let nv = n.matlis_dual();
    for i in 0..=HOMOLOGY_DEGREE {
        let e = ext(&m, &nv, i).unwrap();
        let t = tor(&m, &n, i).unwrap();
        prop_assert_eq!(e.dim(), t.dim(), "degree {}", i);
        if e.dim() <= ISO_CHECK_DIM {
            prop_assert!(is_isomorphic(&e, &t.matlis_dual(), 64, seed).unwrap().is_yes(), "degree {}", i);
        }
        prop_assert_eq!(ext_dim(&m, &n, i).unwrap(), ext(&m, &n, i).unwrap().dim(), "degree {}", i);
    }
    prop_assert_eq!(
        hom_module(&m, &nv).unwrap().module.dim(),
        tensor_module(&m, &n).unwrap().module.dim()
    );
    Ok(())
}

pub fn trivial_extension_axioms(idx: usize, seed: u64) -> Result<(), TestCaseError> {
    let a = small(idx);
    let mut r = rng(seed);
    let m = random_module(&a, &mut r);
    let t = trivial_extension(&a, &m).unwrap();
    let q = &t.result;
    let f = a.field();
    let (da, dm) = (a.dim(), m.dim());
    prop_assert_eq!(q.dim(), da + dm);
    for _ in 0..8 {
        let (u, v, w) = (
            random_element(&mut r, q),
            random_element(&mut r, q),
            random_element(&mut r, q),
        );
        prop_assert_eq!(q.mul(&q.mul(&u, &v), &w), q.mul(&u, &q.mul(&v, &w)));
        prop_assert_eq!(q.mul(&u, &v), q.mul(&v, &u));
        prop_assert_eq!(q.mul(&q.unit(), &u), u.clone());

        // (a, m)(a', m') = (aa', a m' + a' m)
        let split = |x: &[(u32, u32)]| {
            let lo: Vec<(u32, u32)> = x.iter().copied().filter(|e| (e.0 as usize) < da).collect();
            let hi: Vec<(u32, u32)> = x
                .iter()
                .filter(|e| (e.0 as usize) >= da)
                .map(|&(i, c)| (i - da as u32, c))
                .collect();
            (lo, hi)
        };
        let act = |s: &[(u32, u32)], x: &[(u32, u32)]| {
            let mut out = Vec::new();
            for &(i, c) in s {
                out = sparse_axpy(&f, &out, c, &m.apply(i as usize, x));
            }
            out
        };
        let ((a1, m1), (a2, m2)) = (split(&u), split(&v));
        let mut expect = a.mul(&a1, &a2);
        let mixed = sparse_axpy(&f, &act(&a1, &m2), 1, &act(&a2, &m1));
        expect.extend(mixed.into_iter().map(|(i, c)| (i + da as u32, c)));
        prop_assert_eq!(q.mul(&u, &v), expect);
    }
    let tau_eps = t.epsilon.compose(&t.tau).unwrap();
    prop_assert_eq!(tau_eps.matrix(), &Matrix::identity(f, da));
    prop_assert_eq!(t.kernel_ideal.dim(), dm);
    Ok(())
}

pub fn module_block_squares_to_zero(idx: usize, seed: u64) -> Result<(), TestCaseError> {
    let a = small(idx);
    let mut r = rng(seed);
    let m = random_module(&a, &mut r);
    let t = trivial_extension(&a, &m).unwrap();
    prop_assert_eq!(t.kernel_ideal.product(&t.kernel_ideal).unwrap().dim(), 0);
    let da = a.dim() as u32;
    for _ in 0..8 {
        let x: Vec<(u32, u32)> = super::random_vector(&mut r, m.dim())
            .into_iter()
            .map(|(i, c)| (i + da, c))
            .collect();
        let y: Vec<(u32, u32)> = super::random_vector(&mut r, m.dim())
            .into_iter()
            .map(|(i, c)| (i + da, c))
            .collect();
        prop_assert!(t.result.mul(&x, &y).is_empty());
    }
    Ok(())
}

pub fn tate_vanishes_on_free_modules(idx: usize, seed: u64) -> Result<(), TestCaseError> {
    let a = small(idx);
    let mut r = rng(seed);
    let rank = if 2 * a.dim() <= MAX_DIM && seed % 2 == 1 { 2 } else { 1 };
    let free = FDModule::free(&a, rank);
    let x = random_module(&a, &mut r);
    let cr = CompleteResolution::new(&free, TATE_WINDOW).unwrap();
    let w = TATE_WINDOW as i64 - 1;
    for i in -w..=w {
        prop_assert_eq!(cr.tate_tor_dim(&x, i).unwrap(), 0, "Tor degree {}", i);
        prop_assert_eq!(cr.tate_ext_dim(&x, i).unwrap(), 0, "Ext degree {}", i);
    }
    Ok(())
}

pub fn tate_agrees_over_gorenstein(idx: usize, seed: u64) -> Result<(), TestCaseError> {
    let a = gorenstein(idx);
    let mut r = rng(seed);
    let (m, x) = (random_module(&a, &mut r), random_module(&a, &mut r));
    let cr = CompleteResolution::new(&m, TATE_WINDOW).unwrap();
    for i in 1..TATE_WINDOW {
        let t = cr.tate_tor_dim(&x, i as i64).unwrap();
        prop_assert_eq!(t, tor(&m, &x, i).unwrap().dim(), "Tor degree {}", i);
        let e = cr.tate_ext_dim(&x, i as i64).unwrap();
        prop_assert_eq!(e, ext(&m, &x, i).unwrap().dim(), "Ext degree {}", i);
    }
    Ok(())
}
