mod common;

use std::ops::Range;
use std::sync::Arc;

use semidual_core::algebra::quotient_algebra;
use semidual_core::module::tensor_module;
use semidual_core::semidual::{classify, Classification};
use semidual_core::trivext::{build_q, trivial_extension, QConstruction};
use semidual_core::{AlgebraMap, ArtinAlgebra, FDModule, Ideal, Matrix};

fn construction() -> QConstruction {
    let (r, c) = common::flagship();
    build_q(&r, &c, 4).unwrap()
}

/// The algebra map `source → Q/I` sending basis element `k` of `source`
/// to the class of basis element `cols[k]` of `Q`.
fn onto_quotient(source: &Arc<ArtinAlgebra>, ideal: &Ideal, cols: &[usize]) -> AlgebraMap {
    let quot = quotient_algebra(ideal).unwrap();
    let f = source.field();
    let images: Vec<_> = cols.iter().map(|&k| quot.projection.sparse_column(k)).collect();
    let m = Matrix::from_sparse_columns(f, quot.algebra.dim(), &images);
    AlgebraMap::new(source.clone(), quot.algebra.clone(), m).unwrap()
}

fn indices(ranges: &[Range<usize>]) -> Vec<usize> {
    ranges.iter().flat_map(|r| r.clone()).collect()
}

#[test]
fn q_has_expected_shape() {
    let qc = construction();
    assert_eq!(qc.q.dim(), 36);
    assert!(qc.q.is_gorenstein());
    assert_eq!(qc.q.hilbert_function(), &[1, 8, 18, 8, 1]);
    assert_eq!(qc.c.dim(), 9);
    assert_eq!(qc.cdagger.module.dim(), 9);
    assert_eq!(classify(&qc.c, 4).unwrap().classification, Classification::Nontrivial);
    assert_eq!(
        classify(&qc.cdagger.module, 4).unwrap().classification,
        Classification::Nontrivial
    );
}

#[test]
fn ideal_dimensions() {
    let qc = construction();
    let (i1, i2) = (&qc.i1, &qc.i2);
    assert_eq!(i1.dim(), 18);
    assert_eq!(i2.dim(), 18);
    assert_eq!(i1.sum(i2).unwrap().dim(), 27);
    let inter = i1.intersection(i2).unwrap();
    let prod = i1.product(i2).unwrap();
    assert_eq!(inter.dim(), 9);
    assert!(inter.same_as(&prod).unwrap());
    assert!(prod.same_as(&qc.d_block_ideal().unwrap()).unwrap());
}

#[test]
fn quotients_recover_the_pieces() {
    let qc = construction();
    let [rb, cb, fb, _] = qc.blocks();

    let sum = qc.i1.sum(&qc.i2).unwrap();
    assert!(onto_quotient(&qc.r, &sum, &indices(std::slice::from_ref(&rb))).is_isomorphism());

    let r1 = &qc.r1.result;
    assert!(onto_quotient(r1, &qc.i1, &indices(&[rb.clone(), cb])).is_isomorphism());

    let r2 = trivial_extension(&qc.r, &qc.cdagger.module).unwrap().result;
    assert!(onto_quotient(&r2, &qc.i2, &indices(&[rb, fb])).is_isomorphism());
}

#[test]
fn tensor_of_the_two_extensions_over_r() {
    let qc = construction();
    let r2 = trivial_extension(&qc.r, &qc.cdagger.module).unwrap();
    let m1 = FDModule::regular(&qc.r1.result).restrict_scalars(&qc.r1.epsilon).unwrap();
    let m2 = FDModule::regular(&r2.result).restrict_scalars(&r2.epsilon).unwrap();
    let t = tensor_module(&m1, &m2).unwrap();
    assert_eq!(t.module.dim(), 36);
    let ct = tensor_module(&qc.c, &qc.cdagger.module).unwrap();
    assert_eq!(ct.module.dim(), qc.d.dim());
}

#[test]
fn monomial_and_product_presentations_agree() {
    let e9 = common::e9_monomial();
    let (r, c) = common::flagship();
    let cols: Vec<_> = e9
        .labels()
        .iter()
        .map(|l| vec![(r.index_of_label(l).unwrap_or_else(|| panic!("label {l}")) as u32, 1)])
        .collect();
    let m = Matrix::from_sparse_columns(e9.field(), r.dim(), &cols);
    let map = AlgebraMap::new(e9.clone(), r.clone(), m).unwrap();
    assert!(map.is_isomorphism());
    let c9 = c.restrict_scalars(&map).unwrap();
    assert_eq!(c9.dim(), 9);
    assert_eq!(classify(&c9, 4).unwrap().classification, Classification::Nontrivial);
}
