//! Worked small-instance examples, each checked against an independent oracle
//! from `common` or a frozen closed-form value.

mod common;

use common::*;
use qdistill_core::channels::{
    capacity_bounds_from_distillation, direct_sum_channel, maximally_entangled, werner_holevo,
    ChoiChannel,
};
use qdistill_core::distill::{
    classify, filter, filtered_hashing_rate, low_rank_bound, rank_regime, search_one_way_witness,
    RegimeVerdict,
};
use qdistill_core::kernels::{
    self, hermitian_eig, max_abs_diff, numerical_rank, pinv_sqrt, support_projector,
    DEFAULT_RANK_TOL, DEFAULT_SYMM_TOL,
};
use qdistill_core::sampling::{sample_pure, sample_state};
use qdistill_core::states::{
    coherent_information, complement, conditional_marginal, is_ppt, partial_trace,
    partial_transpose, purify, schmidt_rank, von_neumann_entropy,
};
use qdistill_core::{
    AnalysisOptions, Classification, ComplexMatrix, ComplexVector, DensityMatrix, Error, PureState,
    Side, Tolerances, TripartitePureState,
};

/// Binary entropy of 0.9 in bits, evaluated independently in double precision.
const H2_0_9: f64 = 0.468_995_593_589_281_1;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn diag(values: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&ComplexVector::from_iterator(
        values.len(),
        values.iter().map(|&x| c(x)),
    ))
}

fn skewed_pure() -> DensityMatrix {
    let v = ComplexVector::from_vec(vec![c(0.9f64.sqrt()), c(0.0), c(0.0), c(0.1f64.sqrt())]);
    PureState::new(vec![2, 2], v).unwrap().density()
}

fn separable_mixture() -> DensityMatrix {
    DensityMatrix::new(vec![2, 2], diag(&[0.5, 0.0, 0.0, 0.5])).unwrap()
}

#[test]
fn werner_holevo_choi_matches_antisymmetric_projector() {
    let expected = (kernels::identity(9) - swap(3)) / c(6.0);
    let j = werner_holevo();
    assert!(max_abs_diff(j.choi().matrix(), &expected) < 1e-15);
    let lib = hermitian_eig(j.choi().matrix(), DEFAULT_SYMM_TOL)
        .unwrap()
        .eigenvalues;
    let oracle = jacobi_eigenvalues(&expected);
    for (k, (x, y)) in lib.iter().zip(&oracle).enumerate() {
        let want = if k < 3 { 1.0 / 3.0 } else { 0.0 };
        assert!((x - want).abs() < 1e-12 && (y - want).abs() < 1e-12);
    }
    // antisymmetric subspace of C^3 ⊗ C^3 has dimension 3 * 2 / 2
    assert_eq!(
        numerical_rank(j.choi().matrix(), DEFAULT_RANK_TOL).unwrap(),
        3
    );
}

#[test]
fn pinv_sqrt_scalar_oracle() {
    let r = pinv_sqrt(&diag(&[0.9, 0.1]), DEFAULT_RANK_TOL).unwrap();
    assert!(max_abs_diff(&r, &diag(&[1.054_092_553_389_459_8, 3.162_277_660_168_379])) < 1e-12);
    let r = pinv_sqrt(&diag(&[4.0, 0.0]), DEFAULT_RANK_TOL).unwrap();
    assert!(max_abs_diff(&r, &diag(&[0.5, 0.0])) < 1e-15);
    let p = support_projector(&diag(&[0.5, 0.5, 0.0]), DEFAULT_RANK_TOL).unwrap();
    assert!(max_abs_diff(&p, &diag(&[1.0, 1.0, 0.0])) < 1e-15);
}

#[test]
fn ghz_partial_trace_matches_index_sum() {
    let ghz = PureState::new(vec![2, 2, 2], ghz_amplitudes())
        .unwrap()
        .density();
    let lib = partial_trace(&ghz, &[0, 1]).unwrap();
    let oracle = index_sum_partial_trace(ghz.matrix(), &[2, 2, 2], &[0, 1]);
    assert!(max_abs_diff(lib.matrix(), &oracle) < 1e-15);
    assert!(max_abs_diff(lib.matrix(), separable_mixture().matrix()) < 1e-15);
    let lib_ae = partial_trace(&ghz, &[0, 2]).unwrap();
    let oracle_ae = index_sum_partial_trace(ghz.matrix(), &[2, 2, 2], &[0, 2]);
    assert!(max_abs_diff(lib_ae.matrix(), &oracle_ae) < 1e-15);
}

#[test]
fn bell_partial_transpose_minimum_eigenvalue() {
    let rho = bell().density();
    let pt = partial_transpose(&rho, 1).unwrap();
    assert!(max_abs_diff(&pt, &entrywise_partial_transpose(rho.matrix(), 2, 2)) < 1e-15);
    let oracle_min = *jacobi_eigenvalues(&pt).last().unwrap();
    assert!((oracle_min + 0.5).abs() < 1e-12);
    let v = is_ppt(&rho, 1e-9).unwrap();
    assert!(!v.ppt);
    assert!((v.min_eigenvalue - oracle_min).abs() < 1e-12);
}

#[test]
fn ghz_reduction_is_ppt_by_oracle() {
    let rho = separable_mixture();
    let pt = entrywise_partial_transpose(rho.matrix(), 2, 2);
    let oracle_min = *jacobi_eigenvalues(&pt).last().unwrap();
    assert!(oracle_min >= -1e-12);
    assert!(is_ppt(&rho, 1e-9).unwrap().ppt);
}

#[test]
fn werner_holevo_is_npt_with_zero_coherent_information() {
    let j = werner_holevo();
    assert!(!is_ppt(j.choi(), 1e-9).unwrap().ppt);
    // both entropies equal log2(3): the Choi is flat on a rank-3 support and
    // its marginal is I/3
    assert!((von_neumann_entropy(j.choi()).unwrap() - 3f64.log2()).abs() < 1e-12);
    assert!(coherent_information(j.choi()).unwrap().abs() < 1e-12);
}

#[test]
fn binary_entropy_value() {
    let rho = DensityMatrix::new(vec![2], diag(&[0.9, 0.1])).unwrap();
    assert!((von_neumann_entropy(&rho).unwrap() - H2_0_9).abs() < 1e-14);
}

#[test]
fn purification_of_separable_mixture_is_ghz_like() {
    // GHZ up to a unitary on E: AB|E Schmidt coefficients (1/2, 1/2) and the
    // AB reduction is reproduced
    let rho = separable_mixture();
    let psi = purify(&rho, DEFAULT_RANK_TOL).unwrap();
    assert_eq!(psi.dims(), [2, 2, 2]);
    let ab = index_sum_partial_trace(psi.density().matrix(), &[2, 2, 2], &[0, 1]);
    assert!(max_abs_diff(&ab, rho.matrix()) < 1e-12);
    let e = index_sum_partial_trace(psi.density().matrix(), &[2, 2, 2], &[2]);
    let ev = jacobi_eigenvalues(&e);
    assert!((ev[0] - 0.5).abs() < 1e-12 && (ev[1] - 0.5).abs() < 1e-12);
}

#[test]
fn purification_of_maximally_mixed_two_qubits() {
    let rho = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
    let psi = purify(&rho, DEFAULT_RANK_TOL).unwrap();
    assert_eq!(psi.dims()[2], 4);
    assert_eq!(oracle_rank(psi.rho_ae().matrix(), DEFAULT_RANK_TOL), 2);
}

#[test]
fn ghz_reduction_is_self_complementary() {
    let rho = separable_mixture();
    let comp = complement(&rho, DEFAULT_RANK_TOL).unwrap();
    let a = jacobi_eigenvalues(comp.matrix());
    let b = jacobi_eigenvalues(rho.matrix());
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-12);
    }
    let comp_a = index_sum_partial_trace(comp.matrix(), &[2, 2], &[0]);
    assert!(max_abs_diff(&comp_a, &(kernels::identity(2) / c(2.0))) < 1e-12);
    let pt = entrywise_partial_transpose(comp.matrix(), 2, 2);
    assert!(*jacobi_eigenvalues(&pt).last().unwrap() >= -1e-12);
}

#[test]
fn conditional_marginals_of_small_states() {
    let rho = bell().density();
    let e0 = ComplexVector::from_vec(vec![c(1.0), c(0.0)]);
    let m = conditional_marginal(&rho, &e0).unwrap();
    assert!(max_abs_diff(&m, &diag(&[0.5, 0.0])) < 1e-15);
    let half = ComplexVector::from_vec(vec![c(0.5), c(0.5)]);
    assert!(matches!(
        conditional_marginal(&rho, &half),
        Err(Error::NotNormalized { .. })
    ));
}

#[test]
fn haar_sample_ranks_match_generic_values() {
    let rho = sample_state(2, 4, 3, 11).unwrap();
    assert_eq!(oracle_rank(rho.matrix(), DEFAULT_RANK_TOL), 3);
    assert_eq!(rho.rank(DEFAULT_RANK_TOL).unwrap(), 3);
    let rho_b = partial_trace(&rho, &[1]).unwrap();
    assert_eq!(oracle_rank(rho_b.matrix(), DEFAULT_RANK_TOL), 4);
    let e0 = ComplexVector::from_vec(vec![c(1.0), c(0.0)]);
    let m = conditional_marginal(&rho, &e0).unwrap();
    assert_eq!(oracle_rank(&m, DEFAULT_RANK_TOL), 3);

    let full = sample_state(2, 2, 8, 5).unwrap();
    assert_eq!(oracle_rank(full.matrix(), DEFAULT_RANK_TOL), 4);
    assert_eq!(full.rank(DEFAULT_RANK_TOL).unwrap(), 4);
}

#[test]
fn random_vector_schmidt_rank_matches_svd() {
    for seed in 0..20 {
        let v = random_unit_vector(12, seed);
        let lib = schmidt_rank(
            &PureState::new(vec![4, 3], v.clone()).unwrap(),
            DEFAULT_RANK_TOL,
        )
        .unwrap();
        assert_eq!(lib, svd_schmidt_rank(&v, 4, 3, DEFAULT_RANK_TOL));
        assert_eq!(lib, 3);
    }
}

#[test]
fn maximally_entangled_marginals() {
    for d in 1..=4 {
        let rho = maximally_entangled(d).unwrap().density();
        let oracle = index_sum_partial_trace(rho.matrix(), &[d, d], &[0]);
        let flat = kernels::identity(d) / c(d as f64);
        assert!(max_abs_diff(&oracle, &flat) < 1e-15);
        assert!(max_abs_diff(partial_trace(&rho, &[1]).unwrap().matrix(), &flat) < 1e-15);
    }
}

#[test]
fn werner_holevo_complement_has_equal_spectrum() {
    let wh = werner_holevo();
    let comp = wh.complement(DEFAULT_RANK_TOL).unwrap();
    assert_eq!((comp.d_in(), comp.d_out()), (3, 3));
    let a = jacobi_eigenvalues(wh.choi().matrix());
    let b = jacobi_eigenvalues(comp.choi().matrix());
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-10);
    }
    assert!(!is_ppt(comp.choi(), 1e-9).unwrap().ppt);
}

#[test]
fn direct_sum_channel_ranks() {
    for (d, want) in [(2usize, 5usize), (3, 10)] {
        let ch = direct_sum_channel(d, 0.5).unwrap();
        assert_eq!(ch.d_out(), 2 * d);
        assert_eq!(oracle_rank(ch.choi().matrix(), DEFAULT_RANK_TOL), want);
        let comp = ch.complement(DEFAULT_RANK_TOL).unwrap();
        let j_ae = comp.choi();
        let j_e = partial_trace(j_ae, &[1]).unwrap();
        assert!(oracle_rank(j_ae.matrix(), DEFAULT_RANK_TOL) <= 2 * d);
        assert_eq!(oracle_rank(j_e.matrix(), DEFAULT_RANK_TOL), want);
    }
    assert!(matches!(
        direct_sum_channel(2, 1.0),
        Err(Error::BadParameter(_))
    ));
    assert!(matches!(
        direct_sum_channel(1, 0.5),
        Err(Error::BadParameter(_))
    ));
}

#[test]
fn direct_sum_complement_has_positive_bound_but_no_witness() {
    let comp = direct_sum_channel(2, 0.5)
        .unwrap()
        .complement(DEFAULT_RANK_TOL)
        .unwrap();
    let bound = low_rank_bound(comp.choi(), Side::B, &tol()).unwrap();
    assert!(bound > 0.0);
    let cap = capacity_bounds_from_distillation(2, bound).unwrap();
    assert!(cap.q_lower >= bound);
    let res = search_one_way_witness(comp.choi(), 200, 0, &tol()).unwrap();
    assert!(!res.is_found());
}

#[test]
fn identity_channel_capacity_bounds() {
    let b = capacity_bounds_from_distillation(2, 1.0).unwrap();
    assert_eq!(b.q_lower, 1.0);
    let z = capacity_bounds_from_distillation(3, 0.0).unwrap();
    assert_eq!((z.q_lower, z.q_upper_if_exact), (0.0, 0.0));
    let id = ChoiChannel::identity(2).unwrap();
    let wrapped = ChoiChannel::from_choi(bell().density(), 2, 2).unwrap();
    assert!(max_abs_diff(wrapped.choi().matrix(), id.choi().matrix()) < 1e-15);
}

#[test]
fn skewed_pure_state_filter_oracle() {
    // sqrt(0.9)|00> + sqrt(0.1)|11>: rho_B = diag(0.9, 0.1), lambda_min = 0.1,
    // Y_B = sqrt(0.1) diag(0.9^-1/2, 0.1^-1/2), p_succ = 2 * 0.1
    let rho = skewed_pure();
    let out = filter(&rho, Side::B, &tol()).unwrap();
    assert!((out.p_succ - 0.2).abs() < 1e-12);
    assert!(max_abs_diff(out.filtered_state.matrix(), bell().density().matrix()) < 1e-12);
    let y = diag(&[(0.1f64 / 0.9).sqrt(), 1.0]);
    assert!(max_abs_diff(&out.filter_operator, &y) < 1e-12);
    assert!((low_rank_bound(&rho, Side::B, &tol()).unwrap() - 0.2).abs() < 1e-12);
    assert!((filtered_hashing_rate(&rho, Side::B, &tol()).unwrap() - 0.2).abs() < 1e-12);
}

#[test]
fn flat_marginal_filter_is_trivial() {
    let rho = bell().density();
    let out = filter(&rho, Side::B, &tol()).unwrap();
    assert!((out.p_succ - 1.0).abs() < 1e-12);
    assert!(max_abs_diff(&out.filter_operator, &kernels::identity(2)) < 1e-12);
    assert!(max_abs_diff(out.filtered_state.matrix(), rho.matrix()) < 1e-12);
    assert!((low_rank_bound(&rho, Side::B, &tol()).unwrap() - 1.0).abs() < 1e-12);
    assert!((filtered_hashing_rate(&rho, Side::B, &tol()).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn full_rank_state_has_no_bound() {
    let rho = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
    assert_eq!(
        low_rank_bound(&rho, Side::B, &tol()),
        Err(Error::PreconditionRankNotLow {
            rank: 4,
            marginal_rank: 2
        })
    );
    assert!(search_one_way_witness(&rho, 5, 0, &tol()).is_err());
}

#[test]
fn pure_state_witness_is_first_basis_vector() {
    let res = search_one_way_witness(&bell().density(), 50, 0, &tol()).unwrap();
    assert_eq!(res.trials_used(), 1);
}

#[test]
fn haar_sample_has_witness() {
    let rho = sample_state(2, 4, 3, 1).unwrap();
    assert!(search_one_way_witness(&rho, 50, 1, &tol())
        .unwrap()
        .is_found());
}

#[test]
fn classifier_examples() {
    let opts = AnalysisOptions::default();
    let ghz = TripartitePureState::new([2, 2, 2], ghz_amplitudes()).unwrap();
    let rep = classify(&ghz, &opts).unwrap();
    assert_eq!(
        rep.classification,
        Classification::FullyUndistillableSeparable
    );
    for rho in [ghz.rho_ab(), ghz.rho_ae()] {
        let pt = entrywise_partial_transpose(rho.matrix(), 2, 2);
        assert!(*jacobi_eigenvalues(&pt).last().unwrap() >= -1e-12);
    }

    let bell_e =
        TripartitePureState::from_pure(bell().tensor(&PureState::basis(vec![1], 0).unwrap()))
            .unwrap();
    let rep = classify(&bell_e, &opts).unwrap();
    assert_eq!(
        rep.classification,
        Classification::SomeReduction2WayDistillable
    );
    assert_eq!(rep.npt_reductions, vec!["AB".to_string()]);
    assert!((rep.low_rank_bound_b.unwrap() - 1.0).abs() < 1e-12);

    let wh = purify(werner_holevo().choi(), DEFAULT_RANK_TOL).unwrap();
    let rep = classify(&wh, &opts).unwrap();
    assert_eq!(
        rep.classification,
        Classification::SomeReduction2WayDistillable
    );
    assert!(!rep.ppt_ab.ppt && !rep.ppt_ae.ppt);
    let a = jacobi_eigenvalues(wh.rho_ab().matrix());
    let b = jacobi_eigenvalues(wh.rho_ae().matrix());
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn rank_regime_examples() {
    let sep = rank_regime(&separable_mixture(), &tol()).unwrap();
    assert_eq!(sep.verdict, RegimeVerdict::Separable);
    let ent = rank_regime(&bell().density(), &tol()).unwrap();
    assert_eq!(ent.verdict, RegimeVerdict::EntangledTwoWayDistillable);
    let mixed = rank_regime(&DensityMatrix::maximally_mixed(vec![2, 2]).unwrap(), &tol()).unwrap();
    assert_eq!(mixed.verdict, RegimeVerdict::PptUndecided);
    assert!(!mixed.low_rank_regime);
}

#[test]
fn sampled_pure_states_are_unit_vectors() {
    let psi = sample_pure(1, 1, 1, 0).unwrap();
    assert!((psi.amplitudes()[0].norm() - 1.0).abs() < 1e-15);
    for seed in 0..10 {
        let psi = sample_pure(2, 3, 2, seed).unwrap();
        assert!((psi.amplitudes().norm() - 1.0).abs() < 1e-12);
    }
}
