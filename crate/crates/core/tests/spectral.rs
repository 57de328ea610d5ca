mod common;

use gapforge::hamc::{AlgebraicScalar, ExactMatrix, LocalTermSet};
use gapforge::machine::Mode;
use gapforge::spectral::{
    assemble_1d, classify, gap_scan, low_spectrum, models, Boundary, ClassifierConfig, GapReport, Geometry,
    ScanOptions, SizeResult, VerdictKind,
};

fn report_from(mode: Mode, sizes: Vec<SizeResult>) -> GapReport {
    GapReport {
        terms_hash: String::new(),
        mode,
        options: ScanOptions::default(),
        sizes,
    }
}

#[test]
fn hopping_chain_reads_as_gapless() {
    // even lengths keep the ground state unique; spectra from the closed form
    let sizes = (4..=20)
        .step_by(2)
        .map(|len| {
            let v = common::hopping_closed_form(len, 64);
            SizeResult::from_values(len, Geometry::Chain { len }, 1 << len, v, 1e-9)
        })
        .collect();
    let v = classify(&report_from(Mode::OneD, sizes), &ClassifierConfig::default()).unwrap();
    assert_eq!(v.kind, VerdictKind::GaplessEvidence, "{:?}", v.rationale);
    let fit = v.clauses.fit.unwrap();
    // gap ~ π/(2(L+1)): the finite-L slope sits a little under one
    assert!((0.8..1.05).contains(&fit.alpha), "got α = {}", fit.alpha);
}

#[test]
fn hopping_chain_matches_brute_force() {
    let t = models::hopping_chain_terms();
    for len in 2..=7 {
        let h = assemble_1d(&t, len, Boundary::Open).unwrap();
        let got = low_spectrum(&h, 1 << len, 1e-11).unwrap();
        let want = common::sorted_eigenvalues(common::brute_force_chain(&t, len));
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() < 1e-9, "len {len}: {a} vs {b}");
        }
    }
}

#[test]
fn unequal_neighbours_on_the_lattice() {
    // two uniform ground states; one flipped corner breaks two bonds
    let t = models::unequal_neighbour_terms(2);
    let report = gap_scan(&t, &[2, 3], &ScanOptions::default()).unwrap();
    for s in &report.sizes {
        let ex = s.exact.as_ref().unwrap();
        assert_eq!(ex.lambda0, AlgebraicScalar::ZERO);
        assert_eq!(ex.multiplicity, 2);
        assert_eq!(s.gap_above_ground, Some(2.0), "size {}", s.size);
    }
}

#[test]
fn degenerate_ground_is_never_gapped() {
    // no interaction, a doubly degenerate single-site ground level
    let t = LocalTermSet::custom_1d(
        ExactMatrix::from_entries(3, [(2, 2, AlgebraicScalar::ONE)]),
        ExactMatrix::zeros(9),
    );
    let report = gap_scan(&t, &[3, 4, 5, 6], &ScanOptions::default()).unwrap();
    for s in &report.sizes {
        assert_eq!(s.multiplicity, Some(1 << s.size));
    }
    let v = classify(&report, &ClassifierConfig::default()).unwrap();
    assert_eq!(v.kind, VerdictKind::Inconclusive, "{:?}", v.rationale);
}

#[test]
fn too_few_sizes_is_reported() {
    let t = compile_loop2();
    let report = gap_scan(&t, &[2, 3], &ScanOptions::default()).unwrap();
    assert!(classify(&report, &ClassifierConfig::default()).is_err());
}

fn compile_loop2() -> LocalTermSet {
    let m = gapforge::machine::builtin::by_name("loop2").unwrap();
    gapforge::hamc::compile(&m, "", Mode::OneD).unwrap()
}
