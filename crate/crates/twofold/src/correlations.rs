//! Frame correlations: how bases, state components, operator entries,
//! measurements, and conjugations respond when a block-diagonal dynamical
//! element re-frames the two sector bases, and which quantities stay fixed.
//!
//! The abstract state and the abstract operators never change under a frame
//! transformation; only their components and entry arrays do. Measurement
//! reduction is the deliberate exception: reducing in the primed frame
//! generally lands on a different state than reducing in the original one.

use crate::cartan::{sector_metric, Sector};
use crate::density::{density_from_piece, CompositeState};
use crate::error::{Error, Result};
use crate::group::DynElement;
use crate::measurement::{measurement_pair, measurement_pairing, reduce_state};
use crate::numerics::{c, cr, eig_hermitian, C64, CMat2, CVec2, DEFAULT_TOL};
use crate::observables::{
    expectation, make_charge, make_charge_conjugation, make_energy, make_spin,
    ChargeConjugation, EnergyBranch, Observable,
};
use crate::states::{make_pair_state, PairState};

/// How operator entries respond to the frame change. `OperatorInvariant`
/// keeps the abstract operator fixed and re-expresses its entries in the
/// primed basis; `MatrixInvariant` keeps the entry array fixed, which names
/// a different abstract operator; `Both` demands the two readings agree,
/// which happens exactly when the element commutes with the operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformMode {
    OperatorInvariant,
    MatrixInvariant,
    Both,
}

/// A frame change driven by a block-diagonal dynamical element, together
/// with the mode that fixes how operator entries are carried along.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameTransform {
    pub element: DynElement,
    pub mode: TransformMode,
}

impl FrameTransform {
    pub fn new(element: DynElement, mode: TransformMode) -> Self {
        Self { element, mode }
    }
}

/// Primed-basis data: the rows of each block are the primed basis vectors.
/// For unitary blocks the indefinite Gram matrix and the definite kernel
/// are unchanged, so the residuals vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisReport {
    pub primed_basis: [CMat2; 2],
    pub gram_residual: f64,
    pub kernel_residual: f64,
}

/// Measures how the primed basis reproduces the sector Gram matrices and
/// the definite pairing kernel.
pub fn transform_basis(ft: &FrameTransform) -> BasisReport {
    let mut gram = 0.0f64;
    let mut kernel = 0.0f64;
    for s in [Sector::Plus, Sector::Minus] {
        let u = *ft.element.block(s);
        let g = sector_metric(s);
        gram = gram.max((u * g * u.dagger()).max_abs_diff(&g));
        kernel = kernel.max((u * u.dagger()).max_abs_diff(&CMat2::identity()));
    }
    BasisReport {
        primed_basis: [*ft.element.block(Sector::Plus), *ft.element.block(Sector::Minus)],
        gram_residual: gram,
        kernel_residual: kernel,
    }
}

/// The abstract state is untouched by a frame change; this returns it
/// unchanged so callers can keep transformation pipelines uniform. Only
/// the components relative to the primed basis move; see
/// [`primed_components`].
pub fn transform_state(st: &PairState, _ft: &FrameTransform) -> PairState {
    *st
}

/// Components of the state relative to the primed basis of one sector.
pub fn primed_components(st: &PairState, ft: &FrameTransform, sector: Sector) -> CVec2 {
    *st.sector(sector).components() * ft.element.block(sector).dagger()
}

/// Squared moduli of the primed components. These generally differ from
/// the original weights: outcome statistics are tied to a basis choice.
pub fn primed_probabilities(st: &PairState, ft: &FrameTransform, sector: Sector) -> [f64; 2] {
    let phi = primed_components(st, ft, sector);
    [phi[0].norm_sqr(), phi[1].norm_sqr()]
}

/// Amplitude tensor of a composite state relative to the primed bases:
/// every slot index is contracted with the conjugate transpose of its
/// sector's block.
pub fn transform_amplitude_tensor(cs: &CompositeState, ft: &FrameTransform) -> Vec<C64> {
    let n = cs.len();
    let mut amp = cs.amplitude().to_vec();
    for (k, factor) in cs.factors().iter().enumerate() {
        let u_dag = ft.element.block(factor.sector()).dagger();
        let stride = 1usize << (n - 1 - k);
        let mut next = amp.clone();
        let mut base = 0usize;
        while base < amp.len() {
            if base & stride == 0 {
                let a0 = amp[base];
                let a1 = amp[base | stride];
                next[base] = a0 * u_dag.get(0, 0) + a1 * u_dag.get(1, 0);
                next[base | stride] = a0 * u_dag.get(0, 1) + a1 * u_dag.get(1, 1);
            }
            base += 1;
        }
        amp = next;
    }
    amp
}

/// An observable carried through a frame change, with the resulting
/// per-sector covariant entry arrays.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedObservable {
    pub observable: Observable,
    pub covariant: [CMat2; 2],
}

/// Carries an observable through the frame change according to the
/// transform mode. In `Both` mode the element must commute with the
/// observable on each sector, otherwise the two readings disagree.
pub fn transform_observable(a: &Observable, ft: &FrameTransform) -> Result<TransformedObservable> {
    let primed = |s: Sector| {
        let u = ft.element.block(s);
        match ft.mode {
            TransformMode::OperatorInvariant => *u * *a.intrinsic(s) * u.dagger(),
            TransformMode::MatrixInvariant => u.dagger() * *a.intrinsic(s) * *u,
            TransformMode::Both => *a.intrinsic(s),
        }
    };
    if ft.mode == TransformMode::Both {
        let mut residual = 0.0f64;
        for s in [Sector::Plus, Sector::Minus] {
            let u = ft.element.block(s);
            let m = a.intrinsic(s);
            residual = residual.max((*u * *m - *m * *u).max_abs());
        }
        if residual > DEFAULT_TOL {
            return Err(Error::ModeConflict { residual });
        }
    }
    let observable = Observable::from_intrinsic(
        primed(Sector::Plus),
        primed(Sector::Minus),
        a.kind(),
        format!("{}-primed", a.label()),
    )?;
    let covariant = [observable.covariant(Sector::Plus), observable.covariant(Sector::Minus)];
    Ok(TransformedObservable { observable, covariant })
}

/// Finds the frame block that renders a covariant entry array diagonal.
///
/// Returns the block together with the diagonal covariant array it
/// produces. The intrinsic matrix must be Hermitian for the construction
/// to exist; eigenvalues are arranged in descending order, so the sector
/// arrangement of the entries may be permuted while the value set and the
/// determinant are preserved.
pub fn diagonalize_primed(covariant: &CMat2, sector: Sector) -> Result<(CMat2, CMat2)> {
    let g = sector_metric(sector);
    let intrinsic = *covariant * g;
    let residual = intrinsic.hermiticity_residual();
    if residual > DEFAULT_TOL {
        return Err(Error::NotDiagonalizable { residual });
    }
    let eig = eig_hermitian(&intrinsic)?;
    let frame = eig.vectors.dagger();
    let diag_cov = CMat2::diag_re(eig.values) * g;
    Ok((frame, diag_cov))
}

/// Residuals of the identities a conjugation keeps under a frame change:
/// the primed coefficient blocks rebuild the original covariant entries,
/// stay mutually inverse, and keep the star conjugate equal to the negated
/// reverse block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugationFrameReport {
    pub primed_entry_residual: f64,
    pub mutual_inverse_residual: f64,
    pub star_inverse_residual: f64,
}

impl ConjugationFrameReport {
    pub fn max_residual(&self) -> f64 {
        self.primed_entry_residual
            .max(self.mutual_inverse_residual)
            .max(self.star_inverse_residual)
    }

    pub fn all_pass(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

/// Carries a conjugation through the frame change. Each block picks up the
/// conjugate transpose of its source-sector frame block on the left and the
/// target-sector block on the right; reconstructing covariant entries from
/// the primed blocks recovers the original ones for any unitary frame.
pub fn transform_conjugation(
    conj: &ChargeConjugation,
    ft: &FrameTransform,
) -> (ChargeConjugation, ConjugationFrameReport) {
    let primed_block = |s: Sector| {
        ft.element.block(s).dagger() * *conj.block(s) * *ft.element.block(s.other())
    };
    let primed = ChargeConjugation::from_blocks(
        primed_block(Sector::Plus),
        primed_block(Sector::Minus),
    );

    let mut entry = 0.0f64;
    let mut mutual = 0.0f64;
    let mut star = 0.0f64;
    for s in [Sector::Plus, Sector::Minus] {
        let u_from = ft.element.block(s);
        let u_to = ft.element.block(s.other());
        let rebuilt =
            *u_from * *primed.block(s) * sector_metric(s.other()) * u_to.dagger();
        entry = entry.max(rebuilt.max_abs_diff(&conj.covariant_block(s)));
        mutual = mutual
            .max((*primed.block(s) * *primed.block(s.other())).max_abs_diff(&CMat2::identity()));
        star = star.max(primed.star_block(s).max_abs_diff(&-*primed.block(s.other())));
    }
    let report = ConjugationFrameReport {
        primed_entry_residual: entry,
        mutual_inverse_residual: mutual,
        star_inverse_residual: star,
    };
    (primed, report)
}

/// Residuals of every frame-correlation law, measured on a fixed probe
/// state. All fields except `reduction_deviation` are invariance residuals
/// that vanish for unitary frame blocks; `reduction_deviation` measures how
/// far primed-frame measurement reduction lands from original-frame
/// reduction, which is genuinely frame dependent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceReport {
    /// Primed-basis Gram matrices versus the sector metrics.
    pub gram: f64,
    /// Primed-basis definite kernel versus the identity.
    pub kernel: f64,
    /// Resolution of the identity by the primed dyads.
    pub projector: f64,
    /// Intrinsic (equivalently metric-contracted) operator traces.
    pub trace: f64,
    /// Commutator of transformed observables versus transformed commutator.
    pub commutator_fixed: f64,
    /// Same law for the conjugation-sandwiched observables.
    pub commutator_conjugated: f64,
    /// Measurement pairing entries computed in either frame.
    pub measurement_entries: f64,
    /// Recovery of the diagonal energy entries and spectrum after the
    /// transform, up to descending arrangement.
    pub energy_diagonal: f64,
    /// Expectation values routed through primed components and entries.
    pub expectation_transport: f64,
    /// Density spectra before and after the frame change.
    pub density_spectrum: f64,
    /// Covariant conjugation entries rebuilt from the primed blocks.
    pub conjugation_entries: f64,
    /// Degenerate (scalar-block) observables must be left entirely fixed.
    pub degenerate_invariance: f64,
    /// Movement indicator, excluded from `max_residual`: distance between
    /// reduction performed in the primed frame (mapped back) and reduction
    /// performed in the original frame.
    pub reduction_deviation: f64,
}

impl InvarianceReport {
    /// Largest invariance residual; ignores `reduction_deviation`, which is
    /// expected to be nonzero for genuine rotations.
    pub fn max_residual(&self) -> f64 {
        self.gram
            .max(self.kernel)
            .max(self.projector)
            .max(self.trace)
            .max(self.commutator_fixed)
            .max(self.commutator_conjugated)
            .max(self.measurement_entries)
            .max(self.energy_diagonal)
            .max(self.expectation_transport)
            .max(self.density_spectrum)
            .max(self.conjugation_entries)
            .max(self.degenerate_invariance)
    }

    pub fn all_pass(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

fn probe_state() -> PairState {
    let plus = CVec2::new([cr(0.6), c(0.0, 0.8)]).expect("finite probe entries");
    let minus = CVec2::new([c(0.48, 0.36), c(0.64, -0.48)]).expect("finite probe entries");
    make_pair_state(plus, minus).expect("unit probe pieces")
}

/// Measures every frame-correlation law against a fixed probe state and the
/// catalogue observables. Laws that need a Hermitian input record the
/// Hermiticity defect as their residual when the frame destroys it, so
/// non-unitary negative controls still produce a full report.
pub fn invariance_report(ft: &FrameTransform) -> Result<InvarianceReport> {
    let sectors = [Sector::Plus, Sector::Minus];
    let st = probe_state();
    let basis = transform_basis(ft);

    let mut projector = 0.0f64;
    for s in sectors {
        let u = ft.element.block(s);
        projector = projector.max((u.dagger() * *u).max_abs_diff(&CMat2::identity()));
    }

    let spin = make_spin();
    let energy = make_energy(2.0, EnergyBranch::First)?;
    let exchange = {
        let swap = CMat2::from_rows([[c(0.0, 0.0), cr(1.0)], [cr(1.0), c(0.0, 0.0)]]);
        Observable::custom(swap, swap, "exchange")?
    };
    let conj = make_charge_conjugation();

    let mut trace = 0.0f64;
    for s in sectors {
        let u = ft.element.block(s);
        for a in [&spin, &energy, &exchange] {
            let primed = *u * *a.intrinsic(s) * u.dagger();
            trace = trace.max((primed.trace() - a.intrinsic(s).trace()).norm());
        }
    }

    let bracket_law = |x: CMat2, y: CMat2, u: &CMat2| {
        let xp = *u * x * u.dagger();
        let yp = *u * y * u.dagger();
        let transformed_bracket = *u * (x * y - y * x) * u.dagger();
        (xp * yp - yp * xp).max_abs_diff(&transformed_bracket)
    };
    let mut commutator_fixed = 0.0f64;
    let mut commutator_conjugated = 0.0f64;
    for s in sectors {
        let u = ft.element.block(s);
        commutator_fixed =
            commutator_fixed.max(bracket_law(*spin.intrinsic(s), *exchange.intrinsic(s), u));
        let sandwich = |a: &Observable| {
            *conj.block(s) * *a.intrinsic(s.other()) * *conj.block(s.other())
        };
        commutator_conjugated =
            commutator_conjugated.max(bracket_law(sandwich(&spin), sandwich(&exchange), u));
    }

    let mut measurement_entries = 0.0f64;
    for s in sectors {
        let u = ft.element.block(s);
        let phi_p = primed_components(&st, ft, s);
        for pm in measurement_pair(s) {
            let pi_p = *u * pm.covariant() * u.dagger();
            let primed = (phi_p * pi_p).dot_conj(&phi_p).re;
            let original = measurement_pairing(&st, s, pm.outcome())?;
            measurement_entries = measurement_entries.max((primed - original).abs());
        }
    }

    let mut energy_diagonal = 0.0f64;
    for s in sectors {
        let u = ft.element.block(s);
        let g = sector_metric(s);
        let primed_cov = *u * energy.covariant(s) * u.dagger();
        match diagonalize_primed(&primed_cov, s) {
            Ok((frame, diag_cov)) => {
                let lam = diag_cov * g;
                let reconstructed = frame.dagger() * lam * frame;
                energy_diagonal =
                    energy_diagonal.max(reconstructed.max_abs_diff(&(primed_cov * g)));
                for (k, expected) in [2.0, -2.0].into_iter().enumerate() {
                    energy_diagonal =
                        energy_diagonal.max((lam.get(k, k).re - expected).abs());
                }
                energy_diagonal = energy_diagonal
                    .max(lam.get(0, 1).norm())
                    .max(lam.get(1, 0).norm());
            }
            Err(Error::NotDiagonalizable { residual }) => {
                energy_diagonal = energy_diagonal.max(residual);
            }
            Err(e) => return Err(e),
        }
    }

    let mut expectation_transport = 0.0f64;
    for s in sectors {
        let u = ft.element.block(s);
        let phi_p = primed_components(&st, ft, s);
        for a in [&spin, &energy, &exchange] {
            let cov_p = *u * a.covariant(s) * u.dagger();
            let primed = (phi_p * cov_p).dot_conj(&phi_p).re;
            let original = expectation(a, &st, s)?;
            expectation_transport = expectation_transport.max((primed - original).abs());
        }
    }

    let mut density_spectrum = 0.0f64;
    for s in sectors {
        let d = density_from_piece(st.sector(s))?;
        let u = ft.element.block(s);
        let primed = *u * *d.intrinsic() * u.dagger();
        match eig_hermitian(&primed) {
            Ok(eig) => {
                let base = eig_hermitian(d.intrinsic())?;
                for k in 0..2 {
                    density_spectrum =
                        density_spectrum.max((eig.values[k] - base.values[k]).abs());
                }
            }
            Err(Error::NotHermitian { residual }) => {
                density_spectrum = density_spectrum.max(residual);
            }
            Err(e) => return Err(e),
        }
    }

    let conjugation_entries = transform_conjugation(&conj, ft).1.primed_entry_residual;

    let charge = make_charge(1.0)?;
    let mut degenerate_invariance = 0.0f64;
    for s in sectors {
        let u = ft.element.block(s);
        let primed = *u * *charge.intrinsic(s) * u.dagger();
        degenerate_invariance = degenerate_invariance.max(primed.max_abs_diff(charge.intrinsic(s)));
    }

    let mut reduction_deviation = 0.0f64;
    {
        let s = Sector::Plus;
        let u = ft.element.block(s);
        let original = reduce_state(&st, s, 0)?;
        let phi_p = primed_components(&st, ft, s);
        let weight = phi_p[0].norm_sqr();
        if weight > 1e-12 {
            let mut reduced_p = CVec2::zero();
            reduced_p[0] = phi_p[0].scale(1.0 / weight.sqrt());
            let back = reduced_p * *u;
            for k in 0..2 {
                reduction_deviation =
                    reduction_deviation.max((back[k] - original.components()[k]).norm());
            }
        } else {
            reduction_deviation = f64::INFINITY;
        }
    }

    Ok(InvarianceReport {
        gram: basis.gram_residual,
        kernel: basis.kernel_residual,
        projector,
        trace,
        commutator_fixed,
        commutator_conjugated,
        measurement_entries,
        energy_diagonal,
        expectation_transport,
        density_spectrum,
        conjugation_entries,
        degenerate_invariance,
        reduction_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{compose, unit_factor};
    use crate::numerics::{approx_eq, ONE, STRICT_TOL, ZERO};
    use crate::group::dyn_element;

    fn rotation_frame(mode: TransformMode) -> FrameTransform {
        let beta = CMat2::from_rows([[cr(0.6), cr(0.8)], [cr(-0.8), cr(0.6)]]);
        FrameTransform::new(dyn_element(&beta, None).unwrap(), mode)
    }

    fn identity_frame() -> FrameTransform {
        FrameTransform::new(DynElement::identity(), TransformMode::OperatorInvariant)
    }

    #[test]
    fn identity_frame_leaves_every_residual_at_zero() {
        let report = invariance_report(&identity_frame()).unwrap();
        assert_eq!(report.max_residual(), 0.0, "{report:?}");
        assert_eq!(report.reduction_deviation, 0.0);
        let basis = transform_basis(&identity_frame());
        assert_eq!(basis.gram_residual, 0.0);
        assert_eq!(basis.kernel_residual, 0.0);
    }

    #[test]
    fn rotation_frame_passes_every_invariance_law() {
        let report = invariance_report(&rotation_frame(TransformMode::OperatorInvariant)).unwrap();
        assert!(report.all_pass(1e-10), "{report:?}");
        assert!(
            report.reduction_deviation > 0.01,
            "reduction should move under a genuine rotation: {report:?}"
        );
    }

    #[test]
    fn state_is_fixed_while_components_follow_the_frame_rule() {
        let ft = rotation_frame(TransformMode::OperatorInvariant);
        let st = probe_state();
        let same = transform_state(&st, &ft);
        for s in [Sector::Plus, Sector::Minus] {
            assert_eq!(
                st.sector(s).components().max_abs_diff(same.sector(s).components()),
                0.0
            );
            let manual = *st.sector(s).components() * ft.element.block(s).dagger();
            let primed = primed_components(&st, &ft, s);
            assert_eq!(manual.max_abs_diff(&primed), 0.0);
        }
        let original = crate::states::born_probabilities(&st, Sector::Plus);
        let primed = primed_probabilities(&st, &ft, Sector::Plus);
        assert!((original.0 - primed[0]).abs() > 0.1, "probabilities must move");
    }

    #[test]
    fn amplitude_tensor_transform_matches_per_factor_transforms() {
        let ft = rotation_frame(TransformMode::OperatorInvariant);
        let f1 = unit_factor(Sector::Plus, CVec2::new([cr(0.6), c(0.0, 0.8)]).unwrap()).unwrap();
        let f2 = unit_factor(Sector::Plus, CVec2::new([ONE, ZERO]).unwrap()).unwrap();
        let f3 = unit_factor(
            Sector::Minus,
            CVec2::new([c(0.48, 0.36), c(0.64, -0.48)]).unwrap(),
        )
        .unwrap();
        let cs = compose(vec![f1, f2, f3]).unwrap();

        let transformed = transform_amplitude_tensor(&cs, &ft);

        let primed_factors: Vec<_> = cs
            .factors()
            .iter()
            .map(|f| {
                let phi = *f.components() * ft.element.block(f.sector()).dagger();
                unit_factor(f.sector(), phi).unwrap()
            })
            .collect();
        let oracle = compose(primed_factors).unwrap();
        assert_eq!(transformed.len(), oracle.amplitude().len());
        for (a, b) in transformed.iter().zip(oracle.amplitude()) {
            assert!((a - b).norm() <= STRICT_TOL);
        }
    }

    #[test]
    fn operator_invariant_mode_preserves_trace_and_spectrum() {
        let ft = rotation_frame(TransformMode::OperatorInvariant);
        let spin = make_spin();
        let moved = transform_observable(&spin, &ft).unwrap();
        for s in [Sector::Plus, Sector::Minus] {
            let u = ft.element.block(s);
            let expected = *u * *spin.intrinsic(s) * u.dagger();
            assert!(approx_eq(moved.observable.intrinsic(s), &expected, STRICT_TOL));
            assert!((moved.observable.trace(s) - spin.trace(s)).abs() <= STRICT_TOL);
            let eig = eig_hermitian(moved.observable.intrinsic(s)).unwrap();
            assert!((eig.values[0] - 0.5).abs() <= STRICT_TOL);
            assert!((eig.values[1] + 0.5).abs() <= STRICT_TOL);
        }
    }

    #[test]
    fn matrix_invariant_mode_is_inverse_to_operator_invariant_mode() {
        let spin = make_spin();
        let pulled = transform_observable(&spin, &rotation_frame(TransformMode::MatrixInvariant))
            .unwrap();
        let pushed =
            transform_observable(&pulled.observable, &rotation_frame(TransformMode::OperatorInvariant))
                .unwrap();
        for s in [Sector::Plus, Sector::Minus] {
            assert!(approx_eq(pushed.observable.intrinsic(s), spin.intrinsic(s), STRICT_TOL));
        }
    }

    #[test]
    fn both_mode_needs_a_commuting_element() {
        let charge = make_charge(1.0).unwrap();
        let kept = transform_observable(&charge, &rotation_frame(TransformMode::Both)).unwrap();
        for s in [Sector::Plus, Sector::Minus] {
            assert_eq!(kept.observable.intrinsic(s).max_abs_diff(charge.intrinsic(s)), 0.0);
        }
        let spin = make_spin();
        let err = transform_observable(&spin, &rotation_frame(TransformMode::Both)).unwrap_err();
        assert!(matches!(err, Error::ModeConflict { .. }));
    }

    #[test]
    fn diagonal_covariant_arrays_are_fixed_points_of_diagonalization() {
        let cov = CMat2::diag_re([3.0, 1.0]);
        let (frame, diag) = diagonalize_primed(&cov, Sector::Plus).unwrap();
        assert_eq!(frame.max_abs_diff(&CMat2::identity()), 0.0);
        assert_eq!(diag.max_abs_diff(&cov), 0.0);
    }

    #[test]
    fn rotated_spin_entries_diagonalize_back_to_the_catalogue_form() {
        let ft = rotation_frame(TransformMode::OperatorInvariant);
        let spin = make_spin();
        for s in [Sector::Plus, Sector::Minus] {
            let u = ft.element.block(s);
            let primed_cov = *u * spin.covariant(s) * u.dagger();
            let (frame, diag) = diagonalize_primed(&primed_cov, s).unwrap();
            let g = sector_metric(s);
            let lam = diag * g;
            let recovered = frame * (primed_cov * g) * frame.dagger();
            assert!(approx_eq(&recovered, &lam, STRICT_TOL));
            assert!((diag.det() - primed_cov.det()).norm() <= STRICT_TOL);
            assert!((lam.get(0, 0).re - 0.5).abs() <= STRICT_TOL);
            assert!((lam.get(1, 1).re + 0.5).abs() <= STRICT_TOL);
        }
    }

    #[test]
    fn descending_arrangement_permutes_but_preserves_value_set_and_determinant() {
        // second-sector energy entries arrive as diag(2, -2) with intrinsic
        // diag(-2, 2); descending arrangement swaps the slots
        let cov = CMat2::diag_re([2.0, -2.0]);
        let (_, diag) = diagonalize_primed(&cov, Sector::Minus).unwrap();
        assert!(approx_eq(&diag, &CMat2::diag_re([-2.0, 2.0]), STRICT_TOL));
        assert!((diag.det() - cov.det()).norm() <= STRICT_TOL);
    }

    #[test]
    fn non_hermitian_intrinsic_blocks_are_not_diagonalizable() {
        let cov = CMat2::from_rows([[ZERO, ONE], [ZERO, ZERO]]);
        let err = diagonalize_primed(&cov, Sector::Plus).unwrap_err();
        assert!(matches!(err, Error::NotDiagonalizable { .. }));
    }

    #[test]
    fn conjugation_keeps_its_identities_in_any_unitary_frame() {
        let ft = rotation_frame(TransformMode::OperatorInvariant);
        let conj = make_charge_conjugation();
        let (primed, report) = transform_conjugation(&conj, &ft);
        assert!(report.all_pass(STRICT_TOL), "{report:?}");
        for s in [Sector::Plus, Sector::Minus] {
            let expected = ft.element.block(s).dagger()
                * *conj.block(s)
                * *ft.element.block(s.other());
            assert!(approx_eq(primed.block(s), &expected, STRICT_TOL));
        }
    }

    #[test]
    fn non_unitary_frames_fail_the_invariance_suite() {
        let ft = FrameTransform::new(
            DynElement::from_blocks_unchecked(CMat2::diag_re([2.0, 0.5]), CMat2::identity()),
            TransformMode::OperatorInvariant,
        );
        let basis = transform_basis(&ft);
        assert!(basis.gram_residual > 1.0);
        assert!(basis.kernel_residual > 1.0);
        let report = invariance_report(&ft).unwrap();
        assert!(!report.all_pass(1e-6), "{report:?}");
        assert!(report.gram > 1.0);
        assert!(report.degenerate_invariance > 1.0);
        assert!(report.conjugation_entries > 0.5);
    }
}
