//! Matrix realizations of the special pseudo-unitary symmetry group of the
//! pair space: membership verification, the orthogonal change between the
//! diagonal-metric and swapped-metric pictures, translation parameter
//! algebra, and the block-diagonal dynamical elements that drive sector
//! evolution.

use crate::cartan::{block_assemble, block_decompose, metric4, swap_metric4, Blocks, Sector};
use crate::error::{Error, Result};
use crate::numerics::{c, cr, C64, CMat2, CMat4, DEFAULT_TOL, IM};
use crate::states::EvolutionOperator;
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

/// Which 4x4 metric a matrix-group element preserves: the signed diagonal
/// metric or the sector-swapping one. Both pictures describe the same group;
/// [`convert`] moves elements between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Realization {
    Diagonal,
    Swap,
}

impl Realization {
    /// The 4x4 metric preserved in this realization.
    pub fn metric(self) -> CMat4 {
        match self {
            Realization::Diagonal => metric4(),
            Realization::Swap => swap_metric4(),
        }
    }

    pub fn other(self) -> Realization {
        match self {
            Realization::Diagonal => Realization::Swap,
            Realization::Swap => Realization::Diagonal,
        }
    }
}

/// A candidate element of the special pseudo-unitary matrix group in a
/// chosen realization. Construction does not validate membership; call
/// [`verify_membership`] for a residual report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    realization: Realization,
    matrix: CMat4,
}

impl GroupElement {
    pub fn new(realization: Realization, matrix: CMat4) -> Self {
        Self { realization, matrix }
    }

    pub fn identity(realization: Realization) -> Self {
        Self { realization, matrix: CMat4::identity() }
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    pub fn matrix(&self) -> &CMat4 {
        &self.matrix
    }

    pub fn det(&self) -> C64 {
        self.matrix.det()
    }
}

/// Residuals of the defining relations of the matrix group: metric
/// preservation, unit determinant, and the block constraints the metric
/// relation splits into.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipReport {
    pub realization: Realization,
    /// Deviation of `m * metric * m^dagger` from the metric.
    pub metric_residual: f64,
    /// Distance of the determinant from one.
    pub det_deviation: f64,
    /// Plus-diagonal block of the metric relation.
    pub block_plus: f64,
    /// Minus-diagonal block of the metric relation.
    pub block_minus: f64,
    /// Largest off-diagonal block of the metric relation.
    pub block_cross: f64,
    /// Swap realization only: skew-Hermiticity defect of the row-wise block
    /// products that the swapped metric forces.
    pub swap_skew: Option<f64>,
}

impl MembershipReport {
    pub fn pass(&self, tol: f64) -> bool {
        self.metric_residual <= tol
            && self.det_deviation <= tol
            && self.block_plus <= tol
            && self.block_minus <= tol
            && self.block_cross <= tol
            && self.swap_skew.map_or(true, |s| s <= tol)
    }
}

/// Measures every defining relation of the group on a candidate element.
pub fn verify_membership(element: &GroupElement) -> MembershipReport {
    let eta = element.realization.metric();
    let m = element.matrix;
    let relation = m * eta * m.dagger() - eta;
    let blocks = block_decompose(&relation);
    let swap_skew = match element.realization {
        Realization::Diagonal => None,
        Realization::Swap => {
            let b = block_decompose(&m);
            let defect = |p: CMat2| (p + p.dagger()).max_abs();
            let top = defect(b.pp * b.pm.dagger());
            let bottom = defect(b.mp * b.mm.dagger());
            Some(top.max(bottom))
        }
    };
    MembershipReport {
        realization: element.realization,
        metric_residual: relation.max_abs(),
        det_deviation: (m.det() - cr(1.0)).norm(),
        block_plus: blocks.pp.max_abs(),
        block_minus: blocks.mm.max_abs(),
        block_cross: blocks.pm.max_abs().max(blocks.mp.max_abs()),
        swap_skew,
    }
}

/// The real orthogonal matrix whose conjugation turns the swapped metric
/// into the diagonal one. Its inverse is its transpose.
pub fn conversion_matrix() -> CMat4 {
    let s = cr(FRAC_1_SQRT_2);
    let blocks = Blocks {
        pp: CMat2::identity().scale(s),
        pm: CMat2::identity().scale(-s),
        mp: CMat2::identity().scale(s),
        mm: CMat2::identity().scale(s),
    };
    block_assemble(&blocks)
}

/// Transpose of [`conversion_matrix`]; equals its inverse because the
/// conversion is real orthogonal.
pub fn conversion_inverse() -> CMat4 {
    let m = conversion_matrix();
    let mut t = CMat4::zero();
    for r in 0..4 {
        for col in 0..4 {
            t.set(r, col, m.get(col, r));
        }
    }
    t
}

/// Rewrites a verified group element in the other realization by
/// conjugating with the conversion matrix.
pub fn convert(element: &GroupElement) -> Result<GroupElement> {
    let report = verify_membership(element);
    if !report.pass(DEFAULT_TOL) {
        return Err(Error::InvalidMember(format!(
            "metric residual {:.3e}, determinant deviation {:.3e}",
            report.metric_residual, report.det_deviation
        )));
    }
    let m = conversion_matrix();
    let m_inv = conversion_inverse();
    let matrix = match element.realization {
        Realization::Diagonal => m * element.matrix * m_inv,
        Realization::Swap => m_inv * element.matrix * m,
    };
    Ok(GroupElement::new(element.realization.other(), matrix))
}

/// Unit-determinant 2x2 parameter generating the Lorentz-type elements,
/// stored together with its inverse conjugate transpose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzParam {
    a: CMat2,
    inverse_dagger: CMat2,
}

impl LorentzParam {
    /// Accepts a finite 2x2 matrix with unit determinant and moderate norm.
    pub fn new(a: CMat2) -> Result<Self> {
        for r in 0..2 {
            for col in 0..2 {
                let z = a.get(r, col);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite);
                }
            }
        }
        let deviation = (a.det() - cr(1.0)).norm();
        if deviation > DEFAULT_TOL {
            return Err(Error::SingularA { det: deviation });
        }
        if a.max_abs() > 1e4 {
            return Err(Error::SingularA { det: a.max_abs() });
        }
        let inverse = a.inverse().ok_or(Error::SingularA { det: deviation })?;
        Ok(Self { a, inverse_dagger: inverse.dagger() })
    }

    pub fn a(&self) -> &CMat2 {
        &self.a
    }

    pub fn inverse_dagger(&self) -> &CMat2 {
        &self.inverse_dagger
    }
}

/// Maps a real four-vector (time component first) to its Hermitian 2x2
/// image under the scaled sigma-matrix correspondence.
pub fn translation_to_w(t: &[f64; 4]) -> CMat2 {
    let s = FRAC_1_SQRT_2;
    CMat2::from_rows([
        [cr(s * (t[0] + t[3])), c(s * t[1], -s * t[2])],
        [c(s * t[1], s * t[2]), cr(s * (t[0] - t[3]))],
    ])
}

/// Recovers the real four-vector from a Hermitian 2x2 image.
pub fn w_to_translation(w: &CMat2) -> Result<[f64; 4]> {
    let residual = w.hermiticity_residual();
    if residual > DEFAULT_TOL {
        return Err(Error::NotHermitian { residual });
    }
    Ok([
        (w.get(0, 0) + w.get(1, 1)).re / SQRT_2,
        SQRT_2 * w.get(0, 1).re,
        -SQRT_2 * w.get(0, 1).im,
        (w.get(0, 0) - w.get(1, 1)).re / SQRT_2,
    ])
}

/// A non-null real translation four-vector paired with its Hermitian 2x2
/// image. The indefinite square of the vector is twice the image's
/// determinant, so null vectors (singular images) are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Translation {
    components: [f64; 4],
    w: CMat2,
}

impl Translation {
    pub fn from_components(components: [f64; 4]) -> Result<Self> {
        if components.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let w = translation_to_w(&components);
        Self::checked(components, w)
    }

    /// Builds the translation from its 2x2 image instead of the vector.
    pub fn from_matrix(w: CMat2) -> Result<Self> {
        let components = w_to_translation(&w)?;
        Self::checked(components, w)
    }

    fn checked(components: [f64; 4], w: CMat2) -> Result<Self> {
        let det = w.det().re;
        if det.abs() <= 1e-12 {
            return Err(Error::NullTranslation { det });
        }
        Ok(Self { components, w })
    }

    pub fn components(&self) -> &[f64; 4] {
        &self.components
    }

    pub fn w(&self) -> &CMat2 {
        &self.w
    }

    /// Indefinite quadratic form of the four-vector; equals twice the
    /// determinant of the 2x2 image.
    pub fn minkowski_sq(&self) -> f64 {
        let t = &self.components;
        t[0] * t[0] - t[1] * t[1] - t[2] * t[2] - t[3] * t[3]
    }
}

/// Element combining a Lorentz-type parameter with a translation, in either
/// realization. The two pictures are conjugate under [`convert`].
pub fn poincare(param: &LorentzParam, shift: &Translation, realization: Realization) -> GroupElement {
    let a = *param.a();
    let b = *param.inverse_dagger();
    let iw = shift.w().scale(IM);
    let matrix = match realization {
        Realization::Swap => block_assemble(&Blocks {
            pp: iw * b,
            pm: a,
            mp: b,
            mm: CMat2::zero(),
        }),
        Realization::Diagonal => {
            let one = CMat2::identity();
            let shifted = (one + iw) * b;
            let reflected = (one - iw) * b;
            let half = cr(0.5);
            block_assemble(&Blocks {
                pp: (a + shifted).scale(half),
                pm: (a - shifted).scale(half),
                mp: (reflected - a).scale(half),
                mm: (a + reflected).scale(-half),
            })
        }
    };
    GroupElement::new(realization, matrix)
}

/// Element applying only the 2x2 parameter, in either realization.
pub fn lorentz(param: &LorentzParam, realization: Realization) -> GroupElement {
    let a = *param.a();
    let b = *param.inverse_dagger();
    let matrix = match realization {
        Realization::Swap => block_assemble(&Blocks {
            pp: CMat2::zero(),
            pm: a,
            mp: b,
            mm: CMat2::zero(),
        }),
        Realization::Diagonal => {
            let half = cr(0.5);
            block_assemble(&Blocks {
                pp: (a + b).scale(half),
                pm: (a - b).scale(half),
                mp: (b - a).scale(half),
                mm: (a + b).scale(-half),
            })
        }
    };
    GroupElement::new(realization, matrix)
}

fn check_involution_image(w: &CMat2) -> Result<()> {
    let herm = w.hermiticity_residual();
    if herm > DEFAULT_TOL {
        return Err(Error::BadNormalization(format!(
            "translation image must be Hermitian (residual {herm:.3e})"
        )));
    }
    let square = (*w * *w).max_abs_diff(&CMat2::identity());
    if square > DEFAULT_TOL {
        return Err(Error::BadNormalization(format!(
            "translation image must square to the identity (residual {square:.3e})"
        )));
    }
    Ok(())
}

fn dressed_blocks(beta: &CMat2, w: &CMat2) -> (CMat2, CMat2) {
    let one = CMat2::identity();
    let s = cr(FRAC_1_SQRT_2);
    let plus = ((one + w.scale(IM)) * *beta).scale(s);
    let minus = (beta.dagger() * (one - w.scale(IM))).scale(s);
    (plus, minus)
}

/// Block-diagonal element realizing a unitary 2x2 parameter dressed by a
/// translation image that squares to the identity. The result sits in the
/// intersection of the pseudo-unitary and unitary groups.
pub fn unitary_poincare(beta: &CMat2, w: &CMat2) -> Result<GroupElement> {
    let residual = beta.unitarity_residual();
    if residual > DEFAULT_TOL {
        return Err(Error::NotUnitary { residual });
    }
    check_involution_image(w)?;
    let (plus, minus) = dressed_blocks(beta, w);
    let matrix = block_assemble(&Blocks {
        pp: plus,
        pm: CMat2::zero(),
        mp: CMat2::zero(),
        mm: minus,
    });
    Ok(GroupElement::new(Realization::Diagonal, matrix))
}

/// Block-diagonal dynamical element. The stored blocks act directly on
/// sector components (right action on row vectors), so the identity element
/// leaves every state fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynElement {
    u_plus: CMat2,
    u_minus: CMat2,
}

impl DynElement {
    pub fn identity() -> Self {
        Self { u_plus: CMat2::identity(), u_minus: CMat2::identity() }
    }

    /// Wraps blocks without validating unitarity; intended for negative
    /// controls and error-path tests.
    pub fn from_blocks_unchecked(u_plus: CMat2, u_minus: CMat2) -> Self {
        Self { u_plus, u_minus }
    }

    pub fn block(&self, sector: Sector) -> &CMat2 {
        match sector {
            Sector::Plus => &self.u_plus,
            Sector::Minus => &self.u_minus,
        }
    }

    /// Assembles the element as a block-diagonal 4x4 matrix.
    pub fn matrix4(&self) -> CMat4 {
        block_assemble(&Blocks {
            pp: self.u_plus,
            pm: CMat2::zero(),
            mp: CMat2::zero(),
            mm: self.u_minus,
        })
    }

    /// How far the metric-twisted conjugate transpose is from inverting the
    /// element. With scalar sector metrics the twist is trivial, so this is
    /// zero exactly when both blocks are unitary.
    pub fn star_dagger_residual(&self) -> f64 {
        self.u_plus.unitarity_residual().max(self.u_minus.unitarity_residual())
    }

    /// Composition: first `self`, then `later` (right action on rows).
    pub fn then(&self, later: &DynElement) -> DynElement {
        DynElement {
            u_plus: self.u_plus * later.u_plus,
            u_minus: self.u_minus * later.u_minus,
        }
    }

    /// Per-sector block determinants; their product is one for members of
    /// the special intersection.
    pub fn block_determinants(&self) -> [C64; 2] {
        [self.u_plus.det(), self.u_minus.det()]
    }

    /// Reinterprets the element as a two-parameter evolution step.
    pub fn to_evolution(&self, tau0: f64, tau: f64) -> Result<EvolutionOperator> {
        EvolutionOperator::new(self.u_plus, self.u_minus, tau0, tau)
    }
}

/// Builds a dynamical element from a special unitary 2x2 parameter,
/// optionally dressed by a translation image squaring to the identity.
/// Without the image the blocks are the parameter and its conjugate
/// transpose.
pub fn dyn_element(beta: &CMat2, w: Option<&CMat2>) -> Result<DynElement> {
    let unitarity = beta.unitarity_residual();
    let det = (beta.det() - cr(1.0)).norm();
    if unitarity > DEFAULT_TOL || det > DEFAULT_TOL {
        return Err(Error::NotSpecialUnitary { unitarity, det });
    }
    match w {
        None => Ok(DynElement { u_plus: *beta, u_minus: beta.dagger() }),
        Some(w) => {
            check_involution_image(w)?;
            let (u_plus, u_minus) = dressed_blocks(beta, w);
            Ok(DynElement { u_plus, u_minus })
        }
    }
}

/// Embeds one sector block of a dynamical element into the 4x4 pair space,
/// zeroing the other sector. The two embeddings sum to the full matrix.
pub fn single_particle_blocks(element: &DynElement, sector: Sector) -> CMat4 {
    let mut m = CMat4::zero();
    let o = sector.offset();
    let b = element.block(sector);
    for r in 0..2 {
        for col in 0..2 {
            m.set(o + r, o + col, b.get(r, col));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{approx_eq, CVec2, ONE, STRICT_TOL, ZERO};

    fn unit_det_param() -> LorentzParam {
        // determinant (1+i)(1-i) - 1 = 1 exactly
        let a = CMat2::from_rows([[c(1.0, 1.0), ONE], [ONE, c(1.0, -1.0)]]);
        LorentzParam::new(a).unwrap()
    }

    fn sample_translation() -> Translation {
        Translation::from_components([1.5, 0.25, -0.75, 0.5]).unwrap()
    }

    fn real_rotation() -> CMat2 {
        // exact special unitary: columns are (0.6, -0.8) and (0.8, 0.6)
        CMat2::from_rows([[cr(0.6), cr(0.8)], [cr(-0.8), cr(0.6)]])
    }

    fn sigma_x() -> CMat2 {
        CMat2::from_rows([[ZERO, ONE], [ONE, ZERO]])
    }

    #[test]
    fn identity_and_metrics_are_members() {
        for realization in [Realization::Diagonal, Realization::Swap] {
            let report = verify_membership(&GroupElement::identity(realization));
            assert!(report.pass(0.0), "identity fails in {realization:?}");
            let metric_element = GroupElement::new(realization, realization.metric());
            assert!(verify_membership(&metric_element).pass(0.0));
        }
    }

    #[test]
    fn swapped_metric_is_not_a_diagonal_member() {
        let candidate = GroupElement::new(Realization::Diagonal, swap_metric4());
        let report = verify_membership(&candidate);
        assert!(report.metric_residual > 1.0);
        assert!(!report.pass(DEFAULT_TOL));
    }

    #[test]
    fn diagonal_phase_element_is_a_member() {
        let phase = std::f64::consts::FRAC_PI_4;
        let mut m = CMat4::identity();
        m.set(0, 0, c(phase.cos(), phase.sin()));
        m.set(1, 1, c(phase.cos(), -phase.sin()));
        let report = verify_membership(&GroupElement::new(Realization::Diagonal, m));
        assert!(report.pass(STRICT_TOL));
    }

    #[test]
    fn conversion_matrix_is_orthogonal_and_maps_metrics() {
        let m = conversion_matrix();
        let m_inv = conversion_inverse();
        assert!(approx_eq(&(m * m_inv), &CMat4::identity(), STRICT_TOL));
        assert!(approx_eq(&(m_inv * swap_metric4() * m), &metric4(), STRICT_TOL));
        assert!(approx_eq(&(m * metric4() * m_inv), &swap_metric4(), STRICT_TOL));
    }

    #[test]
    fn poincare_elements_are_members_in_both_realizations() {
        let param = unit_det_param();
        let shift = sample_translation();
        for realization in [Realization::Diagonal, Realization::Swap] {
            let e = poincare(&param, &shift, realization);
            let report = verify_membership(&e);
            assert!(report.pass(1e-10), "{realization:?}: {report:?}");
        }
    }

    #[test]
    fn lorentz_elements_are_members_in_both_realizations() {
        let param = unit_det_param();
        for realization in [Realization::Diagonal, Realization::Swap] {
            let e = lorentz(&param, realization);
            assert!(verify_membership(&e).pass(1e-10));
        }
    }

    #[test]
    fn axis_shift_with_trivial_parameter_has_exact_entries() {
        let w = CMat2::diag_re([1.0, -1.0]);
        let shift = Translation::from_matrix(w).unwrap();
        let param = LorentzParam::new(CMat2::identity()).unwrap();
        let e = poincare(&param, &shift, Realization::Swap);
        let expected = block_assemble(&Blocks {
            pp: w.scale(IM),
            pm: CMat2::identity(),
            mp: CMat2::identity(),
            mm: CMat2::zero(),
        });
        assert_eq!(e.matrix().max_abs_diff(&expected), 0.0);
        assert!(verify_membership(&e).pass(STRICT_TOL));
    }

    #[test]
    fn trivial_lorentz_parameter_reproduces_the_metrics() {
        let param = LorentzParam::new(CMat2::identity()).unwrap();
        let swap = lorentz(&param, Realization::Swap);
        let diag = lorentz(&param, Realization::Diagonal);
        assert_eq!(swap.matrix().max_abs_diff(&swap_metric4()), 0.0);
        assert_eq!(diag.matrix().max_abs_diff(&metric4()), 0.0);
    }

    #[test]
    fn conversion_matches_direct_construction_and_round_trips() {
        let param = unit_det_param();
        let shift = sample_translation();
        let swap = poincare(&param, &shift, Realization::Swap);
        let diag = poincare(&param, &shift, Realization::Diagonal);

        let converted = convert(&swap).unwrap();
        assert_eq!(converted.realization(), Realization::Diagonal);
        assert!(approx_eq(converted.matrix(), diag.matrix(), STRICT_TOL));
        assert!(verify_membership(&converted).pass(1e-10));

        let back = convert(&converted).unwrap();
        assert!(approx_eq(back.matrix(), swap.matrix(), STRICT_TOL));
        assert!((swap.det() - converted.det()).norm() <= STRICT_TOL);
    }

    #[test]
    fn conversion_rejects_non_members() {
        let bad = GroupElement::new(Realization::Diagonal, swap_metric4());
        assert!(matches!(convert(&bad), Err(Error::InvalidMember(_))));
    }

    #[test]
    fn lorentz_parameter_rejects_bad_input() {
        let err = LorentzParam::new(CMat2::diag_re([2.0, 1.0])).unwrap_err();
        assert!(matches!(err, Error::SingularA { .. }));
        let err = LorentzParam::new(CMat2::diag_re([1e5, 1e-5])).unwrap_err();
        assert!(matches!(err, Error::SingularA { .. }));
        let err = LorentzParam::new(CMat2::diag_re([f64::NAN, 1.0])).unwrap_err();
        assert!(matches!(err, Error::NonFinite));
    }

    #[test]
    fn translation_round_trips_and_matches_quadratic_form() {
        let t = [2.0, 0.5, -1.25, 0.75];
        let shift = Translation::from_components(t).unwrap();
        let recovered = w_to_translation(shift.w()).unwrap();
        for k in 0..4 {
            assert!((recovered[k] - t[k]).abs() <= STRICT_TOL);
        }
        let two_det = 2.0 * shift.w().det().re;
        assert!((shift.minkowski_sq() - two_det).abs() <= STRICT_TOL);
    }

    #[test]
    fn null_translations_are_rejected() {
        let err = Translation::from_components([1.0, 1.0, 0.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::NullTranslation { .. }));
        let skew = CMat2::from_rows([[ZERO, IM], [IM, ZERO]]);
        assert!(matches!(Translation::from_matrix(skew), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn involution_image_fixes_the_block_determinants() {
        // timelike image: determinant one, time component sqrt(2)
        let w = CMat2::identity();
        let e = unitary_poincare(&CMat2::identity(), &w).unwrap();
        let blocks = block_decompose(e.matrix());
        assert!((blocks.pp.det() - IM).norm() <= STRICT_TOL);
        assert!((blocks.mm.det() + IM).norm() <= STRICT_TOL);
        let t = w_to_translation(&w).unwrap();
        assert!((t[0] - SQRT_2).abs() <= STRICT_TOL);
        assert!((w.det().re - 1.0).abs() <= STRICT_TOL);

        // spacelike image: determinant minus one, vanishing time component
        let w = CMat2::diag_re([1.0, -1.0]);
        let e = unitary_poincare(&CMat2::identity(), &w).unwrap();
        let blocks = block_decompose(e.matrix());
        assert!((blocks.pp.det() - ONE).norm() <= STRICT_TOL);
        assert!((blocks.mm.det() - ONE).norm() <= STRICT_TOL);
        let t = w_to_translation(&w).unwrap();
        assert!(t[0].abs() <= STRICT_TOL);
        assert!((w.det().re + 1.0).abs() <= STRICT_TOL);
    }

    #[test]
    fn unitary_poincare_is_a_diagonal_member() {
        let e = unitary_poincare(&real_rotation(), &sigma_x()).unwrap();
        let report = verify_membership(&e);
        assert!(report.pass(STRICT_TOL), "{report:?}");
        assert!(e.matrix().unitarity_residual() <= STRICT_TOL);
    }

    #[test]
    fn unitary_poincare_rejects_bad_parameters() {
        let not_unitary = CMat2::diag_re([2.0, 0.5]);
        assert!(matches!(
            unitary_poincare(&not_unitary, &CMat2::identity()),
            Err(Error::NotUnitary { .. })
        ));
        let skew = CMat2::from_rows([[ZERO, IM], [IM, ZERO]]);
        assert!(matches!(
            unitary_poincare(&CMat2::identity(), &skew),
            Err(Error::BadNormalization(_))
        ));
        let stretched = CMat2::diag_re([2.0, 2.0]);
        assert!(matches!(
            unitary_poincare(&CMat2::identity(), &stretched),
            Err(Error::BadNormalization(_))
        ));
    }

    #[test]
    fn trivial_dyn_element_acts_trivially() {
        let d = dyn_element(&CMat2::identity(), None).unwrap();
        assert_eq!(d.block(Sector::Plus).max_abs_diff(&CMat2::identity()), 0.0);
        assert_eq!(d.block(Sector::Minus).max_abs_diff(&CMat2::identity()), 0.0);
        assert_eq!(d.matrix4().max_abs_diff(&CMat4::identity()), 0.0);
        assert_eq!(d.star_dagger_residual(), 0.0);
        let composed = d.then(&DynElement::identity());
        assert_eq!(composed, DynElement::identity());
    }

    #[test]
    fn dyn_element_requires_a_special_unitary_parameter() {
        let rotation = CMat2::from_rows([[ZERO, ONE], [-ONE, ZERO]]);
        let d = dyn_element(&rotation, None).unwrap();
        assert_eq!(d.block(Sector::Minus).max_abs_diff(&rotation.dagger()), 0.0);

        let stretched = CMat2::diag_re([2.0, 0.5]);
        assert!(matches!(dyn_element(&stretched, None), Err(Error::NotSpecialUnitary { .. })));

        let wrong_det = CMat2::from_rows([[IM, ZERO], [ZERO, IM]]);
        assert!(matches!(dyn_element(&wrong_det, None), Err(Error::NotSpecialUnitary { .. })));
    }

    #[test]
    fn dressed_dyn_blocks_are_unitary_with_unit_determinant_product() {
        let d = dyn_element(&real_rotation(), Some(&sigma_x())).unwrap();
        assert!(d.star_dagger_residual() <= STRICT_TOL);
        let [dp, dm] = d.block_determinants();
        assert!((dp * dm - ONE).norm() <= STRICT_TOL);
        let as_element = GroupElement::new(Realization::Diagonal, d.matrix4());
        assert!(verify_membership(&as_element).pass(STRICT_TOL));
        assert!(d.to_evolution(0.0, 1.0).is_ok());
    }

    #[test]
    fn dyn_composition_acts_like_sequential_application() {
        let d1 = dyn_element(&real_rotation(), None).unwrap();
        let d2 = dyn_element(&real_rotation(), Some(&sigma_x())).unwrap();
        let v = CVec2::new([c(0.3, -0.4), c(0.5, 1.0)]).unwrap();
        let sequential = (v * *d1.block(Sector::Plus)) * *d2.block(Sector::Plus);
        let combined = v * *d1.then(&d2).block(Sector::Plus);
        for k in 0..2 {
            assert!((sequential[k] - combined[k]).norm() <= STRICT_TOL);
        }
    }

    #[test]
    fn single_particle_paddings_sum_to_the_full_matrix() {
        let d = dyn_element(&real_rotation(), Some(&sigma_x())).unwrap();
        let sum = single_particle_blocks(&d, Sector::Plus)
            + single_particle_blocks(&d, Sector::Minus);
        assert_eq!(sum.max_abs_diff(&d.matrix4()), 0.0);
    }
}
