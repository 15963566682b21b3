//! The observable catalogue for pair systems: charge, spin, polarization,
//! two-branch energy, charge conjugation and virtual-particle involutions,
//! plus local basis changes (helicity descriptions and the spin versus
//! polarization interchange).
//!
//! An observable is pseudo-Hermitian with respect to the sector metrics,
//! which for block-diagonal restrictions is the same as each intrinsic
//! block being plainly Hermitian. Covariant entry arrays are the intrinsic
//! blocks contracted with the sector metric, so they flip sign on the
//! Minus sector.

use crate::cartan::{block_assemble, sector_metric, Blocks, Sector, SectorVector};
use crate::error::{Error, Result};
use crate::numerics::{cr, eig_hermitian, outer, CMat2, CMat4, CVec2, C64, DEFAULT_TOL};
use crate::states::{make_pair_state, PairState};

/// Which catalogue entry an observable came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObservableKind {
    Charge { q: f64 },
    Spin,
    Polarization,
    EnergyFirst { e: f64 },
    EnergySecond { e: f64 },
    Custom,
}

/// The two energy branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyBranch {
    First,
    Second,
}

/// A pseudo-Hermitian observable stored as one intrinsic block per sector.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    plus: CMat2,
    minus: CMat2,
    kind: ObservableKind,
    label: String,
}

/// Deviation of an intrinsic block from pseudo-Hermiticity: the larger of
/// the plain Hermiticity residual and the metric-conjugation residual
/// `g m† g - m` (the two coincide because the sector metrics are scalar).
pub fn pseudo_hermiticity_residual(m: &CMat2, sector: Sector) -> f64 {
    let g = sector_metric(sector);
    let plain = m.hermiticity_residual();
    let conjugated = (g * m.dagger() * g).max_abs_diff(m);
    plain.max(conjugated)
}

impl Observable {
    /// Builds an observable from intrinsic sector blocks, rejecting blocks
    /// that are not pseudo-Hermitian.
    pub fn from_intrinsic(
        plus: CMat2,
        minus: CMat2,
        kind: ObservableKind,
        label: impl Into<String>,
    ) -> Result<Self> {
        for (m, s) in [(&plus, Sector::Plus), (&minus, Sector::Minus)] {
            let residual = pseudo_hermiticity_residual(m, s);
            if !(residual <= DEFAULT_TOL) {
                return Err(Error::NotPseudoHermitian { residual });
            }
        }
        Ok(Self { plus, minus, kind, label: label.into() })
    }

    /// User-defined observable from intrinsic blocks.
    pub fn custom(plus: CMat2, minus: CMat2, label: impl Into<String>) -> Result<Self> {
        Self::from_intrinsic(plus, minus, ObservableKind::Custom, label)
    }

    pub fn kind(&self) -> ObservableKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Intrinsic block: acts directly on sector component rows.
    pub fn intrinsic(&self, sector: Sector) -> &CMat2 {
        match sector {
            Sector::Plus => &self.plus,
            Sector::Minus => &self.minus,
        }
    }

    /// Covariant entry array of one sector block.
    pub fn covariant(&self, sector: Sector) -> CMat2 {
        *self.intrinsic(sector) * sector_metric(sector)
    }

    /// Covariant entries of both blocks assembled into a 4x4 array.
    pub fn matrix4_covariant(&self) -> CMat4 {
        block_assemble(&Blocks {
            pp: self.covariant(Sector::Plus),
            pm: CMat2::zero(),
            mp: CMat2::zero(),
            mm: self.covariant(Sector::Minus),
        })
    }

    /// Intrinsic blocks assembled into a 4x4 matrix.
    pub fn matrix4_intrinsic(&self) -> CMat4 {
        block_assemble(&Blocks {
            pp: self.plus,
            pm: CMat2::zero(),
            mp: CMat2::zero(),
            mm: self.minus,
        })
    }

    /// Metric-contracted trace of one sector block; equals the intrinsic
    /// trace and the sum of the block's eigenvalues.
    pub fn trace(&self, sector: Sector) -> f64 {
        self.intrinsic(sector).trace().re
    }
}

/// Charge observable: value `q` on the particle sector and `-q` on the
/// antiparticle sector, so both covariant arrays read `diag(q, q)`.
pub fn make_charge(q: f64) -> Result<Observable> {
    if !q.is_finite() {
        return Err(Error::NonFinite);
    }
    Observable::from_intrinsic(
        CMat2::diag_re([q, q]),
        CMat2::diag_re([-q, -q]),
        ObservableKind::Charge { q },
        "charge",
    )
}

/// Spin observable with up-down values `+1/2`, `-1/2` attached to basis
/// rows 0, 1 in both sectors.
pub fn make_spin() -> Observable {
    let block = CMat2::diag_re([0.5, -0.5]);
    Observable { plus: block, minus: block, kind: ObservableKind::Spin, label: "spin".into() }
}

/// Polarization observable with vertical-horizontal values `+1`, `-1`
/// attached to basis rows 0, 1 in both sectors.
pub fn make_polarization() -> Observable {
    let block = CMat2::diag_re([1.0, -1.0]);
    Observable {
        plus: block,
        minus: block,
        kind: ObservableKind::Polarization,
        label: "polarization".into(),
    }
}

/// Energy observable for one branch. Both branches share the covariant
/// array `diag(E, -E)` (first branch) or `diag(-E, E)` (second branch) on
/// the two sectors; the intrinsic blocks then differ by the sector sign.
pub fn make_energy(e: f64, branch: EnergyBranch) -> Result<Observable> {
    if !(e > 0.0 && e.is_finite()) {
        return Err(Error::NonpositiveEnergy(e));
    }
    let first_cov = CMat2::diag_re([e, -e]);
    let (kind, label, cov) = match branch {
        EnergyBranch::First => (ObservableKind::EnergyFirst { e }, "energy-first", first_cov),
        EnergyBranch::Second => (ObservableKind::EnergySecond { e }, "energy-second", -first_cov),
    };
    Observable::from_intrinsic(
        cov * sector_metric(Sector::Plus),
        cov * sector_metric(Sector::Minus),
        kind,
        label,
    )
}

/// Total energy observable: the difference of the first and second
/// branches, with covariant arrays `diag(2E, -2E)`.
pub fn make_total_energy(e: f64) -> Result<Observable> {
    let first = make_energy(e, EnergyBranch::First)?;
    let second = make_energy(e, EnergyBranch::Second)?;
    Observable::from_intrinsic(
        *first.intrinsic(Sector::Plus) - *second.intrinsic(Sector::Plus),
        *first.intrinsic(Sector::Minus) - *second.intrinsic(Sector::Minus),
        ObservableKind::Custom,
        "energy",
    )
}

/// Expectation value of one sector restriction in a pair state:
/// the component row contracted through the covariant entry array.
pub fn expectation(a: &Observable, st: &PairState, sector: Sector) -> Result<f64> {
    let residual = pseudo_hermiticity_residual(a.intrinsic(sector), sector);
    if !(residual <= DEFAULT_TOL) {
        return Err(Error::NotPseudoHermitian { residual });
    }
    let phi = st.sector(sector).components();
    let contracted = (*phi * a.covariant(sector)).dot_conj(phi);
    Ok(contracted.re)
}

/// Spectral data of one sector restriction: descending real eigenvalues,
/// the matching bra rows, and rank-one intrinsic projectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: [f64; 2],
    /// Eigen-bra component rows, one per eigenvalue.
    pub states: [CVec2; 2],
    /// Intrinsic projector matrices of the eigen dyads.
    pub dyads: [CMat2; 2],
    sector: Sector,
}

impl SpectralDecomposition {
    /// Sums the eigenvalue-weighted dyads back into the intrinsic block.
    pub fn reconstruct_intrinsic(&self) -> CMat2 {
        self.dyads[0].scale(cr(self.eigenvalues[0])) + self.dyads[1].scale(cr(self.eigenvalues[1]))
    }

    /// Covariant reconstruction: the sector sign times the dyad sum.
    pub fn reconstruct_covariant(&self) -> CMat2 {
        self.reconstruct_intrinsic() * sector_metric(self.sector)
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    /// Whether the two eigenvalues coincide to within `tol`.
    pub fn is_degenerate(&self, tol: f64) -> bool {
        (self.eigenvalues[0] - self.eigenvalues[1]).abs() <= tol
    }
}

/// Diagonalizes one sector restriction of a pseudo-Hermitian observable.
pub fn spectral_decomposition(a: &Observable, sector: Sector) -> Result<SpectralDecomposition> {
    let m = a.intrinsic(sector);
    let residual = pseudo_hermiticity_residual(m, sector);
    if !(residual <= DEFAULT_TOL) {
        return Err(Error::NotPseudoHermitian { residual });
    }
    let eig = eig_hermitian(m)?;
    let mut states = [CVec2::zero(); 2];
    let mut dyads = [CMat2::zero(); 2];
    for k in 0..2 {
        let col = eig.vectors.col(k);
        // A bra row with this eigenvalue is the conjugate of the column
        // eigenvector; its intrinsic dyad is then col (x) conj(col).
        states[k] = col.conj();
        dyads[k] = outer(&col, &col.conj());
    }
    Ok(SpectralDecomposition { eigenvalues: eig.values, states, dyads, sector })
}

/// Charge conjugation: a pair of cross-sector blocks exchanging the
/// particle and antiparticle descriptions. Stored blocks are intrinsic;
/// in the canonical frame both equal the first Pauli matrix, so the map
/// swaps basis rows while crossing sectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeConjugation {
    q_plus: CMat2,
    q_minus: CMat2,
}

/// Antidiagonal unit block used by the canonical conjugation and the
/// virtual-particle operators.
fn pauli_x() -> CMat2 {
    use crate::numerics::{ONE, ZERO};
    CMat2::from_rows([[ZERO, ONE], [ONE, ZERO]])
}

/// The canonical charge conjugation.
pub fn make_charge_conjugation() -> ChargeConjugation {
    ChargeConjugation { q_plus: pauli_x(), q_minus: pauli_x() }
}

impl ChargeConjugation {
    /// Builds a conjugation from raw intrinsic blocks without validation;
    /// `conjugation_identities` reports how far the result strays from the
    /// defining identities.
    pub fn from_blocks(q_plus: CMat2, q_minus: CMat2) -> Self {
        Self { q_plus, q_minus }
    }

    /// Intrinsic block mapping the given sector into the other one.
    pub fn block(&self, from: Sector) -> &CMat2 {
        match from {
            Sector::Plus => &self.q_plus,
            Sector::Minus => &self.q_minus,
        }
    }

    /// Covariant entries of one block: the intrinsic block contracted with
    /// the metric of the target sector.
    pub fn covariant_block(&self, from: Sector) -> CMat2 {
        *self.block(from) * sector_metric(from.other())
    }

    /// Star conjugate of one block: the adjoint sandwiched between the
    /// target and source metrics. Canonically this is the negated reverse
    /// block, which is also the negated inverse.
    pub fn star_block(&self, from: Sector) -> CMat2 {
        sector_metric(from.other()) * self.block(from).dagger() * sector_metric(from)
    }

    /// Covariant 4x4 assembly; the blocks sit on the sector antidiagonal.
    pub fn matrix4_covariant(&self) -> CMat4 {
        block_assemble(&Blocks {
            pp: CMat2::zero(),
            pm: self.covariant_block(Sector::Plus),
            mp: self.covariant_block(Sector::Minus),
            mm: CMat2::zero(),
        })
    }

    /// Intrinsic 4x4 assembly.
    pub fn matrix4_intrinsic(&self) -> CMat4 {
        block_assemble(&Blocks {
            pp: CMat2::zero(),
            pm: self.q_plus,
            mp: self.q_minus,
            mm: CMat2::zero(),
        })
    }

    /// Conjugates a pair state: each piece is pushed through its block into
    /// the other sector and renormalized.
    pub fn transport(&self, st: &PairState) -> Result<PairState> {
        let plus = *st.sector(Sector::Minus).components() * self.q_minus;
        let minus = *st.sector(Sector::Plus).components() * self.q_plus;
        make_pair_state(plus, minus)
    }

    /// Builds the pair state whose Minus piece is the conjugation image of
    /// the given Plus components. For such aligned states the indefinite
    /// pairing is blind to the conjugation: applying it first changes
    /// nothing, and both pairings vanish identically.
    pub fn aligned_pair(&self, plus: CVec2) -> Result<PairState> {
        let minus = plus * self.q_plus;
        make_pair_state(plus, minus)
    }
}

/// Residuals of the identities characterizing a charge conjugation; all
/// vanish for the canonical blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugationReport {
    /// Deviation of the two blocks from being mutual inverses.
    pub mutual_inverse: f64,
    /// Deviation of the round-trip pairing entries from the sector metric.
    pub pairing_composition: f64,
    /// Deviation of the star conjugate from the negated reverse block and
    /// from the negated inverse.
    pub star_inverse: f64,
    /// Deviation of the block-star product entries from the negated sector
    /// metric (equivalently, the opposite sector metric).
    pub sign_ledger: f64,
    /// Deviation of the two covariant blocks from mutual negation.
    pub covariant_antisymmetry: f64,
}

impl ConjugationReport {
    pub fn max_residual(&self) -> f64 {
        self.mutual_inverse
            .max(self.pairing_composition)
            .max(self.star_inverse)
            .max(self.sign_ledger)
            .max(self.covariant_antisymmetry)
    }

    pub fn all_pass(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

/// Measures how far a conjugation strays from each defining identity.
pub fn conjugation_identities(c: &ChargeConjugation) -> ConjugationReport {
    let eye = CMat2::identity();
    let mut mutual_inverse = 0.0f64;
    let mut pairing_composition = 0.0f64;
    let mut star_inverse = 0.0f64;
    let mut sign_ledger = 0.0f64;
    for s in [Sector::Plus, Sector::Minus] {
        let fwd = *c.block(s);
        let back = *c.block(s.other());
        let g = sector_metric(s);
        mutual_inverse = mutual_inverse.max((fwd * back).max_abs_diff(&eye));
        pairing_composition = pairing_composition.max((fwd * back * g).max_abs_diff(&g));
        let star = c.star_block(s);
        star_inverse = star_inverse.max(star.max_abs_diff(&-back));
        match fwd.inverse() {
            Some(inv) => star_inverse = star_inverse.max(star.max_abs_diff(&-inv)),
            None => star_inverse = f64::INFINITY,
        }
        // The star block runs against the forward block, so their product
        // acts within the source sector; its entries negate the metric.
        sign_ledger = sign_ledger.max((fwd * c.star_block(s.other()) * g).max_abs_diff(&-g));
    }
    let covariant_antisymmetry = c
        .covariant_block(Sector::Plus)
        .max_abs_diff(&-c.covariant_block(Sector::Minus));
    ConjugationReport {
        mutual_inverse,
        pairing_composition,
        star_inverse,
        sign_ledger,
        covariant_antisymmetry,
    }
}

/// Per-sector entry arrays of the four-factor product charge, conjugation,
/// opposite charge, conjugation back, contracted with the sector metric.
/// For the canonical conjugation this equals `-q^2` times the metric.
pub fn charge_square_entries(q: f64, c: &ChargeConjugation) -> Result<[CMat2; 2]> {
    let charge = make_charge(q)?;
    let entry = |s: Sector| {
        *charge.intrinsic(s)
            * *c.block(s)
            * *charge.intrinsic(s.other())
            * *c.block(s.other())
            * sector_metric(s)
    };
    Ok([entry(Sector::Plus), entry(Sector::Minus)])
}

/// A virtual-particle operator: the same-sector involution that swaps the
/// basis rows, flipping spin-polarization and energy values while leaving
/// charges alone. Stored by its covariant reduced block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VirtualParticleOp {
    sector: Sector,
    matrix: CMat2,
}

/// The canonical virtual-particle operator on one sector.
pub fn make_virtual(sector: Sector) -> VirtualParticleOp {
    VirtualParticleOp { sector, matrix: pauli_x().scale(cr(sector.sign())) }
}

impl VirtualParticleOp {
    pub fn sector(&self) -> Sector {
        self.sector
    }

    /// Covariant reduced block: the signed antidiagonal unit matrix.
    pub fn covariant_block(&self) -> &CMat2 {
        &self.matrix
    }

    /// Intrinsic block; canonically the plain row swap on either sector.
    pub fn intrinsic(&self) -> CMat2 {
        self.matrix * sector_metric(self.sector)
    }

    /// Covariant 4x4 embedding: the block sits on its own sector's
    /// diagonal slot and everything else vanishes.
    pub fn matrix4_covariant(&self) -> CMat4 {
        let zero = CMat2::zero();
        let blocks = match self.sector {
            Sector::Plus => Blocks { pp: self.matrix, pm: zero, mp: zero, mm: zero },
            Sector::Minus => Blocks { pp: zero, pm: zero, mp: zero, mm: self.matrix },
        };
        block_assemble(&blocks)
    }

    /// Applies the operator to a same-sector state row.
    pub fn apply(&self, v: &SectorVector) -> Result<SectorVector> {
        if v.sector() != self.sector {
            return Err(Error::SectorMismatch { expected: self.sector, got: v.sector() });
        }
        Ok(v.apply(&self.intrinsic()))
    }

    /// Covariant entries of the sandwiched restriction `v a v`; equal to
    /// the covariant entries of `a` with both indices swapped.
    pub fn sandwich_entries(&self, a: &Observable) -> CMat2 {
        let v = self.intrinsic();
        v * *a.intrinsic(self.sector) * v * sector_metric(self.sector)
    }
}

/// A local change of description: one unitary block per sector carrying
/// the canonical basis rows onto a new basis, together with the Gram
/// arrays of the new basis under the sector pairings. Unitarity makes the
/// Grams coincide with the sector metrics up to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisChange {
    u_plus: CMat2,
    u_minus: CMat2,
    gram_plus: CMat2,
    gram_minus: CMat2,
}

impl BasisChange {
    pub fn new(u_plus: CMat2, u_minus: CMat2) -> Result<Self> {
        for block in [&u_plus, &u_minus] {
            let residual = block.unitarity_residual();
            if !(residual <= DEFAULT_TOL) {
                return Err(Error::NotUnitary { residual });
            }
        }
        let gram = |u: &CMat2, s: Sector| u.dagger() * sector_metric(s) * *u;
        Ok(Self {
            gram_plus: gram(&u_plus, Sector::Plus),
            gram_minus: gram(&u_minus, Sector::Minus),
            u_plus,
            u_minus,
        })
    }

    /// The do-nothing change of description.
    pub fn identity() -> Self {
        Self::new(CMat2::identity(), CMat2::identity()).expect("identity blocks are unitary")
    }

    /// Applies the same unitary block to both sectors.
    pub fn uniform(u: CMat2) -> Result<Self> {
        Self::new(u, u)
    }

    pub fn block(&self, sector: Sector) -> &CMat2 {
        match sector {
            Sector::Plus => &self.u_plus,
            Sector::Minus => &self.u_minus,
        }
    }

    /// Gram array of the new basis under the sector pairing.
    pub fn gram(&self, sector: Sector) -> &CMat2 {
        match sector {
            Sector::Plus => &self.gram_plus,
            Sector::Minus => &self.gram_minus,
        }
    }

    /// Deviation of the new basis rows from orthonormality in the definite
    /// pairing; zero exactly when the block is unitary.
    pub fn orthonormality_residual(&self, sector: Sector) -> f64 {
        self.block(sector).unitarity_residual()
    }
}

/// Pairing of two component rows through an explicit Gram array.
pub fn gram_pairing(x: &CVec2, y: &CVec2, gram: &CMat2) -> C64 {
    (*x * *gram).dot_conj(y)
}

/// Carries an observable into a new local description. The transformed
/// intrinsic blocks are the unitary conjugates `u† a u`; pairing them with
/// the new Gram arrays reproduces the original covariant entries, so the
/// spectrum attached to the description is unchanged.
pub fn apply_basis_change(a: &Observable, bc: &BasisChange) -> Result<(Observable, [CMat2; 2])> {
    let conjugate =
        |s: Sector| bc.block(s).dagger() * *a.intrinsic(s) * *bc.block(s);
    let transformed = Observable::from_intrinsic(
        conjugate(Sector::Plus),
        conjugate(Sector::Minus),
        ObservableKind::Custom,
        format!("{} (transformed)", a.label()),
    )?;
    Ok((transformed, [*bc.gram(Sector::Plus), *bc.gram(Sector::Minus)]))
}

/// Entry array of a transformed observable evaluated in the new basis with
/// the new Gram pairing. Identically equal to the original covariant
/// entries, which is the statement that local descriptions preserve
/// spectra.
pub fn transformed_entries(a: &Observable, bc: &BasisChange, sector: Sector) -> CMat2 {
    let u = *bc.block(sector);
    let conjugated = u.dagger() * *a.intrinsic(sector) * u;
    u * conjugated * *bc.gram(sector) * u.dagger()
}

/// Base attribute for a helicity description.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HelicityBase {
    /// Massive fermion pairs: helicity reinterprets the spin values.
    Spin,
    /// Boson pairs: helicity reinterprets the polarization values.
    Polarization,
}

/// Helicity observable: the base attribute conjugated into the left-right
/// basis selected by `bc`. Left and right labels attach to the new basis
/// rows 0 and 1; with the identity change the observable reduces to the
/// base itself.
pub fn make_helicity(bc: &BasisChange, base: HelicityBase) -> Result<Observable> {
    let base_obs = match base {
        HelicityBase::Spin => make_spin(),
        HelicityBase::Polarization => make_polarization(),
    };
    let (mut transformed, _) = apply_basis_change(&base_obs, bc)?;
    transformed.label = format!(
        "helicity ({})",
        match base {
            HelicityBase::Spin => "spin",
            HelicityBase::Polarization => "polarization",
        }
    );
    Ok(transformed)
}

/// Direction of the attribute interchange between pair kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interchange {
    /// Attach a vertical-horizontal observable to a fermionic pair via the
    /// selected basis.
    FermionPolarization,
    /// Attach an up-down observable to a bosonic pair via the selected
    /// basis.
    BosonSpin,
}

/// Builds the interchanged observable: the opposite attribute's canonical
/// operator conjugated into the selected basis. Its entries in that basis
/// reproduce the canonical values (unit for polarization, half-unit for
/// spin); the spin and polarization operators themselves stay distinct,
/// differing in spectrum by more than a relabeling.
pub fn interchange_spin_polarization(bc: &BasisChange, direction: Interchange) -> Result<Observable> {
    let base = match direction {
        Interchange::FermionPolarization => make_polarization(),
        Interchange::BosonSpin => make_spin(),
    };
    let (mut transformed, _) = apply_basis_change(&base, bc)?;
    transformed.label = match direction {
        Interchange::FermionPolarization => "vertical-horizontal (fermion pair)".into(),
        Interchange::BosonSpin => "up-down (boson pair)".into(),
    };
    Ok(transformed)
}

/// Per-sector intrinsic commutators of two observables.
pub fn commutator(a: &Observable, b: &Observable) -> [CMat2; 2] {
    let bracket = |s: Sector| {
        let (x, y) = (*a.intrinsic(s), *b.intrinsic(s));
        x * y - y * x
    };
    [bracket(Sector::Plus), bracket(Sector::Minus)]
}

/// Whether two observables commute on both sectors to within `tol`.
pub fn commutes(a: &Observable, b: &Observable, tol: f64) -> bool {
    commutator(a, b).iter().all(|m| m.max_abs() <= tol)
}

/// Consistency flags for the value-exchange schemes of conjugation and
/// virtual-particle maps: rows swap, first-branch energies flip sign, and
/// charges flip under conjugation but hold fixed under the virtual map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeReport {
    pub conjugation_row_swap: bool,
    pub conjugation_energy_flip: bool,
    pub conjugation_charge_flip: bool,
    pub virtual_row_swap: bool,
    pub virtual_energy_flip: bool,
    pub virtual_charge_fixed: bool,
}

impl SchemeReport {
    pub fn all_pass(&self) -> bool {
        self.conjugation_row_swap
            && self.conjugation_energy_flip
            && self.conjugation_charge_flip
            && self.virtual_row_swap
            && self.virtual_energy_flip
            && self.virtual_charge_fixed
    }
}

/// Checks the canonical value-exchange schemes at charge `q` and energy `e`.
pub fn scheme_report(q: f64, e: f64) -> Result<SchemeReport> {
    let conj = make_charge_conjugation();
    let charge = make_charge(q)?;
    let energy = make_energy(e, EnergyBranch::First)?;
    let mut report = SchemeReport {
        conjugation_row_swap: true,
        conjugation_energy_flip: true,
        conjugation_charge_flip: true,
        virtual_row_swap: true,
        virtual_energy_flip: true,
        virtual_charge_fixed: true,
    };
    for s in [Sector::Plus, Sector::Minus] {
        let v = make_virtual(s);
        for mu in 0..2 {
            let row = CVec2::basis(mu);
            let swapped = CVec2::basis(1 - mu);
            report.conjugation_row_swap &= row * *conj.block(s) == swapped;
            report.virtual_row_swap &= row * v.intrinsic() == swapped;
            // Values read off the covariant diagonals at matching rows.
            let e_here = energy.covariant(s).get(mu, mu);
            let e_image = energy.covariant(s.other()).get(1 - mu, 1 - mu);
            report.conjugation_energy_flip &= e_image == -e_here;
            report.virtual_energy_flip &= energy.covariant(s).get(1 - mu, 1 - mu) == -e_here;
            // Charge values are the intrinsic eigenvalues.
            let q_here = charge.intrinsic(s).get(mu, mu);
            let q_image = charge.intrinsic(s.other()).get(1 - mu, 1 - mu);
            report.conjugation_charge_flip &= q_image == -q_here;
            report.virtual_charge_fixed &= charge.intrinsic(s).get(1 - mu, 1 - mu) == q_here;
        }
    }
    Ok(report)
}
