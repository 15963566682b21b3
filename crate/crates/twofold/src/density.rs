//! Density restrictions, entropies, composite many-body states and their
//! reductions.
//!
//! A sector density is stored by its intrinsic matrix, whose trace is one
//! in both sectors; the covariant entry array picks up the sector sign.
//! Composite states are ordered products of single-slot states (all
//! particle slots first), carried with the outer-product amplitude tensor;
//! composite densities keep the per-slot factor structure explicitly.

use crate::cartan::{sector_metric, Sector, SectorVector};
use crate::error::{Error, Result};
use crate::numerics::{cr, eig_hermitian, outer, CMat2, CMatD, CVec2, C64, DEFAULT_TOL, ZERO};
use crate::observables::{pseudo_hermiticity_residual, Observable};
use crate::states::{EvolutionOperator, PairState};

/// Largest number of composite slots whose assembled matrices we are
/// willing to build (dimension `2^MAX_ASSEMBLED_SLOTS`).
pub const MAX_ASSEMBLED_SLOTS: usize = 6;

/// A density restriction on one sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityOperator {
    sector: Sector,
    matrix: CMat2,
    pure: bool,
}

impl DensityOperator {
    /// Builds a density from an intrinsic matrix, checking Hermiticity,
    /// unit trace, positivity and (when flagged pure) idempotency.
    pub fn from_intrinsic(sector: Sector, matrix: CMat2, pure: bool) -> Result<Self> {
        let herm = matrix.hermiticity_residual();
        if !(herm <= DEFAULT_TOL) {
            return Err(Error::InvalidDensity(format!(
                "intrinsic matrix is not Hermitian (residual {herm:.3e})"
            )));
        }
        let trace = matrix.trace();
        if !((trace.re - 1.0).abs() <= DEFAULT_TOL && trace.im.abs() <= DEFAULT_TOL) {
            return Err(Error::InvalidDensity(format!(
                "intrinsic trace must be one, got {trace}"
            )));
        }
        let eig = eig_hermitian(&matrix)?;
        if eig.values.iter().any(|&v| v < -DEFAULT_TOL) {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {:.3e}",
                eig.values[1]
            )));
        }
        if pure {
            let idem = (matrix * matrix).max_abs_diff(&matrix);
            if !(idem <= DEFAULT_TOL) {
                return Err(Error::InvalidDensity(format!(
                    "pure density must be idempotent (residual {idem:.3e})"
                )));
            }
        }
        Ok(Self { sector, matrix, pure })
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn is_pure(&self) -> bool {
        self.pure
    }

    /// Intrinsic matrix; acts on component rows and has unit trace.
    pub fn intrinsic(&self) -> &CMat2 {
        &self.matrix
    }

    /// Covariant entry array: the intrinsic matrix times the sector sign.
    pub fn covariant(&self) -> CMat2 {
        self.matrix * sector_metric(self.sector)
    }

    /// Intrinsic trace; one for any valid density.
    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Off-diagonal intrinsic entry measuring the basis coherence.
    pub fn coherence(&self) -> C64 {
        self.matrix.get(0, 1)
    }
}

/// Density of one sector piece of a pair state.
pub fn density_from_state(st: &PairState, sector: Sector) -> Result<DensityOperator> {
    density_from_piece(st.sector(sector))
}

/// Density of a single normalized sector state.
pub fn density_from_piece(v: &SectorVector) -> Result<DensityOperator> {
    let deviation = (v.norm_sq() - 1.0).abs();
    if !(deviation <= DEFAULT_TOL) {
        return Err(Error::NotNormalized { deviation });
    }
    let phi = v.components();
    Ok(DensityOperator {
        sector: v.sector(),
        matrix: outer(&phi.conj(), phi),
        pure: true,
    })
}

/// The maximally mixed density: half the identity restriction.
pub fn maximally_mixed(sector: Sector) -> DensityOperator {
    DensityOperator { sector, matrix: CMat2::identity().scale(cr(0.5)), pure: false }
}

/// Shannon term with the continuity convention at zero.
fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// Entropy in bits of a spectrum, clamping away rounding-level negatives.
fn spectrum_entropy(values: &[f64]) -> Result<f64> {
    for &v in values {
        if v < -1e-9 {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {v:.3e}")));
        }
    }
    Ok(-values.iter().map(|&v| plogp(v.max(0.0))).sum::<f64>())
}

/// Von Neumann entropy in bits, from the intrinsic eigenvalues.
pub fn entropy(d: &DensityOperator) -> Result<f64> {
    let eig = eig_hermitian(d.intrinsic())?;
    spectrum_entropy(&eig.values)
}

/// Conjugates a density by the evolution block of its sector. The trace
/// and the spectrum, hence the entropy, are untouched.
pub fn evolve_density(d: &DensityOperator, op: &EvolutionOperator) -> DensityOperator {
    let u = *op.block(d.sector);
    DensityOperator {
        sector: d.sector,
        matrix: u.dagger() * d.matrix * u,
        pure: d.pure,
    }
}

/// Expectation through the density: the metric-contracted trace of the
/// metric, density and observable product. Agrees with the state form.
pub fn density_expectation(d: &DensityOperator, a: &Observable) -> Result<f64> {
    let s = d.sector;
    let residual = pseudo_hermiticity_residual(a.intrinsic(s), s);
    if !(residual <= DEFAULT_TOL) {
        return Err(Error::NotPseudoHermitian { residual });
    }
    Ok((sector_metric(s) * d.matrix * *a.intrinsic(s)).trace().re)
}

/// Normalizes raw components into a unit sector state.
pub fn unit_factor(sector: Sector, components: CVec2) -> Result<SectorVector> {
    let n = components.norm();
    if n == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(SectorVector::new(sector, components.scale(cr(1.0 / n))))
}

/// A product state of several particle and antiparticle slots, all
/// particle slots listed first.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeState {
    factors: Vec<SectorVector>,
    n_plus: usize,
    n_minus: usize,
    amplitude: Vec<C64>,
}

/// Builds a composite state from ordered unit factors. The amplitude
/// tensor is the outer product of the factor components, stored flat with
/// slot zero as the most significant binary index.
pub fn compose(factors: Vec<SectorVector>) -> Result<CompositeState> {
    if factors.is_empty() {
        return Err(Error::ShapeMismatch("at least one factor is required".into()));
    }
    if factors.len() > 16 {
        return Err(Error::ShapeMismatch(format!(
            "{} factors exceed the supported composite size",
            factors.len()
        )));
    }
    let mut seen_minus = false;
    let (mut n_plus, mut n_minus) = (0usize, 0usize);
    for f in &factors {
        match f.sector() {
            Sector::Plus => {
                if seen_minus {
                    return Err(Error::OrderingViolation);
                }
                n_plus += 1;
            }
            Sector::Minus => {
                seen_minus = true;
                n_minus += 1;
            }
        }
        let deviation = (f.norm_sq() - 1.0).abs();
        if !(deviation <= DEFAULT_TOL) {
            return Err(Error::NotNormalized { deviation });
        }
    }
    let mut amplitude = vec![crate::numerics::ONE];
    for f in &factors {
        let comp = f.components();
        let mut next = Vec::with_capacity(amplitude.len() * 2);
        for &a in &amplitude {
            next.push(a * comp[0]);
            next.push(a * comp[1]);
        }
        amplitude = next;
    }
    Ok(CompositeState { factors, n_plus, n_minus, amplitude })
}

impl CompositeState {
    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[SectorVector] {
        &self.factors
    }

    /// Flat amplitude tensor of length `2^(number of slots)`.
    pub fn amplitude(&self) -> &[C64] {
        &self.amplitude
    }

    /// Tensor entry at one binary multi-index, slot zero first.
    pub fn amplitude_at(&self, indices: &[usize]) -> Result<C64> {
        if indices.len() != self.factors.len() {
            return Err(Error::ArityMismatch {
                expected: self.factors.len(),
                got: indices.len(),
            });
        }
        let mut flat = 0usize;
        for &mu in indices {
            if mu > 1 {
                return Err(Error::IndexOutOfRange { index: mu, len: 2 });
            }
            flat = flat * 2 + mu;
        }
        Ok(self.amplitude[flat])
    }
}

/// Expectation of one observable per slot: the product of the per-slot
/// pairings, each taken through that slot's covariant entry array.
pub fn composite_expectation(cs: &CompositeState, obs: &[Observable]) -> Result<C64> {
    if obs.len() != cs.factors.len() {
        return Err(Error::ArityMismatch { expected: cs.factors.len(), got: obs.len() });
    }
    let mut product = crate::numerics::ONE;
    for (f, a) in cs.factors.iter().zip(obs) {
        let s = f.sector();
        let residual = pseudo_hermiticity_residual(a.intrinsic(s), s);
        if !(residual <= DEFAULT_TOL) {
            return Err(Error::NotPseudoHermitian { residual });
        }
        let phi = f.components();
        product *= (*phi * a.covariant(s)).dot_conj(phi);
    }
    Ok(product)
}

/// Expectation of a single observable placed at slot `j` with the identity
/// everywhere else. Each identity slot contributes its sector norm, so the
/// result is the bare slot expectation times a sign counting the remaining
/// antiparticle slots.
pub fn embed_single(cs: &CompositeState, j: usize, a: &Observable) -> Result<C64> {
    if j >= cs.factors.len() {
        return Err(Error::IndexOutOfRange { index: j, len: cs.factors.len() });
    }
    let mut product = crate::numerics::ONE;
    for (k, f) in cs.factors.iter().enumerate() {
        let s = f.sector();
        let phi = f.components();
        if k == j {
            let residual = pseudo_hermiticity_residual(a.intrinsic(s), s);
            if !(residual <= DEFAULT_TOL) {
                return Err(Error::NotPseudoHermitian { residual });
            }
            product *= (*phi * a.covariant(s)).dot_conj(phi);
        } else {
            product *= (*phi * sector_metric(s)).dot_conj(phi);
        }
    }
    Ok(product)
}

/// Contracts the amplitude tensor against a Kronecker product of per-slot
/// covariant entry arrays; the dense-route counterpart of the factorized
/// expectations.
pub fn composite_contraction(cs: &CompositeState, covariant: &[CMat2]) -> Result<C64> {
    if covariant.len() != cs.factors.len() {
        return Err(Error::ArityMismatch { expected: cs.factors.len(), got: covariant.len() });
    }
    if cs.factors.len() > MAX_ASSEMBLED_SLOTS {
        return Err(Error::ShapeMismatch(format!(
            "{} slots exceed the assembled-matrix limit {MAX_ASSEMBLED_SLOTS}",
            cs.factors.len()
        )));
    }
    let mut big = CMatD::identity(1);
    for m in covariant {
        big = big.kron(&CMatD::from_mat2(m));
    }
    let amp = &cs.amplitude;
    let mut acc = ZERO;
    for (r, &ar) in amp.iter().enumerate() {
        for (c, &ac) in amp.iter().enumerate() {
            acc += ar * big.get(r, c) * ac.conj();
        }
    }
    Ok(acc)
}

/// A composite density: one pure factor density per slot, in slot order.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeDensity {
    factors: Vec<DensityOperator>,
}

impl CompositeDensity {
    pub fn new(factors: Vec<DensityOperator>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::ShapeMismatch("at least one factor is required".into()));
        }
        Ok(Self { factors })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[DensityOperator] {
        &self.factors
    }

    pub fn factor(&self, k: usize) -> Result<&DensityOperator> {
        self.factors.get(k).ok_or(Error::IndexOutOfRange { index: k, len: self.factors.len() })
    }
}

/// Per-slot densities of a composite state.
pub fn composite_density(cs: &CompositeState) -> Result<CompositeDensity> {
    let factors = cs
        .factors()
        .iter()
        .map(density_from_piece)
        .collect::<Result<Vec<_>>>()?;
    CompositeDensity::new(factors)
}

/// Trace of the composite density: the product of the factor traces; one
/// for normalized factors.
pub fn composite_trace(cd: &CompositeDensity) -> f64 {
    cd.factors.iter().map(DensityOperator::trace).product()
}

/// Product of the covariant pairings of each factor density against its
/// generating state: the particle slots contribute `+1` and the
/// antiparticle slots `-1`, so the value is `(-1)` to the number of
/// antiparticle slots.
pub fn signed_value(cd: &CompositeDensity, cs: &CompositeState) -> Result<C64> {
    if cd.factors.len() != cs.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} density factors against {} state slots",
            cd.factors.len(),
            cs.len()
        )));
    }
    let mut product = crate::numerics::ONE;
    for (d, f) in cd.factors.iter().zip(cs.factors()) {
        if d.sector() != f.sector() {
            return Err(Error::SectorMismatch { expected: d.sector(), got: f.sector() });
        }
        let phi = f.components();
        product *= (*phi * d.covariant()).dot_conj(phi);
    }
    Ok(product)
}

/// Kronecker assembly of the intrinsic factor matrices.
pub fn assemble_intrinsic(cd: &CompositeDensity) -> Result<CMatD> {
    if cd.factors.len() > MAX_ASSEMBLED_SLOTS {
        return Err(Error::ShapeMismatch(format!(
            "{} slots exceed the assembled-matrix limit {MAX_ASSEMBLED_SLOTS}",
            cd.factors.len()
        )));
    }
    let mut big = CMatD::identity(1);
    for d in &cd.factors {
        big = big.kron(&CMatD::from_mat2(d.intrinsic()));
    }
    Ok(big)
}

/// A partial-trace result: the remaining factors plus the bookkeeping of
/// the dropped slot.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensity {
    /// Densities of the remaining slots, in their original order.
    pub density: CompositeDensity,
    /// Scale attached by the contraction: the metric-inserted pairing of
    /// the dropped state with itself, which is its definite norm and hence
    /// one for a normalized slot in either sector.
    pub scale: f64,
    /// The dropped slot's bare indefinite norm: the sector sign.
    pub dropped_sector_norm: f64,
    /// Trace of the reduction including the scale.
    pub raw_trace: f64,
    /// Trace after dividing the scale back out.
    pub renormalized_trace: f64,
}

/// Traces out one slot of a composite density. The contraction over the
/// dropped slot produces its metric-inserted self-pairing as an overall
/// scale; that pairing is definite, so the scale is one for a normalized
/// slot regardless of its sector. The bare sector sign of the dropped
/// slot is reported alongside.
pub fn partial_trace(cd: &CompositeDensity, slot: usize) -> Result<ReducedDensity> {
    if cd.factors.len() == 1 {
        return Err(Error::LastFactor);
    }
    if slot >= cd.factors.len() {
        return Err(Error::IndexOutOfRange { index: slot, len: cd.factors.len() });
    }
    let dropped = &cd.factors[slot];
    let scale = dropped.trace();
    let dropped_sector_norm = dropped.covariant().trace().re;
    let remaining: Vec<DensityOperator> = cd
        .factors
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != slot)
        .map(|(_, d)| *d)
        .collect();
    let density = CompositeDensity::new(remaining)?;
    let raw_trace = scale * composite_trace(&density);
    let renormalized_trace = raw_trace / scale;
    Ok(ReducedDensity { density, scale, dropped_sector_norm, raw_trace, renormalized_trace })
}

/// Entropy comparison of two composite densities with the same slot
/// structure, from the spectra of their assembled matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    /// Total entropy of the first density.
    pub entropy_a: f64,
    /// Total entropy of the second density.
    pub entropy_b: f64,
    /// Relative entropy of the first with respect to the second; infinite
    /// when the first leaks outside the second's support.
    pub relative_entropy: f64,
    /// Mutual entropy of the first density across the bipartition slot
    /// zero versus the rest; zero for product densities.
    pub mutual_entropy_a: f64,
    /// Subadditivity gap of that bipartition; non-negative.
    pub subadditivity_gap: f64,
    /// Concavity gap of the even mixture of the two densities against the
    /// average of their entropies; non-negative.
    pub concavity_gap: f64,
}

fn assembled_entropy(m: &CMatD) -> Result<f64> {
    let (values, _) = m.eig_hermitian()?;
    spectrum_entropy(&values)
}

/// Computes relative, mutual and mixture entropies for two composite
/// densities over the same slot structure.
pub fn relative_mutual_entropies(
    a: &CompositeDensity,
    b: &CompositeDensity,
) -> Result<EntropyReport> {
    if a.factors.len() != b.factors.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} slots against {}",
            a.factors.len(),
            b.factors.len()
        )));
    }
    for (x, y) in a.factors.iter().zip(&b.factors) {
        if x.sector() != y.sector() {
            return Err(Error::SectorMismatch { expected: x.sector(), got: y.sector() });
        }
    }
    let ma = assemble_intrinsic(a)?;
    let mb = assemble_intrinsic(b)?;
    let entropy_a = assembled_entropy(&ma)?;
    let entropy_b = assembled_entropy(&mb)?;

    // Relative entropy from the two eigensystems; infinite on support leak.
    let (va, ua) = ma.eig_hermitian()?;
    let (vb, ub) = mb.eig_hermitian()?;
    let n = ma.dim();
    let mut cross = 0.0f64;
    let mut leak = 0.0f64;
    for i in 0..n {
        if va[i].max(0.0) <= 0.0 {
            continue;
        }
        for j in 0..n {
            let mut overlap = ZERO;
            for r in 0..n {
                overlap += ua.get(r, i).conj() * ub.get(r, j);
            }
            let w = va[i].max(0.0) * overlap.norm_sqr();
            if vb[j].max(0.0) <= 1e-12 {
                leak += w;
            } else {
                cross -= w * vb[j].max(0.0).log2();
            }
        }
    }
    let relative_entropy = if leak > 1e-9 { f64::INFINITY } else { -entropy_a + cross };

    // Bipartition slot zero versus the rest for the first density.
    let s_first = entropy(&a.factors[0])?;
    let rest = CompositeDensity::new(a.factors[1..].to_vec());
    let s_rest = match rest {
        Ok(r) => assembled_entropy(&assemble_intrinsic(&r)?)?,
        Err(_) => 0.0,
    };
    let mutual_entropy_a = s_first + s_rest - entropy_a;
    let subadditivity_gap = mutual_entropy_a;

    // Concavity of the even mixture of the two assembled matrices.
    let mix = ma.scale(cr(0.5)).add(&mb.scale(cr(0.5)));
    let s_mix = assembled_entropy(&mix)?;
    let concavity_gap = s_mix - 0.5 * (entropy_a + entropy_b);

    Ok(EntropyReport {
        entropy_a,
        entropy_b,
        relative_entropy,
        mutual_entropy_a,
        subadditivity_gap,
        concavity_gap,
    })
}
