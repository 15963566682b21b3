//! Projective measurements on sector states: outcome weights, state
//! reduction, completeness, and slot-wise measurement of composites.
//!
//! The two projectors of a sector carry covariant entries `diag(&pm;1, 0)`
//! and `diag(0, &pm;1)`; their intrinsic matrices are the plain basis
//! projectors with unit trace in both sectors. Reduction keeps the phase
//! of the projected component and rescales by the square root of its
//! weight.

use crate::cartan::{adjoint_metric, sector_metric, Sector, SectorVector};
use crate::density::{compose, CompositeState, DensityOperator};
use crate::error::{Error, Result};
use crate::numerics::{cr, CMat2, CVec2, DEFAULT_TOL};
use crate::observables::{spectral_decomposition, Observable};
use crate::states::PairState;

/// One of the two projective-measurement operators of a sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveMeasurement {
    sector: Sector,
    outcome: usize,
    matrix: CMat2,
}

impl ProjectiveMeasurement {
    /// Builds the projector for one outcome label (0 or 1).
    pub fn new(sector: Sector, outcome: usize) -> Result<Self> {
        if outcome > 1 {
            return Err(Error::IndexOutOfRange { index: outcome, len: 2 });
        }
        let sign = cr(sector.sign());
        let mut matrix = CMat2::zero();
        matrix.set(outcome, outcome, sign);
        Ok(Self { sector, outcome, matrix })
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn outcome(&self) -> usize {
        self.outcome
    }

    /// Covariant entry array: the sector sign at the outcome slot.
    pub fn covariant(&self) -> CMat2 {
        self.matrix
    }

    /// Intrinsic matrix: the plain basis projector onto the outcome slot.
    pub fn intrinsic(&self) -> CMat2 {
        self.matrix * sector_metric(self.sector)
    }

    /// Intrinsic trace; one in both sectors.
    pub fn trace(&self) -> f64 {
        self.intrinsic().trace().re
    }
}

/// Both projectors of a sector, outcome order (0, 1).
pub fn measurement_pair(sector: Sector) -> [ProjectiveMeasurement; 2] {
    [
        ProjectiveMeasurement::new(sector, 0).expect("outcome 0 is valid"),
        ProjectiveMeasurement::new(sector, 1).expect("outcome 1 is valid"),
    ]
}

/// Largest deviation from the projector algebra over all four index
/// pairs: products reproduce the second projector on the diagonal pairs
/// and vanish on the mixed ones.
pub fn orthogonality_residual(sector: Sector) -> f64 {
    let pair = measurement_pair(sector);
    let mut worst: f64 = 0.0;
    for mu in 0..2 {
        for nu in 0..2 {
            let product = pair[mu].intrinsic() * pair[nu].intrinsic();
            let expected = if mu == nu { pair[nu].intrinsic() } else { CMat2::zero() };
            worst = worst.max(product.max_abs_diff(&expected));
        }
    }
    worst
}

/// The signed raw pairing of a state with one projector: the Born weight
/// of the outcome times the sector sign.
pub fn measurement_pairing(st: &PairState, sector: Sector, outcome: usize) -> Result<f64> {
    let pi = ProjectiveMeasurement::new(sector, outcome)?;
    let phi = st.sector(sector).components();
    Ok((*phi * pi.covariant()).dot_conj(phi).re)
}

fn normalized_weights(components: &CVec2) -> Result<(f64, f64)> {
    let w0 = components[0].norm_sqr();
    let w1 = components[1].norm_sqr();
    let total = w0 + w1;
    let deviation = (total - 1.0).abs();
    if !(deviation <= DEFAULT_TOL) {
        return Err(Error::NotNormalized { deviation });
    }
    Ok((w0 / total, w1 / total))
}

/// Outcome probabilities of a projective measurement on one sector piece.
/// The sector sign carried by the raw pairings is stripped and the pair is
/// normalized against its own sum, so a repeated measurement reports its
/// confirmed outcome with probability exactly one.
pub fn measure_probabilities(st: &PairState, sector: Sector) -> Result<(f64, f64)> {
    normalized_weights(st.sector(sector).components())
}

/// The unnormalized projection of a state onto one outcome: the selected
/// component on its basis direction.
pub fn projected_component(st: &PairState, sector: Sector, outcome: usize) -> Result<SectorVector> {
    if outcome > 1 {
        return Err(Error::IndexOutOfRange { index: outcome, len: 2 });
    }
    let phi = st.sector(sector).components();
    let mut out = CVec2::zero();
    out[outcome] = phi[outcome];
    Ok(SectorVector::new(sector, out))
}

fn reduce_components(components: &CVec2, outcome: usize) -> Result<CVec2> {
    if outcome > 1 {
        return Err(Error::IndexOutOfRange { index: outcome, len: 2 });
    }
    let weight = components[outcome].norm_sqr();
    if weight <= DEFAULT_TOL {
        return Err(Error::ZeroProbabilityOutcome);
    }
    let mut out = CVec2::zero();
    out[outcome] = components[outcome].scale(1.0 / weight.sqrt());
    Ok(out)
}

/// Post-measurement state: the projected component rescaled by the inverse
/// square root of its weight. The component's phase survives.
pub fn reduce_state(st: &PairState, sector: Sector, outcome: usize) -> Result<SectorVector> {
    let out = reduce_components(st.sector(sector).components(), outcome)?;
    Ok(SectorVector::new(sector, out))
}

/// Completeness of the projective family through a density: the trace of
/// the density against the basis decomposition of the sector identity,
/// which recovers the total outcome weight.
pub fn completeness_check(d: &DensityOperator) -> f64 {
    let s = d.sector();
    let identity_decomposition = sector_metric(s) * adjoint_metric(s);
    (*d.intrinsic() * identity_decomposition).trace().re
}

/// Outcome weights at one slot of a composite state, normalized the same
/// way as the single-slot measurement.
pub fn slot_probabilities(cs: &CompositeState, slot: usize) -> Result<(f64, f64)> {
    let factors = cs.factors();
    if slot >= factors.len() {
        return Err(Error::IndexOutOfRange { index: slot, len: factors.len() });
    }
    normalized_weights(factors[slot].components())
}

/// Measures one slot of a composite state and collapses it to the reduced
/// slot state; every other factor is untouched and the amplitude tensor is
/// rebuilt from the new factor list.
pub fn composite_measure(cs: &CompositeState, slot: usize, outcome: usize) -> Result<CompositeState> {
    let factors = cs.factors();
    if slot >= factors.len() {
        return Err(Error::IndexOutOfRange { index: slot, len: factors.len() });
    }
    let reduced = reduce_components(factors[slot].components(), outcome)?;
    let mut next = factors.to_vec();
    next[slot] = SectorVector::new(factors[slot].sector(), reduced);
    compose(next)
}

/// A projector onto one eigenvalue of an observable, assembled from its
/// spectral decomposition; degenerate eigenvalues yield one full-rank
/// projector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralProjector {
    pub eigenvalue: f64,
    /// Intrinsic matrix of the projector.
    pub matrix: CMat2,
    pub rank: usize,
}

/// Groups the spectral dyads of an observable by eigenvalue. A degenerate
/// spectrum collapses to a single full-rank projector, which acts as the
/// identity: measuring such an observable reduces nothing.
pub fn spectral_projectors(a: &Observable, sector: Sector) -> Result<Vec<SpectralProjector>> {
    let dec = spectral_decomposition(a, sector)?;
    let mut projectors: Vec<SpectralProjector> = Vec::new();
    for k in 0..2 {
        match projectors
            .iter_mut()
            .find(|p| (p.eigenvalue - dec.eigenvalues[k]).abs() <= 1e-8)
        {
            Some(p) => {
                p.matrix = p.matrix + dec.dyads[k];
                p.rank += 1;
            }
            None => projectors.push(SpectralProjector {
                eigenvalue: dec.eigenvalues[k],
                matrix: dec.dyads[k],
                rank: 1,
            }),
        }
    }
    Ok(projectors)
}

/// Applies a spectral projector to a sector state without renormalizing.
pub fn project_state(p: &SpectralProjector, v: &SectorVector) -> SectorVector {
    SectorVector::new(v.sector(), *v.components() * p.matrix)
}
