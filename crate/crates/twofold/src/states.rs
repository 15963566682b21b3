//! Particle-antiparticle pair states and their evolution.
//!
//! A pair state carries one unit-norm piece per sector. Its full vector then
//! has definite norm two, indefinite norm zero, and sector norms `+1` and
//! `-1`; the squared component moduli are the Born weights of projective
//! outcomes within each sector.

use crate::cartan::{
    indefinite_inner, sector_inner, CartanVector, Sector, SectorVector,
};
use crate::error::{Error, Result};
use crate::numerics::{cr, CMat2, CMat4, CVec2, C64, DEFAULT_TOL};

/// A normalized two-sector pair state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairState {
    plus: SectorVector,
    minus: SectorVector,
}

impl PairState {
    pub fn sector(&self, sector: Sector) -> &SectorVector {
        match sector {
            Sector::Plus => &self.plus,
            Sector::Minus => &self.minus,
        }
    }

    /// The assembled four-component vector.
    pub fn full(&self) -> CartanVector {
        CartanVector::assemble(&self.plus, &self.minus).expect("pieces carry fixed sectors")
    }

    /// Definite norm squared of the full vector (two for a pair state).
    pub fn hilbert_norm_sq(&self) -> f64 {
        self.plus.norm_sq() + self.minus.norm_sq()
    }

    /// Indefinite norm of the full vector (zero for a pair state).
    pub fn indefinite_norm(&self) -> C64 {
        indefinite_inner(&self.full(), &self.full())
    }

    /// Sector norm: `+1` on Plus, `-1` on Minus for a pair state.
    pub fn sector_norm(&self, sector: Sector) -> C64 {
        let v = self.sector(sector);
        sector_inner(v, v).expect("same sector by construction")
    }

    /// Replaces one sector piece, renormalizing it.
    pub fn with_piece(&self, piece: &SectorVector) -> Result<PairState> {
        let (plus, minus) = match piece.sector() {
            Sector::Plus => (*piece.components(), *self.minus.components()),
            Sector::Minus => (*self.plus.components(), *piece.components()),
        };
        make_pair_state(plus, minus)
    }
}

/// Builds a pair state from raw sector components, normalizing each piece to
/// unit definite norm.
pub fn make_pair_state(plus: CVec2, minus: CVec2) -> Result<PairState> {
    let normalize = |v: CVec2, sector: Sector| -> Result<SectorVector> {
        let n = v.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(SectorVector::new(sector, v.scale(cr(1.0 / n))))
    };
    Ok(PairState {
        plus: normalize(plus, Sector::Plus)?,
        minus: normalize(minus, Sector::Minus)?,
    })
}

/// Born weights of the two basis outcomes within a sector.
///
/// The weights are squared moduli of the sector components; contracting
/// with the definite kernel or with the sector metric gives the same
/// values because the metric signs cancel inside the modulus.
pub fn born_probabilities(state: &PairState, sector: Sector) -> (f64, f64) {
    let v = state.sector(sector).components();
    (v[0].norm_sqr(), v[1].norm_sqr())
}

/// A two-block evolution operator between parameter values `tau0` and `tau`.
///
/// Each block is unitary and acts on its own sector; the assembled
/// four-by-four matrix preserves both pairings, but no determinant
/// constraint is imposed, so membership in the special pseudo-unitary
/// group is reported rather than required.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionOperator {
    u_plus: CMat2,
    u_minus: CMat2,
    tau0: f64,
    tau: f64,
}

impl EvolutionOperator {
    pub fn new(u_plus: CMat2, u_minus: CMat2, tau0: f64, tau: f64) -> Result<Self> {
        for block in [&u_plus, &u_minus] {
            let residual = block.unitarity_residual();
            if residual > DEFAULT_TOL {
                return Err(Error::NotUnitary { residual });
            }
        }
        if !tau0.is_finite() || !tau.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self { u_plus, u_minus, tau0, tau })
    }

    pub fn block(&self, sector: Sector) -> &CMat2 {
        match sector {
            Sector::Plus => &self.u_plus,
            Sector::Minus => &self.u_minus,
        }
    }

    pub fn tau0(&self) -> f64 {
        self.tau0
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Covariant assembly of the two blocks into a four-by-four matrix.
    pub fn matrix4(&self) -> CMat4 {
        let mut m = CMat4::zero();
        for r in 0..2 {
            for c in 0..2 {
                m.set(r, c, self.u_plus.get(r, c));
                m.set(r + 2, c + 2, self.u_minus.get(r, c));
            }
        }
        m
    }

    /// Reports how far the assembled matrix is from the special intersection
    /// of the pseudo-unitary and unitary groups: generic evolution operators
    /// preserve both pairings but miss the unit-determinant condition.
    pub fn membership_report(&self) -> EvolutionMembership {
        let m = self.matrix4();
        let g = crate::cartan::metric4();
        let metric_residual = (m * g * m.dagger()).max_abs_diff(&g);
        let unitarity_residual = m.unitarity_residual();
        let det_deviation = (m.det() - cr(1.0)).norm();
        EvolutionMembership { metric_residual, unitarity_residual, det_deviation }
    }

    /// Composition: first `self`, then `later`.
    pub fn then(&self, later: &EvolutionOperator) -> Result<EvolutionOperator> {
        EvolutionOperator::new(
            self.u_plus * later.u_plus,
            self.u_minus * later.u_minus,
            self.tau0,
            later.tau,
        )
    }
}

/// Proximity of an evolution operator to the special pseudo-unitary
/// intersection; `det_deviation` is generically nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionMembership {
    pub metric_residual: f64,
    pub unitarity_residual: f64,
    pub det_deviation: f64,
}

/// Evolves a pair state: each sector row is multiplied by its block while
/// the basis stays fixed.
pub fn evolve(state: &PairState, op: &EvolutionOperator) -> PairState {
    let plus = state.sector(Sector::Plus).apply(op.block(Sector::Plus));
    let minus = state.sector(Sector::Minus).apply(op.block(Sector::Minus));
    PairState { plus, minus }
}
