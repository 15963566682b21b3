//! Geometry of the twofold state space: a four-component complex space that
//! splits into a positive (particle) and a negative (antiparticle) sector
//! under an indefinite metric, together with the per-sector definite metrics
//! and the index gymnastics connecting intrinsic, covariant and adjoint
//! matrix entries.
//!
//! States are row vectors and operators act from the right; a ket is the
//! conjugate of the corresponding bra. All inner products conjugate their
//! second argument.

use crate::error::{Error, Result};
use crate::numerics::{cr, CMat2, CMat4, CVec2, CVec4, C64, ONE, ZERO};

/// The two metric sectors of the state space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// Positive-norm (particle) sector.
    Plus,
    /// Negative-norm (antiparticle) sector.
    Minus,
}

impl Sector {
    /// The sign carried by this sector's metric: `+1` or `-1`.
    pub fn sign(self) -> f64 {
        match self {
            Sector::Plus => 1.0,
            Sector::Minus => -1.0,
        }
    }

    pub fn other(self) -> Sector {
        match self {
            Sector::Plus => Sector::Minus,
            Sector::Minus => Sector::Plus,
        }
    }

    /// Component offset of this sector inside a four-component vector.
    pub fn offset(self) -> usize {
        match self {
            Sector::Plus => 0,
            Sector::Minus => 2,
        }
    }
}

/// The indefinite metric `diag(1, 1, -1, -1)` on the full space.
pub fn metric4() -> CMat4 {
    CMat4::diag_re([1.0, 1.0, -1.0, -1.0])
}

/// The sector-swapping metric `antidiag(I, I)` used by the alternative
/// group realization.
pub fn swap_metric4() -> CMat4 {
    let mut m = CMat4::zero();
    for k in 0..2 {
        m.set(k, k + 2, ONE);
        m.set(k + 2, k, ONE);
    }
    m
}

/// Covariant sector metric: `+I` on the Plus sector, `-I` on the Minus one.
pub fn sector_metric(sector: Sector) -> CMat2 {
    CMat2::diag_re([sector.sign(); 2])
}

/// Adjoint-space metric; its entries coincide with the covariant ones.
pub fn adjoint_metric(sector: Sector) -> CMat2 {
    sector_metric(sector)
}

/// The definite pairing kernel on either sector (the 2x2 identity).
pub fn hilbert_metric2() -> CMat2 {
    CMat2::identity()
}

/// The definite pairing kernel on the full space (the 4x4 identity).
pub fn hilbert_metric4() -> CMat4 {
    CMat4::identity()
}

/// Intrinsic matrix of the sector projector: identity on the chosen sector,
/// zero on the other.
pub fn sector_projector(sector: Sector) -> CMat4 {
    let mut m = CMat4::zero();
    let o = sector.offset();
    m.set(o, o, ONE);
    m.set(o + 1, o + 1, ONE);
    m
}

/// A four-component state of the full space (a bra row vector).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartanVector {
    components: CVec4,
}

impl CartanVector {
    pub fn new(components: CVec4) -> Self {
        Self { components }
    }

    pub fn from_entries(entries: [C64; 4]) -> Result<Self> {
        Ok(Self { components: CVec4::new(entries)? })
    }

    pub fn components(&self) -> &CVec4 {
        &self.components
    }

    /// Builds the full vector out of two sector pieces.
    pub fn assemble(plus: &SectorVector, minus: &SectorVector) -> Result<Self> {
        if plus.sector != Sector::Plus {
            return Err(Error::SectorMismatch { expected: Sector::Plus, got: plus.sector });
        }
        if minus.sector != Sector::Minus {
            return Err(Error::SectorMismatch { expected: Sector::Minus, got: minus.sector });
        }
        let mut v = CVec4::zero();
        for k in 0..2 {
            v[k] = plus.components[k];
            v[k + 2] = minus.components[k];
        }
        Ok(Self { components: v })
    }
}

/// A two-component state living in a single sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorVector {
    sector: Sector,
    components: CVec2,
}

impl SectorVector {
    pub fn new(sector: Sector, components: CVec2) -> Self {
        Self { sector, components }
    }

    pub fn from_entries(sector: Sector, entries: [C64; 2]) -> Result<Self> {
        Ok(Self { sector, components: CVec2::new(entries)? })
    }

    pub fn basis(sector: Sector, k: usize) -> Self {
        Self { sector, components: CVec2::basis(k) }
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn components(&self) -> &CVec2 {
        &self.components
    }

    pub fn norm_sq(&self) -> f64 {
        self.components.norm_sq()
    }

    /// Applies an intrinsic operator matrix from the right.
    pub fn apply(&self, m: &CMat2) -> Self {
        Self { sector: self.sector, components: self.components * *m }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { sector: self.sector, components: self.components.scale(s) }
    }
}

/// Definite inner product of full-space vectors (second argument conjugated).
pub fn hilbert_inner(a: &CartanVector, b: &CartanVector) -> C64 {
    a.components.dot_conj(&b.components)
}

/// Indefinite inner product of full-space vectors: the Plus components pair
/// positively, the Minus ones negatively.
pub fn indefinite_inner(a: &CartanVector, b: &CartanVector) -> C64 {
    let (x, y) = (&a.components, &b.components);
    let mut acc = ZERO;
    for k in 0..2 {
        acc += x[k] * y[k].conj();
    }
    for k in 2..4 {
        acc -= x[k] * y[k].conj();
    }
    acc
}

/// Extracts the sector piece of a full-space vector.
pub fn project(v: &CartanVector, sector: Sector) -> SectorVector {
    let o = sector.offset();
    let mut p = CVec2::zero();
    for k in 0..2 {
        p[k] = v.components[o + k];
    }
    SectorVector { sector, components: p }
}

/// Embeds a sector piece back into the full space, zero on the other sector.
pub fn embed(v: &SectorVector) -> CartanVector {
    let mut full = CVec4::zero();
    let o = v.sector.offset();
    for k in 0..2 {
        full[o + k] = v.components[k];
    }
    CartanVector { components: full }
}

/// Sector inner product `a^mu (g_s)_{mu nu} conj(b^nu)`; definite on Plus,
/// negative definite on Minus.
pub fn sector_inner(a: &SectorVector, b: &SectorVector) -> Result<C64> {
    if a.sector != b.sector {
        return Err(Error::SectorMismatch { expected: a.sector, got: b.sector });
    }
    Ok(a.components.dot_conj(&b.components) * cr(a.sector.sign()))
}

/// Definite inner product of two same-sector pieces.
pub fn sector_hilbert_inner(a: &SectorVector, b: &SectorVector) -> Result<C64> {
    if a.sector != b.sector {
        return Err(Error::SectorMismatch { expected: a.sector, got: b.sector });
    }
    Ok(a.components.dot_conj(&b.components))
}

/// Lowers the index of a sector vector with the covariant sector metric.
pub fn lower_index(v: &SectorVector) -> CVec2 {
    v.components.scale(cr(v.sector.sign()))
}

/// Raises a lowered component pair with the adjoint metric; inverse of
/// `lower_index`.
pub fn raise_index(lowered: &CVec2, sector: Sector) -> SectorVector {
    SectorVector { sector, components: lowered.scale(cr(sector.sign())) }
}

/// The four 2x2 blocks of a full-space operator matrix, indexed by
/// (domain sector, range sector).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blocks {
    pub pp: CMat2,
    pub pm: CMat2,
    pub mp: CMat2,
    pub mm: CMat2,
}

/// Splits a 4x4 matrix into its sector blocks.
pub fn block_decompose(m: &CMat4) -> Blocks {
    let sub = |ro: usize, co: usize| {
        let mut b = CMat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                b.set(r, c, m.get(ro + r, co + c));
            }
        }
        b
    };
    Blocks { pp: sub(0, 0), pm: sub(0, 2), mp: sub(2, 0), mm: sub(2, 2) }
}

/// Reassembles sector blocks into a 4x4 matrix; inverse of `block_decompose`.
pub fn block_assemble(b: &Blocks) -> CMat4 {
    let mut m = CMat4::zero();
    for r in 0..2 {
        for c in 0..2 {
            m.set(r, c, b.pp.get(r, c));
            m.set(r, c + 2, b.pm.get(r, c));
            m.set(r + 2, c, b.mp.get(r, c));
            m.set(r + 2, c + 2, b.mm.get(r, c));
        }
    }
    m
}

/// A sector restriction of a block-diagonal operator, stored by its
/// intrinsic (mixed-index) matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Restriction {
    sector: Sector,
    matrix: CMat2,
    label: String,
}

impl Restriction {
    pub fn new(sector: Sector, matrix: CMat2, label: impl Into<String>) -> Self {
        Self { sector, matrix, label: label.into() }
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Intrinsic mixed-index entries; these act directly on component rows.
    pub fn intrinsic(&self) -> &CMat2 {
        &self.matrix
    }

    /// Covariant entries: intrinsic entries contracted with the sector
    /// metric, which flips the sign on the Minus sector.
    pub fn covariant(&self) -> CMat2 {
        self.matrix.scale(cr(self.sector.sign()))
    }

    /// Adjoint entries; they coincide with the covariant ones because the
    /// raising and lowering kernels carry identical sign factors.
    pub fn adjoint_entries(&self) -> CMat2 {
        self.covariant()
    }

    /// Trace formed by contracting covariant entries with the adjoint
    /// metric; equals the plain intrinsic trace.
    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Composes two restrictions: `self` acts first, `then` second.
    pub fn compose(&self, then: &Restriction) -> Result<Restriction> {
        if self.sector != then.sector {
            return Err(Error::SectorMismatch { expected: self.sector, got: then.sector });
        }
        Ok(Restriction {
            sector: self.sector,
            matrix: self.matrix * then.matrix,
            label: format!("{}*{}", self.label, then.label),
        })
    }
}

/// Restricts a block-diagonal 4x4 operator matrix to one sector.
pub fn restrict(m: &CMat4, sector: Sector) -> Result<Restriction> {
    let blocks = block_decompose(m);
    let leak = blocks.pm.max_abs().max(blocks.mp.max_abs());
    if leak > 0.0 {
        return Err(Error::NotBlockDiagonal { leak });
    }
    let matrix = match sector {
        Sector::Plus => blocks.pp,
        Sector::Minus => blocks.mm,
    };
    Ok(Restriction::new(sector, matrix, "restriction"))
}

/// Sums the basis dyads weighted by the adjoint metric; returns the
/// intrinsic matrix of the identity restriction. A ket-bra array
/// `|e_mu> B^{mu nu} <e_nu|` has intrinsic matrix `g . B`, so the sum
/// contracts the sector metric with the adjoint metric.
pub fn completeness(sector: Sector) -> CMat2 {
    sector_metric(sector) * adjoint_metric(sector)
}

/// Entry matrix `conj(v_mu) v_nu` of the dyad `|v><v|`, built from lowered
/// components. These are simultaneously the dyad's covariant entries.
pub fn outer_projector(v: &SectorVector) -> CMat2 {
    let lowered = lower_index(v);
    let mut m = CMat2::zero();
    for mu in 0..2 {
        for nu in 0..2 {
            m.set(mu, nu, lowered[mu].conj() * lowered[nu]);
        }
    }
    m
}

/// Intrinsic matrix of the dyad `|v><v|`, whose right action on a bra `w`
/// produces `<w|v>_g <v|`.
pub fn outer_projector_intrinsic(v: &SectorVector) -> CMat2 {
    sector_metric(v.sector()) * outer_projector(v)
}

/// Metric-contracted trace of a restriction.
pub fn restriction_trace(r: &Restriction) -> C64 {
    r.trace()
}

/// Metric-contracted trace of a matrix given by covariant entries: the
/// covariant diagonal contracted with the adjoint metric.
pub fn covariant_trace(m: &CMat2, sector: Sector) -> C64 {
    m.trace() * cr(sector.sign())
}
