//! Deterministic random generators for the property tests and the
//! verification suite. Every generator draws from a caller-provided seeded
//! stream, so filtered and repeated runs see identical samples.

use crate::cartan::Sector;
use crate::density::DensityOperator;
use crate::error::Result;
use crate::group::{dyn_element, DynElement, LorentzParam, Translation};
use crate::numerics::{c, cr, C64, CMat2, CVec2};
use crate::observables::Observable;
use crate::states::{make_pair_state, PairState};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fixed-algorithm generator so seeds mean the same samples everywhere.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex number with both parts uniform on the unit interval around zero.
pub fn random_complex(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Component row with norm bounded away from zero.
pub fn random_cvec2(rng: &mut ChaCha8Rng) -> CVec2 {
    loop {
        let v = CVec2::new([random_complex(rng), random_complex(rng)]).expect("finite draw");
        if v.norm() > 0.1 {
            return v;
        }
    }
}

/// Pair state with independently drawn, normalized sector pieces.
pub fn random_pair_state(rng: &mut ChaCha8Rng) -> PairState {
    make_pair_state(random_cvec2(rng), random_cvec2(rng)).expect("nonzero draws")
}

fn phase(angle: f64) -> C64 {
    c(angle.cos(), angle.sin())
}

/// Haar-style 2x2 unitary from the angle-phase parametrization.
pub fn random_unitary2(rng: &mut ChaCha8Rng) -> CMat2 {
    let tau = std::f64::consts::TAU;
    let theta: f64 = rng.gen_range(0.0..tau);
    let alpha: f64 = rng.gen_range(0.0..tau);
    let beta: f64 = rng.gen_range(0.0..tau);
    let delta: f64 = rng.gen_range(0.0..tau);
    unitary_from_angles(theta, alpha, beta, delta)
}

/// Special unitary 2x2 matrix (unit determinant).
pub fn random_su2(rng: &mut ChaCha8Rng) -> CMat2 {
    let tau = std::f64::consts::TAU;
    let theta: f64 = rng.gen_range(0.0..tau);
    let alpha: f64 = rng.gen_range(0.0..tau);
    let beta: f64 = rng.gen_range(0.0..tau);
    unitary_from_angles(theta, alpha, beta, 0.0)
}

fn unitary_from_angles(theta: f64, alpha: f64, beta: f64, delta: f64) -> CMat2 {
    let (s, co) = theta.sin_cos();
    CMat2::from_rows([
        [phase(delta + alpha) * cr(co), phase(delta + beta) * cr(s)],
        [-phase(delta - beta) * cr(s), phase(delta - alpha) * cr(co)],
    ])
}

/// Invertible 2x2 matrix rescaled to unit determinant, with conditioning
/// bounded by the rejection threshold on the raw determinant.
pub fn random_sl2c(rng: &mut ChaCha8Rng) -> CMat2 {
    loop {
        let raw = CMat2::from_rows([
            [random_complex(rng), random_complex(rng)],
            [random_complex(rng), random_complex(rng)],
        ]);
        let det = raw.det();
        if det.norm() < 0.1 {
            continue;
        }
        let root = det.sqrt();
        return raw.scale(cr(1.0) / root);
    }
}

/// Unit-determinant parameter wrapper over [`random_sl2c`].
pub fn random_lorentz_param(rng: &mut ChaCha8Rng) -> Result<LorentzParam> {
    LorentzParam::new(random_sl2c(rng))
}

/// Random Hermitian 2x2 matrix.
pub fn random_hermitian2(rng: &mut ChaCha8Rng) -> CMat2 {
    let raw = CMat2::from_rows([
        [random_complex(rng), random_complex(rng)],
        [random_complex(rng), random_complex(rng)],
    ]);
    (raw + raw.dagger()).scale(cr(0.5))
}

/// Observable with independent Hermitian intrinsic blocks.
pub fn random_observable(rng: &mut ChaCha8Rng) -> Result<Observable> {
    Observable::custom(random_hermitian2(rng), random_hermitian2(rng), "sampled")
}

/// Mixed-by-construction density: a random spectrum conjugated by a random
/// unitary.
pub fn random_density(rng: &mut ChaCha8Rng, sector: Sector) -> Result<DensityOperator> {
    let p: f64 = rng.gen_range(0.05..0.95);
    let u = random_unitary2(rng);
    let matrix = u.dagger() * CMat2::diag_re([p, 1.0 - p]) * u;
    DensityOperator::from_intrinsic(sector, matrix, false)
}

/// Hermitian involution usable as a translation image: either a signed
/// identity or a unit direction contracted with the Pauli vector.
pub fn random_admissible_w(rng: &mut ChaCha8Rng) -> CMat2 {
    if rng.gen_bool(0.25) {
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        return CMat2::diag_re([sign, sign]);
    }
    let z: f64 = rng.gen_range(-1.0f64..1.0);
    let azimuth: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let planar = (1.0 - z * z).max(0.0).sqrt();
    let (x, y) = (planar * azimuth.cos(), planar * azimuth.sin());
    CMat2::from_rows([[cr(z), c(x, -y)], [c(x, y), cr(-z)]])
}

/// Non-null translation with components of moderate size.
pub fn random_translation(rng: &mut ChaCha8Rng) -> Translation {
    loop {
        let t: [f64; 4] = [
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        ];
        let square = t[0] * t[0] - t[1] * t[1] - t[2] * t[2] - t[3] * t[3];
        if square.abs() > 0.1 {
            return Translation::from_components(t).expect("non-null by construction");
        }
    }
}

/// Dynamical element from a random special unitary parameter, dressed by an
/// admissible translation image half of the time.
pub fn random_dyn_element(rng: &mut ChaCha8Rng) -> Result<DynElement> {
    let beta = random_su2(rng);
    if rng.gen_bool(0.5) {
        let w = random_admissible_w(rng);
        dyn_element(&beta, Some(&w))
    } else {
        dyn_element(&beta, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::STRICT_TOL;

    #[test]
    fn seeded_streams_are_reproducible() {
        let mut a = seeded_rng(11);
        let mut b = seeded_rng(11);
        for _ in 0..16 {
            assert_eq!(random_complex(&mut a), random_complex(&mut b));
        }
    }

    #[test]
    fn unitary_draws_satisfy_their_constraints() {
        let mut rng = seeded_rng(3);
        for _ in 0..32 {
            let u = random_unitary2(&mut rng);
            assert!(u.unitarity_residual() <= STRICT_TOL);
            let s = random_su2(&mut rng);
            assert!(s.unitarity_residual() <= STRICT_TOL);
            assert!((s.det() - cr(1.0)).norm() <= STRICT_TOL);
        }
    }

    #[test]
    fn structured_draws_satisfy_their_constraints() {
        let mut rng = seeded_rng(5);
        for _ in 0..32 {
            let a = random_sl2c(&mut rng);
            assert!((a.det() - cr(1.0)).norm() <= 1e-12);
            let h = random_hermitian2(&mut rng);
            assert!(h.hermiticity_residual() <= STRICT_TOL);
            let w = random_admissible_w(&mut rng);
            assert!(w.hermiticity_residual() <= STRICT_TOL);
            assert!((w * w).max_abs_diff(&CMat2::identity()) <= STRICT_TOL);
            let t = random_translation(&mut rng);
            assert!(t.minkowski_sq().abs() > 0.1);
            let d = random_dyn_element(&mut rng).unwrap();
            assert!(d.star_dagger_residual() <= STRICT_TOL);
        }
    }

    #[test]
    fn density_draws_are_valid_and_mixed() {
        let mut rng = seeded_rng(7);
        for _ in 0..16 {
            let d = random_density(&mut rng, Sector::Plus).unwrap();
            assert!((d.trace() - 1.0).abs() <= STRICT_TOL);
            assert!(!d.is_pure());
        }
    }
}
