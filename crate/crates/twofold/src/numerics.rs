//! Dense complex linear algebra sized for twofold systems: fixed 2x2 and 4x4
//! matrices and vectors, plus a small dynamic matrix used when composite
//! tensors outgrow the fixed sizes. Everything is plain value types; no
//! allocation happens in the fixed-size paths.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default tolerance for derived floating-point identities.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Tight tolerance for identities that hold to rounding error.
pub const STRICT_TOL: f64 = 1e-12;

/// Shorthand complex constructor.
pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Real number as a complex scalar.
pub const fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub const ZERO: C64 = c(0.0, 0.0);
pub const ONE: C64 = c(1.0, 0.0);
pub const IM: C64 = c(0.0, 1.0);

/// Row vector with `N` complex components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVec<const N: usize> {
    entries: [C64; N],
}

pub type CVec2 = CVec<2>;
pub type CVec4 = CVec<4>;

impl<const N: usize> CVec<N> {
    /// Builds a vector, rejecting non-finite components.
    pub fn new(entries: [C64; N]) -> Result<Self> {
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { entries })
    }

    pub fn zero() -> Self {
        Self { entries: [ZERO; N] }
    }

    /// Canonical basis vector with a one in slot `k`.
    pub fn basis(k: usize) -> Self {
        let mut entries = [ZERO; N];
        entries[k] = ONE;
        Self { entries }
    }

    pub fn entries(&self) -> &[C64; N] {
        &self.entries
    }

    pub fn conj(&self) -> Self {
        Self { entries: self.entries.map(|z| z.conj()) }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { entries: self.entries.map(|z| z * s) }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut entries = [ZERO; N];
        for k in 0..N {
            entries[k] = self.entries[k] + other.entries[k];
        }
        Self { entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut entries = [ZERO; N];
        for k in 0..N {
            entries[k] = self.entries[k] - other.entries[k];
        }
        Self { entries }
    }

    /// Sum of squared component moduli.
    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `sum_k self[k] * conj(other[k])`.
    pub fn dot_conj(&self, other: &Self) -> C64 {
        let mut acc = ZERO;
        for k in 0..N {
            acc += self.entries[k] * other.entries[k].conj();
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..N {
            worst = worst.max((self.entries[k] - other.entries[k]).norm());
        }
        worst
    }
}

impl<const N: usize> std::ops::Index<usize> for CVec<N> {
    type Output = C64;
    fn index(&self, k: usize) -> &C64 {
        &self.entries[k]
    }
}

impl<const N: usize> std::ops::IndexMut<usize> for CVec<N> {
    fn index_mut(&mut self, k: usize) -> &mut C64 {
        &mut self.entries[k]
    }
}

/// Square matrix with `N` x `N` complex entries, row-major.
///
/// Vectors are rows and operators act from the right, so `v * m` is the
/// fundamental action and `m1 * m2` composes "first m1, then m2" when used
/// that way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat<const N: usize> {
    entries: [[C64; N]; N],
}

pub type CMat2 = CMat<2>;
pub type CMat4 = CMat<4>;

impl<const N: usize> CMat<N> {
    /// Builds a matrix from rows, rejecting non-finite entries.
    pub fn new(entries: [[C64; N]; N]) -> Result<Self> {
        for row in &entries {
            if row.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self { entries })
    }

    /// Infallible constructor for compile-time literals known to be finite.
    pub const fn from_rows(entries: [[C64; N]; N]) -> Self {
        Self { entries }
    }

    pub fn zero() -> Self {
        Self { entries: [[ZERO; N]; N] }
    }

    pub fn identity() -> Self {
        let mut entries = [[ZERO; N]; N];
        for k in 0..N {
            entries[k][k] = ONE;
        }
        Self { entries }
    }

    pub fn diag(values: [C64; N]) -> Self {
        let mut entries = [[ZERO; N]; N];
        for k in 0..N {
            entries[k][k] = values[k];
        }
        Self { entries }
    }

    pub fn diag_re(values: [f64; N]) -> Self {
        Self::diag(values.map(cr))
    }

    pub fn get(&self, r: usize, col: usize) -> C64 {
        self.entries[r][col]
    }

    pub fn set(&mut self, r: usize, col: usize, v: C64) {
        self.entries[r][col] = v;
    }

    pub fn row(&self, r: usize) -> CVec<N> {
        CVec { entries: self.entries[r] }
    }

    pub fn col(&self, c: usize) -> CVec<N> {
        let mut entries = [ZERO; N];
        for r in 0..N {
            entries[r] = self.entries[r][c];
        }
        CVec { entries }
    }

    pub fn rows(&self) -> &[[C64; N]; N] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut entries = [[ZERO; N]; N];
        for r in 0..N {
            for c in 0..N {
                entries[c][r] = self.entries[r][c];
            }
        }
        Self { entries }
    }

    pub fn conj(&self) -> Self {
        let mut entries = [[ZERO; N]; N];
        for r in 0..N {
            for c in 0..N {
                entries[r][c] = self.entries[r][c].conj();
            }
        }
        Self { entries }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut entries = [[ZERO; N]; N];
        for r in 0..N {
            for c in 0..N {
                entries[c][r] = self.entries[r][c].conj();
            }
        }
        Self { entries }
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut entries = self.entries;
        for row in &mut entries {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        Self { entries }
    }

    pub fn trace(&self) -> C64 {
        let mut acc = ZERO;
        for k in 0..N {
            acc += self.entries[k][k];
        }
        acc
    }

    /// Determinant via LU decomposition with partial pivoting.
    pub fn det(&self) -> C64 {
        let mut a = self.entries;
        let mut det = ONE;
        for k in 0..N {
            let mut pivot = k;
            for r in k + 1..N {
                if a[r][k].norm() > a[pivot][k].norm() {
                    pivot = r;
                }
            }
            if a[pivot][k].norm() == 0.0 {
                return ZERO;
            }
            if pivot != k {
                a.swap(pivot, k);
                det = -det;
            }
            det *= a[k][k];
            for r in k + 1..N {
                let f = a[r][k] / a[k][k];
                for c in k..N {
                    let sub = f * a[k][c];
                    a[r][c] -= sub;
                }
            }
        }
        det
    }

    pub fn max_abs(&self) -> f64 {
        let mut worst = 0.0f64;
        for row in &self.entries {
            for v in row {
                worst = worst.max(v.norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..N {
            for c in 0..N {
                worst = worst.max((self.entries[r][c] - other.entries[r][c]).norm());
            }
        }
        worst
    }

    /// Largest entry deviation from the conjugate transpose.
    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    /// Largest entry deviation of `m * m†` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        (*self * self.dagger()).max_abs_diff(&Self::identity())
    }

    /// Inverse via Gauss-Jordan elimination; `None` for singular input.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.entries;
        let mut inv = Self::identity().entries;
        for k in 0..N {
            let mut pivot = k;
            for r in k + 1..N {
                if a[r][k].norm() > a[pivot][k].norm() {
                    pivot = r;
                }
            }
            if a[pivot][k].norm() < 1e-300 {
                return None;
            }
            a.swap(pivot, k);
            inv.swap(pivot, k);
            let p = a[k][k];
            for c in 0..N {
                a[k][c] /= p;
                inv[k][c] /= p;
            }
            for r in 0..N {
                if r == k {
                    continue;
                }
                let f = a[r][k];
                for c in 0..N {
                    let (s1, s2) = (f * a[k][c], f * inv[k][c]);
                    a[r][c] -= s1;
                    inv[r][c] -= s2;
                }
            }
        }
        Some(Self { entries: inv })
    }
}

impl<const N: usize> std::ops::Add for CMat<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut entries = self.entries;
        for r in 0..N {
            for c in 0..N {
                entries[r][c] += rhs.entries[r][c];
            }
        }
        Self { entries }
    }
}

impl<const N: usize> std::ops::Sub for CMat<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut entries = self.entries;
        for r in 0..N {
            for c in 0..N {
                entries[r][c] -= rhs.entries[r][c];
            }
        }
        Self { entries }
    }
}

impl<const N: usize> std::ops::Neg for CMat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(cr(-1.0))
    }
}

impl<const N: usize> std::ops::Mul for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut entries = [[ZERO; N]; N];
        for r in 0..N {
            for c in 0..N {
                let mut acc = ZERO;
                for k in 0..N {
                    acc += self.entries[r][k] * rhs.entries[k][c];
                }
                entries[r][c] = acc;
            }
        }
        Self { entries }
    }
}

/// Row vector times matrix: the right action of an operator on a state.
impl<const N: usize> std::ops::Mul<CMat<N>> for CVec<N> {
    type Output = CVec<N>;
    fn mul(self, m: CMat<N>) -> CVec<N> {
        let mut entries = [ZERO; N];
        for c in 0..N {
            let mut acc = ZERO;
            for k in 0..N {
                acc += self.entries[k] * m.entries[k][c];
            }
            entries[c] = acc;
        }
        CVec { entries }
    }
}

/// Outer product `a_r * b_c` (no conjugation; conjugate an argument first
/// when an adjoint pairing is wanted).
pub fn outer<const N: usize>(a: &CVec<N>, b: &CVec<N>) -> CMat<N> {
    let mut entries = [[ZERO; N]; N];
    for r in 0..N {
        for c in 0..N {
            entries[r][c] = a[r] * b[c];
        }
    }
    CMat { entries }
}

/// Kronecker product of two 2x2 matrices in row-major block order.
pub fn kron(a: &CMat2, b: &CMat2) -> CMat4 {
    let mut entries = [[ZERO; 4]; 4];
    for ar in 0..2 {
        for ac in 0..2 {
            for br in 0..2 {
                for bc in 0..2 {
                    entries[2 * ar + br][2 * ac + bc] = a.get(ar, ac) * b.get(br, bc);
                }
            }
        }
    }
    CMat4::from_rows(entries)
}

/// Entrywise closeness of two matrices.
pub fn approx_eq<const N: usize>(a: &CMat<N>, b: &CMat<N>, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol
}

/// Eigendecomposition of a Hermitian matrix: `values` descending and the
/// columns of `vectors` the matching orthonormal eigenvectors, so that
/// `m = vectors * diag(values) * vectors†`.
#[derive(Debug, Clone)]
pub struct Eigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: CMat<N>,
}

/// Diagonalizes a Hermitian matrix by cyclic Jacobi rotations.
///
/// Eigenvalues are ordered descending; each eigenvector is phase-normalized
/// so its first component of non-negligible modulus is positive real, and
/// exact ties are ordered by the normalized component sequence.
pub fn eig_hermitian<const N: usize>(m: &CMat<N>) -> Result<Eigen<N>> {
    let residual = m.hermiticity_residual();
    if residual > DEFAULT_TOL {
        return Err(Error::NotHermitian { residual });
    }
    let mut a = vec![ZERO; N * N];
    for r in 0..N {
        for c in 0..N {
            a[r * N + c] = m.get(r, c);
        }
    }
    let mut v = vec![ZERO; N * N];
    jacobi_hermitian(&mut a, &mut v, N);
    let mut values = [0.0f64; N];
    let mut vectors = CMat::<N>::zero();
    let order = sorted_eigen_order(&a, &mut v, N);
    for (slot, &k) in order.iter().enumerate() {
        values[slot] = a[k * N + k].re;
        for r in 0..N {
            vectors.set(r, slot, v[r * N + k]);
        }
    }
    Ok(Eigen { values, vectors })
}

/// In-place complex Jacobi on a row-major Hermitian buffer of dimension `n`.
/// On return `a` is (numerically) diagonal and `v` holds the accumulated
/// unitary with eigenvector columns.
fn jacobi_hermitian(a: &mut [C64], v: &mut [C64], n: usize) {
    for k in 0..n {
        v[k * n + k] = ONE;
    }
    // Symmetrize first so rounding asymmetry cannot bias the rotations.
    for r in 0..n {
        for c in r + 1..n {
            let m = (a[r * n + c] + a[c * n + r].conj()) * cr(0.5);
            a[r * n + c] = m;
            a[c * n + r] = m.conj();
        }
        a[r * n + r] = cr(a[r * n + r].re);
    }
    let scale: f64 = (0..n * n).map(|i| a[i].norm_sqr()).sum::<f64>().sqrt().max(1e-300);
    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|r| (0..n).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[r * n + c].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let gamma = a[p * n + q];
                let gam2 = gamma.norm_sqr();
                if gam2.sqrt() <= 1e-18 * scale {
                    continue;
                }
                let alpha = a[p * n + p].re;
                let beta = a[q * n + q].re;
                let d = (alpha - beta) / 2.0;
                let r = d.hypot(gam2.sqrt());
                // Stable root offsets of the pivot 2x2 block relative to alpha.
                let lam1_off = if d >= 0.0 { gam2 / (r + d) } else { r - d };
                let lam2_off = if d >= 0.0 { -(r + d) } else { -gam2 / (r - d) };
                let n1 = (gam2 + lam1_off * lam1_off).sqrt();
                let n2 = (gam2 + lam2_off * lam2_off).sqrt();
                // Unitary rotation columns (eigenvectors of the pivot block).
                let x1 = gamma / n1;
                let y1 = cr(lam1_off / n1);
                let x2 = gamma / n2;
                let y2 = cr(lam2_off / n2);
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = x1.conj() * apk + y1.conj() * aqk;
                    a[q * n + k] = x2.conj() * apk + y2.conj() * aqk;
                    a[k * n + p] = a[p * n + k].conj();
                    a[k * n + q] = a[q * n + k].conj();
                }
                a[p * n + p] = cr(alpha + lam1_off);
                a[q * n + q] = cr(alpha + lam2_off);
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * x1 + vkq * y1;
                    v[k * n + q] = vkp * x2 + vkq * y2;
                }
            }
        }
    }
}

/// Phase-normalizes eigenvector columns and returns column indices ordered
/// by descending eigenvalue with a deterministic tie-break.
fn sorted_eigen_order(a: &[C64], v: &mut [C64], n: usize) -> Vec<usize> {
    for k in 0..n {
        let lead = (0..n).map(|r| v[r * n + k]).find(|z| z.norm() > 1e-12);
        if let Some(z) = lead {
            let phase = z.conj() / z.norm();
            for r in 0..n {
                v[r * n + k] *= phase;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let (li, lj) = (a[i * n + i].re, a[j * n + j].re);
        lj.partial_cmp(&li).unwrap().then_with(|| {
            for r in 0..n {
                let (zi, zj) = (v[r * n + i], v[r * n + j]);
                let c = zi
                    .re
                    .partial_cmp(&zj.re)
                    .unwrap()
                    .then(zi.im.partial_cmp(&zj.im).unwrap());
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    order
}

/// Heap-backed square complex matrix for composite-system contractions.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatD {
    n: usize,
    data: Vec<C64>,
}

impl CMatD {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for k in 0..n {
            m.data[k * n + k] = ONE;
        }
        m
    }

    pub fn from_mat2(m: &CMat2) -> Self {
        let mut out = Self::zeros(2);
        for r in 0..2 {
            for c in 0..2 {
                out.set(r, c, m.get(r, c));
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.n + c] = v;
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|k| self.get(k, k)).sum()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (na, nb) = (self.n, other.n);
        let mut out = Self::zeros(na * nb);
        for ar in 0..na {
            for ac in 0..na {
                for br in 0..nb {
                    for bc in 0..nb {
                        out.set(nb * ar + br, nb * ac + bc, self.get(ar, ac) * other.get(br, bc));
                    }
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    /// Hermitian eigendecomposition; same ordering contract as the
    /// fixed-size `eig_hermitian`.
    pub fn eig_hermitian(&self) -> Result<(Vec<f64>, CMatD)> {
        let residual = self.hermiticity_residual();
        if residual > DEFAULT_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let n = self.n;
        let mut a = self.data.clone();
        let mut v = vec![ZERO; n * n];
        jacobi_hermitian(&mut a, &mut v, n);
        let order = sorted_eigen_order(&a, &mut v, n);
        let mut values = Vec::with_capacity(n);
        let mut vectors = CMatD::zeros(n);
        for (slot, &k) in order.iter().enumerate() {
            values.push(a[k * n + k].re);
            for r in 0..n {
                vectors.set(r, slot, v[r * n + k]);
            }
        }
        Ok((values, vectors))
    }
}
