//! Complex linear algebra for 2- and 4-dimensional Hilbert spaces: pure and
//! mixed qubit states, Bloch-sphere geometry, entropies, distances, and
//! seeded random-state sampling.
//!
//! Everything here is a plain value type; operations are pure functions.
//! The only stateful object is [`SeededRng`], and parallel code is expected
//! to give each worker its own generator via [`SeededRng::derive`].

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Absolute tolerance for complex equality and invariant checks.
pub const TOL: f64 = 1e-12;

/// Eigenvalues below this contribute zero to entropy sums.
const ENTROPY_FLOOR: f64 = 1e-15;

/// Support detection threshold for relative entropy: an eigenvalue of sigma
/// below `SUPPORT_EPS` with overlap above `OVERLAP_EPS` means infinite
/// relative entropy.
const SUPPORT_EPS: f64 = 1e-12;
const OVERLAP_EPS: f64 = 1e-10;

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

// ---------------------------------------------------------------------------
// Small complex matrices
// ---------------------------------------------------------------------------

/// A raw 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[C_ZERO; 2]; 2]);

    pub fn identity() -> Mat2 {
        Mat2([[C_ONE, C_ZERO], [C_ZERO, C_ONE]])
    }

    pub fn pauli_x() -> Mat2 {
        Mat2([[C_ZERO, C_ONE], [C_ONE, C_ZERO]])
    }

    pub fn pauli_y() -> Mat2 {
        Mat2([
            [C_ZERO, Complex64::new(0.0, -1.0)],
            [Complex64::new(0.0, 1.0), C_ZERO],
        ])
    }

    pub fn pauli_z() -> Mat2 {
        Mat2([[C_ONE, C_ZERO], [C_ZERO, -C_ONE]])
    }

    /// Outer product |ket><bra|.
    pub fn outer(ket: [Complex64; 2], bra: [Complex64; 2]) -> Mat2 {
        let mut m = [[C_ZERO; 2]; 2];
        for (i, k) in ket.iter().enumerate() {
            for (j, b) in bra.iter().enumerate() {
                m[i][j] = k * b.conj();
            }
        }
        Mat2(m)
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        let mut m = self.0;
        for row in &mut m {
            for e in row {
                *e *= s;
            }
        }
        Mat2(m)
    }

    pub fn adjoint(&self) -> Mat2 {
        Mat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        let mut m = [[C_ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(m)
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        let mut m = self.0;
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] += rhs.0[i][j];
            }
        }
        Mat2(m)
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        let mut m = self.0;
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] -= rhs.0[i][j];
            }
        }
        Mat2(m)
    }

    pub fn apply(&self, ket: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.0[0][0] * ket[0] + self.0[0][1] * ket[1],
            self.0[1][0] * ket[0] + self.0[1][1] * ket[1],
        ]
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (self.0[0][1] - self.0[1][0].conj()).norm() <= tol
            && self.0[0][0].im.abs() <= tol
            && self.0[1][1].im.abs() <= tol
    }

    /// Frobenius norm of self - rhs.
    pub fn dist(&self, rhs: &Mat2) -> f64 {
        let d = self.sub(rhs);
        d.0.iter()
            .flatten()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Eigenvalues of a Hermitian 2x2 matrix, descending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let half_diff = 0.5 * (a - d);
        let disc = (half_diff * half_diff + self.0[0][1].norm_sqr()).sqrt();
        let mid = 0.5 * (a + d);
        [mid + disc, mid - disc]
    }

    /// Eigenpairs of a Hermitian 2x2 matrix, eigenvalue-descending, with
    /// normalized eigenvectors.
    pub fn hermitian_eigen(&self) -> [(f64, [Complex64; 2]); 2] {
        let [l0, l1] = self.hermitian_eigenvalues();
        let a = self.0[0][0].re;
        let b = self.0[0][1];
        if b.norm() < 1e-300 {
            // Already diagonal; order by eigenvalue.
            let d = self.0[1][1].re;
            if a >= d {
                return [(l0, [C_ONE, C_ZERO]), (l1, [C_ZERO, C_ONE])];
            }
            return [(l0, [C_ZERO, C_ONE]), (l1, [C_ONE, C_ZERO])];
        }
        let vec_for = |l: f64| {
            let v = [b, Complex64::new(l - a, 0.0)];
            let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            [v[0] / n, v[1] / n]
        };
        [(l0, vec_for(l0)), (l1, vec_for(l1))]
    }
}

/// A raw 4x4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[Complex64; 4]; 4]);

impl Mat4 {
    pub const ZERO: Mat4 = Mat4([[C_ZERO; 4]; 4]);

    pub fn identity() -> Mat4 {
        let mut m = [[C_ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = C_ONE;
        }
        Mat4(m)
    }

    /// Kronecker product of two 2x2 matrices (first factor = slower index).
    pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
        let mut m = [[C_ZERO; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                    }
                }
            }
        }
        Mat4(m)
    }

    pub fn adjoint(&self) -> Mat4 {
        let mut m = [[C_ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = self.0[j][i].conj();
            }
        }
        Mat4(m)
    }

    pub fn mul(&self, rhs: &Mat4) -> Mat4 {
        let mut m = [[C_ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut s = C_ZERO;
                for k in 0..4 {
                    s += self.0[i][k] * rhs.0[k][j];
                }
                m[i][j] = s;
            }
        }
        Mat4(m)
    }

    pub fn apply(&self, v: [Complex64; 4]) -> [Complex64; 4] {
        let mut out = [C_ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            for k in 0..4 {
                *o += self.0[i][k] * v[k];
            }
        }
        out
    }

    /// Max-abs deviation of U'U from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { C_ONE } else { C_ZERO };
                worst = worst.max((p.0[i][j] - want).norm());
            }
        }
        worst
    }
}

// ---------------------------------------------------------------------------
// Pure states
// ---------------------------------------------------------------------------

/// A normalized pure qubit state `amp0|0> + amp1|1>`.
///
/// Global phase is physically irrelevant; equality of the geometry is best
/// judged through [`PureQubit::bloch`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit {
    pub amp0: Complex64,
    pub amp1: Complex64,
}

impl PureQubit {
    /// Builds a state from amplitudes, requiring unit norm within [`TOL`].
    pub fn new(amp0: Complex64, amp1: Complex64) -> Result<PureQubit> {
        let n = amp0.norm_sqr() + amp1.norm_sqr();
        if (n - 1.0).abs() > TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(PureQubit { amp0, amp1 })
    }

    /// Builds a state from arbitrary amplitudes by rescaling to unit norm.
    pub fn normalized(amp0: Complex64, amp1: Complex64) -> Result<PureQubit> {
        let n = (amp0.norm_sqr() + amp1.norm_sqr()).sqrt();
        if n < 1e-150 {
            return Err(Error::ZeroVector);
        }
        Ok(PureQubit {
            amp0: amp0 / n,
            amp1: amp1 / n,
        })
    }

    pub fn zero() -> PureQubit {
        PureQubit {
            amp0: C_ONE,
            amp1: C_ZERO,
        }
    }

    pub fn one() -> PureQubit {
        PureQubit {
            amp0: C_ZERO,
            amp1: C_ONE,
        }
    }

    pub fn plus() -> PureQubit {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        PureQubit { amp0: h, amp1: h }
    }

    pub fn minus() -> PureQubit {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        PureQubit { amp0: h, amp1: -h }
    }

    /// The state at polar angle `theta` and azimuth `phi` on the Bloch sphere:
    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
    pub fn from_bloch_angles(theta: f64, phi: f64) -> PureQubit {
        PureQubit {
            amp0: Complex64::new((theta / 2.0).cos(), 0.0),
            amp1: Complex64::from_polar((theta / 2.0).sin(), phi),
        }
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &PureQubit) -> Complex64 {
        self.amp0.conj() * other.amp0 + self.amp1.conj() * other.amp1
    }

    /// Overlap magnitude `|<self|other>|`.
    pub fn overlap(&self, other: &PureQubit) -> f64 {
        self.inner(other).norm()
    }

    pub fn amps(&self) -> [Complex64; 2] {
        [self.amp0, self.amp1]
    }

    /// Projector |psi><psi|.
    pub fn projector(&self) -> Mat2 {
        Mat2::outer(self.amps(), self.amps())
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            m: self.projector(),
        }
    }

    /// A state orthogonal to this one (phase convention `(-a1*, a0*)`).
    pub fn orthogonal(&self) -> PureQubit {
        PureQubit {
            amp0: -self.amp1.conj(),
            amp1: self.amp0.conj(),
        }
    }

    pub fn bloch(&self) -> BlochVector {
        let cross = self.amp0.conj() * self.amp1;
        BlochVector {
            x: 2.0 * cross.re,
            y: 2.0 * cross.im,
            z: self.amp0.norm_sqr() - self.amp1.norm_sqr(),
        }
    }
}

// ---------------------------------------------------------------------------
// Bloch vectors
// ---------------------------------------------------------------------------

/// A point in the Bloch ball; `|v| = 1` for pure states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ORIGIN: BlochVector = BlochVector {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> BlochVector {
        BlochVector { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, o: &BlochVector) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn add(&self, o: &BlochVector) -> BlochVector {
        BlochVector::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn sub(&self, o: &BlochVector) -> BlochVector {
        BlochVector::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }

    pub fn scale(&self, s: f64) -> BlochVector {
        BlochVector::new(s * self.x, s * self.y, s * self.z)
    }

    pub fn dist(&self, o: &BlochVector) -> f64 {
        self.sub(o).norm()
    }

    /// Unit vector in the same direction; errors on (near-)zero input.
    pub fn unit(&self) -> Result<BlochVector> {
        let n = self.norm();
        if n < 1e-150 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(1.0 / n))
    }

    /// The pure state pointing along this direction (input need not be unit).
    pub fn to_pure(&self) -> Result<PureQubit> {
        let u = self.unit()?;
        let theta = u.z.clamp(-1.0, 1.0).acos();
        let phi = u.y.atan2(u.x);
        Ok(PureQubit::from_bloch_angles(theta, phi))
    }
}

// ---------------------------------------------------------------------------
// Density matrices
// ---------------------------------------------------------------------------

/// A 2x2 density matrix: Hermitian, unit trace, positive semidefinite
/// (eigenvalues >= -1e-12 tolerated for rounding).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: Mat2,
}

impl DensityMatrix {
    /// Validates the density-operator invariants.
    pub fn new(m: Mat2) -> Result<DensityMatrix> {
        if !m.is_hermitian(TOL) {
            return Err(Error::InvalidDensity("not Hermitian"));
        }
        if (m.trace().re - 1.0).abs() > TOL {
            return Err(Error::InvalidDensity("trace differs from 1"));
        }
        let rho = DensityMatrix { m };
        if rho.bloch().norm() > 1.0 + 2.0 * TOL {
            return Err(Error::InvalidDensity("negative eigenvalue"));
        }
        Ok(rho)
    }

    /// Repairs harmless rounding: symmetrizes and renormalizes the trace.
    /// For internal use on matrices that are valid states up to float error.
    pub(crate) fn sanitize(m: Mat2) -> DensityMatrix {
        let h = m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0));
        let t = h.trace().re;
        DensityMatrix {
            m: h.scale(Complex64::new(1.0 / t, 0.0)),
        }
    }

    pub fn maximally_mixed() -> DensityMatrix {
        DensityMatrix {
            m: Mat2::identity().scale(Complex64::new(0.5, 0.0)),
        }
    }

    pub fn from_pure(psi: &PureQubit) -> DensityMatrix {
        psi.density()
    }

    /// `(I + v . sigma) / 2`; errors if `|v| > 1 + 1e-9`.
    pub fn from_bloch(v: &BlochVector) -> Result<DensityMatrix> {
        let n = v.norm();
        if n > 1.0 + 1e-9 {
            return Err(Error::BlochNormExceedsOne(n));
        }
        let m = Mat2([
            [
                Complex64::new(0.5 * (1.0 + v.z), 0.0),
                Complex64::new(0.5 * v.x, -0.5 * v.y),
            ],
            [
                Complex64::new(0.5 * v.x, 0.5 * v.y),
                Complex64::new(0.5 * (1.0 - v.z), 0.0),
            ],
        ]);
        Ok(DensityMatrix { m })
    }

    /// Convex mixture `p a + (1-p) b`.
    pub fn mix(p: f64, a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
        let m =
            a.m.scale(Complex64::new(p, 0.0))
                .add(&b.m.scale(Complex64::new(1.0 - p, 0.0)));
        Ok(DensityMatrix { m })
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m.0[i][j]
    }

    /// Bloch map: `x = 2 Re rho01, y = 2 Im rho10, z = rho00 - rho11`.
    pub fn bloch(&self) -> BlochVector {
        BlochVector {
            x: 2.0 * self.m.0[0][1].re,
            y: 2.0 * self.m.0[1][0].im,
            z: self.m.0[0][0].re - self.m.0[1][1].re,
        }
    }

    /// `tr rho^2 = (1 + r^2) / 2`.
    pub fn purity(&self) -> f64 {
        let m = &self.m.0;
        m[0][0].re * m[0][0].re + m[1][1].re * m[1][1].re + 2.0 * m[0][1].norm_sqr()
    }

    /// Eigen-decomposition: `[(lambda+, v+), (lambda-, v-)]` with
    /// `lambda+ >= lambda-`. Rounding may leave `lambda-` slightly negative.
    pub fn eigen(&self) -> [(f64, PureQubit); 2] {
        let v = self.bloch();
        let r = v.norm();
        if r < 1e-15 {
            return [(0.5, PureQubit::zero()), (0.5, PureQubit::one())];
        }
        let theta = (v.z / r).clamp(-1.0, 1.0).acos();
        let phi = v.y.atan2(v.x);
        let plus = PureQubit::from_bloch_angles(theta, phi);
        [
            (0.5 * (1.0 + r), plus),
            (0.5 * (1.0 - r), plus.orthogonal()),
        ]
    }

    /// Von Neumann entropy in bits, `-sum lambda_i log2 lambda_i`.
    pub fn von_neumann_entropy(&self) -> f64 {
        self.eigen()
            .iter()
            .map(|(l, _)| entropy_term_bits(*l))
            .sum()
    }

    /// Fidelity-free closeness check used by tests: max-abs entry difference.
    pub fn approx_eq(&self, other: &DensityMatrix, tol: f64) -> bool {
        self.m.dist(&other.m) <= tol
    }
}

fn entropy_term_bits(lambda: f64) -> f64 {
    if lambda < ENTROPY_FLOOR {
        0.0
    } else {
        -lambda * lambda.log2()
    }
}

/// Trace distance `1/2 tr |a - b|`, evaluated through the eigenvalues of the
/// difference matrix. For qubits this equals half the Euclidean Bloch
/// distance; tests cross-check the two routes.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let d = a.m.sub(&b.m);
    let [l0, l1] = d.hermitian_eigenvalues();
    0.5 * (l0.abs() + l1.abs())
}

/// Relative entropy `S(rho || sigma) = tr rho log2 rho - tr rho log2 sigma`
/// in bits. Returns `f64::INFINITY` when the support of `rho` leaks outside
/// the support of `sigma` (sigma eigenvalue below 1e-12 with overlap above
/// 1e-10).
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let mut s = 0.0;
    for (l, _) in rho.eigen() {
        let l = l.max(0.0);
        if l >= ENTROPY_FLOOR {
            s += l * l.log2();
        }
    }
    for (mu, w) in sigma.eigen() {
        let q = overlap_weight(rho, &w);
        if mu < SUPPORT_EPS {
            if q > OVERLAP_EPS {
                return f64::INFINITY;
            }
            continue;
        }
        s -= q * mu.log2();
    }
    // Clamp tiny negative rounding; relative entropy is non-negative.
    s.max(0.0)
}

/// `<w| rho |w>`.
fn overlap_weight(rho: &DensityMatrix, w: &PureQubit) -> f64 {
    let ket = w.amps();
    let applied = rho.m.apply(ket);
    (ket[0].conj() * applied[0] + ket[1].conj() * applied[1]).re
}

// ---------------------------------------------------------------------------
// Two-qubit pure states
// ---------------------------------------------------------------------------

/// Which tensor factor to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// A normalized two-qubit pure state over `{|00>, |01>, |10>, |11>}`,
/// first factor = system, second factor = ancilla/detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitPure {
    pub amps: [Complex64; 4],
}

impl TwoQubitPure {
    pub fn new(amps: [Complex64; 4]) -> Result<TwoQubitPure> {
        let n: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (n - 1.0).abs() > TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(TwoQubitPure { amps })
    }

    pub fn normalized(amps: [Complex64; 4]) -> Result<TwoQubitPure> {
        let n: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if n < 1e-150 {
            return Err(Error::ZeroVector);
        }
        let mut out = amps;
        for a in &mut out {
            *a /= n;
        }
        Ok(TwoQubitPure { amps: out })
    }

    pub fn from_product(first: &PureQubit, second: &PureQubit) -> TwoQubitPure {
        let a = first.amps();
        let b = second.amps();
        TwoQubitPure {
            amps: [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]],
        }
    }

    /// Reduced state of the kept subsystem.
    pub fn partial_trace(&self, keep: Subsystem) -> DensityMatrix {
        let a = &self.amps;
        let idx = |s: usize, e: usize| match keep {
            Subsystem::First => 2 * s + e,
            Subsystem::Second => 2 * e + s,
        };
        let mut m = [[C_ZERO; 2]; 2];
        for s in 0..2 {
            for sp in 0..2 {
                let mut acc = C_ZERO;
                for e in 0..2 {
                    acc += a[idx(s, e)] * a[idx(sp, e)].conj();
                }
                m[s][sp] = acc;
            }
        }
        DensityMatrix::sanitize(Mat2(m))
    }
}

// ---------------------------------------------------------------------------
// Seeded randomness
// ---------------------------------------------------------------------------

/// Reproducible random source: a ChaCha8 generator addressed by
/// `(seed, stream)`. Identical `(seed, stream)` yields bit-identical output
/// on every platform. Parallel workers derive independent streams with
/// [`SeededRng::derive`], so results do not depend on worker count.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> SeededRng {
        SeededRng::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> SeededRng {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        SeededRng {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Child generator for worker `index`; deterministic in
    /// `(seed, parent stream, index)` and independent of scheduling.
    pub fn derive(&self, index: u64) -> SeededRng {
        SeededRng::with_stream(self.seed, mix64(self.stream, index))
    }

    /// Standard complex Gaussian (re and im each N(0, 1)) via Box-Muller.
    pub fn complex_normal(&mut self) -> Complex64 {
        let u1: f64 = loop {
            let u: f64 = self.inner.gen();
            if u > 1e-300 {
                break u;
            }
        };
        let r = (-2.0 * u1.ln()).sqrt();
        let th = TAU * self.inner.gen::<f64>();
        Complex64::new(r * th.cos(), r * th.sin())
    }

    pub fn uniform(&mut self) -> f64 {
        self.inner.gen()
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

/// SplitMix64-style combiner for stream derivation.
fn mix64(a: u64, b: u64) -> u64 {
    let mut z = a ^ b
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Haar-uniform pure qubit: two independent standard complex Gaussians,
/// normalized. Bloch vectors of the output are uniform on the unit sphere.
pub fn haar_pure_qubit(rng: &mut SeededRng) -> PureQubit {
    loop {
        let a0 = rng.complex_normal();
        let a1 = rng.complex_normal();
        if let Ok(psi) = PureQubit::normalized(a0, a1) {
            return psi;
        }
    }
}

/// Uniform direction on the unit sphere (the Bloch image of a Haar ket).
pub fn uniform_sphere_vector(rng: &mut SeededRng) -> BlochVector {
    haar_pure_qubit(rng).bloch()
}

/// The mixed-state sampling measure for [`random_mixed_qubit_with`].
///
/// For qubits both constructions induce the same distribution (flat on the
/// Bloch ball); they are kept separate so one can cross-check the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedMeasure {
    /// Normalized `G G'` for a 2x2 complex Ginibre matrix `G`.
    HilbertSchmidt,
    /// Partial trace of a Haar-uniform two-qubit pure state.
    PartialTrace,
}

/// Hilbert-Schmidt random mixed qubit (the default measure).
pub fn random_mixed_qubit(rng: &mut SeededRng) -> DensityMatrix {
    random_mixed_qubit_with(MixedMeasure::HilbertSchmidt, rng)
}

pub fn random_mixed_qubit_with(measure: MixedMeasure, rng: &mut SeededRng) -> DensityMatrix {
    match measure {
        MixedMeasure::HilbertSchmidt => {
            let g = Mat2([
                [rng.complex_normal(), rng.complex_normal()],
                [rng.complex_normal(), rng.complex_normal()],
            ]);
            let w = g.mul(&g.adjoint());
            DensityMatrix::sanitize(w)
        }
        MixedMeasure::PartialTrace => {
            let amps = [
                rng.complex_normal(),
                rng.complex_normal(),
                rng.complex_normal(),
                rng.complex_normal(),
            ];
            match TwoQubitPure::normalized(amps) {
                Ok(psi) => psi.partial_trace(Subsystem::First),
                Err(_) => random_mixed_qubit_with(measure, rng),
            }
        }
    }
}

/// Haar-like random 2x2 unitary: a Haar column plus its orthogonal companion
/// with a uniform relative phase (global phase is irrelevant for the adjoint
/// action used in tests).
pub fn haar_unitary2(rng: &mut SeededRng) -> Mat2 {
    let c0 = haar_pure_qubit(rng);
    let c1 = c0.orthogonal();
    let phase = Complex64::from_polar(1.0, TAU * rng.uniform());
    Mat2([[c0.amp0, c1.amp0 * phase], [c0.amp1, c1.amp1 * phase]])
}

/// Haar-distributed 4x4 unitary via Gram-Schmidt on a complex Ginibre matrix
/// with the phase convention fixed by positive diagonal R entries.
pub fn haar_unitary4(rng: &mut SeededRng) -> Mat4 {
    loop {
        let mut cols = [[C_ZERO; 4]; 4];
        for col in &mut cols {
            for e in col.iter_mut() {
                *e = rng.complex_normal();
            }
        }
        if let Some(u) = gram_schmidt4(cols) {
            return u;
        }
    }
}

/// Orthonormalizes the given column vectors; `None` if nearly dependent.
fn gram_schmidt4(mut cols: [[Complex64; 4]; 4]) -> Option<Mat4> {
    for i in 0..4 {
        for j in 0..i {
            let proj: Complex64 = (0..4).map(|k| cols[j][k].conj() * cols[i][k]).sum();
            for k in 0..4 {
                let sub = proj * cols[j][k];
                cols[i][k] -= sub;
            }
        }
        let n: f64 = cols[i].iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if n < 1e-8 {
            return None;
        }
        for e in &mut cols[i] {
            *e /= n;
        }
    }
    let mut m = [[C_ZERO; 4]; 4];
    for (j, col) in cols.iter().enumerate() {
        for (i, e) in col.iter().enumerate() {
            m[i][j] = *e;
        }
    }
    Some(Mat4(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bloch_map_conventions() {
        assert_abs_diff_eq!(
            DensityMatrix::maximally_mixed().bloch().norm(),
            0.0,
            epsilon = TOL
        );
        let z = PureQubit::zero().density().bloch();
        assert_abs_diff_eq!(z.z, 1.0, epsilon = TOL);
        assert_abs_diff_eq!(z.x, 0.0, epsilon = TOL);
        let p = PureQubit::plus().density().bloch();
        assert_abs_diff_eq!(p.x, 1.0, epsilon = TOL);
        assert_abs_diff_eq!(p.z, 0.0, epsilon = TOL);
    }

    #[test]
    fn density_from_bloch_inverse() {
        let rho = DensityMatrix::from_bloch(&BlochVector::ORIGIN).unwrap();
        assert!(rho.approx_eq(&DensityMatrix::maximally_mixed(), TOL));
        let one = DensityMatrix::from_bloch(&BlochVector::new(0.0, 0.0, -1.0)).unwrap();
        assert!(one.approx_eq(&PureQubit::one().density(), TOL));

        // On-sphere vector gives a pure state.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rho = DensityMatrix::from_bloch(&BlochVector::new(h, 0.0, h)).unwrap();
        assert_abs_diff_eq!(rho.purity(), 1.0, epsilon = TOL);

        assert!(DensityMatrix::from_bloch(&BlochVector::new(1.0, 0.0, 1e-4)).is_err());
    }

    #[test]
    fn trace_distance_examples() {
        let z = PureQubit::zero().density();
        let o = PureQubit::one().density();
        let p = PureQubit::plus().density();
        assert_abs_diff_eq!(trace_distance(&z, &z), 0.0, epsilon = TOL);
        assert_abs_diff_eq!(trace_distance(&z, &o), 1.0, epsilon = TOL);
        // Oracle: eigenvalues of the 2x2 difference matrix give sqrt(2)/2.
        assert_abs_diff_eq!(
            trace_distance(&z, &p),
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-9
        );
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(
            PureQubit::plus().density().von_neumann_entropy(),
            0.0,
            epsilon = TOL
        );
        assert_abs_diff_eq!(
            DensityMatrix::maximally_mixed().von_neumann_entropy(),
            1.0,
            epsilon = TOL
        );
        // Eigenvalues (0.9, 0.1): -0.9 log2 0.9 - 0.1 log2 0.1.
        let rho = DensityMatrix::from_bloch(&BlochVector::new(0.0, 0.0, 0.8)).unwrap();
        assert_abs_diff_eq!(rho.von_neumann_entropy(), 0.4689956, epsilon = 1e-7);
    }

    #[test]
    fn relative_entropy_examples() {
        let plus = PureQubit::plus().density();
        let mixed = DensityMatrix::maximally_mixed();
        assert_abs_diff_eq!(relative_entropy(&plus, &plus), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(relative_entropy(&plus, &mixed), 1.0, epsilon = 1e-10);
        let z = PureQubit::zero().density();
        let o = PureQubit::one().density();
        assert!(relative_entropy(&z, &o).is_infinite());
    }

    #[test]
    fn purity_examples() {
        assert_abs_diff_eq!(
            DensityMatrix::maximally_mixed().purity(),
            0.5,
            epsilon = TOL
        );
        assert_abs_diff_eq!(PureQubit::minus().density().purity(), 1.0, epsilon = TOL);
        let rho = DensityMatrix::from_bloch(&BlochVector::new(0.3, 0.0, 0.4)).unwrap();
        assert_abs_diff_eq!(rho.purity(), 0.625, epsilon = TOL);
    }

    #[test]
    fn haar_sampling_is_uniform_and_deterministic() {
        let mut rng = SeededRng::new(11);
        let mut mean = BlochVector::ORIGIN;
        let n = 100_000;
        for _ in 0..n {
            let psi = haar_pure_qubit(&mut rng);
            let norm_sq = psi.amp0.norm_sqr() + psi.amp1.norm_sqr();
            assert!((norm_sq - 1.0).abs() <= TOL);
            mean = mean.add(&psi.bloch());
        }
        mean = mean.scale(1.0 / n as f64);
        assert!(mean.norm() <= 0.02, "mean Bloch norm {}", mean.norm());

        let a: Vec<f64> = {
            let mut r = SeededRng::new(42);
            (0..8).map(|_| r.complex_normal().re).collect()
        };
        let b: Vec<f64> = {
            let mut r = SeededRng::new(42);
            (0..8).map(|_| r.complex_normal().re).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn mixed_sampling_measure() {
        // Oracle cross-check: Ginibre GG' and the uniform-ball measure agree;
        // the exact Hilbert-Schmidt mean purity for a qubit is 4/5.
        let mut rng = SeededRng::new(5);
        let n = 100_000;
        let mut mean_hs = 0.0;
        for _ in 0..n {
            let rho = random_mixed_qubit(&mut rng);
            let v = rho.bloch();
            assert!(v.norm() <= 1.0 + TOL);
            mean_hs += rho.purity();
        }
        mean_hs /= n as f64;
        assert!((mean_hs - 0.8).abs() < 0.01, "HS mean purity {mean_hs}");

        // Independent rejection sampler over the Bloch ball, density = 1.
        let mut mean_ball = 0.0;
        let mut count = 0usize;
        let mut r = SeededRng::new(6);
        while count < n {
            let v = BlochVector::new(
                2.0 * r.uniform() - 1.0,
                2.0 * r.uniform() - 1.0,
                2.0 * r.uniform() - 1.0,
            );
            if v.norm() <= 1.0 {
                mean_ball += DensityMatrix::from_bloch(&v).unwrap().purity();
                count += 1;
            }
        }
        mean_ball /= n as f64;
        assert!((mean_hs - mean_ball).abs() < 0.01);

        // Fixed seed reproduces the sequence.
        let p1 = random_mixed_qubit(&mut SeededRng::new(9)).purity();
        let p2 = random_mixed_qubit(&mut SeededRng::new(9)).purity();
        assert_eq!(p1, p2);
    }

    #[test]
    fn partial_trace_examples() {
        let prod = TwoQubitPure::from_product(&PureQubit::zero(), &PureQubit::plus());
        assert!(prod
            .partial_trace(Subsystem::First)
            .approx_eq(&PureQubit::zero().density(), TOL));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = TwoQubitPure::new([
            Complex64::new(h, 0.0),
            C_ZERO,
            C_ZERO,
            Complex64::new(h, 0.0),
        ])
        .unwrap();
        assert!(bell
            .partial_trace(Subsystem::First)
            .approx_eq(&DensityMatrix::maximally_mixed(), TOL));

        let psi = TwoQubitPure::new([
            Complex64::new(0.3f64.sqrt(), 0.0),
            C_ZERO,
            C_ZERO,
            Complex64::new(0.7f64.sqrt(), 0.0),
        ])
        .unwrap();
        let red = psi.partial_trace(Subsystem::Second);
        assert_abs_diff_eq!(red.entry(0, 0).re, 0.3, epsilon = TOL);
        assert_abs_diff_eq!(red.entry(1, 1).re, 0.7, epsilon = TOL);
        assert_abs_diff_eq!(red.entry(0, 1).norm(), 0.0, epsilon = TOL);
    }

    #[test]
    fn derive_streams_are_independent_of_order() {
        let root = SeededRng::new(1234);
        let mut a = root.derive(3);
        let mut b = root.derive(4);
        let a1 = a.next_u64();
        let b1 = b.next_u64();
        let mut b2 = root.derive(4);
        let mut a2 = root.derive(3);
        assert_eq!(b1, b2.next_u64());
        assert_eq!(a1, a2.next_u64());
        assert_ne!(a1, b1);
    }

    #[test]
    fn haar_unitaries_are_unitary() {
        let mut rng = SeededRng::new(77);
        for _ in 0..50 {
            let u = haar_unitary2(&mut rng);
            let p = u.adjoint().mul(&u);
            assert!(p.dist(&Mat2::identity()) < 1e-10);
            let u4 = haar_unitary4(&mut rng);
            assert!(u4.unitarity_defect() < 1e-10);
        }
    }
}
