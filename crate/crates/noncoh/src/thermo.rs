//! Thermal qubit states, the basis family in which they are maximally
//! coherent, and the energy accounting of the basis-change unitary.
//!
//! Units: `k_B = 1`, so temperature shares units with the level spacing.
//! The thermal Bloch radius is `tanh(beta E1 / 2)`; at `E1 = 1` this is the
//! familiar `tanh(1 / (2T))`.

use num_complex::Complex64;

use crate::comeasure::{c_trace, CoherenceConvention};
use crate::error::{Error, Result};
use crate::nobasis::NOBasis;
use crate::qstate::{DensityMatrix, Mat2, Mat4};

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A two-level system with ground energy 0 and excited energy `E1 > 0`.
#[derive(Debug, Clone, Copy)]
pub struct TwoLevelSystem {
    excited_energy: f64,
}

impl TwoLevelSystem {
    pub fn new(excited_energy: f64) -> Result<TwoLevelSystem> {
        if excited_energy <= 0.0 {
            return Err(Error::NonPositiveEnergy(excited_energy));
        }
        Ok(TwoLevelSystem { excited_energy })
    }

    pub fn excited_energy(&self) -> f64 {
        self.excited_energy
    }

    /// `H = diag(0, E1)` in the computational (energy) eigenbasis.
    pub fn hamiltonian(&self) -> Mat2 {
        Mat2([
            [C_ZERO, C_ZERO],
            [C_ZERO, Complex64::new(self.excited_energy, 0.0)],
        ])
    }
}

/// A Gibbs state `exp(-beta H) / Z`, diagonal in the computational basis.
#[derive(Debug, Clone, Copy)]
pub struct ThermalState {
    pub temperature: f64,
    pub beta: f64,
    pub rho: DensityMatrix,
    /// `tanh(beta E1 / 2)`; the Bloch vector is `(0, 0, bloch_radius)`.
    pub bloch_radius: f64,
}

pub fn thermal_state(sys: &TwoLevelSystem, temperature: f64) -> Result<ThermalState> {
    if temperature <= 0.0 {
        return Err(Error::NonPositiveTemperature(temperature));
    }
    let beta = 1.0 / temperature;
    let r = (0.5 * beta * sys.excited_energy).tanh();
    let rho = DensityMatrix::from_bloch(&crate::qstate::BlochVector::new(0.0, 0.0, r))?;
    Ok(ThermalState {
        temperature,
        beta,
        rho,
        bloch_radius: r,
    })
}

/// The one-parameter basis family for which the thermal state is the
/// maximally coherent mixed state:
/// `|b1>, |b2> = cos((pi-alpha)/2)|0> +/- e^{i phi} sin((pi-alpha)/2)|1>`.
/// Its chord is horizontal at `z = -cos(alpha)`, diametrically opposite the
/// thermal Bloch vector; the phase `phi` only rotates the chord about z.
#[derive(Debug, Clone, Copy)]
pub struct CoherenceBasisFamily {
    pub alpha: f64,
    pub phi: f64,
    pub basis: NOBasis,
}

pub fn coherence_basis(alpha: f64, phi: f64) -> Result<CoherenceBasisFamily> {
    if !(alpha > 0.0 && alpha <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::AngleOutOfRange(alpha));
    }
    let basis = NOBasis::symmetric_about_z(std::f64::consts::PI - alpha, phi)?;
    Ok(CoherenceBasisFamily { alpha, phi, basis })
}

/// True when the thermal state attains the maximal shell coherence
/// `r + cos(alpha)` for the family basis while staying incoherent in the
/// energy eigenbasis.
pub fn thermal_is_nomcms_check(ts: &ThermalState, fam: &CoherenceBasisFamily) -> bool {
    let c = c_trace(&ts.rho, &fam.basis, CoherenceConvention::Euclidean);
    let want = ts.bloch_radius + fam.basis.overlap();
    let energy_basis = NOBasis::computational();
    let incoherent = c_trace(&ts.rho, &energy_basis, CoherenceConvention::Euclidean);
    (c - want).abs() <= 1e-10 && incoherent <= 1e-10
}

/// The basis-change unitary of the energy-cost protocol: a controlled
/// rotation (`|1>_S` controls `U |b1> = |b2>` on the ancilla) followed by a
/// swap, so that `|0>_S |b1>_A -> |b1>_S |0>_A` and
/// `|1>_S |b1>_A -> |b2>_S |1>_A`.
pub fn bc_energy_unitary(fam: &CoherenceBasisFamily) -> Result<Mat4> {
    let b1 = fam.basis.b1();
    let b2 = fam.basis.b2();
    // Ancilla rotation mapping the orthonormal frame {b1, b1_perp} onto
    // {b2, b2_perp}; only the b1 column matters for the protocol.
    let rot = Mat2::outer(b2.amps(), b1.amps())
        .add(&Mat2::outer(b2.orthogonal().amps(), b1.orthogonal().amps()));
    let mut controlled = [[C_ZERO; 4]; 4];
    for a_out in 0..2 {
        for a_in in 0..2 {
            controlled[a_out][a_in] = if a_out == a_in { C_ONE } else { C_ZERO };
            controlled[2 + a_out][2 + a_in] = rot.0[a_out][a_in];
        }
    }
    let mut swap = [[C_ZERO; 4]; 4];
    for s in 0..2 {
        for a in 0..2 {
            swap[2 * a + s][2 * s + a] = C_ONE;
        }
    }
    Ok(Mat4(swap).mul(&Mat4(controlled)))
}

/// Energy cost of the basis change, evaluated from the trace formula
/// `Delta = tr[(H (x) I)(U (rho_T (x) |b1><b1|) U' - rho_T (x) |b1><b1|)]`
/// (energy acquired by the system-ancilla pair). Matches
/// [`closed_form_energy_cost`] to machine precision.
pub fn bc_energy_cost(
    sys: &TwoLevelSystem,
    temperature: f64,
    fam: &CoherenceBasisFamily,
) -> Result<f64> {
    let ts = thermal_state(sys, temperature)?;
    let u = bc_energy_unitary(fam)?;
    let input = Mat4::kron(ts.rho.matrix(), &fam.basis.b1().projector());
    let output = u.mul(&input).mul(&u.adjoint());
    let h4 = Mat4::kron(&sys.hamiltonian(), &Mat2::identity());
    let before = trace_product(&h4, &input);
    let after = trace_product(&h4, &output);
    Ok(after - before)
}

/// `1/2 E1 (cos(alpha) + tanh(beta E1 / 2))`.
pub fn closed_form_energy_cost(sys: &TwoLevelSystem, temperature: f64, alpha: f64) -> f64 {
    let e1 = sys.excited_energy();
    0.5 * e1 * (alpha.cos() + (0.5 * e1 / temperature).tanh())
}

fn trace_product(a: &Mat4, b: &Mat4) -> f64 {
    let mut t = C_ZERO;
    for i in 0..4 {
        for j in 0..4 {
            t += a.0[i][j] * b.0[j][i];
        }
    }
    t.re
}

/// The linear law `Delta = (E1 / 2) * C`: cost, coherence created, and
/// their ratio.
#[derive(Debug, Clone, Copy)]
pub struct LinearityCheck {
    pub delta: f64,
    pub coherence: f64,
    pub ratio: f64,
}

pub fn linearity_check(
    sys: &TwoLevelSystem,
    temperature: f64,
    fam: &CoherenceBasisFamily,
) -> Result<LinearityCheck> {
    let ts = thermal_state(sys, temperature)?;
    let delta = bc_energy_cost(sys, temperature, fam)?;
    let coherence = c_trace(&ts.rho, &fam.basis, CoherenceConvention::Euclidean);
    Ok(LinearityCheck {
        delta,
        coherence,
        ratio: delta / coherence,
    })
}
