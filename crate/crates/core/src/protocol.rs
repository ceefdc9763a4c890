//! Polarization-qubit and Bell-state algebra of the teleportation protocol,
//! and the energy-time phase fringe.
//!
//! Global phases are unobservable; compare states with [`fidelity`].

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `alpha |H⟩ + beta |V⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationQubit<R> {
    pub alpha: Complex<R>,
    pub beta: Complex<R>,
}

impl<R: Real> PolarizationQubit<R> {
    /// Rejects amplitudes whose squared norms do not sum to 1 within 1e-12.
    pub fn new(alpha: Complex<R>, beta: Complex<R>) -> Result<Self> {
        let q = Self { alpha, beta };
        let n = q.norm_sqr().as_f64();
        if !n.is_finite() || (n - 1.0).abs() > 1e-12 {
            return Err(Error::Invalid(format!("qubit norm² = {n}, expected 1")));
        }
        Ok(q)
    }

    /// Normalizes arbitrary nonzero amplitudes.
    pub fn normalized(alpha: Complex<R>, beta: Complex<R>) -> Result<Self> {
        let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !(n.is_finite() && n > R::zero()) {
            return Err(Error::Invalid("cannot normalize a zero qubit".into()));
        }
        Ok(Self {
            alpha: alpha / n,
            beta: beta / n,
        })
    }

    pub fn horizontal() -> Self {
        Self {
            alpha: Complex::new(R::one(), R::zero()),
            beta: Complex::new(R::zero(), R::zero()),
        }
    }

    pub fn vertical() -> Self {
        Self {
            alpha: Complex::new(R::zero(), R::zero()),
            beta: Complex::new(R::one(), R::zero()),
        }
    }

    /// `sinθ |H⟩ + cosθ |V⟩`.
    pub fn from_rotation(theta: R) -> Self {
        Self {
            alpha: Complex::new(theta.sin(), R::zero()),
            beta: Complex::new(theta.cos(), R::zero()),
        }
    }

    pub fn norm_sqr(&self) -> R {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }

    pub fn inner(&self, other: &Self) -> Complex<R> {
        self.alpha.conj() * other.alpha + self.beta.conj() * other.beta
    }
}

/// `|⟨a|b⟩|²`, insensitive to global phase.
pub fn fidelity<R: Real>(a: &PolarizationQubit<R>, b: &PolarizationQubit<R>) -> R {
    a.inner(b).norm_sqr()
}

/// Relative phase of the shared pair, `(e^{iφ/2}|HH⟩ + e^{−iφ/2}|VV⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntangledPhase<R> {
    pub phi: R,
}

impl<R: Real> EntangledPhase<R> {
    pub fn new(phi: R) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::Invalid("entangled phase must be finite".into()));
        }
        Ok(Self { phi })
    }

    /// Phase reduced to `[0, 2π)`.
    pub fn reduced(&self) -> R {
        let tau = R::TAU();
        let r = self.phi % tau;
        if r < R::zero() {
            r + tau
        } else {
            r
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome::PhiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CorrectionUnitary {
    Identity,
    SigmaZ,
    SigmaX,
    SigmaY,
}

impl CorrectionUnitary {
    /// Row-major 2×2 matrix in the `{H, V}` basis.
    pub fn matrix<R: Real>(self) -> [[Complex<R>; 2]; 2] {
        let o = Complex::new(R::zero(), R::zero());
        let one = Complex::new(R::one(), R::zero());
        let i = Complex::new(R::zero(), R::one());
        match self {
            CorrectionUnitary::Identity => [[one, o], [o, one]],
            CorrectionUnitary::SigmaZ => [[one, o], [o, -one]],
            CorrectionUnitary::SigmaX => [[o, one], [one, o]],
            CorrectionUnitary::SigmaY => [[o, -i], [i, o]],
        }
    }

    pub fn apply<R: Real>(self, q: &PolarizationQubit<R>) -> PolarizationQubit<R> {
        let m = self.matrix::<R>();
        PolarizationQubit {
            alpha: m[0][0] * q.alpha + m[0][1] * q.beta,
            beta: m[1][0] * q.alpha + m[1][1] * q.beta,
        }
    }
}

/// One term of the four-way Bell decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellBranch<R> {
    pub probability: R,
    /// Normalized conditional state of photon 3.
    pub state: PolarizationQubit<R>,
}

/// Conditional states of photon 3 for each Bell-measurement outcome on
/// photons 1 and 2, with the shared pair in `(|HH⟩ + |VV⟩)/√2`.
pub fn bell_decompose<R: Real>(
    qubit: &PolarizationQubit<R>,
) -> Result<BTreeMap<BellOutcome, BellBranch<R>>> {
    let q = PolarizationQubit::new(qubit.alpha, qubit.beta)?;
    let (a, b) = (q.alpha, q.beta);
    let quarter = R::from_f64(0.25);
    let branches = [
        (BellOutcome::PhiPlus, a, b),
        (BellOutcome::PhiMinus, a, -b),
        (BellOutcome::PsiPlus, b, a),
        (BellOutcome::PsiMinus, -b, a),
    ];
    branches
        .into_iter()
        .map(|(outcome, h, v)| {
            // each unnormalized branch carries amplitude 1/2
            let half = Complex::new(R::from_f64(0.5), R::zero());
            let (h, v) = (h * half, v * half);
            let probability = h.norm_sqr() + v.norm_sqr();
            debug_assert!((probability - quarter).abs().as_f64() < 1e-12);
            Ok((
                outcome,
                BellBranch {
                    probability,
                    state: PolarizationQubit::normalized(h, v)?,
                },
            ))
        })
        .collect()
}

/// Pauli correction that returns photon 3 to the input state.
pub fn correction_for(outcome: BellOutcome) -> CorrectionUnitary {
    match outcome {
        BellOutcome::PhiPlus => CorrectionUnitary::Identity,
        BellOutcome::PhiMinus => CorrectionUnitary::SigmaZ,
        BellOutcome::PsiPlus => CorrectionUnitary::SigmaX,
        BellOutcome::PsiMinus => CorrectionUnitary::SigmaY,
    }
}

/// State of photon 3 after a `Ψ⁻` projection, for input phase `phi1` and pair
/// phase `phi`.
pub fn psi_minus_reduced_state<R: Real>(phi1: R, phi: R) -> PolarizationQubit<R> {
    let half = (phi1 - phi) / R::from_count(2);
    let s = R::FRAC_1_SQRT_2();
    PolarizationQubit {
        alpha: Complex::from_polar(s, -half),
        beta: -Complex::from_polar(s, half),
    }
}

/// Probability that the analyzer (phase `phi3`, then 45° rotation) sends the
/// photon to its `V` port.
pub fn analyzer_probability<R: Real>(state: &PolarizationQubit<R>, phi3: R) -> R {
    let half = phi3 / R::from_count(2);
    let s = R::FRAC_1_SQRT_2();
    // H → e^{−iφ₃/2}(H + V)/√2,  V → e^{iφ₃/2}(V − H)/√2
    let v_amp =
        state.alpha * Complex::from_polar(s, -half) + state.beta * Complex::from_polar(s, half);
    v_amp.norm_sqr()
}

/// Threefold coincidence probability normalized to unit peak,
/// `sin²((φ₁ − φ + φ₃)/2)`.
pub fn threefold_fringe<R: Real>(phi1: R, phi: R, phi3: R) -> R {
    let s = ((phi1 - phi + phi3) / R::from_count(2)).sin();
    s * s
}

/// Analysis basis for photon 3 in the polarization scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisBasis {
    H,
    V,
}

/// Relative threefold rate for input `sinθ|H⟩ + cosθ|V⟩`, a `Ψ⁻` Bell result
/// and photon 3 analyzed in `basis`.
pub fn polarization_scan_rate<R: Real>(theta: R, basis: AnalysisBasis) -> R {
    let input = PolarizationQubit::from_rotation(theta);
    let branches = bell_decompose(&input).expect("rotation states are normalized");
    let state = branches[&BellOutcome::PsiMinus].state;
    match basis {
        AnalysisBasis::H => state.alpha.norm_sqr(),
        AnalysisBasis::V => state.beta.norm_sqr(),
    }
}
