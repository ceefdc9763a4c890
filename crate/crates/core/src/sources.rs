//! Photon-number statistics of the pair and faint-laser sources, and the
//! photon budget of the frequency-conversion qubit generator.

use crate::error::{domain, Error, Result};
use crate::fock::{SingleMode, DEFAULT_TRUNCATION};
use crate::scalar::{in_closed, Real, Scalar};

/// Coherence / pulse window in nanoseconds used for every quoted rate.
pub const WINDOW_NS: f64 = 15.0;

/// Upper bound on `p1` / `l1` for which the second-order truncation holds.
pub const MAX_EMISSION_PROBABILITY: f64 = 0.3;

/// SPDC pair source: `p1` is the probability of one pair per coherence time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpdcSpec<S> {
    pub p1: S,
    pub coherence_window_ns: S,
}

impl<S: Scalar> SpdcSpec<S> {
    pub fn new(p1: S) -> Result<Self> {
        check_emission("p1", &p1)?;
        Ok(Self {
            p1,
            coherence_window_ns: S::from_f64(WINDOW_NS),
        })
    }

    /// `(p0, p1, p2)` with `p0 = 1 − p1 − p1²`, `p2 = p1²`.
    pub fn pair_probabilities(&self) -> [S; 3] {
        let p1 = self.p1.clone();
        let p2 = p1.clone() * p1.clone();
        [S::one() - p1.clone() - p2.clone(), p1, p2]
    }
}

/// Attenuated laser: `l1` is the probability of one photon per pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserSpec<S> {
    pub l1: S,
    pub pulse_window_ns: S,
}

impl<S: Scalar> LaserSpec<S> {
    pub fn new(l1: S) -> Result<Self> {
        check_emission("l1", &l1)?;
        Ok(Self {
            l1,
            pulse_window_ns: S::from_f64(WINDOW_NS),
        })
    }

    /// `(l0, l1, l2)` with `l0 = 1 − l1 − l1²/2`, `l2 = l1²/2`.
    pub fn photon_probabilities(&self) -> [S; 3] {
        let l1 = self.l1.clone();
        let l2 = l1.clone() * l1.clone() / S::from_count(2);
        [S::one() - l1.clone() - l2.clone(), l1, l2]
    }
}

// Zero is accepted as the "source off" limit.
fn check_emission<S: Scalar>(name: &'static str, p: &S) -> Result<()> {
    if !(p.is_finite_value() && *p >= S::zero() && *p < S::from_f64(MAX_EMISSION_PROBABILITY)) {
        return domain(name, p.as_f64(), "[0, 0.3)");
    }
    Ok(())
}

/// Pair-count distribution `{0: p0, 1: p1, 2: p2}`.
pub fn spdc_distribution<S: Scalar>(spec: &SpdcSpec<S>) -> Result<SingleMode<S>> {
    check_emission("p1", &spec.p1)?;
    SingleMode::from_entries(
        spec.pair_probabilities().into_iter().enumerate(),
        DEFAULT_TRUNCATION,
    )
}

/// Photon-count distribution `{0: l0, 1: l1, 2: l2}`.
pub fn laser_distribution<S: Scalar>(spec: &LaserSpec<S>) -> Result<SingleMode<S>> {
    check_emission("l1", &spec.l1)?;
    SingleMode::from_entries(
        spec.photon_probabilities().into_iter().enumerate(),
        DEFAULT_TRUNCATION,
    )
}

/// How the conversion coupling `kappa` is pinned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KappaCalibration {
    /// Unit internal efficiency at 450 mW.
    #[default]
    Peak450,
    /// 90 % internal efficiency at 350 mW.
    Fit350,
}

impl KappaCalibration {
    pub fn kappa<R: Real>(self) -> R {
        match self {
            KappaCalibration::Peak450 => R::FRAC_PI_2() / R::from_f64(450.0).sqrt(),
            KappaCalibration::Fit350 => R::from_f64(0.9).sqrt().asin() / R::from_f64(350.0).sqrt(),
        }
    }
}

impl std::str::FromStr for KappaCalibration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "peak450" => Ok(Self::Peak450),
            "fit350" => Ok(Self::Fit350),
            other => Err(Error::Invalid(format!(
                "unknown kappa calibration {other:?} (expected peak450 or fit350)"
            ))),
        }
    }
}

/// Difference-frequency conversion stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DfgSpec<R> {
    /// Coupling in rad per √mW.
    pub kappa: R,
    /// Nominal pump power of peak conversion, mW.
    pub p_opt: R,
    /// Raman noise photons per ns per mW².
    pub raman_coeff: R,
}

/// Raman coefficient giving 1e-4 noise photons/ns at 450 mW.
pub const DEFAULT_RAMAN_COEFF: f64 = 4.94e-10;

impl<R: Real> DfgSpec<R> {
    pub fn new(kappa: R, p_opt: R, raman_coeff: R) -> Result<Self> {
        for (name, v) in [
            ("kappa", kappa),
            ("p_opt", p_opt),
            ("raman_coeff", raman_coeff),
        ] {
            if !(v.is_finite() && v > R::zero()) {
                return domain(name, v.as_f64(), "(0, inf)");
            }
        }
        Ok(Self {
            kappa,
            p_opt,
            raman_coeff,
        })
    }

    pub fn calibrated(calibration: KappaCalibration) -> Self {
        Self {
            kappa: calibration.kappa(),
            p_opt: R::from_f64(450.0),
            raman_coeff: R::from_f64(DEFAULT_RAMAN_COEFF),
        }
    }
}

impl<R: Real> Default for DfgSpec<R> {
    fn default() -> Self {
        Self::calibrated(KappaCalibration::Peak450)
    }
}

fn check_power<R: Real>(pump_mw: R) -> Result<()> {
    if !(pump_mw.is_finite() && pump_mw >= R::zero()) {
        return domain("pump_mw", pump_mw.as_f64(), "[0, inf)");
    }
    Ok(())
}

/// Internal conversion efficiency `sin²(κ √P)`.
pub fn dfg_efficiency<R: Real>(pump_mw: R, spec: &DfgSpec<R>) -> Result<R> {
    check_power(pump_mw)?;
    let s = (spec.kappa * pump_mw.sqrt()).sin();
    Ok(s * s)
}

/// Raman noise photons per ns, `raman_coeff · P²`.
pub fn raman_noise_rate<R: Real>(pump_mw: R, spec: &DfgSpec<R>) -> Result<R> {
    check_power(pump_mw)?;
    Ok(spec.raman_coeff * pump_mw * pump_mw)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BudgetStage<R> {
    pub label: String,
    pub transmission: R,
}

/// Ordered chain of lossy stages acting on a mean photon rate.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetChain<R> {
    /// Mean photons per window entering the chain.
    pub input_rate: R,
    pub stages: Vec<BudgetStage<R>>,
}

impl<R: Real> BudgetChain<R> {
    pub fn new(input_rate: R) -> Self {
        Self {
            input_rate,
            stages: Vec::new(),
        }
    }

    pub fn stage(mut self, label: impl Into<String>, transmission: R) -> Self {
        self.stages.push(BudgetStage {
            label: label.into(),
            transmission,
        });
        self
    }

    /// The qubit-generator chain: conversion at `pump_mw`, the lumped Raman
    /// filter stage and the 3 dB intensity modulator.
    pub fn qubit_generator(pump_mw: R, dfg: &DfgSpec<R>) -> Result<Self> {
        Ok(Self::new(R::from_f64(INPUT_PHOTONS_PER_WINDOW))
            .stage("dfg_conversion", dfg_efficiency(pump_mw, dfg)?)
            .stage("raman_filtering", R::from_f64(FILTER_TRANSMISSION))
            .stage("intensity_modulator", R::from_f64(MODULATOR_TRANSMISSION)))
    }
}

/// 795 nm laser output, photons per 15 ns.
pub const INPUT_PHOTONS_PER_WINDOW: f64 = 0.8;
/// Lumped filter transmission taking 0.8 · 0.9 to 0.2 photons per window.
pub const FILTER_TRANSMISSION: f64 = 0.2 / (0.8 * 0.9);
/// 3 dB modulator.
pub const MODULATOR_TRANSMISSION: f64 = 0.5;

/// Mean rate after each stage, in chain order.
pub fn evaluate_budget<R: Real>(chain: &BudgetChain<R>) -> Result<Vec<(String, R)>> {
    if chain.stages.is_empty() {
        return Err(Error::Invalid("budget chain has no stages".into()));
    }
    if !(chain.input_rate.is_finite() && chain.input_rate >= R::zero()) {
        return domain("input_rate", chain.input_rate.as_f64(), "[0, inf)");
    }
    let mut rate = chain.input_rate;
    chain
        .stages
        .iter()
        .map(|stage| {
            if !in_closed(&stage.transmission, R::zero(), R::one()) {
                return domain("transmission", stage.transmission.as_f64(), "[0, 1]");
            }
            rate = rate * stage.transmission;
            Ok((stage.label.clone(), rate))
        })
        .collect()
}

/// `(noise + dark) / signal`, all in photons per ns.
pub fn noise_to_signal<R: Real>(signal_rate: R, noise_rate: R, dark_rate: R) -> Result<R> {
    if !(signal_rate.is_finite() && signal_rate > R::zero()) {
        return domain("signal_rate", signal_rate.as_f64(), "(0, inf)");
    }
    for (name, v) in [("noise_rate", noise_rate), ("dark_rate", dark_rate)] {
        if !(v.is_finite() && v >= R::zero()) {
            return domain(name, v.as_f64(), "[0, inf)");
        }
    }
    Ok((noise_rate + dark_rate) / signal_rate)
}
