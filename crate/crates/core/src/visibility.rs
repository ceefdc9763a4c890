//! Analytic threefold-coincidence pipeline and the visibility / fidelity
//! metrics built on it.
//!
//! Pipeline order:
//!
//! 1. pair-source and laser photon-number statistics;
//! 2. binomial routing of the pair photons at the first beamsplitter (paths 2
//!    and 3);
//! 3. herald click on path 3 and loss on path 2, giving the joint herald
//!    statistics `h_k`;
//! 4. square-root amplitudes `√(h_k l_j)` interfered at the second
//!    beamsplitter for distinguishable and indistinguishable photons, then
//!    dual-click detection;
//! 5. visibilities, with the temporal-overlap mixture on the minimum and the
//!    dark-count correction for the net figures.
//!
//! Rates leaving [`bsm_rates`] are joint per-window probabilities (herald
//! click AND both Bell-measurement detectors). [`VisibilityResult`] stores
//! them per herald.
//!
//! Input partitions `(k, j)` with different photon numbers in the two ports
//! are summed incoherently: sources with independent phases do not interfere
//! across partitions.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::fock::{
    apply_loss, dual_click_with_dark, DetectorSpec, FockSpace, SingleMode, TwoMode,
    DEFAULT_TRUNCATION,
};
use crate::scalar::{in_closed, Real};
use crate::sources::{laser_distribution, spdc_distribution, LaserSpec, SpdcSpec, WINDOW_NS};

/// Photon indistinguishability at the Bell-measurement beamsplitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Distinguishable,
    Indistinguishable,
}

impl Regime {
    pub const BOTH: [Regime; 2] = [Regime::Distinguishable, Regime::Indistinguishable];

    pub fn label(self) -> &'static str {
        match self {
            Regime::Distinguishable => "distinguishable",
            Regime::Indistinguishable => "indistinguishable",
        }
    }
}

/// Threefold coincidence rates measured with one or two detectors blocked,
/// in counts per second. Indices: 1 and 2 are the Bell-measurement detectors,
/// 3 the herald.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DarkCountSet<R> {
    pub dc1: R,
    pub dc2: R,
    pub dc3: R,
    pub dc12: R,
    pub dc13: R,
    pub dc23: R,
}

impl<R: Real> DarkCountSet<R> {
    /// Validates non-negativity and `dc_ij <= min(dc_i, dc_j)` within `tol`.
    pub fn new(singles: [R; 3], pairs: [R; 3], tol: R) -> Result<Self> {
        let set = Self {
            dc1: singles[0],
            dc2: singles[1],
            dc3: singles[2],
            dc12: pairs[0],
            dc13: pairs[1],
            dc23: pairs[2],
        };
        set.validate(tol)?;
        Ok(set)
    }

    pub fn validate(&self, tol: R) -> Result<()> {
        let all = [
            self.dc1, self.dc2, self.dc3, self.dc12, self.dc13, self.dc23,
        ];
        if let Some(bad) = all.iter().find(|v| !(v.is_finite() && **v >= R::zero())) {
            return domain("dark count rate", bad.as_f64(), "[0, inf)");
        }
        let checks = [
            (self.dc12, self.dc1.min(self.dc2)),
            (self.dc13, self.dc1.min(self.dc3)),
            (self.dc23, self.dc2.min(self.dc3)),
        ];
        for (pair, bound) in checks {
            if pair > bound + tol {
                return Err(Error::Invalid(format!(
                    "pairwise dark rate {} exceeds single-detector bound {}",
                    pair.as_f64(),
                    bound.as_f64()
                )));
            }
        }
        Ok(())
    }
}

/// `DC1 + DC2 + DC3 − DC12 − DC13 − DC23`.
pub fn total_dark_rate<R: Real>(dc: &DarkCountSet<R>) -> R {
    dc.dc1 + dc.dc2 + dc.dc3 - dc.dc12 - dc.dc13 - dc.dc23
}

/// Full parameter set of one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig<R> {
    /// Pair probability per coherence time.
    pub p1: R,
    /// Laser photon probability per pulse.
    pub l1: R,
    /// Transmission from the first beamsplitter to the Bell measurement.
    pub t2: R,
    /// Transmission from the first beamsplitter to the herald detector.
    pub t3: R,
    /// Efficiency shared by all three detectors.
    pub eta: R,
    /// Temporal-mode overlap of the interfering photons.
    pub overlap: R,
    pub window_ns: R,
    /// Dark-count probability per ns of SPD1, SPD2 (Bell measurement) and
    /// SPD3 (herald).
    pub dark_rates: [R; 3],
}

impl<R: Real> Default for ExperimentConfig<R> {
    fn default() -> Self {
        Self {
            p1: R::from_f64(0.02),
            l1: R::from_f64(0.02),
            t2: R::from_f64(0.1),
            t3: R::from_f64(0.1),
            eta: R::from_f64(0.2),
            overlap: R::from_f64(0.91),
            window_ns: R::from_f64(WINDOW_NS),
            dark_rates: [R::from_f64(1e-6); 3],
        }
    }
}

impl<R: Real> ExperimentConfig<R> {
    pub fn validate(&self) -> Result<()> {
        SpdcSpec::new(self.p1)?;
        LaserSpec::new(self.l1)?;
        for (name, v) in [
            ("t2", self.t2),
            ("t3", self.t3),
            ("eta", self.eta),
            ("overlap", self.overlap),
        ] {
            if !in_closed(&v, R::zero(), R::one()) {
                return domain(name, v.as_f64(), "[0, 1]");
            }
        }
        if !(self.window_ns.is_finite() && self.window_ns > R::zero()) {
            return domain("window_ns", self.window_ns.as_f64(), "(0, inf)");
        }
        for d in self.detectors()? {
            d.dark_probability(self.window_ns)?;
        }
        Ok(())
    }

    /// SPD1, SPD2, SPD3.
    pub fn detectors(&self) -> Result<[DetectorSpec<R>; 3]> {
        Ok([
            DetectorSpec::new(self.eta, self.dark_rates[0])?,
            DetectorSpec::new(self.eta, self.dark_rates[1])?,
            DetectorSpec::new(self.eta, self.dark_rates[2])?,
        ])
    }

    /// Per-window dark-count probabilities of SPD1, SPD2, SPD3.
    pub fn dark_probabilities(&self) -> Result<[R; 3]> {
        let [a, b, c] = self.detectors()?;
        Ok([
            a.dark_probability(self.window_ns)?,
            b.dark_probability(self.window_ns)?,
            c.dark_probability(self.window_ns)?,
        ])
    }

    pub fn without_darks(mut self) -> Self {
        self.dark_rates = [R::zero(); 3];
        self
    }

    pub fn window_seconds(&self) -> R {
        self.window_ns * R::from_f64(1e-9)
    }
}

/// Joint probabilities of a herald click with `k` photons reaching the second
/// beamsplitter. Sub-normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct HeraldStats<R> {
    dist: SingleMode<R>,
}

impl<R: Real> HeraldStats<R> {
    pub fn from_probabilities(h: &[R]) -> Result<Self> {
        Ok(Self {
            dist: SingleMode::from_entries(h.iter().copied().enumerate(), DEFAULT_TRUNCATION)?,
        })
    }

    /// `h_k`.
    pub fn h(&self, k: usize) -> R {
        self.dist.get(&k)
    }

    /// Total herald probability `Σ h_k`.
    pub fn total(&self) -> R {
        self.dist.total()
    }

    pub fn distribution(&self) -> &SingleMode<R> {
        &self.dist
    }
}

/// Photonic herald statistics (no dark counts on the herald detector).
pub fn herald_distribution<R: Real>(config: &ExperimentConfig<R>) -> Result<HeraldStats<R>> {
    config.validate()?;
    herald_stats(config, config.t3, R::zero())
}

/// Herald statistics with the herald detector seeing transmission
/// `t_herald` and per-window dark probability `dark`.
fn herald_stats<R: Real>(
    config: &ExperimentConfig<R>,
    t_herald: R,
    dark: R,
) -> Result<HeraldStats<R>> {
    let fs = FockSpace::default();
    let pairs = spdc_distribution(&SpdcSpec::new(config.p1)?)?;
    let herald_det = DetectorSpec::new(t_herald * config.eta, R::zero())?;
    let mut dist = SingleMode::empty(DEFAULT_TRUNCATION);
    for (&n_pairs, &w) in pairs.iter() {
        let routed = fs.split_balanced::<R>(2 * n_pairs)?;
        for (&(path2, path3), &w_split) in routed.iter() {
            let click = herald_det.click_with_dark(path3, &dark);
            let weight = w * w_split * click;
            if weight == R::zero() {
                continue;
            }
            let arriving = apply_loss(&SingleMode::fock(path2, DEFAULT_TRUNCATION)?, config.t2)?;
            for (&k, &p) in arriving.iter() {
                dist.accumulate(k, weight * p)?;
            }
        }
    }
    Ok(HeraldStats { dist })
}

/// Joint threefold rates `(c_dis, c_indis)` per window for detectors of
/// efficiency `eta` and no dark counts.
pub fn bsm_rates<R: Real>(h: &HeraldStats<R>, laser: &SingleMode<R>, eta: R) -> Result<(R, R)> {
    let det = DetectorSpec::ideal(eta)?;
    Ok((
        bsm_rate(
            h,
            laser,
            Regime::Distinguishable,
            &det,
            &det,
            R::zero(),
            R::zero(),
        )?,
        bsm_rate(
            h,
            laser,
            Regime::Indistinguishable,
            &det,
            &det,
            R::zero(),
            R::zero(),
        )?,
    ))
}

/// Joint threefold rate for one regime with explicit detectors and
/// per-window dark probabilities.
pub fn bsm_rate<R: Real>(
    h: &HeraldStats<R>,
    laser: &SingleMode<R>,
    regime: Regime,
    left: &DetectorSpec<R>,
    right: &DetectorSpec<R>,
    dark_left: R,
    dark_right: R,
) -> Result<R> {
    let fs = FockSpace::default();
    let mut rate = R::zero();
    for (&k, &hk) in h.dist.iter() {
        for (&j, &lj) in laser.iter() {
            if hk == R::zero() || lj == R::zero() {
                continue;
            }
            let amplitude = Complex::new(hk.sqrt() * lj.sqrt(), R::zero());
            let outputs: TwoMode<R> = match regime {
                Regime::Indistinguishable => fs
                    .beamsplitter_amplitudes::<R>(k, j)?
                    .scaled(amplitude)
                    .probabilities(),
                Regime::Distinguishable => {
                    let weight = amplitude.norm_sqr();
                    let probs = fs.interfere_distinguishable::<R>(k, j)?;
                    TwoMode::from_entries(
                        probs.iter().map(|(&o, &p)| (o, p * weight)),
                        DEFAULT_TRUNCATION,
                    )?
                }
            };
            rate = rate + dual_click_with_dark(&outputs, left, right, &dark_left, &dark_right);
        }
    }
    Ok(rate)
}

/// Minimum rate when only a fraction `overlap` of events interferes.
pub fn apply_overlap<R: Real>(c_dis: R, c_indis: R, overlap: R) -> Result<R> {
    if !in_closed(&overlap, R::zero(), R::one()) {
        return domain("overlap", overlap.as_f64(), "[0, 1]");
    }
    Ok(overlap * c_indis + (R::one() - overlap) * c_dis)
}

/// `(c_max − c_min) / c_max`.
pub fn visibility_two_photon<R: Real>(c_max: R, c_min: R) -> Result<R> {
    if !(c_max.is_finite() && c_max > R::zero()) {
        return Err(Error::UndefinedVisibility("c_max must be positive"));
    }
    if !(c_min.is_finite() && c_min >= R::zero()) {
        return domain("c_min", c_min.as_f64(), "[0, inf)");
    }
    Ok((c_max - c_min) / c_max)
}

/// `V = (c_max − c_min) / (c_max + c_min)` and fidelity `(1 + V)/2`.
pub fn visibility_ent<R: Real>(c_max: R, c_min: R) -> Result<(R, R)> {
    if !(c_max.is_finite() && c_min.is_finite() && c_max >= R::zero() && c_min >= R::zero()) {
        return Err(Error::Invalid(
            "rates must be finite and non-negative".into(),
        ));
    }
    let sum = c_max + c_min;
    if sum <= R::zero() {
        return Err(Error::UndefinedVisibility("c_max + c_min must be positive"));
    }
    let v = (c_max - c_min) / sum;
    Ok((v, (R::one() + v) / R::from_count(2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Raw,
    Net,
}

/// Extremal rates and the metrics derived from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityResult<R> {
    /// Distinguishable threefold rate per herald.
    pub c_max: R,
    /// Indistinguishable (overlap-mixed) threefold rate per herald.
    pub c_min: R,
    pub v_two_photon: R,
    pub v_ent: R,
    pub fidelity: R,
    pub variant: Variant,
    /// Herald probability per window; `c · herald_probability` is the joint
    /// per-window rate.
    pub herald_probability: R,
    /// Set when a net correction had to clamp `c_min` at zero.
    pub clamped: bool,
}

impl<R: Real> VisibilityResult<R> {
    pub fn from_rates(c_max: R, c_min: R, herald_probability: R, variant: Variant) -> Result<Self> {
        if c_min > c_max {
            return Err(Error::Invalid(format!(
                "c_min {} exceeds c_max {}",
                c_min.as_f64(),
                c_max.as_f64()
            )));
        }
        let v_two_photon = visibility_two_photon(c_max, c_min)?;
        let (v_ent, fidelity) = visibility_ent(c_max, c_min)?;
        Ok(Self {
            c_max,
            c_min,
            v_two_photon,
            v_ent,
            fidelity,
            variant,
            herald_probability,
            clamped: false,
        })
    }

    /// Joint per-window rates `(c_max, c_min)`.
    pub fn joint_rates(&self) -> (R, R) {
        (
            self.c_max * self.herald_probability,
            self.c_min * self.herald_probability,
        )
    }
}

/// Removes the dark-count coincidence contribution `dc_rate / herald_rate`
/// (both in counts per second) from both extremal rates.
pub fn net_correct<R: Real>(
    raw: &VisibilityResult<R>,
    dc_rate: R,
    herald_rate: R,
) -> Result<VisibilityResult<R>> {
    if !(dc_rate.is_finite() && dc_rate >= R::zero()) {
        return domain("dc_rate", dc_rate.as_f64(), "[0, inf)");
    }
    if dc_rate == R::zero() {
        return Ok(VisibilityResult {
            variant: Variant::Net,
            ..*raw
        });
    }
    if !(herald_rate.is_finite() && herald_rate > R::zero()) {
        return domain("herald_rate", herald_rate.as_f64(), "(0, inf)");
    }
    let contribution = dc_rate / herald_rate;
    let c_max = raw.c_max - contribution;
    let mut c_min = raw.c_min - contribution;
    let clamped = c_min < R::zero();
    if clamped {
        c_min = R::zero();
    }
    if c_max <= R::zero() {
        return Err(Error::UndefinedVisibility(
            "dark contribution exceeds c_max",
        ));
    }
    let mut net = VisibilityResult::from_rates(c_max, c_min, raw.herald_probability, Variant::Net)?;
    net.clamped = clamped;
    Ok(net)
}

/// Everything computed at one operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResult<R> {
    pub config: ExperimentConfig<R>,
    /// Photonic herald statistics.
    pub herald: HeraldStats<R>,
    /// Photonic joint rates `(c_dis, c_indis)`.
    pub photonic: (R, R),
    /// Joint rates including every dark-count path `(c_dis, c_indis)`.
    pub raw_joint: (R, R),
    /// Dark-count coincidence rates synthesized from the detector specs.
    pub dark_counts: DarkCountSet<R>,
    /// Herald counts per second (photons and darks).
    pub herald_rate: R,
    pub raw: VisibilityResult<R>,
    pub net: VisibilityResult<R>,
}

/// Which detectors are blocked: photons cannot reach them, dark counts remain.
type Blocked = [bool; 3];

fn threefold<R: Real>(
    config: &ExperimentConfig<R>,
    laser: &SingleMode<R>,
    regime: Regime,
    blocked: Blocked,
) -> Result<(R, R)> {
    let dark = config.dark_probabilities()?;
    let t_herald = if blocked[2] { R::zero() } else { config.t3 };
    let herald = herald_stats(config, t_herald, dark[2])?;
    let eff = |i: usize| if blocked[i] { R::zero() } else { config.eta };
    let left = DetectorSpec::ideal(eff(0))?;
    let right = DetectorSpec::ideal(eff(1))?;
    let rate = bsm_rate(&herald, laser, regime, &left, &right, dark[0], dark[1])?;
    Ok((rate, herald.total()))
}

/// Dark-count coincidence set a blocked-detector measurement would record,
/// taken at the distinguishable (maximum) setting.
pub fn synthesize_dark_counts<R: Real>(config: &ExperimentConfig<R>) -> Result<DarkCountSet<R>> {
    config.validate()?;
    let laser = laser_distribution(&LaserSpec::new(config.l1)?)?;
    let per_second = |blocked: Blocked| -> Result<R> {
        let (rate, _) = threefold(config, &laser, Regime::Distinguishable, blocked)?;
        Ok(rate / config.window_seconds())
    };
    Ok(DarkCountSet {
        dc1: per_second([true, false, false])?,
        dc2: per_second([false, true, false])?,
        dc3: per_second([false, false, true])?,
        dc12: per_second([true, true, false])?,
        dc13: per_second([true, false, true])?,
        dc23: per_second([false, true, true])?,
    })
}

/// Raw joint rates `(c_dis, c_indis)` including dark counts on all detectors,
/// plus the raw herald probability.
pub fn raw_joint_rates<R: Real>(config: &ExperimentConfig<R>) -> Result<((R, R), R)> {
    config.validate()?;
    let laser = laser_distribution(&LaserSpec::new(config.l1)?)?;
    let (c_dis, herald) = threefold(config, &laser, Regime::Distinguishable, [false; 3])?;
    let (c_indis, _) = threefold(config, &laser, Regime::Indistinguishable, [false; 3])?;
    Ok(((c_dis, c_indis), herald))
}

/// Runs the full pipeline at one operating point.
pub fn evaluate<R: Real>(config: &ExperimentConfig<R>) -> Result<PipelineResult<R>> {
    config.validate()?;
    let herald = herald_distribution(config)?;
    let laser = laser_distribution(&LaserSpec::new(config.l1)?)?;
    let photonic = bsm_rates(&herald, &laser, config.eta)?;

    let (raw_joint, herald_probability) = raw_joint_rates(config)?;
    if herald_probability <= R::zero() {
        return Err(Error::UndefinedVisibility("herald never clicks"));
    }
    let c_max = raw_joint.0 / herald_probability;
    let c_min = apply_overlap(raw_joint.0, raw_joint.1, config.overlap)? / herald_probability;
    let raw = VisibilityResult::from_rates(c_max, c_min, herald_probability, Variant::Raw)?;

    let dark_counts = synthesize_dark_counts(config)?;
    let herald_rate = herald_probability / config.window_seconds();
    let net = net_correct(&raw, total_dark_rate(&dark_counts), herald_rate)?;

    Ok(PipelineResult {
        config: *config,
        herald,
        photonic,
        raw_joint,
        dark_counts,
        herald_rate,
        raw,
        net,
    })
}

/// One evaluated grid point. Failures are kept in place of the result.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<R> {
    pub p1: R,
    pub l1: R,
    pub result: Result<PipelineResult<R>>,
}

/// Cartesian grid in `p1`-major order.
pub fn grid<R: Real>(p1_values: &[R], l1_values: &[R]) -> Vec<(R, R)> {
    p1_values
        .iter()
        .flat_map(|&p| l1_values.iter().map(move |&l| (p, l)))
        .collect()
}

/// Evaluates the pipeline at every `(p1, l1)` point of `points`, in parallel;
/// rows come back in input order.
pub fn sweep<R: Real>(base: &ExperimentConfig<R>, points: &[(R, R)]) -> Result<Vec<SweepRow<R>>> {
    if points.is_empty() {
        return Err(Error::Invalid("sweep grid is empty".into()));
    }
    Ok(points
        .par_iter()
        .map(|&(p1, l1)| SweepRow {
            p1,
            l1,
            result: evaluate(&ExperimentConfig { p1, l1, ..*base }),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    fn ideal_config() -> ExperimentConfig<f64> {
        ExperimentConfig::default().without_darks()
    }

    #[test]
    fn herald_zero_cases() {
        let c = ExperimentConfig {
            p1: 0.0,
            ..ideal_config()
        };
        let h = herald_distribution(&c).unwrap();
        assert_eq!(h.total(), 0.0);
        let c = ExperimentConfig {
            t3: 0.0,
            ..ideal_config()
        };
        let h = herald_distribution(&c).unwrap();
        for k in 0..=4 {
            assert_eq!(h.h(k), 0.0);
        }
    }

    #[test]
    fn photonic_herald_has_at_most_three_photons() {
        let h = herald_distribution(&ExperimentConfig {
            t2: 1.0,
            ..ideal_config()
        })
        .unwrap();
        assert!(h.h(3) > 0.0);
        assert_eq!(h.h(4), 0.0);
    }

    #[test]
    fn bsm_hom_example() {
        let h = HeraldStats::from_probabilities(&[0.0, 1.0]).unwrap();
        let laser = SingleMode::fock(1, 6).unwrap();
        let (dis, indis): (f64, f64) = bsm_rates(&h, &laser, 1.0).unwrap();
        assert!(close(dis, 0.5, 1e-15));
        assert!(indis.abs() < 1e-15);
    }

    #[test]
    fn bsm_vacuum_laser_has_no_interference() {
        let h = herald_distribution(&ExperimentConfig {
            t2: 0.8,
            ..ideal_config()
        })
        .unwrap();
        let laser = SingleMode::vacuum(6);
        let (dis, indis) = bsm_rates(&h, &laser, 0.2).unwrap();
        assert!(dis > 0.0);
        assert!((dis - indis).abs() <= 1e-15 * dis.abs().max(1e-300));
    }

    #[test]
    fn overlap_examples() {
        assert_eq!(apply_overlap(1.0, 0.25, 1.0).unwrap(), 0.25);
        assert_eq!(apply_overlap(1.0, 0.25, 0.0).unwrap(), 1.0);
        assert!(close(apply_overlap(1.0, 0.0, 0.91).unwrap(), 0.09, 1e-15));
        assert!(apply_overlap(1.0, 0.0, 1.5).is_err());
    }

    #[test]
    fn visibility_examples() {
        assert_eq!(visibility_two_photon(2.0, 1.0).unwrap(), 0.5);
        assert_eq!(visibility_two_photon(1.0, 0.0).unwrap(), 1.0);
        assert_eq!(
            visibility_two_photon(0.0, 0.0),
            Err(Error::UndefinedVisibility("c_max must be positive"))
        );
        let (v, f): (f64, f64) = visibility_ent(2.0, 1.0).unwrap();
        assert!(close(v, 1.0 / 3.0, 1e-15) && close(f, 2.0 / 3.0, 1e-15));
        assert_eq!(visibility_ent(1.0, 0.0).unwrap(), (1.0, 1.0));
        assert!(matches!(
            visibility_ent(0.0, 0.0),
            Err(Error::UndefinedVisibility(_))
        ));
    }

    #[test]
    fn dark_total_examples() {
        assert_eq!(total_dark_rate(&DarkCountSet::<f64>::default()), 0.0);
        let dc = DarkCountSet::new([3.0; 3], [1.0; 3], 0.0).unwrap();
        assert_eq!(total_dark_rate(&dc), 6.0);
        let dc = DarkCountSet::new([1.0, 2.0, 4.0], [0.0; 3], 0.0).unwrap();
        assert_eq!(total_dark_rate(&dc), 7.0);
        assert!(DarkCountSet::new([1.0, 2.0, 4.0], [1.5, 0.0, 0.0], 0.0).is_err());
        assert!(DarkCountSet::new([-1.0, 2.0, 4.0], [0.0; 3], 0.0).is_err());
    }

    #[test]
    fn net_correct_examples() {
        let raw = VisibilityResult::from_rates(2.0, 1.0, 1.0, Variant::Raw).unwrap();
        let same = net_correct(&raw, 0.0, 1.0).unwrap();
        assert_eq!(same.v_two_photon, raw.v_two_photon);
        assert_eq!(same.variant, Variant::Net);
        let net = net_correct(&raw, 0.5, 1.0).unwrap();
        assert!(close(net.v_two_photon, 2.0 / 3.0, 1e-15));
        assert!(!net.clamped);
        let clamped = net_correct(&raw, 1.5, 1.0).unwrap();
        assert!(clamped.clamped);
        assert_eq!(clamped.c_min, 0.0);
        assert!(net_correct(&raw, 3.0, 1.0).is_err());
    }

    #[test]
    fn pipeline_without_darks_matches_photonic_rates() {
        let r = evaluate(&ExperimentConfig {
            overlap: 1.0,
            ..ideal_config()
        })
        .unwrap();
        let (dis, indis) = r.raw.joint_rates();
        assert!((dis - r.photonic.0).abs() < 1e-14 * dis);
        assert!((indis - r.photonic.1).abs() < 1e-14 * dis);
        assert_eq!(r.raw.v_two_photon, r.net.v_two_photon);
    }

    #[test]
    fn darks_raise_raw_rates() {
        let dark = evaluate(&ExperimentConfig::<f64>::default()).unwrap();
        assert!(dark.raw_joint.0 > dark.photonic.0);
        assert!(total_dark_rate(&dark.dark_counts) > 0.0);
        assert!(dark.net.v_two_photon > dark.raw.v_two_photon);
    }

    #[test]
    fn pipeline_rejects_dead_herald() {
        let c = ExperimentConfig {
            p1: 0.0,
            ..ideal_config()
        };
        assert!(matches!(evaluate(&c), Err(Error::UndefinedVisibility(_))));
    }

    #[test]
    fn sweep_single_point_matches_direct_call() {
        let base = ExperimentConfig::<f64>::default();
        let rows = sweep(&base, &[(0.03, 0.05)]).unwrap();
        let direct = evaluate(&ExperimentConfig {
            p1: 0.03,
            l1: 0.05,
            ..base
        })
        .unwrap();
        assert_eq!(rows[0].result.as_ref().unwrap(), &direct);
    }

    #[test]
    fn sweep_flags_bad_points() {
        let base = ExperimentConfig::<f64>::default();
        let rows = sweep(&base, &grid(&[0.02, 0.5], &[0.02])).unwrap();
        assert!(rows[0].result.is_ok());
        assert!(rows[1].result.is_err());
        assert!(sweep(&base, &[]).is_err());
    }

    #[test]
    fn pipeline_in_single_precision() {
        let r32 = evaluate(&ExperimentConfig::<f32>::default()).unwrap();
        let r64 = evaluate(&ExperimentConfig::<f64>::default()).unwrap();
        assert!(close(r32.net.v_ent as f64, r64.net.v_ent, 1e-3));
    }
}
