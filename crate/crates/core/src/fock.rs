//! Exact photon-number algebra: balanced beamsplitter routing, binomial loss
//! and threshold-detector click laws.
//!
//! The balanced beamsplitter is fixed as `a† → (c† + d†)/√2`,
//! `b† → (c† − d†)/√2`; input port A feeds the first output entry of every
//! `(n_left, n_right)` pair.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::scalar::{in_closed, Real, Scalar};

/// Default maximum total photon number kept in any distribution.
pub const DEFAULT_TRUNCATION: usize = 6;

/// Key of a distribution entry: a photon count in one or more modes.
pub trait Occupation: Copy + Ord + Debug + Send + Sync + 'static {
    fn total(&self) -> usize;
}

impl Occupation for usize {
    fn total(&self) -> usize {
        *self
    }
}

impl Occupation for (usize, usize) {
    fn total(&self) -> usize {
        self.0 + self.1
    }
}

/// Probability mass over photon-number occupations.
///
/// Entries are either normalized (sum to one) or sub-normalized, e.g. when they
/// are joint with some other event. [`PhotonNumberDistribution::is_normalized`]
/// tells the two apart.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonNumberDistribution<S, O = usize> {
    entries: BTreeMap<O, S>,
    truncation: usize,
}

/// Photon counts in a single mode.
pub type SingleMode<S> = PhotonNumberDistribution<S, usize>;
/// Photon counts `(n_left, n_right)` in two modes.
pub type TwoMode<S> = PhotonNumberDistribution<S, (usize, usize)>;

impl<S: Scalar, O: Occupation> PhotonNumberDistribution<S, O> {
    /// Empty (all-zero) distribution.
    pub fn empty(truncation: usize) -> Self {
        Self {
            entries: BTreeMap::new(),
            truncation,
        }
    }

    /// Builds a distribution, accumulating repeated occupations.
    pub fn from_entries<I>(entries: I, truncation: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (O, S)>,
    {
        let mut dist = Self::empty(truncation);
        for (occ, p) in entries {
            if !in_closed(&p, S::zero(), S::one()) {
                return domain("probability", p.as_f64(), "[0, 1]");
            }
            dist.accumulate(occ, p)?;
        }
        if dist.total() > S::one() + S::from_f64(1e-12) {
            return Err(Error::Invalid(format!(
                "probabilities sum to {:?} > 1",
                dist.total().as_f64()
            )));
        }
        Ok(dist)
    }

    pub(crate) fn accumulate(&mut self, occ: O, p: S) -> Result<()> {
        if occ.total() > self.truncation {
            return Err(Error::Truncation {
                requested: occ.total(),
                truncation: self.truncation,
            });
        }
        let slot = self.entries.entry(occ).or_insert_with(S::zero);
        *slot = slot.clone() + p;
        Ok(())
    }

    /// Probability of `occ`; zero when absent.
    pub fn get(&self, occ: &O) -> S {
        self.entries.get(occ).cloned().unwrap_or_else(S::zero)
    }

    pub fn contains(&self, occ: &O) -> bool {
        self.entries.contains_key(occ)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&O, &S)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Sum of all probabilities.
    pub fn total(&self) -> S {
        self.entries
            .values()
            .fold(S::zero(), |acc, p| acc + p.clone())
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.total().as_f64() - 1.0).abs() <= tol
    }

    /// Largest total photon number carrying nonzero probability.
    pub fn max_occupation(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, p)| **p != S::zero())
            .map(|(o, _)| o.total())
            .max()
            .unwrap_or(0)
    }
}

impl<S: Scalar> SingleMode<S> {
    /// All mass at zero photons.
    pub fn vacuum(truncation: usize) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(0, S::one());
        Self {
            entries,
            truncation,
        }
    }

    /// All mass at `n` photons.
    pub fn fock(n: usize, truncation: usize) -> Result<Self> {
        Self::from_entries([(n, S::one())], truncation)
    }
}

impl<S: Scalar> TwoMode<S> {
    /// Marginal distribution of the left mode.
    pub fn left_marginal(&self) -> SingleMode<S> {
        let mut out = SingleMode::empty(self.truncation);
        for (&(l, _), p) in self.iter() {
            out.accumulate(l, p.clone())
                .expect("marginal within truncation");
        }
        out
    }
}

/// Complex amplitudes over two-mode occupations.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeAmplitudes<R> {
    entries: BTreeMap<(usize, usize), Complex<R>>,
    truncation: usize,
}

impl<R: Real> TwoModeAmplitudes<R> {
    pub fn get(&self, occ: &(usize, usize)) -> Complex<R> {
        self.entries
            .get(occ)
            .copied()
            .unwrap_or_else(|| Complex::new(R::zero(), R::zero()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Complex<R>)> {
        self.entries.iter()
    }

    /// Sum of squared magnitudes.
    pub fn norm_sqr(&self) -> R {
        self.entries
            .values()
            .fold(R::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// Multiplies every amplitude by `factor`.
    pub fn scaled(mut self, factor: Complex<R>) -> Self {
        for a in self.entries.values_mut() {
            *a = *a * factor;
        }
        self
    }

    /// Born-rule probabilities `|amplitude|²`.
    pub fn probabilities(&self) -> TwoMode<R> {
        let mut out = TwoMode::empty(self.truncation);
        for (&occ, a) in &self.entries {
            out.accumulate(occ, a.norm_sqr())
                .expect("within truncation");
        }
        out
    }
}

/// Threshold (non photon-number resolving) detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorSpec<S> {
    /// Detection efficiency η.
    pub efficiency: S,
    /// Dark-count probability per nanosecond.
    pub dark_rate: S,
}

impl<S: Scalar> DetectorSpec<S> {
    pub fn new(efficiency: S, dark_rate: S) -> Result<Self> {
        if !in_closed(&efficiency, S::zero(), S::one()) {
            return domain("efficiency", efficiency.as_f64(), "[0, 1]");
        }
        if !(dark_rate.is_finite_value() && dark_rate >= S::zero()) {
            return domain("dark_rate", dark_rate.as_f64(), "[0, inf)");
        }
        Ok(Self {
            efficiency,
            dark_rate,
        })
    }

    /// Noiseless detector.
    pub fn ideal(efficiency: S) -> Result<Self> {
        Self::new(efficiency, S::zero())
    }

    /// Probability of at least one dark count in a window of `window_ns`.
    pub fn dark_probability(&self, window_ns: S) -> Result<S> {
        let p = self.dark_rate.clone() * window_ns;
        if !in_closed(&p, S::zero(), S::one()) {
            return domain("dark_rate * window_ns", p.as_f64(), "[0, 1]");
        }
        Ok(p)
    }

    /// Click probability for `n` incident photons with a dark count probability
    /// `dark` for the window: `1 − (1−η)^n (1−dark)`.
    pub fn click_with_dark(&self, n: usize, dark: &S) -> S {
        S::one() - (S::one() - self.efficiency.clone()).powu(n as u32) * (S::one() - dark.clone())
    }
}

/// Click probability `1 − (1 − t·η)^N` of a threshold detector behind a
/// channel of transmission `t`.
pub fn click_probability<S: Scalar>(n: usize, t: S, eta: S) -> Result<S> {
    if !in_closed(&t, S::zero(), S::one()) {
        return domain("transmission", t.as_f64(), "[0, 1]");
    }
    if !in_closed(&eta, S::zero(), S::one()) {
        return domain("efficiency", eta.as_f64(), "[0, 1]");
    }
    Ok(S::one() - (S::one() - t * eta).powu(n as u32))
}

/// Binomial thinning of every occupation by transmission `t`.
pub fn apply_loss<S: Scalar>(dist: &SingleMode<S>, t: S) -> Result<SingleMode<S>> {
    if !in_closed(&t, S::zero(), S::one()) {
        return domain("transmission", t.as_f64(), "[0, 1]");
    }
    let lost = S::one() - t.clone();
    let mut out = SingleMode::empty(dist.truncation());
    for (&n, p) in dist.iter() {
        for k in 0..=n {
            let w =
                S::from_count(binomial(n, k) as u64) * t.powu(k as u32) * lost.powu((n - k) as u32);
            if w != S::zero() {
                out.accumulate(k, p.clone() * w)?;
            }
        }
    }
    Ok(out)
}

/// Probability that both detectors click, summed over a two-mode
/// distribution. Transmission is assumed already folded into `dist`; dark
/// counts are not included.
pub fn dual_click_probability<S: Scalar>(
    dist: &TwoMode<S>,
    left: &DetectorSpec<S>,
    right: &DetectorSpec<S>,
) -> S {
    dual_click_with_dark(dist, left, right, &S::zero(), &S::zero())
}

/// As [`dual_click_probability`], with per-window dark-count probabilities for
/// the left and right detectors.
pub fn dual_click_with_dark<S: Scalar>(
    dist: &TwoMode<S>,
    left: &DetectorSpec<S>,
    right: &DetectorSpec<S>,
    dark_left: &S,
    dark_right: &S,
) -> S {
    dist.iter().fold(S::zero(), |acc, (&(a, b), p)| {
        acc + p.clone() * left.click_with_dark(a, dark_left) * right.click_with_dark(b, dark_right)
    })
}

/// Photon-number algebra with a fixed truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    truncation: usize,
}

impl Default for FockSpace {
    fn default() -> Self {
        Self {
            truncation: DEFAULT_TRUNCATION,
        }
    }
}

impl FockSpace {
    pub fn new(truncation: usize) -> Self {
        Self { truncation }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.truncation {
            Err(Error::Truncation {
                requested: n,
                truncation: self.truncation,
            })
        } else {
            Ok(())
        }
    }

    /// Routes `n` photons independently through a balanced beamsplitter:
    /// `(k, n−k)` with probability `C(n,k)/2ⁿ`.
    pub fn split_balanced<S: Scalar>(&self, n: usize) -> Result<TwoMode<S>> {
        self.check(n)?;
        let denom = S::from_count(1u64 << n);
        let mut out = TwoMode::empty(self.truncation);
        for k in 0..=n {
            out.accumulate(
                (k, n - k),
                S::from_count(binomial(n, k) as u64) / denom.clone(),
            )?;
        }
        Ok(out)
    }

    /// Output statistics for `n` and `m` mutually distinguishable photons in
    /// ports A and B: every photon routes independently.
    pub fn interfere_distinguishable<S: Scalar>(&self, n: usize, m: usize) -> Result<TwoMode<S>> {
        self.check(n + m)?;
        let a = self.split_balanced::<S>(n)?;
        let b = self.split_balanced::<S>(m)?;
        let mut out = TwoMode::empty(self.truncation);
        for (&(al, ar), pa) in a.iter() {
            for (&(bl, br), pb) in b.iter() {
                out.accumulate((al + bl, ar + br), pa.clone() * pb.clone())?;
            }
        }
        Ok(out)
    }

    /// Output statistics for `n` and `m` indistinguishable bosons in ports A
    /// and B. Every output occupation `(k, n+m−k)` is listed, zeros included.
    ///
    /// Runs over any [`Scalar`]; with exact rationals the result is exact.
    pub fn interfere_indistinguishable<S: Scalar>(&self, n: usize, m: usize) -> Result<TwoMode<S>> {
        self.check(n + m)?;
        let total = n + m;
        // |c_k|² k!(N−k)! / (n! m! 2^N)
        let denom = S::from_count(factorial(n) as u64)
            * S::from_count(factorial(m) as u64)
            * S::from_count(1u64 << total);
        let mut out = TwoMode::empty(self.truncation);
        for k in 0..=total {
            let c = monomial_coefficient(n, m, k);
            let weight = (c * c) as u128 * factorial(k) * factorial(total - k);
            let weight = u64::try_from(weight).expect("photon number too large for exact weights");
            out.accumulate((k, total - k), S::from_count(weight) / denom.clone())?;
        }
        Ok(out)
    }

    /// Output amplitudes of the Fock input `|n⟩_A |m⟩_B`.
    pub fn beamsplitter_amplitudes<R: Real>(
        &self,
        n: usize,
        m: usize,
    ) -> Result<TwoModeAmplitudes<R>> {
        self.check(n + m)?;
        let total = n + m;
        let norm = (R::from_count(factorial(n) as u64) * R::from_count(factorial(m) as u64)).sqrt()
            * R::from_count(2).powi(total as i32).sqrt();
        let mut entries = BTreeMap::new();
        for k in 0..=total {
            let c = R::from_f64(monomial_coefficient(n, m, k) as f64);
            let occ_norm = (R::from_count(factorial(k) as u64)
                * R::from_count(factorial(total - k) as u64))
            .sqrt();
            entries.insert((k, total - k), Complex::new(c * occ_norm / norm, R::zero()));
        }
        Ok(TwoModeAmplitudes {
            entries,
            truncation: self.truncation,
        })
    }
}

/// Coefficient of `c^k d^(n+m−k)` in `(c+d)^n (c−d)^m`.
fn monomial_coefficient(n: usize, m: usize, k: usize) -> i64 {
    let mut sum = 0i64;
    for j in 0..=n.min(k) {
        let i = k - j;
        if i > m {
            continue;
        }
        let term = (binomial(n, j) * binomial(m, i)) as i64;
        if (m - i) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
