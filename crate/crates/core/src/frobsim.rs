//! Seeded simulation of eigenvalue streams with Frobenius classes drawn from
//! `SL(2, F_5)` in proportion to class size.
//!
//! Every prime `p <= X` gets a class from a ChaCha8 stream keyed by `seed`
//! and selected by `p`, so a draw depends only on `(seed, p)`. Results are
//! therefore the same for any thread count or iteration order. The
//! conductor is 1 and every prime is tempered.
//!
//! Floating point is confined to this module. Sums run over prime powers
//! in ascending order with Neumaier compensation.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::bipoly::{tk, BiPoly};
use crate::error::{Error, Result};
use crate::golden::{a_index, a_set, GoldenInt, A_LABELS};
use crate::icosagroup::{ConjClassTable, GROUP_ORDER, NUM_CLASSES};
use crate::rescalc::{RFunctional, MAX_DEGREE};

/// Odd-only sieve of Eratosthenes; primes `<= x` in ascending order.
pub fn sieve_primes(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    // slot k stands for 2k + 1
    let len = ((x - 1) / 2 + 1) as usize;
    let mut composite = vec![false; len];
    let mut k = 1usize;
    while (2 * k + 1) * (2 * k + 1) <= x as usize {
        if !composite[k] {
            let p = 2 * k + 1;
            let mut m = (p * p - 1) / 2;
            while m < len {
                composite[m] = true;
                m += p;
            }
        }
        k += 1;
    }
    let mut primes = vec![2];
    primes.extend((1..len).filter(|&k| !composite[k]).map(|k| 2 * k as u64 + 1));
    primes
}

/// Class index for prime `p` under `seed`. Uniform on the group, so class
/// `C` comes up with probability `|C| / 120`.
pub fn draw_class(seed: u64, p: u64, cumulative: &[usize; NUM_CLASSES]) -> u8 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(p);
    let u = rng.gen_range(0..GROUP_ORDER);
    cumulative.iter().position(|&c| u < c).expect("u < 120") as u8
}

fn cumulative_sizes(table: &ConjClassTable) -> [usize; NUM_CLASSES] {
    let mut out = [0; NUM_CLASSES];
    let mut acc = 0;
    for (slot, c) in out.iter_mut().zip(table.classes()) {
        acc += c.size;
        *slot = acc;
    }
    out
}

/// Synthetic Frobenius data for all primes up to `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueStream {
    pub x: u64,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub classes: Vec<u8>,
    chi: [GoldenInt; NUM_CLASSES],
}

impl EigenvalueStream {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `a_p = chi(class of p)` for the `idx`-th prime.
    pub fn a_p(&self, idx: usize) -> &GoldenInt {
        &self.chi[self.classes[idx] as usize]
    }

    /// `a_{p^j} = t_j(a_p)`.
    pub fn a_prime_power(&self, idx: usize, j: u32) -> GoldenInt {
        let a = self.a_p(idx);
        tk(j as usize)
            .eval_int(a, &GoldenInt::zero())
            .to_golden_int()
            .expect("t_j has integer coefficients")
    }

    /// `b_n = tau(a_n)`.
    pub fn b_prime_power(&self, idx: usize, j: u32) -> GoldenInt {
        self.a_prime_power(idx, j).conj()
    }

    /// All prime powers `n = p^j <= x` as `(n, prime index, j)`, ascending in `n`.
    pub fn prime_powers(&self) -> Vec<(u64, usize, u32)> {
        let mut out = Vec::with_capacity(self.primes.len() + 256);
        for (idx, &p) in self.primes.iter().enumerate() {
            let mut n = p;
            let mut j = 1;
            loop {
                out.push((n, idx, j));
                match n.checked_mul(p) {
                    Some(m) if m <= self.x => {
                        n = m;
                        j += 1;
                    }
                    _ => break,
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Number of primes with `a_p` equal to each element of `A`, in
    /// [`a_set`] order.
    pub fn counts(&self) -> [u64; 9] {
        let slot: Vec<usize> = self
            .chi
            .iter()
            .map(|c| a_index(c).expect("chi takes values in A"))
            .collect();
        let mut out = [0u64; 9];
        for &c in &self.classes {
            out[slot[c as usize]] += 1;
        }
        out
    }
}

/// Draws the class of every prime up to `x` on the current rayon pool.
pub fn sample_stream(x: u64, seed: u64) -> EigenvalueStream {
    let table = ConjClassTable::standard();
    let cumulative = cumulative_sizes(table);
    let primes = sieve_primes(x);
    let classes: Vec<u8> = primes
        .par_iter()
        .map(|&p| draw_class(seed, p, &cumulative))
        .collect();
    stream_from_parts(x, seed, primes, classes)
}

/// The same draws computed on one thread in prime order.
pub fn sample_stream_serial(x: u64, seed: u64) -> EigenvalueStream {
    let table = ConjClassTable::standard();
    let cumulative = cumulative_sizes(table);
    let primes = sieve_primes(x);
    let classes: Vec<u8> = primes.iter().map(|&p| draw_class(seed, p, &cumulative)).collect();
    stream_from_parts(x, seed, primes, classes)
}

fn stream_from_parts(x: u64, seed: u64, primes: Vec<u64>, classes: Vec<u8>) -> EigenvalueStream {
    let table = ConjClassTable::standard();
    let chi: [GoldenInt; NUM_CLASSES] = std::array::from_fn(|k| table.classes()[k].chi.clone());
    EigenvalueStream {
        x,
        seed,
        primes,
        classes,
        chi,
    }
}

/// `#{p <= X : a_p = alpha} / pi(X)`.
pub fn empirical_density(stream: &EigenvalueStream, alpha: &GoldenInt) -> Result<f64> {
    let k = a_index(alpha).ok_or_else(|| Error::NotInA(alpha.to_string()))?;
    Ok(stream.counts()[k] as f64 / stream.len().max(1) as f64)
}

/// Neumaier's compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PartialSum {
    pub sum: f64,
    pub ratio: f64,
}

/// `sum over p^j <= X of log(p) f(a_{p^j}, tau(a_{p^j}))`, and its ratio to `X`.
pub fn partial_sum(stream: &EigenvalueStream, f: &BiPoly) -> Result<PartialSum> {
    if let Some(d) = f.total_degree().filter(|&d| d > MAX_DEGREE) {
        return Err(Error::DegreeTooHigh {
            degree: d,
            max: MAX_DEGREE,
        });
    }
    // every a_n lies in A, so nine exact evaluations cover the whole stream
    let values: Vec<f64> = a_set()
        .iter()
        .map(|a| f.eval_int(a, &a.conj()).to_f64())
        .collect();
    let prime_slot: Vec<usize> = stream.chi.iter().map(|c| a_index(c).expect("in A")).collect();
    let mut acc = CompensatedSum::default();
    for (_, idx, j) in stream.prime_powers() {
        let slot = if j == 1 {
            prime_slot[stream.classes[idx] as usize]
        } else {
            let a = stream.a_prime_power(idx, j);
            a_index(&a).ok_or_else(|| Error::NotInA(a.to_string()))?
        };
        acc.add((stream.primes[idx] as f64).ln() * values[slot]);
    }
    let sum = acc.value();
    Ok(PartialSum {
        sum,
        ratio: sum / stream.x as f64,
    })
}

/// One target polynomial for [`run_report`].
#[derive(Clone, Debug)]
pub struct Target {
    pub label: String,
    pub poly: BiPoly,
}

impl Target {
    pub fn new(label: impl Into<String>, poly: BiPoly) -> Self {
        Self {
            label: label.into(),
            poly,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialSumEntry {
    pub f: String,
    pub ratio: f64,
    pub target: f64,
    pub sum: f64,
}

/// Map keyed by the labels of `A` that serializes in [`a_set`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct ByAlpha<T>(pub [T; 9]);

impl<T: Serialize> Serialize for ByAlpha<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(9))?;
        for (label, v) in A_LABELS.iter().zip(&self.0) {
            map.serialize_entry(label, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimReport {
    pub x: u64,
    pub seed: u64,
    pub pi_x: u64,
    pub counts: ByAlpha<u64>,
    pub densities: ByAlpha<f64>,
    pub partial_sums: Vec<PartialSumEntry>,
    pub runtime_ms: f64,
}

impl SimReport {
    /// The report with its timing zeroed, for comparing runs.
    pub fn without_runtime(mut self) -> Self {
        self.runtime_ms = 0.0;
        self
    }
}

pub fn run_report(x: u64, seed: u64, targets: &[Target]) -> Result<SimReport> {
    let start = Instant::now();
    let stream = sample_stream(x, seed);
    let r = RFunctional::standard();
    let counts = stream.counts();
    let pi_x = stream.len() as u64;
    let densities = counts.map(|c| c as f64 / pi_x.max(1) as f64);
    let partial_sums = targets
        .iter()
        .map(|t| {
            let ps = partial_sum(&stream, &t.poly)?;
            let target = r.r_poly(&t.poly)?.to_f64();
            Ok(PartialSumEntry {
                f: t.label.clone(),
                ratio: ps.ratio,
                target,
                sum: ps.sum,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimReport {
        x,
        seed,
        pi_x,
        counts: ByAlpha(counts),
        densities: ByAlpha(densities),
        partial_sums,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Expected density of each element of `A` under the class measure, in
/// [`a_set`] order.
pub fn class_measure_densities() -> [f64; 9] {
    let table = ConjClassTable::standard();
    let mut out = [0.0; 9];
    for c in table.classes() {
        out[a_index(&c.chi).expect("in A")] += c.size as f64 / GROUP_ORDER as f64;
    }
    out
}

/// Three binomial standard deviations for a density `p` over `n` trials.
pub fn binomial_band(p: f64, n: u64) -> f64 {
    3.0 * (p * (1.0 - p) / n as f64).sqrt()
}

/// Mean and sample standard deviation of the partial-sum ratios over
/// several seeds, one entry per target.
pub fn ratio_spread(x: u64, seeds: &[u64], targets: &[BiPoly]) -> Result<Vec<(f64, f64)>> {
    let mut per_target: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for &seed in seeds {
        let stream = sample_stream(x, seed);
        for (k, f) in targets.iter().enumerate() {
            per_target
                .entry(k)
                .or_default()
                .push(partial_sum(&stream, f)?.ratio);
        }
    }
    Ok(per_target
        .into_values()
        .map(|v| {
            let n = v.len() as f64;
            let mean = v.iter().sum::<f64>() / n;
            let var = v.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
            (mean, var.sqrt())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::octic_h;

    fn trial_division_count(x: u64) -> usize {
        (2..=x)
            .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .count()
    }

    #[test]
    fn small_sieves() {
        assert_eq!(sieve_primes(10), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(2), vec![2]);
        assert!(sieve_primes(1).is_empty());
        assert_eq!(sieve_primes(100).len(), 25);
        for x in [3, 4, 9, 25, 49, 121, 1000] {
            assert_eq!(sieve_primes(x).len(), trial_division_count(x), "x = {x}");
        }
    }

    #[test]
    fn stream_values_are_tempered() {
        let s = sample_stream(5000, 7);
        for i in 0..s.len() {
            assert!(s.a_p(i).in_a());
        }
        for (_, idx, j) in s.prime_powers() {
            let a = s.a_prime_power(idx, j);
            assert!(a.in_a(), "a_(p^{j}) = {a}");
            let b = s.b_prime_power(idx, j);
            // either a = b is an integer or a is one of ±phi, ±phibar
            assert!((a == b && a.is_rational()) || a_index(&a).is_some_and(|k| k >= 5));
        }
    }

    #[test]
    fn deterministic_and_order_free() {
        let a = sample_stream(20_000, 99);
        assert_eq!(a, sample_stream(20_000, 99));
        assert_eq!(a, sample_stream_serial(20_000, 99));
        assert_ne!(a.classes, sample_stream(20_000, 100).classes);
        // a prefix of a longer run draws the same classes
        let longer = sample_stream(40_000, 99);
        assert_eq!(&longer.classes[..a.len()], &a.classes[..]);
    }

    #[test]
    fn densities_sum_to_one() {
        let s = sample_stream(10_000, 3);
        let total: f64 = a_set().iter().map(|a| empirical_density(&s, a).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(matches!(
            empirical_density(&s, &GoldenInt::from_int(3)),
            Err(Error::NotInA(_))
        ));
    }

    #[test]
    fn class_measure_matches_density_table() {
        let d = class_measure_densities();
        let expected = [
            0.25,
            1.0 / 6.0,
            1.0 / 6.0,
            1.0 / 120.0,
            1.0 / 120.0,
            0.1,
            0.1,
            0.1,
            0.1,
        ];
        for (a, b) in d.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn h_sums_to_zero_exactly() {
        let s = sample_stream(10_000, 1);
        assert_eq!(partial_sum(&s, &octic_h()).unwrap().sum, 0.0);
        let too_big = BiPoly::x().pow(5) * BiPoly::y().pow(4);
        assert!(matches!(
            partial_sum(&s, &too_big),
            Err(Error::DegreeTooHigh { degree: 9, .. })
        ));
    }

    #[test]
    fn compensated_sum() {
        let mut s = CompensatedSum::default();
        for v in [1e16, 1.0, -1e16, 1.0] {
            s.add(v);
        }
        assert_eq!(s.value(), 2.0);
    }
}
