//! Seeded Monte-Carlo error-injection harness and the code-rate
//! comparison against the quaternion-subring construction.
//!
//! Each trial draws from its own substream derived from (seed, trial
//! index), so results are bit-identical regardless of how many threads
//! run the trials.

use crate::code::{Code, Verdict};
use crate::error::{Error, Result};
use crate::field::Label;
use crate::zw::is_prime;
use num::integer::gcd;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// How error values are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ValueMode {
    /// Uniform over all nonzero labels.
    UniformNonzero,
    /// Uniform over the four weight-1 classes +-1, +-w (the
    /// nearest-neighbor moves of the QAM constellation).
    WeightOne,
    /// Uniform over the powers of alpha^n, the family the one-row
    /// decoder covers.
    OmegaPower,
}

/// Error-injection channel: probabilities of 0, 1 or 2 errors per
/// block, a value mode, and the master seed.
#[derive(Debug, Clone)]
pub struct ChannelSpec {
    pub dist: [f64; 3],
    pub value_mode: ValueMode,
    pub seed: u64,
}

impl ChannelSpec {
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self
            .dist
            .iter()
            .any(|&p| !(0.0..=1.0).contains(&p) || p.is_nan())
        {
            return Err("error-count probabilities must lie in [0, 1]".into());
        }
        let sum: f64 = self.dist.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(format!("error-count probabilities sum to {sum}, not 1"));
        }
        Ok(())
    }
}

/// Exact reduced fraction, used for code rates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    pub fn new(num: i64, den: i64) -> Fraction {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.abs(), den.abs()).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Fraction {
            num: sign * num / g,
            den: sign * den / g,
        }
    }
}

/// Aggregated trial counts. `miscorrected` counts decoder outputs that
/// pass as positive but differ from the transmitted codeword.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialStats {
    pub trials: u64,
    pub no_error: u64,
    pub corrected_ok: u64,
    pub miscorrected: u64,
    pub detected: u64,
    pub failed: u64,
    pub rate: Fraction,
    pub seed: u64,
    pub p: u64,
    pub rows: usize,
}

impl TrialStats {
    pub fn to_csv(&self) -> String {
        format!(
            "trials,no_error,corrected_ok,miscorrected,detected,failed,seed,p,rows\n{},{},{},{},{},{},{},{},{}",
            self.trials,
            self.no_error,
            self.corrected_ok,
            self.miscorrected,
            self.detected,
            self.failed,
            self.seed,
            self.p,
            self.rows
        )
    }
}

#[derive(Default, Clone, Copy)]
struct Counts {
    no_error: u64,
    corrected_ok: u64,
    miscorrected: u64,
    detected: u64,
    failed: u64,
}

impl Counts {
    fn merge(self, other: Counts) -> Counts {
        Counts {
            no_error: self.no_error + other.no_error,
            corrected_ok: self.corrected_ok + other.corrected_ok,
            miscorrected: self.miscorrected + other.miscorrected,
            detected: self.detected + other.detected,
            failed: self.failed + other.failed,
        }
    }
}

/// Runs seeded trials: encode a random message, inject errors per the
/// channel spec, decode, classify against the transmitted word.
pub fn run_trials(code: &Code, channel: &ChannelSpec, trials: u64) -> TrialStats {
    let value_pool = value_pool(code, channel.value_mode);
    let counts = (0..trials)
        .into_par_iter()
        .map(|t| run_one(code, channel, &value_pool, t))
        .reduce(Counts::default, Counts::merge);
    TrialStats {
        trials,
        no_error: counts.no_error,
        corrected_ok: counts.corrected_ok,
        miscorrected: counts.miscorrected,
        detected: counts.detected,
        failed: counts.failed,
        rate: Fraction::new(code.k() as i64, code.n() as i64),
        seed: channel.seed,
        p: code.field().p(),
        rows: code.rows(),
    }
}

fn value_pool(code: &Code, mode: ValueMode) -> Vec<Label> {
    let f = code.field();
    match mode {
        ValueMode::UniformNonzero => (1..f.p()).map(Label).collect(),
        ValueMode::WeightOne => {
            let mut pool: Vec<Label> = (1..f.p())
                .map(Label)
                .filter(|&k| f.weight_of(k) == 1)
                .collect();
            pool.sort();
            pool
        }
        ValueMode::OmegaPower => {
            let mut pool: Vec<Label> = code
                .single_error_values()
                .expect("alpha tables are populated")
                .into_iter()
                .filter(|v| v.0 != 0)
                .collect();
            pool.sort();
            pool
        }
    }
}

fn run_one(code: &Code, channel: &ChannelSpec, values: &[Label], trial: u64) -> Counts {
    let f = code.field();
    let p = f.p();
    let n = code.n();
    let mut rng = substream(channel.seed, trial);

    let message: Vec<Label> = (0..code.k()).map(|_| Label(rng.gen_range(0..p))).collect();
    let transmitted = code.encode(&message).expect("message has length k");

    let count = sample_count(&mut rng, &channel.dist);
    let mut received = transmitted.clone();
    match count {
        0 => {}
        1 => {
            let pos = rng.gen_range(0..n);
            let value = values[rng.gen_range(0..values.len())];
            received[pos] = f.add(received[pos], value);
        }
        _ => {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            for pos in [i, j] {
                let value = values[rng.gen_range(0..values.len())];
                received[pos] = f.add(received[pos], value);
            }
        }
    }

    let outcome = code.decode(&received).expect("received word has length n");
    let mut counts = Counts::default();
    match outcome.verdict {
        Verdict::NoError | Verdict::Corrected => {
            let output = outcome
                .corrected
                .as_deref()
                .expect("positive verdicts carry a word");
            if output != transmitted.as_slice() {
                counts.miscorrected = 1;
            } else if outcome.verdict == Verdict::NoError {
                counts.no_error = 1;
            } else {
                counts.corrected_ok = 1;
            }
        }
        Verdict::DetectedUncorrectable => counts.detected = 1,
        Verdict::Failure => counts.failed = 1,
    }
    counts
}

/// Independent per-trial stream: two splitmix64 steps over the master
/// seed and the trial index key a ChaCha8 stream.
fn substream(seed: u64, trial: u64) -> ChaCha8Rng {
    let mixed = splitmix64(splitmix64(seed).wrapping_add(trial));
    ChaCha8Rng::seed_from_u64(splitmix64(mixed))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn sample_count(rng: &mut ChaCha8Rng, dist: &[f64; 3]) -> usize {
    let draw: f64 = rng.gen();
    let mut acc = 0.0;
    for (count, &prob) in dist.iter().enumerate() {
        acc += prob;
        if draw < acc {
            return count;
        }
    }
    2
}

/// Code rates at equal dimension k: 7k/(p-1) over the octonion subring
/// versus 6k/(p-1) over the quaternion subring, ratio 7/6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RateReport {
    pub p: i64,
    pub k: i64,
    pub r_octonion: Fraction,
    pub r_hurwitz_subring: Fraction,
    pub ratio: Fraction,
}

pub fn rate_report(p: i64, k: i64) -> Result<RateReport> {
    if p < 8 || p % 7 != 1 || !is_prime(p) {
        return Err(Error::NotSplitPrime { p });
    }
    if k < 1 {
        return Err(Error::WrongLength {
            expected: 1,
            got: 0,
        });
    }
    let r_octonion = Fraction::new(7 * k, p - 1);
    let r_hurwitz_subring = Fraction::new(6 * k, p - 1);
    // ratio of the two rates, computed exactly
    let ratio = Fraction::new(
        r_octonion.num * r_hurwitz_subring.den,
        r_octonion.den * r_hurwitz_subring.num,
    );
    Ok(RateReport {
        p,
        k,
        r_octonion,
        r_hurwitz_subring,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{OmegaSign, ResidueField};
    use crate::zw::ZwInt;

    fn code_29(rows: usize) -> Code {
        let mut f = ResidueField::build(ZwInt::new(-1, 4)).unwrap();
        let alpha = f.find_primitive(OmegaSign::Minus).unwrap();
        Code::build(f, alpha, rows).unwrap()
    }

    #[test]
    fn clean_channel_all_pass() {
        let code = code_29(2);
        let channel = ChannelSpec {
            dist: [1.0, 0.0, 0.0],
            value_mode: ValueMode::UniformNonzero,
            seed: 99,
        };
        let stats = run_trials(&code, &channel, 500);
        assert_eq!(stats.no_error + stats.corrected_ok, 500);
        assert_eq!(stats.miscorrected, 0);
        assert_eq!(stats.corrected_ok, 0);
    }

    #[test]
    fn single_errors_always_corrected_with_two_rows() {
        let code = code_29(2);
        let channel = ChannelSpec {
            dist: [0.0, 1.0, 0.0],
            value_mode: ValueMode::UniformNonzero,
            seed: 7,
        };
        let stats = run_trials(&code, &channel, 10_000);
        assert_eq!(stats.corrected_ok, 10_000);
        assert_eq!(stats.miscorrected, 0);
        assert_eq!(stats.failed, 0);
    }

    #[test]
    fn single_errors_always_corrected_with_three_and_four_rows() {
        for rows in [3, 4] {
            let code = code_29(rows);
            let channel = ChannelSpec {
                dist: [0.0, 1.0, 0.0],
                value_mode: ValueMode::UniformNonzero,
                seed: 13,
            };
            let stats = run_trials(&code, &channel, 3000);
            assert_eq!(stats.corrected_ok, 3000, "rows = {rows}");
            assert_eq!(stats.miscorrected + stats.detected + stats.failed, 0);
        }
    }

    #[test]
    fn determinism_across_thread_counts() {
        let code = code_29(2);
        let channel = ChannelSpec {
            dist: [0.2, 0.5, 0.3],
            value_mode: ValueMode::WeightOne,
            seed: 1234,
        };
        let solo = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_trials(&code, &channel, 2000));
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(8)
            .build()
            .unwrap()
            .install(|| run_trials(&code, &channel, 2000));
        assert_eq!(solo, many);
        let again = run_trials(&code, &channel, 2000);
        assert_eq!(solo, again);
    }

    #[test]
    fn counts_sum_to_trials() {
        let code = code_29(1);
        let channel = ChannelSpec {
            dist: [0.1, 0.6, 0.3],
            value_mode: ValueMode::UniformNonzero,
            seed: 5,
        };
        let s = run_trials(&code, &channel, 3000);
        assert_eq!(
            s.no_error + s.corrected_ok + s.miscorrected + s.detected + s.failed,
            3000
        );
    }

    #[test]
    fn omega_power_values_always_recoverable_one_row() {
        let code = code_29(1);
        let channel = ChannelSpec {
            dist: [0.0, 1.0, 0.0],
            value_mode: ValueMode::OmegaPower,
            seed: 11,
        };
        let stats = run_trials(&code, &channel, 2000);
        assert_eq!(stats.corrected_ok, 2000);
    }

    #[test]
    fn rate_report_values() {
        let r = rate_report(29, 2).unwrap();
        assert_eq!(r.r_octonion, Fraction::new(1, 2));
        assert_eq!(r.r_hurwitz_subring, Fraction::new(3, 7));
        assert_eq!(r.ratio, Fraction::new(7, 6));

        let r = rate_report(71, 6).unwrap();
        assert_eq!(r.r_octonion, Fraction::new(3, 5));
        assert_eq!(r.r_hurwitz_subring, Fraction::new(18, 35));
        assert_eq!(r.ratio, Fraction::new(7, 6));
    }

    #[test]
    fn rate_report_validation() {
        assert!(rate_report(30, 2).is_err());
        assert!(rate_report(29, 0).is_err());
    }

    #[test]
    fn octonion_rate_dominates() {
        for (p, k) in [(29i64, 1i64), (29, 3), (71, 2), (113, 10), (127, 4)] {
            let r = rate_report(p, k).unwrap();
            let lhs = r.r_octonion.num as i128 * r.r_hurwitz_subring.den as i128;
            let rhs = r.r_hurwitz_subring.num as i128 * r.r_octonion.den as i128;
            assert!(lhs > rhs, "rate comparison at p={p}, k={k}");
        }
    }

    #[test]
    fn dist_validation() {
        let bad = ChannelSpec {
            dist: [0.5, 0.2, 0.2],
            value_mode: ValueMode::UniformNonzero,
            seed: 0,
        };
        assert!(bad.validate().is_err());
        let good = ChannelSpec {
            dist: [0.5, 0.3, 0.2],
            value_mode: ValueMode::UniformNonzero,
            seed: 0,
        };
        assert!(good.validate().is_ok());
    }
}
