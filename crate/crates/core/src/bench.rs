//! Monte-Carlo measurement: decoding failure rate of full KEM cycles and
//! the density of units in a group algebra.
//!
//! Trials run in parallel. Trial `i` draws from its own ChaCha20 stream
//! `i` under the master seed, so results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::kem::{self, KemParams};

/// Largest algebra the exhaustive unit count will enumerate.
pub const MAX_EXHAUSTIVE: u64 = 1 << 20;

pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrialOutcome {
    Success,
    DecapFailure,
    /// Decapsulation returned a key different from the encapsulated one.
    Mismatch,
    /// Key generation or encapsulation could not sample.
    SamplingFailure,
}

pub fn run_trial(params: &KemParams, master_seed: u64, trial: u64) -> Result<TrialOutcome> {
    let mut rng = trial_rng(master_seed, trial);
    let (pk, sk) = match kem::keygen(params, &mut rng) {
        Ok(pair) => pair,
        Err(Error::Sampling(_)) => return Ok(TrialOutcome::SamplingFailure),
        Err(e) => return Err(e),
    };
    let (ct, key) = match kem::encap(&pk, &mut rng) {
        Ok(out) => out,
        Err(Error::Sampling(_)) => return Ok(TrialOutcome::SamplingFailure),
        Err(e) => return Err(e),
    };
    Ok(match kem::decap(&sk, &ct) {
        Ok(k) if k == key => TrialOutcome::Success,
        Ok(_) => TrialOutcome::Mismatch,
        Err(Error::DecapFailure) => TrialOutcome::DecapFailure,
        Err(e) => return Err(e),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DfrReport {
    pub trials: u64,
    pub successes: u64,
    pub decap_failures: u64,
    pub mismatches: u64,
    pub sampling_failures: u64,
}

impl DfrReport {
    pub fn failures(&self) -> u64 {
        self.trials - self.successes
    }

    pub fn failure_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.failures() as f64 / self.trials as f64
        }
    }

    /// `key=value` lines.
    pub fn to_kv(&self) -> String {
        format!(
            "trials={}\nsuccesses={}\nfailures={}\ndecap_failures={}\nmismatches={}\nsampling_failures={}\nfailure_rate={:.6}\n",
            self.trials,
            self.successes,
            self.failures(),
            self.decap_failures,
            self.mismatches,
            self.sampling_failures,
            self.failure_rate()
        )
    }
}

pub fn run_dfr(params: &KemParams, trials: u64, master_seed: u64) -> Result<DfrReport> {
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(params, master_seed, t))
        .collect::<Result<_>>()?;
    let mut report = DfrReport { trials, ..Default::default() };
    for o in outcomes {
        match o {
            TrialOutcome::Success => report.successes += 1,
            TrialOutcome::DecapFailure => report.decap_failures += 1,
            TrialOutcome::Mismatch => report.mismatches += 1,
            TrialOutcome::SamplingFailure => report.sampling_failures += 1,
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub exhaustive: bool,
    pub samples: u64,
    pub zero_samples: u64,
    pub invertible: u64,
}

impl DensityReport {
    pub fn density(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.invertible as f64 / self.samples as f64
        }
    }

    /// Density among the nonzero samples.
    pub fn density_nonzero(&self) -> f64 {
        let nonzero = self.samples - self.zero_samples;
        if nonzero == 0 {
            0.0
        } else {
            self.invertible as f64 / nonzero as f64
        }
    }

    pub fn to_kv(&self) -> String {
        format!(
            "mode={}\nsamples={}\nzero_samples={}\nnonzero_samples={}\ninvertible={}\ndensity={:.6}\ndensity_nonzero={:.6}\n",
            if self.exhaustive { "exhaustive" } else { "sampled" },
            self.samples,
            self.zero_samples,
            self.samples - self.zero_samples,
            self.invertible,
            self.density(),
            self.density_nonzero()
        )
    }
}

pub fn unit_density(algebra: &GroupAlgebra, samples: u64, master_seed: u64) -> DensityReport {
    let flags: Vec<(bool, bool)> = (0..samples)
        .into_par_iter()
        .map(|t| {
            let a = algebra.sample(&mut trial_rng(master_seed, t));
            (a.is_zero(), a.is_invertible())
        })
        .collect();
    DensityReport {
        exhaustive: false,
        samples,
        zero_samples: flags.iter().filter(|f| f.0).count() as u64,
        invertible: flags.iter().filter(|f| f.1).count() as u64,
    }
}

/// Tests every element of a small algebra.
pub fn unit_density_exhaustive(algebra: &GroupAlgebra) -> Result<DensityReport> {
    let field = algebra.field();
    let size = (field.m() * algebra.n()) as f64 * f64::from(field.q()).log2();
    if size > (MAX_EXHAUSTIVE as f64).log2() {
        return Err(Error::param(format!(
            "algebra too large to enumerate (more than {MAX_EXHAUSTIVE} elements)"
        )));
    }
    let mut report = DensityReport { exhaustive: true, samples: 0, zero_samples: 0, invertible: 0 };
    for a in algebra.elements() {
        report.samples += 1;
        report.zero_samples += u64::from(a.is_zero());
        report.invertible += u64::from(a.is_invertible());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::group::GroupDescriptor;

    #[test]
    fn dfr_is_deterministic() {
        let p = KemParams::new(Field::preset(2, 13).unwrap(), GroupDescriptor::dihedral(4).unwrap(), 2, 2)
            .unwrap();
        let a = run_dfr(&p, 20, 9).unwrap();
        let b = run_dfr(&p, 20, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trials, 20);
        assert_eq!(a.mismatches, 0);
        assert_eq!(run_dfr(&p, 1, 1).unwrap().trials, 1);
    }

    #[test]
    fn exhaustive_density_small() {
        let alg = GroupAlgebra::new(Field::preset(2, 2).unwrap(), GroupDescriptor::cyclic(2).unwrap());
        let r = unit_density_exhaustive(&alg).unwrap();
        assert_eq!((r.samples, r.zero_samples, r.invertible), (16, 1, 12));
        let big = GroupAlgebra::new(Field::preset(2, 11).unwrap(), GroupDescriptor::dihedral(7).unwrap());
        assert!(unit_density_exhaustive(&big).is_err());
    }

    #[test]
    fn sampled_density_is_reproducible() {
        let alg = GroupAlgebra::new(Field::preset(2, 5).unwrap(), GroupDescriptor::dihedral(3).unwrap());
        assert_eq!(unit_density(&alg, 200, 3), unit_density(&alg, 200, 3));
    }
}
