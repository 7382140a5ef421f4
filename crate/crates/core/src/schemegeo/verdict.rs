//! Smoothness verdicts: known smooth families, otherwise a search for
//! tangent-dimension jumps over sampled configurations.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::config::{AnyConfig, SubspaceConfig};
use super::field::PrimeField;
use super::sample::{bottom_up_config, full_flag_config, top_down_config};
use super::tangent::tangent_dimension;
use crate::charfn::CharFn;
use crate::error::{invalid, Result};
use crate::incidence::{build_s_chi, classify, transitive_closure, IncidenceStructure};

/// Default prime for tangent computations.
pub const DEFAULT_TANGENT_PRIME: u64 = 10007;

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Smooth {
        reason: String,
    },
    /// `config` has tangent dimension `tangent`, larger than the smallest
    /// tangent dimension `reference` seen elsewhere on the scheme.
    SingularWitness {
        config: SubspaceConfig<PrimeField>,
        tangent: usize,
        reference: usize,
    },
    Unknown {
        tangents: Vec<usize>,
    },
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        match self {
            Verdict::Smooth { reason } => json!({ "verdict": "Smooth", "reason": reason }),
            Verdict::SingularWitness { config, tangent, reference } => {
                let f = *config.field().expect("a witness has at least one vertex");
                let cfg: Value = serde_json::from_str(&AnyConfig::Fp(f, config.clone()).to_json())
                    .expect("configuration JSON parses");
                json!({ "verdict": "SingularWitness", "tangent": tangent, "reference": reference, "config": cfg })
            }
            Verdict::Unknown { tangents } => json!({ "verdict": "Unknown", "tangents": tangents }),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct WitnessOptions {
    pub prime: u64,
    /// Random configurations drawn per sampler.
    pub samples: usize,
    pub seed: u64,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions { prime: DEFAULT_TANGENT_PRIME, samples: 8, seed: 0 }
    }
}

/// Verdict for the component indexed by `chi`.
pub fn smooth_verdict(chi: &CharFn, r: u32, opts: &WitnessOptions) -> Result<Verdict> {
    if r <= 2 {
        return Ok(Verdict::Smooth { reason: "r <= 2: a product of copies of P^1".into() });
    }
    if chi.dim() <= 2 {
        return Ok(Verdict::Smooth { reason: "d <= 2: interval structure, smooth by peeling".into() });
    }
    let s = build_s_chi(chi, r)?;
    structure_verdict(&s.structure, r, opts)
}

/// Verdict for an arbitrary incidence structure.
pub fn structure_verdict(s: &IncidenceStructure, r: u32, opts: &WitnessOptions) -> Result<Verdict> {
    if s.rank() + 1 != r {
        return invalid(format!("structure of rank {} does not live in dimension {r}", s.rank()));
    }
    if r <= 2 {
        return Ok(Verdict::Smooth { reason: "r <= 2: a product of copies of P^1".into() });
    }
    if s.is_empty() {
        return Ok(Verdict::Smooth { reason: "empty structure: a single point".into() });
    }
    let n = s.num_vertices();
    if s.part_sizes().iter().all(|&c| c <= 1) && transitive_closure(s).len() == n * (n - 1) / 2 {
        return Ok(Verdict::Smooth { reason: "complete flag: a partial flag variety".into() });
    }
    if let Ok(c) = classify(s) {
        if c.is_interval {
            return Ok(Verdict::Smooth { reason: "interval structure, smooth by peeling".into() });
        }
    }
    let f = PrimeField::new(opts.prime)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut seen: Vec<(usize, SubspaceConfig<PrimeField>)> = Vec::new();
    let flag = full_flag_config(s, &f, &mut rng)?;
    seen.push((tangent_dimension(&flag), flag));
    for _ in 0..opts.samples {
        for c in [top_down_config(s, &f, &mut rng), bottom_up_config(s, &f, &mut rng)].into_iter().flatten() {
            seen.push((tangent_dimension(&c), c));
        }
    }
    let min = seen.iter().map(|(t, _)| *t).min().expect("at least the flag configuration");
    let (max, witness) = seen
        .iter()
        .enumerate()
        .max_by_key(|(i, (t, _))| (*t, std::cmp::Reverse(*i)))
        .map(|(_, (t, c))| (*t, c.clone()))
        .expect("nonempty");
    if max > min {
        Ok(Verdict::SingularWitness { config: witness, tangent: max, reference: min })
    } else {
        Ok(Verdict::Unknown { tangents: seen.into_iter().map(|(t, _)| t).collect() })
    }
}
