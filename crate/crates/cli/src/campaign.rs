//! Random campaigns over classes `{b + kθ}` of a fixed period and bounded
//! Hamming weight.
//!
//! Draw `a` uses a ChaCha stream keyed by `(seed, a)`, so any record can be
//! regenerated from its `(seed, sample_index)` alone.

use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

use brauer_core::driver::{self, BoundOptions, Method};
use brauer_core::{AlgebraContext, BrauerClassSpec};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::form::print_form;

/// A bound cell: a value, or why there is none.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundCell {
    Value(u64),
    Skipped,
    Inconclusive,
}

impl BoundCell {
    pub fn value(self) -> Option<u64> {
        match self {
            BoundCell::Value(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for BoundCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundCell::Value(v) => write!(f, "{v}"),
            BoundCell::Skipped => f.write_str("skipped"),
            BoundCell::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

impl Serialize for BoundCell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleRecord {
    pub id: u64,
    pub g: usize,
    pub period: u64,
    pub form: String,
    /// Least weight over the orbit `{b + kθ}`.
    pub hamming_weight: usize,
    pub symbol_length: usize,
    pub djp_bound: BoundCell,
    pub refined_bound: BoundCell,
    pub hotchkiss_bound: BoundCell,
    pub cap: u64,
    pub elapsed_ms: Option<u64>,
    pub seed: u64,
    pub sample_index: u64,
}

#[derive(Clone, Debug)]
pub struct CampaignParams {
    pub g: usize,
    pub period: u64,
    pub weight_bound: usize,
    pub count: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    pub budget: u64,
    /// Accept a drawn orbit with probability `1/(members within the weight
    /// bound)`, which makes every eligible orbit equally likely.
    pub orbit_uniform: bool,
    pub omit_timings: bool,
    /// Consecutive draws without a new orbit before giving up.
    pub patience: u64,
}

impl CampaignParams {
    pub fn new(g: usize, period: u64, weight_bound: usize, count: usize, seed: u64) -> Self {
        Self {
            g,
            period,
            weight_bound,
            count,
            seed,
            methods: Method::ALL.to_vec(),
            budget: brauer_core::hotchkiss::DEFAULT_BUDGET,
            orbit_uniform: false,
            omit_timings: false,
            patience: 20_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Campaign {
    pub records: Vec<SampleRecord>,
    /// Fewer than `count` distinct orbits were found.
    pub exhausted: bool,
}

/// One raw draw: a coordinate vector mod `period` of weight at most the bound.
pub fn draw(params: &CampaignParams, rank: usize, sample_index: u64) -> Vec<u64> {
    let mut rng = ChaCha20Rng::seed_from_u64(params.seed);
    rng.set_stream(sample_index);
    let n = params.period;
    let top = params.weight_bound.min(rank);
    // Uniform over all vectors of weight ≤ top: weight k has C(rank,k)(n−1)^k.
    let weights: Vec<BigUint> = (0..=top)
        .map(|k| binomial(rank, k) * BigUint::from(n - 1).pow(k as u32))
        .collect();
    let total: BigUint = weights.iter().sum();
    let bits = total.bits() + 64;
    let mut pick = random_below(&mut rng, &total, bits);
    let mut k = 0;
    for (i, w) in weights.iter().enumerate() {
        if pick < *w {
            k = i;
            break;
        }
        pick -= w;
    }
    let mut coords = vec![0u64; rank];
    for pos in index::sample(&mut rng, rank, k) {
        coords[pos] = rng.gen_range(1..n);
    }
    coords
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

fn random_below(rng: &mut ChaCha20Rng, bound: &BigUint, bits: u64) -> BigUint {
    // Rejection-free up to a 2^-64 bias, which is negligible here.
    let words = bits.div_ceil(32) as usize;
    let digits: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
    BigUint::from_slice(&digits) % bound
}

fn orbit_weight_count(spec: &BrauerClassSpec, weight_bound: usize) -> u64 {
    spec.orbit_coordinates()
        .iter()
        .filter(|c| c.iter().filter(|x| **x != 0).count() <= weight_bound)
        .count() as u64
}

/// Selects `count` distinct orbits of true period `period`, then bounds
/// each with every enabled method. Records come back in draw order.
pub fn sample_campaign(params: &CampaignParams) -> anyhow::Result<Campaign> {
    anyhow::ensure!(params.weight_bound >= 1, "weight bound must be at least 1");
    anyhow::ensure!(params.count >= 1, "count must be at least 1");
    anyhow::ensure!(params.period >= 2, "period must be at least 2");
    let ctx = AlgebraContext::new(params.g)?;
    let rank = ctx.rank(2);
    let mut seen = HashSet::new();
    let mut chosen: Vec<(u64, BrauerClassSpec)> = Vec::new();
    let mut idle = 0u64;
    let mut a = 0u64;
    while chosen.len() < params.count && idle < params.patience {
        let coords = draw(params, rank, a);
        let spec = BrauerClassSpec::from_coordinates(&ctx, &coords, params.period)?;
        let index = a;
        a += 1;
        idle += 1;
        if spec.period() != params.period || spec.true_period() != params.period {
            continue;
        }
        if params.orbit_uniform {
            let mut rng = ChaCha20Rng::seed_from_u64(params.seed ^ 0x9e37_79b9_7f4a_7c15);
            rng.set_stream(index);
            let m = orbit_weight_count(&spec, params.weight_bound);
            if rng.gen_range(0..m) != 0 {
                continue;
            }
        }
        let canon = spec.canonical_representative();
        if seen.insert(canon.coordinates()) {
            chosen.push((index, canon));
            idle = 0;
        }
    }
    let exhausted = chosen.len() < params.count;
    if exhausted {
        log::warn!(
            "only {} distinct orbits found after {a} draws",
            chosen.len()
        );
    }
    let options = BoundOptions {
        methods: params.methods.clone(),
        exhaustive: true,
        budget: params.budget,
        ..BoundOptions::default()
    };
    let records = chosen
        .par_iter()
        .enumerate()
        .map(|(id, (index, spec))| evaluate(params, &options, id as u64, *index, spec))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Campaign { records, exhausted })
}

fn evaluate(
    params: &CampaignParams,
    options: &BoundOptions,
    id: u64,
    sample_index: u64,
    spec: &BrauerClassSpec,
) -> anyhow::Result<SampleRecord> {
    let start = Instant::now();
    let report = driver::index_lower_bound(spec, options)?;
    let bounds = report
        .method_bounds
        .clone()
        .expect("exhaustive runs report per-method bounds");
    let cell = |m: Method, b: Option<u64>| {
        if !params.methods.contains(&m) {
            BoundCell::Skipped
        } else {
            b.map_or(BoundCell::Inconclusive, BoundCell::Value)
        }
    };
    Ok(SampleRecord {
        id,
        g: params.g,
        period: params.period,
        form: print_form(spec.form()),
        hamming_weight: spec.orbit_hamming_weight(),
        symbol_length: spec.orbit_symbol_length(),
        djp_bound: cell(Method::Djp, bounds.djp),
        refined_bound: cell(Method::Refined, bounds.refined),
        hotchkiss_bound: cell(Method::Hotchkiss, bounds.hotchkiss),
        cap: report.cap,
        elapsed_ms: (!params.omit_timings).then(|| start.elapsed().as_millis().to_u64().unwrap_or(u64::MAX)),
        seed: params.seed,
        sample_index,
    })
}

pub const CSV_HEADER: [&str; 13] = [
    "id",
    "g",
    "period",
    "form",
    "hamming_weight",
    "symbol_length",
    "djp_bound",
    "refined_bound",
    "hotchkiss_bound",
    "cap",
    "elapsed_ms",
    "seed",
    "sample_index",
];

pub fn write_csv<W: std::io::Write>(records: &[SampleRecord], out: W) -> anyhow::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
