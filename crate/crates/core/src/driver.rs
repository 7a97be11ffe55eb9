//! Index lower bounds by iterating over prime-power degrees, the closed-form
//! degree past which the DJP obstruction vanishes, and the
//! indecomposability certifier.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::BrauerClassSpec;
use crate::arith;
use crate::djp;
use crate::error::{Error, Result};
use crate::hotchkiss::{self, HotchkissOutcome};
use crate::refined::{self, RefinedCertificate};

/// `rs` and `s = rs/r` for dimension `g` and prime power `p^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundParameters {
    pub dim: usize,
    pub p: u64,
    pub r: u32,
    pub rs: u64,
    /// `s` as a reduced fraction.
    pub s_num: u64,
    pub s_den: u64,
}

impl BoundParameters {
    /// Whether `s ≥ g`, i.e. the bound says nothing below the fundamental class.
    pub fn vacuous(&self) -> bool {
        self.s_num >= self.dim as u64 * self.s_den
    }

    pub fn s_text(&self) -> String {
        if self.s_den == 1 {
            self.s_num.to_string()
        } else {
            format!("{}/{}", self.s_num, self.s_den)
        }
    }
}

/// The DJP obstruction for a class of period `p^r` on a `g`-fold vanishes
/// in degree `p^{rs}`, with
/// `rs = r·g − ⌊(g−1)/(p−1)⌋ + ⌊log_p(g−1)⌋ + 1`.
pub fn failure_degree_bound(g: usize, p: u64, r: u32) -> Result<BoundParameters> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!("dimension {g} < 2")));
    }
    if !arith::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("exponent r must be positive".into()));
    }
    let g64 = g as u64;
    let rs = r as u64 * g64 - (g64 - 1) / (p - 1) + arith::ilog(g64 - 1, p) as u64 + 1;
    let den = r as u64;
    let common = rs.gcd(&den);
    Ok(BoundParameters {
        dim: g,
        p,
        r,
        rs,
        s_num: rs / common,
        s_den: den / common,
    })
}

/// Column prime powers of the `s` table.
pub const TABLE_COLUMNS: [(u64, u32); 10] = [
    (2, 1),
    (3, 1),
    (2, 2),
    (5, 1),
    (7, 1),
    (2, 3),
    (3, 2),
    (11, 1),
    (13, 1),
    (2, 4),
];

/// Cells of the `s` table for dimensions `3..=max_dim`; `None` where `s ≥ g`.
pub fn table_s(max_dim: usize) -> Result<Vec<(usize, Vec<Option<String>>)>> {
    (3..=max_dim)
        .map(|g| {
            let cells = TABLE_COLUMNS
                .iter()
                .map(|&(p, r)| {
                    let b = failure_degree_bound(g, p, r)?;
                    Ok((!b.vacuous()).then(|| b.s_text()))
                })
                .collect::<Result<_>>()?;
            Ok((g, cells))
        })
        .collect()
}

fn power_label(p: u64, r: u32) -> String {
    if r == 1 {
        p.to_string()
    } else {
        format!("{p}^{r}")
    }
}

/// The table as aligned plain text, hyphens for vacuous cells.
pub fn render_table_s(max_dim: usize) -> Result<String> {
    let mut rows: Vec<Vec<String>> = vec![std::iter::once("dim".to_string())
        .chain(TABLE_COLUMNS.iter().map(|&(p, r)| power_label(p, r)))
        .collect()];
    for (g, cells) in table_s(max_dim)? {
        rows.push(
            std::iter::once(g.to_string())
                .chain(cells.into_iter().map(|c| c.unwrap_or_else(|| "-".into())))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Djp,
    Refined,
    Hotchkiss,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Djp, Method::Refined, Method::Hotchkiss];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Djp => "djp",
            Method::Refined => "refined",
            Method::Hotchkiss => "hotchkiss",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "djp" => Ok(Method::Djp),
            "refined" => Ok(Method::Refined),
            "hotchkiss" => Ok(Method::Hotchkiss),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundOptions {
    /// Enabled methods; always tried in the order djp, refined, hotchkiss.
    pub methods: Vec<Method>,
    /// Primes for the refined test; defaults to the prime of each component.
    pub primes: Option<Vec<u64>>,
    /// Stage-2 evaluation budget per degree.
    pub budget: u64,
    /// Run every method at every degree instead of stopping at the first
    /// obstruction, and report a bound per method.
    pub exhaustive: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            methods: Method::ALL.to_vec(),
            primes: None,
            budget: hotchkiss::DEFAULT_BUDGET,
            exhaustive: false,
        }
    }
}

impl BoundOptions {
    pub fn with_methods(methods: &[Method]) -> Self {
        Self {
            methods: methods.to_vec(),
            ..Self::default()
        }
    }

    fn ordered_methods(&self) -> Vec<Method> {
        let mut m = self.methods.clone();
        m.sort();
        m.dedup();
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Obstructed,
    NotObstructed,
    Inconclusive,
    Skipped,
}

/// Enough to replay an obstruction: the method and its witness data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Certificate {
    /// The stacked integrality system has no solution.
    Djp,
    Refined(RefinedCertificate),
    Hotchkiss(HotchkissOutcome),
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRecord {
    /// Period of the primary component this degree belongs to.
    pub component: u64,
    pub d: u64,
    pub djp: Verdict,
    pub refined: Verdict,
    pub hotchkiss: Verdict,
    pub refined_primes: Vec<u64>,
    pub certificate: Option<Certificate>,
    pub elapsed_ms: u64,
}

impl DegreeRecord {
    pub fn verdict(&self, m: Method) -> Verdict {
        match m {
            Method::Djp => self.djp,
            Method::Refined => self.refined,
            Method::Hotchkiss => self.hotchkiss,
        }
    }

    pub fn obstructed(&self) -> bool {
        Method::ALL.iter().any(|m| self.verdict(*m) == Verdict::Obstructed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecSummary {
    pub g: usize,
    pub period: u64,
    pub true_period: u64,
    pub form: String,
    pub coordinates: Vec<u64>,
}

impl SpecSummary {
    pub fn of(spec: &BrauerClassSpec) -> Self {
        Self {
            g: spec.g(),
            period: spec.period(),
            true_period: spec.true_period(),
            form: spec.form().to_string(),
            coordinates: spec.coordinates(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentBound {
    pub period: u64,
    pub symbol_length: usize,
    pub lower_bound: u64,
    pub cap: u64,
}

/// Per-method bounds from an exhaustive run. `hotchkiss` is `None` when some
/// degree was inconclusive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MethodBounds {
    pub djp: Option<u64>,
    pub refined: Option<u64>,
    pub hotchkiss: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub spec: SpecSummary,
    pub components: Vec<ComponentBound>,
    pub degrees: Vec<DegreeRecord>,
    pub lower_bound: u64,
    pub cap: u64,
    pub determined: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method_bounds: Option<MethodBounds>,
}

/// The class written over its true period, split into primary parts.
fn primary_parts(spec: &BrauerClassSpec) -> Vec<BrauerClassSpec> {
    let s = spec.theta_normalized();
    if s.is_trivial() {
        return Vec::new();
    }
    s.primary_decomposition()
        .into_iter()
        .map(|c| c.theta_normalized())
        .filter(|c| !c.is_trivial())
        .collect()
}

fn prime_power(q: u64) -> (u64, u32) {
    let f = arith::factorize(q);
    debug_assert_eq!(f.len(), 1);
    f[0]
}

fn checked_pow(p: u64, e: u32) -> Result<u64> {
    arith::pow_u64(p, e).ok_or_else(|| Error::Overflow(format!("{p}^{e}")))
}

/// Runs one method at one degree.
fn run_method(
    spec: &BrauerClassSpec,
    d: u64,
    method: Method,
    primes: &[u64],
    budget: u64,
) -> Result<(Verdict, Option<Certificate>)> {
    let verdict = |b: bool| {
        if b {
            Verdict::Obstructed
        } else {
            Verdict::NotObstructed
        }
    };
    Ok(match method {
        Method::Djp => {
            let b = djp::djp_obstructed(spec, d)?;
            (verdict(b), b.then_some(Certificate::Djp))
        }
        Method::Refined => {
            let out = refined::refined_obstructed(spec, d, primes, 1)?;
            let b = out.obstructed;
            (verdict(b), b.then_some(Certificate::Refined(out.certificate)))
        }
        Method::Hotchkiss => {
            let out = hotchkiss::hotchkiss_check(spec, d, budget)?;
            match out.obstructed() {
                Some(true) => (Verdict::Obstructed, Some(Certificate::Hotchkiss(out))),
                Some(false) => (Verdict::NotObstructed, None),
                None => (Verdict::Inconclusive, None),
            }
        }
    })
}

fn test_degree(
    spec: &BrauerClassSpec,
    d: u64,
    options: &BoundOptions,
    primes: &[u64],
) -> Result<DegreeRecord> {
    let start = Instant::now();
    let mut record = DegreeRecord {
        component: spec.period(),
        d,
        djp: Verdict::Skipped,
        refined: Verdict::Skipped,
        hotchkiss: Verdict::Skipped,
        refined_primes: Vec::new(),
        certificate: None,
        elapsed_ms: 0,
    };
    for method in options.ordered_methods() {
        let (v, cert) = run_method(spec, d, method, primes, options.budget)?;
        match method {
            Method::Djp => record.djp = v,
            Method::Refined => {
                record.refined = v;
                record.refined_primes = primes.to_vec();
            }
            Method::Hotchkiss => record.hotchkiss = v,
        }
        if record.certificate.is_none() {
            record.certificate = cert;
        }
        if v == Verdict::Obstructed && !options.exhaustive {
            break;
        }
    }
    record.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(record)
}

/// `p^{k+1}` for the largest obstructed `p^k`, or the component period.
fn bound_from(records: &[DegreeRecord], q: u64, p: u64, hit: impl Fn(&DegreeRecord) -> bool) -> u64 {
    records
        .iter()
        .filter(|r| hit(r))
        .map(|r| r.d * p)
        .max()
        .unwrap_or(q)
        .max(q)
}

/// Certified lower bound on `ind(α)`, with the cap `per^ℓ` it can reach.
///
/// Each primary component of period `p^r` and symbol length `ℓ` is tested at
/// `d = p^k`, `r ≤ k < rℓ`; obstruction at `p^k` gives `ind ≥ p^{k+1}`.
/// Component bounds and caps multiply.
pub fn index_lower_bound(spec: &BrauerClassSpec, options: &BoundOptions) -> Result<ObstructionReport> {
    let mut components = Vec::new();
    let mut degrees = Vec::new();
    let mut per_method = [Some(1u64); 3];
    for comp in primary_parts(spec) {
        let q = comp.period();
        let (p, r) = prime_power(q);
        let ell = comp.orbit_symbol_length();
        let cap = checked_pow(q, ell as u32)?;
        let primes = options.primes.clone().unwrap_or_else(|| vec![p]);
        let mut records = Vec::new();
        for k in r..r * ell as u32 {
            records.push(test_degree(&comp, checked_pow(p, k)?, options, &primes)?);
        }
        let lower_bound = bound_from(&records, q, p, DegreeRecord::obstructed);
        for (slot, m) in per_method.iter_mut().zip(Method::ALL) {
            let conclusive = records.iter().all(|r| r.verdict(m) != Verdict::Inconclusive);
            let enabled = options.methods.contains(&m);
            let b = bound_from(&records, q, p, |r| r.verdict(m) == Verdict::Obstructed);
            *slot = match (*slot, enabled && conclusive) {
                (Some(acc), true) => Some(acc * b),
                _ => None,
            };
        }
        components.push(ComponentBound {
            period: q,
            symbol_length: ell,
            lower_bound,
            cap,
        });
        degrees.extend(records);
    }
    let lower_bound = components.iter().map(|c| c.lower_bound).product();
    let cap = components.iter().map(|c| c.cap).product();
    Ok(ObstructionReport {
        spec: SpecSummary::of(spec),
        components,
        degrees,
        lower_bound,
        cap,
        determined: lower_bound == cap,
        method_bounds: options.exhaustive.then(|| MethodBounds {
            djp: per_method[0],
            refined: per_method[1],
            hotchkiss: per_method[2],
        }),
    })
}

/// What established `ind ≥ target` for one side of a split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certifier {
    Period,
    Djp,
    Refined,
    Hotchkiss,
}

impl From<Method> for Certifier {
    fn from(m: Method) -> Self {
        match m {
            Method::Djp => Certifier::Djp,
            Method::Refined => Certifier::Refined,
            Method::Hotchkiss => Certifier::Hotchkiss,
        }
    }
}

/// Whether the enabled obstructions prove `ind(α) ≥ target`, and how.
pub fn certifies_at_least(
    spec: &BrauerClassSpec,
    target: u64,
    options: &BoundOptions,
) -> Result<Option<Certifier>> {
    let parts = primary_parts(spec);
    if parts.is_empty() {
        return Ok((target <= 1).then_some(Certifier::Period));
    }
    if parts.len() > 1 {
        let report = index_lower_bound(spec, options)?;
        if report.lower_bound < target {
            return Ok(None);
        }
        let first = report.degrees.iter().find(|r| r.obstructed());
        return Ok(Some(first.map_or(Certifier::Period, |r| {
            options
                .ordered_methods()
                .into_iter()
                .find(|m| r.verdict(*m) == Verdict::Obstructed)
                .map_or(Certifier::Period, Certifier::from)
        })));
    }
    let comp = &parts[0];
    let q = comp.period();
    if q >= target {
        return Ok(Some(Certifier::Period));
    }
    let (p, r) = prime_power(q);
    let ell = comp.orbit_symbol_length() as u32;
    // Least j with p^j ≥ target; obstruction at p^{j−1} suffices.
    let mut j = 0u32;
    while checked_pow(p, j)? < target {
        j += 1;
    }
    if j > r * ell {
        return Ok(None);
    }
    let primes = options.primes.clone().unwrap_or_else(|| vec![p]);
    for k in (j - 1).max(r)..r * ell {
        let d = checked_pow(p, k)?;
        for m in options.ordered_methods() {
            if run_method(comp, d, m, &primes, options.budget)?.0 == Verdict::Obstructed {
                return Ok(Some(m.into()));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IndecomposabilityStats {
    pub candidates: u64,
    pub by_period: u64,
    pub by_djp: u64,
    pub by_refined: u64,
    pub by_hotchkiss: u64,
    pub uncertified: u64,
    /// Distinct classes (up to `θ`) whose bound was computed.
    pub distinct_classes: u64,
}

impl IndecomposabilityStats {
    fn tally(&mut self, c: Option<Certifier>) {
        self.candidates += 1;
        match c {
            Some(Certifier::Period) => self.by_period += 1,
            Some(Certifier::Djp) => self.by_djp += 1,
            Some(Certifier::Refined) => self.by_refined += 1,
            Some(Certifier::Hotchkiss) => self.by_hotchkiss += 1,
            None => self.uncertified += 1,
        }
    }

    pub fn categorized(&self) -> u64 {
        self.by_period + self.by_djp + self.by_refined + self.by_hotchkiss + self.uncertified
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IndecomposabilityVerdict {
    Indecomposable,
    /// The first split `b̄ = c + (b̄ − c)` where neither side reached the
    /// target. Not a proof of decomposability.
    Inconclusive { witness: Vec<u64>, index: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct IndecomposabilityReport {
    pub spec: SpecSummary,
    pub target: u64,
    pub group_order: u64,
    #[serde(flatten)]
    pub verdict: IndecomposabilityVerdict,
    pub stats: IndecomposabilityStats,
}

const FIRST_BLOCK: u64 = 256;
const MAX_BLOCK: u64 = 1 << 14;

/// Runs over every `c ∈ H²(ℤ/n)`, `n = per(α)`, and checks that `c` or
/// `b̄ − c` provably has index `≥ target`.
///
/// Candidates are processed in index order in blocks; each block runs in
/// parallel, and the reported witness is the least failing index, so the
/// result does not depend on `threads`.
pub fn indecomposability_test(
    spec: &BrauerClassSpec,
    target: u64,
    options: &BoundOptions,
    threads: Option<usize>,
) -> Result<IndecomposabilityReport> {
    if target <= 1 {
        return Err(Error::InvalidArgument(
            "target index must exceed 1: index-1 classes are trivial".into(),
        ));
    }
    let n = spec.period();
    let ctx = spec.context();
    let rank = ctx.rank(2);
    let group_order = checked_pow(n, rank as u32)?;
    let b = spec.coordinates();
    let memo: Mutex<HashMap<(u64, Vec<u64>), Option<Certifier>>> = Mutex::new(HashMap::new());

    let lookup = |coords: &[u64]| -> Result<Option<Certifier>> {
        let cls = BrauerClassSpec::from_coordinates(ctx, coords, n)?.theta_normalized();
        let key = (cls.period(), cls.canonical_coordinates());
        if let Some(hit) = memo.lock().expect("memo lock").get(&key) {
            return Ok(*hit);
        }
        let found = certifies_at_least(&cls, target, options)?;
        memo.lock().expect("memo lock").insert(key, found);
        Ok(found)
    };
    let evaluate = |index: u64| -> Result<Option<Certifier>> {
        let mut rest = index;
        let c: Vec<u64> = (0..rank)
            .map(|_| {
                let digit = rest % n;
                rest /= n;
                digit
            })
            .collect();
        if let Some(found) = lookup(&c)? {
            return Ok(Some(found));
        }
        let other: Vec<u64> = b.iter().zip(&c).map(|(x, y)| (x + n - y) % n).collect();
        lookup(&other)
    };

    let run = || -> Result<IndecomposabilityReport> {
        let mut stats = IndecomposabilityStats::default();
        let mut start = 0u64;
        let mut block = FIRST_BLOCK;
        while start < group_order {
            let end = group_order.min(start.saturating_add(block));
            let results: Vec<Option<Certifier>> =
                (start..end).into_par_iter().map(evaluate).collect::<Result<_>>()?;
            for (offset, found) in results.into_iter().enumerate() {
                stats.tally(found);
                if found.is_none() {
                    let index = start + offset as u64;
                    let mut rest = index;
                    let witness = (0..rank)
                        .map(|_| {
                            let digit = rest % n;
                            rest /= n;
                            digit
                        })
                        .collect();
                    stats.distinct_classes = memo.lock().expect("memo lock").len() as u64;
                    return Ok(IndecomposabilityReport {
                        spec: SpecSummary::of(spec),
                        target,
                        group_order,
                        verdict: IndecomposabilityVerdict::Inconclusive { witness, index },
                        stats,
                    });
                }
            }
            start = end;
            block = (block * 2).min(MAX_BLOCK);
        }
        stats.distinct_classes = memo.lock().expect("memo lock").len() as u64;
        Ok(IndecomposabilityReport {
            spec: SpecSummary::of(spec),
            target,
            group_order,
            verdict: IndecomposabilityVerdict::Indecomposable,
            stats,
        })
    };

    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}
