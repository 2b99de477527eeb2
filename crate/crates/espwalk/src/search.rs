//! Exhaustive classification of connection sets for small `n`, with a
//! seeded oracle-verified sample.
//!
//! Candidates are enumerated as bitmasks over the nonzero vectors of
//! `F_2^(2n)` ordered by integer value, paired with the `z` flag. With the
//! `parallel` feature the mask space is split into disjoint ranges and
//! classified on the rayon pool; the merge keeps counts, minimum exemplars,
//! and sorted id lists, so the result is identical to the sequential path.

use std::collections::BTreeMap;

use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::cayley::ConnectionSet;
use crate::chartab::projections_for;
use crate::criteria::{fr_classify, pst_decision, DyadicPi, FrCase};
use crate::gf2::GF2Vector;
use crate::group::{ExtraspecialGroup, IsoType};
use crate::walk::{detect_fr, detect_pst, transition, VerdictKind, NEGATIVE_PST_TOL};
use crate::{Error, Result};

/// Classification of a valid connection set by its state-transfer behavior.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    PstAndProperFr,
    PstOnly,
    CospectralNoPst,
    NotCospectral,
}

impl Classification {
    pub const ALL: [Classification; 4] = [
        Classification::PstAndProperFr,
        Classification::PstOnly,
        Classification::CospectralNoPst,
        Classification::NotCospectral,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Classification::PstAndProperFr => "pst_and_proper_fr",
            Classification::PstOnly => "pst_only",
            Classification::CospectralNoPst => "cospectral_no_pst",
            Classification::NotCospectral => "not_cospectral",
        }
    }
}

/// Counts per classification; they sum to the number of valid sets.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug, Serialize)]
pub struct ClassCounts {
    pub pst_and_proper_fr: u64,
    pub pst_only: u64,
    pub cospectral_no_pst: u64,
    pub not_cospectral: u64,
}

impl ClassCounts {
    fn bump(&mut self, class: Classification) {
        match class {
            Classification::PstAndProperFr => self.pst_and_proper_fr += 1,
            Classification::PstOnly => self.pst_only += 1,
            Classification::CospectralNoPst => self.cospectral_no_pst += 1,
            Classification::NotCospectral => self.not_cospectral += 1,
        }
    }

    fn merge(&mut self, other: &ClassCounts) {
        self.pst_and_proper_fr += other.pst_and_proper_fr;
        self.pst_only += other.pst_only;
        self.cospectral_no_pst += other.cospectral_no_pst;
        self.not_cospectral += other.not_cospectral;
    }

    pub fn get(&self, class: Classification) -> u64 {
        match class {
            Classification::PstAndProperFr => self.pst_and_proper_fr,
            Classification::PstOnly => self.pst_only,
            Classification::CospectralNoPst => self.cospectral_no_pst,
            Classification::NotCospectral => self.not_cospectral,
        }
    }

    pub fn total(&self) -> u64 {
        Classification::ALL.iter().map(|&c| self.get(c)).sum()
    }
}

/// Options for [`run_search`].
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub n: u32,
    /// Group type used for the oracle sample (classification itself never
    /// consults it).
    pub iso_type: IsoType,
    /// Number of valid sets to verify against the numeric oracle.
    pub verify_sample: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            n: 1,
            iso_type: IsoType::Plus,
            verify_sample: 0,
            seed: 1,
            tol: crate::walk::DEFAULT_VERDICT_TOL,
        }
    }
}

/// Result of an exhaustive search, stable under serialization: two runs
/// with the same options produce byte-identical JSON.
#[derive(Clone, Debug, Serialize)]
pub struct SearchSummary {
    pub schema: u32,
    pub n: u32,
    pub iso_type: IsoType,
    pub seed: u64,
    /// All `(class-subset, z-flag)` pairs, including invalid ones.
    pub total_candidates: u64,
    /// Candidates that are spanning and proper.
    pub total_valid: u64,
    pub counts: ClassCounts,
    /// Lowest-id exemplar per nonempty classification.
    pub exemplars: BTreeMap<&'static str, ConnectionSet>,
    pub oracle_sample: Vec<OracleCheck>,
}

/// One oracle-verified sample entry.
#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub connection: ConnectionSet,
    pub classification: Classification,
    pub admits_pst: bool,
    pub time: DyadicPi,
    pub observed: String,
    pub residual: f64,
    pub agrees: bool,
    pub fr_balanced_check: Option<FrBalancedCheck>,
}

/// Balanced-revival confirmation attached when the set classifies as
/// proper FR.
#[derive(Clone, Debug, Serialize)]
pub struct FrBalancedCheck {
    pub time: DyadicPi,
    pub alpha_modulus: f64,
    pub beta_modulus: f64,
    pub balanced: bool,
    pub agrees: bool,
}

/// Total number of `(mask, z)` candidates at this `n`.
pub fn total_candidates(n: u32) -> u64 {
    2u64 << ((1u64 << (2 * n)) - 1)
}

/// Decodes a candidate id into its connection set. Bit `j` of the mask
/// selects the nonzero vector with `int(v) = j + 1`; the low bit of the id
/// is the `z` flag.
pub fn candidate_connection(n: u32, id: u64) -> ConnectionSet {
    let mask = id >> 1;
    let include_z = id & 1 == 1;
    let classes = (1..1u64 << (2 * n))
        .filter(|j| (mask >> (j - 1)) & 1 == 1)
        .map(|j| GF2Vector::new(j, 2 * n).expect("vector within range"));
    ConnectionSet::new(n, classes, include_z).expect("nonzero distinct classes by construction")
}

/// Classifies a candidate, or `None` when it is not a valid search target
/// (must span and be proper).
pub fn classify_candidate(n: u32, id: u64) -> Option<(ConnectionSet, Classification)> {
    if id >> 1 == 0 {
        return None; // no classes: cannot span
    }
    let connection = candidate_connection(n, id);
    let validation = connection.validate(true);
    if !validation.ok {
        return None;
    }
    let class = match fr_classify(&connection).case {
        FrCase::ProperFr => Classification::PstAndProperFr,
        FrCase::PstOnly => Classification::PstOnly,
        FrCase::Neither => {
            if pst_decision(&connection).strongly_cospectral {
                Classification::CospectralNoPst
            } else {
                Classification::NotCospectral
            }
        }
    };
    Some((connection, class))
}

#[derive(Default)]
struct Accumulator {
    counts: ClassCounts,
    exemplars: [Option<u64>; 4],
    valid_ids: Vec<u64>,
}

impl Accumulator {
    fn absorb(&mut self, id: u64, class: Classification) {
        self.counts.bump(class);
        let slot = &mut self.exemplars[class as usize];
        *slot = Some(slot.map_or(id, |prev| prev.min(id)));
        self.valid_ids.push(id);
    }

    fn merge(mut self, other: Accumulator) -> Accumulator {
        self.counts.merge(&other.counts);
        for (mine, theirs) in self.exemplars.iter_mut().zip(other.exemplars) {
            *mine = match (*mine, theirs) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
        self.valid_ids.extend(other.valid_ids);
        self
    }
}

fn accumulate_range(n: u32, ids: std::ops::Range<u64>) -> Accumulator {
    let mut acc = Accumulator::default();
    for id in ids {
        if let Some((_, class)) = classify_candidate(n, id) {
            acc.absorb(id, class);
        }
    }
    acc
}

const CHUNK: u64 = 2048;

fn chunk_starts(total: u64) -> Vec<u64> {
    (0..total).step_by(CHUNK as usize).collect()
}

#[cfg(feature = "parallel")]
fn classify_all(n: u32, total: u64) -> Accumulator {
    chunk_starts(total)
        .into_par_iter()
        .map(|start| accumulate_range(n, start..(start + CHUNK).min(total)))
        .reduce(Accumulator::default, Accumulator::merge)
}

#[cfg(not(feature = "parallel"))]
fn classify_all(n: u32, total: u64) -> Accumulator {
    accumulate_range(n, 0..total)
}

fn classify_all_sequential(n: u32, total: u64) -> Accumulator {
    accumulate_range(n, 0..total)
}

/// Runs the exhaustive search, parallel when the `parallel` feature is on.
pub fn run_search(options: &SearchOptions) -> Result<SearchSummary> {
    run_with(options, classify_all)
}

/// Always-sequential variant of [`run_search`]; the benchmark baseline.
pub fn run_search_sequential(options: &SearchOptions) -> Result<SearchSummary> {
    run_with(options, classify_all_sequential)
}

fn run_with(
    options: &SearchOptions,
    classify: impl Fn(u32, u64) -> Accumulator,
) -> Result<SearchSummary> {
    if !(1..=2).contains(&options.n) {
        return Err(Error::Domain(format!(
            "search supports n in {{1, 2}}; n = {} blows up the enumeration",
            options.n
        )));
    }
    let total = total_candidates(options.n);
    let mut acc = classify(options.n, total);
    acc.valid_ids.sort_unstable();

    let mut exemplars = BTreeMap::new();
    for class in Classification::ALL {
        if let Some(id) = acc.exemplars[class as usize] {
            exemplars.insert(class.name(), candidate_connection(options.n, id));
        }
    }

    let oracle_sample = verify_sampled(options, &acc.valid_ids)?;

    Ok(SearchSummary {
        schema: crate::report::SCHEMA_VERSION,
        n: options.n,
        iso_type: options.iso_type,
        seed: options.seed,
        total_candidates: total,
        total_valid: acc.counts.total(),
        counts: acc.counts,
        exemplars,
        oracle_sample,
    })
}

fn verify_sampled(options: &SearchOptions, valid_ids: &[u64]) -> Result<Vec<OracleCheck>> {
    if options.verify_sample == 0 || valid_ids.is_empty() {
        return Ok(Vec::new());
    }
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(options.seed);
    let amount = options.verify_sample.min(valid_ids.len());
    let mut picked: Vec<u64> = rand::seq::index::sample(&mut rng, valid_ids.len(), amount)
        .into_iter()
        .map(|i| valid_ids[i])
        .collect();
    picked.sort_unstable();

    let group = ExtraspecialGroup::new(options.n, options.iso_type)?;
    let tol = options.tol;
    let n = options.n;
    let checks = batch_map(picked, |id| oracle_check(n, id, &group, tol));
    checks.into_iter().collect()
}

fn oracle_check(
    n: u32,
    id: u64,
    group: &ExtraspecialGroup,
    tol: f64,
) -> Result<OracleCheck> {
    let (connection, classification) =
        classify_candidate(n, id).expect("sampled from valid ids");
    let report = pst_decision(&connection);
    let projections = projections_for(&connection, group)?;
    let u_matrix = transition(&projections, report.min_time.radians())?;

    let (observed, residual, agrees) = if report.admits {
        let verdict = detect_pst(&u_matrix, 0, tol);
        match verdict.kind {
            VerdictKind::Pst { target, .. } => (
                format!("pst(target={target})"),
                verdict.residual,
                target == 1,
            ),
            _ => ("none".to_string(), verdict.residual, false),
        }
    } else {
        // Negative instances must stay well away from a pure target.
        let verdict = detect_pst(&u_matrix, 0, NEGATIVE_PST_TOL);
        match verdict.kind {
            VerdictKind::Pst { target, .. } => {
                (format!("pst(target={target})"), verdict.residual, false)
            }
            _ => ("none".to_string(), verdict.residual, true),
        }
    };

    let fr = fr_classify(&connection);
    let fr_balanced_check = match (fr.case, fr.balanced_time) {
        (FrCase::ProperFr, Some(time)) => {
            let u_fr = transition(&projections, time.radians())?;
            let verdict = detect_fr(&u_fr, 0, 1, tol);
            Some(match verdict.kind {
                VerdictKind::Fr {
                    alpha,
                    beta,
                    balanced,
                } => FrBalancedCheck {
                    time,
                    alpha_modulus: alpha.norm(),
                    beta_modulus: beta.norm(),
                    balanced,
                    agrees: balanced,
                },
                _ => FrBalancedCheck {
                    time,
                    alpha_modulus: 0.0,
                    beta_modulus: 0.0,
                    balanced: false,
                    agrees: false,
                },
            })
        }
        _ => None,
    };

    let agrees = agrees && fr_balanced_check.as_ref().map_or(true, |c| c.agrees);
    Ok(OracleCheck {
        connection,
        classification,
        admits_pst: report.admits,
        time: report.min_time,
        observed,
        residual,
        agrees,
        fr_balanced_check,
    })
}

/// Maps `f` over `items`, preserving order; runs on the rayon pool when the
/// `parallel` feature is enabled.
pub fn batch_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}
