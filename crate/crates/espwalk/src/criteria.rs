//! Closed-form state-transfer criteria: the PST decision with its minimum
//! time, the Φ± eigenvalue split, the fractional-revival trichotomy, the
//! complement theorem, spread-based constructions, the power-of-two gcd
//! structure, and the uniform-mixing obstruction.
//!
//! Everything here is integer arithmetic on `(ℓ, e_y)`; times are kept as
//! exact dyadic multiples of π and only converted to radians at the oracle
//! boundary.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cayley::ConnectionSet;
use crate::gf2::{nu2, GF2Vector, PartialSpread, Valuation};
use crate::group::class_structure_p;
use crate::{Error, Result};

/// An exact time `numerator·π / 2^log2_denominator`, kept in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DyadicPi {
    pub numerator: u64,
    pub log2_denominator: u32,
}

impl DyadicPi {
    pub fn new(numerator: u64, log2_denominator: u32) -> Self {
        let mut num = numerator;
        let mut log2 = log2_denominator;
        while num != 0 && num % 2 == 0 && log2 > 0 {
            num /= 2;
            log2 -= 1;
        }
        Self {
            numerator: num,
            log2_denominator: log2,
        }
    }

    /// `π / 2^m`.
    pub fn pi_over_pow2(m: u32) -> Self {
        Self::new(1, m)
    }

    pub fn radians(&self) -> f64 {
        self.numerator as f64 * std::f64::consts::PI / (1u64 << self.log2_denominator) as f64
    }

    /// The integer multiple `k`·self.
    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.numerator * k, self.log2_denominator)
    }
}

impl fmt::Display for DyadicPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.numerator, self.log2_denominator) {
            (1, 0) => write!(f, "pi"),
            (n, 0) => write!(f, "{n}*pi"),
            (1, d) => write!(f, "pi/2^{d}"),
            (n, d) => write!(f, "{n}*pi/2^{d}"),
        }
    }
}

impl FromStr for DyadicPi {
    type Err = Error;

    /// Parses `p/2^m` (e.g. `3/2^2` for `3π/4`) or a bare numerator `p`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |s: &str| Error::Parse(format!("expected a time of the form p/2^m, got {s:?}"));
        match s.split_once('/') {
            None => {
                let num: u64 = s.trim().parse().map_err(|_| bad(s))?;
                Ok(Self::new(num, 0))
            }
            Some((num, den)) => {
                let num: u64 = num.trim().parse().map_err(|_| bad(s))?;
                let exp = den
                    .trim()
                    .strip_prefix("2^")
                    .ok_or_else(|| bad(s))?
                    .parse::<u32>()
                    .map_err(|_| bad(s))?;
                if exp > 62 {
                    return Err(bad(s));
                }
                Ok(Self::new(num, exp))
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The eigenvalue sign split for the strongly cospectral pair `{g, gz}`:
/// `Φ⁺` holds the linear-character eigenvalues, `Φ⁻` the nonlinear one.
/// Both sets are returned regardless of disjointness.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PhiSets {
    pub plus: BTreeSet<i64>,
    pub minus: BTreeSet<i64>,
    pub disjoint: bool,
}

pub fn phi_sets(connection: &ConnectionSet) -> PhiSets {
    let ell = connection.ell() as i64;
    let zbit = connection.include_z() as i64;
    let plus: BTreeSet<i64> = connection
        .e_y_table()
        .iter()
        .map(|&e| 4 * e as i64 - 2 * ell + zbit)
        .collect();
    let minus: BTreeSet<i64> = [-zbit].into_iter().collect();
    let disjoint = plus.intersection(&minus).next().is_none();
    PhiSets {
        plus,
        minus,
        disjoint,
    }
}

/// Vertices `g` and `gz` are strongly cospectral iff the linear and
/// nonlinear eigenvalue sets are disjoint; equivalently `e_y ≠ (ℓ−1)/2`
/// for all `y` when `z ∈ S`, and `e_y ≠ ℓ/2` when `z ∉ S`.
pub fn strongly_cospectral_decision(connection: &ConnectionSet) -> bool {
    phi_sets(connection).disjoint
}

/// `M = gcd(ℓ − e_y over all y)`, with the all-zero multiset giving 0
/// (valuation ∞; only possible for `C = ∅`). The result is always a power
/// of two; a violation would contradict the gcd structure theorem and
/// panics as an internal bug.
pub fn gcd_power2_check(connection: &ConnectionSet) -> u64 {
    let ell = connection.ell() as u64;
    let m = connection
        .e_y_table()
        .iter()
        .fold(0u64, |acc, &e| gcd(acc, ell - e as u64));
    assert!(
        m == 0 || m.is_power_of_two(),
        "gcd(ℓ − e_y) = {m} is not a power of two; this contradicts a proved \
         structure theorem and indicates a bug"
    );
    m
}

/// Why a connection set fails (or passes) the PST valuation test.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PstReason {
    Admits,
    /// `ν₂(ℓ − e_y)` fell below the required valuation at the witness `y`.
    ValuationFailure {
        witness_y: GF2Vector,
        gap_valuation: String,
        required_valuation: String,
    },
    /// `S = ∅` has no walk dynamics at all; it also fails validation.
    EmptySet,
}

/// Verdict of the closed-form PST criterion.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PstReport {
    pub admits: bool,
    pub reason: PstReason,
    /// `m` with minimum time `τ₀ = π/2^m`: `ν₂(2ℓ+2)` when `z ∈ S`,
    /// `ν₂(2ℓ)` otherwise.
    pub min_time_exponent: u32,
    pub min_time: DyadicPi,
    /// The raw gcd `d = gcd({2ℓ+2} ∪ {4e_y − 4ℓ})` (or `c` with `2ℓ` in
    /// place of `2ℓ+2` when `z ∉ S`). Equals `2^m` whenever PST is admitted.
    pub d_or_c: u64,
    pub strongly_cospectral: bool,
    pub connected: bool,
}

/// Decides perfect state transfer.
///
/// With `z ∈ S` the graph admits PST iff `ν₂(ℓ − e_y) ≥ ν₂(ℓ+1)` for all
/// `y`; with `z ∉ S` iff `ν₂(ℓ − e_y) ≥ ν₂(ℓ)` for all `y`. Transfer is
/// always from `g` to `gz`, at odd multiples of `τ₀ = π/2^m`.
pub fn pst_decision(connection: &ConnectionSet) -> PstReport {
    let ell = connection.ell() as u64;
    let include_z = connection.include_z();
    let strongly_cospectral = strongly_cospectral_decision(connection);
    let connected = connection.spans();

    if connection.is_empty_set() {
        return PstReport {
            admits: false,
            reason: PstReason::EmptySet,
            min_time_exponent: 0,
            min_time: DyadicPi::pi_over_pow2(0),
            d_or_c: 0,
            strongly_cospectral,
            connected,
        };
    }

    let required = if include_z { nu2(ell + 1) } else { nu2(ell) };
    let e_table = connection.e_y_table();

    let mut reason = PstReason::Admits;
    for (ybits, &e) in e_table.iter().enumerate() {
        let gap = nu2(ell - e as u64);
        if gap < required {
            reason = PstReason::ValuationFailure {
                witness_y: GF2Vector::new(ybits as u64, 2 * connection.n())
                    .expect("y within range"),
                gap_valuation: gap.to_string(),
                required_valuation: required.to_string(),
            };
            break;
        }
    }
    let admits = reason == PstReason::Admits;

    let base = if include_z { 2 * ell + 2 } else { 2 * ell };
    let min_time_exponent = nu2(base)
        .finite()
        .expect("2ℓ+2 ≥ 2, and ℓ ≥ 1 when z ∉ S for a nonempty set");
    let d_or_c = e_table
        .iter()
        .fold(base, |acc, &e| gcd(acc, 4 * (ell - e as u64)));
    if admits {
        assert_eq!(
            d_or_c,
            1u64 << min_time_exponent,
            "gcd and valuation forms of the minimum time disagree on an \
             admitting set; this contradicts a proved theorem"
        );
        debug_assert!(strongly_cospectral, "PST implies strong cospectrality");
    }

    PstReport {
        admits,
        reason,
        min_time_exponent,
        min_time: DyadicPi::pi_over_pow2(min_time_exponent),
        d_or_c,
        strongly_cospectral,
        connected,
    }
}

/// The three possible outcomes of the fractional-revival trichotomy.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrCase {
    /// `α ≤ t − 1`: no PST and no FR at any time.
    Neither,
    /// `α = t`: PST occurs but no other form of FR.
    PstOnly,
    /// `α ≥ t + 1`: FR strictly beyond PST occurs.
    ProperFr,
}

/// Verdict of the fractional-revival classification.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FrReport {
    /// `α = ν₂(gcd(ℓ − e_y))`; infinite only for `C = ∅`.
    pub alpha: Valuation,
    /// `g = min(2^(ν₂(2ℓ+2) or ν₂(2ℓ)), 2^(α+2))`.
    pub g: u64,
    /// `h` with `h·g = 2^(α+2)`; undefined when `α` is infinite.
    pub h: Option<u64>,
    pub case: FrCase,
    /// `2π/(hg)`, the minimum FR time, in the proper-FR case.
    pub fr_min_time: Option<DyadicPi>,
    /// `π/(2g)`, a balanced-FR time, in the proper-FR case.
    pub balanced_time: Option<DyadicPi>,
}

/// Classifies fractional revival by comparing `α = ν₂(gcd(ℓ − e_y))` with
/// `t = ν₂(ℓ+1)` (z ∈ S) or `ν₂(ℓ)` (z ∉ S): strictly below `t` means
/// neither phenomenon, equality means PST only, strictly above means proper
/// FR with minimum time `2π/(hg)` and balanced FR at `π/(2g)`.
pub fn fr_classify(connection: &ConnectionSet) -> FrReport {
    let ell = connection.ell() as u64;
    let alpha = nu2(gcd_power2_check(connection));
    let threshold = if connection.include_z() {
        nu2(ell + 1)
    } else {
        nu2(ell)
    };
    let case = match alpha.cmp(&threshold) {
        std::cmp::Ordering::Less => FrCase::Neither,
        std::cmp::Ordering::Equal => FrCase::PstOnly,
        std::cmp::Ordering::Greater => FrCase::ProperFr,
    };

    let base_exp = if connection.include_z() {
        nu2(2 * ell + 2)
    } else {
        nu2(2 * ell)
    };
    // g = min over exponents; α infinite leaves only the base arm.
    let g_exp = match (base_exp, alpha) {
        (Valuation::Finite(b), Valuation::Finite(a)) => b.min(a + 2),
        (Valuation::Finite(b), Valuation::Infinite) => b,
        (Valuation::Infinite, _) => {
            // Only S = ∅, which carries no dynamics; report a degenerate g.
            0
        }
    };
    let g = 1u64 << g_exp;
    let h = alpha.finite().map(|a| (1u64 << (a + 2)) / g);

    let (fr_min_time, balanced_time) = if case == FrCase::ProperFr {
        let fr_min = alpha
            .finite()
            .map(|a| DyadicPi::new(2, a + 2)); // 2π / 2^(α+2)
        (fr_min, Some(DyadicPi::new(1, g_exp + 1)))
    } else {
        (None, None)
    };

    FrReport {
        alpha,
        g,
        h,
        case,
        fr_min_time,
        balanced_time,
    }
}

/// Complement theorem test: given a PST-admitting set and a time `τ`, the
/// complement graph admits PST at `τ` iff `|G|·τ ∈ 2π·Z` (checked within
/// `1e−9` relative). For proper `S` in an extraspecial 2-group this always
/// holds at `τ₀`.
pub fn complement_pst(connection: &ConnectionSet, tau: f64) -> Result<bool> {
    let report = pst_decision(connection);
    if !report.admits {
        return Err(Error::Contract(
            "complement_pst requires a PST-admitting connection set".into(),
        ));
    }
    let order = (1u64 << (2 * connection.n() + 1)) as f64;
    let cycles = order * tau / (2.0 * std::f64::consts::PI);
    Ok((cycles - cycles.round()).abs() <= 1e-9 * cycles.abs().max(1.0))
}

/// Builds the connection set whose classes are the points of a partial
/// spread (`z` excluded); `ℓ = N(2^k − 1)`.
pub fn spread_connection(spread: &PartialSpread) -> Result<ConnectionSet> {
    let ambient = spread.ambient();
    if ambient % 2 != 0 {
        return Err(Error::Validation(format!(
            "spread ambient dimension {ambient} is odd; expected 2n"
        )));
    }
    let k = spread
        .members()
        .first()
        .ok_or_else(|| Error::Validation("spread has no members".into()))?
        .dim() as u32;
    if !spread.is_valid(k) {
        return Err(Error::Validation(
            "not a partial spread: members differ in dimension or intersect nontrivially".into(),
        ));
    }
    ConnectionSet::new(ambient / 2, spread.points(), false)
}

/// What the spread theorems promise for a spanning partial `k`-spread with
/// `N` members in `F_2^(2n)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpreadPrediction {
    /// `ν₂(N) ≥ k`: the theorems are silent (the graph may still admit PST).
    NoClaim,
    /// `ν₂(N) = k − 1`: PST with minimum time `π/2^(ν₂(2N))`.
    Pst { min_time: DyadicPi },
    /// `ν₂(N) ≤ k − 2`: PST and, additionally, balanced fractional revival.
    PstAndBalancedFr { min_time: DyadicPi },
}

/// Evaluates the spread sufficiency conditions. The caller is responsible
/// for checking that a valid spanning partial `k`-spread with `N` members
/// exists for these parameters.
pub fn spread_predict(members: u64, k: u32, _n: u32) -> SpreadPrediction {
    assert!(members >= 1 && k >= 1, "spread parameters must be positive");
    let Valuation::Finite(val) = nu2(members) else {
        unreachable!("members ≥ 1")
    };
    let min_time = DyadicPi::pi_over_pow2(
        nu2(2 * members).finite().expect("2N ≥ 2"),
    );
    if val + 2 <= k {
        SpreadPrediction::PstAndBalancedFr { min_time }
    } else if val + 1 <= k {
        SpreadPrediction::Pst { min_time }
    } else {
        SpreadPrediction::NoClaim
    }
}

/// Uniform-mixing obstruction for extraspecial `p`-groups.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct MixingReport {
    pub p: u64,
    pub n: u32,
    pub order: u64,
    /// Smallest character support: the nonlinear characters live on the
    /// center, so this is `p`.
    pub min_support: u64,
    /// `√order = p^((2n+1)/2)`.
    pub bound: f64,
    /// Whether the support bound leaves uniform mixing possible. Always
    /// false here: `p < p^((2n+1)/2)` for every `n ≥ 1`.
    pub admits_possible: bool,
}

/// Checks the character-support obstruction to instantaneous uniform
/// mixing: every character's support must reach `√|G|`, but the nonlinear
/// characters of an extraspecial `p`-group are supported on the `p`-element
/// center.
pub fn mixing_check(p: u64, n: u32) -> Result<MixingReport> {
    let structure = class_structure_p(p, n)?;
    let bound = (structure.order as f64).sqrt();
    let admits_possible = structure.nonlinear_support as f64 >= bound;
    assert!(
        !admits_possible,
        "support bound unexpectedly admits uniform mixing for p={p}, n={n}"
    );
    Ok(MixingReport {
        p,
        n,
        order: structure.order,
        min_support: structure.nonlinear_support,
        bound,
        admits_possible,
    })
}

/// The Hadamard-matrix necessary bound for one character row of an
/// association scheme: `(Σ_j |class_size_j · value_j|)²`, where `value_j`
/// is the normalized character value `|χ(g_j)|/χ(1)`. Uniform mixing
/// requires this to reach the number of vertices.
pub fn hadamard_bound(class_sizes: &[u64], normalized_row: &[f64]) -> Result<f64> {
    if class_sizes.len() != normalized_row.len() {
        return Err(Error::Dimension(format!(
            "{} class sizes against {} row values",
            class_sizes.len(),
            normalized_row.len()
        )));
    }
    let sum: f64 = class_sizes
        .iter()
        .zip(normalized_row)
        .map(|(&size, &value)| (size as f64 * value).abs())
        .sum();
    Ok(sum * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::regular_spread;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    fn conn(n: u32, classes: &[&str], include_z: bool) -> ConnectionSet {
        ConnectionSet::new(n, classes.iter().map(|s| v(s)), include_z).unwrap()
    }

    #[test]
    fn dyadic_pi_basics() {
        let t = DyadicPi::new(2, 3);
        assert_eq!((t.numerator, t.log2_denominator), (1, 2));
        assert!((t.radians() - std::f64::consts::PI / 4.0).abs() < 1e-15);
        assert_eq!(t.to_string(), "pi/2^2");
        assert_eq!(t.scale(3).to_string(), "3*pi/2^2");
        assert_eq!("3/2^2".parse::<DyadicPi>().unwrap(), DyadicPi::new(3, 2));
        assert_eq!("1".parse::<DyadicPi>().unwrap(), DyadicPi::new(1, 0));
        assert!("x/2^2".parse::<DyadicPi>().is_err());
        assert!("3/4".parse::<DyadicPi>().is_err());
    }

    #[test]
    fn phi_set_examples() {
        let p = phi_sets(&conn(1, &["10", "01"], true));
        assert_eq!(p.plus, [5, 1, -3].into_iter().collect());
        assert_eq!(p.minus, [-1].into_iter().collect());
        assert!(p.disjoint);

        let p = phi_sets(&conn(1, &["10", "01"], false));
        assert_eq!(p.plus, [4, 0, -4].into_iter().collect());
        assert_eq!(p.minus, [0].into_iter().collect());
        assert!(!p.disjoint);

        let p = phi_sets(&conn(1, &["10", "01", "11"], false));
        assert_eq!(p.plus, [6, -2].into_iter().collect());
        assert_eq!(p.minus, [0].into_iter().collect());
        assert!(p.disjoint);
    }

    #[test]
    fn strong_cospectrality_examples() {
        assert!(strongly_cospectral_decision(&conn(1, &["10", "01"], true)));
        assert!(!strongly_cospectral_decision(&conn(1, &["10", "01"], false)));
        // e_y = 1 = (ℓ−1)/2 occurs, so −1 lands in Φ⁺.
        assert!(!strongly_cospectral_decision(&conn(
            1,
            &["10", "01", "11"],
            true
        )));
    }

    #[test]
    fn pst_decision_examples() {
        let r = pst_decision(&conn(1, &["10", "01", "11"], false));
        assert!(r.admits && r.connected);
        assert_eq!(r.min_time_exponent, 1);
        assert_eq!(r.min_time, DyadicPi::pi_over_pow2(1));
        assert_eq!(r.d_or_c, 2);

        let r = pst_decision(&conn(1, &["10", "01"], true));
        assert!(r.admits);
        assert_eq!(r.min_time_exponent, 1);

        let r = pst_decision(&conn(1, &["10", "01"], false));
        assert!(!r.admits);
        match &r.reason {
            PstReason::ValuationFailure {
                witness_y,
                gap_valuation,
                required_valuation,
            } => {
                // First failing y by ascending int: y = 01 with e_y = 1.
                assert_eq!(*witness_y, v("01"));
                assert_eq!(gap_valuation, "0");
                assert_eq!(required_valuation, "1");
            }
            other => panic!("expected a valuation failure, got {other:?}"),
        }
    }

    #[test]
    fn pst_admits_implies_strongly_cospectral() {
        for mask in 1u64..8 {
            for z in [false, true] {
                let classes: Vec<GF2Vector> = (1..=3u64)
                    .filter(|j| (mask >> (j - 1)) & 1 == 1)
                    .map(|j| GF2Vector::new(j, 2).unwrap())
                    .collect();
                let c = ConnectionSet::new(1, classes, z).unwrap();
                let r = pst_decision(&c);
                if r.admits {
                    assert!(r.strongly_cospectral, "{c}");
                }
            }
        }
    }

    #[test]
    fn simple_sufficient_cases_always_admit() {
        // z ∈ S with ℓ even, and z ∉ S with ℓ odd, over all generating n=1
        // and n=2 sets.
        for n in [1u32, 2] {
            let count = 1u64 << (2 * n);
            for mask in 1u64..(1 << (count - 1)) {
                for z in [false, true] {
                    let classes: Vec<GF2Vector> = (1..count)
                        .filter(|j| (mask >> (j - 1)) & 1 == 1)
                        .map(|j| GF2Vector::new(j, 2 * n).unwrap())
                        .collect();
                    let c = ConnectionSet::new(n, classes, z).unwrap();
                    if !c.validate(true).ok {
                        continue;
                    }
                    let simple = (z && c.ell() % 2 == 0) || (!z && c.ell() % 2 == 1);
                    if simple {
                        assert!(pst_decision(&c).admits, "{c}");
                    }
                }
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_power2_check(&conn(1, &["10", "01", "11"], false)), 2);
        assert_eq!(gcd_power2_check(&conn(1, &["10", "01"], false)), 1);
        let spread = regular_spread(2).unwrap().take(2).unwrap();
        let c = spread_connection(&spread).unwrap();
        assert_eq!(gcd_power2_check(&c), 2);
    }

    #[test]
    fn fr_trichotomy_fixtures() {
        let r = fr_classify(&conn(1, &["10", "01", "11"], false));
        assert_eq!(r.case, FrCase::ProperFr);
        assert_eq!(r.alpha, Valuation::Finite(1));
        assert_eq!((r.g, r.h), (2, Some(4)));
        assert_eq!(r.fr_min_time, Some(DyadicPi::new(1, 2)));
        assert_eq!(r.balanced_time, Some(DyadicPi::new(1, 2)));

        let r = fr_classify(&conn(1, &["10", "01"], true));
        assert_eq!(r.case, FrCase::PstOnly);
        assert_eq!(r.alpha, Valuation::Finite(0));
        assert!(r.fr_min_time.is_none());

        let r = fr_classify(&conn(1, &["10", "01"], false));
        assert_eq!(r.case, FrCase::Neither);
    }

    #[test]
    fn fr_hg_identity() {
        // h·g = 2^(α+2) whenever α is finite.
        for mask in 1u64..8 {
            for z in [false, true] {
                let classes: Vec<GF2Vector> = (1..=3u64)
                    .filter(|j| (mask >> (j - 1)) & 1 == 1)
                    .map(|j| GF2Vector::new(j, 2).unwrap())
                    .collect();
                let c = ConnectionSet::new(1, classes, z).unwrap();
                let r = fr_classify(&c);
                if let (Valuation::Finite(a), Some(h)) = (r.alpha, r.h) {
                    assert_eq!(h * r.g, 1u64 << (a + 2), "{c}");
                }
            }
        }
    }

    #[test]
    fn fr_degenerate_matching() {
        // S = {z}: α is infinite; balanced revival still occurs at π/(2g).
        let r = fr_classify(&conn(1, &[], true));
        assert_eq!(r.alpha, Valuation::Infinite);
        assert_eq!(r.case, FrCase::ProperFr);
        assert_eq!(r.g, 2);
        assert_eq!(r.h, None);
        assert_eq!(r.fr_min_time, None);
        assert_eq!(r.balanced_time, Some(DyadicPi::new(1, 2)));
    }

    #[test]
    fn complement_pst_examples() {
        let c = conn(1, &["10", "01", "11"], false);
        let tau = pst_decision(&c).min_time.radians();
        assert!(complement_pst(&c, tau).unwrap());
        // 8·(π/3) is not a multiple of 2π.
        assert!(!complement_pst(&c, std::f64::consts::PI / 3.0).unwrap());
        // Requires an admitting set.
        assert!(matches!(
            complement_pst(&conn(1, &["10", "01"], false), tau),
            Err(Error::Contract(_))
        ));

        let spread = regular_spread(2).unwrap().take(2).unwrap();
        let c = spread_connection(&spread).unwrap();
        assert!(complement_pst(&c, std::f64::consts::PI / 4.0).unwrap());
    }

    #[test]
    fn spread_connection_examples() {
        let two = regular_spread(2).unwrap().take(2).unwrap();
        let c = spread_connection(&two).unwrap();
        assert_eq!(c.ell(), 6);
        assert!(!c.include_z());
        assert!(c.validate(true).ok);

        let one = regular_spread(1).unwrap().take(1).unwrap();
        let c = spread_connection(&one).unwrap();
        assert!(!c.validate(true).ok);

        let three = regular_spread(3).unwrap().take(2).unwrap();
        assert_eq!(spread_connection(&three).unwrap().ell(), 14);

        // Overlapping members are rejected.
        let bad = regular_spread(2).unwrap();
        let overlapping = PartialSpread::new(
            4,
            vec![bad.members()[0].clone(), bad.members()[0].clone()],
        )
        .unwrap();
        assert!(spread_connection(&overlapping).is_err());
    }

    #[test]
    fn spread_predict_examples() {
        assert_eq!(
            spread_predict(2, 2, 2),
            SpreadPrediction::Pst {
                min_time: DyadicPi::pi_over_pow2(2)
            }
        );
        assert_eq!(
            spread_predict(2, 3, 3),
            SpreadPrediction::PstAndBalancedFr {
                min_time: DyadicPi::pi_over_pow2(2)
            }
        );
        // ν₂(3) = 0 ≤ k − 2 as well, so balanced FR comes with the PST claim.
        assert_eq!(
            spread_predict(3, 2, 2),
            SpreadPrediction::PstAndBalancedFr {
                min_time: DyadicPi::pi_over_pow2(1)
            }
        );
        assert_eq!(spread_predict(4, 2, 2), SpreadPrediction::NoClaim);
    }

    #[test]
    fn spread_predict_agrees_with_pst_decision() {
        // Every spanning subset of the regular spreads for n = 2, 3 whose
        // parameters meet the hypotheses must be confirmed by pst_decision
        // and fr_classify.
        for n in [2u32, 3] {
            let reg = regular_spread(n).unwrap();
            for take in 1..=reg.len() {
                let sub = reg.take(take).unwrap();
                let Ok(c) = spread_connection(&sub) else {
                    continue;
                };
                if !c.validate(true).ok {
                    continue;
                }
                match spread_predict(take as u64, n, n) {
                    SpreadPrediction::Pst { min_time } => {
                        let r = pst_decision(&c);
                        assert!(r.admits, "n={n} take={take}");
                        assert_eq!(r.min_time, min_time);
                    }
                    SpreadPrediction::PstAndBalancedFr { min_time } => {
                        let r = pst_decision(&c);
                        assert!(r.admits);
                        assert_eq!(r.min_time, min_time);
                        assert_eq!(fr_classify(&c).case, FrCase::ProperFr);
                    }
                    SpreadPrediction::NoClaim => {}
                }
            }
        }
    }

    #[test]
    fn spread_fr_parameters() {
        // Two members of the regular 3-spread: α = 2, g = 4, balanced at π/8.
        let spread = regular_spread(3).unwrap().take(2).unwrap();
        let c = spread_connection(&spread).unwrap();
        let r = fr_classify(&c);
        assert_eq!(r.alpha, Valuation::Finite(2));
        assert_eq!(r.g, 4);
        assert_eq!(r.case, FrCase::ProperFr);
        assert_eq!(r.balanced_time, Some(DyadicPi::pi_over_pow2(3)));
        assert_eq!(r.fr_min_time, Some(DyadicPi::pi_over_pow2(3)));
    }

    #[test]
    fn mixing_examples() {
        let r = mixing_check(2, 1).unwrap();
        assert_eq!((r.min_support, r.order), (2, 8));
        assert!(!r.admits_possible);
        assert!((r.bound - 8.0f64.sqrt()).abs() < 1e-12);

        let r = mixing_check(3, 1).unwrap();
        assert_eq!(r.min_support, 3);
        assert!((r.bound - 27.0f64.sqrt()).abs() < 1e-12);
        assert!(!r.admits_possible);

        assert!(!mixing_check(2, 4).unwrap().admits_possible);
        assert!(mixing_check(6, 1).is_err());
    }

    #[test]
    fn hadamard_bound_examples() {
        // Nonlinear row of the order-8 group: supported on the two central
        // classes only.
        let bound = hadamard_bound(&[1, 1, 2, 2, 2], &[1.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(bound, 4.0);
        assert!(bound < 8.0);

        // Principal character of any group of order m: bound m² ≥ m.
        let sizes = [1u64, 1, 2, 2, 2];
        let ones = [1.0; 5];
        assert_eq!(hadamard_bound(&sizes, &ones).unwrap(), 64.0);

        // p = 3, n = 1 nonlinear row: three central classes of size 1.
        let bound =
            hadamard_bound(&[1, 1, 1, 3, 3, 3, 3, 3, 3, 3, 3], &[1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
                .unwrap();
        assert_eq!(bound, 9.0);
        assert!(bound < 27.0);

        assert!(hadamard_bound(&[1, 2], &[1.0]).is_err());
    }
}
