//! Connection sets and their normal Cayley graphs: validation, the
//! closed-form integral spectrum, adjacency matrices, and complements.
//!
//! A connection set stores class representatives only — nonzero vectors of
//! `F_2^(2n)` naming the size-2 conjugacy classes `{(v,0), (v,1)}` — plus a
//! flag for the central involution. A set built this way is a union of
//! conjugacy classes and inverse-closed by construction; those properties
//! cannot be violated by input.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::gf2::{self, GF2Vector};
use crate::group::{ExtraspecialGroup, GroupElement};
use crate::{Error, Result};

/// Class representatives of a normal connection set
/// `S = K(x_1) ∪ … ∪ K(x_ℓ) [∪ {z}]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConnectionSet {
    n: u32,
    classes: BTreeSet<GF2Vector>,
    include_z: bool,
}

/// Serde surface of the connection-set file format:
/// `{"n": 2, "classes": ["1100", ...], "include_z": false}`.
#[derive(Deserialize)]
struct ConnectionSetFile {
    n: u32,
    classes: Vec<GF2Vector>,
    include_z: bool,
}

impl<'de> Deserialize<'de> for ConnectionSet {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ConnectionSetFile::deserialize(deserializer)?;
        ConnectionSet::new(raw.n, raw.classes, raw.include_z)
            .map_err(|e| D::Error::custom(format!("{e}")))
    }
}

impl ConnectionSet {
    /// Builds a connection set from class representatives.
    ///
    /// Rejects zero vectors, vectors of the wrong length, and duplicates.
    pub fn new(
        n: u32,
        classes: impl IntoIterator<Item = GF2Vector>,
        include_z: bool,
    ) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("group parameter n must be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for v in classes {
            if v.len() != 2 * n {
                return Err(Error::Validation(format!(
                    "class representative {v} has length {}, expected {}",
                    v.len(),
                    2 * n
                )));
            }
            if v.is_zero() {
                return Err(Error::Validation(
                    "class representatives must be nonzero".into(),
                ));
            }
            if !set.insert(v) {
                return Err(Error::Validation(format!("duplicate class {v}")));
            }
        }
        Ok(Self {
            n,
            classes: set,
            include_z,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The class representatives, ascending by `int(v)`.
    pub fn classes(&self) -> impl Iterator<Item = &GF2Vector> {
        self.classes.iter()
    }

    pub fn include_z(&self) -> bool {
        self.include_z
    }

    /// Number of size-2 classes, `ℓ`.
    pub fn ell(&self) -> usize {
        self.classes.len()
    }

    /// Graph degree `|S| = 2ℓ + [z ∈ S]`.
    pub fn degree(&self) -> i64 {
        2 * self.ell() as i64 + self.include_z as i64
    }

    /// Whether the underlying set `S` is empty.
    pub fn is_empty_set(&self) -> bool {
        self.classes.is_empty() && !self.include_z
    }

    /// Whether `S` spans, i.e. the graph is connected.
    pub fn spans(&self) -> bool {
        let vectors: Vec<GF2Vector> = self.classes.iter().copied().collect();
        gf2::spans_full(&vectors, 2 * self.n).expect("lengths checked at construction")
    }

    /// Validates against the standing assumptions: `S` nonempty and proper
    /// (`S ≠ G∖{1}`) always, generating only when `strict`.
    ///
    /// Complements of valid sets may be non-generating; they are accepted
    /// with `strict = false` and reported through a `connected: false`
    /// annotation on the result.
    pub fn validate(&self, strict: bool) -> ValidationResult {
        let mut failures = Vec::new();
        if self.is_empty_set() {
            failures.push(ValidationFailure::EmptySet);
        }
        if self.classes.len() as u64 == (1u64 << (2 * self.n)) - 1 && self.include_z {
            failures.push(ValidationFailure::NotProper);
        }
        let connected = self.spans();
        if strict && !connected {
            let vectors: Vec<GF2Vector> = self.classes.iter().copied().collect();
            failures.push(ValidationFailure::NotGenerating {
                rank: gf2::rank(&vectors).expect("lengths checked at construction"),
                needed: 2 * self.n as usize,
            });
        }
        ValidationResult {
            ok: failures.is_empty(),
            connected,
            failures,
        }
    }

    /// `e_y = |{x ∈ C : y · x = 0}|` for every `y`, indexed by `int(y)`.
    pub fn e_y_table(&self) -> Vec<u32> {
        let m = 2 * self.n;
        (0..1u64 << m)
            .map(|ybits| {
                self.classes
                    .iter()
                    .filter(|x| !x.dot_bits(ybits))
                    .count() as u32
            })
            .collect()
    }

    /// Closed-form spectrum of `Cay(G, S)`: the linear character `χ_y`
    /// contributes `4e_y − 2ℓ (+1 iff z ∈ S)` with multiplicity 1 per `y`,
    /// and the nonlinear character contributes `−1` (z ∈ S) or `0` (z ∉ S)
    /// with multiplicity `2^(2n)`. Coinciding values merge.
    pub fn spectrum(&self) -> SpectrumSummary {
        let m = 2 * self.n;
        let ell = self.ell() as i64;
        let zbit = self.include_z as i64;
        let mut eigenvalues: std::collections::BTreeMap<i64, EigenvalueInfo> =
            std::collections::BTreeMap::new();
        for (ybits, &e_y) in self.e_y_table().iter().enumerate() {
            let theta = 4 * e_y as i64 - 2 * ell + zbit;
            let info = eigenvalues.entry(theta).or_default();
            info.multiplicity += 1;
            info.linear_y
                .push(GF2Vector::new(ybits as u64, m).expect("y within range"));
        }
        let nonlinear_theta = -zbit;
        let info = eigenvalues.entry(nonlinear_theta).or_default();
        info.multiplicity += 1u64 << m;
        info.includes_nonlinear = true;
        SpectrumSummary {
            degree: self.degree(),
            eigenvalues,
        }
    }

    /// The actual elements of `S` in the given group, in index order.
    pub fn elements(&self, group: &ExtraspecialGroup) -> Result<Vec<GroupElement>> {
        if group.n() != self.n {
            return Err(Error::Dimension(format!(
                "connection set for n = {} used with group of n = {}",
                self.n,
                group.n()
            )));
        }
        let mut out = Vec::with_capacity(2 * self.ell() + self.include_z as usize);
        if self.include_z {
            out.push(group.central_involution());
        }
        for v in &self.classes {
            out.push(group.element(*v, false)?);
            out.push(group.element(*v, true)?);
        }
        out.sort_unstable_by_key(|g| group.index(g));
        Ok(out)
    }

    /// Dense 0/1 adjacency matrix of `Cay(G, S)` under the canonical element
    /// indexing: `A[g][h] = 1` iff `g·h⁻¹ ∈ S`.
    pub fn adjacency_matrix(&self, group: &ExtraspecialGroup) -> Result<DMatrix<f64>> {
        let s_elements = self.elements(group)?;
        let size = group.order() as usize;
        let mut a = DMatrix::<f64>::zeros(size, size);
        for g in group.elements() {
            let col = group.index(&g);
            for s in &s_elements {
                // Neighbors of g are s·g; S is inverse-closed so this is symmetric.
                let row = group.index(&group.mul(s, &g));
                a[(row, col)] = 1.0;
            }
        }
        Ok(a)
    }

    /// The complement connection set: classes are all nonzero vectors not in
    /// `C`, with the `z` flag flipped, so that `Ā = J − I − A`.
    pub fn complement(&self) -> ConnectionSet {
        let classes: BTreeSet<GF2Vector> = GF2Vector::all_nonzero(2 * self.n)
            .filter(|v| !self.classes.contains(v))
            .collect();
        ConnectionSet {
            n: self.n,
            classes,
            include_z: !self.include_z,
        }
    }
}

impl std::fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let classes: Vec<String> = self.classes.iter().map(|v| v.to_string()).collect();
        write!(
            f,
            "{{{}}}{}",
            classes.join(","),
            if self.include_z { " ∪ {z}" } else { "" }
        )
    }
}

/// Outcome of [`ConnectionSet::validate`]; carries reasons, never aborts.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ValidationResult {
    pub ok: bool,
    pub connected: bool,
    pub failures: Vec<ValidationFailure>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidationFailure {
    /// `S = ∅` defines the empty graph and is never admitted.
    EmptySet,
    /// `S = G ∖ {1}` (the complete graph) is excluded.
    NotProper,
    /// The classes do not span `F_2^(2n)`, so `S` does not generate.
    NotGenerating { rank: usize, needed: usize },
}

impl std::fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationFailure::EmptySet => write!(f, "connection set is empty"),
            ValidationFailure::NotProper => {
                write!(f, "S = G \\ {{1}} (complete graph) is excluded")
            }
            ValidationFailure::NotGenerating { rank, needed } => write!(
                f,
                "classes span a subspace of rank {rank} < {needed}; S does not generate"
            ),
        }
    }
}

/// Spectrum of a normal Cayley graph as eigenvalue → multiplicity, with the
/// contributing `y`-vectors recorded per eigenvalue (merged-eigenvalue
/// bookkeeping for the Φ± sets and the strong-cospectrality test).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SpectrumSummary {
    pub degree: i64,
    pub eigenvalues: std::collections::BTreeMap<i64, EigenvalueInfo>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct EigenvalueInfo {
    pub multiplicity: u64,
    /// The `y ∈ F_2^(2n)` whose linear character affords this eigenvalue.
    pub linear_y: Vec<GF2Vector>,
    /// Whether the nonlinear character contributes here.
    pub includes_nonlinear: bool,
}

impl SpectrumSummary {
    /// Eigenvalues with multiplicity, as a sorted multiset of length `|G|`.
    pub fn multiset(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for (&theta, info) in &self.eigenvalues {
            out.extend(std::iter::repeat(theta).take(info.multiplicity as usize));
        }
        out
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.eigenvalues.values().map(|i| i.multiplicity).sum()
    }

    /// `Σ θ·mult(θ)`, the trace of the adjacency matrix; always 0.
    pub fn trace(&self) -> i64 {
        self.eigenvalues
            .iter()
            .map(|(&theta, info)| theta * info.multiplicity as i64)
            .sum()
    }

    pub fn max_eigenvalue(&self) -> i64 {
        *self.eigenvalues.keys().next_back().expect("nonempty spectrum")
    }
}
