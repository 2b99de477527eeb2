//! Linear algebra over `F_2`, arithmetic in `GF(2^n)`, and partial spreads.
//!
//! Vectors are bit-strings of a fixed length `m`. Coordinate 1 occupies the
//! most significant (leftmost) position of the canonical textual form, so the
//! string `"1100"` is the vector with coordinates `v_1 = v_2 = 1`,
//! `v_3 = v_4 = 0`, and `int(v)` is that string read as a binary number.
//! Field elements of `GF(2^n)` use the usual packed-polynomial encoding
//! instead: bit `i` of a `u64` is the coefficient of `x^i`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Maximum supported vector length (bits of a `u64`, minus one for shifts).
pub const MAX_LEN: u32 = 63;

/// A vector in `F_2^m`, packed into a `u64`.
///
/// Ordering and hashing agree with `int(v)` for vectors of equal length.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Vector {
    bits: u64,
    len: u32,
}

impl GF2Vector {
    /// Builds a vector from its integer value `int(v)` and length.
    pub fn new(bits: u64, len: u32) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::Domain(format!(
                "vector length must be in 1..={MAX_LEN}, got {len}"
            )));
        }
        if bits >> len != 0 {
            return Err(Error::Domain(format!(
                "value {bits} does not fit in {len} bits"
            )));
        }
        Ok(Self { bits, len })
    }

    /// The zero vector of the given length.
    pub fn zero(len: u32) -> Self {
        Self::new(0, len).expect("zero vector of valid length")
    }

    /// Integer value of the canonical textual form.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Vector length `m`.
    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coordinate `i` for `i` in `1..=len` (coordinate 1 is leftmost).
    pub fn coord(&self, i: u32) -> bool {
        assert!(i >= 1 && i <= self.len, "coordinate {i} out of range");
        (self.bits >> (self.len - i)) & 1 == 1
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Parity of the coordinatewise AND of two vectors of equal length.
    pub fn dot(&self, other: &Self) -> Result<bool> {
        if self.len != other.len {
            return Err(Error::Dimension(format!(
                "dot of vectors of lengths {} and {}",
                self.len, other.len
            )));
        }
        Ok((self.bits & other.bits).count_ones() % 2 == 1)
    }

    pub(crate) fn dot_bits(&self, other_bits: u64) -> bool {
        (self.bits & other_bits).count_ones() % 2 == 1
    }

    /// Coordinatewise sum. Panics on length mismatch.
    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "xor of vectors of different lengths");
        Self {
            bits: self.bits ^ other.bits,
            len: self.len,
        }
    }

    /// All `2^len` vectors of the given length, by ascending `int(v)`.
    pub fn all(len: u32) -> impl Iterator<Item = GF2Vector> {
        (0..1u64 << len).map(move |bits| GF2Vector { bits, len })
    }

    /// All nonzero vectors of the given length, by ascending `int(v)`.
    pub fn all_nonzero(len: u32) -> impl Iterator<Item = GF2Vector> {
        (1..1u64 << len).map(move |bits| GF2Vector { bits, len })
    }
}

impl fmt::Display for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.len as usize)
    }
}

impl fmt::Debug for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Vector({self})")
    }
}

impl FromStr for GF2Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let len = s.len() as u32;
        if len == 0 || len > MAX_LEN {
            return Err(Error::Parse(format!(
                "bit-string length must be in 1..={MAX_LEN}, got {:?}",
                s
            )));
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                other => {
                    return Err(Error::Parse(format!(
                        "invalid character {other:?} in bit-string {s:?}"
                    )))
                }
            }
        }
        Ok(Self { bits, len })
    }
}

impl Serialize for GF2Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GF2Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

/// Rank of the subspace spanned by `vectors`, by Gaussian elimination.
///
/// All vectors must share one length; the empty list has rank 0.
pub fn rank(vectors: &[GF2Vector]) -> Result<usize> {
    let mut pivots = [0u64; 64];
    let mut rank = 0usize;
    let mut len: Option<u32> = None;
    for v in vectors {
        match len {
            None => len = Some(v.len),
            Some(l) if l != v.len => {
                return Err(Error::Dimension(format!(
                    "rank over vectors of mixed lengths {l} and {}",
                    v.len
                )))
            }
            _ => {}
        }
        let mut x = v.bits;
        while x != 0 {
            let top = 63 - x.leading_zeros() as usize;
            if pivots[top] == 0 {
                pivots[top] = x;
                rank += 1;
                break;
            }
            x ^= pivots[top];
        }
    }
    Ok(rank)
}

/// True iff `vectors` span all of `F_2^m`.
pub fn spans_full(vectors: &[GF2Vector], m: u32) -> Result<bool> {
    for v in vectors {
        if v.len != m {
            return Err(Error::Dimension(format!(
                "vector of length {} in ambient dimension {m}",
                v.len
            )));
        }
    }
    Ok(rank(vectors)? == m as usize)
}

/// The 2-adic valuation of a nonnegative integer, with `ν₂(0) = ∞`.
///
/// `Infinite` compares greater than every finite value, so valuation
/// inequalities with a `ℓ − e_y = 0` term hold vacuously.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            Valuation::Finite(k) => Some(*k),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Largest `e` with `2^e | x`; `ν₂(0) = ∞` by convention.
pub fn nu2(x: u64) -> Valuation {
    if x == 0 {
        Valuation::Infinite
    } else {
        Valuation::Finite(x.trailing_zeros())
    }
}

/// Fixed irreducible polynomials defining `GF(2^n)` for `n = 1..=4`, in the
/// packed encoding (bit `i` = coefficient of `x^i`). Pinning one polynomial
/// per degree makes the regular spreads reproducible bit for bit.
const IRREDUCIBLE: [u64; 5] = [
    0,       // unused
    0b10,    // x (reduction is trivial on {0, 1})
    0b111,   // x^2 + x + 1
    0b1011,  // x^3 + x + 1
    0b10011, // x^4 + x + 1
];

/// The irreducible polynomial used for `GF(2^n)`.
pub fn irreducible_poly(n: u32) -> Result<u64> {
    if (1..=4).contains(&n) {
        Ok(IRREDUCIBLE[n as usize])
    } else {
        Err(Error::UnsupportedFieldDegree(n))
    }
}

/// Product in `GF(2^n)` of two packed-polynomial representatives.
pub fn gf2n_mul(a: u64, b: u64, n: u32) -> Result<u64> {
    let poly = irreducible_poly(n)?;
    if a >> n != 0 || b >> n != 0 {
        return Err(Error::Domain(format!(
            "field elements must be {n}-bit representatives, got {a} and {b}"
        )));
    }
    // Carryless multiply, then reduce by the stored polynomial.
    let mut prod = 0u64;
    let mut x = a;
    let mut y = b;
    while y != 0 {
        if y & 1 == 1 {
            prod ^= x;
        }
        x <<= 1;
        y >>= 1;
    }
    let deg = 63 - poly.leading_zeros();
    while prod >> deg != 0 {
        let top = 63 - prod.leading_zeros();
        prod ^= poly << (top - deg);
    }
    Ok(prod)
}

/// A subspace of `F_2^m` given by a linearly independent basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GF2Subspace {
    basis: Vec<GF2Vector>,
    ambient: u32,
}

impl GF2Subspace {
    /// Builds a subspace, checking that the basis is nonempty, lives in one
    /// ambient space, and is linearly independent.
    pub fn new(basis: Vec<GF2Vector>) -> Result<Self> {
        let ambient = basis
            .first()
            .ok_or_else(|| Error::Validation("subspace basis must be nonempty".into()))?
            .len();
        if rank(&basis)? != basis.len() {
            return Err(Error::Validation(format!(
                "basis vectors are not linearly independent: {}",
                basis
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )));
        }
        Ok(Self { basis, ambient })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn basis(&self) -> &[GF2Vector] {
        &self.basis
    }

    /// Membership test, consistent with the span of the basis.
    pub fn contains(&self, v: &GF2Vector) -> bool {
        if v.len != self.ambient {
            return false;
        }
        let mut with_v: Vec<GF2Vector> = self.basis.clone();
        with_v.push(*v);
        rank(&with_v).expect("equal lengths by construction") == self.basis.len()
    }

    /// All nonzero vectors of the subspace, by ascending `int(v)`.
    pub fn nonzero_points(&self) -> Vec<GF2Vector> {
        let mut points: Vec<GF2Vector> = (1u64..1 << self.basis.len())
            .map(|combo| {
                let mut acc = GF2Vector::zero(self.ambient);
                for (j, b) in self.basis.iter().enumerate() {
                    if (combo >> j) & 1 == 1 {
                        acc = acc.xor(b);
                    }
                }
                acc
            })
            .collect();
        points.sort_unstable();
        points
    }

    /// True iff the two subspaces meet only in the zero vector.
    pub fn intersects_trivially(&self, other: &Self) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        let mut joint: Vec<GF2Vector> = self.basis.clone();
        joint.extend_from_slice(&other.basis);
        rank(&joint).expect("equal lengths by construction") == self.dim() + other.dim()
    }
}

/// A list of subspaces of `F_2^m` intended to intersect pairwise trivially.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialSpread {
    members: Vec<GF2Subspace>,
    ambient: u32,
}

impl PartialSpread {
    /// Builds a spread candidate; validity is checked separately by
    /// [`PartialSpread::is_valid`].
    pub fn new(ambient: u32, members: Vec<GF2Subspace>) -> Result<Self> {
        for s in &members {
            if s.ambient() != ambient {
                return Err(Error::Dimension(format!(
                    "spread member in ambient dimension {} (expected {ambient})",
                    s.ambient()
                )));
            }
        }
        Ok(Self { members, ambient })
    }

    pub fn members(&self) -> &[GF2Subspace] {
        &self.members
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The spread with only the first `count` members.
    pub fn take(&self, count: usize) -> Result<Self> {
        if count > self.members.len() {
            return Err(Error::Domain(format!(
                "cannot take {count} members from a spread with {}",
                self.members.len()
            )));
        }
        Ok(Self {
            members: self.members[..count].to_vec(),
            ambient: self.ambient,
        })
    }

    /// The spread restricted to the members at the given indices.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut members = Vec::with_capacity(indices.len());
        for &i in indices {
            let m = self.members.get(i).ok_or_else(|| {
                Error::Domain(format!(
                    "spread member index {i} out of range 0..{}",
                    self.members.len()
                ))
            })?;
            members.push(m.clone());
        }
        Ok(Self {
            members,
            ambient: self.ambient,
        })
    }

    /// True iff every member has dimension `k` and every pair of members
    /// intersects only in the zero vector.
    pub fn is_valid(&self, k: u32) -> bool {
        if self.members.iter().any(|m| m.dim() != k as usize) {
            return false;
        }
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                if !a.intersects_trivially(b) {
                    return false;
                }
            }
        }
        true
    }

    /// Union of the nonzero vectors of all members.
    pub fn points(&self) -> BTreeSet<GF2Vector> {
        self.members
            .iter()
            .flat_map(|m| m.nonzero_points())
            .collect()
    }

    /// Parses the spread file format: one subspace per line, basis vectors as
    /// bit-strings joined by commas; lines starting with `#` and blank lines
    /// are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut members = Vec::new();
        let mut ambient: Option<u32> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let basis: Vec<GF2Vector> = line
                .split(',')
                .map(|tok| {
                    tok.trim().parse().map_err(|e| {
                        Error::Parse(format!("line {}: {e}", lineno + 1))
                    })
                })
                .collect::<Result<_>>()?;
            let subspace = GF2Subspace::new(basis)
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            match ambient {
                None => ambient = Some(subspace.ambient()),
                Some(m) if m != subspace.ambient() => {
                    return Err(Error::Parse(format!(
                        "line {}: ambient dimension {} differs from {m}",
                        lineno + 1,
                        subspace.ambient()
                    )))
                }
                _ => {}
            }
            members.push(subspace);
        }
        let ambient =
            ambient.ok_or_else(|| Error::Parse("spread file contains no subspaces".into()))?;
        Self::new(ambient, members)
    }

    /// Renders the spread in the file format accepted by [`PartialSpread::parse`].
    pub fn render(&self) -> String {
        let mut out = String::new();
        for m in &self.members {
            let line: Vec<String> = m.basis().iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Maps a pair `(a, b)` of `GF(2^n)` elements to the concatenated vector in
/// `F_2^(2n)`: coordinate `i` carries the coefficient of `x^(i-1)` in `a`
/// (so the coefficient of 1 lands in coordinate 1), coordinates `n+1..=2n`
/// carry `b` the same way.
fn field_pair_to_vector(a: u64, b: u64, n: u32) -> GF2Vector {
    let m = 2 * n;
    let mut bits = 0u64;
    for i in 0..n {
        if (a >> i) & 1 == 1 {
            bits |= 1 << (m - 1 - i);
        }
        if (b >> i) & 1 == 1 {
            bits |= 1 << (n - 1 - i);
        }
    }
    GF2Vector::new(bits, m).expect("2n-bit vector")
}

/// The regular spread: images in `F_2^(2n)` of the `2^n + 1` one-dimensional
/// `GF(2^n)`-subspaces of `GF(2^n)^2`. Members come in the fixed order
/// `⟨(1,0)⟩, ⟨(0,1)⟩, ⟨(1,s)⟩` for `s = 1, …, 2^n − 1`; each has dimension
/// `n`, any two intersect trivially, and together they partition the nonzero
/// vectors.
pub fn regular_spread(n: u32) -> Result<PartialSpread> {
    irreducible_poly(n)?;
    let mut lines: Vec<(u64, u64)> = vec![(1, 0), (0, 1)];
    lines.extend((1..1u64 << n).map(|s| (1, s)));
    let members = lines
        .into_iter()
        .map(|(u, v)| {
            // F_2-basis of the GF(2^n)-span of (u, v): multiples by x^j.
            let basis = (0..n)
                .map(|j| {
                    let xj = 1u64 << j;
                    Ok(field_pair_to_vector(
                        gf2n_mul(xj, u, n)?,
                        gf2n_mul(xj, v, n)?,
                        n,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            GF2Subspace::new(basis)
        })
        .collect::<Result<Vec<_>>>()?;
    PartialSpread::new(2 * n, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn dot_examples() {
        assert!(!v("00").dot(&v("11")).unwrap());
        assert!(v("10").dot(&v("10")).unwrap());
        assert!(v("1100").dot(&v("0101")).unwrap());
        assert!(matches!(
            v("10").dot(&v("100")),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn dot_matches_exhaustive_bit_loop() {
        for a in GF2Vector::all(4) {
            for b in GF2Vector::all(4) {
                let mut parity = false;
                for i in 1..=4 {
                    parity ^= a.coord(i) && b.coord(i);
                }
                assert_eq!(a.dot(&b).unwrap(), parity, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[v("10"), v("01")]).unwrap(), 2);
        assert_eq!(rank(&[v("11"), v("11")]).unwrap(), 1);
        assert_eq!(
            rank(&[v("1000"), v("0100"), v("1100"), v("0010"), v("0001"), v("0011")]).unwrap(),
            4
        );
        assert_eq!(rank(&[]).unwrap(), 0);
        assert!(matches!(
            rank(&[v("10"), v("100")]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn nu2_examples() {
        assert_eq!(nu2(6), Valuation::Finite(1));
        assert_eq!(nu2(0), Valuation::Infinite);
        assert_eq!(nu2(12), Valuation::Finite(2));
        assert!(Valuation::Infinite > Valuation::Finite(u32::MAX));
    }

    #[test]
    fn gf2n_mul_examples() {
        // In GF(4) with x^2 + x + 1: 1·x = x, x·x = x + 1, x·(x+1) = 1.
        assert_eq!(gf2n_mul(0b01, 0b10, 2).unwrap(), 0b10);
        assert_eq!(gf2n_mul(0b10, 0b10, 2).unwrap(), 0b11);
        assert_eq!(gf2n_mul(0b10, 0b11, 2).unwrap(), 0b01);
        assert!(matches!(
            gf2n_mul(1, 1, 5),
            Err(Error::UnsupportedFieldDegree(5))
        ));
    }

    #[test]
    fn gf2n_field_axioms_exhaustive() {
        for n in 1..=4u32 {
            let q = 1u64 << n;
            for a in 0..q {
                for b in 0..q {
                    let ab = gf2n_mul(a, b, n).unwrap();
                    assert_eq!(ab, gf2n_mul(b, a, n).unwrap(), "commutativity n={n}");
                    for c in 0..q {
                        let assoc_l = gf2n_mul(ab, c, n).unwrap();
                        let assoc_r = gf2n_mul(a, gf2n_mul(b, c, n).unwrap(), n).unwrap();
                        assert_eq!(assoc_l, assoc_r, "associativity n={n}");
                        let dist_l = gf2n_mul(a, b ^ c, n).unwrap();
                        let dist_r = ab ^ gf2n_mul(a, c, n).unwrap();
                        assert_eq!(dist_l, dist_r, "distributivity n={n}");
                    }
                }
                assert_eq!(gf2n_mul(a, 1, n).unwrap(), a, "identity n={n}");
            }
            // Nonzero elements are invertible: a ↦ a·b is a bijection.
            for a in 1..q {
                let images: BTreeSet<u64> =
                    (0..q).map(|b| gf2n_mul(a, b, n).unwrap()).collect();
                assert_eq!(images.len() as u64, q, "zero divisors at n={n}");
            }
        }
    }

    #[test]
    fn regular_spread_small_cases() {
        let s1 = regular_spread(1).unwrap();
        assert_eq!(s1.len(), 3);
        let members: Vec<Vec<GF2Vector>> =
            s1.members().iter().map(|m| m.basis().to_vec()).collect();
        assert_eq!(members, vec![vec![v("10")], vec![v("01")], vec![v("11")]]);

        let s2 = regular_spread(2).unwrap();
        assert_eq!(s2.len(), 5);
        assert!(s2.is_valid(2));
        assert_eq!(s2.points().len(), 15);

        assert_eq!(regular_spread(3).unwrap().len(), 9);
    }

    #[test]
    fn regular_spread_partitions_nonzero_vectors() {
        for n in 1..=4u32 {
            let spread = regular_spread(n).unwrap();
            assert_eq!(spread.len() as u64, (1 << n) + 1);
            assert!(spread.is_valid(n));
            let points = spread.points();
            assert_eq!(points.len() as u64, (1u64 << (2 * n)) - 1);
        }
    }

    #[test]
    fn spread_points_examples() {
        let one = PartialSpread::new(
            2,
            vec![GF2Subspace::new(vec![v("10"), v("01")]).unwrap()],
        )
        .unwrap();
        let pts: Vec<GF2Vector> = one.points().into_iter().collect();
        assert_eq!(pts, vec![v("01"), v("10"), v("11")]);

        let two = regular_spread(2).unwrap().take(2).unwrap();
        let pts: BTreeSet<GF2Vector> = two.points();
        let expected: BTreeSet<GF2Vector> =
            ["1000", "0100", "1100", "0010", "0001", "0011"]
                .iter()
                .map(|s| v(s))
                .collect();
        assert_eq!(pts, expected);
    }

    #[test]
    fn validate_spread_examples() {
        let good = PartialSpread::new(
            4,
            vec![
                GF2Subspace::new(vec![v("1000"), v("0100")]).unwrap(),
                GF2Subspace::new(vec![v("0010"), v("0001")]).unwrap(),
            ],
        )
        .unwrap();
        assert!(good.is_valid(2));

        // Shared nonzero point 10.
        let bad = PartialSpread::new(
            2,
            vec![
                GF2Subspace::new(vec![v("10")]).unwrap(),
                GF2Subspace::new(vec![v("10")]).unwrap(),
            ],
        )
        .unwrap();
        assert!(!bad.is_valid(1));

        let reg = regular_spread(2).unwrap();
        for i in 0..reg.len() {
            for j in i + 1..reg.len() {
                assert!(reg.select(&[i, j]).unwrap().is_valid(2));
            }
        }
    }

    #[test]
    fn spread_point_count_formula() {
        // |points| = N(2^k − 1) for every valid partial k-spread tried here.
        for n in 1..=3u32 {
            let reg = regular_spread(n).unwrap();
            for take in 1..=reg.len() {
                let sub = reg.take(take).unwrap();
                assert!(sub.is_valid(n));
                assert_eq!(
                    sub.points().len() as u64,
                    take as u64 * ((1u64 << n) - 1)
                );
            }
        }
    }

    #[test]
    fn spread_file_round_trip() {
        let reg = regular_spread(2).unwrap();
        let text = format!("# regular spread, n = 2\n\n{}", reg.render());
        let parsed = PartialSpread::parse(&text).unwrap();
        assert_eq!(parsed, reg);
        assert!(PartialSpread::parse("# nothing\n").is_err());
        assert!(PartialSpread::parse("10,xy\n").is_err());
    }

    #[test]
    fn subspace_membership() {
        let s = GF2Subspace::new(vec![v("1000"), v("0100")]).unwrap();
        assert!(s.contains(&v("1100")));
        assert!(!s.contains(&v("0010")));
        assert!(s.contains(&v("0000")));
        assert!(GF2Subspace::new(vec![v("11"), v("11")]).is_err());
    }

    #[test]
    fn display_parse_round_trip() {
        for bits in 0..16u64 {
            let vec = GF2Vector::new(bits, 4).unwrap();
            assert_eq!(vec.to_string().parse::<GF2Vector>().unwrap(), vec);
        }
        assert!("012".parse::<GF2Vector>().is_err());
        assert!("".parse::<GF2Vector>().is_err());
    }

    proptest! {
        #[test]
        fn nu2_is_additive_on_products(a in 1u64..=u16::MAX as u64, b in 1u64..=u16::MAX as u64) {
            let (Valuation::Finite(va), Valuation::Finite(vb)) = (nu2(a), nu2(b)) else {
                unreachable!()
            };
            prop_assert_eq!(nu2(a * b), Valuation::Finite(va + vb));
        }

        #[test]
        fn rank_invariant_under_row_operations(
            raw in proptest::collection::vec(0u64..256, 1..8),
            i in 0usize..8,
            j in 0usize..8,
        ) {
            let vectors: Vec<GF2Vector> =
                raw.iter().map(|&b| GF2Vector::new(b, 8).unwrap()).collect();
            let base = rank(&vectors).unwrap();

            let mut permuted = vectors.clone();
            permuted.swap(i % vectors.len(), j % vectors.len());
            prop_assert_eq!(rank(&permuted).unwrap(), base);

            let (i, j) = (i % vectors.len(), j % vectors.len());
            if i != j {
                let mut added = vectors.clone();
                added[i] = added[i].xor(&vectors[j]);
                prop_assert_eq!(rank(&added).unwrap(), base);
            }
        }
    }
}
