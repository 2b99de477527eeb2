//! Extraspecial 2-groups of order `2^(2n+1)` in cocycle normal form.
//!
//! An element is a pair `(v, ε)` with `v ∈ F_2^(2n)` (its image in the
//! quotient by the center) and a central bit `ε`. Multiplication twists the
//! central bits by a bilinear cocycle `B`:
//!
//! ```text
//! (v, ε)(w, δ) = (v ⊕ w, ε ⊕ δ ⊕ B(v, w))
//! ```
//!
//! The alternating part `B(v,w) ⊕ B(w,v)` is the standard symplectic pairing
//! on coordinate pairs `(2i−1, 2i)`, which forces the center to be exactly
//! `{1, z}` and the quotient to be elementary abelian. The two isomorphism
//! types differ by the quadratic form `Q(v) = B(v, v)`: the plus type is a
//! central product of dihedral groups of order 8 (Arf invariant 0), the minus
//! type swaps one factor for the quaternion group (Arf invariant 1).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::gf2::GF2Vector;
use crate::{Error, Result};

/// The two isomorphism types of an extraspecial 2-group of a given order.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoType {
    Plus,
    Minus,
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoType::Plus => write!(f, "plus"),
            IsoType::Minus => write!(f, "minus"),
        }
    }
}

impl FromStr for IsoType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(IsoType::Plus),
            "minus" | "-" => Ok(IsoType::Minus),
            other => Err(Error::Parse(format!(
                "isomorphism type must be plus or minus, got {other:?}"
            ))),
        }
    }
}

/// A group element `(v, ε)`: quotient image plus central bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElement {
    v: GF2Vector,
    eps: bool,
}

impl GroupElement {
    pub fn quotient_image(&self) -> GF2Vector {
        self.v
    }

    pub fn central_bit(&self) -> bool {
        self.eps
    }

    pub fn is_identity(&self) -> bool {
        self.v.is_zero() && !self.eps
    }

    pub fn is_central(&self) -> bool {
        self.v.is_zero()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v, self.eps as u8)
    }
}

/// An extraspecial 2-group of order `2^(2n+1)`, either isomorphism type.
#[derive(Clone, Debug)]
pub struct ExtraspecialGroup {
    n: u32,
    iso_type: IsoType,
    /// Cocycle matrix: `rows[c]` is the bitmask (in vector bit layout) of
    /// coordinates `d` with `B_{c+1, d} = 1`.
    rows: Vec<u64>,
}

impl ExtraspecialGroup {
    /// Constructs the group of order `2^(2n+1)` with the given type.
    ///
    /// The plus type uses `B(v, w) = Σ_i v_{2i−1} w_{2i}`; the minus type
    /// adds `v_1 w_1 ⊕ v_2 w_2`, flipping the Arf invariant of `Q`.
    pub fn new(n: u32, iso_type: IsoType) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("group parameter n must be at least 1".into()));
        }
        if 2 * n > crate::gf2::MAX_LEN {
            return Err(Error::Domain(format!(
                "group parameter n = {n} exceeds the supported vector length"
            )));
        }
        let m = 2 * n;
        let mut rows = vec![0u64; m as usize];
        for i in 1..=n {
            // Coordinate 2i−1 pairs with coordinate 2i.
            rows[(2 * i - 2) as usize] |= 1 << (m - 2 * i);
        }
        if iso_type == IsoType::Minus {
            rows[0] |= 1 << (m - 1);
            rows[1] |= 1 << (m - 2);
        }
        Ok(Self { n, iso_type, rows })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn iso_type(&self) -> IsoType {
        self.iso_type
    }

    /// Length of quotient vectors, `2n`.
    pub fn quotient_dim(&self) -> u32 {
        2 * self.n
    }

    /// Group order `2^(2n+1)`.
    pub fn order(&self) -> u64 {
        1u64 << (2 * self.n + 1)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            v: GF2Vector::zero(self.quotient_dim()),
            eps: false,
        }
    }

    /// The unique central involution `z = (0, 1)`.
    pub fn central_involution(&self) -> GroupElement {
        GroupElement {
            v: GF2Vector::zero(self.quotient_dim()),
            eps: true,
        }
    }

    /// Wraps `(v, eps)` as an element, checking the vector length.
    pub fn element(&self, v: GF2Vector, eps: bool) -> Result<GroupElement> {
        if v.len() != self.quotient_dim() {
            return Err(Error::Dimension(format!(
                "element vector has length {}, group expects {}",
                v.len(),
                self.quotient_dim()
            )));
        }
        Ok(GroupElement { v, eps })
    }

    /// Canonical index `2·int(v) + ε`, a bijection onto `0..order`.
    ///
    /// This fixes the row and column order of every matrix built downstream.
    pub fn index(&self, g: &GroupElement) -> usize {
        (2 * g.v.bits() + g.eps as u64) as usize
    }

    /// Inverse of [`ExtraspecialGroup::index`].
    pub fn element_at(&self, index: usize) -> GroupElement {
        debug_assert!((index as u64) < self.order());
        GroupElement {
            v: GF2Vector::new((index as u64) >> 1, self.quotient_dim())
                .expect("index within group order"),
            eps: index & 1 == 1,
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    /// The cocycle `B(v, w)`.
    pub fn cocycle(&self, v: &GF2Vector, w: &GF2Vector) -> bool {
        let m = self.quotient_dim();
        let mut acc = false;
        let mut bits = v.bits();
        while bits != 0 {
            let p = bits.trailing_zeros();
            bits &= bits - 1;
            let row = self.rows[(m - 1 - p) as usize];
            acc ^= (row & w.bits()).count_ones() % 2 == 1;
        }
        acc
    }

    /// The quadratic form `Q(v) = B(v, v)`; `(v, ε)² = (0, Q(v))`.
    pub fn quadratic_form(&self, v: &GF2Vector) -> bool {
        self.cocycle(v, v)
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            v: a.v.xor(&b.v),
            eps: a.eps ^ b.eps ^ self.cocycle(&a.v, &b.v),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            v: a.v,
            eps: a.eps ^ self.quadratic_form(&a.v),
        }
    }

    /// Conjugate `a b a⁻¹`.
    pub fn conjugate(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.mul(&self.mul(a, b), &self.inv(a))
    }

    /// Order of an element: always 1, 2, or 4.
    pub fn element_order(&self, g: &GroupElement) -> u32 {
        if g.is_identity() {
            1
        } else if self.quadratic_form(&g.v) {
            4
        } else {
            2
        }
    }

    /// The conjugacy classes: `{1}`, `{z}`, then `{(v,0), (v,1)}` for each
    /// nonzero `v` by ascending `int(v)`; `2^(2n) + 1` classes in total.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut classes = vec![ConjugacyClass::Identity, ConjugacyClass::Central];
        classes.extend(GF2Vector::all_nonzero(self.quotient_dim()).map(ConjugacyClass::Pair));
        classes
    }

    /// The class containing `g`.
    pub fn class_of(&self, g: &GroupElement) -> ConjugacyClass {
        if g.is_identity() {
            ConjugacyClass::Identity
        } else if g.is_central() {
            ConjugacyClass::Central
        } else {
            ConjugacyClass::Pair(g.v)
        }
    }
}

/// A conjugacy class of an extraspecial 2-group.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConjugacyClass {
    /// `{1}`.
    Identity,
    /// `{z}`.
    Central,
    /// The size-2 class `{(v, 0), (v, 1)}` over a nonzero quotient image.
    Pair(GF2Vector),
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        match self {
            ConjugacyClass::Identity | ConjugacyClass::Central => 1,
            ConjugacyClass::Pair(_) => 2,
        }
    }

    pub fn members(&self, group: &ExtraspecialGroup) -> Vec<GroupElement> {
        match self {
            ConjugacyClass::Identity => vec![group.identity()],
            ConjugacyClass::Central => vec![group.central_involution()],
            ConjugacyClass::Pair(v) => vec![
                group.element(*v, false).expect("class vector length"),
                group.element(*v, true).expect("class vector length"),
            ],
        }
    }
}

/// Abstract class and character data of an extraspecial `p`-group, for any
/// prime `p`. Nothing is constructed; only the sizes that the uniform-mixing
/// obstruction needs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ClassStructure {
    pub p: u64,
    pub n: u32,
    /// `p^(2n+1)`.
    pub order: u64,
    /// `p^(2n) + p − 1`.
    pub class_count: u64,
    /// Nontrivial central classes: `p − 1`, each of size 1.
    pub central_classes: u64,
    /// Noncentral classes: `p^(2n) − 1`, each of size `p`.
    pub noncentral_classes: u64,
    pub noncentral_class_size: u64,
    /// `p^(2n)` linear characters.
    pub linear_character_count: u64,
    /// `p − 1` nonlinear characters, each of degree `p^n`.
    pub nonlinear_character_count: u64,
    pub nonlinear_degree: u64,
    /// Every nonlinear character is supported exactly on the center.
    pub nonlinear_support: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Class and character sizes of an extraspecial `p`-group of order
/// `p^(2n+1)`, without constructing the group.
pub fn class_structure_p(p: u64, n: u32) -> Result<ClassStructure> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if n < 1 {
        return Err(Error::Domain("group parameter n must be at least 1".into()));
    }
    let order = p
        .checked_pow(2 * n + 1)
        .ok_or_else(|| Error::Domain(format!("order p^(2n+1) overflows for p={p}, n={n}")))?;
    let quotient = p.pow(2 * n);
    Ok(ClassStructure {
        p,
        n,
        order,
        class_count: quotient + p - 1,
        central_classes: p - 1,
        noncentral_classes: quotient - 1,
        noncentral_class_size: p,
        linear_character_count: quotient,
        nonlinear_character_count: p - 1,
        nonlinear_degree: p.pow(n),
        nonlinear_support: p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn v(s: &str) -> GF2Vector {
        s.parse().unwrap()
    }

    fn order_four_count(group: &ExtraspecialGroup) -> usize {
        group
            .elements()
            .filter(|g| group.element_order(g) == 4)
            .count()
    }

    #[test]
    fn n1_types_are_dihedral_and_quaternion() {
        let plus = ExtraspecialGroup::new(1, IsoType::Plus).unwrap();
        assert_eq!(plus.order(), 8);
        assert_eq!(order_four_count(&plus), 2);

        let minus = ExtraspecialGroup::new(1, IsoType::Minus).unwrap();
        assert_eq!(order_four_count(&minus), 6);
    }

    #[test]
    fn construct_validates_n() {
        assert!(ExtraspecialGroup::new(0, IsoType::Plus).is_err());
        let g = ExtraspecialGroup::new(2, IsoType::Plus).unwrap();
        assert_eq!(g.order(), 32);
    }

    #[test]
    fn noncommutativity_witness() {
        let g = ExtraspecialGroup::new(1, IsoType::Plus).unwrap();
        let a = g.element(v("10"), false).unwrap();
        let b = g.element(v("01"), false).unwrap();
        let ab = g.mul(&a, &b);
        let ba = g.mul(&b, &a);
        assert_eq!((ab.quotient_image(), ab.central_bit()), (v("11"), true));
        assert_eq!((ba.quotient_image(), ba.central_bit()), (v("11"), false));
    }

    #[test]
    fn central_involution_squares_to_identity() {
        for iso in [IsoType::Plus, IsoType::Minus] {
            let g = ExtraspecialGroup::new(1, iso).unwrap();
            let z = g.central_involution();
            assert!(g.mul(&z, &z).is_identity());
            assert_eq!(g.element_order(&z), 2);
        }
    }

    #[test]
    fn quaternion_inverse_example() {
        let g = ExtraspecialGroup::new(1, IsoType::Minus).unwrap();
        let a = g.element(v("11"), false).unwrap();
        let inv = g.inv(&a);
        assert_eq!((inv.quotient_image(), inv.central_bit()), (v("11"), true));
        assert!(g.mul(&inv, &a).is_identity());
        // (11,0)² = z in the minus type.
        let sq = g.mul(&a, &a);
        assert_eq!(sq, g.central_involution());
    }

    #[test]
    fn associativity_exhaustive_n1() {
        for iso in [IsoType::Plus, IsoType::Minus] {
            let g = ExtraspecialGroup::new(1, iso).unwrap();
            for a in g.elements() {
                for b in g.elements() {
                    for c in g.elements() {
                        let left = g.mul(&g.mul(&a, &b), &c);
                        let right = g.mul(&a, &g.mul(&b, &c));
                        assert_eq!(left, right, "({a})({b})({c}) in {iso}");
                    }
                }
            }
        }
    }

    #[test]
    fn associativity_randomized_n2_n3() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [2u32, 3] {
            for iso in [IsoType::Plus, IsoType::Minus] {
                let g = ExtraspecialGroup::new(n, iso).unwrap();
                for _ in 0..500 {
                    let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                        let idx = rng.random_range(0..g.order() as usize);
                        g.element_at(idx)
                    };
                    let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                    assert_eq!(
                        g.mul(&g.mul(&a, &b), &c),
                        g.mul(&a, &g.mul(&b, &c)),
                        "n={n} {iso}"
                    );
                }
            }
        }
    }

    #[test]
    fn inverses_and_squares() {
        for n in [1u32, 2] {
            for iso in [IsoType::Plus, IsoType::Minus] {
                let g = ExtraspecialGroup::new(n, iso).unwrap();
                for a in g.elements() {
                    assert!(g.mul(&g.inv(&a), &a).is_identity());
                    let sq = g.mul(&a, &a);
                    assert!(sq.is_central(), "g² must land in the center");
                    assert!(matches!(g.element_order(&a), 1 | 2 | 4));
                }
            }
        }
    }

    #[test]
    fn center_by_brute_force() {
        for n in [1u32, 2] {
            for iso in [IsoType::Plus, IsoType::Minus] {
                let g = ExtraspecialGroup::new(n, iso).unwrap();
                let center: Vec<GroupElement> = g
                    .elements()
                    .filter(|a| g.elements().all(|b| g.mul(a, &b) == g.mul(&b, a)))
                    .collect();
                assert_eq!(center, vec![g.identity(), g.central_involution()]);
            }
        }
    }

    #[test]
    fn conjugacy_classes_match_brute_force_orbits() {
        for n in [1u32, 2] {
            for iso in [IsoType::Plus, IsoType::Minus] {
                let g = ExtraspecialGroup::new(n, iso).unwrap();
                let formula: BTreeSet<BTreeSet<GroupElement>> = g
                    .conjugacy_classes()
                    .iter()
                    .map(|k| k.members(&g).into_iter().collect())
                    .collect();
                let brute: BTreeSet<BTreeSet<GroupElement>> = g
                    .elements()
                    .map(|a| g.elements().map(|h| g.conjugate(&h, &a)).collect())
                    .collect();
                assert_eq!(formula, brute, "n={n} {iso}");
            }
        }
    }

    #[test]
    fn class_counts() {
        let g1 = ExtraspecialGroup::new(1, IsoType::Plus).unwrap();
        assert_eq!(g1.conjugacy_classes().len(), 5);
        let g2 = ExtraspecialGroup::new(2, IsoType::Minus).unwrap();
        assert_eq!(g2.conjugacy_classes().len(), 17);
    }

    #[test]
    fn eps_flip_stays_in_class() {
        for iso in [IsoType::Plus, IsoType::Minus] {
            let g = ExtraspecialGroup::new(1, iso).unwrap();
            let a = g.element(v("11"), true).unwrap();
            let b = g.element(v("11"), false).unwrap();
            assert_eq!(g.class_of(&a), g.class_of(&b));
            // Conjugation by (10, 0) flips the central bit of (11, ·).
            let t = g.element(v("10"), false).unwrap();
            assert_eq!(g.conjugate(&t, &a), b);
        }
    }

    #[test]
    fn index_is_a_bijection() {
        let g = ExtraspecialGroup::new(2, IsoType::Plus).unwrap();
        let seen: BTreeSet<usize> = g.elements().map(|a| g.index(&a)).collect();
        assert_eq!(seen.len() as u64, g.order());
        assert_eq!(*seen.iter().next_back().unwrap() as u64, g.order() - 1);
        for a in g.elements() {
            assert_eq!(g.element_at(g.index(&a)), a);
        }
    }

    #[test]
    fn abstract_class_structure() {
        let s = class_structure_p(2, 1).unwrap();
        assert_eq!((s.order, s.nonlinear_support), (8, 2));
        assert_eq!(s.class_count, 5);

        let s = class_structure_p(3, 1).unwrap();
        assert_eq!(s.nonlinear_character_count, 2);
        assert_eq!(s.nonlinear_degree, 3);
        assert_eq!((s.order, s.nonlinear_support), (27, 3));

        let s = class_structure_p(5, 2).unwrap();
        assert_eq!((s.order, s.nonlinear_support), (3125, 5));

        // Column sums of the character table: Σ degree² = |G|.
        for (p, n) in [(2u64, 1u32), (3, 2), (7, 3)] {
            let s = class_structure_p(p, n).unwrap();
            let sum = s.linear_character_count
                + s.nonlinear_character_count * s.nonlinear_degree * s.nonlinear_degree;
            assert_eq!(sum, s.order);
            let class_sum =
                1 + s.central_classes + s.noncentral_classes * s.noncentral_class_size;
            assert_eq!(class_sum, s.order);
        }

        assert!(class_structure_p(4, 1).is_err());
        assert!(class_structure_p(3, 0).is_err());
    }
}
