//! Irreducible characters of extraspecial 2-groups, their idempotents, and
//! the eigenprojections that drive the numeric oracle.
//!
//! The `2^(2n)` linear characters are lifted from the quotient:
//! `χ_y(g) = (−1)^(y·ḡ)`. The single nonlinear character has degree `2^n`,
//! takes the values `±2^n` on the center, and vanishes elsewhere. Character
//! idempotents are assembled in exact integer arithmetic — every entry of
//! `E_χ` is an integer divided by `|G| = 2^(2n+1)`, hence exactly
//! representable in an `f64` — so the resolution-of-identity checks carry no
//! accumulated rounding error.

use nalgebra::DMatrix;

use crate::cayley::ConnectionSet;
use crate::gf2::GF2Vector;
use crate::group::{ExtraspecialGroup, GroupElement};
use crate::{Error, Result};

/// An irreducible character of an extraspecial 2-group.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Character {
    /// `χ_y(g) = (−1)^(y·ḡ)`, constant on classes.
    Linear(GF2Vector),
    /// Degree `2^n`; `±2^n` on the center, zero elsewhere.
    Nonlinear,
}

impl Character {
    pub fn degree(&self, n: u32) -> i64 {
        match self {
            Character::Linear(_) => 1,
            Character::Nonlinear => 1 << n,
        }
    }

    /// Integer character value on a group element.
    pub fn value(&self, g: &GroupElement) -> i64 {
        match self {
            Character::Linear(y) => {
                let parity = y
                    .dot(&g.quotient_image())
                    .expect("character and element dimensions agree");
                if parity {
                    -1
                } else {
                    1
                }
            }
            Character::Nonlinear => {
                let n = g.quotient_image().len() / 2;
                if !g.is_central() {
                    0
                } else if g.central_bit() {
                    -(1 << n)
                } else {
                    1 << n
                }
            }
        }
    }
}

impl std::fmt::Display for Character {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Character::Linear(y) => write!(f, "chi_{y}"),
            Character::Nonlinear => write!(f, "psi"),
        }
    }
}

/// All `2^(2n) + 1` irreducible characters in the fixed enumeration order:
/// linear by ascending `int(y)`, then the nonlinear one.
pub fn characters(n: u32) -> Vec<Character> {
    let mut out: Vec<Character> = GF2Vector::all(2 * n).map(Character::Linear).collect();
    out.push(Character::Nonlinear);
    out
}

/// The character idempotent `E_χ = (χ(1)/|G|) Σ_g χ(g⁻¹) L(g)` as a dense
/// real matrix under the canonical element indexing; entrywise this is
/// `E_χ[x][y] = χ(1)·χ(y·x⁻¹)/|G|`.
pub fn idempotent(chi: &Character, group: &ExtraspecialGroup) -> DMatrix<f64> {
    let size = group.order() as usize;
    let degree = chi.degree(group.n());
    let table = value_table(chi, group);
    let order = group.order() as f64;
    DMatrix::from_fn(size, size, |x, y| {
        let g = product_index(group, y, x);
        (degree * table[g]) as f64 / order
    })
}

/// χ as a function of element index.
fn value_table(chi: &Character, group: &ExtraspecialGroup) -> Vec<i64> {
    group.elements().map(|g| chi.value(&g)).collect()
}

/// Index of `a · b⁻¹` from the indices of `a` and `b`.
fn product_index(group: &ExtraspecialGroup, a: usize, b: usize) -> usize {
    let g = group.mul(&group.element_at(a), &group.inv(&group.element_at(b)));
    group.index(&g)
}

/// The projection onto one eigenspace of the walk Hamiltonian: a sum of
/// character idempotents over `X_θ = {χ : χ(S)/χ(1) = θ}`.
#[derive(Clone, Debug)]
pub struct EigenProjection {
    pub eigenvalue: i64,
    pub matrix: DMatrix<f64>,
    pub members: Vec<Character>,
}

/// Groups the characters by shared eigenvalue `χ(S)/χ(1)` — evaluated by
/// direct summation over the elements of `S`, not by the closed-form
/// spectrum — and sums their idempotents. Projections come sorted by
/// descending eigenvalue.
pub fn projections_for(
    connection: &ConnectionSet,
    group: &ExtraspecialGroup,
) -> Result<Vec<EigenProjection>> {
    let s_elements = connection.elements(group)?;
    if connection.is_empty_set() {
        return Err(Error::Validation(
            "cannot build projections for the empty connection set".into(),
        ));
    }
    let n = group.n();
    let size = group.order() as usize;
    let order = group.order() as f64;

    // θ_χ = χ(S)/χ(1) by literal summation; integrality is checked, not assumed.
    let mut groups: std::collections::BTreeMap<i64, Vec<Character>> =
        std::collections::BTreeMap::new();
    for chi in characters(n) {
        let sum: i64 = s_elements.iter().map(|s| chi.value(s)).sum();
        let degree = chi.degree(n);
        if sum % degree != 0 {
            return Err(Error::Inconsistency(format!(
                "character sum {sum} is not divisible by the degree {degree}"
            )));
        }
        groups.entry(sum / degree).or_default().push(chi);
    }

    // Precompute the index of y·x⁻¹ once; each projection is then a table sum.
    let mut pidx = vec![0usize; size * size];
    for x in 0..size {
        for y in 0..size {
            pidx[x * size + y] = product_index(group, y, x);
        }
    }

    let mut projections: Vec<EigenProjection> = groups
        .into_iter()
        .map(|(eigenvalue, members)| {
            let mut numer = vec![0i64; size];
            let mut matrix = DMatrix::<f64>::zeros(size, size);
            for chi in &members {
                let degree = chi.degree(n);
                let table = value_table(chi, group);
                for (g, &val) in table.iter().enumerate() {
                    numer[g] += degree * val;
                }
            }
            for x in 0..size {
                for y in 0..size {
                    matrix[(x, y)] = numer[pidx[x * size + y]] as f64 / order;
                }
            }
            EigenProjection {
                eigenvalue,
                matrix,
                members,
            }
        })
        .collect();
    projections.sort_unstable_by_key(|p| std::cmp::Reverse(p.eigenvalue));
    Ok(projections)
}
