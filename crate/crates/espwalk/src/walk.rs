//! Independent numeric oracle for the closed-form criteria.
//!
//! The transition matrix is assembled from eigenprojections,
//! `U(t) = Σ_θ e^{itθ} Ẽ_θ`, never by series summation or a general matrix
//! exponential: the spectra here are integral, so this is exact up to
//! rounding and shares no code path with the formulas it checks. Detection
//! of state transfer then inspects matrix columns directly.

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::chartab::EigenProjection;
use crate::group::ExtraspecialGroup;
use crate::{Error, Result};

/// Default tolerance for numeric verdicts (PST/FR detection).
pub const DEFAULT_VERDICT_TOL: f64 = 1e-8;
/// Default tolerance for unitarity checks.
pub const DEFAULT_UNITARITY_TOL: f64 = 1e-9;
/// Threshold for negative PST verdicts: on instances the criteria reject,
/// no column entry may come within this distance of a pure target.
pub const NEGATIVE_PST_TOL: f64 = 1e-3;
/// Tolerance used when a projection list must resolve the identity.
const RESOLUTION_TOL: f64 = 1e-8;

/// The walk operator `U(t)` at a fixed time, dense and complex.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    pub time: f64,
    pub entries: DMatrix<Complex64>,
}

impl TransitionMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Largest entrywise deviation of `U·U*` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let product = &self.entries * self.entries.adjoint();
        let mut worst = 0.0f64;
        for i in 0..product.nrows() {
            for j in 0..product.ncols() {
                let expected = if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                worst = worst.max((product[(i, j)] - expected).norm());
            }
        }
        worst
    }
}

/// Builds `U(t) = Σ_θ e^{itθ} Ẽ_θ` after checking that the projections
/// resolve the identity within `1e−8` entrywise.
pub fn transition(projections: &[EigenProjection], t: f64) -> Result<TransitionMatrix> {
    let size = projections
        .first()
        .ok_or_else(|| Error::Inconsistency("no projections supplied".into()))?
        .matrix
        .nrows();
    let mut resolution = DMatrix::<f64>::zeros(size, size);
    for p in projections {
        if p.matrix.nrows() != size || p.matrix.ncols() != size {
            return Err(Error::Dimension(
                "projections of mixed sizes".into(),
            ));
        }
        resolution += &p.matrix;
    }
    let defect = (resolution - DMatrix::<f64>::identity(size, size))
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    if defect > RESOLUTION_TOL {
        return Err(Error::Inconsistency(format!(
            "projections fail to resolve the identity (defect {defect:.3e})"
        )));
    }

    let mut entries = DMatrix::<Complex64>::zeros(size, size);
    for p in projections {
        let phase = Complex64::new(0.0, t * p.eigenvalue as f64).exp();
        for i in 0..size {
            for j in 0..size {
                entries[(i, j)] += phase * p.matrix[(i, j)];
            }
        }
    }
    Ok(TransitionMatrix { time: t, entries })
}

/// Outcome of inspecting one column of `U(t)`.
#[derive(Clone, Debug)]
pub struct NumericVerdict {
    pub kind: VerdictKind,
    /// Reconstruction error of the detected form (for `None`, the distance
    /// from the nearest qualifying form).
    pub residual: f64,
    pub time: f64,
}

#[derive(Clone, Debug)]
pub enum VerdictKind {
    Pst {
        target: usize,
        phase: Complex64,
    },
    Fr {
        alpha: Complex64,
        beta: Complex64,
        balanced: bool,
    },
    None,
}

impl NumericVerdict {
    pub fn is_pst(&self) -> bool {
        matches!(self.kind, VerdictKind::Pst { .. })
    }

    pub fn is_fr(&self) -> bool {
        matches!(self.kind, VerdictKind::Fr { .. })
    }
}

/// Scans column `source` of `U` for perfect state transfer: a verdict is
/// returned when exactly one entry away from `source` has modulus at least
/// `1 − tol`. The modulus-threshold rule (rather than an argmax) keeps
/// `None` verdicts robust near revival times.
pub fn detect_pst(u_matrix: &TransitionMatrix, source: usize, tol: f64) -> NumericVerdict {
    let size = u_matrix.dim();
    let mut best: Option<(usize, Complex64)> = None;
    let mut qualifying = 0usize;
    let mut best_modulus = 0.0f64;
    for row in 0..size {
        if row == source {
            continue;
        }
        let entry = u_matrix.entries[(row, source)];
        let modulus = entry.norm();
        if modulus >= 1.0 - tol {
            qualifying += 1;
            best = Some((row, entry));
        }
        best_modulus = best_modulus.max(modulus);
    }
    match (qualifying, best) {
        (1, Some((target, entry))) => {
            let phase = entry / entry.norm();
            let mut residual = 0.0f64;
            for row in 0..size {
                let expected = if row == target {
                    phase
                } else {
                    Complex64::new(0.0, 0.0)
                };
                residual += (u_matrix.entries[(row, source)] - expected).norm_sqr();
            }
            NumericVerdict {
                kind: VerdictKind::Pst { target, phase },
                residual: residual.sqrt(),
                time: u_matrix.time,
            }
        }
        _ => NumericVerdict {
            kind: VerdictKind::None,
            residual: 1.0 - best_modulus,
            time: u_matrix.time,
        },
    }
}

/// Tests column `source` of `U` for fractional revival onto `target`:
/// `α = U[source,source]`, `β = U[target,source]`, accepted when
/// `|α|² + |β|² ≥ 1 − tol` with `|β| ≥ tol`. Flagged balanced when
/// `||α| − |β|| < tol`.
pub fn detect_fr(
    u_matrix: &TransitionMatrix,
    source: usize,
    target: usize,
    tol: f64,
) -> NumericVerdict {
    assert_ne!(source, target, "fractional revival needs distinct vertices");
    let alpha = u_matrix.entries[(source, source)];
    let beta = u_matrix.entries[(target, source)];
    let mass = alpha.norm_sqr() + beta.norm_sqr();
    let leak = (1.0 - mass).max(0.0).sqrt();
    if mass >= 1.0 - tol && beta.norm() >= tol {
        NumericVerdict {
            kind: VerdictKind::Fr {
                alpha,
                beta,
                balanced: (alpha.norm() - beta.norm()).abs() < tol,
            },
            residual: leak,
            time: u_matrix.time,
        }
    } else {
        NumericVerdict {
            kind: VerdictKind::None,
            residual: leak.max(tol - beta.norm().min(tol)),
            time: u_matrix.time,
        }
    }
}

/// Brute-force strong cospectrality: compares the `u` and `v` columns of
/// every projection.
#[derive(Clone, Debug, PartialEq)]
pub enum Cospectrality {
    /// Strongly cospectral, with the eigenvalues split by sign.
    Yes { plus: Vec<i64>, minus: Vec<i64> },
    /// Not strongly cospectral; `witness` is an eigenvalue whose projection
    /// columns differ by more than a sign.
    No { witness: i64 },
}

pub fn strongly_cospectral_bf(
    projections: &[EigenProjection],
    u: usize,
    v: usize,
    tol: f64,
) -> Cospectrality {
    assert_ne!(u, v, "strong cospectrality needs distinct vertices");
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for p in projections {
        let cu = p.matrix.column(u);
        let cv = p.matrix.column(v);
        let diff = (cu - cv).norm();
        let sum = (cu + cv).norm();
        let magnitude = cu.norm();
        if diff <= tol {
            if magnitude > tol {
                plus.push(p.eigenvalue);
            }
        } else if sum <= tol {
            if magnitude > tol {
                minus.push(p.eigenvalue);
            }
        } else {
            return Cospectrality::No {
                witness: p.eigenvalue,
            };
        }
    }
    Cospectrality::Yes { plus, minus }
}

/// Brute-force eigenvalue support: `{θ : ‖Ẽ_θ e_u‖ > tol}`.
pub fn eigenvalue_support_bf(
    projections: &[EigenProjection],
    u: usize,
    tol: f64,
) -> BTreeSet<i64> {
    projections
        .iter()
        .filter(|p| p.matrix.column(u).norm() > tol)
        .map(|p| p.eigenvalue)
        .collect()
}

/// Whole-matrix form of perfect state transfer in an association scheme:
/// recovers the phase from a PST verdict at the identity vertex and checks
/// `U = λ·L(z)` entrywise, where `L(z)` (the regular representation of the
/// central involution) is the fixed-point-free order-two permutation that
/// flips the central bit of every element index.
pub fn scheme_structure_check(
    u_matrix: &TransitionMatrix,
    group: &ExtraspecialGroup,
    tol: f64,
) -> bool {
    let size = u_matrix.dim();
    if size as u64 != group.order() {
        return false;
    }
    let verdict = detect_pst(u_matrix, 0, tol);
    let VerdictKind::Pst { target, phase } = verdict.kind else {
        return false;
    };
    if target != 1 {
        // Column of the identity must map to z = element index 1.
        return false;
    }
    for i in 0..size {
        for j in 0..size {
            let expected = if i ^ 1 == j {
                phase
            } else {
                Complex64::new(0.0, 0.0)
            };
            if (u_matrix.entries[(i, j)] - expected).norm() > tol {
                return false;
            }
        }
    }
    true
}
