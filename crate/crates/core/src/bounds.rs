//! Closed-form lower and upper bounds on `dim C^r_k`.
//!
//! The homological bounds sum a combinatorial part over interior edges and a
//! per-vertex correction driven by the slope count `t` at each interior
//! vertex. The vertex correction comes from the free resolution of the ideal
//! generated by `(r+1)`-st powers of `t` distinct linear forms through a
//! point, whose shape is captured by [`VertexTerm`].
//!
//! Schumaker's classical bounds are evaluated independently through their own
//! summation form so that the two families can be compared at runtime.
//!
//! All binomials `C(n, 2)` use [`binom2`], which vanishes for `n < 2`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mesh::Triangulation;
use crate::ordering::{self, OrderedStats, OrderingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("smoothness r = {r} exceeds degree k = {k}")]
    SmoothnessExceedsDegree { r: u32, k: u32 },
    #[error(transparent)]
    Ordering(#[from] OrderingError),
    #[error("ordering is not Schumaker-valid: interior vertices {0} and {1} are consecutive but share no triangle")]
    NotSchumakerOrdering(usize, usize),
}

/// Smoothness `r` and degree `k` of a spline space, with `r <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplineSpace {
    r: u32,
    k: u32,
}

impl SplineSpace {
    pub fn new(r: u32, k: u32) -> Result<Self, BoundsError> {
        if r > k {
            return Err(BoundsError::SmoothnessExceedsDegree { r, k });
        }
        Ok(Self { r, k })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `dim R_k = C(k+2, 2)`: the global polynomials of degree at most `k`.
    pub fn polynomial_dim(&self) -> i64 {
        binom2(self.k as i64 + 2)
    }

    /// `C(k+1-r, 2)`: dimension of the multiples of `l^{r+1}` in degree `k`.
    pub fn edge_term(&self) -> i64 {
        binom2(self.k as i64 + 1 - self.r as i64)
    }
}

/// `n (n-1) / 2` for `n >= 2`, zero otherwise.
pub fn binom2(n: i64) -> i64 {
    if n >= 2 {
        n * (n - 1) / 2
    } else {
        0
    }
}

/// Invariants of the ideal of `(r+1)`-st powers of `t` distinct lines
/// through a point: `omega - 1` is the socle degree, `a` and `b` the second
/// syzygy multiplicities in degrees `omega + 1` and `omega`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexTerm {
    pub t: u32,
    pub omega: u32,
    pub a: u32,
    pub b: u32,
}

/// `omega = floor(t r / (t-1)) + 1`, `a = t(r+1) + (1-t) omega`,
/// `b = t - 1 - a`; all zero when `t <= 1`.
pub fn omega_a_b(t: u32, r: u32) -> VertexTerm {
    if t <= 1 {
        return VertexTerm {
            t,
            omega: 0,
            a: 0,
            b: 0,
        };
    }
    let (t64, r64) = (t as i64, r as i64);
    let omega = (t64 * r64).div_euclid(t64 - 1) + 1;
    let a = t64 * (r64 + 1) + (1 - t64) * omega;
    let b = t64 - 1 - a;
    debug_assert!(a >= 0 && b >= 0, "t = {t}, r = {r}");
    VertexTerm {
        t,
        omega: omega as u32,
        a: a as u32,
        b: b as u32,
    }
}

/// Per-vertex correction of the homological bounds:
/// `t C(k+1-r, 2) - b C(k+2-omega, 2) - a C(k+1-omega, 2)`.
///
/// `t = 0` (a vertex with no admissible edges under an ordering) contributes
/// nothing.
pub fn vertex_term_hom(t: u32, r: u32, k: u32) -> i64 {
    if t == 0 {
        return 0;
    }
    let term = omega_a_b(t, r);
    let (k, r) = (k as i64, r as i64);
    let omega = term.omega as i64;
    t as i64 * binom2(k + 1 - r)
        - term.b as i64 * binom2(k + 2 - omega)
        - term.a as i64 * binom2(k + 1 - omega)
}

/// Schumaker's per-vertex quantity
/// `C(k+2, 2) - C(r+2, 2) - sum_{j=1}^{k-r} (r + j + 1 - j t)_+`.
pub fn vertex_term_sch(t: u32, r: u32, k: u32) -> i64 {
    let (t, r, k) = (t as i64, r as i64, k as i64);
    binom2(k + 2) - binom2(r + 2) - schumaker_sum(t, r, k)
}

fn schumaker_sum(t: i64, r: i64, k: i64) -> i64 {
    (1..=k - r).map(|j| (r + j + 1 - j * t).max(0)).sum()
}

/// Closed-form `dim (R / <l_1^{r+1}, ..., l_t^{r+1}>)_k` for `t` distinct
/// lines through a point, read off the free resolution.
pub fn vertex_module_dim(t: u32, r: u32, k: u32) -> i64 {
    let term = omega_a_b(t, r);
    let (k, r) = (k as i64, r as i64);
    let omega = term.omega as i64;
    binom2(k + 2) - t as i64 * binom2(k + 1 - r)
        + term.b as i64 * binom2(k + 2 - omega)
        + term.a as i64 * binom2(k + 1 - omega)
}

fn homological_bound(
    tri: &Triangulation,
    space: SplineSpace,
    slopes: impl Iterator<Item = u32>,
) -> i64 {
    let f = tri.f_vector();
    let vertex_sum: i64 = slopes
        .map(|t| vertex_term_hom(t, space.r(), space.k()))
        .sum();
    space.polynomial_dim() + f.f1_interior as i64 * space.edge_term() - vertex_sum
}

fn interior_slope_counts(tri: &Triangulation) -> impl Iterator<Item = u32> + '_ {
    tri.interior_vertices().iter().map(|&v| {
        tri.slope_count(v)
            .expect("interior vertex list only holds interior vertices")
    })
}

/// Homological lower bound (LBH).
pub fn lower_bound_hom(tri: &Triangulation, space: SplineSpace) -> i64 {
    homological_bound(tri, space, interior_slope_counts(tri))
}

/// Homological upper bound (UBH) for an arbitrary ordering of the interior
/// vertices.
pub fn upper_bound_hom(
    tri: &Triangulation,
    order: &[usize],
    space: SplineSpace,
) -> Result<i64, BoundsError> {
    let stats = ordering::tilde_slope_counts(tri, order)?;
    Ok(upper_bound_from_stats(tri, &stats, space))
}

/// UBH from precomputed ordering statistics.
pub fn upper_bound_from_stats(
    tri: &Triangulation,
    stats: &OrderedStats,
    space: SplineSpace,
) -> i64 {
    homological_bound(
        tri,
        space,
        stats.entries().iter().map(|e| e.tilde_slope_count),
    )
}

fn schumaker_bound(
    tri: &Triangulation,
    space: SplineSpace,
    slopes: impl Iterator<Item = u32>,
) -> i64 {
    let f = tri.f_vector();
    let (r, k) = (space.r() as i64, space.k() as i64);
    let correction: i64 = slopes.map(|t| schumaker_sum(t as i64, r, k)).sum();
    binom2(k + 2) + f.f1_interior as i64 * binom2(k - r + 1)
        - f.f0_interior as i64 * (binom2(k + 2) - binom2(r + 2))
        + correction
}

/// Schumaker's lower bound (LBS).
pub fn schumaker_lower(tri: &Triangulation, space: SplineSpace) -> i64 {
    schumaker_bound(tri, space, interior_slope_counts(tri))
}

/// Schumaker's upper bound (UBS). Only defined for orderings in which
/// consecutive interior vertices are corners of a common triangle.
///
/// Slope counts follow the forward convention: edges to boundary vertices or
/// to vertices *earlier* in the list. Schumaker's original statement counts
/// in the reverse direction; the two agree after reversing the list.
pub fn schumaker_upper(
    tri: &Triangulation,
    order: &[usize],
    space: SplineSpace,
) -> Result<i64, BoundsError> {
    let stats = ordering::tilde_slope_counts(tri, order)?;
    if let Some((a, b)) = ordering::first_non_adjacent_pair(tri, order) {
        return Err(BoundsError::NotSchumakerOrdering(a, b));
    }
    Ok(schumaker_bound(
        tri,
        space,
        stats.entries().iter().map(|e| e.tilde_slope_count),
    ))
}
