//! Per-degree bound reports with runtime self-checks.
//!
//! A report carries both homological and Schumaker-form bounds. Every
//! relation between them that must hold (equal lower bounds, the sandwich
//! around the exact dimension, equal upper bounds on Schumaker orderings,
//! exactness under a certificate) is re-checked here, and a violation is an
//! [`ReportError::Inconsistent`] error rather than a silently wrong number.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{
    lower_bound_hom, schumaker_lower, schumaker_upper, upper_bound_hom, BoundsError, SplineSpace,
};
use crate::mesh::Triangulation;
use crate::oracle;
use crate::ordering::{
    exactness_certificate, find_schumaker_ordering, lemma_order, minimize_upper_bound,
    tilde_slope_counts, SchumakerSearch, SearchBudget, SearchMethod,
};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Ordering(#[from] crate::ordering::OrderingError),
    #[error("internal inconsistency at r = {r}, k = {k}: {message}")]
    Inconsistent { r: u32, k: u32, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderStrategy {
    #[default]
    Exhaustive,
    Greedy,
}

#[derive(Debug, Clone, Default)]
pub struct ReportOptions {
    pub strategy: OrderStrategy,
    /// Seed and limits for the ordering search; `exhaustive_limit` is
    /// overridden to 0 under [`OrderStrategy::Greedy`].
    pub budget: SearchBudget,
    pub oracle: bool,
    /// Ordering whose bounds are reported alongside the optimized one.
    pub ordering: Option<Vec<usize>>,
}

/// Where [`BoundReport::ordering`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingSource {
    Supplied,
    Schumaker,
    Optimized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub r: u32,
    pub k: u32,
    pub lbh: i64,
    pub lbs: i64,
    /// `C(k+2, 2)`: the global polynomials, a floor the raw bounds may undercut.
    pub polynomial_floor: i64,
    pub best_ubh: i64,
    pub best_ordering: Vec<usize>,
    pub search_method: SearchMethod,
    pub ordering: Vec<usize>,
    pub ordering_source: OrderingSource,
    pub ubh_for_ordering: i64,
    /// Present when `ordering` is Schumaker-valid.
    pub ubs_for_ordering: Option<i64>,
    pub schumaker: SchumakerSearch,
    /// Vertices of `ordering` with no admissible edge.
    pub zero_tilde_vertices: Vec<usize>,
    pub oracle_dim: Option<u64>,
    pub homology_defect: Option<u64>,
    pub exactness_certified: bool,
    /// Ordering on which the certificate holds, if any.
    pub certified_ordering: Option<Vec<usize>>,
}

/// Mesh-level data shared by every degree of a sweep.
struct Context<'a> {
    tri: &'a Triangulation,
    schumaker: SchumakerSearch,
    lemma: Vec<usize>,
}

/// Reports for `r` and every `k` in `degrees`, computed in parallel and
/// returned in increasing `k`.
pub fn sweep(
    tri: &Triangulation,
    r: u32,
    degrees: RangeInclusive<u32>,
    options: &ReportOptions,
) -> Result<Vec<BoundReport>, ReportError> {
    SplineSpace::new(r, *degrees.start())?;
    if let Some(order) = &options.ordering {
        tilde_slope_counts(tri, order)?;
    }
    let context = Context {
        tri,
        schumaker: find_schumaker_ordering(tri),
        lemma: lemma_order(tri)?,
    };
    degrees
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k| build(&context, SplineSpace::new(r, k)?, options))
        .collect()
}

/// Report for a single space.
pub fn report(
    tri: &Triangulation,
    space: SplineSpace,
    options: &ReportOptions,
) -> Result<BoundReport, ReportError> {
    let mut reports = sweep(tri, space.r(), space.k()..=space.k(), options)?;
    Ok(reports.remove(0))
}

fn build(
    context: &Context<'_>,
    space: SplineSpace,
    options: &ReportOptions,
) -> Result<BoundReport, ReportError> {
    let tri = context.tri;
    let (r, k) = (space.r(), space.k());
    let inconsistent = |message: String| ReportError::Inconsistent { r, k, message };

    let lbh = lower_bound_hom(tri, space);
    let lbs = schumaker_lower(tri, space);
    let mut budget = options.budget;
    if options.strategy == OrderStrategy::Greedy {
        budget.exhaustive_limit = 0;
    }
    let best = minimize_upper_bound(tri, space, budget);

    let (ordering, ordering_source) = match (&options.ordering, &context.schumaker) {
        (Some(order), _) => (order.clone(), OrderingSource::Supplied),
        (None, SchumakerSearch::Found(order)) => (order.clone(), OrderingSource::Schumaker),
        (None, _) => (best.ordering.clone(), OrderingSource::Optimized),
    };
    let stats = tilde_slope_counts(tri, &ordering)?;
    let ubh_for_ordering = upper_bound_hom(tri, &ordering, space)?;
    let ubs_for_ordering = match schumaker_upper(tri, &ordering, space) {
        Ok(value) => Some(value),
        Err(BoundsError::NotSchumakerOrdering(..)) => None,
        Err(err) => return Err(err.into()),
    };

    let mut candidates = vec![ordering.clone()];
    if options.ordering.is_none() {
        candidates.push(best.ordering.clone());
        candidates.push(context.lemma.clone());
    }
    let mut certified_ordering = None;
    for candidate in candidates {
        if exactness_certificate(tri, &candidate, r)?.holds {
            certified_ordering = Some(candidate);
            break;
        }
    }

    if lbh != lbs {
        return Err(inconsistent(format!("LBH {lbh} differs from LBS {lbs}")));
    }
    if best.value < lbh || ubh_for_ordering < lbh {
        return Err(inconsistent(format!(
            "upper bound below LBH {lbh} (best {}, ordering {ubh_for_ordering})",
            best.value
        )));
    }
    if best.method == SearchMethod::Exhaustive && ubh_for_ordering < best.value {
        return Err(inconsistent(format!(
            "ordering {ordering:?} gives UBH {ubh_for_ordering} below the exhaustive minimum {}",
            best.value
        )));
    }
    if let Some(ubs) = ubs_for_ordering {
        if ubs != ubh_for_ordering {
            return Err(inconsistent(format!(
                "UBS {ubs} differs from UBH {ubh_for_ordering} on Schumaker ordering {ordering:?}"
            )));
        }
        if best.method == SearchMethod::Exhaustive && best.value > ubs {
            return Err(inconsistent(format!(
                "minimum UBH {} exceeds UBS {ubs}",
                best.value
            )));
        }
    }
    if let Some(order) = &certified_ordering {
        let ubh = upper_bound_hom(tri, order, space)?;
        if ubh != lbh {
            return Err(inconsistent(format!(
                "certificate holds on {order:?} but UBH {ubh} differs from LBH {lbh}"
            )));
        }
    }

    let (oracle_dim, homology_defect) = if options.oracle {
        let dim = oracle::spline_dimension(tri, space) as i64;
        if dim < lbh {
            return Err(inconsistent(format!("dimension {dim} below LBH {lbh}")));
        }
        let upper = best.value.min(ubh_for_ordering);
        if dim > upper {
            return Err(inconsistent(format!("dimension {dim} above UBH {upper}")));
        }
        if dim < space.polynomial_dim() {
            return Err(inconsistent(format!(
                "dimension {dim} below the polynomial floor {}",
                space.polynomial_dim()
            )));
        }
        (Some(dim as u64), Some((dim - lbh) as u64))
    } else {
        (None, None)
    };

    Ok(BoundReport {
        r,
        k,
        lbh,
        lbs,
        polynomial_floor: space.polynomial_dim(),
        best_ubh: best.value,
        best_ordering: best.ordering,
        search_method: best.method,
        ordering,
        ordering_source,
        ubh_for_ordering,
        ubs_for_ordering,
        schumaker: context.schumaker.clone(),
        zero_tilde_vertices: stats.zero_tilde_vertices(),
        oracle_dim,
        homology_defect,
        exactness_certified: certified_ordering.is_some(),
        certified_ordering,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ps12_sweep() {
        let tri = fixtures::ps12_single();
        let options = ReportOptions {
            oracle: true,
            ..ReportOptions::default()
        };
        let reports = sweep(&tri, 1, 2..=4, &options).unwrap();
        assert_eq!(
            reports.iter().map(|r| r.k).collect::<Vec<_>>(),
            vec![2, 3, 4]
        );
        let first = &reports[0];
        assert_eq!(
            (first.lbh, first.best_ubh, first.oracle_dim),
            (12, 12, Some(12))
        );
        assert_eq!(first.schumaker, SchumakerSearch::NoneExists);
        assert_eq!(first.ordering_source, OrderingSource::Optimized);
        assert_eq!(first.ubs_for_ordering, None);
        assert!(reports
            .iter()
            .all(|r| r.exactness_certified && r.homology_defect == Some(0)));
    }

    #[test]
    fn morgan_scott_report() {
        let options = ReportOptions {
            oracle: true,
            ..ReportOptions::default()
        };
        let space = SplineSpace::new(1, 2).unwrap();
        let sym = report(&fixtures::morgan_scott(true), space, &options).unwrap();
        assert_eq!(
            (sym.lbh, sym.oracle_dim, sym.homology_defect),
            (6, Some(7), Some(1))
        );
        assert_eq!(sym.ordering_source, OrderingSource::Schumaker);
        assert_eq!(sym.ubs_for_ordering, Some(sym.ubh_for_ordering));
        let gen = report(&fixtures::morgan_scott(false), space, &options).unwrap();
        assert_eq!(
            (gen.lbh, gen.oracle_dim, gen.homology_defect),
            (6, Some(6), Some(0))
        );
    }

    #[test]
    fn supplied_ordering_is_checked() {
        let tri = fixtures::grid(5, 5);
        let options = ReportOptions {
            ordering: Some(vec![12]),
            ..ReportOptions::default()
        };
        assert!(matches!(
            sweep(&tri, 1, 2..=2, &options),
            Err(ReportError::Ordering(_))
        ));
        let mut order = tri.interior_vertices().to_vec();
        order.retain(|&v| v != 12);
        order.insert(0, 12);
        let options = ReportOptions {
            ordering: Some(order),
            strategy: OrderStrategy::Greedy,
            ..ReportOptions::default()
        };
        let report = sweep(&tri, 1, 3..=3, &options).unwrap().remove(0);
        assert_eq!(report.zero_tilde_vertices, vec![12]);
        assert!(!report.exactness_certified);
        assert_eq!(report.search_method, SearchMethod::Greedy);
    }

    #[test]
    fn rejects_r_above_k() {
        let tri = fixtures::single_triangle();
        assert!(matches!(
            sweep(&tri, 3, 2..=4, &ReportOptions::default()),
            Err(ReportError::Bounds(BoundsError::SmoothnessExceedsDegree {
                r: 3,
                k: 2
            }))
        ));
    }

    #[test]
    fn json_round_trip() {
        let tri = fixtures::square_fan();
        let reports = sweep(&tri, 1, 1..=3, &ReportOptions::default()).unwrap();
        let text = serde_json::to_string_pretty(&reports).unwrap();
        let back: Vec<BoundReport> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, reports);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
    }
}
