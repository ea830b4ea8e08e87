//! Powell-Sabin refinements.
//!
//! Child vertex numbering is fixed: the parent vertices keep their indices,
//! then one new vertex per parent edge (in edge-id order), then per parent
//! triangle its split point followed, for the twelve-split, by the three
//! midpoints of the medial triangle's edges. Child triangles inherit the
//! winding of their parent.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{binom2, lower_bound_hom, SplineSpace};
use crate::mesh::{
    line_intersection, orientation, strictly_between, strictly_inside, MeshDocument, MeshError,
    Point2, Triangulation,
};
use crate::oracle;
use crate::rational::{frac, isqrt, Rational};

#[derive(Debug, Error)]
pub enum RefineError {
    #[error(
        "split points of triangles {triangles:?} ({first} and {second}) do not cross the shared edge {edge:?} in its interior"
    )]
    CrossingViolated {
        edge: [usize; 2],
        triangles: [usize; 2],
        first: Box<Point2>,
        second: Box<Point2>,
    },
    #[error("split point {point} is not strictly inside triangle {triangle}")]
    NotInterior { triangle: usize, point: Box<Point2> },
    #[error("point {point} for edge {edge:?} is not strictly inside that edge")]
    BoundaryPointOffEdge {
        edge: [usize; 2],
        point: Box<Point2>,
    },
    #[error("edge {0:?} is not a boundary edge of the parent mesh")]
    NotBoundaryEdge([usize; 2]),
    #[error("expected {expected} explicit split points, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("neither centroids nor incenters satisfy the crossing condition; supply explicit split points ({0})")]
    NoAutomaticPoints(Box<RefineError>),
    #[error("the six-split dimension formula needs k >= 2, got {0}")]
    DegreeTooLow(u32),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Ps6,
    Ps12,
}

/// Where each six-split triangle gets its interior point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InteriorPoints {
    Centroid,
    /// Rational approximation of the incenter.
    Incenter,
    /// Centroids, then incenters, then an error.
    Auto,
    /// One point per parent triangle.
    Explicit(Vec<Point2>),
}

/// Where each boundary edge gets its new vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum BoundaryPoints {
    #[default]
    Midpoint,
    /// Points keyed by sorted parent endpoints; unlisted edges use midpoints.
    Explicit(HashMap<[usize; 2], Point2>),
}

/// A refined mesh with its provenance.
#[derive(Debug, Clone)]
pub struct RefinementRecord<'a> {
    pub parent: &'a Triangulation,
    pub scheme: Scheme,
    pub child: Triangulation,
    /// Parent triangle of each child triangle.
    pub parent_of_triangle: Vec<usize>,
    /// Child index of the centroid / split point of each parent triangle.
    pub split_points: Vec<usize>,
    /// Child index of the new vertex on each parent edge.
    pub edge_points: Vec<usize>,
    /// Twelve-split only: medial-edge midpoints of each parent triangle,
    /// listed by the corner whose median passes through them.
    pub medial_points: Vec<[usize; 3]>,
}

/// Mesh file of a refinement, carrying the child-to-parent map and, when
/// known, a certified vertex ordering.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefinedDocument {
    #[serde(flatten)]
    pub mesh: MeshDocument,
    pub parent_of_triangle: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,
}

impl RefinementRecord<'_> {
    pub fn to_document(&self, ordering: Option<Vec<usize>>) -> RefinedDocument {
        RefinedDocument {
            mesh: self.child.to_document(),
            parent_of_triangle: self.parent_of_triangle.clone(),
            ordering,
        }
    }
}

struct ChildBuilder<'a> {
    parent: &'a Triangulation,
    points: Vec<Point2>,
    triangles: Vec<[usize; 3]>,
    parent_of_triangle: Vec<usize>,
}

impl<'a> ChildBuilder<'a> {
    fn new(parent: &'a Triangulation, edge_points: Vec<Point2>) -> Self {
        let mut points = parent.vertices().to_vec();
        points.extend(edge_points);
        Self {
            parent,
            points,
            triangles: Vec::new(),
            parent_of_triangle: Vec::new(),
        }
    }

    fn push_point(&mut self, p: Point2) -> usize {
        self.points.push(p);
        self.points.len() - 1
    }

    fn edge_point(&self, a: usize, b: usize) -> usize {
        let id = self
            .parent
            .edge_between(a, b)
            .expect("triangle side is an edge");
        self.parent.vertices().len() + id
    }

    /// Adds `tri`, flipped if needed to match the winding of `parent_tri`.
    fn push_triangle(&mut self, parent_tri: usize, mut tri: [usize; 3]) {
        let [a, b, c] = self.parent.triangles()[parent_tri];
        let want = orientation(
            self.parent.vertex(a),
            self.parent.vertex(b),
            self.parent.vertex(c),
        );
        let got = orientation(
            &self.points[tri[0]],
            &self.points[tri[1]],
            &self.points[tri[2]],
        );
        if got != want {
            tri.swap(1, 2);
        }
        self.triangles.push(tri);
        self.parent_of_triangle.push(parent_tri);
    }

    fn finish(self) -> Result<(Triangulation, Vec<usize>), MeshError> {
        Ok((
            Triangulation::from_points(self.points, self.triangles)?,
            self.parent_of_triangle,
        ))
    }
}

/// Twelve-split along the medians and the medial triangle.
pub fn ps12_split(parent: &Triangulation) -> RefinementRecord<'_> {
    let midpoints = parent
        .edges()
        .iter()
        .map(|e| parent.vertex(e.ends[0]).midpoint(parent.vertex(e.ends[1])))
        .collect();
    let mut builder = ChildBuilder::new(parent, midpoints);
    let mut split_points = Vec::new();
    let mut medial_points = Vec::new();
    for (t, &[a, b, c]) in parent.triangles().iter().enumerate() {
        let third = frac(1, 3);
        let centroid = {
            let (pa, pb, pc) = (parent.vertex(a), parent.vertex(b), parent.vertex(c));
            Point2::new(
                (&pa.x + &pb.x + &pc.x) * &third,
                (&pa.y + &pb.y + &pc.y) * &third,
            )
        };
        let (mab, mbc, mca) = (
            builder.edge_point(a, b),
            builder.edge_point(b, c),
            builder.edge_point(c, a),
        );
        let g = builder.push_point(centroid);
        let pa = {
            let p = builder.points[mab].midpoint(&builder.points[mca]);
            builder.push_point(p)
        };
        let pb = {
            let p = builder.points[mab].midpoint(&builder.points[mbc]);
            builder.push_point(p)
        };
        let pc = {
            let p = builder.points[mbc].midpoint(&builder.points[mca]);
            builder.push_point(p)
        };
        for tri in [
            [a, mab, pa],
            [a, pa, mca],
            [b, mbc, pb],
            [b, pb, mab],
            [c, mca, pc],
            [c, pc, mbc],
            [g, mab, pa],
            [g, pa, mca],
            [g, mca, pc],
            [g, pc, mbc],
            [g, mbc, pb],
            [g, pb, mab],
        ] {
            builder.push_triangle(t, tri);
        }
        split_points.push(g);
        medial_points.push([pa, pb, pc]);
    }
    let edge_points = (0..parent.edges().len())
        .map(|e| parent.vertices().len() + e)
        .collect();
    let (child, parent_of_triangle) = builder
        .finish()
        .expect("twelve-split of a valid disk is a valid disk");
    RefinementRecord {
        parent,
        scheme: Scheme::Ps12,
        child,
        parent_of_triangle,
        split_points,
        edge_points,
        medial_points,
    }
}

fn centroids(parent: &Triangulation) -> Vec<Point2> {
    let third = frac(1, 3);
    parent
        .triangles()
        .iter()
        .map(|&[a, b, c]| {
            let (pa, pb, pc) = (parent.vertex(a), parent.vertex(b), parent.vertex(c));
            Point2::new(
                (&pa.x + &pb.x + &pc.x) * &third,
                (&pa.y + &pb.y + &pc.y) * &third,
            )
        })
        .collect()
}

const SQRT_SCALE_BITS: u32 = 32;

/// `sqrt(value)` rounded down to a multiple of `2^-32`.
fn approx_sqrt(value: &Rational) -> Rational {
    let shifted = (value.numer() * value.denom()) << (2 * SQRT_SCALE_BITS);
    let root = isqrt(&shifted);
    Rational::new(root, value.denom() << SQRT_SCALE_BITS)
}

/// Incenters with side lengths replaced by rational approximations. The
/// weights stay positive, so each point is strictly inside its triangle.
fn incenters(parent: &Triangulation) -> Vec<Point2> {
    parent
        .triangles()
        .iter()
        .map(|&[a, b, c]| {
            let (pa, pb, pc) = (parent.vertex(a), parent.vertex(b), parent.vertex(c));
            let length = |p: &Point2, q: &Point2| {
                let dx = &p.x - &q.x;
                let dy = &p.y - &q.y;
                let l = approx_sqrt(&(&dx * &dx + &dy * &dy));
                if l.is_positive() {
                    l
                } else {
                    Rational::new(BigInt::one(), BigInt::one() << SQRT_SCALE_BITS)
                }
            };
            let wa = length(pb, pc);
            let wb = length(pc, pa);
            let wc = length(pa, pb);
            let total = &wa + &wb + &wc;
            Point2::new(
                (&wa * &pa.x + &wb * &pb.x + &wc * &pc.x) / &total,
                (&wa * &pa.y + &wb * &pb.y + &wc * &pc.y) / &total,
            )
        })
        .collect()
}

/// Checks interiority and computes the new vertex of every parent edge.
fn edge_points_for(
    parent: &Triangulation,
    nu: &[Point2],
    boundary: &BoundaryPoints,
) -> Result<Vec<Point2>, RefineError> {
    if nu.len() != parent.triangles().len() {
        return Err(RefineError::WrongCount {
            expected: parent.triangles().len(),
            got: nu.len(),
        });
    }
    for (t, (&[a, b, c], p)) in parent.triangles().iter().zip(nu).enumerate() {
        if !strictly_inside(p, parent.vertex(a), parent.vertex(b), parent.vertex(c)) {
            return Err(RefineError::NotInterior {
                triangle: t,
                point: Box::new(p.clone()),
            });
        }
    }
    if let BoundaryPoints::Explicit(map) = boundary {
        for key in map.keys() {
            match parent.edge_between(key[0], key[1]) {
                Some(e) if !parent.edge(e).is_interior() => {}
                _ => return Err(RefineError::NotBoundaryEdge(*key)),
            }
        }
    }
    parent
        .edges()
        .iter()
        .map(|edge| {
            let (p, q) = (parent.vertex(edge.ends[0]), parent.vertex(edge.ends[1]));
            if let [s, t] = edge.triangles[..] {
                let mu =
                    line_intersection(&nu[s], &nu[t], p, q).filter(|mu| strictly_between(mu, p, q));
                mu.ok_or_else(|| RefineError::CrossingViolated {
                    edge: edge.ends,
                    triangles: [s, t],
                    first: Box::new(nu[s].clone()),
                    second: Box::new(nu[t].clone()),
                })
            } else {
                let point = match boundary {
                    BoundaryPoints::Explicit(map) => map.get(&edge.ends).cloned(),
                    BoundaryPoints::Midpoint => None,
                }
                .unwrap_or_else(|| p.midpoint(q));
                if strictly_between(&point, p, q) {
                    Ok(point)
                } else {
                    Err(RefineError::BoundaryPointOffEdge {
                        edge: edge.ends,
                        point: Box::new(point),
                    })
                }
            }
        })
        .collect()
}

/// Six-split: each triangle is joined from an interior point to its corners
/// and to one point on each edge; on interior edges that point is where the
/// segment between the two neighbouring split points crosses the edge.
pub fn ps6_split<'a>(
    parent: &'a Triangulation,
    interior: &InteriorPoints,
    boundary: &BoundaryPoints,
) -> Result<RefinementRecord<'a>, RefineError> {
    let (nu, edge_pts) = match interior {
        InteriorPoints::Centroid => {
            let nu = centroids(parent);
            let e = edge_points_for(parent, &nu, boundary)?;
            (nu, e)
        }
        InteriorPoints::Incenter => {
            let nu = incenters(parent);
            let e = edge_points_for(parent, &nu, boundary)?;
            (nu, e)
        }
        InteriorPoints::Explicit(points) => {
            let e = edge_points_for(parent, points, boundary)?;
            (points.clone(), e)
        }
        InteriorPoints::Auto => {
            let nu = centroids(parent);
            match edge_points_for(parent, &nu, boundary) {
                Ok(e) => (nu, e),
                Err(RefineError::CrossingViolated { .. }) => {
                    let nu = incenters(parent);
                    match edge_points_for(parent, &nu, boundary) {
                        Ok(e) => (nu, e),
                        Err(err @ RefineError::CrossingViolated { .. }) => {
                            return Err(RefineError::NoAutomaticPoints(Box::new(err)))
                        }
                        Err(err) => return Err(err),
                    }
                }
                Err(err) => return Err(err),
            }
        }
    };

    let mut builder = ChildBuilder::new(parent, edge_pts);
    let mut split_points = Vec::with_capacity(nu.len());
    for (t, (&[a, b, c], p)) in parent.triangles().iter().zip(nu).enumerate() {
        let (mab, mbc, mca) = (
            builder.edge_point(a, b),
            builder.edge_point(b, c),
            builder.edge_point(c, a),
        );
        let v = builder.push_point(p);
        for tri in [
            [a, mab, v],
            [mab, b, v],
            [b, mbc, v],
            [mbc, c, v],
            [c, mca, v],
            [mca, a, v],
        ] {
            builder.push_triangle(t, tri);
        }
        split_points.push(v);
    }
    let edge_points = (0..parent.edges().len())
        .map(|e| parent.vertices().len() + e)
        .collect();
    let (child, parent_of_triangle) = builder.finish()?;
    Ok(RefinementRecord {
        parent,
        scheme: Scheme::Ps6,
        child,
        parent_of_triangle,
        split_points,
        edge_points,
        medial_points: Vec::new(),
    })
}

/// Interior-vertex ordering of a six-split that peels parent triangles from
/// the boundary inward. Each step takes the lowest-index unprocessed parent
/// triangle with a side on the current front and lists its split point, then
/// its new edge vertices, then its corners, skipping boundary and already
/// listed vertices.
pub fn ps6_peeling_order(record: &RefinementRecord<'_>) -> Vec<usize> {
    let parent = record.parent;
    let child = &record.child;
    let mut on_front: Vec<bool> = parent.edges().iter().map(|e| !e.is_interior()).collect();
    let mut done = vec![false; parent.triangles().len()];
    let mut listed = vec![false; child.vertices().len()];
    let mut order = Vec::with_capacity(child.interior_vertices().len());
    let mut push = |v: usize, order: &mut Vec<usize>| {
        if !child.is_boundary_vertex(v) && !std::mem::replace(&mut listed[v], true) {
            order.push(v);
        }
    };
    for _ in 0..parent.triangles().len() {
        let sides = |t: usize| {
            let [a, b, c] = parent.triangles()[t];
            [(a, b), (b, c), (c, a)].map(|(p, q)| parent.edge_between(p, q).expect("side"))
        };
        let next = (0..parent.triangles().len())
            .find(|&t| !done[t] && sides(t).iter().any(|&e| on_front[e]))
            .expect("a connected disk always has a triangle on the front");
        done[next] = true;
        push(record.split_points[next], &mut order);
        for e in sides(next) {
            push(record.edge_points[e], &mut order);
            on_front[e] = true;
        }
        for v in parent.triangles()[next] {
            push(v, &mut order);
        }
    }
    order
}

/// Closed-form dimension of `C^1_k` on a six-split, in terms of the parent
/// face counts.
pub fn ps6_dimension_formula(
    f0: usize,
    f0_interior: usize,
    f1_interior: usize,
    k: u32,
) -> Result<i64, RefineError> {
    let (f0, f0i, f1i, k) = (f0 as i64, f0_interior as i64, f1_interior as i64, k as i64);
    match k {
        0 | 1 => Err(RefineError::DegreeTooLow(k as u32)),
        2 => Ok(3 * f0),
        _ => Ok(binom2(k + 2)
            + f1i * binom2(k - 2)
            + 2 * f0i * binom2(k - 1)
            + binom2(2 * k - 1) * (f0 - 2)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditStatus {
    Match,
    FormulaMismatch,
}

/// Closed form versus rank computation for one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ps6Audit {
    pub k: u32,
    pub formula: i64,
    pub lower_bound: i64,
    pub oracle: i64,
    pub status: AuditStatus,
}

/// Compares [`ps6_dimension_formula`] with the `C^1_k` dimension of the
/// six-split `record` for each `k`.
pub fn audit_ps6(
    record: &RefinementRecord<'_>,
    degrees: impl IntoIterator<Item = u32>,
) -> Result<Vec<Ps6Audit>, RefineError> {
    let f = record.parent.f_vector();
    degrees
        .into_iter()
        .map(|k| {
            let formula = ps6_dimension_formula(f.f0, f.f0_interior, f.f1_interior, k)?;
            let space = SplineSpace::new(1, k).expect("k >= 2");
            let oracle = oracle::spline_dimension(&record.child, space) as i64;
            Ok(Ps6Audit {
                k,
                formula,
                lower_bound: lower_bound_hom(&record.child, space),
                oracle,
                status: if formula == oracle {
                    AuditStatus::Match
                } else {
                    AuditStatus::FormulaMismatch
                },
            })
        })
        .collect()
}
