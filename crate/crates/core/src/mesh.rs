//! Planar triangulations of a topological disk with exact rational coordinates.
//!
//! A [`Triangulation`] is immutable once built. Construction goes through
//! [`validate_disk`], so every value of the type satisfies the disk
//! invariants: nondegenerate triangles, at most two triangles per edge, a
//! single boundary cycle, Euler characteristic one, connectivity and a
//! consistent orientation across every interior edge. Pairwise overlap of
//! non-adjacent triangles is *not* tested.
//!
//! Each edge carries a homogeneous linear form `A x + B y + C z` vanishing on
//! the cone over the edge when the plane is embedded at `z = 1`
//! ([`EdgeForm`]), and the class of its direction ([`SlopeKey`]).

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{
    format_rational, parse_rational, primitive_integer_vector, sign_normalize, Rational,
    RationalParseError,
};

/// A point of the plane. The lifted point is `(x, y, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(crate::rational::int(x), crate::rational::int(y))
    }

    pub fn midpoint(&self, other: &Point2) -> Point2 {
        let half = crate::rational::frac(1, 2);
        Point2::new((&self.x + &other.x) * &half, (&self.y + &other.y) * &half)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.x),
            format_rational(&self.y)
        )
    }
}

/// Twice the signed area of `abc`.
pub fn orientation_det(a: &Point2, b: &Point2, c: &Point2) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// Sign of the turn `a -> b -> c`: `Greater` for counter-clockwise.
pub fn orientation(a: &Point2, b: &Point2, c: &Point2) -> Ordering {
    orientation_det(a, b, c).cmp(&Rational::zero())
}

/// Homogeneous linear form `A x + B y + C z` vanishing on the cone over an
/// edge. Coefficients are coprime integers (held as rationals) with the first
/// nonzero one positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeForm {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl EdgeForm {
    /// Form of the line through two distinct points.
    pub fn through(p: &Point2, q: &Point2) -> Self {
        let a = &p.y - &q.y;
        let b = &q.x - &p.x;
        let c = &p.x * &q.y - &q.x * &p.y;
        let mut ints = primitive_integer_vector(&[a, b, c]);
        sign_normalize(&mut ints);
        let [a, b, c]: [BigInt; 3] = ints.try_into().expect("three coefficients");
        Self {
            a: Rational::from_integer(a),
            b: Rational::from_integer(b),
            c: Rational::from_integer(c),
        }
    }

    /// Value of the form at the lifted point `(x, y, 1)`.
    pub fn eval(&self, p: &Point2) -> Rational {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn slope_key(&self) -> SlopeKey {
        SlopeKey::from_normal(&self.a, &self.b)
    }
}

/// Direction class of a line: the normal `(A : B)` reduced to coprime
/// integers with the first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlopeKey {
    pub a: BigInt,
    pub b: BigInt,
}

impl SlopeKey {
    pub fn from_normal(a: &Rational, b: &Rational) -> Self {
        assert!(
            !(a.is_zero() && b.is_zero()),
            "slope of a zero normal vector"
        );
        let mut ints = primitive_integer_vector(&[a.clone(), b.clone()]);
        sign_normalize(&mut ints);
        let [a, b]: [BigInt; 2] = ints.try_into().expect("two coefficients");
        Self { a, b }
    }

    /// Slope class of the line through `p` with direction `q - p`.
    pub fn of_segment(p: &Point2, q: &Point2) -> Self {
        Self::from_normal(&(&p.y - &q.y), &(&q.x - &p.x))
    }

    /// Linear form `A x + B y` through the origin with this slope.
    pub fn normal(&self) -> (Rational, Rational) {
        (
            Rational::from_integer(self.a.clone()),
            Rational::from_integer(self.b.clone()),
        )
    }
}

impl fmt::Display for SlopeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.a, self.b)
    }
}

/// Counts of faces; superscript-0 counts are interior faces, the `boundary`
/// ones lie on the boundary cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    pub f0: usize,
    pub f1: usize,
    pub f2: usize,
    pub f0_interior: usize,
    pub f1_interior: usize,
    pub f0_boundary: usize,
    pub f1_boundary: usize,
}

#[derive(Debug, Error)]
pub enum MeshError {
    #[error(transparent)]
    Rational(#[from] RationalParseError),
    #[error("malformed mesh document")]
    Document(#[from] serde_json::Error),
    #[error("triangle {triangle} references vertex index {index} out of range (mesh has {count} vertices)")]
    IndexOutOfRange {
        triangle: usize,
        index: usize,
        count: usize,
    },
    #[error("vertices {first} and {second} have identical coordinates {point}")]
    DuplicateVertex {
        first: usize,
        second: usize,
        point: Box<Point2>,
    },
    #[error("mesh is not a valid triangulated disk: {0}")]
    Invalid(ValidationReport),
    #[error("vertex {0} is not an interior vertex")]
    NotInterior(usize),
    #[error("vertex index {0} out of range")]
    NoSuchVertex(usize),
    #[error("affine map is not invertible")]
    SingularMap,
}

/// Raw, unvalidated mesh: coordinates plus zero-based index triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshData {
    pub vertices: Vec<Point2>,
    pub triangles: Vec<[usize; 3]>,
}

/// On-disk layout of a mesh file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeshDocument {
    pub vertices: Vec<[String; 2]>,
    pub triangles: Vec<[usize; 3]>,
}

impl MeshData {
    /// Checks index ranges and coordinate uniqueness; topology and geometry
    /// are left to [`validate_disk`].
    pub fn new(vertices: Vec<Point2>, triangles: Vec<[usize; 3]>) -> Result<Self, MeshError> {
        let count = vertices.len();
        for (t, tri) in triangles.iter().enumerate() {
            if let Some(&index) = tri.iter().find(|&&i| i >= count) {
                return Err(MeshError::IndexOutOfRange {
                    triangle: t,
                    index,
                    count,
                });
            }
        }
        let mut seen: HashMap<&Point2, usize> = HashMap::with_capacity(count);
        for (i, p) in vertices.iter().enumerate() {
            if let Some(&first) = seen.get(p) {
                return Err(MeshError::DuplicateVertex {
                    first,
                    second: i,
                    point: Box::new(p.clone()),
                });
            }
            seen.insert(p, i);
        }
        Ok(Self {
            vertices,
            triangles,
        })
    }

    pub fn from_document(doc: &MeshDocument) -> Result<Self, MeshError> {
        let vertices = doc
            .vertices
            .iter()
            .map(|[x, y]| Ok(Point2::new(parse_rational(x)?, parse_rational(y)?)))
            .collect::<Result<Vec<_>, MeshError>>()?;
        Self::new(vertices, doc.triangles.clone())
    }

    pub fn from_json(text: &str) -> Result<Self, MeshError> {
        let doc: MeshDocument = serde_json::from_str(text)?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> MeshDocument {
        MeshDocument {
            vertices: self
                .vertices
                .iter()
                .map(|p| [format_rational(&p.x), format_rational(&p.y)])
                .collect(),
            triangles: self.triangles.clone(),
        }
    }
}

/// A single failed disk invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DegenerateTriangle { triangle: usize },
    NonManifoldEdge { edge: [usize; 2], triangles: usize },
    UnusedVertex { vertex: usize },
    NotConnected { components: usize },
    BoundaryNotSingleCycle,
    EulerCharacteristic { value: i64 },
    InconsistentOrientation { edge: [usize; 2] },
    InteriorVertexOnBoundaryEdge { vertex: usize },
}

impl Violation {
    /// Short name of the invariant that failed.
    pub fn name(&self) -> &'static str {
        match self {
            Violation::DegenerateTriangle { .. } => "degenerate triangle",
            Violation::NonManifoldEdge { .. } => "edge shared by more than two triangles",
            Violation::UnusedVertex { .. } => "vertex in no triangle",
            Violation::NotConnected { .. } => "not connected",
            Violation::BoundaryNotSingleCycle => "boundary is not a single cycle",
            Violation::EulerCharacteristic { .. } => "not a disk (Euler characteristic)",
            Violation::InconsistentOrientation { .. } => "inconsistent orientation",
            Violation::InteriorVertexOnBoundaryEdge { .. } => "interior vertex on boundary edge",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DegenerateTriangle { triangle } => {
                write!(f, "{} (triangle {triangle})", self.name())
            }
            Violation::NonManifoldEdge { edge, triangles } => write!(
                f,
                "{} (edge {}-{} lies on {triangles} triangles)",
                self.name(),
                edge[0],
                edge[1]
            ),
            Violation::UnusedVertex { vertex } => write!(f, "{} (vertex {vertex})", self.name()),
            Violation::NotConnected { components } => {
                write!(
                    f,
                    "{} ({components} edge-connected components)",
                    self.name()
                )
            }
            Violation::BoundaryNotSingleCycle => f.write_str(self.name()),
            Violation::EulerCharacteristic { value } => {
                write!(f, "{} (V - E + F = {value}, expected 1)", self.name())
            }
            Violation::InconsistentOrientation { edge } => write!(
                f,
                "{} (triangles on edge {}-{} fold over each other)",
                self.name(),
                edge[0],
                edge[1]
            ),
            Violation::InteriorVertexOnBoundaryEdge { vertex } => {
                write!(f, "{} (vertex {vertex})", self.name())
            }
        }
    }
}

/// Outcome of [`validate_disk`]: every failed invariant, by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub euler_characteristic: i64,
    /// Always `false`: overlapping non-adjacent triangles are not detected.
    pub overlap_checked: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            f.write_str("valid disk")?;
        } else {
            let names: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            f.write_str(&names.join("; "))?;
        }
        f.write_str(" [pairwise triangle overlap not checked]")
    }
}

fn edge_key(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Checks every disk invariant on raw mesh data and reports each failure.
pub fn validate_disk(data: &MeshData) -> ValidationReport {
    let mut violations = Vec::new();
    let v_count = data.vertices.len();

    let mut edge_faces: HashMap<[usize; 2], Vec<usize>> = HashMap::new();
    for (t, tri) in data.triangles.iter().enumerate() {
        let [a, b, c] = *tri;
        let pts = (&data.vertices[a], &data.vertices[b], &data.vertices[c]);
        if a == b || b == c || a == c || orientation(pts.0, pts.1, pts.2) == Ordering::Equal {
            violations.push(Violation::DegenerateTriangle { triangle: t });
        }
        for (p, q) in [(a, b), (b, c), (c, a)] {
            if p != q {
                edge_faces.entry(edge_key(p, q)).or_default().push(t);
            }
        }
    }

    let mut edges: Vec<[usize; 2]> = edge_faces.keys().copied().collect();
    edges.sort_unstable();
    for e in &edges {
        let n = edge_faces[e].len();
        if n > 2 {
            violations.push(Violation::NonManifoldEdge {
                edge: *e,
                triangles: n,
            });
        }
    }

    let mut used = vec![false; v_count];
    for tri in &data.triangles {
        tri.iter().for_each(|&v| used[v] = true);
    }
    for (v, &u) in used.iter().enumerate() {
        if !u {
            violations.push(Violation::UnusedVertex { vertex: v });
        }
    }

    // Connectivity through shared edges.
    let t_count = data.triangles.len();
    let mut component = vec![usize::MAX; t_count];
    let mut components = 0;
    for start in 0..t_count {
        if component[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        component[start] = components;
        while let Some(t) = queue.pop_front() {
            let [a, b, c] = data.triangles[t];
            for (p, q) in [(a, b), (b, c), (c, a)] {
                if p == q {
                    continue;
                }
                for &u in &edge_faces[&edge_key(p, q)] {
                    if component[u] == usize::MAX {
                        component[u] = components;
                        queue.push_back(u);
                    }
                }
            }
        }
        components += 1;
    }
    if components != 1 {
        violations.push(Violation::NotConnected { components });
    }

    // Boundary edges must form exactly one closed cycle.
    let boundary: Vec<[usize; 2]> = edges
        .iter()
        .copied()
        .filter(|e| edge_faces[e].len() == 1)
        .collect();
    if !is_single_cycle(&boundary) {
        violations.push(Violation::BoundaryNotSingleCycle);
    }

    let euler = v_count as i64 - edges.len() as i64 + t_count as i64;
    if euler != 1 {
        violations.push(Violation::EulerCharacteristic { value: euler });
    }

    // The two triangles on an interior edge must lie on opposite sides of it.
    for e in &edges {
        let faces = &edge_faces[e];
        if faces.len() != 2 {
            continue;
        }
        let apex = |t: usize| {
            *data.triangles[t]
                .iter()
                .find(|&&v| v != e[0] && v != e[1])
                .expect("nondegenerate triangle has an apex")
        };
        let (p, q) = (&data.vertices[e[0]], &data.vertices[e[1]]);
        let s1 = orientation(p, q, &data.vertices[apex(faces[0])]);
        let s2 = orientation(p, q, &data.vertices[apex(faces[1])]);
        if s1 == s2 || s1 == Ordering::Equal || s2 == Ordering::Equal {
            violations.push(Violation::InconsistentOrientation { edge: *e });
        }
    }

    // Every edge at an interior vertex must be interior.
    let mut on_boundary = vec![false; v_count];
    for e in &boundary {
        on_boundary[e[0]] = true;
        on_boundary[e[1]] = true;
    }
    let mut flagged = BTreeSet::new();
    for e in &edges {
        if edge_faces[e].len() == 1 {
            for &v in e {
                if !on_boundary[v] {
                    flagged.insert(v);
                }
            }
        }
    }
    violations.extend(
        flagged
            .into_iter()
            .map(|vertex| Violation::InteriorVertexOnBoundaryEdge { vertex }),
    );

    ValidationReport {
        violations,
        euler_characteristic: euler,
        overlap_checked: false,
    }
}

fn is_single_cycle(edges: &[[usize; 2]]) -> bool {
    if edges.len() < 3 {
        return false;
    }
    let mut adjacency: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in edges {
        adjacency.entry(e[0]).or_default().push(e[1]);
        adjacency.entry(e[1]).or_default().push(e[0]);
    }
    if adjacency.values().any(|n| n.len() != 2) {
        return false;
    }
    let start = edges[0][0];
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adjacency[&v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == adjacency.len()
}

/// An edge with its canonical (sorted) endpoints and incident triangles.
#[derive(Debug, Clone)]
pub struct Edge {
    pub ends: [usize; 2],
    pub triangles: Vec<usize>,
    pub form: EdgeForm,
    pub slope: SlopeKey,
}

impl Edge {
    pub fn is_interior(&self) -> bool {
        self.triangles.len() == 2
    }

    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

/// Validated planar triangulation of a disk.
#[derive(Debug, Clone)]
pub struct Triangulation {
    vertices: Vec<Point2>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<Edge>,
    edge_lookup: HashMap<[usize; 2], usize>,
    vertex_edges: Vec<Vec<usize>>,
    on_boundary: Vec<bool>,
    interior_vertices: Vec<usize>,
    f_vector: FVector,
}

impl Triangulation {
    /// Validates `data` and builds all derived incidence data.
    pub fn new(data: MeshData) -> Result<Self, MeshError> {
        let report = validate_disk(&data);
        if !report.is_valid() {
            return Err(MeshError::Invalid(report));
        }
        let MeshData {
            vertices,
            triangles,
        } = data;

        let mut faces_of: HashMap<[usize; 2], Vec<usize>> = HashMap::new();
        for (t, &[a, b, c]) in triangles.iter().enumerate() {
            for (p, q) in [(a, b), (b, c), (c, a)] {
                faces_of.entry(edge_key(p, q)).or_default().push(t);
            }
        }
        let mut keys: Vec<[usize; 2]> = faces_of.keys().copied().collect();
        keys.sort_unstable();

        let mut edges = Vec::with_capacity(keys.len());
        let mut edge_lookup = HashMap::with_capacity(keys.len());
        let mut vertex_edges = vec![Vec::new(); vertices.len()];
        let mut on_boundary = vec![false; vertices.len()];
        for (id, key) in keys.into_iter().enumerate() {
            let form = EdgeForm::through(&vertices[key[0]], &vertices[key[1]]);
            let slope = form.slope_key();
            let tris = faces_of.remove(&key).expect("edge present");
            if tris.len() == 1 {
                on_boundary[key[0]] = true;
                on_boundary[key[1]] = true;
            }
            vertex_edges[key[0]].push(id);
            vertex_edges[key[1]].push(id);
            edge_lookup.insert(key, id);
            edges.push(Edge {
                ends: key,
                triangles: tris,
                form,
                slope,
            });
        }

        let interior_vertices: Vec<usize> =
            (0..vertices.len()).filter(|&v| !on_boundary[v]).collect();
        let f1_boundary = edges.iter().filter(|e| !e.is_interior()).count();
        let f_vector = FVector {
            f0: vertices.len(),
            f1: edges.len(),
            f2: triangles.len(),
            f0_interior: interior_vertices.len(),
            f1_interior: edges.len() - f1_boundary,
            f0_boundary: vertices.len() - interior_vertices.len(),
            f1_boundary,
        };

        let tri = Self {
            vertices,
            triangles,
            edges,
            edge_lookup,
            vertex_edges,
            on_boundary,
            interior_vertices,
            f_vector,
        };
        debug_assert!(tri.interior_vertices.iter().all(|&v| tri.vertex_edges[v]
            .iter()
            .all(|&e| tri.edges[e].is_interior())));
        Ok(tri)
    }

    pub fn from_points(points: Vec<Point2>, triangles: Vec<[usize; 3]>) -> Result<Self, MeshError> {
        Self::new(MeshData::new(points, triangles)?)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Point2 {
        &self.vertices[v]
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// Edge id joining two vertices, if they are adjacent.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_lookup.get(&edge_key(a, b)).copied()
    }

    /// Ids of the edges incident to `v`, ascending.
    pub fn vertex_edges(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.on_boundary[v]
    }

    /// Interior vertices in ascending index order.
    pub fn interior_vertices(&self) -> &[usize] {
        &self.interior_vertices
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_interior())
    }

    pub fn f_vector(&self) -> FVector {
        self.f_vector
    }

    /// Linear form of edge `id`, canonicalized.
    pub fn edge_form(&self, id: usize) -> &EdgeForm {
        &self.edges[id].form
    }

    /// Number of distinct slopes among the edges at an interior vertex.
    pub fn slope_count(&self, v: usize) -> Result<u32, MeshError> {
        if v >= self.vertices.len() {
            return Err(MeshError::NoSuchVertex(v));
        }
        if self.on_boundary[v] {
            return Err(MeshError::NotInterior(v));
        }
        Ok(self.distinct_slopes(self.vertex_edges[v].iter().copied()))
    }

    /// Number of distinct slopes in a set of edges.
    pub fn distinct_slopes(&self, edges: impl IntoIterator<Item = usize>) -> u32 {
        let set: HashSet<&SlopeKey> = edges.into_iter().map(|e| &self.edges[e].slope).collect();
        set.len() as u32
    }

    /// Re-runs every disk invariant on the stored data.
    pub fn validate(&self) -> ValidationReport {
        validate_disk(&self.to_data())
    }

    pub fn to_data(&self) -> MeshData {
        MeshData {
            vertices: self.vertices.clone(),
            triangles: self.triangles.clone(),
        }
    }

    pub fn to_document(&self) -> MeshDocument {
        self.to_data().to_document()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("mesh document serializes")
    }

    /// Applies an invertible affine map to every vertex.
    pub fn map_affine(&self, map: &AffineMap) -> Result<Self, MeshError> {
        if map.determinant().is_zero() {
            return Err(MeshError::SingularMap);
        }
        let points = self.vertices.iter().map(|p| map.apply(p)).collect();
        Self::from_points(points, self.triangles.clone())
    }

    /// Renames vertex `v` to `perm[v]` and remaps every triangle.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, MeshError> {
        assert_eq!(perm.len(), self.vertices.len(), "permutation length");
        let mut points = vec![None; perm.len()];
        for (v, &target) in perm.iter().enumerate() {
            points[target] = Some(self.vertices[v].clone());
        }
        let points = points
            .into_iter()
            .map(|p| p.expect("perm is a permutation"))
            .collect();
        let triangles = self
            .triangles
            .iter()
            .map(|t| [perm[t[0]], perm[t[1]], perm[t[2]]])
            .collect();
        Self::from_points(points, triangles)
    }
}

/// Parses a mesh file and validates it as a disk.
pub fn parse_triangulation(document: &str) -> Result<Triangulation, MeshError> {
    Triangulation::new(MeshData::from_json(document)?)
}

/// `p -> M p + offset` with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: [[Rational; 2]; 2],
    pub offset: [Rational; 2],
}

impl AffineMap {
    pub fn determinant(&self) -> Rational {
        &self.matrix[0][0] * &self.matrix[1][1] - &self.matrix[0][1] * &self.matrix[1][0]
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        let m = &self.matrix;
        Point2::new(
            &m[0][0] * &p.x + &m[0][1] * &p.y + &self.offset[0],
            &m[1][0] * &p.x + &m[1][1] * &p.y + &self.offset[1],
        )
    }
}

/// True when `p` lies strictly inside triangle `abc` (any winding).
pub fn strictly_inside(p: &Point2, a: &Point2, b: &Point2, c: &Point2) -> bool {
    let s = orientation(a, b, c);
    s != Ordering::Equal
        && orientation(a, b, p) == s
        && orientation(b, c, p) == s
        && orientation(c, a, p) == s
}

/// Intersection of lines `p1 p2` and `q1 q2` if they are not parallel.
pub fn line_intersection(p1: &Point2, p2: &Point2, q1: &Point2, q2: &Point2) -> Option<Point2> {
    let d1 = (&p2.x - &p1.x, &p2.y - &p1.y);
    let d2 = (&q2.x - &q1.x, &q2.y - &q1.y);
    let denom = &d1.0 * &d2.1 - &d1.1 * &d2.0;
    if denom.is_zero() {
        return None;
    }
    let s = ((&q1.x - &p1.x) * &d2.1 - (&q1.y - &p1.y) * &d2.0) / &denom;
    Some(Point2::new(&p1.x + &s * &d1.0, &p1.y + &s * &d1.1))
}

/// True when `p` lies on segment `ab` strictly between its endpoints.
pub fn strictly_between(p: &Point2, a: &Point2, b: &Point2) -> bool {
    if orientation(a, b, p) != Ordering::Equal {
        return false;
    }
    let dot = (&p.x - &a.x) * (&b.x - &a.x) + (&p.y - &a.y) * (&b.y - &a.y);
    let len2 = (&b.x - &a.x) * (&b.x - &a.x) + (&b.y - &a.y) * (&b.y - &a.y);
    dot.is_positive() && dot < len2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn pts(coords: &[(i64, i64)]) -> Vec<Point2> {
        coords
            .iter()
            .map(|&(x, y)| Point2::from_ints(x, y))
            .collect()
    }

    #[test]
    fn single_triangle_counts() {
        let t = parse_triangulation(
            r#"{"vertices": [["0","0"],["1","0"],["0","1"]], "triangles": [[0,1,2]]}"#,
        )
        .unwrap();
        let f = t.f_vector();
        assert_eq!(
            (f.f0, f.f1, f.f2, f.f0_interior, f.f1_interior),
            (3, 3, 1, 0, 0)
        );
        assert_eq!((f.f0_boundary, f.f1_boundary), (3, 3));
    }

    #[test]
    fn two_triangles_share_one_interior_edge() {
        let t = Triangulation::from_points(
            pts(&[(0, 0), (1, 0), (0, 1), (0, -1)]),
            vec![[0, 1, 2], [0, 1, 3]],
        )
        .unwrap();
        let f = t.f_vector();
        assert_eq!((f.f1_interior, f.f0_interior), (1, 0));
        assert_eq!(f.f1_interior, f.f1 - f.f1_boundary);
        assert_eq!(f.f0_interior, f.f0 - f.f0_boundary);
    }

    #[test]
    fn index_out_of_range_is_reported() {
        let err = parse_triangulation(
            r#"{"vertices": [["0","0"],["1","0"],["0","1"],["1","1"]], "triangles": [[0,1,5]]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, MeshError::IndexOutOfRange { index: 5, .. }));
        assert!(err.to_string().contains("out of range"));
    }

    #[test]
    fn malformed_literal_and_duplicates_rejected() {
        let err = parse_triangulation(
            r#"{"vertices": [["0","0"],["1.5","0"],["0","1"]], "triangles": [[0,1,2]]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, MeshError::Rational(_)));
        let err = parse_triangulation(
            r#"{"vertices": [["0","0"],["1","0"],["2/2","0"]], "triangles": [[0,1,2]]}"#,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            MeshError::DuplicateVertex {
                first: 1,
                second: 2,
                ..
            }
        ));
    }

    #[test]
    fn pinched_triangles_fail_validation() {
        let data = MeshData::new(
            pts(&[(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)]),
            vec![[0, 1, 2], [0, 3, 4]],
        )
        .unwrap();
        let report = validate_disk(&data);
        assert!(!report.is_valid());
        let names: Vec<_> = report.violations.iter().map(|v| v.name()).collect();
        assert!(
            names.contains(&"boundary is not a single cycle"),
            "{names:?}"
        );
        assert!(names.contains(&"not connected"));
    }

    #[test]
    fn degenerate_triangle_fails_validation() {
        let data = MeshData::new(pts(&[(0, 0), (1, 1), (2, 2)]), vec![[0, 1, 2]]).unwrap();
        let report = validate_disk(&data);
        assert!(report
            .violations
            .contains(&Violation::DegenerateTriangle { triangle: 0 }));
        assert!(matches!(
            Triangulation::new(data),
            Err(MeshError::Invalid(_))
        ));
    }

    #[test]
    fn folded_pair_fails_orientation() {
        // Both apexes on the same side of the shared edge.
        let data = MeshData::new(
            pts(&[(0, 0), (4, 0), (1, 2), (3, 1)]),
            vec![[0, 1, 2], [0, 1, 3]],
        )
        .unwrap();
        let report = validate_disk(&data);
        assert!(report
            .violations
            .contains(&Violation::InconsistentOrientation { edge: [0, 1] }));
    }

    #[test]
    fn annulus_is_not_a_disk() {
        // Square with a square hole, 8 triangles.
        let data = MeshData::new(
            pts(&[
                (0, 0),
                (3, 0),
                (3, 3),
                (0, 3),
                (1, 1),
                (2, 1),
                (2, 2),
                (1, 2),
            ]),
            vec![
                [0, 1, 5],
                [0, 5, 4],
                [1, 2, 6],
                [1, 6, 5],
                [2, 3, 7],
                [2, 7, 6],
                [3, 0, 4],
                [3, 4, 7],
            ],
        )
        .unwrap();
        let report = validate_disk(&data);
        assert!(report
            .violations
            .contains(&Violation::EulerCharacteristic { value: 0 }));
        assert!(report
            .violations
            .contains(&Violation::BoundaryNotSingleCycle));
    }

    #[test]
    fn edge_forms_are_canonical() {
        let o = Point2::from_ints(0, 0);
        let f = EdgeForm::through(&o, &Point2::from_ints(1, 0));
        assert_eq!((f.a, f.b, f.c), (int(0), int(1), int(0)));
        let f = EdgeForm::through(&o, &Point2::from_ints(1, 1));
        assert_eq!((f.a, f.b, f.c), (int(1), int(-1), int(0)));
        let f = EdgeForm::through(&Point2::from_ints(1, 0), &Point2::from_ints(0, 1));
        assert_eq!((f.a, f.b, f.c), (int(1), int(1), int(-1)));
        let p = Point2::new(frac(1, 2), frac(3, 4));
        let q = Point2::new(frac(-2, 3), int(5));
        let f = EdgeForm::through(&q, &p);
        assert!(f.eval(&p).is_zero() && f.eval(&q).is_zero());
        assert!(!f.eval(&o).is_zero());
        assert_eq!(f, EdgeForm::through(&p, &q));
    }

    #[test]
    fn slope_counts_of_a_fan() {
        // Pentagon fan around an interior vertex, no collinear spokes.
        let t = Triangulation::from_points(
            pts(&[(0, 0), (5, 1), (2, 5), (-3, 4), (-4, -2), (2, -4)]),
            vec![[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1]],
        )
        .unwrap();
        assert_eq!(t.interior_vertices(), &[0]);
        assert_eq!(t.slope_count(0).unwrap(), 5);
        assert!(matches!(t.slope_count(1), Err(MeshError::NotInterior(1))));
        // A square with its centre: two lines through the centre.
        let sq = Triangulation::from_points(
            pts(&[(1, 1), (0, 0), (2, 0), (2, 2), (0, 2)]),
            vec![[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1]],
        )
        .unwrap();
        assert_eq!(sq.slope_count(0).unwrap(), 2);
    }

    #[test]
    fn json_round_trip_emits_reduced_fractions() {
        let text = r#"{"vertices": [["0","0"],["2/4","0"],["0","-3/-1"]], "triangles": [[0,1,2]]}"#;
        let t = parse_triangulation(text).unwrap();
        let doc = t.to_document();
        assert_eq!(doc.vertices[1], ["1/2".to_string(), "0".to_string()]);
        assert_eq!(doc.vertices[2], ["0".to_string(), "3".to_string()]);
        let again = parse_triangulation(&t.to_json()).unwrap();
        assert_eq!(again.vertices(), t.vertices());
    }

    #[test]
    fn segment_helpers() {
        let a = Point2::from_ints(0, 0);
        let b = Point2::from_ints(2, 0);
        assert!(strictly_between(&Point2::from_ints(1, 0), &a, &b));
        assert!(!strictly_between(&b, &a, &b));
        assert!(!strictly_between(&Point2::from_ints(3, 0), &a, &b));
        let x =
            line_intersection(&a, &Point2::from_ints(2, 2), &b, &Point2::from_ints(0, 2)).unwrap();
        assert_eq!(x, Point2::from_ints(1, 1));
        assert!(
            line_intersection(&a, &b, &Point2::from_ints(0, 1), &Point2::from_ints(1, 1)).is_none()
        );
    }
}
