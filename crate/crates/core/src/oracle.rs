//! Exact dimension of `C^r_k` from the smoothness conditions themselves.
//!
//! Each triangle carries an unknown polynomial of degree at most `k`,
//! written in monomials centred at the triangle's first vertex. Across an
//! interior edge with form `l`, the two polynomials join with `C^r`
//! smoothness exactly when their difference is divisible by `l^{r+1}`.
//! Rewriting the difference in coordinates `(u, v) = (l, m)`, with `m`
//! measuring distance along the edge, divisibility becomes the vanishing of
//! every coefficient of `u^i v^j` with `i <= r`. The dimension of the spline
//! space is the nullity of the resulting system, computed exactly.
//!
//! The same machinery gives Hilbert functions of ideals generated by powers
//! of linear forms through one point, which cross-check the closed-form
//! per-vertex dimensions used by the bounds.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::bounds::{binom2, lower_bound_hom, SplineSpace};
use crate::linalg::{EchelonBasis, RationalRow};
use crate::mesh::{Point2, SlopeKey, Triangulation};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("edge {0} is not an interior edge")]
    NotInterior(usize),
    #[error("slope {0} is listed more than once")]
    DuplicateSlope(SlopeKey),
    #[error("fat point needs at least one slope")]
    NoSlopes,
    #[error("internal inconsistency: exact dimension {dimension} is below the lower bound {lower_bound} (r = {r}, k = {k})")]
    BelowLowerBound {
        dimension: i64,
        lower_bound: i64,
        r: u32,
        k: u32,
    },
}

/// Monomials `x^a y^b` with `a + b <= k` in graded lexicographic order:
/// by total degree, then by decreasing power of `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyBasisIndex {
    degree: u32,
}

impl PolyBasisIndex {
    pub fn new(degree: u32) -> Self {
        Self { degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        binom2(self.degree as i64 + 2) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, a: u32, b: u32) -> usize {
        debug_assert!(a + b <= self.degree);
        let d = (a + b) as usize;
        d * (d + 1) / 2 + b as usize
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u32, u32)> {
        (0..=self.degree).flat_map(|d| (0..=d).map(move |b| (d - b, b)))
    }
}

/// Where a smoothness row came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowOrigin {
    pub edge: usize,
    /// Power of `l` whose coefficient the row kills (`0..=r`).
    pub normal_order: u32,
    /// Power of the along-edge coordinate.
    pub tangent_order: u32,
}

/// Linear conditions on the stacked per-triangle coefficient vectors.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub columns: usize,
    pub rows: Vec<RationalRow>,
    pub origins: Vec<RowOrigin>,
}

impl ConstraintSystem {
    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new();
        for row in &self.rows {
            basis.insert(row);
        }
        basis.rank()
    }

    pub fn nullity(&self) -> usize {
        self.columns - self.rank()
    }

    /// Same system with rows shuffled and columns renumbered at random.
    pub fn shuffled<R: Rng>(&self, rng: &mut R) -> Self {
        let mut col_perm: Vec<usize> = (0..self.columns).collect();
        col_perm.shuffle(rng);
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.shuffle(rng);
        let rows = order
            .iter()
            .map(|&i| {
                let mut row: RationalRow = self.rows[i]
                    .iter()
                    .map(|(c, v)| (col_perm[*c], v.clone()))
                    .collect();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        let origins = order.iter().map(|&i| self.origins[i]).collect();
        Self {
            columns: self.columns,
            rows,
            origins,
        }
    }
}

/// Polynomial in `(u, v)` truncated to `u`-degree at most `max_u`; entry
/// `[i][j]` is the coefficient of `u^i v^j`.
#[derive(Clone)]
struct Truncated {
    coeffs: Vec<Vec<Rational>>,
}

impl Truncated {
    fn one(max_u: u32, degree: u32) -> Self {
        let mut coeffs: Vec<Vec<Rational>> = (0..=max_u)
            .map(|_| vec![Rational::zero(); degree as usize + 1])
            .collect();
        coeffs[0][0] = Rational::from_integer(BigInt::from(1));
        Self { coeffs }
    }

    /// Multiplies by `c0 + cu u + cv v`.
    #[allow(clippy::needless_range_loop)]
    fn times_linear(&self, c0: &Rational, cu: &Rational, cv: &Rational) -> Self {
        let rows = self.coeffs.len();
        let cols = self.coeffs[0].len();
        let mut out = vec![vec![Rational::zero(); cols]; rows];
        for i in 0..rows {
            for j in 0..cols {
                let mut acc = Rational::zero();
                let here = &self.coeffs[i][j];
                if !here.is_zero() && !c0.is_zero() {
                    acc += c0 * here;
                }
                if i > 0 && !cu.is_zero() && !self.coeffs[i - 1][j].is_zero() {
                    acc += cu * &self.coeffs[i - 1][j];
                }
                if j > 0 && !cv.is_zero() && !self.coeffs[i][j - 1].is_zero() {
                    acc += cv * &self.coeffs[i][j - 1];
                }
                out[i][j] = acc;
            }
        }
        Self { coeffs: out }
    }
}

/// Affine substitution `x = x0 + xu u + xv v`, `y = y0 + yu u + yv v`
/// expressing plane coordinates in the frame of an edge.
struct EdgeFrame {
    x: [Rational; 3],
    y: [Rational; 3],
}

impl EdgeFrame {
    fn new(tri: &Triangulation, edge: usize) -> Self {
        let e = tri.edge(edge);
        let p = tri.vertex(e.ends[0]);
        let q = tri.vertex(e.ends[1]);
        let form = &e.form;
        let (dx, dy) = (&q.x - &p.x, &q.y - &p.y);
        // u = A x + B y + C, v = dx (x - px) + dy (y - py).
        let s = &dx * &p.x + &dy * &p.y;
        let det = &form.a * &dy - &form.b * &dx;
        let x = [
            (-(&dy * &form.c) - &form.b * &s) / &det,
            &dy / &det,
            -(&form.b) / &det,
        ];
        let y = [
            (&form.a * &s + &dx * &form.c) / &det,
            -(&dx) / &det,
            &form.a / &det,
        ];
        Self { x, y }
    }

    /// Coefficients of `u^i v^j` (`i <= r`) of every monomial
    /// `(x - o.x)^a (y - o.y)^b`, indexed like [`PolyBasisIndex`].
    fn monomial_images(&self, origin: &Point2, r: u32, k: u32) -> Vec<Truncated> {
        let basis = PolyBasisIndex::new(k);
        let x0 = &self.x[0] - &origin.x;
        let y0 = &self.y[0] - &origin.y;
        let mut images: Vec<Option<Truncated>> = vec![None; basis.len()];
        images[0] = Some(Truncated::one(r, k));
        for (a, b) in basis.exponents().skip(1) {
            let image = if b > 0 {
                images[basis.index(a, b - 1)]
                    .as_ref()
                    .expect("graded order visits lower degrees first")
                    .times_linear(&y0, &self.y[1], &self.y[2])
            } else {
                images[basis.index(a - 1, 0)]
                    .as_ref()
                    .expect("graded order visits lower degrees first")
                    .times_linear(&x0, &self.x[1], &self.x[2])
            };
            images[basis.index(a, b)] = Some(image);
        }
        images.into_iter().map(|t| t.expect("filled")).collect()
    }
}

/// Triangle blocks in breadth-first order over edge adjacency, which keeps
/// elimination fill-in local.
fn block_order(tri: &Triangulation) -> Vec<usize> {
    let n = tri.triangles().len();
    let mut block = vec![usize::MAX; n];
    let mut next = 0;
    let mut queue = VecDeque::from([0]);
    block[0] = 0;
    next += 1;
    while let Some(t) = queue.pop_front() {
        let [a, b, c] = tri.triangles()[t];
        for (p, q) in [(a, b), (b, c), (c, a)] {
            let e = tri.edge_between(p, q).expect("triangle edge");
            for &u in &tri.edge(e).triangles {
                if block[u] == usize::MAX {
                    block[u] = next;
                    next += 1;
                    queue.push_back(u);
                }
            }
        }
    }
    block
}

fn local_origin(tri: &Triangulation, triangle: usize) -> &Point2 {
    tri.vertex(tri.triangles()[triangle][0])
}

fn smoothness_rows_with_blocks(
    tri: &Triangulation,
    edge: usize,
    space: SplineSpace,
    blocks: &[usize],
) -> Result<Vec<(RowOrigin, RationalRow)>, OracleError> {
    let e = tri.edge(edge);
    if !e.is_interior() {
        return Err(OracleError::NotInterior(edge));
    }
    let (r, k) = (space.r(), space.k());
    let basis = PolyBasisIndex::new(k);
    let width = basis.len();
    let frame = EdgeFrame::new(tri, edge);
    let (s1, s2) = (e.triangles[0], e.triangles[1]);
    let first = frame.monomial_images(local_origin(tri, s1), r, k);
    let second = frame.monomial_images(local_origin(tri, s2), r, k);

    let mut rows = Vec::new();
    for i in 0..=r {
        for j in 0..=(k - i) {
            let mut row: RationalRow = Vec::new();
            for (block, images, sign) in [(blocks[s1], &first, false), (blocks[s2], &second, true)]
            {
                for (col, image) in images.iter().enumerate() {
                    let c = &image.coeffs[i as usize][j as usize];
                    if !c.is_zero() {
                        row.push((
                            block * width + col,
                            if sign { -c.clone() } else { c.clone() },
                        ));
                    }
                }
            }
            row.sort_by_key(|(c, _)| *c);
            rows.push((
                RowOrigin {
                    edge,
                    normal_order: i,
                    tangent_order: j,
                },
                row,
            ));
        }
    }
    Ok(rows)
}

/// Rows stating that the polynomials on both sides of interior edge `edge`
/// join with `C^r` smoothness. Columns are ordered by triangle index, one
/// block of `C(k+2, 2)` coefficients per triangle.
pub fn edge_smoothness_rows(
    tri: &Triangulation,
    edge: usize,
    space: SplineSpace,
) -> Result<Vec<(RowOrigin, RationalRow)>, OracleError> {
    let identity: Vec<usize> = (0..tri.triangles().len()).collect();
    smoothness_rows_with_blocks(tri, edge, space, &identity)
}

/// Every smoothness condition of `C^r_k` on `tri`.
pub fn assemble_constraints(tri: &Triangulation, space: SplineSpace) -> ConstraintSystem {
    let blocks = block_order(tri);
    let width = PolyBasisIndex::new(space.k()).len();
    let mut edges: Vec<usize> = tri.interior_edges().map(|(id, _)| id).collect();
    edges.sort_by_key(|&id| {
        let ts = &tri.edge(id).triangles;
        (
            blocks[ts[0]].min(blocks[ts[1]]),
            blocks[ts[0]].max(blocks[ts[1]]),
        )
    });
    let mut rows = Vec::new();
    let mut origins = Vec::new();
    for edge in edges {
        for (origin, row) in
            smoothness_rows_with_blocks(tri, edge, space, &blocks).expect("interior edges only")
        {
            origins.push(origin);
            rows.push(row);
        }
    }
    ConstraintSystem {
        columns: tri.triangles().len() * width,
        rows,
        origins,
    }
}

/// Exact `dim C^r_k` on `tri`.
pub fn spline_dimension(tri: &Triangulation, space: SplineSpace) -> usize {
    assemble_constraints(tri, space).nullity()
}

/// `dim C^r_k - LBH`, the degree-`k` part of the homology correction.
pub fn homology_defect(tri: &Triangulation, space: SplineSpace) -> Result<u64, OracleError> {
    let dimension = spline_dimension(tri, space) as i64;
    defect_from(tri, space, dimension)
}

pub(crate) fn defect_from(
    tri: &Triangulation,
    space: SplineSpace,
    dimension: i64,
) -> Result<u64, OracleError> {
    let lower_bound = lower_bound_hom(tri, space);
    if dimension < lower_bound {
        return Err(OracleError::BelowLowerBound {
            dimension,
            lower_bound,
            r: space.r(),
            k: space.k(),
        });
    }
    Ok((dimension - lower_bound) as u64)
}

fn trivariate_index(a: u32, b: u32) -> usize {
    // Monomials x^a y^b z^(k-a-b) ordered by (a + b), then b.
    let d = (a + b) as usize;
    d * (d + 1) / 2 + b as usize
}

fn binomial(n: u32, i: u32) -> BigInt {
    (0..i).fold(BigInt::from(1), |acc, j| acc * (n - j) / (j + 1))
}

/// `dim (Q[x, y, z] / <l_1^{r+1}, ..., l_t^{r+1}>)_k` for the lines through
/// the origin with the given distinct slopes, by exact rank of the degree-`k`
/// multiples of the generators.
pub fn fatpoint_quotient_dim(slopes: &[SlopeKey], r: u32, k: u32) -> Result<usize, OracleError> {
    if slopes.is_empty() {
        return Err(OracleError::NoSlopes);
    }
    for (i, s) in slopes.iter().enumerate() {
        if slopes[..i].contains(s) {
            return Err(OracleError::DuplicateSlope(s.clone()));
        }
    }
    let total = binom2(k as i64 + 2) as usize;
    if k < r + 1 {
        return Ok(total);
    }
    let power = r + 1;
    let shift = k - power;
    let mut basis = EchelonBasis::new();
    for slope in slopes {
        let (a, b) = slope.normal();
        // l^{r+1} = sum_i C(r+1, i) a^i b^{r+1-i} x^i y^{r+1-i}
        let expansion: Vec<(u32, Rational)> = (0..=power)
            .map(|i| {
                let coeff = Rational::from_integer(binomial(power, i))
                    * num_traits::pow(a.clone(), i as usize)
                    * num_traits::pow(b.clone(), (power - i) as usize);
                (i, coeff)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for d in 0..=shift {
            for mb in 0..=d {
                let ma = d - mb;
                let mut row: RationalRow = expansion
                    .iter()
                    .map(|(i, c)| {
                        let xa = ma + i;
                        let yb = mb + (power - i);
                        (trivariate_index(xa, yb), c.clone())
                    })
                    .collect();
                row.sort_by_key(|(c, _)| *c);
                basis.insert(&row);
            }
        }
    }
    Ok(total - basis.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{vertex_module_dim, SplineSpace};
    use crate::fixtures;
    use crate::linalg::dense_rank;
    use crate::rational::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn space(r: u32, k: u32) -> SplineSpace {
        SplineSpace::new(r, k).unwrap()
    }

    #[test]
    fn basis_indexing() {
        let b = PolyBasisIndex::new(3);
        assert_eq!(b.len(), 10);
        let all: Vec<_> = b.exponents().collect();
        assert_eq!(all.len(), 10);
        for (i, (a, e)) in all.iter().enumerate() {
            assert_eq!(b.index(*a, *e), i);
        }
        assert_eq!(all[..4], [(0, 0), (1, 0), (0, 1), (2, 0)]);
    }

    #[test]
    fn row_counts() {
        let two = fixtures::two_triangles();
        let edge = two.interior_edges().next().unwrap().0;
        assert_eq!(
            edge_smoothness_rows(&two, edge, space(0, 1)).unwrap().len(),
            2
        );
        assert_eq!(
            edge_smoothness_rows(&two, edge, space(1, 2)).unwrap().len(),
            5
        );
        let rows = edge_smoothness_rows(&two, edge, space(3, 3)).unwrap();
        assert_eq!(rows.len(), 10);
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|(_, row)| {
                let mut d = vec![Rational::zero(); 20];
                for (c, v) in row {
                    d[*c] = v.clone();
                }
                d
            })
            .collect();
        assert_eq!(dense_rank(dense), 10);
        let boundary = two.edges().iter().position(|e| !e.is_interior()).unwrap();
        assert_eq!(
            edge_smoothness_rows(&two, boundary, space(1, 2)).unwrap_err(),
            OracleError::NotInterior(boundary)
        );
    }

    #[test]
    fn every_row_touches_two_blocks() {
        let tri = fixtures::ps12_single();
        let sys = assemble_constraints(&tri, space(1, 3));
        let width = 10;
        assert_eq!(sys.columns, 12 * width);
        for row in &sys.rows {
            let mut blocks: Vec<usize> = row.iter().map(|(c, _)| c / width).collect();
            blocks.dedup();
            assert_eq!(blocks.len(), 2);
        }
    }

    #[test]
    fn small_dimensions() {
        let two = fixtures::two_triangles();
        assert_eq!(spline_dimension(&two, space(1, 2)), 7);
        let single = fixtures::single_triangle();
        for k in 0..5 {
            for r in 0..=k {
                assert_eq!(
                    spline_dimension(&single, space(r, k)),
                    binom2(k as i64 + 2) as usize
                );
            }
        }
        assert_eq!(spline_dimension(&fixtures::ps12_single(), space(1, 2)), 12);
    }

    #[test]
    fn morgan_scott_geometry_dependence() {
        let sym = fixtures::morgan_scott(true);
        let gen = fixtures::morgan_scott(false);
        assert_eq!(spline_dimension(&sym, space(1, 2)), 7);
        assert_eq!(spline_dimension(&gen, space(1, 2)), 6);
        assert_eq!(homology_defect(&sym, space(1, 2)).unwrap(), 1);
        assert_eq!(homology_defect(&gen, space(1, 2)).unwrap(), 0);
    }

    #[test]
    fn ps12_has_no_homology_defect() {
        let tri = fixtures::ps12_single();
        for k in 1..=6 {
            assert_eq!(homology_defect(&tri, space(1, k)).unwrap(), 0, "k = {k}");
        }
    }

    #[test]
    fn shuffled_assembly_keeps_nullity() {
        let tri = fixtures::morgan_scott(true);
        let sys = assemble_constraints(&tri, space(1, 3));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert_eq!(sys.shuffled(&mut rng).nullity(), sys.nullity());
    }

    #[test]
    fn fatpoint_examples() {
        let slope = |a: i64, b: i64| SlopeKey::from_normal(&int(a), &int(b));
        let x = slope(1, 0);
        let y = slope(0, 1);
        let d = slope(1, 1);
        for r in 0..3 {
            for k in 0..7 {
                let principal = binom2(k as i64 + 2) - binom2(k as i64 + 1 - r as i64);
                assert_eq!(
                    fatpoint_quotient_dim(std::slice::from_ref(&x), r, k).unwrap() as i64,
                    principal
                );
            }
        }
        assert_eq!(
            fatpoint_quotient_dim(&[x.clone(), y.clone()], 1, 2).unwrap(),
            4
        );
        assert_eq!(vertex_module_dim(2, 1, 2), 4);
        assert_eq!(
            fatpoint_quotient_dim(&[x.clone(), y.clone(), d.clone()], 1, 2).unwrap(),
            3
        );
        assert_eq!(vertex_module_dim(3, 1, 2), 3);
        assert_eq!(
            fatpoint_quotient_dim(&[x.clone(), x.clone()], 1, 2).unwrap_err(),
            OracleError::DuplicateSlope(x)
        );
        assert_eq!(
            fatpoint_quotient_dim(&[], 1, 2).unwrap_err(),
            OracleError::NoSlopes
        );
    }
}
