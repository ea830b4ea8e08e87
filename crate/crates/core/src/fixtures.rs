//! Small named triangulations used by tests, benchmarks and the CLI.

use crate::mesh::{Point2, Triangulation};
use crate::rational::{frac, int};
use crate::refine;

fn build(coords: &[(i64, i64)], triangles: Vec<[usize; 3]>) -> Triangulation {
    let points = coords
        .iter()
        .map(|&(x, y)| Point2::from_ints(x, y))
        .collect();
    Triangulation::from_points(points, triangles).expect("fixture is a valid disk")
}

/// `(0,0), (1,0), (0,1)`.
pub fn single_triangle() -> Triangulation {
    build(&[(0, 0), (1, 0), (0, 1)], vec![[0, 1, 2]])
}

/// Two triangles on the edge `(0,0)-(1,0)`, apexes `(0,1)` and `(0,-1)`.
pub fn two_triangles() -> Triangulation {
    build(
        &[(0, 0), (1, 0), (0, 1), (0, -1)],
        vec![[0, 1, 2], [0, 1, 3]],
    )
}

/// Unit square split along its diagonal.
pub fn unit_square() -> Triangulation {
    build(
        &[(0, 0), (1, 0), (1, 1), (0, 1)],
        vec![[0, 1, 2], [0, 2, 3]],
    )
}

/// Square with its centre joined to the four corners; the centre (vertex 0)
/// is the only interior vertex and its spokes lie on two lines.
pub fn square_fan() -> Triangulation {
    build(
        &[(1, 1), (0, 0), (2, 0), (2, 2), (0, 2)],
        vec![[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1]],
    )
}

/// One interior vertex (index 0) surrounded by `n >= 3` triangles whose
/// spokes all have distinct slopes.
pub fn fan(n: usize) -> Triangulation {
    assert!(n >= 3, "a fan needs at least three triangles");
    let mut coords = vec![(0, 0)];
    for i in 0..n {
        // Alternating radii keep opposite spokes off a common line.
        let angle = 0.37 + std::f64::consts::TAU * i as f64 / n as f64;
        let radius = 50.0 + 7.0 * i as f64;
        coords.push((
            (radius * angle.cos()).round() as i64,
            (radius * angle.sin()).round() as i64,
        ));
    }
    let triangles = (0..n).map(|i| [0, 1 + i, 1 + (i + 1) % n]).collect();
    build(&coords, triangles)
}

/// `nx` by `ny` lattice of unit squares' corners, each square cut by its
/// rising diagonal.
pub fn grid(nx: usize, ny: usize) -> Triangulation {
    assert!(nx >= 2 && ny >= 2);
    let id = |i: usize, j: usize| j * nx + i;
    let mut coords = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            coords.push((i as i64, j as i64));
        }
    }
    let mut triangles = Vec::new();
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            triangles.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            triangles.push([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    build(&coords, triangles)
}

/// Triangle-in-a-triangle with seven triangles. The symmetric instance
/// takes the inner triangle as the image of the outer one under the
/// homothety of ratio `-1/4` about the common centroid, so each inner vertex
/// faces an outer edge; the generic instance moves inner vertex 3 by
/// `(1/97, 1/89)`.
pub fn morgan_scott(symmetric: bool) -> Triangulation {
    let mut points: Vec<Point2> = [(0, 0), (12, 0), (0, 12), (5, 5), (2, 5), (5, 2)]
        .iter()
        .map(|&(x, y)| Point2::from_ints(x, y))
        .collect();
    if !symmetric {
        points[3] = Point2::new(int(5) + frac(1, 97), int(5) + frac(1, 89));
    }
    // Outer 0, 1, 2; inner vertex 3 + i sits opposite outer vertex i.
    let triangles = vec![
        [1, 2, 3],
        [2, 0, 4],
        [0, 1, 5],
        [0, 5, 4],
        [1, 3, 5],
        [2, 4, 3],
        [3, 5, 4],
    ];
    Triangulation::from_points(points, triangles).expect("fixture is a valid disk")
}

/// Twelve-split of the triangle `(0,0), (6,0), (3,6)`.
pub fn ps12_single() -> Triangulation {
    ps12_single_named().2
}

/// Twelve-split of `(0,0), (6,0), (3,6)` with the centroid and the three
/// medial-edge midpoints (listed by the corner whose median they lie on).
pub fn ps12_single_named() -> (usize, [usize; 3], Triangulation) {
    let parent = build(&[(0, 0), (6, 0), (3, 6)], vec![[0, 1, 2]]);
    let record = refine::ps12_split(&parent);
    let centroid = record.split_points[0];
    let medial = record.medial_points[0];
    (centroid, medial, record.child)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        for tri in [
            single_triangle(),
            two_triangles(),
            unit_square(),
            square_fan(),
            grid(3, 3),
            grid(5, 4),
            morgan_scott(true),
            morgan_scott(false),
            ps12_single(),
        ] {
            assert!(tri.validate().is_valid());
        }
    }

    #[test]
    fn fans_have_distinct_spokes() {
        for n in 3..=8 {
            let f = fan(n);
            assert_eq!(f.interior_vertices(), &[0]);
            assert_eq!(f.slope_count(0).unwrap(), n as u32, "n = {n}");
        }
    }

    #[test]
    fn morgan_scott_counts() {
        let ms = morgan_scott(true);
        let f = ms.f_vector();
        assert_eq!(
            (f.f0, f.f1, f.f2, f.f0_interior, f.f1_interior),
            (6, 12, 7, 3, 9)
        );
        for &v in ms.interior_vertices() {
            assert_eq!(ms.slope_count(v).unwrap(), 4);
        }
    }
}
