//! Seeded random triangulated disks with small integer coordinates.
//!
//! A convex hull of random lattice points is fan-triangulated, random lattice
//! points are inserted by splitting the triangle that strictly contains them,
//! and random edges are flipped inside convex quadrilaterals. Small
//! coordinate ranges make collinear spokes common, so slope counts often
//! fall below vertex degrees.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::mesh::{Point2, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomMeshConfig {
    /// Coordinates are drawn from `-coordinate_range..=coordinate_range`.
    pub coordinate_range: i64,
    /// Points sampled for the convex hull.
    pub hull_samples: usize,
    pub interior_vertices: RangeInclusive<usize>,
    /// Flip attempts after all insertions.
    pub flips: usize,
}

impl Default for RandomMeshConfig {
    fn default() -> Self {
        Self {
            coordinate_range: 8,
            hull_samples: 7,
            interior_vertices: 1..=10,
            flips: 12,
        }
    }
}

type P = (i64, i64);

fn cross(o: P, a: P, b: P) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Strictly convex hull, counter-clockwise.
fn convex_hull(mut points: Vec<P>) -> Vec<P> {
    points.sort_unstable();
    points.dedup();
    if points.len() < 3 {
        return points;
    }
    let mut hull: Vec<P> = Vec::with_capacity(2 * points.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &P>> = if pass == 0 {
            Box::new(points.iter())
        } else {
            Box::new(points.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

struct Builder {
    points: Vec<P>,
    triangles: Vec<[usize; 3]>,
}

impl Builder {
    fn ccw(&self, t: [usize; 3]) -> [usize; 3] {
        let [a, b, c] = t;
        if cross(self.points[a], self.points[b], self.points[c]) > 0 {
            t
        } else {
            [a, c, b]
        }
    }

    /// Inserts `p` if it lies strictly inside some triangle.
    fn insert(&mut self, p: P) -> bool {
        if self.points.contains(&p) {
            return false;
        }
        let hit = self.triangles.iter().position(|&[a, b, c]| {
            let (pa, pb, pc) = (self.points[a], self.points[b], self.points[c]);
            cross(pa, pb, p) > 0 && cross(pb, pc, p) > 0 && cross(pc, pa, p) > 0
        });
        let Some(t) = hit else { return false };
        let [a, b, c] = self.triangles[t];
        self.points.push(p);
        let v = self.points.len() - 1;
        self.triangles[t] = [a, b, v];
        self.triangles.push([b, c, v]);
        self.triangles.push([c, a, v]);
        true
    }

    /// Flips the diagonal shared by triangles `s` and `t` when their union
    /// is a strictly convex quadrilateral.
    fn try_flip(&mut self, s: usize, t: usize) -> bool {
        let ts = self.triangles[s];
        let tt = self.triangles[t];
        let shared: Vec<usize> = ts.iter().copied().filter(|v| tt.contains(v)).collect();
        if shared.len() != 2 {
            return false;
        }
        let c = *ts
            .iter()
            .find(|v| !shared.contains(v))
            .expect("third corner");
        let d = *tt
            .iter()
            .find(|v| !shared.contains(v))
            .expect("third corner");
        let (a, b) = (shared[0], shared[1]);
        let [pa, pb, pc, pd] = [a, b, c, d].map(|i| self.points[i]);
        let convex = cross(pc, pd, pa).signum() * cross(pc, pd, pb).signum() < 0
            && cross(pa, pb, pc).signum() * cross(pa, pb, pd).signum() < 0;
        if !convex {
            return false;
        }
        self.triangles[s] = self.ccw([c, d, a]);
        self.triangles[t] = self.ccw([d, c, b]);
        true
    }

    fn interior_edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut owner = std::collections::HashMap::new();
        let mut pairs = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for i in 0..3 {
                let (p, q) = (tri[i], tri[(i + 1) % 3]);
                let key = (p.min(q), p.max(q));
                if let Some(s) = owner.insert(key, t) {
                    pairs.push((s, t));
                }
            }
        }
        pairs.sort_unstable();
        pairs
    }
}

/// One random disk drawn with `rng`.
pub fn random_mesh<R: Rng>(rng: &mut R, config: &RandomMeshConfig) -> Triangulation {
    let range = config.coordinate_range;
    let hull = loop {
        let samples = (0..config.hull_samples.max(3))
            .map(|_| (rng.gen_range(-range..=range), rng.gen_range(-range..=range)))
            .collect();
        let hull = convex_hull(samples);
        if hull.len() >= 3 {
            break hull;
        }
    };
    let n = hull.len();
    let mut builder = Builder {
        points: hull,
        triangles: (1..n - 1).map(|i| [0, i, i + 1]).collect(),
    };

    let target = rng.gen_range(config.interior_vertices.clone());
    let mut inserted = 0;
    let mut attempts = 0;
    while inserted < target && attempts < 10_000 {
        attempts += 1;
        let p = (rng.gen_range(-range..=range), rng.gen_range(-range..=range));
        if builder.insert(p) {
            inserted += 1;
        }
    }

    for _ in 0..config.flips {
        let pairs = builder.interior_edge_pairs();
        if pairs.is_empty() {
            break;
        }
        let (s, t) = pairs[rng.gen_range(0..pairs.len())];
        builder.try_flip(s, t);
    }

    let points = builder
        .points
        .iter()
        .map(|&(x, y)| Point2::from_ints(x, y))
        .collect();
    Triangulation::from_points(points, builder.triangles).expect("generator produces valid disks")
}

/// `count` meshes; mesh `i` is drawn from a generator seeded with `seed + i`.
pub fn random_corpus(seed: u64, count: usize, config: &RandomMeshConfig) -> Vec<Triangulation> {
    (0..count as u64)
        .map(|i| random_mesh(&mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(i)), config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_drops_collinear_points() {
        let hull = convex_hull(vec![(0, 0), (2, 0), (1, 0), (2, 2), (0, 2), (1, 1)]);
        assert_eq!(hull, vec![(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(convex_hull(vec![(0, 0), (1, 1), (2, 2)]).len(), 2);
    }

    #[test]
    fn corpus_is_valid_and_reproducible() {
        let config = RandomMeshConfig::default();
        let corpus = random_corpus(11, 40, &config);
        for mesh in &corpus {
            let f = mesh.f_vector();
            assert!(mesh.validate().is_valid());
            assert!(f.f0_interior <= 10);
            assert!(f.f2 <= 40);
            assert_eq!(f.f2, f.f0_boundary - 2 + 2 * f.f0_interior);
        }
        assert!(corpus
            .iter()
            .any(|m| m
                .interior_vertices()
                .iter()
                .any(|&v| (m.slope_count(v).unwrap() as usize) < m.vertex_edges(v).len())));
        let again = random_corpus(11, 40, &config);
        for (a, b) in corpus.iter().zip(&again) {
            assert_eq!(a.to_json(), b.to_json());
        }
    }
}
