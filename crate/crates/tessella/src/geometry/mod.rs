//! Exact construction of the three-hexagon patch, its kite decomposition,
//! and the selections forming the hat polykite and the large kite.
//!
//! Embedding (documented in docs/GEOMETRY.md): hexagons have side 2, so a
//! half-side is 1 and the apothem is sqrt(3). H1 is centred at the origin,
//! pointy-top; H2 and H3 sit at `(-sqrt3, 3)` and `(sqrt3, 3)` — neighbour
//! translations of length `2*sqrt3` rotated 60 degrees apart — so all three
//! share the vertex `(0, 2)`.

mod boundary;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{dir30, Point, Rat, Sqrt3};

pub use boundary::{boundary_of, classify_edges, polygon_area, BoundaryPolygon, SegmentKind};

/// Identifier of a hexagon within the three-hexagon patch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HexId {
    H1,
    H2,
    H3,
}

impl fmt::Display for HexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HexId::H1 => write!(f, "H1"),
            HexId::H2 => write!(f, "H2"),
            HexId::H3 => write!(f, "H3"),
        }
    }
}

/// A regular hexagon of side 2 with exact vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hexagon {
    pub id: HexId,
    pub center: Point,
    /// Orientation in multiples of 30 degrees, 0..12. 0 is pointy-top.
    pub orientation: u8,
    vertices: [Point; 6],
}

impl Hexagon {
    pub fn vertices(&self) -> &[Point; 6] {
        &self.vertices
    }

    /// Midpoint of side `i` (between vertices `i` and `i+1`).
    pub fn side_midpoint(&self, i: usize) -> Point {
        Point::midpoint(self.vertices[i % 6], self.vertices[(i + 1) % 6])
    }

    pub fn boundary(&self) -> BoundaryPolygon {
        BoundaryPolygon::new(self.vertices.to_vec()).expect("hexagon is simple")
    }
}

/// Builds a hexagon whose six vertices sit at distance 2 from `center`,
/// starting at `90 + orientation_degrees` and stepping 60 degrees
/// counterclockwise. The orientation must be a multiple of 30 degrees.
pub fn build_hexagon(id: HexId, center: Point, orientation_degrees: i32) -> Result<Hexagon> {
    if orientation_degrees % 30 != 0 {
        return Err(Error::domain(format!(
            "orientation {orientation_degrees} is not a multiple of 30 degrees"
        )));
    }
    let k = (orientation_degrees / 30).rem_euclid(12) as u8;
    let two = Rat::from_integer(2);
    let mut vertices = [Point::origin(); 6];
    for (i, v) in vertices.iter_mut().enumerate() {
        // Vertex angles: 90 + 30k + 60i degrees.
        *v = center + dir30(3 + k as i32 + 2 * i as i32) * two;
    }
    Ok(Hexagon {
        id,
        center,
        orientation: k,
        vertices,
    })
}

/// One sixth of a hexagon: center, side midpoint, vertex, next side
/// midpoint, in counterclockwise order. Two edges of length 1 (half-sides)
/// and two of length sqrt(3) (apothems).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kite {
    pub parent: HexId,
    /// Index 0..6 within the parent hexagon.
    pub index: u8,
    vertices: [Point; 4],
}

impl Kite {
    pub fn vertices(&self) -> &[Point; 4] {
        &self.vertices
    }

    /// Directed edges in counterclockwise order.
    pub fn edges(&self) -> Vec<(Point, Point)> {
        (0..4)
            .map(|i| (self.vertices[i], self.vertices[(i + 1) % 4]))
            .collect()
    }

    pub fn boundary(&self) -> BoundaryPolygon {
        BoundaryPolygon::new(self.vertices.to_vec()).expect("kite is simple")
    }

    /// Exact area; always sqrt(3).
    pub fn area(&self) -> Sqrt3 {
        polygon_area(&self.boundary()).expect("kite is a valid polygon")
    }
}

/// Splits a hexagon into its six kites. Kite `i` spans from the midpoint of
/// side `i` over vertex `i+1` to the midpoint of side `i+1`.
pub fn kite_decomposition(hex: &Hexagon) -> Vec<Kite> {
    (0..6)
        .map(|i| Kite {
            parent: hex.id,
            index: i as u8,
            vertices: [
                hex.center,
                hex.side_midpoint(i),
                hex.vertices[(i + 1) % 6],
                hex.side_midpoint(i + 1),
            ],
        })
        .collect()
}

/// The canonical three-hexagon patch. All three are pointy-top; they are
/// pairwise edge-adjacent and share the single vertex `(0, 2)`.
pub fn three_hexagon_patch() -> [Hexagon; 3] {
    let r3 = Sqrt3::root3(Rat::from_integer(1));
    let three = Sqrt3::from_int(3);
    let h1 = build_hexagon(HexId::H1, Point::origin(), 0).expect("valid orientation");
    let h2 = build_hexagon(HexId::H2, Point::new(-r3, three), 0).expect("valid orientation");
    let h3 = build_hexagon(HexId::H3, Point::new(r3, three), 0).expect("valid orientation");
    [h1, h2, h3]
}

/// Kite indices forming the hat, frozen from the exhaustive selection
/// search (`hat_selection_is_pinned_by_search` in the tests). Six 4+2+2
/// selections reproduce the thirteen-edge kind cycle; this is the
/// lexicographically first of the two whose large kite lies on the patch
/// mirror axis — the crown of four kites around the shared H2/H3 edge plus
/// a fan of four consecutive H1 kites.
pub const HAT_KITE_INDICES: [(HexId, u8); 8] = [
    (HexId::H1, 0),
    (HexId::H1, 1),
    (HexId::H1, 4),
    (HexId::H1, 5),
    (HexId::H2, 3),
    (HexId::H2, 4),
    (HexId::H3, 0),
    (HexId::H3, 1),
];

/// Kite indices forming the large kite: five of the eight hat kites (the
/// crown plus the north kite of H1), frozen from the same search. It is the
/// unique edge-connected 5-subset of the hat whose boundary has six edges
/// of lattice kinds.
pub const LARGE_KITE_INDICES: [(HexId, u8); 5] = [
    (HexId::H1, 5),
    (HexId::H2, 3),
    (HexId::H2, 4),
    (HexId::H3, 0),
    (HexId::H3, 1),
];

fn kites_by_indices(patch: &[Hexagon; 3], indices: &[(HexId, u8)]) -> Vec<Kite> {
    let decompositions: Vec<Vec<Kite>> = patch.iter().map(kite_decomposition).collect();
    indices
        .iter()
        .map(|&(id, idx)| {
            let hex_pos = patch
                .iter()
                .position(|h| h.id == id)
                .expect("patch contains all three hexagons");
            decompositions[hex_pos][idx as usize].clone()
        })
        .collect()
}

/// The eight kites forming the hat: four from H1 and two each from H2, H3.
pub fn select_hat_kites(patch: &[Hexagon; 3]) -> Vec<Kite> {
    kites_by_indices(patch, &HAT_KITE_INDICES)
}

/// The five hat kites forming the large kite.
pub fn select_large_kite(patch: &[Hexagon; 3]) -> Vec<Kite> {
    kites_by_indices(patch, &LARGE_KITE_INDICES)
}

/// True when the kites form one edge-connected component.
pub fn is_edge_connected(kites: &[Kite]) -> bool {
    if kites.is_empty() {
        return false;
    }
    let edge_sets: Vec<BTreeSet<(Point, Point)>> = kites
        .iter()
        .map(|k| {
            k.edges()
                .into_iter()
                .map(|(p, q)| if p < q { (p, q) } else { (q, p) })
                .collect()
        })
        .collect();
    let mut visited = vec![false; kites.len()];
    let mut stack = vec![0usize];
    visited[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..kites.len() {
            if !visited[j] && !edge_sets[i].is_disjoint(&edge_sets[j]) {
                visited[j] = true;
                stack.push(j);
            }
        }
    }
    visited.into_iter().all(|v| v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Sqrt3 {
        Sqrt3::rational(Rat::new(n, d))
    }

    fn root3(n: i64, d: i64) -> Sqrt3 {
        Sqrt3::root3(Rat::new(n, d))
    }

    fn pt(x: Sqrt3, y: Sqrt3) -> Point {
        Point::new(x, y)
    }

    fn kind_char(k: SegmentKind) -> char {
        match k {
            SegmentKind::HalfSide => 'H',
            SegmentKind::FullSide => 'F',
            SegmentKind::Apothem => 'A',
            SegmentKind::DoubleApothem => 'D',
        }
    }

    fn kind_string(poly: &BoundaryPolygon) -> String {
        classify_edges(poly)
            .unwrap()
            .into_iter()
            .map(kind_char)
            .collect()
    }

    /// True when `seq` equals `pattern` up to rotation or reflection.
    fn cyclic_match(seq: &str, pattern: &str) -> bool {
        if seq.len() != pattern.len() {
            return false;
        }
        let fwd: Vec<char> = seq.chars().collect();
        let rev: Vec<char> = seq.chars().rev().collect();
        let pat: Vec<char> = pattern.chars().collect();
        let n = fwd.len();
        [fwd, rev].iter().any(|s| {
            let doubled: Vec<char> = s.iter().chain(s.iter()).copied().collect();
            (0..n).any(|k| doubled[k..k + n] == pat[..])
        })
    }

    /// The thirteen-row outline kind cycle of the hat walk.
    const HAT_KIND_CYCLE: &str = "HHAAHFHAAHHAA";

    #[test]
    fn hexagon_vertices_and_metrics() {
        let hex = build_hexagon(HexId::H1, Point::origin(), 0).unwrap();
        let verts = hex.vertices();
        assert!(verts.contains(&pt(rat(0, 1), rat(2, 1))));
        assert!(verts.contains(&pt(root3(1, 1), rat(1, 1))));
        for (p, q) in hex.boundary().edges() {
            assert_eq!((q - p).norm_sq(), Sqrt3::from_int(4), "side length 2");
        }
        assert_eq!(
            polygon_area(&hex.boundary()).unwrap(),
            root3(6, 1),
            "area 6*sqrt3"
        );
    }

    #[test]
    fn hexagon_rejects_bad_orientation() {
        assert!(build_hexagon(HexId::H1, Point::origin(), 45).is_err());
        assert!(build_hexagon(HexId::H1, Point::origin(), -60).is_ok());
    }

    #[test]
    fn patch_shares_three_edges_and_one_common_vertex() {
        let patch = three_hexagon_patch();
        let mut shared = 0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let edges_i: BTreeSet<(Point, Point)> = patch[i]
                    .boundary()
                    .edges()
                    .into_iter()
                    .map(|(p, q)| if p < q { (p, q) } else { (q, p) })
                    .collect();
                let edges_j: BTreeSet<(Point, Point)> = patch[j]
                    .boundary()
                    .edges()
                    .into_iter()
                    .map(|(p, q)| if p < q { (p, q) } else { (q, p) })
                    .collect();
                shared += edges_i.intersection(&edges_j).count();
            }
        }
        assert_eq!(shared, 3, "three pairwise shared edges");

        let common = pt(rat(0, 1), rat(2, 1));
        for hex in &patch {
            assert!(hex.vertices().contains(&common), "{} misses (0,2)", hex.id);
        }

        let total: Sqrt3 = patch
            .iter()
            .map(|h| polygon_area(&h.boundary()).unwrap())
            .fold(Sqrt3::zero(), |acc, a| acc + a);
        assert_eq!(total, root3(18, 1), "union area 18*sqrt3");
    }

    #[test]
    fn kite_decomposition_partitions_the_hexagon() {
        let hex = build_hexagon(HexId::H2, pt(rat(5, 1), rat(-3, 1)), 30).unwrap();
        let kites = kite_decomposition(&hex);
        assert_eq!(kites.len(), 6);
        let mut total = Sqrt3::zero();
        for kite in &kites {
            assert_eq!(kite.area(), root3(1, 1), "kite area sqrt3");
            total += kite.area();
            let kinds = classify_edges(&kite.boundary()).unwrap();
            let halves = kinds.iter().filter(|&&k| k == SegmentKind::HalfSide).count();
            let apothems = kinds.iter().filter(|&&k| k == SegmentKind::Apothem).count();
            assert_eq!((halves, apothems), (2, 2));
        }
        assert_eq!(total, polygon_area(&hex.boundary()).unwrap());
    }

    #[test]
    fn patch_has_eighteen_kites() {
        let patch = three_hexagon_patch();
        let count: usize = patch.iter().map(|h| kite_decomposition(h).len()).sum();
        assert_eq!(count, 18);
    }

    #[test]
    fn hat_selection_counts_and_connectivity() {
        let patch = three_hexagon_patch();
        let kites = select_hat_kites(&patch);
        assert_eq!(kites.len(), 8);
        let count = |id: HexId| kites.iter().filter(|k| k.parent == id).count();
        assert_eq!(
            (count(HexId::H1), count(HexId::H2), count(HexId::H3)),
            (4, 2, 2)
        );
        assert!(is_edge_connected(&kites));
    }

    #[test]
    fn hat_boundary_has_thirteen_classified_edges() {
        let patch = three_hexagon_patch();
        let hat = boundary_of(&select_hat_kites(&patch)).unwrap();
        assert_eq!(hat.edge_count(), 13);
        assert_eq!(hat.edge_vector_sum(), Point::origin());
        assert_eq!(polygon_area(&hat).unwrap(), root3(8, 1));

        let kinds = classify_edges(&hat).unwrap();
        let tally = |k: SegmentKind| kinds.iter().filter(|&&x| x == k).count();
        assert_eq!(tally(SegmentKind::HalfSide), 6);
        assert_eq!(tally(SegmentKind::FullSide), 1);
        assert_eq!(tally(SegmentKind::Apothem), 6);
        assert_eq!(tally(SegmentKind::DoubleApothem), 0);
        assert!(cyclic_match(&kind_string(&hat), HAT_KIND_CYCLE));
    }

    #[test]
    fn large_kite_boundary() {
        let patch = three_hexagon_patch();
        let kites = select_large_kite(&patch);
        assert_eq!(kites.len(), 5);
        for k in &kites {
            assert!(
                HAT_KITE_INDICES.contains(&(k.parent, k.index)),
                "large kite must reuse hat kites"
            );
        }
        let poly = boundary_of(&kites).unwrap();
        assert_eq!(poly.edge_count(), 6);
        assert_eq!(polygon_area(&poly).unwrap(), root3(5, 1));

        let kinds = classify_edges(&poly).unwrap();
        let tally = |k: SegmentKind| kinds.iter().filter(|&&x| x == k).count();
        assert_eq!(tally(SegmentKind::HalfSide), 2);
        assert_eq!(tally(SegmentKind::Apothem), 2);
        assert_eq!(tally(SegmentKind::DoubleApothem), 2);

        // Mirror-symmetric about the patch axis x = 0, and non-convex.
        let mirrored: BTreeSet<Point> = poly
            .vertices()
            .iter()
            .map(|p| pt(-p.x, p.y))
            .collect();
        let original: BTreeSet<Point> = poly.vertices().iter().copied().collect();
        assert_eq!(mirrored, original);
        let verts = poly.vertices();
        let m = verts.len();
        let has_reflex = (0..m).any(|i| {
            let u = verts[(i + 1) % m] - verts[i];
            let v = verts[(i + 2) % m] - verts[(i + 1) % m];
            u.cross(&v).sign() == std::cmp::Ordering::Less
        });
        assert!(has_reflex, "large kite is non-convex");
    }

    #[test]
    fn single_kite_boundary_is_its_own_four_edges() {
        let hex = build_hexagon(HexId::H1, Point::origin(), 0).unwrap();
        let kite = kite_decomposition(&hex)[2].clone();
        let poly = boundary_of(std::slice::from_ref(&kite)).unwrap();
        assert_eq!(poly.edge_count(), 4);
        assert_eq!(polygon_area(&poly).unwrap(), root3(1, 1));
    }

    #[test]
    fn boundary_rejects_disconnected_unions() {
        let patch = three_hexagon_patch();
        let k1 = kite_decomposition(&patch[0])[2].clone();
        let k2 = kite_decomposition(&patch[1])[0].clone();
        assert!(!is_edge_connected(&[k1.clone(), k2.clone()]));
        assert!(boundary_of(&[k1, k2]).is_err());
    }

    #[test]
    fn polygon_rejects_degenerate_input() {
        assert!(BoundaryPolygon::new(vec![
            pt(rat(0, 1), rat(0, 1)),
            pt(rat(1, 1), rat(0, 1)),
        ])
        .is_err());
        // Self-crossing bowtie.
        assert!(BoundaryPolygon::new(vec![
            pt(rat(0, 1), rat(0, 1)),
            pt(rat(2, 1), rat(2, 1)),
            pt(rat(2, 1), rat(0, 1)),
            pt(rat(0, 1), rat(2, 1)),
        ])
        .is_err());
    }

    #[test]
    fn classify_rejects_off_lattice_edges() {
        let poly = BoundaryPolygon::new(vec![
            pt(rat(0, 1), rat(0, 1)),
            pt(rat(5, 1), rat(0, 1)),
            pt(rat(0, 1), rat(5, 1)),
        ])
        .unwrap();
        assert!(classify_edges(&poly).is_err());
    }

    /// Re-runs the selection search that pinned the frozen constants:
    /// 4+2+2 selections whose boundary reproduces the thirteen-edge kind
    /// cycle, restricted to those whose unique six-edge large kite lies on
    /// the patch mirror axis. The frozen hat is the lexicographically
    /// first of the two (the other is its mirror image).
    #[test]
    fn hat_selection_is_pinned_by_search() {
        let patch = three_hexagon_patch();
        let mut axis_symmetric_matches: Vec<Vec<(HexId, u8)>> = Vec::new();
        let mut kind_matches = 0usize;
        for c1 in combinations(6, 4) {
            for c2 in combinations(6, 2) {
                for c3 in combinations(6, 2) {
                    let mut indices: Vec<(HexId, u8)> = Vec::new();
                    indices.extend(c1.iter().map(|&i| (HexId::H1, i as u8)));
                    indices.extend(c2.iter().map(|&i| (HexId::H2, i as u8)));
                    indices.extend(c3.iter().map(|&i| (HexId::H3, i as u8)));
                    let kites = kites_by_indices(&patch, &indices);
                    if !is_edge_connected(&kites) {
                        continue;
                    }
                    let Ok(poly) = boundary_of(&kites) else { continue };
                    if poly.edge_count() != 13 {
                        continue;
                    }
                    if classify_edges(&poly).is_err()
                        || !cyclic_match(&kind_string(&poly), HAT_KIND_CYCLE)
                    {
                        continue;
                    }
                    kind_matches += 1;
                    if let Some(large) = unique_six_edge_five_subset(&patch, &indices) {
                        let mirrored: BTreeSet<Point> =
                            large.vertices().iter().map(|p| pt(-p.x, p.y)).collect();
                        let original: BTreeSet<Point> =
                            large.vertices().iter().copied().collect();
                        if mirrored == original {
                            axis_symmetric_matches.push(indices);
                        }
                    }
                }
            }
        }
        assert_eq!(kind_matches, 6, "kind cycle alone admits six selections");
        axis_symmetric_matches.sort();
        assert_eq!(axis_symmetric_matches.len(), 2, "hat and its mirror");
        assert_eq!(axis_symmetric_matches[0], HAT_KITE_INDICES.to_vec());
    }

    fn unique_six_edge_five_subset(
        patch: &[Hexagon; 3],
        indices: &[(HexId, u8)],
    ) -> Option<BoundaryPolygon> {
        let mut found = Vec::new();
        for c in combinations(8, 5) {
            let sub: Vec<(HexId, u8)> = c.iter().map(|&i| indices[i]).collect();
            let kites = kites_by_indices(patch, &sub);
            if !is_edge_connected(&kites) {
                continue;
            }
            let Ok(poly) = boundary_of(&kites) else { continue };
            if poly.edge_count() == 6 && classify_edges(&poly).is_ok() {
                found.push(poly);
            }
        }
        if found.len() == 1 {
            found.pop()
        } else {
            None
        }
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    break;
                }
                if i == 0 {
                    return out;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}
