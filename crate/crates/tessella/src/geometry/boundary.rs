//! Boundary extraction from kite unions, edge classification, and exact
//! polygon predicates (closure, simplicity, shoelace area).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::exact::{Point, Rat, Sqrt3};
use crate::geometry::Kite;

/// Edge classes of the hexagon/kite lattice, decided by exact squared
/// length: 1, 4, 3, 12.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SegmentKind {
    /// Length 1: half of a hexagon side.
    HalfSide,
    /// Length 2: a full hexagon side.
    FullSide,
    /// Length sqrt(3): a hexagon apothem.
    Apothem,
    /// Length 2*sqrt(3): two collinear apothems.
    DoubleApothem,
}

impl SegmentKind {
    /// Classifies an exact squared length, if it is one of the four classes.
    pub fn from_squared_length(sq: Sqrt3) -> Option<SegmentKind> {
        if !sq.is_rational() {
            return None;
        }
        match sq.a {
            r if r == Rational64::from_integer(1) => Some(SegmentKind::HalfSide),
            r if r == Rational64::from_integer(4) => Some(SegmentKind::FullSide),
            r if r == Rational64::from_integer(3) => Some(SegmentKind::Apothem),
            r if r == Rational64::from_integer(12) => Some(SegmentKind::DoubleApothem),
            _ => None,
        }
    }
}

impl fmt::Display for SegmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SegmentKind::HalfSide => "half-side",
            SegmentKind::FullSide => "full side",
            SegmentKind::Apothem => "apothem",
            SegmentKind::DoubleApothem => "two apothems",
        };
        write!(f, "{name}")
    }
}

/// A closed simple polygon with exact vertices, counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPolygon {
    vertices: Vec<Point>,
}

impl BoundaryPolygon {
    /// Validates closure (implicit: last vertex connects to first),
    /// simplicity, and a positive vertex count.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::domain(format!(
                "a polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let poly = BoundaryPolygon { vertices };
        poly.check_simple()?;
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Directed edges, including the closing edge back to the start.
    pub fn edges(&self) -> Vec<(Point, Point)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }

    /// Exact vector sum of all edges; zero for every closed polygon.
    pub fn edge_vector_sum(&self) -> Point {
        self.edges()
            .into_iter()
            .fold(Point::origin(), |acc, (p, q)| acc + (q - p))
    }

    /// Twice the signed shoelace area.
    fn double_signed_area(&self) -> Sqrt3 {
        let mut acc = Sqrt3::zero();
        for (p, q) in self.edges() {
            acc += p.cross(&q);
        }
        acc
    }

    fn check_simple(&self) -> Result<()> {
        let edges = self.edges();
        let n = edges.len();
        // No zero-length edges.
        for (p, q) in &edges {
            if p == q {
                return Err(Error::domain("degenerate zero-length edge"));
            }
        }
        // No repeated vertices (catches pinch points).
        let mut sorted = self.vertices.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("self-intersection: repeated vertex"));
        }
        // No improper crossings between non-adjacent edges.
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                if segments_intersect(edges[i], edges[j]) {
                    return Err(Error::domain("self-intersection between edges"));
                }
            }
        }
        Ok(())
    }
}

/// Exact orientation of `c` relative to the directed line `a -> b`.
fn orient(a: Point, b: Point, c: Point) -> std::cmp::Ordering {
    (b - a).cross(&(c - a)).sign()
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) == std::cmp::Ordering::Equal
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// True when two closed segments share any point.
fn segments_intersect(s1: (Point, Point), s2: (Point, Point)) -> bool {
    use std::cmp::Ordering::Equal;
    let (a, b) = s1;
    let (c, d) = s2;
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Equal && o2 != Equal && o3 != Equal && o4 != Equal {
        return true;
    }
    (o1 == Equal && on_segment(a, b, c))
        || (o2 == Equal && on_segment(a, b, d))
        || (o3 == Equal && on_segment(c, d, a))
        || (o4 == Equal && on_segment(c, d, b))
}

/// Extracts the outer boundary of an edge-connected union of kites with
/// pairwise-disjoint interiors. Interior edges cancel by exact coordinate
/// match; consecutive collinear edges of the same direction merge into one.
pub fn boundary_of(kites: &[Kite]) -> Result<BoundaryPolygon> {
    if kites.is_empty() {
        return Err(Error::domain("cannot take the boundary of no kites"));
    }
    // Count undirected occurrences of every directed kite edge.
    let mut occurrences: BTreeMap<(Point, Point), usize> = BTreeMap::new();
    for kite in kites {
        for (p, q) in kite.edges() {
            let key = if p < q { (p, q) } else { (q, p) };
            *occurrences.entry(key).or_insert(0) += 1;
        }
    }
    if occurrences.values().any(|&c| c > 2) {
        return Err(Error::invariant(
            "an edge is shared by more than two kites; interiors overlap",
        ));
    }
    // Keep directed edges whose undirected twin occurs exactly once.
    let mut next: BTreeMap<Point, Point> = BTreeMap::new();
    let mut boundary_edges = 0usize;
    for kite in kites {
        for (p, q) in kite.edges() {
            let key = if p < q { (p, q) } else { (q, p) };
            if occurrences[&key] == 1 {
                if next.insert(p, q).is_some() {
                    return Err(Error::domain(
                        "boundary is not simple: two boundary edges leave one vertex",
                    ));
                }
                boundary_edges += 1;
            }
        }
    }
    if boundary_edges == 0 {
        return Err(Error::domain("kite union has no boundary"));
    }
    // Stitch one cycle from the lexicographically smallest start point.
    let start = *next.keys().next().expect("non-empty boundary");
    let mut cycle = vec![start];
    let mut current = start;
    loop {
        let to = *next
            .get(&current)
            .ok_or_else(|| Error::domain("boundary walk broke off; union is not closed"))?;
        if to == start {
            break;
        }
        cycle.push(to);
        current = to;
    }
    if cycle.len() != boundary_edges {
        return Err(Error::domain(
            "kite union is disconnected or encloses a hole",
        ));
    }
    // Merge runs of collinear same-direction edges (cyclically).
    let merged = merge_collinear(cycle)?;
    // Kites are counterclockwise, so the single outer cycle already is;
    // verify rather than silently fix.
    let poly = BoundaryPolygon::new(rotate_to_min(merged))?;
    if poly.double_signed_area().sign() != std::cmp::Ordering::Greater {
        return Err(Error::invariant("boundary came out clockwise"));
    }
    Ok(poly)
}

fn merge_collinear(cycle: Vec<Point>) -> Result<Vec<Point>> {
    let n = cycle.len();
    let mut keep = Vec::with_capacity(n);
    for i in 0..n {
        let prev = cycle[(i + n - 1) % n];
        let here = cycle[i];
        let next = cycle[(i + 1) % n];
        let u = here - prev;
        let v = next - here;
        if u.cross(&v).is_zero() {
            if u.dot(&v).sign() != std::cmp::Ordering::Greater {
                return Err(Error::invariant("boundary has a zero-area spike"));
            }
            continue; // same direction: drop the middle vertex
        }
        keep.push(here);
    }
    Ok(keep)
}

fn rotate_to_min(mut vertices: Vec<Point>) -> Vec<Point> {
    if let Some(min_idx) = vertices
        .iter()
        .enumerate()
        .min_by_key(|(_, p)| **p)
        .map(|(i, _)| i)
    {
        vertices.rotate_left(min_idx);
    }
    vertices
}

/// Per-edge segment kinds, in boundary order.
pub fn classify_edges(polygon: &BoundaryPolygon) -> Result<Vec<SegmentKind>> {
    polygon
        .edges()
        .into_iter()
        .map(|(p, q)| {
            let sq = (q - p).norm_sq();
            SegmentKind::from_squared_length(sq).ok_or_else(|| {
                Error::invariant(format!("edge squared length {sq} is not classifiable"))
            })
        })
        .collect()
}

/// Exact unsigned area via the shoelace formula evaluated in the ring.
pub fn polygon_area(polygon: &BoundaryPolygon) -> Result<Sqrt3> {
    // Simplicity was checked at construction; re-check to honour the
    // contract for polygons built elsewhere.
    polygon.check_simple()?;
    let doubled = polygon.double_signed_area();
    let half = Rat::new(1, 2);
    let area = doubled * half;
    Ok(if area.sign() == std::cmp::Ordering::Less {
        -area
    } else {
        area
    })
}
