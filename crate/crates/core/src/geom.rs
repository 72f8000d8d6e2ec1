//! Closed intervals on a line, closed disks in the plane, and t-objects
//! built as unions of them.
//!
//! Every predicate treats regions as closed: touching shapes intersect and
//! boundary points are contained. Disk computations use the absolute
//! tolerance [`EPS`].

use crate::error::{Error, Result};

/// Absolute tolerance for point deduplication, tangency and containment.
pub const EPS: f64 = 1e-9;

/// Radius inflation applied per rank when classifying union vertices.
pub const PERTURBATION: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeKind {
    Interval,
    Disk,
}

impl ShapeKind {
    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Interval => "interval",
            ShapeKind::Disk => "disk",
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            ShapeKind::Interval => 1,
            ShapeKind::Disk => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// True if `other` lies inside `self` (equality included).
    pub fn covers(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disk {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

impl Disk {
    pub fn new(cx: f64, cy: f64, r: f64) -> Self {
        Self { cx, cy, r }
    }

    fn center_distance(&self, other: &Disk) -> f64 {
        (self.cx - other.cx).hypot(self.cy - other.cy)
    }

    pub fn intersects(&self, other: &Disk) -> bool {
        self.center_distance(other) <= self.r + other.r + EPS
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        (x - self.cx).hypot(y - self.cy) <= self.r + EPS
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BaseShape {
    Interval(Interval),
    Disk(Disk),
}

impl BaseShape {
    pub fn interval(lo: f64, hi: f64) -> Self {
        BaseShape::Interval(Interval::new(lo, hi))
    }

    pub fn disk(cx: f64, cy: f64, r: f64) -> Self {
        BaseShape::Disk(Disk::new(cx, cy, r))
    }

    pub fn kind(&self) -> ShapeKind {
        match self {
            BaseShape::Interval(_) => ShapeKind::Interval,
            BaseShape::Disk(_) => ShapeKind::Disk,
        }
    }

    pub fn as_interval(&self) -> Option<&Interval> {
        match self {
            BaseShape::Interval(i) => Some(i),
            BaseShape::Disk(_) => None,
        }
    }

    pub fn as_disk(&self) -> Option<&Disk> {
        match self {
            BaseShape::Disk(d) => Some(d),
            BaseShape::Interval(_) => None,
        }
    }

    pub fn contains_point(&self, p: &Point) -> Result<bool> {
        match (self, p) {
            (BaseShape::Interval(i), Point::Line(x)) => Ok(i.contains(*x)),
            (BaseShape::Disk(d), Point::Plane(x, y)) => Ok(d.contains(*x, *y)),
            (s, p) => Err(Error::DimensionMismatch {
                point: p.dimension(),
                shape: s.kind().name(),
            }),
        }
    }

    /// A point guaranteed to lie inside the shape.
    pub fn interior_point(&self) -> Point {
        match self {
            BaseShape::Interval(i) => Point::Line(0.5 * (i.lo + i.hi)),
            BaseShape::Disk(d) => Point::Plane(d.cx, d.cy),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    Line(f64),
    Plane(f64, f64),
}

impl Point {
    pub fn dimension(&self) -> usize {
        match self {
            Point::Line(_) => 1,
            Point::Plane(..) => 2,
        }
    }

    pub fn coords(&self) -> Vec<f64> {
        match *self {
            Point::Line(x) => vec![x],
            Point::Plane(x, y) => vec![x, y],
        }
    }

    fn x(&self) -> f64 {
        match *self {
            Point::Line(x) | Point::Plane(x, _) => x,
        }
    }

    fn y(&self) -> f64 {
        match *self {
            Point::Line(_) => 0.0,
            Point::Plane(_, y) => y,
        }
    }
}

/// A weighted union of base shapes.
#[derive(Clone, Debug, PartialEq)]
pub struct TObject {
    pub id: usize,
    pub parts: Vec<BaseShape>,
    pub weight: f64,
}

impl TObject {
    pub fn new(id: usize, parts: Vec<BaseShape>, weight: f64) -> Self {
        Self { id, parts, weight }
    }

    /// Kind of the first part; `None` for an object without parts.
    pub fn kind(&self) -> Option<ShapeKind> {
        self.parts.first().map(BaseShape::kind)
    }
}

fn check_kinds(a: ShapeKind, b: ShapeKind) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::KindMismatch(a.name(), b.name()))
    }
}

pub fn intersects(a: &BaseShape, b: &BaseShape) -> Result<bool> {
    match (a, b) {
        (BaseShape::Interval(x), BaseShape::Interval(y)) => Ok(x.intersects(y)),
        (BaseShape::Disk(x), BaseShape::Disk(y)) => Ok(x.intersects(y)),
        _ => Err(Error::KindMismatch(a.kind().name(), b.kind().name())),
    }
}

pub fn t_intersects(a: &TObject, b: &TObject) -> Result<bool> {
    for pa in &a.parts {
        for pb in &b.parts {
            if intersects(pa, pb)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn contains_point(a: &TObject, p: &Point) -> Result<bool> {
    for part in &a.parts {
        if part.contains_point(p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Intersection points of two circle boundaries.
///
/// Near-tangent pairs (within [`EPS`]) yield a single point on the line of
/// centers. Concentric circles and separated or nested pairs yield none.
pub fn circle_intersections(a: &Disk, b: &Disk) -> Vec<(f64, f64)> {
    let dx = b.cx - a.cx;
    let dy = b.cy - a.cy;
    let d = dx.hypot(dy);
    if d <= EPS || d > a.r + b.r + EPS || d < (a.r - b.r).abs() - EPS {
        return Vec::new();
    }
    let along = (d * d + a.r * a.r - b.r * b.r) / (2.0 * d);
    let h2 = a.r * a.r - along * along;
    let (ux, uy) = (dx / d, dy / d);
    let (fx, fy) = (a.cx + along * ux, a.cy + along * uy);
    if h2 <= EPS * EPS {
        return vec![(fx, fy)];
    }
    let h = h2.sqrt();
    vec![(fx - h * uy, fy + h * ux), (fx + h * uy, fy - h * ux)]
}

fn uniform_kind(shapes: &[&BaseShape]) -> Result<Option<ShapeKind>> {
    let Some(first) = shapes.first() else {
        return Ok(None);
    };
    let kind = first.kind();
    for s in shapes {
        check_kinds(kind, s.kind())?;
    }
    Ok(Some(kind))
}

/// Sorts and removes points closer than [`EPS`] in every coordinate.
pub fn dedup_points(mut points: Vec<Point>) -> Vec<Point> {
    points.sort_by(|p, q| p.x().total_cmp(&q.x()).then(p.y().total_cmp(&q.y())));
    let mut kept: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        let duplicate = kept
            .iter()
            .rev()
            .take_while(|q| p.x() - q.x() <= EPS)
            .any(|q| (p.y() - q.y()).abs() <= EPS);
        if !duplicate {
            kept.push(p);
        }
    }
    kept
}

/// Finite witness set for pairwise intersections among `objects`.
///
/// Whenever two objects intersect, at least one returned point lies in both.
/// Intervals contribute their endpoints and the midpoint of every overlap;
/// disks contribute their centers and all boundary crossing points.
pub fn constraint_points(objects: &[TObject]) -> Result<Vec<Point>> {
    let shapes: Vec<&BaseShape> = objects.iter().flat_map(|o| o.parts.iter()).collect();
    let Some(kind) = uniform_kind(&shapes)? else {
        return Ok(Vec::new());
    };
    let mut points = Vec::new();
    match kind {
        ShapeKind::Interval => {
            let ivs: Vec<&Interval> = shapes.iter().filter_map(|s| s.as_interval()).collect();
            for iv in &ivs {
                points.push(Point::Line(iv.lo));
                points.push(Point::Line(iv.hi));
            }
            for (i, a) in ivs.iter().enumerate() {
                for b in &ivs[i + 1..] {
                    if a.intersects(b) {
                        let lo = a.lo.max(b.lo);
                        let hi = a.hi.min(b.hi);
                        points.push(Point::Line(0.5 * (lo + hi)));
                    }
                }
            }
        }
        ShapeKind::Disk => {
            let disks: Vec<&Disk> = shapes.iter().filter_map(|s| s.as_disk()).collect();
            for d in &disks {
                points.push(Point::Plane(d.cx, d.cy));
            }
            for (i, a) in disks.iter().enumerate() {
                for b in &disks[i + 1..] {
                    for (x, y) in circle_intersections(a, b) {
                        points.push(Point::Plane(x, y));
                    }
                }
            }
        }
    }
    Ok(dedup_points(points))
}

/// Boundary vertex count of the union of a set of shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnionComplexity {
    pub vertices: usize,
    /// Set when some pair stayed tangent within tolerance after perturbation.
    pub degenerate: bool,
}

/// Counts the vertices on the boundary of the union of `shapes`.
///
/// Intervals: two per connected component. Disks: circle crossing points not
/// strictly inside any other disk. Before classifying, disk `i` of `m` is
/// inflated by `(m - i) * PERTURBATION`, so coincident disks resolve to
/// containment of the higher index by the lower one.
pub fn union_vertex_count(shapes: &[BaseShape]) -> Result<UnionComplexity> {
    let refs: Vec<&BaseShape> = shapes.iter().collect();
    let Some(kind) = uniform_kind(&refs)? else {
        return Ok(UnionComplexity {
            vertices: 0,
            degenerate: false,
        });
    };
    match kind {
        ShapeKind::Interval => {
            let mut ivs: Vec<Interval> = shapes
                .iter()
                .filter_map(|s| s.as_interval().copied())
                .collect();
            ivs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
            let mut components = 0;
            let mut reach = f64::NEG_INFINITY;
            for iv in ivs {
                if components == 0 || iv.lo > reach {
                    components += 1;
                    reach = iv.hi;
                } else {
                    reach = reach.max(iv.hi);
                }
            }
            Ok(UnionComplexity {
                vertices: 2 * components,
                degenerate: false,
            })
        }
        ShapeKind::Disk => {
            let m = shapes.len();
            let disks: Vec<Disk> = shapes
                .iter()
                .filter_map(|s| s.as_disk())
                .enumerate()
                .map(|(i, d)| Disk::new(d.cx, d.cy, d.r + (m - i) as f64 * PERTURBATION))
                .collect();
            let mut vertices = 0;
            let mut degenerate = false;
            for i in 0..m {
                for j in i + 1..m {
                    let (a, b) = (&disks[i], &disks[j]);
                    let d = a.center_distance(b);
                    if (d - (a.r + b.r)).abs() <= EPS || (d - (a.r - b.r).abs()).abs() <= EPS {
                        degenerate = true;
                    }
                    for (x, y) in circle_intersections(a, b) {
                        let buried = disks.iter().enumerate().any(|(k, o)| {
                            k != i && k != j && (x - o.cx).hypot(y - o.cy) < o.r - EPS
                        });
                        if !buried {
                            vertices += 1;
                        }
                    }
                }
            }
            Ok(UnionComplexity {
                vertices,
                degenerate,
            })
        }
    }
}

/// Union complexity bound for `m` shapes of the given kind.
pub fn union_complexity_bound(kind: ShapeKind, m: usize) -> usize {
    match kind {
        ShapeKind::Interval => 2 * m,
        ShapeKind::Disk => (6 * m).saturating_sub(12).max(2 * m),
    }
}
