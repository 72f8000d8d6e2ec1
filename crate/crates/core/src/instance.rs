//! Problem instances, validation, incidence matrices and the JSON file
//! format.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, BaseShape, Point, ShapeKind, TObject};

/// Blue side of a covering instance.
#[derive(Clone, Debug, PartialEq)]
pub enum Blues {
    /// Generalized red-blue dominating set: blue t-objects.
    Objects(Vec<TObject>),
    /// Geometric set cover: ground points.
    Points(Vec<Point>),
}

impl Blues {
    pub fn len(&self) -> usize {
        match self {
            Blues::Objects(v) => v.len(),
            Blues::Points(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    Mwds,
    Mwsc,
    Mwis,
    RegionPacking,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Mwds => "mwds",
            ProblemKind::Mwsc => "mwsc",
            ProblemKind::Mwis => "mwis",
            ProblemKind::RegionPacking => "region_packing",
        }
    }

    pub fn is_covering(self) -> bool {
        matches!(self, ProblemKind::Mwds | ProblemKind::Mwsc)
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Red t-objects to be selected against blue t-objects or points.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverInstance {
    pub t: usize,
    pub shape: ShapeKind,
    pub reds: Vec<TObject>,
    pub blues: Blues,
}

impl CoverInstance {
    pub fn kind(&self) -> ProblemKind {
        match self.blues {
            Blues::Objects(_) => ProblemKind::Mwds,
            Blues::Points(_) => ProblemKind::Mwsc,
        }
    }

    pub fn weights(&self) -> Vec<f64> {
        self.reds.iter().map(|r| r.weight).collect()
    }

    pub fn cost_of(&self, chosen: &[usize]) -> f64 {
        chosen.iter().map(|&i| self.reds[i].weight).sum()
    }
}

/// Objects packed under per-point capacities.
#[derive(Clone, Debug, PartialEq)]
pub struct PackInstance {
    pub t: usize,
    pub shape: ShapeKind,
    pub objects: Vec<TObject>,
    pub points: Vec<Point>,
    pub capacities: Vec<u32>,
    pub kind: ProblemKind,
}

impl PackInstance {
    /// Independent-set instance: unit capacities at the witness points of
    /// `objects`.
    pub fn mwis(t: usize, shape: ShapeKind, objects: Vec<TObject>) -> Result<Self> {
        let points = geom::constraint_points(&objects)?;
        let capacities = vec![1; points.len()];
        Ok(Self {
            t,
            shape,
            objects,
            points,
            capacities,
            kind: ProblemKind::Mwis,
        })
    }

    pub fn min_capacity(&self) -> u32 {
        self.capacities.iter().copied().min().unwrap_or(1)
    }

    pub fn weights(&self) -> Vec<f64> {
        self.objects.iter().map(|o| o.weight).collect()
    }

    /// Point-by-object containment matrix.
    pub fn incidence(&self) -> Result<IncidenceMatrix> {
        IncidenceMatrix::build(self.points.len(), self.objects.len(), |row, col| {
            geom::contains_point(&self.objects[col], &self.points[row])
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Cover(CoverInstance),
    Pack(PackInstance),
}

impl Instance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Instance::Cover(c) => c.kind(),
            Instance::Pack(p) => p.kind,
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        match self {
            Instance::Cover(c) => validate_cover(c),
            Instance::Pack(p) => validate_pack(p),
        }
    }
}

/// Sparse 0/1 matrix with one row per blue (or point) and one column per
/// red (or object).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub ncols: usize,
    /// Sorted column indices of the ones in each row.
    pub rows: Vec<Vec<usize>>,
}

impl IncidenceMatrix {
    pub fn build<F>(nrows: usize, ncols: usize, mut entry: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<bool>,
    {
        let mut rows = Vec::with_capacity(nrows);
        for r in 0..nrows {
            let mut cols = Vec::new();
            for c in 0..ncols {
                if entry(r, c)? {
                    cols.push(c);
                }
            }
            rows.push(cols);
        }
        Ok(Self { ncols, rows })
    }

    pub fn from_rows(ncols: usize, mut rows: Vec<Vec<usize>>) -> Self {
        for r in &mut rows {
            r.sort_unstable();
            r.dedup();
        }
        Self { ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].binary_search(&col).is_ok()
    }

    /// Row indices of the ones in each column.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for &c in row {
                cols[c].push(r);
            }
        }
        cols
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![0u8; self.ncols];
                for &c in row {
                    dense[c] = 1;
                }
                dense
            })
            .collect()
    }

    pub fn permute_rows(&self, order: &[usize]) -> Self {
        Self {
            ncols: self.ncols,
            rows: order.iter().map(|&r| self.rows[r].clone()).collect(),
        }
    }
}

/// Blue-by-red incidence: intersection for blue objects, containment for
/// points.
pub fn incidence(inst: &CoverInstance) -> Result<IncidenceMatrix> {
    match &inst.blues {
        Blues::Objects(blues) => IncidenceMatrix::build(blues.len(), inst.reds.len(), |j, i| {
            geom::t_intersects(&inst.reds[i], &blues[j])
        }),
        Blues::Points(points) => IncidenceMatrix::build(points.len(), inst.reds.len(), |j, i| {
            geom::contains_point(&inst.reds[i], &points[j])
        }),
    }
}

/// A broken instance invariant, e.g. `blue 3: uncoverable`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub subject: String,
    pub rule: String,
}

impl Violation {
    fn new(subject: impl Into<String>, rule: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            rule: rule.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.rule)
    }
}

fn check_object(label: &str, o: &TObject, t: usize, shape: ShapeKind, out: &mut Vec<Violation>) {
    if o.parts.is_empty() {
        out.push(Violation::new(label, "has no parts"));
    }
    if o.parts.len() > t {
        out.push(Violation::new(label, "part count exceeds t"));
    }
    if !(o.weight >= 0.0 && o.weight.is_finite()) {
        out.push(Violation::new(label, "weight must be >= 0"));
    }
    for part in &o.parts {
        if part.kind() != shape {
            out.push(Violation::new(
                label,
                format!("part is not a {}", shape.name()),
            ));
            continue;
        }
        match part {
            BaseShape::Interval(iv) if iv.lo.is_nan() || iv.hi.is_nan() || iv.lo > iv.hi => {
                out.push(Violation::new(label, "interval lo > hi"));
            }
            BaseShape::Disk(d) if d.r.is_nan() || d.r <= 0.0 => {
                out.push(Violation::new(label, "disk radius must be > 0"));
            }
            _ => {}
        }
    }
}

fn check_point(label: &str, p: &Point, shape: ShapeKind, out: &mut Vec<Violation>) {
    if p.dimension() != shape.dimension() {
        out.push(Violation::new(label, "dimension mismatch"));
    }
}

pub fn validate_cover(inst: &CoverInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    if inst.t == 0 {
        out.push(Violation::new("instance", "t must be positive"));
    }
    for (i, r) in inst.reds.iter().enumerate() {
        check_object(&format!("red {i}"), r, inst.t, inst.shape, &mut out);
    }
    match &inst.blues {
        Blues::Objects(blues) => {
            for (j, b) in blues.iter().enumerate() {
                check_object(&format!("blue {j}"), b, inst.t, inst.shape, &mut out);
            }
        }
        Blues::Points(points) => {
            for (j, p) in points.iter().enumerate() {
                check_point(&format!("blue {j}"), p, inst.shape, &mut out);
            }
        }
    }
    if out.is_empty() {
        if let Ok(m) = incidence(inst) {
            for (j, row) in m.rows.iter().enumerate() {
                if row.is_empty() {
                    out.push(Violation::new(format!("blue {j}"), "uncoverable"));
                }
            }
        }
    }
    out
}

fn same_points(a: &[Point], b: &[Point]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(p, q)| {
            p.dimension() == q.dimension()
                && p.coords()
                    .iter()
                    .zip(q.coords())
                    .all(|(x, y)| (x - y).abs() <= geom::EPS)
        })
}

pub fn validate_pack(inst: &PackInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    if inst.t == 0 {
        out.push(Violation::new("instance", "t must be positive"));
    }
    if !matches!(inst.kind, ProblemKind::Mwis | ProblemKind::RegionPacking) {
        out.push(Violation::new("instance", "not a packing kind"));
    }
    for (i, o) in inst.objects.iter().enumerate() {
        check_object(&format!("object {i}"), o, inst.t, inst.shape, &mut out);
    }
    for (j, p) in inst.points.iter().enumerate() {
        check_point(&format!("point {j}"), p, inst.shape, &mut out);
    }
    if inst.capacities.len() != inst.points.len() {
        out.push(Violation::new("capacities", "length differs from points"));
    }
    for (j, &c) in inst.capacities.iter().enumerate() {
        if c == 0 {
            out.push(Violation::new(
                format!("point {j}"),
                "capacity must be >= 1",
            ));
        }
        if inst.kind == ProblemKind::Mwis && c != 1 {
            out.push(Violation::new(
                format!("point {j}"),
                "mwis capacity must be 1",
            ));
        }
    }
    if inst.kind == ProblemKind::Mwis && out.is_empty() {
        match geom::constraint_points(&inst.objects) {
            Ok(expected) if same_points(&expected, &inst.points) => {}
            _ => out.push(Violation::new(
                "points",
                "mwis points must be the witness set",
            )),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// File format

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum ShapeTag {
    Interval,
    Disk,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct ObjectRecord {
    id: usize,
    weight: f64,
    parts: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    kind: ProblemKind,
    t: usize,
    shape: ShapeTag,
    reds: Vec<ObjectRecord>,
    #[serde(default)]
    blues: Vec<ObjectRecord>,
    #[serde(default)]
    points: Vec<Vec<f64>>,
    #[serde(default)]
    capacities: Vec<u32>,
}

fn shape_to_record(s: &BaseShape) -> Vec<f64> {
    match *s {
        BaseShape::Interval(iv) => vec![iv.lo, iv.hi],
        BaseShape::Disk(d) => vec![d.cx, d.cy, d.r],
    }
}

fn object_to_record(o: &TObject) -> ObjectRecord {
    ObjectRecord {
        id: o.id,
        weight: o.weight,
        parts: o.parts.iter().map(shape_to_record).collect(),
    }
}

fn parse_shape(field: &str, shape: ShapeKind, v: &[f64]) -> Result<BaseShape> {
    match (shape, v) {
        (ShapeKind::Interval, &[lo, hi]) => {
            if lo > hi {
                return Err(Error::Parse(format!("{field}: interval lo must be <= hi")));
            }
            Ok(BaseShape::interval(lo, hi))
        }
        (ShapeKind::Disk, &[cx, cy, r]) => {
            if r.is_nan() || r <= 0.0 {
                return Err(Error::Parse(format!("{field}: disk radius must be > 0")));
            }
            Ok(BaseShape::disk(cx, cy, r))
        }
        (ShapeKind::Interval, _) => Err(Error::Parse(format!("{field}: interval needs [lo, hi]"))),
        (ShapeKind::Disk, _) => Err(Error::Parse(format!("{field}: disk needs [cx, cy, r]"))),
    }
}

fn parse_object(field: &str, shape: ShapeKind, rec: &ObjectRecord) -> Result<TObject> {
    if rec.weight.is_nan() || rec.weight < 0.0 {
        return Err(Error::Parse(format!("{field}.weight: weight must be ≥ 0")));
    }
    let parts = rec
        .parts
        .iter()
        .enumerate()
        .map(|(k, p)| parse_shape(&format!("{field}.parts[{k}]"), shape, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(TObject::new(rec.id, parts, rec.weight))
}

fn parse_point(field: &str, shape: ShapeKind, v: &[f64]) -> Result<Point> {
    match (shape, v) {
        (ShapeKind::Interval, &[x]) => Ok(Point::Line(x)),
        (ShapeKind::Disk, &[x, y]) => Ok(Point::Plane(x, y)),
        _ => Err(Error::Parse(format!(
            "{field}: expected {} coordinate(s) for {} instances",
            shape.dimension(),
            shape.name()
        ))),
    }
}

fn parse_objects(name: &str, shape: ShapeKind, recs: &[ObjectRecord]) -> Result<Vec<TObject>> {
    recs.iter()
        .enumerate()
        .map(|(i, r)| parse_object(&format!("{name}[{i}]"), shape, r))
        .collect()
}

fn parse_points(shape: ShapeKind, pts: &[Vec<f64>]) -> Result<Vec<Point>> {
    pts.iter()
        .enumerate()
        .map(|(j, p)| parse_point(&format!("points[{j}]"), shape, p))
        .collect()
}

impl InstanceFile {
    fn into_instance(self) -> Result<Instance> {
        let shape = match self.shape {
            ShapeTag::Interval => ShapeKind::Interval,
            ShapeTag::Disk => ShapeKind::Disk,
        };
        let reds = parse_objects("reds", shape, &self.reds)?;
        let t = self.t;
        let unexpected =
            |field: &str| Error::Parse(format!("{field}: not allowed for kind {}", self.kind));
        match self.kind {
            ProblemKind::Mwds => {
                if !self.points.is_empty() {
                    return Err(unexpected("points"));
                }
                if !self.capacities.is_empty() {
                    return Err(unexpected("capacities"));
                }
                let blues = parse_objects("blues", shape, &self.blues)?;
                Ok(Instance::Cover(CoverInstance {
                    t,
                    shape,
                    reds,
                    blues: Blues::Objects(blues),
                }))
            }
            ProblemKind::Mwsc => {
                if !self.blues.is_empty() {
                    return Err(unexpected("blues"));
                }
                if !self.capacities.is_empty() {
                    return Err(unexpected("capacities"));
                }
                let points = parse_points(shape, &self.points)?;
                Ok(Instance::Cover(CoverInstance {
                    t,
                    shape,
                    reds,
                    blues: Blues::Points(points),
                }))
            }
            ProblemKind::Mwis | ProblemKind::RegionPacking => {
                if !self.blues.is_empty() {
                    return Err(unexpected("blues"));
                }
                let points = parse_points(shape, &self.points)?;
                if self.capacities.len() != points.len() {
                    return Err(Error::Parse(format!(
                        "capacities: expected {} entries, found {}",
                        points.len(),
                        self.capacities.len()
                    )));
                }
                if let Some(j) = self.capacities.iter().position(|&c| c == 0) {
                    return Err(Error::Parse(format!(
                        "capacities[{j}]: capacity must be ≥ 1"
                    )));
                }
                Ok(Instance::Pack(PackInstance {
                    t,
                    shape,
                    objects: reds,
                    points,
                    capacities: self.capacities,
                    kind: self.kind,
                }))
            }
        }
    }

    fn from_instance(inst: &Instance) -> Self {
        let tag = |s: ShapeKind| match s {
            ShapeKind::Interval => ShapeTag::Interval,
            ShapeKind::Disk => ShapeTag::Disk,
        };
        match inst {
            Instance::Cover(c) => {
                let (blues, points) = match &c.blues {
                    Blues::Objects(b) => (b.iter().map(object_to_record).collect(), Vec::new()),
                    Blues::Points(p) => (Vec::new(), p.iter().map(Point::coords).collect()),
                };
                InstanceFile {
                    kind: c.kind(),
                    t: c.t,
                    shape: tag(c.shape),
                    reds: c.reds.iter().map(object_to_record).collect(),
                    blues,
                    points,
                    capacities: Vec::new(),
                }
            }
            Instance::Pack(p) => InstanceFile {
                kind: p.kind,
                t: p.t,
                shape: tag(p.shape),
                reds: p.objects.iter().map(object_to_record).collect(),
                blues: Vec::new(),
                points: p.points.iter().map(Point::coords).collect(),
                capacities: p.capacities.clone(),
            },
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    file.into_instance()
}

pub fn instance_to_string(inst: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceFile::from_instance(inst))
        .expect("instance records always serialize");
    s.push('\n');
    s
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn write_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, instance_to_string(inst))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv_obj(id: usize, parts: &[(f64, f64)], w: f64) -> TObject {
        TObject::new(
            id,
            parts
                .iter()
                .map(|&(a, b)| BaseShape::interval(a, b))
                .collect(),
            w,
        )
    }

    fn cover(t: usize, reds: Vec<TObject>, blues: Vec<TObject>) -> CoverInstance {
        CoverInstance {
            t,
            shape: ShapeKind::Interval,
            reds,
            blues: Blues::Objects(blues),
        }
    }

    #[test]
    fn validation_messages() {
        let inst = cover(
            1,
            vec![iv_obj(0, &[(0.0, 1.0)], 1.0)],
            vec![
                iv_obj(0, &[(0.0, 0.5)], 0.0),
                iv_obj(1, &[(0.5, 0.6)], 0.0),
                iv_obj(2, &[(1.0, 2.0)], 0.0),
                iv_obj(3, &[(5.0, 6.0)], 0.0),
            ],
        );
        let v: Vec<String> = validate_cover(&inst)
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(v, vec!["blue 3: uncoverable"]);

        let ok = cover(
            2,
            vec![iv_obj(0, &[(0.0, 1.0), (3.0, 4.0)], 1.0)],
            vec![iv_obj(0, &[(3.5, 5.0)], 0.0)],
        );
        assert!(validate_cover(&ok).is_empty());

        let fat = cover(
            1,
            vec![iv_obj(0, &[(0.0, 1.0), (3.0, 4.0)], 1.0)],
            vec![iv_obj(0, &[(0.5, 0.7)], 0.0)],
        );
        let v: Vec<String> = validate_cover(&fat).iter().map(|v| v.to_string()).collect();
        assert_eq!(v, vec!["red 0: part count exceeds t"]);
    }

    #[test]
    fn incidence_examples() {
        let m = incidence(&cover(
            1,
            vec![iv_obj(0, &[(0.0, 1.0)], 1.0)],
            vec![iv_obj(0, &[(0.5, 2.0)], 0.0)],
        ))
        .unwrap();
        assert_eq!(m.to_dense(), vec![vec![1]]);

        let m = incidence(&cover(
            1,
            vec![iv_obj(0, &[(0.0, 1.0)], 1.0), iv_obj(1, &[(3.0, 4.0)], 1.0)],
            vec![iv_obj(0, &[(0.5, 3.5)], 0.0)],
        ))
        .unwrap();
        assert_eq!(m.to_dense(), vec![vec![1, 1]]);

        let pts = CoverInstance {
            t: 1,
            shape: ShapeKind::Interval,
            reds: vec![iv_obj(0, &[(0.0, 1.0)], 1.0)],
            blues: Blues::Points(vec![Point::Line(2.0)]),
        };
        assert_eq!(incidence(&pts).unwrap().to_dense(), vec![vec![0]]);
    }

    #[test]
    fn columns_transpose_rows() {
        let m = IncidenceMatrix::from_rows(3, vec![vec![0, 2], vec![1], vec![2, 0]]);
        assert_eq!(m.columns(), vec![vec![0, 2], vec![1], vec![0, 2]]);
        assert!(m.get(2, 0) && !m.get(1, 0));
    }

    #[test]
    fn round_trip_cover_and_pack() {
        let c = Instance::Cover(cover(
            2,
            vec![iv_obj(4, &[(0.0, 1.25), (3.0, 4.0)], 2.5)],
            vec![iv_obj(0, &[(0.5, 0.75)], 0.0)],
        ));
        assert_eq!(parse_instance(&instance_to_string(&c)).unwrap(), c);

        let objects = vec![TObject::new(0, vec![BaseShape::disk(0.0, 0.0, 1.0)], 1.0)];
        let p = Instance::Pack(PackInstance::mwis(1, ShapeKind::Disk, objects).unwrap());
        assert_eq!(parse_instance(&instance_to_string(&p)).unwrap(), p);
    }

    #[test]
    fn rejects_negative_weight() {
        let text = r#"{"kind":"mwds","t":1,"shape":"interval",
            "reds":[{"id":0,"weight":-1,"parts":[[0,1]]}],"blues":[]}"#;
        let err = parse_instance(text).unwrap_err().to_string();
        assert!(err.contains("weight must be ≥ 0"), "{err}");
        assert!(err.contains("reds[0]"), "{err}");
    }

    #[test]
    fn rejects_unknown_shape_and_fields() {
        let text = r#"{"kind":"mwds","t":1,"shape":"triangle","reds":[]}"#;
        let err = parse_instance(text).unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
        let text = r#"{"kind":"mwds","t":1,"shape":"interval","reds":[],"colour":1}"#;
        assert!(parse_instance(text).is_err());
    }

    #[test]
    fn rejects_bad_arity() {
        let text = r#"{"kind":"mwsc","t":1,"shape":"disk","reds":[{"id":0,"weight":1,"parts":[[0,1]]}],"points":[]}"#;
        let err = parse_instance(text).unwrap_err().to_string();
        assert!(err.contains("reds[0].parts[0]"), "{err}");
    }
}
