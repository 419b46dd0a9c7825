//! File formats: polytope JSON, point clouds (CSV or JSON) and solver results (JSON).

use crate::annulus::{AnnulusSolution, PointCloud};
use crate::error::{Error, Result};
use crate::polytope::{ConvexPolytope, Facet};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfspaces: Option<Vec<Facet>>,
}

impl PolytopeFile {
    pub fn from_polytope(c: &ConvexPolytope) -> Self {
        Self { dim: c.dim(), vertices: c.vertices().to_vec(), halfspaces: Some(c.facets().to_vec()) }
    }

    pub fn build(self) -> Result<ConvexPolytope> {
        match self.halfspaces {
            Some(h) => ConvexPolytope::from_parts(self.dim, self.vertices, h),
            None if self.dim > 3 => {
                Err(Error::InvalidPolytope(format!("halfspaces are required for dimension {}", self.dim)))
            }
            None => ConvexPolytope::from_vertices(self.dim, &self.vertices),
        }
    }
}

pub fn read_polytope_json(text: &str) -> Result<ConvexPolytope> {
    serde_json::from_str::<PolytopeFile>(text)?.build()
}

pub fn polytope_to_json(c: &ConvexPolytope) -> String {
    serde_json::to_string_pretty(&PolytopeFile::from_polytope(c)).expect("polytope serializes")
}

fn parse_row(record: &csv::StringRecord) -> Option<Vec<f64>> {
    record.iter().map(|f| f.trim().parse::<f64>().ok()).collect()
}

/// One point per row; a first row that is not numeric is treated as a header. With
/// `dim = None` the column count of the first data row fixes the dimension.
pub fn read_points_csv(text: &str, dim: Option<usize>) -> Result<PointCloud> {
    let mut reader =
        csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut coords = Vec::new();
    let mut width = dim;
    let mut first = true;
    for record in reader.records() {
        let record = record
            .map_err(|e| Error::Parse { line: e.position().map_or(0, |p| p.line() as usize), msg: e.to_string() })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let row = match parse_row(&record) {
            Some(row) => row,
            None if first => {
                first = false;
                continue;
            }
            None => return Err(Error::Parse { line, msg: "expected numeric fields".into() }),
        };
        first = false;
        if row.iter().any(|x| !x.is_finite()) {
            return Err(Error::Parse { line, msg: "non-finite coordinate".into() });
        }
        let d = *width.get_or_insert(row.len());
        if row.len() != d {
            return Err(Error::Parse { line, msg: format!("expected {d} columns, found {}", row.len()) });
        }
        coords.extend(row);
    }
    match width {
        Some(d) if d > 0 => PointCloud::new(d, coords),
        Some(_) => Err(Error::Parse { line: 1, msg: "points need at least one coordinate".into() }),
        None => Err(Error::EmptyCloud),
    }
}

/// CSV with a header and 17 significant digits per coordinate.
pub fn write_points_csv(s: &PointCloud) -> String {
    let mut out = String::new();
    let header: Vec<String> = (0..s.dim()).map(|j| format!("x{j}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for p in s.iter() {
        let row: Vec<String> = p.iter().map(|x| format!("{x:.16e}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsFile {
    dim: usize,
    points: Vec<Vec<f64>>,
}

pub fn read_points_json(text: &str) -> Result<PointCloud> {
    let f: PointsFile = serde_json::from_str(text)?;
    if f.dim == 0 {
        return Err(Error::InvalidParameter("dim must be positive".into()));
    }
    if let Some(p) = f.points.iter().find(|p| p.len() != f.dim) {
        return Err(Error::DimensionMismatch { expected: f.dim, got: p.len() });
    }
    PointCloud::from_points(f.dim, &f.points)
}

pub fn write_points_json(s: &PointCloud) -> String {
    let f = PointsFile { dim: s.dim(), points: s.iter().map(|p| p.to_vec()).collect() };
    serde_json::to_string(&f).expect("points serialize")
}

/// Dispatches on a `.json` extension, CSV otherwise.
pub fn read_points(path: &std::path::Path, dim: Option<usize>) -> Result<PointCloud> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        read_points_json(&text)
    } else {
        read_points_csv(&text, dim)
    }
}

/// Serialized form of an [`AnnulusSolution`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub center: Vec<f64>,
    pub rotation_angles: Vec<f64>,
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub width: f64,
    pub epsilon: f64,
    pub evaluations: u64,
    pub elapsed_ms: f64,
    pub b_used: Option<f64>,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_hat: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientations: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retries: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ResultRecord {
    pub fn from_solution(sol: &AnnulusSolution) -> Self {
        Self {
            center: sol.center.clone(),
            rotation_angles: sol.rotation.angles().to_vec(),
            inner_radius: sol.inner_radius,
            outer_radius: sol.outer_radius,
            width: sol.width,
            epsilon: sol.epsilon,
            evaluations: sol.evaluations,
            elapsed_ms: sol.elapsed.as_secs_f64() * 1e3,
            b_used: sol.meta.b_used,
            mode: sol.meta.mode.as_str().to_string(),
            f_hat: sol.meta.f_hat,
            orientations: sol.meta.orientations,
            retries: sol.meta.retries,
            note: sol.meta.note.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: Self = serde_json::from_str(text)?;
        if !r.rotation_angles.is_empty() && r.rotation_angles.len() + 1 != r.center.len() {
            return Err(Error::DimensionMismatch {
                expected: r.center.len().saturating_sub(1),
                got: r.rotation_angles.len(),
            });
        }
        Ok(r)
    }
}

/// Result JSON with `elapsed_ms` zeroed, for byte comparisons between runs.
pub fn result_json_without_timing(sol: &AnnulusSolution) -> String {
    let mut r = ResultRecord::from_solution(sol);
    r.elapsed_ms = 0.0;
    r.to_json()
}
