//! Encoding of 2-D positions and labeled scenes with convolutive powers.
//!
//! A point `(x, y)` becomes `X^x ⊗ Y^y` for a pair of unitary axis vectors.
//! Point sets are sums of point encodings; labeled scenes bind each object's
//! point encoding to its class vector before summing. Querying a scene for a
//! class binds it with the involution of the class vector, and a heatmap
//! compares the result against point encodings sampled on a regular grid.

use rand::Rng;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{self, HrrVector, UNITARY_TOLERANCE};
use crate::error::{HdcError, Result};

/// Unitary basis vectors for the two spatial axes.
#[derive(Debug, Clone)]
pub struct SpatialAxes {
    x_axis: HrrVector,
    y_axis: HrrVector,
}

impl SpatialAxes {
    pub fn new(x_axis: HrrVector, y_axis: HrrVector) -> Result<Self> {
        if x_axis.dim() != y_axis.dim() {
            return Err(HdcError::DimensionMismatch { left: x_axis.dim(), right: y_axis.dim() });
        }
        if !x_axis.is_unitary(UNITARY_TOLERANCE) || !y_axis.is_unitary(UNITARY_TOLERANCE) {
            return Err(HdcError::InvalidAxes("both axes must be unitary".into()));
        }
        if x_axis == y_axis {
            return Err(HdcError::InvalidAxes("x and y axes are identical".into()));
        }
        Ok(Self { x_axis, y_axis })
    }

    /// Draws each axis from its own generator.
    pub fn random<R: Rng + ?Sized>(dim: usize, x_rng: &mut R, y_rng: &mut R) -> Result<Self> {
        let x = HrrVector::random_unitary(dim, x_rng)?;
        let y = HrrVector::random_unitary(dim, y_rng)?;
        Self::new(x, y)
    }

    pub fn dim(&self) -> usize {
        self.x_axis.dim()
    }

    pub fn x_axis(&self) -> &HrrVector {
        &self.x_axis
    }

    pub fn y_axis(&self) -> &HrrVector {
        &self.y_axis
    }

    /// `X^x ⊗ Y^y`.
    pub fn encode_point(&self, x: f64, y: f64) -> Result<HrrVector> {
        if !x.is_finite() || !y.is_finite() {
            return Err(HdcError::NonFiniteCoordinate { x, y });
        }
        self.x_axis.power(x)?.bind(&self.y_axis.power(y)?)
    }

    /// Sum of point encodings, not normalized.
    pub fn encode_point_set(&self, points: &[(f64, f64)]) -> Result<HrrVector> {
        if points.is_empty() {
            return Err(HdcError::EmptyInput("encode_point_set needs at least one point"));
        }
        let mut acc = HrrVector::zeros(self.dim())?;
        for &(x, y) in points {
            acc.add_assign(&self.encode_point(x, y)?);
        }
        Ok(acc)
    }

    /// `sum_i label(class_i) ⊗ X^{x_i} ⊗ Y^{y_i}`. An empty scene encodes to
    /// the zero vector.
    pub fn encode_scene(&self, scene: &LabeledScene) -> Result<HrrVector> {
        if let Some(label) = scene.vocabulary.first() {
            if label.dim() != self.dim() {
                return Err(HdcError::DimensionMismatch { left: self.dim(), right: label.dim() });
            }
        }
        let mut acc = HrrVector::zeros(self.dim())?;
        for obj in &scene.objects {
            let label = scene.label(obj.class_id)?;
            acc.add_assign(&label.bind(&self.encode_point(obj.x, obj.y)?)?);
        }
        Ok(acc)
    }
}

/// Unbinds a class label from a scene vector, leaving the (noisy) bundle of
/// that class's positions.
pub fn query_class(scene_vec: &HrrVector, label: &HrrVector) -> Result<HrrVector> {
    scene_vec.bind(&label.involution())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabeledObject {
    pub class_id: usize,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone)]
pub struct LabeledScene {
    objects: Vec<LabeledObject>,
    vocabulary: Vec<HrrVector>,
}

impl LabeledScene {
    pub fn new(objects: Vec<LabeledObject>, vocabulary: Vec<HrrVector>) -> Result<Self> {
        if let Some(first) = vocabulary.first() {
            if let Some(bad) = vocabulary.iter().find(|v| v.dim() != first.dim()) {
                return Err(HdcError::DimensionMismatch { left: first.dim(), right: bad.dim() });
            }
        }
        for obj in &objects {
            if !obj.x.is_finite() || !obj.y.is_finite() {
                return Err(HdcError::NonFiniteCoordinate { x: obj.x, y: obj.y });
            }
            if obj.class_id >= vocabulary.len() {
                return Err(HdcError::ClassOutOfRange { class_id: obj.class_id, vocabulary: vocabulary.len() });
            }
        }
        Ok(Self { objects, vocabulary })
    }

    /// Scene with `classes` fresh random unit labels.
    pub fn with_random_vocabulary<R: Rng + ?Sized>(
        objects: Vec<LabeledObject>,
        classes: usize,
        dim: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let vocabulary = (0..classes).map(|_| HrrVector::random_unit(dim, rng)).collect::<Result<_>>()?;
        Self::new(objects, vocabulary)
    }

    pub fn objects(&self) -> &[LabeledObject] {
        &self.objects
    }

    pub fn vocabulary(&self) -> &[HrrVector] {
        &self.vocabulary
    }

    pub fn label(&self, class_id: usize) -> Result<&HrrVector> {
        self.vocabulary.get(class_id).ok_or(HdcError::ClassOutOfRange { class_id, vocabulary: self.vocabulary.len() })
    }

    pub fn objects_of_class(&self, class_id: usize) -> impl Iterator<Item = &LabeledObject> {
        self.objects.iter().filter(move |o| o.class_id == class_id)
    }

    /// Every pair of labels has `|similarity| < strong threshold`. Random
    /// vocabularies violate this occasionally, so it is reported rather than
    /// enforced.
    pub fn vocabulary_is_quasi_orthogonal(&self) -> bool {
        let Some(first) = self.vocabulary.first() else { return true };
        let strong = algebra::thresholds(first.dim()).strong;
        self.vocabulary.iter().enumerate().all(|(i, a)| {
            self.vocabulary[i + 1..].iter().all(|b| algebra::dot(a.as_slice(), b.as_slice()).abs() < strong)
        })
    }
}

/// Regular sampling grid; coordinates include both endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for GridSpec {
    /// `[-5, 5]²` at spacing 0.25.
    fn default() -> Self {
        Self { x_min: -5.0, x_max: 5.0, y_min: -5.0, y_max: 5.0, nx: 41, ny: 41 }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max].iter().all(|v| v.is_finite());
        if !finite {
            return Err(HdcError::InvalidGrid("bounds must be finite".into()));
        }
        if self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(HdcError::InvalidGrid(format!(
                "need x_min < x_max and y_min < y_max, got [{}, {}] x [{}, {}]",
                self.x_min, self.x_max, self.y_min, self.y_max
            )));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(HdcError::InvalidGrid(format!(
                "need at least 2 samples per axis, got {}x{}",
                self.nx, self.ny
            )));
        }
        Ok(())
    }

    pub fn cells(&self) -> usize {
        self.nx * self.ny
    }

    pub fn x_coord(&self, ix: usize) -> f64 {
        lerp(self.x_min, self.x_max, ix, self.nx)
    }

    pub fn y_coord(&self, iy: usize) -> f64 {
        lerp(self.y_min, self.y_max, iy, self.ny)
    }

    pub fn x_coords(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.x_coord(i)).collect()
    }

    pub fn y_coords(&self) -> Vec<f64> {
        (0..self.ny).map(|i| self.y_coord(i)).collect()
    }

    /// Cell index nearest to `(x, y)`, clamped to the grid.
    pub fn nearest_cell(&self, x: f64, y: f64) -> (usize, usize) {
        let pick = |v: f64, lo: f64, hi: f64, n: usize| {
            let t = (v - lo) / (hi - lo) * (n - 1) as f64;
            t.round().clamp(0.0, (n - 1) as f64) as usize
        };
        (pick(x, self.x_min, self.x_max, self.nx), pick(y, self.y_min, self.y_max, self.ny))
    }
}

fn lerp(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

/// How heatmap cells are read out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Readout {
    /// Scale the query to unit norm first (cosine reading).
    pub normalize: bool,
    /// Report `|similarity|`; signed values when false.
    pub absolute: bool,
}

impl Readout {
    pub const fn new(normalize: bool) -> Self {
        Self { normalize, absolute: true }
    }
}

/// Similarities over a grid. `values` is row-major with one row per y sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityHeatmap {
    pub grid: GridSpec,
    pub readout: Readout,
    values: Vec<f64>,
}

impl SimilarityHeatmap {
    pub fn from_values(grid: GridSpec, readout: Readout, values: Vec<f64>) -> Result<Self> {
        grid.validate()?;
        if values.len() != grid.cells() {
            return Err(HdcError::InvalidGrid(format!("{} values for a {}x{} grid", values.len(), grid.nx, grid.ny)));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(HdcError::NonFinite(i));
        }
        Ok(Self { grid, readout, values })
    }

    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.grid.nx + ix]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.grid.nx)
    }

    /// Largest cell value and its `(ix, iy)`; first in row-major order on ties.
    pub fn argmax(&self) -> (usize, usize, f64) {
        let (i, v) =
            self.values
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
        (i % self.grid.nx, i / self.grid.nx, v)
    }

    /// Cellwise maximum of several heatmaps over the same grid.
    pub fn max_of(maps: &[SimilarityHeatmap]) -> Result<Self> {
        let first = maps.first().ok_or(HdcError::EmptyInput("max_of needs at least one heatmap"))?;
        let mut values = first.values.clone();
        for m in &maps[1..] {
            if m.grid != first.grid {
                return Err(HdcError::InvalidGrid("heatmaps cover different grids".into()));
            }
            for (a, b) in values.iter_mut().zip(&m.values) {
                *a = a.max(*b);
            }
        }
        Ok(Self { grid: first.grid, readout: first.readout, values })
    }
}

/// Point encodings for every grid cell, precomputed for one pair of axes.
#[derive(Debug, Clone)]
pub struct GridProbe {
    grid: GridSpec,
    dim: usize,
    /// Row-major, one row per y sample.
    cells: Vec<HrrVector>,
}

impl GridProbe {
    pub fn new(axes: &SpatialAxes, grid: &GridSpec) -> Result<Self> {
        grid.validate()?;
        let spectra = |axis: &HrrVector, coords: Vec<f64>| -> Result<Vec<Vec<Complex64>>> {
            coords.into_iter().map(|c| Ok(algebra::forward(axis.power(c)?.as_slice()))).collect()
        };
        let xs = spectra(axes.x_axis(), grid.x_coords())?;
        let ys = spectra(axes.y_axis(), grid.y_coords())?;
        let mut cells = Vec::with_capacity(grid.cells());
        for y_spec in &ys {
            for x_spec in &xs {
                cells.push(HrrVector::new(algebra::bind_spectra(x_spec, y_spec))?);
            }
        }
        Ok(Self { grid: *grid, dim: axes.dim(), cells })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn cell(&self, ix: usize, iy: usize) -> &HrrVector {
        &self.cells[iy * self.grid.nx + ix]
    }

    pub fn heatmap(&self, query: &HrrVector, readout: Readout) -> Result<SimilarityHeatmap> {
        if query.dim() != self.dim {
            return Err(HdcError::DimensionMismatch { left: self.dim, right: query.dim() });
        }
        let norm = query.norm();
        let scale = if readout.normalize && norm > 0.0 { 1.0 / norm } else { 1.0 };
        let values = self
            .cells
            .iter()
            .map(|p| {
                let s = algebra::dot(query.as_slice(), p.as_slice()) * scale;
                if readout.absolute {
                    s.abs()
                } else {
                    s
                }
            })
            .collect();
        Ok(SimilarityHeatmap { grid: self.grid, readout, values })
    }
}

/// `|similarity(query, X^x ⊗ Y^y)|` at every grid node. With `normalize` the
/// query is scaled to unit norm first.
pub fn heatmap(query: &HrrVector, axes: &SpatialAxes, grid: &GridSpec, normalize: bool) -> Result<SimilarityHeatmap> {
    GridProbe::new(axes, grid)?.heatmap(query, Readout::new(normalize))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

/// Strict local maxima over the 4-neighborhood with `value >= threshold`,
/// highest first; ties keep row-major order.
pub fn decode_peaks(hm: &SimilarityHeatmap, threshold: f64) -> Vec<Peak> {
    let (nx, ny) = (hm.grid.nx, hm.grid.ny);
    let mut peaks = Vec::new();
    for iy in 0..ny {
        for ix in 0..nx {
            let v = hm.value(ix, iy);
            if v < threshold {
                continue;
            }
            let mut neighbors = Vec::with_capacity(4);
            if ix > 0 {
                neighbors.push(hm.value(ix - 1, iy));
            }
            if ix + 1 < nx {
                neighbors.push(hm.value(ix + 1, iy));
            }
            if iy > 0 {
                neighbors.push(hm.value(ix, iy - 1));
            }
            if iy + 1 < ny {
                neighbors.push(hm.value(ix, iy + 1));
            }
            if neighbors.iter().all(|&n| v > n) {
                peaks.push(Peak { x: hm.grid.x_coord(ix), y: hm.grid.y_coord(iy), value: v });
            }
        }
    }
    peaks.sort_by(|a, b| b.value.total_cmp(&a.value));
    peaks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedTree;

    fn axes(dim: usize, seed: u64) -> SpatialAxes {
        let tree = SeedTree::new(seed);
        SpatialAxes::random(dim, &mut tree.stream(&[1]), &mut tree.stream(&[2])).unwrap()
    }

    fn max_abs_diff(a: &HrrVector, b: &HrrVector) -> f64 {
        a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn axes_validation() {
        let mut rng = SeedTree::new(0).stream(&[0]);
        let u = HrrVector::random_unitary(64, &mut rng).unwrap();
        let w = HrrVector::random_unit(64, &mut rng).unwrap();
        assert!(SpatialAxes::new(u.clone(), u.clone()).is_err());
        assert!(SpatialAxes::new(u.clone(), w).is_err());
        let short = HrrVector::random_unitary(32, &mut rng).unwrap();
        assert!(SpatialAxes::new(u, short).is_err());
    }

    #[test]
    fn origin_encodes_to_identity() {
        let a = axes(128, 1);
        let v = a.encode_point(0.0, 0.0).unwrap();
        assert!(max_abs_diff(&v, &HrrVector::identity(128).unwrap()) < 1e-10);
    }

    #[test]
    fn point_encoding_is_unit_norm() {
        let a = axes(512, 2);
        let v = a.encode_point(2.3, -1.7).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-9);
        assert!((v.similarity(&v).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn non_finite_coordinates_rejected() {
        let a = axes(64, 3);
        assert!(matches!(a.encode_point(f64::NAN, 0.0), Err(HdcError::NonFiniteCoordinate { .. })));
        assert!(a.encode_point(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn point_set_edge_cases() {
        let a = axes(64, 4);
        assert!(a.encode_point_set(&[]).is_err());
        let single = a.encode_point_set(&[(1.0, 2.0)]).unwrap();
        assert!(max_abs_diff(&single, &a.encode_point(1.0, 2.0).unwrap()) < 1e-12);
        let p = a.encode_point_set(&[(1.0, 2.0), (-0.5, 3.0), (2.5, -1.0)]).unwrap();
        let q = a.encode_point_set(&[(2.5, -1.0), (1.0, 2.0), (-0.5, 3.0)]).unwrap();
        assert!(max_abs_diff(&p, &q) < 1e-12);
    }

    #[test]
    fn scene_construction_checks_classes() {
        let mut rng = SeedTree::new(5).stream(&[0]);
        let obj = LabeledObject { class_id: 2, x: 0.0, y: 0.0 };
        let err = LabeledScene::with_random_vocabulary(vec![obj], 2, 64, &mut rng).unwrap_err();
        assert!(matches!(err, HdcError::ClassOutOfRange { class_id: 2, vocabulary: 2 }));
        let nan = LabeledObject { class_id: 0, x: f64::NAN, y: 0.0 };
        assert!(LabeledScene::with_random_vocabulary(vec![nan], 1, 64, &mut rng).is_err());
    }

    #[test]
    fn scene_terms_match_hand_construction() {
        let a = axes(256, 6);
        let mut rng = SeedTree::new(6).stream(&[9]);
        let objects = vec![
            LabeledObject { class_id: 0, x: 1.0, y: 2.0 },
            LabeledObject { class_id: 0, x: -2.0, y: 0.5 },
            LabeledObject { class_id: 1, x: 3.0, y: -1.0 },
        ];
        let scene = LabeledScene::with_random_vocabulary(objects.clone(), 2, 256, &mut rng).unwrap();
        let v0 = &scene.vocabulary()[0];
        let v1 = &scene.vocabulary()[1];
        let term = |v: &HrrVector, x, y| {
            v.bind(&a.x_axis().power(x).unwrap()).unwrap().bind(&a.y_axis().power(y).unwrap()).unwrap()
        };
        // Two objects of one class, then a second class.
        let same_class = term(v0, 1.0, 2.0).add(&term(v0, -2.0, 0.5)).unwrap();
        let two_scene = LabeledScene::new(objects[..2].to_vec(), scene.vocabulary().to_vec()).unwrap();
        assert!(max_abs_diff(&a.encode_scene(&two_scene).unwrap(), &same_class) < 1e-12);
        let mixed = term(v0, 1.0, 2.0).add(&term(v1, 3.0, -1.0)).unwrap();
        let mixed_scene = LabeledScene::new(vec![objects[0], objects[2]], scene.vocabulary().to_vec()).unwrap();
        assert!(max_abs_diff(&a.encode_scene(&mixed_scene).unwrap(), &mixed) < 1e-12);
    }

    #[test]
    fn empty_scene_queries_to_zero() {
        let a = axes(64, 7);
        let mut rng = SeedTree::new(7).stream(&[0]);
        let scene = LabeledScene::with_random_vocabulary(vec![], 1, 64, &mut rng).unwrap();
        let s = a.encode_scene(&scene).unwrap();
        let q = query_class(&s, &scene.vocabulary()[0]).unwrap();
        assert!(q.as_slice().iter().all(|&x| x == 0.0));
        let hm = heatmap(&q, &a, &GridSpec::default(), true).unwrap();
        assert!(hm.values().iter().all(|&v| v == 0.0));
        assert!(decode_peaks(&hm, 0.0).is_empty());
    }

    #[test]
    fn grid_coordinates_hit_endpoints() {
        let g = GridSpec::default();
        let xs = g.x_coords();
        assert_eq!(xs.len(), 41);
        assert_eq!(xs[0], -5.0);
        assert_eq!(xs[40], 5.0);
        assert_eq!(xs[20], 0.0);
        assert!((xs[1] - xs[0] - 0.25).abs() < 1e-15);
        assert_eq!(g.nearest_cell(0.1, -4.9), (20, 0));
        assert_eq!(g.nearest_cell(9.0, -9.0), (40, 0));
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec { nx: 1, ..GridSpec::default() }.validate().is_err());
        let mut g = GridSpec::default();
        g.x_max = g.x_min;
        assert!(g.validate().is_err());
        let a = axes(32, 8);
        let q = HrrVector::zeros(32).unwrap();
        assert!(heatmap(&q, &a, &g, false).is_err());
    }

    #[test]
    fn self_similarity_at_grid_node() {
        let a = axes(256, 9);
        let q = a.encode_point(1.25, -0.5).unwrap();
        let hm = heatmap(&q, &a, &GridSpec::default(), true).unwrap();
        let (ix, iy) = hm.grid.nearest_cell(1.25, -0.5);
        assert!((hm.value(ix, iy) - 1.0).abs() < 1e-9);
        assert_eq!(hm.argmax().0, ix);
        assert_eq!(hm.argmax().1, iy);
    }

    #[test]
    fn probe_cells_match_encode_point() {
        let a = axes(128, 10);
        let grid = GridSpec { x_min: -1.0, x_max: 1.0, y_min: 0.0, y_max: 2.0, nx: 3, ny: 5 };
        let probe = GridProbe::new(&a, &grid).unwrap();
        for iy in 0..5 {
            for ix in 0..3 {
                let direct = a.encode_point(grid.x_coord(ix), grid.y_coord(iy)).unwrap();
                assert!(max_abs_diff(probe.cell(ix, iy), &direct) < 1e-12);
            }
        }
    }

    #[test]
    fn signed_readout_keeps_sign() {
        let a = axes(64, 11);
        let q = a.encode_point(0.0, 0.0).unwrap().scaled(-1.0);
        let probe = GridProbe::new(&a, &GridSpec::default()).unwrap();
        let signed = probe.heatmap(&q, Readout { normalize: true, absolute: false }).unwrap();
        let abs = probe.heatmap(&q, Readout::new(true)).unwrap();
        assert!((signed.value(20, 20) + 1.0).abs() < 1e-9);
        assert!((abs.value(20, 20) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn peaks_on_handmade_maps() {
        let grid = GridSpec { x_min: 0.0, x_max: 2.0, y_min: 0.0, y_max: 2.0, nx: 3, ny: 3 };
        let flat = SimilarityHeatmap::from_values(grid, Readout::new(false), vec![0.5; 9]).unwrap();
        assert!(decode_peaks(&flat, 0.0).is_empty());
        let values = vec![0.9, 0.1, 0.9, 0.1, 0.2, 0.1, 0.3, 0.1, 0.95];
        let hm = SimilarityHeatmap::from_values(grid, Readout::new(false), values).unwrap();
        let peaks = decode_peaks(&hm, 0.25);
        let coords: Vec<_> = peaks.iter().map(|p| (p.x, p.y)).collect();
        // 0.95 first, then the two 0.9 ties in row-major order, then 0.3.
        assert_eq!(coords, vec![(2.0, 2.0), (0.0, 0.0), (2.0, 0.0), (0.0, 2.0)]);
        assert_eq!(decode_peaks(&hm, 0.92).len(), 1);
        assert!(SimilarityHeatmap::from_values(grid, Readout::new(false), vec![0.0; 8]).is_err());
    }

    #[test]
    fn max_of_heatmaps() {
        let grid = GridSpec { x_min: 0.0, x_max: 1.0, y_min: 0.0, y_max: 1.0, nx: 2, ny: 2 };
        let r = Readout::new(true);
        let a = SimilarityHeatmap::from_values(grid, r, vec![0.1, 0.5, 0.2, 0.0]).unwrap();
        let b = SimilarityHeatmap::from_values(grid, r, vec![0.3, 0.4, 0.1, 0.7]).unwrap();
        assert_eq!(SimilarityHeatmap::max_of(&[a, b]).unwrap().values(), &[0.3, 0.5, 0.2, 0.7]);
        assert!(SimilarityHeatmap::max_of(&[]).is_err());
    }
}
