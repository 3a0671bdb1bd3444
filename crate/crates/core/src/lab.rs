//! Capacity experiments.
//!
//! Two drivers produce [`CapacityRecord`]s: [`run_superposition`] bundles `n`
//! random vectors and compares the bundle with its members and with the same
//! number of outsiders; [`run_spatial`] encodes labeled scenes for every
//! partition of `n` objects into classes and reads each class back through a
//! heatmap, splitting grid cells into members (inside the `eps` box around an
//! encoded position) and non-members.
//!
//! Every task draws from a stream addressed by its coordinates, so results
//! do not depend on scheduling or on the size of the thread pool.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{superpose, HrrVector};
use crate::error::{HdcError, Result};
use crate::partition::{partition_count, Partition, Partitions};
use crate::rng::{purpose, SeedTree};
use crate::spatial::{query_class, GridProbe, GridSpec, LabeledObject, LabeledScene, Readout, SpatialAxes};
use crate::stats::BoxStats;

/// Smallest dimension either experiment accepts.
pub const MIN_EXPERIMENT_DIM: usize = 16;

/// Largest `n` whose partitions are enumerated in full without
/// `max_partitions`.
pub const FULL_ENUMERATION_LIMIT: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Superposition,
    Spatial,
}

impl Experiment {
    pub fn as_str(&self) -> &'static str {
        match self {
            Experiment::Superposition => "superposition",
            Experiment::Spatial => "spatial",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Member,
    Nonmember,
}

impl Role {
    pub fn as_str(&self) -> &'static str {
        match self {
            Role::Member => "member",
            Role::Nonmember => "nonmember",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Raw dot products kept next to the cosine readings of a superposition run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawDots {
    pub member: Vec<f64>,
    pub nonmember: Vec<f64>,
}

/// One observation: a bundle (superposition) or one class query (spatial).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityRecord {
    pub experiment: Experiment,
    pub dim: usize,
    pub n_total: usize,
    pub partition: Option<Partition>,
    /// Position of the queried class within the partition.
    pub class_index: Option<usize>,
    pub class_size: Option<usize>,
    pub trial: usize,
    pub member_sims: Vec<f64>,
    pub nonmember_sims: Vec<f64>,
    pub raw: Option<RawDots>,
}

impl CapacityRecord {
    pub fn samples(&self, role: Role) -> &[f64] {
        match role {
            Role::Member => &self.member_sims,
            Role::Nonmember => &self.nonmember_sims,
        }
    }

    fn sort_key(&self) -> (Experiment, usize, usize, Option<&Partition>, usize, Option<usize>) {
        (self.experiment, self.dim, self.n_total, self.partition.as_ref(), self.trial, self.class_index)
    }
}

/// Canonical output order: experiment, dim, n, partition (enumeration
/// order), trial, class.
pub fn sort_records(records: &mut [CapacityRecord]) {
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

fn sorted_unique(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() {
        return Err(HdcError::InvalidConfig("at least one dimension is required".into()));
    }
    if let Some(d) = dims.iter().find(|&&d| d < MIN_EXPERIMENT_DIM) {
        return Err(HdcError::InvalidConfig(format!("dimension {d} is below the minimum of {MIN_EXPERIMENT_DIM}")));
    }
    Ok(())
}

fn check_n_values(n_values: &[usize]) -> Result<()> {
    if n_values.is_empty() {
        return Err(HdcError::InvalidConfig("at least one n value is required".into()));
    }
    if n_values.contains(&0) {
        return Err(HdcError::InvalidConfig("n values must be at least 1".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuperpositionConfig {
    pub dims: Vec<usize>,
    pub n_values: Vec<usize>,
    /// Random vocabularies drawn per `(dim, n)`.
    pub vocab_repeats: usize,
    pub seed: u64,
}

impl Default for SuperpositionConfig {
    fn default() -> Self {
        let mut n_values = vec![1];
        n_values.extend((5..=200).step_by(5));
        Self { dims: vec![256, 512, 1024], n_values, vocab_repeats: 3, seed: 0 }
    }
}

impl SuperpositionConfig {
    pub fn validate(&self) -> Result<()> {
        check_dims(&self.dims)?;
        check_n_values(&self.n_values)?;
        if self.vocab_repeats == 0 {
            return Err(HdcError::InvalidConfig("vocab_repeats must be at least 1".into()));
        }
        Ok(())
    }
}

/// One bundle of `n` random unit vectors at dimension `dim`, drawn from the
/// stream for `(dim, n, repeat)`.
pub fn superposition_trial(tree: &SeedTree, dim: usize, n: usize, repeat: usize) -> Result<CapacityRecord> {
    let mut rng = tree.stream(&[purpose::SUPERPOSITION, dim as u64, n as u64, repeat as u64]);
    let vocab = (0..2 * n).map(|_| HrrVector::random_unit(dim, &mut rng)).collect::<Result<Vec<_>>>()?;
    let (members, outsiders) = vocab.split_at(n);
    let bundle = superpose(members)?;
    let read = |vs: &[HrrVector]| -> Result<(Vec<f64>, Vec<f64>)> {
        let mut cos = Vec::with_capacity(vs.len());
        let mut raw = Vec::with_capacity(vs.len());
        for v in vs {
            cos.push(bundle.cosine(v)?);
            raw.push(bundle.similarity(v)?);
        }
        Ok((cos, raw))
    };
    let (member_sims, member_raw) = read(members)?;
    let (nonmember_sims, nonmember_raw) = read(outsiders)?;
    Ok(CapacityRecord {
        experiment: Experiment::Superposition,
        dim,
        n_total: n,
        partition: None,
        class_index: None,
        class_size: None,
        trial: repeat,
        member_sims,
        nonmember_sims,
        raw: Some(RawDots { member: member_raw, nonmember: nonmember_raw }),
    })
}

/// One record per `(dim, n, repeat)`, in that nesting order.
pub fn run_superposition(config: &SuperpositionConfig) -> Result<Vec<CapacityRecord>> {
    config.validate()?;
    let tree = SeedTree::new(config.seed);
    let mut tasks = Vec::new();
    for &dim in &sorted_unique(config.dims.clone()) {
        for &n in &sorted_unique(config.n_values.clone()) {
            for repeat in 0..config.vocab_repeats {
                tasks.push((dim, n, repeat));
            }
        }
    }
    tasks.into_par_iter().map(|(dim, n, repeat)| superposition_trial(&tree, dim, n, repeat)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpatialConfig {
    pub dims: Vec<usize>,
    pub n_values: Vec<usize>,
    /// Trials per `(dim, n, partition)`.
    pub trials: usize,
    pub grid: GridSpec,
    /// Half-width of the per-axis membership box, in scene units.
    pub membership_eps: f64,
    /// Positions are drawn uniformly from `[lo, hi]²`.
    pub coord_range: [f64; 2],
    pub seed: u64,
    /// When set, `n` values with more partitions than this are sampled
    /// down to this many.
    pub max_partitions: Option<usize>,
    /// All objects of a class share one position instead of drawing their own.
    pub duplicate_positions: bool,
    /// Cosine readout of the class query. When false the raw dot product
    /// against the unit-norm grid vectors is used.
    pub normalize_query: bool,
}

impl Default for SpatialConfig {
    fn default() -> Self {
        Self {
            dims: vec![256, 512, 1024],
            n_values: (1..=12).collect(),
            trials: 3,
            grid: GridSpec::default(),
            membership_eps: 0.4,
            coord_range: [-4.0, 4.0],
            seed: 0,
            max_partitions: None,
            duplicate_positions: false,
            normalize_query: true,
        }
    }
}

impl SpatialConfig {
    pub fn validate(&self) -> Result<()> {
        check_dims(&self.dims)?;
        check_n_values(&self.n_values)?;
        if self.trials == 0 {
            return Err(HdcError::InvalidConfig("trials must be at least 1".into()));
        }
        self.grid.validate()?;
        let eps = self.membership_eps;
        if !(eps.is_finite() && eps > 0.0) {
            return Err(HdcError::InvalidConfig(format!("membership eps must be positive, got {eps}")));
        }
        let [lo, hi] = self.coord_range;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(HdcError::InvalidConfig(format!("bad coordinate range [{lo}, {hi}]")));
        }
        let g = &self.grid;
        if lo - eps < g.x_min || hi + eps > g.x_max || lo - eps < g.y_min || hi + eps > g.y_max {
            return Err(HdcError::InvalidConfig(format!(
                "coordinate range [{lo}, {hi}] widened by eps {eps} leaves the grid window"
            )));
        }
        if self.max_partitions == Some(0) {
            return Err(HdcError::InvalidConfig("max_partitions must be at least 1".into()));
        }
        for &n in &self.n_values {
            // Range check first so n > 64 reports the right error.
            Partitions::new(n)?;
            if n > FULL_ENUMERATION_LIMIT && self.max_partitions.is_none() {
                return Err(HdcError::PartitionCapExceeded {
                    n,
                    count: partition_count(n) as usize,
                    limit: FULL_ENUMERATION_LIMIT,
                });
            }
        }
        Ok(())
    }
}

/// Partitions of `n` to run, each paired with its index in the full
/// enumeration. Sampling, when it applies, is uniform without replacement
/// and depends only on `(seed, n)`.
pub fn select_partitions(tree: &SeedTree, n: usize, max_partitions: Option<usize>) -> Result<Vec<(usize, Partition)>> {
    let count = partition_count(n) as usize;
    let all = Partitions::new(n)?;
    match max_partitions {
        Some(cap) if cap < count => {
            let mut rng = tree.stream(&[purpose::SPATIAL, purpose::PARTITION_SAMPLE, n as u64]);
            let mut picked = rand::seq::index::sample(&mut rng, count, cap).into_vec();
            picked.sort_unstable();
            let mut wanted = picked.into_iter().peekable();
            let mut out = Vec::with_capacity(cap);
            for (i, p) in all.enumerate() {
                match wanted.peek() {
                    Some(&w) if w == i => {
                        out.push((i, p));
                        wanted.next();
                    }
                    Some(_) => {}
                    None => break,
                }
            }
            Ok(out)
        }
        _ => Ok(all.enumerate().collect()),
    }
}

/// Per-axis box test around every object of the queried class.
fn is_member(objects: &[LabeledObject], x: f64, y: f64, eps: f64) -> bool {
    objects.iter().any(|o| (o.x - x).abs() < eps && (o.y - y).abs() < eps)
}

/// One spatial trial: a scene for `partition`, queried once per class.
pub fn spatial_trial(
    config: &SpatialConfig,
    tree: &SeedTree,
    dim: usize,
    partition_index: usize,
    partition: &Partition,
    trial: usize,
) -> Result<Vec<CapacityRecord>> {
    let n = partition.total();
    let path = |tag: u64| [purpose::SPATIAL, dim as u64, n as u64, partition_index as u64, trial as u64, tag];
    let axes =
        SpatialAxes::random(dim, &mut tree.stream(&path(purpose::AXIS_X)), &mut tree.stream(&path(purpose::AXIS_Y)))?;

    let mut pos_rng = tree.stream(&path(purpose::POSITIONS));
    let [lo, hi] = config.coord_range;
    let mut draw = move || -> (f64, f64) {
        if lo == hi {
            (lo, lo)
        } else {
            (pos_rng.random_range(lo..=hi), pos_rng.random_range(lo..=hi))
        }
    };
    let mut objects = Vec::with_capacity(n);
    for (class_id, &k) in partition.parts().iter().enumerate() {
        let shared = draw();
        for l in 0..k {
            let (x, y) = if config.duplicate_positions || l == 0 { shared } else { draw() };
            objects.push(LabeledObject { class_id, x, y });
        }
    }
    let scene = LabeledScene::with_random_vocabulary(
        objects,
        partition.len(),
        dim,
        &mut tree.stream(&path(purpose::VOCABULARY)),
    )?;
    let encoded = axes.encode_scene(&scene)?;
    let probe = GridProbe::new(&axes, &config.grid)?;
    let grid = config.grid;

    let mut records = Vec::with_capacity(partition.len());
    for (class_id, &k) in partition.parts().iter().enumerate() {
        let query = query_class(&encoded, scene.label(class_id)?)?;
        let hm = probe.heatmap(&query, Readout::new(config.normalize_query))?;
        let class_objects: Vec<LabeledObject> = scene.objects_of_class(class_id).copied().collect();
        let mut member_sims = Vec::new();
        let mut nonmember_sims = Vec::new();
        for iy in 0..grid.ny {
            let y = grid.y_coord(iy);
            for ix in 0..grid.nx {
                let v = hm.value(ix, iy);
                if is_member(&class_objects, grid.x_coord(ix), y, config.membership_eps) {
                    member_sims.push(v);
                } else {
                    nonmember_sims.push(v);
                }
            }
        }
        records.push(CapacityRecord {
            experiment: Experiment::Spatial,
            dim,
            n_total: n,
            partition: Some(partition.clone()),
            class_index: Some(class_id),
            class_size: Some(k),
            trial,
            member_sims,
            nonmember_sims,
            raw: None,
        });
    }
    Ok(records)
}

/// One record per class query, ordered by `(dim, n, partition, trial, class)`.
pub fn run_spatial(config: &SpatialConfig) -> Result<Vec<CapacityRecord>> {
    config.validate()?;
    let tree = SeedTree::new(config.seed);
    let mut tasks = Vec::new();
    for &dim in &sorted_unique(config.dims.clone()) {
        for &n in &sorted_unique(config.n_values.clone()) {
            for (index, partition) in select_partitions(&tree, n, config.max_partitions)? {
                for trial in 0..config.trials {
                    tasks.push((dim, index, partition.clone(), trial));
                }
            }
        }
    }
    let nested: Vec<Vec<CapacityRecord>> = tasks
        .into_par_iter()
        .map(|(dim, index, partition, trial)| spatial_trial(config, &tree, dim, index, &partition, trial))
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// Spatial samples pooled by `(dim, class size)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassSizeGroup {
    pub dim: usize,
    pub class_size: usize,
    /// Number of class queries pooled.
    pub queries: usize,
    pub member_sims: Vec<f64>,
    pub nonmember_sims: Vec<f64>,
}

/// Pools per-class samples of identical class size across partitions and
/// `n`. Records without a class size are skipped.
pub fn group_by_class_size(records: &[CapacityRecord]) -> Vec<ClassSizeGroup> {
    let mut groups: BTreeMap<(usize, usize), ClassSizeGroup> = BTreeMap::new();
    for r in records {
        let Some(k) = r.class_size else { continue };
        let g = groups.entry((r.dim, k)).or_insert_with(|| ClassSizeGroup {
            dim: r.dim,
            class_size: k,
            queries: 0,
            member_sims: Vec::new(),
            nonmember_sims: Vec::new(),
        });
        g.queries += 1;
        g.member_sims.extend_from_slice(&r.member_sims);
        g.nonmember_sims.extend_from_slice(&r.nonmember_sims);
    }
    groups.into_values().collect()
}

/// Key for summary rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    /// `n_total` (superposition length, or objects per scene).
    TotalObjects,
    /// Objects per class; spatial records only.
    ClassSize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub experiment: Experiment,
    pub dim: usize,
    pub group_key: usize,
    pub role: Role,
    pub stats: BoxStats,
}

/// Box statistics per `(experiment, dim, key, role)`, sorted by that tuple.
/// Independent of record order.
pub fn summarize(records: &[CapacityRecord], grouping: Grouping) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(HdcError::EmptyInput("summarize needs at least one record"));
    }
    let mut pools: BTreeMap<(Experiment, usize, usize, Role), Vec<f64>> = BTreeMap::new();
    for r in records {
        let key = match grouping {
            Grouping::TotalObjects => r.n_total,
            Grouping::ClassSize => match r.class_size {
                Some(k) => k,
                None => continue,
            },
        };
        for role in [Role::Member, Role::Nonmember] {
            pools.entry((r.experiment, r.dim, key, role)).or_default().extend_from_slice(r.samples(role));
        }
    }
    pools
        .into_iter()
        .filter(|(_, samples)| !samples.is_empty())
        .map(|((experiment, dim, group_key, role), samples)| {
            Ok(SummaryRow { experiment, dim, group_key, role, stats: BoxStats::from_samples(&samples)? })
        })
        .collect()
}
