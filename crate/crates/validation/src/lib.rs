//! Acceptance criteria for the library and the `hdc` command line.
//!
//! Each criterion carries a pinned tolerance and a runtime budget;
//! [`evaluate`] runs one and reports a verdict with the measured numbers.
//! The `acceptance` test target prints one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use rand::Rng;

use hdc_core::lab::{spatial_trial, superposition_trial, SpatialConfig};
use hdc_core::partition::{partitions, Partition};
use hdc_core::reference;
use hdc_core::rng::{purpose, SeedTree};
use hdc_core::stats::{balanced_accuracy, fraction_below, mean, median, std_dev};
use hdc_core::{
    group_by_class_size, heatmap, query_class, thresholds, GridSpec, HrrVector, LabeledObject, LabeledScene,
    SpatialAxes,
};

type Verdict = Result<(bool, String), String>;

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

/// FFT binding against direct circular convolution.
fn convolution_oracle() -> Verdict {
    let tree = SeedTree::new(1);
    let mut worst = 0.0_f64;
    for dim in [4usize, 8, 64, 256] {
        let mut rng = tree.stream(&[dim as u64]);
        for _ in 0..100 {
            let a = HrrVector::random_unit(dim, &mut rng).map_err(e)?;
            let b = HrrVector::random_unit(dim, &mut rng).map_err(e)?;
            let direct = reference::circular_convolution(a.as_slice(), b.as_slice());
            worst = worst.max(max_abs_diff(a.bind(&b).map_err(e)?.as_slice(), &direct));
        }
    }
    Ok((worst <= 1e-10, format!("max elementwise error {worst:.2e} (<= 1e-10), D in {{4,8,64,256}} x 100 pairs")))
}

/// Power, identity, additivity, unbinding and norm identities at D = 512.
fn algebraic_identities() -> Verdict {
    let dim = 512;
    let mut rng = SeedTree::new(2).stream(&[dim as u64]);
    let e0 = HrrVector::identity(dim).map_err(e)?;
    let (mut p1, mut p0, mut add, mut unbind, mut norm) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..100 {
        let v = HrrVector::random_unit(dim, &mut rng).map_err(e)?;
        let u = HrrVector::random_unitary(dim, &mut rng).map_err(e)?;
        let (p, q): (f64, f64) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        p1 = p1.max(max_abs_diff(v.power(1.0).map_err(e)?.as_slice(), v.as_slice()));
        p0 = p0.max(max_abs_diff(v.power(0.0).map_err(e)?.as_slice(), e0.as_slice()));
        let sum = u.power(p).map_err(e)?.bind(&u.power(q).map_err(e)?).map_err(e)?;
        add = add.max(max_abs_diff(sum.as_slice(), u.power(p + q).map_err(e)?.as_slice()));
        let bound = u.bind(&v).map_err(e)?;
        unbind = unbind.max(max_abs_diff(bound.bind(&u.involution()).map_err(e)?.as_slice(), v.as_slice()));
        norm = norm.max((bound.norm() - v.norm()).abs());
    }
    let passed = p1 <= 1e-12 && p0 <= 1e-12 && add <= 1e-8 && unbind <= 1e-9 && norm <= 1e-9;
    Ok((
        passed,
        format!(
            "v^1 {p1:.1e}, v^0 {p0:.1e}, additivity {add:.1e} (<= 1e-8), unbinding {unbind:.1e} (<= 1e-9), norm {norm:.1e} (<= 1e-9)"
        ),
    ))
}

/// Mean and spread of the similarity of random unit pairs.
fn similarity_statistics() -> Verdict {
    let tree = SeedTree::new(3);
    let mut passed = true;
    let mut parts = Vec::new();
    for dim in [256usize, 512, 1024] {
        let mut rng = tree.stream(&[dim as u64]);
        let mut sims = Vec::with_capacity(10_000);
        for _ in 0..10_000 {
            let a = HrrVector::random_unit(dim, &mut rng).map_err(e)?;
            let b = HrrVector::random_unit(dim, &mut rng).map_err(e)?;
            sims.push(a.similarity(&b).map_err(e)?);
        }
        let sigma = 1.0 / (dim as f64).sqrt();
        let (m, sd) = (mean(&sims).unwrap(), std_dev(&sims).unwrap());
        passed &= m.abs() <= 0.005 && (sd / sigma - 1.0).abs() <= 0.10;
        parts.push(format!("D={dim}: mean {m:+.4}, sd/sigma {:.3}", sd / sigma));
    }
    Ok((passed, format!("{} (|mean| <= 0.005, sd within 10%)", parts.join("; "))))
}

/// Peaks of one- and two-point scenes and the non-member floor at D = 512.
fn peak_reproduction() -> Verdict {
    let dim = 512;
    let grid = GridSpec::default();
    let eps = 0.4;
    let t = thresholds(dim);
    let mut passed = true;
    let mut parts = Vec::new();
    for (points, target) in [(1usize, 0.7), (2, 0.5)] {
        let mut peaks = Vec::new();
        let mut nonmembers = Vec::new();
        for seed in 0..20u64 {
            let tree = SeedTree::new(seed);
            let path = |tag: u64| [purpose::HEATMAP, points as u64, tag];
            let axes = SpatialAxes::random(
                dim,
                &mut tree.stream(&path(purpose::AXIS_X)),
                &mut tree.stream(&path(purpose::AXIS_Y)),
            )
            .map_err(e)?;
            let mut pos = tree.stream(&path(purpose::POSITIONS));
            let objects: Vec<LabeledObject> = (0..points)
                .map(|_| LabeledObject { class_id: 0, x: pos.random_range(-4.0..4.0), y: pos.random_range(-4.0..4.0) })
                .collect();
            let scene = LabeledScene::with_random_vocabulary(
                objects.clone(),
                1,
                dim,
                &mut tree.stream(&path(purpose::VOCABULARY)),
            )
            .map_err(e)?;
            let query = query_class(&axes.encode_scene(&scene).map_err(e)?, scene.label(0).map_err(e)?).map_err(e)?;
            let hm = heatmap(&query, &axes, &grid, true).map_err(e)?;
            for o in &objects {
                let (ix, iy) = grid.nearest_cell(o.x, o.y);
                peaks.push(hm.value(ix, iy));
            }
            for iy in 0..grid.ny {
                for ix in 0..grid.nx {
                    let (x, y) = (grid.x_coord(ix), grid.y_coord(iy));
                    if !objects.iter().any(|o| (o.x - x).abs() < eps && (o.y - y).abs() < eps) {
                        nonmembers.push(hm.value(ix, iy));
                    }
                }
            }
        }
        let lo = peaks.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = peaks.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let below = fraction_below(&nonmembers, t.weak);
        let ok_peaks = peaks.iter().all(|p| (p - target).abs() <= 0.10 && *p > t.strong);
        let ok_floor = below >= 0.95;
        passed &= ok_peaks && ok_floor;
        parts.push(format!(
            "{points}-point peaks {lo:.3}..{hi:.3} (target {target:.2} +/- 0.10) {}, non-members below weak {:.1}% (>= 95%) {}",
            if ok_peaks { "ok" } else { "MISS" },
            100.0 * below,
            if ok_floor { "ok" } else { "MISS" }
        ));
    }
    Ok((passed, parts.join("; ")))
}

/// Median member cosine above/below the thresholds at the stated bundle sizes.
fn superposition_bounds() -> Verdict {
    let tree = SeedTree::new(42);
    let trials = 30;
    let needed = 24; // 80% of 30
    let mut passed = true;
    let mut parts = Vec::new();
    let count = |dim: usize, n: usize, pred: &dyn Fn(f64) -> bool| -> Result<usize, String> {
        let mut hits = 0;
        for r in 0..trials {
            let rec = superposition_trial(&tree, dim, n, r).map_err(e)?;
            if pred(median(&rec.member_sims).unwrap()) {
                hits += 1;
            }
        }
        Ok(hits)
    };
    for (dim, n_strong) in [(256usize, 25usize), (512, 50), (1024, 100)] {
        let t = thresholds(dim);
        let strong = count(dim, n_strong, &|m| m > t.strong)?;
        let weak = count(dim, 2 * n_strong, &|m| m > t.weak)?;
        let below = count(dim, 4 * n_strong, &|m| m < t.weak)?;
        passed &= strong >= needed && weak >= needed && below >= needed;
        parts.push(format!(
            "D={dim}: >strong@{n_strong} {strong}/30, >weak@{} {weak}/30, <weak@{} {below}/30",
            2 * n_strong,
            4 * n_strong
        ));
    }
    Ok((passed, format!("{} (each >= 24/30)", parts.join("; "))))
}

/// Balanced accuracy of a threshold classifier at the weak threshold, D = 256.
fn indistinguishability() -> Verdict {
    let tree = SeedTree::new(42);
    let dim = 256;
    let weak = thresholds(dim).weak;
    let ba = |n: usize| -> Result<f64, String> {
        let (mut members, mut nonmembers) = (Vec::new(), Vec::new());
        for r in 0..30 {
            let rec = superposition_trial(&tree, dim, n, r).map_err(e)?;
            members.extend(rec.member_sims);
            nonmembers.extend(rec.nonmember_sims);
        }
        Ok(balanced_accuracy(&members, &nonmembers, weak))
    };
    let (at100, at25) = (ba(100)?, ba(25)?);
    Ok((at100 < 0.75 && at25 > 0.95, format!("balanced accuracy n=100 {at100:.3} (< 0.75), n=25 {at25:.3} (> 0.95)")))
}

/// Per-class capacity of the spatial encoding at D = 256.
fn spatial_class_bound() -> Verdict {
    let dim = 256;
    let config = SpatialConfig { dims: vec![dim], seed: 1, ..SpatialConfig::default() };
    let tree = SeedTree::new(config.seed);
    let t = thresholds(dim);
    let mut stats = Vec::new();
    for k in [5usize, 10, 20] {
        // Single-class scenes isolate the per-class load from cross-class noise.
        let partition = Partition::new(vec![k]).map_err(e)?;
        let mut records = Vec::new();
        for trial in 0..30 {
            records.extend(spatial_trial(&config, &tree, dim, 0, &partition, trial).map_err(e)?);
        }
        let group = group_by_class_size(&records).into_iter().find(|g| g.class_size == k).ok_or("missing group")?;
        stats.push((k, group.queries, median(&group.member_sims).unwrap(), median(&group.nonmember_sims).unwrap()));
    }
    let (m5, m10, m20, nm20) = (stats[0].2, stats[1].2, stats[2].2, stats[2].3);
    let checks = [
        (m5 >= t.strong, format!("k=5 member median {m5:.3} >= {:.4}", t.strong)),
        ((m10 - t.strong).abs() <= 0.05, format!("k=10 member median {m10:.3} within 0.05 of {:.4}", t.strong)),
        (m20 < t.strong, format!("k=20 member median {m20:.3} < {:.4}", t.strong)),
        (nm20 > t.weak, format!("k=20 non-member median {nm20:.3} > {:.4}", t.weak)),
    ];
    let detail =
        checks.iter().map(|(ok, s)| format!("{s} {}", if *ok { "ok" } else { "MISS" })).collect::<Vec<_>>().join("; ");
    let queries = stats.iter().map(|s| s.1).min().unwrap_or(0);
    Ok((checks.iter().all(|c| c.0) && queries >= 30, format!("{detail}; {queries} queries per k")))
}

/// Partition counts against the dynamic-programming oracle.
fn partition_enumeration() -> Verdict {
    let dp = reference::partition_counts(30);
    let bad: Vec<usize> = (1..=30).filter(|&n| partitions(n).map(|p| p.len() as u64).ok() != Some(dp[n])).collect();
    let two: Vec<Vec<usize>> = partitions(2).map_err(e)?.iter().map(|p| p.parts().to_vec()).collect();
    let ok_two = two == vec![vec![2], vec![1, 1]];
    Ok((bad.is_empty() && ok_two, format!("counts match for n <= 30: {}, partitions(2) = {two:?}", bad.is_empty())))
}

/// Byte-identical spatial records with 1 and 8 workers.
fn determinism() -> Verdict {
    let tmp = std::env::temp_dir().join(format!("hdc-acceptance-{}", std::process::id()));
    let mut outputs = Vec::new();
    for workers in ["1", "8"] {
        let dir = tmp.join(format!("w{workers}"));
        let dir_arg = dir.to_str().ok_or("temporary path is not UTF-8")?;
        let args = [
            "hdc",
            "spatial",
            "--dims",
            "256",
            "--n",
            "1..8",
            "--trials",
            "3",
            "--seed",
            "7",
            "--workers",
            workers,
            "--out",
            dir_arg,
        ];
        let code = hdc_cli::run_args(args).map_err(|err| format!("{err:#}"))?;
        if code != 0 {
            return Err(format!("spatial run exited with {code}"));
        }
        outputs.push(std::fs::read(dir.join("records.csv")).map_err(e)?);
    }
    let _ = std::fs::remove_dir_all(&tmp);
    let same = outputs[0] == outputs[1];
    Ok((same, format!("records.csv {} bytes, identical across --workers 1 and 8: {same}", outputs[0].len())))
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub budget: Duration,
    check: fn() -> Verdict,
}

pub struct Outcome {
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs, check| Criterion { id, name, budget: Duration::from_secs(secs), check };
    vec![
        c(1, "convolution oracle equivalence", 10, convolution_oracle as fn() -> Verdict),
        c(2, "algebraic identities", 10, algebraic_identities),
        c(3, "similarity statistics", 30, similarity_statistics),
        c(4, "single/two-point peak reproduction", 120, peak_reproduction),
        c(5, "superposition bounds", 600, superposition_bounds),
        c(6, "indistinguishability onset", 120, indistinguishability),
        c(7, "spatial per-class bound", 1200, spatial_class_bound),
        c(8, "partition enumeration", 1, partition_enumeration),
        c(9, "determinism across worker counts", 1200, determinism),
    ]
}

/// Runs one criterion; exceeding the runtime budget counts as a failure.
pub fn evaluate(criterion: &Criterion) -> Outcome {
    let start = Instant::now();
    let verdict = (criterion.check)();
    let elapsed = start.elapsed();
    let (passed, detail) = match verdict {
        Ok((ok, detail)) => (ok && elapsed <= criterion.budget, detail),
        Err(err) => (false, format!("error: {err}")),
    };
    Outcome { passed, detail, elapsed }
}
