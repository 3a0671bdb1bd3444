//! CSV formats for scenes, heatmaps, experiment records and summaries.
//!
//! Floats are written with Rust's shortest round-trip formatting, so equal
//! values always produce equal bytes.

use std::io::{Read, Write};

use csv::{ReaderBuilder, Trim, WriterBuilder};

use crate::error::{HdcError, Result};
use crate::lab::{CapacityRecord, Role, SummaryRow};
use crate::spatial::{GridSpec, LabeledObject, Readout, SimilarityHeatmap};

pub const SCENE_HEADER: [&str; 3] = ["class_id", "x", "y"];
pub const RECORDS_HEADER: [&str; 8] =
    ["experiment", "dim", "n_total", "partition", "class_size", "trial", "role", "similarity"];
pub const SUMMARY_HEADER: [&str; 10] =
    ["experiment", "dim", "group_key", "role", "count", "q1", "median", "q3", "lo_whisker", "hi_whisker"];

fn num(x: f64) -> String {
    format!("{x}")
}

fn parse_err(line: u64, message: impl Into<String>) -> HdcError {
    HdcError::Parse { line, message: message.into() }
}

/// Reads `class_id,x,y` rows. Errors carry the 1-based line number.
pub fn read_scene_csv<R: Read>(reader: R) -> Result<Vec<LabeledObject>> {
    let mut rdr = ReaderBuilder::new().trim(Trim::All).flexible(true).from_reader(reader);
    let headers = rdr.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != SCENE_HEADER {
        return Err(parse_err(
            1,
            format!("expected header \"class_id,x,y\", found {:?}", headers.iter().collect::<Vec<_>>().join(",")),
        ));
    }
    let mut objects = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            parse_err(line, e.to_string())
        })?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        if row.len() != 3 {
            return Err(parse_err(line, format!("expected 3 fields, found {}", row.len())));
        }
        let class_id = row[0].parse::<usize>().map_err(|e| parse_err(line, format!("class_id {:?}: {e}", &row[0])))?;
        let coord = |i: usize, name: &str| -> Result<f64> {
            let v = row[i].parse::<f64>().map_err(|e| parse_err(line, format!("{name} {:?}: {e}", &row[i])))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(parse_err(line, format!("{name} must be finite")))
            }
        };
        objects.push(LabeledObject { class_id, x: coord(1, "x")?, y: coord(2, "y")? });
    }
    if objects.is_empty() {
        return Err(parse_err(1, "scene contains no objects"));
    }
    Ok(objects)
}

pub fn write_scene_csv<W: Write>(writer: W, objects: &[LabeledObject]) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(writer);
    w.write_record(SCENE_HEADER)?;
    for o in objects {
        w.write_record([o.class_id.to_string(), num(o.x), num(o.y)])?;
    }
    w.flush()?;
    Ok(())
}

/// First row holds `x_min,x_max,y_min,y_max,nx,ny,normalized`; then `ny`
/// rows of `nx` values, ascending y, each row ascending x.
pub fn write_heatmap_csv<W: Write>(writer: W, hm: &SimilarityHeatmap) -> Result<()> {
    let mut w = WriterBuilder::new().flexible(true).from_writer(writer);
    let g = &hm.grid;
    w.write_record([
        num(g.x_min),
        num(g.x_max),
        num(g.y_min),
        num(g.y_max),
        g.nx.to_string(),
        g.ny.to_string(),
        hm.readout.normalize.to_string(),
    ])?;
    for row in hm.rows() {
        w.write_record(row.iter().map(|&v| num(v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Inverse of [`write_heatmap_csv`]. The file does not say whether values are
/// absolute, so `absolute` is taken from the caller.
pub fn read_heatmap_csv<R: Read>(reader: R, absolute: bool) -> Result<SimilarityHeatmap> {
    let mut rdr = ReaderBuilder::new().has_headers(false).flexible(true).from_reader(reader);
    let mut rows = rdr.records();
    let meta = rows.next().ok_or_else(|| parse_err(1, "empty heatmap file"))??;
    if meta.len() != 7 {
        return Err(parse_err(1, format!("expected 7 metadata fields, found {}", meta.len())));
    }
    let f = |i: usize| meta[i].parse::<f64>().map_err(|e| parse_err(1, e.to_string()));
    let u = |i: usize| meta[i].parse::<usize>().map_err(|e| parse_err(1, e.to_string()));
    let grid = GridSpec { x_min: f(0)?, x_max: f(1)?, y_min: f(2)?, y_max: f(3)?, nx: u(4)?, ny: u(5)? };
    let normalize = meta[6].parse::<bool>().map_err(|e| parse_err(1, e.to_string()))?;
    let mut values = Vec::with_capacity(grid.nx * grid.ny);
    for row in rows {
        let row = row?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        if row.len() != grid.nx {
            return Err(parse_err(line, format!("expected {} values, found {}", grid.nx, row.len())));
        }
        for field in row.iter() {
            values.push(field.parse::<f64>().map_err(|e| parse_err(line, e.to_string()))?);
        }
    }
    SimilarityHeatmap::from_values(grid, Readout { normalize, absolute }, values)
}

fn write_rows<W: Write>(
    writer: W,
    records: &[CapacityRecord],
    samples: impl Fn(&CapacityRecord, Role) -> &[f64],
) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(writer);
    w.write_record(RECORDS_HEADER)?;
    for r in records {
        let partition = r.partition.as_ref().map(|p| p.to_string()).unwrap_or_default();
        let class_size = r.class_size.map(|k| k.to_string()).unwrap_or_default();
        let fixed = [
            r.experiment.as_str().to_string(),
            r.dim.to_string(),
            r.n_total.to_string(),
            partition,
            class_size,
            r.trial.to_string(),
        ];
        for role in [Role::Member, Role::Nonmember] {
            for &v in samples(r, role) {
                w.write_record(fixed.iter().map(String::as_str).chain([role.as_str(), num(v).as_str()]))?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// One row per sample, in record order; members before non-members within a
/// record.
pub fn write_records_csv<W: Write>(writer: W, records: &[CapacityRecord]) -> Result<()> {
    write_rows(writer, records, |r, role| r.samples(role))
}

/// Same layout as [`write_records_csv`] but with the raw dot products of
/// records that carry them.
pub fn write_raw_records_csv<W: Write>(writer: W, records: &[CapacityRecord]) -> Result<()> {
    write_rows(writer, records, |r, role| match (&r.raw, role) {
        (Some(raw), Role::Member) => &raw.member,
        (Some(raw), Role::Nonmember) => &raw.nonmember,
        (None, _) => &[],
    })
}

pub fn write_summary_csv<W: Write>(writer: W, rows: &[SummaryRow]) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(writer);
    w.write_record(SUMMARY_HEADER)?;
    for r in rows {
        let s = &r.stats;
        w.write_record([
            r.experiment.as_str().to_string(),
            r.dim.to_string(),
            r.group_key.to_string(),
            r.role.as_str().to_string(),
            s.count.to_string(),
            num(s.q1),
            num(s.median),
            num(s.q3),
            num(s.lo_whisker),
            num(s.hi_whisker),
        ])?;
    }
    w.flush()?;
    Ok(())
}
