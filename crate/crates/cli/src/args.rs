//! Value parsers for list, range and grid flags.

use std::str::FromStr;

use hdc_core::GridSpec;

/// Integers given as a comma-separated mix of single values, inclusive
/// ranges `a..b`, and stepped ranges `a..b:step`, e.g. `1,5..20:5,50`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<usize>);

impl FromStr for IntList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim) {
            if item.is_empty() {
                return Err(format!("empty item in list {s:?}"));
            }
            let (range, step) = match item.split_once(':') {
                Some((r, st)) => (r, Some(parse_usize(st)?)),
                None => (item, None),
            };
            match range.split_once("..") {
                Some((a, b)) => {
                    let (a, b) = (parse_usize(a)?, parse_usize(b.trim_start_matches('='))?);
                    let step = step.unwrap_or(1);
                    if step == 0 {
                        return Err(format!("step must be positive in {item:?}"));
                    }
                    if a > b {
                        return Err(format!("range {item:?} is decreasing"));
                    }
                    out.extend((a..=b).step_by(step));
                }
                None if step.is_some() => return Err(format!("step given without a range in {item:?}")),
                None => out.push(parse_usize(range)?),
            }
        }
        Ok(IntList(out))
    }
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|e| format!("{s:?} is not a non-negative integer: {e}"))
}

fn parse_floats(s: &str, expected: usize) -> Result<Vec<f64>, String> {
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("{v:?} is not a number: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != expected {
        return Err(format!("expected {expected} comma-separated values, got {}", values.len()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err("values must be finite".into());
    }
    Ok(values)
}

/// `lo,hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range2(pub [f64; 2]);

impl FromStr for Range2 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let v = parse_floats(s, 2)?;
        Ok(Range2([v[0], v[1]]))
    }
}

/// `x_min,x_max,y_min,y_max,nx,ny`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridArg(pub GridSpec);

impl FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 6 {
            return Err(format!("expected x_min,x_max,y_min,y_max,nx,ny, got {s:?}"));
        }
        let b = parse_floats(&parts[..4].join(","), 4)?;
        let grid = GridSpec {
            x_min: b[0],
            x_max: b[1],
            y_min: b[2],
            y_max: b[3],
            nx: parse_usize(parts[4])?,
            ny: parse_usize(parts[5])?,
        };
        grid.validate().map_err(|e| e.to_string())?;
        Ok(GridArg(grid))
    }
}
