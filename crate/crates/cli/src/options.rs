//! Parsers for the structured flag values.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use spatent::Coordinate;

/// `--partition {voronoi:N|annuli:N|labels:PATH}`
#[derive(Debug, Clone, PartialEq)]
pub enum PartitionSpec {
    Voronoi(usize),
    Annuli(usize),
    Labels(PathBuf),
}

impl FromStr for PartitionSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| format!("expected voronoi:N, annuli:N or labels:PATH, got '{s}'"))?;
        match kind {
            "voronoi" => Ok(Self::Voronoi(parse_count(arg, "voronoi")?)),
            "annuli" => Ok(Self::Annuli(parse_count(arg, "annuli")?)),
            "labels" if !arg.is_empty() => Ok(Self::Labels(PathBuf::from(arg))),
            "labels" => Err("labels: needs a path".into()),
            other => Err(format!("unknown partition '{other}'")),
        }
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Voronoi(n) => write!(f, "voronoi:{n}"),
            Self::Annuli(n) => write!(f, "annuli:{n}"),
            Self::Labels(p) => write!(f, "labels:{}", p.display()),
        }
    }
}

fn parse_count(arg: &str, what: &str) -> Result<usize, String> {
    let n: usize = arg
        .parse()
        .map_err(|_| format!("{what}: expected an area count, got '{arg}'"))?;
    if n < 2 {
        return Err(format!("{what}: needs at least 2 areas, got {n}"));
    }
    Ok(n)
}

fn parse_fraction(arg: &str) -> Result<f64, String> {
    let p: f64 = arg
        .parse()
        .map_err(|_| format!("expected a fraction in (0, 1], got '{arg}'"))?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(format!("fraction {p} outside (0, 1]"));
    }
    Ok(p)
}

fn parse_list(arg: &str) -> Result<Vec<f64>, String> {
    arg.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| format!("'{v}' is not a number"))
        })
        .collect()
}

/// `--nd {value|pct:P|ann:J}`
#[derive(Debug, Clone, PartialEq)]
pub enum NdSpec {
    Distance(f64),
    /// Nearest-rank percentile of the area-centroid distances.
    Percentile(f64),
    /// Ring steps on an annuli partition.
    Annuli(usize),
}

impl FromStr for NdSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(p) = s.strip_prefix("pct:") {
            return parse_fraction(p).map(Self::Percentile);
        }
        if let Some(j) = s.strip_prefix("ann:") {
            return j
                .parse()
                .map(Self::Annuli)
                .map_err(|_| format!("ann: expected a ring step count, got '{j}'"));
        }
        match s.parse::<f64>() {
            Ok(d) if d.is_finite() && d >= 0.0 => Ok(Self::Distance(d)),
            _ => Err(format!("expected a distance, pct:P or ann:J, got '{s}'")),
        }
    }
}

impl fmt::Display for NdSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Distance(d) => write!(f, "{d}"),
            Self::Percentile(p) => write!(f, "pct:{p}"),
            Self::Annuli(j) => write!(f, "ann:{j}"),
        }
    }
}

/// `--breaks {fixed|pct:p1,p2,...|explicit:b1,b2,...}`
#[derive(Debug, Clone, PartialEq)]
pub enum BreaksSpec {
    Fixed,
    Percentile(Vec<f64>),
    /// Class upper bounds; the last must reach the largest pair distance.
    Explicit(Vec<f64>),
}

impl FromStr for BreaksSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "fixed" {
            return Ok(Self::Fixed);
        }
        if let Some(rest) = s.strip_prefix("pct:") {
            let f = parse_list(rest)?;
            for &p in &f {
                parse_fraction(&p.to_string())?;
            }
            return Ok(Self::Percentile(f));
        }
        if let Some(rest) = s.strip_prefix("explicit:") {
            return parse_list(rest).map(Self::Explicit);
        }
        Err(format!(
            "expected fixed, pct:p1,p2,... or explicit:b1,b2,..., got '{s}'"
        ))
    }
}

impl fmt::Display for BreaksSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        match self {
            Self::Fixed => f.write_str("fixed"),
            Self::Percentile(v) => write!(f, "pct:{}", join(v)),
            Self::Explicit(v) => write!(f, "explicit:{}", join(v)),
        }
    }
}

/// `--origin X,Y`
pub fn parse_origin(s: &str) -> Result<Coordinate, String> {
    match parse_list(s)?.as_slice() {
        &[x, y] if x.is_finite() && y.is_finite() => Ok(Coordinate::new(x, y)),
        _ => Err(format!("expected X,Y, got '{s}'")),
    }
}
