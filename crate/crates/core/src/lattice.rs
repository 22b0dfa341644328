//! Categorical lattices: storage, cell geometry, and file ingestion.
//!
//! Cells are stored row-major with row 0 at the *bottom* of the window, so
//! `y` grows with the row index and the geometry matches a Cartesian plot.
//! Text rasters list the top row first; the loaders flip it on the way in.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A point in window units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coordinate {
    pub x: f64,
    pub y: f64,
}

impl Coordinate {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Coordinate) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A rectangular lattice of square cells, each holding a category code in `0..n_categories`.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoricalGrid {
    nrows: usize,
    ncols: usize,
    cell_side: f64,
    origin: Coordinate,
    values: Vec<u32>,
    n_categories: u32,
}

impl CategoricalGrid {
    /// Builds a grid from bottom-up, row-major `values`.
    pub fn new(
        nrows: usize,
        ncols: usize,
        cell_side: f64,
        origin: Coordinate,
        values: Vec<u32>,
        n_categories: u32,
    ) -> Result<Self> {
        if nrows == 0 || ncols == 0 {
            return Err(Error::Shape(format!(
                "grid must be nonempty, got {nrows}x{ncols}"
            )));
        }
        if !(cell_side.is_finite() && cell_side > 0.0) {
            return Err(invalid(format!(
                "cell side must be positive, got {cell_side}"
            )));
        }
        if !(origin.x.is_finite() && origin.y.is_finite()) {
            return Err(invalid("origin must be finite"));
        }
        if values.len() != nrows * ncols {
            return Err(Error::Shape(format!(
                "{} values for a {nrows}x{ncols} grid",
                values.len()
            )));
        }
        if n_categories == 0 {
            return Err(invalid("a grid needs at least one category"));
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= n_categories) {
            return Err(invalid(format!(
                "code {bad} out of range for {n_categories} categories"
            )));
        }
        Ok(Self {
            nrows,
            ncols,
            cell_side,
            origin,
            values,
            n_categories,
        })
    }

    /// Grid with the category count inferred as `max(value) + 1`.
    pub fn from_values(
        nrows: usize,
        ncols: usize,
        cell_side: f64,
        values: Vec<u32>,
    ) -> Result<Self> {
        let n_categories = values.iter().copied().max().unwrap_or(0) + 1;
        Self::new(
            nrows,
            ncols,
            cell_side,
            Coordinate::new(0.0, 0.0),
            values,
            n_categories,
        )
    }

    /// Same cells, declared over a larger category alphabet.
    pub fn with_categories(mut self, n_categories: u32) -> Result<Self> {
        if n_categories < self.n_categories {
            return Err(invalid(format!(
                "cannot shrink {} categories to {n_categories}",
                self.n_categories
            )));
        }
        self.n_categories = n_categories;
        Ok(self)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn n_cells(&self) -> usize {
        self.values.len()
    }

    pub fn cell_side(&self) -> f64 {
        self.cell_side
    }

    pub fn cell_area(&self) -> f64 {
        self.cell_side * self.cell_side
    }

    pub fn origin(&self) -> Coordinate {
        self.origin
    }

    pub fn n_categories(&self) -> u32 {
        self.n_categories
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Cells of one row, left to right.
    pub fn row(&self, row: usize) -> &[u32] {
        &self.values[row * self.ncols..(row + 1) * self.ncols]
    }

    pub fn get(&self, row: usize, col: usize) -> Result<u32> {
        self.check_index(row, col)?;
        Ok(self.values[row * self.ncols + col])
    }

    /// Total window size `T`.
    pub fn window_size(&self) -> f64 {
        self.n_cells() as f64 * self.cell_area()
    }

    pub fn width(&self) -> f64 {
        self.ncols as f64 * self.cell_side
    }

    pub fn height(&self) -> f64 {
        self.nrows as f64 * self.cell_side
    }

    /// Geometric centre of the window.
    pub fn window_centroid(&self) -> Coordinate {
        Coordinate::new(
            self.origin.x + 0.5 * self.width(),
            self.origin.y + 0.5 * self.height(),
        )
    }

    fn check_index(&self, row: usize, col: usize) -> Result<()> {
        if row >= self.nrows || col >= self.ncols {
            return Err(Error::IndexOutOfRange {
                row,
                col,
                nrows: self.nrows,
                ncols: self.ncols,
            });
        }
        Ok(())
    }

    pub fn pixel_centroid(&self, row: usize, col: usize) -> Result<Coordinate> {
        self.check_index(row, col)?;
        Ok(self.centroid_unchecked(row, col))
    }

    pub(crate) fn centroid_unchecked(&self, row: usize, col: usize) -> Coordinate {
        Coordinate::new(
            self.origin.x + (col as f64 + 0.5) * self.cell_side,
            self.origin.y + (row as f64 + 0.5) * self.cell_side,
        )
    }

    /// Centroid of the cell at flat index `idx`.
    pub fn centroid_of_index(&self, idx: usize) -> Coordinate {
        self.centroid_unchecked(idx / self.ncols, idx % self.ncols)
    }

    /// Largest centroid-to-centroid distance in the window (corner to corner).
    pub fn max_pair_distance(&self) -> f64 {
        offset_distance(self.cell_side, self.nrows - 1, self.ncols as isize - 1)
    }

    pub fn category_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n_categories as usize];
        for &v in &self.values {
            counts[v as usize] += 1;
        }
        counts
    }

    /// Category proportions `p(x_i)`.
    pub fn category_proportions(&self) -> Vec<f64> {
        let n = self.n_cells() as f64;
        self.category_counts()
            .into_iter()
            .map(|c| c as f64 / n)
            .collect()
    }

    /// Renders the grid as an ESRI ASCII raster with its dense codes.
    pub fn to_ascii(&self) -> String {
        self.to_ascii_with_codes(None)
    }

    /// Renders the grid as an ESRI ASCII raster, translating dense codes
    /// through `codes` when given.
    pub fn to_ascii_with_codes(&self, codes: Option<&[i64]>) -> String {
        let mut out = String::with_capacity(self.n_cells() * 2 + 128);
        let _ = writeln!(out, "ncols {}", self.ncols);
        let _ = writeln!(out, "nrows {}", self.nrows);
        let _ = writeln!(out, "xllcorner {}", self.origin.x);
        let _ = writeln!(out, "yllcorner {}", self.origin.y);
        let _ = writeln!(out, "cellsize {}", self.cell_side);
        for row in (0..self.nrows).rev() {
            for (c, &v) in self.row(row).iter().enumerate() {
                if c > 0 {
                    out.push(' ');
                }
                match codes {
                    Some(map) => {
                        let _ = write!(out, "{}", map[v as usize]);
                    }
                    None => {
                        let _ = write!(out, "{v}");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Distance between centroids of two cells displaced by `(dr, dc)`.
///
/// Every distance in the crate goes through this function so that values
/// computed along different paths compare bit-identically.
pub fn offset_distance(cell_side: f64, dr: usize, dc: isize) -> f64 {
    let dr = dr as f64;
    let dc = dc as f64;
    cell_side * (dr * dr + dc * dc).sqrt()
}

/// A grid together with the original codes behind its dense categories.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedGrid {
    pub grid: CategoricalGrid,
    /// `codes[k]` is the input code mapped to dense category `k`.
    pub codes: Vec<i64>,
}

impl LoadedGrid {
    /// Dense category of an input code, if present.
    pub fn dense_code(&self, original: i64) -> Option<u32> {
        self.codes.binary_search(&original).ok().map(|k| k as u32)
    }

    pub fn to_ascii(&self) -> String {
        self.grid.to_ascii_with_codes(Some(&self.codes))
    }
}

/// Maps raw codes onto `0..I` in sorted order of the distinct codes.
fn remap(raw: &[i64]) -> (Vec<u32>, Vec<i64>) {
    let codes: Vec<i64> = raw
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let values = raw
        .iter()
        .map(|v| codes.binary_search(v).expect("code collected above") as u32)
        .collect();
    (values, codes)
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Default)]
struct Header {
    ncols: Option<usize>,
    nrows: Option<usize>,
    x: Option<(f64, bool)>,
    y: Option<(f64, bool)>,
    cellsize: Option<f64>,
    dx: Option<f64>,
    dy: Option<f64>,
    nodata: Option<i64>,
}

/// Parses an ESRI ASCII raster.
///
/// Accepts `xllcenter`/`yllcenter` in place of the corner keys, an optional
/// `NODATA_value` (cells carrying it are rejected, every cell must be
/// observed), and `dx`/`dy` only when they are equal.
pub fn load_ascii_grid(text: &str) -> Result<LoadedGrid> {
    let mut header = Header::default();
    let mut lines = text.lines().enumerate().peekable();

    while let Some(&(idx, line)) = lines.peek() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            lines.next();
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let key = parts.next().unwrap_or_default();
        if !key.starts_with(|c: char| c.is_ascii_alphabetic()) {
            break;
        }
        lines.next();
        let line_no = idx + 1;
        let value = parts.next().ok_or_else(|| {
            parse_err(line_no, key.len() + 1, format!("missing value for `{key}`"))
        })?;
        let value_col = line.find(value).map_or(1, |p| p + 1);
        let float = || -> Result<f64> {
            value
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    parse_err(
                        line_no,
                        value_col,
                        format!("`{key}` expects a number, got `{value}`"),
                    )
                })
        };
        let count = || -> Result<usize> {
            value
                .parse::<usize>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| {
                    parse_err(
                        line_no,
                        value_col,
                        format!("`{key}` expects a positive integer, got `{value}`"),
                    )
                })
        };
        match key.to_ascii_lowercase().as_str() {
            "ncols" => header.ncols = Some(count()?),
            "nrows" => header.nrows = Some(count()?),
            "xllcorner" => header.x = Some((float()?, false)),
            "xllcenter" => header.x = Some((float()?, true)),
            "yllcorner" => header.y = Some((float()?, false)),
            "yllcenter" => header.y = Some((float()?, true)),
            "cellsize" => header.cellsize = Some(float()?),
            "dx" => header.dx = Some(float()?),
            "dy" => header.dy = Some(float()?),
            "nodata_value" => {
                header.nodata = Some(value.parse::<i64>().map_err(|_| {
                    parse_err(
                        line_no,
                        value_col,
                        format!("`{key}` expects an integer, got `{value}`"),
                    )
                })?)
            }
            _ => return Err(parse_err(line_no, 1, format!("unknown header key `{key}`"))),
        }
    }

    let missing = |what: &str| parse_err(1, 1, format!("header is missing `{what}`"));
    let ncols = header.ncols.ok_or_else(|| missing("ncols"))?;
    let nrows = header.nrows.ok_or_else(|| missing("nrows"))?;
    let cell_side = match (header.cellsize, header.dx, header.dy) {
        (Some(s), _, _) => s,
        (None, Some(dx), Some(dy)) if dx == dy => dx,
        (None, Some(dx), Some(dy)) => {
            return Err(invalid(format!(
                "rectangular cells are not supported (dx={dx}, dy={dy})"
            )))
        }
        _ => return Err(missing("cellsize")),
    };
    if cell_side <= 0.0 {
        return Err(invalid(format!(
            "cellsize must be positive, got {cell_side}"
        )));
    }
    let (x, x_center) = header.x.ok_or_else(|| missing("xllcorner"))?;
    let (y, y_center) = header.y.ok_or_else(|| missing("yllcorner"))?;
    let origin = Coordinate::new(
        if x_center { x - 0.5 * cell_side } else { x },
        if y_center { y - 0.5 * cell_side } else { y },
    );

    // File rows run top to bottom; storage runs bottom to top.
    let mut raw = vec![0i64; nrows * ncols];
    let mut file_row = 0usize;
    let mut last_line = 0usize;
    for (idx, line) in lines {
        let line_no = idx + 1;
        last_line = line_no;
        if line.trim().is_empty() {
            continue;
        }
        if file_row == nrows {
            return Err(parse_err(
                line_no,
                1,
                format!("more than {nrows} data rows"),
            ));
        }
        let row = nrows - 1 - file_row;
        let mut n = 0usize;
        let mut pos = 0usize;
        for token in line.split_whitespace() {
            let column = line[pos..].find(token).map_or(pos, |p| p + pos) + 1;
            pos = column - 1 + token.len();
            if n == ncols {
                return Err(parse_err(
                    line_no,
                    column,
                    format!("row has more than {ncols} cells"),
                ));
            }
            let v: i64 = token.parse().map_err(|_| {
                parse_err(line_no, column, format!("cell `{token}` is not an integer"))
            })?;
            if header.nodata == Some(v) {
                return Err(parse_err(
                    line_no,
                    column,
                    "no-data cells are not supported",
                ));
            }
            raw[row * ncols + n] = v;
            n += 1;
        }
        if n != ncols {
            return Err(parse_err(
                line_no,
                pos + 1,
                format!("row has {n} cells, expected {ncols}"),
            ));
        }
        file_row += 1;
    }
    if file_row != nrows {
        return Err(parse_err(
            last_line + 1,
            1,
            format!("found {file_row} data rows, expected {nrows}"),
        ));
    }

    let (values, codes) = remap(&raw);
    let grid = CategoricalGrid::new(nrows, ncols, cell_side, origin, values, codes.len() as u32)?;
    Ok(LoadedGrid { grid, codes })
}

/// Parses `row,col,code` triples (bottom-up rows, an optional header line).
///
/// Every cell of the bounding `max(row)+1` by `max(col)+1` lattice must occur
/// exactly once.
pub fn load_csv_grid(text: &str, cell_side: f64, origin: Coordinate) -> Result<LoadedGrid> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());

    let mut triples: Vec<(usize, usize, i64)> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(i + 1, |p| p.line() as usize);
            parse_err(line, 1, e.to_string())
        })?;
        let line = record.position().map_or(i + 1, |p| p.line() as usize);
        if record.len() != 3 {
            return Err(parse_err(
                line,
                1,
                format!("expected 3 fields, got {}", record.len()),
            ));
        }
        let field = |k: usize| &record[k];
        if i == 0 && field(0).parse::<i64>().is_err() {
            continue; // header
        }
        let index = |k: usize| -> Result<usize> {
            field(k)
                .parse()
                .map_err(|_| parse_err(line, k + 1, format!("`{}` is not a cell index", field(k))))
        };
        let row = index(0)?;
        let col = index(1)?;
        let code: i64 = field(2)
            .parse()
            .map_err(|_| parse_err(line, 3, format!("cell `{}` is not an integer", field(2))))?;
        triples.push((row, col, code));
    }
    if triples.is_empty() {
        return Err(parse_err(1, 1, "no cells"));
    }
    let nrows = triples.iter().map(|t| t.0).max().unwrap_or(0) + 1;
    let ncols = triples.iter().map(|t| t.1).max().unwrap_or(0) + 1;
    let mut raw: Vec<Option<i64>> = vec![None; nrows * ncols];
    for &(row, col, code) in &triples {
        let slot = &mut raw[row * ncols + col];
        if slot.is_some() {
            return Err(Error::Shape(format!("cell ({row}, {col}) listed twice")));
        }
        *slot = Some(code);
    }
    let raw: Vec<i64> = raw
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| Error::Shape(format!("cell ({}, {}) missing", i / ncols, i % ncols)))
        })
        .collect::<Result<_>>()?;
    let (values, codes) = remap(&raw);
    let grid = CategoricalGrid::new(nrows, ncols, cell_side, origin, values, codes.len() as u32)?;
    Ok(LoadedGrid { grid, codes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const CHECKER: &str = "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 0.25\n0 1\n1 0\n";

    #[test]
    fn minimal_checkerboard() {
        let loaded = load_ascii_grid(CHECKER).unwrap();
        let g = &loaded.grid;
        assert_eq!(g.n_categories(), 2);
        assert_abs_diff_eq!(g.window_size(), 0.25, epsilon = 1e-15);
        assert_eq!(g.category_proportions(), vec![0.5, 0.5]);
        // top file row is the highest y
        assert_eq!(g.get(1, 0).unwrap(), 0);
        assert_eq!(g.get(0, 0).unwrap(), 1);
    }

    #[test]
    fn sparse_codes_are_remapped_in_sorted_order() {
        let text = "ncols 2\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\n7 3\n";
        let loaded = load_ascii_grid(text).unwrap();
        assert_eq!(loaded.codes, vec![3, 7]);
        assert_eq!(loaded.grid.values(), &[1, 0]);
        assert_eq!(loaded.dense_code(7), Some(1));
        assert_eq!(loaded.dense_code(5), None);
    }

    #[test]
    fn single_category_grid_loads() {
        let mut text =
            String::from("ncols 40\nnrows 40\nxllcorner 0\nyllcorner 0\ncellsize 0.25\n");
        for _ in 0..40 {
            text.push_str(&vec!["0"; 40].join(" "));
            text.push('\n');
        }
        let loaded = load_ascii_grid(&text).unwrap();
        assert_eq!(loaded.grid.n_categories(), 1);
    }

    #[test]
    fn parse_errors_name_position() {
        let ragged = "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n0 1\n1\n";
        match load_ascii_grid(ragged) {
            Err(Error::Parse { line: 7, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let bad_cell = "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n0 1\n1 x\n";
        match load_ascii_grid(bad_cell) {
            Err(Error::Parse {
                line: 7, column: 3, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let float_cell = "ncols 2\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\n0 1.5\n";
        assert!(matches!(
            load_ascii_grid(float_cell),
            Err(Error::Parse { .. })
        ));
        let no_size = "ncols 2\nnrows 1\nxllcorner 0\nyllcorner 0\n0 1\n";
        assert!(matches!(load_ascii_grid(no_size), Err(Error::Parse { .. })));
        let bad_header = "ncols two\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\n0 1\n";
        assert!(matches!(
            load_ascii_grid(bad_header),
            Err(Error::Parse { line: 1, .. })
        ));
        let short = "ncols 2\nnrows 3\nxllcorner 0\nyllcorner 0\ncellsize 1\n0 1\n1 0\n";
        assert!(matches!(load_ascii_grid(short), Err(Error::Parse { .. })));
    }

    #[test]
    fn rectangular_cells_rejected() {
        let text = "ncols 2\nnrows 1\nxllcorner 0\nyllcorner 0\ndx 1\ndy 2\n0 1\n";
        assert!(matches!(
            load_ascii_grid(text),
            Err(Error::InvalidParameter(_))
        ));
        let square = "ncols 2\nnrows 1\nxllcorner 0\nyllcorner 0\ndx 2\ndy 2\n0 1\n";
        assert_eq!(load_ascii_grid(square).unwrap().grid.cell_side(), 2.0);
    }

    #[test]
    fn nodata_cells_rejected() {
        let text =
            "ncols 2\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\nNODATA_value -9999\n0 -9999\n";
        assert!(matches!(
            load_ascii_grid(text),
            Err(Error::Parse { line: 7, .. })
        ));
    }

    #[test]
    fn cell_centers_shift_origin() {
        let text = "ncols 1\nnrows 1\nxllcenter 1.0\nyllcenter 2.0\ncellsize 2\n5\n";
        let g = load_ascii_grid(text).unwrap().grid;
        assert_eq!(g.origin(), Coordinate::new(0.0, 1.0));
        assert_eq!(g.pixel_centroid(0, 0).unwrap(), Coordinate::new(1.0, 2.0));
    }

    #[test]
    fn centroids() {
        let g = CategoricalGrid::from_values(40, 40, 0.25, vec![0; 1600]).unwrap();
        assert_eq!(
            g.pixel_centroid(0, 0).unwrap(),
            Coordinate::new(0.125, 0.125)
        );
        assert_eq!(
            g.pixel_centroid(39, 39).unwrap(),
            Coordinate::new(9.875, 9.875)
        );
        let corner = g
            .pixel_centroid(0, 0)
            .unwrap()
            .distance(&g.pixel_centroid(39, 39).unwrap());
        assert_abs_diff_eq!(corner, 13.789, epsilon = 5e-4);
        assert_eq!(corner, g.max_pair_distance());
        assert!(matches!(
            g.pixel_centroid(40, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn proportions() {
        let g = CategoricalGrid::from_values(2, 2, 1.0, vec![0; 4])
            .unwrap()
            .with_categories(2)
            .unwrap();
        assert_eq!(g.category_proportions(), vec![1.0, 0.0]);

        let mut values = vec![0u32; 1600];
        values[..288].iter_mut().for_each(|v| *v = 1);
        let g = CategoricalGrid::from_values(40, 40, 0.25, values).unwrap();
        let p = g.category_proportions();
        assert_abs_diff_eq!(p[0], 0.82, epsilon = 1e-12);
        assert_abs_diff_eq!(p[1], 0.18, epsilon = 1e-12);
    }

    #[test]
    fn constructor_checks() {
        let origin = Coordinate::new(0.0, 0.0);
        assert!(CategoricalGrid::new(2, 2, 1.0, origin, vec![0; 3], 1).is_err());
        assert!(CategoricalGrid::new(1, 1, 0.0, origin, vec![0], 1).is_err());
        assert!(CategoricalGrid::new(1, 2, 1.0, origin, vec![0, 2], 2).is_err());
    }

    #[test]
    fn csv_loader_matches_ascii() {
        let csv = "row,col,code\n0,0,1\n0,1,0\n1,0,0\n1,1,1\n";
        let loaded = load_csv_grid(csv, 0.25, Coordinate::new(0.0, 0.0)).unwrap();
        assert_eq!(loaded.grid, load_ascii_grid(CHECKER).unwrap().grid);
        assert!(load_csv_grid("0,0,1\n0,0,1\n", 1.0, Coordinate::new(0.0, 0.0)).is_err());
        assert!(load_csv_grid("0,0,1\n1,1,1\n", 1.0, Coordinate::new(0.0, 0.0)).is_err());
        assert!(matches!(
            load_csv_grid("0,0,a\n", 1.0, Coordinate::new(0.0, 0.0)),
            Err(Error::Parse { column: 3, .. })
        ));
    }

    #[test]
    fn ascii_writer_uses_original_codes() {
        let text = "ncols 2\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\n7 3\n";
        let loaded = load_ascii_grid(text).unwrap();
        assert_eq!(loaded.to_ascii(), text);
    }
}
