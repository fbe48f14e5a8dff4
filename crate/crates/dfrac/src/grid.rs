//! Unit-step grids, grid functions, and the jumping operators σ, ρ.
//!
//! A forward grid holds the points {offset + k : k = 0..len−1} (the set
//! N_a of the calculus); a backward grid holds {offset − k} (the set bN,
//! stored top-down so that index k maps to the point b − k). Grid functions
//! are immutable samples on a grid, optionally extended by a few samples
//! just outside it (before a on forward grids, after b on backward ones) —
//! the nabla Caputo differences need those.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Forward jumping operator σ(t) = t + 1.
pub fn sigma(t: &Rat) -> Rat {
    t + 1
}

/// Backward jumping operator ρ(t) = t − 1.
pub fn rho(t: &Rat) -> Rat {
    t - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// N_a = {a, a+1, ...}: index k is the point offset + k.
    Forward,
    /// bN = {b, b−1, ...}: index k is the point offset − k.
    Backward,
}

/// A finite unit-step grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    offset: Rat,
    len: usize,
    direction: Direction,
}

impl Grid {
    pub fn forward(offset: Rat, len: usize) -> Grid {
        assert!(len > 0, "empty grid");
        Grid {
            offset,
            len,
            direction: Direction::Forward,
        }
    }

    pub fn backward(offset: Rat, len: usize) -> Grid {
        assert!(len > 0, "empty grid");
        Grid {
            offset,
            len,
            direction: Direction::Backward,
        }
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// The grid point at index k (k < len).
    pub fn point(&self, k: usize) -> Rat {
        debug_assert!(k < self.len);
        match self.direction {
            Direction::Forward => &self.offset + k as i64,
            Direction::Backward => &self.offset - k as i64,
        }
    }

    /// The index of a point, if it lies on the grid.
    pub fn index_of(&self, t: &Rat) -> Option<usize> {
        let d = match self.direction {
            Direction::Forward => t - &self.offset,
            Direction::Backward => &self.offset - t,
        };
        match d.as_i64() {
            Some(k) if k >= 0 && (k as usize) < self.len => Some(k as usize),
            _ => None,
        }
    }
}

/// A real-valued function sampled on a grid. Immutable once constructed.
///
/// `ext[j]` holds the sample one-past-the-offset on the outside: the value
/// at offset − 1 − j on forward grids, at offset + 1 + j on backward ones.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFn {
    grid: Grid,
    values: Vec<f64>,
    ext: Vec<f64>,
}

impl GridFn {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<GridFn> {
        if values.len() != grid.len() {
            return Err(Error::Domain(format!(
                "value count {} does not match grid length {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(GridFn {
            grid,
            values,
            ext: Vec::new(),
        })
    }

    pub fn with_ext(grid: Grid, values: Vec<f64>, ext: Vec<f64>) -> Result<GridFn> {
        let mut f = GridFn::new(grid, values)?;
        f.ext = ext;
        Ok(f)
    }

    /// Samples a callable on a fresh grid (plus `ext_len` outside samples).
    pub fn sample<F: Fn(&Rat) -> f64>(grid: Grid, ext_len: usize, f: F) -> GridFn {
        let values = (0..grid.len()).map(|k| f(&grid.point(k))).collect();
        let ext = (0..ext_len)
            .map(|j| {
                let t = match grid.direction() {
                    Direction::Forward => grid.offset() - (1 + j as i64),
                    Direction::Backward => grid.offset() + (1 + j as i64),
                };
                f(&t)
            })
            .collect();
        GridFn {
            grid,
            values,
            ext,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn offset(&self) -> &Rat {
        self.grid.offset()
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn direction(&self) -> Direction {
        self.grid.direction()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn ext(&self) -> &[f64] {
        &self.ext
    }

    pub fn value(&self, k: usize) -> f64 {
        self.values[k]
    }

    /// Sample at a signed index: negative indices address the extension
    /// (−1 is the sample adjacent to the offset on the outside).
    pub fn value_signed(&self, i: i64) -> Option<f64> {
        if i >= 0 {
            self.values.get(i as usize).copied()
        } else {
            self.ext.get((-i - 1) as usize).copied()
        }
    }

    /// View of the function on a sub-grid (same direction). The window must
    /// lie inside the grid; extension samples are not carried over.
    pub fn restrict(&self, new_offset: &Rat, new_len: usize) -> Result<GridFn> {
        let shift = match self.direction() {
            Direction::Forward => new_offset - self.offset(),
            Direction::Backward => self.offset() - new_offset,
        };
        let k = shift.as_i64().ok_or_else(|| {
            Error::Domain(format!(
                "offset {new_offset} is not a point of the grid starting at {}",
                self.offset()
            ))
        })?;
        if k < 0 || new_len == 0 || (k as usize) + new_len > self.len() {
            return Err(Error::Domain(format!(
                "window (offset {new_offset}, length {new_len}) not inside the grid"
            )));
        }
        let k = k as usize;
        let grid = Grid {
            offset: new_offset.clone(),
            len: new_len,
            direction: self.direction(),
        };
        GridFn::new(grid, self.values[k..k + new_len].to_vec())
    }

    /// Writes the CSV form: a `t,value` header, then one row per point in
    /// storage order, t as exact rational text.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "t,value")?;
        for k in 0..self.len() {
            writeln!(w, "{},{}", self.grid.point(k), self.values[k])?;
        }
        Ok(())
    }

    /// Reads the CSV form back. Rows may arrive in any order; they must form
    /// a contiguous unit-step chain containing `base`. Rows outside the base
    /// (before it on forward grids, after it on backward ones) become
    /// extension samples.
    pub fn read_csv<R: BufRead>(r: R, direction: Direction, base: &Rat) -> Result<GridFn> {
        let mut rows: Vec<(Rat, f64)> = Vec::new();
        let mut lines = r.lines();
        match lines.next() {
            Some(line) => {
                let line = line?;
                if line.trim() != "t,value" {
                    return Err(Error::Parse(format!(
                        "expected header 't,value', got {:?}",
                        line.trim()
                    )));
                }
            }
            None => return Err(Error::Parse("empty CSV input".into())),
        }
        for line in lines {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (t, v) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad CSV row {line:?}")))?;
            let t: Rat = t.parse()?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad value in CSV row {line:?}")))?;
            rows.push((t, v));
        }
        if rows.is_empty() {
            return Err(Error::Parse("CSV contains no data rows".into()));
        }
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        for w in rows.windows(2) {
            if &w[0].0 + 1 != w[1].0 {
                return Err(Error::Parse(format!(
                    "grid points must step by one; gap between {} and {}",
                    w[0].0, w[1].0
                )));
            }
        }
        if direction == Direction::Backward {
            rows.reverse();
        }
        let split = rows
            .iter()
            .position(|(t, _)| t == base)
            .ok_or_else(|| Error::Parse(format!("base point {base} not among CSV rows")))?;
        let ext: Vec<f64> = rows[..split].iter().rev().map(|(_, v)| *v).collect();
        let values: Vec<f64> = rows[split..].iter().map(|(_, v)| *v).collect();
        let grid = Grid {
            offset: base.clone(),
            len: values.len(),
            direction,
        };
        GridFn::with_ext(grid, values, ext)
    }
}
