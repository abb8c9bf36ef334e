//! Sampled kernels on rectangular grids of group coordinates.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One uniformly sampled coordinate: `start + i * step` for `i < len`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub step: f64,
    pub len: usize,
    /// Covers a full period (angles on the torus).
    pub periodic: bool,
}

impl Axis {
    pub fn new(name: impl Into<String>, start: f64, step: f64, len: usize) -> Self {
        Self {
            name: name.into(),
            start,
            step,
            len,
            periodic: false,
        }
    }

    /// `len` points covering `[0, 2π)`.
    pub fn angle(name: impl Into<String>, len: usize) -> Self {
        Self {
            name: name.into(),
            start: 0.0,
            step: 2.0 * std::f64::consts::PI / len as f64,
            len,
            periodic: true,
        }
    }

    /// `len` points `(i - len/2) * step`, symmetric about the origin.
    pub fn centered(name: impl Into<String>, len: usize, step: f64) -> Self {
        Self::new(name, -((len / 2) as f64) * step, step, len)
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.coord(i)).collect()
    }

    /// Largest angular frequency resolved by the sampling.
    pub fn nyquist(&self) -> f64 {
        std::f64::consts::PI / self.step
    }
}

/// Kernel samples in row-major order (last axis fastest).
///
/// `cell_weight` is the Haar measure of one grid cell, so
/// `Σ |K|² · cell_weight` approximates the squared `L²` norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelGrid {
    pub axes: Vec<Axis>,
    pub cell_weight: f64,
    #[serde(skip)]
    pub values: Vec<Complex64>,
    /// Free-form description of how the samples were produced.
    #[serde(default)]
    pub metadata: serde_json::Value,
}

impl KernelGrid {
    pub fn zeros(axes: Vec<Axis>, cell_weight: f64) -> Self {
        let n = axes.iter().map(|a| a.len).product();
        Self {
            axes,
            cell_weight,
            values: vec![Complex64::new(0.0, 0.0); n],
            metadata: serde_json::Value::Null,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len).collect()
    }

    /// Flat index of a multi-index.
    pub fn index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.axes.len());
        idx.iter()
            .zip(&self.axes)
            .fold(0, |acc, (&i, a)| acc * a.len + i)
    }

    /// Multi-index of a flat index.
    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.axes.len()];
        for (d, a) in self.axes.iter().enumerate().rev() {
            idx[d] = flat % a.len;
            flat /= a.len;
        }
        idx
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.unravel(flat)
            .iter()
            .zip(&self.axes)
            .map(|(&i, a)| a.coord(i))
            .collect()
    }

    pub fn get(&self, idx: &[usize]) -> Complex64 {
        self.values[self.index(idx)]
    }

    /// `Σ |K|² · cell_weight`.
    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.cell_weight
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.norm()))
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.im.abs()))
    }

    /// Largest `|K|` over grid points on the boundary of a non-periodic axis.
    pub fn boundary_max(&self) -> f64 {
        let mut m = 0.0_f64;
        for flat in 0..self.len() {
            let idx = self.unravel(flat);
            let edge = idx
                .iter()
                .zip(&self.axes)
                .any(|(&i, a)| !a.periodic && (i == 0 || i + 1 == a.len));
            if edge {
                m = m.max(self.values[flat].norm());
            }
        }
        m
    }

    /// Path of the JSON sidecar written next to a CSV file.
    pub fn sidecar_path(csv: &Path) -> PathBuf {
        let mut s = csv.as_os_str().to_owned();
        s.push(".json");
        PathBuf::from(s)
    }

    /// Writes the samples as CSV (one column per axis, then `re,im`) and the
    /// geometry as a JSON sidecar.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut out = BufWriter::new(File::create(path)?);
        let header: Vec<&str> = self.axes.iter().map(|a| a.name.as_str()).collect();
        writeln!(out, "{},re,im", header.join(","))?;
        for (flat, v) in self.values.iter().enumerate() {
            for c in self.point(flat) {
                write!(out, "{c},")?;
            }
            writeln!(out, "{},{}", v.re, v.im)?;
        }
        out.flush()?;
        let side = BufWriter::new(File::create(Self::sidecar_path(path))?);
        serde_json::to_writer_pretty(side, self)?;
        Ok(())
    }

    /// Reads a grid written by [`KernelGrid::save`].
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let side = File::open(Self::sidecar_path(path))?;
        let mut grid: KernelGrid = serde_json::from_reader(side)?;
        let dims = grid.axes.len();
        let mut reader = csv::Reader::from_path(path)?;
        let headers = reader.headers()?.clone();
        let expected: Vec<&str> = grid
            .axes
            .iter()
            .map(|a| a.name.as_str())
            .chain(["re", "im"])
            .collect();
        if headers.iter().collect::<Vec<_>>() != expected {
            return Err(Error::InvalidArgument(format!(
                "kernel CSV header {:?} does not match the sidecar axes {expected:?}",
                headers
            )));
        }
        let n: usize = grid.axes.iter().map(|a| a.len).product();
        let mut values = Vec::with_capacity(n);
        for (row_no, record) in reader.records().enumerate() {
            let record = record?;
            let nums: Vec<f64> = record
                .iter()
                .map(|f| f.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidArgument(format!("kernel CSV row {}: {e}", row_no + 1)))?;
            if nums.len() != dims + 2 {
                return Err(Error::InvalidArgument(format!(
                    "kernel CSV row {} has {} fields, expected {}",
                    row_no + 1,
                    nums.len(),
                    dims + 2
                )));
            }
            values.push(Complex64::new(nums[dims], nums[dims + 1]));
        }
        if values.len() != n {
            return Err(Error::InvalidArgument(format!(
                "kernel CSV has {} rows, the sidecar geometry needs {n}",
                values.len()
            )));
        }
        grid.values = values;
        Ok(grid)
    }
}
