//! CSV tables and the plain-text matrix dump.

use std::fmt::Write as _;
use std::io::BufRead;

use anyhow::{bail, Context};
use stark_ep_core::matrix::{ComplexMatrix, C64};

/// Scientific notation with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// In-memory table written as one CSV file.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    /// File name inside the output directory.
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self { name: name.to_string(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn with_header(name: &str, header: Vec<String>) -> Self {
        Self { name: name.to_string(), header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn to_csv(&self) -> anyhow::Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        Ok(w.into_inner().context("flushing CSV buffer")?)
    }
}

/// Header `dim N` and `dx Δx`, then one `n n′ Re Im` line per entry.
pub fn matrix_dump(m: &ComplexMatrix, dx: f64) -> String {
    let n = m.rows();
    let mut s = String::with_capacity(64 * n * n);
    let _ = writeln!(s, "dim {n}");
    let _ = writeln!(s, "dx {}", num(dx));
    for i in 0..n {
        for j in 0..m.cols() {
            let z = m[(i, j)];
            let _ = writeln!(s, "{i} {j} {} {}", num(z.re), num(z.im));
        }
    }
    s
}

/// Reads a [`matrix_dump`] back as `(matrix, dx)`.
pub fn read_matrix_dump(r: impl BufRead) -> anyhow::Result<(ComplexMatrix, f64)> {
    let mut lines = r.lines();
    let mut header = |key: &str| -> anyhow::Result<String> {
        let line = lines.next().context("truncated header")??;
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok(v.trim().to_string()),
            _ => bail!("expected `{key}` header, found `{line}`"),
        }
    };
    let n: usize = header("dim")?.parse()?;
    let dx: f64 = header("dx")?.parse()?;
    let mut m = ComplexMatrix::zeros(n, n);
    let mut seen = 0usize;
    for (k, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            bail!("body line {}: expected 4 fields, found {}", k + 1, f.len());
        }
        let (i, j): (usize, usize) = (f[0].parse()?, f[1].parse()?);
        if i >= n || j >= n {
            bail!("body line {}: index ({i}, {j}) outside dimension {n}", k + 1);
        }
        m[(i, j)] = C64::new(f[2].parse()?, f[3].parse()?);
        seen += 1;
    }
    if seen != n * n {
        bail!("expected {} entries, found {seen}", n * n);
    }
    Ok((m, dx))
}
