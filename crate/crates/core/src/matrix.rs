//! Dense matrices over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {}x{} over GF({})", self.rows, self.cols, self.field.q())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Text form: a `rows cols q` header, then one line of integer-encoded
/// entries per row.
impl fmt::Display for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.field.q())?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl GfMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> GfMatrix {
        GfMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> GfMatrix {
        let mut m = GfMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<u32>]) -> Result<GfMatrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= field.q()) {
                return Err(Error::ElementOutOfRange { value: bad, q: field.q() });
            }
            data.extend_from_slice(row);
        }
        Ok(GfMatrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    /// Integer matrix reduced into the prime subfield.
    pub fn from_integers<R: AsRef<[u32]>>(field: &Field, cols: usize, rows: &[R]) -> GfMatrix {
        let mut m = GfMatrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged integer matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.from_int(x as i64));
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        debug_assert!(value < self.field.q());
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        let f = &self.field;
        a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }

    pub fn mul(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.field != other.field || self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = GfMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `M·Mᵀ`: the matrix of pairwise row inner products.
    pub fn gram(&self) -> GfMatrix {
        let mut g = GfMatrix::zeros(&self.field, self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let v = self.dot(self.row(i), self.row(j));
                g.set(i, j, v);
                g.set(j, i, v);
            }
        }
        g
    }

    /// Inner products `A[i]·B[j]` between rows of two matrices of equal width.
    pub fn cross_gram(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.field != other.field || self.cols != other.cols {
            return Err(Error::DimensionMismatch("cross gram".into()));
        }
        let mut g = GfMatrix::zeros(&self.field, self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                g.set(i, j, self.dot(self.row(i), other.row(j)));
            }
        }
        Ok(g)
    }

    /// `[left·I | M | right·1]`; absent parts are omitted.
    pub fn bordered(&self, left: Option<u32>, right: Option<u32>) -> GfMatrix {
        let lw = if left.is_some() { self.rows } else { 0 };
        let rw = usize::from(right.is_some());
        let cols = lw + self.cols + rw;
        let mut out = GfMatrix::zeros(&self.field, self.rows, cols);
        for r in 0..self.rows {
            if let Some(c) = left {
                out.set(r, r, c);
            }
            for c in 0..self.cols {
                out.set(r, lw + c, self.get(r, c));
            }
            if let Some(e) = right {
                out.set(r, cols - 1, e);
            }
        }
        out
    }

    pub fn hstack(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.field != other.field || self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack".into()));
        }
        let mut out = GfMatrix::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.data[r * out.cols..r * out.cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * out.cols + self.cols..(r + 1) * out.cols].copy_from_slice(other.row(r));
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &GfMatrix) -> Result<GfMatrix> {
        if self.field != other.field || self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(GfMatrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Entry-wise image under a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Result<GfMatrix> {
        if emb.source() != &self.field {
            return Err(Error::SpecMismatch);
        }
        Ok(GfMatrix {
            field: emb.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| emb.apply(x)).collect(),
        })
    }

    /// Reduced row echelon form and its pivot columns. Pivots are taken as the
    /// first nonzero entry in column order; zero rows are dropped.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            m.scale_row(row, inv);
            for r in 0..m.rows {
                if r != row {
                    let factor = m.get(r, col);
                    if factor != 0 {
                        m.add_scaled_row(r, row, f.neg(factor));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        m.data.truncate(row * m.cols);
        m.rows = row;
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M·x = 0}`, one vector per row.
    pub fn null_space(&self) -> GfMatrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = GfMatrix::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            basis.set(i, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                basis.set(i, pc, f.neg(r.get(pr, fc)));
            }
        }
        basis
    }

    /// Whether both matrices span the same row space.
    pub fn same_row_space(&self, other: &GfMatrix) -> bool {
        self.field == other.field && self.cols == other.cols && self.rref().0 == other.rref().0
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: u32) {
        for c in 0..self.cols {
            let v = self.field.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    /// row[dst] += s · row[src]
    fn add_scaled_row(&mut self, dst: usize, src: usize, s: u32) {
        for c in 0..self.cols {
            let v = self.field.add(self.get(dst, c), self.field.mul(s, self.get(src, c)));
            self.set(dst, c, v);
        }
    }

    /// Parses the text form. The header carries only `q`, so the default
    /// modulus for that order is assumed unless `field` is given.
    pub fn parse(text: &str, field: Option<&Field>) -> Result<GfMatrix> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let nums = parse_ints(header)?;
        let [rows, cols, q] = nums[..] else {
            return Err(Error::Parse(format!("matrix header {header:?}")));
        };
        let field = match field {
            Some(f) if f.q() as u64 == q => f.clone(),
            Some(_) => return Err(Error::SpecMismatch),
            None => Field::with_order(q)?,
        };
        let body: Vec<Vec<u32>> = lines
            .map(|l| parse_ints(l).map(|v| v.into_iter().map(|x| x as u32).collect()))
            .collect::<Result<_>>()?;
        if body.len() != rows as usize {
            return Err(Error::Parse(format!("expected {rows} rows, found {}", body.len())));
        }
        GfMatrix::from_rows(&field, cols as usize, &body)
    }
}

fn parse_ints(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
        .collect()
}
