//! Square matrices over `F_{q^2}` and the plain-text matrix file format.
//!
//! File format: line 1 is `n p e`, followed by `n` lines of `n`
//! whitespace-separated canonical element indices.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{FieldElem, FieldSpec, Level};
use crate::poly::Poly;

/// An `n × n` matrix, row-major. The derived order is lexicographic on the
/// flattened canonical element indices, which is the canonical total order
/// on group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mat {
    n: usize,
    data: Vec<FieldElem>,
}

impl Mat {
    pub fn from_vec(n: usize, data: Vec<FieldElem>) -> Self {
        assert_eq!(data.len(), n * n, "matrix data must have n^2 entries");
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        Ok(Self::from_vec(n, rows.concat()))
    }

    pub fn from_indices(spec: &FieldSpec, n: usize, indices: &[u32]) -> Result<Self> {
        if indices.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: indices.len(),
            });
        }
        let data = indices
            .iter()
            .map(|&i| spec.elem(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vec(n, data))
    }

    pub fn zero(n: usize) -> Self {
        Self::from_vec(n, vec![FieldElem::ZERO; n * n])
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, FieldElem::ONE)
    }

    pub fn scalar(n: usize, c: FieldElem) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn diag(entries: &[FieldElem]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n);
        for (i, &c) in entries.iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn indices(&self) -> Vec<u32> {
        self.data.iter().map(|c| c.0).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn from_columns(cols: &[Vec<FieldElem>]) -> Self {
        let n = cols.len();
        let mut m = Self::zero(n);
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_scalar(&self) -> bool {
        *self == Self::scalar(self.n, self.get(0, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn is_at_level(&self, spec: &FieldSpec, level: Level) -> bool {
        self.data.iter().all(|&c| spec.is_at_level(c, level))
    }

    pub fn mul(&self, other: &Self, spec: &FieldSpec) -> Self {
        let n = self.n;
        debug_assert_eq!(n, other.n);
        let mut out = vec![FieldElem::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = spec.mul(a, other.data[k * n + j]);
                    out[i * n + j] = spec.add(out[i * n + j], t);
                }
            }
        }
        Self { n, data: out }
    }

    pub fn add(&self, other: &Self, spec: &FieldSpec) -> Self {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| spec.add(a, b))
            .collect();
        Self { n: self.n, data }
    }

    pub fn sub(&self, other: &Self, spec: &FieldSpec) -> Self {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| spec.sub(a, b))
            .collect();
        Self { n: self.n, data }
    }

    pub fn scale(&self, c: FieldElem, spec: &FieldSpec) -> Self {
        let data = self.data.iter().map(|&a| spec.mul(a, c)).collect();
        Self { n: self.n, data }
    }

    pub fn pow(&self, mut exp: u64, spec: &FieldSpec) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, spec);
            }
            base = base.mul(&base, spec);
            exp >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    /// Entrywise involution `ḡ`.
    pub fn conj(&self, spec: &FieldSpec) -> Self {
        let data = self.data.iter().map(|&a| spec.conj(a)).collect();
        Self { n: self.n, data }
    }

    /// `ᵗḡ`.
    pub fn conj_transpose(&self, spec: &FieldSpec) -> Self {
        self.conj(spec).transpose()
    }

    /// Row echelon form by Gaussian elimination; returns the reduced matrix
    /// rows, the pivot columns, and the determinant factor picked up from
    /// swaps and pivots.
    fn echelon(&self, spec: &FieldSpec) -> (Vec<Vec<FieldElem>>, Vec<usize>, FieldElem) {
        let n = self.n;
        let mut rows: Vec<Vec<FieldElem>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut det = FieldElem::ONE;
        let mut r = 0;
        for col in 0..n {
            let Some(pivot) = (r..n).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            if pivot != r {
                rows.swap(pivot, r);
                det = spec.neg(det);
            }
            let lead = rows[r][col];
            det = spec.mul(det, lead);
            let inv = spec.inv(lead).expect("pivot is nonzero");
            for v in rows[r].iter_mut() {
                *v = spec.mul(*v, inv);
            }
            for i in 0..n {
                if i == r || rows[i][col].is_zero() {
                    continue;
                }
                let factor = rows[i][col];
                for j in 0..n {
                    let t = spec.mul(factor, rows[r][j]);
                    rows[i][j] = spec.sub(rows[i][j], t);
                }
            }
            pivots.push(col);
            r += 1;
        }
        (rows, pivots, det)
    }

    pub fn det(&self, spec: &FieldSpec) -> FieldElem {
        let (_, pivots, det) = self.echelon(spec);
        if pivots.len() < self.n {
            FieldElem::ZERO
        } else {
            det
        }
    }

    pub fn rank(&self, spec: &FieldSpec) -> usize {
        self.echelon(spec).1.len()
    }

    pub fn is_invertible(&self, spec: &FieldSpec) -> bool {
        self.rank(spec) == self.n
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn kernel(&self, spec: &FieldSpec) -> Vec<Vec<FieldElem>> {
        let n = self.n;
        let (rows, pivots, _) = self.echelon(spec);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldElem::ZERO; n];
                v[f] = FieldElem::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = spec.neg(rows[r][f]);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, spec: &FieldSpec) -> Option<Self> {
        let n = self.n;
        let mut a: Vec<Vec<FieldElem>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<FieldElem>> =
            (0..n).map(|i| Self::identity(n).row(i).to_vec()).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[i][col].is_zero())?;
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let lead_inv = spec.inv(a[col][col]).expect("pivot is nonzero");
            for j in 0..n {
                a[col][j] = spec.mul(a[col][j], lead_inv);
                inv[col][j] = spec.mul(inv[col][j], lead_inv);
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let factor = a[i][col];
                for j in 0..n {
                    let t = spec.mul(factor, a[col][j]);
                    a[i][j] = spec.sub(a[i][j], t);
                    let t = spec.mul(factor, inv[col][j]);
                    inv[i][j] = spec.sub(inv[i][j], t);
                }
            }
        }
        Some(Self::from_vec(n, inv.concat()))
    }

    pub fn apply(&self, v: &[FieldElem], spec: &FieldSpec) -> Vec<FieldElem> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| {
                        spec.add(acc, spec.mul(a, b))
                    })
            })
            .collect()
    }

    /// `f(M)` by Horner's rule.
    pub fn eval_poly(&self, f: &Poly, spec: &FieldSpec) -> Self {
        let n = self.n;
        f.coeffs().iter().rev().fold(Self::zero(n), |acc, &c| {
            acc.mul(self, spec).add(&Self::scalar(n, c), spec)
        })
    }

    /// Characteristic polynomial `det(xI - M)`, via reduction to upper
    /// Hessenberg form followed by the standard three-term recurrence.
    pub fn charpoly(&self, spec: &FieldSpec) -> Poly {
        let n = self.n;
        let mut h: Vec<Vec<FieldElem>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let t_inv = spec.inv(h[m][m - 1]).expect("pivot is nonzero");
            for i in m + 1..n {
                let u = spec.mul(h[i][m - 1], t_inv);
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = spec.mul(u, h[m][j]);
                    h[i][j] = spec.sub(h[i][j], t);
                }
                for row in h.iter_mut() {
                    let t = spec.mul(u, row[i]);
                    row[m] = spec.add(row[m], t);
                }
            }
        }
        // p[k] is the characteristic polynomial of the leading k × k block
        let mut p: Vec<Poly> = vec![Poly::one()];
        for m in 1..=n {
            let x_minus = Poly::new(vec![spec.neg(h[m - 1][m - 1]), FieldElem::ONE]);
            let mut pm = x_minus.mul(&p[m - 1], spec);
            let mut t = FieldElem::ONE;
            for i in 1..m {
                t = spec.mul(t, h[m - i][m - i - 1]);
                let c = spec.mul(t, h[m - i - 1][m - 1]);
                pm = pm.sub(&p[m - i - 1].scale(c, spec), spec);
            }
            p.push(pm);
        }
        p.pop().expect("p has n + 1 entries")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = self.row(i).iter().map(|c| c.0.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A parsed matrix file: field parameters plus the raw matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFile {
    pub p: u64,
    pub e: u32,
    pub n: usize,
    pub indices: Vec<u32>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 3 {
            return Err(Error::Parse(format!(
                "header must be `n p e`, got {header:?}"
            )));
        }
        let num = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad number {s:?}")))
        };
        let (n, p, e) = (num(head[0])? as usize, num(head[1])?, num(head[2])? as u32);
        let mut indices = Vec::with_capacity(n * n);
        for row in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {}", row + 1)))?;
            let vals = line
                .split_whitespace()
                .map(|s| num(s).map(|v| v as u32))
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != n {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {n}",
                    row + 1,
                    vals.len()
                )));
            }
            indices.extend(vals);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after matrix rows".into()));
        }
        Ok(Self { p, e, n, indices })
    }

    /// Builds the field and the matrix the file describes.
    pub fn into_matrix(self) -> Result<(FieldSpec, Mat)> {
        let spec = FieldSpec::new(self.p, self.e)?;
        let m = Mat::from_indices(&spec, self.n, &self.indices)?;
        Ok((spec, m))
    }

    /// Checks that the file's field matches `spec` and returns the matrix.
    pub fn matrix_over(&self, spec: &FieldSpec) -> Result<Mat> {
        if self.p != spec.p() as u64 || self.e != spec.e() {
            return Err(Error::InvalidArgument(format!(
                "matrix file is over p = {}, e = {} but the group is over p = {}, e = {}",
                self.p,
                self.e,
                spec.p(),
                spec.e()
            )));
        }
        Mat::from_indices(spec, self.n, &self.indices)
    }

    pub fn render(spec: &FieldSpec, m: &Mat) -> String {
        format!("{} {} {}\n{}\n", m.n(), spec.p(), spec.e(), m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldSpec {
        FieldSpec::new(3, 1).unwrap()
    }

    fn m(spec: &FieldSpec, n: usize, idx: &[u32]) -> Mat {
        Mat::from_indices(spec, n, idx).unwrap()
    }

    #[test]
    fn inverse_and_det() {
        let f = f9();
        let a = m(&f, 2, &[1, 3, 0, 2]);
        let inv = a.inverse(&f).unwrap();
        assert!(a.mul(&inv, &f).is_identity());
        assert_eq!(a.det(&f), FieldElem(2));
        let singular = m(&f, 2, &[1, 2, 2, 1]);
        assert_eq!(singular.det(&f), FieldElem::ZERO);
        assert!(singular.inverse(&f).is_none());
        assert_eq!(singular.kernel(&f).len(), 1);
        let v = &singular.kernel(&f)[0];
        assert!(singular.apply(v, &f).iter().all(|c| c.is_zero()));
    }

    /// det(λI - M) at every field point, as an independent check of the
    /// Hessenberg route.
    fn charpoly_oracle_agrees(f: &FieldSpec, a: &Mat) {
        let cp = a.charpoly(f);
        assert_eq!(cp.degree(), Some(a.n()));
        assert!(cp.is_monic());
        for lambda in f.enumerate(false) {
            let shifted = Mat::scalar(a.n(), lambda).sub(a, f);
            assert_eq!(cp.eval(lambda, f), shifted.det(f));
        }
        // Cayley–Hamilton
        assert!(a.eval_poly(&cp, f).is_zero());
    }

    #[test]
    fn charpoly_matches_determinant_oracle() {
        let f = f9();
        let mut state = 12345u64;
        for n in 1..=4 {
            for _ in 0..40 {
                let idx: Vec<u32> = (0..n * n)
                    .map(|_| {
                        state = state
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(1442695040888963407);
                        ((state >> 33) % 9) as u32
                    })
                    .collect();
                charpoly_oracle_agrees(&f, &m(&f, n, &idx));
            }
        }
        // companion-like matrices with zero subdiagonal entries
        charpoly_oracle_agrees(&f, &m(&f, 3, &[0, 0, 1, 0, 0, 0, 1, 0, 0]));
        charpoly_oracle_agrees(&f, &Mat::identity(3));
    }

    #[test]
    fn matrix_file_round_trip() {
        let f = f9();
        let a = m(&f, 2, &[1, 3, 0, 8]);
        let text = MatrixFile::render(&f, &a);
        assert_eq!(text, "2 3 1\n1 3\n0 8\n");
        let parsed = MatrixFile::parse(&text).unwrap();
        assert_eq!(parsed.matrix_over(&f).unwrap(), a);
        assert!(MatrixFile::parse("2 3 1\n1 2\n").is_err());
        assert!(MatrixFile::parse("2 3 1\n1 2 3\n0 1\n").is_err());
        assert!(MatrixFile::parse("2 3 1\n1 2\n0 9\n")
            .unwrap()
            .into_matrix()
            .is_err());
    }

    #[test]
    fn canonical_order_is_row_major_lexicographic() {
        let f = f9();
        let a = m(&f, 2, &[0, 1, 1, 0]);
        let b = m(&f, 2, &[1, 0, 0, 1]);
        let c = m(&f, 2, &[0, 2, 0, 0]);
        let mut v = vec![b.clone(), a.clone(), c.clone()];
        v.sort();
        assert_eq!(v, vec![a, c, b]);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_mat(n: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..9, n * n)
    }

    proptest! {
        #[test]
        fn determinant_and_inverse(a in arb_mat(3), b in arb_mat(3)) {
            let f = FieldSpec::new(3, 1).unwrap();
            let a = Mat::from_indices(&f, 3, &a).unwrap();
            let b = Mat::from_indices(&f, 3, &b).unwrap();
            prop_assert_eq!(a.mul(&b, &f).det(&f), f.mul(a.det(&f), b.det(&f)));
            prop_assert_eq!(a.conj_transpose(&f).conj_transpose(&f), a.clone());
            prop_assert_eq!(a.rank(&f) + a.kernel(&f).len(), 3);
            prop_assert!(a.eval_poly(&a.charpoly(&f), &f).is_zero());
            match a.inverse(&f) {
                Some(inv) => prop_assert!(a.mul(&inv, &f).is_identity()),
                None => prop_assert!(a.det(&f).is_zero()),
            }
        }
    }
}
