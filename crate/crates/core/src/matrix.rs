//! Dense integer matrices: Bareiss determinants, exact rational solves and
//! Smith normal form with transforms.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        Matrix {
            rows,
            cols,
            data: (0..rows * cols).map(|k| f(k / cols, k % cols)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Self {
        let r = blocks.iter().map(|b| b.rows).sum();
        let c = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(r, c);
        let (mut i0, mut j0) = (0, 0);
        for b in blocks {
            m.set_block(i0, j0, b);
            i0 += b.rows;
            j0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, i0: usize, j0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(i0 + i, j0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn submatrix(&self, i0: usize, j0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(i0 + i, j0 + j)].clone())
    }

    pub fn hcat(&self, other: &Matrix) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c · row[src]`.
    pub fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * c;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// `col[dst] += c · col[src]`.
    pub fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * c;
            self.data[i * self.cols + dst] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * prev
    }

    /// Solves `self · X = rhs` over the rationals for square nonsingular
    /// `self`; returns `None` if singular.
    pub fn solve_rational(&self, rhs: &Matrix) -> Option<RatMatrix> {
        assert!(self.is_square() && rhs.rows == self.rows);
        let n = self.rows;
        let mut m = self.hcat(rhs);
        let w = m.cols;
        let mut prev = BigInt::one();
        for k in 0..n {
            let p = (k..n).find(|&i| !m[(i, k)].is_zero())?;
            m.swap_rows(p, k);
            for i in k + 1..n {
                for j in k + 1..w {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        let mut x = RatMatrix::zeros(n, rhs.cols);
        for c in 0..rhs.cols {
            for i in (0..n).rev() {
                let mut acc = BigRational::from_integer(m[(i, n + c)].clone());
                for j in i + 1..n {
                    acc -= BigRational::from_integer(m[(i, j)].clone()) * &x[(j, c)];
                }
                x[(i, c)] = acc / BigRational::from_integer(m[(i, i)].clone());
            }
        }
        Some(x)
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse_unimodular(&self) -> Option<Matrix> {
        let x = self.solve_rational(&Matrix::identity(self.rows))?;
        x.to_integer()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            for i in r + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let (a, b) = (m[(r, c)].clone(), m[(i, c)].clone());
                for j in 0..m.cols {
                    let v = &m[(i, j)] * &a - &m[(r, j)] * &b;
                    m[(i, j)] = v;
                }
            }
            r += 1;
        }
        r
    }

    /// Smith normal form `U · self · V = D`.
    pub fn smith(&self) -> Smith {
        smith(self, true)
    }

    /// Invariant factors only (diagonal of the Smith form, zeros included).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        smith(self, false).diag
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Dense rational matrix, only as solver output.
#[derive(Clone, PartialEq, Debug)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn to_integer(&self) -> Option<Matrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(Matrix {
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|x| x.to_integer()).collect(),
            })
        } else {
            None
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// `u · a · v = diag(diag)`, with `u_inv = u⁻¹`; `diag` has `min(rows, cols)`
/// entries, nonnegative, each dividing the next (zeros last).
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
}

fn smith(a: &Matrix, track: bool) -> Smith {
    let (r, c) = (a.rows, a.cols);
    let mut m = a.clone();
    let (mut u, mut u_inv, mut v) = if track {
        (Matrix::identity(r), Matrix::identity(r), Matrix::identity(c))
    } else {
        (Matrix::zeros(0, 0), Matrix::zeros(0, 0), Matrix::zeros(0, 0))
    };

    macro_rules! swap_rows {
        ($i:expr, $j:expr) => {{
            m.swap_rows($i, $j);
            if track {
                u.swap_rows($i, $j);
                u_inv.swap_cols($i, $j);
            }
        }};
    }
    macro_rules! swap_cols {
        ($i:expr, $j:expr) => {{
            m.swap_cols($i, $j);
            if track {
                v.swap_cols($i, $j);
            }
        }};
    }
    // row[dst] += q·row[src]
    macro_rules! add_row {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: &BigInt = $q;
            m.add_row($dst, $src, q);
            if track {
                u.add_row($dst, $src, q);
                u_inv.add_col($src, $dst, &-q);
            }
        }};
    }
    macro_rules! add_col {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: &BigInt = $q;
            m.add_col($dst, $src, q);
            if track {
                v.add_col($dst, $src, q);
            }
        }};
    }

    let steps = r.min(c);
    for t in 0..steps {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &m[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            swap_rows!(t, pi);
            swap_cols!(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if m[(i, t)].is_zero() {
                    continue;
                }
                let q = m[(i, t)].div_floor(&m[(t, t)]);
                add_row!(i, t, &-q);
                if !m[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if m[(t, j)].is_zero() {
                    continue;
                }
                let q = m[(t, j)].div_floor(&m[(t, t)]);
                add_col!(j, t, &-q);
                if !m[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = m[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !m[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => add_row!(t, i, &BigInt::one()),
                None => break,
            }
        }
        if m[(t, t)].is_negative() {
            m.negate_row(t);
            if track {
                u.negate_row(t);
                u_inv.negate_col(t);
            }
        }
    }
    Smith {
        diag: (0..steps).map(|i| m[(i, i)].clone()).collect(),
        u,
        u_inv,
        v,
    }
}

/// Invariant factors of a nonsingular square matrix whose determinant is
/// `det`, computed in `Z/|det|` to keep entries small.
pub fn invariant_factors_mod_det(a: &Matrix, det: &BigInt) -> Vec<BigInt> {
    let d = det.abs();
    assert!(!d.is_zero(), "singular matrix");
    let Some(dm) = d.to_i128().filter(|&x| x < (1i128 << 62)) else {
        return a.invariant_factors();
    };
    let n = a.rows;
    let red = |x: &BigInt| -> i128 { x.mod_floor(&d).to_i128().unwrap() };
    let mut m: Vec<Vec<i128>> = (0..n).map(|i| a.row(i).iter().map(red).collect()).collect();
    let md = |x: i128| x.rem_euclid(dm);
    let mut out = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            // pivot of smallest gcd with the modulus
            let mut best: Option<(usize, usize, i128)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let g = x.gcd(&dm);
                        if best.is_none_or(|(_, _, bg)| g < bg) {
                            best = Some((i, j, g));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                if m[i][t] == 0 {
                    continue;
                }
                let (a0, b0) = (m[t][t], m[i][t]);
                if let Some(u) = quotient_mod(a0, b0, dm) {
                    for j in t..n {
                        m[i][j] = md(m[i][j] - u * m[t][j] % dm);
                    }
                    continue;
                }
                let e = a0.extended_gcd(&b0);
                let (x, y, g) = (e.x, e.y, e.gcd);
                let (p, q) = (a0 / g, b0 / g);
                for j in t..n {
                    let (rt, ri) = (m[t][j], m[i][j]);
                    m[t][j] = md(x * rt + y * ri);
                    m[i][j] = md(-q * rt + p * ri);
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if m[t][j] == 0 {
                    continue;
                }
                let (a0, b0) = (m[t][t], m[t][j]);
                if let Some(u) = quotient_mod(a0, b0, dm) {
                    for row in m.iter_mut().skip(t) {
                        row[j] = md(row[j] - u * row[t] % dm);
                    }
                    continue;
                }
                let e = a0.extended_gcd(&b0);
                let (x, y, g) = (e.x, e.y, e.gcd);
                let (p, q) = (a0 / g, b0 / g);
                for row in m.iter_mut().skip(t) {
                    let (ct, cj) = (row[t], row[j]);
                    row[t] = md(x * ct + y * cj);
                    row[j] = md(-q * ct + p * cj);
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean || (t + 1..n).any(|i| m[i][t] != 0) {
                continue;
            }
            let g = m[t][t].gcd(&dm);
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| m[i][j] % g != 0));
            match bad {
                Some(i) => {
                    for j in t..n {
                        m[t][j] = md(m[t][j] + m[i][j]);
                    }
                }
                None => break,
            }
        }
        out.push(BigInt::from(if m[t][t] == 0 { dm } else { m[t][t].gcd(&dm) }));
    }
    out
}

/// `u` with `a·u ≡ b (mod d)`, if `b` lies in the ideal of `a`.
fn quotient_mod(a: i128, b: i128, d: i128) -> Option<i128> {
    let g = a.gcd(&d);
    if b % g != 0 {
        return None;
    }
    let d1 = d / g;
    let inv = (a / g).extended_gcd(&d1).x.rem_euclid(d1);
    Some((b / g % d1) * inv % d1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn determinants() {
        assert_eq!(mat(&[&[1, 2], &[-2, -1]]).det(), BigInt::from(3));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(mat(&[]).det(), BigInt::one());
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).det(), BigInt::zero());
    }

    #[test]
    fn smith_of_small_matrix() {
        let a = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = a.smith();
        assert_eq!(s.diag, vec![2.into(), 6.into(), 12.into()]);
        let d = &(&s.u * &a) * &s.v;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(d[(i, j)], want);
            }
        }
        assert_eq!(&s.u * &s.u_inv, Matrix::identity(3));
    }

    #[test]
    fn rational_solve() {
        let a = mat(&[&[2, 1], &[1, 2]]);
        let x = a.solve_rational(&Matrix::identity(2)).unwrap();
        assert_eq!(x[(0, 0)], BigRational::new(2.into(), 3.into()));
        assert_eq!(x[(0, 1)], BigRational::new((-1).into(), 3.into()));
        assert!(mat(&[&[1, 1], &[1, 1]]).solve_rational(&Matrix::identity(2)).is_none());
    }

    proptest! {
        #[test]
        fn smith_transforms_are_consistent(v in proptest::collection::vec(-6i64..7, 12)) {
            let a = Matrix::from_fn(3, 4, |i, j| v[i * 4 + j].into());
            let s = a.smith();
            let d = &(&s.u * &a) * &s.v;
            for i in 0..3 {
                for j in 0..4 {
                    let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                    prop_assert_eq!(&d[(i, j)], &want);
                }
            }
            prop_assert_eq!(&s.u * &s.u_inv, Matrix::identity(3));
            for w in s.diag.windows(2) {
                if !w[1].is_zero() {
                    prop_assert!(w[1].is_multiple_of(&w[0]));
                } else {
                    prop_assert!(true);
                }
            }
        }

        #[test]
        fn modular_smith_matches_exact(v in proptest::collection::vec(-5i64..6, 16)) {
            let a = Matrix::from_fn(4, 4, |i, j| v[i * 4 + j].into());
            let det = a.det();
            prop_assume!(!det.is_zero());
            prop_assert_eq!(invariant_factors_mod_det(&a, &det), a.invariant_factors());
        }
    }
}
