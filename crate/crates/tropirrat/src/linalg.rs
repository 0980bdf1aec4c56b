//! Arbitrary-precision integer and rational linear algebra: vectors, matrices,
//! Hermite and Smith normal forms, exact solvers, and affine lattice bases.
//!
//! Everything here is pure and exact; no floating point enters the
//! computation path anywhere in the crate.

use std::fmt;
use std::ops::{Deref, Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Serialize an [`Int`] as an unbounded decimal string.
pub fn serialize_int<S: Serializer>(v: &Int, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Accept either a decimal string or a plain JSON integer.
pub fn deserialize_int<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Int, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Str(String),
        Num(i64),
    }
    match Repr::deserialize(d)? {
        Repr::Str(s) => s
            .trim()
            .parse::<Int>()
            .map_err(|e| serde::de::Error::custom(format!("bad integer `{s}`: {e}"))),
        Repr::Num(n) => Ok(Int::from(n)),
    }
}

/// Serialize a [`Rat`] as `"p/q"` (or `"p"` when the denominator is 1).
pub fn serialize_rat<S: Serializer>(v: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.denom().is_one() {
        s.serialize_str(&v.numer().to_string())
    } else {
        s.serialize_str(&format!("{}/{}", v.numer(), v.denom()))
    }
}

pub fn deserialize_rat<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Str(String),
        Num(i64),
    }
    let parse = |s: &str| -> Option<Rat> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.trim().parse::<Int>().ok()?;
                let q = q.trim().parse::<Int>().ok()?;
                if q.is_zero() {
                    return None;
                }
                Some(Rat::new(p, q))
            }
            None => Some(Rat::from_integer(s.parse::<Int>().ok()?)),
        }
    };
    match Repr::deserialize(d)? {
        Repr::Str(s) => parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`"))),
        Repr::Num(n) => Ok(Rat::from_integer(Int::from(n))),
    }
}

/// An integer vector of fixed length (a lattice point or a dual functional).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntVec(pub Vec<Int>);

impl IntVec {
    pub fn zeros(n: usize) -> Self {
        IntVec(vec![Int::zero(); n])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        IntVec(v.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, other: &IntVec) -> Int {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> IntVec {
        IntVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Int) -> IntVec {
        IntVec(self.0.iter().map(|a| a * k).collect())
    }

    /// gcd of the absolute values of the coordinates (0 for the zero vector).
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for x in &self.0 {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn to_rat(&self) -> RatVec {
        RatVec(self.0.iter().map(|x| Rat::from_integer(x.clone())).collect())
    }
}

impl Deref for IntVec {
    type Target = [Int];
    fn deref(&self) -> &[Int] {
        &self.0
    }
}

impl Index<usize> for IntVec {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl IndexMut<usize> for IntVec {
    fn index_mut(&mut self, i: usize) -> &mut Int {
        &mut self.0[i]
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for IntVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|x| x.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry(#[serde(deserialize_with = "deserialize_int")] Int);
        let v = Vec::<Entry>::deserialize(d)?;
        Ok(IntVec(v.into_iter().map(|e| e.0).collect()))
    }
}

/// A rational vector.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatVec(pub Vec<Rat>);

impl RatVec {
    pub fn zeros(n: usize) -> Self {
        RatVec(vec![Rat::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, other: &RatVec) -> Rat {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn norm_sq(&self) -> Rat {
        self.0.iter().map(|a| a * a).sum()
    }

    /// Exact integer vector if every entry has denominator 1.
    pub fn to_int(&self) -> Option<IntVec> {
        let mut out = Vec::with_capacity(self.len());
        for x in &self.0 {
            if !x.denom().is_one() {
                return None;
            }
            out.push(x.numer().clone());
        }
        Some(IntVec(out))
    }
}

impl Index<usize> for RatVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

/// A dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<IntVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        debug_assert!(rows.iter().all(|v| v.len() == c));
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flat_map(|v| v.0).collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(rows.iter().map(|r| IntVec::from_i64(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> IntVec {
        IntVec(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_slice(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> IntVec {
        IntVec((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &IntVec) -> IntVec {
        debug_assert_eq!(self.cols, v.len());
        IntVec(
            (0..self.rows)
                .map(|i| self.row_slice(i).iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    /// row[i] -= q * row[k]
    fn row_axpy(&mut self, i: usize, k: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * &self[(k, j)];
            self[(i, j)] -= delta;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Panics on
    /// non-square input.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = &num / &prev;
                }
                m[(i, k)] = Int::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let pivot = (row..rows).find(|&i| !m[(i, col)].is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            for i in row + 1..rows {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let a = m[(row, col)].clone();
                let b = m[(i, col)].clone();
                for j in col..cols {
                    let v = &a * &m[(i, j)] - &b * &m[(row, j)];
                    m[(i, j)] = v;
                }
            }
            rank += 1;
            row += 1;
        }
        rank
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq((0..self.rows).map(|i| self.row(i)))
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<IntVec>::deserialize(d)?;
        if let Some(c) = rows.first().map(|r| r.len()) {
            if rows.iter().any(|r| r.len() != c) {
                return Err(serde::de::Error::custom("ragged matrix"));
            }
        }
        Ok(IntMatrix::from_rows(rows))
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U * M`,
/// `U` unimodular, `H` in row echelon form with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let (rows, cols) = (h.rows(), h.cols());
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        // Euclidean reduction in this column below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if h[(i, col)].abs() < h[(b, col)].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = div_floor(&h[(i, col)], &h[(pivot_row, col)]);
                h.row_axpy(i, pivot_row, &q);
                u.row_axpy(i, pivot_row, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for i in 0..pivot_row {
            let q = div_floor(&h[(i, col)], &h[(pivot_row, col)]);
            h.row_axpy(i, pivot_row, &q);
            u.row_axpy(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

fn div_floor(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}

/// Smith normal form: returns `(S, U, V)` with `S = U * M * V` diagonal,
/// each diagonal entry dividing the next, and `U`, `V` unimodular.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let (rows, cols) = (s.rows(), s.cols());
    let n = rows.min(cols);

    let col_swap = |s: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize| {
        if a == b {
            return;
        }
        for i in 0..s.rows() {
            let tmp = s[(i, a)].clone();
            s[(i, a)] = s[(i, b)].clone();
            s[(i, b)] = tmp;
        }
        for i in 0..v.rows() {
            let tmp = v[(i, a)].clone();
            v[(i, a)] = v[(i, b)].clone();
            v[(i, b)] = tmp;
        }
    };
    // col[a] -= q * col[b]
    let col_axpy = |s: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize, q: &Int| {
        if q.is_zero() {
            return;
        }
        for i in 0..s.rows() {
            let delta = q * &s[(i, b)];
            s[(i, a)] -= delta;
        }
        for i in 0..v.rows() {
            let delta = q * &v[(i, b)];
            v[(i, a)] -= delta;
        }
    };

    let mut t = 0;
    while t < n {
        // Move a nonzero entry into (t, t), if any remains.
        let mut found = false;
        'search: for i in t..rows {
            for j in t..cols {
                if !s[(i, j)].is_zero() {
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                    col_swap(&mut s, &mut v, t, j);
                    found = true;
                    break 'search;
                }
            }
        }
        if !found {
            break;
        }
        // Clear row t and column t by alternating Euclidean passes.
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = div_floor(&s[(i, t)], &s[(t, t)]);
                s.row_axpy(i, t, &q);
                u.row_axpy(i, t, &q);
                if !s[(i, t)].is_zero() {
                    s.swap_rows(i, t);
                    u.swap_rows(i, t);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = div_floor(&s[(t, j)], &s[(t, t)]);
                col_axpy(&mut s, &mut v, j, t, &q);
                if !s[(t, j)].is_zero() {
                    col_swap(&mut s, &mut v, j, t);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    // Enforce the divisibility chain d_i | d_{i+1}.
    loop {
        let mut fixed = true;
        for i in 0..n.saturating_sub(1) {
            let (a, b) = (s[(i, i)].clone(), s[(i + 1, i + 1)].clone());
            if a.is_zero() && b.is_zero() {
                continue;
            }
            if a.is_zero() && !b.is_zero() {
                // Push zeros to the end of the chain.
                s.swap_rows(i, i + 1);
                u.swap_rows(i, i + 1);
                col_swap(&mut s, &mut v, i, i + 1);
                fixed = false;
                continue;
            }
            if !(&b % &a).is_zero() {
                // Fold d_{i+1} into position (i, i) via gcd, then re-clear.
                // col[i] += col[i+1]
                let minus_one = -Int::one();
                col_axpy(&mut s, &mut v, i, i + 1, &minus_one);
                // Now entry (i+1, i) = d_{i+1}; redo the 2x2 block clearing.
                loop {
                    let mut clean = true;
                    for r in [i + 1] {
                        if s[(r, i)].is_zero() {
                            continue;
                        }
                        let q = div_floor(&s[(r, i)], &s[(i, i)]);
                        s.row_axpy(r, i, &q);
                        u.row_axpy(r, i, &q);
                        if !s[(r, i)].is_zero() {
                            s.swap_rows(r, i);
                            u.swap_rows(r, i);
                            clean = false;
                        }
                    }
                    for c in [i + 1] {
                        if s[(i, c)].is_zero() {
                            continue;
                        }
                        let q = div_floor(&s[(i, c)], &s[(i, i)]);
                        col_axpy(&mut s, &mut v, c, i, &q);
                        if !s[(i, c)].is_zero() {
                            col_swap(&mut s, &mut v, c, i);
                            clean = false;
                        }
                    }
                    if clean {
                        break;
                    }
                }
                if s[(i, i)].is_negative() {
                    s.negate_row(i);
                    u.negate_row(i);
                }
                if s[(i + 1, i + 1)].is_negative() {
                    s.negate_row(i + 1);
                    u.negate_row(i + 1);
                }
                fixed = false;
            }
        }
        if fixed {
            break;
        }
    }
    (s, u, v)
}

/// Solve `A x = b` over the rationals. Returns a particular solution together
/// with a basis of the kernel, or `None` when the system is inconsistent.
pub fn solve_rational(a: &IntMatrix, b: &RatVec) -> Option<(RatVec, Vec<RatVec>)> {
    assert_eq!(a.rows(), b.len(), "solve_rational: row/rhs mismatch");
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut r: Vec<Rat> = a.row_slice(i).iter().map(|x| Rat::from_integer(x.clone())).collect();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for j in col..=cols {
            let v = &m[row][j] * &inv;
            m[row][j] = v;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=cols {
                    let v = &m[i][j] - &f * &m[row][j];
                    m[i][j] = v;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    // Inconsistency: a zero row with nonzero rhs.
    for r in m.iter().take(rows) {
        if r[..cols].iter().all(|x| x.is_zero()) && !r[cols].is_zero() {
            return None;
        }
    }
    let mut particular = RatVec::zeros(cols);
    for col in 0..cols {
        if let Some(r) = pivot_of_col[col] {
            particular.0[col] = m[r][cols].clone();
        }
    }
    let mut kernel = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut k = RatVec::zeros(cols);
        k.0[free] = Rat::one();
        for col in 0..cols {
            if let Some(r) = pivot_of_col[col] {
                k.0[col] = -m[r][free].clone();
            }
        }
        kernel.push(k);
    }
    Some((particular, kernel))
}

/// Column-style HNF data for integer solving: `A * V = H` with `V`
/// unimodular and `H` in column echelon form.
pub struct ColumnHnf {
    pub h: IntMatrix,
    pub v: IntMatrix,
}

pub fn column_hnf(a: &IntMatrix) -> ColumnHnf {
    let (h_t, u) = hermite_normal_form(&a.transpose());
    ColumnHnf {
        h: h_t.transpose(),
        v: u.transpose(),
    }
}

/// Solve `A x = b` over the integers, if a solution exists.
pub fn solve_integer(a: &IntMatrix, b: &IntVec) -> Option<IntVec> {
    assert_eq!(a.rows(), b.len(), "solve_integer: row/rhs mismatch");
    let ColumnHnf { h, v } = column_hnf(a);
    let (rows, cols) = (h.rows(), h.cols());
    let mut residual = b.clone();
    let mut y = vec![Int::zero(); cols];
    for j in 0..cols {
        // First nonzero row of column j, if any.
        let Some(p) = (0..rows).find(|&i| !h[(i, j)].is_zero()) else {
            continue;
        };
        // Rows above p must already be zero in the residual.
        let (q, r) = residual[p].div_rem(&h[(p, j)]);
        if !r.is_zero() {
            continue; // try later columns? echelon structure: handled below by final check
        }
        if q.is_zero() {
            continue;
        }
        for i in 0..rows {
            let delta = &q * &h[(i, j)];
            residual[i] -= delta;
        }
        y[j] = q;
    }
    if !residual.is_zero() {
        return None;
    }
    Some(v.mul_vec(&IntVec(y)))
}

/// Basis of the integer kernel `{x : A x = 0}`.
pub fn kernel_int(a: &IntMatrix) -> Vec<IntVec> {
    let ColumnHnf { h, v } = column_hnf(a);
    let mut out = Vec::new();
    for j in 0..h.cols() {
        if (0..h.rows()).all(|i| h[(i, j)].is_zero()) {
            out.push(v.col(j));
        }
    }
    out
}

/// `v / gcd(coordinates)`; errors on the zero vector.
pub fn primitive_part(v: &IntVec) -> Result<IntVec> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(IntVec(v.0.iter().map(|x| x / &g).collect()))
}

/// Basis of the saturated difference lattice of a point set.
///
/// Returns `(origin, basis)` where `origin` is the lexicographically smallest
/// input point and `basis` generates `Z^n ∩ span{p - origin}`, the lattice in
/// which all width and facet computations take place. The basis rows are in
/// Hermite normal form, so the output is canonical for a given point set.
pub fn affine_lattice_basis(points: &[IntVec]) -> (IntVec, Vec<IntVec>) {
    assert!(!points.is_empty(), "affine_lattice_basis needs a point");
    let origin = points.iter().min().unwrap().clone();
    let diffs: Vec<IntVec> = points
        .iter()
        .filter(|p| **p != origin)
        .map(|p| p.sub(&origin))
        .collect();
    if diffs.is_empty() {
        return (origin, Vec::new());
    }
    let d = IntMatrix::from_rows(diffs);
    // Saturation: basis of Z^n ∩ rowspan_Q(D) is the integer kernel of the
    // matrix whose rows generate the orthogonal complement of the row span.
    let perp = kernel_int(&d); // columns x with D x = 0
    let basis = if perp.is_empty() {
        // Full rank: the saturation is all of Z^n.
        (0..d.cols())
            .map(|i| {
                let mut e = IntVec::zeros(d.cols());
                e[i] = Int::one();
                e
            })
            .collect::<Vec<_>>()
    } else {
        kernel_int(&IntMatrix::from_rows(perp))
    };
    // Canonicalize through HNF.
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(basis));
    let rows: Vec<IntVec> = (0..h.rows())
        .map(|i| h.row(i))
        .filter(|r| !r.is_zero())
        .collect();
    (origin, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVec {
        IntVec::from_i64(v)
    }

    #[test]
    fn hnf_example() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul(&m), h);
        assert_eq!(u.det().abs(), Int::one());
        assert_eq!(h, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
        let z = IntMatrix::zeros(2, 2);
        let (h, u) = hermite_normal_form(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn snf_examples() {
        let m = IntMatrix::from_i64(&[&[4, 0], &[0, 6]]);
        let (s, u, v) = smith_normal_form(&m);
        assert_eq!(s, u.mul(&m).mul(&v));
        assert_eq!(s, IntMatrix::from_i64(&[&[2, 0], &[0, 12]]));
        assert_eq!(u.det().abs(), Int::one());
        assert_eq!(v.det().abs(), Int::one());

        let id = IntMatrix::identity(2);
        let (s, u, v) = smith_normal_form(&id);
        assert_eq!((s, u, v), (id.clone(), id.clone(), id));

        let m = IntMatrix::from_i64(&[&[2]]);
        let (s, u, v) = smith_normal_form(&m);
        assert_eq!(s, m);
        assert_eq!(u, IntMatrix::identity(1));
        assert_eq!(v, IntMatrix::identity(1));
    }

    #[test]
    fn solve_rational_cases() {
        // One equation, two unknowns.
        let a = IntMatrix::from_i64(&[&[1, 1]]);
        let b = RatVec(vec![rat(2, 1)]);
        let (p, k) = solve_rational(&a, &b).unwrap();
        assert_eq!(p, RatVec(vec![rat(2, 1), rat(0, 1)]));
        assert_eq!(k.len(), 1);
        assert!(a.row(0).to_rat().dot(&k[0]).is_zero());

        // Inconsistent.
        let a = IntMatrix::from_i64(&[&[1], &[1]]);
        let b = RatVec(vec![rat(0, 1), rat(1, 1)]);
        assert!(solve_rational(&a, &b).is_none());

        // Diagonal.
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let b = RatVec(vec![rat(1, 1), rat(1, 1)]);
        let (p, k) = solve_rational(&a, &b).unwrap();
        assert_eq!(p, RatVec(vec![rat(1, 2), rat(1, 3)]));
        assert!(k.is_empty());
    }

    #[test]
    fn solve_integer_cases() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve_integer(&a, &iv(&[4, 9])), Some(iv(&[2, 3])));
        assert_eq!(solve_integer(&a, &iv(&[1, 3])), None);
        // Underdetermined with integer solution.
        let a = IntMatrix::from_i64(&[&[2, 3]]);
        let x = solve_integer(&a, &iv(&[1])).unwrap();
        assert_eq!(a.mul_vec(&x), iv(&[1]));
    }

    #[test]
    fn primitive_part_cases() {
        assert_eq!(primitive_part(&iv(&[2, 4, 6])).unwrap(), iv(&[1, 2, 3]));
        assert_eq!(primitive_part(&iv(&[0, -3])).unwrap(), iv(&[0, -1]));
        assert_eq!(primitive_part(&iv(&[5, 7])).unwrap(), iv(&[5, 7]));
        assert!(matches!(primitive_part(&iv(&[0, 0])), Err(Error::ZeroVector)));
    }

    #[test]
    fn affine_basis_saturates() {
        let (o, b) = affine_lattice_basis(&[iv(&[0, 0]), iv(&[2, 2])]);
        assert_eq!(o, iv(&[0, 0]));
        assert_eq!(b, vec![iv(&[1, 1])]);

        let (o, b) = affine_lattice_basis(&[iv(&[5, 5])]);
        assert_eq!(o, iv(&[5, 5]));
        assert!(b.is_empty());

        let (_, b) = affine_lattice_basis(&[iv(&[0, 0]), iv(&[1, 0]), iv(&[0, 1])]);
        assert_eq!(b, vec![iv(&[1, 0]), iv(&[0, 1])]);
    }

    #[test]
    fn det_and_rank() {
        let m = IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(m.det(), int(-3));
        assert_eq!(m.rank(), 3);
        let m = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.det(), int(0));
        assert_eq!(m.rank(), 1);
    }
}
