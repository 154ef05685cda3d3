//! Finite fields `F_q` given by lookup tables, and dense matrices over them.

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: usize = 64;

/// `F_q` with elements `0..q`. For `q = p^k` an element is the polynomial
/// whose base-`p` digits are its coefficients, reduced modulo a fixed monic
/// irreducible of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn digits(x: usize, p: usize, k: usize) -> Vec<usize> {
    (0..k).scan(x, |r, _| {
        let d = *r % p;
        *r /= p;
        Some(d)
    })
    .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Remainder of `a` modulo the monic `m`, coefficients low degree first.
fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().expect("nonempty");
        if lead != 0 {
            let shift = a.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - lead * c % p) % p;
            }
        }
    }
    a
}

fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn irreducible(p: usize, k: usize) -> Vec<usize> {
    let monic = |tail: usize, deg: usize| {
        let mut m = digits(tail, p, deg);
        m.push(1);
        m
    };
    (0..p.pow(k as u32))
        .map(|t| monic(t, k))
        .find(|m| {
            (1..=k / 2).all(|d| (0..p.pow(d as u32)).all(|t| poly_rem(m, &monic(t, d), p).iter().any(|&c| c != 0)))
        })
        .expect("irreducible polynomials exist in every degree")
}

impl Field {
    pub fn new(q: usize) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::resource("field order", format!("q = {q} exceeds {MAX_FIELD_ORDER}")));
        }
        let m = irreducible(p, k);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum, p) as u8;
                let mut prod = poly_rem(&poly_mul(&da, &db, p), &m, p);
                prod.resize(k, 0);
                mul[a * q + b] = undigits(&prod, p) as u8;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).expect("additive inverse") as u8).collect();
        let inv = (0..q).map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).expect("unit") as u8 }).collect();
        Ok(Field { q, p, add, mul, neg, inv })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }
}

/// A dense `rows × cols` matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!("{rows}x{cols} matrix needs {} entries, got {}", rows * cols, data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// The `index`-th matrix in lexicographic order of entries.
    pub fn nth(rows: usize, cols: usize, q: usize, mut index: usize) -> Self {
        let mut data = vec![0u8; rows * cols];
        for e in data.iter_mut().rev() {
            *e = (index % q) as u8;
            index /= q;
        }
        Matrix { rows, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &mut out.data[i * other.cols + j];
                    *t = f.add(*t, f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    /// Row echelon form with pivot columns.
    fn echelon(&self, f: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col) != 0) else { continue };
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, row * m.cols + j);
            }
            let inv = f.inv(m.get(row, col));
            for j in 0..m.cols {
                m.data[row * m.cols + j] = f.mul(inv, m.get(row, j));
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r != row && factor != 0 {
                    for j in 0..m.cols {
                        let v = f.sub(m.get(r, j), f.mul(factor, m.get(row, j)));
                        m.data[r * m.cols + j] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.echelon(f).1.len()
    }

    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let (e, pivots) = aug.echelon(f);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let data = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| e.get(i, n + j)).collect();
        Some(Matrix { rows: n, cols: n, data })
    }
}

/// `|GL_n(F_q)| = ∏_{i<n} (q^n − q^i)`.
pub fn gl_order(n: usize, q: usize) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n).map(|i| qn - (q as u128).pow(i as u32)).product()
}

/// All invertible `n × n` matrices with their inverses, in lexicographic
/// order.
pub fn general_linear_group(f: &Field, n: usize) -> Vec<(Matrix, Matrix)> {
    let q = f.order();
    (0..q.pow((n * n) as u32)).filter_map(|i| {
        let m = Matrix::nth(n, n, q, i);
        m.inverse(f).map(|inv| (m, inv))
    })
    .collect()
}
