//! Dense exact linear algebra over a [`FiniteField`].

use crate::field::FiniteField;
use crate::upoly::{self, Poly};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<T, G: Fn(&E) -> T>(&self, g: G) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(g).collect() }
    }
}

pub fn zeros<F: FiniteField>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix { rows, cols, data: vec![f.zero(); rows * cols] }
}

pub fn identity<F: FiniteField>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn mul<F: FiniteField>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows);
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let v = f.add(out.get(i, j), &f.mul(x, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn add<F: FiniteField>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect() }
}

pub fn sub<F: FiniteField>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect() }
}

pub fn scale<F: FiniteField>(f: &F, a: &Matrix<F::Elem>, c: &F::Elem) -> Matrix<F::Elem> {
    a.map(|x| f.mul(x, c))
}

pub fn mat_vec<F: FiniteField>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    (0..a.rows).map(|i| a.row(i).iter().zip(v).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))).collect()
}

pub fn is_zero_matrix<F: FiniteField>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| f.is_zero(x))
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<F: FiniteField>(f: &F, a: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !f.is_zero(a.get(i, c))) else { continue };
        if pr != r {
            for j in 0..a.cols {
                a.data.swap(pr * a.cols + j, r * a.cols + j);
            }
        }
        let inv = f.inv(a.get(r, c)).unwrap();
        for j in c..a.cols {
            let v = f.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..a.cols {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FiniteField>(f: &F, a: &Matrix<F::Elem>) -> usize {
    let mut m = a.clone();
    rref(f, &mut m).len()
}

/// Basis of the right null space `{x : a x = 0}`.
pub fn kernel<F: FiniteField>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut m = a.clone();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); a.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, fc));
            }
            v
        })
        .collect()
}

/// Solves `a x = b`; `None` when inconsistent. Returns one particular solution.
pub fn solve<F: FiniteField>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let mut aug = zeros(f, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![f.zero(); a.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, a.cols).clone();
    }
    Some(x)
}

pub fn inverse<F: FiniteField>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut aug = zeros(f, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n + i, f.one());
    }
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut out = zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Some(out)
}

pub fn det<F: FiniteField>(f: &F, a: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.clone();
    let mut d = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else { return f.zero() };
        if pr != c {
            for j in 0..n {
                m.data.swap(pr * n + j, c * n + j);
            }
            d = f.neg(&d);
        }
        let piv = m.get(c, c).clone();
        d = f.mul(&d, &piv);
        let inv = f.inv(&piv).unwrap();
        for i in c + 1..n {
            let factor = f.mul(m.get(i, c), &inv);
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..n {
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                m.set(i, j, v);
            }
        }
    }
    d
}

/// Characteristic polynomial `det(x I - a)` via reduction to Hessenberg form.
pub fn charpoly<F: FiniteField>(f: &F, a: &Matrix<F::Elem>) -> Poly<F> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut h = a.clone();
    // similarity transform to upper Hessenberg form
    for c in 0..n.saturating_sub(2) {
        let Some(pr) = (c + 1..n).find(|&i| !f.is_zero(h.get(i, c))) else { continue };
        if pr != c + 1 {
            for j in 0..n {
                h.data.swap(pr * n + j, (c + 1) * n + j);
            }
            for i in 0..n {
                h.data.swap(i * n + pr, i * n + c + 1);
            }
        }
        let inv = f.inv(h.get(c + 1, c)).unwrap();
        for i in c + 2..n {
            let factor = f.mul(h.get(i, c), &inv);
            if f.is_zero(&factor) {
                continue;
            }
            // row_i -= factor * row_{c+1}
            for j in 0..n {
                let v = f.sub(h.get(i, j), &f.mul(&factor, h.get(c + 1, j)));
                h.set(i, j, v);
            }
            // col_{c+1} += factor * col_i
            for k in 0..n {
                let v = f.add(h.get(k, c + 1), &f.mul(&factor, h.get(k, i)));
                h.set(k, c + 1, v);
            }
        }
    }
    // recurrence for the characteristic polynomials of leading principal blocks
    let mut polys: Vec<Poly<F>> = vec![vec![f.one()]];
    for m in 1..=n {
        let x_minus: Poly<F> = vec![f.neg(h.get(m - 1, m - 1)), f.one()];
        let mut pm = upoly::mul(f, &x_minus, &polys[m - 1]);
        let mut prod = f.one();
        for i in 1..m {
            prod = f.mul(&prod, h.get(m - i, m - i - 1));
            let coef = f.mul(&prod, h.get(m - i - 1, m - 1));
            let term = upoly::scale(f, &polys[m - i - 1], &coef);
            pm = upoly::sub(f, &pm, &term);
        }
        polys.push(pm);
    }
    let mut out = polys.pop().unwrap();
    out.resize(n + 1, f.zero());
    out
}

pub fn pow<F: FiniteField>(f: &F, a: &Matrix<F::Elem>, mut e: u64) -> Matrix<F::Elem> {
    let mut result = identity(f, a.rows);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mul(f, &result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    result
}

/// Evaluates a polynomial at a square matrix.
pub fn poly_at<F: FiniteField>(f: &F, p: &[F::Elem], a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let mut acc = zeros(f, a.rows, a.cols);
    for c in p.iter().rev() {
        acc = mul(f, &acc, a);
        for i in 0..a.rows {
            let v = f.add(acc.get(i, i), c);
            acc.set(i, i, v);
        }
    }
    acc
}
