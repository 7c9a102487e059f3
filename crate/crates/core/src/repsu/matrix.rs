use std::ops::{Add, Mul, Sub};

use crate::qcore::{QContext, QReal};

/// Dense real matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    rows: usize,
    cols: usize,
    data: Vec<QReal>,
    prec: u32,
}

impl OperatorMatrix {
    pub fn zeros(rows: usize, cols: usize, ctx: &QContext) -> Self {
        OperatorMatrix { rows, cols, data: vec![ctx.zero(); rows * cols], prec: ctx.bits() }
    }

    pub fn identity(n: usize, ctx: &QContext) -> Self {
        let mut m = Self::zeros(n, n, ctx);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub fn diagonal(diag: Vec<QReal>, ctx: &QContext) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n, ctx);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, k: usize) -> &QReal {
        &self.data[i * self.cols + k]
    }

    pub fn set(&mut self, i: usize, k: usize, v: QReal) {
        self.data[i * self.cols + k] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = OperatorMatrix {
            rows: self.cols,
            cols: self.rows,
            data: self.data.clone(),
            prec: self.prec,
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                t.data[k * self.rows + i] = self.get(i, k).clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &QReal) -> Self {
        OperatorMatrix {
            data: self.data.iter().map(|x| x * s).collect(),
            ..self.clone()
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|k| i == k || self.get(i, k).is_zero()))
    }

    /// Applies f to each diagonal entry of a diagonal matrix.
    pub fn map_diagonal<F: Fn(&QReal) -> QReal>(&self, f: F) -> Self {
        assert!(self.is_diagonal() && self.rows == self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = f(self.get(i, i));
            m.set(i, i, v);
        }
        m
    }

    pub fn pow(&self, r: u32, ctx: &QContext) -> Self {
        let mut acc = Self::identity(self.rows, ctx);
        for _ in 0..r {
            acc = &acc * self;
        }
        acc
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        &(a * b) - &(b * a)
    }

    /// Kronecker product, lexicographic in (row of a, row of b).
    pub fn kron(a: &Self, b: &Self) -> Self {
        let rows = a.rows * b.rows;
        let cols = a.cols * b.cols;
        let zero = QReal::zero(a.prec.max(b.prec));
        let mut data = vec![zero; rows * cols];
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = a.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for p in 0..b.rows {
                    for s in 0..b.cols {
                        let y = b.get(p, s);
                        if !y.is_zero() {
                            data[(i * b.rows + p) * cols + k * b.cols + s] = x * y;
                        }
                    }
                }
            }
        }
        OperatorMatrix { rows, cols, data, prec: a.prec.max(b.prec) }
    }

    pub fn apply(&self, v: &[QReal]) -> Vec<QReal> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = QReal::zero(self.prec);
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn max_abs(&self) -> QReal {
        self.data
            .iter()
            .fold(QReal::zero(self.prec), |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> QReal {
        (self - other).max_abs()
    }

    /// max|a-b| / max(1, max|a|, max|b|)
    pub fn rel_residual(&self, other: &Self) -> QReal {
        let scale = self.max_abs().max(other.max_abs()).max(QReal::one(self.prec));
        &self.max_abs_diff(other) / &scale
    }
}

impl<'a> Mul<&'a OperatorMatrix> for &'a OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, o: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.cols, o.rows);
        let prec = self.prec.max(o.prec);
        let mut data = vec![QReal::zero(prec); self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for s in 0..o.cols {
                    let b = o.get(k, s);
                    if !b.is_zero() {
                        data[i * o.cols + s] += a * b;
                    }
                }
            }
        }
        OperatorMatrix { rows: self.rows, cols: o.cols, data, prec }
    }
}

macro_rules! elementwise {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a OperatorMatrix> for &'a OperatorMatrix {
            type Output = OperatorMatrix;
            fn $m(self, o: &OperatorMatrix) -> OperatorMatrix {
                assert_eq!((self.rows, self.cols), (o.rows, o.cols));
                OperatorMatrix {
                    rows: self.rows,
                    cols: self.cols,
                    data: self.data.iter().zip(&o.data).map(|(a, b)| a.$m(b)).collect(),
                    prec: self.prec.max(o.prec),
                }
            }
        }
    };
}

elementwise!(Add, add);
elementwise!(Sub, sub);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_kron() {
        let c = QContext::new("0.5", 50).unwrap();
        let mut a = OperatorMatrix::zeros(2, 2, &c);
        a.set(0, 1, c.int(2));
        a.set(1, 0, c.int(3));
        let i = OperatorMatrix::identity(2, &c);
        assert_eq!(&a * &i, a);
        let sq = &a * &a;
        assert_eq!(*sq.get(0, 0), 6);
        assert_eq!(a.transpose().get(0, 1), &c.int(3));
        let k = OperatorMatrix::kron(&a, &i);
        assert_eq!(k.rows(), 4);
        assert_eq!(*k.get(0, 2), 2);
        assert_eq!(*k.get(3, 1), 3);
        assert!(OperatorMatrix::commutator(&a, &i).max_abs().is_zero());
        assert_eq!(a.apply(&[c.one(), c.int(5)]), vec![c.int(10), c.int(3)]);
    }
}
