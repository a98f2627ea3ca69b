//! Minimal mod-q matrix arithmetic, deliberately separate from `exactalg`.

use crate::exactalg::{FieldSpec, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct SmallMat {
    pub n: usize,
    pub e: Vec<u32>,
}

impl SmallMat {
    pub fn identity(n: usize) -> Self {
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        SmallMat { n, e }
    }

    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.e[i * self.n + j]
    }

    pub fn from_columns(n: usize, cols: &[Vec<u32>]) -> Self {
        let mut e = vec![0; n * n];
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                e[i * n + j] = c[i];
            }
        }
        SmallMat { n, e }
    }

    pub fn mul(&self, other: &SmallMat, q: u32) -> SmallMat {
        let n = self.n;
        let q = q as u64;
        let mut e = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += self.e[i * n + k] as u64 * other.e[k * n + j] as u64;
                }
                e[i * n + j] = (acc % q) as u32;
            }
        }
        SmallMat { n, e }
    }

    pub fn apply(&self, v: &[u32], q: u32) -> Vec<u32> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let s: u64 = (0..n).map(|k| self.e[i * n + k] as u64 * v[k] as u64).sum();
                (s % q as u64) as u32
            })
            .collect()
    }

    /// Gauss–Jordan inverse mod q.
    pub fn inverse(&self, q: u32) -> Option<SmallMat> {
        let n = self.n;
        let w = 2 * n;
        let mut a = vec![0u32; n * w];
        for i in 0..n {
            for j in 0..n {
                a[i * w + j] = self.e[i * n + j];
            }
            a[i * w + n + i] = 1;
        }
        for c in 0..n {
            let pr = (c..n).find(|&r| a[r * w + c] != 0)?;
            for j in 0..w {
                a.swap(c * w + j, pr * w + j);
            }
            let inv = inv_mod(a[c * w + c], q);
            for j in 0..w {
                a[c * w + j] = mulm(a[c * w + j], inv, q);
            }
            for r in 0..n {
                if r == c || a[r * w + c] == 0 {
                    continue;
                }
                let f = a[r * w + c];
                for j in 0..w {
                    let t = mulm(f, a[c * w + j], q);
                    a[r * w + j] = (a[r * w + j] + q - t) % q;
                }
            }
        }
        let mut e = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                e[i * n + j] = a[i * w + n + j];
            }
        }
        Some(SmallMat { n, e })
    }

    /// Base-q code with the first entry most significant (lexicographic order).
    pub fn code(&self, q: u32) -> u64 {
        self.e.iter().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
    }

    pub fn decode(code: u64, n: usize, q: u32) -> SmallMat {
        let mut e = vec![0u32; n * n];
        let mut c = code;
        for slot in e.iter_mut().rev() {
            *slot = (c % q as u64) as u32;
            c /= q as u64;
        }
        SmallMat { n, e }
    }

    pub fn to_matrix(&self, q: u32) -> Matrix {
        let f = FieldSpec::Prime(q);
        Matrix::from_fn(f, self.n, self.n, |i, j| f.from_i64(self.at(i, j) as i64))
    }

    pub fn from_matrix(m: &Matrix) -> Option<SmallMat> {
        if !m.is_square() {
            return None;
        }
        let e = m.entries().iter().map(|s| s.residue()).collect::<Option<Vec<u32>>>()?;
        Some(SmallMat { n: m.rows(), e })
    }
}

pub(crate) fn mulm(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 * b as u64) % q as u64) as u32
}

pub(crate) fn inv_mod(a: u32, q: u32) -> u32 {
    // q is a small prime; linear search keeps this independent of the kernel.
    (1..q).find(|&x| mulm(a, x, q) == 1).expect("nonzero residue is invertible")
}

pub(crate) fn vec_code(v: &[u32], q: u32) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = SmallMat { n: 2, e: vec![1, 2, 0, 1] };
        let inv = m.inverse(3).unwrap();
        assert_eq!(m.mul(&inv, 3), SmallMat::identity(2));
        assert!(SmallMat { n: 2, e: vec![1, 1, 1, 1] }.inverse(2).is_none());
    }

    #[test]
    fn code_roundtrip() {
        let m = SmallMat { n: 2, e: vec![2, 0, 1, 2] };
        assert_eq!(SmallMat::decode(m.code(3), 2, 3), m);
    }
}
