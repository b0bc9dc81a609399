//! Exact complex, quaternion and octonion arithmetic over the rationals,
//! plus matrices with such entries. Used to realify the classical matrix
//! models and to build the exceptional Jordan algebra Herm(3, O).

use crate::scalar::{int, Scalar};
use num_traits::Zero;

/// Element of a composition algebra of dimension 1, 2, 4 or 8 over Q,
/// built by Cayley–Dickson doubling: reals, complexes, quaternions,
/// octonions. Coefficients are indexed 0..dim with basis
/// 1, i | j, k | l, il, jl, kl.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdNumber {
    pub dim: usize,
    pub coords: Vec<Scalar>,
}

impl CdNumber {
    pub fn zero(dim: usize) -> Self {
        assert!(matches!(dim, 1 | 2 | 4 | 8));
        CdNumber {
            dim,
            coords: vec![Scalar::zero(); dim],
        }
    }

    pub fn one(dim: usize) -> Self {
        let mut x = CdNumber::zero(dim);
        x.coords[0] = int(1);
        x
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut x = CdNumber::zero(dim);
        x.coords[k] = int(1);
        x
    }

    pub fn from_scalar(dim: usize, s: Scalar) -> Self {
        let mut x = CdNumber::zero(dim);
        x.coords[0] = s;
        x
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn real_part(&self) -> Scalar {
        self.coords[0].clone()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        CdNumber {
            dim: self.dim,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        CdNumber {
            dim: self.dim,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CdNumber {
            dim: self.dim,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        CdNumber {
            dim: self.dim,
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    /// Conjugation: negates all imaginary coordinates.
    pub fn conj(&self) -> Self {
        let mut c = self.coords.clone();
        for x in c.iter_mut().skip(1) {
            *x = -x.clone();
        }
        CdNumber {
            dim: self.dim,
            coords: c,
        }
    }

    /// Cayley–Dickson product: (a,b)(c,d) = (ac - d̄ b, d a + b c̄).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        if self.dim == 1 {
            return CdNumber {
                dim: 1,
                coords: vec![&self.coords[0] * &other.coords[0]],
            };
        }
        let h = self.dim / 2;
        let a = self.half(0);
        let b = self.half(h);
        let c = other.half(0);
        let d = other.half(h);
        let first = a.mul(&c).sub(&d.conj().mul(&b));
        let second = d.mul(&a).add(&b.mul(&c.conj()));
        let mut coords = first.coords;
        coords.extend(second.coords);
        CdNumber {
            dim: self.dim,
            coords,
        }
    }

    fn half(&self, offset: usize) -> CdNumber {
        CdNumber {
            dim: self.dim / 2,
            coords: self.coords[offset..offset + self.dim / 2].to_vec(),
        }
    }

    /// Squared norm = x * conj(x), a nonnegative rational.
    pub fn norm_sq(&self) -> Scalar {
        self.coords.iter().map(|c| c * c).sum()
    }
}

/// Matrix with entries in a composition algebra of fixed dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdMatrix {
    pub n: usize,
    pub entry_dim: usize,
    pub entries: Vec<CdNumber>,
}

impl CdMatrix {
    pub fn zeros(n: usize, entry_dim: usize) -> Self {
        CdMatrix {
            n,
            entry_dim,
            entries: vec![CdNumber::zero(entry_dim); n * n],
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &CdNumber {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CdNumber) {
        assert_eq!(v.dim, self.entry_dim);
        self.entries[i * self.n + j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.entry_dim), (other.n, other.entry_dim));
        CdMatrix {
            n: self.n,
            entry_dim: self.entry_dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.entry_dim), (other.n, other.entry_dim));
        CdMatrix {
            n: self.n,
            entry_dim: self.entry_dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        CdMatrix {
            n: self.n,
            entry_dim: self.entry_dim,
            entries: self.entries.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.entry_dim), (other.n, other.entry_dim));
        let mut out = CdMatrix::zeros(self.n, self.entry_dim);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = CdNumber::zero(self.entry_dim);
                for k in 0..self.n {
                    let a = self.at(i, k);
                    let b = other.at(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Conjugate transpose.
    pub fn conj_transpose(&self) -> Self {
        let mut out = CdMatrix::zeros(self.n, self.entry_dim);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.at(j, i).conj());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Flattens to a real coordinate vector (row-major, entry coords inline).
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.n * self.n * self.entry_dim);
        for e in &self.entries {
            v.extend(e.coords.iter().cloned());
        }
        v
    }

    /// Real part of the trace.
    pub fn real_trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.n {
            t += self.at(i, i).real_part();
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn oct(k: usize) -> CdNumber {
        CdNumber::basis(8, k)
    }

    #[test]
    fn quaternion_table() {
        let i = CdNumber::basis(4, 1);
        let j = CdNumber::basis(4, 2);
        let k = CdNumber::basis(4, 3);
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&i), k.neg());
        assert_eq!(j.mul(&k), i);
        assert_eq!(k.mul(&i), j);
        assert_eq!(i.mul(&i), CdNumber::one(4).neg());
        assert_eq!(j.mul(&j), CdNumber::one(4).neg());
        assert_eq!(k.mul(&k), CdNumber::one(4).neg());
    }

    #[test]
    fn octonion_basic_relations() {
        // all imaginary units square to -1, and anticommute pairwise
        for a in 1..8 {
            assert_eq!(oct(a).mul(&oct(a)), CdNumber::one(8).neg());
            for b in (a + 1)..8 {
                let ab = oct(a).mul(&oct(b));
                let ba = oct(b).mul(&oct(a));
                assert_eq!(ab, ba.neg());
            }
        }
    }

    #[test]
    fn octonion_alternative_but_not_associative() {
        // alternativity: x(xy) = (xx)y and (yx)x = y(xx) on all basis pairs
        for a in 0..8 {
            for b in 0..8 {
                let x = oct(a);
                let y = oct(b);
                assert_eq!(x.mul(&x.mul(&y)), x.mul(&x).mul(&y));
                assert_eq!(y.mul(&x).mul(&x), y.mul(&x.mul(&x)));
            }
        }
        // non-associativity witness: (e1 e2) e4 != e1 (e2 e4)
        let lhs = oct(1).mul(&oct(2)).mul(&oct(4));
        let rhs = oct(1).mul(&oct(2).mul(&oct(4)));
        assert_eq!(lhs, rhs.neg());
    }

    #[test]
    fn octonion_norm_multiplicative() {
        let x = CdNumber {
            dim: 8,
            coords: (0..8).map(|k| int(k as i64 - 3)).collect(),
        };
        let y = CdNumber {
            dim: 8,
            coords: (0..8).map(|k| int(2 * k as i64 + 1)).collect(),
        };
        assert_eq!(x.mul(&y).norm_sq(), x.norm_sq() * y.norm_sq());
    }

    #[test]
    fn conj_is_antiautomorphism() {
        let x = CdNumber {
            dim: 8,
            coords: (0..8).map(|k| int(k as i64)).collect(),
        };
        let y = CdNumber {
            dim: 8,
            coords: (0..8).map(|k| int(7 - k as i64)).collect(),
        };
        assert_eq!(x.mul(&y).conj(), y.conj().mul(&x.conj()));
    }
}
