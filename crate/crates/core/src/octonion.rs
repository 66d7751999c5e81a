//! Octonion arithmetic over a canonical basis `{1 = J0, J1, ..., J7}`.
//!
//! The multiplication table is generated from the seven Fano lines
//! `{i, i+1, i+3}` (indices reduced into `1..=7`), each of which multiplies
//! cyclically like a quaternion triple `(i, j, k)`. Products of two distinct
//! imaginary units anticommute and every imaginary unit squares to `-1`.
//! Basis products are stored as exact signed indices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Reduce an imaginary index into `1..=7`.
const fn reduce(i: usize) -> usize {
    (i + 6) % 7 + 1
}

/// Signed basis index: `J_i J_j = sign * J_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisProduct {
    pub sign: i8,
    pub index: u8,
}

/// The 8x8 signed multiplication table of the canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationTable {
    entries: [[BasisProduct; 8]; 8],
}

const fn build_table() -> [[BasisProduct; 8]; 8] {
    let mut t = [[BasisProduct { sign: 1, index: 0 }; 8]; 8];
    let mut i = 0;
    while i < 8 {
        t[0][i] = BasisProduct {
            sign: 1,
            index: i as u8,
        };
        t[i][0] = BasisProduct {
            sign: 1,
            index: i as u8,
        };
        if i > 0 {
            t[i][i] = BasisProduct { sign: -1, index: 0 };
        }
        i += 1;
    }
    let lines = fano_lines();
    let mut l = 0;
    while l < 7 {
        let [a, b, c] = lines[l];
        let cyc = [[a, b, c], [b, c, a], [c, a, b]];
        let mut k = 0;
        while k < 3 {
            let [x, y, z] = cyc[k];
            t[x][y] = BasisProduct {
                sign: 1,
                index: z as u8,
            };
            t[y][x] = BasisProduct {
                sign: -1,
                index: z as u8,
            };
            k += 1;
        }
        l += 1;
    }
    t
}

/// The seven oriented Fano lines `(i, i+1, i+3)`, `i = 1..=7`.
pub const fn fano_lines() -> [[usize; 3]; 7] {
    let mut lines = [[0usize; 3]; 7];
    let mut i = 1;
    while i <= 7 {
        lines[i - 1] = [i, reduce(i + 1), reduce(i + 3)];
        i += 1;
    }
    lines
}

static TABLE: MultiplicationTable = MultiplicationTable {
    entries: build_table(),
};

impl MultiplicationTable {
    pub fn canonical() -> &'static MultiplicationTable {
        &TABLE
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> BasisProduct {
        self.entries[i][j]
    }

    /// Flattened `(i, j, sign, k)` rows in row-major order.
    pub fn rows(&self) -> Vec<TableEntry> {
        let mut out = Vec::with_capacity(64);
        for i in 0..8 {
            for j in 0..8 {
                let p = self.entries[i][j];
                out.push(TableEntry {
                    i,
                    j,
                    sign: p.sign,
                    k: p.index as usize,
                });
            }
        }
        out
    }
}

/// One row of the table dump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub sign: i8,
    pub k: usize,
}

/// An octonion `a = sum_i coeffs[i] J_i`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Octonion {
    pub coeffs: [f64; 8],
}

impl Octonion {
    pub const ZERO: Octonion = Octonion { coeffs: [0.0; 8] };
    pub const ONE: Octonion = Octonion {
        coeffs: [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    };

    pub const fn new(coeffs: [f64; 8]) -> Self {
        Octonion { coeffs }
    }

    /// The basis element `J_i`.
    pub fn basis(i: usize) -> Self {
        assert!(i < 8, "basis index {i} out of range");
        let mut coeffs = [0.0; 8];
        coeffs[i] = 1.0;
        Octonion { coeffs }
    }

    pub fn real(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.coeffs;
        c.iter_mut().for_each(|x| *x *= s);
        Octonion { coeffs: c }
    }

    pub fn multiply(&self, other: &Octonion) -> Octonion {
        let table = MultiplicationTable::canonical();
        let mut out = [0.0; 8];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let p = table.get(i, j);
                out[p.index as usize] += f64::from(p.sign) * a * b;
            }
        }
        Octonion { coeffs: out }
    }

    /// `a* = alpha 1 - a_0`.
    pub fn conjugate(&self) -> Octonion {
        let mut c = self.coeffs;
        c[1..].iter_mut().for_each(|x| *x = -*x);
        Octonion { coeffs: c }
    }

    pub fn inner(&self, other: &Octonion) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.inner(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

/// `(ab)c - a(bc)`.
pub fn associator(a: &Octonion, b: &Octonion, c: &Octonion) -> Octonion {
    a.multiply(b).multiply(c) - a.multiply(&b.multiply(c))
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        let mut c = self.coeffs;
        c.iter_mut()
            .zip(rhs.coeffs.iter())
            .for_each(|(x, y)| *x += y);
        Octonion { coeffs: c }
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        let mut c = self.coeffs;
        c.iter_mut()
            .zip(rhs.coeffs.iter())
            .for_each(|(x, y)| *x -= y);
        Octonion { coeffs: c }
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        self.scale(-1.0)
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        self.multiply(&rhs)
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        rhs.scale(self)
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*J{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(i: usize) -> Octonion {
        Octonion::basis(i)
    }

    #[test]
    fn fano_lines_are_the_expected_triples() {
        assert_eq!(
            fano_lines(),
            [
                [1, 2, 4],
                [2, 3, 5],
                [3, 4, 6],
                [4, 5, 7],
                [5, 6, 1],
                [6, 7, 2],
                [7, 1, 3]
            ]
        );
    }

    #[test]
    fn basis_rules() {
        assert_eq!(j(1) * j(2), j(4));
        assert_eq!(j(2) * j(1), -j(4));
        assert_eq!(j(5) * j(6), j(1));
        for i in 1..8 {
            assert_eq!(j(i) * j(i), -Octonion::ONE);
            // J_i J_{i+1} = J_{i+3}
            assert_eq!(j(i) * j(reduce(i + 1)), j(reduce(i + 3)));
        }
    }

    #[test]
    fn row_and_column_zero_act_as_identity() {
        let t = MultiplicationTable::canonical();
        for i in 0..8 {
            assert_eq!(
                t.get(0, i),
                BasisProduct {
                    sign: 1,
                    index: i as u8
                }
            );
            assert_eq!(
                t.get(i, 0),
                BasisProduct {
                    sign: 1,
                    index: i as u8
                }
            );
        }
    }

    #[test]
    fn anticommutativity_of_distinct_imaginary_units() {
        let t = MultiplicationTable::canonical();
        for i in 1..8 {
            for k in 1..8 {
                if i == k {
                    continue;
                }
                let a = t.get(i, k);
                let b = t.get(k, i);
                assert_eq!(a.index, b.index);
                assert_eq!(a.sign, -b.sign);
                assert_ne!(a.index, 0);
            }
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(Octonion::ONE.conjugate(), Octonion::ONE);
        assert_eq!(j(3).conjugate(), -j(3));
        assert_eq!((j(1) * j(2)).conjugate(), j(2) * j(1));
        assert_eq!((j(1) * j(2)).conjugate(), -j(4));
    }

    #[test]
    fn associator_of_non_collinear_units_is_nonzero() {
        // J1, J2, J3 are not on a common Fano line.
        let a = associator(&j(1), &j(2), &j(3));
        assert!(a.norm() > 1.0);
        // J1, J2, J4 are: the subalgebra is associative.
        assert_eq!(associator(&j(1), &j(2), &j(4)), Octonion::ZERO);
    }

    #[test]
    fn inner_products_of_basis() {
        assert_eq!(j(2).inner(&j(2)), 1.0);
        assert_eq!(j(2).inner(&j(5)), 0.0);
    }
}
