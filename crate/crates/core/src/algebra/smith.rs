use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// Smith normal form `U * A * V = D` together with the inverses of the
/// unimodular transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Reducer {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.a.cols() {
            let t = self.a.get(j, k) * c;
            *self.a.get_mut(i, k) += t;
        }
        for k in 0..self.u.cols() {
            let t = self.u.get(j, k) * c;
            *self.u.get_mut(i, k) += t;
        }
        for k in 0..self.u_inv.rows() {
            let t = self.u_inv.get(k, i) * c;
            *self.u_inv.get_mut(k, j) -= t;
        }
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.a.rows() {
            let t = self.a.get(k, j) * c;
            *self.a.get_mut(k, i) += t;
        }
        for k in 0..self.v.rows() {
            let t = self.v.get(k, j) * c;
            *self.v.get_mut(k, i) += t;
        }
        for k in 0..self.v_inv.cols() {
            let t = self.v_inv.get(i, k) * c;
            *self.v_inv.get_mut(j, k) -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.a.cols() {
            let t = -self.a.get(i, k).clone();
            self.a.set(i, k, t);
        }
        for k in 0..self.u.cols() {
            let t = -self.u.get(i, k).clone();
            self.u.set(i, k, t);
        }
        for k in 0..self.u_inv.rows() {
            let t = -self.u_inv.get(k, i).clone();
            self.u_inv.set(k, i, t);
        }
    }

    /// Smallest-magnitude nonzero entry of the trailing block, first in row-major order.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let e = self.a.get(i, j);
                if e.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a.get(bi, bj).abs() <= e.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.a.rows().min(self.a.cols());
        for t in 0..n {
            let Some((pi, pj)) = self.pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if self.clear_line(t) {
                    continue;
                }
                // Row and column t are clear; enforce divisibility on the trailing block.
                let p = self.a.get(t, t).clone();
                let offender = (t + 1..self.a.rows()).find(|&i| {
                    (t + 1..self.a.cols()).any(|j| !self.a.get(i, j).is_multiple_of(&p))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
        }
    }

    /// Eliminates row and column `t` below/right of the pivot. Returns true if a
    /// smaller remainder was swapped into the pivot position and another pass is needed.
    fn clear_line(&mut self, t: usize) -> bool {
        for i in t + 1..self.a.rows() {
            if self.a.get(i, t).is_zero() {
                continue;
            }
            let q = self.a.get(i, t).div_floor(self.a.get(t, t));
            self.add_row(i, t, &-q);
            if !self.a.get(i, t).is_zero() {
                self.swap_rows(t, i);
                return true;
            }
        }
        for j in t + 1..self.a.cols() {
            if self.a.get(t, j).is_zero() {
                continue;
            }
            let q = self.a.get(t, j).div_floor(self.a.get(t, t));
            self.add_col(j, t, &-q);
            if !self.a.get(t, j).is_zero() {
                self.swap_cols(t, j);
                return true;
            }
        }
        false
    }
}

/// Computes the Smith normal form of an arbitrary integer matrix.
///
/// Pivoting picks the smallest-magnitude nonzero entry (first in row-major
/// order), so the transforms are a deterministic function of the input.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (r, c) = a.shape();
    let mut red = Reducer {
        a: a.clone(),
        u: IntegerMatrix::identity(r),
        u_inv: IntegerMatrix::identity(r),
        v: IntegerMatrix::identity(c),
        v_inv: IntegerMatrix::identity(c),
    };
    red.run();
    SmithForm { u: red.u, d: red.a, v: red.v, u_inv: red.u_inv, v_inv: red.v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!((&s.u * &s.u_inv).is_identity());
        assert!((&s.v * &s.v_inv).is_identity());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(f.iter().all(|x| x.is_positive()));
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntegerMatrix::identity(2));
        assert!(s.d.is_identity());
    }

    #[test]
    fn zero_matrix_stays_zero() {
        let s = check(&IntegerMatrix::zeros(3, 2));
        assert!(s.d.is_zero());
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn two_by_two_example() {
        let a = IntegerMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        let s = check(&a);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn empty_shapes() {
        check(&IntegerMatrix::zeros(0, 3));
        check(&IntegerMatrix::zeros(4, 0));
        check(&IntegerMatrix::zeros(0, 0));
    }

    #[test]
    fn needs_divisibility_fixup() {
        // diag(2, 3) has SNF diag(1, 6)
        let a = IntegerMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let s = check(&a);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn deterministic() {
        let a = IntegerMatrix::from_i64_rows(&[vec![4, -6, 10], vec![3, 9, -12], vec![7, 1, 5]]);
        assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
        check(&a);
    }
}
