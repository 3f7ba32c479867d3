//! Forward-mode dual numbers.
//!
//! [`Dual<T>`] carries a value and one directional derivative.  Because
//! `Dual<T>` is itself a [`Scalar`] whenever `T` is, duals nest:
//! `Dual<Dual<f64>>` propagates the mixed second derivatives needed for
//! curvature.  Everything in the engine that must be differentiated is
//! written once, generically over `Scalar`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Real scalar field usable by the generic geometry routines.
pub trait Scalar:
    Copy
    + Debug
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    /// Innermost real value, used for branch decisions and domain checks.
    fn value(&self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;

    /// Evaluates an analytic function given through its derivative table:
    /// `f(n, x)` must return the `n`-th derivative at `x`.  `order` selects
    /// which derivative is being lifted.
    fn lift_nth(self, f: &dyn Fn(usize, f64) -> f64, order: usize) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn powi(self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn lift_nth(self, f: &dyn Fn(usize, f64) -> f64, order: usize) -> Self {
        f(order, self)
    }
}

/// Dual number `re + eps * e` with `e^2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Self { re, eps }
    }

    /// Constant: zero derivative.
    pub fn constant(re: T) -> Self {
        Self { re, eps: T::zero() }
    }

    /// Independent variable: unit derivative.
    pub fn variable(re: T) -> Self {
        Self { re, eps: T::one() }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.eps + o.eps)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.eps - o.eps)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re, self.re * o.eps + self.eps * o.re)
    }
}

impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q = self.re / o.re;
        Self::new(q, (self.eps - q * o.eps) / o.re)
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.eps)
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn from_f64(v: f64) -> Self {
        Self::constant(T::from_f64(v))
    }
    fn value(&self) -> f64 {
        self.re.value()
    }
    fn sin(self) -> Self {
        Self::new(self.re.sin(), self.eps * self.re.cos())
    }
    fn cos(self) -> Self {
        Self::new(self.re.cos(), -(self.eps * self.re.sin()))
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Self::new(s, self.eps / (T::from_f64(2.0) * s))
    }
    fn lift_nth(self, f: &dyn Fn(usize, f64) -> f64, order: usize) -> Self {
        Self::new(self.re.lift_nth(f, order), self.eps * self.re.lift_nth(f, order + 1))
    }
}

/// Seeds a coordinate tuple for differentiation along coordinate `dir`.
pub fn seed<T: Scalar>(x: &[T; 4], dir: usize) -> [Dual<T>; 4] {
    std::array::from_fn(|m| if m == dir { Dual::variable(x[m]) } else { Dual::constant(x[m]) })
}

/// Lifts a tuple into duals with zero derivative.
pub fn constant4<T: Scalar>(x: &[T; 4]) -> [Dual<T>; 4] {
    std::array::from_fn(|m| Dual::constant(x[m]))
}

/// Inverts a 4x4 matrix over any scalar field with partial pivoting on the
/// innermost real values.  Returns `None` for a numerically singular input.
pub fn invert4<T: Scalar>(m: &[[T; 4]; 4]) -> Option<[[T; 4]; 4]> {
    let mut a = *m;
    let mut inv: [[T; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| T::from_f64((i == j) as u8 as f64)));
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| a[i][col].value().abs().total_cmp(&a[j][col].value().abs()))?;
        if a[pivot][col].value().abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..4 {
            a[col][j] = a[col][j] / p;
            inv[col][j] = inv[col][j] / p;
        }
        for i in 0..4 {
            if i != col {
                let f = a[i][col];
                for j in 0..4 {
                    a[i][j] = a[i][j] - f * a[col][j];
                    inv[i][j] = inv[i][j] - f * inv[col][j];
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_quotient_rules() {
        let x = Dual::variable(2.0);
        let y = x * x * x / (x + Dual::from_f64(1.0));
        // d/dx x^3/(x+1) = (3x^2(x+1) - x^3)/(x+1)^2 = (36 - 8)/9
        assert!((y.re - 8.0 / 3.0).abs() < 1e-15);
        assert!((y.eps - 28.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn trig_and_sqrt() {
        let x = Dual::variable(0.7_f64);
        assert!((x.sin().eps - 0.7_f64.cos()).abs() < 1e-15);
        assert!((x.cos().eps + 0.7_f64.sin()).abs() < 1e-15);
        assert!((x.sqrt().eps - 0.5 / 0.7_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn nested_duals_give_second_derivative() {
        // f = sin(x) * x, f'' = 2cos x - x sin x
        let x0 = 0.4_f64;
        let x = Dual::new(Dual::variable(x0), Dual::from_f64(1.0));
        let f = x.sin() * x;
        let expect = 2.0 * x0.cos() - x0 * x0.sin();
        assert!((f.eps.eps - expect).abs() < 1e-14);
    }

    #[test]
    fn lift_nth_uses_derivative_table() {
        let table = |n: usize, x: f64| if n.is_multiple_of(2) { x.cosh() } else { x.sinh() };
        let x0 = 0.3;
        let x = Dual::new(Dual::variable(x0), Dual::from_f64(1.0));
        let f = x.lift_nth(&table, 0);
        assert!((f.re.re - x0.cosh()).abs() < 1e-15);
        assert!((f.eps.re - x0.sinh()).abs() < 1e-15);
        assert!((f.eps.eps - x0.cosh()).abs() < 1e-15);
    }

    #[test]
    fn inverse_of_dense_matrix() {
        let m = [
            [2.0, 1.0, 0.0, 0.5],
            [0.0, 3.0, 1.0, 0.0],
            [1.0, 0.0, 4.0, 1.0],
            [0.0, 2.0, 0.0, 1.0],
        ];
        let inv = invert4(&m).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let s: f64 = (0..4).map(|k| m[i][k] * inv[k][j]).sum();
                assert!((s - (i == j) as u8 as f64).abs() < 1e-14);
            }
        }
        assert!(invert4(&[[0.0; 4]; 4]).is_none());
    }
}
