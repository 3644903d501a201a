//! Univariate polynomials with exact coefficients.
//!
//! `UniPoly<Fp>` covers program layers and shift polynomials in `t`;
//! `UniPoly<UniPoly<Fp>>` covers layers of a program shifted by polynomials,
//! where each coefficient is itself a polynomial in `t`.

use crate::algebra::field::{Field, Fp};
use crate::algebra::Scalar;
use std::fmt;

/// Indeterminate tag: a program variable `x_i` (0-based index), the
/// interpolation variable `y`, or the shift variable `t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Var {
    X(u32),
    Y,
    T,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{}", i + 1),
            Var::Y => write!(f, "y"),
            Var::T => write!(f, "t"),
        }
    }
}

/// A univariate polynomial, lowest-degree coefficient first.
///
/// Invariant: the trailing coefficient is nonzero unless the polynomial is
/// zero, in which case the coefficient list is empty. A zero exemplar of the
/// coefficient type is kept so that empty polynomials still know their field
/// and coefficient shape.
#[derive(Clone)]
pub struct UniPoly<C: Scalar> {
    var: Var,
    inner_zero: C,
    coeffs: Vec<C>,
}

impl<C: Scalar> UniPoly<C> {
    pub fn new(var: Var, inner_zero: C, mut coeffs: Vec<C>) -> Self {
        debug_assert!(inner_zero.is_zero());
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            var,
            inner_zero,
            coeffs,
        }
    }

    pub fn zero(var: Var, inner_zero: C) -> Self {
        Self::new(var, inner_zero, vec![])
    }

    pub fn constant(var: Var, c: C) -> Self {
        let z = c.zero_like();
        Self::new(var, z, vec![c])
    }

    /// `c * v^deg`.
    pub fn monomial(var: Var, c: C, deg: usize) -> Self {
        let z = c.zero_like();
        let mut coeffs = vec![z.clone(); deg];
        coeffs.push(c);
        Self::new(var, z, coeffs)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff_at(&self, j: usize) -> C {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| self.inner_zero.clone())
    }

    pub fn inner_zero(&self) -> &C {
        &self.inner_zero
    }

    /// Horner evaluation at a point of the coefficient domain.
    pub fn eval(&self, at: &C) -> C {
        let mut acc = self.inner_zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// Renames the indeterminate; coefficients are untouched.
    pub fn retag(&self, var: Var) -> Self {
        UniPoly {
            var,
            inner_zero: self.inner_zero.clone(),
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitutes `v -> v^stride`, spreading coefficients apart.
    pub fn substitute_power(&self, stride: usize) -> Self {
        assert!(stride >= 1, "stride must be positive");
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![self.inner_zero.clone(); (self.coeffs.len() - 1) * stride + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j * stride] = c.clone();
        }
        Self::new(self.var, self.inner_zero.clone(), coeffs)
    }

    /// Substitutes `v -> v + offset`: the composition used when shifting a
    /// program layer.
    pub fn compose_shift(&self, offset: &C) -> Self {
        // Horner over (v + offset): acc <- acc*(v + offset) + c_j from the top.
        let mut acc = Self::zero(self.var, self.inner_zero.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_linear(offset);
            acc = acc.add(&Self::constant(self.var, c.clone()));
        }
        acc
    }

    /// Multiplication by the linear factor `(v + offset)`.
    fn mul_linear(&self, offset: &C) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![self.inner_zero.clone(); self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j + 1] = coeffs[j + 1].add(c);
            coeffs[j] = coeffs[j].add(&c.mul(offset));
        }
        Self::new(self.var, self.inner_zero.clone(), coeffs)
    }
}

impl UniPoly<Fp> {
    pub fn from_values(var: Var, field: Field, values: &[u64]) -> Self {
        let coeffs = values.iter().map(|&v| field.el(v)).collect();
        Self::new(var, field.zero(), coeffs)
    }

    /// The polynomial `v` itself.
    pub fn variable(var: Var, field: Field) -> Self {
        Self::monomial(var, field.one(), 1)
    }

    /// Exact division: panics if `rhs` does not divide `self`. Used by
    /// fraction-free elimination, where divisibility is guaranteed.
    pub fn div_exact(&self, rhs: &Self) -> Self {
        assert!(!rhs.coeffs.is_empty(), "division by the zero polynomial");
        if self.coeffs.is_empty() {
            return self.clone();
        }
        assert!(
            self.coeffs.len() >= rhs.coeffs.len(),
            "inexact polynomial division: degree too small"
        );
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.inner_zero; self.coeffs.len() - rhs.coeffs.len() + 1];
        let lead_inv = rhs.coeffs.last().unwrap().inverse();
        for q_deg in (0..quot.len()).rev() {
            let top = rem[q_deg + rhs.coeffs.len() - 1];
            if top.is_zero() {
                continue;
            }
            let q = top * lead_inv;
            quot[q_deg] = q;
            for (j, rc) in rhs.coeffs.iter().enumerate() {
                rem[q_deg + j] -= q * *rc;
            }
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "inexact polynomial division: nonzero remainder"
        );
        Self::new(self.var, self.inner_zero, quot)
    }
}

/// Indeterminates are compatible when equal, or when either side is a
/// constant (constants belong to every polynomial ring).
fn compatible_var<C: Scalar>(a: &UniPoly<C>, b: &UniPoly<C>) -> Var {
    if a.var == b.var || b.is_constant() {
        a.var
    } else {
        debug_assert!(
            a.is_constant(),
            "mixed indeterminates {} vs {}",
            a.var,
            b.var
        );
        b.var
    }
}

impl<C: Scalar> PartialEq for UniPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.var != other.var && !(self.is_constant() && other.is_constant()) {
            return false;
        }
        self.coeffs == other.coeffs
    }
}

impl<C: Scalar> fmt::Debug for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Scalar> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c_str = format!("{c}");
            let is_one = c_str == "1";
            let needs_parens = c_str.contains(' ');
            match (j, is_one) {
                (0, _) => write!(f, "{c_str}")?,
                (_, true) => {}
                (_, false) if needs_parens => write!(f, "({c_str})*")?,
                (_, false) => write!(f, "{c_str}*")?,
            }
            if j == 1 {
                write!(f, "{}", self.var)?;
            } else if j > 1 {
                write!(f, "{}^{}", self.var, j)?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> Scalar for UniPoly<C> {
    fn field(&self) -> Field {
        self.inner_zero.field()
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.var, self.inner_zero.clone())
    }

    fn one_like(&self) -> Self {
        Self::constant(self.var, self.inner_zero.one_like())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let var = compatible_var(self, rhs);
        let mut coeffs = vec![self.inner_zero.clone(); self.coeffs.len().max(rhs.coeffs.len())];
        for (j, slot) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(j);
            let b = rhs.coeffs.get(j);
            *slot = match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
        }
        Self::new(var, self.inner_zero.clone(), coeffs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let var = compatible_var(self, rhs);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero(var, self.inner_zero.clone());
        }
        let mut coeffs =
            vec![self.inner_zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::new(var, self.inner_zero.clone(), coeffs)
    }

    fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.neg()).collect();
        Self::new(self.var, self.inner_zero.clone(), coeffs)
    }

    fn scale(&self, k: Fp) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.scale(k)).collect();
        Self::new(self.var, self.inner_zero.clone(), coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Field {
        Field::new(101).unwrap()
    }

    fn poly(values: &[u64]) -> UniPoly<Fp> {
        UniPoly::from_values(Var::T, f(), values)
    }

    #[test]
    fn normalization_strips_trailing_zeros() {
        let p = poly(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert!(poly(&[0, 0]).is_zero());
    }

    #[test]
    fn add_mul_agree_with_hand_values() {
        // (1 + 2t)(3 + t) = 3 + 7t + 2t^2
        let a = poly(&[1, 2]);
        let b = poly(&[3, 1]);
        assert_eq!(a.mul(&b), poly(&[3, 7, 2]));
        assert_eq!(a.add(&b), poly(&[4, 3]));
        assert_eq!(a.sub(&a), poly(&[]));
    }

    #[test]
    fn eval_matches_horner() {
        let p = poly(&[5, 0, 3]); // 5 + 3t^2
        assert_eq!(p.eval(&f().el(7)).value(), (5 + 3 * 49) % 101);
    }

    #[test]
    fn compose_shift_binomial() {
        // t^2 shifted by 3: t^2 + 6t + 9
        let p = poly(&[0, 0, 1]);
        assert_eq!(p.compose_shift(&f().el(3)), poly(&[9, 6, 1]));
        // shift by zero is the identity
        assert_eq!(p.compose_shift(&f().zero()), p);
    }

    #[test]
    fn div_exact_round_trip() {
        let a = poly(&[1, 2, 1]); // (1+t)^2
        let b = poly(&[1, 1]);
        assert_eq!(a.div_exact(&b), b);
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn div_exact_rejects_nonmultiple() {
        poly(&[1, 1, 1]).div_exact(&poly(&[1, 1]));
    }

    #[test]
    fn substitute_power_spreads() {
        let p = poly(&[1, 2, 3]);
        let q = p.substitute_power(3);
        assert_eq!(q, poly(&[1, 0, 0, 2, 0, 0, 3]));
    }

    #[test]
    fn constants_compare_across_vars() {
        let c1 = UniPoly::constant(Var::T, f().el(5));
        let c2 = UniPoly::constant(Var::X(0), f().el(5));
        assert_eq!(c1, c2);
        let t = poly(&[0, 1]);
        let x: UniPoly<Fp> = UniPoly::monomial(Var::X(0), f().one(), 1);
        assert_ne!(t, x);
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(format!("{}", poly(&[5, 1, 3])), "5 + t + 3*t^2");
        assert_eq!(format!("{}", poly(&[])), "0");
    }
}
