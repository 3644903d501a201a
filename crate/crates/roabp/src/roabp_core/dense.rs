//! Dense coefficient maps: the brute-force ground truth every other
//! representation is checked against.

use crate::algebra::field::{Field, Fp};
use crate::algebra::matrix::Matrix;
use crate::algebra::poly::UniPoly;
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::roabp_core::exponent::{all_exponents, monomial_count, Exponent};
use std::collections::BTreeMap;
use std::fmt;

/// Default cap on `(d+1)^n` for dense expansion.
pub const DEFAULT_DENSE_BUDGET: u128 = 1_000_000;

/// An exact coefficient map from exponent vectors to elements of a
/// `k`-dimensional coefficient space: scalars (`1x1`), vectors or matrices,
/// over `F_p` or over `F_p[t]` in the shifted case.
///
/// Absent keys are zero; stored coefficients are nonzero (normalization on
/// insert). All coefficients share one shape, witnessed by a zero exemplar.
#[derive(Clone, PartialEq)]
pub struct DensePoly<C: Scalar> {
    n: usize,
    d: u32,
    coeff_zero: Matrix<C>,
    coeffs: BTreeMap<Exponent, Matrix<C>>,
}

impl<C: Scalar> DensePoly<C> {
    pub fn new(n: usize, d: u32, coeff_zero: Matrix<C>) -> Self {
        assert!(coeff_zero.is_zero());
        DensePoly {
            n,
            d,
            coeff_zero,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree_bound(&self) -> u32 {
        self.d
    }

    pub fn field(&self) -> Field {
        self.coeff_zero.field()
    }

    /// Coefficient-space shape `(rows, cols)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.coeff_zero.rows(), self.coeff_zero.cols())
    }

    /// Dimension `k` of the ambient coefficient algebra.
    pub fn algebra_dim(&self) -> usize {
        self.coeff_zero.rows() * self.coeff_zero.cols()
    }

    pub fn coeff_zero(&self) -> &Matrix<C> {
        &self.coeff_zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn sparsity(&self) -> usize {
        self.coeffs.len()
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Matrix<C>)> {
        self.coeffs.iter()
    }

    pub fn get(&self, a: &Exponent) -> Option<&Matrix<C>> {
        self.coeffs.get(a)
    }

    pub fn coeff_or_zero(&self, a: &Exponent) -> Matrix<C> {
        self.coeffs
            .get(a)
            .cloned()
            .unwrap_or_else(|| self.coeff_zero.clone())
    }

    pub fn add_to(&mut self, a: Exponent, m: &Matrix<C>) {
        assert_eq!(a.len(), self.n, "exponent length mismatch");
        assert!(
            a.0.iter().all(|&e| e <= self.d),
            "exponent exceeds degree bound {}: {a}",
            self.d
        );
        assert_eq!(
            (m.rows(), m.cols()),
            (self.coeff_zero.rows(), self.coeff_zero.cols()),
            "coefficient shape mismatch"
        );
        let new = match self.coeffs.get(&a) {
            Some(old) => old.add(m),
            None => m.clone(),
        };
        if new.is_zero() {
            self.coeffs.remove(&a);
        } else {
            self.coeffs.insert(a, new);
        }
    }

    pub fn set(&mut self, a: Exponent, m: Matrix<C>) {
        if m.is_zero() {
            self.coeffs.remove(&a);
        } else {
            assert_eq!(a.len(), self.n);
            assert!(a.0.iter().all(|&e| e <= self.d));
            self.coeffs.insert(a, m);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        out.d = self.d.max(rhs.d);
        for (a, m) in rhs.terms() {
            out.add_to(a.clone(), m);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(-self.field().one()))
    }

    pub fn scale(&self, k: Fp) -> Self {
        let mut out = Self::new(self.n, self.d, self.coeff_zero.clone());
        if k.is_zero() {
            return out;
        }
        for (a, m) in self.terms() {
            out.set(a.clone(), m.map(self.coeff_zero.zero_entry().clone(), |e| e.scale(k)));
        }
        out
    }

    /// Product of two coefficient maps; shapes must compose. Panics if a
    /// product exponent exceeds the degree bound — callers multiply factors
    /// over disjoint variables.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let zero = self.coeff_zero.zero_entry().clone();
        let out_zero = Matrix::zeros(zero, self.coeff_zero.rows(), rhs.coeff_zero.cols());
        let mut out = Self::new(self.n, self.d.max(rhs.d), out_zero);
        for (a, ma) in self.terms() {
            for (b, mb) in rhs.terms() {
                let sum = Exponent(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect());
                out.add_to(sum, &ma.mul(mb));
            }
        }
        out
    }

    /// Inner product with a constant matrix: `sum alpha_ij * coeff_ij`,
    /// collapsing matrix coefficients to scalars.
    pub fn dot(&self, alpha: &Matrix<Fp>) -> DensePoly<C> {
        assert_eq!(
            (alpha.rows(), alpha.cols()),
            (self.coeff_zero.rows(), self.coeff_zero.cols())
        );
        let zero = self.coeff_zero.zero_entry().clone();
        let mut out = DensePoly::new(self.n, self.d, Matrix::zeros(zero.clone(), 1, 1));
        for (a, m) in self.terms() {
            let mut acc = zero.clone();
            for i in 0..alpha.rows() {
                for j in 0..alpha.cols() {
                    acc = acc.add(&m[(i, j)].scale(alpha[(i, j)]));
                }
            }
            out.set(a.clone(), Matrix::new(zero.clone(), 1, 1, vec![acc]));
        }
        out
    }

    /// Component `(i, j)` of every coefficient, as a scalar-valued map.
    pub fn component(&self, i: usize, j: usize) -> DensePoly<C> {
        let zero = self.coeff_zero.zero_entry().clone();
        let mut out = DensePoly::new(self.n, self.d, Matrix::zeros(zero.clone(), 1, 1));
        for (a, m) in self.terms() {
            out.set(a.clone(), Matrix::new(zero.clone(), 1, 1, vec![m[(i, j)].clone()]));
        }
        out
    }

    /// Re-embeds a `k`-variable map into `n_new` variables, sending variable
    /// `i` to position `positions[i]`.
    pub fn embed(&self, n_new: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.n);
        let mut out = Self::new(n_new, self.d, self.coeff_zero.clone());
        for (a, m) in self.terms() {
            let mut v = vec![0u32; n_new];
            for (i, &pos) in positions.iter().enumerate() {
                v[pos] = a.get(i);
            }
            out.set(Exponent(v), m.clone());
        }
        out
    }

    /// The flattened coefficient of `prod_{v in vars} x_v^{a_v}` viewed as a
    /// polynomial in the remaining variables: entries indexed by the full
    /// lexicographic grid over the other variables, each flattened row-major.
    /// Length `(d+1)^(n-k) * algebra_dim`.
    pub fn slice_flat(&self, vars: &[usize], a: &[u32]) -> Vec<C> {
        assert_eq!(vars.len(), a.len());
        let rest: Vec<usize> = (0..self.n).filter(|i| !vars.contains(i)).collect();
        let cells = monomial_count(rest.len(), self.d).expect("slice grid overflow") as usize;
        let k = self.algebra_dim();
        let zero = self.coeff_zero.zero_entry().clone();
        let mut out = vec![zero; cells * k];
        'term: for (e, m) in self.terms() {
            for (&v, &ev) in vars.iter().zip(a) {
                if e.get(v) != ev {
                    continue 'term;
                }
            }
            // lexicographic cell index over the remaining variables
            let mut idx = 0usize;
            for &v in &rest {
                idx = idx * (self.d as usize + 1) + e.get(v) as usize;
            }
            for (slot, c) in out[idx * k..(idx + 1) * k].iter_mut().zip(m.entries()) {
                *slot = c.clone();
            }
        }
        out
    }

    /// Coefficient rows (flattened, one per nonzero term) with their
    /// exponents. Zero rows are omitted; they never change a rank.
    pub fn coefficient_rows(&self) -> (Vec<&Exponent>, Matrix<C>) {
        let exps: Vec<&Exponent> = self.coeffs.keys().collect();
        let rows: Vec<Vec<C>> = self.coeffs.values().map(|m| m.flatten()).collect();
        (
            exps,
            Matrix::from_rows(self.coeff_zero.zero_entry().clone(), rows),
        )
    }

    /// The full `(d+1)^n x k` coefficient matrix over the complete monomial
    /// grid in lexicographic order, zero rows included.
    pub fn coefficient_matrix_full(&self, budget: u128) -> Result<(Vec<Exponent>, Matrix<C>)> {
        let required = monomial_count(self.n, self.d).ok_or(Error::Overflow("monomial count"))?;
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let exps = all_exponents(self.n, self.d);
        let rows: Vec<Vec<C>> = exps
            .iter()
            .map(|a| self.coeff_or_zero(a).flatten())
            .collect();
        Ok((
            exps,
            Matrix::from_rows(self.coeff_zero.zero_entry().clone(), rows),
        ))
    }

    /// Substitutes `x_i -> x_i + f_i` for every variable: the dense shift
    /// oracle, by repeated binomial expansion one variable at a time.
    pub fn shift(&self, f: &[C]) -> Self {
        assert_eq!(f.len(), self.n);
        let field = self.field();
        let binom = binomial_table(field, self.d);
        let mut cur = self.clone();
        for (i, off) in f.iter().enumerate() {
            if off.is_zero() {
                continue;
            }
            // powers of the offset up to d
            let mut pows = vec![self.coeff_zero.zero_entry().one_like()];
            for _ in 0..self.d {
                pows.push(pows.last().unwrap().mul(off));
            }
            let mut next = Self::new(self.n, self.d, self.coeff_zero.clone());
            for (a, m) in cur.terms() {
                let e = a.get(i);
                for j in 0..=e {
                    let mut b = a.clone();
                    b.0[i] = j;
                    let factor = pows[(e - j) as usize].scale(binom[e as usize][j as usize]);
                    next.add_to(b, &m.map(self.coeff_zero.zero_entry().clone(), |c| c.mul(&factor)));
                }
            }
            cur = next;
        }
        cur
    }
}

impl DensePoly<Fp> {
    /// Scalar-valued map with all coefficients in the base field.
    pub fn new_scalar(field: Field, n: usize, d: u32) -> Self {
        Self::new(n, d, Matrix::zeros(field.zero(), 1, 1))
    }

    pub fn set_scalar(&mut self, a: Exponent, v: Fp) {
        let m = Matrix::new(self.field().zero(), 1, 1, vec![v]);
        assert_eq!(self.shape(), (1, 1));
        self.set(a, m);
    }

    pub fn scalar_coeff(&self, a: &Exponent) -> Fp {
        assert_eq!(self.shape(), (1, 1));
        self.get(a).map_or(self.field().zero(), |m| m[(0, 0)])
    }

    /// Evaluation at a point, for scalar-valued maps.
    pub fn eval(&self, point: &[Fp]) -> Fp {
        assert_eq!(self.shape(), (1, 1));
        assert_eq!(point.len(), self.n);
        let mut acc = self.field().zero();
        for (a, m) in self.terms() {
            let mut term = m[(0, 0)];
            for (i, &e) in a.0.iter().enumerate() {
                term *= point[i].pow(e as u64);
            }
            acc += term;
        }
        acc
    }
}

/// Lifts base-field coefficients to constants in `F[t]`.
pub fn lift_dense(p: &DensePoly<Fp>) -> DensePoly<UniPoly<Fp>> {
    let zero_t = UniPoly::zero(crate::algebra::poly::Var::T, p.field().zero());
    let coeff_zero = p.coeff_zero().map(zero_t.clone(), |_| zero_t.clone());
    let mut out = DensePoly::new(p.n(), p.degree_bound(), coeff_zero);
    for (a, m) in p.terms() {
        out.set(
            a.clone(),
            m.map(zero_t.clone(), |e| {
                UniPoly::constant(crate::algebra::poly::Var::T, *e)
            }),
        );
    }
    out
}

/// Pascal's triangle mod p, up to `C(d, d)`.
pub fn binomial_table(field: Field, d: u32) -> Vec<Vec<Fp>> {
    let n = d as usize + 1;
    let mut t = vec![vec![field.zero(); n]; n];
    for i in 0..n {
        t[i][0] = field.one();
        for j in 1..=i {
            let prev = t[i - 1][j - 1];
            let keep = t[i - 1][j];
            t[i][j] = prev + keep;
        }
    }
    t
}

impl<C: Scalar> fmt::Debug for DensePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Scalar> fmt::Display for DensePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let scalar = self.algebra_dim() == 1;
        let mut first = true;
        for (a, m) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = a.monomial_string();
            if scalar {
                let c = format!("{}", m[(0, 0)]);
                match (c.as_str(), mono.as_str()) {
                    (_, "1") => write!(f, "{c}")?,
                    ("1", _) => write!(f, "{mono}")?,
                    _ if c.contains(' ') => write!(f, "({c})*{mono}")?,
                    _ => write!(f, "{c}*{mono}")?,
                }
            } else {
                write!(f, "{m}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Var;

    fn field() -> Field {
        Field::new(101).unwrap()
    }

    fn scalar_poly(n: usize, d: u32, terms: &[(&[u32], u64)]) -> DensePoly<Fp> {
        let mut p = DensePoly::new_scalar(field(), n, d);
        for (a, v) in terms {
            p.set_scalar(Exponent(a.to_vec()), field().el(*v));
        }
        p
    }

    #[test]
    fn normalization_drops_cancelled_terms() {
        let mut p = scalar_poly(2, 1, &[(&[1, 0], 5)]);
        let m = Matrix::new(field().zero(), 1, 1, vec![field().el(96)]);
        p.add_to(Exponent(vec![1, 0]), &m);
        assert!(p.is_zero());
    }

    #[test]
    fn mul_on_disjoint_variables() {
        // (1 + x1)(1 + x2) = 1 + x1 + x2 + x1x2
        let a = scalar_poly(2, 1, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let b = scalar_poly(2, 1, &[(&[0, 0], 1), (&[0, 1], 1)]);
        let p = a.mul(&b);
        assert_eq!(p.sparsity(), 4);
        assert_eq!(p.scalar_coeff(&Exponent(vec![1, 1])).value(), 1);
    }

    #[test]
    fn shift_by_ones_of_product_monomial() {
        // x1*x2 shifted by (1,1) = (x1+1)(x2+1)
        let p = scalar_poly(2, 1, &[(&[1, 1], 1)]);
        let shifted = p.shift(&[field().one(), field().one()]);
        assert_eq!(shifted.sparsity(), 4);
        for (_, m) in shifted.terms() {
            assert_eq!(m[(0, 0)].value(), 1);
        }
        // shifting back is the identity
        let back = shifted.shift(&[-field().one(), -field().one()]);
        assert_eq!(back, p);
    }

    #[test]
    fn slice_flat_extracts_coefficient_polynomials() {
        // A = x1 + x1*x2 + x1^2; coefficient of x1^1 as a map over x2 is 1 + x2
        let p = scalar_poly(2, 2, &[(&[1, 0], 1), (&[1, 1], 1), (&[2, 0], 1)]);
        let s = p.slice_flat(&[0], &[1]);
        // grid over x2: cells (0,1,2), scalar entries
        assert_eq!(s.len(), 3);
        assert_eq!(s[0].value(), 1);
        assert_eq!(s[1].value(), 1);
        assert_eq!(s[2].value(), 0);
    }

    #[test]
    fn eval_matches_terms() {
        let p = scalar_poly(2, 2, &[(&[1, 0], 1), (&[1, 1], 1), (&[2, 0], 1)]);
        // at (2,3): 2 + 2*3 + 4 = 12
        let v = p.eval(&[field().el(2), field().el(3)]);
        assert_eq!(v.value(), 12);
    }

    #[test]
    fn lift_round_trips_display() {
        let p = scalar_poly(2, 1, &[(&[0, 1], 7)]);
        let l = lift_dense(&p);
        assert_eq!(format!("{l}"), "7*x2");
        let _ = Var::T;
    }

    #[test]
    fn display_examples() {
        let p = scalar_poly(2, 2, &[(&[1, 0], 1), (&[1, 1], 1), (&[2, 0], 1)]);
        assert_eq!(format!("{p}"), "x1 + x1*x2 + x1^2");
        assert_eq!(format!("{}", scalar_poly(1, 1, &[])), "0");
    }
}
