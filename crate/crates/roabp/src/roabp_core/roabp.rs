//! Read-once oblivious arithmetic branching programs in matrix form.

use crate::algebra::field::{Field, Fp};
use crate::algebra::matrix::Matrix;
use crate::algebra::poly::{UniPoly, Var};
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::roabp_core::dense::{DensePoly, DEFAULT_DENSE_BUDGET};
use crate::roabp_core::exponent::{monomial_count, Exponent};

/// Output shape of a program: the product of all layers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Shape {
    /// `1 x w, w x w, ..., w x 1`: a single polynomial.
    Scalar,
    /// `1 x w` throughout after the first layer: a row-vector polynomial.
    Row,
    /// `w x w` throughout: a matrix polynomial.
    Matrix,
}

/// A read-once oblivious branching program: layer `i` is a matrix of
/// univariate polynomials in `x_{order[i]}`, and the program computes the
/// matrix product of all layers. Each variable is owned by exactly one
/// layer; adjacent layer dimensions compose; every entry of layer `i` has
/// degree at most `d`.
///
/// Layer dimensions may vary (the declared width is the maximum), which
/// keeps linear combinations and reconstruction natural.
#[derive(Clone, PartialEq, Debug)]
pub struct Roabp<C: Scalar> {
    d: u32,
    order: Vec<usize>,
    layers: Vec<Matrix<UniPoly<C>>>,
}

impl<C: Scalar> Roabp<C> {
    /// Validates and builds a program. `order[i]` is the 0-based variable
    /// owned by layer `i` and must be a permutation of `0..n`.
    pub fn new(d: u32, order: Vec<usize>, layers: Vec<Matrix<UniPoly<C>>>) -> Result<Self> {
        let n = order.len();
        if n == 0 || layers.len() != n {
            return Err(Error::InvalidArgument(format!(
                "need one layer per variable, got {} layers for {} variables",
                layers.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "order is not a permutation of 0..{n}"
                )));
            }
            seen[v] = true;
        }
        for (i, layer) in layers.iter().enumerate() {
            if i + 1 < n && layers[i].cols() != layers[i + 1].rows() {
                return Err(Error::DimensionMismatch {
                    context: "adjacent program layers",
                });
            }
            for e in layer.entries() {
                if !e.is_zero() && e.degree() > d as usize {
                    return Err(Error::InvalidArgument(format!(
                        "layer {i} entry exceeds degree bound {d}"
                    )));
                }
                if !e.is_constant() && e.var() != Var::X(order[i] as u32) {
                    return Err(Error::InvalidArgument(format!(
                        "layer {i} entry is not univariate in x{}",
                        order[i] + 1
                    )));
                }
            }
        }
        Ok(Roabp { d, order, layers })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn degree_bound(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn layers(&self) -> &[Matrix<UniPoly<C>>] {
        &self.layers
    }

    pub fn layer(&self, i: usize) -> &Matrix<UniPoly<C>> {
        &self.layers[i]
    }

    pub fn field(&self) -> Field {
        self.layers[0].field()
    }

    /// Maximum layer dimension.
    pub fn width(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.rows().max(l.cols()))
            .max()
            .unwrap_or(0)
    }

    /// Output dimensions: `(rows of first layer, cols of last layer)`.
    pub fn output_dims(&self) -> (usize, usize) {
        (
            self.layers[0].rows(),
            self.layers[self.layers.len() - 1].cols(),
        )
    }

    pub fn shape(&self) -> Shape {
        match self.output_dims() {
            (1, 1) => Shape::Scalar,
            (1, _) => Shape::Row,
            _ => Shape::Matrix,
        }
    }

    pub fn is_scalar_output(&self) -> bool {
        self.output_dims() == (1, 1)
    }

    fn zero_entry(&self) -> &UniPoly<C> {
        self.layers[0].zero_entry()
    }

    /// Position of the layer owning variable `v`.
    pub fn layer_of_var(&self, v: usize) -> usize {
        self.order.iter().position(|&o| o == v).expect("unknown variable")
    }

    /// The coefficient matrix of `x^j` in layer `i`.
    pub fn layer_coeff_matrix(&self, i: usize, j: u32) -> Matrix<C> {
        let inner_zero = self.zero_entry().inner_zero().clone();
        self.layers[i].map(inner_zero, |e| e.coeff_at(j as usize))
    }

    /// Exact evaluation: the product of all layers at the given point,
    /// indexed by variable (coordinate `v` feeds the layer owning `x_{v+1}`).
    pub fn evaluate(&self, point: &[C]) -> Matrix<C> {
        assert_eq!(point.len(), self.n(), "point length mismatch");
        let inner_zero = self.zero_entry().inner_zero().clone();
        let mut acc: Option<Matrix<C>> = None;
        for (i, layer) in self.layers.iter().enumerate() {
            let at = &point[self.order[i]];
            let m = layer.map(inner_zero.clone(), |e| e.eval(at));
            acc = Some(match acc {
                None => m,
                Some(a) => a.mul(&m),
            });
        }
        acc.unwrap()
    }

    /// The coefficient of `x^a`: the product of per-layer coefficient
    /// matrices, one factor per variable.
    pub fn coeff(&self, a: &Exponent) -> Matrix<C> {
        assert_eq!(a.len(), self.n(), "exponent length mismatch");
        let mut acc: Option<Matrix<C>> = None;
        for i in 0..self.layers.len() {
            let m = self.layer_coeff_matrix(i, a.get(self.order[i]));
            acc = Some(match acc {
                None => m,
                Some(acc) => acc.mul(&m),
            });
        }
        acc.unwrap()
    }

    /// Brute-force dense expansion, multiplying one layer at a time into an
    /// exact coefficient map. Fails if `(d+1)^n` exceeds the budget.
    pub fn expand_dense_with_budget(&self, budget: u128) -> Result<DensePoly<C>> {
        self.expand_prefix_dense(self.n(), budget)
    }

    /// Dense expansion of the product of the first `k` layers only: an
    /// `n`-variable coefficient map supported on the first `k` prefix
    /// variables, with matrix coefficients shaped `rows(layer 1) x
    /// cols(layer k)`.
    pub fn expand_prefix_dense(&self, k: usize, budget: u128) -> Result<DensePoly<C>> {
        assert!(k >= 1 && k <= self.n());
        let required = monomial_count(k, self.d).ok_or(Error::Overflow("monomial count"))?;
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let n = self.n();
        let inner_zero = self.zero_entry().inner_zero().clone();
        // accumulated coefficient map over the processed prefix of layers
        let mut acc: Vec<(Exponent, Matrix<C>)> = vec![(
            Exponent::zeros(n),
            Matrix::identity(inner_zero.clone(), self.layers[0].rows()),
        )];
        for i in 0..k {
            let var = self.order[i];
            let mut next: std::collections::BTreeMap<Exponent, Matrix<C>> =
                std::collections::BTreeMap::new();
            for j in 0..=self.d {
                let step = self.layer_coeff_matrix(i, j);
                if step.is_zero() {
                    continue;
                }
                for (e, m) in &acc {
                    let prod = m.mul(&step);
                    if prod.is_zero() {
                        continue;
                    }
                    let mut v = e.clone();
                    v.0[var] = j;
                    match next.get_mut(&v) {
                        Some(slot) => *slot = slot.add(&prod),
                        None => {
                            next.insert(v, prod);
                        }
                    }
                }
            }
            acc = next.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        }
        let rows = self.layers[0].rows();
        let cols = self.layers[k - 1].cols();
        let coeff_zero = Matrix::zeros(inner_zero, rows, cols);
        let mut out = DensePoly::new(n, self.d, coeff_zero);
        for (e, m) in acc {
            out.set(e, m);
        }
        Ok(out)
    }

    /// Dense expansion with the default budget.
    pub fn expand_dense(&self) -> Result<DensePoly<C>> {
        self.expand_dense_with_budget(DEFAULT_DENSE_BUDGET)
    }

    /// The coefficient-operator program: for each selected variable, the
    /// owning layer is replaced by its constant coefficient matrix at the
    /// prescribed power. The result computes the coefficient of
    /// `prod x_v^{a_v}` as a polynomial in the remaining variables, with the
    /// same width and the inherited variable order.
    pub fn coeff_operator(&self, vars: &[usize], a: &[u32]) -> Roabp<C> {
        assert_eq!(vars.len(), a.len());
        let mut layers = self.layers.clone();
        for (&v, &e) in vars.iter().zip(a) {
            assert!(e <= self.d, "exponent exceeds degree bound");
            let i = self.layer_of_var(v);
            let var = Var::X(v as u32);
            let inner_zero = self.zero_entry().inner_zero().clone();
            layers[i] = self.layers[i].map(
                UniPoly::zero(var, inner_zero.clone()),
                |p| UniPoly::constant(var, p.coeff_at(e as usize)),
            );
        }
        Roabp {
            d: self.d,
            order: self.order.clone(),
            layers,
        }
    }

    /// Substitutes `x_v -> x_v + f_v` in every layer. Width and order are
    /// preserved; `evaluate(shift(r, f), p) = evaluate(r, p + f)`.
    pub fn shift(&self, f: &[C]) -> Roabp<C> {
        assert_eq!(f.len(), self.n(), "shift tuple length mismatch");
        let layers = self
            .layers
            .iter()
            .enumerate()
            .map(|(i, layer)| layer.map(layer.zero_entry().clone(), |e| e.compose_shift(&f[self.order[i]])))
            .collect();
        Roabp {
            d: self.d,
            order: self.order.clone(),
            layers,
        }
    }

    /// Scales the computed polynomial by folding a constant into the first
    /// layer.
    pub fn scale_output(&self, k: &C) -> Roabp<C> {
        let mut layers = self.layers.clone();
        layers[0] = layers[0].map(layers[0].zero_entry().clone(), |e| {
            e.mul(&UniPoly::constant(e.var(), k.clone()))
        });
        Roabp {
            d: self.d,
            order: self.order.clone(),
            layers,
        }
    }

    /// Negation: `-1` folded into the first layer.
    pub fn negated(&self) -> Roabp<C> {
        let minus_one = self.zero_entry().inner_zero().one_like().neg();
        self.scale_output(&minus_one)
    }

    /// One program computing `sum gamma_i * r_i` for scalar-output programs
    /// sharing a variable order: layers are stacked block-diagonally and the
    /// weights fold into the first layer, so the width is the sum of widths.
    pub fn linear_combination(rs: &[&Roabp<C>], gamma: &[C]) -> Result<Roabp<C>> {
        if rs.is_empty() || rs.len() != gamma.len() {
            return Err(Error::InvalidArgument(
                "need one weight per summand".into(),
            ));
        }
        let first = rs[0];
        for r in rs {
            if r.order != first.order || r.d != first.d {
                return Err(Error::OrderMismatch);
            }
            if !r.is_scalar_output() {
                return Err(Error::InvalidArgument(
                    "linear combinations require scalar-output programs".into(),
                ));
            }
        }
        let n = first.n();
        let scaled: Vec<Roabp<C>> = rs
            .iter()
            .zip(gamma)
            .map(|(r, g)| r.scale_output(g))
            .collect();
        let mut layers = Vec::with_capacity(n);
        for i in 0..n {
            let blocks: Vec<&Matrix<UniPoly<C>>> = scaled.iter().map(|r| r.layer(i)).collect();
            let stacked = if i == 0 {
                blocks
                    .iter()
                    .skip(1)
                    .fold(blocks[0].clone(), |acc, b| acc.hstack(b))
            } else if i == n - 1 {
                blocks
                    .iter()
                    .skip(1)
                    .fold(blocks[0].clone(), |acc, b| acc.vstack(b))
            } else {
                Matrix::block_diag(&blocks)
            };
            layers.push(stacked);
        }
        if n == 1 {
            // a single layer is both first and last: sum the 1x1 blocks
            let zero = first.layers[0].zero_entry().clone();
            let total = scaled
                .iter()
                .map(|r| r.layer(0)[(0, 0)].clone())
                .fold(zero, |acc, e| acc.add(&e));
            layers[0] = Matrix::new(first.layers[0].zero_entry().clone(), 1, 1, vec![total]);
        }
        Roabp::new(first.d, first.order.clone(), layers)
    }
}

impl Roabp<Fp> {
    /// A one-layer-per-variable program for an explicit product
    /// `l_1(x_{order(1)}) * ... * l_n(x_{order(n)})` of univariate
    /// polynomials: the canonical width-1 construction.
    pub fn product_of_univariates(
        field: Field,
        d: u32,
        order: Vec<usize>,
        factors: Vec<Vec<u64>>,
    ) -> Result<Roabp<Fp>> {
        let layers = order
            .iter()
            .zip(&factors)
            .map(|(&v, values)| {
                let p = UniPoly::from_values(Var::X(v as u32), field, values);
                Matrix::new(UniPoly::zero(Var::X(v as u32), field.zero()), 1, 1, vec![p])
            })
            .collect();
        Roabp::new(d, order, layers)
    }
}

/// Lifts a base-field program to one whose entries have coefficients in
/// `F[t]`, ready to be shifted by polynomials in `t`.
pub fn lift(r: &Roabp<Fp>) -> Roabp<UniPoly<Fp>> {
    let field = r.field();
    let layers = r
        .layers()
        .iter()
        .map(|layer| {
            let zero_t = UniPoly::zero(Var::T, field.zero());
            let entry_zero = UniPoly::zero(layer.zero_entry().var(), zero_t.clone());
            layer.map(entry_zero, |e| {
                UniPoly::new(
                    e.var(),
                    zero_t.clone(),
                    e.coeffs()
                        .iter()
                        .map(|c| UniPoly::constant(Var::T, *c))
                        .collect(),
                )
            })
        })
        .collect();
    Roabp::new(r.degree_bound(), r.order().to_vec(), layers)
        .expect("lifting preserves validity")
}
