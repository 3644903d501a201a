//! Deterministic random instance generators for test suites and batch runs.

use crate::algebra::field::{Field, Fp};
use crate::algebra::matrix::Matrix;
use crate::algebra::poly::{UniPoly, Var};
use crate::roabp_core::dense::DensePoly;
use crate::roabp_core::exponent::{all_exponents, Exponent};
use crate::roabp_core::roabp::{Roabp, Shape};
use rand::Rng;

/// A uniformly random permutation of `0..n`.
pub fn random_order(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    order
}

pub fn random_point(rng: &mut impl Rng, field: Field, n: usize) -> Vec<Fp> {
    (0..n).map(|_| field.el(rng.gen())).collect()
}

fn random_unipoly(
    rng: &mut impl Rng,
    field: Field,
    var: Var,
    d: u32,
    zero_prob: f64,
) -> UniPoly<Fp> {
    let coeffs: Vec<Fp> = (0..=d)
        .map(|_| {
            if rng.gen_bool(zero_prob) {
                field.zero()
            } else {
                field.el(rng.gen())
            }
        })
        .collect();
    UniPoly::new(var, field.zero(), coeffs)
}

/// A random program with the given order and output shape. `zero_prob` is
/// the per-coefficient chance of a structural zero, which keeps degenerate
/// layers in the mix.
pub fn random_roabp(
    rng: &mut impl Rng,
    field: Field,
    d: u32,
    w: usize,
    order: &[usize],
    shape: Shape,
    zero_prob: f64,
) -> Roabp<Fp> {
    let n = order.len();
    assert!(n >= 1 && w >= 1);
    let mut layers = Vec::with_capacity(n);
    for (i, &v) in order.iter().enumerate() {
        let rows = if i == 0 {
            match shape {
                Shape::Matrix => w,
                _ => 1,
            }
        } else {
            w
        };
        let cols = if i == n - 1 {
            match shape {
                Shape::Scalar => 1,
                _ => w,
            }
        } else {
            w
        };
        let var = Var::X(v as u32);
        let entries: Vec<UniPoly<Fp>> = (0..rows * cols)
            .map(|_| random_unipoly(rng, field, var, d, zero_prob))
            .collect();
        layers.push(Matrix::new(UniPoly::zero(var, field.zero()), rows, cols, entries));
    }
    Roabp::new(d, order.to_vec(), layers).expect("generated layers are valid")
}

/// Convenience: scalar-output program over a random order.
pub fn random_scalar_roabp(
    rng: &mut impl Rng,
    field: Field,
    n: usize,
    d: u32,
    w: usize,
) -> Roabp<Fp> {
    let order = random_order(rng, n);
    random_roabp(rng, field, d, w, &order, Shape::Scalar, 0.25)
}

/// A random dense scalar polynomial with exactly `terms` monomials (or the
/// whole grid if smaller).
pub fn random_dense(
    rng: &mut impl Rng,
    field: Field,
    n: usize,
    d: u32,
    terms: usize,
) -> DensePoly<Fp> {
    let mut p = DensePoly::new_scalar(field, n, d);
    let grid = all_exponents(n, d);
    let want = terms.min(grid.len());
    let mut picked = 0;
    while picked < want {
        let e = &grid[rng.gen_range(0..grid.len())];
        if p.get(e).is_some() {
            continue;
        }
        let v = field.el(rng.gen_range(1..field.modulus()));
        p.set_scalar(e.clone(), v);
        picked += 1;
    }
    p
}

/// A random dense polynomial with matrix coefficients of the given shape
/// and the given number of nonzero terms.
pub fn random_dense_matrix(
    rng: &mut impl Rng,
    field: Field,
    n: usize,
    d: u32,
    shape: (usize, usize),
    terms: usize,
) -> DensePoly<Fp> {
    let coeff_zero = Matrix::zeros(field.zero(), shape.0, shape.1);
    let mut p = DensePoly::new(n, d, coeff_zero.clone());
    let grid = all_exponents(n, d);
    let want = terms.min(grid.len());
    let mut picked = 0;
    while picked < want {
        let e = &grid[rng.gen_range(0..grid.len())];
        if p.get(e).is_some() {
            continue;
        }
        let m = Matrix::new(
            field.zero(),
            shape.0,
            shape.1,
            (0..shape.0 * shape.1).map(|_| field.el(rng.gen())).collect(),
        );
        if m.is_zero() {
            continue;
        }
        p.set(e.clone(), m);
        picked += 1;
    }
    p
}

/// An exponent drawn uniformly from the grid.
pub fn random_exponent(rng: &mut impl Rng, n: usize, d: u32) -> Exponent {
    Exponent((0..n).map(|_| rng.gen_range(0..=d)).collect())
}
