//! Exact rank and solve kernels.
//!
//! Pivoting always takes the first nonzero entry in column order: arithmetic
//! is exact, so the choice is about reproducibility, not stability.

use crate::algebra::field::{Field, Fp};
use crate::algebra::matrix::Matrix;
use crate::algebra::poly::UniPoly;
use crate::algebra::Scalar;
use crate::error::{Error, Result};

/// Rank over `F_p` by Gaussian elimination. The input is not modified.
pub fn rank(m: &Matrix<Fp>) -> usize {
    let mut span = RowSpan::new(m.field(), m.cols());
    let mut r = 0;
    for i in 0..m.rows() {
        if let Insert::Added = span.insert(m.row(i)) {
            r += 1;
        }
    }
    r
}

/// Expresses `target` as a linear combination of `basis` rows, or reports
/// that no combination exists. Any valid coefficient vector is acceptable;
/// the deterministic echelon solution is returned.
pub fn solve_in_span(target: &[Fp], basis: &[Vec<Fp>]) -> Result<Option<Vec<Fp>>> {
    if basis.iter().any(|row| row.len() != target.len()) {
        return Err(Error::DimensionMismatch {
            context: "solve_in_span",
        });
    }
    let field = target
        .first()
        .map(|e| e.field())
        .or_else(|| basis.first().and_then(|r| r.first()).map(|e| e.field()))
        .unwrap_or_default();
    let mut span = RowSpan::new(field, target.len());
    let mut member_of = Vec::new();
    for (i, row) in basis.iter().enumerate() {
        if let Insert::Added = span.insert(row) {
            member_of.push(i);
        }
    }
    Ok(span.solve(target).map(|gamma| {
        let mut full = vec![field.zero(); basis.len()];
        for (j, &i) in member_of.iter().enumerate() {
            full[i] = gamma[j];
        }
        full
    }))
}

/// Outcome of feeding a row to a [`RowSpan`].
pub enum Insert {
    /// The row was dependent; the coefficients express it over the rows
    /// previously reported as `Added`, in insertion order.
    InSpan(Vec<Fp>),
    Added,
}

/// Incremental row space with expression tracking: each reduced echelon row
/// remembers how it is written over the independent member rows, so
/// dependent rows come back with exact combination coefficients.
pub struct RowSpan {
    field: Field,
    dim: usize,
    echelon: Vec<Vec<Fp>>,
    pivot_cols: Vec<usize>,
    member_expr: Vec<Vec<Fp>>,
    members: usize,
}

impl RowSpan {
    pub fn new(field: Field, dim: usize) -> Self {
        RowSpan {
            field,
            dim,
            echelon: Vec::new(),
            pivot_cols: Vec::new(),
            member_expr: Vec::new(),
            members: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    fn reduce(&self, row: &[Fp]) -> (Vec<Fp>, Vec<Fp>) {
        let mut work = row.to_vec();
        let mut expr = vec![self.field.zero(); self.members];
        for (e, (&pc, ex)) in self
            .echelon
            .iter()
            .zip(self.pivot_cols.iter().zip(&self.member_expr))
        {
            let c = work[pc];
            if c.is_zero() {
                continue;
            }
            for (w, b) in work.iter_mut().zip(e) {
                *w -= c * *b;
            }
            for (s, g) in expr.iter_mut().zip(ex) {
                *s += c * *g;
            }
        }
        (work, expr)
    }

    /// Coefficients of `row` over the member rows, or `None` if independent.
    pub fn solve(&self, row: &[Fp]) -> Option<Vec<Fp>> {
        assert_eq!(row.len(), self.dim, "row dimension mismatch");
        let (residual, expr) = self.reduce(row);
        residual.iter().all(|c| c.is_zero()).then_some(expr)
    }

    pub fn insert(&mut self, row: &[Fp]) -> Insert {
        assert_eq!(row.len(), self.dim, "row dimension mismatch");
        let (mut residual, mut expr) = self.reduce(row);
        let Some(pc) = residual.iter().position(|c| !c.is_zero()) else {
            return Insert::InSpan(expr);
        };
        // Normalize the pivot to 1 and record this row as a new member:
        // residual = member_new - sum(expr * members).
        let inv = residual[pc].inverse();
        for c in residual.iter_mut() {
            *c *= inv;
        }
        for g in expr.iter_mut() {
            *g = -(*g * inv);
        }
        expr.push(inv);
        self.members += 1;
        for ex in self.member_expr.iter_mut() {
            ex.push(self.field.zero());
        }
        self.echelon.push(residual);
        self.pivot_cols.push(pc);
        self.member_expr.push(expr);
        Insert::Added
    }
}

/// Rank over the rational-function field `F(t)` of a matrix with polynomial
/// entries, by fraction-free (Bareiss-style) elimination, cross-checked by
/// scalar ranks at `rank * max_degree + 1` distinct evaluation points.
///
/// Elimination is authoritative; the evaluation route can only agree (the
/// rank of an evaluated matrix never exceeds the rank over `F(t)`, and among
/// that many points some evaluation must attain it). Disagreement would mean
/// a defect in one of the two kernels and panics.
pub fn polymatrix_rank(m: &Matrix<UniPoly<Fp>>) -> Result<usize> {
    let r = bareiss_rank(m);
    let max_deg = m
        .entries()
        .iter()
        .map(|e| if e.is_zero() { 0 } else { e.degree() })
        .max()
        .unwrap_or(0);
    let points = r as u128 * max_deg as u128 + 1;
    let field = m.field();
    if points > field.modulus() as u128 {
        return Err(Error::FieldTooSmall {
            needed: points,
            modulus: field.modulus(),
        });
    }
    let mut best = 0;
    for v in 0..points as u64 {
        let at = field.el(v);
        let scalar = m.map(field.zero(), |e| e.eval(&at));
        best = best.max(rank(&scalar));
        if best == r {
            break;
        }
    }
    assert_eq!(
        best, r,
        "fraction-free elimination and evaluation ranks disagree"
    );
    Ok(r)
}

fn bareiss_rank(m: &Matrix<UniPoly<Fp>>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut work: Vec<Vec<UniPoly<Fp>>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let one = UniPoly::constant(m.zero_entry().var(), m.field().one());
    let mut prev_pivot = one;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(p) = (pivot_row..rows).find(|&i| !work[i][col].is_zero()) else {
            continue;
        };
        work.swap(pivot_row, p);
        let pivot = work[pivot_row][col].clone();
        for i in pivot_row + 1..rows {
            if work[i].iter().skip(col).all(|e| e.is_zero()) {
                continue;
            }
            for j in col + 1..cols {
                // Fraction-free update: every entry stays a minor of the
                // original matrix, so the division is exact.
                let t = work[i][j]
                    .mul(&pivot)
                    .sub(&work[i][col].mul(&work[pivot_row][j]));
                work[i][j] = t.div_exact(&prev_pivot);
            }
            work[i][col] = work[i][col].zero_like();
        }
        prev_pivot = pivot;
        pivot_row += 1;
    }
    pivot_row
}
