//! Spanning/dependency profiles at every layer cut, the single-program zero
//! test, and reconstruction of a width-minimal program in a prescribed
//! variable order.
//!
//! For a cut after `k` variables, the coefficient polynomials of all degree
//! patterns on the prefix span a space of dimension at most the program
//! width. The profile records, per cut, a spanning set of prefixes, all
//! one-step extensions of the previous spanning set (the dependency set),
//! and exact coefficients expressing every extension over the spanning set.
//! Those dependencies are enough to rebuild a program layer by layer.

use crate::algebra::field::{Field, Fp};
use crate::algebra::linalg::{Insert, RowSpan};
use crate::algebra::matrix::Matrix;
use crate::algebra::poly::{UniPoly, Var};
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::roabp_core::dense::DensePoly;
use crate::roabp_core::exponent::Exponent;
use crate::roabp_core::roabp::Roabp;

/// One cut of a [`SpanningProfile`].
///
/// `prefixes` is the dependency set: every one-step extension of the
/// previous cut's spanning set, in generation order (previous spanning
/// member order, then extension degree ascending). `span` indexes the
/// greedily chosen spanning subset; `gamma[i]` expresses witness `i` over
/// the spanning members, exactly; spanning members carry unit vectors.
#[derive(Clone, Debug)]
pub struct ProfileLayer {
    pub prefixes: Vec<Exponent>,
    pub c_rows: Vec<Vec<Fp>>,
    pub span: Vec<usize>,
    pub gamma: Vec<Vec<Fp>>,
}

/// Per-cut spanning sets, dependency sets and expression coefficients of a
/// scalar polynomial with respect to a variable order.
///
/// Invariants: the cut-0 spanning set is the empty prefix; each dependency
/// set contains all `d+1` extensions of the previous spanning set; the final
/// cut has exactly one spanning member, whose witness is the coefficient of
/// that full exponent.
#[derive(Clone, Debug)]
pub struct SpanningProfile {
    field: Field,
    n: usize,
    d: u32,
    order: Vec<usize>,
    layers: Vec<ProfileLayer>,
}

impl SpanningProfile {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree_bound(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Cut `k` is `layers()[k-1]`.
    pub fn layers(&self) -> &[ProfileLayer] {
        &self.layers
    }

    /// Maximum spanning-set size over all cuts: the width of the
    /// reconstructed program.
    pub fn width(&self) -> usize {
        self.layers.iter().map(|l| l.span.len()).max().unwrap_or(0)
    }

    /// The single full prefix spanning the last cut.
    pub fn final_prefix(&self) -> &Exponent {
        let last = self.layers.last().expect("profile has at least one cut");
        &last.prefixes[last.span[0]]
    }

    /// [`Self::final_prefix`] re-indexed by variable.
    pub fn final_exponent(&self) -> Exponent {
        prefix_to_exponent(self.final_prefix(), &self.order, self.n)
    }

    /// The coefficient at the final exponent.
    pub fn final_scalar(&self) -> Fp {
        let last = self.layers.last().expect("profile has at least one cut");
        last.c_rows[last.span[0]][0]
    }

    /// True iff every full-prefix witness at the last cut vanishes, which
    /// happens iff the profiled polynomial is zero.
    pub fn all_final_scalars_zero(&self) -> bool {
        let last = self.layers.last().expect("profile has at least one cut");
        last.c_rows.iter().all(|row| row[0].is_zero())
    }

    /// A full exponent (variable-indexed) with nonzero coefficient, if any.
    pub fn nonzero_witness(&self) -> Option<Exponent> {
        let last = self.layers.last()?;
        last.c_rows
            .iter()
            .position(|row| !row[0].is_zero())
            .map(|i| prefix_to_exponent(&last.prefixes[i], &self.order, self.n))
    }

    /// The layer matrix over the spanning sets: entry `(i, h)` is
    /// `sum_j gamma[(member_i, j)][h] * x^j`. For the last cut this is the
    /// unscaled column; the final coefficient is folded in separately.
    pub fn layer_matrix(&self, k: usize) -> Matrix<UniPoly<Fp>> {
        let var = Var::X(self.order[k - 1] as u32);
        let layer = &self.layers[k - 1];
        let rows = if k == 1 {
            1
        } else {
            self.layers[k - 2].span.len()
        };
        let cols = layer.span.len();
        let zero = UniPoly::zero(var, self.field.zero());
        let mut entries = vec![vec![vec![self.field.zero(); self.d as usize + 1]; cols]; rows];
        for (idx, gamma) in layer.gamma.iter().enumerate() {
            let i = idx / (self.d as usize + 1);
            let j = idx % (self.d as usize + 1);
            for (h, g) in gamma.iter().enumerate() {
                entries[i][h][j] = *g;
            }
        }
        let data: Vec<UniPoly<Fp>> = entries
            .into_iter()
            .flatten()
            .map(|coeffs| UniPoly::new(var, self.field.zero(), coeffs))
            .collect();
        Matrix::new(zero, rows, cols, data)
    }
}

fn prefix_to_exponent(prefix: &Exponent, order: &[usize], n: usize) -> Exponent {
    let mut v = vec![0u32; n];
    for (pos, &e) in prefix.0.iter().enumerate() {
        v[order[pos]] = e;
    }
    Exponent(v)
}

/// Greedy profile construction over witness rows.
///
/// `witness(k, parent_prefix, parent_row, j)` returns the witness row of
/// `parent_prefix` extended by degree `j` at cut `k`; incremental builders
/// use the parent row, dense builders the extended prefix.
fn build_profile_generic(
    field: Field,
    n: usize,
    d: u32,
    order: Vec<usize>,
    root: Vec<Fp>,
    witness: impl Fn(usize, &Exponent, &[Fp], u32) -> Vec<Fp>,
) -> SpanningProfile {
    let mut layers = Vec::with_capacity(n);
    let mut prev_prefixes = vec![Exponent(vec![])];
    let mut prev_rows = vec![root];
    for k in 1..=n {
        let mut prefixes = Vec::with_capacity(prev_prefixes.len() * (d as usize + 1));
        let mut c_rows = Vec::with_capacity(prefixes.capacity());
        for (p, row) in prev_prefixes.iter().zip(&prev_rows) {
            for j in 0..=d {
                prefixes.push(p.extend_by(j));
                c_rows.push(witness(k, p, row, j));
            }
        }
        let dim = c_rows.first().map_or(0, |r| r.len());
        let mut span = Vec::new();
        let mut gamma: Vec<Vec<Fp>> = Vec::with_capacity(c_rows.len());
        let mut row_span = RowSpan::new(field, dim);
        for row in c_rows.iter() {
            match row_span.insert(row) {
                Insert::Added => {
                    span.push(gamma.len());
                    let mut g = vec![field.zero(); span.len()];
                    g[span.len() - 1] = field.one();
                    gamma.push(g);
                }
                Insert::InSpan(g) => gamma.push(g),
            }
        }
        // A cut where every witness vanishes still needs a spanning member
        // to keep the dependency chain alive; adopt the first prefix with a
        // unit expression, which its zero witness satisfies.
        if span.is_empty() {
            span.push(0);
            gamma = vec![vec![field.zero()]; c_rows.len()];
            gamma[0] = vec![field.one()];
        }
        // pad expressions of early arrivals to the final spanning size
        for g in gamma.iter_mut() {
            g.resize(span.len(), field.zero());
        }
        prev_prefixes = span.iter().map(|&i| prefixes[i].clone()).collect();
        prev_rows = span.iter().map(|&i| c_rows[i].clone()).collect();
        layers.push(ProfileLayer {
            prefixes,
            c_rows,
            span,
            gamma,
        });
    }
    SpanningProfile {
        field,
        n,
        d,
        order,
        layers,
    }
}

/// Builds the spanning profile of a scalar-output program in its own
/// variable order. Witness rows are running products of layer coefficient
/// matrices; a prefix joins the spanning set iff its row enlarges the
/// current row space, scanning in generation order.
pub fn build_profile(r: &Roabp<Fp>) -> SpanningProfile {
    assert!(r.is_scalar_output(), "profiles require scalar output");
    let field = r.field();
    let d = r.degree_bound();
    let mats: Vec<Vec<Matrix<Fp>>> = (0..r.n())
        .map(|i| (0..=d).map(|j| r.layer_coeff_matrix(i, j)).collect())
        .collect();
    build_profile_generic(
        field,
        r.n(),
        d,
        r.order().to_vec(),
        vec![field.one()],
        |k, _prefix, row, j| {
            let m = &mats[k - 1][j as usize];
            let mut out = vec![field.zero(); m.cols()];
            for (ri, rv) in row.iter().enumerate() {
                if rv.is_zero() {
                    continue;
                }
                for (o, slot) in out.iter_mut().enumerate() {
                    let e = &m[(ri, o)];
                    if !e.is_zero() {
                        *slot += *rv * *e;
                    }
                }
            }
            out
        },
    )
}

/// Builds a spanning profile directly from a dense scalar polynomial in an
/// arbitrary variable order; witness rows are flattened coefficient slices.
/// Feeding the result to [`reconstruct_from_profile`] encodes any desk-scale
/// polynomial as a program of minimal width for that order.
pub fn build_profile_dense(p: &DensePoly<Fp>, order: &[usize]) -> SpanningProfile {
    assert_eq!(p.algebra_dim(), 1, "dense profiles require scalar maps");
    assert_eq!(order.len(), p.n());
    let field = p.field();
    let order_owned = order.to_vec();
    build_profile_generic(
        field,
        p.n(),
        p.degree_bound(),
        order_owned.clone(),
        p.slice_flat(&[], &[]),
        move |k, prefix, _row, j| {
            let full = prefix.extend_by(j);
            p.slice_flat(&order_owned[..k], &full.0)
        },
    )
}

/// Answers dependency queries during reconstruction.
pub trait DependencyOracle {
    /// Does the coefficient polynomial of prefix `b` (on `vars`) equal the
    /// `gamma`-weighted sum of the spanning prefixes' coefficient
    /// polynomials?
    fn dependency_holds(
        &self,
        vars: &[usize],
        b: &Exponent,
        span: &[&Exponent],
        gamma: &[Fp],
    ) -> bool;

    /// Coefficient of a variable-indexed full exponent.
    fn coefficient(&self, a: &Exponent) -> Fp;
}

impl DependencyOracle for Roabp<Fp> {
    /// Verification through a single zero test on the combination program
    /// built from coefficient operators, which all inherit this program's
    /// order. Width of the combination: `width * (|span| + 1)`.
    fn dependency_holds(
        &self,
        vars: &[usize],
        b: &Exponent,
        span: &[&Exponent],
        gamma: &[Fp],
    ) -> bool {
        let field = self.field();
        let mut programs = Vec::with_capacity(span.len() + 1);
        programs.push(self.coeff_operator(vars, &b.0));
        for a in span {
            programs.push(self.coeff_operator(vars, &a.0));
        }
        let refs: Vec<&Roabp<Fp>> = programs.iter().collect();
        let mut weights = vec![field.one()];
        weights.extend(gamma.iter().map(|g| -*g));
        let combo = Roabp::linear_combination(&refs, &weights)
            .expect("coefficient operators share the inherited order");
        zero_test(&combo)
    }

    fn coefficient(&self, a: &Exponent) -> Fp {
        self.coeff(a)[(0, 0)]
    }
}

impl DependencyOracle for DensePoly<Fp> {
    fn dependency_holds(
        &self,
        vars: &[usize],
        b: &Exponent,
        span: &[&Exponent],
        gamma: &[Fp],
    ) -> bool {
        let lhs = self.slice_flat(vars, &b.0);
        let mut rhs = vec![self.field().zero(); lhs.len()];
        for (a, g) in span.iter().zip(gamma) {
            for (slot, v) in rhs.iter_mut().zip(self.slice_flat(vars, &a.0)) {
                *slot += *g * v;
            }
        }
        lhs == rhs
    }

    fn coefficient(&self, a: &Exponent) -> Fp {
        self.scalar_coeff(a)
    }
}

/// Exact zero test for one scalar-output program: the polynomial vanishes
/// iff every full-prefix witness at the final cut does.
pub fn zero_test(r: &Roabp<Fp>) -> bool {
    build_profile(r).all_final_scalars_zero()
}

/// Assembles the program encoded by a profile, trusting its dependencies
/// (they were computed exactly from the profiled object). Width is the
/// maximum spanning-set size, minimal for this variable order.
pub fn reconstruct_from_profile(profile: &SpanningProfile) -> Roabp<Fp> {
    reconstruct_with_scalar(profile, profile.final_scalar())
}

fn reconstruct_with_scalar(profile: &SpanningProfile, scalar: Fp) -> Roabp<Fp> {
    let n = profile.n;
    let mut layers: Vec<Matrix<UniPoly<Fp>>> =
        (1..=n).map(|k| profile.layer_matrix(k)).collect();
    let scale = UniPoly::constant(layers[n - 1].zero_entry().var(), scalar);
    layers[n - 1] = layers[n - 1].map(layers[n - 1].zero_entry().clone(), |e| e.mul(&scale));
    Roabp::new(profile.d, profile.order.clone(), layers)
        .expect("profile layers compose by construction")
}

/// Verifies every dependency of `profile` against `target` and, on success,
/// assembles the target's program from the profile's layer matrices and the
/// target's final coefficient. A failed dependency reports the first
/// offending cut and prefix as [`Error::NotRepresentable`].
pub fn reconstruct(
    profile: &SpanningProfile,
    target: &impl DependencyOracle,
) -> Result<Roabp<Fp>> {
    if let Some((layer, prefix)) = first_failing_dependency(profile, target) {
        return Err(Error::NotRepresentable {
            layer,
            prefix: format!("{prefix}"),
        });
    }
    let scalar = target.coefficient(&profile.final_exponent());
    Ok(reconstruct_with_scalar(profile, scalar))
}

/// Scans dependencies in increasing cut order and generation order within a
/// cut, skipping spanning members (their dependencies are identities), and
/// returns the first that `target` violates.
pub fn first_failing_dependency(
    profile: &SpanningProfile,
    target: &impl DependencyOracle,
) -> Option<(usize, Exponent)> {
    for (k, layer) in profile.layers.iter().enumerate() {
        let vars: Vec<usize> = profile.order[..=k].to_vec();
        let span_prefixes: Vec<&Exponent> =
            layer.span.iter().map(|&i| &layer.prefixes[i]).collect();
        for (i, b) in layer.prefixes.iter().enumerate() {
            if layer.span.contains(&i) {
                continue;
            }
            if !target.dependency_holds(&vars, b, &span_prefixes, &layer.gamma[i]) {
                return Some((k + 1, b.clone()));
            }
        }
    }
    None
}

/// Profile-then-reconstruct: an equal polynomial of minimal width for the
/// program's own order. Used between recursion levels of the sum test to
/// keep the squared-width growth in check.
pub fn minimize(r: &Roabp<Fp>) -> Roabp<Fp> {
    reconstruct_from_profile(&build_profile(r))
}

/// Encodes a dense scalar polynomial as a program in the given order, with
/// width equal to the largest coefficient-slice rank over all cuts.
pub fn dense_to_roabp(p: &DensePoly<Fp>, order: &[usize]) -> Roabp<Fp> {
    reconstruct_from_profile(&build_profile_dense(p, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roabp_core::dense::DEFAULT_DENSE_BUDGET;

    fn field() -> Field {
        Field::new(101).unwrap()
    }

    fn ones_product() -> Roabp<Fp> {
        Roabp::product_of_univariates(field(), 1, vec![0, 1], vec![vec![1, 1], vec![1, 1]])
            .unwrap()
    }

    fn running_example() -> Roabp<Fp> {
        // x1 + x1*x2 + x1^2
        let f = field();
        let x1 = Var::X(0);
        let x2 = Var::X(1);
        let d1 = Matrix::new(
            UniPoly::zero(x1, f.zero()),
            1,
            2,
            vec![
                UniPoly::from_values(x1, f, &[0, 1]),
                UniPoly::from_values(x1, f, &[0, 0, 1]),
            ],
        );
        let d2 = Matrix::new(
            UniPoly::zero(x2, f.zero()),
            2,
            1,
            vec![
                UniPoly::from_values(x2, f, &[1, 1]),
                UniPoly::from_values(x2, f, &[1]),
            ],
        );
        Roabp::new(2, vec![0, 1], vec![d1, d2]).unwrap()
    }

    #[test]
    fn profile_of_width_one_product() {
        // (1+x1)(1+x2): all slice coefficients proportional, spans stay size 1
        let p = build_profile(&ones_product());
        let l1 = &p.layers()[0];
        assert_eq!(l1.span, vec![0]);
        assert_eq!(l1.gamma[1], vec![field().one()]);
        assert_eq!(p.width(), 1);
        assert_eq!(p.final_scalar().value(), 1);
    }

    #[test]
    fn profile_of_zero_program_keeps_chain_alive() {
        let f = field();
        let x1 = Var::X(0);
        let x2 = Var::X(1);
        let zero_layer = Matrix::zeros(UniPoly::zero(x1, f.zero()), 1, 2);
        let other = Matrix::new(
            UniPoly::zero(x2, f.zero()),
            2,
            1,
            vec![
                UniPoly::from_values(x2, f, &[1, 1]),
                UniPoly::from_values(x2, f, &[1]),
            ],
        );
        let r = Roabp::new(1, vec![0, 1], vec![zero_layer, other]).unwrap();
        let p = build_profile(&r);
        assert!(p.all_final_scalars_zero());
        assert_eq!(p.layers().last().unwrap().span.len(), 1);
        assert!(p.final_scalar().is_zero());
        assert!(zero_test(&r));
        let rec = reconstruct_from_profile(&p);
        assert!(rec.expand_dense().unwrap().is_zero());
    }

    #[test]
    fn zero_test_examples() {
        assert!(!zero_test(&ones_product()));
        let r = ones_product();
        let cancel =
            Roabp::linear_combination(&[&r, &r], &[field().one(), -field().one()]).unwrap();
        assert!(zero_test(&cancel));
    }

    #[test]
    fn reconstruct_round_trip_running_example() {
        let r = running_example();
        let p = build_profile(&r);
        let rec = reconstruct_from_profile(&p);
        assert!(rec.width() <= r.width());
        assert_eq!(rec.expand_dense().unwrap(), r.expand_dense().unwrap());
    }

    #[test]
    fn reconstruct_single_monomial_is_width_one() {
        let r = Roabp::product_of_univariates(field(), 1, vec![0, 1], vec![vec![0, 1], vec![0, 1]])
            .unwrap();
        let rec = reconstruct_from_profile(&build_profile(&r));
        assert_eq!(rec.width(), 1);
        assert_eq!(rec.expand_dense().unwrap(), r.expand_dense().unwrap());
    }

    #[test]
    fn corollary_unit_vectors_hold_for_reconstruction() {
        // at every proper cut, the reconstructed prefix product has the
        // spanning prefixes' coefficients equal to unit row vectors
        let r = running_example();
        let profile = build_profile(&r);
        let rec = reconstruct_from_profile(&profile);
        for (k, layer) in profile.layers().iter().enumerate() {
            if k + 1 == profile.n() {
                continue; // final layer folds in the scalar
            }
            let prod = rec
                .expand_prefix_dense(k + 1, DEFAULT_DENSE_BUDGET)
                .unwrap();
            for (pos, &si) in layer.span.iter().enumerate() {
                let full = prefix_to_exponent(&layer.prefixes[si], profile.order(), profile.n());
                let row = prod.coeff_or_zero(&full);
                for c in 0..row.cols() {
                    let expect = if c == pos { 1 } else { 0 };
                    assert_eq!(row[(0, c)].value(), expect, "cut {} member {}", k + 1, pos);
                }
            }
        }
    }

    #[test]
    fn dense_round_trip_in_reversed_order() {
        let r = running_example();
        let dense = r.expand_dense().unwrap();
        let rec = dense_to_roabp(&dense, &[1, 0]);
        assert_eq!(rec.order(), &[1, 0]);
        assert_eq!(rec.expand_dense().unwrap(), dense);
    }

    #[test]
    fn minimize_preserves_polynomial_and_never_widens() {
        let r = running_example();
        let wide = Roabp::linear_combination(
            &[&r, &r, &r],
            &[field().el(3), field().el(100), field().el(1)],
        )
        .unwrap();
        let slim = minimize(&wide);
        assert!(slim.width() <= wide.width());
        assert_eq!(
            slim.expand_dense().unwrap(),
            wide.expand_dense().unwrap()
        );
    }

    #[test]
    fn reconstruct_with_oracle_detects_mismatch() {
        let r = running_example();
        let profile = build_profile(&r);
        let other = Roabp::product_of_univariates(
            field(),
            2,
            vec![0, 1],
            vec![vec![1, 1, 0], vec![1, 1, 1]],
        )
        .unwrap();
        let res = reconstruct(&profile, &other);
        assert!(matches!(res, Err(Error::NotRepresentable { .. })));
    }

    #[test]
    fn reconstruct_with_oracle_round_trips() {
        let r = running_example();
        let profile = build_profile(&r);
        let rec = reconstruct(&profile, &r).unwrap();
        assert_eq!(rec.expand_dense().unwrap(), r.expand_dense().unwrap());
    }

    #[test]
    fn reconstruct_follows_target_scalar() {
        // same dependencies, different final coefficient: 2*(1+x1)(1+x2)
        let r = ones_product();
        let profile = build_profile(&r);
        let doubled = r.scale_output(&field().el(2));
        let rec = reconstruct(&profile, &doubled).unwrap();
        assert_eq!(
            rec.expand_dense().unwrap(),
            doubled.expand_dense().unwrap()
        );
    }

    #[test]
    fn dependency_set_sizes_are_bounded() {
        let r = running_example();
        let profile = build_profile(&r);
        let w = r.width();
        let d = r.degree_bound() as usize;
        for layer in profile.layers() {
            assert!(layer.prefixes.len() <= w * (d + 1));
            assert!(layer.span.len() <= w);
        }
    }
}
