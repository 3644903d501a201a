//! Whitebox identity testing.
//!
//! Equivalence of two programs is decided by profiling one side and
//! verifying its dependency set on the other, where each verification is a
//! single zero test on a combination program. A sum of `c` programs reduces
//! to `c - 1` recursively: the dependency residuals of the first summand's
//! profile are themselves sums of combination programs.

use crate::algebra::field::{Field, Fp};
use crate::algebra::matrix::Matrix;
use crate::algebra::poly::{UniPoly, Var};
use crate::error::{Error, Result};
use crate::nisan::{self, SpanningProfile};
use crate::roabp_core::dense::{DensePoly, DEFAULT_DENSE_BUDGET};
use crate::roabp_core::exponent::Exponent;
use crate::roabp_core::roabp::Roabp;

/// Tuning knobs for the whitebox tests.
#[derive(Clone, Copy, Debug)]
pub struct PitConfig {
    /// Refuse to build a combination program whose layers would exceed this
    /// many entries: the squared-width growth of the recursion is inherent,
    /// so past this point the instance is declared too large rather than
    /// thrashing.
    pub layer_entry_cap: usize,
}

impl Default for PitConfig {
    fn default() -> Self {
        PitConfig {
            layer_entry_cap: 10_000,
        }
    }
}

/// A sum `A_1 + ... + A_c` of scalar-output programs over common `(n, d)`
/// but arbitrary per-summand variable orders.
#[derive(Clone, Debug)]
pub struct SumInstance {
    summands: Vec<Roabp<Fp>>,
}

impl SumInstance {
    pub fn new(summands: Vec<Roabp<Fp>>) -> Result<Self> {
        let Some(first) = summands.first() else {
            return Err(Error::InvalidArgument("empty sum".into()));
        };
        for s in &summands {
            if s.n() != first.n() || s.degree_bound() != first.degree_bound() {
                return Err(Error::OrderMismatch);
            }
            if s.field() != first.field() {
                return Err(Error::OrderMismatch);
            }
            if !s.is_scalar_output() {
                return Err(Error::InvalidArgument(
                    "sum instances require scalar-output programs".into(),
                ));
            }
        }
        Ok(SumInstance { summands })
    }

    pub fn summands(&self) -> &[Roabp<Fp>] {
        &self.summands
    }

    pub fn c(&self) -> usize {
        self.summands.len()
    }
}

/// Outcome of an equivalence test, with enough detail for reporting.
#[derive(Clone, Debug, PartialEq)]
pub enum EquivalenceOutcome {
    Equivalent,
    /// The right-hand side violates the left profile's dependency at this
    /// cut (1-based) and prefix.
    DependencyFailed { layer: usize, prefix: Exponent },
    /// All dependencies hold but the final coefficients differ.
    CoefficientMismatch {
        exponent: Exponent,
        lhs: Fp,
        rhs: Fp,
    },
}

impl EquivalenceOutcome {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceOutcome::Equivalent)
    }
}

/// Why a sum is nonzero, in terms of the top-level profile of its first
/// (negated) summand.
#[derive(Clone, Debug, PartialEq)]
pub enum SumWitness {
    /// The sum reduced to a single nonzero summand; the exponent carries a
    /// nonzero coefficient of the whole sum.
    Monomial { exponent: Exponent },
    /// The remaining summands violate the profile's dependency at this cut.
    DependencyFailed { layer: usize, prefix: Exponent },
    /// Every dependency holds but the summands' coefficients at the final
    /// exponent do not cancel.
    CoefficientMismatch { exponent: Exponent, total: Fp },
}

/// One profile-verification pass of the sum recursion, for cost accounting.
#[derive(Clone, Debug)]
pub struct SumCheckRecord {
    pub depth: usize,
    pub summands: usize,
    /// Width of the profiled first summand at this level.
    pub profile_width: usize,
    pub deps_verified: usize,
    /// `n * w * (d+1)` for `w` the profiled program's width: the per-level
    /// dependency bound.
    pub dep_bound: usize,
}

/// Measured recursion shape of a sum test.
#[derive(Clone, Debug, Default)]
pub struct PitStats {
    pub records: Vec<SumCheckRecord>,
}

impl PitStats {
    pub fn within_dependency_bounds(&self) -> bool {
        self.records.iter().all(|r| r.deps_verified <= r.dep_bound)
    }
}

fn check_headers(a: &Roabp<Fp>, b: &Roabp<Fp>) -> Result<()> {
    if a.n() != b.n() || a.degree_bound() != b.degree_bound() || a.field() != b.field() {
        return Err(Error::OrderMismatch);
    }
    Ok(())
}

/// Builds `target - sum(gamma .* spans)` as one program from coefficient
/// operators of `of`, enforcing the layer-entry cap before construction.
fn dependency_combination(
    of: &Roabp<Fp>,
    vars: &[usize],
    b: &Exponent,
    span: &[&Exponent],
    gamma: &[Fp],
    cfg: &PitConfig,
) -> Result<Roabp<Fp>> {
    let copies = span.len() + 1;
    let w = of.width();
    let entries = (copies * w) * (copies * w);
    if entries > cfg.layer_entry_cap {
        return Err(Error::WidthCapExceeded {
            entries,
            cap: cfg.layer_entry_cap,
        });
    }
    let field = of.field();
    let mut programs = Vec::with_capacity(copies);
    programs.push(of.coeff_operator(vars, &b.0));
    for a in span {
        programs.push(of.coeff_operator(vars, &a.0));
    }
    let refs: Vec<&Roabp<Fp>> = programs.iter().collect();
    let mut weights = vec![field.one()];
    weights.extend(gamma.iter().map(|g| -*g));
    Roabp::linear_combination(&refs, &weights)
}

/// Walks the profile's dependencies in increasing cut order (spanning
/// members skipped: their dependencies are identities) and calls `check`
/// with the combination inputs; the first failure is returned.
fn scan_dependencies(
    profile: &SpanningProfile,
    mut check: impl FnMut(&[usize], &Exponent, &[&Exponent], &[Fp]) -> Result<bool>,
) -> Result<Option<(usize, Exponent)>> {
    for (k, layer) in profile.layers().iter().enumerate() {
        let vars: Vec<usize> = profile.order()[..=k].to_vec();
        let span_prefixes: Vec<&Exponent> =
            layer.span.iter().map(|&i| &layer.prefixes[i]).collect();
        for (i, b) in layer.prefixes.iter().enumerate() {
            if layer.span.contains(&i) {
                continue;
            }
            if !check(&vars, b, &span_prefixes, &layer.gamma[i])? {
                return Ok(Some((k + 1, b.clone())));
            }
        }
    }
    Ok(None)
}

/// Whitebox equivalence of two scalar-output programs over the same `(n,
/// d)`, in arbitrary variable orders. Exact verdict with failure detail.
pub fn equivalence_report(
    a: &Roabp<Fp>,
    b: &Roabp<Fp>,
    cfg: &PitConfig,
) -> Result<EquivalenceOutcome> {
    check_headers(a, b)?;
    equivalence_inner(a, b, cfg, 0, &mut PitStats::default())
}

/// Boolean form of [`equivalence_report`].
pub fn equivalence_test(a: &Roabp<Fp>, b: &Roabp<Fp>, cfg: &PitConfig) -> Result<bool> {
    Ok(equivalence_report(a, b, cfg)?.is_equivalent())
}

fn equivalence_inner(
    a: &Roabp<Fp>,
    b: &Roabp<Fp>,
    cfg: &PitConfig,
    depth: usize,
    stats: &mut PitStats,
) -> Result<EquivalenceOutcome> {
    let profile = nisan::build_profile(a);
    let mut deps = 0usize;
    let failure = scan_dependencies(&profile, |vars, pfx, span, gamma| {
        deps += 1;
        let combo = dependency_combination(b, vars, pfx, span, gamma, cfg)?;
        Ok(nisan::zero_test(&combo))
    })?;
    stats.records.push(SumCheckRecord {
        depth,
        summands: 2,
        profile_width: profile.width(),
        deps_verified: deps,
        dep_bound: profile.n() * a.width() * (a.degree_bound() as usize + 1),
    });
    if let Some((layer, prefix)) = failure {
        return Ok(EquivalenceOutcome::DependencyFailed { layer, prefix });
    }
    let exponent = profile.final_exponent();
    let lhs = profile.final_scalar();
    let rhs = b.coeff(&exponent)[(0, 0)];
    if lhs == rhs {
        Ok(EquivalenceOutcome::Equivalent)
    } else {
        Ok(EquivalenceOutcome::CoefficientMismatch { exponent, lhs, rhs })
    }
}

/// Exact zero test for a sum of `c` programs in mixed variable orders.
pub fn sum_zero_test(instance: &SumInstance, cfg: &PitConfig) -> Result<bool> {
    Ok(sum_zero_test_with_stats(instance, cfg)?.0)
}

/// [`sum_zero_test`] with the measured recursion shape.
pub fn sum_zero_test_with_stats(
    instance: &SumInstance,
    cfg: &PitConfig,
) -> Result<(bool, PitStats)> {
    let (witness, stats) = sum_zero_report(instance, cfg)?;
    Ok((witness.is_none(), stats))
}

/// Full form: `None` means the sum is zero; otherwise the witness explains
/// the first detected discrepancy.
pub fn sum_zero_report(
    instance: &SumInstance,
    cfg: &PitConfig,
) -> Result<(Option<SumWitness>, PitStats)> {
    let mut stats = PitStats::default();
    let witness = sum_zero_rec(instance.summands(), cfg, 0, &mut stats)?;
    Ok((witness, stats))
}

fn sum_zero_rec(
    summands: &[Roabp<Fp>],
    cfg: &PitConfig,
    depth: usize,
    stats: &mut PitStats,
) -> Result<Option<SumWitness>> {
    // Summands sharing a variable order combine into one program; every
    // survivor is then re-encoded at minimal width for its own order, and
    // summands that are identically zero drop out. Both steps preserve the
    // sum exactly and keep the squared-width growth of the recursion tame.
    let mut groups: Vec<Roabp<Fp>> = Vec::new();
    for s in summands {
        match groups.iter_mut().find(|g| g.order() == s.order()) {
            Some(g) => {
                let field = s.field();
                let combined =
                    Roabp::linear_combination(&[g, s], &[field.one(), field.one()])?;
                *g = combined;
            }
            None => groups.push(s.clone()),
        }
    }
    let mut reduced: Vec<Roabp<Fp>> = Vec::with_capacity(groups.len());
    let mut witnesses: Vec<Exponent> = Vec::new();
    for g in groups {
        let profile = nisan::build_profile(&g);
        if let Some(w) = profile.nonzero_witness() {
            witnesses.push(w);
            reduced.push(nisan::reconstruct_from_profile(&profile));
        }
    }
    match reduced.len() {
        0 => return Ok(None),
        1 => {
            // a single nonzero survivor: its witness is a nonzero
            // coefficient of the whole sum
            return Ok(Some(SumWitness::Monomial {
                exponent: witnesses.pop().unwrap(),
            }));
        }
        2 => {
            let lhs = reduced[0].negated();
            let outcome = equivalence_inner(&lhs, &reduced[1], cfg, depth, stats)?;
            return Ok(match outcome {
                EquivalenceOutcome::Equivalent => None,
                EquivalenceOutcome::DependencyFailed { layer, prefix } => {
                    Some(SumWitness::DependencyFailed { layer, prefix })
                }
                EquivalenceOutcome::CoefficientMismatch { exponent, lhs, rhs } => {
                    Some(SumWitness::CoefficientMismatch {
                        exponent,
                        total: rhs - lhs,
                    })
                }
            });
        }
        _ => {}
    }

    let a = reduced[0].negated();
    let profile = nisan::build_profile(&a);
    let mut deps = 0usize;
    let rest = &reduced[1..];
    let failure = scan_dependencies(&profile, |vars, pfx, span, gamma| {
        deps += 1;
        let mut residual = Vec::with_capacity(rest.len());
        for s in rest {
            residual.push(dependency_combination(s, vars, pfx, span, gamma, cfg)?);
        }
        Ok(sum_zero_rec(&residual, cfg, depth + 1, stats)?.is_none())
    })?;
    stats.records.push(SumCheckRecord {
        depth,
        summands: reduced.len(),
        profile_width: profile.width(),
        deps_verified: deps,
        dep_bound: profile.n() * a.width() * (a.degree_bound() as usize + 1),
    });
    if let Some((layer, prefix)) = failure {
        return Ok(Some(SumWitness::DependencyFailed { layer, prefix }));
    }
    // Every dependency carries over, so the whole sum collapses onto the
    // final coefficient: it is zero iff the summands' coefficients cancel.
    let exponent = profile.final_exponent();
    let mut total = a.field().zero();
    for s in &reduced {
        total += s.coeff(&exponent)[(0, 0)];
    }
    Ok(if total.is_zero() {
        None
    } else {
        Some(SumWitness::CoefficientMismatch { exponent, total })
    })
}

/// The decomposition of a non-representable pair at the first failing cut:
/// a common row-output prefix program `R` of full coefficient rank, dense
/// remainders `P`, `Q` with `A = R.P` and `B = R.Q`, and a sparse vector
/// separating them: `gamma.P = 0`, `gamma.Q != 0`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// 1-based cut index where the first dependency fails.
    pub layer: usize,
    pub failing_prefix: Exponent,
    /// The original indices of the prefix variables, in profile order; `r`
    /// relabels them to `x1..x_layer`.
    pub prefix_vars: Vec<usize>,
    /// Row-output program on the prefix variables, of width
    /// `|span| * (d+1)`.
    pub r: Roabp<Fp>,
    /// Coefficient polynomials of all one-step extensions, for `A`.
    pub p: Vec<DensePoly<Fp>>,
    /// The same slices for `B`, summed over its summands.
    pub q: Vec<DensePoly<Fp>>,
    /// Support at the failing prefix (weight 1) and the spanning prefixes
    /// (their negated expression coefficients): at most `span + 1` entries.
    pub gamma: Vec<Fp>,
    /// The degree-ladder block `I (x) [x^0 .. x^d]` closing `R`.
    pub e_k: Matrix<UniPoly<Fp>>,
}

/// Result of [`decompose`].
#[derive(Clone, Debug)]
pub enum DecomposeOutcome {
    /// `B` follows every dependency of `A`'s profile, so a program of `A`'s
    /// width exists for `B` in `A`'s order.
    Representable,
    Split(Box<Decomposition>),
}

/// The degree ladder `I_w (x) [x^0 x^1 ... x^d]` as a `w x w(d+1)` layer in
/// the given variable.
pub fn basis_extension_matrix(field: Field, w: usize, d: u32, var: Var) -> Matrix<UniPoly<Fp>> {
    let zero = UniPoly::zero(var, field.zero());
    let mut m = Matrix::zeros(zero, w, w * (d as usize + 1));
    for i in 0..w {
        for j in 0..=d as usize {
            m[(i, i * (d as usize + 1) + j)] = UniPoly::monomial(var, field.one(), j);
        }
    }
    m
}

/// Checks whether the polynomial `B = sum(b_summands)` follows all of `A`'s
/// profile dependencies; if not, returns the decomposition at the first
/// failing cut.
pub fn decompose(
    a: &Roabp<Fp>,
    b_summands: &[Roabp<Fp>],
    cfg: &PitConfig,
) -> Result<DecomposeOutcome> {
    if b_summands.is_empty() {
        return Err(Error::InvalidArgument("empty right-hand side".into()));
    }
    for b in b_summands {
        check_headers(a, b)?;
    }
    let profile = nisan::build_profile(a);
    let mut stats = PitStats::default();
    let failure = scan_dependencies(&profile, |vars, pfx, span, gamma| {
        let mut residual = Vec::with_capacity(b_summands.len());
        for s in b_summands {
            residual.push(dependency_combination(s, vars, pfx, span, gamma, cfg)?);
        }
        Ok(sum_zero_rec(&residual, cfg, 0, &mut stats)?.is_none())
    })?;
    let Some((cut, prefix)) = failure else {
        return Ok(DecomposeOutcome::Representable);
    };

    let field = a.field();
    let d = a.degree_bound();
    let layer = &profile.layers()[cut - 1];
    let prev_span_len = if cut == 1 {
        1
    } else {
        profile.layers()[cut - 2].span.len()
    };
    let vars: Vec<usize> = profile.order()[..cut].to_vec();

    // R = D_1 .. D_{cut-1} E, a row-output program on the prefix variables.
    let e_k = basis_extension_matrix(field, prev_span_len, d, Var::X(profile.order()[cut - 1] as u32));
    let mut layers: Vec<Matrix<UniPoly<Fp>>> =
        (1..cut).map(|k| profile.layer_matrix(k)).collect();
    layers.push(e_k.clone());
    // relabel prefix variables 0..cut for a standalone program
    let r_order: Vec<usize> = (0..cut).collect();
    let relabeled: Vec<Matrix<UniPoly<Fp>>> = layers
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let var = Var::X(i as u32);
            m.map(UniPoly::zero(var, field.zero()), |e| e.retag(var))
        })
        .collect();
    let r = Roabp::new(d, r_order, relabeled)?;

    // dense slices of every one-step extension, for A and for the sum B
    let mut p = Vec::with_capacity(layer.prefixes.len());
    let mut q = Vec::with_capacity(layer.prefixes.len());
    for pfx in &layer.prefixes {
        let pa = a
            .coeff_operator(&vars, &pfx.0)
            .expand_dense_with_budget(DEFAULT_DENSE_BUDGET)?;
        p.push(pa);
        let mut qb: Option<DensePoly<Fp>> = None;
        for s in b_summands {
            let qs = s
                .coeff_operator(&vars, &pfx.0)
                .expand_dense_with_budget(DEFAULT_DENSE_BUDGET)?;
            qb = Some(match qb {
                None => qs,
                Some(acc) => acc.add(&qs),
            });
        }
        q.push(qb.unwrap());
    }

    // the separating vector: 1 at the failing prefix, the negated expression
    // coefficients at the spanning prefixes
    let pos = layer
        .prefixes
        .iter()
        .position(|x| *x == prefix)
        .expect("failing prefix is a dependency");
    let mut gamma = vec![field.zero(); layer.prefixes.len()];
    gamma[pos] = field.one();
    for (h, &si) in layer.span.iter().enumerate() {
        gamma[si] = -layer.gamma[pos][h];
    }

    Ok(DecomposeOutcome::Split(Box::new(Decomposition {
        layer: cut,
        failing_prefix: prefix,
        prefix_vars: vars,
        r,
        p,
        q,
        gamma,
        e_k,
    })))
}
