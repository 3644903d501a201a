//! Property tests for the structural invariants: coefficient extraction
//! against dense slices, prefix coefficient-space dimension, shift
//! invertibility and evaluation commutation.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use roabp::algebra::linalg::rank;
use roabp::roabp_core::dense::DEFAULT_DENSE_BUDGET;
use roabp::roabp_core::exponent::all_exponents;
use roabp::sampling::{random_point, random_scalar_roabp};
use roabp::{Field, Matrix, Roabp};
use roabp::{Exponent, Fp};

#[derive(Debug, Clone)]
struct Instance {
    seed: u64,
    n: usize,
    d: u32,
    w: usize,
}

fn instances() -> impl Strategy<Value = Instance> {
    (any::<u64>(), 1usize..=4, 1u32..=2, 1usize..=3).prop_map(|(seed, n, d, w)| Instance {
        seed,
        n,
        d,
        w,
    })
}

fn build(inst: &Instance) -> (Roabp<Fp>, StdRng) {
    let mut rng = StdRng::seed_from_u64(inst.seed);
    let r = random_scalar_roabp(&mut rng, Field::default(), inst.n, inst.d, inst.w);
    (r, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Every coefficient read off the layer product equals the dense map.
    #[test]
    fn coeff_matches_dense_expansion(inst in instances()) {
        let (r, _) = build(&inst);
        let dense = r.expand_dense_with_budget(DEFAULT_DENSE_BUDGET).unwrap();
        for a in all_exponents(inst.n, inst.d) {
            let direct = r.coeff(&a)[(0, 0)];
            let stored = dense.scalar_coeff(&a);
            prop_assert_eq!(direct, stored);
        }
    }

    /// At every cut of the order, the flattened coefficient slices span a
    /// space of dimension at most the program width.
    #[test]
    fn prefix_slice_rank_bounded_by_width(inst in instances()) {
        let (r, _) = build(&inst);
        let dense = r.expand_dense_with_budget(DEFAULT_DENSE_BUDGET).unwrap();
        let field = r.field();
        for k in 1..=inst.n {
            let vars: Vec<usize> = r.order()[..k].to_vec();
            let rows: Vec<Vec<Fp>> = all_exponents(k, inst.d)
                .iter()
                .map(|a| dense.slice_flat(&vars, &a.0))
                .collect();
            let m = Matrix::from_rows(field.zero(), rows);
            prop_assert!(rank(&m) <= r.width());
        }
    }

    /// Program evaluation agrees with evaluating the dense expansion.
    #[test]
    fn evaluate_matches_dense_oracle(inst in instances()) {
        let (r, mut rng) = build(&inst);
        let dense = r.expand_dense_with_budget(DEFAULT_DENSE_BUDGET).unwrap();
        for _ in 0..20 {
            let p: Vec<Fp> = random_point(&mut rng, r.field(), inst.n);
            prop_assert_eq!(r.evaluate(&p)[(0, 0)], dense.eval(&p));
        }
    }

    /// Shifting the program and shifting its dense expansion agree.
    #[test]
    fn shift_matches_dense_shift_oracle(inst in instances()) {
        let (r, mut rng) = build(&inst);
        let f: Vec<Fp> = random_point(&mut rng, r.field(), inst.n);
        let via_program = r.shift(&f).expand_dense_with_budget(DEFAULT_DENSE_BUDGET).unwrap();
        let via_dense = r
            .expand_dense_with_budget(DEFAULT_DENSE_BUDGET)
            .unwrap()
            .shift(&f);
        prop_assert_eq!(via_program, via_dense);
    }

    /// Shifting by f then by -f is the identity on the computed polynomial.
    #[test]
    fn shift_is_invertible(inst in instances()) {
        let (r, mut rng) = build(&inst);
        let f: Vec<Fp> = random_point(&mut rng, r.field(), inst.n);
        let back: Vec<Fp> = f.iter().map(|v| -*v).collect();
        let round = r.shift(&f).shift(&back);
        prop_assert_eq!(
            round.expand_dense_with_budget(DEFAULT_DENSE_BUDGET).unwrap(),
            r.expand_dense_with_budget(DEFAULT_DENSE_BUDGET).unwrap()
        );
    }

    /// evaluate(shift(r, f), p) = evaluate(r, p + f) at many points.
    #[test]
    fn shift_commutes_with_evaluation(inst in instances()) {
        let (r, mut rng) = build(&inst);
        let f: Vec<Fp> = random_point(&mut rng, r.field(), inst.n);
        let shifted = r.shift(&f);
        for _ in 0..20 {
            let p: Vec<Fp> = random_point(&mut rng, r.field(), inst.n);
            let moved: Vec<Fp> = p.iter().zip(&f).map(|(a, b)| *a + *b).collect();
            prop_assert_eq!(shifted.evaluate(&p), r.evaluate(&moved));
        }
    }

    /// The coefficient-operator program expands to the matching dense slice.
    #[test]
    fn coeff_operator_matches_dense_slice(inst in instances()) {
        let (r, mut rng) = build(&inst);
        let dense = r.expand_dense_with_budget(DEFAULT_DENSE_BUDGET).unwrap();
        let k = (inst.seed as usize % inst.n) + 1;
        let vars: Vec<usize> = roabp::sampling::random_order(&mut rng, inst.n)[..k].to_vec();
        let a = roabp::sampling::random_exponent(&mut rng, k, inst.d);
        let op = r.coeff_operator(&vars, &a.0).expand_dense_with_budget(DEFAULT_DENSE_BUDGET).unwrap();
        // the slice's coefficients agree with the operator program on every
        // exponent supported outside the selected variables
        for e in all_exponents(inst.n, inst.d) {
            if vars.iter().any(|&v| e.get(v) != 0) {
                continue;
            }
            let mut full = e.0.clone();
            for (pos, &v) in vars.iter().enumerate() {
                full[v] = a.get(pos);
            }
            prop_assert_eq!(
                op.scalar_coeff(&e),
                dense.scalar_coeff(&Exponent(full))
            );
        }
    }

    /// A constant shift never changes the rank of the coefficient space.
    #[test]
    fn constant_shift_preserves_coefficient_rank(inst in instances()) {
        let (r, mut rng) = build(&inst);
        let dense = r.expand_dense_with_budget(DEFAULT_DENSE_BUDGET).unwrap();
        let f: Vec<Fp> = random_point(&mut rng, r.field(), inst.n);
        let shifted = dense.shift(&f);
        let (_, before) = dense.coefficient_rows();
        let (_, after) = shifted.coefficient_rows();
        prop_assert_eq!(rank(&before), rank(&after));
    }

    /// Dense expansion commutes with linear combinations.
    #[test]
    fn linear_combination_matches_dense_sum(inst in instances()) {
        let (r, mut rng) = build(&inst);
        let s = random_scalar_roabp(&mut rng, r.field(), inst.n, inst.d, inst.w);
        let s = roabp::nisan::dense_to_roabp(
            &s.expand_dense_with_budget(DEFAULT_DENSE_BUDGET).unwrap(),
            r.order(),
        );
        let field = r.field();
        let g0 = field.el(inst.seed % 101);
        let g1 = field.el(inst.seed / 7 % 101);
        let combo = Roabp::linear_combination(&[&r, &s], &[g0, g1]).unwrap();
        let expect = r
            .expand_dense_with_budget(DEFAULT_DENSE_BUDGET)
            .unwrap()
            .scale(g0)
            .add(&s.expand_dense_with_budget(DEFAULT_DENSE_BUDGET).unwrap().scale(g1));
        prop_assert_eq!(combo.expand_dense_with_budget(DEFAULT_DENSE_BUDGET).unwrap(), expect);
    }
}
