//! A small tour: build two programs for the same polynomial in opposite
//! variable orders, test their equivalence, watch a sum cancel, and print
//! a concentration report for the product of all variables.
//!
//! Run with `cargo run -p roabp --example demo`.

use roabp::concentration::{concentration_report, FindConfig, WeightAssignment};
use roabp::pit::{equivalence_report, sum_zero_report, PitConfig, SumInstance};
use roabp::roabp_core::dense::DEFAULT_DENSE_BUDGET;
use roabp::{Field, Result, Roabp};

fn main() -> Result<()> {
    let field = Field::default();
    let cfg = PitConfig::default();

    // (1 + x1)(1 + x2)(1 + x3), once per order
    let forward = Roabp::product_of_univariates(
        field,
        1,
        vec![0, 1, 2],
        vec![vec![1, 1], vec![1, 1], vec![1, 1]],
    )?;
    let backward = Roabp::product_of_univariates(
        field,
        1,
        vec![2, 1, 0],
        vec![vec![1, 1], vec![1, 1], vec![1, 1]],
    )?;
    println!("A = {}", forward.expand_dense()?);
    println!(
        "equivalent across orders: {:?}",
        equivalence_report(&forward, &backward, &cfg)?
    );

    // A - A, phrased as a sum in two different orders, is zero
    let sum = SumInstance::new(vec![forward.clone(), backward.negated()])?;
    let (witness, stats) = sum_zero_report(&sum, &cfg)?;
    println!(
        "A + (-A) zero: {} ({} dependency checks)",
        witness.is_none(),
        stats.records.iter().map(|r| r.deps_verified).sum::<usize>()
    );

    // the product of all variables only concentrates after a shift
    let product = Roabp::product_of_univariates(
        field,
        1,
        vec![0, 1, 2, 3],
        vec![vec![0, 1], vec![0, 1], vec![0, 1], vec![0, 1]],
    )?;
    let report = concentration_report(
        &product,
        Some(WeightAssignment::zeros(4)),
        64,
        &FindConfig::default(),
        DEFAULT_DENSE_BUDGET,
        false,
    )?;
    print!("{report}");
    Ok(())
}
