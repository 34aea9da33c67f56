//! Residual of the instanton condition across the default lambda grid.

use nilg2::instanton::{builtin_family, default_grid, lambda_sweep};
use nilg2::scalar::{format_rational, qi};
use nilg2::Rational;

fn main() -> nilg2::Result<()> {
    for (name, p) in [
        ("heis", vec![qi(1), qi(1)]),
        ("dim1", vec![qi(1), qi(2), qi(3)]),
        ("n37a", vec![qi(1), qi(1), qi(1), qi(1), qi(0)]),
    ] {
        let (l, s) = builtin_family(name, &p)?;
        let shown: Vec<String> = p.iter().map(format_rational).collect();
        println!("{name}({})", shown.join(", "));
        for row in lambda_sweep(&l, &s, &default_grid::<Rational>(), 0.0)? {
            println!(
                "  lambda = {:>5}  max residual = {:>8}  {}",
                row.lambda,
                row.max_residual,
                if row.is_instanton { "instanton" } else { "" }
            );
        }
    }
    Ok(())
}
