//! The diagonal system on the (5, 6, 7) block has a solution off lambda = 1
//! that the (1..4) block rules out.

use nilg2::instanton::{builtin_family, cbrt4_minus_one, diagonal_residual, instanton_at};

fn main() -> nilg2::Result<()> {
    let c = 4f64.cbrt();
    let d = [1.0, 1.0, (c - 2.0) / 2.0];
    let lam = cbrt4_minus_one();
    println!("d = {d:?}, lambda = {lam}");
    println!("diagonal residual = {:?}", diagonal_residual(&d, &lam));
    let (l, s) = builtin_family::<f64>("sdiag", &d)?;
    let rep = instanton_at(&l, &s, &lam, 1e-9)?;
    for g in &rep.groups {
        println!(
            "group {:>4}: max {:.3e}  vanishes {}",
            g.name, g.max_norm, g.vanishes
        );
    }
    println!("instanton: {}", rep.is_instanton);
    Ok(())
}
