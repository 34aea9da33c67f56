//! The quaternionic Heisenberg algebra: basis-free criterion, holonomy and
//! natural reductivity.

use nilg2::connection::{holonomy_algebra, nabla_lambda};
use nilg2::instanton::{builtin_family, check_caracg2, instanton_at, naturally_reductive_check};
use nilg2::scalar::qi;

fn main() -> nilg2::Result<()> {
    let (l, s) = builtin_family("qheis", &[qi(-2)])?;
    let v = check_caracg2(&l, &s, 0.0)?;
    if let Some(m) = &v.s_matrix {
        for row in m {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            println!("S row: [{}]", cells.join(", "));
        }
    }
    println!(
        "mu = {}, criterion holds: {}",
        v.mu.map(|m| m.to_string()).unwrap_or_default(),
        v.holds
    );
    println!(
        "direct test at lambda = 1: {}",
        instanton_at(&l, &s, &qi(1), 0.0)?.is_instanton
    );
    let h = holonomy_algebra(&nabla_lambda(&l, &s, &qi(1))?, &l);
    println!(
        "dim hol = {}, Killing signature (+, -, 0) = {:?}",
        h.dim(),
        h.killing_signature
    );
    let nr = naturally_reductive_check(&l, &s, 0.0)?;
    println!("naturally reductive: {}", nr.naturally_reductive);
    Ok(())
}
