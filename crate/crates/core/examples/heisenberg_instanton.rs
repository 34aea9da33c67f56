//! The connection with lambda = 1 on a dim g' = 1 algebra: connection forms,
//! curvature and the instanton test.

use nilg2::connection::{curvature, holonomy_algebra, nabla_lambda};
use nilg2::instanton::{builtin_family, instanton_at};
use nilg2::scalar::qi;

fn main() -> nilg2::Result<()> {
    let (a, b) = (qi(2), qi(3));
    let (l, s) = builtin_family("heis", &[a, b])?;
    let c = nabla_lambda(&l, &s, &qi(1))?;
    for (x, y) in [(2, 1), (4, 3), (6, 5)] {
        println!("(Psi)^{x}_{y} = {}", c.form(x, y));
    }
    let r = curvature(&c, &l);
    for (x, y) in [(1, 2), (3, 4), (5, 6)] {
        println!("(R)^{x}_{y}   = {}", r.component(x, y));
    }
    println!("pair symmetric: {}", r.pair_symmetric(0.0));
    println!(
        "instanton:      {}",
        instanton_at(&l, &s, &qi(1), 0.0)?.is_instanton
    );
    println!("dim hol:        {}", holonomy_algebra(&c, &l).dim());
    Ok(())
}
