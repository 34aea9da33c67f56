//! Hide a normal form behind a rational G2 change of basis and recover it.

use nilg2::g2::{g2_conjugation, g2_left_mult, Quaternion};
use nilg2::instanton::{builtin_family, classify};
use nilg2::scalar::{format_rational, q, qi};

fn main() -> nilg2::Result<()> {
    let w = g2_conjugation(&Quaternion::from_i64(2, 1, 0, 1))?.mul(&g2_left_mult(&Quaternion([
        q(1, 5),
        q(2, 5),
        q(2, 5),
        q(4, 5),
    ]))?);
    for (name, p) in [
        ("heis", vec![qi(1), qi(2)]),
        ("qheis", vec![q(3, 2)]),
        ("n32", vec![qi(-1)]),
    ] {
        let (l, s) = builtin_family(name, &p)?;
        let hidden = l.change_basis(&w)?;
        let shown: Vec<String> = p.iter().map(format_rational).collect();
        println!(
            "{name}({}) disguised: de^5 = {}",
            shown.join(", "),
            hidden.d_generator(5)
        );
        let r = classify(&hidden, &s, 0.0)?;
        let params = r.params.map(|x| x.to_string()).unwrap_or_default();
        println!(
            "  {}: {params}, exact witness: {}",
            r.case.label(),
            !r.downgraded
        );
    }
    Ok(())
}
