//! Torsion forms and the characteristic torsion of the built-in families.

use nilg2::g2::{characteristic_torsion, TorsionForms};
use nilg2::instanton::builtin_family;
use nilg2::scalar::{format_rational, q, qi};

fn main() -> nilg2::Result<()> {
    let cases = [
        ("heis", vec![qi(1), qi(2)]),
        ("dim1", vec![qi(1), qi(1), qi(1)]),
        ("qheis", vec![q(1, 2)]),
        ("n32", vec![qi(1)]),
        ("n37a", vec![qi(1), qi(1), qi(1), q(3, 5), q(4, 5)]),
    ];
    for (name, p) in cases {
        let (l, s) = builtin_family(name, &p)?;
        let tf = TorsionForms::compute(&l, &s)?;
        let shown: Vec<String> = p.iter().map(format_rational).collect();
        println!(
            "{name}({}): class {}, tau0 = {}",
            shown.join(", "),
            tf.class(0.0).label,
            tf.tau0
        );
        println!("  tau3 = {}", tf.tau3);
        if let Ok(t) = characteristic_torsion(&s, &tf, 0.0) {
            println!("  T    = {t}");
        }
    }
    Ok(())
}
