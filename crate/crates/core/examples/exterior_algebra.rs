//! Wedge, Hodge star and the Chevalley-Eilenberg differential on a small algebra.

use nilg2::g2::{phi0, G2Structure};
use nilg2::instanton::builtin_family;
use nilg2::{KForm, Rational};

fn main() -> nilg2::Result<()> {
    let s = G2Structure::<Rational>::standard();
    let phi = phi0::<Rational>();
    println!("phi      = {phi}");
    println!("*phi     = {}", s.star(&phi));
    println!("phi^*phi = {}", phi.wedge(&s.psi)?);

    let (l, _) = builtin_family::<Rational>("qheis", &[Rational::from_integer(1.into())])?;
    for k in 5..=7 {
        println!("d e^{k}   = {}", l.d_generator(k));
    }
    let a = KForm::basis(7, &[5, 6]);
    println!("d e^56   = {}", l.differential(&a));
    println!("d d e^56 = {}", l.differential(&l.differential(&a)));
    Ok(())
}
