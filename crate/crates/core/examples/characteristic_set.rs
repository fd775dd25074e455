//! Characteristic set of `αy − δy − a = 0`, reduction with a certificate,
//! and ideal membership.

use diffdim::lambda_monoid::{LambdaMonomial, Term};
use diffdim::linpoly::LinearDSPolynomial;
use diffdim::coeff::Coeff;
use diffdim::system::parse_system;

fn main() -> diffdim::Result<()> {
    let sys = parse_system(include_str!("ex511.sys"))?;
    let ring = &sys.ring;
    println!("equation: {}", sys.display_equations()[0]);
    let cs = ring.charset_linear_system(&sys.equations)?;
    println!("characteristic set:");
    for a in &cs {
        let l = ring.leaders(a)?;
        println!("  {}   (sigma-leader {})", a.display(&ring.partition, &sys.names), l.sigma);
    }
    println!("coherent: {}", ring.is_coherent(&cs)?);

    let t = |d: u32, s: i32| Term::new(LambdaMonomial::new(vec![d], vec![s]), 0);
    let b = LinearDSPolynomial::from_terms([(t(0, 2), Coeff::one()), (t(1, 0), Coeff::one())], Coeff::zero());
    let red = ring.reduce(&b, &cs)?;
    println!("reduce {}", b.display(&ring.partition, &sys.names));
    println!("  -> {}", red.remainder.display(&ring.partition, &sys.names));
    for (idx, c, lambda) in &red.certificate.steps {
        println!("  step: subtract ({}) * {} applied to element {}", c, lambda, idx + 1);
    }
    println!("certificate verified: {}", ring.verify_certificate(&b, &red, &cs)?);

    let multiple = sys.equations[0].apply(&LambdaMonomial::new(vec![2], vec![-3]))?;
    println!("d^2 s^-3 A in the ideal: {}", ring.ideal_membership(&multiple, &cs)?);
    Ok(())
}
