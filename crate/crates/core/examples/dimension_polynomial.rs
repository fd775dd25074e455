//! The full report for `αy + δ1²y + δ2²y + a = 0` with the derivations in
//! two blocks: characteristic set, leaders, the two counting parts, the
//! invariants, and a brute-force cross-check.

use diffdim::dimpoly::dimension_polynomial;
use diffdim::system::parse_system;

fn main() -> diffdim::Result<()> {
    let sys = parse_system(include_str!("ex512.sys"))?;
    let report = dimension_polynomial(&sys, true)?;
    print!("{}", report.render(&sys.names));
    println!("Phi(5,5,5) = {}", report.phi.evaluate(&[5, 5, 5]));
    Ok(())
}
