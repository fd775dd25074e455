//! How many values of a solution can be prescribed freely up to given
//! orders: the strength table of two first-order equations, compared with
//! the unconstrained case.

use diffdim::dimpoly::strength_report;
use diffdim::system::parse_system;

fn main() -> diffdim::Result<()> {
    let heat = parse_system(include_str!("heat.sys"))?;
    println!("{}", strength_report(&heat, &[0, 0, 0], &[2, 2, 0])?);
    let free = parse_system(include_str!("empty.sys"))?;
    println!("{}", strength_report(&free, &[0, 0], &[3, 2])?);
    Ok(())
}
