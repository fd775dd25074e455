//! Brute force: count free terms on a grid, then recover the polynomial
//! from the counts alone by finite differences.

use diffdim::dimpoly::LeaderTable;
use diffdim::oracle::{classify_terms, interpolate_numerical, stability_offset, Membership, DEFAULT_CAP};
use diffdim::system::parse_system;
use num_bigint::BigInt;

fn main() -> diffdim::Result<()> {
    let sys = parse_system(include_str!("ex512.sys"))?;
    let cs = sys.ring.charset_linear_system(&sys.equations)?;
    let table = LeaderTable::from_charset(&sys.ring, &cs)?;
    let lower = stability_offset(&table);
    println!("interpolating from {:?}", lower);
    for r in [[5, 5, 5], [6, 4, 7]] {
        let c = classify_terms(&table, &r, Membership::ForEvery, DEFAULT_CAP)?;
        println!("  r = {:?}: {} non-multiples, {} escaping multiples", r, c.u1, c.u2);
    }
    let mut count = |r: &[i64]| -> diffdim::Result<BigInt> {
        Ok(BigInt::from(classify_terms(&table, r, Membership::ForEvery, DEFAULT_CAP)?.total()))
    };
    let phi = interpolate_numerical(&mut count, &sys.ring.partition.degree_caps(), &lower)?;
    println!("interpolated Phi = {}", phi);
    Ok(())
}
