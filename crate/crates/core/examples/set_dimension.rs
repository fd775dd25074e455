//! Dimension polynomials of finite point sets, checked against counting.
//!
//! Run with `cargo run --example set_dimension`.

use diffdim::lambda_monoid::Partition;
use diffdim::oracle;
use diffdim::setdim::{omega_e, phi_a, stability_bounds, PointFile};

fn main() -> diffdim::Result<()> {
    let file = PointFile::parse(include_str!("staircase.pts"))?;
    let blocks = file.partition.clone().unwrap_or(vec![2]);
    let pts: Vec<Vec<u32>> = file
        .points
        .iter()
        .map(|p| p.iter().map(|&x| x as u32).collect())
        .collect();
    let omega = omega_e(&pts, &blocks)?;
    println!("E = {:?}, blocks {:?}", pts, blocks);
    println!("omega_E = {}", omega);
    let b = stability_bounds(&pts, &blocks);
    for r in oracle::grid_points(&b, &b.iter().map(|x| x + 2).collect::<Vec<_>>()) {
        let count = oracle::count_ve(&pts, &blocks, &r, oracle::DEFAULT_CAP)?;
        println!("  r = {:?}: polynomial {}, count {}", r, omega.evaluate(&r), count);
    }

    let file = PointFile::parse(include_str!("orthant.pts"))?;
    let partition = Partition::new(file.partition.unwrap(), file.automorphisms.unwrap())?;
    let phi = phi_a(&file.points, &partition)?;
    println!("A = {:?} in N x Z", file.points);
    println!("phi_A = {}", phi);
    println!("binomial basis:\n{}", phi.canonical_listing());
    Ok(())
}
