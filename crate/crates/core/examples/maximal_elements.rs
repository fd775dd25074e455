//! Elements that are greatest for the lexicographic order along some
//! permutation of the coordinates.

use diffdim::numpoly::maximal_elements_lex_family;
use diffdim::setdim::PointFile;

fn main() -> diffdim::Result<()> {
    let file = PointFile::parse(include_str!("sigma_prime.pts"))?;
    println!("set: {:?}", file.points);
    for p in maximal_elements_lex_family(&file.points).iter().rev() {
        println!("maximal: {:?}", p);
    }
    Ok(())
}
