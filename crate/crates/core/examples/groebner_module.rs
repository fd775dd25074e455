//! The module route: a Gröbner basis of the relation module, the map ρ into
//! the semigroup Γ, and the filtration dimension polynomial, for the
//! relation `(δ1^{a+c}δ2^b + δ2^{a+b}δ3^c + δ1^aδ3^{b+c}) e`.

use diffdim::dmod::{gb_dimension_polynomial, ModulePresentation};
use diffdim::system::{parse_input, InputFile};

fn main() -> diffdim::Result<()> {
    for (label, src) in [
        ("(a,b,c) = (1,1,1)", include_str!("ex68_111.mod")),
        ("(a,b,c) = (1,2,3)", include_str!("ex68_123.mod")),
        ("(a,b,c) = (2,1,1)", include_str!("ex68_211.mod")),
    ] {
        let InputFile::Module(file) = parse_input(src)? else {
            unreachable!("module files parse as modules")
        };
        let pres = ModulePresentation::from_file(file);
        let (basis, report) = gb_dimension_polynomial(&pres, true)?;
        println!("{}", label);
        for g in &basis {
            println!("  basis element {}", g.display(&pres.module.partition, &pres.names));
            println!("  rho = {}", pres.module.rho_map(g)?.display_with(&pres.names));
        }
        println!("  Phi = {}", report.phi);
        println!("  leading form {}", report.phi.homogeneous_part(2));
    }
    Ok(())
}
