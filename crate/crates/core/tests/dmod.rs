use diffdim::coeff::Coeff;
use diffdim::dimpoly::dimension_polynomial;
use diffdim::dmod::{gamma_divides, gb_dimension_polynomial, kahler_module, FreeModuleElement, GammaTerm, ModulePresentation};
use diffdim::lambda_monoid::{LambdaMonomial, Term};
use diffdim::system::{parse_input, parse_system, InputFile};

fn e(d: &[u32], s: &[i32]) -> Term {
    Term::new(LambdaMonomial::new(d.to_vec(), s.to_vec()), 0)
}

fn elem(terms: &[(Term, i64)]) -> FreeModuleElement {
    FreeModuleElement::from_terms(terms.iter().map(|(t, c)| (t.clone(), Coeff::integer(*c))))
}

fn module_of(src: &str) -> ModulePresentation {
    match parse_input(src).unwrap() {
        InputFile::Module(m) => ModulePresentation::from_file(m),
        InputFile::System(s) => kahler_module(&s),
    }
}

#[test]
fn rho_of_examples() {
    let pres = module_of(include_str!("../examples/ex68_111.mod"));
    let g = &pres.relations[0];
    let rho = pres.module.rho_map(g).unwrap();
    assert_eq!(rho, GammaTerm { z_exp: vec![0, 1, 2], base: e(&[2, 1, 0], &[]) });
    assert_eq!(rho.display_with(&pres.names), "z2*z3^2*d[2,1,0] s[]*e");

    let single = elem(&[(e(&[1, 0, 3], &[]), 4)]);
    assert_eq!(pres.module.rho_map(&single).unwrap().z_exp, vec![0, 0, 0]);
    assert!(pres.module.rho_map(&FreeModuleElement::zero()).is_err());

    let pres = kahler_module(&parse_system(include_str!("../examples/ex511.sys")).unwrap());
    let rho = pres.module.rho_map(&pres.relations[0]).unwrap();
    assert_eq!(rho, GammaTerm { z_exp: vec![1], base: e(&[0], &[1]) });
}

#[test]
fn gamma_divisibility() {
    let g = |z: &[u64], d: u32, gen: usize| GammaTerm {
        z_exp: z.to_vec(),
        base: Term::new(LambdaMonomial::new(vec![d], vec![]), gen),
    };
    assert!(gamma_divides(&g(&[0, 1, 0], 1, 0), &g(&[0, 1, 1], 2, 0)));
    assert!(!gamma_divides(&g(&[0, 2, 0], 1, 0), &g(&[0, 1, 0], 2, 0)));
    assert!(!gamma_divides(&g(&[0, 0, 0], 1, 0), &g(&[0, 0, 0], 1, 1)));
}

#[test]
fn module_reduction_and_certificates() {
    let pres = module_of(include_str!("../examples/ex68_111.mod"));
    let module = &pres.module;
    let g = pres.relations[0].clone();
    let basis = vec![g.clone()];

    let plain = elem(&[(e(&[0, 0, 0], &[]), 1)]);
    assert_eq!(module.module_reduce(&plain, &basis).unwrap().normal_form, plain);
    assert!(module.module_reduce(&g, &basis).unwrap().normal_form.is_zero());

    // The lone leader term has smaller block orders than the leaders of g,
    // so it is already reduced.
    let lone = elem(&[(e(&[2, 1, 0], &[]), 1)]);
    assert!(module.is_reduced(&lone, &basis).unwrap());
    assert_eq!(module.module_reduce(&lone, &basis).unwrap().normal_form, lone);

    // With the other two summands present it is eliminated in one step.
    let f = g.apply(&LambdaMonomial::new(vec![1, 0, 1], vec![])).unwrap().add(&elem(&[(e(&[0, 0, 0], &[]), 7)]));
    let red = module.module_reduce(&f, &basis).unwrap();
    assert_eq!(red.normal_form, elem(&[(e(&[0, 0, 0], &[]), 7)]));
    assert!(module.verify_certificate(&f, &red, &basis).unwrap());
    let ops = red.certificate.operators(1);
    assert_eq!(ops[0].summands().count(), 1);
}

#[test]
fn groebner_verification() {
    let pres = module_of(include_str!("../examples/ex68_111.mod"));
    assert!(pres.module.is_groebner(&pres.relations, &pres.relations).unwrap());

    let pres = kahler_module(&parse_system(include_str!("../examples/ex511.sys")).unwrap());
    let a = pres.relations[0].clone();
    let a_inv = a.apply(&LambdaMonomial::new(vec![0], vec![-1])).unwrap();
    assert!(!pres.module.is_groebner(&[a.clone()], &pres.relations).unwrap());
    assert!(pres.module.is_groebner(&[a.clone(), a_inv.clone()], &pres.relations).unwrap());
    let gb = pres.module.groebner_completion(&pres.relations).unwrap();
    assert_eq!(gb.len(), 2);
    assert!(pres.module.is_groebner(&gb, &pres.relations).unwrap());
}

#[test]
fn kahler_presentations() {
    let sys = parse_system(include_str!("../examples/ex68_111.sys")).unwrap();
    let from_sys = kahler_module(&sys);
    let from_file = module_of(include_str!("../examples/ex68_111.mod"));
    assert_eq!(from_sys.relations, from_file.relations);

    let sys = parse_system(include_str!("../examples/ex511.sys")).unwrap();
    let pres = kahler_module(&sys);
    assert_eq!(pres.relations, vec![elem(&[(e(&[0], &[1]), 1), (e(&[1], &[0]), -1)])]);

    let sys = parse_system(
        "derivations 1\nautomorphisms 0\nindeterminates y z\npoly 1 d 1 s y ; 3 d 0 s one\npoly 1 d 2 s z\n",
    )
    .unwrap();
    let pres = kahler_module(&sys);
    assert_eq!(pres.names, vec!["e1", "e2"]);
    assert_eq!(pres.relations.len(), 2);
    let gens: Vec<Vec<usize>> = pres
        .relations
        .iter()
        .map(|r| r.entries().terms().map(|t| t.generator).collect())
        .collect();
    assert_eq!(gens, vec![vec![0], vec![1]]);
}

#[test]
fn both_routes_agree_on_examples() {
    for src in [
        include_str!("../examples/ex511.sys"),
        include_str!("../examples/ex512.sys"),
        include_str!("../examples/heat.sys"),
        include_str!("../examples/ex68_111.sys"),
        include_str!("../examples/ex68_123.sys"),
        include_str!("../examples/ex68_211.sys"),
        include_str!("../examples/ex68_123_p1.sys"),
    ] {
        let sys = parse_system(src).unwrap();
        let via_charset = dimension_polynomial(&sys, false).unwrap();
        let (_, via_gb) = gb_dimension_polynomial(&kahler_module(&sys), false).unwrap();
        assert_eq!(via_charset.phi, via_gb.phi);
    }
    for src in [
        include_str!("../examples/ex68_111.mod"),
        include_str!("../examples/ex68_123.mod"),
        include_str!("../examples/ex68_211.mod"),
    ] {
        let (_, report) = gb_dimension_polynomial(&module_of(src), true).unwrap();
        assert!(report.oracle.is_some());
    }
}

#[test]
fn symbolic_relations_are_rejected_by_completion() {
    let sys = parse_system(
        "derivations 1\nautomorphisms 1\nindeterminates y\ncoefficients symbolic\npoly sym a d 0 s 1 y ; 1 d 1 s 0 y\n",
    )
    .unwrap();
    let pres = kahler_module(&sys);
    assert!(matches!(
        pres.module.groebner_completion(&pres.relations),
        Err(diffdim::Error::Unsupported(_))
    ));
    // Reduction itself still works fraction-free.
    let f = pres.relations[0].apply(&LambdaMonomial::new(vec![1], vec![1])).unwrap();
    let red = pres.module.module_reduce(&f, &pres.relations).unwrap();
    assert!(red.normal_form.is_zero());
    assert!(pres.module.verify_certificate(&f, &red, &pres.relations).unwrap());
}
