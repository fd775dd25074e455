use std::cmp::Ordering;

use diffdim::coeff::Coeff;
use diffdim::lambda_monoid::{LambdaMonomial, Partition, Term};
use diffdim::linpoly::{CoefficientModel, DsRing, LinearDSPolynomial};
use diffdim::system::parse_system;

fn t(d: &[u32], s: &[i32]) -> Term {
    Term::new(LambdaMonomial::new(d.to_vec(), s.to_vec()), 0)
}

fn ring11(model: CoefficientModel) -> DsRing {
    DsRing::new(Partition::new(vec![1], 1).unwrap(), 1, model)
}

fn poly(terms: &[(Term, i64)], constant: Coeff) -> LinearDSPolynomial {
    LinearDSPolynomial::from_terms(terms.iter().map(|(t, c)| (t.clone(), Coeff::integer(*c))), constant)
}

/// αy − δy − a with `a` rational (here 5) or a symbol.
fn ex511(model: CoefficientModel) -> LinearDSPolynomial {
    let a = match model {
        CoefficientModel::RationalConstants => Coeff::integer(-5),
        CoefficientModel::FormalSymbols => Coeff::symbol("a", LambdaMonomial::identity(1, 1)).neg(),
    };
    poly(&[(t(&[0], &[1]), 1), (t(&[1], &[0]), -1)], a)
}

#[test]
fn apply_shifts_symbols_only_in_formal_model() {
    let r = ring11(CoefficientModel::FormalSymbols);
    let a = ex511(CoefficientModel::FormalSymbols);
    let alpha = LambdaMonomial::new(vec![0], vec![1]);
    let shifted = a.apply(&alpha).unwrap();
    assert_eq!(shifted.display(&r.partition, &["y".into()]), "d[0] s[2]*y - d[1] s[1]*y - d[0] s[1](a)");
    let q = ex511(CoefficientModel::RationalConstants).apply(&alpha).unwrap();
    assert_eq!(q.constant(), &Coeff::integer(-5));
    let d = LambdaMonomial::new(vec![1], vec![0]);
    let y3 = poly(&[(t(&[0], &[0]), 1)], Coeff::integer(3));
    assert_eq!(y3.apply(&d).unwrap(), poly(&[(t(&[1], &[0]), 1)], Coeff::zero()));
}

#[test]
fn leaders_of_examples() {
    let r = ring11(CoefficientModel::RationalConstants);
    let l = r.leaders(&ex511(CoefficientModel::RationalConstants)).unwrap();
    assert_eq!(l.sigma, t(&[0], &[1]));
    assert_eq!(l.blocks, vec![t(&[1], &[0])]);

    let a2 = poly(&[(t(&[1], &[-1]), 1), (t(&[0], &[0]), -1)], Coeff::integer(5));
    let l2 = r.leaders(&a2).unwrap();
    assert_eq!(l2.sigma, t(&[1], &[-1]));
    assert_eq!(l2.blocks, vec![t(&[1], &[-1])]);
    assert_eq!(r.rank_compare(&ex511(CoefficientModel::RationalConstants), &a2), Ordering::Less);
    assert_eq!(r.rank_compare(&LinearDSPolynomial::constant_poly(Coeff::one()), &a2), Ordering::Less);
    assert_eq!(r.rank_compare(&a2, &a2), Ordering::Equal);

    let r3 = DsRing::new(Partition::new(vec![1, 1, 1], 0).unwrap(), 1, CoefficientModel::RationalConstants);
    let tt = |d: &[u32]| Term::new(LambdaMonomial::new(d.to_vec(), vec![]), 0);
    let g = LinearDSPolynomial::from_terms(
        [(tt(&[2, 1, 0]), Coeff::one()), (tt(&[0, 2, 1]), Coeff::one()), (tt(&[1, 0, 2]), Coeff::one())],
        Coeff::zero(),
    );
    let l3 = r3.leaders(&g).unwrap();
    assert_eq!(l3.sigma, tt(&[2, 1, 0]));
    assert_eq!(l3.blocks, vec![tt(&[2, 1, 0]), tt(&[0, 2, 1]), tt(&[1, 0, 2])]);
    assert!(r3.leaders(&LinearDSPolynomial::constant_poly(Coeff::one())).is_err());
}

#[test]
fn is_reduced_follows_the_order_conditions() {
    let r = ring11(CoefficientModel::RationalConstants);
    let a = ex511(CoefficientModel::RationalConstants);
    // δαy: the only candidate λ = δ gives ord₁(δ·δy) = 2 > 1.
    assert!(r.is_reduced(&poly(&[(t(&[1], &[1]), 1)], Coeff::zero()), &a).unwrap());
    // α²y alone: λ = α but ord₁(α·δy) = 1 > ord₁ u_B = 0, so it stays.
    assert!(r.is_reduced(&poly(&[(t(&[0], &[2]), 1)], Coeff::zero()), &a).unwrap());
    // With a first-order term present the multiple α·αy becomes eliminable.
    let b = poly(&[(t(&[0], &[2]), 1), (t(&[1], &[0]), 1)], Coeff::zero());
    assert!(!r.is_reduced(&b, &a).unwrap());
    assert!(r.is_reduced(&LinearDSPolynomial::constant_poly(Coeff::one()), &a).unwrap());
}

#[test]
fn ex511_charset_and_reduction() {
    for model in [CoefficientModel::RationalConstants, CoefficientModel::FormalSymbols] {
        let r = ring11(model);
        let a = ex511(model);
        let cs = r.charset_single(&a).unwrap();
        let minus_shift = a.apply(&LambdaMonomial::new(vec![0], vec![-1])).unwrap().scale(&Coeff::integer(-1));
        assert_eq!(cs, vec![a.clone(), minus_shift]);
        assert!(r.is_autoreduced(&cs));
        assert!(r.is_coherent(&cs).unwrap());

        // α²y + δy → δαy + δy + a (one elimination by αA).
        let b = poly(&[(t(&[0], &[2]), 1), (t(&[1], &[0]), 1)], Coeff::zero());
        let red = r.reduce(&b, &cs).unwrap();
        let a_shift = a.constant().shift(&LambdaMonomial::new(vec![0], vec![1])).unwrap().neg();
        let expected = poly(&[(t(&[1], &[1]), 1), (t(&[1], &[0]), 1)], a_shift);
        assert_eq!(red.remainder, expected);
        assert!(r.verify_certificate(&b, &red, &cs).unwrap());
        assert!(r.is_reduced_wrt(&red.remainder, &cs).unwrap());

        let already = poly(&[(t(&[0], &[0]), 1)], Coeff::zero());
        let red = r.reduce(&already, &cs).unwrap();
        assert_eq!(red.remainder, already);
        assert_eq!(red.certificate.multiplier, Coeff::one());
        assert!(r.reduce(&a, &cs).unwrap().remainder.is_zero());

        assert!(!r.ideal_membership(&already, &cs).unwrap());
        assert!(r.ideal_membership(&LinearDSPolynomial::zero(), &cs).unwrap());
        let multiple = a.apply(&LambdaMonomial::new(vec![2], vec![-3])).unwrap();
        assert!(r.ideal_membership(&multiple, &cs).unwrap());
    }
}

#[test]
fn reduce_rejects_non_autoreduced_sets() {
    let r = ring11(CoefficientModel::RationalConstants);
    let a = poly(&[(t(&[0], &[1]), 1), (t(&[0], &[0]), -1)], Coeff::zero());
    let b = poly(&[(t(&[0], &[1]), 1), (t(&[0], &[0]), 1)], Coeff::zero());
    assert!(r.reduce(&a, &[a.clone(), b.clone()]).is_err());
    assert!(!r.is_coherent(&[a, b]).unwrap());
}

#[test]
fn autoreduce_examples() {
    let r = DsRing::new(Partition::new(vec![1], 0).unwrap(), 1, CoefficientModel::RationalConstants);
    let tt = |k: u32| Term::new(LambdaMonomial::new(vec![k], vec![]), 0);
    let dy_y = LinearDSPolynomial::from_terms([(tt(1), Coeff::one()), (tt(0), Coeff::integer(-1))], Coeff::zero());
    let d2y = LinearDSPolynomial::from_terms([(tt(2), Coeff::one())], Coeff::zero());
    let out = r.autoreduce(&[dy_y.clone(), d2y]).unwrap();
    assert!(r.is_autoreduced(&out));
    assert_eq!(out, vec![LinearDSPolynomial::from_terms([(tt(0), Coeff::one())], Coeff::zero())]);
    assert_eq!(r.autoreduce(&[dy_y.clone()]).unwrap(), vec![dy_y.clone()]);

    let r11 = ring11(CoefficientModel::RationalConstants);
    let a = ex511(CoefficientModel::RationalConstants);
    let aa = a.apply(&LambdaMonomial::new(vec![0], vec![1])).unwrap();
    assert_eq!(r11.autoreduce(&[a.clone(), aa.clone()]).unwrap(), vec![a.clone()]);
    assert_eq!(
        r11.charset_linear_system(&[a.clone(), aa]).unwrap(),
        r11.charset_single(&a).unwrap()
    );
}

#[test]
fn inconsistent_systems_are_reported() {
    let r = DsRing::new(Partition::new(vec![1], 0).unwrap(), 1, CoefficientModel::RationalConstants);
    let y = Term::new(LambdaMonomial::new(vec![0], vec![]), 0);
    let a = LinearDSPolynomial::from_terms([(y.clone(), Coeff::one())], Coeff::zero());
    let b = LinearDSPolynomial::from_terms([(y, Coeff::one())], Coeff::one());
    assert!(matches!(r.charset_linear_system(&[a, b]), Err(diffdim::Error::Inconsistent(_))));
}

#[test]
fn ex512_and_ex68_charsets() {
    let sys = parse_system(include_str!("../examples/ex512.sys")).unwrap();
    let g = &sys.equations[0];
    let cs = sys.ring.charset_single(g).unwrap();
    assert_eq!(cs.len(), 2);
    assert_eq!(&cs[0], g);
    assert_eq!(cs[1], g.apply(&LambdaMonomial::new(vec![0, 0], vec![-1])).unwrap());
    assert!(sys.ring.is_coherent(&cs).unwrap());

    let sys = parse_system(include_str!("../examples/ex68_111.sys")).unwrap();
    let cs = sys.ring.charset_single(&sys.equations[0]).unwrap();
    assert_eq!(cs, sys.equations);
}

#[test]
fn two_first_order_equations_are_already_coherent() {
    let sys = parse_system(include_str!("../examples/heat.sys")).unwrap();
    let cs = sys.ring.charset_linear_system(&sys.equations).unwrap();
    assert_eq!(cs.len(), 2);
    assert!(sys.ring.is_coherent(&cs).unwrap());
    for e in &sys.equations {
        assert!(sys.ring.ideal_membership(e, &cs).unwrap());
    }
}

#[test]
fn formal_model_fraction_free_certificate() {
    // a·αy + δy with a symbolic leading coefficient.
    let r = ring11(CoefficientModel::FormalSymbols);
    let a_tok = Coeff::symbol("a", LambdaMonomial::identity(1, 1));
    let p = LinearDSPolynomial::from_terms(
        [(t(&[0], &[1]), a_tok.clone()), (t(&[1], &[0]), Coeff::one())],
        Coeff::zero(),
    );
    let cs = r.charset_single(&p).unwrap();
    assert!(r.is_autoreduced(&cs));
    let b = poly(&[(t(&[0], &[2]), 3), (t(&[1], &[1]), 1), (t(&[2], &[0]), 1)], Coeff::zero());
    let red = r.reduce(&b, &cs).unwrap();
    assert!(r.verify_certificate(&b, &red, &cs).unwrap());
    assert!(r.is_reduced_wrt(&red.remainder, &cs).unwrap());
    assert!(!red.certificate.multiplier.is_rational());
}
