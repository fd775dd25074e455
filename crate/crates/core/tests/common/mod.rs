//! Seeded generators and the property suites shared by `properties` and
//! `acceptance`. Each suite returns the number of cases checked, or a
//! description of the first failure.

#![allow(dead_code)]

use diffdim::coeff::Coeff;
use diffdim::dimpoly::dimension_polynomial;
use diffdim::dmod::{gb_dimension_polynomial, kahler_module};
use diffdim::lambda_monoid::{LambdaMonomial, Partition, Term};
use diffdim::linpoly::{CoefficientModel, DsRing, LinearDSPolynomial};
use diffdim::numpoly::NumericalPolynomial;
use diffdim::oracle::{self, grid_points};
use diffdim::setdim::{omega_e, phi_a, phi_empty, stability_bounds, stability_bounds_nz};
use diffdim::system::{parse_system, LinearSystem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<usize, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A random composition of `m` into at most `max_blocks` positive parts.
pub fn random_blocks(rng: &mut ChaCha8Rng, m: usize, max_blocks: usize) -> Vec<usize> {
    if m == 0 {
        return vec![];
    }
    let p = rng.gen_range(1..=max_blocks.min(m));
    let mut cuts: Vec<usize> = (1..m).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(p - 1).collect();
    cuts.sort();
    let mut blocks = Vec::with_capacity(p);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(m)) {
        blocks.push(c - prev);
        prev = c;
    }
    blocks
}

fn random_mixed_point(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Vec<i64> {
    let mut p: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=3)).collect();
    p.extend((0..n).map(|_| rng.gen_range(-2..=2)));
    p
}

fn caps_ok(poly: &NumericalPolynomial, caps: &[u32]) -> bool {
    poly.degrees().0.iter().zip(caps).all(|(d, c)| d <= c)
}

/// Closed forms against enumeration on the grid `[B, B+2]` for random
/// `E ⊆ N^m` and `A ⊆ N^m × Z^n`.
pub fn suite_a(seed: u64) -> Outcome {
    let mut rng = rng(seed);
    let mut checked = 0;
    for case in 0..50 {
        let m = rng.gen_range(1..=4);
        let blocks = random_blocks(&mut rng, m, 3);
        let count = rng.gen_range(1..=5);
        let pts: Vec<Vec<u32>> = (0..count)
            .map(|_| (0..m).map(|_| rng.gen_range(0..=4)).collect())
            .collect();
        let omega = omega_e(&pts, &blocks).map_err(|e| e.to_string())?;
        let lower = stability_bounds(&pts, &blocks);
        let upper: Vec<i64> = lower.iter().map(|b| b + 2).collect();
        for r in grid_points(&lower, &upper) {
            let c = oracle::count_ve(&pts, &blocks, &r, oracle::DEFAULT_CAP).map_err(|e| e.to_string())?;
            if omega.evaluate(&r) != int(c) {
                return Err(format!("E case {}: {:?} blocks {:?} at {:?}: {} vs {}", case, pts, blocks, r, omega, c));
            }
            checked += 1;
        }
    }
    for case in 0..30 {
        let m = rng.gen_range(0..=2);
        let n = rng.gen_range(if m == 0 { 1 } else { 0 }..=2);
        let blocks = random_blocks(&mut rng, m, 2);
        let partition = Partition::new(blocks, n).unwrap();
        let count = rng.gen_range(1..=4);
        let pts: Vec<Vec<i64>> = (0..count)
            .map(|_| random_mixed_point(&mut rng, m, n))
            .collect();
        let phi = phi_a(&pts, &partition).map_err(|e| e.to_string())?;
        let lower = stability_bounds_nz(&pts, &partition);
        let upper: Vec<i64> = lower.iter().map(|b| b + 2).collect();
        for r in grid_points(&lower, &upper) {
            let c = oracle::count_wa(&pts, &partition, &r, oracle::DEFAULT_CAP).map_err(|e| e.to_string())?;
            if phi.evaluate(&r) != int(c) {
                return Err(format!("A case {}: {:?} at {:?}: {} vs {}", case, pts, r, phi, c));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Empty-set closed forms, the zero criteria and the degree caps.
pub fn suite_b(seed: u64) -> Outcome {
    let mut rng = rng(seed);
    let mut checked = 0;
    for m in 0..=3usize {
        for n in 0..=2usize {
            if m + n == 0 {
                continue;
            }
            let blocks = random_blocks(&mut rng, m, 3);
            let partition = Partition::new(blocks.clone(), n).unwrap();
            let closed = phi_empty(&partition);
            let via_set = phi_a(&[], &partition).map_err(|e| e.to_string())?;
            if closed != via_set {
                return Err(format!("phi_empty {} differs from phi_A(empty) {}", closed, via_set));
            }
            let k = partition.num_vars();
            for r in grid_points(&vec![0; k], &vec![3; k]) {
                let c = oracle::count_wa(&[], &partition, &r, oracle::DEFAULT_CAP).map_err(|e| e.to_string())?;
                if closed.evaluate(&r) != int(c) {
                    return Err(format!("empty set m={} n={} at {:?}", m, n, r));
                }
                checked += 1;
            }
            if m > 0 {
                let omega = omega_e(&[], &blocks).map_err(|e| e.to_string())?;
                for r in grid_points(&vec![0; blocks.len()], &vec![3; blocks.len()]) {
                    let c = oracle::count_ve(&[], &blocks, &r, oracle::DEFAULT_CAP).map_err(|e| e.to_string())?;
                    if omega.evaluate(&r) != int(c) {
                        return Err(format!("omega of the empty set at {:?}", r));
                    }
                    checked += 1;
                }
            }
        }
    }
    for case in 0..60 {
        let m = rng.gen_range(1..=3);
        let blocks = random_blocks(&mut rng, m, 3);
        let mut pts: Vec<Vec<u32>> = (0..rng.gen_range(1..=4))
            .map(|_| (0..m).map(|_| rng.gen_range(0..=3)).collect())
            .collect();
        if case % 3 == 0 {
            pts.push(vec![0; m]);
        }
        let has_zero = pts.iter().any(|p| p.iter().all(|&x| x == 0));
        let omega = omega_e(&pts, &blocks).map_err(|e| e.to_string())?;
        if omega.is_zero() != has_zero {
            return Err(format!("omega_E zero test failed for {:?}", pts));
        }
        let caps: Vec<u32> = blocks.iter().map(|&b| b as u32).collect();
        if !caps_ok(&omega, &caps) {
            return Err(format!("omega_E {} exceeds caps {:?}", omega, caps));
        }

        let n = rng.gen_range(0..=2);
        let partition = Partition::new(blocks.clone(), n).unwrap();
        let mut zpts: Vec<Vec<i64>> = (0..rng.gen_range(1..=4))
            .map(|_| random_mixed_point(&mut rng, m, n))
            .collect();
        if case % 3 == 1 {
            zpts.push(vec![0; m + n]);
        }
        let zhas_zero = zpts.iter().any(|p| p.iter().all(|&x| x == 0));
        let phi = phi_a(&zpts, &partition).map_err(|e| e.to_string())?;
        if phi.is_zero() != zhas_zero {
            return Err(format!("phi_A zero test failed for {:?}", zpts));
        }
        if !caps_ok(&phi, &partition.degree_caps()) {
            return Err(format!("phi_A {} exceeds caps {:?}", phi, partition.degree_caps()));
        }
        checked += 2;
    }
    Ok(checked)
}

/// A random ring with one indeterminate and a random nonconstant linear
/// polynomial in it.
pub fn random_equation(rng: &mut ChaCha8Rng) -> (DsRing, LinearDSPolynomial) {
    let m = rng.gen_range(1..=2);
    let n = rng.gen_range(0..=1);
    let blocks = random_blocks(rng, m, 2);
    let ring = DsRing::new(Partition::new(blocks, n).unwrap(), 1, CoefficientModel::RationalConstants);
    let poly = random_polynomial(rng, m, n, 2, 1..=3);
    (ring, poly)
}

pub fn random_polynomial(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    max_order: u32,
    terms: std::ops::RangeInclusive<usize>,
) -> LinearDSPolynomial {
    loop {
        let count = rng.gen_range(terms.clone());
        let mut out = Vec::new();
        for _ in 0..count {
            let delta: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=max_order)).collect();
            let sigma: Vec<i32> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-3..=3);
            }
            out.push((Term::new(LambdaMonomial::new(delta, sigma), 0), Coeff::integer(c)));
        }
        let constant = Coeff::integer(rng.gen_range(-2..=2));
        let p = LinearDSPolynomial::from_terms(out, constant);
        if !p.is_constant() {
            return p;
        }
    }
}

/// Random reductions modulo characteristic sets: remainders are reduced,
/// certificates expand exactly, and bounded multiples of charset elements
/// reduce to zero.
pub fn suite_c(seed: u64) -> Outcome {
    let mut rng = rng(seed);
    for case in 0..100 {
        let (ring, a) = random_equation(&mut rng);
        let cs = ring.charset_linear_system(&[a.clone()]).map_err(|e| format!("case {}: {}", case, e))?;
        let (m, n) = (ring.partition.num_derivations(), ring.partition.num_automorphisms());
        let b = random_polynomial(&mut rng, m, n, 3, 1..=5);
        let red = ring.reduce(&b, &cs).map_err(|e| e.to_string())?;
        if !ring.is_reduced_wrt(&red.remainder, &cs).map_err(|e| e.to_string())? {
            return Err(format!("case {}: remainder not reduced", case));
        }
        if !ring.verify_certificate(&b, &red, &cs).map_err(|e| e.to_string())? {
            return Err(format!("case {}: certificate does not expand", case));
        }
        let pick = &cs[rng.gen_range(0..cs.len())];
        let delta: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=2)).collect();
        let sigma: Vec<i32> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let multiple = pick.apply(&LambdaMonomial::new(delta, sigma)).map_err(|e| e.to_string())?;
        let red = ring.reduce(&multiple, &cs).map_err(|e| e.to_string())?;
        if !red.remainder.is_zero() {
            return Err(format!("case {}: multiple of a charset element leaves {:?}", case, red.remainder));
        }
    }
    Ok(100)
}

pub fn example_systems() -> Vec<(&'static str, LinearSystem)> {
    [
        ("ex511", include_str!("../../examples/ex511.sys")),
        ("ex512", include_str!("../../examples/ex512.sys")),
        ("ex68_111", include_str!("../../examples/ex68_111.sys")),
        ("ex68_123", include_str!("../../examples/ex68_123.sys")),
        ("ex68_211", include_str!("../../examples/ex68_211.sys")),
        ("ex68_111_p1", include_str!("../../examples/ex68_111_p1.sys")),
        ("ex68_123_p1", include_str!("../../examples/ex68_123_p1.sys")),
        ("ex68_211_p1", include_str!("../../examples/ex68_211_p1.sys")),
        ("heat", include_str!("../../examples/heat.sys")),
    ]
    .into_iter()
    .map(|(name, src)| (name, parse_system(src).unwrap()))
    .collect()
}

/// Both routes on the examples and on random single equations; the random
/// ones are also checked against enumeration, for invariance under adding a
/// redundant multiple, and for `2^n` dividing the leading coefficient.
pub fn suite_d(seed: u64) -> Outcome {
    let mut rng = rng(seed);
    let mut systems = example_systems();
    for i in 0..10 {
        let (ring, a) = random_equation(&mut rng);
        systems.push((
            ["r0", "r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8", "r9"][i],
            LinearSystem {
                ring,
                names: vec!["y".into()],
                equations: vec![a],
            },
        ));
    }
    for (name, sys) in &systems {
        let random = name.starts_with('r');
        let charset = dimension_polynomial(sys, random).map_err(|e| format!("{}: {}", name, e))?;
        let (_, gb) = gb_dimension_polynomial(&kahler_module(sys), false).map_err(|e| format!("{}: {}", name, e))?;
        if charset.phi != gb.phi {
            return Err(format!("{}: charset route {} vs module route {}", name, charset.phi, gb.phi));
        }
        let two_n = BigInt::from(1) << sys.ring.partition.num_automorphisms();
        if !(&charset.invariants.leading_coeff % &two_n).is_zero() {
            return Err(format!("{}: leading coefficient not divisible by 2^n", name));
        }
        if random {
            let a = &sys.equations[0];
            let (m, n) = (sys.ring.partition.num_derivations(), sys.ring.partition.num_automorphisms());
            let extra = a
                .apply(&LambdaMonomial::new(vec![1; m], vec![1; n]))
                .map_err(|e| e.to_string())?;
            let redundant = LinearSystem {
                equations: vec![a.clone(), extra],
                ..sys.clone()
            };
            let again = dimension_polynomial(&redundant, false).map_err(|e| format!("{}: {}", name, e))?;
            if again.phi != charset.phi {
                return Err(format!("{}: redundant generator changed {} to {}", name, charset.phi, again.phi));
            }
        }
    }
    Ok(systems.len())
}
