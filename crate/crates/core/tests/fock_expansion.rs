//! Beamsplitter output laws checked against a direct expansion of the
//! creation operators, `(c† + d†)ⁿ (c† − d†)ᵐ`, carried out with exact
//! integer polynomial arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use relaysim_core::fock::FockSpace;
use relaysim_core::Exact;

/// Coefficients of cᵃ dᵇ indexed by `a` (with `b = degree − a`).
fn expand(n: usize, m: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    let times = |sign: i64, poly: &mut Vec<BigInt>| {
        // multiply by (c + sign·d): the c term raises a, the d term keeps it
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (a, coef) in poly.iter().enumerate() {
            next[a + 1] += coef;
            next[a] += coef * sign;
        }
        *poly = next;
    };
    for _ in 0..n {
        times(1, &mut poly);
    }
    for _ in 0..m {
        times(-1, &mut poly);
    }
    poly
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn expected(n: usize, m: usize) -> Vec<((usize, usize), BigRational)> {
    let total = n + m;
    let norm = factorial(n) * factorial(m) * (BigInt::one() << total);
    expand(n, m)
        .into_iter()
        .enumerate()
        .map(|(left, coef)| {
            let weight = &coef * &coef * factorial(left) * factorial(total - left);
            ((left, total - left), BigRational::new(weight, norm.clone()))
        })
        .collect()
}

#[test]
fn indistinguishable_law_matches_operator_expansion() {
    let fs = FockSpace::default();
    for n in 0..=6 {
        for m in 0..=6 - n {
            let law = fs.interfere_indistinguishable::<Exact>(n, m).unwrap();
            let mut total = BigRational::zero();
            for (occ, p) in expected(n, m) {
                assert_eq!(law.get(&occ), p, "|{n},{m}⟩ → {occ:?}");
                total += p;
            }
            assert!(total.is_one(), "expansion of |{n},{m}⟩ is not normalized");
            assert!(law.iter().all(|(&(l, r), _)| l + r == n + m));
        }
    }
}

#[test]
fn distinguishable_law_is_convolution_of_independent_splits() {
    let fs = FockSpace::default();
    for n in 0..=6 {
        for m in 0..=6 - n {
            let law = fs.interfere_distinguishable::<Exact>(n, m).unwrap();
            let split_n = fs.split_balanced::<Exact>(n).unwrap();
            let split_m = fs.split_balanced::<Exact>(m).unwrap();
            for left in 0..=n + m {
                let mut p = BigRational::zero();
                for (&(a, _), pa) in split_n.iter() {
                    for (&(b, _), pb) in split_m.iter() {
                        if a + b == left {
                            p += pa * pb;
                        }
                    }
                }
                assert_eq!(law.get(&(left, n + m - left)), p, "|{n},{m}⟩ left {left}");
            }
        }
    }
}

#[test]
fn float_amplitudes_square_to_exact_law() {
    let fs = FockSpace::default();
    for n in 0..=6 {
        for m in 0..=6 - n {
            let amps = fs.beamsplitter_amplitudes::<f64>(n, m).unwrap();
            for (occ, p) in expected(n, m) {
                let p = num_traits::ToPrimitive::to_f64(&p).unwrap();
                assert!(
                    (amps.get(&occ).norm_sqr() - p).abs() < 1e-12,
                    "|{n},{m}⟩ → {occ:?}"
                );
            }
        }
    }
}

#[test]
fn truncation_is_enforced() {
    let fs = FockSpace::default();
    assert!(fs.interfere_indistinguishable::<f64>(4, 3).is_err());
    assert!(fs.split_balanced::<f64>(7).is_err());
    assert!(FockSpace::new(8)
        .interfere_indistinguishable::<Exact>(4, 4)
        .is_ok());
}
