//! Generators checked against independent brute-force computations.

use ellcy_core::modular::{self, eisenstein, eta_power, sigma, theta_e8, yau_zaslow, E8Shells};
use ellcy_core::QSeries;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

/// `∏_{n=1}^{N-1} (1 - q^n)^e` by repeated multiplication, as integers.
fn product_oracle(e: i64, terms: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::from(0); terms];
    p[0] = BigInt::from(1);
    let (n_factors, sign) = if e >= 0 { (e, -1) } else { (-e, 1) };
    for n in 1..terms {
        for _ in 0..n_factors {
            if sign == -1 {
                // multiply by (1 - q^n)
                for i in (n..terms).rev() {
                    let t = p[i - n].clone();
                    p[i] -= t;
                }
            } else {
                // multiply by 1/(1 - q^n) = Σ q^{kn}
                for i in n..terms {
                    let t = p[i - n].clone();
                    p[i] += t;
                }
            }
        }
    }
    p
}

fn int_coeff(s: &QSeries, e: Rational64) -> BigInt {
    let c = s.coeff_at(e).unwrap();
    assert!(c.is_integer(), "non-integer coefficient at {e}");
    c.to_integer()
}

#[test]
fn eta24_matches_direct_product() {
    let terms = 30;
    let oracle = product_oracle(24, terms);
    let d = eta_power(24, terms).unwrap();
    for (n, want) in oracle.iter().enumerate() {
        assert_eq!(
            &int_coeff(&d, Rational64::from_integer(n as i64 + 1)),
            want,
            "q^{}",
            n + 1
        );
    }
    assert_eq!(oracle[..4], [1, -24, 252, -1472].map(BigInt::from));
}

#[test]
fn eta12_and_sqrt_delta_match_direct_product() {
    let terms = 25;
    let oracle = product_oracle(12, terms);
    let via_eta = eta_power(12, terms).unwrap();
    let via_sqrt = modular::delta(terms).sqrt().unwrap();
    for (n, want) in oracle.iter().enumerate() {
        let e = Rational64::new(2 * n as i64 + 1, 2);
        assert_eq!(&int_coeff(&via_eta, e), want);
        assert_eq!(&int_coeff(&via_sqrt, e), want);
    }
    assert_eq!(oracle[..3], [1, -12, 54].map(BigInt::from));
    assert_eq!(via_eta.mul(&via_eta), modular::delta(terms));
}

#[test]
fn other_even_eta_powers_are_integral() {
    for e in (2..=48).step_by(2) {
        let s = eta_power(e, 15).unwrap();
        assert!(s.is_integral(), "η^{e}");
        assert_eq!(s.valuation(), Some(Rational64::new(e as i64, 24)));
        let oracle = product_oracle(e as i64, 15);
        let offset = Rational64::new(e as i64, 24);
        for (n, want) in oracle.iter().enumerate() {
            assert_eq!(
                &int_coeff(&s, offset + Rational64::from_integer(n as i64)),
                want
            );
        }
    }
}

#[test]
fn inverse_delta_matches_colored_partitions() {
    let terms = 25;
    let oracle = product_oracle(-24, terms);
    let inv = modular::inv_delta(terms);
    let yz = yau_zaslow(terms - 1);
    for (h, want) in oracle.iter().enumerate() {
        assert_eq!(
            &int_coeff(&inv, Rational64::from_integer(h as i64 - 1)),
            want
        );
        assert_eq!(yz.get(h).unwrap(), &BigRational::from_integer(want.clone()));
    }
    let head: Vec<BigInt> = oracle[..4].to_vec();
    assert_eq!(head, [1, 24, 324, 3200].map(BigInt::from));
}

#[test]
fn yau_zaslow_entries_are_positive_integers() {
    let yz = yau_zaslow(20);
    assert_eq!(yz.hmax(), 20);
    for r in yz.values() {
        assert!(r.is_integer() && *r > BigRational::from_integer(0.into()));
    }
}

#[test]
fn e10_matches_sigma9() {
    let e10 = eisenstein(10, 21).unwrap();
    assert_eq!(e10.coeff(0).unwrap(), BigRational::from_integer(1.into()));
    for n in 1..=20u64 {
        let want = sigma(9, n) * -264;
        assert_eq!(
            e10.coeff(n as i64).unwrap(),
            BigRational::from_integer(want),
            "n = {n}"
        );
    }
}

#[test]
fn e10_is_the_product() {
    let e4 = eisenstein(4, 12).unwrap();
    let e6 = eisenstein(6, 12).unwrap();
    assert_eq!(eisenstein(10, 12).unwrap(), e4.mul(&e6));
}

#[test]
fn delta_from_eisenstein_series() {
    // 1728 Δ = E4³ - E6²
    let terms = 20;
    let e4 = eisenstein(4, terms).unwrap();
    let e6 = eisenstein(6, terms).unwrap();
    let lhs = e4.pow(3).sub(&e6.pow(2));
    let rhs = modular::delta(terms).scale_int(1728);
    assert!(lhs.eq_to_joint_prec(&rhs));
}

#[test]
fn e8_shell_counts_by_brute_force() {
    // Every vector with Σ y_i² <= 16 in doubled coordinates, i.e. norm <= 4.
    let mut counts = [0u64; 3];
    let range = -4i64..=4;
    let mut y = [0i64; 8];
    fn rec(
        y: &mut [i64; 8],
        i: usize,
        range: &std::ops::RangeInclusive<i64>,
        counts: &mut [u64; 3],
    ) {
        if i == 8 {
            let all_even = y.iter().all(|v| v % 2 == 0);
            let all_odd = y.iter().all(|v| v.rem_euclid(2) == 1);
            let sq: i64 = y.iter().map(|v| v * v).sum();
            if (all_even || all_odd) && y.iter().sum::<i64>().rem_euclid(4) == 0 && sq <= 16 {
                counts[(sq / 8) as usize] += 1;
            }
            return;
        }
        let used: i64 = y[..i].iter().map(|v| v * v).sum();
        for v in range.clone() {
            if used + v * v <= 16 {
                y[i] = v;
                rec(y, i + 1, range, counts);
            }
        }
        y[i] = 0;
    }
    rec(&mut y, 0, &range, &mut counts);
    assert_eq!(counts, [1, 240, 2160]);
    assert_eq!(E8Shells::enumerate(3).counts(), &counts[..]);
}

#[test]
fn theta_e8_equals_e4() {
    let terms = 17;
    assert_eq!(theta_e8(terms), eisenstein(4, terms).unwrap());
}
