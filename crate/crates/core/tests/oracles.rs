//! Library results against independent reference computations.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use chebroot::chebyshev::{eval, ChebKind};
use chebroot::nthroot::{gen_binomial, pth_root_step, PthRootProblem};
use chebroot::numeric::{int_sqrt_nearest, to_decimal};
use chebroot::sqrt::{householder_step, phi};
use chebroot::ExactRational;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn raw(x: &ExactRational) -> BigRational {
    x.as_big_rational().clone()
}

/// Householder's method of order `d` for `t^p − x` at `h`: `h + c_{d−1}/c_d`,
/// where `c_k` are the Taylor coefficients of `1/(t^p − x)` around `h`.
fn householder_by_taylor(p: u32, x: &BigRational, h: &BigRational, d: usize) -> BigRational {
    // Taylor coefficients of f(h + e) = (h + e)^p − x.
    let mut f = vec![BigRational::zero(); p as usize + 1];
    let mut binom = BigInt::one();
    for k in 0..=p as usize {
        f[k] = BigRational::from_integer(binom.clone()) * num_traits::pow(h.clone(), p as usize - k);
        binom = binom * BigInt::from(p as usize - k) / BigInt::from(k + 1);
    }
    f[0] -= x;
    // c = 1/f as a power series in e.
    let mut c = vec![BigRational::zero(); d + 1];
    c[0] = f[0].recip();
    for k in 1..=d {
        let mut s = BigRational::zero();
        for j in 1..=k.min(p as usize) {
            s += &f[j] * &c[k - j];
        }
        c[k] = -s / &f[0];
    }
    h + &c[d - 1] / &c[d]
}

#[test]
fn householder_step_matches_the_derivative_definition() {
    let xs = [ExactRational::from(51), ExactRational::from(2), ExactRational::ratio(7, 3)];
    let hs = [ExactRational::from(7), ExactRational::ratio(3, 2), ExactRational::ratio(-5, 4)];
    for x in &xs {
        for h in &hs {
            for d in 1..=7u32 {
                let got = householder_step(x, h, d).unwrap();
                assert_eq!(raw(&got), householder_by_taylor(2, &raw(x), &raw(h), d as usize), "x={x} h={h} d={d}");
            }
        }
    }
}

/// `(h + √x)^{d+1}` as `a + b√x`.
fn power_in_quadratic_field(h: &BigRational, x: &BigRational, e: u32) -> (BigRational, BigRational) {
    let (mut a, mut b) = (BigRational::one(), BigRational::zero());
    for _ in 0..e {
        let na = &a * h + &b * x;
        let nb = &a + &b * h;
        a = na;
        b = nb;
    }
    (a, b)
}

#[test]
fn householder_step_matches_the_conjugate_ratio() {
    // With (h ± √x)^{d+1} = a ± b√x the step is √x·(sum)/(difference) = a/b.
    for x in [rat(51), rat(10), BigRational::new(5.into(), 2.into())] {
        for h in [rat(7), rat(3), BigRational::new(9.into(), 4.into())] {
            for d in 1..=8u32 {
                let (a, b) = power_in_quadratic_field(&h, &x, d + 1);
                let got = householder_step(&x.clone().into(), &h.clone().into(), d).unwrap();
                assert_eq!(raw(&got), a / b);
            }
        }
    }
}

#[test]
fn pth_root_step_matches_the_derivative_definition() {
    for p in 2..=5u32 {
        for d in 1..=4u32 {
            for (xn, xd) in [(51, 1), (10, 1), (7, 3)] {
                let x = ExactRational::ratio(xn, xd);
                let prob = PthRootProblem::new(x.clone(), p, ExactRational::from(2), d).unwrap();
                for h in [ExactRational::from(2), ExactRational::ratio(9, 4), ExactRational::ratio(5, 3)] {
                    let got = pth_root_step(&prob, &h).unwrap();
                    let want = householder_by_taylor(p, &raw(&x), &raw(&h), d as usize);
                    assert_eq!(raw(&got), want, "p={p} d={d} x={x} h={h}");
                }
            }
        }
    }
}

#[test]
fn gen_binomial_matches_polynomial_powers() {
    for p in 2..=6u64 {
        let mut poly = vec![BigUint::one()];
        for n in 0..=12u64 {
            for m in -2..(poly.len() as i64 + 2) {
                let want = if m >= 0 && (m as usize) < poly.len() { poly[m as usize].clone() } else { BigUint::zero() };
                assert_eq!(gen_binomial(n, m, p), want, "n={n} m={m} p={p}");
            }
            let mut next = vec![BigUint::zero(); poly.len() + p as usize - 1];
            for (i, c) in poly.iter().enumerate() {
                for j in 0..p as usize {
                    next[i + j] += c;
                }
            }
            poly = next;
        }
    }
}

/// Chebyshev polynomials from the shared recurrence with each family's seeds.
fn cheb_oracle(kind: ChebKind, k: usize, x: &BigRational) -> BigRational {
    let p1 = match kind {
        ChebKind::FirstT => x.clone(),
        ChebKind::SecondU => rat(2) * x,
        ChebKind::ThirdV => rat(2) * x - rat(1),
        ChebKind::FourthW => rat(2) * x + rat(1),
    };
    let (mut a, mut b) = (BigRational::one(), p1);
    for _ in 0..k {
        let c = rat(2) * x * &b - &a;
        a = b;
        b = c;
    }
    a
}

#[test]
fn chebyshev_eval_matches_the_recurrence() {
    let kinds = [ChebKind::FirstT, ChebKind::SecondU, ChebKind::ThirdV, ChebKind::FourthW];
    for x in [ExactRational::ratio(1, 3), ExactRational::ratio(-7, 5), ExactRational::from(3)] {
        for kind in kinds {
            for k in 0..40 {
                assert_eq!(raw(&eval(kind, k, &x)), cheb_oracle(kind, k, &raw(&x)), "{kind:?} k={k} x={x}");
            }
        }
    }
}

#[test]
fn chebyshev_eval_matches_trigonometry() {
    for k in 0..20usize {
        for theta in [0.3f64, 1.1, 2.5] {
            let c = theta.cos();
            let x = ExactRational::from(BigRational::from_float(c).unwrap());
            let s = theta.sin();
            let half = (theta / 2.0).cos();
            let shalf = (theta / 2.0).sin();
            let kf = k as f64;
            let cases = [
                (ChebKind::FirstT, (kf * theta).cos()),
                (ChebKind::SecondU, ((kf + 1.0) * theta).sin() / s),
                (ChebKind::ThirdV, ((kf + 0.5) * theta).cos() / half),
                (ChebKind::FourthW, ((kf + 0.5) * theta).sin() / shalf),
            ];
            for (kind, want) in cases {
                let got = eval(kind, k, &x).to_f64();
                assert!((got - want).abs() < 1e-9 * (1.0 + want.abs()), "{kind:?} k={k} θ={theta}");
            }
        }
    }
}

#[test]
fn phi_matches_its_closed_forms() {
    // Even d: 2U_{d/2−1}/V_{d/2}; odd d: −U_{d−1}/(X·U_d).
    for x in [rat(3), BigRational::new(7.into(), 3.into()), BigRational::new(11.into(), 10.into())] {
        for d in 1..=10usize {
            let want = if d % 2 == 0 {
                rat(2) * cheb_oracle(ChebKind::SecondU, d / 2 - 1, &x) / cheb_oracle(ChebKind::ThirdV, d / 2, &x)
            } else {
                -cheb_oracle(ChebKind::SecondU, d - 1, &x) / (&x * cheb_oracle(ChebKind::SecondU, d, &x))
            };
            assert_eq!(raw(&phi(d as u32, &x.clone().into()).unwrap()), want, "d={d}");
        }
    }
}

#[test]
fn int_sqrt_nearest_matches_brute_force() {
    // k is nearest to √n iff (2k − 1)² < 4n < (2k + 1)².
    for n in 1..5000i64 {
        let k = (0..=n).find(|k| 4 * n < (2 * k + 1) * (2 * k + 1)).unwrap();
        assert!((2 * k - 1) * (2 * k - 1) < 4 * n);
        assert_eq!(int_sqrt_nearest(&ExactRational::from(n)).unwrap(), BigInt::from(k), "n={n}");
    }
}

/// Digit-by-digit long division, rounding half to even on the remainder.
fn long_division(num: i64, den: i64, digits: usize) -> String {
    let neg = (num < 0) != (den < 0);
    let (mut n, d) = (num.unsigned_abs() as u128, den.unsigned_abs() as u128);
    let int = n / d;
    n %= d;
    let mut ds: Vec<u8> = int.to_string().into_bytes();
    let int_len = ds.len();
    for _ in 0..digits {
        n *= 10;
        ds.push(b'0' + (n / d) as u8);
        n %= d;
    }
    let last_odd = (ds.last().unwrap() - b'0') % 2 == 1;
    if 2 * n > d || (2 * n == d && last_odd) {
        let mut i = ds.len();
        loop {
            if i == 0 {
                ds.insert(0, b'1');
                break;
            }
            i -= 1;
            if ds[i] == b'9' {
                ds[i] = b'0';
            } else {
                ds[i] += 1;
                break;
            }
        }
    }
    let int_len = int_len + ds.len() - (int_len + digits);
    let mut s = String::from_utf8(ds).unwrap();
    if digits > 0 {
        s.insert(int_len, '.');
    }
    let is_zero = s.bytes().all(|b| b == b'0' || b == b'.');
    if neg && !is_zero {
        s.insert(0, '-');
    }
    s
}

proptest! {
    #[test]
    fn to_decimal_matches_long_division(num in -1_000_000i64..1_000_000, den in 1i64..100_000, digits in 0usize..25) {
        let q = ExactRational::ratio(num, den);
        let g = num_integer::gcd(num, den);
        prop_assert_eq!(to_decimal(&q, digits), long_division(num / g, den / g, digits));
    }

    #[test]
    fn rational_display_round_trips(num in any::<i64>(), den in 1i64..i64::MAX) {
        let q = ExactRational::ratio(num, den);
        let back: ExactRational = q.to_string().parse().unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert!(back.denom().is_positive());
        prop_assert_eq!(num_integer::gcd(back.numer().clone(), back.denom().clone()), BigInt::one());
    }

    #[test]
    fn householder_iterates_approach_the_root(x in 2i64..10_000, d in 1u32..5) {
        let xq = ExactRational::from(x);
        let r = ExactRational::from(int_sqrt_nearest(&xq).unwrap());
        prop_assume!(r.square() != xq);
        let h1 = householder_step(&xq, &r, d).unwrap();
        let h2 = householder_step(&xq, &h1, d).unwrap();
        let e = |h: &ExactRational| (h.square() - &xq).abs().to_f64();
        prop_assert!(e(&h2) < e(&h1));
        prop_assert!(e(&h1) < e(&r));
    }
}

#[test]
fn long_division_oracle_self_check() {
    assert_eq!(long_division(50, 7, 4), "7.1429");
    assert_eq!(long_division(-1, 3, 2), "-0.33");
    assert_eq!(long_division(1, 2, 0), "0");
    assert_eq!(long_division(3, 2, 0), "2");
    assert_eq!(long_division(999, 1000, 2), "1.00");
    assert_eq!(long_division(-1, 1000, 2), "0.00");
}
