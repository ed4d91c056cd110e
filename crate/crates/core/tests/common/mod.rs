#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use sl2kit::arith::{FieldElement, Mat2, NumberField, Rational};

/// Rational with a random power of `p` in numerator or denominator.
pub fn padic_rational(rng: &mut impl Rng, p: i64) -> Rational {
    if rng.random_ratio(1, 20) {
        return Rational::zero();
    }
    let a = p.pow(rng.random_range(0..4));
    let b = p.pow(rng.random_range(0..4));
    let u = rng.random_range(1..60i64) * if rng.random_bool(0.5) { -1 } else { 1 };
    let w = rng.random_range(1..60i64);
    Rational::new(BigInt::from(a * u), BigInt::from(b * w))
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(BigInt::from(rng.random_range(-9..=9i64)), BigInt::from(rng.random_range(1..=4i64)))
}

pub fn small_element(rng: &mut impl Rng, field: &NumberField) -> FieldElement {
    field.element((0..field.degree()).map(|_| small_rational(rng)).collect())
}

pub fn padic_element(rng: &mut impl Rng, field: &NumberField, p: i64) -> FieldElement {
    field.element((0..field.degree()).map(|_| padic_rational(rng, p)).collect())
}

pub fn nonzero_element(rng: &mut impl Rng, field: &NumberField) -> FieldElement {
    loop {
        let x = small_element(rng, field);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Product of a few elementary and diagonal matrices; determinant 1.
pub fn random_sl2(rng: &mut impl Rng, field: &NumberField) -> Mat2 {
    let (zero, one) = (field.zero(), field.one());
    let mut g = Mat2::identity(field);
    for _ in 0..rng.random_range(1..=4) {
        let x = small_element(rng, field);
        let step = match rng.random_range(0..3) {
            0 => Mat2::new(one.clone(), x, zero.clone(), one.clone()),
            1 => Mat2::new(one.clone(), zero.clone(), x, one.clone()),
            _ => Mat2::torus(&nonzero_element(rng, field)),
        };
        g = &g * &step;
    }
    g
}

pub fn random_gl2(rng: &mut impl Rng, field: &NumberField) -> Mat2 {
    loop {
        let m = Mat2::new(
            small_element(rng, field),
            small_element(rng, field),
            small_element(rng, field),
            small_element(rng, field),
        );
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Exponent of `p` in a nonzero integer, by repeated division.
fn count_p(mut n: BigInt, p: &BigInt) -> i64 {
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// Independent p-adic valuation on Q; `None` stands for +∞.
pub fn naive_nu(q: &Rational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    Some(count_p(q.numer().abs(), &p) - count_p(q.denom().clone(), &p))
}

/// The raw coefficientwise minimum, without any irreducibility gate.
pub fn naive_min_rule(x: &FieldElement, p: u64) -> Option<i64> {
    x.coeffs().iter().filter_map(|c| naive_nu(c, p)).min()
}
