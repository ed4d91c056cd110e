//! p-adic valuations on `Q` and their min-of-coefficients extension to a
//! number field `Q(γ)`.
//!
//! The extension `ṽ(Σ q_l γ^l) = min_l ν_p(q_l)` is multiplicative only when
//! `p` stays inert in `Q(γ)`. Construction therefore certifies that the
//! minimal polynomial of `γ` is irreducible mod `p` and otherwise returns an
//! explicit pair `(x, y)` with `ṽ(xy) ≠ ṽ(x) + ṽ(y)`.

use crate::arith::{FieldElement, NumberField, Poly, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::Add;
use thiserror::Error;

/// A value in `Z ∪ {+∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValuationValue {
    Finite(i64),
    Infinity,
}

impl ValuationValue {
    pub fn finite(self) -> Option<i64> {
        match self {
            ValuationValue::Finite(n) => Some(n),
            ValuationValue::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ValuationValue::Infinity
    }
}

impl Add for ValuationValue {
    type Output = ValuationValue;
    fn add(self, rhs: ValuationValue) -> ValuationValue {
        match (self, rhs) {
            (ValuationValue::Finite(a), ValuationValue::Finite(b)) => ValuationValue::Finite(a + b),
            _ => ValuationValue::Infinity,
        }
    }
}

impl fmt::Display for ValuationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationValue::Finite(n) => write!(f, "{n}"),
            ValuationValue::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(
        "min-of-coefficients rule is not a valuation for p = {p} on Q[x]/({}): \
         minimal polynomial has factor {} mod p; ṽ({x}) + ṽ({y}) ≠ ṽ(({x})·({y}))",
        Poly::from_ints(minpoly), Poly::from_ints(factor_mod_p)
    )]
    NotAValuation {
        p: u64,
        minpoly: Vec<i64>,
        factor_mod_p: Vec<i64>,
        x: FieldElement,
        y: FieldElement,
    },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The p-adic valuation `ν_p` on `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdicValuation {
    p: u64,
}

impl PAdicValuation {
    pub fn new(p: u64) -> Result<Self, ValuationError> {
        if !is_prime(p) {
            return Err(ValuationError::NotPrime(p));
        }
        Ok(PAdicValuation { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Exponent of `p` in a nonzero integer.
    fn nu_integer(&self, n: &BigInt) -> i64 {
        let p = BigInt::from(self.p);
        let mut n = n.abs();
        let mut v = 0;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return v;
            }
            n = q;
            v += 1;
        }
    }

    /// `ν_p(p^n · a/b) = n` with `a, b` prime to `p`; `+∞` at zero.
    pub fn nu_p(&self, q: &Rational) -> ValuationValue {
        if q.is_zero() {
            return ValuationValue::Infinity;
        }
        ValuationValue::Finite(self.nu_integer(q.numer()) - self.nu_integer(q.denom()))
    }

    /// Extends to `Q(γ)` by the min rule, certifying the result.
    pub fn extend(&self, field: &NumberField) -> Result<ExtendedValuation, ValuationError> {
        extend(self.p, field)
    }
}

/// `ν_p` extended to `Q(γ)` by taking the minimum over power-basis
/// coefficients, valid because `p` is inert (certified at construction).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedValuation {
    base: PAdicValuation,
    field: NumberField,
    residue_degree: usize,
}

impl From<PAdicValuation> for ExtendedValuation {
    fn from(base: PAdicValuation) -> Self {
        ExtendedValuation {
            base,
            field: NumberField::rationals(),
            residue_degree: 1,
        }
    }
}

/// Builds the extension of `ν_p` to `field`, or explains why the min rule
/// fails to be multiplicative there.
pub fn extend(p: u64, field: &NumberField) -> Result<ExtendedValuation, ValuationError> {
    let base = PAdicValuation::new(p)?;
    let f = field.minpoly();
    if let Some((g, h)) = factor_mod_p(f, p) {
        // g·h ≡ f (mod p) with both monic of lower degree, so g(γ)·h(γ) = p·r(γ)
        // while both factors have ṽ = 0.
        let lift = |c: &[u64]| {
            let mut coeffs = vec![Rational::zero(); field.degree()];
            for (l, &x) in c.iter().enumerate() {
                coeffs[l] = Rational::from_integer(BigInt::from(x));
            }
            field.element(coeffs)
        };
        let (x, y) = (lift(&g), lift(&h));
        let ext = ExtendedValuation {
            base,
            field: field.clone(),
            residue_degree: field.degree(),
        };
        debug_assert_ne!(ext.nu_ext(&(&x * &y)), ext.nu_ext(&x) + ext.nu_ext(&y));
        return Err(ValuationError::NotAValuation {
            p,
            minpoly: f.to_vec(),
            factor_mod_p: g.iter().map(|&c| c as i64).collect(),
            x,
            y,
        });
    }
    Ok(ExtendedValuation {
        base,
        field: field.clone(),
        residue_degree: field.degree(),
    })
}

// ---- polynomials over F_p, lowest degree first ----

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Division of `a` by the monic `b` over `F_p`; returns (quotient, remainder).
fn divmod_p(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k] % p;
        if c == 0 {
            continue;
        }
        q[k - db] = c;
        for (l, &bl) in b.iter().enumerate() {
            let idx = k - db + l;
            r[idx] = (r[idx] + p - (c * bl) % p) % p;
        }
    }
    (trim(q), trim(r))
}

/// A monic factorization `f ≡ g·h (mod p)` with `1 ≤ deg g ≤ deg f / 2`, found
/// by exhausting monic candidates of increasing degree.
fn factor_mod_p(f: &[i64], p: u64) -> Option<(Vec<u64>, Vec<u64>)> {
    let fp: Vec<u64> = f
        .iter()
        .map(|&c| c.rem_euclid(p as i64) as u64)
        .collect();
    let deg = fp.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                g.push(t % p);
                t /= p;
            }
            g.push(1);
            let (q, r) = divmod_p(&fp, &g, p);
            if r.is_empty() {
                return Some((g, q));
            }
        }
    }
    None
}

impl ExtendedValuation {
    pub fn prime(&self) -> u64 {
        self.base.p
    }

    pub fn base(&self) -> PAdicValuation {
        self.base
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn residue_degree(&self) -> usize {
        self.residue_degree
    }

    /// Size `q = p^f` of the residue field.
    pub fn residue_field_size(&self) -> u64 {
        self.base.p.pow(self.residue_degree as u32)
    }

    /// `min_l ν_p(q_l)` over the power-basis coefficients.
    pub fn nu_ext(&self, x: &FieldElement) -> ValuationValue {
        assert!(*x.field() == self.field, "element outside the valuation's field");
        x.coeffs()
            .iter()
            .map(|c| self.base.nu_p(c))
            .min()
            .expect("degree ≥ 1")
    }

    /// The uniformizer `p` as a field element.
    pub fn uniformizer(&self) -> FieldElement {
        self.field.from_int(self.base.p as i64)
    }

    /// `Σ c_l γ^l` with `c_l ∈ {0, …, p−1}`: one representative per residue
    /// class, in lexicographic order of `(c_0, c_1, …)` with `c_0` fastest.
    pub fn residue_representatives(&self) -> Vec<FieldElement> {
        let p = self.base.p;
        let m = self.field.degree();
        (0..self.residue_field_size())
            .map(|mut idx| {
                let coeffs = (0..m)
                    .map(|_| {
                        let c = idx % p;
                        idx /= p;
                        Rational::from_integer(BigInt::from(c))
                    })
                    .collect();
                self.field.element(coeffs)
            })
            .collect()
    }

    /// Canonical representative of `x` modulo `p^n · O`.
    ///
    /// Each coefficient is replaced by the unique element of `Z[1/p]` in
    /// `[0, p^n)` congruent to it; zero when `ν(x) ≥ n`.
    pub fn reduce_mod(&self, x: &FieldElement, n: i64) -> FieldElement {
        let coeffs = x
            .coeffs()
            .iter()
            .map(|c| reduce_rational_mod(c, self.base, n))
            .collect();
        self.field.element(coeffs)
    }
}

fn pow_big(p: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

fn reduce_rational_mod(c: &Rational, v: PAdicValuation, n: i64) -> Rational {
    let nu = match v.nu_p(c) {
        ValuationValue::Infinity => return Rational::zero(),
        ValuationValue::Finite(k) => k,
    };
    if nu >= n {
        return Rational::zero();
    }
    let k = (-nu).max(0);
    let shift = pow_big(v.p, k as u64);
    let scaled = c * Rational::from_integer(shift.clone());
    // n + k ≥ 1 here, and `scaled` has denominator prime to p
    let modulus = pow_big(v.p, (n + k) as u64);
    let den_inv = mod_inverse(scaled.denom(), &modulus);
    let r = (scaled.numer() * den_inv).mod_floor(&modulus);
    Rational::new(r, shift)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let eg = a.extended_gcd(m);
    debug_assert!(eg.gcd.is_one());
    eg.x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use ValuationValue::*;

    #[test]
    fn nu_p_examples() {
        let v3 = PAdicValuation::new(3).unwrap();
        assert_eq!(v3.nu_p(&ratio(9, 2)), Finite(2));
        assert_eq!(v3.nu_p(&rat(0)), Infinity);
        assert_eq!(PAdicValuation::new(2).unwrap().nu_p(&rat(7)), Finite(0));
        assert_eq!(v3.nu_p(&ratio(-5, 27)), Finite(-3));
        assert_eq!(PAdicValuation::new(4), Err(ValuationError::NotPrime(4)));
    }

    #[test]
    fn value_arithmetic() {
        assert_eq!(Finite(3) + Infinity, Infinity);
        assert_eq!(Finite(3).min(Infinity), Finite(3));
        assert!(Finite(i64::MAX) < Infinity);
    }

    #[test]
    fn extension_gate() {
        let k = NumberField::new(&[1, 1, 1]).unwrap();
        let v = extend(2, &k).unwrap();
        assert_eq!(v.residue_degree(), 2);
        assert_eq!(v.residue_field_size(), 4);

        let gauss = NumberField::new(&[1, 0, 1]).unwrap();
        assert!(extend(3, &gauss).is_ok());
        // -1 is a square mod 5
        assert!(matches!(extend(5, &gauss), Err(ValuationError::NotAValuation { .. })));
    }

    #[test]
    fn ramified_counterexample_is_gamma_squared() {
        let k = NumberField::new(&[-2, 0, 1]).unwrap();
        let err = extend(2, &k).unwrap_err();
        let ValuationError::NotAValuation { x, y, factor_mod_p, .. } = err else {
            panic!("expected NotAValuation")
        };
        assert_eq!(x, k.gen());
        assert_eq!(y, k.gen());
        assert_eq!(factor_mod_p, vec![0, 1]);
        // ṽ(γ) = 0 but ṽ(γ²) = ṽ(2) = 1, computed with the raw min rule
        let min_rule = |e: &FieldElement| {
            e.coeffs().iter().map(|c| PAdicValuation::new(2).unwrap().nu_p(c)).min().unwrap()
        };
        assert_eq!(min_rule(&x), Finite(0));
        assert_eq!(min_rule(&(&x * &y)), Finite(1));
    }

    #[test]
    fn nu_ext_examples() {
        let k = NumberField::new(&[1, 1, 1]).unwrap();
        let v = extend(2, &k).unwrap();
        let x = k.element(vec![rat(3), ratio(1, 2)]);
        assert_eq!(v.nu_ext(&x), Finite(-1));
        assert_eq!(v.nu_ext(&k.zero()), Infinity);
        assert_eq!(v.nu_ext(&v.uniformizer()), Finite(1));
    }

    #[test]
    fn reduction_representatives() {
        let v = ExtendedValuation::from(PAdicValuation::new(3).unwrap());
        let q = NumberField::rationals();
        let red = |x: Rational, n| v.reduce_mod(&q.from_rational(x), n).as_rational().cloned().unwrap();
        assert_eq!(red(rat(10), 2), rat(1));
        assert_eq!(red(rat(-1), 1), rat(2));
        assert_eq!(red(ratio(1, 2), 1), rat(2));
        assert_eq!(red(ratio(1, 3), 1), ratio(1, 3));
        assert_eq!(red(ratio(5, 9), 0), ratio(5, 9));
        assert_eq!(red(ratio(1, 3), -1), rat(0));
        assert_eq!(red(ratio(7, 27), -1), ratio(7, 27));
        assert_eq!(red(ratio(2, 27), -2), ratio(2, 27));
    }

    #[test]
    fn residue_representatives_count() {
        let k = NumberField::new(&[1, 0, 1]).unwrap();
        let v = extend(3, &k).unwrap();
        let reps = v.residue_representatives();
        assert_eq!(reps.len(), 9);
        assert!(reps[0].is_zero());
    }

    #[test]
    fn prime_helpers() {
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert!(is_prime(97));
        assert!(!is_prime(1));
    }
}
