use super::linalg::solve;
use super::{ArithError, Poly, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

pub const MAX_DEGREE: usize = 4;

/// `Q(γ)` for a root `γ` of a monic irreducible integer polynomial.
///
/// Cheap to clone; equality compares defining polynomials.
#[derive(Clone)]
pub struct NumberField {
    minpoly: Arc<[i64]>,
}

impl NumberField {
    /// Builds `Q(γ)` from the coefficients `[c0, c1, …, 1]` of the minimal
    /// polynomial of `γ`, certifying irreducibility over `Q`.
    pub fn new(minpoly: &[i64]) -> Result<Self, ArithError> {
        let degree = minpoly.len().saturating_sub(1);
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(ArithError::DegreeOutOfRange(degree));
        }
        if minpoly[degree] != 1 {
            return Err(ArithError::NotMonic);
        }
        if let Some(witness) = integer_factor(minpoly) {
            return Err(ArithError::Reducible { witness });
        }
        Ok(NumberField {
            minpoly: minpoly.into(),
        })
    }

    /// `Q` itself, presented as `Q(γ)` with `γ = 0`.
    pub fn rationals() -> Self {
        NumberField {
            minpoly: Arc::from([0i64, 1].as_slice()),
        }
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[i64] {
        &self.minpoly
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn element(&self, coeffs: Vec<Rational>) -> FieldElement {
        assert_eq!(coeffs.len(), self.degree(), "coefficient count must equal degree");
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(vec![Rational::zero(); self.degree()])
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, q: Rational) -> FieldElement {
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[0] = q;
        self.element(coeffs)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// The generator `γ`. In `Q` this is the root `0` of `x`.
    pub fn gen(&self) -> FieldElement {
        if self.degree() == 1 {
            return self.from_int(-self.minpoly[0]);
        }
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[1] = Rational::one();
        self.element(coeffs)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.minpoly, &other.minpoly) || self.minpoly == other.minpoly
    }
}

impl Eq for NumberField {}

impl Hash for NumberField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.minpoly.hash(state);
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", Poly::from_ints(&self.minpoly))
    }
}

/// Nonzero divisors of `n` (both signs), `n != 0`.
fn divisors(n: i64) -> Vec<i64> {
    let n = n.unsigned_abs();
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as i64);
            if d * d != n {
                out.push((n / d) as i64);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    let neg: Vec<i64> = out.iter().map(|d| -d).collect();
    out.extend(neg);
    out
}

fn eval_int(f: &[i64], x: i64) -> i128 {
    f.iter()
        .rev()
        .fold(0i128, |acc, &c| acc * x as i128 + c as i128)
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// A monic integer factor of degree `1..=deg/2`, if the monic polynomial `f`
/// (degree at most 4) has one. By Gauss's lemma this decides irreducibility
/// over `Q`.
fn integer_factor(f: &[i64]) -> Option<Vec<i64>> {
    let deg = f.len() - 1;
    if deg == 1 {
        return None;
    }
    if f[0] == 0 {
        return Some(vec![0, 1]);
    }
    // rational roots of a monic integer polynomial are integer divisors of c0
    for r in divisors(f[0]) {
        if eval_int(f, r) == 0 {
            return Some(vec![-r, 1]);
        }
    }
    if deg < 4 {
        return None;
    }
    // (x² + a x + b)(x² + c x + d)
    let (c0, c1, c2, c3) = (f[0] as i128, f[1] as i128, f[2] as i128, f[3] as i128);
    for b in divisors(f[0]) {
        let b = b as i128;
        let d = c0 / b;
        let disc = c3 * c3 - 4 * (c2 - b - d);
        let Some(root) = isqrt(disc) else { continue };
        if (c3 + root) % 2 != 0 {
            continue;
        }
        let a = (c3 + root) / 2;
        for (a, c) in [(a, c3 - a), (c3 - a, a)] {
            if a * d + b * c == c1 {
                return Some(vec![b as i64, a as i64, 1]);
            }
        }
    }
    None
}

/// Element of a [`NumberField`], `Σ q_l γ^l` for `l < m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: NumberField,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// Power-basis coefficients, index `l` holding the coefficient of `γ^l`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The element as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check_same_field(&self, other: &Self) {
        assert!(self.field == other.field, "{}", ArithError::FieldMismatch);
    }

    /// Columns are `self · γ^j`; this is the matrix of multiplication by
    /// `self` in the power basis, stored by rows.
    pub fn multiplication_matrix(&self) -> Vec<Vec<Rational>> {
        let m = self.field.degree();
        let mut cols = Vec::with_capacity(m);
        let mut basis = self.field.one();
        let gamma = self.field.gen();
        for _ in 0..m {
            cols.push((self * &basis).coeffs);
            basis = &basis * &gamma;
        }
        (0..m).map(|i| (0..m).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn checked_inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        let a = self.multiplication_matrix();
        let e0 = self.field.one().coeffs;
        // the multiplication matrix of a nonzero element of a field is invertible
        let x = solve(&a, &e0)?;
        Some(self.field.element(x))
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents through the inverse. Panics on `0^-k`.
    pub fn powi(&self, e: i64) -> FieldElement {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.checked_inv()
                .expect("negative power of zero")
                .pow(e.unsigned_abs() as u32)
        }
    }

    /// Monic minimal polynomial over `Q`: the first power `x^k` that falls in
    /// the span of `1, x, …, x^(k-1)` gives the relation.
    pub fn minimal_polynomial(&self) -> Poly {
        let m = self.field.degree();
        let mut powers = vec![self.field.one().coeffs];
        let mut cur = self.field.one();
        for k in 1..=m {
            cur = &cur * self;
            // columns: powers[0..k]
            let a: Vec<Vec<Rational>> = (0..m)
                .map(|i| powers.iter().map(|p| p[i].clone()).collect())
                .collect();
            if let Some(c) = solve(&a, &cur.coeffs) {
                let mut coeffs: Vec<Rational> = c.into_iter().map(|x| -x).collect();
                coeffs.push(Rational::one());
                return Poly::new(coeffs);
            }
            powers.push(cur.coeffs.clone());
            debug_assert_eq!(powers.len(), k + 1);
        }
        unreachable!("x^m always lies in the span of lower powers plus itself");
    }

    /// `true` iff the minimal polynomial has integer coefficients.
    pub fn is_algebraic_integer(&self) -> bool {
        if let Some(q) = self.as_rational() {
            return q.is_integer();
        }
        self.minimal_polynomial().has_integer_coeffs()
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            match l {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if l == 1 {
                        write!(f, "γ")?;
                    } else {
                        write!(f, "γ^{l}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_same_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_same_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_same_field(rhs);
        let m = self.field.degree();
        if m == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        if self.is_zero() || rhs.is_zero() {
            return self.field.zero();
        }
        let mut prod = vec![Rational::zero(); 2 * m - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // reduce modulo the monic minimal polynomial, top degree first
        let f = &self.field.minpoly;
        for k in (m..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (l, &fl) in f[..m].iter().enumerate() {
                if fl != 0 {
                    prod[k - m + l] -= &c * BigInt::from(fl);
                }
            }
        }
        prod.truncate(m);
        FieldElement {
            field: self.field.clone(),
            coeffs: prod,
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        let inv = rhs.checked_inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl FieldElement {
    /// Multiplies by a rational scalar.
    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn q5() -> NumberField {
        NumberField::new(&[-5, 0, 1]).unwrap()
    }

    fn golden() -> FieldElement {
        let k = q5();
        k.element(vec![ratio(1, 2), ratio(1, 2)])
    }

    #[test]
    fn make_field_examples() {
        assert_eq!(q5().degree(), 2);
        assert_eq!(
            NumberField::new(&[-1, 0, 1]).unwrap_err(),
            ArithError::Reducible { witness: vec![-1, 1] }
        );
        assert_eq!(NumberField::new(&[1, 1, 1]).unwrap().degree(), 2);
        assert_eq!(NumberField::new(&[1, 0, 2]).unwrap_err(), ArithError::NotMonic);
        assert_eq!(
            NumberField::new(&[1, 0, 0, 0, 0, 1]).unwrap_err(),
            ArithError::DegreeOutOfRange(5)
        );
    }

    #[test]
    fn quartic_without_roots_can_still_split() {
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        let err = NumberField::new(&[4, 0, 0, 0, 1]).unwrap_err();
        let ArithError::Reducible { witness } = err else { panic!() };
        assert_eq!(witness.len(), 3);
        // x^4 - 10x^2 + 1 (minimal polynomial of √2 + √3) is irreducible
        assert!(NumberField::new(&[1, 0, -10, 0, 1]).is_ok());
        // x^4 + 1 is irreducible over Q
        assert!(NumberField::new(&[1, 0, 0, 0, 1]).is_ok());
    }

    #[test]
    fn golden_ratio_minimal_polynomial() {
        let x = golden();
        let mp = x.minimal_polynomial();
        assert_eq!(mp, Poly::from_ints(&[-1, -1, 1]));
        // oracle: substitute and expand
        assert!(mp.eval(&x).is_zero());
        assert!((&(&x * &x) - &x).is_one());
    }

    #[test]
    fn minimal_polynomial_degenerate_cases() {
        let k = q5();
        assert_eq!(k.from_int(3).minimal_polynomial(), Poly::from_ints(&[-3, 1]));
        assert_eq!(k.gen().minimal_polynomial(), Poly::from_ints(&[-5, 0, 1]));
    }

    #[test]
    fn algebraic_integers() {
        let k = q5();
        assert!(golden().is_algebraic_integer());
        assert!(!k.from_rational(ratio(1, 2)).is_algebraic_integer());
        assert!(k.from_int(7).is_algebraic_integer());
        assert!(!k.gen().scale(&ratio(1, 2)).is_algebraic_integer());
    }

    #[test]
    fn inverse_round_trip() {
        let k = NumberField::new(&[2, 0, 0, 1]).unwrap();
        let x = k.element(vec![rat(1), rat(-2), ratio(3, 7)]);
        let y = x.checked_inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(k.zero().checked_inv().is_none());
    }

    #[test]
    fn rationals_field() {
        let q = NumberField::rationals();
        assert_eq!(q.degree(), 1);
        assert!(q.gen().is_zero());
        let x = q.from_rational(ratio(3, 2));
        assert_eq!((&x * &x).as_rational(), Some(&ratio(9, 4)));
    }

    #[test]
    fn display() {
        let k = q5();
        let x = k.element(vec![ratio(-1, 2), rat(3)]);
        assert_eq!(x.to_string(), "-1/2 + 3*γ");
    }
}
