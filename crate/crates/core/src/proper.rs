//! The diagonal action of a finitely generated `Γ ≤ SL(2, Z[1/s, γ])` on
//! `T_{p_1} × … × T_{p_n} × H`, one Bruhat–Tits tree per prime dividing `s`.
//!
//! The pointwise predicate "every coordinate of the displacement of the
//! basepoint `(v0, …, v0, (0,1))` is `< C`" cuts out a finite set of group
//! elements. Over `Q` that set is enumerated exactly: tree displacement
//! `−2·min ν_p(g_ij) < C` bounds the `p`-power denominators, and
//! `Σ g_ij² < 2·cosh C` bounds the numerators.

use crate::arith::{FieldElement, Mat2, NumberField, Rational};
use crate::hyperbolic::{displacement_hyp, ArchimedeanEmbedding, HypError};
use crate::tree::TreeContext;
use crate::valuation::{extend, prime_factors, ValuationError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use std::collections::HashSet;
use thiserror::Error;

/// Candidate tuples examined by [`MarkedGroup::enumerate_bounded`] before it
/// gives up with [`ProperError::BudgetExceeded`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProperError {
    #[error("generator {index} does not have determinant 1")]
    DetNotOne { index: usize },
    #[error("entry {entry} lies outside Z[1/{s}, γ]")]
    EntryOutsideRing { entry: FieldElement, s: u64 },
    #[error("matrix is not over the group's field")]
    FieldMismatch,
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Hyperbolic(#[from] HypError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search space exceeds the budget of {budget} candidates")]
    BudgetExceeded { budget: u64 },
}

/// `Z[1/s, γ]` as read off a generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingData {
    pub s: u64,
    pub primes: Vec<u64>,
    pub field: NumberField,
}

/// `s` is the lcm of every coefficient denominator in the generators; the
/// primes are its distinct prime factors.
pub fn ring_detect(field: &NumberField, generators: &[Mat2]) -> Result<RingData, ProperError> {
    let mut s = BigInt::one();
    for g in generators {
        for x in g.entries() {
            s = s.lcm(&x.denominator_lcm());
        }
    }
    let s = s
        .to_u64()
        .ok_or_else(|| ProperError::Unsupported(format!("denominator lcm {s} exceeds 64 bits")))?;
    Ok(RingData {
        s,
        primes: prime_factors(s),
        field: field.clone(),
    })
}

/// Basepoint displacement in each factor of the product space.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacementProfile {
    /// `(p_k, d_{T_k}(v0, g·v0))` in increasing order of `p_k`.
    pub tree_displacements: Vec<(u64, u64)>,
    pub hyp_displacement: f64,
}

impl DisplacementProfile {
    /// Strict `< C` in every coordinate.
    pub fn within(&self, c: f64) -> bool {
        self.tree_displacements.iter().all(|&(_, d)| (d as f64) < c) && self.hyp_displacement < c
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationResult {
    pub elements: Vec<Mat2>,
    pub bound: f64,
    /// Set only by the exact enumerator.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropernessReport {
    pub bound: f64,
    pub max_len: usize,
    pub word_count: usize,
    pub enumerated_count: usize,
    pub contained: bool,
    /// Word-ball elements that the enumerator missed; empty when contained.
    pub missing: Vec<Mat2>,
}

impl PropernessReport {
    pub fn certificate(&self) -> String {
        if self.contained {
            format!("finite, ≤ {}", self.enumerated_count)
        } else {
            format!("containment violated by {} element(s)", self.missing.len())
        }
    }
}

/// Generators interleaved with their inverses: `g1, g1⁻¹, g2, g2⁻¹, …`.
pub fn letters(generators: &[Mat2]) -> Vec<Mat2> {
    generators
        .iter()
        .flat_map(|g| [g.clone(), g.inverse().expect("invertible generator")])
        .collect()
}

/// Distinct products of at most `max_len` letters, in breadth-first order
/// (words extended on the right, letters in [`letters`] order).
pub fn word_ball(field: &NumberField, generators: &[Mat2], max_len: usize) -> Vec<Mat2> {
    let alphabet = letters(generators);
    let id = Mat2::identity(field);
    let mut seen: HashSet<Mat2> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut frontier = vec![id];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in &alphabet {
                let x = w * a;
                if seen.insert(x.clone()) {
                    order.push(x.clone());
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    order
}

/// Product of `len` letters drawn uniformly.
pub fn random_word(field: &NumberField, generators: &[Mat2], len: usize, rng: &mut impl Rng) -> Mat2 {
    let alphabet = letters(generators);
    let mut w = Mat2::identity(field);
    if alphabet.is_empty() {
        return w;
    }
    for _ in 0..len {
        w = &w * &alphabet[rng.random_range(0..alphabet.len())];
    }
    w
}

/// A finitely generated subgroup of `SL(2, Z[1/s, γ])` with the trees and the
/// archimedean embedding of its diagonal action.
#[derive(Debug, Clone)]
pub struct MarkedGroup {
    generators: Vec<Mat2>,
    ring: RingData,
    trees: Vec<TreeContext>,
    embedding: ArchimedeanEmbedding,
}

impl MarkedGroup {
    pub fn new(field: &NumberField, generators: Vec<Mat2>) -> Result<Self, ProperError> {
        for (index, g) in generators.iter().enumerate() {
            if g.field() != field {
                return Err(ProperError::FieldMismatch);
            }
            if !g.det().is_one() {
                return Err(ProperError::DetNotOne { index });
            }
        }
        let ring = ring_detect(field, &generators)?;
        let trees = ring
            .primes
            .iter()
            .map(|&p| extend(p, field).map(TreeContext::new))
            .collect::<Result<Vec<_>, _>>()?;
        let embedding = ArchimedeanEmbedding::new(field, 0)?;
        Ok(MarkedGroup {
            generators,
            ring,
            trees,
            embedding,
        })
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    pub fn ring(&self) -> &RingData {
        &self.ring
    }

    pub fn field(&self) -> &NumberField {
        &self.ring.field
    }

    pub fn trees(&self) -> &[TreeContext] {
        &self.trees
    }

    pub fn embedding(&self) -> &ArchimedeanEmbedding {
        &self.embedding
    }

    fn check_in_ring(&self, g: &Mat2) -> Result<(), ProperError> {
        if g.field() != self.field() {
            return Err(ProperError::FieldMismatch);
        }
        for x in g.entries() {
            let mut den = x.denominator_lcm();
            for &p in &self.ring.primes {
                let p = BigInt::from(p);
                while (&den % &p) == BigInt::from(0) {
                    den /= &p;
                }
            }
            if !den.is_one() {
                return Err(ProperError::EntryOutsideRing {
                    entry: x.clone(),
                    s: self.ring.s,
                });
            }
        }
        Ok(())
    }

    pub fn displacement(&self, g: &Mat2) -> Result<DisplacementProfile, ProperError> {
        self.check_in_ring(g)?;
        Ok(self.profile_unchecked(g))
    }

    fn profile_unchecked(&self, g: &Mat2) -> DisplacementProfile {
        let tree_displacements = self
            .trees
            .iter()
            .map(|t| {
                let v0 = t.base_vertex();
                let moved = t.act(g, &v0).expect("invertible");
                (t.prime(), t.distance(&v0, &moved))
            })
            .collect();
        DisplacementProfile {
            tree_displacements,
            hyp_displacement: displacement_hyp(g, &self.embedding),
        }
    }

    /// Elements of the word ball of radius `max_len` whose displacement is
    /// `< C` in every factor.
    pub fn word_bfs(&self, max_len: usize, c: f64) -> Vec<Mat2> {
        word_ball(self.field(), &self.generators, max_len)
            .into_iter()
            .filter(|g| self.profile_unchecked(g).within(c))
            .collect()
    }

    /// Every `g ∈ SL(2, Z[1/s])` with all displacements `< C`, found by
    /// exhausting integer matrices `A = D·g` with `D = Π p_k^e`, where `e` is
    /// the largest integer with `2e < C`, `det A = D²` and
    /// `Σ A_ij² < 2·cosh(C)·D²`.
    pub fn enumerate_bounded(&self, c: f64, budget: u64) -> Result<EnumerationResult, ProperError> {
        if !self.field().is_rationals() {
            return Err(ProperError::Unsupported(
                "exact enumeration needs every conjugate embedding; only Q is covered".into(),
            ));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(ProperError::Unsupported(format!("bound C = {c} must be positive")));
        }
        let e = ((c / 2.0).ceil() as u32).saturating_sub(1);
        let mut d: i64 = 1;
        for &p in &self.ring.primes {
            d = (p as i64)
                .checked_pow(e)
                .and_then(|x| d.checked_mul(x))
                .ok_or(ProperError::BudgetExceeded { budget })?;
        }
        let d2 = d.checked_mul(d).ok_or(ProperError::BudgetExceeded { budget })? as i128;
        let radius = 2.0 * c.cosh() * (d2 as f64);
        // the exact filter below is strict; the slack only guards float rounding
        let limit = radius * (1.0 + 1e-12);
        if !(limit < 1e15) {
            return Err(ProperError::BudgetExceeded { budget });
        }
        let bound = limit.sqrt().floor() as i64;
        let mut spent: u64 = 0;
        let mut spend = |n: u64| -> Result<(), ProperError> {
            spent += n;
            if spent > budget {
                Err(ProperError::BudgetExceeded { budget })
            } else {
                Ok(())
            }
        };
        let fits = |s: i128| (s as f64) < limit;
        let mut candidates: Vec<[i64; 4]> = Vec::new();
        for a in -bound..=bound {
            let sa = (a as i128).pow(2);
            for b in -bound..=bound {
                let sb = sa + (b as i128).pow(2);
                if !fits(sb) {
                    continue;
                }
                for cc in -bound..=bound {
                    let sc = sb + (cc as i128).pow(2);
                    if !fits(sc) {
                        continue;
                    }
                    spend(1)?;
                    let bc = b as i128 * cc as i128;
                    if a != 0 {
                        let num = d2 + bc;
                        if num % a as i128 == 0 {
                            let dd = num / a as i128;
                            if fits(sc + dd * dd) {
                                candidates.push([a, b, cc, dd as i64]);
                            }
                        }
                    } else if -bc == d2 {
                        spend(2 * bound as u64 + 1)?;
                        for dd in -bound..=bound {
                            if fits(sc + (dd as i128).pow(2)) {
                                candidates.push([a, b, cc, dd]);
                            }
                        }
                    }
                }
            }
        }
        let q = self.field();
        let dq = Rational::from_integer(BigInt::from(d));
        let elements = candidates
            .into_iter()
            .map(|[a, b, cc, dd]| {
                let ent = |x: i64| q.from_rational(Rational::from_integer(BigInt::from(x)) / &dq);
                Mat2::new(ent(a), ent(b), ent(cc), ent(dd))
            })
            .filter(|g| self.profile_unchecked(g).within(c))
            .collect();
        Ok(EnumerationResult {
            elements,
            bound: c,
            complete: true,
        })
    }

    /// Checks that every short word with displacement `< C` is among the
    /// exactly enumerated elements.
    pub fn properness_check(&self, c: f64, max_len: usize, budget: u64) -> Result<PropernessReport, ProperError> {
        let enumerated = self.enumerate_bounded(c, budget)?;
        let words = self.word_bfs(max_len, c);
        let all: HashSet<&Mat2> = enumerated.elements.iter().collect();
        let missing: Vec<Mat2> = words.iter().filter(|w| !all.contains(w)).cloned().collect();
        Ok(PropernessReport {
            bound: c,
            max_len,
            word_count: words.len(),
            enumerated_count: enumerated.elements.len(),
            contained: missing.is_empty(),
            missing,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn s() -> Mat2 {
        Mat2::from_ints(&q(), [[0, -1], [1, 0]])
    }

    fn t() -> Mat2 {
        Mat2::from_ints(&q(), [[1, 1], [0, 1]])
    }

    #[test]
    fn ring_detection() {
        let r = ring_detect(&q(), &[s(), t()]).unwrap();
        assert_eq!((r.s, r.primes.clone()), (1, vec![]));
        let g = Mat2::from_rationals(&q(), [[rat(1), ratio(1, 6)], [rat(0), rat(1)]]);
        let r = ring_detect(&q(), &[g]).unwrap();
        assert_eq!((r.s, r.primes.clone()), (6, vec![2, 3]));
        let g1 = Mat2::from_rationals(&q(), [[rat(1), ratio(1, 4)], [rat(0), rat(1)]]);
        let g2 = Mat2::from_rationals(&q(), [[rat(1), ratio(1, 2)], [rat(0), rat(1)]]);
        let r = ring_detect(&q(), &[g1, g2]).unwrap();
        assert_eq!((r.s, r.primes), (4, vec![2]));
    }

    #[test]
    fn rejects_non_unimodular_generators() {
        let g = Mat2::from_ints(&q(), [[2, 0], [0, 1]]);
        assert_eq!(
            MarkedGroup::new(&q(), vec![g]).unwrap_err(),
            ProperError::DetNotOne { index: 0 }
        );
    }

    #[test]
    fn displacement_examples() {
        let d = Mat2::torus(&q().from_int(2));
        let group = MarkedGroup::new(&q(), vec![d.clone(), t()]).unwrap();
        let id = group.displacement(&Mat2::identity(&q())).unwrap();
        assert_eq!(id.tree_displacements, vec![(2, 0)]);
        assert_eq!(id.hyp_displacement, 0.0);
        let pd = group.displacement(&d).unwrap();
        assert_eq!(pd.tree_displacements, vec![(2, 2)]);
        assert!((pd.hyp_displacement - 4f64.ln()).abs() < 1e-12);
        let pt = group.displacement(&t()).unwrap();
        assert_eq!(pt.tree_displacements, vec![(2, 0)]);
        assert!((pt.hyp_displacement - 1.5f64.acosh()).abs() < 1e-12);
        let outside = Mat2::torus(&q().from_int(3));
        assert!(matches!(group.displacement(&outside), Err(ProperError::EntryOutsideRing { .. })));
    }

    #[test]
    fn sl2z_small_ball_is_the_stabilizer() {
        let group = MarkedGroup::new(&q(), vec![s(), t()]).unwrap();
        let res = group.enumerate_bounded(0.1, DEFAULT_BUDGET).unwrap();
        let expected: HashSet<Mat2> = [
            [[1, 0], [0, 1]],
            [[-1, 0], [0, -1]],
            [[0, 1], [-1, 0]],
            [[0, -1], [1, 0]],
        ]
        .into_iter()
        .map(|m| Mat2::from_ints(&q(), m))
        .collect();
        assert!(res.complete);
        assert_eq!(res.elements.into_iter().collect::<HashSet<_>>(), expected);
    }

    #[test]
    fn strict_tree_bound_excludes_boundary() {
        let d = Mat2::torus(&q().from_int(2));
        let group = MarkedGroup::new(&q(), vec![s(), t(), d.clone()]).unwrap();
        let res = group.enumerate_bounded(2.0, DEFAULT_BUDGET).unwrap();
        assert!(!res.elements.contains(&d));
        assert!(res.elements.contains(&Mat2::identity(&q())));
    }

    #[test]
    fn word_bfs_basics() {
        let group = MarkedGroup::new(&q(), vec![s(), t()]).unwrap();
        assert_eq!(group.word_bfs(0, 1.0), vec![Mat2::identity(&q())]);
        let short: HashSet<_> = group.word_bfs(4, 0.1).into_iter().collect();
        let stab: HashSet<_> = group.enumerate_bounded(0.1, DEFAULT_BUDGET).unwrap().elements.into_iter().collect();
        assert!(short.is_subset(&stab));
        let w2: HashSet<_> = group.word_bfs(2, 2.0).into_iter().collect();
        let w3: HashSet<_> = group.word_bfs(3, 2.0).into_iter().collect();
        assert!(w2.is_subset(&w3));
    }

    #[test]
    fn properness_examples() {
        let group = MarkedGroup::new(&q(), vec![s(), t()]).unwrap();
        let rep = group.properness_check(0.1, 4, DEFAULT_BUDGET).unwrap();
        assert!(rep.contained);
        assert_eq!(rep.enumerated_count, 4);
        assert_eq!(rep.certificate(), "finite, ≤ 4");

        let trivial = MarkedGroup::new(&q(), vec![]).unwrap();
        let rep = trivial.properness_check(1.0, 3, DEFAULT_BUDGET).unwrap();
        assert!(rep.contained);
        assert_eq!(rep.word_count, 1);
    }

    #[test]
    fn budget_is_enforced() {
        let group = MarkedGroup::new(&q(), vec![s(), t()]).unwrap();
        assert_eq!(
            group.enumerate_bounded(6.0, 1000).unwrap_err(),
            ProperError::BudgetExceeded { budget: 1000 }
        );
    }

    #[test]
    fn number_field_enumeration_unsupported() {
        let k = NumberField::new(&[1, 0, 1]).unwrap();
        let group = MarkedGroup::new(&k, vec![]).unwrap();
        assert!(matches!(group.enumerate_bounded(1.0, DEFAULT_BUDGET), Err(ProperError::Unsupported(_))));
    }
}
