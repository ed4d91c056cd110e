//! The Bruhat–Tits tree of `SL(2, K)` for a discrete valuation on `K`.
//!
//! Vertices are homothety classes of rank-2 lattices over the valuation ring
//! `O`. Every class has a unique representative spanned by the columns of
//! `[[p^n, b], [0, 1]]` with `b` reduced modulo `p^n·O`, which is what
//! [`TreeVertex`] stores. Distances come from the invariant factors of the
//! change-of-basis matrix: for `g = M_u⁻¹ M_v`,
//! `d(u, v) = ν(det g) − 2·min_ij ν(g_ij)`.

use crate::arith::{ArithError, FieldElement, Mat2, NumberField};
use crate::valuation::{ExtendedValuation, ValuationValue};
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix entries lie outside the tree's field")]
    FieldMismatch,
}

impl From<ArithError> for TreeError {
    fn from(_: ArithError) -> Self {
        TreeError::Singular
    }
}

/// Canonical representative `(n, b)` of the lattice class spanned by the
/// columns of `[[p^n, b], [0, 1]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeVertex {
    pub n: i64,
    pub b: FieldElement,
}

/// A certified discrete valuation together with its uniformizer `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeContext {
    valuation: ExtendedValuation,
    uniformizer: FieldElement,
    residue_reps: Vec<FieldElement>,
}

impl TreeContext {
    pub fn new(valuation: impl Into<ExtendedValuation>) -> Self {
        let valuation = valuation.into();
        TreeContext {
            uniformizer: valuation.uniformizer(),
            residue_reps: valuation.residue_representatives(),
            valuation,
        }
    }

    pub fn valuation(&self) -> &ExtendedValuation {
        &self.valuation
    }

    pub fn field(&self) -> &NumberField {
        self.valuation.field()
    }

    pub fn prime(&self) -> u64 {
        self.valuation.prime()
    }

    /// Size `q` of the residue field; every vertex has `q + 1` neighbours.
    pub fn residue_field_size(&self) -> u64 {
        self.valuation.residue_field_size()
    }

    /// The class `v0` of the standard lattice `O²`.
    pub fn base_vertex(&self) -> TreeVertex {
        TreeVertex {
            n: 0,
            b: self.field().zero(),
        }
    }

    /// `[[p^n, b], [0, 1]]`.
    pub fn vertex_matrix(&self, v: &TreeVertex) -> Mat2 {
        let f = self.field();
        Mat2::new(self.uniformizer.powi(v.n), v.b.clone(), f.zero(), f.one())
    }

    fn nu(&self, x: &FieldElement) -> ValuationValue {
        self.valuation.nu_ext(x)
    }

    /// Reduces the lattice spanned by the columns of `m` to its canonical
    /// vertex: column operations over `O` bring `m` to upper-triangular form,
    /// a homothety makes the lower-right entry 1, and the offset is reduced
    /// modulo `p^n·O`.
    pub fn canonicalize(&self, m: &Mat2) -> Result<TreeVertex, TreeError> {
        if m.field() != self.field() {
            return Err(TreeError::FieldMismatch);
        }
        if m.det().is_zero() {
            return Err(TreeError::Singular);
        }
        let r = m.rows();
        let (mut c1, mut c2) = ([&r[0][0], &r[1][0]], [&r[0][1], &r[1][1]]);
        // pivot on the bottom entry of least valuation, preferring column 2
        if self.nu(c1[1]) < self.nu(c2[1]) {
            std::mem::swap(&mut c1, &mut c2);
        }
        let d = c2[1];
        let t = c1[1] / d;
        let top_left = c1[0] - &(&t * c2[0]);
        let x = &top_left / d;
        let n = self.nu(&x).finite().expect("nonsingular lattice");
        let b = self.valuation.reduce_mod(&(c2[0] / d), n);
        Ok(TreeVertex { n, b })
    }

    /// `ν(det g) − 2·min ν(g_ij)` for `g = M_u⁻¹ M_v`. Written out,
    /// `g = [[p^(n_v − n_u), (b_v − b_u)·p^(−n_u)], [0, 1]]`, so only the
    /// offset difference needs a valuation.
    pub fn distance(&self, u: &TreeVertex, v: &TreeVertex) -> u64 {
        let det = v.n - u.n;
        let mut min = det.min(0);
        if let ValuationValue::Finite(k) = self.nu(&(&v.b - &u.b)) {
            min = min.min(k - u.n);
        }
        u64::try_from(det - 2 * min).expect("invariant factors are ordered")
    }

    pub fn vertices_equal(&self, u: &TreeVertex, v: &TreeVertex) -> bool {
        self.distance(u, v) == 0
    }

    /// The `q + 1` classes `M_v·[[p, j], [0, 1]]` for residue representatives
    /// `j`, followed by `M_v·[[1, 0], [0, p]]`.
    pub fn neighbors(&self, v: &TreeVertex) -> Vec<TreeVertex> {
        let f = self.field();
        let mv = self.vertex_matrix(v);
        let mut out: Vec<TreeVertex> = self
            .residue_reps
            .iter()
            .map(|j| {
                let step = Mat2::new(self.uniformizer.clone(), j.clone(), f.zero(), f.one());
                self.canonicalize(&(&mv * &step)).expect("invertible")
            })
            .collect();
        let down = Mat2::new(f.one(), f.zero(), f.zero(), self.uniformizer.clone());
        out.push(self.canonicalize(&(&mv * &down)).expect("invertible"));
        out
    }

    /// All vertices within distance `r` of `v`, in breadth-first order.
    pub fn ball(&self, v: &TreeVertex, r: u32) -> Vec<TreeVertex> {
        let mut seen: HashSet<TreeVertex> = HashSet::from([v.clone()]);
        let mut order = vec![v.clone()];
        let mut queue = VecDeque::from([(v.clone(), 0u32)]);
        while let Some((u, d)) = queue.pop_front() {
            if d == r {
                continue;
            }
            for w in self.neighbors(&u) {
                if seen.insert(w.clone()) {
                    order.push(w.clone());
                    queue.push_back((w, d + 1));
                }
            }
        }
        order
    }

    /// `1 + (q+1)(q^r − 1)/(q − 1)`.
    pub fn ball_size(&self, r: u32) -> u64 {
        let q = self.residue_field_size();
        1 + (q + 1) * (q.pow(r) - 1) / (q - 1)
    }

    /// The class of `g·L_v`. Any invertible `g` acts; `SL(2)` acts by isometries.
    pub fn act(&self, g: &Mat2, v: &TreeVertex) -> Result<TreeVertex, TreeError> {
        if g.field() != self.field() {
            return Err(TreeError::FieldMismatch);
        }
        self.canonicalize(&(g * &self.vertex_matrix(v)))
    }
}
