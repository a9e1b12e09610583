//! Polynomials in fermionic creation and annihilation operators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Real;

/// A single a†ₚ (`dagger = true`) or aₚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ladder {
    pub mode: usize,
    pub dagger: bool,
}

impl Ladder {
    pub const fn create(mode: usize) -> Self {
        Self { mode, dagger: true }
    }

    pub const fn annihilate(mode: usize) -> Self {
        Self { mode, dagger: false }
    }

    pub const fn adjoint(self) -> Self {
        Self {
            mode: self.mode,
            dagger: !self.dagger,
        }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.mode, if self.dagger { "^" } else { "" })
    }
}

/// Sum of coefficient × operator-product terms. The empty product is the
/// identity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FermionOperator<T> {
    terms: BTreeMap<Vec<Ladder>, T>,
}

impl<T: Real> FermionOperator<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        let mut op = Self::zero();
        op.add_term(Vec::new(), c);
        op
    }

    pub fn term(ops: Vec<Ladder>, c: T) -> Self {
        let mut op = Self::zero();
        op.add_term(ops, c);
        op
    }

    /// Adds `c` to the coefficient of `ops`, creating it if absent.
    pub fn add_term(&mut self, ops: Vec<Ladder>, c: T) {
        *self.terms.entry(ops).or_insert_with(T::zero) += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Ladder], T)> + '_ {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, ops: &[Ladder]) -> T {
        self.terms.get(ops).copied().unwrap_or_else(T::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the identity.
    pub fn constant_term(&self) -> T {
        self.coefficient(&[])
    }

    /// One more than the highest mode index used.
    pub fn n_modes(&self) -> usize {
        self.terms
            .keys()
            .flatten()
            .map(|l| l.mode + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(mut self, c: T) -> Self {
        for v in self.terms.values_mut() {
            *v *= c;
        }
        self
    }

    /// Drops terms with |coefficient| ≤ `threshold`.
    pub fn prune(mut self, threshold: T) -> Self {
        self.terms.retain(|_, v| v.abs() > threshold);
        self
    }

    /// Hermitian conjugate (coefficients are real).
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (ops, &c) in &self.terms {
            out.add_term(ops.iter().rev().map(|l| l.adjoint()).collect(), c);
        }
        out
    }

    /// Rewrites every product with creators left of annihilators, each
    /// group in descending mode order, using the canonical anticommutation
    /// relations. Zero coefficients are pruned.
    pub fn normal_ordered(&self) -> Self {
        let mut out = Self::zero();
        for (ops, &c) in &self.terms {
            normal_order_term(ops.clone(), c, &mut out);
        }
        out.prune(T::zero())
    }

    pub fn is_normal_ordered(&self) -> bool {
        self.terms.keys().all(|ops| ops.windows(2).all(|w| in_order(w[0], w[1])))
    }

    /// True when `self − self†` normal-orders to zero within `tol`.
    pub fn is_hermitian(&self, tol: T) -> bool {
        (self.clone() - self.adjoint())
            .normal_ordered()
            .terms
            .values()
            .all(|v| v.abs() <= tol)
    }

    /// Σₚ a†ₚaₚ over `n_modes` modes.
    pub fn number(n_modes: usize) -> Self {
        let mut op = Self::zero();
        for p in 0..n_modes {
            op.add_term(vec![Ladder::create(p), Ladder::annihilate(p)], T::one());
        }
        op
    }

    /// S_z = ½ Σₚ (n_{2p} − n_{2p+1}) for interleaved α/β spin orbitals.
    pub fn spin_z(n_modes: usize) -> Self {
        let half = T::lit(0.5);
        let mut op = Self::zero();
        for p in 0..n_modes {
            let sign = if p % 2 == 0 { half } else { -half };
            op.add_term(vec![Ladder::create(p), Ladder::annihilate(p)], sign);
        }
        op
    }
}

fn in_order(a: Ladder, b: Ladder) -> bool {
    match (a.dagger, b.dagger) {
        (true, false) => true,
        (false, true) => false,
        _ => a.mode > b.mode,
    }
}

fn normal_order_term<T: Real>(ops: Vec<Ladder>, c: T, out: &mut FermionOperator<T>) {
    let mut stack = vec![(ops, c)];
    'outer: while let Some((mut ops, mut c)) = stack.pop() {
        // insertion sort; each transposition costs a sign, and a†/a
        // transpositions on the same mode spawn a contracted term
        for i in 1..ops.len() {
            let mut j = i;
            while j > 0 && !in_order(ops[j - 1], ops[j]) {
                let (a, b) = (ops[j - 1], ops[j]);
                if a == b {
                    continue 'outer;
                }
                if a.mode == b.mode {
                    // a b† with equal modes: δ − b† a
                    let mut contracted = ops.clone();
                    contracted.drain(j - 1..=j);
                    stack.push((contracted, c));
                }
                ops.swap(j - 1, j);
                c = -c;
                j -= 1;
            }
        }
        out.add_term(ops, c);
    }
}

impl<T: Real> Add for FermionOperator<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (ops, c) in rhs.terms {
            self.add_term(ops, c);
        }
        self
    }
}

impl<T: Real> Neg for FermionOperator<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Real> Sub for FermionOperator<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Mul for &FermionOperator<T> {
    type Output = FermionOperator<T>;
    fn mul(self, rhs: Self) -> FermionOperator<T> {
        let mut out = FermionOperator::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                let mut ops = a.clone();
                ops.extend_from_slice(b);
                out.add_term(ops, ca * cb);
            }
        }
        out
    }
}

impl<T: Real> fmt::Display for FermionOperator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (ops, c) in &self.terms {
            write!(f, "{c:+.12e} [")?;
            for (k, l) in ops.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{l}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = FermionOperator<f64>;
    const C: fn(usize) -> Ladder = Ladder::create;
    const A: fn(usize) -> Ladder = Ladder::annihilate;

    #[test]
    fn anticommutator_of_same_mode() {
        // a a† + a† a = 1
        let op = Op::term(vec![A(0), C(0)], 1.0) + Op::term(vec![C(0), A(0)], 1.0);
        let n = op.normal_ordered();
        assert_eq!(n, Op::constant(1.0));
    }

    #[test]
    fn pauli_exclusion() {
        assert!(Op::term(vec![C(2), C(2)], 1.0).normal_ordered().is_empty());
        assert!(Op::term(vec![A(1), A(1)], 3.0).normal_ordered().is_empty());
    }

    #[test]
    fn reordering_signs() {
        let n = Op::term(vec![C(0), C(1)], 1.0).normal_ordered();
        assert_eq!(n.coefficient(&[C(1), C(0)]), -1.0);
        let n = Op::term(vec![A(2), C(1), A(0)], 1.0).normal_ordered();
        assert_eq!(n.len(), 1);
        assert_eq!(n.coefficient(&[C(1), A(2), A(0)]), -1.0);
        assert!(n.is_normal_ordered());
    }

    #[test]
    fn number_operator_products() {
        // n² = n for a single mode
        let n = Op::number(1);
        let sq = (&n * &n).normal_ordered();
        assert_eq!(sq, n);
    }

    #[test]
    fn hermiticity() {
        let h = Op::term(vec![C(0), A(1)], 0.3) + Op::term(vec![C(1), A(0)], 0.3);
        assert!(h.is_hermitian(1e-14));
        let g = Op::term(vec![C(0), A(1)], 0.3) - Op::term(vec![C(1), A(0)], 0.3);
        assert!(!g.is_hermitian(1e-14));
        assert!((g.clone() + g.adjoint()).normal_ordered().is_empty());
    }

    #[test]
    fn display_lists_terms() {
        let s = Op::term(vec![C(1), A(0)], 0.5).to_string();
        assert!(s.contains("[1^ 0]"));
    }
}
