//! Free graded-commutative algebra over the rationals.
//!
//! Generators of odd degree are exterior (square to zero, anticommute),
//! generators of even degree are polynomial. All coefficients are exact
//! rationals of unbounded size; the Koszul sign of reordering generators
//! into declaration order is absorbed into the coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

mod parse;
pub use parse::parse_polynomial;

/// A named generator with a positive degree. Odd degree means exterior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// An ordered list of generators. Declaration order is total and fixed;
/// generators are referenced by index internally.
#[derive(Debug, PartialEq, Eq)]
pub struct FreeAlgebra {
    generators: Vec<Generator>,
}

impl FreeAlgebra {
    pub fn new(generators: Vec<Generator>) -> Result<Arc<Self>> {
        let mut seen = std::collections::HashSet::new();
        for g in &generators {
            if g.degree == 0 {
                return Err(Error::invalid(format!(
                    "generator `{}` has degree 0; degrees must be positive",
                    g.name
                )));
            }
            if !seen.insert(g.name.clone()) {
                return Err(Error::invalid(format!("duplicate generator name `{}`", g.name)));
            }
        }
        Ok(Arc::new(FreeAlgebra { generators }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degree(&self, idx: usize) -> u32 {
        self.generators[idx].degree
    }

    pub fn is_odd(&self, idx: usize) -> bool {
        self.generators[idx].is_odd()
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.generators[idx].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// True if every generator has even degree.
    pub fn all_even(&self) -> bool {
        self.generators.iter().all(|g| !g.is_odd())
    }
}

fn same_algebra(a: &Arc<FreeAlgebra>, b: &Arc<FreeAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A monomial: exponent vector in declaration order with cached total degree.
///
/// Ordering is degree-then-lexicographic (earlier generators more
/// significant), the fixed monomial order used for canonical forms and
/// Groebner bases.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>, algebra: &FreeAlgebra) -> Result<Self> {
        if exps.len() != algebra.len() {
            return Err(Error::invalid("exponent vector length mismatch"));
        }
        let mut degree = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            if e > 1 && algebra.is_odd(i) {
                return Err(Error::invalid(format!(
                    "odd generator `{}` with exponent {}",
                    algebra.name(i),
                    e
                )));
            }
            degree += e * algebra.degree(i);
        }
        Ok(Monomial { degree, exps })
    }

    pub fn one(algebra: &FreeAlgebra) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; algebra.len()],
        }
    }

    pub fn generator(idx: usize, algebra: &FreeAlgebra) -> Self {
        let mut exps = vec![0; algebra.len()];
        exps[idx] = 1;
        Monomial {
            degree: algebra.degree(idx),
            exps,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Product with Koszul sign; `None` when an odd generator collides.
    pub fn mul(&self, other: &Monomial, algebra: &FreeAlgebra) -> Option<(Monomial, i8)> {
        let mut exps = Vec::with_capacity(self.exps.len());
        let mut sign = 1i8;
        // odd generators of `other` must pass the odd generators of `self`
        // that sit at a later declaration index
        let mut swaps = 0u32;
        let mut odd_tail = 0u32; // odd gens of self with index > current
        for i in 0..self.exps.len() {
            if algebra.is_odd(i) && self.exps[i] == 1 {
                odd_tail += 1;
            }
        }
        for i in 0..self.exps.len() {
            let (a, b) = (self.exps[i], other.exps[i]);
            if algebra.is_odd(i) {
                if a == 1 {
                    odd_tail -= 1;
                }
                if a + b > 1 {
                    return None;
                }
                if b == 1 {
                    swaps += odd_tail;
                }
            }
            exps.push(a + b);
        }
        if swaps % 2 == 1 {
            sign = -1;
        }
        Some((
            Monomial {
                degree: self.degree + other.degree,
                exps,
            },
            sign,
        ))
    }

    /// True if `self` divides `other` componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Componentwise quotient; caller must ensure divisibility.
    pub fn quotient(&self, divisor: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&divisor.exps)
            .map(|(a, b)| a - b)
            .collect();
        Monomial {
            degree: self.degree - divisor.degree,
            exps,
        }
    }

    pub fn lcm(&self, other: &Monomial, algebra: &FreeAlgebra) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps
            .iter()
            .enumerate()
            .map(|(i, e)| e * algebra.degree(i))
            .sum();
        Monomial { degree, exps }
    }

    pub fn display<'a>(&'a self, algebra: &'a FreeAlgebra) -> MonomialDisplay<'a> {
        MonomialDisplay {
            monomial: self,
            algebra,
        }
    }
}

pub struct MonomialDisplay<'a> {
    monomial: &'a Monomial,
    algebra: &'a FreeAlgebra,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomial.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.monomial.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.algebra.name(i))?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// Exact-rational element of the free graded-commutative algebra.
///
/// Terms are kept in a sorted map with no zero coefficients, so equality of
/// canonical forms is structural equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    algebra: Arc<FreeAlgebra>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(algebra: &Arc<FreeAlgebra>) -> Self {
        Polynomial {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &Arc<FreeAlgebra>) -> Self {
        Self::from_monomial(Monomial::one(algebra), BigRational::one(), algebra)
    }

    pub fn generator(idx: usize, algebra: &Arc<FreeAlgebra>) -> Self {
        Self::from_monomial(Monomial::generator(idx, algebra), BigRational::one(), algebra)
    }

    pub fn from_monomial(m: Monomial, coeff: BigRational, algebra: &Arc<FreeAlgebra>) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Polynomial {
            algebra: algebra.clone(),
            terms,
        }
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
        algebra: &Arc<FreeAlgebra>,
    ) -> Self {
        let mut p = Polynomial::zero(algebra);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under the fixed monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Common degree of all terms, if the polynomial is homogeneous.
    /// Zero is homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut iter = self.terms.keys();
        let first = iter.next()?.degree();
        for m in iter {
            if m.degree() != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::MismatchedAlgebras);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        Polynomial {
            algebra: self.algebra.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.algebra);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.clone(), k * c))
            .collect();
        Polynomial {
            algebra: self.algebra.clone(),
            terms,
        }
    }

    /// Graded-commutative product. Swapping adjacent odd generators
    /// contributes a factor of -1; squares of odd generators vanish.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::MismatchedAlgebras);
        }
        let mut out = Polynomial::zero(&self.algebra);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, sign)) = ma.mul(mb, &self.algebra) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }

    /// Multiply by a single scaled monomial.
    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        let mut out = Polynomial::zero(&self.algebra);
        if c.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            if let Some((prod, sign)) = ma.mul(m, &self.algebra) {
                let mut coeff = ca * c;
                if sign < 0 {
                    coeff = -coeff;
                }
                out.add_term(prod, coeff);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut out = Polynomial::one(&self.algebra);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Keep only terms accepted by the predicate.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Polynomial {
            algebra: self.algebra.clone(),
            terms,
        }
    }

    /// True if every monomial involves only the given generator indices.
    pub fn supported_on(&self, allowed: &[bool]) -> bool {
        self.terms.keys().all(|m| {
            m.exps()
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || allowed[i])
        })
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = BigRational::one() / c.clone();
                self.scale(&inv)
            }
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // print leading term first
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || m.is_one();
            if show_coeff {
                if abs.denom() == &BigInt::one() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}/{}", abs.numer(), abs.denom())?;
                }
                if !m.is_one() {
                    write!(f, "*")?;
                }
            }
            if !m.is_one() {
                write!(f, "{}", m.display(&self.algebra))?;
            }
        }
        Ok(())
    }
}

/// Complete, duplicate-free list of degree-`m` monomials in descending
/// monomial order.
pub fn basis_monomials(algebra: &FreeAlgebra, m: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; algebra.len()];
    enumerate(algebra, 0, m, &mut exps, &mut out);
    out.sort();
    out.reverse();
    out
}

fn enumerate(
    algebra: &FreeAlgebra,
    idx: usize,
    remaining: u32,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(Monomial {
            degree: exps
                .iter()
                .enumerate()
                .map(|(i, e)| e * algebra.degree(i))
                .sum(),
            exps: exps.clone(),
        });
        return;
    }
    if idx == algebra.len() {
        return;
    }
    let d = algebra.degree(idx);
    let max_e = if algebra.is_odd(idx) {
        1.min(remaining / d)
    } else {
        remaining / d
    };
    for e in 0..=max_e {
        exps[idx] = e;
        enumerate(algebra, idx + 1, remaining - e * d, exps, out);
    }
    exps[idx] = 0;
}

/// Convenience: build an algebra from `(name, degree)` pairs.
pub fn algebra_from(pairs: &[(&str, u32)]) -> Arc<FreeAlgebra> {
    FreeAlgebra::new(
        pairs
            .iter()
            .map(|(n, d)| Generator::new(*n, *d))
            .collect(),
    )
    .expect("valid generator list")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    #[test]
    fn odd_square_vanishes() {
        let alg = algebra_from(&[("e", 3)]);
        let e = Polynomial::generator(0, &alg);
        assert!(e.mul(&e).unwrap().is_zero());
    }

    #[test]
    fn koszul_sign_on_odd_swap() {
        let alg = algebra_from(&[("e", 3), ("f", 5)]);
        let e = Polynomial::generator(0, &alg);
        let f = Polynomial::generator(1, &alg);
        let ef = e.mul(&f).unwrap();
        let fe = f.mul(&e).unwrap();
        assert_eq!(fe, ef.neg());
        assert!(!ef.is_zero());
    }

    #[test]
    fn commutative_square() {
        let alg = algebra_from(&[("a", 2), ("b", 2)]);
        let a = Polynomial::generator(0, &alg);
        let b = Polynomial::generator(1, &alg);
        let s = a.add(&b).unwrap();
        let sq = s.mul(&s).unwrap();
        let expect = parse_polynomial("a^2 + 2*a*b + b^2", &alg).unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn graded_commutativity() {
        // p q = (-1)^{|p||q|} q p on homogeneous elements
        let alg = algebra_from(&[("a", 2), ("e", 3), ("f", 5)]);
        let p = parse_polynomial("a*e - 2*f", &alg).unwrap(); // degree 5
        let q = parse_polynomial("3*e", &alg).unwrap(); // degree 3
        let pq = p.mul(&q).unwrap();
        let qp = q.mul(&p).unwrap();
        // |p| |q| = 15, odd
        assert_eq!(pq, qp.neg());
    }

    #[test]
    fn basis_enumeration() {
        let alg = algebra_from(&[("u", 2)]);
        let b = basis_monomials(&alg, 6);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].exp(0), 3);

        let alg2 = algebra_from(&[("a", 2), ("b", 2)]);
        let b2 = basis_monomials(&alg2, 4);
        assert_eq!(b2.len(), 3); // a^2, ab, b^2

        let alg3 = algebra_from(&[("e", 3)]);
        assert!(basis_monomials(&alg3, 6).is_empty());
    }

    #[test]
    fn canonicalization_idempotent() {
        let alg = algebra_from(&[("a", 2), ("b", 2)]);
        let p = parse_polynomial("a^2 + a*b - 3/2*b^2", &alg).unwrap();
        let renorm = Polynomial::from_terms(
            p.terms().map(|(m, c)| (m.clone(), c.clone())),
            &alg,
        );
        assert_eq!(p, renorm);
    }

    #[test]
    fn mismatched_generator_sets_error() {
        let a = algebra_from(&[("a", 2)]);
        let b = algebra_from(&[("b", 2)]);
        let pa = Polynomial::generator(0, &a);
        let pb = Polynomial::generator(0, &b);
        assert!(matches!(pa.mul(&pb), Err(Error::MismatchedAlgebras)));
    }

    #[test]
    fn display_roundtrip() {
        let alg = algebra_from(&[("a", 2), ("b", 2), ("e", 3)]);
        let p = parse_polynomial("-a^2 + 1/2*a*b*e - 7", &alg).unwrap();
        let q = parse_polynomial(&p.to_string(), &alg).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.coefficient(&Monomial::one(&alg)), rat(-7));
    }
}
