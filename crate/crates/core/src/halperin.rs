//! Meier's derivation criterion: negative-degree derivation spaces of a
//! finite-dimensional evenly graded commutative algebra, presented as a
//! polynomial algebra modulo a homogeneous ideal, and the resulting
//! verdict for total non-cohomologous-to-zero behavior.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};

use crate::algebra::{FreeAlgebra, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::ideals::{is_regular_sequence, IdealBasis};
use crate::linalg::QMatrix;

/// A finite-dimensional evenly graded algebra Q[x_1..x_l] / (relations),
/// carrying its Groebner basis and a degree-graded monomial basis.
#[derive(Debug, Clone)]
pub struct AlgebraPresentation {
    ideal: IdealBasis,
    by_degree: BTreeMap<u32, Vec<Monomial>>,
    total_dim: usize,
}

impl AlgebraPresentation {
    pub fn new(ambient: &Arc<FreeAlgebra>, relations: Vec<Polynomial>) -> Result<Self> {
        let ideal = IdealBasis::new(ambient, relations)?;
        let standard = ideal.standard_monomials().ok_or_else(|| {
            Error::invalid("quotient is not finite-dimensional")
        })?;
        let total_dim = standard.len();
        let mut by_degree: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
        for m in standard {
            by_degree.entry(m.degree()).or_default().push(m);
        }
        Ok(AlgebraPresentation {
            ideal,
            by_degree,
            total_dim,
        })
    }

    pub fn from_strings(gens: &[(&str, u32)], relations: &[&str]) -> Result<Self> {
        let ambient = FreeAlgebra::new(
            gens.iter()
                .map(|(n, d)| crate::algebra::Generator::new(*n, *d))
                .collect(),
        )?;
        let rels = relations
            .iter()
            .map(|s| crate::algebra::parse_polynomial(s, &ambient))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&ambient, rels)
    }

    pub fn ambient(&self) -> &Arc<FreeAlgebra> {
        self.ideal.ambient()
    }

    pub fn ideal(&self) -> &IdealBasis {
        &self.ideal
    }

    /// Total dimension of the quotient as a rational vector space.
    pub fn dim(&self) -> usize {
        self.total_dim
    }

    /// Monomial basis of the quotient in a single degree.
    pub fn basis_in_degree(&self, degree: u32) -> &[Monomial] {
        self.by_degree.get(&degree).map_or(&[], |v| v.as_slice())
    }

    /// Largest degree with a nonzero component.
    pub fn top_degree(&self) -> u32 {
        self.by_degree.keys().next_back().copied().unwrap_or(0)
    }

    pub fn max_generator_degree(&self) -> u32 {
        (0..self.ambient().len())
            .map(|i| self.ambient().degree(i))
            .max()
            .unwrap_or(0)
    }

    /// True when the relations form a regular sequence, one per variable.
    pub fn is_complete_intersection(&self) -> bool {
        let ambient = self.ambient();
        let rels = self.ideal.generators();
        rels.len() == ambient.len()
            && is_regular_sequence(ambient, rels).map_or(false, |r| r.regular)
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.ideal.normal_form(p)
    }
}

/// A degree-lowering derivation, recorded by its images on the generators.
/// Images are in normal form modulo the relations.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub shift: i64,
    pub images: Vec<Polynomial>,
}

impl Derivation {
    /// Leibniz extension to an arbitrary quotient element, reduced to
    /// normal form.
    pub fn apply(&self, pres: &AlgebraPresentation, p: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(pres.ambient());
        for (i, image) in self.images.iter().enumerate() {
            if image.is_zero() {
                continue;
            }
            out = out.add(&partial(p, i)?.mul(image)?)?;
        }
        pres.normal_form(&out)
    }

    /// Human-readable image list, e.g. `a -> 0, b -> a`.
    pub fn describe(&self, pres: &AlgebraPresentation) -> String {
        let ambient = pres.ambient();
        self.images
            .iter()
            .enumerate()
            .map(|(i, p)| format!("{} -> {}", ambient.name(i), p))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Partial derivative with respect to the i-th (even) variable.
pub fn partial(p: &Polynomial, i: usize) -> Result<Polynomial> {
    let algebra = p.algebra();
    let mut out = Polynomial::zero(algebra);
    for (m, c) in p.terms() {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        let mut exps = m.exps().to_vec();
        exps[i] -= 1;
        let lower = Monomial::new(exps, algebra)?;
        let coeff = c * BigRational::from_u32(e).unwrap();
        out = out.add(&Polynomial::from_monomial(lower, coeff, algebra))?;
    }
    Ok(out)
}

/// Solution space of derivations with the given negative shift.
#[derive(Debug, Clone)]
pub struct DerivationSpace {
    pub shift: i64,
    pub basis: Vec<Derivation>,
}

impl DerivationSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Solve for all derivations of degree `shift`: unknowns are the images
/// of the generators in the quotient, constraints force each relation to
/// map to zero.
pub fn derivation_space(pres: &AlgebraPresentation, shift: i64) -> Result<DerivationSpace> {
    if shift >= 0 {
        return Err(Error::invalid("shift must be negative"));
    }
    let ambient = pres.ambient();
    let l = ambient.len();

    // unknown layout: one column per (generator, basis monomial in the
    // target degree); generators whose target degree is negative get no
    // columns and image zero
    let mut cols: Vec<(usize, Monomial)> = Vec::new();
    for i in 0..l {
        let target = ambient.degree(i) as i64 + shift;
        if target < 0 {
            continue;
        }
        for m in pres.basis_in_degree(target as u32) {
            cols.push((i, m.clone()));
        }
    }
    if cols.is_empty() {
        return Ok(DerivationSpace {
            shift,
            basis: Vec::new(),
        });
    }

    // constraint rows indexed by (relation, standard monomial of its image)
    let mut row_index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut entries: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); cols.len()];
    for (ci, (i, m)) in cols.iter().enumerate() {
        let mono = Polynomial::from_monomial(m.clone(), BigRational::from_u32(1).unwrap(), ambient);
        for (j, rel) in pres.ideal().generators().iter().enumerate() {
            let contrib = pres.normal_form(&partial(rel, *i)?.mul(&mono)?)?;
            for (mm, c) in contrib.terms() {
                let next = row_index.len();
                let r = *row_index.entry((j, mm.clone())).or_insert(next);
                entries[ci].push((r, c.clone()));
            }
        }
    }
    let rows = row_index.len();
    let mut mat = QMatrix::zero(rows.max(1), cols.len());
    for (ci, col) in entries.iter().enumerate() {
        for (r, c) in col {
            mat.set(*r, ci, c.clone());
        }
    }
    let null = mat.nullspace();
    let mut basis = Vec::with_capacity(null.len());
    for v in null {
        let mut images = vec![Polynomial::zero(ambient); l];
        for (ci, (i, m)) in cols.iter().enumerate() {
            if v[ci].is_zero() {
                continue;
            }
            images[*i] = images[*i].add(&Polynomial::from_monomial(
                m.clone(),
                v[ci].clone(),
                ambient,
            ))?;
        }
        basis.push(Derivation { shift, images });
    }
    Ok(DerivationSpace { shift, basis })
}

/// Outcome of the derivation criterion.
#[derive(Debug, Clone)]
pub enum Verdict {
    /// At most 3 generators and the relations are a regular sequence: the
    /// criterion holds without computing anything.
    HoldsByGeneratorCount { generators: usize },
    /// Every shift in -1 ..= -(max generator degree) has trivial space.
    HoldsByDerivations { shifts_checked: u32 },
    /// Some shift carries a nonzero derivation; the witness is a basis
    /// element of that space.
    FailsCriterion {
        shift: i64,
        dimension: usize,
        witness: Derivation,
    },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::FailsCriterion { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::HoldsByGeneratorCount { .. } => "HOLDS_BY_GENERATOR_COUNT",
            Verdict::HoldsByDerivations { .. } => "HOLDS_BY_DERIVATIONS",
            Verdict::FailsCriterion { .. } => "FAILS_CRITERION",
        }
    }
}

/// Render the verdict for a finite evenly graded algebra. Shifts below
/// -(max generator degree) force every image into negative degrees, so the
/// scan is finite.
pub fn meier_check(pres: &AlgebraPresentation) -> Result<Verdict> {
    let gens = pres.ambient().len();
    if gens <= 3 && pres.is_complete_intersection() {
        return Ok(Verdict::HoldsByGeneratorCount { generators: gens });
    }
    let bound = pres.max_generator_degree();
    for s in 1..=bound {
        let space = derivation_space(pres, -(s as i64))?;
        if space.dimension() > 0 {
            return Ok(Verdict::FailsCriterion {
                shift: space.shift,
                dimension: space.dimension(),
                witness: space.basis.into_iter().next().expect("nonzero dimension"),
            });
        }
    }
    Ok(Verdict::HoldsByDerivations {
        shifts_checked: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    fn crafted() -> AlgebraPresentation {
        AlgebraPresentation::from_strings(&[("a", 2), ("b", 4)], &["a^2", "a*b", "b^2"]).unwrap()
    }

    fn w6_cohomology() -> AlgebraPresentation {
        AlgebraPresentation::from_strings(&[("a", 2), ("b", 2)], &["a^2 + a*b + b^2", "b^3"])
            .unwrap()
    }

    #[test]
    fn crafted_shift_minus_two_witness() {
        let h = crafted();
        assert_eq!(h.dim(), 3); // 1, a, b
        let space = derivation_space(&h, -2).unwrap();
        assert_eq!(space.dimension(), 1);
        let theta = &space.basis[0];
        assert!(theta.images[0].is_zero()); // a -> 0
        let a = Polynomial::generator(0, h.ambient());
        assert_eq!(theta.images[1].monic(), a); // b -> a up to scale
    }

    #[test]
    fn crafted_fails_criterion() {
        let h = crafted();
        match meier_check(&h).unwrap() {
            Verdict::FailsCriterion {
                shift, dimension, ..
            } => {
                assert_eq!(shift, -2);
                assert_eq!(dimension, 1);
            }
            other => panic!("expected failure, got {:?}", other),
        }
    }

    #[test]
    fn cp_spaces_trivial() {
        for n in 1..=4u32 {
            let rel = format!("u^{}", n + 1);
            let h = AlgebraPresentation::from_strings(&[("u", 2)], &[&rel]).unwrap();
            for s in 1..=2i64 {
                assert_eq!(derivation_space(&h, -s).unwrap().dimension(), 0);
            }
            assert!(matches!(
                meier_check(&h).unwrap(),
                Verdict::HoldsByGeneratorCount { generators: 1 }
            ));
        }
    }

    #[test]
    fn w6_all_shifts_trivial() {
        let h = w6_cohomology();
        for s in 1..=4i64 {
            assert_eq!(derivation_space(&h, -s).unwrap().dimension(), 0, "shift -{}", s);
        }
        assert!(matches!(
            meier_check(&h).unwrap(),
            Verdict::HoldsByGeneratorCount { generators: 2 }
        ));
    }

    #[test]
    fn four_generator_torus_like_holds_by_derivations() {
        let h = AlgebraPresentation::from_strings(
            &[("a", 2), ("b", 2), ("c", 2), ("d", 2)],
            &["a^2", "b^2", "c^2", "d^2"],
        )
        .unwrap();
        match meier_check(&h).unwrap() {
            Verdict::HoldsByDerivations { shifts_checked } => assert_eq!(shifts_checked, 2),
            other => panic!("expected derivation scan, got {:?}", other),
        }
    }

    #[test]
    fn dimension_invariant_under_declaration_order() {
        let h1 = crafted();
        let h2 =
            AlgebraPresentation::from_strings(&[("b", 4), ("a", 2)], &["a^2", "a*b", "b^2"])
                .unwrap();
        for s in 1..=4i64 {
            assert_eq!(
                derivation_space(&h1, -s).unwrap().dimension(),
                derivation_space(&h2, -s).unwrap().dimension(),
                "shift -{}",
                s
            );
        }
    }

    #[test]
    fn witness_satisfies_leibniz() {
        let h = crafted();
        let theta = derivation_space(&h, -2).unwrap().basis.remove(0);
        let ambient = h.ambient();
        let p = parse_polynomial("a + 3*b", ambient).unwrap();
        let q = parse_polynomial("2*a + b", ambient).unwrap();
        let lhs = theta.apply(&h, &p.mul(&q).unwrap()).unwrap();
        let rhs = theta
            .apply(&h, &p)
            .unwrap()
            .mul(&q)
            .unwrap()
            .add(&p.mul(&theta.apply(&h, &q).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lhs, h.normal_form(&rhs).unwrap());
    }

    #[test]
    fn infinite_dimensional_rejected() {
        let err = AlgebraPresentation::from_strings(&[("a", 2), ("b", 2)], &["a^2"]);
        assert!(err.is_err());
    }

    #[test]
    fn positive_shift_rejected() {
        let h = crafted();
        assert!(derivation_space(&h, 0).is_err());
        assert!(derivation_space(&h, 2).is_err());
    }
}
