//! Relative Sullivan models of fibrations: fiber extraction, the linear
//! transgression, the weak/strong/alternate degeneration checkers, and
//! the dimension gap between base and fiber.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{parse_polynomial, FreeAlgebra, Generator, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::ideals::is_regular_sequence;
use crate::linalg::QMatrix;
use crate::sullivan::{ModelFile, SullivanAlgebra, DEFAULT_BASIS_LIMIT};

/// A relative model (Lambda V (x) Lambda W, d): base generators V listed
/// first, fiber generators W after. The differential may twist fiber
/// generators into the base; base generators map into Lambda V alone.
#[derive(Debug, Clone)]
pub struct RelativeSullivan {
    total: SullivanAlgebra,
    base_count: usize,
}

impl RelativeSullivan {
    pub fn new(total: SullivanAlgebra, base_count: usize) -> Result<Self> {
        if base_count > total.generators().len() {
            return Err(Error::invalid("base generator count exceeds total"));
        }
        total.ensure_valid()?;
        let n = total.generators().len();
        let base_mask: Vec<bool> = (0..n).map(|i| i < base_count).collect();
        for i in 0..base_count {
            if !total.differential_of(i).supported_on(&base_mask) {
                return Err(Error::invalid(format!(
                    "base generator `{}` has a differential leaving the base subalgebra",
                    total.algebra().name(i)
                )));
            }
        }
        Ok(RelativeSullivan { total, base_count })
    }

    pub fn from_strings(
        base: &[(&str, u32)],
        fiber: &[(&str, u32)],
        differential: &[(&str, &str)],
    ) -> Result<Self> {
        let all: Vec<(&str, u32)> = base.iter().chain(fiber.iter()).copied().collect();
        let total = SullivanAlgebra::from_strings(&all, differential)?;
        RelativeSullivan::new(total, base.len())
    }

    /// Build from the model file format; the `fiber` list names W and the
    /// remaining generators form V. Fiber generators are moved after the
    /// base ones, each group keeping its declared order.
    pub fn from_model_file(file: &ModelFile) -> Result<Self> {
        let fiber_names = file
            .fiber
            .as_ref()
            .ok_or_else(|| Error::invalid("relative model requires a `fiber` list"))?;
        for name in fiber_names {
            if !file.generators.iter().any(|g| &g.name == name) {
                return Err(Error::invalid(format!(
                    "fiber name `{}` is not a declared generator",
                    name
                )));
            }
        }
        let (base, fiber): (Vec<_>, Vec<_>) = file
            .generators
            .iter()
            .partition(|g| !fiber_names.contains(&g.name));
        let ordered: Vec<Generator> = base
            .iter()
            .chain(fiber.iter())
            .map(|g| Generator::new(g.name.clone(), g.degree))
            .collect();
        let algebra = FreeAlgebra::new(ordered)?;
        let mut map = BTreeMap::new();
        for (name, src) in &file.differential {
            map.insert(name.clone(), parse_polynomial(src, &algebra)?);
        }
        let total = SullivanAlgebra::new(algebra, &map)?;
        RelativeSullivan::new(total, base.len())
    }

    pub fn total(&self) -> &SullivanAlgebra {
        &self.total
    }

    pub fn base_count(&self) -> usize {
        self.base_count
    }

    pub fn fiber_count(&self) -> usize {
        self.total.generators().len() - self.base_count
    }

    /// The base restriction (Lambda V, d|V).
    pub fn base_model(&self) -> Result<SullivanAlgebra> {
        let gens: Vec<Generator> = self.total.generators()[..self.base_count].to_vec();
        let algebra = FreeAlgebra::new(gens)?;
        let mut map = BTreeMap::new();
        for i in 0..self.base_count {
            let dg = self.total.differential_of(i);
            if !dg.is_zero() {
                let name = self.total.algebra().name(i).to_string();
                map.insert(name, restrict(dg, &algebra, 0)?);
            }
        }
        SullivanAlgebra::new(algebra, &map)
    }

    /// The fiber (Lambda W, d-bar): every monomial touching a base
    /// generator is dropped from the fiber differentials.
    pub fn fiber_model(&self) -> Result<SullivanAlgebra> {
        let gens: Vec<Generator> = self.total.generators()[self.base_count..].to_vec();
        let algebra = FreeAlgebra::new(gens)?;
        let mut map = BTreeMap::new();
        for i in self.base_count..self.total.generators().len() {
            let dg = self.total.differential_of(i);
            let reduced = dg.filter_terms(|m| {
                (0..self.base_count).all(|j| m.exp(j) == 0)
            });
            if !reduced.is_zero() {
                let name = self.total.algebra().name(i).to_string();
                map.insert(name, restrict(&reduced, &algebra, self.base_count)?);
            }
        }
        let fiber = SullivanAlgebra::new(algebra, &map)?;
        fiber.ensure_valid().map_err(|_| {
            Error::invalid("malformed relative model: fiber differential does not square to zero")
        })?;
        Ok(fiber)
    }

    /// Linear transgression: the base-generator-linear part of d on each
    /// fiber generator, as polynomials in the base algebra.
    pub fn transgression(&self) -> Result<TransgressionReport> {
        let base_algebra = self.base_model()?.algebra().clone();
        let total_alg = self.total.algebra();
        let mut images = Vec::with_capacity(self.fiber_count());
        for i in self.base_count..total_alg.len() {
            let dg = self.total.differential_of(i);
            let linear = dg.filter_terms(|m| {
                m.word_length() == 1 && (0..self.base_count).any(|j| m.exp(j) == 1)
            });
            images.push(restrict(&linear, &base_algebra, 0)?);
        }

        // injectivity on the odd-degree fiber generators
        let odd: Vec<usize> = (0..self.fiber_count())
            .filter(|&i| total_alg.is_odd(self.base_count + i))
            .collect();
        let cols: Vec<Vec<BigRational>> = odd
            .iter()
            .map(|&i| {
                (0..self.base_count)
                    .map(|j| {
                        let m = Monomial::generator(j, &base_algebra);
                        images[i].coefficient(&m)
                    })
                    .collect()
            })
            .collect();
        let (injective_on_odd, kernel_odd_basis) = if odd.is_empty() {
            (true, Vec::new())
        } else {
            let mat = QMatrix::from_columns(&cols);
            let kernel = mat.nullspace();
            let names: Vec<String> = kernel
                .iter()
                .map(|v| describe_combination(v, &odd, total_alg, self.base_count))
                .collect();
            (kernel.is_empty(), names)
        };
        Ok(TransgressionReport {
            base_algebra,
            images,
            injective_on_odd,
            kernel_odd_basis,
        })
    }

    /// The three degeneration conditions.
    pub fn check_versions(&self) -> Result<VersionsReport> {
        let weak = !self.total.classify().is_minimal;
        let trans = self.transgression()?;
        let strong = trans.injective_on_odd;
        let alternate = self.alternate_report()?;
        Ok(VersionsReport {
            weak,
            strong,
            alternate,
        })
    }

    fn alternate_report(&self) -> Result<AlternateReport> {
        let total_alg = self.total.algebra();
        let sum_fiber_odd: u64 = (self.base_count..total_alg.len())
            .filter(|&i| total_alg.is_odd(i))
            .map(|i| total_alg.degree(i) as u64)
            .sum();
        let sum_base_odd: u64 = (0..self.base_count)
            .filter(|&i| total_alg.is_odd(i))
            .map(|i| total_alg.degree(i) as u64)
            .sum();
        let degree_inequality = sum_fiber_odd < sum_base_odd;

        // projections of the odd fiber differentials onto the even base
        let base = self.base_model()?;
        let even_base: Vec<Generator> = base
            .generators()
            .iter()
            .filter(|g| !g.is_odd())
            .cloned()
            .collect();
        let even_count = even_base.len();
        let even_algebra = FreeAlgebra::new(even_base)?;
        let mut projections = Vec::new();
        for i in self.base_count..total_alg.len() {
            if !total_alg.is_odd(i) {
                continue;
            }
            let dg = self.total.differential_of(i);
            let on_even_base = dg.filter_terms(|m| {
                (0..total_alg.len()).all(|j| {
                    m.exp(j) == 0 || (j < self.base_count && !total_alg.is_odd(j))
                })
            });
            projections.push(restrict(&on_even_base, &even_algebra, 0)?);
        }
        let projections_regular = projections.len() == even_count
            && !projections.iter().any(|p| p.is_zero())
            && is_regular_sequence(&even_algebra, &projections)
                .map_or(false, |r| r.regular);
        let intersection_trivial = self.span_meets_exact_trivially(&projections, &base)?;
        let holds = degree_inequality && projections_regular && intersection_trivial;
        Ok(AlternateReport {
            sum_fiber_odd,
            sum_base_odd,
            degree_inequality,
            projections_regular,
            intersection_trivial,
            holds,
        })
    }

    /// No nonzero element of the span of the projections is d-exact in the
    /// base. Projections are homogeneous, so the check splits by degree.
    fn span_meets_exact_trivially(
        &self,
        projections: &[Polynomial],
        base: &SullivanAlgebra,
    ) -> Result<bool> {
        let base_alg = base.algebra();
        let mut by_degree: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
        for p in projections {
            if let Some(d) = p.homogeneous_degree() {
                // reparse into the full base algebra for coboundary comparison
                let lifted = parse_polynomial(&p.to_string(), base_alg)?;
                by_degree.entry(d).or_default().push(lifted);
            }
        }
        for (deg, polys) in by_degree {
            let (basis, bdry) = base.coboundary_columns(deg, DEFAULT_BASIS_LIMIT)?;
            let index: BTreeMap<&Monomial, usize> =
                basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let cols: Vec<Vec<BigRational>> = polys
                .iter()
                .map(|p| {
                    let mut v = vec![BigRational::zero(); basis.len()];
                    for (m, c) in p.terms() {
                        v[index[m]] = c.clone();
                    }
                    v
                })
                .collect();
            let span = QMatrix::from_columns(&cols);
            let joint = span.hstack(&bdry);
            if joint.rank() != span.rank() + bdry.rank() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Formal dimension gap between base and fiber, with the predicted
    /// lower bounds.
    pub fn wilhelm_gap(&self) -> Result<WilhelmGap> {
        let base = self.base_model()?;
        let fiber = self.fiber_model()?;
        let gap = base.formal_dimension() - fiber.formal_dimension();
        let total_alg = self.total.algebra();
        let odd_fiber = (self.base_count..total_alg.len())
            .filter(|&i| total_alg.is_odd(i))
            .count();
        // F0 fiber: positive Euler characteristic
        let fd = fiber.formal_dimension();
        let f0 = fd >= 0 && {
            let betti = fiber.cohomology(fd as u32)?;
            betti.euler() > 0
        };
        Ok(WilhelmGap {
            gap,
            lemma_bound: odd_fiber,
            f0_bound: f0.then_some(2 * odd_fiber),
        })
    }
}

/// Rewrite a polynomial supported on a contiguous generator block into the
/// algebra on that block. `offset` is the index of the block's first
/// generator in the source algebra.
fn restrict(p: &Polynomial, target: &Arc<FreeAlgebra>, offset: usize) -> Result<Polynomial> {
    let mut out = Polynomial::zero(target);
    for (m, c) in p.terms() {
        let mut exps = vec![0u32; target.len()];
        for (j, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if j < offset || j >= offset + target.len() {
                return Err(Error::invalid(
                    "polynomial not supported on the expected generator block",
                ));
            }
            exps[j - offset] = e;
        }
        let mono = Monomial::new(exps, target)?;
        out = out.add(&Polynomial::from_monomial(mono, c.clone(), target))?;
    }
    Ok(out)
}

fn describe_combination(
    v: &[BigRational],
    odd: &[usize],
    total_alg: &FreeAlgebra,
    base_count: usize,
) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(odd)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, &i)| {
            let name = total_alg.name(base_count + i);
            if *c == BigRational::from_integer(1.into()) {
                name.to_string()
            } else {
                format!("{}*{}", c, name)
            }
        })
        .collect();
    parts.join(" + ")
}

#[derive(Debug, Clone)]
pub struct TransgressionReport {
    pub base_algebra: Arc<FreeAlgebra>,
    /// Per fiber generator, in declaration order: the linear part of its
    /// differential, as a base polynomial.
    pub images: Vec<Polynomial>,
    pub injective_on_odd: bool,
    /// Kernel of the transgression on odd fiber generators, as readable
    /// linear combinations.
    pub kernel_odd_basis: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternateReport {
    pub sum_fiber_odd: u64,
    pub sum_base_odd: u64,
    pub degree_inequality: bool,
    pub projections_regular: bool,
    pub intersection_trivial: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VersionsReport {
    pub weak: bool,
    pub strong: bool,
    pub alternate: AlternateReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WilhelmGap {
    pub gap: i64,
    /// Number of odd fiber generators: the predicted minimum gap.
    pub lemma_bound: usize,
    /// Doubled bound when the fiber has positive Euler characteristic.
    pub f0_bound: Option<usize>,
}
