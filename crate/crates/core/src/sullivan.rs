//! Sullivan algebras (ΛV, d): validation, per-degree cohomology by exact
//! rank computation, structural classification, the associated pure algebra,
//! and quasi-isomorphism verification for dga morphisms.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    basis_monomials, parse_polynomial, FreeAlgebra, Generator, Monomial, Polynomial,
};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;

/// Default cap on the size of a single per-degree monomial basis.
pub const DEFAULT_BASIS_LIMIT: usize = 20_000;

/// A free graded-commutative algebra with a degree +1 differential.
#[derive(Debug, Clone, PartialEq)]
pub struct SullivanAlgebra {
    algebra: Arc<FreeAlgebra>,
    diff: Vec<Polynomial>,
}

/// Per-generator validation outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum GeneratorIssue {
    /// d(g) is not homogeneous of degree deg(g) + 1.
    DegreeViolation { expected: u32, found: String },
    /// d(d(g)) != 0; carries the offending polynomial.
    SquareNotZero { witness: String },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<(String, GeneratorIssue)>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Betti numbers indexed by degree 0..=cutoff.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub dims: Vec<usize>,
}

impl BettiVector {
    pub fn get(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    pub fn cutoff(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    /// Alternating sum over all recorded degrees.
    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn top_nonzero(&self) -> Option<usize> {
        self.dims.iter().rposition(|&d| d > 0)
    }

    /// dims[i] == dims[n-i] for 0 <= i <= n.
    pub fn is_poincare_dual(&self, n: usize) -> bool {
        (0..=n).all(|i| self.get(i) == self.get(n - i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_minimal: bool,
    pub is_pure: bool,
    pub spherical_dim: usize,
}

impl SullivanAlgebra {
    /// Build from an algebra and a name -> polynomial differential map;
    /// omitted names get d = 0. This checks nothing beyond name resolution;
    /// call [`validate`](Self::validate) for the Sullivan axioms.
    pub fn new(
        algebra: Arc<FreeAlgebra>,
        differential: &BTreeMap<String, Polynomial>,
    ) -> Result<Self> {
        let mut diff = vec![Polynomial::zero(&algebra); algebra.len()];
        for (name, p) in differential {
            let idx = algebra
                .index_of(name)
                .ok_or_else(|| Error::invalid(format!("differential on unknown generator `{}`", name)))?;
            if p.algebra() != &algebra {
                return Err(Error::MismatchedAlgebras);
            }
            diff[idx] = p.clone();
        }
        Ok(SullivanAlgebra { algebra, diff })
    }

    /// Convenience constructor from `(name, degree)` pairs and differential
    /// images in the polynomial text syntax.
    pub fn from_strings(gens: &[(&str, u32)], differential: &[(&str, &str)]) -> Result<Self> {
        let algebra = FreeAlgebra::new(
            gens.iter()
                .map(|(n, d)| Generator::new(*n, *d))
                .collect(),
        )?;
        let mut map = BTreeMap::new();
        for (name, src) in differential {
            map.insert(name.to_string(), parse_polynomial(src, &algebra)?);
        }
        SullivanAlgebra::new(algebra, &map)
    }

    pub fn algebra(&self) -> &Arc<FreeAlgebra> {
        &self.algebra
    }

    pub fn generators(&self) -> &[Generator] {
        self.algebra.generators()
    }

    pub fn differential_of(&self, idx: usize) -> &Polynomial {
        &self.diff[idx]
    }

    /// Extend d to an arbitrary polynomial by the graded Leibniz rule.
    pub fn d(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.algebra);
        for (m, c) in p.terms() {
            let dm = self.d_monomial(m);
            out = out.add(&dm.scale(c)).expect("same algebra");
        }
        out
    }

    fn d_monomial(&self, m: &Monomial) -> Polynomial {
        let Some(head) = m.exps().iter().position(|&e| e > 0) else {
            return Polynomial::zero(&self.algebra);
        };
        let e = m.exp(head);
        let head_degree = e * self.algebra.degree(head);
        // split m = g^e * rest
        let mut head_exps = vec![0u32; self.algebra.len()];
        head_exps[head] = e;
        let head_mono = Monomial::new(head_exps, &self.algebra).expect("valid head");
        let rest = m.quotient(&head_mono);

        // d(g^e) = e g^{e-1} dg  (for odd g, e = 1 and this is just dg)
        let mut d_head = self.diff[head].clone();
        if e > 1 {
            let mut pow_exps = vec![0u32; self.algebra.len()];
            pow_exps[head] = e - 1;
            let pow = Monomial::new(pow_exps, &self.algebra).expect("valid power");
            d_head = d_head.mul_term(&pow, &BigRational::from_integer(e.into()));
        }
        let rest_poly = Polynomial::from_monomial(rest.clone(), BigRational::one(), &self.algebra);
        let mut out = d_head.mul(&rest_poly).expect("same algebra");

        if !rest.is_one() {
            let d_rest = self.d_monomial(&rest);
            let head_poly =
                Polynomial::from_monomial(head_mono, BigRational::one(), &self.algebra);
            let mut tail = head_poly.mul(&d_rest).expect("same algebra");
            if head_degree % 2 == 1 {
                tail = tail.neg();
            }
            out = out.add(&tail).expect("same algebra");
        }
        out
    }

    /// Check the Sullivan axioms generator by generator.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (idx, g) in self.algebra.generators().iter().enumerate() {
            let dg = &self.diff[idx];
            if !dg.is_zero() && dg.homogeneous_degree() != Some(g.degree + 1) {
                report.issues.push((
                    g.name.clone(),
                    GeneratorIssue::DegreeViolation {
                        expected: g.degree + 1,
                        found: dg
                            .homogeneous_degree()
                            .map(|d| d.to_string())
                            .unwrap_or_else(|| "inhomogeneous".to_string()),
                    },
                ));
                continue;
            }
            let dd = self.d(dg);
            if !dd.is_zero() {
                report.issues.push((
                    g.name.clone(),
                    GeneratorIssue::SquareNotZero {
                        witness: dd.to_string(),
                    },
                ));
            }
        }
        report
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.ok() {
            Ok(())
        } else {
            let (name, issue) = &report.issues[0];
            Err(Error::invalid(format!(
                "not a Sullivan algebra: generator `{}`: {:?}",
                name, issue
            )))
        }
    }

    /// The matrix of d from the degree-m basis to the degree-(m+1) basis.
    /// Column j expands d(basis_m[j]).
    pub fn differential_matrix(&self, m: u32, limit: usize) -> Result<(Vec<Monomial>, QMatrix)> {
        let src = self.basis(m, limit)?;
        let tgt = self.basis(m + 1, limit)?;
        let index: BTreeMap<&Monomial, usize> =
            tgt.iter().enumerate().map(|(i, mm)| (mm, i)).collect();
        let mut mat = QMatrix::zero(tgt.len(), src.len());
        for (j, mono) in src.iter().enumerate() {
            let image = self.d_monomial(mono);
            for (mm, c) in image.terms() {
                let i = *index.get(mm).expect("image monomial in next-degree basis");
                mat.set(i, j, c.clone());
            }
        }
        Ok((src, mat))
    }

    pub fn basis(&self, m: u32, limit: usize) -> Result<Vec<Monomial>> {
        let b = basis_monomials(&self.algebra, m);
        if b.len() > limit {
            return Err(Error::Resource(format!(
                "degree-{} monomial basis has {} elements (limit {})",
                m,
                b.len(),
                limit
            )));
        }
        Ok(b)
    }

    /// Betti numbers up to `cutoff` by exact rank computation.
    pub fn cohomology(&self, cutoff: u32) -> Result<BettiVector> {
        self.cohomology_with_limit(cutoff, DEFAULT_BASIS_LIMIT)
    }

    pub fn cohomology_with_limit(&self, cutoff: u32, limit: usize) -> Result<BettiVector> {
        self.ensure_valid()?;
        let mut dims = Vec::with_capacity(cutoff as usize + 1);
        let mut prev_rank = 0usize; // rank of d_{m-1}
        for m in 0..=cutoff {
            let (src, mat) = self.differential_matrix(m, limit)?;
            let rank = mat.rank();
            dims.push(src.len() - rank - prev_rank);
            prev_rank = rank;
        }
        Ok(BettiVector { dims })
    }

    /// Representative cocycles spanning Z^m = ker(d_m).
    pub fn cocycle_basis(&self, m: u32, limit: usize) -> Result<Vec<Polynomial>> {
        let (src, mat) = self.differential_matrix(m, limit)?;
        let mut out = Vec::new();
        for v in mat.nullspace() {
            out.push(Polynomial::from_terms(
                v.into_iter()
                    .enumerate()
                    .map(|(j, c)| (src[j].clone(), c)),
                &self.algebra,
            ));
        }
        Ok(out)
    }

    /// Coordinates of coboundaries in degree m: the columns of d_{m-1}.
    pub fn coboundary_columns(&self, m: u32, limit: usize) -> Result<(Vec<Monomial>, QMatrix)> {
        if m == 0 {
            let tgt = self.basis(0, limit)?;
            return Ok((tgt.clone(), QMatrix::zero(tgt.len(), 0)));
        }
        let src = self.basis(m - 1, limit)?;
        let tgt = self.basis(m, limit)?;
        let index: BTreeMap<&Monomial, usize> =
            tgt.iter().enumerate().map(|(i, mm)| (mm, i)).collect();
        let mut mat = QMatrix::zero(tgt.len(), src.len());
        for (j, mono) in src.iter().enumerate() {
            let image = self.d_monomial(mono);
            for (mm, c) in image.terms() {
                let i = *index.get(mm).expect("image monomial in basis");
                mat.set(i, j, c.clone());
            }
        }
        Ok((tgt, mat))
    }

    /// Structural classification: minimality, purity, spherical dimension.
    pub fn classify(&self) -> Classification {
        let is_minimal = self
            .diff
            .iter()
            .all(|dg| dg.terms().all(|(m, _)| m.word_length() >= 2));
        let even_subalgebra: Vec<bool> = (0..self.algebra.len())
            .map(|i| !self.algebra.is_odd(i))
            .collect();
        let is_pure = (0..self.algebra.len()).all(|i| {
            if self.algebra.is_odd(i) {
                self.diff[i].supported_on(&even_subalgebra)
            } else {
                self.diff[i].is_zero()
            }
        });
        let spherical_dim = self.diff.iter().filter(|dg| dg.is_zero()).count();
        Classification {
            is_minimal,
            is_pure,
            spherical_dim,
        }
    }

    /// The associated pure algebra (ΛV, d_sigma): d_sigma = 0 on even
    /// generators; on odd generators only the monomials lying entirely in
    /// the even subalgebra survive. Requires a two-stage input
    /// (d vanishes on even generators).
    pub fn pure_associate(&self) -> Result<SullivanAlgebra> {
        for i in 0..self.algebra.len() {
            if !self.algebra.is_odd(i) && !self.diff[i].is_zero() {
                return Err(Error::UnsupportedShape(format!(
                    "even generator `{}` has nonzero differential; not two-stage",
                    self.algebra.name(i)
                )));
            }
        }
        let even_subalgebra: Vec<bool> = (0..self.algebra.len())
            .map(|i| !self.algebra.is_odd(i))
            .collect();
        let diff = self
            .diff
            .iter()
            .map(|dg| {
                dg.filter_terms(|m| {
                    m.exps()
                        .iter()
                        .enumerate()
                        .all(|(i, &e)| e == 0 || even_subalgebra[i])
                })
            })
            .collect();
        Ok(SullivanAlgebra {
            algebra: self.algebra.clone(),
            diff,
        })
    }

    /// Formal dimension by the standard elliptic degree formula:
    /// sum of odd generator degrees minus sum of (even degree - 1).
    pub fn formal_dimension(&self) -> i64 {
        self.algebra
            .generators()
            .iter()
            .map(|g| {
                if g.is_odd() {
                    g.degree as i64
                } else {
                    -(g.degree as i64 - 1)
                }
            })
            .sum()
    }

    /// Default cohomology cutoff: formal dimension + 6 when that is
    /// non-negative, otherwise the caller must choose.
    pub fn default_cutoff(&self) -> Option<u32> {
        let fd = self.formal_dimension();
        (fd >= 0).then_some(fd as u32 + 6)
    }
}

/// A morphism of Sullivan algebras given by generator images.
#[derive(Debug, Clone)]
pub struct DgaMorphism {
    source: SullivanAlgebra,
    target: SullivanAlgebra,
    images: Vec<Polynomial>,
}

impl DgaMorphism {
    /// Images keyed by source generator name; omitted generators of
    /// matching name map to the target generator of the same name.
    pub fn new(
        source: SullivanAlgebra,
        target: SullivanAlgebra,
        images: &BTreeMap<String, Polynomial>,
    ) -> Result<Self> {
        let mut vec_images = Vec::with_capacity(source.algebra.len());
        for g in source.algebra.generators() {
            let img = match images.get(&g.name) {
                Some(p) => {
                    if p.algebra() != &target.algebra {
                        return Err(Error::MismatchedAlgebras);
                    }
                    p.clone()
                }
                None => {
                    let idx = target.algebra.index_of(&g.name).ok_or_else(|| {
                        Error::invalid(format!("no image given for generator `{}`", g.name))
                    })?;
                    Polynomial::generator(idx, &target.algebra)
                }
            };
            if !img.is_zero() && img.homogeneous_degree() != Some(g.degree) {
                return Err(Error::invalid(format!(
                    "image of `{}` is not homogeneous of degree {}",
                    g.name, g.degree
                )));
            }
            vec_images.push(img);
        }
        Ok(DgaMorphism {
            source,
            target,
            images: vec_images,
        })
    }

    pub fn identity(model: &SullivanAlgebra) -> Self {
        let images = (0..model.algebra.len())
            .map(|i| Polynomial::generator(i, &model.algebra))
            .collect();
        DgaMorphism {
            source: model.clone(),
            target: model.clone(),
            images,
        }
    }

    /// Apply the morphism to a polynomial over the source algebra.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.algebra() != &self.source.algebra {
            return Err(Error::MismatchedAlgebras);
        }
        let mut out = Polynomial::zero(&self.target.algebra);
        for (m, c) in p.terms() {
            let mut term = Polynomial::one(&self.target.algebra).scale(c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&self.images[i].pow(e)?)?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Exact check that the morphism commutes with the differentials.
    pub fn commutes_with_d(&self) -> Result<bool> {
        for i in 0..self.source.algebra.len() {
            let lhs = self.apply(&self.source.diff[i])?;
            let rhs = self.target.d(&self.images[i]);
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff the morphism commutes with d and induces an isomorphism on
    /// cohomology in every degree up to `cutoff`, checked by exact rank.
    pub fn verify_quasi_iso(&self, cutoff: u32) -> Result<bool> {
        self.source.ensure_valid()?;
        self.target.ensure_valid()?;
        if !self.commutes_with_d()? {
            return Ok(false);
        }
        for m in 0..=cutoff {
            let cocycles = self.source.cocycle_basis(m, DEFAULT_BASIS_LIMIT)?;
            let (_, src_bdry) = self.source.coboundary_columns(m, DEFAULT_BASIS_LIMIT)?;
            let h_src = cocycles.len() - src_bdry.rank();

            let (tgt_basis, tgt_bdry) = self.target.coboundary_columns(m, DEFAULT_BASIS_LIMIT)?;
            let index: BTreeMap<&Monomial, usize> =
                tgt_basis.iter().enumerate().map(|(i, mm)| (mm, i)).collect();
            let (_, tgt_d) = self.target.differential_matrix(m, DEFAULT_BASIS_LIMIT)?;
            let h_tgt = tgt_basis.len() - tgt_d.rank() - tgt_bdry.rank();
            if h_src != h_tgt {
                return Ok(false);
            }
            if h_src == 0 {
                continue;
            }
            // image of the induced map spans (phi(Z) + B_tgt)/B_tgt
            let mut cols = Vec::with_capacity(cocycles.len());
            for z in &cocycles {
                let img = self.apply(z)?;
                let mut v = vec![BigRational::zero(); tgt_basis.len()];
                for (mm, c) in img.terms() {
                    v[*index.get(mm).expect("degree-preserving image")] = c.clone();
                }
                cols.push(v);
            }
            let phi_z = QMatrix::from_columns(&cols);
            let combined = phi_z.hstack(&tgt_bdry).rank();
            if combined - tgt_bdry.rank() != h_tgt {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// On-disk model format: generators plus differential images in the
/// polynomial text syntax; omitted names mean d = 0. The optional `fiber`
/// list marks fiber generators of a relative model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

impl ModelFile {
    pub fn parse(src: &str) -> Result<Self> {
        Ok(serde_json::from_str(src)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable model")
    }

    pub fn build(&self) -> Result<SullivanAlgebra> {
        let algebra = FreeAlgebra::new(
            self.generators
                .iter()
                .map(|g| Generator::new(g.name.clone(), g.degree))
                .collect(),
        )?;
        let mut map = BTreeMap::new();
        for (name, src) in &self.differential {
            map.insert(name.clone(), parse_polynomial(src, &algebra)?);
        }
        SullivanAlgebra::new(algebra, &map)
    }

    pub fn from_model(model: &SullivanAlgebra, fiber: Option<Vec<String>>) -> Self {
        let generators = model
            .generators()
            .iter()
            .map(|g| GeneratorSpec {
                name: g.name.clone(),
                degree: g.degree,
            })
            .collect();
        let mut differential = BTreeMap::new();
        for (i, g) in model.generators().iter().enumerate() {
            let dg = model.differential_of(i);
            if !dg.is_zero() {
                differential.insert(g.name.clone(), dg.to_string());
            }
        }
        ModelFile {
            generators,
            differential,
            fiber,
        }
    }
}
