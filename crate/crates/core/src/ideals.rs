//! Polynomial-ideal computations on the even subalgebra: Buchberger
//! Groebner bases in the fixed degree-lexicographic order, ideal
//! membership, regular-sequence testing via zero-dimensionality, and the
//! greedy reordering that pairs relations with generators.

use std::sync::Arc;

use num_rational::BigRational;

use crate::algebra::{FreeAlgebra, Monomial, Polynomial};
use crate::error::{Error, Result};

/// A homogeneous ideal in a purely even polynomial algebra, carrying its
/// reduced Groebner basis (unique for the fixed order).
#[derive(Debug, Clone)]
pub struct IdealBasis {
    ambient: Arc<FreeAlgebra>,
    generators: Vec<Polynomial>,
    groebner: Vec<Polynomial>,
}

impl IdealBasis {
    pub fn new(ambient: &Arc<FreeAlgebra>, generators: Vec<Polynomial>) -> Result<Self> {
        if !ambient.all_even() {
            return Err(Error::invalid(
                "ideal computations require a purely even ambient algebra",
            ));
        }
        for p in &generators {
            if p.algebra() != ambient {
                return Err(Error::MismatchedAlgebras);
            }
            if !p.is_homogeneous() {
                return Err(Error::invalid("ideal generators must be homogeneous"));
            }
        }
        let groebner = reduced_groebner(ambient, &generators);
        Ok(IdealBasis {
            ambient: ambient.clone(),
            generators,
            groebner,
        })
    }

    pub fn ambient(&self) -> &Arc<FreeAlgebra> {
        &self.ambient
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner(&self) -> &[Polynomial] {
        &self.groebner
    }

    /// Normal form modulo the reduced Groebner basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.algebra() != &self.ambient {
            return Err(Error::MismatchedAlgebras);
        }
        Ok(normal_form(p, &self.groebner))
    }

    /// True iff the normal form of `p` is zero.
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if !p.is_homogeneous() {
            return Err(Error::invalid("membership test expects a homogeneous polynomial"));
        }
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Zero-dimensionality: every ambient variable has a pure power among
    /// the leading terms of the Groebner basis.
    pub fn is_zero_dimensional(&self) -> bool {
        self.pure_power_caps().is_some()
    }

    /// For each variable, the least exponent e with x_i^e a leading term,
    /// if one exists for every variable.
    fn pure_power_caps(&self) -> Option<Vec<u32>> {
        let n = self.ambient.len();
        let mut caps = vec![None::<u32>; n];
        for g in &self.groebner {
            let (lm, _) = g.leading_term()?;
            if lm.is_one() {
                // unit ideal: quotient is zero
                return Some(vec![0; n]);
            }
            let support: Vec<usize> = (0..n).filter(|&i| lm.exp(i) > 0).collect();
            if support.len() == 1 {
                let i = support[0];
                let e = lm.exp(i);
                caps[i] = Some(caps[i].map_or(e, |c| c.min(e)));
            }
        }
        caps.into_iter().collect()
    }

    /// Monomials outside the leading-term ideal. Only available for
    /// zero-dimensional ideals, where the list is finite.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let caps = self.pure_power_caps()?;
        let leads: Vec<&Monomial> = self
            .groebner
            .iter()
            .filter_map(|g| g.leading_term().map(|(m, _)| m))
            .collect();
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.ambient.len()];
        collect_standard(&self.ambient, &caps, &leads, 0, &mut exps, &mut out);
        out.sort();
        Some(out)
    }
}

fn collect_standard(
    ambient: &FreeAlgebra,
    caps: &[u32],
    leads: &[&Monomial],
    idx: usize,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if idx == caps.len() {
        let m = Monomial::new(exps.clone(), ambient).expect("even exponents");
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        return;
    }
    for e in 0..caps[idx] {
        exps[idx] = e;
        collect_standard(ambient, caps, leads, idx + 1, exps, out);
    }
    exps[idx] = 0;
}

/// Multivariate division: remainder of `p` by `basis` under the fixed order.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let algebra = p.algebra();
    let mut work = p.clone();
    let mut rem = Polynomial::zero(algebra);
    'outer: while let Some((lm, lc)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        for g in basis {
            if let Some((glm, glc)) = g.leading_term() {
                if glm.divides(&lm) {
                    let q = lm.quotient(glm);
                    let factor = &lc / glc;
                    work = work
                        .sub(&g.mul_term(&q, &factor))
                        .expect("same algebra");
                    continue 'outer;
                }
            }
        }
        let head = Polynomial::from_monomial(lm, lc, algebra);
        rem = rem.add(&head).expect("same algebra");
        work = work.sub(&head).expect("same algebra");
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let algebra = f.algebra();
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm, algebra);
    let qf = l.quotient(fm);
    let qg = l.quotient(gm);
    let a = f.mul_term(&qf, &(BigRational::from_integer(1.into()) / fc.clone()));
    let b = g.mul_term(&qg, &(BigRational::from_integer(1.into()) / gc.clone()));
    a.sub(&b).expect("same algebra")
}

fn coprime_leads(f: &Polynomial, g: &Polynomial) -> bool {
    let (fm, _) = f.leading_term().expect("nonzero");
    let (gm, _) = g.leading_term().expect("nonzero");
    (0..fm.exps().len()).all(|i| fm.exp(i) == 0 || gm.exp(i) == 0)
}

/// Buchberger's algorithm followed by interreduction; the result is the
/// unique reduced (monic, autoreduced) Groebner basis.
pub fn reduced_groebner(algebra: &Arc<FreeAlgebra>, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic())
        .collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    let lcm_of = |basis: &[Polynomial], i: usize, j: usize| -> Monomial {
        let (fm, _) = basis[i].leading_term().expect("nonzero");
        let (gm, _) = basis[j].leading_term().expect("nonzero");
        fm.lcm(gm, basis[i].algebra())
    };
    while !pairs.is_empty() {
        // normal selection: treat the pair with the smallest lcm first,
        // which keeps intermediate polynomials small on graded input
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| lcm_of(&basis, i, j))
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(best);
        if coprime_leads(&basis[i], &basis[j]) {
            continue;
        }
        // chain criterion: drop the pair if a third leading term strictly
        // divides the lcm, so both mixed pairs have strictly smaller lcms
        let l = lcm_of(&basis, i, j);
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k]
                    .leading_term()
                    .map(|(m, _)| m.divides(&l))
                    .unwrap_or(false)
                && lcm_of(&basis, i, k) != l
                && lcm_of(&basis, j, k) != l
        });
        if chained {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            let k = basis.len();
            for idx in 0..k {
                pairs.push((idx, k));
            }
            basis.push(r.monic());
        }
    }
    // minimalize: drop any element whose leading term is divisible by
    // another kept element's leading term (two equal leads keep one);
    // replacing all elements at once could cancel shared heads and lose
    // ideal members, so this must happen before tail reduction
    basis.sort_by(|a, b| {
        a.leading_term()
            .map(|(m, _)| m.clone())
            .cmp(&b.leading_term().map(|(m, _)| m.clone()))
    });
    let mut minimal: Vec<Polynomial> = Vec::with_capacity(basis.len());
    for g in basis {
        let (gm, _) = g.leading_term().expect("nonzero");
        if !minimal.iter().any(|h| {
            let (hm, _) = h.leading_term().expect("nonzero");
            hm.divides(gm)
        }) {
            minimal.push(g);
        }
    }
    // tail-reduce sequentially against the current set; leading terms are
    // pairwise indivisible so every head survives its own reduction
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let r = normal_form(&minimal[i], &others).monic();
            if r != minimal[i] {
                minimal[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let _ = algebra;
    minimal
}

/// Outcome of the complete-intersection test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub regular: bool,
    pub quotient_dim: Option<usize>,
}

/// Tests whether `ys` is a regular sequence in the polynomial algebra on
/// all ambient (even) generators, i.e. whether the quotient is
/// finite-dimensional. Requires as many relations as variables.
pub fn is_regular_sequence(
    ambient: &Arc<FreeAlgebra>,
    ys: &[Polynomial],
) -> Result<RegularityReport> {
    if ys.len() != ambient.len() {
        return Err(Error::invalid(format!(
            "complete-intersection test needs {} relations for {} variables, got {}",
            ambient.len(),
            ambient.len(),
            ys.len()
        )));
    }
    for y in ys {
        match y.homogeneous_degree() {
            Some(d) if d > 0 => {}
            _ => {
                return Err(Error::invalid(
                    "relations must be homogeneous of positive degree",
                ))
            }
        }
    }
    let ideal = IdealBasis::new(ambient, ys.to_vec())?;
    if ideal.is_zero_dimensional() {
        let dim = ideal.standard_monomials().map(|s| s.len());
        Ok(RegularityReport {
            regular: true,
            quotient_dim: dim,
        })
    } else {
        Ok(RegularityReport {
            regular: false,
            quotient_dim: None,
        })
    }
}

/// Greedy reordering: working from the last position down, assign to
/// position j a relation that does not lie in the ideal generated by the
/// first j variables. Among admissible relations the one of largest degree
/// wins, ties by list position. Returns `perm` with `perm[j]` the original
/// index of the relation paired with variable j.
///
/// The ambient generators must be sorted ascending by degree and `ys` must
/// pass [`is_regular_sequence`]; failure to find an admissible relation
/// then signals an input or implementation bug and is reported as a
/// contradiction.
pub fn reorder_xrem(ambient: &Arc<FreeAlgebra>, ys: &[Polynomial]) -> Result<Vec<usize>> {
    let l = ambient.len();
    let degs: Vec<u32> = (0..l).map(|i| ambient.degree(i)).collect();
    if degs.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("variables must be sorted ascending by degree"));
    }
    let report = is_regular_sequence(ambient, ys)?;
    if !report.regular {
        return Err(Error::invalid("relations do not form a regular sequence"));
    }

    let mut perm = vec![usize::MAX; l];
    let mut remaining: Vec<usize> = (0..ys.len()).collect();
    for j in (0..l).rev() {
        // ideal generated by the first j variables
        let vars: Vec<Polynomial> = (0..j).map(|i| Polynomial::generator(i, ambient)).collect();
        let ideal = IdealBasis::new(ambient, vars)?;
        let mut best: Option<usize> = None;
        for &cand in &remaining {
            if ideal.contains(&ys[cand])? {
                continue;
            }
            let deg = ys[cand].homogeneous_degree().unwrap_or(0);
            best = match best {
                None => Some(cand),
                Some(b) => {
                    let bdeg = ys[b].homogeneous_degree().unwrap_or(0);
                    if deg > bdeg {
                        Some(cand)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(chosen) = best else {
            return Err(Error::Contradiction(format!(
                "no admissible relation at position {}; regular sequences always admit one",
                j + 1
            )));
        };
        perm[j] = chosen;
        remaining.retain(|&i| i != chosen);
    }
    Ok(perm)
}
