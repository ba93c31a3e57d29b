//! A fixed battery of cross-checks: every stock model's invariants are
//! recomputed from scratch and compared against independently known
//! values. Exposed to the CLI as `rht verify` and reused by the
//! integration test suite.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde::Serialize;

use crate::algebra::parse_polynomial;
use crate::bounds::{closed_form_cap, optimize_chi, BoundQuery, Case};
use crate::catalog;
use crate::catalog::Hermitian;
use crate::error::Result;
use crate::fibrations::RelativeSullivan;
use crate::halperin::{derivation_space, meier_check, AlgebraPresentation, Verdict};
use crate::ideals::{is_regular_sequence, reorder_xrem};
use crate::invariants::{
    check_chi_ge_2l, four_periodic_chi, hard_lefschetz_check, profile,
    six_dimensional_admissible_b3, spherical_bound_check,
};
use crate::sullivan::{DgaMorphism, SullivanAlgebra};

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(results: &mut Vec<CheckResult>, name: &str, body: impl FnOnce() -> Result<(bool, String)>) {
    let (pass, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {}", e)),
    };
    results.push(CheckResult {
        name: name.to_string(),
        pass,
        detail,
    });
}

fn flag_chi_six(m: &SullivanAlgebra) -> Result<(bool, String)> {
    let p = profile(m)?;
    let six = BigRational::from_u32(6).unwrap();
    let ok = p.chi_homological == 6
        && p.chi_formula == Some(six)
        && p.betti.is_poincare_dual(p.formal_dim as usize)
        && check_chi_ge_2l(&p)?;
    Ok((
        ok,
        format!(
            "chi_hom={} chi_formula={:?} dim={}",
            p.chi_homological,
            p.chi_formula.map(|v| v.to_string()),
            p.formal_dim
        ),
    ))
}

/// Run the whole battery and return one result per named check.
pub fn run_all() -> Vec<CheckResult> {
    let mut r = Vec::new();

    check(&mut r, "flag-w6-chi", || flag_chi_six(&catalog::w6()));
    check(&mut r, "flag-w12-chi", || flag_chi_six(&catalog::w12()));
    check(&mut r, "flag-w24-chi", || flag_chi_six(&catalog::w24()));
    check(&mut r, "flag-eschenburg-chi", || {
        flag_chi_six(&catalog::eschenburg())
    });

    check(&mut r, "w6-betti-vector", || {
        let betti = catalog::w6().cohomology(6)?;
        Ok((
            betti.dims == vec![1, 0, 2, 0, 2, 0, 1],
            format!("{:?}", betti.dims),
        ))
    });

    check(&mut r, "w6-relations-regular-dim-6", || {
        let m = catalog::w6();
        let pure_even = crate::algebra::algebra_from(&[("a", 2), ("b", 2)]);
        let ys = vec![
            parse_polynomial("a^2 + a*b + b^2", &pure_even)?,
            parse_polynomial("b^3", &pure_even)?,
        ];
        let rep = is_regular_sequence(&pure_even, &ys)?;
        let perm = reorder_xrem(&pure_even, &ys)?;
        let ok = rep.regular && rep.quotient_dim == Some(6) && perm.len() == 2;
        let _ = m;
        Ok((ok, format!("quotient_dim={:?} perm={:?}", rep.quotient_dim, perm)))
    });

    check(&mut r, "gap-example-dimensions", || {
        let rel = catalog::gap_counterexample();
        let fiber = rel.fiber_model()?;
        let base = rel.base_model()?;
        let v = rel.check_versions()?;
        let gap = rel.wilhelm_gap()?;
        let ok = fiber.formal_dimension() == 74
            && base.formal_dimension() == 72
            && v.alternate.sum_fiber_odd == 74
            && v.alternate.sum_base_odd == 78
            && v.alternate.holds
            && gap.gap == -2;
        Ok((
            ok,
            format!(
                "fiber={} base={} sums {}<{} gap={}",
                fiber.formal_dimension(),
                base.formal_dimension(),
                v.alternate.sum_fiber_odd,
                v.alternate.sum_base_odd,
                gap.gap
            ),
        ))
    });

    check(&mut r, "weak-strong-split", || {
        let rel = catalog::weak_strong();
        let v = rel.check_versions()?;
        let t = rel.transgression()?;
        let ok = v.weak
            && !v.strong
            && t.images[2].is_zero()
            && t.images[3].to_string() == "c";
        Ok((
            ok,
            format!(
                "weak={} strong={} d0(x1)={} d0(x2)={}",
                v.weak, v.strong, t.images[2], t.images[3]
            ),
        ))
    });

    check(&mut r, "weak-strong-quasi-iso", || {
        let ok = weak_strong_quasi_iso(10)?;
        Ok((ok, "minimal model witness up to degree 10".to_string()))
    });

    check(&mut r, "crafted-derivation-witness", || {
        let h = AlgebraPresentation::from_strings(&[("a", 2), ("b", 4)], &["a^2", "a*b", "b^2"])?;
        let space = derivation_space(&h, -2)?;
        let a = crate::algebra::Polynomial::generator(0, h.ambient());
        let ok = space.dimension() == 1
            && space.basis[0].images[0].is_zero()
            && space.basis[0].images[1].monic() == a
            && matches!(meier_check(&h)?, Verdict::FailsCriterion { shift: -2, .. });
        Ok((
            ok,
            format!(
                "dim={} witness: {}",
                space.dimension(),
                space.basis.first().map_or(String::new(), |t| t.describe(&h))
            ),
        ))
    });

    check(&mut r, "catalog-f0-meier-holds", || {
        let presentations = [
            AlgebraPresentation::from_strings(&[("a", 2), ("b", 2)], &["a^2 + a*b + b^2", "b^3"])?,
            AlgebraPresentation::from_strings(&[("u", 2)], &["u^4"])?,
            AlgebraPresentation::from_strings(&[("u", 2)], &["u^7"])?,
            AlgebraPresentation::from_strings(&[("u", 4)], &["u^3"])?,
            AlgebraPresentation::from_strings(&[("u", 2), ("a", 4)], &["a^2 + u^4", "a*u"])?,
        ];
        let mut labels = Vec::new();
        let mut ok = true;
        for h in &presentations {
            let v = meier_check(h)?;
            ok &= v.holds();
            labels.push(v.label().to_string());
        }
        Ok((ok, labels.join(", ")))
    });

    check(&mut r, "t1s4-gap-sharp", || {
        let gap = catalog::t1s4().wilhelm_gap()?;
        let strong = catalog::t1s4().check_versions()?.strong;
        let ok = gap.gap == 1 && gap.lemma_bound == 1 && strong;
        Ok((ok, format!("gap={} bound={}", gap.gap, gap.lemma_bound)))
    });

    check(&mut r, "twistor-gap-and-euler", || {
        let rel = catalog::twistor();
        let gap = rel.wilhelm_gap()?;
        let chi = |m: &SullivanAlgebra| -> Result<i64> {
            Ok(m.cohomology(m.formal_dimension() as u32)?.euler())
        };
        let total = chi(rel.total())?;
        let base = chi(&rel.base_model()?)?;
        let fiber = chi(&rel.fiber_model()?)?;
        let ok = gap.gap == 2 && gap.f0_bound == Some(2) && total == base * fiber;
        Ok((
            ok,
            format!("gap={} chi: {}={}x{}", gap.gap, total, base, fiber),
        ))
    });

    check(&mut r, "sphere-optimum", || {
        let q = BoundQuery::new(60, 3, Case::Sphere)?;
        let opt = optimize_chi(&q)?;
        let ok = opt.value_rational() == BigRational::from_u32(4).unwrap();
        Ok((ok, format!("value={} witness={:?}", opt.value, opt.witness)))
    });

    check(&mut r, "closed-form-cap-k4", || {
        let cap = closed_form_cap(40, 4);
        Ok((
            cap == BigRational::from_u32(44).unwrap(),
            format!("cap={}", cap),
        ))
    });

    check(&mut r, "four-periodic-chi", || {
        let (chi0, pos0) = four_periodic_chi(10, 0)?;
        let (chi2, pos2) = four_periodic_chi(10, 2)?;
        let ok = chi0 == BigRational::from_u32(6).unwrap()
            && chi2 == BigRational::from_u32(2).unwrap()
            && pos0
            && pos2
            && four_periodic_chi(10, 1).is_err()
            && six_dimensional_admissible_b3() == vec![0, 2];
        Ok((ok, format!("chi(10,0)={} chi(10,2)={}", chi0, chi2)))
    });

    check(&mut r, "hermitian-tables", || {
        let dev = |fam, params: &[i64]| -> Result<Option<u32>> {
            Ok(catalog::hermitian_betti(fam, params)?.first_deviation)
        };
        let ok = dev(Hermitian::M1, &[2, 2])? == Some(4)
            && dev(Hermitian::M2, &[5])? == Some(6)
            && dev(Hermitian::M3, &[4])? == Some(6)
            && dev(Hermitian::M4, &[12])?.is_none()
            && dev(Hermitian::M5, &[])? == Some(8)
            && dev(Hermitian::M6, &[])? == Some(10);
        Ok((ok, "M1@4 M2@6 M3@6 M4:pass M5@8 M6@10".to_string()))
    });

    check(&mut r, "quadric-betti", || {
        let betti = catalog::so_q(4)?.cohomology(8)?;
        Ok((
            betti.dims == vec![1, 0, 1, 0, 2, 0, 1, 0, 1],
            format!("{:?}", betti.dims),
        ))
    });

    check(&mut r, "hard-lefschetz", || {
        let cp3 = catalog::cp(3)?;
        let omega = crate::algebra::Polynomial::generator(0, cp3.algebra());
        let pass_cp = hard_lefschetz_check(&cp3, &omega)?;
        let s2s4 = SullivanAlgebra::from_strings(
            &[("a", 2), ("b", 4), ("a'", 3), ("b'", 7)],
            &[("a'", "a^2"), ("b'", "b^2")],
        )?;
        let w = crate::algebra::Polynomial::generator(0, s2s4.algebra());
        let fail_s2s4 = hard_lefschetz_check(&s2s4, &w)?;
        Ok((
            pass_cp && !fail_s2s4,
            format!("cp3={} s2xs4={}", pass_cp, fail_s2s4),
        ))
    });

    check(&mut r, "spherical-bound", || {
        let mut ok = true;
        for m in [
            catalog::w6(),
            catalog::sphere(4)?,
            catalog::cp(3)?,
            catalog::so_q(4)?,
        ] {
            ok &= spherical_bound_check(&m)?;
        }
        Ok((ok, "total cohomology >= 2^spherical_dim".to_string()))
    });

    r
}

/// The weak/strong example's total model is quasi-isomorphic to the
/// minimal model on (y1, y2, x1, x') with dx1 = y1^2 + y2^2 and
/// dx' = y1^2 y2^2, witnessed by x' -> x2 y1 y2 - x2 c + x'.
pub fn weak_strong_quasi_iso(cutoff: u32) -> Result<bool> {
    let rel: RelativeSullivan = catalog::weak_strong();
    let total = rel.total().clone();
    let minimal = SullivanAlgebra::from_strings(
        &[("y1", 2), ("y2", 2), ("x1", 3), ("x'", 7)],
        &[("x1", "y1^2 + y2^2"), ("x'", "y1^2*y2^2")],
    )?;
    let image = parse_polynomial("x2*y1*y2 - x2*c + x'", total.algebra())?;
    let mut images = BTreeMap::new();
    images.insert("x'".to_string(), image);
    let phi = DgaMorphism::new(minimal, total, &images)?;
    phi.verify_quasi_iso(cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_all_pass() {
        let results = run_all();
        for c in &results {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
        assert!(results.len() >= 15);
    }
}
