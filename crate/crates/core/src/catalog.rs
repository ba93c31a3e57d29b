//! Built-in models: spheres and projective spaces, the three flag-type
//! six-generator examples, complex quadrics, the four-generator family of
//! Hard-Lefschetz models, the stock relative models, and the low-degree
//! Betti tables of the irreducible hermitian symmetric spaces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fibrations::RelativeSullivan;
use crate::sullivan::SullivanAlgebra;

/// Minimal model of the d-sphere.
pub fn sphere(d: u32) -> Result<SullivanAlgebra> {
    if d == 0 {
        return Err(Error::invalid("sphere dimension must be positive"));
    }
    if d % 2 == 1 {
        SullivanAlgebra::from_strings(&[("e", d)], &[])
    } else {
        SullivanAlgebra::from_strings(&[("e", d), ("e'", 2 * d - 1)], &[("e'", "e^2")])
    }
}

/// Minimal model of complex projective n-space.
pub fn cp(n: u32) -> Result<SullivanAlgebra> {
    if n == 0 {
        return Err(Error::invalid("cp requires n >= 1"));
    }
    let rel = format!("u^{}", n + 1);
    SullivanAlgebra::from_strings(&[("u", 2), ("u'", 2 * n + 1)], &[("u'", &rel)])
}

/// Minimal model of quaternionic projective n-space.
pub fn hp(n: u32) -> Result<SullivanAlgebra> {
    if n == 0 {
        return Err(Error::invalid("hp requires n >= 1"));
    }
    let rel = format!("u^{}", n + 1);
    SullivanAlgebra::from_strings(&[("u", 4), ("u'", 4 * n + 3)], &[("u'", &rel)])
}

fn flag_shape(deg: u32, dx: &str) -> Result<SullivanAlgebra> {
    SullivanAlgebra::from_strings(
        &[("a", deg), ("b", deg), ("x", 2 * deg - 1), ("y", 3 * deg - 1)],
        &[("x", dx), ("y", "b^3")],
    )
}

/// The complete flag manifold SU(3)/T^2, a 6-manifold.
pub fn w6() -> SullivanAlgebra {
    flag_shape(2, "a^2 + a*b + b^2").expect("fixed model")
}

/// The 12-dimensional analogue Sp(3)/Sp(1)^3.
pub fn w12() -> SullivanAlgebra {
    flag_shape(4, "a^2 + a*b + b^2").expect("fixed model")
}

/// The 24-dimensional analogue F4/Spin(8), generators in degree 8.
pub fn w24() -> SullivanAlgebra {
    flag_shape(8, "a^2 - a*b + b^2").expect("fixed model")
}

/// The Eschenburg biquotient sharing the flag shape in degree 2.
pub fn eschenburg() -> SullivanAlgebra {
    flag_shape(2, "a^2 + a*b - b^2").expect("fixed model")
}

/// The real quadric SO(n+2)/U(1)xSO(n) of real dimension 2n. For odd n it
/// is rationally cp(n); for even n the model carries two even generators.
pub fn so_q(n: u32) -> Result<SullivanAlgebra> {
    if n < 2 {
        return Err(Error::invalid("so_q requires n >= 2"));
    }
    if n % 2 == 1 {
        return cp(n);
    }
    let dx = format!("a^2 + u^{}", n);
    SullivanAlgebra::from_strings(
        &[("u", 2), ("a", n), ("x", 2 * n - 1), ("y", n + 1)],
        &[("x", &dx), ("y", "a*u")],
    )
}

/// Four-generator Hard-Lefschetz family in dimension n:
/// dx = a^2 + k1 a u^{deg_a/2} + k2 u^{deg_a},
/// dy = a u^{(n-2 deg_a+2)/2} + k3 u^{(n-deg_a+2)/2}.
pub fn cor02_family(n: u32, deg_a: u32, k1: i64, k2: i64, k3: i64) -> Result<SullivanAlgebra> {
    if n % 2 != 0 || deg_a % 2 != 0 || deg_a == 0 {
        return Err(Error::invalid("n and deg_a must be positive even integers"));
    }
    if 4 * deg_a < n + 4 {
        return Err(Error::invalid("deg_a must be at least n/4 + 1"));
    }
    if 2 * deg_a > n {
        return Err(Error::invalid("deg_a must not exceed n/2"));
    }
    let deg_x = 2 * deg_a - 1;
    let deg_y = n + 1 - deg_a;
    if deg_x == deg_y {
        return Err(Error::invalid(
            "deg x = deg y is excluded (fails Poincare duality)",
        ));
    }
    let dx = format!("a^2 + {}*a*u^{} + {}*u^{}", k1, deg_a / 2, k2, deg_a);
    let dy = format!(
        "a*u^{} + {}*u^{}",
        (n - 2 * deg_a + 2) / 2,
        k3,
        (n - deg_a + 2) / 2
    );
    SullivanAlgebra::from_strings(
        &[("u", 2), ("a", deg_a), ("x", deg_x), ("y", deg_y)],
        &[("x", &dx), ("y", &dy)],
    )
}

/// S^2 -> SU(3)/T^2 -> CP^2 as a relative model.
pub fn w6_fibration() -> RelativeSullivan {
    RelativeSullivan::from_strings(
        &[("b", 2), ("y", 5)],
        &[("a", 2), ("x", 3)],
        &[("y", "b^3"), ("x", "a^2 + a*b + b^2")],
    )
    .expect("fixed model")
}

/// The twistor fibration S^2 -> CP^3 -> S^4 (base written as hp(1)).
pub fn twistor() -> RelativeSullivan {
    RelativeSullivan::from_strings(
        &[("v", 4), ("v'", 7)],
        &[("u", 2), ("u'", 3)],
        &[("v'", "v^2"), ("u'", "u^2 - v")],
    )
    .expect("fixed model")
}

/// The unit tangent bundle S^3 -> T_1 S^4 -> S^4.
pub fn t1s4() -> RelativeSullivan {
    RelativeSullivan::from_strings(
        &[("v", 4), ("v'", 7)],
        &[("w", 3)],
        &[("v'", "v^2"), ("w", "v")],
    )
    .expect("fixed model")
}

/// The fibration with base dimension below fiber dimension: fiber
/// S^27 x S^47 over a base of formal dimension 72.
pub fn gap_counterexample() -> RelativeSullivan {
    RelativeSullivan::from_strings(
        &[("y1", 4), ("y2", 4), ("x1'", 39), ("x2'", 39)],
        &[("x1", 27), ("x2", 47)],
        &[
            ("x1'", "y1^10"),
            ("x2'", "y2^10"),
            ("x1", "y1^7 + y2^7"),
            ("x2", "y1^6*y2^6"),
        ],
    )
    .expect("fixed model")
}

/// The example separating the weak and strong degeneration conditions.
pub fn weak_strong() -> RelativeSullivan {
    RelativeSullivan::from_strings(
        &[("c", 4), ("x'", 7)],
        &[("y1", 2), ("y2", 2), ("x1", 3), ("x2", 3)],
        &[("x'", "c^2"), ("x1", "y1^2 + y2^2"), ("x2", "y1*y2 + c")],
    )
    .expect("fixed model")
}

/// Keys of all absolute models exposed through the registry.
pub const ABSOLUTE_KEYS: &[&str] = &[
    "sphere", "cp", "hp", "w6", "w12", "w24", "eschenburg", "so_q", "cor02",
];

/// Keys of all relative models exposed through the registry.
pub const RELATIVE_KEYS: &[&str] = &[
    "w6-fibration",
    "twistor",
    "t1s4",
    "gap-counterexample",
    "weak-strong",
];

/// Registry lookup of an absolute model by key and integer parameters.
pub fn absolute(key: &str, params: &[i64]) -> Result<SullivanAlgebra> {
    let arity = |want: usize| -> Result<()> {
        if params.len() != want {
            Err(Error::invalid(format!(
                "`{}` takes {} parameter(s), got {}",
                key,
                want,
                params.len()
            )))
        } else {
            Ok(())
        }
    };
    let as_u32 = |v: i64| -> Result<u32> {
        u32::try_from(v).map_err(|_| Error::invalid("parameter must be non-negative"))
    };
    match key {
        "sphere" => {
            arity(1)?;
            sphere(as_u32(params[0])?)
        }
        "cp" => {
            arity(1)?;
            cp(as_u32(params[0])?)
        }
        "hp" => {
            arity(1)?;
            hp(as_u32(params[0])?)
        }
        "w6" => {
            arity(0)?;
            Ok(w6())
        }
        "w12" => {
            arity(0)?;
            Ok(w12())
        }
        "w24" => {
            arity(0)?;
            Ok(w24())
        }
        "eschenburg" => {
            arity(0)?;
            Ok(eschenburg())
        }
        "so_q" => {
            arity(1)?;
            so_q(as_u32(params[0])?)
        }
        "cor02" => {
            arity(5)?;
            cor02_family(
                as_u32(params[0])?,
                as_u32(params[1])?,
                params[2],
                params[3],
                params[4],
            )
        }
        other => Err(Error::invalid(format!("unknown catalog key `{}`", other))),
    }
}

/// Registry lookup of a relative model by key.
pub fn relative(key: &str) -> Result<RelativeSullivan> {
    match key {
        "w6-fibration" => Ok(w6_fibration()),
        "twistor" => Ok(twistor()),
        "t1s4" => Ok(t1s4()),
        "gap-counterexample" => Ok(gap_counterexample()),
        "weak-strong" => Ok(weak_strong()),
        other => Err(Error::invalid(format!(
            "unknown relative catalog key `{}`",
            other
        ))),
    }
}

/// The six irreducible hermitian symmetric space families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hermitian {
    /// SU(p+q)/S(U(p)xU(q)), complex Grassmannian; p, q >= 2.
    M1,
    /// SO(2n)/U(n); n > 3.
    M2,
    /// Sp(n)/U(n); n >= 3.
    M3,
    /// SO(n+2)/SO(n)xSO(2), the real quadric; even n >= 2.
    M4,
    /// E6/SO(10)xSO(2).
    M5,
    /// E7/E6xSO(2).
    M6,
}

impl Hermitian {
    pub fn parse(s: &str) -> Result<Hermitian> {
        match s.to_ascii_uppercase().as_str() {
            "M1" => Ok(Hermitian::M1),
            "M2" => Ok(Hermitian::M2),
            "M3" => Ok(Hermitian::M3),
            "M4" => Ok(Hermitian::M4),
            "M5" => Ok(Hermitian::M5),
            "M6" => Ok(Hermitian::M6),
            other => Err(Error::invalid(format!(
                "unknown hermitian family `{}`",
                other
            ))),
        }
    }
}

/// Rational homotopy degrees of the relevant exceptional groups; the
/// invariant degrees used in the Betti series are these plus one.
pub const E6_HOMOTOPY_DEGREES: [u32; 6] = [3, 9, 11, 15, 17, 23];
pub const E7_HOMOTOPY_DEGREES: [u32; 7] = [3, 11, 15, 19, 23, 27, 35];

/// Low-degree Betti table of a hermitian symmetric space plus the result
/// of testing the pattern b_2 = b_4 = ... = b_10 = 1.
#[derive(Debug, Clone, Serialize)]
pub struct HermitianReport {
    pub family: Hermitian,
    /// (degree, Betti number) for even degrees 2..=10.
    pub betti: Vec<(u32, usize)>,
    /// First even degree <= 10 where the pattern fails, if any.
    pub first_deviation: Option<u32>,
}

const HERMITIAN_CUTOFF: u32 = 10;

/// Multiply the truncated series by (1 - t^d) (sign -1) or (1 + t^d) (+1).
fn mul_binomial(series: &mut [i64], d: u32, sign: i64) {
    let d = d as usize;
    for i in (0..series.len()).rev() {
        if i >= d {
            series[i] += sign * series[i - d];
        }
    }
}

/// Divide the truncated series by (1 - t^d).
fn div_one_minus(series: &mut [i64], d: u32) {
    let d = d as usize;
    for i in d..series.len() {
        series[i] += series[i - d];
    }
}

fn quotient_series(num: &[u32], den: &[u32], cutoff: u32) -> Vec<i64> {
    let mut s = vec![0i64; cutoff as usize + 1];
    s[0] = 1;
    for &d in num {
        mul_binomial(&mut s, d, -1);
    }
    for &d in den {
        div_one_minus(&mut s, d);
    }
    s
}

/// Tabulate b_2..b_10 of the chosen family from its Poincare series.
pub fn hermitian_betti(family: Hermitian, params: &[i64]) -> Result<HermitianReport> {
    let cutoff = HERMITIAN_CUTOFF;
    let series: Vec<i64> = match family {
        Hermitian::M1 => {
            let [p, q] = two_params(params)?;
            if p < 2 || q < 2 {
                return Err(Error::invalid("M1 requires p, q >= 2"));
            }
            let num: Vec<u32> = (1..=p).map(|i| 2 * (q + i)).collect();
            let den: Vec<u32> = (1..=p).map(|i| 2 * i).collect();
            quotient_series(&num, &den, cutoff)
        }
        Hermitian::M2 => {
            let n = one_param(params)?;
            if n <= 3 {
                return Err(Error::invalid("M2 requires n > 3"));
            }
            let mut s = vec![0i64; cutoff as usize + 1];
            s[0] = 1;
            for i in 1..n {
                mul_binomial(&mut s, 2 * i, 1);
            }
            s
        }
        Hermitian::M3 => {
            let n = one_param(params)?;
            if n < 3 {
                return Err(Error::invalid("M3 requires n >= 3"));
            }
            let mut s = vec![0i64; cutoff as usize + 1];
            s[0] = 1;
            for i in 1..=n {
                mul_binomial(&mut s, 2 * i, 1);
            }
            s
        }
        Hermitian::M4 => {
            let n = one_param(params)?;
            if n < 2 || n % 2 != 0 {
                return Err(Error::invalid("M4 requires even n >= 2"));
            }
            // quadric of real dimension 2n: b_{2i} = 1 up to 2n with the
            // middle degree n doubled; read off from the model
            let model = so_q(n)?;
            let betti = model.cohomology(cutoff.min(2 * n))?;
            let mut s = vec![0i64; cutoff as usize + 1];
            for (i, slot) in s.iter_mut().enumerate() {
                *slot = betti.get(i) as i64;
            }
            s
        }
        Hermitian::M5 => {
            if !params.is_empty() {
                return Err(Error::invalid("M5 takes no parameters"));
            }
            let num: Vec<u32> = E6_HOMOTOPY_DEGREES.iter().map(|d| d + 1).collect();
            let den = [2u32, 4, 8, 10, 12, 16]; // SO(10) x SO(2) invariants
            quotient_series(&num, &den, cutoff)
        }
        Hermitian::M6 => {
            if !params.is_empty() {
                return Err(Error::invalid("M6 takes no parameters"));
            }
            let num: Vec<u32> = E7_HOMOTOPY_DEGREES.iter().map(|d| d + 1).collect();
            let den = [2u32, 4, 10, 12, 16, 18, 24]; // E6 x SO(2) invariants
            quotient_series(&num, &den, cutoff)
        }
    };
    let betti: Vec<(u32, usize)> = (1..=cutoff / 2)
        .map(|i| (2 * i, series[(2 * i) as usize] as usize))
        .collect();
    let first_deviation = betti.iter().find(|&&(_, b)| b != 1).map(|&(d, _)| d);
    Ok(HermitianReport {
        family,
        betti,
        first_deviation,
    })
}

fn one_param(params: &[i64]) -> Result<u32> {
    match params {
        [n] => u32::try_from(*n).map_err(|_| Error::invalid("parameter must be non-negative")),
        _ => Err(Error::invalid("expected exactly one parameter")),
    }
}

fn two_params(params: &[i64]) -> Result<[u32; 2]> {
    match params {
        [p, q] => Ok([
            u32::try_from(*p).map_err(|_| Error::invalid("parameter must be non-negative"))?,
            u32::try_from(*q).map_err(|_| Error::invalid("parameter must be non-negative"))?,
        ]),
        _ => Err(Error::invalid("expected exactly two parameters")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::profile;
    use num_rational::BigRational;
    use num_traits::FromPrimitive;

    #[test]
    fn flag_models_have_chi_six() {
        for m in [w6(), w12(), w24(), eschenburg()] {
            m.ensure_valid().unwrap();
            let p = profile(&m).unwrap();
            assert_eq!(p.chi_homological, 6);
            assert_eq!(p.chi_formula, Some(BigRational::from_u32(6).unwrap()));
            assert!(p.betti.is_poincare_dual(p.formal_dim as usize));
        }
    }

    #[test]
    fn w6_betti_vector() {
        let betti = w6().cohomology(6).unwrap();
        assert_eq!(betti.dims, vec![1, 0, 2, 0, 2, 0, 1]);
    }

    #[test]
    fn spheres_and_projective_spaces() {
        assert_eq!(sphere(3).unwrap().formal_dimension(), 3);
        assert_eq!(sphere(4).unwrap().formal_dimension(), 4);
        assert_eq!(cp(3).unwrap().formal_dimension(), 6);
        assert_eq!(hp(2).unwrap().formal_dimension(), 8);
        let s4 = sphere(4).unwrap();
        assert_eq!(s4.cohomology(4).unwrap().dims, vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn quadric_model_dimensions() {
        let q = so_q(4).unwrap();
        q.ensure_valid().unwrap();
        assert_eq!(q.formal_dimension(), 8);
        let betti = q.cohomology(8).unwrap();
        // middle Betti number is 2, total dimension n + 2
        assert_eq!(betti.dims, vec![1, 0, 1, 0, 2, 0, 1, 0, 1]);
        assert_eq!(betti.total(), 6);
        // odd n falls back to complex projective space
        let q5 = so_q(5).unwrap();
        assert_eq!(q5.formal_dimension(), 10);
        assert_eq!(q5.cohomology(10).unwrap().total(), 6);
    }

    #[test]
    fn quadric_pattern_up_to_ten_needs_n_twelve() {
        let q12 = so_q(12).unwrap();
        let betti = q12.cohomology(10).unwrap();
        assert!((1..=5).all(|i| betti.get(2 * i) == 1));
        let q10 = so_q(10).unwrap();
        let betti = q10.cohomology(10).unwrap();
        assert_eq!(betti.get(10), 2);
    }

    #[test]
    fn cor02_formal_dimension_is_n() {
        for (n, deg_a) in [(20u32, 6u32), (20, 8), (20, 10), (36, 12), (40, 16)] {
            let m = cor02_family(n, deg_a, 1, 1, 1).unwrap();
            m.ensure_valid().unwrap();
            assert_eq!(m.formal_dimension(), n as i64, "n={} deg_a={}", n, deg_a);
        }
        // so_q(n) is the k1 = 0, k2 = 1, k3 = 0 member with deg_a = n/2
        let m = cor02_family(8, 4, 0, 1, 0).unwrap();
        let q = so_q(4).unwrap();
        assert_eq!(
            m.cohomology(8).unwrap().dims,
            q.cohomology(8).unwrap().dims
        );
    }

    #[test]
    fn cor02_rejects_bad_parameters() {
        assert!(cor02_family(20, 4, 1, 1, 1).is_err()); // deg_a < n/4 + 1
        assert!(cor02_family(20, 12, 1, 1, 1).is_err()); // deg_a > n/2
        assert!(cor02_family(21, 6, 1, 1, 1).is_err()); // odd n
        assert!(cor02_family(22, 8, 1, 1, 1).is_err()); // deg x = deg y = 15
    }

    #[test]
    fn registry_round_trips() {
        for key in ABSOLUTE_KEYS {
            let params: Vec<i64> = match *key {
                "sphere" => vec![4],
                "cp" | "hp" => vec![2],
                "so_q" => vec![4],
                "cor02" => vec![20, 6, 1, 1, 1],
                _ => vec![],
            };
            let m = absolute(key, &params).unwrap();
            m.ensure_valid().unwrap();
        }
        for key in RELATIVE_KEYS {
            relative(key).unwrap();
        }
        assert!(absolute("nonsense", &[]).is_err());
        assert!(relative("nonsense").is_err());
    }

    #[test]
    fn catalog_models_minimal_and_pure() {
        for m in [
            w6(),
            w12(),
            w24(),
            eschenburg(),
            so_q(4).unwrap(),
            cp(3).unwrap(),
            hp(2).unwrap(),
            sphere(6).unwrap(),
            cor02_family(20, 6, 1, 1, 1).unwrap(),
        ] {
            let c = m.classify();
            assert!(c.is_minimal);
            assert!(c.is_pure);
        }
    }

    #[test]
    fn w6_fibration_total_matches_w6() {
        let r = w6_fibration();
        let total = r.total().cohomology(6).unwrap();
        assert_eq!(total.dims, vec![1, 0, 2, 0, 2, 0, 1]);
        let fiber = r.fiber_model().unwrap();
        assert_eq!(fiber.formal_dimension(), 2); // fiber is the 2-sphere
    }

    #[test]
    fn hermitian_tables_match() {
        let m1 = hermitian_betti(Hermitian::M1, &[2, 2]).unwrap();
        assert_eq!(m1.betti[0], (2, 1));
        assert_eq!(m1.betti[1], (4, 2));
        assert_eq!(m1.first_deviation, Some(4));

        for (fam, params) in [(Hermitian::M2, vec![5i64]), (Hermitian::M3, vec![4])] {
            let r = hermitian_betti(fam, &params).unwrap();
            assert_eq!(r.betti[1], (4, 1));
            assert_eq!(r.betti[2], (6, 2));
            assert_eq!(r.first_deviation, Some(6));
        }

        let m4 = hermitian_betti(Hermitian::M4, &[12]).unwrap();
        assert_eq!(m4.first_deviation, None);

        let m5 = hermitian_betti(Hermitian::M5, &[]).unwrap();
        assert_eq!(
            m5.betti,
            vec![(2, 1), (4, 1), (6, 1), (8, 2), (10, 2)]
        );
        assert_eq!(m5.first_deviation, Some(8));

        let m6 = hermitian_betti(Hermitian::M6, &[]).unwrap();
        assert_eq!(m6.betti[3], (8, 1));
        assert_eq!(m6.betti[4], (10, 2));
        assert_eq!(m6.first_deviation, Some(10));
    }

    #[test]
    fn hermitian_param_validation() {
        assert!(hermitian_betti(Hermitian::M1, &[1, 5]).is_err());
        assert!(hermitian_betti(Hermitian::M2, &[3]).is_err());
        assert!(hermitian_betti(Hermitian::M4, &[5]).is_err());
        assert!(hermitian_betti(Hermitian::M5, &[1]).is_err());
    }

    #[test]
    fn cp_and_quadric_pass_pattern_filter() {
        // degrees 2..10: complex projective spaces of complex dimension
        // >= 5 and large quadrics show b_{2i} = 1 throughout
        let big_cp = cp(6).unwrap().cohomology(10).unwrap();
        assert!((1..=5).all(|i| big_cp.get(2 * i) == 1));
        for fam in [Hermitian::M1, Hermitian::M5, Hermitian::M6] {
            let params: &[i64] = if fam == Hermitian::M1 { &[3, 3] } else { &[] };
            assert!(hermitian_betti(fam, params)
                .unwrap()
                .first_deviation
                .is_some());
        }
    }
}
