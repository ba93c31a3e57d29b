//! Case classification and exact optimization of the Euler characteristic
//! of a pure model under degree-sum constraints: maximize prod deg y_i /
//! deg x_i over even degree tuples with sum deg y_i - deg x_i = n, pinned
//! low-degree pairs per case, and generic pairs on the doubling locus
//! deg y_i = 2 deg x_i with deg x_i above a threshold.
//!
//! Generic pairs are restricted to the doubling locus because off it the
//! degree tuple cannot arise from a regular sequence: the raw constraint
//! set admits tuples like (22, 52) twice for n = 60 whose ratio product
//! 2704/484 is not even an integer, while any regular-sequence quotient
//! dimension is.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sullivan::BettiVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Case {
    Sphere,
    Cp,
    Hp,
    S2xHp,
}

impl Case {
    pub fn label(&self) -> &'static str {
        match self {
            Case::Sphere => "SPHERE",
            Case::Cp => "CP",
            Case::Hp => "HP",
            Case::S2xHp => "S2xHP",
        }
    }

    pub fn parse(s: &str) -> Result<Case> {
        match s.to_ascii_uppercase().as_str() {
            "SPHERE" => Ok(Case::Sphere),
            "CP" => Ok(Case::Cp),
            "HP" => Ok(Case::Hp),
            "S2XHP" => Ok(Case::S2xHp),
            other => Err(Error::invalid(format!("unknown case `{}`", other))),
        }
    }
}

/// Which strict lower bound the generic degrees must exceed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Threshold {
    /// deg x_i > n/k (the optimization display's constraint; default).
    OverNk,
    /// deg x_i > c with c = floor((n+4)/k).
    OverC,
}

#[derive(Debug, Clone, Copy)]
pub struct BoundQuery {
    pub n: u32,
    pub k: u32,
    pub case: Case,
    pub threshold: Threshold,
    /// S2xHP only: let the second pair's relation degree range over any
    /// even value above c instead of the derived multiple-of-4
    /// parameterization with its upper bound.
    pub raw_s2xhp: bool,
}

impl BoundQuery {
    pub fn new(n: u32, k: u32, case: Case) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::invalid("n must be a positive even integer"));
        }
        if k < 2 {
            return Err(Error::invalid("k must be at least 2"));
        }
        if n > 400 || k > 8 {
            return Err(Error::Resource(format!(
                "search domain capped at n <= 400, k <= 8 (got n={}, k={})",
                n, k
            )));
        }
        Ok(BoundQuery {
            n,
            k,
            case,
            threshold: Threshold::OverNk,
            raw_s2xhp: false,
        })
    }

    pub fn c(&self) -> u32 {
        (self.n + 4) / self.k
    }

    /// Smallest admissible even generic degree: even and strictly above
    /// the threshold.
    fn min_generic_x(&self) -> u32 {
        let floor = match self.threshold {
            Threshold::OverNk => self.n / self.k,
            Threshold::OverC => self.c(),
        };
        next_even_above(floor)
    }
}

/// Smallest even integer strictly greater than `v`.
fn next_even_above(v: u32) -> u32 {
    let w = v + 1;
    if w % 2 == 0 {
        w
    } else {
        w + 1
    }
}

/// Match the low-degree Betti pattern against the four 4-periodic model
/// cases, checked on degrees 1..=c.
pub fn classify_case(low_betti: &BettiVector, c: u32) -> Result<Case> {
    let upto = (c as usize).min(low_betti.cutoff());
    let matches = |expected: fn(usize) -> usize| {
        (1..=upto).all(|i| low_betti.get(i) == expected(i))
    };
    if matches(|_| 0) {
        return Ok(Case::Sphere);
    }
    if matches(|i| usize::from(i % 2 == 0)) {
        return Ok(Case::Cp);
    }
    if matches(|i| usize::from(i % 4 == 0)) {
        return Ok(Case::Hp);
    }
    if matches(|i| usize::from(matches!(i % 4, 0 | 2 | 3))) {
        return Ok(Case::S2xHp);
    }
    Err(Error::invalid(
        "low-degree Betti numbers match none of the four 4-periodic patterns",
    ))
}

/// Case-specific bound on the number of even generators.
pub fn generator_bound(q: &BoundQuery) -> u32 {
    match q.case {
        Case::Sphere => q.k - 1,
        Case::Cp | Case::Hp => (q.n + 4) / (q.c() + 1),
        Case::S2xHp => q.k,
    }
}

/// The closed-form cap 2^{k-2} (n/k + 1).
pub fn closed_form_cap(n: u32, k: u32) -> BigRational {
    let pow = BigRational::from_integer(BigInt::from(2).pow(k - 2));
    let frac = BigRational::new(BigInt::from(n), BigInt::from(k))
        + BigRational::one();
    pow * frac
}

#[derive(Debug, Clone, Serialize)]
pub struct Optimum {
    /// Maximum of prod y_i / x_i as an exact rational, rendered p/q.
    pub value: String,
    /// Degree pairs (x_i, y_i) attaining the maximum, pinned pairs first.
    pub witness: Vec<(u32, u32)>,
    pub l: usize,
}

impl Optimum {
    pub fn value_rational(&self) -> BigRational {
        self.value.parse().expect("stored as rational")
    }
}

/// Exact exhaustive maximization of prod y_i / x_i.
///
/// Constraints: sum(y_i - x_i) = n; pinned low-degree pairs per case with
/// the pinned relation degree soaking up the leftover budget; generic
/// pairs even with x above the query threshold and y = 2x. If no tuple is
/// feasible for any admissible l the empty product (value 1, l = 0) is
/// returned.
pub fn optimize_chi(q: &BoundQuery) -> Result<Optimum> {
    let l_max = generator_bound(q) as usize;
    let c = q.c();

    // pinned structure: (fixed pairs consuming a constant budget, an
    // optional budget pair whose y is determined by the remaining sum)
    struct Budget {
        x: u32,
        y_min: u32,
        y_max: Option<u32>,
        y_mod: u32,
    }
    let (fixed, budget): (Vec<(u32, u32)>, Option<Budget>) = match q.case {
        Case::Sphere => (vec![], None),
        Case::Cp => (
            vec![],
            Some(Budget {
                x: 2,
                y_min: next_even_above(c.max(3)),
                y_max: None,
                y_mod: 2,
            }),
        ),
        Case::Hp => (
            vec![],
            Some(Budget {
                x: 4,
                y_min: next_even_above(c.max(7)),
                y_max: None,
                y_mod: 2,
            }),
        ),
        Case::S2xHp => (
            vec![(2, 4)],
            Some(if q.raw_s2xhp {
                Budget {
                    x: 4,
                    y_min: next_even_above(c.max(7)),
                    y_max: None,
                    y_mod: 2,
                }
            } else {
                // y = 4(m+1) with m+1 <= n/(2k) - 1/2, so y <= 2n/k - 2
                Budget {
                    x: 4,
                    y_min: next_even_above(c.max(7)),
                    y_max: Some((2 * q.n / q.k).saturating_sub(2)),
                    y_mod: 4,
                }
            }),
        ),
    };
    let pinned = fixed.len() + usize::from(budget.is_some());
    let fixed_spend: u32 = fixed.iter().map(|&(x, y)| y - x).sum();

    let mut best: Option<(u128, u128, Vec<(u32, u32)>)> = None; // (num, den, witness)
    let mut consider = |witness: Vec<(u32, u32)>| {
        let num: u128 = witness.iter().map(|&(_, y)| y as u128).product();
        let den: u128 = witness.iter().map(|&(x, _)| x as u128).product();
        let better = match &best {
            None => true,
            Some((bn, bd, bw)) => {
                let lhs = num * *bd;
                let rhs = *bn * den;
                lhs > rhs || (lhs == rhs && witness < *bw)
            }
        };
        if better {
            best = Some((num, den, witness));
        }
    };

    let x_lo = q.min_generic_x();
    for l in pinned.max(1)..=l_max {
        let free = l - pinned;
        let mut xs = vec![x_lo; free];
        loop {
            // generic pairs spend x_i each (y_i = 2 x_i)
            let generic_spend: u32 = xs.iter().sum();
            let spent = fixed_spend + generic_spend;
            match &budget {
                None => {
                    if spent == q.n {
                        let mut w = fixed.clone();
                        w.extend(xs.iter().map(|&x| (x, 2 * x)));
                        consider(w);
                    }
                }
                Some(b) => {
                    // budget pair: y - x = n - spent
                    if let Some(rest) = q.n.checked_sub(spent) {
                        let y = b.x + rest;
                        let ok = y >= b.y_min
                            && y % b.y_mod == 0
                            && y >= 2 * b.x
                            && b.y_max.map_or(true, |hi| y <= hi);
                        if ok {
                            let mut w = fixed.clone();
                            w.push((b.x, y));
                            w.extend(xs.iter().map(|&x| (x, 2 * x)));
                            consider(w);
                        }
                    }
                }
            }
            if !advance(&mut xs, x_lo, q.n) {
                break;
            }
        }
    }

    match best {
        Some((num, den, witness)) => {
            let value = BigRational::new(BigInt::from(num), BigInt::from(den));
            Ok(Optimum {
                value: value.to_string(),
                l: witness.len(),
                witness,
            })
        }
        None => Ok(Optimum {
            value: "1".to_string(),
            witness: vec![],
            l: 0,
        }),
    }
}

/// Advance a non-decreasing tuple of even values with component sum at
/// most `cap`; returns false when exhausted.
fn advance(xs: &mut [u32], lo: u32, cap: u32) -> bool {
    let len = xs.len();
    if len == 0 {
        return false;
    }
    let mut i = len;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        xs[i] += 2;
        for j in i + 1..len {
            xs[j] = xs[i];
        }
        let sum: u32 = xs.iter().sum();
        if sum <= cap {
            return true;
        }
        xs[i] = lo;
        for j in i + 1..len {
            xs[j] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn betti(dims: &[usize]) -> BettiVector {
        BettiVector {
            dims: dims.to_vec(),
        }
    }

    #[test]
    fn classify_patterns() {
        assert_eq!(
            classify_case(&betti(&[1, 0, 0, 0, 0, 0, 0]), 6).unwrap(),
            Case::Sphere
        );
        assert_eq!(
            classify_case(&betti(&[1, 0, 1, 0, 1, 0, 1]), 6).unwrap(),
            Case::Cp
        );
        assert_eq!(
            classify_case(&betti(&[1, 0, 0, 0, 1, 0, 0, 0, 1]), 8).unwrap(),
            Case::Hp
        );
        assert_eq!(
            classify_case(&betti(&[1, 0, 1, 1, 1, 0, 1, 1, 1]), 8).unwrap(),
            Case::S2xHp
        );
        assert!(classify_case(&betti(&[1, 0, 2, 0, 2, 0, 1]), 6).is_err());
    }

    #[test]
    fn classification_only_reads_up_to_c() {
        // beyond c the vector may deviate freely
        assert_eq!(
            classify_case(&betti(&[1, 0, 1, 0, 7, 7, 7]), 3).unwrap(),
            Case::Cp
        );
    }

    #[test]
    fn generator_bounds_match_cases() {
        let q = BoundQuery::new(60, 3, Case::Sphere).unwrap();
        assert_eq!(generator_bound(&q), 2);
        let q = BoundQuery::new(60, 3, Case::Cp).unwrap();
        assert_eq!(q.c(), 21);
        assert_eq!(generator_bound(&q), 2); // floor(64/22), strictly below k
        let q = BoundQuery::new(40, 4, Case::S2xHp).unwrap();
        assert_eq!(generator_bound(&q), 4);
    }

    #[test]
    fn sphere_optimum_is_power_of_two() {
        let q = BoundQuery::new(60, 3, Case::Sphere).unwrap();
        let opt = optimize_chi(&q).unwrap();
        assert_eq!(opt.value_rational(), BigRational::from_u32(4).unwrap());
        assert_eq!(opt.l, 2);
        for &(x, y) in &opt.witness {
            assert_eq!(y, 2 * x);
            assert!(x > 20);
        }
        let sum: i64 = opt.witness.iter().map(|&(x, y)| y as i64 - x as i64).sum();
        assert_eq!(sum, 60);
        // lexicographically smallest doubling witness
        assert_eq!(opt.witness, vec![(22, 44), (38, 76)]);
    }

    #[test]
    fn closed_form_cap_example() {
        assert_eq!(
            closed_form_cap(40, 4),
            BigRational::from_u32(44).unwrap()
        );
    }

    #[test]
    fn s2xhp_respects_cap() {
        let q = BoundQuery::new(40, 4, Case::S2xHp).unwrap();
        let opt = optimize_chi(&q).unwrap();
        assert!(opt.value_rational() <= closed_form_cap(40, 4));
        // pinned pairs first: (2,4) then the budget pair on the HP factor
        assert_eq!(opt.witness[0], (2, 4));
        assert_eq!(opt.witness[1].0, 4);
        assert_eq!(opt.witness[1].1 % 4, 0);
    }

    #[test]
    fn raw_s2xhp_dominates_parameterized() {
        for n in [20u32, 40, 60, 100] {
            for k in 2..=5u32 {
                let mut q = BoundQuery::new(n, k, Case::S2xHp).unwrap();
                let strict = optimize_chi(&q).unwrap();
                q.raw_s2xhp = true;
                let raw = optimize_chi(&q).unwrap();
                assert!(raw.value_rational() >= strict.value_rational());
            }
        }
    }

    #[test]
    fn grid_respects_cap() {
        // small slice of the acceptance grid
        for n in [20u32, 48, 100] {
            for k in 2..=6u32 {
                for case in [Case::Sphere, Case::Cp, Case::Hp, Case::S2xHp] {
                    let q = BoundQuery::new(n, k, case).unwrap();
                    let opt = optimize_chi(&q).unwrap();
                    assert!(
                        opt.value_rational() <= closed_form_cap(n, k),
                        "n={} k={} {:?}: {} > cap",
                        n,
                        k,
                        case,
                        opt.value
                    );
                }
            }
        }
    }

    #[test]
    fn sphere_value_is_two_power_l() {
        for n in [20u32, 40, 60, 200] {
            for k in 2..=6u32 {
                let q = BoundQuery::new(n, k, Case::Sphere).unwrap();
                let opt = optimize_chi(&q).unwrap();
                let expected = BigRational::from_integer(BigInt::from(2).pow(opt.l as u32));
                assert_eq!(opt.value_rational(), expected);
            }
        }
    }

    #[test]
    fn generator_bound_monotone_in_k() {
        // bounds grow (weakly) with k for every case
        for case in [Case::Sphere, Case::Cp, Case::Hp, Case::S2xHp] {
            for n in [40u32, 100, 200] {
                let mut prev = 0;
                for k in 2..=6u32 {
                    let q = BoundQuery::new(n, k, case).unwrap();
                    let b = generator_bound(&q);
                    assert!(b >= prev, "case {:?} n {} k {}", case, n, k);
                    prev = b;
                }
            }
        }
    }

    #[test]
    fn threshold_over_c_is_no_better() {
        for n in [40u32, 60, 100] {
            for k in 3..=5u32 {
                let mut q = BoundQuery::new(n, k, Case::Sphere).unwrap();
                let loose = optimize_chi(&q).unwrap();
                q.threshold = Threshold::OverC;
                let tight = optimize_chi(&q).unwrap();
                assert!(tight.value_rational() <= loose.value_rational());
            }
        }
    }

    #[test]
    fn cp_single_pair_takes_whole_budget() {
        // k = 2 leaves room for the pinned pair only
        let q = BoundQuery::new(200, 2, Case::Cp).unwrap();
        let opt = optimize_chi(&q).unwrap();
        assert_eq!(opt.witness, vec![(2, 202)]);
        assert_eq!(opt.value_rational(), BigRational::from_u32(101).unwrap());
        assert_eq!(opt.value_rational(), closed_form_cap(200, 2));
    }

    #[test]
    fn query_validation() {
        assert!(BoundQuery::new(21, 3, Case::Sphere).is_err());
        assert!(BoundQuery::new(20, 1, Case::Sphere).is_err());
        assert!(matches!(
            BoundQuery::new(402, 3, Case::Sphere),
            Err(Error::Resource(_))
        ));
        assert!(BoundQuery::new(20, 9, Case::Sphere).is_err());
    }
}
