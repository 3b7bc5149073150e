//! Exact ovoid-nonexistence threshold calculators.
//!
//! Three families of polar spaces admit combinatorial rank thresholds above
//! which no ovoid can exist:
//!
//! * Hermitian `H(2d−1, q²)`: no ovoid once `d > q³ − q² + 2`;
//! * hyperbolic `Q⁺(2d−1, q)`: no ovoid once `d > q² − q + 3`;
//! * parabolic `Q(2d, q)`: no ovoid once `d > (q² + 3)/2`.
//!
//! For Hermitian spaces the older combinatorial threshold of Klein
//! (`d > q³ + 1`) is tabulated alongside for comparison, as are the
//! algebraic p-rank criteria of Blokhuis and Moorhouse: writing `q = pʰ`
//! with `p` prime, `Q⁺(2r+1, q)` has no ovoid when
//!
//! ```text
//! pʳ > C(2r+p, 2r+1) − C(2r+p−2, 2r+1),
//! ```
//!
//! and `H(2r−1, q²)` has none when
//!
//! ```text
//! p^{2r−1} > C(p+2r−2, 2r−1)² − C(p+2r−3, 2r−1)².
//! ```
//!
//! All arithmetic is exact (`BigInt` / `BigRational`); [`bounds`] tabulates,
//! per family and field order, exactly which ranks each criterion excludes.
//!
//! The module also evaluates the ovoid-section bound derived from the
//! Hermitian pair tight set (see [`crate::intriguing::hermitian_pair_tight`]):
//! an ovoid of `H(2d−1, q²)` meets a nondegenerate section `H_s ≅ H(s, q²)`
//! in at most `q^{s+1} − q^s + q^{2s−2d+2} + 1` points.  The closed form and
//! the full three-term expansion it abbreviates are computed independently
//! and must agree; both appear in the report together with the integer part,
//! since the bound itself is a non-integer rational when `s < d − 1`.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Polar-space family covered by the threshold table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundFamily {
    /// `H(2d−1, q²)`, rank d.
    Hermitian,
    /// `Q⁺(2d−1, q)`, rank d.
    Hyperbolic,
    /// `Q(2d, q)`, rank d.
    Parabolic,
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BoundFamily::Hermitian => "hermitian",
            BoundFamily::Hyperbolic => "hyperbolic",
            BoundFamily::Parabolic => "parabolic",
        };
        f.write_str(name)
    }
}

impl FromStr for BoundFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<BoundFamily> {
        match s.to_ascii_lowercase().as_str() {
            "hermitian" | "h" => Ok(BoundFamily::Hermitian),
            "hyperbolic" | "q+" | "qplus" => Ok(BoundFamily::Hyperbolic),
            "parabolic" | "q" => Ok(BoundFamily::Parabolic),
            other => Err(Error::InvalidParameter(format!(
                "unknown bound family `{other}` (expected hermitian, hyperbolic, or parabolic)"
            ))),
        }
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn rat_int(n: u64) -> BigRational {
    BigRational::from_integer(big(n))
}

/// Exact binomial coefficient, with `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * big(n - k + 1 + i) / big(i + 1);
    }
    acc
}

/// `q^e` as an exact rational, for any integer exponent.
fn qpow(q: u64, e: i64) -> BigRational {
    let mag = BigRational::from_integer(big(q).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        mag
    } else {
        mag.recip()
    }
}

/// Splits a prime power `q = pʰ` into `(p, h)`; errors for `q < 2` or
/// composite bases.
pub fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::Precondition(format!(
            "field order q = {q} must be at least 2"
        )));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Ok((q, 1)); // q itself is prime
    }
    let mut rest = q;
    let mut h = 0;
    while rest % p == 0 {
        rest /= p;
        h += 1;
    }
    if rest != 1 {
        return Err(Error::Precondition(format!(
            "field order q = {q} is not a prime power"
        )));
    }
    Ok((p, h))
}

/// The combinatorial rank threshold for `family` over GF(q): no ovoid exists
/// once the polar rank d strictly exceeds this value.  Exact rational (the
/// parabolic threshold is a half-integer for odd q²+3).
pub fn combinatorial_threshold(family: BoundFamily, q: u64) -> Result<BigRational> {
    split_prime_power(q)?;
    let qq = rat_int(q * q);
    Ok(match family {
        BoundFamily::Hermitian => rat_int(q * q * q) - &qq + rat_int(2),
        BoundFamily::Hyperbolic => qq - rat_int(q) + rat_int(3),
        BoundFamily::Parabolic => (qq + rat_int(3)) / rat_int(2),
    })
}

/// Least rank excluded by [`combinatorial_threshold`]: the smallest integer
/// d with `d > threshold`.
pub fn combinatorial_first_rank(family: BoundFamily, q: u64) -> Result<u64> {
    let t = combinatorial_threshold(family, q)?;
    let floor = t.floor().to_integer();
    let first = floor + BigInt::one();
    u64::try_from(first.clone())
        .map_err(|_| Error::Construction(format!("threshold floor {first} out of range")))
}

/// Klein's combinatorial threshold for Hermitian spaces: `H(2d−1, q²)` has
/// no ovoid once `d > q³ + 1`.  Kept for comparison with the sharper
/// Hermitian threshold above.
pub fn klein_threshold(q: u64) -> Result<BigInt> {
    split_prime_power(q)?;
    Ok(big(q * q * q) + BigInt::one())
}

/// One evaluation of a Blokhuis–Moorhouse p-rank criterion.
#[derive(Debug, Clone, Serialize)]
pub struct MoorhouseCriterion {
    pub family: BoundFamily,
    /// Field characteristic (the criterion depends on p only, not on q).
    pub p: u64,
    /// Polar rank of the space tested.
    pub rank: u64,
    /// The power-of-p side of the inequality, exact.
    pub lhs: String,
    /// The binomial side, exact.
    pub rhs: String,
    /// Whether `lhs > rhs`, i.e. ovoids are excluded at this rank.
    pub excluded: bool,
}

/// Evaluates the p-rank ovoid criterion for a space of polar rank `d` in
/// characteristic `p`.  For hyperbolic `Q⁺(2d−1, q)` the criterion reads
/// `p^{d−1} > C(2(d−1)+p, 2d−1) − C(2(d−1)+p−2, 2d−1)`; for Hermitian
/// `H(2d−1, q²)` it reads `p^{2d−1} > C(p+2d−2, 2d−1)² − C(p+2d−3, 2d−1)²`.
/// No such criterion is tabulated for parabolic spaces.
pub fn moorhouse_criterion(family: BoundFamily, p: u64, d: u64) -> Result<MoorhouseCriterion> {
    let (pp, h) = split_prime_power(p)?;
    if h != 1 {
        return Err(Error::Precondition(format!(
            "characteristic p = {p} must be prime (got {pp}^{h})"
        )));
    }
    if d < 2 {
        return Err(Error::Precondition(format!(
            "polar rank d = {d} must be at least 2"
        )));
    }
    let (lhs, rhs) = match family {
        BoundFamily::Hyperbolic => {
            let r = d - 1;
            let lhs = big(p).pow(r as u32);
            let rhs = binomial(2 * r + p, 2 * r + 1) - binomial(2 * r + p - 2, 2 * r + 1);
            (lhs, rhs)
        }
        BoundFamily::Hermitian => {
            let lhs = big(p).pow((2 * d - 1) as u32);
            let a = binomial(p + 2 * d - 2, 2 * d - 1);
            let b = binomial(p + 2 * d - 3, 2 * d - 1);
            (lhs, a.clone() * &a - b.clone() * &b)
        }
        BoundFamily::Parabolic => {
            return Err(Error::Precondition(
                "no p-rank ovoid criterion is tabulated for parabolic spaces".into(),
            ))
        }
    };
    let excluded = lhs > rhs;
    Ok(MoorhouseCriterion {
        family,
        p,
        rank: d,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        excluded,
    })
}

/// Least rank at which [`moorhouse_criterion`] first excludes ovoids, found
/// by an upward scan (the power side grows exponentially in the rank while
/// the binomial side grows polynomially, so the scan terminates).  Returns
/// `None` for parabolic spaces and for characteristics where no crossing is
/// found below the scan cap.
pub fn moorhouse_first_rank(family: BoundFamily, p: u64) -> Result<Option<u64>> {
    if family == BoundFamily::Parabolic {
        return Ok(None);
    }
    for d in 2..=10_000 {
        if moorhouse_criterion(family, p, d)?.excluded {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Exclusion verdicts at a single polar rank.
#[derive(Debug, Clone, Serialize)]
pub struct RankVerdict {
    pub rank: u64,
    /// Ruled out by the combinatorial threshold.
    pub combinatorial: bool,
    /// Ruled out by Klein's threshold (Hermitian spaces only).
    pub klein: Option<bool>,
    /// Ruled out by the p-rank criterion (Hermitian and hyperbolic only).
    pub algebraic: Option<bool>,
    /// Ruled out by at least one criterion.
    pub excluded: bool,
}

/// Threshold data and the rank-by-rank verdict table for one field order.
#[derive(Debug, Clone, Serialize)]
pub struct FieldBoundRow {
    pub q: u64,
    pub p: u64,
    pub h: u32,
    /// Exact value of the combinatorial threshold (rank bound).
    pub combinatorial_threshold: String,
    /// Least rank excluded by the combinatorial threshold.
    pub combinatorial_first_rank: u64,
    /// Least rank excluded by Klein's threshold (Hermitian only): q³ + 2.
    pub klein_first_rank: Option<u64>,
    /// Least rank excluded by the p-rank criterion, if any.
    pub algebraic_first_rank: Option<u64>,
    /// Verdicts for every rank from 2 through the largest first-excluded
    /// rank among the applicable criteria.
    pub verdicts: Vec<RankVerdict>,
}

/// The full threshold/verdict table for one family, all prime powers
/// `2 ≤ q ≤ q_max`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub family: BoundFamily,
    pub q_max: u64,
    pub rows: Vec<FieldBoundRow>,
}

/// Tabulates, for every prime power `q ≤ q_max`, the exact ovoid-exclusion
/// thresholds of `family` and a rank-by-rank verdict table covering every
/// rank up to the point where all applicable criteria have switched on.
pub fn bounds(family: BoundFamily, q_max: u64) -> Result<BoundReport> {
    if q_max < 2 {
        return Err(Error::Precondition(format!(
            "q_max = {q_max} must be at least 2"
        )));
    }
    let mut rows = Vec::new();
    for q in 2..=q_max {
        let (p, h) = match split_prime_power(q) {
            Ok(ph) => ph,
            Err(_) => continue, // skip non-prime-powers
        };
        let threshold = combinatorial_threshold(family, q)?;
        let comb_first = combinatorial_first_rank(family, q)?;
        let klein_first = match family {
            BoundFamily::Hermitian => Some(q * q * q + 2),
            _ => None,
        };
        let algebraic_first = moorhouse_first_rank(family, p)?;
        let top = comb_first
            .max(klein_first.unwrap_or(2))
            .max(algebraic_first.unwrap_or(2));
        let mut verdicts = Vec::with_capacity((top - 1) as usize);
        for d in 2..=top {
            let combinatorial = rat_int(d) > threshold;
            let klein = klein_first.map(|_| {
                // d > q³ + 1
                d > q * q * q + 1
            });
            let algebraic = match family {
                BoundFamily::Parabolic => None,
                _ => Some(moorhouse_criterion(family, p, d)?.excluded),
            };
            let excluded = combinatorial || klein == Some(true) || algebraic == Some(true);
            verdicts.push(RankVerdict {
                rank: d,
                combinatorial,
                klein,
                algebraic,
                excluded,
            });
        }
        rows.push(FieldBoundRow {
            q,
            p,
            h,
            combinatorial_threshold: threshold.to_string(),
            combinatorial_first_rank: comb_first,
            klein_first_rank: klein_first,
            algebraic_first_rank: algebraic_first,
            verdicts,
        });
    }
    Ok(BoundReport {
        family,
        q_max,
        rows,
    })
}

/// The ovoid-section bound for Hermitian spaces, evaluated exactly.
///
/// An ovoid of `H(2d−1, q²)` meets a nondegenerate section `H_s ≅ H(s, q²)`
/// (s even, `1 < s < 2d−2`) in at most `q^{s+1} − q^s + q^{2s−2d+2} + 1`
/// points.  `stated` is that closed form; `expanded` is the value obtained
/// by solving the full three-term tight-set intersection identity
/// `(q^s−1)(q^{2d−2−s}−1) + q^{2d−2−s}·|H_s ∩ O| ≤ |O| = q^{2d−1} + 1`
/// for `|H_s ∩ O|`.  The two derivations must agree; `integer_bound` is the
/// integer part, which is the effective bound on the (integer) intersection
/// size whenever the rational exceeds it.
#[derive(Debug, Clone, Serialize)]
pub struct SectionBound {
    pub d: u64,
    pub s: u64,
    pub q: u64,
    pub stated: String,
    pub expanded: String,
    pub integer_bound: String,
    pub is_integral: bool,
}

impl SectionBound {
    /// The bound as an exact rational.
    pub fn value(&self) -> BigRational {
        self.stated
            .parse::<BigRational>()
            .expect("stored value is a valid rational")
    }
}

/// Evaluates the ovoid-section bound at rank `d`, split `s`, base field
/// order `q` (the Hermitian space lives over GF(q²)), verifying that the
/// closed form agrees with the three-term expansion it abbreviates.
pub fn ovoid_section_bound(d: u64, s: u64, q: u64) -> Result<SectionBound> {
    split_prime_power(q)?;
    if d <= 2 {
        return Err(Error::Precondition(format!("need rank d = {d} > 2")));
    }
    if s % 2 != 0 || s <= 1 || s >= 2 * d - 2 {
        return Err(Error::Precondition(format!(
            "split parameter s = {s} must be even with 1 < s < {}",
            2 * d - 2
        )));
    }
    let d_i = d as i64;
    let s_i = s as i64;
    let stated = qpow(q, s_i + 1) - qpow(q, s_i) + qpow(q, 2 * s_i - 2 * d_i + 2) + rat_int(1);

    // |O| = q^{2d−1} + 1 and (q^s − 1)(q^{2d−2−s} − 1) pass through the
    // tight-set intersection identity; solve for the section count.
    let ovoid_size = qpow(q, 2 * d_i - 1) + rat_int(1);
    let cross = (qpow(q, s_i) - rat_int(1)) * (qpow(q, 2 * d_i - 2 - s_i) - rat_int(1));
    let expanded = (ovoid_size - cross) / qpow(q, 2 * d_i - 2 - s_i);

    if stated != expanded {
        return Err(Error::CertifyMismatch {
            stage: format!("section bound (d={d}, s={s}, q={q})"),
            expected: stated.to_string(),
            actual: expanded.to_string(),
        });
    }
    let floor = stated.floor().to_integer();
    Ok(SectionBound {
        d,
        s,
        q,
        stated: stated.to_string(),
        expanded: expanded.to_string(),
        integer_bound: floor.to_string(),
        is_integral: stated.is_integer(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_and_prime_power_helpers() {
        assert_eq!(binomial(10, 9), big(10));
        assert_eq!(binomial(8, 9), BigInt::zero());
        assert_eq!(binomial(9, 7), big(36));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(52, 5), big(2_598_960));
        assert_eq!(split_prime_power(8).unwrap(), (2, 3));
        assert_eq!(split_prime_power(9).unwrap(), (3, 2));
        assert_eq!(split_prime_power(7).unwrap(), (7, 1));
        assert!(split_prime_power(6).is_err());
        assert!(split_prime_power(12).is_err());
        assert!(split_prime_power(1).is_err());
        assert!(split_prime_power(0).is_err());
    }

    #[test]
    fn thresholds_match_hand_calculations() {
        // Hermitian, q = 2: threshold q³ − q² + 2 = 6, so rank 7 is the
        // first excluded; Klein's q³ + 1 = 9 gives rank 10.
        let t = combinatorial_threshold(BoundFamily::Hermitian, 2).unwrap();
        assert_eq!(t.to_string(), "6");
        assert_eq!(combinatorial_first_rank(BoundFamily::Hermitian, 2).unwrap(), 7);
        assert_eq!(klein_threshold(2).unwrap(), big(9));

        let t = combinatorial_threshold(BoundFamily::Hermitian, 3).unwrap();
        assert_eq!(t.to_string(), "20");
        assert_eq!(klein_threshold(3).unwrap(), big(28));

        // Hyperbolic, q = 2: q² − q + 3 = 5, first excluded rank 6.
        let t = combinatorial_threshold(BoundFamily::Hyperbolic, 2).unwrap();
        assert_eq!(t.to_string(), "5");
        assert_eq!(combinatorial_first_rank(BoundFamily::Hyperbolic, 2).unwrap(), 6);

        // Parabolic, q = 2: (q² + 3)/2 = 7/2, first excluded rank 4;
        // q = 3: exactly 6, first excluded rank 7.
        let t = combinatorial_threshold(BoundFamily::Parabolic, 2).unwrap();
        assert_eq!(t.to_string(), "7/2");
        assert_eq!(combinatorial_first_rank(BoundFamily::Parabolic, 2).unwrap(), 4);
        let t = combinatorial_threshold(BoundFamily::Parabolic, 3).unwrap();
        assert_eq!(t.to_string(), "6");
        assert_eq!(combinatorial_first_rank(BoundFamily::Parabolic, 3).unwrap(), 7);

        assert!(combinatorial_threshold(BoundFamily::Hermitian, 6).is_err());
    }

    #[test]
    fn moorhouse_criteria_match_hand_arithmetic() {
        // Hyperbolic, p = 2, rank 5 (i.e. Q⁺(9,2), r = 4):
        // 2⁴ = 16 > C(10,9) − C(8,9) = 10 − 0.
        let c = moorhouse_criterion(BoundFamily::Hyperbolic, 2, 5).unwrap();
        assert_eq!((c.lhs.as_str(), c.rhs.as_str()), ("16", "10"));
        assert!(c.excluded);
        // Rank 4 (r = 3) just misses: 2³ = 8 > C(8,7) − C(6,7) = 8 fails.
        let c = moorhouse_criterion(BoundFamily::Hyperbolic, 2, 4).unwrap();
        assert_eq!((c.lhs.as_str(), c.rhs.as_str()), ("8", "8"));
        assert!(!c.excluded);
        // p = 3, rank 5: 3⁴ = 81 > C(11,9) − C(9,9) = 55 − 1 = 54.
        let c = moorhouse_criterion(BoundFamily::Hyperbolic, 3, 5).unwrap();
        assert_eq!((c.lhs.as_str(), c.rhs.as_str()), ("81", "54"));
        assert!(c.excluded);

        // Hermitian, p = 2, rank 4 (H(7,4)): 2⁷ = 128 > C(8,7)² − C(7,7)²
        // = 64 − 1 = 63; rank 3 (H(5,4)) just misses: 2⁵ = 32 vs
        // C(6,5)² − C(5,5)² = 36 − 1 = 35.
        let c = moorhouse_criterion(BoundFamily::Hermitian, 2, 4).unwrap();
        assert_eq!((c.lhs.as_str(), c.rhs.as_str()), ("128", "63"));
        assert!(c.excluded);
        let c = moorhouse_criterion(BoundFamily::Hermitian, 2, 3).unwrap();
        assert_eq!((c.lhs.as_str(), c.rhs.as_str()), ("32", "35"));
        assert!(!c.excluded);
        // p = 3, rank 4: 3⁷ = 2187 > C(9,7)² − C(8,7)² = 1296 − 64 = 1232.
        let c = moorhouse_criterion(BoundFamily::Hermitian, 3, 4).unwrap();
        assert_eq!((c.lhs.as_str(), c.rhs.as_str()), ("2187", "1232"));
        assert!(c.excluded);

        // First excluded ranks: characteristic 2 and 3 both switch on at
        // rank 5 (hyperbolic) and rank 4 (Hermitian).
        assert_eq!(
            moorhouse_first_rank(BoundFamily::Hyperbolic, 2).unwrap(),
            Some(5)
        );
        assert_eq!(
            moorhouse_first_rank(BoundFamily::Hyperbolic, 3).unwrap(),
            Some(5)
        );
        assert_eq!(
            moorhouse_first_rank(BoundFamily::Hermitian, 2).unwrap(),
            Some(4)
        );
        assert_eq!(
            moorhouse_first_rank(BoundFamily::Hermitian, 3).unwrap(),
            Some(4)
        );
        assert_eq!(moorhouse_first_rank(BoundFamily::Parabolic, 2).unwrap(), None);

        assert!(moorhouse_criterion(BoundFamily::Parabolic, 2, 5).is_err());
        assert!(moorhouse_criterion(BoundFamily::Hyperbolic, 4, 5).is_err());
        assert!(moorhouse_criterion(BoundFamily::Hyperbolic, 2, 1).is_err());
    }

    #[test]
    fn hyperbolic_report_flips_exactly_at_first_ranks() {
        let report = bounds(BoundFamily::Hyperbolic, 4).unwrap();
        assert_eq!(report.rows.iter().map(|r| r.q).collect::<Vec<_>>(), [2, 3, 4]);

        let q2 = &report.rows[0];
        assert_eq!((q2.p, q2.h), (2, 1));
        assert_eq!(q2.combinatorial_threshold, "5");
        assert_eq!(q2.combinatorial_first_rank, 6);
        assert_eq!(q2.klein_first_rank, None);
        assert_eq!(q2.algebraic_first_rank, Some(5));
        assert_eq!(q2.verdicts.len(), 5); // ranks 2..=6
        for v in &q2.verdicts {
            assert_eq!(v.combinatorial, v.rank >= 6);
            assert_eq!(v.algebraic, Some(v.rank >= 5));
            assert_eq!(v.klein, None);
            assert_eq!(v.excluded, v.rank >= 5);
        }

        // q = 4 shares characteristic 2, so the algebraic criterion still
        // switches on at rank 5 while the combinatorial one needs rank 16
        // (threshold 4² − 4 + 3 = 15).
        let q4 = &report.rows[2];
        assert_eq!((q4.p, q4.h), (2, 2));
        assert_eq!(q4.combinatorial_threshold, "15");
        assert_eq!(q4.combinatorial_first_rank, 16);
        assert_eq!(q4.algebraic_first_rank, Some(5));
        assert_eq!(q4.verdicts.len(), 15); // ranks 2..=16
        for v in &q4.verdicts {
            assert_eq!(v.excluded, v.rank >= 5);
        }

        assert!(bounds(BoundFamily::Hyperbolic, 1).is_err());
        // q = 6 is skipped: prime powers only.
        let report = bounds(BoundFamily::Parabolic, 7).unwrap();
        assert_eq!(
            report.rows.iter().map(|r| r.q).collect::<Vec<_>>(),
            [2, 3, 4, 5, 7]
        );
        assert!(report.rows.iter().all(|r| r.klein_first_rank.is_none()
            && r.algebraic_first_rank.is_none()
            && r.verdicts.iter().all(|v| v.klein.is_none() && v.algebraic.is_none())));
    }

    #[test]
    fn hermitian_report_matches_worked_examples() {
        let report = bounds(BoundFamily::Hermitian, 2).unwrap();
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert_eq!(row.combinatorial_threshold, "6");
        assert_eq!(row.combinatorial_first_rank, 7);
        assert_eq!(row.klein_first_rank, Some(10));
        assert_eq!(row.algebraic_first_rank, Some(4));
        assert_eq!(row.verdicts.len(), 9); // ranks 2..=10
        for v in &row.verdicts {
            assert_eq!(v.combinatorial, v.rank >= 7);
            assert_eq!(v.klein, Some(v.rank >= 10));
            assert_eq!(v.algebraic, Some(v.rank >= 4));
            assert_eq!(v.excluded, v.rank >= 4);
        }
        // Rank 3 (the space H(5,4)) is excluded by none of the tabulated
        // criteria.
        assert!(!row.verdicts[1].excluded);
    }

    #[test]
    fn thresholds_are_monotone_in_q_up_to_nine() {
        let prime_powers = [2u64, 3, 4, 5, 7, 8, 9];
        for family in [
            BoundFamily::Hermitian,
            BoundFamily::Hyperbolic,
            BoundFamily::Parabolic,
        ] {
            let values: Vec<BigRational> = prime_powers
                .iter()
                .map(|&q| combinatorial_threshold(family, q).unwrap())
                .collect();
            for w in values.windows(2) {
                assert!(w[0] < w[1], "{family} threshold not monotone: {w:?}");
            }
        }
        let klein: Vec<BigInt> = prime_powers
            .iter()
            .map(|&q| klein_threshold(q).unwrap())
            .collect();
        for w in klein.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn section_bound_agrees_with_expansion_and_floors() {
        // (d, s, q) = (3, 2, 2): exponent 2s − 2d + 2 = 0, so the bound is
        // the integer q³ − q² + 2 = 6.
        let b = ovoid_section_bound(3, 2, 2).unwrap();
        assert_eq!(b.stated, "6");
        assert_eq!(b.expanded, "6");
        assert_eq!(b.integer_bound, "6");
        assert!(b.is_integral);
        assert_eq!(b.value(), rat_int(6));

        // (4, 2, 2): 8 − 4 + 1/4 + 1 = 21/4, integer part 5.
        let b = ovoid_section_bound(4, 2, 2).unwrap();
        assert_eq!(b.stated, "21/4");
        assert_eq!(b.expanded, "21/4");
        assert_eq!(b.integer_bound, "5");
        assert!(!b.is_integral);

        // (4, 4, 2): 32 − 16 + 4 + 1 = 21, integral.
        let b = ovoid_section_bound(4, 4, 2).unwrap();
        assert_eq!(b.stated, "21");
        assert!(b.is_integral);

        // (5, 2, 3): 27 − 9 + 3⁻⁴ + 1 = 1540/81, integer part 19.
        let b = ovoid_section_bound(5, 2, 3).unwrap();
        assert_eq!(b.stated, "1540/81");
        assert_eq!(b.expanded, "1540/81");
        assert_eq!(b.integer_bound, "19");
    }

    #[test]
    fn section_bound_rejects_bad_parameters() {
        assert!(ovoid_section_bound(2, 2, 2).is_err()); // d too small
        assert!(ovoid_section_bound(3, 3, 2).is_err()); // s odd
        assert!(ovoid_section_bound(3, 0, 2).is_err()); // s too small
        assert!(ovoid_section_bound(3, 4, 2).is_err()); // s = 2d − 2
        assert!(ovoid_section_bound(3, 2, 6).is_err()); // q not a prime power
    }

    #[test]
    fn family_parsing_roundtrip() {
        for family in [
            BoundFamily::Hermitian,
            BoundFamily::Hyperbolic,
            BoundFamily::Parabolic,
        ] {
            assert_eq!(family.to_string().parse::<BoundFamily>().unwrap(), family);
        }
        assert_eq!("q+".parse::<BoundFamily>().unwrap(), BoundFamily::Hyperbolic);
        assert!("elliptic".parse::<BoundFamily>().is_err());
    }
}
