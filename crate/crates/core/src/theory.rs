//! Closed-form weight distributions of the square-trace codes and the bounds
//! used to judge them.

use crate::char_sums::even_sign;
use crate::code::{
    build_code, build_defining_set, puncture_representatives, TraceCode, WeightDistribution,
};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Limits};
use crate::prime::is_prime;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Which closed form a prediction comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableSource {
    /// m odd, defining set D (three weights)
    OddFull,
    /// m even, defining set D (two weights)
    EvenFull,
    /// m odd, one representative per GF(p)* orbit
    OddPunctured,
    /// m even, one representative per GF(p)* orbit
    EvenPunctured,
}

impl TableSource {
    pub fn select(m: u32, punctured: bool) -> Self {
        match (m % 2 == 1, punctured) {
            (true, false) => TableSource::OddFull,
            (false, false) => TableSource::EvenFull,
            (true, true) => TableSource::OddPunctured,
            (false, true) => TableSource::EvenPunctured,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TableSource::OddFull => "odd-full",
            TableSource::EvenFull => "even-full",
            TableSource::OddPunctured => "odd-punctured",
            TableSource::EvenPunctured => "even-punctured",
        }
    }
}

/// Predicted parameters; `counts` excludes the zero codeword.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictedCode {
    pub p: u32,
    pub m: u32,
    pub n: u64,
    pub k: u32,
    pub counts: BTreeMap<u64, u64>,
    pub source: TableSource,
    /// `(-1)^{((p-1)/2)^2 m/2}`, only for even m
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i64>,
}

fn pow(p: u32, e: u32) -> i128 {
    i128::from(p).pow(e)
}

fn to_u64(v: i128) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Unsupported(format!("value {v} out of range")))
}

/// Evaluates the weight table for `(p, m)`.
///
/// Returns [`Error::EmptyDefiningSet`] when the formulas give length 0 (m = 2
/// with p = 1 mod 4), where no code exists.
pub fn predict(p: u32, m: u32, punctured: bool) -> Result<PredictedCode> {
    if p % 2 == 0 || !is_prime(u64::from(p)) {
        return Err(Error::NotOddPrime(u64::from(p)));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    if m == 1 {
        return Err(Error::Unsupported("m must be at least 2".into()));
    }
    if f64::from(p).powi(m as i32) > 1e30 {
        return Err(Error::Unsupported(format!(
            "p^m too large for p={p}, m={m}"
        )));
    }
    let source = TableSource::select(m, punctured);
    let pm = i128::from(p) - 1;
    // full-code weights are (p-1) times the punctured ones
    let scale = if punctured { 1 } else { pm };
    let mut rows: Vec<(i128, i128)> = Vec::new();
    let (n, sign) = if m % 2 == 1 {
        let half = pow(p, (m - 1) / 2);
        let low = pow(p, (m - 3) / 2);
        let top = pow(p, m - 1);
        rows.push((scale * (pow(p, m - 2) - low), pm / 2 * (top + half)));
        rows.push((scale * pow(p, m - 2), top - 1));
        rows.push((scale * (pow(p, m - 2) + low), pm / 2 * (top - half)));
        let n = if punctured { (top - 1) / pm } else { top - 1 };
        (n, None)
    } else {
        let s = i128::from(even_sign(p, m));
        let half = pow(p, (m - 2) / 2);
        let top = pow(p, m - 1);
        rows.push((scale * pow(p, m - 2), top - s * pm * half - 1));
        rows.push((scale * (pow(p, m - 2) - s * half), pm * (top + s * half)));
        let n = if punctured {
            (top - 1) / pm - s * half
        } else {
            top - s * pm * half - 1
        };
        (n, Some(s as i64))
    };
    if n <= 0 || rows.iter().any(|&(w, _)| w <= 0) {
        return Err(Error::EmptyDefiningSet);
    }
    let mut counts = BTreeMap::new();
    for (w, a) in rows {
        if a > 0 {
            *counts.entry(to_u64(w)?).or_insert(0) += to_u64(a)?;
        }
    }
    Ok(PredictedCode {
        p,
        m,
        n: to_u64(n)?,
        k: m,
        counts,
        source,
        sign,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Compared {
    pub predicted: u64,
    pub observed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightRow {
    pub w: u64,
    pub predicted: u64,
    pub observed: u64,
}

/// Predicted against enumerated distribution for one `(p, m, punctured)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem: TableSource,
    pub p: u32,
    pub m: u32,
    pub punctured: bool,
    pub pass: bool,
    pub n: Compared,
    pub k: Compared,
    pub rows: Vec<WeightRow>,
}

/// Compares a prediction with a measured distribution; both the lengths,
/// dimensions and complete weight maps must agree.
pub fn compare(
    pred: &PredictedCode,
    wd: &WeightDistribution,
    punctured: bool,
) -> VerificationReport {
    let observed: BTreeMap<u64, u64> = wd.nonzero().map(|(w, a)| (w as u64, a)).collect();
    let weights: BTreeSet<u64> = pred.counts.keys().chain(observed.keys()).copied().collect();
    let rows: Vec<WeightRow> = weights
        .into_iter()
        .map(|w| WeightRow {
            w,
            predicted: pred.counts.get(&w).copied().unwrap_or(0),
            observed: observed.get(&w).copied().unwrap_or(0),
        })
        .collect();
    let n = Compared {
        predicted: pred.n,
        observed: wd.n as u64,
    };
    let k = Compared {
        predicted: u64::from(pred.k),
        observed: wd.k as u64,
    };
    let pass = n.predicted == n.observed
        && k.predicted == k.observed
        && rows.iter().all(|r| r.predicted == r.observed);
    VerificationReport {
        theorem: pred.source,
        p: pred.p,
        m: pred.m,
        punctured,
        pass,
        n,
        k,
        rows,
    }
}

/// Builds `C_D` (or its punctured form) in the canonical field.
pub fn square_trace_code(ctx: &FieldCtx, punctured: bool) -> Result<TraceCode> {
    let set = build_defining_set(ctx)?;
    let set = if punctured {
        puncture_representatives(ctx, &set)?
    } else {
        set
    };
    build_code(ctx, &set)
}

/// Enumerates the code and checks it against [`predict`].
pub fn verify(p: u32, m: u32, punctured: bool, limits: Limits) -> Result<VerificationReport> {
    let pred = predict(p, m, punctured)?;
    let ctx = FieldCtx::with_limits(p, m, limits)?;
    let code = square_trace_code(&ctx, punctured)?;
    Ok(compare(&pred, &code.weight_distribution()?, punctured))
}

/// `w_min / w_max` over nonzero weights, compared with `(p-1)/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RatioCheck {
    pub w_min: u64,
    pub w_max: u64,
    pub holds: bool,
}

impl RatioCheck {
    /// The ratio in lowest terms.
    pub fn ratio(&self) -> (u64, u64) {
        let g = gcd(self.w_min, self.w_max);
        (self.w_min / g, self.w_max / g)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Sufficient condition for every nonzero codeword to be minimal:
/// `w_min / w_max > (p-1)/p`, decided in integers. `None` for the zero code.
pub fn ashikhmin_barg(wd: &WeightDistribution, p: u32) -> Option<RatioCheck> {
    let w_min = wd.min_nonzero_weight()? as u64;
    let w_max = wd.max_nonzero_weight()? as u64;
    let p = u128::from(p);
    let holds = u128::from(w_min) * p > u128::from(w_max) * (p - 1);
    Some(RatioCheck {
        w_min,
        w_max,
        holds,
    })
}

/// `sum_{i<k} ceil(d / p^i)`: the shortest length an `[n, k, d]_p` code can have.
pub fn griesmer_min_length(p: u32, k: u32, d: u64) -> u64 {
    let mut total = 0u64;
    let mut pi = 1u64;
    for _ in 0..k {
        total += d.div_ceil(pi);
        // once p^i exceeds d every further term is 1
        pi = pi.saturating_mul(u64::from(p));
    }
    total
}

pub fn meets_griesmer(p: u32, n: u64, k: u32, d: u64) -> bool {
    n == griesmer_min_length(p, k, d)
}

/// Whether the code's length equals the Griesmer bound at its measured `k, d`.
pub fn is_griesmer_optimal(code: &TraceCode) -> Result<bool> {
    let d = code.minimum_distance()? as u64;
    Ok(meets_griesmer(
        code.p(),
        code.n() as u64,
        code.k() as u32,
        d,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn worked_examples() {
        let c = predict(3, 5, false).unwrap();
        assert_eq!((c.n, c.k), (80, 5));
        assert_eq!(c.counts, map(&[(48, 90), (54, 80), (60, 72)]));
        let c = predict(3, 5, true).unwrap();
        assert_eq!((c.n, c.k), (40, 5));
        assert_eq!(c.counts, map(&[(24, 90), (27, 80), (30, 72)]));
        let c = predict(5, 4, false).unwrap();
        assert_eq!((c.n, c.k), (104, 4));
        assert_eq!(c.counts, map(&[(80, 520), (100, 104)]));
        let c = predict(5, 4, true).unwrap();
        assert_eq!((c.n, c.k), (26, 4));
        assert_eq!(c.counts, map(&[(20, 520), (25, 104)]));
        assert_eq!(c.source, TableSource::EvenPunctured);
    }

    #[test]
    fn small_odd_case() {
        let c = predict(3, 3, false).unwrap();
        assert_eq!(c.n, 8);
        assert_eq!(c.counts, map(&[(4, 12), (6, 8), (8, 6)]));
    }

    #[test]
    fn multiplicities_sum_to_q_minus_one() {
        for p in [3, 5, 7, 11] {
            for m in 2..=7 {
                for punctured in [false, true] {
                    match predict(p, m, punctured) {
                        Ok(c) => {
                            let total: u64 = c.counts.values().sum();
                            assert_eq!(total + 1, u64::from(p).pow(m));
                            assert!(c.counts.keys().all(|&w| w > 0));
                        }
                        Err(e) => {
                            assert_eq!(e, Error::EmptyDefiningSet);
                            assert_eq!((m, p % 4), (2, 1));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unsupported_parameters() {
        assert!(matches!(predict(3, 1, false), Err(Error::Unsupported(_))));
        assert_eq!(predict(4, 3, false), Err(Error::NotOddPrime(4)));
        assert_eq!(predict(5, 2, true), Err(Error::EmptyDefiningSet));
    }

    #[test]
    fn sign_matches_measured_length() {
        for (p, m) in [(3, 2), (3, 4), (5, 4), (7, 2), (7, 4)] {
            let c = predict(p, m, false).unwrap();
            let expected = if (m / 2) * ((p - 1) / 2).pow(2) % 2 == 0 {
                1
            } else {
                -1
            };
            assert_eq!(c.sign, Some(expected));
            let ctx = FieldCtx::new(p, m).unwrap();
            let n = build_defining_set(&ctx).unwrap().len() as u64;
            assert_eq!(n, c.n);
        }
    }

    #[test]
    fn small_grid_verifies() {
        for (p, m) in [(3, 2), (3, 3), (3, 4), (5, 3), (7, 2)] {
            for punctured in [false, true] {
                let r = verify(p, m, punctured, Limits::default()).unwrap();
                assert!(r.pass, "{p} {m} {punctured}: {r:?}");
            }
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let pred = predict(3, 3, false).unwrap();
        let ctx = FieldCtx::new(3, 3).unwrap();
        let wd = square_trace_code(&ctx, true)
            .unwrap()
            .weight_distribution()
            .unwrap();
        let r = compare(&pred, &wd, true);
        assert!(!r.pass);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["theorem"], "odd-full");
        assert!(json["rows"][0]["predicted"].is_u64());
    }

    #[test]
    fn ratio_condition() {
        let wd = |pairs: &[(usize, u64)]| WeightDistribution {
            n: 0,
            k: 0,
            counts: pairs.iter().copied().collect(),
        };
        let r = ashikhmin_barg(&wd(&[(0, 1), (48, 90), (54, 80), (60, 72)]), 3).unwrap();
        assert!(r.holds);
        assert_eq!(r.ratio(), (4, 5));
        let r = ashikhmin_barg(&wd(&[(0, 1), (4, 12), (6, 8), (8, 6)]), 3).unwrap();
        assert!(!r.holds);
        assert_eq!(r.ratio(), (1, 2));
        // boundary: exactly (p-1)/p does not pass
        assert!(!ashikhmin_barg(&wd(&[(2, 1), (3, 1)]), 3).unwrap().holds);
        assert!(ashikhmin_barg(&wd(&[(0, 1), (7, 5)]), 5).unwrap().holds);
        assert!(ashikhmin_barg(&wd(&[(0, 1)]), 3).is_none());
    }

    #[test]
    fn griesmer() {
        assert_eq!(griesmer_min_length(5, 4, 20), 26);
        assert_eq!(griesmer_min_length(3, 5, 24), 37);
        assert_eq!(griesmer_min_length(7, 6, 1), 6);
        assert!(meets_griesmer(5, 26, 4, 20));
        assert!(!meets_griesmer(3, 40, 5, 24));
        let ctx = FieldCtx::new(5, 4).unwrap();
        assert!(is_griesmer_optimal(&square_trace_code(&ctx, true).unwrap()).unwrap());
    }
}
