//! Planar functions on GF(q) and the codes `C_{D_f}` they define.

use crate::code::{
    build_code, build_defining_set, puncture_representatives, CodeReport, DefiningSet, SetKind,
    TraceCode,
};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// The catalogued planar families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `x^2`
    Square,
    /// `x^{p^k + 1}`, planar when `m / gcd(m, k)` is odd
    DembowskiOstrom { k: u32 },
    /// `x^{(3^k + 1)/2}` over GF(3^m), k odd, `gcd(m, k) = 1`
    CoulterMatthews { k: u32 },
    /// `x^10 - u x^6 - u^2 x^2` over GF(3^m), m odd; `u` is an element encoding
    DingYuan { u: u64 },
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Family {
    pub const NAMES: [&'static str; 4] = [
        "square",
        "dembowski-ostrom",
        "coulter-matthews",
        "ding-yuan",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Square => "square",
            Family::DembowskiOstrom { .. } => "dembowski-ostrom",
            Family::CoulterMatthews { .. } => "coulter-matthews",
            Family::DingYuan { .. } => "ding-yuan",
        }
    }

    pub fn params(&self) -> BTreeMap<String, u64> {
        match *self {
            Family::Square => BTreeMap::new(),
            Family::DembowskiOstrom { k } | Family::CoulterMatthews { k } => {
                BTreeMap::from([("k".to_string(), u64::from(k))])
            }
            Family::DingYuan { u } => BTreeMap::from([("u".to_string(), u)]),
        }
    }

    /// Builds a family from its name and an optional `key=value` parameter.
    /// A bare number is accepted for the single parameter.
    pub fn from_parts(name: &str, param: Option<&str>) -> Result<Self> {
        let value = |key: &str| -> Result<u64> {
            let raw =
                param.ok_or_else(|| Error::Invalid(format!("{name} needs parameter {key}")))?;
            let raw = match raw.split_once('=') {
                Some((k, v)) if k.trim() == key => v,
                Some((k, _)) => {
                    return Err(Error::Invalid(format!(
                        "{name} takes {key}, not {}",
                        k.trim()
                    )))
                }
                None => raw,
            };
            raw.trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad value for {key}: {raw}")))
        };
        let small =
            |v: u64| u32::try_from(v).map_err(|_| Error::Invalid(format!("k too large: {v}")));
        match name {
            "square" => match param {
                None => Ok(Family::Square),
                Some(_) => Err(Error::Invalid("square takes no parameter".into())),
            },
            "dembowski-ostrom" => Ok(Family::DembowskiOstrom {
                k: small(value("k")?)?,
            }),
            "coulter-matthews" => Ok(Family::CoulterMatthews {
                k: small(value("k")?)?,
            }),
            "ding-yuan" => Ok(Family::DingYuan { u: value("u")? }),
            other => Err(Error::Invalid(format!(
                "unknown family {other}; expected one of {}",
                Family::NAMES.join(", ")
            ))),
        }
    }

    /// Parses `name` or `name:key=value`.
    pub fn parse(spec: &str) -> Result<Self> {
        match spec.split_once(':') {
            Some((name, param)) => Family::from_parts(name.trim(), Some(param)),
            None => Family::from_parts(spec.trim(), None),
        }
    }

    /// `Err(reason)` when the family is not known to be planar on GF(p^m).
    pub fn admissibility(&self, p: u32, m: u32) -> std::result::Result<(), String> {
        match *self {
            Family::Square => Ok(()),
            Family::DembowskiOstrom { k } => {
                if k == 0 {
                    Err("k must be positive".into())
                } else if (m / gcd(m, k)) % 2 == 0 {
                    Err(format!("m/gcd(m,k) = {} is even", m / gcd(m, k)))
                } else {
                    Ok(())
                }
            }
            Family::CoulterMatthews { k } => {
                if p != 3 {
                    Err("requires p = 3".into())
                } else if k % 2 == 0 {
                    Err("k must be odd".into())
                } else if gcd(m, k) != 1 {
                    Err(format!("gcd(m,k) = {}", gcd(m, k)))
                } else {
                    Ok(())
                }
            }
            Family::DingYuan { .. } => {
                if p != 3 {
                    Err("requires p = 3".into())
                } else if m % 2 == 0 {
                    Err("requires odd m".into())
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Square => write!(f, "square"),
            Family::DembowskiOstrom { k } | Family::CoulterMatthews { k } => {
                write!(f, "{}:k={k}", self.name())
            }
            Family::DingYuan { u } => write!(f, "ding-yuan:u={u}"),
        }
    }
}

/// Every admissible catalogue member on GF(p^m): `k` ranges over `1..m`
/// and `u` over all of GF(q).
pub fn catalog(p: u32, m: u32) -> Vec<Family> {
    let mut out = vec![Family::Square];
    out.extend((1..m).map(|k| Family::DembowskiOstrom { k }));
    out.extend((1..m.max(2)).map(|k| Family::CoulterMatthews { k }));
    out.extend((0..u64::from(p).pow(m)).map(|u| Family::DingYuan { u }));
    out.retain(|f| f.admissibility(p, m).is_ok());
    out
}

/// `p^k mod modulus`.
fn reduce_exponent(p: u32, k: u32, modulus: u64) -> u64 {
    let mut r = 1u64 % modulus;
    for _ in 0..k {
        r = (r as u128 * u128::from(p) % u128::from(modulus)) as u64;
    }
    r
}

/// A catalogue function bound to a field.
#[derive(Debug, Clone)]
pub struct PlanarFunction {
    family: Family,
    ctx: FieldCtx,
    kind: Kind,
    admissible: std::result::Result<(), String>,
}

#[derive(Debug, Clone)]
enum Kind {
    Monomial(u64),
    Trinomial { u: FieldElement, u2: FieldElement },
}

impl PlanarFunction {
    /// Rejects families not known to be planar on this field.
    pub fn new(family: Family, ctx: &FieldCtx) -> Result<Self> {
        let f = PlanarFunction::unchecked(family, ctx)?;
        if let Err(reason) = &f.admissible {
            return Err(Error::Inadmissible {
                family: family.to_string(),
                reason: reason.clone(),
            });
        }
        Ok(f)
    }

    /// Builds the function regardless of admissibility; see [`Self::admissible`].
    pub fn unchecked(family: Family, ctx: &FieldCtx) -> Result<Self> {
        let q1 = ctx.q() - 1;
        // exponents are reduced mod q-1 with 0 mapped to q-1, keeping 0 -> 0
        let nonzero = |e: u64| if e == 0 { q1 } else { e };
        let kind = match family {
            Family::Square => Kind::Monomial(2),
            Family::DembowskiOstrom { k } => {
                Kind::Monomial(nonzero((reduce_exponent(ctx.p(), k, q1) + 1) % q1))
            }
            Family::CoulterMatthews { k } => {
                // 3^k is odd, so its residue mod 2(q-1) is odd too
                let r = reduce_exponent(3, k, 2 * q1);
                Kind::Monomial(nonzero((r + 1) / 2 % q1))
            }
            Family::DingYuan { u } => {
                let u = ctx.from_encoding(u)?;
                let u2 = ctx.square(&u);
                Kind::Trinomial { u, u2 }
            }
        };
        Ok(PlanarFunction {
            family,
            ctx: ctx.clone(),
            kind,
            admissible: family.admissibility(ctx.p(), ctx.m()),
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn field(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn admissible(&self) -> bool {
        self.admissible.is_ok()
    }

    pub fn inadmissible_reason(&self) -> Option<&str> {
        self.admissible.as_ref().err().map(String::as_str)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let ctx = &self.ctx;
        match &self.kind {
            Kind::Monomial(e) => ctx.pow(x, *e),
            Kind::Trinomial { u, u2 } => {
                let x2 = ctx.square(x);
                let x4 = ctx.square(&x2);
                let x6 = ctx.mul(&x4, &x2);
                let x10 = ctx.mul(&x6, &x4);
                let t = ctx.sub(&x10, &ctx.mul(u, &x6));
                ctx.sub(&t, &ctx.mul(u2, &x2))
            }
        }
    }

    /// Encodings of `f(x)` for every `x` in canonical order.
    pub fn table(&self) -> Vec<u64> {
        let ctx = &self.ctx;
        (0..ctx.q())
            .into_par_iter()
            .map(|e| ctx.encode(&self.eval(&ctx.decode(e))))
            .collect()
    }
}

/// `P_f = max_count / q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Nonlinearity {
    pub max_count: u64,
    pub q: u64,
}

impl Nonlinearity {
    /// `P_f = 1/q`.
    pub fn is_perfect(&self) -> bool {
        self.max_count == 1
    }
}

impl fmt::Display for Nonlinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.max_count, self.q)
    }
}

impl Serialize for Nonlinearity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Base-p digit arithmetic on element encodings.
struct Digits {
    p: u64,
    m: u32,
}

impl Digits {
    fn combine(&self, mut x: u64, mut y: u64, negate_y: bool) -> u64 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            let (a, b) = (x % self.p, y % self.p);
            let d = if negate_y {
                (a + self.p - b) % self.p
            } else {
                (a + b) % self.p
            };
            out += d * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        out
    }
}

/// `P_f` for a function given by its value table (see [`PlanarFunction::table`]).
pub fn nonlinearity_of_table(ctx: &FieldCtx, values: &[u64]) -> Result<Nonlinearity> {
    let q = ctx.q();
    assert_eq!(values.len() as u64, q);
    ctx.limits().check_quadratic("planarity pairs", q)?;
    let digits = Digits {
        p: u64::from(ctx.p()),
        m: ctx.m(),
    };
    let max_count = (1..q)
        .into_par_iter()
        .map(|a| {
            let mut counts = vec![0u32; q as usize];
            for x in 0..q {
                let xa = digits.combine(x, a, false);
                let b = digits.combine(values[xa as usize], values[x as usize], true);
                counts[b as usize] += 1;
            }
            counts.into_iter().max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    Ok(Nonlinearity {
        max_count: u64::from(max_count),
        q,
    })
}

pub fn nonlinearity_measure(f: &PlanarFunction) -> Result<Nonlinearity> {
    nonlinearity_of_table(&f.ctx, &f.table())
}

/// The three properties that make `D_f` a union of GF(p)* orbits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DfConditions {
    pub f0_zero: bool,
    pub even: bool,
    /// Some `h` in `1..=p-1` with `f(ax) = a^h f(x)` for all `a` in GF(p).
    pub homogeneity_exponent: Option<u32>,
}

impl DfConditions {
    pub fn all_hold(&self) -> bool {
        self.f0_zero && self.even && self.homogeneity_exponent.is_some()
    }
}

pub fn check_df_conditions(f: &PlanarFunction) -> DfConditions {
    conditions_of_table(&f.ctx, &f.table())
}

/// [`check_df_conditions`] for a function given by its value table.
pub fn conditions_of_table(ctx: &FieldCtx, table: &[u64]) -> DfConditions {
    let value = |x: &FieldElement| &table[ctx.encode(x) as usize];
    let f0_zero = table[0] == 0;
    let even = ctx.elements().all(|x| value(&ctx.neg(&x)) == value(&x));
    let p = ctx.p();
    let homogeneity_exponent = (1..p).find(|&h| {
        (0..p).all(|a| {
            let ah = crate::prime::mod_pow(a, u64::from(h), p);
            ctx.elements().all(|x| {
                let lhs = *value(&ctx.scale(a, &x));
                let rhs = ctx.encode(&ctx.scale(ah, &ctx.decode(*value(&x))));
                lhs == rhs
            })
        })
    });
    DfConditions {
        f0_zero,
        even,
        homogeneity_exponent,
    }
}

/// `D_f = {x != 0 : Tr(f(x)) = 0}`.
pub fn build_df_set(f: &PlanarFunction) -> Result<DefiningSet> {
    let ctx = &f.ctx;
    let table = f.table();
    DefiningSet::from_predicate(ctx, SetKind::Planar(f.family.to_string()), |x| {
        ctx.trace_linear(&ctx.decode(table[ctx.encode(x) as usize])) == 0
    })
}

pub fn build_df_code(f: &PlanarFunction, punctured: bool) -> Result<TraceCode> {
    let set = build_df_set(f)?;
    let set = if punctured {
        puncture_representatives(&f.ctx, &set)?
    } else {
        set
    };
    build_code(&f.ctx, &set)
}

/// `C_{D_f}` measured next to `C_D` on the same field.
#[derive(Debug, Clone, Serialize)]
pub struct PlanarReport {
    pub family: &'static str,
    pub params: BTreeMap<String, u64>,
    pub p: u32,
    pub m: u32,
    pub admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inadmissible_reason: Option<String>,
    pub conditions: DfConditions,
    #[serde(rename = "P_f")]
    pub p_f: Nonlinearity,
    pub planar: bool,
    #[serde(rename = "equal_to_CD")]
    pub equal_to_cd: bool,
    pub cd: CodeReport,
    pub cdf: CodeReport,
}

pub fn compare_with_cd(f: &PlanarFunction, punctured: bool) -> Result<PlanarReport> {
    let ctx = &f.ctx;
    let p_f = nonlinearity_measure(f)?;
    let conditions = check_df_conditions(f);
    let base = build_defining_set(ctx)?;
    let base = if punctured {
        puncture_representatives(ctx, &base)?
    } else {
        base
    };
    let cd = build_code(ctx, &base)?.report()?;
    let cdf = build_df_code(f, punctured)?.report()?;
    let equal_to_cd = cd.n == cdf.n && cd.k == cdf.k && cd.weights == cdf.weights;
    Ok(PlanarReport {
        family: f.family.name(),
        params: f.family.params(),
        p: ctx.p(),
        m: ctx.m(),
        admissible: f.admissible(),
        inadmissible_reason: f.inadmissible_reason().map(str::to_string),
        conditions,
        planar: p_f.is_perfect(),
        p_f,
        equal_to_cd,
        cd,
        cdf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, m: u32) -> FieldCtx {
        FieldCtx::new(p, m).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(Family::parse("square").unwrap(), Family::Square);
        assert_eq!(
            Family::parse("ding-yuan:u=1").unwrap(),
            Family::DingYuan { u: 1 }
        );
        assert_eq!(
            Family::from_parts("coulter-matthews", Some("3")).unwrap(),
            Family::CoulterMatthews { k: 3 }
        );
        assert!(Family::parse("dembowski-ostrom").is_err());
        assert!(Family::parse("dembowski-ostrom:u=2").is_err());
        assert!(Family::parse("cubic").is_err());
        let f = Family::DembowskiOstrom { k: 2 };
        assert_eq!(Family::parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn admissibility_rules() {
        assert!(Family::DembowskiOstrom { k: 1 }.admissibility(5, 3).is_ok());
        assert!(Family::DembowskiOstrom { k: 1 }
            .admissibility(5, 2)
            .is_err());
        assert!(Family::DembowskiOstrom { k: 2 }
            .admissibility(5, 4)
            .is_err());
        assert!(Family::DembowskiOstrom { k: 2 }.admissibility(5, 2).is_ok());
        assert!(Family::CoulterMatthews { k: 3 }.admissibility(3, 5).is_ok());
        assert!(Family::CoulterMatthews { k: 3 }
            .admissibility(3, 3)
            .is_err());
        assert!(Family::CoulterMatthews { k: 1 }
            .admissibility(5, 3)
            .is_err());
        assert!(Family::DingYuan { u: 1 }.admissibility(3, 4).is_err());
        let f = ctx(5, 2);
        assert!(matches!(
            PlanarFunction::new(Family::DingYuan { u: 1 }, &f),
            Err(Error::Inadmissible { .. })
        ));
        let g = PlanarFunction::unchecked(Family::DingYuan { u: 1 }, &f).unwrap();
        assert!(!g.admissible());
    }

    #[test]
    fn evaluation() {
        let f = ctx(3, 3);
        let sq = PlanarFunction::new(Family::Square, &f).unwrap();
        assert!(sq.eval(&f.zero()).is_zero());
        let cm = PlanarFunction::new(Family::CoulterMatthews { k: 1 }, &f).unwrap();
        for x in f.elements() {
            assert_eq!(cm.eval(&x), f.square(&x));
        }
        // x^10 - x^6 - x^2 at alpha, against plain repeated multiplication
        let dy = PlanarFunction::new(Family::DingYuan { u: 1 }, &f).unwrap();
        let a = f.alpha();
        let power = |e: usize| (0..e).fold(f.one(), |acc, _| f.mul(&acc, &a));
        let expected = f.sub(&f.sub(&power(10), &power(6)), &power(2));
        assert_eq!(dy.eval(&a), expected);
        // alpha^3 = 2 alpha + 1 with modulus x^3 + 2x + 1
        assert_eq!(f.encode(&dy.eval(&a)), f.encode(&expected));
    }

    #[test]
    fn reduced_exponents_agree() {
        let f = ctx(3, 3);
        let do2 = PlanarFunction::new(Family::DembowskiOstrom { k: 2 }, &f).unwrap();
        let cm5 = PlanarFunction::unchecked(Family::CoulterMatthews { k: 5 }, &f).unwrap();
        for x in f.elements() {
            assert_eq!(do2.eval(&x), f.pow(&x, 10));
            assert_eq!(cm5.eval(&x), f.pow(&x, 122));
        }
    }

    #[test]
    fn square_is_perfect_and_identity_is_not() {
        for (p, m) in [(3, 2), (5, 2), (7, 1)] {
            let f = ctx(p, m);
            let sq = PlanarFunction::new(Family::Square, &f).unwrap();
            let n = nonlinearity_measure(&sq).unwrap();
            assert!(n.is_perfect());
            assert_eq!(n.to_string(), format!("1/{}", f.q()));
        }
        let f = ctx(3, 3);
        let identity: Vec<u64> = (0..f.q()).collect();
        let n = nonlinearity_of_table(&f, &identity).unwrap();
        assert_eq!(n.max_count, f.q());
    }

    #[test]
    fn planar_ceiling() {
        let limits = crate::field::Limits {
            enumeration: 1 << 20,
            planar: 100,
        };
        let f = FieldCtx::with_limits(3, 5, limits).unwrap();
        let sq = PlanarFunction::new(Family::Square, &f).unwrap();
        assert!(matches!(
            nonlinearity_measure(&sq),
            Err(Error::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn conditions() {
        let f = ctx(3, 3);
        let c = check_df_conditions(&PlanarFunction::new(Family::Square, &f).unwrap());
        assert_eq!(
            c,
            DfConditions {
                f0_zero: true,
                even: true,
                homogeneity_exponent: Some(2)
            }
        );
        let c = check_df_conditions(&PlanarFunction::new(Family::DingYuan { u: 1 }, &f).unwrap());
        assert_eq!(c.homogeneity_exponent, Some(2));
        assert!(c.all_hold());
        let g = ctx(5, 3);
        let c = check_df_conditions(
            &PlanarFunction::new(Family::DembowskiOstrom { k: 1 }, &g).unwrap(),
        );
        assert_eq!(c.homogeneity_exponent, Some(2));
        let identity: Vec<u64> = (0..f.q()).collect();
        let c = conditions_of_table(&f, &identity);
        assert!(c.f0_zero && !c.even);
        assert_eq!(c.homogeneity_exponent, Some(1));
    }

    #[test]
    fn square_reproduces_cd() {
        let f = ctx(3, 3);
        let sq = PlanarFunction::new(Family::Square, &f).unwrap();
        assert_eq!(
            build_df_set(&sq).unwrap().encodings(),
            build_defining_set(&f).unwrap().encodings()
        );
        let r = compare_with_cd(&sq, false).unwrap();
        assert!(r.equal_to_cd && r.planar);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["P_f"], "1/27");
        assert_eq!(json["equal_to_CD"], true);
        assert_eq!(json["cdf"]["kind"], "planar:square");
    }

    #[test]
    fn catalog_contents() {
        let c = catalog(3, 5);
        assert!(c.contains(&Family::CoulterMatthews { k: 3 }));
        assert!(c.contains(&Family::DembowskiOstrom { k: 4 }));
        assert_eq!(
            c.iter()
                .filter(|f| matches!(f, Family::DingYuan { .. }))
                .count(),
            243
        );
        let c = catalog(5, 3);
        assert_eq!(c.len(), 3);
    }
}
