//! Built-in consistency checks: the worked golden values at `r = 3` plus
//! cross-route and identity sweeps. `Fast` keeps every sweep to `n <= 40`;
//! `Full` runs them to `n <= 120`.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::carlitz::CarlitzContext;
use crate::error::Result;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::special::{normalized, support_step, Family, Method};
use crate::stirling::{
    assoc1_via_compositions, assoc2_via_compositions, bernoulli_carlitz_from_stirling, cauchy_carlitz_from_stirling,
    stirling_normalized, Flavor, StirlingKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

impl Level {
    pub fn n_max(self) -> u64 {
        match self {
            Level::Fast => 40,
            Level::Full => 120,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn run_check(name: &str, f: impl FnOnce() -> Result<std::result::Result<String, String>>) -> CheckOutcome {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome { name: name.to_string(), passed, detail, elapsed: start.elapsed() }
}

fn frac(a: Poly, b: Poly) -> Result<RatFunc> {
    RatFunc::new(a, b)
}

/// `(label, family, N, n, expected normalized value)`.
pub type GoldenValue = (String, Family, u32, u64, RatFunc);

/// The worked examples at `r = 3`.
pub fn golden_values(ctx: &CarlitzContext) -> Result<Vec<GoldenValue>> {
    let f = ctx.field();
    let (d2, d3, d4) = (ctx.big_d(2)?, ctx.big_d(3)?, ctx.big_d(4)?);
    let (l3, l4, l5) = (ctx.big_l(3)?, ctx.big_l(4)?, ctx.big_l(5)?);
    let q = frac(d2.clone(), d3.clone())?;
    let mut out = vec![
        ("BC_{2,18}".into(), Family::Bc, 2, 18, -&q),
        ("BC_{2,36}".into(), Family::Bc, 2, 36, q.pow(2)),
        ("BC_{2,54}".into(), Family::Bc, 2, 54, -&q.pow(3)),
        ("BC_{2,72}".into(), Family::Bc, 2, 72, &q.pow(4) - &frac(d2.clone(), d4.clone())?),
    ];
    let ql = frac(l3.clone(), l4.clone())?;
    for k in 1..=3u64 {
        out.push((format!("CC_{{3,{}}}", 54 * k), Family::Cc, 3, 54 * k, ql.pow(k)));
    }
    let two = RatFunc::from_int(f, 2);
    let cc270 = &ql.pow(5) - &(&two * &frac(l3.pow(2), &l4 * &l5)?);
    out.push(("CC_{3,270}".into(), Family::Cc, 3, 270, cc270));
    Ok(out)
}

fn golden_check(ctx: &CarlitzContext) -> Result<std::result::Result<String, String>> {
    let mut count = 0;
    for (label, family, big_n, n, expect) in golden_values(ctx)? {
        for m in Method::ALL {
            let got = normalized(ctx, family, big_n, n, m)?;
            if got != expect {
                return Ok(Err(format!("{label} via {m}: got {got}, expected {expect}")));
            }
            count += 1;
        }
    }
    Ok(Ok(format!("{count} route evaluations")))
}

fn route_sweep(r: u32, n_max: u64) -> Result<std::result::Result<String, String>> {
    let ctx = CarlitzContext::with_order(r)?;
    let mut cells = 0;
    for family in [Family::Bc, Family::Cc] {
        for big_n in 0..=2u32 {
            let step = support_step(&ctx, big_n)?;
            for n in 0..=n_max {
                let reference = normalized(&ctx, family, big_n, n, Method::Series)?;
                for m in [Method::Composition, Method::Binomial, Method::Stirling] {
                    let got = normalized(&ctx, family, big_n, n, m)?;
                    if got != reference {
                        return Ok(Err(format!("{family} N={big_n} n={n}: {m} gave {got}, series gave {reference}")));
                    }
                }
                if reference.is_zero() != (n % step != 0) {
                    return Ok(Err(format!("{family} N={big_n} n={n}: zero pattern off the support {step}Z")));
                }
                cells += 1;
            }
        }
    }
    Ok(Ok(format!("{cells} cells, 4 routes each")))
}

fn identity_sweep(n_max: u64) -> Result<std::result::Result<String, String>> {
    let mut cells = 0;
    for r in [2u32, 3] {
        let ctx = CarlitzContext::with_order(r)?;
        for big_n in 0..=3u32 {
            let rn = ctx.r_pow(big_n)?;
            for n in 0..=n_max {
                for k in 1..=8u64 {
                    let m = n + k * rn;
                    let s2 = stirling_normalized(&ctx, StirlingKind::Second, m, k, Flavor::Associated(big_n))?;
                    let sum2 = assoc2_via_compositions(&ctx, big_n, n, k)?;
                    if sum2 != s2 {
                        return Ok(Err(format!("second kind r={r} N={big_n} n={n} k={k}: sum {sum2}, Stirling {s2}")));
                    }
                    let s1 = stirling_normalized(&ctx, StirlingKind::First, m, k, Flavor::Associated(big_n))?;
                    let sum1 = assoc1_via_compositions(&ctx, big_n, n, k)?;
                    if sum1 != s1 {
                        return Ok(Err(format!("first kind r={r} N={big_n} n={n} k={k}: sum {sum1}, Stirling {s1}")));
                    }
                    cells += 1;
                }
            }
        }
    }
    Ok(Ok(format!("{cells} (r, N, n, k) cells")))
}

fn worked_stirling(ctx: &CarlitzContext, k_two_term: u64) -> Result<std::result::Result<String, String>> {
    let f = ctx.field();
    let (d2, d3) = (ctx.big_d(2)?, ctx.big_d(3)?);
    for k in 1..=18u64 {
        let got = stirling_normalized(ctx, StirlingKind::Second, 18 + 9 * k, k, Flavor::Associated(2))?;
        let expect = RatFunc::from_int(f, k as i64).div_poly(&(&d2.pow(k - 1) * &d3))?;
        if got != expect {
            return Ok(Err(format!("second kind, k={k}: got {got}, expected {expect}")));
        }
    }
    let (l3, l4, l5) = (ctx.big_l(3)?, ctx.big_l(4)?, ctx.big_l(5)?);
    for k in 1..=k_two_term {
        let got = stirling_normalized(ctx, StirlingKind::First, 270 + 27 * k, k, Flavor::Associated(3))?;
        let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
        // k(k-1) / (L3^{k-2} L4 L5) = k(k-1) L3^2 / (L3^k L4 L5), defined at k = 1 as 0.
        let mut expect = RatFunc::new(l3.pow(2).scale(f.from_int(sign * (k * (k - 1)) as i64)), &(&l3.pow(k) * &l4) * &l5)?;
        if k >= 5 {
            let c = ctx.binom(k, 5);
            let extra = RatFunc::new(l3.pow(5).scale(f.mul(c, f.from_int(sign))), &l3.pow(k) * &l4.pow(5))?;
            expect = &expect + &extra;
        }
        if got != expect {
            return Ok(Err(format!("first kind, k={k}: got {got}, expected {expect}")));
        }
    }
    Ok(Ok(format!("18 second-kind and {k_two_term} first-kind values")))
}

fn kk_reductions(ctx: &CarlitzContext, n_max: u64) -> Result<std::result::Result<String, String>> {
    for n in 0..=n_max {
        let pi = ctx.carlitz_factorial(n)?;
        let bc = normalized(ctx, Family::Bc, 0, n, Method::Series)?.mul_poly(&pi);
        let kk = bernoulli_carlitz_from_stirling(ctx, n)?;
        if bc != kk {
            return Ok(Err(format!("BC_{n}: series {bc}, Stirling formula {kk}")));
        }
        let cc = normalized(ctx, Family::Cc, 0, n, Method::Series)?.mul_poly(&pi);
        let kk = cauchy_carlitz_from_stirling(ctx, n)?;
        if cc != kk {
            return Ok(Err(format!("CC_{n}: series {cc}, Stirling formula {kk}")));
        }
    }
    Ok(Ok(format!("n = 0..={n_max}")))
}

/// Run every check at `level`, in a fixed order.
pub fn run(level: Level) -> Vec<CheckOutcome> {
    let n_max = level.n_max();
    let ctx3 = match CarlitzContext::with_order(3) {
        Ok(c) => c,
        Err(e) => {
            return vec![CheckOutcome {
                name: "setup".into(),
                passed: false,
                detail: e.to_string(),
                elapsed: Duration::ZERO,
            }]
        }
    };
    let k_two_term = match level {
        Level::Fast => 30,
        Level::Full => 270,
    };
    vec![
        run_check("golden values (r=3)", || golden_check(&ctx3)),
        run_check("worked Stirling identities (r=3)", || worked_stirling(&ctx3, k_two_term)),
        run_check(&format!("four-route sweep r=3, n<={n_max}"), || route_sweep(3, n_max)),
        run_check(&format!("four-route sweep r=2, n<={n_max}"), || route_sweep(2, n_max)),
        run_check(&format!("composition identities, n<={n_max}"), || identity_sweep(n_max)),
        run_check(&format!("N=0 Stirling formulas (r=3), n<={n_max}"), || kk_reductions(&ctx3, n_max)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_level_passes() {
        for outcome in run(Level::Fast) {
            assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
        }
    }
}
