//! Truncated Bernoulli-Carlitz numbers `BC_{N,n}` and Cauchy-Carlitz numbers
//! `CC_{N,n}`, each by four routes:
//!
//! * `series`: `Π(n) [x^n] 1/h` with `h` the normalized tail of `e_C` / `log_C`;
//! * `composition`: sums over `i_j >= 1` with `Σ r^{N+i_j} = n + k r^N`;
//! * `binomial`: the same over `i_j >= 0`, each `k`-term weighted by `C(n+1, k+1)`;
//! * `stirling`: the binomial sum with the inner composition sums replaced by
//!   associated Stirling-Carlitz numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::carlitz::CarlitzContext;
use crate::compositions::enumerate_power_compositions;
use crate::error::{overflow, Error, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::series::{tail_quotient, SeriesKind, SparseSeries};
use crate::stirling::{stirling_normalized, Flavor, StirlingKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Bc,
    Cc,
}

impl Family {
    pub fn series(self) -> SeriesKind {
        match self {
            Family::Bc => SeriesKind::Exp,
            Family::Cc => SeriesKind::Log,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Bc => "bc",
            Family::Cc => "cc",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "bc" => Ok(Family::Bc),
            "cc" => Ok(Family::Cc),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Composition,
    Binomial,
    Stirling,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Series, Method::Composition, Method::Binomial, Method::Stirling];

    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Composition => "composition",
            Method::Binomial => "binomial",
            Method::Stirling => "stirling",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecialNumberQuery {
    pub family: Family,
    pub big_n: u32,
    pub n: u64,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialNumberResult {
    pub query: SpecialNumberQuery,
    /// `BC_{N,n}` or `CC_{N,n}`.
    pub value: RatFunc,
    /// `value / Π(n)`.
    pub normalized: RatFunc,
    pub elapsed: Duration,
}

/// Memoized `1/h` per `(kind, N)`, regrown geometrically.
#[derive(Default)]
pub(crate) struct InverseCache {
    inverses: Mutex<HashMap<(SeriesKind, u32), Arc<SparseSeries>>>,
}

fn inverse_tail_quotient(ctx: &CarlitzContext, kind: SeriesKind, big_n: u32, order: u64) -> Result<Arc<SparseSeries>> {
    let cache = &ctx.inverse_cache().inverses;
    if let Some(s) = cache.lock().unwrap().get(&(kind, big_n)) {
        if s.order() >= order {
            return Ok(s.clone());
        }
    }
    let previous = cache.lock().unwrap().get(&(kind, big_n)).map(|s| s.order()).unwrap_or(0);
    let order = order.max(previous.saturating_mul(2)).max(16);
    let inv = Arc::new(tail_quotient(ctx, kind, big_n, order)?.inv()?);
    cache.lock().unwrap().insert((kind, big_n), inv.clone());
    Ok(inv)
}

/// `[x^n] 1/h`, i.e. `BC_{N,n}/Π(n)` or `CC_{N,n}/Π(n)`.
pub fn normalized_series(ctx: &CarlitzContext, family: Family, big_n: u32, n: u64) -> Result<RatFunc> {
    Ok(inverse_tail_quotient(ctx, family.series(), big_n, n)?.coeff(n))
}

/// `P_N` in the weights: `D_N` for BC, `L_N` for CC.
fn level_poly(ctx: &CarlitzContext, family: Family, i: u32) -> Result<Poly> {
    match family {
        Family::Bc => ctx.big_d(i),
        Family::Cc => ctx.big_l(i),
    }
}

/// `Σ_k c_k (-P_N)^k Σ_{i_j >= min_part} sign / (P_{N+i_1} ... P_{N+i_k})`.
///
/// A part `i_j = 0` contributes the factor `-P_N/P_N = -1`, so every term is
/// `± c_k · mult · Π_{i>=1} (P_N/P_{N+i})^{m_i}` (with `(-1)^i` per part for
/// CC). Terms are bucketed by the multiset of positive parts and their
/// `F_p` scalars summed before any rational-function arithmetic.
fn composition_route(
    ctx: &CarlitzContext,
    family: Family,
    big_n: u32,
    n: u64,
    min_part: u32,
    coeff: impl Fn(u64) -> u32,
) -> Result<RatFunc> {
    let field = ctx.field();
    let p = ctx.p();
    let rn = ctx.r_pow(big_n)?;
    let w1 = ctx.r_pow(big_n + 1)? - rn;
    // With every part >= 1 each contributes at least r^{N+1} - r^N.
    let k_max = if min_part == 0 { n } else { n / w1 };
    let mut buckets: BTreeMap<Vec<(u32, u64)>, u32> = BTreeMap::new();
    for k in 1..=k_max {
        rn.checked_mul(k).and_then(|x| x.checked_add(n)).ok_or_else(|| overflow("n + k r^N"))?;
        let c = coeff(k) % p;
        if c == 0 {
            continue;
        }
        for pc in enumerate_power_compositions(ctx, big_n, n, k, min_part)? {
            let mut odd = k % 2 == 1;
            if family == Family::Cc {
                odd ^= pc.parts.iter().map(|&i| i as u64).sum::<u64>() % 2 == 1;
            }
            let mut s = (c as u64 * pc.multiplicity_mod_p as u64 % p as u64) as u32;
            if odd {
                s = field.neg(s);
            }
            if s == 0 {
                continue;
            }
            let key: Vec<(u32, u64)> = pc.counts().into_iter().filter(|&(i, _)| i > 0).collect();
            let slot = buckets.entry(key).or_insert(0);
            *slot = field.add(*slot, s);
        }
    }
    let base = level_poly(ctx, family, big_n)?;
    let mut acc = RatFunc::zero(field);
    for (counts, s) in buckets {
        if s == 0 {
            continue;
        }
        let mut den = Poly::one(field);
        let mut total = 0u64;
        for &(i, m) in &counts {
            den = &den * &level_poly(ctx, family, big_n + i)?.pow(m);
            total += m;
        }
        let term = RatFunc::new(base.pow(total).scale(s), den)?;
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Normalized value by the composition sum over `i_j >= 1`.
pub fn normalized_composition(ctx: &CarlitzContext, family: Family, big_n: u32, n: u64) -> Result<RatFunc> {
    if n == 0 {
        return Ok(RatFunc::one(ctx.field()));
    }
    composition_route(ctx, family, big_n, n, 1, |_| 1)
}

/// Normalized value by the binomially weighted composition sum over `i_j >= 0`.
pub fn normalized_binomial(ctx: &CarlitzContext, family: Family, big_n: u32, n: u64) -> Result<RatFunc> {
    if n == 0 {
        return Ok(RatFunc::one(ctx.field()));
    }
    composition_route(ctx, family, big_n, n, 0, |k| ctx.binom(n + 1, k + 1))
}

/// Normalized value by the associated Stirling-Carlitz sum
/// `Σ_k C(n+1,k+1) (±P_N)^k Π(k)/Π(n + k r^N) · S(n + k r^N, k)_{>=N}`.
pub fn normalized_stirling(ctx: &CarlitzContext, family: Family, big_n: u32, n: u64) -> Result<RatFunc> {
    let field = ctx.field();
    if n == 0 {
        return Ok(RatFunc::one(field));
    }
    let rn = ctx.r_pow(big_n)?;
    let kind = match family {
        Family::Bc => StirlingKind::Second,
        Family::Cc => StirlingKind::First,
    };
    let base = level_poly(ctx, family, big_n)?;
    let mut acc = RatFunc::zero(field);
    for k in 1..=n {
        let c = ctx.binom(n + 1, k + 1);
        if c == 0 {
            continue;
        }
        let m = rn.checked_mul(k).and_then(|x| x.checked_add(n)).ok_or_else(|| overflow("n + k r^N"))?;
        let s = stirling_normalized(ctx, kind, m, k, Flavor::Associated(big_n))?;
        if s.is_zero() {
            continue;
        }
        // BC: (-D_N)^k. CC: (-1)^{Nk} (-L_N)^k.
        let odd = match family {
            Family::Bc => k % 2 == 1,
            Family::Cc => (k + big_n as u64 * k) % 2 == 1,
        };
        let c = if odd { field.neg(c) } else { c };
        acc = &acc + &s.mul_poly(&base.pow(k)).scale(c);
    }
    Ok(acc)
}

pub fn normalized(ctx: &CarlitzContext, family: Family, big_n: u32, n: u64, method: Method) -> Result<RatFunc> {
    match method {
        Method::Series => normalized_series(ctx, family, big_n, n),
        Method::Composition => normalized_composition(ctx, family, big_n, n),
        Method::Binomial => normalized_binomial(ctx, family, big_n, n),
        Method::Stirling => normalized_stirling(ctx, family, big_n, n),
    }
}

fn with_factorial(ctx: &CarlitzContext, normalized: &RatFunc, n: u64) -> Result<RatFunc> {
    if normalized.is_zero() {
        return Ok(normalized.clone());
    }
    Ok(normalized.mul_poly(&ctx.carlitz_factorial(n)?))
}

pub fn bc_series(ctx: &CarlitzContext, big_n: u32, n: u64) -> Result<RatFunc> {
    with_factorial(ctx, &normalized_series(ctx, Family::Bc, big_n, n)?, n)
}

pub fn bc_composition(ctx: &CarlitzContext, big_n: u32, n: u64) -> Result<RatFunc> {
    with_factorial(ctx, &normalized_composition(ctx, Family::Bc, big_n, n)?, n)
}

pub fn bc_binomial(ctx: &CarlitzContext, big_n: u32, n: u64) -> Result<RatFunc> {
    with_factorial(ctx, &normalized_binomial(ctx, Family::Bc, big_n, n)?, n)
}

pub fn bc_stirling(ctx: &CarlitzContext, big_n: u32, n: u64) -> Result<RatFunc> {
    with_factorial(ctx, &normalized_stirling(ctx, Family::Bc, big_n, n)?, n)
}

pub fn cc_series(ctx: &CarlitzContext, big_n: u32, n: u64) -> Result<RatFunc> {
    with_factorial(ctx, &normalized_series(ctx, Family::Cc, big_n, n)?, n)
}

pub fn cc_composition(ctx: &CarlitzContext, big_n: u32, n: u64) -> Result<RatFunc> {
    with_factorial(ctx, &normalized_composition(ctx, Family::Cc, big_n, n)?, n)
}

pub fn cc_binomial(ctx: &CarlitzContext, big_n: u32, n: u64) -> Result<RatFunc> {
    with_factorial(ctx, &normalized_binomial(ctx, Family::Cc, big_n, n)?, n)
}

pub fn cc_stirling(ctx: &CarlitzContext, big_n: u32, n: u64) -> Result<RatFunc> {
    with_factorial(ctx, &normalized_stirling(ctx, Family::Cc, big_n, n)?, n)
}

/// Dispatch one query, filling both the value and its `Π(n)`-normalized form.
pub fn compute(ctx: &CarlitzContext, query: SpecialNumberQuery) -> Result<SpecialNumberResult> {
    let start = Instant::now();
    let normalized = normalized(ctx, query.family, query.big_n, query.n, query.method)?;
    let value = with_factorial(ctx, &normalized, query.n)?;
    Ok(SpecialNumberResult { query, value, normalized, elapsed: start.elapsed() })
}

/// `r^N (r - 1)`: every exponent of `h` (hence of `1/h`) is a multiple of it.
pub fn support_step(ctx: &CarlitzContext, big_n: u32) -> Result<u64> {
    ctx.r_pow(big_n)?.checked_mul(ctx.r() - 1).ok_or_else(|| overflow("r^N (r-1)"))
}

/// The sufficient vanishing conditions: `r^N (r - 1) > n`, or `r ∤ n` when
/// `N >= 1`. At `N = 0` the support step is `r - 1`, so `r ∤ n` alone does
/// not force a zero there (e.g. `BC_{0,1} = 1/[1]` over `F_2`).
pub fn forced_zero(ctx: &CarlitzContext, big_n: u32, n: u64) -> Result<bool> {
    let step = support_step(ctx, big_n)?;
    Ok(n > 0 && ((big_n >= 1 && !n.is_multiple_of(ctx.r())) || step > n))
}
