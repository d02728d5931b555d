//! Stirling-Carlitz numbers of both kinds, complete and incomplete.
//!
//! `{n,k}_C` (second kind) and `[n,k]_C` (first kind) are read off the
//! `k`-th power of a base series `B(z)`:
//!
//! `B(z)^k / Π(k) = Σ_n value(n, k) z^n / Π(n)`
//!
//! with `B = e_C` / `log_C` (complete), the tail from index `m` (associated,
//! `>= m`) or the partial sum through index `m` (restricted, `<= m`).
//! The *normalized* value `Π(k)/Π(n) · value(n, k)` is the plain coefficient
//! of `z^n` in `B^k`, which is what the sums in the composition identities
//! produce directly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::carlitz::CarlitzContext;
use crate::compositions::{composition_sum, enumerate_power_compositions};
use crate::error::{overflow, Error, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::series::{partial_sum, tail_from, SeriesKind, SparseSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StirlingKind {
    /// `[n,k]_C`, powers of the Carlitz logarithm.
    First,
    /// `{n,k}_C`, powers of the Carlitz exponential.
    Second,
}

impl StirlingKind {
    pub fn series(self) -> SeriesKind {
        match self {
            StirlingKind::First => SeriesKind::Log,
            StirlingKind::Second => SeriesKind::Exp,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "flavor", content = "m")]
pub enum Flavor {
    Complete,
    /// Tail from index `m` on (`>= m`).
    Associated(u32),
    /// Partial sum through index `m` (`<= m`).
    Restricted(u32),
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Complete => f.write_str("complete"),
            Flavor::Associated(m) => write!(f, "assoc>={m}"),
            Flavor::Restricted(m) => write!(f, "restricted<={m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingCarlitzValue {
    pub n: u64,
    pub k: u64,
    pub kind: StirlingKind,
    pub flavor: Flavor,
    pub value: RatFunc,
}

/// Sequentially built powers `b^0, b^1, ..` of a shifted base series `b`,
/// all truncated at `trunc`.
pub(crate) struct PowerTable {
    base: SparseSeries,
    powers: Vec<SparseSeries>,
}

impl PowerTable {
    fn new(base: SparseSeries) -> PowerTable {
        let one = SparseSeries::one(base.field(), base.order());
        PowerTable { base, powers: vec![one] }
    }

    fn trunc(&self) -> u64 {
        self.base.order()
    }

    fn power(&mut self, k: usize) -> &SparseSeries {
        while self.powers.len() <= k {
            let next = self.powers.last().unwrap().mul(&self.base).expect("same field");
            self.powers.push(next);
        }
        &self.powers[k]
    }
}

pub(crate) type PowerKey = (SeriesKind, Flavor);

/// Per-context memo of power tables, keyed by base series.
#[derive(Default)]
pub(crate) struct PowerCache {
    tables: Mutex<HashMap<PowerKey, Arc<Mutex<PowerTable>>>>,
}

/// Smallest exponent of the base series (`r^m` for associated flavors, else 1).
fn base_valuation(ctx: &CarlitzContext, flavor: Flavor) -> Result<u64> {
    match flavor {
        Flavor::Associated(m) => ctx.r_pow(m),
        _ => Ok(1),
    }
}

/// The base series of a flavor through `z^order`.
pub fn base_series(ctx: &CarlitzContext, kind: SeriesKind, flavor: Flavor, order: u64) -> Result<SparseSeries> {
    match flavor {
        Flavor::Complete => tail_from(ctx, kind, 0, order),
        Flavor::Associated(m) => tail_from(ctx, kind, m, order),
        Flavor::Restricted(m) => partial_sum(ctx, kind, m as i64, order),
    }
}

/// `base / z^{valuation}` exact through `x^trunc`.
fn shifted_base(ctx: &CarlitzContext, kind: SeriesKind, flavor: Flavor, trunc: u64) -> Result<SparseSeries> {
    let v = base_valuation(ctx, flavor)?;
    let order = trunc.checked_add(v).ok_or_else(|| overflow("series order"))?;
    base_series(ctx, kind, flavor, order)?.shift_down(v)
}

/// Coefficient of `x^t` in `shifted_base^k`, from the context's memoized tables.
fn shifted_power_coeff(ctx: &CarlitzContext, kind: SeriesKind, flavor: Flavor, k: u64, t: u64) -> Result<RatFunc> {
    let cache = ctx.power_cache();
    let entry = {
        let mut tables = cache.tables.lock().unwrap();
        match tables.get(&(kind, flavor)) {
            Some(e) => e.clone(),
            None => {
                let table = PowerTable::new(shifted_base(ctx, kind, flavor, t.max(16))?);
                let e = Arc::new(Mutex::new(table));
                tables.insert((kind, flavor), e.clone());
                e
            }
        }
    };
    let mut table = entry.lock().unwrap();
    if table.trunc() < t {
        // Regrow geometrically so that sweeps over n rebuild only O(log n) times.
        let trunc = t.max(table.trunc().saturating_mul(2));
        *table = PowerTable::new(shifted_base(ctx, kind, flavor, trunc)?);
    }
    let k = usize::try_from(k).map_err(|_| overflow("k"))?;
    Ok(table.power(k).coeff(t))
}

/// `Π(k)/Π(n) · value(n, k)`: the coefficient of `z^n` in `B(z)^k`.
pub fn stirling_normalized(
    ctx: &CarlitzContext,
    kind: StirlingKind,
    n: u64,
    k: u64,
    flavor: Flavor,
) -> Result<RatFunc> {
    let field = ctx.field();
    if k == 0 {
        return Ok(if n == 0 { RatFunc::one(field) } else { RatFunc::zero(field) });
    }
    let v = base_valuation(ctx, flavor)?;
    let lowest = k.checked_mul(v).ok_or_else(|| overflow("k r^m"))?;
    if n < lowest {
        return Ok(RatFunc::zero(field));
    }
    shifted_power_coeff(ctx, kind.series(), flavor, k, n - lowest)
}

/// Same coefficient by binary powering of the base series (no caching).
pub fn stirling_normalized_binary(
    ctx: &CarlitzContext,
    kind: StirlingKind,
    n: u64,
    k: u64,
    flavor: Flavor,
) -> Result<RatFunc> {
    let field = ctx.field();
    if k == 0 {
        return Ok(if n == 0 { RatFunc::one(field) } else { RatFunc::zero(field) });
    }
    let v = base_valuation(ctx, flavor)?;
    let lowest = k.checked_mul(v).ok_or_else(|| overflow("k r^m"))?;
    if n < lowest {
        return Ok(RatFunc::zero(field));
    }
    let t = n - lowest;
    Ok(shifted_base(ctx, kind.series(), flavor, t)?.pow(k).coeff(t))
}

/// `Π(n)/Π(k)` as a reduced fraction.
pub fn factorial_ratio(ctx: &CarlitzContext, n: u64, k: u64) -> Result<RatFunc> {
    RatFunc::new(ctx.carlitz_factorial(n)?, ctx.carlitz_factorial(k)?)
}

/// Stirling-Carlitz number of the given kind and flavor.
pub fn stirling_c(ctx: &CarlitzContext, kind: StirlingKind, n: u64, k: u64, flavor: Flavor) -> Result<RatFunc> {
    let norm = stirling_normalized(ctx, kind, n, k, flavor)?;
    if norm.is_zero() {
        return Ok(norm);
    }
    Ok(&norm * &factorial_ratio(ctx, n, k)?)
}

/// `{n,k}_{C,flavor}`.
pub fn stirling2_c(ctx: &CarlitzContext, n: u64, k: u64, flavor: Flavor) -> Result<RatFunc> {
    stirling_c(ctx, StirlingKind::Second, n, k, flavor)
}

/// `[n,k]_{C,flavor}`.
pub fn stirling1_c(ctx: &CarlitzContext, n: u64, k: u64, flavor: Flavor) -> Result<RatFunc> {
    stirling_c(ctx, StirlingKind::First, n, k, flavor)
}

pub fn stirling_value(
    ctx: &CarlitzContext,
    kind: StirlingKind,
    n: u64,
    k: u64,
    flavor: Flavor,
) -> Result<StirlingCarlitzValue> {
    Ok(StirlingCarlitzValue { n, k, kind, flavor, value: stirling_c(ctx, kind, n, k, flavor)? })
}

/// Product `Π_j P_{N+i_j}` of `D` (exp) or `L` (log) over a multiset of parts.
pub(crate) fn denominator_product(
    ctx: &CarlitzContext,
    kind: SeriesKind,
    big_n: u32,
    counts: &[(u32, u64)],
) -> Result<Poly> {
    let mut acc = Poly::one(ctx.field());
    for &(i, m) in counts {
        let base = match kind {
            SeriesKind::Exp => ctx.big_d(big_n + i)?,
            SeriesKind::Log => ctx.big_l(big_n + i)?,
        };
        acc = &acc * &base.pow(m);
    }
    Ok(acc)
}

/// Σ over `i_j >= 0` with `Σ r^{N+i_j} = n + k r^N` of `1/(D_{N+i_1} ... D_{N+i_k})`.
pub fn assoc2_via_compositions(ctx: &CarlitzContext, big_n: u32, n: u64, k: u64) -> Result<RatFunc> {
    let comps = enumerate_power_compositions(ctx, big_n, n, k, 0)?;
    composition_sum(ctx, &comps, |pc| {
        RatFunc::recip_poly(&denominator_product(ctx, SeriesKind::Exp, big_n, &pc.counts())?)
    })
}

/// Σ over `i_j >= 0` of `(-1)^{Nk + Σ i_j} / (L_{N+i_1} ... L_{N+i_k})`.
pub fn assoc1_via_compositions(ctx: &CarlitzContext, big_n: u32, n: u64, k: u64) -> Result<RatFunc> {
    let comps = enumerate_power_compositions(ctx, big_n, n, k, 0)?;
    let field = ctx.field();
    composition_sum(ctx, &comps, |pc| {
        let exponent = big_n as u64 * k + pc.parts.iter().map(|&i| i as u64).sum::<u64>();
        let sign = if exponent.is_multiple_of(2) { 1 } else { field.neg(1) };
        Ok(RatFunc::recip_poly(&denominator_product(ctx, SeriesKind::Log, big_n, &pc.counts())?)?.scale(sign))
    })
}

/// `Σ_{j>=0} (-1)^j D_j / L_j^2 · {n, r^j - 1}_C`, truncated once `r^j - 1 > n`.
pub fn bernoulli_carlitz_from_stirling(ctx: &CarlitzContext, n: u64) -> Result<RatFunc> {
    let field = ctx.field();
    let mut acc = RatFunc::zero(field);
    for j in 0u32.. {
        let k = ctx.r_pow(j)? - 1;
        if k > n {
            break;
        }
        let s = stirling2_c(ctx, n, k, Flavor::Complete)?;
        if s.is_zero() {
            continue;
        }
        let l = ctx.big_l(j)?;
        let w = RatFunc::new(ctx.big_d(j)?, &l * &l)?;
        let w = if j % 2 == 0 { w } else { -&w };
        acc = &acc + &(&w * &s);
    }
    Ok(acc)
}

/// `Σ_{j>=0} 1/L_j · [n, r^j - 1]_C`, truncated once `r^j - 1 > n`.
pub fn cauchy_carlitz_from_stirling(ctx: &CarlitzContext, n: u64) -> Result<RatFunc> {
    let mut acc = RatFunc::zero(ctx.field());
    for j in 0u32.. {
        let k = ctx.r_pow(j)? - 1;
        if k > n {
            break;
        }
        let s = stirling1_c(ctx, n, k, Flavor::Complete)?;
        if s.is_zero() {
            continue;
        }
        acc = &acc + &s.div_poly(&ctx.big_l(j)?)?;
    }
    Ok(acc)
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    /// `complete`, `assoc:<m>` or `restricted:<m>`.
    fn from_str(s: &str) -> Result<Flavor> {
        let (name, m) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b.parse::<u32>().map_err(|_| Error::Parse(format!("bad flavor index {b:?}")))?)),
            None => (s, None),
        };
        match (name, m) {
            ("complete", None) => Ok(Flavor::Complete),
            ("assoc" | "associated", Some(m)) => Ok(Flavor::Associated(m)),
            ("restricted", Some(m)) => Ok(Flavor::Restricted(m)),
            _ => Err(Error::Parse(format!("unknown flavor {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(r: u32) -> CarlitzContext {
        CarlitzContext::with_order(r).unwrap()
    }

    #[test]
    fn boundary_values() {
        let c = ctx(3);
        for kind in [StirlingKind::First, StirlingKind::Second] {
            for n in 0..30u64 {
                assert!(stirling_c(&c, kind, n, n, Flavor::Complete).unwrap().is_one(), "n = {n}");
                if n >= 1 {
                    assert!(stirling_c(&c, kind, n, 0, Flavor::Complete).unwrap().is_zero());
                }
                assert!(stirling_c(&c, kind, n, n + 1, Flavor::Complete).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn worked_second_kind_identity() {
        let c = ctx(3);
        let (d2, d3) = (c.big_d(2).unwrap(), c.big_d(3).unwrap());
        for k in 1..=18u64 {
            let got = stirling_normalized(&c, StirlingKind::Second, 18 + 9 * k, k, Flavor::Associated(2)).unwrap();
            let den = &d2.pow(k - 1) * &d3;
            assert_eq!(got, RatFunc::from_int(c.field(), k as i64).div_poly(&den).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn worked_first_kind_identity_small_k() {
        let c = ctx(3);
        let (l3, l4, l5) = (c.big_l(3).unwrap(), c.big_l(4).unwrap(), c.big_l(5).unwrap());
        for k in 1..=4u64 {
            let got = stirling_normalized(&c, StirlingKind::First, 270 + 27 * k, k, Flavor::Associated(3)).unwrap();
            let sign = if k % 2 == 1 { 1 } else { -1 };
            // For k = 1 the factor k(k-1) vanishes, so the L_3^{-1} never materializes.
            let expect = if k == 1 {
                RatFunc::zero(c.field())
            } else {
                RatFunc::from_int(c.field(), sign * (k * (k - 1)) as i64)
                    .div_poly(&(&(&l3.pow(k - 2) * &l4) * &l5))
                    .unwrap()
            };
            assert_eq!(got, expect, "k = {k}");
        }
    }

    #[test]
    fn flavor_degeneration() {
        let c = ctx(3);
        for kind in [StirlingKind::First, StirlingKind::Second] {
            for n in 0..40u64 {
                for k in 0..6u64 {
                    let full = stirling_c(&c, kind, n, k, Flavor::Complete).unwrap();
                    assert_eq!(stirling_c(&c, kind, n, k, Flavor::Associated(0)).unwrap(), full);
                    assert_eq!(stirling_c(&c, kind, n, k, Flavor::Restricted(4)).unwrap(), full);
                }
            }
        }
    }

    #[test]
    fn cached_powers_match_binary_powering() {
        let c = ctx(2);
        for flavor in [Flavor::Complete, Flavor::Associated(1), Flavor::Restricted(2)] {
            for kind in [StirlingKind::First, StirlingKind::Second] {
                for (n, k) in [(10, 3), (30, 7), (5, 5), (50, 2), (12, 9)] {
                    assert_eq!(
                        stirling_normalized(&c, kind, n, k, flavor).unwrap(),
                        stirling_normalized_binary(&c, kind, n, k, flavor).unwrap(),
                        "{kind:?} {flavor} n={n} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn composition_sums_small_cases() {
        let c = ctx(3);
        let (d2, d3) = (c.big_d(2).unwrap(), c.big_d(3).unwrap());
        assert_eq!(assoc2_via_compositions(&c, 2, 18, 1).unwrap(), RatFunc::recip_poly(&d3).unwrap());
        assert_eq!(
            assoc2_via_compositions(&c, 2, 18, 2).unwrap(),
            RatFunc::from_int(c.field(), 2).div_poly(&(&d2 * &d3)).unwrap()
        );
        assert!(assoc2_via_compositions(&c, 2, 17, 2).unwrap().is_zero());
        assert!(assoc1_via_compositions(&c, 3, 271, 5).unwrap().is_zero());
        for big_n in 0..=2u32 {
            let rn = c.r_pow(big_n).unwrap();
            for n in [0u64, 6, 18, 24, 54] {
                for k in 1..=4u64 {
                    let m = n + k * rn;
                    assert_eq!(
                        assoc2_via_compositions(&c, big_n, n, k).unwrap(),
                        stirling_normalized(&c, StirlingKind::Second, m, k, Flavor::Associated(big_n)).unwrap()
                    );
                    assert_eq!(
                        assoc1_via_compositions(&c, big_n, n, k).unwrap(),
                        stirling_normalized(&c, StirlingKind::First, m, k, Flavor::Associated(big_n)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn flavor_parsing() {
        assert_eq!("complete".parse::<Flavor>().unwrap(), Flavor::Complete);
        assert_eq!("assoc:2".parse::<Flavor>().unwrap(), Flavor::Associated(2));
        assert_eq!("restricted:3".parse::<Flavor>().unwrap(), Flavor::Restricted(3));
        assert!("assoc".parse::<Flavor>().is_err());
    }
}
