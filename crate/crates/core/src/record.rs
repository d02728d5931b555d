//! Flat, serializable rows for computed values: one per `(family, N, n, k)`
//! cell, with numerator and denominator in the polynomial text grammar.

use serde::{Deserialize, Serialize};

use crate::carlitz::CarlitzContext;
use crate::error::Result;
use crate::ratfunc::RatFunc;
use crate::special::{compute, Family, Method, SpecialNumberQuery};
use crate::stirling::{stirling_normalized, Flavor, StirlingKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Bc,
    Cc,
    Stirling1,
    Stirling2,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Bc => "bc",
            Quantity::Cc => "cc",
            Quantity::Stirling1 => "stirling1",
            Quantity::Stirling2 => "stirling2",
        }
    }

    pub fn family(self) -> Option<Family> {
        match self {
            Quantity::Bc => Some(Family::Bc),
            Quantity::Cc => Some(Family::Cc),
            _ => None,
        }
    }

    pub fn stirling_kind(self) -> Option<StirlingKind> {
        match self {
            Quantity::Stirling1 => Some(StirlingKind::First),
            Quantity::Stirling2 => Some(StirlingKind::Second),
            _ => None,
        }
    }
}

/// One output row. Stirling rows carry `k`, `flavor`, `m` instead of `N`, `method`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub r: u32,
    pub p: u32,
    pub e: u32,
    pub family: String,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none", default)]
    pub big_n: Option<u32>,
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub flavor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub method: Option<String>,
    pub num: String,
    pub den: String,
    /// Numerator and denominator of `value / Π(n)` (BC, CC) or
    /// `Π(k)/Π(n) · value` (Stirling).
    pub normalized_num: String,
    pub normalized_den: String,
}

impl Record {
    /// Sort key `(N, n, k)`; absent fields sort first.
    pub fn sort_key(&self) -> (Option<u32>, u64, Option<u64>) {
        (self.big_n, self.n, self.k)
    }
}

fn flavor_parts(flavor: Flavor) -> (&'static str, Option<u32>) {
    match flavor {
        Flavor::Complete => ("complete", None),
        Flavor::Associated(m) => ("assoc", Some(m)),
        Flavor::Restricted(m) => ("restricted", Some(m)),
    }
}

fn base_record(ctx: &CarlitzContext, q: Quantity, n: u64, value: &RatFunc, normalized: &RatFunc) -> Record {
    let f = ctx.field();
    Record {
        r: f.r(),
        p: f.p(),
        e: f.e(),
        family: q.name().to_string(),
        big_n: None,
        n,
        k: None,
        flavor: None,
        m: None,
        method: None,
        num: value.num().to_string(),
        den: value.den().to_string(),
        normalized_num: normalized.num().to_string(),
        normalized_den: normalized.den().to_string(),
    }
}

/// Row for `BC_{N,n}` / `CC_{N,n}` by the given route.
pub fn special_record(ctx: &CarlitzContext, family: Family, big_n: u32, n: u64, method: Method) -> Result<Record> {
    let res = compute(ctx, SpecialNumberQuery { family, big_n, n, method })?;
    let q = match family {
        Family::Bc => Quantity::Bc,
        Family::Cc => Quantity::Cc,
    };
    let mut rec = base_record(ctx, q, n, &res.value, &res.normalized);
    rec.big_n = Some(big_n);
    rec.method = Some(method.name().to_string());
    Ok(rec)
}

/// Row for a Stirling-Carlitz number.
pub fn stirling_record(ctx: &CarlitzContext, kind: StirlingKind, n: u64, k: u64, flavor: Flavor) -> Result<Record> {
    let normalized = stirling_normalized(ctx, kind, n, k, flavor)?;
    let value = if normalized.is_zero() {
        normalized.clone()
    } else {
        &normalized * &crate::stirling::factorial_ratio(ctx, n, k)?
    };
    let q = match kind {
        StirlingKind::First => Quantity::Stirling1,
        StirlingKind::Second => Quantity::Stirling2,
    };
    let mut rec = base_record(ctx, q, n, &value, &normalized);
    let (name, m) = flavor_parts(flavor);
    rec.k = Some(k);
    rec.flavor = Some(name.to_string());
    rec.m = m;
    Ok(rec)
}
