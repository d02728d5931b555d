//! Truncated power series in `x` with coefficients in `K`, stored sparsely.
//!
//! A [`SparseSeries`] is exact through `x^order`; everything above is dropped.
//! Binary operations keep the weaker of the two guarantees.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::carlitz::CarlitzContext;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ratfunc::RatFunc;

#[derive(Clone, PartialEq, Eq)]
pub struct SparseSeries {
    field: Field,
    terms: BTreeMap<u64, RatFunc>,
    order: u64,
}

/// Which Carlitz series a tail or partial sum is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Exp,
    Log,
}

impl SparseSeries {
    pub fn zero(field: &Field, order: u64) -> SparseSeries {
        SparseSeries { field: field.clone(), terms: BTreeMap::new(), order }
    }

    pub fn one(field: &Field, order: u64) -> SparseSeries {
        Self::monomial(RatFunc::one(field), 0, order)
    }

    /// `c * x^exp`, dropped if `exp > order`.
    pub fn monomial(c: RatFunc, exp: u64, order: u64) -> SparseSeries {
        let field = c.field().clone();
        Self::from_terms(&field, [(exp, c)], order)
    }

    /// Collects terms, summing repeated exponents and dropping zeros and
    /// exponents above `order`.
    pub fn from_terms(
        field: &Field,
        terms: impl IntoIterator<Item = (u64, RatFunc)>,
        order: u64,
    ) -> SparseSeries {
        let mut map: BTreeMap<u64, RatFunc> = BTreeMap::new();
        for (e, c) in terms {
            if e > order || c.is_zero() {
                continue;
            }
            match map.remove(&e) {
                Some(prev) => {
                    let s = &prev + &c;
                    if !s.is_zero() {
                        map.insert(e, s);
                    }
                }
                None => {
                    map.insert(e, c);
                }
            }
        }
        SparseSeries { field: field.clone(), terms: map, order }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &RatFunc)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^m` (zero when absent or beyond the order).
    pub fn coeff(&self, m: u64) -> RatFunc {
        self.terms.get(&m).cloned().unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u64> {
        self.terms.keys().next().copied()
    }

    pub fn truncate(&self, order: u64) -> SparseSeries {
        let order = order.min(self.order);
        SparseSeries {
            field: self.field.clone(),
            terms: self.terms.range(..=order).map(|(&e, c)| (e, c.clone())).collect(),
            order,
        }
    }

    fn check(&self, other: &SparseSeries) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &SparseSeries) -> Result<SparseSeries> {
        self.check(other)?;
        let order = self.order.min(other.order);
        let terms = self.terms.range(..=order).chain(other.terms.range(..=order));
        Ok(Self::from_terms(&self.field, terms.map(|(&e, c)| (e, c.clone())), order))
    }

    pub fn neg(&self) -> SparseSeries {
        SparseSeries {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &SparseSeries) -> Result<SparseSeries> {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &RatFunc) -> SparseSeries {
        Self::from_terms(&self.field, self.terms.iter().map(|(&e, v)| (e, v * c)), self.order)
    }

    /// Divide by `x^e`; every stored exponent must be at least `e`.
    pub fn shift_down(&self, e: u64) -> Result<SparseSeries> {
        if self.valuation().is_some_and(|v| v < e) || self.order < e {
            return Err(Error::InvalidArgument(format!("series is not divisible by x^{e}")));
        }
        Ok(SparseSeries {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&m, c)| (m - e, c.clone())).collect(),
            order: self.order - e,
        })
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &SparseSeries) -> Result<SparseSeries> {
        self.check(other)?;
        let order = self.order.min(other.order);
        let (small, big) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc: BTreeMap<u64, RatFunc> = BTreeMap::new();
        for (&ea, ca) in small.terms.range(..=order) {
            for (&eb, cb) in big.terms.range(..=order - ea) {
                let prod = ca * cb;
                let slot = acc.entry(ea + eb).or_insert_with(|| RatFunc::zero(&self.field));
                *slot = &*slot + &prod;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(SparseSeries { field: self.field.clone(), terms: acc, order })
    }

    /// `self^k` by binary powering.
    pub fn pow(&self, mut k: u64) -> SparseSeries {
        let mut acc = Self::one(&self.field, self.order);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    /// Multiplicative inverse through the recurrence
    /// `g_m = -f_0^{-1} Σ_{0<j<=m} f_j g_{m-j}`, visiting only realised exponents.
    pub fn inv(&self) -> Result<SparseSeries> {
        let f0 = self.terms.get(&0).ok_or(Error::NotInvertible)?;
        let f0_inv = f0.inv()?;
        let neg_f0_inv = -&f0_inv;
        let rest: Vec<(u64, RatFunc)> =
            self.terms.range(1..).map(|(&e, c)| (e, c * &neg_f0_inv)).collect();
        let mut g: BTreeMap<u64, RatFunc> = BTreeMap::new();
        g.insert(0, f0_inv);
        if let Some(&(min_e, _)) = rest.first() {
            // Only sums of support exponents can appear; walk m upward.
            let mut m = min_e;
            while m <= self.order {
                let mut acc: Option<RatFunc> = None;
                for (e, c) in &rest {
                    if *e > m {
                        break;
                    }
                    if let Some(prev) = g.get(&(m - e)) {
                        let term = c * prev;
                        acc = Some(match acc {
                            Some(a) => &a + &term,
                            None => term,
                        });
                    }
                }
                if let Some(a) = acc.filter(|a| !a.is_zero()) {
                    g.insert(m, a);
                }
                m += 1;
            }
        }
        Ok(SparseSeries { field: self.field.clone(), terms: g, order: self.order })
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            terms: self
                .terms
                .iter()
                .map(|(&exp, c)| TermJson { exp, num: c.num().to_string(), den: c.den().to_string() })
                .collect(),
            order: self.order,
        }
    }

    pub fn from_json(field: &Field, json: &SeriesJson) -> Result<SparseSeries> {
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            let num = crate::poly::Poly::parse(field, &t.num)?;
            let den = crate::poly::Poly::parse(field, &t.den)?;
            terms.push((t.exp, RatFunc::new(num, den)?));
        }
        Ok(Self::from_terms(field, terms, json.order))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: u64,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub terms: Vec<TermJson>,
    pub order: u64,
}

impl fmt::Display for SparseSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (e, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("x")?,
                (_, true) => write!(f, "x^{e}")?,
                (1, false) => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparseSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseSeries[O(x^{})]({self})", self.order + 1)
    }
}

/// Sign `(-1)^i` as a field code.
fn alt_sign(field: &Field, i: u32) -> u32 {
    if i.is_multiple_of(2) {
        1
    } else {
        field.neg(1)
    }
}

/// `1/D_i` (exp) or `(-1)^i/L_i` (log): the coefficient of `x^{r^i}`.
pub fn carlitz_coeff(ctx: &CarlitzContext, kind: SeriesKind, i: u32) -> Result<RatFunc> {
    Ok(match kind {
        SeriesKind::Exp => RatFunc::recip_poly(&ctx.big_d(i)?)?,
        SeriesKind::Log => RatFunc::recip_poly(&ctx.big_l(i)?)?.scale(alt_sign(ctx.field(), i)),
    })
}

/// Indices `i >= from` with `r^i <= bound`.
fn indices_up_to(ctx: &CarlitzContext, from: u32, bound: u64) -> Vec<u32> {
    (from..).take_while(|&i| ctx.r_pow(i).is_ok_and(|e| e <= bound)).collect()
}

/// Σ over `lo <= i <= hi`, `r^i <= order`, of the Carlitz terms of `kind`.
fn carlitz_sum(
    ctx: &CarlitzContext,
    kind: SeriesKind,
    lo: u32,
    hi: Option<u32>,
    order: u64,
) -> Result<SparseSeries> {
    let mut terms = Vec::new();
    for i in indices_up_to(ctx, lo, order) {
        if hi.is_some_and(|h| i > h) {
            break;
        }
        terms.push((ctx.r_pow(i)?, carlitz_coeff(ctx, kind, i)?));
    }
    Ok(SparseSeries::from_terms(ctx.field(), terms, order))
}

/// Carlitz exponential `Σ x^{r^i}/D_i` through `x^order`.
pub fn carlitz_exp(ctx: &CarlitzContext, order: u64) -> Result<SparseSeries> {
    carlitz_sum(ctx, SeriesKind::Exp, 0, None, order)
}

/// Carlitz logarithm `Σ (-1)^i x^{r^i}/L_i` through `x^order`.
pub fn carlitz_log(ctx: &CarlitzContext, order: u64) -> Result<SparseSeries> {
    carlitz_sum(ctx, SeriesKind::Log, 0, None, order)
}

/// Partial sum over `0 <= i <= m`; `m = -1` gives the zero series.
pub fn partial_sum(ctx: &CarlitzContext, kind: SeriesKind, m: i64, order: u64) -> Result<SparseSeries> {
    if m < 0 {
        return Ok(SparseSeries::zero(ctx.field(), order));
    }
    let hi = u32::try_from(m).map_err(|_| Error::InvalidArgument(format!("partial sum index {m}")))?;
    carlitz_sum(ctx, kind, 0, Some(hi), order)
}

pub fn partial_sum_exp(ctx: &CarlitzContext, m: i64, order: u64) -> Result<SparseSeries> {
    partial_sum(ctx, SeriesKind::Exp, m, order)
}

pub fn partial_sum_log(ctx: &CarlitzContext, m: i64, order: u64) -> Result<SparseSeries> {
    partial_sum(ctx, SeriesKind::Log, m, order)
}

/// Tail of the series from index `m` on: `Σ_{i>=m}` of the Carlitz terms,
/// i.e. `e_C - E_{m-1}` or `log_C - F_{m-1}`.
pub fn tail_from(ctx: &CarlitzContext, kind: SeriesKind, m: u32, order: u64) -> Result<SparseSeries> {
    carlitz_sum(ctx, kind, m, None, order)
}

/// The tail from index `big_n`, divided by its leading term: a series with
/// constant term 1, exponents `r^{N+j} - r^N` and coefficients `D_N/D_{N+j}`
/// (exp) or `(-1)^j L_N/L_{N+j}` (log).
pub fn tail_quotient(ctx: &CarlitzContext, kind: SeriesKind, big_n: u32, order: u64) -> Result<SparseSeries> {
    let base = ctx.r_pow(big_n)?;
    let lead = carlitz_coeff(ctx, kind, big_n)?;
    let mut terms = Vec::new();
    for j in 0u32.. {
        let e = match ctx.r_pow(big_n + j) {
            Ok(e) if e - base <= order => e - base,
            _ => break,
        };
        let c = &carlitz_coeff(ctx, kind, big_n + j)? / &lead;
        terms.push((e, c));
    }
    Ok(SparseSeries::from_terms(ctx.field(), terms, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn ctx3() -> CarlitzContext {
        CarlitzContext::with_order(3).unwrap()
    }

    fn recip(p: &Poly) -> RatFunc {
        RatFunc::recip_poly(p).unwrap()
    }

    fn ratio(a: &Poly, b: &Poly) -> RatFunc {
        RatFunc::new(a.clone(), b.clone()).unwrap()
    }

    #[test]
    fn exp_and_log_examples() {
        let c = ctx3();
        let f = c.field();
        let (d1, d2) = (c.big_d(1).unwrap(), c.big_d(2).unwrap());
        let e = carlitz_exp(&c, 10).unwrap();
        let expect = SparseSeries::from_terms(f, [(1, RatFunc::one(f)), (3, recip(&d1)), (9, recip(&d2))], 10);
        assert_eq!(e, expect);
        assert_eq!(carlitz_exp(&c, 2).unwrap(), SparseSeries::monomial(RatFunc::one(f), 1, 2));
        for m in [2, 4, 5, 6, 7, 8, 10] {
            assert!(e.coeff(m).is_zero());
        }
        let (l1, l2) = (c.big_l(1).unwrap(), c.big_l(2).unwrap());
        let lg = carlitz_log(&c, 10).unwrap();
        let expect = SparseSeries::from_terms(f, [(1, RatFunc::one(f)), (3, -&recip(&l1)), (9, recip(&l2))], 10);
        assert_eq!(lg, expect);
    }

    #[test]
    fn log_in_characteristic_two_has_no_signs() {
        let c = CarlitzContext::with_order(2).unwrap();
        let f = c.field();
        let lg = carlitz_log(&c, 4).unwrap();
        let expect = SparseSeries::from_terms(
            f,
            [(1, RatFunc::one(f)), (2, recip(&c.big_l(1).unwrap())), (4, recip(&c.big_l(2).unwrap()))],
            4,
        );
        assert_eq!(lg, expect);
    }

    #[test]
    fn partial_sums() {
        let c = ctx3();
        let f = c.field();
        assert!(partial_sum_exp(&c, -1, 50).unwrap().is_empty());
        let d1 = c.big_d(1).unwrap();
        assert_eq!(
            partial_sum_exp(&c, 1, 50).unwrap(),
            SparseSeries::from_terms(f, [(1, RatFunc::one(f)), (3, recip(&d1))], 50)
        );
        assert_eq!(
            partial_sum_log(&c, 1, 50).unwrap(),
            SparseSeries::from_terms(f, [(1, RatFunc::one(f)), (3, -&recip(&d1))], 50)
        );
        let full = carlitz_exp(&c, 100).unwrap();
        let diff = full.sub(&partial_sum_exp(&c, 1, 100).unwrap()).unwrap();
        assert_eq!(diff, tail_from(&c, SeriesKind::Exp, 2, 100).unwrap());
    }

    #[test]
    fn series_add_and_mul_examples() {
        let c = ctx3();
        let f = c.field();
        let (d2, d3) = (c.big_d(2).unwrap(), c.big_d(3).unwrap());
        let a = SparseSeries::monomial(recip(&d2), 9, 200);
        let twice = a.add(&a).unwrap();
        assert_eq!(twice.coeff(9), RatFunc::from_int(f, 2).div_poly(&d2).unwrap());
        assert_eq!(a.add(&SparseSeries::zero(f, 200)).unwrap(), a);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, SparseSeries::monomial(recip(&d2.pow(2)), 18, 200));
        assert_eq!(a.mul(&SparseSeries::one(f, 200)).unwrap(), a);
        let b = a.add(&SparseSeries::monomial(recip(&d3), 27, 200)).unwrap();
        let sq = b.mul(&b).unwrap();
        let expect = SparseSeries::from_terms(
            f,
            [
                (18, recip(&d2.pow(2))),
                (36, RatFunc::from_int(f, 2).div_poly(&(&d2 * &d3)).unwrap()),
                (54, recip(&d3.pow(2))),
            ],
            200,
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn inverse_of_geometric_tail() {
        let c = ctx3();
        let f = c.field();
        let (d2, d3) = (c.big_d(2).unwrap(), c.big_d(3).unwrap());
        let q = ratio(&d2, &d3);
        let s = SparseSeries::from_terms(f, [(0, RatFunc::one(f)), (18, q.clone())], 54);
        let inv = s.inv().unwrap();
        let expect = SparseSeries::from_terms(
            f,
            [(0, RatFunc::one(f)), (18, -&q), (36, q.pow(2)), (54, -&q.pow(3))],
            54,
        );
        assert_eq!(inv, expect);
        assert_eq!(s.mul(&inv).unwrap(), SparseSeries::one(f, 54));
        assert_eq!(SparseSeries::one(f, 9).inv().unwrap(), SparseSeries::one(f, 9));
        assert_eq!(SparseSeries::zero(f, 9).inv(), Err(Error::NotInvertible));
    }

    #[test]
    fn tail_quotient_examples() {
        let c = ctx3();
        let f = c.field();
        let (d2, d3, d4) = (c.big_d(2).unwrap(), c.big_d(3).unwrap(), c.big_d(4).unwrap());
        let h = tail_quotient(&c, SeriesKind::Exp, 2, 100).unwrap();
        let expect = SparseSeries::from_terms(
            f,
            [(0, RatFunc::one(f)), (18, ratio(&d2, &d3)), (72, ratio(&d2, &d4))],
            100,
        );
        assert_eq!(h, expect);
        let (l3, l4) = (c.big_l(3).unwrap(), c.big_l(4).unwrap());
        let h = tail_quotient(&c, SeriesKind::Log, 3, 60).unwrap();
        let expect = SparseSeries::from_terms(f, [(0, RatFunc::one(f)), (54, -&ratio(&l3, &l4))], 60);
        assert_eq!(h, expect);
        for n in 0..4 {
            assert!(tail_quotient(&c, SeriesKind::Log, n, 300).unwrap().coeff(0).is_one());
        }
    }

    #[test]
    fn tail_quotient_times_lead_is_tail() {
        for r in [2u32, 3] {
            let c = CarlitzContext::with_order(r).unwrap();
            for kind in [SeriesKind::Exp, SeriesKind::Log] {
                for n in 0..3u32 {
                    let order = 200;
                    let lead = SparseSeries::monomial(
                        carlitz_coeff(&c, kind, n).unwrap(),
                        c.r_pow(n).unwrap(),
                        order,
                    );
                    let lhs = tail_quotient(&c, kind, n, order).unwrap().mul(&lead).unwrap();
                    let full = carlitz_sum(&c, kind, 0, None, order).unwrap();
                    let rhs = full.sub(&partial_sum(&c, kind, n as i64 - 1, order).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "r = {r}, {kind:?}, N = {n}");
                }
            }
        }
    }

    #[test]
    fn json_and_text() {
        let c = ctx3();
        let e = carlitz_exp(&c, 10).unwrap();
        let json = serde_json::to_string(&e.to_json()).unwrap();
        let back: SeriesJson = serde_json::from_str(&json).unwrap();
        assert_eq!(SparseSeries::from_json(c.field(), &back).unwrap(), e);
        assert_eq!(e.to_string(), "x + ((1)/(T^3 + 2*T))*x^3 + ((1)/(T^18 + 2*T^12 + 2*T^10 + T^4))*x^9");
    }
}
