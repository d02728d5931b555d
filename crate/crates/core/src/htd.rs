//! Hasse-Teichmüller derivatives `H^(n)` on truncated power series, with the
//! product rule and the two quotient rules written out as evaluation routes.
//!
//! The quotient-rule routes enumerate every composition of `n` and are only
//! meant for small `n`.

use crate::carlitz::binom_mod_p;
use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::series::SparseSeries;

/// `H^(n)`: `x^m -> C(m, n) x^{m-n}`, with `C(m, n)` reduced mod `p`.
/// The result is exact through `x^{order - n}`.
pub fn ht_derive(f: &SparseSeries, n: u64) -> Result<SparseSeries> {
    let order = f
        .order()
        .checked_sub(n)
        .ok_or_else(|| Error::InvalidArgument(format!("derivative order {n} exceeds series order {}", f.order())))?;
    let p = f.field().p();
    let terms = f
        .terms()
        .filter(|&(m, _)| m >= n)
        .filter_map(|(m, c)| match binom_mod_p(m, n, p) {
            0 => None,
            b => Some((m - n, c.scale(b))),
        });
    Ok(SparseSeries::from_terms(f.field(), terms.collect::<Vec<_>>(), order))
}

/// Value at `x = 0` of `H^(n)(f)`, i.e. the coefficient of `x^n`.
pub fn ht_at_zero(f: &SparseSeries, n: u64) -> Result<RatFunc> {
    Ok(ht_derive(f, n)?.coeff(0))
}

/// All `(i_1, .., i_k)` with `i_j >= min` and `Σ i_j = n`, in lexicographic order.
pub fn bounded_compositions(n: u64, k: usize, min: u64) -> Vec<Vec<u64>> {
    fn go(rem: u64, slots: usize, min: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let reserve = min * (slots as u64 - 1);
        if rem < reserve + min {
            return;
        }
        for i in min..=rem - reserve {
            cur.push(i);
            go(rem - i, slots - 1, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        go(n, k, min, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn product(series: impl IntoIterator<Item = SparseSeries>) -> Result<SparseSeries> {
    let mut it = series.into_iter();
    let first = it.next().ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
    it.try_fold(first, |acc, s| acc.mul(&s))
}

/// Right-hand side of the product rule
/// `H^(n)(f_1 ... f_k) = Σ_{i_1+..+i_k=n} H^(i_1)(f_1) ... H^(i_k)(f_k)`.
pub fn ht_product_rule(fs: &[SparseSeries], n: u64) -> Result<SparseSeries> {
    if fs.len() < 2 {
        return Err(Error::InvalidArgument("product rule needs at least two factors".into()));
    }
    let field = fs[0].field();
    let order = fs.iter().map(SparseSeries::order).min().unwrap_or(0).saturating_sub(n);
    let mut acc = SparseSeries::zero(field, order);
    for comp in bounded_compositions(n, fs.len(), 0) {
        let derived = fs.iter().zip(&comp).map(|(f, &i)| ht_derive(f, i)).collect::<Result<Vec<_>>>()?;
        acc = acc.add(&product(derived)?)?;
    }
    Ok(acc.truncate(order))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientRule {
    /// Parts `i_j >= 1`.
    Positive,
    /// Parts `i_j >= 0`, each `k`-term weighted by `C(n+1, k+1)`.
    Binomial,
}

/// Right-hand side of the quotient rule for `H^(n)(1/f)`, `n >= 1`.
pub fn ht_quotient_rule(f: &SparseSeries, n: u64, rule: QuotientRule) -> Result<SparseSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument("quotient rule needs n >= 1".into()));
    }
    let field = f.field();
    let p = field.p();
    let f_inv = f.inv()?;
    let order = f.order().saturating_sub(n);
    let derivs = (0..=n).map(|i| ht_derive(f, i)).collect::<Result<Vec<_>>>()?;
    let min = match rule {
        QuotientRule::Positive => 1,
        QuotientRule::Binomial => 0,
    };
    let mut acc = SparseSeries::zero(field, order);
    let mut inv_pow = f_inv.clone(); // f^{-(k+1)}
    for k in 1..=n {
        inv_pow = inv_pow.mul(&f_inv)?;
        let coeff = match rule {
            QuotientRule::Positive => 1,
            QuotientRule::Binomial => binom_mod_p(n + 1, k + 1, p),
        };
        let signed = if k % 2 == 0 { coeff } else { field.neg(coeff) };
        if signed == 0 {
            continue;
        }
        let mut inner = SparseSeries::zero(field, order);
        for comp in bounded_compositions(n, k as usize, min) {
            if comp.iter().any(|&i| derivs[i as usize].is_empty()) {
                continue;
            }
            inner = inner.add(&product(comp.iter().map(|&i| derivs[i as usize].clone()))?)?;
        }
        let term = inner.mul(&inv_pow)?.scale(&RatFunc::one(field).scale(signed));
        acc = acc.add(&term)?;
    }
    Ok(acc.truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz::CarlitzContext;
    use crate::field::Field;
    use crate::series::{tail_quotient, SeriesKind};

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn mono(f: &Field, e: u64, order: u64) -> SparseSeries {
        SparseSeries::monomial(RatFunc::one(f), e, order)
    }

    #[test]
    fn derivative_examples() {
        let f = f3();
        let s = SparseSeries::from_terms(&f, [(0, RatFunc::one(&f)), (4, RatFunc::from_int(&f, 2))], 20);
        assert_eq!(ht_derive(&s, 0).unwrap(), s);
        assert_eq!(ht_derive(&mono(&f, 5, 20), 2).unwrap(), mono(&f, 3, 18));
        assert_eq!(ht_at_zero(&s, 4).unwrap(), RatFunc::from_int(&f, 2));
        assert!(ht_derive(&s, 21).is_err());
    }

    #[test]
    fn compositions_enumerated() {
        assert_eq!(bounded_compositions(2, 2, 0), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(bounded_compositions(3, 2, 1), vec![vec![1, 2], vec![2, 1]]);
        assert!(bounded_compositions(1, 2, 1).is_empty());
        assert_eq!(bounded_compositions(5, 3, 0).len(), 21);
    }

    #[test]
    fn product_rule_examples() {
        let f = f3();
        let x = mono(&f, 1, 10);
        let two = ht_product_rule(&[x.clone(), x.clone()], 2).unwrap();
        assert_eq!(two.coeff(0), RatFunc::one(&f));
        let zero = ht_product_rule(&[x.clone(), x.clone()], 0).unwrap();
        assert_eq!(zero, x.mul(&x).unwrap());
        assert!(ht_product_rule(&[x], 1).is_err());
    }

    #[test]
    fn quotient_rule_of_one_vanishes() {
        let f = f3();
        let one = SparseSeries::one(&f, 10);
        for n in 1..=5 {
            assert!(ht_quotient_rule(&one, n, QuotientRule::Positive).unwrap().is_empty());
            assert!(ht_quotient_rule(&one, n, QuotientRule::Binomial).unwrap().is_empty());
        }
        assert!(ht_quotient_rule(&SparseSeries::zero(&f, 4), 1, QuotientRule::Positive).is_err());
    }

    #[test]
    fn quotient_rule_on_exp_tail() {
        let ctx = CarlitzContext::with_order(3).unwrap();
        let h = tail_quotient(&ctx, SeriesKind::Exp, 2, 40).unwrap();
        let v = ht_quotient_rule(&h, 18, QuotientRule::Positive).unwrap();
        let expect = -&RatFunc::new(ctx.big_d(2).unwrap(), ctx.big_d(3).unwrap()).unwrap();
        assert_eq!(v.coeff(0), expect);
        assert_eq!(ht_at_zero(&h.inv().unwrap(), 18).unwrap(), expect);
    }

    #[test]
    fn monomial_composition_law() {
        let f = f3();
        for m in 0..=50u64 {
            for a in 0..=5u64 {
                for b in 0..=5u64 {
                    if a + b > m {
                        continue;
                    }
                    let lhs = ht_derive(&ht_derive(&mono(&f, m, 60), b).unwrap(), a).unwrap();
                    let rhs = ht_derive(&mono(&f, m, 60), a + b)
                        .unwrap()
                        .scale(&RatFunc::from_int(&f, binom_mod_p(a + b, a, 3) as i64));
                    assert_eq!(lhs, rhs, "m={m} a={a} b={b}");
                }
            }
        }
    }
}
