//! Solutions of `r^{N+i_1} + ... + r^{N+i_k} = n + k r^N`, enumerated as
//! multisets (nondecreasing parts) carrying the number of ordered tuples
//! they stand for.

use crate::carlitz::{binom_mod_p, CarlitzContext};
use crate::error::{overflow, Error, Result};
use crate::ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerComposition {
    /// Nondecreasing `i_1 <= ... <= i_k`.
    pub parts: Vec<u32>,
    /// Number of distinct orderings, `k! / Π m_i!`, when it fits in a `u64`.
    pub multiplicity: Option<u64>,
    /// The same count reduced mod `p`.
    pub multiplicity_mod_p: u32,
}

impl PowerComposition {
    /// `(index, repetition count)` pairs in increasing index order.
    pub fn counts(&self) -> Vec<(u32, u64)> {
        let mut out: Vec<(u32, u64)> = Vec::new();
        for &i in &self.parts {
            match out.last_mut() {
                Some((j, c)) if *j == i => *c += 1,
                _ => out.push((i, 1)),
            }
        }
        out
    }
}

fn binom_exact(a: u64, b: u64) -> Option<u128> {
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b as u128 {
        acc = acc.checked_mul(a as u128 - i)? / (i + 1);
    }
    Some(acc)
}

/// Multinomial `(Σ m)! / Π m!`, exactly (if it fits) and mod `p`.
pub fn multinomial(counts: &[u64], p: u32) -> (Option<u64>, u32) {
    let mut total = 0u64;
    let mut exact: Option<u128> = Some(1);
    let mut modp = 1u64;
    for &m in counts {
        total += m;
        exact = exact.and_then(|e| e.checked_mul(binom_exact(total, m)?));
        modp = modp * binom_mod_p(total, m, p) as u64 % p as u64;
    }
    (exact.and_then(|e| u64::try_from(e).ok()), modp as u32)
}

/// Part weights `w_i = r^{N+i} - r^N` for `i >= 0` while `w_i <= limit`.
fn part_weights(ctx: &CarlitzContext, big_n: u32, limit: u64) -> Result<Vec<u64>> {
    let base = ctx.r_pow(big_n)?;
    let mut w = Vec::new();
    for i in 0u32.. {
        match ctx.r_pow(big_n + i) {
            Ok(e) if e - base <= limit => w.push(e - base),
            _ => break,
        }
    }
    Ok(w)
}

/// All multisets `{i_1, .., i_k}` with every `i_j >= min_part` solving
/// `Σ r^{N+i_j} = n + k r^N`, each with its ordered-tuple multiplicity.
pub fn enumerate_power_compositions(
    ctx: &CarlitzContext,
    big_n: u32,
    n: u64,
    k: u64,
    min_part: u32,
) -> Result<Vec<PowerComposition>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    // The right-hand side must be representable even though we work with n directly.
    let target = ctx.r_pow(big_n)?.checked_mul(k).and_then(|x| x.checked_add(n));
    if target.is_none() {
        return Err(overflow("n + k r^N"));
    }
    let w = part_weights(ctx, big_n, n)?;
    let lo = min_part as usize;
    if lo >= w.len() {
        return Ok(Vec::new());
    }
    let w_min = w[lo];
    // Shifted problem: Σ_{i>lo} (w_i - w_min) m_i = n - k w_min, Σ_{i>lo} m_i <= k.
    let Some(s) = k.checked_mul(w_min).and_then(|x| n.checked_sub(x)) else {
        return Ok(Vec::new());
    };
    let v: Vec<u64> = w[lo..].iter().map(|&x| x - w_min).collect();
    let mut counts = vec![0u64; v.len()];
    let mut out = Vec::new();
    descend(&v, v.len() - 1, s, k, &mut counts, &mut |counts| {
        let mut parts = Vec::with_capacity(k as usize);
        let mut reps = Vec::with_capacity(counts.len());
        for (j, &m) in counts.iter().enumerate() {
            if m > 0 {
                parts.extend(std::iter::repeat_n(min_part + j as u32, m as usize));
                reps.push(m);
            }
        }
        let (multiplicity, multiplicity_mod_p) = multinomial(&reps, ctx.p());
        out.push(PowerComposition { parts, multiplicity, multiplicity_mod_p });
    });
    out.sort_by(|a, b| a.parts.cmp(&b.parts));
    Ok(out)
}

/// Choose `counts[idx]` for `idx` down to 1; `counts[0]` absorbs the rest.
fn descend(
    v: &[u64],
    idx: usize,
    rem_sum: u64,
    rem_count: u64,
    counts: &mut [u64],
    emit: &mut impl FnMut(&[u64]),
) {
    if idx == 0 {
        if rem_sum == 0 {
            counts[0] = rem_count;
            emit(counts);
            counts[0] = 0;
        }
        return;
    }
    let max_here = (rem_sum / v[idx]).min(rem_count);
    for m in (0..=max_here).rev() {
        counts[idx] = m;
        descend(v, idx - 1, rem_sum - m * v[idx], rem_count - m, counts, emit);
    }
    counts[idx] = 0;
}

/// Σ over ordered tuples of a symmetric weight, i.e.
/// Σ over multisets of `multiplicity mod p * weight(parts)`.
pub fn composition_sum(
    ctx: &CarlitzContext,
    comps: &[PowerComposition],
    mut weight: impl FnMut(&PowerComposition) -> Result<RatFunc>,
) -> Result<RatFunc> {
    let mut acc = RatFunc::zero(ctx.field());
    for c in comps {
        if c.multiplicity_mod_p == 0 {
            continue;
        }
        let w = weight(c)?.scale(c.multiplicity_mod_p);
        acc = &acc + &w;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn ctx(r: u32) -> CarlitzContext {
        CarlitzContext::with_order(r).unwrap()
    }

    fn parts(c: &[PowerComposition]) -> Vec<(Vec<u32>, Option<u64>)> {
        c.iter().map(|c| (c.parts.clone(), c.multiplicity)).collect()
    }

    #[test]
    fn worked_index_sets() {
        let c = ctx(3);
        assert_eq!(parts(&enumerate_power_compositions(&c, 2, 18, 1, 1).unwrap()), vec![(vec![1], Some(1))]);
        assert!(enumerate_power_compositions(&c, 2, 18, 2, 1).unwrap().is_empty());
        assert_eq!(
            parts(&enumerate_power_compositions(&c, 2, 72, 4, 1).unwrap()),
            vec![(vec![1, 1, 1, 1], Some(1))]
        );
        assert_eq!(parts(&enumerate_power_compositions(&c, 2, 72, 1, 1).unwrap()), vec![(vec![2], Some(1))]);
        for k in [2, 3] {
            assert!(enumerate_power_compositions(&c, 2, 72, k, 1).unwrap().is_empty());
        }
        assert_eq!(
            parts(&enumerate_power_compositions(&c, 3, 270, 2, 1).unwrap()),
            vec![(vec![1, 2], Some(2))]
        );
        assert_eq!(
            parts(&enumerate_power_compositions(&c, 3, 270, 5, 1).unwrap()),
            vec![(vec![1, 1, 1, 1, 1], Some(1))]
        );
        for k in [1, 3, 4, 6, 7] {
            assert!(enumerate_power_compositions(&c, 3, 270, k, 1).unwrap().is_empty());
        }
    }

    #[test]
    fn zero_parts_for_min_part_zero() {
        let c = ctx(3);
        // 18 + 9k = 27 + 9(k-1): one part equal to 1, the rest 0.
        for k in 1..=18u64 {
            let comps = enumerate_power_compositions(&c, 2, 18, k, 0).unwrap();
            assert_eq!(comps.len(), 1);
            assert_eq!(comps[0].multiplicity, Some(k));
            assert_eq!(comps[0].multiplicity_mod_p, (k % 3) as u32);
        }
        assert!(enumerate_power_compositions(&c, 2, 18, 0, 0).is_err());
    }

    #[test]
    fn composition_sum_examples() {
        let c = ctx(3);
        let f = c.field();
        assert!(composition_sum(&c, &[], |_| Ok(RatFunc::one(f))).unwrap().is_zero());
        let comps = enumerate_power_compositions(&c, 3, 270, 2, 1).unwrap();
        let (l4, l5) = (c.big_l(4).unwrap(), c.big_l(5).unwrap());
        let got = composition_sum(&c, &comps, |pc| {
            let sign: i64 = if pc.parts.iter().sum::<u32>() % 2 == 0 { 1 } else { -1 };
            let mut den = crate::poly::Poly::one(f);
            for &i in &pc.parts {
                den = &den * &c.big_l(3 + i).unwrap();
            }
            RatFunc::from_int(f, sign).div_poly(&den)
        })
        .unwrap();
        let expect = RatFunc::from_int(f, -2).div_poly(&(&l4 * &l5)).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1], 3), (Some(2), 2));
        assert_eq!(multinomial(&[2, 1, 1], 5), (Some(12), 2));
        assert_eq!(multinomial(&[17, 1], 3), (Some(18), 0));
        let (exact, _) = multinomial(&[40, 40, 40], 3);
        assert_eq!(exact, None);
    }

    /// Every ordered tuple with entries in `[min_part, i_max]`, grouped by its sorted form.
    fn brute_force(r: u64, big_n: u32, n: u64, k: u64, min_part: u32) -> BTreeMap<Vec<u32>, u64> {
        let target = n + k * r.pow(big_n);
        let i_max = (0u32..).take_while(|&i| r.pow(big_n + i) <= target).last().unwrap_or(0);
        let mut out = BTreeMap::new();
        if i_max < min_part {
            return out;
        }
        let width = (i_max - min_part + 1) as u64;
        let total = width.pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let mut tuple = Vec::with_capacity(k as usize);
            for _ in 0..k {
                tuple.push(min_part + (c % width) as u32);
                c /= width;
            }
            let sum: u64 = tuple.iter().map(|&i| r.pow(big_n + i)).sum();
            if sum == target {
                tuple.sort_unstable();
                *out.entry(tuple).or_insert(0) += 1;
            }
        }
        out
    }

    #[test]
    fn matches_brute_force_enumeration() {
        for r in [2u32, 3] {
            let c = ctx(r);
            let r64 = r as u64;
            for big_n in 0..=2u32 {
                for min_part in [0u32, 1] {
                    for k in 1..=5u64 {
                        for n in 1..=60u64 {
                            let target = n + k * r64.pow(big_n);
                            let i_max = (0u32..).take_while(|&i| r64.pow(big_n + i) <= target).count() as u64;
                            if target > 400 || i_max.pow(k as u32) > 200_000 {
                                continue;
                            }
                            let got: BTreeMap<Vec<u32>, u64> = enumerate_power_compositions(&c, big_n, n, k, min_part)
                                .unwrap()
                                .into_iter()
                                .map(|pc| (pc.parts, pc.multiplicity.unwrap()))
                                .collect();
                            assert_eq!(got, brute_force(r64, big_n, n, k, min_part), "r={r} N={big_n} n={n} k={k}");
                        }
                    }
                }
            }
        }
    }
}
