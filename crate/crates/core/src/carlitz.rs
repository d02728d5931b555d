//! Carlitz brackets `[i]`, the products `D_i` and `L_i`, the Carlitz factorial
//! and binomial coefficients reduced into the prime field.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{overflow, Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Largest polynomial degree the context will materialise.
pub const MAX_DEGREE: u64 = 1 << 24;

/// Base-`r` digits `c_0, c_1, ..` (least significant first, no trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RDigits {
    pub r: u64,
    pub digits: Vec<u64>,
}

impl RDigits {
    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.r + d)
    }
}

pub fn r_digits(r: u64, mut n: u64) -> RDigits {
    assert!(r >= 2, "radix must be at least 2");
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(n % r);
        n /= r;
    }
    RDigits { r, digits }
}

/// `C(a, b) mod p` for `a, b < p`.
fn small_binom(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..b {
        num = num * ((a - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * pow_mod(den, p - 2, p) % p
}

fn pow_mod(mut a: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        k >>= 1;
    }
    acc
}

/// `C(m, k) mod p` by Lucas' theorem; zero when `k > m`.
pub fn binom_mod_p(m: u64, k: u64, p: u32) -> u32 {
    let p = p as u64;
    if k > m {
        return 0;
    }
    let (mut m, mut k) = (m, k);
    let mut acc = 1u64;
    while k > 0 {
        let (mi, ki) = (m % p, k % p);
        if ki > mi {
            return 0;
        }
        acc = acc * small_binom(mi, ki, p) % p;
        m /= p;
        k /= p;
    }
    acc as u32
}

/// Memoised Carlitz quantities for one field `F_r`.
pub struct CarlitzContext {
    field: Field,
    r: u64,
    brackets: Mutex<HashMap<u32, Poly>>,
    d: Mutex<HashMap<u32, Poly>>,
    l: Mutex<HashMap<u32, Poly>>,
    factorials: Mutex<HashMap<u64, Poly>>,
    powers: crate::stirling::PowerCache,
    inverses: crate::special::InverseCache,
}

impl std::fmt::Debug for CarlitzContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CarlitzContext({:?})", self.field)
    }
}

fn cached<K: std::hash::Hash + Eq + Copy>(
    cache: &Mutex<HashMap<K, Poly>>,
    key: K,
    compute: impl FnOnce() -> Result<Poly>,
) -> Result<Poly> {
    if let Some(p) = cache.lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    // Computed outside the lock; a concurrent duplicate stores the same value.
    let value = compute()?;
    cache.lock().unwrap().insert(key, value.clone());
    Ok(value)
}

impl CarlitzContext {
    pub(crate) fn power_cache(&self) -> &crate::stirling::PowerCache {
        &self.powers
    }

    pub(crate) fn inverse_cache(&self) -> &crate::special::InverseCache {
        &self.inverses
    }

    pub fn new(field: Field) -> CarlitzContext {
        let r = field.r() as u64;
        CarlitzContext {
            field,
            r,
            brackets: Mutex::default(),
            d: Mutex::default(),
            l: Mutex::default(),
            factorials: Mutex::default(),
            powers: Default::default(),
            inverses: Default::default(),
        }
    }

    /// Context over `F_r` with the default modulus for prime powers.
    pub fn with_order(r: u32) -> Result<CarlitzContext> {
        Ok(Self::new(Field::with_order(r)?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// `r^i`, failing on overflow.
    pub fn r_pow(&self, i: u32) -> Result<u64> {
        self.r.checked_pow(i).ok_or_else(|| overflow(format!("{}^{i}", self.r)))
    }

    fn check_degree(&self, deg: Option<u64>, what: &str) -> Result<usize> {
        match deg {
            Some(d) if d <= MAX_DEGREE => Ok(d as usize),
            _ => Err(overflow(format!("degree of {what} exceeds {MAX_DEGREE}"))),
        }
    }

    /// `T^{r^{i+m}} - T^{r^m}`, i.e. `[i]^{r^m}` (Frobenius on F_p-coefficients).
    fn bracket_frobenius(&self, i: u32, m: u32) -> Result<Poly> {
        let hi = self.r_pow(i + m)?;
        let lo = self.r_pow(m)?;
        let deg = self.check_degree(Some(hi), "bracket power")?;
        let mut coeffs = vec![0u32; deg + 1];
        coeffs[deg] = 1;
        coeffs[lo as usize] = self.field.neg(1);
        Ok(Poly::from_raw(&self.field, coeffs))
    }

    /// `[i] = T^{r^i} - T` for `i >= 1`.
    pub fn bracket(&self, i: u32) -> Result<Poly> {
        if i == 0 {
            return Err(Error::InvalidArgument("bracket index must be >= 1".into()));
        }
        cached(&self.brackets, i, || self.bracket_frobenius(i, 0))
    }

    /// `D_i = [i][i-1]^r ... [1]^{r^{i-1}}`, `D_0 = 1`.
    pub fn big_d(&self, i: u32) -> Result<Poly> {
        if i == 0 {
            return Ok(Poly::one(&self.field));
        }
        cached(&self.d, i, || {
            let deg = self.r_pow(i)?.checked_mul(i as u64);
            self.check_degree(deg, "D_i")?;
            let mut acc = Poly::one(&self.field);
            for j in 1..=i {
                acc = &acc * &self.bracket_frobenius(j, i - j)?;
            }
            Ok(acc)
        })
    }

    /// `L_i = [i][i-1] ... [1]`, `L_0 = 1`.
    pub fn big_l(&self, i: u32) -> Result<Poly> {
        if i == 0 {
            return Ok(Poly::one(&self.field));
        }
        cached(&self.l, i, || {
            let prev = self.big_l(i - 1)?;
            let deg = self.r_pow(i)?.checked_add(prev.degree().unwrap_or(0) as u64);
            self.check_degree(deg, "L_i")?;
            Ok(&self.bracket(i)? * &prev)
        })
    }

    pub fn r_digits(&self, n: u64) -> RDigits {
        r_digits(self.r, n)
    }

    /// Carlitz factorial `Π(n) = Π_j D_j^{c_j}` over the base-`r` digits of `n`.
    pub fn carlitz_factorial(&self, n: u64) -> Result<Poly> {
        cached(&self.factorials, n, || {
            let digits = self.r_digits(n);
            let mut deg: u64 = 0;
            for (j, &c) in digits.digits.iter().enumerate() {
                let dj = self.r_pow(j as u32)?.checked_mul(j as u64).and_then(|d| d.checked_mul(c));
                deg = dj.and_then(|d| deg.checked_add(d)).ok_or_else(|| overflow("degree of Π(n)"))?;
            }
            self.check_degree(Some(deg), "Π(n)")?;
            let mut acc = Poly::one(&self.field);
            for (j, &c) in digits.digits.iter().enumerate() {
                if j > 0 && c > 0 {
                    acc = &acc * &self.big_d(j as u32)?.pow(c);
                }
            }
            Ok(acc)
        })
    }

    pub fn binom(&self, m: u64, k: u64) -> u32 {
        binom_mod_p(m, k, self.p())
    }
}
