//! Finite fields `F_r`, `r = p^e`.
//!
//! Elements are stored as compact integer codes: the base-`p` digits of a code
//! are the coordinates of the element in the polynomial basis `1, u, .., u^{e-1}`
//! of `F_p[u]/(modulus)`. For `e = 1` the code is simply the residue mod `p`.
//! Extension fields do their arithmetic through discrete log / Zech tables,
//! which keeps every operation O(1).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order accepted for extension fields (tables are O(r)).
pub const MAX_EXTENSION_ORDER: u32 = 1 << 20;

#[derive(Debug)]
struct ExtTables {
    /// `exp[i] = g^i` for `0 <= i < r - 1`.
    exp: Vec<u32>,
    /// Inverse of `exp`; `log[0]` is unused.
    log: Vec<u32>,
    /// `zech[i] = log(1 + g^i)`, `NO_LOG` when `1 + g^i = 0`.
    zech: Vec<u32>,
    neg: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

/// Parameters of `F_r` together with the lookup tables needed for arithmetic.
#[derive(Debug)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    r: u32,
    modulus: Vec<u32>,
    ext: Option<ExtTables>,
}

/// Shared handle to a [`FieldSpec`]. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.r)
    }
}

impl std::ops::Deref for Field {
    type Target = FieldSpec;
    fn deref(&self) -> &FieldSpec {
        &self.0
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Default irreducible moduli (coefficients low to high) for small prime powers.
pub fn default_modulus(r: u32) -> Option<(u32, u32, Vec<u32>)> {
    match r {
        4 => Some((2, 2, vec![1, 1, 1])),
        8 => Some((2, 3, vec![1, 1, 0, 1])),
        9 => Some((3, 2, vec![1, 0, 1])),
        _ => None,
    }
}

// Dense F_p[u] helpers used only while building tables.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem_fp(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    trim(&mut a);
    let dm = m.len() - 1;
    let inv_lc = inv_mod(m[dm], p);
    while a.len() > dm {
        let top = a.len() - 1;
        let q = (a[top] as u64 * inv_lc as u64 % p as u64) as u32;
        for (j, &mj) in m.iter().enumerate() {
            let idx = top - dm + j;
            a[idx] = ((a[idx] as u64 + (p - q) as u64 * mj as u64) % p as u64) as u32;
        }
        trim(&mut a);
    }
    a
}

fn poly_mul_fp(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
    trim(&mut out);
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(a: u32, mut k: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut base = a as u64 % p64;
    let mut acc = 1u64;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % p64;
        }
        base = base * base % p64;
        k >>= 1;
    }
    acc as u32
}

fn digits_of(code: u32, p: u32, e: u32) -> Vec<u32> {
    let mut c = code;
    (0..e)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn code_of(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut cand = digits_of(low as u32, p, d as u32);
            cand.push(1);
            if poly_rem_fp(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Self::new(p, 1, None)
    }

    /// `F_r` for a prime or a prime power with a built-in default modulus.
    pub fn with_order(r: u32) -> Result<Field> {
        if is_prime(r) {
            return Self::prime(r);
        }
        match default_modulus(r) {
            Some((p, e, m)) => Self::new(p, e, Some(m)),
            None => Err(Error::InvalidField(format!(
                "r = {r} is not prime and has no default modulus; supply p, e and a modulus"
            ))),
        }
    }

    /// `F_{p^e}` defined by `modulus` (coefficients low to high, monic, degree `e`).
    /// The modulus is ignored for `e = 1`.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        if p > (1 << 31) {
            return Err(Error::InvalidField("characteristic must be below 2^31".into()));
        }
        if e == 1 {
            return Ok(Field(Arc::new(FieldSpec { p, e, r: p, modulus: vec![0, 1], ext: None })));
        }
        let r = (p as u64)
            .checked_pow(e)
            .filter(|&r| r <= MAX_EXTENSION_ORDER as u64)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{e} exceeds {MAX_EXTENSION_ORDER}")))?
            as u32;
        let modulus = match modulus {
            Some(m) => m,
            None => match default_modulus(r) {
                Some((_, _, m)) => m,
                None => return Err(Error::InvalidField(format!("no default modulus for r = {r}"))),
            },
        };
        if modulus.len() != e as usize + 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "modulus must have {} coefficients in [0, {p})",
                e + 1
            )));
        }
        if modulus[e as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let ext = build_tables(p, e, r, &modulus)?;
        Ok(Field(Arc::new(FieldSpec { p, e, r, modulus, ext: Some(ext) })))
    }
}

fn build_tables(p: u32, e: u32, r: u32, modulus: &[u32]) -> Result<ExtTables> {
    let order = r - 1;
    let mulcode = |a: u32, b: u32| -> u32 {
        let prod = poly_mul_fp(&digits_of(a, p, e), &digits_of(b, p, e), p);
        code_of(&poly_rem_fp(&prod, modulus, p), p)
    };
    let mut exp = Vec::new();
    for g in 2..r {
        exp.clear();
        let mut x = 1u32;
        for _ in 0..order {
            exp.push(x);
            x = mulcode(x, g);
            if x == 1 {
                break;
            }
        }
        if exp.len() == order as usize {
            break;
        }
    }
    if exp.len() != order as usize {
        return Err(Error::InvalidField("no primitive element found".into()));
    }
    let mut log = vec![0u32; r as usize];
    for (i, &x) in exp.iter().enumerate() {
        log[x as usize] = i as u32;
    }
    let add_slow = |a: u32, b: u32| -> u32 {
        let da = digits_of(a, p, e);
        let db = digits_of(b, p, e);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
        code_of(&s, p)
    };
    let zech = exp
        .iter()
        .map(|&x| match add_slow(1, x) {
            0 => NO_LOG,
            s => log[s as usize],
        })
        .collect();
    let neg = (0..r)
        .map(|a| {
            let d: Vec<u32> = digits_of(a, p, e).iter().map(|&x| (p - x) % p).collect();
            code_of(&d, p)
        })
        .collect();
    Ok(ExtTables { exp, log, zech, neg })
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Field order `r = p^e`.
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.ext.is_none()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.ext {
            None => {
                let s = a as u64 + b as u64;
                let p = self.p as u64;
                (if s >= p { s - p } else { s }) as u32
            }
            Some(t) => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let order = self.r - 1;
                let la = t.log[a as usize];
                let lb = t.log[b as usize];
                let diff = if lb >= la { lb - la } else { lb + order - la };
                match t.zech[diff as usize] {
                    NO_LOG => 0,
                    z => t.exp[((la as u64 + z as u64) % order as u64) as usize],
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.ext {
            None => {
                if a == 0 {
                    0
                } else {
                    self.p - a
                }
            }
            Some(t) => t.neg[a as usize],
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.ext {
            None => (a as u64 * b as u64 % self.p as u64) as u32,
            Some(t) => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let order = (self.r - 1) as u64;
                t.exp[((t.log[a as usize] as u64 + t.log[b as usize] as u64) % order) as usize]
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        match &self.ext {
            None => Some(pow_mod(a, self.p - 2, self.p)),
            Some(t) => {
                let order = self.r - 1;
                let l = t.log[a as usize];
                Some(t.exp[((order - l) % order) as usize])
            }
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Coordinates in the polynomial basis, lowest first.
    pub fn coords(&self, code: u32) -> Vec<u32> {
        digits_of(code, self.p, self.e)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<u32> {
        if coords.len() != self.e as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates in [0, {})",
                self.e, self.p
            )));
        }
        Ok(code_of(coords, self.p))
    }
}

/// An element of `F_r` bound to its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: Field,
    code: u32,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.field, self.code)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElem {
    pub fn new(field: &Field, code: u32) -> Result<FieldElem> {
        if code >= field.r {
            return Err(Error::InvalidArgument(format!("{code} is not an element of F_{}", field.r)));
        }
        Ok(FieldElem { field: field.clone(), code })
    }

    pub fn from_int(field: &Field, n: i64) -> FieldElem {
        FieldElem { field: field.clone(), code: field.from_int(n) }
    }

    pub fn zero(field: &Field) -> FieldElem {
        FieldElem { field: field.clone(), code: 0 }
    }

    pub fn one(field: &Field) -> FieldElem {
        FieldElem { field: field.clone(), code: 1 }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn apply(&self, other: &FieldElem, op: FieldOp) -> Result<FieldElem> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let code = match op {
            FieldOp::Add => f.add(self.code, other.code),
            FieldOp::Sub => f.sub(self.code, other.code),
            FieldOp::Mul => f.mul(self.code, other.code),
            FieldOp::Div => f.mul(self.code, f.inv(other.code).ok_or(Error::DivisionByZero)?),
        };
        Ok(FieldElem { field: f.clone(), code })
    }

    pub fn inv(&self) -> Result<FieldElem> {
        let code = self.field.inv(self.code).ok_or(Error::DivisionByZero)?;
        Ok(FieldElem { field: self.field.clone(), code })
    }
}
