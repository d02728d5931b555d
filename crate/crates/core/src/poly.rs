//! Dense univariate polynomials over `F_r` in the variable `T`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Operands shorter than this use schoolbook multiplication.
pub const KARATSUBA_THRESHOLD: usize = 512;

/// A polynomial in `F_r[T]`; `coeffs[i]` is the coefficient of `T^i` and the
/// highest stored coefficient is never zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: vec![1] }
    }

    /// The indeterminate `T`.
    pub fn t(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: vec![0, 1] }
    }

    pub fn constant(field: &Field, code: u32) -> Poly {
        Self::from_raw(field, vec![code])
    }

    /// `code * T^deg`.
    pub fn monomial(field: &Field, code: u32, deg: usize) -> Poly {
        if code == 0 {
            return Self::zero(field);
        }
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = code;
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<u32>) -> Result<Poly> {
        if let Some(&c) = coeffs.iter().find(|&&c| c >= field.r()) {
            return Err(Error::InvalidArgument(format!("{c} is not an element of F_{}", field.r())));
        }
        Ok(Self::from_raw(field, coeffs))
    }

    pub fn from_elems(field: &Field, elems: &[FieldElem]) -> Result<Poly> {
        if elems.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_raw(field, elems.iter().map(FieldElem::code).collect()))
    }

    pub(crate) fn from_raw(field: &Field, mut coeffs: Vec<u32>) -> Poly {
        trim(&mut coeffs);
        Poly { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn apply(&self, other: &Poly, op: PolyOp) -> Result<Poly> {
        self.check(other)?;
        Ok(match op {
            PolyOp::Add => self.add_unchecked(other),
            PolyOp::Sub => self.sub_unchecked(other),
            PolyOp::Mul => self.mul_unchecked(other),
        })
    }

    fn add_unchecked(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (o, &s) in out.iter_mut().zip(short) {
            *o = f.add(*o, s);
        }
        Self::from_raw(f, out)
    }

    fn sub_unchecked(&self, other: &Poly) -> Poly {
        self.add_unchecked(&other.neg_ref())
    }

    fn neg_ref(&self) -> Poly {
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        Self::from_raw(&self.field, mul_slices(&self.field, &self.coeffs, &other.coeffs))
    }

    /// Multiply by a field element.
    pub fn scale(&self, code: u32) -> Poly {
        if code == 0 {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.mul(c, code)).collect() }
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Some(inv) if inv != 1 => self.scale(inv),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.coeffs.clone();
        let quot = rem_in_place(&self.field, &mut rem, &d.coeffs, true);
        Ok((Self::from_raw(&self.field, quot), Self::from_raw(&self.field, rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        self.check(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.coeffs.clone();
        rem_in_place(&self.field, &mut rem, &d.coeffs, false);
        Ok(Self::from_raw(&self.field, rem))
    }

    /// Quotient of a division known to be exact.
    pub(crate) fn exact_div(&self, d: &Poly) -> Poly {
        if d.is_one() {
            return self.clone();
        }
        let (q, r) = self.div_rem(d).expect("exact division by nonzero divisor");
        debug_assert!(r.is_zero(), "division was not exact");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        Ok(gcd_unchecked(self, other))
    }

    /// Evaluate at a field element (Horner).
    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn parse(field: &Field, s: &str) -> Result<Poly> {
        parse_poly(field, s)
    }
}

pub(crate) fn gcd_unchecked(a: &Poly, b: &Poly) -> Poly {
    if a.is_one() || b.is_one() {
        return Poly::one(&a.field);
    }
    let f = &a.field;
    let (mut x, mut y) = if a.coeffs.len() >= b.coeffs.len() {
        (a.coeffs.clone(), b.coeffs.clone())
    } else {
        (b.coeffs.clone(), a.coeffs.clone())
    };
    while !y.is_empty() {
        rem_in_place(f, &mut x, &y, false);
        std::mem::swap(&mut x, &mut y);
    }
    Poly::from_raw(f, x).monic()
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Whether products can be accumulated without reduction in `u32` for `terms` terms.
fn lazy_u32(field: &Field, terms: usize) -> bool {
    let pm1 = (field.p() - 1) as u64;
    field.is_prime_field() && (terms as u64 + 1) * pm1 * pm1 + pm1 < u32::MAX as u64
}

fn lazy_u64(field: &Field, terms: usize) -> bool {
    let pm1 = (field.p() - 1) as u128;
    field.is_prime_field() && (terms as u128 + 1) * pm1 * pm1 + pm1 < u64::MAX as u128
}

fn mul_slices(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.len() >= KARATSUBA_THRESHOLD && b.len() >= KARATSUBA_THRESHOLD {
        return karatsuba(f, a, b);
    }
    schoolbook(f, a, b)
}

fn schoolbook(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let n = a.len() + b.len() - 1;
    let p = f.p();
    if lazy_u32(f, b.len()) {
        let mut acc = vec![0u32; n];
        for (i, &x) in b.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (o, &y) in acc[i..i + a.len()].iter_mut().zip(a) {
                *o += x * y;
            }
        }
        acc.into_iter().map(|v| v % p).collect()
    } else if lazy_u64(f, b.len()) {
        let mut acc = vec![0u64; n];
        for (i, &x) in b.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (o, &y) in acc[i..i + a.len()].iter_mut().zip(a) {
                *o += x as u64 * y as u64;
            }
        }
        acc.into_iter().map(|v| (v % p as u64) as u32).collect()
    } else {
        let mut acc = vec![0u32; n];
        for (i, &x) in b.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (o, &y) in acc[i..i + a.len()].iter_mut().zip(a) {
                *o = f.add(*o, f.mul(x, y));
            }
        }
        acc
    }
}

fn add_into(f: &Field, dst: &mut [u32], src: &[u32]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = f.add(*d, s);
    }
}

fn sub_into(f: &Field, dst: &mut [u32], src: &[u32]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = f.sub(*d, s);
    }
}

fn karatsuba(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.len() < KARATSUBA_THRESHOLD / 8 || b.len() < KARATSUBA_THRESHOLD / 8 {
        return schoolbook(f, a, b);
    }
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let m = a.len().div_ceil(2);
    let mut out = vec![0u32; a.len() + b.len() - 1];
    if b.len() <= m {
        // Unbalanced: split only the longer operand.
        let lo = karatsuba(f, &a[..m], b);
        let hi = karatsuba(f, &a[m..], b);
        add_into(f, &mut out, &lo);
        add_into(f, &mut out[m..], &hi);
        return out;
    }
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);
    let z0 = karatsuba(f, a0, b0);
    let z2 = karatsuba(f, a1, b1);
    let mut sa = a0.to_vec();
    add_into(f, &mut sa, a1);
    let mut sb = b0.to_vec();
    add_into(f, &mut sb, b1);
    let mut z1 = karatsuba(f, &sa, &sb);
    sub_into(f, &mut z1, &z0);
    sub_into(f, &mut z1, &z2);
    add_into(f, &mut out, &z0);
    add_into(f, &mut out[m..], &z1);
    add_into(f, &mut out[2 * m..], &z2);
    out
}

/// Replace `a` by `a mod d` (trimmed); optionally return the quotient coefficients.
fn rem_in_place(f: &Field, a: &mut Vec<u32>, d: &[u32], want_quotient: bool) -> Vec<u32> {
    trim(a);
    let dd = d.len() - 1;
    if a.len() <= dd {
        return Vec::new();
    }
    let steps = a.len() - dd;
    let mut quot = if want_quotient { vec![0u32; steps] } else { Vec::new() };
    let inv_lc = f.inv(d[dd]).expect("nonzero leading coefficient");
    let p = f.p();
    if dd == 0 {
        if want_quotient {
            for (q, &c) in quot.iter_mut().zip(a.iter()) {
                *q = f.mul(c, inv_lc);
            }
        }
        a.clear();
        return quot;
    }
    if lazy_u32(f, steps) {
        for top in (dd..a.len()).rev() {
            let c = a[top] % p;
            if c == 0 {
                continue;
            }
            let q = f.mul(c, inv_lc);
            if want_quotient {
                quot[top - dd] = q;
            }
            let nq = p - q;
            let base = top - dd;
            for (o, &y) in a[base..top].iter_mut().zip(&d[..dd]) {
                *o += nq * y;
            }
        }
        a.truncate(dd);
        for v in a.iter_mut() {
            *v %= p;
        }
    } else if lazy_u64(f, steps) {
        let mut acc: Vec<u64> = a.iter().map(|&x| x as u64).collect();
        let p64 = p as u64;
        for top in (dd..acc.len()).rev() {
            let c = (acc[top] % p64) as u32;
            if c == 0 {
                continue;
            }
            let q = f.mul(c, inv_lc);
            if want_quotient {
                quot[top - dd] = q;
            }
            let nq = (p - q) as u64;
            let base = top - dd;
            for (o, &y) in acc[base..top].iter_mut().zip(&d[..dd]) {
                *o += nq * y as u64;
            }
        }
        a.clear();
        a.extend(acc[..dd].iter().map(|&v| (v % p64) as u32));
    } else {
        for top in (dd..a.len()).rev() {
            let c = a[top];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, inv_lc);
            if want_quotient {
                quot[top - dd] = q;
            }
            let nq = f.neg(q);
            let base = top - dd;
            for (o, &y) in a[base..top].iter_mut().zip(&d[..dd]) {
                *o = f.add(*o, f.mul(nq, y));
            }
        }
        a.truncate(dd);
    }
    trim(a);
    quot
}

// Operator sugar. These panic if the operands live in different fields;
// use `Poly::apply` for the fallible form.

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.apply(rhs, PolyOp::Add).expect("polynomials over different fields")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.apply(rhs, PolyOp::Sub).expect("polynomials over different fields")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.apply(rhs, PolyOp::Mul).expect("polynomials over different fields")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

// Canonical text form: terms by decreasing degree joined with " + ",
// e.g. "T^3 + 2*T". Coefficients in the prime subfield print as integers,
// other coefficients as coordinate tuples "(c0,c1,..)", lowest coordinate first.

pub(crate) fn fmt_coeff(field: &Field, code: u32) -> String {
    if code < field.p() {
        code.to_string()
    } else {
        let parts: Vec<String> = field.coords(code).iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = fmt_coeff(&self.field, c);
            match (deg, c) {
                (0, _) => f.write_str(&coeff)?,
                (1, 1) => f.write_str("T")?,
                (_, 1) => write!(f, "T^{deg}")?,
                (1, _) => write!(f, "{coeff}*T")?,
                _ => write!(f, "{coeff}*T^{deg}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{:?}]({})", self.field, self)
    }
}

fn parse_coeff(field: &Field, s: &str) -> Result<u32> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad coordinate {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        return field.from_coords(&coords).map_err(|e| Error::Parse(e.to_string()));
    }
    let v: u32 = s.parse().map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
    if v >= field.p() {
        return Err(Error::Parse(format!("coefficient {v} is not below p = {}", field.p())));
    }
    Ok(v)
}

fn parse_poly(field: &Field, s: &str) -> Result<Poly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<u32> = Vec::new();
    for term in split_top_level(s, '+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        let (coeff, deg) = match term.find('T') {
            None => (parse_coeff(field, term)?, 0usize),
            Some(pos) => {
                let (head, tail) = term.split_at(pos);
                let coeff = match head.trim() {
                    "" => 1,
                    h => parse_coeff(
                        field,
                        h.strip_suffix('*').ok_or_else(|| Error::Parse(format!("missing '*' in {term:?}")))?,
                    )?,
                };
                let deg = match tail[1..].trim() {
                    "" => 1,
                    rest => rest
                        .strip_prefix('^')
                        .and_then(|d| d.trim().parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad exponent in {term:?}")))?,
                };
                (coeff, deg)
            }
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] = field.add(coeffs[deg], coeff);
    }
    Ok(Poly::from_raw(field, coeffs))
}

/// Split on `sep` outside parentheses.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn p(field: &Field, s: &str) -> Poly {
        Poly::parse(field, s).unwrap()
    }

    #[test]
    fn schoolbook_example() {
        let f = f3();
        let prod = &p(&f, "T + 1") * &p(&f, "T + 2");
        assert_eq!(prod, p(&f, "T^2 + 2"));
        assert_eq!(prod.to_string(), "T^2 + 2");
    }

    #[test]
    fn zero_and_identity() {
        let f = f3();
        let g = p(&f, "2*T^4 + T + 1");
        assert!((&g * &Poly::zero(&f)).is_zero());
        assert_eq!(&g + &Poly::zero(&f), g);
        assert_eq!(Poly::zero(&f).degree(), None);
        assert_eq!(g.degree(), Some(4));
        assert_eq!(Poly::zero(&f).to_string(), "0");
    }

    #[test]
    fn gcd_examples() {
        let f = f3();
        let a = p(&f, "T^2 + 2*T"); // T^2 - T
        assert_eq!(a.gcd(&Poly::t(&f)).unwrap(), Poly::t(&f));
        let g = p(&f, "2*T^3 + T");
        assert_eq!(g.gcd(&Poly::zero(&f)).unwrap(), g.monic());
        assert_eq!(g.gcd(&g).unwrap(), g.monic());
        assert_eq!(Poly::zero(&f).gcd(&Poly::zero(&f)), Err(Error::ZeroGcd));
    }

    #[test]
    fn mismatched_fields() {
        let a = Poly::one(&f3());
        let b = Poly::one(&Field::prime(5).unwrap());
        assert_eq!(a.apply(&b, PolyOp::Add), Err(Error::FieldMismatch));
        assert_eq!(a.gcd(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = f3();
        let a = p(&f, "T^9 + 2*T^4 + T + 1");
        let d = p(&f, "2*T^3 + T + 2");
        let (q, r) = a.div_rem(&d).unwrap();
        assert!(r.degree().unwrap_or(0) < 3);
        assert_eq!(&(&q * &d) + &r, a);
        assert_eq!(a.div_rem(&Poly::zero(&f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for r in [2u32, 3, 9, 65537] {
            let f = Field::with_order(r).unwrap();
            for (la, lb) in [(600, 700), (1500, 520), (2000, 2000)] {
                let a: Vec<u32> = (0..la).map(|_| rng.gen_range(0..r)).collect();
                let b: Vec<u32> = (0..lb).map(|_| rng.gen_range(0..r)).collect();
                assert_eq!(karatsuba(&f, &a, &b), schoolbook(&f, &a, &b), "r = {r}");
            }
        }
    }

    #[test]
    fn extension_text_form() {
        let f9 = Field::with_order(9).unwrap();
        let u = f9.from_coords(&[0, 1]).unwrap();
        let poly = Poly::from_raw(&f9, vec![2, u, 1]);
        let text = poly.to_string();
        assert_eq!(text, "T^2 + (0,1)*T + 2");
        assert_eq!(Poly::parse(&f9, &text).unwrap(), poly);
    }

    #[test]
    fn parse_rejects_garbage() {
        let f = f3();
        assert!(Poly::parse(&f, "").is_err());
        assert!(Poly::parse(&f, "3*T").is_err());
        assert!(Poly::parse(&f, "T^").is_err());
        assert!(Poly::parse(&f, "2T").is_err());
    }

    fn arb_poly(r: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0..r, 0..max_len)
    }

    proptest! {
        #[test]
        fn text_round_trip(c in arb_poly(3, 20)) {
            let f = f3();
            let a = Poly::from_raw(&f, c);
            prop_assert_eq!(Poly::parse(&f, &a.to_string()).unwrap(), a);
        }

        #[test]
        fn degree_of_product(a in arb_poly(5, 12), b in arb_poly(5, 12)) {
            let f = Field::prime(5).unwrap();
            let (a, b) = (Poly::from_raw(&f, a), Poly::from_raw(&f, b));
            let prod = &a * &b;
            match (a.degree(), b.degree()) {
                (Some(x), Some(y)) => prop_assert_eq!(prod.degree(), Some(x + y)),
                _ => prop_assert!(prod.is_zero()),
            }
        }

        #[test]
        fn gcd_scales_with_common_factor(
            a in arb_poly(3, 8), b in arb_poly(3, 8), h in arb_poly(3, 5)
        ) {
            let f = f3();
            let (a, b, h) = (Poly::from_raw(&f, a), Poly::from_raw(&f, b), Poly::from_raw(&f, h));
            prop_assume!(!h.is_zero() && !(a.is_zero() && b.is_zero()));
            let lhs = (&a * &h).gcd(&(&b * &h)).unwrap();
            let rhs = &h.monic() * &a.gcd(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(2, 16), b in arb_poly(2, 16)) {
            let f = Field::prime(2).unwrap();
            let (a, b) = (Poly::from_raw(&f, a), Poly::from_raw(&f, b));
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b).unwrap();
            prop_assert!(g.is_monic());
            prop_assert!(a.rem(&g).unwrap().is_zero());
            prop_assert!(b.rem(&g).unwrap().is_zero());
        }
    }
}
