//! Elements of `K = F_r(T)` in canonical reduced form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{gcd_unchecked, split_top_level, Poly};

/// A reduced fraction `num / den`: `den` is monic and coprime to `num`,
/// zero is `0/1`. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFunc {
    pub fn zero(field: &Field) -> RatFunc {
        RatFunc { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: &Field) -> RatFunc {
        RatFunc { num: Poly::one(field), den: Poly::one(field) }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let den = Poly::one(p.field());
        RatFunc { num: p, den }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(field: &Field, n: i64) -> RatFunc {
        Self::from_poly(Poly::constant(field, field.from_int(n)))
    }

    /// `num / den`, reduced.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    /// `1 / den` for a nonzero polynomial.
    pub fn recip_poly(den: &Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_monic_parts(Poly::constant(den.field(), den.field().inv(den.leading()).unwrap()), den.monic()))
    }

    fn canonical(num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return Self::zero(num.field());
        }
        let g = gcd_unchecked(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        Self::normalize_den(num, den)
    }

    fn normalize_den(num: Poly, den: Poly) -> RatFunc {
        let lc = den.leading();
        if lc == 1 {
            return RatFunc { num, den };
        }
        let inv = num.field().inv(lc).expect("nonzero denominator");
        RatFunc { num: num.scale(inv), den: den.scale(inv) }
    }

    /// Trusted constructor: parts already coprime, `den` monic.
    pub(crate) fn from_monic_parts(num: Poly, den: Poly) -> RatFunc {
        debug_assert!(den.is_monic());
        if num.is_zero() {
            return Self::zero(num.field());
        }
        RatFunc { num, den }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Re-reduce; a no-op on any value built through the public API.
    pub fn canonicalize(&self) -> RatFunc {
        Self::canonical(self.num.clone(), self.den.clone())
    }

    pub fn apply(&self, other: &RatFunc, op: RatOp) -> Result<RatFunc> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(match op {
            RatOp::Add => self.add_unchecked(other),
            RatOp::Sub => self.add_unchecked(&other.neg_ref()),
            RatOp::Mul => self.mul_unchecked(other),
            RatOp::Div => self.mul_unchecked(&other.inv()?),
        })
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_den(self.den.clone(), self.num.clone()))
    }

    fn neg_ref(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, code: u32) -> RatFunc {
        if code == 0 {
            return Self::zero(self.field());
        }
        RatFunc { num: self.num.scale(code), den: self.den.clone() }
    }

    fn add_unchecked(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = &self.num + &other.num;
            return Self::canonical(num, self.den.clone());
        }
        let g = gcd_unchecked(&self.den, &other.den);
        if g.is_one() {
            let num = &(&self.num * &other.den) + &(&other.num * &self.den);
            return Self::from_monic_parts(num, &self.den * &other.den);
        }
        let b1 = self.den.exact_div(&g);
        let d1 = other.den.exact_div(&g);
        let t = &(&self.num * &d1) + &(&other.num * &b1);
        if t.is_zero() {
            return Self::zero(self.field());
        }
        let g2 = gcd_unchecked(&t, &g);
        if g2.is_one() {
            Self::from_monic_parts(t, &b1 * &other.den)
        } else {
            Self::from_monic_parts(t.exact_div(&g2), &b1 * &other.den.exact_div(&g2))
        }
    }

    fn mul_unchecked(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field());
        }
        let g1 = gcd_unchecked(&self.num, &other.den);
        let g2 = gcd_unchecked(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1);
        let d2 = other.den.exact_div(&g1);
        let n2 = other.num.exact_div(&g2);
        let d1 = self.den.exact_div(&g2);
        Self::normalize_den(&n1 * &n2, &d1 * &d2)
    }

    /// Multiply by a polynomial.
    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        self.mul_unchecked(&Self::from_poly(p.clone()))
    }

    /// Divide by a nonzero polynomial.
    pub fn div_poly(&self, p: &Poly) -> Result<RatFunc> {
        Ok(self.mul_unchecked(&Self::recip_poly(p)?))
    }

    pub fn pow(&self, k: u64) -> RatFunc {
        RatFunc { num: self.num.pow(k), den: self.den.pow(k) }
    }

    pub fn parse(field: &Field, s: &str) -> Result<RatFunc> {
        let s = s.trim();
        let parts = split_top_level(s, '/');
        match parts.as_slice() {
            [whole] => Ok(Self::from_poly(Poly::parse(field, strip_parens(whole))?)),
            [n, d] => Self::new(Poly::parse(field, strip_parens(n))?, Poly::parse(field, strip_parens(d))?),
            _ => Err(Error::Parse(format!("too many '/' in {s:?}"))),
        }
    }
}

/// Strip one pair of parentheses if it encloses the whole string.
fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let mut depth = 0i32;
        for ch in inner.chars() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        return s;
                    }
                }
                _ => {}
            }
        }
        if depth == 0 {
            return inner;
        }
    }
    s
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait for &RatFunc {
            type Output = RatFunc;
            /// Panics on mismatched fields (and on division by zero for `/`).
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.apply(rhs, $op).expect("invalid rational function operation")
            }
        }
    };
}

rat_binop!(Add, add, RatOp::Add);
rat_binop!(Sub, sub, RatOp::Sub);
rat_binop!(Mul, mul, RatOp::Mul);
rat_binop!(Div, div, RatOp::Div);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn inverse_example() {
        let f = f3();
        let d1 = Poly::parse(&f, "T^3 + 2*T").unwrap();
        let a = RatFunc::recip_poly(&d1).unwrap();
        assert!((&a * &RatFunc::from_poly(d1.clone())).is_one());
        assert_eq!(&a + &RatFunc::zero(&f), a);
        let two = &a + &a;
        assert_eq!(two.num(), &Poly::constant(&f, 2));
        assert_eq!(two.den(), &d1);
        assert_eq!(two.to_string(), "(2)/(T^3 + 2*T)");
    }

    #[test]
    fn canonical_form() {
        let f = f3();
        // (2T^2 + 2T) / (2T) = (T + 1) / 1
        let x = RatFunc::new(Poly::parse(&f, "2*T^2 + 2*T").unwrap(), Poly::parse(&f, "2*T").unwrap()).unwrap();
        assert_eq!(x.to_string(), "T + 1");
        assert!(RatFunc::new(Poly::one(&f), Poly::zero(&f)).is_err());
        assert_eq!(RatFunc::zero(&f).inv(), Err(Error::DivisionByZero));
        let zero = RatFunc::new(Poly::zero(&f), Poly::t(&f)).unwrap();
        assert!(zero.den().is_one());
    }

    #[test]
    fn parse_round_trip_with_tuples() {
        let f9 = Field::with_order(9).unwrap();
        let x = RatFunc::parse(&f9, "(T + (1,1))/(T^2 + (0,2))").unwrap();
        assert_eq!(RatFunc::parse(&f9, &x.to_string()).unwrap(), x);
    }

    fn arb_rat() -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
        (prop::collection::vec(0u32..3, 0..7), prop::collection::vec(0u32..3, 1..7))
    }

    fn build(f: &Field, (n, d): (Vec<u32>, Vec<u32>)) -> Option<RatFunc> {
        RatFunc::new(Poly::from_coeffs(f, n).unwrap(), Poly::from_coeffs(f, d).unwrap()).ok()
    }

    proptest! {
        #[test]
        fn canonicalization_idempotent(x in arb_rat()) {
            let f = f3();
            if let Some(x) = build(&f, x) {
                prop_assert_eq!(x.canonicalize(), x.clone());
                prop_assert_eq!(RatFunc::parse(&f, &x.to_string()).unwrap(), x);
            }
        }

        #[test]
        fn field_laws(x in arb_rat(), y in arb_rat(), z in arb_rat()) {
            let f = f3();
            if let (Some(x), Some(y), Some(z)) = (build(&f, x), build(&f, y), build(&f, z)) {
                prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
                prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
                prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                prop_assert!((&x - &x).is_zero());
                if !y.is_zero() {
                    prop_assert_eq!(&(&x / &y) * &y, x.clone());
                }
            }
        }
    }
}
