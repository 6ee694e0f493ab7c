//! Exact rationals: machine-word fractions that promote to big integers on
//! overflow and demote back when they fit.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Q {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Q {
    pub fn zero() -> Q {
        Q::Small(Ratio::zero())
    }
    pub fn one() -> Q {
        Q::Small(Ratio::one())
    }
    pub fn int(n: i64) -> Q {
        Q::Small(Ratio::from_integer(n))
    }
    pub fn new(n: i64, d: i64) -> Q {
        assert!(d != 0, "zero denominator");
        Q::Small(Ratio::new(n, d))
    }
    pub fn is_zero(&self) -> bool {
        match self {
            Q::Small(r) => r.is_zero(),
            Q::Big(r) => r.is_zero(),
        }
    }
    pub fn is_one(&self) -> bool {
        matches!(self, Q::Small(r) if r.is_one())
    }
    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(r) => r.is_integer(),
            Q::Big(r) => r.is_integer(),
        }
    }
    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(r) => r.is_negative(),
            Q::Big(r) => r.is_negative(),
        }
    }
    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
    pub fn recip(&self) -> Q {
        assert!(!self.is_zero(), "division by zero");
        match self {
            Q::Small(r) if *r.numer() != i64::MIN => Q::Small(r.recip()),
            _ => Q::from_big(self.to_big().recip()),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Q::Small(r) => BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Q::Big(r) => r.clone(),
        }
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(Ratio::new_raw(n, d)),
            _ => Q::Big(r),
        }
    }

    fn op(
        &self,
        o: &Q,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Q {
        if let (Q::Small(a), Q::Small(b)) = (self, o) {
            if let Some(r) = small(a, b) {
                return Q::Small(r);
            }
        }
        Q::from_big(big(self.to_big(), o.to_big()))
    }
}

impl Default for Q {
    fn default() -> Self {
        Q::zero()
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::int(n)
    }
}

impl Add for &Q {
    type Output = Q;
    fn add(self, o: &Q) -> Q {
        self.op(o, |a, b| a.checked_add(b), |a, b| a + b)
    }
}
impl Sub for &Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        self.op(o, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}
impl Mul for &Q {
    type Output = Q;
    fn mul(self, o: &Q) -> Q {
        self.op(o, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}
impl Div for &Q {
    type Output = Q;
    fn div(self, o: &Q) -> Q {
        assert!(!o.is_zero(), "division by zero");
        self.op(o, |a, b| a.checked_div(b), |a, b| a / b)
    }
}
impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(r) if *r.numer() != i64::MIN => Q::Small(-r),
            other => Q::from_big(-other.to_big()),
        }
    }
}
macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Q {
            type Output = Q;
            fn $f(self, o: Q) -> Q {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        match (self, o) {
            (Q::Small(a), Q::Small(b)) => {
                // cross-multiplication in i128 cannot overflow
                let l = *a.numer() as i128 * *b.denom() as i128;
                let r = *b.numer() as i128 * *a.denom() as i128;
                l.cmp(&r)
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(r) => write!(f, "{r}"),
            Q::Big(r) => write!(f, "{r}"),
        }
    }
}
impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Q {
    type Err = String;
    fn from_str(s: &str) -> Result<Q, String> {
        let r: BigRational = s.trim().parse().map_err(|e| format!("bad rational {s:?}: {e}"))?;
        Ok(Q::from_big(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Q::new(1, 2);
        let b = Q::new(1, 3);
        assert_eq!(&a + &b, Q::new(5, 6));
        assert_eq!(&a - &b, Q::new(1, 6));
        assert_eq!(&a * &b, Q::new(1, 6));
        assert_eq!(&a / &b, Q::new(3, 2));
        assert_eq!(-a.clone(), Q::new(-1, 2));
        assert!(Q::new(2, 4) == a);
        assert!(b < a);
        assert_eq!("-7/14".parse::<Q>().unwrap(), Q::new(-1, 2));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Q::int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Q::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back, Q::Small(_)));
        let m = Q::int(i64::MIN);
        assert_eq!(-(-m.clone()), m);
        assert_eq!(Q::int(i64::MIN).recip().recip(), Q::int(i64::MIN));
    }
}
