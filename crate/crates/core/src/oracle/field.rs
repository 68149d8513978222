//! Coefficient fields for the oracle: `GF(p)` and exact rationals.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

pub trait Field: Clone + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Send + Sync + Debug;

    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be prime and below `2^31`; callers validate.
    pub const fn new(p: u32) -> PrimeField {
        PrimeField { p: p as u64 }
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p) as u32
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.p) as u32
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            (self.p - *a as u64) as u32
        }
    }

    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in GF({})", self.p);
        let mut base = *a as u64;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc as u32
    }
}

/// Exact rational. Values whose reduced numerator and denominator fit in
/// `i64` stay in the `Small` form, so the representation is unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rat {
    /// Reduced, denominator positive.
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rat {
    fn from_i128(num: i128, den: i128) -> Rat {
        debug_assert!(den != 0);
        if den == 1 {
            if let Ok(n) = i64::try_from(num) {
                return Rat::Small(n, 1);
            }
        }
        if let (Ok(n), Ok(d)) = (i64::try_from(num), i64::try_from(den)) {
            if n != i64::MIN && d != i64::MIN {
                let g = n.gcd(&d);
                let (n, d) = (n / g, d / g);
                return if d < 0 { Rat::Small(-n, -d) } else { Rat::Small(n, d) };
            }
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::Small(n, d),
            _ => Rat::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(r) => (**r).clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::Small(0, 1)
    }

    fn from_i64(&self, v: i64) -> Rat {
        Rat::Small(v, 1)
    }

    fn is_zero(&self, a: &Rat) -> bool {
        matches!(a, Rat::Small(0, _))
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        match (a, b) {
            (Rat::Small(an, ad), Rat::Small(bn, bd)) => {
                if *ad == 1 && *bd == 1 {
                    if let Some(v) = an.checked_add(*bn) {
                        return Rat::Small(v, 1);
                    }
                }
                let (an, ad, bn, bd) = (*an as i128, *ad as i128, *bn as i128, *bd as i128);
                if ad == bd {
                    Rat::from_i128(an + bn, ad)
                } else {
                    Rat::from_i128(an * bd + bn * ad, ad * bd)
                }
            }
            _ => Rat::from_big(a.to_big() + b.to_big()),
        }
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        match (a, b) {
            (Rat::Small(an, 1), Rat::Small(bn, 1)) => match an.checked_mul(*bn) {
                Some(v) => Rat::Small(v, 1),
                None => Rat::from_i128(*an as i128 * *bn as i128, 1),
            },
            (Rat::Small(an, ad), Rat::Small(bn, bd)) => {
                Rat::from_i128(*an as i128 * *bn as i128, *ad as i128 * *bd as i128)
            }
            _ => Rat::from_big(a.to_big() * b.to_big()),
        }
    }

    fn neg(&self, a: &Rat) -> Rat {
        match a {
            Rat::Small(n, d) if *n != i64::MIN => Rat::Small(-n, *d),
            _ => Rat::from_big(-a.to_big()),
        }
    }

    fn inv(&self, a: &Rat) -> Rat {
        assert!(!self.is_zero(a), "inverse of zero rational");
        match a {
            Rat::Small(n, d) => Rat::from_i128(*d as i128, *n as i128),
            Rat::Big(r) => {
                let (n, d) = (r.numer(), r.denom());
                let (n, d) = if n.is_negative() { (-d, -n) } else { (d.clone(), n.clone()) };
                Rat::from_big(BigRational::new_raw(n, d))
            }
        }
    }
}

impl Rat {
    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1)) || matches!(self, Rat::Big(r) if r.is_one())
    }
}
