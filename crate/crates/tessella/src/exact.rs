//! Exact arithmetic in the ring `{a + b*sqrt(3) : a, b rational}`.
//!
//! Every coordinate of the hexagon/kite constructions lives in this ring, so
//! polygon closure, edge classification and area checks are decided without
//! tolerances. Floats appear only at render time.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = Rational64;

pub(crate) const SQRT3_F64: f64 = 1.732_050_807_568_877_2;

/// An exact value `a + b*sqrt(3)`.
///
/// Because sqrt(3) is irrational, the representation is unique, so structural
/// equality on the reduced coefficients coincides with numeric equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Sqrt3 {
    pub a: Rat,
    pub b: Rat,
}

impl Sqrt3 {
    pub const fn new(a: Rat, b: Rat) -> Self {
        Sqrt3 { a, b }
    }

    /// A purely rational value.
    pub fn rational(a: Rat) -> Self {
        Sqrt3 {
            a,
            b: Rat::zero(),
        }
    }

    /// A rational multiple of sqrt(3).
    pub fn root3(b: Rat) -> Self {
        Sqrt3 {
            a: Rat::zero(),
            b,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Sqrt3::rational(Rat::from_integer(v))
    }

    pub fn zero() -> Self {
        Sqrt3::default()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the value has no sqrt(3) component.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap() + self.b.to_f64().unwrap() * SQRT3_F64
    }

    /// Exact sign of the value, decided by comparing `a^2` against `3 b^2`
    /// when the two terms disagree.
    pub fn sign(&self) -> Ordering {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            // Mixed signs: |a| vs sqrt(3)|b| decided on squares. Equality is
            // impossible (it would make sqrt(3) rational).
            (Ordering::Greater, Ordering::Less) => (self.a * self.a).cmp(&(self.b * self.b * 3)),
            (Ordering::Less, Ordering::Greater) => (self.b * self.b * 3).cmp(&(self.a * self.a)),
        }
    }
}

fn rat_sign(r: &Rat) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl Add for Sqrt3 {
    type Output = Sqrt3;
    fn add(self, rhs: Sqrt3) -> Sqrt3 {
        Sqrt3::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for Sqrt3 {
    type Output = Sqrt3;
    fn sub(self, rhs: Sqrt3) -> Sqrt3 {
        Sqrt3::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Mul for Sqrt3 {
    type Output = Sqrt3;
    fn mul(self, rhs: Sqrt3) -> Sqrt3 {
        // (a1 + b1 r)(a2 + b2 r) = a1 a2 + 3 b1 b2 + (a1 b2 + a2 b1) r
        Sqrt3::new(
            self.a * rhs.a + self.b * rhs.b * 3,
            self.a * rhs.b + rhs.a * self.b,
        )
    }
}

impl Mul<Rat> for Sqrt3 {
    type Output = Sqrt3;
    fn mul(self, rhs: Rat) -> Sqrt3 {
        Sqrt3::new(self.a * rhs, self.b * rhs)
    }
}

impl Neg for Sqrt3 {
    type Output = Sqrt3;
    fn neg(self) -> Sqrt3 {
        Sqrt3::new(-self.a, -self.b)
    }
}

impl AddAssign for Sqrt3 {
    fn add_assign(&mut self, rhs: Sqrt3) {
        *self = *self + rhs;
    }
}

impl SubAssign for Sqrt3 {
    fn sub_assign(&mut self, rhs: Sqrt3) {
        *self = *self - rhs;
    }
}

impl PartialOrd for Sqrt3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Sqrt3 {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).sign()
    }
}

impl fmt::Display for Sqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = if self.b == Rat::from_integer(1) {
            "sqrt3".to_string()
        } else if self.b == Rat::from_integer(-1) {
            "-sqrt3".to_string()
        } else {
            format!("{}*sqrt3", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{root}")
        } else if self.b.is_positive() {
            write!(f, "{} + {}", self.a, root)
        } else {
            write!(f, "{} - {}", self.a, root.trim_start_matches('-'))
        }
    }
}

impl fmt::Debug for Sqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A point (or vector) of the exact plane.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Sqrt3,
    pub y: Sqrt3,
}

impl Point {
    pub const fn new(x: Sqrt3, y: Sqrt3) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(Sqrt3::zero(), Sqrt3::zero())
    }

    pub fn midpoint(p: Point, q: Point) -> Point {
        let half = Rat::new(1, 2);
        Point::new((p.x + q.x) * half, (p.y + q.y) * half)
    }

    /// Cross product `self.x * rhs.y - self.y * rhs.x` (vectors).
    pub fn cross(&self, rhs: &Point) -> Sqrt3 {
        self.x * rhs.y - self.y * rhs.x
    }

    pub fn dot(&self, rhs: &Point) -> Sqrt3 {
        self.x * rhs.x + self.y * rhs.y
    }

    /// Exact squared length of the vector.
    pub fn norm_sq(&self) -> Sqrt3 {
        self.dot(self)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<Rat> for Point {
    type Output = Point;
    fn mul(self, rhs: Rat) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Unit vector at `k * 30` degrees. Every entry lies in the ring.
pub fn dir30(k: i32) -> Point {
    let k = k.rem_euclid(12);
    let half = Rat::new(1, 2);
    let cos = |k: i32| -> Sqrt3 {
        match k.rem_euclid(12) {
            0 => Sqrt3::from_int(1),
            1 => Sqrt3::root3(half),
            2 => Sqrt3::rational(half),
            3 => Sqrt3::zero(),
            4 => Sqrt3::rational(-half),
            5 => Sqrt3::root3(-half),
            6 => Sqrt3::from_int(-1),
            7 => Sqrt3::root3(-half),
            8 => Sqrt3::rational(-half),
            9 => Sqrt3::zero(),
            10 => Sqrt3::rational(half),
            _ => Sqrt3::root3(half),
        }
    };
    // sin(t) = cos(t - 90 degrees)
    Point::new(cos(k), cos(k - 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: (i64, i64), b: (i64, i64)) -> Sqrt3 {
        Sqrt3::new(Rat::new(a.0, a.1), Rat::new(b.0, b.1))
    }

    #[test]
    fn ring_multiplication() {
        // (1 + sqrt3)(2 - sqrt3) = 2 - sqrt3 + 2 sqrt3 - 3 = -1 + sqrt3
        let p = v((1, 1), (1, 1)) * v((2, 1), (-1, 1));
        assert_eq!(p, v((-1, 1), (1, 1)));
    }

    #[test]
    fn sign_mixed_terms() {
        // 2 - sqrt3 > 0, 3/2 - sqrt3 < 0
        assert_eq!(v((2, 1), (-1, 1)).sign(), Ordering::Greater);
        assert_eq!(v((3, 2), (-1, 1)).sign(), Ordering::Less);
        assert_eq!(v((-2, 1), (1, 1)).sign(), Ordering::Less);
        assert_eq!(v((-3, 2), (1, 1)).sign(), Ordering::Greater);
        assert_eq!(Sqrt3::zero().sign(), Ordering::Equal);
    }

    #[test]
    fn zero_only_at_origin() {
        assert!(Sqrt3::zero().is_zero());
        assert!(!v((0, 1), (1, 2)).is_zero());
        assert!(!v((1, 2), (0, 1)).is_zero());
    }

    #[test]
    fn display_forms() {
        assert_eq!(v((0, 1), (0, 1)).to_string(), "0");
        assert_eq!(v((3, 2), (0, 1)).to_string(), "3/2");
        assert_eq!(v((0, 1), (1, 1)).to_string(), "sqrt3");
        assert_eq!(v((0, 1), (-6, 1)).to_string(), "-6*sqrt3");
        assert_eq!(v((1, 2), (3, 2)).to_string(), "1/2 + 3/2*sqrt3");
        assert_eq!(v((1, 1), (-1, 1)).to_string(), "1 - sqrt3");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb() -> impl Strategy<Value = Sqrt3> {
            ((-100i64..100, 1i64..16), (-100i64..100, 1i64..16))
                .prop_map(|(a, b)| v(a, b))
        }

        proptest! {
            #[test]
            fn ring_ops_agree_with_floats(x in arb(), y in arb()) {
                let close = |e: Sqrt3, f: f64| (e.to_f64() - f).abs() < 1e-9;
                prop_assert!(close(x + y, x.to_f64() + y.to_f64()));
                prop_assert!(close(x - y, x.to_f64() - y.to_f64()));
                prop_assert!(close(x * y, x.to_f64() * y.to_f64()));
                prop_assert!(close(-x, -x.to_f64()));
            }

            #[test]
            fn sign_agrees_with_floats(x in arb()) {
                let f = x.to_f64();
                if f.abs() > 1e-6 {
                    prop_assert_eq!(x.sign() == Ordering::Greater, f > 0.0);
                    prop_assert_eq!(x.sign() == Ordering::Less, f < 0.0);
                }
            }
        }
    }

    #[test]
    fn dir30_table_is_unit_length() {
        for k in 0..12 {
            let d = dir30(k);
            assert_eq!(d.norm_sq(), Sqrt3::from_int(1), "k={k}");
        }
        assert_eq!(dir30(0), Point::new(Sqrt3::from_int(1), Sqrt3::zero()));
        assert_eq!(dir30(3), Point::new(Sqrt3::zero(), Sqrt3::from_int(1)));
        assert_eq!(
            dir30(2),
            Point::new(
                Sqrt3::rational(Rat::new(1, 2)),
                Sqrt3::root3(Rat::new(1, 2))
            )
        );
    }
}
