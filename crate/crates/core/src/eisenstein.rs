//! Exact arithmetic in ℤ[ω] with ω = e^{iπ/3}, so ω² = ω − 1.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eisenstein {
    pub a: i64,
    pub b: i64,
}

impl Eisenstein {
    pub const ZERO: Self = Self { a: 0, b: 0 };
    pub const ONE: Self = Self { a: 1, b: 0 };
    pub const OMEGA: Self = Self { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    /// N(a + bω) = a² + ab + b².
    pub fn norm(self) -> i64 {
        self.a * self.a + self.a * self.b + self.b * self.b
    }

    /// Membership in the sublattice mℤ + mωℤ.
    pub fn in_sublattice(self, m: i64) -> bool {
        assert!(m > 0, "sublattice index must be positive");
        self.a % m == 0 && self.b % m == 0
    }

    /// Image in ℂ as `(re, im)`.
    pub fn to_complex(self) -> (f64, f64) {
        let h = 3f64.sqrt() / 2.0;
        (self.a as f64 + 0.5 * self.b as f64, h * self.b as f64)
    }

    pub fn scale(self, k: i64) -> Self {
        Self::new(k * self.a, k * self.b)
    }
}

impl Add for Eisenstein {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl AddAssign for Eisenstein {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Eisenstein {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl SubAssign for Eisenstein {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Eisenstein {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for Eisenstein {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bd(ω − 1)
        Self::new(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a + self.b * o.b)
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}-{} w", self.a, -self.b)
        } else {
            write!(f, "{}+{} w", self.a, self.b)
        }
    }
}

/// The sixth root of unity ζ^k = e^{kπi/3}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root6(u8);

impl Root6 {
    pub const ONE: Self = Self(0);

    pub fn new(k: i64) -> Self {
        Self(k.rem_euclid(6) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn to_eisenstein(self) -> Eisenstein {
        const TABLE: [Eisenstein; 6] = [
            Eisenstein::new(1, 0),
            Eisenstein::new(0, 1),
            Eisenstein::new(-1, 1),
            Eisenstein::new(-1, 0),
            Eisenstein::new(0, -1),
            Eisenstein::new(1, -1),
        ];
        TABLE[self.0 as usize]
    }
}

impl Mul for Root6 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self((self.0 + o.0) % 6)
    }
}

impl Neg for Root6 {
    type Output = Self;
    fn neg(self) -> Self {
        Self((self.0 + 3) % 6)
    }
}
