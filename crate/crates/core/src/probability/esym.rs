//! Elementary symmetric polynomials of non-negative values with an
//! extended exponent range.
//!
//! `e_k(ν)` for the kernel spans thousands of orders of magnitude across
//! `k`, so each coefficient carries its own binary exponent. Scaling is by
//! exact powers of two and every update adds non-negative terms, so the
//! only rounding is the ordinary relative error of each product and sum.

/// `mantissa · 2^exponent`, with the mantissa kept in `[2^-512, 2^512]`
/// unless it is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    mantissa: f64,
    exponent: i64,
}

const RESCALE_BITS: i32 = 512;

impl Scaled {
    pub const ZERO: Self = Self { mantissa: 0.0, exponent: 0 };
    pub const ONE: Self = Self { mantissa: 1.0, exponent: 0 };

    pub fn from_f64(x: f64) -> Self {
        Self { mantissa: x, exponent: 0 }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    pub fn ln(&self) -> f64 {
        self.mantissa.ln() + self.exponent as f64 * std::f64::consts::LN_2
    }

    fn normalized(mut self) -> Self {
        if self.mantissa == 0.0 || !self.mantissa.is_finite() {
            return self;
        }
        let big = 2f64.powi(RESCALE_BITS);
        while self.mantissa.abs() > big {
            self.mantissa /= big;
            self.exponent += RESCALE_BITS as i64;
        }
        while self.mantissa.abs() < 1.0 / big {
            self.mantissa *= big;
            self.exponent -= RESCALE_BITS as i64;
        }
        self
    }

    pub fn mul(self, other: Self) -> Self {
        Self {
            mantissa: self.mantissa * other.mantissa,
            exponent: self.exponent + other.exponent,
        }
        .normalized()
    }

    pub fn add(self, other: Self) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exponent >= other.exponent {
            (self, other)
        } else {
            (other, self)
        };
        let shift = hi.exponent - lo.exponent;
        // both mantissas are within 2^±512, so beyond this `lo` is below half an ulp of `hi`
        if shift > 2200 {
            return hi;
        }
        let mut lo_m = lo.mantissa;
        let mut left = shift;
        while left > 0 {
            let step = left.min(RESCALE_BITS as i64);
            lo_m *= 2f64.powi(-(step as i32));
            left -= step;
        }
        Self {
            mantissa: hi.mantissa + lo_m,
            exponent: hi.exponent,
        }
        .normalized()
    }
}

/// Coefficients of `Π_i (1 + values_i z)` in ascending powers of `z`,
/// accumulated in the order given.
pub fn elementary_symmetric(values: &[f64]) -> Vec<Scaled> {
    let mut coeffs = vec![Scaled::ZERO; values.len() + 1];
    coeffs[0] = Scaled::ONE;
    for (i, &v) in values.iter().enumerate() {
        let v = Scaled::from_f64(v);
        for k in (1..=i + 1).rev() {
            coeffs[k] = coeffs[k].add(coeffs[k - 1].mul(v));
        }
    }
    coeffs
}
