//! Rational functions in the level parameter `h` over ℚ(i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::field::{ArithError, Field};
use crate::gauss::GaussianRational;
use crate::unipoly::UniPoly;

/// `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone)]
pub struct RatFn {
    num: UniPoly,
    den: UniPoly,
}

impl RatFn {
    pub fn from_poly(p: UniPoly) -> Self {
        Self { num: p, den: UniPoly::one() }
    }

    /// The indeterminate `h`.
    pub fn h() -> Self {
        Self::from_poly(UniPoly::var())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    fn reduced(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return <Self as Field>::zero();
        }
        let g = num.gcd(&den).expect("gcd over Q(i)");
        let num = num.exact_div(&g).expect("exact");
        let den = den.exact_div(&g).expect("exact");
        let lc = den.lc().inv().expect("nonzero denominator");
        Self { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg0() == 0
    }

    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.num.deg0() == 0
    }

    /// The constant value when `h` does not occur.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// Degree in `h` when the function is a polynomial.
    pub fn poly_degree(&self) -> Option<usize> {
        self.is_polynomial().then(|| self.num.deg0())
    }

    pub fn eval_complex(&self, h: Complex64) -> Complex64 {
        self.num.eval_complex(h) / self.den.eval_complex(h)
    }
}

impl Field for RatFn {
    fn zero() -> Self {
        Self { num: UniPoly::zero(), den: UniPoly::one() }
    }
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if self.num.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let lc = self.num.lc().inv()?;
        Ok(Self { num: self.den.scale(&lc), den: self.num.scale(&lc) })
    }
    fn from_gauss(g: &GaussianRational) -> Self {
        Self::constant(g.clone())
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(GaussianRational::from(n))
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, o: RatFn) -> RatFn {
        if self.den.deg0() == 0 && o.den.deg0() == 0 {
            return RatFn::from_poly(&self.num + &o.num);
        }
        RatFn::reduced(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, o: RatFn) -> RatFn {
        self + (-o)
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, o: RatFn) -> RatFn {
        if self.num.is_zero() || o.num.is_zero() {
            return <RatFn as Field>::zero();
        }
        if self.den.deg0() == 0 && o.den.deg0() == 0 {
            return RatFn::from_poly(&self.num * &o.num);
        }
        RatFn::reduced(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den }
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

fn fmt_hpoly(p: &UniPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cs = c.to_string();
        let cs = if !c.is_real() && !num_traits::Zero::is_zero(&c.re) { format!("({cs})") } else { cs };
        let term = match k {
            0 => cs,
            _ => {
                let hp = if k == 1 { "h".to_string() } else { format!("h^{k}") };
                match cs.as_str() {
                    "1" => hp,
                    "-1" => format!("-{hp}"),
                    _ => format!("{cs}*{hp}"),
                }
            }
        };
        parts.push(term);
    }
    let mut s = String::new();
    for (i, t) in parts.iter().enumerate() {
        if i == 0 {
            s.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(t);
        }
    }
    s
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = fmt_hpoly(&self.num);
        if self.is_polynomial() {
            write!(f, "{n}")
        } else {
            write!(f, "({n})/({})", fmt_hpoly(&self.den))
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
