//! Exact rational arithmetic and the generalized-binomial machinery.
//!
//! Everything downstream (masses, curvatures, LP data) is a [`Rational`].
//! Irrational quantities such as `2^s` for non-integer `s` are never
//! approximated with floats; they are bracketed by directed-rounding
//! enclosures whose width shrinks with the requested precision.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction; always stored reduced with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rat_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = |msg: &str| Error::Parse {
        line: None,
        offset: None,
        message: format!("{msg}: {text:?}"),
    };
    let mut parts = text.splitn(2, '/');
    let num: BigInt = parts
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|_| err("bad numerator"))?;
    let den: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| err("bad denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Generalized binomial coefficient `C(s, i) = s(s-1)...(s-i+1) / i!`
/// for rational `s`; `C(s, 0) = 1`.
pub fn gen_binomial(s: &Rational, i: u32) -> Rational {
    let mut product = Rational::one();
    for j in 0..i {
        let factor = s - rat_int(i64::from(j));
        product *= factor / rat_int(i64::from(j) + 1);
    }
    product
}

/// Exact partial sum `sum_{i=0}^{up_to} C(s, i)`.
pub fn binomial_partial_sum(s: &Rational, up_to: u32) -> Rational {
    let mut total = Rational::zero();
    let mut term = Rational::one();
    for i in 0..=up_to {
        total += &term;
        // Incremental update: C(s, i+1) = C(s, i) * (s - i) / (i + 1).
        term = term * (s - rat_int(i64::from(i))) / rat_int(i64::from(i) + 1);
    }
    total
}

/// Directed-rounding enclosure `lo <= base^exponent <= hi` with
/// `hi - lo = 2^-bits`, computed by integer root extraction.
///
/// When the exponent is an integer the enclosure is a point. For
/// fractional exponents the true value is irrational (base >= 2 reduced
/// against the exponent's denominator), so both bounds are strict.
pub fn pow_enclosure(base: u32, exponent: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(base >= 2, "enclosure only defined for base >= 2");
    if exponent.is_negative() {
        let (lo, hi) = pow_enclosure(base, &-exponent.clone(), bits);
        // 1/hi <= base^e <= 1/lo; widen the dyadic bounds is fine, exactness
        // of the reciprocal keeps the bracket valid.
        return (hi.recip(), lo.recip());
    }
    let p = exponent.numer().to_biguint().expect("non-negative numerator");
    let q = exponent.denom().to_biguint().expect("positive denominator");
    if q.is_one() {
        let exact = Rational::from_integer(BigInt::from(
            BigUint::from(base).pow(p.to_u32().expect("integer exponent fits u32")),
        ));
        return (exact.clone(), exact);
    }
    // floor(2^bits * base^(p/q)) = floor((2^(bits*q) * base^p)^(1/q))
    let q32 = q.to_u32().expect("denominator fits u32");
    let p32 = p.to_u32().expect("numerator fits u32");
    let radicand = (BigUint::one() << (bits as usize * q32 as usize)) * BigUint::from(base).pow(p32);
    let root = radicand.nth_root(q32);
    let scale = BigInt::one() << bits as usize;
    let lo = Rational::new(BigInt::from(root.clone()), scale.clone());
    let hi = Rational::new(BigInt::from(root + BigUint::one()), scale);
    (lo, hi)
}

/// Exact comparison of an integer `count` against `base^exponent`
/// (exponent rational, non-negative) by cross-powering: `count` vs
/// `base^(p/q)` is `count^q` vs `base^p`.
///
/// Equality is only possible when the exponent is an integer; for a
/// fractional exponent in lowest terms the power is irrational.
pub fn cmp_int_vs_pow(count: &BigInt, base: u32, exponent: &Rational) -> Ordering {
    assert!(!exponent.is_negative() && !count.is_negative());
    let p = exponent.numer().to_u32().expect("exponent numerator fits u32");
    let q = exponent.denom().to_u32().expect("exponent denominator fits u32");
    let lhs = count.magnitude().pow(q);
    let rhs = BigUint::from(base).pow(p);
    lhs.cmp(&rhs)
}

/// Verdict of an exact-vs-enclosure comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonVerdict {
    /// The left side is certified strictly below the right side.
    StrictlyLess,
    /// The enclosure at maximum precision could not separate the sides.
    Inconclusive,
}

/// Outcome of comparing an exact rational against an irrational
/// right-hand side known only through an enclosure.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundComparison {
    pub lhs: Rational,
    pub rhs_lower: Rational,
    pub rhs_upper: Rational,
    pub verdict: ComparisonVerdict,
    /// Precision at which the verdict was reached.
    pub precision_bits: u32,
}

/// Checks the non-integer binomial bound
/// `sum_{i=0}^{floor(s)+1} C(s, i) < 2^s + 1/(4(s+1))`
/// for rational non-integer `s >= 1`.
///
/// The left side is exact; `2^s` is bracketed with increasing precision
/// until the strict inequality is certified or `max_precision_bits` is
/// reached.
pub fn check_noninteger_lemma(s: &Rational, max_precision_bits: u32) -> Result<BoundComparison> {
    if s.is_integer() {
        return Err(Error::Argument(format!(
            "s = {s} is an integer; the partial sum equals 2^s exactly there"
        )));
    }
    if *s < Rational::one() {
        return Err(Error::Argument(format!("s = {s} must be >= 1")));
    }
    let floor_s = s.floor().to_integer().to_u32().ok_or_else(|| {
        Error::Scale(format!("floor(s) for s = {s} does not fit in u32"))
    })?;
    let lhs = binomial_partial_sum(s, floor_s + 1);
    let extra = (rat_int(4) * (s + Rational::one())).recip();

    let mut bits = 16u32;
    loop {
        let (lo, hi) = pow_enclosure(2, s, bits);
        let rhs_lower = &lo + &extra;
        let rhs_upper = &hi + &extra;
        if lhs < rhs_lower {
            return Ok(BoundComparison {
                lhs,
                rhs_lower,
                rhs_upper,
                verdict: ComparisonVerdict::StrictlyLess,
                precision_bits: bits,
            });
        }
        if bits >= max_precision_bits {
            return Ok(BoundComparison {
                lhs,
                rhs_lower,
                rhs_upper,
                verdict: ComparisonVerdict::Inconclusive,
                precision_bits: bits,
            });
        }
        bits = (bits * 2).min(max_precision_bits);
    }
}

/// Floor of a non-negative rational as usize.
pub fn floor_usize(value: &Rational) -> Result<usize> {
    value
        .floor()
        .to_integer()
        .to_usize()
        .ok_or_else(|| Error::Scale(format!("floor({value}) does not fit in usize")))
}

/// Greatest common divisor helper re-exported for callers that scale
/// rational vectors to integers.
pub fn lcm_bigint(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}
