//! Arbitrary-precision rational scalars.
//!
//! `Rat` is `num_rational::BigRational`: always stored in lowest terms with a
//! positive denominator, which is exactly the invariant the rest of the crate
//! relies on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics on `q == 0`.
pub fn ratq(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

/// Parses `p`, `-p`, or `p/q` (optional surrounding whitespace).
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("bad rational literal `{s}`"))?;
    let d: BigInt = match den {
        Some(b) => b
            .parse()
            .map_err(|_| format!("bad rational literal `{s}`"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(n, d))
}

/// Lowest-terms display, `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Binomial coefficient C(n, k) as a usize (exact).
pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    let s = acc.to_string();
    s.parse().expect("binomial overflow")
}

/// Generalized binomial C(q, k) for rational q: q(q-1)...(q-k+1)/k!.
pub fn binom_rat(q: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= q - rat(i as i64);
        acc /= rat((i + 1) as i64);
    }
    acc
}

/// Sign-magnitude check used by a few reports.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}
