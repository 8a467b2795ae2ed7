//! Order-capped power series (jets) in several variables.
//!
//! A `Jet` is a polynomial truncated at a fixed total degree; all arithmetic
//! closes under the cap and stays exact.

use num_traits::One;
use thiserror::Error;

use crate::mpoly::MPoly;
use crate::rat::{binom_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    base: MPoly,
    cap: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JetError {
    #[error("jet caps differ ({0} vs {1})")]
    CapMismatch(u32, u32),
    #[error("constant term must be 1 for fractional powers")]
    NonUnitConstant,
    #[error("division by a jet with zero constant term")]
    NonUnitDivisor,
}

impl Jet {
    pub fn new(base: MPoly, cap: u32) -> Self {
        Jet {
            base: base.truncate_deg(cap),
            cap,
        }
    }

    pub fn zero(nvars: usize, cap: u32) -> Self {
        Jet {
            base: MPoly::zero(nvars),
            cap,
        }
    }

    pub fn constant(nvars: usize, c: Rat, cap: u32) -> Self {
        Jet {
            base: MPoly::constant(nvars, c),
            cap,
        }
    }

    pub fn variable(nvars: usize, i: usize, cap: u32) -> Self {
        Jet::new(MPoly::var(nvars, i), cap)
    }

    pub fn base(&self) -> &MPoly {
        &self.base
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    pub fn constant_term(&self) -> Rat {
        self.base.coeff(&vec![0; self.base.nvars()])
    }

    pub fn add(&self, other: &Jet) -> Jet {
        assert_eq!(self.cap, other.cap);
        Jet {
            base: self.base.add(&other.base),
            cap: self.cap,
        }
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        assert_eq!(self.cap, other.cap);
        Jet {
            base: self.base.sub(&other.base),
            cap: self.cap,
        }
    }

    pub fn neg(&self) -> Jet {
        Jet {
            base: self.base.neg(),
            cap: self.cap,
        }
    }

    pub fn scale(&self, c: &Rat) -> Jet {
        Jet {
            base: self.base.scale(c),
            cap: self.cap,
        }
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        assert_eq!(self.cap, other.cap);
        Jet {
            base: self.base.mul_capped(&other.base, Some(self.cap)),
            cap: self.cap,
        }
    }

    pub fn pow(&self, k: u32) -> Jet {
        let mut acc = Jet::constant(self.nvars(), Rat::one(), self.cap);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Re-truncates to a (smaller) cap.
    pub fn with_cap(&self, cap: u32) -> Jet {
        Jet::new(self.base.clone(), cap)
    }

    /// Formal partial derivative; the cap drops by one.
    pub fn partial(&self, i: usize) -> Jet {
        let cap = self.cap.saturating_sub(1);
        Jet::new(self.base.partial(i), cap)
    }

    /// Multiplicative inverse of a jet with constant term 1 (geometric series).
    pub fn inverse_unit(&self) -> Result<Jet, JetError> {
        if !self.constant_term().is_one() {
            return Err(JetError::NonUnitDivisor);
        }
        let n = self.nvars();
        let h = self.sub(&Jet::constant(n, Rat::one(), self.cap));
        // 1/(1+h) = sum (-h)^k
        let mut acc = Jet::constant(n, Rat::one(), self.cap);
        let mut pw = Jet::constant(n, Rat::one(), self.cap);
        let neg_h = h.neg();
        for _ in 1..=self.cap {
            pw = pw.mul(&neg_h);
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw);
        }
        Ok(acc)
    }
}

/// Composes `p(args)` truncated at total degree `cap`. The `args` all live in
/// the same variable set and must share `cap`.
pub fn jet_compose(p: &MPoly, args: &[Jet], cap: u32) -> Jet {
    assert_eq!(args.len(), p.nvars());
    for a in args {
        assert_eq!(a.cap(), cap);
    }
    let bases: Vec<MPoly> = args.iter().map(|a| a.base.clone()).collect();
    Jet::new(p.subst_capped(&bases, Some(cap)), cap)
}

/// Binomial series `j^q` for a jet with constant term exactly 1.
pub fn jet_pow_rational(j: &Jet, q: &Rat) -> Result<Jet, JetError> {
    if !j.constant_term().is_one() {
        return Err(JetError::NonUnitConstant);
    }
    let n = j.nvars();
    let cap = j.cap();
    let s = j.sub(&Jet::constant(n, Rat::one(), cap));
    let mut acc = Jet::constant(n, Rat::one(), cap);
    let mut pw = Jet::constant(n, Rat::one(), cap);
    for k in 1..=cap {
        pw = pw.mul(&s);
        if pw.is_zero() {
            break;
        }
        acc = acc.add(&pw.scale(&binom_rat(q, k as usize)));
    }
    Ok(acc)
}
