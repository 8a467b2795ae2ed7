//! Sparse multivariate polynomials over `Rat`.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, so iteration
//! order (and therefore printing) is deterministic. No zero coefficient is
//! ever stored.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rat::{fmt_rat, parse_rat, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

/// Naming convention for printing and parsing variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarStyle {
    /// Parameters `t1..tn`.
    T,
    /// Homogeneous coordinates `x0..x{m-1}`.
    X,
}

impl VarStyle {
    pub fn name(&self, idx: usize) -> String {
        match self {
            VarStyle::T => format!("t{}", idx + 1),
            VarStyle::X => format!("x{idx}"),
        }
    }

    fn index(&self, name: &str, nvars: usize) -> Result<usize, String> {
        let (prefix, base) = match self {
            VarStyle::T => ('t', 1usize),
            VarStyle::X => ('x', 0usize),
        };
        let rest = name
            .strip_prefix(prefix)
            .ok_or_else(|| format!("unknown variable `{name}`"))?;
        let k: usize = rest
            .parse()
            .map_err(|_| format!("unknown variable `{name}`"))?;
        if k < base || k - base >= nvars {
            return Err(format!("variable `{name}` out of range"));
        }
        Ok(k - base)
    }
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The variable `i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rat::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Rat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Lowest total degree among the terms (0 for the zero polynomial).
    pub fn min_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .min()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.total_degree() == self.min_degree()
    }

    pub fn neg(&self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            p.terms.insert(e.clone(), -c.clone());
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut p = Self::zero(self.nvars);
        for (e, k) in &self.terms {
            p.terms.insert(e.clone(), k.clone() * c.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_capped(other, None)
    }

    /// Product, dropping any term of total degree above `cap`.
    pub fn mul_capped(&self, other: &Self, cap: Option<u32>) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut p = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if let Some(k) = cap {
                    let db: u32 = eb.iter().sum();
                    if da + db > k {
                        continue;
                    }
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca.clone() * cb.clone());
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        self.pow_capped(k, None)
    }

    pub fn pow_capped(&self, k: u32, cap: Option<u32>) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul_capped(self, cap);
        }
        acc
    }

    /// Drops every term of total degree > `cap`.
    pub fn truncate_deg(&self, cap: u32) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() <= cap {
                p.terms.insert(e.clone(), c.clone());
            }
        }
        p
    }

    /// The homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == d {
                p.terms.insert(e.clone(), c.clone());
            }
        }
        p
    }

    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            p.add_term(e2, c.clone() * Rat::from_integer(e[i].into()));
        }
        p
    }

    pub fn eval(&self, args: &[Rat]) -> Rat {
        assert_eq!(args.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= args[i].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Full substitution `self(args)`, with `args[i]` in any common variable set.
    pub fn subst(&self, args: &[MPoly]) -> MPoly {
        self.subst_capped(args, None)
    }

    pub fn subst_capped(&self, args: &[MPoly], cap: Option<u32>) -> MPoly {
        assert_eq!(args.len(), self.nvars);
        let out_vars = if args.is_empty() { 0 } else { args[0].nvars };
        // Cache powers of each argument.
        let mut pows: Vec<Vec<MPoly>> = args
            .iter()
            .map(|a| vec![MPoly::one(out_vars), a.clone()])
            .collect();
        let mut acc = MPoly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(out_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while pows[i].len() <= k as usize {
                    let next = pows[i].last().unwrap().mul_capped(&args[i], cap);
                    pows[i].push(next);
                }
                term = term.mul_capped(&pows[i][k as usize], cap);
                if term.is_zero() {
                    break;
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitutes linear forms: variable `i` is replaced by the linear form
    /// with coefficient vector `lin[i]` (length = new variable count).
    pub fn subst_linear(&self, lin: &[Vec<Rat>]) -> MPoly {
        assert_eq!(lin.len(), self.nvars);
        let out_vars = lin.first().map(|v| v.len()).unwrap_or(0);
        let args: Vec<MPoly> = lin
            .iter()
            .map(|coeffs| {
                let mut p = MPoly::zero(out_vars);
                for (j, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        let mut e = vec![0u32; out_vars];
                        e[j] = 1;
                        p.add_term(e, c.clone());
                    }
                }
                p
            })
            .collect();
        self.subst(&args)
    }

    pub fn to_string_style(&self, style: VarStyle) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        // Graded-descending, then lexicographic: highest degree first.
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (pos, e) in keys.iter().enumerate() {
            let c = &self.terms[*e as &Vec<u32>];
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if pos == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if k == 1 {
                    factors.push(style.name(i));
                } else {
                    factors.push(format!("{}^{}", style.name(i), k));
                }
            }
            if factors.is_empty() {
                out.push_str(&fmt_rat(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&fmt_rat(&mag));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Parses the polynomial grammar: rational literals, variables in the
    /// given style, `+ - * ^`, parentheses; whitespace insignificant.
    pub fn parse(input: &str, nvars: usize, style: VarStyle) -> Result<MPoly, String> {
        let tokens = tokenize(input)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            nvars,
            style,
        };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(format!("unexpected trailing input in `{input}`"));
        }
        Ok(p)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_style(VarStyle::T))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                // A '/' directly after digits (with optional spaces) begins the
                // denominator of a rational literal.
                let mut j = i;
                while j < chars.len() && chars[j] == ' ' {
                    j += 1;
                }
                if j < chars.len() && chars[j] == '/' {
                    j += 1;
                    while j < chars.len() && chars[j] == ' ' {
                        j += 1;
                    }
                    let dstart = j;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if dstart == j {
                        return Err("expected digits after `/`".to_string());
                    }
                    let lit: String = chars[start..i].iter().collect::<String>()
                        + "/"
                        + &chars[dstart..j].iter().collect::<String>();
                    out.push(Tok::Num(parse_rat(&lit)?));
                    i = j;
                } else {
                    let lit: String = chars[start..i].iter().collect();
                    out.push(Tok::Num(parse_rat(&lit)?));
                }
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Tok::Var(chars[start..i].iter().collect()));
            }
            _ => return Err(format!("unexpected character `{c}`")),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
    nvars: usize,
    style: VarStyle,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<MPoly, String> {
        let mut negate = false;
        while matches!(self.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
            if matches!(self.peek(), Some(Tok::Minus)) {
                negate = !negate;
            }
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, String> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, String> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(r)) if r.denom().is_one() && r >= Rat::zero() => {
                    self.pos += 1;
                    let k: u32 = r
                        .numer()
                        .to_string()
                        .parse()
                        .map_err(|_| "exponent too large".to_string())?;
                    Ok(base.pow(k))
                }
                _ => Err("expected non-negative integer exponent after `^`".to_string()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly, String> {
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(MPoly::constant(self.nvars, r))
            }
            Some(Tok::Var(name)) => {
                self.pos += 1;
                let idx = self.style.index(&name, self.nvars)?;
                Ok(MPoly::var(self.nvars, idx))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err("missing `)`".to_string()),
                }
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// All exponent vectors of total degree `d` over `nvars` variables, in
/// descending lexicographic order (so `(d,0,..,0)` comes first).
pub fn exps_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = rem;
            out.push(cur.clone());
            return;
        }
        for k in (0..=rem).rev() {
            cur[i] = k;
            rec(i + 1, rem - k, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// All exponent vectors of total degree `<= d`, degree by degree.
pub fn exps_up_to_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    (0..=d).flat_map(|k| exps_of_degree(nvars, k)).collect()
}
