//! Exact multivariate polynomial arithmetic over prime fields, monomials,
//! monomial ideals and Frobenius powers.
//!
//! Coefficients live in the prime subfield F_p; exponent vectors are dense
//! (the ambient arity is small). Canonical printing uses graded
//! lexicographic order so output is deterministic.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Checks primality by trial division; moduli here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// True iff `q` is a (possibly zeroth) power of the prime `p`.
pub fn is_power_of(q: u64, p: u64) -> bool {
    if q == 0 {
        return false;
    }
    let mut q = q;
    while q.is_multiple_of(p) {
        q /= p;
    }
    q == 1
}

/// A monomial: a dense exponent vector, one entry per ambient variable.
///
/// The `Ord` instance is graded lexicographic, which is the canonical order
/// used everywhere for printing and witness selection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    /// The monomial `x_i` in the given arity.
    pub fn variable(i: usize, arity: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial(self.0.iter().map(|&e| e * n).collect())
    }

    /// Componentwise divisibility.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Pads with zero exponents up to `arity`.
    pub fn pad(&self, arity: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(arity.max(e.len()), 0);
        Monomial(e)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Graded order; ties favor exponents concentrated on the earliest
        // variables, so x0^a*x1^b precedes x1^a*x2^b.
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.total_degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial with coefficients in F_p. No zero coefficients are stored;
/// all monomials share the polynomial's arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialFp {
    p: u64,
    arity: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl PolynomialFp {
    pub fn zero(p: u64, arity: usize) -> Self {
        PolynomialFp {
            p,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: u64, arity: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::one(arity), 1 % p);
        PolynomialFp { p, arity, terms }.normalized()
    }

    pub fn from_terms(p: u64, arity: usize, terms: Vec<(Monomial, i64)>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut map: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m, c) in terms {
            if m.arity() != arity {
                return Err(Error::ArityMismatch(m.arity(), arity));
            }
            let c = c.rem_euclid(p as i64) as u64;
            let entry = map.entry(m).or_insert(0);
            *entry = (*entry + c) % p;
        }
        Ok(PolynomialFp { p, arity, terms: map }.normalized())
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, &mut c| c != 0);
        self
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Terms in graded-lex order (ascending).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn add(&self, other: &PolynomialFp) -> PolynomialFp {
        debug_assert_eq!(self.p, other.p);
        debug_assert_eq!(self.arity, other.arity);
        let mut terms = self.terms.clone();
        for (m, &c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert(0);
            *entry = (*entry + c) % self.p;
        }
        PolynomialFp {
            p: self.p,
            arity: self.arity,
            terms,
        }
        .normalized()
    }

    pub fn neg(&self) -> PolynomialFp {
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| (m.clone(), (self.p - c) % self.p))
            .collect();
        PolynomialFp {
            p: self.p,
            arity: self.arity,
            terms,
        }
        .normalized()
    }

    pub fn sub(&self, other: &PolynomialFp) -> PolynomialFp {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> PolynomialFp {
        let c = c.rem_euclid(self.p as i64) as u64;
        let terms = self
            .terms
            .iter()
            .map(|(m, &a)| (m.clone(), a * c % self.p))
            .collect();
        PolynomialFp {
            p: self.p,
            arity: self.arity,
            terms,
        }
        .normalized()
    }

    pub fn mul(&self, other: &PolynomialFp) -> PolynomialFp {
        debug_assert_eq!(self.p, other.p);
        debug_assert_eq!(self.arity, other.arity);
        let mut terms: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let m = m1.mul(m2);
                let entry = terms.entry(m).or_insert(0);
                *entry = (*entry + c1 * c2) % self.p;
            }
        }
        PolynomialFp {
            p: self.p,
            arity: self.arity,
            terms,
        }
        .normalized()
    }

    /// Exact power by repeated squaring; `f^0 = 1`.
    pub fn pow(&self, n: u64) -> PolynomialFp {
        let mut result = PolynomialFp::one(self.p, self.arity);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

impl fmt::Display for PolynomialFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Descending graded-lex, leading term first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if *c != 1 || m.total_degree() == 0 {
                write!(f, "{c}")?;
                if m.total_degree() > 0 {
                    write!(f, "*")?;
                }
            }
            if m.total_degree() > 0 {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// Parses the ASCII polynomial grammar: variables `x0..x9` (aliases `x`,
/// `y`, `z` for `x0`, `x1`, `x2`), integer coefficients, `+`, `-`, `*`, `^`.
///
/// The arity is the smallest covering all variables that occur (at least 1).
pub fn poly_parse(text: &str, p: u64) -> Result<PolynomialFp> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut parser = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
    };
    let raw = parser.parse_expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(Error::Syntax {
            pos: parser.chars[parser.pos].0,
            msg: "unexpected trailing input".into(),
        });
    }
    let arity = raw
        .iter()
        .flat_map(|(vars, _)| vars.iter().map(|&(v, _)| v + 1))
        .max()
        .unwrap_or(0)
        .max(1);
    let terms = raw
        .into_iter()
        .map(|(vars, coeff)| {
            let mut e = vec![0u32; arity];
            for (v, exp) in vars {
                e[v] += exp;
            }
            (Monomial::new(e), coeff)
        })
        .collect();
    PolynomialFp::from_terms(p, arity, terms)
}

/// A term in raw form: variable powers plus a signed integer coefficient.
type RawTerm = (Vec<(usize, u32)>, i64);

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self
            .pos
            .checked_sub(0)
            .and_then(|i| self.chars.get(i))
            .is_some_and(|&(_, c)| c.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn byte_pos(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| self.chars.last().map(|&(i, c)| i + c.len_utf8()).unwrap_or(0))
    }

    fn parse_expr(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut sign: i64 = 1;
        if self.peek() == Some('-') {
            self.pos += 1;
            sign = -1;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        loop {
            let (vars, coeff) = self.parse_term()?;
            terms.push((vars, sign * coeff));
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => break,
            }
        }
        Ok(terms)
    }

    fn parse_term(&mut self) -> Result<RawTerm> {
        let mut vars = Vec::new();
        let mut coeff: i64 = 1;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.parse_uint()?;
                    coeff *= n as i64;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let var = self.parse_var()?;
                    let exp = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.parse_uint()? as u32
                    } else {
                        1
                    };
                    vars.push((var, exp));
                }
                _ => {
                    return Err(Error::Syntax {
                        pos: self.byte_pos(),
                        msg: "expected a coefficient or variable".into(),
                    })
                }
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((vars, coeff))
    }

    fn parse_uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|&(_, c)| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Syntax {
                pos: self.byte_pos(),
                msg: "expected an integer".into(),
            });
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().map_err(|_| Error::Syntax {
            pos: self.byte_pos(),
            msg: "integer too large".into(),
        })
    }

    fn parse_var(&mut self) -> Result<usize> {
        self.skip_ws();
        let (_, c) = self.chars[self.pos];
        self.pos += 1;
        match c {
            'x' => {
                if self
                    .chars
                    .get(self.pos)
                    .is_some_and(|&(_, d)| d.is_ascii_digit())
                {
                    let (_, d) = self.chars[self.pos];
                    self.pos += 1;
                    Ok(d.to_digit(10).unwrap() as usize)
                } else {
                    Ok(0)
                }
            }
            'y' => Ok(1),
            'z' => Ok(2),
            other => Err(Error::UnknownVariable(other.to_string())),
        }
    }
}

/// A monomial ideal given by its minimal generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    arity: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal, minimizing the generators under divisibility.
    pub fn new(arity: usize, generators: Vec<Monomial>) -> Result<Self> {
        for g in &generators {
            if g.arity() != arity {
                return Err(Error::ArityMismatch(g.arity(), arity));
            }
        }
        let mut gens: Vec<Monomial> = Vec::new();
        let mut sorted = generators;
        sorted.sort();
        sorted.dedup();
        for g in sorted {
            if !gens.iter().any(|h| h.divides(&g)) {
                gens.push(g);
            }
        }
        Ok(MonomialIdeal {
            arity,
            generators: gens,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Membership: some generator divides `m` componentwise.
    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        if m.arity() != self.arity {
            return Err(Error::ArityMismatch(m.arity(), self.arity));
        }
        Ok(self.generators.iter().any(|g| g.divides(m)))
    }

    /// The `q`-th Frobenius power: generators raised to the `q`-th power.
    pub fn frobenius_power(&self, q: u64, p: u64) -> Result<MonomialIdeal> {
        if !is_power_of(q, p) {
            return Err(Error::NotPowerOfPrime { q, p });
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g.pow(q as u32))
            .collect();
        // Powers of a minimal set are already minimal.
        Ok(MonomialIdeal {
            arity: self.arity,
            generators: gens,
        })
    }
}
