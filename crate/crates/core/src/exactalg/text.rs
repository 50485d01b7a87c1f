//! Text form `c*x1^e1*...*xn^en`, terms in descending grevlex order.
//!
//! Canonical output omits unit coefficients on non-constant terms, unit
//! exponents and absent variables; the zero polynomial is `0`. Parsing the
//! canonical text reproduces the polynomial, and printing it again yields the
//! same bytes.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational, SparsePoly};
use crate::{Error, Result};

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let constant = m.degree() == 0;
            if constant {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let mut first = true;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl SparsePoly {
    /// Parse the text form in a ring with `nvars` variables.
    pub fn parse(s: &str, nvars: usize) -> Result<SparsePoly> {
        Parser {
            src: s.as_bytes(),
            pos: 0,
            nvars,
        }
        .polynomial()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(alloc::format!("{what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn polynomial(&mut self) -> Result<SparsePoly> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            Some(_) => 1,
            None => return Err(self.err("empty polynomial")),
        };
        loop {
            let (m, mut c) = self.term()?;
            if sign < 0 {
                c = -c;
            }
            terms.push((m, c));
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            self.pos += 1;
        }
        Ok(SparsePoly::from_unsorted(self.nvars, terms))
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let mut coeff = Rational::one();
        let mut exps = vec![0u16; self.nvars];
        loop {
            match self.peek() {
                Some(b'0'..=b'9') => {
                    let mut text = self.digits().unwrap();
                    if self.src.get(self.pos) == Some(&b'/') {
                        self.pos += 1;
                        let den = self
                            .digits()
                            .ok_or_else(|| self.err("expected denominator"))?;
                        text.push('/');
                        text.push_str(&den);
                    }
                    let r = Rational::from_str(&text).map_err(|_| self.err("bad rational"))?;
                    if r.denom().is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    coeff *= r;
                }
                Some(b'x') => {
                    self.pos += 1;
                    let idx: usize = self
                        .digits()
                        .ok_or_else(|| self.err("expected variable index"))?
                        .parse()
                        .map_err(|_| self.err("bad variable index"))?;
                    if idx == 0 || idx > self.nvars {
                        return Err(self.err("variable index out of range"));
                    }
                    let mut e: u16 = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self
                            .digits()
                            .ok_or_else(|| self.err("expected exponent"))?
                            .parse()
                            .map_err(|_| self.err("exponent too large"))?;
                    }
                    exps[idx - 1] += e;
                }
                _ => return Err(self.err("expected coefficient or variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_exponents(exps), coeff))
    }
}

/// Parse a rational written as `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let ok = !t.is_empty()
        && t.trim_start_matches('-').split('/').count() <= 2
        && t.trim_start_matches('-')
            .split('/')
            .all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()));
    if !ok {
        return Err(Error::Parse(alloc::format!("bad rational {t:?}")));
    }
    if let Some((_, d)) = t.split_once('/') {
        if d.bytes().all(|b| b == b'0') {
            return Err(Error::Parse(alloc::format!("zero denominator in {t:?}")));
        }
    }
    Rational::from_str(t).map_err(|_| Error::Parse(alloc::format!("bad rational {t:?}")))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}
