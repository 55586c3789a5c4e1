//! Text syntax for superalgebra elements.
//!
//! ```text
//! element := ["-"] term (("+" | "-") term)*
//! term    := rational ["*"] factor* | factor+     (factors may be separated by "*")
//! factor  := "x[" rational ("," rational)* "]" | "t" index ["^" int]
//!          | "s" index | "d" index ["^" nat] | "q" index
//! ```
//!
//! `d` indexes the even coordinates, `s`/`q` the Grassmann variables and their
//! derivations. A term is the left-to-right product of its factors, so
//! non-canonical orderings such as `q1 s1` pick up their signs from the product.

use num_traits::{One, Signed, Zero};
use weyl_core::algebra::{mul, Element, Monomial};
use weyl_core::scalar::{self, Scalar};
use weyl_core::{gamma_membership, Result, Signature, WeylError};

struct Parser<'a> {
    sig: &'a Signature,
    text: &'a str,
    pos: usize,
}

fn parse_err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(WeylError::Parse {
        pos,
        msg: msg.into(),
    })
}

fn index_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(WeylError::Index(msg.into()))
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            parse_err(self.pos, format!("expected '{c}'"))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn nat(&mut self) -> Result<i64> {
        let start = self.pos;
        match self.digits() {
            Some(d) => d
                .parse()
                .or_else(|_| parse_err(start, "integer out of range")),
            None => parse_err(start, "expected digits"),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat('-');
        self.skip_ws();
        let n = self.nat()?;
        Ok(if neg { -n } else { n })
    }

    /// Unsigned `p` or `p/q`.
    fn unsigned_rational(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let num = self.nat()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let den_pos = self.pos;
            let den = self.nat()?;
            if den == 0 {
                return parse_err(den_pos, "zero denominator");
            }
            return Ok(scalar::ratio(num, den));
        }
        Ok(scalar::int(num))
    }

    fn signed_rational(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let neg = self.eat('-');
        let r = self.unsigned_rational()?;
        Ok(if neg { -r } else { r })
    }

    fn index(&mut self, what: char, max: usize) -> Result<usize> {
        let i = self.nat()?;
        if i < 1 || i as usize > max {
            return index_err(format!("{what}{i}: index must be in 1..={max}"));
        }
        Ok(i as usize - 1)
    }

    fn at_factor(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some('x' | 't' | 's' | 'd' | 'q'))
    }

    fn factor(&mut self) -> Result<Monomial> {
        self.skip_ws();
        let sig = self.sig;
        let len = sig.len();
        let start = sig.odd_start();
        let pos = self.pos;
        let c = self.peek().expect("checked by at_factor");
        self.pos += 1;
        let mut m = Monomial::one(len);
        match c {
            'x' => {
                self.expect('[')?;
                let mut entries = vec![self.signed_rational()?];
                while self.eat(',') {
                    entries.push(self.signed_rational()?);
                }
                self.expect(']')?;
                let alpha = if entries.len() == len {
                    entries
                } else if entries.len() == 1 && start == 1 {
                    let mut a = vec![Scalar::zero(); len];
                    a[0] = entries.pop().expect("one entry");
                    a
                } else {
                    return index_err(format!(
                        "x[...] needs {len} entries{}, got {}",
                        if start == 1 { " or 1" } else { "" },
                        entries.len()
                    ));
                };
                sig.check_group_vector(&alpha)?;
                if !gamma_membership(sig, &alpha)? {
                    return index_err("group element is not in Gamma");
                }
                m.alpha = alpha;
            }
            't' => {
                let p = self.index('t', sig.partial(3))?;
                let k = if self.eat('^') { self.int()? } else { 1 };
                if !sig.zone(p).exponent_ok(k) {
                    return index_err(format!("t{}^{k}: negative power at a polynomial coordinate", p + 1));
                }
                m.k[p] = k;
            }
            's' => {
                let r = self.index('s', sig.num_odd())?;
                m.k[start + r] = 1;
            }
            'd' => {
                let p = self.index('d', start)?;
                let n = if self.eat('^') { self.nat()? } else { 1 };
                m.mu[p] = n;
            }
            'q' => {
                let r = self.index('q', sig.num_odd())?;
                m.mu[start + r] = 1;
            }
            _ => return parse_err(pos, format!("unexpected '{c}'")),
        }
        Ok(m)
    }

    fn term(&mut self) -> Result<Element> {
        self.skip_ws();
        let len = self.sig.len();
        let mut coeff = Scalar::one();
        let mut has_coeff = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.unsigned_rational()?;
            has_coeff = true;
            let save = self.pos;
            if self.eat('*') && !self.at_factor() {
                return parse_err(save, "'*' must be followed by a factor");
            }
        }
        let mut acc = Element::one(len);
        let mut factors = 0;
        loop {
            if !self.at_factor() {
                if factors > 0 || has_coeff {
                    break;
                }
                return parse_err(self.pos, "expected a coefficient or factor");
            }
            let f = self.factor()?;
            acc = mul(self.sig, &acc, &Element::from(f))?;
            factors += 1;
            let save = self.pos;
            if self.eat('*') && !self.at_factor() {
                return parse_err(save, "'*' must be followed by a factor");
            }
        }
        Ok(acc.scale(&coeff))
    }

    fn element(&mut self) -> Result<Element> {
        let mut total = Element::zero();
        let mut negate = self.eat('-');
        loop {
            let t = self.term()?;
            if negate {
                total -= &t;
            } else {
                total += &t;
            }
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.text.len() {
            return parse_err(self.pos, "unexpected trailing input");
        }
        Ok(total)
    }
}

/// Parses an element of the superalgebra of `sig`.
pub fn parse_expression(sig: &Signature, text: &str) -> Result<Element> {
    let mut p = Parser { sig, text, pos: 0 };
    p.skip_ws();
    if p.pos == text.len() {
        return parse_err(p.pos, "empty expression");
    }
    p.element()
}

/// Parses a single monomial (coefficient must be 1).
pub fn parse_monomial(sig: &Signature, text: &str) -> Result<Monomial> {
    let e = parse_expression(sig, text)?;
    let single = match e.iter().next() {
        Some((m, c)) if e.len() == 1 && c.is_one() => Some(m.clone()),
        _ => None,
    };
    single.ok_or_else(|| WeylError::Parse {
        pos: 0,
        msg: format!("{text:?} is not a single monomial"),
    })
}

/// Text for a monomial, empty for the unit.
pub fn format_monomial(sig: &Signature, m: &Monomial) -> String {
    let start = sig.odd_start();
    let mut parts = Vec::new();
    if !m.alpha_is_zero() {
        let entries: Vec<String> = if start == 1 && m.alpha[1..].iter().all(Zero::is_zero) {
            vec![scalar::format_scalar(&m.alpha[0])]
        } else {
            m.alpha.iter().map(scalar::format_scalar).collect()
        };
        parts.push(format!("x[{}]", entries.join(",")));
    }
    for p in 0..start {
        match m.k[p] {
            0 => {}
            1 => parts.push(format!("t{}", p + 1)),
            k => parts.push(format!("t{}^{k}", p + 1)),
        }
    }
    for p in start..m.len() {
        if m.k[p] == 1 {
            parts.push(format!("s{}", p - start + 1));
        }
    }
    for p in 0..start {
        match m.mu[p] {
            0 => {}
            1 => parts.push(format!("d{}", p + 1)),
            n => parts.push(format!("d{}^{n}", p + 1)),
        }
    }
    for p in start..m.len() {
        if m.mu[p] == 1 {
            parts.push(format!("q{}", p - start + 1));
        }
    }
    parts.join(" ")
}

/// Canonical text: terms in monomial order, exact rational coefficients.
pub fn format_element(sig: &Signature, e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in e.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = format_monomial(sig, m);
        if body.is_empty() {
            out.push_str(&scalar::format_scalar(&abs));
        } else if abs.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&scalar::format_scalar(&abs));
            out.push('*');
            out.push_str(&body);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use weyl_core::scalar::int;

    fn sig(ell: [i64; 5]) -> Signature {
        Signature::standard(ell).unwrap()
    }

    #[test]
    fn single_monomial() {
        let s = sig([0, 0, 0, 1, 1]);
        let e = parse_expression(&s, "x[2] d1").unwrap();
        let m = Monomial::new(vec![int(2), int(0)], vec![0, 0], vec![1, 0]);
        assert_eq!(e, Element::from(m));
        assert_eq!(format_element(&s, &e), "x[2] d1");
    }

    #[test]
    fn reordered_odd_factors_pick_up_signs() {
        let s = sig([0, 0, 0, 1, 1]);
        let e = parse_expression(&s, "q1 * s1").unwrap();
        assert_eq!(e, parse_expression(&s, "1 - s1 q1").unwrap());
        assert_eq!(format_element(&s, &e), "1 - s1 q1");
    }

    #[test]
    fn sums_and_coefficients() {
        let s = sig([0, 0, 0, 1, 0]);
        let e = parse_expression(&s, "x[1] d1 + x[-1] d1").unwrap();
        assert_eq!(e.len(), 2);
        let e = parse_expression(&s, "-2*d1 + 1/2 x[3] d1^2 - 3").unwrap();
        assert_eq!(format_element(&s, &e), "-3 - 2*d1 + 1/2*x[3] d1^2");
        assert_eq!(parse_expression(&s, "0").unwrap(), Element::zero());
        assert_eq!(format_element(&s, &Element::zero()), "0");
    }

    #[test]
    fn laurent_and_polynomial_zones() {
        let s = sig([1, 0, 1, 0, 0]);
        assert!(parse_expression(&s, "t2^-3 d2").is_ok());
        assert!(matches!(parse_expression(&s, "t1^-1"), Err(WeylError::Index(_))));
        assert!(matches!(parse_expression(&s, "x[1,0]"), Err(WeylError::Index(_))));
        assert!(parse_expression(&s, "x[0,1] t1^2 d1").is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        let s = sig([0, 0, 0, 1, 1]);
        match parse_expression(&s, "x[2] + ?") {
            Err(WeylError::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expression(&s, "x[2"), Err(WeylError::Parse { .. })));
        assert!(matches!(parse_expression(&s, "d1 *"), Err(WeylError::Parse { .. })));
        assert!(matches!(parse_expression(&s, ""), Err(WeylError::Parse { .. })));
        assert!(matches!(parse_expression(&s, "q2"), Err(WeylError::Index(_))));
        assert!(matches!(parse_expression(&s, "d2"), Err(WeylError::Index(_))));
        assert!(matches!(parse_expression(&s, "x[1/2]"), Err(WeylError::Index(_))));
    }

    #[test]
    fn full_length_group_vectors() {
        let s = sig([0, 0, 0, 2, 0]);
        let e = parse_expression(&s, "x[1,-2] d1 d2^2").unwrap();
        assert_eq!(format_element(&s, &e), "x[1,-2] d1 d2^2");
        assert!(parse_expression(&s, "x[1]").is_err());
    }
}
