//! Text grammar for scalars and elements, with canonical printing.
//!
//! ```text
//! element  := ['-'] term (('+'|'-') term)*
//! term     := [scalar '*'] gen | scalar
//! gen      := ('L'|'H'|'I'|'J') ['b'] '[' integer ']'
//! scalar   := rational | '(' rational [('+'|'-') rational] 'i' ')' | 'i'
//! rational := ['-'] digits ['/' digits]
//! integer  := ['-'] digits
//! ```
//!
//! Parsing is whitespace-insensitive and combines like terms; printing emits
//! the canonical order (family L < H < I < J, degree ascending) and
//! `parse . print` is the identity on canonical elements. A leading minus
//! negates the first term, so `-J[3]` prints and parses the way brackets
//! report it. Complex scalars other than the bare `i` must be parenthesized,
//! which keeps the grammar unambiguous against the generator family `I`. The
//! `b` suffix selects the bold basis; one element may not mix suffixes. A
//! bare scalar term is only legal when it is zero, since elements have no
//! constant slot.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{Basis, Element, Family, Generator};
use crate::error::Error;
use crate::scalar::GaussianRational;

/// Degrees beyond this bound are rejected at parse time, which keeps all
/// later degree arithmetic far from i64 overflow.
const MAX_DEGREE: i64 = 1 << 40;

/// Parses the element grammar; errors carry a byte offset and the expected
/// token set.
pub fn parse_element(input: &str) -> Result<Element, Error> {
    let mut p = Parser { src: input.as_bytes(), pos: 0, basis: None };
    let e = p.element()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err(&["'+'", "'-'", "end of input"]));
    }
    Ok(e)
}

/// Canonical text form of an element; `parse_element` inverts it.
pub fn print_element(x: &Element) -> String {
    x.to_string()
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (g, c)) in self.iter().enumerate() {
            if c.is_real() {
                let neg = c.re() < &BigRational::zero();
                let mag = if neg { -c } else { c.clone() };
                if idx == 0 {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {} ", if neg { '-' } else { '+' })?;
                }
                if mag.is_one() {
                    write!(f, "{}", g)?;
                } else {
                    write!(f, "{}*{}", mag, g)?;
                }
            } else {
                if idx > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "{}*{}", c, g)?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    basis: Option<Basis>,
}

impl<'a> Parser<'a> {
    fn err(&self, expected: &[&'static str]) -> Error {
        let found = match self.src.get(self.pos) {
            Some(b) => format!("{:?}", *b as char),
            None => "end of input".to_string(),
        };
        Error::Parse { offset: self.pos, expected: expected.to_vec(), found }
    }

    fn skip_ws(&mut self) {
        while matches!(self.src.get(self.pos), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn element(&mut self) -> Result<Element, Error> {
        let mut acc = Element::zero();
        self.skip_ws();
        // An optional leading minus negating the first term; a '-' that
        // starts a negative rational is handled inside the term itself.
        let negate_first = match (self.peek(), self.src.get(self.pos + 1)) {
            (Some(b'-'), Some(c)) if !c.is_ascii_digit() => {
                self.pos += 1;
                self.skip_ws();
                true
            }
            _ => false,
        };
        self.term(negate_first, &mut acc)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                    self.term(false, &mut acc)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    self.skip_ws();
                    self.term(true, &mut acc)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self, negate: bool, acc: &mut Element) -> Result<(), Error> {
        let start = self.pos;
        let scalar = match self.peek() {
            Some(b'L' | b'H' | b'I' | b'J') => None,
            Some(b'i') => {
                self.pos += 1;
                Some(GaussianRational::i())
            }
            Some(b'(') => Some(self.complex_scalar()?),
            Some(b'0'..=b'9' | b'-') => Some(self.rational().map(real)?),
            _ => return Err(self.err(&["generator L/H/I/J", "rational", "'('", "'i'"])),
        };
        let scalar = match scalar {
            None => GaussianRational::one(),
            Some(s) => {
                self.skip_ws();
                if self.eat(b'*') {
                    self.skip_ws();
                    s
                } else {
                    // A bare scalar term: elements have no constant slot, so
                    // only zero is representable.
                    if s.is_zero() {
                        return Ok(());
                    }
                    return Err(Error::Parse {
                        offset: start,
                        expected: vec!["'*' followed by a generator", "zero constant"],
                        found: "nonzero constant term".to_string(),
                    });
                }
            }
        };
        let g = self.generator()?;
        let coeff = if negate { -&scalar } else { scalar };
        acc.add_term(g, coeff).map_err(|_| Error::BasisMix { offset: start })
    }

    fn generator(&mut self) -> Result<Generator, Error> {
        let gen_start = self.pos;
        let family = match self.peek() {
            Some(b'L') => Family::L,
            Some(b'H') => Family::H,
            Some(b'I') => Family::I,
            Some(b'J') => Family::J,
            _ => return Err(self.err(&["generator L/H/I/J"])),
        };
        self.pos += 1;
        let basis = if self.eat(b'b') { Basis::Bold } else { Basis::Plain };
        match self.basis {
            None => self.basis = Some(basis),
            Some(b) if b != basis => return Err(Error::BasisMix { offset: gen_start }),
            Some(_) => {}
        }
        self.skip_ws();
        if !self.eat(b'[') {
            return Err(self.err(&["'['"]));
        }
        self.skip_ws();
        let degree = self.integer()?;
        self.skip_ws();
        if !self.eat(b']') {
            return Err(self.err(&["']'"]));
        }
        Ok(Generator::new(basis, family, degree))
    }

    fn integer(&mut self) -> Result<i64, Error> {
        let start = self.pos;
        let neg = self.eat(b'-');
        let digits = self.digits()?;
        let value: i64 = digits.parse().unwrap_or(MAX_DEGREE + 1);
        if value > MAX_DEGREE {
            return Err(Error::Parse {
                offset: start,
                expected: vec!["degree with |d| <= 2^40"],
                found: format!("{}{}", if neg { "-" } else { "" }, digits),
            });
        }
        Ok(if neg { -value } else { value })
    }

    fn digits(&mut self) -> Result<String, Error> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(&["digit"]));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("digits are ascii").to_string())
    }

    fn rational(&mut self) -> Result<BigRational, Error> {
        let neg = self.eat(b'-');
        let numer: BigInt = self.digits()?.parse().expect("digit string");
        let numer = if neg { -numer } else { numer };
        if self.eat(b'/') {
            let den_start = self.pos;
            let denom: BigInt = self.digits()?.parse().expect("digit string");
            if denom.is_zero() {
                return Err(Error::Parse {
                    offset: den_start,
                    expected: vec!["nonzero denominator"],
                    found: "0".to_string(),
                });
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    /// `'(' rational [('+'|'-') rational] 'i' ')'`
    fn complex_scalar(&mut self) -> Result<GaussianRational, Error> {
        if !self.eat(b'(') {
            return Err(self.err(&["'('"]));
        }
        self.skip_ws();
        let first = self.rational()?;
        self.skip_ws();
        let value = match self.peek() {
            Some(b'i') => {
                self.pos += 1;
                GaussianRational::new(BigRational::zero(), first)
            }
            Some(sign @ (b'+' | b'-')) => {
                self.pos += 1;
                self.skip_ws();
                let second = self.rational()?;
                let im = if sign == b'-' { -second } else { second };
                self.skip_ws();
                if !self.eat(b'i') {
                    return Err(self.err(&["'i'"]));
                }
                GaussianRational::new(first, im)
            }
            _ => return Err(self.err(&["'i'", "'+'", "'-'"])),
        };
        self.skip_ws();
        if !self.eat(b')') {
            return Err(self.err(&["')'"]));
        }
        Ok(value)
    }
}

fn real(r: BigRational) -> GaussianRational {
    GaussianRational::new(r, BigRational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gen(f: Family, m: i64) -> Element {
        Element::generator(Generator::plain(f, m))
    }

    #[test]
    fn parses_the_reference_example() {
        let e = parse_element("2*L[3] + (1+1i)*I[-2] - J[0]").unwrap();
        assert_eq!(e.coeff(&Generator::plain(Family::L, 3)), GaussianRational::from_integer(2));
        assert_eq!(e.coeff(&Generator::plain(Family::I, -2)), GaussianRational::from_parts(1, 1));
        assert_eq!(e.coeff(&Generator::plain(Family::J, 0)), GaussianRational::from_integer(-1));
        assert_eq!(e.support_size(), 3);
    }

    #[test]
    fn cancellation_yields_zero() {
        assert!(parse_element("L[1] - L[1]").unwrap().is_zero());
        assert!(parse_element("0").unwrap().is_zero());
    }

    #[test]
    fn mixed_suffixes_are_rejected() {
        assert!(matches!(parse_element("Ib[2] + L[0]"), Err(Error::BasisMix { offset: 8 })));
    }

    #[test]
    fn print_examples() {
        assert_eq!(Element::zero().to_string(), "0");
        let x = &gen(Family::L, 3).scale(&GaussianRational::from_integer(2)) - &gen(Family::J, 0);
        assert_eq!(x.to_string(), "2*L[3] - J[0]");
        let h = gen(Family::H, 0).scale(&GaussianRational::i());
        assert_eq!(h.to_string(), "(0+1i)*H[0]");
    }

    #[test]
    fn leading_negative_round_trips() {
        let x = -&gen(Family::J, 3);
        assert_eq!(x.to_string(), "-J[3]");
        assert_eq!(parse_element("-J[3]").unwrap(), x);
        let y = x.scale(&GaussianRational::from_ratio(3, 2).unwrap());
        assert_eq!(y.to_string(), "-3/2*J[3]");
        assert_eq!(parse_element(&y.to_string()).unwrap(), y);
        // A leading minus on a rational still parses as a negative scalar.
        assert_eq!(parse_element("-2*J[3]"), parse_element("0 - 2*J[3]"));
    }

    #[test]
    fn nonzero_constant_terms_are_rejected() {
        assert!(matches!(parse_element("3"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_element("L[1] + 2"), Err(Error::Parse { offset: 7, .. })));
        // A zero constant is harmless.
        assert_eq!(parse_element("0 + L[1]").unwrap(), gen(Family::L, 1));
    }

    #[test]
    fn positioned_errors() {
        // Unclosed bracket.
        let e = parse_element("L[2");
        assert!(matches!(e, Err(Error::Parse { offset: 3, .. })));
        // A parenthesized scalar must contain i.
        let e = parse_element("(1+2)*L[0]");
        assert!(matches!(e, Err(Error::Parse { offset: 4, .. })));
        // Zero denominator is positioned at the denominator.
        let e = parse_element("1/0*L[0]");
        assert!(matches!(e, Err(Error::Parse { offset: 2, .. })));
        // Dangling star.
        let e = parse_element("2*");
        assert!(matches!(e, Err(Error::Parse { offset: 2, .. })));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_element("2*L[3]+(1+1i)*I[-2]-J[0]").unwrap();
        let b = parse_element("  2 * L[ 3 ] + ( 1 + 1 i ) * I[ -2 ] - J[ 0 ] ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bold_elements_round_trip() {
        let s = "Ib[3] + (0+1i)*Jb[3]";
        let e = parse_element(s).unwrap();
        assert_eq!(e.to_string(), s);
    }

    fn arb_element() -> impl Strategy<Value = Element> {
        let term = (
            prop::sample::select(Family::ALL.to_vec()),
            -30i64..=30,
            -9i64..=9,
            1i64..=5,
            -4i64..=4,
        );
        (any::<bool>(), prop::collection::vec(term, 0..6)).prop_map(|(bold, ts)| {
            let basis = if bold { Basis::Bold } else { Basis::Plain };
            let mut e = Element::zero();
            for (f, d, num, den, im) in ts {
                let c = &GaussianRational::from_ratio(num, den).unwrap()
                    + &(&GaussianRational::i() * &GaussianRational::from_integer(im));
                e.add_term(Generator::new(basis, f, d), c).unwrap();
            }
            e
        })
    }

    proptest! {
        #[test]
        fn parse_print_round_trip(x in arb_element()) {
            let printed = x.to_string();
            prop_assert_eq!(parse_element(&printed).unwrap(), x);
        }

        #[test]
        fn equal_elements_print_identically(x in arb_element()) {
            let y = x.clone();
            prop_assert_eq!(x.to_string(), y.to_string());
        }
    }
}
