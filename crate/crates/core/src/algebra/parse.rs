//! Polynomial text input.
//!
//! Two forms are accepted: sums of terms such as `X^3+X+1`, `1 + 2*X - X^4`
//! or `2X^{16}`, and the compact coefficient list `[c0,c1,...] mod p`.

use super::poly::FpPoly;
use crate::error::{Error, Result};

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<Option<u64>> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Ok(None);
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).unwrap_or("");
        match txt.parse::<u64>() {
            Ok(v) => Ok(Some(v)),
            Err(_) => err(start, "integer too large"),
        }
    }
}

/// Parses either accepted form into signed coefficients (lowest degree first)
/// and the modulus given by a `mod p` suffix, if any.
pub fn parse_coeffs(text: &str) -> Result<(Vec<i64>, Option<u64>)> {
    // accept a unicode minus too
    let normalized = text.replace('\u{2212}', "-");
    let mut cur = Cursor {
        s: normalized.as_bytes(),
        i: 0,
    };
    let coeffs = if cur.peek() == Some(b'[') {
        list_form(&mut cur)?
    } else {
        sum_form(&mut cur)?
    };
    let mut modulus = None;
    if cur.peek().is_some() {
        let at = cur.i;
        if normalized[at..].trim_start().starts_with("mod") {
            cur.i = at + normalized[at..].find("mod").unwrap_or(0) + 3;
            match cur.number()? {
                Some(m) => modulus = Some(m),
                None => return err(cur.i, "expected a modulus after 'mod'"),
            }
        }
    }
    if let Some(c) = cur.peek() {
        return err(cur.i, format!("unexpected character '{}'", c as char));
    }
    Ok((coeffs, modulus))
}

fn list_form(cur: &mut Cursor<'_>) -> Result<Vec<i64>> {
    cur.eat(b'[');
    let mut out = Vec::new();
    if cur.eat(b']') {
        return Ok(out);
    }
    loop {
        let neg = cur.eat(b'-');
        let at = cur.i;
        let v = match cur.number()? {
            Some(v) => v as i64,
            None => return err(at, "expected an integer coefficient"),
        };
        out.push(if neg { -v } else { v });
        if cur.eat(b',') {
            continue;
        }
        if cur.eat(b']') {
            return Ok(out);
        }
        return err(cur.i, "expected ',' or ']'");
    }
}

fn sum_form(cur: &mut Cursor<'_>) -> Result<Vec<i64>> {
    let mut out: Vec<i64> = Vec::new();
    let mut first = true;
    loop {
        let sign = if cur.eat(b'+') {
            1
        } else if cur.eat(b'-') {
            -1
        } else if first {
            1
        } else {
            break;
        };
        first = false;
        let at = cur.i;
        let coef = cur.number()?;
        if coef.is_some() {
            cur.eat(b'*');
        }
        let deg = match cur.peek() {
            Some(b'X') | Some(b'x') => {
                cur.i += 1;
                if cur.eat(b'^') {
                    let braced = cur.eat(b'{');
                    let pos = cur.i;
                    let d = match cur.number()? {
                        Some(d) => d as usize,
                        None => return err(pos, "expected an exponent after '^'"),
                    };
                    if braced && !cur.eat(b'}') {
                        return err(cur.i, "expected '}'");
                    }
                    d
                } else {
                    1
                }
            }
            _ => {
                if coef.is_none() {
                    return err(at, "expected a term");
                }
                0
            }
        };
        if deg > 1 << 24 {
            return err(at, "exponent too large");
        }
        let c = sign * coef.unwrap_or(1) as i64;
        if out.len() <= deg {
            out.resize(deg + 1, 0);
        }
        out[deg] += c;
    }
    if first {
        return err(cur.i, "empty polynomial");
    }
    Ok(out)
}

/// Parses a polynomial over F_p. A `mod q` suffix, when present, must equal p.
pub fn parse_poly(text: &str, p: u64) -> Result<FpPoly> {
    let (coeffs, modulus) = parse_coeffs(text)?;
    if let Some(m) = modulus {
        if m != p {
            return Err(Error::Usage(format!(
                "polynomial is given mod {m} but p = {p}"
            )));
        }
    }
    FpPoly::from_i64(p, &coeffs)
}
