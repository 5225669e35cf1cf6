//! Salamon notation: an algebra is written as the list of `de^k`, with
//! `(dα)(X,Y) = −α([X,Y])`. A term `+ij` in slot `k` therefore means
//! `c^k_{ij} = −1`.
//!
//! ```text
//! algebra := "(" slot ("," slot)* ")"
//! slot    := "0" | "0^" nat | sum
//! sum     := term (("+"|"-") term)*        (a leading sign is allowed)
//! term    := [coeff "*"] pair
//! coeff   := integer | integer "/" nat
//! pair    := digit digit | nat "." nat
//! ```

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BracketEntry, LieAlgebra, LieError};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SalamonError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: &'static str },
    #[error("term at byte {pos} repeats an index")]
    RepeatedIndex { pos: usize },
    #[error("index {index} at byte {pos} is out of range")]
    IndexOutOfRange { pos: usize, index: usize },
    #[error("term at byte {pos} appears twice in its slot")]
    DuplicateTerm { pos: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

type Slot = BTreeMap<(usize, usize), Rat>;

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8, msg: &'static str) -> Result<(), SalamonError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(SalamonError::Syntax { pos: self.pos, msg })
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        core::str::from_utf8(&self.s[start..self.pos]).unwrap()
    }

    fn nat(&mut self) -> Result<usize, SalamonError> {
        let pos = self.pos;
        let d = self.digits();
        d.parse().map_err(|_| SalamonError::Syntax { pos, msg: "expected a natural number" })
    }

    /// Parses one slot, returning the zero-run length (for `0^n`) or a sum.
    fn slot(&mut self) -> Result<Result<usize, Slot>, SalamonError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'0') {
            let save = self.pos;
            self.pos += 1;
            self.skip_ws();
            match self.peek() {
                Some(b'^') => {
                    self.pos += 1;
                    self.skip_ws();
                    let n = self.nat()?;
                    if n == 0 {
                        return Err(SalamonError::Syntax { pos: start, msg: "empty zero run" });
                    }
                    return Ok(Ok(n));
                }
                Some(b',') | Some(b')') => return Ok(Ok(1)),
                _ => self.pos = save,
            }
        }
        let mut terms = Slot::new();
        let mut first = true;
        loop {
            self.skip_ws();
            let mut sign = Rat::one();
            match self.peek() {
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    sign = -sign;
                    self.pos += 1;
                }
                _ if first => {}
                _ => break,
            }
            first = false;
            self.skip_ws();
            let term_pos = self.pos;
            let (coeff, i, j) = self.term()?;
            let (a, b, c) = if i < j { (i, j, sign * coeff) } else { (j, i, -(sign * coeff)) };
            if terms.insert((a, b), c).is_some() {
                return Err(SalamonError::DuplicateTerm { pos: term_pos });
            }
        }
        Ok(Err(terms))
    }

    fn term(&mut self) -> Result<(Rat, usize, usize), SalamonError> {
        let pos = self.pos;
        let first = String::from(self.digits());
        if first.is_empty() {
            return Err(SalamonError::Syntax { pos, msg: "expected a term" });
        }
        self.skip_ws();
        match self.peek() {
            Some(b'*') | Some(b'/') => {
                let mut coeff = Rat::from_integer(BigInt::from_str(&first).unwrap());
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den_pos = self.pos;
                    let den = self.nat()?;
                    if den == 0 {
                        return Err(SalamonError::Syntax { pos: den_pos, msg: "zero denominator" });
                    }
                    coeff /= Rat::from_integer(BigInt::from(den));
                    self.skip_ws();
                }
                self.expect(b'*', "expected `*` after coefficient")?;
                self.skip_ws();
                let pair_pos = self.pos;
                let pair = String::from(self.digits());
                let (i, j) = self.pair(&pair, pair_pos)?;
                Ok((coeff, i, j))
            }
            _ => {
                let (i, j) = self.pair(&first, pos)?;
                Ok((Rat::one(), i, j))
            }
        }
    }

    /// Completes a pair whose first digit run is `first`.
    fn pair(&mut self, first: &str, pos: usize) -> Result<(usize, usize), SalamonError> {
        let (i, j) = if self.peek() == Some(b'.') {
            self.pos += 1;
            let second = self.nat()?;
            let i = first
                .parse()
                .map_err(|_| SalamonError::Syntax { pos, msg: "expected an index" })?;
            (i, second)
        } else if first.len() == 2 {
            let b = first.as_bytes();
            ((b[0] - b'0') as usize, (b[1] - b'0') as usize)
        } else {
            return Err(SalamonError::Syntax { pos, msg: "a pair is two digits or `i.j`" });
        };
        if i == j {
            return Err(SalamonError::RepeatedIndex { pos });
        }
        Ok((i, j))
    }
}

/// Parses Salamon notation into a Lie algebra (Jacobi checked).
pub fn parse_salamon(text: &str) -> Result<LieAlgebra, SalamonError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    p.expect(b'(', "expected `(`")?;
    let mut slots: Vec<(Slot, usize)> = Vec::new();
    loop {
        let slot_pos = p.pos;
        match p.slot()? {
            Ok(zeros) => slots.extend((0..zeros).map(|_| (Slot::new(), slot_pos))),
            Err(sum) => slots.push((sum, slot_pos)),
        }
        p.skip_ws();
        match p.peek() {
            Some(b',') => p.pos += 1,
            Some(b')') => {
                p.pos += 1;
                break;
            }
            _ => return Err(SalamonError::Syntax { pos: p.pos, msg: "expected `,` or `)`" }),
        }
    }
    p.skip_ws();
    if p.pos != text.len() {
        return Err(SalamonError::Syntax { pos: p.pos, msg: "trailing input" });
    }
    let dim = slots.len();
    let mut entries = Vec::new();
    for (k, (slot, pos)) in slots.iter().enumerate() {
        for (&(i, j), c) in slot {
            for idx in [i, j] {
                if idx == 0 || idx > dim {
                    return Err(SalamonError::IndexOutOfRange { pos: *pos, index: idx });
                }
            }
            entries.push(BracketEntry::new(i - 1, j - 1, k, -c));
        }
    }
    Ok(LieAlgebra::new(dim, &entries)?)
}

/// Canonical Salamon string: zero runs of length ≥ 2 as `0^n`, terms ordered
/// by index pair, dotted pairs when the dimension exceeds 9.
pub fn print_salamon(alg: &LieAlgebra) -> String {
    let n = alg.dim();
    let dotted = n >= 10;
    let mut slots: Vec<String> = Vec::new();
    for k in 0..n {
        let mut s = String::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = -alg.structure_constant(i, j, k);
                if c.is_zero() {
                    continue;
                }
                let neg = c.is_negative();
                let abs = c.abs();
                if neg {
                    s.push('-');
                } else if !s.is_empty() {
                    s.push('+');
                }
                if !abs.is_one() {
                    let _ = write!(s, "{abs}*");
                }
                if dotted {
                    let _ = write!(s, "{}.{}", i + 1, j + 1);
                } else {
                    let _ = write!(s, "{}{}", i + 1, j + 1);
                }
            }
        }
        slots.push(s);
    }
    let mut out = String::from("(");
    let mut k = 0;
    let mut first = true;
    while k < n {
        if !first {
            out.push(',');
        }
        first = false;
        if slots[k].is_empty() {
            let run = slots[k..].iter().take_while(|s| s.is_empty()).count();
            if run >= 2 {
                let _ = write!(out, "0^{run}");
            } else {
                out.push('0');
            }
            k += run;
        } else {
            out.push_str(&slots[k]);
            k += 1;
        }
    }
    out.push(')');
    out
}
