//! The dicyclic group `Q24 = <a, b | a^12 = 1, b^2 = a^6, b^-1 a b = a^-1>`,
//! with elements in normal form `a^i b^j`.

use std::fmt;

pub const ORDER_OF_A: u8 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DicyclicElt {
    /// Exponent of `b`, 0 or 1. Ordered first so the cyclic part sorts first.
    b: u8,
    /// Exponent of `a`, in `0..12`.
    a: u8,
}

impl DicyclicElt {
    pub fn new(a: u8, b: u8) -> Option<Self> {
        (a < ORDER_OF_A && b < 2).then_some(DicyclicElt { a, b })
    }

    pub fn a_exponent(self) -> u8 {
        self.a
    }

    pub fn b_exponent(self) -> u8 {
        self.b
    }

    /// `(a^i b^j)(a^k b^l)`, rewritten with `b a^k = a^-k b` and `b^2 = a^6`.
    pub fn mul(self, other: DicyclicElt) -> DicyclicElt {
        let n = ORDER_OF_A as i32;
        let k = other.a as i32;
        let mut a = self.a as i32 + if self.b == 1 { -k } else { k };
        let mut b = self.b + other.b;
        if b == 2 {
            a += 6;
            b = 0;
        }
        DicyclicElt {
            a: a.rem_euclid(n) as u8,
            b,
        }
    }

    /// `(a^i)^-1 = a^-i` and `(a^i b)^-1 = a^(i+6) b`.
    pub fn inverse(self) -> DicyclicElt {
        let a = if self.b == 0 {
            (ORDER_OF_A - self.a) % ORDER_OF_A
        } else {
            (self.a + 6) % ORDER_OF_A
        };
        DicyclicElt { a, b: self.b }
    }

    /// `1, a, ..., a^11, b, ab, ..., a^11 b`.
    pub fn all() -> Vec<DicyclicElt> {
        (0..2)
            .flat_map(|b| (0..ORDER_OF_A).map(move |a| DicyclicElt { a, b }))
            .collect()
    }

    /// Accepts `1`, `b`, `a`, `a7`, `a^7`, `a7b`, `ab`.
    pub fn parse(text: &str) -> Result<DicyclicElt, String> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "1" {
            return Ok(DicyclicElt { a: 0, b: 0 });
        }
        let (head, b) = match t.strip_suffix('b') {
            Some(h) => (h, 1),
            None => (t.as_str(), 0),
        };
        if head.is_empty() {
            return if b == 1 {
                Ok(DicyclicElt { a: 0, b })
            } else {
                Err("empty expression".into())
            };
        }
        let digits = head
            .strip_prefix('a')
            .ok_or_else(|| format!("expected 'a' or 'b', found {head:?}"))?;
        let digits = digits.strip_prefix('^').unwrap_or(digits);
        let digits = digits
            .strip_prefix('{')
            .and_then(|d| d.strip_suffix('}'))
            .unwrap_or(digits);
        let a: u32 = if digits.is_empty() {
            1
        } else {
            digits
                .parse()
                .map_err(|_| format!("bad exponent {digits:?}"))?
        };
        if a >= ORDER_OF_A as u32 {
            return Err(format!("exponent {a} out of range 0..12"));
        }
        Ok(DicyclicElt { a: a as u8, b })
    }
}

impl fmt::Display for DicyclicElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, 0) => f.write_str("1"),
            (0, _) => f.write_str("b"),
            (1, 0) => f.write_str("a"),
            (1, _) => f.write_str("ab"),
            (a, 0) => write!(f, "a{a}"),
            (a, _) => write!(f, "a{a}b"),
        }
    }
}
