//! Exact quaternions with coordinates in `Q(√2)`, restricted to the 48 unit
//! quaternions of the binary octahedral group.

use std::fmt;

use super::Notation;

/// A real number `(p + q·√2) / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSurd {
    pub p: i64,
    pub q: i64,
}

impl HalfSurd {
    pub const ZERO: HalfSurd = HalfSurd { p: 0, q: 0 };
    pub const ONE: HalfSurd = HalfSurd { p: 2, q: 0 };

    pub const fn new(p: i64, q: i64) -> Self {
        HalfSurd { p, q }
    }

    pub fn is_zero(self) -> bool {
        self.p == 0 && self.q == 0
    }

    /// The product, as `(P + Q·√2) / 4`.
    fn mul_quarter(self, other: HalfSurd) -> (i64, i64) {
        (
            self.p * other.p + 2 * self.q * other.q,
            self.p * other.q + self.q * other.p,
        )
    }

    pub fn to_f64(self) -> f64 {
        (self.p as f64 + self.q as f64 * std::f64::consts::SQRT_2) / 2.0
    }
}

impl std::ops::Neg for HalfSurd {
    type Output = HalfSurd;
    fn neg(self) -> HalfSurd {
        HalfSurd::new(-self.p, -self.q)
    }
}

/// A quaternion `w + x·i + y·j + z·k` with exact `Q(√2)` coordinates over
/// the shared denominator 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuatQR2 {
    coords: [HalfSurd; 4],
}

/// Basis labels in coordinate order.
const BASIS: [char; 4] = ['1', 'i', 'j', 'k'];

impl QuatQR2 {
    pub const fn from_coords(coords: [HalfSurd; 4]) -> Self {
        QuatQR2 { coords }
    }

    pub fn one() -> Self {
        Self::unit(0, 1)
    }

    /// `sign` times the basis element with index `axis` (0 = 1, 1 = i, ...).
    pub fn unit(axis: usize, sign: i64) -> Self {
        let mut coords = [HalfSurd::ZERO; 4];
        coords[axis] = HalfSurd::new(2 * sign, 0);
        QuatQR2 { coords }
    }

    pub fn coords(&self) -> [HalfSurd; 4] {
        self.coords
    }

    /// Hamilton product, reduced back to denominator 2. Returns `None` when
    /// the quarter-denominator result does not reduce, which cannot happen
    /// for two group elements.
    pub fn checked_mul(&self, other: &QuatQR2) -> Option<QuatQR2> {
        let [a0, a1, a2, a3] = self.coords;
        let [b0, b1, b2, b3] = other.coords;
        // (coefficient sign, left index, right index) for each output coordinate
        let terms: [[(i64, HalfSurd, HalfSurd); 4]; 4] = [
            [(1, a0, b0), (-1, a1, b1), (-1, a2, b2), (-1, a3, b3)],
            [(1, a0, b1), (1, a1, b0), (1, a2, b3), (-1, a3, b2)],
            [(1, a0, b2), (-1, a1, b3), (1, a2, b0), (1, a3, b1)],
            [(1, a0, b3), (1, a1, b2), (-1, a2, b1), (1, a3, b0)],
        ];
        let mut out = [HalfSurd::ZERO; 4];
        for (slot, row) in out.iter_mut().zip(terms.iter()) {
            let (mut big_p, mut big_q) = (0i64, 0i64);
            for &(sign, x, y) in row {
                let (p, q) = x.mul_quarter(y);
                big_p += sign * p;
                big_q += sign * q;
            }
            if big_p % 2 != 0 || big_q % 2 != 0 {
                return None;
            }
            *slot = HalfSurd::new(big_p / 2, big_q / 2);
        }
        Some(QuatQR2 { coords: out })
    }

    /// Conjugate `w - xi - yj - zk`; the inverse of a unit quaternion.
    pub fn conjugate(&self) -> QuatQR2 {
        let [a, b, c, d] = self.coords;
        QuatQR2 {
            coords: [a, -b, -c, -d],
        }
    }

    /// Unit norm with every coordinate in `{0, ±1, ±1/2, ±1/√2}`.
    pub fn is_group_element(&self) -> bool {
        let allowed = |c: HalfSurd| {
            matches!(
                (c.p, c.q),
                (0, 0) | (2, 0) | (-2, 0) | (1, 0) | (-1, 0) | (0, 1) | (0, -1)
            )
        };
        if !self.coords.iter().all(|&c| allowed(c)) {
            return false;
        }
        // sum of squares (p² + 2q² + 2pq√2)/4 must equal 1
        let rational: i64 = self.coords.iter().map(|c| c.p * c.p + 2 * c.q * c.q).sum();
        let irrational: i64 = self.coords.iter().map(|c| c.p * c.q).sum();
        rational == 4 && irrational == 0
    }

    /// The 48 elements in listing order: `±1, ±i, ±j, ±k`, then
    /// `½(±1±i±j±k)`, then `(1/√2)(±x±y)` over the six basis pairs.
    pub fn binary_octahedral() -> Vec<QuatQR2> {
        let mut out = Vec::with_capacity(48);
        for axis in 0..4 {
            for sign in [1, -1] {
                out.push(Self::unit(axis, sign));
            }
        }
        for mask in 0..16u32 {
            let mut coords = [HalfSurd::ZERO; 4];
            for (axis, c) in coords.iter_mut().enumerate() {
                let negative = mask & (1 << (3 - axis)) != 0;
                *c = HalfSurd::new(if negative { -1 } else { 1 }, 0);
            }
            out.push(QuatQR2 { coords });
        }
        for a in 0..4 {
            for b in a + 1..4 {
                for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let mut coords = [HalfSurd::ZERO; 4];
                    coords[a] = HalfSurd::new(0, sa);
                    coords[b] = HalfSurd::new(0, sb);
                    out.push(QuatQR2 { coords });
                }
            }
        }
        out
    }

    /// Parses the signed-sum notation, e.g. `k`, `-1`, `1/2(-1-i+j+k)`,
    /// `-1/r2(1+j)` or `1/√2(j-k)`.
    pub fn parse(text: &str) -> Result<QuatQR2, String> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        let mut outer = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            outer = -1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }

        // Scale applied to each ±1 basis coefficient, as a HalfSurd.
        let (scale, body) = if let Some(r) = rest.strip_prefix("1/2(") {
            (HalfSurd::new(1, 0), r)
        } else if let Some(r) = rest
            .strip_prefix("1/r2(")
            .or_else(|| rest.strip_prefix("1/√2("))
            .or_else(|| rest.strip_prefix("1/sqrt2("))
        {
            (HalfSurd::new(0, 1), r)
        } else {
            (HalfSurd::ONE, rest)
        };
        let body = if scale != HalfSurd::ONE {
            body.strip_suffix(')')
                .ok_or_else(|| "missing closing parenthesis".to_string())?
        } else {
            body
        };
        if body.is_empty() {
            return Err("empty expression".into());
        }

        let mut coeff = [0i64; 4];
        let mut seen = [false; 4];
        let mut chars = body.chars().peekable();
        let mut first = true;
        while chars.peek().is_some() {
            let sign = match chars.peek() {
                Some('+') => {
                    chars.next();
                    1
                }
                Some('-') => {
                    chars.next();
                    -1
                }
                _ if first => 1,
                Some(c) => return Err(format!("expected '+' or '-' before {c:?}")),
                None => unreachable!(),
            };
            let symbol = chars
                .next()
                .ok_or_else(|| "dangling sign".to_string())?;
            let axis = BASIS
                .iter()
                .position(|&b| b == symbol)
                .ok_or_else(|| format!("unexpected symbol {symbol:?}"))?;
            if seen[axis] {
                return Err(format!("basis element {symbol:?} repeated"));
            }
            seen[axis] = true;
            coeff[axis] = sign;
            first = false;
        }

        let mut coords = [HalfSurd::ZERO; 4];
        for (c, &k) in coords.iter_mut().zip(coeff.iter()) {
            let k = k * outer;
            *c = HalfSurd::new(scale.p * k, scale.q * k);
        }
        Ok(QuatQR2 { coords })
    }

    /// Canonical text: no outer sign, explicit inner signs.
    pub fn format(&self, notation: Notation) -> String {
        let nonzero: Vec<(usize, HalfSurd)> = self
            .coords
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let sum = |prefix: &str| {
            let mut s = String::from(prefix);
            s.push('(');
            for (n, (axis, c)) in nonzero.iter().enumerate() {
                let negative = c.p < 0 || c.q < 0;
                if negative {
                    s.push('-');
                } else if n > 0 {
                    s.push('+');
                }
                s.push(BASIS[*axis]);
            }
            s.push(')');
            s
        };
        match nonzero.as_slice() {
            [(axis, c)] if c.q == 0 && c.p.abs() == 2 => {
                let sign = if c.p < 0 { "-" } else { "" };
                format!("{sign}{}", BASIS[*axis])
            }
            [_, _] => sum(match notation {
                Notation::Ascii => "1/r2",
                Notation::Unicode => "1/√2",
            }),
            _ => sum("1/2"),
        }
    }
}

impl fmt::Display for QuatQR2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(Notation::Ascii))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> QuatQR2 {
        QuatQR2::parse(text).unwrap()
    }

    #[test]
    fn listing_has_48_distinct_units() {
        let all = QuatQR2::binary_octahedral();
        assert_eq!(all.len(), 48);
        assert!(all.iter().all(QuatQR2::is_group_element));
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 48);
    }

    #[test]
    fn hamilton_rules() {
        let minus_one = q("-1");
        for x in ["i", "j", "k"] {
            assert_eq!(q(x).checked_mul(&q(x)), Some(minus_one));
        }
        assert_eq!(q("i").checked_mul(&q("j")), Some(q("k")));
        assert_eq!(q("j").checked_mul(&q("i")), Some(q("-k")));
        let ijk = q("i").checked_mul(&q("j")).unwrap().checked_mul(&q("k"));
        assert_eq!(ijk, Some(minus_one));
    }

    #[test]
    fn root_two_products_reduce() {
        // (1/√2)(1+i) squared is i
        let x = q("1/r2(1+i)");
        assert_eq!(x.checked_mul(&x), Some(q("i")));
        // ½(1+i+j+k) has order 6; its cube is -1
        let y = q("1/2(1+i+j+k)");
        let y3 = y.checked_mul(&y).unwrap().checked_mul(&y).unwrap();
        assert_eq!(y3, q("-1"));
    }

    #[test]
    fn parse_generator_of_k() {
        let x = q("1/√2(j-k)");
        assert_eq!(
            x.coords(),
            [
                HalfSurd::ZERO,
                HalfSurd::ZERO,
                HalfSurd::new(0, 1),
                HalfSurd::new(0, -1)
            ]
        );
        assert_eq!(q("1/r2(j-k)"), x);
        assert_eq!(q("-1/r2(-j+k)"), x);
    }

    #[test]
    fn outer_sign_distributes() {
        assert_eq!(q("-1/2(1+i+j+k)"), q("1/2(-1-i-j-k)"));
        assert_eq!(q("-1/r2(1-k)"), q("1/r2(-1+k)"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(QuatQR2::parse("1/2(1+i+j").is_err());
        assert!(QuatQR2::parse("1/2(1+1+j+k)").is_err());
        assert!(QuatQR2::parse("x").is_err());
        assert!(QuatQR2::parse("").is_err());
        assert!(QuatQR2::parse("i j").is_err());
        // parses, but is not a unit of the group
        assert!(!q("1+i").is_group_element());
    }

    #[test]
    fn format_examples() {
        assert_eq!(q("k").format(Notation::Ascii), "k");
        assert_eq!(q("-1").format(Notation::Ascii), "-1");
        assert_eq!(q("-1/2(1+i-j-k)").format(Notation::Ascii), "1/2(-1-i+j+k)");
        assert_eq!(q("-1/r2(1+j)").format(Notation::Unicode), "1/√2(-1-j)");
    }
}
