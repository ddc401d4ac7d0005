//! `SL(2,3)`: 2x2 matrices over `Z/3` with determinant one.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SL23Elt {
    /// Row-major entries `[[m0, m1], [m2, m3]]`, each in `0..3`.
    m: [u8; 4],
}

fn det(m: [u8; 4]) -> u8 {
    (m[0] * m[3] + 2 * (m[1] * m[2])) % 3
}

impl SL23Elt {
    pub fn new(m: [u8; 4]) -> Option<Self> {
        (m.iter().all(|&x| x < 3) && det(m) == 1).then_some(SL23Elt { m })
    }

    pub fn identity() -> Self {
        SL23Elt { m: [1, 0, 0, 1] }
    }

    pub fn entries(self) -> [u8; 4] {
        self.m
    }

    pub fn mul(self, other: SL23Elt) -> SL23Elt {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m;
        SL23Elt {
            m: [
                (a * e + b * g) % 3,
                (a * f + b * h) % 3,
                (c * e + d * g) % 3,
                (c * f + d * h) % 3,
            ],
        }
    }

    /// Adjugate; the determinant is 1.
    pub fn inverse(self) -> SL23Elt {
        let [a, b, c, d] = self.m;
        SL23Elt {
            m: [d, (3 - b) % 3, (3 - c) % 3, a],
        }
    }

    /// Identity first, then every other determinant-one matrix in
    /// lexicographic order of its entries.
    pub fn all() -> Vec<SL23Elt> {
        let mut out = vec![Self::identity()];
        for code in 0..81u8 {
            let m = [code / 27, (code / 9) % 3, (code / 3) % 3, code % 3];
            if det(m) == 1 && m != Self::identity().m {
                out.push(SL23Elt { m });
            }
        }
        out
    }

    /// Parses `[[r,s],[t,u]]`. Entries must be residues `0..3`.
    pub fn parse(text: &str) -> Result<SL23Elt, String> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or_else(|| "expected [[r,s],[t,u]]".to_string())?;
        let rows: Vec<&str> = inner.split("],[").collect();
        if rows.len() != 2 {
            return Err("expected two rows".into());
        }
        let mut m = [0u8; 4];
        for (r, row) in rows.iter().enumerate() {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != 2 {
                return Err(format!("row {r} does not have two entries"));
            }
            for (c, cell) in cells.iter().enumerate() {
                let v: u8 = cell
                    .parse()
                    .map_err(|_| format!("bad entry {cell:?}"))?;
                if v > 2 {
                    return Err(format!("entry {v} is not a residue mod 3"));
                }
                m[2 * r + c] = v;
            }
        }
        Ok(SL23Elt { m })
    }

    /// Parsed entries may still have determinant other than one.
    pub fn is_group_element(self) -> bool {
        det(self.m) == 1
    }
}

impl fmt::Display for SL23Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}
