//! Independent checker used by the integration tests. It re-derives the
//! group product from the exact element values with its own arithmetic and
//! counts edge coverage without going through the library's orbit or
//! factorization code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hwp_core::group::ElementValue;
use hwp_core::{build_group, FiniteGroup, SolutionSpec};

pub struct Oracle {
    pub n: usize,
    pub mul: Vec<Vec<usize>>,
    pub involution: usize,
    pub group: FiniteGroup,
}

fn quat_mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// `(a^i b^j)(a^k b^l)` from `b a = a^-1 b`, `b^2 = a^6`.
fn dic_mul((i, j): (i32, i32), (k, l): (i32, i32)) -> (i32, i32) {
    let a = if j == 0 { i + k } else { i - k };
    let b = j + l;
    if b == 2 {
        ((a + 6).rem_euclid(12), 0)
    } else {
        (a.rem_euclid(12), b)
    }
}

fn mat_mul(x: [u8; 4], y: [u8; 4]) -> [u8; 4] {
    let m = |a: u8, b: u8, c: u8, d: u8| ((a as u32 * b as u32 + c as u32 * d as u32) % 3) as u8;
    [
        m(x[0], y[0], x[1], y[2]),
        m(x[0], y[1], x[1], y[3]),
        m(x[2], y[0], x[3], y[2]),
        m(x[2], y[1], x[3], y[3]),
    ]
}

impl Oracle {
    pub fn new(group: FiniteGroup) -> Oracle {
        let values: Vec<ElementValue> = group.elements().map(|g| group.value(g)).collect();
        let n = values.len();
        let find = |pred: &dyn Fn(&ElementValue) -> bool| {
            values.iter().position(pred).expect("product lies in the group")
        };
        let mut mul = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                mul[x][y] = match (&values[x], &values[y]) {
                    (ElementValue::Quaternion(a), ElementValue::Quaternion(b)) => {
                        let f = |q: &hwp_core::group::QuatQR2| q.coords().map(|c| c.to_f64());
                        let p = quat_mul(f(a), f(b));
                        find(&|v| match v {
                            ElementValue::Quaternion(q) => {
                                f(q).iter().zip(&p).all(|(u, w)| (u - w).abs() < 1e-9)
                            }
                            _ => false,
                        })
                    }
                    (ElementValue::Dicyclic(a), ElementValue::Dicyclic(b)) => {
                        let e = |d: &hwp_core::group::DicyclicElt| {
                            (d.a_exponent() as i32, d.b_exponent() as i32)
                        };
                        let p = dic_mul(e(a), e(b));
                        find(&|v| matches!(v, ElementValue::Dicyclic(d) if e(d) == p))
                    }
                    (ElementValue::Matrix(a), ElementValue::Matrix(b)) => {
                        let p = mat_mul(a.entries(), b.entries());
                        find(&|v| matches!(v, ElementValue::Matrix(m) if m.entries() == p))
                    }
                    _ => unreachable!(),
                };
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|x| mul[e][x] == x)).unwrap();
        let involutions: Vec<usize> =
            (0..n).filter(|&x| x != identity && mul[x][x] == identity).collect();
        assert_eq!(involutions.len(), 1, "expected one involution");
        Oracle {
            n,
            mul,
            involution: involutions[0],
            group,
        }
    }

    pub fn for_id(id: hwp_core::GroupId) -> Oracle {
        Oracle::new(build_group(id).unwrap())
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::from([0usize]);
        loop {
            let extra: Vec<usize> = set
                .iter()
                .flat_map(|&x| gens.iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.mul[x][g])
                .filter(|y| !set.contains(y))
                .collect();
            if extra.is_empty() {
                return set.into_iter().collect();
            }
            set.extend(extra);
        }
    }

    fn edges_of(cycle: &[usize]) -> Vec<(usize, usize)> {
        let l = cycle.len();
        (0..l)
            .map(|t| {
                let (a, b) = (cycle[t], cycle[(t + 1) % l]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    /// Checks the solution by brute force and returns `(v, r, s)`.
    pub fn check(&self, spec: &SolutionSpec) -> Result<(usize, usize, usize), String> {
        let g = &self.group;
        let parse = |t: &String| g.parse_element(t).map(|e| e.index()).map_err(|e| e.to_string());
        let mut subgroups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        subgroups.insert("G", (0..self.n).collect());
        for (name, gens) in &spec.subgroups {
            let gens = gens.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
            subgroups.insert(name, self.closure(&gens));
        }
        let mut factors: Vec<BTreeSet<(usize, usize)>> = Vec::new();
        let (mut r, mut s) = (0, 0);
        for f in &spec.factors {
            let sub = &subgroups[f.subgroup.as_str()];
            // F as an edge set
            let mut edges = BTreeSet::new();
            let mut degree = vec![0usize; self.n];
            let mut lengths = BTreeSet::new();
            for c in &f.cycles {
                let cycle = spec.cycles[c].iter().map(parse).collect::<Result<Vec<_>, _>>()?;
                if cycle.iter().collect::<BTreeSet<_>>().len() != cycle.len() || cycle.len() < 3 {
                    return Err(format!("{c} is not a cycle"));
                }
                lengths.insert(cycle.len());
                let mut translates = BTreeSet::new();
                for &h in sub {
                    let moved: Vec<usize> = cycle.iter().map(|&x| self.mul[x][h]).collect();
                    let mut e = Self::edges_of(&moved);
                    e.sort();
                    translates.insert(e);
                }
                for t in translates {
                    for e in t {
                        if !edges.insert(e) {
                            return Err(format!("edge {e:?} repeated inside a factor"));
                        }
                        degree[e.0] += 1;
                        degree[e.1] += 1;
                    }
                }
            }
            if let Some(v) = degree.iter().position(|&d| d != 2) {
                return Err(format!("vertex {v} has degree {} in a factor", degree[v]));
            }
            if lengths.len() != 1 {
                return Err("mixed cycle lengths".into());
            }
            let orbit: BTreeSet<BTreeSet<(usize, usize)>> = (0..self.n)
                .map(|h| {
                    edges
                        .iter()
                        .map(|&(a, b)| {
                            let (x, y) = (self.mul[a][h], self.mul[b][h]);
                            (x.min(y), x.max(y))
                        })
                        .collect()
                })
                .collect();
            match lengths.first() {
                Some(3) => r += orbit.len(),
                Some(4) => s += orbit.len(),
                other => return Err(format!("cycle length {other:?}")),
            }
            factors.extend(orbit);
        }
        let mut count = vec![vec![0u32; self.n]; self.n];
        for f in &factors {
            for &(a, b) in f {
                count[a][b] += 1;
            }
        }
        for a in 0..self.n {
            for b in a + 1..self.n {
                let want = if self.mul[a][self.involution] == b { 0 } else { 1 };
                if count[a][b] != want {
                    return Err(format!("edge ({a}, {b}) covered {} times", count[a][b]));
                }
            }
        }
        Ok((self.n, r, s))
    }

    /// Number of edges of `K_v - I`.
    pub fn edge_total(&self) -> usize {
        self.n * (self.n - 2) / 2
    }
}
