//! Kauffman bracket by state sum.

use std::collections::BTreeMap;
use std::fmt;

use super::knot::PlanarKnot;
use crate::diagram::ResolvedDiagram;
use crate::error::{Error, Result};

/// Largest crossing count the state sum accepts.
pub const BRACKET_BOUND: usize = 20;

/// Laurent polynomial in the bracket variable `A`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BracketPolynomial {
    pub coeffs: BTreeMap<i32, i64>,
    /// True once multiplied by `(-A^3)^(-writhe)`.
    pub normalized: bool,
}

impl BracketPolynomial {
    pub fn one() -> Self {
        BracketPolynomial { coeffs: BTreeMap::from([(0, 1)]), normalized: true }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0) == Some(&1)
    }

    /// Highest minus lowest exponent; zero for a monomial.
    pub fn span(&self) -> i32 {
        match (self.coeffs.keys().next(), self.coeffs.keys().next_back()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// `|V(-1)|` of the associated Jones polynomial. Exponents of a knot
    /// bracket agree mod 4, and `A^4 = -1` there.
    pub fn determinant(&self) -> u64 {
        let Some(&e0) = self.coeffs.keys().next() else {
            return 0;
        };
        let total: i64 = self
            .coeffs
            .iter()
            .map(|(&k, &c)| if ((k - e0) / 4) % 2 == 0 { c } else { -c })
            .sum();
        total.unsigned_abs()
    }

    fn mul(&self, other: &BracketPolynomial) -> BracketPolynomial {
        let mut out = BTreeMap::new();
        for (&a, &x) in &self.coeffs {
            for (&b, &y) in &other.coeffs {
                *out.entry(a + b).or_insert(0) += x * y;
            }
        }
        out.retain(|_, c| *c != 0);
        BracketPolynomial { coeffs: out, normalized: self.normalized }
    }
}

impl fmt::Display for BracketPolynomial {
    /// Sparse `exponent:coefficient` pairs in increasing exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(e, c)| format!("{e}:{c}")).collect();
        f.write_str(&parts.join(" "))
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Unnormalised bracket with `<O> = 1`.
pub fn raw_bracket(knot: &PlanarKnot) -> Result<BracketPolynomial> {
    let n = knot.crossing_count();
    if n > BRACKET_BOUND {
        return Err(Error::TooLarge { what: "bracket state sum", size: n, bound: BRACKET_BOUND });
    }
    if n == 0 {
        return Ok(BracketPolynomial { normalized: false, ..BracketPolynomial::one() });
    }
    let len = knot.len();
    // Edges at each crossing in counterclockwise order, starting with the
    // incoming under edge. Edge p runs from position p to p + 1.
    let slots: Vec<[usize; 4]> = knot
        .positions()
        .into_iter()
        .enumerate()
        .map(|(c, [p, q])| {
            let (u, o) = if knot.passes[p].over { (q, p) } else { (p, q) };
            let (u_in, o_in) = ((u + len - 1) % len, (o + len - 1) % len);
            if knot.signs[c] > 0 {
                [u_in, o, u, o_in]
            } else {
                [u_in, o_in, u, o]
            }
        })
        .collect();
    // Count states by (a - b, loop count).
    let mut histogram: BTreeMap<(i32, usize), i64> = BTreeMap::new();
    let mut parent = vec![0; len];
    for state in 0u32..(1u32 << n) {
        parent.iter_mut().enumerate().for_each(|(i, p)| *p = i);
        let mut loops = len;
        for (c, s) in slots.iter().enumerate() {
            let pairs = if state >> c & 1 == 0 { [(s[0], s[1]), (s[2], s[3])] } else { [(s[0], s[3]), (s[1], s[2])] };
            for (x, y) in pairs {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                    loops -= 1;
                }
            }
        }
        let b = state.count_ones() as i32;
        let a = n as i32 - b;
        *histogram.entry((a - b, loops)).or_insert(0) += 1;
    }
    let d = BracketPolynomial { coeffs: BTreeMap::from([(2, -1), (-2, -1)]), normalized: false };
    let mut powers = vec![BracketPolynomial { normalized: false, ..BracketPolynomial::one() }];
    let mut total: BTreeMap<i32, i64> = BTreeMap::new();
    for ((shift, loops), count) in histogram {
        while powers.len() < loops {
            let next = powers.last().unwrap().mul(&d);
            powers.push(next);
        }
        for (&e, &c) in &powers[loops - 1].coeffs {
            *total.entry(e + shift).or_insert(0) += c * count;
        }
    }
    total.retain(|_, c| *c != 0);
    Ok(BracketPolynomial { coeffs: total, normalized: false })
}

/// Writhe-normalised bracket; the unknot gives 1.
pub fn normalized_bracket(knot: &PlanarKnot) -> Result<BracketPolynomial> {
    let raw = raw_bracket(knot)?;
    let w = knot.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let factor = BracketPolynomial { coeffs: BTreeMap::from([(-3 * w, sign)]), normalized: true };
    let mut out = factor.mul(&raw);
    out.normalized = true;
    Ok(out)
}

pub fn kauffman_bracket(resolved: &ResolvedDiagram) -> Result<BracketPolynomial> {
    let n = resolved.shadow.crossing_count();
    if n > BRACKET_BOUND {
        return Err(Error::TooLarge { what: "bracket state sum", size: n, bound: BRACKET_BOUND });
    }
    normalized_bracket(&PlanarKnot::from_resolved(resolved)?)
}
