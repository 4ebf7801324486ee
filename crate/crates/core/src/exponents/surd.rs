//! Exact quadratic surds `(a + b√c)/d` for labelling boundary points.
//!
//! For integer damping the Strauss exponent and the crossing level `k̄₀` are
//! quadratic irrationals, so atlas annotations can print them exactly.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surd {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Surd {
    /// `(a + b√c)/d`, reduced. `c >= 0`, `d != 0`.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(c >= 0 && d != 0);
        let (mut b, mut c) = (b, c);
        let mut s = 2;
        while s * s <= c {
            while c % (s * s) == 0 {
                c /= s * s;
                b *= s;
            }
            s += 1;
        }
        let (mut a, mut d) = (a, d);
        if c == 1 {
            a += b;
            b = 0;
        }
        if c == 0 {
            b = 0;
        }
        let g = gcd(gcd(a, b), d);
        if g > 1 {
            a /= g;
            b /= g;
            d /= g;
        }
        if d < 0 {
            a = -a;
            b = -b;
            d = -d;
        }
        Self { a, b, c, d }
    }

    pub fn value(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.c as f64).sqrt()) / self.d as f64
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = match self.b {
            0 => String::new(),
            1 => format!("√{}", self.c),
            -1 => format!("-√{}", self.c),
            b => format!("{b}√{}", self.c),
        };
        let num = match (self.a, self.b) {
            (a, 0) => a.to_string(),
            (0, _) => root,
            (a, b) if b > 0 => format!("{a}+{root}"),
            (a, _) => format!("{a}{root}"),
        };
        if self.d == 1 {
            f.write_str(&num)
        } else if self.b != 0 && self.a != 0 {
            write!(f, "({num})/{}", self.d)
        } else {
            write!(f, "{num}/{}", self.d)
        }
    }
}

/// Exact Strauss exponent `p_S(d)` for integer `d >= 2`.
pub fn strauss_surd(d: i64) -> Option<Surd> {
    if d < 2 {
        return None;
    }
    Some(Surd::new(d + 1, 1, (d + 1) * (d + 1) + 8 * (d - 1), 2 * (d - 1)))
}

/// Exact `k̄₀` with `p_F(k̄₀ + μ/2) = p_S(n + μ)` for integer `μ`.
pub fn kbar_zero_surd(n: i64, mu: i64) -> Option<Surd> {
    let d = n + mu;
    if d < 2 {
        return None;
    }
    // p_S = (A + √B)/C, so 2/(p_S - 1) = 2C(√B - D)/(B - D²) with D = A - C
    let (a, b, c) = (d + 1, (d + 1) * (d + 1) + 8 * (d - 1), 2 * (d - 1));
    let dd = a - c;
    let den = b - dd * dd;
    if den == 0 {
        return None;
    }
    Some(Surd::new(-4 * c * dd - mu * den, 4 * c, b, 2 * den))
}
