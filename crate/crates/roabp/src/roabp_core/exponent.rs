//! Exponent vectors of monomials and their enumeration.

use std::fmt;

/// An exponent vector `a` with `x^a = prod x_i^{a_i}`. Also used for
/// prefixes (length `k <= n`) when working layer by layer.
///
/// Ordering is lexicographic, which fixes the deterministic iteration order
/// used throughout the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zeros(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of variables with nonzero exponent.
    pub fn support(&self) -> usize {
        self.0.iter().filter(|&&e| e != 0).count()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// The prefix extended by one more coordinate.
    pub fn extend_by(&self, j: u32) -> Self {
        let mut v = self.0.clone();
        v.push(j);
        Exponent(v)
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &Exponent) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise difference; caller guarantees domination.
    pub fn sub(&self, other: &Exponent) -> Exponent {
        debug_assert!(other.dominated_by(self));
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Human-readable monomial, e.g. `x1*x3^2`; the empty monomial is `1`.
    pub fn monomial_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `(d+1)^n`, or `None` on overflow.
pub fn monomial_count(n: usize, d: u32) -> Option<u128> {
    (d as u128 + 1).checked_pow(n as u32)
}

/// All exponent vectors in `{0..d}^n`, in lexicographic order.
pub fn all_exponents(n: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        out.push(Exponent(cur.clone()));
        // lexicographic successor: increment from the right
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < d {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

/// All exponent vectors in `{0..d}^n` with support below `support_lt`, in
/// lexicographic order.
pub fn low_support_exponents(n: usize, d: u32, support_lt: usize) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    rec(&mut cur, 0, 0, n, d, support_lt, &mut out);
    return out;

    fn rec(
        cur: &mut Vec<u32>,
        i: usize,
        supp: usize,
        n: usize,
        d: u32,
        support_lt: usize,
        out: &mut Vec<Exponent>,
    ) {
        if i == n {
            out.push(Exponent(cur.clone()));
            return;
        }
        for e in 0..=d {
            let s = supp + (e != 0) as usize;
            if s >= support_lt {
                break;
            }
            cur[i] = e;
            rec(cur, i + 1, s, n, d, support_lt, out);
        }
        cur[i] = 0;
    }
}

/// `sum_{j < support_lt, j <= n} C(n,j) * d^j`: the size of the low-support
/// grid enumerated by [`low_support_exponents`].
pub fn low_support_count(n: usize, d: u32, support_lt: usize) -> u128 {
    let mut total: u128 = 0;
    for j in 0..support_lt.min(n + 1) {
        let mut c: u128 = 1;
        for i in 0..j {
            c = c * (n - i) as u128 / (i + 1) as u128;
        }
        total += c * (d as u128).pow(j as u32);
    }
    total
}
