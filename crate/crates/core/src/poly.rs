//! Laurent polynomials in one variable with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct Laurent {
    coeffs: BTreeMap<i32, i64>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn one() -> Laurent {
        Laurent::monomial(0, 1)
    }

    pub fn monomial(exp: i32, coeff: i64) -> Laurent {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exp, coeff);
        }
        Laurent { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    /// Multiply by c * v^e in place.
    pub fn shift(&self, exp: i32, coeff: i64) -> Laurent {
        if coeff == 0 {
            return Laurent::zero();
        }
        Laurent {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, &c)| (e + exp, c * coeff))
                .collect(),
        }
    }

    /// Rewrite every exponent; panics on collisions with unequal signs
    /// folded together are fine (coefficients add).
    pub fn map_exponents(&self, f: impl Fn(i32) -> i32) -> Laurent {
        let mut out = Laurent::zero();
        for (&e, &c) in &self.coeffs {
            out.add_term(f(e), c);
        }
        out
    }

    /// True when every exponent is even.
    pub fn exponents_even(&self) -> bool {
        self.coeffs.keys().all(|e| e.rem_euclid(2) == 0)
    }

    /// Evaluate at v = i (the imaginary unit); returns (re, im).
    pub fn eval_imaginary_unit(&self) -> (i64, i64) {
        let (mut re, mut im) = (0i64, 0i64);
        for (&e, &c) in &self.coeffs {
            match e.rem_euclid(4) {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                3 => im -= c,
                _ => unreachable!(),
            }
        }
        (re, im)
    }

    /// Evaluate at v = -1.
    pub fn eval_minus_one(&self) -> i64 {
        self.coeffs
            .iter()
            .map(|(&e, &c)| if e.rem_euclid(2) == 0 { c } else { -c })
            .sum()
    }

    /// Render with the given variable name, lowest exponent first.
    pub fn display(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&e, &c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let show_coeff = mag != 1 || e == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if e != 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if e != 1 {
                    out.push_str(&format!("^{e}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("v"))
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}
