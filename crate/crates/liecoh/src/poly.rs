//! Sparse multivariate polynomials over [`Scalar`], crate-internal.
//!
//! Used for symbolic Jacobi residuals (triangular elimination of dependent
//! structure constants), the resultant-based solver for the low Jacobi
//! equations, and the symbolic Pfaffian of a generic form combination.

use std::collections::BTreeMap;

use crate::exactlin::Scalar;

/// Monomial = exponent vector, fixed variable count per polynomial context.
pub(crate) type Monomial = Vec<u16>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct MPoly {
    nvars: usize,
    /// Nonzero terms only; keyed by exponent vector of length `nvars`.
    terms: BTreeMap<Monomial, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut mono = vec![0u16; nvars];
        mono[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(mono, Scalar::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&vec![0u16; self.nvars])
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms
            .keys()
            .map(|m| m[var] as usize)
            .max()
            .unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(i))
            .collect()
    }

    fn insert_term(&mut self, mono: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> MPoly {
        if k.is_zero() {
            return MPoly::zero(self.nvars);
        }
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono: Monomial = ma.iter().zip(mb).map(|(&a, &b)| a + b).collect();
                out.insert_term(mono, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut exp: usize) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::constant(self.nvars, Scalar::one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += &term;
        }
        acc
    }

    /// Substitute a constant for variable `var`.
    pub fn substitute(&self, var: usize, value: &Scalar) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m[var];
            let mut mono = m.clone();
            mono[var] = 0;
            out.insert_term(mono, c * &value.pow(e as i32));
        }
        out
    }

    /// Coefficients w.r.t. one variable: index `k` holds the coefficient of
    /// `var^k` as a polynomial in the remaining variables.
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var);
        let mut out = vec![MPoly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m[var] as usize;
            let mut mono = m.clone();
            mono[var] = 0;
            out[e].insert_term(mono, c.clone());
        }
        out
    }

    /// Decompose as `a·var + b` if degree in `var` is at most 1.
    pub fn as_linear_in(&self, var: usize) -> Option<(MPoly, MPoly)> {
        if self.degree_in(var) > 1 {
            return None;
        }
        let mut coeffs = self.coefficients_in(var);
        let b = coeffs.remove(0);
        let a = coeffs
            .pop()
            .unwrap_or_else(|| MPoly::zero(self.nvars));
        Some((a, b))
    }
}

/// Resultant of `f` and `g` with respect to `var`, where `f = a·var + b` is
/// linear in `var`: `Res = Σ_k g_k · (−b)^k · a^(deg g − k)`.
pub(crate) fn resultant_with_linear(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
    let (a, b) = f
        .as_linear_in(var)
        .expect("first argument must be linear in the eliminated variable");
    assert!(!a.is_zero(), "leading coefficient vanishes identically");
    let coeffs = g.coefficients_in(var);
    let d = coeffs.len() - 1;
    let minus_b = b.neg();
    let mut acc = MPoly::zero(f.nvars());
    for (k, gk) in coeffs.iter().enumerate() {
        if gk.is_zero() {
            continue;
        }
        let term = gk.mul(&minus_b.pow(k)).mul(&a.pow(d - k));
        acc = acc.add(&term);
    }
    acc
}

/// Rational roots of a univariate polynomial (constant in all variables but
/// `var`). Exact: clears denominators, factors out powers of `var`, then runs
/// the rational root test by trial division over divisor pairs.
pub(crate) fn rational_roots(p: &MPoly, var: usize) -> Vec<Scalar> {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

    assert!(
        p.support_vars().iter().all(|&v| v == var),
        "polynomial is not univariate in the requested variable"
    );
    let coeffs = p.coefficients_in(var);
    let consts: Vec<Scalar> = coeffs.iter().map(MPoly::constant_term).collect();
    if consts.iter().all(Scalar::is_zero) {
        // Zero polynomial: root finding is meaningless here.
        panic!("rational_roots called on the zero polynomial");
    }

    // Clear denominators to integer coefficients.
    let mut lcm = BigInt::from(1);
    for c in &consts {
        if !c.is_zero() {
            lcm = num_integer::lcm(lcm, c.denominator().clone());
        }
    }
    let ints: Vec<BigInt> = consts
        .iter()
        .map(|c| c.numerator() * (&lcm / c.denominator()))
        .collect();

    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(Scalar::zero());
    }
    let reduced: Vec<BigInt> = ints[low..].to_vec();
    if reduced.len() == 1 {
        return roots;
    }
    let a0 = reduced[0].abs();
    let an = reduced.last().unwrap().abs();
    let p_divs = divisors(&a0);
    let q_divs = divisors(&an);
    for pd in &p_divs {
        for qd in &q_divs {
            for sign in [1i64, -1] {
                let cand = Scalar::new(pd * BigInt::from(sign), qd.clone()).unwrap();
                if roots.contains(&cand) {
                    continue;
                }
                let val: Scalar = reduced
                    .iter()
                    .enumerate()
                    .map(|(k, c)| Scalar::from_bigint(c.clone()) * cand.pow(k as i32))
                    .sum();
                if val.is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

/// Positive divisors by trial division; magnitudes here are tiny.
fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

    let n = n.abs();
    assert!(!n.is_zero(), "divisors of zero requested");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::from(1);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::ratio(p, d)
    }

    #[test]
    fn arithmetic_and_eval() {
        // (x + 2y)(x - 2y) = x^2 - 4y^2
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let two_y = y.scale(&Scalar::from_int(2));
        let p = x.add(&two_y).mul(&x.sub(&two_y));
        assert_eq!(p.eval(&[q(3, 1), q(1, 1)]), q(5, 1));
        assert_eq!(p.total_degree(), 2);
        assert_eq!(p.degree_in(1), 2);
    }

    #[test]
    fn substitution() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = x.mul(&y).add(&y.pow(2)); // xy + y^2
        let at_y2 = p.substitute(1, &q(2, 1)); // 2x + 4
        assert_eq!(at_y2.eval(&[q(5, 1), q(0, 1)]), q(14, 1));
    }

    #[test]
    fn linear_resultant_eliminates_common_roots() {
        // f = x - 3, g = x^2 - 9 share the root 3: resultant vanishes.
        let x = MPoly::var(1, 0);
        let f = x.sub(&MPoly::constant(1, q(3, 1)));
        let g = x.pow(2).sub(&MPoly::constant(1, q(9, 1)));
        assert!(resultant_with_linear(&f, &g, 0).is_zero());

        // f = x - 3, g = x^2 - 4 do not: resultant is g(3) = 5.
        let g2 = x.pow(2).sub(&MPoly::constant(1, q(4, 1)));
        let r = resultant_with_linear(&f, &g2, 0);
        assert_eq!(r.constant_term(), q(5, 1));
    }

    #[test]
    fn rational_root_extraction() {
        // 60x^4 - 6x^3 = 6x^3(10x - 1): roots {0, 1/10}.
        let x = MPoly::var(1, 0);
        let p = x.pow(4).scale(&q(60, 1)).sub(&x.pow(3).scale(&q(6, 1)));
        let mut roots = rational_roots(&p, 0);
        roots.sort();
        assert_eq!(roots, vec![q(0, 1), q(1, 10)]);
    }
}
