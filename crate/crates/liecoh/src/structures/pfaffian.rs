//! Symbolic Pfaffian of a generic combination of skew forms.
//!
//! For a basis `M_1, ..., M_k` of a space of skew matrices, the determinant of
//! `x_1 M_1 + ... + x_k M_k` is the square of its Pfaffian, a polynomial in
//! the `x_i`. The Pfaffian vanishing identically certifies that every element
//! of the space is degenerate; otherwise a nonzero point, hence a
//! nondegenerate element, can be extracted deterministically.

use std::collections::HashMap;

use crate::exactlin::{Matrix, Scalar};
use crate::poly::MPoly;

/// Pfaffian of `sum_c x_c mats[c]` as a polynomial in the `x_c`. All matrices
/// must be skew of equal even size (odd sizes have Pfaffian zero).
pub(crate) fn symbolic_pfaffian(mats: &[Matrix]) -> MPoly {
    let k = mats.len();
    assert!(k > 0);
    let n = mats[0].rows();
    assert!(mats.iter().all(|m| m.rows() == n && m.cols() == n));
    if n % 2 != 0 {
        return MPoly::zero(k);
    }
    if n == 0 {
        return MPoly::constant(k, Scalar::one());
    }
    assert!(n <= 31, "bitmask subset representation limit");

    // Entry (i, j) of the generic combination, linear in the variables.
    let entry = |i: usize, j: usize| -> MPoly {
        let mut acc = MPoly::zero(k);
        for (c, m) in mats.iter().enumerate() {
            let v = m.get(i, j);
            if !v.is_zero() {
                acc = acc.add(&MPoly::var(k, c).scale(v));
            }
        }
        acc
    };

    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut memo: HashMap<u32, MPoly> = HashMap::new();

    fn pf(
        mask: u32,
        k: usize,
        entry: &dyn Fn(usize, usize) -> MPoly,
        memo: &mut HashMap<u32, MPoly>,
    ) -> MPoly {
        if mask == 0 {
            return MPoly::constant(k, Scalar::one());
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1u32 << first);
        let mut acc = MPoly::zero(k);
        let mut position = 0usize;
        for j in 0..32 {
            if rest & (1u32 << j) == 0 {
                continue;
            }
            let e = entry(first, j as usize);
            if !e.is_zero() {
                let sub = pf(rest & !(1u32 << j), k, entry, memo);
                let term = e.mul(&sub);
                acc = if position % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            position += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    pf(full, k, &entry, &mut memo)
}

/// A point where a nonzero polynomial does not vanish, found variable by
/// variable: fix the other variables at a nonzero point of the leading
/// coefficient, then scan at most `deg + 1` integer values for the last one.
pub(crate) fn nonzero_point(p: &MPoly) -> Vec<Scalar> {
    assert!(!p.is_zero(), "the zero polynomial has no nonzero point");
    let k = p.nvars();
    let mut point = vec![Scalar::zero(); k];
    let mut current = p.clone();
    loop {
        let support = current.support_vars();
        let Some(&var) = support.first() else {
            debug_assert!(!current.constant_term().is_zero());
            return point;
        };
        let coeffs = current.coefficients_in(var);
        let lead = coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .expect("nonzero polynomial has a nonzero coefficient");
        // Recursively fixing the other variables inside the leading
        // coefficient keeps the polynomial nonzero; then the univariate
        // polynomial in `var` has degree `lead` and at most `lead` roots.
        let tail = nonzero_point(&coeffs[lead]);
        let mut substituted = current.clone();
        for (v, value) in tail.iter().enumerate() {
            if v != var && substituted.degree_in(v) > 0 {
                substituted = substituted.substitute(v, value);
                point[v] = value.clone();
            }
        }
        for candidate in 0..=lead as i64 {
            let value = Scalar::from_int(candidate + 1);
            if !substituted.substitute(var, &value).constant_term().is_zero() {
                point[var] = value.clone();
                current = current.substitute(var, &value);
                break;
            }
            assert!(
                candidate < lead as i64,
                "a degree-d univariate polynomial cannot vanish at d+1 points"
            );
        }
        if current.support_vars().is_empty() {
            return point;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::ratio(p, d)
    }

    #[test]
    fn pfaffian_of_a_single_standard_form() {
        // Antidiagonal pairing on 4 coordinates: Pf = x^2 (up to sign),
        // det = Pf^2 = x^4.
        let m = Matrix::from_int_rows(&[
            &[0, 1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, -1, 0],
        ]);
        let pf = symbolic_pfaffian(&[m.clone()]);
        assert_eq!(pf.eval(&[q(2, 1)]), q(4, 1));
        let det = m.scale(&q(2, 1)).det().unwrap();
        assert_eq!(det, pf.eval(&[q(2, 1)]).pow(2));
    }

    #[test]
    fn pfaffian_detects_identically_degenerate_families() {
        // Rank-2 skew family: every combination is degenerate in size 4.
        let a = Matrix::from_int_rows(&[
            &[0, 1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 0],
            &[0, 0, 0, 0],
        ]);
        let b = Matrix::from_int_rows(&[
            &[0, 0, 1, 0],
            &[0, 0, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 0],
        ]);
        assert!(symbolic_pfaffian(&[a, b]).is_zero());
    }

    #[test]
    fn pfaffian_squares_to_determinant_on_a_two_parameter_family() {
        let a = Matrix::from_int_rows(&[
            &[0, 1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, -1, 0],
        ]);
        let b = Matrix::from_int_rows(&[
            &[0, 0, 1, 0],
            &[0, 0, 0, -1],
            &[-1, 0, 0, 0],
            &[0, 1, 0, 0],
        ]);
        let pf = symbolic_pfaffian(&[a.clone(), b.clone()]);
        for (x, y) in [(q(1, 1), q(2, 1)), (q(-3, 2), q(1, 3)), (q(0, 1), q(5, 1))] {
            let combo = a.scale(&x).add(&b.scale(&y));
            assert_eq!(combo.det().unwrap(), pf.eval(&[x.clone(), y.clone()]).pow(2));
        }
    }

    #[test]
    fn nonzero_point_extraction() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        // xy(x - y): vanishes on all axes and the diagonal.
        let p = x.mul(&y).mul(&x.sub(&y));
        let pt = nonzero_point(&p);
        assert!(!p.eval(&pt).is_zero());
    }
}
