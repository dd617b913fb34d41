//! The Riley-Mednykh polynomials `P_2n(x, M)` of `C(2n,4)`, built by the
//! three-term recursion in `Q`, and the symbolic trace computation that
//! reproduces them independently.

use super::bivar::BivarPoly;
use super::laurent::LaurentInt;
use super::matrix::{MeridianPair, RationalFunction, SymMatrix2};
use crate::error::{Error, Result};
use crate::knot::c2n4_block;

fn bp(rows: &[&[(i64, i64)]]) -> BivarPoly {
    BivarPoly::new(rows.iter().map(|r| LaurentInt::from_terms(r)).collect())
}

/// `Q = tr(U) M^6`, the recursion multiplier.
pub fn q_poly() -> BivarPoly {
    bp(&[
        &[(6, 2)],
        &[(12, 1), (10, -2), (8, 3), (6, -4), (4, 3), (2, -2), (0, 1)],
        &[(10, 3), (8, -4), (6, 6), (4, -4), (2, 3)],
        &[(8, 3), (6, -2), (4, 3)],
        &[(6, 1)],
    ])
}

/// Initial condition `P_2`.
pub fn p2_poly() -> BivarPoly {
    bp(&[
        &[(6, 1)],
        &[(12, 1), (10, -1), (8, 2), (6, -2), (4, 2), (2, -1), (0, 1)],
        &[(10, 3), (8, -2), (6, 5), (4, -2), (2, 3)],
        &[(8, 3), (6, -1), (4, 3)],
        &[(6, 1)],
    ])
}

/// Initial condition `P_-2`.
pub fn pm2_poly() -> BivarPoly {
    bp(&[
        &[(4, 1)],
        &[(8, -1), (6, 1), (4, -2), (2, 1), (0, -1)],
        &[(6, -2), (4, 1), (2, -2)],
        &[(4, -1)],
    ])
}

/// `P_0`: `1` on the positive side of the recursion, `M^-2` on the negative.
pub fn p0_poly(positive_side: bool) -> BivarPoly {
    if positive_side {
        BivarPoly::one()
    } else {
        BivarPoly::monomial_m(-2, 1)
    }
}

/// Largest `|n|` accepted; keeps every `M`-exponent far inside `i64`.
pub const MAX_TWISTS: i64 = 1 << 40;

/// `P_2n` from the recursion `P_2n = Q P_2(n-+1) - M^12 P_2(n-+2)`.
pub fn rm_c2n4(n: i64) -> Result<BivarPoly> {
    if n == 0 {
        return Err(Error::InvalidIndex);
    }
    if n.abs() > MAX_TWISTS {
        return Err(Error::ExponentOverflow);
    }
    let q = q_poly();
    let m12 = LaurentInt::monomial(12, 1);
    let (mut prev, mut cur) = if n > 0 { (p0_poly(true), p2_poly()) } else { (p0_poly(false), pm2_poly()) };
    for _ in 1..n.abs() {
        let next = &(&q * &cur) - &prev.scale(&m12);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Exponent `c` with `M^(2c) P_2n(x, 1/M) = P_2n(x, M)`.
pub fn reciprocal_center(n: i64) -> i64 {
    if n > 0 {
        6 * n
    } else {
        -6 * n - 2
    }
}

/// Number of roots of `P_2n(., M)` for generic `M`.
pub fn expected_degree(n: i64) -> usize {
    if n > 0 {
        (4 * n) as usize
    } else {
        (-(4 * n + 1)) as usize
    }
}

/// Exponent `e` with `M^e tr(S W c) / tr(S c) = P_2n`.
pub fn trace_normalization(n: i64) -> i64 {
    if n > 0 {
        6 * n
    } else {
        -6 * n - 2
    }
}

/// `U = T S^-1 T S^-1 T^-1 S T^-1 S`.
pub fn u_matrix() -> SymMatrix2 {
    MeridianPair::new().word(&c2n4_block())
}

/// `r^2 = -1 + 2M^2 - M^4 - M^2 x`, the radicand in the involution `c`.
pub fn involution_radicand() -> BivarPoly {
    bp(&[&[(0, -1), (2, 2), (4, -1)], &[(2, -1)]])
}

/// `tr(S W c) / tr(S c)` with `W = U^n`, computed symbolically.
///
/// With `S` upper triangular, `tr(Sc) = r/M` and for any `A`,
/// `tr(Ac)/tr(Sc) = A_12 - A_21 M^2 / r^2`, so the radical in `c` never
/// appears and the result is a rational function with denominator `r^2`.
pub fn trace_ratio_c2n4(n: i64) -> RationalFunction {
    let mp = MeridianPair::new();
    let u = mp.word(&c2n4_block());
    let w = if n >= 0 { u.pow(n as u32) } else { u.adjugate().pow(n.unsigned_abs() as u32) };
    trace_ratio_of(&(&mp.s * &w))
}

/// `tr(A c) / tr(S c)` for an arbitrary matrix `A`.
pub fn trace_ratio_of(a: &SymMatrix2) -> RationalFunction {
    let r2 = involution_radicand();
    let num = &(&a.e[0][1] * &r2) - &a.e[1][0].shift_m(2);
    RationalFunction::new(num, r2).reduced()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Integer;

    #[test]
    fn q_constant_term_and_value() {
        let q = q_poly();
        assert_eq!(q.coeff(0), LaurentInt::monomial(6, 2));
        let at_one: Vec<Integer> = q.coeffs().iter().map(|c| c.sum()).collect();
        assert_eq!(at_one[0], 2);
        // M^12 Q(x, 1/M) = Q(x, M)
        assert_eq!(q.reflect_m().shift_m(12), q);
    }

    #[test]
    fn low_order_members() {
        let p1 = rm_c2n4(1).unwrap();
        assert_eq!(p1.coeff(4), LaurentInt::monomial(6, 1));
        assert_eq!(p1.x_degree(), Some(4));
        let pm1 = rm_c2n4(-1).unwrap();
        assert_eq!(pm1.x_degree(), Some(3));
        assert_eq!(pm1.coeff(0), LaurentInt::monomial(4, 1));
        let p2 = rm_c2n4(2).unwrap();
        assert_eq!(p2, &(&q_poly() * &p2_poly()) - &BivarPoly::monomial_m(12, 1));
        assert_eq!(p2.x_degree(), Some(8));
        assert_eq!(rm_c2n4(0), Err(Error::InvalidIndex));
    }

    #[test]
    fn negative_recursion_uses_shifted_p0() {
        let pm2 = rm_c2n4(-2).unwrap();
        assert_eq!(pm2, &(&q_poly() * &pm2_poly()) - &BivarPoly::monomial_m(10, 1));
        assert_eq!(pm2.x_degree(), Some(7));
    }

    #[test]
    fn trace_of_u_is_q_over_m6() {
        let u = u_matrix();
        assert_eq!(u.trace(), q_poly().shift_m(-6));
        assert_eq!(u.adjugate().trace(), q_poly().shift_m(-6));
        assert_eq!(u.det(), BivarPoly::one());
    }

    #[test]
    fn trace_ratio_small_cases() {
        assert_eq!(trace_ratio_c2n4(0).num, BivarPoly::one());
        let r1 = trace_ratio_c2n4(1);
        assert!(r1.is_polynomial());
        assert_eq!(r1.num, p2_poly().shift_m(-6));
        let rm1 = trace_ratio_c2n4(-1);
        assert!(rm1.is_polynomial());
        assert_eq!(rm1.num, pm2_poly().shift_m(-4));
    }

    #[test]
    fn degree_law() {
        for n in (-6..=6).filter(|&n| n != 0) {
            assert_eq!(rm_c2n4(n).unwrap().x_degree(), Some(expected_degree(n)), "n = {n}");
        }
    }
}
