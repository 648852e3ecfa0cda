//! Truncated power series in one variable `t` over the rationals.
//!
//! A series is a dense coefficient vector for `t^0 .. t^N`; every arithmetic
//! operation tracks the precision `N` of the result pessimistically (minimum
//! of the operands). Exact rational coefficients keep order computations
//! honest: a vanishing leading term is a genuine cancellation, never a
//! rounding artifact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    /// Coefficient of `t^i` at index `i`; length is `precision + 1`.
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(precision: u64) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); precision as usize + 1],
        }
    }

    /// `c * t^k`, truncated at `precision`.
    pub fn monomial(c: BigRational, k: u64, precision: u64) -> Self {
        let mut s = TruncatedSeries::zero(precision);
        if k <= precision {
            s.coeffs[k as usize] = c;
        }
        s
    }

    /// Builds `sum c_i t^{k_i}` from integer-coefficient terms.
    pub fn from_terms(terms: &[(i64, u64)], precision: u64) -> Self {
        let mut s = TruncatedSeries::zero(precision);
        for &(c, k) in terms {
            if k <= precision {
                s.coeffs[k as usize] += BigRational::from_integer(BigInt::from(c));
            }
        }
        s
    }

    pub fn precision(&self) -> u64 {
        self.coeffs.len() as u64 - 1
    }

    /// Coefficient of `t^i`; zero beyond the precision is *not* implied,
    /// so asking for it is a caller bug.
    pub fn coeff(&self, i: u64) -> &BigRational {
        &self.coeffs[i as usize]
    }

    /// Order of the series: the exponent of the first nonzero coefficient.
    /// `None` means no nonzero coefficient up to the precision, which a
    /// caller must treat as "zero or beyond precision", not as zero.
    pub fn order(&self) -> Option<u64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| i as u64)
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.order().is_none()
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let prec = self.precision().min(other.precision()) as usize;
        TruncatedSeries {
            coeffs: (0..=prec)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
        }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let prec = self.precision().min(other.precision()) as usize;
        TruncatedSeries {
            coeffs: (0..=prec)
                .map(|i| &self.coeffs[i] - &other.coeffs[i])
                .collect(),
        }
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_in_place(&mut self, c: &BigRational) {
        for x in &mut self.coeffs {
            if !x.is_zero() {
                *x *= c;
            }
        }
    }

    /// Greatest common divisor of the coefficients when all of them are
    /// integers; `None` for the zero series or any nontrivial denominator.
    pub fn integer_content(&self) -> Option<BigInt> {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() {
                return None;
            }
            g = g.gcd(c.numer());
            if g.is_one() {
                return Some(g);
            }
        }
        if g.is_zero() {
            None
        } else {
            Some(g)
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let prec = self.precision().min(other.precision()) as usize;
        let mut coeffs = vec![BigRational::zero(); prec + 1];
        for (i, ci) in self.coeffs.iter().enumerate().take(prec + 1) {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in other.coeffs.iter().enumerate().take(prec + 1 - i) {
                if !cj.is_zero() {
                    coeffs[i + j] += ci * cj;
                }
            }
        }
        TruncatedSeries { coeffs }
    }

    /// In-place `self -= c * t^k * other`, the elimination workhorse;
    /// avoids materializing the shifted and scaled intermediate.
    pub fn sub_scaled_shift(&mut self, other: &TruncatedSeries, c: &BigRational, k: u64) {
        let len = self.coeffs.len();
        for (i, oc) in other.coeffs.iter().enumerate() {
            let target = i + k as usize;
            if target >= len {
                break;
            }
            if !oc.is_zero() {
                self.coeffs[target] -= oc * c;
            }
        }
    }

    /// `t^k * self`; the result knows `k` more coefficients.
    pub fn shift(&self, k: u64) -> TruncatedSeries {
        let mut coeffs = vec![BigRational::zero(); k as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// `d/dt`; one coefficient of precision is lost.
    pub fn derivative(&self) -> TruncatedSeries {
        if self.coeffs.len() == 1 {
            return TruncatedSeries::zero(0);
        }
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        }
    }

    /// `t * d/dt`, which keeps the precision (coefficient `i` scales by `i`).
    pub fn t_derivative(&self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        }
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, e: u64) -> TruncatedSeries {
        let mut acc = TruncatedSeries::monomial(BigRational::one(), 0, self.precision());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(terms: &[(i64, u64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(terms, 20)
    }

    #[test]
    fn orders() {
        assert_eq!(s(&[(1, 3), (2, 5)]).order(), Some(3));
        assert_eq!(s(&[]).order(), None);
        assert_eq!(TruncatedSeries::zero(4).order(), None);
        // cancellation is exact
        let d = s(&[(1, 2), (7, 9)]).sub(&s(&[(1, 2)]));
        assert_eq!(d.order(), Some(9));
    }

    #[test]
    fn product_orders_add() {
        let a = s(&[(2, 4)]);
        let b = s(&[(3, 6), (1, 7)]);
        let p = a.mul(&b);
        assert_eq!(p.order(), Some(10));
        assert_eq!(p.coeff(10), &BigRational::from_integer(BigInt::from(6)));
        assert_eq!(p.coeff(11), &BigRational::from_integer(BigInt::from(2)));
    }

    #[test]
    fn derivative_and_shift() {
        let a = s(&[(1, 4)]);
        assert_eq!(a.derivative().order(), Some(3));
        assert_eq!(
            a.derivative().coeff(3),
            &BigRational::from_integer(BigInt::from(4))
        );
        assert_eq!(a.t_derivative().order(), Some(4));
        assert_eq!(a.shift(3).order(), Some(7));
        assert_eq!(a.shift(3).precision(), 23);
        assert_eq!(a.derivative().precision(), 19);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = s(&[(1, 2), (1, 3)]);
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
        assert_eq!(a.pow(0).order(), Some(0));
    }

    #[test]
    fn fused_elimination_step_matches_composition() {
        let mut a = s(&[(5, 4), (3, 7)]);
        let b = s(&[(1, 2), (2, 5)]);
        let c = BigRational::new(BigInt::from(5), BigInt::from(2));
        let expected = a.sub(&b.shift(2).scale(&c));
        a.sub_scaled_shift(&b, &c, 2);
        assert_eq!(a, expected);
    }

    #[test]
    fn truncation_is_pessimistic() {
        let a = TruncatedSeries::from_terms(&[(1, 1)], 5);
        let b = TruncatedSeries::from_terms(&[(1, 1)], 9);
        assert_eq!(a.mul(&b).precision(), 5);
        assert_eq!(a.add(&b).precision(), 5);
    }
}
