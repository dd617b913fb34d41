use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rug::{Complex, Integer};

/// Integer Laurent polynomial in `M`, stored densely from the lowest
/// nonzero exponent. Zero is the empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentInt {
    low: i64,
    coeffs: Vec<Integer>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        LaurentInt::default()
    }

    pub fn one() -> Self {
        LaurentInt::monomial(0, 1)
    }

    pub fn monomial(exp: i64, c: impl Into<Integer>) -> Self {
        LaurentInt { low: exp, coeffs: vec![c.into()] }.normalized()
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<C: Into<Integer> + Clone>(terms: &[(i64, C)]) -> Self {
        terms
            .iter()
            .fold(LaurentInt::zero(), |acc, (e, c)| acc + LaurentInt::monomial(*e, c.clone()))
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| *c == 0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| **c == 0).count();
        if lead_zeros == self.coeffs.len() {
            return LaurentInt::zero();
        }
        self.coeffs.drain(..lead_zeros);
        self.low += lead_zeros as i64;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> Integer {
        let idx = exp - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Integer::new()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Integer)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Multiplies by `M^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return LaurentInt::zero();
        }
        let low = self.low.checked_add(k).expect("M-exponent overflow");
        LaurentInt { low, coeffs: self.coeffs.clone() }
    }

    /// Substitutes `M -> 1/M`.
    pub fn reflect(&self) -> Self {
        match self.high() {
            None => LaurentInt::zero(),
            Some(h) => {
                LaurentInt { low: -h, coeffs: self.coeffs.iter().rev().cloned().collect() }
            }
        }
    }

    /// Derivative with respect to `M`.
    pub fn derivative(&self) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().map(|(i, c)| Integer::from(c * (self.low + i as i64))).collect();
        LaurentInt { low: self.low - 1, coeffs }.normalized()
    }

    pub fn scale(&self, k: &Integer) -> Self {
        LaurentInt { low: self.low, coeffs: self.coeffs.iter().map(|c| Integer::from(c * k)).collect() }
            .normalized()
    }

    /// Value at `M = 1`.
    pub fn sum(&self) -> Integer {
        self.coeffs.iter().sum()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in
    /// `Z[M, M^-1]`.
    pub fn div_exact(&self, d: &LaurentInt) -> Option<LaurentInt> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentInt::zero());
        }
        let dl = d.coeffs.len();
        if self.coeffs.len() < dl {
            return None;
        }
        let lead = d.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dl + 1;
        let mut q = vec![Integer::new(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + dl - 1];
            if *top == 0 {
                continue;
            }
            let (quot, r) = top.clone().div_rem(lead.clone());
            if r != 0 {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= Integer::from(&quot * dc);
            }
            q[i] = quot;
        }
        if rem.iter().any(|c| *c != 0) {
            return None;
        }
        Some(LaurentInt { low: self.low - d.low, coeffs: q }.normalized())
    }

    /// Evaluates at a point using a precomputed table of powers of `M`.
    pub fn eval(&self, powers: &MPowers) -> Complex {
        let mut acc = Complex::new(powers.prec());
        for (e, c) in self.terms() {
            acc += Complex::with_val(powers.prec(), powers.get(e) * c);
        }
        acc
    }
}

impl fmt::Display for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = *c < 0;
            let mag = Integer::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (e, mag == 1) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "M^{e}")?,
                (_, false) => write!(f, "{mag} M^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentInt {
    type Output = LaurentInt;

    fn add(self, rhs: &LaurentInt) -> LaurentInt {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().unwrap().max(rhs.high().unwrap());
        let mut coeffs = vec![Integer::new(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        LaurentInt { low, coeffs }.normalized()
    }
}

impl Add for LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: LaurentInt) -> LaurentInt {
        &self + &rhs
    }
}

impl AddAssign<&LaurentInt> for LaurentInt {
    fn add_assign(&mut self, rhs: &LaurentInt) {
        *self = &*self + rhs;
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        LaurentInt { low: self.low, coeffs: self.coeffs.iter().map(|c| Integer::from(-c)).collect() }
    }
}

impl Neg for LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        -&self
    }
}

impl Sub for &LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: &LaurentInt) -> LaurentInt {
        self + &(-rhs)
    }
}

impl Sub for LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: LaurentInt) -> LaurentInt {
        &self - &rhs
    }
}

impl SubAssign<&LaurentInt> for LaurentInt {
    fn sub_assign(&mut self, rhs: &LaurentInt) {
        *self = &*self - rhs;
    }
}

impl Mul for &LaurentInt {
    type Output = LaurentInt;

    fn mul(self, rhs: &LaurentInt) -> LaurentInt {
        if self.is_zero() || rhs.is_zero() {
            return LaurentInt::zero();
        }
        let low = self.low.checked_add(rhs.low).expect("M-exponent overflow");
        let mut coeffs = vec![Integer::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += Integer::from(a * b);
            }
        }
        LaurentInt { low, coeffs }.normalized()
    }
}

impl Mul for LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: LaurentInt) -> LaurentInt {
        &self * &rhs
    }
}

/// Powers `M^e` for `e` in a closed exponent range, for repeated evaluation
/// of Laurent polynomials at one point.
#[derive(Debug, Clone)]
pub struct MPowers {
    low: i64,
    table: Vec<Complex>,
}

impl MPowers {
    pub fn new(m: &Complex, low: i64, high: i64) -> Self {
        assert!(low <= 0 && high >= 0, "exponent range must contain 0");
        let prec = m.prec();
        let one = Complex::with_val(prec, 1);
        let inv = Complex::with_val(prec, &one / m);
        let mut table = vec![one.clone(); (high - low + 1) as usize];
        let zero = (-low) as usize;
        for i in 1..=(high as usize) {
            table[zero + i] = Complex::with_val(prec, &table[zero + i - 1] * m);
        }
        for i in 1..=((-low) as usize) {
            table[zero - i] = Complex::with_val(prec, &table[zero - i + 1] * &inv);
        }
        MPowers { low, table }
    }

    /// Powers for `M = e^{i alpha / 2}` built from `cos`/`sin` directly, so
    /// each entry is accurate to working precision.
    pub fn unit_circle(alpha: &rug::Float, low: i64, high: i64) -> Self {
        assert!(low <= 0 && high >= 0, "exponent range must contain 0");
        let prec = alpha.prec();
        let table = (low..=high)
            .map(|e| {
                let theta = rug::Float::with_val(prec, alpha * e) / 2u32;
                let (s, c) = theta.sin_cos(rug::Float::new(prec));
                Complex::with_val(prec, (c, s))
            })
            .collect();
        MPowers { low, table }
    }

    pub fn prec(&self) -> (u32, u32) {
        self.table[0].prec()
    }

    pub fn m(&self) -> &Complex {
        self.get(1)
    }

    pub fn get(&self, e: i64) -> &Complex {
        let idx = e - self.low;
        assert!(
            idx >= 0 && (idx as usize) < self.table.len(),
            "M^{e} outside the precomputed power range"
        );
        &self.table[idx as usize]
    }

    pub fn range(&self) -> (i64, i64) {
        (self.low, self.low + self.table.len() as i64 - 1)
    }
}
