use num_complex::Complex64;
use rug::{Complex, Float};

/// Complex polynomial `sum a_j x^j` at fixed precision.
#[derive(Debug, Clone, PartialEq)]
pub struct CPoly {
    coeffs: Vec<Complex>,
}

impl CPoly {
    /// Trailing (highest-degree) zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<Complex>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn prec(&self) -> u32 {
        self.coeffs.first().map_or(64, |c| c.prec().0)
    }

    pub fn eval(&self, x: &Complex) -> Complex {
        let mut acc = Complex::new(self.prec());
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// `(P(x), P'(x))`.
    pub fn eval_d1(&self, x: &Complex) -> (Complex, Complex) {
        let prec = self.prec();
        let mut p = Complex::new(prec);
        let mut dp = Complex::new(prec);
        for c in self.coeffs.iter().rev() {
            dp *= x;
            dp += &p;
            p *= x;
            p += c;
        }
        (p, dp)
    }

    /// `(P(x), P'(x), P''(x))`.
    pub fn eval_d2(&self, x: &Complex) -> (Complex, Complex, Complex) {
        let prec = self.prec();
        let mut p = Complex::new(prec);
        let mut dp = Complex::new(prec);
        let mut hp = Complex::new(prec);
        for c in self.coeffs.iter().rev() {
            hp *= x;
            hp += &dp;
            dp *= x;
            dp += &p;
            p *= x;
            p += c;
        }
        hp *= 2u32;
        (p, dp, hp)
    }

    /// `sum |a_j| |x|^j`, the natural size of `P(x)` for residual tests.
    pub fn eval_scale(&self, x: &Complex) -> Float {
        let prec = self.prec();
        let r = Float::with_val(prec, x.abs_ref());
        let mut acc = Float::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= &r;
            acc += Float::with_val(prec, c.abs_ref());
        }
        acc
    }

    /// `|P(x)| / sum |a_j||x|^j`.
    pub fn relative_residual(&self, x: &Complex) -> Float {
        let p = self.eval(x);
        let scale = self.eval_scale(x);
        let abs = Float::with_val(self.prec(), p.abs_ref());
        if scale.is_zero() {
            abs
        } else {
            abs / scale
        }
    }

    pub fn derivative(&self) -> CPoly {
        let prec = self.prec();
        CPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| Complex::with_val(prec, c * j as u32))
                .collect(),
        )
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|c| Complex64::new(c.real().to_f64(), c.imag().to_f64()))
            .collect()
    }
}
