use rug::Complex;

use crate::knot::{Generator, GroupWord};

/// 2x2 complex matrix at a fixed precision.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix2 {
    pub e: [[Complex; 2]; 2],
}

impl CMatrix2 {
    pub fn new(e11: Complex, e12: Complex, e21: Complex, e22: Complex) -> Self {
        CMatrix2 { e: [[e11, e12], [e21, e22]] }
    }

    pub fn identity(prec: u32) -> Self {
        let one = Complex::with_val(prec, 1);
        let zero = Complex::new(prec);
        CMatrix2::new(one.clone(), zero.clone(), zero, one)
    }

    pub fn prec(&self) -> u32 {
        self.e[0][0].prec().0
    }

    pub fn mul(&self, rhs: &CMatrix2) -> CMatrix2 {
        let p = self.prec();
        let a = &self.e;
        let b = &rhs.e;
        let entry = |i: usize, j: usize| {
            let mut s = Complex::with_val(p, &a[i][0] * &b[0][j]);
            s += &a[i][1] * &b[1][j];
            s
        };
        CMatrix2::new(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))
    }

    pub fn trace(&self) -> Complex {
        Complex::with_val(self.prec(), &self.e[0][0] + &self.e[1][1])
    }

    pub fn det(&self) -> Complex {
        let mut d = Complex::with_val(self.prec(), &self.e[0][0] * &self.e[1][1]);
        d -= &self.e[0][1] * &self.e[1][0];
        d
    }

    /// Adjugate; equals the inverse when `det = 1`.
    pub fn adjugate(&self) -> CMatrix2 {
        let p = self.prec();
        CMatrix2::new(
            self.e[1][1].clone(),
            Complex::with_val(p, -&self.e[0][1]),
            Complex::with_val(p, -&self.e[1][0]),
            self.e[0][0].clone(),
        )
    }

    pub fn pow(&self, k: u32) -> CMatrix2 {
        let mut acc = CMatrix2::identity(self.prec());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Largest entry modulus, as `f64`.
    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| super::cabs_f64(z))
            .fold(0.0, f64::max)
    }

    pub fn sub(&self, rhs: &CMatrix2) -> CMatrix2 {
        let p = self.prec();
        let d = |i: usize, j: usize| Complex::with_val(p, &self.e[i][j] - &rhs.e[i][j]);
        CMatrix2::new(d(0, 0), d(0, 1), d(1, 0), d(1, 1))
    }

    pub fn neg(&self) -> CMatrix2 {
        let p = self.prec();
        let d = |i: usize, j: usize| Complex::with_val(p, -&self.e[i][j]);
        CMatrix2::new(d(0, 0), d(0, 1), d(1, 0), d(1, 1))
    }
}

/// Numeric images of the two meridian generators and their inverses.
#[derive(Debug, Clone)]
pub struct GeneratorImages {
    pub s: CMatrix2,
    pub t: CMatrix2,
    s_inv: CMatrix2,
    t_inv: CMatrix2,
}

impl GeneratorImages {
    pub fn new(s: CMatrix2, t: CMatrix2) -> Self {
        GeneratorImages { s_inv: s.adjugate(), t_inv: t.adjugate(), s, t }
    }

    pub fn word(&self, w: &GroupWord) -> CMatrix2 {
        let mut acc = CMatrix2::identity(self.s.prec());
        for l in w.letters() {
            let g = match (l.gen, l.exp > 0) {
                (Generator::S, true) => &self.s,
                (Generator::S, false) => &self.s_inv,
                (Generator::T, true) => &self.t,
                (Generator::T, false) => &self.t_inv,
            };
            acc = acc.mul(g);
        }
        acc
    }
}
