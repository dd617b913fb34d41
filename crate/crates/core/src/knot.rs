//! Two-bridge knots: slopes in Schubert normal form, the relator words of
//! their two-generator presentations, and the C(2n,4) subfamily.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Slope `q/p` of a two-bridge knot in normal form: `p > 1` odd, `q` odd,
/// `gcd(p, q) = 1` and `-p < q < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    /// Validates an already-normalized slope.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let err = |reason| Err(Error::InvalidSlope { p, q, reason });
        if p <= 1 || p % 2 == 0 {
            return err("p must be odd and greater than 1");
        }
        if q % 2 == 0 {
            return err("q must be odd");
        }
        if !(-p < q && q < p) {
            return err("q must satisfy -p < q < p");
        }
        if gcd(p, q) != 1 {
            return err("p and q must be coprime");
        }
        Ok(Slope { p, q })
    }

    /// Maps any coprime pair with odd `|p| > 1` onto its normal-form
    /// representative: signs are made to give `p > 0`, then `q` is moved
    /// within its class mod `p` to the unique odd value in `(-p, p)`.
    pub fn normalized(p: i64, q: i64) -> Result<Self> {
        let (p, q) = if p < 0 { (-p, -q) } else { (p, q) };
        if p <= 1 || p % 2 == 0 {
            return Err(Error::InvalidSlope { p, q, reason: "p must be odd and greater than 1" });
        }
        if gcd(p, q) != 1 {
            return Err(Error::InvalidSlope { p, q, reason: "p and q must be coprime" });
        }
        let r = q.rem_euclid(p);
        let q = if r % 2 == 0 { r - p } else { r };
        Slope::new(p, q)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.q, self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    S,
    T,
}

/// A generator raised to `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: Generator, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter { gen, exp }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, exp: -self.exp }
    }
}

/// A word in the free group on `s, t`. Stored as written; use
/// [`GroupWord::free_reduce`] to cancel adjacent inverse pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GroupWord { letters }
    }

    pub fn empty() -> Self {
        GroupWord::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponents(&self) -> Vec<i8> {
        self.letters.iter().map(|l| l.exp).collect()
    }

    pub fn inverse(&self) -> Self {
        GroupWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// The word read backwards, exponents unchanged (`w*` in `l = w w*`).
    pub fn reversed(&self) -> Self {
        GroupWord { letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() * k as usize);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        GroupWord { letters }
    }

    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&last) if last == l.inverse() => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        GroupWord { letters: out }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let g = match l.gen {
                Generator::S => 's',
                Generator::T => 't',
            };
            if l.exp < 0 {
                write!(f, "{g}^-1")?;
            } else {
                write!(f, "{g}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form, e.g. `"t s^-1 t^-1 s"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(GroupWord::empty());
        }
        let letters = s
            .split_whitespace()
            .map(|tok| {
                let (g, rest) = tok.split_at(1);
                let gen = match g {
                    "s" => Generator::S,
                    "t" => Generator::T,
                    _ => return Err(Error::Format(format!("unknown generator in {tok:?}"))),
                };
                let exp = match rest {
                    "" | "^1" => 1,
                    "^-1" => -1,
                    _ => return Err(Error::Format(format!("bad exponent in {tok:?}"))),
                };
                Ok(Letter::new(gen, exp))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupWord { letters })
    }
}

/// The knot `C(2n,4)`: four left-handed vertical crossings and `n`
/// right-handed horizontal full twists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConwayKnot2n4 {
    n: i64,
}

impl ConwayKnot2n4 {
    pub fn new(n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidKnot("C(0,4) is not in the family".into()));
        }
        Ok(ConwayKnot2n4 { n })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn slope(&self) -> Slope {
        let (p, q) = (8 * self.n + 1, 6 * self.n + 1);
        let (p, q) = if p < 0 { (-p, -q) } else { (p, q) };
        Slope::new(p, q).expect("(6n+1)/(8n+1) is always a valid normal form")
    }

    pub fn word(&self) -> GroupWord {
        let block = c2n4_block();
        if self.n > 0 {
            block.pow(self.n as u32)
        } else {
            block.inverse().pow(self.n.unsigned_abs() as u32)
        }
    }
}

/// `t s^-1 t s^-1 t^-1 s t^-1 s`, the repeating block of the C(2n,4) relator.
pub fn c2n4_block() -> GroupWord {
    use Generator::{S, T};
    GroupWord::new(
        [(T, 1), (S, -1), (T, 1), (S, -1), (T, -1), (S, 1), (T, -1), (S, 1)]
            .into_iter()
            .map(|(g, e)| Letter::new(g, e))
            .collect(),
    )
}

/// Slope `(6n+1)/(8n+1)` of `C(2n,4)`, sign-normalized so that `p > 1`.
pub fn slope_of_c2n4(n: i64) -> Result<Slope> {
    Ok(ConwayKnot2n4::new(n)?.slope())
}

/// Exponents `eps_j = (-1)^floor(j q / p)` for `j = 1..p-1`.
pub fn schubert_exponents(slope: Slope) -> Vec<i8> {
    let (p, q) = (slope.p, slope.q);
    (1..p)
        .map(|j| if (j * q).div_euclid(p) % 2 == 0 { 1 } else { -1 })
        .collect()
}

/// `w = t^e1 s^e2 ... t^e(p-2) s^e(p-1)` for the Schubert normal form.
pub fn schubert_word(slope: Slope) -> GroupWord {
    let letters = schubert_exponents(slope)
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let gen = if i % 2 == 0 { Generator::T } else { Generator::S };
            Letter::new(gen, e)
        })
        .collect();
    GroupWord::new(letters)
}

/// `w = (t s^-1 t s^-1 t^-1 s t^-1 s)^n`; negative `n` repeats the inverse block.
pub fn c2n4_word(n: i64) -> Result<GroupWord> {
    Ok(ConwayKnot2n4::new(n)?.word())
}

/// Schubert's criterion: `p = p'` and `q' = q^(+-1) mod p`.
pub fn knots_equivalent(a: Slope, b: Slope) -> bool {
    if a.p != b.p {
        return false;
    }
    let p = a.p;
    let (qa, qb) = (a.q.rem_euclid(p), b.q.rem_euclid(p));
    qa == qb || (qa * qb).rem_euclid(p) == 1
}
