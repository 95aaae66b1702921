//! Continued fractions, convergents, the `T`/`V` word of a direction and
//! decompositions into sums of expansions with digits at most 4.

use dashu_int::IBig;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{abs, to_f64, Precision, Real};

/// `a_0 + [a_1, a_2, …]`, finite prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfExpansion {
    pub a0: i64,
    pub digits: Vec<u64>,
    /// The Gauss map reached 0: the input is rational and `digits` is complete.
    pub terminated: bool,
}

/// `p_n / q_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub n: usize,
    pub p: IBig,
    pub q: IBig,
}

fn floor_int(x: &Real) -> IBig {
    x.floor().to_int().value()
}

/// Gauss map digits of `x`, up to `n` of them.
///
/// Each step multiplies the rounding error by roughly `q_k²`. When the
/// fractional part falls below that error the expansion is either flagged
/// as terminated (if `q_k² < 2^{bits/2}`, where a rational input is the only
/// plausible cause) or refused with `PrecisionExhausted`.
pub fn expand(x: &Real, n: usize, prec: Precision) -> Result<CfExpansion> {
    let x = x.clone().with_precision(prec.bits()).value();
    let a0 = floor_int(&x);
    let a0: i64 = a0
        .try_into()
        .map_err(|_| Error::OutOfRange("integer part exceeds 64 bits".into()))?;
    let mut frac = x - prec.int(a0);
    let mut digits = Vec::with_capacity(n);
    let (mut q0, mut q1) = (0f64, 1f64);
    let eps = 2f64.powi(-(prec.bits() as i32) + 8);
    let plausible_rational = 2f64.powi(prec.bits() as i32 / 2);
    while digits.len() < n {
        let err = eps * q1 * q1;
        if err >= 1e-3 {
            return Err(Error::PrecisionExhausted {
                digits: digits.len(),
            });
        }
        if to_f64(&abs(&frac)) <= err {
            if q1 * q1 < plausible_rational {
                return Ok(CfExpansion {
                    a0,
                    digits,
                    terminated: true,
                });
            }
            return Err(Error::PrecisionExhausted {
                digits: digits.len(),
            });
        }
        let y = prec.one() / &frac;
        let mut a = floor_int(&y);
        // y just below an integer is that integer up to the error on frac
        let yf = to_f64(&y);
        if to_f64(&(Real::from(a.clone() + IBig::ONE) - &y)) <= err * yf * yf {
            a += IBig::ONE;
        }
        let a: u64 = a.try_into().map_err(|_| Error::PrecisionExhausted {
            digits: digits.len(),
        })?;
        frac = y - Real::from(a).with_precision(prec.bits()).value();
        (q0, q1) = (q1, a as f64 * q1 + q0);
        digits.push(a);
    }
    Ok(CfExpansion {
        a0,
        digits,
        terminated: false,
    })
}

impl CfExpansion {
    pub fn new(a0: i64, digits: Vec<u64>) -> Result<Self> {
        if digits.contains(&0) {
            return Err(Error::OutOfRange("digits must be positive".into()));
        }
        Ok(CfExpansion {
            a0,
            digits,
            terminated: false,
        })
    }

    /// `p_0/q_0, …, p_N/q_N` by the usual recurrence.
    pub fn convergents(&self) -> Vec<Convergent> {
        let (mut p0, mut q0) = (IBig::ONE, IBig::ZERO);
        let (mut p1, mut q1) = (IBig::from(self.a0), IBig::ONE);
        let mut out = vec![Convergent {
            n: 0,
            p: p1.clone(),
            q: q1.clone(),
        }];
        for (k, &a) in self.digits.iter().enumerate() {
            let a = IBig::from(a);
            let p2 = &a * &p1 + &p0;
            let q2 = &a * &q1 + &q0;
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
            out.push(Convergent {
                n: k + 1,
                p: p1.clone(),
                q: q1.clone(),
            });
        }
        out
    }

    /// Value of the finite expansion.
    pub fn value(&self, prec: Precision) -> Real {
        let c = self.convergents().pop().unwrap();
        Real::from(c.p).with_precision(prec.bits()).value()
            / Real::from(c.q).with_precision(prec.bits()).value()
    }
}

/// `[c_1, c_2, …]` in `f64`.
fn cf_value(digits: impl DoubleEndedIterator<Item = u64>) -> f64 {
    digits.rev().fold(0.0, |acc, a| 1.0 / (a as f64 + acc))
}

/// `L(A, n) = [a_n, …, a_1] + a_{n+1} + [a_{n+2}, …]` over the available digits.
pub fn perron_term(cf: &CfExpansion, n: usize) -> f64 {
    let a = &cf.digits;
    // a[k-1] is a_k
    let back = cf_value(a[..n].iter().rev().copied());
    let mid = a[n] as f64;
    let fwd = cf_value(a[n + 1..].iter().copied());
    back + mid + fwd
}

/// `L(A, n)` read from at most `depth` digits on each side of `a_{n+1}`.
/// With digits at least 1 the dropped tails move each side by less than
/// `φ^{-2·depth}`.
pub fn perron_term_truncated(digits: &[u64], n: usize, depth: usize) -> f64 {
    let back = cf_value(digits[n.saturating_sub(depth)..n].iter().rev().copied());
    let end = (n + 1 + depth).min(digits.len());
    let fwd = cf_value(digits[n + 1..end].iter().copied());
    back + digits[n] as f64 + fwd
}

/// `max_{n0 ≤ n ≤ n1} L(A, n)`. Needs digits up to `a_{n1+1}` and a tail
/// after it long enough for the forward part to settle.
pub fn perron_l(cf: &CfExpansion, n0: usize, n1: usize) -> Result<f64> {
    if n1 + 1 >= cf.digits.len() || n0 > n1 {
        return Err(Error::InsufficientWindow(format!(
            "window [{n0}, {n1}] needs more than {} digits",
            cf.digits.len()
        )));
    }
    Ok((n0..=n1)
        .map(|n| perron_term(cf, n))
        .fold(f64::MIN, f64::max))
}

/// Generators `T = [[1,1],[0,1]]` and `V = [[1,0],[1,1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    T,
    V,
}

/// 2×2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: IBig,
    pub b: IBig,
    pub c: IBig,
    pub d: IBig,
}

impl Mat2 {
    pub fn identity() -> Self {
        Mat2 {
            a: IBig::ONE,
            b: IBig::ZERO,
            c: IBig::ZERO,
            d: IBig::ONE,
        }
    }

    pub fn gen_power(g: Gen, k: u64) -> Self {
        let k = IBig::from(k);
        match g {
            Gen::T => Mat2 {
                a: IBig::ONE,
                b: k,
                c: IBig::ZERO,
                d: IBig::ONE,
            },
            Gen::V => Mat2 {
                a: IBig::ONE,
                b: IBig::ZERO,
                c: k,
                d: IBig::ONE,
            },
        }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn det(&self) -> IBig {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Homographic action on a projective co-slope `p/q` (`q = 0` is `∞`).
    pub fn act(&self, p: &IBig, q: &IBig) -> (IBig, IBig) {
        (&self.a * p + &self.b * q, &self.c * p + &self.d * q)
    }

    pub fn to_rows(&self) -> [[String; 2]; 2] {
        [
            [self.a.to_string(), self.b.to_string()],
            [self.c.to_string(), self.d.to_string()],
        ]
    }
}

/// A word `T^{a_0} V^{a_1} T^{a_2} …` together with the co-slope it acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussWord {
    /// Blocks in left-to-right order; zero exponents are kept.
    pub blocks: Vec<(Gen, u64)>,
    /// `0` for even `n`, `∞` for odd `n`.
    pub base_infinite: bool,
}

impl GaussWord {
    pub fn matrix(&self) -> Mat2 {
        self.blocks
            .iter()
            .fold(Mat2::identity(), |m, &(g, k)| m.mul(&Mat2::gen_power(g, k)))
    }

    /// The co-slope `p/q` reached, reduced with `q ≥ 0`.
    pub fn coslope(&self) -> (IBig, IBig) {
        let (p0, q0) = if self.base_infinite {
            (IBig::ONE, IBig::ZERO)
        } else {
            (IBig::ZERO, IBig::ONE)
        };
        let (p, q) = self.matrix().act(&p0, &q0);
        if q < IBig::ZERO {
            (-p, -q)
        } else {
            (p, q)
        }
    }
}

/// The word whose action sends `0` (even `n`) or `∞` (odd `n`) to `p_n/q_n`.
/// `a0` must be non-negative.
pub fn gauss_word(cf: &CfExpansion, n: usize) -> Result<GaussWord> {
    if n > cf.digits.len() || cf.a0 < 0 {
        return Err(Error::OutOfRange(format!(
            "word of index {n} for a0 = {} with {} digits",
            cf.a0,
            cf.digits.len()
        )));
    }
    let mut blocks = vec![(Gen::T, cf.a0 as u64)];
    for k in 1..=n {
        let g = if k % 2 == 1 { Gen::V } else { Gen::T };
        blocks.push((g, cf.digits[k - 1]));
    }
    Ok(GaussWord {
        blocks,
        base_infinite: n % 2 == 1,
    })
}

/// `|qα − p| < 1/(2q)`, the condition forcing `p/q` to be a convergent.
pub fn gauss_dirichlet_filter(alpha: &Real, p: &IBig, q: &IBig) -> bool {
    if *q < IBig::ONE {
        return false;
    }
    let prec = alpha.precision().max(64);
    let qr = Real::from(q.clone()).with_precision(prec).value();
    let pr = Real::from(p.clone()).with_precision(prec).value();
    let lhs = abs(&(qr.clone() * alpha - pr)) * Real::from(2).with_precision(prec).value() * &qr;
    lhs < Real::ONE
}

/// `x = [a_1, a_2, …] + x0 + [b_1, b_2, …]` with every digit in `1..=4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallDecomposition {
    pub x0: i64,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    /// Digits per side found by subdivision; later ones are a fixed filler.
    pub certified_digits: usize,
}

/// Digit appended once the working precision no longer separates cylinders.
const HALL_FILLER: u64 = 2;

impl HallDecomposition {
    pub fn value(&self, prec: Precision) -> Real {
        let f = |d: &[u64]| {
            let cf = CfExpansion {
                a0: 0,
                digits: d.to_vec(),
                terminated: false,
            };
            cf.value(prec)
        };
        f(&self.a) + prec.int(self.x0) + f(&self.b)
    }
}

/// `[0; c_1, …, c_k + t]`.
fn cylinder_point(word: &[u64], t: &Real, prec: Precision) -> Real {
    let mut v = Real::from(*word.last().unwrap())
        .with_precision(prec.bits())
        .value()
        + t;
    for &c in word[..word.len() - 1].iter().rev() {
        v = Real::from(c).with_precision(prec.bits()).value() + prec.one() / v;
    }
    prec.one() / v
}

struct HallSearch {
    prec: Precision,
    lo: Real,
    hi: Real,
    target: Real,
    width_floor: Real,
}

impl HallSearch {
    /// Hull of the cylinder of expansions starting with `word`.
    fn hull(&self, word: &[u64]) -> (Real, Real) {
        if word.is_empty() {
            return (self.lo.clone(), self.hi.clone());
        }
        let x = cylinder_point(word, &self.lo, self.prec);
        let y = cylinder_point(word, &self.hi, self.prec);
        if x < y {
            (x, y)
        } else {
            (y, x)
        }
    }

    fn dfs(&self, a: &mut Vec<u64>, b: &mut Vec<u64>, depth: usize) -> bool {
        let (a_lo, a_hi) = self.hull(a);
        let (b_lo, b_hi) = self.hull(b);
        if a_lo.clone() + &b_lo > self.target || a_hi.clone() + &b_hi < self.target {
            return false;
        }
        let wa = a_hi - a_lo;
        let wb = b_hi - b_lo;
        if (a.len() >= depth && b.len() >= depth)
            || (wa < self.width_floor && wb < self.width_floor)
        {
            return true;
        }
        let split_a = if a.len() >= depth {
            false
        } else if b.len() >= depth {
            true
        } else {
            wa >= wb
        };
        for c in 1..=4 {
            if split_a {
                a.push(c)
            } else {
                b.push(c)
            }
            if self.dfs(a, b, depth) {
                return true;
            }
            if split_a {
                a.pop()
            } else {
                b.pop()
            };
        }
        false
    }
}

/// Splits `x ≥ 4` as an integer plus two expansions with digits in `1..=4`,
/// each side carrying `digits` digits.
///
/// The sum of two such expansions fills `[√2 − 1, 4√2 − 4]`, an interval
/// longer than 1, so `x0 = ⌊x − (√2 − 1)⌋` always works. The two cylinders are
/// refined by depth-first subdivision of the wider one.
pub fn hall_decompose(x: &Real, digits: usize, prec: Precision) -> Result<HallDecomposition> {
    let wp = Precision(prec.bits() + 32);
    let x = x.clone().with_precision(wp.bits()).value();
    if x < wp.int(4) {
        return Err(Error::OutOfRange("decomposition needs x >= 4".into()));
    }
    let s2 = wp.sqrt_int(2);
    // [0; 4, 1, 4, 1, …] and [0; 1, 4, 1, 4, …]
    let lo = (s2.clone() - wp.one()) / wp.int(2);
    let hi = (s2 - wp.one()) * wp.int(2);
    let x0i = floor_int(&(x.clone() - lo.clone() * wp.int(2)));
    let x0: i64 = x0i
        .try_into()
        .map_err(|_| Error::OutOfRange("integer part exceeds 64 bits".into()))?;
    let target = x - wp.int(x0);
    let width_floor = Real::from_parts(IBig::ONE, -(prec.bits() as isize))
        .with_precision(wp.bits())
        .value();
    let search = HallSearch {
        prec: wp,
        lo,
        hi,
        target,
        width_floor,
    };
    let (mut a, mut b) = (Vec::new(), Vec::new());
    if !search.dfs(&mut a, &mut b, digits) {
        return Err(Error::OutOfRange("no pair of cylinders covers x".into()));
    }
    let certified_digits = a.len().min(b.len());
    a.resize(digits, HALL_FILLER);
    b.resize(digits, HALL_FILLER);
    Ok(HallDecomposition {
        x0,
        a,
        b,
        certified_digits,
    })
}
