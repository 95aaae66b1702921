use serde::Serialize;

use super::orbit::{EvenGraph, OrbitGraph};
use super::{Move, Origami};
use crate::cfrac::{hall_decompose, perron_term_truncated, CfExpansion, HallDecomposition};
use crate::error::{Error, Result};
use crate::num::{to_f64, Precision, Real};

/// Digits read on each side of `c_{n+1}` when evaluating `L(C, n)` in `f64`.
const PERRON_DEPTH: usize = 64;

/// `max{2M⁺² + 1, 7, p(X) + 2}`: the threshold for `x` in the Hall ray.
fn threshold(m_plus: usize, p: usize) -> f64 {
    ((2 * m_plus * m_plus + 1).max(7).max(p + 2)) as f64
}

/// `r(X) = (N / M⁻²)·max{2M⁺² + 1, 7, p(X) + 2}`.
pub fn r_value(x: &Origami) -> f64 {
    let orbit = OrbitGraph::build(x);
    let prof = orbit.profile();
    let p = orbit.cusps().p_max;
    x.n() as f64 / (prof.m_minus * prof.m_minus) as f64 * threshold(prof.m_plus, p)
}

/// `V` for odd positions of a digit word (1-based), `T` for even ones.
fn position_move(k: usize) -> Move {
    if k % 2 == 1 {
        Move::V
    } else {
        Move::T
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HallCertificate {
    /// `m_X([c_1, …, c_{n(m)}]) = M⁻` at every marked index.
    pub marked_multiplicity_ok: bool,
    /// Largest digit allowed off the marked positions.
    pub digit_bound: u64,
    pub digit_bound_ok: bool,
    /// `x0 ≥ max{6, p(X) + 1}`.
    pub x0_bound_ok: bool,
    /// Every connector has at most `#E(X)` blocks.
    pub connectors_ok: bool,
}

impl HallCertificate {
    pub fn holds(&self) -> bool {
        self.marked_multiplicity_ok && self.digit_bound_ok && self.x0_bound_ok && self.connectors_ok
    }
}

/// Digits `c_1, c_2, …` of `α = [0; c_1, c_2, …]`, built block by block.
#[derive(Clone, Debug, Serialize)]
pub struct HallRay {
    pub n_squares: usize,
    pub m_minus: usize,
    pub m_plus: usize,
    pub p_max: usize,
    pub orbit_size: usize,
    pub even_digit_max: u64,
    pub decomposition: HallDecomposition,
    pub digits: Vec<u64>,
    /// `n(1) < n(2) < …`; `c_{n(m)+1} = x0` for each of them.
    pub marked: Vec<usize>,
    /// Number of two-digit blocks in each connector.
    pub connector_blocks: Vec<usize>,
    pub certificate: HallCertificate,
}

impl HallRay {
    pub fn alpha(&self) -> CfExpansion {
        CfExpansion {
            a0: 0,
            digits: self.digits.clone(),
            terminated: false,
        }
    }

    /// `max L(C, n)` over the marked indices `n(m)` with `m` in `lo..=hi`
    /// (1-based) and every index between them.
    pub fn perron_window(&self, lo: usize, hi: usize) -> Result<f64> {
        if lo == 0 || lo > hi || hi > self.marked.len() {
            return Err(Error::InsufficientWindow(format!(
                "marked window [{lo}, {hi}] outside 1..={}",
                self.marked.len()
            )));
        }
        let (n0, n1) = (self.marked[lo - 1], self.marked[hi - 1]);
        Ok((n0..=n1)
            .map(|n| perron_term_truncated(&self.digits, n, PERRON_DEPTH))
            .fold(f64::MIN, f64::max))
    }
}

/// Builds `α` with `L_{X}(α) = N·x/M⁻²`.
///
/// Block `m` is `x0, a_1, …, a_{2m−1}, D_m, b_{2m}, …, b_1`, where
/// `D_m` is an even connector chosen so that the prefix up to the end of the
/// block acts on `X` with image `X_min`, a vertex whose vertical multiplicity
/// is `M⁻`. The marked index `n(m)` is the length after block `m`, and the
/// next digit is again `x0`.
pub fn hall_ray_alpha(
    x_origami: &Origami,
    x: &Real,
    blocks: usize,
    prec: Precision,
) -> Result<HallRay> {
    if blocks == 0 {
        return Err(Error::OutOfRange("at least one block is needed".into()));
    }
    let orbit = OrbitGraph::build(x_origami);
    let prof = orbit.profile();
    let p = orbit.cusps().p_max;
    let bound = threshold(prof.m_plus, p);
    if to_f64(x) <= bound {
        return Err(Error::OutOfRange(format!(
            "x must exceed {bound} for this origami"
        )));
    }
    let dec = hall_decompose(x, 2 * blocks, prec)?;
    let even = EvenGraph::for_hall(&orbit);
    let x_min = prof
        .vertical
        .iter()
        .position(|&m| m == prof.m_minus)
        .unwrap();

    let mut digits: Vec<u64> = Vec::with_capacity(2 * blocks * (blocks + 1 + orbit.len()));
    let mut marked = Vec::with_capacity(blocks);
    let mut connector_blocks = Vec::with_capacity(blocks);
    let mut marked_ok = true;
    // g(c_1 … c_k)^{-1}·X
    let mut y = 0usize;
    let push = |digits: &mut Vec<u64>, y: &mut usize, c: u64| {
        digits.push(c);
        *y = orbit.step_pow(*y, position_move(digits.len()).inverse(), c);
    };
    for m in 1..=blocks {
        push(&mut digits, &mut y, dec.x0 as u64);
        for &a in &dec.a[..2 * m - 1] {
            push(&mut digits, &mut y, a);
        }
        // g(B)·X_min with B = (b_{2m}, …, b_1); the last letter acts first
        let word_b: Vec<u64> = dec.b[..2 * m].iter().rev().copied().collect();
        let mut src = x_min;
        for (k, &c) in word_b.iter().enumerate().rev() {
            src = orbit.step_pow(src, position_move(k + 1), c);
        }
        let connector = even.connect(src, y)?;
        connector_blocks.push(connector.len() / 2);
        for c in connector.into_iter().chain(word_b) {
            push(&mut digits, &mut y, c);
        }
        marked.push(digits.len());
        marked_ok &= prof.vertical[y] == prof.m_minus;
    }
    digits.push(dec.x0 as u64);

    let digit_bound = even.digit_max.max(4);
    let mut at_marked = vec![false; digits.len()];
    at_marked[0] = true;
    for &n in &marked {
        at_marked[n] = true;
    }
    let digit_bound_ok = digits
        .iter()
        .zip(&at_marked)
        .all(|(&c, &mk)| mk || (1..=digit_bound).contains(&c));
    let certificate = HallCertificate {
        marked_multiplicity_ok: marked_ok,
        digit_bound,
        digit_bound_ok,
        x0_bound_ok: dec.x0 >= 6.max(p as i64 + 1),
        connectors_ok: connector_blocks.iter().all(|&i| i <= orbit.len()),
    };
    Ok(HallRay {
        n_squares: x_origami.n(),
        m_minus: prof.m_minus,
        m_plus: prof.m_plus,
        p_max: p,
        orbit_size: orbit.len(),
        even_digit_max: even.digit_max,
        decomposition: dec,
        digits,
        marked,
        connector_blocks,
        certificate,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SkewReport {
    /// `N · max_n L(C, n) / m_X(p_n/q_n)²` over the window.
    pub value: f64,
    /// `max_n L(C, n)` over the window.
    pub perron: f64,
    /// Largest convergent multiplicity seen up to the end of the window.
    pub max_multiplicity: usize,
    /// The hypothesis `L(α) > 2·M_X(α)²` holds on the window.
    pub certified: bool,
    pub window: (usize, usize),
}

/// Spectrum value of the skew product over `x` at `α = [0; c_1, c_2, …]`,
/// estimated over convergent indices `n0..=n1`.
pub fn skew_l(x: &Origami, cf: &CfExpansion, n0: usize, n1: usize) -> Result<SkewReport> {
    if cf.a0 != 0 {
        return Err(Error::OutOfRange(
            "expansion must be of a number in (0, 1)".into(),
        ));
    }
    if n0 == 0 || n0 > n1 || n1 + 1 >= cf.digits.len() {
        return Err(Error::InsufficientWindow(format!(
            "window [{n0}, {n1}] needs more than {} digits",
            cf.digits.len()
        )));
    }
    let orbit = OrbitGraph::build(x);
    let prof = orbit.profile();
    let mut y = 0usize;
    let (mut best, mut perron, mut max_m) = (f64::MIN, f64::MIN, 1usize);
    for n in 1..=n1 {
        y = orbit.step_pow(y, position_move(n).inverse(), cf.digits[n - 1]);
        let m = if n % 2 == 0 {
            prof.vertical[y]
        } else {
            prof.horizontal[y]
        };
        max_m = max_m.max(m);
        if n >= n0 {
            let l = perron_term_truncated(&cf.digits, n, PERRON_DEPTH);
            perron = perron.max(l);
            best = best.max(l / (m * m) as f64);
        }
    }
    Ok(SkewReport {
        value: x.n() as f64 * best,
        perron,
        max_multiplicity: max_m,
        certified: perron > 2.0 * (max_m * max_m) as f64,
        window: (n0, n1),
    })
}
