//! Finite-time inequalities linking `w`, distortion and matrix norms.

use serde::Serialize;

use super::{rv_orbit, OrbitStep, PeriodicOrbit};
use crate::error::{Error, Result};
use crate::iet::Iet;
use crate::num::{abs, min_of, to_f64};
use crate::rauzy::{
    distortion, minimal_positive_prefix, n_gamma_periodic, Arrow, CocycleMatrix, RauzyPath,
};
use crate::zippered::ZipperedDatum;

// slack for rounding in the f64 comparisons
const REL_EPS: f64 = 1e-12;

/// Outcome of one inequality over many test points.
#[derive(Clone, Debug, Default, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub checked: usize,
    pub violations: usize,
    /// Smallest `rhs / lhs` seen (at least 1 when the inequality holds).
    pub min_ratio: f64,
}

impl InequalityReport {
    pub fn new(name: &str) -> Self {
        InequalityReport {
            name: name.to_string(),
            checked: 0,
            violations: 0,
            min_ratio: f64::INFINITY,
        }
    }

    /// Records `lhs ≤ rhs`.
    fn record(&mut self, lhs: f64, rhs: f64) {
        self.checked += 1;
        let ratio = rhs / lhs;
        if ratio < self.min_ratio {
            self.min_ratio = ratio;
        }
        if lhs > rhs * (1.0 + REL_EPS) {
            self.violations += 1;
        }
    }

    pub fn merge(&mut self, other: &InequalityReport) {
        self.checked += other.checked;
        self.violations += other.violations;
        self.min_ratio = self.min_ratio.min(other.min_ratio);
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// A forward renormalized orbit kept in memory for windowed checks.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub steps: Vec<OrbitStep>,
}

impl Orbit {
    /// Runs `r_max` steps. A connection before `r_max` is an error.
    pub fn run(zd: &ZipperedDatum, r_max: usize) -> Result<Self> {
        let (steps, err) = rv_orbit(zd, r_max);
        match err {
            Some(e) => Err(e),
            None => Ok(Orbit { steps }),
        }
    }

    pub fn d(&self) -> usize {
        self.steps[0].datum.d()
    }

    /// Number of arrows.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn arrow(&self, i: usize) -> &Arrow {
        self.steps[i]
            .arrow
            .as_ref()
            .expect("interior step has an arrow")
    }

    /// The path from time `i` to time `j`.
    pub fn path(&self, i: usize, j: usize) -> RauzyPath {
        RauzyPath {
            start: self.steps[i].datum.pi.clone(),
            arrows: (i..j).map(|k| self.arrow(k).clone()).collect(),
        }
    }

    /// Least `j > i` with the path from `i` to `j` positive, and its matrix.
    fn positive_after(&self, i: usize) -> Option<(usize, CocycleMatrix)> {
        let mut m = CocycleMatrix::identity(self.d());
        for j in i..self.len() {
            m.left_mul_arrow(self.arrow(j));
            if m.is_positive() {
                return Some((j + 1, m));
            }
        }
        None
    }

    /// Greatest `i < j` with the path from `i` to `j` positive, and its matrix.
    fn positive_before(&self, j: usize) -> Option<(usize, CocycleMatrix)> {
        let mut m = CocycleMatrix::identity(self.d());
        for i in (0..j).rev() {
            m.right_mul_arrow(self.arrow(i));
            if m.is_positive() {
                return Some((i, m));
            }
        }
        None
    }

    /// Greatest `i ≤ r` such that the path from `i` to `r` splits into `d`
    /// complete paths.
    pub fn strongly_complete_start(&self, r: usize) -> Option<usize> {
        let d = self.d();
        let mut end = r;
        for _ in 0..d {
            let mut won = vec![false; d];
            let mut count = 0;
            let mut i = end;
            while count < d {
                if i == 0 {
                    return None;
                }
                i -= 1;
                let w = self.arrow(i).winner.0;
                if !won[w] {
                    won[w] = true;
                    count += 1;
                }
            }
            end = i;
        }
        Some(end)
    }

    /// `m(π,λ,τ)` at time `r`: the least `w` over the minimal strongly
    /// complete backward window.
    pub fn window_min_w(&self, r: usize) -> Option<f64> {
        let i = self.strongly_complete_start(r)?;
        min_of(self.steps[i..=r].iter().map(|s| &s.w)).map(|m| to_f64(&m))
    }
}

fn factorial(d: usize) -> f64 {
    (1..=d).map(|k| k as f64).product()
}

/// `w_r ≥ (2/d) / (‖B_1‖‖B_2‖‖B_3‖‖B_4‖)` where `B_1 ∗ B_2` are the two
/// minimal positive paths ending at `r` and `B_3 ∗ B_4` the two starting there.
pub fn check_w_lower_bound(orbit: &Orbit) -> InequalityReport {
    let mut rep = InequalityReport::new("w lower bound from four positive paths");
    let d = orbit.d() as f64;
    for r in 0..=orbit.len() {
        let Some((s2, b2)) = orbit.positive_before(r) else {
            continue;
        };
        let Some((_, b1)) = orbit.positive_before(s2) else {
            continue;
        };
        let Some((e3, b3)) = orbit.positive_after(r) else {
            continue;
        };
        let Some((_, b4)) = orbit.positive_after(e3) else {
            continue;
        };
        let prod = b1.norm_f64() * b2.norm_f64() * b3.norm_f64() * b4.norm_f64();
        let bound = 2.0 / d / prod;
        rep.record(bound, to_f64(&orbit.steps[r].w));
    }
    rep
}

/// `Δ(T^{(r)}) ≤ d! / m^{d−1}` at every time with a strongly complete
/// backward window.
pub fn check_distortion_bound(orbit: &Orbit) -> InequalityReport {
    let mut rep = InequalityReport::new("distortion bound from window minimum of w");
    let d = orbit.d();
    for r in 0..=orbit.len() {
        let Some(m) = orbit.window_min_w(r) else {
            continue;
        };
        let delta = to_f64(&distortion(&orbit.steps[r].datum.iet()));
        rep.record(delta, factorial(d) / m.powi(d as i32 - 1));
    }
    rep
}

/// Every cord has area at least the window minimum of `w`.
pub fn check_cords(orbit: &Orbit) -> InequalityReport {
    let mut rep = InequalityReport::new("cord areas above window minimum of w");
    for r in 0..=orbit.len() {
        let Some(m) = orbit.window_min_w(r) else {
            continue;
        };
        let zd = &orbit.steps[r].datum;
        let area = match zd.area() {
            Ok(a) => to_f64(&a),
            Err(_) => continue,
        };
        let least = zd
            .cords()
            .iter()
            .map(|c| to_f64(&c.area()) / area)
            .fold(f64::INFINITY, f64::min);
        rep.record(m, least);
    }
    rep
}

/// `Δ(T) ≤ ‖P(T)‖` for the minimal positive initial path of `t`.
pub fn check_distortion_prefix(t: &Iet, max_steps: usize) -> Result<InequalityReport> {
    let mut rep = InequalityReport::new("distortion below first positive matrix");
    let (path, _) = minimal_positive_prefix(t, max_steps)?;
    rep.record(to_f64(&distortion(t)), path.matrix().norm_f64());
    Ok(rep)
}

/// Heights are positive and `‖τ‖_∞ ≤ ‖h‖_∞`.
pub fn check_heights_bound(zd: &ZipperedDatum) -> Result<InequalityReport> {
    let mut rep = InequalityReport::new("suspension bounded by heights");
    let h = zd.heights()?;
    if h.iter().any(|x| !crate::num::is_positive(x)) {
        return Err(Error::NotSuspension);
    }
    let tmax = zd.tau.iter().map(|x| to_f64(&abs(x))).fold(0.0, f64::max);
    let hmax = h.iter().map(to_f64).fold(0.0, f64::max);
    rep.record(tmax, hmax);
    Ok(rep)
}

/// After the minimal positive initial path of `t`, the shortest induced
/// interval is no longer than the closest pair of singularities `u^t_α`,
/// `u^b_β` with `π^t(α) > 1`, `π^b(β) > 1`.
pub fn check_min_length_bound(t: &Iet, max_steps: usize) -> Result<InequalityReport> {
    let mut rep = InequalityReport::new("induced lengths below singularity gaps");
    let (_, induced) = minimal_positive_prefix(t, max_steps)?;
    let ut = t.top_starts();
    let ub = t.bottom_starts();
    let mut gap = f64::INFINITY;
    for &a in &t.pi.top()[1..] {
        for &b in &t.pi.bottom()[1..] {
            gap = gap.min(to_f64(&abs(&(ut[a.0].clone() - &ub[b.0]))));
        }
    }
    let least = to_f64(&min_of(&induced.lambda).unwrap());
    rep.record(least, gap);
    Ok(rep)
}

/// Both sides of `(d!)^{−1/(d−1)} N^{1/(2(d−1)(2d−3))} ≤ 1/a ≤ (d/2) N⁴`
/// for a periodic orbit, with `N` computed over the periodization.
pub fn check_periodic_bounds(orbit: &PeriodicOrbit) -> Result<InequalityReport> {
    let mut rep = InequalityReport::new("periodic value between powers of N");
    let d = orbit.lp.d();
    let n = n_gamma_periodic(&orbit.lp)?
        .ok_or(Error::NotPositive)?
        .to_f64()
        .value();
    let df = d as f64;
    let lower =
        factorial(d).powf(-1.0 / (df - 1.0)) * n.powf(1.0 / (2.0 * (df - 1.0) * (2.0 * df - 3.0)));
    let upper = df / 2.0 * n.powi(4);
    let value = to_f64(&orbit.value);
    rep.record(lower, value);
    rep.record(value, upper);
    Ok(rep)
}
