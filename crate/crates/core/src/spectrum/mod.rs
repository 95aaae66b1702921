//! Lagrange values through renormalization: streams of `w` along the
//! Rauzy-Veech orbit, exact periodic values and cross-checks.

mod inequalities;
mod periodic;

pub use inequalities::{
    check_cords, check_distortion_bound, check_distortion_prefix, check_heights_bound,
    check_min_length_bound, check_periodic_bounds, check_w_lower_bound, InequalityReport, Orbit,
};
pub use periodic::{
    enumerate_periodic_values, periodic_datum, periodic_value, PeriodicOrbit, PeriodicValue,
};

use crate::error::{Error, Result};
use crate::iet::{e_estimate, PermutationPair};
use crate::num::{to_f64, Precision, Real};
use crate::rauzy::Arrow;
use crate::zippered::ZipperedDatum;

/// Estimate of `a(X)` from a finite stream of `w_r`.
#[derive(Clone, Debug)]
pub struct SpectrumEstimate {
    /// `(r, w_r)` for `r = 0..=r_max`.
    pub samples: Vec<(usize, Real)>,
    /// Trailing window `[r_max/2, r_max]`.
    pub window: (usize, usize),
    /// Minimum of `w_r` over the window, estimating `a(X)`.
    pub running_liminf: Real,
    /// Maximum of `w_r` over the window.
    pub window_max: Real,
    /// `1 / running_liminf`, estimating `L = 1/a(X)`.
    pub value: Real,
}

/// One step of a renormalized orbit: the data at time `r` (area 1), its
/// `w` value and the arrow leaving it.
#[derive(Clone, Debug)]
pub struct OrbitStep {
    pub datum: ZipperedDatum,
    pub w: Real,
    pub arrow: Option<Arrow>,
}

/// Runs `r_max` Rauzy-Veech steps, normalizing area at every step.
///
/// Returns the steps computed so far and, if the orbit stopped early, the
/// error that stopped it (a vertical saddle connection).
pub fn rv_orbit(zd: &ZipperedDatum, r_max: usize) -> (Vec<OrbitStep>, Option<Error>) {
    let mut out = Vec::with_capacity(r_max + 1);
    let mut cur = match zd.normalized() {
        Ok(z) => z,
        Err(e) => return (out, Some(e)),
    };
    for r in 0..=r_max {
        let w = match cur.w_value() {
            Ok(w) => w,
            Err(e) => return (out, Some(e)),
        };
        if r == r_max {
            out.push(OrbitStep {
                datum: cur,
                w,
                arrow: None,
            });
            break;
        }
        match cur.rv_step().and_then(|(a, n)| Ok((a, n.normalized()?))) {
            Ok((a, next)) => {
                out.push(OrbitStep {
                    datum: cur,
                    w,
                    arrow: Some(a),
                });
                cur = next;
            }
            Err(Error::ConnectionStop { .. }) => {
                out.push(OrbitStep {
                    datum: cur,
                    w,
                    arrow: None,
                });
                return (out, Some(Error::ConnectionStop { step: r }));
            }
            Err(e) => return (out, Some(e)),
        }
    }
    (out, None)
}

/// Streams `w_r` along the orbit and estimates `a(X)` on `[r_max/2, r_max]`.
pub fn a_value_stream(zd: &ZipperedDatum, r_max: usize) -> Result<SpectrumEstimate> {
    let (steps, err) = rv_orbit(zd, r_max);
    if let Some(e) = err {
        return Err(e);
    }
    let samples: Vec<(usize, Real)> = steps
        .into_iter()
        .enumerate()
        .map(|(r, s)| (r, s.w))
        .collect();
    estimate_from_samples(samples, r_max / 2, r_max)
}

/// Window statistics of a sample stream.
pub fn estimate_from_samples(
    samples: Vec<(usize, Real)>,
    lo: usize,
    hi: usize,
) -> Result<SpectrumEstimate> {
    let in_window: Vec<&Real> = samples
        .iter()
        .filter(|(r, _)| *r >= lo && *r <= hi)
        .map(|(_, w)| w)
        .collect();
    let min = crate::num::min_of(in_window.iter().copied())
        .ok_or_else(|| Error::InsufficientWindow(format!("no samples in [{lo}, {hi}]")))?;
    let max = crate::num::max_of(in_window.iter().copied()).unwrap();
    let value = min.clone().with_precision(min.precision().max(64)).value();
    let value = Real::ONE.with_precision(value.precision()).value() / value;
    Ok(SpectrumEstimate {
        samples,
        window: (lo, hi),
        running_liminf: min,
        window_max: max,
        value,
    })
}

/// `π(2g + r − 2)/2`, the minimum possible Lagrange value in a stratum of
/// genus `g` with `r` singularities.
pub fn hurwitz_lower_bound(g: usize, r: usize) -> f64 {
    std::f64::consts::PI * (2 * g + r - 2) as f64 / 2.0
}

/// Genus and number of singularities (marked points included) of the
/// surfaces suspended over `pi`, from `rank Ω_π = 2g` and `d = 2g + s − 1`.
pub fn genus_and_singularities(pi: &PermutationPair) -> (usize, usize) {
    let d = pi.d();
    let mut m: Vec<Vec<i64>> = vec![vec![0; d]; d];
    for a in pi.letters() {
        for b in pi.letters() {
            let before_top = pi.pi_t(a) < pi.pi_t(b);
            let before_bottom = pi.pi_b(a) < pi.pi_b(b);
            m[a.0][b.0] = match (before_top, before_bottom) {
                (true, false) => 1,
                (false, true) => -1,
                _ => 0,
            };
        }
    }
    let rank = integer_rank(m);
    let g = rank / 2;
    (g, d + 1 - 2 * g)
}

fn integer_rank(mut m: Vec<Vec<i64>>) -> usize {
    // fraction-free elimination; entries stay small for Ω_π
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for k in 0..cols {
                    m[r][k] = m[r][k] * a - m[rank][k] * b;
                }
                let g = m[r].iter().fold(0i64, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Output of [`vorobets_crosscheck`].
#[derive(Clone, Debug, serde::Serialize)]
pub struct VorobetsReport {
    pub e_est: f64,
    pub a_est: f64,
    pub rel_diff: f64,
    pub s_est: f64,
}

/// Compares `E(T)` from the breakpoint stream (`n ≤ n_max`) with `a(X)` from
/// the renormalization stream (`r ≤ r_max`).
pub fn vorobets_crosscheck(
    zd: &ZipperedDatum,
    n_max: usize,
    r_max: usize,
) -> Result<VorobetsReport> {
    let e_est = e_estimate(&zd.iet(), n_max).map_err(|e| match e {
        Error::ConnectionFound { depth, .. } => Error::ConnectionStop { step: depth },
        e => e,
    })?;
    let est = a_value_stream(zd, r_max)?;
    let a_est = to_f64(&est.running_liminf);
    Ok(VorobetsReport {
        e_est,
        a_est,
        rel_diff: (e_est / a_est - 1.0).abs(),
        s_est: (2.0 * a_est).sqrt(),
    })
}

/// Precision (bits) that keeps `r` renormalization steps accurate for data
/// whose lengths contract by `e^{-t}` per `len` steps. Relative errors in the
/// lengths grow by at most `e^{2t}` per period.
pub fn precision_for_steps(r: usize, period_t: f64, len: usize) -> Precision {
    let per_step = period_t / len.max(1) as f64 / std::f64::consts::LN_2;
    Precision(128 + (2.0 * per_step * r as f64).ceil() as usize)
}
