//! Exact values along periodic Rauzy-Veech orbits.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::num::{abs, Precision, Real};
use crate::rauzy::{apply_inverse_transpose, ArrowKind, CocycleMatrix, RauzyClass, RauzyPath};
use crate::zippered::{canonical_tau, in_theta, ZipperedDatum};

/// A periodic orbit of the renormalization and its Lagrange value.
#[derive(Clone, Debug)]
pub struct PeriodicOrbit {
    pub lp: RauzyPath,
    /// Perron length eigenvector, `Σ λ = 1`.
    pub lambda_star: Vec<Real>,
    /// Suspension eigenvector, scaled so that the area is 1.
    pub tau_star: Vec<Real>,
    /// `T` with `ᵗB λ* = e^T λ*`.
    pub period_t: Real,
    /// `w` at each time of one period.
    pub w: Vec<Real>,
    /// `1 / min w`.
    pub value: Real,
}

type RMat = Vec<Vec<Real>>;

fn mat_mul(a: &RMat, b: &RMat) -> RMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = a[i][0].clone() * &b[0][j];
                    for k in 1..n {
                        acc += a[i][k].clone() * &b[k][j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn mat_vec(a: &RMat, v: &[Real]) -> Vec<Real> {
    a.iter()
        .map(|row| {
            let mut acc = row[0].clone() * &v[0];
            for k in 1..v.len() {
                acc += row[k].clone() * &v[k];
            }
            acc
        })
        .collect()
}

fn max_abs(v: impl Iterator<Item = Real>) -> Real {
    v.map(|x| abs(&x))
        .fold(Real::ZERO, |m, x| if x > m { x } else { m })
}

fn normalize_at(v: &[Real], i: usize) -> Vec<Real> {
    v.iter().map(|x| x.clone() / &v[i]).collect()
}

fn argmax_abs(v: &[Real]) -> usize {
    let mut best = 0;
    for i in 1..v.len() {
        if abs(&v[i]) > abs(&v[best]) {
            best = i;
        }
    }
    best
}

/// Dominant eigenvector by repeated squaring of `m`.
fn dominant_eigenvector(m: RMat, v0: &[Real], prec: Precision) -> Result<Vec<Real>> {
    let tol = Real::from_parts(dashu_int::IBig::ONE, -((prec.bits() as isize) - 8))
        .with_precision(prec.bits())
        .value();
    let mut p = m;
    let mut prev: Option<Vec<Real>> = None;
    for _ in 0..64 {
        let v = mat_vec(&p, v0);
        let i = argmax_abs(&v);
        if v[i] == Real::ZERO {
            return Err(Error::Degenerate(
                "start vector in a non-dominant subspace".into(),
            ));
        }
        let v = normalize_at(&v, i);
        if let Some(q) = &prev {
            let q = normalize_at(q, i);
            let diff = max_abs(v.iter().zip(&q).map(|(a, b)| a.clone() - b));
            if diff < tol {
                return Ok(v);
            }
        }
        prev = Some(v);
        let sq = mat_mul(&p, &p);
        let s = max_abs(sq.iter().flatten().cloned());
        p = sq
            .into_iter()
            .map(|row| row.into_iter().map(|x| x / &s).collect())
            .collect();
    }
    Err(Error::Degenerate("power iteration did not converge".into()))
}

/// The periodic datum `(π, λ*, τ*)` of a positive loop, normalized to
/// `Σ λ = 1` and area 1, together with `T`.
pub fn periodic_datum(lp: &RauzyPath, prec: Precision) -> Result<(ZipperedDatum, Real)> {
    if !lp.is_closed() || lp.is_empty() {
        return Err(Error::NotClosed);
    }
    let b = lp.matrix();
    if !b.is_positive() {
        return Err(Error::NotPositive);
    }
    let d = lp.d();
    let wp = Precision(prec.bits() + 64);
    let tb: RMat = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    Real::from(b.entry(j, i).clone())
                        .with_precision(wp.bits())
                        .value()
                })
                .collect()
        })
        .collect();
    let ones = vec![wp.one(); d];
    let lambda = dominant_eigenvector(tb.clone(), &ones, wp)?;
    let grown = mat_vec(&tb, &lambda);
    let s0 = lambda.iter().fold(wp.zero(), |a, x| a + x);
    let s1 = grown.iter().fold(wp.zero(), |a, x| a + x);
    let period_t = (s1 / &s0).ln();

    let mut tbinv: RMat = vec![vec![wp.zero(); d]; d];
    for j in 0..d {
        let mut e = vec![wp.zero(); d];
        e[j] = wp.one();
        apply_inverse_transpose(&lp.arrows, &mut e);
        for i in 0..d {
            tbinv[i][j] = e[i].clone();
        }
    }
    let tau0 = canonical_tau(&lp.start, wp);
    let mut tau = dominant_eigenvector(tbinv, &tau0, wp)?;
    if !in_theta(&lp.start, &tau) {
        tau = tau.into_iter().map(|x| -x).collect();
        if !in_theta(&lp.start, &tau) {
            return Err(Error::Degenerate(
                "suspension eigenvector outside the cone".into(),
            ));
        }
    }
    let zd = ZipperedDatum::new(lp.start.clone(), lambda, tau, wp)?.normalized()?;
    Ok((zd, period_t))
}

/// The exact Lagrange value of the periodic orbit of a positive loop.
pub fn periodic_value(lp: &RauzyPath, prec: Precision) -> Result<PeriodicOrbit> {
    let (zd, period_t) = periodic_datum(lp, prec)?;
    let mut cur = zd.clone();
    let mut w = Vec::with_capacity(lp.len());
    for a in &lp.arrows {
        w.push(cur.w_value()?);
        let (b, next) = cur.rv_step()?;
        if b.kind != a.kind {
            return Err(Error::Degenerate(
                "periodic datum does not follow its loop".into(),
            ));
        }
        cur = next.normalized()?;
    }
    let min = crate::num::min_of(&w).unwrap();
    let value = (Real::ONE.with_precision(prec.bits() + 64).value() / min)
        .with_precision(prec.bits())
        .value();
    let round = |v: Vec<Real>| {
        v.into_iter()
            .map(|x| x.with_precision(prec.bits()).value())
            .collect()
    };
    Ok(PeriodicOrbit {
        lp: lp.clone(),
        lambda_star: round(zd.lambda),
        tau_star: round(zd.tau),
        period_t: period_t.with_precision(prec.bits()).value(),
        w: round(w),
        value,
    })
}

/// One entry of [`enumerate_periodic_values`].
#[derive(Clone, Debug)]
pub struct PeriodicValue {
    pub value: Real,
    /// Primitive closed loop at its canonical rotation.
    pub lp: RauzyPath,
    /// Smallest `k` such that the loop repeated `k` times is positive.
    pub power: usize,
}

/// Smallest `k ≤ kmax` with `B^k` positive.
fn primitive_power(b: &CocycleMatrix, kmax: usize) -> Option<usize> {
    let mut p = b.clone();
    for k in 1..=kmax {
        if p.is_positive() {
            return Some(k);
        }
        p = p.mul(b);
    }
    None
}

/// Closed primitive loops of length `1..=max_len` based at `start`, emitted
/// only at their canonical rotation.
fn canonical_loops_from(class: &RauzyClass, start: usize, max_len: usize) -> Vec<String> {
    let names: Vec<String> = class.members.iter().map(|m| m.to_string()).collect();
    let mut out = Vec::new();
    let mut kinds: Vec<ArrowKind> = Vec::new();
    let mut verts = vec![start];
    fn rec(
        class: &RauzyClass,
        names: &[String],
        start: usize,
        max_len: usize,
        kinds: &mut Vec<ArrowKind>,
        verts: &mut Vec<usize>,
        out: &mut Vec<String>,
    ) {
        let v = *verts.last().unwrap();
        if !kinds.is_empty() && v == start && is_canonical(names, kinds, verts) {
            out.push(kinds.iter().map(|k| k.as_char()).collect());
        }
        if kinds.len() == max_len {
            return;
        }
        for k in [ArrowKind::Top, ArrowKind::Bottom] {
            kinds.push(k);
            verts.push(class.step(v, k));
            rec(class, names, start, max_len, kinds, verts, out);
            kinds.pop();
            verts.pop();
        }
    }
    rec(
        class, &names, start, max_len, &mut kinds, &mut verts, &mut out,
    );
    out
}

fn is_canonical(names: &[String], kinds: &[ArrowKind], verts: &[usize]) -> bool {
    let n = kinds.len();
    let key = |i: usize| -> (String, &str) {
        let s: String = kinds[i..]
            .iter()
            .chain(&kinds[..i])
            .map(|k| k.as_char())
            .collect();
        (s, names[verts[i]].as_str())
    };
    let k0 = key(0);
    for i in 1..n {
        // equal keys mean the loop is a proper power
        if key(i) <= k0 {
            return false;
        }
    }
    true
}

/// Values of all primitive periodic loops of length at most `max_len` in a
/// class, sorted ascending, with values closer than `1e-9` merged.
///
/// Loops whose cocycle is primitive but not positive are evaluated on their
/// smallest positive power, which has the same orbit.
pub fn enumerate_periodic_values(
    class: &RauzyClass,
    max_len: usize,
    prec: Precision,
) -> Result<Vec<PeriodicValue>> {
    let d = class.members[0].d();
    let loops: Vec<(usize, String)> = (0..class.len())
        .into_par_iter()
        .flat_map_iter(|s| {
            canonical_loops_from(class, s, max_len)
                .into_iter()
                .map(move |k| (s, k))
        })
        .collect();
    let mut values: Vec<PeriodicValue> = loops
        .into_par_iter()
        .filter_map(|(s, kinds)| {
            let lp = RauzyPath::from_kinds(&class.members[s], &kinds).ok()?;
            let power = primitive_power(&lp.matrix(), 2 * d * d)?;
            let orbit = periodic_value(&lp.repeat(power).ok()?, prec).ok()?;
            Some(PeriodicValue {
                value: orbit.value,
                lp,
                power,
            })
        })
        .collect();
    values.sort_by(|a, b| {
        a.value
            .cmp(&b.value)
            .then(a.lp.len().cmp(&b.lp.len()))
            .then(a.lp.kinds().cmp(&b.lp.kinds()))
            .then(a.lp.start.to_string().cmp(&b.lp.start.to_string()))
    });
    let merge = Precision(64).from_f64(1e-9);
    let mut out: Vec<PeriodicValue> = Vec::new();
    for v in values {
        if let Some(last) = out.last() {
            if v.value.clone() - &last.value <= merge {
                continue;
            }
        }
        out.push(v);
    }
    Ok(out)
}
