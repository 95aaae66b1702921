use std::io::Write;

use lagrange_core::num::to_f64;
use lagrange_core::spectrum::{
    a_value_stream, check_cords, check_distortion_bound, check_distortion_prefix,
    check_heights_bound, check_min_length_bound, check_periodic_bounds, check_w_lower_bound,
    enumerate_periodic_values, periodic_datum, periodic_value, precision_for_steps,
    vorobets_crosscheck, InequalityReport, Orbit,
};
use lagrange_core::zippered::canonical_tau;
use lagrange_core::{
    Error, PeriodicOrbit, PermutationPair, Precision, RauzyPath, Real, ZipperedDatum,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::Ctx;
use crate::input;
use crate::report::{dec, dec_f64, decs, sha256_hex, Failure, InputDigest, Outcome, Report};

/// Cap on the induction steps used by the prefix inequalities.
const PREFIX_STEPS: usize = 10_000;

/// Where the zippered data of a command comes from.
pub enum Source {
    Datum(String),
    Periodic { class: String, kinds: String },
    Random { class: String, samples: usize },
}

/// The loop `kinds` at `pi`, repeated the least number of times that makes
/// its matrix positive.
fn positive_loop(pi: &PermutationPair, kinds: &str) -> Result<(RauzyPath, usize), Failure> {
    let lp = RauzyPath::from_kinds(pi, kinds)?;
    if !lp.is_closed() {
        return Err(Error::NotClosed.into());
    }
    let d = pi.d();
    for k in 1..=2 * d * d {
        let r = lp.repeat(k)?;
        if r.matrix().is_positive() {
            return Ok((r, k));
        }
    }
    Err(Failure::Parse(format!(
        "no power of the loop {kinds:?} has a positive matrix"
    )))
}

fn orbit_json(orbit: &PeriodicOrbit, kinds: &str, power: usize) -> Value {
    json!({
        "loop": kinds,
        "start": orbit.lp.start.to_string(),
        "power": power,
        "value": dec(&orbit.value),
        "lambda_star": decs(&orbit.lambda_star),
        "tau_star": decs(&orbit.tau_star),
        "period_T": dec(&orbit.period_t),
    })
}

fn inequality_json(r: &InequalityReport) -> Value {
    json!({
        "name": r.name,
        "checked": r.checked,
        "violations": r.violations,
        "min_ratio": dec_f64(r.min_ratio),
    })
}

pub fn value(ctx: &Ctx, datum: &str) -> Result<Outcome, Failure> {
    let (rec, digest) = input::datum(datum)?;
    let zd = ZipperedDatum::from_record(&rec, ctx.prec())?;
    let steps = ctx.cfg.window.steps;
    let est = a_value_stream(&zd, steps)?;
    let result = json!({
        "pi": rec.pi,
        "value": dec(&est.value),
        "a_estimate": dec(&est.running_liminf),
        "window": [est.window.0, est.window.1],
        "window_max_w": dec(&est.window_max),
    });
    Ok(Outcome::ok(Report::new(
        "spectrum value",
        &ctx.cfg,
        vec![digest],
        result,
    )))
}

pub fn periodic(ctx: &Ctx, class: &str, kinds: &str) -> Result<Outcome, Failure> {
    let (pi, _, _, digest) = ctx.class(class)?;
    let (lp, power) = positive_loop(&pi, kinds)?;
    let orbit = periodic_value(&lp, ctx.prec())?;
    let inputs = vec![digest, InputDigest::new("loop", kinds)];
    let result = orbit_json(&orbit, kinds, power);
    Ok(Outcome::ok(Report::new(
        "spectrum periodic",
        &ctx.cfg,
        inputs,
        result,
    )))
}

/// Values of all primitive loops up to `--max-len`; with `out`, one orbit per
/// line is also written there as JSON.
pub fn enumerate(ctx: &Ctx, class: &str, out: Option<&str>) -> Result<Outcome, Failure> {
    let (_, class, _, digest) = ctx.class(class)?;
    let values = enumerate_periodic_values(&class, ctx.cfg.max_len, ctx.prec())?;
    let mut lines = Vec::with_capacity(values.len());
    for v in &values {
        let orbit = periodic_value(&v.lp.repeat(v.power)?, ctx.prec())?;
        lines.push(orbit_json(&orbit, &v.lp.kinds(), v.power));
    }
    let mut result = json!({
        "count": values.len(),
        "values": values.iter().map(|v| dec(&v.value)).collect::<Vec<_>>(),
    });
    if let Some(path) = out {
        let mut body = Vec::new();
        for l in &lines {
            serde_json::to_writer(&mut body, l)?;
            body.push(b'\n');
        }
        write_atomic(path, &body)?;
        result["file"] = json!({ "path": path, "sha256": sha256_hex(&body) });
    } else {
        result["orbits"] = Value::Array(lines);
    }
    Ok(Outcome::ok(Report::new(
        "spectrum enum",
        &ctx.cfg,
        vec![digest],
        result,
    )))
}

fn write_atomic(path: &str, body: &[u8]) -> std::io::Result<()> {
    let tmp = format!("{path}.tmp{}", std::process::id());
    let mut f = std::fs::File::create(&tmp)?;
    f.write_all(body)?;
    f.sync_all()?;
    std::fs::rename(&tmp, path)
}

/// A datum for the crosscheck, at a precision that survives `steps` steps.
fn crosscheck_datum(
    ctx: &Ctx,
    source: &Source,
) -> Result<(ZipperedDatum, Vec<InputDigest>), Failure> {
    match source {
        Source::Datum(arg) => {
            let (rec, digest) = input::datum(arg)?;
            Ok((ZipperedDatum::from_record(&rec, ctx.prec())?, vec![digest]))
        }
        Source::Periodic { class, kinds } => {
            let (pi, _, _, digest) = ctx.class(class)?;
            let (lp, _) = positive_loop(&pi, kinds)?;
            let (_, t) = periodic_datum(&lp, ctx.prec())?;
            let need = precision_for_steps(ctx.cfg.window.steps, to_f64(&t), lp.len());
            let prec = Precision(need.bits().max(ctx.cfg.precision_bits));
            let (zd, _) = periodic_datum(&lp, prec)?;
            Ok((zd, vec![digest, InputDigest::new("loop", kinds)]))
        }
        Source::Random { .. } => Err(Failure::Parse("crosscheck needs a datum or a loop".into())),
    }
}

pub fn crosscheck(ctx: &Ctx, source: &Source) -> Result<Outcome, Failure> {
    let (zd, inputs) = crosscheck_datum(ctx, source)?;
    let w = ctx.cfg.window;
    let rep = vorobets_crosscheck(&zd, w.breakpoints, w.steps)?;
    let tol = ctx.cfg.tolerance.statistical;
    let result = json!({
        "e_est": dec_f64(rep.e_est),
        "a_est": dec_f64(rep.a_est),
        "rel_diff": dec_f64(rep.rel_diff),
        "s_est": dec_f64(rep.s_est),
        "working_precision_bits": zd.prec.bits(),
        "tolerance": dec_f64(tol),
        "passed": rep.rel_diff <= tol,
    });
    let violation =
        (rep.rel_diff > tol).then(|| format!("|E/a - 1| = {} exceeds {tol}", rep.rel_diff));
    let report = Report::new("spectrum crosscheck", &ctx.cfg, inputs, result);
    Ok(Outcome { report, violation })
}

/// Uniform in `[0, 1)` with every bit of the working precision random, so the
/// data are not rational with a small denominator (those end in a connection).
fn random_unit(rng: &mut ChaCha8Rng, prec: Precision) -> Real {
    let words = prec.bits().div_ceil(64);
    let mut x = prec.zero();
    let scale = prec.int(2).powi(64.into());
    for _ in 0..words {
        x = (x + Real::from(rng.gen::<u64>())
            .with_precision(prec.bits())
            .value())
            / &scale;
    }
    x
}

fn random_datum(
    rng: &mut ChaCha8Rng,
    class: &lagrange_core::RauzyClass,
    prec: Precision,
) -> ZipperedDatum {
    let pi = class.members[rng.gen_range(0..class.len())].clone();
    let d = pi.d();
    loop {
        let lambda: Vec<Real> = (0..d)
            .map(|_| prec.from_f64(0.05) + random_unit(rng, prec) * prec.from_f64(0.95))
            .collect();
        let scale = prec.from_f64(rng.gen_range(0.3..3.0));
        let tau: Vec<Real> = canonical_tau(&pi, prec)
            .iter()
            .map(|t| {
                t.clone() * &scale
                    + (random_unit(rng, prec) - prec.from_f64(0.5)) * prec.from_f64(0.8)
            })
            .collect();
        if let Ok(zd) = ZipperedDatum::new(pi.clone(), lambda, tau, prec) {
            return zd;
        }
    }
}

fn datum_checks(zd: &ZipperedDatum, steps: usize) -> Result<Vec<InequalityReport>, Failure> {
    let orbit = Orbit::run(zd, steps)?;
    let iet = zd.iet();
    Ok(vec![
        check_w_lower_bound(&orbit),
        check_distortion_bound(&orbit),
        check_cords(&orbit),
        check_distortion_prefix(&iet, PREFIX_STEPS)?,
        check_heights_bound(zd)?,
        check_min_length_bound(&iet, PREFIX_STEPS)?,
    ])
}

fn merge_into(totals: &mut Vec<InequalityReport>, reps: Vec<InequalityReport>) {
    if totals.is_empty() {
        *totals = reps;
    } else {
        for (t, r) in totals.iter_mut().zip(&reps) {
            t.merge(r);
        }
    }
}

/// Runs the finite-time inequalities and fails on any violation.
pub fn bounds(ctx: &Ctx, source: &Source) -> Result<Outcome, Failure> {
    let steps = ctx.cfg.window.steps;
    let mut totals = Vec::new();
    let (mut stream, mut stream_failure) = (None, None);
    let inputs = match source {
        Source::Datum(arg) => {
            let (rec, digest) = input::datum(arg)?;
            let zd = ZipperedDatum::from_record(&rec, ctx.prec())?;
            merge_into(&mut totals, datum_checks(&zd, steps)?);
            vec![digest]
        }
        Source::Periodic { class, kinds } => {
            let (pi, _, _, digest) = ctx.class(class)?;
            let (lp, _) = positive_loop(&pi, kinds)?;
            let orbit = periodic_value(&lp, ctx.prec())?;
            let (_, t) = periodic_datum(&lp, ctx.prec())?;
            let need = precision_for_steps(steps, to_f64(&t), lp.len());
            let (zd, _) = periodic_datum(&lp, Precision(need.bits().max(ctx.cfg.precision_bits)))?;
            merge_into(&mut totals, datum_checks(&zd, steps)?);
            totals.push(check_periodic_bounds(&orbit)?);
            // the exact value against the one read off the renormalization stream
            let est = a_value_stream(&zd, steps)?;
            let rel = to_f64(&((est.value.clone() - &orbit.value) / &orbit.value)).abs();
            if rel > ctx.cfg.tolerance.exact {
                stream_failure = Some(format!(
                    "stream value differs from the exact value by {rel}"
                ));
            }
            stream = Some(json!({
                "exact_value": dec(&orbit.value),
                "stream_value": dec(&est.value),
                "rel_diff": dec_f64(rel),
                "tolerance": dec_f64(ctx.cfg.tolerance.exact),
            }));
            vec![digest, InputDigest::new("loop", kinds)]
        }
        Source::Random { class, samples } => {
            let (_, class_data, _, digest) = ctx.class(class)?;
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
            for _ in 0..*samples {
                let zd = random_datum(&mut rng, &class_data, ctx.prec());
                merge_into(&mut totals, datum_checks(&zd, steps)?);
            }
            vec![digest, InputDigest::new("samples", &samples.to_string())]
        }
    };
    let violations: usize = totals.iter().map(|t| t.violations).sum();
    let mut result = json!({
        "checks": totals.iter().map(inequality_json).collect::<Vec<_>>(),
        "violations": violations,
    });
    if let Some(v) = stream {
        result["periodic_consistency"] = v;
    }
    let violation = (violations > 0)
        .then(|| {
            let names: Vec<&str> = totals
                .iter()
                .filter(|t| !t.passed())
                .map(|t| t.name.as_str())
                .collect();
            format!("{violations} violations in: {}", names.join(", "))
        })
        .into_iter()
        .chain(stream_failure)
        .reduce(|a, b| format!("{a}; {b}"));
    let report = Report::new("spectrum bounds", &ctx.cfg, inputs, result);
    Ok(Outcome { report, violation })
}
