use std::io::Write;

use lagrange_core::cfrac::{expand, CfExpansion};
use lagrange_core::origami::{hall_ray_alpha, r_value, skew_l, EvenGraph};
use lagrange_core::{Error, OrbitGraph, Origami};
use serde_json::{json, Value};

use super::Ctx;
use crate::input;
use crate::report::{dec, dec_f64, sha256_hex, Failure, InputDigest, Outcome, Report};

fn origami_json(o: &Origami) -> Value {
    json!({ "n": o.n(), "right": o.right(), "up": o.up() })
}

pub fn info(ctx: &Ctx, spec: &str) -> Result<Outcome, Failure> {
    let (o, digest) = input::origami(spec)?;
    let st = o.stratum();
    let lat = o.lattice();
    let result = json!({
        "n": o.n(),
        "right": o.right(),
        "up": o.up(),
        "canonical": origami_json(&o.canonical()),
        "genus": st.genus,
        "zeros": st.zeros,
        "vertices": st.vertices,
        "reduced": o.is_reduced(),
        "lattice": { "a": lat.a, "b": lat.b, "d": lat.d, "index": lat.index() },
        "reduction": origami_json(&o.reduce()),
        "vertical_multiplicity": o.vertical_multiplicity(),
        "horizontal_multiplicity": o.horizontal_multiplicity(),
    });
    Ok(Outcome::ok(Report::new(
        "origami info",
        &ctx.cfg,
        vec![digest],
        result,
    )))
}

pub fn orbit(ctx: &Ctx, spec: &str) -> Result<Outcome, Failure> {
    let (o, digest) = input::origami(spec)?;
    let g = OrbitGraph::build(&o);
    let cusps = g.cusps();
    let prof = g.profile();
    let even = EvenGraph::for_hall(&g);
    let vertices: Vec<Value> = g
        .vertices
        .iter()
        .enumerate()
        .map(|(i, y)| {
            json!({
                "origami": origami_json(y),
                "t": g.t_edges[i],
                "v": g.v_edges[i],
                "vertical": prof.vertical[i],
                "horizontal": prof.horizontal[i],
            })
        })
        .collect();
    let result = json!({
        "size": g.len(),
        "cusp_widths": cusps.widths,
        "p_max": cusps.p_max,
        "m_minus": prof.m_minus,
        "m_plus": prof.m_plus,
        "r_value": dec_f64(r_value(&o)),
        "even_graph": {
            "digit_max": even.digit_max,
            "edges": even.edge_count(),
            "strongly_connected": g.len() == 1 || even.is_strongly_connected(),
        },
        "vertices": vertices,
    });
    Ok(Outcome::ok(Report::new(
        "origami orbit",
        &ctx.cfg,
        vec![digest],
        result,
    )))
}

pub fn multiplicity(ctx: &Ctx, spec: &str, slope: &str) -> Result<Outcome, Failure> {
    let (o, digest) = input::origami(spec)?;
    let (p, q) = input::slope(slope)?;
    let m = o.multiplicity(p, q)?;
    let inputs = vec![digest, InputDigest::new("slope", slope)];
    let result = json!({ "p": p, "q": q, "multiplicity": m });
    Ok(Outcome::ok(Report::new(
        "origami multiplicity",
        &ctx.cfg,
        inputs,
        result,
    )))
}

/// Either explicit digits `c_1, c_2, …` of `[0; c_1, c_2, …]` or a decimal
/// in `(0, 1)` expanded as far as the working precision allows.
pub enum Alpha {
    Digits(String),
    Decimal(String),
}

pub fn skew(ctx: &Ctx, spec: &str, alpha: &Alpha) -> Result<Outcome, Failure> {
    let (o, digest) = input::origami(spec)?;
    let (cf, alpha_digest) = match alpha {
        Alpha::Digits(s) => (
            CfExpansion::new(0, input::digits(s)?)?,
            InputDigest::new("digits", s),
        ),
        Alpha::Decimal(s) => {
            let x = ctx.prec().parse(s)?;
            let cf = match expand(&x, ctx.cfg.window.steps + 2, ctx.prec()) {
                Err(Error::PrecisionExhausted { digits }) => expand(&x, digits, ctx.prec())?,
                other => other?,
            };
            if cf.a0 != 0 {
                return Err(Failure::Parse(format!("alpha = {s} is not in (0, 1)")));
            }
            (cf, InputDigest::new("alpha", s))
        }
    };
    let available = cf.digits.len().saturating_sub(2);
    let n1 = ctx.cfg.window.steps.min(available);
    if n1 < 2 {
        return Err(Failure::Degenerate(format!(
            "only {} digits available",
            cf.digits.len()
        )));
    }
    let rep = skew_l(&o, &cf, (n1 / 2).max(1), n1)?;
    let result = json!({
        "digits_used": cf.digits.len(),
        "window": [rep.window.0, rep.window.1],
        "value": dec_f64(rep.value),
        "perron": dec_f64(rep.perron),
        "max_multiplicity": rep.max_multiplicity,
        "certified": rep.certified,
    });
    let report = Report::new("origami skew", &ctx.cfg, vec![digest, alpha_digest], result);
    Ok(Outcome::ok(report))
}

/// Builds a Hall ray with `--window` steps many blocks and checks its
/// certificate and Perron value. Digits go to `out`, one per line.
pub fn hall(ctx: &Ctx, spec: &str, x: &str, out: Option<&str>) -> Result<Outcome, Failure> {
    let (o, digest) = input::origami(spec)?;
    let xv = ctx.prec().parse(x)?;
    let blocks = ctx.cfg.window.steps;
    let ray = hall_ray_alpha(&o, &xv, blocks, ctx.prec())?;
    let lo = blocks / 2 + 1;
    let perron = ray.perron_window(lo, blocks)?;
    // the ray ends with a single digit after the last marked index
    let n1 = ray.marked[blocks - 1] - 1;
    let skew = skew_l(&o, &ray.alpha(), ray.marked[lo - 1].min(n1), n1)?;
    let xf: f64 = lagrange_core::num::to_f64(&xv);
    let perron_err = (perron - xf).abs();
    let mm = (ray.m_minus * ray.m_minus) as f64;
    let target = o.n() as f64 * xf / mm;

    let body: String = ray.digits.iter().map(|d| format!("{d}\n")).collect();
    let digits_hash = sha256_hex(body.as_bytes());
    if let Some(path) = out {
        let tmp = format!("{path}.tmp{}", std::process::id());
        let mut f = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
        f.write_all(body.as_bytes())?;
        f.into_inner().map_err(|e| e.into_error())?.sync_all()?;
        std::fs::rename(&tmp, path)?;
    }

    let tol = ctx.cfg.tolerance.hall;
    let mut problems = Vec::new();
    if !ray.certificate.holds() {
        problems.push(format!("certificate fails: {:?}", ray.certificate));
    }
    if perron_err > tol {
        problems.push(format!("|L - x| = {perron_err} exceeds {tol}"));
    }
    let d = &ray.decomposition;
    let result = json!({
        "x": dec(&xv),
        "threshold": dec_f64(r_value(&o) * mm / o.n() as f64),
        "blocks": blocks,
        "decomposition": { "x0": d.x0, "a": d.a, "b": d.b, "certified_digits": d.certified_digits },
        "orbit_size": ray.orbit_size,
        "m_minus": ray.m_minus,
        "m_plus": ray.m_plus,
        "p_max": ray.p_max,
        "even_digit_max": ray.even_digit_max,
        "digit_count": ray.digits.len(),
        "digits_sha256": digits_hash,
        "digits_file": out,
        "marked_window": [lo, blocks],
        "perron": dec_f64(perron),
        "perron_error": dec_f64(perron_err),
        "skew_value": dec_f64(skew.value),
        "skew_target": dec_f64(target),
        "skew_certified": skew.certified,
        "certificate": ray.certificate,
        "certificate_holds": ray.certificate.holds(),
    });
    let inputs = vec![digest, InputDigest::new("x", x)];
    let report = Report::new("origami hall", &ctx.cfg, inputs, result);
    Ok(Outcome {
        report,
        violation: (!problems.is_empty()).then(|| problems.join("; ")),
    })
}
