use serde_json::json;

use super::Ctx;
use crate::report::{Failure, Outcome, Report};

pub fn class(ctx: &Ctx, pi: &str) -> Result<Outcome, Failure> {
    let (p, class, cache_file, digest) = ctx.class(pi)?;
    let rec = class.to_record();
    let result = json!({
        "pi": p.to_string(),
        "member_count": class.len(),
        "members": rec.members,
        "arrows": rec.arrows,
        "cache_file": cache_file,
    });
    Ok(Outcome::ok(Report::new(
        "rauzy-class",
        &ctx.cfg,
        vec![digest],
        result,
    )))
}
