use std::path::Path;

use lagrange_core::origami::Origami;
use lagrange_core::zippered::ZipperedRecord;

use crate::report::{Failure, InputDigest};

/// Text of an argument that is either inline or names an existing file.
/// The digest hashes the text in both cases.
pub fn inline_or_file(name: &str, arg: &str) -> Result<(String, InputDigest), Failure> {
    let path = Path::new(arg);
    if !arg.trim_start().starts_with('{') && path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let digest = InputDigest::of_bytes(name, arg, text.as_bytes());
        return Ok((text, digest));
    }
    Ok((arg.to_string(), InputDigest::new(name, arg)))
}

/// Accepts `torus`, `{"n":…,"right":[…],"up":[…]}`, `n;(right cycles);(up cycles)`
/// or a file holding either of the last two.
pub fn origami(arg: &str) -> Result<(Origami, InputDigest), Failure> {
    let (text, digest) = inline_or_file("origami", arg)?;
    let t = text.trim();
    let o = if t == "torus" {
        Origami::torus()
    } else if t.starts_with('{') {
        serde_json::from_str::<Origami>(t)?
    } else {
        let parts: Vec<&str> = t.split(';').collect();
        let [n, right, up] = parts[..] else {
            return Err(Failure::Parse(format!(
                "origami {t:?}: expected JSON, torus, or n;right;up"
            )));
        };
        let n: usize = n
            .trim()
            .parse()
            .map_err(|e| Failure::Parse(format!("square count {n:?}: {e}")))?;
        Origami::from_cycles(n, right, up)?
    };
    Ok((o, digest))
}

/// A zippered datum `{"pi": …, "lambda": [decimals], "tau": [decimals]}`.
pub fn datum(arg: &str) -> Result<(ZipperedRecord, InputDigest), Failure> {
    let (text, digest) = inline_or_file("datum", arg)?;
    Ok((serde_json::from_str(&text)?, digest))
}

/// `p/q`, or an integer `p` for `p/1`.
pub fn slope(s: &str) -> Result<(i64, i64), Failure> {
    let bad = |e: std::num::ParseIntError| Failure::Parse(format!("slope {s:?}: {e}"));
    match s.split_once('/') {
        Some((p, q)) => Ok((
            p.trim().parse().map_err(bad)?,
            q.trim().parse().map_err(bad)?,
        )),
        None => Ok((s.trim().parse().map_err(bad)?, 1)),
    }
}

/// Comma or whitespace separated positive integers.
pub fn digits(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<u64>() {
            Ok(0) => Err(Failure::Parse(
                "continued fraction digits must be positive".into(),
            )),
            Ok(d) => Ok(d),
            Err(e) => Err(Failure::Parse(format!("digit {t:?}: {e}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origami_forms() {
        let (a, _) = origami("torus").unwrap();
        assert_eq!(a.n(), 1);
        let (b, _) = origami(r#"{"n":3,"right":[1,0,2],"up":[2,1,0]}"#).unwrap();
        let (c, _) = origami("3;(0 1);(0 2)").unwrap();
        assert_eq!(b, c);
        assert!(matches!(origami("3;(0 1)"), Err(Failure::Parse(_))));
        assert!(matches!(origami("2;;"), Err(Failure::Parse(_))));
    }

    #[test]
    fn slopes_and_digits() {
        assert_eq!(slope("3/5").unwrap(), (3, 5));
        assert_eq!(slope("-2").unwrap(), (-2, 1));
        assert_eq!(digits("1, 2 3").unwrap(), vec![1, 2, 3]);
        assert!(digits("1,0").is_err());
    }
}
