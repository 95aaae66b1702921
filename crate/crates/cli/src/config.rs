use std::path::PathBuf;

use serde::{Serialize, Serializer};

/// Everything besides the inputs that determines a report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub precision_bits: usize,
    pub tolerance: Tolerance,
    pub window: Window,
    pub max_len: usize,
    pub cache_dir: PathBuf,
    pub seed: u64,
}

/// Tolerances for exact (periodic) data, statistical cross-checks and
/// Hall-ray Perron values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerance {
    #[serde(serialize_with = "as_decimal")]
    pub exact: f64,
    #[serde(serialize_with = "as_decimal")]
    pub statistical: f64,
    #[serde(serialize_with = "as_decimal")]
    pub hall: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            exact: 1e-6,
            statistical: 0.05,
            hall: 1e-4,
        }
    }
}

/// `breakpoints` bounds the Boshernitzan stream, `steps` the renormalization
/// stream and the number of Hall blocks. Estimates read the trailing half.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub breakpoints: usize,
    pub steps: usize,
}

impl Default for Window {
    fn default() -> Self {
        Window {
            breakpoints: 5000,
            steps: 300,
        }
    }
}

fn as_decimal<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn parse_precision(s: &str) -> Result<usize, String> {
    let bits: usize = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if bits < 64 {
        return Err(format!("precision must be at least 64 bits, got {bits}"));
    }
    Ok(bits)
}

/// `N:R`, or a single `R` that keeps the default breakpoint count.
pub fn parse_window(s: &str) -> Result<Window, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let w = match s.split_once(':') {
        Some((n, r)) => Window {
            breakpoints: num(n)?,
            steps: num(r)?,
        },
        None => Window {
            steps: num(s)?,
            ..Window::default()
        },
    };
    if w.breakpoints == 0 || w.steps < 2 {
        return Err("window needs at least one breakpoint and two steps".into());
    }
    Ok(w)
}

/// Comma separated `key=value` overrides, e.g. `statistical=0.1,hall=1e-5`.
pub fn parse_tolerance(s: &str) -> Result<Tolerance, String> {
    let mut t = Tolerance::default();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {item:?}"))?;
        let v: f64 = v.trim().parse().map_err(|e| format!("{v:?}: {e}"))?;
        if !(v.is_finite() && v > 0.0) {
            return Err(format!("tolerance {k} must be positive"));
        }
        match k.trim() {
            "exact" => t.exact = v,
            "statistical" => t.statistical = v,
            "hall" => t.hall = v,
            other => {
                return Err(format!(
                    "unknown tolerance {other:?} (exact, statistical, hall)"
                ))
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_forms() {
        assert_eq!(
            parse_window("100:40").unwrap(),
            Window {
                breakpoints: 100,
                steps: 40
            }
        );
        assert_eq!(parse_window("40").unwrap().breakpoints, 5000);
        assert!(parse_window("x:1").is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let t = parse_tolerance("hall=1e-5").unwrap();
        assert_eq!((t.exact, t.hall), (1e-6, 1e-5));
        assert!(parse_tolerance("speed=1").is_err());
        assert!(parse_tolerance("exact=-1").is_err());
    }

    #[test]
    fn precision_floor() {
        assert!(parse_precision("63").is_err());
        assert_eq!(parse_precision("64").unwrap(), 64);
    }
}
