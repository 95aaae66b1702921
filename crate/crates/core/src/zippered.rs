//! Suspension data, zippered rectangles and the Rauzy-Veech map on triples
//! `(π, λ, τ)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iet::{Iet, Letter, PermutationPair};
use crate::num::{abs, is_negative, is_positive, to_decimal, Precision, Real};
use crate::rauzy::{step_kind, Arrow, ArrowKind};

/// `τ_χ = π^b(χ) − π^t(χ)`, always in `Θ_π` for admissible `π`.
pub fn canonical_tau(pi: &PermutationPair, prec: Precision) -> Vec<Real> {
    pi.letters()
        .map(|l| prec.int(pi.pi_b(l) as i64 - pi.pi_t(l) as i64))
        .collect()
}

/// Membership in the cone `Θ_π`: top prefix sums positive, bottom prefix sums
/// negative, for prefixes of length `1..d-1`.
pub fn in_theta(pi: &PermutationPair, tau: &[Real]) -> bool {
    let d = pi.d();
    let mut st = Real::ZERO;
    let mut sb = Real::ZERO;
    for k in 0..d - 1 {
        st += &tau[pi.top()[k].0];
        sb += &tau[pi.bottom()[k].0];
        if !is_positive(&st) || !is_negative(&sb) {
            return false;
        }
    }
    true
}

/// Kind of a [`Period`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodKind {
    Diagonal,
    TopCord,
    BottomCord,
}

/// A period `re + i·im` of the surface with the letters that define it.
///
/// For a diagonal the letters are `(β, α)`; for a cord they are the first and
/// last letter of the segment.
#[derive(Clone, Debug)]
pub struct Period {
    pub re: Real,
    pub im: Real,
    pub kind: PeriodKind,
    pub letters: (Letter, Letter),
}

impl Period {
    /// `|re|·|im|`.
    pub fn area(&self) -> Real {
        abs(&self.re) * abs(&self.im)
    }
}

/// The triple `(π, λ, τ)`.
#[derive(Clone, Debug)]
pub struct ZipperedDatum {
    pub pi: PermutationPair,
    pub lambda: Vec<Real>,
    pub tau: Vec<Real>,
    pub prec: Precision,
}

/// JSON form: `{pi: "A B/B A", lambda: [dec strings], tau: [dec strings]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZipperedRecord {
    pub pi: String,
    pub lambda: Vec<String>,
    pub tau: Vec<String>,
}

impl ZipperedDatum {
    pub fn new(
        pi: PermutationPair,
        lambda: Vec<Real>,
        tau: Vec<Real>,
        prec: Precision,
    ) -> Result<Self> {
        let d = pi.d();
        if lambda.len() != d || tau.len() != d {
            return Err(Error::InvalidLengths(format!("expected {d} coordinates")));
        }
        if !lambda.iter().all(is_positive) {
            return Err(Error::InvalidLengths("lengths must be positive".into()));
        }
        if !in_theta(&pi, &tau) {
            return Err(Error::NotSuspension);
        }
        let fix = |v: Vec<Real>| {
            v.into_iter()
                .map(|x| x.with_precision(prec.bits()).value())
                .collect()
        };
        Ok(ZipperedDatum {
            pi,
            lambda: fix(lambda),
            tau: fix(tau),
            prec,
        })
    }

    pub fn from_f64(
        pi: PermutationPair,
        lambda: &[f64],
        tau: &[f64],
        prec: Precision,
    ) -> Result<Self> {
        let l = lambda.iter().map(|&x| prec.from_f64(x)).collect();
        let t = tau.iter().map(|&x| prec.from_f64(x)).collect();
        Self::new(pi, l, t, prec)
    }

    pub fn from_record(rec: &ZipperedRecord, prec: Precision) -> Result<Self> {
        let pi = PermutationPair::parse(&rec.pi)?;
        let l = rec
            .lambda
            .iter()
            .map(|s| prec.parse(s))
            .collect::<Result<_>>()?;
        let t = rec
            .tau
            .iter()
            .map(|s| prec.parse(s))
            .collect::<Result<_>>()?;
        Self::new(pi, l, t, prec)
    }

    pub fn to_record(&self) -> ZipperedRecord {
        ZipperedRecord {
            pi: self.pi.to_string(),
            lambda: self.lambda.iter().map(to_decimal).collect(),
            tau: self.tau.iter().map(to_decimal).collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.pi.d()
    }

    pub fn iet(&self) -> Iet {
        Iet {
            pi: self.pi.clone(),
            lambda: self.lambda.clone(),
            prec: self.prec,
        }
    }

    /// `h_α = Σ_{π^t(χ)<π^t(α)} τ_χ − Σ_{π^b(χ)<π^b(α)} τ_χ`.
    pub fn heights(&self) -> Result<Vec<Real>> {
        if !in_theta(&self.pi, &self.tau) {
            return Err(Error::NotSuspension);
        }
        Ok(self.heights_unchecked())
    }

    fn heights_unchecked(&self) -> Vec<Real> {
        let zt = self.prefix(&self.tau, self.pi.top());
        let zb = self.prefix(&self.tau, self.pi.bottom());
        zt.into_iter().zip(zb).map(|(a, b)| a - b).collect()
    }

    /// Per letter, the sum of `v` over letters strictly before it in `line`.
    fn prefix(&self, v: &[Real], line: &[Letter]) -> Vec<Real> {
        let mut out = vec![self.prec.zero(); self.d()];
        let mut acc = self.prec.zero();
        for l in line {
            out[l.0] = acc.clone();
            acc += &v[l.0];
        }
        out
    }

    /// `⟨λ, h⟩`.
    pub fn area(&self) -> Result<Real> {
        let h = self.heights()?;
        Ok(dot(&self.lambda, &h, self.prec))
    }

    /// One Rauzy-Veech step on the triple.
    pub fn rv_step(&self) -> Result<(Arrow, ZipperedDatum)> {
        let kind = step_kind(&self.pi, &self.lambda, &self.prec.tolerance())
            .ok_or(Error::ConnectionStop { step: 0 })?;
        let a = Arrow::new(&self.pi, kind);
        let mut lambda = self.lambda.clone();
        let mut tau = self.tau.clone();
        let (w, l) = (a.winner.0, a.loser.0);
        let x = lambda[l].clone();
        lambda[w] -= x;
        let y = tau[l].clone();
        tau[w] -= y;
        let next = ZipperedDatum {
            pi: a.target.clone(),
            lambda,
            tau,
            prec: self.prec,
        };
        Ok((a, next))
    }

    /// The unique predecessor under the Rauzy-Veech map.
    ///
    /// A top arrow into `π'` leaves `Σ τ' < 0` and a bottom arrow leaves
    /// `Σ τ' > 0`, which decides the type of the arrow to undo.
    pub fn rv_inverse_step(&self) -> Result<(Arrow, ZipperedDatum)> {
        let total = self.tau.iter().fold(self.prec.zero(), |a, x| a + x);
        let scale = self
            .tau
            .iter()
            .map(abs)
            .fold(self.prec.zero(), |a, x| a + x);
        if abs(&total) <= self.prec.tolerance() * scale {
            return Err(Error::Degenerate(
                "sum of suspension coordinates vanishes".into(),
            ));
        }
        let kind = if is_negative(&total) {
            ArrowKind::Top
        } else {
            ArrowKind::Bottom
        };
        let pi = &self.pi;
        let d = pi.d();
        let (w, l, source) = match kind {
            ArrowKind::Top => {
                let w = pi.last_top();
                let at = pi.pi_b(w);
                if at >= d {
                    return Err(Error::Degenerate("no predecessor".into()));
                }
                let l = pi.bottom()[at];
                let mut bottom: Vec<Letter> =
                    pi.bottom().iter().copied().filter(|&x| x != l).collect();
                bottom.push(l);
                (w, l, pi.with_lines(pi.top().to_vec(), bottom))
            }
            ArrowKind::Bottom => {
                let w = pi.last_bottom();
                let at = pi.pi_t(w);
                if at >= d {
                    return Err(Error::Degenerate("no predecessor".into()));
                }
                let l = pi.top()[at];
                let mut top: Vec<Letter> = pi.top().iter().copied().filter(|&x| x != l).collect();
                top.push(l);
                (w, l, pi.with_lines(top, pi.bottom().to_vec()))
            }
        };
        let mut lambda = self.lambda.clone();
        let mut tau = self.tau.clone();
        let x = lambda[l.0].clone();
        lambda[w.0] += x;
        let y = tau[l.0].clone();
        tau[w.0] += y;
        let a = Arrow::new(&source, kind);
        debug_assert_eq!(a.target, self.pi);
        Ok((
            a,
            ZipperedDatum {
                pi: source,
                lambda,
                tau,
                prec: self.prec,
            },
        ))
    }

    /// Rescales so that `Σ λ = 1` and the area is 1. Leaves `w` and the
    /// Rauzy path unchanged.
    pub fn normalized(&self) -> Result<ZipperedDatum> {
        let s = self.lambda.iter().fold(self.prec.zero(), |a, x| a + x);
        let lambda: Vec<Real> = self.lambda.iter().map(|x| x.clone() / &s).collect();
        let tmp = ZipperedDatum {
            pi: self.pi.clone(),
            lambda,
            tau: self.tau.clone(),
            prec: self.prec,
        };
        let area = tmp.area()?;
        let tau = tmp.tau.iter().map(|x| x.clone() / &area).collect();
        Ok(ZipperedDatum { tau, ..tmp })
    }

    /// All diagonals `⟨ζ, w_{β,α}⟩` with `π^b(β) > 1`, `π^t(α) > 1`.
    pub fn diagonals(&self) -> Vec<Period> {
        let lb = self.prefix(&self.lambda, self.pi.bottom());
        let lt = self.prefix(&self.lambda, self.pi.top());
        let tb = self.prefix(&self.tau, self.pi.bottom());
        let tt = self.prefix(&self.tau, self.pi.top());
        let mut out = Vec::new();
        for &beta in &self.pi.bottom()[1..] {
            for &alpha in &self.pi.top()[1..] {
                out.push(Period {
                    re: lb[beta.0].clone() - &lt[alpha.0],
                    im: tb[beta.0].clone() - &tt[alpha.0],
                    kind: PeriodKind::Diagonal,
                    letters: (beta, alpha),
                });
            }
        }
        out
    }

    /// The diagonal attaining the minimum in [`Self::w_value`].
    pub fn minimizing_diagonal(&self) -> Result<Period> {
        if !in_theta(&self.pi, &self.tau) {
            return Err(Error::NotSuspension);
        }
        let mut best: Option<(Real, Period)> = None;
        for p in self.diagonals() {
            let a = p.area();
            if best.as_ref().is_none_or(|(b, _)| &a < b) {
                best = Some((a, p));
            }
        }
        Ok(best.expect("d >= 2").1)
    }

    /// `min |⟨λ,w⟩|·|⟨τ,w⟩| / area` over diagonals.
    pub fn w_value(&self) -> Result<Real> {
        let p = self.minimizing_diagonal()?;
        Ok(p.area() / self.area()?)
    }

    /// Consecutive segment sums of `ζ` along each line that are holonomies
    /// of saddle connections: the segment joining the two vertices of the
    /// polygon stays inside it, so every vertex strictly between them lies
    /// on the outer side. Sums bent at an intermediate vertex are skipped.
    pub fn cords(&self) -> Vec<Period> {
        let mut out = Vec::new();
        for (line, kind, outer) in [
            (self.pi.top(), PeriodKind::TopCord, 1),
            (self.pi.bottom(), PeriodKind::BottomCord, -1),
        ] {
            let mut vx = vec![self.prec.zero()];
            let mut vy = vec![self.prec.zero()];
            for l in line {
                vx.push(vx.last().unwrap().clone() + &self.lambda[l.0]);
                vy.push(vy.last().unwrap().clone() + &self.tau[l.0]);
            }
            for l in 0..line.len() {
                for m in l..line.len() {
                    let re = vx[m + 1].clone() - &vx[l];
                    let im = vy[m + 1].clone() - &vy[l];
                    let straight = (l + 1..=m).all(|k| {
                        let cross = re.clone() * (vy[k].clone() - &vy[l])
                            - im.clone() * (vx[k].clone() - &vx[l]);
                        if outer > 0 {
                            crate::num::is_positive(&cross)
                        } else {
                            crate::num::is_negative(&cross)
                        }
                    });
                    if straight {
                        out.push(Period {
                            re,
                            im,
                            kind,
                            letters: (line[l], line[m]),
                        });
                    }
                }
            }
        }
        out
    }
}

pub fn dot(a: &[Real], b: &[Real], prec: Precision) -> Real {
    a.iter()
        .zip(b)
        .fold(prec.zero(), |acc, (x, y)| acc + x.clone() * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::to_f64;

    fn torus() -> PermutationPair {
        PermutationPair::parse("A B/B A").unwrap()
    }

    fn f(v: &[Real]) -> Vec<f64> {
        v.iter().map(to_f64).collect()
    }

    #[test]
    fn canonical_examples() {
        let p = Precision(64);
        assert_eq!(f(&canonical_tau(&torus(), p)), vec![1.0, -1.0]);
        let s = PermutationPair::parse("A B C D/D C B A").unwrap();
        let t = canonical_tau(&s, p);
        assert_eq!(f(&t), vec![3.0, 1.0, -1.0, -3.0]);
        assert!(in_theta(&s, &t));
    }

    #[test]
    fn heights_and_area() {
        let p = Precision(64);
        let z = ZipperedDatum::from_f64(torus(), &[2.0, 1.0], &[1.0, -1.0], p).unwrap();
        assert_eq!(f(&z.heights().unwrap()), vec![1.0, 1.0]);
        assert_eq!(to_f64(&z.area().unwrap()), 3.0);
        let z = ZipperedDatum::from_f64(torus(), &[1.0, 1.0], &[1.0, -1.0], p).unwrap();
        assert_eq!(to_f64(&z.area().unwrap()), 2.0);
        let s = PermutationPair::parse("A B C D E/E D C B A").unwrap();
        let z = ZipperedDatum::new(s.clone(), vec![p.one(); 5], canonical_tau(&s, p), p).unwrap();
        assert!(z.heights().unwrap().iter().all(|h| to_f64(h) >= 1.0));
        assert!(ZipperedDatum::from_f64(torus(), &[1.0, 1.0], &[-1.0, 1.0], p).is_err());
    }

    #[test]
    fn w_examples() {
        let p = Precision(64);
        let z = ZipperedDatum::from_f64(torus(), &[2.0, 1.0], &[1.0, -1.0], p).unwrap();
        assert!((to_f64(&z.w_value().unwrap()) - 2.0 / 3.0).abs() < 1e-15);
        let v = z.minimizing_diagonal().unwrap();
        assert_eq!((to_f64(&v.re), to_f64(&v.im)), (-1.0, -2.0));
        assert_eq!(to_f64(&v.area()), 2.0);
    }

    #[test]
    fn step_example() {
        let p = Precision(64);
        let z = ZipperedDatum::from_f64(torus(), &[2.0, 1.0], &[1.0, -1.0], p).unwrap();
        let (a, n) = z.rv_step().unwrap();
        assert_eq!(a.kind, ArrowKind::Bottom);
        assert_eq!(f(&n.tau), vec![2.0, -1.0]);
        assert_eq!(to_f64(&n.area().unwrap()), 3.0);
        assert!(in_theta(&n.pi, &n.tau));
        let (b, back) = n.rv_inverse_step().unwrap();
        assert_eq!(b, a);
        assert_eq!(f(&back.lambda), vec![2.0, 1.0]);
        assert_eq!(f(&back.tau), vec![1.0, -1.0]);
        let z0 = ZipperedDatum::from_f64(torus(), &[2.0, 1.0], &[1.0, -1.0], p).unwrap();
        assert!(matches!(z0.rv_inverse_step(), Err(Error::Degenerate(_))));
    }

    #[test]
    fn cord_count() {
        let p = Precision(64);
        let z = ZipperedDatum::from_f64(torus(), &[2.0, 1.0], &[1.0, -1.0], p).unwrap();
        let c = z.cords();
        assert_eq!(c.len(), 6);
        let singles: Vec<_> = c.iter().filter(|v| v.letters.0 == v.letters.1).collect();
        assert_eq!(singles.len(), 4);
        for v in singles {
            let l = v.letters.0 .0;
            assert_eq!(to_f64(&v.re), to_f64(&z.lambda[l]));
            assert_eq!(to_f64(&v.im), to_f64(&z.tau[l]));
        }
    }

    #[test]
    fn record_round_trip() {
        let p = Precision(128);
        let z = ZipperedDatum::from_f64(torus(), &[0.4, 0.6], &[1.0, -1.0], p).unwrap();
        let rec = z.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        let back = ZipperedDatum::from_record(&serde_json::from_str(&json).unwrap(), p).unwrap();
        assert_eq!(back.to_record(), rec);
    }
}
