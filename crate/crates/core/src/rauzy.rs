//! Rauzy elementary operations, classes, paths and cocycle matrices.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::path::{Path, PathBuf};

use dashu_int::{IBig, UBig};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iet::{Iet, Letter, PermutationPair};
use crate::num::{abs, Real};

/// Type of a Rauzy arrow: which line carries the winner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArrowKind {
    #[serde(rename = "t")]
    Top,
    #[serde(rename = "b")]
    Bottom,
}

impl ArrowKind {
    pub fn as_char(self) -> char {
        match self {
            ArrowKind::Top => 't',
            ArrowKind::Bottom => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            't' => Some(ArrowKind::Top),
            'b' => Some(ArrowKind::Bottom),
            _ => None,
        }
    }

    pub fn other(self) -> Self {
        match self {
            ArrowKind::Top => ArrowKind::Bottom,
            ArrowKind::Bottom => ArrowKind::Top,
        }
    }
}

/// `R^ε(π)`: the loser moves right after the winner in the loser's line.
pub fn elementary(pi: &PermutationPair, kind: ArrowKind) -> PermutationPair {
    let (winner, loser) = winner_loser(pi, kind);
    match kind {
        ArrowKind::Top => {
            let mut bottom: Vec<Letter> = pi.bottom()[..pi.d() - 1].to_vec();
            let at = pi.pi_b(winner);
            bottom.insert(at, loser);
            pi.with_lines(pi.top().to_vec(), bottom)
        }
        ArrowKind::Bottom => {
            let mut top: Vec<Letter> = pi.top()[..pi.d() - 1].to_vec();
            let at = pi.pi_t(winner);
            top.insert(at, loser);
            pi.with_lines(top, pi.bottom().to_vec())
        }
    }
}

fn winner_loser(pi: &PermutationPair, kind: ArrowKind) -> (Letter, Letter) {
    match kind {
        ArrowKind::Top => (pi.last_top(), pi.last_bottom()),
        ArrowKind::Bottom => (pi.last_bottom(), pi.last_top()),
    }
}

/// One arrow of a Rauzy diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: PermutationPair,
    pub target: PermutationPair,
    pub kind: ArrowKind,
    pub winner: Letter,
    pub loser: Letter,
}

impl Arrow {
    pub fn new(source: &PermutationPair, kind: ArrowKind) -> Self {
        let (winner, loser) = winner_loser(source, kind);
        Arrow {
            source: source.clone(),
            target: elementary(source, kind),
            kind,
            winner,
            loser,
        }
    }
}

/// A Rauzy class with its full arrow set.
#[derive(Clone, Debug)]
pub struct RauzyClass {
    /// Members in breadth-first order from the generating pair.
    pub members: Vec<PermutationPair>,
    index: HashMap<PermutationPair, usize>,
    /// `succ[i][0]` is the target of the top arrow at member `i`, `succ[i][1]` of the bottom one.
    pub succ: Vec<[usize; 2]>,
}

impl RauzyClass {
    /// Breadth-first closure of `pi` under both elementary operations.
    pub fn generate(pi: &PermutationPair) -> Result<Self> {
        if !pi.is_admissible() {
            return Err(Error::NotAdmissible(pi.to_string()));
        }
        let mut members = vec![pi.clone()];
        let mut index = HashMap::from([(pi.clone(), 0usize)]);
        let mut succ: Vec<[usize; 2]> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        let mut pending: Vec<[Option<usize>; 2]> = vec![[None, None]];
        while let Some(i) = queue.pop_front() {
            for (k, kind) in [ArrowKind::Top, ArrowKind::Bottom].into_iter().enumerate() {
                let t = elementary(&members[i], kind);
                let j = match index.get(&t) {
                    Some(&j) => j,
                    None => {
                        let j = members.len();
                        index.insert(t.clone(), j);
                        members.push(t);
                        pending.push([None, None]);
                        queue.push_back(j);
                        j
                    }
                };
                pending[i][k] = Some(j);
            }
        }
        for p in pending {
            succ.push([p[0].unwrap(), p[1].unwrap()]);
        }
        Ok(RauzyClass {
            members,
            index,
            succ,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, pi: &PermutationPair) -> Option<usize> {
        self.index.get(pi).copied()
    }

    pub fn contains(&self, pi: &PermutationPair) -> bool {
        self.index.contains_key(pi)
    }

    /// All `2·|members|` arrows.
    pub fn arrows(&self) -> Vec<Arrow> {
        self.members
            .iter()
            .flat_map(|m| {
                [
                    Arrow::new(m, ArrowKind::Top),
                    Arrow::new(m, ArrowKind::Bottom),
                ]
            })
            .collect()
    }

    pub fn step(&self, i: usize, kind: ArrowKind) -> usize {
        self.succ[i][match kind {
            ArrowKind::Top => 0,
            ArrowKind::Bottom => 1,
        }]
    }

    /// Member indices reachable from `i`.
    pub fn reachable_from(&self, i: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[i] = true;
        let mut stack = vec![i];
        while let Some(v) = stack.pop() {
            for w in self.succ[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Canonical cache key for the class generated by `pi`.
    pub fn cache_key(pi: &PermutationPair) -> String {
        pi.to_string()
    }

    pub fn to_record(&self) -> ClassRecord {
        ClassRecord {
            alphabet: self.members[0].alphabet().to_vec(),
            members: self.members.iter().map(|m| m.to_string()).collect(),
            arrows: self
                .arrows()
                .into_iter()
                .map(|a| {
                    (
                        a.source.to_string(),
                        a.kind.as_char().to_string(),
                        a.source.name(a.winner).to_string(),
                        a.source.name(a.loser).to_string(),
                        a.target.to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_record(rec: &ClassRecord) -> Result<Self> {
        let first = rec
            .members
            .first()
            .ok_or_else(|| Error::Io("empty class record".into()))?;
        let alphabet: std::sync::Arc<[String]> = rec.alphabet.clone().into();
        let parse = |s: &str| PermutationPair::parse_with(s, &alphabet);
        let members: Vec<PermutationPair> = rec
            .members
            .iter()
            .map(|s| parse(s))
            .collect::<Result<_>>()?;
        let index: HashMap<PermutationPair, usize> = members
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut succ = vec![[usize::MAX; 2]; members.len()];
        for (src, kind, _, _, dst) in &rec.arrows {
            let s = index
                .get(&parse(src)?)
                .ok_or_else(|| Error::Io(format!("unknown member {src}")))?;
            let t = index
                .get(&parse(dst)?)
                .ok_or_else(|| Error::Io(format!("unknown member {dst}")))?;
            let k = if kind == "t" { 0 } else { 1 };
            succ[*s][k] = *t;
        }
        if succ.iter().any(|s| s.contains(&usize::MAX)) {
            return Err(Error::Io(format!("class record for {first} is incomplete")));
        }
        Ok(RauzyClass {
            members,
            index,
            succ,
        })
    }

    /// Loads the class of `pi` from `dir`, building and storing it on a miss.
    /// Writes go through a temporary file and a rename.
    pub fn load_or_build(pi: &PermutationPair, dir: &Path) -> Result<(Self, PathBuf)> {
        let path = dir.join(cache_file_name(&Self::cache_key(pi)));
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(rec) = serde_json::from_str::<ClassRecord>(&text) {
                if let Ok(class) = Self::from_record(&rec) {
                    if class.contains(pi) {
                        return Ok((class, path));
                    }
                }
            }
        }
        let class = Self::generate(pi)?;
        std::fs::create_dir_all(dir)?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let body = serde_json::to_string_pretty(&class.to_record())
            .map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(&tmp, body)?;
        std::fs::rename(&tmp, &path)?;
        Ok((class, path))
    }
}

fn cache_file_name(key: &str) -> String {
    let slug: String = key
        .chars()
        .map(|c| match c {
            ' ' => '_',
            '/' => '-',
            c if c.is_alphanumeric() => c,
            _ => 'x',
        })
        .collect();
    format!("class_{slug}.json")
}

/// JSON form of a class: `{alphabet, members, arrows: [(src, kind, winner, loser, dst)]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassRecord {
    /// Letter order used for length and suspension vectors.
    pub alphabet: Vec<String>,
    pub members: Vec<String>,
    pub arrows: Vec<(String, String, String, String, String)>,
}

/// A finite path in a Rauzy diagram.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RauzyPath {
    pub start: PermutationPair,
    pub arrows: Vec<Arrow>,
}

impl RauzyPath {
    pub fn empty(start: PermutationPair) -> Self {
        RauzyPath {
            start,
            arrows: Vec::new(),
        }
    }

    /// Builds the path from `start` following a string of `t`/`b`.
    pub fn from_kinds(start: &PermutationPair, kinds: &str) -> Result<Self> {
        let mut p = Self::empty(start.clone());
        for (i, c) in kinds.chars().enumerate() {
            let k = ArrowKind::from_char(c).ok_or_else(|| Error::Parse {
                pos: i,
                msg: format!("expected 't' or 'b', got {c:?}"),
            })?;
            p.push(k);
        }
        Ok(p)
    }

    pub fn push(&mut self, kind: ArrowKind) {
        let a = Arrow::new(&self.end(), kind);
        self.arrows.push(a);
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn d(&self) -> usize {
        self.start.d()
    }

    pub fn end(&self) -> PermutationPair {
        self.arrows
            .last()
            .map(|a| a.target.clone())
            .unwrap_or_else(|| self.start.clone())
    }

    pub fn is_closed(&self) -> bool {
        self.end() == self.start
    }

    pub fn kinds(&self) -> String {
        self.arrows.iter().map(|a| a.kind.as_char()).collect()
    }

    /// Sub-path of arrows `i..j`.
    pub fn slice(&self, i: usize, j: usize) -> RauzyPath {
        let start = if i < self.arrows.len() {
            self.arrows[i].source.clone()
        } else {
            self.end()
        };
        RauzyPath {
            start,
            arrows: self.arrows[i..j].to_vec(),
        }
    }

    /// `self ∗ other`.
    pub fn concat(&self, other: &RauzyPath) -> Result<RauzyPath> {
        if self.end() != other.start {
            return Err(Error::NotComposable(self.len()));
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().cloned());
        Ok(RauzyPath {
            start: self.start.clone(),
            arrows,
        })
    }

    /// The loop repeated `k` times.
    pub fn repeat(&self, k: usize) -> Result<RauzyPath> {
        if !self.is_closed() {
            return Err(Error::NotClosed);
        }
        let mut arrows = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            arrows.extend(self.arrows.iter().cloned());
        }
        Ok(RauzyPath {
            start: self.start.clone(),
            arrows,
        })
    }

    /// Rotation of a closed loop starting at arrow `i`.
    pub fn rotate(&self, i: usize) -> Result<RauzyPath> {
        if !self.is_closed() {
            return Err(Error::NotClosed);
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let i = i % self.len();
        let mut arrows = self.arrows[i..].to_vec();
        arrows.extend(self.arrows[..i].iter().cloned());
        Ok(RauzyPath {
            start: arrows[0].source.clone(),
            arrows,
        })
    }

    pub fn matrix(&self) -> CocycleMatrix {
        let mut m = CocycleMatrix::identity(self.d());
        for a in &self.arrows {
            m.left_mul_arrow(a);
        }
        m
    }

    pub fn classify(&self) -> PathClass {
        if self.is_empty() {
            return PathClass::default();
        }
        PathClass {
            positive: self.matrix().is_positive(),
            complete: is_complete(&self.arrows, self.d()),
            strongly_complete: complete_blocks(&self.arrows, self.d()).len() >= self.d(),
        }
    }
}

impl fmt::Debug for RauzyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RauzyPath({} @ {})", self.kinds(), self.start)
    }
}

fn is_complete(arrows: &[Arrow], d: usize) -> bool {
    let mut won = vec![false; d];
    for a in arrows {
        won[a.winner.0] = true;
    }
    won.iter().all(|&w| w)
}

/// Greedy left-to-right split into complete blocks; returns block end indices.
pub fn complete_blocks(arrows: &[Arrow], d: usize) -> Vec<usize> {
    let mut ends = Vec::new();
    let mut won = vec![false; d];
    let mut count = 0;
    for (i, a) in arrows.iter().enumerate() {
        if !won[a.winner.0] {
            won[a.winner.0] = true;
            count += 1;
        }
        if count == d {
            ends.push(i + 1);
            won.iter_mut().for_each(|w| *w = false);
            count = 0;
        }
    }
    ends
}

/// Positivity and completeness flags of a path.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PathClass {
    pub positive: bool,
    pub complete: bool,
    pub strongly_complete: bool,
}

/// The cocycle matrix `B_γ`, stored row-major.
///
/// The elementary matrix of an arrow satisfies `B e_winner = e_winner + e_loser`
/// and `B_{γ1 ∗ γ2} = B_{γ2} B_{γ1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CocycleMatrix {
    d: usize,
    entries: Vec<UBig>,
}

impl CocycleMatrix {
    pub fn identity(d: usize) -> Self {
        let mut entries = vec![UBig::ZERO; d * d];
        for i in 0..d {
            entries[i * d + i] = UBig::ONE;
        }
        CocycleMatrix { d, entries }
    }

    pub fn of_arrow(a: &Arrow) -> Self {
        let mut m = Self::identity(a.source.d());
        m.left_mul_arrow(a);
        m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, row: Letter, col: Letter) -> &UBig {
        &self.entries[row.0 * self.d + col.0]
    }

    pub fn entry(&self, row: usize, col: usize) -> &UBig {
        &self.entries[row * self.d + col]
    }

    /// `self ← B_a · self`: row of the loser gains the row of the winner.
    pub fn left_mul_arrow(&mut self, a: &Arrow) {
        let d = self.d;
        let (w, l) = (a.winner.0, a.loser.0);
        for j in 0..d {
            let add = self.entries[w * d + j].clone();
            self.entries[l * d + j] += add;
        }
    }

    /// `self ← self · B_a`: column of the winner gains the column of the loser.
    pub fn right_mul_arrow(&mut self, a: &Arrow) {
        let d = self.d;
        let (w, l) = (a.winner.0, a.loser.0);
        for i in 0..d {
            let add = self.entries[i * d + l].clone();
            self.entries[i * d + w] += add;
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &CocycleMatrix) -> CocycleMatrix {
        let d = self.d;
        let mut entries = vec![UBig::ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if *a == UBig::ZERO {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * &other.entries[k * d + j];
                }
            }
        }
        CocycleMatrix { d, entries }
    }

    /// Max entry.
    pub fn norm(&self) -> UBig {
        self.entries.iter().max().cloned().unwrap_or(UBig::ZERO)
    }

    pub fn norm_f64(&self) -> f64 {
        self.norm().to_f64().value()
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|e| *e > UBig::ZERO)
    }

    /// `q = B·1`, the return times.
    pub fn row_sums(&self) -> Vec<UBig> {
        (0..self.d)
            .map(|i| self.entries[i * self.d..(i + 1) * self.d].iter().sum())
            .collect()
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> IBig {
        let d = self.d;
        let mut a: Vec<IBig> = self.entries.iter().map(|e| IBig::from(e.clone())).collect();
        let mut sign = IBig::ONE;
        let mut prev = IBig::ONE;
        for k in 0..d {
            if a[k * d + k] == IBig::ZERO {
                let Some(r) = (k + 1..d).find(|&r| a[r * d + k] != IBig::ZERO) else {
                    return IBig::ZERO;
                };
                for j in 0..d {
                    a.swap(k * d + j, r * d + j);
                }
                sign = -sign;
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    let v = (&a[i * d + j] * &a[k * d + k] - &a[i * d + k] * &a[k * d + j]) / &prev;
                    a[i * d + j] = v;
                }
            }
            prev = a[k * d + k].clone();
        }
        sign * prev
    }

    /// `ᵗB v` for a real vector.
    pub fn transpose_apply(&self, v: &[Real]) -> Vec<Real> {
        let d = self.d;
        (0..d)
            .map(|j| {
                let mut acc = v[0].clone() * Real::from(self.entries[j].clone());
                for i in 1..d {
                    acc += v[i].clone() * Real::from(self.entries[i * d + j].clone());
                }
                acc
            })
            .collect()
    }

    /// Entries as `f64`, row-major.
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.d)
            .map(|i| {
                (0..self.d)
                    .map(|j| self.entries[i * self.d + j].to_f64().value())
                    .collect()
            })
            .collect()
    }
}

/// Applies `ᵗB_γ⁻¹` arrow by arrow: `v_winner -= v_loser`.
pub fn apply_inverse_transpose(path_arrows: &[Arrow], v: &mut [Real]) {
    for a in path_arrows {
        let l = v[a.loser.0].clone();
        v[a.winner.0] -= l;
    }
}

/// Applies `ᵗB_γ`: arrows in reverse order, `v_winner += v_loser`.
pub fn apply_transpose(path_arrows: &[Arrow], v: &mut [Real]) {
    for a in path_arrows.iter().rev() {
        let l = v[a.loser.0].clone();
        v[a.winner.0] += l;
    }
}

/// Type of the next Rauzy step for lengths `lambda`, or `None` on a tie.
///
/// Ties are decided with tolerance `tol` relative to `|λ|`.
pub fn step_kind(pi: &PermutationPair, lambda: &[Real], tol: &Real) -> Option<ArrowKind> {
    let lt = &lambda[pi.last_top().0];
    let lb = &lambda[pi.last_bottom().0];
    let total = lambda.iter().fold(Real::ZERO, |a, x| a + x);
    let diff = lt.clone() - lb;
    if abs(&diff) <= tol.clone() * total {
        None
    } else if diff > Real::ZERO {
        Some(ArrowKind::Top)
    } else {
        Some(ArrowKind::Bottom)
    }
}

/// One Rauzy-Veech step of an IET.
pub fn rauzy_step(t: &Iet) -> Result<(Arrow, Iet)> {
    let kind =
        step_kind(&t.pi, &t.lambda, &t.tolerance()).ok_or(Error::ConnectionStop { step: 0 })?;
    let a = Arrow::new(&t.pi, kind);
    let mut lambda = t.lambda.clone();
    let l = lambda[a.loser.0].clone();
    lambda[a.winner.0] -= l;
    let next = Iet {
        pi: a.target.clone(),
        lambda,
        prec: t.prec,
    };
    Ok((a, next))
}

/// `r` Rauzy-Veech steps. On a tie the error carries the step index reached.
pub fn induce(t: &Iet, r: usize) -> Result<(RauzyPath, Iet)> {
    let mut path = RauzyPath::empty(t.pi.clone());
    let mut cur = t.clone();
    for step in 0..r {
        let (a, next) = rauzy_step(&cur).map_err(|_| Error::ConnectionStop { step })?;
        path.arrows.push(a);
        cur = next;
    }
    Ok((path, cur))
}

/// The minimal positive initial path `ν(T)` and the IET `Q_+(T)` it leads to.
pub fn minimal_positive_prefix(t: &Iet, max_steps: usize) -> Result<(RauzyPath, Iet)> {
    let mut path = RauzyPath::empty(t.pi.clone());
    let mut m = CocycleMatrix::identity(t.d());
    let mut cur = t.clone();
    for step in 0..max_steps {
        let (a, next) = rauzy_step(&cur).map_err(|_| Error::ConnectionStop { step })?;
        m.left_mul_arrow(&a);
        path.arrows.push(a);
        cur = next;
        if m.is_positive() {
            return Ok((path, cur));
        }
    }
    Err(Error::InsufficientWindow(format!(
        "no positive prefix within {max_steps} steps"
    )))
}

/// `P_0, …, P_{k-1}` of the positive acceleration.
pub fn positive_acceleration(t: &Iet, k: usize) -> Result<Vec<CocycleMatrix>> {
    let mut out = Vec::with_capacity(k);
    let mut cur = t.clone();
    let limit = 10_000;
    for _ in 0..k {
        let (path, next) = minimal_positive_prefix(&cur, limit)?;
        out.push(path.matrix());
        cur = next;
    }
    Ok(out)
}

/// `Δ(T) = max λ_α / λ_β`.
pub fn distortion(t: &Iet) -> Real {
    let max = crate::num::max_of(&t.lambda).unwrap();
    let min = crate::num::min_of(&t.lambda).unwrap();
    max / min
}

/// For each start `i`, the least `j` with `γ(i..j)` positive.
fn positive_ends(path: &RauzyPath) -> Vec<Option<usize>> {
    let n = path.len();
    let mut out = vec![None; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut m = CocycleMatrix::identity(path.d());
        for j in i..n {
            m.left_mul_arrow(&path.arrows[j]);
            if m.is_positive() {
                *slot = Some(j + 1);
                break;
            }
        }
    }
    out
}

/// Minimal positive sub-paths as `(i, j)` arrow ranges.
pub fn minimal_positive_subpaths(path: &RauzyPath) -> Vec<(usize, usize)> {
    let ends = positive_ends(path);
    let n = path.len();
    let mut out = Vec::new();
    for i in 0..n {
        if let Some(j) = ends[i] {
            let next = if i + 1 < n { ends[i + 1] } else { None };
            if next != Some(j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// `N(γ)`: the largest norm among minimal positive sub-paths, `None` if there are none.
pub fn n_gamma(path: &RauzyPath) -> Option<UBig> {
    minimal_positive_subpaths(path)
        .into_iter()
        .map(|(i, j)| path.slice(i, j).matrix().norm())
        .max()
}

/// `N` of a closed loop, taken over its bi-infinite periodization.
pub fn n_gamma_periodic(lp: &RauzyPath) -> Result<Option<UBig>> {
    let n = lp.len();
    let tripled = lp.repeat(3)?;
    let subs = minimal_positive_subpaths(&tripled);
    Ok(subs
        .into_iter()
        .filter(|&(i, j)| i >= n && i < 2 * n && j - i < 2 * n)
        .map(|(i, j)| tripled.slice(i, j).matrix().norm())
        .max())
}

/// Result of [`packet_decompose`].
#[derive(Clone, Debug)]
pub struct Packets {
    pub packets: Vec<RauzyPath>,
    /// Trailing non-positive piece, possibly empty.
    pub remainder: RauzyPath,
}

/// Splits a path into consecutive positive packets, cutting at the earliest
/// index where the running packet becomes positive.
pub fn packet_decompose(path: &RauzyPath, m: f64) -> Result<Packets> {
    if let Some(n) = n_gamma(path) {
        let nf = n.to_f64().value();
        if nf >= m {
            return Err(Error::NormExceeded {
                norm: n.to_string(),
                bound: m.to_string(),
            });
        }
    }
    let mut packets = Vec::new();
    let mut i = 0;
    let mut cur = CocycleMatrix::identity(path.d());
    for j in 0..path.len() {
        cur.left_mul_arrow(&path.arrows[j]);
        if cur.is_positive() {
            packets.push(path.slice(i, j + 1));
            i = j + 1;
            cur = CocycleMatrix::identity(path.d());
        }
    }
    Ok(Packets {
        packets,
        remainder: path.slice(i, path.len()),
    })
}

/// Hilbert projective distance `log max (x_α y_β)/(x_β y_α)`.
pub fn hilbert_distance(x: &[f64], y: &[f64]) -> f64 {
    let ratios: Vec<f64> = x.iter().zip(y).map(|(a, b)| a / b).collect();
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    (max / min).ln()
}

/// Hilbert distance for high-precision vectors.
pub fn hilbert_distance_real(x: &[Real], y: &[Real]) -> Real {
    let ratios: Vec<Real> = x.iter().zip(y).map(|(a, b)| a.clone() / b).collect();
    let max = crate::num::max_of(&ratios).unwrap();
    let min = crate::num::min_of(&ratios).unwrap();
    (max / min).ln()
}

/// Birkhoff contraction bound `(√e^D − 1)/(√e^D + 1)` for diameter `D`.
pub fn birkhoff_bound(diameter: f64) -> f64 {
    let s = (diameter / 2.0).exp();
    (s - 1.0) / (s + 1.0)
}

/// Projective diameter of the image of the positive cone under `ᵗB`.
pub fn image_diameter(m: &CocycleMatrix) -> f64 {
    // the image cone is spanned by the rows of B (columns of ᵗB)
    let rows = m.to_f64();
    let mut d = 0f64;
    for a in &rows {
        for b in &rows {
            d = d.max(hilbert_distance(a, b));
        }
    }
    d
}

/// `true` if every coordinate of `v` exceeds `tol` relative to the sum.
pub fn all_clear(v: &[Real], tol: &Real) -> bool {
    let total = v.iter().fold(Real::ZERO, |a, x| a + x);
    v.iter().all(|x| x > &(tol.clone() * &total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{to_f64, Precision};

    fn pp(s: &str) -> PermutationPair {
        PermutationPair::parse(s).unwrap()
    }

    #[test]
    fn elementary_examples() {
        let t = pp("A B/B A");
        assert_eq!(elementary(&t, ArrowKind::Top), t);
        assert_eq!(elementary(&t, ArrowKind::Bottom), t);
        let s = pp("A B C D/D C B A");
        let named = |x: &str| PermutationPair::parse_with(x, s.alphabet()).unwrap();
        assert_eq!(elementary(&s, ArrowKind::Top), named("A B C D/D A C B"));
        assert_eq!(elementary(&s, ArrowKind::Bottom), named("A D B C/D C B A"));
    }

    #[test]
    fn class_sizes() {
        let c = RauzyClass::generate(&pp("A B/B A")).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.arrows().len(), 2);
        let c = RauzyClass::generate(&pp("A B C D/D C B A")).unwrap();
        assert_eq!(c.len(), 7);
        for i in 0..c.len() {
            assert!(c.reachable_from(i).iter().all(|&r| r));
        }
        assert!(c.members.iter().all(|m| m.is_admissible()));
        assert!(RauzyClass::generate(&pp("A B/A B")).is_err());
    }

    #[test]
    fn class_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let pi = pp("A B C D/D C B A");
        let (c1, path) = RauzyClass::load_or_build(&pi, dir.path()).unwrap();
        assert!(path.exists());
        let (c2, _) = RauzyClass::load_or_build(&pi, dir.path()).unwrap();
        assert_eq!(c1.members, c2.members);
        assert_eq!(c1.succ, c2.succ);
    }

    #[test]
    fn matrix_examples() {
        let t = pp("A B/B A");
        assert_eq!(
            RauzyPath::empty(t.clone()).matrix(),
            CocycleMatrix::identity(2)
        );
        let p = RauzyPath::from_kinds(&t, "ttttt").unwrap();
        let m = p.matrix();
        // winner B, loser A: the entry in row A, column B counts the top arrows
        assert_eq!(m.entry(0, 1), &UBig::from(5u8));
        assert_eq!(m.entry(1, 0), &UBig::ZERO);
        let m = RauzyPath::from_kinds(&t, "tb").unwrap().matrix();
        let mut e: Vec<u32> = (0..4)
            .map(|k| m.entry(k / 2, k % 2).to_f64().value() as u32)
            .collect();
        e.sort();
        assert_eq!(e, vec![1, 1, 1, 2]);
        assert_eq!(m.determinant(), IBig::ONE);
        assert!(RauzyPath::from_kinds(&t, "tb").unwrap().classify().positive);
        assert_eq!(RauzyPath::empty(t).classify(), PathClass::default());
    }

    #[test]
    fn step_examples() {
        let p = Precision(128);
        let t = Iet::from_f64(pp("A B/B A"), &[0.4, 0.6], p).unwrap();
        let (a, n) = rauzy_step(&t).unwrap();
        assert_eq!(a.kind, ArrowKind::Top);
        assert!((to_f64(&n.lambda[0]) - 0.4).abs() < 1e-15);
        assert!((to_f64(&n.lambda[1]) - 0.2).abs() < 1e-15);
        let t = Iet::from_f64(pp("A B/B A"), &[1.0, 1.0], p).unwrap();
        assert!(matches!(rauzy_step(&t), Err(Error::ConnectionStop { .. })));
        let s5 = p.sqrt_int(5);
        let phi = (p.one() + &s5) / p.int(2);
        let g = Iet::new(
            pp("A B/B A"),
            vec![phi.clone() - p.one(), p.int(2) - &phi],
            p,
        )
        .unwrap();
        let (path, _) = induce(&g, 40).unwrap();
        let k = path.kinds();
        assert!(k.as_bytes().windows(2).all(|w| w[0] != w[1]), "{k}");
    }

    #[test]
    fn packets_alternating() {
        let t = pp("A B/B A");
        let p = RauzyPath::from_kinds(&t, &"tb".repeat(6)).unwrap();
        let d = packet_decompose(&p, 10.0).unwrap();
        assert_eq!(d.packets.len(), 6);
        assert!(d
            .packets
            .iter()
            .all(|q| q.len() == 2 && q.matrix().norm_f64() < 100.0));
        assert!(d.remainder.is_empty());
        let p = RauzyPath::from_kinds(&t, "ttt").unwrap();
        let d = packet_decompose(&p, 10.0).unwrap();
        assert!(d.packets.is_empty());
        assert_eq!(d.remainder.len(), 3);
        assert!(matches!(
            packet_decompose(&RauzyPath::from_kinds(&t, "tb").unwrap(), 2.0),
            Err(Error::NormExceeded { .. })
        ));
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_distance(&[1.0, 2.0], &[1.0, 2.0]), 0.0);
        assert!((hilbert_distance(&[1.0, 2.0], &[2.0, 1.0]) - 4f64.ln()).abs() < 1e-15);
        let a = hilbert_distance(&[1.0, 3.0, 2.0], &[2.0, 1.0, 5.0]);
        let b = hilbert_distance(&[7.0, 21.0, 14.0], &[0.2, 0.1, 0.5]);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn acceleration_and_distortion() {
        let p = Precision(256);
        let s5 = p.sqrt_int(5);
        let phi = (p.one() + &s5) / p.int(2);
        let g = Iet::new(
            pp("A B/B A"),
            vec![phi.clone() - p.one(), p.int(2) - &phi],
            p,
        )
        .unwrap();
        let ps = positive_acceleration(&g, 20).unwrap();
        assert!(ps.iter().all(|m| m.norm() == UBig::from(2u8)));
        let t = Iet::from_f64(pp("A B C/C B A"), &[1.0, 1.0, 1.0], p).unwrap();
        assert_eq!(to_f64(&distortion(&t)), 1.0);
        let t = Iet::from_f64(pp("A B/B A"), &[2.0, 1.0], p).unwrap();
        assert_eq!(to_f64(&distortion(&t)), 2.0);
    }
}
