//! Square-tiled surfaces: gluings, strata, reduction, the `SL(2,Z)` action,
//! orbit graphs and the Hall-ray construction.

mod hall;
mod orbit;

pub use hall::{hall_ray_alpha, r_value, skew_l, HallCertificate, HallRay, SkewReport};
pub use orbit::{CuspTable, EvenGraph, MultiplicityProfile, OrbitGraph};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generators of `SL(2,Z)` and their inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    T,
    TInv,
    V,
    VInv,
}

impl Move {
    pub fn inverse(self) -> Move {
        match self {
            Move::T => Move::TInv,
            Move::TInv => Move::T,
            Move::V => Move::VInv,
            Move::VInv => Move::V,
        }
    }

    /// The matrix `[[a, b], [c, d]]`.
    pub fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            Move::T => [[1, 1], [0, 1]],
            Move::TInv => [[1, -1], [0, 1]],
            Move::V => [[1, 0], [1, 1]],
            Move::VInv => [[1, 0], [-1, 1]],
        }
    }
}

/// Product of the matrices of a word, left to right.
pub fn word_matrix(word: &[Move]) -> [[i64; 2]; 2] {
    word.iter().fold([[1, 0], [0, 1]], |m, g| {
        let a = g.matrix();
        [
            [
                m[0][0] * a[0][0] + m[0][1] * a[1][0],
                m[0][0] * a[0][1] + m[0][1] * a[1][1],
            ],
            [
                m[1][0] * a[0][0] + m[1][1] * a[1][0],
                m[1][0] * a[0][1] + m[1][1] * a[1][1],
            ],
        ]
    })
}

/// Genus and cone data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub genus: usize,
    /// Orders `k_i` of the zeros (cone angle `2π(k_i+1)`), descending.
    pub zeros: Vec<usize>,
    /// Number of distinct corner points.
    pub vertices: usize,
}

/// Hermite normal form `{(a, b), (0, d)}` of a sublattice of `Z²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

impl Lattice {
    pub fn index(&self) -> i64 {
        self.a * self.d
    }

    pub fn contains(&self, v: (i64, i64)) -> bool {
        if v.0 % self.a != 0 {
            return false;
        }
        let y = v.1 - (v.0 / self.a) * self.b;
        y % self.d == 0
    }

    fn from_generators(gens: impl IntoIterator<Item = (i64, i64)>) -> Option<Lattice> {
        // rows (a, b), (0, d) with a, d ≥ 0; zero means "not yet spanned"
        let (mut a, mut b, mut d) = (0i64, 0i64, 0i64);
        for (x, y) in gens {
            if x == 0 {
                d = gcd(d, y);
                continue;
            }
            if a == 0 {
                (a, b) = if x < 0 { (-x, -y) } else { (x, y) };
                continue;
            }
            let (g, s, t) = ext_gcd(x, a);
            let nb = s * y + t * b;
            // what is left after eliminating the first coordinate
            let r1 = (x / g) * nb - y;
            let r2 = (a / g) * nb - b;
            a = g.abs();
            b = if g < 0 { -nb } else { nb };
            d = gcd(gcd(d, r1), r2);
        }
        if a == 0 || d == 0 {
            return None;
        }
        Some(Lattice {
            a,
            b: b.rem_euclid(d),
            d,
        })
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, s, t)` with `s·x + t·y = g`.
fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    if y == 0 {
        return (x, 1, 0);
    }
    let (g, s, t) = ext_gcd(y, x.rem_euclid(y));
    (g, t, s - x.div_euclid(y) * t)
}

/// Square `i` has right neighbour `right[i]` and upper neighbour `up[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "OrigamiRecord", into = "OrigamiRecord")]
pub struct Origami {
    right: Vec<usize>,
    up: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct OrigamiRecord {
    n: usize,
    right: Vec<usize>,
    up: Vec<usize>,
}

impl TryFrom<OrigamiRecord> for Origami {
    type Error = Error;

    fn try_from(r: OrigamiRecord) -> Result<Self> {
        if r.right.len() != r.n {
            return Err(Error::InvalidOrigami(format!(
                "n = {} but right has {} entries",
                r.n,
                r.right.len()
            )));
        }
        Origami::new(r.right, r.up)
    }
}

impl From<Origami> for OrigamiRecord {
    fn from(o: Origami) -> Self {
        OrigamiRecord {
            n: o.n(),
            right: o.right,
            up: o.up,
        }
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Parses cycle notation such as `(0 1 2)(3,4)`; unlisted points are fixed.
pub fn parse_cycles(s: &str, n: usize) -> Result<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut rest = s.trim();
    let start_len = s.len();
    while !rest.is_empty() {
        let pos = start_len - rest.len();
        let body = rest.strip_prefix('(').ok_or_else(|| Error::Parse {
            pos,
            msg: "expected '('".into(),
        })?;
        let close = body.find(')').ok_or_else(|| Error::Parse {
            pos,
            msg: "unclosed cycle".into(),
        })?;
        let items: Vec<usize> = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>().map_err(|e| Error::Parse {
                    pos: pos + 1,
                    msg: format!("{t:?}: {e}"),
                })
            })
            .collect::<Result<_>>()?;
        for (k, &x) in items.iter().enumerate() {
            if x >= n {
                return Err(Error::Parse {
                    pos,
                    msg: format!("point {x} out of range for n = {n}"),
                });
            }
            p[x] = items[(k + 1) % items.len()];
        }
        rest = body[close + 1..].trim_start();
    }
    if !is_permutation(&p) {
        return Err(Error::Parse {
            pos: 0,
            msg: "cycles are not disjoint".into(),
        });
    }
    Ok(p)
}

impl Origami {
    pub fn new(right: Vec<usize>, up: Vec<usize>) -> Result<Self> {
        if right.is_empty() || right.len() != up.len() {
            return Err(Error::InvalidOrigami(
                "permutations must be non-empty and of equal size".into(),
            ));
        }
        if !is_permutation(&right) || !is_permutation(&up) {
            return Err(Error::InvalidOrigami(
                "right and up must be permutations".into(),
            ));
        }
        let o = Origami { right, up };
        if !o.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(o)
    }

    pub fn torus() -> Self {
        Origami {
            right: vec![0],
            up: vec![0],
        }
    }

    /// Builds from cycle notation for `right` and `up`.
    pub fn from_cycles(n: usize, right: &str, up: &str) -> Result<Self> {
        Origami::new(parse_cycles(right, n)?, parse_cycles(up, n)?)
    }

    pub fn n(&self) -> usize {
        self.right.len()
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn up(&self) -> &[usize] {
        &self.up
    }

    fn is_connected(&self) -> bool {
        let n = self.n();
        let (ri, ui) = (invert(&self.right), invert(&self.up));
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(s) = stack.pop() {
            for t in [self.right[s], self.up[s], ri[s], ui[s]] {
                if !seen[t] {
                    seen[t] = true;
                    count += 1;
                    stack.push(t);
                }
            }
        }
        count == n
    }

    /// Relabeling by breadth-first search from `start`, right before up.
    fn relabel_from(&self, start: usize) -> Origami {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[start] = 0;
        order.push(start);
        let mut k = 0;
        while k < order.len() {
            let v = order[k];
            k += 1;
            for w in [self.right[v], self.up[v]] {
                if label[w] == usize::MAX {
                    label[w] = order.len();
                    order.push(w);
                }
            }
        }
        let mut right = vec![0; n];
        let mut up = vec![0; n];
        for &v in &order {
            right[label[v]] = label[self.right[v]];
            up[label[v]] = label[self.up[v]];
        }
        Origami { right, up }
    }

    /// Lexicographically least relabeling over all base squares.
    pub fn canonical(&self) -> Origami {
        (0..self.n()).map(|s| self.relabel_from(s)).min().unwrap()
    }

    pub fn is_isomorphic(&self, other: &Origami) -> bool {
        self.n() == other.n() && self.canonical() == other.canonical()
    }

    /// Counterclockwise turn around the lower-left corner of each square:
    /// left, down, right, up.
    pub fn corner_permutation(&self) -> Vec<usize> {
        let (ri, ui) = (invert(&self.right), invert(&self.up));
        (0..self.n())
            .map(|s| self.up[self.right[ui[ri[s]]]])
            .collect()
    }

    /// Corner point id of the lower-left corner of every square.
    fn corner_ids(&self) -> (Vec<usize>, Vec<usize>) {
        let sigma = self.corner_permutation();
        let mut id = vec![usize::MAX; self.n()];
        let mut sizes = Vec::new();
        for s in 0..self.n() {
            if id[s] != usize::MAX {
                continue;
            }
            let mut len = 0;
            let mut t = s;
            while id[t] == usize::MAX {
                id[t] = sizes.len();
                len += 1;
                t = sigma[t];
            }
            sizes.push(len);
        }
        (id, sizes)
    }

    pub fn stratum(&self) -> Stratum {
        let (_, sizes) = self.corner_ids();
        let mut zeros: Vec<usize> = sizes.iter().filter(|&&k| k > 1).map(|k| k - 1).collect();
        zeros.sort_unstable_by(|a, b| b.cmp(a));
        let genus = zeros.iter().sum::<usize>() / 2 + 1;
        Stratum {
            genus,
            zeros,
            vertices: sizes.len(),
        }
    }

    /// Squares whose lower-left corner is a cone point; in genus 1 every
    /// corner counts.
    pub fn marked_corners(&self) -> Vec<bool> {
        let (id, sizes) = self.corner_ids();
        if self.stratum().genus == 1 {
            return vec![true; self.n()];
        }
        id.iter().map(|&i| sizes[i] > 1).collect()
    }

    fn min_walk(&self, step: &[usize]) -> usize {
        let marked = self.marked_corners();
        let mut best = usize::MAX;
        for s in 0..self.n() {
            if !marked[s] {
                continue;
            }
            let mut t = step[s];
            let mut k = 1;
            while !marked[t] {
                t = step[t];
                k += 1;
            }
            best = best.min(k);
        }
        best
    }

    /// `m_X(0)`: shortest vertical saddle connection, in squares.
    pub fn vertical_multiplicity(&self) -> usize {
        self.min_walk(&self.up)
    }

    /// `m_X(∞)`: shortest horizontal saddle connection, in squares.
    pub fn horizontal_multiplicity(&self) -> usize {
        self.min_walk(&self.right)
    }

    /// Position of the lower-left corner of each square along a spanning tree.
    fn development(&self) -> Vec<(i64, i64)> {
        let n = self.n();
        let (ri, ui) = (invert(&self.right), invert(&self.up));
        let mut pos = vec![None; n];
        pos[0] = Some((0i64, 0i64));
        let mut stack = vec![0];
        while let Some(s) = stack.pop() {
            let (x, y) = pos[s].unwrap();
            for (t, p) in [
                (self.right[s], (x + 1, y)),
                (self.up[s], (x, y + 1)),
                (ri[s], (x - 1, y)),
                (ui[s], (x, y - 1)),
            ] {
                if pos[t].is_none() {
                    pos[t] = Some(p);
                    stack.push(t);
                }
            }
        }
        pos.into_iter().map(Option::unwrap).collect()
    }

    /// Lattice spanned by holonomies of saddle connections. In genus 1 the
    /// surface is viewed as a torus with a single marked point.
    pub fn lattice(&self) -> Lattice {
        let pos = self.development();
        let mut gens = Vec::new();
        for s in 0..self.n() {
            let (x, y) = pos[s];
            let (rx, ry) = pos[self.right[s]];
            let (ux, uy) = pos[self.up[s]];
            gens.push((x + 1 - rx, y - ry));
            gens.push((x - ux, y + 1 - uy));
        }
        if self.stratum().genus > 1 {
            let marked = self.marked_corners();
            let first = marked.iter().position(|&m| m).unwrap();
            for s in 0..self.n() {
                if marked[s] {
                    gens.push((pos[s].0 - pos[first].0, pos[s].1 - pos[first].1));
                }
            }
        }
        Lattice::from_generators(gens)
            .expect("periods of a connected origami span a rank-two lattice")
    }

    pub fn is_reduced(&self) -> bool {
        self.lattice().index() == 1
    }

    /// The reduced origami obtained by sending a basis of the period lattice
    /// to the standard basis.
    pub fn reduce(&self) -> Origami {
        let lat = self.lattice();
        if lat.index() == 1 {
            return self.canonical();
        }
        let pos = self.development();
        let fiber: Vec<usize> = (0..self.n()).filter(|&s| lat.contains(pos[s])).collect();
        let index_of = |s: usize| {
            fiber
                .iter()
                .position(|&t| t == s)
                .expect("walk ends in the fiber")
        };
        let f1 = (lat.a, lat.b);
        let f2 = (0, lat.d);
        let right: Vec<usize> = fiber.iter().map(|&s| index_of(self.walk(s, f1))).collect();
        let up: Vec<usize> = fiber.iter().map(|&s| index_of(self.walk(s, f2))).collect();
        Origami::new(right, up)
            .expect("cover of a connected surface")
            .canonical()
    }

    /// Square reached from a generic interior point of `s` after moving by
    /// the integer vector `v`.
    fn walk(&self, s: usize, v: (i64, i64)) -> usize {
        let (ri, ui) = (invert(&self.right), invert(&self.up));
        // generic base point inside the square
        let (bx, by) = (0.381_966_011_250_105_1_f64, 0.236_067_977_499_789_7_f64);
        let mut events: Vec<(f64, bool)> = Vec::new();
        let (vx, vy) = (v.0 as f64, v.1 as f64);
        for k in 1..=v.0.abs() {
            let line = if v.0 > 0 { k as f64 } else { 1.0 - k as f64 };
            events.push(((line - bx) / vx, true));
        }
        for k in 1..=v.1.abs() {
            let line = if v.1 > 0 { k as f64 } else { 1.0 - k as f64 };
            events.push(((line - by) / vy, false));
        }
        events.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut cur = s;
        for (_, horizontal_move) in events {
            cur = match (
                horizontal_move,
                horizontal_move && v.0 > 0,
                !horizontal_move && v.1 > 0,
            ) {
                (true, true, _) => self.right[cur],
                (true, false, _) => ri[cur],
                (false, _, true) => self.up[cur],
                (false, _, false) => ui[cur],
            };
        }
        cur
    }

    /// `g·X` for a single generator.
    pub fn act(&self, g: Move) -> Origami {
        let (ri, ui) = (invert(&self.right), invert(&self.up));
        let n = self.n();
        let (right, up) = match g {
            Move::T => (self.right.clone(), (0..n).map(|s| self.up[ri[s]]).collect()),
            Move::TInv => (
                self.right.clone(),
                (0..n).map(|s| self.up[self.right[s]]).collect(),
            ),
            Move::V => ((0..n).map(|s| self.right[ui[s]]).collect(), self.up.clone()),
            Move::VInv => (
                (0..n).map(|s| self.right[self.up[s]]).collect(),
                self.up.clone(),
            ),
        };
        Origami { right, up }.canonical()
    }

    /// `g_1 g_2 … g_k · X`: the last letter acts first.
    pub fn act_word(&self, word: &[Move]) -> Origami {
        word.iter().rev().fold(self.canonical(), |o, &g| o.act(g))
    }

    /// Quarter turn counterclockwise: right becomes up.
    pub fn rotate(&self) -> Origami {
        Origami {
            right: invert(&self.up),
            up: self.right.clone(),
        }
        .canonical()
    }

    /// `m_X(p/q)` for the direction of co-slope `p/q` (`q = 0` is horizontal).
    pub fn multiplicity(&self, p: i64, q: i64) -> Result<usize> {
        if gcd(p, q) != 1 {
            return Err(Error::OutOfRange(format!("{p}/{q} is not in lowest terms")));
        }
        if q == 0 {
            return Ok(self.horizontal_multiplicity());
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let a0 = p.div_euclid(q);
        let mut digits = Vec::new();
        let (mut num, mut den) = (q, p.rem_euclid(q));
        while den != 0 {
            digits.push(num / den);
            (num, den) = (den, num % den);
        }
        // g^{-1}·X with g = T^{a0} V^{a1} T^{a2} …
        let mut y = self.canonical();
        let step = if a0 >= 0 { Move::TInv } else { Move::T };
        for _ in 0..a0.unsigned_abs() {
            y = y.act(step);
        }
        for (k, &a) in digits.iter().enumerate() {
            let g = if k % 2 == 0 { Move::VInv } else { Move::TInv };
            for _ in 0..a {
                y = y.act(g);
            }
        }
        Ok(if digits.len() % 2 == 0 {
            y.vertical_multiplicity()
        } else {
            y.horizontal_multiplicity()
        })
    }
}

impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={:?} u={:?}", self.right, self.up)
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - k, k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// All connected origamis with `n` squares up to isomorphism, in canonical
/// form and sorted. Every conjugacy class of `right` is represented once, so
/// the scan costs `p(n)·n!` canonicalizations.
pub fn enumerate_origamis(n: usize) -> Vec<Origami> {
    let mut found = std::collections::BTreeSet::new();
    for shape in partitions(n, n) {
        let mut right = vec![0; n];
        let mut start = 0;
        for len in shape {
            for k in 0..len {
                right[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        let mut up: Vec<usize> = (0..n).collect();
        loop {
            let o = Origami {
                right: right.clone(),
                up: up.clone(),
            };
            if o.is_connected() {
                found.insert(o.canonical());
            }
            if !next_permutation(&mut up) {
                break;
            }
        }
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2_example() -> Origami {
        // L-shaped 3-square origami in H(2)
        Origami::new(vec![1, 0, 2], vec![2, 1, 0]).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(
            Origami::torus().stratum(),
            Stratum {
                genus: 1,
                zeros: vec![],
                vertices: 1
            }
        );
        let o = Origami::new(vec![1, 2, 0], vec![0, 1, 2]).unwrap();
        assert_eq!(o.stratum().genus, 1);
        assert_eq!(h2_example().stratum().zeros, vec![2]);
        assert!(matches!(
            Origami::new(vec![0, 1], vec![0, 1]),
            Err(Error::NotConnected)
        ));
        assert!(Origami::new(vec![0, 0], vec![0, 1]).is_err());
    }

    #[test]
    fn cycles() {
        assert_eq!(parse_cycles("(0 1 2)", 4).unwrap(), vec![1, 2, 0, 3]);
        assert_eq!(parse_cycles("(0,3)(1 2)", 4).unwrap(), vec![3, 2, 1, 0]);
        assert!(parse_cycles("(0 1", 3).is_err());
        assert!(parse_cycles("(0 5)", 3).is_err());
        let o = Origami::from_cycles(3, "(0 1)", "(0 2)").unwrap();
        assert!(o.is_isomorphic(&h2_example()));
    }

    #[test]
    fn reduction() {
        assert!(Origami::torus().is_reduced());
        let cover = Origami::new(vec![0, 1], vec![1, 0]).unwrap();
        assert_eq!(cover.lattice(), Lattice { a: 1, b: 0, d: 2 });
        assert!(!cover.is_reduced());
        assert_eq!(cover.reduce(), Origami::torus());
        assert!(h2_example().is_reduced());
        // a 2×1 cover of the L-shaped surface stretched horizontally
        let wide = Origami::new(vec![1, 0, 3, 2, 4, 5], vec![0, 1, 2, 3, 4, 5]);
        assert!(wide.is_err());
    }

    #[test]
    fn lattice_hnf() {
        let l = Lattice::from_generators([(2, 1), (0, 3), (4, 5)]).unwrap();
        assert_eq!(l.index(), (3 * 2 / gcd(2, 1)));
        assert!(l.contains((2, 1)) && l.contains((4, 5)) && l.contains((0, 3)));
        assert!(!l.contains((1, 0)));
    }

    #[test]
    fn group_relations() {
        let x = h2_example();
        let s = [Move::T, Move::VInv, Move::T];
        let s4: Vec<Move> = s.iter().cycle().take(12).copied().collect();
        assert_eq!(x.act_word(&s4), x.canonical());
        // braid relation T V⁻¹ T = V⁻¹ T V⁻¹
        assert_eq!(
            x.act_word(&s),
            x.act_word(&[Move::VInv, Move::T, Move::VInv])
        );
        // R = T⁻¹ V T⁻¹
        assert_eq!(x.rotate(), x.act_word(&[Move::TInv, Move::V, Move::TInv]));
        for g in [Move::T, Move::TInv, Move::V, Move::VInv] {
            assert_eq!(x.act(g).act(g.inverse()), x.canonical());
        }
        assert_eq!(Origami::torus().act(Move::T), Origami::torus());
    }

    #[test]
    fn multiplicities() {
        let t = Origami::torus();
        assert_eq!(t.vertical_multiplicity(), 1);
        assert_eq!(t.multiplicity(3, 5).unwrap(), 1);
        let x = h2_example();
        assert_eq!(x.multiplicity(0, 1).unwrap(), x.vertical_multiplicity());
        assert_eq!(x.multiplicity(1, 0).unwrap(), x.horizontal_multiplicity());
        assert_eq!(
            x.rotate().vertical_multiplicity(),
            x.horizontal_multiplicity()
        );
        // covariance under each generator
        for g in [Move::T, Move::TInv, Move::V, Move::VInv] {
            let m = g.matrix();
            for (p, q) in [(0i64, 1i64), (1, 0), (3, 5), (-2, 7), (5, 3)] {
                let (p2, q2) = (m[0][0] * p + m[0][1] * q, m[1][0] * p + m[1][1] * q);
                assert_eq!(
                    x.multiplicity(p, q).unwrap(),
                    x.act(g).multiplicity(p2, q2).unwrap()
                );
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        // connected origamis with 1, 2, 3 squares up to isomorphism
        assert_eq!(enumerate_origamis(1).len(), 1);
        assert_eq!(enumerate_origamis(2).len(), 3);
        assert_eq!(enumerate_origamis(3).len(), 7);
    }
}
