use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{Move, Origami};
use crate::error::{Error, Result};

/// The `SL(2,Z)`-orbit `E(X)` with the action of `T` and `V` as permutations.
#[derive(Clone, Debug)]
pub struct OrbitGraph {
    pub vertices: Vec<Origami>,
    index: HashMap<Origami, usize>,
    pub t_edges: Vec<usize>,
    pub v_edges: Vec<usize>,
    t_inv: Vec<usize>,
    v_inv: Vec<usize>,
}

impl OrbitGraph {
    /// Breadth-first closure of `x` under `T` and `V`. Vertex 0 is `x`.
    pub fn build(x: &Origami) -> OrbitGraph {
        let root = x.canonical();
        let mut vertices = vec![root.clone()];
        let mut index = HashMap::from([(root, 0)]);
        let (mut t_edges, mut v_edges) = (Vec::new(), Vec::new());
        let mut k = 0;
        while k < vertices.len() {
            let y = vertices[k].clone();
            for (g, edges) in [(Move::T, &mut t_edges), (Move::V, &mut v_edges)] {
                let z = y.act(g);
                let id = *index.entry(z.clone()).or_insert_with(|| {
                    vertices.push(z);
                    vertices.len() - 1
                });
                edges.push(id);
            }
            k += 1;
        }
        let inv = |p: &[usize]| {
            let mut q = vec![0; p.len()];
            for (i, &j) in p.iter().enumerate() {
                q[j] = i;
            }
            q
        };
        let (t_inv, v_inv) = (inv(&t_edges), inv(&v_edges));
        OrbitGraph {
            vertices,
            index,
            t_edges,
            v_edges,
            t_inv,
            v_inv,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, o: &Origami) -> Option<usize> {
        self.index.get(&o.canonical()).copied()
    }

    pub fn step(&self, v: usize, g: Move) -> usize {
        match g {
            Move::T => self.t_edges[v],
            Move::TInv => self.t_inv[v],
            Move::V => self.v_edges[v],
            Move::VInv => self.v_inv[v],
        }
    }

    pub fn step_pow(&self, mut v: usize, g: Move, k: u64) -> usize {
        for _ in 0..k {
            v = self.step(v, g);
        }
        v
    }

    /// `T`-cycles of the orbit; their lengths are the cusp widths.
    pub fn cusps(&self) -> CuspTable {
        let mut seen = vec![false; self.len()];
        let mut cusps = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                cycle.push(t);
                t = self.t_edges[t];
            }
            cusps.push(cycle);
        }
        let widths: Vec<usize> = cusps.iter().map(Vec::len).collect();
        let p_max = *widths.iter().max().unwrap();
        CuspTable {
            cusps,
            widths,
            p_max,
        }
    }

    pub fn profile(&self) -> MultiplicityProfile {
        let vertical: Vec<usize> = self
            .vertices
            .iter()
            .map(Origami::vertical_multiplicity)
            .collect();
        let horizontal: Vec<usize> = self
            .vertices
            .iter()
            .map(Origami::horizontal_multiplicity)
            .collect();
        let m_minus = *vertical.iter().min().unwrap();
        let m_plus = *vertical.iter().max().unwrap();
        MultiplicityProfile {
            vertical,
            horizontal,
            m_minus,
            m_plus,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspTable {
    pub cusps: Vec<Vec<usize>>,
    pub widths: Vec<usize>,
    /// `p(X)`: the largest cusp width.
    pub p_max: usize,
}

/// Vertical and horizontal multiplicities over the orbit. Every rational
/// direction on `X` is the vertical direction of some orbit element, so the
/// extremes are `M⁻(X)` and `M⁺(X)`.
#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityProfile {
    pub vertical: Vec<usize>,
    pub horizontal: Vec<usize>,
    pub m_minus: usize,
    pub m_plus: usize,
}

/// Edges `Y → V^{a1} T^{a2}·Y` with digits `1 ≤ a1, a2 ≤ digit_max`.
#[derive(Clone, Debug)]
pub struct EvenGraph {
    pub digit_max: u64,
    adj: Vec<Vec<(usize, u64, u64)>>,
}

impl EvenGraph {
    pub fn build(orbit: &OrbitGraph, digit_max: u64) -> EvenGraph {
        let adj = (0..orbit.len())
            .map(|y| {
                let mut out = Vec::new();
                for a2 in 1..=digit_max {
                    let z = orbit.step_pow(y, Move::T, a2);
                    for a1 in 1..=digit_max {
                        out.push((orbit.step_pow(z, Move::V, a1), a1, a2));
                    }
                }
                out
            })
            .collect();
        EvenGraph { digit_max, adj }
    }

    /// Digits below `p(X)` when that already makes the graph strongly
    /// connected, otherwise digits up to `p(X)`, which always does.
    pub fn for_hall(orbit: &OrbitGraph) -> EvenGraph {
        let p = orbit.cusps().p_max as u64;
        let g = EvenGraph::build(orbit, p - 1);
        if orbit.len() == 1 || g.is_strongly_connected() {
            g
        } else {
            EvenGraph::build(orbit, p)
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    fn reach(&self, from: usize, reverse: bool) -> Vec<bool> {
        let n = self.adj.len();
        let mut radj = vec![Vec::new(); n];
        if reverse {
            for (y, out) in self.adj.iter().enumerate() {
                for &(z, _, _) in out {
                    radj[z].push(y);
                }
            }
        }
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(y) = stack.pop() {
            let next: Vec<usize> = if reverse {
                radj[y].clone()
            } else {
                self.adj[y].iter().map(|e| e.0).collect()
            };
            for z in next {
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.reach(0, false).iter().all(|&b| b) && self.reach(0, true).iter().all(|&b| b)
    }

    /// Shortest `D = (d_1, …, d_{2i})` with `g(D)·src = dst`, where
    /// `g(D) = V^{d_1} T^{d_2} ⋯ V^{d_{2i−1}} T^{d_{2i}}`.
    pub fn connect(&self, src: usize, dst: usize) -> Result<Vec<u64>> {
        let mut prev: Vec<Option<(usize, u64, u64)>> = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        while let Some(y) = queue.pop_front() {
            if y == dst {
                break;
            }
            for &(z, a1, a2) in &self.adj[y] {
                if !seen[z] {
                    seen[z] = true;
                    prev[z] = Some((y, a1, a2));
                    queue.push_back(z);
                }
            }
        }
        if !seen[dst] {
            return Err(Error::NotConnectedInEvenGraph);
        }
        // the pair applied last is the leftmost block of the word
        let mut word = Vec::new();
        let mut y = dst;
        while let Some((p, a1, a2)) = prev[y] {
            word.push(a1);
            word.push(a2);
            y = p;
        }
        Ok(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l_shape() -> Origami {
        Origami::new(vec![1, 0, 2], vec![2, 1, 0]).unwrap()
    }

    #[test]
    fn torus_orbit() {
        let g = OrbitGraph::build(&Origami::torus());
        assert_eq!(g.len(), 1);
        assert_eq!(g.cusps().p_max, 1);
        let e = EvenGraph::for_hall(&g);
        assert_eq!(e.edge_count(), 0);
        assert_eq!(e.connect(0, 0).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn three_square_orbit() {
        let g = OrbitGraph::build(&l_shape());
        // the orbit of the L-shaped surface has 3 elements and cusp widths 1 and 2
        assert_eq!(g.len(), 3);
        let mut w = g.cusps().widths;
        w.sort_unstable();
        assert_eq!(w, vec![1, 2]);
        let prof = g.profile();
        assert_eq!((prof.m_minus, prof.m_plus), (1, 1));
        for v in 0..g.len() {
            for m in [Move::T, Move::V] {
                assert_eq!(g.step(g.step(v, m), m.inverse()), v);
            }
        }
    }

    #[test]
    fn connectors_realize_the_word() {
        let x = Origami::new(vec![1, 2, 3, 0, 5, 4], vec![4, 1, 2, 5, 0, 3]).unwrap();
        let g = OrbitGraph::build(&x);
        let e = EvenGraph::for_hall(&g);
        assert!(e.is_strongly_connected());
        for (s, t) in [
            (0, g.len() - 1),
            (g.len() / 2, 0),
            (1.min(g.len() - 1), 1.min(g.len() - 1)),
        ] {
            let d = e.connect(s, t).unwrap();
            assert!(d.len().is_multiple_of(2) && d.len() <= 2 * g.len());
            let mut y = s;
            for (k, &c) in d.iter().enumerate().rev() {
                y = g.step_pow(y, if k % 2 == 0 { Move::V } else { Move::T }, c);
            }
            assert_eq!(y, t);
        }
    }
}
