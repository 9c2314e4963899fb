//! Bipartite graphs of two-point monodromy in DOT form.

use crate::cover::MonodromyMap;
use crate::perm::{PermError, Permutation};
use crate::twocrit::PolyMonodromy;

/// The dessin of `(σ_0, σ_1)`: black vertices are the cycles of `σ_0`,
/// white vertices the cycles of `σ_1`, and point `i` is an edge joining the
/// cycles through `i`. Vertices are numbered by least point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dessin {
    black: Vec<Vec<usize>>,
    white: Vec<Vec<usize>>,
    /// `edges[i] = (black vertex, white vertex)` for point `i`.
    edges: Vec<(usize, usize)>,
}

impl Dessin {
    pub fn new(s0: &Permutation, s1: &Permutation) -> Result<Self, PermError> {
        if s0.degree() != s1.degree() {
            return Err(PermError::DegreeMismatch(s0.degree(), s1.degree()));
        }
        let black = s0.cycles();
        let white = s1.cycles();
        let n = s0.degree();
        let mut b_of = vec![0; n];
        let mut w_of = vec![0; n];
        for (v, c) in black.iter().enumerate() {
            c.iter().for_each(|&x| b_of[x] = v);
        }
        for (v, c) in white.iter().enumerate() {
            c.iter().for_each(|&x| w_of[x] = v);
        }
        let edges = (0..n).map(|x| (b_of[x], w_of[x])).collect();
        Ok(Dessin { black, white, edges })
    }

    pub fn of_polynomial(m: &PolyMonodromy) -> Self {
        Dessin::new(m.sigma0(), m.sigma1()).expect("same degree")
    }

    /// A cover with at most two nontrivial branch images, taken as `σ_0` and
    /// `σ_1` in order. Returns `None` for three or more.
    pub fn of_map(m: &MonodromyMap) -> Option<Self> {
        let id = Permutation::identity(m.degree());
        let im = m.images();
        match im.len() {
            0 => Some(Dessin::new(&id, &id).unwrap()),
            1 => Some(Dessin::new(&im[0], &id).unwrap()),
            2 => Some(Dessin::new(&im[0], &im[1]).unwrap()),
            _ => None,
        }
    }

    pub fn black_count(&self) -> usize {
        self.black.len()
    }

    pub fn white_count(&self) -> usize {
        self.white.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {} {{\n", quote(name));
        for (v, c) in self.black.iter().enumerate() {
            out += &format!(
                "  b{} [shape=circle, style=filled, fillcolor=black, fontcolor=white, label=\"{}\"];\n",
                v + 1,
                c.len()
            );
        }
        for (v, c) in self.white.iter().enumerate() {
            out += &format!("  w{} [shape=circle, label=\"{}\"];\n", v + 1, c.len());
        }
        for (x, (b, w)) in self.edges.iter().enumerate() {
            out += &format!("  b{} -- w{} [label=\"{}\"];\n", b + 1, w + 1, x + 1);
        }
        out + "}\n"
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn emit_dessin_dot(m: &PolyMonodromy) -> String {
    Dessin::of_polynomial(m).to_dot("dessin")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one() {
        let id = Permutation::identity(1);
        let d = Dessin::new(&id, &id).unwrap();
        assert_eq!((d.black_count(), d.white_count(), d.edge_count()), (1, 1, 1));
        assert_eq!(d.to_dot("x"), "graph \"x\" {\n  b1 [shape=circle, style=filled, fillcolor=black, fontcolor=white, label=\"1\"];\n  w1 [shape=circle, label=\"1\"];\n  b1 -- w1 [label=\"1\"];\n}\n");
    }

    #[test]
    fn cubic() {
        let p = |s: &str| Permutation::parse_cycles(s, 3).unwrap();
        let m = PolyMonodromy::new(p("(1,2)"), p("(2,3)")).unwrap();
        let d = Dessin::of_polynomial(&m);
        assert_eq!((d.black_count(), d.white_count(), d.edge_count()), (2, 2, 3));
        assert_eq!(emit_dessin_dot(&m).matches(" -- ").count(), 3);
    }
}
