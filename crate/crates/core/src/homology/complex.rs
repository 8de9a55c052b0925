use crate::linalg::{self, IntMatrix};
use crate::origami::Origami;
use crate::permgroup::Permutation;

/// Edge of the square tiling: the bottom (`Horizontal`) or left (`Vertical`)
/// side of a square, oriented rightward and upward respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    Horizontal(usize),
    Vertical(usize),
}

/// Cellular chain complex of the square tiling: squares as 2-cells, two
/// edges per square, vertices at the ⟨c⟩-orbits (points of Σ*).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    r: Permutation,
    u: Permutation,
    r_inv: Permutation,
    u_inv: Permutation,
    /// Vertex at the bottom-left corner of each square.
    corner_vertex: Vec<usize>,
    /// Squares whose bottom-left corner is the vertex, in counterclockwise
    /// order around it.
    vertex_squares: Vec<Vec<usize>>,
}

impl ChainComplex {
    pub fn new(o: &Origami) -> Self {
        let n = o.n_squares();
        let corner = o.corner_map();
        let mut corner_vertex = vec![usize::MAX; n];
        let mut vertex_squares = Vec::new();
        for s in 0..n {
            if corner_vertex[s] != usize::MAX {
                continue;
            }
            let v = vertex_squares.len();
            let mut cyc = Vec::new();
            let mut t = s;
            while corner_vertex[t] == usize::MAX {
                corner_vertex[t] = v;
                cyc.push(t);
                t = corner.image(t);
            }
            vertex_squares.push(cyc);
        }
        ChainComplex {
            r: o.r().clone(),
            u: o.u().clone(),
            r_inv: o.r().inverse(),
            u_inv: o.u().inverse(),
            corner_vertex,
            vertex_squares,
        }
    }

    pub fn n_faces(&self) -> usize {
        self.corner_vertex.len()
    }

    pub fn n_edges(&self) -> usize {
        2 * self.n_faces()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_squares.len()
    }

    pub fn r(&self) -> &Permutation {
        &self.r
    }

    pub fn u(&self) -> &Permutation {
        &self.u
    }

    /// Dense index: horizontal edges first, then vertical ones.
    pub fn index(&self, e: Edge) -> usize {
        match e {
            Edge::Horizontal(s) => s,
            Edge::Vertical(s) => self.n_faces() + s,
        }
    }

    pub fn edge(&self, index: usize) -> Edge {
        let n = self.n_faces();
        if index < n {
            Edge::Horizontal(index)
        } else {
            Edge::Vertical(index - n)
        }
    }

    pub fn corner_vertex(&self, s: usize) -> usize {
        self.corner_vertex[s]
    }

    /// Squares grouped by the vertex at their bottom-left corner.
    pub fn vertex_squares(&self) -> &[Vec<usize>] {
        &self.vertex_squares
    }

    pub fn tail(&self, e: Edge) -> usize {
        match e {
            Edge::Horizontal(s) | Edge::Vertical(s) => self.corner_vertex[s],
        }
    }

    pub fn head(&self, e: Edge) -> usize {
        match e {
            Edge::Horizontal(s) => self.corner_vertex[self.r.image(s)],
            Edge::Vertical(s) => self.corner_vertex[self.u.image(s)],
        }
    }

    /// Boundary of a square, counterclockwise from its bottom edge.
    pub fn face_boundary(&self, s: usize) -> [(Edge, i64); 4] {
        [
            (Edge::Horizontal(s), 1),
            (Edge::Vertical(self.r.image(s)), 1),
            (Edge::Horizontal(self.u.image(s)), -1),
            (Edge::Vertical(s), -1),
        ]
    }

    /// The two squares on either side of an edge: the one it bounds from
    /// below or the left, then the one on the other side.
    pub fn edge_faces(&self, e: Edge) -> (usize, usize) {
        match e {
            Edge::Horizontal(s) => (s, self.u_inv.image(s)),
            Edge::Vertical(s) => (s, self.r_inv.image(s)),
        }
    }

    /// Edge ends at each vertex in counterclockwise order; `true` marks the
    /// tail of an edge. Around the bottom-left corner of square `t` the order
    /// is: bottom of `t` (outgoing), left of `t` (outgoing), bottom of the
    /// square to the left (incoming), right side of the square below that
    /// (incoming), then the next square around the corner.
    pub fn rotation_system(&self) -> Vec<Vec<(Edge, bool)>> {
        self.vertex_squares
            .iter()
            .map(|squares| {
                let mut rays = Vec::with_capacity(4 * squares.len());
                for &t in squares {
                    let left = self.r_inv.image(t);
                    let below_left = self.u_inv.image(left);
                    rays.push((Edge::Horizontal(t), true));
                    rays.push((Edge::Vertical(t), true));
                    rays.push((Edge::Horizontal(left), false));
                    rays.push((Edge::Vertical(self.r.image(below_left)), false));
                }
                rays
            })
            .collect()
    }

    /// `∂₁` as a vertices × edges matrix.
    pub fn boundary1(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n_vertices(), self.n_edges());
        for i in 0..self.n_edges() {
            let e = self.edge(i);
            m[(self.head(e), i)] += 1;
            m[(self.tail(e), i)] -= 1;
        }
        m
    }

    /// `∂₂` as an edges × faces matrix.
    pub fn boundary2(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n_edges(), self.n_faces());
        for s in 0..self.n_faces() {
            for (e, c) in self.face_boundary(s) {
                m[(self.index(e), s)] += c;
            }
        }
        m
    }

    /// Betti numbers `(b₀, b₁, b₂)` from exact ranks of the boundary maps.
    pub fn betti_numbers(&self) -> (usize, usize, usize) {
        let d1 = linalg::rank(&self.boundary1());
        let d2 = linalg::rank(&self.boundary2());
        (self.n_vertices() - d1, self.n_edges() - d1 - d2, self.n_faces() - d2)
    }

    /// `dim H₁(M, Σ*)`: every edge is a relative cycle.
    pub fn relative_h1_dim(&self) -> usize {
        self.n_edges() - linalg::rank(&self.boundary2())
    }
}
