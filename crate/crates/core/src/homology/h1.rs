use std::collections::VecDeque;

use num_traits::Signed;

use super::complex::{ChainComplex, Edge};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::origami::Origami;
use crate::permgroup::Permutation;

/// Integral first homology with a tree-cotree basis.
///
/// A spanning tree of the 1-skeleton and a spanning tree of the dual graph
/// on the remaining edges leave exactly `2g` edges; each closes a unique
/// cycle in the primal tree, and these cycles form a Z-basis.
#[derive(Clone, Debug)]
pub struct H1Model {
    complex: ChainComplex,
    /// Edge indices not used by either tree, one per basis cycle.
    leftover: Vec<usize>,
    /// Non-root faces in breadth-first order of the dual tree, each with the
    /// dual-tree edge to its parent and that edge's coefficient in `∂₂`.
    face_order: Vec<(usize, usize, i64)>,
    basis: Vec<Vec<i64>>,
    /// Chain from the root vertex to each vertex along the primal tree.
    root_paths: Vec<Vec<(usize, i64)>>,
    rotation: Vec<Vec<(Edge, bool)>>,
    intersection: IntMatrix,
    projection: IntMatrix,
    zero_basis: IntMatrix,
    st_plane: IntMatrix,
}

impl H1Model {
    pub fn new(o: &Origami) -> Result<Self> {
        let complex = ChainComplex::new(o);
        let n_edges = complex.n_edges();
        let n_vertices = complex.n_vertices();

        // primal spanning tree
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n_vertices];
        for i in 0..n_edges {
            let e = complex.edge(i);
            incident[complex.tail(e)].push(i);
            incident[complex.head(e)].push(i);
        }
        let mut in_tree = vec![false; n_edges];
        let mut root_paths: Vec<Option<Vec<(usize, i64)>>> = vec![None; n_vertices];
        root_paths[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &i in &incident[v] {
                let e = complex.edge(i);
                let (w, sign) = if complex.tail(e) == v { (complex.head(e), 1) } else { (complex.tail(e), -1) };
                if root_paths[w].is_none() {
                    let mut path = root_paths[v].clone().unwrap_or_default();
                    path.push((i, sign));
                    root_paths[w] = Some(path);
                    in_tree[i] = true;
                    queue.push_back(w);
                }
            }
        }
        let root_paths: Vec<Vec<(usize, i64)>> = root_paths
            .into_iter()
            .map(|p| p.ok_or_else(|| Error::invariant("1-skeleton is disconnected")))
            .collect::<Result<_>>()?;

        // dual spanning tree on the remaining edges
        let n_faces = complex.n_faces();
        let mut face_edges: Vec<Vec<usize>> = vec![Vec::new(); n_faces];
        for i in (0..n_edges).filter(|&i| !in_tree[i]) {
            let (a, b) = complex.edge_faces(complex.edge(i));
            face_edges[a].push(i);
            if b != a {
                face_edges[b].push(i);
            }
        }
        let mut in_cotree = vec![false; n_edges];
        let mut seen = vec![false; n_faces];
        seen[0] = true;
        let mut face_order = Vec::with_capacity(n_faces.saturating_sub(1));
        let mut queue = VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            for &i in &face_edges[f] {
                let (a, b) = complex.edge_faces(complex.edge(i));
                let g = if a == f { b } else { a };
                if !seen[g] {
                    seen[g] = true;
                    in_cotree[i] = true;
                    let coef: i64 =
                        complex.face_boundary(g).iter().filter(|(e, _)| complex.index(*e) == i).map(|(_, c)| c).sum();
                    if coef.abs() != 1 {
                        return Err(Error::invariant("dual tree edge is not simple on its face"));
                    }
                    face_order.push((g, i, coef));
                    queue.push_back(g);
                }
            }
        }
        if face_order.len() + 1 != n_faces {
            return Err(Error::invariant("dual graph is disconnected"));
        }
        let leftover: Vec<usize> = (0..n_edges).filter(|&i| !in_tree[i] && !in_cotree[i]).collect();
        let genus = o.genus();
        if leftover.len() != 2 * genus {
            return Err(Error::invariant(format!(
                "tree-cotree leaves {} edges but the genus is {genus}",
                leftover.len()
            )));
        }

        let basis: Vec<Vec<i64>> = leftover
            .iter()
            .map(|&i| {
                let e = complex.edge(i);
                let mut z = vec![0i64; n_edges];
                z[i] += 1;
                for &(j, c) in &root_paths[complex.tail(e)] {
                    z[j] += c;
                }
                for &(j, c) in &root_paths[complex.head(e)] {
                    z[j] -= c;
                }
                z
            })
            .collect();

        let rotation = complex.rotation_system();
        let mut model = H1Model {
            complex,
            leftover,
            face_order,
            basis,
            root_paths,
            rotation,
            intersection: IntMatrix::zeros(0, 0),
            projection: IntMatrix::zeros(0, 0),
            zero_basis: IntMatrix::zeros(0, 0),
            st_plane: IntMatrix::zeros(0, 0),
        };
        for b in &model.basis {
            model.check_cycle(b)?;
        }
        model.intersection = model.compute_intersection()?;
        let dim = model.rank();
        let n = model.complex.n_faces();
        model.projection = IntMatrix::from_fn(2, dim, |i, j| model.basis[j][i * n..(i + 1) * n].iter().sum());
        model.zero_basis = linalg::integer_kernel(&model.projection)?;
        let mut st = IntMatrix::zeros(dim, 2);
        for (col, range) in [(0, 0..n), (1, n..2 * n)] {
            let mut z = vec![0i64; 2 * n];
            z[range].iter_mut().for_each(|x| *x = 1);
            let c = model.coordinates(&z)?;
            st.column_mut(col).copy_from_slice(&c);
        }
        model.st_plane = st;
        Ok(model)
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// `2g`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis cycles as dense edge vectors.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn intersection(&self) -> &IntMatrix {
        &self.intersection
    }

    /// `π_*` in basis coordinates: total horizontal and vertical coefficient.
    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    /// Columns: a Z-basis of `H₁⁽⁰⁾ = ker π_*`.
    pub fn zero_basis(&self) -> &IntMatrix {
        &self.zero_basis
    }

    /// Columns: coordinates of the sum of all horizontal edges and of all
    /// vertical edges.
    pub fn st_plane(&self) -> &IntMatrix {
        &self.st_plane
    }

    fn check_cycle(&self, z: &[i64]) -> Result<()> {
        let mut boundary = vec![0i64; self.complex.n_vertices()];
        for (i, &c) in z.iter().enumerate() {
            if c != 0 {
                let e = self.complex.edge(i);
                boundary[self.complex.head(e)] += c;
                boundary[self.complex.tail(e)] -= c;
            }
        }
        if boundary.iter().any(|&x| x != 0) {
            return Err(Error::invariant("chain is not a cycle"));
        }
        Ok(())
    }

    /// Coordinates of a cycle in the basis, by pushing it off the dual tree
    /// with face boundaries. Fails when the input is not a cycle.
    pub fn coordinates(&self, z: &[i64]) -> Result<Vec<i64>> {
        self.check_cycle(z)?;
        let coords = self.coordinates_unchecked(z);
        // the remainder lives on the primal tree, so it vanishes for cycles
        let mut rest = self.reduce(z);
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0 {
                rest.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        if rest.iter().any(|&x| x != 0) {
            return Err(Error::invariant("cycle reduction left a nonzero remainder"));
        }
        Ok(coords)
    }

    fn reduce(&self, z: &[i64]) -> Vec<i64> {
        let mut z = z.to_vec();
        for &(f, i, coef) in &self.face_order {
            let t = z[i] * coef;
            if t != 0 {
                for (e, c) in self.complex.face_boundary(f) {
                    z[self.complex.index(e)] -= t * c;
                }
            }
        }
        z
    }

    pub(crate) fn coordinates_unchecked(&self, z: &[i64]) -> Vec<i64> {
        let z = self.reduce(z);
        self.leftover.iter().map(|&i| z[i]).collect()
    }

    /// Matrix of a chain map given on edges, in basis coordinates.
    pub fn edge_map_matrix(&self, image: impl Fn(Edge) -> Vec<(Edge, i64)>) -> Result<IntMatrix> {
        let dim = self.rank();
        let n_edges = self.complex.n_edges();
        let images: Vec<Vec<(usize, i64)>> = (0..n_edges)
            .map(|i| image(self.complex.edge(i)).into_iter().map(|(e, c)| (self.complex.index(e), c)).collect())
            .collect();
        let mut m = IntMatrix::zeros(dim, dim);
        for (j, b) in self.basis.iter().enumerate() {
            let mut z = vec![0i64; n_edges];
            for (i, &c) in b.iter().enumerate() {
                if c != 0 {
                    for &(k, d) in &images[i] {
                        z[k] += c * d;
                    }
                }
            }
            let col = self.coordinates(&z)?;
            m.column_mut(j).copy_from_slice(&col);
        }
        Ok(m)
    }

    /// Action of an automorphism (a permutation of squares commuting with
    /// the monodromy). Each edge moves with its square.
    pub fn automorphism_matrix(&self, gamma: &Permutation) -> IntMatrix {
        let n = self.complex.n_faces();
        let dim = self.rank();
        let mut m = IntMatrix::zeros(dim, dim);
        for (j, b) in self.basis.iter().enumerate() {
            let mut z = vec![0i64; 2 * n];
            for s in 0..n {
                z[gamma.image(s)] = b[s];
                z[n + gamma.image(s)] = b[n + s];
            }
            let col = self.coordinates_unchecked(&z);
            m.column_mut(j).copy_from_slice(&col);
        }
        m
    }

    /// Algebraic intersection number of two cycles given as edge vectors.
    pub fn intersect_chains(&self, a: &[i64], b: &[i64]) -> i64 {
        let d = self.dual_vector(b);
        a.iter().zip(&d).map(|(x, y)| x * y).sum()
    }

    /// Pushes `b` slightly to the left of each of its edges and routes the
    /// strands around each vertex through one reference sector. The result
    /// meets the 1-skeleton only on small circles around the vertices;
    /// `d[e]` collects the signed flow crossing the ends of edge `e`, so that
    /// `a · d` is the intersection number of `a` with `b`.
    fn dual_vector(&self, b: &[i64]) -> Vec<i64> {
        let mut d = vec![0i64; b.len()];
        for rays in &self.rotation {
            let m = rays.len();
            let mut inflow = vec![0i64; m];
            for (k, &(e, is_tail)) in rays.iter().enumerate() {
                let x = b[self.complex.index(e)];
                if is_tail {
                    inflow[k] -= x;
                } else {
                    inflow[(k + m - 1) % m] += x;
                }
            }
            // flow crossing ray k counterclockwise on the way to sector 0
            let total: i64 = inflow[1..].iter().sum();
            let mut crossing = 0i64;
            for (k, &(e, is_tail)) in rays.iter().enumerate() {
                let f = if k == 0 { total } else { crossing };
                if k >= 1 {
                    crossing += inflow[k];
                }
                let idx = self.complex.index(e);
                d[idx] += if is_tail { f } else { -f };
            }
        }
        d
    }

    fn compute_intersection(&self) -> Result<IntMatrix> {
        let dim = self.rank();
        let duals: Vec<Vec<i64>> = self.basis.iter().map(|b| self.dual_vector(b)).collect();
        let j = IntMatrix::from_fn(dim, dim, |a, b| self.basis[a].iter().zip(&duals[b]).map(|(x, y)| x * y).sum());
        if j != -j.transpose() {
            return Err(Error::invariant("intersection form is not antisymmetric"));
        }
        let det = linalg::determinant(&j)?;
        if det.abs() != 1.into() {
            return Err(Error::invariant(format!("intersection form has determinant {det}, expected ±1")));
        }
        Ok(j)
    }

    /// Negative-control hook: adds one to a single off-diagonal entry of the
    /// stored intersection matrix so that downstream checks must fail.
    #[doc(hidden)]
    pub fn corrupt_intersection(&mut self) {
        if self.rank() >= 2 {
            self.intersection[(0, 1)] += 1;
        }
    }

    /// Whether `mᵀ J m = J`.
    pub fn preserves_form(&self, m: &IntMatrix) -> Result<bool> {
        let lhs = linalg::mul(&linalg::mul(&m.transpose(), &self.intersection)?, m)?;
        Ok(lhs == self.intersection)
    }

    /// Holonomy `(Σ horizontal, Σ vertical)` of the tree path from the root
    /// vertex to `v`.
    pub fn root_path_holonomy(&self, v: usize) -> (i64, i64) {
        let n = self.complex.n_faces();
        let mut h = (0, 0);
        for &(i, c) in &self.root_paths[v] {
            if i < n {
                h.0 += c;
            } else {
                h.1 += c;
            }
        }
        h
    }
}
