//! Regular polytopes: Schläfli data, explicit face lattices and edge-scribed
//! realizations.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::numeric::{dot, Mat, NumericError, Scalar, FLOAT_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolytopeError {
    #[error("{0} has no geometric realization here")]
    ConstantsOnly(Solid),
    #[error("rank {0} out of range")]
    RankOutOfRange(usize),
    #[error("face index {1} out of range at rank {0}")]
    FaceOutOfRange(usize, usize),
    #[error("origin is not interior to the polytope")]
    OriginNotInterior,
    #[error("unknown solid {0:?}")]
    UnknownSolid(String),
    #[error("no regular polytope with Schläfli symbol {0:?}")]
    UnknownSchlafli(Vec<usize>),
    #[error("{0} is not a Platonic solid")]
    NotPlatonic(Solid),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Regular polytope families. The `usize` is the polytope's dimension `d+1`
/// (for `NGon`, the number of sides).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Solid {
    Simplex(usize),
    Cube(usize),
    CrossPolytope(usize),
    Icosahedron,
    Dodecahedron,
    NGon(usize),
    Cell24,
    Cell600,
    Cell120,
}

pub const TETRAHEDRON: Solid = Solid::Simplex(3);
pub const CUBE: Solid = Solid::Cube(3);
pub const OCTAHEDRON: Solid = Solid::CrossPolytope(3);
pub const ICOSAHEDRON: Solid = Solid::Icosahedron;
pub const DODECAHEDRON: Solid = Solid::Dodecahedron;

/// The five Platonic solids in a fixed order.
pub const PLATONIC: [Solid; 5] = [TETRAHEDRON, OCTAHEDRON, CUBE, ICOSAHEDRON, DODECAHEDRON];

impl Solid {
    /// Dimension `d+1` of the polytope.
    pub fn dim(self) -> usize {
        match self {
            Solid::Simplex(n) | Solid::Cube(n) | Solid::CrossPolytope(n) => n,
            Solid::Icosahedron | Solid::Dodecahedron => 3,
            Solid::NGon(_) => 2,
            Solid::Cell24 | Solid::Cell600 | Solid::Cell120 => 4,
        }
    }

    pub fn schlafli(self) -> Vec<usize> {
        match self {
            Solid::Simplex(n) => vec![3; n - 1],
            Solid::Cube(n) => {
                let mut s = vec![3; n - 1];
                s[0] = 4;
                s
            }
            Solid::CrossPolytope(n) => {
                let mut s = vec![3; n - 1];
                s[n - 2] = 4;
                s
            }
            Solid::Icosahedron => vec![3, 5],
            Solid::Dodecahedron => vec![5, 3],
            Solid::NGon(p) => vec![p],
            Solid::Cell24 => vec![3, 4, 3],
            Solid::Cell600 => vec![3, 3, 5],
            Solid::Cell120 => vec![5, 3, 3],
        }
    }

    pub fn from_schlafli(s: &[usize]) -> Result<Solid, PolytopeError> {
        let bad = || PolytopeError::UnknownSchlafli(s.to_vec());
        let n = s.len() + 1;
        match s {
            [] => Err(bad()),
            [p] if *p >= 3 => Ok(Solid::NGon(*p)),
            [3, 5] => Ok(Solid::Icosahedron),
            [5, 3] => Ok(Solid::Dodecahedron),
            [3, 4, 3] => Ok(Solid::Cell24),
            [3, 3, 5] => Ok(Solid::Cell600),
            [5, 3, 3] => Ok(Solid::Cell120),
            _ if s.iter().all(|&p| p == 3) => Ok(Solid::Simplex(n)),
            [4, rest @ ..] if rest.iter().all(|&p| p == 3) => Ok(Solid::Cube(n)),
            [rest @ .., 4] if rest.iter().all(|&p| p == 3) => Ok(Solid::CrossPolytope(n)),
            _ => Err(bad()),
        }
    }

    /// `{p, q}` for the five Platonic solids.
    pub fn platonic_pq(self) -> Option<(usize, usize)> {
        match self {
            Solid::Simplex(3) => Some((3, 3)),
            Solid::CrossPolytope(3) => Some((3, 4)),
            Solid::Cube(3) => Some((4, 3)),
            Solid::Icosahedron => Some((3, 5)),
            Solid::Dodecahedron => Some((5, 3)),
            _ => None,
        }
    }

    /// The family of the polar polytope.
    pub fn polar(self) -> Solid {
        match self {
            Solid::Cube(n) => Solid::CrossPolytope(n),
            Solid::CrossPolytope(n) => Solid::Cube(n),
            Solid::Icosahedron => Solid::Dodecahedron,
            Solid::Dodecahedron => Solid::Icosahedron,
            Solid::Cell600 => Solid::Cell120,
            Solid::Cell120 => Solid::Cell600,
            other => other,
        }
    }

    pub fn is_realizable(self) -> bool {
        !matches!(self, Solid::Cell24 | Solid::Cell600 | Solid::Cell120)
    }

    pub fn vertex_count(self) -> usize {
        match self {
            Solid::Simplex(n) => n + 1,
            Solid::Cube(n) => 1 << n,
            Solid::CrossPolytope(n) => 2 * n,
            Solid::Icosahedron => 12,
            Solid::Dodecahedron => 20,
            Solid::NGon(p) => p,
            Solid::Cell24 => 24,
            Solid::Cell600 => 120,
            Solid::Cell120 => 600,
        }
    }
}

impl fmt::Display for Solid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Solid::Simplex(3) => write!(f, "tetrahedron"),
            Solid::Cube(3) => write!(f, "cube"),
            Solid::CrossPolytope(3) => write!(f, "octahedron"),
            Solid::Icosahedron => write!(f, "icosahedron"),
            Solid::Dodecahedron => write!(f, "dodecahedron"),
            Solid::Simplex(n) => write!(f, "simplex:{n}"),
            Solid::Cube(n) => write!(f, "cube:{n}"),
            Solid::CrossPolytope(n) => write!(f, "cross:{n}"),
            Solid::NGon(p) => write!(f, "ngon:{p}"),
            Solid::Cell24 => write!(f, "24-cell"),
            Solid::Cell600 => write!(f, "600-cell"),
            Solid::Cell120 => write!(f, "120-cell"),
        }
    }
}

impl FromStr for Solid {
    type Err = PolytopeError;

    /// Accepts the Platonic names, `simplex:N`, `cube:N`, `cross:N`, `ngon:P`
    /// and the three 4-polytopes.
    fn from_str(s: &str) -> Result<Solid, PolytopeError> {
        let unknown = || PolytopeError::UnknownSolid(s.to_string());
        let lower = s.trim().to_ascii_lowercase();
        let fixed = match lower.as_str() {
            "tetrahedron" => Some(TETRAHEDRON),
            "cube" | "hexahedron" => Some(CUBE),
            "octahedron" => Some(OCTAHEDRON),
            "icosahedron" => Some(ICOSAHEDRON),
            "dodecahedron" => Some(DODECAHEDRON),
            "24-cell" => Some(Solid::Cell24),
            "600-cell" => Some(Solid::Cell600),
            "120-cell" => Some(Solid::Cell120),
            _ => None,
        };
        if let Some(solid) = fixed {
            return Ok(solid);
        }
        let (family, n) = lower.split_once(':').ok_or_else(unknown)?;
        let n: usize = n.parse().map_err(|_| unknown())?;
        let min = if family == "ngon" { 3 } else { 2 };
        if n < min {
            return Err(unknown());
        }
        match family {
            "simplex" => Ok(Solid::Simplex(n)),
            "cube" => Ok(Solid::Cube(n)),
            "cross" => Ok(Solid::CrossPolytope(n)),
            "ngon" => Ok(Solid::NGon(n)),
            _ => Err(unknown()),
        }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `a + b√m` as a scalar.
pub(crate) fn surd<S: Scalar>(an: i64, ad: i64, bn: i64, bd: i64, m: i64) -> Result<S, NumericError> {
    S::from_surd(&rat(an, ad), &rat(bn, bd), m)
}

/// The golden ratio `φ = (1+√5)/2`.
pub fn phi<S: Scalar>() -> Result<S, NumericError> {
    surd(1, 2, 1, 2, 5)
}

/// `2cos(π/n)`, exact for `n ∈ {2,3,4,5,6}`.
pub fn two_cos_pi_over<S: Scalar>(n: usize) -> Result<S, NumericError> {
    match n {
        2 => Ok(S::zero()),
        3 => Ok(S::one()),
        4 => surd(0, 1, 1, 1, 2),
        5 => phi(),
        6 => surd(0, 1, 1, 1, 3),
        _ => S::from_f64(2.0 * (std::f64::consts::PI / n as f64).cos()),
    }
}

/// `ℓ_P²`, the squared half edge-length of the edge-scribed realization.
pub fn half_edge_length_squared<S: Scalar>(s: Solid) -> Result<S, PolytopeError> {
    let v = match s {
        Solid::Simplex(n) => S::from_ratio(n as i64 + 1, n as i64 - 1),
        Solid::Cube(n) => S::from_ratio(1, n as i64 - 1),
        Solid::CrossPolytope(_) => S::one(),
        Solid::Icosahedron => surd(3, 2, -1, 2, 5)?,
        Solid::Dodecahedron => surd(7, 2, -3, 2, 5)?,
        Solid::NGon(p) => match p {
            3 => S::from_i64(3),
            4 => S::one(),
            5 => surd(5, 1, -2, 1, 5)?,
            6 => S::from_ratio(1, 3),
            8 => surd(3, 1, -2, 1, 2)?,
            10 => surd(1, 1, -2, 5, 5)?,
            12 => surd(7, 1, -4, 1, 3)?,
            _ => S::from_f64((std::f64::consts::PI / p as f64).tan().powi(2))?,
        },
        Solid::Cell24 => S::from_ratio(1, 3),
        Solid::Cell600 => surd(1, 1, -2, 5, 5)?,
        Solid::Cell120 => surd(3, 1, -4, 3, 5)?,
    };
    Ok(v)
}

/// `ℓ_P`; fails when the square root leaves the scalar field.
pub fn half_edge_length<S: Scalar>(s: Solid) -> Result<S, PolytopeError> {
    Ok(half_edge_length_squared::<S>(s)?.sqrt_hosted()?)
}

/// `ℓ_{p,q}² = (sin²(π/q) − cos²(π/p)) / cos²(π/p)`.
pub fn polyhedron_half_edge_squared(p: usize, q: usize) -> f64 {
    let c = (std::f64::consts::PI / p as f64).cos().powi(2);
    let s = (std::f64::consts::PI / q as f64).sin().powi(2);
    (s - c) / c
}

/// Face lattice of a convex polytope.
///
/// `faces[k]` lists the `k`-faces as sorted vertex-index sets, for
/// `0 ≤ k < dim`; the polytope itself is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    faces: Vec<Vec<Vec<usize>>>,
}

impl FaceLattice {
    /// Lattice on `n` vertices from the faces of ranks `1..dim`.
    pub fn new(n: usize, mut upper: Vec<Vec<Vec<usize>>>) -> Self {
        for rank in &mut upper {
            for f in rank.iter_mut() {
                f.sort_unstable();
            }
        }
        let mut faces = vec![(0..n).map(|i| vec![i]).collect()];
        faces.extend(upper);
        FaceLattice { faces }
    }

    /// Dimension of the polytope.
    pub fn dim(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.faces[0].len()
    }

    pub fn faces(&self, k: usize) -> Result<&[Vec<usize>], PolytopeError> {
        self.faces.get(k).map(Vec::as_slice).ok_or(PolytopeError::RankOutOfRange(k))
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.faces[1]
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.faces[self.dim() - 1]
    }

    pub fn face(&self, k: usize, i: usize) -> Result<&[usize], PolytopeError> {
        self.faces(k)?.get(i).map(Vec::as_slice).ok_or(PolytopeError::FaceOutOfRange(k, i))
    }

    /// Indices of the `(k+1)`-faces containing the `k`-face `i`.
    pub fn cofaces(&self, k: usize, i: usize) -> Vec<usize> {
        let f = &self.faces[k][i];
        match self.faces.get(k + 1) {
            None => vec![],
            Some(up) => (0..up.len()).filter(|&j| is_subset(f, &up[j])).collect(),
        }
    }

    /// All flags `(f₀ ⊂ f₁ ⊂ … ⊂ f_d)` as face indices per rank.
    pub fn flags(&self) -> Vec<Vec<usize>> {
        let up: Vec<Vec<Vec<usize>>> =
            (0..self.dim()).map(|k| (0..self.faces[k].len()).map(|i| self.cofaces(k, i)).collect()).collect();
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(self.dim());
        for v in 0..self.vertex_count() {
            chain.push(v);
            extend_flags(&up, &mut chain, self.dim(), &mut out);
            chain.pop();
        }
        out
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for e in self.edges() {
            adj[e[0]].push(e[1]);
            adj[e[1]].push(e[0]);
        }
        adj
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        let e = if u < v { [u, v] } else { [v, u] };
        self.edges().iter().any(|x| x[..] == e)
    }

    pub fn distances_from(&self, u: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn graph_distance(&self, u: usize, v: usize) -> Result<usize, PolytopeError> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(PolytopeError::FaceOutOfRange(0, u.max(v)));
        }
        Ok(self.distances_from(u)[v])
    }

    /// Vertices of a 2-face in cyclic order along its edges.
    pub fn face_cycle(&self, i: usize) -> Result<Vec<usize>, PolytopeError> {
        let f = self.face(2, i)?;
        let edges: Vec<&Vec<usize>> = self.edges().iter().filter(|e| is_subset(e, f)).collect();
        let mut cycle = vec![f[0]];
        while cycle.len() < f.len() {
            let last = *cycle.last().unwrap();
            let prev = if cycle.len() > 1 { Some(cycle[cycle.len() - 2]) } else { None };
            let next = edges
                .iter()
                .filter(|e| e.contains(&last))
                .map(|e| if e[0] == last { e[1] } else { e[0] })
                .find(|&w| Some(w) != prev)
                .expect("face boundary is a cycle");
            cycle.push(next);
        }
        Ok(cycle)
    }

    /// The dual lattice: one vertex per facet, and the dual `k`-face of a
    /// primal `(dim−1−k)`-face `g` is the set of facets containing `g`.
    pub fn dual(&self) -> FaceLattice {
        let n = self.dim();
        let facets = self.facets();
        let upper = (1..n)
            .map(|k| {
                self.faces[n - 1 - k]
                    .iter()
                    .map(|g| (0..facets.len()).filter(|&j| is_subset(g, &facets[j])).collect())
                    .collect()
            })
            .collect();
        FaceLattice::new(facets.len(), upper)
    }
}

/// A convex polytope: vertex coordinates over a face lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope<S> {
    solid: Option<Solid>,
    vertices: Vec<Vec<S>>,
    lattice: FaceLattice,
}

impl<S> std::ops::Deref for Polytope<S> {
    type Target = FaceLattice;
    fn deref(&self) -> &FaceLattice {
        &self.lattice
    }
}

impl<S: Scalar> Polytope<S> {
    /// Builds a polytope from vertices and the faces of ranks `1..dim`.
    pub fn new(solid: Option<Solid>, vertices: Vec<Vec<S>>, upper: Vec<Vec<Vec<usize>>>) -> Self {
        let lattice = FaceLattice::new(vertices.len(), upper);
        Polytope { solid, vertices, lattice }
    }

    pub fn from_lattice(solid: Option<Solid>, vertices: Vec<Vec<S>>, lattice: FaceLattice) -> Self {
        assert_eq!(vertices.len(), lattice.vertex_count());
        Polytope { solid, vertices, lattice }
    }

    pub fn solid(&self) -> Option<Solid> {
        self.solid
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    pub fn face_barycenter(&self, k: usize, i: usize) -> Result<Vec<S>, PolytopeError> {
        let f = self.face(k, i)?;
        let n = S::from_i64(f.len() as i64);
        let dim = self.vertices[0].len();
        Ok((0..dim)
            .map(|c| f.iter().fold(S::zero(), |acc, &v| acc + self.vertices[v][c].clone()) / n.clone())
            .collect())
    }

    /// The polar `{v : u·v ≤ 1 for u ∈ P}`; one vertex per facet.
    pub fn polar_dual(&self) -> Result<Polytope<S>, PolytopeError> {
        let n = self.dim();
        let mut verts = Vec::with_capacity(self.facets().len());
        for f in self.facets() {
            let a = Mat::from_fn(f.len(), n + 1, |i, j| if j < n { self.vertices[f[i]][j].clone() } else { S::one() });
            let (r, pivots) = a.rref(FLOAT_TOL);
            if pivots.len() != n || pivots.contains(&n) {
                return Err(PolytopeError::OriginNotInterior);
            }
            let v: Vec<S> = (0..n).map(|i| r[(i, n)].clone()).collect();
            for (u, x) in self.vertices.iter().enumerate() {
                if !f.contains(&u) && (dot(x, &v) - S::one()).sign(FLOAT_TOL) >= 0 {
                    return Err(PolytopeError::OriginNotInterior);
                }
            }
            verts.push(v);
        }
        Ok(Polytope::from_lattice(self.solid.map(Solid::polar), verts, self.lattice.dual()))
    }

    pub fn to_f64(&self) -> Polytope<f64> {
        Polytope {
            solid: self.solid,
            vertices: self.vertices.iter().map(|v| v.iter().map(Scalar::to_f64).collect()).collect(),
            lattice: self.lattice.clone(),
        }
    }
}

fn extend_flags(up: &[Vec<Vec<usize>>], chain: &mut Vec<usize>, dim: usize, out: &mut Vec<Vec<usize>>) {
    let k = chain.len() - 1;
    if chain.len() == dim {
        out.push(chain.clone());
        return;
    }
    for &g in &up[k][chain[k]] {
        chain.push(g);
        extend_flags(up, chain, dim, out);
        chain.pop();
    }
}

/// Both slices sorted.
fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The regular edge-scribed realization in its canonical frame.
pub fn regular_edge_scribed<S: Scalar>(s: Solid) -> Result<Polytope<S>, PolytopeError> {
    match s {
        Solid::Simplex(3) => tetrahedron(),
        Solid::Simplex(n) => simplex(n),
        Solid::Cube(n) => cube(n),
        Solid::CrossPolytope(n) => cross_polytope(n),
        Solid::Icosahedron => icosahedron(),
        Solid::Dodecahedron => Ok(icosahedron::<S>()?.polar_dual()?),
        Solid::NGon(p) => polygon(p),
        _ => Err(PolytopeError::ConstantsOnly(s)),
    }
}

fn all_proper_subsets(n_vertices: usize, dim: usize) -> Vec<Vec<Vec<usize>>> {
    (1..dim).map(|k| combinations(n_vertices, k + 1)).collect()
}

/// Even-signed cube vertices `(±1, ±1, ±1)`.
fn tetrahedron<S: Scalar>() -> Result<Polytope<S>, PolytopeError> {
    let raw = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
    let vertices = raw.iter().map(|r| r.iter().map(|&x| S::from_i64(x)).collect()).collect();
    Ok(Polytope::new(Some(TETRAHEDRON), vertices, all_proper_subsets(4, 3)))
}

/// Helmert-basis simplex, scaled so edge midpoints have norm 1.
fn simplex<S: Scalar>(n: usize) -> Result<Polytope<S>, PolytopeError> {
    let scale = (2.0 * (n as f64 + 1.0) / (n as f64 - 1.0)).sqrt();
    let centroid = 1.0 / (n as f64 + 1.0);
    let mut vertices = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut v = Vec::with_capacity(n);
        for k in 1..=n {
            // h_k = (1,…,1, −k, 0,…)/√(k(k+1)), k ones; h_k is orthogonal to the centroid
            let hk = |j: usize| -> f64 {
                if j < k {
                    1.0
                } else if j == k {
                    -(k as f64)
                } else {
                    0.0
                }
            };
            let norm = ((k * (k + 1)) as f64).sqrt();
            let comp = (hk(i) - centroid * (0..=n).map(hk).sum::<f64>()) / norm;
            v.push(S::from_f64(comp * scale)?);
        }
        vertices.push(v);
    }
    Ok(Polytope::new(Some(Solid::Simplex(n)), vertices, all_proper_subsets(n + 1, n)))
}

/// Vertices `±1/√(n−1)` in every coordinate; vertex `i` has sign `−` at bit `j` of `i`.
fn cube<S: Scalar>(n: usize) -> Result<Polytope<S>, PolytopeError> {
    let c = S::from_ratio(1, n as i64 - 1).sqrt_hosted()?;
    let count = 1usize << n;
    let vertices = (0..count)
        .map(|i| (0..n).map(|j| if i >> j & 1 == 1 { -c.clone() } else { c.clone() }).collect())
        .collect();
    let upper = (1..n)
        .map(|k| {
            let mut faces = Vec::new();
            for free in combinations(n, k) {
                let mask: usize = free.iter().map(|&j| 1 << j).sum();
                for fixed in 0..count {
                    if fixed & mask != 0 {
                        continue;
                    }
                    faces.push((0..count).filter(|&i| i & !mask == fixed).collect());
                }
            }
            faces
        })
        .collect();
    Ok(Polytope::new(Some(Solid::Cube(n)), vertices, upper))
}

/// Vertices `±√2 e_i`; vertex `2i` is `+√2 e_i`, vertex `2i+1` is `−√2 e_i`.
fn cross_polytope<S: Scalar>(n: usize) -> Result<Polytope<S>, PolytopeError> {
    let r = surd::<S>(0, 1, 1, 1, 2)?;
    let vertices = (0..2 * n)
        .map(|v| {
            (0..n)
                .map(|j| match (j == v / 2, v % 2) {
                    (false, _) => S::zero(),
                    (true, 0) => r.clone(),
                    (true, _) => -r.clone(),
                })
                .collect()
        })
        .collect();
    let upper = (1..n)
        .map(|k| {
            let mut faces = Vec::new();
            for axes in combinations(n, k + 1) {
                for signs in 0..1usize << (k + 1) {
                    faces.push(axes.iter().enumerate().map(|(t, &a)| 2 * a + (signs >> t & 1)).collect());
                }
            }
            faces
        })
        .collect();
    Ok(Polytope::new(Some(Solid::CrossPolytope(n)), vertices, upper))
}

/// Cyclic permutations of `(0, ±φ⁻¹, ±1)`.
fn icosahedron<S: Scalar>() -> Result<Polytope<S>, PolytopeError> {
    let inv_phi = surd::<S>(-1, 2, 1, 2, 5)?;
    let inv_phi_f = (5f64.sqrt() - 1.0) / 2.0;
    let mut vertices: Vec<Vec<S>> = Vec::with_capacity(12);
    let mut approx: Vec<[f64; 3]> = Vec::with_capacity(12);
    for shift in 0..3 {
        for (s1, s2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let mut v = vec![S::zero(), S::zero(), S::zero()];
            let mut a = [0.0; 3];
            v[(shift + 1) % 3] = inv_phi.clone() * S::from_i64(s1);
            v[(shift + 2) % 3] = S::from_i64(s2);
            a[(shift + 1) % 3] = inv_phi_f * s1 as f64;
            a[(shift + 2) % 3] = s2 as f64;
            vertices.push(v);
            approx.push(a);
        }
    }
    let d2 = |i: usize, j: usize| (0..3).map(|c| (approx[i][c] - approx[j][c]).powi(2)).sum::<f64>();
    let edge2 = 4.0 * inv_phi_f * inv_phi_f;
    let adjacent = |i: usize, j: usize| (d2(i, j) - edge2).abs() < 1e-9;
    let edges: Vec<Vec<usize>> = combinations(12, 2).into_iter().filter(|e| adjacent(e[0], e[1])).collect();
    let triangles: Vec<Vec<usize>> = combinations(12, 3)
        .into_iter()
        .filter(|t| adjacent(t[0], t[1]) && adjacent(t[1], t[2]) && adjacent(t[0], t[2]))
        .collect();
    Ok(Polytope::new(Some(Solid::Icosahedron), vertices, vec![edges, triangles]))
}

/// Regular polygon with circumradius `sec(π/p)`, first vertex on the x-axis.
fn polygon<S: Scalar>(p: usize) -> Result<Polytope<S>, PolytopeError> {
    let t = std::f64::consts::PI / p as f64;
    let r = 1.0 / t.cos();
    let vertices = (0..p)
        .map(|k| {
            let a = 2.0 * t * k as f64;
            Ok(vec![S::from_f64(r * a.cos())?, S::from_f64(r * a.sin())?])
        })
        .collect::<Result<Vec<_>, NumericError>>()?;
    let edges = (0..p).map(|k| vec![k, (k + 1) % p]).collect();
    Ok(Polytope::new(Some(Solid::NGon(p)), vertices, vec![edges]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Q2, Q3, Q5};

    fn norm2<S: Scalar>(v: &[S]) -> S {
        dot(v, v)
    }

    fn check_edge_scribed<S: Scalar>(s: Solid, tol: f64) {
        let p = regular_edge_scribed::<S>(s).unwrap();
        let l2 = half_edge_length_squared::<S>(s).unwrap();
        for e in p.edges() {
            let m = p.face_barycenter(1, p.edges().iter().position(|x| x == e).unwrap()).unwrap();
            assert!(norm2(&m).approx_eq(&S::one(), tol), "{s} edge midpoint");
        }
        for v in p.vertices() {
            assert!(norm2(v).approx_eq(&(S::one() + l2.clone()), tol), "{s} vertex norm");
        }
        let n = p.dim();
        let origin = (0..n).fold(vec![S::zero(); n], |acc, _| acc);
        let sum = p.vertices().iter().fold(origin, |acc, v| acc.iter().zip(v).map(|(a, b)| a.clone() + b.clone()).collect());
        assert!(sum.iter().all(|x| x.approx_eq(&S::zero(), tol)));
    }

    #[test]
    fn half_edge_lengths() {
        assert_eq!(half_edge_length::<Q2>(TETRAHEDRON).unwrap(), Q2::sqrt_m());
        assert_eq!(half_edge_length::<Q2>(CUBE).unwrap(), Q2::surd(0, 1, 1, 2));
        assert_eq!(half_edge_length::<Q3>(Solid::Cube(4)).unwrap(), Q3::surd(0, 1, 1, 3));
        let phi = phi::<Q5>().unwrap();
        let inv2 = (phi.clone() * phi.clone()).checked_recip().unwrap();
        assert_eq!(half_edge_length::<Q5>(DODECAHEDRON).unwrap(), inv2);
        assert_eq!(half_edge_length::<Q5>(ICOSAHEDRON).unwrap(), phi.checked_recip().unwrap());
        assert_eq!(half_edge_length_squared::<Q2>(OCTAHEDRON).unwrap(), Q2::from_int(1));
        for s in [TETRAHEDRON, OCTAHEDRON, CUBE, ICOSAHEDRON, DODECAHEDRON] {
            let (p, q) = s.platonic_pq().unwrap();
            let want = half_edge_length_squared::<f64>(s).unwrap();
            assert!((polyhedron_half_edge_squared(p, q) - want).abs() < 1e-12, "{s}");
        }
        for p in 3..=13 {
            let t = (std::f64::consts::PI / p as f64).tan().powi(2);
            assert!((half_edge_length_squared::<f64>(Solid::NGon(p)).unwrap() - t).abs() < 1e-12);
        }
        let phi_f = (1.0 + 5f64.sqrt()) / 2.0;
        let c600 = half_edge_length_squared::<f64>(Solid::Cell600).unwrap();
        assert!((c600 - 1.0 / (5f64.sqrt() * phi_f.powi(3))).abs() < 1e-12);
        let c120 = half_edge_length_squared::<f64>(Solid::Cell120).unwrap();
        assert!((c120 - 1.0 / (3.0 * phi_f.powi(6))).abs() < 1e-12);
    }

    #[test]
    fn schlafli_round_trip() {
        for s in [
            TETRAHEDRON, CUBE, OCTAHEDRON, ICOSAHEDRON, DODECAHEDRON, Solid::Simplex(5), Solid::Cube(4),
            Solid::CrossPolytope(4), Solid::NGon(7), Solid::Cell24, Solid::Cell600, Solid::Cell120,
        ] {
            assert_eq!(Solid::from_schlafli(&s.schlafli()).unwrap(), s);
            assert_eq!(s.to_string().parse::<Solid>().unwrap(), s);
        }
        assert!(Solid::from_schlafli(&[6, 3]).is_err());
        assert!("dodecagon".parse::<Solid>().is_err());
    }

    #[test]
    fn realizations_are_edge_scribed() {
        check_edge_scribed::<Q2>(TETRAHEDRON, 0.0);
        check_edge_scribed::<Q2>(CUBE, 0.0);
        check_edge_scribed::<Q2>(OCTAHEDRON, 0.0);
        check_edge_scribed::<Q5>(ICOSAHEDRON, 0.0);
        check_edge_scribed::<Q5>(DODECAHEDRON, 0.0);
        check_edge_scribed::<Q3>(Solid::Cube(4), 0.0);
        check_edge_scribed::<Q2>(Solid::Cube(5), 0.0);
        check_edge_scribed::<Q2>(Solid::CrossPolytope(4), 0.0);
        for n in 2..=6 {
            check_edge_scribed::<f64>(Solid::Simplex(n), 1e-12);
        }
        for p in 3..=9 {
            check_edge_scribed::<f64>(Solid::NGon(p), 1e-12);
        }
        assert!(regular_edge_scribed::<f64>(Solid::Cell24).is_err());
        assert!(regular_edge_scribed::<Q2>(ICOSAHEDRON).is_err());
    }

    #[test]
    fn face_counts_and_flags() {
        let counts = |s: Solid| {
            let p = regular_edge_scribed::<f64>(s).unwrap();
            let c: Vec<usize> = (0..p.dim()).map(|k| p.faces(k).unwrap().len()).collect();
            (c, p.flags().len())
        };
        assert_eq!(counts(TETRAHEDRON), (vec![4, 6, 4], 24));
        assert_eq!(counts(CUBE), (vec![8, 12, 6], 48));
        assert_eq!(counts(OCTAHEDRON), (vec![6, 12, 8], 48));
        assert_eq!(counts(ICOSAHEDRON), (vec![12, 30, 20], 120));
        assert_eq!(counts(DODECAHEDRON), (vec![20, 30, 12], 120));
        assert_eq!(counts(Solid::Cube(4)), (vec![16, 32, 24, 8], 384));
        assert_eq!(counts(Solid::Simplex(4)), (vec![5, 10, 10, 5], 120));
        assert_eq!(counts(Solid::NGon(5)), (vec![5, 5], 10));
        let cube = regular_edge_scribed::<f64>(CUBE).unwrap();
        assert!(cube.faces(3).is_err());
    }

    #[test]
    fn graph_distances() {
        let cube = regular_edge_scribed::<Q2>(CUBE).unwrap();
        assert_eq!(cube.graph_distance(0, 7).unwrap(), 3);
        assert_eq!(cube.graph_distance(0, 1).unwrap(), 1);
        let hyper = regular_edge_scribed::<f64>(Solid::Cube(4)).unwrap();
        assert_eq!(hyper.graph_distance(0, 15).unwrap(), 4);
        assert!(cube.graph_distance(0, 8).is_err());
    }

    #[test]
    fn face_cycles_follow_edges() {
        let d = regular_edge_scribed::<f64>(DODECAHEDRON).unwrap();
        let adj = d.adjacency();
        for i in 0..12 {
            let c = d.face_cycle(i).unwrap();
            assert_eq!(c.len(), 5);
            for k in 0..5 {
                assert!(adj[c[k]].contains(&c[(k + 1) % 5]));
            }
        }
    }

    #[test]
    fn polar_duality() {
        let oct = regular_edge_scribed::<Q2>(OCTAHEDRON).unwrap();
        let cube = oct.polar_dual().unwrap();
        assert_eq!(cube.vertices().len(), 8);
        assert_eq!(cube.solid(), Some(CUBE));
        let c = Q2::surd(0, 1, 1, 2);
        for v in cube.vertices() {
            assert!(v.iter().all(|x| x.abs() == c));
        }
        // same edge-tangency points
        let mids = |p: &Polytope<Q2>| {
            let mut m: Vec<String> = (0..p.edges().len())
                .map(|i| format!("{:?}", p.face_barycenter(1, i).unwrap().iter().map(|x| x.to_string()).collect::<Vec<_>>()))
                .collect();
            m.sort();
            m
        };
        assert_eq!(mids(&oct), mids(&cube));
        let back = cube.polar_dual().unwrap();
        assert_eq!(back.vertices().len(), 6);
        for v in back.vertices() {
            assert!(oct.vertices().contains(v));
        }
        let ico = regular_edge_scribed::<Q5>(ICOSAHEDRON).unwrap();
        let dod = ico.polar_dual().unwrap();
        assert_eq!((dod.vertices().len(), dod.facets().len()), (20, 12));
        // explicit frame: (±1,±1,±1)/φ and cyclic (0, ±φ⁻¹, ±φ)/φ
        let phi = phi::<Q5>().unwrap();
        let inv = phi.checked_recip().unwrap();
        let inv2 = inv.clone() * inv.clone();
        for v in dod.vertices() {
            let mut a: Vec<Q5> = v.iter().map(|x| x.abs()).collect();
            a.sort();
            assert!(a == vec![inv.clone(); 3] || a == vec![Q5::from_int(0), inv2.clone(), Q5::from_int(1)], "{a:?}");
        }
        // incidences reversed
        for (f, verts) in ico.facets().iter().enumerate() {
            for &v in verts {
                assert!(dod.facets()[v].contains(&f));
            }
        }
        let shifted = Polytope::new(None, oct.vertices().iter().map(|v| {
            let mut w = v.clone();
            w[0] = w[0].clone() + Q2::from_int(2);
            w
        }).collect(), vec![oct.edges().to_vec(), oct.facets().to_vec()]);
        assert_eq!(shifted.polar_dual(), Err(PolytopeError::OriginNotInterior));
    }
}
